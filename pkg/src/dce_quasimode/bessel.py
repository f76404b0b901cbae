"""Integer-order Bessel functions of the first kind.

Ascending power series for small arguments, Miller's backward recurrence
otherwise.  Accurate to a few ulp for |x| <= 2 and any order; to roughly
1e-14 absolute beyond that.
"""

import math

import numpy as np


def _series(n, x):
    half = 0.5 * x
    term = half ** n / math.factorial(n)
    total = term
    q = -half * half
    k = 0
    while True:
        k += 1
        term *= q / (k * (k + n))
        total += term
        if abs(term) <= 1e-17 * abs(total) or k > 200:
            return total


def _miller(n, x):
    ax = abs(x)
    start = 2 * ((max(n, int(ax)) + 15 + int(math.sqrt(40.0 * max(n, ax)))) // 2)
    j_next, j_cur = 0.0, 1e-300
    norm = 0.0
    result = 0.0
    for k in range(start, 0, -1):
        j_prev = 2.0 * k / ax * j_cur - j_next
        j_next, j_cur = j_cur, j_prev
        if abs(j_cur) > 1e250:
            j_next *= 1e-250
            j_cur *= 1e-250
            result *= 1e-250
            norm *= 1e-250
        if k - 1 == n:
            result = j_cur
        if (k - 1) % 2 == 0 and k - 1 > 0:
            norm += 2.0 * j_cur
    norm += j_cur  # J_0 term of 1 = J_0 + 2 sum J_2k
    value = result / norm
    return -value if (x < 0 and n % 2) else value


def bessel_j(order, x):
    """J_order(x) for integer order (negative orders via J_{-n} = (-1)^n J_n)."""
    n = int(order)
    sign = 1.0
    if n < 0:
        n = -n
        sign = -1.0 if n % 2 else 1.0
    x = float(x)
    if x == 0.0:
        return sign * (1.0 if n == 0 else 0.0)
    if abs(x) <= 2.0:
        return sign * _series(n, x)
    return sign * _miller(n, x)


def bessel_j_orders(l_max, x):
    """Array of J_l(x) for l = -l_max .. l_max."""
    return np.array([bessel_j(l, x) for l in range(-l_max, l_max + 1)])
