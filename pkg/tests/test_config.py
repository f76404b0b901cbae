import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dce_quasimode.config import KEYS, RunConfig, parse_config, serialize_config
from dce_quasimode.errors import ConfigError, ValidationError


def test_minimal_document():
    cfg = parse_config("epsilon=0.01, Q=100, drive=l0")
    assert cfg.profile().drive_frequency == 2.0
    assert cfg.quasimode().linewidth == pytest.approx(0.01)
    assert cfg.profile().coupling_rate == pytest.approx(0.005)


def test_defaults_are_runnable_and_documented():
    cfg = RunConfig()
    cfg.validate()
    for f in KEYS.values():
        assert f.metadata["doc"] and f.metadata["section"]


def test_sections_and_comments():
    text = """
    # comment
    [modulation]
    epsilon = 0.02   # trailing
    drive = 2.5
    [grid]
    methods = closed_general, quadrature
    points = 10
    """
    cfg = parse_config(text)
    assert cfg.epsilon == 0.02 and cfg.drive == 2.5
    assert cfg.methods == ("closed_general", "quadrature")


@pytest.mark.parametrize("text,field,line", [
    ("epsilonn = 0.1", "epsilonn", 1),
    ("Q = 100\nQ = 200", "Q", 2),
    ("[grid]\nepsilon = 0.1", "epsilon", 2),
    ("[nowhere]", "section", 1),
    ("points = many", "points", 1),
    ("just words", "syntax", 1),
    ("epsilon = inf", "epsilon", 1),
])
def test_parse_errors_name_field_and_line(text, field, line):
    with pytest.raises(ConfigError) as info:
        parse_config(text)
    assert info.value.field == field
    assert info.value.line == line


@pytest.mark.parametrize("text,field", [
    ("epsilon = 1.5", "epsilon"),
    ("Q = 100\ngamma = 0.01", "Q"),
    ("methods = closed_weak, bogus", "methods"),
    ("drive = l3", "drive"),
    ("ode_tolerance = 0", "ode_tolerance"),
    ("spacing = log\nt_min_tau = 0", "t_min_tau"),
])
def test_validation_errors(text, field):
    with pytest.raises(ValidationError) as info:
        parse_config(text)
    assert info.value.field == field


def test_round_trip_defaults():
    cfg = RunConfig()
    assert parse_config(serialize_config(cfg)) == cfg


@given(
    eps=st.floats(0.0, 0.99),
    Q=st.one_of(st.none(), st.floats(1.0, 1e6)),
    drive=st.one_of(st.just("l0"), st.floats(0.01, 10.0)),
    points=st.integers(1, 500),
    methods=st.lists(st.sampled_from(["quadrature", "closed_weak", "closed_general",
                                      "phenomenological", "ode_oracle"]),
                     min_size=1, max_size=5, unique=True),
    svg=st.booleans(),
    length=st.one_of(st.none(), st.floats(1e-3, 1e3)),
)
def test_round_trip_property(eps, Q, drive, points, methods, svg, length):
    cfg = RunConfig(epsilon=eps, Q=Q, drive=drive, points=points, methods=tuple(methods),
                    svg=svg, cavity_length=length)
    assert parse_config(serialize_config(cfg)) == cfg


def test_physical_cavity_is_normalized():
    cfg = parse_config("cavity_length = 2.0\nrefractive_index = 1.5\nmode_index = 3")
    internal, scale = cfg.cavity().to_internal()
    assert internal.base_frequency == pytest.approx(1.0)
    assert scale.time == pytest.approx(1.0 / (2 * math.pi * 3 / 2.0 / 1.5))
