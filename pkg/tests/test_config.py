import warnings

import pytest

from osculant.config import ConfigError, digest, dump_config, load_config, parse_config

CONE = """\
[variety]
name = "cone"
params = ["u", "v"]
coords = ["v", "v*u", "v*u^2", "v*u^3", "v*u^4", "1"]

[fiber]
base_binding = ["a", "b"]
params = ["s"]
coords = ["a", "b + s"]
"""


def test_parse_and_build():
    cfg = parse_config(CONE)
    P = cfg.parametrization()
    assert (P.n, P.r) == (2, 5)
    assert str(P.coords[1]) == "u*v"
    fiber = cfg.fiber.build()
    assert fiber.base == ("a", "b") and fiber.dim == 1


def test_load_from_file(tmp_path):
    path = tmp_path / "cone.toml"
    path.write_text(CONE)
    assert load_config(path) == parse_config(CONE)


def test_dump_roundtrip():
    cfg = parse_config(CONE)
    assert parse_config(dump_config(cfg)) == cfg


def test_digest_uses_canonical_polynomials():
    other = CONE.replace('"v*u"', '"u*v"').replace('"v*u^2"', '"u*u*v"')
    assert digest(parse_config(CONE)) == digest(parse_config(other))
    assert digest(parse_config(CONE)) != digest(parse_config(CONE.replace('"1"]', '"2"]')))


def test_expression_error_position():
    text = CONE.replace('"v*u^3"', '"v*u^3 + 2u"')
    with pytest.raises(ConfigError) as info:
        parse_config(text)
    assert info.value.line == 4
    assert text.splitlines()[3][info.value.column - 1] == "u"


def test_unknown_variable_in_fiber():
    with pytest.raises(ConfigError, match="unknown variable 'c'") as info:
        parse_config(CONE.replace('"b + s"', '"c + s"'))
    assert info.value.line == 9


def test_toml_syntax_error_position():
    with pytest.raises(ConfigError) as info:
        parse_config('[variety]\nname = "x\n')
    assert info.value.line == 2


@pytest.mark.parametrize("text,match", [
    ("[other]\n", "missing \\[variety\\]"),
    ('[variety]\nname = "x"\nparams = ["u"]\ncoords = ["u"]\n', "at least two"),
    ('[variety]\nname = "x"\nparams = []\ncoords = ["1", "u"]\n', "at least one"),
    ('[variety]\nname = "x"\nparams = "u"\ncoords = ["1", "u"]\n', "list of strings"),
    ('[variety]\nname = "x"\nparams = ["u"]\ncoords = ["0", "0"]\n', "identically zero"),
])
def test_structural_errors(text, match):
    with pytest.raises(ConfigError, match=match):
        parse_config(text)


def test_fiber_arity_checked():
    with pytest.raises(ConfigError, match="one expression per variety parameter"):
        parse_config(CONE.replace('coords = ["a", "b + s"]', 'coords = ["a"]'))


def test_warns_when_not_positive_codimension():
    with pytest.warns(UserWarning, match="positive codimension"):
        parse_config('[variety]\nname = "p2"\nparams = ["u", "v"]\ncoords = ["1", "u", "v"]\n')
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        parse_config(CONE)
