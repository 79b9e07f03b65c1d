import pytest

import oracle
from osculant import catalog, config
from osculant.geometry import SamplePlan, profile

ENTRIES = catalog.default_entries()


def test_names_sorted_and_stable():
    assert catalog.names() == sorted(catalog.names())
    assert catalog.names() == [
        "cone_rnc", "cone_rnc3_in_P5", "rnc", "rnc_in_hyperplane",
        "segre11", "togliatti", "veronese2", "veronese3",
    ]


def test_unknown_entry():
    with pytest.raises(catalog.UnknownEntryError):
        catalog.get("kummer")


def test_get_examples():
    e = catalog.get("rnc", degree=5)
    assert [str(c) for c in e.parametrization.coords] == ["1", "u", "u^2", "u^3", "u^4", "u^5"]
    assert e.expected_profile == (0, 1, 2, 3, 4, 5, 5)
    assert catalog.get("veronese2").expected_profile == (0, 2, 5)
    assert catalog.get("togliatti").expected_profile[2] == 4


@pytest.mark.parametrize("entry", ENTRIES, ids=lambda e: e.name)
def test_expected_profile_regression(entry):
    prof = profile(entry.parametrization, entry.max_order, SamplePlan(seed=42, samples=5, height_bound=1000))
    assert tuple(prof.dims) == entry.expected_profile


@pytest.mark.parametrize("entry", ENTRIES, ids=lambda e: e.name)
@pytest.mark.parametrize("seed", [1, 2])
def test_expected_profile_by_rank_oracle(entry, seed):
    P = entry.parametrization
    t0 = SamplePlan(seed=seed).draw(P.n, "oracle", 0)
    coords, names = [str(c) for c in P.coords], list(P.params)
    dims = tuple(oracle.osc_dim(coords, names, m, t0) for m in range(entry.max_order + 1))
    assert dims == entry.expected_profile


@pytest.mark.parametrize("d", range(1, 9))
def test_rnc_family(d):
    e = catalog.rnc(d)
    assert tuple(profile(e.parametrization, e.max_order, SamplePlan()).dims) == e.expected_profile


@pytest.mark.parametrize("d", range(2, 6))
def test_cone_family(d):
    e = catalog.cone_rnc(d)
    assert e.parametrization.r == d + 1
    assert tuple(profile(e.parametrization, e.max_order, SamplePlan()).dims) == e.expected_profile


def test_rnc_in_hyperplane_parameters():
    e = catalog.rnc_in_hyperplane(degree=3, ambient=6)
    assert e.parametrization.r == 6
    assert tuple(profile(e.parametrization, e.max_order, SamplePlan()).dims) == (0, 1, 2, 3, 3)
    with pytest.raises(ValueError):
        catalog.rnc_in_hyperplane(degree=5, ambient=5)


@pytest.mark.parametrize("entry", [e for e in ENTRIES if e.fiber], ids=lambda e: e.name)
def test_fiber_passes_through_base(entry):
    t0 = (3, -7)
    ts = entry.fiber.at(t0)
    assert tuple(c.eval([0]) for c in ts) == t0


@pytest.mark.parametrize("entry", ENTRIES, ids=lambda e: e.name)
def test_export_roundtrip(entry):
    text = config.export_entry(entry)
    cfg = config.parse_config(text)
    assert cfg.parametrization().same_polynomials(entry.parametrization)
    assert cfg.name == entry.name
    if entry.fiber:
        assert cfg.fiber.build() == entry.fiber
        assert cfg.fiber.order == entry.fiber_order
    assert config.export_entry(entry) == config.dump_config(cfg)
