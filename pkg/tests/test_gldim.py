from fractions import Fraction

import pytest

import config
import gldim
import lattice
from exactnum import GaussRat, Phase
from gldim import Exactness, TORSION_PHASE
from homdim import ext1_dim
from k0 import GenericTorsion, Line
from oracles import random_tau
from stability import StabilityParam

ONE = TORSION_PHASE


def test_catalog_window_checks(sigma_i):
    with pytest.raises(ValueError):
        gldim.catalog_build((2, 3, 7), sigma_i, 0, 7)
    with pytest.raises(ValueError):
        gldim.catalog_build((2, 3, 7), sigma_i, 1, 6)


def test_catalog_contents(sigma_i):
    catalog = gldim.catalog_build((2, 2, 2, 2), sigma_i, 1, 2)
    # 3 layers of 16 lines, generic lengths 1..2, 8 tube simples times 2 lengths
    assert len(catalog) == 48 + 2 + 16
    assert all(e.verdict.is_semistable for e in catalog.entries)
    assert catalog.entries[0].obj == GenericTorsion((2, 2, 2, 2), 1)

    wild = gldim.catalog_build((2, 3, 7), sigma_i, 2, 7)
    objects = {e.obj for e in wild.entries}
    assert Line(lattice.omega((2, 3, 7))) in objects
    assert GenericTorsion((2, 3, 7), 1) in objects

    frame = catalog.to_frame()
    assert len(frame) == len(catalog)
    assert set(frame["kind"]) == {"generic", "tube", "line"}


def test_tubular_gap_is_exactly_one(sigma_i):
    report = gldim.max_gap(gldim.catalog_build((2, 2, 2, 2), sigma_i, 2, 4))
    assert report.value == ONE
    assert report.value.as_fraction() == 1
    assert report.witness_a == GenericTorsion((2, 2, 2, 2))
    assert report.witness_b == GenericTorsion((2, 2, 2, 2))
    assert report.ext
    assert report.exactness == Exactness.EXACT_GLOBAL


@pytest.mark.parametrize("weights", config.TUBULAR_SPECS)
def test_tubular_random_tau(weights, rng):
    for _ in range(5):
        sigma = StabilityParam(random_tau(rng))
        assert gldim.gepner_check(weights, sigma)
        for L, N in ((1, 4), (2, 8)):
            N = max(N, max(weights))
            report = gldim.max_gap(gldim.catalog_build(weights, sigma, L, N))
            assert report.value == ONE
            assert report.exactness == Exactness.EXACT_GLOBAL


@pytest.mark.parametrize("weights", [(2, 3, 5), (2, 2, 3), (1, 2, 3)])
def test_domestic_cap(weights, sigma_i):
    spec = lattice.WeightSpec(weights)
    catalog = gldim.catalog_build(spec, sigma_i, 3, 2 * spec.a)
    report = gldim.max_gap(catalog)
    assert report.value == ONE
    assert report.ext
    assert report.witness_a == report.witness_b
    assert isinstance(report.witness_a, GenericTorsion)
    assert report.exactness == Exactness.EXACT_GLOBAL


def test_domestic_ext_pairs_never_climb(sigma_i):
    catalog = gldim.catalog_build((2, 3, 5), sigma_i, 3, 6)
    lines = [e for _, e in catalog.lines]
    for a in lines:
        for b in lines:
            if ext1_dim(a.obj, b.obj):
                assert b.phase <= a.phase


def test_gepner_check_matches_type(rng):
    for weights in config.SAMPLE_SPECS + config.WILD_SPECS:
        sigma = StabilityParam(random_tau(rng))
        expected = lattice.classify(weights) == lattice.TypeClass.TUBULAR
        assert gldim.gepner_check(weights, sigma) == expected


@pytest.mark.parametrize("weights", config.WILD_SPECS)
def test_wild_gap_at_tau_i(weights, sigma_i):
    lower = gldim.wild_gap(weights, sigma_i)
    assert lower.value.as_fraction() == Fraction(5, 4)
    assert lower.witness_a == Line(lattice.zero(weights))
    assert lower.witness_b == Line(lattice.omega(weights))
    assert lower.ext
    report = gldim.max_gap(gldim.catalog_build(weights, sigma_i, 2, 2 * max(weights)))
    assert report.value >= lower.value
    assert report.exactness == Exactness.WINDOW_LOWER_BOUND


def test_wild_witness(sigma_i):
    report = gldim.max_gap(gldim.catalog_build((2, 3, 7), sigma_i, 2, 7))
    assert report.value.as_fraction() == Fraction(5, 4)
    assert report.witness_a == Line(lattice.zero((2, 3, 7)))
    assert report.witness_b == Line(lattice.omega((2, 3, 7)))
    assert report.ext
    assert report.to_json()["value"] == "5/4"


def test_wild_gap_exceeds_one_on_grid():
    grid = [GaussRat(re, im) for re in (-1, 0, 1) for im in (Fraction(1, 2), 1, 2)]
    for tau in grid:
        sigma = StabilityParam(tau)
        lower = gldim.wild_gap((2, 3, 7), sigma)
        report = gldim.max_gap(gldim.catalog_build((2, 3, 7), sigma, 2, 7))
        assert lower.value > ONE
        assert report.value >= lower.value


def test_wild_gap_rejects_other_types(sigma_i):
    with pytest.raises(ValueError):
        gldim.wild_gap((2, 3, 5), sigma_i)
    with pytest.raises(ValueError):
        gldim.wild_gap((2, 3, 6), sigma_i)


def test_wild_gap_float():
    report = gldim.wild_gap((2, 3, 7), StabilityParam(GaussRat(0, 10)))
    assert report.float_value == pytest.approx(1.0317, abs=1e-4)


def test_limit_family():
    family = gldim.limit_family((2, 3, 7), (1, 10, 100, 1000))
    values = [r.value for _, r in family]
    assert all(later < earlier for earlier, later in zip(values, values[1:]))
    assert all(v > ONE for v in values)
    assert family[-1][1].float_value - 1 < 1e-3
    gaps = [r.float_value - 1 for _, r in family]
    assert all(b < a for a, b in zip(gaps, gaps[1:]))


def test_phase_order_violations_empty(sigma_i):
    for weights in ((2, 3, 7), (2, 2, 2, 2), (2, 3, 5)):
        catalog = gldim.catalog_build(weights, sigma_i, 1, max(weights))
        assert gldim.phase_order_violations(catalog) == []


def test_support_constant(sigma_i):
    catalog = gldim.catalog_build((2, 2, 2, 2), sigma_i, 1, 2)
    constant = gldim.support_constant(catalog)
    assert isinstance(constant, Fraction)
    # [O] has norm 1 and |Z(O)| = 1
    assert constant >= 1


def test_parse_grid(tmp_path):
    assert gldim.parse_grid("re=0,1:im=1,2") == [
        GaussRat(0, 1), GaussRat(0, 2), GaussRat(1, 1), GaussRat(1, 2)]
    assert gldim.parse_grid("0,1;1/2,3") == [GaussRat(0, 1), GaussRat(Fraction(1, 2), 3)]
    grid_file = tmp_path / "taus.txt"
    grid_file.write_text("# t*i\n0,1\n0,10  # ten\n\n")
    assert gldim.parse_grid(str(grid_file)) == [GaussRat(0, 1), GaussRat(0, 10)]
    for bad in ("0,-1", "re=0:x=1", "re=0:im=0"):
        with pytest.raises(ValueError):
            gldim.parse_grid(bad)


def test_scan_decreasing_along_imaginary_axis():
    grid = [GaussRat(0, t) for t in (1, 10, 100, 1000)]
    table = gldim.scan((2, 3, 7), grid, 2, 7, threads=2)
    rows = table.iloc[:-1]
    assert list(rows["tau_im"]) == ["1", "10", "100", "1000"]
    values = list(rows["lower_bound_float"])
    assert all(b < a for a, b in zip(values, values[1:]))
    assert values[-1] - 1 < 1e-3
    summary = table.iloc[-1]
    assert summary["exact_flag"] == "GridInfimum"
    assert summary["lower_bound_float"] == values[-1]


def test_scan_is_deterministic():
    grid = gldim.parse_grid("re=-1,0,1:im=1/2,1,2")
    one = gldim.scan((2, 2, 2, 2), grid, 1, 2, threads=1)
    many = gldim.scan((2, 2, 2, 2), grid, 1, 2, threads=4)
    assert one.to_csv(index=False) == many.to_csv(index=False)
    assert set(one["exact_flag"].iloc[:-1]) == {"ExactGlobal"}
    assert set(one["lower_bound_float"]) == {1.0}


@pytest.mark.parametrize("weights, gldim_text", [
    ((2, 2, 2, 2), "1 (exact)"),
    ((2, 3, 5), "1 (exact)"),
    ((2, 3, 7), "> 1 (lower bound 1.25)"),
])
def test_verify_theorems(weights, gldim_text, sigma_i):
    report = gldim.verify_theorems(weights, sigma_i)
    assert report.passed, report.failures
    assert report.gldim_text == gldim_text
    assert report.gepner == (lattice.classify(weights) == lattice.TypeClass.TUBULAR)
    data = report.to_json()
    assert data["failures"] == []
    assert data["serre_dimension"] == 1


def test_serre_dimension_constant():
    assert gldim.SERRE_DIMENSION.value == 1
    assert isinstance(ONE, Phase)


@pytest.mark.parametrize("weights, windows", [
    ((2, 3, 7), [(1, 7), (2, 7), (2, 14)]),
    ((2, 2, 2, 2), [(1, 2), (1, 4), (2, 4)]),
    ((2, 3, 5), [(1, 5), (2, 5), (2, 10)]),
])
def test_larger_window_never_lowers_max_gap(weights, windows):
    sigma = StabilityParam(GaussRat(Fraction(1, 3), Fraction(1, 5)))
    values = [gldim.max_gap(gldim.catalog_build(weights, sigma, L, N)).value for L, N in windows]
    assert all(later >= earlier for earlier, later in zip(values, values[1:]))
