import numpy as np
import pytest

from mumeb.construct import (MEBFamily, expand_basis, family_cd, family_ckd,
                             fourier_unitary, permutation_unitary, v_unitary)
from mumeb.fields import FiniteField, ProductRing, ring_for_dimension
from mumeb.verify import (bruteforce_unbiased, certify_family, criterion_check,
                          criterion_magnitudes, gauss_sum_check,
                          gauss_sum_reference, quadratic_sum_direct)


def test_criterion_self_pair_peaks_at_d():
    # w = I concentrates the sums: d at (0, 0) and 0 off the diagonal
    ring = ring_for_dimension(5)
    lo, hi = criterion_magnitudes(ring, 1, np.eye(5), np.eye(5))
    assert lo == pytest.approx(0.0, abs=1e-12)
    assert hi == pytest.approx(5.0, abs=1e-12)
    assert criterion_check(ring, 1, np.eye(5), np.eye(5)) == pytest.approx(4.0)


def test_criterion_flat_on_known_pairs():
    ring = ring_for_dimension(3)
    u2 = permutation_unitary(ring, ring.element(2))
    w = fourier_unitary(ring)
    assert criterion_check(ring, 1, np.eye(3), u2) < 1e-10
    assert criterion_check(ring, 1, np.eye(3), w) < 1e-10
    with pytest.raises(ValueError):
        criterion_magnitudes(ring, 1, np.eye(4), np.eye(4))


@pytest.mark.parametrize("d", [3, 9, 15])
def test_criterion_sensitivity_exhaustive_over_unit_pairs(d):
    # U(a), U(b) pass exactly when a - b is invertible; same for the twisted
    # pairs; mixed pairs always pass
    ring = ring_for_dimension(d)
    units = ring.units()
    perms = {a.index: permutation_unitary(ring, a) for a in units}
    twists = {a.index: v_unitary(ring, a) for a in units}
    seen_failure = False
    for a in units:
        for b in units:
            if a == b:
                continue
            flat = (a - b).is_unit
            dev_uu = criterion_check(ring, 1, perms[a.index], perms[b.index])
            dev_vv = criterion_check(ring, 1, twists[a.index], twists[b.index])
            dev_uv = criterion_check(ring, 1, perms[a.index], twists[b.index])
            assert (dev_uu < 1e-9) == flat
            assert (dev_vv < 1e-9) == flat
            assert dev_uv < 1e-9
            if not flat:
                seen_failure = True
                assert dev_uu > 1e-3 and dev_vv > 1e-3
    # every unit difference is invertible when d is a prime power, and only
    # then; d = 15 must exhibit a genuine failing pair
    assert seen_failure == (d == 15)


def test_criterion_failing_pair_is_the_expected_one():
    ring = ring_for_dimension(15)
    a = ring.element(6)  # components (1, 1)
    b = ring.element(7)  # components (1, 2): difference (0, -1) is a zero divisor
    assert a.is_unit and b.is_unit and not (a - b).is_unit
    dev = criterion_check(ring, 1, permutation_unitary(ring, a),
                          permutation_unitary(ring, b))
    assert dev > 1e-3


def test_bruteforce_unbiased():
    ring = ring_for_dimension(3)
    b1 = expand_basis(ring, np.eye(3))
    lo, hi = bruteforce_unbiased(b1, b1)
    assert lo == pytest.approx(0.0, abs=1e-12) and hi == pytest.approx(1.0)
    b2 = expand_basis(ring, permutation_unitary(ring, ring.element(2)))
    lo, hi = bruteforce_unbiased(b1, b2)
    assert abs(lo - 1 / 3) < 1e-9 and abs(hi - 1 / 3) < 1e-9
    with pytest.raises(ValueError):
        bruteforce_unbiased(b1, np.eye(4))


def test_quadratic_sum_value_d3():
    ring = ring_for_dimension(3)
    got = quadratic_sum_direct(ring, ring.one)
    assert abs(got - 1j * np.sqrt(3)) < 1e-12  # 1 + 2 zeta_3 exactly


@pytest.mark.parametrize("d", [3, 5, 7, 9, 11, 13, 15, 17, 19, 21, 23, 25])
def test_gauss_sum_check_all_odd_d(d):
    assert gauss_sum_check(ring_for_dimension(d)) < 1e-10


def test_gauss_sum_check_rejects_even_rings():
    with pytest.raises(ValueError):
        gauss_sum_check(ProductRing([FiniteField(2, 2)]))


@pytest.mark.parametrize("q", [(3, 1), (5, 1), (7, 1), (3, 2), (11, 1), (13, 1)])
def test_gauss_reference_agrees_with_direct_quadratic_sums(q):
    # summing the nontrivial quadratic-character Gauss sums counts square
    # roots, which is a closed-form route the direct summation never uses
    field = FiniteField(*q)
    ring = ProductRing([field])
    for c in field.units():
        ref = gauss_sum_reference(field, c, order=2)
        direct = quadratic_sum_direct(ring, ring.element_from_parts([c]))
        assert abs(ref - direct) < 1e-9


@pytest.mark.parametrize("d", [15, 45])
def test_quadratic_sums_factor_over_ring_components(d):
    ring = ring_for_dimension(d)
    for c in ring.units():
        prod = 1.0 + 0.0j
        for part, factor in zip(c.parts, ring.factors):
            prod *= gauss_sum_reference(factor, part, order=2)
        assert abs(prod - quadratic_sum_direct(ring, c)) < 1e-8


def test_gauss_reference_higher_order_characters():
    f7 = FiniteField(7)
    got = gauss_sum_reference(f7, f7.element(1), order=3)
    assert abs(got) <= 2 * np.sqrt(7) + 1e-9  # two component sums of size sqrt(7)
    with pytest.raises(ValueError):
        gauss_sum_reference(f7, f7.element(1), order=4)  # 4 does not divide 6
    with pytest.raises(ValueError):
        gauss_sum_reference(f7, f7.zero)


def test_certify_family_positive():
    report = certify_family(family_cd(3))
    assert report.passed
    assert report.n_bases == 4
    assert len(report.basis_results) == 4
    assert len(report.pair_results) == 6
    assert report.agreement_deviation < 1e-12
    assert report.failures() == []
    assert report.wall_time_s > 0
    d = report.to_dict()
    assert d["family_id"] == "gauss-dd-d3-k1"
    assert d["tolerances"]["orthonormality"] == 1e-9
    for pair in d["pairs"]:
        assert abs(pair["overlap_max"] - 1 / 3) < 1e-9
        assert pair["pass"] and pair["criterion_pass"]


def test_certify_family_pairs_only():
    report = certify_family(family_ckd(3, 4), pairs_only=True)
    assert report.passed
    assert report.basis_results == []
    assert len(report.pair_results) == 6  # 4 bases


def test_certify_flags_incompatible_pair():
    ring = ring_for_dimension(15)
    gens = [("first", permutation_unitary(ring, ring.element(6))),
            ("second", permutation_unitary(ring, ring.element(7)))]
    report = certify_family(MEBFamily(15, 1, ring, gens))
    assert not report.passed
    # both bases are individually fine; the pair is the failure
    assert all(b["pass"] for b in report.basis_results)
    assert any("pair (first, second)" in line for line in report.failures())


def test_certify_reports_tampered_generator_by_name():
    ring = ring_for_dimension(3)
    gens = [("good", np.eye(3)), ("tampered", 0.5 * np.eye(3))]
    fam = MEBFamily(3, 1, ring, gens, validate_unitarity=False)
    report = certify_family(fam)
    assert not report.passed
    assert [e["label"] for e in report.generator_errors] == ["tampered"]
    assert report.pair_results == []  # stops before the expensive stages
    assert any("tampered" in line for line in report.failures())
