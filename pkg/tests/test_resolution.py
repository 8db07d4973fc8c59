import math
from fractions import Fraction

import pytest

from quiverkoszul.algebra import AlgebraModel
from quiverkoszul.corpus import (
    exterior,
    loop_cubed,
    parse_quiver_spec,
    path_algebra,
    radical_square_zero,
)
from quiverkoszul.covering import build_covering
from quiverkoszul.duality import dual_presentation
from quiverkoszul.groups import cyclic_group
from quiverkoszul.resolution import (
    FAILS_AT,
    KOSZUL_TO_BOUND,
    UNKNOWN_BEYOND_BOUND,
    ExtAlgebra,
    ExtElement,
    generation_check,
    hilbert_euler_check,
    is_koszul_to,
    koszul_duality_dim_check,
    resolve,
    theorem_covering_check,
)


def binom(n, k):
    return math.comb(n, k)


@pytest.fixture(scope="module")
def ext2_report():
    model = AlgebraModel(exterior(2), 5)
    return resolve(model, 5, 5)


@pytest.fixture(scope="module")
def loop3_report():
    model = AlgebraModel(loop_cubed(), 6)
    return resolve(model, 4, 6)


class TestExteriorResolution:
    @pytest.mark.parametrize("m", [1, 2, 3])
    def test_linear_resolution_with_binomial_betti(self, m):
        model = AlgebraModel(exterior(m), 5)
        report = resolve(model, 5, 5)
        verdict = is_koszul_to(report)
        assert verdict.status == KOSZUL_TO_BOUND
        for i in range(6):
            assert report.betti_total(i, i) == binom(m + i - 1, i)
            assert report.ext_total(i) == binom(m + i - 1, i)

    def test_off_diagonal_betti_vanish(self, ext2_report):
        for (_, i, d, _), n in ext2_report.betti.items():
            assert d == i or n == 0

    def test_step_linear(self, ext2_report):
        assert all(ext2_report.step_linear(i) for i in range(6))
        assert ext2_report.first_failure() is None


class TestLoopCubed:
    def test_fails_at_2_3(self, loop3_report):
        verdict = is_koszul_to(loop3_report)
        assert verdict.status == FAILS_AT
        assert verdict.witness == (2, 3)
        assert str(verdict) == "fails-at(2,3)"

    def test_betti_positions(self, loop3_report):
        positions = sorted(
            (i, d) for (_, i, d, _), n in loop3_report.betti.items() if n
        )
        assert positions == [(0, 0), (1, 1), (2, 3), (3, 4), (4, 6)]

    def test_generation_fails_at_step_1(self, loop3_report):
        ext = ExtAlgebra(loop3_report)
        gen = generation_check(ext)
        assert not gen.passed
        assert gen.first_failure_i == 1
        step1 = next(s for s in gen.steps if s[0] == 1)
        assert step1 == (1, 0, 1)  # products span 0 of the 1 class above

    def test_covering_inherits_failure(self):
        cov = build_covering(loop_cubed(), cyclic_group(2), {"x": "1"})
        model = AlgebraModel(cov, 6)
        report = resolve(model, 4, 6)
        verdict = is_koszul_to(report)
        assert verdict.status == FAILS_AT
        assert verdict.witness == (2, 3)


def test_verdict_unknown_when_degree_window_short():
    model = AlgebraModel(exterior(2), 2)
    report = resolve(model, 5, 2)
    assert is_koszul_to(report).status == UNKNOWN_BEYOND_BOUND


def test_semisimple_algebra_resolves_immediately():
    model = AlgebraModel(path_algebra(parse_quiver_spec("line:1")), 2)
    report = resolve(model, 2, 2)
    assert is_koszul_to(report).status == KOSZUL_TO_BOUND
    assert report.ext_totals() == [1, 0, 0]


def test_line2_resolution_stops_after_one_step():
    model = AlgebraModel(path_algebra(parse_quiver_spec("line:2")), 3)
    report = resolve(model, 3, 3)
    assert report.ext_totals() == [2, 1, 0, 0]
    assert is_koszul_to(report).status == KOSZUL_TO_BOUND


def test_radical_square_zero_two_loops_is_koszul():
    model = AlgebraModel(radical_square_zero(parse_quiver_spec("loops:2")), 4)
    report = resolve(model, 4, 4)
    assert is_koszul_to(report).status == KOSZUL_TO_BOUND
    # free quadratic growth: 2^i classes at step i
    assert report.ext_totals() == [1, 2, 4, 8, 16]


class TestHilbertEuler:
    def test_exterior(self, ext2_report):
        model = ext2_report.model
        ok, witness = hilbert_euler_check(model, ext2_report, 5)
        assert ok and witness is None

    def test_loop_cubed_holds_despite_non_koszul(self, loop3_report):
        ok, witness = hilbert_euler_check(loop3_report.model, loop3_report, 4)
        assert ok and witness is None

    def test_a2_identity(self):
        model = AlgebraModel(path_algebra(parse_quiver_spec("line:2")), 3)
        report = resolve(model, 3, 3)
        ok, witness = hilbert_euler_check(model, report, 3)
        assert ok and witness is None

    def test_cutoff_beyond_window_rejected(self, ext2_report):
        with pytest.raises(ValueError):
            hilbert_euler_check(ext2_report.model, ext2_report, 6)


def test_duality_dims_exterior2(ext2_report):
    dual = dual_presentation(exterior(2))
    dual_model = AlgebraModel(dual, 5)
    ok, witness = koszul_duality_dim_check(ext2_report.model, dual_model, ext2_report)
    assert ok and witness is None


def test_duality_dims_requires_clean_verdict(loop3_report):
    dual_model = AlgebraModel(radical_square_zero(parse_quiver_spec("loops:1")), 4)
    with pytest.raises(ValueError):
        koszul_duality_dim_check(loop3_report.model, dual_model, loop3_report)


class TestCoveringTheorem:
    def test_exterior2_z2(self):
        outcome = theorem_covering_check(
            exterior(2), cyclic_group(2), {"a1": "1", "a2": "1"}, 4, 4
        )
        assert outcome.passed
        assert outcome.group_order == 2
        assert outcome.base_verdict.status == KOSZUL_TO_BOUND
        assert outcome.cover_verdict.status == KOSZUL_TO_BOUND
        assert outcome.mismatches == []

    def test_loop_cubed_verdicts_agree_including_witness(self):
        outcome = theorem_covering_check(
            loop_cubed(), cyclic_group(2), {"x": "1"}, 3, 4
        )
        assert outcome.base_verdict.witness == (2, 3)
        assert outcome.cover_verdict.witness == (2, 3)


class TestExtAlgebra:
    def test_ext_basis_sizes(self, ext2_report):
        ext = ExtAlgebra(ext2_report)
        for i in range(5):
            assert len(ext.ext_basis(i)) == ext2_report.ext_total(i)

    def test_identity_acts_as_unit(self, ext2_report):
        ext = ExtAlgebra(ext2_report)
        unit = ext.ext_basis(0)[0]
        for xi in ext.ext_basis(2):
            assert ext.yoneda_product(xi, unit) == xi
            assert ext.yoneda_product(unit, xi) == xi

    def test_degree_one_products_commute_for_exterior(self, ext2_report):
        # cohomology of the exterior algebra is the polynomial ring
        ext = ExtAlgebra(ext2_report)
        y1, y2 = ext.ext_basis(1)
        p12 = ext.yoneda_product(y1, y2)
        p21 = ext.yoneda_product(y2, y1)
        assert p12 == p21
        assert p12.step == 2
        assert any(c for c in p12.values.values())

    def test_products_span_next_step(self, ext2_report):
        ext = ExtAlgebra(ext2_report)
        gen = generation_check(ext)
        assert gen.passed
        assert gen.checked_to == 5

    def test_yoneda_associativity_on_degree_one(self, ext2_report):
        ext = ExtAlgebra(ext2_report)
        basis1 = ext.ext_basis(1)
        for x in basis1:
            for y in basis1:
                xy = ext.yoneda_product(x, y)
                for z in basis1:
                    yz = ext.yoneda_product(y, z)
                    left = ext.yoneda_product(xy, z)
                    right = ext.yoneda_product(x, yz)
                    assert left == right

    def test_ext_element_coerces_values(self):
        e = ExtElement(1, {0: 1, 1: Fraction(1, 2)})
        assert e.values[0] == Fraction(1)
        assert e.values[1] == Fraction(1, 2)


def test_generation_agrees_with_linearity_for_exterior(ext2_report):
    # the two Koszulity views must agree on these instances
    ext = ExtAlgebra(ext2_report)
    gen = generation_check(ext)
    assert gen.passed == (is_koszul_to(ext2_report).status == KOSZUL_TO_BOUND)


def test_resolution_respects_thread_env(monkeypatch):
    monkeypatch.setenv("QK_THREADS", "2")
    model = AlgebraModel(exterior(2), 3)
    report = resolve(model, 3, 3)
    assert report.ext_totals() == [1, 2, 3, 4]
    monkeypatch.setenv("QK_THREADS", "1")
    report_seq = resolve(AlgebraModel(exterior(2), 3), 3, 3)
    assert report_seq.betti == report.betti
