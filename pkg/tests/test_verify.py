from fractions import Fraction

import pytest

import oracle
from osculant import catalog
from osculant.geometry import profile, variety_span_dim
from osculant.multiindex import enumerate_indices
from osculant.verify import (
    Fiber,
    Status,
    dichotomy_check,
    first_order_constancy_corank,
    first_stable_order,
    lemma_inclusion_check,
    lemma_trial,
    motion_matrix,
    osculating_bound_check,
    proposition_check,
)

ENTRIES = catalog.default_entries()
RNC5 = catalog.rnc(5).parametrization
CONE = catalog.cone_rnc(4)
CONE3 = catalog.cone_rnc3_in_P5()
VER2 = catalog.veronese2().parametrization
HYP = catalog.rnc_in_hyperplane().parametrization


def strings(P):
    return [str(c) for c in P.coords], list(P.params)


class TestProposition:
    def test_hyperplane_curve(self, plan):
        rep = proposition_check(HYP, 4, plan)
        assert (rep.h_m, rep.h_next, rep.span_dim, rep.status) == (4, 4, 4, Status.PASS)

    def test_rnc5_at_stabilization(self, plan):
        rep = proposition_check(RNC5, 5, plan)
        assert (rep.h_m, rep.span_dim, rep.status) == (5, 5, Status.PASS)

    def test_not_applicable(self, plan):
        rep = proposition_check(RNC5, 2, plan)
        assert (rep.h_m, rep.h_next, rep.span_dim) == (2, 3, None)
        assert rep.status is Status.NOT_APPLICABLE

    @pytest.mark.parametrize("entry", ENTRIES, ids=lambda e: e.name)
    def test_every_order_up_to_stabilization(self, entry, plan):
        P = entry.parametrization
        stable = first_stable_order(P, plan)
        for m in range(stable + 1):
            rep = proposition_check(P, m, plan)
            assert rep.status is (Status.PASS if m == stable else Status.NOT_APPLICABLE)


class TestLemma:
    def test_trial_matches_symbolic_velocity(self):
        t0, a, b, w = (2, -1), (3, 1, -2), (1, 0, 5), (4, -3)
        trial = lemma_trial(CONE.parametrization, 1, t0, a, b, w)
        want = oracle.curve_velocity(*strings(CONE.parametrization), 1, t0, a, b, w)
        assert list(trial.derivative_vector) == want
        assert trial.member

    def test_beta_regrouping(self):
        trial = lemma_trial(RNC5, 1, (1,), a=(2, 3), b=(5, 7), w=(11,))
        # beta_0 = b_0, beta_1 = b_1 + a_0 w, beta_2 = a_1 w
        assert trial.beta == {(0,): 5, (1,): 7 + 22, (2,): 33}

    def test_degenerate_trial(self):
        trial = lemma_trial(VER2, 2, (3, 1), a=range(6), b=[0] * 6, w=(0, 0))
        assert not any(trial.derivative_vector)
        assert trial.member

    def test_strictness_explicit(self):
        # a = delta at I=(2), w = 1, b = 0 gives the p_(3) direction
        trial = lemma_trial(RNC5, 2, (4,), a=(0, 0, 1), b=(0, 0, 0), w=(1,), target_order=2)
        assert trial.derivative_vector == RNC5.vector((3,), (4,))
        assert not trial.member

    def test_strictness_probe(self, plan):
        assert lemma_inclusion_check(RNC5, 2, 100, plan, target_order=2).failures > 0

    @pytest.mark.parametrize("entry", ENTRIES, ids=lambda e: e.name)
    @pytest.mark.parametrize("m", [1, 2, 3])
    def test_inclusion_never_fails(self, entry, m, plan):
        rep = lemma_inclusion_check(entry.parametrization, m, 100, plan)
        assert len(rep.trials) == 100
        assert rep.failures == 0 and rep.status is Status.PASS

    def test_trials_are_replayable(self, plan):
        rep = lemma_inclusion_check(VER2, 1, 5, plan)
        for t in rep.trials:
            again = lemma_trial(VER2, 1, t.t0, t.a, t.b, t.w)
            assert again.derivative_vector == t.derivative_vector
            assert all(abs(x) <= 100 for x in t.a + t.b + t.w)


class TestConstancy:
    def test_cone_rulings(self, plan):
        t0 = profile(CONE.parametrization, 3, plan).witness
        assert first_order_constancy_corank(CONE.parametrization, 2, t0) == (1, 1)

    def test_veronese_tangent_planes_move(self):
        assert first_order_constancy_corank(VER2, 1, (3, -5)) == (2, 0)
        assert oracle.motion_rank(*strings(VER2), 1, (3, -5)) == 2

    def test_full_osculating_space_is_constant(self):
        assert first_order_constancy_corank(VER2, 2, (3, -5)) == (0, 2)
        assert not any(any(r) for r in motion_matrix(VER2, 2, (3, -5)).rows)

    @pytest.mark.parametrize("entry", ENTRIES, ids=lambda e: e.name)
    @pytest.mark.parametrize("m", [1, 2])
    def test_corank_against_annihilator_route(self, entry, m, plan):
        P = entry.parametrization
        prof = profile(P, m + 1, plan)
        k = prof.jump(m)
        corank, lb = first_order_constancy_corank(P, m, prof.witness)
        assert corank == oracle.motion_rank(*strings(P), m, prof.witness)
        if corank > min(P.n, k):
            # only possible when X already lies in P^(h+k), e.g. the tangent
            # planes of the quadric surface or the Togliatti T(2) hyperplanes
            assert variety_span_dim(P, plan) <= prof.dims[m] + k
        elif 1 <= k <= P.n - 1:
            assert lb >= P.n - k

    @pytest.mark.parametrize("name,m", [("segre11", 1), ("togliatti", 2)])
    def test_corank_can_exceed_jump_inside_branch_a(self, name, m, plan):
        P = catalog.get(name).parametrization
        prof = profile(P, m + 1, plan)
        assert prof.jump(m) == 1
        assert first_order_constancy_corank(P, m, prof.witness) == (2, 0)
        assert dichotomy_check(P, m, plan).branch == "A"


class TestDichotomy:
    def test_cone_branch_b(self, plan):
        rep = dichotomy_check(CONE.parametrization, 2, plan, CONE.fiber)
        assert (rep.h, rep.k, rep.n) == (3, 1, 2)
        assert rep.applicable and rep.branch_a is False and rep.span_dim == 5
        assert (rep.corank, rep.fiber_dim_lb) == (1, 1)
        f = rep.fiber
        assert f.passes_through_base and f.constancy_equal == [True] * 5
        assert (f.span_dim, f.span_bound, f.dim, f.dim_bound) == (1, 1, 1, 1)
        assert rep.branch == "B" and rep.status is Status.PASS

    def test_cone_in_hyperplane_branch_a(self, plan):
        rep = dichotomy_check(CONE3.parametrization, 2, plan)
        assert (rep.h, rep.k, rep.span_dim, rep.branch_a) == (3, 1, 4, True)
        assert rep.branch == "A" and rep.status is Status.PASS

    def test_veronese_not_applicable(self, plan):
        rep = dichotomy_check(VER2, 1, plan)
        assert rep.k == 3 and not rep.applicable
        assert rep.status is Status.NOT_APPLICABLE and rep.branch is None

    def test_first_order_certificate_without_fiber(self, plan):
        rep = dichotomy_check(CONE.parametrization, 2, plan)
        assert rep.branch == "B-first-order" and rep.status is Status.PASS

    def test_wrong_fiber_fails(self, plan):
        # moving along u changes T(2): this is not a constancy fiber
        wrong = Fiber.from_strings(["u0", "v0"], ["s"], ["u0 + s", "v0"])
        rep = dichotomy_check(CONE.parametrization, 2, plan, wrong)
        assert not all(rep.fiber.constancy_equal)
        assert rep.status is Status.FAIL

    def test_fiber_must_pass_through_base(self, plan):
        off = Fiber.from_strings(["u0", "v0"], ["s"], ["u0", "v0 + s + 1"])
        rep = dichotomy_check(CONE.parametrization, 2, plan, off)
        assert not rep.fiber.passes_through_base
        assert rep.status is Status.FAIL

    @pytest.mark.parametrize("entry", ENTRIES, ids=lambda e: e.name)
    def test_every_applicable_case_passes(self, entry, plan):
        P = entry.parametrization
        for m in range(1, entry.max_order):
            fiber = entry.fiber if entry.fiber_order == m else None
            rep = dichotomy_check(P, m, plan, fiber)
            if rep.applicable:
                assert rep.status is Status.PASS, (entry.name, m, rep)
                assert rep.branch_a or rep.fiber_dim_lb >= P.n - rep.k
            else:
                assert rep.status is Status.NOT_APPLICABLE

    @pytest.mark.parametrize("name", ["cone_rnc", "cone_rnc3_in_P5"])
    def test_fibers_keep_osculating_space_constant(self, name, plan):
        entry = catalog.get(name)
        rep = dichotomy_check(entry.parametrization, entry.fiber_order, plan, entry.fiber)
        assert len(rep.fiber.constancy_equal) >= 5 and all(rep.fiber.constancy_equal)


class TestBound:
    def test_rnc5(self, plan):
        rep = osculating_bound_check(RNC5, 2, plan)
        assert (rep.osculating_variety_dim, rep.h, rep.k) == (3, 2, 1)
        assert rep.status is Status.PASS

    @pytest.mark.parametrize("entry", ENTRIES, ids=lambda e: e.name)
    def test_order_zero_is_equality(self, entry, plan):
        rep = osculating_bound_check(entry.parametrization, 0, plan)
        assert rep.osculating_variety_dim == rep.h + rep.k == entry.parametrization.n

    def test_cone(self, plan):
        rep = osculating_bound_check(CONE.parametrization, 2, plan)
        assert rep.osculating_variety_dim <= 4 and rep.status is Status.PASS


def test_fiber_curve_is_the_ruling():
    Y = CONE.fiber.curve(CONE.parametrization, (Fraction(2), Fraction(3)))
    assert [str(c) for c in Y.coords] == ["s + 3", "2*s + 6", "4*s + 12", "8*s + 24", "16*s + 48", "1"]


def test_lemma_weights_sized_to_index_set():
    with pytest.raises(ValueError):
        lemma_trial(VER2, 1, (1, 1), a=(1, 2), b=(1, 2, 3), w=(1, 1))
    assert len(enumerate_indices(2, 1)) == 3
