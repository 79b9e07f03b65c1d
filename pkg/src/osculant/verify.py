"""Executable checks of the osculating-dimension results on concrete varieties.

Each check returns a report dataclass with a ``status`` of pass, fail, or
not-applicable. A check whose hypothesis does not hold is reported as
not-applicable and never counts as a pass.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Sequence

from . import multiindex
from .exactlinalg import QMatrix, quotient_residual, rank, span_contains, span_equal
from .geometry import (
    GeometryError,
    Parametrization,
    Point,
    SamplePlan,
    Sampler,
    as_point,
    osculating_space,
    osculating_variety_dim,
    profile,
    rejection_reason,
    variety_span,
)
from .multiindex import MultiIndex
from .polynomial import Polynomial, parse

LEMMA_WEIGHT_HEIGHT = 100
FIBER_POINTS = 5


class Status(str, enum.Enum):
    PASS = "pass"
    FAIL = "fail"
    NOT_APPLICABLE = "not-applicable"


# Proposition: equal consecutive osculating dimensions force X into P^h


@dataclass
class PropositionReport:
    m: int
    h_m: int
    h_next: int
    span_dim: int | None
    witness: Point
    status: Status


def proposition_check(P: Parametrization, m: int, plan: SamplePlan) -> PropositionReport:
    prof = profile(P, m + 1, plan)
    h, h_next = prof.dims[m], prof.dims[m + 1]
    if h != h_next:
        return PropositionReport(m, h, h_next, None, prof.witness, Status.NOT_APPLICABLE)
    span = variety_span(P, plan).dim
    status = Status.PASS if span == h else Status.FAIL
    return PropositionReport(m, h, h_next, span, prof.witness, status)


def first_stable_order(P: Parametrization, plan: SamplePlan, max_order: int = 12) -> int:
    """Smallest m with h_m = h_{m+1}."""
    prof = profile(P, max_order + 1, plan)
    for m in range(max_order + 1):
        if prof.dims[m] == prof.dims[m + 1]:
            return m
    raise GeometryError(f"{P.name}: profile does not stabilize up to order {max_order + 1}")


# Lemma: tangent spaces of T(m, X) lie in the order m+1 osculating space


@dataclass
class LemmaTrial:
    """One curve s -> sum_I (a_I + b_I s) p_I(t0 + w s) through T(m, X).

    ``derivative_vector`` is its velocity at s = 0; ``beta`` holds the same
    vector's coefficients on the p_I(t0) with |I| <= m + 1.
    """

    t0: Point
    a: tuple
    b: tuple
    w: tuple
    derivative_vector: Point
    beta: dict
    member: bool


def lemma_trial(P: Parametrization, m: int, t0: Sequence, a: Sequence, b: Sequence,
                w: Sequence, target_order: int | None = None) -> LemmaTrial:
    t0 = as_point(t0)
    a, b, w = (tuple(Fraction(x) for x in seq) for seq in (a, b, w))
    indices = multiindex.enumerate_indices(P.n, m)
    if len(a) != len(indices) or len(b) != len(indices) or len(w) != P.n:
        raise ValueError("weight vectors do not match the index set")
    size = P.r + 1
    cache: dict[MultiIndex, Point] = {}

    def p_at(J):
        if J not in cache:
            cache[J] = P.vector(J, t0)
        return cache[J]

    vec = [Fraction(0)] * size
    for I, aI, bI in zip(indices, a, b):
        if bI:
            vec = [x + bI * y for x, y in zip(vec, p_at(I))]
        if aI:
            for j, wj in enumerate(w):
                if wj:
                    d = p_at(multiindex.add(I, multiindex.unit(P.n, j)))
                    vec = [x + aI * wj * y for x, y in zip(vec, d)]

    beta: dict[MultiIndex, Fraction] = {}
    for I, aI, bI in zip(indices, a, b):
        beta[I] = beta.get(I, Fraction(0)) + bI
        for j, wj in enumerate(w):
            J = multiindex.add(I, multiindex.unit(P.n, j))
            beta[J] = beta.get(J, Fraction(0)) + aI * wj
    regrouped = [Fraction(0)] * size
    for J, c in beta.items():
        if c:
            regrouped = [x + c * y for x, y in zip(regrouped, p_at(J))]
    if regrouped != vec:
        raise AssertionError("regrouped derivative expansion disagrees with the direct one")

    target = m + 1 if target_order is None else target_order
    member = span_contains(osculating_space(P, target, t0), vec)
    return LemmaTrial(t0, a, b, w, tuple(vec), {I: c for I, c in beta.items() if c}, member)


@dataclass
class LemmaReport:
    m: int
    target_order: int
    trials: list[LemmaTrial]

    @property
    def failures(self) -> int:
        return sum(not t.member for t in self.trials)

    @property
    def status(self) -> Status:
        return Status.PASS if self.failures == 0 else Status.FAIL


def lemma_inclusion_check(P: Parametrization, m: int, trials: int, plan: SamplePlan,
                          target_order: int | None = None) -> LemmaReport:
    """Random trials of the inclusion T_P(T(m, X)) in T(m+1, p, X).

    ``target_order`` replaces m+1 as the order of the osculating space tested
    for membership (a smaller value probes that the inclusion is sharp).
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    count = multiindex.count(P.n, m)
    sampler = Sampler(P, plan, "lemma-points")
    out = []
    for i in range(trials):
        t0 = sampler.next_point()
        g = plan.rng("lemma-weights", i)
        hb = LEMMA_WEIGHT_HEIGHT
        a = [g.randint(-hb, hb) for _ in range(count)]
        b = [g.randint(-hb, hb) for _ in range(count)]
        w = [g.randint(-hb, hb) for _ in range(P.n)]
        out.append(lemma_trial(P, m, t0, a, b, w, target_order))
    return LemmaReport(m, m + 1 if target_order is None else target_order, out)


# first-order constancy of q -> T(m, q, X)


class Constancy(NamedTuple):
    corank: int
    fiber_dim_lb: int


def motion_matrix(P: Parametrization, m: int, t0: Sequence) -> QMatrix:
    """Row j: residuals modulo T(m, t0) of d/dt_j p_I(t0), concatenated over |I| <= m."""
    t0 = as_point(t0)
    S = osculating_space(P, m, t0)
    indices = multiindex.enumerate_indices(P.n, m)
    rows = []
    for j in range(P.n):
        e = multiindex.unit(P.n, j)
        row: list[Fraction] = []
        for I in indices:
            row.extend(quotient_residual(S, P.vector(multiindex.add(I, e), t0)))
        rows.append(row)
    return QMatrix(rows, ncols=len(indices) * (P.r + 1))


def first_order_constancy_corank(P: Parametrization, m: int, t0: Sequence) -> Constancy:
    k = rank(motion_matrix(P, m, t0))
    return Constancy(k, P.n - k)


# Theorem: the dichotomy for a jump 1 <= k <= n-1


@dataclass(frozen=True)
class Fiber:
    """A family of subvarieties Y through each base point, in parameter space.

    ``coords`` are n polynomials in ``base + params`` giving t(s); with the
    base names bound to t0, t(0) must equal t0.
    """

    base: tuple[str, ...]
    params: tuple[str, ...]
    coords: tuple[Polynomial, ...]

    @classmethod
    def from_strings(cls, base: Sequence[str], params: Sequence[str], coords: Sequence[str]) -> "Fiber":
        names = tuple(base) + tuple(params)
        if len(set(names)) != len(names):
            raise ValueError("fiber base and parameter names must be distinct")
        return cls(tuple(base), tuple(params), tuple(parse(c, names) for c in coords))

    @property
    def dim(self) -> int:
        return len(self.params)

    def at(self, t0: Sequence) -> tuple[Polynomial, ...]:
        """t(s) with the base bound to ``t0``, as polynomials in the fiber parameters."""
        t0 = as_point(t0)
        if len(t0) != len(self.base):
            raise ValueError("base point has the wrong number of coordinates")
        sub = [Polynomial.constant(self.params, x) for x in t0]
        sub += [Polynomial.variable(self.params, j) for j in range(self.dim)]
        return tuple(c.substitute(sub) for c in self.coords)

    def curve(self, P: Parametrization, t0: Sequence) -> Parametrization:
        """Y through p(t0), as the parametrization s -> p(t(s))."""
        ts = self.at(t0)
        if len(ts) != P.n:
            raise ValueError(f"fiber has {len(ts)} coordinates, expected {P.n}")
        return Parametrization(f"{P.name}/fiber", tuple(c.substitute(list(ts)) for c in P.coords))


@dataclass
class FiberReport:
    passes_through_base: bool
    constancy_points: list[Point]
    constancy_equal: list[bool]
    span_dim: int
    span_bound: int
    dim: int
    dim_bound: int

    @property
    def ok(self) -> bool:
        return (self.passes_through_base and all(self.constancy_equal)
                and len(self.constancy_equal) >= FIBER_POINTS
                and self.span_dim <= self.span_bound and self.dim >= self.dim_bound)


@dataclass
class DichotomyReport:
    m: int
    n: int
    h: int
    k: int
    witness: Point
    applicable: bool
    span_dim: int | None = None
    branch_a: bool | None = None
    corank: int | None = None
    fiber_dim_lb: int | None = None
    fiber: FiberReport | None = None
    branch: str | None = None
    status: Status = Status.NOT_APPLICABLE
    notes: list[str] = field(default_factory=list)


def _check_fiber(P: Parametrization, fiber: Fiber, m: int, t0: Point, h: int, k: int,
                 plan: SamplePlan) -> FiberReport:
    ts = fiber.at(t0)
    zero = [0] * fiber.dim
    through = tuple(c.eval(zero) for c in ts) == t0
    base_space = osculating_space(P, m, t0)
    points, equal = [], []
    rejected, i = 0, 0
    while len(points) < max(FIBER_POINTS, plan.samples):
        s = plan.draw(fiber.dim, "fiber", i)
        i += 1
        q = tuple(c.eval(s) for c in ts)
        if rejection_reason(P, q) is not None:
            rejected += 1
            if rejected >= plan.retry_limit:
                raise GeometryError(f"{P.name}: fiber points are all degenerate")
            continue
        points.append(q)
        equal.append(span_equal(osculating_space(P, m, q), base_space))
    Y = fiber.curve(P, t0)
    span_dim = variety_span(Y, plan).dim
    # sampling Y only accepts immersive points, so the order-1 dimension is dim Y
    dim_y = profile(Y, 1, plan).dims[1]
    return FiberReport(through, points, equal, span_dim, h - m, dim_y, P.n - k)


def dichotomy_check(P: Parametrization, m: int, plan: SamplePlan,
                    fiber: Fiber | None = None) -> DichotomyReport:
    """Either X lies in P^(h+k), or X is covered by subvarieties of dimension
    >= n-k, along which T(m, ., X) is constant, spanning at most P^(h-m).

    Without a closed-form fiber the second branch is certified at first
    order: the corank k' of the motion matrix must satisfy n - k' >= n - k.
    """
    prof = profile(P, m + 1, plan)
    h, k = prof.dims[m], prof.jump(m)
    t0 = prof.witness
    report = DichotomyReport(m=m, n=P.n, h=h, k=k, witness=t0, applicable=1 <= k <= P.n - 1)
    if not report.applicable:
        report.notes.append(f"jump k={k} outside 1..n-1={P.n - 1}")
        return report
    report.span_dim = variety_span(P, plan).dim
    report.branch_a = report.span_dim <= h + k
    report.corank, report.fiber_dim_lb = first_order_constancy_corank(P, m, t0)
    first_order = report.fiber_dim_lb >= P.n - k
    if fiber is not None:
        report.fiber = _check_fiber(P, fiber, m, t0, h, k, plan)
    if report.branch_a:
        report.branch = "A"
    elif report.fiber is not None and report.fiber.ok:
        report.branch = "B"
    elif report.fiber is None and first_order:
        report.branch = "B-first-order"
    report.status = Status.PASS if report.branch else Status.FAIL
    return report


# bound on the osculating variety


@dataclass
class BoundReport:
    m: int
    h: int
    k: int
    osculating_variety_dim: int
    status: Status


def osculating_bound_check(P: Parametrization, m: int, plan: SamplePlan) -> BoundReport:
    prof = profile(P, m + 1, plan)
    h, k = prof.dims[m], prof.jump(m)
    dim = osculating_variety_dim(P, m, plan)
    return BoundReport(m, h, k, dim, Status.PASS if dim <= h + k else Status.FAIL)
