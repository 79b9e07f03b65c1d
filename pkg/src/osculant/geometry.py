"""Osculating spaces of a lifted polynomial parametrization t -> p(t).

The order-m osculating space at t0 is the span of the derivative vectors
p_I(t0), |I| <= m. Every dimension reported here is projective, i.e. the
rank of the corresponding matrix minus one.

General points are realized by seeded random integer points in [-B, B]^n
with max-rank aggregation; see :class:`SamplePlan`.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator, Sequence

from . import multiindex
from .exactlinalg import QMatrix, Subspace, rank
from .multiindex import MultiIndex
from .polynomial import Polynomial, parse

log = logging.getLogger(__name__)

Point = tuple  # of Fraction


class GeometryError(ValueError):
    pass


class VanishingLiftingError(GeometryError):
    """p(t0) = 0: the point has to be resampled."""


class SamplingError(GeometryError):
    """Too many rejected sample points."""


@dataclass(frozen=True, eq=False)
class Parametrization:
    name: str
    coords: tuple[Polynomial, ...]
    _derivs: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self):
        coords = tuple(self.coords)
        object.__setattr__(self, "coords", coords)
        if len(coords) < 2:
            raise GeometryError("a parametrization needs at least two coordinates")
        variables = coords[0].variables
        if not variables:
            raise GeometryError("a parametrization needs at least one parameter")
        if any(c.variables != variables for c in coords):
            raise GeometryError("all coordinates must use the same parameter list")
        if all(c.is_zero() for c in coords):
            raise GeometryError("coordinates are all identically zero")

    @classmethod
    def from_strings(cls, name: str, params: Sequence[str], coords: Sequence[str]) -> "Parametrization":
        return cls(name, tuple(parse(c, params) for c in coords))

    @property
    def params(self) -> tuple[str, ...]:
        return self.coords[0].variables

    @property
    def n(self) -> int:
        return len(self.params)

    @property
    def r(self) -> int:
        return len(self.coords) - 1

    def derivative(self, index: MultiIndex) -> tuple[Polynomial, ...]:
        """The coordinate polynomials of p_I (cached)."""
        index = tuple(index)
        got = self._derivs.get(index)
        if got is None:
            got = tuple(c.diff_multi(index) for c in self.coords)
            self._derivs[index] = got
        return got

    def vector(self, index: MultiIndex, t0: Sequence) -> Point:
        return tuple(c.eval(t0) for c in self.derivative(index))

    def point(self, t0: Sequence) -> Point:
        return self.vector((0,) * self.n, t0)

    def same_polynomials(self, other: "Parametrization") -> bool:
        return self.params == other.params and self.coords == other.coords


@dataclass(frozen=True)
class SamplePlan:
    """Seeded source of integer sample points in [-height_bound, height_bound]^n.

    The i-th draw of a named stream depends only on (seed, stream, i), so a
    plan always reproduces the same sequence.
    """

    seed: int = 42
    samples: int = 5
    height_bound: int = 1000

    def __post_init__(self):
        if self.samples < 1:
            raise ValueError("samples must be >= 1")
        if self.height_bound < 1:
            raise ValueError("height_bound must be >= 1")

    def rng(self, stream: str, index: int) -> random.Random:
        return random.Random(f"osculant:{self.seed}:{stream}:{index}")

    def draw(self, n: int, stream: str, index: int, height: int | None = None) -> tuple[int, ...]:
        b = self.height_bound if height is None else height
        g = self.rng(stream, index)
        return tuple(g.randint(-b, b) for _ in range(n))

    @property
    def retry_limit(self) -> int:
        return 100 * self.samples


@dataclass
class OsculatingProfile:
    dims: list[int]
    witness: Point
    samples: list[Point]
    rejected: int = 0

    @property
    def witness_points(self) -> list[Point]:
        return [self.witness] * len(self.dims)

    def jump(self, m: int) -> int:
        return self.dims[m + 1] - self.dims[m]


@dataclass
class SpanResult:
    dim: int
    points: list[Point]
    rejected: int = 0


def as_point(t0: Sequence) -> Point:
    return tuple(Fraction(x) for x in t0)


# matrices and dimensions at a single point

def osculating_rows(P: Parametrization, m: int, t0: Sequence) -> list[Point]:
    if m < 0:
        raise ValueError("order must be nonnegative")
    t0 = as_point(t0)
    rows = [P.vector(I, t0) for I in multiindex.enumerate_indices(P.n, m)]
    if not any(rows[0]):
        raise VanishingLiftingError(f"{P.name}: lifting vanishes at {_fmt(t0)}")
    return rows


def osculating_matrix(P: Parametrization, m: int, t0: Sequence) -> QMatrix:
    return QMatrix(osculating_rows(P, m, t0), ncols=P.r + 1)


def osculating_space(P: Parametrization, m: int, t0: Sequence) -> Subspace:
    return Subspace.span(osculating_rows(P, m, t0), P.r + 1)


def osculating_dim(P: Parametrization, m: int, t0: Sequence) -> int:
    return rank(osculating_matrix(P, m, t0)) - 1


def rejection_reason(P: Parametrization, t0: Sequence) -> str | None:
    """Why ``t0`` is unusable as a general point, or None if it is accepted."""
    try:
        rows = osculating_rows(P, 1, t0)
    except VanishingLiftingError:
        return "lifting vanishes"
    if rank(QMatrix(rows, ncols=P.r + 1)) < P.n + 1:
        return "order-1 rank below n+1"
    return None


class Sampler:
    """Accepted sample points of one stream, in draw order.

    Rejected points are logged and counted; once plan.retry_limit of them
    have been seen, iteration raises SamplingError.
    """

    def __init__(self, P: Parametrization, plan: SamplePlan, stream: str = "points"):
        self.P = P
        self.plan = plan
        self.stream = stream
        self.rejected = 0
        self._index = 0

    def __iter__(self) -> Iterator[Point]:
        while True:
            yield self.next_point()

    def next_point(self) -> Point:
        P, plan = self.P, self.plan
        while True:
            t0 = as_point(plan.draw(P.n, self.stream, self._index))
            self._index += 1
            reason = rejection_reason(P, t0)
            if reason is None:
                return t0
            self.rejected += 1
            log.info("%s: rejected sample %s (%s)", P.name, _fmt(t0), reason)
            if self.rejected >= plan.retry_limit:
                raise SamplingError(
                    f"{P.name}: {self.rejected} sample points rejected; "
                    "parametrization degenerate where sampled")

    def take(self, k: int) -> list[Point]:
        return [self.next_point() for _ in range(k)]


# generic values

def generic_osculating_dim(P: Parametrization, m: int, plan: SamplePlan) -> tuple[int, Point]:
    best, witness = -1, None
    for t0 in Sampler(P, plan).take(plan.samples):
        h = osculating_dim(P, m, t0)
        if h > best:
            best, witness = h, t0
    return best, witness


def _prefix_dims(P: Parametrization, m_max: int, t0: Point) -> list[int]:
    rows = osculating_rows(P, m_max, t0)
    return [rank(rows[: multiindex.count(P.n, m)]) - 1 for m in range(m_max + 1)]


def profile(P: Parametrization, m_max: int, plan: SamplePlan) -> OsculatingProfile:
    """Osculating dimensions h_0..h_{m_max} at one shared witness point.

    The witness is the sample whose dimension vector is lexicographically
    largest; ties go to the earliest sample.
    """
    if m_max < 1:
        raise ValueError("m_max must be >= 1")
    sampler = Sampler(P, plan)
    points = sampler.take(plan.samples)
    best, witness = None, None
    for t0 in points:
        dims = _prefix_dims(P, m_max, t0)
        if best is None or dims > best:
            best, witness = dims, t0
    return OsculatingProfile(dims=best, witness=witness, samples=points, rejected=sampler.rejected)


def _stacked_span(P: Parametrization, plan: SamplePlan, rows_at: Callable[[Point], list[Point]],
                  stream: str = "points") -> SpanResult:
    # stop once the rank has not grown for r+1 consecutive accepted points
    # (and at least plan.samples were used), or the span is everything
    full = P.r + 1
    basis = Subspace.span([], full)
    points: list[Point] = []
    stable = 0
    sampler = Sampler(P, plan, stream)
    for t0 in sampler:
        points.append(t0)
        grown = Subspace.span(list(basis.basis.rows) + rows_at(t0), full)
        if grown.dim > basis.dim:
            stable = 0
        else:
            stable += 1
        basis = grown
        if basis.dim == full:
            break
        if stable >= P.r + 1 and len(points) >= plan.samples:
            break
    return SpanResult(dim=basis.dim - 1, points=points, rejected=sampler.rejected)


def variety_span(P: Parametrization, plan: SamplePlan) -> SpanResult:
    return _stacked_span(P, plan, lambda t0: [P.point(t0)])


def variety_span_dim(P: Parametrization, plan: SamplePlan) -> int:
    """Projective dimension of the linear span of X."""
    return variety_span(P, plan).dim


def joint_osculating_span(P: Parametrization, m: int, plan: SamplePlan) -> SpanResult:
    return _stacked_span(P, plan, lambda t0: osculating_rows(P, m, t0))


def joint_osculating_span_dim(P: Parametrization, m: int, plan: SamplePlan) -> int:
    """Dimension of the span of all order-m osculating spaces of X."""
    return joint_osculating_span(P, m, plan).dim


def tangent_rows_of_osculating_variety(P: Parametrization, m: int, t0: Sequence,
                                       weights: Sequence) -> list[Point]:
    """Rows spanning the tangent space of T(m, X) at sum_I weights[I] * p_I(t0).

    Varying the weights contributes every p_I(t0); moving t0 along t_j
    contributes sum_I weights[I] * p_{I + e_j}(t0).
    """
    t0 = as_point(t0)
    indices = multiindex.enumerate_indices(P.n, m)
    if len(weights) != len(indices):
        raise ValueError(f"need {len(indices)} weights, got {len(weights)}")
    rows = osculating_rows(P, m, t0)
    for j in range(P.n):
        e = multiindex.unit(P.n, j)
        acc = [Fraction(0)] * (P.r + 1)
        for I, a in zip(indices, weights):
            if a:
                v = P.vector(multiindex.add(I, e), t0)
                acc = [x + a * y for x, y in zip(acc, v)]
        rows.append(tuple(acc))
    return rows


def osculating_variety_dim(P: Parametrization, m: int, plan: SamplePlan) -> int:
    """Dimension of the osculating variety T(m, X), from its tangent space
    at a random point of a random osculating space, maximized over samples."""
    best = -1
    count = multiindex.count(P.n, m)
    for i, t0 in enumerate(Sampler(P, plan).take(plan.samples)):
        weights = plan.draw(count, "alpha", i)
        best = max(best, rank(tangent_rows_of_osculating_variety(P, m, t0, weights)) - 1)
    return best


# changes of coordinates

def projective_transform(P: Parametrization, A: QMatrix, name: str | None = None) -> Parametrization:
    """The parametrization A . p(t) for an (r+1) x (r+1) matrix A."""
    if A.shape != (P.r + 1, P.r + 1):
        raise GeometryError(f"matrix shape {A.shape} does not match P^{P.r}")
    coords = []
    for row in A.rows:
        acc = Polynomial(P.params)
        for a, c in zip(row, P.coords):
            if a:
                acc = acc + c * a
        coords.append(acc)
    return Parametrization(name or P.name, tuple(coords))


def reparametrize(P: Parametrization, C: QMatrix, d: Sequence, name: str | None = None) -> Parametrization:
    """The parametrization t -> p(C t + d)."""
    if C.shape != (P.n, P.n) or len(d) != P.n:
        raise GeometryError("affine change must be n x n with an n-vector shift")
    vars_ = [Polynomial.variable(P.params, j) for j in range(P.n)]
    sub = []
    for row, shift in zip(C.rows, d):
        acc = Polynomial.constant(P.params, Fraction(shift))
        for c, x in zip(row, vars_):
            if c:
                acc = acc + x * c
        sub.append(acc)
    return Parametrization(name or P.name, tuple(c.substitute(sub) for c in P.coords))


def _fmt(t0) -> str:
    return "(" + ", ".join(str(x) for x in t0) + ")"
