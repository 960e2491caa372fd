"""Causal relation, time functions, and chains.

The extended causal relation

J = {(x, y) : d(p, y) >= d(p, x) and d(x, p) >= d(y, p) for every p}

is a reflexive partial order containing the chronological relation
I = {d > 0}, and composing the two lands back in I.  Weighted sums of
distance profiles give time functions: 1-Lipschitz with respect to the
distinction metric and strictly increasing along strict J.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

import numpy as np

from .causet import Causet

__all__ = [
    "CausalRelation",
    "TimeFunction",
    "Chain",
    "causal_relation",
    "time_function",
    "time_function_normalized",
    "is_chain",
    "chain_length",
    "is_maximal",
    "longest_chain",
]


@dataclass(frozen=True, eq=False)
class CausalRelation:
    """Boolean matrix view of J with set-style access."""

    matrix: np.ndarray

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    @property
    def pairs(self) -> frozenset[tuple[int, int]]:
        return frozenset((int(i), int(j)) for i, j in np.argwhere(self.matrix))

    def contains(self, x: int, y: int) -> bool:
        return bool(self.matrix[x, y])

    def future(self, x: int) -> tuple[int, ...]:
        return tuple(int(i) for i in np.flatnonzero(self.matrix[x]))

    def past(self, x: int) -> tuple[int, ...]:
        return tuple(int(i) for i in np.flatnonzero(self.matrix[:, x]))


def causal_relation(c: Causet, tol: float = 0.0) -> CausalRelation:
    """Compute J by comparing distance profiles pointwise."""
    d = c.as_float()
    n = c.n
    j = np.empty((n, n), dtype=bool)
    for x in range(n):
        past_ok = (d >= d[:, [x]] - tol).all(axis=0)
        fut_ok = (d[[x], :] >= d - tol).all(axis=1)
        j[x] = past_ok & fut_ok
    return CausalRelation(j)


def _in_strict_j(d: np.ndarray, x: int, y: int, tol: float = 0.0) -> bool:
    if x == y:
        return False
    return bool((d[:, y] >= d[:, x] - tol).all()
                and (d[x, :] >= d[y, :] - tol).all())


@dataclass(frozen=True, eq=False)
class TimeFunction:
    """tau(x) = alpha * (1/2) [sum_n w_n d(s_n, x) - sum_n w_n d(x, s_n)] + beta

    with weights w_n = 2^-n over a point ordering (s_1, s_2, ...).
    """

    values: np.ndarray
    weights: np.ndarray
    alpha: float
    beta: float
    ordering: tuple[int, ...]

    def value(self, x: int) -> float:
        return self.values[x]

    def as_dict(self, labels: Sequence[str]) -> dict[str, float]:
        return {labels[i]: float(self.values[i]) for i in range(len(self.values))}


def _tau_base(c: Causet, ordering: Sequence[int] | None):
    n = c.n
    if ordering is None:
        ordering = list(range(n))
    else:
        ordering = list(ordering)
        if sorted(ordering) != list(range(n)):
            raise ValueError("ordering must be a permutation of all points")
    if c.is_rational:
        w = [Fraction(1, 2 ** (k + 1)) for k in range(n)]
        base = [Fraction(1, 2) * sum(
            (w[k] * (c.d[s, x] - c.d[x, s]) for k, s in enumerate(ordering)),
            Fraction(0)) for x in range(n)]
        return np.array(base, dtype=object), np.array(w, dtype=object), tuple(ordering)
    d = c.as_float()
    w = 0.5 ** np.arange(1, n + 1)
    s = np.asarray(ordering)
    incoming = w @ d[s, :]        # sum_n w_n d(s_n, x)
    outgoing = d[:, s] @ w        # sum_n w_n d(x, s_n)
    return 0.5 * (incoming - outgoing), w, tuple(ordering)


def time_function(c: Causet, ordering: Sequence[int] | None = None,
                  alpha=1, beta=0) -> TimeFunction:
    """Time function from geometrically weighted distance profiles.

    Strictly increasing along strict J and, at alpha = 1, 1-Lipschitz with
    respect to the distinction metric.
    """
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    base, w, ordering = _tau_base(c, ordering)
    return TimeFunction(alpha * base + beta, w, alpha, beta, ordering)


def time_function_normalized(c: Causet, x: int, y: int,
                             ordering: Sequence[int] | None = None
                             ) -> TimeFunction:
    """Rescale so tau(x) = 0 and tau(y) = 1 for a pair with x strictly below y."""
    base, w, ordering = _tau_base(c, ordering)
    gap = base[y] - base[x]
    if gap <= 0:
        raise ValueError(
            f"points {x} and {y} are not strictly ordered (tau gap {gap})")
    # (base - base[x]) / gap hits 0 and 1 exactly at the anchor points
    return TimeFunction((base - base[x]) / gap, w,
                        1 / gap, -base[x] / gap, ordering)


@dataclass(frozen=True)
class Chain:
    """Finite sequence of points strictly increasing in J."""

    points: tuple[int, ...]
    is_isochronal: bool

    def __len__(self) -> int:
        return len(self.points)

    def to_json(self) -> list[int]:
        return list(self.points)


def is_chain(c: Causet, points: Sequence[int], tol: float = 0.0
             ) -> Union[Chain, tuple[int, int]]:
    """Return a Chain when the points strictly increase in J.

    On failure the first violating ordered pair is returned instead.
    Duplicated points violate strictness, so a repeated index is returned
    as a pair with itself.
    """
    pts = [int(p) for p in points]
    if not pts:
        raise ValueError("a chain needs at least one point")
    d = c.as_float()
    seen: set[int] = set()
    for p in pts:
        if not 0 <= p < c.n:
            raise ValueError(f"point index {p} out of range")
        if p in seen:
            return (p, p)
        seen.add(p)
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            if not _in_strict_j(d, pts[i], pts[j], tol):
                return (pts[i], pts[j])
    iso = all(d[pts[i], pts[j]] > 0
              for i in range(len(pts)) for j in range(i + 1, len(pts)))
    return Chain(tuple(pts), iso)


def _chain_points(chain: Union[Chain, Sequence[int]]) -> list[int]:
    if isinstance(chain, Chain):
        return list(chain.points)
    return [int(p) for p in chain]


def chain_length(c: Causet, chain: Union[Chain, Sequence[int]]) -> float:
    """Sum of consecutive distances, the length of the finest partition."""
    pts = _chain_points(chain)
    d = c.as_float()
    return float(sum(d[pts[i], pts[i + 1]] for i in range(len(pts) - 1)))


def is_maximal(c: Causet, chain: Union[Chain, Sequence[int]],
               tol: float = 1e-9) -> bool:
    """Whether d is additive along every triple of the chain."""
    pts = _chain_points(chain)
    d = c.as_float()
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            for k in range(j + 1, len(pts)):
                a, b, e = pts[i], pts[j], pts[k]
                if abs(d[a, b] + d[b, e] - d[a, e]) > tol:
                    return False
    return True


def longest_chain(c: Causet, x: int, y: int) -> Chain:
    """Chain from x to y in I maximizing the sum of consecutive distances.

    Dynamic program over the chronological interval between x and y; the
    interval is sorted by distance from x, which is a topological order.
    The returned sum never exceeds d(x, y) by the reverse triangle
    inequality.
    """
    d = c.as_float()
    n = c.n
    if not (0 <= x < n and 0 <= y < n):
        raise ValueError("endpoint index out of range")
    if d[x, y] <= 0:
        raise ValueError(f"points {x} and {y} are not chronologically related")

    inner = np.flatnonzero((d[x, :] > 0) & (d[:, y] > 0))
    inner = inner[(inner != x) & (inner != y)]
    nodes = np.concatenate(([x], inner[np.argsort(d[x, inner], kind="stable")], [y]))

    k = len(nodes)
    sub = d[np.ix_(nodes, nodes)]
    best = np.full(k, -np.inf)
    best[0] = 0.0
    parent = np.full(k, -1)
    for i in range(k - 1):
        if best[i] == -np.inf:
            continue
        row = sub[i]
        cand = best[i] + row
        # ties go to the later predecessor, so equal-length chains come
        # out at their finest partition
        improve = (row > 0) & (cand >= best)
        improve[: i + 1] = False
        best[improve] = cand[improve]
        parent[improve] = i

    path = [k - 1]
    while parent[path[-1]] != -1:
        path.append(parent[path[-1]])
    path.reverse()
    pts = tuple(int(nodes[i]) for i in path)
    return Chain(pts, True)
