"""Epsilon-nets under the distinction metric, rational approximation, limits.

A finite eps-net N of a host space X has a member within distinction
distance eps of every point.  The nearest-member correspondence shows
d_GH(N, X) <= 2 eps, and quotienting a net by its internal distance
profiles yields a causet that is still a 3 eps net of the host.

Every finite space admits an arbitrarily close rational one: perturbing
each positive entry by delta * t^2, with t the maximal link count of a
chronological chain between the pair, makes all reverse-triangle
inequalities strict, after which each entry can be rounded to a nearby
rational without losing strictness.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .causet import Causet, distance_quotient, induced, validate
from .distinction import GammaMatrix, gamma
from .gh import Correspondence

__all__ = [
    "EpsilonNet",
    "TotallyBoundedParams",
    "FamilyReport",
    "extract_net",
    "net_correspondence",
    "net_to_causet",
    "check_uniformly_totally_bounded",
    "rationalize",
    "simplest_rational_between",
    "limit_causet",
]


@dataclass(frozen=True, eq=False)
class EpsilonNet:
    """Member indices covering the host within distinction distance eps."""

    host: Causet
    eps: float
    members: tuple[int, ...]


def extract_net(c: Causet, eps: float, g: GammaMatrix | None = None
                ) -> EpsilonNet:
    """Greedy farthest-point net extraction; deterministic and seedless.

    Starts from index 0 and repeatedly adds the point farthest from the
    current members until everything is within eps.
    """
    if eps < 0:
        raise ValueError("eps must be nonnegative")
    if c.n == 0:
        raise ValueError("cannot extract a net from an empty causet")
    gm = g if g is not None else gamma(c)
    members = [0]
    dist = gm.g[0].copy()
    while True:
        far = int(dist.argmax())
        if dist[far] <= eps:
            break
        members.append(far)
        np.minimum(dist, gm.g[far], out=dist)
    return EpsilonNet(c, float(eps), tuple(members))


def net_correspondence(net: EpsilonNet, g: GammaMatrix | None = None
                       ) -> Correspondence:
    """Host-to-net correspondence matching each point to a nearest member.

    Members pair with themselves, so the relation covers both sides; its
    distortion is at most 2 eps because d is 1-Lipschitz in each slot
    with respect to the distinction metric.
    """
    gm = g if g is not None else gamma(net.host)
    members = np.asarray(net.members)
    nearest = gm.g[:, members].argmin(axis=1)
    pairs = {(x, int(nearest[x])) for x in range(net.host.n)}
    pairs |= {(int(m), k) for k, m in enumerate(net.members)}
    return Correspondence(net.host.n, len(net.members), tuple(pairs))


def net_to_causet(net: EpsilonNet) -> Causet:
    """Quotient the net's internal matrix into a causet of representatives.

    The output keeps host labels, so representative host indices can be
    recovered from them; it is a 3 eps net of the host.
    """
    sub = induced(net.host, net.members)
    out, _ = distance_quotient(sub)
    return out


@dataclass(frozen=True)
class TotallyBoundedParams:
    """Size budget: diameter bound D and net sizes beta_k at scales alpha_k."""

    diameter_bound: float
    alpha: tuple[float, ...]
    beta: tuple[int, ...]

    def __post_init__(self):
        if self.diameter_bound < 0:
            raise ValueError("diameter bound must be nonnegative")
        if len(self.alpha) != len(self.beta):
            raise ValueError("alpha and beta must have equal length")
        if any(a <= 0 for a in self.alpha):
            raise ValueError("alpha scales must be positive")
        for i in range(len(self.alpha) - 1):
            if not self.alpha[i] > self.alpha[i + 1]:
                raise ValueError("alpha must be strictly decreasing")
            if self.beta[i] > self.beta[i + 1]:
                raise ValueError("beta must be nondecreasing")
        if any(b < 1 for b in self.beta):
            raise ValueError("beta sizes must be positive")


@dataclass(frozen=True)
class MemberCheck:
    index: int
    ok: bool
    failure: dict | None


@dataclass(frozen=True)
class FamilyReport:
    params: TotallyBoundedParams
    members: tuple[MemberCheck, ...]

    @property
    def ok(self) -> bool:
        return all(m.ok for m in self.members)

    def to_json(self) -> list[dict]:
        return [{"index": m.index, "ok": m.ok, "failure": m.failure}
                for m in self.members]


def check_uniformly_totally_bounded(family: Sequence[Causet],
                                    params: TotallyBoundedParams
                                    ) -> FamilyReport:
    """Check each member against the shared size budget; first failure wins."""
    checks: list[MemberCheck] = []
    for idx, c in enumerate(family):
        failure: dict | None = None
        diam = float(c.as_float().max()) if c.n else 0.0
        if c.boundary is None:
            failure = {"kind": "no-boundary-point"}
        elif diam > params.diameter_bound:
            failure = {"kind": "diameter", "value": diam,
                       "bound": params.diameter_bound}
        else:
            gm = gamma(c)
            for a, b in zip(params.alpha, params.beta):
                net = extract_net(c, a, g=gm)
                if len(net.members) > b:
                    failure = {"kind": "net-size", "alpha": a,
                               "size": len(net.members), "bound": b}
                    break
        checks.append(MemberCheck(idx, failure is None, failure))
    return FamilyReport(params, tuple(checks))


def simplest_rational_between(lo: Fraction, hi: Fraction) -> Fraction:
    """A small-denominator rational strictly inside the open interval.

    Stern-Brocot style descent on the continued fraction of the endpoints.
    """
    if not lo < hi:
        raise ValueError("need lo < hi")
    if lo < 0:
        # shift to nonnegative territory and back
        shift = -math.floor(lo)
        return simplest_rational_between(lo + shift, hi + shift) - shift
    floor_lo = lo.numerator // lo.denominator
    candidate = Fraction(floor_lo + 1)
    if candidate < hi:
        return candidate
    if lo == floor_lo:
        # interval (k, hi) with hi <= k + 1: take k + 1/q for small q
        q = (1 / (hi - lo)).__floor__() + 1
        return lo + Fraction(1, q)
    inner = simplest_rational_between(1 / (hi - floor_lo), 1 / (lo - floor_lo))
    return floor_lo + 1 / inner


def _exact_gamma(d: np.ndarray) -> list[list[Fraction]]:
    n = d.shape[0]
    g = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            worst = Fraction(0)
            for z in range(n):
                worst = max(worst, abs(d[i, z] - d[j, z]),
                            abs(d[z, i] - d[z, j]))
            g[i][j] = g[j][i] = worst
    return g


def _link_counts(pos: np.ndarray) -> np.ndarray:
    """t[i][j]: maximal number of links of a chronological chain i -> j."""
    n = pos.shape[0]
    t = np.where(pos, 1, 0)
    for k in range(n):
        for i in range(n):
            if not t[i, k]:
                continue
            for j in range(n):
                if t[k, j] and t[i, k] + t[k, j] > t[i, j]:
                    t[i, j] = t[i, k] + t[k, j]
    return t


def rationalize(c: Causet, eps: float) -> Causet:
    """Exact-rational causet within eps of the input, entrywise.

    Stage one adds delta * t^2 to each positive entry, with t the maximal
    link count between the pair, which makes every reverse-triangle
    inequality strictly slack (concatenating chains forces
    t(i,k) >= t(i,j) + t(j,k)).  Stage two rounds each entry to a
    small-denominator rational inside a margin that preserves strictness,
    positivity, and the distinguishing axiom.  All arithmetic is exact.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    n = c.n
    if c.is_rational:
        d = c.d.copy()
    else:
        d = np.empty((n, n), dtype=object)
        src = c.d
        for i in range(n):
            for j in range(n):
                d[i, j] = Fraction(float(src[i, j]))
    pos = np.array([[d[i, j] > 0 for j in range(n)] for i in range(n)])
    if n < 2:
        return Causet(c.labels, d, boundary=c.boundary, meta=c.meta)

    eps_f = Fraction(eps) if not isinstance(eps, Fraction) else eps
    g = _exact_gamma(d)
    alpha = min(g[i][j] for i in range(n) for j in range(i + 1, n))
    if alpha <= 0:
        raise ValueError("input causet is not distinguishing")
    if not pos.any():
        return Causet(c.labels, d, boundary=c.boundary, meta=c.meta)

    pair_budget = Fraction(n * (n - 1), 2) ** 2
    delta = min(alpha / 4, eps_f / 2) / pair_budget
    t = _link_counts(pos)
    d1 = d.copy()
    for i in range(n):
        for j in range(n):
            if pos[i, j]:
                d1[i, j] = d[i, j] + delta * int(t[i, j]) ** 2

    slack = None
    for i in range(n):
        for j in range(n):
            if not pos[i, j]:
                continue
            for k in range(n):
                if pos[j, k]:
                    s = d1[i, k] - d1[i, j] - d1[j, k]
                    if slack is None or s < slack:
                        slack = s
    p_min = min(d1[i, j] for i in range(n) for j in range(n) if pos[i, j])
    margin = min(eps_f / 2, alpha / 8, p_min / 2)
    if slack is not None:
        if slack <= 0:
            raise AssertionError("stage-one perturbation failed to be strict")
        margin = min(margin, slack / 4)

    out = d1.copy()
    for i in range(n):
        for j in range(n):
            if pos[i, j]:
                out[i, j] = simplest_rational_between(d1[i, j] - margin,
                                                      d1[i, j] + margin)
    return Causet(c.labels, out, boundary=c.boundary, meta=c.meta)


def limit_causet(seq: Sequence[Causet], tol: float = 0.05) -> Causet:
    """Entrywise limit of an aligned causet sequence, then quotient.

    Members must share the same labels in the same order.  Each entry must
    be Cauchy within tol over the tail (the later half); the limit is
    estimated by a least-squares fit of a + b/m over the tail positions,
    which is exact for sequences converging at first order, and points
    whose limit profiles coincide within tol are identified.
    """
    if not seq:
        raise ValueError("limit of an empty sequence")
    labels = seq[0].labels
    for k, c in enumerate(seq[1:], start=1):
        if c.labels != labels:
            raise ValueError(f"member {k} labels differ from member 0")
    n = seq[0].n
    stack = np.stack([c.as_float() for c in seq])
    m_count = len(seq)
    tail_start = m_count // 2 if m_count >= 6 else 0
    tail = stack[tail_start:]
    positions = np.arange(tail_start + 1, m_count + 1, dtype=float)

    spread = tail.max(axis=0) - tail.min(axis=0)
    bad = np.argwhere(spread > tol)
    if len(bad):
        i, j = bad[0]
        raise ValueError(
            f"entry ({int(i)}, {int(j)}) is not Cauchy within tol: "
            f"tail spread {float(spread[i, j])}")

    limit = np.empty((n, n))
    design = np.column_stack([np.ones_like(positions), 1.0 / positions])
    for i in range(n):
        for j in range(n):
            vals = tail[:, i, j]
            if vals.max() == vals.min():
                limit[i, j] = vals[0]
                continue
            coef, *_ = np.linalg.lstsq(design, vals, rcond=None)
            limit[i, j] = max(coef[0], 0.0)

    lc = Causet(labels, limit)
    out, _ = distance_quotient(lc, tol=tol)
    report = validate(out, tol=max(tol, 1e-12))
    if not report.valid:
        kinds = sorted(report.kinds())
        raise ValueError(f"limit matrix failed validation: {kinds}")
    return out
