"""Finite bounded Lorentzian metric spaces given as distance matrices.

A finite space is an n x n matrix d of nonnegative entries with zero
diagonal.  The two defining axioms are:

  * reverse triangle inequality: d(i,k) >= d(i,j) + d(j,k) whenever
    d(i,j) > 0 and d(j,k) > 0;
  * distinguishing: no two points share both their full distance row
    and their full distance column.

At most one point (the spacelike boundary point, conventionally written
i0) may have an all-zero row and column.  Matrices are stored either as
float64 arrays or, for exact arithmetic, as object arrays of
`fractions.Fraction`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import IO, Sequence

import numpy as np
from scipy.spatial.distance import cdist

__all__ = [
    "Causet",
    "ValidationReport",
    "Violation",
    "validate",
    "reverse_triangle_slack",
    "chronological_relation",
    "diameter",
    "adjoin_boundary",
    "strip_boundary",
    "distance_quotient",
    "find_isometries",
    "induced",
    "load_causet",
    "dump_causet",
]

DEFAULT_TOL = 1e-9


def _as_matrix(d) -> np.ndarray:
    """Coerce input to a square matrix, float64 or object-of-Fraction."""
    if isinstance(d, np.ndarray) and d.dtype == object:
        m = d.copy()
    else:
        try:
            m = np.asarray(d, dtype=float)
        except (TypeError, ValueError):
            m = np.asarray(d, dtype=object)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"distance matrix must be square, got shape {m.shape}")
    return m


def _detect_boundary(d: np.ndarray) -> int | None:
    """Index of the unique point with an all-zero row and column, if any."""
    if d.dtype == object:
        zero_row = [all(v == 0 for v in row) for row in d]
        zero_col = [all(v == 0 for v in col) for col in d.T]
        idx = [i for i in range(len(d)) if zero_row[i] and zero_col[i]]
    else:
        zero = (np.abs(d).max(axis=1) == 0) & (np.abs(d).max(axis=0) == 0)
        idx = list(np.flatnonzero(zero))
    return int(idx[0]) if len(idx) == 1 else None


@dataclass(frozen=True, eq=False)
class Causet:
    """A finite distance matrix with labels and an optional boundary point.

    The constructor performs only structural checks; axiom violations are
    reported by `validate`, never raised here.
    """

    labels: tuple[str, ...]
    d: np.ndarray
    boundary: int | None = None
    meta: dict | None = None

    def __post_init__(self):
        m = _as_matrix(self.d)
        if len(self.labels) != m.shape[0]:
            raise ValueError(
                f"{len(self.labels)} labels for a {m.shape[0]}-point matrix"
            )
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("labels must be unique")
        if self.boundary is not None and not 0 <= self.boundary < m.shape[0]:
            raise ValueError(f"boundary index {self.boundary} out of range")
        if m.dtype != object:
            m.flags.writeable = False
        object.__setattr__(self, "d", m)

    @property
    def n(self) -> int:
        return self.d.shape[0]

    @property
    def is_rational(self) -> bool:
        return self.d.dtype == object

    def as_float(self) -> np.ndarray:
        if self.is_rational:
            return np.array([[float(v) for v in row] for row in self.d])
        return self.d

    @classmethod
    def from_matrix(cls, d, labels: Sequence[str] | None = None,
                    meta: dict | None = None) -> "Causet":
        m = _as_matrix(d)
        if labels is None:
            labels = tuple(f"p{i}" for i in range(m.shape[0]))
        return cls(tuple(labels), m, boundary=_detect_boundary(m), meta=meta)

    def to_json(self) -> dict:
        out: dict = {"kind": "causet", "n": self.n, "labels": list(self.labels)}
        if self.is_rational:
            out["rational"] = True
            out["d"] = [[[v.numerator, v.denominator] for v in row]
                        for row in self.d]
        else:
            out["d"] = [[float(v) for v in row] for row in self.d]
        out["boundary"] = self.boundary
        if self.meta is not None:
            out["meta"] = self.meta
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "Causet":
        for key in ("n", "d"):
            if key not in obj:
                raise KeyError(f"causet JSON is missing field '{key}'")
        n = obj["n"]
        rows = obj["d"]
        if not isinstance(rows, list) or len(rows) != n:
            raise ValueError(f"field 'd' must be a list of {n} rows")
        if obj.get("rational"):
            m = np.empty((n, n), dtype=object)
            for i, row in enumerate(rows):
                if len(row) != n:
                    raise ValueError(f"field 'd' row {i} has length {len(row)}")
                for j, pair in enumerate(row):
                    m[i, j] = Fraction(pair[0], pair[1])
        else:
            for i, row in enumerate(rows):
                if len(row) != n:
                    raise ValueError(f"field 'd' row {i} has length {len(row)}")
            m = np.asarray(rows, dtype=float)
        labels = obj.get("labels")
        if labels is None:
            labels = [f"p{i}" for i in range(n)]
        if len(labels) != n:
            raise ValueError(f"field 'labels' has length {len(labels)}, expected {n}")
        boundary = obj.get("boundary")
        return cls(tuple(labels), m, boundary=boundary, meta=obj.get("meta"))


def load_causet(source: str | IO) -> Causet:
    """Read a causet from a JSON file path or an open file object."""
    if hasattr(source, "read"):
        obj = json.load(source)
    else:
        with open(source) as fh:
            obj = json.load(fh)
    return Causet.from_json(obj)


def dump_causet(c: Causet, target: str | IO) -> None:
    if hasattr(target, "write"):
        json.dump(c.to_json(), target)
    else:
        with open(target, "w") as fh:
            json.dump(c.to_json(), fh)


@dataclass(frozen=True)
class Violation:
    kind: str            # diagonal | reverse-triangle | distinguishing | multiple-boundary | negative-entry
    witness: tuple
    magnitude: float

    def to_json(self) -> dict:
        return {"kind": self.kind, "witness": list(self.witness),
                "magnitude": self.magnitude}


@dataclass(frozen=True)
class ValidationReport:
    valid: bool
    violations: tuple[Violation, ...]

    def kinds(self) -> set[str]:
        return {v.kind for v in self.violations}

    def to_json(self) -> dict:
        return {"valid": self.valid,
                "violations": [v.to_json() for v in self.violations]}


def _validate_exact(d: np.ndarray) -> list[Violation]:
    """Axiom checks in exact Fraction arithmetic (tol plays no role)."""
    n = d.shape[0]
    out: list[Violation] = []
    for i in range(n):
        for j in range(n):
            if d[i, j] < 0:
                out.append(Violation("negative-entry", (i, j), float(d[i, j])))
    for i in range(n):
        if d[i, i] > 0:
            out.append(Violation("diagonal", (i,), float(d[i, i])))
    for i in range(n):
        for j in range(n):
            if d[i, j] <= 0:
                continue
            for k in range(n):
                if d[j, k] > 0 and d[i, k] < d[i, j] + d[j, k]:
                    out.append(Violation(
                        "reverse-triangle", (i, j, k),
                        float(d[i, j] + d[j, k] - d[i, k])))
    for i in range(n):
        for j in range(i + 1, n):
            if all(d[i, z] == d[j, z] for z in range(n)) and \
               all(d[z, i] == d[z, j] for z in range(n)):
                out.append(Violation("distinguishing", (i, j), 0.0))
    zero = [i for i in range(n)
            if all(d[i, z] == 0 for z in range(n))
            and all(d[z, i] == 0 for z in range(n))]
    if len(zero) >= 2:
        out.append(Violation("multiple-boundary", tuple(zero), 0.0))
    return out


def validate(c: Causet | np.ndarray, tol: float = DEFAULT_TOL) -> ValidationReport:
    """Check the defining axioms and report every violation found.

    `tol` is the slack for the float checks: a reverse-triangle defect is
    flagged only beyond tol, rows/columns within tol count as identical,
    and |entry| <= tol counts as zero for boundary detection.  Exact
    payloads ignore tol.
    """
    d = c.d if isinstance(c, Causet) else _as_matrix(c)
    if d.dtype == object:
        vio = _validate_exact(d)
        return ValidationReport(not vio, tuple(vio))

    n = d.shape[0]
    out: list[Violation] = []
    with np.errstate(invalid="ignore"):
        bad = np.isnan(d) | (d < 0)
        for i, j in np.argwhere(bad):
            out.append(Violation("negative-entry", (int(i), int(j)),
                                 float(d[i, j])))
        for i in np.flatnonzero(np.diag(d) > tol):
            out.append(Violation("diagonal", (int(i),), float(d[i, i])))

        # NaN compares False everywhere below, matching naive float checks.
        for j in range(n):
            left = np.where(d[:, j] > 0, d[:, j], -np.inf)
            right = np.where(d[j, :] > 0, d[j, :], -np.inf)
            sums = left[:, None] + right[None, :]
            for i, k in np.argwhere(d < sums - tol):
                out.append(Violation("reverse-triangle", (int(i), j, int(k)),
                                     float(sums[i, k] - d[i, k])))

        if np.isnan(d).any():
            # cdist's chebyshev skips NaN coordinates; a NaN must instead
            # make the pair distinguishable, like the naive |gap| <= tol
            gaps = np.abs(d[:, None, :] - d[None, :, :])
            rowgap = np.where(np.isnan(gaps), np.inf, gaps).max(axis=2)
            gaps = np.abs(d.T[:, None, :] - d.T[None, :, :])
            colgap = np.where(np.isnan(gaps), np.inf, gaps).max(axis=2)
        else:
            rowgap = cdist(d, d, "chebyshev")
            colgap = cdist(d.T, d.T, "chebyshev")
        indist = (rowgap <= tol) & (colgap <= tol)
        for i, j in np.argwhere(np.triu(indist, 1)):
            out.append(Violation("distinguishing", (int(i), int(j)),
                                 float(max(rowgap[i, j], colgap[i, j]))))

        zero = (np.abs(d).max(axis=1) <= tol) & (np.abs(d).max(axis=0) <= tol)
        zi = np.flatnonzero(zero)
    if len(zi) >= 2:
        out.append(Violation("multiple-boundary", tuple(int(i) for i in zi), 0.0))

    # deterministic order regardless of the vectorized passes above
    order = {"negative-entry": 0, "diagonal": 1, "reverse-triangle": 2,
             "distinguishing": 3, "multiple-boundary": 4}
    out.sort(key=lambda v: (order[v.kind], v.witness))
    return ValidationReport(not out, tuple(out))


def reverse_triangle_slack(c: Causet) -> float | Fraction:
    """Minimum of d(i,k) - d(i,j) - d(j,k) over triples with d(i,j), d(j,k) > 0.

    Positive slack means every reverse-triangle inequality holds strictly;
    returns +inf when no triple applies.  Exact on rational payloads.
    """
    d = c.d
    n = c.n
    best: float | Fraction | None = None
    for i in range(n):
        for j in range(n):
            if d[i, j] <= 0:
                continue
            for k in range(n):
                if d[j, k] > 0:
                    s = d[i, k] - d[i, j] - d[j, k]
                    if best is None or s < best:
                        best = s
    return best if best is not None else float("inf")


def chronological_relation(c: Causet) -> set[tuple[int, int]]:
    """The relation I = {(i, j) : d(i, j) > 0}."""
    d = c.d
    if c.is_rational:
        return {(i, j) for i in range(c.n) for j in range(c.n) if d[i, j] > 0}
    return {(int(i), int(j)) for i, j in np.argwhere(d > 0)}


def diameter(c: Causet) -> float:
    return float(c.as_float().max()) if c.n else 0.0


def adjoin_boundary(c: Causet, label: str = "i0") -> Causet:
    """Append a point with an all-zero row and column."""
    if c.boundary is not None:
        raise ValueError("causet already contains a boundary point")
    n = c.n
    lab = label
    k = 1
    while lab in c.labels:
        lab = f"{label}_{k}"
        k += 1
    if c.is_rational:
        m = np.empty((n + 1, n + 1), dtype=object)
        m[:, :] = Fraction(0)
        m[:n, :n] = c.d
    else:
        m = np.zeros((n + 1, n + 1))
        m[:n, :n] = c.d
    return Causet(c.labels + (lab,), m, boundary=n, meta=c.meta)


def strip_boundary(c: Causet) -> Causet:
    if c.boundary is None:
        raise ValueError("causet has no boundary point to strip")
    keep = [i for i in range(c.n) if i != c.boundary]
    m = c.d[np.ix_(keep, keep)].copy()
    labels = tuple(c.labels[i] for i in keep)
    return Causet(labels, m, boundary=None, meta=c.meta)


def induced(c: Causet, indices: Sequence[int]) -> Causet:
    """Sub-causet on the given point indices (order preserved)."""
    idx = list(indices)
    if len(set(idx)) != len(idx):
        raise ValueError("indices must be distinct")
    m = c.d[np.ix_(idx, idx)].copy()
    labels = tuple(c.labels[i] for i in idx)
    return Causet(labels, m, boundary=_detect_boundary(m), meta=None)


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def distance_quotient(m: Causet | np.ndarray, tol: float = 0.0
                      ) -> tuple[Causet, list[int]]:
    """Merge points with identical distance rows and columns.

    Returns the quotient causet (representatives keep their labels, first
    occurrence wins) and the class map sending each input index to its
    output index.  With tol > 0, rows/columns within tol merge; closeness
    is propagated transitively.
    """
    if isinstance(m, Causet):
        c = m
        d = m.d
    else:
        c = Causet.from_matrix(m)
        d = c.d
    n = c.n

    uf = _UnionFind(n)
    if tol == 0.0:
        seen: dict = {}
        for i in range(n):
            if c.is_rational:
                key = (tuple(d[i, :]), tuple(d[:, i]))
            else:
                key = (d[i, :].tobytes(), d[:, i].tobytes())
            if key in seen:
                uf.union(seen[key], i)
            else:
                seen[key] = i
    else:
        df = c.as_float()
        rowgap = cdist(df, df, "chebyshev")
        colgap = cdist(df.T, df.T, "chebyshev")
        for i, j in np.argwhere(np.triu((rowgap <= tol) & (colgap <= tol), 1)):
            uf.union(int(i), int(j))

    reps: list[int] = []
    rep_pos: dict[int, int] = {}
    class_map: list[int] = []
    for i in range(n):
        r = uf.find(i)
        if r not in rep_pos:
            rep_pos[r] = len(reps)
            reps.append(r)
        class_map.append(rep_pos[r])

    q = d[np.ix_(reps, reps)].copy()
    labels = tuple(c.labels[r] for r in reps)
    out = Causet(labels, q, boundary=_detect_boundary(q), meta=c.meta)
    return out, class_map


def _profile_keys(d: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    return np.sort(d, axis=1), np.sort(d, axis=0).T


def find_isometries(a: Causet, b: Causet, tol: float = DEFAULT_TOL
                    ) -> list[tuple[int, ...]]:
    """All bijections a -> b preserving d in both directions within tol.

    Backtracking search; candidate images are pruned by comparing sorted
    row and column multisets, and points with the fewest candidates are
    assigned first.
    """
    if a.n != b.n:
        return []
    n = a.n
    da, db = a.as_float(), b.as_float()
    rka, cka = _profile_keys(da)
    rkb, ckb = _profile_keys(db)

    candidates: list[list[int]] = []
    for x in range(n):
        cand = [y for y in range(n)
                if np.abs(rka[x] - rkb[y]).max() <= tol
                and np.abs(cka[x] - ckb[y]).max() <= tol]
        if not cand:
            return []
        candidates.append(cand)

    order = sorted(range(n), key=lambda x: len(candidates[x]))
    mapping = [-1] * n
    used = [False] * n
    found: list[tuple[int, ...]] = []

    def backtrack(pos: int) -> None:
        if pos == n:
            found.append(tuple(mapping))
            return
        x = order[pos]
        for y in candidates[x]:
            if used[y]:
                continue
            ok = True
            for q in range(pos):
                xp = order[q]
                yp = mapping[xp]
                if abs(da[x, xp] - db[y, yp]) > tol or \
                   abs(da[xp, x] - db[yp, y]) > tol:
                    ok = False
                    break
            if ok:
                mapping[x] = y
                used[y] = True
                backtrack(pos + 1)
                used[y] = False
                mapping[x] = -1

    backtrack(0)
    return found
