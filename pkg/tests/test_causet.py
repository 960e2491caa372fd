"""Distance-matrix container, axiom validation, and causet surgery."""

import io
import json

import numpy as np
import pytest
from fractions import Fraction

from lorentzmet import (
    Causet,
    adjoin_boundary,
    chronological_relation,
    diameter,
    distance_quotient,
    dump_causet,
    find_isometries,
    induced,
    load_causet,
    reverse_triangle_slack,
    strip_boundary,
    validate,
)
from helpers import corrupt, oracle_violations, random_valid_matrix


CHAIN2 = [[0.0, 1.0], [0.0, 0.0]]
CHAIN3 = [[0.0, 1.0, 2.0], [0.0, 0.0, 1.0], [0.0, 0.0, 0.0]]


def test_from_matrix_defaults():
    c = Causet.from_matrix(CHAIN2)
    assert c.labels == ("p0", "p1")
    assert c.n == 2
    assert c.boundary is None
    assert not c.is_rational


def test_constructor_structural_errors():
    with pytest.raises(ValueError):
        Causet(("a",), np.zeros((2, 2)))
    with pytest.raises(ValueError):
        Causet(("a", "a"), np.zeros((2, 2)))
    with pytest.raises(ValueError):
        Causet(("a", "b"), np.zeros((2, 2)), boundary=5)
    with pytest.raises(ValueError):
        Causet.from_matrix(np.zeros((2, 3)))


def test_matrix_is_frozen():
    c = Causet.from_matrix(CHAIN2)
    with pytest.raises(ValueError):
        c.d[0, 1] = 9.0


def test_validate_accepts_chains():
    assert validate(Causet.from_matrix(CHAIN2)).valid
    assert validate(Causet.from_matrix(CHAIN3)).valid


@pytest.mark.parametrize("matrix,kind", [
    ([[0.0, -1.0], [0.0, 0.0]], "negative-entry"),
    ([[0.0, np.nan], [0.0, 0.0]], "negative-entry"),
    ([[0.5, 1.0], [0.0, 0.0]], "diagonal"),
    ([[0.0, 1.0, 1.5], [0.0, 0.0, 1.0], [0.0, 0.0, 0.0]], "reverse-triangle"),
    ([[0.0, 0.0], [0.0, 0.0]], "distinguishing"),
])
def test_validate_flags_each_kind(matrix, kind):
    report = validate(Causet.from_matrix(matrix))
    assert not report.valid
    assert kind in report.kinds()


def test_validate_multiple_boundary():
    d = np.zeros((4, 4))
    d[0, 1] = 1.0  # p2 and p3 both have all-zero profiles
    report = validate(Causet.from_matrix(d))
    kinds = report.kinds()
    assert "multiple-boundary" in kinds
    (mb,) = [v for v in report.violations if v.kind == "multiple-boundary"]
    assert mb.witness == (2, 3)


def test_validate_nan_row_is_not_indistinguishable():
    # two NaN-poisoned rows must not count as sharing a profile
    d = np.zeros((3, 3))
    d[0, 2] = np.nan
    d[1, 2] = np.nan
    kinds = validate(Causet.from_matrix(d)).kinds()
    assert "negative-entry" in kinds
    assert "distinguishing" not in kinds


def test_validate_tolerance_absorbs_small_defects():
    d = np.array(CHAIN3)
    d[0, 2] = 2.0 - 1e-12
    assert validate(Causet.from_matrix(d)).valid
    assert not validate(Causet.from_matrix(d), tol=1e-15).valid


def test_validate_violation_order_is_deterministic():
    d = np.array([[0.3, -1.0], [np.nan, 0.0]])
    report = validate(Causet.from_matrix(d))
    kinds = [v.kind for v in report.violations]
    assert kinds == sorted(kinds, key=["negative-entry", "diagonal",
                                       "reverse-triangle", "distinguishing",
                                       "multiple-boundary"].index)


def test_validate_exact_ignores_tol():
    half = Fraction(1, 2)
    m = np.empty((3, 3), dtype=object)
    m[:, :] = Fraction(0)
    m[0, 1] = m[1, 2] = half
    m[0, 2] = 2 * half  # equality: allowed
    assert validate(Causet.from_matrix(m)).valid
    m2 = m.copy()
    m2[0, 2] = 2 * half - Fraction(1, 10**30)
    report = validate(Causet.from_matrix(m2), tol=1.0)  # tol must not matter
    assert "reverse-triangle" in report.kinds()


def test_validator_agrees_with_naive_oracle():
    rng = np.random.default_rng(7)
    for _ in range(200):
        base = random_valid_matrix(rng, 5).as_float().copy()
        if rng.random() < 0.6:
            base = corrupt(rng, base)
            if rng.random() < 0.3:
                base = corrupt(rng, base)
        got = {(v.kind, v.witness) for v in validate(base).violations}
        assert got == oracle_violations(base)


def test_reverse_triangle_slack():
    assert reverse_triangle_slack(Causet.from_matrix(CHAIN3)) == 0.0
    assert reverse_triangle_slack(Causet.from_matrix(CHAIN2)) == float("inf")
    loose = [[0.0, 1.0, 2.5], [0.0, 0.0, 1.0], [0.0, 0.0, 0.0]]
    assert reverse_triangle_slack(Causet.from_matrix(loose)) == 0.5
    m = np.empty((3, 3), dtype=object)
    m[:, :] = Fraction(0)
    m[0, 1] = m[1, 2] = Fraction(1, 3)
    m[0, 2] = Fraction(3, 4)
    s = reverse_triangle_slack(Causet.from_matrix(m))
    assert s == Fraction(1, 12) and isinstance(s, Fraction)


def test_chronological_relation_and_diameter():
    c = Causet.from_matrix(CHAIN3)
    assert chronological_relation(c) == {(0, 1), (1, 2), (0, 2)}
    assert diameter(c) == 2.0


def test_adjoin_and_strip_boundary():
    c = Causet.from_matrix(CHAIN2)
    cb = adjoin_boundary(c)
    assert cb.boundary == 2
    assert cb.labels[-1] == "i0"
    assert validate(cb).valid
    with pytest.raises(ValueError):
        adjoin_boundary(cb)
    back = strip_boundary(cb)
    assert back.labels == c.labels
    assert np.array_equal(back.d, c.d)
    with pytest.raises(ValueError):
        strip_boundary(c)


def test_adjoin_boundary_avoids_label_collision():
    c = Causet(("i0", "x"), np.array(CHAIN2))
    cb = adjoin_boundary(c)
    assert cb.labels == ("i0", "x", "i0_1")


def test_distance_quotient_merges_duplicate_profiles():
    d = np.zeros((4, 4))
    d[0, 1] = d[0, 2] = 1.0
    d[1, 3] = d[2, 3] = 1.0
    d[0, 3] = 2.0
    q, cmap = distance_quotient(Causet.from_matrix(d))
    assert q.n == 3
    assert cmap == [0, 1, 1, 2]
    assert q.labels == ("p0", "p1", "p3")
    assert validate(q).valid


def test_distance_quotient_tol_merges_close_profiles():
    base = np.zeros((3, 3))
    base[0, 1] = 1.0
    base[0, 2] = 1.001
    q, cmap = distance_quotient(Causet.from_matrix(base), tol=2e-3)
    assert q.n == 2
    assert cmap == [0, 1, 1]


def test_induced_preserves_order():
    c = Causet.from_matrix(CHAIN3)
    sub = induced(c, [2, 0])
    assert sub.labels == ("p2", "p0")
    assert sub.d[1, 0] == 2.0
    with pytest.raises(ValueError):
        induced(c, [0, 0])


def test_find_isometries():
    c = Causet.from_matrix(CHAIN3)
    perm = [2, 0, 1]
    d2 = c.as_float()[np.ix_(perm, perm)]
    b = Causet.from_matrix(d2)
    isos = find_isometries(c, b)
    assert isos == [(1, 2, 0)]  # inverse of the permutation applied
    assert find_isometries(c, Causet.from_matrix(CHAIN2)) == []
    assert (0, 1, 2) in find_isometries(c, c)


def test_json_round_trip(tmp_path):
    c = Causet.from_matrix(CHAIN3, meta={"note": "chain"})
    path = tmp_path / "c.json"
    dump_causet(c, str(path))
    back = load_causet(str(path))
    assert back.labels == c.labels
    assert np.array_equal(back.as_float(), c.as_float())
    assert back.meta == {"note": "chain"}

    buf = io.StringIO()
    dump_causet(c, buf)
    buf.seek(0)
    again = load_causet(buf)
    assert np.array_equal(again.as_float(), c.as_float())


def test_json_round_trip_rational():
    m = np.empty((2, 2), dtype=object)
    m[:, :] = Fraction(0)
    m[0, 1] = Fraction(22, 7)
    c = Causet.from_matrix(m)
    blob = json.dumps(c.to_json())
    back = Causet.from_json(json.loads(blob))
    assert back.is_rational
    assert back.d[0, 1] == Fraction(22, 7)


def test_from_json_errors_name_the_field():
    with pytest.raises(KeyError, match="'d'"):
        Causet.from_json({"n": 2})
    with pytest.raises(ValueError, match="row 0"):
        Causet.from_json({"n": 2, "d": [[0.0], [0.0, 0.0]]})
    with pytest.raises(ValueError, match="'labels'"):
        Causet.from_json({"n": 1, "d": [[0.0]], "labels": ["a", "b"]})
