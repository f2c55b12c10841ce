import json
from fractions import Fraction

import pytest

from cdlplab.errors import EmptySetError, ModulusMismatchError, NonInvertibleError
from cdlplab.fields import seeded_rng
from cdlplab.lines import (
    ConstrainedSet,
    PointSet,
    QuerySet,
    affine_transport,
    intersection_set,
    intersection_set_bsgs,
    recognized_fraction,
)


def brute_intersection(L):
    """Scan every x, evaluate every line pair."""
    pts = set()
    lines = list(L.lines)
    for x in range(L.p):
        for i in range(len(lines)):
            for j in range(i + 1, len(lines)):
                a, b = lines[i]
                a2, b2 = lines[j]
                if (a * x + b) % L.p == (a2 * x + b2) % L.p:
                    pts.add(x)
    return pts


def test_intersection_examples():
    assert intersection_set(QuerySet(11, ((0, 0), (0, 1)))).points == ()
    assert intersection_set(QuerySet(7, ((2, 1), (3, 6)))).points == (2,)
    assert intersection_set(QuerySet(11, ((0, 0), (0, 1), (4, 3)))).points == (2, 5)


def test_intersection_matches_brute_force():
    for p in (11, 101):
        rng = seeded_rng("brute", p)
        for _ in range(20):
            lines = {(rng.randrange(p), rng.randrange(p)) for _ in range(rng.randrange(2, 7))}
            L = QuerySet(p, tuple(lines))
            assert set(intersection_set(L).points) == brute_intersection(L)


def test_intersection_size_bound():
    rng = seeded_rng("size-bound")
    for _ in range(50):
        p = rng.choice((11, 31, 101))
        lines = {(rng.randrange(p), rng.randrange(p)) for _ in range(rng.randrange(2, 9))}
        L = QuerySet(p, tuple(lines))
        assert len(intersection_set(L)) < len(L) ** 2 / 2


def test_intersection_bsgs_examples():
    assert intersection_set_bsgs(QuerySet(11, ((0, 5),)), PointSet(11, (1, 2))).points == ()
    assert intersection_set_bsgs(QuerySet(7, ((1, 0),)), PointSet(7, (3,))).points == (3,)
    assert intersection_set_bsgs(QuerySet(11, ((2, 1),)), PointSet(11, (0, 1))).points == (0, 5)


def test_recognized_fraction():
    S = ConstrainedSet(11, (2, 5))
    assert recognized_fraction(S, PointSet(11, (2, 5, 9))) == (2, Fraction(1))
    assert recognized_fraction(S, PointSet(11, ())) == (0, Fraction(0))
    S3 = ConstrainedSet(11, (1, 2, 3))
    assert recognized_fraction(S3, PointSet(11, (3, 4))) == (1, Fraction(1, 3))


def test_recognized_fraction_errors():
    with pytest.raises(EmptySetError):
        recognized_fraction(ConstrainedSet(11, ()), PointSet(11, (1,)))
    with pytest.raises(ModulusMismatchError):
        recognized_fraction(ConstrainedSet(11, (1,)), PointSet(7, (1,)))


def test_affine_transport():
    S = ConstrainedSet(7, (1, 3))
    L = QuerySet(7, ((2, 1), (0, 0)))
    S1, L1 = affine_transport(1, 0, S, L)
    assert S1.elements == S.elements and L1.lines == L.lines
    S2, _ = affine_transport(2, 1, S, L)
    assert S2.elements == (0, 3)
    with pytest.raises(NonInvertibleError):
        affine_transport(0, 1, S, L)


def test_affine_transport_preserves_counts():
    rng = seeded_rng("transport")
    p = 11
    for _ in range(30):
        S = ConstrainedSet(p, tuple({rng.randrange(p) for _ in range(4)}))
        L = QuerySet(p, tuple({(rng.randrange(p), rng.randrange(p)) for _ in range(4)}))
        u, v = rng.randrange(1, p), rng.randrange(p)
        S2, L2 = affine_transport(u, v, S, L)
        c1, _ = recognized_fraction(S, intersection_set(L))
        c2, _ = recognized_fraction(S2, intersection_set(L2))
        assert c1 == c2
        # I(L') = u*I(L) + v elementwise
        assert set(intersection_set(L2).points) == {
            (u * x + v) % p for x in intersection_set(L).points
        }


def test_constrained_set_canonicalization():
    S = ConstrainedSet(11, (5, 2, 5, 13))
    assert S.elements == (2, 5)  # 13 reduces to 2


def test_constrained_set_json_roundtrip(tmp_path):
    S = ConstrainedSet(101, (1, 4, 9), {"kind": "squares", "params": {}, "seed": None})
    path = tmp_path / "s.json"
    S.save(path)
    record = json.loads(path.read_text())
    assert set(record) == {"p", "elements", "provenance"}
    assert set(record["provenance"]) == {"kind", "params", "seed"}
    assert ConstrainedSet.load(path) == S
