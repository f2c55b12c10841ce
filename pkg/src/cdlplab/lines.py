"""Lines over Z_p, intersection sets, recognized fractions, affine transport.

A line is a pair (a, b) standing for the linear polynomial a*x + b.  The
intersection set I(L) collects the x where two distinct lines of L agree;
I(L, C) collects the x where some line with a != 0 passes through a level
in C.  These are exactly the inputs on which collision-based attacks
succeed, so everything here is exact integer arithmetic.
"""

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import EmptySetError, ModulusMismatchError, NonInvertibleError
from .fields import mod_inverse, validate_prime_modulus

Line = tuple  # (a, b) with both residues mod p


def _canon_residues(p, values, what):
    out = sorted({v % p for v in values})
    if any(not isinstance(v, int) for v in values):
        raise TypeError(f"{what} must be integers")
    return tuple(out)


@dataclass(frozen=True)
class QuerySet:
    """A finite set of pairwise-distinct lines over a common modulus."""

    p: int
    lines: tuple

    def __post_init__(self):
        validate_prime_modulus(self.p)
        canon = sorted({(a % self.p, b % self.p) for a, b in self.lines})
        object.__setattr__(self, "lines", tuple(canon))

    def __len__(self):
        return len(self.lines)

    def __iter__(self):
        return iter(self.lines)


@dataclass(frozen=True)
class PointSet:
    """A finite set of distinct residues mod p."""

    p: int
    points: tuple

    def __post_init__(self):
        validate_prime_modulus(self.p)
        object.__setattr__(self, "points", _canon_residues(self.p, self.points, "points"))

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, x):
        return x in set(self.points)


@dataclass(frozen=True)
class ConstrainedSet:
    """A subset S of Z_p with provenance metadata.

    provenance is a JSON-serializable record {"kind": ..., "params": {...},
    "seed": ...} describing how the set was constructed.
    """

    p: int
    elements: tuple
    provenance: dict = field(default_factory=dict)

    def __post_init__(self):
        validate_prime_modulus(self.p)
        object.__setattr__(
            self, "elements", _canon_residues(self.p, self.elements, "elements")
        )

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def to_json(self) -> dict:
        prov = dict(self.provenance)
        return {
            "p": self.p,
            "elements": list(self.elements),
            "provenance": {
                "kind": prov.get("kind", "unknown"),
                "params": prov.get("params", {}),
                "seed": prov.get("seed"),
            },
        }

    @classmethod
    def from_json(cls, record: dict) -> "ConstrainedSet":
        return cls(
            p=record["p"],
            elements=tuple(record["elements"]),
            provenance=record.get("provenance", {}),
        )

    def save(self, path):
        with open(path, "w") as fh:
            json.dump(self.to_json(), fh, indent=2, sort_keys=True)
            fh.write("\n")

    @classmethod
    def load(cls, path) -> "ConstrainedSet":
        with open(path) as fh:
            return cls.from_json(json.load(fh))


def _require_same_modulus(*objs):
    moduli = {o.p for o in objs}
    if len(moduli) > 1:
        raise ModulusMismatchError(f"mixed moduli {sorted(moduli)}")


def intersection_set(L: QuerySet) -> PointSet:
    """I(L) = { x : two distinct lines of L agree at x }.

    Parallel pairs (equal a) contribute nothing; otherwise the pair meets
    at x = (b' - b) / (a - a').
    """
    p = L.p
    pts = set()
    lines = L.lines
    for i in range(len(lines)):
        a, b = lines[i]
        for j in range(i + 1, len(lines)):
            a2, b2 = lines[j]
            if a == a2:
                continue
            pts.add((b2 - b) * pow(a - a2, -1, p) % p)
    return PointSet(p, tuple(pts))


def intersection_set_bsgs(L: QuerySet, C: PointSet) -> PointSet:
    """I(L, C) = { (c - b)/a : (a, b) in L, a != 0, c in C }."""
    _require_same_modulus(L, C)
    p = L.p
    pts = set()
    for a, b in L.lines:
        if a == 0:
            continue
        inv = pow(a, -1, p)
        for c in C.points:
            pts.add((c - b) * inv % p)
    return PointSet(p, tuple(pts))


def recognized_fraction(S: ConstrainedSet, I: PointSet):
    """Return (|S ∩ I|, |S ∩ I| / |S|) with the fraction exact."""
    _require_same_modulus(S, I)
    if len(S) == 0:
        raise EmptySetError("recognized fraction of an empty set is undefined")
    hit = len(set(S.elements) & set(I.points))
    return hit, Fraction(hit, len(S))


def recognizes_fraction(S: ConstrainedSet, I: PointSet, alpha: Fraction) -> bool:
    """True when I covers at least an alpha-fraction of S (exact comparison)."""
    _, frac = recognized_fraction(S, I)
    return frac >= alpha


def affine_transport(u: int, v: int, S: ConstrainedSet, L: QuerySet):
    """Map S to u*S + v and L to the query set with the same coverage.

    The transported line set is L' = {(a/u, b - a*v/u)}, which satisfies
    I(L') = u*I(L) + v elementwise, so recognized counts are preserved.
    """
    _require_same_modulus(S, L)
    p = S.p
    u %= p
    v %= p
    if u == 0:
        raise NonInvertibleError("affine scale factor must be nonzero")
    uinv = mod_inverse(u, p)
    new_elements = tuple((u * s + v) % p for s in S.elements)
    new_lines = tuple((a * uinv % p, (b - a * v * uinv) % p) for a, b in L.lines)
    prov = dict(S.provenance)
    prov = {
        "kind": "affine-image",
        "params": {"u": u, "v": v, "base": prov.get("kind", "unknown")},
        "seed": prov.get("seed"),
    }
    return ConstrainedSet(p, new_elements, prov), QuerySet(p, new_lines)
