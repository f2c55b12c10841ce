"""Constructors for the studied set families and their hardness certificates.

Constructors produce ConstrainedSet values with provenance; checkers
confirm the combinatorial hypotheses (weak Sidon, distinct k-wise sums,
nonvanishing 2x2 determinants, twelve-point determinant avoidance) either
exhaustively or by randomized sampling, and report counterexamples that
re-verify standalone.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from typing import NamedTuple

from .errors import EmptySetError, TooLargeError
from .fields import (
    build_extension_field,
    seeded_rng,
    ext_discrete_log,
    integer_nth_root,
    largest_prime_below,
    validate_prime_modulus,
)
from .lines import ConstrainedSet
from .menelaus import TwelvePoints, twelve_det

CHECKER_CAP = 10**6


@dataclass(frozen=True)
class CertificateReport:
    """Outcome of a certificate checker.

    mode is "exhaustive" or "randomized"; a randomized pass never claims
    full verification, only that no violation surfaced in `trials` tries.
    A False verdict carries a counterexample that re-checks standalone.
    """

    kind: str
    verified: bool
    mode: str
    trials: int = 0
    counterexample: tuple | None = None
    k: int | None = None

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "verified": self.verified,
            "mode": self.mode,
            "trials": self.trials,
            "counterexample": self.counterexample,
            "k": self.k,
        }


# ---------------------------------------------------------------------------
# Constructors
# ---------------------------------------------------------------------------

def random_subset(p: int, size: int, seed: int = 0) -> ConstrainedSet:
    """Uniform subset of Z_p of the given size, deterministic per seed."""
    validate_prime_modulus(p)
    if size > p:
        raise TooLargeError(f"cannot draw {size} distinct residues mod {p}")
    if size < 1:
        raise EmptySetError("empty sets are disallowed")
    rng = seeded_rng("random-subset", seed)
    elements = rng.sample(range(p), size)
    return ConstrainedSet(
        p, tuple(elements), {"kind": "random", "params": {"size": size}, "seed": seed}
    )


def sample_snk(p: int, n: int, k: int, key=None, seed: int = 0) -> ConstrainedSet:
    """Evaluate a random degree-(k-1) polynomial at 1..n.

    key = (a_0, ..., a_{k-1}) are the coefficients of
    f(x) = a_{k-1} x^{k-1} + ... + a_0; when omitted the key is drawn
    uniformly from Z_p^k with the seed.  Duplicate values collapse; the
    provenance records whether the full size n was reached.
    """
    validate_prime_modulus(p)
    if n < 1 or k < 1 or n >= p:
        raise ValueError("need 1 <= n < p and k >= 1")
    if key is None:
        rng = seeded_rng("snk-key", seed)
        key = tuple(rng.randrange(p) for _ in range(k))
    else:
        key = tuple(c % p for c in key)
        if len(key) != k:
            raise ValueError(f"key must have exactly {k} coefficients")
    values = set()
    for i in range(1, n + 1):
        acc = 0
        for a in reversed(key):  # Horner, high coefficient first
            acc = (acc * i + a) % p
        values.add(acc)
    return ConstrainedSet(
        p,
        tuple(values),
        {
            "kind": "snk",
            "params": {"n": n, "k": k, "key": list(key), "full_size": len(values) == n},
            "seed": seed,
        },
    )


def snk_event_bounds(p: int, n: int, k: int, d: int):
    """Exact rational event bounds (duplicate bound, polynomial-zero bound).

    Duplicates: Pr[|S| != n] < n^2/p.  A degree-d polynomial relation among
    k distinct members: probability < n^k * d / p.
    """
    validate_prime_modulus(p)
    if d < 1:
        raise ValueError("degree must be positive")
    return Fraction(n**2, p), Fraction(n**k * d, p)


class BkSet(NamedTuple):
    """A B_k set living in the integers modulo q^k - 1."""

    elements: tuple
    modulus: int
    q: int
    k: int


def bose_chowla_set(q: int, k: int) -> BkSet:
    """The q discrete logarithms of theta + c, c in GF(q), inside Z_{q^k-1}.

    theta generates the multiplicative group of GF(q^k), so sums of k
    distinct members are pairwise distinct modulo q^k - 1.
    """
    field = build_extension_field(q, k)
    targets = {field.add(field.theta, field.const(c)): c for c in range(q)}
    logs = {}
    power = field.one()
    for e in range(field.order - 1):
        c = targets.get(power)
        if c is not None:
            logs[c] = e
            if len(logs) == q:
                break
        power = field.mul(power, field.theta)
    assert len(logs) == q, "theta + c must all be nonzero and reachable"
    return BkSet(tuple(sorted(logs.values())), field.order - 1, q, k)


def embed_bk_mod_p(p: int, k: int) -> ConstrainedSet:
    """Restrict a Bose-Chowla set to one short interval and reduce into Z_p.

    q is the largest prime below floor(p^(1/k)) + 1.  Splitting [0, q^k)
    into k intervals of length ceil(q^k / k), some interval holds at least
    ceil(q/k) of the q elements; translated to start at zero, their k-wise
    sums stay below p, hence remain distinct in Z_p.
    """
    validate_prime_modulus(p)
    if k < 2:
        raise ValueError("need k >= 2")
    root = integer_nth_root(p, k)
    if root < 3:
        raise ValueError(f"p^(1/k) must exceed 3, got floor root {root}")
    q = largest_prime_below(root + 1)
    bk = bose_chowla_set(q, k)
    span = -((-(q**k)) // k)  # ceil(q^k / k)
    threshold = -((-q) // k)  # ceil(q / k)
    for j in range(k):
        lo, hi = j * span, (j + 1) * span
        chunk = [e for e in bk.elements if lo <= e < hi]
        if len(chunk) >= threshold:
            elements = tuple(e - lo for e in chunk)
            assert all(0 <= e < p for e in elements)
            return ConstrainedSet(
                p,
                elements,
                {
                    "kind": "bose-chowla",
                    "params": {"q": q, "k": k, "interval": j},
                    "seed": None,
                },
            )
    raise AssertionError("pigeonhole guarantees a dense interval")


def small_squares_set(p: int) -> ConstrainedSet:
    """{ x^2 : 1 <= x <= floor(sqrt(p)) }; plain integer squares below p."""
    validate_prime_modulus(p)
    if p < 5:
        raise ValueError("need p >= 5")
    root = math.isqrt(p)
    return ConstrainedSet(
        p,
        tuple(x * x for x in range(1, root + 1)),
        {"kind": "squares", "params": {}, "seed": None},
    )


def hamming_weight_set(n_bits: int, t: int, p: int) -> ConstrainedSet:
    """All n_bits-bit integers with exactly t ones, as residues mod p."""
    validate_prime_modulus(p)
    if t > n_bits or t < 0:
        raise ValueError("need 0 <= t <= n_bits")
    if math.comb(n_bits, t) > CHECKER_CAP:
        raise TooLargeError(f"C({n_bits},{t}) exceeds the cap {CHECKER_CAP}")
    if p <= 2**n_bits:
        raise ValueError("modulus must exceed 2^n_bits")
    elements = tuple(
        sum(1 << pos for pos in positions)
        for positions in combinations(range(n_bits), t)
    )
    return ConstrainedSet(
        p,
        elements,
        {"kind": "hamming", "params": {"bits": n_bits, "t": t}, "seed": None},
    )


def greedy_weak_sidon(p: int, target_size: int) -> ConstrainedSet:
    """Greedy strong-Sidon scan over {0, ..., floor(p/2)}.

    Adds x whenever all pairwise sums (doubles included) stay distinct as
    integers; a strong Sidon subset of the half interval is weak Sidon in
    Z_p.  If the scan exhausts before reaching target_size the partial set
    is returned with provenance flag target_reached = False.
    """
    validate_prime_modulus(p)
    if target_size < 2:
        raise ValueError("target size must be at least 2")
    chosen: list[int] = []
    sums = set()
    for x in range(p // 2 + 1):
        new_sums = {x + y for y in chosen}
        new_sums.add(2 * x)
        if sums & new_sums or len(new_sums) != len(chosen) + 1:
            continue
        chosen.append(x)
        sums |= new_sums
        if len(chosen) == target_size:
            break
    return ConstrainedSet(
        p,
        tuple(chosen),
        {
            "kind": "greedy-sidon",
            "params": {"target": target_size, "target_reached": len(chosen) == target_size},
            "seed": None,
        },
    )


# ---------------------------------------------------------------------------
# Certificate checkers
# ---------------------------------------------------------------------------

def check_weak_sidon(S: ConstrainedSet) -> CertificateReport:
    """All pairwise sums of distinct elements must be distinct mod p."""
    if len(S) < 2:
        raise ValueError("need at least two elements")
    p = S.p
    seen: dict[int, tuple] = {}
    for pair in combinations(S.elements, 2):
        total = (pair[0] + pair[1]) % p
        if total in seen:
            return CertificateReport(
                "weak-sidon", False, "exhaustive", counterexample=(seen[total], pair)
            )
        seen[total] = pair
    return CertificateReport("weak-sidon", True, "exhaustive")


def check_bk_sums(S: ConstrainedSet, k: int) -> CertificateReport:
    """Sums over k-element subsets must be pairwise distinct mod p.

    Summands are distinct elements and permutations are identified, i.e.
    the comparison runs over unordered k-subsets.
    """
    if k < 2:
        raise ValueError("need k >= 2")
    if math.comb(len(S), k) > CHECKER_CAP:
        raise TooLargeError(f"C({len(S)},{k}) exceeds the cap {CHECKER_CAP}")
    p = S.p
    seen: dict[int, tuple] = {}
    for subset in combinations(S.elements, k):
        total = sum(subset) % p
        if total in seen:
            return CertificateReport(
                "bk", False, "exhaustive", counterexample=(seen[total], subset), k=k
            )
        seen[total] = subset
    return CertificateReport("bk", True, "exhaustive", k=k)


def det2x2_value(tup, p: int) -> int:
    """det [[x1-y1, x2-y2], [y1-z1, y2-z2]] for tup = (x1,x2,y1,y2,z1,z2)."""
    x1, x2, y1, y2, z1, z2 = tup
    return ((x1 - y1) * (y2 - z2) - (x2 - y2) * (y1 - z1)) % p


def check_det2x2(S: ConstrainedSet, mode: str = "exhaustive", trials: int = 10000, seed: int = 0) -> CertificateReport:
    """No six pairwise-distinct elements may zero the 2x2 difference det.

    Exhaustive mode walks every ordered 6-tuple of distinct elements and
    needs |S| <= 12; randomized mode samples `trials` tuples.
    """
    p = S.p
    if mode == "exhaustive":
        if len(S) > 12:
            raise TooLargeError("exhaustive 6-tuple scan capped at |S| <= 12")
        if len(S) >= 6:
            for tup in permutations(S.elements, 6):
                if det2x2_value(tup, p) == 0:
                    return CertificateReport("det2x2", False, "exhaustive", counterexample=tup)
        return CertificateReport("det2x2", True, "exhaustive")
    rng = seeded_rng("det2x2", seed)
    if len(S) < 6:
        return CertificateReport("det2x2", True, "randomized", trials=0)
    for t in range(trials):
        tup = tuple(rng.sample(S.elements, 6))
        if det2x2_value(tup, p) == 0:
            return CertificateReport("det2x2", False, "randomized", trials=t + 1, counterexample=tup)
    return CertificateReport("det2x2", True, "randomized", trials=trials)


def twelve_value(xs, ys, zs, p: int) -> int:
    return twelve_det(TwelvePoints(p, tuple(xs), tuple(ys), tuple(zs)))


def _triple_partitions(items):
    """Partitions of 12 items into 4 unordered triples, rows led by minima."""
    if not items:
        yield []
        return
    head = items[0]
    rest = items[1:]
    for pair in combinations(rest, 2):
        triple = (head,) + pair
        remaining = tuple(x for x in rest if x not in pair)
        for tail in _triple_partitions(remaining):
            yield [triple] + tail


_ROLE_ORDERS = tuple(permutations(range(3)))


def check_twelve(S: ConstrainedSet, mode: str = "randomized", trials: int = 10000, seed: int = 0) -> CertificateReport:
    """No twelve pairwise-distinct elements may zero the twelve-point det.

    Exhaustive mode (capped at |S| <= 13) walks all assignments of
    12-subsets to the grid roles, quotienting the row-permutation and
    letter-role symmetries of the determinant; randomized mode samples.
    Sets with fewer than 12 elements verify vacuously.
    """
    p = S.p
    if len(S) < 12:
        return CertificateReport("twelve", True, mode, trials=0)
    if mode == "exhaustive":
        if len(S) > 13:
            raise TooLargeError("exhaustive 12-tuple scan capped at |S| <= 13")
        for subset in combinations(S.elements, 12):
            for rows in _triple_partitions(subset):
                # Row 1 keeps its sorted order: the diagonal letter-role
                # action is quotiented by pinning it.
                r1 = rows[0]
                for o2 in _ROLE_ORDERS:
                    r2 = tuple(rows[1][i] for i in o2)
                    for o3 in _ROLE_ORDERS:
                        r3 = tuple(rows[2][i] for i in o3)
                        for o4 in _ROLE_ORDERS:
                            r4 = tuple(rows[3][i] for i in o4)
                            xs = (r1[0], r2[0], r3[0], r4[0])
                            ys = (r1[1], r2[1], r3[1], r4[1])
                            zs = (r1[2], r2[2], r3[2], r4[2])
                            if twelve_value(xs, ys, zs, p) == 0:
                                return CertificateReport(
                                    "twelve",
                                    False,
                                    "exhaustive",
                                    counterexample=(xs, ys, zs),
                                )
        return CertificateReport("twelve", True, "exhaustive")
    rng = seeded_rng("twelve", seed)
    for t in range(trials):
        draw = rng.sample(S.elements, 12)
        xs, ys, zs = tuple(draw[0:4]), tuple(draw[4:8]), tuple(draw[8:12])
        if twelve_value(xs, ys, zs, p) == 0:
            return CertificateReport(
                "twelve", False, "randomized", trials=t + 1, counterexample=(xs, ys, zs)
            )
    return CertificateReport("twelve", True, "randomized", trials=trials)


def counterexample_is_violation(report: CertificateReport, p: int) -> bool:
    """Re-evaluate a checker counterexample standalone."""
    if report.counterexample is None:
        return False
    ce = report.counterexample
    if report.kind == "weak-sidon":
        (a, b), (c, d) = ce
        return (a + b) % p == (c + d) % p and {a, b} != {c, d}
    if report.kind == "bk":
        s1, s2 = ce
        return sum(s1) % p == sum(s2) % p and set(s1) != set(s2)
    if report.kind == "det2x2":
        return len(set(ce)) == 6 and det2x2_value(ce, p) == 0
    if report.kind == "twelve":
        xs, ys, zs = ce
        flat = (*xs, *ys, *zs)
        return len(set(flat)) == 12 and twelve_value(xs, ys, zs, p) == 0
    raise ValueError(f"unknown certificate kind {report.kind!r}")
