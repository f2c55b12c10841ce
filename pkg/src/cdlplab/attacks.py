"""Working constrained-DLP attacks against the encoded-group oracle.

Every attack is a generic algorithm: it touches the group only through
oracle queries, recovers candidate exponents from label collisions, and
reports exact query counts (the instance's op-counter delta).  Successes
are judged by the oracle itself, so false positives are impossible.
"""

import math
from dataclasses import dataclass
from itertools import combinations

from .fields import seeded_rng
from .generic_group import DlpInstance
from .lines import ConstrainedSet, PointSet, QuerySet, intersection_set


@dataclass(frozen=True)
class AttackOutcome:
    method: str
    recovered: int | None
    queries: int
    success: bool
    rounds: int | None = None

    def to_json(self) -> dict:
        return {
            "method": self.method,
            "recovered": self.recovered,
            "queries": self.queries,
            "success": self.success,
            "rounds": self.rounds,
        }


def bsgs_interval_attack(inst: DlpInstance, lo: int, hi: int) -> AttackOutcome:
    """Baby-step giant-step over the promise interval [lo, hi).

    lam = ceil(sqrt(hi - lo)); baby steps sigma(g^(x-lo-i)) meet giant
    steps sigma(g^(lam*j)) when x - lo = lam*j + i, using at most 2*lam
    queries.  A secret outside the promise yields a NotFound outcome.
    """
    if not 0 <= lo < hi <= inst.p:
        raise ValueError("need 0 <= lo < hi <= p")
    p = inst.p
    start = inst.op_counter
    width = hi - lo
    lam = math.isqrt(width - 1) + 1 if width > 1 else 1
    baby = {}
    for i in range(lam):
        label = inst.query(inst.sigma_gx, inst.sigma_g, 1, (-(lo + i)) % p)
        baby[label] = i
    recovered = None
    for j in range(-(-width // lam)):
        label = inst.query(inst.sigma_g, inst.sigma_g, lam * j % p, 0)
        i = baby.get(label)
        if i is not None:
            candidate = lo + i + lam * j
            if candidate < hi:  # collisions past the promise are rejected
                recovered = candidate % p
            break
    return AttackOutcome(
        "bsgs",
        recovered,
        inst.op_counter - start,
        inst.verify_answer(recovered),
    )


def difference_cover_attack(
    inst: DlpInstance, X: PointSet, Y: PointSet, S: ConstrainedSet
) -> AttackOutcome:
    """Slope-one attack from a difference cover: succeeds when x in X - Y.

    Queries sigma(g^(x+y)) for y in Y and sigma(g^x_i) for x_i in X; a
    collision at (i, j) yields x = x_i - y_j.  At most |X| + |Y| queries.
    """
    p = inst.p
    start = inst.op_counter
    shifted = {}
    for y in Y.points:
        label = inst.query(inst.sigma_gx, inst.sigma_g, 1, y)
        shifted[label] = y
    recovered = None
    for xv in X.points:
        label = inst.query(inst.sigma_g, inst.sigma_g, xv, 0)
        y = shifted.get(label)
        if y is not None:
            recovered = (xv - y) % p
            break
    return AttackOutcome(
        "diff-cover",
        recovered,
        inst.op_counter - start,
        inst.verify_answer(recovered),
    )


def queryset_attack(
    inst: DlpInstance,
    L: QuerySet,
    S: ConstrainedSet,
    guess_rule: str = "uniform",
    seed: int = 0,
) -> AttackOutcome:
    """Query sigma(g^(a*x+b)) for every line of L; collisions reveal x.

    Exactly |L| queries are issued.  A label collision between lines
    (a, b) != (a', b') forces (b'-b)/(a-a') = x.  Without a collision the
    attack guesses from S minus the intersection set of L, uniformly with
    the seed, or deterministically the least element when
    guess_rule="least".
    """
    if guess_rule not in ("uniform", "least"):
        raise ValueError("guess_rule must be 'uniform' or 'least'")
    p = inst.p
    start = inst.op_counter
    seen = {}
    recovered = None
    for a, b in L.lines:
        label = inst.query(inst.sigma_gx, inst.sigma_g, a, b)
        if recovered is None and label in seen:
            a0, b0 = seen[label]
            # equal slopes with different intercepts can never collide
            recovered = (b0 - b) * pow(a - a0, -1, p) % p
        seen[label] = (a, b)
    if recovered is None:
        covered = set(intersection_set(L).points) if len(L) else set()
        pool = sorted(set(S.elements) - covered) or sorted(S.elements)
        if guess_rule == "least":
            recovered = pool[0]
        else:
            recovered = seeded_rng("queryset-guess", seed).choice(pool)
    return AttackOutcome(
        "queryset",
        recovered,
        inst.op_counter - start,
        inst.verify_answer(recovered),
    )


def expected_low_weight_rounds(n_bits: int, t: int) -> int:
    """Expected Las Vegas rounds until the secret splits evenly."""
    half = n_bits // 2
    t1 = (t + 1) // 2
    good = math.comb(t, t1) * math.comb(n_bits - t, half - t1)
    return max(1, round(math.comb(n_bits, half) / good))


def low_weight_attack(
    inst: DlpInstance, n_bits: int, t: int, seed: int = 0, round_cap: int | None = None
) -> AttackOutcome:
    """Randomized meet-in-the-middle for exponents of Hamming weight t.

    Each round draws a uniform balanced partition of the n_bits positions;
    giant steps enumerate sigma(g^(x-u)) over weight-ceil(t/2) values u on
    one half, baby steps sigma(g^v) over weight-floor(t/2) values v on the
    other.  A collision gives x = u + v.  Rounds repeat with fresh
    partitions until the split matches, so success is Las Vegas; a wrong
    weight promise exhausts the round cap and reports NotFound.
    """
    if n_bits % 2:
        raise ValueError("n_bits must be even for the balanced split")
    if not 0 <= t <= n_bits:
        raise ValueError("need 0 <= t <= n_bits")
    if 2**n_bits >= inst.p:
        raise ValueError("promise interval must fit below p")
    start = inst.op_counter
    if t == 0:
        return AttackOutcome("low-weight", 0, 0, inst.verify_answer(0), rounds=0)
    if round_cap is None:
        round_cap = 64 * expected_low_weight_rounds(n_bits, t)
    rng = seeded_rng("low-weight", seed)
    half = n_bits // 2
    t1 = (t + 1) // 2
    t2 = t // 2
    p = inst.p
    positions = list(range(n_bits))
    for rounds in range(1, round_cap + 1):
        first = rng.sample(positions, half)
        second = [pos for pos in positions if pos not in set(first)]
        giant = {}
        for bits in combinations(first, t1):
            u = sum(1 << b for b in bits)
            label = inst.query(inst.sigma_gx, inst.sigma_g, 1, -u % p)
            giant[label] = u
        recovered = None
        for bits in combinations(second, t2):
            v = sum(1 << b for b in bits)
            label = inst.query(inst.sigma_g, inst.sigma_g, v, 0)
            u = giant.get(label)
            if u is not None:
                recovered = (u + v) % p
                break
        if recovered is not None and inst.verify_answer(recovered):
            return AttackOutcome(
                "low-weight", recovered, inst.op_counter - start, True, rounds=rounds
            )
    return AttackOutcome(
        "low-weight", None, inst.op_counter - start, False, rounds=round_cap
    )
