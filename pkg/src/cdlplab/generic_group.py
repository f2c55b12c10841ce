"""The generic group model: encoded-group oracle and the simulator game.

A group of prime order p is exposed only through opaque 128-bit labels and
an operation oracle: query(h1, h2, alpha, beta) returns the label of
e1^alpha * e2^beta.  Adversaries are callbacks receiving a GameView with
(p, sigma_g, sigma_gx, query); the same callback runs unchanged against
the real oracle or the lazy-polynomial simulator.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import BudgetExceededError, UnknownEncodingError
from .fields import seeded_rng, validate_prime_modulus
from .lines import ConstrainedSet


class _LabelSource:
    """Seeded stream of distinct 128-bit labels (re-draw on collision)."""

    def __init__(self, seed: int):
        self._rng = seeded_rng("labels", seed)
        self._used = set()

    def fresh(self) -> int:
        while True:
            label = self._rng.getrandbits(128)
            if label not in self._used:
                self._used.add(label)
                return label


class DlpInstance:
    """A real encoded-group oracle holding a hidden exponent.

    Labels are allocated lazily from the seeded stream; injectivity holds
    across the instance's lifetime.  The secret is private to the oracle:
    adversary code must interact through query()/verify_answer() only.
    """

    def __init__(self, p: int, secret: int, seed: int):
        validate_prime_modulus(p)
        self.p = p
        self._x = secret % p
        self._labels = _LabelSource(seed)
        self._enc: dict[int, int] = {}
        self._dec: dict[int, int] = {}
        self.op_counter = 0
        self.sigma_g = self._encode(1)
        self.sigma_gx = self._encode(self._x)

    def _encode(self, exponent: int) -> int:
        label = self._enc.get(exponent)
        if label is None:
            label = self._labels.fresh()
            self._enc[exponent] = label
            self._dec[label] = exponent
        return label

    def query(self, h1: int, h2: int, alpha: int, beta: int) -> int:
        """sigma(e1^alpha * e2^beta); counts one oracle operation."""
        try:
            e1 = self._dec[h1]
            e2 = self._dec[h2]
        except KeyError as exc:
            raise UnknownEncodingError(f"label {exc.args[0]} was never issued") from exc
        self.op_counter += 1
        return self._encode((alpha * e1 + beta * e2) % self.p)

    def verify_answer(self, y) -> bool:
        """Judge an answer against the hidden exponent (not an oracle query)."""
        return y is not None and y % self.p == self._x


def new_instance(p: int, secret=None, seed: int = 0, sample_set: ConstrainedSet | None = None) -> DlpInstance:
    """Fresh oracle instance; secret drawn uniformly (or from sample_set) if omitted."""
    if secret is None:
        rng = seeded_rng("dlp-secret", seed)
        if sample_set is not None:
            secret = rng.choice(sample_set.elements)
        else:
            secret = rng.randrange(p)
    elif not 0 <= secret < p:
        raise ValueError("secret must lie in [0, p)")
    return DlpInstance(p, secret, seed)


def oracle_query(inst: DlpInstance, h1: int, h2: int, alpha: int, beta: int) -> int:
    return inst.query(h1, h2, alpha, beta)


@dataclass
class GameView:
    """What an adversary sees: the instance data and a budgeted query function."""

    p: int
    sigma_g: int
    sigma_gx: int
    query: callable


@dataclass
class Transcript:
    """Simulator state after a game: labels, linear polynomials, queries.

    polys[i] = (a_i, b_i) codes the polynomial a_i*x + b_i; the first two
    entries are (0, 1) and (1, 0) for the constants 1 and x.  queries are
    (index1, index2, alpha, beta, result_index) tuples.
    """

    p: int
    encodings: list = field(default_factory=list)
    polys: list = field(default_factory=list)
    queries: list = field(default_factory=list)
    x_star: int | None = None
    simulator_failed: bool = False

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "polys": [list(ab) for ab in self.polys],
            "queries": [list(q) for q in self.queries],
            "x_star": self.x_star,
            "simulator_failed": self.simulator_failed,
        }


@dataclass
class AdversaryResult:
    answer: int
    queries_used: int
    success: bool

    def to_json(self) -> dict:
        return {
            "answer": self.answer,
            "queries_used": self.queries_used,
            "success": self.success,
        }


def simulate_game(adversary, p: int, m: int, sample_set: ConstrainedSet | None = None, seed: int = 0):
    """Run the lazy-polynomial simulator game against an adversary.

    Each query combines polynomials linearly; a collision in the polynomial
    list returns the existing label, otherwise a fresh label is appended.
    After the adversary answers, x* is drawn (uniform over Z_p, or over
    sample_set) and the game records simulator failure iff two distinct
    polynomials collide at x*, success iff answer == x*.
    """
    validate_prime_modulus(p)
    if m < 0:
        raise ValueError("budget must be nonnegative")
    labels = _LabelSource(seed)
    sigma_g = labels.fresh()
    sigma_gx = labels.fresh()
    transcript = Transcript(p, encodings=[sigma_g, sigma_gx], polys=[(0, 1), (1, 0)])
    index_of_label = {sigma_g: 0, sigma_gx: 1}
    index_of_poly = {(0, 1): 0, (1, 0): 1}
    used = 0

    def query(h1, h2, alpha, beta):
        nonlocal used
        if used >= m:
            raise BudgetExceededError(f"budget of {m} queries exhausted")
        try:
            i = index_of_label[h1]
            j = index_of_label[h2]
        except KeyError as exc:
            raise UnknownEncodingError(f"label {exc.args[0]} was never issued") from exc
        used += 1
        polys = transcript.polys
        a = (alpha * polys[i][0] + beta * polys[j][0]) % p
        b = (alpha * polys[i][1] + beta * polys[j][1]) % p
        k = index_of_poly.get((a, b))
        if k is None:
            k = len(polys)
            polys.append((a, b))
            label = labels.fresh()
            transcript.encodings.append(label)
            index_of_label[label] = k
            index_of_poly[(a, b)] = k
        else:
            label = transcript.encodings[k]
        transcript.queries.append((i, j, alpha, beta, k))
        return label

    answer = adversary(GameView(p, sigma_g, sigma_gx, query))

    rng = seeded_rng("x-star", seed)
    if sample_set is not None:
        x_star = rng.choice(sample_set.elements)
    else:
        x_star = rng.randrange(p)
    transcript.x_star = x_star

    values = {}
    for a, b in transcript.polys:
        v = (a * x_star + b) % p
        if v in values:
            transcript.simulator_failed = True
            break
        values[v] = (a, b)

    result = AdversaryResult(
        answer=None if answer is None else answer % p,
        queries_used=used,
        success=answer is not None and answer % p == x_star,
    )
    return transcript, result


def run_real_game(adversary, inst: DlpInstance, m: int) -> AdversaryResult:
    """Run the same adversary callback against a real oracle instance."""
    used = 0

    def query(h1, h2, alpha, beta):
        nonlocal used
        if used >= m:
            raise BudgetExceededError(f"budget of {m} queries exhausted")
        used += 1
        return inst.query(h1, h2, alpha, beta)

    answer = adversary(GameView(inst.p, inst.sigma_g, inst.sigma_gx, query))
    return AdversaryResult(
        answer=None if answer is None else answer % inst.p,
        queries_used=used,
        success=inst.verify_answer(answer),
    )


class TranscriptRecorder:
    """Wrap a real instance and mirror the simulator's polynomial bookkeeping.

    Attacks run against the wrapper unchanged; the recorded transcript
    lists the linear polynomials their queries induce.
    """

    def __init__(self, inst: DlpInstance):
        self._inst = inst
        self.p = inst.p
        self.sigma_g = inst.sigma_g
        self.sigma_gx = inst.sigma_gx
        self.transcript = Transcript(
            inst.p, encodings=[inst.sigma_g, inst.sigma_gx], polys=[(0, 1), (1, 0)]
        )
        self._index_of_label = {inst.sigma_g: 0, inst.sigma_gx: 1}

    @property
    def op_counter(self) -> int:
        return self._inst.op_counter

    def verify_answer(self, y) -> bool:
        return self._inst.verify_answer(y)

    def query(self, h1, h2, alpha, beta):
        i = self._index_of_label[h1]
        j = self._index_of_label[h2]
        label = self._inst.query(h1, h2, alpha, beta)
        polys = self.transcript.polys
        a = (alpha * polys[i][0] + beta * polys[j][0]) % self.p
        b = (alpha * polys[i][1] + beta * polys[j][1]) % self.p
        k = self._index_of_label.get(label)
        if k is None:
            k = len(polys)
            polys.append((a, b))
            self.transcript.encodings.append(label)
            self._index_of_label[label] = k
        self.transcript.queries.append((i, j, alpha, beta, k))
        return label


def success_bound(m: int, p: int) -> Fraction:
    """Exact rational (m+2)^2 / (2p) + 1/p; may exceed 1 for tiny p."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    validate_prime_modulus(p)
    return Fraction((m + 2) ** 2, 2 * p) + Fraction(1, p)


def bound_is_vacuous(bound: Fraction) -> bool:
    """A probability bound >= 1 carries no information."""
    return bound >= 1
