"""Exact arithmetic over Z_p and small extension fields GF(q^k).

Moduli are capped below 2^62 so that products fit comfortably in native
integers; primality uses the deterministic Miller-Rabin witness set valid
below 2^64.  Extension-field elements are coefficient tuples of length k
(low degree first) with schoolbook multiplication, which is plenty at the
desk-scale cap q^k <= 2^24.
"""

import hashlib
import random
from dataclasses import dataclass
from itertools import product

from .errors import (
    NoLogarithmError,
    NonInvertibleError,
    NoPrimeError,
    NotPrimeError,
    TooLargeError,
)

MAX_MODULUS = 1 << 62
MAX_FIELD_ORDER = 1 << 24


def derive_seed(*parts) -> int:
    """Deterministic 64-bit seed from structured parts.

    Hash-based (not Python hash()), so identical parts reproduce identical
    streams across processes and platforms.
    """
    blob = "\x1f".join(repr(p) for p in parts).encode()
    return int.from_bytes(hashlib.sha256(blob).digest()[:8], "big")


def seeded_rng(*parts) -> random.Random:
    """A random.Random stream keyed deterministically by the given parts."""
    return random.Random(derive_seed(*parts))

# Deterministic Miller-Rabin witnesses, sufficient for all n < 3.3 * 10^24.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic primality test for n < 2^64."""
    if n < 2:
        return False
    for small in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n == small:
            return True
        if n % small == 0:
            return False
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def validate_prime_modulus(p: int) -> int:
    """Check 3 <= p < 2^62 and p prime; return p."""
    if not isinstance(p, int) or p < 3 or p >= MAX_MODULUS:
        raise NotPrimeError(f"modulus must be a prime in [3, 2^62), got {p!r}")
    if not is_prime(p):
        raise NotPrimeError(f"{p} is not prime")
    return p


def mod_inverse(x: int, p: int) -> int:
    """Inverse of x modulo prime p; x = 0 raises NonInvertibleError."""
    x %= p
    if x == 0:
        raise NonInvertibleError("0 has no inverse")
    return pow(x, -1, p)


def largest_prime_below(x: int) -> int:
    """Largest prime strictly less than x (x must exceed 3)."""
    if x <= 3:
        raise NoPrimeError(f"no prime below {x}")
    n = x - 1
    while n >= 2:
        if is_prime(n):
            return n
        n -= 1
    raise NoPrimeError(f"no prime below {x}")  # unreachable for x > 3


def integer_nth_root(n: int, k: int) -> int:
    """Floor of the k-th root of n >= 0."""
    if n < 0 or k < 1:
        raise ValueError("need n >= 0 and k >= 1")
    if n == 0:
        return 0
    hi = 1
    while hi**k <= n:
        hi <<= 1
    lo = hi >> 1
    while lo + 1 < hi:
        mid = (lo + hi) // 2
        if mid**k <= n:
            lo = mid
        else:
            hi = mid
    return lo


def factorize(n: int) -> dict:
    """Prime factorization by trial division (fine for n <= 2^32 or so)."""
    factors: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            factors[d] = factors.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return factors


def det_mod(rows, p: int) -> int:
    """Exact determinant of a square matrix over Z_p (Gaussian elimination)."""
    m = [[v % p for v in row] for row in rows]
    n = len(m)
    det = 1
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col]), None)
        if pivot is None:
            return 0
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det % p
        inv = pow(m[col][col], -1, p)
        det = det * m[col][col] % p
        for r in range(col + 1, n):
            f = m[r][col] * inv % p
            if f:
                mr, mc = m[r], m[col]
                for c in range(col, n):
                    mr[c] = (mr[c] - f * mc[c]) % p
    return det


# ---------------------------------------------------------------------------
# Extension fields GF(q^k)
# ---------------------------------------------------------------------------

def _poly_trim(a):
    i = len(a)
    while i > 0 and a[i - 1] == 0:
        i -= 1
    return tuple(a[:i])


def _poly_mod(a, mod_poly, q):
    """Remainder of a modulo the monic polynomial mod_poly, over GF(q)."""
    a = list(a)
    dm = len(mod_poly) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] % q
        if c:
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * mod_poly[j]) % q
    return _poly_trim(a[:dm])


def _poly_mul(a, b, q):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % q
    return _poly_trim(out)


def _poly_divisible(f, g, q):
    """True when monic g divides f over GF(q)."""
    r = list(f)
    dg = len(g) - 1
    while len(_poly_trim(r)) - 1 >= dg:
        r = list(_poly_trim(r))
        lead = r[-1]
        shift = len(r) - 1 - dg
        for j in range(dg + 1):
            r[shift + j] = (r[shift + j] - lead * g[j]) % q
    return not _poly_trim(r)


def _is_irreducible(f, q):
    """Trial division by all monic polynomials of degree <= deg(f)/2."""
    k = len(f) - 1
    for d in range(1, k // 2 + 1):
        for coeffs in product(range(q), repeat=d):
            g = coeffs + (1,)
            if _poly_divisible(f, g, q):
                return False
    return True


@dataclass(frozen=True)
class ExtensionField:
    """GF(q^k) as GF(q)[t] / (modulus_poly), with a primitive element theta.

    Elements are coefficient tuples of length <= k, low degree first, zero
    represented by the empty tuple.  modulus_poly has length k+1 and is
    monic; theta generates the multiplicative group of order q^k - 1.
    Construction is deterministic: the lexicographically least monic
    irreducible polynomial (by its low-first coefficient tuple) and the
    lexicographically least primitive element are chosen.
    """

    q: int
    k: int
    modulus_poly: tuple
    theta: tuple

    @property
    def order(self) -> int:
        return self.q**self.k

    def zero(self):
        return ()

    def one(self):
        return (1,)

    def const(self, c: int):
        c %= self.q
        return (c,) if c else ()

    def add(self, a, b):
        n = max(len(a), len(b))
        a = a + (0,) * (n - len(a))
        b = b + (0,) * (n - len(b))
        return _poly_trim([(x + y) % self.q for x, y in zip(a, b)])

    def mul(self, a, b):
        return _poly_mod(_poly_mul(a, b, self.q), self.modulus_poly, self.q)

    def pow(self, a, e: int):
        result = self.one()
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def elements(self):
        """All field elements in lexicographic order of low-first tuples."""
        for coeffs in product(range(self.q), repeat=self.k):
            yield _poly_trim(coeffs)

    def element_order(self, a) -> int:
        if not a:
            raise NoLogarithmError("zero has no multiplicative order")
        n = self.order - 1
        order = n
        for r in factorize(n):
            while order % r == 0 and self.pow(a, order // r) == self.one():
                order //= r
        return order


def build_extension_field(q: int, k: int) -> ExtensionField:
    """Deterministically construct GF(q^k) with verified data.

    Picks the lexicographically least monic irreducible degree-k polynomial
    over GF(q) and the lexicographically least primitive element.
    """
    if not is_prime(q):
        raise NotPrimeError(f"{q} is not prime")
    if k < 2:
        raise ValueError("extension degree must be at least 2")
    if q**k > MAX_FIELD_ORDER:
        raise TooLargeError(f"q^k = {q ** k} exceeds the cap {MAX_FIELD_ORDER}")

    modulus = None
    for coeffs in product(range(q), repeat=k):
        f = coeffs + (1,)
        if _is_irreducible(f, q):
            modulus = f
            break
    assert modulus is not None  # irreducibles of every degree exist

    n = q**k - 1
    prime_divisors = list(factorize(n))
    field = ExtensionField(q, k, modulus, theta=())
    theta = None
    for elt in field.elements():
        if not elt:
            continue
        if all(field.pow(elt, n // r) != (1,) for r in prime_divisors):
            theta = elt
            break
    assert theta is not None  # the multiplicative group is cyclic
    return ExtensionField(q, k, modulus, theta)


def ext_discrete_log(field: ExtensionField, y) -> int:
    """Exponent e with theta^e = y, by full enumeration of powers."""
    if not y:
        raise NoLogarithmError("zero has no discrete logarithm")
    power = field.one()
    for e in range(field.order - 1):
        if power == y:
            return e
        power = field.mul(power, field.theta)
    raise NoLogarithmError(f"{y!r} is not in the field")  # unreachable for valid y
