"""Exact arithmetic in Z and in real quadratic rings Z[sqrt(d)].

The building blocks here are deliberately small: elements a + b*sqrt(d),
labeled finite places over rational primes (split / inert / ramified /
rational), square-root lifting modulo prime powers, and residue rings that
are products of Z/p^e factors.  Only split and rational places carry
residue maps; inert and ramified places would need quadratic-extension
residue fields that nothing downstream requires.

All values are immutable and all functions are pure, so everything in this
module is safe to share across threads.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

from .errors import InputError

# Residue moduli p^e are capped so entries and cofactor products stay far
# from any practical size limits; presets use p^e <= 17^2.
MAX_MODULUS = 2**31

# Hard cap on candidates scanned by find_split_primes; hitting it means the
# search constraints are inconsistent (the searches used here always
# terminate long before).
PRIME_SCAN_CAP = 10**6


def is_prime(n: int) -> bool:
    """Deterministic primality test by trial division (intended for n < 10^12)."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def primes():
    """Yield the primes in ascending order."""
    n = 2
    while True:
        if is_prime(n):
            yield n
        n += 1


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of n >= 1 as {prime: exponent}."""
    if n < 1:
        raise InputError(f"cannot factorize {n}")
    out: dict[int, int] = {}
    f = 2
    while f * f <= n:
        while n % f == 0:
            out[f] = out.get(f, 0) + 1
            n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_squarefree(n: int) -> bool:
    if n < 1:
        return False
    return all(e == 1 for e in factorize(n).values())


def euler_phi_prime_power(p: int, e: int) -> int:
    return (p - 1) * p ** (e - 1)


# ---------------------------------------------------------------------------
# quadratic integers


@dataclass(frozen=True)
class QuadInt:
    """An element a + b*sqrt(d) of Z[sqrt(d)], d squarefree and >= 2.

    The ring parameter d is carried on every element; mixing elements with
    different d in one expression is rejected.
    """

    a: int
    b: int
    d: int

    def __post_init__(self):
        if self.d < 2 or not is_squarefree(self.d):
            raise InputError(f"ring parameter d={self.d} must be squarefree and >= 2")

    def _check(self, other: "QuadInt"):
        if self.d != other.d:
            raise InputError(f"mixed rings: sqrt({self.d}) vs sqrt({other.d})")

    def __add__(self, other: "QuadInt") -> "QuadInt":
        self._check(other)
        return QuadInt(self.a + other.a, self.b + other.b, self.d)

    def __sub__(self, other: "QuadInt") -> "QuadInt":
        self._check(other)
        return QuadInt(self.a - other.a, self.b - other.b, self.d)

    def __neg__(self) -> "QuadInt":
        return QuadInt(-self.a, -self.b, self.d)

    def __mul__(self, other: "QuadInt") -> "QuadInt":
        self._check(other)
        return QuadInt(
            self.a * other.a + self.b * other.b * self.d,
            self.a * other.b + self.b * other.a,
            self.d,
        )

    def __str__(self) -> str:
        return f"{self.a}{self.b:+d}*sqrt({self.d})"


def galois_conj(x: QuadInt) -> QuadInt:
    """The nontrivial ring automorphism: a + b*sqrt(d) -> a - b*sqrt(d)."""
    return QuadInt(x.a, -x.b, x.d)


# ---------------------------------------------------------------------------
# places

KIND_RATIONAL = "rational"
KIND_SPLIT_FIRST = "split_first"
KIND_SPLIT_SECOND = "split_second"
KIND_INERT = "inert"
KIND_RAMIFIED = "ramified"

_KIND_RANK = {
    KIND_RATIONAL: 0,
    KIND_SPLIT_FIRST: 1,
    KIND_SPLIT_SECOND: 2,
    KIND_INERT: 3,
    KIND_RAMIFIED: 4,
}


@dataclass(frozen=True)
class PrimePlace:
    """A labeled finite place over the rational prime p.

    Split places carry the square root of d modulo p that identifies them;
    the two places over a split prime carry the two distinct roots r and
    p - r.  kind == "rational" is used when the base ring is Z.
    """

    p: int
    kind: str
    root: int | None = None
    label: str = ""

    def __post_init__(self):
        if self.kind not in _KIND_RANK:
            raise InputError(f"unknown place kind {self.kind!r}")
        split = self.kind in (KIND_SPLIT_FIRST, KIND_SPLIT_SECOND)
        if split and (self.root is None or not 0 < self.root < self.p):
            raise InputError("split places need a root in (0, p)")
        if not split and self.root is not None:
            raise InputError(f"{self.kind} places carry no root")

    @property
    def sort_key(self) -> tuple[int, int]:
        return (self.p, _KIND_RANK[self.kind])


def rational_place(p: int) -> PrimePlace:
    if not is_prime(p):
        raise InputError(f"{p} is not prime")
    return PrimePlace(p, KIND_RATIONAL, None, f"p{p}")


def splitting_type(p: int, d: int):
    """How the odd prime p behaves in Z[sqrt(d)].

    Returns ("split", (r, p - r)) with the roots of x^2 = d mod p sorted
    ascending, ("ramified", None) when p divides d, or ("inert", None).
    """
    if p == 2:
        raise InputError("p = 2 is out of scope everywhere")
    if not is_prime(p):
        raise InputError(f"{p} is not prime")
    if d < 1 or not is_squarefree(d):
        raise InputError(f"d={d} must be squarefree and positive")
    if d % p == 0:
        return ("ramified", None)
    if pow(d % p, (p - 1) // 2, p) != 1:
        return ("inert", None)
    r = sqrt_mod_prime(d % p, p)
    return ("split", (min(r, p - r), max(r, p - r)))


def sqrt_mod_prime(a: int, p: int) -> int:
    """A square root of the quadratic residue a modulo the odd prime p.

    Tonelli-Shanks; the p % 4 == 3 case short-circuits to a single power.
    """
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        raise InputError(f"{a} is not a square mod {p}")
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    # write p - 1 = q * 2^s with q odd
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    c = pow(z, q, p)
    x = pow(a, (q + 1) // 2, p)
    t = pow(a, q, p)
    m = s
    while t != 1:
        i, sq = 0, t
        while sq != 1:
            sq = sq * sq % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        x = x * b % p
        t = t * b % p * b % p
        c = b * b % p
        m = i
    return x


def split_places(p: int, d: int) -> tuple[PrimePlace, PrimePlace]:
    """The two places over a prime p that splits in Z[sqrt(d)]."""
    kind, roots = splitting_type(p, d)
    if kind != "split":
        raise InputError(f"{p} is {kind} in Z[sqrt({d})], not split")
    r1, r2 = roots
    return (
        PrimePlace(p, KIND_SPLIT_FIRST, r1, f"p{p}a"),
        PrimePlace(p, KIND_SPLIT_SECOND, r2, f"p{p}b"),
    )


def conj_place(v: PrimePlace) -> PrimePlace:
    """Image of a place under the ring conjugation: swaps the two split
    places over the same prime and fixes every other kind."""
    if v.kind == KIND_SPLIT_FIRST:
        return PrimePlace(v.p, KIND_SPLIT_SECOND, v.p - v.root, _swap_ab(v.label))
    if v.kind == KIND_SPLIT_SECOND:
        return PrimePlace(v.p, KIND_SPLIT_FIRST, v.p - v.root, _swap_ab(v.label))
    return v


def _swap_ab(label: str) -> str:
    if label.endswith("a"):
        return label[:-1] + "b"
    if label.endswith("b"):
        return label[:-1] + "a"
    return label


def find_split_primes(d, count, exclude=(), congruence=None):
    """The `count` smallest odd primes split in Z[sqrt(d)], in order.

    Primes in `exclude` and primes dividing d are skipped.  An optional
    congruence (m, a) additionally requires p = a mod m; with d = 1 the
    quadratic condition is vacuous (every odd prime counts), which is the
    rational-ring mode used to search for primes where the full group of
    n-th roots of unity lives in F_p (congruence (n, 1)).
    """
    if count < 1:
        raise InputError("count must be >= 1")
    if d < 1 or not is_squarefree(d):
        raise InputError(f"d={d} must be squarefree and positive")
    if congruence is not None:
        cm, ca = congruence
        if cm < 1:
            raise InputError("congruence modulus must be positive")
        if cm > 1 and _gcd(ca % cm, cm) != 1:
            raise InputError(f"congruence class {ca} mod {cm} contains at most one prime")
    found: list[int] = []
    scanned = 0
    for p in primes():
        scanned += 1
        if scanned > PRIME_SCAN_CAP:
            raise InputError("prime search exceeded its candidate cap; constraints look inconsistent")
        if p == 2 or p in exclude or d % p == 0:
            continue
        if congruence is not None and p % congruence[0] != congruence[1] % congruence[0]:
            continue
        if splitting_type(p, d)[0] != "split":
            continue
        found.append(p)
        if len(found) == count:
            return found
    raise AssertionError("unreachable")


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def hensel_lift_sqrt(d: int, p: int, r: int, e: int) -> int:
    """The unique lift of the square root r of d mod p to a root mod p^e.

    One linear Newton step per exponent increment: with f(x) = x^2 - d the
    update is x -> x - f(x) / (2x), and 2x is a unit because p is odd and
    r is nonzero mod p.
    """
    if p == 2 or not is_prime(p):
        raise InputError("p must be an odd prime")
    if e < 1:
        raise InputError("e must be >= 1")
    r %= p
    if (r * r - d) % p != 0:
        raise InputError(f"{r} is not a square root of {d} mod {p}")
    if r == 0:
        raise InputError("root 0 mod p cannot be lifted (p divides d)")
    x = r
    for k in range(2, e + 1):
        mod = p**k
        x = (x - (x * x - d) * pow(2 * x, -1, mod)) % mod
    return x


# ---------------------------------------------------------------------------
# residue rings


@dataclass(frozen=True)
class RingFactor:
    """One factor Z/p^e of a residue ring, tied to a place.

    For split places the factor stores the lifted square root of d mod p^e
    so that reduction of quadratic integers is a ring homomorphism at
    every level.
    """

    place: PrimePlace
    exponent: int
    lifted_root: int | None = None

    def __post_init__(self):
        if self.exponent < 1:
            raise InputError("exponent must be >= 1")
        if self.modulus >= MAX_MODULUS:
            raise InputError(f"modulus {self.place.p}^{self.exponent} exceeds the 2^31 guard")
        split = self.place.kind in (KIND_SPLIT_FIRST, KIND_SPLIT_SECOND)
        if split:
            if self.lifted_root is None:
                raise InputError("split factors need a lifted root")
            if self.lifted_root % self.place.p != self.place.root:
                raise InputError("lifted root does not reduce to the place root")
        elif self.lifted_root is not None:
            raise InputError(f"{self.place.kind} factors carry no lifted root")

    @property
    def modulus(self) -> int:
        return self.place.p**self.exponent


@dataclass(frozen=True)
class ResidueRing:
    """A product of factors Z/p^e over pairwise distinct places."""

    factors: tuple[RingFactor, ...]

    def __post_init__(self):
        places = [f.place for f in self.factors]
        if len(set(places)) != len(places):
            raise InputError("ring factors must sit at pairwise distinct places")
        if not self.factors:
            raise InputError("a residue ring needs at least one factor")

    @property
    def modulus(self) -> int:
        """Product of the factor moduli; defined only for pairwise coprime factors."""
        ps = [f.place.p for f in self.factors]
        if len(set(ps)) != len(ps):
            raise InputError("factors over the same rational prime have no joint modulus")
        m = 1
        for f in self.factors:
            m *= f.modulus
        return m


def single_place_ring(place: PrimePlace, e: int, d: int | None = None) -> ResidueRing:
    """The ring Z/p^e at one place, Hensel-lifting the root when needed."""
    if place.kind in (KIND_SPLIT_FIRST, KIND_SPLIT_SECOND):
        if e == 1:
            lifted = place.root
        else:
            if d is None:
                raise InputError("lifting a split place beyond level 1 needs d")
            lifted = hensel_lift_sqrt(d, place.p, place.root, e)
        return ResidueRing((RingFactor(place, e, lifted),))
    if place.kind in (KIND_INERT, KIND_RAMIFIED):
        raise InputError(f"no residue ring at {place.kind} places (out of scope)")
    return ResidueRing((RingFactor(place, e, None),))


def rational_ring(p: int, e: int) -> ResidueRing:
    return single_place_ring(rational_place(p), e)


def residue_map(x, factor: RingFactor) -> int:
    """Reduce an element of the base ring into the factor Z/p^e.

    Split factors send a + b*sqrt(d) to a + b*lifted_root; rational factors
    accept plain integers (or quadratic elements with b = 0).
    """
    mod = factor.modulus
    kind = factor.place.kind
    if kind in (KIND_SPLIT_FIRST, KIND_SPLIT_SECOND):
        if isinstance(x, QuadInt):
            return (x.a + x.b * factor.lifted_root) % mod
        return x % mod
    if kind == KIND_RATIONAL:
        if isinstance(x, QuadInt):
            if x.b != 0:
                raise InputError("rational places reduce integers only")
            return x.a % mod
        return x % mod
    raise InputError(f"residue arithmetic at {kind} places is unsupported")


def crt_split(x: int, ring: ResidueRing) -> tuple[int, ...]:
    """Components of x in the product decomposition of the ring."""
    ring.modulus  # insists on pairwise coprime factors
    return tuple(x % f.modulus for f in ring.factors)


def crt_join(components, ring: ResidueRing) -> int:
    """Inverse of crt_split: reassemble x mod the full modulus."""
    mod = ring.modulus
    if len(components) != len(ring.factors):
        raise InputError("component count does not match the ring factors")
    x = 0
    for c, f in zip(components, ring.factors):
        m = f.modulus
        rest = mod // m
        x += c * rest * pow(rest, -1, m)
    return x % mod


# ---------------------------------------------------------------------------
# roots of unity


def roots_of_unity_order(n: int, p: int, e: int) -> int:
    """Order of the n-torsion of (Z/p^e)^x, i.e. gcd(n, p - 1).

    Independent of e because the unit group is cyclic of order
    p^(e-1) * (p - 1) and p does not divide n.
    """
    if p == 2 or not is_prime(p):
        raise InputError("p must be an odd prime")
    if n < 1 or n % p == 0:
        raise InputError("n must be positive and prime to p")
    if e < 1:
        raise InputError("e must be >= 1")
    return _gcd(n, p - 1)


@functools.lru_cache(maxsize=None)
def smallest_primitive_root(p: int, e: int) -> int:
    """Smallest generator of the cyclic group (Z/p^e)^x, p odd."""
    if p == 2 or not is_prime(p):
        raise InputError("p must be an odd prime")
    pe = p**e
    phi = euler_phi_prime_power(p, e)
    radicals = list(factorize(phi))
    g = 2
    while True:
        if g % p != 0 and all(pow(g, phi // r, pe) != 1 for r in radicals):
            return g
        g += 1


def unit_of_order(m: int, p: int, e: int) -> int:
    """The canonical unit of multiplicative order m in (Z/p^e)^x.

    Defined as g^(phi/m) for g the smallest primitive root mod p^e; any
    fixed choice would do, but witnesses must be byte-stable.
    """
    if m == 1:
        return 1
    if (p - 1) % m != 0:
        raise InputError(f"no element of order {m} in (Z/{p}^{e})^x: {m} does not divide {p - 1}")
    g = smallest_primitive_root(p, e)
    return pow(g, euler_phi_prime_power(p, e) // m, p**e)
