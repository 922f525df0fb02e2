"""Exact matrix arithmetic over residue rings with determinant-1 certification.

SLMat values are immutable, canonically reduced, and checked to have
determinant 1 at construction, so a matrix that is not in SL_n cannot be
built through the public surface.  Also here: the scalar central elements,
group orders of SL_n(Z/p^e), and projective lines over F_p with the left
action of SL_n on them.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError
from .rings import ResidueRing, factorize, is_prime, unit_of_order


def _det2(m):
    return m[0][0] * m[1][1] - m[0][1] * m[1][0]


def _det3(m):
    (a, b, c), (d, e, f), (g, h, i) = m
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def _det_int(rows) -> int:
    """Exact integer determinant; cofactor expansion for n <= 4, Bareiss above."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return _det2(rows)
    if n == 3:
        return _det3(rows)
    if n == 4:
        # Laplace expansion along the first two rows: pair each 2x2 minor
        # with its complement in the last two rows.
        total = 0
        sign_of = {(0, 1): 1, (0, 2): -1, (0, 3): 1, (1, 2): 1, (1, 3): -1, (2, 3): 1}
        cols = (0, 1, 2, 3)
        for j in range(4):
            for k in range(j + 1, 4):
                top = rows[0][j] * rows[1][k] - rows[0][k] * rows[1][j]
                if top == 0:
                    continue
                cj, ck = [c for c in cols if c not in (j, k)]
                bottom = rows[2][cj] * rows[3][ck] - rows[2][ck] * rows[3][cj]
                total += sign_of[(j, k)] * top * bottom
        return total
    return _bareiss(rows)


def _bareiss(rows) -> int:
    m = [list(r) for r in rows]
    n = len(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def _minor(rows, i, j):
    return [r[:j] + r[j + 1 :] for k, r in enumerate(rows) if k != i]


@dataclass(frozen=True)
class SLMat:
    """A square matrix over a residue ring with determinant 1."""

    ring: ResidueRing
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.entries)
        mod = self.ring.modulus
        if n < 1 or any(len(r) != n for r in self.entries):
            raise InputError("entries must form a square matrix")
        if any(not 0 <= x < mod for r in self.entries for x in r):
            raise InputError("entries must be canonically reduced")
        if _det_int(self.entries) % mod != 1:
            raise InputError("determinant is not 1 in the ring")

    @property
    def n(self) -> int:
        return len(self.entries)

    def __str__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in r) for r in self.entries)
        return f"[{body}] mod {self.ring.modulus}"


def from_rows(rows, ring: ResidueRing) -> SLMat:
    """Build an SLMat from integer rows, reducing entries into the ring."""
    mod = ring.modulus
    return SLMat(ring, tuple(tuple(x % mod for x in r) for r in rows))


def identity(n: int, ring: ResidueRing) -> SLMat:
    return SLMat(ring, tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))


def mat_mul(x: SLMat, y: SLMat) -> SLMat:
    if x.ring != y.ring or x.n != y.n:
        raise InputError("matrix product needs matching ring and dimension")
    mod = x.ring.modulus
    cols = tuple(zip(*y.entries))
    rows = tuple(
        tuple(sum(a * b for a, b in zip(row, col)) % mod for col in cols) for row in x.entries
    )
    return SLMat(x.ring, rows)


def transpose(x: SLMat) -> SLMat:
    return SLMat(x.ring, tuple(zip(*x.entries)))


def mat_inv(x: SLMat) -> SLMat:
    """Inverse matrix: adjugate for n <= 4, unit-pivot elimination above.

    Determinant 1 makes the adjugate the inverse outright; elimination over
    Z/p^e always finds a unit pivot because a column of non-units would
    force the determinant into the maximal ideal.
    """
    n = x.n
    if n <= 4:
        return _adjugate(x)
    if len(x.ring.factors) == 1:
        return _gauss_inverse(x)
    return _adjugate(x)


def _adjugate(x: SLMat) -> SLMat:
    n = x.n
    mod = x.ring.modulus
    rows = [list(r) for r in x.entries]
    adj = [
        tuple((-1) ** (i + j) * _det_int(_minor(rows, j, i)) % mod for j in range(n))
        for i in range(n)
    ]
    return SLMat(x.ring, tuple(adj))


def _gauss_inverse(x: SLMat) -> SLMat:
    n = x.n
    mod = x.ring.modulus
    p = x.ring.factors[0].place.p
    a = [list(r) + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(x.entries)]
    for col in range(n):
        pivot = next(i for i in range(col, n) if a[i][col] % p != 0)
        a[col], a[pivot] = a[pivot], a[col]
        inv = pow(a[col][col], -1, mod)
        a[col] = [v * inv % mod for v in a[col]]
        for i in range(n):
            if i != col and a[i][col]:
                f = a[i][col]
                a[i] = [(v - f * w) % mod for v, w in zip(a[i], a[col])]
    return SLMat(x.ring, tuple(tuple(r[n:]) for r in a))


def scalar_mul(c: int, x: SLMat) -> SLMat:
    """c * x for a scalar with c^n = 1 (anything else fails the det check)."""
    mod = x.ring.modulus
    return SLMat(x.ring, tuple(tuple(c * v % mod for v in r) for r in x.entries))


def reduce_mat(x: SLMat, ring: ResidueRing) -> SLMat:
    """Entrywise reduction into a ring whose modulus divides the source's."""
    mod = ring.modulus
    if x.ring.modulus % mod != 0:
        raise InputError("target modulus must divide the source modulus")
    return SLMat(ring, tuple(tuple(v % mod for v in r) for r in x.entries))


def elementary(n: int, i: int, j: int, t: int, ring: ResidueRing) -> SLMat:
    """Identity plus t in off-diagonal position (i, j); indices 0-based."""
    if i == j:
        raise InputError("elementary matrices live off the diagonal")
    if not (0 <= i < n and 0 <= j < n):
        raise InputError("index out of range")
    mod = ring.modulus
    rows = [[1 if r == c else 0 for c in range(n)] for r in range(n)]
    rows[i][j] = t % mod
    return SLMat(ring, tuple(tuple(r) for r in rows))


def minus_identity(n: int, ring: ResidueRing) -> SLMat:
    """The scalar matrix -1; rejected for odd n where its determinant is -1.

    Central elements of other orders come from central_scalar.
    """
    if n % 2 != 0:
        raise InputError(f"-identity has determinant -1 for n={n}; use central_scalar for odd n")
    mod = ring.modulus
    return scalar_mul(mod - 1, identity(n, ring))


def central_scalar(n: int, ring: ResidueRing, m: int) -> SLMat:
    """The canonical central element of order m: zeta * identity.

    zeta is the canonical unit of order m in (Z/p^e)^x, so m must divide
    gcd(n, p - 1); that divisibility is exactly the condition for SL_n over
    the residue ring to contain full m-torsion of its centre.
    """
    if len(ring.factors) != 1:
        raise InputError("central scalars are built per place")
    f = ring.factors[0]
    p, e = f.place.p, f.exponent
    if m < 1 or n % m != 0 or (p - 1) % m != 0:
        raise InputError(f"order {m} does not divide gcd({n}, {p - 1})")
    z = unit_of_order(m, p, e)
    return scalar_mul(z, identity(n, ring))


# ---------------------------------------------------------------------------
# group orders


def sl_order(n: int, p: int, e: int) -> int:
    """|SL_n(Z/p^e)| = p^((n^2-1)(e-1)) * p^(n(n-1)/2) * prod_{i=2..n} (p^i - 1)."""
    if not is_prime(p) or e < 1 or n < 1:
        raise InputError("need prime p, e >= 1, n >= 1")
    order = p ** ((n * n - 1) * (e - 1)) * p ** (n * (n - 1) // 2)
    for i in range(2, n + 1):
        order *= p**i - 1
    return order


def sl_order_mod(n: int, m: int) -> int:
    """|SL_n(Z/m)| for composite m, via the prime-power decomposition."""
    order = 1
    for p, e in factorize(m).items():
        order *= sl_order(n, p, e)
    return order


def enumerate_sl2_order(m: int) -> int:
    """Brute-force count of 2x2 matrices mod m with determinant 1.

    Independent oracle for sl_order_mod(2, m); only usable for small m.
    """
    count = 0
    for a in range(m):
        for b in range(m):
            for c in range(m):
                for d in range(m):
                    if (a * d - b * c) % m == 1:
                        count += 1
    return count


# ---------------------------------------------------------------------------
# projective lines


@dataclass(frozen=True)
class ProjPoint:
    """A line in F_p^n, normalized so the first nonzero coordinate is 1."""

    p: int
    coords: tuple[int, ...]

    def __post_init__(self):
        first = next((c for c in self.coords if c != 0), None)
        if first != 1:
            raise InputError("projective coordinates must lead with 1")


def normalize_line(coords, p: int) -> ProjPoint:
    coords = [c % p for c in coords]
    first = next((c for c in coords if c != 0), None)
    if first is None:
        raise InputError("the zero vector spans no line")
    inv = pow(first, -1, p)
    return ProjPoint(p, tuple(c * inv % p for c in coords))


def lines_of_projective_space(n: int, p: int) -> list[ProjPoint]:
    """All (p^n - 1)/(p - 1) lines of F_p^n, each exactly once."""
    out = []
    for lead in range(n):
        tail = n - lead - 1
        for k in range(p**tail):
            coords = [0] * lead + [1]
            rest = k
            for _ in range(tail):
                coords.append(rest % p)
                rest //= p
            out.append(ProjPoint(p, tuple(coords)))
    return out


def act(g: SLMat, line: ProjPoint) -> ProjPoint:
    """Left action on column vectors: the line spanned by g * v."""
    p = line.p
    if g.ring.modulus != p:
        raise InputError("the projective action is defined at level 1 only")
    image = [sum(a * b for a, b in zip(row, line.coords)) for row in g.entries]
    return normalize_line(image, p)
