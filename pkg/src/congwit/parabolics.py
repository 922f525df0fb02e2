"""Standard parabolic subgroups of SL_n over F_p and the diagram symmetry.

A subset theta of the simple roots {1, ..., n-1} determines the standard
parabolic P_theta of block-upper-triangular matrices whose block sizes are
cut at the complement of theta: theta = everything gives the whole group,
theta = empty set gives the Borel.  The type A diagram symmetry
s(theta) = {n - i} is realized on matrices by transpose-inverse conjugated
with the longest Weyl permutation, and non-conjugacy of P_theta and
P_{s(theta)} is certified by the conjugation-invariant count of projective
lines fixed by the subgroup.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError
from .matrices import (
    SLMat,
    act,
    elementary,
    from_rows,
    lines_of_projective_space,
    mat_inv,
    mat_mul,
    transpose,
)
from .rings import ResidueRing, is_prime, rational_ring, smallest_primitive_root


@dataclass(frozen=True)
class RootSubset:
    """A subset of the simple roots 1..n-1 of SL_n (1-based)."""

    n: int
    members: frozenset[int]

    def __post_init__(self):
        if self.n < 2:
            raise InputError("SL_n needs n >= 2")
        if any(not 1 <= i <= self.n - 1 for i in self.members):
            raise InputError(f"roots must lie in 1..{self.n - 1}")

    def symmetric_image(self) -> "RootSubset":
        """Image under the diagram symmetry i -> n - i."""
        return RootSubset(self.n, frozenset(self.n - i for i in self.members))

    def block_sizes(self) -> tuple[int, ...]:
        """Diagonal block sizes of the corresponding standard parabolic."""
        cuts = sorted(set(range(1, self.n)) - self.members)
        bounds = [0] + cuts + [self.n]
        return tuple(b - a for a, b in zip(bounds, bounds[1:]))


def root_subset(n: int, members) -> RootSubset:
    return RootSubset(n, frozenset(members))


@dataclass(frozen=True)
class ParabolicSpec:
    """The standard parabolic of SL_n(F_p) attached to a root subset."""

    n: int
    p: int
    theta: RootSubset

    def __post_init__(self):
        if self.theta.n != self.n:
            raise InputError("root subset rank does not match n")
        if not is_prime(self.p):
            raise InputError(f"{self.p} is not prime")

    @property
    def blocks(self) -> tuple[int, ...]:
        return self.theta.block_sizes()


def _block_of_position(blocks) -> list[int]:
    out = []
    for k, b in enumerate(blocks):
        out.extend([k] * b)
    return out


def parabolic_membership(g: SLMat, spec: ParabolicSpec) -> bool:
    """True iff every entry below the block diagonal vanishes."""
    if g.n != spec.n or g.ring.modulus != spec.p:
        raise InputError("membership is tested mod p at matching dimension")
    blk = _block_of_position(spec.blocks)
    return all(
        g.entries[r][c] == 0
        for r in range(spec.n)
        for c in range(spec.n)
        if blk[r] > blk[c]
    )


def gl_order(m: int, p: int) -> int:
    """|GL_m(F_p)|."""
    order = 1
    for i in range(m):
        order *= p**m - p**i
    return order


def parabolic_order(spec: ParabolicSpec) -> int:
    """|P_theta| from the Levi-unipotent factorization.

    The unipotent radical contributes p per entry above the block diagonal;
    the Levi contributes the block-diagonal GL product cut down to total
    determinant 1, i.e. divided by the (p - 1) determinant choices.
    """
    blocks = spec.blocks
    p = spec.p
    above = 0
    for i, bi in enumerate(blocks):
        for bj in blocks[i + 1 :]:
            above += bi * bj
    levi = 1
    for b in blocks:
        levi *= gl_order(b, p)
    return p**above * (levi // (p - 1))


def parabolic_generators(spec: ParabolicSpec, ring: ResidueRing | None = None) -> list[SLMat]:
    """A generating set of P_theta, lifted entrywise into the given ring.

    Root elements: every upper elementary, plus the lower elementaries
    inside the diagonal blocks.  Torus part: for each adjacent pair of
    positions, the diagonal matrix with the canonical generator of the unit
    group at one slot and its inverse at the next; together these exhaust
    the determinant-1 diagonal, which a single balancing element cannot do
    once there are three or more blocks.
    """
    n = spec.n
    if ring is None:
        ring = rational_ring(spec.p, 1)
    f = ring.factors[0]
    if len(ring.factors) != 1 or f.place.p != spec.p:
        raise InputError("the ring must be a single factor over the parabolic's prime")
    mod = ring.modulus
    blk = _block_of_position(spec.blocks)
    gens = []
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            if i < j or blk[i] == blk[j]:
                gens.append(elementary(n, i, j, 1, ring))
    u = smallest_primitive_root(spec.p, f.exponent) % mod
    u_inv = pow(u, -1, mod)
    for i in range(n - 1):
        rows = [[1 if r == c else 0 for c in range(n)] for r in range(n)]
        rows[i][i] = u
        rows[i + 1][i + 1] = u_inv
        gens.append(from_rows(rows, ring))
    return gens


# ---------------------------------------------------------------------------
# the diagram symmetry on matrices


def longest_weyl(n: int, ring: ResidueRing) -> SLMat:
    """The reversal permutation matrix, sign-fixed to determinant 1.

    The reversal has sign (-1)^(n(n-1)/2); when that is -1 the (0, n-1)
    entry is negated.  Any determinant-1 representative works, but the
    convention must stay fixed so witnesses are byte-stable.
    """
    mod = ring.modulus
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        rows[i][n - 1 - i] = 1
    if (n * (n - 1) // 2) % 2 == 1:
        rows[0][n - 1] = mod - 1
    return from_rows(rows, ring)


def weyl_conjugator(n: int, ring: ResidueRing) -> SLMat:
    """c = w0 * (w0^T)^(-1); the square of the symmetry is conjugation by c."""
    w0 = longest_weyl(n, ring)
    return mat_mul(w0, mat_inv(transpose(w0)))


def graph_automorphism(g: SLMat) -> SLMat:
    """The outer automorphism of SL_n: g -> w0 * (g^T)^(-1) * w0^(-1).

    Swaps P_theta and P_{s(theta)} and preserves the standard Borel; works
    over Z/p^e for every level e.
    """
    w0 = longest_weyl(g.n, g.ring)
    return mat_mul(mat_mul(w0, mat_inv(transpose(g))), mat_inv(w0))


def graph_automorphism_inverse(g: SLMat) -> SLMat:
    """Inverse of graph_automorphism: g -> ((w0^(-1) * g * w0)^T)^(-1)."""
    w0 = longest_weyl(g.n, g.ring)
    return mat_inv(transpose(mat_mul(mat_mul(mat_inv(w0), g), w0)))


def fixed_lines(spec: ParabolicSpec) -> int:
    """Number of projective lines fixed by every generator of P_theta.

    A line fixed by all generators is fixed by the whole subgroup, and the
    count is invariant under conjugation; unequal counts therefore certify
    that two parabolics are not conjugate.
    """
    gens = parabolic_generators(spec)
    count = 0
    for line in lines_of_projective_space(spec.n, spec.p):
        if all(act(g, line) == line for g in gens):
            count += 1
    return count


def parabolic_full(n: int, p: int) -> ParabolicSpec:
    """theta = all simple roots: the whole group as a degenerate parabolic."""
    return ParabolicSpec(n, p, root_subset(n, range(1, n)))


def borel(n: int, p: int) -> ParabolicSpec:
    return ParabolicSpec(n, p, root_subset(n, ()))
