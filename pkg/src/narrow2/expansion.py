"""The computational expansion group F2[t_1..t_n]/(t_i^2) x| F2^n.

Algebra elements live in the nilpotent quotient of the group algebra of
F2^n: a basis monomial t_S = prod_{i in S} t_i per subset S of {0..n-1},
encoded as one bit per subset mask inside a single Python int.  The vector
part acts by multiplication by prod_i (1 + t_i)^{u_i}, which is where the
semidirect structure comes from.

Cochain tables record coefficient functions phi_S on finitely many group
elements; check_cochain_recursion verifies the defining identity

    phi_S(g*h) + phi_S(g) + phi_S(h) = sum over nonempty U <= S of
                                       chi_U(g) * phi_{S-U}(h)

on sampled pairs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

from .errors import ArgumentError, IncompleteTableError


@lru_cache(maxsize=64)
def _keep_masks(n: int) -> tuple[int, ...]:
    """keep[i] selects the subset-mask positions that do not contain i."""
    size = 1 << n
    out = []
    for i in range(n):
        m = 0
        for pos in range(size):
            if not pos & (1 << i):
                m |= 1 << pos
        out.append(m)
    return tuple(out)


def subset_masks(n: int) -> list[int]:
    """All subset masks of {0..n-1} in (size, lexicographic) order."""
    out = []
    for k in range(n + 1):
        for combo in combinations(range(n), k):
            m = 0
            for i in combo:
                m |= 1 << i
            out.append(m)
    return out


@dataclass(frozen=True)
class AlgebraElement:
    """Element of F2[t_1..t_n]/(t_i^2); bit `S` of bits is the t_S coefficient."""

    n: int
    bits: int

    def __post_init__(self):
        if not 0 <= self.bits < (1 << (1 << self.n)):
            raise ArgumentError("algebra coefficients out of range for index set")

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._same(other)
        return AlgebraElement(self.n, self.bits ^ other.bits)

    def __mul__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._same(other)
        keep = _keep_masks(self.n)
        out = 0
        a = self.bits
        while a:
            low = a & -a
            a ^= low
            m = low.bit_length() - 1  # subset mask of this monomial
            sel = other.bits
            mm = m
            while mm:
                i = (mm & -mm).bit_length() - 1
                mm &= mm - 1
                sel &= keep[i]
            out ^= sel << m  # disjoint union: position shift by m is exact
        return AlgebraElement(self.n, out)

    def _same(self, other: "AlgebraElement"):
        if self.n != other.n:
            raise ArgumentError("mismatched index sets")

    @property
    def augmentation(self) -> int:
        """Image under t_i -> 0; the coefficient of the empty monomial."""
        return self.bits & 1

    def coefficient(self, s_mask: int) -> int:
        return (self.bits >> s_mask) & 1

    @classmethod
    def zero(cls, n: int) -> "AlgebraElement":
        return cls(n, 0)

    @classmethod
    def one(cls, n: int) -> "AlgebraElement":
        return cls(n, 1)

    @classmethod
    def monomial(cls, n: int, s_mask: int) -> "AlgebraElement":
        if not 0 <= s_mask < (1 << n):
            raise ArgumentError(f"monomial mask {s_mask} out of range")
        return cls(n, 1 << s_mask)

    def __str__(self) -> str:
        terms = []
        for m in subset_masks(self.n):
            if (self.bits >> m) & 1:
                if m == 0:
                    terms.append("1")
                else:
                    terms.append("*".join(f"t{i + 1}" for i in range(self.n)
                                          if m & (1 << i)))
        return " + ".join(terms) if terms else "0"


def act(n: int, u: int, bits: int) -> int:
    """Multiply the algebra element by prod_{i in u} (1 + t_i)."""
    keep = _keep_masks(n)
    while u:
        i = (u & -u).bit_length() - 1
        u &= u - 1
        bits ^= (bits & keep[i]) << (1 << i)
    return bits


@dataclass(frozen=True)
class GroupElement:
    """Pair (algebra part, vector part) under the semidirect law
    (a, u)*(b, v) = (a + u.b, u + v)."""

    alg: AlgebraElement
    vec: int

    def __post_init__(self):
        if not 0 <= self.vec < (1 << self.alg.n):
            raise ArgumentError("vector part out of range for index set")

    @property
    def n(self) -> int:
        return self.alg.n

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        if self.n != other.n:
            raise ArgumentError("mismatched index sets")
        moved = act(self.n, self.vec, other.alg.bits)
        return GroupElement(AlgebraElement(self.n, self.alg.bits ^ moved),
                            self.vec ^ other.vec)

    def inverse(self) -> "GroupElement":
        # the vector action is an involution, so (a,u)^-1 = (u.a, u)
        return GroupElement(AlgebraElement(self.n, act(self.n, self.vec, self.alg.bits)),
                            self.vec)

    @classmethod
    def identity(cls, n: int) -> "GroupElement":
        return cls(AlgebraElement.zero(n), 0)


def central_element(n: int) -> GroupElement:
    """(t_T, 0) for the full index set T; generates the center's 2-torsion."""
    if n < 1:
        raise ArgumentError("central_element: need a nonempty index set")
    return GroupElement(AlgebraElement.monomial(n, (1 << n) - 1), 0)


def project_characters(g: GroupElement) -> tuple[tuple[int, ...], int]:
    """Coordinate characters pi_i (from the vector part) and the pointer
    character chi~ (augmentation of the algebra part)."""
    pis = tuple((g.vec >> i) & 1 for i in range(g.n))
    return pis, g.alg.augmentation


def vector_character(u_mask: int, g: GroupElement) -> int:
    """chi_U(g) = prod_{i in U} pi_i(g); 1 iff U is contained in the vector support."""
    return 1 if g.vec & u_mask == u_mask else 0


def _proper_nonempty_subsets(s_mask: int):
    """Nonempty submasks U of s_mask (U = s_mask included)."""
    u = s_mask
    while u:
        yield u
        u = (u - 1) & s_mask


@dataclass
class CochainTable:
    """phi_S values on finitely many group elements, one map per subset S.

    The empty-set row must agree with the pointer character (augmentation)
    wherever it is defined.
    """

    n: int
    phi: dict[int, dict[GroupElement, int]] = field(default_factory=dict)

    def __post_init__(self):
        for g, val in self.phi.get(0, {}).items():
            if val != g.alg.augmentation:
                raise ArgumentError(
                    "phi_empty disagrees with the pointer character")

    def value(self, s_mask: int, g: GroupElement) -> int:
        try:
            return self.phi[s_mask][g]
        except KeyError:
            raise IncompleteTableError(
                f"no phi value for S={s_mask:#b} at {g}") from None

    @classmethod
    def tautological(cls, n: int, elements) -> "CochainTable":
        """Read every phi_S directly off the algebra parts of the elements
        (and of all their pairwise products, so sampled pairs stay covered)."""
        elements = list(elements)
        closed = set(elements)
        for g in elements:
            for h in elements:
                closed.add(g * h)
        phi: dict[int, dict[GroupElement, int]] = {}
        for s in range(1 << n):
            phi[s] = {g: g.alg.coefficient(s) for g in closed}
        return cls(n, phi)


def check_cochain_recursion(table: CochainTable, characters, samples) -> bool:
    """True iff the cochain identity holds for every S at every sampled pair.

    characters(u_mask, element) supplies chi_U; pass vector_character for
    tables over this group.  Missing table entries raise IncompleteTableError.
    """
    for g, h in samples:
        gh = g * h
        for s in range(1 << table.n):
            lhs = table.value(s, gh) ^ table.value(s, g) ^ table.value(s, h)
            rhs = 0
            for u in _proper_nonempty_subsets(s):
                rhs ^= characters(u, g) & table.value(s ^ u, h)
            if lhs != rhs:
                return False
    return True
