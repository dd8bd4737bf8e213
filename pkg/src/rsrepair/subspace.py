"""B-linear subspaces of F, plus subspaces of B^m.

Subspaces of F are represented internally over the prime field: a reduced
GF(p)-coordinate basis of a*dim_B rows, closed under multiplication by the
subfield generator.  One elimination kernel then serves q prime and q = p^a
alike.  A deterministic B-basis is derived from the GF(p) rows and used for
enumeration and serialization; enumeration walks coefficient vectors over B
in lexicographic order, so 0 always comes first.
"""

from __future__ import annotations

import itertools

from . import linalg
from .errors import TooLarge, WNotInImage, ZeroScalar
from .gf import FieldTower, max_field_size

AMBIENT_FIELD = "field"
AMBIENT_VECTORS = "vectors"


def b_gfp_basis(tower: FieldTower) -> tuple[int, ...]:
    """GF(p)-basis of B: powers of the subfield generator (just 1 if a = 1)."""
    if tower.a == 1:
        return (1,)
    g = tower.subfield_generator
    out = []
    v = 1
    for _ in range(tower.a):
        out.append(v)
        v = tower.mul(v, g)
    return tuple(out)


def gfp_rows(tower: FieldTower, elements) -> list[list[int]]:
    """Coordinate rows over GF(p) for the given field elements."""
    return [list(tower.coords(e)) for e in elements]


def b_closure(tower: FieldTower, elements) -> list[int]:
    """Close a set of elements under multiplication by B's GF(p)-basis."""
    out = []
    for e in elements:
        for s in b_gfp_basis(tower):
            out.append(tower.mul(s, e))
    return out


def b_rank(tower: FieldTower, elements) -> int:
    """Rank over B of field elements = GF(p)-rank of the closure, over a."""
    r = linalg.rank(tower, gfp_rows(tower, b_closure(tower, elements)))
    if r % tower.a:
        raise AssertionError("closure rank not divisible by a")
    return r // tower.a


def rank_over_subfield(tower: FieldTower, elements, subfield_size: int) -> int:
    """Rank of elements over the intermediate subfield of the given size."""
    sb = tower.subfield_gfp_basis(subfield_size)
    closed = [tower.mul(s, e) for e in elements for s in sb]
    r = linalg.rank(tower, gfp_rows(tower, closed))
    if r % len(sb):
        raise AssertionError("closure rank not divisible by subfield degree")
    return r // len(sb)


class Subspace:
    """A B-linear subspace, ambient F (default) or B^m."""

    def __init__(self, tower, ambient, width, rows, pivots):
        self.tower = tower
        self.ambient = ambient
        self.width = width  # GF(p) coordinates for F; B-entries for vectors
        self._rows = [list(r) for r in rows]
        self._pivots = list(pivots)
        self._b_basis = None
        if ambient == AMBIENT_FIELD and len(self._rows) % tower.a:
            raise AssertionError("GF(p)-dimension not divisible by a; not B-linear")

    # -- constructors ------------------------------------------------------

    @classmethod
    def span(cls, tower: FieldTower, elements) -> "Subspace":
        """B-span of field elements."""
        rows, piv = linalg.rref(tower, gfp_rows(tower, b_closure(tower, elements)))
        return cls(tower, AMBIENT_FIELD, tower.degree, rows, piv)

    @classmethod
    def span_vectors(cls, tower: FieldTower, vectors, width: int) -> "Subspace":
        """B-span of vectors in B^width (entries must lie in B)."""
        rows, piv = linalg.rref(tower, [list(v) for v in vectors])
        return cls(tower, AMBIENT_VECTORS, width, rows, piv)

    @classmethod
    def full_field(cls, tower: FieldTower) -> "Subspace":
        rows = linalg.identity(tower.degree)
        return cls(tower, AMBIENT_FIELD, tower.degree, rows, list(range(tower.degree)))

    @classmethod
    def trace_kernel(cls, tower: FieldTower) -> "Subspace":
        """K = {x in F : Tr_{F/B}(x) = 0}; B-dimension ell - 1."""
        cols = [tower.coords(tower.trace_to_subfield(tower.p**k)) for k in range(tower.degree)]
        mat = [list(row) for row in zip(*cols)]  # maps digits(x) -> digits(Tr x)
        ker = linalg.right_kernel(tower, mat, tower.degree)
        rows, piv = linalg.rref(tower, ker)
        return cls(tower, AMBIENT_FIELD, tower.degree, rows, piv)

    @classmethod
    def scaled_trace_kernel(cls, beta: int, tower: FieldTower) -> "Subspace":
        """beta^{-1} K = {x : Tr(beta x) = 0}."""
        if beta == 0:
            raise ZeroScalar("scaled trace kernel requires beta != 0")
        binv = tower.inv(beta)
        k = cls.trace_kernel(tower)
        return cls.span(tower, [tower.mul(binv, e) for e in k.gfp_basis_elements()])

    # -- basic queries -------------------------------------------------------

    @property
    def dim(self) -> int:
        """Dimension over B."""
        if self.ambient == AMBIENT_FIELD:
            return len(self._rows) // self.tower.a
        return len(self._rows)

    def gfp_basis_elements(self) -> list[int]:
        """F-ambient only: the GF(p)-basis rows as field elements."""
        return [self.tower.element(r) for r in self._rows]

    def b_basis(self):
        """Deterministic B-basis (elements for F-ambient, rows for B^m)."""
        if self._b_basis is not None:
            return self._b_basis
        if self.ambient == AMBIENT_VECTORS:
            self._b_basis = tuple(tuple(r) for r in self._rows)
            return self._b_basis
        picked = []
        target = self.dim
        for e in self.gfp_basis_elements():
            if len(picked) == target:
                break
            if b_rank(self.tower, picked + [e]) > len(picked):
                picked.append(e)
        if len(picked) != target:
            raise AssertionError("failed to extract a B-basis from GF(p) rows")
        self._b_basis = tuple(picked)
        return self._b_basis

    def contains(self, x) -> bool:
        if self.ambient == AMBIENT_FIELD:
            digs = list(self.tower.coords(x))
        else:
            digs = list(x)
        return not any(self._reduce(digs))

    __contains__ = contains

    def _reduce(self, digs: list[int]) -> list[int]:
        t = self.tower
        for row, pc in zip(self._rows, self._pivots):
            c = digs[pc]
            if c:
                digs = [t.sub(a, t.mul(c, b)) for a, b in zip(digs, row)]
        return digs

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subspace)
            and self.ambient == other.ambient
            and self.width == other.width
            and self._rows == other._rows
        )

    def __hash__(self):
        return hash((self.ambient, self.width, tuple(map(tuple, self._rows))))

    # -- enumeration -----------------------------------------------------------

    def enumerate(self) -> list:
        """All q^dim members: B-coefficient vectors in lex order over b_basis.

        First element is always 0 (or the zero vector).
        """
        t = self.tower
        if t.q**self.dim > max_field_size():
            raise TooLarge(f"enumeration of q^{self.dim} elements exceeds budget")
        basis = self.b_basis()
        bels = t.subfield_elements()
        out = []
        if self.ambient == AMBIENT_FIELD:
            for coeffs in itertools.product(bels, repeat=self.dim):
                v = 0
                for c, e in zip(coeffs, basis):
                    if c:
                        v = t.add(v, t.mul(c, e))
                out.append(v)
        else:
            for coeffs in itertools.product(bels, repeat=self.dim):
                v = [0] * self.width
                for c, row in zip(coeffs, basis):
                    if c:
                        v = [t.add(a, t.mul(c, b)) for a, b in zip(v, row)]
                out.append(tuple(v))
        return out

    # -- lattice operations -----------------------------------------------------

    def constraints(self) -> list[list[int]]:
        """GF(p) rows C with self = {x : C . digits(x) = 0}."""
        return linalg.right_kernel(self.tower, self._rows, self.width)

    def intersect(self, *others) -> "Subspace":
        """Exact intersection via the kernel of stacked constraint systems."""
        stacked = self.constraints()
        for o in others:
            if o.ambient != self.ambient or o.width != self.width:
                raise ValueError("ambient mismatch in intersection")
            stacked.extend(o.constraints())
        ker = linalg.right_kernel(self.tower, stacked, self.width) if stacked else linalg.identity(self.width)
        rows, piv = linalg.rref(self.tower, ker)
        return Subspace(self.tower, self.ambient, self.width, rows, piv)

    def add(self, other: "Subspace") -> "Subspace":
        """Sum of subspaces (used to test dimension identities)."""
        rows, piv = linalg.rref(self.tower, self._rows + other._rows)
        return Subspace(self.tower, self.ambient, self.width, rows, piv)

    # -- preimages ---------------------------------------------------------------

    def preimage(self, lmap) -> "Subspace":
        """{x in F : L(x) in self} for a B-linear map with a .gfp_matrix().

        Raises WNotInImage if self is not contained in the image of L, so a
        dimension count dim(self) + dim(ker L) is guaranteed for the result.
        """
        t = self.tower
        m = lmap.gfp_matrix()
        # image check: every basis row of self must lie in the column space
        cols = [list(c) for c in zip(*m)]
        img_rank = linalg.rank(t, cols)
        if linalg.rank(t, cols + self._rows) != img_rank:
            raise WNotInImage("subspace is not contained in the image of the map")
        cons = self.constraints()
        if cons:
            ker = linalg.right_kernel(t, linalg.mat_mul(t, cons, m), self.width)
        else:
            ker = linalg.identity(self.width)
        rows, piv = linalg.rref(t, ker)
        return Subspace(t, AMBIENT_FIELD, self.width, rows, piv)

    # -- serialization -------------------------------------------------------------

    def to_json(self) -> list:
        if self.ambient != AMBIENT_FIELD:
            raise ValueError("only F-ambient subspaces serialize")
        return [list(self.tower.coords(e)) for e in self.b_basis()]

    @classmethod
    def from_json(cls, tower: FieldTower, rows) -> "Subspace":
        return cls.span(tower, [tower.element(r) for r in rows])

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient})"
