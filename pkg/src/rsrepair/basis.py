"""Dual bases of F over B and the vectorization maps they induce.

A BasisPair stores both halves (beta and its trace-dual gamma) so that both
vectorizations are equally cheap:

    phi(alpha)     = (Tr(alpha gamma_1), ..., Tr(alpha gamma_ell))   # beta coords
    phi_hat(theta) = (Tr(theta beta_1), ..., Tr(theta beta_ell))     # gamma coords

They satisfy phi_hat(theta) . phi(alpha) = Tr(theta alpha) for all pairs, and
devectorizing phi(alpha) against beta returns alpha.
"""

from __future__ import annotations

from . import linalg
from .errors import DependentBasis
from .gf import FieldTower
from .subspace import b_rank


class BasisPair:
    def __init__(self, tower: FieldTower, beta, gamma, check: bool = True):
        self.tower = tower
        self.beta = tuple(beta)
        self.gamma = tuple(gamma)
        if len(self.beta) != tower.ell or len(self.gamma) != tower.ell:
            raise DependentBasis("basis length must equal ell")
        if check:
            for i, g in enumerate(self.gamma):
                for j, b in enumerate(self.beta):
                    want = 1 if i == j else 0
                    if tower.trace_to_subfield(tower.mul(g, b)) != want:
                        raise DependentBasis("claimed dual pair fails Tr(gamma_i beta_j) = delta_ij")
        self._phi = None
        self._phi_hat = None
        self._phi_bits = None
        self._phi_hat_bits = None

    @property
    def ell(self) -> int:
        return self.tower.ell

    def swapped(self) -> "BasisPair":
        """The pair with the roles of beta and gamma exchanged."""
        return BasisPair(self.tower, self.gamma, self.beta, check=False)

    # -- vectorization -----------------------------------------------------

    def vectorize(self, alpha: int) -> tuple[int, ...]:
        """Coordinates of alpha w.r.t. beta, as traces against gamma."""
        t = self.tower
        return tuple(t.trace_to_subfield(t.mul(alpha, g)) for g in self.gamma)

    def vectorize_dual(self, alpha: int) -> tuple[int, ...]:
        """Coordinates of alpha w.r.t. gamma, as traces against beta."""
        t = self.tower
        return tuple(t.trace_to_subfield(t.mul(alpha, b)) for b in self.beta)

    def devectorize(self, v) -> int:
        t = self.tower
        out = 0
        for c, b in zip(v, self.beta):
            if c:
                out = t.add(out, t.mul(c, b))
        return out

    def devectorize_dual(self, v) -> int:
        t = self.tower
        out = 0
        for c, g in zip(v, self.gamma):
            if c:
                out = t.add(out, t.mul(c, g))
        return out

    # -- cached full tables (hot paths) -------------------------------------

    def phi_table(self) -> list[tuple[int, ...]]:
        if self._phi is None:
            self._phi = [self.vectorize(x) for x in range(self.tower.size)]
        return self._phi

    def phi_hat_table(self) -> list[tuple[int, ...]]:
        if self._phi_hat is None:
            self._phi_hat = [self.vectorize_dual(x) for x in range(self.tower.size)]
        return self._phi_hat

    def phi_hat_bits(self) -> list[int]:
        """q = 2 only: phi_hat rows packed into ints (bit s = coordinate s)."""
        if self.tower.q != 2:
            raise ValueError("bit-packed vectorization requires q = 2")
        if self._phi_hat_bits is None:
            table = self.phi_hat_table()
            self._phi_hat_bits = [sum(c << s for s, c in enumerate(row)) for row in table]
        return self._phi_hat_bits

    # -- serialization -------------------------------------------------------

    def to_json(self) -> dict:
        c = self.tower.coords
        return {
            "beta": [list(c(b)) for b in self.beta],
            "gamma": [list(c(g)) for g in self.gamma],
        }

    @classmethod
    def from_json(cls, tower: FieldTower, spec: dict) -> "BasisPair":
        beta = [tower.element(r) for r in spec["beta"]]
        gamma = [tower.element(r) for r in spec["gamma"]]
        return cls(tower, beta, gamma)

    def __repr__(self):
        return f"BasisPair(ell={self.ell}, beta={self.beta})"


def dual_basis(beta, tower: FieldTower) -> BasisPair:
    """Compute the trace-dual of a basis of F over B.

    The Gram matrix (Tr(beta_i beta_j)) has entries in B and is invertible
    exactly when beta is a basis; gamma_i = sum_j Ginv[i][j] beta_j.
    """
    beta = tuple(beta)
    if len(beta) != tower.ell or b_rank(tower, beta) != tower.ell:
        raise DependentBasis("elements do not form a basis of F over B")
    tr = tower.trace_to_subfield
    gram = [[tr(tower.mul(bi, bj)) for bj in beta] for bi in beta]
    ginv = linalg.inverse(tower, gram)
    gamma = []
    for i in range(tower.ell):
        acc = 0
        for j, b in enumerate(beta):
            if ginv[i][j]:
                acc = tower.add(acc, tower.mul(ginv[i][j], b))
        gamma.append(acc)
    return BasisPair(tower, beta, gamma)
