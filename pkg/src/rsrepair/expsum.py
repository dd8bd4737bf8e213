"""Exact additive character sums.

chi(x) = zeta_p ** absolute_trace(x) takes values among the p-th roots of
unity, so any sum of chi values is stored as an integer count per root.
Everything stays in integer arithmetic; floats appear only when a sum is
compared against an analytic bound.
"""

from __future__ import annotations

import cmath
import itertools
import math

from .errors import (
    CrossCheckMismatch,
    DegreeSharesCharacteristic,
    NonIntegerSum,
)
from .gf import FieldTower
from .subspace import Subspace


class CharSum:
    """Sum of p-th roots of unity kept as exact counts.

    counts[j] is the number of terms equal to zeta_p^j.  The sum is a
    rational integer exactly when counts[1] = ... = counts[p-1], in which
    case its value is counts[0] - counts[1] (the nonzero roots add to -1).
    """

    __slots__ = ("p", "counts")

    def __init__(self, p: int, counts=None):
        self.p = p
        self.counts = [0] * p if counts is None else list(counts)
        if len(self.counts) != p:
            raise ValueError("need one count per residue")

    def tally(self, residue: int, mult: int = 1) -> None:
        self.counts[residue % self.p] += mult

    def merge(self, other: "CharSum") -> "CharSum":
        if other.p != self.p:
            raise ValueError("mixed characteristics")
        for j, c in enumerate(other.counts):
            self.counts[j] += c
        return self

    def is_rational_integer(self) -> bool:
        return len(set(self.counts[1:])) <= 1

    def as_integer(self) -> int:
        if not self.is_rational_integer():
            raise NonIntegerSum(f"counts {self.counts} do not collapse to an integer")
        return self.counts[0] - (self.counts[1] if self.p > 1 else 0)

    def complex_value(self) -> complex:
        return sum(
            c * cmath.exp(2j * math.pi * j / self.p) for j, c in enumerate(self.counts)
        )

    def __repr__(self):
        return f"CharSum(p={self.p}, counts={self.counts})"


def char_sum(values, tower: FieldTower) -> CharSum:
    """Tally chi over an iterable of field elements."""
    cs = CharSum(tower.p)
    tr = tower.absolute_trace
    for v in values:
        cs.tally(tr(v))
    return cs


def subspace_char_sum(G: Subspace, scale: int, tower: FieldTower) -> int:
    """Sum of chi(scale * alpha) over a subspace, two independent ways.

    The direct tally must agree with the dichotomy: |G| when scale * G lies
    in the kernel of the trace to B, and 0 otherwise.  Disagreement means an
    arithmetic bug, reported rather than silently averaged away.
    """
    direct = char_sum((tower.mul(scale, alpha) for alpha in G.enumerate()), tower)
    value = direct.as_integer()
    vanishes = all(
        tower.trace_to_subfield(tower.mul(scale, b)) == 0 for b in G.b_basis()
    )
    expected = tower.q ** G.dim if vanishes else 0
    if value != expected:
        raise CrossCheckMismatch(
            f"character sum over subspace: tally gives {value}, dichotomy {expected}"
        )
    return value


def _normal_form_tally(nf, points) -> CharSum:
    """Tally chi(g_u(alpha) beta_s) over s in support, u in B^m, given alphas."""
    scheme = nf.scheme
    t = scheme.tower
    bp = scheme.basis
    bels = t.subfield_elements()
    betas = [bp.beta[s - 1] for s in nf.support_set]
    tr = t.absolute_trace
    cs = CharSum(t.p)
    for alpha in points:
        evals = [scheme.code.eval_poly(p, alpha) for p in scheme.polys[: nf.m]]
        for u in itertools.product(bels, repeat=nf.m):
            gu = 0
            for uj, ej in zip(u, evals):
                if uj and ej:
                    gu = t.add(gu, t.mul(uj, ej))
            for b in betas:
                cs.tally(tr(t.mul(gu, b)))
    return cs


def io_cost_expsum(nf) -> int:
    """I/O cost of an (m, t)-normalized scheme from exact character sums.

    io = (n - 1) ell - (1 / q^m) sum over s in support, u in B^m, alpha in A
    of chi(g_u(alpha) beta_s).  The inner u-sum collapses per (alpha, s) to
    q^m or 0, so the total must divide exactly.
    """
    scheme = nf.scheme
    t = scheme.tower
    code = scheme.code
    total = _normal_form_tally(nf, code.points).as_integer()
    qm = t.q**nf.m
    assert total % qm == 0, "u-sum failed to collapse; arithmetic bug"
    return (code.n - 1) * t.ell - total // qm


def per_node_zero_columns(nf) -> dict[int, int]:
    """Zero-column count of each helper's W_hat block, via character sums.

    For helper i the (s, u)-tally equals q^m times the number of support
    columns where W_hat_i vanishes.  The target must contribute zero, since
    its repair matrix has no zero column.
    """
    scheme = nf.scheme
    t = scheme.tower
    code = scheme.code
    qm = t.q**nf.m
    out = {}
    for i in range(1, code.n + 1):
        total = _normal_form_tally(nf, [code.points[i - 1]]).as_integer()
        assert total % qm == 0, "u-sum failed to collapse; arithmetic bug"
        z = total // qm
        if i == scheme.target:
            assert z == 0, "target repair matrix has a zero column"
        else:
            out[i] = z
    return out


def weil_check(coeffs, tower: FieldTower) -> dict:
    """Compare a full-field character sum against (e - 1) sqrt(|F|).

    Applies to f of degree e >= 1 with e coprime to the characteristic;
    otherwise the bound is not valid and the call refuses.
    """
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    e = len(coeffs) - 1
    if e < 1 or e % tower.p == 0:
        raise DegreeSharesCharacteristic(
            f"degree {max(e, 0)} shares a factor with p = {tower.p}"
        )
    cs = CharSum(tower.p)
    tr = tower.absolute_trace
    for alpha in range(tower.size):
        acc = 0
        for c in reversed(coeffs):
            acc = tower.add(tower.mul(acc, alpha), c)
        cs.tally(tr(acc))
    value = cs.complex_value()
    bound = (e - 1) * math.sqrt(tower.size)
    return {
        "sum": value,
        "magnitude": abs(value),
        "bound": bound,
        "ok": abs(value) <= bound + 1e-9,
    }
