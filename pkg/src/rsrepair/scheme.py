"""Linear repair schemes: repair matrices, metrics, normal forms, repair.

A scheme for node i* is a list of ell polynomials g_1..g_ell of degree < r
(dual codewords in disguise) whose values at the target are independent over
B.  Helper i hands over the subsymbols of its coordinate vector selected by
the nonzero columns of

    W_i[j][s] = Tr(g_j(alpha_i) beta_s),

and transmits rank(W_i) combinations of them, so

    io_cost  = sum over helpers of nz(W_i)      (nonzero columns)
    bandwidth = sum over helpers of rank(W_i).

An (m, t)-normalized scheme has g_j constant for j > m, no constant
combination among the first m, and the constants' supports under phi_hat
covering all but t coordinates; the support_set lists the t uncovered column
indices.  Metrics can then be read off the m x t upper blocks W_hat_i.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field

from . import linalg
from .basis import BasisPair
from .errors import InvalidScheme, SingularM, SingularRepairMatrix
from .gf import FieldTower, field_create
from .rs import RSCode
from .subspace import Subspace, b_gfp_basis, b_rank


class RepairScheme:
    def __init__(self, code: RSCode, basis: BasisPair, polys, target: int = 1,
                 normal_form=None, check: bool = True):
        self.code = code
        self.basis = basis
        self.target = int(target)
        self.normal_form = normal_form
        t = code.tower
        r = code.r
        padded = []
        for p in polys:
            p = list(p)
            if len(p) > r:
                if any(p[r:]):
                    raise InvalidScheme(
                        f"polynomial degree {len(p) - 1} exceeds r - 1 = {r - 1}; "
                        "not a dual codeword"
                    )
                p = p[:r]
            padded.append(tuple(p + [0] * (r - len(p))))
        self.polys = tuple(padded)
        if check:
            if len(self.polys) != t.ell:
                raise InvalidScheme(f"need ell = {t.ell} polynomials, got {len(self.polys)}")
            if not 1 <= self.target <= code.n:
                raise InvalidScheme(f"target {self.target} outside [1, {code.n}]")
            evals = [code.eval_poly(p, self.target_point) for p in self.polys]
            if b_rank(t, evals) != t.ell:
                raise InvalidScheme(
                    "values g_j(alpha_target) do not span F over B; "
                    "the scheme cannot determine the lost symbol"
                )

    @property
    def tower(self) -> FieldTower:
        return self.code.tower

    @property
    def ell(self) -> int:
        return self.code.tower.ell

    @property
    def target_point(self) -> int:
        return self.code.points[self.target - 1]


@dataclass(frozen=True)
class MetricsReport:
    io_cost: int
    bandwidth: int
    method: str
    per_node: tuple  # (node, nz, rank) for each helper, in node order

    def __post_init__(self):
        assert self.io_cost == sum(nz for _, nz, _ in self.per_node)
        assert self.bandwidth == sum(rk for _, _, rk in self.per_node)
        assert self.bandwidth <= self.io_cost


@dataclass
class NormalForm:
    """(m, t)-normalized scheme together with the transform that produced it."""

    scheme: RepairScheme
    m: int
    t: int
    support_set: tuple[int, ...]  # 1-based columns missed by every constant
    transform: list

    def __post_init__(self):
        ell = self.scheme.ell
        if not (0 <= self.t <= self.m <= ell):
            raise InvalidScheme(f"normal form needs t <= m <= ell, got ({self.m}, {self.t})")
        if len(self.support_set) != self.t:
            raise InvalidScheme("support set size must equal t")
        for j in range(self.m, ell):
            if any(self.scheme.polys[j][1:]):
                raise InvalidScheme(f"polynomial {j + 1} must be constant in normal form")

    def w_hat(self, i: int) -> list[tuple[int, ...]]:
        """Upper m x t block of W_i: rows 1..m, columns in support_set."""
        rows = repair_matrix(self.scheme, i)
        cols = [s - 1 for s in self.support_set]
        return [tuple(rows[j][c] for c in cols) for j in range(self.m)]


@dataclass
class AccessCounter:
    """Per-helper tally of subsymbols read and units transmitted."""

    per_helper: dict = field(default_factory=dict)

    def record(self, node: int, positions, transmitted: int) -> None:
        self.per_helper[node] = (tuple(positions), int(transmitted))

    @property
    def total_accessed(self) -> int:
        return sum(len(p) for p, _ in self.per_helper.values())

    @property
    def total_transmitted(self) -> int:
        return sum(tr for _, tr in self.per_helper.values())


# ---------------------------------------------------------------------------
# matrices and direct metrics


def repair_matrix(scheme: RepairScheme, i: int) -> list[tuple[int, ...]]:
    """W_i: row j is phi_hat(g_j(alpha_i)), an ell x ell matrix over B."""
    code = scheme.code
    alpha = code.points[i - 1]
    table = scheme.basis.phi_hat_table()
    return [table[code.eval_poly(p, alpha)] for p in scheme.polys]


def _eval_rows_bits(scheme: RepairScheme):
    """Iterator of (node, packed W_i rows) over helpers; q = 2 fast path."""
    code = scheme.code
    bits = scheme.basis.phi_hat_bits()
    const = [p if any(p[1:]) else bits[p[0]] for p in scheme.polys]
    for i in range(1, code.n + 1):
        if i == scheme.target:
            continue
        alpha = code.points[i - 1]
        rows = [
            c if isinstance(c, int) else bits[code.eval_poly(c, alpha)] for c in const
        ]
        yield i, rows


def metrics_direct(scheme: RepairScheme) -> MetricsReport:
    """Count nonzero columns and ranks of every W_i, no shortcuts."""
    code = scheme.code
    t = scheme.tower
    per_node = []
    if t.q == 2:
        for i, rows in _eval_rows_bits(scheme):
            mask = 0
            for r in rows:
                mask |= r
            per_node.append((i, mask.bit_count(), linalg.rank_bits(rows)))
    else:
        for i in range(1, code.n + 1):
            if i == scheme.target:
                continue
            rows = repair_matrix(scheme, i)
            nz = sum(1 for s in range(t.ell) if any(r[s] for r in rows))
            per_node.append((i, nz, linalg.rank(t, [list(r) for r in rows])))
    io = sum(nz for _, nz, _ in per_node)
    bw = sum(rk for _, _, rk in per_node)
    return MetricsReport(io_cost=io, bandwidth=bw, method="direct", per_node=tuple(per_node))


def nz_via_weight(rows, tower: FieldTower) -> int:
    """Nonzero-column count via the weight identity.

    nz(G) = sum over u in B^k of wt(uG), divided by q^(k-1)(q-1); the
    division must be exact, enforced in integer arithmetic.
    """
    rows = [list(r) for r in rows]
    k = len(rows)
    if k == 0 or not rows[0]:
        return 0
    width = len(rows[0])
    bels = tower.subfield_elements()
    cols = list(zip(*rows))
    total = 0
    for u in itertools.product(bels, repeat=k):
        w = 0
        for col in cols:
            acc = 0
            for uj, gj in zip(u, col):
                if uj and gj:
                    acc = tower.add(acc, tower.mul(uj, gj))
            if acc:
                w += 1
        total += w
    denom = tower.q ** (k - 1) * (tower.q - 1)
    if total % denom:
        raise AssertionError("weight identity sum not divisible; arithmetic bug")
    return total // denom


def _rank_profile(scheme: RepairScheme) -> dict[int, int]:
    """rank(W_i) for every helper, computed directly."""
    t = scheme.tower
    out = {}
    if t.q == 2:
        for i, rows in _eval_rows_bits(scheme):
            out[i] = linalg.rank_bits(rows)
    else:
        for i in range(1, scheme.code.n + 1):
            if i == scheme.target:
                continue
            out[i] = linalg.rank(t, [list(r) for r in repair_matrix(scheme, i)])
    return out


def metrics_weight(nf: NormalForm) -> MetricsReport:
    """Metrics from the weight identity on the m x t blocks.

    io per helper = (ell - t) + nz(W_hat_i); ranks come from the t = m block
    decomposition when it applies, else from the full matrices.
    """
    scheme = nf.scheme
    t = scheme.tower
    ell = scheme.ell
    rank_by_node = None
    if nf.t != nf.m:
        rank_by_node = _rank_profile(scheme)
    per_node = []
    for i in range(1, scheme.code.n + 1):
        if i == scheme.target:
            continue
        what = nf.w_hat(i)
        nz = (ell - nf.t) + nz_via_weight(what, t)
        if rank_by_node is None:
            rk = (ell - nf.m) + linalg.rank(t, [list(r) for r in what])
        else:
            rk = rank_by_node[i]
        per_node.append((i, nz, rk))
    io = sum(nz for _, nz, _ in per_node)
    bw = sum(rk for _, _, rk in per_node)
    return MetricsReport(io_cost=io, bandwidth=bw, method="weight_formula", per_node=tuple(per_node))


def metrics_expsum(nf: NormalForm) -> MetricsReport:
    """Metrics with io from exact character sums (see expsum.io_cost_expsum)."""
    from .expsum import io_cost_expsum, per_node_zero_columns

    scheme = nf.scheme
    ell = scheme.ell
    zcols = per_node_zero_columns(nf)
    ranks = _rank_profile(scheme)
    per_node = tuple((i, ell - zcols[i], ranks[i]) for i in sorted(ranks))
    io = io_cost_expsum(nf)
    if io != sum(nz for _, nz, _ in per_node):
        raise AssertionError("global and per-node character sums disagree")
    bw = sum(rk for _, _, rk in per_node)
    return MetricsReport(io_cost=io, bandwidth=bw, method="expsum", per_node=per_node)


# ---------------------------------------------------------------------------
# transforms and normalization


def transform(scheme: RepairScheme, M) -> RepairScheme:
    """Replace g by M g for an invertible matrix over B; metrics-preserving."""
    t = scheme.tower
    ell = scheme.ell
    M = [list(r) for r in M]
    bset = set(t.subfield_elements())
    if any(e not in bset for r in M for e in r):
        raise SingularM("transform entries must lie in B")
    if not linalg.is_invertible(t, M):
        raise SingularM("transform matrix is singular over B")
    r = scheme.code.r
    new_polys = []
    for i in range(ell):
        coeffs = []
        for c in range(r):
            acc = 0
            for j in range(ell):
                mij = M[i][j]
                cj = scheme.polys[j][c]
                if mij and cj:
                    acc = t.add(acc, t.mul(mij, cj))
            coeffs.append(acc)
        new_polys.append(coeffs)
    return RepairScheme(scheme.code, scheme.basis, new_polys, scheme.target)


def normalize(scheme: RepairScheme) -> NormalForm:
    """Bring a scheme to (m, t)-normal form.

    U = {u in B^ell : sum u_j g_j is constant} is the kernel of the map to
    the nonconstant coefficient block, solved over GF(p) digits; a basis of U
    supplies the constant rows, greedily extended by standard unit vectors
    (first independent index wins) to an invertible transform.
    """
    t = scheme.tower
    ell = scheme.ell
    a = t.a
    r = scheme.code.r
    bb = b_gfp_basis(t)
    # constraint matrix over GF(p): unknown digits (j, d) -> nonconstant coeffs
    cols = []
    for j in range(ell):
        for s in bb:
            col = []
            for c in range(1, r):
                col.extend(t.coords(t.mul(s, scheme.polys[j][c])))
            cols.append(col)
    mat = [list(row) for row in zip(*cols)] if cols and cols[0] else []
    ker = linalg.right_kernel(t, mat, ell * a) if mat else linalg.identity(ell * a)
    uvecs = []
    for v in ker:
        u = []
        for j in range(ell):
            acc = 0
            for d, s in enumerate(bb):
                dig = v[j * a + d]
                if dig:
                    acc = t.add(acc, t.mul(dig, s))
            u.append(acc)
        uvecs.append(u)
    urows, _ = linalg.rref(t, uvecs)
    m = ell - len(urows)
    ext = []
    for idx in range(ell):
        e = [0] * ell
        e[idx] = 1
        if linalg.rank(t, urows + ext + [e]) > len(urows) + len(ext):
            ext.append(e)
        if len(ext) == m:
            break
    M = ext + urows
    new_scheme = transform(scheme, M)
    covered = set()
    for j in range(m, ell):
        w = new_scheme.basis.vectorize_dual(new_scheme.polys[j][0])
        covered |= {s + 1 for s, cval in enumerate(w) if cval}
    support = tuple(s for s in range(1, ell + 1) if s not in covered)
    nf = NormalForm(scheme=new_scheme, m=m, t=len(support), support_set=support, transform=M)
    new_scheme.normal_form = nf
    return nf


# ---------------------------------------------------------------------------
# repair


def repair_node(scheme: RepairScheme, codeword, counter: AccessCounter | None = None):
    """Recover the target symbol from the helpers' subsymbols.

    Solves W_{i*} phi(c_{i*})^T = -sum_i W_i phi(c_i)^T over B, reading only
    the subsymbol positions in nonzero columns of each W_i.  Returns the
    recovered element and the counter (accessed positions, transmitted units).
    """
    t = scheme.tower
    ell = scheme.ell
    code = scheme.code
    if counter is None:
        counter = AccessCounter()
    w_star = [list(r) for r in repair_matrix(scheme, scheme.target)]
    if linalg.rank(t, w_star) != ell:
        raise SingularRepairMatrix("repair matrix at the target is singular")
    rhs = [0] * ell
    for i in range(1, code.n + 1):
        if i == scheme.target:
            continue
        rows = repair_matrix(scheme, i)
        positions = [s + 1 for s in range(ell) if any(r[s] for r in rows)]
        v = scheme.basis.phi_table()[codeword[i - 1]]
        y = []
        for row in rows:
            acc = 0
            for s in positions:
                rs, vs = row[s - 1], v[s - 1]
                if rs and vs:
                    acc = t.add(acc, t.mul(rs, vs))
            y.append(acc)
        rhs = [t.add(a, b) for a, b in zip(rhs, y)]
        counter.record(i, positions, linalg.rank(t, [list(r) for r in rows]))
    rhs = [t.neg(v) for v in rhs]
    x = linalg.solve(t, w_star, rhs)
    return scheme.basis.devectorize(x), counter


# ---------------------------------------------------------------------------
# scheme files


def save_scheme(scheme: RepairScheme, path: str) -> None:
    t = scheme.tower
    doc = {
        "field": t.to_json(),
        "basis": scheme.basis.to_json(),
        "evaluation_subspace": scheme.code.A.to_json(),
        "target": scheme.target,
        "polys": [[list(t.coords(c)) for c in p] for p in scheme.polys],
    }
    if scheme.normal_form is not None:
        nf = scheme.normal_form
        doc["normal_form"] = {"m": nf.m, "t": nf.t, "support_set": list(nf.support_set)}
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=1)
        fh.write("\n")


def load_scheme(path: str) -> RepairScheme:
    with open(path) as fh:
        doc = json.load(fh)
    fspec = doc["field"]
    t = field_create(fspec["p"], fspec["a"], fspec["ell"])
    if list(t.modulus) != list(fspec["modulus"]):
        t = FieldTower.from_json(fspec)
    bp = BasisPair.from_json(t, doc["basis"])
    A = Subspace.from_json(t, doc["evaluation_subspace"])
    polys = [[t.element(c) for c in p] for p in doc["polys"]]
    rr = len(polys[0]) if polys else 0
    if any(len(p) != rr for p in polys):
        raise InvalidScheme("polynomials must share the padded length r")
    code = RSCode(A, len(A.enumerate()) - rr)
    scheme = RepairScheme(code, bp, polys, target=doc.get("target", 1))
    nfspec = doc.get("normal_form")
    if nfspec:
        nf = NormalForm(
            scheme=scheme,
            m=nfspec["m"],
            t=nfspec["t"],
            support_set=tuple(nfspec["support_set"]),
            transform=linalg.identity(t.ell),
        )
        covered = set()
        for j in range(nf.m, t.ell):
            w = bp.vectorize_dual(scheme.polys[j][0])
            covered |= {s + 1 for s, cval in enumerate(w) if cval}
        if tuple(s for s in range(1, t.ell + 1) if s not in covered) != nf.support_set:
            raise InvalidScheme("stored support set does not match the constants")
        scheme.normal_form = nf
    return scheme
