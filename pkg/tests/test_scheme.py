"""Repair schemes: matrices, metrics, normal forms, repair, scheme files."""

import random

import pytest

from rsrepair import (
    AccessCounter,
    RSCode,
    RepairScheme,
    Subspace,
    dual_basis,
    field_create,
    load_scheme,
    metrics_direct,
    metrics_expsum,
    metrics_weight,
    normalize,
    nz_via_weight,
    repair_matrix,
    repair_node,
    save_scheme,
    transform,
)
from rsrepair.errors import InvalidScheme, SingularM
from rsrepair.suites import random_normalized_scheme


def _nz_scan(rows):
    """Independent oracle: count columns with any nonzero entry."""
    if not rows:
        return 0
    return sum(1 for s in range(len(rows[0])) if any(r[s] for r in rows))


def test_weight_formula_oracle_500():
    rng = random.Random(41)
    towers = [field_create(2, 1, 4), field_create(3, 1, 2), field_create(2, 1, 6)]
    for _ in range(500):
        t = rng.choice(towers)
        k = rng.randint(0, 4)
        width = rng.randint(0, 6)
        bset = list(t.subfield_elements())
        rows = [tuple(rng.choice(bset) for _ in range(width)) for _ in range(k)]
        assert nz_via_weight(rows, t) == _nz_scan(rows)


def _toy_scheme(seed=0, target=1):
    """GF(16) full length r = 3 scheme with dual basis constants in the tail."""
    t = field_create(2, 1, 4)
    bp = dual_basis([9, 15, 1, 5], t)
    code = RSCode(Subspace.full_field(t), 13)
    rng = random.Random(seed)
    while True:
        polys = [
            [rng.randrange(16), rng.randrange(1, 16), rng.randrange(16)],
            [rng.randrange(16), rng.randrange(16), rng.randrange(1, 16)],
            [bp.gamma[0]],
            [bp.gamma[1]],
        ]
        try:
            return RepairScheme(code, bp, polys, target=target), bp
        except InvalidScheme:
            continue


def test_repair_matrix_entries(gf16):
    scheme, bp = _toy_scheme()
    for i in (1, 5, 12):
        rows = repair_matrix(scheme, i)
        point = scheme.code.points[i - 1]
        for j, poly in enumerate(scheme.polys):
            val = scheme.code.eval_poly(poly, point)
            for s in range(4):
                want = gf16.trace_to_subfield(gf16.mul(val, bp.beta[s]))
                assert rows[j][s] == want


def test_three_metrics_agree_toy():
    scheme, _ = _toy_scheme(3)
    nf = normalize(scheme)
    a, b, c = metrics_direct(scheme), metrics_weight(nf), metrics_expsum(nf)
    assert a.io_cost == b.io_cost == c.io_cost
    assert a.bandwidth == b.bandwidth == c.bandwidth
    assert a.per_node == b.per_node == c.per_node
    assert a.bandwidth <= a.io_cost


def test_normalize_shapes():
    scheme, bp = _toy_scheme(5)
    nf = normalize(scheme)
    assert nf.m == 2
    # tail constants are gamma_1 and gamma_2, so columns 1 and 2 are covered
    assert nf.support_set == (3, 4) and nf.t == 2
    for j in range(nf.m, scheme.ell):
        assert not any(nf.scheme.polys[j][1:])


def test_normalize_all_constants():
    t = field_create(2, 1, 4)
    bp = dual_basis([9, 15, 1, 5], t)
    code = RSCode(Subspace.full_field(t), 13)
    scheme = RepairScheme(code, bp, [[g] for g in bp.gamma])
    nf = normalize(scheme)
    assert nf.m == 0 and nf.t == 0 and nf.support_set == ()
    rep = metrics_direct(nf.scheme)
    # every helper reads and sends everything
    assert rep.io_cost == rep.bandwidth == (code.n - 1) * 4
    assert metrics_weight(nf).io_cost == rep.io_cost
    assert metrics_expsum(nf).io_cost == rep.io_cost


def test_normalize_mixed_constant_combo():
    # g_2 = g_1 + constant: normal form must fold it into the constant tail
    t = field_create(2, 1, 4)
    bp = dual_basis([9, 15, 1, 5], t)
    code = RSCode(Subspace.full_field(t), 13)
    g1 = [3, 7, 9]
    g2 = [t.add(3, bp.gamma[0]), 7, 9]
    scheme = RepairScheme(code, bp, [g1, g2, [bp.gamma[1]], [bp.gamma[2]]])
    nf = normalize(scheme)
    assert nf.m == 1 and nf.t == 1
    direct = metrics_direct(scheme)
    assert metrics_weight(nf).io_cost == direct.io_cost
    assert metrics_expsum(nf).bandwidth == direct.bandwidth


def test_transform_preserves_metrics():
    scheme, _ = _toy_scheme(9)
    t = scheme.tower
    M = [
        [1, 1, 0, 0],
        [0, 1, 0, 0],
        [0, 1, 1, 0],
        [1, 0, 1, 1],
    ]
    moved = transform(scheme, M)
    a, b = metrics_direct(scheme), metrics_direct(moved)
    assert (a.io_cost, a.bandwidth, a.per_node) == (b.io_cost, b.bandwidth, b.per_node)
    with pytest.raises(SingularM):
        transform(scheme, [[1, 1, 0, 0], [1, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    with pytest.raises(SingularM):
        transform(scheme, [[4, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])


def test_repair_roundtrip_counts():
    scheme, _ = _toy_scheme(13)
    code = scheme.code
    rep = metrics_direct(scheme)
    rng = random.Random(99)
    for _ in range(20):
        cw = code.encode([rng.randrange(16) for _ in range(code.k)])
        value, counter = repair_node(scheme, cw, AccessCounter())
        assert value == cw[scheme.target - 1]
        assert counter.total_accessed == rep.io_cost
        assert counter.total_transmitted == rep.bandwidth
        # per helper tallies match the per node report
        for node, nz, rank in rep.per_node:
            positions, sent = counter.per_helper[node]
            assert len(positions) == nz and sent == rank


def test_repair_shifted_target():
    scheme, _ = _toy_scheme(21, target=6)
    assert scheme.target == 6
    code = scheme.code
    cw = code.random_codeword(5)
    value, counter = repair_node(scheme, cw, AccessCounter())
    assert value == cw[5]
    assert 6 not in counter.per_helper and 1 in counter.per_helper


def test_random_normalized_targets_vary():
    rng = random.Random(2)
    targets = set()
    for _ in range(30):
        nf, params = random_normalized_scheme(rng)
        targets.add(params["target"])
        cw = nf.scheme.code.random_codeword(rng.getrandbits(16))
        value, _ = repair_node(nf.scheme, cw, AccessCounter())
        assert value == cw[nf.scheme.target - 1]
    assert len(targets) > 3


def test_invalid_schemes():
    t = field_create(2, 1, 4)
    bp = dual_basis([9, 15, 1, 5], t)
    code = RSCode(Subspace.full_field(t), 13)
    with pytest.raises(InvalidScheme):
        RepairScheme(code, bp, [[1, 0, 0]] * 3)  # wrong count
    with pytest.raises(InvalidScheme):
        RepairScheme(code, bp, [[0, 0, 0, 1]] + [[g] for g in bp.gamma[1:]])  # degree r
    with pytest.raises(InvalidScheme):
        RepairScheme(code, bp, [[1], [1], [2], [4]])  # constants do not span
    with pytest.raises(InvalidScheme):
        RepairScheme(code, bp, [[g] for g in bp.gamma], target=17)


def test_w_hat_block(gf16):
    scheme, _ = _toy_scheme(7)
    nf = normalize(scheme)
    for i in (2, 3, 11):
        rows = repair_matrix(nf.scheme, i)
        block = nf.w_hat(i)
        assert len(block) == nf.m
        for j in range(nf.m):
            assert block[j] == tuple(rows[j][s - 1] for s in nf.support_set)


def test_save_load_roundtrip(tmp_path):
    scheme, _ = _toy_scheme(15)
    nf = normalize(scheme)
    path = tmp_path / "scheme.json"
    save_scheme(nf.scheme, str(path))
    loaded = load_scheme(str(path))
    assert loaded.polys == nf.scheme.polys
    assert loaded.target == nf.scheme.target
    assert loaded.basis.beta == nf.scheme.basis.beta
    assert loaded.code.points == nf.scheme.code.points
    assert loaded.normal_form is not None
    assert loaded.normal_form.m == nf.m and loaded.normal_form.support_set == nf.support_set
    a, b = metrics_direct(scheme), metrics_direct(loaded)
    assert (a.io_cost, a.bandwidth) == (b.io_cost, b.bandwidth)


def test_load_rejects_corrupt_support(tmp_path):
    import json

    scheme, _ = _toy_scheme(15)
    nf = normalize(scheme)
    path = tmp_path / "scheme.json"
    save_scheme(nf.scheme, str(path))
    doc = json.loads(path.read_text())
    doc["normal_form"]["support_set"] = [1, 2]
    path.write_text(json.dumps(doc))
    with pytest.raises(InvalidScheme):
        load_scheme(str(path))
