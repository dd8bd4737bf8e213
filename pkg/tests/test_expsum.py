"""Exact character sums: orthogonality, subspace dichotomy, analytic bound."""

import random

import pytest

from rsrepair import CharSum, char_sum, field_create, io_cost_expsum, metrics_direct, weil_check
from rsrepair.errors import DegreeSharesCharacteristic, NonIntegerSum
from rsrepair.expsum import per_node_zero_columns

from conftest import all_subspaces


def test_charsum_tally_merge():
    cs = CharSum(3)
    cs.tally(0)
    cs.tally(4)  # residue 1
    cs.tally(2, mult=5)
    assert cs.counts == [1, 1, 5]
    other = CharSum(3, [0, 4, 0])
    cs.merge(other)
    assert cs.counts == [1, 5, 5]
    assert cs.is_rational_integer() and cs.as_integer() == 1 - 5


def test_charsum_rejects_non_integer():
    cs = CharSum(3, [1, 2, 0])
    assert not cs.is_rational_integer()
    with pytest.raises(NonIntegerSum):
        cs.as_integer()
    with pytest.raises(ValueError):
        CharSum(3, [1, 2])
    with pytest.raises(ValueError):
        CharSum(2).merge(CharSum(3))


def test_charsum_complex_matches_integer():
    for p, counts in [(2, [7, 3]), (3, [4, 2, 2]), (5, [6, 1, 1, 1, 1])]:
        cs = CharSum(p, counts)
        assert abs(cs.complex_value() - cs.as_integer()) < 1e-9


@pytest.mark.parametrize("params", [(2, 1, 4), (3, 1, 2)])
def test_orthogonality_exhaustive(params):
    # sum of chi(beta x) over the whole field: |F| at beta = 0, else 0
    t = field_create(*params)
    for beta in range(t.size):
        s = char_sum((t.mul(beta, x) for x in range(t.size)), t).as_integer()
        assert s == (t.size if beta == 0 else 0)


@pytest.mark.parametrize("params", [(2, 1, 4), (3, 1, 4)])
def test_subspace_dichotomy_exhaustive(params):
    from rsrepair import subspace_char_sum

    t = field_create(*params)
    subs = all_subspaces(t)
    for G in subs:
        for scale in range(t.size):
            got = subspace_char_sum(G, scale, t)
            perp = all(
                t.trace_to_subfield(t.mul(scale, b)) == 0 for b in G.b_basis()
            )
            assert got == (t.q**G.dim if perp else 0)


def test_io_expsum_matches_direct(example1):
    _, scheme = example1
    nf = scheme.normal_form
    rep = metrics_direct(scheme)
    assert io_cost_expsum(nf) == rep.io_cost == 44


def test_per_node_zero_columns(example1):
    _, scheme = example1
    nf = scheme.normal_form
    rep = metrics_direct(scheme)
    zeros = per_node_zero_columns(nf)
    assert scheme.target not in zeros
    by_node = {node: nz for node, nz, _ in rep.per_node}
    ell = scheme.tower.ell
    # every covered column is nonzero, so nz = ell - (zero support columns)
    assert set(zeros) == set(by_node)
    for node, z in zeros.items():
        assert by_node[node] == ell - z
    assert rep.io_cost == sum(by_node.values())


def test_weil_cubic_anchor(gf16):
    # x^3 over the 16 element field meets the bound with equality
    out = weil_check([0, 0, 0, 1], gf16)
    assert out["ok"]
    assert out["bound"] == pytest.approx(8.0)
    assert out["magnitude"] == pytest.approx(8.0)


def test_weil_random_polynomials():
    rng = random.Random(17)
    towers = [field_create(2, 1, 4), field_create(3, 1, 2), field_create(2, 1, 6)]
    for _ in range(40):
        t = rng.choice(towers)
        e = rng.choice([d for d in range(1, 6) if d % t.p])
        coeffs = [rng.randrange(t.size) for _ in range(e)] + [rng.randrange(1, t.size)]
        out = weil_check(coeffs, t)
        assert out["ok"]
        assert out["bound"] == pytest.approx((e - 1) * t.size**0.5)


def test_weil_refuses_bad_degree(gf16, gf9):
    with pytest.raises(DegreeSharesCharacteristic):
        weil_check([1, 0, 3], gf16)  # degree 2, p = 2
    with pytest.raises(DegreeSharesCharacteristic):
        weil_check([0, 0, 0, 2], gf9)  # degree 3, p = 3
    with pytest.raises(DegreeSharesCharacteristic):
        weil_check([5], gf16)  # constant
    # trailing zeros stripped before the degree test
    assert weil_check([0, 1, 0, 0], gf16)["ok"]
