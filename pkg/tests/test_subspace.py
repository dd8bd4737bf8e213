"""Subspace spans, trace kernels, and the intersection dimension identity."""

import random

import pytest

from rsrepair import Subspace, field_create
from rsrepair.subspace import b_rank, rank_over_subfield


def test_span_basics(gf16):
    A = Subspace.span(gf16, [1, 2])
    assert A.dim == 2
    pts = A.enumerate()
    assert len(pts) == 4 and pts[0] == 0
    assert set(pts) == {0, 1, 2, 3}
    assert all(A.contains(x) for x in pts)
    assert not A.contains(4)
    # closing the span leaves it unchanged, order is deterministic
    assert Subspace.span(gf16, [3, 1]).enumerate() == pts


def test_enumerate_matches_combinations(gf9):
    A = Subspace.span(gf9, [1, 3])
    got = set(A.enumerate())
    want = set()
    for u in gf9.subfield_elements():
        for v in gf9.subfield_elements():
            want.add(gf9.add(gf9.mul(u, 1), gf9.mul(v, 3)))
    assert got == want and len(got) == 9


def test_full_field_and_zero(gf16):
    assert Subspace.full_field(gf16).dim == 4
    assert len(Subspace.full_field(gf16).enumerate()) == 16
    zero = Subspace.span(gf16, [])
    assert zero.dim == 0 and zero.enumerate() == [0]


@pytest.mark.parametrize("p,a,ell", [(2, 1, 4), (3, 1, 2), (2, 2, 2)])
def test_trace_kernel(p, a, ell):
    t = field_create(p, a, ell)
    K = Subspace.trace_kernel(t)
    assert K.dim == ell - 1
    for x in range(t.size):
        assert K.contains(x) == (t.trace_to_subfield(x) == 0)


def test_scaled_trace_kernel_membership(gf16):
    for beta in range(1, 16):
        S = Subspace.scaled_trace_kernel(beta, gf16)
        assert S.dim == 3
        for x in range(16):
            assert S.contains(x) == (gf16.trace_to_subfield(gf16.mul(beta, x)) == 0)


def test_dimension_identity_single_beta_exhaustive():
    # dim(beta^-1 K) = ell - 1 for every nonzero beta, all ell up to 8
    for ell in range(2, 9):
        t = field_create(2, 1, ell)
        for beta in range(1, t.size):
            assert Subspace.scaled_trace_kernel(beta, t).dim == ell - 1


def test_dimension_identity_pairs_exhaustive(gf16):
    # exhaustive over all nonzero pairs in GF(16): rank 1 if dependent else 2
    for b1 in range(1, 16):
        for b2 in range(1, 16):
            got = Subspace.scaled_trace_kernel(b1, gf16).intersect(
                Subspace.scaled_trace_kernel(b2, gf16)
            ).dim
            assert got == 4 - b_rank(gf16, [b1, b2])


def test_dimension_identity_random_tuples():
    rng = random.Random(17)
    for _ in range(120):
        p, a, ell = rng.choice([(2, 1, 6), (2, 1, 8), (3, 1, 3), (2, 2, 2)])
        t = field_create(p, a, ell)
        betas = [rng.randrange(1, t.size) for _ in range(rng.randint(1, ell))]
        kernels = [Subspace.scaled_trace_kernel(b, t) for b in betas]
        got = kernels[0].intersect(*kernels[1:]).dim
        assert got == ell - b_rank(t, betas)


def test_intersect_add_dimension_formula(gf16):
    rng = random.Random(23)
    for _ in range(60):
        U = Subspace.span(gf16, [rng.randrange(16) for _ in range(rng.randint(0, 3))])
        V = Subspace.span(gf16, [rng.randrange(16) for _ in range(rng.randint(0, 3))])
        assert U.dim + V.dim == U.add(V).dim + U.intersect(V).dim


def test_b_rank_vs_subfield_rank(gf16):
    rng = random.Random(4)
    for _ in range(50):
        elems = [rng.randrange(16) for _ in range(rng.randint(1, 5))]
        assert b_rank(gf16, elems) == rank_over_subfield(gf16, elems, 2)


def test_b_rank_gf4_subfield():
    # rank over the intermediate field is coarser than over the prime field
    t = field_create(2, 1, 4)
    omega = t.subfield(4)[1]  # generator of GF(4) inside GF(16)
    assert b_rank(t, [1, omega]) == 2
    assert rank_over_subfield(t, [1, omega], 4) == 1


def test_b_basis_deterministic(gf16):
    A = Subspace.span(gf16, [5, 9, 12])
    assert list(A.b_basis()) == list(Subspace.span(gf16, [12, 5, 9]).b_basis())


def test_json_roundtrip(gf16):
    A = Subspace.span(gf16, [5, 9])
    B = Subspace.from_json(gf16, A.to_json())
    assert B == A and B.enumerate() == A.enumerate()
