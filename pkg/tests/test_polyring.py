"""Checks for graded polynomial arithmetic and quotient normal forms."""

import math

import numpy as np
import pytest

from qdcoh.fplinalg import FpMatrix
from qdcoh.polyring import (
    ambient_ring,
    basis_index,
    canonical_quadric,
    check_smooth,
    degree_of,
    dim_piece,
    frob_power,
    monomial_basis,
    mult_matrix,
    normal_form,
    partial_derivative,
    poly_mul,
    poly_of,
    poly_pow,
    quotient_ring,
    ring_for_quadric,
    ring_mul,
    shift_data,
    var_poly,
    vector_of,
)


def test_canonical_quadric_shapes():
    assert canonical_quadric(2) == (((1, 1), 1),)
    assert canonical_quadric(4) == (((1, 1, 0, 0), 1), ((0, 0, 1, 1), 1))
    assert canonical_quadric(5) == (
        ((1, 1, 0, 0, 0), 1),
        ((0, 0, 1, 1, 0), 1),
        ((0, 0, 0, 0, 2), 1),
    )


@pytest.mark.parametrize("nvars", [2, 3, 4, 5, 6])
@pytest.mark.parametrize("p", [2, 3, 5])
def test_piece_dimensions_match_closed_form(nvars, p):
    amb = ambient_ring(nvars, p)
    quo = quotient_ring(nvars, p)
    for d in range(0, 9):
        assert len(monomial_basis(amb, d)) == math.comb(d + nvars - 1, nvars - 1)
        expect = math.comb(d + nvars - 1, nvars - 1) - (
            math.comb(d - 2 + nvars - 1, nvars - 1) if d >= 2 else 0
        )
        assert len(monomial_basis(quo, d)) == expect
        assert dim_piece(quo, d) == expect


def test_quadric_threefold_piece_dimensions():
    spec = ring_for_quadric(3, 3)
    assert [dim_piece(spec, d) for d in range(5)] == [1, 5, 14, 30, 55]


def test_monomial_order_is_descending_graded_lex():
    spec = ambient_ring(3, 5)
    assert monomial_basis(spec, 2) == (
        (2, 0, 0),
        (1, 1, 0),
        (1, 0, 1),
        (0, 2, 0),
        (0, 1, 1),
        (0, 0, 2),
    )


@pytest.mark.parametrize("nvars", [2, 3, 4, 5, 6])
@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_normal_form_properties(nvars, p):
    spec = quotient_ring(nvars, p)
    q = spec.quadric_poly()
    rng = np.random.default_rng(nvars * 100 + p)

    def random_poly(d):
        mons = monomial_basis(spec.ambient(), d)
        out = {}
        for e in mons:
            c = int(rng.integers(0, p))
            if c:
                out[e] = c
        return out

    for d in range(0, 5):
        f = random_poly(d)
        g = random_poly(2)
        # q reduces to zero, and so does any multiple of it
        assert normal_form(spec, q) == {}
        assert normal_form(spec, poly_mul(q, f, p)) == {}
        # normal forms are idempotent and only use basis monomials
        nf = normal_form(spec, f)
        assert normal_form(spec, nf) == nf
        allowed = set(monomial_basis(spec, d))
        assert set(nf) <= allowed
        # reduction is a ring homomorphism on products
        lhs = normal_form(spec, poly_mul(f, g, p))
        rhs = ring_mul(spec, normal_form(spec, f), normal_form(spec, g))
        assert lhs == rhs


@pytest.mark.parametrize("p", [2, 3, 5])
def test_pth_power_is_exponent_scaling(p):
    spec = ambient_ring(4, p)
    rng = np.random.default_rng(p)
    for d in [1, 2]:
        f = {}
        for e in monomial_basis(spec, d):
            c = int(rng.integers(0, p))
            if c:
                f[e] = c
        assert poly_pow(f, p, p, 4) == frob_power(f, p)


def test_partial_derivative_and_degree():
    p = 5
    f = {(2, 1): 3, (0, 3): 4}
    assert partial_derivative(f, 0, p) == {(1, 1): 6 % p}
    assert partial_derivative(f, 1, p) == {(2, 0): 3, (0, 2): 12 % p}
    assert degree_of(f) == 3
    assert degree_of({}) is None
    with pytest.raises(ValueError):
        degree_of({(1, 0): 1, (0, 2): 1})


@pytest.mark.parametrize("n", [1, 2, 3, 4])
@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_split_quadrics_are_smooth(n, p):
    check_smooth(ring_for_quadric(n, p))


def test_multiplication_matrix_by_first_variable():
    spec = ring_for_quadric(3, 3)
    m = mult_matrix(spec, var_poly(0, 5), 0)
    assert m.shape == (5, 1)
    assert m.to_lists() == [[1], [0], [0], [0], [0]]


@pytest.mark.parametrize("quotient", [False, True])
def test_multiplication_matrices_compose(quotient):
    p = 7
    spec = quotient_ring(4, p) if quotient else ambient_ring(4, p)
    x0 = var_poly(0, 4)
    x1 = var_poly(1, 4)
    for d in range(0, 4):
        a = mult_matrix(spec, x0, d + 1) @ mult_matrix(spec, x1, d)
        b = mult_matrix(spec, x1, d + 1) @ mult_matrix(spec, x0, d)
        prod = mult_matrix(spec, ring_mul(spec, x0, x1), d)
        assert a == b == prod


def test_vector_poly_round_trip():
    spec = quotient_ring(5, 5)
    f = normal_form(spec, {(1, 1, 0, 0, 0): 2, (0, 0, 2, 0, 0): 3})
    v = vector_of(spec, f, 2)
    assert poly_of(spec, v, 2) == f


def test_shift_data_matches_mult_matrix():
    spec = quotient_ring(4, 3)
    mono = (1, 1, 0, 0)
    src, dst, cf = shift_data(spec, 2, mono)
    rows = dim_piece(spec, 4)
    cols = dim_piece(spec, 2)
    out = np.zeros((rows, cols), dtype=np.int64)
    np.add.at(out, (dst, src), cf)
    out %= 3
    assert FpMatrix(3, out) == mult_matrix(spec, {mono: 1}, 2)


def test_quadric_ring_validation():
    with pytest.raises(ValueError):
        ring_for_quadric(0, 5)
    spec = ambient_ring(3, 5)
    with pytest.raises(ValueError):
        spec.quadric_poly()
    with pytest.raises(ValueError):
        check_smooth(spec)
