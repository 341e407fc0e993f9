"""Graded polynomial arithmetic over F_p for the ambient ring and the
quadric quotient ring.

Polynomials are dictionaries mapping exponent tuples to coefficients in
``[0, p)``; the zero polynomial is the empty dictionary.  A
:class:`RingSpec` fixes the number of variables, the prime, and either
no quadric (the ambient polynomial ring) or the canonical split quadric

    x0*x1 + x2*x3 + ...            (even number of variables)
    x0*x1 + ... + x_{N-1}**2       (odd number of variables)

whose quotient ring has the monomials not divisible by ``x0*x1`` as a
degreewise basis.  Reduction to that basis is a confluent one-step
rewrite ``x0*x1 -> -(tail)`` where ``tail`` only involves later
variables, so normal forms are well defined and cheap to memoise.

Monomial bases are ordered in descending graded-lexicographic order
with ``x0 > x1 > ...``; every matrix produced here indexes rows and
columns by that order, which makes all outputs canonical.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .fplinalg import FpMatrix

__all__ = [
    "RingSpec",
    "ambient_ring",
    "quotient_ring",
    "ring_for_quadric",
    "canonical_quadric",
    "poly_add",
    "poly_sub",
    "poly_scale",
    "poly_mul",
    "poly_pow",
    "ring_mul",
    "frob_power",
    "partial_derivative",
    "degree_of",
    "var_poly",
    "monomials",
    "monomial_basis",
    "basis_index",
    "dim_piece",
    "dim_ambient_piece",
    "normal_form",
    "check_smooth",
    "mult_matrix",
    "vector_of",
    "poly_of",
    "shift_data",
]

Poly = dict  # {exponent tuple: coefficient in [0, p)}


# ---------------------------------------------------------------------------
# ring specifications
# ---------------------------------------------------------------------------

def canonical_quadric(nvars: int) -> tuple:
    """The canonical split quadric in ``nvars`` variables, as sorted pairs."""
    if nvars < 1:
        raise ValueError("need at least one variable")
    terms = []
    i = 0
    while nvars - i >= 2:
        e = [0] * nvars
        e[i] = 1
        e[i + 1] = 1
        terms.append((tuple(e), 1))
        i += 2
    if i < nvars:  # one variable left: close with its square
        e = [0] * nvars
        e[i] = 2
        terms.append((tuple(e), 1))
    return tuple(terms)


@dataclass(frozen=True)
class RingSpec:
    """Number of variables, prime, and optional quadric relation."""

    nvars: int
    p: int
    quadric: tuple | None = None

    def __post_init__(self):
        if self.nvars < 1:
            raise ValueError("need at least one variable")
        if self.p < 2:
            raise ValueError("modulus must be a prime >= 2")
        if self.quadric is not None and self.quadric != canonical_quadric(self.nvars):
            raise ValueError(
                "only the canonical split quadric is supported as a relation"
            )

    @property
    def is_quotient(self) -> bool:
        return self.quadric is not None

    @property
    def variety_dim(self) -> int:
        """Projective dimension of the cut-out variety (quotient specs)."""
        if not self.is_quotient:
            raise ValueError("ambient ring has no associated hypersurface")
        return self.nvars - 2

    def ambient(self) -> "RingSpec":
        return RingSpec(self.nvars, self.p, None)

    def quadric_poly(self) -> Poly:
        if self.quadric is None:
            raise ValueError("ambient ring spec carries no quadric")
        return {e: c % self.p for e, c in self.quadric}


def ambient_ring(nvars: int, p: int) -> RingSpec:
    return RingSpec(nvars, p, None)


def quotient_ring(nvars: int, p: int) -> RingSpec:
    return RingSpec(nvars, p, canonical_quadric(nvars))


def ring_for_quadric(n: int, p: int) -> RingSpec:
    """Coordinate ring of the smooth split quadric of dimension ``n``."""
    if n < 1:
        raise ValueError("quadric dimension must be >= 1")
    return quotient_ring(n + 2, p)


# ---------------------------------------------------------------------------
# raw polynomial arithmetic (ambient)
# ---------------------------------------------------------------------------

def poly_add(a: Poly, b: Poly, p: int) -> Poly:
    out = dict(a)
    for e, c in b.items():
        v = (out.get(e, 0) + c) % p
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def poly_scale(a: Poly, s: int, p: int) -> Poly:
    s %= p
    if s == 0:
        return {}
    return {e: (c * s) % p for e, c in a.items()}


def poly_sub(a: Poly, b: Poly, p: int) -> Poly:
    return poly_add(a, poly_scale(b, p - 1, p), p)


def poly_mul(a: Poly, b: Poly, p: int) -> Poly:
    out: Poly = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            v = (out.get(e, 0) + ca * cb) % p
            if v:
                out[e] = v
            else:
                out.pop(e, None)
    return out


def poly_pow(a: Poly, k: int, p: int, nvars: int) -> Poly:
    out: Poly = {(0,) * nvars: 1}
    for _ in range(k):
        out = poly_mul(out, a, p)
    return out


def var_poly(i: int, nvars: int) -> Poly:
    e = [0] * nvars
    e[i] = 1
    return {tuple(e): 1}


def degree_of(a: Poly) -> int | None:
    """Degree of a homogeneous polynomial; None for zero; error if mixed."""
    degs = {sum(e) for e in a}
    if not degs:
        return None
    if len(degs) > 1:
        raise ValueError(f"polynomial is not homogeneous: degrees {sorted(degs)}")
    return degs.pop()


def frob_power(a: Poly, p: int) -> Poly:
    """The p-th power of a polynomial over F_p: exponents scale by p."""
    return {tuple(x * p for x in e): c for e, c in a.items()}


def partial_derivative(a: Poly, i: int, p: int) -> Poly:
    out: Poly = {}
    for e, c in a.items():
        if e[i]:
            v = (c * e[i]) % p
            if v:
                ne = list(e)
                ne[i] -= 1
                out[tuple(ne)] = v
    return out


# ---------------------------------------------------------------------------
# monomial bases
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def monomials(nvars: int, d: int) -> tuple:
    """All degree-d monomials, descending graded-lex, x0 strongest."""
    if d < 0:
        return ()
    if nvars == 1:
        return ((d,),)
    out = []
    for e0 in range(d, -1, -1):
        for rest in monomials(nvars - 1, d - e0):
            out.append((e0,) + rest)
    return tuple(out)


def dim_ambient_piece(nvars: int, d: int) -> int:
    if d < 0:
        return 0
    return math.comb(d + nvars - 1, nvars - 1)


@lru_cache(maxsize=None)
def monomial_basis(spec: RingSpec, d: int) -> tuple:
    """Basis monomials of the degree-d piece of the (quotient) ring."""
    if d < 0:
        return ()
    all_mons = monomials(spec.nvars, d)
    if not spec.is_quotient:
        return all_mons
    if spec.nvars == 1:  # q = x0**2
        return tuple(e for e in all_mons if e[0] < 2)
    return tuple(e for e in all_mons if not (e[0] and e[1]))


@lru_cache(maxsize=None)
def basis_index(spec: RingSpec, d: int) -> dict:
    return {e: i for i, e in enumerate(monomial_basis(spec, d))}


def dim_piece(spec: RingSpec, d: int) -> int:
    if not spec.is_quotient:
        return dim_ambient_piece(spec.nvars, d)
    return dim_ambient_piece(spec.nvars, d) - dim_ambient_piece(spec.nvars, d - 2)


# ---------------------------------------------------------------------------
# normal forms modulo the canonical split quadric
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _tail_power(spec: RingSpec, k: int) -> tuple:
    """Sorted items of ``(-(q - x0*x1))**k``, involving variables >= 2 only."""
    p = spec.p
    if k == 0:
        return (((0,) * spec.nvars, 1),)
    tail = poly_sub({}, poly_sub(spec.quadric_poly(), poly_mul(
        var_poly(0, spec.nvars), var_poly(1, spec.nvars), p), p), p)
    prev = dict(_tail_power(spec, k - 1))
    return tuple(sorted(poly_mul(prev, tail, p).items()))


@lru_cache(maxsize=None)
def _nf_monomial(spec: RingSpec, exps: tuple) -> tuple:
    """Normal form of a monomial as sorted (monomial, coeff) items."""
    if spec.nvars == 1:
        return () if exps[0] >= 2 else ((exps, 1),)
    k = min(exps[0], exps[1])
    if k == 0:
        return ((exps, 1),)
    stem = (exps[0] - k, exps[1] - k) + exps[2:]
    out = {}
    for e, c in _tail_power(spec, k):
        m = tuple(x + y for x, y in zip(stem, e))
        out[m] = c
    return tuple(sorted(out.items()))


def normal_form(spec: RingSpec, a: Poly) -> Poly:
    """Reduce a polynomial to the quotient-basis normal form."""
    if not spec.is_quotient:
        return dict(a)
    p = spec.p
    out: Poly = {}
    for e, c in a.items():
        for m, cf in _nf_monomial(spec, e):
            v = (out.get(m, 0) + c * cf) % p
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    return out


def ring_mul(spec: RingSpec, a: Poly, b: Poly) -> Poly:
    """Product in the ring of the spec (normal form applied if quotient)."""
    return normal_form(spec, poly_mul(a, b, spec.p))


# ---------------------------------------------------------------------------
# smoothness of the cut-out hypersurface
# ---------------------------------------------------------------------------

def check_smooth(spec: RingSpec) -> None:
    """Verify the quadric hypersurface is smooth; raise ValueError if not.

    The singular locus is the common zero set of the quadric and its
    partial derivatives.  Each partial of a split quadric is a scalar
    multiple of one variable (possibly zero in characteristic 2), so the
    partials cut out a coordinate subspace; the hypersurface is smooth
    exactly when the quadric restricted to that subspace has only the
    trivial zero, which for a diagonal restriction means every remaining
    variable appears with a nonzero square coefficient.
    """
    if not spec.is_quotient:
        raise ValueError("ambient ring spec cuts out no hypersurface")
    p = spec.p
    q = spec.quadric_poly()
    forced_zero = set()
    for i in range(spec.nvars):
        d = partial_derivative(q, i, p)
        if len(d) > 1:
            raise ValueError("quadric is not in split coordinates")
        for e, c in d.items():
            if sum(e) != 1 or c % p == 0:
                raise ValueError("unexpected partial derivative shape")
            forced_zero.add(e.index(1))
    remaining = [i for i in range(spec.nvars) if i not in forced_zero]
    # restrict q to the remaining coordinate subspace
    restricted: Poly = {}
    for e, c in q.items():
        if all(e[i] == 0 for i in forced_zero):
            restricted[e] = c
    diag_vars = set()
    for e, c in restricted.items():
        support = [i for i, x in enumerate(e) if x]
        if len(support) != 1 or e[support[0]] != 2 or c % p == 0:
            raise ValueError("singular: restricted quadric is not diagonal")
        diag_vars.add(support[0])
    if set(remaining) != diag_vars:
        raise ValueError(
            f"singular locus is positive dimensional: free variables "
            f"{sorted(set(remaining) - diag_vars)} survive"
        )


# ---------------------------------------------------------------------------
# graded pieces as vectors and matrices
# ---------------------------------------------------------------------------

def vector_of(spec: RingSpec, a: Poly, d: int) -> np.ndarray:
    """Coefficient vector of a degree-d element over the piece basis."""
    idx = basis_index(spec, d)
    v = np.zeros(len(idx), dtype=np.int64)
    for e, c in a.items():
        if sum(e) != d:
            raise ValueError(f"term of degree {sum(e)} in degree-{d} piece")
        v[idx[e]] = c % spec.p
    return v


def poly_of(spec: RingSpec, vec: np.ndarray, d: int) -> Poly:
    basis = monomial_basis(spec, d)
    if len(vec) != len(basis):
        raise ValueError("vector length does not match piece dimension")
    return {basis[i]: int(c) % spec.p for i, c in enumerate(vec) if c % spec.p}


@lru_cache(maxsize=None)
def shift_data(spec: RingSpec, d_from: int, mono: tuple):
    """Scatter data for multiplication by a monomial on a graded piece.

    Returns int64 arrays ``(src, dst, coeff)``: multiplying the basis
    monomial at index ``src[k]`` of degree ``d_from`` by ``mono``
    contributes ``coeff[k]`` times the basis monomial at index
    ``dst[k]`` in degree ``d_from + deg(mono)``.  In the ambient ring
    each source index appears exactly once with coefficient 1.
    """
    out_idx = basis_index(spec, d_from + sum(mono))
    src, dst, cf = [], [], []
    for j, e in enumerate(monomial_basis(spec, d_from)):
        prod = tuple(x + y for x, y in zip(e, mono))
        if spec.is_quotient:
            for m, c in _nf_monomial(spec, prod):
                src.append(j)
                dst.append(out_idx[m])
                cf.append(c)
        else:
            src.append(j)
            dst.append(out_idx[prod])
            cf.append(1)
    return (
        np.asarray(src, dtype=np.int64),
        np.asarray(dst, dtype=np.int64),
        np.asarray(cf, dtype=np.int64),
    )


def mult_matrix(spec: RingSpec, f: Poly, d: int) -> FpMatrix:
    """Matrix of multiplication by homogeneous ``f``: piece d -> d + deg f.

    Column ``j`` holds the coordinates of ``f * m_j`` for the j-th basis
    monomial of degree ``d``; entry ``(i, j)`` is the coefficient of the
    i-th basis monomial of the target piece.
    """
    deg = degree_of(f)
    if deg is None:
        raise ValueError("multiplication by zero has no well-defined degree")
    rows = len(monomial_basis(spec, d + deg))
    cols = len(monomial_basis(spec, d))
    out = np.zeros((rows, cols), dtype=np.int64)
    for mono, c in f.items():
        src, dst, cf = shift_data(spec, d, mono)
        np.add.at(out, (dst, src), c * cf)
    return FpMatrix(spec.p, out)
