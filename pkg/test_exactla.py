"""
F_p 선형대수 / 다항식 테스트
"""
import numpy as np
import pytest

from app.core.equivariant.exactla import (
    Poly,
    PrimeField,
    factor,
    is_irreducible,
    is_prime,
    min_poly,
    poly_gcd,
    poly_inverse_mod,
    primitive_root,
    roots_of_unity,
    squarefree_decomposition,
)
from app.core.equivariant.exceptions import DimensionMismatchError, EquivariantError, SingularMatrixError


# ============================================================
# 소수 / 단위근
# ============================================================

@pytest.mark.parametrize("n", [2, 3, 5, 7, 11, 101, 46337])
def test_is_prime_true(n):
    assert is_prime(n)


@pytest.mark.parametrize("n", [0, 1, 4, 9, 15, 21, 91])
def test_is_prime_false(n):
    assert not is_prime(n)


def test_primitive_root_generates():
    for p in (5, 7, 11, 13):
        w = primitive_root(p)
        assert len({pow(w, k, p) for k in range(p - 1)}) == p - 1


@pytest.mark.parametrize("p,d", [(7, 3), (7, 2), (13, 4), (5, 3), (11, 10)])
def test_roots_of_unity(p, d):
    roots = roots_of_unity(p, d)
    assert roots[0] == 1
    assert len(roots) == np.gcd(d, p - 1)
    assert len(set(roots)) == len(roots)
    assert all(pow(r, d, p) == 1 for r in roots)


def test_prime_field_rejects_composite():
    with pytest.raises(EquivariantError):
        PrimeField(4)
    with pytest.raises(EquivariantError):
        PrimeField(101, limit=97)


# ============================================================
# 행렬
# ============================================================

def test_inverse_roundtrip(f7):
    a = f7.array([[1, 2], [3, 4]])
    inv = f7.inverse(a)
    assert np.array_equal(f7.matmul(a, inv), f7.eye(2))


def test_singular_matrix(f7):
    a = f7.array([[1, 2], [2, 4]])
    assert f7.rank(a) == 1
    assert f7.try_inverse(a) is None
    assert not f7.is_invertible(a)
    with pytest.raises(SingularMatrixError):
        f7.inverse(a)
    with pytest.raises(SingularMatrixError):
        f7.inv(0)


def test_nullspace_dimension(f7):
    rng = np.random.default_rng(3)
    a = f7.random_matrix(rng, 3, 6)
    null = f7.nullspace(a)
    assert null.shape[0] == 6 - f7.rank(a)
    assert not f7.matmul(a, null.T).any()


def test_solve_consistent_and_inconsistent(f7):
    a = f7.array([[1, 1], [1, 1]])
    assert not f7.solve(a, f7.array([1, 2])).consistent
    sol = f7.solve(a, f7.array([3, 3]))
    assert sol.consistent
    assert sol.dimension == 1
    assert np.array_equal(f7.matmul(a, sol.particular), f7.array([[3], [3]]))


def test_matmul_shape_mismatch(f7):
    with pytest.raises(DimensionMismatchError):
        f7.matmul(f7.eye(2), f7.eye(3))


def test_kron_allows_empty_blocks(f7):
    assert f7.kron(f7.zeros(0, 2), f7.eye(2)).shape == (0, 4)
    assert np.array_equal(f7.kron(f7.eye(2), f7.scalar(3, 1)), f7.scalar(3, 2))


# ============================================================
# 다항식
# ============================================================

def test_divmod_identity():
    f = Poly((1, 2, 3, 4, 5), 7)
    d = Poly((3, 0, 1), 7)
    q, r = divmod(f, d)
    assert q * d + r == f
    assert r.degree < d.degree


def test_gcd_and_inverse():
    p = 7
    a = Poly.from_roots([1, 2], p)
    b = Poly.from_roots([2, 3], p)
    assert poly_gcd(a, b) == Poly.from_roots([2], p)
    m = Poly.from_roots([4, 5, 6], p)
    inv = poly_inverse_mod(a, m)
    assert (a * inv) % m == Poly.one(p)
    with pytest.raises(EquivariantError):
        poly_inverse_mod(a, b)


def test_irreducibility():
    # -1 은 F_7 에서 제곱잉여가 아니고 F_5 에서는 2² = -1
    assert is_irreducible(Poly((1, 0, 1), 7))
    assert not is_irreducible(Poly((1, 0, 1), 5))
    assert not is_irreducible(Poly.from_roots([1, 1], 7))


def test_squarefree_decomposition():
    p = 7
    f = Poly.from_roots([1, 2, 2, 3, 3, 3], p)
    parts = {e: g for g, e in squarefree_decomposition(f)}
    assert parts[1] == Poly.from_roots([1], p)
    assert parts[2] == Poly.from_roots([2], p)
    assert parts[3] == Poly.from_roots([3], p)


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_factor(seed):
    p = 7
    quad = Poly((1, 0, 1), p)
    f = Poly.from_roots([1, 2, 2], p) * quad * 3
    factors = factor(f, np.random.default_rng(seed))
    assert set(factors) == {
        (Poly.from_roots([1], p), 1),
        (Poly.from_roots([2], p), 2),
        (quad, 1),
    }
    product = Poly.one(p)
    for g, e in factors:
        for _ in range(e):
            product = product * g
    assert product * f.lead == f


def test_factor_rejects_zero():
    with pytest.raises(EquivariantError):
        factor(Poly.zero(5))


# ============================================================
# 최소다항식
# ============================================================

def test_min_poly_diagonal(f7):
    x = f7.array(np.diag([1, 1, 2]))
    m = min_poly(f7, x)
    assert m == Poly.from_roots([1, 2], 7)
    assert not m.at_matrix(f7, x).any()


def test_min_poly_nilpotent(f7):
    x = f7.array([[0, 1], [0, 0]])
    assert min_poly(f7, x) == Poly((0, 0, 1), 7)


def test_min_poly_with_corner_unit(f7):
    e = f7.array([[1, 0], [0, 0]])
    x = f7.array([[3, 0], [0, 0]])
    m = min_poly(f7, x, unit=e)
    assert m == Poly.from_roots([3], 7)
    assert not m.at_matrix(f7, x, unit=e).any()


def test_min_poly_outside_span(f7):
    basis = [f7.eye(2)]
    with pytest.raises(DimensionMismatchError):
        min_poly(f7, f7.array([[0, 1], [0, 0]]), basis=basis)
