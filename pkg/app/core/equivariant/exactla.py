"""
F_p 정확 연산

소수체 F_p 위의 밀집 행렬 연산(행 축약, 해 공간, 계수, 역행렬)과
다항식 인수분해(Cantor–Zassenhaus)를 제공합니다.

- 행렬: numpy int64 배열, 원소는 항상 [0, p) 로 정규화
- 다항식: 낮은 차수부터의 계수 튜플 (Poly)
- 난수: 호출자가 넘기는 numpy Generator 로만 사용 (재현성)
"""
from __future__ import annotations

import logging
from math import gcd
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np
import numpy.typing as npt

from .exceptions import DimensionMismatchError, EquivariantError, SingularMatrixError

logger = logging.getLogger(__name__)

Matrix = npt.NDArray[np.int64]


def is_prime(n: int) -> bool:
    """작은 정수 소수 판정 (시험 나눗셈)"""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def primitive_root(p: int) -> int:
    """F_p^× 의 최소 생성원"""
    order = p - 1
    primes = []
    rest = order
    f = 2
    while f * f <= rest:
        if rest % f == 0:
            primes.append(f)
            while rest % f == 0:
                rest //= f
        f += 1
    if rest > 1:
        primes.append(rest)
    for w in range(1, p):
        if all(pow(w, order // q, p) != 1 for q in primes):
            return w
    raise EquivariantError(f"{p} 의 원시근을 찾지 못했습니다")


def roots_of_unity(p: int, d: int) -> List[int]:
    """x^d = 1 의 F_p 해 (d | p-1 이 아니면 gcd 차수의 해)"""
    e = gcd(d, p - 1)
    w = pow(primitive_root(p), (p - 1) // e, p)
    return [pow(w, k, p) for k in range(e)]


@dataclass(frozen=True)
class Solution:
    """
    연립방정식 A·X = b 의 해 집합

    particular 가 None 이면 해가 없음(inconsistent).
    nullspace 의 각 행이 동차해 공간의 기저 벡터입니다.
    """
    particular: Optional[Matrix]
    nullspace: Matrix

    @property
    def consistent(self) -> bool:
        return self.particular is not None

    @property
    def dimension(self) -> int:
        return int(self.nullspace.shape[0])


class PrimeField:
    """
    소수체 F_p

    세션당 하나의 p 를 사용합니다. 모든 행렬 연산은 이 객체의 메서드로
    수행되며, 결과는 항상 mod p 로 정규화됩니다.
    """

    def __init__(self, p: int, limit: Optional[int] = None):
        """
        Args:
            p: 소수 모듈러스
            limit: 허용 최대 p (int64 곱셈 오버플로 방지용 상한)
        """
        if not is_prime(p):
            raise EquivariantError(f"p={p} 는 소수가 아닙니다")
        if limit is not None and p > limit:
            raise EquivariantError(f"p={p} 가 허용 상한 {limit} 을 넘습니다")
        self.p = int(p)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("PrimeField", self.p))

    def __repr__(self) -> str:
        return f"PrimeField({self.p})"

    # ============================================================
    # 기본 생성
    # ============================================================

    def array(self, data) -> Matrix:
        """정수 데이터를 F_p 행렬로 변환 (음수도 mod p 처리)"""
        return np.asarray(data, dtype=np.int64) % self.p

    def zeros(self, rows: int, cols: int) -> Matrix:
        return np.zeros((rows, cols), dtype=np.int64)

    def eye(self, n: int) -> Matrix:
        return np.eye(n, dtype=np.int64)

    def scalar(self, value: int, n: int) -> Matrix:
        """value·I_n"""
        return (np.eye(n, dtype=np.int64) * (int(value) % self.p)) % self.p

    def random_matrix(self, rng: np.random.Generator, rows: int, cols: int) -> Matrix:
        return rng.integers(0, self.p, size=(rows, cols), dtype=np.int64)

    def random_nonzero(self, rng: np.random.Generator) -> int:
        return int(rng.integers(1, self.p))

    # ============================================================
    # 산술
    # ============================================================

    def inv(self, value: int) -> int:
        """스칼라 역원"""
        value = int(value) % self.p
        if value == 0:
            raise SingularMatrixError("0 의 역원은 없습니다")
        return pow(value, self.p - 2, self.p)

    def matmul(self, a: Matrix, b: Matrix) -> Matrix:
        if a.shape[1] != b.shape[0]:
            raise DimensionMismatchError(f"행렬 곱 차원 불일치: {a.shape} x {b.shape}")
        return (a @ b) % self.p

    def kron(self, a: Matrix, b: Matrix) -> Matrix:
        """Kronecker 곱 (0 크기 블록도 허용)"""
        rows = a.shape[0] * b.shape[0]
        cols = a.shape[1] * b.shape[1]
        return (a[:, None, :, None] * b[None, :, None, :]).reshape(rows, cols) % self.p

    # ============================================================
    # 행 축약
    # ============================================================

    def rref(self, a: Matrix) -> Tuple[Matrix, List[int]]:
        """
        기약 행 사다리꼴 (reduced row echelon form)

        Returns:
            (R, pivots) - pivots 는 피벗 열 인덱스 목록
        """
        p = self.p
        m = np.array(a, dtype=np.int64) % p
        rows, cols = m.shape
        pivots: List[int] = []
        r = 0
        for c in range(cols):
            if r == rows:
                break
            nz = np.nonzero(m[r:, c])[0]
            if nz.size == 0:
                continue
            piv = r + int(nz[0])
            if piv != r:
                m[[r, piv]] = m[[piv, r]]
            m[r] = (m[r] * self.inv(int(m[r, c]))) % p
            col = m[:, c].copy()
            col[r] = 0
            targets = np.nonzero(col)[0]
            if targets.size:
                m[targets] = (m[targets] - np.outer(col[targets], m[r])) % p
            pivots.append(c)
            r += 1
        return m, pivots

    def rank(self, a: Matrix) -> int:
        if a.size == 0:
            return 0
        return len(self.rref(a)[1])

    def nullspace(self, a: Matrix) -> Matrix:
        """동차해 공간 기저 (각 행이 기저 벡터)"""
        cols = a.shape[1]
        if a.shape[0] == 0:
            return self.eye(cols)
        r, pivots = self.rref(a)
        free = [c for c in range(cols) if c not in set(pivots)]
        basis = self.zeros(len(free), cols)
        if not free:
            return basis
        basis[np.arange(len(free)), free] = 1
        if pivots:
            basis[:, pivots] = (-r[: len(pivots)][:, free].T) % self.p
        return basis

    def solve(self, a: Matrix, b: Matrix) -> Solution:
        """
        A·X = b 풀이

        Args:
            a: 계수 행렬 (rows × n)
            b: 우변 (rows × k) 또는 길이 rows 벡터

        Returns:
            Solution (특수해 + 동차해 기저, 또는 inconsistent)
        """
        if b.ndim == 1:
            b = b.reshape(-1, 1)
        if a.shape[0] != b.shape[0]:
            raise DimensionMismatchError(f"solve 행 수 불일치: {a.shape[0]} != {b.shape[0]}")
        n = a.shape[1]
        null = self.nullspace(a)
        if a.shape[0] == 0:
            return Solution(self.zeros(n, b.shape[1]), null)
        r, pivots = self.rref(np.hstack([a % self.p, b % self.p]))
        if any(pc >= n for pc in pivots):
            return Solution(None, null)
        x = self.zeros(n, b.shape[1])
        for i, pc in enumerate(pivots):
            x[pc] = r[i, n:]
        if not np.array_equal(self.matmul(a, x), b % self.p):
            raise EquivariantError("solve 결과 대입 검증 실패")
        return Solution(x, null)

    def try_inverse(self, a: Matrix) -> Optional[Matrix]:
        """역행렬 (특이 행렬이면 None)"""
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise DimensionMismatchError(f"정방 행렬이 아닙니다: {a.shape}")
        n = a.shape[0]
        if n == 0:
            return self.zeros(0, 0)
        r, pivots = self.rref(np.hstack([a % self.p, self.eye(n)]))
        if [pc for pc in pivots if pc < n] != list(range(n)):
            return None
        return r[:, n:].copy()

    def inverse(self, a: Matrix) -> Matrix:
        inv = self.try_inverse(a)
        if inv is None:
            raise SingularMatrixError(f"특이 행렬입니다 (shape={a.shape})")
        return inv

    def is_invertible(self, a: Matrix) -> bool:
        return a.shape[0] == a.shape[1] and self.rank(a) == a.shape[0]


# ============================================================
# 다항식
# ============================================================

@dataclass(frozen=True)
class Poly:
    """
    F_p[t] 다항식 (계수는 낮은 차수부터, 끝의 0 없음)
    """
    coeffs: Tuple[int, ...]
    p: int = field(compare=True)

    def __post_init__(self):
        c = [int(x) % self.p for x in self.coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    # 생성 헬퍼
    @classmethod
    def zero(cls, p: int) -> "Poly":
        return cls((), p)

    @classmethod
    def one(cls, p: int) -> "Poly":
        return cls((1,), p)

    @classmethod
    def x(cls, p: int) -> "Poly":
        return cls((0, 1), p)

    @classmethod
    def from_roots(cls, roots: Iterable[int], p: int) -> "Poly":
        f = cls.one(p)
        for r in roots:
            f = f * cls((-r, 1), p)
        return f

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def _lift(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.p != self.p:
                raise EquivariantError("서로 다른 p 의 다항식입니다")
            return other
        return Poly((int(other),), self.p)

    def __add__(self, other) -> "Poly":
        o = self._lift(other)
        n = max(len(self.coeffs), len(o.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = o.coeffs + (0,) * (n - len(o.coeffs))
        return Poly(tuple(x + y for x, y in zip(a, b)), self.p)

    def __neg__(self) -> "Poly":
        return Poly(tuple(-x for x in self.coeffs), self.p)

    def __sub__(self, other) -> "Poly":
        return self + (-self._lift(other))

    def __mul__(self, other) -> "Poly":
        o = self._lift(other)
        if self.is_zero or o.is_zero:
            return Poly.zero(self.p)
        prod = np.convolve(
            np.array(self.coeffs, dtype=np.int64), np.array(o.coeffs, dtype=np.int64)
        ) % self.p
        return Poly(tuple(int(v) for v in prod), self.p)

    __rmul__ = __mul__

    def __divmod__(self, other) -> Tuple["Poly", "Poly"]:
        d = self._lift(other)
        if d.is_zero:
            raise ZeroDivisionError("0 다항식으로 나눌 수 없습니다")
        p = self.p
        r = list(self.coeffs)
        m = len(d.coeffs)
        shift = len(r) - m
        if shift < 0:
            return Poly.zero(p), self
        q = [0] * (shift + 1)
        inv = pow(d.lead, p - 2, p)
        for k in range(shift, -1, -1):
            c = r[k + m - 1] * inv % p
            q[k] = c
            if c:
                for i, di in enumerate(d.coeffs):
                    r[k + i] = (r[k + i] - c * di) % p
        return Poly(tuple(q), p), Poly(tuple(r[: m - 1]), p)

    def __floordiv__(self, other) -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other) -> "Poly":
        return divmod(self, other)[1]

    def monic(self) -> "Poly":
        if self.is_zero:
            return self
        inv = pow(self.lead, self.p - 2, self.p)
        return Poly(tuple(c * inv for c in self.coeffs), self.p)

    def derivative(self) -> "Poly":
        return Poly(tuple(i * c for i, c in enumerate(self.coeffs))[1:], self.p)

    def powmod(self, exponent: int, modulus: "Poly") -> "Poly":
        """self^exponent mod modulus (제곱-곱셈)"""
        result = Poly.one(self.p) % modulus
        base = self % modulus
        e = int(exponent)
        while e > 0:
            if e & 1:
                result = (result * base) % modulus
            base = (base * base) % modulus
            e >>= 1
        return result

    def __call__(self, value: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * value + c) % self.p
        return acc

    def at_matrix(self, fld: PrimeField, x: Matrix, unit: Optional[Matrix] = None) -> Matrix:
        """행렬 대입 f(x) (Horner). unit 이 주어지면 상수항에 unit 을 사용"""
        one = fld.eye(x.shape[0]) if unit is None else unit
        acc = fld.zeros(*x.shape)
        for c in reversed(self.coeffs):
            acc = (fld.matmul(acc, x) + c * one) % fld.p
        return acc

    def __repr__(self) -> str:
        if self.is_zero:
            return f"Poly(0 mod {self.p})"
        terms = [f"{c}t^{i}" if i else f"{c}" for i, c in enumerate(self.coeffs) if c]
        return f"Poly({' + '.join(reversed(terms))} mod {self.p})"


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """monic 최대공약수"""
    while not b.is_zero:
        a, b = b, a % b
    return a.monic()


def poly_inverse_mod(a: Poly, modulus: Poly) -> Poly:
    """a⁻¹ mod modulus (확장 유클리드, gcd = 1 이어야 함)"""
    r0, r1 = modulus, a % modulus
    s0, s1 = Poly.zero(a.p), Poly.one(a.p)
    while not r1.is_zero:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
    if r0.degree != 0:
        raise EquivariantError("서로소가 아닌 다항식은 역원이 없습니다")
    return (s0 * pow(r0.lead, a.p - 2, a.p)) % modulus


def _pth_root(f: Poly) -> Poly:
    p = f.p
    return Poly(tuple(f.coeffs[i] for i in range(0, len(f.coeffs), p)), p)


def squarefree_decomposition(f: Poly) -> List[Tuple[Poly, int]]:
    """
    무제곱 분해 f = ∏ g_i^{e_i} (g_i 는 monic 무제곱, 서로소)
    """
    f = f.monic()
    if f.degree <= 0:
        return []
    p = f.p
    df = f.derivative()
    if df.is_zero:
        return [(g, e * p) for g, e in squarefree_decomposition(_pth_root(f))]
    out: List[Tuple[Poly, int]] = []
    c = poly_gcd(f, df)
    w = f // c
    i = 1
    while w.degree > 0:
        y = poly_gcd(w, c)
        z = w // y
        if z.degree > 0:
            out.append((z.monic(), i))
        i += 1
        w = y
        c = c // y
    if c.degree > 0:
        out.extend((g, e * p) for g, e in squarefree_decomposition(_pth_root(c.monic())))
    return out


def distinct_degree(f: Poly) -> List[Tuple[Poly, int]]:
    """
    무제곱 monic 다항식의 차수별 분해

    Returns:
        (g_d, d) 목록 - g_d 는 차수 d 인 기약인수들의 곱
    """
    p = f.p
    x = Poly.x(p)
    out: List[Tuple[Poly, int]] = []
    g = f
    h = x % g
    d = 1
    while 2 * d <= g.degree:
        h = h.powmod(p, g)
        u = poly_gcd(g, h - x)
        if u.degree > 0:
            out.append((u, d))
            g = g // u
            h = h % g
        d += 1
    if g.degree > 0:
        out.append((g.monic(), g.degree))
    return out


def equal_degree_split(f: Poly, d: int, rng: np.random.Generator) -> List[Poly]:
    """
    같은 차수 d 의 기약인수들의 곱 f 를 확률적으로 분리 (Cantor–Zassenhaus)
    """
    if f.degree == d:
        return [f.monic()]
    p = f.p
    n = f.degree
    while True:
        a = Poly(tuple(int(v) for v in rng.integers(0, p, size=n)), p)
        if a.degree <= 0:
            continue
        g = poly_gcd(a, f)
        if not 0 < g.degree < n:
            if p == 2:
                b = Poly.zero(p)
                power = a % f
                for _ in range(d):
                    b = b + power
                    power = (power * power) % f
            else:
                b = a.powmod((p**d - 1) // 2, f) - 1
            g = poly_gcd(b, f)
        if 0 < g.degree < n:
            return equal_degree_split(g, d, rng) + equal_degree_split(f // g, d, rng)


def is_irreducible(f: Poly) -> bool:
    """
    기약성 판정 (근 없음 + 차수별 일관성)

    f 가 무제곱이고, 모든 i ≤ deg/2 에 대해 gcd(f, t^{p^i} - t) = 1 이면 기약입니다.
    """
    if f.degree <= 0:
        return False
    if f.degree == 1:
        return True
    f = f.monic()
    if poly_gcd(f, f.derivative()).degree > 0:
        return False
    if any(f(v) == 0 for v in range(min(f.p, 4096))):
        return False
    x = Poly.x(f.p)
    h = x % f
    for _ in range(f.degree // 2):
        h = h.powmod(f.p, f)
        if poly_gcd(f, h - x).degree > 0:
            return False
    return True


def factor(f: Poly, rng: Optional[np.random.Generator] = None) -> List[Tuple[Poly, int]]:
    """
    F_p[t] 다항식 인수분해

    Args:
        f: 0 이 아닌 다항식
        rng: 분리 단계 난수 (기본: seed 0)

    Returns:
        (monic 기약인수, 중복도) 목록. 결과 곱에 f.lead 를 곱하면 f 와 같습니다.
        차수, 계수 순으로 정렬됩니다.
    """
    if f.is_zero:
        raise EquivariantError("0 다항식은 인수분해할 수 없습니다")
    rng = rng if rng is not None else np.random.default_rng(0)
    out: List[Tuple[Poly, int]] = []
    for g, e in squarefree_decomposition(f):
        for part, d in distinct_degree(g):
            for irr in equal_degree_split(part, d, rng):
                out.append((irr, e))
    out.sort(key=lambda item: (item[0].degree, item[0].coeffs, item[1]))
    return out


def min_poly(
    fld: PrimeField,
    x: Matrix,
    unit: Optional[Matrix] = None,
    basis: Optional[Sequence[Matrix]] = None,
) -> Poly:
    """
    행렬 대수 원소의 최소다항식

    Args:
        fld: 소수체
        x: 정방 행렬 원소
        unit: 대수의 단위원 (기본: 항등행렬, 모서리 대수 eAe 에서는 e)
        basis: 주어지면 x 가 그 span 에 속하는지 확인

    Returns:
        monic 최소다항식 (상수항은 unit 에 대응)
    """
    n = x.shape[0]
    if x.shape != (n, n):
        raise DimensionMismatchError(f"정방 행렬이 아닙니다: {x.shape}")
    one = fld.eye(n) if unit is None else unit % fld.p
    if basis is not None:
        span = np.stack([b.reshape(-1) for b in basis], axis=1) if basis else fld.zeros(n * n, 0)
        if not fld.solve(span, x.reshape(-1, 1) % fld.p).consistent:
            raise DimensionMismatchError("원소가 주어진 기저의 span 에 없습니다")
    powers = [one.reshape(-1)]
    current = one
    for _ in range(n * n + 1):
        current = fld.matmul(current, x)
        vec = current.reshape(-1)
        sol = fld.solve(np.stack(powers, axis=1), vec.reshape(-1, 1))
        if sol.consistent:
            coeffs = [(-int(c)) % fld.p for c in sol.particular[:, 0]] + [1]
            return Poly(tuple(coeffs), fld.p)
        powers.append(vec)
    raise EquivariantError("최소다항식을 찾지 못했습니다")
