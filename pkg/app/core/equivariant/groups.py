"""
유한군 엔진

곱셈표(Cayley table) 기반 유한군, 부분군 격자, 좌잉여류/양쪽잉여류 대표원,
켤레 연산을 제공합니다. 모든 함자의 인덱싱 조합론이 여기서 나옵니다.

원소는 0..n-1 정수이며 0 이 항등원입니다. 대표원은 항상
"잉여류 안에서 가장 작은 인덱스" 규칙(canonical)을 따릅니다.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from .exceptions import ContainmentError, EquivariantError, RepresentativeError

logger = logging.getLogger(__name__)

Perm = Tuple[int, ...]


class Group:
    """
    곱셈표로 표현된 유한군

    table[a, b] = a·b, 0 = 항등원. 생성 시 결합법칙/항등원/역원을 검증합니다.
    """

    def __init__(self, table, name: str = "", permutations: Optional[Sequence[Perm]] = None):
        """
        Args:
            table: n×n 곱셈표
            name: 표시용 이름
            permutations: 순열로부터 만든 경우 각 원소의 순열 (선택)
        """
        self.table = np.asarray(table, dtype=np.int64)
        self.order = int(self.table.shape[0])
        self.name = name or f"G{self.order}"
        self.permutations = tuple(permutations) if permutations is not None else None
        self._validate()
        self.inverse = np.argmax(self.table == 0, axis=1).astype(np.int64)
        self._coset_cache: Dict[Tuple[Tuple[int, ...], Tuple[int, ...]], "CosetReps"] = {}
        self._double_cache: Dict[Tuple[Tuple[int, ...], ...], "DoubleCosetReps"] = {}

    def _validate(self) -> None:
        t = self.table
        n = self.order
        if t.shape != (n, n) or n == 0:
            raise EquivariantError(f"곱셈표 모양이 올바르지 않습니다: {t.shape}")
        if t.min() < 0 or t.max() >= n:
            raise EquivariantError("곱셈표 원소가 범위를 벗어났습니다")
        ident = np.arange(n)
        if not (np.array_equal(t[0], ident) and np.array_equal(t[:, 0], ident)):
            raise EquivariantError("원소 0 이 항등원이 아닙니다")
        for row in (t, t.T):
            if not all(len(set(r.tolist())) == n for r in row):
                raise EquivariantError("곱셈표가 라틴 방진이 아닙니다 (역원 없음)")
        lhs = t[t, :]                      # lhs[a, b, c] = (a·b)·c
        rhs = t[np.arange(n)[:, None, None], t[None, :, :]]  # a·(b·c)
        if not np.array_equal(lhs, rhs):
            bad = np.argwhere(lhs != rhs)[0].tolist()
            raise EquivariantError(f"결합법칙 위반: (a,b,c)={tuple(bad)}")

    # ============================================================
    # 생성자
    # ============================================================

    @classmethod
    def from_table(cls, table, name: str = "") -> "Group":
        return cls(table, name=name)

    @classmethod
    def from_permutations(
        cls, generators: Sequence[Sequence[int]], name: str = "", max_order: Optional[int] = None
    ) -> "Group":
        """
        순열 생성원으로부터 닫힘 계산 후 곱셈표 생성

        원소 순서: 항등원이 0, 이후 생성원 왼쪽 곱 BFS 순서.
        합성 규칙: (a·b)(i) = a(b(i)).
        """
        gens = [tuple(int(v) for v in g) for g in generators]
        degree = len(gens[0]) if gens else 1
        if any(sorted(g) != list(range(degree)) for g in gens):
            raise EquivariantError("생성원이 올바른 순열이 아닙니다")
        identity = tuple(range(degree))
        elements: List[Perm] = [identity]
        index = {identity: 0}
        i = 0
        while i < len(elements):
            e = elements[i]
            for s in gens:
                prod = tuple(s[e[k]] for k in range(degree))
                if prod not in index:
                    index[prod] = len(elements)
                    elements.append(prod)
                    if max_order is not None and len(elements) > max_order:
                        raise EquivariantError(f"군의 위수가 상한 {max_order} 을 넘습니다")
            i += 1
        n = len(elements)
        table = np.zeros((n, n), dtype=np.int64)
        for a, pa in enumerate(elements):
            for b, pb in enumerate(elements):
                table[a, b] = index[tuple(pa[pb[k]] for k in range(degree))]
        return cls(table, name=name, permutations=elements)

    @classmethod
    def cyclic(cls, n: int) -> "Group":
        idx = np.arange(n)
        return cls((idx[:, None] + idx[None, :]) % n, name=f"C{n}")

    @classmethod
    def dihedral(cls, n: int) -> "Group":
        """정 n 각형의 대칭군 (위수 2n)"""
        rot = tuple((i + 1) % n for i in range(n))
        ref = tuple((-i) % n for i in range(n))
        return cls.from_permutations([rot, ref], name=f"D{2 * n}")

    @classmethod
    def symmetric(cls, n: int) -> "Group":
        if n == 1:
            return cls.from_permutations([(0,)], name="S1")
        swap = (1, 0) + tuple(range(2, n))
        cycle = tuple((i + 1) % n for i in range(n))
        return cls.from_permutations([swap, cycle], name=f"S{n}")

    # ============================================================
    # 원소 연산
    # ============================================================

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverse[a])

    def conj_elem(self, x: int, h: int) -> int:
        """x·h·x⁻¹"""
        return int(self.table[self.table[x, h], self.inverse[x]])

    def closure(self, elements: Iterable[int]) -> Tuple[int, ...]:
        """원소 집합이 생성하는 부분군 (정렬된 튜플)"""
        gens = sorted(set(int(e) for e in elements))
        seen = {0}
        queue = [0]
        while queue:
            a = queue.pop()
            for g in gens:
                b = int(self.table[a, g])
                if b not in seen:
                    seen.add(b)
                    queue.append(b)
        return tuple(sorted(seen))

    def subgroup(self, elements: Iterable[int]) -> "Subgroup":
        elems = tuple(sorted(set(int(e) for e in elements)))
        if self.closure(elems) != elems:
            raise EquivariantError(f"부분군이 아닙니다: {elems}")
        return Subgroup(elems, self)

    def generated(self, elements: Iterable[int]) -> "Subgroup":
        return Subgroup(self.closure(elements), self)

    def whole(self) -> "Subgroup":
        return Subgroup(tuple(range(self.order)), self)

    def trivial(self) -> "Subgroup":
        return Subgroup((0,), self)

    def is_cyclic(self) -> bool:
        return any(len(self.closure([g])) == self.order for g in range(self.order))

    def exponents(self) -> List[int]:
        """순환군의 최소 생성원 t 기준 지수 (exponents()[t^a] = a)"""
        gen = next((g for g in range(self.order) if len(self.closure([g])) == self.order), None)
        if gen is None:
            raise EquivariantError(f"{self.name} 은 순환군이 아닙니다")
        exp = [0] * self.order
        current = 0
        for a in range(1, self.order):
            current = self.mul(current, gen)
            exp[current] = a
        return exp

    def __repr__(self) -> str:
        return f"Group({self.name}, order={self.order})"


@dataclass(frozen=True)
class Subgroup:
    """정렬된 원소 인덱스 목록 + 부모 군"""
    elements: Tuple[int, ...]
    group: Group = field(compare=False, hash=False, repr=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __post_init__(self):
        object.__setattr__(self, "_members", frozenset(self.elements))

    def __contains__(self, g: int) -> bool:
        return int(g) in self._members

    def __iter__(self):
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def is_subgroup_of(self, other: "Subgroup") -> bool:
        return self._members <= other._members

    def generators(self) -> Tuple[int, ...]:
        """작은 생성원 집합 (탐욕적)"""
        gens: List[int] = []
        current = {0}
        for h in self.elements:
            if h not in current:
                gens.append(h)
                current = set(self.group.closure(gens))
        return tuple(gens)

    @property
    def label(self) -> str:
        return "<" + ",".join(str(e) for e in self.elements) + ">"


def require_subgroup(inner: Subgroup, outer: Subgroup) -> None:
    if not inner.is_subgroup_of(outer):
        raise ContainmentError(f"{inner.label} 가 {outer.label} 에 포함되지 않습니다")


def intersection(a: Subgroup, b: Subgroup) -> Subgroup:
    return Subgroup(tuple(sorted(a._members & b._members)), a.group)


def conjugate(h: Subgroup, x: int) -> Subgroup:
    """ˣH = xHx⁻¹"""
    g = h.group
    return Subgroup(tuple(sorted({g.conj_elem(x, e) for e in h.elements})), g)


def is_normal(h: Subgroup, within: Subgroup) -> bool:
    return all(conjugate(h, x) == h for x in within.elements)


# ============================================================
# 부분군 격자
# ============================================================

def subgroups(group: Group, max_order: int = 48) -> List[Subgroup]:
    """
    모든 부분군 열거 (위수, 원소 순 정렬)

    순환 부분군에서 시작해 순환 부분군과의 join 을 닫힐 때까지 반복합니다.
    """
    if group.order > max_order:
        raise EquivariantError(f"군의 위수 {group.order} 가 상한 {max_order} 을 넘습니다")
    cyclic = sorted({group.closure([g]) for g in range(group.order)})
    found = set(cyclic)
    frontier = list(cyclic)
    while frontier:
        fresh = []
        for a in frontier:
            members = set(a)
            for c in cyclic:
                if set(c) <= members:
                    continue
                joined = group.closure(members | set(c))
                if joined not in found:
                    found.add(joined)
                    fresh.append(joined)
        frontier = fresh
    result = [Subgroup(e, group) for e in sorted(found, key=lambda e: (len(e), e))]
    logger.debug(f"{group.name}: 부분군 {len(result)}개")
    return result


def conjugacy_classes(group: Group, subs: Sequence[Subgroup]) -> List[List[int]]:
    """부분군 켤레류 (subs 의 인덱스 목록들)"""
    position = {s: i for i, s in enumerate(subs)}
    seen = set()
    classes: List[List[int]] = []
    for i, s in enumerate(subs):
        if i in seen:
            continue
        members = sorted({position[conjugate(s, x)] for x in range(group.order)})
        seen.update(members)
        classes.append(members)
    return classes


# ============================================================
# 잉여류 대표원
# ============================================================

@dataclass(frozen=True)
class CosetReps:
    """
    H 안의 L 의 좌잉여류 대표원 t_1..t_m (H = ⊔ t_i L)

    complete=False 이면 일부 잉여류만 덮는 대표원 집합 (Mackey 의 R_x 블록)
    """
    L: Subgroup
    H: Subgroup
    reps: Tuple[int, ...]
    lookup: Mapping[int, Tuple[int, int]] = field(compare=False, repr=False)
    complete: bool = True

    @classmethod
    def from_reps(
        cls, L: Subgroup, H: Subgroup, reps: Sequence[int], complete: bool = True
    ) -> "CosetReps":
        """임의 대표원 집합 검증 후 생성"""
        require_subgroup(L, H)
        g = H.group
        lookup: Dict[int, Tuple[int, int]] = {}
        for t in reps:
            if t not in H:
                raise RepresentativeError(f"대표원 {t} 가 {H.label} 에 없습니다")
            for l in L.elements:
                e = g.mul(t, l)
                if e in lookup:
                    raise RepresentativeError(f"대표원 {t} 와 {lookup[e][0]} 가 같은 잉여류입니다")
                lookup[e] = (int(t), l)
        if complete and len(lookup) != H.order:
            raise RepresentativeError(f"대표원 {tuple(reps)} 가 {H.label}/{L.label} 를 덮지 않습니다")
        return cls(L, H, tuple(int(t) for t in reps), lookup, complete)

    def factor(self, h: int) -> Tuple[int, int]:
        """h = t·l 분해 (t 는 대표원, l ∈ L)"""
        try:
            return self.lookup[int(h)]
        except KeyError:
            raise RepresentativeError(f"원소 {h} 의 잉여류가 대표원 집합에 없습니다") from None

    def position(self, t: int) -> int:
        return self.reps.index(int(t))

    def __len__(self) -> int:
        return len(self.reps)


def coset_reps(L: Subgroup, H: Subgroup) -> CosetReps:
    """
    canonical 좌잉여류 대표원 (각 잉여류의 최소 인덱스, 항등원이 처음)
    """
    require_subgroup(L, H)
    g = H.group
    key = (L.elements, H.elements)
    cached = g._coset_cache.get(key)
    if cached is not None:
        return cached
    reps: List[int] = []
    covered = set()
    for h in H.elements:
        if h in covered:
            continue
        reps.append(h)
        covered.update(g.mul(h, l) for l in L.elements)
    result = CosetReps.from_reps(L, H, reps)
    g._coset_cache[key] = result
    return result


@dataclass(frozen=True)
class DoubleCosetReps:
    """
    K\\H/L 양쪽잉여류 분해

    reps: 각 양쪽잉여류의 최소 인덱스 원소 x
    blocks[x]: KxL 안의 L-좌잉여류 대표원 R_x (Kx 안에서 고른 최소 인덱스)
    factorization[h] = (k, x, l) with h = k·x·l
    """
    K: Subgroup
    H: Subgroup
    L: Subgroup
    reps: Tuple[int, ...]
    blocks: Mapping[int, Tuple[int, ...]] = field(compare=False)
    factorization: Mapping[int, Tuple[int, int, int]] = field(compare=False, repr=False)
    sizes: Mapping[int, int] = field(compare=False)

    def union_reps(self) -> Tuple[int, ...]:
        """R = ⊔ R_x (양쪽잉여류 순서대로)"""
        return tuple(a for x in self.reps for a in self.blocks[x])


def double_cosets(K: Subgroup, H: Subgroup, L: Subgroup) -> DoubleCosetReps:
    require_subgroup(K, H)
    require_subgroup(L, H)
    g = H.group
    key = (K.elements, H.elements, L.elements)
    cached = g._double_cache.get(key)
    if cached is not None:
        return cached
    covered = set()
    reps: List[int] = []
    blocks: Dict[int, Tuple[int, ...]] = {}
    factorization: Dict[int, Tuple[int, int, int]] = {}
    sizes: Dict[int, int] = {}
    for h in H.elements:
        if h in covered:
            continue
        x = h
        reps.append(x)
        members = set()
        for k in K.elements:
            kx = g.mul(k, x)
            for l in L.elements:
                e = g.mul(kx, l)
                members.add(e)
                factorization.setdefault(e, (k, x, l))
        covered |= members
        sizes[x] = len(members)
        rx: List[int] = []
        seen = set()
        for a in sorted({g.mul(k, x) for k in K.elements}):
            if a in seen:
                continue
            rx.append(a)
            seen.update(g.mul(a, l) for l in L.elements)
        blocks[x] = tuple(rx)
    if sum(sizes.values()) != H.order:
        raise EquivariantError("양쪽잉여류 분해가 H 를 덮지 않습니다")
    result = DoubleCosetReps(K, H, L, tuple(reps), blocks, factorization, sizes)
    g._double_cache[key] = result
    return result
