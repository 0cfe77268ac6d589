"""
子式拟阵模块：以秩预言机表示删除与收缩，不对图做手术
"""

import logging
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import FrozenSet, Iterable, Iterator, List, Tuple

from app.core.diagram import LpmDiagram
from app.utils.errors import ElementError, VerificationError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MinorMatroid:
    """
    LPM 的子式：原图加上已删除与已收缩的元素集合

    rank(X) = r_M(X ∪ C) - r_M(C)，其中 C 为已收缩元素。
    """

    diagram: LpmDiagram
    deleted: FrozenSet[int] = field(default_factory=frozenset)
    contracted: FrozenSet[int] = field(default_factory=frozenset)

    @classmethod
    def from_diagram(cls, diagram: LpmDiagram) -> "MinorMatroid":
        return cls(diagram=diagram)

    @cached_property
    def ground(self) -> Tuple[int, ...]:
        removed = self.deleted | self.contracted
        return tuple(e for e in self.diagram.ground if e not in removed)

    @property
    def size(self) -> int:
        return len(self.ground)

    @cached_property
    def _contracted_mask(self) -> int:
        return self.diagram.to_mask(self.contracted)

    @cached_property
    def _contracted_rank(self) -> int:
        return self.diagram.rank_mask(self._contracted_mask)

    def _check(self, e: int) -> None:
        if e not in self.ground:
            raise ElementError(f"元素 {e} 不在子式的基集 {list(self.ground)} 中", position=e)

    def rank(self, subset: Iterable[int]) -> int:
        """
        子式中子集的秩

        Args:
            subset: 子式基集中的元素

        Returns:
            秩
        """
        elements = list(subset)
        for e in elements:
            self._check(e)
        mask = self.diagram.to_mask(elements) | self._contracted_mask
        return self.diagram.rank_mask(mask) - self._contracted_rank

    def local_rank(self, local_mask: int) -> int:
        """按子式基集顺序编码的位掩码求秩（第 k 位对应 ground[k]）"""
        mask = self._contracted_mask
        k = 0
        while local_mask:
            if local_mask & 1:
                mask |= 1 << (self.ground[k] - 1)
            local_mask >>= 1
            k += 1
        return self.diagram.rank_mask(mask) - self._contracted_rank

    @cached_property
    def full_rank(self) -> int:
        return self.rank(self.ground)

    def delete(self, e: int) -> "MinorMatroid":
        self._check(e)
        return MinorMatroid(self.diagram, self.deleted | {e}, self.contracted)

    def contract(self, e: int) -> "MinorMatroid":
        self._check(e)
        return MinorMatroid(self.diagram, self.deleted, self.contracted | {e})

    def corank(self, subset: Iterable[int]) -> int:
        """对偶拟阵的秩：r*(X) = |X| - r(E) + r(E\\X)"""
        elements = set(subset)
        for e in elements:
            self._check(e)
        rest = [x for x in self.ground if x not in elements]
        return len(elements) - self.full_rank + self.rank(rest)

    def is_loop(self, e: int) -> bool:
        self._check(e)
        return self.rank([e]) == 0

    def is_coloop(self, e: int) -> bool:
        self._check(e)
        rest = [x for x in self.ground if x != e]
        return self.rank(rest) == self.full_rank - 1

    def bases(self) -> Iterator[FrozenSet[int]]:
        """枚举所有基"""
        for combo in combinations(self.ground, self.full_rank):
            if self.rank(combo) == self.full_rank:
                yield frozenset(combo)

    def is_connected(self) -> bool:
        """
        分离集检验：不存在真非空子集 X 使 r(X) + r(E\\X) = r(E)

        只枚举包含第一个元素的 X，补集对称。
        """
        n = self.size
        if n <= 1:
            return True
        full = (1 << n) - 1
        total = self.full_rank
        for rest in range(0, 1 << (n - 1)):
            x = (rest << 1) | 1
            if x == full:
                continue
            if self.local_rank(x) + self.local_rank(full ^ x) == total:
                return False
        return True

    def rank_table(self) -> List[int]:
        """所有局部位掩码的秩表"""
        return [self.local_rank(mask) for mask in range(1 << self.size)]

    def check_rank_axioms(self) -> None:
        """穷举检查秩函数公理，不满足时抛出 VerificationError"""
        n = self.size
        table = self.rank_table()
        if table[0] != 0:
            raise VerificationError(f"空集的秩为 {table[0]}，应为 0")
        for mask in range(1 << n):
            for k in range(n):
                if mask >> k & 1:
                    continue
                step = table[mask | 1 << k] - table[mask]
                if step not in (0, 1):
                    raise VerificationError(f"加入元素 {self.ground[k]} 后秩变化 {step}", position=self.ground[k])
        for a in range(1 << n):
            for b in range(a, 1 << n):
                if table[a] + table[b] < table[a | b] + table[a & b]:
                    raise VerificationError(f"子模性不成立: 掩码 {a:b} 与 {b:b}")

    def __str__(self) -> str:
        parts = [self.diagram.canonical()]
        if self.deleted:
            parts.append(f"\\{sorted(self.deleted)}")
        if self.contracted:
            parts.append(f"/{sorted(self.contracted)}")
        return " ".join(parts)
