"""
格路模块，负责格路的解析与编码
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, List, Tuple

from app.utils.errors import ParseError

logger = logging.getLogger(__name__)

NORTH = "N"
EAST = "E"

Point = Tuple[int, int]


@dataclass(frozen=True)
class LatticePath:
    """从原点出发、只走 N/E 两种步的格路"""

    steps: str

    def __post_init__(self):
        for i, ch in enumerate(self.steps, start=1):
            if ch not in (NORTH, EAST):
                raise ParseError(f"非法步: '{ch}'", position=i)

    @classmethod
    def from_north_positions(cls, positions: Iterable[int], length: int) -> "LatticePath":
        """
        由 N 步位置集合恢复格路

        Args:
            positions: N 步所在位置（1 起始）
            length: 总步数

        Returns:
            对应的格路
        """
        north = set(positions)
        if any(p < 1 or p > length for p in north):
            raise ParseError(f"N 步位置超出范围 1..{length}: {sorted(north)}")
        return cls("".join(NORTH if i in north else EAST for i in range(1, length + 1)))

    @property
    def length(self) -> int:
        return len(self.steps)

    @property
    def m(self) -> int:
        return self.steps.count(EAST)

    @property
    def r(self) -> int:
        return self.steps.count(NORTH)

    @property
    def endpoint(self) -> Point:
        return (self.m, self.r)

    @cached_property
    def north_positions(self) -> Tuple[int, ...]:
        """N 步位置 s_1 < ... < s_r（1 起始）"""
        return tuple(i for i, ch in enumerate(self.steps, start=1) if ch == NORTH)

    @cached_property
    def points(self) -> Tuple[Point, ...]:
        """路径经过的格点，第 k 个是走完 k 步后的位置"""
        x, y = 0, 0
        pts: List[Point] = [(0, 0)]
        for ch in self.steps:
            if ch == EAST:
                x += 1
            else:
                y += 1
            pts.append((x, y))
        return tuple(pts)

    def swapped(self) -> "LatticePath":
        """沿对角线 x=y 反射：N 与 E 互换"""
        return LatticePath(self.steps.translate(str.maketrans("NE", "EN")))

    def __add__(self, other: "LatticePath") -> "LatticePath":
        return LatticePath(self.steps + other.steps)

    def __str__(self) -> str:
        return self.steps


def parse_path(text: str) -> LatticePath:
    """
    解析 N/E 步字符串（大小写不敏感）

    Args:
        text: 步字符串，如 "EENN"

    Returns:
        对应的格路
    """
    if text is None or not text.strip():
        raise ParseError("格路字符串为空", position=1)
    word = text.strip().upper()
    for i, ch in enumerate(word, start=1):
        if ch not in (NORTH, EAST):
            raise ParseError(f"格路中出现非法字符 '{text.strip()[i - 1]}'", position=i)
    return LatticePath(word)
