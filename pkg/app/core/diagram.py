"""
格路拟阵图模块，负责 LPM 图的构造、横截表示、秩、对偶、直和分解与枢轴元素
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Sequence, Tuple

import networkx as nx
from networkx.algorithms import bipartite

from app.core.lattice_path import EAST, NORTH, LatticePath, Point, parse_path
from app.utils.errors import DiagramError, ElementError, ParseError, PreconditionError

logger = logging.getLogger(__name__)

Interval = Tuple[int, int]


def _column_profile(path: LatticePath) -> Tuple[List[int], List[int]]:
    """每一列上路径的最低与最高 y 坐标"""
    bottom: Dict[int, int] = {}
    top: Dict[int, int] = {}
    for x, y in path.points:
        bottom.setdefault(x, y)
        top[x] = y
    m = path.m
    return [bottom[x] for x in range(m + 1)], [top[x] for x in range(m + 1)]


def dominance_by_positions(lower: LatticePath, upper: LatticePath) -> int:
    """
    按 N 步位置检查支配关系 t_i <= s_i

    Returns:
        第一个不满足的下标 i（1 起始），全部满足时返回 0
    """
    for i, (s_i, t_i) in enumerate(zip(lower.north_positions, upper.north_positions), start=1):
        if t_i > s_i:
            return i
    return 0


def dominance_by_prefix(lower: LatticePath, upper: LatticePath) -> bool:
    """按前缀检查支配关系：Q 的每个前缀的 N 步数不少于 P 的同长前缀"""
    north_lower = north_upper = 0
    for p, q in zip(lower.steps, upper.steps):
        north_lower += p == NORTH
        north_upper += q == NORTH
        if north_upper < north_lower:
            return False
    return True


@dataclass(frozen=True)
class LpmDiagram:
    """
    格路拟阵 M[P,Q] 的图：下路径 P 与上路径 Q

    元素为 1..m+r，第 i 个元素对应两条路径的第 i 步。
    """

    lower: LatticePath
    upper: LatticePath

    def __post_init__(self):
        if self.lower.endpoint != self.upper.endpoint:
            raise DiagramError(
                f"两条路径终点不一致: P 终点 {self.lower.endpoint}, Q 终点 {self.upper.endpoint}"
            )
        bad = dominance_by_positions(self.lower, self.upper)
        if bad:
            raise DiagramError(
                f"支配关系不成立: t_{bad}={self.upper.north_positions[bad - 1]} > "
                f"s_{bad}={self.lower.north_positions[bad - 1]}",
                position=bad,
            )

    # ------------------------------------------------------------------
    # 基本属性
    # ------------------------------------------------------------------

    @property
    def m(self) -> int:
        return self.lower.m

    @property
    def r(self) -> int:
        return self.lower.r

    @property
    def size(self) -> int:
        return self.lower.length

    @property
    def ground(self) -> Tuple[int, ...]:
        return tuple(range(1, self.size + 1))

    @cached_property
    def presentation(self) -> Tuple[Interval, ...]:
        """横截表示 (A_1, ..., A_r)，A_i = [t_i, s_i]"""
        return tuple(zip(self.upper.north_positions, self.lower.north_positions))

    def canonical(self) -> str:
        return f"P:{self.lower};Q:{self.upper}"

    def __str__(self) -> str:
        return self.canonical()

    # ------------------------------------------------------------------
    # 秩
    # ------------------------------------------------------------------

    def to_mask(self, subset: Iterable[int]) -> int:
        """将元素集合编码为位掩码（元素 i 对应第 i-1 位）"""
        mask = 0
        for e in subset:
            if not isinstance(e, int) or e < 1 or e > self.size:
                raise ElementError(f"元素 {e} 不在基集 1..{self.size} 中", position=e if isinstance(e, int) else None)
            mask |= 1 << (e - 1)
        return mask

    def rank_mask(self, mask: int) -> int:
        """
        贪心计算秩：按升序扫描元素，分配给包含它的、下标最小的未用区间

        区间左右端点都单调不减，因此指针 j 之前的区间要么已用要么已失效。
        """
        starts, ends = self.upper.north_positions, self.lower.north_positions
        r = len(starts)
        j = 0
        rank = 0
        e = 1
        while mask and j < r:
            if mask & 1:
                while j < r and ends[j] < e:
                    j += 1
                if j < r and starts[j] <= e:
                    rank += 1
                    j += 1
            mask >>= 1
            e += 1
        return rank

    def rank(self, subset: Iterable[int]) -> int:
        """
        计算子集的秩

        Args:
            subset: 基集中的元素

        Returns:
            子集与区间之间最大匹配的大小
        """
        return self.rank_mask(self.to_mask(subset))

    # ------------------------------------------------------------------
    # 对偶、环与余环
    # ------------------------------------------------------------------

    def dual(self) -> "LpmDiagram":
        """沿对角线反射得到对偶拟阵的图，元素编号不变"""
        return LpmDiagram(lower=self.upper.swapped(), upper=self.lower.swapped())

    def _shared_steps(self) -> List[Tuple[int, str]]:
        shared = []
        for i, (p, q) in enumerate(zip(self.lower.steps, self.upper.steps), start=1):
            if p == q and self.lower.points[i - 1] == self.upper.points[i - 1]:
                shared.append((i, p))
        return shared

    def loops(self) -> FrozenSet[int]:
        """P 与 Q 共享的水平边"""
        return frozenset(i for i, step in self._shared_steps() if step == EAST)

    def coloops(self) -> FrozenSet[int]:
        """P 与 Q 共享的竖直边"""
        return frozenset(i for i, step in self._shared_steps() if step == NORTH)

    def is_lc(self) -> bool:
        return not self._shared_steps()

    # ------------------------------------------------------------------
    # 连通性与直和
    # ------------------------------------------------------------------

    def meeting_steps(self) -> Tuple[int, ...]:
        """P 与 Q 在内部相遇的步数 k（0 < k < n）"""
        return tuple(
            k for k in range(1, self.size)
            if self.lower.points[k] == self.upper.points[k]
        )

    def is_connected(self) -> bool:
        return not self.meeting_steps()

    def components(self) -> List["LpmDiagram"]:
        """在每个内部相遇点处切开，返回平移到原点的连通分量"""
        cuts = [0, *self.meeting_steps(), self.size]
        parts = []
        for a, b in zip(cuts, cuts[1:]):
            parts.append(LpmDiagram(
                lower=LatticePath(self.lower.steps[a:b]),
                upper=LatticePath(self.upper.steps[a:b]),
            ))
        return parts

    # ------------------------------------------------------------------
    # 区域几何
    # ------------------------------------------------------------------

    @cached_property
    def _profiles(self):
        return _column_profile(self.lower), _column_profile(self.upper)

    def column_range(self, x: int) -> Tuple[int, int]:
        """第 x 列上属于区域的格点 y 范围（闭区间）"""
        (p_bottom, _), (_, q_top) = self._profiles
        return p_bottom[x], q_top[x]

    def region_cells(self) -> List[Point]:
        """区域内的单位方格（以左下角表示）"""
        (_, p_top), (_, q_top) = self._profiles
        cells = []
        for x in range(self.m):
            for y in range(p_top[x], q_top[x]):
                cells.append((x, y))
        return cells

    def interior_points(self) -> FrozenSet[Point]:
        """严格位于 P 与 Q 之间的格点"""
        (_, p_top), (q_bottom, _) = self._profiles
        points = set()
        for x in range(self.m + 1):
            for y in range(p_top[x] + 1, q_bottom[x]):
                points.add((x, y))
        return frozenset(points)

    def pivot_element(self) -> int:
        """
        枢轴元素：取最高、其次最右的内部格点 (x, y)，返回 e = x + y + 1

        Returns:
            枢轴元素编号
        """
        points = self.interior_points()
        if not points:
            raise PreconditionError(f"图 {self} 没有内部格点（蛇形或不连通），不存在枢轴元素")
        if not self.is_connected():
            raise PreconditionError(f"图 {self} 不连通，不存在枢轴元素")
        x, y = max(points, key=lambda p: (p[1], p[0]))
        return x + y + 1


def lpm_new(lower: LatticePath, upper: LatticePath) -> LpmDiagram:
    """
    构造并验证 LPM 图

    Args:
        lower: 下路径 P
        upper: 上路径 Q

    Returns:
        验证通过的图
    """
    return LpmDiagram(lower=lower, upper=upper)


def direct_sum(parts: Sequence[LpmDiagram]) -> LpmDiagram:
    """将若干个图首尾相接得到直和"""
    if not parts:
        raise DiagramError("直和至少需要一个分量")
    lower = "".join(d.lower.steps for d in parts)
    upper = "".join(d.upper.steps for d in parts)
    return LpmDiagram(LatticePath(lower), LatticePath(upper))


def uniform(r: int, n: int) -> LpmDiagram:
    """均匀拟阵 U_{r,r+n}"""
    if r < 0 or n < 0 or r + n == 0:
        raise DiagramError(f"均匀拟阵参数无效: r={r}, n={n}")
    return LpmDiagram(
        lower=LatticePath(EAST * n + NORTH * r),
        upper=LatticePath(NORTH * r + EAST * n),
    )


def catalan(k: int) -> LpmDiagram:
    """k-Catalan 拟阵：Q = (NE)^k, P = E^k N^k"""
    if k < 1:
        raise DiagramError(f"Catalan 拟阵参数无效: k={k}")
    return LpmDiagram(
        lower=LatticePath(EAST * k + NORTH * k),
        upper=LatticePath((NORTH + EAST) * k),
    )


def bipartite_rank(diagram: LpmDiagram, subset: Iterable[int]) -> int:
    """用 Hopcroft-Karp 最大匹配计算秩，作为贪心秩的独立对照"""
    elements = sorted(set(subset))
    diagram.to_mask(elements)
    graph = nx.Graph()
    left = [("e", e) for e in elements]
    graph.add_nodes_from(left)
    graph.add_nodes_from(("A", i) for i in range(len(diagram.presentation)))
    for e in elements:
        for i, (t, s) in enumerate(diagram.presentation):
            if t <= e <= s:
                graph.add_edge(("e", e), ("A", i))
    matching = bipartite.hopcroft_karp_matching(graph, top_nodes=left)
    return len(matching) // 2


def parse_diagram(text: str) -> LpmDiagram:
    """
    解析 "P:<word>;Q:<word>" 格式（忽略空白与大小写）

    Args:
        text: 图的文本表示

    Returns:
        验证通过的图
    """
    if text is None:
        raise ParseError("图文本为空", position=1)
    compact = "".join(text.split()).upper()
    if not compact:
        raise ParseError("图文本为空", position=1)
    words: Dict[str, str] = {}
    offset = 0
    for part in compact.split(";"):
        if len(part) < 2 or part[1] != ":" or part[0] not in ("P", "Q"):
            raise ParseError(f"无法识别的片段 '{part}'，应为 P:<word> 或 Q:<word>", position=offset + 1)
        if part[0] in words:
            raise ParseError(f"重复的路径 '{part[0]}'", position=offset + 1)
        try:
            parse_path(part[2:])
        except ParseError as e:
            raise ParseError(e.message, position=offset + 2 + (e.position or 1)) from e
        words[part[0]] = part[2:]
        offset += len(part) + 1
    if set(words) != {"P", "Q"}:
        raise ParseError("图文本必须同时包含 P 与 Q", position=len(compact))
    return lpm_new(LatticePath(words["P"]), LatticePath(words["Q"]))


def format_diagram(diagram: LpmDiagram) -> str:
    return diagram.canonical()


def parse_subset(text: str) -> FrozenSet[int]:
    """解析逗号分隔的 1 起始下标"""
    if not text or not text.strip():
        return frozenset()
    values = set()
    for i, token in enumerate(text.split(","), start=1):
        token = token.strip()
        if not token.isdigit():
            raise ParseError(f"子集中的第 {i} 项 '{token}' 不是正整数", position=i)
        values.add(int(token))
    return frozenset(values)


def format_subset(subset: Iterable[int]) -> str:
    return ",".join(str(e) for e in sorted(subset))
