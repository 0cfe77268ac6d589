"""
多扇图模块：由蛇形构造多扇图、展开为多重图、生成树计数与定向计数
"""

import logging
import re
from collections import defaultdict, deque
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Dict, List, Optional, Tuple

import networkx as nx
import numpy as np

from app.core.polynomial import BivariatePolynomial
from app.snakes.orientation import components_strongly_connected, is_acyclic
from app.snakes.snake import SnakeComposition
from app.utils.config import Config
from app.utils.errors import CapExceededError, CompositionError, ParseError

logger = logging.getLogger(__name__)

_FAN_PATTERN = re.compile(r"^F\(C=(\d+(?:,\d+)*)(?:;D=(\d+(?:,\d+)*)?)?\)$")

Edge = Tuple[int, int, int]


@dataclass(frozen=True)
class MultiFan:
    """
    多扇图 F(c, d)：中心 x 以 c_i 条平行边连到脊柱顶点 v_i，
    相邻的 v_j 与 v_{j+1} 之间是 d_j 条串联边组成的路
    """

    c: Tuple[int, ...]
    d: Tuple[int, ...] = ()

    def __post_init__(self):
        if not self.c:
            raise CompositionError("多扇图至少需要一个平行边束")
        if len(self.d) != len(self.c) - 1:
            raise CompositionError(f"d 的长度应为 {len(self.c) - 1}，当前为 {len(self.d)}")
        for name, values in (("c", self.c), ("d", self.d)):
            for i, value in enumerate(values, start=1):
                if value < 1:
                    raise CompositionError(f"{name}_{i} 必须 >= 1，当前为 {value}", position=i)

    @property
    def length(self) -> int:
        return len(self.c)

    @property
    def edge_count(self) -> int:
        return sum(self.c) + sum(self.d)

    def __str__(self) -> str:
        c = ",".join(str(v) for v in self.c)
        if not self.d:
            return f"F(c={c})"
        return f"F(c={c};d={','.join(str(v) for v in self.d)})"


def parse_fan(text: str) -> MultiFan:
    """解析 "F(c=2,1;d=2)" 格式"""
    compact = "".join((text or "").split()).upper()
    match = _FAN_PATTERN.match(compact)
    if not match:
        raise ParseError(f"无法解析多扇图 '{text}'，应为 F(c=...;d=...)", position=1)
    c = tuple(int(v) for v in match.group(1).split(","))
    d = tuple(int(v) for v in match.group(2).split(",")) if match.group(2) else ()
    return MultiFan(c, d)


def format_fan(fan: MultiFan) -> str:
    return str(fan)


@dataclass(frozen=True)
class Multigraph:
    """显式多重图：顶点 0..vertex_count-1，边为 (端点, 端点, 编号)"""

    vertex_count: int
    edges: Tuple[Edge, ...]

    def __post_init__(self):
        ids = set()
        for u, v, edge_id in self.edges:
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise ParseError(f"边 {edge_id} 的端点 ({u}, {v}) 不是有效顶点", position=edge_id)
            if u == v:
                raise ParseError(f"边 {edge_id} 是自环，多重图不允许自环", position=edge_id)
            if edge_id in ids:
                raise ParseError(f"边编号 {edge_id} 重复", position=edge_id)
            ids.add(edge_id)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def to_networkx(self) -> nx.MultiGraph:
        graph = nx.MultiGraph()
        graph.add_nodes_from(range(self.vertex_count))
        for u, v, edge_id in self.edges:
            graph.add_edge(u, v, key=edge_id)
        return graph

    def is_connected(self) -> bool:
        if self.vertex_count == 0:
            return True
        return nx.is_connected(self.to_networkx())

    @cached_property
    def parallel_classes(self) -> List[Tuple[int, int, Tuple[int, ...]]]:
        """按端点分组的平行边类：(u, v, 边编号)"""
        groups: Dict[Tuple[int, int], List[int]] = defaultdict(list)
        for u, v, edge_id in self.edges:
            groups[(min(u, v), max(u, v))].append(edge_id)
        return [(u, v, tuple(ids)) for (u, v), ids in sorted(groups.items())]

    def serialize(self) -> Dict[str, object]:
        return {"vertex_count": str(self.vertex_count), "edges": [list(e) for e in self.edges]}


# ----------------------------------------------------------------------
# 蛇形与多扇图
# ----------------------------------------------------------------------

def fan_from_snake(snake: SnakeComposition) -> MultiFan:
    """
    蛇形 S(a_1..a_n) 对应的多扇图

    n = 2 时 c = (a_1, 1)。
    """
    a = snake.parts
    n = snake.n
    if n == 1:
        return MultiFan((a[0] + 1,))
    k = n // 2
    d = tuple(a[2 * j - 1] - 1 for j in range(1, k + 1))
    middle = tuple(a[2 * j] - 1 for j in range(1, k))
    if n % 2:
        c = (a[0], *middle, a[2 * k])
    else:
        c = (a[0], *middle, 1)
    fan = MultiFan(c, d)
    if fan.edge_count != snake.element_count:
        raise CompositionError(f"{snake} 对应的 {fan} 边数 {fan.edge_count} 与元素数 {snake.element_count} 不符")
    return fan


def fan_from_dual_snake(snake: SnakeComposition) -> MultiFan:
    """按对偶蛇形的参数公式直接给出 F(c', d')"""
    a = snake.parts
    n = snake.n
    if n == 1 and a[0] == 1:
        return MultiFan((2,))
    if a[0] > 1:
        k = n // 2
        d = tuple(a[2 * j] - 1 for j in range(0, (n + 1) // 2))
        if n % 2:
            c = (1, *(a[2 * j - 1] - 1 for j in range(1, k + 1)), 1)
        else:
            c = (1, *(a[2 * j - 1] - 1 for j in range(1, k)), a[2 * k - 1])
        return MultiFan(c, d)
    if n == 2:
        return MultiFan((a[1] + 1,))
    k = n // 2
    if n % 2:
        c = (a[1], *(a[2 * j - 1] - 1 for j in range(2, k + 1)), 1)
        d = tuple(a[2 * j] - 1 for j in range(1, k + 1))
    else:
        c = (a[1], *(a[2 * j - 1] - 1 for j in range(2, k)), a[2 * k - 1])
        d = tuple(a[2 * j] - 1 for j in range(1, k))
    return MultiFan(c, d)


def expand(fan: MultiFan) -> Multigraph:
    """
    展开为显式多重图：中心为顶点 0，脊柱 v_j 与 v_{j+1} 之间插入 d_j - 1 个中间顶点

    Args:
        fan: 多扇图参数

    Returns:
        多重图
    """
    edges: List[Edge] = []
    next_vertex = 1
    spine = 1
    for i, bundle in enumerate(fan.c):
        for _ in range(bundle):
            edges.append((0, spine, len(edges)))
        next_vertex = max(next_vertex, spine + 1)
        if i < len(fan.d):
            current = spine
            for _ in range(fan.d[i] - 1):
                edges.append((current, next_vertex, len(edges)))
                current = next_vertex
                next_vertex += 1
            spine = next_vertex
            next_vertex += 1
            edges.append((current, spine, len(edges)))
    return Multigraph(vertex_count=next_vertex, edges=tuple(edges))


# ----------------------------------------------------------------------
# 生成树
# ----------------------------------------------------------------------

def bareiss_determinant(matrix: np.ndarray) -> int:
    """Bareiss 无分数消元求整数行列式"""
    n = matrix.shape[0]
    if n == 0:
        return 1
    work = np.array(matrix, dtype=object, copy=True)
    sign = 1
    previous = 1
    for k in range(n - 1):
        if work[k, k] == 0:
            swap = next((i for i in range(k + 1, n) if work[i, k] != 0), None)
            if swap is None:
                return 0
            work[[k, swap]] = work[[swap, k]]
            sign = -sign
        pivot = work[k, k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                work[i, j] = (work[i, j] * pivot - work[i, k] * work[k, j]) // previous
        previous = pivot
    return sign * int(work[n - 1, n - 1])


def laplacian(graph: Multigraph) -> np.ndarray:
    """按重数加权的拉普拉斯矩阵"""
    nx_graph = graph.to_networkx()
    size = graph.vertex_count
    matrix = np.zeros((size, size), dtype=object)
    for u in range(size):
        matrix[u, u] = int(nx_graph.degree(u))
    for u, v, _ in graph.edges:
        matrix[u, v] -= 1
        matrix[v, u] -= 1
    return matrix


def spanning_trees(graph: Multigraph) -> int:
    """
    矩阵树定理：删去中心顶点所在的行与列后求行列式

    Returns:
        生成树个数，不连通时为 0
    """
    if not graph.is_connected():
        logger.warning(f"多重图不连通（{graph.vertex_count} 个顶点），生成树个数为 0")
        return 0
    matrix = laplacian(graph)
    return bareiss_determinant(matrix[1:, 1:])


# ----------------------------------------------------------------------
# 定向计数
# ----------------------------------------------------------------------

def acyclic_formula(fan: MultiFan) -> int:
    """无环定向数 2 Π (2^{d_j + 1} - 1)，只依赖 d"""
    result = 2
    for d_j in fan.d:
        result *= 2 ** (d_j + 1) - 1
    return result


def acyclic_bruteforce(graph: Multigraph, cap: int = None) -> int:
    """
    枚举每个平行类的方向并检验无环

    同一平行类中方向不一致必然成环，因此每类只取一个方向；
    反转全部方向保持无环，固定第一类后结果乘 2。
    """
    cap = Config.ORIENTATION_CAP if cap is None else cap
    classes = graph.parallel_classes
    k = len(classes)
    if k > cap:
        raise CapExceededError(f"平行类个数 {k} 超过定向枚举上限 {cap}", position=k)
    if k == 0:
        return 1
    count = 0
    for mask in range(1 << (k - 1)):
        arcs = [(classes[0][0], classes[0][1])]
        for i, (u, v, _) in enumerate(classes[1:]):
            arcs.append((v, u) if mask >> i & 1 else (u, v))
        if is_acyclic(graph.vertex_count, arcs):
            count += 1
    return 2 * count


def totally_cyclic_bruteforce(graph: Multigraph, cap: int = None) -> int:
    """枚举每条边的方向，统计每个连通分量都强连通的定向"""
    cap = Config.ORIENTATION_CAP if cap is None else cap
    m = graph.edge_count
    if m > cap:
        raise CapExceededError(f"边数 {m} 超过定向枚举上限 {cap}", position=m)
    if m == 0:
        return 1
    components = [set(c) for c in nx.connected_components(graph.to_networkx())]
    first_u, first_v, _ = graph.edges[0]
    count = 0
    for mask in range(1 << (m - 1)):
        arcs = [(first_u, first_v)]
        for i, (u, v, _) in enumerate(graph.edges[1:]):
            arcs.append((v, u) if mask >> i & 1 else (u, v))
        if components_strongly_connected(graph.vertex_count, arcs, components):
            count += 1
    return 2 * count


# ----------------------------------------------------------------------
# 图上的删除/收缩
# ----------------------------------------------------------------------

def _canonical(edges) -> Tuple[Tuple[int, int], ...]:
    labels: Dict[int, int] = {}
    relabeled = []
    for u, v in edges:
        for w in (u, v):
            if w not in labels:
                labels[w] = len(labels)
        a, b = labels[u], labels[v]
        relabeled.append((a, b) if a <= b else (b, a))
    return tuple(sorted(relabeled))


def _reachable(edges, source: int, target: int) -> bool:
    neighbours: Dict[int, List[int]] = defaultdict(list)
    for u, v in edges:
        neighbours[u].append(v)
        neighbours[v].append(u)
    seen = {source}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        if u == target:
            return True
        for w in neighbours[u]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return False


@lru_cache(maxsize=200000)
def _edge_list_tutte(edges: Tuple[Tuple[int, int], ...]) -> BivariatePolynomial:
    """
    对边表做删除/收缩

    一次处理一整个平行类 {e_1..e_k}（端点 u, v）：收缩 e_1 后其余变为环，
    因此 T(G) = T(G - 类) + (1 + y + ... + y^{k-1}) T(G / 类)；
    若该类是桥类，则末项中的 1 换成 x。
    """
    if not edges:
        return BivariatePolynomial.constant(1)
    loops = sum(1 for a, b in edges if a == b)
    if loops:
        rest = tuple(e for e in edges if e[0] != e[1])
        return BivariatePolynomial({(0, loops): 1}) * _edge_list_tutte(_canonical(rest))
    u, v = edges[0]
    bundle = sum(1 for e in edges if e == (u, v))
    rest = tuple(e for e in edges if e != (u, v))
    contracted = _canonical(tuple((u if a == v else a, u if b == v else b) for a, b in rest))
    powers = {(0, j): 1 for j in range(1, bundle)}
    if _reachable(rest, u, v):
        powers[(0, 0)] = 1
        factor = BivariatePolynomial(powers)
        return _edge_list_tutte(_canonical(rest)) + factor * _edge_list_tutte(contracted)
    powers[(1, 0)] = 1
    return BivariatePolynomial(powers) * _edge_list_tutte(contracted)


def graph_tutte(graph: Multigraph, cap: int = None) -> BivariatePolynomial:
    """
    多重图的 Tutte 多项式（删除/收缩递归）

    Args:
        graph: 多重图
        cap: 边数上限

    Returns:
        Tutte 多项式
    """
    cap = Config.GRAPH_TUTTE_CAP if cap is None else cap
    if graph.edge_count > cap:
        raise CapExceededError(f"边数 {graph.edge_count} 超过图 Tutte 计算上限 {cap}", position=graph.edge_count)
    return _edge_list_tutte(_canonical((u, v) for u, v, _ in graph.edges))


def graph_bases(graph: Multigraph, cap: int = None) -> int:
    """由 Tutte 多项式在 (1,1) 处的值得到生成树个数"""
    return graph_tutte(graph, cap).evaluate(1, 1)


def fan_summary(fan: MultiFan, cap: Optional[int] = None) -> Dict[str, object]:
    """汇总多扇图的各项计数"""
    graph = expand(fan)
    summary: Dict[str, object] = {
        "fan": str(fan),
        "vertices": str(graph.vertex_count),
        "edges": str(graph.edge_count),
        "spanning_trees": str(spanning_trees(graph)),
        "acyclic_formula": str(acyclic_formula(fan)),
    }
    try:
        summary["acyclic_bruteforce"] = str(acyclic_bruteforce(graph, cap))
        summary["totally_cyclic_bruteforce"] = str(totally_cyclic_bruteforce(graph, cap))
    except CapExceededError as e:
        logger.warning(f"{fan} 的定向枚举被跳过: {e}")
        summary["orientation_skipped"] = e.message
    try:
        summary["tutte"] = str(graph_tutte(graph))
    except CapExceededError as e:
        logger.info(f"{fan} 的 Tutte 多项式未计算: {e}")
    return summary
