"""
定向判定：拓扑排序判无环、两遍可达性判强连通，均为非递归实现
"""

from collections import deque
from typing import List, Sequence, Tuple

Arc = Tuple[int, int]


def adjacency(vertex_count: int, arcs: Sequence[Arc]) -> Tuple[List[List[int]], List[List[int]]]:
    """正向与反向邻接表"""
    forward: List[List[int]] = [[] for _ in range(vertex_count)]
    backward: List[List[int]] = [[] for _ in range(vertex_count)]
    for u, v in arcs:
        forward[u].append(v)
        backward[v].append(u)
    return forward, backward


def is_acyclic(vertex_count: int, arcs: Sequence[Arc]) -> bool:
    """Kahn 拓扑排序：能删完所有顶点即无有向环"""
    indegree = [0] * vertex_count
    forward: List[List[int]] = [[] for _ in range(vertex_count)]
    for u, v in arcs:
        forward[u].append(v)
        indegree[v] += 1
    queue = deque(v for v in range(vertex_count) if indegree[v] == 0)
    removed = 0
    while queue:
        u = queue.popleft()
        removed += 1
        for v in forward[u]:
            indegree[v] -= 1
            if indegree[v] == 0:
                queue.append(v)
    return removed == vertex_count


def _reach(start: int, neighbours: List[List[int]], limit: set) -> set:
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for v in neighbours[u]:
            if v not in seen and v in limit:
                seen.add(v)
                stack.append(v)
    return seen


def components_strongly_connected(vertex_count: int, arcs: Sequence[Arc], components: Sequence[set]) -> bool:
    """
    每个（无向意义下的）连通分量是否强连通

    等价于每条弧都在某个有向环上。
    """
    forward, backward = adjacency(vertex_count, arcs)
    for component in components:
        root = next(iter(component))
        if len(_reach(root, forward, component)) != len(component):
            return False
        if len(_reach(root, backward, component)) != len(component):
            return False
    return True
