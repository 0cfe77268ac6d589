"""
Tutte 多项式引擎：余秩-零度暴力求和、格路动态规划计数与各类恒等式检查
"""

import logging
from collections import Counter
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple, Union

from app.core.diagram import LpmDiagram, direct_sum, parse_diagram
from app.core.lattice_path import EAST
from app.core.matroid import MinorMatroid
from app.core.polynomial import BivariatePolynomial, Exponent
from app.utils.config import Config
from app.utils.errors import CapExceededError, PreconditionError

logger = logging.getLogger(__name__)

MatroidLike = Union[MinorMatroid, LpmDiagram]
EvalPoint = Tuple[int, int]


def _as_minor(matroid: MatroidLike) -> MinorMatroid:
    if isinstance(matroid, LpmDiagram):
        return MinorMatroid.from_diagram(matroid)
    return matroid


def _diagram_rank_table(diagram: LpmDiagram) -> List[int]:
    """
    整图的秩表，按掩码递增顺序增量计算

    mask 的最高位元素大于其余所有元素，因此贪心过程可以在去掉最高位的掩码的状态上继续。
    """
    n = diagram.size
    starts, ends = diagram.upper.north_positions, diagram.lower.north_positions
    r = len(starts)
    ranks = [0] * (1 << n)
    pointer = [0] * (1 << n)
    for top in range(n):
        e = top + 1
        base = 1 << top
        for prev in range(base):
            j = pointer[prev]
            rank = ranks[prev]
            while j < r and ends[j] < e:
                j += 1
            if j < r and starts[j] <= e:
                rank += 1
                j += 1
            ranks[base | prev] = rank
            pointer[base | prev] = j
    return ranks


def corank_nullity_counts(matroid: MatroidLike, cap: int = None) -> Counter:
    """
    统计所有子集的 (余秩, 零度) 分布

    Args:
        matroid: 子式拟阵或 LPM 图
        cap: 元素个数上限，默认取配置

    Returns:
        (r(E)-r(A), |A|-r(A)) -> 子集个数
    """
    minor = _as_minor(matroid)
    cap = Config.BRUTE_FORCE_CAP if cap is None else cap
    n = minor.size
    if n > cap:
        raise CapExceededError(f"元素个数 {n} 超过暴力求和上限 {cap}，请分解或使用闭式公式", position=n)
    if not minor.deleted and not minor.contracted:
        table = _diagram_rank_table(minor.diagram)
    else:
        table = minor.rank_table()
    full = table[-1]
    counts: Counter = Counter()
    for mask, rank in enumerate(table):
        counts[(full - rank, bin(mask).count("1") - rank)] += 1
    return counts


def evaluate_counts(counts: Dict[Exponent, int], x: int, y: int) -> int:
    """直接在整数点上对余秩-零度和求值，不构造多项式"""
    return sum(c * (x - 1) ** a * (y - 1) ** b for (a, b), c in counts.items())


def tutte_subset_sum(matroid: MatroidLike, cap: int = None) -> BivariatePolynomial:
    """
    按定义对所有子集求和得到 Tutte 多项式

    Args:
        matroid: 子式拟阵或 LPM 图
        cap: 元素个数上限

    Returns:
        Tutte 多项式
    """
    counts = corank_nullity_counts(matroid, cap)
    return BivariatePolynomial.from_shifted(counts)


def evaluate(polynomial: BivariatePolynomial, x: int, y: int) -> int:
    return polynomial.evaluate(x, y)


def count_bases(diagram: LpmDiagram) -> int:
    """
    统计夹在 P 与 Q 之间的单调格路条数，即基的个数

    按列动态规划，时间与空间均为 O(m·r)。
    """
    ways: Dict[int, int] = {}
    for x in range(diagram.m + 1):
        low, high = diagram.column_range(x)
        column: Dict[int, int] = {}
        running = 0
        for y in range(low, high + 1):
            if x == 0 and y == 0:
                running = 1
            else:
                running = running + ways.get(y, 0)
            column[y] = running
        ways = column
    return ways.get(diagram.r, 0)


# ----------------------------------------------------------------------
# 按连通分量计算
# ----------------------------------------------------------------------

@lru_cache(maxsize=65536)
def _component_counts(canonical: str, cap: int) -> Tuple[Tuple[Exponent, int], ...]:
    counts = corank_nullity_counts(parse_diagram(canonical), cap)
    return tuple(sorted(counts.items()))


def _single_element_factor(component: LpmDiagram) -> BivariatePolynomial:
    # 单元素分量是环（共享水平边）或余环（共享竖直边）
    if component.lower.steps == EAST:
        return BivariatePolynomial.y()
    return BivariatePolynomial.x()


def tutte_lpm(diagram: LpmDiagram, cap: int = None) -> BivariatePolynomial:
    """
    分解为连通分量后求 Tutte 多项式之积

    Args:
        diagram: LPM 图
        cap: 每个分量的元素个数上限

    Returns:
        Tutte 多项式
    """
    cap = Config.BRUTE_FORCE_CAP if cap is None else cap
    result = BivariatePolynomial.constant(1)
    for component in diagram.components():
        if component.size == 1:
            result = result * _single_element_factor(component)
        else:
            counts = dict(_component_counts(component.canonical(), cap))
            result = result * BivariatePolynomial.from_shifted(counts)
    return result


def evaluate_points(diagram: LpmDiagram, points: Sequence[EvalPoint], cap: int = None) -> List[int]:
    """
    在若干整数点上求 tutte_lpm 的值，按分量直接累加不展开多项式

    Args:
        diagram: LPM 图
        points: 求值点列表
        cap: 每个分量的元素个数上限

    Returns:
        与 points 对应的值
    """
    cap = Config.BRUTE_FORCE_CAP if cap is None else cap
    values = [1] * len(points)
    for component in diagram.components():
        if component.size == 1:
            factor = _single_element_factor(component)
            values = [v * factor.evaluate(x, y) for v, (x, y) in zip(values, points)]
            continue
        counts = dict(_component_counts(component.canonical(), cap))
        values = [v * evaluate_counts(counts, x, y) for v, (x, y) in zip(values, points)]
    return values


# ----------------------------------------------------------------------
# 恒等式检查
# ----------------------------------------------------------------------

def check_deletion_contraction(matroid: MatroidLike, e: int, cap: int = None) -> bool:
    """
    检查 T(M) = T(M\\e) + T(M/e)

    Args:
        matroid: 子式拟阵或 LPM 图
        e: 既不是环也不是余环的元素

    Returns:
        恒等式是否成立
    """
    minor = _as_minor(matroid)
    if minor.is_loop(e):
        raise PreconditionError(f"元素 {e} 是环: use factor y", position=e, code="loop")
    if minor.is_coloop(e):
        raise PreconditionError(f"元素 {e} 是余环: use factor x", position=e, code="coloop")
    whole = tutte_subset_sum(minor, cap)
    parts = tutte_subset_sum(minor.delete(e), cap) + tutte_subset_sum(minor.contract(e), cap)
    if whole != parts:
        logger.warning(f"删除/收缩恒等式在 {minor} 的元素 {e} 处不成立: {whole} != {parts}")
    return whole == parts


def check_duality(diagram: LpmDiagram, cap: int = None) -> bool:
    """检查 T(M;x,y) = T(M*;y,x)"""
    left = tutte_lpm(diagram, cap).swap_variables()
    right = tutte_lpm(diagram.dual(), cap)
    if left != right:
        logger.warning(f"对偶恒等式在 {diagram} 上不成立")
    return left == right


def check_direct_sum(first: LpmDiagram, second: LpmDiagram, cap: int = None) -> bool:
    """检查直和的乘积法则"""
    whole = tutte_lpm(direct_sum([first, second]), cap)
    return whole == tutte_lpm(first, cap) * tutte_lpm(second, cap)


def loop_coloop_factor_holds(diagram: LpmDiagram, cap: int = None) -> bool:
    """k 条共享水平边与 l 条共享竖直边时，多项式被 y^k x^l 整除"""
    polynomial = tutte_lpm(diagram, cap)
    return polynomial.divisible_by_monomial(len(diagram.coloops()), len(diagram.loops()))

