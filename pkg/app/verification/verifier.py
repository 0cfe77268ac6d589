"""
穷举验证模块：按元素个数枚举 LPM 图，检查 Merino-Welsh 不等式及其 4/3 强化
"""

import logging
import multiprocessing as mp
from fractions import Fraction
from itertools import combinations
from typing import Dict, Iterator, List, Optional, Tuple

from pydantic import BaseModel, field_serializer

from app.core.diagram import LpmDiagram, parse_diagram
from app.core.lattice_path import LatticePath
from app.core.matroid import MinorMatroid
from app.core.tutte import corank_nullity_counts, count_bases, evaluate_counts, evaluate_points
from app.snakes.snake import eval02, eval20, recognize_snake
from app.utils.config import Config
from app.utils.errors import CapExceededError, ParseError, PreconditionError

logger = logging.getLogger(__name__)

FILTERS = ("all", "lc", "lc_connected")

_MW_POINTS = [(2, 0), (0, 2)]


# ----------------------------------------------------------------------
# 枚举
# ----------------------------------------------------------------------

def enumerate_diagrams(n: int, filter: str = "all") -> Iterator[LpmDiagram]:
    """
    枚举 n 个元素的全部 LPM 图（不做同构约化）

    顺序：m 从 0 到 n，P 的 N 步位置按字典序，Q 的 N 步位置按字典序。

    Args:
        n: 元素个数
        filter: all / lc / lc_connected

    Returns:
        图的生成器
    """
    if n < 1:
        raise ParseError(f"元素个数必须 >= 1，当前为 {n}", position=1)
    if filter not in FILTERS:
        raise ParseError(f"未知的过滤条件 '{filter}'，可选 {', '.join(FILTERS)}")
    for m in range(n + 1):
        r = n - m
        positions = list(combinations(range(1, n + 1), r))
        for lower_positions in positions:
            lower = LatticePath.from_north_positions(lower_positions, n)
            for upper_positions in positions:
                if any(t > s for t, s in zip(upper_positions, lower_positions)):
                    continue
                diagram = LpmDiagram(lower, LatticePath.from_north_positions(upper_positions, n))
                if filter != "all" and not diagram.is_lc():
                    continue
                if filter == "lc_connected" and not diagram.is_connected():
                    continue
                yield diagram


def is_trivial_snake_sum(diagram: LpmDiagram) -> bool:
    """每个连通分量都是单个方格 S(1)"""
    return all(c.lower.steps == "EN" and c.upper.steps == "NE" for c in diagram.components())


# ----------------------------------------------------------------------
# 单个图的检查
# ----------------------------------------------------------------------

class MwReport(BaseModel):
    """单个图的 Merino-Welsh 检查结果，所有比较都是精确整数比较"""

    diagram: str
    t20: int
    t02: int
    bases: int
    product: int
    lhs: int
    rhs_43: int
    rhs_mw: int
    satisfies_mw: bool
    satisfies_43: bool
    equality_mw: bool
    equality_43: bool
    satisfies_max: bool
    satisfies_additive: bool
    is_trivial_snake_sum: bool
    is_connected: bool
    is_snake: bool

    @field_serializer("t20", "t02", "bases", "product", "lhs", "rhs_43", "rhs_mw")
    def _decimal(self, value: int) -> str:
        return str(value)

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.product, self.rhs_mw)

    def flags(self) -> List[str]:
        names = ("satisfies_mw", "satisfies_43", "equality_mw", "equality_43",
                 "is_trivial_snake_sum", "is_connected", "is_snake")
        return [name for name in names if getattr(self, name)]


def _component_values(component: LpmDiagram, cap: int, use_closed_forms: bool) -> Tuple[int, int]:
    if use_closed_forms:
        snake = recognize_snake(component)
        if snake is not None:
            return eval20(snake), eval02(snake)
    t20, t02 = evaluate_points(component, _MW_POINTS, cap)
    return t20, t02


def mw_check(diagram: LpmDiagram, cap: int = None, use_closed_forms: bool = True) -> MwReport:
    """
    计算 T(2,0)、T(0,2)、T(1,1) 并比较

    Args:
        diagram: 无环无余环的图
        cap: 每个非蛇形分量的暴力求和上限
        use_closed_forms: 蛇形分量是否使用闭式公式

    Returns:
        检查结果
    """
    cap = Config.BRUTE_FORCE_CAP if cap is None else cap
    if not diagram.is_lc():
        raise PreconditionError(
            f"图 {diagram} 含有环 {sorted(diagram.loops())} 或余环 {sorted(diagram.coloops())}，"
            f"不满足不等式的前提",
            code="not_lc",
        )
    t20 = t02 = 1
    for component in diagram.components():
        c20, c02 = _component_values(component, cap, use_closed_forms)
        t20 *= c20
        t02 *= c02
    bases = count_bases(diagram)
    product = t20 * t02
    square = bases * bases
    trivial = is_trivial_snake_sum(diagram)
    connected = diagram.is_connected()
    report = MwReport(
        diagram=diagram.canonical(),
        t20=t20,
        t02=t02,
        bases=bases,
        product=product,
        lhs=3 * product,
        rhs_43=4 * square,
        rhs_mw=square,
        satisfies_mw=product >= square,
        satisfies_43=3 * product >= 4 * square,
        equality_mw=product == square,
        equality_43=3 * product == 4 * square,
        satisfies_max=max(t20, t02) >= bases,
        satisfies_additive=t20 + t02 >= 2 * bases,
        is_trivial_snake_sum=trivial,
        is_connected=connected,
        is_snake=connected and recognize_snake(diagram) is not None,
    )
    logger.debug(f"{report.diagram}: t20={t20}, t02={t02}, bases={bases}")
    return report


# ----------------------------------------------------------------------
# 枢轴处的粘合检查
# ----------------------------------------------------------------------

class GluingRecord(BaseModel):
    """枢轴元素 e 处 M\\e 与 M/e 的三个求值及粘合不等式的检查结果"""

    diagram: str
    pivot: int
    deletion: Tuple[int, int, int]
    contraction: Tuple[int, int, int]
    sums_match: bool
    minors_connected: bool
    premise_holds: bool
    conclusion_holds: bool

    @field_serializer("deletion", "contraction")
    def _decimal(self, values: Tuple[int, int, int]) -> List[str]:
        return [str(v) for v in values]

    @property
    def ok(self) -> bool:
        return self.sums_match and self.minors_connected and (self.conclusion_holds or not self.premise_holds)


def _three_values(minor: MinorMatroid, cap: int) -> Tuple[int, int, int]:
    counts = corank_nullity_counts(minor, cap)
    return tuple(evaluate_counts(counts, x, y) for x, y in ((2, 0), (0, 2), (1, 1)))


def gluing_check(diagram: LpmDiagram, constant: Fraction = Fraction(4, 3), cap: int = None) -> GluingRecord:
    """
    在枢轴处检查粘合不等式的整数形式

    (p, q, r) 与 (s, t, u) 分别是 M\\e 与 M/e 在 (2,0)、(0,2)、(1,1) 的值。
    若 den·pq >= num·r^2 且 den·st >= num·u^2，则应有 den·(p+s)(q+t) >= num·(r+u)^2。

    Args:
        diagram: 连通、非蛇形、无环无余环的图
        constant: 不等式常数 k = num/den
        cap: 暴力求和上限

    Returns:
        检查记录
    """
    cap = Config.BRUTE_FORCE_CAP if cap is None else cap
    e = diagram.pivot_element()
    matroid = MinorMatroid.from_diagram(diagram)
    deleted, contracted = matroid.delete(e), matroid.contract(e)
    p, q, r = _three_values(deleted, cap)
    s, t, u = _three_values(contracted, cap)
    whole = evaluate_points(diagram, [(2, 0), (0, 2), (1, 1)], cap)
    num, den = constant.numerator, constant.denominator
    premise = den * p * q >= num * r * r and den * s * t >= num * u * u
    record = GluingRecord(
        diagram=diagram.canonical(),
        pivot=e,
        deletion=(p, q, r),
        contraction=(s, t, u),
        sums_match=whole == [p + s, q + t, r + u],
        minors_connected=deleted.is_connected() and contracted.is_connected(),
        premise_holds=premise,
        conclusion_holds=den * (p + s) * (q + t) >= num * (r + u) ** 2,
    )
    if not record.ok:
        logger.warning(f"{diagram} 在枢轴 {e} 处的粘合检查失败: {record}")
    return record


# ----------------------------------------------------------------------
# 穷举
# ----------------------------------------------------------------------

class ExactRatio(BaseModel):
    """约分后的分数，分子分母均为十进制字符串"""

    numerator: str
    denominator: str

    @classmethod
    def of(cls, value: Fraction) -> "ExactRatio":
        return cls(numerator=str(value.numerator), denominator=str(value.denominator))

    def as_fraction(self) -> Fraction:
        return Fraction(int(self.numerator), int(self.denominator))

    def __str__(self) -> str:
        return f"{self.numerator}/{self.denominator}"


class SweepSummary(BaseModel):
    """穷举验证汇总；计数均为图的个数（不做同构约化）"""

    n_max: int
    workers: int
    total: int = 0
    per_size: Dict[int, int] = {}
    mw_violations: List[str] = []
    violations_43: List[str] = []
    max_violations: List[str] = []
    additive_violations: List[str] = []
    equality_cases: List[str] = []
    equality_is_trivial_sums: bool = True
    min_ratio: Optional[ExactRatio] = None
    min_ratio_witnesses: List[str] = []
    min_ratio_nontrivial: Optional[ExactRatio] = None
    min_ratio_nontrivial_witnesses: List[str] = []
    gluing_checked: int = 0
    gluing_failed: List[str] = []
    pivot_disconnected: List[str] = []

    @field_serializer("n_max", "workers", "total", "gluing_checked")
    def _decimal(self, value: int) -> str:
        return str(value)

    @field_serializer("per_size")
    def _decimal_counts(self, counts: Dict[int, int]) -> Dict[str, str]:
        return {str(n): str(count) for n, count in counts.items()}

    @property
    def ok(self) -> bool:
        return not (
            self.mw_violations or self.violations_43 or self.max_violations
            or self.additive_violations or self.gluing_failed or self.pivot_disconnected
        ) and self.equality_is_trivial_sums

    @property
    def violation_count(self) -> int:
        return len(self.mw_violations) + len(self.violations_43)

    def verdict(self) -> str:
        """一行结论，例如 "3 diagrams, 0 violations, equality: S(1)" """
        names = []
        for canonical in self.equality_cases:
            components = parse_diagram(canonical).components()
            names.append("+".join("S(1)" for _ in components))
        equality = ", ".join(names) if names else "none"
        return f"{self.total} diagrams, {self.violation_count} violations, equality: {equality}"


def _check_canonical(canonical: str, cap: int) -> Tuple[MwReport, Optional[GluingRecord]]:
    diagram = parse_diagram(canonical)
    report = mw_check(diagram, cap)
    gluing = None
    if report.is_connected and not report.is_snake:
        gluing = gluing_check(diagram, cap=cap)
    return report, gluing


def _check_star(args: Tuple[str, int]) -> Tuple[MwReport, Optional[GluingRecord]]:
    return _check_canonical(*args)


def _update_min(current: Optional[Fraction], witnesses: List[str], value: Fraction, name: str) -> Fraction:
    if current is None or value < current:
        witnesses.clear()
        witnesses.append(name)
        return value
    if value == current:
        witnesses.append(name)
    return current


def sweep(n_max: int = None, workers: int = None, cap: int = None,
          reports: Optional[List[MwReport]] = None) -> SweepSummary:
    """
    对所有不超过 n_max 个元素的无环无余环图做检查

    Args:
        n_max: 元素个数上限
        workers: 进程数，1 表示在当前进程内计算
        cap: 每个分量的暴力求和上限
        reports: 若给出，按枚举顺序追加每个图的检查结果

    Returns:
        汇总结果，与进程数无关
    """
    n_max = Config.SWEEP_N_MAX if n_max is None else n_max
    workers = Config.SWEEP_WORKERS if workers is None else workers
    cap = Config.BRUTE_FORCE_CAP if cap is None else cap
    if n_max < 1 or workers < 1:
        raise ParseError(f"n_max 与 workers 必须为正整数: n_max={n_max}, workers={workers}")
    if n_max > cap:
        raise CapExceededError(f"n_max={n_max} 超过暴力求和上限 {cap}", position=n_max)

    summary = SweepSummary(n_max=n_max, workers=workers)
    best: Optional[Fraction] = None
    best_nontrivial: Optional[Fraction] = None
    pool = mp.Pool(workers) if workers > 1 else None
    try:
        for n in range(1, n_max + 1):
            jobs = [(d.canonical(), cap) for d in enumerate_diagrams(n, "lc")]
            if pool is not None:
                results = pool.imap(_check_star, jobs, chunksize=max(1, len(jobs) // (4 * workers)))
            else:
                results = map(_check_star, jobs)
            for report, gluing in results:
                summary.total += 1
                if reports is not None:
                    reports.append(report)
                name = report.diagram
                if not report.satisfies_mw:
                    summary.mw_violations.append(name)
                if not report.is_trivial_snake_sum and not report.satisfies_43:
                    summary.violations_43.append(name)
                if not report.satisfies_max:
                    summary.max_violations.append(name)
                if not report.satisfies_additive:
                    summary.additive_violations.append(name)
                if report.equality_mw:
                    summary.equality_cases.append(name)
                    if not report.is_trivial_snake_sum:
                        summary.equality_is_trivial_sums = False
                elif report.is_trivial_snake_sum:
                    summary.equality_is_trivial_sums = False
                best = _update_min(best, summary.min_ratio_witnesses, report.ratio, name)
                if not report.is_trivial_snake_sum:
                    best_nontrivial = _update_min(
                        best_nontrivial, summary.min_ratio_nontrivial_witnesses, report.ratio, name
                    )
                if gluing is not None:
                    summary.gluing_checked += 1
                    if not gluing.minors_connected:
                        summary.pivot_disconnected.append(name)
                    if not gluing.ok:
                        summary.gluing_failed.append(name)
            summary.per_size[n] = len(jobs)
            logger.info(f"n={n}: 检查了 {len(jobs)} 个图，累计 {summary.total} 个")
    except Exception as e:
        logger.error(f"穷举验证失败: {str(e)}")
        raise
    finally:
        if pool is not None:
            pool.close()
            pool.join()

    if best is not None:
        summary.min_ratio = ExactRatio.of(best)
    if best_nontrivial is not None:
        summary.min_ratio_nontrivial = ExactRatio.of(best_nontrivial)
    return summary
