"""
命令接口模块，每个命令动词对应一个方法，返回可序列化结果与文本输出
"""

import logging
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Union

from app.cli.drawing import draw
from app.core.diagram import LpmDiagram, catalan, parse_diagram, uniform
from app.core.tutte import count_bases, evaluate_points, tutte_lpm
from app.snakes.multifan import (
    MultiFan,
    expand,
    fan_from_dual_snake,
    fan_from_snake,
    fan_summary,
    parse_fan,
)
from app.snakes.snake import (
    SnakeComposition,
    bases_fib_sum,
    bases_recursive,
    eval02,
    eval20,
    mw_margin,
    parse_snake,
    snake_diagram,
    snake_dual,
)
from app.utils.config import Config
from app.utils.errors import ParseError
from app.verification.report import summary_lines, write_report
from app.verification.verifier import FILTERS, MwReport, enumerate_diagrams, sweep

logger = logging.getLogger(__name__)

_UNIFORM = re.compile(r"^UNIFORM:(\d+),(\d+)$")
_CATALAN = re.compile(r"^CATALAN:(\d+)$")

ParsedObject = Union[LpmDiagram, SnakeComposition, MultiFan]


@dataclass
class CommandResult:
    """命令结果：result 用于 JSON，text 用于文本输出"""

    command: str
    result: Dict[str, Any]
    text: str
    exit_code: int = 0
    warnings: List[str] = field(default_factory=list)


def parse_object(text: str) -> ParsedObject:
    """
    解析对象描述：蛇形 S(...)、多扇图 F(...)、族简写 uniform:r,n / catalan:k，或 P:..;Q:.. 图

    Args:
        text: 对象文本

    Returns:
        图、蛇形组合或多扇图
    """
    compact = "".join((text or "").split()).upper()
    if not compact:
        raise ParseError("缺少对象描述", position=1)
    if compact.startswith("S("):
        return parse_snake(compact)
    if compact.startswith("F("):
        return parse_fan(compact)
    match = _UNIFORM.match(compact)
    if match:
        return uniform(int(match.group(1)), int(match.group(2)))
    match = _CATALAN.match(compact)
    if match:
        return catalan(int(match.group(1)))
    if compact.startswith(("UNIFORM", "CATALAN")):
        raise ParseError(f"无法解析族简写 '{text}'，应为 uniform:r,n 或 catalan:k", position=1)
    return parse_diagram(compact)


def as_diagram(obj: ParsedObject) -> LpmDiagram:
    if isinstance(obj, SnakeComposition):
        return snake_diagram(obj)
    if isinstance(obj, LpmDiagram):
        return obj
    raise ParseError(f"{obj} 不是 LPM 图或蛇形", position=1)


def _ratio_text(product: int, square: int) -> str:
    reduced = Fraction(product, square)
    raw = f"{product}/{square}"
    reduced_text = f"{reduced.numerator}/{reduced.denominator}"
    return raw if raw == reduced_text else f"{raw} (={reduced_text})"


class CommandInterface:
    """命令行各动词的实现"""

    def __init__(self, cap: Optional[int] = None, workers: Optional[int] = None):
        self.cap = Config.BRUTE_FORCE_CAP if cap is None else cap
        self.workers = Config.SWEEP_WORKERS if workers is None else workers
        logger.debug(f"命令接口初始化: cap={self.cap}, workers={self.workers}")

    def eval(self, text: str) -> CommandResult:
        """基的个数、T(2,0)、T(0,2) 及 Merino-Welsh 比值"""
        obj = parse_object(text)
        diagram = as_diagram(obj)
        bases = count_bases(diagram)
        if isinstance(obj, SnakeComposition):
            t20, t02 = eval20(obj), eval02(obj)
        else:
            t20, t02 = evaluate_points(diagram, [(2, 0), (0, 2)], self.cap)
        product, square = t20 * t02, bases * bases
        ratio = Fraction(product, square)
        result = {
            "object": str(obj),
            "diagram": diagram.canonical(),
            "bases": str(bases),
            "t20": str(t20),
            "t02": str(t02),
            "mw_ratio": [str(product), str(square)],
            "mw_ratio_reduced": [str(ratio.numerator), str(ratio.denominator)],
        }
        text_out = "\n".join([
            f"bases={bases}",
            f"t20={t20}",
            f"t02={t02}",
            f"mw ratio {_ratio_text(product, square)}",
        ])
        return CommandResult("eval", result, text_out)

    def tutte(self, text: str) -> CommandResult:
        diagram = as_diagram(parse_object(text))
        polynomial = tutte_lpm(diagram, self.cap)
        result = {
            "diagram": diagram.canonical(),
            "polynomial": str(polynomial),
            "terms": [list(t) for t in polynomial.to_triples()],
        }
        return CommandResult("tutte", result, str(polynomial))

    def snake(self, text: str) -> CommandResult:
        """蛇形的各项事实：对偶、两种基计数、闭式求值、多扇图参数与余量"""
        obj = parse_object(text)
        if not isinstance(obj, SnakeComposition):
            raise ParseError(f"'{text}' 不是蛇形 S(a_1,...,a_n)", position=1)
        fan, dual_fan = fan_from_snake(obj), fan_from_dual_snake(obj)
        margin = mw_margin(obj)
        result = {
            "snake": str(obj),
            "diagram": snake_diagram(obj).canonical(),
            "elements": str(obj.element_count),
            "first_run_vertical": obj.first_run_vertical,
            "dual": str(snake_dual(obj)),
            "bases_recursive": str(bases_recursive(obj)),
            "bases_fib_sum": str(bases_fib_sum(obj)),
            "t20": str(eval20(obj)),
            "t02": str(eval02(obj)),
            "fan": str(fan),
            "dual_fan": str(dual_fan),
            "margin": margin.model_dump(mode="json"),
        }
        lines = [f"{key}={value}" for key, value in result.items() if key != "margin"]
        lines.append(f"margin: 3*t20*t02={margin.lhs} 4*bases^2={margin.rhs} holds={margin.satisfied_43}")
        return CommandResult("snake", result, "\n".join(lines))

    def fan(self, text: str) -> CommandResult:
        """多扇图（或蛇形对应的多扇图）的生成树与定向计数"""
        obj = parse_object(text)
        if isinstance(obj, SnakeComposition):
            obj = fan_from_snake(obj)
        if not isinstance(obj, MultiFan):
            raise ParseError(f"'{text}' 不是多扇图 F(c=...;d=...) 或蛇形", position=1)
        summary = fan_summary(obj, self.cap)
        summary["graph"] = expand(obj).serialize()
        warnings = [summary["orientation_skipped"]] if "orientation_skipped" in summary else []
        lines = [f"{key}={value}" for key, value in summary.items() if key != "graph"]
        return CommandResult("fan", summary, "\n".join(lines), warnings=warnings)

    def verify(self, n: int) -> CommandResult:
        summary = sweep(n, self.workers, self.cap)
        exit_code = 0 if summary.ok else 3
        if exit_code:
            logger.error(f"验证失败: {summary.verdict()}")
        return CommandResult("verify", summary.model_dump(mode="json"), summary.verdict(), exit_code)

    def sweep(self, n: int, out: Optional[str] = None) -> CommandResult:
        reports: List[MwReport] = []
        summary = sweep(n, self.workers, self.cap, reports=reports)
        result = summary.model_dump(mode="json")
        if out:
            result["report_path"] = write_report(summary, reports, out)
        exit_code = 0 if summary.ok else 3
        return CommandResult("sweep", result, "\n".join(summary_lines(summary)), exit_code)

    def enumerate(self, n: int, filter: str = "all") -> CommandResult:
        if filter not in FILTERS:
            raise ParseError(f"未知的过滤条件 '{filter}'")
        names = [d.canonical() for d in enumerate_diagrams(n, filter)]
        result = {"n": str(n), "filter": filter, "count": str(len(names)), "diagrams": names}
        return CommandResult("enumerate", result, "\n".join(names))

    def draw(self, text: str, fmt: str = "ascii") -> CommandResult:
        diagram = as_diagram(parse_object(text))
        rendered = draw(diagram, "svg" if fmt == "svg" else "ascii")
        result = {"diagram": diagram.canonical(), "format": fmt, "drawing": rendered}
        return CommandResult("draw", result, rendered.rstrip("\n"))
