"""
蛇形模块：蛇形组合的图构造、识别、对偶、基计数与闭式求值
"""

import logging
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional, Tuple

from pydantic import BaseModel, field_serializer

from app.core.diagram import LpmDiagram
from app.core.lattice_path import EAST, NORTH, LatticePath
from app.core.tutte import evaluate_points, tutte_lpm
from app.core.polynomial import BivariatePolynomial
from app.utils.config import Config
from app.utils.errors import CompositionError, ParseError

logger = logging.getLogger(__name__)

_SNAKE_PATTERN = re.compile(r"^S\((\d+(?:,\d+)*)\)$")


@dataclass(frozen=True)
class SnakeComposition:
    """
    蛇形 S(a_1, ..., a_n)：先向右 a_1 个方格，再向上 a_2 个，交替进行

    相邻两段共享一个方格。
    """

    parts: Tuple[int, ...]

    def __post_init__(self):
        if not self.parts:
            raise CompositionError("蛇形组合至少需要一项")
        if self.parts[0] < 1:
            raise CompositionError(f"a_1 必须 >= 1，当前为 {self.parts[0]}", position=1)
        for i, a in enumerate(self.parts[1:], start=2):
            if a < 2:
                raise CompositionError(f"a_{i} 必须 >= 2，当前为 {a}", position=i)

    @classmethod
    def of(cls, *parts: int) -> "SnakeComposition":
        return cls(tuple(parts))

    @property
    def n(self) -> int:
        return len(self.parts)

    @property
    def element_count(self) -> int:
        return 1 + self.parts[0] + sum(a - 1 for a in self.parts[1:])

    @property
    def is_trivial(self) -> bool:
        return self.parts == (1,)

    @property
    def first_run_vertical(self) -> bool:
        """a_1 = 1 且 n >= 2：图从第一个方格起立即向上"""
        return self.parts[0] == 1 and self.n >= 2

    def __str__(self) -> str:
        return f"S({','.join(str(a) for a in self.parts)})"


def parse_snake(text: str) -> SnakeComposition:
    """
    解析 "S(2,3)" 格式

    Args:
        text: 蛇形文本

    Returns:
        蛇形组合
    """
    compact = "".join((text or "").split()).upper()
    match = _SNAKE_PATTERN.match(compact)
    if not match:
        raise ParseError(f"无法解析蛇形 '{text}'，应为 S(a_1,...,a_n)", position=1)
    return SnakeComposition(tuple(int(a) for a in match.group(1).split(",")))


def format_snake(snake: SnakeComposition) -> str:
    return str(snake)


def _moves(snake: SnakeComposition) -> str:
    """方格之间的移动序列：E 表示向右，N 表示向上"""
    moves = EAST * (snake.parts[0] - 1)
    for i, a in enumerate(snake.parts[1:], start=2):
        moves += (NORTH if i % 2 == 0 else EAST) * (a - 1)
    return moves


def snake_diagram(snake: SnakeComposition) -> LpmDiagram:
    """
    构造蛇形的图

    上路径先走 N，下路径先走 E，中间都按方格移动序列前进，最后分别补 E 与 N。
    """
    moves = _moves(snake)
    return LpmDiagram(
        lower=LatticePath(EAST + moves + NORTH),
        upper=LatticePath(NORTH + moves + EAST),
    )


def recognize_snake(diagram: LpmDiagram) -> Optional[SnakeComposition]:
    """
    识别蛇形：至少两个元素、连通、没有内部格点

    组合总按"第一段水平"约定给出；从第一个方格就向上的图得到 a_1 = 1，
    此时 first_run_vertical 为真。

    Args:
        diagram: LPM 图

    Returns:
        蛇形组合，不是蛇形时返回 None
    """
    if diagram.size < 2 or not diagram.is_connected() or diagram.interior_points():
        return None
    middle = diagram.upper.steps[1:-1]
    i = 0
    while i < len(middle) and middle[i] == EAST:
        i += 1
    parts = [i + 1]
    while i < len(middle):
        step = middle[i]
        run = 0
        while i < len(middle) and middle[i] == step:
            run += 1
            i += 1
        parts.append(run + 1)
    snake = SnakeComposition(tuple(parts))
    if snake_diagram(snake) != diagram:
        logger.warning(f"图 {diagram} 满足蛇形条件但无法还原为 {snake}")
        return None
    return snake


def snake_dual(snake: SnakeComposition) -> SnakeComposition:
    """蛇形的对偶"""
    a = snake.parts
    if a[0] > 1:
        return SnakeComposition((1, *a))
    if snake.n > 1:
        return SnakeComposition(a[1:])
    return SnakeComposition((1,))


# ----------------------------------------------------------------------
# 基计数
# ----------------------------------------------------------------------

@lru_cache(maxsize=None)
def _bases_recursive(parts: Tuple[int, ...]) -> int:
    # S(0) 只是一个格点，记为 1，使 S(1, b) 的递归与 S(b) 的对偶一致
    if len(parts) == 1:
        return parts[0] + 1
    *head, previous, last = parts
    if len(parts) == 2 or previous > 2:
        reduced = (*head, previous - 1)
    else:
        reduced = tuple(head)
    return _bases_recursive((*head, previous)) + (last - 1) * _bases_recursive(reduced)


def bases_recursive(snake: SnakeComposition) -> int:
    """
    按递归 T(S(a_1..a_n)) = T(S(a_1..a_{n-1})) + (a_n - 1) T(S(a_1..a_{n-1} - 1)) 计数

    a_{n-1} = 2 且 n > 2 时 S(a_1..a_{n-1} - 1) 取 S(a_1..a_{n-2})。
    """
    return _bases_recursive(snake.parts)


def fib_strings(length: int) -> Iterator[Tuple[int, ...]]:
    """按字典序枚举长度为 length、没有相邻 1 的二进制串"""
    prefix = []

    def extend():
        if len(prefix) == length:
            yield tuple(prefix)
            return
        prefix.append(0)
        yield from extend()
        prefix.pop()
        if not prefix or prefix[-1] == 0:
            prefix.append(1)
            yield from extend()
            prefix.pop()

    yield from extend()


def fibonacci(k: int) -> int:
    """F_1 = F_2 = 1"""
    a, b = 0, 1
    for _ in range(k):
        a, b = b, a + b
    return a


def bases_fib_sum(snake: SnakeComposition) -> int:
    """
    对 Fib(n+1) 中的二进制串 b 求和 Π (a_i - 1)^{1 - |b_{i+1} - b_i|}

    a_1 = 1 时底数为 0，只有指数为 0 的项贡献 1。
    """
    a = snake.parts
    total = 0
    for bits in fib_strings(snake.n + 1):
        term = 1
        for i in range(snake.n):
            term *= (a[i] - 1) ** (1 - abs(bits[i + 1] - bits[i]))
            if not term:
                break
        total += term
    return total


# ----------------------------------------------------------------------
# 闭式求值
# ----------------------------------------------------------------------

def _alternating_product(snake: SnakeComposition, parity: int) -> int:
    result = 2
    for i, a in enumerate(snake.parts, start=1):
        if i % 2 == parity:
            result *= 2 ** a - 1
    return result


def eval20(snake: SnakeComposition) -> int:
    """T(S;2,0) = 2 Π_{i 偶}(2^{a_i} - 1)；a_1 = 1 的非平凡蛇形经由对偶计算"""
    if snake.first_run_vertical:
        return eval02(snake_dual(snake))
    return _alternating_product(snake, 0)


def eval02(snake: SnakeComposition) -> int:
    """T(S;0,2) = 2 Π_{i 奇}(2^{a_i} - 1)"""
    if snake.first_run_vertical:
        return eval20(snake_dual(snake))
    return _alternating_product(snake, 1)


def snake_tutte(snake: SnakeComposition, cap: int = None) -> BivariatePolynomial:
    return tutte_lpm(snake_diagram(snake), cap)


@dataclass(frozen=True)
class IdentityCheck:
    """恒等式检查结果；partial 表示超出上限、只做了公式与公式的比较"""

    holds: bool
    partial: bool = False

    def __bool__(self) -> bool:
        return self.holds


def product_identity_check(snake: SnakeComposition, cap: int = None) -> IdentityCheck:
    """
    检查 eval20 · eval02 = 4 Π(2^{a_i} - 1)，并与子集求和的结果对照

    Args:
        snake: 蛇形组合
        cap: 暴力求和上限

    Returns:
        检查结果
    """
    cap = Config.BRUTE_FORCE_CAP if cap is None else cap
    t20, t02 = eval20(snake), eval02(snake)
    expected = 4
    for a in snake.parts:
        expected *= 2 ** a - 1
    holds = t20 * t02 == expected
    if snake.element_count > cap:
        logger.warning(f"{snake} 有 {snake.element_count} 个元素，超过上限 {cap}，只比较公式")
        return IdentityCheck(holds=holds, partial=True)
    oracle20, oracle02 = evaluate_points(snake_diagram(snake), [(2, 0), (0, 2)], cap)
    if (oracle20, oracle02) != (t20, t02):
        logger.warning(f"{snake} 的闭式值 ({t20}, {t02}) 与子集求和 ({oracle20}, {oracle02}) 不一致")
        holds = False
    return IdentityCheck(holds=holds)


class SnakeMargin(BaseModel):
    """3·T(2,0)·T(0,2) 与 4·T(1,1)^2 的精确比较"""

    snake: str
    t20: int
    t02: int
    bases: int
    lhs: int
    rhs: int
    satisfied_43: bool
    equality: bool
    satisfies_mw: bool

    @field_serializer("t20", "t02", "bases", "lhs", "rhs")
    def _decimal(self, value: int) -> str:
        return str(value)


def mw_margin(snake: SnakeComposition) -> SnakeMargin:
    """计算蛇形的 4/3 强化不等式余量"""
    t20, t02 = eval20(snake), eval02(snake)
    bases = bases_recursive(snake)
    lhs = 3 * t20 * t02
    rhs = 4 * bases * bases
    return SnakeMargin(
        snake=str(snake),
        t20=t20,
        t02=t02,
        bases=bases,
        lhs=lhs,
        rhs=rhs,
        satisfied_43=lhs >= rhs,
        equality=lhs == rhs,
        satisfies_mw=t20 * t02 >= bases * bases,
    )
