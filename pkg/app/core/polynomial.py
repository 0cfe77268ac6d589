"""
稀疏二元多项式，系数为任意精度整数
"""

from functools import lru_cache
from math import comb
from typing import Dict, Iterable, List, Mapping, Tuple

Exponent = Tuple[int, int]


@lru_cache(maxsize=None)
def shifted_power_row(a: int) -> Tuple[int, ...]:
    """(z-1)^a 按 z 的升幂展开的系数"""
    return tuple(comb(a, i) * (-1) ** (a - i) for i in range(a + 1))


class BivariatePolynomial:
    """
    x, y 的稀疏多项式

    不存储零系数；实例视为不可变。
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Exponent, int] = None):
        self._terms: Dict[Exponent, int] = {
            (int(i), int(j)): int(c) for (i, j), c in (terms or {}).items() if c != 0
        }

    @classmethod
    def constant(cls, value: int) -> "BivariatePolynomial":
        return cls({(0, 0): value})

    @classmethod
    def x(cls) -> "BivariatePolynomial":
        return cls({(1, 0): 1})

    @classmethod
    def y(cls) -> "BivariatePolynomial":
        return cls({(0, 1): 1})

    @classmethod
    def from_shifted(cls, counts: Mapping[Exponent, int]) -> "BivariatePolynomial":
        """
        将 Σ c_{a,b} (x-1)^a (y-1)^b 展开到 x, y 的单项式基

        Args:
            counts: (a, b) -> c_{a,b}

        Returns:
            展开后的多项式
        """
        terms: Dict[Exponent, int] = {}
        for (a, b), c in counts.items():
            row_a = shifted_power_row(a)
            row_b = shifted_power_row(b)
            for i, ca in enumerate(row_a):
                for j, cb in enumerate(row_b):
                    terms[(i, j)] = terms.get((i, j), 0) + c * ca * cb
        return cls(terms)

    @classmethod
    def from_triples(cls, triples: Iterable[Tuple[int, int, str]]) -> "BivariatePolynomial":
        return cls({(i, j): int(c) for i, j, c in triples})

    @property
    def terms(self) -> Dict[Exponent, int]:
        return dict(self._terms)

    def coefficient(self, i: int, j: int) -> int:
        return self._terms.get((i, j), 0)

    def degree_x(self) -> int:
        return max((i for i, _ in self._terms), default=0)

    def degree_y(self) -> int:
        return max((j for _, j in self._terms), default=0)

    def is_zero(self) -> bool:
        return not self._terms

    def evaluate(self, x: int, y: int) -> int:
        """精确求值"""
        return sum(c * x ** i * y ** j for (i, j), c in self._terms.items())

    def swap_variables(self) -> "BivariatePolynomial":
        return BivariatePolynomial({(j, i): c for (i, j), c in self._terms.items()})

    def to_triples(self) -> List[Tuple[int, int, str]]:
        """按 (i, j) 字典序输出 (i, j, 十进制系数) 三元组"""
        return [(i, j, str(c)) for (i, j), c in sorted(self._terms.items())]

    def __add__(self, other: "BivariatePolynomial") -> "BivariatePolynomial":
        terms = dict(self._terms)
        for key, c in other._terms.items():
            terms[key] = terms.get(key, 0) + c
        return BivariatePolynomial(terms)

    def __mul__(self, other: "BivariatePolynomial") -> "BivariatePolynomial":
        terms: Dict[Exponent, int] = {}
        for (i1, j1), c1 in self._terms.items():
            for (i2, j2), c2 in other._terms.items():
                key = (i1 + i2, j1 + j2)
                terms[key] = terms.get(key, 0) + c1 * c2
        return BivariatePolynomial(terms)

    def __pow__(self, k: int) -> "BivariatePolynomial":
        result = BivariatePolynomial.constant(1)
        for _ in range(k):
            result = result * self
        return result

    def divisible_by_monomial(self, i: int, j: int) -> bool:
        """是否被 x^i y^j 整除"""
        return all(a >= i and b >= j for a, b in self._terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BivariatePolynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __repr__(self) -> str:
        return f"BivariatePolynomial({self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        # x 次数降序，其次 y 次数升序
        for (i, j), c in sorted(self._terms.items(), key=lambda item: (-item[0][0], item[0][1])):
            monomial = ""
            if i:
                monomial += "x" if i == 1 else f"x^{i}"
            if j:
                monomial += "y" if j == 1 else f"y^{j}"
            magnitude = abs(c)
            if not monomial:
                body = str(magnitude)
            elif magnitude == 1:
                body = monomial
            else:
                body = f"{magnitude}{monomial}"
            if not pieces:
                pieces.append(body if c > 0 else f"-{body}")
            else:
                pieces.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(pieces)
