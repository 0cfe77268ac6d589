"""
测试公共配置：将项目根目录加入 sys.path，并提供常用的具名图
"""

import os
import sys

import pytest

project_root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.insert(0, project_root)

from app.core.diagram import LpmDiagram, parse_diagram, uniform  # noqa: E402
from app.core.lattice_path import LatticePath  # noqa: E402


def make(lower: str, upper: str) -> LpmDiagram:
    return LpmDiagram(LatticePath(lower), LatticePath(upper))


@pytest.fixture
def u24() -> LpmDiagram:
    return parse_diagram("P:EENN;Q:NNEE")


@pytest.fixture
def u13() -> LpmDiagram:
    return parse_diagram("P:EEN;Q:NEE")


@pytest.fixture
def u25() -> LpmDiagram:
    return uniform(2, 3)


@pytest.fixture
def s1() -> LpmDiagram:
    return make("EN", "NE")


@pytest.fixture
def s23() -> LpmDiagram:
    return make("EENNN", "NENNE")


@pytest.fixture
def s1_sum_s1() -> LpmDiagram:
    return make("ENEN", "NENE")
