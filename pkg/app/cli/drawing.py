"""
图的静态绘制：ASCII 方格图与独立 SVG，输出对同一输入逐字节一致
"""

from typing import List, Set, Tuple

from app.core.diagram import LpmDiagram
from app.core.lattice_path import LatticePath, Point

CELL = 40
MARGIN = 20

Segment = Tuple[Point, Point]


def _path_segments(path: LatticePath) -> Set[Segment]:
    points = path.points
    return {(a, b) for a, b in zip(points, points[1:])}


def _edges(diagram: LpmDiagram) -> Tuple[Set[Segment], Set[Segment]]:
    """区域内的水平边与竖直边（以左端点/下端点开始的单位线段）"""
    cells = set(diagram.region_cells())
    horizontal: Set[Segment] = set()
    vertical: Set[Segment] = set()
    for x, y in cells:
        horizontal.update({((x, y), (x + 1, y)), ((x, y + 1), (x + 1, y + 1))})
        vertical.update({((x, y), (x, y + 1)), ((x + 1, y), (x + 1, y + 1))})
    for a, b in _path_segments(diagram.lower) | _path_segments(diagram.upper):
        (horizontal if a[1] == b[1] else vertical).add((a, b))
    return horizontal, vertical


def draw_ascii(diagram: LpmDiagram) -> str:
    """
    在 (m+1)×(r+1) 的格点上用 + - | 画出 P 与 Q 之间的区域

    Args:
        diagram: LPM 图

    Returns:
        多行文本，最上一行对应 y = r
    """
    horizontal, vertical = _edges(diagram)
    points = {p for segment in horizontal | vertical for p in segment}
    lines: List[str] = []
    for y in range(diagram.r, -1, -1):
        row = ""
        for x in range(diagram.m + 1):
            row += "+" if (x, y) in points else " "
            if x < diagram.m:
                row += "---" if ((x, y), (x + 1, y)) in horizontal else "   "
        lines.append(row.rstrip())
        if y == 0:
            break
        row = ""
        for x in range(diagram.m + 1):
            row += "|" if ((x, y - 1), (x, y)) in vertical else " "
            if x < diagram.m:
                row += "   "
        lines.append(row.rstrip())
    return "\n".join(lines) + "\n"


def _svg_point(diagram: LpmDiagram, point: Point) -> Tuple[int, int]:
    x, y = point
    return MARGIN + CELL * x, MARGIN + CELL * (diagram.r - y)


def _polyline(diagram: LpmDiagram, path: LatticePath, color: str, name: str) -> str:
    coords = " ".join(f"{sx},{sy}" for sx, sy in (_svg_point(diagram, p) for p in path.points))
    return (
        f'  <polyline class="{name}" points="{coords}" fill="none" '
        f'stroke="{color}" stroke-width="3" stroke-linejoin="round"/>'
    )


def draw_svg(diagram: LpmDiagram) -> str:
    """独立的 SVG 文档：灰色方格为区域，蓝色为 P，红色为 Q"""
    width = 2 * MARGIN + CELL * diagram.m
    height = 2 * MARGIN + CELL * diagram.r
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f"  <title>{diagram.canonical()}</title>",
    ]
    for x, y in sorted(diagram.region_cells()):
        sx, sy = _svg_point(diagram, (x, y + 1))
        parts.append(
            f'  <rect x="{sx}" y="{sy}" width="{CELL}" height="{CELL}" '
            f'fill="#eeeeee" stroke="#999999" stroke-width="1"/>'
        )
    parts.append(_polyline(diagram, diagram.lower, "#1f4e9c", "lower"))
    parts.append(_polyline(diagram, diagram.upper, "#c0392b", "upper"))
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def draw(diagram: LpmDiagram, fmt: str = "ascii") -> str:
    if fmt == "svg":
        return draw_svg(diagram)
    return draw_ascii(diagram)
