"""
穷举报告文件：每个图一行，末尾为汇总块，格式稳定便于 diff
"""

import logging
import os
from typing import List, Sequence

from app.verification.verifier import MwReport, SweepSummary

logger = logging.getLogger(__name__)

SUMMARY_HEADER = "# summary"


def report_line(report: MwReport) -> str:
    """<canonical>\\t<t20>\\t<t02>\\t<bases>\\t<flags>"""
    flags = ",".join(report.flags()) or "-"
    return f"{report.diagram}\t{report.t20}\t{report.t02}\t{report.bases}\t{flags}"


def summary_lines(summary: SweepSummary) -> List[str]:
    """汇总块的 key=value 行"""
    lines = [
        SUMMARY_HEADER,
        f"n_max={summary.n_max}",
        f"total={summary.total}",
    ]
    for n, count in sorted(summary.per_size.items()):
        lines.append(f"size_{n}={count}")
    lines.extend([
        f"mw_violations={len(summary.mw_violations)}",
        f"violations_43={len(summary.violations_43)}",
        f"max_violations={len(summary.max_violations)}",
        f"additive_violations={len(summary.additive_violations)}",
        f"equality_cases={';'.join(summary.equality_cases) or '-'}",
        f"equality_is_trivial_sums={str(summary.equality_is_trivial_sums).lower()}",
        f"min_ratio={summary.min_ratio or '-'}",
        f"min_ratio_witnesses={';'.join(summary.min_ratio_witnesses) or '-'}",
        f"min_ratio_nontrivial={summary.min_ratio_nontrivial or '-'}",
        f"min_ratio_nontrivial_witnesses={';'.join(summary.min_ratio_nontrivial_witnesses) or '-'}",
        f"gluing_checked={summary.gluing_checked}",
        f"gluing_failed={len(summary.gluing_failed)}",
        f"pivot_disconnected={len(summary.pivot_disconnected)}",
    ])
    return lines


def render_report(summary: SweepSummary, reports: Sequence[MwReport]) -> str:
    lines = [report_line(r) for r in reports]
    lines.extend(summary_lines(summary))
    return "\n".join(lines) + "\n"


def write_report(summary: SweepSummary, reports: Sequence[MwReport], path: str) -> str:
    """
    写出报告文件

    Args:
        summary: 汇总结果
        reports: 按枚举顺序排列的单图结果
        path: 输出路径

    Returns:
        写入的路径
    """
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            f.write(render_report(summary, reports))
    except OSError as e:
        logger.error(f"写入报告 {path} 失败: {str(e)}")
        raise
    logger.info(f"报告已写入 {path}（{len(reports)} 行）")
    return path
