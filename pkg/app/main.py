"""
应用入口文件，解析命令行参数并分派到各个命令
"""

import os
import sys
import json
import logging
import argparse
from typing import List, Optional

# 添加项目根目录到Python路径
# 获取当前文件的绝对路径
current_file = os.path.abspath(__file__)
# 获取app目录的路径
app_dir = os.path.dirname(current_file)
# 获取项目根目录的路径
project_root = os.path.dirname(app_dir)
# 将项目根目录添加到sys.path
sys.path.insert(0, project_root)

from app.utils.logger import setup_logging
from app.utils.config import Config
from app.utils.errors import CapExceededError, LpmError, ParseError, VerificationError
from app.cli.command_interface import CommandInterface, CommandResult
from app.verification.verifier import FILTERS

logger = logging.getLogger("app.main")

EXIT_OK = 0
EXIT_DOMAIN_ERROR = 1
EXIT_CAP_EXCEEDED = 2
EXIT_VERIFICATION_FAILED = 3

OBJECT_HELP = '对象：P:<word>;Q:<word>、S(a_1,...,a_n)、F(c=...;d=...)、uniform:r,n 或 catalan:k'


class _ArgumentParser(argparse.ArgumentParser):
    """用法错误时打印简要用法并抛出 ParseError，而不是直接退出"""

    def error(self, message):
        self.print_usage(sys.stderr)
        raise ParseError(f"参数错误: {message}")


def build_parser() -> argparse.ArgumentParser:
    """构建命令行解析器"""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cap", type=int, default=Config.BRUTE_FORCE_CAP, help="暴力求和的元素个数上限")
    common.add_argument("--workers", type=int, default=Config.SWEEP_WORKERS, help="穷举验证的进程数")
    common.add_argument(
        "--format",
        choices=["text", "json", "svg", "ascii"],
        default="text",
        help="输出格式",
    )
    common.add_argument("--out", type=str, default=None, help="输出文件路径")
    common.add_argument("--no-log-file", action="store_true", help="不写日志文件")
    common.add_argument("--log-level", type=str, default=Config.LOG_LEVEL, help="日志级别")

    parser = _ArgumentParser(description="格路拟阵 Tutte 多项式计算与 Merino-Welsh 不等式验证")
    subparsers = parser.add_subparsers(dest="command", parser_class=_ArgumentParser)
    subparsers.required = True

    for verb, description in (
        ("eval", "计算基的个数、T(2,0)、T(0,2)"),
        ("tutte", "计算完整的 Tutte 多项式"),
        ("snake", "蛇形组合的各项信息"),
        ("fan", "多扇图的生成树与定向计数"),
        ("draw", "绘制图（ascii 或 svg）"),
    ):
        sub = subparsers.add_parser(verb, parents=[common], help=description)
        sub.add_argument("object", help=OBJECT_HELP)

    for verb, description in (
        ("verify", "穷举验证并输出一行结论"),
        ("sweep", "穷举验证并写出报告文件"),
    ):
        sub = subparsers.add_parser(verb, parents=[common], help=description)
        sub.add_argument("--n", type=int, default=Config.SWEEP_N_MAX, help="元素个数上限")

    sub = subparsers.add_parser("enumerate", parents=[common], help="枚举给定元素个数的全部图")
    sub.add_argument("--n", type=int, required=True, help="元素个数")
    sub.add_argument("--filter", choices=list(FILTERS), default="all", help="过滤条件")

    return parser


def dispatch(args: argparse.Namespace) -> CommandResult:
    """按命令动词调用命令接口"""
    interface = CommandInterface(cap=args.cap, workers=args.workers)
    if args.command == "verify":
        return interface.verify(args.n)
    if args.command == "sweep":
        return interface.sweep(args.n, args.out)
    if args.command == "enumerate":
        return interface.enumerate(args.n, args.filter)
    if args.command == "draw":
        return interface.draw(args.object, "svg" if args.format == "svg" else "ascii")
    return getattr(interface, args.command)(args.object)


def render(result: CommandResult, fmt: str) -> str:
    if fmt == "json":
        payload = {
            "schema": Config.JSON_SCHEMA_VERSION,
            "command": result.command,
            "result": result.result,
        }
        return json.dumps(payload, ensure_ascii=False, indent=2)
    return result.text


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as f:
            f.write(text + "\n")
        logger.info(f"结果已写入 {out}")
    else:
        print(text)


def run(argv: Optional[List[str]] = None) -> int:
    """
    运行一次命令

    Args:
        argv: 命令行参数（不含程序名），默认取 sys.argv

    Returns:
        退出码：0 成功，1 领域错误，2 超出上限，3 验证失败
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except ParseError as e:
        print(str(e), file=sys.stderr)
        return EXIT_DOMAIN_ERROR
    except SystemExit as e:
        return int(e.code or 0)

    setup_logging(
        log_dir=None if args.no_log_file else Config.LOG_DIR,
        log_level=Config.log_level_value(args.log_level),
    )

    # 验证配置
    try:
        Config.validate_config()
        if args.cap < 1 or args.workers < 1:
            raise ValueError(f"--cap 与 --workers 必须为正整数: cap={args.cap}, workers={args.workers}")
    except ValueError as e:
        logger.error(f"配置验证失败: {str(e)}")
        return EXIT_DOMAIN_ERROR

    logger.info(f"执行命令 {args.command}")
    logger.debug(f"上限配置: {Config.get_caps()}")
    try:
        result = dispatch(args)
    except (LpmError, OSError) as e:
        if isinstance(e, CapExceededError):
            code = EXIT_CAP_EXCEEDED
        elif isinstance(e, VerificationError):
            code = EXIT_VERIFICATION_FAILED
        else:
            code = EXIT_DOMAIN_ERROR
        logger.error(f"命令 {args.command} 失败: {str(e)}")
        if args.format == "json":
            error = e.to_dict() if isinstance(e, LpmError) else {"code": "io_error", "position": None, "message": str(e)}
            print(json.dumps({"schema": Config.JSON_SCHEMA_VERSION, "command": args.command, "error": error},
                             ensure_ascii=False, indent=2))
        else:
            print(f"错误: {str(e)}", file=sys.stderr)
        return code

    for warning in result.warnings:
        logger.warning(warning)
    out = None if args.command == "sweep" else args.out
    _emit(render(result, args.format), out)
    if result.exit_code:
        logger.error(f"命令 {args.command} 以退出码 {result.exit_code} 结束")
    logger.info(f"命令 {args.command} 完成")
    return result.exit_code


def main():
    """应用主函数"""
    sys.exit(run())


if __name__ == "__main__":
    main()
