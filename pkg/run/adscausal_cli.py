#!/usr/bin/env python3
"""
命令行工具
验证定理套件、点的因果分类、圆周扫描、n_P 曲线、视界二分、结构常数表

结果写到 stdout 或 --out，日志只写 stderr
退出码: 0 成功，1 验证失败或计算错误，2 用法错误
"""

import argparse
import csv
import io
import json
import os
import sys
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from pydantic import ValidationError

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from infra.config import OutputFormat
from infra.logger import logger
from library.exceptions import AdsCausalError, InvalidDimension, UsageError
from schema.command import Command, Subcommand
from services.analysis_service import AnalysisService

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

Artifact = Tuple[str, int]


# ==================== 1. 参数解析 ====================
def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, required=True, help="so(2,n) 的 n（AdS_{n+1}）")
    common.add_argument("--format", choices=[f.value for f in OutputFormat], help="输出格式 json/csv")
    common.add_argument("--out", help="输出文件，默认 stdout")
    common.add_argument("--seed", type=int, default=0, help="随机检查的种子")
    common.add_argument("--tol", type=float, help="奇异性 / 二分容差")
    common.add_argument("--grid", type=int, help="w2 网格节点数")

    point = argparse.ArgumentParser(add_help=False)
    point.add_argument("--point", help="点坐标 JSON，或 @文件路径")

    samples = argparse.ArgumentParser(add_help=False)
    samples.add_argument("--samples", type=int, default=64, help="x 方向采样数")

    parser = argparse.ArgumentParser(
        prog="adscausal",
        description="so(2,n) 精确结构与 AdS 黑洞因果结构分析",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)
    sub.add_parser(Subcommand.VERIFY.value, parents=[common], help="运行结构与约化定理检查")
    sub.add_parser(Subcommand.CLASSIFY.value, parents=[common, point], help="单点因果分类")
    scan = sub.add_parser(Subcommand.SCAN_CIRCLE.value, parents=[common, samples], help="SO(2) 圆周扫描")
    scan.add_argument("--w2", type=float, default=0.5, help="报告 s_plus/s_minus 的方向分量")
    sub.add_parser(Subcommand.CURVE.value, parents=[common, point, samples], help="AN 点的 n_P(x) 曲线")
    horizon = sub.add_parser(Subcommand.HORIZON.value, parents=[common, point], help="沿圆周或给定点二分视界")
    horizon.add_argument("--lo", type=float, help="区间下端，默认 π/4")
    horizon.add_argument("--hi", type=float, help="区间上端，默认 3π/4")
    sub.add_parser(Subcommand.TABLE.value, parents=[common], help="结构常数表")
    return parser


def parse_command(argv: Sequence[str]) -> Command:
    args = build_parser().parse_args(list(argv))
    fields = {key: value for key, value in vars(args).items() if value is not None}
    return Command(**fields)


# ==================== 2. 输出 ====================
def _json(data) -> str:
    return json.dumps(data, ensure_ascii=False, indent=2) + "\n"


def _csv(header: List[str], rows: List[List[str]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    if hasattr(value, "value"):
        return str(value.value)
    return str(value)


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8", newline="\n")
        logger.info(f"结果已写入 {out}")
    else:
        sys.stdout.write(text)
        sys.stdout.flush()


# ==================== 3. 子命令 ====================
def _verify(cmd: Command, fmt: OutputFormat) -> Artifact:
    report = AnalysisService.verify(cmd.n, seed=cmd.seed)
    code = EXIT_OK if report.passed else EXIT_FAILED
    if fmt is OutputFormat.CSV:
        rows = [
            [c.suite, c.name, str(c.n), str(c.passed).lower(), _cell(c.counterexample)]
            for c in report.checks
        ]
        return _csv(["suite", "name", "n", "passed", "counterexample"], rows), code
    payload = {"summary": report.summary(), "checks": [c.model_dump() for c in report.checks]}
    return _json(payload), code


def _classify(cmd: Command, fmt: OutputFormat) -> Artifact:
    result = AnalysisService.classify(cmd.n, cmd.point, grid=cmd.grid, tol=cmd.tol, seed=cmd.seed)
    data = result.to_json_dict()
    if fmt is OutputFormat.CSV:
        keys = ["class", "c", "witness_w2", "branch", "type"]
        return _csv(keys, [[_cell(data[k]) for k in keys]]), EXIT_OK
    return _json(data), EXIT_OK


def _scan_circle(cmd: Command, fmt: OutputFormat) -> Artifact:
    rows = AnalysisService.scan_circle(
        cmd.n, cmd.samples, w2=cmd.w2, grid=cmd.grid, tol=cmd.tol, seed=cmd.seed
    )
    if fmt is OutputFormat.JSON:
        return _json([row.model_dump(mode="json") for row in rows]), EXIT_OK
    return _csv(["x", "class", "s_plus", "s_minus", "c"], [row.csv_fields() for row in rows]), EXIT_OK


def _curve(cmd: Command, fmt: OutputFormat) -> Artifact:
    rows = AnalysisService.curve(cmd.n, cmd.point, cmd.samples)
    if fmt is OutputFormat.JSON:
        angles = AnalysisService.angles(cmd.n, cmd.point)
        return _json({
            "angles": angles.model_dump(by_alias=True, mode="json"),
            "curve": [row.model_dump() for row in rows],
        }), EXIT_OK
    return _csv(["x", "n_p"], [[repr(row.x), repr(row.n_p)] for row in rows]), EXIT_OK


def _horizon(cmd: Command, fmt: OutputFormat) -> Artifact:
    kwargs = {"tol": cmd.tol, "point": cmd.point, "grid": cmd.grid}
    if cmd.lo is not None:
        kwargs["lo"] = cmd.lo
    if cmd.hi is not None:
        kwargs["hi"] = cmd.hi
    result = AnalysisService.horizon(cmd.n, **kwargs)
    data = result.model_dump(mode="json")
    if fmt is OutputFormat.CSV:
        keys = list(data)
        return _csv(keys, [[_cell(data[k]) for k in keys]]), EXIT_OK
    return _json(data), EXIT_OK


def _table(cmd: Command, fmt: OutputFormat) -> Artifact:
    if fmt is OutputFormat.CSV:
        raise UsageError("table 只支持 json 输出")
    return _json(AnalysisService.table(cmd.n)), EXIT_OK


HANDLERS: Dict[Subcommand, Tuple[Callable[[Command, OutputFormat], Artifact], OutputFormat]] = {
    Subcommand.VERIFY: (_verify, OutputFormat.JSON),
    Subcommand.CLASSIFY: (_classify, OutputFormat.JSON),
    Subcommand.SCAN_CIRCLE: (_scan_circle, OutputFormat.CSV),
    Subcommand.CURVE: (_curve, OutputFormat.CSV),
    Subcommand.HORIZON: (_horizon, OutputFormat.JSON),
    Subcommand.TABLE: (_table, OutputFormat.JSON),
}


# ==================== 4. 入口 ====================
def dispatch(argv: Sequence[str]) -> int:
    """
    执行一次命令

    参数:
        argv: 不含程序名的参数列表

    返回:
        退出码
    """
    try:
        cmd = parse_command(argv)
    except SystemExit as e:
        # argparse 已经把用法写到 stderr
        return EXIT_USAGE if e.code not in (0, None) else EXIT_OK
    except (ValidationError, ValueError, OSError) as e:
        print(f"用法错误: {e}", file=sys.stderr)
        return EXIT_USAGE

    handler, default_format = HANDLERS[cmd.subcommand]
    try:
        text, code = handler(cmd, cmd.format or default_format)
    except (UsageError, InvalidDimension) as e:
        print(f"用法错误: {e.message}", file=sys.stderr)
        return EXIT_USAGE
    except AdsCausalError as e:
        logger.error(f"{cmd.subcommand.value} 失败: {e.message}")
        print(f"错误: {e.message}", file=sys.stderr)
        return EXIT_FAILED

    try:
        _emit(text, cmd.out)
    except OSError as e:
        print(f"无法写出结果: {e}", file=sys.stderr)
        return EXIT_USAGE
    return code


def main() -> None:
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
