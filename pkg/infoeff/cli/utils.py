"""
命令行工具工具函数模块

提供命令行工具使用的工具函数：设置加载、进度输出和单窗口数据读取。
"""

from pathlib import Path
from typing import Any, Callable, Dict, Optional

import click
import numpy as np
import pandas as pd

from infoeff.core.config import Settings, load_settings
from infoeff.core.events import AssetSkipped, StageCompleted, StageStarted, get_event_bus
from infoeff.core.exceptions import DataFormatError, ValidationError
from infoeff.core.logging import setup_logging


def build_settings(
    config_path: Optional[str],
    env_file: Optional[str],
    log_level: Optional[str],
    overrides: Dict[str, Dict[str, Any]],
) -> Settings:
    """
    加载设置并叠加命令行参数，随后初始化日志

    Args:
        config_path: 配置文件路径
        env_file: .env文件路径
        log_level: 命令行指定的日志级别
        overrides: 按配置段分组的命令行参数，值为None的参数不覆盖

    Returns:
        Settings: 最终设置
    """
    settings = load_settings(Settings, config_path=config_path, env_file=env_file)
    if log_level:
        overrides = {**overrides, "log": {"level": log_level}}
    for section, values in overrides.items():
        settings = settings.with_overrides(section, **values)
    setup_logging(settings.log)
    return settings


def echo_stage_started(event: StageStarted) -> None:
    click.echo(f"[{event.stage}] 开始", err=True)


def echo_stage_completed(event: StageCompleted) -> None:
    click.echo(f"[{event.stage}] 完成 ({event.items})", err=True)


def echo_asset_skipped(event: AssetSkipped) -> None:
    click.echo(f"  跳过 {event.symbol}: {event.reason}", err=True)


PROGRESS_HANDLERS: Dict[type, Callable[[Any], None]] = {
    StageStarted: echo_stage_started,
    StageCompleted: echo_stage_completed,
    AssetSkipped: echo_asset_skipped,
}


def enable_progress() -> None:
    """在默认事件总线上注册进度输出"""
    bus = get_event_bus()
    for event_type, handler in PROGRESS_HANDLERS.items():
        bus.register(event_type, handler)


def disable_progress() -> None:
    """取消注册进度输出"""
    bus = get_event_bus()
    for event_type, handler in PROGRESS_HANDLERS.items():
        bus.unregister(event_type, handler)


def read_window(file_path: Path) -> np.ndarray:
    """
    读取单个窗口的数值

    文件为一列数值，可以带表头；有多列时取名为value的列，没有则取第一列。

    Args:
        file_path: CSV文件路径

    Returns:
        np.ndarray: 窗口数值

    Raises:
        ValidationError: 文件不存在
        DataFormatError: 含有无法解析的数值
    """
    if not file_path.exists():
        raise ValidationError("窗口文件不存在", details={"path": str(file_path)})

    try:
        frame = pd.read_csv(file_path, header=None, dtype=str, keep_default_na=False)
    except (pd.errors.ParserError, pd.errors.EmptyDataError) as e:
        raise DataFormatError(f"无法解析CSV文件: {e}", details={"file": file_path.name}) from e

    first = [str(v).strip().lower() for v in frame.iloc[0]]
    column = first.index("value") if "value" in first else 0
    raw = frame.iloc[:, column].str.strip()
    values = pd.to_numeric(raw, errors="coerce")
    # 第一行无法解析时视为表头
    if np.isnan(values.iloc[0]):
        raw, values = raw.iloc[1:], values.iloc[1:]
    bad = values.isna() | ~np.isfinite(values)
    if bad.any():
        row = int(np.flatnonzero(bad.to_numpy())[0]) + 1 + (len(frame) - len(raw))
        raise DataFormatError("数值无法解析", details={"file": file_path.name, "row": row})
    return values.to_numpy(dtype=float)
