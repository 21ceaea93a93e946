"""
日志管理模块

使用loguru输出日志。config、exceptions等模块使用标准库logging，
numpy/pandas的运行时警告经由warnings模块发出，二者都转发到loguru，
保证命令行下只有一套格式。
"""

import logging
import sys
from pathlib import Path
from typing import Any

from loguru import logger

from infoeff.core.config import LogConfig

# 未经get_logger绑定的记录使用的名称
DEFAULT_NAME = "infoeff"


class InterceptHandler(logging.Handler):
    """把标准库logging的记录转发给loguru"""

    def emit(self, record: logging.LogRecord) -> None:
        try:
            level: Any = logger.level(record.levelname).name
        except ValueError:
            level = record.levelno

        # 跳过logging内部的栈帧，定位到真正的调用方
        frame, depth = logging.currentframe(), 2
        while frame is not None and frame.f_code.co_filename == logging.__file__:
            frame = frame.f_back
            depth += 1

        logger.opt(depth=depth, exception=record.exc_info).bind(name=record.name).log(
            level, record.getMessage()
        )


def setup_logging(config: LogConfig) -> None:
    """
    按配置初始化日志

    控制台输出到stderr，stdout只留给命令的结果；配置了file_path时
    另外写入按大小滚动的日志文件。

    Args:
        config: 日志配置
    """
    logger.remove()
    logger.configure(extra={"name": DEFAULT_NAME})
    logger.add(sys.stderr, level=config.level.value, format=config.format)

    if config.file_path:
        log_file = Path(config.file_path)
        log_file.parent.mkdir(parents=True, exist_ok=True)
        logger.add(
            log_file,
            level=config.level.value,
            format=config.format,
            rotation=config.rotation,
            retention=config.retention,
            compression=config.compression,
            serialize=config.serialize,
            enqueue=True,
        )

    logging.basicConfig(handlers=[InterceptHandler()], level=0, force=True)
    # 数值计算中的RuntimeWarning等
    logging.captureWarnings(True)

    logger.debug(f"日志系统已初始化，级别: {config.level.value}")


def get_logger(name: str = DEFAULT_NAME) -> Any:
    """
    获取绑定了模块名的日志记录器

    Args:
        name: 通常传入__name__

    Returns:
        loguru日志记录器
    """
    return logger.bind(name=name)
