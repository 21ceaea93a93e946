"""
数值格式化模块

所有CSV输出统一使用6位有效数字，保证相同输入得到逐字节相同的文件。
"""

import math
from typing import Union

import numpy as np

SIGNIFICANT_DIGITS = 6


def format_float(value: Union[float, np.floating]) -> str:
    """
    按6位有效数字格式化浮点数

    Args:
        value: 浮点数

    Returns:
        str: 格式化字符串，NaN输出为空串
    """
    value = float(value)
    if math.isnan(value):
        return ""
    if value == 0.0:
        # 避免输出"-0"
        return "0"
    return f"{value:.{SIGNIFICANT_DIGITS}g}"


def format_bool(value: Union[bool, np.bool_]) -> str:
    """格式化布尔值为true/false"""
    return "true" if bool(value) else "false"


def parse_bool(text: str) -> bool:
    """
    解析true/false、1/0形式的布尔值

    Raises:
        ValueError: 无法识别的取值
    """
    lowered = text.strip().lower()
    if lowered in ("true", "1", "yes"):
        return True
    if lowered in ("false", "0", "no"):
        return False
    raise ValueError(f"无法解析布尔值: {text!r}")
