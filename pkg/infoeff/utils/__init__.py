"""
工具模块

提供日期格式化、JSON编码和数值格式化等实用函数。
"""

from infoeff.utils.formatting import format_bool, format_float, parse_bool
from infoeff.utils.time import JSONTimeEncoder, format_date, json_dumps

__all__ = [
    "JSONTimeEncoder",
    "format_date",
    "json_dumps",
    "format_float",
    "format_bool",
    "parse_bool",
]
