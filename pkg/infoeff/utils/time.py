"""
日期与JSON编码

结果文件中的日期统一为ISO-8601的YYYY-MM-DD；JSON编码器额外支持日期和numpy类型。
"""

import datetime
import json
from typing import Any, Union

import numpy as np

DateLike = Union[datetime.date, np.datetime64]


class JSONTimeEncoder(json.JSONEncoder):
    """支持date/datetime64以及numpy标量和数组的JSON编码器"""

    def default(self, obj: Any) -> Any:
        if isinstance(obj, (datetime.date, np.datetime64)):
            return format_date(obj)
        if isinstance(obj, np.integer):
            return int(obj)
        if isinstance(obj, np.floating):
            return float(obj)
        if isinstance(obj, np.bool_):
            return bool(obj)
        if isinstance(obj, np.ndarray):
            return obj.tolist()
        return super().default(obj)


def format_date(value: DateLike) -> str:
    """
    格式化为YYYY-MM-DD，带时间的值截断到日

    Args:
        value: date、datetime或numpy的datetime64

    Returns:
        str: 日期字符串
    """
    if isinstance(value, np.datetime64):
        return str(value.astype("datetime64[D]"))
    if isinstance(value, datetime.datetime):
        value = value.date()
    if isinstance(value, datetime.date):
        return value.isoformat()
    raise TypeError(f"不支持的日期类型: {type(value)}")


def json_dumps(obj: Any, **kwargs: Any) -> str:
    """
    使用JSONTimeEncoder序列化

    Args:
        obj: 要序列化的对象
        **kwargs: 传递给json.dumps的其他参数
    """
    return json.dumps(obj, cls=JSONTimeEncoder, ensure_ascii=False, **kwargs)
