"""
动态时间规整（DTW）距离

经典DTW动态规划：局部代价c(i,j)，允许匹配、插入、删除三种步进，两端点对齐，
不加规整带约束。squared代价累加(a_i − b_j)²后开方；abs代价累加|a_i − b_j|。

实现按反对角线推进，每条反对角线上的格子互不依赖，可整体向量化；
只保留最近两条反对角线，工作内存为O(min(p, q))。
"""

from typing import Sequence, Union

import numpy as np

from infoeff.core.config import DTWCost
from infoeff.core.exceptions import ValidationError

ArrayLike = Union[Sequence[float], np.ndarray]


def _as_series(values: ArrayLike, name: str) -> np.ndarray:
    x = np.asarray(values, dtype=float).ravel()
    if x.size == 0:
        raise ValidationError("DTW输入序列不能为空", details={"series": name})
    if not np.all(np.isfinite(x)):
        raise ValidationError("DTW输入序列包含非有限值", details={"series": name})
    return x


def accumulated_cost(a: ArrayLike, b: ArrayLike, cost: DTWCost = DTWCost.SQUARED) -> float:
    """
    最优规整路径上的累积代价（squared模式下未开方）

    Args:
        a: 第一条序列
        b: 第二条序列
        cost: 局部代价类型

    Returns:
        float: 最小累积代价
    """
    x, y = _as_series(a, "a"), _as_series(b, "b")
    # 较短序列沿反对角线下标，内存取决于较短的一条
    if x.size > y.size:
        x, y = y, x
    p, q = x.size, y.size
    squared = DTWCost(cost) == DTWCost.SQUARED

    # 下标t = i + 1，t = 0对应虚拟的第−1行
    before = np.full(p + 1, np.inf)
    before[0] = 0.0
    last = np.full(p + 1, np.inf)
    current = np.full(p + 1, np.inf)

    for k in range(p + q - 1):
        lo = max(0, k - q + 1)
        hi = min(k, p - 1)
        rows = np.arange(lo, hi + 1)
        diff = x[rows] - y[k - rows]
        local = diff * diff if squared else np.abs(diff)

        t = rows + 1
        best = np.minimum(np.minimum(last[t - 1], last[t]), before[t - 1])

        current.fill(np.inf)
        current[t] = local + best

        before, last, current = last, current, before

    return float(last[p])


def dtw_distance(a: ArrayLike, b: ArrayLike, cost: DTWCost = DTWCost.SQUARED) -> float:
    """
    两条序列之间的DTW距离，序列长度可以不同

    Args:
        a: 第一条序列，长度至少为1
        b: 第二条序列，长度至少为1
        cost: squared返回累积平方代价的平方根，abs返回累积绝对差

    Returns:
        float: 非负距离

    Raises:
        ValidationError: 输入为空
    """
    total = accumulated_cost(a, b, cost)
    if DTWCost(cost) == DTWCost.SQUARED:
        return float(np.sqrt(total))
    return total
