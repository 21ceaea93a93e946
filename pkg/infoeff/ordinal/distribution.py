"""
序数模式分布

对长度为n的窗口取全部n−d+1个重叠子窗口，按升序稳定排序得到排列，
统计每种排列出现的次数。相等的值保持时间顺序（较早的索引排在前面）。
"""

from dataclasses import dataclass
from typing import Dict, Sequence, Tuple, Union

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from infoeff.core.exceptions import ValidationError
from infoeff.ordinal.codec import check_dim, get_codec

ArrayLike = Union[Sequence[float], np.ndarray]


@dataclass(frozen=True)
class OrdinalDistribution:
    """d!种序数模式上的计数与概率"""

    d: int
    counts: np.ndarray
    total: int

    @property
    def probabilities(self) -> np.ndarray:
        """各模式的出现概率"""
        return self.counts / self.total

    def as_dict(self) -> Dict[Tuple[int, ...], float]:
        """以排列为键列出非零概率"""
        codec = get_codec(self.d)
        probs = self.probabilities
        return {codec.decode(int(i)): float(probs[i]) for i in np.flatnonzero(self.counts)}


def uniform(d: int) -> np.ndarray:
    """d!种模式上的均匀分布U"""
    size = get_codec(check_dim(d)).size
    return np.full(size, 1.0 / size)


def pattern_codes(values: ArrayLike, d: int) -> np.ndarray:
    """
    计算序列中每个长度为d的重叠子窗口的模式编码

    Args:
        values: 数值序列
        d: 嵌入维度

    Returns:
        np.ndarray: 长度为n−d+1的编码数组
    """
    x = _as_window(values, d)
    windows = sliding_window_view(x, d, axis=-1)
    perms = np.argsort(windows, axis=-1, kind="stable")
    return get_codec(d).encode_many(perms)


def ordinal_distribution(window: ArrayLike, d: int) -> OrdinalDistribution:
    """
    计算窗口的序数模式分布

    Args:
        window: 数值窗口，长度不小于d
        d: 嵌入维度，2 ≤ d ≤ 8

    Returns:
        OrdinalDistribution: 模式分布，total = n − d + 1

    Raises:
        ValidationError: 窗口短于d、维度越界或包含非有限值
    """
    codes = pattern_codes(window, d)
    size = get_codec(d).size
    counts = np.bincount(codes, minlength=size).astype(np.int64)
    return OrdinalDistribution(d=d, counts=counts, total=int(codes.size))


def batch_counts(windows: np.ndarray, d: int) -> np.ndarray:
    """
    对一批等长窗口同时统计模式计数

    Args:
        windows: 形状为(k, n)的窗口矩阵
        d: 嵌入维度

    Returns:
        np.ndarray: 形状为(k, d!)的计数矩阵
    """
    codes = pattern_codes(windows, d)
    size = get_codec(d).size
    k = codes.shape[0]
    offsets = (np.arange(k, dtype=np.int64) * size)[:, np.newaxis]
    flat = np.bincount((codes + offsets).ravel(), minlength=k * size)
    return flat.reshape(k, size)


def _as_window(values: ArrayLike, d: int) -> np.ndarray:
    check_dim(d)
    x = np.asarray(values, dtype=float)
    if x.ndim == 0 or x.shape[-1] < d:
        raise ValidationError(
            "窗口长度不能小于嵌入维度", details={"length": int(x.size), "d": d}
        )
    if not np.all(np.isfinite(x)):
        raise ValidationError("窗口包含非有限值")
    return x
