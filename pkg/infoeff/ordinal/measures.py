"""
信息论度量

基于序数模式分布计算香农熵、归一化排列熵、与均匀分布的Jensen–Shannon散度，
以及排列统计复杂度 C = D(P,U)·H(P)/D*。全部使用自然对数。
"""

import math
from typing import Tuple

import numpy as np
from scipy.special import entr

from infoeff.core.exceptions import ValidationError
from infoeff.ordinal.codec import check_dim
from infoeff.ordinal.distribution import OrdinalDistribution

SUM_TOLERANCE = 1e-9


def shannon_entropy(probabilities: np.ndarray) -> float:
    """
    香农熵 −Σ p ln p，约定 0·ln 0 = 0

    Args:
        probabilities: 概率向量

    Returns:
        float: 非负熵值

    Raises:
        ValidationError: 存在负值或总和偏离1超过1e−9
    """
    p = np.asarray(probabilities, dtype=float)
    if np.any(p < 0):
        raise ValidationError("概率不能为负")
    if abs(p.sum() - 1.0) > SUM_TOLERANCE:
        raise ValidationError("概率之和必须为1", details={"sum": float(p.sum())})
    return float(entr(p).sum())


def permutation_entropy(dist: OrdinalDistribution) -> float:
    """
    归一化排列熵 H = S(P)/ln(d!)

    Args:
        dist: 模式分布

    Returns:
        float: [0, 1]内的熵
    """
    return shannon_entropy(dist.probabilities) / math.log(dist.counts.size)


def jensen_shannon_divergence(dist: OrdinalDistribution) -> float:
    """
    与均匀分布U的Jensen–Shannon散度 D(P,U) = S((P+U)/2) − S(P)/2 − S(U)/2

    Args:
        dist: 模式分布

    Returns:
        float: [0, ln 2]内的散度
    """
    p = dist.probabilities
    n = p.size
    u = np.full(n, 1.0 / n)
    value = shannon_entropy((p + u) / 2) - shannon_entropy(p) / 2 - math.log(n) / 2
    return max(value, 0.0)


def max_divergence(d: int) -> float:
    """
    归一化常数D*，即δ分布与均匀分布之间的散度

    使用闭式 −½[((N+1)/N)·ln(N+1) − 2·ln(2N) + ln N]，N = d!。

    Args:
        d: 嵌入维度

    Returns:
        float: 正的归一化常数
    """
    n = math.factorial(check_dim(d))
    return -0.5 * ((n + 1) / n * math.log(n + 1) - 2 * math.log(2 * n) + math.log(n))


def statistical_complexity(dist: OrdinalDistribution) -> float:
    """
    排列统计复杂度 C = D(P,U)·H(P)/D*

    Args:
        dist: 模式分布

    Returns:
        float: [0, 1]内的复杂度
    """
    value = jensen_shannon_divergence(dist) * permutation_entropy(dist) / max_divergence(dist.d)
    return min(max(value, 0.0), 1.0)


def entropy_complexity(counts: np.ndarray, d: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    向量化计算一组计数向量的(H, C)

    Args:
        counts: 形状为(..., d!)的计数数组，每行总数为正
        d: 嵌入维度

    Returns:
        Tuple[np.ndarray, np.ndarray]: 形状为(...)的H和C
    """
    counts = np.asarray(counts, dtype=float)
    n = counts.shape[-1]
    p = counts / counts.sum(axis=-1, keepdims=True)
    log_n = math.log(n)

    s_p = entr(p).sum(axis=-1)
    s_mix = entr((p + 1.0 / n) / 2).sum(axis=-1)
    divergence = np.maximum(s_mix - s_p / 2 - log_n / 2, 0.0)

    h = np.clip(s_p / log_n, 0.0, 1.0)
    c = np.clip(divergence * h / max_divergence(d), 0.0, 1.0)
    return h, c
