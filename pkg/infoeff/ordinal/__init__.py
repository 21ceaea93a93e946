"""
序数模式模块

计算Bandt–Pompe序数模式分布、归一化排列熵、Jensen–Shannon散度和统计复杂度。
"""

from infoeff.ordinal.codec import PatternCodec, get_codec
from infoeff.ordinal.distribution import (
    OrdinalDistribution,
    batch_counts,
    ordinal_distribution,
    pattern_codes,
    uniform,
)
from infoeff.ordinal.measures import (
    entropy_complexity,
    jensen_shannon_divergence,
    max_divergence,
    permutation_entropy,
    shannon_entropy,
    statistical_complexity,
)

__all__ = [
    "PatternCodec",
    "get_codec",
    "OrdinalDistribution",
    "ordinal_distribution",
    "pattern_codes",
    "batch_counts",
    "uniform",
    "shannon_entropy",
    "permutation_entropy",
    "jensen_shannon_divergence",
    "max_divergence",
    "statistical_complexity",
    "entropy_complexity",
]
