"""
效率分析模块

滑动窗口计算(H_t, C_t)，构造打乱替代数据置信带，得到总体效率E和时变效率E_t。
"""

from infoeff.efficiency.models import Band, ComplexityTrack, EfficiencyProfile, EfficiencySeries
from infoeff.efficiency.profile import efficiency_profile, efficiency_series, overall_efficiency
from infoeff.efficiency.sliding import sliding_complexity, window_counts
from infoeff.efficiency.surrogates import apply_bands, surrogate_band, window_rng

__all__ = [
    "Band",
    "ComplexityTrack",
    "EfficiencyProfile",
    "EfficiencySeries",
    "apply_bands",
    "efficiency_profile",
    "efficiency_series",
    "overall_efficiency",
    "sliding_complexity",
    "surrogate_band",
    "window_counts",
    "window_rng",
]
