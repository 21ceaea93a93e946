"""
效率分析数据模型
"""

from dataclasses import dataclass, replace
from typing import NamedTuple, Optional

import numpy as np


class Band(NamedTuple):
    """单个窗口的随机置信带"""

    h_lo: float
    h_hi: float
    c_lo: float
    c_hi: float


class EfficiencySeries(NamedTuple):
    """时变效率E_t及其窗口中心日期"""

    centers: np.ndarray
    values: np.ndarray


@dataclass(frozen=True)
class ComplexityTrack:
    """
    每个滑动窗口中心上的(H_t, C_t)

    center_index是窗口中心在收益率序列中的下标（起点 + floor(w/2)），
    centers是对应的日期。未施加置信带时band数组与inside均为None。
    """

    symbol: str
    window: int
    center_index: np.ndarray
    centers: np.ndarray
    H: np.ndarray
    C: np.ndarray
    h_lo: Optional[np.ndarray] = None
    h_hi: Optional[np.ndarray] = None
    c_lo: Optional[np.ndarray] = None
    c_hi: Optional[np.ndarray] = None
    inside: Optional[np.ndarray] = None

    def __len__(self) -> int:
        return len(self.H)

    @property
    def has_bands(self) -> bool:
        """是否已施加置信带"""
        return self.inside is not None

    def with_bands(
        self,
        h_lo: np.ndarray,
        h_hi: np.ndarray,
        c_lo: np.ndarray,
        c_hi: np.ndarray,
    ) -> "ComplexityTrack":
        """返回带有置信带和inside标记的新轨迹"""
        inside = (h_lo <= self.H) & (self.H <= h_hi) & (c_lo <= self.C) & (self.C <= c_hi)
        return replace(self, h_lo=h_lo, h_hi=h_hi, c_lo=c_lo, c_hi=c_hi, inside=inside)

    def plane(self) -> np.ndarray:
        """复杂度-熵平面上的坐标，形状为(n, 2)，列依次为H、C"""
        return np.column_stack([self.H, self.C])


@dataclass(frozen=True)
class EfficiencyProfile:
    """总体效率E与时变效率E_t"""

    symbol: str
    E: float
    n_windows: int
    Et_centers: np.ndarray
    Et: np.ndarray
