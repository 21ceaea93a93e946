"""
信息效率

总体效率E是H和C同时位于随机置信带内的窗口比例；时变效率E_t是
同一比例在长度为w_E的滑动窗口上的取值。
"""

import numpy as np

from infoeff.core.exceptions import InsufficientDataError, ValidationError
from infoeff.efficiency.models import ComplexityTrack, EfficiencyProfile, EfficiencySeries


def _inside(track: ComplexityTrack) -> np.ndarray:
    if track.inside is None:
        raise ValidationError("轨迹尚未施加置信带", details={"symbol": track.symbol})
    return track.inside


def overall_efficiency(track: ComplexityTrack) -> float:
    """
    总体效率 E = count(inside)/len(inside)

    Raises:
        InsufficientDataError: 轨迹为空
    """
    inside = _inside(track)
    if inside.size == 0:
        raise InsufficientDataError("轨迹为空，无法计算效率", details={"symbol": track.symbol})
    return int(inside.sum()) / inside.size


def efficiency_series(track: ComplexityTrack, w_E: int) -> EfficiencySeries:
    """
    时变效率 E_t[j] = mean(inside[j .. j+w_E−1])

    中心日期取对应子窗口的中心 centers[j + floor(w_E/2)]。

    Args:
        track: 带置信带的轨迹
        w_E: 效率窗口长度

    Returns:
        EfficiencySeries: 长度为len(inside) − w_E + 1的序列

    Raises:
        InsufficientDataError: 轨迹短于w_E
    """
    if w_E < 1:
        raise ValidationError("效率窗口必须为正", details={"w_E": w_E})
    inside = _inside(track)
    if inside.size < w_E:
        raise InsufficientDataError(
            "轨迹短于效率窗口",
            details={"symbol": track.symbol, "windows": int(inside.size), "w_E": w_E},
        )

    cumulative = np.concatenate([[0], np.cumsum(inside.astype(np.int64))])
    values = (cumulative[w_E:] - cumulative[:-w_E]) / w_E
    centers = track.centers[np.arange(values.size) + w_E // 2]
    return EfficiencySeries(centers=centers, values=values)


def efficiency_profile(track: ComplexityTrack, w_E: int) -> EfficiencyProfile:
    """
    组合E与E_t；轨迹短于w_E时E_t为空
    """
    e = overall_efficiency(track)
    if len(track) >= w_E:
        series = efficiency_series(track, w_E)
    else:
        series = EfficiencySeries(
            centers=track.centers[:0], values=np.empty(0, dtype=float)
        )
    return EfficiencyProfile(
        symbol=track.symbol,
        E=e,
        n_windows=len(track),
        Et_centers=series.centers,
        Et=series.values,
    )
