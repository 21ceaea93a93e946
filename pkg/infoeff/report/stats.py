"""
汇总统计

效率E的核密度估计、E与市值均值的Pearson相关、效率两端的资产占比，
以及按市值均值排序的效率排名。
"""

from typing import List, NamedTuple, Optional, Sequence

import numpy as np
from scipy import stats

from infoeff.core.exceptions import ValidationError

SILVERMAN_FACTOR = 1.06
GRID_POINTS = 512
GRID_MARGIN = 3.0


class KdeCurve(NamedTuple):
    """密度曲线"""

    grid: np.ndarray
    density: np.ndarray
    bandwidth: float


class PearsonResult(NamedTuple):
    """Pearson相关系数与双侧p值"""

    r: float
    p: float
    n: int


class EfficiencyShares(NamedTuple):
    """效率低于low与高于high的资产占比"""

    low: float
    high: float
    low_threshold: float
    high_threshold: float


class RankedAsset(NamedTuple):
    """市值均值排名中的一行"""

    rank: int
    symbol: str
    mcap_mean: float
    E: float


def silverman_bandwidth(values: np.ndarray) -> float:
    """
    Silverman经验带宽 1.06·σ̂·n^(−1/5)

    方差为0时退化为 1e−3·|mean| + 1e−6。
    """
    x = np.asarray(values, dtype=float)
    sigma = x.std(ddof=1)
    if sigma == 0 or not np.isfinite(sigma):
        return 1e-3 * abs(float(x.mean())) + 1e-6
    return SILVERMAN_FACTOR * float(sigma) * x.size ** (-1 / 5)


def kde(
    values: Sequence[float],
    bandwidth: Optional[float] = None,
    points: int = GRID_POINTS,
) -> KdeCurve:
    """
    高斯核密度估计

    在[min − 3h, max + 3h]上的均匀网格求值。

    Args:
        values: 样本，至少2个有限值
        bandwidth: 带宽，None时使用Silverman规则
        points: 网格点数

    Returns:
        KdeCurve: 网格、密度和所用带宽

    Raises:
        ValidationError: 样本不足或含非有限值
    """
    x = np.asarray(values, dtype=float)
    if x.size < 2:
        raise ValidationError("核密度估计至少需要2个样本", details={"n": int(x.size)})
    if not np.all(np.isfinite(x)):
        raise ValidationError("核密度估计的样本必须为有限值")
    if bandwidth is not None and bandwidth <= 0:
        raise ValidationError("带宽必须为正", details={"bandwidth": bandwidth})

    h = float(bandwidth) if bandwidth is not None else silverman_bandwidth(x)
    grid = np.linspace(x.min() - GRID_MARGIN * h, x.max() + GRID_MARGIN * h, points)
    density = stats.norm.pdf((grid[:, np.newaxis] - x[np.newaxis, :]) / h).sum(axis=1)
    density /= x.size * h
    return KdeCurve(grid=grid, density=density, bandwidth=h)


def pearson(x: Sequence[float], y: Sequence[float]) -> PearsonResult:
    """
    样本Pearson相关系数及双侧p值

    p值由 t = r·sqrt((n−2)/(1−r²)) 对自由度n−2的Student t分布求得。

    Args:
        x: 第一组样本
        y: 第二组样本，长度与x相同，n ≥ 3

    Returns:
        PearsonResult: (r, p, n)

    Raises:
        ValidationError: 长度不一致、样本不足或方差为0
    """
    a = np.asarray(x, dtype=float)
    b = np.asarray(y, dtype=float)
    if a.shape != b.shape:
        raise ValidationError("两组样本长度不一致", details={"x": a.size, "y": b.size})
    n = a.size
    if n < 3:
        raise ValidationError("Pearson相关至少需要3个样本", details={"n": n})

    da = a - a.mean()
    db = b - b.mean()
    sa = np.sqrt(np.dot(da, da))
    sb = np.sqrt(np.dot(db, db))
    if sa == 0 or sb == 0:
        raise ValidationError("样本方差为0，相关系数无定义")

    r = float(np.clip(np.dot(da / sa, db / sb), -1.0, 1.0))
    if abs(r) == 1.0:
        return PearsonResult(r=r, p=0.0, n=n)
    t = r * np.sqrt((n - 2) / (1 - r * r))
    p = float(2 * stats.t.sf(abs(t), n - 2))
    return PearsonResult(r=r, p=min(max(p, 0.0), 1.0), n=n)


def efficiency_shares(
    values: Sequence[float], low: float = 0.2, high: float = 0.8
) -> EfficiencyShares:
    """
    效率严格低于low和严格高于high的资产占比
    """
    e = np.asarray(values, dtype=float)
    if e.size == 0:
        return EfficiencyShares(0.0, 0.0, low, high)
    return EfficiencyShares(
        low=float(np.mean(e < low)),
        high=float(np.mean(e > high)),
        low_threshold=low,
        high_threshold=high,
    )


def top_by_market_cap(
    symbols: Sequence[str],
    mcap_means: Sequence[float],
    efficiencies: Sequence[float],
    n: int = 50,
) -> List[RankedAsset]:
    """
    按市值均值从大到小取前n个资产，市值缺失的资产不参与排名，同值按代码排序
    """
    rows = [
        (float(m), s, float(e))
        for s, m, e in zip(symbols, mcap_means, efficiencies)
        if np.isfinite(m)
    ]
    rows.sort(key=lambda row: (-row[0], row[1]))
    return [
        RankedAsset(rank=i + 1, symbol=s, mcap_mean=m, E=e)
        for i, (m, s, e) in enumerate(rows[:n])
    ]
