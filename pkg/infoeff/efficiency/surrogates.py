"""
打乱替代数据置信带

对每个窗口做m次独立的均匀打乱（Fisher–Yates），计算打乱后的(H, C)，
由此得到H和C的随机置信带。随机数使用Philox计数器生成器，种子只由
(master_seed, window_index)决定，因此结果与执行顺序和并行度无关。
"""

from concurrent.futures import ThreadPoolExecutor
from typing import List, Tuple

import numpy as np
from scipy import stats

from infoeff.core.config import AnalysisConfig, BandMode
from infoeff.core.exceptions import ValidationError
from infoeff.core.logging import get_logger
from infoeff.efficiency.models import Band, ComplexityTrack
from infoeff.ingest.models import ReturnSeries
from infoeff.ordinal import batch_counts, entropy_complexity

logger = get_logger(__name__)

SEED_MODULUS = 2**64


def window_rng(master_seed: int, window_index: int) -> np.random.Generator:
    """
    窗口专用的随机数子流

    Args:
        master_seed: 主种子
        window_index: 窗口下标

    Returns:
        np.random.Generator: 基于Philox的生成器
    """
    sequence = np.random.SeedSequence([master_seed % SEED_MODULUS, window_index])
    return np.random.Generator(np.random.Philox(sequence))


def surrogate_values(
    window: np.ndarray, config: AnalysisConfig, window_index: int
) -> Tuple[np.ndarray, np.ndarray]:
    """
    计算m个打乱窗口的(H, C)

    Returns:
        Tuple[np.ndarray, np.ndarray]: 长度为m的H和C
    """
    rng = window_rng(config.master_seed, window_index)
    shuffled = np.stack([rng.permutation(window) for _ in range(config.surrogate_count)])
    counts = batch_counts(shuffled, config.embedding_dim)
    return entropy_complexity(counts, config.embedding_dim)


def band_limits(samples: np.ndarray, confidence: float, mode: BandMode) -> Tuple[float, float]:
    """
    由替代样本估计双侧置信区间，截断到[0, 1]

    gaussian模式为均值 ± z·样本标准差（分母m−1），z为标准正态的双侧分位数；
    quantile模式为经验分位数。
    """
    alpha = 1.0 - confidence
    if mode == BandMode.QUANTILE:
        lo, hi = np.quantile(samples, [alpha / 2, 1 - alpha / 2])
    else:
        z = stats.norm.ppf(1 - alpha / 2)
        mean = samples.mean()
        spread = z * samples.std(ddof=1)
        lo, hi = mean - spread, mean + spread
    return float(np.clip(lo, 0.0, 1.0)), float(np.clip(hi, 0.0, 1.0))


def surrogate_band(window: np.ndarray, config: AnalysisConfig, window_index: int) -> Band:
    """
    计算单个窗口的随机置信带

    Args:
        window: 长度为w的窗口
        config: 分析配置
        window_index: 窗口下标，用于派生随机子流

    Returns:
        Band: (H_lo, H_hi, C_lo, C_hi)

    Raises:
        ValidationError: 窗口长度与配置不符或m < 2
    """
    window = np.asarray(window, dtype=float)
    if window.shape != (config.window,):
        raise ValidationError(
            "窗口长度与配置不符", details={"length": window.size, "window": config.window}
        )
    if config.surrogate_count < 2:
        raise ValidationError("打乱次数至少为2", details={"m": config.surrogate_count})

    h, c = surrogate_values(window, config, window_index)
    h_lo, h_hi = band_limits(h, config.confidence, config.band_mode)
    c_lo, c_hi = band_limits(c, config.confidence, config.band_mode)
    return Band(h_lo, h_hi, c_lo, c_hi)


def _band_chunk(values: np.ndarray, config: AnalysisConfig, indices: range) -> List[Band]:
    w = config.window
    return [surrogate_band(values[i : i + w], config, i) for i in indices]


def apply_bands(
    track: ComplexityTrack,
    returns: ReturnSeries,
    config: AnalysisConfig,
    threads: int = 1,
) -> ComplexityTrack:
    """
    为轨迹的每个窗口计算置信带和inside标记

    Args:
        track: 由同一收益率序列和配置得到的轨迹
        returns: 收益率序列
        config: 分析配置
        threads: 并行线程数，结果与线程数无关

    Returns:
        ComplexityTrack: 带置信带的轨迹

    Raises:
        ValidationError: 轨迹与收益率序列不匹配
    """
    expected = max(len(returns) - config.window + 1, 0)
    if track.symbol != returns.symbol or len(track) != expected or track.window != config.window:
        raise ValidationError(
            "轨迹与收益率序列不匹配",
            details={"symbol": track.symbol, "windows": len(track), "expected": expected},
        )
    if len(track) == 0:
        return track

    n = len(track)
    if threads > 1 and n > 1:
        chunk = -(-n // threads)
        ranges = [range(s, min(s + chunk, n)) for s in range(0, n, chunk)]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = pool.map(lambda r: _band_chunk(returns.values, config, r), ranges)
            bands = [band for part in parts for band in part]
    else:
        bands = _band_chunk(returns.values, config, range(n))

    table = np.array(bands, dtype=float)
    banded = track.with_bands(table[:, 0], table[:, 1], table[:, 2], table[:, 3])
    logger.debug(
        f"{track.symbol}: {int(banded.inside.sum())}/{n} 个窗口位于随机置信带内"  # type: ignore[union-attr]
    )
    return banded
