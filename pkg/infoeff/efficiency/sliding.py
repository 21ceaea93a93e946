"""
滑动窗口复杂度

在收益率序列上以1天为步长滑动长度为w的窗口，计算每个窗口的排列熵H与统计复杂度C。
整段序列的模式编码只计算一次；d!较小时窗口计数由累积和相减得到，
较大时逐窗口增量更新计数并分块计算。
"""

from typing import Tuple

import numpy as np

from infoeff.core.config import AnalysisConfig
from infoeff.core.exceptions import InsufficientDataError
from infoeff.core.logging import get_logger
from infoeff.efficiency.models import ComplexityTrack
from infoeff.ingest.models import ReturnSeries
from infoeff.ordinal import entropy_complexity, get_codec, pattern_codes

logger = get_logger(__name__)

# 累积计数表的最大元素数，超过后改用增量计数
CUMULATIVE_LIMIT = 20_000_000
CHUNK_WINDOWS = 256


def window_counts(values: np.ndarray, d: int, w: int) -> np.ndarray:
    """
    每个长度为w的滑动窗口的模式计数

    Args:
        values: 收益率
        d: 嵌入维度
        w: 窗口长度

    Returns:
        np.ndarray: 形状为(n − w + 1, d!)的计数矩阵，每行总数为w − d + 1
    """
    codes = pattern_codes(values, d)
    size = get_codec(d).size
    onehot = np.zeros((codes.size + 1, size), dtype=np.int64)
    onehot[np.arange(1, codes.size + 1), codes] = 1
    cumulative = np.cumsum(onehot, axis=0)

    n_windows = len(values) - w + 1
    per_window = w - d + 1
    starts = np.arange(n_windows)
    return cumulative[starts + per_window] - cumulative[starts]


def _incremental_measures(values: np.ndarray, d: int, w: int) -> Tuple[np.ndarray, np.ndarray]:
    codes = pattern_codes(values, d)
    size = get_codec(d).size
    per_window = w - d + 1
    n_windows = len(values) - w + 1

    h = np.empty(n_windows)
    c = np.empty(n_windows)
    counts = np.bincount(codes[:per_window], minlength=size).astype(np.int64)
    for start in range(0, n_windows, CHUNK_WINDOWS):
        stop = min(start + CHUNK_WINDOWS, n_windows)
        block = np.empty((stop - start, size), dtype=np.int64)
        for i in range(start, stop):
            if i > 0:
                counts[codes[i - 1]] -= 1
                counts[codes[i + per_window - 1]] += 1
            block[i - start] = counts
        h[start:stop], c[start:stop] = entropy_complexity(block, d)
    return h, c


def sliding_measures(values: np.ndarray, d: int, w: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    计算全部滑动窗口的(H, C)

    Returns:
        Tuple[np.ndarray, np.ndarray]: 长度为n − w + 1的H和C
    """
    size = get_codec(d).size
    if size * (len(values) - d + 2) <= CUMULATIVE_LIMIT:
        return entropy_complexity(window_counts(values, d, w), d)
    return _incremental_measures(values, d, w)


def sliding_complexity(returns: ReturnSeries, config: AnalysisConfig) -> ComplexityTrack:
    """
    计算不带置信带的(H_t, C_t)轨迹

    Args:
        returns: 收益率序列
        config: 分析配置

    Returns:
        ComplexityTrack: 共n − w + 1个窗口，中心 = 起点 + floor(w/2)

    Raises:
        InsufficientDataError: 序列短于窗口
    """
    w, d = config.window, config.embedding_dim
    n = len(returns)
    if n < w:
        raise InsufficientDataError(
            "收益率序列短于滑动窗口",
            details={"symbol": returns.symbol, "length": n, "window": w},
        )

    h, c = sliding_measures(returns.values, d, w)
    center_index = np.arange(n - w + 1) + w // 2

    logger.debug(f"{returns.symbol}: 计算了 {len(h)} 个窗口的(H, C)")
    return ComplexityTrack(
        symbol=returns.symbol,
        window=w,
        center_index=center_index,
        centers=returns.dates[center_index],
        H=h,
        C=c,
    )
