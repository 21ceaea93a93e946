"""
成对距离矩阵
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from infoeff.core.config import DTWCost
from infoeff.core.exceptions import ValidationError
from infoeff.core.logging import get_logger
from infoeff.similarity.dtw import dtw_distance

logger = get_logger(__name__)


@dataclass(frozen=True)
class DistanceMatrix:
    """对称、零对角、非负有限的k×k距离矩阵"""

    labels: Tuple[str, ...]
    values: np.ndarray

    def __post_init__(self) -> None:
        v = self.values
        k = len(self.labels)
        if v.shape != (k, k):
            raise ValidationError("距离矩阵形状与标签数不符", details={"shape": v.shape, "k": k})
        if len(set(self.labels)) != k:
            raise ValidationError("距离矩阵标签重复")
        if not np.all(np.isfinite(v)) or np.any(v < 0):
            raise ValidationError("距离必须为非负有限值")
        if not np.array_equal(v, v.T):
            raise ValidationError("距离矩阵不对称")
        if np.any(np.diag(v) != 0):
            raise ValidationError("距离矩阵对角线必须为0")

    def __len__(self) -> int:
        return len(self.labels)

    def reorder(self, order: Sequence[int]) -> "DistanceMatrix":
        """按给定的下标顺序重排行和列"""
        idx = np.asarray(order, dtype=np.int64)
        return DistanceMatrix(
            labels=tuple(self.labels[i] for i in idx), values=self.values[np.ix_(idx, idx)]
        )


def distance_matrix(
    profiles: Sequence[Tuple[str, Sequence[float]]],
    cost: DTWCost = DTWCost.SQUARED,
    threads: int = 1,
) -> DistanceMatrix:
    """
    计算全部k(k−1)/2对DTW距离

    Args:
        profiles: (标签, 序列)列表，k ≥ 2
        cost: DTW局部代价
        threads: 并行线程数，各线程写入互不重叠的格子

    Returns:
        DistanceMatrix: 距离矩阵

    Raises:
        ValidationError: 少于两条序列或存在空序列
    """
    if len(profiles) < 2:
        raise ValidationError("至少需要两条序列", details={"k": len(profiles)})
    labels = tuple(label for label, _ in profiles)
    series: List[np.ndarray] = []
    for label, values in profiles:
        arr = np.asarray(values, dtype=float)
        if arr.size == 0:
            raise ValidationError("序列不能为空", details={"symbol": label})
        series.append(arr)

    k = len(series)
    values = np.zeros((k, k))
    pairs = [(i, j) for i in range(k) for j in range(i + 1, k)]

    def compute(pair: Tuple[int, int]) -> float:
        i, j = pair
        return dtw_distance(series[i], series[j], cost)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            distances = list(pool.map(compute, pairs))
    else:
        distances = [compute(pair) for pair in pairs]

    for (i, j), dist in zip(pairs, distances):
        values[i, j] = values[j, i] = dist

    logger.info(f"已计算 {len(pairs)} 对DTW距离 (k={k}, cost={DTWCost(cost).value})")
    return DistanceMatrix(labels=labels, values=values)
