"""
切割与轮廓系数

cut按阈值切割合并树；silhouette计算每个对象的a_i、b_i和s_i；
optimal_cut在相邻不同合并高度的中点上扫描阈值，选取平均轮廓系数最大的切割。
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from infoeff.cluster.linkage import Dendrogram
from infoeff.core.exceptions import InsufficientDataError, ValidationError
from infoeff.core.logging import get_logger
from infoeff.similarity.matrix import DistanceMatrix

logger = get_logger(__name__)

# 平均轮廓系数的比较容差，差值在容差内视为相等
SCORE_TOLERANCE = 1e-12


class SilhouetteScores(NamedTuple):
    """每个对象的a_i、b_i、s_i以及平均值"""

    a: np.ndarray
    b: np.ndarray
    s: np.ndarray
    mean: float


@dataclass(frozen=True)
class ClusterAssignment:
    """带轮廓系数的分组结果"""

    symbols: Tuple[str, ...]
    labels: np.ndarray
    threshold: float
    per_item_a: np.ndarray
    per_item_b: np.ndarray
    per_item_s: np.ndarray
    mean_silhouette: float

    @property
    def n_clusters(self) -> int:
        """分组数"""
        return int(np.unique(self.labels).size)

    def shares(self) -> np.ndarray:
        """按组号排列的各组占比"""
        counts = np.bincount(self.labels)
        return counts / counts.sum()


def cut(dendrogram: Dendrogram, threshold: float) -> np.ndarray:
    """
    按阈值切割合并树

    簇为内部合并高度全部小于阈值的极大子树。组号按叶子下标顺序分配：
    叶子0所在的组为0，之后首次出现的组依次编号。

    Args:
        dendrogram: 合并树
        threshold: 非负阈值

    Returns:
        np.ndarray: 每个叶子的组号
    """
    if threshold < 0:
        raise ValidationError("阈值不能为负", details={"threshold": threshold})

    k = dendrogram.n_leaves
    parent = list(range(2 * k - 1))

    def find(node: int) -> int:
        while parent[node] != node:
            parent[node] = parent[parent[node]]
            node = parent[node]
        return node

    for step, merge in enumerate(dendrogram.merges):
        if merge.height < threshold:
            new = k + step
            parent[find(merge.left)] = new
            parent[find(merge.right)] = new

    labels = np.empty(k, dtype=np.int64)
    numbering: dict = {}
    for leaf in range(k):
        root = find(leaf)
        labels[leaf] = numbering.setdefault(root, len(numbering))
    return labels


def silhouette(matrix: DistanceMatrix, labels: Sequence[int]) -> SilhouetteScores:
    """
    轮廓系数 s_i = (b_i − a_i)/max(a_i, b_i)

    a_i为i到同组其他成员的平均距离，b_i为i到其他各组平均距离的最小值。
    单元素组的a_i和s_i均取0。

    Args:
        matrix: 距离矩阵
        labels: 每个对象的组号

    Returns:
        SilhouetteScores: 各对象的a、b、s与平均值

    Raises:
        InsufficientDataError: 少于两组
    """
    lab = np.asarray(labels)
    k = len(matrix)
    if lab.shape != (k,):
        raise ValidationError("组号数量与矩阵大小不符", details={"labels": lab.size, "k": k})
    groups, inverse = np.unique(lab, return_inverse=True)
    if groups.size < 2:
        raise InsufficientDataError("轮廓系数至少需要两组", details={"groups": int(groups.size)})

    onehot = np.zeros((k, groups.size))
    onehot[np.arange(k), inverse] = 1.0
    sizes = onehot.sum(axis=0)
    # totals[i, g]为i到组g全部成员的距离之和
    totals = matrix.values @ onehot

    own = inverse
    own_size = sizes[own]
    singleton = own_size == 1
    a = np.where(singleton, 0.0, totals[np.arange(k), own] / np.maximum(own_size - 1, 1))

    means = totals / sizes
    means[np.arange(k), own] = np.inf
    b = means.min(axis=1)

    denom = np.maximum(a, b)
    s = np.where(denom > 0, (b - a) / np.where(denom > 0, denom, 1.0), 0.0)
    s = np.where(singleton, 0.0, np.clip(s, -1.0, 1.0))
    return SilhouetteScores(a=a, b=b, s=s, mean=float(s.mean()))


def candidate_thresholds(dendrogram: Dendrogram) -> List[float]:
    """
    相邻不同合并高度的中点，加上一个高于最高合并的阈值，按从大到小排列
    """
    heights = np.unique(dendrogram.heights)
    candidates = list((heights[:-1] + heights[1:]) / 2)
    top = float(heights[-1])
    candidates.append(top + max(1.0, abs(top)))
    return sorted((float(c) for c in candidates), reverse=True)


def _assignment(matrix: DistanceMatrix, labels: np.ndarray, threshold: float) -> ClusterAssignment:
    scores = silhouette(matrix, labels)
    return ClusterAssignment(
        symbols=matrix.labels,
        labels=labels,
        threshold=threshold,
        per_item_a=scores.a,
        per_item_b=scores.b,
        per_item_s=scores.s,
        mean_silhouette=scores.mean,
    )


def optimal_cut(
    dendrogram: Dendrogram, matrix: DistanceMatrix, threads: int = 1
) -> ClusterAssignment:
    """
    选取平均轮廓系数最大的切割，相同分数时取组数较少者

    Args:
        dendrogram: 由matrix得到的合并树
        matrix: 距离矩阵，k ≥ 3
        threads: 并行评估候选阈值的线程数

    Returns:
        ClusterAssignment: 最优分组

    Raises:
        ValidationError: k < 3或合并树与矩阵不符
        InsufficientDataError: 没有产生至少两组的候选阈值
    """
    k = len(matrix)
    if k < 3:
        raise ValidationError("最优切割至少需要3个对象", details={"k": k})
    if dendrogram.labels != matrix.labels:
        raise ValidationError("合并树与距离矩阵的标签不一致")

    cuts = []
    for threshold in candidate_thresholds(dendrogram):
        labels = cut(dendrogram, threshold)
        if np.unique(labels).size >= 2:
            cuts.append((threshold, labels))
    if not cuts:
        raise InsufficientDataError("没有候选阈值能产生至少两组")

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            assignments = list(pool.map(lambda c: _assignment(matrix, c[1], c[0]), cuts))
    else:
        assignments = [_assignment(matrix, labels, threshold) for threshold, labels in cuts]

    # 候选按阈值从大到小，即组数从少到多
    best: Optional[ClusterAssignment] = None
    for assignment in assignments:
        if best is None or assignment.mean_silhouette > best.mean_silhouette + SCORE_TOLERANCE:
            best = assignment

    assert best is not None
    logger.info(
        f"最优切割阈值 {best.threshold:.6g}: {best.n_clusters} 组, "
        f"平均轮廓系数 {best.mean_silhouette:.4f}"
    )
    return best
