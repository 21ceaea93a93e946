"""
平均连接层次聚类

每一步合并平均簇间距离（两簇之间全部跨簇叶子对的距离均值）最小的一对簇。
叶子编号为0…k−1，第s次合并产生的新簇编号为k+s。多对簇的平均距离同为最小时，
合并(较小编号, 较大编号)按字典序最小的一对。
"""

from dataclasses import dataclass
from typing import List, NamedTuple, Tuple

import numpy as np

from infoeff.core.config import Linkage
from infoeff.core.exceptions import ValidationError
from infoeff.core.logging import get_logger
from infoeff.similarity.matrix import DistanceMatrix

logger = get_logger(__name__)


class Merge(NamedTuple):
    """一次合并：left < right，height为合并时的平均距离，size为新簇的叶子数"""

    left: int
    right: int
    height: float
    size: int


@dataclass(frozen=True)
class Dendrogram:
    """合并树"""

    labels: Tuple[str, ...]
    merges: Tuple[Merge, ...]

    @property
    def n_leaves(self) -> int:
        """叶子数"""
        return len(self.labels)

    @property
    def heights(self) -> np.ndarray:
        """按合并顺序排列的高度"""
        return np.array([m.height for m in self.merges], dtype=float)

    def leaf_order(self) -> List[int]:
        """从根开始先左后右遍历得到的叶子顺序"""
        k = self.n_leaves
        if k == 1:
            return [0]
        order: List[int] = []
        stack = [k + len(self.merges) - 1]
        while stack:
            node = stack.pop()
            if node < k:
                order.append(node)
            else:
                merge = self.merges[node - k]
                stack.append(merge.right)
                stack.append(merge.left)
        return order

    def to_linkage_matrix(self) -> np.ndarray:
        """转换为scipy风格的(k−1)×4连接矩阵"""
        return np.array(
            [[m.left, m.right, m.height, m.size] for m in self.merges], dtype=float
        ).reshape(-1, 4)


def average_linkage(matrix: DistanceMatrix) -> Dendrogram:
    """
    平均连接（UPGMA）凝聚聚类

    Args:
        matrix: 距离矩阵，k ≥ 2

    Returns:
        Dendrogram: 恰好k−1次合并，高度单调不减

    Raises:
        ValidationError: 叶子数少于2
    """
    k = len(matrix)
    if k < 2:
        raise ValidationError("层次聚类至少需要两个对象", details={"k": k})

    total = 2 * k - 1
    # sums[i, j]为簇i与簇j之间全部跨簇叶子对距离之和
    sums = np.zeros((total, total))
    sums[:k, :k] = matrix.values
    sizes = np.zeros(total, dtype=np.int64)
    sizes[:k] = 1
    active = np.zeros(total, dtype=bool)
    active[:k] = True

    merges: List[Merge] = []
    previous = 0.0
    for step in range(k - 1):
        ids = np.flatnonzero(active)
        sub = sums[np.ix_(ids, ids)] / np.outer(sizes[ids], sizes[ids])
        upper = np.triu(np.ones(sub.shape, dtype=bool), k=1)
        height = sub[upper].min()
        # argwhere按行优先返回，第一个即字典序最小的(较小编号, 较大编号)
        r, c = np.argwhere(upper & (sub == height))[0]
        left, right = int(ids[r]), int(ids[c])

        new = k + step
        sums[new, :] = sums[left, :] + sums[right, :]
        sums[:, new] = sums[new, :]
        sums[new, new] = 0.0
        sizes[new] = sizes[left] + sizes[right]
        active[left] = active[right] = False
        active[new] = True

        # 平均连接在精确算术下单调，浮点舍入不允许出现倒挂
        height = max(float(height), previous)
        previous = height
        merges.append(Merge(left, right, height, int(sizes[new])))

    logger.debug(f"平均连接完成: {k} 个叶子, 最高合并高度 {previous:.6g}")
    return Dendrogram(labels=matrix.labels, merges=tuple(merges))


def build_dendrogram(matrix: DistanceMatrix, method: Linkage = Linkage.AVERAGE) -> Dendrogram:
    """
    按连接方式构建合并树，目前只支持average

    Raises:
        ValidationError: 不支持的连接方式
    """
    if Linkage(method) != Linkage.AVERAGE:
        raise ValidationError("仅支持average连接", details={"linkage": Linkage(method).value})
    return average_linkage(matrix)
