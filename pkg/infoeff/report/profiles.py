"""
分组效率曲线

在每个聚类组内按E_t序列长度（资产年龄）分成三个人数相近的年龄段，
分别求末端对齐的逐点平均曲线。
"""

from dataclasses import dataclass
from typing import Dict, List, Mapping, Sequence, Tuple

import numpy as np

from infoeff.cluster.silhouette import ClusterAssignment
from infoeff.core.exceptions import ValidationError

BUCKET_NAMES = ("young", "mid", "old")
ALL_BUCKET = "all"
MIN_TERCILE_MEMBERS = 3


@dataclass(frozen=True)
class GroupProfile:
    """
    一个组（或组内年龄段）的平均E_t曲线

    curve按时间先后排列，最后一个元素对应各成员序列的最后一个观测。
    flagged为True表示组内成员不足3个，只给出整体平均曲线。
    """

    group: int
    bucket: str
    flagged: bool
    members: Tuple[str, ...]
    curve: np.ndarray


def end_aligned_mean(curves: Sequence[np.ndarray]) -> np.ndarray:
    """
    末端对齐的逐点平均

    距末端第m个位置上的值是所有长度大于m的曲线在该位置的平均。

    Returns:
        np.ndarray: 长度等于最长曲线的平均曲线
    """
    longest = max(len(c) for c in curves)
    sums = np.zeros(longest)
    counts = np.zeros(longest)
    for c in curves:
        values = np.asarray(c, dtype=float)
        if values.size:
            sums[longest - values.size :] += values
            counts[longest - values.size :] += 1
    return sums / np.maximum(counts, 1)


def tercile_split(members: Sequence[Tuple[str, int]]) -> List[List[str]]:
    """
    按长度排名分成三段，长度相同的资产归入较年轻（较短）的一段

    Args:
        members: (代码, 序列长度)列表

    Returns:
        List[List[str]]: young、mid、old三段的成员，可能有空段
    """
    ordered = sorted(members, key=lambda m: (m[1], m[0]))
    n = len(ordered)
    sizes = [len(part) for part in np.array_split(np.arange(n), 3)]
    boundaries = [sizes[0], sizes[0] + sizes[1]]

    adjusted = []
    previous = 0
    for boundary in boundaries:
        boundary = max(boundary, previous)
        while 0 < boundary < n and ordered[boundary][1] == ordered[boundary - 1][1]:
            boundary += 1
        adjusted.append(boundary)
        previous = boundary

    cuts = [0, *adjusted, n]
    return [[s for s, _ in ordered[cuts[i] : cuts[i + 1]]] for i in range(3)]


def group_profiles(
    assignment: ClusterAssignment,
    profiles: Mapping[str, np.ndarray],
) -> List[GroupProfile]:
    """
    计算每组以及组内各年龄段的平均E_t曲线

    Args:
        assignment: 分组结果
        profiles: 代码到E_t序列的映射，必须覆盖所有分组资产

    Returns:
        List[GroupProfile]: 按组号、年龄段排列的曲线

    Raises:
        ValidationError: 有分组资产缺少E_t序列
    """
    missing = [s for s in assignment.symbols if s not in profiles]
    if missing:
        raise ValidationError("部分分组资产缺少E_t序列", details={"missing": ",".join(missing)})

    groups: Dict[int, List[str]] = {}
    for symbol, label in zip(assignment.symbols, assignment.labels):
        groups.setdefault(int(label), []).append(symbol)

    result: List[GroupProfile] = []
    for group in sorted(groups):
        members = groups[group]
        small = len(members) < MIN_TERCILE_MEMBERS
        result.append(
            GroupProfile(
                group=group,
                bucket=ALL_BUCKET,
                flagged=small,
                members=tuple(members),
                curve=end_aligned_mean([profiles[s] for s in members]),
            )
        )
        if small:
            continue
        split = tercile_split([(s, len(profiles[s])) for s in members])
        for name, bucket in zip(BUCKET_NAMES, split):
            if not bucket:
                continue
            result.append(
                GroupProfile(
                    group=group,
                    bucket=name,
                    flagged=False,
                    members=tuple(bucket),
                    curve=end_aligned_mean([profiles[s] for s in bucket]),
                )
            )
    return result
