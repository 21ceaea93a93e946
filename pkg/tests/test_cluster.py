"""
层次聚类、切割与轮廓系数测试
"""

import math

import numpy as np
import pytest
from scipy.cluster.hierarchy import linkage as scipy_linkage
from scipy.spatial.distance import squareform

from infoeff.cluster import (
    average_linkage,
    build_dendrogram,
    candidate_thresholds,
    cut,
    optimal_cut,
    silhouette,
)
from infoeff.core.config import Linkage
from infoeff.core.exceptions import InsufficientDataError, ValidationError
from infoeff.similarity import DistanceMatrix


def make_matrix(values, labels=None):
    values = np.asarray(values, dtype=float)
    labels = labels or tuple(f"S{i}" for i in range(values.shape[0]))
    return DistanceMatrix(labels=tuple(labels), values=values)


def random_matrix(rng, k):
    upper = np.triu(rng.uniform(0.1, 10.0, size=(k, k)), k=1)
    return make_matrix(upper + upper.T)


def naive_average_linkage(values):
    """每步重新计算全部簇对平均距离的参考实现，返回[(叶子集合, 高度)]"""
    clusters = [frozenset([i]) for i in range(values.shape[0])]
    merges = []
    while len(clusters) > 1:
        best = None
        for x in range(len(clusters)):
            for y in range(x + 1, len(clusters)):
                pairs = [values[i, j] for i in clusters[x] for j in clusters[y]]
                avg = sum(pairs) / len(pairs)
                if best is None or avg < best[0]:
                    best = (avg, x, y)
        avg, x, y = best
        merged = clusters[x] | clusters[y]
        merges.append((merged, avg))
        clusters = [c for i, c in enumerate(clusters) if i not in (x, y)] + [merged]
    return merges


def merged_leaf_sets(dendrogram):
    k = dendrogram.n_leaves
    members = {i: frozenset([i]) for i in range(k)}
    result = []
    for step, merge in enumerate(dendrogram.merges):
        members[k + step] = members[merge.left] | members[merge.right]
        result.append((members[k + step], merge.height))
    return result


def same_partition(a, b):
    a, b = np.asarray(a), np.asarray(b)
    return all((a[i] == a[j]) == (b[i] == b[j]) for i in range(a.size) for j in range(a.size))


def three_points():
    return make_matrix([[0, 1, 4], [1, 0, 5], [4, 5, 0]], ("A", "B", "C"))


def test_three_point_linkage():
    """测试三点示例的合并顺序与高度"""
    dendrogram = average_linkage(three_points())
    assert [(m.left, m.right) for m in dendrogram.merges] == [(0, 1), (2, 3)]
    np.testing.assert_allclose(dendrogram.heights, [1.0, 4.5])
    assert dendrogram.merges[-1].size == 3
    assert [dendrogram.labels[i] for i in dendrogram.leaf_order()] == ["A", "B", "C"]


def test_three_point_cut():
    """测试三点示例在阈值2处切割为{A,B}与{C}"""
    labels = cut(average_linkage(three_points()), 2.0)
    assert labels.tolist() == [0, 0, 1]


def test_matches_naive_reference():
    """测试与逐步重算的参考实现一致"""
    rng = np.random.default_rng(0)
    for _ in range(200):
        k = int(rng.integers(2, 13))
        matrix = random_matrix(rng, k)
        ours = merged_leaf_sets(average_linkage(matrix))
        reference = naive_average_linkage(matrix.values)
        assert [s for s, _ in ours] == [s for s, _ in reference]
        np.testing.assert_allclose([h for _, h in ours], [h for _, h in reference], atol=1e-9)


def test_matches_scipy_heights():
    """测试合并高度与scipy的average连接一致"""
    rng = np.random.default_rng(1)
    for _ in range(20):
        matrix = random_matrix(rng, int(rng.integers(3, 15)))
        expected = scipy_linkage(squareform(matrix.values), method="average")[:, 2]
        ours = average_linkage(matrix)
        np.testing.assert_allclose(ours.heights, expected, atol=1e-9)
        assert ours.to_linkage_matrix().shape == (len(matrix) - 1, 4)


def test_heights_monotone():
    """测试合并高度单调不减"""
    rng = np.random.default_rng(2)
    for _ in range(100):
        heights = average_linkage(random_matrix(rng, int(rng.integers(2, 20)))).heights
        assert np.all(np.diff(heights) >= 0)


def test_equal_distances_tie_break():
    """测试平均距离相同时合并编号最小的一对"""
    matrix = make_matrix(np.ones((4, 4)) - np.eye(4))
    first = average_linkage(matrix).merges[0]
    assert (first.left, first.right) == (0, 1)


def test_cut_extremes():
    """测试阈值为0时每个对象自成一组，阈值为无穷时只有一组"""
    rng = np.random.default_rng(3)
    dendrogram = average_linkage(random_matrix(rng, 8))
    assert cut(dendrogram, 0.0).tolist() == list(range(8))
    assert cut(dendrogram, math.inf).tolist() == [0] * 8
    with pytest.raises(ValidationError):
        cut(dendrogram, -1.0)


def test_line_example_silhouette():
    """测试直线上{0,1}与{10,11}两组的轮廓系数"""
    points = np.array([0.0, 1.0, 10.0, 11.0])
    matrix = make_matrix(np.abs(points[:, None] - points[None, :]))
    scores = silhouette(matrix, [0, 0, 1, 1])
    np.testing.assert_allclose(scores.s, (10.5 - 1) / 10.5)
    assert scores.mean == pytest.approx(0.9048, abs=1e-4)
    np.testing.assert_allclose(scores.a, 1.0)
    np.testing.assert_allclose(scores.b, [10.5, 9.5, 9.5, 10.5])


def test_singleton_silhouette_is_zero():
    """测试单元素组的s为0"""
    scores = silhouette(three_points(), [0, 0, 1])
    assert scores.s[2] == 0.0
    assert scores.s[0] == pytest.approx(0.75)
    assert scores.s[1] == pytest.approx(0.8)


def test_silhouette_needs_two_groups():
    """测试只有一组时轮廓系数无定义"""
    with pytest.raises(InsufficientDataError):
        silhouette(three_points(), [0, 0, 0])


def test_three_point_optimal_cut():
    """测试三点示例的最优切割位于1与4.5的中点"""
    matrix = three_points()
    dendrogram = average_linkage(matrix)
    assert candidate_thresholds(dendrogram)[-1] == pytest.approx(2.75)
    assignment = optimal_cut(dendrogram, matrix)
    assert assignment.threshold == pytest.approx(2.75)
    assert assignment.labels.tolist() == [0, 0, 1]
    assert assignment.n_clusters == 2
    np.testing.assert_allclose(assignment.shares(), [2 / 3, 1 / 3])


def test_recovers_planted_blobs():
    """测试最优切割恢复两个分离良好的团"""
    rng = np.random.default_rng(4)
    for _ in range(100):
        n1, n2 = int(rng.integers(2, 7)), int(rng.integers(2, 7))
        k = n1 + n2
        truth = np.array([0] * n1 + [1] * n2)
        values = np.where(
            truth[:, None] == truth[None, :],
            rng.uniform(0.5, 1.0, size=(k, k)),
            rng.uniform(5.0, 10.0, size=(k, k)),
        )
        values = np.triu(values, k=1)
        values = values + values.T
        order = rng.permutation(k)
        matrix = make_matrix(values[np.ix_(order, order)])
        assignment = optimal_cut(average_linkage(matrix), matrix)
        assert assignment.n_clusters == 2
        assert same_partition(assignment.labels, truth[order])


def test_scale_invariance():
    """测试距离整体放大后轮廓系数与分组不变"""
    rng = np.random.default_rng(5)
    matrix = random_matrix(rng, 10)
    scaled = make_matrix(matrix.values * 7.5)
    base = optimal_cut(average_linkage(matrix), matrix)
    moved = optimal_cut(average_linkage(scaled), scaled)
    assert base.labels.tolist() == moved.labels.tolist()
    np.testing.assert_allclose(base.per_item_s, moved.per_item_s, atol=1e-12)


def test_threads_do_not_change_result():
    """测试并行评估候选阈值不改变结果"""
    rng = np.random.default_rng(6)
    matrix = random_matrix(rng, 12)
    dendrogram = average_linkage(matrix)
    single = optimal_cut(dendrogram, matrix)
    multi = optimal_cut(dendrogram, matrix, threads=4)
    assert single.threshold == multi.threshold
    assert single.labels.tolist() == multi.labels.tolist()


def test_optimal_cut_errors():
    """测试对象过少与连接方式不支持"""
    matrix = make_matrix([[0, 1], [1, 0]])
    with pytest.raises(ValidationError):
        optimal_cut(average_linkage(matrix), matrix)
    with pytest.raises(ValidationError):
        average_linkage(make_matrix([[0.0]]))
    with pytest.raises(ValidationError):
        build_dendrogram(three_points(), Linkage.WARD)
    assert build_dendrogram(three_points()).n_leaves == 3
