"""
聚类模块

对DTW距离矩阵做平均连接层次聚类，计算轮廓系数，并按轮廓系数最大化切割合并树。
"""

from infoeff.cluster.linkage import Dendrogram, Merge, average_linkage, build_dendrogram
from infoeff.cluster.silhouette import (
    ClusterAssignment,
    SilhouetteScores,
    candidate_thresholds,
    cut,
    optimal_cut,
    silhouette,
)

__all__ = [
    "ClusterAssignment",
    "Dendrogram",
    "Merge",
    "SilhouetteScores",
    "average_linkage",
    "build_dendrogram",
    "candidate_thresholds",
    "cut",
    "optimal_cut",
    "silhouette",
]
