"""
相似度模块

计算效率轨迹之间的DTW距离并组装成对距离矩阵。
"""

from infoeff.similarity.dtw import accumulated_cost, dtw_distance
from infoeff.similarity.matrix import DistanceMatrix, distance_matrix

__all__ = ["DistanceMatrix", "accumulated_cost", "distance_matrix", "dtw_distance"]
