"""
金融时间序列信息效率分析工具库。

基于序数模式的排列熵与统计复杂度，在滑动窗口上度量资产收益率序列的信息效率，
并按效率随时间变化的形态对资产聚类。

主要功能：
----------
* 数据读取：本地CSV行情文件的校验与对数收益率计算
* 序数模式：Bandt–Pompe模式分布、归一化排列熵、统计复杂度
* 效率分析：打乱替代数据置信带、总体效率E与时变效率E_t
* 相似度：E_t序列之间的DTW距离矩阵
* 聚类：平均连接层次聚类与轮廓系数最优切割
* 报告：核密度估计、Pearson相关、分组年龄曲线与结果文件
* 命令行：批处理命令 ``infoeff``

使用方法：
----------
1. 命令行执行完整流水线
   ::

       infoeff pipeline --data data/ --out-dir output/ --seed 42 --threads 4

2. 在代码中调用
   ::

       from infoeff.core import load_settings
       from infoeff.report import run_pipeline

       settings = load_settings()
       report = run_pipeline(settings, "data/", "output/")
       print(report.efficiencies())
"""

import importlib.util

# 导入所有子模块
from infoeff import cluster, core, efficiency, ingest, ordinal, report, similarity, utils

# 使用importlib.util.find_spec检查_version模块是否存在
if importlib.util.find_spec("infoeff._version") is not None:
    # 当模块确实存在时才导入
    try:
        from ._version import __version__  # type: ignore
    except ImportError:
        __version__ = "0.0.0.dev0"
else:
    # 如果_version.py不存在（例如在开发环境中初次克隆后），使用默认版本
    __version__ = "0.0.0.dev0"

__all__ = [
    "cluster",
    "core",
    "efficiency",
    "ingest",
    "ordinal",
    "report",
    "similarity",
    "utils",
]
