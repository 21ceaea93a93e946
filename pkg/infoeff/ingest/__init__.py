"""
数据读取模块

读取、校验本地行情文件并计算对数收益率。
"""

from infoeff.ingest.loader import DatasetLoader, load_dataset
from infoeff.ingest.models import IngestReport, PriceSeries, ReturnSeries, RowDiagnostic
from infoeff.ingest.returns import filter_by_length, log_returns

__all__ = [
    "DatasetLoader",
    "IngestReport",
    "PriceSeries",
    "ReturnSeries",
    "RowDiagnostic",
    "filter_by_length",
    "load_dataset",
    "log_returns",
]
