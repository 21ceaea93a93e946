"""
行情数据模型

定义单个资产的日度价格序列、对数收益率序列以及读取过程中的诊断记录。
"""

from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from infoeff.core.exceptions import ValidationError


@dataclass(frozen=True)
class PriceSeries:
    """
    单个资产的日度收盘价与市值

    dates为datetime64[D]数组，严格递增；market_cap缺失的日期用NaN表示。
    """

    symbol: str
    name: str
    dates: np.ndarray
    close: np.ndarray
    market_cap: np.ndarray

    def __post_init__(self) -> None:
        n = len(self.dates)
        if len(self.close) != n or len(self.market_cap) != n:
            raise ValidationError(
                "dates、close、market_cap长度不一致",
                details={"symbol": self.symbol},
            )
        if n and not np.all(self.close > 0):
            raise ValidationError("收盘价必须为正", details={"symbol": self.symbol})
        if n > 1 and not np.all(np.diff(self.dates.astype("datetime64[D]").astype(np.int64)) > 0):
            raise ValidationError("日期必须严格递增", details={"symbol": self.symbol})
        caps = self.market_cap[~np.isnan(self.market_cap)]
        if caps.size and np.any(caps < 0):
            raise ValidationError("市值不能为负", details={"symbol": self.symbol})

    def __len__(self) -> int:
        return len(self.dates)

    @property
    def n_returns(self) -> int:
        """对数收益率序列的长度"""
        return max(len(self.dates) - 1, 0)

    @property
    def mcap_mean(self) -> float:
        """有市值记录的日期上的市值均值，全部缺失时为NaN"""
        caps = self.market_cap[~np.isnan(self.market_cap)]
        if caps.size == 0:
            return float("nan")
        return float(caps.mean())


@dataclass(frozen=True)
class ReturnSeries:
    """对数收益率序列，日期对齐到每对价格中较晚的一天"""

    symbol: str
    dates: np.ndarray
    values: np.ndarray

    def __len__(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class RowDiagnostic:
    """读取诊断：行号从1开始计，表头为第1行；资产级问题的row为None"""

    file: str
    row: Optional[int]
    column: Optional[str]
    message: str
    symbol: Optional[str] = None


@dataclass
class IngestReport:
    """数据读取结果"""

    series: List[PriceSeries] = field(default_factory=list)
    diagnostics: List[RowDiagnostic] = field(default_factory=list)
    rejected: List[str] = field(default_factory=list)
