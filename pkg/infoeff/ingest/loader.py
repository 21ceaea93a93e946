"""
数据读取模块

从本地CSV文件读取资产的日度收盘价和市值。支持两种布局：
每个资产一个文件的目录，或者包含多个资产的单个长表文件。

CSV表头为 ``symbol,name,date,close,market_cap``，date为ISO-8601日期，
close为正数，market_cap为非负数或空。
"""

from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

import numpy as np
import pandas as pd

from infoeff.core.config import AnalysisConfig
from infoeff.core.exceptions import DataFormatError, ValidationError
from infoeff.core.logging import get_logger
from infoeff.ingest.models import IngestReport, PriceSeries, RowDiagnostic
from infoeff.ingest.returns import filter_by_length

logger = get_logger(__name__)

REQUIRED_COLUMNS = ("symbol", "name", "date", "close", "market_cap")

# 表头占第1行，数据行从第2行开始
FIRST_DATA_ROW = 2


class DatasetLoader:
    """
    数据集读取器

    逐文件解析CSV，把格式错误记录为行级诊断；含有错误行、重复日期或
    日期非递增的资产整体被拒绝，其余资产正常返回。
    """

    def __init__(self) -> None:
        self.report = IngestReport()

    def load(self, path: Union[str, Path]) -> IngestReport:
        """
        读取文件或目录

        Args:
            path: CSV文件或包含CSV文件的目录

        Returns:
            IngestReport: 读取结果，含有效序列和诊断信息

        Raises:
            ValidationError: 路径不存在
            DataFormatError: 表头无法解析
        """
        root = Path(path)
        if not root.exists():
            raise ValidationError("数据路径不存在", details={"path": str(root)})

        if root.is_dir():
            files = sorted(p for p in root.iterdir() if p.suffix.lower() == ".csv")
            if not files:
                raise DataFormatError("目录中没有CSV文件", details={"path": str(root)})
        else:
            files = [root]

        seen: Dict[str, str] = {}
        for file in files:
            for series in self._load_file(file):
                if series.symbol in seen:
                    self._reject(
                        file.name,
                        series.symbol,
                        f"资产代码重复，已在 {seen[series.symbol]} 中出现",
                    )
                    continue
                seen[series.symbol] = file.name
                self.report.series.append(series)

        logger.info(
            f"读取完成: {len(self.report.series)} 个资产有效, "
            f"{len(self.report.rejected)} 个被拒绝, {len(self.report.diagnostics)} 条诊断"
        )
        return self.report

    def _load_file(self, file: Path) -> List[PriceSeries]:
        frame = self._read_frame(file)
        if frame.empty:
            logger.warning(f"文件 {file.name} 没有数据行")
            return []

        frame["__row"] = np.arange(FIRST_DATA_ROW, FIRST_DATA_ROW + len(frame))

        result = []
        # 保持资产首次出现的顺序
        for symbol, group in frame.groupby("symbol", sort=False):
            parsed = self._parse_asset(file.name, str(symbol), group)
            if parsed is not None:
                result.append(parsed)
        return result

    @staticmethod
    def _read_frame(file: Path) -> pd.DataFrame:
        try:
            frame = pd.read_csv(
                file,
                dtype=str,
                keep_default_na=False,
                encoding="utf-8",
                skipinitialspace=True,
            )
        except (pd.errors.ParserError, pd.errors.EmptyDataError, UnicodeDecodeError) as e:
            raise DataFormatError(f"无法解析CSV文件: {e}", details={"file": file.name}) from e

        frame.columns = [str(c).strip().lower() for c in frame.columns]
        missing = [c for c in REQUIRED_COLUMNS if c not in frame.columns]
        if missing:
            raise DataFormatError(
                "CSV表头缺少必需的列",
                details={"file": file.name, "missing": ",".join(missing)},
            )
        for column in REQUIRED_COLUMNS:
            frame[column] = frame[column].str.strip()
        return frame

    def _parse_asset(
        self, file_name: str, symbol: str, group: pd.DataFrame
    ) -> Optional[PriceSeries]:
        rows = group["__row"].to_numpy()
        errors: List[Tuple[int, str, str]] = []

        if not symbol:
            for row in rows:
                errors.append((int(row), "symbol", "资产代码为空"))

        dates = pd.to_datetime(group["date"], format="%Y-%m-%d", errors="coerce")
        for row in rows[dates.isna().to_numpy()]:
            errors.append((int(row), "date", "日期不是YYYY-MM-DD格式"))

        close = pd.to_numeric(group["close"], errors="coerce").to_numpy(dtype=float)
        bad_close = ~np.isfinite(close) | (close <= 0)
        for row, value in zip(rows[bad_close], group["close"].to_numpy()[bad_close]):
            errors.append((int(row), "close", f"收盘价必须为正数，实际为 {value!r}"))

        raw_cap = group["market_cap"]
        market_cap = pd.to_numeric(raw_cap.replace("", np.nan), errors="coerce").to_numpy(
            dtype=float
        )
        bad_cap = (raw_cap.to_numpy() != "") & (np.isnan(market_cap) | (market_cap < 0))
        bad_cap |= np.isinf(market_cap)
        for row, value in zip(rows[bad_cap], raw_cap.to_numpy()[bad_cap]):
            errors.append((int(row), "market_cap", f"市值必须为非负数或空，实际为 {value!r}"))

        if errors:
            for row, column, message in sorted(errors):
                self.report.diagnostics.append(
                    RowDiagnostic(file_name, row, column, message, symbol=symbol)
                )
            self._reject(file_name, symbol, f"{len(errors)} 行数据无效")
            return None

        day = dates.to_numpy().astype("datetime64[D]")
        steps = np.diff(day.astype(np.int64))
        if np.any(steps == 0):
            duplicate = int(rows[1:][steps == 0][0])
            self._reject(file_name, symbol, "日期重复", row=duplicate, column="date")
            return None
        if np.any(steps < 0):
            backwards = int(rows[1:][steps < 0][0])
            self._reject(file_name, symbol, "日期非递增", row=backwards, column="date")
            return None

        names = group["name"].to_numpy()
        return PriceSeries(
            symbol=symbol,
            name=str(names[0]) if len(names) else symbol,
            dates=day,
            close=close,
            market_cap=market_cap,
        )

    def _reject(
        self,
        file_name: str,
        symbol: str,
        reason: str,
        row: Optional[int] = None,
        column: Optional[str] = None,
    ) -> None:
        logger.warning(f"资产 {symbol} ({file_name}) 被拒绝: {reason}")
        self.report.diagnostics.append(
            RowDiagnostic(file_name, row, column, reason, symbol=symbol)
        )
        self.report.rejected.append(symbol)


def load_dataset(
    path: Union[str, Path], config: Optional[AnalysisConfig] = None
) -> List[PriceSeries]:
    """
    读取数据集，返回通过校验的资产序列

    给出config时再按config.min_returns做长度过滤。

    Args:
        path: CSV文件或目录
        config: 分析配置，可选

    Returns:
        List[PriceSeries]: 每个有效资产一个序列，顺序为文件名顺序加文件内首次出现顺序
    """
    series = DatasetLoader().load(path).series
    if config is None:
        return series
    return filter_by_length(series, config.min_returns)
