"""
测试公共工具：合成数据与小规模配置
"""

from pathlib import Path
from typing import Dict, Optional

import numpy as np
import pandas as pd
import pytest

from infoeff.core.config import AnalysisConfig, RuntimeConfig, Settings
from infoeff.ingest.models import PriceSeries, ReturnSeries

START_DATE = np.datetime64("2015-01-01", "D")


def noise_returns(n: int, seed: int = 0, scale: float = 0.02) -> np.ndarray:
    """独立同分布的高斯收益率"""
    return np.random.default_rng(seed).normal(0.0, scale, n)


def logistic_series(n: int, x0: float = 0.4) -> np.ndarray:
    """完全混沌的logistic映射 x_{t+1} = 4x(1−x)"""
    x = np.empty(n)
    x[0] = x0
    for t in range(1, n):
        x[t] = 4.0 * x[t - 1] * (1.0 - x[t - 1])
    return x


def return_series(values: np.ndarray, symbol: str = "AAA") -> ReturnSeries:
    """以START_DATE起的连续日期包装收益率"""
    dates = START_DATE + np.arange(1, len(values) + 1)
    return ReturnSeries(symbol=symbol, dates=dates, values=np.asarray(values, dtype=float))


def price_series(
    returns: np.ndarray,
    symbol: str = "AAA",
    market_cap: Optional[float] = 1e6,
    start_price: float = 100.0,
) -> PriceSeries:
    """由收益率构造价格序列，长度为len(returns) + 1"""
    close = start_price * np.exp(np.concatenate([[0.0], np.cumsum(returns)]))
    n = close.size
    caps = np.full(n, np.nan if market_cap is None else market_cap, dtype=float)
    return PriceSeries(
        symbol=symbol,
        name=f"{symbol} coin",
        dates=START_DATE + np.arange(n),
        close=close,
        market_cap=caps,
    )


def write_asset_csv(path: Path, series: PriceSeries) -> Path:
    """把价格序列写成行情CSV"""
    frame = pd.DataFrame(
        {
            "symbol": series.symbol,
            "name": series.name,
            "date": np.datetime_as_string(series.dates, unit="D"),
            "close": [repr(float(v)) for v in series.close],
            "market_cap": ["" if np.isnan(v) else repr(float(v)) for v in series.market_cap],
        }
    )
    frame.to_csv(path, index=False, lineterminator="\n")
    return path


def write_dataset(folder: Path, assets: Dict[str, np.ndarray], caps: Dict[str, float]) -> Path:
    """每个资产一个CSV文件"""
    folder.mkdir(parents=True, exist_ok=True)
    for symbol, returns in assets.items():
        write_asset_csv(folder / f"{symbol}.csv", price_series(returns, symbol, caps.get(symbol)))
    return folder


def small_analysis(**overrides) -> AnalysisConfig:
    """小窗口配置，保持d!·10 ≤ w"""
    values = dict(
        embedding_dim=3,
        window=120,
        surrogate_count=12,
        efficiency_window=40,
        min_returns=200,
        min_track=60,
        min_windows=20,
        master_seed=7,
    )
    values.update(overrides)
    return AnalysisConfig(**values)


@pytest.fixture
def small_settings(tmp_path: Path) -> Settings:
    return Settings(
        analysis=small_analysis(),
        runtime=RuntimeConfig(threads=1, out_dir=str(tmp_path / "output")),
    )


@pytest.fixture
def mixed_dataset(tmp_path: Path) -> Path:
    """
    10个资产：6个噪声资产与4个带结构的资产

    结构资产的收益率来自logistic映射的中心化序列，其E接近0，
    与噪声资产的E_t形态明显不同。
    """
    assets: Dict[str, np.ndarray] = {}
    caps: Dict[str, float] = {}
    for i in range(6):
        symbol = f"N{i}"
        assets[symbol] = noise_returns(300 + 10 * i, seed=100 + i)
        caps[symbol] = 1e6 * (i + 1)
    for i in range(4):
        symbol = f"L{i}"
        assets[symbol] = 0.02 * (logistic_series(320 + 10 * i, x0=0.11 + 0.07 * i) - 0.5)
        caps[symbol] = 5e5 * (i + 1)
    return write_dataset(tmp_path / "data", assets, caps)
