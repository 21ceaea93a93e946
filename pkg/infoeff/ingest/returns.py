"""
对数收益率与长度过滤
"""

from typing import List

import numpy as np

from infoeff.core.exceptions import ValidationError
from infoeff.core.logging import get_logger
from infoeff.ingest.models import PriceSeries, ReturnSeries

logger = get_logger(__name__)


def log_returns(prices: PriceSeries) -> ReturnSeries:
    """
    计算对数收益率 R_t = ln P_t − ln P_{t−1}

    缺失的日历日不做插补，收益率在相邻的两条可用记录之间计算，
    日期取每对记录中较晚的一天。

    Args:
        prices: 价格序列

    Returns:
        ReturnSeries: 长度为len(prices) − 1的收益率序列

    Raises:
        ValidationError: 序列长度小于2或存在非正价格
    """
    if len(prices) < 2:
        raise ValidationError("计算收益率至少需要2个价格", details={"symbol": prices.symbol})
    if not np.all(prices.close > 0):
        raise ValidationError("收盘价必须为正", details={"symbol": prices.symbol})

    values = np.diff(np.log(prices.close))
    return ReturnSeries(symbol=prices.symbol, dates=prices.dates[1:], values=values)


def filter_by_length(series: List[PriceSeries], min_returns: int) -> List[PriceSeries]:
    """
    保留收益率数量严格大于min_returns的资产，保持原有顺序

    Args:
        series: 资产序列列表
        min_returns: 收益率数量下限

    Returns:
        List[PriceSeries]: 过滤后的列表，可以为空
    """
    if min_returns < 1:
        raise ValidationError("min_returns至少为1", details={"min_returns": min_returns})

    kept = [s for s in series if s.n_returns > min_returns]
    logger.info(f"长度过滤 (> {min_returns} 个收益率): 保留 {len(kept)}/{len(series)}")
    return kept
