"""
数据读取与收益率测试
"""

import numpy as np
import pytest

from conftest import noise_returns, price_series, small_analysis, write_asset_csv
from infoeff.core.exceptions import DataFormatError, ValidationError
from infoeff.ingest import DatasetLoader, filter_by_length, load_dataset, log_returns

HEADER = "symbol,name,date,close,market_cap\n"


def test_log_returns():
    """测试对数收益率与日期对齐"""
    series = price_series(np.array([np.log(2.0), -np.log(2.0)]))
    returns = log_returns(series)
    np.testing.assert_allclose(returns.values, [np.log(2.0), -np.log(2.0)], atol=1e-12)
    assert returns.dates[0] == series.dates[1]
    assert len(returns) == len(series) - 1


def test_log_returns_too_short():
    """测试价格不足2个"""
    series = price_series(np.array([]))
    with pytest.raises(ValidationError):
        log_returns(series)


def test_zero_close_rejects_asset(tmp_path):
    """测试收盘价为0的资产被拒绝并记录行号"""
    path = tmp_path / "prices.csv"
    path.write_text(
        HEADER
        + "BAD,Bad,2017-01-01,1.0,10\n"
        + "BAD,Bad,2017-01-02,0,10\n"
        + "OK,Ok,2017-01-01,2.0,\n"
        + "OK,Ok,2017-01-02,2.5,\n",
        encoding="utf-8",
    )
    report = DatasetLoader().load(path)
    assert [s.symbol for s in report.series] == ["OK"]
    assert report.rejected == ["BAD"]
    row_level = [d for d in report.diagnostics if d.row == 3]
    assert row_level and row_level[0].column == "close"
    assert np.isnan(report.series[0].mcap_mean)


def test_duplicate_date_rejects_asset(tmp_path):
    """测试重复日期"""
    path = tmp_path / "prices.csv"
    path.write_text(
        HEADER + "A,A,2017-01-01,1.0,1\nA,A,2017-01-01,1.1,1\nA,A,2017-01-02,1.2,1\n",
        encoding="utf-8",
    )
    report = DatasetLoader().load(path)
    assert report.series == []
    assert report.rejected == ["A"]


def test_gaps_are_not_filled(tmp_path):
    """测试日期缺口不做插补"""
    path = tmp_path / "prices.csv"
    path.write_text(
        HEADER + "A,A,2017-01-01,1.0,1\nA,A,2017-01-05,2.0,1\nA,A,2017-01-06,4.0,1\n",
        encoding="utf-8",
    )
    (series,) = load_dataset(path)
    returns = log_returns(series)
    np.testing.assert_allclose(returns.values, [np.log(2.0), np.log(2.0)])


def test_missing_header_column(tmp_path):
    """测试表头缺列"""
    path = tmp_path / "prices.csv"
    path.write_text("symbol,date,close\nA,2017-01-01,1.0\n", encoding="utf-8")
    with pytest.raises(DataFormatError):
        load_dataset(path)


def test_missing_path(tmp_path):
    """测试路径不存在"""
    with pytest.raises(ValidationError):
        load_dataset(tmp_path / "nothing")


def test_duplicate_symbol_across_files(tmp_path):
    """测试同一代码出现在两个文件中"""
    write_asset_csv(tmp_path / "a.csv", price_series(noise_returns(5), "X"))
    write_asset_csv(tmp_path / "b.csv", price_series(noise_returns(5, seed=1), "X"))
    report = DatasetLoader().load(tmp_path)
    assert len(report.series) == 1
    assert report.rejected == ["X"]


def test_round_trip_and_idempotence(tmp_path):
    """测试写出后再读取得到相同序列，重复读取结果一致"""
    original = price_series(noise_returns(50, seed=3), "RT", market_cap=123.5)
    write_asset_csv(tmp_path / "rt.csv", original)
    first = load_dataset(tmp_path)
    second = load_dataset(tmp_path)
    (loaded,) = first
    np.testing.assert_array_equal(loaded.dates, original.dates)
    np.testing.assert_allclose(loaded.close, original.close, rtol=1e-12)
    assert loaded.mcap_mean == pytest.approx(123.5)
    np.testing.assert_array_equal(second[0].close, loaded.close)


def test_filter_boundaries():
    """测试长度过滤的严格大于边界"""
    exact = price_series(noise_returns(600), "EXACT")
    above = price_series(noise_returns(601), "ABOVE")
    kept = filter_by_length([exact, above], 600)
    assert [s.symbol for s in kept] == ["ABOVE"]
    assert filter_by_length([exact], 600) == []


def test_log_returns_rebuild_prices():
    """测试由首个价格和累积收益率还原全部价格"""
    series = price_series(noise_returns(300, seed=21), start_price=37.5)
    returns = log_returns(series)
    rebuilt = series.close[0] * np.exp(np.cumsum(returns.values))
    np.testing.assert_allclose(rebuilt, series.close[1:], rtol=1e-9, atol=0)


def test_filter_is_idempotent():
    """测试重复过滤结果不变"""
    series = [price_series(noise_returns(n, seed=n), f"S{n}") for n in (100, 199, 200, 201, 350)]
    once = filter_by_length(series, 200)
    twice = filter_by_length(once, 200)
    assert [s.symbol for s in once] == ["S201", "S350"]
    assert [s.symbol for s in twice] == [s.symbol for s in once]


def test_load_dataset_with_config(tmp_path):
    """测试给出分析配置时按min_returns过滤"""
    write_asset_csv(tmp_path / "short.csv", price_series(noise_returns(150), "SHORT"))
    write_asset_csv(tmp_path / "long.csv", price_series(noise_returns(250, seed=2), "LONG"))
    assert [s.symbol for s in load_dataset(tmp_path)] == ["LONG", "SHORT"]
    config = small_analysis(min_returns=200)
    assert [s.symbol for s in load_dataset(tmp_path, config)] == ["LONG"]
