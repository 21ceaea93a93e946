"""
流水线测试
"""

import json

import numpy as np
import pytest

from conftest import noise_returns, price_series, small_analysis, write_dataset
from infoeff.core.events import AssetSkipped, StageCompleted, register, unregister
from infoeff.core.exceptions import InsufficientDataError, PipelineError, ValidationError
from infoeff.efficiency import efficiency_profile
from infoeff.report import run_pipeline, stage
from infoeff.report.pipeline import (
    CLUSTERS_FILE,
    DENDROGRAM_FILE,
    GROUPS_FILE,
    KDE_FILE,
    MATRIX_FILE,
    ORDERED_MATRIX_FILE,
    PROFILES_FILE,
    REPORT_FILE,
    SERIES_FILE,
    SUMMARY_FILE,
    TOP_FILE,
    TRACKS_FILE,
    analyze_asset,
    dynamic_profiles,
)

ALL_FILES = (
    TRACKS_FILE,
    SUMMARY_FILE,
    SERIES_FILE,
    MATRIX_FILE,
    ORDERED_MATRIX_FILE,
    DENDROGRAM_FILE,
    CLUSTERS_FILE,
    GROUPS_FILE,
    KDE_FILE,
    PROFILES_FILE,
    TOP_FILE,
    REPORT_FILE,
)


def with_threads(settings, threads):
    return settings.with_overrides("runtime", threads=threads)


def test_full_run(small_settings, mixed_dataset, tmp_path):
    """测试完整流水线写出全部文件，分组不混合噪声与结构资产"""
    out = tmp_path / "run"
    report = run_pipeline(small_settings, mixed_dataset, out)

    for name in ALL_FILES:
        assert (out / name).exists(), name
    assert not list(out.glob("*.partial"))

    assert len(report.assets) == 10
    e = {a.symbol: a.E for a in report.assets}
    assert min(e[f"N{i}"] for i in range(6)) > max(e[f"L{i}"] for i in range(4))

    groups = report.groups()
    assert set(groups) == set(e)
    for label in set(groups.values()):
        kinds = {s[0] for s, g in groups.items() if g == label}
        assert len(kinds) == 1
    assert sum(report.group_shares().values()) == pytest.approx(1.0)

    payload = json.loads((out / REPORT_FILE).read_text(encoding="utf-8"))
    assert payload["n_assets"] == 10
    assert payload["seed"] == small_settings.analysis.master_seed
    assert payload["n_groups"] == report.assignment.n_clusters
    assert -1.0 <= payload["pearson"]["r"] <= 1.0


def test_deterministic_outputs(small_settings, mixed_dataset, tmp_path):
    """测试相同配置与数据两次运行得到逐字节相同的输出"""
    run_pipeline(small_settings, mixed_dataset, tmp_path / "a")
    run_pipeline(small_settings, mixed_dataset, tmp_path / "b")
    for name in ALL_FILES:
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes(), name


def test_threads_do_not_change_outputs(small_settings, mixed_dataset, tmp_path):
    """测试线程数不影响输出"""
    run_pipeline(with_threads(small_settings, 1), mixed_dataset, tmp_path / "one")
    run_pipeline(with_threads(small_settings, 8), mixed_dataset, tmp_path / "eight")
    for name in ALL_FILES:
        one = (tmp_path / "one" / name).read_bytes()
        assert one == (tmp_path / "eight" / name).read_bytes(), name


def test_no_assets_passed_filter(small_settings, tmp_path):
    """测试全部资产短于min_returns时报错并带上阶段名称"""
    data = write_dataset(
        tmp_path / "short",
        {"A": noise_returns(150), "B": noise_returns(200, seed=1)},
        {"A": 1.0, "B": 2.0},
    )
    with pytest.raises(InsufficientDataError) as info:
        run_pipeline(small_settings, data, tmp_path / "out")
    assert "no assets passed filter" in str(info.value)
    assert info.value.details["stage"] == "ingest"
    assert info.value.exit_code == 3


def test_missing_data_path(small_settings, tmp_path):
    """测试数据路径不存在"""
    with pytest.raises(ValidationError) as info:
        run_pipeline(small_settings, tmp_path / "missing", tmp_path / "out")
    assert info.value.details["stage"] == "ingest"


def test_few_profiles_skip_clustering(small_settings, tmp_path):
    """测试只有两个资产时计算距离矩阵但跳过聚类"""
    data = write_dataset(
        tmp_path / "two",
        {"A": noise_returns(260, seed=3), "B": noise_returns(280, seed=4)},
        {"A": 1.0, "B": 2.0},
    )
    out = tmp_path / "out"
    report = run_pipeline(small_settings, data, out)
    assert report.matrix is not None and len(report.matrix) == 2
    assert report.assignment is None
    assert not (out / CLUSTERS_FILE).exists()
    payload = json.loads((out / REPORT_FILE).read_text(encoding="utf-8"))
    assert payload["n_groups"] is None
    assert payload["pearson"] is None


def test_short_track_is_skipped(small_settings, tmp_path):
    """测试窗口数不足的资产被跳过并发布事件"""
    # 205个收益率 → 86个窗口，通过长度过滤；min_windows提高到100后被跳过
    settings = small_settings.with_overrides("analysis", min_windows=100)
    data = write_dataset(
        tmp_path / "d",
        {"A": noise_returns(205, seed=5), "B": noise_returns(400, seed=6)},
        {},
    )
    skipped = []

    def on_skip(event):
        skipped.append(event.symbol)

    register(AssetSkipped, on_skip)
    try:
        report = run_pipeline(settings, data, tmp_path / "out")
    finally:
        unregister(AssetSkipped, on_skip)
    assert "A" in skipped
    assert [a.symbol for a in report.assets] == ["B"]
    assert report.kde is None
    assert np.isnan(report.assets[0].mcap_mean)


def test_stage_events(small_settings, mixed_dataset, tmp_path):
    """测试每个阶段完成时发布事件"""
    completed = []

    def on_completed(event):
        completed.append((event.stage, event.items))

    register(StageCompleted, on_completed)
    try:
        run_pipeline(small_settings, mixed_dataset, tmp_path / "out")
    finally:
        unregister(StageCompleted, on_completed)
    assert [name for name, _ in completed] == [
        "ingest",
        "analyze",
        "dynamics",
        "similarity",
        "cluster",
        "report",
    ]
    assert dict(completed)["ingest"] == 10


def test_stage_wraps_unexpected_errors():
    """测试阶段内的意外异常包装为PipelineError"""
    with pytest.raises(PipelineError) as info:
        with stage("similarity"):
            raise RuntimeError("boom")
    assert info.value.stage == "similarity"
    assert info.value.exit_code == 4
    assert isinstance(info.value.__cause__, RuntimeError)


def test_dynamic_profiles_follow_efficiency_profile():
    """测试动态过滤保留的资产与efficiency_profile结果一致"""
    config = small_analysis()
    long_asset = analyze_asset(price_series(noise_returns(250, seed=31), "LONG"), config)
    short_asset = analyze_asset(price_series(noise_returns(170, seed=32), "SHORT"), config)
    profiles = dynamic_profiles([long_asset.track, short_asset.track], config)
    assert [p.symbol for p in profiles] == ["LONG"]
    expected = efficiency_profile(long_asset.track, config.efficiency_window)
    assert profiles[0].E == expected.E
    np.testing.assert_array_equal(profiles[0].Et, expected.Et)
    np.testing.assert_array_equal(profiles[0].Et_centers, expected.Et_centers)
