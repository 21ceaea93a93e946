"""
报告模块

串联完整流水线，计算汇总统计并写出可直接绘图的数据表。
"""

from infoeff.report.models import AssetSummary, PipelineReport
from infoeff.report.pipeline import (
    analyze_asset,
    analyze_assets,
    analyze_stage,
    cluster_matrix,
    cluster_stage,
    dynamic_profiles,
    dynamics_stage,
    ingest_stage,
    report_stage,
    run_pipeline,
    similarity_stage,
    stage,
    summarize,
)
from infoeff.report.profiles import GroupProfile, end_aligned_mean, group_profiles, tercile_split
from infoeff.report.stats import (
    EfficiencyShares,
    KdeCurve,
    PearsonResult,
    RankedAsset,
    efficiency_shares,
    kde,
    pearson,
    silverman_bandwidth,
    top_by_market_cap,
)

__all__ = [
    "AssetSummary",
    "EfficiencyShares",
    "GroupProfile",
    "KdeCurve",
    "PearsonResult",
    "PipelineReport",
    "RankedAsset",
    "analyze_asset",
    "analyze_assets",
    "analyze_stage",
    "cluster_matrix",
    "cluster_stage",
    "dynamic_profiles",
    "dynamics_stage",
    "efficiency_shares",
    "end_aligned_mean",
    "group_profiles",
    "ingest_stage",
    "kde",
    "pearson",
    "report_stage",
    "run_pipeline",
    "silverman_bandwidth",
    "similarity_stage",
    "stage",
    "summarize",
    "tercile_split",
    "top_by_market_cap",
]
