"""
分析流水线

按阶段串联：读取 → 收益率与长度过滤 → (H_t, C_t)与置信带 → E → E_t与动态过滤
→ DTW距离矩阵 → 聚类 → 汇总统计。每个阶段结束时写出本阶段的结果文件，
阶段内的异常带上阶段名称后继续抛出。

使用示例::

    from infoeff.core import load_settings
    from infoeff.report import run_pipeline

    settings = load_settings()
    report = run_pipeline(settings, "data/", "output/")
"""

from concurrent.futures import ThreadPoolExecutor
from contextlib import contextmanager
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Any, Dict, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from infoeff.cluster import ClusterAssignment, Dendrogram, build_dendrogram, optimal_cut
from infoeff.core.config import AnalysisConfig, Settings
from infoeff.core.events import AssetSkipped, StageCompleted, StageStarted, post
from infoeff.core.exceptions import (
    AppException,
    InsufficientDataError,
    PipelineError,
    ValidationError,
)
from infoeff.core.logging import get_logger
from infoeff.efficiency import (
    ComplexityTrack,
    EfficiencyProfile,
    apply_bands,
    efficiency_profile,
    overall_efficiency,
    sliding_complexity,
)
from infoeff.ingest import (
    DatasetLoader,
    IngestReport,
    PriceSeries,
    filter_by_length,
    log_returns,
)
from infoeff.report import writers
from infoeff.report.models import AssetSummary, PipelineReport
from infoeff.report.profiles import group_profiles
from infoeff.report.stats import efficiency_shares, kde, pearson, top_by_market_cap
from infoeff.similarity import DistanceMatrix, distance_matrix

logger = get_logger(__name__)

PathLike = Union[str, Path]

# 各阶段名称，出现在事件与错误详情中
STAGE_INGEST = "ingest"
STAGE_ANALYZE = "analyze"
STAGE_DYNAMICS = "dynamics"
STAGE_SIMILARITY = "similarity"
STAGE_CLUSTER = "cluster"
STAGE_REPORT = "report"

# 输出文件名
TRACKS_FILE = "tracks.csv"
SERIES_FILE = "efficiency_series.csv"
SUMMARY_FILE = "summary.csv"
DIAGNOSTICS_FILE = "ingest_diagnostics.csv"
MATRIX_FILE = "matrix.csv"
ORDERED_MATRIX_FILE = "matrix_ordered.csv"
DENDROGRAM_FILE = "dendrogram.json"
CLUSTERS_FILE = "clusters.csv"
GROUPS_FILE = "groups.csv"
KDE_FILE = "kde.csv"
PROFILES_FILE = "group_profiles.csv"
TOP_FILE = "top_efficiency.csv"
REPORT_FILE = "report.json"


@dataclass
class StageProgress:
    """阶段内处理的条目数，在阶段完成事件中上报"""

    name: str
    items: int = 0


@contextmanager
def stage(name: str) -> Iterator[StageProgress]:
    """
    包装一个流水线阶段

    发布开始与完成事件；应用异常补充stage详情后原样抛出，
    其他异常包装为PipelineError。

    Args:
        name: 阶段名称

    Yields:
        StageProgress: 由阶段内部更新的进度
    """
    progress = StageProgress(name)
    post(StageStarted(name))
    logger.info(f"阶段开始: {name}")
    try:
        yield progress
    except AppException as e:
        e.details.setdefault("stage", name)
        raise
    except Exception as e:
        raise PipelineError(name, f"阶段 {name} 执行失败: {e}") from e
    logger.info(f"阶段完成: {name} ({progress.items} 项)")
    post(StageCompleted(name, progress.items))


@dataclass(frozen=True)
class AssetAnalysis:
    """单个资产的分析结果"""

    summary: AssetSummary
    track: ComplexityTrack


def analyze_asset(
    prices: PriceSeries, config: AnalysisConfig, threads: int = 1
) -> Optional[AssetAnalysis]:
    """
    计算单个资产的带置信带轨迹与总体效率

    Args:
        prices: 价格序列
        config: 分析配置
        threads: 置信带计算的线程数

    Returns:
        Optional[AssetAnalysis]: 窗口数少于min_windows时返回None
    """
    returns = log_returns(prices)
    if len(returns) < config.window:
        post(AssetSkipped(prices.symbol, "收益率序列短于滑动窗口"))
        logger.warning(f"跳过 {prices.symbol}: {len(returns)} 个收益率 < 窗口 {config.window}")
        return None

    track = sliding_complexity(returns, config)
    if len(track) < config.min_windows:
        post(AssetSkipped(prices.symbol, f"窗口数少于 {config.min_windows}"))
        logger.warning(f"跳过 {prices.symbol}: 只有 {len(track)} 个窗口")
        return None

    banded = apply_bands(track, returns, config, threads=threads)
    summary = AssetSummary(
        symbol=prices.symbol,
        E=overall_efficiency(banded),
        n_windows=len(banded),
        mcap_mean=prices.mcap_mean,
    )
    logger.debug(f"{prices.symbol}: E = {summary.E:.4f} ({summary.n_windows} 个窗口)")
    return AssetAnalysis(summary=summary, track=banded)


def analyze_assets(
    series: Sequence[PriceSeries], config: AnalysisConfig, threads: int = 1
) -> List[AssetAnalysis]:
    """
    并行分析全部资产，结果保持输入顺序

    资产多于一个时按资产并行；只有一个资产时把线程用于置信带计算。
    """
    if threads > 1 and len(series) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda s: analyze_asset(s, config), series))
    else:
        results = [analyze_asset(s, config, threads=threads) for s in series]
    return [r for r in results if r is not None]


def dynamic_profiles(
    tracks: Sequence[ComplexityTrack], config: AnalysisConfig
) -> List[EfficiencyProfile]:
    """
    计算时变效率E_t，只保留轨迹长度严格大于min_track且E_t非空的资产
    """
    result = []
    for track in tracks:
        if len(track) <= config.min_track or len(track) < config.efficiency_window:
            post(AssetSkipped(track.symbol, f"轨迹长度不大于 {config.min_track}"))
            logger.info(f"{track.symbol} 不参与动态分析: {len(track)} 个窗口")
            continue
        result.append(efficiency_profile(track, config.efficiency_window))
    return result


def cluster_matrix(
    matrix: DistanceMatrix, settings: Settings
) -> Tuple[Dendrogram, ClusterAssignment]:
    """构建合并树并按轮廓系数选择最优切割"""
    dendrogram = build_dendrogram(matrix, settings.cluster.linkage)
    assignment = optimal_cut(dendrogram, matrix, threads=settings.runtime.threads)
    return dendrogram, assignment


def summarize(
    assets: Sequence[AssetSummary],
    profiles: Mapping[str, np.ndarray],
    assignment: Optional[ClusterAssignment],
    settings: Settings,
) -> PipelineReport:
    """
    汇总统计：E的核密度、E与市值均值的相关、两端占比、市值排名与分组曲线

    样本不足以计算的统计量为None，并记录警告。
    """
    config = settings.report
    values = np.array([a.E for a in assets], dtype=float)
    report = PipelineReport(assets=list(assets), assignment=assignment)

    if values.size >= 2:
        report.kde = kde(values, bandwidth=config.kde_bandwidth, points=config.kde_points)
    else:
        logger.warning(f"资产数 {values.size} 不足，跳过核密度估计")

    caps = np.array([a.mcap_mean for a in assets], dtype=float)
    finite = np.isfinite(caps)
    try:
        report.pearson = pearson(values[finite], caps[finite])
    except ValidationError as e:
        logger.warning(f"无法计算E与市值均值的相关系数: {e}")

    report.shares = efficiency_shares(values, config.low_efficiency, config.high_efficiency)
    report.top = top_by_market_cap(
        [a.symbol for a in assets], caps, values, n=config.top_n
    )
    if assignment is not None:
        report.group_profiles = group_profiles(assignment, profiles)
    return report


def report_payload(report: PipelineReport, settings: Settings) -> Dict[str, Any]:
    """report.json的内容"""
    assignment = report.assignment
    return {
        "n_assets": len(report.assets),
        "seed": settings.analysis.master_seed,
        "kde_bandwidth": None if report.kde is None else report.kde.bandwidth,
        "pearson": None if report.pearson is None else report.pearson._asdict(),
        "shares": None if report.shares is None else report.shares._asdict(),
        "threshold": None if assignment is None else assignment.threshold,
        "mean_silhouette": None if assignment is None else assignment.mean_silhouette,
        "n_groups": None if assignment is None else assignment.n_clusters,
        "group_shares": {str(g): s for g, s in report.group_shares().items()},
    }


def ingest_stage(
    settings: Settings, data_path: PathLike, out: Path
) -> Tuple[IngestReport, List[PriceSeries]]:
    """
    读取数据并按长度过滤

    Raises:
        InsufficientDataError: 没有资产通过长度过滤
    """
    config = settings.analysis
    with stage(STAGE_INGEST) as progress:
        ingest = DatasetLoader().load(data_path)
        writers.write_diagnostics(out / DIAGNOSTICS_FILE, ingest.diagnostics)
        for symbol in ingest.rejected:
            post(AssetSkipped(symbol, "数据校验失败"))
        kept = filter_by_length(ingest.series, config.min_returns)
        if not kept:
            raise InsufficientDataError(
                "no assets passed filter",
                details={"loaded": len(ingest.series), "min_returns": config.min_returns},
            )
        progress.items = len(kept)
    return ingest, kept


def analyze_stage(
    settings: Settings, series: Sequence[PriceSeries], out: Path
) -> List[AssetAnalysis]:
    """计算轨迹、置信带与E，写出tracks.csv和summary.csv"""
    with stage(STAGE_ANALYZE) as progress:
        analyses = analyze_assets(series, settings.analysis, threads=settings.runtime.threads)
        if not analyses:
            raise InsufficientDataError(
                "没有资产得到足够的窗口", details={"assets": len(series)}
            )
        writers.write_tracks(out / TRACKS_FILE, [a.track for a in analyses])
        writers.write_summary(out / SUMMARY_FILE, [a.summary for a in analyses])
        progress.items = len(analyses)
    return analyses


def dynamics_stage(
    settings: Settings, tracks: Sequence[ComplexityTrack], out: Path
) -> List[EfficiencyProfile]:
    """计算E_t，写出efficiency_series.csv"""
    with stage(STAGE_DYNAMICS) as progress:
        profiles = dynamic_profiles(tracks, settings.analysis)
        writers.write_efficiency_series(out / SERIES_FILE, profiles)
        progress.items = len(profiles)
    return profiles


def similarity_stage(
    settings: Settings,
    profiles: Sequence[Tuple[str, Sequence[float]]],
    matrix_path: Path,
) -> DistanceMatrix:
    """计算DTW距离矩阵并写出"""
    with stage(STAGE_SIMILARITY) as progress:
        matrix = distance_matrix(
            profiles, cost=settings.similarity.dtw_cost, threads=settings.runtime.threads
        )
        writers.write_matrix(matrix_path, matrix)
        progress.items = len(matrix)
    return matrix


def cluster_stage(
    settings: Settings,
    matrix: DistanceMatrix,
    clusters_path: Path,
    dendrogram_path: Path,
) -> Tuple[Dendrogram, ClusterAssignment]:
    """
    聚类并写出合并树与分组

    groups.csv与matrix_ordered.csv写在分组文件所在的目录。
    """
    with stage(STAGE_CLUSTER) as progress:
        dendrogram, assignment = cluster_matrix(matrix, settings)
        writers.write_dendrogram(dendrogram_path, dendrogram)
        writers.write_clusters(clusters_path, assignment)
        folder = clusters_path.parent
        writers.write_groups(folder / GROUPS_FILE, assignment)
        writers.write_matrix(
            folder / ORDERED_MATRIX_FILE, matrix.reorder(dendrogram.leaf_order())
        )
        progress.items = assignment.n_clusters
    return dendrogram, assignment


def report_stage(
    settings: Settings,
    assets: Sequence[AssetSummary],
    profiles: Mapping[str, np.ndarray],
    assignment: Optional[ClusterAssignment],
    out: Path,
) -> PipelineReport:
    """汇总统计并写出kde.csv、top_efficiency.csv、group_profiles.csv和report.json"""
    with stage(STAGE_REPORT) as progress:
        if assignment is not None:
            groups = dict(zip(assignment.symbols, assignment.labels.tolist()))
            assets = [replace(a, group=groups.get(a.symbol)) for a in assets]
        report = summarize(assets, profiles, assignment, settings)
        if report.kde is not None:
            writers.write_kde(out / KDE_FILE, report.kde)
        writers.write_top(out / TOP_FILE, report.top)
        writers.write_group_profiles(out / PROFILES_FILE, report.group_profiles)
        writers.write_json(out / REPORT_FILE, report_payload(report, settings))
        progress.items = len(report.assets)
    return report


def run_pipeline(
    settings: Settings,
    data_path: PathLike,
    out_dir: Optional[PathLike] = None,
) -> PipelineReport:
    """
    执行完整流水线并写出全部结果文件

    少于2个资产通过动态过滤时跳过相似度，少于3个时跳过聚类，
    其余阶段照常执行。

    Args:
        settings: 应用设置
        data_path: CSV文件或目录
        out_dir: 输出目录，默认取settings.runtime.out_dir

    Returns:
        PipelineReport: 汇总结果

    Raises:
        InsufficientDataError: 没有资产通过长度过滤
        ValidationError: 输入或配置无效
        PipelineError: 阶段内的意外错误
    """
    out = Path(out_dir if out_dir is not None else settings.runtime.out_dir)
    out.mkdir(parents=True, exist_ok=True)

    ingest, kept = ingest_stage(settings, data_path, out)
    analyses = analyze_stage(settings, kept, out)
    tracks = [a.track for a in analyses]
    profiles = dynamics_stage(settings, tracks, out)

    matrix: Optional[DistanceMatrix] = None
    dendrogram: Optional[Dendrogram] = None
    assignment: Optional[ClusterAssignment] = None

    if len(profiles) >= 2:
        matrix = similarity_stage(settings, [(p.symbol, p.Et) for p in profiles], out / MATRIX_FILE)
    else:
        logger.warning(f"只有 {len(profiles)} 个资产通过动态过滤，跳过相似度计算")

    if matrix is not None and len(matrix) >= 3:
        dendrogram, assignment = cluster_stage(
            settings, matrix, out / CLUSTERS_FILE, out / DENDROGRAM_FILE
        )
    elif matrix is not None:
        logger.warning("聚类至少需要3个资产，跳过聚类")

    report = report_stage(
        settings,
        [a.summary for a in analyses],
        {p.symbol: p.Et for p in profiles},
        assignment,
        out,
    )
    report.tracks = tracks
    report.profiles = profiles
    report.diagnostics = list(ingest.diagnostics)
    report.matrix = matrix
    report.dendrogram = dendrogram

    logger.success(f"流水线完成，结果已写入 {out}")
    return report
