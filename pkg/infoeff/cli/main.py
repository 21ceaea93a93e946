"""
命令行工具主入口模块

提供命令行工具的主入口，处理命令行参数。各子命令对应流水线的一个阶段，
pipeline子命令依次执行全部阶段。退出码：0成功，2校验错误，3数据不足，4内部错误。
"""

import functools
import sys
from pathlib import Path
from typing import Any, Callable, Dict, Optional

import click

from infoeff import __version__
from infoeff.cli.utils import build_settings, disable_progress, enable_progress, read_window
from infoeff.core.config import BandMode, DTWCost, LogLevel, Settings
from infoeff.core.exceptions import ValidationError, handle_app_exception
from infoeff.ordinal import (
    ordinal_distribution,
    permutation_entropy,
    statistical_complexity,
)
from infoeff.report import pipeline
from infoeff.report.writers import (
    read_clusters,
    read_efficiency_series,
    read_matrix,
    read_summary,
    read_tracks,
)
from infoeff.utils import format_float


def analysis_options(func: Callable[..., Any]) -> Callable[..., Any]:
    """分析参数，未指定时使用配置文件或默认值"""
    options = [
        click.option("-d", "--embedding-dim", type=int, default=None, help="嵌入维度，默认4"),
        click.option("-w", "--window", type=int, default=None, help="滑动窗口长度，默认500"),
        click.option("--surrogates", "surrogate_count", type=int, default=None, help="打乱次数，默认30"),
        click.option("--confidence", type=float, default=None, help="置信水平，默认0.95"),
        click.option(
            "--band-mode",
            type=click.Choice([m.value for m in BandMode]),
            default=None,
            help="置信带估计方式",
        ),
        click.option("--min-returns", type=int, default=None, help="收益率数量下限，默认600"),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def dynamics_options(func: Callable[..., Any]) -> Callable[..., Any]:
    """时变效率参数"""
    func = click.option(
        "--min-track", type=int, default=None, help="参与动态分析的轨迹长度下限，默认460"
    )(func)
    return click.option(
        "--efficiency-window", type=int, default=None, help="E_t的滑动窗口，默认360"
    )(func)



def run_command(func: Callable[..., None]) -> Callable[..., None]:
    """执行子命令，把异常转换为退出码"""

    @functools.wraps(func)
    def wrapper(*args: Any, **kwargs: Any) -> None:
        enable_progress()
        try:
            func(*args, **kwargs)
        except Exception as e:
            click.echo(f"错误: {e}", err=True)
            sys.exit(handle_app_exception(e))
        finally:
            disable_progress()

    return wrapper


def load_command_settings(ctx: click.Context, **overrides: Dict[str, Any]) -> Settings:
    """按全局选项加载设置，并叠加子命令参数"""
    obj = ctx.obj or {}
    merged: Dict[str, Dict[str, Any]] = {
        "analysis": {"master_seed": obj.get("master_seed")},
        "runtime": {"threads": obj.get("threads"), "out_dir": obj.get("out_dir")},
    }
    for section, values in overrides.items():
        merged[section] = {**merged.get(section, {}), **values}
    return build_settings(
        obj.get("config_path"), obj.get("env_file"), obj.get("log_level"), merged
    )


def _data_path(ctx: click.Context) -> str:
    data = (ctx.obj or {}).get("data")
    if not data:
        raise ValidationError("缺少数据路径，请在子命令前指定 --data")
    return data


def _out_dir(settings: Settings) -> Path:
    out = Path(settings.runtime.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    return out


@click.group()
@click.version_option(version=__version__)
@click.option("--config", "config_path", default=None, help="配置文件路径（YAML/JSON/TOML）")
@click.option("--env-file", default=None, help=".env文件路径")
@click.option(
    "--log-level",
    type=click.Choice([level.value for level in LogLevel], case_sensitive=False),
    default=None,
    help="日志级别",
)
@click.option("--data", default=None, help="CSV文件或目录")
@click.option("--out-dir", default=None, help="输出目录，默认output")
@click.option("--seed", "master_seed", type=int, default=None, help="随机数主种子，默认42")
@click.option("--threads", type=int, default=None, help="并行线程数，默认1")
@click.pass_context
def main(
    ctx: click.Context,
    config_path: Optional[str],
    env_file: Optional[str],
    log_level: Optional[str],
    data: Optional[str],
    out_dir: Optional[str],
    master_seed: Optional[int],
    threads: Optional[int],
) -> None:
    """金融时间序列信息效率分析命令行工具"""
    ctx.ensure_object(dict)
    ctx.obj["config_path"] = config_path
    ctx.obj["env_file"] = env_file
    ctx.obj["log_level"] = log_level.upper() if log_level else None
    ctx.obj["data"] = data
    ctx.obj["out_dir"] = out_dir
    ctx.obj["master_seed"] = master_seed
    ctx.obj["threads"] = threads


@main.command()
@analysis_options
@click.pass_context
@run_command
def analyze(ctx: click.Context, **analysis: Any) -> None:
    """计算(H_t, C_t)轨迹、置信带和总体效率E"""
    data = _data_path(ctx)
    settings = load_command_settings(ctx, analysis=analysis)
    out = _out_dir(settings)
    _, kept = pipeline.ingest_stage(settings, data, out)
    analyses = pipeline.analyze_stage(settings, kept, out)
    for item in analyses:
        click.echo(f"{item.summary.symbol}\tE={format_float(item.summary.E)}")


@main.command()
@click.option("--tracks", "tracks_path", default=None, help="轨迹文件，默认<out-dir>/tracks.csv")
@dynamics_options
@click.pass_context
@run_command
def dynamics(
    ctx: click.Context,
    tracks_path: Optional[str],
    efficiency_window: Optional[int],
    min_track: Optional[int],
) -> None:
    """由轨迹文件计算时变效率E_t"""
    settings = load_command_settings(
        ctx,
        analysis={"efficiency_window": efficiency_window, "min_track": min_track},
    )
    out = _out_dir(settings)
    tracks = read_tracks(Path(tracks_path) if tracks_path else out / pipeline.TRACKS_FILE)
    profiles = pipeline.dynamics_stage(settings, tracks, out)
    click.echo(f"{len(profiles)}/{len(tracks)} 个资产得到E_t序列")


@main.command()
@click.option("--profiles", "profiles_path", required=True, help="E_t文件 efficiency_series.csv")
@click.option("--out", "out_path", default="matrix.csv", help="距离矩阵输出文件")
@click.option(
    "--dtw-cost", type=click.Choice([c.value for c in DTWCost]), default=None, help="DTW局部代价"
)
@click.pass_context
@run_command
def similarity(
    ctx: click.Context,
    profiles_path: str,
    out_path: str,
    dtw_cost: Optional[str],
) -> None:
    """计算E_t序列之间的DTW距离矩阵"""
    settings = load_command_settings(ctx, similarity={"dtw_cost": dtw_cost})
    profiles = read_efficiency_series(profiles_path)
    matrix = pipeline.similarity_stage(settings, profiles, Path(out_path))
    click.echo(f"已写出 {len(matrix)}×{len(matrix)} 距离矩阵: {out_path}")


@main.command()
@click.option("--matrix", "matrix_path", required=True, help="距离矩阵文件")
@click.option("--out", "out_path", default="clusters.csv", help="分组输出文件")
@click.option("--dendrogram", "dendrogram_path", default="dendrogram.json", help="合并树输出文件")
@click.pass_context
@run_command
def cluster(
    ctx: click.Context,
    matrix_path: str,
    out_path: str,
    dendrogram_path: str,
) -> None:
    """平均连接聚类并按轮廓系数选择最优切割"""
    settings = load_command_settings(ctx)
    matrix = read_matrix(matrix_path)
    _, assignment = pipeline.cluster_stage(
        settings, matrix, Path(out_path), Path(dendrogram_path)
    )
    click.echo(
        f"阈值 {format_float(assignment.threshold)}: {assignment.n_clusters} 组, "
        f"平均轮廓系数 {format_float(assignment.mean_silhouette)}"
    )


@main.command()
@click.option("--summary", "summary_path", required=True, help="汇总文件 summary.csv")
@click.option("--profiles", "profiles_path", default=None, help="E_t文件 efficiency_series.csv")
@click.option("--clusters", "clusters_path", default=None, help="分组文件 clusters.csv")
@click.option("--kde-bandwidth", type=float, default=None, help="KDE带宽，默认Silverman规则")
@click.option("--top-n", type=int, default=None, help="市值排名表的行数，默认50")
@click.pass_context
@run_command
def report(
    ctx: click.Context,
    summary_path: str,
    profiles_path: Optional[str],
    clusters_path: Optional[str],
    kde_bandwidth: Optional[float],
    top_n: Optional[int],
) -> None:
    """核密度估计、Pearson相关、市值排名与分组E_t曲线"""
    settings = load_command_settings(
        ctx,
        report={"kde_bandwidth": kde_bandwidth, "top_n": top_n},
    )
    assets = read_summary(summary_path)
    profiles = dict(read_efficiency_series(profiles_path)) if profiles_path else {}
    assignment = read_clusters(clusters_path) if clusters_path else None
    result = pipeline.report_stage(settings, assets, profiles, assignment, _out_dir(settings))
    if result.pearson is not None:
        click.echo(f"Pearson r={format_float(result.pearson.r)} p={format_float(result.pearson.p)}")


@main.command(name="pipeline")
@analysis_options
@dynamics_options
@click.option(
    "--dtw-cost", type=click.Choice([c.value for c in DTWCost]), default=None, help="DTW局部代价"
)
@click.option("--kde-bandwidth", type=float, default=None, help="KDE带宽，默认Silverman规则")
@click.pass_context
@run_command
def run_all(
    ctx: click.Context,
    efficiency_window: Optional[int],
    min_track: Optional[int],
    dtw_cost: Optional[str],
    kde_bandwidth: Optional[float],
    **analysis: Any,
) -> None:
    """依次执行全部阶段"""
    data = _data_path(ctx)
    settings = load_command_settings(
        ctx,
        analysis={**analysis, "efficiency_window": efficiency_window, "min_track": min_track},
        similarity={"dtw_cost": dtw_cost},
        report={"kde_bandwidth": kde_bandwidth},
    )
    result = pipeline.run_pipeline(settings, data)
    groups = "-" if result.assignment is None else str(result.assignment.n_clusters)
    click.echo(f"{len(result.assets)} 个资产, {groups} 组, 结果目录 {settings.runtime.out_dir}")


@main.command()
@click.option("--window", "window_path", required=True, help="单列数值CSV")
@click.option("-d", "--embedding-dim", type=int, default=4, help="嵌入维度")
@click.pass_context
@run_command
def ordinal(ctx: click.Context, window_path: str, embedding_dim: int) -> None:
    """打印单个窗口的排列熵、统计复杂度和模式分布"""
    load_command_settings(ctx)
    dist = ordinal_distribution(read_window(Path(window_path)), embedding_dim)
    h = permutation_entropy(dist)
    c = statistical_complexity(dist)
    click.echo(f"H\t{format_float(h)}")
    click.echo(f"C\t{format_float(c)}")
    click.echo(f"plane\t({format_float(h)}, {format_float(c)})")
    for pattern, probability in dist.as_dict().items():
        click.echo(f"{''.join(str(i) for i in pattern)}\t{format_float(probability)}")


if __name__ == "__main__":
    main()
