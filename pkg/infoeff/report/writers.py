"""
结果文件读写

所有输出为UTF-8、\\n换行的CSV/JSON；浮点数6位有效数字。文件先写入
``<name>.partial``，成功后再改名，失败时保留.partial文件便于排查。
"""

import json
import os
from contextlib import contextmanager
from dataclasses import replace
from pathlib import Path
from typing import Iterator, List, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from infoeff.cluster.linkage import Dendrogram
from infoeff.cluster.silhouette import ClusterAssignment
from infoeff.core.exceptions import DataFormatError, ValidationError
from infoeff.efficiency.models import ComplexityTrack, EfficiencyProfile
from infoeff.ingest.models import RowDiagnostic
from infoeff.report.models import AssetSummary
from infoeff.report.profiles import GroupProfile
from infoeff.report.stats import KdeCurve, RankedAsset
from infoeff.similarity.matrix import DistanceMatrix
from infoeff.utils import format_bool, format_date, format_float, json_dumps, parse_bool

PathLike = Union[str, Path]
PARTIAL_SUFFIX = ".partial"

TRACK_COLUMNS = ("symbol", "center_date", "H", "C", "H_lo", "H_hi", "C_lo", "C_hi", "inside")
SERIES_COLUMNS = ("symbol", "center_date", "Et")
SUMMARY_COLUMNS = ("symbol", "E", "n_windows", "mcap_mean")
CLUSTER_COLUMNS = ("symbol", "group", "threshold", "s_i")


@contextmanager
def atomic_output(path: PathLike) -> Iterator[Path]:
    """
    先写入.partial临时文件，退出时改名为目标文件

    Args:
        path: 目标文件路径

    Yields:
        Path: 实际写入的临时路径
    """
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    partial = target.with_name(target.name + PARTIAL_SUFFIX)
    yield partial
    os.replace(partial, target)


def _write_rows(path: PathLike, columns: Sequence[str], rows: List[List[str]]) -> Path:
    frame = pd.DataFrame(rows, columns=list(columns), dtype=str)
    with atomic_output(path) as partial:
        frame.to_csv(partial, index=False, encoding="utf-8", lineterminator="\n")
    return Path(path)


def _read_frame(path: PathLike, columns: Sequence[str]) -> pd.DataFrame:
    file = Path(path)
    if not file.exists():
        raise ValidationError("输入文件不存在", details={"path": str(file)})
    try:
        frame = pd.read_csv(file, dtype=str, keep_default_na=False, encoding="utf-8")
    except (pd.errors.ParserError, pd.errors.EmptyDataError) as e:
        raise DataFormatError(f"无法解析CSV文件: {e}", details={"file": file.name}) from e
    missing = [c for c in columns if c not in frame.columns]
    if missing:
        raise DataFormatError(
            "CSV表头缺少必需的列", details={"file": file.name, "missing": ",".join(missing)}
        )
    return frame


def _floats(frame: pd.DataFrame, column: str, file: PathLike) -> np.ndarray:
    values = pd.to_numeric(frame[column].replace("", np.nan), errors="coerce")
    bad = values.isna() & (frame[column] != "")
    if bad.any():
        row = int(np.flatnonzero(bad.to_numpy())[0]) + 2
        raise DataFormatError(
            "数值无法解析", details={"file": Path(file).name, "row": row, "column": column}
        )
    return values.to_numpy(dtype=float)


def write_tracks(path: PathLike, tracks: Sequence[ComplexityTrack]) -> Path:
    """写出 symbol,center_date,H,C,H_lo,H_hi,C_lo,C_hi,inside"""
    rows = []
    for track in tracks:
        if not track.has_bands:
            raise ValidationError("轨迹尚未施加置信带", details={"symbol": track.symbol})
        for i in range(len(track)):
            rows.append(
                [
                    track.symbol,
                    format_date(track.centers[i]),
                    format_float(track.H[i]),
                    format_float(track.C[i]),
                    format_float(track.h_lo[i]),  # type: ignore[index]
                    format_float(track.h_hi[i]),  # type: ignore[index]
                    format_float(track.c_lo[i]),  # type: ignore[index]
                    format_float(track.c_hi[i]),  # type: ignore[index]
                    format_bool(track.inside[i]),  # type: ignore[index]
                ]
            )
    return _write_rows(path, TRACK_COLUMNS, rows)


def read_tracks(path: PathLike) -> List[ComplexityTrack]:
    """
    读取轨迹文件

    文件中不含窗口长度，恢复出的轨迹window为0，center_index为0…n−1。
    """
    frame = _read_frame(path, TRACK_COLUMNS)
    numeric = {c: _floats(frame, c, path) for c in TRACK_COLUMNS[2:8]}
    try:
        inside = np.array([parse_bool(v) for v in frame["inside"]], dtype=bool)
        dates = pd.to_datetime(frame["center_date"], format="%Y-%m-%d").to_numpy()
    except ValueError as e:
        raise DataFormatError(f"轨迹文件格式错误: {e}", details={"file": Path(path).name}) from e
    dates = dates.astype("datetime64[D]")

    tracks = []
    symbols = frame["symbol"].to_numpy()
    for symbol in pd.unique(symbols):
        idx = np.flatnonzero(symbols == symbol)
        base = ComplexityTrack(
            symbol=str(symbol),
            window=0,
            center_index=np.arange(idx.size),
            centers=dates[idx],
            H=numeric["H"][idx],
            C=numeric["C"][idx],
        )
        banded = base.with_bands(
            numeric["H_lo"][idx], numeric["H_hi"][idx], numeric["C_lo"][idx], numeric["C_hi"][idx]
        )
        # 以文件中的inside为准
        tracks.append(replace(banded, inside=inside[idx]))
    return tracks


def write_efficiency_series(path: PathLike, profiles: Sequence[EfficiencyProfile]) -> Path:
    """写出 symbol,center_date,Et"""
    rows = [
        [p.symbol, format_date(date), format_float(value)]
        for p in profiles
        for date, value in zip(p.Et_centers, p.Et)
    ]
    return _write_rows(path, SERIES_COLUMNS, rows)


def read_efficiency_series(path: PathLike) -> List[Tuple[str, np.ndarray]]:
    """读取E_t文件，返回(代码, E_t)列表，保持文件中首次出现的顺序"""
    frame = _read_frame(path, SERIES_COLUMNS)
    values = _floats(frame, "Et", path)
    symbols = frame["symbol"].to_numpy()
    return [(str(s), values[symbols == s]) for s in pd.unique(symbols)]


def write_summary(path: PathLike, assets: Sequence[AssetSummary]) -> Path:
    """写出 symbol,E,n_windows,mcap_mean"""
    rows = [
        [a.symbol, format_float(a.E), str(a.n_windows), format_float(a.mcap_mean)]
        for a in assets
    ]
    return _write_rows(path, SUMMARY_COLUMNS, rows)


def read_summary(path: PathLike) -> List[AssetSummary]:
    """读取汇总文件"""
    frame = _read_frame(path, SUMMARY_COLUMNS)
    e = _floats(frame, "E", path)
    n = _floats(frame, "n_windows", path)
    mcap = _floats(frame, "mcap_mean", path)
    return [
        AssetSummary(symbol=str(s), E=float(e[i]), n_windows=int(n[i]), mcap_mean=float(mcap[i]))
        for i, s in enumerate(frame["symbol"])
    ]


def write_diagnostics(path: PathLike, diagnostics: Sequence[RowDiagnostic]) -> Path:
    """写出 file,row,column,message"""
    rows = [
        [d.file, "" if d.row is None else str(d.row), d.column or "", d.message]
        for d in diagnostics
    ]
    return _write_rows(path, ("file", "row", "column", "message"), rows)


def write_matrix(path: PathLike, matrix: DistanceMatrix) -> Path:
    """写出距离矩阵，首行首列为资产代码"""
    rows = [
        [label, *(format_float(v) for v in matrix.values[i])]
        for i, label in enumerate(matrix.labels)
    ]
    return _write_rows(path, ("symbol", *matrix.labels), rows)


def read_matrix(path: PathLike) -> DistanceMatrix:
    """读取距离矩阵文件"""
    frame = _read_frame(path, ("symbol",))
    labels = tuple(str(s) for s in frame["symbol"])
    if tuple(frame.columns[1:]) != labels:
        raise DataFormatError("矩阵的行列标签不一致", details={"file": Path(path).name})
    values = np.column_stack([_floats(frame, c, path) for c in frame.columns[1:]])
    return DistanceMatrix(labels=labels, values=values.reshape(len(labels), len(labels)))


def write_dendrogram(path: PathLike, dendrogram: Dendrogram) -> Path:
    """写出合并树JSON：{left, right, height, size}数组"""
    payload = [
        {"left": m.left, "right": m.right, "height": float(format_float(m.height)), "size": m.size}
        for m in dendrogram.merges
    ]
    with atomic_output(path) as partial:
        partial.write_text(json_dumps(payload, indent=2) + "\n", encoding="utf-8")
    return Path(path)


def write_clusters(path: PathLike, assignment: ClusterAssignment) -> Path:
    """写出 symbol,group,threshold,s_i"""
    threshold = format_float(assignment.threshold)
    rows = [
        [symbol, str(int(group)), threshold, format_float(s)]
        for symbol, group, s in zip(assignment.symbols, assignment.labels, assignment.per_item_s)
    ]
    return _write_rows(path, CLUSTER_COLUMNS, rows)


def read_clusters(path: PathLike) -> ClusterAssignment:
    """
    读取分组文件

    文件只保存s_i，恢复出的a_i、b_i为NaN；平均轮廓系数由s_i重新求得。
    """
    frame = _read_frame(path, CLUSTER_COLUMNS)
    if frame.empty:
        raise DataFormatError("分组文件没有数据行", details={"file": Path(path).name})
    groups = _floats(frame, "group", path)
    if np.any(groups < 0) or np.any(groups != np.floor(groups)):
        raise DataFormatError("组号必须为非负整数", details={"file": Path(path).name})
    s = _floats(frame, "s_i", path)
    missing = np.full(s.size, np.nan)
    return ClusterAssignment(
        symbols=tuple(str(v) for v in frame["symbol"]),
        labels=groups.astype(np.int64),
        threshold=float(_floats(frame, "threshold", path)[0]),
        per_item_a=missing,
        per_item_b=missing.copy(),
        per_item_s=s,
        mean_silhouette=float(np.mean(s)),
    )


def write_groups(path: PathLike, assignment: ClusterAssignment) -> Path:
    """写出 group,size,share"""
    counts = np.bincount(assignment.labels)
    shares = assignment.shares()
    rows = [[str(g), str(int(c)), format_float(s)] for g, (c, s) in enumerate(zip(counts, shares))]
    return _write_rows(path, ("group", "size", "share"), rows)


def write_kde(path: PathLike, curve: KdeCurve) -> Path:
    """写出 x,density"""
    rows = [[format_float(x), format_float(y)] for x, y in zip(curve.grid, curve.density)]
    return _write_rows(path, ("x", "density"), rows)


def write_group_profiles(path: PathLike, profiles: Sequence[GroupProfile]) -> Path:
    """写出 group,bucket,flagged,position,Et；position从序列末端倒数，0为最后一个观测"""
    rows = []
    for profile in profiles:
        n = profile.curve.size
        for i, value in enumerate(profile.curve):
            rows.append(
                [
                    str(profile.group),
                    profile.bucket,
                    format_bool(profile.flagged),
                    str(n - 1 - i),
                    format_float(value),
                ]
            )
    return _write_rows(path, ("group", "bucket", "flagged", "position", "Et"), rows)


def write_top(path: PathLike, ranking: Sequence[RankedAsset]) -> Path:
    """写出 rank,symbol,mcap_mean,E"""
    rows = [[str(r.rank), r.symbol, format_float(r.mcap_mean), format_float(r.E)] for r in ranking]
    return _write_rows(path, ("rank", "symbol", "mcap_mean", "E"), rows)


def write_json(path: PathLike, payload: dict) -> Path:
    """写出键排序的JSON"""
    with atomic_output(path) as partial:
        partial.write_text(json_dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return Path(path)


def read_json(path: PathLike) -> dict:
    """读取JSON文件"""
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as e:
        raise DataFormatError(f"无法读取JSON文件: {e}", details={"file": str(path)}) from e
