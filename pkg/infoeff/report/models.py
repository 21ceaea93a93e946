"""
报告数据模型
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np

from infoeff.cluster.linkage import Dendrogram
from infoeff.cluster.silhouette import ClusterAssignment
from infoeff.efficiency.models import ComplexityTrack, EfficiencyProfile
from infoeff.ingest.models import RowDiagnostic
from infoeff.report.profiles import GroupProfile
from infoeff.report.stats import EfficiencyShares, KdeCurve, PearsonResult, RankedAsset
from infoeff.similarity.matrix import DistanceMatrix


@dataclass(frozen=True)
class AssetSummary:
    """单个资产的汇总行；group为None表示未参与聚类"""

    symbol: str
    E: float
    n_windows: int
    mcap_mean: float
    group: Optional[int] = None


@dataclass
class PipelineReport:
    """完整流水线的结果"""

    assets: List[AssetSummary] = field(default_factory=list)
    tracks: List[ComplexityTrack] = field(default_factory=list)
    profiles: List[EfficiencyProfile] = field(default_factory=list)
    diagnostics: List[RowDiagnostic] = field(default_factory=list)
    kde: Optional[KdeCurve] = None
    pearson: Optional[PearsonResult] = None
    shares: Optional[EfficiencyShares] = None
    top: List[RankedAsset] = field(default_factory=list)
    matrix: Optional[DistanceMatrix] = None
    dendrogram: Optional[Dendrogram] = None
    assignment: Optional[ClusterAssignment] = None
    group_profiles: List[GroupProfile] = field(default_factory=list)

    def efficiencies(self) -> np.ndarray:
        """全部资产的E"""
        return np.array([a.E for a in self.assets], dtype=float)

    def groups(self) -> Dict[str, int]:
        """资产代码到组号的映射，只含参与聚类的资产"""
        return {a.symbol: a.group for a in self.assets if a.group is not None}

    def group_shares(self) -> Dict[int, float]:
        """各组在聚类资产中的占比"""
        if self.assignment is None:
            return {}
        return {int(g): float(s) for g, s in enumerate(self.assignment.shares())}
