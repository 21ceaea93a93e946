"""
核心模块

提供框架的核心功能，包括配置、事件系统、日志和异常处理。
"""

from infoeff.core.config import (
    AnalysisConfig,
    BandMode,
    ClusterConfig,
    DTWCost,
    Linkage,
    LogConfig,
    LogLevel,
    ReportConfig,
    RuntimeConfig,
    Settings,
    SimilarityConfig,
    load_settings,
)
from infoeff.core.events import (
    AssetSkipped,
    Event,
    EventBus,
    StageCompleted,
    StageStarted,
    get_event_bus,
    post,
    register,
    unregister,
)
from infoeff.core.exceptions import (
    AppException,
    ConfigError,
    DataFormatError,
    InsufficientDataError,
    PipelineError,
    ValidationError,
    handle_app_exception,
)
from infoeff.core.logging import get_logger, setup_logging

__all__ = [
    "AnalysisConfig",
    "BandMode",
    "ClusterConfig",
    "DTWCost",
    "Linkage",
    "LogConfig",
    "LogLevel",
    "ReportConfig",
    "RuntimeConfig",
    "Settings",
    "SimilarityConfig",
    "load_settings",
    "Event",
    "EventBus",
    "StageStarted",
    "StageCompleted",
    "AssetSkipped",
    "get_event_bus",
    "post",
    "register",
    "unregister",
    "get_logger",
    "setup_logging",
    "AppException",
    "ValidationError",
    "ConfigError",
    "DataFormatError",
    "InsufficientDataError",
    "PipelineError",
    "handle_app_exception",
]
