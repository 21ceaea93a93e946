"""
配置管理模块

提供从多种来源加载配置的功能，支持配置文件（YAML/JSON/TOML）、环境变量和.env文件，
并按照优先级加载配置。分析参数的默认值为：d=4、w=500、30次打乱、
95%置信带、360天效率窗口。
"""

import json
import logging
import math
from enum import Enum
from pathlib import Path
from typing import Any, Dict, Optional, Type, TypeVar

import toml
import yaml
from dotenv import load_dotenv
from pydantic import BaseModel, Field, field_validator, model_validator
from pydantic import ValidationError as PydanticValidationError
from pydantic_settings import BaseSettings, SettingsConfigDict

from infoeff.core.exceptions import ConfigError

logger = logging.getLogger(__name__)

# 定义类型变量用于泛型函数
T = TypeVar("T", bound="Settings")

CONFIG_FILE_NAMES = ("infoeff.yaml", "infoeff.yml", "infoeff.json", "infoeff.toml")


def locate_config_file(
    file_name: str, explicit_path: Optional[str] = None
) -> Optional[Path]:
    """
    查找配置文件路径

    按照以下优先级查找配置文件：
    1. 明确指定的路径
    2. 当前工作目录
    3. 用户主目录下的.infoeff目录

    Args:
        file_name: 配置文件名
        explicit_path: 明确指定的路径

    Returns:
        Optional[Path]: 配置文件路径，如果未找到则返回None
    """
    # 如果明确指定了路径，则优先使用
    if explicit_path:
        path = Path(explicit_path)
        if path.is_file():
            return path
        if path.is_dir():
            path = path / file_name
            if path.exists():
                return path

    # 检查当前工作目录
    cwd = Path.cwd() / file_name
    if cwd.exists():
        return cwd

    # 检查家目录下的.infoeff目录
    home_dir = Path.home() / ".infoeff" / file_name
    if home_dir.exists():
        return home_dir

    return None


def load_config_file(file_path: Path) -> Dict[str, Any]:
    """
    按扩展名加载单个配置文件

    Args:
        file_path: 配置文件路径

    Returns:
        Dict[str, Any]: 配置字典

    Raises:
        ConfigError: 文件无法解析或格式不受支持
    """
    suffix = file_path.suffix.lower()
    with open(file_path, "r", encoding="utf-8") as f:
        try:
            if suffix in (".yaml", ".yml"):
                data = yaml.safe_load(f)
            elif suffix == ".json":
                data = json.load(f)
            elif suffix == ".toml":
                data = toml.load(f)
            else:
                raise ConfigError(
                    f"不支持的配置文件格式: {suffix}", details={"file": str(file_path)}
                )
        except (yaml.YAMLError, json.JSONDecodeError, toml.TomlDecodeError) as e:
            raise ConfigError(
                f"解析配置文件失败: {e}", details={"file": str(file_path)}
            ) from e

    if data is None:
        return {}
    if not isinstance(data, dict):
        raise ConfigError("配置文件顶层必须是映射", details={"file": str(file_path)})
    return data


def load_config_from_file(config_path: Optional[str] = None) -> Dict[str, Any]:
    """
    从配置文件加载配置

    Args:
        config_path: 配置文件路径，如果未指定则按优先级自动查找

    Returns:
        Dict[str, Any]: 配置字典
    """
    if config_path and Path(config_path).is_file():
        path = Path(config_path)
        logger.info("已从 %s 加载配置", path)
        return load_config_file(path)

    for file_name in CONFIG_FILE_NAMES:
        path = locate_config_file(file_name, config_path)
        if path:
            logger.info("已从 %s 加载配置", path)
            return load_config_file(path)

    logger.debug("未找到配置文件，将使用环境变量和默认值")
    return {}


class LogLevel(str, Enum):
    """日志级别枚举"""

    TRACE = "TRACE"
    DEBUG = "DEBUG"
    INFO = "INFO"
    SUCCESS = "SUCCESS"
    WARNING = "WARNING"
    ERROR = "ERROR"
    CRITICAL = "CRITICAL"


class LogConfig(BaseModel):
    """日志配置"""

    level: LogLevel = LogLevel.INFO
    format: str = (
        "<green>{time:YYYY-MM-DD HH:mm:ss.SSS}</green> | "
        "<level>{level: <8}</level> | "
        "<cyan>{extra[name]}</cyan>:<cyan>{line}</cyan> [{thread.name}] - "
        "<level>{message}</level>"
    )
    file_path: Optional[str] = None
    rotation: str = "20 MB"
    retention: str = "1 week"
    compression: str = "zip"
    serialize: bool = False


class BandMode(str, Enum):
    """置信带估计方式"""

    GAUSSIAN = "gaussian"  # 均值 ± z·标准差
    QUANTILE = "quantile"  # 经验分位数


class DTWCost(str, Enum):
    """DTW局部代价"""

    SQUARED = "squared"  # (a-b)²累加后开方
    ABS = "abs"  # |a-b|累加


class Linkage(str, Enum):
    """层次聚类连接方式，目前仅实现average"""

    AVERAGE = "average"
    SINGLE = "single"
    COMPLETE = "complete"
    WARD = "ward"


class AnalysisConfig(BaseModel):
    """
    分析配置

    对应排列熵/统计复杂度滑动窗口分析的全部参数。
    """

    embedding_dim: int = Field(default=4, description="嵌入维度d")
    window: int = Field(default=500, gt=0, description="滑动窗口长度w（天）")
    surrogate_count: int = Field(default=30, description="每个窗口的打乱次数m")
    confidence: float = Field(default=0.95, description="置信水平")
    efficiency_window: int = Field(default=360, gt=0, description="E_t的滑动窗口w_E（天）")
    min_returns: int = Field(default=600, ge=1, description="收益率序列长度下限（严格大于）")
    min_track: int = Field(default=460, ge=1, description="动态分析所需(H_t, C_t)长度下限（严格大于）")
    min_windows: int = Field(default=100, ge=1, description="计算总体效率E所需的最少窗口数")
    master_seed: int = Field(default=42, description="随机数主种子")
    band_mode: BandMode = BandMode.GAUSSIAN

    @field_validator("embedding_dim")
    @classmethod
    def _check_dim(cls, value: int) -> int:
        if not 2 <= value <= 8:
            raise ValueError("embedding_dim必须在[2, 8]范围内")
        return value

    @field_validator("surrogate_count")
    @classmethod
    def _check_surrogates(cls, value: int) -> int:
        if value < 2:
            raise ValueError("surrogate_count至少为2，否则标准差无定义")
        return value

    @field_validator("confidence")
    @classmethod
    def _check_confidence(cls, value: float) -> float:
        if not 0.0 < value < 1.0:
            raise ValueError("confidence必须在(0, 1)范围内")
        return value

    @field_validator("master_seed")
    @classmethod
    def _check_seed(cls, value: int) -> int:
        if not -(2**63) <= value < 2**64:
            raise ValueError("master_seed必须是64位整数")
        return value

    @model_validator(mode="after")
    def _check_statistics(self) -> "AnalysisConfig":
        # d! ≪ w，按 d!·10 ≤ w 执行
        if math.factorial(self.embedding_dim) * 10 > self.window:
            raise ValueError(
                f"窗口过短: d!·10 = {math.factorial(self.embedding_dim) * 10} > w = {self.window}"
            )
        return self


class SimilarityConfig(BaseModel):
    """相似度配置"""

    dtw_cost: DTWCost = DTWCost.SQUARED


class ClusterConfig(BaseModel):
    """聚类配置"""

    linkage: Linkage = Linkage.AVERAGE


class ReportConfig(BaseModel):
    """报告配置"""

    kde_bandwidth: Optional[float] = Field(default=None, gt=0, description="KDE带宽，None为Silverman规则")
    kde_points: int = Field(default=512, ge=2)
    top_n: int = Field(default=50, ge=1)
    low_efficiency: float = Field(default=0.2, ge=0, le=1)
    high_efficiency: float = Field(default=0.8, ge=0, le=1)


class RuntimeConfig(BaseModel):
    """运行时配置"""

    threads: int = Field(default=1, ge=1)
    out_dir: str = "output"


class Settings(BaseSettings):
    """应用设置"""

    analysis: AnalysisConfig = Field(default_factory=AnalysisConfig)
    similarity: SimilarityConfig = Field(default_factory=SimilarityConfig)
    cluster: ClusterConfig = Field(default_factory=ClusterConfig)
    report: ReportConfig = Field(default_factory=ReportConfig)
    runtime: RuntimeConfig = Field(default_factory=RuntimeConfig)
    log: LogConfig = Field(default_factory=LogConfig)

    model_config = SettingsConfigDict(
        env_prefix="INFOEFF_", env_nested_delimiter="__", case_sensitive=False
    )

    def with_overrides(self, section: str, **values: Any) -> "Settings":
        """
        返回覆盖了某一配置段部分字段的新设置

        值为None的字段保持不变，用于把命令行参数叠加到文件配置之上。

        Args:
            section: 配置段名称，如"analysis"
            **values: 要覆盖的字段

        Returns:
            Settings: 新的设置实例

        Raises:
            ConfigError: 覆盖后的配置无效
        """
        updates = {k: v for k, v in values.items() if v is not None}
        if not updates:
            return self
        current: BaseModel = getattr(self, section)
        try:
            merged = type(current).model_validate({**current.model_dump(), **updates})
        except PydanticValidationError as e:
            raise ConfigError(f"配置无效: {_describe(e)}", details={"section": section}) from e
        return self.model_copy(update={section: merged})


def _describe(error: PydanticValidationError) -> str:
    """把pydantic校验错误压缩成一行"""
    parts = []
    for item in error.errors():
        location = ".".join(str(p) for p in item["loc"]) or "config"
        parts.append(f"{location}: {item['msg']}")
    return "; ".join(parts)


def load_settings(
    settings_class: Type[T] = Settings,  # type: ignore[assignment]
    config_path: Optional[str] = None,
    env_file: Optional[str] = None,
) -> T:
    """
    加载应用设置，按照优先级从配置文件、.env文件和环境变量加载

    环境变量优先于配置文件中的同名字段。

    Args:
        settings_class: 设置类型，必须继承自Settings
        config_path: 配置文件路径，如果未指定则按优先级自动查找
        env_file: .env文件路径，如果未指定则按优先级自动查找

    Returns:
        T: 设置实例

    Raises:
        ConfigError: 配置文件或环境变量中的值无效
    """
    # 加载.env文件
    if env_file:
        env_path: Optional[Path] = Path(env_file)
        if env_path is not None and env_path.exists():
            load_dotenv(env_path)
            logger.info("已加载环境变量文件: %s", env_path)
    else:
        env_path = locate_config_file(".env")
        if env_path:
            load_dotenv(env_path)
            logger.info("已加载环境变量文件: %s", env_path)

    # 从配置文件加载
    config_dict = load_config_from_file(config_path)

    try:
        # 初始化参数优先级高于环境变量，因此先读环境变量再合并
        env_settings = settings_class()
        merged = _deep_merge(config_dict, _explicit_env_fields(env_settings))
        settings = settings_class.model_validate(merged) if merged else env_settings
    except PydanticValidationError as e:
        raise ConfigError(f"配置无效: {_describe(e)}") from e

    logger.info("配置加载完成")
    return settings


def _explicit_env_fields(settings: BaseSettings) -> Dict[str, Any]:
    """提取由环境变量显式设置（非默认值）的字段"""
    return settings.model_dump(exclude_defaults=True)


def _deep_merge(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
    """递归合并字典，override中的值优先"""
    result = dict(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(result.get(key), dict):
            result[key] = _deep_merge(result[key], value)
        else:
            result[key] = value
    return result
