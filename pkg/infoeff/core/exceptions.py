"""
异常处理模块

定义应用中使用的自定义异常类，以及命令行使用的异常处理函数。
每个异常携带错误代码和进程退出码：0成功，2校验错误，3数据不足，4内部错误。
"""

import logging
from typing import Any, Dict, Optional

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_INSUFFICIENT_DATA = 3
EXIT_INTERNAL = 4


class AppException(Exception):
    """应用基础异常类"""

    def __init__(
        self,
        code: str,
        message: str,
        exit_code: int = EXIT_INTERNAL,
        details: Optional[Dict[str, Any]] = None,
    ):
        """
        初始化异常

        Args:
            code: 错误代码
            message: 错误消息
            exit_code: 进程退出码
            details: 错误详情
        """
        self.code = code
        self.message = message
        self.exit_code = exit_code
        self.details = details or {}
        super().__init__(message)

    def __str__(self) -> str:
        if not self.details:
            return self.message
        extra = ", ".join(f"{k}={v}" for k, v in self.details.items())
        return f"{self.message} ({extra})"


class ValidationError(AppException):
    """参数验证错误异常"""

    def __init__(
        self,
        message: str = "参数验证错误",
        details: Optional[Dict[str, Any]] = None,
        code: str = "VALIDATION_ERROR",
    ):
        """
        初始化异常

        Args:
            message: 错误消息
            details: 错误详情
            code: 错误代码
        """
        super().__init__(
            code=code,
            message=message,
            exit_code=EXIT_VALIDATION,
            details=details,
        )


class ConfigError(ValidationError):
    """配置错误异常"""

    def __init__(self, message: str = "配置无效", details: Optional[Dict[str, Any]] = None):
        super().__init__(message=message, details=details, code="CONFIG_ERROR")


class DataFormatError(ValidationError):
    """输入文件格式错误异常"""

    def __init__(
        self, message: str = "数据格式错误", details: Optional[Dict[str, Any]] = None
    ):
        super().__init__(message=message, details=details, code="DATA_FORMAT_ERROR")


class InsufficientDataError(AppException):
    """数据不足异常"""

    def __init__(
        self,
        message: str = "数据不足",
        details: Optional[Dict[str, Any]] = None,
    ):
        """
        初始化异常

        Args:
            message: 错误消息
            details: 错误详情
        """
        super().__init__(
            code="INSUFFICIENT_DATA",
            message=message,
            exit_code=EXIT_INSUFFICIENT_DATA,
            details=details,
        )


class PipelineError(AppException):
    """流水线内部错误异常"""

    def __init__(
        self,
        stage: str,
        message: str = "流水线内部错误",
        details: Optional[Dict[str, Any]] = None,
    ):
        """
        初始化异常

        Args:
            stage: 出错的阶段名称
            message: 错误消息
            details: 错误详情
        """
        super().__init__(
            code="PIPELINE_ERROR",
            message=message,
            exit_code=EXIT_INTERNAL,
            details={"stage": stage, **(details or {})},
        )
        self.stage = stage


def handle_app_exception(exc: BaseException) -> int:
    """
    处理异常并返回进程退出码

    应用异常记录为错误日志；未捕获的异常记录完整堆栈并映射为内部错误。

    Args:
        exc: 异常对象

    Returns:
        int: 进程退出码
    """
    if isinstance(exc, AppException):
        logger.error("[%s] %s", exc.code, exc)
        return exc.exit_code

    logger.exception("未捕获的异常", exc_info=exc)
    return EXIT_INTERNAL
