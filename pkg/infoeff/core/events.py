"""
流水线事件

流水线在阶段开始、阶段完成和跳过资产时发布事件；命令行通过注册处理器
输出进度。发布是同步的，处理器在发布方线程中执行，按优先级从低到高、
同优先级按注册先后调用。
"""

import threading
from dataclasses import dataclass
from enum import IntEnum
from typing import Any, Callable, Dict, List, Type

from loguru import logger


class EventPriority(IntEnum):
    """处理器优先级，数值小的先执行"""

    LOWEST = 0
    LOW = 1
    NORMAL = 2
    HIGH = 3
    HIGHEST = 4
    MONITOR = 5  # 总是最后执行


@dataclass(frozen=True)
class Event:
    """事件基类"""

    @property
    def event_name(self) -> str:
        return type(self).__name__


@dataclass(frozen=True)
class StageStarted(Event):
    """流水线阶段开始"""

    stage: str


@dataclass(frozen=True)
class StageCompleted(Event):
    """流水线阶段完成，items为阶段内处理的条目数"""

    stage: str
    items: int = 0


@dataclass(frozen=True)
class AssetSkipped(Event):
    """资产因校验或过滤被跳过"""

    symbol: str
    reason: str


Handler = Callable[[Any], Any]


@dataclass(frozen=True)
class _Registration:
    func: Handler
    priority: EventPriority
    order: int


class EventBus:
    """按事件类型分发的同步事件总线，可在多个工作线程中发布"""

    def __init__(self) -> None:
        self._handlers: Dict[Type[Event], List[_Registration]] = {}
        self._counter = 0
        self._lock = threading.RLock()

    def register(
        self,
        event_type: Type[Event],
        handler: Handler,
        priority: EventPriority = EventPriority.NORMAL,
    ) -> None:
        """
        注册处理器，同一函数重复注册只保留一次

        Args:
            event_type: 事件类型，只匹配该类型本身
            handler: 接收事件实例的函数
            priority: 处理优先级
        """
        with self._lock:
            entries = self._handlers.setdefault(event_type, [])
            if any(entry.func == handler for entry in entries):
                return
            entries.append(_Registration(handler, EventPriority(priority), self._counter))
            self._counter += 1

    def unregister(self, event_type: Type[Event], handler: Handler) -> None:
        """取消注册，未注册时不做任何事"""
        with self._lock:
            remaining = [e for e in self._handlers.get(event_type, []) if e.func != handler]
            if remaining:
                self._handlers[event_type] = remaining
            else:
                self._handlers.pop(event_type, None)

    def post(self, event: Event) -> int:
        """
        发布事件

        处理器抛出的异常只记录日志，不会传给发布方。

        Returns:
            int: 成功执行的处理器数量
        """
        with self._lock:
            entries = sorted(
                self._handlers.get(type(event), []), key=lambda e: (e.priority, e.order)
            )

        handled = 0
        for entry in entries:
            try:
                entry.func(event)
            except Exception:
                logger.exception(f"事件处理器执行失败: {event.event_name}")
                continue
            handled += 1
        return handled


_default_bus = EventBus()


def get_event_bus() -> EventBus:
    """默认事件总线"""
    return _default_bus


def register(
    event_type: Type[Event],
    handler: Handler,
    priority: EventPriority = EventPriority.NORMAL,
) -> None:
    _default_bus.register(event_type, handler, priority)


def unregister(event_type: Type[Event], handler: Handler) -> None:
    _default_bus.unregister(event_type, handler)


def post(event: Event) -> int:
    return _default_bus.post(event)
