"""
事件总线测试
"""

from infoeff.core.events import (
    AssetSkipped,
    EventBus,
    EventPriority,
    StageCompleted,
    StageStarted,
)


def test_post_to_registered_handlers():
    """测试事件只分发给对应类型的处理器"""
    bus = EventBus()
    started, completed = [], []
    bus.register(StageStarted, lambda e: started.append(e.stage))
    bus.register(StageCompleted, lambda e: completed.append((e.stage, e.items)))

    assert bus.post(StageStarted("ingest")) == 1
    assert bus.post(StageCompleted("ingest", 4)) == 1
    assert bus.post(AssetSkipped("X", "too short")) == 0
    assert started == ["ingest"]
    assert completed == [("ingest", 4)]


def test_priority_order():
    """测试按优先级从低到高执行处理器"""
    bus = EventBus()
    calls = []

    def late(event):
        calls.append("monitor")

    def early(event):
        calls.append("lowest")

    bus.register(StageStarted, late, EventPriority.MONITOR)
    bus.register(StageStarted, early, EventPriority.LOWEST)
    bus.post(StageStarted("report"))
    assert calls == ["lowest", "monitor"]


def test_failing_handler_does_not_stop_others():
    """测试处理器异常不影响其他处理器与发布方"""
    bus = EventBus()
    seen = []

    def broken(event):
        raise RuntimeError("boom")

    bus.register(AssetSkipped, broken, EventPriority.LOW)
    bus.register(AssetSkipped, lambda e: seen.append(e.symbol), EventPriority.HIGH)
    assert bus.post(AssetSkipped("ABC", "重复日期")) == 1
    assert seen == ["ABC"]


def test_unregister():
    """测试取消注册"""
    bus = EventBus()
    seen = []

    def handler(event):
        seen.append(event.stage)

    bus.register(StageStarted, handler)
    bus.unregister(StageStarted, handler)
    bus.unregister(StageCompleted, handler)
    assert bus.post(StageStarted("cluster")) == 0
    assert seen == []
