"""
序数模式与信息论度量测试
"""

import itertools
import math

import numpy as np
import pytest

from infoeff.core.exceptions import ValidationError
from infoeff.ordinal import (
    entropy_complexity,
    get_codec,
    jensen_shannon_divergence,
    max_divergence,
    ordinal_distribution,
    permutation_entropy,
    shannon_entropy,
    statistical_complexity,
)

EXAMPLE = (4, 7, 9, 10, 6, 11, 3)


def brute_force(values, d):
    """逐窗口枚举的独立实现，返回(概率字典, H, C)"""
    counts = {p: 0 for p in itertools.permutations(range(d))}
    for i in range(len(values) - d + 1):
        window = values[i : i + d]
        pattern = tuple(sorted(range(d), key=lambda k: (window[k], k)))
        counts[pattern] += 1
    total = sum(counts.values())
    p = [c / total for c in counts.values()]
    n = len(p)

    def entropy(q):
        return -sum(x * math.log(x) for x in q if x > 0)

    h = entropy(p) / math.log(n)
    mix = [(x + 1 / n) / 2 for x in p]
    js = entropy(mix) - entropy(p) / 2 - math.log(n) / 2
    delta = [1.0] + [0.0] * (n - 1)
    d_star = entropy([(x + 1 / n) / 2 for x in delta]) - 0 - math.log(n) / 2
    probabilities = {k: v / total for k, v in counts.items() if v}
    return probabilities, h, js * h / d_star


def test_example_distribution():
    """测试d=3示例序列的模式分布"""
    dist = ordinal_distribution(EXAMPLE, 3)
    assert dist.total == 5
    assert dist.as_dict() == pytest.approx({(0, 1, 2): 0.4, (2, 0, 1): 0.4, (1, 0, 2): 0.2})


def test_example_entropy_and_complexity():
    """测试示例序列的H与C，并与枚举实现对照"""
    dist = ordinal_distribution(EXAMPLE, 3)
    h = permutation_entropy(dist)
    c = statistical_complexity(dist)
    assert h == pytest.approx(0.58876, abs=1e-4)
    assert c == pytest.approx(0.2900, abs=5e-4)

    probabilities, h_ref, c_ref = brute_force(EXAMPLE, 3)
    assert dist.as_dict() == pytest.approx(probabilities)
    assert h == pytest.approx(h_ref, abs=1e-12)
    assert c == pytest.approx(c_ref, abs=1e-12)


@pytest.mark.parametrize("d", range(2, 9))
def test_max_divergence_closed_form(d):
    """测试D*闭式与直接计算一致"""
    n = math.factorial(d)
    delta = np.zeros(n)
    delta[0] = 1.0
    u = np.full(n, 1.0 / n)
    direct = shannon_entropy((delta + u) / 2) - shannon_entropy(delta) / 2 - math.log(n) / 2
    closed = -0.5 * ((n + 1) / n * math.log(n + 1) - 2 * math.log(2 * n) + math.log(n))
    assert max_divergence(d) == pytest.approx(closed, abs=1e-12)
    assert max_divergence(d) == pytest.approx(direct, abs=1e-12)


def test_random_series_limits():
    """测试独立均匀样本的H接近1、C接近0"""
    values = np.random.default_rng(1).uniform(size=100_000)
    dist = ordinal_distribution(values, 4)
    assert permutation_entropy(dist) >= 0.999
    assert statistical_complexity(dist) <= 0.005


@pytest.mark.parametrize("values", [np.arange(50.0), -np.arange(50.0), np.exp(np.arange(30.0))])
def test_monotone_series(values):
    """测试单调序列的H与C恰好为0"""
    dist = ordinal_distribution(values, 4)
    assert permutation_entropy(dist) == 0.0
    assert statistical_complexity(dist) == 0.0


def test_affine_invariance():
    """测试正仿射变换不改变模式分布"""
    values = np.random.default_rng(2).normal(size=400)
    base = ordinal_distribution(values, 4)
    moved = ordinal_distribution(3.5 * values - 11.0, 4)
    np.testing.assert_array_equal(base.counts, moved.counts)


def test_ties_use_order_of_appearance():
    """测试相等值按出现顺序排名"""
    dist = ordinal_distribution([1.0, 1.0, 1.0], 3)
    assert dist.as_dict() == {(0, 1, 2): 1.0}


@pytest.mark.parametrize("d", range(2, 7))
def test_codec_bijection(d):
    """测试编码与解码互为逆映射，恒等排列编码为0"""
    codec = get_codec(d)
    patterns = codec.patterns()
    assert len(set(patterns)) == math.factorial(d)
    for code, pattern in enumerate(patterns):
        assert codec.encode(pattern) == code
    assert codec.encode(tuple(range(d))) == 0
    assert codec.encode(tuple(reversed(range(d)))) == math.factorial(d) - 1


def test_invalid_inputs():
    """测试非法输入"""
    with pytest.raises(ValidationError):
        ordinal_distribution([1.0, 2.0], 3)
    with pytest.raises(ValidationError):
        ordinal_distribution([1.0, 2.0, 3.0], 9)
    with pytest.raises(ValidationError):
        ordinal_distribution([1.0, np.nan, 3.0, 4.0], 3)
    with pytest.raises(ValidationError):
        shannon_entropy(np.array([0.5, 0.6]))


def test_vectorized_matches_scalar():
    """测试批量计算与逐个计算一致"""
    rng = np.random.default_rng(3)
    dists = [ordinal_distribution(rng.normal(size=60), 3) for _ in range(5)]
    h, c = entropy_complexity(np.stack([d.counts for d in dists]), 3)
    for i, dist in enumerate(dists):
        assert h[i] == pytest.approx(permutation_entropy(dist), abs=1e-12)
        assert c[i] == pytest.approx(statistical_complexity(dist), abs=1e-12)
        assert 0.0 <= jensen_shannon_divergence(dist) <= math.log(2)
