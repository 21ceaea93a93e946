"""
序数模式编码

把0…d−1的排列映射到[0, d!)中的稠密整数（Lehmer码/阶乘进制排名），
并支持对大量模式做向量化编码。
"""

import math
from functools import lru_cache
from typing import Sequence, Tuple

import numpy as np

from infoeff.core.exceptions import ValidationError

MIN_DIM = 2
MAX_DIM = 8


def check_dim(d: int) -> int:
    """校验嵌入维度在[2, 8]内"""
    if not isinstance(d, (int, np.integer)) or not MIN_DIM <= d <= MAX_DIM:
        raise ValidationError(
            f"嵌入维度必须在[{MIN_DIM}, {MAX_DIM}]范围内", details={"d": d}
        )
    return int(d)


class PatternCodec:
    """
    排列与Lehmer码之间的双向映射

    encode(π) = Σ_i c_i·(d−1−i)!，其中c_i为位置i之后比π[i]小的元素个数。
    恒等排列编码为0，逆序排列编码为d!−1。
    """

    def __init__(self, d: int):
        self.d = check_dim(d)
        self.size = math.factorial(self.d)
        self._weights = np.array(
            [math.factorial(self.d - 1 - i) for i in range(self.d)], dtype=np.int64
        )

    def encode(self, permutation: Sequence[int]) -> int:
        """
        编码单个排列

        Args:
            permutation: 0…d−1的一个排列

        Returns:
            int: Lehmer码

        Raises:
            ValidationError: 输入不是0…d−1的排列
        """
        perm = np.asarray(permutation, dtype=np.int64)
        if perm.shape != (self.d,) or not np.array_equal(np.sort(perm), np.arange(self.d)):
            raise ValidationError("输入不是合法排列", details={"permutation": list(permutation)})
        return int(self.encode_many(perm[np.newaxis, :])[0])

    def encode_many(self, permutations: np.ndarray) -> np.ndarray:
        """
        向量化编码

        Args:
            permutations: 形状为(..., d)的排列数组，不做合法性检查

        Returns:
            np.ndarray: 形状为(...)的int64编码数组
        """
        perms = np.asarray(permutations)
        codes = np.zeros(perms.shape[:-1], dtype=np.int64)
        for i in range(self.d - 1):
            inversions = (perms[..., i + 1 :] < perms[..., i : i + 1]).sum(axis=-1)
            codes += inversions * self._weights[i]
        return codes

    def decode(self, code: int) -> Tuple[int, ...]:
        """
        解码Lehmer码为排列

        Args:
            code: [0, d!)中的整数

        Returns:
            Tuple[int, ...]: 对应的排列
        """
        if not 0 <= code < self.size:
            raise ValidationError("编码超出范围", details={"code": code, "d": self.d})
        remaining = list(range(self.d))
        result = []
        for weight in self._weights:
            index, code = divmod(int(code), int(weight))
            result.append(remaining.pop(index))
        return tuple(result)

    def patterns(self) -> Tuple[Tuple[int, ...], ...]:
        """按编码顺序列出全部d!个排列"""
        return tuple(self.decode(c) for c in range(self.size))


@lru_cache(maxsize=None)
def get_codec(d: int) -> PatternCodec:
    """获取指定维度的编码器（缓存）"""
    return PatternCodec(d)
