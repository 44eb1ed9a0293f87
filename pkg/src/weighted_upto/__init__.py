"""
weighted-upto-core - 重み付きオートマトンの up-to 合同アルゴリズム・コアライブラリ

半環上の重み付きオートマトンについて、合同閉包（書き換えの正規形）による枝刈りを使い
言語等価性・包含・閾値問題を判定する。実行設定は `UptoConfig` 抽象クラスで注入する。

使用例:
    from weighted_upto.core import exp_family, hkp_a, hkp_a_prime, abk

    A, v = exp_family(4)
    verdict = hkp_a_prime(A, v, threshold=4)
    print(verdict.answer.value, verdict.stats.relation_size)
"""

__version__ = '1.0.0'
__author__ = 'SHIRO Inc.'

# core を utils より先に読み込む（utils.parsers は core.linalg に依存）
from .core import WeightedAutomaton, Verdict, Answer
from .base import UptoConfig, ReportGenerator
from .errors import UsageError, UnsupportedOperation, ParseError, FuelExhausted

__all__ = [
    'UptoConfig',
    'ReportGenerator',
    'WeightedAutomaton',
    'Verdict',
    'Answer',
    'UsageError',
    'UnsupportedOperation',
    'ParseError',
    'FuelExhausted',
    '__version__',
]
