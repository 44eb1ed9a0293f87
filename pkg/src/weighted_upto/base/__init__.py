"""
weighted_upto.base - 抽象基底クラス

実行設定とレポート生成を定義するための抽象クラスを提供します。
"""

from .config import UptoConfig
from .report import ReportGenerator

__all__ = ['UptoConfig', 'ReportGenerator']
