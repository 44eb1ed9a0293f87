"""
抽象設定クラス - 実行環境ごとの設定を定義するベースクラス

使用方法:
    from weighted_upto.base.config import UptoConfig

    class MyConfig(UptoConfig):
        @property
        def output_dir(self) -> Path:
            return Path('output/bench')

        @property
        def fuel(self) -> int:
            return 50_000
"""

from abc import ABC, abstractmethod
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Tuple

# ========================================
# 既定値（ライブラリ関数のキーワード引数既定値としても使用）
# ========================================

DEFAULT_FUEL = 10 ** 6
DEFAULT_REWRITE_FUEL = 10 ** 6
DEFAULT_TABLE_CAP = 10 ** 6
DEFAULT_STRATEGY = 'round-robin'
STRATEGIES = ('round-robin', 'reverse', 'random', 'greedy')


class UptoConfig(ABC):
    """
    実行設定を定義する抽象クラス

    CLIやベンチマークスクリプトでこのクラスを継承し、
    出力先、fuel、書き換え戦略、乱数生成パラメータ等を定義する。
    """

    # ========================================
    # 必須プロパティ（サブクラスで実装必須）
    # ========================================

    @property
    @abstractmethod
    def output_dir(self) -> Path:
        """
        ベンチマーク結果・レポート・グラフの出力ディレクトリ

        Returns:
            Path: 出力先ディレクトリ（存在しない場合は自動作成される）
        """
        pass

    # ========================================
    # オプションプロパティ（デフォルト値あり）
    # ========================================

    @property
    def fuel(self) -> int:
        """
        アルゴリズム1回あたりに取り出すペア数の上限

        Returns:
            int: 上限（デフォルト: 10^6）
        """
        return DEFAULT_FUEL

    @property
    def rewrite_fuel(self) -> int:
        """
        正規形計算1回あたりの書き換えステップ数の上限

        Returns:
            int: 上限（デフォルト: 10^6）
        """
        return DEFAULT_REWRITE_FUEL

    @property
    def strategy(self) -> str:
        """
        書き換え規則の適用戦略

        Returns:
            str: 'round-robin', 'reverse', 'random', 'greedy' のいずれか
        """
        return DEFAULT_STRATEGY

    @property
    def table_cap(self) -> int:
        """
        総当たり言語表の最大エントリ数

        Returns:
            int: 上限（デフォルト: 10^6）
        """
        return DEFAULT_TABLE_CAP

    @property
    def encoding(self) -> str:
        """
        入力ファイルのエンコーディング

        Returns:
            str: エンコーディング名（'auto' なら chardet で自動検出）
        """
        return 'utf-8'

    @property
    def percentiles(self) -> Tuple[int, ...]:
        """
        ベンチマーク集計で報告するパーセンタイル

        Returns:
            tuple: パーセンタイル値（デフォルト: (50, 90, 99)）
        """
        return (50, 90, 99)

    @property
    def edge_prob(self) -> Fraction:
        """
        ランダム生成で辺が有限の重みを持つ確率

        Returns:
            Fraction: 確率（デフォルト: 9/10）
        """
        return Fraction(9, 10)

    @property
    def weight_range(self) -> Tuple[int, int]:
        """
        ランダム生成の重みの範囲（両端含む）

        Returns:
            tuple: (最小, 最大)（デフォルト: (0, 10)）
        """
        return (0, 10)

    @property
    def alphabet_range(self) -> Tuple[int, int]:
        """
        ランダム生成のアルファベットサイズの範囲（両端含む）

        Returns:
            tuple: (最小, 最大)（デフォルト: (1, 5)）
        """
        return (1, 5)

    @property
    def figure_settings(self) -> Dict[str, Any]:
        """
        グラフ生成の設定

        Returns:
            dict: matplotlib/seabornの設定

        Example:
            {
                'figsize': (12, 8),
                'dpi': 150,
                'style': 'whitegrid',
            }
        """
        return {
            'figsize': (12, 8),
            'dpi': 150,
            'style': 'whitegrid',
        }

    # ========================================
    # ユーティリティメソッド
    # ========================================

    def ensure_output_dir(self) -> Path:
        """
        出力ディレクトリを作成（存在しない場合）

        Returns:
            Path: 作成された出力ディレクトリ
        """
        self.output_dir.mkdir(parents=True, exist_ok=True)
        return self.output_dir

    def gen_params(self, n_states: int, threshold: int, seed: int):
        """
        設定の既定値から乱数生成パラメータを組み立てる

        Args:
            n_states: 状態数
            threshold: 閾値
            seed: 乱数シード

        Returns:
            GenParams: 生成パラメータ
        """
        from weighted_upto.core.bench import GenParams

        return GenParams(
            n_states=n_states,
            threshold=threshold,
            edge_prob=self.edge_prob,
            weight_range=self.weight_range,
            alphabet_range=self.alphabet_range,
            seed=seed,
        )

    def validate(self) -> List[str]:
        """
        設定の妥当性を検証

        Returns:
            list: エラーメッセージのリスト（空なら問題なし）
        """
        errors = []

        if self.fuel <= 0:
            errors.append(f"fuel は正の整数で指定してください: {self.fuel}")

        if self.rewrite_fuel <= 0:
            errors.append(f"rewrite_fuel は正の整数で指定してください: {self.rewrite_fuel}")

        if self.strategy not in STRATEGIES:
            errors.append(f"未対応の書き換え戦略: {self.strategy}（{', '.join(STRATEGIES)} のいずれかを指定）")

        if not 0 <= self.edge_prob <= 1:
            errors.append(f"edge_prob は0〜1の範囲で指定してください: {self.edge_prob}")

        for name, (low, high) in (('weight_range', self.weight_range),
                                  ('alphabet_range', self.alphabet_range)):
            if low > high or low < 0:
                errors.append(f"{name} が空または負です: ({low}, {high})")

        if self.alphabet_range[0] < 1:
            errors.append(f"alphabet_range の最小値は1以上にしてください: {self.alphabet_range}")

        for p in self.percentiles:
            if not 0 < p <= 100:
                errors.append(f"パーセンタイルは0より大きく100以下で指定してください: {p}")

        return errors
