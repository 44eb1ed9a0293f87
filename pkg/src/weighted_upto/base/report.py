"""
レポート生成インターフェース

使用方法:
    from weighted_upto.base.report import ReportGenerator

    class MyReportGenerator(ReportGenerator):
        def generate_summary(self, results: dict) -> str:
            # 実験固有のサマリー生成ロジック
            pass
"""

from abc import ABC, abstractmethod
from pathlib import Path
from typing import Any, Dict, Optional, Sequence

import pandas as pd


class ReportGenerator(ABC):
    """
    レポート生成の抽象基底クラス

    ベンチマークや実験ごとにこのクラスを継承し、
    固有のレポート形式を実装する。
    """

    def __init__(self, config: 'UptoConfig'):
        """
        Args:
            config: UptoConfig の具象クラスインスタンス
        """
        self.config = config

    @abstractmethod
    def generate_summary(self, results: Dict[str, Any]) -> str:
        """
        実験結果のサマリーを生成

        Args:
            results: 実験結果の辞書

        Returns:
            str: サマリーテキスト（Markdown形式推奨）
        """
        pass

    @abstractmethod
    def generate_findings(self, summary: pd.DataFrame) -> str:
        """
        集計表から読み取れる所見を生成

        Args:
            summary: パーセンタイル集計表

        Returns:
            str: 所見テキスト
        """
        pass

    def save_report(self, content: str, filename: str, subdir: str = 'reports') -> Path:
        """
        レポートをファイルに保存

        Args:
            content: レポート内容
            filename: ファイル名
            subdir: 出力サブディレクトリ

        Returns:
            Path: 保存先パス
        """
        output_path = self.config.output_dir / subdir
        output_path.mkdir(parents=True, exist_ok=True)

        file_path = output_path / filename
        file_path.write_text(content, encoding='utf-8')

        return file_path

    def format_rate(
        self,
        label: str,
        rate: float,
        low: Optional[float] = None,
        high: Optional[float] = None,
        level: float = 0.95
    ) -> str:
        """
        割合と信頼区間をフォーマット

        Args:
            label: 項目名
            rate: 割合（0〜1）
            low: 信頼区間の下限（オプション）
            high: 信頼区間の上限（オプション）
            level: 信頼水準（0〜1）

        Returns:
            str: フォーマットされた文字列
        """
        result = f"**{label}**: {rate * 100:.1f}%"

        if low is not None and high is not None:
            result += f"（{level * 100:g}%CI: {low * 100:.1f}%〜{high * 100:.1f}%）"

        return result

    def format_table(self, df: pd.DataFrame, columns: Sequence[str]) -> str:
        """
        DataFrame を Markdown の表に変換

        Args:
            df: 対象のDataFrame
            columns: 出力するカラム（この順に並べる）

        Returns:
            str: Markdown 形式の表
        """
        lines = [
            '| ' + ' | '.join(columns) + ' |',
            '|' + '|'.join('---' for _ in columns) + '|',
        ]
        for _, row in df.iterrows():
            cells = ['' if pd.isna(row[c]) else self._format_cell(row[c]) for c in columns]
            lines.append('| ' + ' | '.join(cells) + ' |')
        return '\n'.join(lines) + '\n'

    def _format_cell(self, value: Any) -> str:
        """数値セルの書式（整数値は小数点なし）"""
        if isinstance(value, float):
            return f"{value:.0f}" if value.is_integer() else f"{value:.2f}"
        return str(value)
