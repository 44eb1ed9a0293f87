"""
可視化モジュール

ベンチマーク結果のパーセンタイル比較と、例題族での探索空間の増加のグラフを提供。
"""

import warnings
from pathlib import Path
from typing import Dict, List, Optional, Sequence

import pandas as pd

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import seaborn as sns

from weighted_upto.base.config import UptoConfig
from weighted_upto.core.bench import BenchRow, rows_to_frame

# 日本語フォント対応
_JAPANESE_FONT_FAMILY: Optional[str] = None
try:
    import japanize_matplotlib  # noqa: F401
    _JAPANESE_FONT_FAMILY = plt.rcParams.get('font.family')
except ImportError:
    _JAPANESE_FONT_FAMILY = None

METRIC_LABELS = {
    'relation_size': '|R| / |P|',
    'sim_size': '|⪯|',
    'runtime_ms': '実行時間 (ms)',
}


def setup_plot_style(config: Optional[UptoConfig] = None):
    """
    プロットスタイルを設定

    Args:
        config: UptoConfig（figure_settings プロパティ使用）
    """
    settings = config.figure_settings if config else {}

    sns.set_style(settings.get('style', 'whitegrid'))

    if _JAPANESE_FONT_FAMILY:
        plt.rcParams['font.family'] = _JAPANESE_FONT_FAMILY

    plt.rcParams['figure.figsize'] = settings.get('figsize', (12, 8))

    font_size = settings.get('font_size', 12)
    plt.rcParams['font.size'] = font_size
    plt.rcParams['axes.titlesize'] = font_size + 4
    plt.rcParams['axes.labelsize'] = font_size


def _save(fig: plt.Figure, save_path: Optional[Path], config: Optional[UptoConfig]) -> None:
    if save_path:
        save_path = Path(save_path)
        save_path.parent.mkdir(parents=True, exist_ok=True)
        dpi = config.figure_settings.get('dpi', 150) if config else 150
        fig.savefig(save_path, dpi=dpi, bbox_inches='tight')
        warnings.warn(f"グラフ保存: {save_path.name}", UserWarning, stacklevel=3)


def plot_percentiles(
    summary: pd.DataFrame,
    metric: str = 'relation_size',
    save_path: Optional[Path] = None,
    config: Optional[UptoConfig] = None,
    figsize: tuple = (10, 6)
) -> plt.Figure:
    """
    セル×アルゴリズムごとのパーセンタイルを棒グラフで比較

    Args:
        summary: bench.summarize() の集計表
        metric: 指標（'relation_size', 'sim_size', 'runtime_ms'）
        save_path: 保存パス
        config: UptoConfig
        figsize: 図のサイズ

    Returns:
        plt.Figure: 生成された図
    """
    setup_plot_style(config)

    part = summary[summary['metric'] == metric].copy()
    pcols = [c for c in part.columns if c.startswith('p') and c[1:].isdigit()]
    part['cell'] = [f"|X|={n}, T={t}" for n, t in zip(part['n_states'], part['threshold'])]

    fig, axes = plt.subplots(1, max(len(pcols), 1), figsize=figsize, sharey=True, squeeze=False)
    for ax, pcol in zip(axes[0], pcols):
        if part.empty:
            ax.text(0.5, 0.5, 'データなし', ha='center', va='center', transform=ax.transAxes)
        else:
            sns.barplot(data=part, x='cell', y=pcol, hue='algo', errorbar=None, ax=ax, palette='Set2')
        ax.set_title(pcol)
        ax.set_xlabel('セル')
        ax.set_ylabel(METRIC_LABELS.get(metric, metric))
    fig.suptitle(f"{METRIC_LABELS.get(metric, metric)} のパーセンタイル")
    plt.tight_layout()

    _save(fig, save_path, config)
    return fig


def plot_growth(
    rows: Sequence[BenchRow],
    save_path: Optional[Path] = None,
    config: Optional[UptoConfig] = None,
    figsize: tuple = (10, 6)
) -> plt.Figure:
    """
    例題族での |R| / |P| の増加を対数軸で描画

    Args:
        rows: bench.run_exp_family() の結果
        save_path: 保存パス
        config: UptoConfig
        figsize: 図のサイズ

    Returns:
        plt.Figure: 生成された図
    """
    setup_plot_style(config)

    df = rows_to_frame(rows)
    fig, ax = plt.subplots(figsize=figsize)
    sns.lineplot(data=df, x='threshold', y='relation_size', hue='algo', marker='o', ax=ax, palette='Set2')
    ax.set_yscale('log')
    ax.set_xlabel('n（閾値 T = n）')
    ax.set_ylabel('|R| / |P|')
    ax.set_title('例題族における探索空間の増加', pad=20)
    plt.tight_layout()

    _save(fig, save_path, config)
    return fig


def create_bench_charts(
    output_dir: Path,
    summary: Optional[pd.DataFrame] = None,
    family_rows: Optional[Sequence[BenchRow]] = None,
    config: Optional[UptoConfig] = None
) -> Dict[str, Path]:
    """
    ベンチマークのグラフを一括生成

    Args:
        output_dir: 出力ディレクトリ
        summary: bench.summarize() の集計表
        family_rows: bench.run_exp_family() の結果
        config: UptoConfig

    Returns:
        dict: グラフ名 → 保存パス
    """
    output_dir = Path(output_dir)
    output_dir.mkdir(parents=True, exist_ok=True)
    saved: Dict[str, Path] = {}

    if summary is not None and not summary.empty:
        metrics: List[str] = [m for m in METRIC_LABELS if (summary['metric'] == m).any()]
        for metric in metrics:
            path = output_dir / f"percentiles_{metric}.png"
            fig = plot_percentiles(summary, metric, save_path=path, config=config)
            plt.close(fig)
            saved[metric] = path

    if family_rows:
        path = output_dir / 'family_growth.png'
        fig = plot_growth(family_rows, save_path=path, config=config)
        plt.close(fig)
        saved['family_growth'] = path

    return saved
