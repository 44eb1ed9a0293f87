"""
ベンチマークモジュール

ランダムなトロピカルオートマトンの生成、指数的に状態が増える例題族、
閾値判定アルゴリズム（abk / hkp_a / hkp_a_prime）の比較実行と
パーセンタイル集計を提供。

乱数は numpy の PCG64 を使用する（シードが同じなら生成結果はビット単位で一致）。
"""

import math
import time
import warnings
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
from statsmodels.stats.proportion import proportion_confint
from tqdm import tqdm

from weighted_upto.base.config import (
    DEFAULT_FUEL,
    DEFAULT_REWRITE_FUEL,
    DEFAULT_STRATEGY,
    UptoConfig,
)
from weighted_upto.base.report import ReportGenerator
from weighted_upto.core.algorithms import Answer, Verdict, abk, hkp_a, hkp_a_prime
from weighted_upto.core.automata import WeightedAutomaton
from weighted_upto.core.linalg import Matrix, Vector, unit_vector, vec_combine
from weighted_upto.core.semiring import INF, SemiringId
from weighted_upto.errors import UsageError

ALGORITHMS: Dict[str, Callable[..., Verdict]] = {
    'abk': abk,
    'hkp_a': hkp_a,
    'hkp_a_prime': hkp_a_prime,
}

CSV_COLUMNS = [
    'seed', 'n_states', 'threshold', 'algo', 'run', 'verdict',
    'runtime_ms', 'relation_size', 'sim_size', 'fuel_exhausted',
]

METRICS = ('runtime_ms', 'relation_size', 'sim_size')


# =============================================================================
# データ型
# =============================================================================

@dataclass(frozen=True)
class GenParams:
    """
    ランダム生成のパラメータ

    Attributes:
        n_states: 状態数
        threshold: 閾値 T
        edge_prob: 辺が有限の重みを持つ確率
        weight_range: 重みの範囲（両端含む）
        alphabet_range: アルファベットサイズの範囲（両端含む）
        seed: 64ビットの乱数シード
    """

    n_states: int
    threshold: int
    edge_prob: Fraction = Fraction(9, 10)
    weight_range: Tuple[int, int] = (0, 10)
    alphabet_range: Tuple[int, int] = (1, 5)
    seed: int = 0

    def __post_init__(self):
        if self.n_states <= 0:
            raise UsageError(f"状態数は正の整数で指定してください: {self.n_states}")
        if self.threshold < 0:
            raise UsageError(f"閾値は0以上で指定してください: {self.threshold}")
        if not 0 <= self.edge_prob <= 1:
            raise UsageError(f"edge_prob は0〜1の範囲で指定してください: {self.edge_prob}")
        low, high = self.weight_range
        if low < 0 or low > high:
            raise UsageError(f"weight_range が空または負です: {self.weight_range}")
        low, high = self.alphabet_range
        if low < 1 or low > high:
            raise UsageError(f"alphabet_range が空または1未満です: {self.alphabet_range}")
        if not 0 <= self.seed < 2 ** 64:
            raise UsageError(f"シードは64ビットの非負整数で指定してください: {self.seed}")


@dataclass
class BenchRow:
    """ベンチマークの1行（インスタンス×アルゴリズム）"""

    seed: int
    n_states: int
    threshold: int
    algo: str
    run: int
    verdict: str
    runtime_ms: float
    relation_size: int
    sim_size: Optional[int] = None
    fuel_exhausted: bool = False
    witness: Optional[Tuple[int, ...]] = field(default=None, compare=False)


# =============================================================================
# インスタンス生成
# =============================================================================

def _symbols(k: int) -> Tuple[str, ...]:
    return tuple(chr(ord('a') + i) for i in range(k))


def _to_payloads(drawn: np.ndarray) -> Tuple:
    return tuple(INF if x < 0 else int(x) for x in drawn)


def gen_random(p: GenParams) -> Tuple[WeightedAutomaton, Vector]:
    """
    ランダムなトロピカル（自然数）オートマトンを生成

    アルファベットサイズ、各記号の遷移行列の順に乱数を引く。
    各成分は確率 edge_prob で weight_range の一様な重み、それ以外は ∞。
    出力は全ての状態で 0、初期ベクトルも全ての状態で重み 0。

    Args:
        p: 生成パラメータ

    Returns:
        tuple: (オートマトン, 初期ベクトル ⨆ e_i)
    """
    rng = np.random.Generator(np.random.PCG64(p.seed))
    n = p.n_states
    prob = float(p.edge_prob)
    low, high = p.weight_range

    def draw(shape):
        finite = rng.random(shape) < prob
        weights = rng.integers(low, high + 1, size=shape)
        return np.where(finite, weights, -1)

    k = int(rng.integers(p.alphabet_range[0], p.alphabet_range[1] + 1))
    alphabet = _symbols(k)
    trans = {}
    for sym in alphabet:
        drawn = draw((n, n))
        trans[sym] = Matrix(SemiringId.TROPICAL_NAT, tuple(_to_payloads(row) for row in drawn))
    out = Vector(SemiringId.TROPICAL_NAT, (0,) * n)

    A = WeightedAutomaton(semiring=SemiringId.TROPICAL_NAT, n=n, alphabet=alphabet, output=out, trans=trans)
    return A, Vector(SemiringId.TROPICAL_NAT, (0,) * n)


def exp_family(n: int) -> Tuple[WeightedAutomaton, Vector]:
    """
    abk の探索空間が n について指数的に増える例題族

    状態は x, x_1..x_n, y, y_1..y_n（添字 0..n が x 側、n+1..2n+1 が y 側）。
    x は a,b の自己ループと a による x_1 への辺、x_i は a,b で x_{i+1} へ。
    y 側は b による y_1 への辺で対称。遷移の重みは全て1、出力は全て0。

    Args:
        n: 鎖の長さ

    Returns:
        tuple: (2n+2 状態のオートマトン, 初期ベクトル e_x ⊔ e_y)
    """
    if n < 1:
        raise UsageError(f"n は1以上で指定してください: {n}")
    size = 2 * n + 2
    x, y = 0, n + 1
    rows = {sym: [[INF] * size for _ in range(size)] for sym in ('a', 'b')}
    for head, entry in ((x, 'a'), (y, 'b')):
        for sym in ('a', 'b'):
            rows[sym][head][head] = 1
        rows[entry][head][head + 1] = 1
        for i in range(1, n):
            for sym in ('a', 'b'):
                rows[sym][head + i][head + i + 1] = 1

    trans = {sym: Matrix(SemiringId.TROPICAL_NAT, tuple(tuple(r) for r in m)) for sym, m in rows.items()}
    A = WeightedAutomaton(
        semiring=SemiringId.TROPICAL_NAT,
        n=size,
        alphabet=('a', 'b'),
        output=Vector(SemiringId.TROPICAL_NAT, (0,) * size),
        trans=trans,
    )
    v = vec_combine(unit_vector(SemiringId.TROPICAL_NAT, size, x), unit_vector(SemiringId.TROPICAL_NAT, size, y))
    return A, v


def instance_seed(seed: int, n_states: int, threshold: int, run: int) -> int:
    """ベンチマークのセルと実行番号からインスタンスのシードを導出"""
    state = np.random.SeedSequence([seed, n_states, threshold, run]).generate_state(1, dtype=np.uint64)
    return int(state[0])


# =============================================================================
# 実行
# =============================================================================

def _run_one(
    algo: str,
    A: WeightedAutomaton,
    v: Vector,
    threshold: int,
    fuel: int,
    rewrite_fuel: int,
    strategy: str
) -> Tuple[Verdict, float]:
    fn = ALGORITHMS[algo]
    start = time.perf_counter()
    if algo == 'abk':
        verdict = fn(A, v, threshold, fuel=fuel)
    else:
        verdict = fn(A, v, threshold, fuel=fuel, rewrite_fuel=rewrite_fuel, strategy=strategy)
    return verdict, (time.perf_counter() - start) * 1000


def _check_algos(algos: Sequence[str]) -> None:
    unknown = [a for a in algos if a not in ALGORITHMS]
    if unknown:
        raise UsageError(f"未知のアルゴリズム: {', '.join(unknown)}（{', '.join(ALGORITHMS)} のいずれかを指定）")


def _row(seed: int, n_states: int, threshold: int, algo: str, run: int,
         verdict: Verdict, runtime_ms: float) -> BenchRow:
    record = verdict.to_record()
    if record['fuel_exhausted']:
        warnings.warn(
            f"fuel が尽きました: algo={algo}, n_states={n_states}, threshold={threshold}, seed={seed}",
            UserWarning,
            stacklevel=3
        )
    return BenchRow(
        seed=seed,
        n_states=n_states,
        threshold=threshold,
        algo=algo,
        run=run,
        verdict=record['verdict'],
        runtime_ms=runtime_ms,
        relation_size=record['relation_size'],
        sim_size=record['sim_size'],
        fuel_exhausted=record['fuel_exhausted'],
        witness=verdict.witness,
    )


def run_bench(
    grid: Iterable[Tuple[int, int]],
    runs_per_cell: int,
    algos: Sequence[str] = tuple(ALGORITHMS),
    seed: int = 0,
    config: Optional[UptoConfig] = None,
    progress: bool = True
) -> Tuple[List[BenchRow], pd.DataFrame]:
    """
    (状態数, 閾値) の各セルでランダムインスタンスを生成し、各アルゴリズムを実行

    hkp_a_prime の実行時間にはシミュレーションの前計算を含む。

    Args:
        grid: (n_states, threshold) の列
        runs_per_cell: セルあたりのインスタンス数
        algos: 実行するアルゴリズム名
        seed: 基準シード（インスタンスのシードはここから導出）
        config: UptoConfig（fuel・戦略・生成パラメータ・パーセンタイルを使用）
        progress: tqdm のプログレスバーを表示するか

    Returns:
        tuple: (BenchRow のリスト, summarize() の集計表)
    """
    _check_algos(algos)
    if runs_per_cell <= 0:
        raise UsageError(f"runs は正の整数で指定してください: {runs_per_cell}")
    grid = list(grid)
    fuel = config.fuel if config else DEFAULT_FUEL
    rewrite_fuel = config.rewrite_fuel if config else DEFAULT_REWRITE_FUEL
    strategy = config.strategy if config else DEFAULT_STRATEGY
    percentiles = config.percentiles if config else (50, 90, 99)

    rows: List[BenchRow] = []
    with tqdm(total=len(grid) * runs_per_cell, desc='bench', disable=not progress) as bar:
        for n_states, threshold in grid:
            for run in range(runs_per_cell):
                s = instance_seed(seed, n_states, threshold, run)
                params = (config.gen_params(n_states, threshold, s) if config
                          else GenParams(n_states=n_states, threshold=threshold, seed=s))
                A, v = gen_random(params)
                for algo in algos:
                    verdict, ms = _run_one(algo, A, v, threshold, fuel, rewrite_fuel, strategy)
                    rows.append(_row(s, n_states, threshold, algo, run, verdict, ms))
                bar.update(1)

    return rows, summarize(rows, percentiles)


def run_exp_family(
    ns: Iterable[int] = range(2, 9),
    algos: Sequence[str] = tuple(ALGORITHMS),
    config: Optional[UptoConfig] = None,
    progress: bool = True
) -> List[BenchRow]:
    """
    指数的な例題族で閾値 T=n の判定を各アルゴリズムで実行

    Args:
        ns: 鎖の長さ n の列
        algos: 実行するアルゴリズム名
        config: UptoConfig（fuel・戦略を使用）
        progress: tqdm のプログレスバーを表示するか

    Returns:
        list: BenchRow のリスト（n_states=2n+2, threshold=n, run=n）
    """
    _check_algos(algos)
    fuel = config.fuel if config else DEFAULT_FUEL
    rewrite_fuel = config.rewrite_fuel if config else DEFAULT_REWRITE_FUEL
    strategy = config.strategy if config else DEFAULT_STRATEGY

    rows = []
    for n in tqdm(list(ns), desc='family', disable=not progress):
        A, v = exp_family(n)
        for algo in algos:
            verdict, ms = _run_one(algo, A, v, n, fuel, rewrite_fuel, strategy)
            rows.append(_row(0, A.n, n, algo, n, verdict, ms))
    return rows


# =============================================================================
# 集計
# =============================================================================

def percentile_nearest_rank(values: Sequence[float], p: float) -> float:
    """
    最近順位法のパーセンタイル

    昇順に並べた標本の ⌈p/100 · n⌉ 番目（1始まり）の値。

    Args:
        values: 標本
        p: パーセンタイル（0 < p ≤ 100）

    Returns:
        float: パーセンタイル値

    Example:
        percentile_nearest_rank(range(1, 101), 90) は 90
    """
    if not 0 < p <= 100:
        raise UsageError(f"パーセンタイルは0より大きく100以下で指定してください: {p}")
    data = np.sort(np.asarray(list(values), dtype=float))
    if data.size == 0:
        raise UsageError("空の標本のパーセンタイルは計算できません")
    rank = math.ceil(Fraction(str(p)) * data.size / 100)
    return float(data[max(rank, 1) - 1])


def rows_to_frame(rows: Sequence[BenchRow]) -> pd.DataFrame:
    """BenchRow のリストを CSV と同じカラム順の DataFrame に変換"""
    df = pd.DataFrame([asdict(r) for r in rows], columns=CSV_COLUMNS + ['witness'])
    df = df[CSV_COLUMNS].copy()
    df['sim_size'] = df['sim_size'].astype('Int64')
    return df


def summarize(rows: Sequence[BenchRow], percentiles: Sequence[int] = (50, 90, 99)) -> pd.DataFrame:
    """
    (セル, アルゴリズム, 指標) ごとのパーセンタイル集計

    fuel が尽きた実行は集計から除き、件数を fuel_exhausted 列に残す。

    Args:
        rows: BenchRow のリスト
        percentiles: 報告するパーセンタイル

    Returns:
        pd.DataFrame: n_states, threshold, algo, metric, count, fuel_exhausted, p50, ...
    """
    columns = ['n_states', 'threshold', 'algo', 'metric', 'count', 'fuel_exhausted'] + [f"p{p}" for p in percentiles]
    if not rows:
        return pd.DataFrame(columns=columns)

    df = rows_to_frame(rows)
    records = []
    for (n_states, threshold, algo), group in df.groupby(['n_states', 'threshold', 'algo'], sort=True):
        exhausted = int(group['fuel_exhausted'].sum())
        done = group[~group['fuel_exhausted']]
        for metric in METRICS:
            values = done[metric].dropna()
            if values.empty:
                continue
            record = {
                'n_states': n_states,
                'threshold': threshold,
                'algo': algo,
                'metric': metric,
                'count': len(values),
                'fuel_exhausted': exhausted,
            }
            for p in percentiles:
                record[f"p{p}"] = percentile_nearest_rank(values.astype(float).tolist(), p)
            records.append(record)
    return pd.DataFrame(records, columns=columns)


def true_rate(rows: Sequence[BenchRow], algo: Optional[str] = None, alpha: float = 0.05) -> Dict[str, Any]:
    """
    TRUE と判定された割合と Wilson 信頼区間

    Args:
        rows: BenchRow のリスト
        algo: 対象アルゴリズム（省略時は最初の行のアルゴリズム）
        alpha: 有意水準

    Returns:
        dict: rate, low, high, level（信頼水準）, n_true, n
    """
    if not rows:
        raise UsageError("集計対象の行がありません")
    algo = algo or rows[0].algo
    decided = [r for r in rows if r.algo == algo and not r.fuel_exhausted]
    n = len(decided)
    if n == 0:
        raise UsageError(f"判定が完了した行がありません: {algo}")
    n_true = sum(1 for r in decided if r.verdict == Answer.TRUE.value)
    low, high = proportion_confint(n_true, n, alpha=alpha, method='wilson')
    return {
        'rate': n_true / n,
        'low': float(low),
        'high': float(high),
        'level': 1 - alpha,
        'n_true': n_true,
        'n': n,
    }


def write_bench_csv(rows: Sequence[BenchRow], path: Path) -> Path:
    """
    ベンチマーク結果を CSV に保存（UTF-8、LF 改行、sim_size がなければ空欄）

    Args:
        rows: BenchRow のリスト
        path: 保存先

    Returns:
        Path: 保存先パス
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    df = rows_to_frame(rows)
    df['fuel_exhausted'] = df['fuel_exhausted'].map({True: 'true', False: 'false'})
    df.to_csv(path, index=False, encoding='utf-8', lineterminator='\n', na_rep='', float_format='%.3f')
    return path


# =============================================================================
# レポート
# =============================================================================

class BenchReportGenerator(ReportGenerator):
    """
    ベンチマーク結果の Markdown レポート

    セルとアルゴリズムごとに |R|/|P| と |⪯| のパーセンタイルを並べ、
    TRUE 率と中央値の比較を所見として添える。
    """

    def generate_summary(self, results: Dict[str, Any]) -> str:
        """
        Args:
            results: {'summary': summarize() の表, 'rates': アルゴリズム → true_rate() の辞書}

        Returns:
            str: Markdown テキスト
        """
        summary: pd.DataFrame = results['summary']
        rates: Dict[str, Dict[str, Any]] = results.get('rates', {})
        pcols = [f"p{p}" for p in self.config.percentiles]

        lines = ['# ベンチマーク結果', '']
        for metric, title in (('relation_size', '|R| / |P|'),
                              ('sim_size', '|⪯|'),
                              ('runtime_ms', '実行時間 (ms)')):
            part = summary[summary['metric'] == metric]
            if part.empty:
                continue
            lines += [f"## {title}", '']
            lines.append(self.format_table(part, ['n_states', 'threshold', 'algo', 'count', 'fuel_exhausted'] + pcols))

        if rates:
            lines += ['## TRUE 率', '']
            for algo, r in rates.items():
                lines.append('- ' + self.format_rate(algo, r['rate'], r['low'], r['high'], r['level']) + f"（n={r['n']}）")
            lines.append('')

        findings = self.generate_findings(summary)
        if findings:
            lines += ['## 所見', '', findings]
        return '\n'.join(lines)

    def generate_findings(self, summary: pd.DataFrame) -> str:
        """セルごとに |R| の中央値が最小のアルゴリズムを挙げる"""
        part = summary[summary['metric'] == 'relation_size']
        if part.empty or 'p50' not in part.columns:
            return ''
        lines = []
        for (n_states, threshold), cell in part.groupby(['n_states', 'threshold'], sort=True):
            ordered = cell.sort_values('p50')
            medians = ', '.join(f"{r.algo}={r.p50:.0f}" for r in ordered.itertuples())
            lines.append(f"- (|X|={n_states}, T={threshold}): 中央値 {medians}（最小: {ordered.iloc[0]['algo']}）")
        return '\n'.join(lines) + '\n'
