"""
pytest共通フィクスチャ

weighted-upto-coreパッケージのテスト用フィクスチャ定義。
"""

import random
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Optional, Sequence

import pytest

from weighted_upto.base.config import UptoConfig
from weighted_upto.core.automata import WeightedAutomaton
from weighted_upto.core.bench import exp_family
from weighted_upto.core.linalg import Vector, make_matrix, make_vector
from weighted_upto.core.semiring import INF, SemiringId
from weighted_upto.core.spath import WeightedDigraph


# =============================================================================
# テスト用の具象ConfigクラスをMockとして作成
# =============================================================================

class MockUptoConfig(UptoConfig):
    """テスト用のモック設定クラス"""

    def __init__(
        self,
        output_dir: Path = None,
        fuel: int = 10 ** 6,
        rewrite_fuel: int = 10 ** 6,
        strategy: str = 'round-robin',
        encoding: str = 'utf-8',
        percentiles: Sequence[int] = (50, 90, 99),
        figure_settings: Dict[str, Any] = None
    ):
        self._output_dir = output_dir or Path('/tmp/test_output')
        self._fuel = fuel
        self._rewrite_fuel = rewrite_fuel
        self._strategy = strategy
        self._encoding = encoding
        self._percentiles = tuple(percentiles)
        self._figure_settings = figure_settings or {'figsize': (8, 5), 'dpi': 72}

    @property
    def output_dir(self) -> Path:
        return self._output_dir

    @property
    def fuel(self) -> int:
        return self._fuel

    @property
    def rewrite_fuel(self) -> int:
        return self._rewrite_fuel

    @property
    def strategy(self) -> str:
        return self._strategy

    @property
    def encoding(self) -> str:
        return self._encoding

    @property
    def percentiles(self):
        return self._percentiles

    @property
    def figure_settings(self) -> Dict[str, Any]:
        return self._figure_settings


# =============================================================================
# ヘルパー
# =============================================================================

TROP = SemiringId.TROPICAL_NAT
BOOL = SemiringId.BOOLEAN


def tvec(*entries) -> Vector:
    """トロピカル（自然数）ベクトル"""
    return make_vector(TROP, entries)


def bvec(*entries) -> Vector:
    """ブールベクトル（0/1）"""
    return make_vector(BOOL, entries)


def make_automaton(ident, output, trans: Dict[str, Sequence[Sequence]]) -> WeightedAutomaton:
    """ネストしたリストからオートマトンを作る"""
    return WeightedAutomaton(
        semiring=SemiringId(ident),
        n=len(output),
        alphabet=tuple(trans),
        output=make_vector(ident, output),
        trans={sym: make_matrix(ident, rows) for sym, rows in trans.items()},
    )


def random_boolean_automaton(rng: random.Random, n: int, k: Optional[int] = None) -> WeightedAutomaton:
    """ランダムなブールオートマトン"""
    k = k or rng.randint(1, 2)
    syms = [chr(ord('a') + i) for i in range(k)]
    return make_automaton(
        BOOL,
        [rng.random() < 0.4 for _ in range(n)],
        {s: [[rng.random() < 0.35 for _ in range(n)] for _ in range(n)] for s in syms},
    )


def random_tropical_automaton(
    rng: random.Random,
    n: int,
    k: Optional[int] = None,
    max_weight: int = 5,
    edge_prob: float = 0.6
) -> WeightedAutomaton:
    """ランダムなトロピカル（自然数）オートマトン"""
    k = k or rng.randint(1, 2)
    syms = [chr(ord('a') + i) for i in range(k)]

    def draw():
        return rng.randint(0, max_weight) if rng.random() < edge_prob else INF

    return make_automaton(
        TROP,
        [draw() for _ in range(n)],
        {s: [[draw() for _ in range(n)] for _ in range(n)] for s in syms},
    )


# l-モノイド4種（有理数体を除く）
LMONOID_IDS = (
    SemiringId.TROPICAL_NAT,
    SemiringId.TROPICAL_REAL,
    SemiringId.MAXTIMES,
    SemiringId.BOOLEAN,
)


def random_payload(rng: random.Random, ident: SemiringId):
    """
    半環ごとの小さなランダムスカラー

    tropical-real は 1/2 刻み、max-times は 0 と 2 の冪に限る。
    """
    ident = SemiringId(ident)
    if ident is SemiringId.BOOLEAN:
        return rng.randint(0, 1)
    if ident is SemiringId.TROPICAL_NAT:
        return rng.randint(0, 5) if rng.random() < 0.6 else INF
    if ident is SemiringId.TROPICAL_REAL:
        return Fraction(rng.randint(0, 10), 2) if rng.random() < 0.6 else INF
    if ident is SemiringId.MAXTIMES:
        return rng.choice((Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(1)))
    return Fraction(rng.randint(-3, 3), rng.randint(1, 2))


def random_vector(rng: random.Random, ident: SemiringId, dim: int) -> Vector:
    return make_vector(ident, [random_payload(rng, ident) for _ in range(dim)])


def random_automaton(rng: random.Random, ident: SemiringId, n: int, k: Optional[int] = None) -> WeightedAutomaton:
    """任意の半環のランダムなオートマトン"""
    k = k or rng.randint(1, 2)
    syms = [chr(ord('a') + i) for i in range(k)]
    return make_automaton(
        ident,
        [random_payload(rng, ident) for _ in range(n)],
        {s: [[random_payload(rng, ident) for _ in range(n)] for _ in range(n)] for s in syms},
    )


# =============================================================================
# フィクスチャ定義
# =============================================================================

@pytest.fixture
def mock_config(tmp_path):
    """基本的なモック設定"""
    return MockUptoConfig(output_dir=tmp_path / 'output')


@pytest.fixture
def rewriting_example():
    """2次元トロピカルの書き換え例: R = {((∞,0), (0,∞))}"""
    return tvec(INF, 0), tvec(0, INF)


@pytest.fixture
def appendix_graph():
    """3頂点の最短経路の例題グラフ"""
    return WeightedDigraph.from_rows([
        [0, 3, 2],
        [INF, 0, 5],
        [1, 7, 0],
    ])


@pytest.fixture
def single_loop():
    """単一状態・a ループ重み1・出力0のトロピカルオートマトン"""
    return make_automaton(TROP, [0], {'a': [[1]]})


@pytest.fixture
def family4():
    """鎖の長さ4の例題族"""
    return exp_family(4)


@pytest.fixture
def automaton_text():
    """2状態トロピカルオートマトンのテキスト形式"""
    return (
        "# 2状態の例\n"
        "semiring tropical-nat\n"
        "states 2\n"
        "alphabet a b\n"
        "output 0 inf\n"
        "trans a\n"
        "1 inf\n"
        "inf 0\n"
        "trans b\n"
        "inf 2\n"
        "0 inf\n"
    )


@pytest.fixture
def graph_text():
    """3頂点の例題グラフのテキスト形式"""
    return (
        "graph\n"
        "vertices 3\n"
        "0 3 2\n"
        "inf 0 5\n"
        "1 7 0\n"
    )
