"""
最短経路モジュール

有向重み付きグラフの単一始点最短経路を、頂点ごとの書き換え規則
e_i ↦ v_i の正規形として求める。検証用に scipy の Dijkstra 法も提供。
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Tuple

import numpy as np
from scipy.sparse.csgraph import csgraph_from_dense, dijkstra

from weighted_upto.base.config import DEFAULT_REWRITE_FUEL, DEFAULT_STRATEGY
from weighted_upto.core.congruence import RewriteSystem, normal_form
from weighted_upto.core.linalg import Vector, unit_vector
from weighted_upto.core.semiring import INF, SemiringId, get_semiring
from weighted_upto.errors import UsageError


@dataclass(frozen=True)
class WeightedDigraph:
    """
    有向重み付きグラフ

    weight[i][j] は辺 i → j の重み（辺がなければ ∞）。
    全ての頂点は重み0の自己ループを持つ（対角成分は0）。

    Attributes:
        n: 頂点数
        weight: 重みの正方配列（トロピカルのペイロード）
        semiring: 'tropical-nat' または 'tropical-real'
    """

    n: int
    weight: Tuple[Tuple, ...]
    semiring: SemiringId = SemiringId.TROPICAL_NAT

    def __post_init__(self):
        if self.semiring not in (SemiringId.TROPICAL_NAT, SemiringId.TROPICAL_REAL):
            raise UsageError(f"グラフの重みはトロピカル半環で指定してください: {self.semiring.value}")
        if self.n <= 0 or len(self.weight) != self.n:
            raise UsageError(f"頂点数と重み配列の行数が一致しません: {self.n} != {len(self.weight)}")
        for i, row in enumerate(self.weight):
            if len(row) != self.n:
                raise UsageError(f"重み配列が正方ではありません: 行{i + 1}の長さ {len(row)} != {self.n}")
            if row[i] != 0:
                raise UsageError(f"対角成分は0にしてください: 頂点{i + 1}の自己ループ {row[i]}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], semiring: SemiringId = SemiringId.TROPICAL_NAT) -> 'WeightedDigraph':
        """重みの行リストからグラフを作る（値は正規化される）"""
        s = get_semiring(semiring)
        weight = tuple(tuple(s.canonical(x) for x in row) for row in rows)
        return cls(n=len(weight), weight=weight, semiring=SemiringId(semiring))

    @classmethod
    def from_arcs(
        cls,
        n: int,
        arcs: Iterable[Tuple[int, int, int]],
        semiring: SemiringId = SemiringId.TROPICAL_NAT
    ) -> 'WeightedDigraph':
        """
        辺のリストからグラフを作る

        Args:
            n: 頂点数
            arcs: (始点, 終点, 重み) の列（頂点は1始まり、重複時は小さい方）
            semiring: トロピカル半環のID

        Returns:
            WeightedDigraph: 対角成分0のグラフ
        """
        rows = [[0 if i == j else INF for j in range(n)] for i in range(n)]
        for src, dst, w in arcs:
            if not (1 <= src <= n and 1 <= dst <= n):
                raise UsageError(f"頂点が範囲外です: {src} → {dst}（1〜{n}）")
            rows[src - 1][dst - 1] = min(rows[src - 1][dst - 1], w)
        return cls.from_rows(rows, semiring)

    def to_dense(self) -> np.ndarray:
        return np.array([[float(x) for x in row] for row in self.weight], dtype=float)


def graph_rules(
    G: WeightedDigraph,
    fuel: int = DEFAULT_REWRITE_FUEL,
    strategy: str = DEFAULT_STRATEGY
) -> RewriteSystem:
    """
    頂点ごとの書き換え規則 e_i ↦ v_i（v_i[j] = weight[i][j]）

    後続のない頂点の規則は lhs = rhs となるので除外される。

    Args:
        G: グラフ
        fuel: 書き換えステップ上限
        strategy: 書き換え戦略

    Returns:
        RewriteSystem: |V| 本以下の規則を持つ書き換え系
    """
    rs = RewriteSystem(mode='symmetric', fuel=fuel, strategy=strategy, semiring=G.semiring, dim=G.n)
    for i, row in enumerate(G.weight):
        rs.add_rule(unit_vector(G.semiring, G.n, i), Vector(G.semiring, tuple(row)))
    return rs


def _check_source(G: WeightedDigraph, source: int) -> None:
    if not 1 <= source <= G.n:
        raise UsageError(f"始点が範囲外です: {source}（1〜{G.n}）")


def solve_shortest_paths(
    G: WeightedDigraph,
    source: int,
    fuel: int = DEFAULT_REWRITE_FUEL,
    strategy: str = DEFAULT_STRATEGY
) -> Tuple[Vector, RewriteSystem]:
    """
    最短経路長と、計算に使った書き換え系（規則数・ステップ数の参照用）

    Args:
        G: グラフ
        source: 始点（1始まり）
        fuel: 書き換えステップ上限
        strategy: 書き換え戦略

    Returns:
        tuple: (⇓e_source, 書き換え系)
    """
    _check_source(G, source)
    rs = graph_rules(G, fuel=fuel, strategy=strategy)
    return normal_form(unit_vector(G.semiring, G.n, source - 1), rs), rs


def shortest_paths(
    G: WeightedDigraph,
    source: int,
    fuel: int = DEFAULT_REWRITE_FUEL,
    strategy: str = DEFAULT_STRATEGY
) -> Vector:
    """
    始点 source からの最短経路長 ⇓e_source

    Args:
        G: グラフ
        source: 始点（1始まり）
        fuel: 書き換えステップ上限
        strategy: 書き換え戦略（'greedy' は乗数の小さい頂点から展開する）

    Returns:
        Vector: 成分 j が source → j の最短経路長（到達不能なら ∞）

    Example:
        3頂点の例で source=3 なら (1, 4, 0)
    """
    dist, _ = solve_shortest_paths(G, source, fuel=fuel, strategy=strategy)
    return dist


def reference_shortest_paths(G: WeightedDigraph, source: int) -> Tuple:
    """
    scipy の Dijkstra 法による最短経路長（検証用）

    Args:
        G: グラフ
        source: 始点（1始まり）

    Returns:
        tuple: 正規化済みペイロードのタプル
    """
    _check_source(G, source)
    graph = csgraph_from_dense(G.to_dense(), null_value=np.inf)
    dist = dijkstra(graph, directed=True, indices=source - 1)
    if G.semiring is SemiringId.TROPICAL_NAT:
        return tuple(INF if np.isinf(d) else int(d) for d in dist)
    return tuple(INF if np.isinf(d) else Fraction(d).limit_denominator(10 ** 6) for d in dist)
