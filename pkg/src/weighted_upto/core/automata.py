"""
重み付きオートマトンモジュール

オートマトン (X, o, t) の定義、言語の意味論、閾値問題への帰着（閾値状態の追加）、
抽象化写像、および総当たりの言語表（テスト用オラクル）を提供。

語は内部ではアルファベットの添字のタプルで表し、入出力でのみ記号列に変換する。
"""

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from weighted_upto.base.config import DEFAULT_TABLE_CAP
from weighted_upto.core.linalg import (
    Matrix,
    Vector,
    dot,
    lift,
    mat_apply,
    unit_vector,
)
from weighted_upto.core.semiring import INF, SemiringId, SemiringValue, get_semiring, leq
from weighted_upto.errors import ParseError, UsageError

Word = Tuple[int, ...]
Symbol = Union[str, int]


# =============================================================================
# データ型
# =============================================================================

@dataclass(frozen=True)
class WeightedAutomaton:
    """
    重み付きオートマトン（構築後は不変）

    Attributes:
        semiring: 半環ID
        n: 状態数
        alphabet: 記号のタプル（順序付き）
        output: 出力ベクトル o（次元 n）
        trans: 記号 → 遷移行列 t_a（trans[a].entries[src][dst]）
    """

    semiring: SemiringId
    n: int
    alphabet: Tuple[str, ...]
    output: Vector
    trans: Mapping[str, Matrix] = field(default_factory=dict)

    def __post_init__(self):
        if self.n <= 0:
            raise UsageError(f"状態数は正の整数で指定してください: {self.n}")
        if len(set(self.alphabet)) != len(self.alphabet):
            raise UsageError(f"アルファベットに重複があります: {' '.join(self.alphabet)}")
        if self.output.semiring is not self.semiring:
            raise UsageError(f"出力ベクトルの半環が異なります: {self.output.semiring.value}")
        if self.output.dim != self.n:
            raise UsageError(f"出力ベクトルの次元が一致しません: {self.output.dim} != {self.n}")
        for sym in self.alphabet:
            if sym not in self.trans:
                raise UsageError(f"記号 {sym} の遷移行列がありません")
            m = self.trans[sym]
            if m.semiring is not self.semiring or m.dim != self.n:
                raise UsageError(f"記号 {sym} の遷移行列の半環または次元が一致しません")
        extra = set(self.trans) - set(self.alphabet)
        if extra:
            raise UsageError(f"アルファベットにない記号の遷移行列があります: {' '.join(sorted(extra))}")

    def symbol_index(self, sym: Symbol) -> int:
        """記号（または添字）をアルファベットの添字に変換"""
        if isinstance(sym, int):
            if not 0 <= sym < len(self.alphabet):
                raise UsageError(f"記号の添字が範囲外です: {sym}")
            return sym
        try:
            return self.alphabet.index(sym)
        except ValueError:
            raise UsageError(f"未知の記号: {sym}")

    def matrix(self, sym: Symbol) -> Matrix:
        return self.trans[self.alphabet[self.symbol_index(sym)]]

    def check_vector(self, v: Vector) -> None:
        """ベクトルがオートマトンと同じ半環・次元か検証"""
        if v.semiring is not self.semiring:
            raise UsageError(f"半環が一致しません: ベクトル {v.semiring.value} != オートマトン {self.semiring.value}")
        if v.dim != self.n:
            raise UsageError(f"次元が一致しません: ベクトル {v.dim} != 状態数 {self.n}")


@dataclass(frozen=True)
class LanguageTable:
    """
    長さ max_length 以下の全ての語についての重みの表

    Attributes:
        entries: 語（添字タプル）→ 重み
        max_length: 語長の上限 L
        alphabet: 記号のタプル
    """

    entries: Dict[Word, SemiringValue]
    max_length: int
    alphabet: Tuple[str, ...]

    def __len__(self) -> int:
        return len(self.entries)

    def weight(self, word: Word) -> SemiringValue:
        return self.entries[tuple(word)]

    def words(self, length: Optional[int] = None) -> List[Word]:
        """語の一覧（length 指定時はその長さのみ）"""
        return [w for w in self.entries if length is None or len(w) == length]


# =============================================================================
# 意味論
# =============================================================================

def step(A: WeightedAutomaton, sym: Symbol, v: Vector) -> Vector:
    """
    1文字の遷移 t_a(v)

    Args:
        A: オートマトン
        sym: 記号（文字列または添字）
        v: 状態重みベクトル

    Returns:
        Vector: 遷移後のベクトル
    """
    A.check_vector(v)
    return mat_apply(A.matrix(sym), v)


def output(A: WeightedAutomaton, v: Vector) -> SemiringValue:
    """出力 o(v) = ⊕_x o[x]·v[x]"""
    A.check_vector(v)
    return dot(A.output, v)


def state_weights(A: WeightedAutomaton, v: Vector, word: Sequence[Symbol]) -> Vector:
    """語を読んだ後の状態重みベクトル（出力を掛ける前）"""
    for sym in word:
        v = step(A, sym, v)
    A.check_vector(v)
    return v


def language_weight(A: WeightedAutomaton, v: Vector, word: Sequence[Symbol]) -> SemiringValue:
    """
    語の重み ⟦v⟧(w)

    Args:
        A: オートマトン
        v: 初期ベクトル
        word: 記号（または添字）の列

    Returns:
        SemiringValue: 重み

    Example:
        単一状態・a ループ重み2・出力0のトロピカルオートマトンで
        language_weight(A, e1, 'aa') は 4
    """
    return output(A, state_weights(A, v, word))


def brute_language_table(
    A: WeightedAutomaton,
    v: Vector,
    max_length: int,
    cap: int = DEFAULT_TABLE_CAP
) -> LanguageTable:
    """
    長さ max_length 以下の全ての語の重みを幅優先で計算

    Args:
        A: オートマトン
        v: 初期ベクトル
        max_length: 語長の上限 L
        cap: 表のエントリ数の上限

    Returns:
        LanguageTable: Σ_{k≤L} |A|^k 個のエントリを持つ表

    Raises:
        UsageError: エントリ数が cap を超える場合
    """
    if max_length < 0:
        raise UsageError(f"語長の上限は0以上で指定してください: {max_length}")
    k = len(A.alphabet)
    total = sum(k ** i for i in range(max_length + 1))
    if total > cap:
        raise UsageError(f"言語表が大きすぎます: {total} エントリ > 上限 {cap}")

    A.check_vector(v)
    entries: Dict[Word, SemiringValue] = {(): output(A, v)}
    frontier: List[Tuple[Word, Vector]] = [((), v)]
    for _ in range(max_length):
        nxt = []
        for word, vec in frontier:
            for a in range(k):
                succ = mat_apply(A.trans[A.alphabet[a]], vec)
                w = word + (a,)
                entries[w] = dot(A.output, succ)
                nxt.append((w, succ))
        frontier = nxt
    return LanguageTable(entries=entries, max_length=max_length, alphabet=A.alphabet)


# =============================================================================
# 閾値問題
# =============================================================================

def require_tropical_nat(ident: SemiringId) -> None:
    if ident is not SemiringId.TROPICAL_NAT:
        raise UsageError(f"閾値問題はトロピカル半環（自然数）でのみ扱えます: {ident.value}")


def extend_with_threshold_state(A: WeightedAutomaton, threshold: int) -> Tuple[WeightedAutomaton, Vector]:
    """
    閾値状態 t を末尾に追加したオートマトンを作る

    t は出力 T と各記号の重み0の自己ループのみを持つので、⟦e_t⟧(w) = T。

    Args:
        A: トロピカル（自然数）オートマトン
        threshold: 閾値 T

    Returns:
        tuple: (状態数 n+1 のオートマトン, 単位ベクトル e_t)
    """
    require_tropical_nat(A.semiring)
    s = get_semiring(A.semiring)
    T = s.canonical(threshold)
    n = A.n + 1
    trans = {}
    for sym in A.alphabet:
        rows = [row + (s.zero,) for row in A.trans[sym].entries]
        rows.append((s.zero,) * A.n + (s.one,))
        trans[sym] = Matrix(A.semiring, tuple(rows))
    extended = WeightedAutomaton(
        semiring=A.semiring,
        n=n,
        alphabet=A.alphabet,
        output=lift(A.output, [T]),
        trans=trans,
    )
    return extended, unit_vector(A.semiring, n, n - 1)


def abstraction(v: Vector, threshold: int) -> Vector:
    """
    抽象化 𝒜: T を超える成分を ∞ に置き換える

    Args:
        v: トロピカル（自然数）ベクトル
        threshold: 閾値 T

    Returns:
        Vector: 抽象化されたベクトル
    """
    require_tropical_nat(v.semiring)
    return Vector(v.semiring, tuple(x if x <= threshold else INF for x in v.entries))


def lift_vector(v: Vector, extra: int = 1) -> Vector:
    """ベクトルの末尾に零元（トロピカルでは ∞）を extra 個追加する"""
    return lift(v, [get_semiring(v.semiring).zero] * extra)


# =============================================================================
# 語の入出力
# =============================================================================

def format_word(A: WeightedAutomaton, word: Iterable[int]) -> str:
    """添字の語を空白区切りの記号列に変換（空語は空文字列）"""
    return ' '.join(A.alphabet[a] for a in word)


def parse_word(A: WeightedAutomaton, text: str) -> Word:
    """
    空白区切りの記号列を添字の語に変換

    Raises:
        ParseError: 未知の記号（code='unknown-symbol'）
    """
    word = []
    column = 1
    for token in text.split(' '):
        if token:
            if token not in A.alphabet:
                raise ParseError('unknown-symbol', f"未知の記号: {token}", 1, column)
            word.append(A.alphabet.index(token))
        column += len(token) + 1
    return tuple(word)


# =============================================================================
# 反例の事後検証
# =============================================================================

def check_equivalence_witness(A: WeightedAutomaton, v1: Vector, v2: Vector, word: Sequence[Symbol]) -> bool:
    """語 word 上で ⟦v1⟧ と ⟦v2⟧ が異なれば True"""
    return language_weight(A, v1, word) != language_weight(A, v2, word)


def check_inclusion_witness(A: WeightedAutomaton, v1: Vector, v2: Vector, word: Sequence[Symbol]) -> bool:
    """語 word 上で ⟦v1⟧(w) ⋢ ⟦v2⟧(w) なら True"""
    return not leq(language_weight(A, v1, word), language_weight(A, v2, word))


def check_threshold_witness(A: WeightedAutomaton, v: Vector, threshold: int, word: Sequence[Symbol]) -> bool:
    """語 word 上で ⟦v⟧(w) > T なら True"""
    require_tropical_nat(A.semiring)
    return language_weight(A, v, word).payload > threshold
