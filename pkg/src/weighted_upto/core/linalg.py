"""
線形代数モジュール

半環上の密ベクトル・密行列。各点の結び、スカラー倍、行列の適用、
ベクトル剰余、ベクトル順序を提供。
"""

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence, Tuple

from weighted_upto.core.semiring import (
    SemiringId,
    SemiringValue,
    get_semiring,
    value,
)
from weighted_upto.errors import UsageError


# =============================================================================
# データ型
# =============================================================================

@dataclass(frozen=True)
class Vector:
    """
    半環上のベクトル（不変・ハッシュ可能）

    Attributes:
        semiring: 半環ID
        entries: 正規化済みペイロードのタプル（状態の順）
    """

    semiring: SemiringId
    entries: Tuple

    @property
    def dim(self) -> int:
        return len(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, index: int) -> SemiringValue:
        return SemiringValue(self.semiring, self.entries[index])

    def values(self) -> Iterator[SemiringValue]:
        for x in self.entries:
            yield SemiringValue(self.semiring, x)


@dataclass(frozen=True)
class Matrix:
    """
    半環上の正方行列

    entries[src][dst] が src → dst の重み。

    Attributes:
        semiring: 半環ID
        entries: 行（遷移元）ごとのペイロードのタプル
    """

    semiring: SemiringId
    entries: Tuple[Tuple, ...]

    @property
    def dim(self) -> int:
        return len(self.entries)

    def row(self, src: int) -> Vector:
        return Vector(self.semiring, self.entries[src])


# =============================================================================
# コンストラクタ
# =============================================================================

def make_vector(ident: SemiringId, payloads: Iterable) -> Vector:
    """
    ペイロード列を検証・正規化してベクトルを作る

    Args:
        ident: 半環ID
        payloads: スカラーの列（SemiringValue も可）

    Returns:
        Vector: 正規化されたベクトル
    """
    ident = SemiringId(ident)
    entries = []
    for x in payloads:
        if isinstance(x, SemiringValue):
            if x.semiring is not ident:
                raise UsageError(f"異なる半環の元が含まれています: {x.semiring.value}")
            x = x.payload
        entries.append(value(ident, x).payload)
    if not entries:
        raise UsageError("次元0のベクトルは作れません")
    return Vector(ident, tuple(entries))


def make_matrix(ident: SemiringId, rows: Sequence[Sequence]) -> Matrix:
    """
    行のリストを検証・正規化して正方行列を作る

    Args:
        ident: 半環ID
        rows: rows[src][dst] のネストしたリスト

    Returns:
        Matrix: 正方行列
    """
    n = len(rows)
    if n == 0:
        raise UsageError("次元0の行列は作れません")
    normalized = []
    for src, row in enumerate(rows):
        if len(row) != n:
            raise UsageError(f"正方行列ではありません: 行{src + 1}の長さ {len(row)} != {n}")
        normalized.append(make_vector(ident, row).entries)
    return Matrix(SemiringId(ident), tuple(normalized))


def zero_vector(ident: SemiringId, n: int) -> Vector:
    """零ベクトル（全成分が加法単位元）"""
    if n <= 0:
        raise UsageError(f"次元は正の整数で指定してください: {n}")
    ident = SemiringId(ident)
    return Vector(ident, (get_semiring(ident).zero,) * n)


def unit_vector(ident: SemiringId, n: int, index: int) -> Vector:
    """
    単位ベクトル e_index（0始まり）

    Args:
        ident: 半環ID
        n: 次元
        index: 1 を置く位置（0始まり）

    Returns:
        Vector: 単位ベクトル
    """
    if not 0 <= index < n:
        raise UsageError(f"単位ベクトルの位置が範囲外です: {index + 1}（1〜{n}）")
    s = get_semiring(ident)
    entries = [s.zero] * n
    entries[index] = s.one
    return Vector(SemiringId(ident), tuple(entries))


def identity_matrix(ident: SemiringId, n: int) -> Matrix:
    """単位行列"""
    return Matrix(SemiringId(ident), tuple(unit_vector(ident, n, i).entries for i in range(n)))


def lift(v: Vector, extra: Iterable) -> Vector:
    """
    ベクトルの末尾に成分を追加する

    Args:
        v: 元のベクトル
        extra: 追加するペイロード

    Returns:
        Vector: 次元が増えたベクトル
    """
    s = get_semiring(v.semiring)
    return Vector(v.semiring, v.entries + tuple(s.canonical(x) for x in extra))


def _check(v: Vector, w: Vector) -> None:
    if v.semiring is not w.semiring:
        raise UsageError(f"異なる半環のベクトルです: {v.semiring.value} と {w.semiring.value}")
    if len(v.entries) != len(w.entries):
        raise UsageError(f"次元が一致しません: {len(v.entries)} != {len(w.entries)}")


# =============================================================================
# 演算
# =============================================================================

def vec_combine(v: Vector, w: Vector) -> Vector:
    """
    各点の加法（l-モノイドでは結び v ⊔ w）

    Args:
        v: ベクトル
        w: ベクトル

    Returns:
        Vector: 各点の combine
    """
    _check(v, w)
    add = get_semiring(v.semiring).add
    return Vector(v.semiring, tuple(add(x, y) for x, y in zip(v.entries, w.entries)))


def vec_scale(v: Vector, s: SemiringValue) -> Vector:
    """
    スカラー倍 v·s

    Args:
        v: ベクトル
        s: スカラー

    Returns:
        Vector: 各成分に s を右から掛けたベクトル
    """
    if s.semiring is not v.semiring:
        raise UsageError(f"異なる半環のスカラーです: {s.semiring.value} と {v.semiring.value}")
    mul = get_semiring(v.semiring).mul
    k = s.payload
    return Vector(v.semiring, tuple(mul(x, k) for x in v.entries))


def vec_sub(v: Vector, w: Vector) -> Vector:
    """差 v − w（有理数体のみ）"""
    _check(v, w)
    if not v.semiring.is_ring:
        raise UsageError(f"減算は環でのみ定義されます: {v.semiring.value}")
    return Vector(v.semiring, tuple(x - y for x, y in zip(v.entries, w.entries)))


def mat_apply(m: Matrix, v: Vector) -> Vector:
    """
    行列の適用 t_a(v)

    result[y] = ⊕_x v[x]·M[x][y]。単位ベクトル e_x は x の後続重みベクトルに写る。

    Args:
        m: 遷移行列（entries[src][dst]）
        v: ベクトル

    Returns:
        Vector: 適用結果
    """
    if m.semiring is not v.semiring:
        raise UsageError(f"異なる半環です: {m.semiring.value} と {v.semiring.value}")
    n = len(v.entries)
    if m.dim != n:
        raise UsageError(f"次元が一致しません: 行列 {m.dim} != ベクトル {n}")
    s = get_semiring(v.semiring)
    add, mul, z = s.add, s.mul, s.zero
    acc = [z] * n
    for x, weight in enumerate(v.entries):
        if weight == z:
            continue
        row = m.entries[x]
        for y in range(n):
            acc[y] = add(acc[y], mul(weight, row[y]))
    return Vector(v.semiring, tuple(acc))


def dot(o: Vector, v: Vector) -> SemiringValue:
    """
    行ベクトルと列ベクトルの積 ⊕_x o[x]·v[x]

    Args:
        o: 行ベクトル（出力重み）
        v: 列ベクトル

    Returns:
        SemiringValue: スカラー
    """
    _check(o, v)
    s = get_semiring(v.semiring)
    acc = s.zero
    for x, y in zip(o.entries, v.entries):
        acc = s.add(acc, s.mul(x, y))
    return SemiringValue(v.semiring, acc)


def vec_residuum(l: Vector, v: Vector) -> SemiringValue:
    """
    ベクトル剰余 l → v = ⊓_i (l[i] → v[i])

    トロピカルでは各成分の v[i] ∸ l[i] の最大値。

    Args:
        l: 書き換え規則の左辺
        v: 対象ベクトル

    Returns:
        SemiringValue: l·ℓ ⊑ v を満たす最大の ℓ
    """
    _check(l, v)
    s = get_semiring(v.semiring)
    acc = s.one
    for x, y in zip(l.entries, v.entries):
        acc = s.meet(acc, s.residuate(x, y))
    return SemiringValue(v.semiring, acc)


def vec_leq(v: Vector, w: Vector) -> bool:
    """各成分での格子順序 v ⊑ w"""
    _check(v, w)
    le = get_semiring(v.semiring).le
    return all(le(x, y) for x, y in zip(v.entries, w.entries))
