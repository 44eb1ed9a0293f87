"""
合同閉包モジュール

関係 R の合同閉包 c(R)・前合同閉包 p(R) の所属判定を提供。
l-モノイドでは書き換え規則による正規形の比較、有理数体では
差ベクトルの張る部分空間への所属（厳密ガウス消去）で判定する。
"""

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from weighted_upto.base.config import DEFAULT_REWRITE_FUEL, DEFAULT_STRATEGY, STRATEGIES
from weighted_upto.core.linalg import (
    Vector,
    vec_combine,
    vec_leq,
    vec_residuum,
    vec_scale,
    vec_sub,
)
from weighted_upto.core.semiring import SemiringId, get_semiring
from weighted_upto.errors import FuelExhausted, UsageError

Pair = Tuple[Vector, Vector]

MODES = ('symmetric', 'directed')


# =============================================================================
# 書き換え系
# =============================================================================

@dataclass(frozen=True)
class RewriteRule:
    """
    書き換え規則 lhs ↦ rhs

    Attributes:
        lhs: 左辺 l
        rhs: 右辺 r（構成上 lhs ⊑ rhs）
    """

    lhs: Vector
    rhs: Vector


class RewriteSystem:
    """
    関係 R から導かれる書き換え規則の集合

    symmetric モードは c(R) 用（1ペアにつき2規則）、directed モードは
    p(R) 用（1ペアにつき1規則）。R は add_pair で少しずつ拡張でき、
    そのたびに正規形のメモが破棄される。
    """

    def __init__(
        self,
        mode: str = 'symmetric',
        fuel: int = DEFAULT_REWRITE_FUEL,
        strategy: str = DEFAULT_STRATEGY,
        seed: int = 0,
        semiring: Optional[SemiringId] = None,
        dim: Optional[int] = None
    ):
        """
        Args:
            mode: 'symmetric' または 'directed'
            fuel: 正規形計算1回あたりの書き換えステップ上限
            strategy: 規則の適用戦略（'round-robin', 'reverse', 'random', 'greedy'）
            seed: 'random' 戦略の乱数シード
            semiring: 半環ID（省略時は最初のペアから決定）
            dim: 次元（省略時は最初のペアから決定）
        """
        if mode not in MODES:
            raise UsageError(f"未対応のモード: {mode}（{', '.join(MODES)} のいずれかを指定）")
        if strategy not in STRATEGIES:
            raise UsageError(f"未対応の書き換え戦略: {strategy}（{', '.join(STRATEGIES)} のいずれかを指定）")
        if fuel <= 0:
            raise UsageError(f"fuel は正の整数で指定してください: {fuel}")
        self.mode = mode
        self.fuel = fuel
        self.strategy = strategy
        self.seed = seed
        self.semiring = SemiringId(semiring) if semiring is not None else None
        self.dim = dim
        self.rules: List[RewriteRule] = []
        self.steps = 0
        self._cache: Dict[Vector, Vector] = {}

    def __len__(self) -> int:
        return len(self.rules)

    def check_vector(self, v: Vector) -> None:
        """ベクトルが系の半環・次元と整合するか検証（未確定なら確定させる）"""
        if not v.semiring.is_lmonoid:
            raise UsageError(f"書き換えは l-モノイドでのみ使えます: {v.semiring.value}")
        if self.semiring is None:
            self.semiring = v.semiring
        elif v.semiring is not self.semiring:
            raise UsageError(f"異なる半環のベクトルです: {v.semiring.value} と {self.semiring.value}")
        if self.dim is None:
            self.dim = v.dim
        elif v.dim != self.dim:
            raise UsageError(f"次元が一致しません: {v.dim} != {self.dim}")

    def add_rule(self, lhs: Vector, rhs: Vector) -> bool:
        """
        規則を1本追加する（lhs = rhs の規則は適用不能なので捨てる）

        Returns:
            bool: 実際に追加したか
        """
        self.check_vector(lhs)
        self.check_vector(rhs)
        if lhs == rhs:
            return False
        self.rules.append(RewriteRule(lhs, rhs))
        self._cache.clear()
        return True

    def add_pair(self, v: Vector, w: Vector) -> int:
        """
        関係のペア (v, w) を規則に変換して追加する

        symmetric: v ↦ v⊔w と w ↦ v⊔w、directed: w ↦ v⊔w。

        Returns:
            int: 追加された規則の数
        """
        self.check_vector(v)
        self.check_vector(w)
        joined = vec_combine(v, w)
        added = 0
        if self.mode == 'symmetric':
            added += self.add_rule(v, joined)
        added += self.add_rule(w, joined)
        return added

    def invalidate(self) -> None:
        """正規形のメモを破棄"""
        self._cache.clear()


def rules_from_relation(
    relation: Iterable[Pair],
    mode: str = 'symmetric',
    fuel: int = DEFAULT_REWRITE_FUEL,
    strategy: str = DEFAULT_STRATEGY,
    seed: int = 0
) -> RewriteSystem:
    """
    関係 R から書き換え系を構成

    Args:
        relation: ベクトルのペアの列
        mode: 'symmetric'（c(R) 用）または 'directed'（p(R) 用）
        fuel: 書き換えステップ上限
        strategy: 適用戦略
        seed: 'random' 戦略のシード

    Returns:
        RewriteSystem: 書き換え系（lhs = rhs の規則は除外済み）
    """
    rs = RewriteSystem(mode=mode, fuel=fuel, strategy=strategy, seed=seed)
    for v, w in relation:
        rs.add_pair(v, w)
    return rs


def rewrite_step(v: Vector, rule: RewriteRule) -> Optional[Vector]:
    """
    1ステップの書き換え v ⇝ v ⊔ r·(l → v)

    Args:
        v: 対象ベクトル
        rule: 規則 l ↦ r

    Returns:
        Vector or None: 真に大きくなる場合は書き換え結果、適用不能なら None
    """
    m = vec_residuum(rule.lhs, v)
    if m.payload == get_semiring(v.semiring).zero:
        return None
    candidate = vec_combine(v, vec_scale(rule.rhs, m))
    # candidate ⊒ v は構成上常に成り立つので、真の増加は不等号で判定できる
    return candidate if candidate != v else None


def _greedy_pick(v: Vector, rules: Sequence[RewriteRule]) -> Optional[Vector]:
    """適用可能な規則のうち乗数 l → v が ⊑ で最大のものを適用する"""
    s = get_semiring(v.semiring)
    best_m = None
    best = None
    for rule in rules:
        m = vec_residuum(rule.lhs, v)
        if best_m is not None and not (s.le(best_m, m.payload) and best_m != m.payload):
            continue
        candidate = rewrite_step(v, rule)
        if candidate is not None:
            best_m, best = m.payload, candidate
    return best


def normal_form(v: Vector, rs: RewriteSystem, strategy: Optional[str] = None) -> Vector:
    """
    公平な戦略で書き換えを繰り返し、正規形 ⇓v を求める

    Args:
        v: 対象ベクトル
        rs: 書き換え系
        strategy: 適用戦略（省略時は rs.strategy、メモを使用）

    Returns:
        Vector: 正規形

    Raises:
        FuelExhausted: 書き換えステップ数が rs.fuel を超えた場合
    """
    rs.check_vector(v)
    memo = strategy is None
    if memo and v in rs._cache:
        return rs._cache[v]
    strategy = strategy or rs.strategy
    if strategy not in STRATEGIES:
        raise UsageError(f"未対応の書き換え戦略: {strategy}（{', '.join(STRATEGIES)} のいずれかを指定）")

    current = v
    steps = 0
    rng = random.Random(rs.seed)
    rules = rs.rules

    try:
        if strategy == 'greedy':
            while True:
                nxt = _greedy_pick(current, rules)
                if nxt is None:
                    break
                steps += 1
                if steps > rs.fuel:
                    raise FuelExhausted(rs.fuel, steps)
                current = nxt
        else:
            order = list(rules)
            if strategy == 'reverse':
                order.reverse()
            while True:
                if strategy == 'random':
                    rng.shuffle(order)
                changed = False
                for rule in order:
                    nxt = rewrite_step(current, rule)
                    if nxt is None:
                        continue
                    steps += 1
                    if steps > rs.fuel:
                        raise FuelExhausted(rs.fuel, steps)
                    current = nxt
                    changed = True
                if not changed:
                    break
    finally:
        rs.steps += steps

    if memo:
        rs._cache[v] = current
    return current


def in_congruence(v: Vector, w: Vector, rs: RewriteSystem) -> bool:
    """
    (v, w) ∈ c(R) の判定（正規形の一致）

    Args:
        v: ベクトル
        w: ベクトル
        rs: symmetric モードの書き換え系

    Returns:
        bool: 正規形が一致すれば True

    Raises:
        FuelExhausted: 正規形計算が上限に達した場合
    """
    if rs.mode != 'symmetric':
        raise UsageError(f"合同閉包の判定には symmetric モードが必要です: {rs.mode}")
    if v == w:
        rs.check_vector(v)
        return True
    return normal_form(v, rs) == normal_form(w, rs)


def in_precongruence(v: Vector, w: Vector, rs: RewriteSystem) -> bool:
    """
    (v, w) ∈ p(R) の判定（v ⊑ ⇓w）

    Args:
        v: ベクトル
        w: ベクトル
        rs: directed モードの書き換え系

    Returns:
        bool: v ⊑ ⇓w なら True

    Raises:
        FuelExhausted: 正規形計算が上限に達した場合
    """
    if rs.mode != 'directed':
        raise UsageError(f"前合同閉包の判定には directed モードが必要です: {rs.mode}")
    rs.check_vector(v)
    if vec_leq(v, w):
        return True
    return vec_leq(v, normal_form(w, rs))


# =============================================================================
# 有理数体: 部分空間への所属
# =============================================================================

class Generators:
    """
    有理数体上の生成系 U_R

    行階段形の基底を逐次的に保持し、所属判定は基底による簡約で行う。
    各行は先頭成分（ピボット）が1で、ピボットより左は0。行はピボット列の昇順。
    """

    def __init__(self, basis: Iterable[Vector] = (), dim: Optional[int] = None):
        self.basis: List[Vector] = []
        self.dim = dim
        self._rows: List[Tuple[int, List[Fraction]]] = []
        for u in basis:
            self.add(u)

    @property
    def rank(self) -> int:
        return len(self._rows)

    def _check(self, u: Vector) -> None:
        if not u.semiring.is_ring:
            raise UsageError(f"部分空間の判定は有理数体でのみ使えます: {u.semiring.value}")
        if self.dim is None:
            self.dim = u.dim
        elif u.dim != self.dim:
            raise UsageError(f"次元が一致しません: {u.dim} != {self.dim}")

    def _reduce(self, u: Vector) -> List[Fraction]:
        residual = list(u.entries)
        for pivot, row in self._rows:
            factor = residual[pivot]
            if factor == 0:
                continue
            for c in range(pivot, len(residual)):
                residual[c] -= factor * row[c]
        return residual

    def add(self, u: Vector) -> bool:
        """
        生成元を追加

        Returns:
            bool: 階数が増えたか
        """
        self._check(u)
        self.basis.append(u)
        residual = self._reduce(u)
        pivot = next((c for c, x in enumerate(residual) if x != 0), None)
        if pivot is None:
            return False
        lead = residual[pivot]
        row = [x / lead for x in residual]
        self._rows.append((pivot, row))
        self._rows.sort(key=lambda item: item[0])
        return True

    def contains(self, u: Vector) -> bool:
        """u が基底の張る部分空間に属するか"""
        self._check(u)
        return all(x == 0 for x in self._reduce(u))


def span_member(u: Vector, gens: Generators) -> bool:
    """
    u ∈ [U_R] の判定（厳密ガウス消去）

    Args:
        u: 有理数体上のベクトル
        gens: 生成系

    Returns:
        bool: 簡約後の残差が0なら True
    """
    return gens.contains(u)


def in_congruence_ring(v: Vector, w: Vector, relation: Iterable[Pair]) -> bool:
    """
    有理数体上の (v, w) ∈ c(R) の判定: v − w ∈ [{u − u' | (u, u') ∈ R}]

    Args:
        v: ベクトル
        w: ベクトル
        relation: ベクトルのペアの列

    Returns:
        bool: 差が張る部分空間に属すれば True
    """
    gens = Generators(dim=v.dim)
    for u, u2 in relation:
        gens.add(vec_sub(u, u2))
    return span_member(vec_sub(v, w), gens)


# =============================================================================
# ブール半環上の総当たりオラクル
# =============================================================================

def congruence_oracle_boolean(
    relation: Iterable[Pair],
    dim: int,
    precongruence: bool = False
) -> FrozenSet[Tuple[Tuple[bool, ...], Tuple[bool, ...]]]:
    """
    ブール半環上で c(R)（または p(R)）を証明規則の飽和で総当たり計算

    規則: (Rel), (Refl) または (Ord), (Sym)（合同のみ）, (Trans), (Sca), (Plus)。

    Args:
        relation: ブールベクトルのペアの列
        dim: 次元（2^dim 個のベクトルを列挙するので小さく保つこと）
        precongruence: True なら p(R) を計算

    Returns:
        frozenset: 閉包に属するペア（ペイロードのタプル）の集合
    """
    if dim > 4:
        raise UsageError(f"総当たりオラクルの次元が大きすぎます: {dim}")
    space = list(itertools.product((False, True), repeat=dim))
    closure: Set[Tuple[Tuple[bool, ...], Tuple[bool, ...]]] = set()

    for u in space:
        for w in space:
            if precongruence and all((not a) or b for a, b in zip(u, w)):
                closure.add((u, w))
        if not precongruence:
            closure.add((u, u))
    for v, w in relation:
        if v.semiring is not SemiringId.BOOLEAN or v.dim != dim or w.dim != dim:
            raise UsageError("ブール半環かつ指定次元のベクトルを渡してください")
        closure.add((v.entries, w.entries))

    changed = True
    while changed:
        changed = False
        current = list(closure)
        new: Set[Tuple[Tuple[bool, ...], Tuple[bool, ...]]] = set()
        for u, w in current:
            if not precongruence:
                new.add((w, u))
            # (Sca) はブールでは ·1 が恒等、·0 が (0,0) を与える
            new.add((tuple([False] * dim), tuple([False] * dim)))
        by_left: Dict[Tuple[bool, ...], List[Tuple[bool, ...]]] = {}
        for u, w in current:
            by_left.setdefault(u, []).append(w)
        for u, w in current:
            for x in by_left.get(w, ()):
                new.add((u, x))
        for (u1, w1), (u2, w2) in itertools.combinations(current, 2):
            new.add((tuple(a or b for a, b in zip(u1, u2)), tuple(a or b for a, b in zip(w1, w2))))
        added = new - closure
        if added:
            closure |= added
            changed = True
    return frozenset(closure)
