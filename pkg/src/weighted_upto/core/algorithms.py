"""
判定アルゴリズムモジュール

up-to 合同による言語等価性・包含・閾値の判定と、シミュレーション関係の計算。

- hkc: 等価性（合同閉包 c(R) による枝刈り）
- hkp: 包含（前合同閉包 p(R) による枝刈り）
- hkp_a: 閾値判定（閾値状態の追加と抽象化）
- sim: 最大シミュレーション関係
- hkp_prime / hkp_a_prime: シミュレーションで種付けした p'(R) を使う変種
- abk: 集合所属のみで枝刈りするベースライン
"""

from collections import deque
from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import Any, Callable, Deque, Dict, FrozenSet, Iterator, List, Optional, Set, Tuple

from weighted_upto.base.config import DEFAULT_FUEL, DEFAULT_REWRITE_FUEL, DEFAULT_STRATEGY
from weighted_upto.core.automata import (
    WeightedAutomaton,
    Word,
    abstraction,
    extend_with_threshold_state,
    format_word,
    lift_vector,
    output,
    require_tropical_nat,
    step,
)
from weighted_upto.core.congruence import (
    Generators,
    RewriteSystem,
    in_congruence,
    in_precongruence,
    span_member,
)
from weighted_upto.core.linalg import Vector, unit_vector, vec_sub
from weighted_upto.core.semiring import get_semiring, leq
from weighted_upto.errors import FuelExhausted, UsageError


# =============================================================================
# 結果の型
# =============================================================================

class Answer(str, Enum):
    """判定結果"""

    TRUE = 'true'
    FALSE = 'false'
    FUEL_EXHAUSTED = 'fuel-exhausted'


@dataclass
class VerdictStats:
    """
    実行統計

    Attributes:
        relation_size: |R|（abk では |P|）
        pairs_processed: todo から取り出したペア数
        rewrite_steps: 書き換えステップの総数
        sim_size: 反射的ペアを除くシミュレーション関係のサイズ（hkp' 系のみ）
    """

    relation_size: int = 0
    pairs_processed: int = 0
    rewrite_steps: int = 0
    sim_size: Optional[int] = None


@dataclass
class Verdict:
    """
    判定の結果

    Attributes:
        answer: 判定結果
        witness: 反例の語（answer が FALSE のときのみ）
        stats: 実行統計
    """

    answer: Answer
    witness: Optional[Word] = None
    stats: VerdictStats = field(default_factory=VerdictStats)

    def __post_init__(self):
        if (self.witness is not None) != (self.answer is Answer.FALSE):
            raise UsageError(f"反例の語は結果が false のときに限り必要です: {self.answer.value}")

    def __bool__(self) -> bool:
        return self.answer is Answer.TRUE

    def to_line(self, A: Optional[WeightedAutomaton] = None) -> str:
        """
        1行のテキスト表現

        Example:
            'false witness="a a b" relation_size=3 pairs_processed=4 rewrite_steps=2 sim_size='
        """
        parts = [self.answer.value]
        if self.witness is not None:
            word = format_word(A, self.witness) if A is not None else ' '.join(str(a) for a in self.witness)
            parts.append(f'witness="{word}"')
        for key, val in asdict(self.stats).items():
            parts.append(f"{key}={'' if val is None else val}")
        return ' '.join(parts)

    def to_record(self) -> Dict[str, Any]:
        """ベンチマーク CSV 用の辞書"""
        return {
            'verdict': self.answer.value,
            'relation_size': self.stats.relation_size,
            'sim_size': self.stats.sim_size,
            'fuel_exhausted': self.answer is Answer.FUEL_EXHAUSTED,
        }


@dataclass(frozen=True)
class SimilarityRelation:
    """
    単位ベクトル上のシミュレーション関係 ⪯

    Attributes:
        n: 状態数
        pairs: (i, j) は e_i ⪯ e_j を意味する（0始まり）
    """

    n: int
    pairs: FrozenSet[Tuple[int, int]]

    def __contains__(self, pair: Tuple[int, int]) -> bool:
        return pair in self.pairs

    def __iter__(self) -> Iterator[Tuple[int, int]]:
        return iter(sorted(self.pairs))

    @property
    def size(self) -> int:
        """反射的ペアを除いたサイズ"""
        return sum(1 for i, j in self.pairs if i != j)

    def non_reflexive(self) -> List[Tuple[int, int]]:
        return sorted((i, j) for i, j in self.pairs if i != j)


# =============================================================================
# 探索本体
# =============================================================================

def _check_pair(A: WeightedAutomaton, v1: Vector, v2: Vector) -> None:
    A.check_vector(v1)
    A.check_vector(v2)


def _explore(
    A: WeightedAutomaton,
    v1: Vector,
    v2: Vector,
    in_closure: Callable[[Vector, Vector], bool],
    add_pair: Callable[[Vector, Vector], None],
    outputs_ok: Callable[[Vector, Vector], bool],
    fuel: int,
    rewrite_steps: Callable[[], int],
    right: Callable[[Vector], Vector] = lambda v: v
) -> Verdict:
    """
    todo（FIFO）を使った共通の探索ループ

    取り出したペアが閉包に含まれれば読み飛ばし、出力が条件を満たさなければ
    そのペアを生成した語を反例として返す。含まれなければ後続ペアを積み R に加える。
    """
    if fuel <= 0:
        raise UsageError(f"fuel は正の整数で指定してください: {fuel}")
    todo: Deque[Tuple[Vector, Vector, Word]] = deque([(v1, v2, ())])
    stats = VerdictStats()

    def verdict(answer: Answer, witness: Optional[Word] = None) -> Verdict:
        stats.rewrite_steps = rewrite_steps()
        return Verdict(answer, witness, stats)

    while todo:
        if stats.pairs_processed >= fuel:
            return verdict(Answer.FUEL_EXHAUSTED)
        w1, w2, word = todo.popleft()
        stats.pairs_processed += 1
        try:
            if in_closure(w1, w2):
                continue
        except FuelExhausted:
            return verdict(Answer.FUEL_EXHAUSTED)
        if not outputs_ok(w1, w2):
            return verdict(Answer.FALSE, word)
        for a in range(len(A.alphabet)):
            todo.append((step(A, a, w1), right(step(A, a, w2)), word + (a,)))
        add_pair(w1, w2)
        stats.relation_size += 1

    return verdict(Answer.TRUE)


def hkc(
    A: WeightedAutomaton,
    v1: Vector,
    v2: Vector,
    fuel: int = DEFAULT_FUEL,
    rewrite_fuel: int = DEFAULT_REWRITE_FUEL,
    strategy: str = DEFAULT_STRATEGY
) -> Verdict:
    """
    言語等価性 ⟦v1⟧ = ⟦v2⟧ の判定（up-to 合同）

    有理数体では部分空間への所属、それ以外は書き換えの正規形で c(R) を判定する。

    Args:
        A: オートマトン
        v1: 左の初期ベクトル
        v2: 右の初期ベクトル
        fuel: 取り出すペア数の上限
        rewrite_fuel: 正規形計算1回あたりの書き換えステップ上限
        strategy: 書き換え戦略

    Returns:
        Verdict: TRUE / FALSE（反例の語つき）/ FUEL_EXHAUSTED
    """
    _check_pair(A, v1, v2)

    if A.semiring.is_ring:
        gens = Generators(dim=A.n)
        return _explore(
            A, v1, v2,
            in_closure=lambda x, y: span_member(vec_sub(x, y), gens),
            add_pair=lambda x, y: gens.add(vec_sub(x, y)),
            outputs_ok=lambda x, y: output(A, x) == output(A, y),
            fuel=fuel,
            rewrite_steps=lambda: 0,
        )

    rs = RewriteSystem(mode='symmetric', fuel=rewrite_fuel, strategy=strategy,
                       semiring=A.semiring, dim=A.n)
    return _explore(
        A, v1, v2,
        in_closure=lambda x, y: in_congruence(x, y, rs),
        add_pair=rs.add_pair,
        outputs_ok=lambda x, y: output(A, x) == output(A, y),
        fuel=fuel,
        rewrite_steps=lambda: rs.steps,
    )


def _hkp_run(
    A: WeightedAutomaton,
    v1: Vector,
    v2: Vector,
    rs: RewriteSystem,
    fuel: int,
    right: Callable[[Vector], Vector] = lambda v: v
) -> Verdict:
    return _explore(
        A, v1, v2,
        in_closure=lambda x, y: in_precongruence(x, y, rs),
        add_pair=rs.add_pair,
        outputs_ok=lambda x, y: leq(output(A, x), output(A, y)),
        fuel=fuel,
        rewrite_steps=lambda: rs.steps,
        right=right,
    )


def _directed_system(A: WeightedAutomaton, rewrite_fuel: int, strategy: str) -> RewriteSystem:
    if not A.semiring.is_lmonoid:
        raise UsageError(f"包含判定は l-モノイドでのみ使えます: {A.semiring.value}")
    return RewriteSystem(mode='directed', fuel=rewrite_fuel, strategy=strategy,
                         semiring=A.semiring, dim=A.n)


def _seed_with_similarity(A: WeightedAutomaton, rs: RewriteSystem, relation: SimilarityRelation) -> None:
    if relation.n != A.n:
        raise UsageError(f"シミュレーション関係の状態数が一致しません: {relation.n} != {A.n}")
    for i, j in relation.non_reflexive():
        rs.add_pair(unit_vector(A.semiring, A.n, i), unit_vector(A.semiring, A.n, j))


def hkp(
    A: WeightedAutomaton,
    v1: Vector,
    v2: Vector,
    fuel: int = DEFAULT_FUEL,
    rewrite_fuel: int = DEFAULT_REWRITE_FUEL,
    strategy: str = DEFAULT_STRATEGY
) -> Verdict:
    """
    言語包含 ⟦v1⟧ ⊑ ⟦v2⟧ の判定（up-to 前合同）

    Args:
        A: l-モノイド上のオートマトン
        v1: 左の初期ベクトル
        v2: 右の初期ベクトル
        fuel: 取り出すペア数の上限
        rewrite_fuel: 書き換えステップ上限
        strategy: 書き換え戦略

    Returns:
        Verdict: 判定結果
    """
    _check_pair(A, v1, v2)
    rs = _directed_system(A, rewrite_fuel, strategy)
    return _hkp_run(A, v1, v2, rs, fuel)


def hkp_prime(
    A: WeightedAutomaton,
    v1: Vector,
    v2: Vector,
    fuel: int = DEFAULT_FUEL,
    rewrite_fuel: int = DEFAULT_REWRITE_FUEL,
    strategy: str = DEFAULT_STRATEGY,
    similarity: Optional[SimilarityRelation] = None
) -> Verdict:
    """
    シミュレーションで種付けした p'(R) = p(R ∪ ⪯) による包含判定

    Args:
        A: l-モノイド上のオートマトン
        v1: 左の初期ベクトル
        v2: 右の初期ベクトル
        fuel: 取り出すペア数の上限
        rewrite_fuel: 書き換えステップ上限
        strategy: 書き換え戦略
        similarity: 計算済みの sim(A)（省略時はここで計算）

    Returns:
        Verdict: 判定結果（stats.sim_size を含む）
    """
    _check_pair(A, v1, v2)
    relation = similarity if similarity is not None else sim(A)
    rs = _directed_system(A, rewrite_fuel, strategy)
    _seed_with_similarity(A, rs, relation)
    result = _hkp_run(A, v1, v2, rs, fuel)
    result.stats.sim_size = relation.size
    return result


# =============================================================================
# 閾値判定
# =============================================================================

def _threshold_setup(A: WeightedAutomaton, v: Vector, threshold: int) -> Tuple[WeightedAutomaton, Vector, Vector]:
    require_tropical_nat(A.semiring)
    A.check_vector(v)
    if threshold < 0:
        raise UsageError(f"閾値は0以上で指定してください: {threshold}")
    extended, e_t = extend_with_threshold_state(A, threshold)
    return extended, e_t, lift_vector(v)


def hkp_a(
    A: WeightedAutomaton,
    v: Vector,
    threshold: int,
    fuel: int = DEFAULT_FUEL,
    rewrite_fuel: int = DEFAULT_REWRITE_FUEL,
    strategy: str = DEFAULT_STRATEGY
) -> Verdict:
    """
    閾値判定: 全ての語 w について ⟦v⟧(w) ≤ T か

    閾値状態 t を追加したオートマトン上で HKP(e_t, v) を実行し、
    後続ペアの右成分だけを抽象化する。

    Args:
        A: トロピカル（自然数）オートマトン
        v: 初期ベクトル
        threshold: 閾値 T
        fuel: 取り出すペア数の上限
        rewrite_fuel: 書き換えステップ上限
        strategy: 書き換え戦略

    Returns:
        Verdict: TRUE なら閾値を満たす。FALSE の反例 w は ⟦v⟧(w) > T
    """
    extended, e_t, lifted = _threshold_setup(A, v, threshold)
    rs = _directed_system(extended, rewrite_fuel, strategy)
    return _hkp_run(extended, e_t, lifted, rs, fuel, right=lambda x: abstraction(x, threshold))


def hkp_a_prime(
    A: WeightedAutomaton,
    v: Vector,
    threshold: int,
    fuel: int = DEFAULT_FUEL,
    rewrite_fuel: int = DEFAULT_REWRITE_FUEL,
    strategy: str = DEFAULT_STRATEGY,
    similarity: Optional[SimilarityRelation] = None
) -> Verdict:
    """
    シミュレーションで種付けした閾値判定

    Args:
        A: トロピカル（自然数）オートマトン
        v: 初期ベクトル
        threshold: 閾値 T
        fuel: 取り出すペア数の上限
        rewrite_fuel: 書き換えステップ上限
        strategy: 書き換え戦略
        similarity: 閾値状態を追加したオートマトンについて計算済みの sim

    Returns:
        Verdict: 判定結果（stats.sim_size を含む）
    """
    extended, e_t, lifted = _threshold_setup(A, v, threshold)
    relation = similarity if similarity is not None else sim(extended)
    rs = _directed_system(extended, rewrite_fuel, strategy)
    _seed_with_similarity(extended, rs, relation)
    result = _hkp_run(extended, e_t, lifted, rs, fuel, right=lambda x: abstraction(x, threshold))
    result.stats.sim_size = relation.size
    return result


def abk(
    A: WeightedAutomaton,
    v0: Vector,
    threshold: int,
    fuel: int = DEFAULT_FUEL
) -> Verdict:
    """
    集合所属のみで枝刈りする閾値判定（ベースライン）

    元のオートマトンのまま o(v) ≤ T を直接調べ、後続ベクトルを抽象化して P に溜める。

    Args:
        A: トロピカル（自然数）オートマトン
        v0: 初期ベクトル
        threshold: 閾値 T
        fuel: 取り出すベクトル数の上限

    Returns:
        Verdict: 判定結果（stats.relation_size は |P|）
    """
    require_tropical_nat(A.semiring)
    A.check_vector(v0)
    if threshold < 0:
        raise UsageError(f"閾値は0以上で指定してください: {threshold}")
    if fuel <= 0:
        raise UsageError(f"fuel は正の整数で指定してください: {fuel}")

    visited: Set[Vector] = set()
    todo: Deque[Tuple[Vector, Word]] = deque([(v0, ())])
    stats = VerdictStats()
    while todo:
        if stats.pairs_processed >= fuel:
            return Verdict(Answer.FUEL_EXHAUSTED, None, stats)
        v, word = todo.popleft()
        stats.pairs_processed += 1
        if v in visited:
            continue
        if output(A, v).payload > threshold:
            return Verdict(Answer.FALSE, word, stats)
        for a in range(len(A.alphabet)):
            todo.append((abstraction(step(A, a, v), threshold), word + (a,)))
        visited.add(v)
        stats.relation_size = len(visited)
    return Verdict(Answer.TRUE, None, stats)


# =============================================================================
# シミュレーション
# =============================================================================

def _simulation_bound(A: WeightedAutomaton, pairs: Set[Tuple[int, int]], a: str, j: int) -> List:
    """
    u = ⨆{e_i1·(e_i2 → t_a(e_j)) | (i1, i2) ∈ R} の各成分

    単位ベクトルの剰余 e_i2 → x は 1 → x[i2] に等しい。
    """
    s = get_semiring(A.semiring)
    row = A.trans[a].entries[j]
    u = [s.zero] * A.n
    for i1, i2 in pairs:
        u[i1] = s.add(u[i1], s.residuate(s.one, row[i2]))
    return u


def _simulates(A: WeightedAutomaton, pairs: Set[Tuple[int, int]], i: int, j: int) -> bool:
    s = get_semiring(A.semiring)
    if not s.le(A.output.entries[i], A.output.entries[j]):
        return False
    for a in A.alphabet:
        u = _simulation_bound(A, pairs, a, j)
        if not all(s.le(x, y) for x, y in zip(A.trans[a].entries[i], u)):
            return False
    return True


def sim(A: WeightedAutomaton) -> SimilarityRelation:
    """
    最大シミュレーション関係 ⪯ を不動点反復で計算

    全ての単位ベクトルの組から始め、出力の順序で枝刈りした後、
    t_a(e_i) ⋢ u となるペアを除く操作を変化がなくなるまで繰り返す。

    Args:
        A: l-モノイド上のオートマトン

    Returns:
        SimilarityRelation: 反射的ペアを含む関係
    """
    if not A.semiring.is_lmonoid:
        raise UsageError(f"シミュレーションは l-モノイドでのみ計算できます: {A.semiring.value}")
    s = get_semiring(A.semiring)
    o = A.output.entries
    pairs = {(i, j) for i in range(A.n) for j in range(A.n) if s.le(o[i], o[j])}

    changed = True
    while changed:
        changed = False
        bounds = {(a, j): _simulation_bound(A, pairs, a, j)
                  for a in A.alphabet for j in range(A.n)}
        removed = set()
        for i, j in pairs:
            for a in A.alphabet:
                succ = A.trans[a].entries[i]
                if not all(s.le(x, y) for x, y in zip(succ, bounds[(a, j)])):
                    removed.add((i, j))
                    break
        if removed:
            pairs -= removed
            changed = True

    return SimilarityRelation(n=A.n, pairs=frozenset(pairs))


def is_simulation(A: WeightedAutomaton, relation: SimilarityRelation) -> bool:
    """関係の全てのペアが出力条件と遷移条件を満たすか検証"""
    pairs = set(relation.pairs)
    return all(_simulates(A, pairs, i, j) for i, j in pairs)
