"""
合同閉包モジュールのテスト

書き換え規則の構成、書き換えステップ、正規形、c(R)/p(R) の所属判定、
有理数体の部分空間判定、ブール半環の総当たりオラクルとの照合をテスト。
"""

import itertools
import random
from fractions import Fraction

import numpy as np
import pytest

from weighted_upto.core.congruence import (
    Generators,
    RewriteRule,
    RewriteSystem,
    congruence_oracle_boolean,
    in_congruence,
    in_congruence_ring,
    in_precongruence,
    normal_form,
    rewrite_step,
    rules_from_relation,
    span_member,
)
from weighted_upto.core.linalg import make_vector, unit_vector, vec_combine, vec_leq, vec_scale, vec_sub
from weighted_upto.core.semiring import INF, SemiringId, value
from weighted_upto.errors import FuelExhausted, UsageError

from tests.conftest import BOOL, LMONOID_IDS, TROP, bvec, random_vector, tvec

Q = SemiringId.RATIONAL_FIELD


def qvec(*entries):
    return make_vector(Q, entries)


class TestRulesFromRelation:
    """rules_from_relation のテスト"""

    def test_symmetric_two_rules(self, rewriting_example):
        """symmetric は1ペアにつき2規則"""
        rs = rules_from_relation([rewriting_example], mode='symmetric')
        assert rs.rules == [
            RewriteRule(tvec(INF, 0), tvec(0, 0)),
            RewriteRule(tvec(0, INF), tvec(0, 0)),
        ]

    def test_reflexive_pair_dropped(self):
        """lhs = rhs の規則は除外"""
        x = tvec(1, 2)
        assert len(rules_from_relation([(x, x)])) == 0

    def test_directed_one_rule(self):
        """directed は w ↦ v ⊔ w の1規則"""
        rs = rules_from_relation([(tvec(0, INF), tvec(3, INF))], mode='directed')
        assert rs.rules == [RewriteRule(tvec(3, INF), tvec(0, INF))]

    def test_mixed_semiring(self):
        """異なる半環のペアは UsageError"""
        with pytest.raises(UsageError):
            rules_from_relation([(tvec(0, 1), bvec(0, 1))])

    def test_unknown_mode(self):
        """未知のモードは UsageError"""
        with pytest.raises(UsageError, match="モード"):
            RewriteSystem(mode='sideways')

    def test_unknown_strategy(self):
        """未知の戦略は UsageError"""
        with pytest.raises(UsageError, match="戦略"):
            RewriteSystem(strategy='depth-first')

    def test_rational_field_rejected(self):
        """有理数体は書き換えに使えない"""
        rs = RewriteSystem()
        with pytest.raises(UsageError, match="l-モノイド"):
            rs.add_pair(qvec(1, 0), qvec(0, 1))


class TestRewriteStep:
    """rewrite_step のテスト"""

    def test_rewriting_example(self):
        """(∞,3) は (∞,0) ↦ (0,0) で (3,3) に書き換わる"""
        rule = RewriteRule(tvec(INF, 0), tvec(0, 0))
        assert rewrite_step(tvec(INF, 3), rule) == tvec(3, 3)

    def test_not_applicable_at_fixpoint(self):
        """真に増加しなければ適用不能"""
        rule = RewriteRule(tvec(INF, 0), tvec(0, 0))
        assert rewrite_step(tvec(3, 3), rule) is None

    def test_not_applicable_with_zero_multiplier(self):
        """乗数が零元なら適用不能"""
        rule = RewriteRule(tvec(0, INF), tvec(0, 0))
        assert rewrite_step(tvec(INF, 5), rule) is None


class TestNormalForm:
    """normal_form のテスト"""

    def test_rewriting_example(self, rewriting_example):
        """R = {((∞,0),(0,∞))} で ⇓(∞,3) = (3,3)"""
        rs = rules_from_relation([rewriting_example])
        assert normal_form(tvec(INF, 3), rs) == tvec(3, 3)

    def test_empty_system(self):
        """規則がなければ恒等"""
        rs = RewriteSystem()
        assert normal_form(tvec(1, INF), rs) == tvec(1, INF)

    def test_graph_system(self, appendix_graph):
        """グラフの規則系で ⇓e_3 = (1,4,0)"""
        rs = RewriteSystem(semiring=TROP, dim=3)
        for i, row in enumerate(appendix_graph.weight):
            rs.add_rule(unit_vector(TROP, 3, i), make_vector(TROP, row))
        assert normal_form(tvec(INF, INF, 0), rs) == tvec(1, 4, 0)

    def test_fuel_exhausted(self, appendix_graph):
        """書き換えステップ数が fuel を超えると FuelExhausted"""
        rs = RewriteSystem(fuel=1, semiring=TROP, dim=3)
        for i, row in enumerate(appendix_graph.weight):
            rs.add_rule(unit_vector(TROP, 3, i), make_vector(TROP, row))
        with pytest.raises(FuelExhausted) as exc:
            normal_form(tvec(INF, INF, 0), rs)
        assert exc.value.fuel == 1

    def test_steps_accumulate(self, rewriting_example):
        """rs.steps に書き換えステップ数が積算される"""
        rs = rules_from_relation([rewriting_example])
        normal_form(tvec(INF, 3), rs)
        assert rs.steps == 1

    def test_cache_invalidated_on_extension(self):
        """規則の追加で正規形のメモが破棄される"""
        rs = RewriteSystem(semiring=TROP, dim=2)
        x = tvec(INF, 2)
        assert normal_form(x, rs) == x
        rs.add_pair(tvec(INF, 0), tvec(0, INF))
        assert normal_form(x, rs) == tvec(2, 2)

    def test_result_dominates_input(self, rewriting_example):
        """正規形は元のベクトル以上"""
        rs = rules_from_relation([rewriting_example])
        for x in (tvec(INF, 3), tvec(4, INF), tvec(1, 7)):
            assert vec_leq(x, normal_form(x, rs))


class TestConfluence:
    """公平な戦略の間で正規形が一致することのテスト"""

    STRATEGIES = ('round-robin', 'reverse', 'random', 'greedy')

    def _check(self, ident: SemiringId, cases: int, seed: int):
        rng = random.Random(seed)
        for _ in range(cases):
            dim = rng.randint(1, 4)
            relation = [(random_vector(rng, ident, dim), random_vector(rng, ident, dim))
                        for _ in range(rng.randint(0, 4))]
            rs = rules_from_relation(relation, seed=rng.randint(0, 2 ** 32), fuel=10 ** 6)
            rs.semiring, rs.dim = ident, dim
            for _ in range(3):
                x = random_vector(rng, ident, dim)
                forms = {normal_form(x, rs, strategy=s) for s in self.STRATEGIES}
                assert len(forms) == 1

    @pytest.mark.parametrize('ident', LMONOID_IDS)
    def test_confluence_small(self, ident):
        """50系で4戦略の正規形が一致"""
        self._check(ident, 50, seed=1)

    @pytest.mark.slow
    @pytest.mark.parametrize('ident', LMONOID_IDS)
    def test_confluence_suite(self, ident):
        """500系で4戦略の正規形が一致し、fuel 切れが起きない"""
        self._check(ident, 500, seed=2024)


class TestNormalFormLaws:
    """正規形の冪等性と単調性（ランダムな書き換え系）"""

    @pytest.mark.parametrize('mode', ['symmetric', 'directed'])
    @pytest.mark.parametrize('ident', LMONOID_IDS)
    def test_idempotent_and_monotone(self, ident, mode):
        """⇓⇓v = ⇓v、v ⊑ w ⟹ ⇓v ⊑ ⇓w"""
        rng = random.Random(61)
        for _ in range(100):
            dim = rng.randint(1, 4)
            relation = [(random_vector(rng, ident, dim), random_vector(rng, ident, dim))
                        for _ in range(rng.randint(0, 3))]
            rs = rules_from_relation(relation, mode=mode, fuel=10 ** 6)
            rs.semiring, rs.dim = ident, dim
            v = random_vector(rng, ident, dim)
            w = vec_combine(v, random_vector(rng, ident, dim))
            nv = normal_form(v, rs)
            assert normal_form(nv, rs) == nv
            assert vec_leq(nv, normal_form(w, rs))


class TestDerivationRules:
    """導出規則で作ったペアが判定で受理されること（トロピカル、自然数）"""

    def _random_system(self, rng: random.Random, mode: str):
        dim = rng.randint(1, 3)
        relation = [(random_vector(rng, TROP, dim), random_vector(rng, TROP, dim))
                    for _ in range(rng.randint(1, 3))]
        rs = rules_from_relation(relation, mode=mode, fuel=10 ** 6)
        rs.semiring, rs.dim = TROP, dim
        return dim, relation, rs

    def _close(self, rng: random.Random, members: list, rs: RewriteSystem, symmetric: bool):
        """規則をランダムに適用して導出ペアを増やす"""
        for _ in range(6):
            a, b = rng.choice(members), rng.choice(members)
            k = value(TROP, rng.randint(0, 4))
            # (Sca), (Plus)
            members.append((vec_scale(a[0], k), vec_scale(a[1], k)))
            members.append((vec_combine(a[0], b[0]), vec_combine(a[1], b[1])))
            # (Trans): (a1, ⇓a1) を経由、または端点が一致するペア
            members.append((a[0], normal_form(a[1], rs)))
            if a[1] == b[0]:
                members.append((a[0], b[1]))
            if symmetric:
                # (Sym)
                members.append((a[1], a[0]))

    def test_congruence_rules(self):
        """(Rel)(Refl)(Sym)(Trans)(Sca)(Plus) の導出は in_congruence で True"""
        rng = random.Random(73)
        for _ in range(100):
            dim, relation, rs = self._random_system(rng, 'symmetric')
            x = random_vector(rng, TROP, dim)
            members = list(relation) + [(x, x)]
            self._close(rng, members, rs, symmetric=True)
            for v, w in members:
                assert in_congruence(v, w, rs)

    def test_precongruence_rules(self):
        """(Rel)(Ord)(Trans)(Sca)(Plus) の導出は in_precongruence で True"""
        rng = random.Random(79)
        for _ in range(100):
            dim, relation, rs = self._random_system(rng, 'directed')
            x = random_vector(rng, TROP, dim)
            members = list(relation) + [(x, vec_combine(x, random_vector(rng, TROP, dim)))]
            self._close(rng, members, rs, symmetric=False)
            for v, w in members:
                assert in_precongruence(v, w, rs)


class TestInCongruence:
    """in_congruence のテスト"""

    def test_reflexive(self):
        """v = w は規則なしで True"""
        rs = RewriteSystem()
        assert in_congruence(tvec(1, 2), tvec(1, 2), rs)

    def test_related_pair(self, rewriting_example):
        """R のペアは c(R) に属する"""
        rs = rules_from_relation([rewriting_example])
        assert in_congruence(*rewriting_example, rs)

    def test_empty_relation(self):
        """R = ∅ なら異なるベクトルは属さない"""
        rs = RewriteSystem()
        assert not in_congruence(tvec(0, INF), tvec(INF, 0), rs)

    def test_closed_under_scaling(self, rewriting_example):
        """(Sca): スカラー倍しても属する"""
        rs = rules_from_relation([rewriting_example])
        k = value(TROP, 4)
        assert in_congruence(vec_scale(rewriting_example[0], k), vec_scale(rewriting_example[1], k), rs)

    def test_requires_symmetric(self):
        """directed モードでは UsageError"""
        with pytest.raises(UsageError, match="symmetric"):
            in_congruence(tvec(1), tvec(2), RewriteSystem(mode='directed'))


class TestInPrecongruence:
    """in_precongruence のテスト"""

    def test_order_closes(self):
        """(Ord): v ⊑ w なら True"""
        rs = RewriteSystem(mode='directed')
        assert in_precongruence(tvec(5, 5), tvec(3, 3), rs)

    def test_rewrite_needed(self):
        """(3,0) は (3,∞) ↦ (0,∞) で (0,0) に書き換わる"""
        rs = rules_from_relation([(tvec(0, INF), tvec(3, INF))], mode='directed')
        assert in_precongruence(tvec(0, 0), tvec(3, 0), rs)

    def test_empty_relation(self):
        """R = ∅ なら順序だけで判定"""
        rs = RewriteSystem(mode='directed')
        assert not in_precongruence(tvec(0, 0), tvec(3, 0), rs)

    def test_requires_directed(self):
        """symmetric モードでは UsageError"""
        with pytest.raises(UsageError, match="directed"):
            in_precongruence(tvec(1), tvec(2), RewriteSystem())


class TestBooleanOracle:
    """ブール半環での総当たりオラクルとの照合"""

    def _random_relation(self, rng: random.Random, dim: int):
        vectors = list(itertools.product((0, 1), repeat=dim))
        return [(bvec(*rng.choice(vectors)), bvec(*rng.choice(vectors)))
                for _ in range(rng.randint(0, 3))]

    def _check(self, cases: int, seed: int, precongruence: bool):
        rng = random.Random(seed)
        for _ in range(cases):
            dim = rng.randint(1, 3)
            relation = self._random_relation(rng, dim)
            oracle = congruence_oracle_boolean(relation, dim, precongruence=precongruence)
            mode = 'directed' if precongruence else 'symmetric'
            rs = RewriteSystem(mode=mode, semiring=BOOL, dim=dim)
            for v, w in relation:
                rs.add_pair(v, w)
            check = in_precongruence if precongruence else in_congruence
            space = [bvec(*u) for u in itertools.product((0, 1), repeat=dim)]
            for v, w in itertools.product(space, repeat=2):
                assert check(v, w, rs) == ((v.entries, w.entries) in oracle)

    def test_congruence_small(self):
        """c(R): 30関係で全ペアが一致"""
        self._check(30, seed=7, precongruence=False)

    def test_precongruence_small(self):
        """p(R): 30関係で全ペアが一致"""
        self._check(30, seed=8, precongruence=True)

    @pytest.mark.slow
    def test_congruence_suite(self):
        """c(R): 200関係で全ペアが一致"""
        self._check(200, seed=2024, precongruence=False)

    def test_oracle_contains_relation(self):
        """オラクルは R と反射ペアを含む"""
        v, w = bvec(1, 0), bvec(0, 1)
        closure = congruence_oracle_boolean([(v, w)], 2)
        assert (v.entries, w.entries) in closure
        assert (w.entries, v.entries) in closure
        assert ((True, True), (True, True)) in closure

    def test_oracle_dimension_limit(self):
        """次元が大きすぎると UsageError"""
        with pytest.raises(UsageError, match="大きすぎ"):
            congruence_oracle_boolean([], 5)


class TestRingCongruence:
    """有理数体の部分空間判定のテスト"""

    def test_zero_vector_in_span(self):
        """零ベクトルは常に属する"""
        assert span_member(qvec(0, 0), Generators(dim=2))

    def test_span_member(self):
        """(−1,1) ∈ span{(1,−1)}、(1,1) ∉"""
        gens = Generators([qvec(1, -1)])
        assert span_member(qvec(-1, 1), gens)
        assert not span_member(qvec(1, 1), gens)

    def test_add_reports_rank_growth(self):
        """従属な生成元では階数が増えない"""
        gens = Generators()
        assert gens.add(qvec(1, 2, 3))
        assert not gens.add(qvec(2, 4, 6))
        assert gens.add(qvec(0, 1, 0))
        assert gens.rank == 2

    def test_in_congruence_ring(self):
        """R = {((1,0),(0,1))} の例"""
        relation = [(qvec(1, 0), qvec(0, 1))]
        assert in_congruence_ring(qvec(2, 3), qvec(3, 2), relation)
        assert not in_congruence_ring(qvec(1, 1), qvec(2, 2), relation)
        assert in_congruence_ring(qvec(5, Fraction(1, 3)), qvec(5, Fraction(1, 3)), [])

    def test_requires_ring(self):
        """l-モノイドのベクトルは UsageError"""
        with pytest.raises(UsageError, match="有理数体"):
            Generators([tvec(1, 2)])

    def test_transitivity_and_closure(self):
        """ランダムな3つ組で推移律・加法・スカラー倍の閉包性"""
        rng = random.Random(99)
        for _ in range(200):
            dim = rng.randint(1, 3)

            def draw():
                return qvec(*[Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(dim)])

            relation = [(draw(), draw()) for _ in range(rng.randint(0, 2))]
            gens = Generators(dim=dim)
            for u, w in relation:
                gens.add(vec_sub(u, w))

            # 関係の元から c(R) の元を合成する
            members = [(u, w) for u, w in relation] + [(x, x) for x in (draw(), draw())]
            a, b = rng.choice(members), rng.choice(members)
            k = value(Q, Fraction(rng.randint(-4, 4), rng.randint(1, 4)))
            summed = (vec_combine(a[0], b[0]), vec_combine(a[1], b[1]))
            scaled = (vec_scale(a[0], k), vec_scale(a[1], k))
            for v, w in (a, b, summed, scaled, (a[1], a[0])):
                assert in_congruence_ring(v, w, relation)

            x, y, z = draw(), draw(), draw()
            if in_congruence_ring(x, y, relation) and in_congruence_ring(y, z, relation):
                assert in_congruence_ring(x, z, relation)

    @staticmethod
    def _saturate(relation, universe):
        """成分 {-1,0,1} の範囲で (Refl)(Sym)(Trans)(Sca)(Plus) を飽和させる"""
        pairs = {(x, x) for x in universe} | {(v.entries, w.entries) for v, w in relation}
        members = set(universe)
        scalars = (Fraction(-1), Fraction(0), Fraction(2), Fraction(1, 2))
        changed = True
        while changed:
            changed = False
            new = {(b, a) for a, b in pairs}
            new |= {(a, d) for a, b in pairs for c, d in pairs if b == c}
            for a, b in pairs:
                for k in scalars:
                    new.add((tuple(k * x for x in a), tuple(k * x for x in b)))
                for c, d in pairs:
                    new.add((tuple(x + y for x, y in zip(a, c)), tuple(x + y for x, y in zip(b, d))))
            new = {(a, b) for a, b in new if a in members and b in members}
            if not new <= pairs:
                pairs |= new
                changed = True
        return pairs

    def _check_saturation(self, dim: int, cases: int, seed: int):
        rng = random.Random(seed)
        universe = [tuple(Fraction(x) for x in u) for u in itertools.product((-1, 0, 1), repeat=dim)]
        for _ in range(cases):
            relation = [(qvec(*rng.choice(universe)), qvec(*rng.choice(universe)))
                        for _ in range(rng.randint(0, 2))]
            diffs = [[float(x - y) for x, y in zip(v.entries, w.entries)] for v, w in relation]
            base_rank = np.linalg.matrix_rank(np.array(diffs)) if diffs else 0
            closure = self._saturate(relation, universe)
            for a, b in itertools.product(universe, repeat=2):
                verdict = in_congruence_ring(qvec(*a), qvec(*b), relation)
                if (a, b) in closure:
                    assert verdict
                d = [float(x - y) for x, y in zip(a, b)]
                assert verdict == (np.linalg.matrix_rank(np.array(diffs + [d])) == base_rank)

    def test_saturation_oracle_dim2(self):
        """2次元: 飽和させた導出ペアは全て受理され、判定は階数の比較と一致"""
        self._check_saturation(2, 40, seed=3)

    @pytest.mark.slow
    def test_saturation_oracle_dim3(self):
        """3次元: 飽和させた導出ペアは全て受理され、判定は階数の比較と一致"""
        self._check_saturation(3, 10, seed=4)
