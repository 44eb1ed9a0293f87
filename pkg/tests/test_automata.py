"""
重み付きオートマトンモジュールのテスト

オートマトンの検証、遷移・出力・語の重み、総当たりの言語表、
閾値状態の追加、抽象化、語の入出力、反例の検証をテスト。
"""

import random

import pytest

from weighted_upto.core.automata import (
    WeightedAutomaton,
    abstraction,
    brute_language_table,
    check_threshold_witness,
    extend_with_threshold_state,
    format_word,
    language_weight,
    lift_vector,
    output,
    parse_word,
    state_weights,
    step,
)
from weighted_upto.core.linalg import make_matrix, unit_vector, vec_combine, vec_scale, zero_vector
from weighted_upto.core.semiring import INF, SemiringId, combine, times, value, zero
from weighted_upto.errors import ParseError, UsageError

from tests.conftest import (
    BOOL,
    LMONOID_IDS,
    TROP,
    make_automaton,
    random_automaton,
    random_payload,
    random_tropical_automaton,
    random_vector,
    tvec,
)


def abstract_scalar(x, threshold):
    """スカラーの抽象化"""
    return value(TROP, x.payload if x.payload <= threshold else INF)


class TestWeightedAutomaton:
    """WeightedAutomaton の検証のテスト"""

    def test_missing_transition(self):
        """記号の遷移行列がなければ UsageError"""
        with pytest.raises(UsageError, match="遷移行列がありません"):
            WeightedAutomaton(
                semiring=TROP, n=1, alphabet=('a', 'b'),
                output=tvec(0), trans={'a': make_matrix(TROP, [[0]])},
            )

    def test_output_dimension(self):
        """出力ベクトルの次元不一致は UsageError"""
        with pytest.raises(UsageError, match="次元"):
            WeightedAutomaton(
                semiring=TROP, n=2, alphabet=('a',),
                output=tvec(0), trans={'a': make_matrix(TROP, [[0, 0], [0, 0]])},
            )

    def test_duplicate_alphabet(self):
        """アルファベットの重複は UsageError"""
        with pytest.raises(UsageError, match="重複"):
            WeightedAutomaton(
                semiring=TROP, n=1, alphabet=('a', 'a'),
                output=tvec(0), trans={'a': make_matrix(TROP, [[0]])},
            )

    def test_symbol_index(self, single_loop):
        """記号と添字の変換"""
        assert single_loop.symbol_index('a') == 0
        assert single_loop.symbol_index(0) == 0
        with pytest.raises(UsageError, match="未知の記号"):
            single_loop.symbol_index('z')


class TestSemantics:
    """言語の意味論のテスト"""

    def test_step_family(self):
        """例題族 n=2 で e_x ⊔ e_y に a を読むと x, x_1, y が1"""
        from weighted_upto.core.bench import exp_family

        A, v = exp_family(2)
        assert step(A, 'a', v).entries == (1, 1, INF, 1, INF, INF)

    def test_step_zero_vector(self, single_loop):
        """零ベクトルは零ベクトルに写る"""
        z = zero_vector(TROP, 1)
        assert step(single_loop, 'a', z) == z

    def test_output_unit_vector(self):
        """o(e_x) = o[x]"""
        A = make_automaton(TROP, [3, 7], {'a': [[0, INF], [INF, 0]]})
        assert output(A, unit_vector(TROP, 2, 1)) == value(TROP, 7)
        assert output(A, zero_vector(TROP, 2)) == zero(TROP)

    def test_language_weight(self):
        """a ループ重み2なら ⟦e_1⟧(aa) = 4"""
        A = make_automaton(TROP, [0], {'a': [[2]]})
        assert language_weight(A, tvec(0), 'aa') == value(TROP, 4)
        assert language_weight(A, tvec(0), '') == value(TROP, 0)

    def test_state_weights_family(self, family4):
        """例題族 n=4 で aab を読んだ後の状態重み"""
        A, v = family4
        # x, x1..x4, y, y1..y4
        expected = (3, INF, 3, 3, INF, 3, 3, INF, INF, INF)
        assert state_weights(A, v, 'aab').entries == expected

    def test_unknown_symbol(self, single_loop):
        """未知の記号は UsageError"""
        with pytest.raises(UsageError):
            language_weight(single_loop, tvec(0), ['b'])

    def test_vector_dimension_checked(self, single_loop):
        """次元の異なるベクトルは UsageError"""
        with pytest.raises(UsageError, match="次元"):
            output(single_loop, tvec(0, 0))


class TestBruteLanguageTable:
    """brute_language_table のテスト"""

    def test_length_zero(self, single_loop):
        """L = 0 なら空語のみ"""
        table = brute_language_table(single_loop, tvec(0), 0)
        assert len(table) == 1
        assert table.weight(()) == value(TROP, 0)

    def test_size(self):
        """エントリ数は Σ_{k≤L} |A|^k"""
        A = make_automaton(BOOL, [1, 0], {'a': [[0, 1], [1, 0]], 'b': [[1, 0], [0, 1]]})
        table = brute_language_table(A, unit_vector(BOOL, 2, 0), 3)
        assert len(table) == 1 + 2 + 4 + 8
        assert len(table.words(3)) == 8

    def test_matches_language_weight(self, family4):
        """表の値は language_weight と一致"""
        A, v = family4
        table = brute_language_table(A, v, 4)
        for word in table.words():
            assert table.weight(word) == language_weight(A, v, word)

    def test_cap(self, single_loop):
        """上限を超えると UsageError"""
        with pytest.raises(UsageError, match="大きすぎ"):
            brute_language_table(single_loop, tvec(0), 10, cap=5)


class TestLanguageLinearity:
    """言語写像の線形性（ランダムなオートマトン）"""

    @pytest.mark.parametrize('ident', list(LMONOID_IDS) + [SemiringId.RATIONAL_FIELD])
    def test_join_and_scale(self, ident):
        """⟦v ⊔ w⟧ = ⟦v⟧ ⊕ ⟦w⟧、⟦v·s⟧ = ⟦v⟧·s（長さ4以下の全ての語）"""
        rng = random.Random(17)
        for _ in range(60):
            n = rng.randint(1, 3)
            A = random_automaton(rng, ident, n)
            v, w = random_vector(rng, ident, n), random_vector(rng, ident, n)
            s = value(ident, random_payload(rng, ident))
            tv = brute_language_table(A, v, 4)
            tw = brute_language_table(A, w, 4)
            joined = brute_language_table(A, vec_combine(v, w), 4)
            scaled = brute_language_table(A, vec_scale(v, s), 4)
            for word in tv.words():
                assert joined.weight(word) == combine(tv.weight(word), tw.weight(word))
                assert scaled.weight(word) == times(tv.weight(word), s)


class TestThresholdReduction:
    """閾値状態の追加と抽象化のテスト"""

    def test_extended_automaton(self, single_loop):
        """閾値状態は出力 T と重み0の自己ループを持つ"""
        extended, e_t = extend_with_threshold_state(single_loop, 5)
        assert extended.n == 2
        assert e_t == unit_vector(TROP, 2, 1)
        assert extended.output.entries == (0, 5)
        assert extended.trans['a'].entries == ((1, INF), (INF, 0))
        for word in ('', 'a', 'aaa'):
            assert language_weight(extended, e_t, word) == value(TROP, 5)

    def test_lifted_vector_keeps_language(self, family4):
        """末尾に ∞ を足したベクトルの言語は元と同じ"""
        A, v = family4
        extended, _ = extend_with_threshold_state(A, 4)
        lifted = lift_vector(v)
        assert lifted.dim == A.n + 1
        for word in ('', 'ab', 'bba', 'aaaaa'):
            assert language_weight(extended, lifted, word) == language_weight(A, v, word)

    def test_threshold_state_exhaustive(self):
        """⟦e_t⟧(w) = T、持ち上げたベクトルの言語は元と一致（長さ6以下の全ての語）"""
        rng = random.Random(5)
        for _ in range(40):
            n = rng.randint(1, 4)
            A = random_tropical_automaton(rng, n)
            v = random_vector(rng, TROP, n)
            threshold = rng.randint(0, 12)
            extended, e_t = extend_with_threshold_state(A, threshold)
            table_t = brute_language_table(extended, e_t, 6)
            assert all(x == value(TROP, threshold) for x in table_t.entries.values())
            assert brute_language_table(extended, lift_vector(v), 6).entries == \
                brute_language_table(A, v, 6).entries

    def test_abstraction_compatible_with_steps(self):
        """𝒜(t_a(𝒜v)) = 𝒜(t_a(v))、𝒜(o(𝒜v)) = 𝒜(o(v))（1000ケース）"""
        rng = random.Random(47)
        for _ in range(1000):
            n = rng.randint(1, 4)
            A = random_tropical_automaton(rng, n, max_weight=rng.choice([3, 8]))
            v = tvec(*[rng.choice([rng.randint(0, 15), INF]) for _ in range(n)])
            threshold = rng.randint(0, 10)
            av = abstraction(v, threshold)
            for sym in A.alphabet:
                assert abstraction(step(A, sym, av), threshold) == abstraction(step(A, sym, v), threshold)
            assert abstract_scalar(output(A, av), threshold) == abstract_scalar(output(A, v), threshold)

    def test_requires_tropical_nat(self):
        """トロピカル（自然数）以外は UsageError"""
        A = make_automaton(BOOL, [1], {'a': [[1]]})
        with pytest.raises(UsageError, match="トロピカル"):
            extend_with_threshold_state(A, 3)

    def test_abstraction(self):
        """T を超える成分は ∞"""
        assert abstraction(tvec(3, INF, 7), 5) == tvec(3, INF, INF)
        assert abstraction(tvec(0, 5), 5) == tvec(0, 5)

    def test_abstraction_requires_tropical_nat(self):
        """トロピカル（自然数）以外は UsageError"""
        from weighted_upto.core.linalg import make_vector

        with pytest.raises(UsageError):
            abstraction(make_vector(SemiringId.MAXTIMES, [1]), 1)


class TestWords:
    """語の入出力と反例の検証のテスト"""

    def test_format_parse(self, family4):
        """記号列と添字の語の変換"""
        A, _ = family4
        assert format_word(A, (0, 0, 1)) == 'a a b'
        assert parse_word(A, 'a a b') == (0, 0, 1)
        assert parse_word(A, '') == ()

    def test_parse_unknown_symbol(self, family4):
        """未知の記号は unknown-symbol"""
        A, _ = family4
        with pytest.raises(ParseError) as exc:
            parse_word(A, 'a c')
        assert exc.value.code == 'unknown-symbol'
        assert exc.value.column == 3

    def test_threshold_witness(self, family4):
        """長さ n+1 の語は閾値 n を破る"""
        A, v = family4
        assert check_threshold_witness(A, v, 4, 'aaaaa')
        assert not check_threshold_witness(A, v, 4, 'abab')
