"""
weighted_upto.core - コアモジュール

半環、線形代数、合同閉包、オートマトン、判定アルゴリズム、最短経路、
ベンチマーク、ファイル形式を提供。グラフ生成（matplotlib を使用）は
weighted_upto.core.viz から個別に読み込む。
"""

from .semiring import (
    INF,
    SemiringId,
    SemiringValue,
    get_semiring,
    value,
    zero,
    one,
    combine,
    times,
    leq,
    meet,
    residuum,
    parse_scalar,
    format_scalar,
)

from .linalg import (
    Vector,
    Matrix,
    make_vector,
    make_matrix,
    zero_vector,
    unit_vector,
    identity_matrix,
    lift,
    vec_combine,
    vec_scale,
    vec_sub,
    mat_apply,
    dot,
    vec_residuum,
    vec_leq,
)

from .congruence import (
    RewriteRule,
    RewriteSystem,
    Generators,
    rules_from_relation,
    rewrite_step,
    normal_form,
    in_congruence,
    in_precongruence,
    span_member,
    in_congruence_ring,
    congruence_oracle_boolean,
)

from .automata import (
    WeightedAutomaton,
    LanguageTable,
    step,
    output,
    state_weights,
    language_weight,
    brute_language_table,
    extend_with_threshold_state,
    abstraction,
    lift_vector,
    format_word,
    parse_word,
    check_equivalence_witness,
    check_inclusion_witness,
    check_threshold_witness,
)

from .algorithms import (
    Answer,
    Verdict,
    VerdictStats,
    SimilarityRelation,
    hkc,
    hkp,
    hkp_prime,
    hkp_a,
    hkp_a_prime,
    abk,
    sim,
    is_simulation,
)

from .spath import (
    WeightedDigraph,
    graph_rules,
    shortest_paths,
    solve_shortest_paths,
    reference_shortest_paths,
)

from .bench import (
    GenParams,
    BenchRow,
    BenchReportGenerator,
    gen_random,
    exp_family,
    instance_seed,
    run_bench,
    run_exp_family,
    percentile_nearest_rank,
    summarize,
    true_rate,
    write_bench_csv,
)

from .loader import (
    detect_encoding,
    read_text,
    load_automaton,
    load_graph,
    parse_automaton,
    serialize_automaton,
    parse_graph,
    serialize_graph,
)

__all__ = [
    # semiring
    'INF',
    'SemiringId',
    'SemiringValue',
    'get_semiring',
    'value',
    'zero',
    'one',
    'combine',
    'times',
    'leq',
    'meet',
    'residuum',
    'parse_scalar',
    'format_scalar',
    # linalg
    'Vector',
    'Matrix',
    'make_vector',
    'make_matrix',
    'zero_vector',
    'unit_vector',
    'identity_matrix',
    'lift',
    'vec_combine',
    'vec_scale',
    'vec_sub',
    'mat_apply',
    'dot',
    'vec_residuum',
    'vec_leq',
    # congruence
    'RewriteRule',
    'RewriteSystem',
    'Generators',
    'rules_from_relation',
    'rewrite_step',
    'normal_form',
    'in_congruence',
    'in_precongruence',
    'span_member',
    'in_congruence_ring',
    'congruence_oracle_boolean',
    # automata
    'WeightedAutomaton',
    'LanguageTable',
    'step',
    'output',
    'state_weights',
    'language_weight',
    'brute_language_table',
    'extend_with_threshold_state',
    'abstraction',
    'lift_vector',
    'format_word',
    'parse_word',
    'check_equivalence_witness',
    'check_inclusion_witness',
    'check_threshold_witness',
    # algorithms
    'Answer',
    'Verdict',
    'VerdictStats',
    'SimilarityRelation',
    'hkc',
    'hkp',
    'hkp_prime',
    'hkp_a',
    'hkp_a_prime',
    'abk',
    'sim',
    'is_simulation',
    # spath
    'WeightedDigraph',
    'graph_rules',
    'shortest_paths',
    'solve_shortest_paths',
    'reference_shortest_paths',
    # bench
    'GenParams',
    'BenchRow',
    'BenchReportGenerator',
    'gen_random',
    'exp_family',
    'instance_seed',
    'run_bench',
    'run_exp_family',
    'percentile_nearest_rank',
    'summarize',
    'true_rate',
    'write_bench_csv',
    # loader
    'detect_encoding',
    'read_text',
    'load_automaton',
    'load_graph',
    'parse_automaton',
    'serialize_automaton',
    'parse_graph',
    'serialize_graph',
]
