"""
コマンドラインインターフェース

使用方法:
    weighted-upto equiv automaton.txt --left unit:1 --right unit:2
    weighted-upto incl automaton.txt --left unit:1 --right unit:2 --sim
    weighted-upto threshold fig4.txt --vec unit:1+unit:5 --threshold 3 --algo hkpa-sim
    weighted-upto sim automaton.txt
    weighted-upto spath graph.txt --source 3
    weighted-upto gen --states 3 --threshold 10 --seed 42 --out random.txt
    weighted-upto bench --grid "3:10,3:20" --runs 1000 --seed 0 --csv out/bench.csv

終了コード:
    0: true / 成功
    1: false（反例の語を標準出力の2行目に出力）
    2: fuel 切れ
    64: 使い方・構文のエラー
"""

import argparse
import sys
import warnings
from pathlib import Path
from typing import Callable, Dict, List, Optional

from weighted_upto.base.config import (
    DEFAULT_FUEL,
    DEFAULT_REWRITE_FUEL,
    DEFAULT_STRATEGY,
    STRATEGIES,
    UptoConfig,
)
from weighted_upto.core.algorithms import (
    Answer,
    Verdict,
    abk,
    hkc,
    hkp,
    hkp_a,
    hkp_a_prime,
    hkp_prime,
    sim,
)
from weighted_upto.core.automata import (
    WeightedAutomaton,
    check_equivalence_witness,
    check_inclusion_witness,
    check_threshold_witness,
    format_word,
)
from weighted_upto.core.bench import (
    BenchReportGenerator,
    exp_family,
    gen_random,
    run_bench,
    run_exp_family,
    summarize,
    true_rate,
    write_bench_csv,
)
from weighted_upto.core.loader import load_automaton, load_graph, serialize_automaton
from weighted_upto.core.spath import solve_shortest_paths
from weighted_upto.errors import FuelExhausted, UsageError
from weighted_upto.utils.parsers import format_vector, parse_grid, parse_range, parse_vector

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_FUEL = 2
EXIT_USAGE = 64

THRESHOLD_ALGOS = {
    'abk': 'abk',
    'hkpa': 'hkp_a',
    'hkpa-sim': 'hkp_a_prime',
}


class CliConfig(UptoConfig):
    """コマンドライン引数から組み立てる設定"""

    def __init__(
        self,
        out_dir: Path = Path('output'),
        fuel: int = DEFAULT_FUEL,
        rewrite_fuel: int = DEFAULT_REWRITE_FUEL,
        strategy: str = DEFAULT_STRATEGY,
        encoding: str = 'utf-8'
    ):
        self._out_dir = Path(out_dir)
        self._fuel = fuel
        self._rewrite_fuel = rewrite_fuel
        self._strategy = strategy
        self._encoding = encoding

    @property
    def output_dir(self) -> Path:
        return self._out_dir

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


class _Parser(argparse.ArgumentParser):
    """引数エラーで終了せず UsageError を送出するパーサ"""

    def error(self, message: str):
        raise UsageError(f"引数エラー: {message}")


# =============================================================================
# 出力
# =============================================================================

def _emit_verdict(
    verdict: Verdict,
    A: WeightedAutomaton,
    show_stats: bool,
    witness_check: Optional[Callable[[tuple], bool]] = None
) -> int:
    print(verdict.answer.value)
    if verdict.answer is Answer.FALSE:
        print(format_word(A, verdict.witness))
    if show_stats:
        stats = verdict.stats
        print(f"relation_size={stats.relation_size}")
        print(f"pairs_processed={stats.pairs_processed}")
        print(f"rewrite_steps={stats.rewrite_steps}")
        if stats.sim_size is not None:
            print(f"sim_size={stats.sim_size}")
        if verdict.answer is Answer.FALSE and witness_check is not None:
            print(f"witness_valid={'true' if witness_check(verdict.witness) else 'false'}")
    return {
        Answer.TRUE: EXIT_OK,
        Answer.FALSE: EXIT_FALSE,
        Answer.FUEL_EXHAUSTED: EXIT_FUEL,
    }[verdict.answer]


def _algo_kwargs(config: CliConfig) -> Dict:
    return {'fuel': config.fuel, 'rewrite_fuel': config.rewrite_fuel, 'strategy': config.strategy}


# =============================================================================
# サブコマンド
# =============================================================================

def cmd_equiv(args, config: CliConfig) -> int:
    A = load_automaton(args.file, config)
    v1 = parse_vector(A.semiring, A.n, args.left)
    v2 = parse_vector(A.semiring, A.n, args.right)
    verdict = hkc(A, v1, v2, **_algo_kwargs(config))
    return _emit_verdict(verdict, A, args.stats, lambda w: check_equivalence_witness(A, v1, v2, w))


def cmd_incl(args, config: CliConfig) -> int:
    A = load_automaton(args.file, config)
    v1 = parse_vector(A.semiring, A.n, args.left)
    v2 = parse_vector(A.semiring, A.n, args.right)
    fn = hkp_prime if args.sim else hkp
    verdict = fn(A, v1, v2, **_algo_kwargs(config))
    return _emit_verdict(verdict, A, args.stats, lambda w: check_inclusion_witness(A, v1, v2, w))


def cmd_threshold(args, config: CliConfig) -> int:
    A = load_automaton(args.file, config)
    v = parse_vector(A.semiring, A.n, args.vec)
    T = args.threshold
    algo = THRESHOLD_ALGOS[args.algo]
    if algo == 'abk':
        verdict = abk(A, v, T, fuel=config.fuel)
    elif algo == 'hkp_a':
        verdict = hkp_a(A, v, T, **_algo_kwargs(config))
    else:
        verdict = hkp_a_prime(A, v, T, **_algo_kwargs(config))
    return _emit_verdict(verdict, A, args.stats, lambda w: check_threshold_witness(A, v, T, w))


def cmd_sim(args, config: CliConfig) -> int:
    A = load_automaton(args.file, config)
    relation = sim(A)
    for i, j in relation.non_reflexive():
        print(f"{i + 1} {j + 1}")
    if args.stats:
        print(f"sim_size={relation.size}")
    return EXIT_OK


def cmd_spath(args, config: CliConfig) -> int:
    G = load_graph(args.file, config)
    dist, rs = solve_shortest_paths(G, args.source, fuel=config.rewrite_fuel, strategy=config.strategy)
    print(format_vector(dist))
    if args.stats:
        print(f"rules={len(rs)}")
        print(f"rewrite_steps={rs.steps}")
    return EXIT_OK


def cmd_gen(args, config: CliConfig) -> int:
    if args.family is not None:
        A, _ = exp_family(args.family)
        header = f"# 例題族 n={args.family}, 初期ベクトル unit:1+unit:{args.family + 2}\n"
    else:
        if args.states is None or args.threshold is None:
            raise UsageError("--states と --threshold を指定してください（または --family）")
        params = config.gen_params(args.states, args.threshold, args.seed)
        A, v = gen_random(params)
        header = f"# ランダム生成 seed={args.seed}, 閾値 {args.threshold}, 初期ベクトル {format_vector(v)}\n"

    text = header + serialize_automaton(A)
    if args.out:
        out = Path(args.out)
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text, encoding='utf-8', newline='\n')
        warnings.warn(f"保存完了: {out}", UserWarning, stacklevel=2)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_bench(args, config: CliConfig) -> int:
    if args.grid is None and args.family is None:
        raise UsageError("--grid または --family を指定してください")
    algos = [a.strip() for a in args.algos.split(',')] if args.algos else ['abk', 'hkp_a', 'hkp_a_prime']
    progress = not args.quiet

    rows = []
    rates = {}
    if args.grid is not None:
        grid_rows, _ = run_bench(parse_grid(args.grid), args.runs, algos, args.seed, config, progress)
        rows += grid_rows
        rates = {algo: true_rate(grid_rows, algo) for algo in algos
                 if any(r.algo == algo and not r.fuel_exhausted for r in grid_rows)}
    family_rows = []
    if args.family is not None:
        family_rows = run_exp_family(parse_range(args.family), algos, config, progress)
        rows += family_rows

    summary = summarize(rows, config.percentiles)
    if args.csv:
        path = write_bench_csv(rows, Path(args.csv))
        warnings.warn(f"保存完了: {path}", UserWarning, stacklevel=2)
    if args.report:
        generator = BenchReportGenerator(config)
        content = generator.generate_summary({'summary': summary, 'rates': rates})
        path = generator.save_report(content, args.report)
        warnings.warn(f"保存完了: {path}", UserWarning, stacklevel=2)
    if args.plot:
        from weighted_upto.core.viz import create_bench_charts

        create_bench_charts(Path(args.plot), summary, family_rows, config)

    sys.stdout.write(summary.to_csv(index=False, lineterminator='\n'))
    return EXIT_OK


# =============================================================================
# パーサ
# =============================================================================

def _add_common_flags(parser: argparse.ArgumentParser, suppress: bool) -> None:
    # サブコマンド側は SUPPRESS にして、サブコマンドの前に書いた値を上書きしない
    def default(value):
        return argparse.SUPPRESS if suppress else value

    parser.add_argument('--fuel', type=int, default=default(DEFAULT_FUEL), help='取り出すペア数の上限')
    parser.add_argument('--rewrite-fuel', type=int, default=default(DEFAULT_REWRITE_FUEL), help='書き換えステップ数の上限')
    parser.add_argument('--strategy', choices=STRATEGIES, default=default(DEFAULT_STRATEGY), help='書き換え戦略')
    parser.add_argument('--stats', action='store_true', default=default(False), help='統計を key=value 形式で出力')
    parser.add_argument('--quiet', action='store_true', default=default(False), help='診断メッセージとプログレスバーを抑止')
    parser.add_argument('--out-dir', default=default('output'), help='レポート・グラフの出力ディレクトリ')
    parser.add_argument('--encoding', default=default('utf-8'), help="入力ファイルのエンコーディング（'auto' で自動検出）")


def build_parser() -> argparse.ArgumentParser:
    """サブコマンドと共通フラグを持つパーサを構築（共通フラグはサブコマンドの前後どちらにも書ける）"""
    common = _Parser(add_help=False)
    _add_common_flags(common, suppress=True)

    parser = _Parser(prog='weighted-upto', description='重み付きオートマトンの up-to 合同による判定')
    _add_common_flags(parser, suppress=False)
    sub = parser.add_subparsers(dest='command', parser_class=_Parser)
    sub.required = True

    p = sub.add_parser('equiv', parents=[common], help='言語等価性（HKC）')
    p.add_argument('file')
    p.add_argument('--left', required=True)
    p.add_argument('--right', required=True)
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser('incl', parents=[common], help='言語包含（HKP）')
    p.add_argument('file')
    p.add_argument('--left', required=True)
    p.add_argument('--right', required=True)
    p.add_argument('--sim', action='store_true', help='シミュレーションで種付けする（HKP\'）')
    p.set_defaults(func=cmd_incl)

    p = sub.add_parser('threshold', parents=[common], help='閾値判定')
    p.add_argument('file')
    p.add_argument('--vec', required=True)
    p.add_argument('--threshold', type=int, required=True)
    p.add_argument('--algo', choices=tuple(THRESHOLD_ALGOS), default='hkpa')
    p.set_defaults(func=cmd_threshold)

    p = sub.add_parser('sim', parents=[common], help='シミュレーション関係')
    p.add_argument('file')
    p.set_defaults(func=cmd_sim)

    p = sub.add_parser('spath', parents=[common], help='単一始点最短経路')
    p.add_argument('file')
    p.add_argument('--source', type=int, required=True)
    p.set_defaults(func=cmd_spath)

    p = sub.add_parser('gen', parents=[common], help='ランダムなオートマトンの生成')
    p.add_argument('--states', type=int)
    p.add_argument('--threshold', type=int)
    p.add_argument('--seed', type=int, default=0)
    p.add_argument('--family', type=int, help='例題族（鎖の長さ n）を出力')
    p.add_argument('--out')
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser('bench', parents=[common], help='ベンチマーク')
    p.add_argument('--grid', help="'状態数:閾値' のカンマ区切り")
    p.add_argument('--runs', type=int, default=1000)
    p.add_argument('--seed', type=int, default=0)
    p.add_argument('--algos', help='abk,hkp_a,hkp_a_prime のカンマ区切り')
    p.add_argument('--csv')
    p.add_argument('--report', help='Markdown レポートのファイル名（out-dir/reports に保存）')
    p.add_argument('--plot', help='グラフの出力ディレクトリ')
    p.add_argument('--family', help="例題族の範囲（例: '2..8'）")
    p.set_defaults(func=cmd_bench)

    return parser


def _show_warning(message, category, filename, lineno, file=None, line=None):
    print(str(message), file=sys.stderr)


def main(argv: Optional[List[str]] = None) -> int:
    """
    エントリポイント

    Args:
        argv: 引数リスト（省略時は sys.argv[1:]）

    Returns:
        int: 終了コード
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        print(f"エラー: {e}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as e:
        return int(e.code or 0)

    config = CliConfig(
        out_dir=Path(args.out_dir),
        fuel=args.fuel,
        rewrite_fuel=args.rewrite_fuel,
        strategy=args.strategy,
        encoding=args.encoding,
    )
    errors = config.validate()
    if errors:
        for message in errors:
            print(f"エラー: {message}", file=sys.stderr)
        return EXIT_USAGE

    with warnings.catch_warnings():
        warnings.simplefilter('ignore' if args.quiet else 'always')
        warnings.showwarning = _show_warning
        try:
            return args.func(args, config)
        except FuelExhausted as e:
            print(f"fuel-exhausted: {e}", file=sys.stderr)
            print(Answer.FUEL_EXHAUSTED.value)
            return EXIT_FUEL
        except (ValueError, FileNotFoundError) as e:
            print(f"エラー: {e}", file=sys.stderr)
            return EXIT_USAGE


if __name__ == '__main__':
    sys.exit(main())
