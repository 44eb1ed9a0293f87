"""
ファイル形式モジュール

オートマトンとグラフのテキスト形式の読み書き、入力ファイルの読み込み
（エンコーディング自動検出を含む）を提供。

オートマトン形式:
    semiring tropical-nat
    states 2
    alphabet a b
    output 0 inf
    trans a
    1 inf
    inf 0
    trans b
    ...

グラフ形式:
    graph
    vertices 3
    0 3 2
    inf 0 5
    1 7 0
"""

import warnings
from pathlib import Path
from typing import Dict, List, Optional, Tuple

import chardet

from weighted_upto.base.config import UptoConfig
from weighted_upto.core.automata import WeightedAutomaton
from weighted_upto.core.linalg import Matrix, Vector
from weighted_upto.core.semiring import SemiringId, get_semiring
from weighted_upto.core.spath import WeightedDigraph
from weighted_upto.errors import ParseError
from weighted_upto.utils.parsers import parse_scalar_token, tokenize

Line = Tuple[int, List[Tuple[str, int]]]


# =============================================================================
# ファイル読み込み
# =============================================================================

def detect_encoding(file_path: Path, sample_size: int = 10000) -> str:
    """
    ファイルのエンコーディングを自動検出

    Args:
        file_path: ファイルパス
        sample_size: 検出に使用するバイト数

    Returns:
        str: 検出されたエンコーディング名
    """
    with open(file_path, 'rb') as f:
        raw_data = f.read(sample_size)
    result = chardet.detect(raw_data)
    encoding = result['encoding']

    # BOM付きUTF-8の処理
    if encoding and encoding.lower() in ['utf-8', 'ascii']:
        if raw_data.startswith(b'\xef\xbb\xbf'):
            encoding = 'utf-8-sig'

    return encoding or 'utf-8'


def read_text(file_path: Path, encoding: str = 'utf-8') -> str:
    """
    入力ファイルをテキストとして読み込み

    Args:
        file_path: ファイルパス
        encoding: エンコーディング（'auto' なら自動検出）

    Returns:
        str: ファイル内容
    """
    file_path = Path(file_path)
    if not file_path.exists():
        raise FileNotFoundError(f"入力ファイルが見つかりません: {file_path}")

    if encoding == 'auto':
        encoding = detect_encoding(file_path)
    return file_path.read_text(encoding=encoding)


def _encoding(config: Optional[UptoConfig], encoding: Optional[str]) -> str:
    if encoding:
        return encoding
    return config.encoding if config else 'utf-8'


def load_automaton(
    file_path: Path,
    config: Optional[UptoConfig] = None,
    encoding: Optional[str] = None
) -> WeightedAutomaton:
    """
    オートマトンファイルを読み込み

    Args:
        file_path: ファイルパス
        config: UptoConfig（encoding プロパティ使用）
        encoding: エンコーディング（config より優先）

    Returns:
        WeightedAutomaton: 読み込んだオートマトン
    """
    A = parse_automaton(read_text(file_path, _encoding(config, encoding)))
    warnings.warn(
        f"オートマトン読み込み完了: {A.semiring.value}, 状態数 {A.n}, 記号数 {len(A.alphabet)}",
        UserWarning,
        stacklevel=2
    )
    return A


def load_graph(
    file_path: Path,
    config: Optional[UptoConfig] = None,
    encoding: Optional[str] = None
) -> WeightedDigraph:
    """
    グラフファイルを読み込み

    Args:
        file_path: ファイルパス
        config: UptoConfig（encoding プロパティ使用）
        encoding: エンコーディング（config より優先）

    Returns:
        WeightedDigraph: 読み込んだグラフ
    """
    G = parse_graph(read_text(file_path, _encoding(config, encoding)))
    warnings.warn(f"グラフ読み込み完了: 頂点数 {G.n}", UserWarning, stacklevel=2)
    return G


# =============================================================================
# 構文解析
# =============================================================================

def _lines(text: str) -> List[Line]:
    """空行とコメント行を除いた (行番号, トークン列) のリスト"""
    result = []
    for number, raw in enumerate(text.splitlines(), start=1):
        tokens = tokenize(raw)
        if tokens:
            result.append((number, tokens))
    return result


def _single_int(line: Line, keyword: str) -> int:
    number, tokens = line
    if len(tokens) != 2:
        raise ParseError('syntax', f"'{keyword} <整数>' の形式で指定してください", number, tokens[0][1])
    token, column = tokens[1]
    if not token.isdigit() or int(token) == 0:
        raise ParseError('syntax', f"{keyword} は正の整数で指定してください: {token}", number, column)
    return int(token)


def _scalar_row(ident: SemiringId, n: int, line: Line, what: str) -> Tuple:
    number, tokens = line
    if len(tokens) != n:
        raise ParseError('dimension-mismatch', f"{what}の成分数が次元と一致しません: {len(tokens)} != {n}",
                         number, tokens[0][1] if tokens else 1)
    return tuple(parse_scalar_token(ident, t, number, c) for t, c in tokens)


def parse_automaton(text: str) -> WeightedAutomaton:
    """
    オートマトンのテキスト形式を解釈

    Args:
        text: ファイル内容

    Returns:
        WeightedAutomaton: 解釈結果

    Raises:
        ParseError: 未知の半環、次元不一致、不正なスカラー、遷移行列の欠落・重複、
            未知の記号、その他の構文エラー（行・列つき）
    """
    lines = _lines(text)
    ident: Optional[SemiringId] = None
    n: Optional[int] = None
    alphabet: Optional[Tuple[str, ...]] = None
    out: Optional[Tuple] = None
    trans: Dict[str, Tuple[Tuple, ...]] = {}
    last_line = lines[-1][0] if lines else 0

    def require(value, keyword: str, line: Line):
        if value is None:
            raise ParseError('syntax', f"{keyword} を先に指定してください", line[0], line[1][0][1])
        return value

    i = 0
    while i < len(lines):
        line = lines[i]
        number, tokens = line
        keyword, column = tokens[0]
        i += 1

        if keyword == 'semiring':
            if len(tokens) != 2:
                raise ParseError('syntax', "'semiring <id>' の形式で指定してください", number, column)
            try:
                ident = SemiringId.parse(tokens[1][0])
            except ParseError as e:
                raise e.at(number, tokens[1][1]) from None
        elif keyword == 'states':
            n = _single_int(line, 'states')
        elif keyword == 'alphabet':
            syms = tuple(t for t, _ in tokens[1:])
            if len(set(syms)) != len(syms):
                raise ParseError('syntax', f"アルファベットに重複があります: {' '.join(syms)}", number, column)
            alphabet = syms
        elif keyword == 'output':
            require(ident, 'semiring', line)
            require(n, 'states', line)
            out = _scalar_row(ident, n, (number, tokens[1:]), '出力ベクトル')
        elif keyword == 'trans':
            require(ident, 'semiring', line)
            require(n, 'states', line)
            require(alphabet, 'alphabet', line)
            if len(tokens) != 2:
                raise ParseError('syntax', "'trans <記号>' の形式で指定してください", number, column)
            sym, sym_col = tokens[1]
            if sym not in alphabet:
                raise ParseError('unknown-symbol', f"アルファベットにない記号: {sym}", number, sym_col)
            if sym in trans:
                raise ParseError('duplicate-trans', f"記号 {sym} の遷移行列が重複しています", number, sym_col)
            rows = []
            for _ in range(n):
                if i >= len(lines) or lines[i][1][0][0] in ('semiring', 'states', 'alphabet', 'output', 'trans'):
                    at = lines[i][0] if i < len(lines) else last_line
                    raise ParseError('dimension-mismatch', f"記号 {sym} の遷移行列の行数が不足しています: {len(rows)} < {n}", at, 1)
                rows.append(_scalar_row(ident, n, lines[i], f"記号 {sym} の遷移行列の行"))
                i += 1
            trans[sym] = tuple(rows)
        else:
            raise ParseError('syntax', f"未知の指示子: {keyword}", number, column)

    for value, keyword in ((ident, 'semiring'), (n, 'states'), (alphabet, 'alphabet'), (out, 'output')):
        if value is None:
            raise ParseError('syntax', f"{keyword} の指定がありません", last_line, 1)
    for sym in alphabet:
        if sym not in trans:
            raise ParseError('missing-trans', f"記号 {sym} の遷移行列がありません", last_line, 1)

    return WeightedAutomaton(
        semiring=ident,
        n=n,
        alphabet=alphabet,
        output=Vector(ident, out),
        trans={sym: Matrix(ident, trans[sym]) for sym in alphabet},
    )


def serialize_automaton(A: WeightedAutomaton) -> str:
    """
    オートマトンをテキスト形式に変換（parse_automaton の逆）

    Args:
        A: オートマトン

    Returns:
        str: LF 改行のテキスト
    """
    fmt = get_semiring(A.semiring).format
    lines = [
        f"semiring {A.semiring.value}",
        f"states {A.n}",
        'alphabet ' + ' '.join(A.alphabet),
        'output ' + ' '.join(fmt(x) for x in A.output.entries),
    ]
    for sym in A.alphabet:
        lines.append(f"trans {sym}")
        for row in A.trans[sym].entries:
            lines.append(' '.join(fmt(x) for x in row))
    return '\n'.join(lines) + '\n'


def parse_graph(text: str, semiring: SemiringId = SemiringId.TROPICAL_NAT) -> WeightedDigraph:
    """
    グラフのテキスト形式を解釈

    Args:
        text: ファイル内容
        semiring: 重みの半環（トロピカル）

    Returns:
        WeightedDigraph: 解釈結果（対角成分は0でなければならない）
    """
    lines = _lines(text)
    if not lines or lines[0][1][0][0] != 'graph' or len(lines[0][1]) != 1:
        at = lines[0][0] if lines else 0
        raise ParseError('syntax', "先頭行は 'graph' にしてください", at, 1)
    if len(lines) < 2 or lines[1][1][0][0] != 'vertices':
        at = lines[1][0] if len(lines) > 1 else lines[0][0]
        raise ParseError('syntax', "'vertices <整数>' を指定してください", at, 1)
    n = _single_int(lines[1], 'vertices')
    body = lines[2:]
    if len(body) != n:
        at = body[-1][0] if body else lines[1][0]
        raise ParseError('dimension-mismatch', f"重みの行数が頂点数と一致しません: {len(body)} != {n}", at, 1)

    rows = []
    for index, line in enumerate(body):
        row = _scalar_row(semiring, n, line, '重みの行')
        if row[index] != 0:
            number, tokens = line
            raise ParseError('malformed-scalar', f"対角成分は0にしてください: {tokens[index][0]}",
                             number, tokens[index][1])
        rows.append(row)
    return WeightedDigraph(n=n, weight=tuple(rows), semiring=semiring)


def serialize_graph(G: WeightedDigraph) -> str:
    """グラフをテキスト形式に変換（parse_graph の逆）"""
    fmt = get_semiring(G.semiring).format
    lines = ['graph', f"vertices {G.n}"]
    lines += [' '.join(fmt(x) for x in row) for row in G.weight]
    return '\n'.join(lines) + '\n'
