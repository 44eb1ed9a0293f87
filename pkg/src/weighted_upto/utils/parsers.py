"""
ユーティリティモジュール

テキスト形式のトークン分割、ベクトル・グリッド・範囲の構文解析を提供。
"""

import re
from typing import List, Tuple

from weighted_upto.core.linalg import Vector, make_vector, unit_vector, vec_combine
from weighted_upto.core.semiring import SemiringId, get_semiring
from weighted_upto.errors import ParseError, UsageError

_UNIT = re.compile(r'^unit:(\d+)$')
_CELL = re.compile(r'^(\d+):(\d+)$')
_RANGE = re.compile(r'^(\d+)\.\.(\d+)$')


def tokenize(line: str) -> List[Tuple[str, int]]:
    """
    1行を空白区切りのトークンに分割（'#' 以降はコメント）

    Args:
        line: 入力行

    Returns:
        list: (トークン, 1始まりの列番号) のリスト

    Examples:
        >>> tokenize("states 3  # コメント")
        [('states', 1), ('3', 8)]
    """
    body = line.split('#', 1)[0]
    return [(m.group(0), m.start() + 1) for m in re.finditer(r'\S+', body)]


def parse_scalar_token(ident: SemiringId, token: str, line: int = 0, column: int = 0):
    """
    スカラーのトークンをペイロードに変換（位置情報つきのエラー）

    Args:
        ident: 半環ID
        token: トークン
        line: 行番号
        column: 列番号

    Returns:
        正規化済みペイロード
    """
    try:
        return get_semiring(ident).parse(token)
    except ParseError as e:
        raise e.at(line, column) from None


def parse_vector(ident: SemiringId, n: int, text: str) -> Vector:
    """
    ベクトルのテキスト表記を解釈

    2つの書式を受け付ける:
    - カンマ区切りのスカラー列: '0,inf,3'
    - 単位ベクトルの結び: 'unit:1+unit:4' または 'unit:1,unit:4'（1始まり）

    Args:
        ident: 半環ID
        n: 次元
        text: 入力テキスト

    Returns:
        Vector: 解釈結果

    Examples:
        >>> parse_vector('tropical-nat', 3, 'unit:1+unit:3').entries
        (0, inf, 0)
    """
    ident = SemiringId(ident)
    text = text.strip()
    if not text:
        raise ParseError('syntax', "ベクトルが空です", 1, 1)

    tokens = []
    column = 1
    for token in re.split(r'([+,])', text):
        if token in ('+', ','):
            column += 1
            continue
        tokens.append((token.strip(), column))
        column += len(token)

    units = [bool(_UNIT.match(t)) for t, _ in tokens]
    if any(units):
        if not all(units):
            bad = next(c for (t, c), u in zip(tokens, units) if not u)
            raise ParseError('syntax', "unit:i とスカラーは混在できません", 1, bad)
        result = None
        for token, col in tokens:
            index = int(_UNIT.match(token).group(1))
            if not 1 <= index <= n:
                raise ParseError('dimension-mismatch', f"単位ベクトルの位置が範囲外です: {index}（1〜{n}）", 1, col)
            e = unit_vector(ident, n, index - 1)
            result = e if result is None else vec_combine(result, e)
        return result

    if '+' in text:
        raise ParseError('syntax', "スカラー列の区切りはカンマです", 1, text.index('+') + 1)
    if len(tokens) != n:
        raise ParseError('dimension-mismatch', f"ベクトルの成分数が次元と一致しません: {len(tokens)} != {n}", 1, 1)
    return make_vector(ident, [parse_scalar_token(ident, t, 1, c) for t, c in tokens])


def format_vector(v: Vector) -> str:
    """ベクトルを空白区切りのスカラー列に変換"""
    s = get_semiring(v.semiring)
    return ' '.join(s.format(x) for x in v.entries)


def parse_grid(text: str) -> List[Tuple[int, int]]:
    """
    ベンチマークのグリッド指定を解釈

    Examples:
        >>> parse_grid("3:10,3:20")
        [(3, 10), (3, 20)]
    """
    cells = []
    for part in text.split(','):
        m = _CELL.match(part.strip())
        if not m:
            raise UsageError(f"グリッドは '状態数:閾値' のカンマ区切りで指定してください: {part}")
        cells.append((int(m.group(1)), int(m.group(2))))
    return cells


def parse_range(text: str) -> range:
    """
    整数の範囲指定を解釈（'2..8' は両端含む、'5' は単独）

    Examples:
        >>> list(parse_range("2..4"))
        [2, 3, 4]
    """
    text = text.strip()
    m = _RANGE.match(text)
    if m:
        low, high = int(m.group(1)), int(m.group(2))
        if low > high:
            raise UsageError(f"範囲が空です: {text}")
        return range(low, high + 1)
    if text.isdigit():
        return range(int(text), int(text) + 1)
    raise UsageError(f"範囲は 'a..b' または整数で指定してください: {text}")
