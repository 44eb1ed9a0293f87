"""
例外クラス

ライブラリ全体で使う例外階層。ドメインエラーはすべて ValueError の派生で、
呼び出し側は `except ValueError` でまとめて扱える。
"""

from typing import Optional


class UsageError(ValueError):
    """前提条件違反（半環の混在、次元不一致、未知の記号など）"""


class UnsupportedOperation(UsageError):
    """半環が提供しない演算（有理数体上の順序・剰余など）"""


class ParseError(ValueError):
    """
    テキスト形式の構文エラー

    Attributes:
        code: エラーコード（'unknown-semiring', 'dimension-mismatch',
              'malformed-scalar', 'missing-trans', 'duplicate-trans',
              'unknown-symbol', 'syntax'）
        line: 1始まりの行番号（不明なら0）
        column: 1始まりの列番号（不明なら0）
    """

    CODES = (
        'unknown-semiring',
        'dimension-mismatch',
        'malformed-scalar',
        'missing-trans',
        'duplicate-trans',
        'unknown-symbol',
        'syntax',
    )

    def __init__(self, code: str, message: str, line: int = 0, column: int = 0):
        if code not in self.CODES:
            raise UsageError(f"未知のエラーコード: {code}")
        self.code = code
        self.line = line
        self.column = column
        self.detail = message
        super().__init__(f"{line}:{column}: {message}")

    def at(self, line: int, column: int) -> 'ParseError':
        """位置情報を付け直した新しい ParseError を返す"""
        return ParseError(self.code, self.detail, line, column)


class FuelExhausted(RuntimeError):
    """
    書き換えステップ数の上限（fuel）に達した

    一般の l-モノイドでは書き換えが停止する保証がないため、
    上限超過は報告可能な結果として扱う。
    """

    def __init__(self, fuel: int, steps: Optional[int] = None):
        self.fuel = fuel
        self.steps = steps if steps is not None else fuel
        super().__init__(f"書き換えステップ数が上限に達しました: fuel={fuel}")
