"""
半環モジュール

5種類の半環（ブール、トロピカル自然数、トロピカル非負有理数、max-times、有理数体）を
厳密演算で提供。l-モノイドには格子順序 ⊑、交わり ⊓、剰余（residuation）を定義する。

値は不変のスカラーで、浮動小数点は使わない。∞ は番兵 INF で表す。
"""

import math
import numbers
import re
from abc import ABC, abstractmethod
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, Dict

from weighted_upto.errors import ParseError, UnsupportedOperation, UsageError

# ∞ の番兵。算術には参加せず、加算で吸収されるだけ
INF = math.inf

_NATURAL = re.compile(r'^\d+$')
_RATIONAL = re.compile(r'^-?\d+/\d+$')
_DECIMAL = re.compile(r'^-?\d+(\.\d{1,6})?$')


class SemiringId(str, Enum):
    """半環の識別子"""

    BOOLEAN = 'boolean'
    TROPICAL_NAT = 'tropical-nat'
    TROPICAL_REAL = 'tropical-real'
    MAXTIMES = 'maxtimes'
    RATIONAL_FIELD = 'rational-field'

    @property
    def is_lmonoid(self) -> bool:
        return self is not SemiringId.RATIONAL_FIELD

    @property
    def is_ring(self) -> bool:
        return self is SemiringId.RATIONAL_FIELD

    @classmethod
    def parse(cls, text: str) -> 'SemiringId':
        """
        文字列から半環IDを取得

        Args:
            text: 'boolean', 'tropical-nat' 等

        Returns:
            SemiringId: 対応するID
        """
        for member in cls:
            if member.value == text:
                return member
        known = ', '.join(m.value for m in cls)
        raise ParseError('unknown-semiring', f"未知の半環: {text}（{known} のいずれかを指定）")


# =============================================================================
# 半環の実装（ペイロード上の演算）
# =============================================================================

class Semiring(ABC):
    """
    半環の抽象基底クラス

    演算はすべて正規化済みペイロード（bool / int / Fraction / INF）に対して定義する。
    """

    ident: SemiringId
    zero: Any
    one: Any

    @abstractmethod
    def add(self, x, y):
        return NotImplemented

    @abstractmethod
    def mul(self, x, y):
        return NotImplemented

    @abstractmethod
    def canonical(self, x):
        """ペイロードを検証して正規形に変換する"""
        return NotImplemented

    def le(self, x, y) -> bool:
        raise UnsupportedOperation(f"{self.ident.value} には格子順序がありません")

    def meet(self, x, y):
        raise UnsupportedOperation(f"{self.ident.value} には格子の交わりがありません")

    def residuate(self, x, y):
        raise UnsupportedOperation(f"{self.ident.value} には剰余がありません")

    @abstractmethod
    def parse(self, text: str):
        return NotImplemented

    def format(self, x) -> str:
        if x == INF:
            return 'inf'
        if isinstance(x, Fraction):
            return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
        return str(x)


class BooleanSemiring(Semiring):
    """ブール半環 ({0,1}, ∨, ∧, 0, 1)"""

    ident = SemiringId.BOOLEAN
    zero = False
    one = True

    def add(self, x, y):
        return x or y

    def mul(self, x, y):
        return x and y

    def le(self, x, y) -> bool:
        return (not x) or y

    def meet(self, x, y):
        return x and y

    def residuate(self, x, y):
        return (not x) or y

    def canonical(self, x):
        if isinstance(x, bool):
            return x
        if x in (0, 1):
            return bool(x)
        raise UsageError(f"ブール値ではありません: {x!r}")

    def parse(self, text: str):
        if text not in ('0', '1'):
            raise ParseError('malformed-scalar', f"ブール値は 0 または 1 で指定してください: {text}")
        return text == '1'

    def format(self, x) -> str:
        return '1' if x else '0'


class TropicalSemiring(Semiring):
    """
    トロピカル半環 (N0∪{∞} または Q≥0∪{∞}, min, +, ∞, 0)

    格子順序 ⊑ は数値の逆順 ≥。剰余は修正減算 b ∸ a。
    """

    def __init__(self, natural: bool):
        self.natural = natural
        self.ident = SemiringId.TROPICAL_NAT if natural else SemiringId.TROPICAL_REAL
        self.zero = INF
        self.one = 0 if natural else Fraction(0)

    def add(self, x, y):
        return x if x <= y else y

    def mul(self, x, y):
        if x == INF or y == INF:
            return INF
        return x + y

    def le(self, x, y) -> bool:
        return x >= y

    def meet(self, x, y):
        return x if x >= y else y

    def residuate(self, x, y):
        # ∞ + ℓ = ∞ は常に y 以上なので、上限は格子の最大元 0
        if x == INF:
            return self.one
        if y == INF:
            return INF
        return y - x if y > x else self.one

    def canonical(self, x):
        if x == INF:
            return INF
        if isinstance(x, bool):
            raise UsageError(f"トロピカル値ではありません: {x!r}")
        if self.natural:
            if isinstance(x, Fraction) and x.denominator == 1:
                x = x.numerator
            if not isinstance(x, numbers.Integral) or x < 0:
                raise UsageError(f"自然数または inf を指定してください: {x!r}")
            return int(x)
        value = Fraction(x)
        if value < 0:
            raise UsageError(f"非負の有理数または inf を指定してください: {x!r}")
        return value

    def parse(self, text: str):
        if text == 'inf':
            return INF
        if self.natural:
            if not _NATURAL.match(text):
                raise ParseError('malformed-scalar', f"自然数または inf を指定してください: {text}")
            return int(text)
        value = _parse_rational(text)
        if value < 0:
            raise ParseError('malformed-scalar', f"非負の有理数または inf を指定してください: {text}")
        return value


class MaxTimesSemiring(Semiring):
    """max-times 半環 ([0,1]∩Q, max, ·, 0, 1)"""

    ident = SemiringId.MAXTIMES
    zero = Fraction(0)
    one = Fraction(1)

    def add(self, x, y):
        return x if x >= y else y

    def mul(self, x, y):
        return x * y

    def le(self, x, y) -> bool:
        return x <= y

    def meet(self, x, y):
        return x if x <= y else y

    def residuate(self, x, y):
        if x == 0:
            return self.one
        q = y / x
        return q if q < 1 else self.one

    def canonical(self, x):
        if isinstance(x, bool) or x == INF:
            raise UsageError(f"[0,1] の有理数ではありません: {x!r}")
        value = Fraction(x)
        if not 0 <= value <= 1:
            raise UsageError(f"[0,1] の有理数ではありません: {x!r}")
        return value

    def parse(self, text: str):
        value = _parse_rational(text)
        if not 0 <= value <= 1:
            raise ParseError('malformed-scalar', f"[0,1] の範囲外です: {text}")
        return value


class RationalField(Semiring):
    """有理数体 (Q, +, ·, 0, 1)"""

    ident = SemiringId.RATIONAL_FIELD
    zero = Fraction(0)
    one = Fraction(1)

    def add(self, x, y):
        return x + y

    def mul(self, x, y):
        return x * y

    def negate(self, x):
        return -x

    def subtract(self, x, y):
        return x - y

    def divide(self, x, y):
        if y == 0:
            raise UsageError("0 による除算です")
        return x / y

    def canonical(self, x):
        if isinstance(x, bool) or x == INF:
            raise UsageError(f"有理数ではありません: {x!r}")
        return Fraction(x)

    def parse(self, text: str):
        return _parse_rational(text)


def _parse_rational(text: str) -> Fraction:
    """'p/q' または小数6桁以下の10進表記を厳密な有理数に変換"""
    if _RATIONAL.match(text):
        p, q = text.split('/')
        if int(q) == 0:
            raise ParseError('malformed-scalar', f"分母が0です: {text}")
        return Fraction(int(p), int(q))
    if _DECIMAL.match(text):
        return Fraction(text)
    raise ParseError('malformed-scalar', f"有理数として解釈できません: {text}")


_SEMIRINGS: Dict[SemiringId, Semiring] = {
    SemiringId.BOOLEAN: BooleanSemiring(),
    SemiringId.TROPICAL_NAT: TropicalSemiring(natural=True),
    SemiringId.TROPICAL_REAL: TropicalSemiring(natural=False),
    SemiringId.MAXTIMES: MaxTimesSemiring(),
    SemiringId.RATIONAL_FIELD: RationalField(),
}


def get_semiring(ident: SemiringId) -> Semiring:
    """
    半環IDから実装を取得

    Args:
        ident: SemiringId

    Returns:
        Semiring: 半環の実装（シングルトン）
    """
    return _SEMIRINGS[SemiringId(ident)]


# =============================================================================
# スカラー値
# =============================================================================

@dataclass(frozen=True)
class SemiringValue:
    """
    半環の元（不変）

    Attributes:
        semiring: 所属する半環
        payload: 正規化済みスカラー（bool / int / Fraction / INF）
    """

    semiring: SemiringId
    payload: Any

    def __str__(self) -> str:
        return get_semiring(self.semiring).format(self.payload)


def value(ident: SemiringId, payload: Any) -> SemiringValue:
    """
    ペイロードを検証・正規化して半環の元を作る

    Args:
        ident: 半環ID
        payload: スカラー（int, Fraction, 'inf' 文字列は不可、INF は可）

    Returns:
        SemiringValue: 正規化された元
    """
    ident = SemiringId(ident)
    return SemiringValue(ident, get_semiring(ident).canonical(payload))


def zero(ident: SemiringId) -> SemiringValue:
    """加法単位元（乗法の零元）"""
    return SemiringValue(SemiringId(ident), get_semiring(ident).zero)


def one(ident: SemiringId) -> SemiringValue:
    """乗法単位元（l-モノイドでは格子の最大元）"""
    return SemiringValue(SemiringId(ident), get_semiring(ident).one)


def _same(a: SemiringValue, b: SemiringValue) -> Semiring:
    if a.semiring is not b.semiring:
        raise UsageError(f"異なる半環の元は演算できません: {a.semiring.value} と {b.semiring.value}")
    return get_semiring(a.semiring)


def combine(a: SemiringValue, b: SemiringValue) -> SemiringValue:
    """
    半環の加法（l-モノイドでは結び ⊔）

    Args:
        a: 左オペランド
        b: 右オペランド

    Returns:
        SemiringValue: a + b

    Examples:
        >>> str(combine(value('tropical-nat', 3), value('tropical-nat', 5)))
        '3'
    """
    s = _same(a, b)
    return SemiringValue(a.semiring, s.add(a.payload, b.payload))


def times(a: SemiringValue, b: SemiringValue) -> SemiringValue:
    """
    半環の乗法

    Args:
        a: 左オペランド
        b: 右オペランド

    Returns:
        SemiringValue: a · b
    """
    s = _same(a, b)
    return SemiringValue(a.semiring, s.mul(a.payload, b.payload))


def leq(a: SemiringValue, b: SemiringValue) -> bool:
    """
    格子順序 a ⊑ b

    トロピカルでは数値の ≥、max-times とブールでは ≤。
    有理数体では UnsupportedOperation。
    """
    s = _same(a, b)
    return s.le(a.payload, b.payload)


def meet(a: SemiringValue, b: SemiringValue) -> SemiringValue:
    """格子の交わり a ⊓ b"""
    s = _same(a, b)
    return SemiringValue(a.semiring, s.meet(a.payload, b.payload))


def residuum(a: SemiringValue, b: SemiringValue) -> SemiringValue:
    """
    剰余 a → b = ⊔{ℓ | a·ℓ ⊑ b}

    Args:
        a: 乗数側
        b: 上界側

    Returns:
        SemiringValue: 剰余。トロピカルでは b ∸ a（a=∞ なら 0）、
        max-times では min{1, b/a}（a=0 なら 1）、ブールでは ¬a ∨ b

    Examples:
        >>> str(residuum(value('tropical-nat', 2), value('tropical-nat', 5)))
        '3'
    """
    s = _same(a, b)
    return SemiringValue(a.semiring, s.residuate(a.payload, b.payload))


def parse_scalar(ident: SemiringId, text: str) -> SemiringValue:
    """
    スカラーのテキスト表記を解釈

    Args:
        ident: 半環ID
        text: 'inf', '3', '1/4', '0.25', '0', '1' 等

    Returns:
        SemiringValue: 解釈結果
    """
    ident = SemiringId(ident)
    return SemiringValue(ident, get_semiring(ident).parse(text.strip()))


def format_scalar(v: SemiringValue) -> str:
    """スカラーをテキスト表記に変換（parse_scalar の逆）"""
    return str(v)
