"""
weighted_upto.utils - ユーティリティモジュール

トークン分割、ベクトル・グリッド・範囲の構文解析用のヘルパー関数を提供。
"""

from .parsers import (
    tokenize,
    parse_scalar_token,
    parse_vector,
    format_vector,
    parse_grid,
    parse_range,
)

__all__ = [
    'tokenize',
    'parse_scalar_token',
    'parse_vector',
    'format_vector',
    'parse_grid',
    'parse_range',
]
