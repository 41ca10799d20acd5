"""Recombinant sort: hashing keys into a digit-indexed count space, then raster-scanning it back out."""

from .errors import (
    BufferTooSmall,
    CellBudgetExceeded,
    InsufficientData,
    InvalidKey,
    InvalidRange,
    NegativeValue,
    NonFinite,
    OutOfRange,
    ParseError,
    RangeExceeded,
    RSortError,
    SpecMismatch,
    SymbolOutOfAlphabet,
)
from .extraction import ExtractionReport, extract, sort_keys
from .hashing import CountSpace, TraverseMaps, build_count_space, hash_insert, new_space
from .keys import (
    DEFAULT_MAX_CELLS,
    DecimalValue,
    DigitKey,
    KeySpec,
    digits_of,
    float_to_decimal,
    normalize_dataset,
    reconstruct_value,
    strings_to_keys,
)
from .sorting import sort_decimals, sort_integers, sort_strings, sort_values

__all__ = [
    "BufferTooSmall",
    "CellBudgetExceeded",
    "CountSpace",
    "DEFAULT_MAX_CELLS",
    "DecimalValue",
    "DigitKey",
    "ExtractionReport",
    "InsufficientData",
    "InvalidKey",
    "InvalidRange",
    "KeySpec",
    "NegativeValue",
    "NonFinite",
    "OutOfRange",
    "ParseError",
    "RSortError",
    "RangeExceeded",
    "SpecMismatch",
    "SymbolOutOfAlphabet",
    "TraverseMaps",
    "build_count_space",
    "digits_of",
    "extract",
    "float_to_decimal",
    "hash_insert",
    "new_space",
    "normalize_dataset",
    "reconstruct_value",
    "sort_decimals",
    "sort_integers",
    "sort_keys",
    "sort_strings",
    "sort_values",
    "strings_to_keys",
]
