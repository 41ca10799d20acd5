"""Key model: turning decimals, integers and byte strings into fixed-width digit keys.

Every element of a dataset must have the same number of digits before it can be
hashed into the count space, so decimals are padded with trailing zeros to the
largest fractional width in the dataset and integer parts are implicitly padded
with leading zeros to the widest integer part.  A key is then simply the padded
numeral read as an integer in the key's radix.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from typing import Iterable, Sequence

from .errors import (
    CellBudgetExceeded,
    InvalidKey,
    NegativeValue,
    NonFinite,
    ParseError,
    SymbolOutOfAlphabet,
)

DEFAULT_MAX_CELLS = 10**8
DEFAULT_ALPHABET = b"abcdefghijklmnopqrstuvwxyz"
PAD_SYMBOL = 0

_NUMERAL = re.compile(r"(\d*)(?:\.(\d+))?", re.ASCII)


@dataclass(frozen=True)
class DecimalValue:
    """A non-negative decimal held exactly as ``mantissa / 10**scale``."""

    mantissa: int
    scale: int

    def __post_init__(self) -> None:
        if self.mantissa < 0:
            raise NegativeValue(f"negative mantissa {self.mantissa}")
        if self.scale < 0:
            raise ValueError(f"scale must be >= 0, got {self.scale}")

    def render(self) -> str:
        if self.scale == 0:
            return str(self.mantissa)
        ip, fp = divmod(self.mantissa, 10**self.scale)
        return f"{ip}.{fp:0{self.scale}d}"

    def __str__(self) -> str:
        return self.render()


@dataclass(frozen=True)
class KeySpec:
    """Geometry of a key space: ``radix ** total_digits`` cells.

    ``integer_digits`` is the number of digits before the decimal point; the
    remaining ``scale`` digits follow it.  For string keys the whole width is
    treated as integer digits.
    """

    radix: int
    total_digits: int
    integer_digits: int

    def __post_init__(self) -> None:
        if self.radix < 2:
            raise ValueError(f"radix must be >= 2, got {self.radix}")
        if self.total_digits < 1:
            raise ValueError(f"total_digits must be >= 1, got {self.total_digits}")
        if not 0 <= self.integer_digits <= self.total_digits:
            raise ValueError(
                f"integer_digits must lie in [0, {self.total_digits}], got {self.integer_digits}"
            )

    @classmethod
    def decimal(cls, integer_digits: int, scale: int) -> KeySpec:
        return cls(10, integer_digits + scale, integer_digits)

    @property
    def scale(self) -> int:
        return self.total_digits - self.integer_digits

    @property
    def cells(self) -> int:
        return self.radix**self.total_digits

    @property
    def row_stride(self) -> int:
        """Cells per leading-digit row, i.e. ``radix ** (n - 1)``."""
        return self.radix ** (self.total_digits - 1)

    def check_budget(self, max_cells: int | None = None) -> None:
        budget = DEFAULT_MAX_CELLS if max_cells is None else max_cells
        if self.cells > budget:
            raise CellBudgetExceeded(
                f"key space needs {self.radix}^{self.total_digits} = {self.cells} cells, "
                f"budget is {budget}"
            )

    def key(self, value: int) -> DigitKey:
        return DigitKey(value, self)


@dataclass(frozen=True)
class DigitKey:
    key: int
    spec: KeySpec

    def __post_init__(self) -> None:
        if not 0 <= self.key < self.spec.cells:
            raise InvalidKey(f"key {self.key} outside [0, {self.spec.cells})")


def parse_decimal(text: str) -> DecimalValue:
    """Parse a plain non-negative numeral such as ``"4.5"``, ``"7"`` or ``".25"``."""
    if text.startswith("-"):
        raise NegativeValue(f"negative values are not supported: {text!r}")
    m = _NUMERAL.fullmatch(text)
    if m is None or (not m.group(1) and m.group(2) is None):
        raise ParseError(f"not a decimal numeral: {text!r}")
    ip, fp = m.group(1), m.group(2) or ""
    return DecimalValue(int(ip + fp or "0"), len(fp))


def float_to_decimal(x: float, cd: int) -> DecimalValue:
    """Scale a binary float to ``cd`` fractional digits, rounding half up.

    Rounding is applied to the exact binary expansion of ``x``; callers that
    need decimal-exact behaviour should pass strings to ``normalize_dataset``.
    """
    if cd < 0:
        raise ValueError(f"cd must be >= 0, got {cd}")
    if not math.isfinite(x):
        raise NonFinite(f"non-finite value {x!r}")
    if x < 0:
        raise NegativeValue(f"negative values are not supported: {x!r}")
    scaled = (Decimal(x) * (Decimal(10) ** cd)).quantize(Decimal(1), rounding=ROUND_HALF_UP)
    return DecimalValue(int(scaled), cd)


_ITEM = r"(?:\d+(?:\.\d+)?|\.\d+)"
_BULK = re.compile(rf"{_ITEM}(?:\n{_ITEM})*", re.ASCII)


def _check_numerals(values: Sequence[str]) -> None:
    joined = "\n".join(values)
    if _BULK.fullmatch(joined) and joined.count("\n") == len(values) - 1:
        return
    for text in values:
        parse_decimal(text)
    raise ParseError("malformed decimal numeral in input")  # pragma: no cover


def normalize_dataset(
    values: Sequence[str], max_cells: int | None = None
) -> tuple[list[int], KeySpec]:
    """Pad every numeral to a common width and return the integer keys.

    The scale is the widest fractional part in the dataset and the integer
    width is the digit count of the largest integer part (at least one digit).
    Keys come back in input order.
    """
    if not values:
        return [], KeySpec.decimal(1, 0)
    _check_numerals(values)
    parts = [v.partition(".") for v in values]
    cd = max(len(fp) for _, _, fp in parts)
    lam = max(1, max(len(ip.lstrip("0")) for ip, _, _ in parts))
    spec = KeySpec.decimal(lam, cd)
    spec.check_budget(max_cells)
    pad = ["0" * i for i in range(cd + 1)]
    keys = [int((ip or "0") + fp + pad[cd - len(fp)]) for ip, _, fp in parts]
    return keys, spec


def integer_spec(values: Sequence[int], max_cells: int | None = None) -> KeySpec:
    """Key spec for plain non-negative integers (scale 0)."""
    if not values:
        return KeySpec.decimal(1, 0)
    lo, hi = min(values), max(values)
    if lo < 0:
        raise NegativeValue(f"negative values are not supported: {lo}")
    spec = KeySpec.decimal(max(1, len(str(hi))), 0)
    spec.check_budget(max_cells)
    return spec


def digits_of(k: DigitKey) -> tuple[int, ...]:
    """Digits of a key, most significant first, always ``total_digits`` long."""
    radix, rest = k.spec.radix, k.key
    out = [0] * k.spec.total_digits
    for i in range(k.spec.total_digits - 1, -1, -1):
        rest, out[i] = divmod(rest, radix)
    return tuple(out)


def reconstruct_value(k: DigitKey) -> str:
    """Render a decimal key with the point placed after the integer digits.

    Leading zeros of the integer part are dropped (one is always kept), so the
    key of ``"0.3"`` renders as ``"0.3"`` and not ``"00.3"`` under a two-digit
    integer width.
    """
    if k.spec.radix != 10:
        raise ValueError("only radix-10 keys render as decimals")
    d = digits_of(k)
    lam = k.spec.integer_digits
    ip = "".join(map(str, d[:lam])).lstrip("0") or "0"
    if k.spec.scale == 0:
        return ip
    return ip + "." + "".join(map(str, d[lam:]))


def format_scaled(mantissas: Iterable[int], scale: int) -> list[str]:
    """Render each ``m / 10**scale`` with exactly ``scale`` fractional digits."""
    if scale == 0:
        return [str(m) for m in mantissas]
    w = scale + 1
    return [(s := str(m).zfill(w))[:-scale] + "." + s[-scale:] for m in mantissas]


def render_keys(keys: Iterable[int], spec: KeySpec) -> list[str]:
    """Bulk equivalent of ``reconstruct_value`` for radix-10 keys."""
    return format_scaled(keys, spec.scale)


def _alphabet_table(alphabet: bytes) -> tuple[bytes, dict[int, int]]:
    symbols = bytes(sorted(set(alphabet)))
    if not symbols:
        raise ValueError("alphabet must not be empty")
    if PAD_SYMBOL in symbols:
        raise ValueError("alphabet must not contain the reserved pad byte 0x00")
    return symbols, {b: i + 1 for i, b in enumerate(symbols)}


def strings_to_keys(
    values: Sequence[bytes], alphabet: bytes = DEFAULT_ALPHABET, max_cells: int | None = None
) -> tuple[list[int], KeySpec]:
    """Encode byte strings as keys whose numeric order is lexicographic order.

    Symbols get ordinals 1..|alphabet| in byte order; ordinal 0 pads short
    strings at the end, so a prefix always sorts before its extensions.
    """
    symbols, ordinal = _alphabet_table(alphabet)
    radix = len(symbols) + 1
    width = max(1, max((len(s) for s in values), default=0))
    spec = KeySpec(radix, width, width)
    spec.check_budget(max_cells)
    keys = []
    for s in values:
        k = 0
        for b in s:
            o = ordinal.get(b)
            if o is None:
                raise SymbolOutOfAlphabet(f"byte {bytes([b])!r} of {s!r} is not in the alphabet")
            k = k * radix + o
        keys.append(k * radix ** (width - len(s)))
    return keys, spec


def keys_to_strings(keys: Iterable[int], spec: KeySpec, alphabet: bytes = DEFAULT_ALPHABET) -> list[bytes]:
    """Inverse of ``strings_to_keys``; trailing pad ordinals are dropped."""
    symbols, _ = _alphabet_table(alphabet)
    if spec.radix != len(symbols) + 1:
        raise ValueError("alphabet does not match the key spec radix")
    out = []
    for k in keys:
        d = digits_of(DigitKey(k, spec))
        end = len(d)
        while end and d[end - 1] == PAD_SYMBOL:
            end -= 1
        out.append(bytes(symbols[o - 1] for o in d[:end]))
    return out
