"""Fixed-to-variable complementary delivery codec: zero error, prefix-free.

Every joint type gets a coding table, so no rate parameter exists and no
pair is ever rejected.  A codeword is

    [type index: fixed width over all joint types][symbol: per-type width]

where the symbol width is determined by the joint type alone (ceil-log of
the larger shell size, zero when both shells are singletons).  The fixed
header makes the code a prefix set: a parser always knows the symbol
width after reading the header, so concatenated codewords frame uniquely.

Codeword length is therefore a function of the joint type only, which is
what the overflow/underflow analysis sums over.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .types_core import (
    Alphabet,
    JointType,
    Sequence,
    enumerate_joint_types,
    joint_type_of,
    rank_in_type_class,
    type_of,
    unrank_in_type_class,
)
from .info_measures import SourceSpec, epsilon_n, prob_of_type_class
from .coding_table import get_coding_table
from .ff_codec import (
    FFCodeConfig,
    bit_width,
    ff_decode_x,
    ff_decode_y,
    ff_encode,
    make_code,
    num_symbols_of,
    FFCodeword,
    SideInfoMismatchError,
)


class MalformedCodewordError(ValueError):
    """Bit string too short or fields out of range."""


@dataclass(frozen=True)
class FVCodeword:
    bits: str

    def __post_init__(self):
        if set(self.bits) - {"0", "1"}:
            raise ValueError("codeword must be a string of 0/1")

    def __len__(self) -> int:
        return len(self.bits)


def _to_bits(value: int, width: int) -> str:
    if value >= (1 << width):
        raise ValueError(f"value {value} does not fit in {width} bits")
    return format(value, f"0{width}b") if width else ""


@dataclass(frozen=True)
class FVCode:
    """Type enumeration and widths for one block length and alphabet pair."""

    n: int
    ax: Alphabet
    ay: Alphabet
    types: tuple[JointType, ...]
    index_of: dict
    header_width: int

    def symbol_width(self, jt: JointType) -> int:
        return bit_width(num_symbols_of(jt))

    def codeword_length(self, jt: JointType) -> int:
        return self.header_width + self.symbol_width(jt)


@lru_cache(maxsize=None)
def make_fv_code(n: int, ax: Alphabet = Alphabet(2), ay: Alphabet = Alphabet(2)) -> FVCode:
    types = enumerate_joint_types(n, ax, ay)
    return FVCode(
        n=n,
        ax=ax,
        ay=ay,
        types=types,
        index_of={jt: i for i, jt in enumerate(types)},
        header_width=bit_width(len(types)),
    )


def fv_encode(n: int, x: Sequence, y: Sequence) -> FVCodeword:
    if len(x) != n or len(y) != n:
        raise ValueError(f"sequences must have length n={n}")
    code = make_fv_code(n, x.alphabet, y.alphabet)
    jt = joint_type_of(x, y)
    header = _to_bits(code.index_of[jt], code.header_width)
    width = code.symbol_width(jt)
    if width == 0:
        return FVCodeword(header)
    table = get_coding_table(jt)
    symbol = table.symbol_at(rank_in_type_class(x), rank_in_type_class(y))
    return FVCodeword(header + _to_bits(symbol, width))


def _parse(code: FVCode, bits: str, offset: int) -> tuple[JointType, int, int]:
    """Parse one codeword starting at `offset`; returns (jt, symbol, end)."""
    end_header = offset + code.header_width
    if end_header > len(bits):
        raise MalformedCodewordError("truncated type header")
    idx = int(bits[offset:end_header], 2) if code.header_width else 0
    if idx >= len(code.types):
        raise MalformedCodewordError(f"type index {idx} out of range")
    jt = code.types[idx]
    width = code.symbol_width(jt)
    end = end_header + width
    if end > len(bits):
        raise MalformedCodewordError("truncated symbol field")
    symbol = int(bits[end_header:end], 2) if width else 0
    return jt, symbol, end


def fv_decode_x_stream(
    n: int, bits: str, offset: int, y: Sequence, ax: Alphabet | None = None
) -> tuple[Sequence, int]:
    """Decode one codeword from a concatenated stream; returns (x, next offset).

    The x-alphabet defaults to the side information's alphabet; pass `ax`
    when the two differ.
    """
    code = make_fv_code(n, ax or y.alphabet, y.alphabet)
    jt, symbol, end = _parse(code, bits, offset)
    if type_of(y) != jt.y_marginal():
        raise SideInfoMismatchError("side information type does not match codeword")
    table = get_coding_table(jt)
    row = table.row_for(rank_in_type_class(y), symbol)
    return unrank_in_type_class(jt.x_marginal(), row), end


def fv_decode_x(cw: FVCodeword, y: Sequence) -> Sequence:
    """Exact reproduction of x from the codeword and side information y."""
    x, end = fv_decode_x_stream(len(y), cw.bits, 0, y)
    if end != len(cw.bits):
        raise MalformedCodewordError("trailing bits after codeword")
    return x


def fv_decode_y_stream(
    n: int, bits: str, offset: int, x: Sequence, ay: Alphabet | None = None
) -> tuple[Sequence, int]:
    code = make_fv_code(n, x.alphabet, ay or x.alphabet)
    jt, symbol, end = _parse(code, bits, offset)
    if type_of(x) != jt.x_marginal():
        raise SideInfoMismatchError("side information type does not match codeword")
    table = get_coding_table(jt)
    col = table.col_for(rank_in_type_class(x), symbol)
    return unrank_in_type_class(jt.y_marginal(), col), end


def fv_decode_y(cw: FVCodeword, x: Sequence) -> Sequence:
    y, end = fv_decode_y_stream(len(x), cw.bits, 0, x)
    if end != len(cw.bits):
        raise MalformedCodewordError("trailing bits after codeword")
    return y


def expected_length(n: int, p: SourceSpec) -> float:
    """E[codeword length] in bits, exact sum over joint types."""
    code = make_fv_code(n, p.ax, p.ay)
    return sum(prob_of_type_class(jt, p) * code.codeword_length(jt) for jt in code.types)


def overflow_probability(n: int, rate: float, p: SourceSpec, threshold: float | None = None) -> float:
    """P(length > threshold), default threshold n(rate + epsilon_n)."""
    if threshold is None:
        threshold = n * (rate + epsilon_n(n, p.ax, p.ay))
    code = make_fv_code(n, p.ax, p.ay)
    return sum(
        prob_of_type_class(jt, p)
        for jt in code.types
        if code.codeword_length(jt) > threshold
    )


def underflow_probability(n: int, rate: float, p: SourceSpec, threshold: float | None = None) -> float:
    """P(length < threshold), default threshold n*rate."""
    if threshold is None:
        threshold = n * rate
    code = make_fv_code(n, p.ax, p.ay)
    return sum(
        prob_of_type_class(jt, p)
        for jt in code.types
        if code.codeword_length(jt) < threshold
    )


# --- Wrapping a fixed-length code into a zero-error variable-length one ---


def raw_pair_width(n: int, ax: Alphabet, ay: Alphabet) -> int:
    """Bits to send the pair verbatim: per-symbol ceil-log widths."""
    return n * (max(1, bit_width(ax.size)) + max(1, bit_width(ay.size)))


@dataclass(frozen=True)
class WrappedFVCode:
    """Zero-error variable-length code built around a fixed-length one.

    A leading flag bit selects between the fixed-length codeword (pairs
    the fixed code reproduces exactly) and the verbatim pair (everything
    else), so decoding never fails at any rate.
    """

    cfg: FFCodeConfig

    def encode(self, x: Sequence, y: Sequence) -> FVCodeword:
        code = make_code(self.cfg)
        cw = ff_encode(self.cfg, x, y)
        if not cw.error_flag:
            body = (
                "0"
                + _to_bits(cw.type_index, code.type_width)
                + _to_bits(cw.symbol, code.symbol_width)
            )
            return FVCodeword("0" + body)
        raw = "".join(
            _to_bits(c, max(1, bit_width(self.cfg.ax.size))) for c in x.letters
        ) + "".join(_to_bits(c, max(1, bit_width(self.cfg.ay.size))) for c in y.letters)
        return FVCodeword("1" + raw)

    def codeword_length(self, jt: JointType) -> int:
        code = make_code(self.cfg)
        if jt in code.index_of:
            return 1 + code.codeword_width
        return 1 + raw_pair_width(self.cfg.n, self.cfg.ax, self.cfg.ay)

    def decode_x(self, cw: FVCodeword, y: Sequence) -> Sequence:
        code = make_code(self.cfg)
        bits = cw.bits
        if bits[0] == "1":
            w = max(1, bit_width(self.cfg.ax.size))
            letters = tuple(
                int(bits[1 + i * w:1 + (i + 1) * w], 2) for i in range(self.cfg.n)
            )
            return Sequence(letters, self.cfg.ax)
        flag = bits[1]
        idx_end = 2 + code.type_width
        idx = int(bits[2:idx_end], 2) if code.type_width else 0
        symbol = int(bits[idx_end:], 2) if code.symbol_width else 0
        return ff_decode_x(self.cfg, FFCodeword(idx, symbol, flag == "1"), y)

    def decode_y(self, cw: FVCodeword, x: Sequence) -> Sequence:
        code = make_code(self.cfg)
        bits = cw.bits
        if bits[0] == "1":
            wx = max(1, bit_width(self.cfg.ax.size))
            wy = max(1, bit_width(self.cfg.ay.size))
            start = 1 + self.cfg.n * wx
            letters = tuple(
                int(bits[start + i * wy:start + (i + 1) * wy], 2)
                for i in range(self.cfg.n)
            )
            return Sequence(letters, self.cfg.ay)
        flag = bits[1]
        idx_end = 2 + code.type_width
        idx = int(bits[2:idx_end], 2) if code.type_width else 0
        symbol = int(bits[idx_end:], 2) if code.symbol_width else 0
        return ff_decode_y(self.cfg, FFCodeword(idx, symbol, flag == "1"), x)

    def expected_rate(self, p: SourceSpec) -> float:
        """(1/n) E[length], exact sum over joint types."""
        total = sum(
            prob_of_type_class(jt, p) * self.codeword_length(jt)
            for jt in enumerate_joint_types(self.cfg.n, self.cfg.ax, self.cfg.ay)
        )
        return total / self.cfg.n


def wrap_ff_as_fv(cfg: FFCodeConfig) -> WrappedFVCode:
    return WrappedFVCode(cfg)
