"""MSB-first bit packing for the codeword file formats."""

from __future__ import annotations


class TruncatedStreamError(ValueError):
    """Fewer bits available than the format requires."""


class BitWriter:
    def __init__(self):
        self._bits: list[str] = []

    def write(self, value: int, width: int) -> None:
        if value < 0 or width < 0:
            raise ValueError("value and width must be nonnegative")
        if width == 0:
            if value != 0:
                raise ValueError("nonzero value in zero-width field")
            return
        if value >= 1 << width:
            raise ValueError(f"value {value} does not fit in {width} bits")
        self._bits.append(format(value, f"0{width}b"))

    def write_bits(self, bits: str) -> None:
        self._bits.append(bits)

    def getvalue(self) -> bytes:
        """Packed bytes, zero-padded to a byte boundary."""
        s = "".join(self._bits)
        pad = -len(s) % 8
        s += "0" * pad
        return bytes(int(s[i:i + 8], 2) for i in range(0, len(s), 8))

    def bit_length(self) -> int:
        return sum(len(b) for b in self._bits)


class BitReader:
    def __init__(self, data: bytes):
        self._bits = "".join(format(b, "08b") for b in data)
        self._pos = 0

    def read(self, width: int) -> int:
        s = self.read_bits(width)
        return int(s, 2) if width else 0

    def read_bits(self, width: int) -> str:
        if self._pos + width > len(self._bits):
            raise TruncatedStreamError("bit stream exhausted")
        s = self._bits[self._pos:self._pos + width]
        self._pos += width
        return s

    @property
    def remaining(self) -> int:
        return len(self._bits) - self._pos
