"""Shared helpers for the test suite."""

import itertools

from compdeliv.types_core import BINARY, Sequence


def all_binary_sequences(n):
    """All 2^n binary sequences of length n."""
    return [Sequence(bits, BINARY) for bits in itertools.product((0, 1), repeat=n)]


def all_binary_pairs(n):
    """All 4^n (x, y) pairs of binary sequences of length n."""
    seqs = all_binary_sequences(n)
    return [(x, y) for x in seqs for y in seqs]
