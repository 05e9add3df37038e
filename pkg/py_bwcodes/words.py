"""Binary words, code parameters and enumeration of admissible word sets."""

import math
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Iterable, List, Tuple

from .exceptions import CapacityError, ParseError, UsageError

DEFAULT_ENUMERATION_CAP = 1 << 24


@dataclass(frozen=True, order=True)
class Word:
    """
    A binary word of fixed length, bit-packed into an int.

    Bit i of `bits` holds character i of the textual form, so the leftmost
    character is bit 0. Words order by (length, packed value).
    """

    length: int
    bits: int

    def __post_init__(self):
        if self.length < 1:
            raise UsageError(f"word length must be >= 1, got {self.length}")
        if self.bits < 0 or self.bits >> self.length:
            raise UsageError(f"bits {self.bits:#x} do not fit in {self.length} positions")

    @classmethod
    def parse(cls, text: str) -> "Word":
        """Parse the textual form: exactly n characters from {0,1}."""
        if not text:
            raise ParseError("empty word")
        bits = 0
        for i, ch in enumerate(text):
            if ch == "1":
                bits |= 1 << i
            elif ch != "0":
                raise ParseError(f"illegal character {ch!r} in word {text!r}")
        return cls(len(text), bits)

    @classmethod
    def zero(cls, length: int) -> "Word":
        return cls(length, 0)

    @classmethod
    def from_positions(cls, length: int, positions: Iterable[int]) -> "Word":
        """Word with ones at the given 0-based character positions."""
        bits = 0
        for p in positions:
            if not 0 <= p < length:
                raise UsageError(f"position {p} outside word of length {length}")
            bits |= 1 << p
        return cls(length, bits)

    def render(self) -> str:
        return "".join("1" if self.bits >> i & 1 else "0" for i in range(self.length))

    @property
    def weight(self) -> int:
        return self.bits.bit_count()

    def complement(self) -> "Word":
        return Word(self.length, ~self.bits & ((1 << self.length) - 1))

    def __str__(self) -> str:
        return self.render()


class WeightMode(str, Enum):
    """How the weight parameter constrains the words of a code."""

    CONSTANT = "constant"
    BOUNDED = "bounded"


@dataclass(frozen=True)
class CodeParams:
    """Search instance: length n, minimum distance d, weight w and weight mode."""

    n: int
    d: int
    w: int
    mode: WeightMode = WeightMode.BOUNDED

    def __post_init__(self):
        object.__setattr__(self, "mode", WeightMode(self.mode))
        self.validate()

    def validate(self) -> None:
        if self.n < 1:
            raise UsageError(f"length n must be >= 1, got {self.n}")
        if self.d < 1:
            raise UsageError(f"distance d must be >= 1, got {self.d}")
        if not 0 <= self.w <= self.n:
            raise UsageError(f"weight w must satisfy 0 <= w <= n={self.n}, got {self.w}")

    def admits(self, word: Word) -> bool:
        """True if the word has the right length and weight for these parameters."""
        if word.length != self.n:
            return False
        if self.mode is WeightMode.CONSTANT:
            return word.weight == self.w
        return word.weight <= self.w

    def with_mode(self, mode: WeightMode) -> "CodeParams":
        return CodeParams(self.n, self.d, self.w, mode)

    def key(self) -> Tuple[int, int, int, str]:
        return (self.n, self.d, self.w, self.mode.value)

    def __str__(self) -> str:
        return f"A({self.n},{self.d},{self.w}) {self.mode.value}"


def hamming_distance(x: Word, y: Word) -> int:
    """Number of positions where x and y differ."""
    if x.length != y.length:
        raise UsageError(f"length mismatch: {x.length} vs {y.length}")
    return (x.bits ^ y.bits).bit_count()


def weight(x: Word) -> int:
    """Number of ones in x."""
    return x.bits.bit_count()


def word_count(params: CodeParams) -> int:
    """Number of admissible words, computed without enumerating them."""
    if params.mode is WeightMode.CONSTANT:
        return math.comb(params.n, params.w)
    return sum(math.comb(params.n, j) for j in range(params.w + 1))


def enumerate_words(
    params: CodeParams, cap: int = DEFAULT_ENUMERATION_CAP
) -> List[Word]:
    """
    Every admissible word in increasing order of packed value.

    Raises:
        CapacityError: If the admissible set is larger than `cap`
    """
    count = word_count(params)
    if count > cap:
        raise CapacityError(
            f"{params} has {count} admissible words, above the enumeration cap of {cap}",
            cap=cap,
            key=params.key(),
        )

    weights = [params.w] if params.mode is WeightMode.CONSTANT else range(params.w + 1)
    packed = []
    for j in weights:
        for positions in combinations(range(params.n), j):
            bits = 0
            for p in positions:
                bits |= 1 << p
            packed.append(bits)
    packed.sort()
    return [Word(params.n, bits) for bits in packed]
