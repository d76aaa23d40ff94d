"""The 01 -> 10 rewrite dynamics on finite bit strings.

Every occurrence of ``01`` is replaced by ``10`` simultaneously; repeated
passes end at a string of the form ``1...10...0``.  Two representations are
used: :class:`BitString` (an immutable tuple of bits, used for traces and
the public API) and a packed Python ``int`` with bit ``i`` holding
position ``i`` (used by the fast stabilization loop).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

__all__ = [
    "BitString",
    "CoreDecomposition",
    "BitStringParseError",
    "parse_bitstring",
    "step",
    "is_stable",
    "stabilize",
    "stabilization_time",
    "strip_to_core",
    "pack",
    "unpack",
    "step_packed",
    "stabilize_packed",
    "all_bitstrings",
    "format_trace",
]


class BitStringParseError(ValueError):
    """Raised for text containing anything other than '0' and '1'."""

    def __init__(self, text: str, index: int):
        self.text = text
        self.index = index
        super().__init__(f"invalid character {text[index]!r} at index {index}")


@dataclass(frozen=True)
class BitString:
    """Immutable finite sequence of bits."""

    bits: tuple[int, ...] = ()

    def __post_init__(self):
        bits = tuple(int(b) for b in self.bits)
        for i, b in enumerate(bits):
            if b not in (0, 1):
                raise ValueError(f"bit {i} is {b}, expected 0 or 1")
        object.__setattr__(self, "bits", bits)

    @classmethod
    def from_str(cls, text: str) -> "BitString":
        return parse_bitstring(text)

    def __str__(self) -> str:
        return "".join("1" if b else "0" for b in self.bits)

    def __len__(self) -> int:
        return len(self.bits)

    def __iter__(self) -> Iterator[int]:
        return iter(self.bits)

    def __getitem__(self, index):
        if isinstance(index, slice):
            return BitString(self.bits[index])
        return self.bits[index]

    def ones(self) -> int:
        return sum(self.bits)


@dataclass(frozen=True)
class CoreDecomposition:
    """``s == 1^leading_ones + core + 0^trailing_zeros``."""

    leading_ones: int
    core: BitString
    trailing_zeros: int = field(default=0)

    def __len__(self) -> int:
        return self.leading_ones + len(self.core) + self.trailing_zeros


def _as_bitstring(s) -> BitString:
    if isinstance(s, BitString):
        return s
    if isinstance(s, str):
        return parse_bitstring(s)
    return BitString(tuple(s))


def parse_bitstring(text: str) -> BitString:
    """Parse ASCII '0'/'1' text; a trailing newline is tolerated."""
    text = text.rstrip("\n")
    for i, ch in enumerate(text):
        if ch not in "01":
            raise BitStringParseError(text, i)
    return BitString(tuple(1 if ch == "1" else 0 for ch in text))


def pack(s) -> int:
    """Pack bits into an int, position ``i`` at bit ``i``."""
    s = _as_bitstring(s)
    if not s.bits:
        return 0
    return int(str(s)[::-1], 2)


def unpack(x: int, n: int) -> BitString:
    if x < 0 or x >> n:
        raise ValueError(f"packed value does not fit in {n} bits")
    if n == 0:
        return BitString()
    return parse_bitstring(format(x, f"0{n}b")[::-1])


def step_packed(x: int) -> int:
    # bit i of m is set iff position i holds 0 and position i+1 holds 1
    m = (x >> 1) & ~x
    return x ^ (m | (m << 1))


def step(s) -> BitString:
    """One simultaneous pass of 01 -> 10.

    Matches cannot overlap (a match at ``i`` needs ``s[i+1] == 1``, a match
    at ``i+1`` needs ``s[i+1] == 0``) so a single left-to-right scan into a
    fresh tuple is the simultaneous update.
    """
    s = _as_bitstring(s)
    bits = s.bits
    out = list(bits)
    n = len(bits)
    i = 0
    while i < n - 1:
        if bits[i] == 0 and bits[i + 1] == 1:
            out[i], out[i + 1] = 1, 0
            i += 2
        else:
            i += 1
    return BitString(tuple(out))


def is_stable(s) -> bool:
    s = _as_bitstring(s)
    bits = s.bits
    return not any(bits[i] == 0 and bits[i + 1] == 1 for i in range(len(bits) - 1))


def stabilize_packed(x: int) -> tuple[int, int]:
    """Run the packed evolution to its fixed point.

    Returns ``(final, steps)``.  The int is kept narrow by shifting out the
    settled leading ones now and then; they never move again.
    """
    steps = 0
    shifted = 0
    while True:
        m = (x >> 1) & ~x
        if not m:
            break
        x ^= m | (m << 1)
        steps += 1
        if steps & 31 == 0 and x & 1:
            k = (x ^ (x + 1)).bit_length() - 1
            x >>= k
            shifted += k
    if shifted:
        x = (x << shifted) | ((1 << shifted) - 1)
    return x, steps


def stabilize(s, record_trace: bool = False):
    """Apply :func:`step` until stable.

    Returns ``(final, steps, trace)``; ``trace`` is ``None`` unless
    ``record_trace`` is set, in which case it lists every state from the
    input to the stable string inclusive.
    """
    s = _as_bitstring(s)
    n = len(s)
    if record_trace:
        trace = [s]
        cur = s
        while not is_stable(cur):
            cur = step(cur)
            trace.append(cur)
        steps = len(trace) - 1
        final = cur
    else:
        x, steps = stabilize_packed(pack(s))
        final = unpack(x, n)
        trace = None
    assert steps <= max(n - 1, 0), f"{steps} steps for length {n}"
    return final, steps, trace


def stabilization_time(s) -> int:
    """Number of passes to stability, by packed simulation."""
    return stabilize_packed(pack(s))[1]


def strip_to_core(s) -> CoreDecomposition:
    """Split off the maximal run of leading 1s and trailing 0s."""
    s = _as_bitstring(s)
    bits = s.bits
    n = len(bits)
    lead = 0
    while lead < n and bits[lead] == 1:
        lead += 1
    trail = 0
    while trail < n - lead and bits[n - 1 - trail] == 0:
        trail += 1
    return CoreDecomposition(lead, BitString(bits[lead:n - trail]), trail)


def all_bitstrings(n: int) -> Iterable[BitString]:
    """Every string of length ``n`` in lexicographic order."""
    for v in range(1 << n):
        yield BitString(tuple((v >> (n - 1 - i)) & 1 for i in range(n)))


def format_trace(trace: Sequence[BitString]) -> str:
    return "".join(f"{s}\n" for s in trace)
