"""Canonical representation of eventually-periodic left-infinite digit strings.

A value is written ``period'preperiod.frac``: the period block repeats leftward
forever, the preperiod holds the rightmost integer digits, and the frac holds
finitely many digits after the point.  ``9'`` denotes -1, ``6'7`` denotes 1/3,
``0'42.5`` denotes 42.5.
"""

from __future__ import annotations

import re
import threading
from dataclasses import dataclass
from typing import Iterable, Iterator

DIGIT_CHARS = "0123456789abcdefghijklmnopqrstuvwxyz"
MAX_TEXT_BASE = len(DIGIT_CHARS)

_QUOTE_RE = re.compile(
    r"^(?P<period>[0-9a-z]+)'(?P<preperiod>[0-9a-z]*)(?:\.(?P<frac>[0-9a-z]+))?$"
)


class NoContinuation(RuntimeError):
    """A digit stream's extension rule found no admissible next residue."""


def _check_base(base: int) -> None:
    if not isinstance(base, int) or base < 2:
        raise ValueError(f"base must be an integer >= 2, got {base!r}")


def _check_digits(digits: tuple[int, ...], base: int, name: str) -> None:
    for d in digits:
        if not isinstance(d, int) or not 0 <= d < base:
            raise ValueError(f"{name} digit {d!r} out of range for base {base}")


def _primitive(block: tuple[int, ...]) -> tuple[int, ...]:
    # smallest prefix whose repetition reproduces the block
    n = len(block)
    for d in range(1, n + 1):
        if n % d == 0 and block[:d] * (n // d) == block:
            return block[:d]
    return block


@dataclass(frozen=True, slots=True)
class QuoteNumber:
    """An eventually-periodic left-infinite digit string with finite frac part.

    Construct through :func:`normalize` or :func:`parse`; the constructor
    rejects non-canonical field combinations (non-primitive period, absorbable
    preperiod digit, trailing zero in frac).  Instances are immutable and
    hashable, and therefore safe to share between threads.

    Digit order is most-significant-first as written: ``period=(2, 8, 5, 7,
    1, 4), preperiod=(3,)`` is the string ...285714285714 3, i.e. 1/7.
    """

    base: int
    period: tuple[int, ...]
    preperiod: tuple[int, ...] = ()
    frac: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        _check_base(self.base)
        if not self.period:
            raise ValueError("period must be nonempty")
        _check_digits(self.period, self.base, "period")
        _check_digits(self.preperiod, self.base, "preperiod")
        _check_digits(self.frac, self.base, "frac")
        if _primitive(self.period) != self.period:
            raise ValueError(f"period {self.period} is not primitive; use normalize()")
        if self.preperiod and self.preperiod[0] == self.period[0]:
            # the leading preperiod digit could be absorbed into the period
            raise ValueError("preperiod is not minimal; use normalize()")
        if self.frac and self.frac[-1] == 0:
            raise ValueError("frac has a trailing zero; use normalize()")

    def is_zero(self) -> bool:
        return self.period == (0,) and not self.preperiod and not self.frac

    def is_integer_string(self) -> bool:
        """True when there are no digits after the point."""
        return not self.frac

    def __str__(self) -> str:
        return format_quote(self)

    def __repr__(self) -> str:
        return f"QuoteNumber({format_quote(self)!r}, base={self.base})"


def normalize(
    base: int,
    period: Iterable[int],
    preperiod: Iterable[int] = (),
    frac: Iterable[int] = (),
) -> QuoteNumber:
    """Return the unique canonical QuoteNumber denoting the given digit string.

    Reduces the period to its primitive block, absorbs preperiod digits that
    the period already covers, trims trailing zeros from frac.  Idempotent.
    """
    _check_base(base)
    period_t = tuple(period)
    pre = list(preperiod)
    frac_l = list(frac)
    if not period_t:
        raise ValueError("period must be nonempty")
    _check_digits(period_t, base, "period")
    _check_digits(tuple(pre), base, "preperiod")
    _check_digits(tuple(frac_l), base, "frac")

    period_t = _primitive(period_t)
    # absorbing the leading preperiod digit shifts the period's phase:
    # ...(a1..ak)(a1 p2..pm) == ...(a2..ak a1)(p2..pm) when p1 == a1
    while pre and pre[0] == period_t[0]:
        pre.pop(0)
        period_t = period_t[1:] + period_t[:1]
    while frac_l and frac_l[-1] == 0:
        frac_l.pop()
    return QuoteNumber(base, period_t, tuple(pre), tuple(frac_l))


def digit_at(x: QuoteNumber, i: int) -> int:
    """Digit of the denoted string at position ``i``.

    Positions i >= 1 count leftward from the point (i=1 is the last integer
    digit); positions i <= 0 index frac digits rightward (i=0 is the first
    digit after the point).  Total: positions beyond the frac yield 0.
    """
    if i <= 0:
        j = -i
        return x.frac[j] if j < len(x.frac) else 0
    m = len(x.preperiod)
    if i <= m:
        return x.preperiod[m - i]
    k = len(x.period)
    return x.period[k - 1 - ((i - m - 1) % k)]


def residue(x: QuoteNumber, n: int) -> int:
    """The integer in [0, base**n) formed by digits 1..n of ``x``.

    Coherent: residue(x, m) % base**n == residue(x, n) for m >= n.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if x.frac:
        raise ValueError(f"{x} is not a base-{x.base} integer: nonempty frac part")
    acc = 0
    for i in range(n, 0, -1):
        acc = acc * x.base + digit_at(x, i)
    return acc


def parse(text: str, base: int = 10) -> QuoteNumber:
    """Parse ``period'preperiod.frac`` notation into a canonical QuoteNumber."""
    _check_base(base)
    if base > MAX_TEXT_BASE:
        raise ValueError(f"text notation supports bases up to {MAX_TEXT_BASE}")
    m = _QUOTE_RE.match(text)
    if m is None:
        raise ValueError(f"not a quote literal: {text!r}")

    def decode(chunk: str) -> list[int]:
        digits = [DIGIT_CHARS.index(c) for c in chunk]
        for d in digits:
            if d >= base:
                raise ValueError(f"digit {DIGIT_CHARS[d]!r} not valid in base {base}")
        return digits

    return normalize(
        base,
        decode(m.group("period")),
        decode(m.group("preperiod")),
        decode(m.group("frac") or ""),
    )


def format_quote(x: QuoteNumber) -> str:
    """Render a canonical QuoteNumber in the quote grammar; inverse of parse."""
    if x.base > MAX_TEXT_BASE:
        raise ValueError(f"text notation supports bases up to {MAX_TEXT_BASE}")
    out = "".join(DIGIT_CHARS[d] for d in x.period) + "'"
    out += "".join(DIGIT_CHARS[d] for d in x.preperiod)
    if x.frac:
        # a finite decimal like 0.5 reads better as 0'0.5 than 0'.5
        if not x.preperiod and x.period == (0,):
            out += "0"
        out += "." + "".join(DIGIT_CHARS[d] for d in x.frac)
    return out


def expand(x: QuoteNumber, count: int) -> str:
    """Scheme-style rendering ``...ddd[.fff]`` showing the last `count` integer digits."""
    head = "".join(DIGIT_CHARS[digit_at(x, i)] for i in range(count, 0, -1))
    tail = "".join(DIGIT_CHARS[d] for d in x.frac)
    return "..." + head + ("." + tail if tail else "")


def shift(x: QuoteNumber, amount: int) -> QuoteNumber:
    """Multiply by base**amount as a pure positional shift (exact)."""
    if amount == 0:
        return x
    if amount > 0:
        r = len(x.frac)
        if amount >= r:
            pre = x.preperiod + x.frac + (0,) * (amount - r)
            frac: tuple[int, ...] = ()
        else:
            pre = x.preperiod + x.frac[:amount]
            frac = x.frac[amount:]
        return normalize(x.base, x.period, pre, frac)
    t = -amount
    period = x.period
    pre = list(x.preperiod)
    # pull digits out of the periodic zone until the preperiod is long enough
    while len(pre) < t:
        pre.insert(0, period[-1])
        period = (period[-1],) + period[:-1]
    frac = tuple(pre[len(pre) - t :]) + x.frac
    return normalize(x.base, period, pre[: len(pre) - t], frac)


def from_digits(value: int, base: int = 10) -> QuoteNumber:
    """Embed a nonnegative integer as a quote number (period 0')."""
    if value < 0:
        raise ValueError("from_digits takes nonnegative integers")
    _check_base(base)
    digits = []
    while value:
        value, d = divmod(value, base)
        digits.append(d)
    return normalize(base, (0,), tuple(reversed(digits)))


class DigitStream:
    """Lazily materialized residue sequence x_n with x_{n+1} == x_n (mod base**n).

    ``residues`` yields x_1, x_2, ... exactly once each; results are cached so
    repeated queries are deterministic.  Extension is serialized on an internal
    lock, so one instance may be shared between threads.
    """

    def __init__(self, base: int, residues: Iterator[int]):
        _check_base(base)
        self.base = base
        self._source = residues
        self._cache: list[int] = [0]
        self._lock = threading.Lock()

    def residue(self, n: int) -> int:
        """Extend the cache to level n and return x_n in [0, base**n)."""
        if n < 0:
            raise ValueError("n must be >= 0")
        with self._lock:
            while len(self._cache) <= n:
                m = len(self._cache)
                try:
                    x = next(self._source)
                except StopIteration:
                    raise NoContinuation(f"no continuation at level {m}") from None
                if not 0 <= x < self.base**m:
                    raise ValueError(f"extension rule produced {x} out of range at level {m}")
                if x % self.base ** (m - 1) != self._cache[m - 1]:
                    raise ValueError(f"extension rule broke residue coherence at level {m}")
                self._cache.append(x)
            return self._cache[n]

    def digits(self, n: int) -> str:
        """The last n digits of the stream, most significant first."""
        res = self.residue(n)
        return "".join(DIGIT_CHARS[(res // self.base**i) % self.base] for i in range(n - 1, -1, -1))
