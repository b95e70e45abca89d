"""The Fibonacci word families a_n, b_n and their structural identities.

Standard variant: a_0 = b^-1, b_0 = aba^-1.  Primed variant: a'_0 = a,
b'_0 = b.  Both share the recursion a_n = a_{n-1} b_{n-1},
b_n = a_{n-1}^-1 b_{n-1}^-1.  Lengths follow closed forms (13*2^n +- c)/7
in the standard variant and exactly 2^n in the primed one; depth in the
lower central series is bounded below by Fibonacci numbers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from . import magnus
from .words import Word, parse, commutator, apply_endomorphism

STANDARD = "standard"
PRIMED = "primed"
MAX_LEVEL = 24

_BASES = {
    STANDARD: (parse("B"), parse("abA")),
    PRIMED: (parse("a"), parse("b")),
}

# reduced-representation head/tail letter patterns, by n mod 3
_PATTERN_A = {0: ("B", "B"), 1: ("B", "bA"), 2: ("B", "BA")}
_PATTERN_B = {0: ("ab", "bA"), 1: ("b", "BA"), 2: ("aB", "B")}


def _check_level(n: int, variant: str):
    if variant not in _BASES:
        raise ValueError(f"unknown variant {variant!r}")
    if n < 0:
        raise ValueError(f"level must be >= 0, got {n}")
    if n > MAX_LEVEL:
        raise ValueError(
            f"level {n} exceeds max {MAX_LEVEL}; "
            f"predicted length l(a_{n}) = {predicted_length(n, 'a', variant)}"
        )


def fibonacci(m: int) -> int:
    """f_0 = 0, f_1 = 1, f_{m+2} = f_{m+1} + f_m."""
    if m < 0:
        raise ValueError(f"index must be >= 0, got {m}")
    x, y = 0, 1
    for _ in range(m):
        x, y = y, x + y
    return x


def predicted_length(n: int, which: str, variant: str = STANDARD) -> int:
    """Closed-form length of a_n or b_n (which is 'a' or 'b')."""
    if which not in ("a", "b"):
        raise ValueError(f"which must be 'a' or 'b', got {which!r}")
    if n < 0:
        raise ValueError(f"level must be >= 0, got {n}")
    if variant == PRIMED:
        return 2**n
    if variant != STANDARD:
        raise ValueError(f"unknown variant {variant!r}")
    p = 13 * 2**n
    r = n % 3
    if which == "a":
        offset = {0: -6, 1: 2, 2: 4}[r]
    else:
        offset = {0: 8, 1: 2, 2: 4}[r]
    return (p + offset) // 7


def depth_lower_bound(n: int, variant: str = STANDARD) -> int:
    """a_n and b_n lie in gamma_m for m = f_{n+2} (standard) or f_{n+1} (primed).

    Both variants satisfy a_{n+2} = [a_{n+1}, b_n] and b_{n+2} = [b_n^-1, a_n^-1]
    formally, so depths obey the Fibonacci recursion from the base depths.
    """
    if variant == STANDARD:
        return fibonacci(n + 2)
    if variant == PRIMED:
        return fibonacci(n + 1)
    raise ValueError(f"unknown variant {variant!r}")


@dataclass(frozen=True)
class ConstructionPair:
    level: int
    variant: str
    a: Word
    b: Word
    predicted_len_a: int
    predicted_len_b: int
    depth_bound: int


@lru_cache(maxsize=None)
def _words_at(n: int, variant: str) -> tuple[Word, Word]:
    a, b = _BASES[variant]
    for _ in range(n):
        a, b = a * b, a.inverse() * b.inverse()
    return a, b


def build_pair(n: int, variant: str = STANDARD) -> ConstructionPair:
    _check_level(n, variant)
    a, b = _words_at(n, variant)
    pair = ConstructionPair(
        level=n,
        variant=variant,
        a=a,
        b=b,
        predicted_len_a=predicted_length(n, "a", variant),
        predicted_len_b=predicted_length(n, "b", variant),
        depth_bound=depth_lower_bound(n, variant),
    )
    if len(a) != pair.predicted_len_a or len(b) != pair.predicted_len_b:
        raise AssertionError(
            f"length closed form broken at level {n}: "
            f"l(a)={len(a)} vs {pair.predicted_len_a}, "
            f"l(b)={len(b)} vs {pair.predicted_len_b}"
        )
    return pair


def sigma(w: Word) -> Word:
    """The automorphism a -> a^-1, b -> b^-1."""
    return apply_endomorphism(w, parse("A"), parse("B"))


def tau(w: Word) -> Word:
    """The automorphism a -> a, b -> b^-1."""
    return apply_endomorphism(w, parse("a"), parse("B"))


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class LevelReport:
    level: int
    checks: tuple[Check, ...]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]


def _short(w: Word, limit: int = 60) -> str:
    s = str(w)
    return s if len(s) <= limit else f"{s[:limit]}...[{len(w)} letters]"


def _eq_check(name: str, got: Word, want: Word) -> Check:
    if got == want:
        return Check(name, True)
    return Check(name, False, f"got {_short(got)}, want {_short(want)}")


def verify_level(n: int) -> LevelReport:
    """Check every structural identity of the standard pair at level n."""
    _check_level(n + 3, STANDARD)
    an, bn = _words_at(n, STANDARD)
    an1, bn1 = _words_at(n + 1, STANDARD)
    an2, bn2 = _words_at(n + 2, STANDARD)
    an3, bn3 = _words_at(n + 3, STANDARD)
    checks = []

    checks.append(
        Check("length_a", len(an) == predicted_length(n, "a"),
              f"l(a_{n}) = {len(an)}")
    )
    checks.append(
        Check("length_b", len(bn) == predicted_length(n, "b"),
              f"l(b_{n}) = {len(bn)}")
    )

    r = n % 3
    if r == 0:
        got = parse("a") * sigma(an) * parse("A")
        checks.append(_eq_check("a_sigma(a_n)_a^-1 = b_n", got, bn))
    elif r == 1:
        checks.append(_eq_check("tau(a_n) = b_n", tau(an), bn))
    else:
        checks.append(_eq_check("tau(a_n) = b_n^-1", tau(an), bn.inverse()))

    for name, w, (head, tail) in (
        ("pattern_a", an, _PATTERN_A[r]),
        ("pattern_b", bn, _PATTERN_B[r]),
    ):
        text = str(w)
        ok = text.startswith(head) and text.endswith(tail)
        checks.append(Check(name, ok, f"{_short(w)} vs {head}...{tail}"))

    checks.append(
        _eq_check("a_{n+3} = [a_n b_n, a_n^-1 b_n^-1]",
                  commutator(an * bn, an.inverse() * bn.inverse()), an3)
    )
    checks.append(
        _eq_check("b_{n+3} = [b_n a_n, b_n^-1 a_n^-1]",
                  commutator(bn * an, bn.inverse() * an.inverse()), bn3)
    )
    checks.append(_eq_check("a_{n+2} = [a_n, b_n]", commutator(an, bn), an2))
    checks.append(
        _eq_check("a_{n+2} = [a_{n+1}, b_n]", commutator(an1, bn), an2)
    )

    return LevelReport(n, tuple(checks))


@dataclass(frozen=True)
class ExponentRow:
    n: int
    variant: str
    len_a: int
    len_b: int
    depth: int
    depth_is_exact: bool
    estimate: float | None  # log(depth)/log(len_a); None when len_a < 2


def exponent_table(
    n_max: int,
    depth_mode: str = "bound",
    variant: str = STANDARD,
    cap: int = magnus.DEFAULT_CAP,
) -> list[ExponentRow]:
    """Rows (n, lengths, depth, log-ratio estimate) for n = 0..n_max.

    In magnus mode the depth is exact while it fits under the cap; beyond
    that the row falls back to the Fibonacci bound and is flagged inexact.
    """
    if depth_mode not in ("bound", "magnus"):
        raise ValueError(f"depth_mode must be 'bound' or 'magnus', got {depth_mode!r}")
    rows = []
    for n in range(n_max + 1):
        pair = build_pair(n, variant)
        depth = pair.depth_bound
        exact = False
        if depth_mode == "magnus":
            result = magnus.lcs_depth(pair.a, cap)
            if result.is_exact:
                depth, exact = result.depth, True
        la = len(pair.a)
        estimate = math.log(depth) / math.log(la) if la >= 2 else None
        rows.append(
            ExponentRow(n, variant, la, len(pair.b), depth, exact, estimate)
        )
    return rows
