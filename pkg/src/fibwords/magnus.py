"""Lower-central-series depth via the Magnus embedding.

Send a -> 1+X, b -> 1+Y into Z<<X, Y>> truncated at a degree cap.  A
reduced word w lies in gamma_n(F_2) exactly when every term of degree
1..n-1 of its expansion vanishes, so the lowest surviving degree is the
exact depth whenever it does not exceed the cap.

Monomials in X, Y are stored as (degree, bits) with the most significant
bit first (X = 0, Y = 1); a series keeps one {bits: coefficient} dict per
degree.  Coefficients are exact Python integers.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

from .words import Word

DEFAULT_CAP = 14
_LARGE_CAP = 20

_LETTER_NAMES = {"a": 0, "A": 1, "b": 2, "B": 3}


def _check_cap(cap: int, allow_large: bool):
    if cap < 1:
        raise ValueError(f"degree cap must be >= 1, got {cap}")
    if cap > _LARGE_CAP:
        if not allow_large:
            raise ValueError(
                f"cap {cap} exceeds {_LARGE_CAP}; a series holds up to "
                f"2^(cap+1) big-integer terms, pass allow_large=True to proceed"
            )
        warnings.warn(
            f"degree cap {cap}: up to 2^{cap + 1} terms, expect heavy memory use",
            ResourceWarning,
            stacklevel=3,
        )


def monomial_str(degree: int, bits: int) -> str:
    if degree == 0:
        return "1"
    return "".join("Y" if (bits >> (degree - 1 - i)) & 1 else "X" for i in range(degree))


class TruncatedSeries:
    """Noncommutative integer power series truncated above a degree cap."""

    __slots__ = ("cap", "_buckets")

    def __init__(self, cap: int, *, allow_large: bool = False):
        _check_cap(cap, allow_large)
        self.cap = cap
        self._buckets: list[dict[int, int]] = [{} for _ in range(cap + 1)]

    @classmethod
    def one(cls, cap: int, *, allow_large: bool = False) -> "TruncatedSeries":
        s = cls(cap, allow_large=allow_large)
        s._buckets[0][0] = 1
        return s

    def coefficient(self, degree: int, bits: int = 0) -> int:
        if not 0 <= degree <= self.cap:
            return 0
        return self._buckets[degree].get(bits, 0)

    def terms(self):
        """Yield ((degree, bits), coefficient) for every nonzero term."""
        for degree, bucket in enumerate(self._buckets):
            for bits in sorted(bucket):
                yield (degree, bits), bucket[bits]

    def lowest_degree(self) -> int | None:
        """Smallest degree >= 1 carrying a nonzero term, or None."""
        for degree in range(1, self.cap + 1):
            if self._buckets[degree]:
                return degree
        return None

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TruncatedSeries)
            and self.cap == other.cap
            and self._buckets == other._buckets
        )

    def __str__(self) -> str:
        parts = []
        for (degree, bits), coeff in self.terms():
            mono = monomial_str(degree, bits)
            if coeff < 0:
                sign, mag = " - ", -coeff
            else:
                sign, mag = " + " if parts else "", coeff
            if degree and mag == 1:
                parts.append(f"{sign}{mono}")
            elif degree:
                parts.append(f"{sign}{mag}{mono}")
            else:
                parts.append(f"{sign}{mag}")
        return "".join(parts) or "0"

    def __repr__(self) -> str:
        return f"<TruncatedSeries cap={self.cap}: {self}>"

    def _mul_letter_inplace(self, letter: int):
        """Right-multiply by the series of one letter, in place.

        Positive letter (1+G): descending degrees, bucket[d] += G-shift of
        bucket[d-1].  Inverse letter: the product P satisfies P(1+G) = self,
        so ascending degrees give P[d] = self[d] - G-shift of P[d-1].
        """
        bit = letter >> 1
        if letter & 1 == 0:
            degrees = range(self.cap, 0, -1)
        else:
            degrees = range(1, self.cap + 1)
        sign = 1 if letter & 1 == 0 else -1
        for d in degrees:
            src = self._buckets[d - 1]
            dst = self._buckets[d]
            for bits, coeff in src.items():
                key = bits * 2 + bit
                new = dst.get(key, 0) + sign * coeff
                if new:
                    dst[key] = new
                else:
                    del dst[key]


def generator_series(letter, cap: int, *, allow_large: bool = False) -> TruncatedSeries:
    """Series of a single letter: a -> 1+X, a^-1 -> 1-X+X^2-..., similarly b."""
    if isinstance(letter, str):
        if letter not in _LETTER_NAMES:
            raise ValueError(f"unknown letter {letter!r}")
        letter = _LETTER_NAMES[letter]
    if not 0 <= letter <= 3:
        raise ValueError(f"letter code out of range: {letter}")
    s = TruncatedSeries.one(cap, allow_large=allow_large)
    s._mul_letter_inplace(letter)
    return s


def mul(s1: TruncatedSeries, s2: TruncatedSeries) -> TruncatedSeries:
    """Full noncommutative product, truncated at the common cap."""
    if s1.cap != s2.cap:
        raise ValueError(f"cap mismatch: {s1.cap} != {s2.cap}")
    out = TruncatedSeries(s1.cap, allow_large=True)
    buckets = out._buckets
    for i, left in enumerate(s1._buckets):
        if not left:
            continue
        for j in range(s1.cap + 1 - i):
            right = s2._buckets[j]
            if not right:
                continue
            dst = buckets[i + j]
            for bits1, c1 in left.items():
                shifted = bits1 << j
                for bits2, c2 in right.items():
                    key = shifted | bits2
                    new = dst.get(key, 0) + c1 * c2
                    if new:
                        dst[key] = new
                    else:
                        del dst[key]
    return out


def magnus_expand(w: Word, cap: int = DEFAULT_CAP, *, allow_large: bool = False) -> TruncatedSeries:
    """Expand a reduced word letter by letter; constant term is always 1."""
    s = TruncatedSeries.one(cap, allow_large=allow_large)
    for letter in w.letters:
        s._mul_letter_inplace(letter)
    return s


@dataclass(frozen=True)
class DepthResult:
    """Depth of w in the lower central series: max n with w in gamma_n."""

    kind: str  # "identity" | "exact" | "at_least"
    depth: int | None = None

    @classmethod
    def identity(cls):
        return cls("identity")

    @classmethod
    def exact(cls, n: int):
        return cls("exact", n)

    @classmethod
    def at_least(cls, m: int):
        return cls("at_least", m)

    @property
    def is_exact(self) -> bool:
        return self.kind == "exact"

    def __str__(self) -> str:
        if self.kind == "identity":
            return "Identity"
        if self.kind == "exact":
            return f"Exact({self.depth})"
        return f"AtLeast({self.depth})"


def lcs_depth(w: Word, cap: int = DEFAULT_CAP, *, allow_large: bool = False) -> DepthResult:
    """Exact depth when it is <= cap, else AtLeast(cap+1)."""
    if not w:
        return DepthResult.identity()
    _check_cap(cap, allow_large)
    d = magnus_expand(w, cap, allow_large=allow_large).lowest_degree()
    if d is None:
        return DepthResult.at_least(cap + 1)
    return DepthResult.exact(d)


def lcs_member(w: Word, n: int, *, allow_large: bool = False) -> bool:
    """Whether w lies in gamma_n(F_2).

    Expands at cap n-1: membership only needs degrees 1..n-1 to vanish.
    """
    if n < 1:
        raise ValueError(f"gamma index must be >= 1, got {n}")
    if n == 1 or not w:
        return True
    if w.exponent_sums() != (0, 0):
        return False  # degree-1 terms are the exponent sums
    if n == 2:
        return True
    return magnus_expand(w, n - 1, allow_large=allow_large).lowest_degree() is None
