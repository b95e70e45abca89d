"""Girth search: alpha(n) = min{ l(w) : w in gamma_n(F_2), w != e }.

The enumerator walks reduced words in lexicographic order (a < A < b < B)
and keeps one representative per orbit of the declared symmetries:

* conjugation  - gamma_n is normal, so minimal members can be taken
  cyclically reduced and rotations are orbit members;
* inversion    - gamma_n is a subgroup;
* letter_maps  - the eight automorphisms generated by a -> a^-1,
  b -> b^-1, a <-> b (gamma_n is characteristic).

A predicate only gets pruning for the symmetries its caller declares.
Rotation threats cut most non-minimal branches mid-walk; survivors get a
full orbit-minimality check at the leaf.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import product
from multiprocessing import Pool

from .construction import fibonacci, predicted_length, build_pair
from .magnus import lcs_member
from .words import Word, parse, commutator, letter_map_tables

_INVERT_TABLE = bytes.maketrans(bytes(range(4)), bytes([1, 0, 3, 2]))
_LETTER_TABLES = letter_map_tables()  # index 0 is the identity


@dataclass(frozen=True)
class SymmetryFlags:
    conjugation: bool = True
    inversion: bool = True
    letter_maps: bool = True


ALL_SYMMETRIES = SymmetryFlags()
NO_SYMMETRIES = SymmetryFlags(False, False, False)


def _orbit_variants(w: bytes, flags: SymmetryFlags) -> list[bytes]:
    """Images of w under the declared non-rotation symmetries, w excluded."""
    tables = _LETTER_TABLES if flags.letter_maps else _LETTER_TABLES[:1]
    out = []
    inv = w[::-1].translate(_INVERT_TABLE) if flags.inversion else None
    for t in tables:
        img = w.translate(t)
        if img != w or flags.conjugation:
            out.append(img)
        if inv is not None:
            out.append(inv.translate(t))
    return out


def _is_orbit_min(w: bytes, flags: SymmetryFlags) -> bool:
    length = len(w)
    first = w[0]
    if flags.conjugation:
        for t in _orbit_variants(w, flags):
            doubled = t + t
            for i in range(length):
                c = doubled[i]
                if c > first:
                    continue
                if c < first or doubled[i:i + length] < w:
                    return False
        return True
    for t in _orbit_variants(w, flags):
        if t < w:
            return False
    return True


def _enumerate_raw(length: int, flags: SymmetryFlags, prefix: bytes = b""):
    """Yield orbit-minimal words of the given length, ascending lex order.

    prefix pins the first letters (used for work partitioning); it must
    itself be reduced.
    """
    if length < 1:
        return
    first_letters = (0,) if flags.letter_maps else range(4)
    if length == 1:
        for l in first_letters:
            w = bytes([l])
            if (not prefix or prefix[0] == l) and _is_orbit_min(w, flags):
                yield w
        return
    buf = bytearray(length)
    cyclic = flags.conjugation

    def rec(pos: int, threats: list[int]):
        if pos < len(prefix):
            allowed = (prefix[pos],)
        else:
            allowed = range(4)
        for l in allowed:
            if l == buf[pos - 1] ^ 1:
                continue
            if cyclic and pos == length - 1 and l == buf[0] ^ 1:
                continue
            new_threats = None
            if cyclic:
                new_threats = []
                dead = False
                for i in threats:
                    ref = buf[pos - i]
                    if l < ref:
                        dead = True
                        break
                    if l == ref:
                        new_threats.append(i)
                if dead:
                    continue
                if l == buf[0]:
                    new_threats.append(pos)
            buf[pos] = l
            if pos == length - 1:
                w = bytes(buf)
                if _is_orbit_min(w, flags):
                    yield w
            else:
                yield from rec(pos + 1, new_threats)

    for first in first_letters:
        if prefix and prefix[0] != first:
            continue
        buf[0] = first
        yield from rec(1, [] if cyclic else None)


def enumerate_canonical(length: int, flags: SymmetryFlags = ALL_SYMMETRIES):
    """One lexicographically minimal representative per symmetry orbit."""
    if length < 1:
        raise ValueError(f"length must be >= 1, got {length}")
    for raw in _enumerate_raw(length, flags):
        yield Word._raw(raw)


@dataclass(frozen=True)
class GirthRecord:
    kind: str  # "alpha" | "girth"
    n: int | None
    value: int | None  # None: no member found up to radius_searched
    witness: Word | None
    radius_searched: int
    candidates_tested: int
    seconds: float

    @property
    def found(self) -> bool:
        return self.value is not None

    def json_dict(self) -> dict:
        # seconds is reported as null: records must be byte-stable across
        # runs and thread counts; wall time lives only on the Python object
        return {
            "kind": self.kind,
            "n": self.n,
            "value": self.value,
            "witness": str(self.witness) if self.witness is not None else None,
            "radius": self.radius_searched,
            "candidates": self.candidates_tested,
            "seconds": None,
        }

    def __str__(self) -> str:
        if self.found:
            head = f"{self.kind}({self.n}) = {self.value}, witness {self.witness}"
        else:
            head = f"{self.kind}({self.n}) unknown above {self.radius_searched}"
        return f"{head}  [{self.candidates_tested} candidates, {self.seconds:.2f}s]"


def _scan_length(length: int, predicate, flags: SymmetryFlags, prefix: bytes = b""):
    """(tested_count, first member or None) over one length slice."""
    tested = 0
    hit = None
    for raw in _enumerate_raw(length, flags, prefix):
        tested += 1
        if hit is None and predicate(Word._raw(raw)):
            hit = raw  # enumeration is ascending, first hit is the prefix min
    return tested, hit


def _alpha_task(args) -> tuple[int, bytes | None]:
    n, length, prefix = args
    return _scan_length(length, lambda w: lcs_member(w, n), ALL_SYMMETRIES, prefix)


def _prefixes(length: int, flags: SymmetryFlags) -> list[bytes]:
    """All reduced 3-letter prefixes compatible with the first-letter rule."""
    first_letters = (0,) if flags.letter_maps else range(4)
    out = []
    for a in first_letters:
        for b in range(4):
            if b == a ^ 1:
                continue
            for c in range(4):
                if c == b ^ 1:
                    continue
                out.append(bytes([a, b, c]))
    return out


def girth_of(
    membership,
    max_radius: int,
    flags: SymmetryFlags = ALL_SYMMETRIES,
    upper_bound: int | None = None,
    kind: str = "girth",
    n: int | None = None,
) -> GirthRecord:
    """Smallest length of a word satisfying the membership predicate.

    The caller must only declare symmetries the predicate respects; the
    enumeration then tests one representative per orbit.
    """
    if max_radius < 1:
        raise ValueError(f"max_radius must be >= 1, got {max_radius}")
    start = time.perf_counter()
    radius = max_radius if upper_bound is None else min(max_radius, upper_bound)
    tested = 0
    for length in range(1, radius + 1):
        count, hit = _scan_length(length, membership, flags)
        tested += count
        if hit is not None:
            return GirthRecord(
                kind, n, length, Word._raw(hit), length, tested,
                time.perf_counter() - start,
            )
    return GirthRecord(kind, n, None, None, radius, tested,
                       time.perf_counter() - start)


def alpha(n: int, max_radius: int | None = None, threads: int = 1) -> GirthRecord:
    """Exhaustive alpha(n); never enumerates past l(a_m), f_{m+2} >= n.

    Deterministic across thread counts: lengths are scanned fully, workers
    split one length by 3-letter prefix, results merge by lexicographic
    minimum.
    """
    if n < 1:
        raise ValueError(f"series index must be >= 1, got {n}")
    m = 0
    while fibonacci(m + 2) < n:
        m += 1
    bound_len = predicted_length(m, "a")
    radius = bound_len if max_radius is None else min(max_radius, bound_len)
    start = time.perf_counter()
    tested = 0
    pool = Pool(threads) if threads > 1 else None
    try:
        for length in range(1, radius + 1):
            if pool is not None and length >= 6:
                tasks = [(n, length, p) for p in _prefixes(length, ALL_SYMMETRIES)]
                results = pool.map(_alpha_task, tasks)
                count = sum(c for c, _ in results)
                hits = [h for _, h in results if h is not None]
                hit = min(hits) if hits else None
            else:
                count, hit = _scan_length(
                    length, lambda w: lcs_member(w, n), ALL_SYMMETRIES
                )
            tested += count
            if hit is not None:
                return GirthRecord(
                    "alpha", n, length, Word._raw(hit), length, tested,
                    time.perf_counter() - start,
                )
    finally:
        if pool is not None:
            pool.close()
            pool.join()
    return GirthRecord("alpha", n, None, None, radius, tested,
                       time.perf_counter() - start)


@dataclass(frozen=True)
class RemarkCheck:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class RemarkReport:
    checks: tuple[RemarkCheck, ...]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[RemarkCheck]:
        return [c for c in self.checks if not c.passed]


def w28() -> Word:
    """[[b^-1,a][a,b], [a,b^-1][b,a]]: length 28, deep in the series."""
    a, b = parse("a"), parse("b")
    left = commutator(b.inverse(), a) * commutator(a, b)
    right = commutator(a, b.inverse()) * commutator(b, a)
    return commutator(left, right)


def verify_remarks() -> RemarkReport:
    """Check the short-word fixtures and girth comparisons."""
    import math

    checks = []
    w = w28()
    checks.append(RemarkCheck("len(w28) = 28", len(w) == 28, f"l = {len(w)}"))
    checks.append(RemarkCheck("w28 in gamma_7", lcs_member(w, 7)))

    a4 = build_pair(4).a
    checks.append(RemarkCheck("len(a_4) = 30", len(a4) == 30, f"l = {len(a4)}"))
    checks.append(RemarkCheck("a_4 in gamma_8", lcs_member(a4, 8)))

    est_a4 = math.log(8) / math.log(30)
    checks.append(
        RemarkCheck("log(8)/log(30) = 0.6113 (4 dp)", abs(est_a4 - 0.6113) < 1e-4,
                    f"{est_a4:.6f}")
    )
    est_w = math.log(7) / math.log(28)
    checks.append(
        RemarkCheck("log(7)/log(28) = 0.583 (3 dp)", abs(est_w - 0.583) < 1e-3,
                    f"{est_w:.6f}")
    )

    p1, p2, p3 = build_pair(1), build_pair(2), build_pair(3)
    prod_ok = commutator(p2.a, p1.b) == p3.a
    checks.append(
        RemarkCheck("a_3 = [a_2, b_1]", prod_ok, f"l(a_3) = {len(p3.a)}")
    )
    checks.append(RemarkCheck("a_2 in gamma_3", lcs_member(p2.a, 3)))
    checks.append(RemarkCheck("b_1 in gamma_2", lcs_member(p1.b, 2)))
    checks.append(
        RemarkCheck("girth([gamma_3, gamma_2]) <= 14", prod_ok and len(p3.a) == 14)
    )

    a2 = alpha(2)
    a3 = alpha(3)
    checks.append(
        RemarkCheck("alpha(2) = 4", a2.value == 4, str(a2))
    )
    checks.append(
        RemarkCheck("alpha(3) = 8", a3.value == 8, str(a3))
    )
    checks.append(
        RemarkCheck("14 < 2*alpha(3)", a3.value is not None and 14 < 2 * a3.value)
    )
    checks.append(
        RemarkCheck("14 > 3*alpha(2)", a2.value is not None and 14 > 3 * a2.value)
    )
    return RemarkReport(tuple(checks))
