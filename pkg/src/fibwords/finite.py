"""Finite groups as multiplication tables: law checking and nilpotency.

Groups are given by explicit multiplication tables with element 0 as the
identity.  Words in two letters are evaluated by substitution, so a word
that lies deep in the lower central series is a law for every nilpotent
group of small enough class.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass
from typing import Optional

from .words import Word
from .construction import build_pair, fibonacci

EXHAUSTIVE_ASSOC_LIMIT = 64
RANDOM_ASSOC_TRIPLES = 20000


class GroupTableError(ValueError):
    """Raised when a multiplication table violates a group axiom."""


class FiniteGroup:
    """A finite group presented by its multiplication table.

    Element ids run 0..order-1 and element 0 is the identity.  Validation
    checks the identity row and column, unique two-sided inverses, and
    associativity (exhaustively up to order 64, by seeded random triples
    above that).
    """

    def __init__(self, name: str, table):
        self.name = name
        self.table = [list(row) for row in table]
        self.order = len(self.table)
        self._validate()
        self.inverse = self._build_inverses()

    def _validate(self):
        m = self.order
        if m == 0:
            raise GroupTableError("empty table")
        for i, row in enumerate(self.table):
            if len(row) != m:
                raise GroupTableError(f"row {i} has length {len(row)}, expected {m}")
            for j, x in enumerate(row):
                if not isinstance(x, int) or not 0 <= x < m:
                    raise GroupTableError(f"entry ({i},{j}) = {x!r} out of range")
        for g in range(m):
            if self.table[0][g] != g:
                raise GroupTableError(f"identity row broken at ({0},{g})")
            if self.table[g][0] != g:
                raise GroupTableError(f"identity column broken at ({g},{0})")
        if m <= EXHAUSTIVE_ASSOC_LIMIT:
            t = self.table
            for g in range(m):
                tg = t[g]
                for h in range(m):
                    tgh = t[tg[h]]
                    th = t[h]
                    for k in range(m):
                        if tgh[k] != tg[th[k]]:
                            raise GroupTableError(
                                f"associativity broken at ({g},{h},{k})")
        else:
            rng = random.Random(0)
            t = self.table
            for _ in range(RANDOM_ASSOC_TRIPLES):
                g = rng.randrange(m)
                h = rng.randrange(m)
                k = rng.randrange(m)
                if t[t[g][h]][k] != t[g][t[h][k]]:
                    raise GroupTableError(f"associativity broken at ({g},{h},{k})")

    def _build_inverses(self):
        m = self.order
        inv = [None] * m
        for g in range(m):
            found = [h for h in range(m)
                     if self.table[g][h] == 0 and self.table[h][g] == 0]
            if len(found) != 1:
                raise GroupTableError(
                    f"element {g} has {len(found)} two-sided inverses")
            inv[g] = found[0]
        return inv

    def mul(self, g: int, h: int) -> int:
        return self.table[g][h]

    def inv(self, g: int) -> int:
        return self.inverse[g]

    def element_order(self, g: int) -> int:
        n, x = 1, g
        while x != 0:
            x = self.table[x][g]
            n += 1
        return n

    def __repr__(self):
        return f"FiniteGroup({self.name!r}, order={self.order})"


@dataclass
class LawCertificate:
    """Outcome of an exhaustive law check over all pairs of a group."""

    word: Word
    group: str
    pairs_checked: int
    holds: bool
    counterexample: Optional[tuple] = None

    def __str__(self):
        if self.holds:
            return (f"law holds on {self.group} "
                    f"({self.pairs_checked} pairs)")
        g, h = self.counterexample
        return f"law fails on {self.group} at (g={g}, h={h})"


def evaluate_word(group: FiniteGroup, word: Word, g: int, h: int) -> int:
    """Evaluate a two-letter word at (g, h) by table folding."""
    if not 0 <= g < group.order or not 0 <= h < group.order:
        raise ValueError(f"element ids ({g}, {h}) out of range")
    vals = (g, group.inverse[g], h, group.inverse[h])
    acc = 0
    table = group.table
    for letter in word.letters:
        acc = table[acc][vals[letter]]
    return acc


def is_law(group: FiniteGroup, word: Word) -> LawCertificate:
    """Check w(g, h) = 1 over all pairs, g-major, first failure wins."""
    m = group.order
    for g in range(m):
        for h in range(m):
            if evaluate_word(group, word, g, h) != 0:
                return LawCertificate(word, group.name, m * m, False, (g, h))
    return LawCertificate(word, group.name, m * m, True)


def _subgroup_closure(group: FiniteGroup, gens) -> frozenset:
    seen = set(gens)
    seen.add(0)
    frontier = list(seen)
    table = group.table
    while frontier:
        nxt = []
        for x in frontier:
            for y in tuple(seen):
                for z in (table[x][y], table[y][x]):
                    if z not in seen:
                        seen.add(z)
                        nxt.append(z)
        frontier = nxt
    return frozenset(seen)


def nilpotency_class(group: FiniteGroup) -> Optional[int]:
    """Class of the lower central series, or None if it never reaches 1.

    gamma_1 = G and gamma_{k+1} = <[g, x] : g in gamma_k, x in G>, all
    computed from the table.  Returns c with gamma_{c+1} trivial and
    gamma_c not, or None when the series stabilizes above the identity.
    """
    table = group.table
    inv = group.inverse
    current = frozenset(range(group.order))
    k = 1
    while True:
        if current == frozenset({0}):
            return k - 1
        comms = set()
        for g in current:
            for x in range(group.order):
                c = table[table[inv[g]][inv[x]]][table[g][x]]
                comms.add(c)
        nxt = _subgroup_closure(group, comms)
        if nxt == current:
            return None
        current = nxt
        k += 1


def nilpotent_law_word(n: int) -> Word:
    """A word that is a law for every nilpotent group of order <= n.

    Any nilpotent group of order <= n has class at most log2(n) - 1 for
    n >= 4 (each Sylow factor of order p^k has class <= k-1), and every
    group of order <= 3 is abelian, so a class bound of
    max(2, floor(log2 n)) always exceeds the class.  The word a_m for the
    least m with fibonacci(m+2) >= that bound lies deep enough in the
    lower central series to vanish identically.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    target = max(2, n.bit_length() - 1)
    m = 0
    while fibonacci(m + 2) < target:
        m += 1
    return build_pair(m).a


def law_length_constant(n_lo: int = 2 ** 4, n_hi: int = 2 ** 20) -> float:
    """Largest ratio len(word) / (log2 n)^log_phi(2) over powers of two."""
    phi = (1 + math.sqrt(5)) / 2
    expo = math.log(2) / math.log(phi)
    worst = 0.0
    n = n_lo
    while n <= n_hi:
        w = nilpotent_law_word(n)
        worst = max(worst, len(w) / math.log2(n) ** expo)
        n *= 2
    return worst


def load_group(path) -> FiniteGroup:
    """Load and validate a JSON group file {"name", "order", "table"}."""
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    for key in ("name", "order", "table"):
        if key not in data:
            raise GroupTableError(f"missing key {key!r}")
    if not isinstance(data["table"], list) or len(data["table"]) != data["order"]:
        raise GroupTableError(
            f"table has {len(data['table'])} rows, expected {data['order']}")
    return FiniteGroup(data["name"], data["table"])
