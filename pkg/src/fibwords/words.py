"""Reduced-word arithmetic in the free group F_2 = <a, b>.

Words are immutable sequences of letters encoded as bytes:
0 = a, 1 = a^-1, 2 = b, 3 = b^-1.  The low bit flips under inversion
(letter ^ 1) and the high bit selects the generator (letter >> 1).
Text form uses a/A/b/B with "e" for the identity.
"""

from __future__ import annotations

LETTER_CHARS = "aAbB"
_CHAR_TO_LETTER = {c: i for i, c in enumerate(LETTER_CHARS)}
_INVERT_TABLE = bytes.maketrans(bytes(range(4)), bytes([1, 0, 3, 2]))


def _reduce(letters) -> bytes:
    """Freely reduce an iterable of letter codes (stack cancellation)."""
    out = bytearray()
    for l in letters:
        if out and out[-1] == l ^ 1:
            out.pop()
        else:
            out.append(l)
    return bytes(out)


class Word:
    """A freely reduced word in F_2.  Instances are immutable and hashable."""

    __slots__ = ("_data",)

    def __init__(self, letters=b""):
        if isinstance(letters, Word):
            self._data = letters._data
        else:
            self._data = _reduce(bytes(letters))

    @classmethod
    def _raw(cls, data: bytes) -> "Word":
        # data must already be reduced
        w = object.__new__(cls)
        w._data = data
        return w

    @property
    def letters(self) -> bytes:
        return self._data

    def __len__(self) -> int:
        return len(self._data)

    def __bool__(self) -> bool:
        return bool(self._data)

    def __eq__(self, other) -> bool:
        return isinstance(other, Word) and self._data == other._data

    def __hash__(self) -> int:
        return hash(self._data)

    def __iter__(self):
        return iter(self._data)

    def __str__(self) -> str:
        if not self._data:
            return "e"
        return "".join(LETTER_CHARS[l] for l in self._data)

    def __repr__(self) -> str:
        return f"Word({str(self)!r})"

    def __mul__(self, other: "Word") -> "Word":
        # both sides reduced, so only the junction can cancel
        w1, w2 = self._data, other._data
        i, j = len(w1), 0
        while i > 0 and j < len(w2) and w1[i - 1] == w2[j] ^ 1:
            i -= 1
            j += 1
        return Word._raw(w1[:i] + w2[j:])

    def inverse(self) -> "Word":
        return Word._raw(self._data[::-1].translate(_INVERT_TABLE))

    def __pow__(self, n: int) -> "Word":
        if n < 0:
            return self.inverse() ** (-n)
        if n == 0 or not self._data:
            return IDENTITY
        if n <= 8:
            result = self
            for _ in range(n - 1):
                result = result * self
            return result
        half = self ** (n // 2)
        result = half * half
        return result * self if n % 2 else result

    def exponent_sums(self) -> tuple[int, int]:
        """Total exponent of a and of b (the degree-1 abelianization)."""
        ea = eb = 0
        for l in self._data:
            delta = -1 if l & 1 else 1
            if l >> 1:
                eb += delta
            else:
                ea += delta
        return ea, eb


IDENTITY = Word._raw(b"")
A = Word._raw(bytes([0]))
B = Word._raw(bytes([2]))


class WordParseError(ValueError):
    def __init__(self, char: str, position: int):
        self.char = char
        self.position = position
        super().__init__(f"invalid character {char!r} at position {position}")


def parse(text: str) -> Word:
    """Parse a word string over a/A/b/B; the literal "e" is the identity."""
    if text == "e":
        return IDENTITY
    letters = bytearray()
    for pos, ch in enumerate(text):
        l = _CHAR_TO_LETTER.get(ch)
        if l is None:
            raise WordParseError(ch, pos)
        letters.append(l)
    return Word(letters)


def commutator(w1: Word, w2: Word) -> Word:
    """[w1, w2] = w1 w2 w1^-1 w2^-1, freely reduced."""
    return w1 * w2 * w1.inverse() * w2.inverse()


def conjugate(w: Word, by: Word) -> Word:
    """by * w * by^-1."""
    return by * w * by.inverse()


def apply_endomorphism(w: Word, image_a: Word, image_b: Word) -> Word:
    """Substitute a -> image_a, b -> image_b (inverses map to inverses)."""
    images = (
        image_a.letters,
        image_a.inverse().letters,
        image_b.letters,
        image_b.inverse().letters,
    )
    out = bytearray()
    for l in w.letters:
        for m in images[l]:
            if out and out[-1] == m ^ 1:
                out.pop()
            else:
                out.append(m)
    return Word._raw(bytes(out))


def cyclic_reduce(w: Word) -> tuple[Word, Word]:
    """Split w = g * core * g^-1 with core cyclically reduced.

    Returns (core, g).  core is empty only for the identity word.
    """
    data = w.letters
    n = len(data)
    i = 0
    while i < n - 1 - i and data[i] == data[n - 1 - i] ^ 1:
        i += 1
    return Word._raw(data[i:n - i]), Word._raw(data[:i])


def letter_map_tables() -> list[bytes]:
    """Translation tables for the eight letter maps of F_2.

    Table index fa*4 + fb*2 + sw encodes the automorphism that inverts a
    when fa is set, inverts b when fb is set, and then swaps the two
    generators when sw is set.  Index 0 is the identity.  Each table
    permutes the letter codes, so translating a reduced word yields a
    reduced word of the same length.
    """
    tables = []
    for idx in range(8):
        fa, fb, sw = idx >> 2 & 1, idx >> 1 & 1, idx & 1
        out = []
        for l in range(4):
            gen, sign = l >> 1, l & 1
            sign ^= fa if gen == 0 else fb
            gen ^= sw
            out.append(gen * 2 + sign)
        tables.append(bytes.maketrans(bytes(range(4)), bytes(out)))
    return tables
