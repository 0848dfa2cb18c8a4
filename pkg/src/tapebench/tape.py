"""Alphabets, finite-support tapes, folding, and the tape numbering.

Tapes are immutable values: a finite mapping position -> symbol plus a head
position.  Storing the blank symbol at a position is normalised to absence,
so structural equality and hashing are well defined.

The tape literal format puts a caret immediately before the head cell:
``"11^10"`` is a tape with symbols at positions -2, -1, 0 and head 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field


class TapeError(ValueError):
    """Malformed tape literal or symbol outside the alphabet."""


@dataclass(frozen=True)
class Alphabet:
    """An ordered finite symbol set with one distinguished blank."""

    symbols: tuple[str, ...]
    blank: str

    def __post_init__(self) -> None:
        if len(self.symbols) < 2:
            raise TapeError("alphabet needs at least 2 symbols")
        if len(set(self.symbols)) != len(self.symbols):
            raise TapeError("duplicate symbols in alphabet")
        if self.blank not in self.symbols:
            raise TapeError("blank %r not in alphabet" % (self.blank,))
        for s in self.symbols:
            if len(s) != 1:
                raise TapeError("symbols must be single characters, got %r" % (s,))

    def index(self, symbol: str) -> int:
        return self.symbols.index(symbol)

    @property
    def size(self) -> int:
        return len(self.symbols)


SIGMA2 = Alphabet(("0", "1"), blank="0")
SIGMA4 = Alphabet(("_", "0", "1", "$"), blank="_")


@dataclass(frozen=True)
class Tape:
    """Two-way-infinite tape with finitely many non-blank cells."""

    alphabet: Alphabet
    cells: tuple[tuple[int, str], ...]  # sorted by position, blanks omitted
    head: int = 0

    def __post_init__(self) -> None:
        seen = set()
        for pos, sym in self.cells:
            if sym not in self.alphabet.symbols:
                raise TapeError("symbol %r not in alphabet" % (sym,))
            if sym == self.alphabet.blank:
                raise TapeError("blank stored explicitly at %d" % pos)
            if pos in seen:
                raise TapeError("duplicate cell at %d" % pos)
            seen.add(pos)
        if tuple(sorted(self.cells)) != self.cells:
            raise TapeError("cells not sorted")

    @classmethod
    def from_cells(cls, alphabet: Alphabet, cells: dict[int, str], head: int = 0) -> "Tape":
        kept = tuple(sorted((p, s) for p, s in cells.items() if s != alphabet.blank))
        return cls(alphabet, kept, head)

    @classmethod
    def blank_tape(cls, alphabet: Alphabet, head: int = 0) -> "Tape":
        return cls(alphabet, (), head)

    def symbol_at(self, pos: int) -> str:
        for p, s in self.cells:
            if p == pos:
                return s
        return self.alphabet.blank

    def as_dict(self) -> dict[int, str]:
        return dict(self.cells)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.cells)

    def shifted(self, delta: int) -> "Tape":
        """Translate every cell and the head by delta."""
        return Tape(self.alphabet, tuple((p + delta, s) for p, s in self.cells), self.head + delta)

    def recentred(self) -> "Tape":
        """The same tape translated so the head sits at position 0."""
        return self if self.head == 0 else self.shifted(-self.head)

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return "Tape(%r)" % (render_tape(self),)


@dataclass(frozen=True)
class FoldedWord:
    """A one-sided word obtained by interleaving tape cells; no trailing blanks."""

    alphabet: Alphabet
    symbols: tuple[str, ...] = field(default=())

    def __post_init__(self) -> None:
        if self.symbols and self.symbols[-1] == self.alphabet.blank:
            raise TapeError("folded word has a trailing blank")
        for s in self.symbols:
            if s not in self.alphabet.symbols:
                raise TapeError("symbol %r not in alphabet" % (s,))

    def __len__(self) -> int:
        return len(self.symbols)


def parse_tape(text: str, alphabet: Alphabet) -> Tape:
    """Parse a tape literal; exactly one ``^`` marks the head cell."""
    if text.count("^") != 1:
        raise TapeError("tape literal needs exactly one head marker: %r" % (text,))
    left, right = text.split("^")
    cells: dict[int, str] = {}
    for i, ch in enumerate(reversed(left)):
        if ch not in alphabet.symbols:
            raise TapeError("unknown symbol %r in tape literal" % (ch,))
        cells[-1 - i] = ch
    for i, ch in enumerate(right):
        if ch not in alphabet.symbols:
            raise TapeError("unknown symbol %r in tape literal" % (ch,))
        cells[i] = ch
    return Tape.from_cells(alphabet, cells, head=0)


def render_tape(t: Tape) -> str:
    """Canonical literal: minimal window covering the support and the head."""
    t = t.recentred()
    if not t.cells:
        return "^"
    lo = min(0, t.cells[0][0])
    hi = max(-1, t.cells[-1][0])
    chars = [t.symbol_at(p) for p in range(lo, hi + 1)]
    split = -lo
    return "".join(chars[:split]) + "^" + "".join(chars[split:])


def fold_offset(i: int) -> int:
    """Head-relative offset of fold index i, in the order 0, 1, -1, 2, -2, ..."""
    if i == 0:
        return 0
    return (i + 1) // 2 if i % 2 == 1 else -(i // 2)


def offset_fold_index(p: int) -> int:
    if p == 0:
        return 0
    return 2 * p - 1 if p > 0 else -2 * p


def fold(t: Tape) -> FoldedWord:
    """Interleave cells around the head, stopping at the last non-blank contributor."""
    if not t.cells:
        return FoldedWord(t.alphabet, ())
    length = max(offset_fold_index(p - t.head) for p, _ in t.cells) + 1
    syms = tuple(t.symbol_at(t.head + fold_offset(i)) for i in range(length))
    return FoldedWord(t.alphabet, syms)


def unfold(word: FoldedWord, head: int = 0) -> Tape:
    cells = {head + fold_offset(i): s for i, s in enumerate(word.symbols)}
    return Tape.from_cells(word.alphabet, cells, head=head)


def _length_counts(alphabet: Alphabet, length: int) -> int:
    # words of this length with a non-blank last symbol
    k = alphabet.size
    return (k - 1) * k ** (length - 1)


def _nonblank_indices(alphabet: Alphabet) -> list[int]:
    return [i for i, s in enumerate(alphabet.symbols) if s != alphabet.blank]


def word_number(word: FoldedWord) -> int:
    """Rank of a folded word in length-then-lexicographic order."""
    alphabet = word.alphabet
    if not word.symbols:
        return 0
    k = alphabet.size
    length = len(word.symbols)
    base = 1 + sum(_length_counts(alphabet, l) for l in range(1, length))
    prefix = 0
    for s in word.symbols[:-1]:
        prefix = prefix * k + alphabet.index(s)
    nb = _nonblank_indices(alphabet)
    return base + prefix * (k - 1) + nb.index(alphabet.index(word.symbols[-1]))


def word_of_number(n: int, alphabet: Alphabet) -> FoldedWord:
    if n < 0:
        raise TapeError("word numbers are naturals")
    if n == 0:
        return FoldedWord(alphabet, ())
    k = alphabet.size
    length = 1
    base = 1
    while n >= base + _length_counts(alphabet, length):
        base += _length_counts(alphabet, length)
        length += 1
    i = n - base
    prefix_value, last_rank = divmod(i, k - 1)
    digits = []
    for _ in range(length - 1):
        prefix_value, d = divmod(prefix_value, k)
        digits.append(alphabet.symbols[d])
    digits.reverse()
    nb = _nonblank_indices(alphabet)
    digits.append(alphabet.symbols[nb[last_rank]])
    return FoldedWord(alphabet, tuple(digits))


def tape_number(t: Tape) -> int:
    """Total bijection between head-at-0 tapes and naturals.

    Tapes with the head elsewhere are translated first, so the number never
    depends on the head offset.
    """
    return word_number(fold(t.recentred()))


def tape_of_number(n: int, alphabet: Alphabet) -> Tape:
    return unfold(word_of_number(n, alphabet), head=0)
