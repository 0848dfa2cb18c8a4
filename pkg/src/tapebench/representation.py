"""Representations: injective encoders of abstract countable sets into tapes.

A representation owns an abstract domain (with a successor for enumeration),
a total injective encoder, and a partial decoder that returns None off the
image.  Computability of abstract functions is only ever defined through
representations, so the witness checker and the two machine builders
(constant functions, finite tables) live here too.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator, Optional

from .builders import TM
from .machine import Exhausted, Halted, Machine, run
from .pairing import (
    DELIM,
    WORD_SYMBOLS,
    cantor,
    component_of_word,
    dec,
    enc,
    pair_mach,
    uncantor,
    unpair_mach,
)
from .tape import SIGMA2, SIGMA4, Alphabet, Tape, fold, tape_number, tape_of_number


class UnknownFlag(Exception):
    """An oracle-backed encoder has no certificate for this element."""

    def __init__(self, element) -> None:
        super().__init__("no certified flag for element %r" % (element,))
        self.element = element


# ---------------------------------------------------------------------------
# Abstract domains
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AbstractDomain:
    """A countable set with a first element and a successor enumeration."""

    name: str
    first: object
    successor: Callable | None  # None only for finite domains
    members: tuple | None = None  # finite domains list themselves

    def elements(self, count: int | None = None) -> Iterator:
        if self.members is not None:
            yield from (self.members if count is None else self.members[:count])
            return
        x = self.first
        n = 0
        while count is None or n < count:
            yield x
            x = self.successor(x)
            n += 1

    @property
    def is_finite(self) -> bool:
        return self.members is not None


NATURALS = AbstractDomain("naturals", 0, lambda n: n + 1)

NATURAL_PAIRS = AbstractDomain(
    "natural-pairs", (0, 0), lambda p: uncantor(cantor(*p) + 1)
)


def tapes_domain(alphabet: Alphabet) -> AbstractDomain:
    return AbstractDomain(
        "tapes",
        Tape.blank_tape(alphabet),
        lambda t: tape_of_number(tape_number(t) + 1, alphabet),
    )


def machines_domain(alphabet: Alphabet = SIGMA2) -> AbstractDomain:
    """Machines enumerated through their numbering; elements are indices."""
    return AbstractDomain("machine-indices", 0, lambda n: n + 1)


def machine_tape_pairs_domain() -> AbstractDomain:
    """Pairs (machine index, tape number) in Cantor order."""
    return NATURAL_PAIRS


def finite_domain(labels) -> AbstractDomain:
    labels = tuple(labels)
    return AbstractDomain("finite{%s}" % ",".join(map(str, labels)), labels[0], None, labels)


# ---------------------------------------------------------------------------
# Representations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Representation:
    name: str
    domain: AbstractDomain
    alphabet: Alphabet
    encode: Callable[[object], Tape]
    decode: Callable[[Tape], Optional[object]]

    def image(self, count: int) -> list[Tape]:
        return [self.encode(x) for x in self.domain.elements(count)]


def unary_component(n: int) -> Tape:
    """The component tape whose enc form is the literal ^1...10$."""
    return component_of_word("1" * (n + 1) + "0")


def binary_component(n: int) -> Tape:
    return component_of_word(binary_word(n))


def binary_word(n: int) -> str:
    """Least-significant-bit-first binary digits; 0 is the single digit 0."""
    if n == 0:
        return "0"
    out = []
    while n:
        out.append("01"[n & 1])
        n >>= 1
    return "".join(out)


def rep_unary() -> Representation:
    def encode(n: int) -> Tape:
        return enc(unary_component(n))

    def decode(t: Tape):
        inner = dec(t)
        if inner is None:
            return None
        word = fold(inner).symbols
        if len(word) < 2 or word[-1] != "0":
            return None
        if set(word[:-1]) != {"1"}:
            return None
        return len(word) - 2

    return Representation("unary", NATURALS, SIGMA4, encode, decode)


def rep_binary_marked() -> Representation:
    def encode(n: int) -> Tape:
        return enc(binary_component(n))

    def decode(t: Tape):
        inner = dec(t)
        if inner is None:
            return None
        word = "".join(fold(inner).symbols)
        if not word or set(word) - {"0", "1"}:
            return None
        if word != "0" and word[-1] != "1":
            return None  # trailing zero digits are not canonical
        return int(word[::-1], 2)

    return Representation("binary-marked", NATURALS, SIGMA4, encode, decode)


def rep_pair_unary_twosided() -> Representation:
    """Example pair coding: m+1 ones rightward, n+1 ones leftward, no marks."""

    def encode(pair: tuple[int, int]) -> Tape:
        m, n = pair
        cells = {i: "1" for i in range(m + 1)}
        cells.update({-1 - i: "1" for i in range(n + 1)})
        return Tape.from_cells(SIGMA2, cells, head=0)

    def decode(t: Tape):
        t = t.recentred()
        pos = set(t.support)
        if not pos:
            return None
        m = -1
        while m + 1 in pos:
            m += 1
        n = -1
        while -(n + 2) in pos:
            n += 1
        if m < 0 or n < 0:
            return None
        if len(pos) != (m + 1) + (n + 1):
            return None  # gaps or stray symbols
        return (m, n)

    return Representation("pair-unary-2sided", NATURAL_PAIRS, SIGMA2, encode, decode)


def rep_pair_binary_twosided() -> Representation:
    """Deliberately boundary-ambiguous: LSB-nearest binary halves, no marks."""

    def encode(pair: tuple[int, int]) -> Tape:
        m, n = pair
        cells = {}
        i = 0
        while m:
            if m & 1:
                cells[i] = "1"
            m >>= 1
            i += 1
        i = 0
        while n:
            if n & 1:
                cells[-1 - i] = "1"
            n >>= 1
            i += 1
        return Tape.from_cells(SIGMA2, cells, head=0)

    def decode(t: Tape):
        t = t.recentred()
        m = sum(1 << p for p, s in t.cells if p >= 0 and s == "1")
        n = sum(1 << (-1 - p) for p, s in t.cells if p < 0 and s == "1")
        return (m, n)

    return Representation("pair-binary-2sided", NATURAL_PAIRS, SIGMA2, encode, decode)


def flag_from_oracle(oracle, n: int) -> int:
    """The diagonal-halting flag of n, certified or UnknownFlag; never guessed."""
    answer = oracle.query(tape_of_number(n, SIGMA2))
    if answer.is_yes:
        return 1
    if answer.is_no:
        return 0
    raise UnknownFlag(n)


def rep_halting_augmented(flag_oracle) -> Representation:
    """Unary payload on the right, certified halting flag on the left.

    The projection machines recover either side, which is what makes the
    flag trivially computable in this representation.
    """

    def encode(n: int) -> Tape:
        flag = flag_from_oracle(flag_oracle, n)
        return pair_mach(unary_component(n), unary_component(flag))

    unary = rep_unary()

    def decode(t: Tape):
        parts = unpair_mach(t)
        if parts is None:
            return None
        n = unary.decode(enc(parts[0]))
        f = unary.decode(enc(parts[1]))
        if n is None or f not in (0, 1):
            return None
        return n

    return Representation("halting-augmented", NATURALS, SIGMA4, encode, decode)


def rep_u_k(k: int, oracle_chain) -> Representation:
    """Flag-stacked unary: the level-k flag in front, the rest nested behind.

    Stripping the front component of level k yields exactly level k-1, so
    the nesting mirrors the construction it models.
    """
    if k < 0 or k > 2:
        raise ValueError("flag stack depth is capped at 2")
    if k == 0:
        return rep_unary()
    if len(oracle_chain) < k:
        raise ValueError("need %d oracles for depth %d" % (k, k))
    inner = rep_u_k(k - 1, oracle_chain[: k - 1])
    unary = rep_unary()

    def encode(n: int) -> Tape:
        flag = flag_from_oracle(oracle_chain[k - 1], n)
        rest = unary_component(n) if k == 1 else inner.encode(n)
        return pair_mach(unary_component(flag), rest)

    def decode(t: Tape):
        parts = unpair_mach(t)
        if parts is None:
            return None
        flag = unary.decode(enc(parts[0]))
        if flag not in (0, 1):
            return None
        if k == 1:
            return unary.decode(enc(parts[1]))
        return inner.decode(parts[1])

    return Representation("u%d" % k, NATURALS, SIGMA4, encode, decode)


def rep_tape_order(alphabet: Alphabet = SIGMA2) -> Representation:
    """Naturals laid out in tape order: encode is the tape numbering itself."""
    return Representation(
        "tape-order",
        NATURALS,
        alphabet,
        lambda n: tape_of_number(n, alphabet),
        lambda t: tape_number(t),
    )


def rep_finite(labels, words=None) -> Representation:
    """A finite labelled set in single-component form.

    Default words are distinct unary blocks; any injective word table works.
    """
    labels = tuple(labels)
    if words is None:
        words = {lab: "1" * (i + 1) + "0" for i, lab in enumerate(labels)}
    if len(set(words.values())) != len(labels):
        raise ValueError("word table must be injective")
    rev = {w: lab for lab, w in words.items()}

    def encode(x):
        return enc(component_of_word(words[x]))

    def decode(t: Tape):
        inner = dec(t)
        if inner is None:
            return None
        return rev.get("".join(fold(inner).symbols))

    return Representation("finite", finite_domain(labels), SIGMA4, encode, decode)


# ---------------------------------------------------------------------------
# Function representation and witness checking
# ---------------------------------------------------------------------------


def represent_function(f: Callable, ra: Representation, rb: Representation) -> Callable:
    """The tape-level mapping rb.encode . f . ra.decode; None off ra's image."""

    def mapped(t: Tape) -> Optional[Tape]:
        x = ra.decode(t)
        if x is None:
            return None
        return rb.encode(f(x))

    return mapped


@dataclass(frozen=True)
class WitnessVerdict:
    status: str  # "verified" | "refuted" | "inconclusive"
    samples: int = 0
    fuel: int = 0
    element: object = None
    input_tape: Tape | None = None
    expected: Tape | None = None
    actual: object = None

    @property
    def verified(self) -> bool:
        return self.status == "verified"


def check_witness(
    m: Machine,
    f: Callable,
    ra: Representation,
    rb: Representation,
    sample_count: int,
    fuel: int,
) -> WitnessVerdict:
    """Does the machine carry ra-encodings to rb-encodings of f-images?

    Elements whose encoding (either side) lacks a certified flag are skipped;
    a run out of fuel makes the verdict inconclusive rather than refuted.
    """
    checked = 0
    inconclusive = False
    for x in ra.domain.elements(sample_count):
        try:
            input_tape = ra.encode(x)
            expected = rb.encode(f(x))
        except UnknownFlag:
            inconclusive = True
            continue
        res = run(m, input_tape, fuel)
        if isinstance(res, Exhausted):
            inconclusive = True
            continue
        if res.tape != expected:
            return WitnessVerdict(
                "refuted", checked, fuel, element=x, input_tape=input_tape,
                expected=expected, actual=res.tape,
            )
        checked += 1
    if inconclusive or checked == 0:
        return WitnessVerdict("inconclusive", checked, fuel)
    return WitnessVerdict("verified", checked, fuel)


def replay_refutation(m: Machine, verdict: WitnessVerdict) -> bool:
    """Re-run a refutation's counterexample and reproduce the mismatch."""
    if verdict.status != "refuted":
        return False
    res = run(m, verdict.input_tape, verdict.fuel)
    return isinstance(res, Halted) and res.tape == verdict.actual != verdict.expected


# ---------------------------------------------------------------------------
# The two computability lemmas as machine builders
# ---------------------------------------------------------------------------


def build_constant_machine(ra: Representation, x) -> Machine:
    """A machine sending every ra-encoding to ra.encode(x)."""
    from .pairing import machine_const

    target = dec(ra.encode(x))
    if target is None:
        raise ValueError("representation does not use single-component form")
    return machine_const(target)


def build_finite_function_machine(ra: Representation, table: dict) -> Machine:
    """Cascaded recognize-then-rewrite blocks realising a finite function.

    For each domain element the block compares the input word against the
    element's word without writing; on a match it erases the input and
    writes the image, all at fixed offsets known at build time.
    """
    if not ra.domain.is_finite:
        raise ValueError("finite-function builder needs a finite domain")
    elements = list(ra.domain.members)
    words = {}
    for x in elements:
        inner = dec(ra.encode(x))
        if inner is None:
            raise ValueError("representation does not use single-component form")
        words[x] = fold(inner).symbols

    t = TM(SIGMA4, "b0_c0")
    t.halt("done")
    for bi, x in enumerate(elements):
        w = words[x]
        out = words[table[x]]
        L = len(w)
        nxt_block = "b%d_c0" % (bi + 1)  # undefined for the last block: rejects
        # counted write of the image word, then counted return to cell 0
        back = t.move_n("b%d_bk" % bi, len(out), "L", "done")
        entry = t.write_word("b%d_wr" % bi, tuple(out) + (DELIM,), "R", (None, "L", back))
        # erase the matched word leftward, then write
        for j in range(L - 1, -1, -1):
            t.on_any("b%d_ez%d" % (bi, j), "_", "L" if j else "S", "b%d_ez%d" % (bi, j - 1) if j else entry)
        # pure-read compare, with counted returns on mismatch
        for j in range(L + 1):
            st = "b%d_c%d" % (bi, j)
            expectation = w[j] if j < L else DELIM
            for sym in SIGMA4.symbols:
                if sym == expectation:
                    if j < L:
                        t.add(st, sym, sym, "R", "b%d_c%d" % (bi, j + 1))
                    else:
                        # full match: erase the terminator and sweep back
                        t.add(st, sym, "_", "L" if L else "S", "b%d_ez%d" % (bi, L - 1) if L else entry)
                else:
                    t.add(st, sym, sym, "L" if j else "S", "b%d_r%d" % (bi, j - 1) if j else nxt_block)
        for j in range(L - 1, -1, -1):
            t.on_any("b%d_r%d" % (bi, j), None, "L" if j else "S", "b%d_r%d" % (bi, j - 1) if j else nxt_block)
    t.extra_states.append("b%d_c0" % len(elements))  # the rejecting dead state
    return t.build()


# ---------------------------------------------------------------------------
# Registry
# ---------------------------------------------------------------------------

PLAIN_REPRESENTATIONS = ("unary", "binary-marked", "pair-unary-2sided", "pair-binary-2sided", "tape-order")
ORACLE_REPRESENTATIONS = ("halting-augmented", "u1", "u2")


def make_registry(flag_oracle=None, oracle_chain=None) -> dict[str, Representation]:
    """Name -> representation map for the CLI and the benchmark suites."""
    reg = {
        "unary": rep_unary(),
        "binary-marked": rep_binary_marked(),
        "pair-unary-2sided": rep_pair_unary_twosided(),
        "pair-binary-2sided": rep_pair_binary_twosided(),
        "tape-order": rep_tape_order(),
    }
    if flag_oracle is not None:
        reg["halting-augmented"] = rep_halting_augmented(flag_oracle)
        chain = oracle_chain if oracle_chain is not None else [flag_oracle]
        reg["u1"] = rep_u_k(1, chain[:1])
        if len(chain) >= 2:
            reg["u2"] = rep_u_k(2, chain[:2])
    return reg
