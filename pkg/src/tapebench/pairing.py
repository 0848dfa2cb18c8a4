"""Two pairing schemes for tapes plus the combinator machines.

Meta level: a bijection on tape pairs via Cantor pairing of tape numbers.

Machine level: a self-delimiting layout over the four-symbol alphabet.
``enc(t)`` writes the fold of t rightward from the head and closes it with
``$``;  ``pair_mach(a, b)`` additionally writes the fold of b leftward
(reversed) with its own closing ``$``.  Parsing frames on the outermost
``$`` of each side, so pairing is total and injective even when a component
itself contains ``$`` cells (nested pairs).  The combinator machines frame
on the innermost ``$`` instead, so they are exact on pairs whose components
are ``$``-free, which covers every representation built here.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt
from typing import Callable, Optional

from .builders import TM, sym_name
from .machine import Machine, compose, relabel
from .tape import SIGMA4, Tape, TapeError, fold, tape_number, tape_of_number, unfold, FoldedWord

#: the word symbols of the machine-level scheme (everything but the delimiter)
WORD_SYMBOLS = ("_", "0", "1")
DELIM = "$"


# ---------------------------------------------------------------------------
# Meta scheme: Cantor pairing over tape numbers
# ---------------------------------------------------------------------------


def cantor(x: int, y: int) -> int:
    return (x + y) * (x + y + 1) // 2 + y


def uncantor(n: int) -> tuple[int, int]:
    w = (isqrt(8 * n + 1) - 1) // 2
    y = n - w * (w + 1) // 2
    return w - y, y


def pair_meta(a: Tape, b: Tape) -> Tape:
    if a.alphabet != b.alphabet:
        raise TapeError("pairing needs a common alphabet")
    return tape_of_number(cantor(tape_number(a), tape_number(b)), a.alphabet)


def unpair_meta(t: Tape) -> tuple[Tape, Tape]:
    x, y = uncantor(tape_number(t))
    return tape_of_number(x, t.alphabet), tape_of_number(y, t.alphabet)


# ---------------------------------------------------------------------------
# Machine-level scheme
# ---------------------------------------------------------------------------


def component_of_word(symbols) -> Tape:
    """The canonical component tape carrying a given $-free word.

    enc writes a component's fold rightward, so the component whose enc form
    shows the word w contiguously is the unfold of w.
    """
    return unfold(FoldedWord(SIGMA4, tuple(symbols)), head=0)


def enc(t: Tape) -> Tape:
    """Canonical single-component form: fold written rightward, closed by $."""
    if t.alphabet != SIGMA4:
        raise TapeError("single-component form lives over the 4-symbol alphabet")
    word = fold(t.recentred()).symbols
    cells = {i: s for i, s in enumerate(word)}
    cells[len(word)] = DELIM
    return Tape.from_cells(SIGMA4, cells, head=0)


def dec(t: Tape) -> Optional[Tape]:
    """Inverse of enc; None off the image."""
    if t.alphabet != SIGMA4:
        return None
    t = t.recentred()
    if not t.cells:
        return None
    positions = t.support
    hi = positions[-1]
    lo = positions[0]
    if lo < 0 or t.symbol_at(hi) != DELIM:
        return None
    word = tuple(t.symbol_at(i) for i in range(hi))
    if DELIM in word:
        return None
    if word and word[-1] == SIGMA4.blank:
        return None
    return unfold(FoldedWord(SIGMA4, word), head=0)


def single_component_word(t: Tape) -> Optional[tuple[str, ...]]:
    """The fold content of an enc-form tape, or None."""
    inner = dec(t)
    return None if inner is None else fold(inner).symbols


def pair_mach(a: Tape, b: Tape) -> Tape:
    """fold(a) $ rightward; reversed fold(b) $ leftward; head at 0."""
    if a.alphabet != SIGMA4 or b.alphabet != SIGMA4:
        raise TapeError("machine-level pairing lives over the 4-symbol alphabet")
    wa = fold(a.recentred()).symbols
    wb = fold(b.recentred()).symbols
    cells = {i: s for i, s in enumerate(wa)}
    cells[len(wa)] = DELIM
    for i, s in enumerate(wb):
        cells[-1 - i] = s
    cells[-len(wb) - 1] = DELIM
    return Tape.from_cells(SIGMA4, cells, head=0)


def unpair_mach(t: Tape) -> Optional[tuple[Tape, Tape]]:
    """Parse on the outermost $ of each side; None when malformed."""
    if t.alphabet != SIGMA4:
        return None
    t = t.recentred()
    if not t.cells:
        return None
    positions = t.support
    hi, lo = positions[-1], positions[0]
    if hi < 0 or lo > -1:
        return None
    if t.symbol_at(hi) != DELIM or t.symbol_at(lo) != DELIM:
        return None
    wa = tuple(t.symbol_at(i) for i in range(hi))
    wb = tuple(t.symbol_at(-1 - i) for i in range(-lo - 1))
    if wa and wa[-1] == SIGMA4.blank:
        return None
    if wb and wb[-1] == SIGMA4.blank:
        return None
    try:
        return unfold(FoldedWord(SIGMA4, wa), 0), unfold(FoldedWord(SIGMA4, wb), 0)
    except TapeError:
        return None


@dataclass(frozen=True)
class PairScheme:
    kind: str  # "meta-bijective" | "machine-level"
    pair: Callable[[Tape, Tape], Tape]
    unpair: Callable[[Tape], Optional[tuple[Tape, Tape]]]


META_SCHEME = PairScheme("meta-bijective", pair_meta, lambda t: unpair_meta(t))
MACHINE_SCHEME = PairScheme("machine-level", pair_mach, unpair_mach)


# ---------------------------------------------------------------------------
# Combinator machines.
#
# Navigation vocabulary (all over $-free component words):
#   home      a $ parked at cell 0 so walks can find the origin again
#   cursor    a $ at the last consumed cell of a word being read
#   marker    a $ just past the last written cell of a word being built
# Walks count $ signs, which is sound because words never contain $.
# ---------------------------------------------------------------------------


def machine_duplicate() -> Machine:
    """enc(t) -> pair_mach(t, t); the input word is copied, not consumed."""
    t = TM(SIGMA4, "s0")
    W = WORD_SYMBOLS
    # empty word: plant the left terminator and halt back home
    t.add("s0", DELIM, DELIM, "L", "emp_put")
    t.on_any("emp_put", DELIM, "R", "emp_home")
    t.add("emp_home", DELIM, DELIM, "S", "done")
    t.halt("done")
    for c0 in W:
        n0 = sym_name(c0)
        # plant home over char 0, write char 0 at -1, open the left marker
        t.add("s0", c0, DELIM, "L", "ini_put_%s" % n0)
        t.on_any("ini_put_%s" % n0, c0, "L", "ini_mark_%s" % n0)
        t.on_any("ini_mark_%s" % n0, DELIM, "R", "ini_home_%s" % n0)
        # walk right to home (first $), then consume from cell 1 on
        for w in W:
            t.add("ini_home_%s" % n0, w, w, "R", "ini_home_%s" % n0)
        t.add("ini_home_%s" % n0, DELIM, DELIM, "R", "next_%s" % n0)
        # read the next source char; $ here is the terminator: finish
        t.add("next_%s" % n0, DELIM, DELIM, "L", "fin_%s" % n0)
        for w in W:
            t.add("fin_%s" % n0, w, w, "L", "fin_%s" % n0)
        t.add("fin_%s" % n0, DELIM, c0, "S", "done")  # restore char 0, halt home
        for c in W:
            n = sym_name(c)
            # drop a cursor over the char, carry it to the left marker
            t.add("next_%s" % n0, c, DELIM, "L", "car_%s_%s" % (n0, n))
            for w in W:
                t.add("car_%s_%s" % (n0, n), w, w, "L", "car_%s_%s" % (n0, n))
            t.add("car_%s_%s" % (n0, n), DELIM, DELIM, "L", "car2_%s_%s" % (n0, n))  # past home
            for w in W:
                t.add("car2_%s_%s" % (n0, n), w, w, "L", "car2_%s_%s" % (n0, n))
            t.add("car2_%s_%s" % (n0, n), DELIM, c, "L", "mark_%s_%s" % (n0, n))  # write at marker
            t.on_any("mark_%s_%s" % (n0, n), DELIM, "R", "ret_%s_%s" % (n0, n))  # new marker
            # walk right past home to the cursor and restore the char there
            for w in W:
                t.add("ret_%s_%s" % (n0, n), w, w, "R", "ret_%s_%s" % (n0, n))
            t.add("ret_%s_%s" % (n0, n), DELIM, DELIM, "R", "ret2_%s_%s" % (n0, n))
            for w in W:
                t.add("ret2_%s_%s" % (n0, n), w, w, "R", "ret2_%s_%s" % (n0, n))
            t.add("ret2_%s_%s" % (n0, n), DELIM, c, "R", "next_%s" % n0)
    return t.build()


def machine_proj1() -> Machine:
    """pair_mach(a, b) -> enc(a): erase the left side, keep the right."""
    t = TM(SIGMA4, "s0")
    W = WORD_SYMBOLS
    # a empty: home is the terminator itself
    t.add("s0", DELIM, DELIM, "L", "el_emp")
    for w in W:
        t.add("el_emp", w, "_", "L", "el_emp")
    t.add("el_emp", DELIM, "_", "R", "home_emp")
    for w in W:
        t.add("home_emp", w, w, "R", "home_emp")
    t.add("home_emp", DELIM, DELIM, "S", "done")
    t.halt("done")
    for c0 in W:
        n0 = sym_name(c0)
        t.add("s0", c0, DELIM, "L", "el_%s" % n0)  # plant home, erase leftward
        for w in W:
            t.add("el_%s" % n0, w, "_", "L", "el_%s" % n0)
        t.add("el_%s" % n0, DELIM, "_", "R", "home_%s" % n0)
        for w in W:
            t.add("home_%s" % n0, w, w, "R", "home_%s" % n0)
        t.add("home_%s" % n0, DELIM, c0, "S", "done")  # restore char 0
    return t.build()


def machine_swap() -> Machine:
    """pair_mach(a, b) -> pair_mach(b, a).

    Three passes: the left word moves to a staging zone past the right
    terminator, the right word moves (reversed) into the freed left side,
    and the staging zone moves back onto the right side.  A home $ parked
    at cell 0 anchors every walk; the first component character rides along
    in the state and is written last, which puts the head back on cell 0.
    """
    t = TM(SIGMA4, "s0")
    W = WORD_SYMBOLS
    t.halt("done")

    # ---- branch: right word empty (a = blank) -------------------------------
    t.add("s0", DELIM, DELIM, "L", "ae_read")
    t.add("ae_read", DELIM, DELIM, "R", "ae_blank")  # blank pair: already swapped
    t.add("ae_blank", DELIM, DELIM, "S", "done")
    for p in W:  # p: pending first char of b, written at cell 0 at the end
        np = sym_name(p)
        t.add("ae_read", p, "_", "L", "ae_rd_v_%s" % np)  # no cursor yet
        # shared return walk: over the written data, past home, to the cursor
        t.on_any("ae_mark_%s" % np, DELIM, "L", "ae_bk_%s" % np)
        bk, bk2 = "ae_bk_%s" % np, "ae_bk2_%s" % np
        for w in W:
            t.add(bk, w, w, "L", bk)
            t.add(bk2, w, w, "L", bk2)
        t.add(bk, DELIM, DELIM, "L", bk2)  # past home
        t.add(bk2, DELIM, "_", "L", "ae_rd_w_%s" % np)  # consume cursor
        for tag in ("v", "w"):  # v: nothing written yet on the right
            rd = "ae_rd_%s_%s" % (tag, np)
            for c in W:
                nc = sym_name(c)
                car = "ae_car_%s_%s_%s" % (tag, np, nc)
                t.add(rd, c, DELIM, "R", car)
                for w in W:
                    t.add(car, w, w, "R", car)
                if tag == "v":
                    # past home, write the first staged char at cell 1
                    t.add(car, DELIM, DELIM, "R", "ae_put1_%s_%s" % (np, nc))
                    t.on_any("ae_put1_%s_%s" % (np, nc), c, "R", "ae_mark_%s" % np)
                else:
                    car2 = "ae_car2_%s_%s" % (np, nc)
                    t.add(car, DELIM, DELIM, "R", car2)
                    for w in W:
                        t.add(car2, w, w, "R", car2)
                    t.add(car2, DELIM, c, "R", "ae_mark_%s" % np)
            # left word exhausted: erase its terminator, return to home
            fin = "ae_fin_%s_%s" % (tag, np)
            t.add(rd, DELIM, "_", "R", fin)
            for w in W:
                t.add(fin, w, w, "R", fin)
            # plant the new left terminator at -1, then finish at home
            t.add(fin, DELIM, DELIM, "L", "ae_term_%s_%s" % (tag, np))
            t.on_any("ae_term_%s_%s" % (tag, np), DELIM, "R", "ae_done_%s_%s" % (tag, np))
            if tag == "w":
                t.add("ae_done_w_%s" % np, DELIM, p, "S", "done")
            else:
                # nothing written yet: right side needs "p $"
                t.add("ae_done_v_%s" % np, DELIM, DELIM, "R", "ae_vterm_%s" % np)
                t.on_any("ae_vterm_%s" % np, DELIM, "L", "ae_vpend_%s" % np)
                t.add("ae_vpend_%s" % np, DELIM, p, "S", "done")

    # ---- main flow -----------------------------------------------------------
    for c0 in W:  # c0: first char of the right word, rides along through pass 1
        n0 = sym_name(c0)
        t.add("s0", c0, DELIM, "L", "p1f_%s" % n0)
        # b empty: erase its terminator, walk home, run pass 2 in b-empty mode
        t.add("p1f_%s" % n0, DELIM, "_", "R", "p1f_home_%s" % n0)
        for w in W:
            t.add("p1f_home_%s" % n0, w, w, "R", "p1f_home_%s" % n0)
        t.add("p1f_home_%s" % n0, DELIM, DELIM, "L", "p2put_be_%s" % n0)
        for c in W:
            nc = sym_name(c)
            # first staged char: cursor at -1, carry right past home and the
            # right terminator, write just beyond it, open the staging marker
            t.add("p1f_%s" % n0, c, DELIM, "R", "p1fc_%s_%s" % (n0, nc))
            st = "p1fc_%s_%s" % (n0, nc)
            st2 = "p1fc2_%s_%s" % (n0, nc)
            for w in W:
                t.add(st, w, w, "R", st)
                t.add(st2, w, w, "R", st2)
            t.add(st, DELIM, DELIM, "R", st2)  # past home
            t.add(st2, DELIM, DELIM, "R", "p1fput_%s_%s" % (n0, nc))  # past right term
            t.on_any("p1fput_%s_%s" % (n0, nc), c, "R", "p1mark_%s" % n0)
            # generic staged char: three $ signs out, write at the marker
            t.add("p1rd_%s" % n0, c, DELIM, "R", "p1c_%s_%s" % (n0, nc))
            g1, g2, g3 = ("p1c_%s_%s" % (n0, nc), "p1c2_%s_%s" % (n0, nc), "p1c3_%s_%s" % (n0, nc))
            for w in W:
                t.add(g1, w, w, "R", g1)
                t.add(g2, w, w, "R", g2)
                t.add(g3, w, w, "R", g3)
            t.add(g1, DELIM, DELIM, "R", g2)
            t.add(g2, DELIM, DELIM, "R", g3)
            t.add(g3, DELIM, c, "R", "p1mark_%s" % n0)
        t.on_any("p1mark_%s" % n0, DELIM, "L", "p1b_%s" % n0)
        b1, b2, b3 = "p1b_%s" % n0, "p1b2_%s" % n0, "p1b3_%s" % n0
        for w in W:
            t.add(b1, w, w, "L", b1)
            t.add(b2, w, w, "L", b2)
            t.add(b3, w, w, "L", b3)
        t.add(b1, DELIM, DELIM, "L", b2)  # right terminator
        t.add(b2, DELIM, DELIM, "L", b3)  # home
        t.add(b3, DELIM, "_", "L", "p1rd_%s" % n0)  # consume the b cursor
        # left word exhausted: erase terminator, walk home, start pass 2
        t.add("p1rd_%s" % n0, DELIM, "_", "R", "p1done_%s" % n0)
        for w in W:
            t.add("p1done_%s" % n0, w, w, "R", "p1done_%s" % n0)
        t.add("p1done_%s" % n0, DELIM, DELIM, "L", "p2put_ma_%s" % n0)

        # pass 2 entry: write c0 at cell -1 and open the left marker
        for flag in ("ma", "be"):
            t.on_any("p2put_%s_%s" % (flag, n0), c0, "L", "p2mark_%s" % flag)

    # ---- pass 2: move the right word into the left side ----------------------
    for flag in ("ma", "be"):
        t.on_any("p2mark_%s" % flag, DELIM, "R", "p2home_%s" % flag)
        for w in W:
            t.add("p2home_%s" % flag, w, w, "R", "p2home_%s" % flag)
        t.add("p2home_%s" % flag, DELIM, DELIM, "R", "p2rd_%s" % flag)
        for c in W:
            nc = sym_name(c)
            car = "p2c_%s_%s" % (flag, nc)
            car2 = "p2c2_%s_%s" % (flag, nc)
            t.add("p2rd_%s" % flag, c, DELIM, "L", car)
            for w in W:
                t.add(car, w, w, "L", car)
                t.add(car2, w, w, "L", car2)
            t.add(car, DELIM, DELIM, "L", car2)  # home
            t.add(car2, DELIM, c, "L", "p2mk2_%s" % flag)  # write at left marker
        t.on_any("p2mk2_%s" % flag, DELIM, "R", "p2bk_%s" % flag)
        bk, bk2 = "p2bk_%s" % flag, "p2bk2_%s" % flag
        for w in W:
            t.add(bk, w, w, "R", bk)
            t.add(bk2, w, w, "R", bk2)
        t.add(bk, DELIM, DELIM, "R", bk2)  # home
        t.add(bk2, DELIM, "_", "R", "p2rd_%s" % flag)  # consume cursor
    # right word exhausted: erase its old terminator
    t.add("p2rd_ma", DELIM, "_", "R", "p3rd_v")
    t.add("p2rd_be", DELIM, "_", "L", "be_home")
    for w in W:
        t.add("be_home", w, w, "L", "be_home")
    t.add("be_home", DELIM, DELIM, "S", "done")  # home $ doubles as terminator

    # ---- pass 3: move the staging zone back onto the right side --------------
    for p in W:
        np = sym_name(p)
        t.add("p3rd_v", p, "_", "R", "p3rd2_v_%s" % np)  # pending char, no cursor
        # shared: extend the marker, walk right, consume the cursor
        t.on_any("p3mk_%s" % np, DELIM, "R", "p3bk_%s" % np)
        for w in W:
            t.add("p3bk_%s" % np, w, w, "R", "p3bk_%s" % np)
        t.add("p3bk_%s" % np, DELIM, "_", "R", "p3rd2_w_%s" % np)  # consume cursor
        for tag in ("v", "w"):
            rd = "p3rd2_%s_%s" % (tag, np)
            for c in W:
                nc = sym_name(c)
                car = "p3c_%s_%s_%s" % (tag, np, nc)
                t.add(rd, c, DELIM, "L", car)
                for w in W:
                    t.add(car, w, w, "L", car)
                if tag == "v":
                    t.add(car, DELIM, DELIM, "R", "p3put1_%s_%s" % (np, nc))  # stop at home
                    t.on_any("p3put1_%s_%s" % (np, nc), c, "R", "p3mk_%s" % np)
                else:
                    t.add(car, DELIM, c, "R", "p3mk_%s" % np)  # write at marker
            # staging zone exhausted: erase its marker and finish
            if tag == "v":
                t.add(rd, DELIM, "_", "L", "p3fv_%s" % np)
                for w in W:
                    t.add("p3fv_%s" % np, w, w, "L", "p3fv_%s" % np)
                t.add("p3fv_%s" % np, DELIM, DELIM, "R", "p3fv2_%s" % np)  # at home
                t.on_any("p3fv2_%s" % np, DELIM, "L", "p3fv3_%s" % np)  # terminator at 1
                t.add("p3fv3_%s" % np, DELIM, p, "S", "done")
            else:
                t.add(rd, DELIM, "_", "L", "p3f_%s" % np)
                for w in W:
                    t.add("p3f_%s" % np, w, w, "L", "p3f_%s" % np)
                t.add("p3f_%s" % np, DELIM, DELIM, "L", "p3f2_%s" % np)  # marker = new term
                for w in W:
                    t.add("p3f2_%s" % np, w, w, "L", "p3f2_%s" % np)
                t.add("p3f2_%s" % np, DELIM, p, "S", "done")  # pending over home
    return t.build()


def machine_proj2() -> Machine:
    """The composed projection onto the second component."""
    return compose(machine_swap(), machine_proj1())


def machine_proj2_direct() -> Machine:
    """pair_mach(a, b) -> enc(b) built directly: erase right, unfold left."""
    t = TM(SIGMA4, "s0")
    W = WORD_SYMBOLS
    t.halt("done")
    # plant home over cell 0 (its content is discarded), erase the right word
    t.add("s0", DELIM, DELIM, "L", "rd_v")  # right word empty: $ doubles as home
    for w in W:
        t.add("s0", w, DELIM, "R", "er")
        t.add("er", w, "_", "R", "er")
    t.add("er", DELIM, "_", "L", "home0")
    t.add("home0", "_", "_", "L", "home0")
    t.add("home0", DELIM, DELIM, "L", "rd_v")
    # consume the left word outward, writing it rightward after the home
    t.add("rd_v", DELIM, "_", "R", "emp_home")  # b empty: right side is just $
    t.add("emp_home", "_", "_", "R", "emp_home")
    t.add("emp_home", DELIM, DELIM, "S", "done")
    for p in W:
        np = sym_name(p)
        t.add("rd_v", p, "_", "L", "rd2_v_%s" % np)  # pending char, no cursor yet
        # shared return walk back to the cursor
        t.on_any("mk_%s" % np, DELIM, "L", "bk_%s" % np)
        bk, bk2 = "bk_%s" % np, "bk2_%s" % np
        for w in W:
            t.add(bk, w, w, "L", bk)
            t.add(bk2, w, w, "L", bk2)
        t.add(bk, DELIM, DELIM, "L", bk2)
        t.add(bk2, DELIM, "_", "L", "rd2_w_%s" % np)
        for tag in ("v", "w"):
            rd = "rd2_%s_%s" % (tag, np)
            for c in W:
                nc = sym_name(c)
                car = "car_%s_%s_%s" % (tag, np, nc)
                t.add(rd, c, DELIM, "R", car)
                for w in W:
                    t.add(car, w, w, "R", car)
                if tag == "v":
                    t.add(car, DELIM, DELIM, "R", "put1_%s_%s" % (np, nc))
                    t.on_any("put1_%s_%s" % (np, nc), c, "R", "mk_%s" % np)
                else:
                    car2 = "car2_%s_%s" % (np, nc)
                    t.add(car, DELIM, DELIM, "R", car2)
                    for w in W:
                        t.add(car2, w, w, "R", car2)
                    t.add(car2, DELIM, c, "R", "mk_%s" % np)
            # left terminator reached: erase it, walk home, write pending there
            fin = "fin_%s_%s" % (tag, np)
            t.add(rd, DELIM, "_", "R", fin)
            for w in W:
                t.add(fin, w, w, "R", fin)
            if tag == "w":
                t.add(fin, DELIM, p, "S", "done")
            else:
                t.add(fin, DELIM, DELIM, "R", "finv_%s" % np)
                t.on_any("finv_%s" % np, DELIM, "L", "finv2_%s" % np)
                t.add("finv2_%s" % np, DELIM, p, "S", "done")
    return t.build()


def machine_eq() -> Machine:
    """pair_mach(a, b) -> yes tape when a = b, else the no tape.

    Column compare with a $ anchor at cell 0 and $ breadcrumbs over the
    consumed frontiers; the terminators act as end sentinels, so interior
    blanks in the words are honest data.
    """
    t = TM(SIGMA4, "boot")
    W = WORD_SYMBOLS
    t.halt("done")
    COL = WORD_SYMBOLS + (DELIM,)

    # boot: read cell 0, plant the anchor over it, read cell -1
    for cr in COL:
        nr = sym_name(cr)
        t.add("boot", cr, DELIM, "L", "bl_%s" % nr)
        for cl in COL:
            if cr == cl == DELIM:
                t.add("bl_d", DELIM, "_", "R", "emp_acc")
            elif cr == cl:
                t.add("bl_%s" % nr, cl, DELIM, "R", "c1_home")  # left bread
            elif cl == DELIM:  # b empty, a not
                t.add("bl_%s" % nr, cl, "_", "R", "rjb_ret")
            elif cr == DELIM:  # a empty, b not
                t.add("bl_d", cl, "_", "L", "rjb_left_only")
            else:
                t.add("bl_%s" % nr, cl, "_", "L", "rjb_left")
    t.on_any("emp_acc", "1", "S", "done")  # both words empty: yes tape

    # column 1: no old right bread to clear
    t.add("c1_home", DELIM, DELIM, "R", "c1_read")
    for cr in COL:
        nr = sym_name(cr)
        t.add("c1_read", cr, DELIM, "L", "c1_pass_%s" % nr)
        t.add("c1_pass_%s" % nr, DELIM, DELIM, "L", "lseek_%s" % nr)
        # generic column: clear the bread just left of the new one
        t.add("crd", cr, DELIM, "L", "clr_%s" % nr)
        t.add("clr_%s" % nr, DELIM, "_", "L", "aseek_%s" % nr)
        for w in W:
            t.add("aseek_%s" % nr, w, w, "L", "aseek_%s" % nr)
        t.add("aseek_%s" % nr, DELIM, DELIM, "L", "lseek_%s" % nr)  # anchor
        for w in W:
            t.add("lseek_%s" % nr, w, w, "L", "lseek_%s" % nr)
        t.add("lseek_%s" % nr, DELIM, "_", "L", "lrd_%s" % nr)  # eat old left bread
        for cl in COL:
            if cr == cl == DELIM:
                t.add("lrd_d", DELIM, "_", "R", "acc_ret")  # equal words
            elif cr == cl:
                t.add("lrd_%s" % nr, cl, DELIM, "R", "ret0")  # new left bread
            elif cl == DELIM:  # b ended first; right junk may remain
                t.add("lrd_%s" % nr, cl, "_", "R", "rj_ret_scan")
            elif cr == DELIM:  # a ended first; the bread covers its terminator
                t.add("lrd_d", cl, "_", "L", "rj_left_end")
            else:
                t.add("lrd_%s" % nr, cl, "_", "L", "rj_left_scan")

    # matched column: return over the anchor to the right bread, read on
    for w in W:
        t.add("ret0", w, w, "R", "ret0")
        t.add("ret1", w, w, "R", "ret1")
    t.add("ret0", DELIM, DELIM, "R", "ret1")
    t.add("ret1", DELIM, DELIM, "R", "crd")

    # accept: write the yes cell over the anchor, erase the right bread
    for w in W:
        t.add("acc_ret", w, w, "R", "acc_ret")
    t.add("acc_ret", DELIM, "1", "R", "acc_clr")
    for w in W:
        t.add("acc_clr", w, w, "R", "acc_clr")
    t.add("acc_clr", DELIM, "_", "L", "acc_home")
    t.add("acc_home", "_", "_", "L", "acc_home")
    t.add("acc_home", "1", "1", "S", "done")

    # reject cleanups.  Left sweeps erase the unread left word and its
    # terminator; right cleanups keep the anchor until last so the head can
    # come home to cell 0 of an all-blank tape.
    for name, then in (
        ("rj_left_scan", "rj_ret_scan"),
        ("rj_left_end", "rj_ret_end"),
        ("rjb_left", "rjb_ret"),
        ("rjb_left_only", "rj_anchor_only"),
    ):
        for w in W:
            t.add(name, w, "_", "L", name)
        t.add(name, DELIM, "_", "R", then)
    # column-level, right word still open: anchor, bread, junk, terminator
    t.add("rj_ret_scan", "_", "_", "R", "rj_ret_scan")
    t.add("rj_ret_scan", DELIM, DELIM, "R", "rj_bread_scan")
    t.add("rj_bread_scan", "_", "_", "R", "rj_bread_scan")
    t.add("rj_bread_scan", DELIM, "_", "R", "rj_junk")
    # column-level, right word ended: the bread is its terminator
    t.add("rj_ret_end", "_", "_", "R", "rj_ret_end")
    t.add("rj_ret_end", DELIM, DELIM, "R", "rj_bread_end")
    t.add("rj_bread_end", "_", "_", "R", "rj_bread_end")
    t.add("rj_bread_end", DELIM, "_", "L", "rj_home")
    # boot-level: no bread exists yet; junk starts right after the anchor
    t.add("rjb_ret", "_", "_", "R", "rjb_ret")
    t.add("rjb_ret", DELIM, DELIM, "R", "rj_junk")
    for w in W:
        t.add("rj_junk", w, "_", "R", "rj_junk")
    t.add("rj_junk", DELIM, "_", "L", "rj_home")
    t.add("rj_home", "_", "_", "L", "rj_home")
    t.add("rj_home", DELIM, "_", "S", "done")  # erase the anchor, halt at 0
    # boot-level with a empty: the anchor (over a's terminator) is all there is
    t.add("rj_anchor_only", "_", "_", "R", "rj_anchor_only")
    t.add("rj_anchor_only", DELIM, "_", "S", "done")
    return t.build()


def machine_partial_apply(f: Machine) -> Machine:
    """pair_mach(a, b) -> pair_mach(f(a), b).

    The right side of a pair is exactly the single-component form of a, and
    the left side is parked territory, so any f that maps enc forms to enc
    forms without visiting cells left of the head already is the partial
    application; it is returned relabelled.
    """
    if f.alphabet != SIGMA4:
        raise TapeError("partial application needs a 4-symbol machine")
    return relabel(f, "pa")


def machine_const(t: Tape) -> Machine:
    """Replace any single-component input by enc(t)."""
    word = fold(t.recentred()).symbols
    m = TM(SIGMA4, "s0")
    m.halt("done")
    # write the constant word and terminator, then step back counted to 0
    back = m.move_n("bk", len(word), "L", "done")
    entry = m.write_word("wr", word + (DELIM,), "R", (None, "L", back))
    # plant the home anchor, erase the input word and terminator to the right
    m.add("s0", DELIM, DELIM, "S", entry)  # empty input word
    for w in WORD_SYMBOLS:
        m.add("s0", w, DELIM, "R", "er")
        m.add("er", w, "_", "R", "er")
    m.add("er", DELIM, "_", "L", "home")
    m.add("home", "_", "_", "L", "home")
    m.add("home", DELIM, DELIM, "S", entry)
    return m.build()


def machine_recognize_const(t: Tape, diverge_on_mismatch: bool = False) -> Machine:
    """Accept exactly enc(t): yes tape on match, no tape otherwise.

    With diverge_on_mismatch the reject branch spins forever instead, which
    turns the recogniser into a membership semi-decider.
    """
    word = fold(t.recentred()).symbols
    L = len(word)
    m = TM(SIGMA4, "cmp0")
    m.halt("done")

    if diverge_on_mismatch:
        m.on_any("spin", None, "S", "spin")

        def fail(state: str, sym: str, i: int) -> None:
            m.add(state, sym, sym, "S", "spin")

    else:
        # eL_j: erase the current cell, j more cells wait to the left
        m.add("eL0", "_", "_", "S", "done")
        m.add("eL0", "1", "_", "S", "done")
        m.add("eL0", "0", "_", "S", "done")
        m.add("eL0", DELIM, "_", "S", "done")
        built = {0}

        def chain(j: int) -> str:
            if j not in built:
                prev = chain(j - 1)
                m.on_any("eL%d" % j, "_", "L", prev)
                built.add(j)
            return "eL%d" % j

        junk_built: set[int] = set()

        def fail(state: str, sym: str, i: int) -> None:
            # mismatched or early-terminated at cell i
            home = chain(i - 1) if i > 0 else "done"
            if sym == DELIM:
                # input word ends here; erase it and sweep home
                m.add(state, sym, "_", "L" if i > 0 else "S", home)
                return
            # junk may continue rightward: mark this cell, erase to the
            # input terminator, come back to the mark, then sweep home
            m.add(state, sym, DELIM, "R", "junk%d" % i)
            if i not in junk_built:
                junk_built.add(i)
                for w in WORD_SYMBOLS:
                    m.add("junk%d" % i, w, "_", "R", "junk%d" % i)
                m.add("junk%d" % i, DELIM, "_", "L", "back%d" % i)
                m.add("back%d" % i, "_", "_", "L", "back%d" % i)
                m.add("back%d" % i, DELIM, "_", "L" if i > 0 else "S", home)

    for i in range(L):
        for sym in SIGMA4.symbols:
            if sym == word[i]:
                m.add("cmp%d" % i, sym, sym, "R", "cmp%d" % (i + 1))
            else:
                fail("cmp%d" % i, sym, i)
    # cell L: the terminator proves the exact match
    for sym in SIGMA4.symbols:
        if sym == DELIM:
            if L == 0:
                m.add("cmp0", DELIM, "1", "S", "done")
            else:
                m.add("cmp%d" % L, DELIM, "_", "L", "aL%d" % (L - 1))
        else:
            fail("cmp%d" % L, sym, L)
    # erase the matched word from the right, writing the yes cell at 0
    for j in range(L - 1, 0, -1):
        m.on_any("aL%d" % j, "_", "L", "aL%d" % (j - 1))
    if L > 0:
        m.on_any("aL0", "1", "S", "done")
    return m.build()
