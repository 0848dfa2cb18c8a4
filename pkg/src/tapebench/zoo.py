"""Bundled machines: successors, comparators, and oracle-assisted converters.

These are real quintuple machines used by the tests, the CLI, and the
benchmark suites.  Each builder is deterministic, and the rendered machine
files shipped as package data must stay quintuple-identical to the builders
(guarded by a test).
"""

from __future__ import annotations

from importlib import resources

from .builders import TM
from .machine import Machine, compose, parse_machine_file
from .tape import Alphabet, SIGMA2, SIGMA4


def identity_machine(alphabet: Alphabet = SIGMA2) -> Machine:
    """Start state is accepting, so every input is returned unchanged."""
    return Machine.build(alphabet, "h", ["h"], [])


def left_mover() -> Machine:
    """One working state, no reachable halt: moves left forever."""
    return Machine.build(
        SIGMA2, "s", [], [("s", "0", "0", "L", "s"), ("s", "1", "1", "L", "s")]
    )


def spinner(alphabet: Alphabet = SIGMA4) -> Machine:
    """Stays put forever; used as a certified diverging component."""
    rules = [("s", sym, sym, "S", "s") for sym in alphabet.symbols]
    return Machine.build(alphabet, "s", [], rules)


def unary_successor() -> Machine:
    """1^(n+1) 0 $  ->  1^(n+2) 0 $   (head returns to cell 0).

    A $ parked over cell 0 bounds the return walk, so the machine never
    visits cells left of the head and composes with partial application.
    """
    t = TM(SIGMA4, "s0")
    t.add("s0", "1", "$", "R", "scan")
    t.add("scan", "1", "1", "R", "scan")
    t.add("scan", "0", "1", "R", "put0")
    t.add("put0", "$", "0", "R", "put_term")
    t.add("put_term", "_", "$", "L", "back")
    t.add("back", "0", "0", "L", "back")
    t.add("back", "1", "1", "L", "back")
    t.add("back", "$", "1", "S", "done")  # restore cell 0
    t.halt("done")
    return t.build()


def binary_marked_successor() -> Machine:
    """LSB-first binary word terminated by $: adds one.  Stays right of 0."""
    t = TM(SIGMA4, "s0")
    t.add("s0", "0", "1", "S", "done")  # no carry at all
    t.add("s0", "1", "$", "R", "carry")  # cell 0 becomes 0 at the end
    t.add("carry", "1", "0", "R", "carry")
    t.add("carry", "0", "1", "L", "back")
    t.add("carry", "$", "1", "R", "put_term")
    t.add("put_term", "_", "$", "L", "back")
    t.add("back", "0", "0", "L", "back")
    t.add("back", "1", "1", "L", "back")
    t.add("back", "$", "0", "S", "done")
    t.halt("done")
    return t.build()


def evens_step() -> Machine:
    """Unary n -> n + 2; the step machine of the even-numbers enumerator."""
    s = unary_successor()
    return compose(s, s)


def anchored_comparator() -> Machine:
    """Compare the cell pairs (i, -1-i) outward from the head over {0,1} tapes.

    A permanent anchor 1 at cell 0 and one breadcrumb 1 per side mark the
    reading frontiers, so the machine can always navigate home.  It accepts
    at the first column that reads 0 on both sides, erases its markers and
    any contiguous leftovers, and halts at cell 0 with exactly the yes tape
    (respectively the all-blank no tape on a mismatch).

    On the two-sided unary pair representation this decides equality.  On
    the two-sided binary pair representation the both-0 stop rule is the
    classic boundary mistake, which is what the refuter exploits.
    """
    t = TM(SIGMA2, "boot")

    # column 0: compare cells 0 and -1 in place
    for b0 in "01":
        t.add("boot", b0, b0, "L", "bootl_%s" % b0)
    t.add("bootl_0", "0", "0", "R", "acc_write")  # blank pair: equal
    t.add("bootl_0", "1", "0", "L", "rej_sweep_left")  # erase and reject
    t.add("bootl_1", "1", "1", "R", "boot_anchor")  # matched; cell -1 is the bread
    t.add("bootl_1", "0", "0", "R", "rej_right_zeros")
    t.on_any("acc_write", "1", "S", "acc_done")
    t.on_any("boot_anchor", "1", "R", "col1_read")

    # column 1 is special: there is no old right bread to clear yet
    for br in "01":
        t.add("col1_read", br, "1", "L", "col1_pass_%s" % br)
        t.add("col1_pass_%s" % br, "1", "1", "L", "seek_lbread_%s" % br)
        # generic column i >= 2: plant the new right bread, erase the old
        # one just left of it, then walk to the anchor
        t.add("col_read", br, "1", "L", "clear_r_%s" % br)
        t.add("clear_r_%s" % br, "1", "0", "L", "seek_anchor_%s" % br)
        t.add("seek_anchor_%s" % br, "0", "0", "L", "seek_anchor_%s" % br)
        t.add("seek_anchor_%s" % br, "1", "1", "L", "seek_lbread_%s" % br)
        # past the anchor: find and consume the old left bread
        t.add("seek_lbread_%s" % br, "0", "0", "L", "seek_lbread_%s" % br)
        t.add("seek_lbread_%s" % br, "1", "0", "L", "read_l_%s" % br)
    # the left cell of the column: compare with the remembered right bit
    t.add("read_l_1", "1", "1", "R", "ret_zeros")  # match; new left bread
    t.add("read_l_1", "0", "0", "R", "rej_right_zeros")
    t.add("read_l_0", "1", "0", "L", "rej_sweep_left")  # erase and reject
    t.add("read_l_0", "0", "0", "R", "acc_zeros")  # both blank: accept

    # matched column: return over zeros, past the anchor, to the right bread
    t.add("ret_zeros", "0", "0", "R", "ret_zeros")
    t.add("ret_zeros", "1", "1", "R", "ret_past")
    t.add("ret_past", "0", "0", "R", "ret_past")
    t.add("ret_past", "1", "1", "R", "col_read")

    # accept: keep the anchor, erase the right bread, halt on the anchor
    t.add("acc_zeros", "0", "0", "R", "acc_zeros")
    t.add("acc_zeros", "1", "1", "R", "acc_past")
    t.add("acc_past", "0", "0", "R", "acc_past")
    t.add("acc_past", "1", "0", "L", "acc_home")
    t.add("acc_home", "0", "0", "L", "acc_home")
    t.add("acc_home", "1", "1", "S", "acc_done")
    t.halt("acc_done")

    # reject: erase the left remainder, the right bread plus the contiguous
    # right remainder, and finally the anchor, halting at cell 0
    t.add("rej_sweep_left", "1", "0", "L", "rej_sweep_left")
    t.add("rej_sweep_left", "0", "0", "R", "rej_right_zeros")
    t.add("rej_right_zeros", "0", "0", "R", "rej_right_zeros")
    t.add("rej_right_zeros", "1", "1", "R", "rej_past_anchor")
    t.add("rej_past_anchor", "0", "0", "R", "rej_past_anchor")
    t.add("rej_past_anchor", "1", "0", "R", "rej_sweep_right")
    t.add("rej_sweep_right", "1", "0", "R", "rej_sweep_right")
    t.add("rej_sweep_right", "0", "0", "L", "rej_home")
    t.add("rej_home", "0", "0", "L", "rej_home")
    t.add("rej_home", "1", "0", "S", "rej_done")
    t.halt("rej_done")
    return t.build()


#: unary words of the two flag values
_FLAG_WORDS = {0: "10", 1: "110"}


def _erase_right_then_branch(t: TM) -> None:
    """Shared prologue: erase the right payload, then stand on cell -2.

    The left flag block starts with 1 at cell -1 for both flag values and
    differs at cell -2, so after this prologue a single read decides the bit.
    """
    t.add("s0", "1", "_", "R", "er")
    for w in ("0", "1"):
        t.add("er", w, "_", "R", "er")
    t.add("er", "$", "_", "L", "seek")
    t.add("seek", "_", "_", "L", "seek")
    t.add("seek", "1", "1", "L", "branch")


def _write_right_word(t: TM, tag: str, word: str, then: str) -> str:
    """Counted: write word+$ rightward from cell 0, return to 0, enter then."""
    ret = t.move_n("%s_ret" % tag, len(word), "L", then)
    return t.write_word("%s_wr" % tag, tuple(word) + ("$",), "R", (None, "L", ret))


def _write_left_block(t: TM, tag: str, word: str, then: str) -> str:
    """Counted: write word at -1 outward plus its $, return to 0, enter then.

    Entry state expects the head at cell -1.
    """
    ret = t.move_n("%s_ret" % tag, len(word) + 1, "R", then)
    return t.write_word("%s_wr" % tag, tuple(word) + ("$",), "L", (None, "R", ret))


def flag_reader() -> Machine:
    """Halting-augmented input -> the unary form of its flag bit.

    Everything after the branch runs at fixed offsets, so the machine needs
    no markers: erase the payload, erase the flag block, write the answer.
    """
    t = TM(SIGMA4, "s0")
    t.halt("done")
    _erase_right_then_branch(t)
    # flag 0: block is 1 at -1, 0 at -2, $ at -3
    t.add("branch", "0", "_", "L", "f0_t")
    t.add("f0_t", "$", "_", "R", "f0_b")
    t.add("f0_b", "_", "_", "R", "f0_c")
    t.add("f0_c", "1", "_", "R", _write_right_word(t, "f0", _FLAG_WORDS[0], "done"))
    # flag 1: block is 1 at -1, 1 at -2, 0 at -3, $ at -4
    t.add("branch", "1", "_", "L", "f1_a")
    t.add("f1_a", "0", "_", "L", "f1_t")
    t.add("f1_t", "$", "_", "R", "f1_b")
    t.add("f1_b", "_", "_", "R", "f1_c")
    t.add("f1_c", "_", "_", "R", "f1_d")
    t.add("f1_d", "1", "_", "R", _write_right_word(t, "f1", _FLAG_WORDS[1], "done"))
    return t.build()


def flag_to_augmented(flag_of_zero: int, flag_of_one: int) -> Machine:
    """Halting-augmented n -> halting-augmented flag(n).

    Both possible outputs are constants, so the machine only has to read the
    flag bit and then write one of two fixed pair tapes.  The flags of the
    two output values must be supplied from certificates at build time.
    """
    t = TM(SIGMA4, "s0")
    t.halt("done")
    _erase_right_then_branch(t)
    for bit, out_flag in ((0, flag_of_zero), (1, flag_of_one)):
        tag = "g%d" % bit
        left_entry = _write_left_block(t, tag + "l", _FLAG_WORDS[out_flag], "done")
        goleft = "%s_goleft" % tag
        t.on_any(goleft, None, "L", left_entry)
        right_entry = _write_right_word(t, tag + "r", "1" * (bit + 1) + "0", goleft)
        # erase the input flag block at fixed offsets, then start writing
        if bit == 0:
            t.add("branch", "0", "_", "L", "%s_t" % tag)
            t.add("%s_t" % tag, "$", "_", "R", "%s_b" % tag)
            t.add("%s_b" % tag, "_", "_", "R", "%s_c" % tag)
            t.add("%s_c" % tag, "1", "_", "R", right_entry)
        else:
            t.add("branch", "1", "_", "L", "%s_a" % tag)
            t.add("%s_a" % tag, "0", "_", "L", "%s_t" % tag)
            t.add("%s_t" % tag, "$", "_", "R", "%s_b" % tag)
            t.add("%s_b" % tag, "_", "_", "R", "%s_c" % tag)
            t.add("%s_c" % tag, "_", "_", "R", "%s_d" % tag)
            t.add("%s_d" % tag, "1", "_", "R", right_entry)
    return t.build()


def oracle_flag_annotator() -> Machine:
    """Unary n -> halting-augmented n, asking the oracle for the flag.

    The machine submits its whole input tape as the query, then writes the
    flag block on the (blank) left side; the payload never moves.
    """
    t = TM(SIGMA4, "q")
    t.halt("done")
    t.ports("q", "yes", "no")
    for bit, state in ((1, "yes"), (0, "no")):
        entry = _write_left_block(t, "a%d" % bit, _FLAG_WORDS[bit], "done")
        t.on_any(state, None, "L", entry)
    return t.build()


_BUILTIN_BUILDERS = {
    "identity2": lambda: identity_machine(SIGMA2),
    "identity4": lambda: identity_machine(SIGMA4),
    "left-mover": left_mover,
    "successor-unary": unary_successor,
    "successor-binary-marked": binary_marked_successor,
    "evens-step": evens_step,
    "unary-pair-eq": anchored_comparator,
    "naive-binary-eq": anchored_comparator,
    "flag-reader": flag_reader,
}


def builtin_names() -> tuple[str, ...]:
    return tuple(sorted(_BUILTIN_BUILDERS))


def builtin_machine(name: str) -> Machine:
    try:
        return _BUILTIN_BUILDERS[name]()
    except KeyError:
        raise KeyError("unknown builtin machine %r (have: %s)" % (name, ", ".join(builtin_names())))


def builtin_machine_text(name: str) -> str:
    """The shipped machine file for a builtin."""
    return resources.files("tapebench").joinpath("machines/%s.tm" % name).read_text()


def load_machine(ref: str) -> Machine:
    """Resolve '@name' to a bundled machine file, anything else to a path."""
    if ref.startswith("@"):
        return parse_machine_file(builtin_machine_text(ref[1:]))
    with open(ref, encoding="utf-8") as fh:
        return parse_machine_file(fh.read())
