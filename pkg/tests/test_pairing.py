import random

import pytest

from tapebench.machine import Exhausted, Halted, run
from tapebench.pairing import (
    MACHINE_SCHEME,
    META_SCHEME,
    cantor,
    component_of_word,
    dec,
    enc,
    machine_const,
    machine_duplicate,
    machine_eq,
    machine_partial_apply,
    machine_proj1,
    machine_proj2,
    machine_proj2_direct,
    machine_recognize_const,
    machine_swap,
    pair_mach,
    pair_meta,
    uncantor,
    unpair_mach,
    unpair_meta,
)
from tapebench.tape import SIGMA2, SIGMA4, Tape, parse_tape, tape_of_number
from tapebench.zoo import unary_successor, left_mover, spinner, identity_machine

FUEL = 200_000


def lit4(s):
    return parse_tape(s, SIGMA4)


def blank4():
    return Tape.blank_tape(SIGMA4)


def bare_unary(n):
    # the component whose enc form is the contiguous literal ^1...10$
    return component_of_word("1" * (n + 1) + "0")


def random_component(rng, max_cells=4, span=4):
    """Random $-free tape over the 4-symbol alphabet, head at 0."""
    cells = {}
    for _ in range(rng.randrange(max_cells + 1)):
        cells[rng.randrange(-span, span + 1)] = rng.choice(("0", "1", "_"))
    return Tape.from_cells(SIGMA4, cells, head=0)


# ---------------------------------------------------------------------------
# meta scheme
# ---------------------------------------------------------------------------


def test_cantor_zero():
    assert cantor(0, 0) == 0
    assert pair_meta(blank4(), blank4()) == blank4()


def test_cantor_surjective_prefix():
    seen = {}
    for n in range(1000):
        x, y = uncantor(n)
        assert cantor(x, y) == n
        assert (x, y) not in seen
        seen[(x, y)] = n


def test_pair_meta_round_trip():
    rng = random.Random(5)
    for _ in range(1000):
        a = tape_of_number(rng.randrange(500), SIGMA4)
        b = tape_of_number(rng.randrange(500), SIGMA4)
        assert unpair_meta(pair_meta(a, b)) == (a, b)


# ---------------------------------------------------------------------------
# machine-level scheme, meta functions
# ---------------------------------------------------------------------------


def test_enc_dec_round_trip():
    rng = random.Random(6)
    for _ in range(500):
        t = random_component(rng)
        e = enc(t)
        assert e.head == 0
        assert dec(e) == t
    assert enc(blank4()) == lit4("^$")


def test_dec_rejects_malformed():
    assert dec(lit4("^111")) is None  # no terminator
    assert dec(lit4("^1_$")) is None  # trailing blank in the word
    assert dec(lit4("1^1$")) is None  # content left of the head
    assert dec(lit4("^1$1")) is None  # content past the terminator


def test_pair_mach_blank_pair():
    assert pair_mach(blank4(), blank4()) == lit4("$^$")


def test_pair_mach_round_trip_and_injective():
    rng = random.Random(7)
    seen = {}
    for _ in range(10_000):
        a = random_component(rng)
        b = random_component(rng)
        p = pair_mach(a, b)
        assert unpair_mach(p) == (a, b)
        if p in seen:
            assert seen[p] == (a, b)
        seen[p] = (a, b)


def test_pair_mach_supports_nesting():
    a = bare_unary(2)
    inner = pair_mach(bare_unary(1), bare_unary(3))
    outer = pair_mach(a, inner)
    got = unpair_mach(outer)
    assert got == (a, inner)
    assert unpair_mach(got[1]) == (bare_unary(1), bare_unary(3))


def test_unpair_rejects_non_image():
    rng = random.Random(8)
    assert unpair_mach(lit4("^111")) is None
    rejected = 0
    for k in range(1000):
        t = tape_of_number(k, SIGMA4)
        r = unpair_mach(t)
        if r is None:
            rejected += 1
        else:
            assert pair_mach(*r) == t
    assert rejected > 0


def test_schemes_exported():
    assert META_SCHEME.kind == "meta-bijective"
    assert MACHINE_SCHEME.kind == "machine-level"
    a, b = bare_unary(1), bare_unary(2)
    assert MACHINE_SCHEME.unpair(MACHINE_SCHEME.pair(a, b)) == (a, b)


# ---------------------------------------------------------------------------
# combinator machines against the meta oracle
# ---------------------------------------------------------------------------


def run_halt(m, t, fuel=FUEL):
    res = run(m, t, fuel)
    assert isinstance(res, Halted), res
    return res


def sample_components(seed, count):
    rng = random.Random(seed)
    out = [blank4(), bare_unary(0), bare_unary(3)]
    while len(out) < count:
        out.append(random_component(rng))
    return out


def test_duplicate_matches_meta():
    dup = machine_duplicate()
    for t in sample_components(10, 500):
        res = run_halt(dup, enc(t))
        assert res.tape == pair_mach(t, t), (t, res.tape)


def test_duplicate_steps_growth():
    dup = machine_duplicate()
    steps = {}
    for n in (5, 10, 20, 40):
        steps[n] = run_halt(dup, enc(bare_unary(n))).steps
    for n in (5, 10, 20):
        # quadratic copying: doubling the word at most quadruples the work
        assert steps[2 * n] <= 8 * steps[n]
        assert steps[2 * n] >= steps[n]


def test_swap_matches_meta():
    swap = machine_swap()
    for i, a in enumerate(sample_components(11, 30)):
        for b in sample_components(12 + i, 18):
            res = run_halt(swap, pair_mach(a, b))
            assert res.tape == pair_mach(b, a), (a, b, res.tape)


def test_proj1_matches_meta():
    p1 = machine_proj1()
    for i, a in enumerate(sample_components(13, 30)):
        for b in sample_components(14 + i, 18):
            res = run_halt(p1, pair_mach(a, b))
            assert res.tape == enc(a), (a, b, res.tape)


def test_proj2_compose_and_direct_agree():
    p2 = machine_proj2()
    p2d = machine_proj2_direct()
    for i, a in enumerate(sample_components(15, 25)):
        for b in sample_components(16 + i, 12):
            expected = enc(b)
            assert run_halt(p2, pair_mach(a, b)).tape == expected
            assert run_halt(p2d, pair_mach(a, b)).tape == expected


def test_eq_matches_meta():
    eq = machine_eq()
    yes, no = lit4("^1"), blank4()
    for t in sample_components(17, 500):
        assert run_halt(eq, pair_mach(t, t)).tape == yes
    rng = random.Random(18)
    unequal = 0
    while unequal < 300:
        a, b = random_component(rng), random_component(rng)
        if a == b:
            continue
        unequal += 1
        assert run_halt(eq, pair_mach(a, b)).tape == no, (a, b)
    assert run_halt(eq, pair_mach(bare_unary(3), bare_unary(4))).tape == no
    assert run_halt(eq, pair_mach(blank4(), bare_unary(0))).tape == no


def test_partial_apply_identity_and_successor():
    ident = machine_partial_apply(identity_machine(SIGMA4))
    succ = machine_partial_apply(unary_successor())
    rng = random.Random(19)
    for _ in range(200):
        a, b = random_component(rng), random_component(rng)
        assert run_halt(ident, pair_mach(a, b)).tape == pair_mach(a, b)
    for n in range(31):
        for m in (0, 7, 30):
            res = run_halt(succ, pair_mach(bare_unary(n), bare_unary(m)))
            assert res.tape == pair_mach(bare_unary(n + 1), bare_unary(m))


def test_partial_apply_divergent():
    never = machine_partial_apply(spinner(SIGMA4))
    for n in (0, 2, 5):
        res = run(never, pair_mach(bare_unary(n), bare_unary(n)), 500)
        assert isinstance(res, Exhausted)


def test_const_matches_meta():
    zero = machine_const(bare_unary(0))
    assert run_halt(zero, enc(bare_unary(7))).tape == enc(bare_unary(0))
    rng = random.Random(20)
    for _ in range(60):
        target = random_component(rng)
        m = machine_const(target)
        for src in (blank4(), bare_unary(2), random_component(rng)):
            assert run_halt(m, enc(src)).tape == enc(target)


def test_recognize_const_matches_meta():
    rng = random.Random(21)
    yes, no = lit4("^1"), blank4()
    for _ in range(60):
        target = random_component(rng)
        m = machine_recognize_const(target)
        assert run_halt(m, enc(target)).tape == yes
        other = random_component(rng)
        if other != target:
            assert run_halt(m, enc(other)).tape == no
    m = machine_recognize_const(bare_unary(1))
    assert run_halt(m, enc(bare_unary(2))).tape == no
    assert run_halt(m, enc(bare_unary(1))).tape == yes


def test_recognize_const_diverge_variant():
    m = machine_recognize_const(bare_unary(1), diverge_on_mismatch=True)
    assert run_halt(m, enc(bare_unary(1))).tape == lit4("^1")
    assert isinstance(run(m, enc(bare_unary(2)), 2000), Exhausted)


def test_combinators_end_at_origin():
    # all builders satisfy the origin convention on their sampled domain
    dup, p1, swap, eq = machine_duplicate(), machine_proj1(), machine_swap(), machine_eq()
    for t in sample_components(22, 40):
        assert run_halt(dup, enc(t)).tape.head == 0
        for b in sample_components(23, 5):
            assert run_halt(p1, pair_mach(t, b)).tape.head == 0
            assert run_halt(swap, pair_mach(t, b)).tape.head == 0
            assert run_halt(eq, pair_mach(t, b)).tape.head == 0
