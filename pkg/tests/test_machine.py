import random

import pytest

from tapebench.machine import (
    REJECT_STATE,
    AlphabetMismatch,
    Configuration,
    Conventions,
    Exhausted,
    Halted,
    Machine,
    MachineError,
    canonicalize,
    check_origin_convention,
    compose,
    decode_machine,
    encode_machine,
    fallback_machine,
    halting_table,
    k_approx,
    parse_machine_file,
    render_machine_file,
    run,
    simulate_indexed,
    step,
)
from tapebench.tape import SIGMA2, SIGMA4, Tape, parse_tape, tape_of_number
from tapebench.zoo import identity_machine, left_mover, unary_successor


def lit(s, alphabet=SIGMA2):
    return parse_tape(s, alphabet)


def test_step_single_rule():
    m = Machine.build(SIGMA2, "s", ["h"], [("s", "1", "0", "R", "h")])
    c = step(m, Configuration(lit("^1"), "s"))
    assert c.state == "h"
    assert c.steps == 1
    assert c.tape.head == 1
    assert c.tape.cells == ()


def test_step_missing_quintuple_is_implicit_halt():
    m = Machine.build(SIGMA2, "s", ["h"], [("s", "1", "0", "R", "h")])
    c = step(m, Configuration(lit("^"), "s"))
    assert c.state == REJECT_STATE
    assert c.tape == lit("^")


def test_step_three_right_moves():
    m = Machine.build(SIGMA2, "s", ["h"], [("s", "1", "1", "R", "s")])
    c = Configuration(lit("^111"), "s")
    for _ in range(3):
        c = step(m, c)
    assert c.tape.head == 3
    assert c.steps == 3


def test_run_identity_halts_immediately():
    m = identity_machine(SIGMA2)
    for text in ("^", "^101", "11^1"):
        res = run(m, lit(text), 10)
        assert isinstance(res, Halted)
        assert res.steps == 0
        assert res.tape == lit(text)


def test_run_unary_successor():
    m = unary_successor()
    res = run(m, lit("^1110$", SIGMA4), 1000)
    assert isinstance(res, Halted)
    assert res.tape == lit("^11110$", SIGMA4)
    assert res.steps > 0
    assert res.tape.head == 0


def test_run_exhaustion():
    res = run(left_mover(), lit("^"), 100)
    assert res == Exhausted(100, 100)


def test_run_alphabet_mismatch():
    with pytest.raises(AlphabetMismatch):
        run(identity_machine(SIGMA2), lit("^1$", SIGMA4), 5)


def test_fuel_monotonic_replay():
    m = unary_successor()
    base = run(m, lit("^110$", SIGMA4), 10_000)
    assert isinstance(base, Halted)
    for extra in (0, 1, 100):
        again = run(m, lit("^110$", SIGMA4), base.steps + extra)
        assert isinstance(again, Halted)
        assert again.tape == base.tape and again.steps == base.steps


def test_compose_identity_neutral():
    rng = random.Random(3)
    succ = unary_successor()
    left = compose(identity_machine(SIGMA4), succ)
    right = compose(succ, identity_machine(SIGMA4))
    for _ in range(100):
        n = rng.randrange(20)
        t = lit("^" + "1" * (n + 1) + "0$", SIGMA4)
        expected = run(succ, t, 10_000)
        for m in (left, right):
            res = run(m, t, 10_000)
            assert isinstance(res, Halted)
            assert res.tape == expected.tape


def test_compose_successor_twice():
    succ = unary_successor()
    two = compose(succ, succ)
    for n in range(51):
        t = lit("^" + "1" * (n + 1) + "0$", SIGMA4)
        direct = run(succ, run(succ, t, 10**6).tape, 10**6)
        res = run(two, t, 10**6)
        assert isinstance(res, Halted)
        assert res.tape == direct.tape == lit("^" + "1" * (n + 3) + "0$", SIGMA4)


def test_compose_covers_implicit_rejects():
    # f rejects on blank input via a missing quintuple; composite must still run g
    f = Machine.build(SIGMA2, "s", ["h"], [("s", "1", "1", "R", "h")])
    g = Machine.build(SIGMA2, "s", ["h"], [("s", "0", "1", "S", "h"), ("s", "1", "1", "S", "h")])
    res_f = run(f, lit("^"), 10)
    assert isinstance(res_f, Halted) and res_f.state == REJECT_STATE
    res = run(compose(f, g), lit("^"), 10)
    assert isinstance(res, Halted)
    assert res.tape == lit("^1")


def test_check_origin_convention():
    samples = [lit("^"), lit("^1"), lit("^11")]
    assert check_origin_convention(identity_machine(SIGMA2), samples, 10).status == "verified"
    mover = Machine.build(SIGMA2, "s", ["h"], [("s", "0", "0", "R", "h"), ("s", "1", "1", "R", "h")])
    assert check_origin_convention(mover, samples, 10).status == "refuted"
    assert check_origin_convention(left_mover(), samples, 10).status == "inconclusive"


def random_machine(rng, alphabet=SIGMA2, max_states=5):
    n = rng.randrange(1, max_states + 1)
    states = ["s%d" % i for i in range(n)]
    halts = [s for s in states if rng.random() < 0.3] or [states[-1]]
    rules = []
    for s in states:
        if s in halts:
            continue
        for sym in alphabet.symbols:
            if rng.random() < 0.7:
                rules.append(
                    (s, sym, rng.choice(alphabet.symbols), rng.choice("LRS"), rng.choice(states))
                )
    return Machine.build(alphabet, states[0], halts, rules, extra_states=states)


def test_decode_encode_round_trip_random():
    rng = random.Random(11)
    for _ in range(200):
        m = random_machine(rng)
        c = canonicalize(m)
        assert decode_machine(encode_machine(m), m.alphabet) == c
        # canonicalize is idempotent
        assert canonicalize(c) == c


def test_decode_total_and_fallback():
    assert decode_machine(0) == fallback_machine(SIGMA2)
    for n in range(500):
        m = decode_machine(n)
        assert isinstance(m, Machine)


def test_encode_injective_on_canonical():
    rng = random.Random(13)
    seen = {}
    for _ in range(10_000):
        m = canonicalize(random_machine(rng))
        n = encode_machine(m)
        if n in seen:
            assert seen[n] == m
        seen[n] = m
    # distinct canonical machines got distinct numbers
    machines = {}
    for n, m in seen.items():
        key = render_machine_file(m)
        assert machines.setdefault(key, n) == n


def test_simulate_indexed_matches_direct_run():
    succ = unary_successor()
    e = encode_machine(succ)
    t = lit("^111110$", SIGMA4)
    res = simulate_indexed(e, t, 10_000)
    direct = run(succ, t, 10_000)
    assert isinstance(res, Halted)
    assert res.tape == direct.tape == lit("^1111110$", SIGMA4)


def test_simulate_indexed_zero_halts_immediately():
    t = lit("^101")
    res = simulate_indexed(0, t, 10)
    assert isinstance(res, Halted)
    assert res.steps == 0
    assert res.tape == t


def test_halting_table_identity_and_empty():
    e_id = encode_machine(identity_machine(SIGMA2))
    assert halting_table(e_id, 10, 50) == set(range(50))
    e_loop = encode_machine(left_mover())
    assert halting_table(e_loop, 100, 30) == set()


def test_halting_table_fuel_monotone():
    rng = random.Random(17)
    for _ in range(50):
        e = rng.randrange(100_000)
        small = halting_table(e, 100, 40)
        big = halting_table(e, 1000, 40)
        assert small <= big


def test_k_approx_monotone_and_certified():
    small = k_approx(50, 300)
    big = k_approx(500, 300)
    assert small <= big
    assert 0 in big  # the fallback machine halts on the blank tape
    for k in sorted(big)[:50]:
        res = simulate_indexed(k, tape_of_number(k, SIGMA2), 500)
        assert isinstance(res, Halted) and res.steps <= 500


def test_conventions():
    conv = Conventions.standard(SIGMA2)
    assert conv.yes_tape == lit("^1")
    assert conv.no_tape == lit("^")
    assert conv.yes_tape != conv.no_tape


def test_machine_file_round_trip():
    for m in (identity_machine(SIGMA2), unary_successor(), left_mover()):
        again = parse_machine_file(render_machine_file(m))
        assert again == m


def test_machine_file_parse_errors():
    with pytest.raises(MachineError):
        parse_machine_file("start: s\nhalt: h\n")  # missing alphabet
    with pytest.raises(MachineError):
        parse_machine_file("alphabet: 01\nblank: 0\nstart: s\nhalt: h\ns 1 -> 0 R\n")


def test_machine_validation():
    with pytest.raises(MachineError):
        Machine.build(SIGMA2, "s", ["s"], [("s", "0", "0", "S", "s")])  # rule on halt state
    with pytest.raises(MachineError):
        Machine.build(SIGMA2, "s", ["h"], [("s", "2", "0", "S", "h")])  # bad symbol
