import random

import pytest

from tapebench.tape import (
    SIGMA2,
    SIGMA4,
    FoldedWord,
    Tape,
    TapeError,
    fold,
    parse_tape,
    render_tape,
    tape_number,
    tape_of_number,
    unfold,
)


def test_parse_simple():
    t = parse_tape("^10", SIGMA2)
    assert t.as_dict() == {0: "1"}
    assert t.head == 0


def test_parse_blank():
    t = parse_tape("^", SIGMA2)
    assert t.cells == ()


def test_parse_left_side():
    t = parse_tape("11^10", SIGMA2)
    assert t.as_dict() == {-2: "1", -1: "1", 0: "1"}
    assert t.head == 0


def test_parse_errors():
    with pytest.raises(TapeError):
        parse_tape("10", SIGMA2)
    with pytest.raises(TapeError):
        parse_tape("^1^0", SIGMA2)
    with pytest.raises(TapeError):
        parse_tape("^2", SIGMA2)


def test_render_blank():
    assert render_tape(Tape.blank_tape(SIGMA2)) == "^"


def test_render_round_trip():
    assert render_tape(parse_tape("^10", SIGMA2)) == "^1"
    t = Tape.from_cells(SIGMA2, {-1: "1"}, head=0)
    assert render_tape(t) == "1^"


def test_render_parse_canonical_random():
    rng = random.Random(7)
    for _ in range(300):
        cells = {}
        for _ in range(rng.randrange(6)):
            cells[rng.randrange(-6, 7)] = rng.choice(("0", "1"))
        t = Tape.from_cells(SIGMA2, cells, head=0)
        assert parse_tape(render_tape(t), SIGMA2) == t


def test_blank_normalised_to_absence():
    t = Tape.from_cells(SIGMA2, {0: "0", 1: "1"})
    assert t.as_dict() == {1: "1"}
    assert t == parse_tape("^01", SIGMA2)


def test_fold_examples():
    assert fold(Tape.blank_tape(SIGMA2)).symbols == ()
    assert fold(parse_tape("^1", SIGMA2)).symbols == ("1",)
    # hand-evaluated interleaving 0, 1, -1 for '1' at -1 and +1
    t = Tape.from_cells(SIGMA2, {-1: "1", 1: "1"})
    assert fold(t).symbols == ("0", "1", "1")


def test_fold_unfold_round_trip_random():
    rng = random.Random(20)
    for _ in range(1000):
        alphabet = rng.choice((SIGMA2, SIGMA4))
        cells = {}
        for _ in range(rng.randrange(8)):
            sym = rng.choice(alphabet.symbols)
            cells[rng.randrange(-8, 9)] = sym
        head = rng.randrange(-3, 4)
        t = Tape.from_cells(alphabet, cells, head=head)
        assert unfold(fold(t), head=head) == t


def test_folded_word_rejects_trailing_blank():
    with pytest.raises(TapeError):
        FoldedWord(SIGMA2, ("1", "0"))


def test_tape_number_first_elements():
    assert tape_number(Tape.blank_tape(SIGMA2)) == 0
    t1 = tape_of_number(1, SIGMA2)
    assert t1 == parse_tape("^1", SIGMA2)


def test_tape_number_round_trip_exhaustive():
    for alphabet in (SIGMA2, SIGMA4):
        for k in range(10_000):
            assert tape_number(tape_of_number(k, alphabet)) == k


def test_tape_number_injective_prefix():
    seen = set()
    for k in range(2000):
        t = tape_of_number(k, SIGMA2)
        assert t not in seen
        seen.add(t)


def test_tape_number_ignores_head_offset():
    t = parse_tape("^11", SIGMA2)
    assert tape_number(t.shifted(5)) == tape_number(t)
