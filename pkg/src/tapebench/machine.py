"""Turing machine definition, fuel-bounded semantics, composition and numbering.

Machines are partial quintuple tables.  A missing quintuple is an implicit
halt in the distinguished reject state, so transition tables stay short.
Every run is bounded by an explicit fuel; ``Exhausted`` is the honest
bounded stand-in for divergence.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .tape import Alphabet, SIGMA2, Tape, TapeError

MOVES = ("L", "R", "S")
_MOVE_DELTA = {"L": -1, "R": 1, "S": 0}

#: implicit halt state for missing quintuples; deliberately not a bare
#: identifier so it can never collide with a declared state
REJECT_STATE = "!reject"

_STATE_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_.\-]*$")

#: decode() falls back beyond this many states so adversarial numbers stay cheap
MAX_ENCODED_STATES = 4096


class MachineError(ValueError):
    """Invalid machine structure or machine file."""


class AlphabetMismatch(MachineError):
    """Input tape alphabet differs from the machine alphabet."""


class MissingOracle(MachineError):
    """A machine reached its query state but no oracle was supplied."""


@dataclass(frozen=True)
class Rule:
    state: str
    read: str
    write: str
    move: str
    next: str


@dataclass(frozen=True)
class OraclePorts:
    query: str
    yes: str
    no: str


@dataclass(frozen=True)
class Machine:
    alphabet: Alphabet
    states: tuple[str, ...]
    start: str
    halt_states: tuple[str, ...]
    rules: tuple[Rule, ...]
    oracle_ports: OraclePorts | None = None
    _table: dict = field(init=False, repr=False, compare=False, default=None)

    def __post_init__(self) -> None:
        names = set(self.states)
        if len(names) != len(self.states):
            raise MachineError("duplicate state names")
        for s in self.states:
            if not _STATE_RE.match(s):
                raise MachineError("state %r is not a bare identifier" % (s,))
        if self.start not in names:
            raise MachineError("start state %r undeclared" % (self.start,))
        halts = set(self.halt_states)
        if not halts <= names:
            raise MachineError("halt states must be declared states")
        if self.oracle_ports is not None:
            p = self.oracle_ports
            if not {p.query, p.yes, p.no} <= names:
                raise MachineError("oracle port states must be declared states")
        table = {}
        query = self.oracle_ports.query if self.oracle_ports else None
        for r in self.rules:
            if r.state not in names or r.next not in names:
                raise MachineError("rule references undeclared state: %r" % (r,))
            if r.state in halts:
                raise MachineError("halt state %r has a quintuple" % (r.state,))
            if r.state == query:
                raise MachineError("query state %r has an ordinary quintuple" % (r.state,))
            if r.read not in self.alphabet.symbols or r.write not in self.alphabet.symbols:
                raise MachineError("rule symbol outside alphabet: %r" % (r,))
            if r.move not in MOVES:
                raise MachineError("bad move %r" % (r.move,))
            key = (r.state, r.read)
            if key in table:
                raise MachineError("duplicate quintuple for %r" % (key,))
            table[key] = (r.write, r.move, r.next)
        sorted_rules = tuple(
            sorted(self.rules, key=lambda r: (self.states.index(r.state), self.alphabet.index(r.read)))
        )
        object.__setattr__(self, "rules", sorted_rules)
        object.__setattr__(self, "_table", table)

    @classmethod
    def build(
        cls,
        alphabet: Alphabet,
        start: str,
        halt_states,
        rules,
        oracle_ports=None,
        extra_states=(),
    ) -> "Machine":
        """Build a machine, collecting the state set from the rules."""
        rules = tuple(Rule(*r) if not isinstance(r, Rule) else r for r in rules)
        halt_states = tuple(dict.fromkeys(halt_states))
        ordered: list[str] = []

        def note(s: str) -> None:
            if s not in ordered:
                ordered.append(s)

        note(start)
        for r in rules:
            note(r.state)
            note(r.next)
        for s in halt_states:
            note(s)
        if oracle_ports is not None:
            if not isinstance(oracle_ports, OraclePorts):
                oracle_ports = OraclePorts(*oracle_ports)
            for s in (oracle_ports.query, oracle_ports.yes, oracle_ports.no):
                note(s)
        for s in extra_states:
            note(s)
        return cls(alphabet, tuple(ordered), start, tuple(halt_states), rules, oracle_ports)

    def is_halt(self, state: str) -> bool:
        return state in self.halt_states or state == REJECT_STATE

    def rule_for(self, state: str, read: str):
        return self._table.get((state, read))


@dataclass(frozen=True)
class Configuration:
    tape: Tape
    state: str
    steps: int = 0


@dataclass(frozen=True)
class Conventions:
    """The yes and no answer tapes for an alphabet."""

    yes_tape: Tape
    no_tape: Tape

    @classmethod
    def standard(cls, alphabet: Alphabet) -> "Conventions":
        one = "1"
        if one not in alphabet.symbols or one == alphabet.blank:
            raise MachineError("standard conventions need a non-blank '1'")
        return cls(Tape.from_cells(alphabet, {0: one}), Tape.blank_tape(alphabet))


@dataclass(frozen=True)
class Halted:
    tape: Tape
    steps: int
    state: str
    excursion: int


@dataclass(frozen=True)
class Exhausted:
    fuel: int
    excursion: int


@dataclass(frozen=True)
class OracleUnknown:
    query: Tape
    step: int
    excursion: int


RunResult = Halted | Exhausted
RunOutcome = Halted | Exhausted | OracleUnknown


def step(m: Machine, c: Configuration) -> Configuration:
    """One small step; a missing quintuple moves to the implicit reject halt."""
    if m.is_halt(c.state):
        raise MachineError("cannot step a halted configuration")
    if m.oracle_ports and c.state == m.oracle_ports.query:
        raise MachineError("cannot step a query state without an oracle")
    sym = c.tape.symbol_at(c.tape.head)
    rule = m.rule_for(c.state, sym)
    if rule is None:
        return Configuration(c.tape, REJECT_STATE, c.steps + 1)
    write, move, nxt = rule
    cells = c.tape.as_dict()
    if write == m.alphabet.blank:
        cells.pop(c.tape.head, None)
    else:
        cells[c.tape.head] = write
    tape = Tape.from_cells(m.alphabet, cells, head=c.tape.head + _MOVE_DELTA[move])
    return Configuration(tape, nxt, c.steps + 1)


def _execute(m: Machine, tape: Tape, fuel: int, oracle=None) -> RunOutcome:
    if tape.alphabet != m.alphabet:
        raise AlphabetMismatch("input alphabet differs from machine alphabet")
    cells = tape.as_dict()
    head = tape.head
    state = m.start
    steps = 0
    start_head = head
    excursion = 0
    blank = m.alphabet.blank
    table = m._table
    halts = set(m.halt_states)
    halts.add(REJECT_STATE)
    query = m.oracle_ports.query if m.oracle_ports else None
    while True:
        if state in halts:
            return Halted(Tape.from_cells(m.alphabet, cells, head=head), steps, state, excursion)
        if steps >= fuel:
            return Exhausted(fuel, excursion)
        if state == query:
            snapshot = Tape.from_cells(m.alphabet, cells, head=head)
            if oracle is None:
                raise MissingOracle("machine %r queried without an oracle" % (m.start,))
            answer = oracle.query(snapshot)
            if answer.is_yes:
                state = m.oracle_ports.yes
            elif answer.is_no:
                state = m.oracle_ports.no
            else:
                return OracleUnknown(snapshot, steps, excursion)
            steps += 1
            continue
        sym = cells.get(head, blank)
        rule = table.get((state, sym))
        if rule is None:
            state = REJECT_STATE
            steps += 1
            continue
        write, move, nxt = rule
        if write == blank:
            cells.pop(head, None)
        else:
            cells[head] = write
        head += _MOVE_DELTA[move]
        d = head - start_head
        if d < 0:
            d = -d
        if d > excursion:
            excursion = d
        state = nxt
        steps += 1


def run(m: Machine, tape: Tape, fuel: int) -> RunResult:
    """Deterministic fuel-bounded run; pure in (machine, input, fuel)."""
    out = _execute(m, tape, fuel)
    if isinstance(out, OracleUnknown):  # pragma: no cover - _execute raises first
        raise MissingOracle("oracle machine run without an oracle")
    return out


@dataclass(frozen=True)
class OriginVerdict:
    status: str  # "verified" | "refuted" | "inconclusive"
    counterexample: Tape | None = None
    samples: int = 0


def check_origin_convention(m: Machine, samples, fuel: int) -> OriginVerdict:
    """Sampled audit: every halting run must end with the head at position 0."""
    inconclusive = False
    n = 0
    for t in samples:
        n += 1
        res = run(m, t, fuel)
        if isinstance(res, Exhausted):
            inconclusive = True
            continue
        if res.tape.head != 0:
            return OriginVerdict("refuted", counterexample=t, samples=n)
    if inconclusive:
        return OriginVerdict("inconclusive", samples=n)
    return OriginVerdict("verified", samples=n)


def relabel(m: Machine, prefix: str) -> Machine:
    """Rename states positionally so two machines never collide."""
    names = {s: "%s%d" % (prefix, i) for i, s in enumerate(m.states)}
    ports = None
    if m.oracle_ports:
        ports = OraclePorts(names[m.oracle_ports.query], names[m.oracle_ports.yes], names[m.oracle_ports.no])
    return Machine(
        m.alphabet,
        tuple(names[s] for s in m.states),
        names[m.start],
        tuple(names[s] for s in m.halt_states),
        tuple(Rule(names[r.state], r.read, r.write, r.move, names[r.next]) for r in m.rules),
        ports,
    )


def compose(f: Machine, g: Machine) -> Machine:
    """Run f, then g from f's final tape.

    Every way f can halt (declared halt states and implicit rejects) is
    rewired into g's start, so the composite computes g(f(tape)) wherever
    both halves halt.
    """
    if f.alphabet != g.alphabet:
        raise AlphabetMismatch("cannot compose machines over different alphabets")
    if f.oracle_ports and g.oracle_ports:
        raise MachineError("composition of two oracle machines is not supported")
    fr = relabel(f, "a")
    gr = relabel(g, "b")
    f_halts = set(fr.halt_states)

    def target(s: str) -> str:
        return gr.start if s in f_halts else s

    rules = [Rule(r.state, r.read, r.write, r.move, target(r.next)) for r in fr.rules]
    # complete f's table: implicit rejects continue into g with the tape as is
    f_query = fr.oracle_ports.query if fr.oracle_ports else None
    defined = {(r.state, r.read) for r in fr.rules}
    for s in fr.states:
        if s in f_halts or s == f_query:
            continue
        for sym in f.alphabet.symbols:
            if (s, sym) not in defined:
                rules.append(Rule(s, sym, sym, "S", gr.start))
    rules.extend(gr.rules)
    states = tuple(s for s in fr.states if s not in f_halts) + gr.states
    start = gr.start if fr.start in f_halts else fr.start
    ports = fr.oracle_ports or gr.oracle_ports
    if ports is fr.oracle_ports and ports is not None:
        if ports.query in f_halts:
            ports = None  # a halting query state can never fire
        else:
            ports = OraclePorts(ports.query, target(ports.yes), target(ports.no))
    return Machine(f.alphabet, states, start, gr.halt_states, tuple(rules), ports)


def canonicalize(m: Machine) -> Machine:
    """Rename states q0, q1, ... in order of first use and drop unreachable ones.

    Halt states and oracle ports are always kept; rules from dropped states
    disappear with them.
    """
    order: list[str] = []

    def note(s: str) -> None:
        if s not in order:
            order.append(s)

    note(m.start)
    i = 0
    ports_added = m.oracle_ports is None
    while True:
        while i < len(order):
            s = order[i]
            i += 1
            if s in m.halt_states:
                continue
            for sym in m.alphabet.symbols:
                rule = m.rule_for(s, sym)
                if rule is not None:
                    note(rule[2])
        if not ports_added:
            for s in (m.oracle_ports.query, m.oracle_ports.yes, m.oracle_ports.no):
                note(s)
            ports_added = True
            continue
        break
    for s in m.states:
        if s in m.halt_states and s not in order:
            note(s)
    kept = set(order)
    names = {s: "q%d" % i for i, s in enumerate(order)}
    ports = None
    if m.oracle_ports:
        ports = OraclePorts(
            names[m.oracle_ports.query], names[m.oracle_ports.yes], names[m.oracle_ports.no]
        )
    rules = tuple(
        Rule(names[r.state], r.read, r.write, r.move, names[r.next])
        for r in m.rules
        if r.state in kept
    )
    return Machine(
        m.alphabet,
        tuple(names[s] for s in order),
        names[m.start],
        tuple(names[s] for s in m.states if s in m.halt_states and s in kept),
        rules,
        ports,
    )


def fallback_machine(alphabet: Alphabet) -> Machine:
    """The fixed one-state machine that halts immediately on every input."""
    return Machine(alphabet, ("q0",), "q0", ("q0",), ())


# ---------------------------------------------------------------------------
# Machine numbering: a dense self-delimiting bit code.
#
# A natural is read as a finite bit string (length-lex order) and the string
# as a field stream: state count (gamma code), halt mask, oracle ports, then
# one cell per (state, symbol).  Reads past the end of the string see zeros,
# so every natural decodes; encode emits the minimal stream, so decoding an
# encoded machine reproduces it exactly.
# ---------------------------------------------------------------------------


def _bits_of_natural(n: int) -> str:
    return bin(n + 1)[3:]


def _natural_of_bits(bits: str) -> int:
    return int("1" + bits, 2) - 1


class _BitReader:
    def __init__(self, bits: str) -> None:
        self.bits = bits
        self.pos = 0

    def bit(self) -> int:
        b = self.bits[self.pos] if self.pos < len(self.bits) else "0"
        self.pos += 1
        return 1 if b == "1" else 0

    def number(self, width: int) -> int:
        v = 0
        for _ in range(width):
            v = (v << 1) | self.bit()
        return v

    def unary(self, cap: int) -> int:
        u = 0
        while u <= cap and self.bit():
            u += 1
        return u


class _BitWriter:
    def __init__(self) -> None:
        self.parts: list[str] = []

    def bit(self, b: int) -> None:
        self.parts.append("1" if b else "0")

    def number(self, v: int, width: int) -> None:
        self.parts.append(format(v, "0%db" % width) if width else "")

    def value(self) -> str:
        return "".join(self.parts)


def _width(n_options: int) -> int:
    return (n_options - 1).bit_length() if n_options > 1 else 0


def encode_machine(m: Machine) -> int:
    """Number of the canonicalized machine; injective on canonical machines."""
    c = canonicalize(m)
    n_states = len(c.states)
    if n_states > MAX_ENCODED_STATES:
        raise MachineError("machine too large to number (%d states)" % n_states)
    k = c.alphabet.size
    w = _BitWriter()
    u = n_states.bit_length() - 1  # n_states = 2**u + remainder
    for _ in range(u):
        w.bit(1)
    w.bit(0)
    w.number(n_states - (1 << u), u)
    halts = set(c.halt_states)
    for s in c.states:
        w.bit(1 if s in halts else 0)
    t_bits = _width(n_states)
    if c.oracle_ports:
        w.bit(1)
        for s in (c.oracle_ports.query, c.oracle_ports.yes, c.oracle_ports.no):
            w.number(c.states.index(s), t_bits)
    else:
        w.bit(0)
    query = c.oracle_ports.query if c.oracle_ports else None
    w_bits = _width(k)
    for s in c.states:
        if s in halts or s == query:
            continue
        for sym in c.alphabet.symbols:
            rule = c.rule_for(s, sym)
            if rule is None:
                w.bit(0)
            else:
                write, move, nxt = rule
                w.bit(1)
                w.number(c.alphabet.index(write), w_bits)
                w.number(MOVES.index(move), 2)
                w.number(c.states.index(nxt), t_bits)
    return _natural_of_bits(w.value())


def decode_machine(n: int, alphabet: Alphabet = SIGMA2) -> Machine:
    """Total inverse: every natural is some machine over the given alphabet.

    0 and oversized streams map to the fixed fallback machine.
    """
    if n < 0:
        raise MachineError("machine numbers are naturals")
    if n == 0:
        return fallback_machine(alphabet)
    r = _BitReader(_bits_of_natural(n))
    u = r.unary(MAX_ENCODED_STATES.bit_length())
    n_states = (1 << u) + r.number(u)
    if n_states > MAX_ENCODED_STATES:
        return fallback_machine(alphabet)
    states = tuple("q%d" % i for i in range(n_states))
    halts = tuple(s for s in states if r.bit())
    t_bits = _width(n_states)
    ports = None
    if r.bit():
        q = states[r.number(t_bits) % n_states]
        y = states[r.number(t_bits) % n_states]
        no = states[r.number(t_bits) % n_states]
        ports = OraclePorts(q, y, no)
    k = alphabet.size
    w_bits = _width(k)
    halt_set = set(halts)
    query = ports.query if ports else None
    rules = []
    for s in states:
        if s in halt_set or s == query:
            continue
        for sym in alphabet.symbols:
            if r.bit():
                write = alphabet.symbols[r.number(w_bits) % k]
                move = MOVES[r.number(2) % 3]
                nxt = states[r.number(t_bits) % n_states]
                rules.append(Rule(s, sym, write, move, nxt))
    return Machine(alphabet, states, states[0], halts, tuple(rules), ports)


# ---------------------------------------------------------------------------
# Indexed simulation and the bounded halting sets.
# ---------------------------------------------------------------------------


def simulate_indexed(e: int, tape: Tape, fuel: int) -> RunOutcome:
    """Run the e-th machine on a tape; the engine itself is the universal machine.

    Decoded machines with oracle ports run against the empty oracle, which
    keeps indexed simulation total.
    """
    from .oracle import EMPTY_ORACLE, run_with_oracle

    m = decode_machine(e, tape.alphabet)
    if m.oracle_ports:
        return run_with_oracle(m, EMPTY_ORACLE, tape, fuel)
    return run(m, tape, fuel)


def halting_table(e: int, fuel: int, tape_bound: int, alphabet: Alphabet = SIGMA2) -> set[int]:
    """Numbers of the tapes the e-th machine accepts within the fuel bound."""
    from .tape import tape_of_number

    out = set()
    for k in range(tape_bound):
        res = simulate_indexed(e, tape_of_number(k, alphabet), fuel)
        if isinstance(res, Halted):
            out.add(k)
    return out


def k_approx(fuel: int, tape_bound: int, alphabet: Alphabet = SIGMA2) -> set[int]:
    """Sound under-approximation of the diagonal halting set.

    k is reported exactly when machine k halts on tape k within the fuel,
    so every member carries a replayable certificate.
    """
    from .tape import tape_of_number

    out = set()
    for k in range(tape_bound):
        res = simulate_indexed(k, tape_of_number(k, alphabet), fuel)
        if isinstance(res, Halted):
            out.add(k)
    return out


# ---------------------------------------------------------------------------
# Machine file format.
# ---------------------------------------------------------------------------


def render_machine_file(m: Machine) -> str:
    lines = [
        "alphabet: %s" % "".join(m.alphabet.symbols),
        "blank: %s" % m.alphabet.blank,
        "start: %s" % m.start,
        "halt: %s" % " ".join(m.halt_states),
    ]
    if m.oracle_ports:
        p = m.oracle_ports
        lines.append("oracle: %s %s %s" % (p.query, p.yes, p.no))
    for r in m.rules:
        lines.append("%s %s -> %s %s %s" % (r.state, r.read, r.write, r.move, r.next))
    return "\n".join(lines) + "\n"


def parse_machine_file(text: str) -> Machine:
    alphabet = None
    blank = None
    start = None
    halts = None
    ports = None
    rules = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            if line.startswith("alphabet:"):
                symbols = line.split(":", 1)[1].strip()
                alphabet = symbols
            elif line.startswith("blank:"):
                blank = line.split(":", 1)[1].strip()
            elif line.startswith("start:"):
                start = line.split(":", 1)[1].strip()
            elif line.startswith("halt:"):
                halts = tuple(line.split(":", 1)[1].split())
            elif line.startswith("oracle:"):
                q, y, n = line.split(":", 1)[1].split()
                ports = OraclePorts(q, y, n)
            else:
                lhs, rhs = line.split("->")
                state, read = lhs.split()
                write, move, nxt = rhs.split()
                rules.append(Rule(state, read, write, move, nxt))
        except (ValueError, TapeError) as exc:
            raise MachineError("line %d: cannot parse %r (%s)" % (lineno, raw, exc)) from exc
    if alphabet is None or blank is None:
        raise MachineError("machine file needs alphabet: and blank: headers")
    if start is None or halts is None:
        raise MachineError("machine file needs start: and halt: headers")
    try:
        alpha = Alphabet(tuple(alphabet), blank)
    except ValueError as exc:
        raise MachineError("bad alphabet header: %s" % exc) from exc
    return Machine.build(alpha, start, halts, rules, oracle_ports=ports)
