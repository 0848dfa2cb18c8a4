"""Oracles over tapes, oracle-machine runs, and certified jump approximations.

Every oracle answer is three-valued and carries a replayable certificate:
a halting run with its step count, a static non-termination proof, or a
table entry.  Unknown is a first-class answer, never a guess.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .machine import (
    Exhausted,
    Halted,
    Machine,
    MachineError,
    OracleUnknown,
    REJECT_STATE,
    RunOutcome,
    decode_machine,
    simulate_indexed,
    _execute,
)
from .tape import Alphabet, SIGMA2, Tape, tape_number, tape_of_number


# ---------------------------------------------------------------------------
# Certificates
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Certificate:
    kind: str  # "halting" | "no-halt-reachable" | "config-revisit" | "table" | "off-image"
    detail: tuple = ()

    def describe(self) -> str:
        if self.kind == "halting":
            return "halts in %d steps" % self.detail[0]
        if self.kind == "config-revisit":
            return "configuration at step %d recurs at step %d" % self.detail
        if self.kind == "no-halt-reachable":
            return "no halt state reachable from the start state"
        return self.kind


@dataclass(frozen=True)
class Answer:
    verdict: str  # "yes" | "no" | "unknown"
    certificate: Certificate | None = None

    @property
    def is_yes(self) -> bool:
        return self.verdict == "yes"

    @property
    def is_no(self) -> bool:
        return self.verdict == "no"

    @property
    def is_unknown(self) -> bool:
        return self.verdict == "unknown"


def yes(cert: Certificate) -> Answer:
    return Answer("yes", cert)


def no(cert: Certificate) -> Answer:
    return Answer("no", cert)


UNKNOWN = Answer("unknown")


# ---------------------------------------------------------------------------
# Static non-termination detection
# ---------------------------------------------------------------------------


def halt_unreachable(m: Machine) -> bool:
    """True when no halting configuration is reachable in the state graph.

    Missing quintuples count as edges into the implicit reject halt, and a
    reachable query state conservatively branches both ways.
    """
    seen = {m.start}
    stack = [m.start]
    halts = set(m.halt_states)
    query = m.oracle_ports.query if m.oracle_ports else None
    while stack:
        s = stack.pop()
        if s in halts:
            return False
        if s == query:
            for t in (m.oracle_ports.yes, m.oracle_ports.no):
                if t not in seen:
                    seen.add(t)
                    stack.append(t)
            continue
        for sym in m.alphabet.symbols:
            rule = m.rule_for(s, sym)
            if rule is None:
                return False  # implicit reject halt is reachable
            if rule[2] not in seen:
                seen.add(rule[2])
                stack.append(rule[2])
    return True


def find_config_revisit(m: Machine, tape: Tape, detector_fuel: int = 256) -> tuple[int, int] | None:
    """Simulate briefly looking for an exact repeated configuration.

    Finite support makes configurations comparable; a revisit proves the run
    cycles forever.  Oracle machines are scanned only up to their first query.
    """
    if tape.alphabet != m.alphabet:
        return None
    cells = tape.as_dict()
    head = tape.head
    state = m.start
    halts = set(m.halt_states)
    halts.add(REJECT_STATE)
    query = m.oracle_ports.query if m.oracle_ports else None
    seen: dict = {}
    blank = m.alphabet.blank
    delta = {"L": -1, "R": 1, "S": 0}
    for step_no in range(detector_fuel + 1):
        if state in halts or state == query:
            return None
        key = (state, head, tuple(sorted(cells.items())))
        if key in seen:
            return (seen[key], step_no)
        seen[key] = step_no
        sym = cells.get(head, blank)
        rule = m.rule_for(state, sym)
        if rule is None:
            return None
        write, move, nxt = rule
        if write == blank:
            cells.pop(head, None)
        else:
            cells[head] = write
        head += delta[move]
        state = nxt
    return None


# ---------------------------------------------------------------------------
# Oracle kinds
# ---------------------------------------------------------------------------


class Oracle:
    """Membership predicate over tapes; answers are stable and certified."""

    def query(self, tape: Tape) -> Answer:  # pragma: no cover - interface
        raise NotImplementedError


@dataclass(frozen=True)
class TableOracle(Oracle):
    """Explicit finite membership table; everything else answers No."""

    members: frozenset[Tape] = frozenset()

    def query(self, tape: Tape) -> Answer:
        if tape in self.members:
            return yes(Certificate("table"))
        return no(Certificate("table"))


EMPTY_ORACLE = TableOracle(frozenset())


@dataclass
class BoundedHaltingOracle(Oracle):
    """Diagonal-halting membership: does machine #t halt on tape t?

    Yes answers replay as bounded runs; No answers replay as static
    non-termination proofs.  Anything else stays Unknown.
    """

    fuel: int
    detector_fuel: int = 256
    _cache: dict = field(default_factory=dict, repr=False)

    def query(self, tape: Tape) -> Answer:
        tape = tape.recentred()
        hit = self._cache.get(tape)
        if hit is not None:
            return hit
        e = tape_number(tape)
        res = simulate_indexed(e, tape, self.fuel)
        if isinstance(res, Halted):
            ans = yes(Certificate("halting", (res.steps,)))
        else:
            m = decode_machine(e, tape.alphabet)
            if halt_unreachable(m):
                ans = no(Certificate("no-halt-reachable"))
            else:
                pair = find_config_revisit(m, tape, self.detector_fuel)
                ans = no(Certificate("config-revisit", pair)) if pair else UNKNOWN
        self._cache[tape] = ans
        return ans


def replay_certificate(oracle: Oracle, tape: Tape, answer: Answer) -> bool:
    """Re-derive an answer from scratch and compare with the recorded one."""
    fresh = oracle.query(tape)
    return fresh.verdict == answer.verdict and fresh.certificate == answer.certificate


# ---------------------------------------------------------------------------
# Oracle-machine execution
# ---------------------------------------------------------------------------


def run_with_oracle(m: Machine, oracle: Oracle, tape: Tape, fuel: int) -> RunOutcome:
    """Fuel-bounded run where the query state submits the whole current tape."""
    if m.oracle_ports is None:
        raise MachineError("run_with_oracle needs a machine with oracle ports")
    return _execute(m, tape, fuel, oracle=oracle)
