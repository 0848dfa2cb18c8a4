"""Small assembly kit for writing quintuple machines in Python.

The pairing combinators and the bundled comparators are built rule by rule;
these helpers keep the navigation idioms (sweeps, counted writes) readable.
"""

from __future__ import annotations

from .machine import Machine, OraclePorts
from .tape import Alphabet

#: symbol -> fragment usable inside a state identifier
_SYMNAME = {"_": "b", "$": "d"}


def sym_name(sym: str) -> str:
    return _SYMNAME.get(sym, sym)


class TM:
    """Accumulates quintuples for one machine."""

    def __init__(self, alphabet: Alphabet, start: str) -> None:
        self.alphabet = alphabet
        self.start = start
        self.rules: list[tuple[str, str, str, str, str]] = []
        self.halt_states: list[str] = []
        self.extra_states: list[str] = []
        self.oracle_ports: OraclePorts | None = None

    def add(self, state: str, read: str, write: str, move: str, nxt: str) -> None:
        self.rules.append((state, read, write, move, nxt))

    def halt(self, *names: str) -> None:
        for n in names:
            if n not in self.halt_states:
                self.halt_states.append(n)

    def ports(self, query: str, yes: str, no: str) -> None:
        self.oracle_ports = OraclePorts(query, yes, no)

    def on_any(self, state: str, write, move: str, nxt: str) -> None:
        """One rule per symbol; write may be a symbol or None to keep the cell."""
        for sym in self.alphabet.symbols:
            self.add(state, sym, write if write is not None else sym, move, nxt)

    def sweep(self, state: str, move: str, stops: dict, write=None) -> None:
        """Keep moving over non-stop symbols; stops maps symbol -> action.

        An action is (write, move, next).  Non-stop cells are rewritten to
        ``write`` when given, otherwise left alone.
        """
        for sym in self.alphabet.symbols:
            if sym in stops:
                w, mv, nxt = stops[sym]
                self.add(state, sym, w if w is not None else sym, mv, nxt)
            else:
                self.add(state, sym, write if write is not None else sym, move, state)

    def write_word(self, prefix: str, word, move: str, then: tuple[str, str, str]) -> str:
        """Counted write of a fixed word, one state per cell, ignoring contents.

        ``then`` = (write, move, next) applies after the last written cell.
        Returns the entry state.
        """
        states = ["%s%d" % (prefix, i) for i in range(len(word))]
        for i, ch in enumerate(word):
            nxt = states[i + 1] if i + 1 < len(word) else None
            if nxt is not None:
                self.on_any(states[i], ch, move, nxt)
            else:
                last = "%s_last" % prefix
                self.on_any(states[i], ch, move, last)
                w, mv, nxt2 = then
                self.on_any(last, w, mv, nxt2)
        if not word:
            raise ValueError("write_word needs a non-empty word")
        return states[0]

    def move_n(self, prefix: str, count: int, move: str, nxt: str) -> str:
        """Counted moves ignoring cell contents; returns the entry state."""
        if count <= 0:
            return nxt
        states = ["%s%d" % (prefix, i) for i in range(count)]
        for i in range(count):
            target = states[i + 1] if i + 1 < count else nxt
            self.on_any(states[i], None, move, target)
        return states[0]

    def build(self) -> Machine:
        return Machine.build(
            self.alphabet,
            self.start,
            self.halt_states,
            self.rules,
            oracle_ports=self.oracle_ports,
            extra_states=self.extra_states,
        )
