"""Switch-level fixed-point evaluation and exhaustive truth-table extraction.

Every non-input node starts at ``Z``.  A switch whose gate node carries a
driven 1 merges the values of its two channel ends into each other; sweeps
repeat until no node changes.  Node values only ever climb the lattice
(``Z`` below ``0``/``1`` below ``X``), so the iteration is a monotone fixed
point on a finite lattice and always terminates — within ``3 * |nodes|``
sweeps, which is enforced.

Nodes hold no charge: anything not reached by a conducting path from a
driven input reads ``Z`` in the result.  A gate node that settles at ``Z``
or ``X`` is an error, not a maybe-conducting switch; the circuits this
package builds drive every gate rail explicitly and anything else is a
wiring bug worth failing loudly on.
"""

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence

from .netlist import Netlist, rail_map
from .signals import Signal, invert, merge


class SimulationError(Exception):
    """Base class for everything the simulator can reject."""


class UnboundInputError(SimulationError):
    """An assignment misses a declared input, or binds a non-input node."""


class FloatingGateError(SimulationError):
    """A transistor gate settled at Z or X instead of a logic level."""


class UndrivenOutputError(SimulationError):
    """A recorded output settled at Z."""


class DriveConflictError(SimulationError):
    """A recorded output settled at X."""


def fill_rails(netlist: Netlist, assignment: Mapping[str, Signal]) -> dict:
    """Complete a partial assignment by negating across declared rail pairs.

    Whenever exactly one node of a pair is bound to a driven value, the
    partner gets the complement.  Unfilled nodes are left for the caller
    (and will fail input validation if they were required).
    """
    values = dict(assignment)
    changed = True
    while changed:
        changed = False
        for a, b in netlist.rail_pairs:
            for have, want in ((a, b), (b, a)):
                if have in values and want not in values \
                        and values[have] in (Signal.ZERO, Signal.ONE):
                    values[want] = invert(values[have])
                    changed = True
    return values


def _check_assignment(netlist: Netlist, assignment: Mapping[str, Signal]):
    inputs = set(netlist.pass_inputs) | set(netlist.control_inputs)
    for node, value in assignment.items():
        if node not in inputs:
            raise UnboundInputError(f"{node!r} is not a declared input")
        if not isinstance(value, Signal):
            raise UnboundInputError(f"value for {node!r} is not a Signal")
    missing = inputs - set(assignment)
    if missing:
        raise UnboundInputError(f"inputs left unbound: {sorted(missing)}")
    for node in netlist.control_inputs:
        if assignment[node] not in (Signal.ZERO, Signal.ONE):
            raise UnboundInputError(
                f"control input {node!r} must be driven 0 or 1, "
                f"got {assignment[node].text}")


def fixed_point(netlist: Netlist, assignment: Mapping[str, Signal]):
    """Run the sweep iteration; returns ``(values, sweeps)``.

    Exposed separately from :func:`simulate` so the convergence bound can
    be observed; most callers want :func:`simulate`.
    """
    _check_assignment(netlist, assignment)
    values = {node: Signal.Z for node in netlist.nodes}
    values.update(assignment)
    limit = max(3 * len(netlist.nodes), 1)
    for sweep in range(1, limit + 1):
        changed = False
        for t in netlist.transistors:
            if values[t.gate] is not Signal.ONE:
                continue
            joined = merge(values[t.source], values[t.drain])
            if values[t.source] is not joined:
                values[t.source] = joined
                changed = True
            if values[t.drain] is not joined:
                values[t.drain] = joined
                changed = True
        if not changed:
            return values, sweep
    raise SimulationError(
        f"no fixed point within {limit} sweeps; this cannot happen for a "
        f"monotone update and indicates an internal error")


def simulate(netlist: Netlist, assignment: Mapping[str, Signal]) -> dict:
    """Settle the netlist under ``assignment`` and return every node's value.

    The assignment must bind exactly the declared inputs (control inputs to
    driven logic levels).  After settling, every transistor gate must read
    a driven 0 or 1.
    """
    values, _ = fixed_point(netlist, assignment)
    for t in netlist.transistors:
        state = values[t.gate]
        if state not in (Signal.ZERO, Signal.ONE):
            raise FloatingGateError(
                f"gate node {t.gate!r} settled at {state.text}")
    return values


# ---------------------------------------------------------------------------
# Exhaustive tables

@dataclass(frozen=True)
class TruthTable:
    """Complete binary behavior of a circuit: one row per input vector."""

    input_names: tuple
    output_names: tuple
    rows: tuple  # ((in_bits, out_bits), ...) sorted by input vector

    def __post_init__(self):
        object.__setattr__(self, "input_names", tuple(self.input_names))
        object.__setattr__(self, "output_names", tuple(self.output_names))
        object.__setattr__(self, "rows",
                           tuple((tuple(i), tuple(o)) for i, o in self.rows))
        n = len(self.input_names)
        expected = [bits for bits in itertools.product((0, 1), repeat=n)]
        if [i for i, _ in self.rows] != expected:
            raise ValueError("truth table is not complete and sorted")
        for _, out in self.rows:
            if len(out) != len(self.output_names) or any(b not in (0, 1) for b in out):
                raise ValueError("output vectors must be bits matching the header")

    @property
    def mapping(self) -> dict:
        return dict(self.rows)

    def __call__(self, bits: Sequence[int]) -> tuple:
        return self.mapping[tuple(bits)]

    def compose(self, other: "TruthTable") -> "TruthTable":
        """Feed this table's outputs into ``other``; arities must match."""
        if len(self.output_names) != len(other.input_names):
            raise ValueError("output arity does not match the next table's inputs")
        rows = [(i, other.mapping[o]) for i, o in self.rows]
        return TruthTable(self.input_names, other.output_names, rows)

    @property
    def is_identity(self) -> bool:
        return all(i == o for i, o in self.rows)

    def format_text(self) -> str:
        """Aligned column rendering, bits right-justified under each name."""
        def render(names, bits):
            return " ".join(str(b).rjust(len(n)) for n, b in zip(names, bits))

        header = " ".join(self.input_names) + " | " + " ".join(self.output_names)
        lines = [header]
        for i, o in self.rows:
            lines.append(render(self.input_names, i) + " | "
                         + render(self.output_names, o))
        return "\n".join(lines)

    def format_machine(self) -> str:
        """One ``inputs -> outputs`` line per row, bits concatenated."""
        return "\n".join(
            "".join(map(str, i)) + " -> " + "".join(map(str, o))
            for i, o in self.rows)


def sweep_signals(netlist: Netlist, primaries: Sequence[str],
                  outputs: Sequence[str],
                  fixed: Optional[Mapping[str, Signal]] = None) -> list:
    """Simulate all ``2**len(primaries)`` binary assignments.

    Complement rails of bound nodes are filled automatically.  Returns
    ``(input_bits, output_signals)`` pairs in counting order (first primary
    is the most significant bit); output signals are reported raw, so
    undriven or conflicting outputs are visible to the caller.
    """
    for name in tuple(primaries) + tuple(outputs):
        if name not in netlist.nodes:
            raise UnboundInputError(f"{name!r} is not a declared node")
    rows = []
    for bits in itertools.product((0, 1), repeat=len(primaries)):
        assignment = {node: Signal.from_bit(b) for node, b in zip(primaries, bits)}
        if fixed:
            assignment.update(fixed)
        values = simulate(netlist, fill_rails(netlist, assignment))
        rows.append((bits, tuple(values[node] for node in outputs)))
    return rows


def extract_truth_table(netlist: Netlist, primaries: Sequence[str],
                        outputs: Sequence[str],
                        fixed: Optional[Mapping[str, Signal]] = None,
                        input_names: Optional[Sequence[str]] = None,
                        output_names: Optional[Sequence[str]] = None) -> TruthTable:
    """Build the exhaustive binary table over ``primaries``.

    Complement rails are derived, ``fixed`` supplies constant inputs, and
    every recorded output must settle to a driven 0 or 1.  ``input_names``/
    ``output_names`` override the column headers (the circuits built here
    route some inputs straight through to outputs, which would otherwise
    print under their input name).
    """
    rows = []
    for bits, signals in sweep_signals(netlist, primaries, outputs, fixed):
        out_bits = []
        for node, value in zip(outputs, signals):
            if value is Signal.Z:
                raise UndrivenOutputError(
                    f"output {node!r} is undriven for input {bits}")
            if value is Signal.X:
                raise DriveConflictError(
                    f"output {node!r} has a drive conflict for input {bits}")
            out_bits.append(value.to_bit())
        rows.append((bits, tuple(out_bits)))
    return TruthTable(tuple(input_names or primaries),
                      tuple(output_names or outputs), rows)
