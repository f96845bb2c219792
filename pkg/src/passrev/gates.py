"""Reversible gate library: reference functions, dual-rail netlists, and
the bijectivity checker.

Every gate is built dual-rail: each logical signal travels as a
complementary pair, so inversion is free (a rail crossover) and every
transistor gate rail is explicitly driven.  The netlists are minimal
sum-of-branches realizations of the reference functions; each output rail
is driven by exactly one conducting branch for any control value, so no
node ever sees a drive conflict.

``OR2`` (kind name ``NPG``) is the one deliberately non-bijective member:
it computes a plain OR alongside its pass-through, and the checker reports
the collision rather than the library papering over it.
"""

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Optional, Sequence

from .netlist import (Netlist, Transistor, primary_inputs, primary_outputs)
from .simulator import TruthTable, extract_truth_table


class GateKind(Enum):
    NOT = "not"
    CNOT = "cnot"
    CCNOT = "ccnot"
    FREDKIN = "fredkin"
    NPG = "npg"

    @classmethod
    def from_name(cls, name: str) -> "GateKind":
        try:
            return cls(name.lower())
        except ValueError:
            raise ValueError(f"unknown gate kind {name!r}") from None


_ARITY = {GateKind.NOT: 1, GateKind.CNOT: 2, GateKind.CCNOT: 3,
          GateKind.FREDKIN: 3, GateKind.NPG: 2}

_OUTPUT_LABELS = {GateKind.NOT: ("P",), GateKind.CNOT: ("P", "Q"),
                  GateKind.CCNOT: ("P", "Q", "R"),
                  GateKind.FREDKIN: ("P", "Q", "R"), GateKind.NPG: ("P", "Q")}

_INPUT_LABELS = {GateKind.NOT: ("A",), GateKind.CNOT: ("A", "B"),
                 GateKind.CCNOT: ("A", "B", "C"),
                 GateKind.FREDKIN: ("A", "B", "C"), GateKind.NPG: ("A", "B")}


def gate_function(kind: GateKind, inputs: Sequence[int]) -> tuple:
    """Reference input/output behavior of one gate kind."""
    bits = tuple(inputs)
    if len(bits) != _ARITY[kind] or any(b not in (0, 1) for b in bits):
        raise ValueError(
            f"{kind.name} takes {_ARITY[kind]} bits, got {inputs!r}")
    if kind is GateKind.NOT:
        (a,) = bits
        return (a ^ 1,)
    if kind is GateKind.CNOT:
        a, b = bits
        return (a, a ^ b)
    if kind is GateKind.CCNOT:
        a, b, c = bits
        return (a, b, (a & b) ^ c)
    if kind is GateKind.FREDKIN:
        a, b, c = bits
        return (a, c if a else b, b if a else c)
    a, b = bits
    return (a, a | b)


def _dual(name: str) -> str:
    return "~" + name


def _pairs(*names: str) -> list:
    return [(n, _dual(n)) for n in names]


def _both(*names: str) -> list:
    out = []
    for n in names:
        out += [n, _dual(n)]
    return out


@lru_cache(maxsize=None)
def build_gate(kind: GateKind) -> Netlist:
    """Dual-rail netlist whose extracted table equals :func:`gate_function`.

    Wire-through outputs reuse their input node, so the pass-through lines
    cost nothing; transistor counts are NOT 0, CNOT 4, CCNOT 10, FREDKIN 8,
    OR-gate 4.
    """
    if kind is GateKind.NOT:
        # pure rail crossover: the output pair is the input pair swapped
        return Netlist(nodes=_both("A"), pass_inputs=_both("A"),
                       outputs=["~A", "A"], rail_pairs=_pairs("A"))
    if kind is GateKind.CNOT:
        t = [Transistor("~A", "B", "Q"), Transistor("A", "~B", "Q"),
             Transistor("~A", "~B", "~Q"), Transistor("A", "B", "~Q")]
        return Netlist(nodes=_both("A", "B", "Q"), transistors=t,
                       control_inputs=_both("A"), pass_inputs=_both("B"),
                       outputs=_both("A") + _both("Q"),
                       rail_pairs=_pairs("A", "B", "Q"))
    if kind is GateKind.CCNOT:
        # R = C unless both controls are high, then ~C; one branch per case
        t = []
        for out, lo, hi in (("R", "C", "~C"), ("~R", "~C", "C")):
            m1, m2 = out + ".1", out + ".2"
            t += [Transistor("~A", lo, out),
                  Transistor("A", lo, m1), Transistor("~B", m1, out),
                  Transistor("A", hi, m2), Transistor("B", m2, out)]
        nodes = _both("A", "B", "C", "R") + ["R.1", "R.2", "~R.1", "~R.2"]
        return Netlist(nodes=nodes, transistors=t,
                       control_inputs=_both("A", "B"), pass_inputs=_both("C"),
                       outputs=_both("A") + _both("B") + _both("R"),
                       rail_pairs=_pairs("A", "B", "C", "R"))
    if kind is GateKind.FREDKIN:
        # one control swaps which pass pair reaches which output pair
        t = [Transistor("~A", "B", "Q"), Transistor("A", "C", "Q"),
             Transistor("~A", "C", "R"), Transistor("A", "B", "R"),
             Transistor("~A", "~B", "~Q"), Transistor("A", "~C", "~Q"),
             Transistor("~A", "~C", "~R"), Transistor("A", "~B", "~R")]
        return Netlist(nodes=_both("A", "B", "C", "Q", "R"), transistors=t,
                       control_inputs=_both("A"), pass_inputs=_both("B", "C"),
                       outputs=_both("A") + _both("Q") + _both("R"),
                       rail_pairs=_pairs("A", "B", "C", "Q", "R"))
    # OR gate: when the control is high it forwards its own rail, else B
    t = [Transistor("A", "A", "Q"), Transistor("~A", "B", "Q"),
         Transistor("A", "~A", "~Q"), Transistor("~A", "~B", "~Q")]
    return Netlist(nodes=_both("A", "B", "Q"), transistors=t,
                   control_inputs=_both("A"), pass_inputs=_both("B"),
                   outputs=_both("A") + _both("Q"),
                   rail_pairs=_pairs("A", "B", "Q"))


def gate_table(kind: GateKind) -> TruthTable:
    """Exhaustive switch-level table of the built gate, with the
    conventional column labels."""
    net = build_gate(kind)
    return extract_truth_table(net, primary_inputs(net), primary_outputs(net),
                               input_names=_INPUT_LABELS[kind],
                               output_names=_OUTPUT_LABELS[kind])


# ---------------------------------------------------------------------------
# Reversibility

@dataclass(frozen=True)
class ReversibilityReport:
    """Injectivity verdict for a truth table.

    ``collisions`` lists each repeated output vector with all of its
    preimages; ``inverse`` maps outputs back to inputs and exists exactly
    when there are no collisions.
    """

    injective: bool
    collisions: tuple   # ((output_bits, (input_bits, ...)), ...)
    inverse: Optional[dict]


def is_reversible(table: TruthTable) -> ReversibilityReport:
    preimages = {}
    for i, o in table.rows:
        preimages.setdefault(o, []).append(i)
    collisions = tuple(sorted(
        (o, tuple(ins)) for o, ins in preimages.items() if len(ins) > 1))
    if collisions:
        return ReversibilityReport(False, collisions, None)
    return ReversibilityReport(True, (), {o: ins[0] for o, ins in preimages.items()})


def reverse_evaluate(table: TruthTable, outputs: Sequence[int]) -> tuple:
    """Unique preimage of an output vector under an injective table."""
    report = is_reversible(table)
    if not report.injective:
        raise ValueError("table is not injective; no backward evaluation exists")
    key = tuple(outputs)
    if key not in report.inverse:
        raise ValueError(f"output vector {key} is not produced by any input")
    return report.inverse[key]
