"""Reversible adders: the 4-input/4-output full adder, a 4-bit ripple
chain, and a one-digit BCD adder with its +6 correction stage.

The full adder keeps addition bijective by carrying a preset input and two
garbage outputs: with the preset low, sum and carry behave conventionally,
and the garbage outputs (the first operand and the operand parity) make
every output vector unique.  The BCD adder runs a binary ripple add, then
computes a correction flag ``carry | s3&(s1|s2)`` with an OR/AND/OR
network, and conditionally adds binary 0110 with two more full adders and
a final carry-fold.

All vectors and file formats put the most significant bit first.
"""

from dataclasses import dataclass
from functools import lru_cache

from .gates import GateKind, build_gate
from .netlist import (DEFAULT_TECH_LIBRARY, Netlist, TechLibrary, Technology,
                      circuit_cost, instantiate, transistor_count)
from .signals import Signal
from .simulator import TruthTable, extract_truth_table, fill_rails, simulate

FULL_ADDER_GATES = ("CNOT", "CNOT", "CCNOT", "CCNOT")

# gate kinds consumed by the decimal-correction decomposition: the two
# correction-stage adders, the AND (one CCNOT) and the two ORs of the flag
BCD_CORRECTION_EXTRA_GATES = ("CCNOT", "NPG", "NPG")


def full_adder_function(a: int, b: int, ci: int, p: int) -> tuple:
    """Reference behavior: ``(sum, carry_out, garbage1, garbage2)``.

    ``sum = a^b^ci`` and ``carry_out = p ^ majority(a, b, ci)``, so the
    preset ``p=0`` gives a conventional adder; ``garbage1 = a`` and
    ``garbage2 = a^b`` make the 16-row map a bijection.
    """
    for bit in (a, b, ci, p):
        if bit not in (0, 1):
            raise ValueError(f"inputs must be bits, got {(a, b, ci, p)}")
    majority = (a & b) | (a & ci) | (b & ci)
    return (a ^ b ^ ci, p ^ majority, a, a ^ b)


def _shell(node_signals, control_inputs, pass_inputs, outputs) -> Netlist:
    """Empty parent netlist with dual rails declared for every signal."""
    nodes, rails = [], []
    for name in node_signals:
        nodes += [name, "~" + name]
        rails.append((name, "~" + name))
    return Netlist(nodes=nodes, control_inputs=control_inputs,
                   pass_inputs=pass_inputs, outputs=outputs, rail_pairs=rails)


def _rails(*names: str) -> list:
    out = []
    for n in names:
        out += [n, "~" + n]
    return out


def _bind(mapping: dict) -> dict:
    """Expand a positive-rail port map to cover both rails."""
    full = {}
    for port, node in mapping.items():
        full[port] = node
        full["~" + port] = "~" + node
    return full


@lru_cache(maxsize=None)
def build_full_adder() -> Netlist:
    """Cascade CCNOT(A,B,P); CNOT(A,B); CCNOT(G2,CI,P1); CNOT(G2,CI).

    The first pair folds the operand product into the preset line and the
    operand parity onto the B line; the second pair does the same against
    the carry-in.  The settled lines are S = A^B^CI on the carry-in line,
    CO = P ^ majority(A,B,CI) on the preset line, and the wire-through
    garbage G1 = A, G2 = A^B.  28 transistors.
    """
    shell = _shell(
        ["A", "B", "CI", "P", "P1", "G2", "S", "CO"],
        control_inputs=_rails("A"),
        pass_inputs=_rails("B", "CI", "P"),
        outputs=_rails("S", "CO", "A", "G2"))
    ccnot, cnot = build_gate(GateKind.CCNOT), build_gate(GateKind.CNOT)
    net = instantiate(shell, ccnot,
                      _bind({"A": "A", "B": "B", "C": "P", "R": "P1"}), "g1/")
    net = instantiate(net, cnot,
                      _bind({"A": "A", "B": "B", "Q": "G2"}), "g2/")
    net = instantiate(net, ccnot,
                      _bind({"A": "G2", "B": "CI", "C": "P1", "R": "CO"}), "g3/")
    net = instantiate(net, cnot,
                      _bind({"A": "G2", "B": "CI", "Q": "S"}), "g4/")
    return net


def full_adder_table() -> TruthTable:
    net = build_full_adder()
    return extract_truth_table(
        net, ["A", "B", "CI", "P"], ["S", "CO", "A", "G2"],
        input_names=("A", "B", "Ci", "P"),
        output_names=("S", "Co", "G1", "G2"))


def _operand_rails(prefix: str) -> list:
    return [f"{prefix}{i}" for i in (3, 2, 1, 0)]


def _ripple_shell(extra_signals, outputs) -> Netlist:
    signals = (_operand_rails("A") + _operand_rails("B") + ["CIN"]
               + [f"S{i}" for i in (3, 2, 1, 0)]
               + [f"C{i}" for i in (3, 2, 1, 0)]
               + [f"G{i}" for i in (3, 2, 1, 0)]
               + ["ZERO"] + list(extra_signals))
    shell = _shell(signals,
                   control_inputs=_rails(*_operand_rails("A")),
                   pass_inputs=_rails(*_operand_rails("B")) + _rails("CIN")
                   + ["ZERO", "~ZERO"],
                   outputs=outputs)
    return shell


def _chain_adders(net: Netlist, prefix: str = "") -> Netlist:
    adder = build_full_adder()
    carry_in = "CIN"
    for i in range(4):
        net = instantiate(net, adder, _bind({
            "A": f"A{i}", "B": f"B{i}", "CI": carry_in, "P": "ZERO",
            "S": f"S{i}", "CO": f"C{i}", "G2": f"G{i}"}), f"{prefix}fa{i}/")
        carry_in = f"C{i}"
    return net


@lru_cache(maxsize=None)
def build_ripple4() -> Netlist:
    """Four full adders with presets low, carries chained; 112 transistors.

    ``ZERO`` is the shared constant-low input (its rail partner supplies
    the constant high); drive it to 0 when simulating.
    """
    shell = _ripple_shell([], outputs=_rails("C3", "S3", "S2", "S1", "S0"))
    return _chain_adders(shell)


@lru_cache(maxsize=None)
def build_bcd_adder() -> Netlist:
    """One-digit BCD adder: ripple add, flag network, +0110 correction.

    The flag K = C3 | S3&(S1|S2) is built from an OR gate, a CCNOT used as
    an AND (preset target low), and a second OR gate.  The correction adds
    K at bit weights 1 and 2 with two full adders and folds the final
    carry into S3 with a CNOT; bit 0 passes through.  Outputs are the
    carry K and the digit D3..D0.  190 transistors in total.
    """
    shell = _ripple_shell(
        ["W1", "W2", "K", "D1", "D2", "D3", "CC1", "CC2", "CG1", "CG2"],
        outputs=_rails("K", "D3", "D2", "D1", "S0"))
    net = _chain_adders(shell, "top/")
    or_gate, and_gate = build_gate(GateKind.NPG), build_gate(GateKind.CCNOT)
    cnot = build_gate(GateKind.CNOT)
    net = instantiate(net, or_gate,
                      _bind({"A": "S1", "B": "S2", "Q": "W1"}), "flag/or1/")
    net = instantiate(net, and_gate,
                      _bind({"A": "S3", "B": "W1", "C": "ZERO", "R": "W2"}),
                      "flag/and/")
    net = instantiate(net, or_gate,
                      _bind({"A": "C3", "B": "W2", "Q": "K"}), "flag/or2/")
    adder = build_full_adder()
    net = instantiate(net, adder, _bind({
        "A": "S1", "B": "K", "CI": "ZERO", "P": "ZERO",
        "S": "D1", "CO": "CC1", "G2": "CG1"}), "fix1/")
    net = instantiate(net, adder, _bind({
        "A": "S2", "B": "K", "CI": "CC1", "P": "ZERO",
        "S": "D2", "CO": "CC2", "G2": "CG2"}), "fix2/")
    net = instantiate(net, cnot,
                      _bind({"A": "CC2", "B": "S3", "Q": "D3"}), "fix3/")
    return net


def correction_flag(c_top: int, s3: int, s2: int, s1: int) -> int:
    """Decimal-correction decision: ``c_top | s3 & (s1 | s2)``."""
    for bit in (c_top, s3, s2, s1):
        if bit not in (0, 1):
            raise ValueError(f"inputs must be bits, got {(c_top, s3, s2, s1)}")
    return c_top | (s3 & (s1 | s2))


# ---------------------------------------------------------------------------
# Simulation harnesses

def _nibble_assignment(prefix: str, value: int) -> dict:
    return {f"{prefix}{i}": Signal.from_bit((value >> i) & 1) for i in range(4)}


def _run(net: Netlist, assignment: dict) -> dict:
    return simulate(net, fill_rails(net, assignment))


def ripple4_add(a: int, b: int, cin: int):
    """Simulate the ripple netlist; returns ``(sum_nibble, carry_out)``."""
    if not (0 <= a <= 15 and 0 <= b <= 15 and cin in (0, 1)):
        raise ValueError(f"operands must be nibbles and a carry bit, "
                         f"got {(a, b, cin)}")
    assignment = {**_nibble_assignment("A", a), **_nibble_assignment("B", b),
                  "CIN": Signal.from_bit(cin), "ZERO": Signal.ZERO}
    values = _run(build_ripple4(), assignment)
    total = sum(values[f"S{i}"].to_bit() << i for i in range(4))
    return total, values["C3"].to_bit()


@dataclass(frozen=True)
class BcdDigitResult:
    digit: int
    carry: int

    def __post_init__(self):
        if not 0 <= self.digit <= 9:
            raise ValueError(f"not a decimal digit: {self.digit}")


def bcd_add_digit(a: int, b: int, cin: int) -> BcdDigitResult:
    """Add two decimal digits through the full BCD netlist."""
    if not (0 <= a <= 9 and 0 <= b <= 9 and cin in (0, 1)):
        raise ValueError(f"operands must be decimal digits and a carry bit, "
                         f"got {(a, b, cin)}")
    assignment = {**_nibble_assignment("A", a), **_nibble_assignment("B", b),
                  "CIN": Signal.from_bit(cin), "ZERO": Signal.ZERO}
    values = _run(build_bcd_adder(), assignment)
    digit_nodes = ("D3", "D2", "D1", "S0")
    digit = 0
    for node in digit_nodes:
        digit = (digit << 1) | values[node].to_bit()
    return BcdDigitResult(digit=digit, carry=values["K"].to_bit())


def ripple4_table() -> TruthTable:
    net = build_ripple4()
    return extract_truth_table(
        net,
        _operand_rails("A") + _operand_rails("B") + ["CIN"],
        ["C3", "S3", "S2", "S1", "S0"],
        fixed={"ZERO": Signal.ZERO})


def bcd_adder_table() -> TruthTable:
    net = build_bcd_adder()
    return extract_truth_table(
        net,
        _operand_rails("A") + _operand_rails("B") + ["CIN"],
        ["K", "D3", "D2", "D1", "S0"],
        fixed={"ZERO": Signal.ZERO},
        output_names=("K", "D3", "D2", "D1", "D0"))


# ---------------------------------------------------------------------------
# Cost reporting

def full_adder_cost(tech: Technology,
                    library: TechLibrary = DEFAULT_TECH_LIBRARY) -> int:
    return circuit_cost(FULL_ADDER_GATES, tech, library)


def bcd_decomposition_cost(library: TechLibrary = DEFAULT_TECH_LIBRARY) -> int:
    """NMOS cost of the decimal-correction decomposition.

    Counted as two full adders plus one CCNOT and two OR gates; there is
    no CMOS figure because the OR gate has no CMOS library entry.
    """
    return (2 * full_adder_cost(Technology.NMOS, library)
            + circuit_cost(BCD_CORRECTION_EXTRA_GATES, Technology.NMOS, library))


def cost_comparison(library: TechLibrary = DEFAULT_TECH_LIBRARY) -> dict:
    """Machine-readable transistor budget comparison.

    Gate-by-gate counts for both technologies, the full-adder totals with
    their NMOS/CMOS ratio, the correction decomposition total, and the
    transistor counts of the fully assembled netlists.
    """
    preferred = ("NOT", "CNOT", "CCNOT", "FREDKIN", "NPG")
    kinds = [k for k in preferred if k in set(library.nmos) | set(library.cmos)]
    kinds += sorted((set(library.nmos) | set(library.cmos)) - set(preferred))
    gates = [{"gate": kind,
              "nmos": library.nmos.get(kind),
              "cmos": library.cmos.get(kind)} for kind in kinds]
    nmos_fa = full_adder_cost(Technology.NMOS, library)
    cmos_fa = full_adder_cost(Technology.CMOS, library)
    return {
        "gates": gates,
        "full_adder": {"nmos": nmos_fa, "cmos": cmos_fa,
                       "ratio": nmos_fa / cmos_fa},
        "bcd_correction_decomposition": {"nmos": bcd_decomposition_cost(library)},
        "built_netlists": {
            "full_adder": transistor_count(build_full_adder()),
            "ripple4": transistor_count(build_ripple4()),
            "bcd_adder": transistor_count(build_bcd_adder()),
        },
        "note": ("the OR gate has no CMOS entry, so the correction "
                 "decomposition has no CMOS total and no reduction ratio "
                 "can be reported for the BCD adder"),
    }
