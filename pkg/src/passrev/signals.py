"""Four-valued signal lattice and device-level helper formulas.

A node in a pass-transistor network is either undriven (``Z``), driven to a
logic level (``ZERO``/``ONE``), or driven to both levels at once (``X``).
The four values form a join-semilattice with ``Z`` at the bottom and ``X``
at the top; :func:`merge` is the join.  The simulator never resolves a
conflict silently: two opposing drivers produce ``X`` so wiring bugs stay
visible.

The module also carries the small analytic utilities of the device model:
the inverting-voltage formulas for NMOS and CMOS threshold inverters, the
inverted-threshold decision, and the minimum energy dissipated per
irreversible bit operation.
"""

import math
from dataclasses import dataclass
from enum import Enum

BOLTZMANN_J_PER_K = 1.3806505e-23


class Signal(Enum):
    """One switch-level node value."""

    Z = "Z"       # high impedance, no conducting path drives the node
    ZERO = "0"
    ONE = "1"
    X = "X"       # drive conflict

    @property
    def text(self) -> str:
        return self.value

    @classmethod
    def from_text(cls, token: str) -> "Signal":
        for member in cls:
            if member.value == token:
                return member
        raise ValueError(f"not a signal token: {token!r} (expected 0, 1, Z or X)")

    @classmethod
    def from_bit(cls, bit: int) -> "Signal":
        if bit == 0:
            return cls.ZERO
        if bit == 1:
            return cls.ONE
        raise ValueError(f"not a bit: {bit!r}")

    def to_bit(self) -> int:
        if self is Signal.ZERO:
            return 0
        if self is Signal.ONE:
            return 1
        raise ValueError(f"signal {self.text} has no binary value")

    def __repr__(self) -> str:
        return f"Signal.{self.name}"


def merge(a: Signal, b: Signal) -> Signal:
    """Join two drive states of one node.

    ``Z`` is the identity, ``X`` absorbs, equal values are idempotent, and
    opposing driven values conflict to ``X``.  Commutative and associative,
    so the order in which conducting paths are folded never matters.
    """
    if a is b:
        return a
    if a is Signal.Z:
        return b
    if b is Signal.Z:
        return a
    return Signal.X


def invert(s: Signal) -> Signal:
    """Logical complement of a driven value; ``Z``/``X`` have none."""
    if s is Signal.ZERO:
        return Signal.ONE
    if s is Signal.ONE:
        return Signal.ZERO
    raise ValueError(f"cannot complement {s.text}")


def pass_through(value: Signal, conducting: int) -> Signal:
    """Channel behavior of one ideal switch.

    Returns ``value`` when the switch conducts and ``Z`` when it is off;
    an off switch contributes nothing to its output node.
    """
    if conducting not in (0, 1):
        raise ValueError(f"conduction state must be 0 or 1, got {conducting!r}")
    return value if conducting else Signal.Z


def threshold_decision(level: float, threshold: float) -> int:
    """Inverted threshold gate: 0 when ``level`` reaches the threshold, else 1."""
    return 0 if level >= threshold else 1


@dataclass(frozen=True)
class InverterParams:
    """Electrical parameters of a threshold inverter.

    ``k`` is the dimensionless gain ratio, ``vdd`` the supply voltage,
    ``vtp``/``vtn`` the PMOS/NMOS thresholds.  ``vd`` and ``ve`` are the
    NMOS-formula parameters, kept opaque; the digital simulator never uses
    these formulas, they only describe how a real inverter realizes the
    threshold gate.
    """

    k: float = 1.0
    vdd: float = 5.0
    vtp: float = -1.0
    vtn: float = 1.0
    vd: float = 0.0
    ve: float = 0.0

    def __post_init__(self):
        if self.k <= 0:
            raise ValueError(f"gain ratio k must be positive, got {self.k}")
        if self.vdd <= 0:
            raise ValueError(f"supply voltage must be positive, got {self.vdd}")


def nmos_inverting_voltage(p: InverterParams) -> float:
    """Inverting voltage of an NMOS inverter: ``-k*vd + ve``."""
    return -p.k * p.vd + p.ve


def cmos_inverting_voltage(p: InverterParams) -> float:
    """Inverting voltage of a CMOS inverter: ``(k*(vdd+vtp) + vtn) / (k+1)``."""
    return (p.k * (p.vdd + p.vtp) + p.vtn) / (p.k + 1.0)


def landauer_bound(temperature_k: float) -> float:
    """Minimum energy in joules dissipated per irreversible bit operation.

    ``k_B * T * ln 2`` at absolute temperature ``temperature_k``.
    """
    if temperature_k < 0:
        raise ValueError(f"temperature must be non-negative, got {temperature_k}")
    return BOLTZMANN_J_PER_K * temperature_k * math.log(2)
