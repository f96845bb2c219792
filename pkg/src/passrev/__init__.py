"""Switch-level workbench for NMOS pass-transistor reversible logic."""

from .adders import (BcdDigitResult, bcd_add_digit, bcd_decomposition_cost,
                     build_bcd_adder, build_full_adder, build_ripple4,
                     correction_flag, cost_comparison, full_adder_cost,
                     full_adder_function, full_adder_table, ripple4_add)
from .gates import (GateKind, ReversibilityReport, build_gate, gate_function,
                    gate_table, is_reversible, reverse_evaluate)
from .netlist import (DEFAULT_TECH_LIBRARY, Netlist, NetlistError, TechLibrary,
                      Technology, Transistor, add_node, add_transistor,
                      circuit_cost, instantiate, parse_netlist, primary_inputs,
                      primary_outputs, transistor_count, write_netlist)
from .pass_algebra import (CtlAnd, CtlOr, Lit, Pass, PassExpr, Sum,
                           compile_expr, eval_expr, format_expr, normalize,
                           parse_expr, series)
from .signals import (InverterParams, Signal, cmos_inverting_voltage,
                      invert, landauer_bound, merge, nmos_inverting_voltage,
                      pass_through, threshold_decision)
from .simulator import (DriveConflictError, FloatingGateError, SimulationError,
                        TruthTable, UnboundInputError, UndrivenOutputError,
                        extract_truth_table, fill_rails, simulate)

__version__ = "0.1.0"
