"""Command-line front end.

Subcommands: ``simulate``, ``truth-table``, ``verify-reversible``,
``count``, ``compare-cost``, ``bcd-check``, ``compile-expr``.  Circuit
arguments accept either a built-in name (not, cnot, ccnot, fredkin, npg,
fulladder, ripple4, bcdadder) or a path to a netlist file.

Exit status: 0 all checks passed, 1 a verification failed (the report
carries the counterexample), 2 usage or input error.  All output is
deterministic; ``--format json`` switches any report to machine-readable
form with stable keys.
"""

import argparse
import json
import sys
from pathlib import Path

from . import adders, gates
from .netlist import (NetlistError, parse_netlist, primary_inputs,
                      primary_outputs, transistor_count, write_netlist)
from .pass_algebra import ExprSyntaxError, compile_expr, format_expr, \
    normalize, parse_expr
from .signals import Signal
from .simulator import (SimulationError, UnboundInputError,
                        extract_truth_table, fill_rails, simulate)

_GATE_NAMES = {kind.value: kind for kind in gates.GateKind}
_CIRCUITS = {
    "fulladder": (adders.build_full_adder, adders.full_adder_table),
    "ripple4": (adders.build_ripple4, adders.ripple4_table),
    "bcdadder": (adders.build_bcd_adder, adders.bcd_adder_table),
}


def _load(target: str):
    """Resolve a built-in name or netlist file path; returns (netlist, table_fn)."""
    if target in _GATE_NAMES:
        kind = _GATE_NAMES[target]
        return gates.build_gate(kind), lambda: gates.gate_table(kind)
    if target in _CIRCUITS:
        build, table = _CIRCUITS[target]
        return build(), table
    path = Path(target)
    if not path.exists():
        raise NetlistError(f"{target!r} is neither a built-in circuit nor a file")
    net = parse_netlist(path.read_text())
    return net, lambda: extract_truth_table(net, primary_inputs(net),
                                            primary_outputs(net))


def _emit(args, text_fn, payload):
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text_fn())


def _cmd_simulate(args) -> int:
    net, _ = _load(args.circuit)
    assignment = {}
    for item in args.set or []:
        name, _, value = item.partition("=")
        if not name or not value:
            raise NetlistError(f"--set expects NAME=VALUE, got {item!r}")
        assignment[name] = Signal.from_text(value)
    values = simulate(net, fill_rails(net, assignment))
    payload = {"nodes": {node: values[node].text for node in sorted(values)}}
    _emit(args, lambda: "\n".join(
        f"{node} = {sig}" for node, sig in sorted(payload["nodes"].items())),
        payload)
    return 0


def _table_payload(table) -> dict:
    return {"inputs": list(table.input_names),
            "outputs": list(table.output_names),
            "rows": [{"in": "".join(map(str, i)), "out": "".join(map(str, o))}
                     for i, o in table.rows]}


def _cmd_truth_table(args) -> int:
    _, table_fn = _load(args.circuit)
    table = table_fn()
    if args.machine:
        print(table.format_machine())
    else:
        _emit(args, table.format_text, _table_payload(table))
    return 0


def _cmd_verify_reversible(args) -> int:
    _, table_fn = _load(args.circuit)
    table = table_fn()
    report = gates.is_reversible(table)
    payload = {
        "circuit": args.circuit,
        "reversible": report.injective,
        "collisions": [{"output": "".join(map(str, o)),
                        "preimages": ["".join(map(str, i)) for i in ins]}
                       for o, ins in report.collisions],
    }

    def text():
        if report.injective:
            return f"{args.circuit}: reversible (all output vectors distinct)"
        lines = [f"{args.circuit}: NOT reversible"]
        for out, ins in report.collisions:
            preimages = ", ".join(str(i) for i in ins)
            lines.append(f"  collision {out} <- {{{preimages}}}")
        return "\n".join(lines)

    _emit(args, text, payload)
    return 0 if report.injective else 1


def _cmd_count(args) -> int:
    net, _ = _load(args.circuit)
    count = transistor_count(net)
    _emit(args, lambda: str(count),
          {"circuit": args.circuit, "transistors": count})
    return 0


def _cmd_compare_cost(args) -> int:
    report = adders.cost_comparison()

    def text():
        lines = ["gate        NMOS  CMOS"]
        for row in report["gates"]:
            nmos = "-" if row["nmos"] is None else row["nmos"]
            cmos = "-" if row["cmos"] is None else row["cmos"]
            lines.append(f"{row['gate']:<10} {nmos:>5} {cmos:>5}")
        fa = report["full_adder"]
        lines.append(f"full adder: NMOS {fa['nmos']}, CMOS {fa['cmos']} "
                     f"(ratio {fa['ratio']:.3f}, approximately 50% fewer)")
        lines.append("BCD correction (gate-list decomposition): "
                     f"{report['bcd_correction_decomposition']['nmos']} (NMOS)")
        built = report["built_netlists"]
        lines.append(f"BCD adder (full netlist): {built['bcd_adder']} "
                     f"transistors (NMOS)")
        lines.append(f"note: {report['note']}")
        return "\n".join(lines)

    _emit(args, text, report)
    return 0


def _cmd_bcd_check(args) -> int:
    for a in range(10):
        for b in range(10):
            for cin in (0, 1):
                result = adders.bcd_add_digit(a, b, cin)
                if result.digit + 10 * result.carry != a + b + cin:
                    payload = {"passed": False,
                               "counterexample": {"a": a, "b": b, "cin": cin,
                                                  "digit": result.digit,
                                                  "carry": result.carry}}
                    _emit(args, lambda: (
                        f"bcd-check: FAIL at a={a} b={b} cin={cin}: "
                        f"digit={result.digit} carry={result.carry}"), payload)
                    return 1
    _emit(args, lambda: "bcd-check: 200/200 digit cases pass",
          {"passed": True, "cases": 200})
    return 0


def _cmd_compile_expr(args) -> int:
    expr = parse_expr(args.expr)
    if args.expr_only:
        print(format_expr(normalize(expr)))
        return 0
    net = compile_expr(expr, output=args.output)
    sys.stdout.write(write_netlist(net))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="passrev",
        description="switch-level workbench for pass-transistor reversible logic")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(fn=fn)
        p.add_argument("--format", choices=("text", "json"), default="text")
        return p

    p = add("simulate", _cmd_simulate, "settle a circuit under an assignment")
    p.add_argument("circuit")
    p.add_argument("--set", action="append", metavar="NAME=VALUE",
                   help="bind an input (0, 1, Z or X); complement rails "
                        "are filled automatically")

    p = add("truth-table", _cmd_truth_table, "print the exhaustive table")
    p.add_argument("circuit")
    p.add_argument("--machine", action="store_true",
                   help="emit one 'inputs -> outputs' line per row")

    p = add("verify-reversible", _cmd_verify_reversible,
            "check that all output vectors are distinct")
    p.add_argument("circuit")

    p = add("count", _cmd_count, "print the transistor count")
    p.add_argument("circuit")

    add("compare-cost", _cmd_compare_cost,
        "print the NMOS vs CMOS transistor budget comparison")

    add("bcd-check", _cmd_bcd_check,
        "verify all 200 decimal digit additions through the netlist")

    p = add("compile-expr", _cmd_compile_expr,
            "lower a pass expression, e.g. \"y<a&!b> + z<c>\"")
    p.add_argument("expr")
    p.add_argument("--output", default="z", help="output node name")
    p.add_argument("--expr-only", action="store_true",
                   help="print the normalized expression instead of a netlist")

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.fn(args)
    except (NetlistError, ExprSyntaxError, UnboundInputError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SimulationError as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return 1


def entry():
    raise SystemExit(main())


if __name__ == "__main__":
    entry()
