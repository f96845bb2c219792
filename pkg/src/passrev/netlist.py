"""Structural netlist model: nodes, pass transistors, ports, composition.

A :class:`Netlist` is an immutable value.  Builders (:func:`add_node`,
:func:`add_transistor`, :func:`instantiate`) return new netlists and never
mutate their arguments, so built circuits can be shared freely.

Transistors are undirected switches: ``source`` and ``drain`` are naming
conventions only, conduction goes both ways.  Dual-rail complements are
declared with ``rail_pairs`` so that tooling can derive the low rail of an
input from the high rail and check that complementary nodes settle to
opposite values.

The module also owns the technology cost table: per-gate transistor counts
for the NMOS pass-transistor construction and for a conventional CMOS
transmission-gate baseline.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Mapping, Optional, Sequence


class NetlistError(ValueError):
    """Raised for malformed netlists, bad compositions, or bad text input."""


@dataclass(frozen=True)
class Transistor:
    """One NMOS switch: ``gate`` carries the control signal, the
    ``source``/``drain`` channel carries the pass signal bidirectionally."""

    gate: str
    source: str
    drain: str


@dataclass(frozen=True)
class Netlist:
    nodes: frozenset = field(default_factory=frozenset)
    transistors: tuple = ()
    pass_inputs: tuple = ()
    control_inputs: tuple = ()
    outputs: tuple = ()
    rail_pairs: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "nodes", frozenset(self.nodes))
        object.__setattr__(self, "transistors", tuple(self.transistors))
        object.__setattr__(self, "pass_inputs", tuple(self.pass_inputs))
        object.__setattr__(self, "control_inputs", tuple(self.control_inputs))
        object.__setattr__(self, "outputs", tuple(self.outputs))
        object.__setattr__(self, "rail_pairs",
                           tuple((a, b) for a, b in self.rail_pairs))
        self._validate()

    def _validate(self):
        for name in self.nodes:
            if not name:
                raise NetlistError("node names must be non-empty")
        for ports, label in ((self.pass_inputs, "pass input"),
                             (self.control_inputs, "control input"),
                             (self.outputs, "output")):
            seen = set()
            for name in ports:
                if name not in self.nodes:
                    raise NetlistError(f"{label} {name!r} is not a declared node")
                if name in seen:
                    raise NetlistError(f"duplicate {label} {name!r}")
                seen.add(name)
        overlap = set(self.pass_inputs) & set(self.control_inputs)
        if overlap:
            # inputs may double as outputs (wire-through), but a node cannot
            # be both kinds of input
            raise NetlistError(
                f"nodes declared both pass and control input: {sorted(overlap)}")
        partner = {}
        for a, b in self.rail_pairs:
            if a not in self.nodes or b not in self.nodes:
                raise NetlistError(f"rail pair ({a}, {b}) references unknown node")
            if a == b:
                raise NetlistError(f"node {a!r} cannot be its own complement")
            for n, p in ((a, b), (b, a)):
                if partner.get(n, p) != p:
                    raise NetlistError(f"node {n!r} appears in two rail pairs")
                partner[n] = p
        for t in self.transistors:
            if t.source == t.drain:
                raise NetlistError(
                    f"transistor gated by {t.gate!r} shorts {t.source!r} to itself")
            for term in (t.gate, t.source, t.drain):
                if term not in self.nodes:
                    raise NetlistError(f"transistor references unknown node {term!r}")

    @property
    def ports(self) -> tuple:
        """All externally bindable nodes, in declaration order, deduplicated."""
        seen = []
        for name in self.pass_inputs + self.control_inputs + self.outputs:
            if name not in seen:
                seen.append(name)
        return tuple(seen)


def rail_map(netlist: Netlist) -> dict:
    """Symmetric node -> complement-node lookup for all declared rail pairs."""
    pairs = {}
    for a, b in netlist.rail_pairs:
        pairs[a] = b
        pairs[b] = a
    return pairs


def primary_inputs(netlist: Netlist) -> tuple:
    """Declared inputs with complement rails dropped.

    Control inputs come first, then pass inputs; within the combined list a
    node is kept only if its rail partner has not already been kept, so a
    dual-rail circuit enumerates one rail per signal.
    """
    return _first_of_each_pair(netlist.control_inputs + netlist.pass_inputs, netlist)


def primary_outputs(netlist: Netlist) -> tuple:
    """Declared outputs with complement rails dropped (first of each pair wins)."""
    return _first_of_each_pair(netlist.outputs, netlist)


def _first_of_each_pair(names: Sequence[str], netlist: Netlist) -> tuple:
    partner = rail_map(netlist)
    kept = []
    for name in names:
        if partner.get(name) in kept:
            continue
        kept.append(name)
    return tuple(kept)


def add_node(netlist: Netlist, name: str) -> Netlist:
    if name in netlist.nodes:
        raise NetlistError(f"node {name!r} already declared")
    return Netlist(netlist.nodes | {name}, netlist.transistors,
                   netlist.pass_inputs, netlist.control_inputs,
                   netlist.outputs, netlist.rail_pairs)


def add_transistor(netlist: Netlist, gate: str, source: str, drain: str) -> Netlist:
    """Append one switch; all three terminals must already be declared."""
    return Netlist(netlist.nodes,
                   netlist.transistors + (Transistor(gate, source, drain),),
                   netlist.pass_inputs, netlist.control_inputs,
                   netlist.outputs, netlist.rail_pairs)


def transistor_count(netlist: Netlist) -> int:
    return len(netlist.transistors)


def instantiate(parent: Netlist, child: Netlist,
                binding: Mapping[str, str], prefix: Optional[str] = None) -> Netlist:
    """Embed ``child`` into ``parent``, returning the combined netlist.

    ``binding`` maps every child port to an existing parent node.  Child
    internal nodes are renamed under ``prefix`` so repeated instantiation
    cannot collide; rail pairings survive the renaming.  The parent's own
    port declarations are unchanged.
    """
    ports = set(child.ports)
    missing = ports - set(binding)
    if missing:
        raise NetlistError(f"binding does not cover child ports: {sorted(missing)}")
    unknown = set(binding) - set(child.nodes)
    if unknown:
        raise NetlistError(f"binding names unknown child nodes: {sorted(unknown)}")
    for port, node in binding.items():
        if node not in parent.nodes:
            raise NetlistError(
                f"child port {port!r} bound to unknown parent node {node!r}")
        if port not in ports:
            raise NetlistError(f"bound child node {port!r} is not a port")

    if prefix is None:
        prefix = f"u{len(parent.transistors)}/"
    remap = dict(binding)
    new_nodes = set(parent.nodes)
    for name in sorted(child.nodes - ports):
        fresh = prefix + name
        if fresh in new_nodes:
            raise NetlistError(f"internal node rename collides: {fresh!r}")
        remap[name] = fresh
        new_nodes.add(fresh)

    transistors = parent.transistors + tuple(
        Transistor(remap[t.gate], remap[t.source], remap[t.drain])
        for t in child.transistors)

    pairs = list(parent.rail_pairs)
    known = {frozenset(p) for p in pairs}
    partner = rail_map(parent)
    for a, b in child.rail_pairs:
        ra, rb = remap[a], remap[b]
        if frozenset((ra, rb)) in known:
            continue
        for n, p in ((ra, rb), (rb, ra)):
            if partner.get(n, p) != p:
                raise NetlistError(
                    f"instantiation pairs {n!r} with two different rails")
            partner[n] = p
        pairs.append((ra, rb))
        known.add(frozenset((ra, rb)))

    return Netlist(new_nodes, transistors, parent.pass_inputs,
                   parent.control_inputs, parent.outputs, pairs)


# ---------------------------------------------------------------------------
# Technology cost table

class Technology(Enum):
    NMOS = "nmos"
    CMOS = "cmos"


@dataclass(frozen=True)
class TechLibrary:
    """Per-gate transistor counts for each technology.

    Keys are gate kind names.  Every kind present in both columns must cost
    no more in NMOS than in CMOS; kinds without an entry in a technology
    cannot be priced there.
    """

    nmos: Mapping[str, int]
    cmos: Mapping[str, int]

    def __post_init__(self):
        object.__setattr__(self, "nmos", dict(self.nmos))
        object.__setattr__(self, "cmos", dict(self.cmos))
        for table in (self.nmos, self.cmos):
            for kind, count in table.items():
                if not isinstance(count, int) or count < 0:
                    raise NetlistError(
                        f"transistor count for {kind} must be a non-negative "
                        f"integer, got {count!r}")
        for kind in self.nmos.keys() & self.cmos.keys():
            if self.nmos[kind] > self.cmos[kind]:
                raise NetlistError(
                    f"NMOS count for {kind} exceeds the CMOS count")

    def counts(self, tech: Technology) -> Mapping[str, int]:
        return self.nmos if tech is Technology.NMOS else self.cmos

    def gate_cost(self, kind: str, tech: Technology) -> int:
        table = self.counts(tech)
        if kind not in table:
            raise NetlistError(f"no {tech.value.upper()} entry for gate kind {kind!r}")
        return table[kind]


DEFAULT_TECH_LIBRARY = TechLibrary(
    nmos={"NOT": 0, "CNOT": 4, "CCNOT": 10, "FREDKIN": 8, "NPG": 4},
    cmos={"NOT": 0, "CNOT": 8, "CCNOT": 16, "FREDKIN": 16},
)


def circuit_cost(kinds: Iterable[str], tech: Technology,
                 library: TechLibrary = DEFAULT_TECH_LIBRARY) -> int:
    """Total transistor count of a list of gate kinds in one technology."""
    return sum(library.gate_cost(kind, tech) for kind in kinds)


# ---------------------------------------------------------------------------
# Text format
#
# One statement per line:
#   node <name>          declare a node
#   input.pass <name>    declare a pass-signal input port
#   input.ctl <name>     declare a control-signal input port
#   output <name>        declare an output port
#   rail <name> <name>   declare a dual-rail complement pair
#   t <gate> <source> <drain>
# '#' begins a comment.  write_netlist emits a canonical ordering that
# parse_netlist reads back to an identical value.

def parse_netlist(text: str) -> Netlist:
    nodes = set()
    transistors = []
    pass_inputs = []
    control_inputs = []
    outputs = []
    rail_pairs = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        stmt, args = fields[0], fields[1:]
        try:
            if stmt == "node" and len(args) == 1:
                nodes.add(args[0])
            elif stmt == "input.pass" and len(args) == 1:
                nodes.add(args[0])
                pass_inputs.append(args[0])
            elif stmt == "input.ctl" and len(args) == 1:
                nodes.add(args[0])
                control_inputs.append(args[0])
            elif stmt == "output" and len(args) == 1:
                nodes.add(args[0])
                outputs.append(args[0])
            elif stmt == "rail" and len(args) == 2:
                rail_pairs.append((args[0], args[1]))
            elif stmt == "t" and len(args) == 3:
                transistors.append(Transistor(*args))
            else:
                raise NetlistError(f"unrecognized statement {line!r}")
        except NetlistError as exc:
            raise NetlistError(f"line {lineno}: {exc}") from None
    try:
        return Netlist(nodes, transistors, pass_inputs, control_inputs,
                       outputs, rail_pairs)
    except NetlistError as exc:
        raise NetlistError(f"invalid netlist: {exc}") from None


def write_netlist(netlist: Netlist) -> str:
    """Render the canonical text form: sorted nodes, then ports, rails and
    transistors in declaration order."""
    lines = [f"node {name}" for name in sorted(netlist.nodes)]
    lines += [f"input.pass {name}" for name in netlist.pass_inputs]
    lines += [f"input.ctl {name}" for name in netlist.control_inputs]
    lines += [f"output {name}" for name in netlist.outputs]
    lines += [f"rail {a} {b}" for a, b in netlist.rail_pairs]
    lines += [f"t {t.gate} {t.source} {t.drain}" for t in netlist.transistors]
    return "\n".join(lines) + "\n"
