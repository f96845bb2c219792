"""Algebra of pass-transistor network terms.

A term is either a single conducting branch ``Pass(source, ctl)`` — the
pass signal ``source`` reaches the output whenever the control expression
is true — or a ``Sum`` of terms whose branches join on one output node.
Control expressions are literals combined in series (``CtlAnd``) or in
parallel over a common input (``CtlOr``).

The laws the hardware obeys are the ones implemented here: appending a
series switch distributes into every branch as a conjunction, parallel
branches with a common source collapse ORs, and joining branches is the
signal-lattice merge (commutative, associative, idempotent, absorbing).
``normalize`` rewrites any term into a canonical flat sum of literal
chains, which :func:`compile_expr` lowers one transistor per literal.

Text syntax, accepted by :func:`parse_expr` and emitted by
:func:`format_expr`::

    expr    := term ('+' term)*
    term    := (leaf | '(' expr ')') ('<' ctl '>')*    # postfix = series
    leaf    := NAME '<' ctl '>'
    ctl     := and_part ('|' and_part)*
    and_part:= atom ('&' atom)*
    atom    := '!'? NAME | '(' ctl ')'
"""

import itertools
import re
from dataclasses import dataclass
from typing import Mapping, Union

from . import netlist as nl
from .signals import Signal, merge, pass_through


class ExprSyntaxError(ValueError):
    """Raised for unparseable expression text."""


class UnboundVariableError(KeyError):
    """An evaluation assignment misses a variable used by the term."""


@dataclass(frozen=True)
class Lit:
    name: str
    negated: bool = False


@dataclass(frozen=True)
class CtlAnd:
    terms: tuple

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))


@dataclass(frozen=True)
class CtlOr:
    terms: tuple

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))
        if not self.terms:
            raise ValueError("parallel control group cannot be empty")


CtlExpr = Union[Lit, CtlAnd, CtlOr]

CTL_TRUE = CtlAnd(())   # empty series: always conducting


@dataclass(frozen=True)
class Pass:
    source: str
    ctl: CtlExpr


@dataclass(frozen=True)
class Sum:
    terms: tuple

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))
        if not self.terms:
            raise ValueError("sum of branches cannot be empty")


PassExpr = Union[Pass, Sum]


def series(expr: PassExpr, more: CtlExpr) -> PassExpr:
    """Gate the whole network behind an extra series control.

    Distributes into every branch as a conjunction; sum structure is
    preserved, so series over a sum equals the sum of series terms.
    """
    if more == CTL_TRUE:
        return expr
    if isinstance(expr, Sum):
        return Sum(tuple(series(t, more) for t in expr.terms))
    return Pass(expr.source, CtlAnd((expr.ctl, more)))


def eval_ctl(ctl: CtlExpr, assign: Mapping[str, int]) -> int:
    if isinstance(ctl, Lit):
        try:
            bit = assign[ctl.name]
        except KeyError:
            raise UnboundVariableError(ctl.name) from None
        if bit not in (0, 1):
            raise ValueError(f"control variable {ctl.name!r} must be 0 or 1")
        return bit ^ 1 if ctl.negated else bit
    if isinstance(ctl, CtlAnd):
        return int(all(eval_ctl(t, assign) for t in ctl.terms))
    return int(any(eval_ctl(t, assign) for t in ctl.terms))


def eval_expr(expr: PassExpr, ctl_assign: Mapping[str, int],
              pass_assign: Mapping[str, Signal]) -> Signal:
    """Value reaching the output node: conducting branches merged, others Z."""
    if isinstance(expr, Sum):
        value = Signal.Z
        for term in expr.terms:
            value = merge(value, eval_expr(term, ctl_assign, pass_assign))
        return value
    try:
        source = pass_assign[expr.source]
    except KeyError:
        raise UnboundVariableError(expr.source) from None
    return pass_through(source, eval_ctl(expr.ctl, ctl_assign))


# ---------------------------------------------------------------------------
# Normal form

def _ctl_monomials(ctl: CtlExpr) -> set:
    """Expand a control expression into a set of literal-set monomials."""
    if isinstance(ctl, Lit):
        return {frozenset((ctl,))}
    if isinstance(ctl, CtlAnd):
        monomials = {frozenset()}
        for term in ctl.terms:
            monomials = {a | b for a in monomials for b in _ctl_monomials(term)}
        return monomials
    result = set()
    for term in ctl.terms:
        result |= _ctl_monomials(term)
    return result


def _leaves(expr: PassExpr) -> list:
    if isinstance(expr, Sum):
        return [leaf for term in expr.terms for leaf in _leaves(term)]
    return [expr]


def _lit_key(lit: Lit):
    return (lit.name, lit.negated)


def normalize(expr: PassExpr) -> PassExpr:
    """Rewrite into the canonical flat sum of literal-chain branches.

    ORs are distributed out, nested sums flattened, literals within a
    branch deduplicated and sorted, absorbed branches dropped (a branch
    conducts redundantly when another branch with the same source conducts
    on a subset of its literals), and branches sorted.  Evaluation is
    unchanged for every assignment.
    """
    branches = set()
    for leaf in _leaves(expr):
        for monomial in _ctl_monomials(leaf.ctl):
            branches.add((leaf.source, monomial))
    kept = []
    for source, lits in branches:
        if any(src == source and other < lits for src, other in branches):
            continue
        kept.append((source, tuple(sorted(lits, key=_lit_key))))
    kept.sort(key=lambda b: (b[0], tuple(_lit_key(l) for l in b[1])))
    return Sum(tuple(Pass(source, CtlAnd(lits)) for source, lits in kept))


def expr_variables(expr: PassExpr):
    """Sorted control and pass variable names used by the term."""
    ctl_vars = set()
    pass_vars = set()

    def walk_ctl(ctl):
        if isinstance(ctl, Lit):
            ctl_vars.add(ctl.name)
        else:
            for term in ctl.terms:
                walk_ctl(term)

    for leaf in _leaves(expr):
        pass_vars.add(leaf.source)
        walk_ctl(leaf.ctl)
    return sorted(ctl_vars), sorted(pass_vars)


def expr_table(expr: PassExpr) -> dict:
    """Signal reaching the output for every binary assignment.

    Keys are ``(ctl_bits, pass_bits)`` over the sorted variable lists from
    :func:`expr_variables`; values may be ``Z`` (nothing conducts) or ``X``
    (two branches fight), which is exactly what the lowered netlist shows.
    """
    ctl_vars, pass_vars = expr_variables(expr)
    table = {}
    for ctl_bits in itertools.product((0, 1), repeat=len(ctl_vars)):
        ctl_assign = dict(zip(ctl_vars, ctl_bits))
        for pass_bits in itertools.product((0, 1), repeat=len(pass_vars)):
            pass_assign = {v: Signal.from_bit(b)
                           for v, b in zip(pass_vars, pass_bits)}
            table[(ctl_bits, pass_bits)] = eval_expr(expr, ctl_assign, pass_assign)
    return table


# ---------------------------------------------------------------------------
# Lowering

def compile_expr(expr: PassExpr, output: str = "z") -> nl.Netlist:
    """Lower a term to a netlist driving ``output``.

    The term is normalized first.  Each branch becomes a series chain of
    one transistor per literal from its source node through fresh internal
    nodes to the output; branches attach to the output in parallel.  No
    internal nodes are shared between branches, so the transistor count is
    exactly the total literal count.  Control variables become control
    inputs (with a complement rail when a negated literal needs it), pass
    sources become pass inputs.
    """
    normal = normalize(expr)
    ctl_vars, pass_vars = expr_variables(normal)
    negated = {lit.name
               for leaf in normal.terms for lit in leaf.ctl.terms if lit.negated}
    if output in set(ctl_vars) | set(pass_vars):
        raise nl.NetlistError(f"output node {output!r} collides with a variable")

    nodes = {output}
    control_inputs = []
    rail_pairs = []
    for var in ctl_vars:
        nodes.add(var)
        control_inputs.append(var)
        if var in negated:
            nodes.add("~" + var)
            control_inputs.append("~" + var)
            rail_pairs.append((var, "~" + var))
    pass_inputs = [var for var in pass_vars if var not in set(ctl_vars)]
    nodes.update(pass_inputs)

    transistors = []
    for index, leaf in enumerate(normal.terms):
        lits = leaf.ctl.terms
        if not lits:
            raise nl.NetlistError(
                f"branch from {leaf.source!r} conducts unconditionally and "
                f"cannot be lowered to switches")
        previous = leaf.source
        for step, lit in enumerate(lits):
            gate = ("~" + lit.name) if lit.negated else lit.name
            if step == len(lits) - 1:
                nxt = output
            else:
                nxt = f"{output}.{index}.{step}"
                nodes.add(nxt)
            transistors.append(nl.Transistor(gate, previous, nxt))
            previous = nxt

    return nl.Netlist(nodes, transistors, pass_inputs, control_inputs,
                      (output,), rail_pairs)


# ---------------------------------------------------------------------------
# Text syntax

_TOKEN = re.compile(r"\s*([A-Za-z_][A-Za-z0-9_]*|[<>&|!+()])")


def _tokenize(text: str) -> list:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise ExprSyntaxError(
                    f"unexpected character {text[pos:].strip()[0]!r}")
            break
        tokens.append(m.group(1))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self, expected=None):
        token = self.peek()
        if token is None:
            raise ExprSyntaxError("unexpected end of expression")
        if expected is not None and token != expected:
            raise ExprSyntaxError(f"expected {expected!r}, found {token!r}")
        self.pos += 1
        return token

    def expr(self) -> PassExpr:
        terms = [self.term()]
        while self.peek() == "+":
            self.take()
            terms.append(self.term())
        return terms[0] if len(terms) == 1 else Sum(tuple(terms))

    def term(self) -> PassExpr:
        if self.peek() == "(":
            self.take()
            node = self.expr()
            self.take(")")
        else:
            name = self.name()
            self.take("<")
            node = Pass(name, self.ctl())
            self.take(">")
        while self.peek() == "<":
            self.take()
            node = series(node, self.ctl())
            self.take(">")
        return node

    def ctl(self) -> CtlExpr:
        parts = [self.and_part()]
        while self.peek() == "|":
            self.take()
            parts.append(self.and_part())
        return parts[0] if len(parts) == 1 else CtlOr(tuple(parts))

    def and_part(self) -> CtlExpr:
        atoms = [self.atom()]
        while self.peek() == "&":
            self.take()
            atoms.append(self.atom())
        return atoms[0] if len(atoms) == 1 else CtlAnd(tuple(atoms))

    def atom(self) -> CtlExpr:
        if self.peek() == "(":
            self.take()
            inner = self.ctl()
            self.take(")")
            return inner
        if self.peek() == "!":
            self.take()
            return Lit(self.name(), negated=True)
        return Lit(self.name())

    def name(self) -> str:
        token = self.take()
        if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", token):
            raise ExprSyntaxError(f"expected a name, found {token!r}")
        return token


def parse_expr(text: str) -> PassExpr:
    parser = _Parser(_tokenize(text))
    expr = parser.expr()
    if parser.peek() is not None:
        raise ExprSyntaxError(f"trailing input at {parser.peek()!r}")
    return expr


def format_expr(expr: PassExpr) -> str:
    """Render in the same syntax :func:`parse_expr` accepts."""
    if isinstance(expr, Sum):
        return " + ".join(format_expr(t) for t in expr.terms)
    return f"{expr.source}<{_format_ctl(expr.ctl)}>"


def _format_ctl(ctl: CtlExpr) -> str:
    if isinstance(ctl, Lit):
        return ("!" if ctl.negated else "") + ctl.name
    if isinstance(ctl, CtlAnd):
        if not ctl.terms:
            raise ValueError("the always-true control has no text form")
        parts = []
        for term in ctl.terms:
            text = _format_ctl(term)
            parts.append(f"({text})" if isinstance(term, CtlOr) else text)
        return "&".join(parts)
    return "|".join(_format_ctl(t) for t in ctl.terms)
