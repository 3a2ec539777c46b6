"""Constant-free first-order formulas: AST, parser, evaluator, enumerator.

The language has relation atoms, equality between variables, the connectives
``~ & | ->`` (binding in that order, tightest first) and the quantifiers
``forall``/``exists``, which extend as far right as possible.  There are no
constant or function symbols, so every leaf is built from variables only.
"""

from __future__ import annotations

import itertools
import re
from collections.abc import Iterator, Mapping
from dataclasses import dataclass
from typing import Union

from .structures import FiniteStructure, Signature
from . import tables


class FormulaError(ValueError):
    """Syntax error, unknown relation, or arity mismatch in a formula."""


class EvaluationError(ValueError):
    """Raised when an assignment does not cover a formula's free variables."""


@dataclass(frozen=True)
class Atom:
    relation: str
    args: tuple[str, ...]


@dataclass(frozen=True)
class Equal:
    left: str
    right: str


@dataclass(frozen=True)
class Not:
    body: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Exists:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class Forall:
    var: str
    body: "Formula"


Formula = Union[Atom, Equal, Not, And, Or, Implies, Exists, Forall]

_BINARY = {And: " & ", Or: " | ", Implies: " -> "}


def free_vars(formula: Formula) -> frozenset[str]:
    if isinstance(formula, Atom):
        return frozenset(formula.args)
    if isinstance(formula, Equal):
        return frozenset((formula.left, formula.right))
    if isinstance(formula, Not):
        return free_vars(formula.body)
    if isinstance(formula, (And, Or, Implies)):
        return free_vars(formula.left) | free_vars(formula.right)
    if isinstance(formula, (Exists, Forall)):
        return free_vars(formula.body) - {formula.var}
    raise TypeError(f"not a formula: {formula!r}")


def depth(formula: Formula) -> int:
    """AST height; atoms are 0, every connective and quantifier adds one."""
    if isinstance(formula, (Atom, Equal)):
        return 0
    if isinstance(formula, Not):
        return 1 + depth(formula.body)
    if isinstance(formula, (And, Or, Implies)):
        return 1 + max(depth(formula.left), depth(formula.right))
    if isinstance(formula, (Exists, Forall)):
        return 1 + depth(formula.body)
    raise TypeError(f"not a formula: {formula!r}")


# --- rendering ---------------------------------------------------------------

# precedence context: 0 admits anything, 1 rules out bare quantifiers,
# 2/3/4 additionally rule out bare ->, |, & respectively
_LEVEL = {Implies: 1, Or: 2, And: 3}


def render_formula(formula: Formula) -> str:
    return _render(formula, 0)


def _render(formula: Formula, context: int) -> str:
    if isinstance(formula, Atom):
        return f"{formula.relation}({','.join(formula.args)})"
    if isinstance(formula, Equal):
        return f"{formula.left} = {formula.right}"
    if isinstance(formula, Not):
        return "~" + _render(formula.body, 4)
    if isinstance(formula, (Exists, Forall)):
        keyword = "exists" if isinstance(formula, Exists) else "forall"
        text = f"{keyword} {formula.var}. {_render(formula.body, 0)}"
        return f"({text})" if context > 0 else text
    level = _LEVEL[type(formula)]
    # the grammar makes -> right-associative and & | left-associative
    if isinstance(formula, Implies):
        text = _render(formula.left, level + 1) + " -> " + _render(formula.right, level)
    else:
        text = _render(formula.left, level) + _BINARY[type(formula)] + _render(formula.right, level + 1)
    return f"({text})" if context > level else text


# --- parsing ------------------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(->|<->|[()=,~&|.]|[A-Za-z_][A-Za-z0-9_]*)")
_KEYWORDS = {"forall", "exists"}


class _Parser:
    def __init__(self, text: str, signature: Signature):
        self.signature = signature
        self.tokens: list[str] = []
        pos = 0
        while pos < len(text):
            match = _TOKEN_RE.match(text, pos)
            if not match:
                if text[pos:].strip():
                    raise FormulaError(f"unexpected character {text[pos:].strip()[0]!r}")
                break
            self.tokens.append(match.group(1))
            pos = match.end()
        self.index = 0

    def peek(self) -> str | None:
        return self.tokens[self.index] if self.index < len(self.tokens) else None

    def take(self) -> str:
        token = self.peek()
        if token is None:
            raise FormulaError("unexpected end of formula")
        self.index += 1
        return token

    def expect(self, token: str) -> None:
        got = self.take()
        if got != token:
            raise FormulaError(f"expected {token!r}, got {got!r}")

    def formula(self) -> Formula:
        if self.peek() in _KEYWORDS:
            keyword = self.take()
            var = self.variable()
            self.expect(".")
            body = self.formula()
            return Exists(var, body) if keyword == "exists" else Forall(var, body)
        return self.iff()

    def iff(self) -> Formula:
        left = self.implication()
        if self.peek() == "<->":
            self.take()
            right = self.iff()
            # biconditional is sugar, not a primitive node
            return And(Implies(left, right), Implies(right, left))
        return left

    def implication(self) -> Formula:
        left = self.disjunction()
        if self.peek() == "->":
            self.take()
            return Implies(left, self.implication())
        return left

    def disjunction(self) -> Formula:
        left = self.conjunction()
        while self.peek() == "|":
            self.take()
            left = Or(left, self.conjunction())
        return left

    def conjunction(self) -> Formula:
        left = self.negation()
        while self.peek() == "&":
            self.take()
            left = And(left, self.negation())
        return left

    def negation(self) -> Formula:
        if self.peek() == "~":
            self.take()
            return Not(self.negation())
        return self.atom()

    def atom(self) -> Formula:
        token = self.take()
        if token == "(":
            inner = self.formula()
            self.expect(")")
            return inner
        if not _is_name(token):
            raise FormulaError(f"expected an atom, got {token!r}")
        if self.peek() == "(":
            self.take()
            args = [self.variable()]
            while self.peek() == ",":
                self.take()
                args.append(self.variable())
            self.expect(")")
            if token not in self.signature:
                raise FormulaError(f"unknown relation {token!r}")
            arity = self.signature.arity(token)
            if arity != len(args):
                raise FormulaError(
                    f"arity mismatch: {token!r} expects {arity} arguments, got {len(args)}"
                )
            return Atom(token, tuple(args))
        self.expect("=")
        right = self.variable()
        return Equal(token, right)

    def variable(self) -> str:
        token = self.take()
        if not _is_name(token):
            raise FormulaError(f"expected a variable, got {token!r}")
        return token


def _is_name(token: str) -> bool:
    return bool(re.match(r"[A-Za-z_][A-Za-z0-9_]*\Z", token)) and token not in _KEYWORDS


def parse_formula(text: str, signature: Signature) -> Formula:
    parser = _Parser(text, signature)
    result = parser.formula()
    if parser.peek() is not None:
        raise FormulaError(f"trailing input at {parser.peek()!r}")
    return result


# --- evaluation ----------------------------------------------------------------


def evaluate(structure: FiniteStructure, formula: Formula, assignment: Mapping[str, str]) -> bool:
    """Classical satisfaction over the structure's universe."""
    if isinstance(formula, Atom):
        values = tuple(_lookup(assignment, v) for v in formula.args)
        return values in structure.tuples(formula.relation)
    if isinstance(formula, Equal):
        return _lookup(assignment, formula.left) == _lookup(assignment, formula.right)
    if isinstance(formula, Not):
        return not evaluate(structure, formula.body, assignment)
    if isinstance(formula, And):
        return evaluate(structure, formula.left, assignment) and evaluate(structure, formula.right, assignment)
    if isinstance(formula, Or):
        return evaluate(structure, formula.left, assignment) or evaluate(structure, formula.right, assignment)
    if isinstance(formula, Implies):
        return (not evaluate(structure, formula.left, assignment)) or evaluate(
            structure, formula.right, assignment
        )
    if isinstance(formula, (Exists, Forall)):
        extended = dict(assignment)
        results = []
        for element in structure.universe:
            extended[formula.var] = element
            results.append(evaluate(structure, formula.body, extended))
        return any(results) if isinstance(formula, Exists) else all(results)
    raise TypeError(f"not a formula: {formula!r}")


def _lookup(assignment: Mapping[str, str], var: str) -> str:
    try:
        return assignment[var]
    except KeyError:
        raise EvaluationError(f"assignment does not cover free variable {var!r}") from None


# --- enumeration -----------------------------------------------------------------


def enumerate_formulas(
    signature: Signature,
    free_var_count: int,
    max_depth: int,
    structure: FiniteStructure | None = None,
) -> Iterator[Formula]:
    """All formulas with free variables exactly ``x1..xn`` and depth <= d.

    Bound variables come from the pool ``y1..yd`` and are named canonically
    (each quantifier binds the highest-index pool variable free in its body),
    so each alpha-equivalence class appears once.  Conjunctions and
    disjunctions are generated as unordered pairs, which prunes commutative
    duplicates.  The order is deterministic: formulas appear by depth layer,
    within a layer by operator (``exists forall ~ & | ->``) and operand index.

    With ``structure`` given, the sequence is deduplicated semantically:
    only the first formula realizing each truth table over the structure is
    kept (a table first realized by an open formula, one with a leftover
    bound-pool variable, is represented by that route and not re-yielded).
    """
    if free_var_count < 1:
        raise ValueError("free_var_count must be >= 1")
    if max_depth < 0:
        raise ValueError("max_depth must be >= 0")
    xs = tuple(f"x{i}" for i in range(1, free_var_count + 1))
    pool = tuple(f"y{i}" for i in range(1, max_depth + 1))
    target = frozenset(xs)
    if structure is None:
        for formula, _ in _syntactic_items(signature, xs, pool, max_depth):
            if free_vars(formula) == target:
                yield formula
    else:
        for item in semantic_items(structure, xs, pool, max_depth):
            if item.free == target:
                yield item.formula


def _atoms(signature: Signature, variables: tuple[str, ...]) -> Iterator[Formula]:
    for name, arity in signature.relations:
        for args in itertools.product(variables, repeat=arity):
            yield Atom(name, args)
    for left in variables:
        for right in variables:
            yield Equal(left, right)


_Descriptor = tuple  # (tag, operand index, second index / bound variable / None)


def _layer_descriptors(
    depths: list[int], frees: list[frozenset[str]], layer: int, pool: tuple[str, ...]
) -> Iterator[_Descriptor]:
    """Exact-depth-``layer`` candidates over already-emitted formula indices,
    in the canonical order: quantifiers, negation, then the binary
    connectives by operand index.  ``semantic_items`` mirrors this order with
    its own candidate loop (it additionally prunes by table dependencies)."""
    prev = [i for i, d in enumerate(depths) if d == layer - 1]
    pool_index = {v: k for k, v in enumerate(pool)}
    for tag in ("exists", "forall"):
        for i in prev:
            bindable = [v for v in frees[i] if v in pool_index]
            if bindable:
                yield (tag, i, max(bindable, key=pool_index.__getitem__))
    for i in prev:
        yield ("not", i, None)
    for tag in ("and", "or"):
        for j in prev:
            for i in range(j + 1):
                yield (tag, i, j)
    for j in prev:
        for i in range(len(depths)):
            yield ("implies", i, j)
    shallow = [i for i, d in enumerate(depths) if d < layer - 1]
    for i in prev:
        for j in shallow:
            yield ("implies", i, j)


_NODE_CTOR = {"not": Not, "and": And, "or": Or, "implies": Implies, "exists": Exists, "forall": Forall}


def _build_node(descriptor: _Descriptor, formulas: list[Formula]) -> Formula:
    tag, first, second = descriptor
    if tag == "not":
        return Not(formulas[first])
    if tag in ("exists", "forall"):
        return _NODE_CTOR[tag](second, formulas[first])
    return _NODE_CTOR[tag](formulas[first], formulas[second])


def _syntactic_items(
    signature: Signature, xs: tuple[str, ...], pool: tuple[str, ...], max_depth: int
) -> Iterator[tuple[Formula, int]]:
    variables = xs + pool
    formulas: list[Formula] = []
    depths: list[int] = []
    frees: list[frozenset[str]] = []

    def push(formula: Formula, layer: int) -> None:
        formulas.append(formula)
        depths.append(layer)
        frees.append(free_vars(formula))

    for atom in _atoms(signature, variables):
        push(atom, 0)
        yield atom, 0
    for layer in range(1, max_depth + 1):
        snapshot_depths = list(depths)
        snapshot_frees = list(frees)
        for descriptor in _layer_descriptors(snapshot_depths, snapshot_frees, layer, pool):
            formula = _build_node(descriptor, formulas)
            push(formula, layer)
            yield formula, layer


@dataclass(frozen=True)
class SemanticItem:
    """A representative formula with its truth table over one structure.

    ``table`` covers assignments of ``xs + pool`` into the universe, encoded
    per :mod:`uniline.tables`.  ``open_vars`` lists the pool variables the
    table actually varies along; the formula may mention further pool
    variables vacuously.
    """

    formula: Formula
    table: int
    depth: int
    free: frozenset[str]
    open_vars: tuple[str, ...]


def variable_axes(xs: tuple[str, ...], pool: tuple[str, ...]) -> dict[str, int]:
    return {v: i for i, v in enumerate(xs + pool)}


def semantic_items(
    structure: FiniteStructure,
    xs: tuple[str, ...],
    pool: tuple[str, ...],
    max_depth: int,
) -> Iterator[SemanticItem]:
    """Stream of first-per-truth-table formulas within the depth bound.

    Combination candidates at each depth layer are built from previously kept
    representatives only, quantifying over every pool variable a table
    depends on.  A table reached at depth ``k`` that depends on ``j`` pool
    variables still needs ``j`` enclosing quantifiers before it can occur in
    a formula whose free variables are the ``xs`` alone, so candidates with
    ``k + j`` beyond the bound are dropped; the stream then realizes exactly
    the truth tables of all closable formulas within the bound.  Order is
    deterministic: by layer, within a layer quantifiers first, then ``~ & |
    ->`` by operand index.
    """
    axes = variable_axes(xs, pool)
    spc = tables.space(structure.size(), len(axes))
    position = {element: i for i, element in enumerate(structure.universe)}
    rel_tables: dict[str, frozenset[tuple[int, ...]]] = {
        name: frozenset(tuple(position[e] for e in t) for t in structure.tuples(name))
        for name in structure.signature.names()
    }

    def atom_table(formula: Formula) -> int:
        if isinstance(formula, Atom):
            return spc.relation_table(rel_tables[formula.relation], tuple(axes[v] for v in formula.args))
        assert isinstance(formula, Equal)
        return spc.equality_table(axes[formula.left], axes[formula.right])

    formulas: list[Formula] = []
    depths: list[int] = []
    frees: list[frozenset[str]] = []
    opens: list[tuple[str, ...]] = []
    tabs: list[int] = []
    seen: set[int] = set()

    def consider(builder, table: int, layer: int, syn_free: frozenset[str]) -> SemanticItem | None:
        if table in seen:
            return None
        open_vars = tuple(
            v for v in pool if v in syn_free and not spc.constant_along(table, axes[v])
        )
        if layer + len(open_vars) > max_depth:
            return None
        seen.add(table)
        formula = builder()
        formulas.append(formula)
        depths.append(layer)
        frees.append(syn_free)
        opens.append(open_vars)
        tabs.append(table)
        return SemanticItem(formula, table, layer, syn_free, open_vars)

    for atom in _atoms(structure.signature, xs + pool):
        item = consider(lambda a=atom: a, atom_table(atom), 0, free_vars(atom))
        if item:
            yield item

    for layer in range(1, max_depth + 1):
        count = len(formulas)
        prev = [i for i in range(count) if depths[i] == layer - 1]
        for quantifier, fold in (("exists", spc.exists), ("forall", spc.forall)):
            ctor = Exists if quantifier == "exists" else Forall
            for i in prev:
                for var in opens[i]:
                    item = consider(
                        lambda c=ctor, v=var, k=i: c(v, formulas[k]),
                        fold(tabs[i], axes[var]),
                        layer,
                        frees[i] - {var},
                    )
                    if item:
                        yield item
        for i in prev:
            item = consider(
                lambda k=i: Not(formulas[k]), spc.negate(tabs[i]), layer, frees[i]
            )
            if item:
                yield item
        for ctor, combine in ((And, spc.conjoin), (Or, spc.disjoin)):
            for j in prev:
                tab_j = tabs[j]
                free_j = frees[j]
                for i in range(j + 1):
                    item = consider(
                        lambda c=ctor, a=i, b=j: c(formulas[a], formulas[b]),
                        combine(tabs[i], tab_j),
                        layer,
                        frees[i] | free_j,
                    )
                    if item:
                        yield item
        for j in prev:
            tab_j = tabs[j]
            free_j = frees[j]
            for i in range(count):
                item = consider(
                    lambda a=i, b=j: Implies(formulas[a], formulas[b]),
                    spc.implication(tabs[i], tab_j),
                    layer,
                    frees[i] | free_j,
                )
                if item:
                    yield item
        shallow = [i for i in range(count) if depths[i] < layer - 1]
        for i in prev:
            tab_i = tabs[i]
            free_i = frees[i]
            for j in shallow:
                item = consider(
                    lambda a=i, b=j: Implies(formulas[a], formulas[b]),
                    spc.implication(tab_i, tabs[j]),
                    layer,
                    free_i | frees[j],
                )
                if item:
                    yield item
