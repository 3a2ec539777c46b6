from __future__ import annotations

import itertools

import pytest

from uniline.formulas import (
    And,
    Atom,
    Equal,
    EvaluationError,
    Exists,
    Forall,
    FormulaError,
    Implies,
    Not,
    Or,
    depth,
    enumerate_formulas,
    evaluate,
    free_vars,
    parse_formula,
    render_formula,
    semantic_items,
)
from uniline.structures import Signature

SIG = Signature.of(lt=2)


class TestParsing:
    def test_quantified_atom(self):
        formula = parse_formula("exists y. lt(y,x)", SIG)
        assert formula == Exists("y", Atom("lt", ("y", "x")))
        assert free_vars(formula) == {"x"}

    def test_closed_formula(self):
        formula = parse_formula("forall x. x = x", SIG)
        assert formula == Forall("x", Equal("x", "x"))
        assert free_vars(formula) == frozenset()

    def test_arity_mismatch(self):
        with pytest.raises(FormulaError, match="arity mismatch"):
            parse_formula("lt(x)", SIG)

    def test_unknown_relation(self):
        with pytest.raises(FormulaError, match="unknown relation"):
            parse_formula("gt(x,y)", SIG)

    def test_free_variables_are_legal(self):
        assert free_vars(parse_formula("lt(u,v)", SIG)) == {"u", "v"}

    def test_precedence(self):
        formula = parse_formula("~lt(x,y) & lt(y,x) | x = y -> lt(x,x)", SIG)
        assert formula == Implies(
            Or(And(Not(Atom("lt", ("x", "y"))), Atom("lt", ("y", "x"))), Equal("x", "y")),
            Atom("lt", ("x", "x")),
        )

    def test_implication_right_associative(self):
        formula = parse_formula("lt(x,y) -> lt(y,x) -> x = y", SIG)
        assert formula == Implies(
            Atom("lt", ("x", "y")), Implies(Atom("lt", ("y", "x")), Equal("x", "y"))
        )

    def test_quantifier_extends_right(self):
        formula = parse_formula("forall x. lt(x,y) | x = y", SIG)
        assert formula == Forall("x", Or(Atom("lt", ("x", "y")), Equal("x", "y")))

    def test_biconditional_is_derived(self):
        formula = parse_formula("lt(x,y) <-> lt(y,x)", SIG)
        a, b = Atom("lt", ("x", "y")), Atom("lt", ("y", "x"))
        assert formula == And(Implies(a, b), Implies(b, a))

    def test_syntax_error(self):
        with pytest.raises(FormulaError):
            parse_formula("lt(x,,y)", SIG)
        with pytest.raises(FormulaError):
            parse_formula("exists . lt(x,y)", SIG)


class TestRendering:
    def test_round_trip_on_enumerated(self):
        for formula in itertools.islice(enumerate_formulas(SIG, 1, 2), 500):
            assert parse_formula(render_formula(formula), SIG) == formula

    def test_round_trip_preserves_association(self):
        left = And(And(Equal("x", "x"), Equal("y", "y")), Equal("z", "z"))
        right = And(Equal("x", "x"), And(Equal("y", "y"), Equal("z", "z")))
        assert parse_formula(render_formula(left), SIG) == left
        assert parse_formula(render_formula(right), SIG) == right
        assert render_formula(left) != render_formula(right)

    def test_nested_quantifier_needs_parens(self):
        formula = And(Exists("y", Atom("lt", ("y", "x"))), Equal("x", "x"))
        assert parse_formula(render_formula(formula), SIG) == formula


class TestEvaluation:
    def test_chain3_successor(self, chain3):
        formula = parse_formula("exists y. lt(y,x)", SIG)
        assert evaluate(chain3, formula, {"x": "a"}) is False
        assert evaluate(chain3, formula, {"x": "c"}) is True

    def test_identity_always_true(self, chain3):
        formula = parse_formula("x = x", SIG)
        for element in chain3.universe:
            assert evaluate(chain3, formula, {"x": element}) is True

    def test_totality_of_chain(self, chain3):
        formula = parse_formula("forall y. (y = x | lt(x,y) | lt(y,x))", SIG)
        assert evaluate(chain3, formula, {"x": "b"}) is True

    def test_uncovered_free_variable(self, chain3):
        with pytest.raises(EvaluationError, match="free variable"):
            evaluate(chain3, parse_formula("lt(x,y)", SIG), {"x": "a"})

    def test_alpha_equivalence(self, chain3):
        one = parse_formula("exists y. lt(y,x)", SIG)
        other = parse_formula("exists z. lt(z,x)", SIG)
        for element in chain3.universe:
            assert evaluate(chain3, one, {"x": element}) == evaluate(
                chain3, other, {"x": element}
            )

    def test_automorphism_invariance(self, cycle3):
        # rotation a->b->c->a is an automorphism; satisfaction must be preserved
        rotate = {"a": "b", "b": "c", "c": "a"}
        for formula in itertools.islice(enumerate_formulas(cycle3.signature, 1, 2), 300):
            for element in cycle3.universe:
                assert evaluate(cycle3, formula, {"x1": element}) == evaluate(
                    cycle3, formula, {"x1": rotate[element]}
                )


class TestEnumeration:
    def test_depth_zero_atoms(self):
        formulas = list(enumerate_formulas(SIG, 1, 0))
        assert formulas == [Atom("lt", ("x1", "x1")), Equal("x1", "x1")]

    def test_depth_two_contains_quantified_atoms(self):
        formulas = set(enumerate_formulas(SIG, 1, 2))
        assert Exists("y1", Atom("lt", ("y1", "x1"))) in formulas
        assert Exists("y1", Atom("lt", ("x1", "y1"))) in formulas

    def test_empty_signature_equality_only(self):
        formulas = list(enumerate_formulas(Signature(()), 1, 1))
        assert Equal("x1", "x1") in formulas
        assert Not(Equal("x1", "x1")) in formulas
        assert all(isinstance(f, (Equal, Not, And, Or, Implies, Exists, Forall)) for f in formulas)

    def test_free_variables_exactly_target(self):
        for formula in itertools.islice(enumerate_formulas(SIG, 2, 1), 400):
            assert free_vars(formula) == {"x1", "x2"}

    def test_depth_bound_respected(self):
        assert all(depth(f) <= 2 for f in enumerate_formulas(SIG, 1, 2))

    def test_deterministic_order(self):
        first = list(itertools.islice(enumerate_formulas(SIG, 1, 2), 200))
        second = list(itertools.islice(enumerate_formulas(SIG, 1, 2), 200))
        assert first == second

    def test_bound_variables_from_fixed_pool(self):
        def variables(formula):
            if isinstance(formula, Atom):
                return set(formula.args)
            if isinstance(formula, Equal):
                return {formula.left, formula.right}
            if isinstance(formula, Not):
                return variables(formula.body)
            if isinstance(formula, (And, Or, Implies)):
                return variables(formula.left) | variables(formula.right)
            return {formula.var} | variables(formula.body)

        allowed = {"x1", "y1", "y2"}
        for formula in itertools.islice(enumerate_formulas(SIG, 1, 2), 600):
            assert variables(formula) <= allowed

    def test_validation(self):
        with pytest.raises(ValueError):
            list(enumerate_formulas(SIG, 0, 1))
        with pytest.raises(ValueError):
            list(enumerate_formulas(SIG, 1, -1))


class TestSemanticDedup:
    def _truth_key(self, structure, formula, n):
        xs = [f"x{i}" for i in range(1, n + 1)]
        return tuple(
            evaluate(structure, formula, dict(zip(xs, values)))
            for values in itertools.product(structure.universe, repeat=n)
        )

    def test_one_formula_per_truth_table(self, chain2):
        seen = set()
        for formula in enumerate_formulas(SIG, 1, 2, structure=chain2):
            key = self._truth_key(chain2, formula, 1)
            assert key not in seen
            seen.add(key)

    def test_semantic_stream_covers_syntactic_tables(self, cycle3):
        # oracle: brute-force truth tables of the full syntactic enumeration
        brute = {
            self._truth_key(cycle3, formula, 1)
            for formula in enumerate_formulas(cycle3.signature, 1, 2)
        }
        deduped = {
            self._truth_key(cycle3, formula, 1)
            for formula in enumerate_formulas(cycle3.signature, 1, 2, structure=cycle3)
        }
        assert brute == deduped

    def test_items_report_tables_consistently(self, chain2):
        for item in semantic_items(chain2, ("x1",), ("y1", "y2"), 2):
            if item.open_vars or (item.free - {"x1"}):
                continue
            for i, element in enumerate(chain2.universe):
                direct = evaluate(chain2, item.formula, {"x1": element})
                assert direct == bool((item.table >> i) & 1)
