"""Quantifier-free formulas: parsing, printing, evaluation, rewriting."""

import random

import pytest

from charpk.differential import DerivationContext
from charpk.errors import FormulaError
from charpk.fields import make_field
from charpk.formula import (Atom, correct_lambda0_D, eval_formula, eval_term,
                            parse, print_formula, print_term, simplify_term,
                            unravel_lambda_terms)


def _structure(spec="Fp(3;t)"):
    K = make_field(spec)
    D = DerivationContext(K, {"t": K.one()})
    return K, {"field": K, "derivation": D}


def test_parse_print_round_trip_fixed_examples():
    K, _ = _structure()
    ctx = {"vars": {"x", "y"}, "field": K}
    for text in [
        "x + y",
        "(x * y) - 1",
        "D(x) + l0(y)",
        "lam(2,1; t; x)",
        "x = 0",
        "(x = 0 & y = 0) | !(x - y = 0)",
        "D(D(x)) * x",
    ]:
        node = parse(text, "full", ctx)
        printed = (print_formula(node) if "=" in text
                   else print_term(node))
        again = parse(printed, "full", ctx)
        reprinted = (print_formula(again) if "=" in text
                     else print_term(again))
        assert printed == reprinted


def test_random_round_trip():
    K, _ = _structure()
    ctx = {"vars": {"x", "y"}, "field": K}
    rng = random.Random(41)

    def rand_term(depth):
        if depth == 0:
            return rng.choice(["x", "y", "1", "2", "t"])
        a, b = rand_term(depth - 1), rand_term(depth - 1)
        return rng.choice([f"({a} + {b})", f"({a} * {b})",
                           f"({a} - {b})", f"D({a})", f"l0({a})"])

    for _ in range(40):
        text = rand_term(3)
        node = parse(text, "full", ctx)
        printed = print_term(node)
        assert print_term(parse(printed, "full", ctx)) == printed


def test_language_tags_enforced():
    K, _ = _structure()
    ctx = {"vars": {"x"}, "field": K}
    parse("x + 1", "ring", ctx)
    with pytest.raises(FormulaError):
        parse("D(x)", "ring", ctx)
    with pytest.raises(FormulaError):
        parse("lam(1,1; t; x)", "lambda0_D", ctx)
    parse("l0(D(x))", "lambda0_D", ctx)


def test_eval_term_and_formula():
    K, structure = _structure()
    t = K.gen("t")
    ctx = {"vars": {"x"}, "field": K}
    assign = {"x": t * t}
    assert eval_term(parse("D(x)", "full", ctx), structure, assign) == t + t
    assert eval_term(parse("l0(x)", "full", ctx), structure, assign).is_zero()
    cube = {"x": t ** 3}
    assert eval_term(parse("l0(x)", "full", ctx), structure, cube) == t
    assert eval_formula(parse("D(x) - 2*t = 0", "full", ctx),
                        structure, assign)
    assert not eval_formula(parse("x = 0", "full", ctx), structure, assign)


def test_simplify_term():
    K, _ = _structure()
    ctx = {"vars": {"x"}, "field": K}
    assert print_term(simplify_term(parse("0 + x", "full", ctx))) == "x"
    assert print_term(simplify_term(parse("0 * x", "full", ctx))) == "0"
    assert print_term(simplify_term(parse("1 * x", "full", ctx))) == "x"
    assert print_term(simplify_term(parse("D(2)", "full", ctx))) == "0"


def test_unravel_produces_verified_conditions():
    K, structure = _structure("Fp(2;t)")
    t = K.gen("t")
    ctx = {"vars": {"x"}, "field": K}
    phi = parse("lam(1,1; t; x) - t = 0", "full", ctx)
    witness = {"x": t ** 3 + t ** 2}
    res = unravel_lambda_terms(phi, structure, witness)
    assert res.names[0] == "x"
    assert any(n.startswith("lm1_") for n in res.names)
    # the recorded values satisfy every condition term
    from charpk.formula import eval_term as _ev
    for cond in res.conditions:
        assert _ev(cond, structure, res.values).is_zero()
    V = res.locus_variety()
    assert not V.is_empty()


def test_correction_nonpower_case_freezes_argument():
    # D(l0(x)) + D(x) = 0 with x declared a non-p-th-power: the l0 term
    # collapses to 0 and x is recorded as a fixed term
    K, structure = _structure("Fp(2;t)")
    ctx = {"vars": {"x"}, "field": K}
    phi = parse("D(l0(x)) + D(x) = 0", "full", ctx)
    res = correct_lambda0_D(phi, structure=structure, cases=["nonpower"])
    assert res.fixed_terms and print_term(res.fixed_terms[0]) == "x"
    assert print_formula(res.formula) == "D(x) = 0"
    assert res.fresh_vars == ()


def test_correction_square_case_introduces_fresh_variable():
    K, structure = _structure("Fp(2;t)")
    t = K.gen("t")
    ctx = {"vars": {"x"}, "field": K}
    phi = parse("D(l0(x)) + x = 0", "full", ctx)
    res = correct_lambda0_D(phi, structure=structure,
                            witness={"x": t ** 2})
    assert res.fresh_vars == ("y1",)
    out = print_formula(res.formula)
    assert "(y1 * y1)" in out and "D(y1)" in out
    # explicit cases reproduce the same rewriting
    res2 = correct_lambda0_D(phi, structure=structure, cases=["power"])
    assert print_formula(res2.formula) == out


def test_correction_rejects_inconsistent_cases():
    K, structure = _structure("Fp(2;t)")
    ctx = {"vars": {"x"}, "field": K}
    phi = parse("(D(l0(D(l0(x)) + D(x))) + x) = 0", "full", ctx)
    with pytest.raises(FormulaError):
        correct_lambda0_D(phi, structure=structure,
                          cases=["power", "nonpower"])


def test_correction_nested_example_both_squares():
    K, structure = _structure("Fp(2;t)")
    ctx = {"vars": {"x"}, "field": K}
    phi = parse("(D(l0(D(l0(x)) + D(x))) + x) = 0", "full", ctx)
    res = correct_lambda0_D(phi, structure=structure,
                            cases=["power", "power"])
    out = print_formula(res.formula)
    assert out == ("(((y1 * y1) - x) = 0 & (((y2 * y2) - (D(y1) + D(x)))"
                   " = 0 & (D(y2) + x) = 0))")
    assert res.fixed_terms == []
