"""Affine varieties: irreducibility, dominance, points, p-structure."""

import pytest

from charpk.errors import PreconditionError
from charpk.fields import make_field
from charpk.variety import (AffineVariety, RationalMapData, enumerate_points,
                            is_absolutely_irreducible, is_dominant,
                            is_irreducible, locus, pindep_function_field,
                            ppower_test, projection_dominant)

from oracles import naive_point_scan, weil_verdict


def _curve(spec, text, variables=("x", "y")):
    K = make_field(spec)
    return AffineVariety(K, variables, [text])


def test_irreducible_examples():
    assert is_irreducible(_curve("GF(7,1)", "x^2 + y^2 - 1"))
    assert not is_irreducible(_curve("GF(7,1)", "x^2 - y^2"))
    assert is_irreducible(_curve("GF(5,1)", "y^2 - x^3 - x"))
    # the empty ambient space (no equations) is irreducible
    K = make_field("GF(3,1)")
    assert is_irreducible(AffineVariety(K, ("x", "y"), []))


def test_absolute_irreducibility_matches_point_count_oracle():
    # x^2 + y^2 over F_7: K-irreducible but splits into two conjugate lines
    V = _curve("GF(7,1)", "x^2 + y^2")
    assert is_irreducible(V)
    assert not is_absolutely_irreducible(V)
    W = _curve("GF(7,1)", "x^2 + y^2 - 1")
    assert is_absolutely_irreducible(W)
    for spec, text, expect in [
        ("GF(7,1)", "x^2 + y^2", False),
        ("GF(7,1)", "x^2 + y^2 - 1", True),
        ("GF(2,1)", "y^2 + y + x^3", True),
        ("GF(3,1)", "y^2 - x^3 - x", True),
    ]:
        V = _curve(spec, text)
        f = V.ideal.gens[0]
        assert is_absolutely_irreducible(V) == weil_verdict(f, V.field), text


def test_absirr_over_ratfunc_base():
    # x^2 - t in char 2 is a single (thickened) geometric point
    V = AffineVariety(make_field("Fp(2;t)"), ("x",), ["x^2 - t"])
    assert is_absolutely_irreducible(V)
    W = AffineVariety(make_field("Fp(3;t)"), ("x",), ["x^2 - t^2"])
    assert not is_irreducible(W)
    # graphs (linear in one variable) are handled over F_p(t)
    G = AffineVariety(make_field("Fp(3;t)"), ("x", "u"), ["u - x^2"])
    assert is_absolutely_irreducible(G)
    # a general plane cubic over F_p(t) is outside the decidable class
    from charpk.errors import UnsupportedInstance
    C = AffineVariety(make_field("Fp(3;t)"), ("x", "y"), ["y^2 - x^3 - t"])
    with pytest.raises(UnsupportedInstance):
        is_absolutely_irreducible(C)


def test_point_enumeration_matches_naive_scan():
    for spec in ("GF(5,1)", "GF(7,1)"):
        V = _curve(spec, "x^2 + y^2 - 1")
        got = sorted(tuple(str(c) for c in p) for p in enumerate_points(V))
        want = sorted(tuple(str(c) for c in p)
                      for p in naive_point_scan(V.ideal.gens, V.field, 2))
        assert got == want
    assert len(list(enumerate_points(_curve("GF(7,1)", "x^2 + y^2 - 1")))) == 8
    assert len(list(enumerate_points(_curve("GF(5,1)", "x^2 + y^2 - 1")))) == 4


def test_point_enumeration_ratfunc_needs_bound():
    V = AffineVariety(make_field("Fp(3;t)"), ("x",), ["x^2 - t^2"])
    with pytest.raises(PreconditionError):
        list(enumerate_points(V))
    pts = [str(p[0]) for p in enumerate_points(V, bound=1)]
    assert sorted(pts) == ["2*t", "t"]


def test_dominance_projection_and_rational_map():
    K = make_field("Fp(3;t)")
    # W = V(u - 1) inside the (x, u)-plane over V = the x-line
    V = AffineVariety(K, ("x",), [])
    W = AffineVariety(K, ("x", "u"), ["u - 1"])
    assert projection_dominant(W, V, ["x"])
    # projecting the graph of x -> x^2 onto the x-line is dominant;
    # onto a strict subvariety it is not
    G = AffineVariety(K, ("x", "y"), ["y - x^2"])
    assert projection_dominant(G, V, ["x"])
    # a single fibre does not project dominantly onto the line
    F = AffineVariety(K, ("x", "u"), ["u - 1", "x"])
    assert not projection_dominant(F, V, ["x"])
    # rational-map dominance with a function-field coordinate
    m = RationalMapData(G, V, [G.function_field_elem("y")])
    assert is_dominant(m)
    const = RationalMapData(G, V, [G.function_field_elem("1")])
    assert not is_dominant(const)


def test_dominance_requires_irreducible_source():
    K = make_field("GF(5,1)")
    V = AffineVariety(K, ("x", "y"), ["x^2 - y^2"])
    L = AffineVariety(K, ("x",), [])
    with pytest.raises(PreconditionError):
        is_dominant(RationalMapData(V, L, [V.function_field_elem("x")]))


def test_locus_construction():
    K = make_field("Fp(2;t)")
    t = K.gen("t")
    # the locus of (t, t^2) in two fresh variables carries y = x^2
    V = locus([t, t * t], K, ["x", "y"])
    x, y = V.ring.var("x"), V.ring.var("y")
    assert V.ideal.contains(y - x * x)
    assert not V.is_empty()


def test_ppower_exact_on_function_field_of_line():
    K = make_field("Fp(2;t)")
    V = AffineVariety(K, ("x",), [])
    sq = V.function_field_elem("x^2")
    v = ppower_test(sq)
    assert v.status == "root" and str(v.value) in ("x", "(x)/(1)")
    lin = V.function_field_elem("x")
    assert ppower_test(lin).status == "absent"


def test_pindep_exact_on_function_field_of_line():
    K = make_field("Fp(2;t)")
    V = AffineVariety(K, ("x",), [])
    x = V.function_field_elem("x")
    t = V.function_field_elem("t")
    assert pindep_function_field([x]).status == "independent"
    assert pindep_function_field([x, t]).status == "independent"
    assert pindep_function_field([x, x]).status == "dependent"
    sq = V.function_field_elem("x^2")
    assert pindep_function_field([sq]).status == "dependent"


def test_function_field_elem_arithmetic_and_evaluation():
    K = make_field("GF(5,1)")
    V = AffineVariety(K, ("x", "y"), ["x^2 + y^2 - 1"])
    f = V.function_field_elem("x", "y")
    g = V.function_field_elem("y", "x")
    h = f * g
    assert h == V.function_field_elem("1")
    pt = (K.from_int(0), K.from_int(1))
    assert str(f.evaluate(pt)) == "0"
    bad = (K.from_int(1), K.from_int(0))
    assert f.evaluate(bad) is None  # denominator vanishes
    # relations of the variety are respected in K(V)
    one = V.function_field_elem("x^2 + y^2")
    assert one == V.function_field_elem("1")
