"""End-to-end acceptance gate.

Each test prints exactly one PASS/FAIL line (written to the real stdout so
it survives capture) and asserts the underlying property with zero
tolerance.
"""

import itertools
import random
import sys
import time

from charpk.axioms import DPacInstance, search_dpac_witness, \
    validate_dpac_instance
from charpk.differential import (DerivationContext, derivation_extends,
                                 derive, extension_oracle, kerprol_check,
                                 nabla_point, prolongation)
from charpk.fields import (is_pth_power, iter_elements, iter_gf_elements,
                           make_field)
from charpk.formula import (correct_lambda0_D, eval_formula, eval_term,
                            parse, print_formula)
from charpk.groups import (FieldAction, check_galois_data,
                           alg_strongly_pac_probe, galois_group, invariants)
from charpk.lambdafn import (is_p_independent, lambda_multi, lambda_solve,
                             p_monomials)
from charpk.polys import MultiPoly, PolyRing
from charpk.variety import (AffineVariety, enumerate_points,
                            is_absolutely_irreducible)

from oracles import (count_k_linear_factors, _divide_once, lex_member,
                     linear_absolute_factor, naive_point_scan, weil_verdict)


import pytest

_CAPSYS = None


@pytest.fixture(autouse=True)
def _capture_handle(capsys):
    global _CAPSYS
    _CAPSYS = capsys
    yield
    _CAPSYS = None


def _report(num, name, ok):
    line = f"criterion {num:2d} [{name}]: {'PASS' if ok else 'FAIL'}\n"
    if _CAPSYS is not None:
        with _CAPSYS.disabled():
            sys.stdout.write(line)
            sys.stdout.flush()
    else:
        sys.stdout.write(line)
    assert ok, line.strip()


# ---------------------------------------------------------------------------
# 1. chain rule: nabla lands on the prolongation
# ---------------------------------------------------------------------------

def test_criterion_1_chain_rule():
    start = time.monotonic()
    graphs = ["x^2 + t", "x^3 - t*x", "t*x + 1", "x^2*t + x",
              "x + t^2", "x^3 + t^3", "t^2*x^2 + t", "x^2 - x + t"]
    pairs = 0
    nvars = 0
    ok = True
    for p in (2, 3, 5):
        K = make_field(f"Fp({p};t)")
        D = DerivationContext(K, {"t": K.one()})
        ring = PolyRing(K, ("x",))
        t = K.gen("t")
        pool = [K.zero(), K.one(), t, t + K.one(), t * t,
                t * t + t, t * t + K.one()]
        for text in graphs:
            h = ring.parse(text)
            V = AffineVariety(K, ("x", "y"),
                              [f"y - ({text})"])
            nvars += 1
            bundle = prolongation(V, D)
            for a in pool * 3:
                ya = h.evaluate({"x": a}, lift=lambda c: c)
                # nabla_point itself verifies membership in tau and
                # raises if the chain-rule identity fails
                pt = nabla_point((a, ya), bundle)
                assert len(pt) == 4
                pairs += 1
    elapsed = time.monotonic() - start
    _report(1, "chain rule on prolongations",
            ok and nvars >= 20 and pairs >= 500 and elapsed < 10)


# ---------------------------------------------------------------------------
# 2. containment in the prolongation vs the direct linear check
# ---------------------------------------------------------------------------

def _partial_indep(f, var):
    """Formal partial derivative, written independently of the library."""
    ring = f.ring
    idx = ring.vars.index(var)
    terms = {}
    for mono, c in f.terms.items():
        e = mono[idx]
        if e == 0:
            continue
        coef = c * ring.field.from_int(e)
        if coef.is_zero():
            continue
        terms[tuple(m if i != idx else m - 1
                    for i, m in enumerate(mono))] = coef
    return MultiPoly(ring, terms)


def _direct_extends(V, W, D):
    """tau-generators in I(W), with independent partials and an
    independent lex membership routine."""
    n = len(V.vars)
    gens = list(W.ideal.gens)
    for g in V.ideal.gens:
        gg = g.rename(W.ring)
        if not lex_member(gg, gens):
            return False
        lin = derive(gg, D)
        for xv, uv in zip(V.vars, W.vars[n:]):
            lin = lin + _partial_indep(gg, xv) * W.ring.var(uv)
        if not lex_member(lin, gens):
            return False
    return True


def test_criterion_2_containment_equivalence():
    count = 0
    for p in (2, 3):
        K = make_field(f"Fp({p};t)")
        D = DerivationContext(K, {"t": K.one()})
        v_texts = [f"x^{k} - t^{j}" for k in (1, 2, 3) for j in (1, 2)]
        w_extra = ["u", "u - 1", "u - x", "u - t", "u - x*t",
                   "u - x^2", "u + x + t", "u - t^2", "u + 1"]
        for vt in v_texts:
            V = AffineVariety(K, ("x",), [vt])
            for wt in w_extra:
                W = AffineVariety(K, ("x", "u"), [vt, wt])
                got = derivation_extends(V, W, D)
                want = _direct_extends(V, W, D)
                assert got == want, (p, vt, wt)
                count += 1
    # the char-3 degenerate graph: x^3 - t linearizes to the unit ideal
    K3 = make_field("Fp(3;t)")
    D3 = DerivationContext(K3, {"t": K3.one()})
    V3 = AffineVariety(K3, ("x",), ["x^3 - t"])
    W3 = AffineVariety(K3, ("x", "u"), ["x^3 - t", "u"])
    both_false = (not derivation_extends(V3, W3, D3)
                  and not _direct_extends(V3, W3, D3))
    count += 1
    _report(2, "prolongation containment equivalence",
            both_false and count >= 100)


# ---------------------------------------------------------------------------
# 3. kerprol equivalence
# ---------------------------------------------------------------------------

def test_criterion_3_kerprol_equivalence():
    count = 0
    agree = True
    for p in (2, 3):
        K = make_field(f"Fp({p};t)")
        D = DerivationContext(K, {"t": K.one()})
        V = AffineVariety(K, ("x",), [])
        for wt in ["u - 1", "u - x", "u - t", "u - x^2", "u - x*t",
                   "u", "u - x - t", "u - x^3", "u - t^2", "u + x"]:
            W = AffineVariety(K, ("x", "u"), [wt])
            agree = agree and (kerprol_check(V, W, D)
                               == extension_oracle(V, W, D))
            count += 1
    K2 = make_field("Fp(2;t)")
    D2 = DerivationContext(K2, {"t": K2.one()})
    V2 = AffineVariety(K2, ("x",), [])
    Wbad = AffineVariety(K2, ("x", "u"), ["u^2 - x"])
    bad_pair = (kerprol_check(V2, Wbad, D2) is False
                and extension_oracle(V2, Wbad, D2) is False)
    Wgood = AffineVariety(K2, ("x", "u"), ["u - 1"])
    good_pair = (kerprol_check(V2, Wgood, D2) is True
                 and extension_oracle(V2, Wgood, D2) is True)
    count += 2
    _report(3, "equalizer dominance equivalence",
            agree and bad_pair and good_pair and count >= 20)


# ---------------------------------------------------------------------------
# 4. absolute irreducibility vs point-counting / extension factor oracles
# ---------------------------------------------------------------------------

def _line_candidates(ring, K):
    x, y = ring.var("x"), ring.var("y")
    els = list(iter_gf_elements(K))
    cands = [y - (ring.from_scalar(a) * x + ring.from_scalar(b))
             for a in els for b in els]
    cands += [x - ring.from_scalar(c) for c in els]
    return cands


def _oracle_absirr_low_degree(f, K):
    """Ground truth for curves of degree <= 3 (and conic cofactors):
    set-level component counting from independent primitives."""
    ring = f.ring
    lines = [l for l in _line_candidates(ring, K)
             if _divide_once(f, l)[1]]
    _, cof = count_k_linear_factors(f, K)
    d = cof.total_degree()
    if d == 0:
        return len(lines) == 1
    if lines:
        return False  # a line plus a positive-degree cofactor
    if d == 2:
        # K-irreducible conic: absolutely irreducible iff it has no
        # linear factor over the quadratic extension
        return not linear_absolute_factor(cof, K, 2)
    if d == 3:
        return weil_verdict(cof, K)
    raise AssertionError("oracle reserved for degree <= 3 here")


def _eisenstein_at_x(f, K):
    """f monic of y-degree d, all lower y-coefficients divisible by x and
    the y-constant not divisible by x^2: irreducible over K(x)."""
    yv = "y"
    d = f.degree_in(yv)
    idx_x = f.ring.vars.index("x")
    idx_y = f.ring.vars.index(yv)
    const_xmin = None
    for mono, c in f.terms.items():
        if mono[idx_y] == d:
            if mono[idx_x] != 0:
                return False  # leading y-coefficient must be constant
        elif mono[idx_x] == 0:
            return False  # lower coefficient not divisible by x
        if mono[idx_y] == 0:
            xm = mono[idx_x]
            const_xmin = xm if const_xmin is None else min(const_xmin, xm)
    return const_xmin == 1


def test_criterion_4_absolute_irreducibility():
    start = time.monotonic()
    checked = 0
    # exhaustive sweeps over all conics for q in {2, 3}
    for q in (2, 3):
        K = make_field(f"GF({q},1)")
        ring = PolyRing(K, ("x", "y"))
        monos = [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]
        els = list(iter_gf_elements(K))
        for coeffs in itertools.product(els, repeat=6):
            terms = {m: c for m, c in zip(monos, coeffs) if not c.is_zero()}
            f = MultiPoly(ring, terms)
            if f.total_degree() < 1:
                continue
            V = AffineVariety(K, ("x", "y"), [f])
            assert is_absolutely_irreducible(V) \
                == _oracle_absirr_low_degree(f, K), str(f)
            checked += 1
    # curated families of degree <= 3 for every q
    cubics = ["y^2 - x^3 - x", "y^2*x - 1", "x^3 - y^3",
              "y*x^2 + y^2 + 1", "x^2*y + x*y^2 + 1", "y^2 - x^3"]
    for q in (2, 3, 5, 7):
        K = make_field(f"GF({q},1)")
        ring = PolyRing(K, ("x", "y"))
        for text in cubics + ["x^2 + y^2", "x^2 + y^2 - 1", "x*y - 1",
                              "x^2 - y", "x*y", "x^2 + 1"]:
            f = ring.parse(text)
            V = AffineVariety(K, ("x", "y"), [f])
            assert is_absolutely_irreducible(V) \
                == _oracle_absirr_low_degree(f, K), (q, text)
            checked += 1
    # the mandated split pair over F_7
    K7 = make_field("GF(7,1)")
    split = is_absolutely_irreducible(
        AffineVariety(K7, ("x", "y"), ["x^2 + y^2"]))
    circle = is_absolutely_irreducible(
        AffineVariety(K7, ("x", "y"), ["x^2 + y^2 - 1"]))
    assert split is False and circle is True
    # quartics: Eisenstein-certified irreducible ones measured by point
    # counting, and constructed two-component products
    for q in (2, 3, 5, 7):
        K = make_field(f"GF({q},1)")
        ring = PolyRing(K, ("x", "y"))
        for text in ["y^4 + x*y + x", "y^4 + x^3*y + x",
                     "y^4 + x*y^2 + x"]:
            f = ring.parse(text)
            assert _eisenstein_at_x(f, K)
            V = AffineVariety(K, ("x", "y"), [f])
            assert is_absolutely_irreducible(V) == weil_verdict(f, K), \
                (q, text)
            checked += 1
        # a product of two distinct K-irreducible conics has two
        # components by construction
        g1, g2 = ring.parse("x*y - 1"), ring.parse("x*y + x - 1")
        V = AffineVariety(K, ("x", "y"), [g1 * g2])
        assert is_absolutely_irreducible(V) is False
        checked += 1
    elapsed = time.monotonic() - start
    _report(4, "absolute irreducibility vs counting oracle",
            checked > 800 and elapsed < 60)


# ---------------------------------------------------------------------------
# 5. lambda defining formula round trip
# ---------------------------------------------------------------------------

def test_criterion_5_lambda_round_trip():
    total = 0
    for p, e, trials, rational in [(2, 1, 350, False), (2, 2, 150, False),
                                   (3, 1, 400, False), (3, 1, 50, True),
                                   (3, 2, 50, False)]:
        K = make_field(f"Fp({p};t1,t2,t3)")
        rng = random.Random(1000 * p + e + rational)
        t1, t2, t3 = (K.gen(n) for n in ("t1", "t2", "t3"))
        poly_pool = [K.zero(), K.one(), t1, t2, t3, t1 + K.one(),
                     t2 + t3, t1 * t2, t1 + t2 + t3, t3 * t3]
        pool = (list(iter_elements(K, 1))[:60] if rational else poly_pool)
        for trial in range(trials):
            bs = [rng.choice(pool) for _ in range(e)]
            if not is_p_independent(bs, K):
                # Case 1 must return 0 at every index
                assert lambda_solve(e, bs, K.one() + rng.choice(pool)) is None
                assert lambda_multi(1, e, bs, rng.choice(pool)).is_zero()
                total += 1
                continue
            monos = p_monomials(bs)
            if trial % 2 == 0 and not rational:
                # random c: usually Case 2 (solve returns None -> 0),
                # occasionally Case 3 which must verify internally
                c = rng.choice(pool)
                sol = lambda_solve(e, bs, c)
                if sol is None:
                    assert lambda_multi(1, e, bs, c).is_zero()
                else:
                    acc = K.zero()
                    for lam, m in zip(sol, monos):
                        acc = acc + lam ** p * m
                    assert acc == c
            else:
                # forced Case 3
                coeffs = [rng.choice(pool) for _ in monos]
                c = K.zero()
                for a, m in zip(coeffs, monos):
                    c = c + a ** p * m
                sol = lambda_solve(e, bs, c)
                assert sol is not None
                acc = K.zero()
                for lam, m in zip(sol, monos):
                    acc = acc + lam ** p * m
                assert acc == c
            total += 1
    _report(5, "lambda defining-formula round trip", total >= 1000)


# ---------------------------------------------------------------------------
# 6. correction-rewriter soundness
# ---------------------------------------------------------------------------

def _random_l0d_term(rng, depth):
    if depth == 0:
        return rng.choice(["x", "x", "t", "1", "2"])
    a = _random_l0d_term(rng, depth - 1)
    b = _random_l0d_term(rng, depth - 1)
    return rng.choice([f"({a} + {b})", f"({a} * {b})", f"D({a})",
                       f"l0({a})", f"l0(D({a}))"])


def test_criterion_6_correction_soundness():
    K = make_field("Fp(3;t)")
    D = DerivationContext(K, {"t": K.one()})
    structure = {"field": K, "derivation": D}
    ctx = {"vars": {"x"}, "field": K}
    t = K.gen("t")
    pool = [K.one(), t, t + K.one(), t * t, t ** 3, t * t + t,
            K.from_int(2), t ** 3 + K.one(), (t + K.one()) ** 3]
    rng = random.Random(99)
    done = 0
    while done < 200:
        text = _random_l0d_term(rng, rng.choice([1, 2, 2, 3]))
        if "l0" not in text:
            continue
        term = parse(text, "lambda0_D", ctx)
        wx = rng.choice(pool)
        v = eval_term(term, structure, {"x": wx})
        phi_text = f"({text}) - c0 = 0"
        phi = parse(phi_text, "lambda0_D",
                    {"vars": {"x", "c0"}, "field": K})
        witness = {"x": wx, "c0": v}
        assert eval_formula(phi, structure, witness)
        res = correct_lambda0_D(phi, structure=structure, witness=witness)
        # (*): the corrected formula holds at the extended witness and
        # every fixed term stays a non-p-th power there
        assert eval_formula(res.formula, structure, res.extended_witness)
        for ft in res.fixed_terms:
            val = eval_term(ft, structure, res.extended_witness)
            assert not is_pth_power(val)
        done += 1
    # the two fixed worked examples (one and two correction rounds)
    K2 = make_field("Fp(2;t)")
    ctx2 = {"vars": {"x"}, "field": K2}
    D2 = DerivationContext(K2, {"t": K2.one()})
    s2 = {"field": K2, "derivation": D2}
    phi2 = parse("(D(l0(D(l0(x)) + D(x))) + x) = 0", "lambda0_D", ctx2)
    r1 = correct_lambda0_D(phi2, structure=s2, witness={"x": K2.gen("t")})
    sub_i2 = (print_formula(r1.formula)
              == "(((y1 * y1) - D(x)) = 0 & (D(y1) + x) = 0)")
    r2 = correct_lambda0_D(phi2, structure=s2, cases=["power", "power"])
    sub_ii2 = (print_formula(r2.formula)
               == "(((y1 * y1) - x) = 0 & (((y2 * y2) - (D(y1) + D(x)))"
                  " = 0 & (D(y2) + x) = 0))")
    _report(6, "correction-rewriter soundness",
            done >= 200 and sub_i2 and sub_ii2)


# ---------------------------------------------------------------------------
# 7. Galois suite
# ---------------------------------------------------------------------------

def test_criterion_7_galois_suite():
    start = time.monotonic()
    ok = True
    for p, a in [(2, 1), (3, 1), (2, 2)]:  # q in {2, 3, 4}
        F = make_field(f"GF({p},{a})")
        for n in (1, 2, 3, 4):
            L = make_field(f"GF({p},{a * n})")
            group, autos, embed = galois_group(L, F)
            ok = ok and len(group) == n
            act = FieldAction.cyclic_action(n, L, f"frobenius^{a}")
            inv, _ = invariants(act)
            ok = ok and inv.p == p and inv.k == a
            report = check_galois_data(act)
            ok = ok and report.all_pass()
    elapsed = time.monotonic() - start
    _report(7, "Galois correspondence suite", ok and elapsed < 5)


# ---------------------------------------------------------------------------
# 8. strongly-PAC probe
# ---------------------------------------------------------------------------

def test_criterion_8_probe():
    F, K = make_field("GF(2,1)"), make_field("GF(2,2)")
    ring = PolyRing(F, ("x",))
    rep = alg_strongly_pac_probe(F, K, [ring.parse("x^3 + x + 1")])
    e = rep.entries[0]
    neg = (not rep.overall_pass and e["orbit_sizes"] == [3]
           and e["k_irreducible"] and e["f_roots"] == [])
    single = alg_strongly_pac_probe(F, K, [ring.parse("x + 1")])
    pos = single.overall_pass
    _report(8, "strongly-PAC probe witness", neg and pos)


# ---------------------------------------------------------------------------
# 9. end-to-end instance checks
# ---------------------------------------------------------------------------

def test_criterion_9_dpac_end_to_end():
    start = time.monotonic()
    K = make_field("Fp(3;t)")
    D = DerivationContext(K, {"t": K.one()})
    V = AffineVariety(K, ("x",), [])
    W = AffineVariety(K, ("x", "u"), ["u - 1"])
    inst = DPacInstance(K, D, V, W, fns=["x"], bound=1)
    rep = validate_dpac_instance(inst)
    valid = (rep.status == "valid-instance"
             and all(b["verdict"] == "pass" for b in rep.bullets))
    found = search_dpac_witness(inst, validated=rep)
    witness_t = (found.status == "witness-found"
                 and [str(c) for c in found.witness] == ["t"])
    K2 = make_field("Fp(2;t)")
    D2 = DerivationContext(K2, {"t": K2.one()})
    V2 = AffineVariety(K2, ("x",), [])
    W2 = AffineVariety(K2, ("x", "u"), ["u^2 - x"])
    rej = validate_dpac_instance(DPacInstance(K2, D2, V2, W2))
    rejected = (rej.status == "invalid"
                and rej.failed_bullet == "E projects dominantly on W")
    elapsed = time.monotonic() - start
    _report(9, "end-to-end instance validation",
            valid and witness_t and rejected and elapsed < 5)


# ---------------------------------------------------------------------------
# 10. point enumeration
# ---------------------------------------------------------------------------

def test_criterion_10_point_enumeration():
    ok = True
    for q, expect in [(7, 8), (5, 4)]:
        K = make_field(f"GF({q},1)")
        V = AffineVariety(K, ("x", "y"), ["x^2 + y^2 - 1"])
        pts = list(enumerate_points(V))
        scan = naive_point_scan(V.ideal.gens, K, 2)
        got = sorted(tuple(str(c) for c in p) for p in pts)
        want = sorted(tuple(str(c) for c in p) for p in scan)
        ok = ok and len(pts) == expect and got == want
    _report(10, "exact point enumeration", ok)
