"""Affine varieties over the supported base fields.

Varieties are presented by generators of an ideal in a fixed variable
list.  The module decides K-irreducibility and absolute irreducibility
for an explicit instance class (hypersurfaces in at most two essential
variables, zero-dimensional triangular systems, graph presentations,
loci), enumerates rational points, tests dominance of rational maps by
elimination, and carries the characteristic-p structure of function
fields: p-th-power tests and p-independence with tri-state verdicts.
"""

from __future__ import annotations

import itertools

from . import factor, lambdafn, linalg
from .errors import (CharpkError, FieldError, PreconditionError, RingError,
                     UnsupportedInstance)
from .fields import (FieldDescriptor, FieldScalar, is_pth_power,
                     iter_elements, iter_gf_elements, make_field,
                     p_components, pth_root)
from .polys import Ideal, MultiPoly, PolyRing, normal_form


class AffineVariety:
    """V(I) in K^n with cached structure flags."""

    __slots__ = ("field", "vars", "ideal", "_flags")

    def __init__(self, field: FieldDescriptor, variables, gens,
                 known_irreducible=False):
        self.field = field
        self.vars = tuple(variables)
        if isinstance(gens, Ideal):
            self.ideal = gens
        else:
            ring = PolyRing(field, self.vars)
            out = []
            for g in gens:
                if isinstance(g, str):
                    g = ring.parse(g)
                elif g.ring.vars != self.vars or g.ring.field != field:
                    g = g.rename(ring)
                out.append(g)
            self.ideal = Ideal(ring, out)
        self._flags = {}
        if known_irreducible:
            self._flags["irreducible"] = True

    @property
    def ring(self) -> PolyRing:
        return self.ideal.ring

    def __repr__(self):
        gens = ", ".join(str(g) for g in self.ideal.gens) or "0"
        return f"V({gens}) in K[{', '.join(self.vars)}]"

    def is_empty(self) -> bool:
        if "empty" not in self._flags:
            self._flags["empty"] = self.ideal.is_trivial()
        return self._flags["empty"]

    def require_nonempty(self):
        if self.is_empty():
            raise PreconditionError("operation requires a nonempty variety")

    def dimension(self):
        if "dimension" not in self._flags:
            self._flags["dimension"] = self.ideal.dimension()
        return self._flags["dimension"]

    def contains_point(self, point) -> bool:
        values = dict(zip(self.vars, point))
        return all(g.evaluate(values, lift=lambda c: c).is_zero()
                   for g in self.ideal.gens)

    def function_field_elem(self, num, den=None) -> "FunctionFieldElem":
        ring = self.ring
        if isinstance(num, str):
            num = ring.parse(num)
        if den is None:
            den = ring.one()
        elif isinstance(den, str):
            den = ring.parse(den)
        return FunctionFieldElem(self, num, den)


# ---------------------------------------------------------------------------
# graph peeling: x_i = expr(other vars) generators define isomorphisms with
# a variety in fewer variables; full peeling exhibits V as an affine space
# ---------------------------------------------------------------------------

class PeeledPresentation:
    """V rewritten over free variables: every removed variable carries a
    polynomial expression in the free ones; `gens` are the residual
    equations among the free variables (empty = V is an affine space)."""

    __slots__ = ("variety", "free_vars", "gens", "subst")

    def __init__(self, variety, free_vars, gens, subst):
        self.variety = variety
        self.free_vars = tuple(free_vars)
        self.gens = list(gens)
        self.subst = dict(subst)


def peel_graph(V: AffineVariety) -> PeeledPresentation:
    ring = V.ring
    gens = [g for g in V.ideal.gens if not g.is_zero()]
    free = list(V.vars)
    subst = {}
    changed = True
    while changed:
        changed = False
        for gi, g in enumerate(gens):
            for v in list(free):
                if g.degree_in(v) != 1:
                    continue
                iv = ring._var_index[v]
                a_terms = {}
                b_terms = {}
                for e, c in g.terms.items():
                    if e[iv] == 1:
                        ne = list(e)
                        ne[iv] = 0
                        a_terms[tuple(ne)] = c
                    elif e[iv] == 0:
                        b_terms[e] = c
                    else:
                        a_terms = None
                        break
                if a_terms is None:
                    continue
                A = MultiPoly(ring, a_terms)
                if not A.is_constant():
                    continue
                B = MultiPoly(ring, b_terms)
                expr = B.scale(-A.constant_value().inverse())
                free.remove(v)
                rep = {v: expr}
                gens = [h.substitute(rep) for j, h in enumerate(gens)
                        if j != gi]
                gens = [h for h in gens if not h.is_zero()]
                subst = {w: t.substitute(rep) for w, t in subst.items()}
                subst[v] = expr
                changed = True
                break
            if changed:
                break
    return PeeledPresentation(V, free, gens, subst)


# ---------------------------------------------------------------------------
# exact function-field model: if V peels to an affine space and K has a
# prime-field presentation, K(V) is the rational function field over F_p in
# the transcendentals of K plus the free coordinates
# ---------------------------------------------------------------------------

class FunctionFieldModel:
    """K(V) as F_p(t.., free coordinates): exact p-structure."""

    __slots__ = ("variety", "peel", "big", "tvars")

    def __init__(self, variety, peel, big, tvars):
        self.variety = variety
        self.peel = peel
        self.big = big
        self.tvars = tvars

    def embed_scalar(self, c: FieldScalar) -> FieldScalar:
        K = c.field
        big = self.big
        if K.kind == "gf":
            return big.from_int(c.rep[0])
        num = _poly_to_big(c.rep.numer, K.tvars, big)
        den = _poly_to_big(c.rep.denom, K.tvars, big)
        return num / den

    def embed_poly(self, f: MultiPoly) -> FieldScalar:
        f = f.substitute(self.peel.subst) if self.peel.subst else f
        big = self.big
        acc = big.zero()
        for e, c in f.terms.items():
            term = self.embed_scalar(c)
            for v, d in zip(f.ring.vars, e):
                if d:
                    term = term * self.big.gen(v) ** d
            acc = acc + term
        return acc

    def embed(self, f: "FunctionFieldElem") -> FieldScalar:
        num = self.embed_poly(f.num)
        den = self.embed_poly(f.den)
        if den.is_zero():
            raise FieldError("denominator vanishes identically on V")
        return num / den

    def to_function(self, x: FieldScalar) -> "FunctionFieldElem":
        num = self._split_poly(x.rep.numer)
        den = self._split_poly(x.rep.denom)
        return FunctionFieldElem(self.variety, num, den)

    def _split_poly(self, poly):
        """big-field polynomial -> MultiPoly over V's ring: transcendentals
        of K go into the coefficients, free coordinates into exponents."""
        K = self.variety.field
        ring = self.variety.ring
        names = self.big.tvars
        terms = {}
        for mono, c in poly.terms():
            coeff = K.from_int(int(c) % K.p)
            exps = [0] * ring.nvars
            for name, d in zip(names, mono):
                if not d:
                    continue
                if name in self.tvars:
                    coeff = coeff * K.gen(name) ** d
                else:
                    exps[ring._var_index[name]] = d
            key = tuple(exps)
            terms[key] = terms.get(key, K.zero()) + coeff
        return MultiPoly(ring, {e: c for e, c in terms.items()
                                if not c.is_zero()})


def _poly_to_big(poly, tnames, big):
    acc = big.zero()
    p = big.p
    for mono, c in poly.terms():
        term = big.from_int(int(c) % p)
        for name, d in zip(tnames, mono):
            if d:
                term = term * big.gen(name) ** d
        acc = acc + term
    return acc


def function_field_model(V: AffineVariety):
    """The exact model, or None when V is not a peelable affine space or K
    has no prime-field presentation."""
    if "ffmodel" in V._flags:
        return V._flags["ffmodel"]
    model = None
    peel = peel_graph(V)
    K = V.field
    prime_based = (K.kind == "ratfunc"
                   or (K.kind == "gf" and K.k == 1))
    if not peel.gens and prime_based:
        tvars = K.tvars if K.kind == "ratfunc" else ()
        names = tuple(tvars) + tuple(peel.free_vars)
        if len(set(names)) == len(names):
            big = make_field(f"Fp({K.p};{','.join(names)})")
            model = FunctionFieldModel(V, peel, big, set(tvars))
    V._flags["ffmodel"] = model
    return model


# ---------------------------------------------------------------------------
# function-field elements and rational maps
# ---------------------------------------------------------------------------

class FunctionFieldElem:
    """num/den in K(V); equality is cross-multiplied ideal membership."""

    __slots__ = ("variety", "num", "den")

    def __init__(self, variety: AffineVariety, num: MultiPoly,
                 den: MultiPoly):
        if not is_irreducible(variety):
            raise PreconditionError(
                "function-field elements need a K-irreducible variety")
        gb = list(variety.ideal.groebner())
        if gb:
            num = normal_form(num, gb)
            den = normal_form(den, gb)
        if den.is_zero() or variety.ideal.contains(den):
            raise FieldError("denominator vanishes on the variety")
        self.variety = variety
        self.num = num
        self.den = den

    def __repr__(self):
        if self.den.is_constant():
            c = self.den.constant_value()
            return str(self.num.scale(c.inverse()))
        return f"({self.num})/({self.den})"

    def _coerce(self, other):
        if isinstance(other, FunctionFieldElem):
            if other.variety is not self.variety:
                raise RingError("function-field elements on different varieties")
            return other
        ring = self.variety.ring
        if isinstance(other, FieldScalar):
            return FunctionFieldElem(self.variety, ring.from_scalar(other),
                                     ring.one())
        if isinstance(other, int):
            return FunctionFieldElem(
                self.variety, ring.from_scalar(self.variety.field.from_int(other)),
                ring.one())
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FunctionFieldElem(self.variety,
                                 self.num * o.den + o.num * self.den,
                                 self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return FunctionFieldElem(self.variety, -self.num, self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FunctionFieldElem(self.variety, self.num * o.num,
                                 self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o.is_zero():
            raise ZeroDivisionError("division by zero in K(V)")
        return FunctionFieldElem(self.variety, self.num * o.den,
                                 self.den * o.num)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, n: int):
        out = FunctionFieldElem(self.variety, self.variety.ring.one(),
                                self.variety.ring.one())
        base = self
        if n < 0:
            base = 1 / base
            n = -n
        for _ in range(n):
            out = out * base
        return out

    def is_zero(self) -> bool:
        return self.variety.ideal.contains(self.num)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self.variety.ideal.contains(
            self.num * o.den - o.num * self.den)

    def __hash__(self):
        raise TypeError("function-field elements are unhashable")

    def evaluate(self, point):
        """Value at a point of V(K), or None if the denominator vanishes."""
        values = dict(zip(self.variety.vars, point))
        d = self.den.evaluate(values, lift=lambda c: c)
        if d.is_zero():
            return None
        n = self.num.evaluate(values, lift=lambda c: c)
        return n / d


class RationalMapData:
    """W -> V by coordinate functions in K(W); checked to satisfy I(V)."""

    __slots__ = ("source", "target", "coords")

    def __init__(self, source: AffineVariety, target: AffineVariety,
                 coords):
        coords = list(coords)
        if len(coords) != len(target.vars):
            raise RingError("coordinate count does not match the target")
        for f in coords:
            if f.variety is not source:
                raise RingError("coordinate function on the wrong variety")
        for g in target.ideal.gens:
            values = dict(zip(target.vars, coords))
            img = g.evaluate(values,
                             lift=lambda c, s=source: s.function_field_elem(
                                 s.ring.from_scalar(c)))
            if not img.is_zero():
                raise RingError(
                    f"coordinates do not satisfy the target equation {g}")
        self.source = source
        self.target = target
        self.coords = coords


def projection_map(source: AffineVariety, target: AffineVariety,
                   names) -> RationalMapData:
    """The map picking out the listed source coordinates."""
    coords = [source.function_field_elem(source.ring.var(n)) for n in names]
    return RationalMapData(source, target, coords)


# ---------------------------------------------------------------------------
# locus
# ---------------------------------------------------------------------------

def locus(elems, K: FieldDescriptor, variables=None) -> AffineVariety:
    """The K-Zariski closure of the tuple: kernel of K[x..] -> K(tuple),
    by elimination.  Always K-irreducible."""
    elems = list(elems)
    n = len(elems)
    variables = tuple(variables) if variables else tuple(
        f"x{i+1}" for i in range(n))
    if len(variables) != n:
        raise RingError("variable count mismatch")
    if n == 0:
        return AffineVariety(K, (), [], known_irreducible=True)
    if all(isinstance(a, FunctionFieldElem) for a in elems):
        return _locus_function_field(elems, K, variables)
    if not all(isinstance(a, FieldScalar) for a in elems):
        raise UnsupportedInstance("locus needs scalars or function-field "
                                  "elements")
    L = elems[0].field
    if any(a.field != L for a in elems):
        raise RingError("locus tuple spans several fields")
    if L == K:
        ring = PolyRing(K, variables)
        gens = [ring.var(v) - ring.from_scalar(a)
                for v, a in zip(variables, elems)]
        return AffineVariety(K, variables, gens, known_irreducible=True)
    if L.kind == "ratfunc":
        return _locus_ratfunc(elems, K, variables, L)
    if L.kind == "gf" and K.kind == "gf":
        return _locus_gf(elems, K, variables, L)
    raise UnsupportedInstance("unsupported ambient algebra for locus")


def _locus_ratfunc(elems, K, variables, L):
    """Tuple of rational functions over the prime field of K."""
    if K.kind == "gf" and K.k != 1:
        raise UnsupportedInstance(
            "locus of transcendentals over a proper finite extension")
    if K.p != L.p:
        raise FieldError("characteristic mismatch")
    aux = tuple(f"{t}_aux" for t in L.tvars)
    inv = "inv_aux"
    work = PolyRing(K, aux + variables + (inv,))
    gens = []
    dens = work.one()
    for v, a in zip(variables, elems):
        num = _fp_poly_to_ring(a.rep.numer, L, work, aux)
        den = _fp_poly_to_ring(a.rep.denom, L, work, aux)
        gens.append(work.var(v) * den - num)
        dens = dens * den
    gens.append(work.var(inv) * dens - work.one())
    ideal = Ideal(work, gens).eliminate(aux + (inv,))
    return AffineVariety(K, variables, ideal, known_irreducible=True)


def _fp_poly_to_ring(poly, L, ring, aux_names):
    terms = {}
    p = L.p
    for mono, c in poly.terms():
        exps = [0] * ring.nvars
        for name, d in zip(aux_names, mono):
            exps[ring._var_index[name]] = d
        terms[tuple(exps)] = ring.field.from_int(int(c) % p)
    return MultiPoly(ring, {e: c for e, c in terms.items()
                            if not c.is_zero()})


def _locus_gf(elems, K, variables, L):
    if L.k % K.k != 0 or K.p != L.p:
        raise FieldError("not a subfield")
    minpoly = _minpoly_over_subfield(L, K)
    gname = "gen_aux"
    work = PolyRing(K, (gname,) + variables)
    g = work.var(gname)
    gens = []
    acc = work.zero()
    for d, c in enumerate(minpoly):
        acc = acc + work.from_scalar(c) * g ** d
    gens.append(acc)
    for v, a in zip(variables, elems):
        expr = work.zero()
        for d, c in enumerate(a.rep):
            if c:
                expr = expr + work.from_scalar(K.from_int(c)) * g ** d
        gens.append(work.var(v) - expr)
    ideal = Ideal(work, gens).eliminate((gname,))
    return AffineVariety(K, variables, ideal, known_irreducible=True)


def _minpoly_over_subfield(L, K):
    """Monic minimal polynomial over K of the generator of L; K embeds by
    c -> c(gamma^(kL/kK))-free direct check: subfield elements are exactly
    the Frobenius^k-fixed ones, located by linear algebra over F_p."""
    p = L.p
    gamma = L.generator()
    # K inside L: fixed field of x -> x^(p^kK); find an F_p-basis
    fixed = [x for x in _subfield_elements(L, K)]
    # K-span over F_p: vectors kappa * gamma^j
    powers = [L.one()]
    for _ in range(L.k):
        powers.append(powers[-1] * gamma)
    kbasis = _fp_basis(fixed, p, L.k)
    for d in range(1, L.k + 1):
        cols = []
        tags = []
        for j in range(d):
            for kb in kbasis:
                cols.append(list((kb * powers[j]).rep))
                tags.append((j, kb))
        sol = factor._solve_mod_p(cols, list(powers[d].rep), p)
        if sol is None:
            continue
        coeffs = [K.zero()] * (d + 1)
        for s, (j, kb) in zip(sol, tags):
            if s:
                kk = _project_gf(kb, K, L)
                coeffs[j] = coeffs[j] + K.from_int(s) * kk
        coeffs = [-c for c in coeffs[:d]] + [K.one()]
        return coeffs
    raise CharpkError("minimal polynomial search failed")


def _subfield_elements(L, K):
    """Elements of the copy of K inside L (Frobenius^kK-fixed)."""
    q = K.p ** K.k
    out = []
    for x in iter_gf_elements(L):
        if x ** q == x:
            out.append(x)
    return out


def _fp_basis(elements, p, dim):
    basis = []
    rows = []
    for x in elements:
        cand = rows + [list(x.rep)]
        m = [[v % p for v in row] for row in cand]
        if _fp_rank(m, p) == len(cand):
            rows.append(list(x.rep))
            basis.append(x)
        if len(basis) == dim:
            break
    return basis


def _fp_rank(rows, p):
    rows = [list(r) for r in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = None
        for i in range(rank, len(rows)):
            if rows[i][c] % p:
                piv = i
                break
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][c], p - 2, p)
        rows[rank] = [(v * inv) % p for v in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][c] % p:
                f = rows[i][c]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i],
                                                          rows[rank])]
        rank += 1
    return rank


def _project_gf(x, K, L):
    """x in L known to lie in the copy of K: coordinates over K's basis."""
    cols = []
    gen = K.generator()
    # embed K into L via Frobenius-fixed identification: the copy of K is
    # generated by an element with K's minimal polynomial; use linear algebra
    # over F_p directly on the canonical generator images
    emb = _gf_embedding(K, L)
    for i in range(K.k):
        cols.append(list(emb(gen ** i).rep))
    sol = factor._solve_mod_p(cols, list(x.rep), K.p)
    if sol is None:
        raise CharpkError("element not in the subfield copy")
    return FieldScalar(K, tuple(sol))


def _gf_embedding(K, L):
    """An embedding K -> L (the canonical one from a root of K's modulus)."""
    if K.k == 1:
        return lambda x: L.from_int(x.rep[0])
    mod_coeffs = [L.from_int(c) for c in K.modulus]
    roots = factor.uni_roots(mod_coeffs, L)
    if not roots:
        raise FieldError("no embedding: modulus has no root")
    beta = min((r for r, _ in roots), key=lambda r: r.rep)

    def embed(x):
        acc = L.zero()
        for c in reversed(x.rep):
            acc = acc * beta + L.from_int(c)
        return acc
    return embed


def _locus_function_field(elems, K, variables):
    W = elems[0].variety
    if any(f.variety is not W for f in elems):
        raise RingError("locus tuple on several varieties")
    if W.field != K:
        raise UnsupportedInstance("locus base field must match the variety")
    aux = tuple(f"{v}_aux" for v in W.vars)
    inv = "inv_aux"
    work = PolyRing(K, aux + variables + (inv,))
    ren = dict(zip(W.vars, aux))
    gens = [g.rename(work, ren) for g in W.ideal.gens]
    dens = work.one()
    for v, f in zip(variables, elems):
        num = f.num.rename(work, ren)
        den = f.den.rename(work, ren)
        gens.append(work.var(v) * den - num)
        dens = dens * den
    gens.append(work.var(inv) * dens - work.one())
    ideal = Ideal(work, gens).eliminate(aux + (inv,))
    return AffineVariety(K, variables, ideal, known_irreducible=True)


# ---------------------------------------------------------------------------
# irreducibility
# ---------------------------------------------------------------------------

def _linear_in_var_primitive(f: MultiPoly):
    """True if f = A*v + B with B free of v and gcd(A, B) = 1: then f is
    irreducible, and absolutely so (gcds persist under field extension)."""
    for v in sorted(f.variables_used()):
        if f.degree_in(v) != 1:
            continue
        iv = f.ring._var_index[v]
        a_terms, b_terms = {}, {}
        for e, c in f.terms.items():
            if e[iv] == 1:
                ne = list(e)
                ne[iv] = 0
                a_terms[tuple(ne)] = c
            else:
                b_terms[e] = c
        A = MultiPoly(f.ring, a_terms)
        B = MultiPoly(f.ring, b_terms)
        if A.is_constant():
            return True
        try:
            g = factor.mp_gcd(A, B)
        except (CharpkError, RecursionError):
            continue
        if g.is_constant():
            return True
    return False


def _distinct_factor_count(f: MultiPoly):
    unit, facs = factor.factor_poly(f)
    return len(facs), facs


def _single_geometric_root(h: MultiPoly, var: str) -> bool:
    """h irreducible univariate: exactly one root over the closure iff h is
    x - c or an iterated p-th power of such (h(x) = g(x^p) descends on
    exponents only)."""
    d = h.degree_in(var)
    if d <= 1:
        return True
    p = h.ring.field.p
    iv = h.ring._var_index[var]
    if all(e[iv] % p == 0 for e in h.terms):
        g = MultiPoly(h.ring, {tuple(x // p if i == iv else x
                                     for i, x in enumerate(e)): c
                               for e, c in h.terms.items()})
        return _single_geometric_root(g, var)
    return False


def _triangular_shape(V: AffineVariety):
    """Lex Groebner basis of shape f1(v1), v2 - g2(v1), ..: returns
    (v1, f1) or None."""
    gb = list(V.ideal.groebner("lex"))
    if not gb:
        return None
    used = sorted(set().union(*[g.variables_used() for g in gb]))
    # find the single non-linear generator; all others must peel
    peel = peel_graph(V)
    if len(peel.gens) != 1:
        return None
    f1 = peel.gens[0]
    uvars = f1.variables_used()
    if len(uvars) != 1:
        return None
    v1 = next(iter(uvars))
    # remaining free variables beyond v1 would make V positive-dimensional
    if set(peel.free_vars) - {v1}:
        return None
    return v1, f1


def is_irreducible(V: AffineVariety) -> bool:
    if "irreducible" in V._flags:
        return V._flags["irreducible"]
    V.require_nonempty()
    result = _decide_irreducible(V, absolute=False)
    V._flags["irreducible"] = result
    return result


def is_absolutely_irreducible(V: AffineVariety) -> bool:
    if "abs_irreducible" in V._flags:
        return V._flags["abs_irreducible"]
    V.require_nonempty()
    result = _decide_irreducible(V, absolute=True)
    V._flags["abs_irreducible"] = result
    if result:
        V._flags["irreducible"] = True
    return result


def _decide_irreducible(V: AffineVariety, absolute: bool) -> bool:
    peel = peel_graph(V)
    gens = peel.gens
    if not gens:
        return True  # affine space
    if len(gens) == 1:
        return _poly_irreducible(gens[0], absolute)
    tri = _triangular_shape(V)
    if tri is not None:
        v1, f1 = tri
        return _poly_irreducible_zero_dim(f1, v1, absolute)
    red = _rational_graph_reduction(V, gens)
    if red is not None:
        return _decide_irreducible(red, absolute)
    if not absolute and V._flags.get("irreducible"):
        return True
    raise UnsupportedInstance(
        "irreducibility decided only for hypersurfaces, zero-dimensional "
        "triangular systems, and graph/locus presentations")


def _rational_graph_reduction(V: AffineVariety, gens):
    """If some generator reads A*v + B with v absent from all other
    generators and A, B without a common zero on them, V is (the closure
    of) a graph over the variety of the remaining generators: recurse
    there.  Returns the reduced variety or None."""
    ring = V.ring
    for gi, g in enumerate(gens):
        for v in sorted(g.variables_used()):
            if g.degree_in(v) != 1:
                continue
            others = [h for j, h in enumerate(gens) if j != gi]
            if any(h.degree_in(v) for h in others):
                continue
            iv = ring._var_index[v]
            a_terms, b_terms = {}, {}
            for e, c in g.terms.items():
                if e[iv] == 1:
                    ne = list(e)
                    ne[iv] = 0
                    a_terms[tuple(ne)] = c
                elif e[iv] == 0:
                    b_terms[e] = c
                else:
                    a_terms = None
                    break
            if a_terms is None:
                continue
            A = MultiPoly(ring, a_terms)
            B = MultiPoly(ring, b_terms)
            if not Ideal(ring, others + [A, B]).is_trivial():
                continue
            new_vars = tuple(w for w in V.vars if w != v)
            sub = PolyRing(V.field, new_vars)
            return AffineVariety(V.field, new_vars,
                                 [h.rename(sub) for h in others])
    return None


def _poly_irreducible(f: MultiPoly, absolute: bool) -> bool:
    used = sorted(f.variables_used())
    if not used:
        return False  # constant: empty or whole space, both rejected above
    if len(used) == 1:
        return _poly_irreducible_zero_dim(f, used[0], absolute)
    if _linear_in_var_primitive(f):
        return True
    field = f.ring.field
    if field.kind == "gf":
        if absolute:
            if len(used) == 2:
                return factor.is_absolutely_irreducible_poly(f)
            raise UnsupportedInstance(
                "absolute irreducibility beyond two variables")
        try:
            n, _ = _distinct_factor_count(f)
            return n == 1
        except UnsupportedInstance:
            raise UnsupportedInstance(
                "irreducibility for this variable count is unsupported")
    # rational-function coefficients
    raise UnsupportedInstance(
        "hypersurface irreducibility over F_p(t..) beyond the linear-in-a-"
        "variable class is unsupported")


def _poly_irreducible_zero_dim(f: MultiPoly, var: str, absolute: bool) -> bool:
    """V(f) in the affine line (or a triangular system over it)."""
    n, facs = _distinct_factor_count(f)
    if n != 1:
        return False
    if not absolute:
        return True
    return _single_geometric_root(facs[0][0], var)


# ---------------------------------------------------------------------------
# dominance
# ---------------------------------------------------------------------------

def _radical_contains(ideal: Ideal, f: MultiPoly) -> bool:
    """f in sqrt(I) by the auxiliary-inverse test: 1 in I + <z f - 1>."""
    if f.is_zero():
        return True
    if ideal.contains(f):
        return True
    ring = ideal.ring
    aux = "rad_aux"
    work = PolyRing(ring.field, ring.vars + (aux,))
    gens = [g.rename(work) for g in ideal.gens]
    gens.append(work.var(aux) * f.rename(work) - work.one())
    return Ideal(work, gens).is_trivial()


def is_dominant(m: RationalMapData) -> bool:
    """The pullback K[V] -> K(W) is injective: the coordinate-function
    locus ideal must be contained in the radical of I(V)."""
    if not is_irreducible(m.source):
        raise PreconditionError("dominance needs a K-irreducible source")
    J = _locus_function_field(m.coords, m.source.field, m.target.vars)
    for g in J.ideal.gens:
        if not _radical_contains(m.target.ideal,
                                 g.rename(m.target.ring)):
            return False
    return True


def projection_dominant(source: AffineVariety, target: AffineVariety,
                        names) -> bool:
    """Dominance of the coordinate projection source -> target picking the
    listed source variables (no irreducibility demanded of the source)."""
    names = list(names)
    drop = [v for v in source.vars if v not in set(names)]
    J = source.ideal.eliminate(drop)
    ren = dict(zip(names, target.vars))
    for g in J.gens:
        if not _radical_contains(target.ideal, g.rename(target.ring, ren)):
            return False
    return True


# ---------------------------------------------------------------------------
# rational points
# ---------------------------------------------------------------------------

def enumerate_points(V: AffineVariety, bound=None):
    """All points of V(K): exhaustive for finite K; for F_p(t..), all
    points of coordinate height <= bound.  Deterministic order."""
    K = V.field
    n = len(V.vars)
    if n == 0:
        if not V.is_empty():
            yield ()
        return
    if K.kind == "gf":
        coords = list(iter_gf_elements(K))
    else:
        if bound is None:
            raise PreconditionError(
                "point enumeration over F_p(t..) needs a height bound")
        coords = list(iter_elements(K, bound))
    for point in itertools.product(coords, repeat=n):
        if V.contains_point(point):
            yield point


# ---------------------------------------------------------------------------
# p-th powers and p-independence in K(V)
# ---------------------------------------------------------------------------

class PStructureVerdict:
    """Tri-state outcome with certificate data."""

    __slots__ = ("status", "value", "witness", "reason")

    def __init__(self, status, value=None, witness=None, reason=""):
        self.status = status
        self.value = value
        self.witness = witness
        self.reason = reason

    def __repr__(self):
        return f"<{self.status}: {self.reason}>"


def ppower_test(f: FunctionFieldElem, bound: int = 2,
                point_bound: int = 2) -> PStructureVerdict:
    """Is f a p-th power in K(V)?  status in {"root", "absent",
    "undecided"}; a "root" result carries g with g^p = f, re-verified."""
    V = f.variety
    model = function_field_model(V)
    if model is not None:
        x = model.embed(f)
        r = pth_root(x)
        if r is None:
            return PStructureVerdict(
                "absent", reason="exact: K(V) is a rational function "
                "field and f has no p-th root there")
        g = model.to_function(r)
        _verify_root(f, g)
        return PStructureVerdict("root", value=g, reason="exact root")
    g = _ppower_ansatz(f, bound)
    if g is not None:
        _verify_root(f, g)
        return PStructureVerdict("root", value=g,
                                 reason=f"root found at degree bound {bound}")
    w = _ppower_witness(f, point_bound)
    if w is not None:
        return PStructureVerdict(
            "absent", witness=w,
            reason="evaluation witness: value is not a p-th power in K")
    return PStructureVerdict("undecided",
                             reason=f"undecided at degree bound {bound}")


def _verify_root(f, g):
    p = f.variety.field.p
    if not (g ** p - f).is_zero():
        raise CharpkError("p-th root verification failed")


def _ppower_witness(f, point_bound):
    V = f.variety
    K = V.field
    count = 0
    for point in enumerate_points(V, bound=point_bound):
        val = f.evaluate(point)
        if val is None:
            continue
        if not is_pth_power(val):
            return point
        count += 1
        if count > 500:
            break
    return None


def _monomials_to_degree(ring, names, bound):
    out = []
    idx = [ring._var_index[v] for v in names]
    for combo in itertools.product(range(bound + 1), repeat=len(names)):
        if sum(combo) > bound:
            continue
        e = [0] * ring.nvars
        for i, d in zip(idx, combo):
            e[i] = d
        out.append(tuple(e))
    out.sort(key=lambda e: (sum(e), e))
    return out


def _semilinear_solve(cols, rhs, K, homogeneous=False):
    """Solve sum_j c_j^p cols[j] = rhs for c_j in K, where cols/rhs are
    K-vectors; exact via p-components (imperfect K) or direct substitution
    (perfect K).  Returns a solution list or (for homogeneous) a basis."""
    if K.is_perfect:
        if homogeneous:
            basis = linalg.nullspace([list(r) for r in
                                      _transpose(cols)],
                                     ncols=len(cols), zero=K.zero(),
                                     one=K.one())
            return [[pth_root(v) for v in vec] for vec in basis]
        sol = linalg.solve([list(r) for r in _transpose(cols)], rhs)
        if sol is None:
            return None
        return [pth_root(v) for v in sol]
    # imperfect: comp_a(sum c_j^p x) = sum c_j comp_a(x) is K-linear
    row_index = lambdafn.monomial_exponents(K.p, K.imperfection_exponent)
    matrix = []
    vec = []
    ncols = len(cols)
    comp_cols = []
    for col in cols:
        comp_cols.append([p_components(x) for x in col])
    comp_rhs = [p_components(x) for x in rhs] if rhs is not None else None
    nrows = len(cols[0]) if cols else 0
    for i in range(nrows):
        for a in row_index:
            matrix.append([comp_cols[j][i].get(a, K.zero())
                           for j in range(ncols)])
            if comp_rhs is not None:
                vec.append(comp_rhs[i].get(a, K.zero()))
    if homogeneous:
        return linalg.nullspace(matrix, ncols=ncols, zero=K.zero(),
                                one=K.one())
    return linalg.solve(matrix, vec)


def _transpose(cols):
    return [[col[i] for col in cols] for i in range(len(cols[0]))]


def _nf_coeff_vector(poly, gb, standard, ring):
    r = normal_form(poly, gb) if gb else poly
    vec = {}
    for e, c in r.terms.items():
        vec[e] = c
    for e in vec:
        if e not in standard:
            standard.append(e)
    return vec


def _ppower_ansatz(f, bound):
    """Search g = h / den-power with h of degree <= bound: needs
    num * den^(p-1) = h^p mod I(V), a semilinear system over K."""
    V = f.variety
    K = V.field
    p = K.p
    ring = V.ring
    gb = list(V.ideal.groebner())
    target = f.num * f.den ** (p - 1)
    monos = _monomials_to_degree(ring, V.vars, bound)
    standard = []
    cols_raw = []
    for e in monos:
        mp = MultiPoly(ring, {e: K.one()}) ** p
        cols_raw.append(_nf_coeff_vector(mp, gb, standard, ring))
    rhs_raw = _nf_coeff_vector(target, gb, standard, ring)
    cols = [[col.get(e, K.zero()) for e in standard] for col in cols_raw]
    rhs = [rhs_raw.get(e, K.zero()) for e in standard]
    sol = _semilinear_solve(cols, rhs, K)
    if sol is None:
        return None
    h = ring.zero()
    for e, c in zip(monos, sol):
        if not c.is_zero():
            h = h + MultiPoly(ring, {e: c})
    return FunctionFieldElem(V, h, f.den)


def pindep_function_field(fs, bound: int = 1,
                          point_bound: int = 2) -> PStructureVerdict:
    """p-independence of fs in K(V): status in {"independent",
    "dependent", "undecided"}."""
    fs = list(fs)
    if not fs:
        return PStructureVerdict("independent", reason="empty tuple")
    V = fs[0].variety
    if any(f.variety is not V for f in fs):
        raise RingError("functions on different varieties")
    K = V.field
    model = function_field_model(V)
    if model is not None:
        xs = [model.embed(f) for f in fs]
        if any(x.is_zero() for x in xs):
            return PStructureVerdict("dependent", reason="zero entry")
        ok, why = lambdafn.p_independence_verdict(xs, model.big)
        return PStructureVerdict("independent" if ok else "dependent",
                                 reason="exact: " + why)
    rel = _pdep_ansatz(fs, bound)
    if rel is not None:
        return PStructureVerdict("dependent", value=rel,
                                 reason=f"relation at degree bound {bound}")
    w = _pindep_point_witness(fs, point_bound)
    if w is not None:
        return PStructureVerdict(
            "independent", witness=w,
            reason="specialization witness: values p-independent in K")
    return PStructureVerdict("undecided",
                             reason=f"undecided at degree bound {bound}")


def _pdep_ansatz(fs, bound):
    """Nontrivial polynomial coefficients c_J with
    sum_J c_J^p m_J(fs) = 0 in K(V), cleared of denominators."""
    V = fs[0].variety
    K = V.field
    p = K.p
    ring = V.ring
    gb = list(V.ideal.groebner())
    dens = [f.den for f in fs]
    # scale the relation by the p-th power (prod_i d_i^(p-1))^p so every
    # p-monomial m_J becomes the polynomial prod_i n_i^(J_i) d_i^(p(p-1)-J_i)
    exps = lambdafn.monomial_exponents(p, len(fs))
    cleared = []
    for J in exps:
        m = ring.one()
        for f, d, j in zip(fs, dens, J):
            m = m * f.num ** j * d ** (p * (p - 1) - j)
        cleared.append(m)
    monos = _monomials_to_degree(ring, V.vars, bound)
    standard = []
    cols = []
    tags = []
    for Ji, MJ in enumerate(cleared):
        for e in monos:
            cm = MultiPoly(ring, {e: K.one()}) ** p * MJ
            cols.append(_nf_coeff_vector(cm, gb, standard, ring))
            tags.append((Ji, e))
    cols_full = [[col.get(e, K.zero()) for e in standard] for col in cols]
    basis = _semilinear_solve(cols_full, None, K, homogeneous=True)
    for vec in basis:
        coeffs = {}
        for (Ji, e), v in zip(tags, vec):
            if not v.is_zero():
                coeffs.setdefault(Ji, {})[e] = v
        polys = {Ji: MultiPoly(ring, t) for Ji, t in coeffs.items()}
        nontrivial = any(not (normal_form(cp, gb) if gb else cp).is_zero()
                         for cp in polys.values())
        if not nontrivial:
            continue
        # verify the relation exactly
        acc = ring.zero()
        for Ji, cp in polys.items():
            acc = acc + cp ** K.p * cleared[Ji]
        if (normal_form(acc, gb) if gb else acc).is_zero():
            return polys
    return None


def _pindep_point_witness(fs, point_bound):
    V = fs[0].variety
    K = V.field
    if K.is_perfect:
        return None
    if len(fs) > K.imperfection_exponent:
        return None
    count = 0
    for point in enumerate_points(V, bound=point_bound):
        vals = [f.evaluate(point) for f in fs]
        if any(v is None for v in vals):
            continue
        if lambdafn.is_p_independent(vals, K):
            return point
        count += 1
        if count > 200:
            break
    return None
