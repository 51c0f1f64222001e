"""Finite group actions on finite fields by automorphisms.

Automorphisms of GF(p^k) are determined by the image of the polynomial
generator, which must be a root of the defining polynomial; the group
law is composition.  The module computes automorphism groups of
extensions, fixed subfields, the Galois-correspondence report, codes of
finite sets (vanishing-polynomial coefficients), K-irreducibility of
finite Galois-stable sets (orbit transitivity), and the strongly-PAC
probe over a family of zero-dimensional defining polynomials.
"""

from __future__ import annotations

from .errors import (CharpkError, FieldError, PreconditionError,
                     UnsupportedInstance)
from .fields import FieldDescriptor, FieldScalar, iter_gf_elements
from . import factor


class FiniteGroup:
    """Element labels with a verified multiplication table."""

    __slots__ = ("elements", "table", "identity")

    def __init__(self, elements, table, identity=0):
        self.elements = tuple(elements)
        n = len(self.elements)
        self.table = tuple(tuple(row) for row in table)
        self.identity = identity
        if len(self.table) != n or any(len(r) != n for r in self.table):
            raise CharpkError("multiplication table shape mismatch")
        e = identity
        for i in range(n):
            if self.table[e][i] != i or self.table[i][e] != i:
                raise CharpkError("identity law fails")
        for i in range(n):
            if not any(self.table[i][j] == e for j in range(n)):
                raise CharpkError("missing inverse")
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if (self.table[self.table[i][j]][k]
                            != self.table[i][self.table[j][k]]):
                        raise CharpkError("associativity fails")

    @classmethod
    def cyclic(cls, n: int) -> "FiniteGroup":
        labels = ["e"] + [f"g^{i}" if i > 1 else "g" for i in range(1, n)]
        table = [[(i + j) % n for j in range(n)] for i in range(n)]
        return cls(labels, table, 0)

    def __len__(self):
        return len(self.elements)

    def op(self, i: int, j: int) -> int:
        return self.table[i][j]

    def inverse(self, i: int) -> int:
        for j in range(len(self.elements)):
            if self.table[i][j] == self.identity:
                return j
        raise CharpkError("no inverse")

    def generators(self):
        """A small generating set (greedy closure)."""
        n = len(self.elements)
        chosen = []
        closed = {self.identity}
        for i in range(n):
            if i in closed:
                continue
            chosen.append(i)
            frontier = set(closed) | {i}
            while True:
                new = {self.table[a][b] for a in frontier for b in frontier}
                if new <= frontier:
                    break
                frontier |= new
            closed = frontier
            if len(closed) == n:
                break
        return chosen


class _Automorphism:
    """Field map of GF(p^k) fixed by the image of the generator."""

    __slots__ = ("field", "gen_image", "_powers")

    def __init__(self, field: FieldDescriptor, gen_image: FieldScalar):
        if field.kind != "gf":
            raise UnsupportedInstance(
                "automorphism actions are supported on finite fields")
        if gen_image.field != field:
            raise FieldError("generator image outside the field")
        if field.k == 1:
            # the prime field has only the identity map; normalize the
            # (unused) generator image to the root of the modulus
            gen_image = field.zero()
        # the image must be a root of the defining polynomial
        acc = field.zero()
        for c in reversed(field.modulus):
            acc = acc * gen_image + field.from_int(c)
        if not acc.is_zero():
            raise FieldError(
                "generator image is not a root of the defining polynomial")
        self.field = field
        self.gen_image = gen_image
        self._powers = None

    def __call__(self, x: FieldScalar) -> FieldScalar:
        if self._powers is None:
            pw = [self.field.one()]
            for _ in range(self.field.k - 1):
                pw.append(pw[-1] * self.gen_image)
            self._powers = pw
        acc = self.field.zero()
        for c, pw in zip(x.rep, self._powers):
            if c:
                acc = acc + pw * self.field.from_int(c)
        return acc

    def compose(self, other: "_Automorphism") -> "_Automorphism":
        return _Automorphism(self.field, self(other.gen_image))

    def __eq__(self, other):
        return (isinstance(other, _Automorphism)
                and self.field == other.field
                and self.gen_image == other.gen_image)

    def __hash__(self):
        return hash((self.field, self.gen_image))


def frobenius_automorphism(field: FieldDescriptor,
                           power: int = 1) -> _Automorphism:
    return _Automorphism(field,
                         field.generator() ** (field.p ** (power % field.k)))


def identity_automorphism(field: FieldDescriptor) -> _Automorphism:
    return _Automorphism(field, field.generator())


class FieldAction:
    """A homomorphism G -> Aut(K) given on group elements."""

    __slots__ = ("group", "field", "sigmas")

    def __init__(self, group: FiniteGroup, field: FieldDescriptor, sigmas):
        sigmas = list(sigmas)
        if len(sigmas) != len(group):
            raise CharpkError("one automorphism per group element required")
        for i in range(len(group)):
            for j in range(len(group)):
                if sigmas[i].compose(sigmas[j]) != sigmas[group.op(i, j)]:
                    raise CharpkError(
                        "the assignment is not a group homomorphism")
        if sigmas[group.identity] != identity_automorphism(field):
            raise CharpkError("identity must act trivially")
        self.group = group
        self.field = field
        self.sigmas = sigmas

    @classmethod
    def cyclic_action(cls, n: int, field: FieldDescriptor,
                      generator_image) -> "FieldAction":
        """Z/n acting with the generator mapped to a named automorphism
        ("frobenius", "frobenius^j") or an explicit generator image."""
        group = FiniteGroup.cyclic(n)
        if isinstance(generator_image, str):
            text = generator_image.strip()
            if text == "frobenius":
                sigma = frobenius_automorphism(field)
            elif text.startswith("frobenius^"):
                sigma = frobenius_automorphism(field,
                                               int(text.split("^")[1]))
            else:
                sigma = _Automorphism(field, field.parse(text))
        elif isinstance(generator_image, _Automorphism):
            sigma = generator_image
        else:
            sigma = _Automorphism(field, generator_image)
        sigmas = [identity_automorphism(field)]
        for _ in range(n - 1):
            sigmas.append(sigma.compose(sigmas[-1]))
        return cls(group, field, sigmas)

    def apply(self, g: int, x: FieldScalar) -> FieldScalar:
        return self.sigmas[g](x)


# ---------------------------------------------------------------------------
# Galois groups and invariants
# ---------------------------------------------------------------------------

def subfield_descriptor(L: FieldDescriptor, d: int):
    """GF(p^d) with its canonical embedding into L."""
    K = FieldDescriptor("gf", L.p, d)
    if d == 1:
        return K, (lambda x: L.from_int(x.rep[0]))
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
    return K, embed


def galois_group(L: FieldDescriptor, F: FieldDescriptor):
    """(group, automorphisms, embedding of F) for a finite extension of
    finite fields: automorphisms send the generator to the roots in L of
    its minimal polynomial over F."""
    if L.kind != "gf" or F.kind != "gf" or L.p != F.p or L.k % F.k != 0:
        raise UnsupportedInstance("galois_group needs finite fields F <= L")
    K, embed = subfield_descriptor(L, F.k)
    # minimal polynomial of the generator over the copy of F: for finite
    # fields the automorphisms are exactly the powers of Frobenius^[F:F_p]
    autos = [identity_automorphism(L)]
    step = frobenius_automorphism(L, F.k)
    current = step
    while current != autos[0]:
        autos.append(current)
        current = step.compose(current)
    n = len(autos)
    index = {a.gen_image: i for i, a in enumerate(autos)}
    table = [[index[autos[i](autos[j].gen_image)] for j in range(n)]
             for i in range(n)]
    labels = ["id"] + [f"frob^{F.k * i}" if i > 1 else f"frob^{F.k}"
                       for i in range(1, n)]
    if F.k == 1 and n > 1:
        labels = ["id", "frob"] + [f"frob^{i}" for i in range(2, n)]
    group = FiniteGroup(labels, table, 0)
    return group, autos, embed


def invariants(act: FieldAction):
    """(descriptor of K^G, embedding into K): the simultaneous fixed
    subfield, by F_p-linear algebra on the generator powers."""
    L = act.field
    p = L.p
    fixed = []
    for x in iter_gf_elements(L):
        if all(s(x) == x for s in act.sigmas):
            fixed.append(x)
    d = 0
    count = len(fixed)
    while p ** d < count:
        d += 1
    if p ** d != count:
        raise CharpkError("fixed set is not a subfield")
    K, embed = subfield_descriptor(L, d)
    fixed_set = {x for x in fixed}
    for i in range(K.k):
        if embed(K.generator() ** i) not in fixed_set:
            raise CharpkError("computed subfield is not fixed")
    return K, embed


def is_faithful(act: FieldAction) -> bool:
    images = {s.gen_image for s in act.sigmas}
    return len(images) == len(act.group)


class GaloisDataReport:
    """The three Galois-correspondence checks plus the isomorphism."""

    __slots__ = ("algebraic_separable", "normal", "iso_with_group",
                 "invariant_field", "isomorphism")

    def __init__(self, algebraic_separable, normal, iso_with_group,
                 invariant_field, isomorphism):
        self.algebraic_separable = algebraic_separable
        self.normal = normal
        self.iso_with_group = iso_with_group
        self.invariant_field = invariant_field
        self.isomorphism = isomorphism

    def all_pass(self):
        return (self.algebraic_separable and self.normal
                and self.iso_with_group)


def check_galois_data(act: FieldAction) -> GaloisDataReport:
    if not is_faithful(act):
        raise PreconditionError("the Galois-data report needs a faithful "
                                "action")
    L = act.field
    F, embed = invariants(act)
    # (1) every element of L is separably algebraic over the fixed field:
    # for finite fields, x satisfies prod over the orbit of (T - sigma(x)),
    # which has fixed coefficients and distinct roots
    alg = True
    gamma = L.generator()
    orbit = sorted({s(gamma).rep for s in act.sigmas})
    coeffs = [L.one()]
    for rep in orbit:
        root = FieldScalar(L, rep)
        coeffs = factor.u_mul(coeffs, [-root, L.one()])
    fixed_ok = all(all(s(c) == c for s in act.sigmas) for c in coeffs)
    sqfree = factor.u_deg(factor.u_gcd(coeffs,
                                       factor.u_deriv(coeffs))) == 0
    alg = fixed_ok and sqfree
    # (2) normality: each sigma_g restricts to the identity on the fixed
    # field and permutes L (so sigma(L) = L over the invariants)
    normal = True
    for s in act.sigmas:
        if s(embed(F.generator())) != embed(F.generator()):
            normal = False
        if len({s(x).rep for x in (L.generator() ** i
                                   for i in range(L.k))}) != L.k:
            normal = False
    # (3) Aut(L/F) is isomorphic to G via g -> sigma_g
    group_auto, autos, _ = galois_group(L, F)
    auto_index = {a.gen_image: i for i, a in enumerate(autos)}
    iso = {}
    iso_ok = len(act.group) == len(autos)
    if iso_ok:
        for g, s in enumerate(act.sigmas):
            if s.gen_image not in auto_index:
                iso_ok = False
                break
            iso[g] = auto_index[s.gen_image]
        if iso_ok and len(set(iso.values())) != len(iso):
            iso_ok = False
        if iso_ok:
            for i in range(len(act.group)):
                for j in range(len(act.group)):
                    gi = act.group.op(i, j)
                    if group_auto.op(iso[i], iso[j]) != iso[gi]:
                        iso_ok = False
    return GaloisDataReport(alg, normal, iso_ok, F, iso)


# ---------------------------------------------------------------------------
# finite-set codes and K-irreducibility
# ---------------------------------------------------------------------------

class FiniteSetCode:
    """Coefficients of the monic vanishing polynomial of the set."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        self.field = field
        self.coeffs = tuple(coeffs)

    def __eq__(self, other):
        return (isinstance(other, FiniteSetCode)
                and self.field == other.field
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __repr__(self):
        return f"FiniteSetCode({', '.join(str(c) for c in self.coeffs)})"


def code_finite_set(S) -> FiniteSetCode:
    S = list(S)
    if not S:
        raise PreconditionError("the code of the empty set is undefined")
    field = S[0].field
    seen = []
    for x in S:
        if x.field != field:
            raise FieldError("set elements in different fields")
        if x not in seen:
            seen.append(x)
    poly = [field.one()]
    for x in sorted(seen, key=_scalar_key):
        poly = factor.u_mul(poly, [-x, field.one()])
    return FiniteSetCode(field, poly[:-1])


def _scalar_key(x: FieldScalar):
    return x.rep if x.field.kind == "gf" else str(x)


def finite_set_k_irreducible(S, K: FieldDescriptor) -> bool:
    """Transitivity of the K-Galois (Frobenius) action on S; elements in
    a common finite field, tuples allowed coordinatewise."""
    S = [s if isinstance(s, tuple) else (s,) for s in S]
    if not S:
        raise PreconditionError("empty set")
    L = S[0][0].field
    if L.kind != "gf" or K.kind != "gf" or K.p != L.p or L.k % K.k != 0:
        raise UnsupportedInstance("supported for finite fields K <= L")
    q = K.p ** K.k
    pts = {tuple(x.rep for x in s) for s in S}

    def frob(s):
        return tuple((x ** q) for x in s)

    for s in S:
        img = tuple(x.rep for x in frob(s))
        if img not in pts:
            raise PreconditionError("set is not stable under the K-Galois "
                                    "action")
    start = S[0]
    orbit = {tuple(x.rep for x in start)}
    cur = start
    while True:
        cur = frob(cur)
        key = tuple(x.rep for x in cur)
        if key in orbit:
            break
        orbit.add(key)
    return len(orbit) == len(pts)


# ---------------------------------------------------------------------------
# the strongly-PAC probe
# ---------------------------------------------------------------------------

class ProbeReport:
    """Per-theta verdicts; overall_pass iff no K-irreducible theta misses
    an F-rational solution."""

    __slots__ = ("entries", "overall_pass")

    def __init__(self, entries):
        self.entries = entries
        self.overall_pass = all(e["pass"] for e in entries)


def alg_strongly_pac_probe(F: FieldDescriptor, K: FieldDescriptor,
                           thetas) -> ProbeReport:
    """For each univariate theta over F with finitely many roots: if the
    root set is K-irreducible (one K-Galois orbit), check theta has a root
    in F; a K-irreducible theta without one certifies failure."""
    if F.kind != "gf" or K.kind != "gf" or F.p != K.p or K.k % F.k != 0:
        raise UnsupportedInstance("probe supports finite fields F <= K")
    entries = []
    for theta in thetas:
        coeffs = _theta_coeffs(theta, F)
        if factor.u_deg(coeffs) < 1:
            raise PreconditionError("theta must be nonconstant")
        # orbit structure over K: degrees of the distinct irreducible
        # factors over K
        coeffs_K = [_embed_into(c, F, K) for c in coeffs]
        _, facs_K = factor.uni_factor(coeffs_K, K)
        orbit_sizes = sorted(factor.u_deg(g) for g, _ in facs_K)
        k_irreducible = len(orbit_sizes) == 1
        roots_F = [r for r, _ in factor.uni_roots(coeffs, F)]
        entry = {
            "theta": "[" + ", ".join(str(c) for c in coeffs) + "]",
            "orbit_sizes": orbit_sizes,
            "k_irreducible": k_irreducible,
            "f_roots": [str(r) for r in roots_F],
            "pass": (not k_irreducible) or bool(roots_F),
        }
        entries.append(entry)
    return ProbeReport(entries)


def _theta_coeffs(theta, F):
    if isinstance(theta, (list, tuple)):
        return factor.u_trim([c if isinstance(c, FieldScalar)
                              else F.from_int(c) for c in theta])
    # MultiPoly in one variable
    used = sorted(theta.variables_used())
    if len(used) != 1:
        raise UnsupportedInstance("theta must be univariate")
    return factor.u_from_mp(theta, used[0])


def _embed_into(c: FieldScalar, F: FieldDescriptor, K: FieldDescriptor):
    if F.k == 1:
        return K.from_int(c.rep[0])
    _, embed = subfield_descriptor(K, F.k)
    return embed(c)
