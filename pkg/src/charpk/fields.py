"""Exact arithmetic for GF(p^k) and F_p(t1..tm), plus the characteristic-p
structure maps: Frobenius, p-th roots, lambda0 and p-component decomposition.

Scalars are canonically normalized so that equality of representations is
equality of values:

* GF(p^k): coefficient vector of length k over the polynomial basis of a
  stored irreducible defining polynomial;
* F_p(t..): reduced fraction with monic denominator (leading coefficient 1
  under the internal term order).

The m = 0 rational-function field degenerates to the prime field.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from sympy.polys.domains import FF
from sympy.polys.fields import field as _frac_field

from .errors import FieldError


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


# ---------------------------------------------------------------------------
# dense univariate arithmetic over F_p (int lists, ascending coefficients)
# ---------------------------------------------------------------------------

def _trim(f):
    while f and f[-1] == 0:
        f.pop()
    return f


def _poly_mul_p(f, g, p):
    if not f or not g:
        return []
    if len(f) + len(g) > 16:
        # Kronecker packing: evaluate both at 2^bits and use int multiplication
        bound = (p - 1) * (p - 1) * min(len(f), len(g))
        bits = bound.bit_length() + 1
        fi = sum(a << (bits * i) for i, a in enumerate(f))
        gi = sum(b << (bits * i) for i, b in enumerate(g))
        prod = fi * gi
        mask = (1 << bits) - 1
        out = []
        for _ in range(len(f) + len(g) - 1):
            out.append((prod & mask) % p)
            prod >>= bits
        return _trim(out)
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = (out[i + j] + a * b) % p
    return _trim(out)


def _poly_divmod_p(f, g, p):
    f = list(f)
    dg = len(g) - 1
    inv_lc = pow(g[-1], p - 2, p)
    q = [0] * max(len(f) - dg, 0)
    while len(f) - 1 >= dg and f:
        c = (f[-1] * inv_lc) % p
        shift = len(f) - 1 - dg
        q[shift] = c
        for i, b in enumerate(g):
            f[shift + i] = (f[shift + i] - c * b) % p
        _trim(f)
    return q, f


def _poly_gcd_p(f, g, p):
    f, g = list(f), list(g)
    while g:
        f, g = g, _poly_divmod_p(f, g, p)[1]
    if f:
        inv = pow(f[-1], p - 2, p)
        f = [(c * inv) % p for c in f]
    return f


def _poly_powmod_p(f, n, mod, p):
    result = [1]
    base = _poly_divmod_p(list(f), mod, p)[1]
    while n:
        if n & 1:
            result = _poly_divmod_p(_poly_mul_p(result, base, p), mod, p)[1]
        base = _poly_divmod_p(_poly_mul_p(base, base, p), mod, p)[1]
        n >>= 1
    return result


def _is_irreducible_p(f, p):
    """Irreducibility of a monic univariate polynomial over F_p."""
    k = len(f) - 1
    if k < 1:
        return False
    if k == 1:
        return True
    x = [0, 1]
    # x^(p^k) = x mod f, and gcd(x^(p^(k/r)) - x, f) = 1 for prime r | k
    xq = _poly_powmod_p(x, p ** k, f, p)
    if _trim([(a - b) % p for a, b in itertools.zip_longest(xq, x, fillvalue=0)]):
        return False
    for r in range(2, k + 1):
        if k % r == 0 and _is_prime(r):
            xe = _poly_powmod_p(x, p ** (k // r), f, p)
            diff = _trim([(a - b) % p
                          for a, b in itertools.zip_longest(xe, x, fillvalue=0)])
            g = _poly_gcd_p(list(f), diff, p)
            if len(g) - 1 > 0:
                return False
    return True


@lru_cache(maxsize=None)
def _default_modulus(p: int, k: int):
    """First monic irreducible of degree k over F_p in base-p counter order."""
    if k == 1:
        return (0, 1)
    for n in range(p ** k):
        coeffs = []
        m = n
        for _ in range(k):
            coeffs.append(m % p)
            m //= p
        f = coeffs + [1]
        if _is_irreducible_p(f, p):
            return tuple(f)
    raise FieldError(f"no irreducible polynomial of degree {k} over F_{p}")


# ---------------------------------------------------------------------------
# descriptors
# ---------------------------------------------------------------------------

class FieldDescriptor:
    """Immutable description of a supported base field.

    kind == "gf":      GF(p^k) with stored irreducible defining polynomial.
    kind == "ratfunc": F_p(t1..tm), m >= 0 named transcendentals.
    """

    __slots__ = ("kind", "p", "k", "modulus", "gen_name", "tvars",
                 "_frac", "_ring", "_spec")

    def __init__(self, kind, p, k=1, modulus=None, gen_name="g", tvars=()):
        if not _is_prime(p):
            raise FieldError(f"characteristic {p} is not prime")
        self.kind = kind
        self.p = p
        if kind == "gf":
            if k < 1:
                raise FieldError("extension degree must be >= 1")
            self.k = k
            if modulus is None:
                modulus = _default_modulus(p, k)
            modulus = tuple(c % p for c in modulus)
            if len(modulus) != k + 1 or modulus[-1] != 1:
                raise FieldError("defining polynomial must be monic of degree k")
            if not _is_irreducible_p(list(modulus), p):
                raise FieldError("defining polynomial is reducible")
            self.modulus = modulus
            self.gen_name = gen_name
            self.tvars = ()
            self._frac = None
            self._ring = None
        elif kind == "ratfunc":
            tvars = tuple(tvars)
            if len(set(tvars)) != len(tvars):
                raise FieldError("duplicate transcendental names")
            self.k = 1
            self.modulus = None
            self.gen_name = None
            self.tvars = tvars
            frac = _frac_field(list(tvars), FF(p))[0]
            self._frac = frac
            self._ring = frac.to_ring()
        else:
            raise FieldError(f"unknown field kind {kind!r}")
        self._spec = self._make_spec()

    def _make_spec(self):
        if self.kind == "gf":
            return f"GF({self.p},{self.k},{_gf_poly_str(self.modulus, self.gen_name)})"
        return f"Fp({self.p};{','.join(self.tvars)})"

    # -- identity ----------------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, FieldDescriptor) and self._spec == other._spec

    def __hash__(self):
        return hash(self._spec)

    def __repr__(self):
        return f"FieldDescriptor({self._spec})"

    @property
    def spec(self):
        return self._spec

    @property
    def size(self):
        """Number of elements; None for infinite fields."""
        if self.kind == "gf":
            return self.p ** self.k
        return self.p if not self.tvars else None

    @property
    def imperfection_exponent(self):
        """m with [K : K^p] = p^m."""
        return len(self.tvars) if self.kind == "ratfunc" else 0

    @property
    def is_perfect(self):
        return self.imperfection_exponent == 0

    # -- element construction ---------------------------------------------

    def zero(self):
        return self.from_int(0)

    def one(self):
        return self.from_int(1)

    def from_int(self, n: int) -> "FieldScalar":
        if self.kind == "gf":
            vec = [0] * self.k
            vec[0] = n % self.p
            return FieldScalar(self, tuple(vec))
        return FieldScalar(self, self._frac(n % self.p))

    def generator(self) -> "FieldScalar":
        """The polynomial-basis generator of GF(p^k)."""
        if self.kind != "gf":
            raise FieldError("generator() is for GF(p^k) fields")
        if self.k == 1:
            return self.one()
        vec = [0] * self.k
        vec[1] = 1
        return FieldScalar(self, tuple(vec))

    def gens(self):
        """The transcendental generators of F_p(t..) as scalars."""
        if self.kind != "ratfunc":
            raise FieldError("gens() is for rational-function fields")
        return tuple(FieldScalar(self, self._frac(g))
                     for g in self._frac.gens)

    def gen(self, name: str) -> "FieldScalar":
        return self.gens()[self.tvars.index(name)]

    def from_frac(self, fr) -> "FieldScalar":
        """Wrap a sympy FracElement, normalizing to monic denominator."""
        return FieldScalar(self, fr)

    def parse(self, text: str) -> "FieldScalar":
        return _parse_scalar(text, self)


def _gf_poly_str(coeffs, name):
    parts = []
    for e in range(len(coeffs) - 1, -1, -1):
        c = coeffs[e]
        if c == 0:
            continue
        if e == 0:
            parts.append(str(c))
        else:
            head = "" if c == 1 else f"{c}*"
            parts.append(f"{head}{name}" if e == 1 else f"{head}{name}^{e}")
    return "+".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# scalars
# ---------------------------------------------------------------------------

class FieldScalar:
    """An element of a FieldDescriptor, canonically normalized."""

    __slots__ = ("field", "rep")

    def __init__(self, field: FieldDescriptor, rep):
        self.field = field
        if field.kind == "gf":
            self.rep = tuple(c % field.p for c in rep)
            if len(self.rep) != field.k:
                raise FieldError("coefficient vector length mismatch")
        else:
            self.rep = _normalize_frac(rep, field)

    # -- helpers -----------------------------------------------------------

    def _check(self, other):
        if not isinstance(other, FieldScalar):
            if isinstance(other, int):
                return self.field.from_int(other)
            return NotImplemented
        if other.field != self.field:
            raise FieldError("mixed-field arithmetic")
        return other

    def is_zero(self):
        if self.field.kind == "gf":
            return all(c == 0 for c in self.rep)
        return not self.rep.numer

    def is_one(self):
        return self == self.field.one()

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        if self.field.kind == "gf":
            return FieldScalar(self.field,
                               tuple(a + b for a, b in zip(self.rep, other.rep)))
        return FieldScalar(self.field, self.rep + other.rep)

    __radd__ = __add__

    def __neg__(self):
        if self.field.kind == "gf":
            return FieldScalar(self.field, tuple(-a for a in self.rep))
        return FieldScalar(self.field, -self.rep)

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        if self.field.kind == "gf":
            prod = _poly_mul_p(list(self.rep), list(other.rep), self.field.p)
            rem = _poly_divmod_p(prod, list(self.field.modulus), self.field.p)[1]
            rem += [0] * (self.field.k - len(rem))
            return FieldScalar(self.field, tuple(rem))
        return FieldScalar(self.field, self.rep * other.rep)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("field scalar inverse of zero")
        if self.field.kind == "gf":
            p, mod = self.field.p, list(self.field.modulus)
            # extended Euclid in F_p[x]
            r0, r1 = mod, _trim(list(self.rep))
            s0, s1 = [], [1]
            while r1:
                q, r = _poly_divmod_p(r0, r1, p)
                r0, r1 = r1, r
                s0, s1 = s1, _trim([(a - b) % p for a, b in
                                    itertools.zip_longest(s0, _poly_mul_p(q, s1, p),
                                                          fillvalue=0)])
            inv_lc = pow(r0[-1], p - 2, p)
            s0 = [(c * inv_lc) % p for c in s0]
            s0 = _poly_divmod_p(s0, mod, p)[1]
            s0 += [0] * (self.field.k - len(s0))
            return FieldScalar(self.field, tuple(s0[:self.field.k]))
        return FieldScalar(self.field, self.rep ** -1)

    def __truediv__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- identity ----------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.field.from_int(other)
        if not isinstance(other, FieldScalar):
            return NotImplemented
        return self.field == other.field and self.rep == other.rep

    def __hash__(self):
        if self.field.kind == "gf":
            return hash((self.field, self.rep))
        return hash((self.field, self.rep.numer, self.rep.denom))

    def __repr__(self):
        return f"<{self} in {self.field.spec}>"

    def __str__(self):
        if self.field.kind == "gf":
            return _gf_poly_str(self.rep, self.field.gen_name)
        num = _ratpoly_str(self.rep.numer, self.field)
        if self.rep.denom == self.field._ring.one:
            return num
        den = _ratpoly_str(self.rep.denom, self.field)
        if "+" in num or "-" in num[1:]:
            num = f"({num})"
        if "+" in den or "-" in den[1:] or "*" in den or "^" in den:
            den = f"({den})"
        return f"{num}/{den}"


def _normalize_frac(fr, field):
    """Monic-denominator normal form of a sympy FracElement."""
    frac = field._frac
    if not isinstance(fr, type(frac.one)):
        fr = frac(fr)
    den = fr.denom
    lc = den.LC
    if lc != field._frac.domain.one:
        inv = lc ** -1
        fr = frac.raw_new(fr.numer.mul_ground(inv), den.mul_ground(inv))
    return fr


def _coeff_int(c, p):
    return int(c) % p


def _ratpoly_str(poly, field):
    p = field.p
    terms = sorted(poly.terms(), reverse=True)
    if not terms:
        return "0"
    parts = []
    for exps, c in terms:
        ci = _coeff_int(c, p)
        factors = []
        for name, e in zip(field.tvars, exps):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        if not factors:
            parts.append(str(ci))
        elif ci == 1:
            parts.append("*".join(factors))
        else:
            parts.append(f"{ci}*" + "*".join(factors))
    return "+".join(parts)


# ---------------------------------------------------------------------------
# field specification / scalar literal parsing
# ---------------------------------------------------------------------------

def make_field(spec: str) -> FieldDescriptor:
    """Build a field from a spec string: GF(p,k[,poly]) or Fp(p; t,s,...)."""
    text = spec.strip()
    if text.startswith("GF(") and text.endswith(")"):
        inner = text[3:-1]
        parts = _split_top(inner, ",")
        if len(parts) not in (2, 3):
            raise FieldError(f"bad field spec {spec!r}")
        p, k = int(parts[0]), int(parts[1])
        if len(parts) == 2:
            return FieldDescriptor("gf", p, k)
        gen_name, coeffs = _parse_gf_modulus(parts[2], p)
        return FieldDescriptor("gf", p, k, modulus=coeffs, gen_name=gen_name)
    if text.startswith("Fp(") and text.endswith(")"):
        inner = text[3:-1]
        if ";" not in inner:
            raise FieldError(f"bad field spec {spec!r} (missing ';')")
        head, tail = inner.split(";", 1)
        p = int(head.strip())
        names = tuple(n.strip() for n in tail.split(",") if n.strip())
        if not names:
            # F_p with an empty transcendence basis is the prime field
            return FieldDescriptor("gf", p, 1)
        return FieldDescriptor("ratfunc", p, tvars=names)
    raise FieldError(f"unrecognized field spec {spec!r}")


def _split_top(text, sep):
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return [s.strip() for s in parts]


def _parse_gf_modulus(text, p):
    """Parse a defining polynomial in a single variable; returns (name, coeffs)."""
    import re
    names = sorted(set(re.findall(r"[A-Za-z_][A-Za-z_0-9]*", text)))
    if len(names) != 1:
        raise FieldError(f"defining polynomial must use one variable: {text!r}")
    name = names[0]
    coeffs = {}
    for term in re.split(r"(?=[+-])", text.replace(" ", "")):
        if not term:
            continue
        sign = 1
        if term[0] == "+":
            term = term[1:]
        elif term[0] == "-":
            sign = -1
            term = term[1:]
        m = re.fullmatch(
            rf"(?:(\d+)\*?)?(?:{re.escape(name)}(?:\^(\d+))?)?", term)
        if not m or (m.group(1) is None and name not in term):
            m2 = re.fullmatch(r"(\d+)", term)
            if not m2:
                raise FieldError(f"cannot parse modulus term {term!r}")
            coeffs[0] = (coeffs.get(0, 0) + sign * int(m2.group(1))) % p
            continue
        c = int(m.group(1)) if m.group(1) else 1
        if name in term:
            e = int(m.group(2)) if m.group(2) else 1
        else:
            e = 0
        coeffs[e] = (coeffs.get(e, 0) + sign * c) % p
    deg = max(coeffs)
    vec = [coeffs.get(i, 0) for i in range(deg + 1)]
    return name, vec


class _ScalarParser:
    """Recursive-descent parser for scalar literals: ints, generators,
    + - * / ^ and parentheses."""

    def __init__(self, text, field):
        self.text = text
        self.pos = 0
        self.field = field

    def parse(self):
        v = self.expr()
        self.skip()
        if self.pos != len(self.text):
            raise FieldError(f"trailing input in scalar literal {self.text!r}")
        return v

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expr(self):
        v = self.term()
        while True:
            ch = self.peek()
            if ch == "+":
                self.pos += 1
                v = v + self.term()
            elif ch == "-":
                self.pos += 1
                v = v - self.term()
            else:
                return v

    def term(self):
        v = self.factor()
        while True:
            ch = self.peek()
            if ch == "*":
                self.pos += 1
                v = v * self.factor()
            elif ch == "/":
                self.pos += 1
                v = v / self.factor()
            else:
                return v

    def factor(self):
        ch = self.peek()
        if ch == "-":
            self.pos += 1
            return -self.factor()
        v = self.atom()
        if self.peek() == "^":
            self.pos += 1
            e = self.integer()
            v = v ** e
        return v

    def atom(self):
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            v = self.expr()
            if self.peek() != ")":
                raise FieldError(f"unbalanced parentheses in {self.text!r}")
            self.pos += 1
            return v
        if ch.isdigit():
            return self.field.from_int(self.integer())
        if ch.isalpha() or ch == "_":
            name = self.name()
            if self.field.kind == "gf":
                if name != self.field.gen_name:
                    raise FieldError(f"unknown generator {name!r}")
                return self.field.generator()
            if name not in self.field.tvars:
                raise FieldError(f"unknown transcendental {name!r}")
            return self.field.gen(name)
        raise FieldError(f"unexpected character {ch!r} in scalar literal")

    def integer(self):
        self.skip()
        start = self.pos
        neg = False
        if self.pos < len(self.text) and self.text[self.pos] == "-":
            neg = True
            self.pos += 1
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start + (1 if neg else 0):
            raise FieldError("expected integer")
        return int(self.text[start:self.pos])

    def name(self):
        start = self.pos
        while (self.pos < len(self.text)
               and (self.text[self.pos].isalnum() or self.text[self.pos] == "_")):
            self.pos += 1
        return self.text[start:self.pos]


def _parse_scalar(text, field):
    return _ScalarParser(text, field).parse()


def parse_scalar(text: str, field: FieldDescriptor) -> FieldScalar:
    return _parse_scalar(text, field)


# ---------------------------------------------------------------------------
# characteristic-p structure maps
# ---------------------------------------------------------------------------

def frobenius(x: FieldScalar) -> FieldScalar:
    """x ^ p."""
    return x ** x.field.p


def pth_root(x: FieldScalar):
    """The unique y with y^p = x when x is a p-th power, else None.

    GF(p^k) is perfect, so the root always exists.  For F_p(t..) membership
    in K^p is read off the canonical form: all exponents of the reduced
    numerator and denominator divisible by p (prime-field coefficients are
    automatically p-th powers).
    """
    field = x.field
    p = field.p
    if field.kind == "gf":
        # Frobenius has order k; its inverse is the (k-1)-st power.
        return x ** (p ** (field.k - 1)) if field.k > 1 else x
    if not field.tvars:
        return x
    num, den = x.rep.numer, x.rep.denom
    ring = field._ring
    out = []
    for poly in (num, den):
        terms = []
        for exps, c in poly.terms():
            if any(e % p for e in exps):
                return None
            terms.append((tuple(e // p for e in exps), c))
        out.append(ring.from_terms(terms))
    root = field.from_frac(field._frac(out[0]) / field._frac(out[1]))
    return root


def lambda0(x: FieldScalar) -> FieldScalar:
    """Inverse of Frobenius on p-th powers, identically 0 elsewhere."""
    r = pth_root(x)
    return r if r is not None else x.field.zero()


def is_pth_power(x: FieldScalar) -> bool:
    return pth_root(x) is not None


def p_components(x: FieldScalar) -> dict:
    """Decompose x = sum_a comp_a^p * t^a over the standard monomial
    K^p-basis {t^a : 0 <= a_i < p} of F_p(t..).

    Returns {exponent tuple a: comp_a}.  For perfect fields the only
    component is {(): pth_root(x)}.
    """
    field = x.field
    p = field.p
    if field.is_perfect:
        return {(): pth_root(x)}
    num, den = x.rep.numer, x.rep.denom
    ring = field._ring
    # x = num * den^(p-1) / den^p; split the numerator by residues mod p.
    g = num * den ** (p - 1)
    buckets = {}
    for exps, c in g.terms():
        a = tuple(e % p for e in exps)
        q = tuple(e // p for e in exps)
        buckets.setdefault(a, []).append((q, c))
    den_frac = field._frac(den)
    out = {}
    for a, terms in buckets.items():
        # prime-field coefficients equal their own p-th roots
        comp = field.from_frac(field._frac(ring.from_terms(terms)) / den_frac)
        if not comp.is_zero():
            out[a] = comp
    return out


def evaluate_scalar(x: FieldScalar, images: dict, target: FieldDescriptor):
    """Evaluate an F_p(t..) scalar at a point of a target field.

    images maps each transcendental name to a target FieldScalar; returns
    None when the denominator vanishes at the point.
    """
    field = x.field
    if field.kind == "gf":
        raise FieldError("evaluate_scalar is for rational-function scalars")
    if field.p != target.p:
        raise FieldError("characteristic mismatch in evaluation")
    point = [images[name] for name in field.tvars]

    def ev(poly):
        acc = target.zero()
        for exps, c in poly.terms():
            term = target.from_int(_coeff_int(c, field.p))
            for val, e in zip(point, exps):
                if e:
                    term = term * val ** e
            acc = acc + term
        return acc

    den = ev(x.rep.denom)
    if den.is_zero():
        return None
    return ev(x.rep.numer) / den


def scalar_height(x: FieldScalar) -> int:
    """max(total degree of numerator, total degree of denominator)."""
    if x.field.kind == "gf":
        return 0
    num, den = x.rep.numer, x.rep.denom
    dn = max((sum(e) for e, _ in num.terms()), default=0)
    dd = max((sum(e) for e, _ in den.terms()), default=0)
    return max(dn, dd)


# ---------------------------------------------------------------------------
# deterministic element enumeration
# ---------------------------------------------------------------------------

def iter_gf_elements(field: FieldDescriptor):
    """All elements of GF(p^k) in base-p counter order (constants first)."""
    p, k = field.p, field.k
    for n in range(p ** k):
        vec = []
        m = n
        for _ in range(k):
            vec.append(m % p)
            m //= p
        yield FieldScalar(field, tuple(vec))


def _iter_polys(field, deg, monic=False, allow_zero=False):
    """Ring polynomials of total degree exactly `deg`, deterministic order.

    Coefficient vectors run as little-endian base-p counters over the
    monomial list sorted ascending by (total degree, exponents).
    """
    p = field.p
    ring = field._ring
    m = len(field.tvars)
    monos = sorted(
        (e for e in itertools.product(range(deg + 1), repeat=m) if sum(e) <= deg),
        key=lambda e: (sum(e), e))
    if m == 0:
        monos = [()] if deg == 0 else []
    for n in range(p ** len(monos)):
        coeffs = []
        v = n
        for _ in monos:
            coeffs.append(v % p)
            v //= p
        if not allow_zero and not any(coeffs):
            continue
        top = [c for e, c in zip(monos, coeffs) if sum(e) == deg]
        if deg > 0 and not any(top):
            continue
        if deg == 0 and not any(coeffs) and not allow_zero:
            continue
        poly = ring.from_terms(
            [(e, ring.domain(c)) for e, c in zip(monos, coeffs) if c])
        if monic and poly.LC != ring.domain.one:
            continue
        yield poly


def iter_ratfunc_elements(field: FieldDescriptor, bound: int):
    """All of F_p(t..) with height <= bound, in a deterministic order:
    by height, then denominator (monic, by degree), then numerator."""
    from sympy.polys.rings import PolyElement  # noqa: F401  (doc only)
    p = field.p
    if not field.tvars:
        yield from iter_gf_elements(FieldDescriptor("gf", p, 1))
        return
    ring = field._ring
    frac = field._frac
    zero_exp = (0,) * len(field.tvars)
    for h in range(bound + 1):
        for dd in range(h + 1):
            for den in _iter_polys(field, dd, monic=True):
                for dn in range(h + 1):
                    if max(dn, dd) != h:
                        continue
                    if dn == 0:
                        consts = ([ring.zero] if h == 0 else [])
                        consts += [ring.from_terms([(zero_exp, ring.domain(c))])
                                   for c in range(1, p)]
                        nums = consts
                    else:
                        nums = _iter_polys(field, dn)
                    for num in nums:
                        if num and den != ring.one:
                            if num.gcd(den) != ring.one:
                                continue
                        yield field.from_frac(frac(num) / frac(den))


def iter_elements(field: FieldDescriptor, bound: int = 0):
    if field.kind == "gf":
        return iter_gf_elements(field)
    return iter_ratfunc_elements(field, bound)
