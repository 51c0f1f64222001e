"""Instance-level validation and witness search for the axiom schemes.

The D-PAC scheme: data (V, W, f_1..f_n) over a differential field
(K, D), with W in the doubled variables of V.  An instance is valid when

  1. W is absolutely irreducible,
  2. W lies inside the prolongation tau^D(V),
  3. the projection W -> V is dominant,
  4. the equalizer E projects dominantly on W,
  5. every f_i pulled back to K(W) avoids K(W)^p (admissibility).

Validation short-circuits at the first failing bullet; witness search
then hunts for x in V(K) with every f_i(x) outside K^p and
(x, D(x)) in W(K), bounded by coordinate height so runs reproduce.

The same skeleton drives the G-B-DCF scheme, where a finite group acts
on K and the derivation is replaced by a B-operator for a truncated
polynomial algebra B = k[eta]/(eta^n); for n = 2 the geometry is the
classical prolongation, and a trivial group collapses the scheme
bullet-for-bullet onto D-PAC.
"""

from __future__ import annotations

import json

from . import lambdafn
from .differential import (DerivationContext, derivation_extends, derive,
                           kerprol_check)
from .errors import (CharpkError, PreconditionError, ResourceExhausted,
                     UnsupportedInstance)
from .fields import FieldDescriptor, is_pth_power, iter_gf_elements
from .formula import (eval_formula, parse as parse_formula,
                      unravel_lambda_terms)
from .groups import FieldAction, invariants, is_faithful
from .polys import MultiPoly
from .variety import (AffineVariety, enumerate_points,
                      is_absolutely_irreducible, is_dominant, is_irreducible,
                      ppower_test, projection_map, _radical_contains)


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------

class CheckReport:
    """Per-bullet verdicts plus an overall status; serializes to stable
    bytes.  status in {"valid-instance", "invalid", "witness-found",
    "exhausted", "resource-exhausted"}."""

    __slots__ = ("bullets", "status", "failed_bullet", "witness", "bound")

    def __init__(self, bullets, status, failed_bullet=None, witness=None,
                 bound=None):
        self.bullets = list(bullets)
        self.status = status
        self.failed_bullet = failed_bullet
        self.witness = witness
        self.bound = bound

    def as_dict(self):
        d = {"status": self.status, "bullets": self.bullets}
        if self.failed_bullet is not None:
            d["failed_bullet"] = self.failed_bullet
        if self.witness is not None:
            d["witness"] = [str(c) for c in self.witness]
        if self.bound is not None:
            d["bound"] = self.bound
        return d

    def to_json(self) -> bytes:
        return json.dumps(self.as_dict(), sort_keys=True,
                          separators=(",", ":")).encode()

    def __repr__(self):
        return f"<CheckReport {self.status}>"


def _bullet(name, verdict, detail=""):
    return {"name": name, "verdict": verdict, "detail": detail}


# ---------------------------------------------------------------------------
# D-PAC instances
# ---------------------------------------------------------------------------

class DPacInstance:
    """(K, D; V, W, f_1..f_n) with a height bound for the search."""

    __slots__ = ("field", "derivation", "V", "W", "fns", "bound")

    def __init__(self, field, derivation, V, W, fns=(), bound=1):
        if not isinstance(derivation, DerivationContext):
            derivation = DerivationContext(field, derivation)
        if V.field != field or W.field != field:
            raise PreconditionError("V and W must live over the base field")
        n = len(V.vars)
        if len(W.vars) != 2 * n or W.vars[:n] != V.vars:
            raise PreconditionError(
                "W must live in the doubled variable space of V")
        self.field = field
        self.derivation = derivation
        self.V = V
        self.W = W
        self.fns = [V.ring.parse(f) if isinstance(f, str) else f
                    for f in fns]
        self.bound = bound


_DPAC_BULLETS = (
    "W is absolutely irreducible",
    "W is contained in the prolongation of V",
    "W projects dominantly on V",
    "E projects dominantly on W",
    "the pulled-back functions avoid p-th powers",
)


def validate_dpac_instance(inst: DPacInstance) -> CheckReport:
    """The five bullets in fixed order; stops at the first failure."""
    inst.V.require_nonempty()
    inst.W.require_nonempty()
    bullets = []

    def fail(name, detail=""):
        bullets.append(_bullet(name, "fail", detail))
        return CheckReport(bullets, "invalid", failed_bullet=name)

    name = _DPAC_BULLETS[0]
    try:
        ok = is_absolutely_irreducible(inst.W)
    except CharpkError as exc:
        raise UnsupportedInstance(f"bullet {name!r}: {exc}") from exc
    if not ok:
        return fail(name)
    bullets.append(_bullet(name, "pass"))

    name = _DPAC_BULLETS[1]
    if not derivation_extends(inst.V, inst.W, inst.derivation):
        return fail(name)
    bullets.append(_bullet(name, "pass"))

    name = _DPAC_BULLETS[2]
    try:
        ok = is_dominant(projection_map(inst.W, inst.V, inst.V.vars))
    except CharpkError as exc:
        raise UnsupportedInstance(f"bullet {name!r}: {exc}") from exc
    if not ok:
        return fail(name)
    bullets.append(_bullet(name, "pass"))

    name = _DPAC_BULLETS[3]
    try:
        ok = kerprol_check(inst.V, inst.W, inst.derivation)
    except CharpkError as exc:
        raise UnsupportedInstance(f"bullet {name!r}: {exc}") from exc
    if not ok:
        return fail(name)
    bullets.append(_bullet(name, "pass"))

    name = _DPAC_BULLETS[4]
    for f in inst.fns:
        pulled = inst.W.function_field_elem(f.rename(inst.W.ring))
        verdict = ppower_test(pulled)
        if verdict.status == "root":
            return fail(name, f"{f} pulls back to a p-th power")
        if verdict.status == "undecided":
            bullets.append(_bullet(name, "undecided", str(f)))
            return CheckReport(bullets, "resource-exhausted",
                               failed_bullet=name)
    bullets.append(_bullet(name, "pass"))
    return CheckReport(bullets, "valid-instance")


def _witness_ok(inst: DPacInstance, point) -> bool:
    """Independent re-verification of a candidate witness."""
    if not inst.V.contains_point(point):
        return False
    values = dict(zip(inst.V.vars, point))
    for f in inst.fns:
        v = f.evaluate(values)
        if is_pth_power(v):
            return False
    dx = tuple(derive(c, inst.derivation) for c in point)
    return inst.W.contains_point(point + dx)


def search_dpac_witness(inst: DPacInstance,
                        validated: CheckReport = None) -> CheckReport:
    """First witness in the deterministic height order, or exhausted."""
    report = validated or validate_dpac_instance(inst)
    if report.status != "valid-instance":
        raise PreconditionError(
            f"witness search needs a valid instance (got {report.status})")
    bound = None if inst.field.kind == "gf" else inst.bound
    for point in enumerate_points(inst.V, bound=bound):
        defined = True
        values = dict(zip(inst.V.vars, point))
        for f in inst.fns:
            if f.evaluate(values) is None:
                defined = False
                break
        if not defined:
            continue
        if _witness_ok(inst, point):
            return CheckReport(report.bullets, "witness-found",
                               witness=point, bound=inst.bound)
    return CheckReport(report.bullets, "exhausted", bound=inst.bound)


# ---------------------------------------------------------------------------
# the open-subset PAC probe
# ---------------------------------------------------------------------------

def pac_witness_task(V: AffineVariety, avoid=(), bound=1) -> CheckReport:
    """Search V(K) for a point where some avoidance polynomial is
    nonzero (with empty `avoid`, any point).  V must be absolutely
    irreducible and the carved-open part nonempty."""
    V.require_nonempty()
    if not is_absolutely_irreducible(V):
        raise PreconditionError("V is not absolutely irreducible")
    avoid = [V.ring.parse(g) if isinstance(g, str) else g for g in avoid]
    if avoid and not any(not _radical_contains(V.ideal, g) for g in avoid):
        raise PreconditionError("the carved open subset is empty")
    bullets = [_bullet("V is absolutely irreducible", "pass"),
               _bullet("the open part is nonempty", "pass")]
    b = None if V.field.kind == "gf" else bound
    for point in enumerate_points(V, bound=b):
        values = dict(zip(V.vars, point))
        if not avoid or any(not g.evaluate(values).is_zero()
                            for g in avoid):
            return CheckReport(bullets, "witness-found", witness=point,
                               bound=bound)
    return CheckReport(bullets, "exhausted", bound=bound)


# ---------------------------------------------------------------------------
# reduction of a lambda-formula to a variety plus p-independence data
# ---------------------------------------------------------------------------

def scf_reduce(phi, context, witness, audit_bound=None):
    """Reduce a lambda-formula with a witnessing point to (V, rows):
    V is the locus of the extended witness tuple and rows is the matrix
    of coordinate functions whose rowwise p-independence at a point of V
    forces the formula.  `context` carries "field" and optionally
    "pindep": a list of rows, each a list of term strings over the
    formula variables."""
    field = context["field"]
    structure = {"field": field}
    if isinstance(phi, str):
        phi = parse_formula(
            phi, "lambda",
            {"vars": set(witness), "field": field})
    res = unravel_lambda_terms(phi, structure, witness)
    V = res.locus_variety()
    rows = []
    for row_spec in context.get("pindep", ()):  # the beta-conjuncts
        row = []
        for entry in row_spec:
            poly = (V.ring.parse(entry) if isinstance(entry, str)
                    else entry.rename(V.ring))
            row.append(V.function_field_elem(poly))
        rows.append(row)
    if audit_bound is not None:
        _scf_audit(phi, structure, res, V, rows, audit_bound)
    return V, rows


def _scf_audit(phi, structure, res, V, rows, nsamples):
    """Sample points of V over F_p(t..) as substitution-homomorphism
    images of the extended witness; wherever every matrix row is
    p-independent, the formula must hold on the original coordinates."""
    import itertools

    from .differential import scalar_hom

    K = structure["field"]
    frozen = _constant_tvars(phi, K)
    extras = []
    for n in K.tvars:
        g = K.gen(n)
        extras.extend([g + K.one(), g * g, g * g + g])
    pools = [[K.gen(n)] if n in frozen else [K.gen(n)] + extras
             for n in K.tvars]
    count = 0
    for choice in itertools.product(*pools):
        if count >= nsamples:
            break
        images = dict(zip(K.tvars, choice))
        try:
            point = tuple(scalar_hom(res.values[n], images, K)
                          for n in res.names)
        except CharpkError:
            continue
        count += 1
        values = dict(zip(res.names, point))
        ok_rows = True
        lift = lambda c: K.from_int(c.rep[0])
        for row in rows:
            vals = []
            for f in row:
                den = f.den.evaluate(values, lift=lift)
                if den.is_zero():
                    ok_rows = False
                    break
                vals.append(f.num.evaluate(values, lift=lift) / den)
            if not ok_rows or not lambdafn.is_p_independent(vals, K):
                ok_rows = False
                break
        if not ok_rows:
            continue
        assignment = {v: values[v] for v in formula_vars(phi)}
        if not eval_formula(phi, structure, assignment):
            raise CharpkError(
                "reduction audit failed: a p-independent point of the "
                "locus does not satisfy the formula")


def formula_vars(phi):
    from .formula import formula_variables
    return formula_variables(phi)


def _constant_tvars(phi, K):
    """Transcendentals appearing in the formula's constants; these are
    parameters and must stay fixed under audit substitutions."""
    from .formula import Atom, Const, _term_children
    used = set()

    def walk_term(t):
        if isinstance(t, Const) and t.value.field.kind == "ratfunc":
            for i, name in enumerate(t.value.field.tvars):
                num, den = t.value.rep.numer, t.value.rep.denom
                if any(m[i] for m in num.monoms()) or \
                        any(m[i] for m in den.monoms()):
                    used.add(name)
        for c in _term_children(t):
            walk_term(c)

    def walk(f):
        if isinstance(f, Atom):
            walk_term(f.term)
        else:
            for attr in ("sub", "left", "right"):
                g = getattr(f, attr, None)
                if g is not None:
                    walk(g)
    walk(phi)
    return used


# ---------------------------------------------------------------------------
# B-algebras and B-operators
# ---------------------------------------------------------------------------

class BAlgebra:
    """Finite local k-algebra with basis b_0 = 1, .., b_d, augmentation
    sending b_i (i > 0) to 0, and structure constants
    b_i * b_j = sum_k c[i][j][k] b_k."""

    __slots__ = ("field", "dim", "constants", "truncated")

    def __init__(self, field: FieldDescriptor, constants, truncated=False):
        dim = len(constants)
        for row in constants:
            if len(row) != dim or any(len(v) != dim for v in row):
                raise PreconditionError("structure constant shape mismatch")
        consts = [[[field.parse(c) if isinstance(c, str) else
                    (field.from_int(c) if isinstance(c, int) else c)
                    for c in vec] for vec in row] for row in constants]
        self.field = field
        self.dim = dim
        self.constants = consts
        self.truncated = truncated
        self._verify()

    @classmethod
    def truncated_polynomial(cls, field: FieldDescriptor, n: int):
        """k[eta]/(eta^n) with basis 1, eta, .., eta^(n-1)."""
        if n < 1:
            raise PreconditionError("need dimension at least 1")
        consts = [[[field.one() if (i + j == k and i + j < n)
                    else field.zero() for k in range(n)]
                   for j in range(n)] for i in range(n)]
        return cls(field, consts, truncated=True)

    def mul(self, u, v):
        out = [self.field.zero() for _ in range(self.dim)]
        for i, ui in enumerate(u):
            if ui.is_zero():
                continue
            for j, vj in enumerate(v):
                if vj.is_zero():
                    continue
                for k, c in enumerate(self.constants[i][j]):
                    out[k] = out[k] + ui * vj * c
        return out

    def _unit(self, i):
        return [self.field.one() if j == i else self.field.zero()
                for j in range(self.dim)]

    def _verify(self):
        units = [self._unit(i) for i in range(self.dim)]
        for i in range(self.dim):
            if self.mul(units[0], units[i]) != units[i]:
                raise PreconditionError("b_0 is not a unit element")
            for j in range(i, self.dim):
                if self.mul(units[i], units[j]) != self.mul(units[j],
                                                            units[i]):
                    raise PreconditionError("multiplication not commutative")
        for i in range(self.dim):
            for j in range(self.dim):
                for k in range(self.dim):
                    left = self.mul(self.mul(units[i], units[j]), units[k])
                    right = self.mul(units[i], self.mul(units[j], units[k]))
                    if left != right:
                        raise PreconditionError(
                            "multiplication not associative")
        # the augmentation kernel (span of b_1..b_d) must be nilpotent
        kernel = [self._unit(i) for i in range(1, self.dim)]
        power = kernel
        for _ in range(self.dim + 1):
            if all(all(c.is_zero() for c in v) for v in power):
                return
            power = [self.mul(u, v) for u in power for v in kernel] or []
            if not power:
                return
        raise PreconditionError("augmentation kernel is not nilpotent")


def b_operator_check(maps, B: BAlgebra, generators, products=None) -> bool:
    """maps = (d_0 .. d_d) given as callables on ring/field elements;
    verifies that r -> sum_i d_i(r) b_i is a k-algebra homomorphism on
    the listed generators: d_0 acts as the identity and multiplication
    is respected against the structure constants.  Optional `products`
    supplies extra pairs to test."""
    if len(maps) != B.dim:
        raise PreconditionError("number of maps must match the basis size")
    pairs = [(r, s) for r in generators for s in generators]
    if products:
        pairs.extend(products)
    for r in generators:
        if maps[0](r) != r:
            return False
    for r, s in pairs:
        rs = r * s
        image_r = [m(r) for m in maps]
        image_s = [m(s) for m in maps]
        expected = B.mul(image_r, image_s)
        actual = [m(rs) for m in maps]
        if expected != actual:
            return False
    return True


# ---------------------------------------------------------------------------
# G-B-DCF instances
# ---------------------------------------------------------------------------

class GBdcfInstance:
    """(K with B-operator and group action; V, W over K).  `action` is a
    FieldAction or None for the trivial group; the B-operator for
    B = k[eta]/(eta^2) is (id, D) with D a DerivationContext."""

    __slots__ = ("field", "action", "balgebra", "derivation", "V", "W",
                 "fns", "bound")

    def __init__(self, field, balgebra, V, W, action=None, derivation=None,
                 fns=(), bound=1):
        self.field = field
        self.action = action
        self.balgebra = balgebra
        if derivation is None:
            derivation = DerivationContext(field)
        elif not isinstance(derivation, DerivationContext):
            derivation = DerivationContext(field, derivation)
        self.derivation = derivation
        self.V = V
        self.W = W
        self.fns = [V.ring.parse(f) if isinstance(f, str) else f
                    for f in fns]
        self.bound = bound


def validate_gbdcf_instance(inst: GBdcfInstance, search=True) -> CheckReport:
    """Faithfulness, K-irreducibility of V and W, the three geometric
    bullets through the n = 2 prolongation, then witness search over
    V(K^G)."""
    if not inst.balgebra.truncated:
        raise UnsupportedInstance("unsupported B-algebra class: only "
                                  "k[eta]/(eta^n) drives the geometry")
    if inst.balgebra.dim > 2:
        raise UnsupportedInstance("the geometric pipeline supports "
                                  "k[eta]/(eta^2) (n = 2) only")
    trivial = inst.action is None or len(inst.action.group) == 1
    bullets = []

    name = "the action of G on K is faithful"
    if trivial:
        bullets.append(_bullet(name, "pass", "trivial group"))
    else:
        if not is_faithful(inst.action):
            bullets.append(_bullet(name, "fail"))
            return CheckReport(bullets, "invalid", failed_bullet=name)
        bullets.append(_bullet(name, "pass"))

    if trivial:
        # definitional collapse onto the D-PAC scheme
        dpac = DPacInstance(inst.field, inst.derivation, inst.V, inst.W,
                            fns=inst.fns, bound=inst.bound)
        report = validate_dpac_instance(dpac)
        bullets.extend(report.bullets)
        if report.status != "valid-instance":
            return CheckReport(bullets, report.status,
                               failed_bullet=report.failed_bullet)
        if not search:
            return CheckReport(bullets, "valid-instance")
        found = search_dpac_witness(dpac, validated=report)
        return CheckReport(bullets, found.status, witness=found.witness,
                           bound=found.bound)

    # nontrivial group: finite base field, hence the zero derivation
    name = "V and W are K-irreducible"
    if not (is_irreducible(inst.V) and is_irreducible(inst.W)):
        bullets.append(_bullet(name, "fail"))
        return CheckReport(bullets, "invalid", failed_bullet=name)
    bullets.append(_bullet(name, "pass"))

    name = "W is contained in the prolongation of V"
    if not derivation_extends(inst.V, inst.W, inst.derivation):
        bullets.append(_bullet(name, "fail"))
        return CheckReport(bullets, "invalid", failed_bullet=name)
    bullets.append(_bullet(name, "pass"))

    name = "W projects dominantly on V"
    if not is_dominant(projection_map(inst.W, inst.V, inst.V.vars)):
        bullets.append(_bullet(name, "fail"))
        return CheckReport(bullets, "invalid", failed_bullet=name)
    bullets.append(_bullet(name, "pass"))

    name = "E projects dominantly on W"
    if not kerprol_check(inst.V, inst.W, inst.derivation):
        bullets.append(_bullet(name, "fail"))
        return CheckReport(bullets, "invalid", failed_bullet=name)
    bullets.append(_bullet(name, "pass"))

    if not search:
        return CheckReport(bullets, "valid-instance")

    # witness search over V(K^G); `invariants` re-derives the subfield
    invariants(inst.action)
    fixed = set(_invariant_elements(inst.action))
    for point in enumerate_points(inst.V):
        if not all(c in fixed for c in point):
            continue
        dx = tuple(derive(c, inst.derivation) for c in point)
        if inst.W.contains_point(point + dx):
            return CheckReport(bullets, "witness-found", witness=point,
                               bound=inst.bound)
    return CheckReport(bullets, "exhausted", bound=inst.bound)


def _invariant_elements(act: FieldAction):
    for x in iter_gf_elements(act.field):
        if all(s(x) == x for s in act.sigmas):
            yield x
