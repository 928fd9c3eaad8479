"""Singular loci of plane curves and surfaces, A_k classification by
splitting-lemma jet reduction, and intersection multiplicities of plane
curves.

Completeness of a singular locus is certified by elimination: cascaded
pairwise resultants of the partials bound the possible coordinates of
solutions, gcds across several cascade orders strip extraneous factors, and
candidate fibres are re-verified by exact substitution.  Over QQ(s) a
nonzero eliminant that is constant in the curve variables certifies
smoothness for generic s; its numerator records the finitely many bad
parameter values.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field as dc_field
from itertools import permutations
from typing import Optional, Sequence

from .field import Field, FieldElement, QQ
from .mpoly import MPoly
from .polyops import gcd_bivariate, gcd_poly, resultant

DEFAULT_JET_ORDER = 10


def _jet_order_default() -> int:
    env = os.environ.get("K3PENCIL_JET_ORDER")
    return int(env) if env else DEFAULT_JET_ORDER


# ---------------------------------------------------------------------------
# projective points
# ---------------------------------------------------------------------------


class ProjPoint:
    """Point of a (weighted) projective space with exact coordinates.
    Equality is up to weighted scaling; points are normalized on creation
    using the first nonzero weight-one coordinate."""

    __slots__ = ("coords", "weights")

    def __init__(self, field: Field, coords: Sequence, weights: Optional[Sequence[int]] = None):
        cs = [field.coerce(c) for c in coords]
        if all(c.is_zero() for c in cs):
            raise ValueError("projective point needs a nonzero coordinate")
        ws = tuple(weights) if weights is not None else (1,) * len(cs)
        if len(ws) != len(cs):
            raise ValueError("weights/coordinates length mismatch")
        pivot = next((i for i, (c, w) in enumerate(zip(cs, ws)) if w == 1 and not c.is_zero()), None)
        if pivot is not None:
            lam = cs[pivot].inv()
            cs = [c * lam ** w for c, w in zip(cs, ws)]
        self.coords = tuple(cs)
        self.weights = ws

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ProjPoint)
            and self.weights == other.weights
            and len(self.coords) == len(other.coords)
            and all(a == b for a, b in zip(self.coords, other.coords))
        )

    def __hash__(self) -> int:
        return hash((self.weights, tuple(c.sort_key() for c in self.coords)))

    def __str__(self) -> str:
        return "(" + " : ".join(str(c) for c in self.coords) + ")"

    def __repr__(self) -> str:
        return f"ProjPoint{self}"


@dataclass(frozen=True)
class SingularityReport:
    point: ProjPoint
    k: int

    @property
    def type_name(self) -> str:
        return f"A{self.k}"

    @property
    def milnor_number(self) -> int:
        return self.k


@dataclass
class LocusReport:
    status: str                      # "complete" | "fail"
    verified: list = dc_field(default_factory=list)
    witness: Optional[str] = None
    bad_parameter_values: list = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.status == "complete"


# ---------------------------------------------------------------------------
# certified affine solving (solutions of a 0-dimensional system == candidates)
# ---------------------------------------------------------------------------


def _used_vars(p: MPoly) -> tuple:
    used = set()
    for e in p.terms:
        for i, k in enumerate(e):
            if k:
                used.add(p.vars[i])
    return tuple(v for v in p.vars if v in used)


def _gcd_generic(a: MPoly, b: MPoly) -> Optional[MPoly]:
    """Gcd of polynomials in at most two effective variables; None when the
    computation is out of scope (more variables)."""
    used = set(_used_vars(a)) | set(_used_vars(b))
    if len(used) <= 1:
        return gcd_poly(a, b)
    if len(used) == 2:
        x, y = [v for v in a.vars if v in used]
        return gcd_bivariate(a, b, x, y)
    return None


def _pair_eliminations(polys: list[MPoly], v: str, cap: int = 6) -> list[MPoly]:
    """Sound nonzero eliminations of v: each returned polynomial vanishes on
    the projection of the common zero set of the system.  The smallest
    polynomial is used as pivot; zero resultants (shared factors) are broken
    by mixing in further system members, and extra pair resultants are added
    until the whole output set has constant gcd, so later levels do not
    collapse on an inherited common factor."""
    with_v = sorted(
        (p for p in polys if p.degree_in(v) > 0),
        key=lambda p: (p.degree_in(v), len(p.terms), p.total_degree()),
    )
    without_v = [p for p in polys if p.degree_in(v) == 0 and not p.is_zero()]
    if len(with_v) < 2:
        return without_v
    out = list(without_v)
    pivot = with_v[0]
    others = with_v[1:] + without_v
    for q in with_v[1:]:
        r = resultant(pivot, q, v)
        if r.is_zero():
            for other in others:
                if other is q:
                    continue
                mix = q + other
                if mix.degree_in(v) > 0:
                    r = resultant(pivot, mix, v)
                    if not r.is_zero():
                        break
                mix = pivot + other
                if mix.degree_in(v) > 0:
                    r = resultant(mix, q, v)
                    if not r.is_zero():
                        break
            else:
                continue
        out.append(r)

    def set_gcd(ps: list[MPoly]) -> Optional[MPoly]:
        acc = None
        for p in ps:
            if p.is_const():
                return p
            acc = p if acc is None else _gcd_generic(acc, p)
            if acc is None or acc.is_const():
                return acc
        return acc

    g = set_gcd(out) if out else None
    if out and g is not None and not g.is_const():
        extra_pairs = [
            (a, b)
            for i, a in enumerate(with_v)
            for b in with_v[i + 1 :]
            if a is not pivot
        ]
        extra_pairs.sort(key=lambda ab: ab[0].degree_in(v) + ab[1].degree_in(v))
        for a, b in extra_pairs:
            r = resultant(a, b, v)
            if r.is_zero():
                continue
            out.append(r)
            g = _gcd_generic(g, r)
            if g is None or g.is_const():
                break
    out.sort(key=lambda p: (p.total_degree(), len(p.terms)))
    kept = out[:cap]
    if len(out) > cap:
        g = set_gcd(kept)
        for p in out[cap:]:
            if g is None or g.is_const():
                break
            kept.append(p)
            g = _gcd_generic(g, p)
    return kept


def _eliminate_to_first(
    system: list[MPoly], vars: Sequence[str], order: Optional[Sequence[str]] = None
) -> MPoly:
    """A nonzero univariate polynomial in vars[0] vanishing on the projection
    of every common solution; gcds across independent eliminations strip the
    extraneous factors that resultant chains introduce."""
    polys = [p for p in system if not p.is_zero()]
    if not polys:
        raise ValueError("elimination of the zero system")
    for v in order if order is not None else vars[1:][::-1]:
        polys = _pair_eliminations(polys, v)
        if not polys:
            raise ValueError(f"elimination degenerated at {v}")
    raw_const = next((p for p in polys if p.is_const()), None)
    if raw_const is not None:
        return raw_const
    gcd_acc: Optional[MPoly] = None
    for p in polys:
        gcd_acc = p if gcd_acc is None else gcd_poly(gcd_acc, p)
        if gcd_acc.is_const():
            break
    if gcd_acc is None or gcd_acc.is_zero():
        raise ValueError("elimination produced no usable polynomial")
    return gcd_acc


def _strip_candidate_roots(e: MPoly, var: str, values: Sequence[FieldElement]) -> MPoly:
    """Divide out (var - a) for each candidate value a as often as possible."""
    out = e
    x = MPoly.variable(e.field, e.vars, var)
    for a in dict.fromkeys(values):
        lin = x - a
        while True:
            try:
                out = out.exact_div(lin)
            except ValueError:
                break
    return out


def certify_affine_solutions(
    system: list[MPoly], vars: Sequence[str], candidates: list[tuple]
) -> tuple[bool, Optional[str], list[MPoly]]:
    """Certify that the common zero set of the system (over the algebraic
    closure) is contained in the candidate list.  Returns (ok, witness,
    constant_eliminants); the latter collects eliminants that landed in the
    coefficient field, whose numerators carry the bad parameter values."""
    field = system[0].field
    consts: list[MPoly] = []
    nonzero = [p for p in system if not p.is_zero()]
    if not nonzero:
        return False, "system is identically zero", consts
    if any(p.is_const() for p in nonzero):
        # a nonzero constant equation: no solutions at all
        return True, None, [p for p in nonzero if p.is_const()]
    if len(vars) == 1:
        g = None
        for p in nonzero:
            g = p if g is None else gcd_poly(g, p)
            if g.is_const():
                break
        if g.is_const():
            if candidates:
                return False, "claimed point in an empty fibre", consts
            consts.append(g)
            return True, None, consts
        rest = _strip_candidate_roots(g, vars[0], [c[0] for c in candidates])
        if rest.total_degree() > 0:
            return False, f"unaccounted factor in {vars[0]}: {rest}", consts
        return True, None, consts
    # lazily sharpen the eliminant over several elimination orders: junk
    # factors from one resultant cascade rarely survive a second order
    e: Optional[MPoly] = None
    rest: Optional[MPoly] = None
    cand_vals = [c[0] for c in candidates]
    for order in permutations(vars[1:]):
        try:
            e_new = _eliminate_to_first(nonzero, vars, order=order[::-1])
        except ValueError:
            continue
        e = e_new if e is None else gcd_poly(e, e_new)
        if e.is_const():
            if candidates:
                return False, "constant eliminant despite claimed points", consts
            consts.append(e)
            return True, None, consts
        rest = _strip_candidate_roots(e, vars[0], cand_vals)
        if rest.total_degree() <= 0:
            break
    if e is None:
        return False, "all elimination orders degenerated", consts
    if rest is not None and rest.total_degree() > 0:
        return False, f"unaccounted factor in {vars[0]}: {rest}", consts
    fibres: dict = {}
    for cand in candidates:
        fibres.setdefault(cand[0].sort_key(), (cand[0], []))[1].append(cand[1:])
    for _, (a, rest_cands) in sorted(fibres.items()):
        restricted = [p.set_var(vars[0], a) for p in nonzero]
        restricted = [p for p in restricted if not p.is_zero()]
        if not restricted:
            return False, f"fibre {vars[0]} = {a} is positive-dimensional", consts
        ok, witness, sub_consts = certify_affine_solutions(restricted, vars[1:], rest_cands)
        consts.extend(sub_consts)
        if not ok:
            return False, f"fibre {vars[0]} = {a}: {witness}", consts
    return True, None, consts


# ---------------------------------------------------------------------------
# singular locus verification
# ---------------------------------------------------------------------------


def verify_singular_locus(F: MPoly, candidates: Sequence[ProjPoint]) -> LocusReport:
    """Confirm that the candidates are exactly the singular points of the
    projective hypersurface F = 0 (over the algebraic closure; over QQ(s),
    for generic s)."""
    if not F.is_homogeneous():
        raise ValueError("verify_singular_locus requires a homogeneous input")
    field = F.field
    vars = F.vars
    partials = [F.derivative(v) for v in vars]
    # F itself vanishes on the singular locus (Euler relation, char 0); it is
    # redundant but gives the elimination more material to pair with.
    system_polys = partials + [F]
    for P in candidates:
        vals = list(P.coords)
        for dF in partials:
            if not dF.evaluate(vals).is_zero():
                return LocusReport("fail", witness=f"partials do not vanish at {P}")
    report = LocusReport("complete", verified=list(candidates))
    for chart_i, chart_var in enumerate(vars):
        chart_vars = vars[:chart_i] + vars[chart_i + 1 :]
        system = [p.set_var(chart_var, field.one).drop_vars([chart_var]) for p in system_polys]
        chart_cands = []
        for P in candidates:
            c = P.coords[chart_i]
            if not c.is_zero():
                inv = c.inv()
                chart_cands.append(
                    tuple(P.coords[j] * inv for j in range(len(vars)) if j != chart_i)
                )
        ok, witness, consts = certify_affine_solutions(system, chart_vars, chart_cands)
        if not ok:
            return LocusReport("fail", witness=f"chart {chart_var} = 1: {witness}")
        for c in consts:
            bad = _bad_parameter_values(c)
            if bad:
                report.bad_parameter_values.append(bad)
    report.bad_parameter_values = sorted(set(report.bad_parameter_values))
    return report


def _bad_parameter_values(const_poly: MPoly) -> Optional[str]:
    """Numerator of a constant-in-the-variables eliminant over QQ(s); its
    roots are the parameter values where genericity may fail."""
    c = const_poly.const_coeff()
    if c.field.with_s and (c.a.num.degree() > 0 or c.a.den.degree() > 0):
        return str(c.a.num.monic())
    return None


# ---------------------------------------------------------------------------
# A_k classification via the splitting lemma on jets
# ---------------------------------------------------------------------------


def milnor_ade_classify(
    f: MPoly, point: Sequence, jet_order: Optional[int] = None
) -> SingularityReport:
    """Classify an isolated critical point with critical value 0 as A_k by
    corank computation and jet-level square completion.  Returns the report
    with milnor number k."""
    N = jet_order or _jet_order_default()
    field = f.field
    vals = [field.coerce(p) for p in point]
    g = f.translate(vals).truncate(N)
    if not g.const_coeff().is_zero():
        raise ValueError("critical value is not zero")
    if not g.homog_component(1).is_zero():
        raise ValueError("not a critical point")
    n = len(f.vars)
    # symmetric matrix of the quadratic part
    half = field.one / field.coerce(2)
    quad = g.homog_component(2)
    M = [[field.zero] * n for _ in range(n)]
    for e, c in quad.terms.items():
        idx = [i for i, k in enumerate(e) if k]
        if len(idx) == 1:
            M[idx[0]][idx[0]] = c
        else:
            i, j = idx
            M[i][j] = M[j][i] = c * half
    U = [[field.one if i == j else field.zero for j in range(n)] for i in range(n)]

    def col_op(dst, src, factor):
        for r in range(n):
            M[r][dst] = M[r][dst] + M[r][src] * factor
        for r in range(n):
            M[dst][r] = M[dst][r] + M[src][r] * factor
        for r in range(n):
            U[r][dst] = U[r][dst] + U[r][src] * factor

    def col_swap(i, j):
        for r in range(n):
            M[r][i], M[r][j] = M[r][j], M[r][i]
        for r in range(n):
            M[i][r], M[j][r] = M[j][r], M[i][r]
        for r in range(n):
            U[r][i], U[r][j] = U[r][j], U[r][i]

    rank = 0
    for k in range(n):
        if M[k][k].is_zero():
            piv = next((j for j in range(k + 1, n) if not M[j][j].is_zero()), None)
            if piv is not None:
                col_swap(k, piv)
            else:
                off = next(
                    ((i, j) for i in range(k, n) for j in range(i + 1, n) if not M[i][j].is_zero()),
                    None,
                )
                if off is None:
                    break
                i, j = off
                col_op(i, j, field.one)
                if i != k:
                    col_swap(k, i)
        pivot = M[k][k]
        inv = pivot.inv()
        for i in range(k + 1, n):
            if not M[i][k].is_zero():
                col_op(i, k, -(M[i][k] * inv))
        rank += 1
    corank = n - rank
    if corank == 0:
        return SingularityReport(_affine_point(field, vals), 1)
    if corank >= 2:
        raise ValueError("not of type A: corank >= 2")

    gens = MPoly.gens(field, f.vars)
    images = [
        sum((gens[r] * U[i][r] for r in range(n)), MPoly.zero(field, f.vars))
        for i in range(n)
    ]
    h = g.subst_polys(images).truncate(N)
    diag = [M[i][i] for i in range(rank)]
    kernel_var = f.vars[n - 1]

    # restrict to the critical section: solve grad_x h(x, w) = 0 for the
    # nondegenerate coordinates x as series in the kernel variable w, by
    # Newton iteration with the constant Hessian block (order grows by at
    # least one per step); the splitting-lemma residual is h on that section.
    grads = [h.derivative(f.vars[i]) for i in range(rank)]
    zero_p = MPoly.zero(field, f.vars)
    phi = [zero_p] * rank
    inv2d = [(d * 2).inv() for d in diag]

    def eval_at_phi(p: MPoly) -> MPoly:
        out = p
        for i in range(rank):
            out = out.set_var_poly(f.vars[i], phi[i]).truncate(N)
        return out

    converged = False
    for _ in range(N + 3):
        gvals = [eval_at_phi(gp) for gp in grads]
        if all(gv.is_zero() for gv in gvals):
            converged = True
            break
        phi = [phi[i] - gvals[i] * inv2d[i] for i in range(rank)]
        phi = [p.truncate(N) for p in phi]
    if not converged:
        raise ValueError("jet order exceeded: critical section did not stabilize")

    residual = eval_at_phi(h)
    if residual.is_zero():
        raise ValueError("jet order exceeded: kernel series vanishes to jet order")
    m = residual.min_total_degree()
    if m < 3:
        raise ValueError("kernel series has unexpected low order")
    return SingularityReport(_affine_point(field, vals), m - 1)


def _affine_point(field: Field, vals: list[FieldElement]) -> ProjPoint:
    return ProjPoint(field, list(vals) + [field.one])


def branch_ade_type(contact: int) -> int:
    """Double-cover type above a point where the two branch components meet
    with the given intersection multiplicity: A_{2n-1}."""
    if contact < 1:
        raise ValueError("no singularity for contact order 0")
    return 2 * contact - 1


def double_cover_type(sextic: MPoly, P: ProjPoint, jet_order: Optional[int] = None) -> SingularityReport:
    """A_k type of the double cover w^2 = sextic above a singular point of
    the sextic, computed from the local equation w^2 - sextic in an affine
    chart at the point."""
    i = next(i for i, c in enumerate(P.coords) if not c.is_zero())
    chart_var = sextic.vars[i]
    inv = P.coords[i].inv()
    affine = sextic.set_var(chart_var, sextic.field.one).drop_vars([chart_var])
    coords = [P.coords[j] * inv for j in range(len(sextic.vars)) if j != i]
    wvars = affine.vars + ("w_cov",)
    field = affine.field
    w = MPoly.variable(field, wvars, "w_cov")
    local = w * w - affine.with_vars(wvars)
    rep = milnor_ade_classify(local, coords + [field.zero], jet_order)
    return SingularityReport(ProjPoint(field, list(P.coords), P.weights), rep.k)


# ---------------------------------------------------------------------------
# intersection multiplicities of plane curves
# ---------------------------------------------------------------------------


def intersection_multiplicity(F: MPoly, G: MPoly, P: ProjPoint) -> int:
    """I_P(F, G) for plane curves without a common component through P,
    by the axiomatic reduction algorithm on a chart at P."""
    if F.field != G.field:
        if F.field.contains(G.field):
            G = G.to_field(F.field)
        else:
            F = F.to_field(G.field)
    vars = F.vars
    i = next(i for i, c in enumerate(P.coords) if not c.is_zero())
    chart = vars[i]
    inv = P.coords[i].inv()
    f = F.set_var(chart, F.field.one).drop_vars([chart])
    g = G.set_var(chart, G.field.one).drop_vars([chart])
    coords = [P.coords[j] * inv for j in range(len(vars)) if j != i]
    f = f.translate(coords)
    g = g.translate(coords)
    if not f.const_coeff().is_zero() or not g.const_coeff().is_zero():
        return 0
    x, y = f.vars
    d = gcd_bivariate(f, g, x, y)
    if d.total_degree() > 0 and d.const_coeff().is_zero():
        raise ValueError("infinite intersection multiplicity: common component")
    return _imult_origin(f, g)


def _ord_univar(p: MPoly) -> int:
    return p.min_total_degree()


def _imult_origin(f: MPoly, g: MPoly) -> int:
    x, y = f.vars
    field = f.field
    total = 0
    while True:
        if f.is_zero() or g.is_zero():
            raise ValueError("infinite intersection multiplicity")
        a = f.set_var(y, field.zero)
        b = g.set_var(y, field.zero)
        if a.is_zero() and b.is_zero():
            raise ValueError("infinite intersection multiplicity: common factor y")
        if a.is_zero():
            f1 = f.exact_div(MPoly.variable(field, f.vars, y))
            total += _ord_univar(b)
            f = f1
            if not f.const_coeff().is_zero():
                return total
            continue
        if b.is_zero():
            g1 = g.exact_div(MPoly.variable(field, f.vars, y))
            total += _ord_univar(a)
            g = g1
            if not g.const_coeff().is_zero():
                return total
            continue
        da, db = a.degree_in(x), b.degree_in(x)
        if da > db:
            f, g = g, f
            a, b, da, db = b, a, db, da
        lc_a = a.coeffs_in(x)[da].const_coeff()
        lc_b = b.coeffs_in(x)[db].const_coeff()
        factor = lc_b * lc_a.inv()
        xpow = MPoly.variable(field, f.vars, x) ** (db - da)
        g = g - f * xpow * factor
        if g.is_zero():
            raise ValueError("infinite intersection multiplicity: proportional")
        if not g.const_coeff().is_zero():
            return total


def multiplicity_at(F: MPoly, P: ProjPoint) -> int:
    """Multiplicity of the plane curve F at P (order of vanishing of the
    translated chart equation)."""
    vars = F.vars
    i = next(i for i, c in enumerate(P.coords) if not c.is_zero())
    inv = P.coords[i].inv()
    f = F.set_var(vars[i], F.field.one).drop_vars([vars[i]])
    coords = [P.coords[j] * inv for j in range(len(vars)) if j != i]
    return max(f.translate(coords).min_total_degree(), 0)


# ---------------------------------------------------------------------------
# curve intersection completeness
# ---------------------------------------------------------------------------


def verify_curve_intersections(
    F: MPoly, G: MPoly, claimed: Sequence[tuple[ProjPoint, int]], elim_var: str = "z"
) -> LocusReport:
    """Certify that the claimed points with multiplicities are exactly the
    intersection of the plane curves F and G: each multiplicity is recomputed,
    the total matches Bezout, and the eliminant factors exactly into the
    claimed images -- so no further intersection points exist."""
    for P, m in claimed:
        if intersection_multiplicity(F, G, P) != m:
            return LocusReport("fail", witness=f"multiplicity mismatch at {P}")
    degF, degG = F.total_degree(), G.total_degree()
    if sum(m for _, m in claimed) != degF * degG:
        return LocusReport("fail", witness="multiplicities do not add up to the Bezout number")
    lcF = F.coeffs_in(elim_var).get(F.degree_in(elim_var))
    lcG = G.coeffs_in(elim_var).get(G.degree_in(elim_var))
    if not (lcF is not None and lcF.is_const() and lcG is not None and lcG.is_const()):
        return LocusReport("fail", witness=f"leading coefficient in {elim_var} is not constant")
    elim = resultant(F, G, elim_var)
    other = [v for v in F.vars if v != elim_var and elim.degree_in(v) >= 0]
    rest = elim
    xv, yv = [v for v in F.vars if v != elim_var]
    x = MPoly.variable(F.field, F.vars, xv)
    y = MPoly.variable(F.field, F.vars, yv)
    iv_x, iv_y = F.vars.index(xv), F.vars.index(yv)
    for P, m in claimed:
        a, b = P.coords[iv_x], P.coords[iv_y]
        lin = x * b - y * a
        for _ in range(m):
            try:
                rest = rest.exact_div(lin)
            except ValueError:
                return LocusReport("fail", witness=f"eliminant not divisible by image of {P}")
    if rest.total_degree() > 0:
        return LocusReport("fail", witness=f"eliminant has extra factor {rest}")
    return LocusReport("complete", verified=[P for P, _ in claimed])
