"""Polynomial algorithms over the tower fields: univariate gcd, squarefree
decomposition (Yun), Sylvester resultants with fraction-free elimination,
rational substitution, and specialization of the pencil parameter."""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Optional, Tuple

from .field import Field, FieldElement, QQ, RatFunc, _fraction_sqrt, quadratic_field
from .mpoly import MPoly

# ---------------------------------------------------------------------------
# dense univariate helpers (coefficient lists low -> high over a field)
# ---------------------------------------------------------------------------


def _trim(cs: list) -> list:
    while cs and cs[-1].is_zero():
        cs.pop()
    return cs


def _dense_divmod(a: list, b: list, field: Field) -> tuple[list, list]:
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    rem = list(a)
    db, da = len(b) - 1, len(rem) - 1
    if da < db:
        return [], rem
    inv_lead = b[-1].inv()
    quot = [field.zero] * (da - db + 1)
    for k in range(da - db, -1, -1):
        top = rem[k + db]
        if not top.is_zero():
            q = top * inv_lead
            quot[k] = q
            for j, c in enumerate(b):
                rem[k + j] = rem[k + j] - q * c
    return _trim(quot), _trim(rem)


def _dense_gcd(a: list, b: list, field: Field) -> list:
    while b:
        a, b = b, _dense_divmod(a, b, field)[1]
    if a:
        inv = a[-1].inv()
        a = [c * inv for c in a]
    return a


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------


def gcd_poly(p: MPoly, q: MPoly) -> MPoly:
    """Monic gcd of two univariate polynomials over a common field."""
    if p.is_zero() and q.is_zero():
        raise ValueError("undefined gcd: both inputs zero")
    if p.field != q.field:
        if p.field.contains(q.field):
            q = q.to_field(p.field)
        else:
            p = p.to_field(q.field)
    var = None
    for poly in (p, q):
        if not poly.is_zero() and poly.total_degree() > 0:
            v = poly.is_univariate()
            if v is None:
                raise ValueError("gcd_poly requires univariate inputs")
            if var is None:
                var = v
            elif var != v:
                raise ValueError("gcd_poly inputs in different variables")
    if var is None:
        return MPoly.const(p.field, p.vars, 1)
    if p.vars != q.vars:
        allv = tuple(dict.fromkeys(p.vars + q.vars))
        p, q = p.with_vars(allv), q.with_vars(allv)
    a = p.dense_univariate(var) if not p.is_zero() else []
    b = q.dense_univariate(var) if not q.is_zero() else []
    g = _dense_gcd(a, b, p.field)
    return MPoly.from_dense(p.field, p.vars, var, g)


def squarefree_decomposition(p: MPoly) -> list[tuple[MPoly, int]]:
    """Yun's squarefree decomposition of a univariate polynomial over a field
    of characteristic zero: p = lc * prod(factor^exponent), the monic factors
    pairwise coprime and squarefree, exponents strictly increasing."""
    if p.is_zero():
        raise ValueError("squarefree decomposition of the zero polynomial")
    var = p.is_univariate()
    if var is None:
        raise ValueError("squarefree decomposition requires a univariate input")
    if p.total_degree() == 0:
        return []
    field = p.field
    a = [c for c in p.dense_univariate(var)]
    inv = a[-1].inv()
    a = [c * inv for c in a]

    def deriv(cs: list) -> list:
        return _trim([cs[i] * i for i in range(1, len(cs))])

    dp = deriv(a)
    g = _dense_gcd(a, dp, field)
    out: list[tuple[MPoly, int]] = []
    if len(g) == 1:
        return [(MPoly.from_dense(field, p.vars, var, a), 1)]
    c = _dense_divmod(a, g, field)[0]
    d_ = _dense_divmod(dp, g, field)[0]
    d = _trim([x - y for x, y in _zip_pad(d_, deriv(c), field)])
    i = 1
    while len(c) > 1:
        f = _dense_gcd(c, d, field)
        if len(f) > 1:
            out.append((MPoly.from_dense(field, p.vars, var, f), i))
        c = _dense_divmod(c, f, field)[0]
        d_ = _dense_divmod(d, f, field)[0]
        d = _trim([x - y for x, y in _zip_pad(d_, deriv(c), field)])
        i += 1
    return out


def _zip_pad(a: list, b: list, field: Field):
    n = max(len(a), len(b))
    za = a + [field.zero] * (n - len(a))
    zb = b + [field.zero] * (n - len(b))
    return zip(za, zb)


def squarefree_unit(p: MPoly) -> FieldElement:
    """The unit in p = unit * prod(factor^exponent)."""
    var = p.is_univariate()
    return p.dense_univariate(var)[-1]


def resultant(p: MPoly, q: MPoly, var: str) -> MPoly:
    """Resultant with respect to var: the Sylvester determinant, computed by
    fraction-free (Bareiss) elimination over the remaining-variable ring.
    When the coefficients involve at most one further variable the entries
    are handled as dense coefficient lists, which is much faster."""
    if p.field != q.field:
        if p.field.contains(q.field):
            q = q.to_field(p.field)
        else:
            p = p.to_field(q.field)
    if p.vars != q.vars:
        allv = tuple(dict.fromkeys(p.vars + q.vars))
        p, q = p.with_vars(allv), q.with_vars(allv)
    m, n = p.degree_in(var), q.degree_in(var)
    if m <= 0 or n <= 0:
        raise ValueError("resultant requires positive degree in the variable")
    other = set()
    for poly in (p, q):
        for e, _ in poly.terms.items():
            for i, k in enumerate(e):
                if k and poly.vars[i] != var:
                    other.add(poly.vars[i])
    if len(other) <= 1:
        return _resultant_dense(p, q, var, other.pop() if other else None)
    pc, qc = p.coeffs_in(var), q.coeffs_in(var)
    zero = MPoly.zero(p.field, p.vars)
    size = m + n
    rows: list[list[MPoly]] = []
    for i in range(n):
        row = [zero] * size
        for k in range(m + 1):
            row[i + (m - k)] = pc.get(k, zero)
        rows.append(row)
    for i in range(m):
        row = [zero] * size
        for k in range(n + 1):
            row[i + (n - k)] = qc.get(k, zero)
        rows.append(row)
    return _bareiss_det(rows, p.field, p.vars)


def _resultant_dense(p: MPoly, q: MPoly, var: str, other: Optional[str]) -> MPoly:
    """Sylvester determinant with entries stored as dense coefficient lists
    in the single remaining variable; raw Fractions over QQ."""
    field = p.field
    raw = field == QQ and field.alpha_square is None

    def unwrap(c: FieldElement):
        return c.a.num.const_value() if raw else c

    zero_c = Fraction(0) if raw else field.zero

    def entry(poly: MPoly, k: int) -> list:
        iv = poly.vars.index(var)
        io = poly.vars.index(other) if other else None
        out: list = []
        for e, c in poly.terms.items():
            if e[iv] != k:
                continue
            d = e[io] if io is not None else 0
            while len(out) <= d:
                out.append(zero_c)
            out[d] = unwrap(c)
        while out and (out[-1] == 0 if raw else out[-1].is_zero()):
            out.pop()
        return out

    m, n = p.degree_in(var), q.degree_in(var)
    size = m + n
    empty: list = []
    rows = []
    p_ent = [entry(p, k) for k in range(m + 1)]
    q_ent = [entry(q, k) for k in range(n + 1)]
    for i in range(n):
        row = [empty] * size
        for k in range(m + 1):
            row[i + (m - k)] = p_ent[k]
        rows.append(row)
    for i in range(m):
        row = [empty] * size
        for k in range(n + 1):
            row[i + (n - k)] = q_ent[k]
        rows.append(row)
    coeffs = _bareiss_det_dense(rows, zero_c, raw)
    vars_out = p.vars
    terms = {}
    io = vars_out.index(other) if other else None
    for d, c in enumerate(coeffs):
        czero = (c == 0) if raw else c.is_zero()
        if not czero:
            e = [0] * len(vars_out)
            if io is not None:
                e[io] = d
            terms[tuple(e)] = field.from_rat(c) if raw else c
    return MPoly(field, vars_out, terms)


def _dl_mul(a: list, b: list, zero) -> list:
    if not a or not b:
        return []
    out = [zero] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca != zero if isinstance(ca, Fraction) else not ca.is_zero():
            for j, cb in enumerate(b):
                out[i + j] = out[i + j] + ca * cb
    return out


def _dl_sub(a: list, b: list, zero) -> list:
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else zero) - (b[i] if i < len(b) else zero) for i in range(n)]
    return out


def _dl_trim(a: list, raw: bool) -> list:
    while a and ((a[-1] == 0) if raw else a[-1].is_zero()):
        a.pop()
    return a


def _dl_exact_div(a: list, b: list, zero, raw: bool) -> list:
    if not b:
        raise ZeroDivisionError("dense division by zero")
    rem = list(a)
    db = len(b) - 1
    da = len(rem) - 1
    if da < db:
        if not _dl_trim(rem, raw):
            return []
        raise ValueError("dense exact division failed")
    inv = (Fraction(1) / b[-1]) if raw else b[-1].inv()
    quot = [zero] * (da - db + 1)
    for k in range(da - db, -1, -1):
        top = rem[k + db]
        if (top != 0) if raw else (not top.is_zero()):
            qc = top * inv
            quot[k] = qc
            for j, c in enumerate(b):
                rem[k + j] = rem[k + j] - qc * c
    if _dl_trim(rem, raw):
        raise ValueError("dense exact division failed")
    return _dl_trim(quot, raw)


def _bareiss_det_dense(m: list[list[list]], zero, raw: bool) -> list:
    n = len(m)
    if n == 0:
        return [Fraction(1) if raw else zero]
    m = [list(row) for row in m]
    sign = 1
    prev: list = []
    for k in range(n - 1):
        if not m[k][k]:
            pivot = next((i for i in range(k + 1, n) if m[i][k]), None)
            if pivot is None:
                return []
            m[k], m[pivot] = m[pivot], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = _dl_sub(_dl_mul(m[i][j], m[k][k], zero), _dl_mul(m[i][k], m[k][j], zero), zero)
                num = _dl_trim(num, raw)
                if prev:
                    num = _dl_exact_div(num, prev, zero, raw)
                m[i][j] = num
            m[i][k] = []
        prev = m[k][k]
    det = m[n - 1][n - 1]
    if sign < 0:
        det = [-c for c in det]
    return det


def _bareiss_det(m: list[list[MPoly]], field: Field, vars) -> MPoly:
    n = len(m)
    if n == 0:
        return MPoly.const(field, vars, 1)
    sign = 1
    prev = MPoly.const(field, vars, 1)
    for k in range(n - 1):
        if m[k][k].is_zero():
            pivot = next((i for i in range(k + 1, n) if not m[i][k].is_zero()), None)
            if pivot is None:
                return MPoly.zero(field, vars)
            m[k], m[pivot] = m[pivot], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                m[i][j] = num.exact_div(prev)
            m[i][k] = MPoly.zero(field, vars)
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return -det if sign < 0 else det


def substitute(
    p: MPoly, bindings: Dict[str, Tuple[MPoly, MPoly]]
) -> Tuple[MPoly, MPoly]:
    """Substitute variables by rational expressions num/den, returning the
    cleared-denominator numerator and the common denominator (not reduced;
    equality of results is decided by cross-multiplication)."""
    field, vars = p.field, p.vars
    for v, (num, den) in bindings.items():
        if den.is_zero():
            raise ZeroDivisionError(f"zero denominator binding for {v}")
        if v not in vars:
            raise ValueError(f"binding for unknown variable {v}")
        field = field if field.contains(num.field) else num.field
        field = field if field.contains(den.field) else den.field
        vars = tuple(dict.fromkeys(vars + num.vars + den.vars))
    one = MPoly.const(field, vars, 1)
    nums, dens, caps = [], [], []
    for v in p.vars:
        if v in bindings:
            nu, de = bindings[v]
            nums.append(nu.to_field(field).with_vars(vars))
            dens.append(de.to_field(field).with_vars(vars))
        else:
            nums.append(MPoly.variable(field, vars, v))
            dens.append(one)
        caps.append(p.degree_in(v))
    common_den = one
    for de, cap in zip(dens, caps):
        if cap > 0 and not (de is one):
            common_den = common_den * de ** cap
    out = MPoly.zero(field, vars)
    pow_num = [{0: one} for _ in nums]
    pow_den = [{0: one} for _ in dens]

    def power(cache, base, k):
        top = max(cache)
        while top < k:
            cache[top + 1] = cache[top] * base
            top += 1
        return cache[k]

    for e, c in p.terms.items():
        term = MPoly.const(field, vars, field.coerce(c))
        for i, k in enumerate(e):
            if k:
                term = term * power(pow_num[i], nums[i], k)
            pad = caps[i] - k
            if pad and not (dens[i] is one):
                term = term * power(pow_den[i], dens[i], pad)
        out = out + term
    return out, common_den


def rational_equal(
    a: Tuple[MPoly, MPoly], b: Tuple[MPoly, MPoly]
) -> bool:
    """Exact equality of rational expressions by cross-multiplication."""
    return (a[0] * b[1] - b[0] * a[1]).is_zero()


# ---------------------------------------------------------------------------
# specialization of the pencil parameter
# ---------------------------------------------------------------------------


def specialize_field(field: Field, s0: Fraction, alpha0: Optional[Fraction] = None):
    """Target field and coefficient map for evaluating s at s0.

    With an alpha present, alpha is kept symbolic when alpha^2 specializes to
    a non-square (target QQ(sqrt(d))); a rational alpha0 with alpha0^2 equal
    to the specialized alpha^2 maps alpha to that number instead.
    """
    s0 = Fraction(s0)
    if field.alpha_square is None:
        target = QQ

        def fmap(x: FieldElement) -> FieldElement:
            return QQ.from_rat(x.a.eval(s0))

        return target, fmap

    try:
        m0 = field.alpha_square.eval(s0)
    except ZeroDivisionError:
        raise ValueError("pole of alpha^2 at specialization")
    if alpha0 is not None:
        alpha0 = Fraction(alpha0)
        if alpha0 * alpha0 != m0:
            raise ValueError("inconsistent alpha value at specialization")
        target = QQ

        def fmap(x: FieldElement) -> FieldElement:
            return QQ.from_rat(x.a.eval(s0) + x.b.eval(s0) * alpha0)

        return target, fmap
    root = _fraction_sqrt(m0) if m0 >= 0 else None
    if m0 == 0 or root is not None:
        raise ValueError(
            "alpha^2 specializes to a square; provide an explicit alpha value"
        )
    target = quadratic_field(m0)

    def fmap(x: FieldElement) -> FieldElement:
        return FieldElement(
            target, RatFunc.const(x.a.eval(s0)), RatFunc.const(x.b.eval(s0))
        )

    return target, fmap


def specialize(obj, s0, alpha0: Optional[Fraction] = None):
    """Exact evaluation of the pencil parameter: FieldElement -> FieldElement,
    MPoly -> MPoly over the specialized field.  Raises on poles and on
    inconsistent alpha values."""
    if isinstance(obj, FieldElement):
        target, fmap = specialize_field(obj.field, Fraction(s0), alpha0)
        try:
            return fmap(obj)
        except ZeroDivisionError:
            raise ValueError("pole at specialization")
    if isinstance(obj, MPoly):
        target, fmap = specialize_field(obj.field, Fraction(s0), alpha0)
        out = {}
        for e, c in obj.terms.items():
            try:
                fc = fmap(c)
            except ZeroDivisionError:
                raise ValueError("pole at specialization")
            if not fc.is_zero():
                out[e] = fc
        return MPoly(target, obj.vars, out)
    raise TypeError("specialize expects a FieldElement or MPoly")


# ---------------------------------------------------------------------------
# bivariate gcd (content/primitive-part with pseudo-remainders)
# ---------------------------------------------------------------------------


def gcd_bivariate(f: MPoly, g: MPoly, x: str, y: str) -> MPoly:
    """Gcd of polynomials in at most the two variables x, y over the
    coefficient field, normalized monic in grlex.  Subresultant-free simple
    pseudo-remainder sequence; inputs here are small (plane curves)."""
    if f.is_zero():
        return g.monic()
    if g.is_zero():
        return f.monic()

    def content_y(p: MPoly) -> MPoly:
        cs = list(p.coeffs_in(y).values())
        acc = cs[0]
        for c in cs[1:]:
            acc = gcd_poly(acc, c)
            if acc.is_const():
                break
        return acc

    def primitive_y(p: MPoly) -> MPoly:
        c = content_y(p)
        return p.exact_div(c) if not c.is_const() else p

    if f.degree_in(y) == 0 and g.degree_in(y) == 0:
        return gcd_poly(f, g)
    cf, cg = content_y(f), content_y(g)
    cont = gcd_poly(cf, cg)
    a, b = primitive_y(f), primitive_y(g)
    if a.degree_in(y) < b.degree_in(y):
        a, b = b, a
    while not b.is_zero() and b.degree_in(y) > 0:
        r = _pseudo_rem(a, b, y)
        a, b = b, (primitive_y(r) if not r.is_zero() else r)
    if b.is_zero():
        return (a.monic() * cont).monic() if not cont.is_const() else primitive_y(a).monic()
    # non-constant common factor only via the content
    return cont.monic()


def _pseudo_rem(a: MPoly, b: MPoly, y: str) -> MPoly:
    da, db = a.degree_in(y), b.degree_in(y)
    if da < db:
        return a
    lead = b.coeffs_in(y)[db]
    r = a
    yvar = MPoly.variable(a.field, a.vars, y)
    while not r.is_zero() and r.degree_in(y) >= db:
        dr = r.degree_in(y)
        lr = r.coeffs_in(y)[dr]
        r = r * lead - b * lr * yvar ** (dr - db)
    return r
