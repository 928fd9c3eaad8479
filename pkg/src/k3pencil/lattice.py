"""Exact integral lattice engine: Gram matrices, signatures by rational
congruence diagonalization, Smith normal form, radical quotients,
discriminant groups with their finite quadratic forms, and the
invariant-fingerprint comparison used to identify lattices up to the
uniqueness theorems."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd, lcm
from typing import Optional, Sequence

IntMatrix = list[list[int]]


# ---------------------------------------------------------------------------
# basic integer matrix helpers
# ---------------------------------------------------------------------------


def _identity(n: int) -> IntMatrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    n, k, m = len(a), len(b), len(b[0]) if b else 0
    out = [[0] * m for _ in range(n)]
    for i in range(n):
        ai = a[i]
        for t in range(k):
            c = ai[t]
            if c:
                bt = b[t]
                oi = out[i]
                for j in range(m):
                    oi[j] += c * bt[j]
    return out


def transpose(a: IntMatrix) -> IntMatrix:
    return [list(col) for col in zip(*a)]


def det_int(m: IntMatrix) -> int:
    """Fraction-free (Bareiss) integer determinant."""
    n = len(m)
    if n == 0:
        return 1
    a = [row[:] for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            piv = next((i for i in range(k + 1, n) if a[i][k]), None)
            if piv is None:
                return 0
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def smith_normal_form(m: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Smith normal form: returns (D, P, Q) with P * m * Q = D, P and Q
    unimodular, and the diagonal of D in dividing order."""
    a = [row[:] for row in m]
    rows, cols = len(a), len(a[0]) if a else 0
    P = _identity(rows)
    Q = _identity(cols)

    def row_op(i, j, c):  # row_i += c * row_j
        for t in range(cols):
            a[i][t] += c * a[j][t]
        for t in range(rows):
            P[i][t] += c * P[j][t]

    def col_op(i, j, c):  # col_i += c * col_j
        for t in range(rows):
            a[t][i] += c * a[t][j]
        for t in range(cols):
            Q[t][i] += c * Q[t][j]

    def row_swap(i, j):
        a[i], a[j] = a[j], a[i]
        P[i], P[j] = P[j], P[i]

    def col_swap(i, j):
        for t in range(rows):
            a[t][i], a[t][j] = a[t][j], a[t][i]
        for t in range(cols):
            Q[t][i], Q[t][j] = Q[t][j], Q[t][i]

    k = 0
    while k < min(rows, cols):
        # find the smallest nonzero entry in the trailing block
        piv = None
        best = None
        for i in range(k, rows):
            for j in range(k, cols):
                if a[i][j] and (best is None or abs(a[i][j]) < best):
                    best = abs(a[i][j])
                    piv = (i, j)
        if piv is None:
            break
        row_swap(k, piv[0])
        col_swap(k, piv[1])
        dirty = False
        for i in range(k + 1, rows):
            if a[i][k]:
                q = a[i][k] // a[k][k]
                row_op(i, k, -q)
                if a[i][k]:
                    dirty = True
        for j in range(k + 1, cols):
            if a[k][j]:
                q = a[k][j] // a[k][k]
                col_op(j, k, -q)
                if a[k][j]:
                    dirty = True
        if dirty:
            continue
        # divisibility: pivot must divide the rest of the block
        bad = None
        for i in range(k + 1, rows):
            for j in range(k + 1, cols):
                if a[i][j] % a[k][k]:
                    bad = i
                    break
            if bad is not None:
                break
        if bad is not None:
            row_op(k, bad, 1)
            continue
        k += 1
    # normalize signs on the diagonal
    for t in range(min(rows, cols)):
        if a[t][t] < 0:
            for j in range(cols):
                Q[j][t] = -Q[j][t]
            a[t][t] = -a[t][t]
    return a, P, Q


# ---------------------------------------------------------------------------
# lattices
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GramLattice:
    labels: tuple
    gram: tuple  # tuple of tuples of int, symmetric

    @staticmethod
    def from_rows(rows: Sequence[Sequence[int]], labels: Optional[Sequence[str]] = None) -> "GramLattice":
        g = tuple(tuple(int(c) for c in row) for row in rows)
        n = len(g)
        for i in range(n):
            if len(g[i]) != n:
                raise ValueError("gram matrix must be square")
            for j in range(n):
                if g[i][j] != g[j][i]:
                    raise ValueError("gram matrix must be symmetric")
        lab = tuple(labels) if labels is not None else tuple(f"e{i+1}" for i in range(n))
        if len(lab) != n:
            raise ValueError("label count mismatch")
        return GramLattice(lab, g)

    @property
    def dim(self) -> int:
        return len(self.gram)

    def is_even(self) -> bool:
        return all(self.gram[i][i] % 2 == 0 for i in range(self.dim))

    def det(self) -> int:
        return det_int([list(r) for r in self.gram])

    def direct_sum(self, other: "GramLattice") -> "GramLattice":
        n, m = self.dim, other.dim
        rows = []
        for i in range(n):
            rows.append(list(self.gram[i]) + [0] * m)
        for i in range(m):
            rows.append([0] * n + list(other.gram[i]))
        return GramLattice.from_rows(rows, self.labels + other.labels)


#: negated E8 Cartan matrix uses this Dynkin diagram adjacency
_E8_EDGES = ((0, 2), (1, 3), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7))


def _e8_cartan() -> IntMatrix:
    m = [[0] * 8 for _ in range(8)]
    for i in range(8):
        m[i][i] = 2
    for i, j in _E8_EDGES:
        m[i][j] = m[j][i] = -1
    return m


def standard_lattice(spec: str) -> GramLattice:
    """Block lattice from an expression over U, E8(-1), <n> and direct sums,
    e.g. "U + E8(-1)^2 + <-12>".  A unicode circled plus is accepted too."""
    text = spec.replace("⊕", "+").strip()
    if not text:
        raise ValueError("empty lattice expression")
    parts = _split_sum(text)
    out: Optional[GramLattice] = None
    for part in parts:
        block = _parse_block(part.strip())
        out = block if out is None else out.direct_sum(block)
    return out


def _split_sum(text: str) -> list[str]:
    parts = []
    depth = 0
    cur = ""
    for ch in text:
        if ch in "(<":
            depth += 1
        elif ch in ")>":
            depth -= 1
        if ch == "+" and depth == 0:
            parts.append(cur)
            cur = ""
        else:
            cur += ch
    parts.append(cur)
    if any(not p.strip() for p in parts):
        raise ValueError(f"malformed lattice expression: {text!r}")
    return parts


def _parse_block(part: str) -> GramLattice:
    power = 1
    if "^" in part:
        part, _, exp = part.rpartition("^")
        part = part.strip()
        power = int(exp)
        if power < 1:
            raise ValueError("block power must be positive")
    base: GramLattice
    if part == "U":
        base = GramLattice.from_rows([[0, 1], [1, 0]], ["u1", "u2"])
    elif part in ("E8(-1)", "E8(-1)".lower()):
        c = _e8_cartan()
        base = GramLattice.from_rows([[-x for x in row] for row in c], [f"f{i+1}" for i in range(8)])
    elif part == "E8":
        base = GramLattice.from_rows(_e8_cartan(), [f"f{i+1}" for i in range(8)])
    elif part.startswith("<") and part.endswith(">"):
        n = int(part[1:-1])
        base = GramLattice.from_rows([[n]], [f"<{n}>"])
    else:
        raise ValueError(f"unknown lattice block {part!r}")
    out = base
    for _ in range(power - 1):
        out = out.direct_sum(base)
    return out


def ade_chain(n: int, negated: bool = True) -> GramLattice:
    """A_n chain lattice (negated Cartan matrix by default)."""
    d = 2 if not negated else -2
    o = -1 if not negated else 1
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = d
        if i + 1 < n:
            rows[i][i + 1] = rows[i + 1][i] = o
    return GramLattice.from_rows(rows)


# ---------------------------------------------------------------------------
# invariants
# ---------------------------------------------------------------------------


def rank_signature(L: GramLattice) -> tuple[int, int, int, int]:
    """(rank, n_plus, n_minus, n_zero) by exact congruence diagonalization."""
    n = L.dim
    a = [[Fraction(x) for x in row] for row in L.gram]

    def sym_op(i, j, c):
        for t in range(n):
            a[i][t] += c * a[j][t]
        for t in range(n):
            a[t][i] += c * a[t][j]

    def sym_swap(i, j):
        a[i], a[j] = a[j], a[i]
        for t in range(n):
            a[t][i], a[t][j] = a[t][j], a[t][i]

    pos = neg = 0
    for k in range(n):
        if a[k][k] == 0:
            piv = next((i for i in range(k + 1, n) if a[i][i] != 0), None)
            if piv is not None:
                sym_swap(k, piv)
            else:
                off = next(
                    ((i, j) for i in range(k, n) for j in range(i + 1, n) if a[i][j] != 0),
                    None,
                )
                if off is None:
                    break
                i, j = off
                sym_op(i, j, Fraction(1))
                if i != k:
                    sym_swap(k, i)
        pivot = a[k][k]
        for i in range(k + 1, n):
            if a[i][k] != 0:
                sym_op(i, k, -a[i][k] / pivot)
        if pivot > 0:
            pos += 1
        else:
            neg += 1
    rank = pos + neg
    return rank, pos, neg, n - rank


def radical_quotient(L: GramLattice) -> GramLattice:
    """Gram matrix induced on the quotient by the saturated radical (the
    integer kernel of the Gram map); complement columns of the SNF
    transformation give an integral basis of the quotient."""
    n = L.dim
    d, p, q = smith_normal_form([list(r) for r in L.gram])
    kernel_idx = [j for j in range(n) if j >= len(d) or j >= len(d[0]) or d[j][j] == 0]
    keep_idx = [j for j in range(n) if j not in kernel_idx]
    basis = [[q[i][j] for i in range(n)] for j in keep_idx]  # rows are vectors
    g = [[0] * len(keep_idx) for _ in range(len(keep_idx))]
    gram = [list(r) for r in L.gram]
    for a_i, va in enumerate(basis):
        gv = [sum(gram[r][c] * va[c] for c in range(n)) for r in range(n)]
        for b_i, vb in enumerate(basis):
            g[a_i][b_i] = sum(vb[r] * gv[r] for r in range(n))
    labels = tuple(f"q{i+1}" for i in range(len(keep_idx)))
    return GramLattice.from_rows(g, labels)


@dataclass(frozen=True)
class DiscForm:
    """Finite quadratic form on the discriminant group: generator orders,
    q-values in QQ/2ZZ and pairwise b-values in QQ/ZZ."""

    orders: tuple            # invariant factors > 1
    q: tuple                 # Fractions reduced to [0, 2)
    b: tuple                 # tuple of tuples, Fractions reduced to [0, 1)

    def group_order(self) -> int:
        out = 1
        for d in self.orders:
            out *= d
        return out

    def elements(self):
        return product(*(range(d) for d in self.orders))

    def element_order(self, g) -> int:
        out = 1
        for gi, d in zip(g, self.orders):
            out = lcm(out, d // gcd(gi, d))
        return out

    def q_of(self, g) -> Fraction:
        total = Fraction(0)
        k = len(self.orders)
        for i in range(k):
            total += g[i] * g[i] * self.q[i]
            for j in range(i + 1, k):
                total += 2 * g[i] * g[j] * self.b[i][j]
        return total % 2

    def b_of(self, g, h) -> Fraction:
        total = Fraction(0)
        k = len(self.orders)
        for i in range(k):
            for j in range(k):
                total += g[i] * h[j] * self.b[i][j]
        return total % 1

    def negated(self) -> "DiscForm":
        return DiscForm(
            self.orders,
            tuple((-x) % 2 for x in self.q),
            tuple(tuple((-x) % 1 for x in row) for row in self.b),
        )


@dataclass(frozen=True)
class LatticeInvariants:
    rank: int
    signature: tuple         # (n_plus, n_minus, n_zero)
    invariant_factors: tuple
    disc_form: Optional[DiscForm]

    def describe(self) -> dict:
        out = {
            "rank": self.rank,
            "signature": list(self.signature),
            "invariant_factors": list(self.invariant_factors),
        }
        if self.disc_form is not None:
            out["disc_q"] = [str(x) for x in self.disc_form.q]
            out["disc_b"] = [[str(x) for x in row] for row in self.disc_form.b]
        return out


def discriminant_group_form(L: GramLattice) -> LatticeInvariants:
    """Invariants of a nondegenerate even lattice, with the finite quadratic
    form on the discriminant group computed through the dual basis."""
    n = L.dim
    det = L.det()
    if det == 0:
        raise ValueError("degenerate lattice: call radical_quotient first")
    if not L.is_even():
        raise ValueError("discriminant form requires an even lattice")
    rank, pos, neg, zero = rank_signature(L)
    d, p, q = smith_normal_form([list(r) for r in L.gram])
    orders = [d[i][i] for i in range(n) if d[i][i] > 1]
    start = n - len(orders)
    ginv = _fraction_inverse([list(r) for r in L.gram])
    # generator i of the quotient pulls back to P^{-1} e_(start+i); in the
    # dual basis its coordinate vector is G^{-1} P^{-1} e_(start+i)
    pinv = _int_inverse(p)
    gens = []
    for i in range(len(orders)):
        col = [Fraction(pinv[r][start + i]) for r in range(n)]
        vec = [sum(ginv[r][c] * col[c] for c in range(n)) for r in range(n)]
        gens.append(vec)
    gram = [list(r) for r in L.gram]

    def pair(u, v) -> Fraction:
        return sum(u[r] * gram[r][c] * v[c] for r in range(n) for c in range(n))

    qs = tuple(pair(g, g) % 2 for g in gens)
    bs = tuple(tuple(pair(g, h) % 1 for h in gens) for g in gens)
    disc = DiscForm(tuple(orders), qs, bs)
    return LatticeInvariants(rank, (pos, neg, zero), tuple(orders), disc)


def lattice_invariants(L: GramLattice) -> LatticeInvariants:
    """Invariants after passing to the radical quotient when degenerate."""
    M = L if L.det() != 0 else radical_quotient(L)
    inv = discriminant_group_form(M)
    if L.dim != M.dim:
        rank, pos, neg, zero = rank_signature(L)
        inv = LatticeInvariants(rank, (pos, neg, zero), inv.invariant_factors, inv.disc_form)
    return inv


def _fraction_inverse(m: IntMatrix) -> list[list[Fraction]]:
    n = len(m)
    a = [[Fraction(m[i][j]) for j in range(n)] + [Fraction(1 if j == i else 0) for j in range(n)] for i in range(n)]
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k] != 0), None)
        if piv is None:
            raise ValueError("singular matrix")
        a[k], a[piv] = a[piv], a[k]
        inv = 1 / a[k][k]
        a[k] = [x * inv for x in a[k]]
        for i in range(n):
            if i != k and a[i][k] != 0:
                c = a[i][k]
                a[i] = [x - c * y for x, y in zip(a[i], a[k])]
    return [row[n:] for row in a]


def _int_inverse(m: IntMatrix) -> IntMatrix:
    frac = _fraction_inverse(m)
    out = []
    for row in frac:
        r = []
        for x in row:
            if x.denominator != 1:
                raise ValueError("matrix is not unimodular")
            r.append(int(x))
        out.append(r)
    return out


# ---------------------------------------------------------------------------
# fingerprint comparison
# ---------------------------------------------------------------------------


def disc_forms_isomorphic(a: DiscForm, b: DiscForm) -> bool:
    """Brute-force search for a group isomorphism matching q and b; the
    groups here have order at most a few dozen."""
    if sorted(a.orders) != sorted(b.orders):
        return False
    if a.group_order() != b.group_order():
        return False
    if a.group_order() == 1:
        return True
    b_elements = list(b.elements())
    candidates = []
    for g_ord in a.orders:
        candidates.append([e for e in b_elements if b.element_order(e) == g_ord])
    k = len(a.orders)
    a_elements = list(a.elements())
    for images in product(*candidates):
        # the map sending generator i to images[i]
        def phi(g):
            out = [0] * k
            for i in range(k):
                for t in range(k):
                    out[t] = (out[t] + g[i] * images[i][t]) % b.orders[t]
            return tuple(out)

        seen = {phi(g) for g in a_elements}
        if len(seen) != len(a_elements):
            continue
        if any(a.q_of(g) != b.q_of(phi(g)) for g in a_elements):
            continue
        ok = True
        for g in a_elements:
            for h in a_elements:
                if a.b_of(g, h) != b.b_of(phi(g), phi(h)):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return True
    return False


def invariants_match(A: GramLattice, B: GramLattice) -> bool:
    """Same rank, signature, discriminant group and discriminant form."""
    ia = lattice_invariants(A)
    ib = lattice_invariants(B)
    return fingerprints_match(ia, ib)


def fingerprints_match(ia: LatticeInvariants, ib: LatticeInvariants) -> bool:
    if ia.rank != ib.rank:
        return False
    if ia.signature[:2] != ib.signature[:2]:
        return False
    if sorted(ia.invariant_factors) != sorted(ib.invariant_factors):
        return False
    if ia.disc_form is None or ib.disc_form is None:
        return ia.disc_form is ib.disc_form
    return disc_forms_isomorphic(ia.disc_form, ib.disc_form)
