"""Bivariate polynomial machinery for the plane curves attached to (f, t).

The central object is the quotient curve (f(X)Y^(q^t) - f(Y)X^(q^t)) divided
exactly by X^q Y - X Y^q.  On top of sparse bivariate arithmetic the module
provides points at infinity, exhaustive affine point counts with the
y/x-outside-F_q predicate, multiplicities and tangent cones, the local
quadratic transform F(X, XY)/X^r, truncated branch series, Sylvester
resultants in Y, and Hasse-Weil gap audits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import gf
from .gf import FFElt, FieldCtx, FieldError, check_ceiling
from .linpoly import QPoly

_VEC_SLICE_MIN = 64


class InexactDivision(FieldError):
    pass


def _binom_mod(n: int, k: int, p: int) -> int:
    """Binomial coefficient mod p by Lucas reduction."""
    r = 1
    while n or k:
        a, b = n % p, k % p
        if b > a:
            return 0
        r = (r * math.comb(a, b)) % p
        n //= p
        k //= p
    return r


def _enc(ctx: FieldCtx, c) -> int:
    return c.val if isinstance(c, FFElt) else int(c) % ctx.order


# ---------------------------------------------------------------------------

class UnivarPoly:
    """Dense univariate polynomial over a field context, low degree first."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: FieldCtx, coeffs):
        cs = [_enc(ctx, c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "ctx", ctx)
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, *a):
        raise AttributeError("UnivarPoly is immutable")

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def add(self, other: "UnivarPoly") -> "UnivarPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return UnivarPoly(self.ctx, [self.ctx.add_i(self.coeff(k), other.coeff(k)) for k in range(n)])

    def sub(self, other: "UnivarPoly") -> "UnivarPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return UnivarPoly(self.ctx, [self.ctx.sub_i(self.coeff(k), other.coeff(k)) for k in range(n)])

    def neg(self) -> "UnivarPoly":
        return UnivarPoly(self.ctx, [self.ctx.neg_i(c) for c in self.coeffs])

    def mul(self, other: "UnivarPoly") -> "UnivarPoly":
        if self.is_zero() or other.is_zero():
            return UnivarPoly(self.ctx, [])
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        ctx = self.ctx
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] = ctx.add_i(out[i + j], ctx.mul_i(a, b))
        return UnivarPoly(ctx, out)

    def scale(self, c) -> "UnivarPoly":
        c = _enc(self.ctx, c)
        return UnivarPoly(self.ctx, [self.ctx.mul_i(a, c) for a in self.coeffs])

    def divmod(self, other: "UnivarPoly") -> tuple["UnivarPoly", "UnivarPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        ctx = self.ctx
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return UnivarPoly(ctx, []), self
        quot = [0] * (dq + 1)
        inv_lead = ctx.inv_i(other.coeffs[-1])
        for k in range(dq, -1, -1):
            top = rem[k + other.degree()]
            if top == 0:
                continue
            c = ctx.mul_i(top, inv_lead)
            quot[k] = c
            for j, b in enumerate(other.coeffs):
                rem[k + j] = ctx.sub_i(rem[k + j], ctx.mul_i(c, b))
        return UnivarPoly(ctx, quot), UnivarPoly(ctx, rem)

    def exact_div(self, other: "UnivarPoly") -> "UnivarPoly":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise InexactDivision("inexact univariate division")
        return q

    def gcd(self, other: "UnivarPoly") -> "UnivarPoly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a.divmod(b)[1]
        if a.is_zero():
            return a
        return a.scale(self.ctx.inv_i(a.coeffs[-1]))

    def derivative(self) -> "UnivarPoly":
        ctx = self.ctx
        return UnivarPoly(ctx, [ctx.mul_i(c, k % ctx.p) for k, c in enumerate(self.coeffs)][1:])

    def evaluate(self, x) -> int:
        ctx = self.ctx
        x = _enc(ctx, x)
        acc = 0
        for c in reversed(self.coeffs):
            acc = ctx.add_i(ctx.mul_i(acc, x), c)
        return acc

    def roots(self, vectorized: bool = True) -> list[int]:
        """All roots in the coefficient field, ascending encodings."""
        ctx = self.ctx
        if self.is_zero():
            return list(range(ctx.order))
        if ctx.order >= _VEC_SLICE_MIN and vectorized:
            xs = np.arange(ctx.order, dtype=np.int64)
            acc = np.zeros(ctx.order, dtype=np.int64)
            for c in reversed(self.coeffs):
                acc = ctx.add_vec(ctx.mul_vec(acc, xs), np.full(ctx.order, c, dtype=np.int64))
            return np.nonzero(acc == 0)[0].tolist()
        return [x for x in range(ctx.order) if self.evaluate(x) == 0]

    def __eq__(self, other):
        return (
            isinstance(other, UnivarPoly)
            and self.ctx == other.ctx
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.ctx.key, self.coeffs))

    def __repr__(self):
        if self.is_zero():
            return "UnivarPoly(0)"
        return "UnivarPoly(" + " + ".join(
            f"{self.ctx.digits(c)}*X^{k}" for k, c in enumerate(self.coeffs) if c
        ) + ")"


# ---------------------------------------------------------------------------

class BivarPoly:
    """Sparse bivariate polynomial sum c_(i,j) X^i Y^j over a field context."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: FieldCtx, terms=None):
        tm = {}
        for (i, j), c in (terms or {}).items():
            v = _enc(ctx, c)
            if v:
                if i < 0 or j < 0:
                    raise FieldError("negative exponent")
                tm[(int(i), int(j))] = v
        object.__setattr__(self, "ctx", ctx)
        object.__setattr__(self, "terms", tm)

    def __setattr__(self, *a):
        raise AttributeError("BivarPoly is immutable")

    @classmethod
    def constant(cls, ctx: FieldCtx, c) -> "BivarPoly":
        return cls(ctx, {(0, 0): c})

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((i +j for i, j in self.terms), default=-1)

    def deg_y(self) -> int:
        return max((j for _, j in self.terms), default=-1)

    def deg_x(self) -> int:
        return max((i for i, _ in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        degs = {i + j for i, j in self.terms}
        return len(degs) <= 1

    def coeff(self, i: int, j: int) -> FFElt:
        return FFElt(self.ctx, self.terms.get((i, j), 0))

    def sorted_terms(self):
        return sorted(self.terms.items())

    def add(self, other: "BivarPoly") -> "BivarPoly":
        out = dict(self.terms)
        ctx = self.ctx
        for k, c in other.terms.items():
            v = ctx.add_i(out.get(k, 0), c)
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return BivarPoly(ctx, out)

    def sub(self, other: "BivarPoly") -> "BivarPoly":
        return self.add(other.neg())

    def neg(self) -> "BivarPoly":
        ctx = self.ctx
        return BivarPoly(ctx, {k: ctx.neg_i(c) for k, c in self.terms.items()})

    def scale(self, c) -> "BivarPoly":
        ctx = self.ctx
        c = _enc(ctx, c)
        return BivarPoly(ctx, {k: ctx.mul_i(v, c) for k, v in self.terms.items()})

    def mul(self, other: "BivarPoly") -> "BivarPoly":
        ctx = self.ctx
        out: dict = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                k = (i1 + i2, j1 + j2)
                v = ctx.add_i(out.get(k, 0), ctx.mul_i(c1, c2))
                if v:
                    out[k] = v
                else:
                    out.pop(k, None)
        return BivarPoly(ctx, out)

    def evaluate(self, x, y) -> FFElt:
        ctx = self.ctx
        x, y = _enc(ctx, x), _enc(ctx, y)
        acc = 0
        for (i, j), c in self.terms.items():
            acc = ctx.add_i(acc, ctx.mul_i(c, ctx.mul_i(ctx.pow_i(x, i), ctx.pow_i(y, j))))
        return FFElt(ctx, acc)

    def shift(self, u, v) -> "BivarPoly":
        """F(X+u, Y+v), exact binomial expansion."""
        ctx = self.ctx
        u, v = _enc(ctx, u), _enc(ctx, v)
        cur = self.terms
        if u:
            out: dict = {}
            for (i, j), c in cur.items():
                for a in range(i + 1):
                    bc = _binom_mod(i, a, ctx.p)
                    if not bc:
                        continue
                    w = ctx.mul_i(c, ctx.mul_i(bc, ctx.pow_i(u, i - a)))
                    k = (a, j)
                    s = ctx.add_i(out.get(k, 0), w)
                    if s:
                        out[k] = s
                    else:
                        out.pop(k, None)
            cur = out
        if v:
            out = {}
            for (i, j), c in cur.items():
                for b in range(j + 1):
                    bc = _binom_mod(j, b, ctx.p)
                    if not bc:
                        continue
                    w = ctx.mul_i(c, ctx.mul_i(bc, ctx.pow_i(v, j - b)))
                    k = (i, b)
                    s = ctx.add_i(out.get(k, 0), w)
                    if s:
                        out[k] = s
                    else:
                        out.pop(k, None)
            cur = out
        return BivarPoly(ctx, dict(cur))

    def embed_into(self, ext: FieldCtx) -> "BivarPoly":
        if ext is self.ctx or ext == self.ctx:
            return self
        phi = gf.embed(self.ctx, ext)
        return BivarPoly(ext, {k: phi.map_enc(c) for k, c in self.terms.items()})

    def coeffs_in_y(self) -> dict:
        """Map j -> UnivarPoly in X (the coefficient of Y^j)."""
        ctx = self.ctx
        by_j: dict = {}
        for (i, j), c in self.terms.items():
            by_j.setdefault(j, {})[i] = c
        out = {}
        for j, d in by_j.items():
            out[j] = UnivarPoly(ctx, [d.get(i, 0) for i in range(max(d) + 1)])
        return out

    def __eq__(self, other):
        return (
            isinstance(other, BivarPoly)
            and self.ctx == other.ctx
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.ctx.key, tuple(sorted(self.terms.items()))))

    def __repr__(self):
        if self.is_zero():
            return "BivarPoly(0)"
        parts = [f"{self.ctx.digits(c)}*X^{i}*Y^{j}" for (i, j), c in self.sorted_terms()]
        return "BivarPoly(" + " + ".join(parts) + ")"


# ---------------------------------------------------------------------------

def exact_divide(a: BivarPoly, b: BivarPoly) -> BivarPoly:
    """Quotient a / b under the lexicographic order with Y above X; raises
    InexactDivision when any reduction step has no divisible leading term."""
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    ctx = a.ctx
    (bi, bj) = max(b.terms, key=lambda ij: (ij[1], ij[0]))
    bc_inv = ctx.inv_i(b.terms[(bi, bj)])
    rem = dict(a.terms)
    quot: dict = {}
    while rem:
        (ai, aj) = max(rem, key=lambda ij: (ij[1], ij[0]))
        if ai < bi or aj < bj:
            raise InexactDivision("leading term not divisible")
        qi, qj = ai - bi, aj - bj
        qc = ctx.mul_i(rem[(ai, aj)], bc_inv)
        quot[(qi, qj)] = qc
        for (ci, cj), cc in b.terms.items():
            k = (qi + ci, qj + cj)
            v = ctx.sub_i(rem.get(k, 0), ctx.mul_i(qc, cc))
            if v:
                rem[k] = v
            else:
                rem.pop(k, None)
    return BivarPoly(ctx, quot)


def scatter_curve_numerator(f: QPoly, t: int) -> BivarPoly:
    """f(X) Y^(q^t) - f(Y) X^(q^t) with q-power indices folded below n."""
    ctx = f.ctx
    fr = f.reduce_indices()
    if not fr.coeff(t % ctx.d).is_zero():
        raise FieldError(f"coefficient at index {t} must be zero")
    q = ctx.q
    qt = q ** (t % ctx.d)
    out: dict = {}
    for j, c in enumerate(fr.coeffs):
        if c.is_zero() or j == t % ctx.d:
            continue
        qj = q ** j
        out[(qj, qt)] = c.val
        out[(qt, qj)] = ctx.neg_i(c.val)
    return BivarPoly(ctx, out)


def build_scatter_curve(f: QPoly, t: int) -> BivarPoly:
    """The quotient curve of (f, t): numerator divided exactly by
    X^q Y - X Y^q.  The division is always exact for a valid instance and the
    quotient degree is q^k + q^t - q - 1 for top index k."""
    ctx = f.ctx
    if f.is_zero():
        raise FieldError("f must be nonzero")
    num = scatter_curve_numerator(f, t)
    q = ctx.q
    den = BivarPoly(ctx, {(q, 1): 1, (1, q): ctx.neg_i(1)})
    if num.is_zero():
        # every term shares index t; the instance normalization forbids this
        raise FieldError("numerator vanished: f is supported only at index t")
    quot = exact_divide(num, den)
    fr = f.reduce_indices()
    k = fr.qdegree()
    expected = q ** k + q ** (t % ctx.d) - q - 1
    if quot.degree() != expected:
        raise FieldError("internal error: unexpected curve degree")
    return quot


def infinity_chart(f_poly: BivarPoly) -> BivarPoly:
    """Affine chart of the homogenized curve at the point (1, 0, 0): the old
    homogenizing variable becomes X and the second coordinate stays Y."""
    d = f_poly.degree()
    out: dict = {}
    for (i, j), c in f_poly.terms.items():
        out[(d - i - j, j)] = c
    return BivarPoly(f_poly.ctx, out)


@dataclass(frozen=True)
class ProjPointSet:
    points: tuple

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, p):
        return tuple(p) in self.points


def points_at_infinity(f_poly: BivarPoly, ext: FieldCtx | None = None, ceiling=None) -> ProjPointSet:
    """Projective points of the curve on the line at infinity, over `ext`
    (default: the field of definition).  Points are returned deduplicated,
    first nonzero coordinate scaled to 1, sorted in canonical order."""
    if f_poly.is_zero():
        raise FieldError("zero polynomial has no well-defined curve")
    ext = ext or f_poly.ctx
    check_ceiling(ext.order, ceiling)
    fe = f_poly.embed_into(ext)
    d = fe.degree()
    pts = []
    if d >= 1:
        top = {(i, j): c for (i, j), c in fe.terms.items() if i + j == d}
        u = UnivarPoly(ext, [dict(((j, c) for (i, j), c in top.items())).get(k, 0) for k in range(d + 1)])
        if u.coeff(d) == 0:
            pts.append((ext.zero, ext.one, ext.zero))
        for r in u.roots():
            pts.append((ext.one, FFElt(ext, r), ext.zero))
    pts.sort(key=lambda p: (p[0].val, p[1].val, p[2].val))
    return ProjPointSet(tuple(pts))


class AffineCount(NamedTuple):
    count: int
    witness: tuple[FFElt, FFElt] | None


def count_affine(
    f_poly: BivarPoly,
    ext: FieldCtx | None = None,
    predicate: str = "all",
    ceiling=None,
) -> AffineCount:
    """Exhaustive count of affine zeros over `ext`, with the first witness in
    grid order (x ascending, then y).  predicate "ratio_not_in_Fq" keeps only
    zeros with x nonzero and y/x outside the designated subfield F_q."""
    if predicate not in ("all", "ratio_not_in_Fq"):
        raise FieldError(f"unknown predicate {predicate!r}")
    ext = ext or f_poly.ctx
    check_ceiling(ext.order, ceiling)
    fe = f_poly.embed_into(ext)
    order = ext.order
    if fe.is_zero():
        if predicate == "all":
            return AffineCount(order * order, (ext.zero, ext.zero))
        wit = (ext.one, _first_off_line(ext, 1))
        return AffineCount((order - 1) * (order - ext.q), wit)
    if fe.degree() == 0:
        return AffineCount(0, None)
    if fe.is_homogeneous():
        return _count_affine_homogeneous(fe, predicate)
    return _count_affine_grid(fe, predicate)


def _first_off_line(ext: FieldCtx, x_enc: int) -> FFElt:
    for y in range(ext.order):
        if not ext.in_subfield_i(ext.mul_i(y, ext.inv_i(x_enc))):
            return FFElt(ext, y)
    raise FieldError("no element outside the subfield line")


def _count_affine_homogeneous(fe: BivarPoly, predicate: str) -> AffineCount:
    """Zeros of a homogeneous form lie on lines through the origin, so the
    grid collapses to the roots of F(1, Y) plus the two axes."""
    ext = fe.ctx
    order = ext.order
    d = fe.degree()
    u = UnivarPoly(ext, [dict(((j, c) for (i, j), c in fe.terms.items())).get(k, 0) for k in range(d + 1)])
    roots = u.roots()
    y_axis_vanishes = u.coeff(d) == 0  # F(0, y) = c_(0,d) y^d
    if predicate == "all":
        count = 1  # the origin
        if y_axis_vanishes:
            count += order - 1
        count += (order - 1) * len(roots)
        return AffineCount(count, (ext.zero, ext.zero))
    off = [r for r in roots if r and not ext.in_subfield_i(r)]
    count = (order - 1) * len(off)
    if not count:
        return AffineCount(0, None)
    return AffineCount(count, (ext.one, FFElt(ext, min(off))))


_GRID_BLOCK_CELLS = 1 << 20


def _count_affine_grid(fe: BivarPoly, predicate: str) -> AffineCount:
    """Block scan: the grid is swept in x-chunks, and every term contributes
    to the whole (chunk, order) block with a single broadcast product."""
    ext = fe.ctx
    order = ext.order
    xs = np.arange(order, dtype=np.int64)
    ys = xs
    # per term, the x-profile c * x^i and the y-profile y^j over the field
    profiles = [
        (ext.mul_vec(np.int64(c), ext.pow_vec(xs, i)), ext.pow_vec(ys, j))
        for (i, j), c in fe.sorted_terms()
    ]
    ratio_mode = predicate == "ratio_not_in_Fq"
    in_subfield = ext.frob_vec(ys, 1) == ys
    chunk = max(1, _GRID_BLOCK_CELLS // order)
    count = 0
    witness = None
    for start in range(0, order, chunk):
        xs_c = np.arange(start, min(start + chunk, order), dtype=np.int64)
        # accumulate digit vectors, reducing mod p before int16 could overflow
        acc = np.zeros((len(xs_c), order, ext.N), dtype=np.int16)
        pending = 0
        for xprof, yprof in profiles:
            contrib = ext.mul_vec(xprof[xs_c][:, None], yprof[None, :])
            acc += ext.digits_vec(contrib).astype(np.int16, copy=False)
            pending += 1
            if pending * (ext.p - 1) > 30000:
                acc %= ext.p
                pending = 1
        mask = ~(acc % ext.p).any(axis=-1)
        if ratio_mode:
            ratios = ext.mul_vec(ext.inv_vec(np.where(xs_c == 0, 1, xs_c))[:, None], ys[None, :])
            mask &= ~in_subfield[ratios]
            mask &= (xs_c != 0)[:, None]
        c = int(mask.sum())
        if c and witness is None:
            flat = int(np.argmax(mask))
            witness = (FFElt(ext, int(xs_c[flat // order])), FFElt(ext, flat % order))
        count += c
    return AffineCount(count, witness)


# ---------------------------------------------------------------------------

def multiplicity(f_poly: BivarPoly, point) -> tuple[int, BivarPoly]:
    """Multiplicity of the curve at an affine point and the tangent cone (the
    least-degree homogeneous part of the shifted polynomial).  Zero exactly
    when the point is off the curve."""
    if f_poly.is_zero():
        raise FieldError("zero polynomial has no well-defined curve")
    u, v = point
    g = f_poly.shift(u, v)
    m = min(i + j for i, j in g.terms) if g.terms else 0
    cone = BivarPoly(g.ctx, {k: c for k, c in g.terms.items() if k[0] + k[1] == m})
    return m, cone


def is_ordinary(cone: BivarPoly) -> bool:
    """True when the homogeneous form is squarefree over the algebraic
    closure, i.e. all tangent directions are distinct."""
    if cone.is_zero():
        raise FieldError("zero tangent cone")
    if not cone.is_homogeneous():
        raise FieldError("tangent cone must be homogeneous")
    ctx = cone.ctx
    if cone.degree() == 0:
        raise FieldError("a point of multiplicity 0 has no tangent cone")
    alpha = min(i for i, _ in cone.terms)
    beta = min(j for _, j in cone.terms)
    if alpha >= 2 or beta >= 2:
        return False
    core = {(i - alpha, j - beta): c for (i, j), c in cone.terms.items()}
    deg = max(i for i, _ in core) if core else 0
    c_poly = UnivarPoly(ctx, [dict(((i, c) for (i, j), c in core.items())).get(k, 0) for k in range(deg + 1)])
    if c_poly.degree() <= 0:
        return True
    d_poly = c_poly.derivative()
    if d_poly.is_zero():
        return False  # p-th power: every root repeats
    return c_poly.gcd(d_poly).degree() == 0


def geometric_transform(f_poly: BivarPoly) -> BivarPoly:
    """F(X, XY) / X^r with r the multiplicity at the origin.  Requires the
    origin on the curve and the line X = 0 not tangent there."""
    m, cone = multiplicity(f_poly, (0, 0))
    if m < 1:
        raise FieldError("the origin is not on the curve")
    if all(i > 0 for i, _ in cone.terms):
        raise FieldError("the line X = 0 is tangent at the origin")
    out = {}
    for (i, j), c in f_poly.terms.items():
        out[(i + j - m, j)] = c
    return BivarPoly(f_poly.ctx, out)


def branch_series(f_poly: BivarPoly, terms: int) -> list[FFElt]:
    """Coefficients c_1..c_terms of the unique series y(X) with
    F(X, y(X)) = 0 mod X^(terms+1); needs F(0,0) = 0 and dF/dY nonzero at the
    origin.  Each coefficient is solved by dividing by that unit only."""
    ctx = f_poly.ctx
    if f_poly.terms.get((0, 0), 0):
        raise FieldError("the origin is not on the curve")
    unit = f_poly.terms.get((0, 1), 0)
    if not unit:
        raise FieldError("dF/dY vanishes at the origin")
    inv_unit = ctx.inv_i(unit)
    series = [0]  # series[k] = coefficient of X^k, series[0] = 0
    for k in range(1, terms + 1):
        val = _series_eval_coeff(f_poly, series, k)
        series.append(ctx.mul_i(ctx.neg_i(val), inv_unit))
    return [FFElt(ctx, c) for c in series[1:]]


def _series_eval_coeff(f_poly: BivarPoly, series: list[int], k: int) -> int:
    """Coefficient of X^k in F(X, y(X)) for the truncated series y."""
    ctx = f_poly.ctx
    cap = k + 1
    ypows: dict[int, list[int]] = {0: [1] + [0] * (cap - 1)}
    y1 = [0] * cap
    for idx, c in enumerate(series[:cap]):
        y1[idx] = c
    ypows[1] = y1

    def ypow(j):
        if j not in ypows:
            prev = ypow(j - 1)
            out = [0] * cap
            for a, ca in enumerate(prev):
                if ca:
                    for b, cb in enumerate(y1):
                        if cb and a + b < cap:
                            out[a + b] = ctx.add_i(out[a + b], ctx.mul_i(ca, cb))
            ypows[j] = out
        return ypows[j]

    acc = 0
    for (i, j), c in f_poly.terms.items():
        if i > k:
            continue
        yj = ypow(j)
        if k - i < cap and yj[k - i]:
            acc = ctx.add_i(acc, ctx.mul_i(c, yj[k - i]))
    return acc


def resultant_in_y(a: BivarPoly, b: BivarPoly) -> UnivarPoly:
    """Sylvester resultant eliminating Y, as a polynomial in X.  Vanishes
    identically exactly when the inputs share a common component."""
    if a.is_zero() or b.is_zero():
        raise FieldError("resultant requires nonzero inputs")
    da, db = a.deg_y(), b.deg_y()
    if da < 1 or db < 1:
        raise FieldError("resultant requires positive Y-degree")
    ctx = a.ctx
    ac = a.coeffs_in_y()
    bc = b.coeffs_in_y()
    zero = UnivarPoly(ctx, [])
    n = da + db
    m = [[zero] * n for _ in range(n)]
    for r in range(db):
        for k in range(da + 1):
            m[r][r + k] = ac.get(da - k, zero)
    for r in range(da):
        for k in range(db + 1):
            m[db + r][r + k] = bc.get(db - k, zero)
    return _poly_det_bareiss(ctx, m)


def _poly_det_bareiss(ctx: FieldCtx, m) -> UnivarPoly:
    """Fraction-free determinant of a matrix of univariate polynomials."""
    n = len(m)
    m = [row[:] for row in m]
    one = UnivarPoly(ctx, [1])
    prev = one
    sign = 1
    for k in range(n - 1):
        if m[k][k].is_zero():
            piv = next((r for r in range(k + 1, n) if not m[r][k].is_zero()), None)
            if piv is None:
                return UnivarPoly(ctx, [])
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j].mul(m[k][k]).sub(m[i][k].mul(m[k][j]))
                m[i][j] = num.exact_div(prev)
            m[i][k] = UnivarPoly(ctx, [])
        prev = m[k][k]
    det = m[n - 1][n - 1]
    if sign < 0:
        det = det.neg()
    return det


def hasse_weil_gap(f_poly: BivarPoly, ext: FieldCtx | None = None, ceiling=None):
    """Projective point count over `ext`, the gap |count - |ext| - 1| and the
    bound (d-1)(d-2)sqrt(|ext|).  The caller decides whether the bound
    applies; it only does for absolutely irreducible curves."""
    ext = ext or f_poly.ctx
    affine = count_affine(f_poly, ext, "all", ceiling=ceiling)
    inf = points_at_infinity(f_poly, ext, ceiling=ceiling)
    total = affine.count + len(inf)
    gap = abs(total - ext.order - 1)
    d = f_poly.degree()
    bound = (d - 1) * (d - 2) * math.sqrt(ext.order)
    return total, gap, bound


def line_restriction(f: QPoly, t: int, u, curve: BivarPoly | None = None) -> UnivarPoly:
    """The scatter curve evaluated along Y = u X, as a univariate polynomial.
    A zero result would mean the line is a component, which the classification
    rules out; it is reported as an error."""
    f_poly = curve if curve is not None else build_scatter_curve(f, t)
    ctx = f_poly.ctx
    u = _enc(ctx, u)
    out: dict[int, int] = {}
    for (i, j), c in f_poly.terms.items():
        v = ctx.mul_i(c, ctx.pow_i(u, j))
        k = i + j
        out[k] = ctx.add_i(out.get(k, 0), v)
    poly = UnivarPoly(ctx, [out.get(k, 0) for k in range(max(out, default=0) + 1)])
    if poly.is_zero():
        raise FieldError("the line Y = uX lies on the curve")
    return poly
