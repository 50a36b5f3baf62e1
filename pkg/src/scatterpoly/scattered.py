"""Scatteredness testing for pairs (f, t) over F_{q^n}.

The pair is scattered when the map x -> f(x)/x^(q^t) on nonzero field
elements has every fiber of size exactly q - 1, equivalently when every map
c*X^(q^t) - f(X) has kernel of F_q-dimension at most 1.  Both routes are
implemented: a fiber-bucketing scan (primary, produces witnesses) and a
kernel-dimension sweep over all scalars c (batched Gaussian elimination over
F_p).  They must agree; small instances are cross-checked inline.

Also here: linear-set weight spectra, extension-field scans, the decision
predicates for guaranteed non-scatteredness, and the pair-product image and
completion searches used by the degree-q^2 classification facts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import gf
from .gf import CeilingExceeded, FFElt, FieldCtx, FieldError, check_ceiling
from .linpoly import NormalizedInstance, QPoly, evaluate, evaluate_vec, kernel_dim

REASON_KERNEL = "kernel dimension exceeds 1"
REASON_GCD = "gcd(k, n) > 1 with k <= n/4"
REASON_INEQUALITY = "component bound inequality with k <= n/4"

_INLINE_CROSSCHECK_MAX = 1 << 12


@dataclass(frozen=True)
class ScatterVerdict:
    scattered: bool
    witness: tuple[FFElt, FFElt] | None


@dataclass(frozen=True)
class LinearSetReport:
    size: int
    weight_spectrum: dict
    max_weight: int


@dataclass(frozen=True)
class ScanEntry:
    m: int
    verdict: ScatterVerdict | None
    skipped: str | None = None


def _ratio_counts(f: QPoly, t: int, ceiling=None):
    """Ratios f(x)/x^(q^t) for every nonzero x, plus their fiber sizes."""
    ctx = f.ctx
    check_ceiling(ctx.order, ceiling)
    xs = np.arange(1, ctx.order, dtype=np.int64)
    fx = evaluate_vec(f, xs)
    xt = ctx.frob_vec(xs, t)
    ratios = ctx.mul_vec(fx, ctx.inv_vec(xt))
    counts = np.bincount(ratios, minlength=ctx.order)
    return xs, ratios, counts


def scatter_test(f: QPoly, t: int, ceiling=None) -> ScatterVerdict:
    """Fiber-count scatteredness test for an arbitrary nonzero pair (f, t).

    The witness, present iff not scattered, is the first pair (x, y) in
    canonical order with equal ratios and y/x outside F_q.
    """
    if f.is_zero():
        raise FieldError("scatteredness is undefined for the zero map")
    ctx = f.ctx
    xs, ratios, counts = _ratio_counts(f, t, ceiling)
    fat = counts > ctx.q - 1
    if not fat.any():
        return ScatterVerdict(True, None)
    sel = fat[ratios]
    idx = int(np.argmax(sel))
    x_enc = int(xs[idx])
    mates = xs[ratios == ratios[idx]]
    ix = ctx.inv_i(x_enc)
    for m in mates.tolist():
        if m != x_enc and not ctx.in_subfield_i(ctx.mul_i(m, ix)):
            return ScatterVerdict(False, (FFElt(ctx, x_enc), FFElt(ctx, m)))
    raise FieldError("internal error: fat fiber without an off-line mate")


def _batch_rank_modp(a: np.ndarray, p: int) -> np.ndarray:
    """Ranks of a batch of square matrices over F_p.

    The layout is (rows, cols, batch) so every kernel runs on contiguous
    batch slices; `a` holds reduced entries in [0, p) and is consumed.
    Row order is tracked with a used-mask instead of physical swaps.
    """
    n, _, nb = a.shape
    inv_arr = np.array([0] + [pow(x, p - 2, p) for x in range(1, p)], dtype=np.int8)
    used = np.zeros((n, nb), dtype=bool)
    rank = np.zeros(nb, dtype=np.int64)
    # after a subtraction entries sit in [-(p-1)^2, p-1]; each round of
    # `x -= p * (x >> 7)` adds p to the negative ones
    fix_rounds = 1 if p == 2 else ((p - 1) ** 2 + p - 1) // p
    w = np.zeros((n, nb), dtype=np.int8)
    for col in range(n):
        found = np.zeros(nb, dtype=bool)
        pivot_mask = np.empty((n, nb), dtype=bool)
        for r in range(n):
            cand = (a[r, col] != 0) & ~used[r] & ~found
            pivot_mask[r] = cand
            found |= cand
            used[r] |= cand
        rank += found
        if not found.any():
            continue
        tail = slice(col, n)
        for r in range(n):
            np.multiply(inv_arr[a[r, col]], pivot_mask[r], out=w[r])
        pivn = (np.einsum("rcb,rb->cb", a[:, tail, :], w, dtype=np.int16) % p).astype(np.int8)
        for r in range(n):
            fac = a[r, col] * ~used[r]
            if not fac.any():
                continue
            at = a[r, tail, :]
            at -= fac[None, :] * pivn
            for _ in range(fix_rounds):
                at -= p * (at >> 7)
    return rank


def _kernel_dims_chunk(ctx, mul_big, fb_stack, cs: np.ndarray) -> np.ndarray:
    p, e, n_p = ctx.p, ctx.e, ctx.N
    dg = ctx.digits_vec(cs).astype(np.int16)
    # digits of c*h_i are linear in the digits of c; all columns in one matmul
    flat = (dg @ mul_big - fb_stack[None, :]) % p
    mats = np.ascontiguousarray(flat.reshape(len(cs), n_p, n_p).transpose(2, 1, 0)).astype(np.int8)
    ranks = _batch_rank_modp(mats, p)
    return (n_p - ranks) // e


def _kernel_setup(f: QPoly, t: int):
    """Stacked F_p matrices of multiplication by the Frobenius images of the
    power basis, plus the stacked digits of the basis f-images."""
    ctx = f.ctx
    n_p = ctx.N
    basis = [ctx.pow_i(ctx.gen_enc, i) if n_p > 1 else 1 for i in range(n_p)]
    mul_big = np.empty((n_p, n_p * n_p), dtype=np.int16)
    fb_stack = np.empty(n_p * n_p, dtype=np.int16)
    for i, bv in enumerate(basis):
        hv = ctx.frob_i(bv, t)
        for r in range(n_p):
            mul_big[r, i * n_p : (i + 1) * n_p] = ctx.digits(ctx.mul_i(ctx._pp[r], hv))
        fb_stack[i * n_p : (i + 1) * n_p] = ctx.digits(evaluate(f, FFElt(ctx, bv)).val)
    return mul_big, fb_stack


def kernel_dims_per_scalar(f: QPoly, t: int, ceiling=None, chunk: int = 1 << 13) -> np.ndarray:
    """F_q-dimension of ker(c*X^(q^t) - f) for every scalar c, indexed by
    encoding.  Works on the F_p matrices of the maps; dim_Fp = e * dim_Fq."""
    ctx = f.ctx
    check_ceiling(ctx.order, ceiling)
    mul_mats, fb_digits = _kernel_setup(f, t)
    out = np.empty(ctx.order, dtype=np.int64)
    for start in range(0, ctx.order, chunk):
        cs = np.arange(start, min(start + chunk, ctx.order), dtype=np.int64)
        out[start : start + len(cs)] = _kernel_dims_chunk(ctx, mul_mats, fb_digits, cs)
    return out


def scatter_test_kernel(f: QPoly, t: int, ceiling=None, chunk: int = 1 << 13) -> bool:
    """Kernel-dimension scatteredness test: no scalar c may give a kernel of
    dimension 2 or more.  Stops at the first offending scalar."""
    if f.is_zero():
        raise FieldError("scatteredness is undefined for the zero map")
    ctx = f.ctx
    check_ceiling(ctx.order, ceiling)
    mul_mats, fb_digits = _kernel_setup(f, t)
    for start in range(0, ctx.order, chunk):
        cs = np.arange(start, min(start + chunk, ctx.order), dtype=np.int64)
        if (_kernel_dims_chunk(ctx, mul_mats, fb_digits, cs) > 1).any():
            return False
    return True


def is_scattered(inst: NormalizedInstance, ceiling=None) -> ScatterVerdict:
    """Scatteredness of a normalized instance, witness included.

    On small fields the kernel-dimension route is run as well and the two
    verdicts are required to agree.
    """
    verdict = scatter_test(inst.f, inst.t, ceiling)
    if inst.f.ctx.order <= _INLINE_CROSSCHECK_MAX:
        if scatter_test_kernel(inst.f, inst.t, ceiling) != verdict.scattered:
            raise RuntimeError("internal error: scatteredness testers disagree")
    return verdict


def linear_set_report(inst: NormalizedInstance, ceiling=None) -> LinearSetReport:
    """Weight spectrum of the linear set defined by a normalized instance."""
    return linear_set_report_raw(inst.f, inst.t, ceiling)


def linear_set_report_raw(f: QPoly, t: int, ceiling=None) -> LinearSetReport:
    """Weight spectrum of the projective-line linear set defined by (f, t).

    The point spanned by (1, c) has weight w exactly when the fiber of the
    ratio map over c has size q^w - 1; the point spanned by (0, 1) never lies
    on the set for these instances.
    """
    if f.is_zero():
        raise FieldError("the zero map defines no linear set of full rank")
    ctx = f.ctx
    _, _, counts = _ratio_counts(f, t, ceiling)
    q = ctx.q
    by_size = {q ** w - 1: w for w in range(1, ctx.d + 1)}
    spectrum: dict[int, int] = {}
    for csize in np.unique(counts[counts > 0]):
        w = by_size.get(int(csize))
        if w is None:
            raise FieldError("internal error: fiber size is not q^w - 1")
        spectrum[w] = int((counts == csize).sum())
    return LinearSetReport(
        size=sum(spectrum.values()),
        weight_spectrum=spectrum,
        max_weight=max(spectrum) if spectrum else 0,
    )


def scan_extensions(f: QPoly, t: int, m_list, ceiling=None) -> list[ScanEntry]:
    """Rerun the scatteredness test over F_{q^(mn)} for each m.

    A failure at some m certifies the pair is not scattered there; the scan
    never claims more than consistency up to its horizon.  Extensions beyond
    the enumeration ceiling are reported as skipped and the scan continues.
    """
    ctx = f.ctx
    entries = []
    for m in m_list:
        if m < 1:
            raise FieldError("extension multipliers must be >= 1")
        size = ctx.p ** (ctx.e * ctx.d * m)
        try:
            check_ceiling(size, ceiling)
            ext = gf.make_field(ctx.p, ctx.e, ctx.d * m)
            phi = gf.embed(ctx, ext, ceiling=ceiling)
            fm = QPoly.from_encs(ext, [phi.map_enc(v) for v in f.encs])
            entries.append(ScanEntry(m, scatter_test(fm, t, ceiling)))
        except CeilingExceeded as exc:
            entries.append(ScanEntry(m, None, str(exc)))
    return entries


# ---------------------------------------------------------------------------
# Decision predicates for guaranteed non-scatteredness of the index-0 shape
# f = X^(q^i) + middle terms + b*X^(q^k).

def irreducible_component_inequality(q: int, i: int, k: int, ell: int) -> bool:
    """Exact rational test of
    q^(ell+i) + q^ell - q^(2i) - q^i + (q^i - q)^2/4 < (2/9)(q^k - q)^2."""
    if not (1 <= i < k):
        raise FieldError("need 1 <= i < k")
    if not (i <= ell <= k):
        raise FieldError("need i <= ell <= k")
    lhs = (
        Fraction(q ** (ell + i))
        + q ** ell
        - q ** (2 * i)
        - q ** i
        + Fraction((q ** i - q) ** 2, 4)
    )
    rhs = Fraction(2, 9) * (q ** k - q) ** 2
    return lhs < rhs


def inequality_case_table(q: int, k: int, i: int) -> bool:
    """Where the component inequality holds with ell = i + 1, catalogued by
    small q: everywhere except a short list of low-degree cases."""
    if not (1 <= i < k):
        raise FieldError("need 1 <= i < k")
    if q in (2, 3):
        return k - i >= 2
    if q == 4:
        return (k, i) not in ((2, 1), (3, 2))
    if q == 5:
        return (k, i) != (2, 1)
    return q > 5


@dataclass(frozen=True)
class NotScatteredVerdict:
    guaranteed: bool
    reason: str | None
    ell: int

    @property
    def inconclusive(self) -> bool:
        return not self.guaranteed


def not_scattered_verdict(f: QPoly, i: int, k: int, n: int) -> NotScatteredVerdict:
    """Decide whether the index-0 instance is certainly not scattered.

    f must have shape X^(q^i) + middle + b*X^(q^k) with b != 0 and 1 <= i < k.
    Checks, in order: a kernel of dimension above 1; gcd(k, n) > 1 with
    k <= n/4; the component bound inequality with k <= n/4.  Anything else is
    inconclusive (the instance may or may not be scattered).
    """
    ctx = f.ctx
    if ctx.d != n:
        raise FieldError("n does not match the coefficient field")
    if not (1 <= i < k):
        raise FieldError("need 1 <= i < k")
    sup = f.support()
    if not sup or min(sup) != i or f.qdegree() != k:
        raise FieldError("shape mismatch: support must run from i to k")
    if f.coeff(i) != ctx.one:
        raise FieldError("shape mismatch: lowest coefficient must be 1")
    ell = kernel_dim(f) + i
    if ell - i > 1:
        return NotScatteredVerdict(True, REASON_KERNEL, ell)
    if math.gcd(k, n) > 1 and 4 * k <= n:
        return NotScatteredVerdict(True, REASON_GCD, ell)
    if 4 * k <= n and irreducible_component_inequality(ctx.q, i, k, ell):
        return NotScatteredVerdict(True, REASON_INEQUALITY, ell)
    return NotScatteredVerdict(False, None, ell)


# ---------------------------------------------------------------------------
# Degree-q^2 completion facts.

def pair_product_image(ctx: FieldCtx, ceiling=None) -> set[FFElt]:
    """{u*v^q - v*u^q : u, v nonzero}, computed exhaustively."""
    check_ceiling(ctx.order, ceiling)
    vs = np.arange(1, ctx.order, dtype=np.int64)
    vq = ctx.frob_vec(vs, 1)
    out: set[int] = set()
    for u in range(1, ctx.order):
        uq = ctx.frob_i(u, 1)
        vals = ctx.sub_vec(ctx.mul_vec(np.int64(u), vq), ctx.mul_vec(vs, np.int64(uq)))
        out.update(np.unique(vals).tolist())
    return {FFElt(ctx, v) for v in out}


def find_many_roots_completion(b: FFElt, ceiling=None) -> FFElt | None:
    """First a (canonical order) making X^(q^2) + a*X^q + b*X have a kernel of
    dimension exactly 2.  Requires Norm(b) = 1; returns None if no a works,
    which would contradict the classification and is treated as a test
    failure by callers."""
    ctx = b.ctx
    if gf.norm_rel(b) != ctx.one:
        raise FieldError("precondition: the relative norm of b must be 1")
    check_ceiling(ctx.order, ceiling)
    for a_enc in range(ctx.order):
        f = QPoly(ctx, [b, FFElt(ctx, a_enc), ctx.one])
        if kernel_dim(f) == 2:
            return FFElt(ctx, a_enc)
    return None
