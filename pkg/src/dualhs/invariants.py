"""Hilbert and dual Hilbert coefficients, series numerators, minimal
reductions, superficial elements, and the derived numerical invariants
(Phi, delta, Ulrich and zero-dimensional reports).

All randomized searches are driven by explicit seeds; a draw is retried with
fresh randomness when a verification window rejects it, and every accepted
element ships with the report of the checks that admitted it.
"""

from __future__ import annotations

import random

from .field import Field
from .linalg import SpanBasis, sparse_rank
from .poly import Poly, RingSignature
from .groebner import normal_form
from . import numfun
from .numfun import (FitError, NumericalFunction, SeriesNumerator, binom,
                     fit_value_table, numerator_from_values)
from .rings import (FPModule, FiniteLengthModule, Ideal, QuotientRing,
                    RingError, ideal_layer_flm, is_cohen_macaulay_module,
                    is_mprimary, minimal_presentation, module_length_over,
                    module_truncation_length, quotient_flm, resolution_maps,
                    syzygy_module, truncation_algebra)
from .homology import (dual_hs_value, ext_connecting_injective,
                       ext_dual_value, hom_length)


class HypothesisError(RingError):
    """A stated hypothesis of an operation or claim fails on the instance."""


def _require_mprimary(I: Ideal):
    if not is_mprimary(I.ring, I):
        raise HypothesisError("ideal is not m-primary")


def _require_gorenstein(R: QuotientRing):
    if R.gorenstein is not True:
        raise HypothesisError("ring is not Gorenstein")


def _nmax_cap(d: int, r: int = 0, override: int | None = None) -> int:
    return override if override is not None else 4 * d + 2 * r + 16


# -- coefficient extraction ---------------------------------------------------

class CoefficientData:
    """Fit plus series numerator for one numerical function."""

    __slots__ = ("values", "fit", "numerator", "c", "c0", "c1", "c1_series",
                 "sign_consistent")

    def __init__(self, values, fit: NumericalFunction,
                 numerator: SeriesNumerator, degree: int):
        self.values = tuple(values)
        self.fit = fit
        self.numerator = numerator
        if fit.is_zero:
            self.c = (0,) * (degree + 1)
        else:
            self.c = fit.coefficients_at_degree(degree)
        self.c0 = self.c[0]
        self.c1_series = numerator.derivative_at_one()
        # binomial-basis c1 exists only in positive dimension; the series
        # derivative is the 0-dimensional extension and must agree otherwise
        self.c1 = self.c[1] if degree >= 1 else self.c1_series
        self.sign_consistent = degree == 0 or self.c1 == self.c1_series

    def value_table(self, upto: int):
        return [self.values[n] if n < len(self.values) else self.fit.poly_value(n)
                for n in range(upto + 1)]


def _fit_and_numerator(value_fn, d: int, window=None, nmax=None) -> CoefficientData:
    fit = fit_value_table(value_fn, d, window=window, nmax_cap=nmax)
    values = list(fit.values)
    need = fit.postulation + d + 2
    while len(values) < need + 1:
        values.append(value_fn(len(values)))
    numerator = numerator_from_values(values, d + 1, fit.postulation)
    return CoefficientData(values, fit, numerator, d)


def hilbert_coefficients(M: FPModule, I: Ideal, window=None, nmax=None) -> CoefficientData:
    """Classical Hilbert-Samuel fit of n -> length(M / I^{n+1} M)."""
    _require_mprimary(I)
    d = max(M.ring.dim, 0)
    return _fit_and_numerator(lambda n: module_truncation_length(M, I, n),
                              d, window, nmax)


def dual_hilbert_coefficients(M: FPModule, I: Ideal, window=None, nmax=None,
                              check_mcm: bool = True) -> CoefficientData:
    """Dual Hilbert-Samuel fit of n -> length(Hom(M, R/I^{n+1}))."""
    _require_mprimary(I)
    _require_gorenstein(M.ring)
    if check_mcm and not is_cohen_macaulay_module(M):
        raise HypothesisError("module is not maximal Cohen-Macaulay")
    d = max(M.ring.dim, 0)
    return _fit_and_numerator(lambda n: dual_hs_value(M, I, n), d, window, nmax)


def ext1_dual_function(M: FPModule, I: Ideal, window=None, nmax=None) -> NumericalFunction:
    """Fit of n -> length(Ext^1(M, R/I^{n+1}))."""
    _require_mprimary(I)
    _require_gorenstein(M.ring)
    d = max(M.ring.dim, 0)
    return fit_value_table(lambda n: ext_dual_value(1, M, I, n), d,
                           window=window, nmax_cap=nmax)


# -- reductions ---------------------------------------------------------------

class ReductionData:
    __slots__ = ("ideal", "J", "r", "seed")

    def __init__(self, ideal: Ideal, J: Ideal, r: int, seed):
        self.ideal = ideal
        self.J = J
        self.r = r
        self.seed = seed

    def __repr__(self):
        return f"ReductionData(r={self.r})"


def _random_combination(gens, sig: RingSignature, rng) -> Poly:
    F = sig.field
    while True:
        coeffs = [F.random(rng) for _ in gens]
        if any(c != F.zero for c in coeffs):
            break
    acc = Poly.zero(sig)
    for c, g in zip(coeffs, gens):
        if c != F.zero:
            acc = acc.add(g.scale(c))
    return acc


def _ideal_contained(gens, G) -> bool:
    return all(normal_form(g, G).is_zero for g in gens)


def minimal_reduction(I: Ideal, seed=0, retries: int = 40,
                      r_cap: int = 40) -> ReductionData:
    """J generated by dim R random combinations of I's generators, with the
    least r such that J I^r = I^{r+1}; dimension 0 takes J = (0) and r the
    last power with I^r nonzero."""
    R = I.ring
    _require_mprimary(I)
    d = R.dim
    if d < 0:
        raise HypothesisError("zero ring")
    if d == 0:
        r = 0
        while I.power_gens(r + 1):
            r += 1
            if r > r_cap:
                raise RingError("nilpotency not reached; is the ring Artinian?")
        return ReductionData(I, Ideal(R, []), r, seed)
    rng = random.Random(f"{seed}:reduction")
    for _ in range(retries):
        jgens = [_random_combination(I.gens, R.sig, rng) for _ in range(d)]
        J = Ideal(R, jgens)
        for r in range(r_cap + 1):
            # J I^r = I^{r+1} iff each generator of I^{r+1} lies in J I^r
            prod = [j.mul(p) for j in J.gens for p in I.power_gens(r)]
            from .groebner import buchberger
            G = buchberger(list(R.gens) + prod, R.sig)
            if _ideal_contained(I.power_gens(r + 1), G):
                return ReductionData(I, J, r, seed)
    raise RingError("reduction not found within the retry budget")


# -- superficial elements -----------------------------------------------------

class SuperficialReport:
    __slots__ = ("element", "seed", "window", "checks")

    def __init__(self, element: Poly, seed, window: int, checks):
        self.element = element
        self.seed = seed
        self.window = window
        self.checks = checks  # list of dicts, each labels one verified window

    def __repr__(self):
        return f"SuperficialReport({self.element}, checks={len(self.checks)})"


class _LayerContext:
    """x-independent data for the graded-layer test on one module: the chain
    W_t = image of I^t M inside Q = M / I^upto M, and relative bases of the
    layers W_t / W_{t+1}."""

    def __init__(self, M: FPModule, I: Ideal, upto: int):
        Q, _, _, _ = quotient_flm(M, I, upto)
        F = M.ring.field
        self.Q = Q
        spans = []
        W0 = SpanBasis(F)
        rows = [{a: F.one} for a in range(Q.dim)]
        for r in rows:
            W0.add(dict(r))
        spans.append(W0)
        current = rows
        for _ in range(1, upto):
            sp = SpanBasis(F)
            nxt = []
            for w in current:
                for g in I.gens:
                    img = Q.apply_poly_vec(g, w)
                    if img and sp.add(img):
                        nxt.append(img)
            spans.append(sp)
            current = nxt
        self.spans = spans
        self.reps = []
        for t in range(upto - 1):
            rel = SpanBasis(F)
            for row in spans[t + 1].pivot_rows.values():
                rel.add(dict(row))
            reps_t = []
            for p in sorted(spans[t].pivot_rows):
                row = dict(spans[t].pivot_rows[p])
                if rel.add(row):
                    reps_t.append(row)
            self.reps.append(reps_t)

    def flags(self, x: Poly):
        F = self.Q.field
        out = []
        for t in range(len(self.reps) - 1):
            target = SpanBasis(F)
            for row in self.spans[t + 2].pivot_rows.values():
                target.add(dict(row))
            ok = True
            for rep in self.reps[t]:
                img = self.Q.apply_poly_vec(x, rep)
                if not target.add(img):
                    ok = False
                    break
            out.append(ok)
        return out


class _ExtContext:
    """x-independent data for one Ext^level connecting-map window check.

    Stores homology representatives: kernel vectors of the next induced map
    that enlarge the image span.  The connecting map is injective exactly
    when the x-images of the representatives stay independent modulo the
    image at the next truncation.
    """

    def __init__(self, M: FPModule, I: Ideal, level: int, n: int):
        from .homology import induced_map_columns
        from .linalg import sparse_kernel
        R = M.ring
        F = R.field
        self.trivial = False
        N = truncation_algebra(R, I, n)
        N2 = truncation_algebra(R, I, n + 1)
        maps = resolution_maps(M, level + 1)
        d_lvl, d_next = maps[level - 1], maps[level]
        q_lvl = len(d_lvl[0]) if d_lvl and d_lvl[0] else 0
        if N.dim == 0 or q_lvl == 0:
            self.trivial = True
            return
        cols_next = induced_map_columns(d_next, N) if d_next else []
        if cols_next:
            K = sparse_kernel(F, cols_next)
        else:
            K = [{t: F.one} for t in range(q_lvl * N.dim)]
        span_im = SpanBasis(F)
        for col in induced_map_columns(d_lvl, N):
            span_im.add(col)
        probe = span_im.clone()
        self.reps = [v for v in K if probe.add(v)]
        if not self.reps:
            self.trivial = True
            return
        self.N, self.N2, self.F = N, N2, F
        span_im2 = SpanBasis(F)
        for col in induced_map_columns(d_lvl, N2):
            span_im2.add(col)
        self.span_im2 = span_im2

    def injective(self, x: Poly) -> bool:
        if self.trivial:
            return True
        F, N, N2 = self.F, self.N, self.N2
        x_cols = []
        for b in range(N.dim):
            prod = x.mul_term(N.monos[b], F.one)
            rem = normal_form(prod, N2.gb)
            x_cols.append({N2.mono_index[m]: c for m, c in rem.terms})
        span = self.span_im2.clone()
        for rep in self.reps:
            out = {}
            for flat, c in rep.items():
                i, b = divmod(flat, N.dim)
                for k2, c2 in x_cols[b].items():
                    key = i * N2.dim + k2
                    nv = F.add(out.get(key, F.zero), F.mul(c, c2))
                    if nv == F.zero:
                        out.pop(key, None)
                    else:
                        out[key] = nv
            if not span.add(out):
                return False
        return True


def superficial_element(I: Ideal, protected, seed=0, window: int = 6,
                        retries: int = 25, c_cap: int = 4, count: int = 1):
    """A random combination of I's generators whose initial form acts
    injectively on the graded layers of every protected module (window
    checked, with the threshold c detected), and whose connecting maps on
    Ext^1 and Ext^2 are injective along the window.

    Returns (x, SuperficialReport), or a list of `count` distinct accepted
    pairs when count > 1 (the expensive x-independent data is shared).  All
    checks are labelled window-verified: they certify the inspected range,
    not the asymptotic statement.
    """
    R = I.ring
    if R.dim < 1:
        raise HypothesisError("no superficial element needed in dimension 0")
    _require_mprimary(I)
    rng = random.Random(f"{seed}:superficial")
    upto = c_cap + window + 3
    accepted = []
    accepted_keys = set()
    mods = []
    for m in protected:
        Mp = m if isinstance(m, FPModule) else R.free_module(1)
        Mp = minimal_presentation(Mp)[0]
        if Mp.rank1 == 0:
            Mp = R.free_module(Mp.rank0)
        mods.append(Mp)
    if not any(Mp.rank1 == 0 and Mp.rank0 == 1 for Mp in mods):
        mods.insert(0, R.free_module(1))  # the ring itself is always protected
    # everything below except the final per-draw checks is x-independent;
    # cache it on the ring so repeated searches share the setup
    cache_key = (I.key, window, c_cap, tuple(id(Mp) for Mp in mods))
    cached = R._sup_cache.get(cache_key)
    if cached is None:
        layer_ctx = [_LayerContext(Mp, I, upto) for Mp in mods]
        ext_ctx = {}
        for idx, Mp in enumerate(mods):
            if Mp.rank1 == 0:
                continue
            for level in (1, 2):
                ext_ctx[(idx, level)] = [_ExtContext(Mp, I, level, n)
                                         for n in range(1, c_cap + window + 2)]
        from .groebner import buchberger
        i2_gb = buchberger(list(R.gens) + I.power_gens(2), R.sig)
        cached = (layer_ctx, ext_ctx, i2_gb)
        R._sup_cache[cache_key] = cached
    layer_ctx, ext_ctx, i2_gb = cached
    last_failure = "no draws attempted"
    for _ in range(retries):
        x = _random_combination(I.gens, R.sig, rng)
        if x.terms in accepted_keys:
            continue
        # the initial form must have degree one: x in I \ I^2
        if normal_form(x, i2_gb).is_zero:
            last_failure = "drawn element fell into I^2"
            continue
        checks = []
        ok = True
        for idx, Mp in enumerate(mods):
            flags = layer_ctx[idx].flags(x)
            c = _detect_threshold(flags, window, c_cap)
            if c is None:
                ok = False
                last_failure = "graded layer window failed"
                break
            checks.append({"name": "layer-injectivity", "module": repr(Mp),
                           "c": c, "window": window, "status": "window-verified"})
            if Mp.rank1 == 0:
                continue
            for level in (1, 2):
                flags_ext = [ctx.injective(x) for ctx in ext_ctx[(idx, level)]]
                n0 = _detect_threshold(flags_ext, window, c_cap)
                if n0 is None:
                    ok = False
                    last_failure = f"Ext^{level} connecting window failed"
                    break
                checks.append({"name": f"ext{level}-connecting-injective",
                               "module": repr(Mp), "n0": n0 + 1,
                               "window": window, "status": "window-verified"})
            if not ok:
                break
        if ok:
            accepted.append((x, SuperficialReport(x, seed, window, checks)))
            accepted_keys.add(x.terms)
            if len(accepted) >= count:
                return accepted[0] if count == 1 else accepted
    raise RingError(f"superficial element not found: {last_failure}")


def _detect_threshold(flags, window: int, c_cap: int):
    """Least c <= c_cap with flags true on [c, c+window] (clamped to range)."""
    for c in range(min(c_cap, len(flags)) + 1):
        tail = flags[c:c + window + 1]
        if tail and all(tail):
            return c
    return None


def quotient_instance(R: QuotientRing, I: Ideal, M: FPModule, x: Poly):
    """(R/(x), I/(x), M/xM) with the module re-presented over the quotient."""
    R2 = QuotientRing(R.sig, list(R.gens) + [x])
    I2 = Ideal(R2, list(I.gens))
    M2 = FPModule(R2, M.rank0, M.pres)
    return R2, I2, M2


# -- exact regularity certificates (associated graded module route) -----------

def element_regular_on_ring(R: QuotientRing, x: Poly) -> bool:
    """Exact check that x is a nonzerodivisor on R, via the colon syzygy."""
    from .groebner import syzygy_matrix
    x = R.nf(x)
    if x.is_zero:
        return False
    B = syzygy_matrix(((x,),), R.gb, R.sig).syzygies
    return not (B and B[0])


def module_generated_in_single_degree(M: FPModule) -> bool:
    """Graded with all generators in one degree: every presentation column is
    entrywise of a single total degree."""
    if not M.ring.graded:
        return False
    for j in range(M.rank1):
        degs = {M.pres[i][j].total_degree()
                for i in range(M.rank0) if not M.pres[i][j].is_zero}
        if len(degs) > 1:
            return False
    return True


def element_regular_on_module(M: FPModule, x: Poly) -> bool:
    """Exact check that x is a nonzerodivisor on M = coker(pres): the colon
    (0 : x) is computed by a syzygy run and membership against the relations."""
    from .groebner import module_groebner, syzygy_matrix, vec_from_polys
    R = M.ring
    sig = R.sig
    x = R.nf(x)
    if M.rank0 == 0:
        return True
    if x.is_zero:
        return False
    zero = Poly.zero(sig)
    stacked_cols = []
    for i in range(M.rank0):
        col = [zero] * M.rank0
        col[i] = x
        stacked_cols.append(col)
    for j in range(M.rank1):
        stacked_cols.append([M.pres[i][j] for i in range(M.rank0)])
    A = tuple(tuple(stacked_cols[j][i] for j in range(len(stacked_cols)))
              for i in range(M.rank0))
    B = syzygy_matrix(A, R.gb, sig).syzygies
    ncols = len(B[0]) if B else 0
    if ncols == 0:
        return True
    rel_cols = [[M.pres[i][j] for i in range(M.rank0)] for j in range(M.rank1)]
    jblock = []
    for g in R.gens:
        for posn in range(M.rank0):
            vec = [zero] * M.rank0
            vec[posn] = g
            jblock.append(vec)
    G = module_groebner(rel_cols + jblock, sig, M.rank0)
    for jcol in range(ncols):
        v = [B[i][jcol] for i in range(M.rank0)]
        if any(not p.is_zero for p in v):
            if G.normal_form_vec(vec_from_polys(v)):
                return False
    return True


def initial_form_regular_element(M: FPModule, seed=0, retries: int = 30):
    """A linear form whose initial form is regular on the associated graded
    of R and of Syz^1(M) at the maximal ideal — certified exactly.

    Works over standard graded rings for syzygies generated in a single
    degree, where the associated graded module is the module itself;
    raises HypothesisError when that identification is unavailable.
    """
    R = M.ring
    if not R.graded or R.dim < 1:
        raise HypothesisError("initial-form regularity needs a graded ring of positive dimension")
    Mmin, _ = minimal_presentation(M)
    L = syzygy_module(Mmin)
    if L.rank0 > 0 and not module_generated_in_single_degree(L):
        raise HypothesisError("syzygy module is not generated in a single degree")
    m = R.maximal_ideal()
    rng = random.Random(f"{seed}:initialform")
    for _ in range(retries):
        x = _random_combination(m.gens, R.sig, rng)
        if not element_regular_on_ring(R, x):
            continue
        if L.rank0 > 0 and not element_regular_on_module(L, x):
            continue
        return x, L
    raise RingError("no certified regular linear form found")


# -- Phi, delta, Ulrich, 0-dimensional reports --------------------------------

def phi(M: FPModule, I: Ideal, r: int) -> int:
    """Sum over 0 <= j <= d, j <= n <= r-1 of binom(d, j) times the length of
    Ext^j(M, R/I^{n+1-j}); terms with n < j vanish and are skipped."""
    _require_mprimary(I)
    _require_gorenstein(M.ring)
    if r < 0:
        raise HypothesisError("negative reduction number")
    d = max(M.ring.dim, 0)
    total = 0
    for j in range(d + 1):
        for n in range(j, r):
            total += binom(d, j) * ext_dual_value(j, M, I, n - j)
    return total


def dual_hilbert_function_delta(M: FPModule, I: Ideal, n: int) -> int:
    """length Hom(M, I^n/I^{n+1}) — the layerwise dual Hilbert function."""
    _require_mprimary(I)
    _require_gorenstein(M.ring)
    return hom_length(M, ideal_layer_flm(M.ring, I, n))


def ulrich_check(M: FPModule, seed=0) -> bool:
    """Ulrich: multiplicity equals minimal number of generators; the
    reduction route (m M = J M) is computed too and must agree."""
    R = M.ring
    m = R.maximal_ideal()
    Mmin, mu = minimal_presentation(M)
    if not is_cohen_macaulay_module(Mmin):
        raise HypothesisError("module is not maximal Cohen-Macaulay")
    if R.dim == 0:
        e0 = module_length_over(Mmin, R.artinian_flm())
        l_mm = module_truncation_length(Mmin, m, 0)
        route1 = e0 == mu
        route2 = e0 == l_mm  # mM = 0 iff M has full length mu
    else:
        fit = hilbert_coefficients(Mmin, m)
        e0 = fit.c0
        route1 = e0 == mu
        red = minimal_reduction(m, seed=seed)
        T = truncation_algebra(R, red.J, 1)
        route2 = module_length_over(Mmin, T) == mu
    if route1 != route2:
        raise RingError("Ulrich routes disagree; raise the retry budget")
    return route1


class ZeroDimReport:
    __slots__ = ("r", "e0", "alpha", "c1", "cross_c0", "cross_c1")

    def __init__(self, r, e0, alpha, c1, cross_c0, cross_c1):
        self.r = r
        self.e0 = e0
        self.alpha = tuple(alpha)
        self.c1 = c1
        self.cross_c0 = cross_c0
        self.cross_c1 = cross_c1


def zero_dim_report(S: QuotientRing, N: FPModule) -> ZeroDimReport:
    """r, e0 = length(N), alpha_n = length Hom(N, S/n^{n+1}) for n < r, and
    c1 = r e0 - sum alpha; cross-checked against the series-numerator route."""
    if S.dim != 0:
        raise HypothesisError("ring is not Artinian")
    if S.artinian_flm().socle_dimension() != 1:
        raise HypothesisError("ring is not Gorenstein")
    n_ideal = S.maximal_ideal()
    red = minimal_reduction(n_ideal)
    r = red.r
    e0 = module_length_over(N, S.artinian_flm())
    alpha = [hom_length(N, truncation_algebra(S, n_ideal, t + 1))
             for t in range(r)]
    c1 = r * e0 - sum(alpha)
    data = dual_hilbert_coefficients(N, n_ideal)
    return ZeroDimReport(r, e0, alpha, c1, data.c0 == e0, data.c1 == c1)
