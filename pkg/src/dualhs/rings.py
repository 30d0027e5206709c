"""Quotient rings R = P/J, finitely presented R-modules, and Artinian
truncations carried as explicit finite-length modules with multiplication
operators.

Two ring regimes are supported: graded quotients of polynomial rings
(lengths at the irrelevant maximal ideal), and Artinian quotients
(automatically local).  Non-graded positive-dimensional rings are rejected
by the operations that would need local standard bases.
"""

from __future__ import annotations

import random
from itertools import combinations

from .field import Field
from .linalg import Matrix, SpanBasis, sparse_rank
from .poly import Poly, RingSignature, mono_deg, mono_divides, mono_mul
from .groebner import (GroebnerBasis, buchberger, ideal_power, normal_form,
                       syzygy_matrix)
from . import numfun


class RingError(ValueError):
    pass


def _support(mono):
    return frozenset(i for i, e in enumerate(mono) if e)


def staircase_dimension(leading_monos, nvars: int) -> int:
    """Krull dimension of P/(monomial ideal): the largest variable subset S
    such that no generator is supported inside S.  Unit ideal gives -1."""
    supports = [_support(m) for m in leading_monos]
    if frozenset() in supports:
        return -1
    for size in range(nvars, 0, -1):
        for S in combinations(range(nvars), size):
            Sset = frozenset(S)
            if not any(sup <= Sset for sup in supports):
                return size
    return 0


def standard_monomials(gb: GroebnerBasis, sig: RingSignature, cap: int = 500000):
    """Monomials outside the leading-term ideal, sorted by the ring order.
    Returns None when the staircase is infinite."""
    lms = [lt[1] for lt in gb.lts]
    zero = (0,) * sig.nvars
    if any(m == zero for m in lms):
        return []
    if staircase_dimension(lms, sig.nvars) > 0:
        return None
    out = []
    seen = {zero}
    queue = [zero]
    while queue:
        m = queue.pop()
        if any(mono_divides(lm, m) for lm in lms):
            continue
        out.append(m)
        if len(out) > cap:
            return None
        for v in range(sig.nvars):
            child = tuple(e + (1 if i == v else 0) for i, e in enumerate(m))
            if child not in seen:
                seen.add(child)
                queue.append(child)
    out.sort(key=sig.key)
    return out


class FiniteLengthModule:
    """Explicit k-basis with one multiplication operator per ring variable.

    When the module is a quotient algebra R/H it also carries the standard
    monomial basis and the Groebner basis H, so polynomial action can go
    through normal forms instead of operator products.
    """

    __slots__ = ("field", "nvars", "labels", "dim", "opcols", "unit_index",
                 "monos", "mono_index", "gb", "sig")

    def __init__(self, field: Field, nvars: int, labels, opcols,
                 unit_index=None, monos=None, gb=None, sig=None):
        self.field = field
        self.nvars = nvars
        self.labels = tuple(labels)
        self.dim = len(self.labels)
        self.opcols = opcols  # opcols[v][b] = sparse column dict
        self.unit_index = unit_index
        self.monos = monos
        self.mono_index = {m: i for i, m in enumerate(monos)} if monos else None
        self.gb = gb
        self.sig = sig

    @classmethod
    def zero(cls, field, nvars):
        return cls(field, nvars, (), tuple(() for _ in range(nvars)))

    @property
    def is_algebra(self) -> bool:
        return self.monos is not None

    def apply_var(self, v: int, vec: dict) -> dict:
        F = self.field
        out: dict = {}
        cols = self.opcols[v]
        for b, c in vec.items():
            for k, a in cols[b].items():
                nv = F.add(out.get(k, F.zero), F.mul(c, a))
                if nv == F.zero:
                    out.pop(k, None)
                else:
                    out[k] = nv
        return out

    def apply_poly_vec(self, p: Poly, vec: dict) -> dict:
        F = self.field
        out: dict = {}
        for m, c in p.terms:
            w = vec
            for v, e in enumerate(m):
                for _ in range(e):
                    w = self.apply_var(v, w)
            for k, a in w.items():
                nv = F.add(out.get(k, F.zero), F.mul(c, a))
                if nv == F.zero:
                    out.pop(k, None)
                else:
                    out[k] = nv
        return out

    def apply_poly_basis(self, p: Poly, b: int) -> dict:
        """Action of a ring element on the b-th basis vector."""
        if self.is_algebra:
            prod = p.mul_term(self.monos[b], self.sig.field.one)
            rem = normal_form(prod, self.gb)
            return {self.mono_index[m]: c for m, c in rem.terms}
        return self.apply_poly_vec(p, {b: self.field.one})

    def mult_matrix(self, v: int) -> Matrix:
        F = self.field
        rows = [[F.zero] * self.dim for _ in range(self.dim)]
        for b, col in enumerate(self.opcols[v]):
            for k, a in col.items():
                rows[k][b] = a
        return Matrix(F, rows)

    def poly_matrix(self, p: Poly) -> Matrix:
        """Dense evaluation of p at the multiplication operators."""
        F = self.field
        acc = Matrix.zero(F, self.dim, self.dim)
        eye = Matrix.identity(F, self.dim)
        mats = [self.mult_matrix(v) for v in range(self.nvars)]
        for m, c in p.terms:
            term = eye
            for v, e in enumerate(m):
                for _ in range(e):
                    term = mats[v].matmul(term)
            acc = acc.add(term.scale(c))
        return acc

    def socle_dimension(self) -> int:
        """Dimension of the annihilator of the maximal ideal."""
        vectors = []
        for b in range(self.dim):
            stacked = {}
            for v in range(self.nvars):
                for k, a in self.opcols[v][b].items():
                    stacked[v * self.dim + k] = a
            vectors.append(stacked)
        # socle = kernel of b -> (x_1 b, ..., x_n b)
        return self.dim - sparse_rank(self.field, vectors)

    def radical_power_dims(self, upto: int):
        """Dimensions of m^k * self for k = 0..upto."""
        F = self.field
        dims = [self.dim]
        current = [{b: F.one} for b in range(self.dim)]
        for _ in range(upto):
            span = SpanBasis(F)
            nxt = []
            for w in current:
                for v in range(self.nvars):
                    img = self.apply_var(v, w)
                    if img and span.add(img):
                        nxt.append(img)
            dims.append(span.dim)
            current = nxt
            if not nxt:
                dims.extend([0] * (upto - len(dims) + 1))
                break
        return dims[:upto + 1]


class QuotientRing:
    """R = P/J with its reduced defining basis, dimension and grading data."""

    def __init__(self, sig: RingSignature, gens):
        self.sig = sig
        self.gens = tuple(g for g in gens if not g.is_zero)
        self.gb = buchberger(list(self.gens), sig)
        lms = [lt[1] for lt in self.gb.lts]
        self.dim = staircase_dimension(lms, sig.nvars) if self.gb.vecs else sig.nvars
        self.graded = all(g.is_homogeneous() for g in self.gens)
        self._gorenstein = "unset"
        self._power_gb: dict = {}
        self._trunc: dict = {}
        self._artinian_flm = None
        self._free_modules: dict = {}
        self._sup_cache: dict = {}

    @property
    def field(self) -> Field:
        return self.sig.field

    def nf(self, p: Poly) -> Poly:
        if not self.gb.vecs:
            return p
        return normal_form(p, self.gb)

    def try_invert(self, p: Poly):
        """Inverse of p, or None.  Nonzero constants invert in the field;
        Artinian elements are inverted by solving u*w = 1 in the algebra
        (the honest test: Artinian quotients need not be local)."""
        p = self.nf(p)
        if p.is_zero:
            return None
        if p.total_degree() == 0:
            return Poly.const(self.sig, self.field.inv(p.constant_coeff()))
        if self.dim != 0:
            return None
        key = p.terms
        if key in self._inv_cache:
            return self._inv_cache[key]
        T = self.artinian_flm()
        cols = [T.apply_poly_basis(p, b) for b in range(T.dim)]
        F = self.field
        A = Matrix(F, [[cols[b].get(k, F.zero) for b in range(T.dim)]
                       for k in range(T.dim)])
        e1 = [F.one if k == T.unit_index else F.zero for k in range(T.dim)]
        from .linalg import solve
        w = solve(A, e1)
        result = None if w is None else Poly.from_dict(
            self.sig, {T.monos[b]: c for b, c in enumerate(w) if c != F.zero})
        self._inv_cache[key] = result
        return result

    def is_unit(self, p: Poly) -> bool:
        return self.try_invert(p) is not None

    def invert(self, p: Poly) -> Poly:
        w = self.try_invert(p)
        if w is None:
            raise RingError(f"{p} is not invertible")
        return w

    def is_artinian_local(self) -> bool:
        """Artinian with the variables nilpotent (support at the origin)."""
        if self.dim != 0:
            return False
        if self._artinian_local is None:
            dims = self.artinian_flm().radical_power_dims(
                self.artinian_flm().dim + 1)
            self._artinian_local = dims[-1] == 0
        return self._artinian_local

    def artinian_flm(self) -> FiniteLengthModule:
        if self.dim != 0:
            raise RingError("ring is not Artinian")
        if self._artinian_flm is None:
            self._artinian_flm = _algebra_flm(self, self.gb)
        return self._artinian_flm

    def maximal_ideal(self) -> "Ideal":
        return Ideal(self, [Poly.variable(self.sig, i)
                            for i in range(self.sig.nvars)])

    def free_module(self, rank: int) -> "FPModule":
        """Session-cached free modules, so caches keyed by identity hit."""
        if rank not in self._free_modules:
            self._free_modules[rank] = FPModule.free(self, rank)
        return self._free_modules[rank]

    def power_gb(self, I: "Ideal", n: int) -> GroebnerBasis:
        key = (I.key, n)
        if key not in self._power_gb:
            gens = list(self.gens) + I.power_gens(n)
            self._power_gb[key] = buchberger(gens, self.sig)
        return self._power_gb[key]

    @property
    def gorenstein(self):
        """True / False / None (undetermined for non-graded positive dim)."""
        if self._gorenstein == "unset":
            self._gorenstein = self._compute_gorenstein()
        return self._gorenstein

    def _compute_gorenstein(self):
        if self.dim < 0:
            return False
        if self.dim == 0:
            return self.artinian_flm().socle_dimension() == 1
        if not self.graded:
            return None
        R_mod = FPModule.free(self, 1)
        if not is_cohen_macaulay_module(R_mod):
            return False
        rng = random.Random("gorenstein:0")
        for _ in range(25):
            theta = [_random_linear_form(self.sig, rng) for _ in range(self.dim)]
            art = QuotientRing(self.sig, list(self.gens) + theta)
            if art.dim != 0:
                continue
            return art.artinian_flm().socle_dimension() == 1
        raise RingError("could not find a linear system of parameters")

    def __repr__(self):
        rels = ", ".join(str(g) for g in self.gens) or "0"
        return f"QuotientRing({self.sig!r} / ({rels}))"


def _random_linear_form(sig: RingSignature, rng) -> Poly:
    F = sig.field
    while True:
        coeffs = [F.random(rng) for _ in range(sig.nvars)]
        if any(c != F.zero for c in coeffs):
            break
    d = {}
    for i, c in enumerate(coeffs):
        if c != F.zero:
            mono = tuple(1 if j == i else 0 for j in range(sig.nvars))
            d[mono] = c
    return Poly.from_dict(sig, d)


def make_quotient_ring(sig: RingSignature, gens) -> QuotientRing:
    return QuotientRing(sig, gens)


class Ideal:
    """An ideal of a QuotientRing, kept as normal-form generators."""

    __slots__ = ("ring", "gens", "key", "_powers", "_mprimary")

    def __init__(self, ring: QuotientRing, gens):
        self.ring = ring
        seen = set()
        cleaned = []
        for g in gens:
            g = ring.nf(g)
            if g.is_zero or g.terms in seen:
                continue
            seen.add(g.terms)
            cleaned.append(g)
        cleaned.sort(key=lambda p: (ring.sig.key(p.leading_mono()), p.terms))
        self.gens = tuple(cleaned)
        self.key = tuple(p.terms for p in self.gens)
        self._powers: dict = {}
        self._mprimary = None

    def power_gens(self, n: int):
        if n not in self._powers:
            raw = ideal_power(list(self.gens), n, self.ring.sig)
            seen = set()
            out = []
            for p in raw:
                p = self.ring.nf(p)
                if p.is_zero or p.terms in seen:
                    continue
                seen.add(p.terms)
                out.append(p)
            if not out and n <= 0:
                out = [Poly.one(self.ring.sig)]
            self._powers[n] = out
        return list(self._powers[n])

    def contains(self, p: Poly) -> bool:
        G = self.ring.power_gb(self, 1)
        return normal_form(p, G).is_zero

    def __repr__(self):
        return f"Ideal({', '.join(str(g) for g in self.gens)})"


def is_mprimary(R: QuotientRing, I: Ideal) -> bool:
    """True when R/(I+J) is finite dimensional (each variable nilpotent)."""
    if I._mprimary is None:
        G = R.power_gb(I, 1)
        monos = standard_monomials(G, R.sig)
        I._mprimary = monos is not None
    return I._mprimary


def _algebra_flm(R: QuotientRing, H: GroebnerBasis) -> FiniteLengthModule:
    sig = R.sig
    monos = standard_monomials(H, sig)
    if monos is None:
        raise RingError("quotient is not finite dimensional")
    index = {m: i for i, m in enumerate(monos)}
    opcols = []
    for v in range(sig.nvars):
        cols = []
        for b in monos:
            prod = Poly.variable(sig, v).mul_term(b, sig.field.one)
            rem = normal_form(prod, H)
            cols.append({index[m]: c for m, c in rem.terms})
        opcols.append(tuple(cols))
    labels = tuple(sig.mono_str(m) for m in monos)
    return FiniteLengthModule(sig.field, sig.nvars, labels, tuple(opcols),
                              unit_index=index.get((0,) * sig.nvars),
                              monos=tuple(monos), gb=H, sig=sig)


def truncation_algebra(R: QuotientRing, I: Ideal, n: int) -> FiniteLengthModule:
    """The algebra R/I^n as a finite-length module; n <= 0 gives 0."""
    if n <= 0:
        return FiniteLengthModule.zero(R.field, R.sig.nvars)
    if not is_mprimary(R, I):
        raise RingError("ideal is not m-primary")
    key = (I.key, n)
    if key not in R._trunc:
        R._trunc[key] = _algebra_flm(R, R.power_gb(I, n))
    return R._trunc[key]


class FPModule:
    """Finitely presented module M = coker(A) with A stored row-major,
    entries in normal form modulo the defining ideal."""

    def __init__(self, ring: QuotientRing, rank0: int, pres_rows):
        self.ring = ring
        self.rank0 = rank0
        rows = [tuple(ring.nf(p) for p in r) for r in pres_rows]
        ncols = len(rows[0]) if rows else 0
        keep = [j for j in range(ncols)
                if any(not rows[i][j].is_zero for i in range(rank0))]
        self.pres = tuple(tuple(r[j] for j in keep) for r in rows)
        self.rank1 = len(keep)
        self.embedding = None  # optional concrete generators in an ambient R^k
        self._minimal = None
        self._mu = None
        self._res: list | None = None
        self._is_cm = None
        self._hs_cache: dict = {}
        self._dual_cache: dict = {}

    @classmethod
    def free(cls, ring: QuotientRing, s: int) -> "FPModule":
        return cls(ring, s, tuple(() for _ in range(s)))

    @property
    def is_zero_module(self) -> bool:
        return self.rank0 == 0

    def columns(self):
        return [tuple(self.pres[i][j] for i in range(self.rank0))
                for j in range(self.rank1)]

    def column_vecs(self):
        cols = []
        for j in range(self.rank1):
            d = {}
            for i in range(self.rank0):
                for m, c in self.pres[i][j].terms:
                    d[(i, m)] = c
            cols.append(d)
        return cols

    def __repr__(self):
        return f"FPModule(rank0={self.rank0}, rank1={self.rank1})"


def submodule_presentation(R: QuotientRing, generators) -> FPModule:
    """Present the submodule of R^k generated by the given vectors."""
    gens = [tuple(R.nf(p) for p in g) for g in generators]
    if not gens:
        raise RingError("empty generator list")
    k = len(gens[0])
    if any(len(g) != k for g in gens):
        raise RingError("generators live in different free modules")
    A = tuple(tuple(gens[j][i] for j in range(len(gens))) for i in range(k))
    B = syzygy_matrix(A, R.gb, R.sig).syzygies
    M = FPModule(R, len(gens), B)
    M.embedding = gens
    return M


def _presentation_is_homogeneous(M: FPModule) -> bool:
    return all(p.is_homogeneous() for row in M.pres for p in row)


def minimal_presentation(M: FPModule):
    """Eliminate unit entries; returns (minimal module, mu).

    Graded regime: units are the nonzero degree-0 entries; Artinian regime:
    entries with nonzero constant term.  Anything else is rejected.
    """
    if M._minimal is not None:
        return M._minimal, M._mu
    R = M.ring
    if R.dim > 0:
        if not R.graded or not _presentation_is_homogeneous(M):
            raise RingError("minimal presentation needs a graded or Artinian setting")
    grid = [list(row) for row in M.pres]
    alive_rows = list(range(M.rank0))
    alive_cols = list(range(M.rank1))

    def find_unit():
        for i in alive_rows:
            for j in alive_cols:
                if R.is_unit(grid[i][j]):
                    return i, j
        return None

    while True:
        hit = find_unit()
        if hit is None:
            break
        i, j = hit
        uinv = R.invert(grid[i][j])
        for i2 in alive_rows:
            if i2 == i:
                continue
            factor = grid[i2][j].mul(uinv)
            if factor.is_zero:
                continue
            for j2 in alive_cols:
                if j2 == j:
                    continue
                grid[i2][j2] = R.nf(grid[i2][j2].sub(factor.mul(grid[i][j2])))
        alive_rows.remove(i)
        alive_cols.remove(j)
    kept_rows = list(alive_rows)
    pres = tuple(tuple(grid[i][j] for j in alive_cols) for i in kept_rows)
    pres = _prune_columns(pres, R)
    out = FPModule(R, len(kept_rows), pres)
    out._kept_rows = kept_rows
    out._minimal = out
    out._mu = len(kept_rows)
    M._minimal = out
    M._mu = len(kept_rows)
    return out, M._mu


def syzygy_module(M: FPModule) -> FPModule:
    """First syzygy of M: generated by the columns of a minimal presentation,
    presented by their relations, minimally."""
    Mmin, _ = minimal_presentation(M)
    if Mmin.rank1 == 0:
        return FPModule(M.ring, 0, ())
    B = syzygy_matrix(Mmin.pres, M.ring.gb, M.ring.sig).syzygies
    L = FPModule(M.ring, Mmin.rank1, B)
    L.embedding = Mmin.columns()
    Lmin, _ = minimal_presentation(L)
    if L.embedding is not None and hasattr(Lmin, "_kept_rows"):
        Lmin.embedding = [L.embedding[i] for i in Lmin._kept_rows]
    return Lmin


def module_length_over(M: FPModule, T: FiniteLengthModule) -> int:
    """Length of M tensored down to the finite algebra T = R/H."""
    if T.dim == 0 or M.rank0 == 0:
        return 0
    if M.rank1 == 0:
        return M.rank0 * T.dim
    vectors = []
    for j in range(M.rank1):
        col = [M.pres[i][j] for i in range(M.rank0)]
        for b in range(T.dim):
            vec = {}
            for i, entry in enumerate(col):
                if entry.is_zero:
                    continue
                for k, c in T.apply_poly_basis(entry, b).items():
                    vec[i * T.dim + k] = c
            if vec:
                vectors.append(vec)
    return M.rank0 * T.dim - sparse_rank(M.ring.field, vectors)


def module_truncation_length(M: FPModule, I: Ideal, n: int) -> int:
    """The Hilbert-Samuel value: length of M / I^{n+1} M."""
    key = (I.key, n)
    if key not in M._hs_cache:
        T = truncation_algebra(M.ring, I, n + 1)
        M._hs_cache[key] = module_length_over(M, T)
    return M._hs_cache[key]


def quotient_flm(M: FPModule, I: Ideal, upto: int):
    """M / I^upto M with explicit coordinates.

    Returns (flm, span, T, free_index) where span is the echelon basis of the
    relation image inside T^rank0 and free_index maps surviving ambient
    coordinates (i * dim T + basis) to quotient coordinates.
    """
    R = M.ring
    T = truncation_algebra(R, I, upto)
    F = R.field
    lT = T.dim
    span = SpanBasis(F)
    for j in range(M.rank1):
        col = [M.pres[i][j] for i in range(M.rank0)]
        for b in range(lT):
            vec = {}
            for i, entry in enumerate(col):
                if entry.is_zero:
                    continue
                for k, c in T.apply_poly_basis(entry, b).items():
                    vec[i * lT + k] = c
            if vec:
                span.add(vec)
    pivots = set(span.pivot_rows)
    free = [t for t in range(M.rank0 * lT) if t not in pivots]
    pos = {t: a for a, t in enumerate(free)}

    def project(ambient: dict) -> dict:
        red = span.reduce(ambient)
        return {pos[t]: c for t, c in red.items()}

    opcols = []
    for v in range(R.sig.nvars):
        cols = []
        for t in free:
            i, b = divmod(t, lT)
            img = T.apply_var(v, {b: F.one})
            ambient = {i * lT + k: c for k, c in img.items()}
            cols.append(project(ambient))
        opcols.append(tuple(cols))
    labels = tuple(f"g{t // lT}.{T.labels[t % lT]}" for t in free)
    flm = FiniteLengthModule(F, R.sig.nvars, labels, tuple(opcols))
    return flm, span, T, pos


def module_flm(M: FPModule) -> FiniteLengthModule:
    """An Artinian module as an explicit finite-length module."""
    R = M.ring
    if R.dim != 0:
        raise RingError("module_flm needs an Artinian ring")
    if M.rank0 == 0:
        return FiniteLengthModule.zero(R.field, R.sig.nvars)
    flm, _, _, _ = quotient_flm(M, R.maximal_ideal(), _nilpotency_bound(R))
    return flm


def _nilpotency_bound(R: QuotientRing) -> int:
    """Least t with m^t = 0 in an Artinian R (deg, not staircase height:
    non-graded relations can reduce high powers to nonzero elements)."""
    T = R.artinian_flm()
    dims = T.radical_power_dims(T.dim + 1)
    for t, dt in enumerate(dims):
        if dt == 0:
            return t
    raise RingError("maximal ideal is not nilpotent")


def ideal_layer_flm(R: QuotientRing, I: Ideal, n: int) -> FiniteLengthModule:
    """The layer I^n / I^{n+1} as a finite-length module (n = 0 gives R/I)."""
    if n <= 0:
        return truncation_algebra(R, I, 1)
    T = truncation_algebra(R, I, n + 1)
    F = R.field
    span = SpanBasis(F)
    for g in I.power_gens(n):
        for b in range(T.dim):
            vec = T.apply_poly_basis(g, b)
            if vec:
                span.add(vec)
    pivots = sorted(span.pivot_rows)
    index = {p: a for a, p in enumerate(pivots)}
    rows = [span.pivot_rows[p] for p in pivots]
    opcols = []
    for v in range(R.sig.nvars):
        cols = []
        for w in rows:
            img = T.apply_var(v, w)
            coords = span.coords(img)
            if coords is None:
                raise RingError("ideal layer is not stable under the variables")
            cols.append({index[p]: c for p, c in coords.items()})
        opcols.append(tuple(cols))
    labels = tuple(f"w{a}" for a in range(len(rows)))
    return FiniteLengthModule(F, R.sig.nvars, labels, tuple(opcols))


def semigroup_quotient_flm(field: Field, gen_exps, killed: int) -> FiniteLengthModule:
    """Multiplication table of k[[t^{e_1},...,t^{e_g}]]/(t^killed), built
    directly from the numerical semigroup: the oracle for validating
    semigroup-quotient instances before any use."""
    bound = killed + 4 * max(gen_exps) + 4
    in_S = [False] * (bound + 1)
    in_S[0] = True
    for s in range(1, bound + 1):
        in_S[s] = any(s >= g and in_S[s - g] for g in gen_exps)
    basis = [s for s in range(bound + 1)
             if in_S[s] and not (s >= killed and in_S[s - killed])]
    if basis and basis[-1] + max(gen_exps) > bound:
        raise RingError("semigroup bound too small")
    index = {s: i for i, s in enumerate(basis)}
    opcols = []
    for g in gen_exps:
        cols = []
        for s in basis:
            t = s + g
            cols.append({index[t]: field.one} if t in index else {})
        opcols.append(tuple(cols))
    labels = tuple("1" if s == 0 else f"t^{s}" for s in basis)
    return FiniteLengthModule(field, len(gen_exps), labels, tuple(opcols),
                              unit_index=index.get(0))


def _hs_function(M: FPModule, I: Ideal, nmax_cap: int | None = None):
    d = max(M.ring.dim, 0)
    return numfun.fit_value_table(
        lambda n: module_truncation_length(M, I, n), d,
        nmax_cap=nmax_cap)


def is_cohen_macaulay_module(M: FPModule, seed: int = 0) -> bool:
    """Length = multiplicity under generic linear parameters; any exact hit
    certifies CM, three independent strict misses report non-CM."""
    R = M.ring
    if R.dim <= 0:
        return True
    if not R.graded:
        raise RingError("CM test needs a graded or Artinian ring")
    if not _presentation_is_homogeneous(M):
        raise RingError("CM test needs a homogeneous presentation")
    if M.rank0 == 0:
        return True
    if M._is_cm is not None:
        return M._is_cm
    fit = _hs_function(M, R.maximal_ideal())
    if fit.degree != R.dim:
        M._is_cm = False
        return False
    e0 = fit.coefficients[0]
    rng = random.Random(f"cm:{seed}")
    misses = 0
    while misses < 3:
        theta = [_random_linear_form(R.sig, rng) for _ in range(R.dim)]
        art = QuotientRing(R.sig, list(R.gens) + theta)
        if art.dim != 0:
            continue
        length = module_length_over(M, art.artinian_flm())
        if length == e0:
            M._is_cm = True
            return True
        misses += 1
    M._is_cm = False
    return False


def dual_module(M: FPModule) -> FPModule:
    """M-dagger = Hom(M, R) over a Gorenstein ring, via the kernel of the
    transposed presentation."""
    R = M.ring
    if R.gorenstein is not True:
        raise RingError("dual_module needs a Gorenstein base ring")
    if not is_cohen_macaulay_module(M):
        raise RingError("dual_module needs a maximal Cohen-Macaulay module")
    Mmin, _ = minimal_presentation(M)
    if Mmin.rank1 == 0:
        return FPModule.free(R, Mmin.rank0)
    At = tuple(tuple(Mmin.pres[i][j] for i in range(Mmin.rank0))
               for j in range(Mmin.rank1))
    K = syzygy_matrix(At, R.gb, R.sig).syzygies
    ncols = len(K[0]) if K else 0
    if ncols == 0:
        return FPModule(R, 0, ())
    gens = [tuple(K[i][j] for i in range(Mmin.rank0)) for j in range(ncols)]
    dualM = submodule_presentation(R, gens)
    out, _ = minimal_presentation(dualM)
    if hasattr(out, "_kept_rows"):
        out.embedding = [gens[i] for i in out._kept_rows]
    return out


# -- resolution chain ---------------------------------------------------------

def resolution_maps(M: FPModule, depth: int):
    """Presentation maps d_1..d_depth of a free resolution of M (minimal
    cover first, syzygy generating sets after; non-minimal tails are fine
    for Ext).  Cached on the minimal model of M."""
    Mmin, _ = minimal_presentation(M)
    if Mmin._res is None:
        Mmin._res = [Mmin.pres]
    res = Mmin._res
    while len(res) < depth:
        last = res[-1]
        ranks = (len(last), len(last[0]) if last else 0)
        if ranks[1] == 0:
            res.append(tuple())  # previous map injective: zero map follows
            continue
        B = syzygy_matrix(last, Mmin.ring.gb, Mmin.ring.sig).syzygies
        res.append(_prune_columns(B, Mmin.ring))
    return [res[i] for i in range(depth)]


def _prune_columns(B, R: QuotientRing):
    """Interreduce a syzygy generating set: the reduced module GB of the
    columns together with the defining-ideal block generates the same
    submodule mod J, and is usually much smaller than the raw Schreyer set."""
    if not B or not B[0]:
        return B
    from .groebner import module_groebner, vec_to_polys
    nrows = len(B)
    cols = [[B[i][j] for i in range(nrows)] for j in range(len(B[0]))]
    jblock = []
    for g in R.gens:
        for pos in range(nrows):
            vec = [Poly.zero(R.sig)] * nrows
            vec[pos] = g
            jblock.append(vec)
    G = module_groebner(cols + jblock, R.sig, nrows)
    kept = []
    seen = set()
    for gvec in G.vecs:
        entries = tuple(R.nf(p) for p in vec_to_polys(gvec, nrows, R.sig))
        if all(p.is_zero for p in entries):
            continue
        lead = next(p for p in entries if not p.is_zero)
        inv = R.field.inv(lead.leading_coeff())
        entries = tuple(p.scale(inv) for p in entries)
        key = tuple(p.terms for p in entries)
        if key not in seen:
            seen.add(key)
            kept.append(entries)
    kept.sort(key=lambda col: (max((p.total_degree() for p in col), default=0),
                               [str(p) for p in col]))
    return tuple(tuple(kept[j][i] for j in range(len(kept))) for i in range(nrows))
