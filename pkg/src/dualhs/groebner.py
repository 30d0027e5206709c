"""Buchberger's algorithm for ideals and submodules of free modules.

Free-module elements are sparse dicts {(position, monomial): coeff} under a
position-over-term order (position 0 largest, ring order breaking ties).
The tracked variant records, for every S-pair that reduces to zero, its
expression in the input generators; those expressions generate the syzygy
module of the inputs (Schreyer), which is how presentations over quotient
rings are produced.

Pair pruning: the chain criterion is applied for plain GB runs, and the
coprimality criterion additionally in the ideal case (it is not valid for
modules).  Tracked runs process every pair — a pruned pair is a discarded
syzygy generator.
"""

from __future__ import annotations

from heapq import heappop, heappush
from itertools import combinations_with_replacement

from .poly import (Poly, RingSignature, mono_div, mono_divides, mono_lcm,
                   mono_mul)


# sparse free-module vectors --------------------------------------------------

def vec_from_polys(polys) -> dict:
    """Column vector (tuple/list of Poly) -> sparse dict."""
    out = {}
    for pos, p in enumerate(polys):
        for m, c in p.terms:
            out[(pos, m)] = c
    return out


def vec_to_polys(vec: dict, rank: int, sig: RingSignature):
    rows = [dict() for _ in range(rank)]
    for (pos, m), c in vec.items():
        rows[pos][m] = c
    return tuple(Poly.from_dict(sig, d) for d in rows)


def _vec_lt(vec: dict, sig: RingSignature):
    """Leading (position, monomial) under position-over-term."""
    return max(vec, key=lambda t: (-t[0], sig.key(t[1])))


def _vec_sub_scaled(F, target: dict, coeff, mono, source: dict):
    """target -= coeff * x^mono * source (in place)."""
    for (pos, m), c in source.items():
        key = (pos, mono_mul(m, mono))
        nv = F.sub(target.get(key, F.zero), F.mul(coeff, c))
        if nv == F.zero:
            target.pop(key, None)
        else:
            target[key] = nv


def _scale_vec(F, vec: dict, c) -> dict:
    return {t: F.mul(c, v) for t, v in vec.items()}


def vec_normal_form(vec: dict, basis, lts, sig: RingSignature,
                    track: bool = False, rng=None):
    """Full reduction of vec by the (monic) basis.

    Returns (remainder, quotients) where quotients[k] is a {monomial: coeff}
    dict with vec = sum_k quotients[k] * basis[k] + remainder.  When rng is
    given the reducer among the eligible ones is chosen at random (used by
    the confluence tests); otherwise the first eligible one is used.
    """
    F = sig.field
    work = {t: c for t, c in vec.items() if c != F.zero}
    rem: dict = {}
    quots = [dict() for _ in basis] if track else None
    while work:
        t = _vec_lt(work, sig)
        c = work[t]
        choices = [k for k, lt in enumerate(lts)
                   if lt[0] == t[0] and mono_divides(lt[1], t[1])]
        if not choices:
            rem[t] = c
            del work[t]
            continue
        k = choices[0] if rng is None else rng.choice(choices)
        qm = mono_div(t[1], lts[k][1])
        _vec_sub_scaled(F, work, c, qm, basis[k])
        if track:
            q = quots[k]
            nv = F.add(q.get(qm, F.zero), c)
            if nv == F.zero:
                q.pop(qm, None)
            else:
                q[qm] = nv
    return rem, quots


def _rep_combine(F, rep: dict, coeff, mono, other: dict):
    """rep -= coeff * x^mono * other for representation dicts {(i, mono): c}."""
    for (i, m), c in other.items():
        key = (i, mono_mul(m, mono))
        nv = F.sub(rep.get(key, F.zero), F.mul(coeff, c))
        if nv == F.zero:
            rep.pop(key, None)
        else:
            rep[key] = nv


def module_buchberger(gens, sig: RingSignature, track: bool = False,
                      use_criteria: bool = True, rank: int = 1):
    """Run Buchberger on sparse vectors.

    Returns (basis, lts, reps, syzygies): the (unreduced, monic) GB, its
    leading terms, representations of basis elements over the inputs, and
    syzygies of the inputs — the latter two only when track is set.
    """
    F = sig.field
    zero_mono = (0,) * sig.nvars
    basis, lts, reps = [], [], []
    syzygies = []
    for i, g in enumerate(gens):
        g = {t: c for t, c in g.items() if c != F.zero}
        if not g:
            if track:
                syzygies.append({(i, zero_mono): F.one})
            continue
        lt = _vec_lt(g, sig)
        inv = F.inv(g[lt])
        basis.append(_scale_vec(F, g, inv))
        lts.append(lt)
        if track:
            reps.append({(i, zero_mono): inv})

    prune_products = use_criteria and rank == 1 and not track

    heap: list = []
    pending = set()

    def push_pair(i, j):
        lcm = mono_lcm(lts[i][1], lts[j][1])
        heappush(heap, (sig.key(lcm), i, j))
        pending.add((i, j))

    for i, j in _same_pos_pairs(lts):
        push_pair(i, j)
    while heap:
        _, i, j = heappop(heap)
        pending.discard((i, j))
        mi, mj = lts[i][1], lts[j][1]
        lcm = mono_lcm(mi, mj)
        if prune_products and lcm == mono_mul(mi, mj):
            continue
        if use_criteria and not track and _chain_prunable(i, j, lcm, lts, pending):
            continue
        s: dict = {}
        _vec_sub_scaled(F, s, F.neg(F.one), mono_div(lcm, mi), basis[i])
        _vec_sub_scaled(F, s, F.one, mono_div(lcm, mj), basis[j])
        rem, quots = vec_normal_form(s, basis, lts, sig, track=track)
        if track:
            srep: dict = {}
            _rep_combine(F, srep, F.neg(F.one), mono_div(lcm, mi), reps[i])
            _rep_combine(F, srep, F.one, mono_div(lcm, mj), reps[j])
            for k, q in enumerate(quots):
                for qm, qc in q.items():
                    _rep_combine(F, srep, qc, qm, reps[k])
        if rem:
            lt = _vec_lt(rem, sig)
            inv = F.inv(rem[lt])
            new = len(basis)
            basis.append(_scale_vec(F, rem, inv))
            lts.append(lt)
            if track:
                reps.append(_scale_vec(F, srep, inv))
            for k in range(new):
                if lts[k][0] == lt[0]:
                    push_pair(k, new)
        elif track and srep:
            syzygies.append(srep)
    return basis, lts, (reps if track else None), (syzygies if track else None)


def _same_pos_pairs(lts):
    for i in range(len(lts)):
        for j in range(i + 1, len(lts)):
            if lts[i][0] == lts[j][0]:
                yield i, j


def _chain_prunable(i, j, lcm, lts, pending):
    """Buchberger's chain criterion: some k divides lcm(i,j) with both
    flanking pairs already handled (not pending)."""
    for k, lt in enumerate(lts):
        if k in (i, j) or lt[0] != lts[i][0]:
            continue
        if mono_divides(lt[1], lcm):
            p1 = (min(i, k), max(i, k))
            p2 = (min(j, k), max(j, k))
            if p1 not in pending and p2 not in pending:
                return True
    return False


def _interreduce(basis, lts, sig):
    """Minimalize and tail-reduce a monic GB; canonical sorted output."""
    order = sorted(range(len(basis)), key=lambda k: (-lts[k][0], sig.key(lts[k][1])))
    kept = []
    for k in order:
        if any(lts[h][0] == lts[k][0] and mono_divides(lts[h][1], lts[k][1])
               for h in kept):
            continue
        kept.append(k)
    out_basis = [basis[k] for k in kept]
    out_lts = [lts[k] for k in kept]
    reduced = []
    for idx in range(len(out_basis)):
        others = out_basis[:idx] + out_basis[idx + 1:]
        other_lts = out_lts[:idx] + out_lts[idx + 1:]
        rem, _ = vec_normal_form(out_basis[idx], others, other_lts, sig)
        reduced.append(rem)
    pairs = sorted(zip(out_lts, reduced), key=lambda lr: (-lr[0][0], sig.key(lr[0][1])))
    return [v for _, v in pairs]


class GroebnerBasis:
    """Reduced Groebner basis of an ideal (rank 1) or submodule of P^rank."""

    __slots__ = ("sig", "rank", "vecs", "lts", "reduced")

    def __init__(self, sig: RingSignature, rank: int, vecs):
        self.sig = sig
        self.rank = rank
        self.vecs = list(vecs)
        self.lts = [_vec_lt(v, sig) for v in self.vecs]
        self.reduced = True

    @property
    def generators(self):
        if self.rank == 1:
            return [Poly.from_dict(self.sig, {m: c for (_, m), c in v.items()})
                    for v in self.vecs]
        return [vec_to_polys(v, self.rank, self.sig) for v in self.vecs]

    def normal_form_vec(self, vec: dict, rng=None) -> dict:
        rem, _ = vec_normal_form(vec, self.vecs, self.lts, self.sig, rng=rng)
        return rem

    def __len__(self):
        return len(self.vecs)


def buchberger(gens, sig: RingSignature) -> GroebnerBasis:
    """Reduced GB of the ideal generated by gens (list of Poly)."""
    vecs = [{(0, m): c for m, c in g.terms} for g in gens]
    basis, lts, _, _ = module_buchberger(vecs, sig, rank=1)
    return GroebnerBasis(sig, 1, _interreduce(basis, lts, sig))


def module_groebner(columns, sig: RingSignature, rank: int) -> GroebnerBasis:
    """Reduced GB of the submodule of P^rank generated by the given columns
    (each a tuple/list of Poly)."""
    vecs = [vec_from_polys(col) for col in columns]
    basis, lts, _, _ = module_buchberger(vecs, sig, rank=rank)
    return GroebnerBasis(sig, rank, _interreduce(basis, lts, sig))


def normal_form(f: Poly, G: GroebnerBasis, rng=None) -> Poly:
    """Canonical remainder of f modulo the ideal GB G."""
    if G.rank != 1:
        raise ValueError("normal_form expects an ideal basis")
    if f.sig != G.sig:
        raise ValueError("signature mismatch")
    rem = G.normal_form_vec({(0, m): c for m, c in f.terms}, rng=rng)
    return Poly.from_dict(f.sig, {m: c for (_, m), c in rem.items()})


def ideal_power(gens, n: int, sig: RingSignature):
    """Generators of I^n: all n-fold products.  n <= 0 gives the unit ideal."""
    if n <= 0:
        return [Poly.one(sig)]
    if n == 1:
        return list(gens)
    out = []
    seen = set()
    for combo in combinations_with_replacement(range(len(gens)), n):
        p = gens[combo[0]]
        for k in combo[1:]:
            p = p.mul(gens[k])
        if p.terms and p.terms not in seen:
            seen.add(p.terms)
            out.append(p)
    return out


class SyzygyPresentation:
    """Base matrix A (rows x cols of Poly) and syzygy matrix B with A.B = 0
    in P/J; columns of B generate all syzygies of A's columns over P/J."""

    __slots__ = ("base", "syzygies")

    def __init__(self, base, syzygies):
        self.base = base
        self.syzygies = syzygies


def syzygy_matrix(A, J: GroebnerBasis | None, sig: RingSignature) -> SyzygyPresentation:
    """Syzygies over R = P/J of the columns of A (tuple of row tuples of Poly).

    Runs tracked Buchberger on [columns of A | J * e_i] and projects the
    Schreyer syzygies onto the A-part, reducing entries to normal form mod J.
    """
    nrows = len(A)
    ncols = len(A[0]) if nrows else 0
    jgens = J.generators if J is not None else []
    if nrows == 0:
        # no constraints: every unit vector is a syzygy
        eye = [[Poly.one(sig) if i == j else Poly.zero(sig) for j in range(ncols)]
               for i in range(ncols)]
        return SyzygyPresentation(A, tuple(tuple(r) for r in eye))
    cols = [vec_from_polys([A[i][j] for i in range(nrows)]) for j in range(ncols)]
    jblock = []
    for g in jgens:
        for pos in range(nrows):
            jblock.append({(pos, m): c for m, c in g.terms})
    _, _, _, syz = module_buchberger(cols + jblock, sig, track=True,
                                     use_criteria=False)
    columns = []
    seen = set()
    for z in syz:
        entries = []
        for k in range(ncols):
            d = {m: c for (idx, m), c in z.items() if idx == k}
            p = Poly.from_dict(sig, d)
            if J is not None and not p.is_zero:
                p = normal_form(p, J)
            entries.append(p)
        if all(p.is_zero for p in entries):
            continue
        # scale so the first nonzero entry is monic: canonical duplicates collapse
        lead = next(p for p in entries if not p.is_zero)
        inv = sig.field.inv(lead.leading_coeff())
        entries = tuple(p.scale(inv) for p in entries)
        key = tuple(p.terms for p in entries)
        if key not in seen:
            seen.add(key)
            columns.append(entries)
    columns.sort(key=lambda col: (sum(p.total_degree() for p in col if not p.is_zero),
                                  [str(p) for p in col]))
    B = tuple(tuple(columns[j][i] for j in range(len(columns))) for i in range(ncols))
    return SyzygyPresentation(A, B)
