"""Lengths of Hom and Ext from a finitely presented module into a
finite-length module, by exact rank counting over truncations.

A map d: F_cur -> F_prev (rows indexed by F_prev) induces
Hom(F_prev, N) -> Hom(F_cur, N); its matrix columns are assembled sparsely
and ranks come from the echelon span, so graded instances decompose into
their degree blocks automatically.
"""

from __future__ import annotations

from .linalg import sparse_kernel, sparse_rank
from .poly import Poly
from .rings import (FiniteLengthModule, FPModule, Ideal, QuotientRing,
                    RingError, minimal_presentation, module_flm,
                    resolution_maps, submodule_presentation,
                    truncation_algebra)


def _check_compatible(M: FPModule, N: FiniteLengthModule):
    if M.ring.field != N.field or M.ring.sig.nvars != N.nvars:
        raise RingError("module and target live over different rings")


def induced_map_columns(d_rows, N: FiniteLengthModule):
    """Columns of Hom(F_prev, N) -> Hom(F_cur, N), phi -> phi o d.

    Column order is (i, b) for i < rank(F_prev), b < dim N, flattened as
    i * dim N + b; entries live on j * dim N + k for j < rank(F_cur).
    """
    q_prev = len(d_rows)
    q_cur = len(d_rows[0]) if d_rows and d_rows[0] else 0
    ell = N.dim
    cols = []
    for i in range(q_prev):
        row = d_rows[i]
        for b in range(ell):
            vec = {}
            for j in range(q_cur):
                entry = row[j]
                if entry.is_zero:
                    continue
                for k, c in N.apply_poly_basis(entry, b).items():
                    vec[j * ell + k] = c
            cols.append(vec)
    return cols


def hom_length(M: FPModule, N: FiniteLengthModule) -> int:
    """Length of Hom(M, N): the kernel dimension of the map induced by the
    presentation of M."""
    _check_compatible(M, N)
    if N.dim == 0 or M.rank0 == 0:
        return 0
    if M.rank1 == 0:
        return M.rank0 * N.dim
    cols = induced_map_columns(M.pres, N)
    return M.rank0 * N.dim - sparse_rank(M.ring.field, cols)


def hom_basis(M: FPModule, N: FiniteLengthModule):
    """Basis of Hom(M, N); each element is a sparse dict over i*dim(N)+b."""
    _check_compatible(M, N)
    if N.dim == 0 or M.rank0 == 0:
        return []
    if M.rank1 == 0:
        F = M.ring.field
        return [{t: F.one} for t in range(M.rank0 * N.dim)]
    cols = induced_map_columns(M.pres, N)
    return sparse_kernel(M.ring.field, cols)


def ext_length(i: int, M: FPModule, N: FiniteLengthModule) -> int:
    """Length of Ext^i(M, N) from a free resolution segment of M."""
    if i == 0:
        return hom_length(M, N)
    _check_compatible(M, N)
    if N.dim == 0 or M.rank0 == 0:
        return 0
    maps = resolution_maps(M, i + 1)
    d_i, d_next = maps[i - 1], maps[i]
    q_i = len(d_i[0]) if d_i and d_i[0] else 0
    if q_i == 0:
        return 0
    F = M.ring.field
    rank_next = sparse_rank(F, induced_map_columns(d_next, N)) if d_next else 0
    rank_i = sparse_rank(F, induced_map_columns(d_i, N))
    return (q_i * N.dim - rank_next) - rank_i


def dual_hs_value(M: FPModule, I: Ideal, n: int) -> int:
    """The dual Hilbert-Samuel value at n: length of Hom(M, R/I^{n+1})."""
    R = M.ring
    if R.gorenstein is not True:
        raise RingError("dual Hilbert-Samuel values need a Gorenstein ring")
    return hom_length(M, truncation_algebra(R, I, n + 1))


def ext_dual_value(i: int, M: FPModule, I: Ideal, n: int) -> int:
    """Length of Ext^i(M, R/I^{n+1})."""
    R = M.ring
    if R.gorenstein is not True:
        raise RingError("dual Hilbert-Samuel values need a Gorenstein ring")
    return ext_length(i, M, truncation_algebra(R, I, n + 1))


def dual_hs_value_via_tables(M: FPModule, I: Ideal, n: int) -> int:
    """Independent oracle for dual_hs_value: evaluates every presentation
    entry as a dense polynomial in the multiplication matrices of the
    truncation and counts the kernel with dense elimination."""
    from .linalg import Matrix, rank as dense_rank
    R = M.ring
    N = truncation_algebra(R, I, n + 1)
    if N.dim == 0 or M.rank0 == 0:
        return 0
    if M.rank1 == 0:
        return M.rank0 * N.dim
    F = R.field
    ell = N.dim
    blocks = [[N.poly_matrix(M.pres[i][j]) for i in range(M.rank0)]
              for j in range(M.rank1)]
    rows = []
    for j in range(M.rank1):
        for r in range(ell):
            row = []
            for i in range(M.rank0):
                row.extend(blocks[j][i].rows[r])
            rows.append(row)
    big = Matrix(F, rows)
    return M.rank0 * ell - dense_rank(big)


def residue_field_module(R: QuotientRing) -> FPModule:
    """k = R/m presented by the row of variables."""
    row = tuple(Poly.variable(R.sig, v) for v in range(R.sig.nvars))
    return FPModule(R, 1, (row,))


def bass_mu1(S: QuotientRing, i: int) -> int:
    """First Bass number of n^i: dim Ext^1(k, n^i) over an Artinian local S."""
    if S.dim != 0:
        raise RingError("Bass numbers are computed over Artinian rings")
    n_ideal = S.maximal_ideal()
    gens = [g for g in n_ideal.power_gens(i) if not g.is_zero]
    if not gens:
        return 0
    sub = submodule_presentation(S, [(g,) for g in gens])
    target = module_flm(minimal_presentation(sub)[0])
    return ext_length(1, residue_field_module(S), target)


def ext_connecting_injective(M: FPModule, I: Ideal, n: int, x: Poly,
                             level: int) -> bool:
    """Is Ext^level(M, R/I^n) -> Ext^level(M, R/I^{n+1}) injective, where the
    map on targets is multiplication by x?"""
    R = M.ring
    F = R.field
    N = truncation_algebra(R, I, n)
    N2 = truncation_algebra(R, I, n + 1)
    if N.dim == 0:
        return True
    maps = resolution_maps(M, level + 1)
    d_lvl, d_next = maps[level - 1], maps[level]
    q_lvl = len(d_lvl[0]) if d_lvl and d_lvl[0] else 0
    if q_lvl == 0:
        return True
    cols_next = induced_map_columns(d_next, N) if d_next else []
    if cols_next:
        K = sparse_kernel(F, cols_next)
    else:
        K = [{t: F.one} for t in range(q_lvl * N.dim)]
    if not K:
        return True
    if not (N.is_algebra and N2.is_algebra):
        raise RingError("connecting map needs algebra truncations")
    from .groebner import normal_form
    # x_cols[b] expresses x * (b-th basis monomial of N) in N2 coordinates
    x_cols = []
    for b in range(N.dim):
        prod = x.mul_term(N.monos[b], F.one)
        rem = normal_form(prod, N2.gb)
        x_cols.append({N2.mono_index[m]: c for m, c in rem.terms})
    xK = []
    for kvec in K:
        out = {}
        for flat, c in kvec.items():
            i, b = divmod(flat, N.dim)
            for k2, c2 in x_cols[b].items():
                key = i * N2.dim + k2
                nv = F.add(out.get(key, F.zero), F.mul(c, c2))
                if nv == F.zero:
                    out.pop(key, None)
                else:
                    out[key] = nv
        xK.append(out)
    cols_im2 = induced_map_columns(d_lvl, N2)
    r_b = sparse_rank(F, cols_im2)
    r_all = sparse_rank(F, xK + cols_im2)
    dim_pre = len(K) - r_all + r_b
    rank_im = sparse_rank(F, induced_map_columns(d_lvl, N))
    return dim_pre == rank_im
