"""The commutative Poisson family on gl(n) |x gl(n)_ab.

Elements are pairs (a0 I + A0, a1 I + A1) with A0, A1 traceless, stored as
(a0, A0, a1, A1) with sparse matrices.  The bracket is the semidirect product
with abelian second factor under the adjoint action; the product is

    (a0 b0) I + a0 B0 + b0 A0  in the first slot, and
    (a0 b1 + a1 b0 + tr(A0 B1 + A1 B0)) I + a0 B1 + b0 A1 + sym(A0, B0)

in the second, where sym(A, B) = AB + BA - (2/n) tr(AB) I.
"""

from __future__ import annotations

from fractions import Fraction

from ..exactla import Matrix
from ..gtable import extract
from ..repkit import (
    Decomposition,
    GModule,
    IrrepId,
    Summand,
    builtin_labeling,
    glk_basis,
    glk_coords,
    sl2_summand,
    smat_mul,
    smat_sub,
    smat_trace,
)
from .fixtures import compare, expected_table

F = Fraction


class SizeMismatch(Exception):
    pass


def gln_element(n, a0=0, A0=None, a1=0, A1=None):
    return (n, F(a0), dict(A0 or {}), F(a1), dict(A1 or {}))


def _check_sizes(u, v):
    if u[0] != v[0]:
        raise SizeMismatch("mixed sizes %d and %d" % (u[0], v[0]))
    return u[0]


def _sadd(*mats):
    out = {}
    for M in mats:
        for key, v in M.items():
            w = out.get(key, F(0)) + v
            if w:
                out[key] = w
            else:
                out.pop(key, None)
    return out


def _sscale(a, M):
    return {key: a * v for key, v in M.items()} if a else {}


def _sym(A, B, n):
    AB = smat_mul(A, B)
    BA = smat_mul(B, A)
    tr = smat_trace(AB, n)
    S = _sadd(AB, BA)
    if tr:
        for i in range(n):
            w = S.get((i, i), F(0)) - F(2, n) * tr
            if w:
                S[(i, i)] = w
            else:
                S.pop((i, i), None)
    return S


def gln_product(u, v):
    n = _check_sizes(u, v)
    _, a0, A0, a1, A1 = u
    _, b0, B0, b1, B1 = v
    c0 = a0 * b0
    C0 = _sadd(_sscale(a0, B0), _sscale(b0, A0))
    c1 = a0 * b1 + a1 * b0 + smat_trace(smat_mul(A0, B1), n) \
        + smat_trace(smat_mul(A1, B0), n)
    C1 = _sadd(_sscale(a0, B1), _sscale(b0, A1), _sym(A0, B0, n))
    return (n, c0, C0, c1, C1)


def gln_bracket(u, v):
    n = _check_sizes(u, v)
    _, a0, A0, a1, A1 = u
    _, b0, B0, b1, B1 = v
    C0 = smat_sub(smat_mul(A0, B0), smat_mul(B0, A0))
    C1 = _sadd(smat_sub(smat_mul(A0, B1), smat_mul(B1, A0)),
               smat_sub(smat_mul(A1, B0), smat_mul(B0, A1)))
    return (n, F(0), C0, F(0), C1)


def _basis_elements(n):
    sl, _ = glk_basis(n)
    out = [gln_element(n, a0=1)]
    out += [gln_element(n, A0=B) for B in sl]
    out += [gln_element(n, A1=B) for B in sl]
    out.append(gln_element(n, a1=1))
    return out


def _coords(u):
    n, a0, A0, a1, A1 = u
    return tuple([a0] + glk_coords(A0, n) + glk_coords(A1, n) + [a1])


def _from_coords(n, c):
    d = n * n - 1
    sl, _ = glk_basis(n)
    A0 = {}
    A1 = {}
    for x, B in zip(c[1:1 + d], sl):
        if x:
            for key, v in B.items():
                A0[key] = A0.get(key, F(0)) + x * v
    for x, B in zip(c[1 + d:1 + 2 * d], sl):
        if x:
            for key, v in B.items():
                A1[key] = A1.get(key, F(0)) + x * v
    return (n, c[0], {k: v for k, v in A0.items() if v},
            c[-1], {k: v for k, v in A1.items() if v})


def _structure(n, op):
    basis = _basis_elements(n)
    dim = len(basis)
    struct = {}
    for i, u in enumerate(basis):
        for j, v in enumerate(basis):
            w = _coords(op(u, v))
            row = {k: c for k, c in enumerate(w) if c}
            if row:
                struct[(i, j)] = row
    return dim, struct


def gln_axioms(n):
    """Full-basis associativity, commutativity, Jacobi and Leibniz checks."""
    dim, P = _structure(n, gln_product)
    _, L = _structure(n, gln_bracket)

    def right(S, row, k):
        # sum_m row[m] * S[(m, k)]
        out = {}
        for m, c in row.items():
            for t, d in S.get((m, k), {}).items():
                w = out.get(t, F(0)) + c * d
                if w:
                    out[t] = w
                else:
                    out.pop(t, None)
        return out

    def left(S, i, row):
        # sum_m row[m] * S[(i, m)]
        out = {}
        for m, c in row.items():
            for t, d in S.get((i, m), {}).items():
                w = out.get(t, F(0)) + c * d
                if w:
                    out[t] = w
                else:
                    out.pop(t, None)
        return out

    results = {"commutative": True, "associative": True,
               "jacobi": True, "leibniz": True}
    rng = range(dim)
    for i in rng:
        for j in rng:
            if P.get((i, j), {}) != P.get((j, i), {}):
                results["commutative"] = False
            if _sadd_rows(L.get((i, j), {}), L.get((j, i), {})):
                results["jacobi"] = False  # antisymmetry is part of Jacobi here
    for i in rng:
        for j in rng:
            pij = P.get((i, j), {})
            lij = L.get((i, j), {})
            for k in rng:
                if right(P, pij, k) != left(P, i, P.get((j, k), {})):
                    results["associative"] = False
                t = _sadd_rows(right(L, lij, k),
                               right(L, L.get((j, k), {}), i),
                               right(L, L.get((k, i), {}), j))
                if t:
                    results["jacobi"] = False
                lhs = left(L, i, P.get((j, k), {}))
                rhs = _sadd_rows(right(P, lij, k),
                                 left(P, j, L.get((i, k), {})))
                if lhs != rhs:
                    results["leibniz"] = False
    return results


def _sadd_rows(*rows):
    out = {}
    for row in rows:
        for k, v in row.items():
            w = out.get(k, F(0)) + v
            if w:
                out[k] = w
            else:
                out.pop(k, None)
    return out


GLN_PRODUCT_TABLE = {
    ("(I_n)_0", "(I_n)_0"): [("(I_n)_0", 1, "1")],
    ("(I_n)_0", "sl(n)_0"): [("sl(n)_0", 1, "1")],
    ("(I_n)_0", "sl(n)_ab"): [("sl(n)_ab", 1, "1")],
    ("(I_n)_0", "(I_n)_ab"): [("(I_n)_ab", 1, "1")],
    ("sl(n)_0", "(I_n)_0"): [("sl(n)_0", 1, "1")],
    ("sl(n)_0", "sl(n)_0"): [("sl(n)_ab", 2, "1")],
    ("sl(n)_0", "sl(n)_ab"): [("(I_n)_ab", 1, "1")],
    ("sl(n)_ab", "(I_n)_0"): [("sl(n)_ab", 1, "1")],
    ("sl(n)_ab", "sl(n)_0"): [("(I_n)_ab", 1, "1")],
    ("(I_n)_ab", "(I_n)_0"): [("(I_n)_ab", 1, "1")],
}

GLN_BRACKET_TABLE = {
    ("sl(n)_0", "sl(n)_0"): [("sl(n)_0", 1, "1")],
    ("sl(n)_0", "sl(n)_ab"): [("sl(n)_ab", 1, "1")],
    ("sl(n)_ab", "sl(n)_0"): [("sl(n)_ab", 1, "1")],
}


def _gln_module(n):
    """The 2n^2-dimensional module with GL(n) acting by simultaneous
    conjugation on both slots (ad operators E_pq on coordinates)."""
    basis = _basis_elements(n)
    dim = len(basis)
    action = {}
    for p in range(n):
        for q in range(n):
            P = {(p, q): F(1)}
            cols = []
            for u in basis:
                _, a0, A0, a1, A1 = u
                C0 = smat_sub(smat_mul(P, A0), smat_mul(A0, P))
                C1 = smat_sub(smat_mul(P, A1), smat_mul(A1, P))
                cols.append(_coords((n, F(0), C0, F(0), C1)))
            action["E_%d%d" % (p + 1, q + 1)] = Matrix.from_cols(cols, nrows=dim)
    return GModule("GLk", dim, action, validate=False)


def gln_tables(n, check_fixtures=True):
    """The two 4x4 tables of the family under the GL(n) labeling.

    At n = 2 the symmetric intertwiner vanishes, so the (sl_0, sl_0) product
    cell is empty there.
    """
    if n < 2:
        raise ValueError("n >= 2")
    reg = builtin_labeling("GLk", k=n)
    gk = "GL%d" % n
    module = _gln_module(n)
    dim = module.dim
    d = n * n - 1

    def product(u, v):
        return _coords(gln_product(_from_coords(n, u), _from_coords(n, v)))

    def brk(u, v):
        return _coords(gln_bracket(_from_coords(n, u), _from_coords(n, v)))

    def block_tau(offset, width):
        cols = []
        for i in range(width):
            col = [F(0)] * dim
            col[offset + i] = F(1)
            cols.append(col)
        return Matrix.from_cols(cols, nrows=dim)

    dec = Decomposition(module, reg, [
        Summand("(I_n)_0", IrrepId(gk, "trivial"), block_tau(0, 1)),
        Summand("sl(n)_0", IrrepId(gk, "adjoint"), block_tau(1, d)),
        Summand("sl(n)_ab", IrrepId(gk, "adjoint"), block_tau(1 + d, d)),
        Summand("(I_n)_ab", IrrepId(gk, "trivial"), block_tau(1 + 2 * d, 1)),
    ])
    tp = extract(product, dec, reg)
    tb = extract(brk, dec, reg, op_symbol="{,}")
    if check_fixtures:
        want_p = dict(GLN_PRODUCT_TABLE)
        if n == 2:
            del want_p[("sl(n)_0", "sl(n)_0")]
        compare("gl(n) product table (n=%d)" % n, tp,
                expected_table(dec, reg, want_p))
        compare("gl(n) bracket table (n=%d)" % n, tb,
                expected_table(dec, reg, GLN_BRACKET_TABLE, "{,}"))
    return tp, tb


def gln_sl2_tables(n=3):
    """The 10-summand decomposition of the family under the corner SL(2),
    with both tables; used by the isomorphism search at n = 3."""
    if n != 3:
        raise ValueError("the corner-SL(2) decomposition is built for n = 3")
    reg = builtin_labeling("SL2")
    basis = _basis_elements(n)
    dim = len(basis)
    embed = {"E": {(0, 1): F(1)}, "H": {(0, 0): F(1), (1, 1): F(-1)},
             "F": {(1, 0): F(1)}}
    action = {}
    for op, P in embed.items():
        cols = []
        for u in basis:
            _, a0, A0, a1, A1 = u
            C0 = smat_sub(smat_mul(P, A0), smat_mul(A0, P))
            C1 = smat_sub(smat_mul(P, A1), smat_mul(A1, P))
            cols.append(_coords((n, F(0), C0, F(0), C1)))
        action[op] = Matrix.from_cols(cols, nrows=dim)
    module = GModule("SL2", dim, action)

    def product(u, v):
        return _coords(gln_product(_from_coords(n, u), _from_coords(n, v)))

    def brk(u, v):
        return _coords(gln_bracket(_from_coords(n, u), _from_coords(n, v)))

    Z = {(0, 0): F(1), (1, 1): F(1), (2, 2): F(-2)}
    hw_mats = [
        ("I_0", 0, (F(1), {}, F(0), {})),
        ("Z_0", 0, (F(0), Z, F(0), {})),
        ("W_0", 2, (F(0), {(0, 1): F(1)}, F(0), {})),
        ("C_0", 1, (F(0), {(0, 2): F(1)}, F(0), {})),
        ("R_0", 1, (F(0), {(2, 1): F(-1)}, F(0), {})),
        ("Z_ab", 0, (F(0), {}, F(0), Z)),
        ("W_ab", 2, (F(0), {}, F(0), {(0, 1): F(1)})),
        ("C_ab", 1, (F(0), {}, F(0), {(0, 2): F(1)})),
        ("R_ab", 1, (F(0), {}, F(0), {(2, 1): F(-1)})),
        ("I_ab", 0, (F(0), {}, F(1), {})),
    ]
    summands = []
    for sid, w, (a0, A0, a1, A1) in hw_mats:
        hwv = _coords((n, a0, A0, a1, A1))
        summands.append(sl2_summand(module, reg, w, hwv, sid))
    dec = Decomposition(module, reg, summands)
    tp = extract(product, dec, reg)
    tb = extract(brk, dec, reg, op_symbol="{,}")
    return tp, tb
