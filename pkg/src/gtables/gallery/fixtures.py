"""Fixed example algebras with their reference tables, verified entry for entry.

Every fixture extracts its table from first principles and compares against a
hard-coded expected table; a FixtureMismatch carries the first differing cell.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..exactla import Matrix, scalar_from_str
from ..gtable import GTable, cotable, extract
from ..repkit import (
    Decomposition,
    GModule,
    IrrepId,
    Summand,
    builtin_labeling,
    decompose_s3,
    decompose_sl2,
    glk_basis,
    glk_coords,
    group_algebra_s3_conjugation,
    s3_group_algebra_product,
    sl2_poly_labeling,
    smat_mul,
    smat_sub,
    smat_trace,
)

F = Fraction


class FixtureMismatch(Exception):
    def __init__(self, label, diff):
        r1, r2, got, want = diff
        super().__init__(
            "%s: cell (%s, %s) extracted %s but expected %s"
            % (label, r1, r2, got or "0", want or "0"))
        self.cell = (r1, r2)
        self.got = got
        self.want = want


def expected_table(dec, registry, cells, op_symbol="*"):
    entries = {}
    for (r1, r2), items in cells.items():
        entries[(r1, r2)] = [(s, q, scalar_from_str(c)) for (s, q, c) in items]
    return GTable(dec, dec, registry, entries, op_symbol=op_symbol)


def compare(label, got: GTable, want: GTable):
    diff = got.first_difference(want)
    if diff is not None:
        raise FixtureMismatch(label, diff)
    return got


@dataclass
class FixtureReport:
    label: str
    tables: dict  # name -> GTable
    products: dict = None  # name -> bilinear callable on module coordinates


# ---------------------------------------------------------------------------
# K[S3] under conjugation: table and cotable

S3_TABLE = {
    ("1_1", "1_1"): [("1_1", 1, "1")],
    ("1_2", "1_2"): [("1_2", 1, "1")],
    ("1_3", "1_3"): [("1_3", 1, "1")],
    ("1_3", "s_sg"): [("s_sg", 1, "1")],
    ("1_3", "A_std"): [("A_std", 1, "1")],
    ("s_sg", "1_3"): [("s_sg", 1, "1")],
    ("s_sg", "s_sg"): [("1_3", 1, "-3")],
    ("s_sg", "A_std"): [("A_std", 1, "1")],
    ("A_std", "1_3"): [("A_std", 1, "1")],
    ("A_std", "s_sg"): [("A_std", 1, "-1")],
    ("A_std", "A_std"): [("1_3", 1, "3/2"), ("s_sg", 1, "3/2")],
}

S3_COTABLE = {
    ("1_1", "1_1"): [("1_1", 1, "1/6")],
    ("1_1", "1_2"): [("1_2", 1, "1/6")],
    ("1_1", "1_3"): [("1_3", 1, "1/6")],
    ("1_1", "s_sg"): [("s_sg", 1, "1/6")],
    ("1_1", "A_std"): [("A_std", 1, "1/6")],
    ("1_2", "1_1"): [("1_2", 1, "1/6")],
    ("1_2", "1_2"): [("1_1", 1, "1/6")],
    ("1_2", "1_3"): [("1_3", 1, "1/6")],
    ("1_2", "s_sg"): [("s_sg", 1, "1/6")],
    ("1_2", "A_std"): [("A_std", 1, "-1/6")],
    ("1_3", "1_1"): [("1_3", 1, "1/6")],
    ("1_3", "1_2"): [("1_3", 1, "1/6")],
    ("1_3", "1_3"): [("1_1", 1, "2/3"), ("1_2", 1, "2/3"), ("1_3", 1, "1/3")],
    ("1_3", "s_sg"): [("s_sg", 1, "-1/3")],
    ("s_sg", "1_1"): [("s_sg", 1, "1/6")],
    ("s_sg", "1_2"): [("s_sg", 1, "1/6")],
    ("s_sg", "1_3"): [("s_sg", 1, "-1/3")],
    ("s_sg", "s_sg"): [("1_1", 1, "2"), ("1_2", 1, "2"), ("1_3", 1, "-1")],
    ("A_std", "1_1"): [("A_std", 1, "1/6")],
    ("A_std", "1_2"): [("A_std", 1, "-1/6")],
    ("A_std", "A_std"): [("1_1", 1, "1"), ("1_2", 1, "-1"),
                         ("A_std", 1, "1/3")],
}


def s3_decomposition():
    reg = builtin_labeling("S3")
    M = group_algebra_s3_conjugation()
    sixth = F(1, 6)
    generators = [
        ("1_1", "tr", [[sixth] * 6]),
        ("1_2", "tr", [[sixth, -sixth, -sixth, -sixth, sixth, sixth]]),
        ("1_3", "tr", [[F(2, 3), 0, 0, 0, F(-1, 3), F(-1, 3)]]),
        ("s_sg", "sg", [[0, 0, 0, 0, F(1), F(-1)]]),
        ("A_std", "std", [[0, F(1), F(-1), 0, 0, 0],
                          [0, F(1), 0, F(-1), 0, 0]]),
    ]
    dec = decompose_s3(M, reg, generators=generators)
    return reg, dec


def s3_fixture() -> FixtureReport:
    """K[S3] with the conjugation action: group-algebra table and the cotable
    of Delta(g) = g (x) g under the orthonormal-group-basis identification."""
    reg, dec = s3_decomposition()
    table = extract(s3_group_algebra_product(), dec, reg)
    compare("K[S3] table", table, expected_table(dec, reg, S3_TABLE))
    delta = {i: [(i, i, F(1))] for i in range(6)}
    cot = cotable(delta, dec, reg)
    compare("K[S3] cotable", cot, expected_table(dec, reg, S3_COTABLE))
    diag = lambda u, v: tuple(a * b for a, b in zip(u, v))
    return FixtureReport("K[S3]", {"table": table, "cotable": cot},
                         {"table": s3_group_algebra_product(), "cotable": diag})


# ---------------------------------------------------------------------------
# M_k(K) under GL(k) conjugation

def _mk_module_and_product(k):
    reg = builtin_labeling("GLk", k=k)
    basis, _ = glk_basis(k)
    ident = {(i, i): F(1) for i in range(k)}
    full = [ident] + basis  # coordinates: (identity component, sl(k) components)
    dim = k * k

    def to_mat(u):
        out = {}
        for c, B in zip(u, full):
            if c:
                for key, v in B.items():
                    out[key] = out.get(key, F(0)) + c * v
        return {key: v for key, v in out.items() if v}

    def to_coords(A):
        tr = smat_trace(A, k)
        scalar = tr / k
        T = dict(A)
        for i in range(k):
            w = T.get((i, i), F(0)) - scalar
            if w:
                T[(i, i)] = w
            else:
                T.pop((i, i), None)
        return tuple([scalar] + glk_coords(T, k))

    action = {}
    for p in range(k):
        for q in range(k):
            P = {(p, q): F(1)}
            cols = []
            for b in range(dim):
                u = [F(0)] * dim
                u[b] = F(1)
                B = to_mat(u)
                cols.append(to_coords(smat_sub(smat_mul(P, B), smat_mul(B, P))))
            action["E_%d%d" % (p + 1, q + 1)] = Matrix.from_cols(cols, nrows=dim)
    module = GModule("GLk", dim, action, validate=False)

    def product(u, v):
        return to_coords(smat_mul(to_mat(u), to_mat(v)))

    gk = "GL%d" % k
    tau0 = Matrix.from_cols([[F(1)] + [F(0)] * (dim - 1)], nrows=dim)
    tau1_cols = []
    for i in range(dim - 1):
        col = [F(0)] * dim
        col[1 + i] = F(1)
        tau1_cols.append(col)
    dec = Decomposition(module, reg, [
        Summand("A_0", IrrepId(gk, "trivial"), tau0),
        Summand("A_1", IrrepId(gk, "adjoint"), Matrix.from_cols(tau1_cols, nrows=dim)),
    ])
    return reg, dec, product


def mk_expected(k):
    cells = {
        ("A_0", "A_0"): [("A_0", 1, "1")],
        ("A_0", "A_1"): [("A_1", 1, "1")],
        ("A_1", "A_0"): [("A_1", 1, "1")],
    }
    if k == 2:
        cells[("A_1", "A_1")] = [("A_0", 1, "1/2"), ("A_1", 1, "1/2")]
    else:
        cells[("A_1", "A_1")] = [("A_0", 1, "1/%d" % k),
                                 ("A_1", 1, "1/2"), ("A_1", 2, "1/2")]
    return cells


def mk_fixture(k) -> FixtureReport:
    """Matrix algebra M_k(K): AB = (1/k)tr(AB)I + (1/2)[A,B] + (1/2)sym."""
    if k < 2:
        raise ValueError("k >= 2")
    reg, dec, product = _mk_module_and_product(k)
    table = extract(product, dec, reg)
    compare("M_%d table" % k, table, expected_table(dec, reg, mk_expected(k)))
    return FixtureReport("M_%d" % k, {"table": table}, {"table": product})


# ---------------------------------------------------------------------------
# sl(3, K) under the corner SL(2)

SL3_TABLE = {
    ("V_0", "V_1"): [("V_1", 1, "3")],
    ("V_0", "V_1'"): [("V_1'", 1, "-3")],
    ("V_2", "V_2"): [("V_2", 1, "1")],
    ("V_2", "V_1"): [("V_1", 1, "1")],
    ("V_2", "V_1'"): [("V_1'", 1, "1")],
    ("V_1", "V_0"): [("V_1", 1, "-3")],
    ("V_1", "V_2"): [("V_1", 1, "-1")],
    # the two mixed cells below are forced by the intertwiner symmetries:
    # the V_0 and V_2 coefficients of (V_1, V_1') always coincide
    ("V_1", "V_1'"): [("V_0", 1, "1/2"), ("V_2", 1, "1/2")],
    ("V_1'", "V_0"): [("V_1'", 1, "3")],
    ("V_1'", "V_2"): [("V_1'", 1, "-1")],
    ("V_1'", "V_1"): [("V_0", 1, "1/2"), ("V_2", 1, "-1/2")],
}


def sl3_fixture() -> FixtureReport:
    """sl(3) as an SL(2)-algebra via the upper-left corner embedding.

    Highest weight vectors: Z = diag(1,1,-2), E12 for the corner block, E13
    for the third-column copy, -E32 for the third-row copy.
    """
    reg = builtin_labeling("SL2")
    basis, names = glk_basis(3)
    dim = 8
    embed = {"E": {(0, 1): F(1)}, "H": {(0, 0): F(1), (1, 1): F(-1)},
             "F": {(1, 0): F(1)}}
    action = {}
    for op, P in embed.items():
        cols = [glk_coords(smat_sub(smat_mul(P, B), smat_mul(B, P)), 3)
                for B in basis]
        action[op] = Matrix.from_cols(cols, nrows=dim)
    module = GModule("SL2", dim, action, basis_names=names)

    def to_mat(u):
        out = {}
        for c, B in zip(u, basis):
            if c:
                for key, v in B.items():
                    out[key] = out.get(key, F(0)) + c * v
        return out

    def lie(u, v):
        A, B = to_mat(u), to_mat(v)
        return tuple(glk_coords(smat_sub(smat_mul(A, B), smat_mul(B, A)), 3))

    coords = lambda A: glk_coords(A, 3)
    hwvs = [
        ("V_0", 0, coords({(0, 0): F(1), (1, 1): F(1), (2, 2): F(-2)})),
        ("V_2", 2, coords({(0, 1): F(1)})),
        ("V_1", 1, coords({(0, 2): F(1)})),
        ("V_1'", 1, coords({(2, 1): F(-1)})),
    ]
    dec = decompose_sl2(module, reg, hwvs=hwvs)
    table = extract(lie, dec, reg, op_symbol="[,]")
    compare("sl(3) table", table, expected_table(dec, reg, SL3_TABLE, "[,]"))
    return FixtureReport("sl(3)", {"table": table}, {"table": lie})


# ---------------------------------------------------------------------------
# K[x,y] truncated by total degree

def poly_fixture(max_degree) -> FixtureReport:
    """Graded polynomial multiplication: A_r1 * A_r2 = A_{r1+r2}, truncated."""
    if max_degree < 1:
        raise ValueError("max degree >= 1")
    D = max_degree
    reg = sl2_poly_labeling(D)
    dim = (D + 1) * (D + 2) // 2
    offs = {}
    pos = 0
    for r in range(D + 1):
        offs[r] = pos
        pos += r + 1
    action = {}
    for op in ("E", "H", "F"):
        rows = [[F(0)] * dim for _ in range(dim)]
        for r in range(D + 1):
            A = reg.models[IrrepId("SL2", r)].action[op]
            for i in range(r + 1):
                for j in range(r + 1):
                    rows[offs[r] + i][offs[r] + j] = A[i, j]
        action[op] = Matrix.from_rows(rows)
    module = GModule("SL2", dim, action)

    def product(u, v):
        out = [F(0)] * dim
        for r1 in range(D + 1):
            for i in range(r1 + 1):
                a = u[offs[r1] + i]
                if not a:
                    continue
                for r2 in range(D + 1 - r1):
                    for j in range(r2 + 1):
                        b = v[offs[r2] + j]
                        if b:
                            out[offs[r1 + r2] + i + j] += a * b
        return tuple(out)

    hwvs = []
    for r in range(D + 1):
        v = [F(0)] * dim
        v[offs[r]] = F(1)
        hwvs.append(("A_%d" % r, r, v))
    dec = decompose_sl2(module, reg, hwvs=hwvs)
    table = extract(product, dec, reg)
    cells = {}
    for r1 in range(D + 1):
        for r2 in range(D + 1 - r1):
            cells[("A_%d" % r1, "A_%d" % r2)] = [("A_%d" % (r1 + r2), 1, "1")]
    compare("K[x,y] table (degree <= %d)" % D, table,
            expected_table(dec, reg, cells))
    return FixtureReport("K[x,y]<=%d" % D, {"table": table}, {"table": product})
