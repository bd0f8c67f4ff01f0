from fractions import Fraction

import pytest

from gtables.exactla import Matrix
from gtables.repkit import (
    Decomposition,
    GModule,
    IrrepId,
    NonDiagonalizableH,
    S3_ELEMENTS,
    builtin_labeling,
    decompose_s3,
    decompose_sl2,
    glk_basis,
    glk_coords,
    group_algebra_s3_conjugation,
    highest_weight_vectors,
    s3_compose,
    s3_inverse,
    sl2_poly_labeling,
)

F = Fraction


def heisenberg_module():
    # basis (x_1, x_-1, h_0); subscripts are H-weights
    return GModule("SL2", 3, {
        "E": Matrix.from_rows([[0, 1, 0], [0, 0, 0], [0, 0, 0]]),
        "H": Matrix.from_rows([[1, 0, 0], [0, -1, 0], [0, 0, 0]]),
        "F": Matrix.from_rows([[0, 0, 0], [1, 0, 0], [0, 0, 0]]),
    }, basis_names=["x1", "x-1", "h0"])


def test_s3_composition_table():
    assert s3_compose("(12)", "(23)") == "(123)"
    assert s3_compose("(23)", "(12)") == "(132)"
    assert s3_compose("(123)", "(132)") == "()"
    assert s3_inverse("(123)") == "(132)"
    for g in S3_ELEMENTS:
        assert s3_compose(g, s3_inverse(g)) == "()"


def test_all_labelings_equivariant():
    builtin_labeling("SL2").check_equivariance()
    builtin_labeling("S3").check_equivariance()
    builtin_labeling("GLk", k=2).check_equivariance()
    builtin_labeling("GLk", k=3).check_equivariance()
    sl2_poly_labeling(4).check_equivariance()


def test_sl2_intertwiner_values():
    reg = builtin_labeling("SL2")
    i0, i1, i2 = (IrrepId("SL2", n) for n in (0, 1, 2))
    det = reg.basis(i1, i1, i0)[0]
    assert det.apply((1, 0), (0, 1)) == (F(1),)
    assert det.apply((0, 1), (1, 0)) == (F(-1),)
    sym = reg.basis(i1, i1, i2)[0]
    # (1,0)x(1,0) -> -2E in (E,H,F) coordinates
    assert sym.apply((1, 0), (1, 0)) == (F(-2), F(0), F(0))
    assert sym.apply((1, 0), (0, 1)) == (F(0), F(1), F(0))
    comm = reg.basis(i2, i2, i2)[0]
    assert comm.apply((1, 0, 0), (1, 0, 0)) == (F(0), F(0), F(0))  # [A,A] = 0
    # [E, H] = -2E
    assert comm.apply((1, 0, 0), (0, 1, 0)) == (F(-2), F(0), F(0))
    tr = reg.basis(i2, i2, i0)[0]
    assert tr.apply((1, 0, 0), (0, 0, 1)) == (F(1),)  # tr(EF) = 1
    act = reg.basis(i2, i1, i1)[0]
    assert act.apply((1, 0, 0), (0, 1)) == (F(1), F(0))  # E acting on e2 gives e1


def test_sl2_braiding_convention():
    reg = builtin_labeling("SL2")
    i1, i2 = IrrepId("SL2", 1), IrrepId("SL2", 2)
    m21 = reg.basis(i2, i1, i1)[0]
    m12 = reg.basis(i1, i2, i1)[0]
    for a in range(3):
        A = tuple(F(1 if t == a else 0) for t in range(3))
        for x in range(2):
            v = tuple(F(1 if t == x else 0) for t in range(2))
            assert m12.apply(v, A) == m21.apply(A, v)


def test_glk_symmetric_map_vanishes_at_k2_and_k3_value():
    reg3 = builtin_labeling("GLk", k=3)
    iad = IrrepId("GL3", "adjoint")
    assert reg3.d(iad, iad, iad) == 2
    reg2 = builtin_labeling("GLk", k=2)
    iad2 = IrrepId("GL2", "adjoint")
    assert reg2.d(iad2, iad2, iad2) == 1
    # independence of the two k=3 maps as bilinear maps
    m1, m2 = reg3.basis(iad, iad, iad)
    rows = [list(m1.matrix.row(i)) for i in range(m1.matrix.nrows)]
    rows2 = [list(m2.matrix.row(i)) for i in range(m2.matrix.nrows)]
    flat1 = [x for r in rows for x in r]
    flat2 = [x for r in rows2 for x in r]
    M = Matrix.from_rows([flat1, flat2])
    assert M.rank() == 2


def test_glk_sym_map_against_matrix_formula():
    k = 3
    sparse_basis, _ = glk_basis(k)
    dense = [[[B.get((i, j), F(0)) for j in range(k)] for i in range(k)]
             for B in sparse_basis]
    reg = builtin_labeling("GLk", k=k)
    iad = IrrepId("GL%d" % k, "adjoint")
    msym = reg.basis(iad, iad, iad)[1]
    # independent oracle: evaluate AB+BA-(2/k)tr(AB)I with dense arithmetic
    import itertools
    for a, b in itertools.product(range(len(dense)), repeat=2):
        A, B = dense[a], dense[b]
        AB = [[sum(A[i][t] * B[t][j] for t in range(k)) for j in range(k)]
              for i in range(k)]
        BA = [[sum(B[i][t] * A[t][j] for t in range(k)) for j in range(k)]
              for i in range(k)]
        tr = sum(AB[i][i] for i in range(k))
        S = {(i, j): AB[i][j] + BA[i][j] - (F(2, k) * tr if i == j else 0)
             for i in range(k) for j in range(k)}
        ua = tuple(F(1 if t == a else 0) for t in range(len(dense)))
        ub = tuple(F(1 if t == b else 0) for t in range(len(dense)))
        assert list(msym.apply(ua, ub)) == glk_coords(S, k)


def test_s3_intertwiner_values():
    reg = builtin_labeling("S3")
    istd, isg = IrrepId("S3", "std"), IrrepId("S3", "sg")
    msg = reg.basis(istd, istd, isg)[0]
    assert msg.apply((1, 0), (0, 1)) == (F(1),)
    assert msg.apply((0, 1), (1, 0)) == (F(-1),)
    mtr = reg.basis(istd, istd, IrrepId("S3", "tr"))[0]
    assert mtr.apply((1, 0), (1, 0)) == (F(2),)
    assert mtr.apply((1, 0), (0, 1)) == (F(1),)
    # sg/std pair coincides under the braiding
    m_s_std = reg.basis(isg, istd, istd)[0]
    m_std_s = reg.basis(istd, isg, istd)[0]
    for x in ((1, 0), (0, 1)):
        assert m_s_std.apply((1,), x) == m_std_s.apply(x, (1,))
    assert m_s_std.apply((1,), (1, 0)) == (F(1), F(-2))


def test_highest_weight_vectors_heisenberg():
    M = heisenberg_module()
    hw = highest_weight_vectors(M)
    assert [(n, len(vs)) for n, vs in hw] == [(1, 1), (0, 1)]
    assert hw[0][1][0] == (F(1), F(0), F(0))  # x_1
    assert hw[1][1][0] == (F(0), F(0), F(1))  # h_0


def test_highest_weight_vectors_model_irrep():
    reg = builtin_labeling("SL2")
    for n in (0, 1, 2):
        m = reg.models[IrrepId("SL2", n)]
        M = GModule("SL2", m.dim, m.action)
        hw = highest_weight_vectors(M)
        assert [(w, len(vs)) for w, vs in hw] == [(n, 1)]
        assert hw[0][1][0] == m.hw_vector


def test_non_diagonalizable_h_rejected():
    M = GModule("SL2", 2, {
        "E": Matrix.zeros(2, 2),
        "H": Matrix.from_rows([[0, 1], [0, 0]]),
        "F": Matrix.zeros(2, 2),
    }, validate=False)
    with pytest.raises(NonDiagonalizableH):
        highest_weight_vectors(M)


def test_decompose_sl2_heisenberg():
    reg = builtin_labeling("SL2")
    M = heisenberg_module()
    dec = decompose_sl2(M, reg, hwvs=[("h_0", 0, (0, 0, 1)), ("h_1", 1, (1, 0, 0))])
    assert [s.id for s in dec.summands] == ["h_0", "h_1"]
    assert dec.epsilon("h_0") == IrrepId("SL2", 0)
    assert dec.by_id["h_0"].tau.col(0) == (F(0), F(0), F(1))
    # tau_1(1,0) = x_1 and tau_1(0,1) = F.x_1 = x_-1
    assert dec.by_id["h_1"].tau.col(0) == (F(1), F(0), F(0))
    assert dec.by_id["h_1"].tau.col(1) == (F(0), F(1), F(0))


def test_decompose_sl2_model_is_identity():
    reg = builtin_labeling("SL2")
    for n in (1, 2):
        m = reg.models[IrrepId("SL2", n)]
        M = GModule("SL2", m.dim, m.action)
        dec = decompose_sl2(M, reg)
        assert len(dec.summands) == 1
        assert dec.summands[0].tau == Matrix.identity(m.dim)


def test_decompose_sl2_auto_weights_on_c11():
    # g* (x) g for the Heisenberg algebra: weights 2, 0, 0 plus weight-1 copies
    M = heisenberg_module()
    reg = builtin_labeling("SL2")
    dual = {op: M.action[op].transpose().scale(-1) for op in ("E", "H", "F")}
    n = 3
    action = {}
    for op in ("E", "H", "F"):
        cols = []
        for i in range(n):
            for j in range(n):
                col = [F(0)] * (n * n)
                for a in range(n):
                    col[a * n + j] += dual[op][a, i]
                for b in range(n):
                    col[i * n + b] += M.action[op][b, j]
                cols.append(col)
        action[op] = Matrix.from_cols(cols, nrows=n * n)
    C11 = GModule("SL2", 9, action)
    hw = highest_weight_vectors(C11)
    mult = {w: len(vs) for w, vs in hw}
    assert mult[2] == 1 and mult[0] == 2
    dec = decompose_sl2(C11, reg)
    assert sorted(s.hwv_weight for s in dec.summands) == [0, 0, 1, 1, 2]


def test_decompose_s3_group_algebra_reference_spans():
    reg = builtin_labeling("S3")
    M = group_algebra_s3_conjugation()
    dec = decompose_s3(M, reg)
    by_label = {}
    for s in dec.summands:
        by_label.setdefault(s.irrep.label, []).append(s)
    assert len(by_label["tr"]) == 3
    assert len(by_label["sg"]) == 1
    assert len(by_label["std"]) == 1
    # sign summand is spanned by (123)-(132)
    assert by_label["sg"][0].tau.col(0) == (0, 0, 0, 0, F(1), F(-1))
    # standard summand matches u1 = (12)-(23), u2 = (12)-(13)
    std = by_label["std"][0]
    assert std.tau.col(0) == (0, F(1), F(-1), 0, 0, 0)
    assert std.tau.col(1) == (0, F(1), 0, F(-1), 0, 0)
    # trivial isotypic contains the projector 1_3 = (1/3)(2() - (123) - (132))
    cols = [list(s.tau.col(0)) for s in by_label["tr"]]
    A = Matrix.from_cols(cols, nrows=6)
    one3 = [F(2, 3), 0, 0, 0, F(-1, 3), F(-1, 3)]
    from gtables.exactla import solve
    assert solve(A, one3) is not None


def test_decompose_s3_std_tensor_square():
    # K2_std (x) K2_std decomposes as tr + sg + std (projector ranks 1,1,2)
    reg = builtin_labeling("S3")
    from gtables.repkit import _STD_MATRICES
    action = {}
    for g in S3_ELEMENTS:
        A = _STD_MATRICES[g]
        rows = []
        for i in range(2):
            for j in range(2):
                row = [F(A[i][a] * A[j][b]) for a in range(2) for b in range(2)]
                rows.append(row)
        action[g] = Matrix.from_rows(rows)
    M = GModule("S3", 4, action)
    dec = decompose_s3(M, reg)
    labels = sorted(s.irrep.label for s in dec.summands)
    assert labels == ["sg", "std", "tr"]


def test_decompose_s3_trivial_module():
    reg = builtin_labeling("S3")
    M = GModule("S3", 1, {g: Matrix.identity(1) for g in S3_ELEMENTS})
    dec = decompose_s3(M, reg)
    assert len(dec.summands) == 1
    assert dec.summands[0].irrep.label == "tr"


def test_poly_labeling_models():
    reg = sl2_poly_labeling(3)
    m2 = reg.models[IrrepId("SL2", 2)]
    # E = x d/dy on (x^2, xy, y^2)
    assert m2.action["E"].matvec((0, 1, 0)) == (F(1), F(0), F(0))
    assert m2.action["E"].matvec((0, 0, 1)) == (F(0), F(2), F(0))
    mult = reg.basis(IrrepId("SL2", 1), IrrepId("SL2", 2), IrrepId("SL2", 3))[0]
    # x * xy = x^2 y
    assert mult.apply((1, 0), (0, 1, 0)) == (F(0), F(1), F(0), F(0))


def test_decomposition_validation_catches_bad_tau():
    reg = builtin_labeling("SL2")
    M = heisenberg_module()
    from gtables.repkit import Summand
    bad = Summand("b", IrrepId("SL2", 0), Matrix.from_cols([(1, 0, 0)], nrows=3))
    with pytest.raises(ValueError):
        Decomposition(M, reg, [bad])


def test_decomposition_tau_serialization():
    reg = builtin_labeling("SL2")
    M = heisenberg_module()
    dec = decompose_sl2(M, reg, hwvs=[("h_0", 0, (0, 0, 1)), ("h_1", 1, (1, 0, 0))])
    js = dec.to_json(include_tau=True)
    assert js[0]["tau"] == [["0"], ["0"], ["1"]]
    assert js[1]["tau"] == [["1", "0"], ["0", "1"], ["0", "0"]]
    assert js[1]["irrep"] == {"group": "SL2", "label": 1}
