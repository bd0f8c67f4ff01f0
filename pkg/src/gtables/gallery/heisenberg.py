"""Even cohomology of the 3-dimensional Heisenberg algebra as a Poisson algebra.

The pipeline builds the bigraded complex, verifies the fixed highest weight
representatives per even bidegree, assembles the 18-dimensional class space on
their F-orbits, and extracts the cup-product and bracket tables, which must
match the fixed 10x10 tables cell for cell (zeros included).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ..exactla import Matrix
from ..gtable import GTable, extract, product_from_structure
from ..repkit import Decomposition, GModule, builtin_labeling, sl2_summand
from ..supercochain import (
    BigradedElement,
    bracket,
    cohomology,
    differential,
    heisenberg_context,
    monomial_basis,
    sl2_act,
    to_coords,
    vee,
)
from .fixtures import FixtureMismatch, compare, expected_table

F = Fraction
M = BigradedElement.monomial

# fixed highest weight representatives per even bidegree, in table order;
# indices: duals (x^-1, x^1, h^0), primals (x_1, x_-1, h_0)
HW_REPRESENTATIVES = [
    ("H_0^{0,0}", (0, 0), 0, BigradedElement.one()),
    ("H_0^{1,1}", (1, 1), 0, M((1,), (1,)) + M((0,), (0,)) + M((2,), (2,), 2)),
    ("H_2^{1,1}", (1, 1), 2, M((1,), (0,))),
    ("H_1^{2,0}", (2, 0), 1, M((1, 2), ())),
    ("H_1^{0,2}", (0, 2), 1, M((), (0, 2))),
    ("H_0^{2,2}", (2, 2), 0, M((0, 1), (0, 1))),
    ("H_2^{2,2}", (2, 2), 2, M((1, 2), (0, 2))),
    ("H_1^{3,1}", (3, 1), 1, M((0, 1, 2), (0,))),
    ("H_1^{1,3}", (1, 3), 1, M((1,), (0, 1, 2))),
    ("H_0^{3,3}", (3, 3), 0, M((0, 1, 2), (0, 1, 2))),
]

EVEN_BIDEGREES = [(0, 0), (2, 0), (1, 1), (3, 1), (0, 2), (2, 2), (1, 3), (3, 3)]
EXPECTED_DIMS = {(0, 0): 1, (2, 0): 2, (1, 1): 4, (3, 1): 2,
                 (0, 2): 2, (2, 2): 4, (1, 3): 2, (3, 3): 1}

CUP_TABLE = {
    ("H_0^{0,0}", "H_0^{0,0}"): [("H_0^{0,0}", 1, "1")],
    ("H_0^{1,1}", "H_0^{1,1}"): [("H_0^{2,2}", 1, "-6")],
    ("H_0^{1,1}", "H_2^{1,1}"): [("H_2^{2,2}", 1, "-2")],
    ("H_2^{1,1}", "H_0^{1,1}"): [("H_2^{2,2}", 1, "-2")],
    ("H_0^{1,1}", "H_1^{2,0}"): [("H_1^{3,1}", 1, "1")],
    ("H_1^{2,0}", "H_0^{1,1}"): [("H_1^{3,1}", 1, "1")],
    ("H_0^{1,1}", "H_1^{0,2}"): [("H_1^{1,3}", 1, "-1")],
    ("H_1^{0,2}", "H_0^{1,1}"): [("H_1^{1,3}", 1, "-1")],
    ("H_0^{1,1}", "H_0^{2,2}"): [("H_0^{3,3}", 1, "2")],
    ("H_0^{2,2}", "H_0^{1,1}"): [("H_0^{3,3}", 1, "2")],
    ("H_2^{1,1}", "H_2^{1,1}"): [("H_0^{2,2}", 1, "1")],
    ("H_2^{1,1}", "H_1^{2,0}"): [("H_1^{3,1}", 1, "1")],
    ("H_1^{2,0}", "H_2^{1,1}"): [("H_1^{3,1}", 1, "1")],
    ("H_2^{1,1}", "H_1^{0,2}"): [("H_1^{1,3}", 1, "1")],
    ("H_1^{0,2}", "H_2^{1,1}"): [("H_1^{1,3}", 1, "1")],
    ("H_2^{1,1}", "H_2^{2,2}"): [("H_0^{3,3}", 1, "-1")],
    ("H_2^{2,2}", "H_2^{1,1}"): [("H_0^{3,3}", 1, "-1")],
    ("H_1^{2,0}", "H_1^{0,2}"): [("H_0^{2,2}", 1, "1/2"), ("H_2^{2,2}", 1, "-1/2")],
    ("H_1^{0,2}", "H_1^{2,0}"): [("H_0^{2,2}", 1, "-1/2"), ("H_2^{2,2}", 1, "-1/2")],
    ("H_1^{2,0}", "H_1^{1,3}"): [("H_0^{3,3}", 1, "-1")],
    ("H_1^{1,3}", "H_1^{2,0}"): [("H_0^{3,3}", 1, "1")],
    ("H_1^{0,2}", "H_1^{3,1}"): [("H_0^{3,3}", 1, "-1")],
    ("H_1^{3,1}", "H_1^{0,2}"): [("H_0^{3,3}", 1, "1")],
}
for _sid, _, _, _ in HW_REPRESENTATIVES[1:]:
    CUP_TABLE[("H_0^{0,0}", _sid)] = [(_sid, 1, "1")]
    CUP_TABLE[(_sid, "H_0^{0,0}")] = [(_sid, 1, "1")]

BRACKET_TABLE = {
    ("H_0^{1,1}", "H_1^{2,0}"): [("H_1^{2,0}", 1, "3")],
    ("H_0^{1,1}", "H_1^{0,2}"): [("H_1^{0,2}", 1, "-3")],
    ("H_0^{1,1}", "H_1^{3,1}"): [("H_1^{3,1}", 1, "3")],
    ("H_0^{1,1}", "H_1^{1,3}"): [("H_1^{1,3}", 1, "-3")],
    ("H_2^{1,1}", "H_2^{1,1}"): [("H_2^{1,1}", 1, "-1")],
    ("H_2^{1,1}", "H_1^{2,0}"): [("H_1^{2,0}", 1, "-1")],
    ("H_2^{1,1}", "H_1^{0,2}"): [("H_1^{0,2}", 1, "-1")],
    ("H_2^{1,1}", "H_2^{2,2}"): [("H_2^{2,2}", 1, "-1")],
    ("H_2^{1,1}", "H_1^{3,1}"): [("H_1^{3,1}", 1, "-1")],
    ("H_2^{1,1}", "H_1^{1,3}"): [("H_1^{1,3}", 1, "-1")],
    ("H_1^{2,0}", "H_0^{1,1}"): [("H_1^{2,0}", 1, "-3")],
    ("H_1^{2,0}", "H_2^{1,1}"): [("H_1^{2,0}", 1, "1")],
    ("H_1^{2,0}", "H_1^{0,2}"): [("H_0^{1,1}", 1, "-1/2"), ("H_2^{1,1}", 1, "1/2")],
    ("H_1^{2,0}", "H_0^{2,2}"): [("H_1^{3,1}", 1, "1")],
    ("H_1^{2,0}", "H_2^{2,2}"): [("H_1^{3,1}", 1, "1")],
    ("H_1^{2,0}", "H_1^{1,3}"): [("H_0^{2,2}", 1, "-3/2"), ("H_2^{2,2}", 1, "-1/2")],
    ("H_1^{0,2}", "H_0^{1,1}"): [("H_1^{0,2}", 1, "3")],
    ("H_1^{0,2}", "H_2^{1,1}"): [("H_1^{0,2}", 1, "1")],
    ("H_1^{0,2}", "H_1^{2,0}"): [("H_0^{1,1}", 1, "-1/2"), ("H_2^{1,1}", 1, "-1/2")],
    ("H_1^{0,2}", "H_0^{2,2}"): [("H_1^{1,3}", 1, "1")],
    ("H_1^{0,2}", "H_2^{2,2}"): [("H_1^{1,3}", 1, "-1")],
    ("H_1^{0,2}", "H_1^{3,1}"): [("H_0^{2,2}", 1, "3/2"), ("H_2^{2,2}", 1, "-1/2")],
    ("H_0^{2,2}", "H_1^{2,0}"): [("H_1^{3,1}", 1, "-1")],
    ("H_0^{2,2}", "H_1^{0,2}"): [("H_1^{1,3}", 1, "-1")],
    ("H_2^{2,2}", "H_2^{1,1}"): [("H_2^{2,2}", 1, "-1")],
    ("H_2^{2,2}", "H_1^{2,0}"): [("H_1^{3,1}", 1, "-1")],
    ("H_2^{2,2}", "H_1^{0,2}"): [("H_1^{1,3}", 1, "1")],
    ("H_1^{3,1}", "H_0^{1,1}"): [("H_1^{3,1}", 1, "-3")],
    ("H_1^{3,1}", "H_2^{1,1}"): [("H_1^{3,1}", 1, "1")],
    ("H_1^{3,1}", "H_1^{0,2}"): [("H_0^{2,2}", 1, "3/2"), ("H_2^{2,2}", 1, "1/2")],
    ("H_1^{1,3}", "H_0^{1,1}"): [("H_1^{1,3}", 1, "3")],
    ("H_1^{1,3}", "H_2^{1,1}"): [("H_1^{1,3}", 1, "1")],
    ("H_1^{1,3}", "H_1^{2,0}"): [("H_0^{2,2}", 1, "-3/2"), ("H_2^{2,2}", 1, "1/2")],
}


def export_spec_obj(rep: "HeisenbergReport"):
    """Algebra spec-file content for the 18-dimensional bracket algebra.

    Feeding this back through the generic extraction path must reproduce the
    built-in bracket table byte for byte.
    """
    from ..exactla import scalar_to_str
    n = rep.module.dim
    action = {}
    for op in ("E", "H", "F"):
        A = rep.module.action[op]
        action[op] = [[scalar_to_str(A[i, j]) for j in range(n)]
                      for i in range(n)]
    offsets = {}
    pos = 0
    summands = []
    for sid, (p, q), w, _ in HW_REPRESENTATIVES:
        hwv = ["0"] * n
        hwv[pos] = "1"
        summands.append({"id": sid, "weight": w, "hwv": hwv})
        offsets[sid] = pos
        pos += w + 1
    return {
        "group": "SL2",
        "dim": n,
        "basis_names": ["%s.%d" % (sid, j) for (sid, j, _, _) in rep.basis_classes],
        "action": action,
        "product": [{"i": i, "j": j, "k": k, "c": scalar_to_str(c)}
                    for (i, j, k, c) in rep.bracket_structure],
        "summands": summands,
    }


class _Projector:
    """Exact class coordinates for one bidegree: first r entries of
    (A^T A)^-1 A^T z, where the columns of A are representatives then
    boundary generators."""

    def __init__(self, basis, reps, boundary):
        self.basis = basis
        self.nreps = len(reps)
        cols = [list(to_coords(z, basis)) for z in reps]
        cols += [list(b) for b in boundary.basis]
        A = Matrix.from_cols(cols, nrows=len(basis))
        At = A.transpose()
        self.P = (At @ A).inverse() @ At

    def coords(self, elt):
        z = to_coords(elt, self.basis)
        return self.P.matvec(z)[: self.nreps]


@dataclass
class HeisenbergReport:
    dims: dict
    total_even_dim: int
    verification: list  # (summand id, property name, bool)
    cup_table: GTable
    bracket_table: GTable
    module: GModule = field(repr=False, default=None)
    decomposition: Decomposition = field(repr=False, default=None)
    basis_classes: list = field(repr=False, default_factory=list)
    cup_structure: list = field(repr=False, default_factory=list)
    bracket_structure: list = field(repr=False, default_factory=list)

    def verified(self):
        return all(ok for (_, _, ok) in self.verification)


def _orbit(ctx, elt, weight):
    out = [elt]
    for _ in range(weight):
        out.append(sl2_act("F", out[-1], ctx))
    return out


def heisenberg_pipeline(check_fixtures=True) -> HeisenbergReport:
    ctx = heisenberg_context()
    reg = builtin_labeling("SL2")

    dims = {}
    verification = []
    by_bidegree = {}
    for sid, (p, q), w, rep in HW_REPRESENTATIVES:
        by_bidegree.setdefault((p, q), []).append((sid, w, rep))

    orbits = {}
    projectors = {}
    for (p, q) in EVEN_BIDEGREES:
        reps = []
        for sid, w, rep in by_bidegree[(p, q)]:
            orbits[sid] = _orbit(ctx, rep, w)
            reps.extend(orbits[sid])
        injected, boundary = cohomology(ctx, p, q, reps=reps)
        dims[(p, q)] = len(injected)
        projectors[(p, q)] = _Projector(monomial_basis(3, p, q), injected, boundary)
        for sid, w, rep in by_bidegree[(p, q)]:
            verification.append((sid, "cocycle", differential(rep, ctx).is_zero()))
            basis = monomial_basis(3, p, q)
            verification.append(
                (sid, "non-exact",
                 not cohomology(ctx, p, q)[1].contains(to_coords(rep, basis))))
            verification.append((sid, "highest weight",
                                 sl2_act("E", rep, ctx).is_zero()))
            verification.append(
                (sid, "weight %d" % w,
                 sl2_act("H", rep, ctx) == rep.scale(w)))
    total = sum(dims.values())

    # the 18-dimensional class space on the concatenated F-orbits
    basis_classes = []
    for sid, (p, q), w, rep in HW_REPRESENTATIVES:
        for j, elt in enumerate(orbits[sid]):
            basis_classes.append((sid, j, (p, q), elt))
    n18 = len(basis_classes)

    def project(elt):
        out = [F(0)] * n18
        for (pq, part) in elt.parts().items():
            if pq not in projectors:
                raise FixtureMismatch(
                    "Heisenberg", ("?", "?", "component in odd bidegree %s" % (pq,), ""))
            coords = projectors[pq].coords(part)
            k = 0
            for idx, (sid, j, pq2, _) in enumerate(basis_classes):
                if pq2 == pq:
                    out[idx] = coords[k]
                    k += 1
        return out

    action = {}
    for op in ("E", "H", "F"):
        cols = [project(sl2_act(op, elt, ctx))
                for (_, _, _, elt) in basis_classes]
        action[op] = Matrix.from_cols(cols, nrows=n18)
    module = GModule("SL2", n18, action)

    cup_struct = []
    bracket_struct = []
    for i, (_, _, _, a) in enumerate(basis_classes):
        for j, (_, _, _, b) in enumerate(basis_classes):
            for k, c in enumerate(project(vee(a, b))):
                if c:
                    cup_struct.append((i, j, k, c))
            for k, c in enumerate(project(bracket(a, b))):
                if c:
                    bracket_struct.append((i, j, k, c))
    cup = product_from_structure(n18, cup_struct)
    brk = product_from_structure(n18, bracket_struct)

    offsets = {}
    pos = 0
    for sid, (p, q), w, rep in HW_REPRESENTATIVES:
        offsets[sid] = pos
        pos += w + 1
    summands = []
    for sid, (p, q), w, rep in HW_REPRESENTATIVES:
        hwv = [F(0)] * n18
        hwv[offsets[sid]] = F(1)
        summands.append(sl2_summand(module, reg, w, hwv, sid))
    dec = Decomposition(module, reg, summands)

    cup_table = extract(cup, dec, reg, op_symbol="v")
    bracket_table = extract(brk, dec, reg, op_symbol="{,}")
    if check_fixtures:
        compare("Heisenberg cup table", cup_table,
                expected_table(dec, reg, CUP_TABLE, "v"))
        compare("Heisenberg bracket table", bracket_table,
                expected_table(dec, reg, BRACKET_TABLE, "{,}"))
        if total != 18:
            raise FixtureMismatch("Heisenberg",
                                  ("total", "dim", str(total), "18"))
        for pq, d in EXPECTED_DIMS.items():
            if dims[pq] != d:
                raise FixtureMismatch(
                    "Heisenberg", (str(pq), "dim", str(dims[pq]), str(d)))

    return HeisenbergReport(
        dims=dims,
        total_even_dim=total,
        verification=verification,
        cup_table=cup_table,
        bracket_table=bracket_table,
        module=module,
        decomposition=dec,
        basis_classes=basis_classes,
        cup_structure=cup_struct,
        bracket_structure=bracket_struct,
    )
