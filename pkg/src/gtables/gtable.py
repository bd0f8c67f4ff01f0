"""Equivariant multiplication tables: extraction, expansion, morphism checks.

A table stores, per pair of source summands (r1, r2), the coefficients
c_{r1,r2}^{s,q} of the product restricted to image(tau_r1) (x) image(tau_r2),
in the basis tau_s o m_q o (tau_r1 (x) tau_r2)^{-1} built from a labeling.
Extraction solves for the coefficients exactly on a full basis, so an
inconsistent system doubles as a non-equivariance (or wrong-registry)
detector.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .exactla import Matrix, rref, scalar_from_str, scalar_to_str, solve
from .repkit import Decomposition, IntertwinerRegistry

F = Fraction


class GTableError(Exception):
    pass


class NotEquivariant(GTableError):
    pass


class InconsistentSystem(GTableError):
    pass


class AmbiguousSystem(GTableError):
    pass


class ShapeMismatch(GTableError):
    pass


class MissingChoice(GTableError):
    pass


def _unit(n, i):
    v = [F(0)] * n
    v[i] = F(1)
    return tuple(v)


class GTable:
    """Coefficient family c_{r1,r2}^{s,q} over fixed decompositions."""

    def __init__(self, source: Decomposition, target: Decomposition,
                 registry: IntertwinerRegistry, entries, op_symbol="*"):
        self.source = source
        self.target = target
        self.registry = registry
        self.op_symbol = op_symbol
        # entries: {(r1_id, r2_id): ((s_id, q, c), ...)} with zero cells absent
        self.entries = {}
        tgt_order = {s.id: i for i, s in enumerate(target.summands)}
        for key, cell in entries.items():
            cell = tuple(sorted(((s, q, F(c)) for (s, q, c) in cell if c),
                                key=lambda t: (tgt_order[t[0]], t[1])))
            if cell:
                self.entries[key] = cell

    def cell(self, r1, r2):
        return self.entries.get((r1, r2), ())

    def cell_dict(self, r1, r2):
        return {(s, q): c for (s, q, c) in self.cell(r1, r2)}

    def summand_ids(self):
        return [s.id for s in self.source.summands]

    def __eq__(self, other):
        return (isinstance(other, GTable)
                and self.summand_ids() == other.summand_ids()
                and [s.id for s in self.target.summands] ==
                    [s.id for s in other.target.summands]
                and self.entries == other.entries)

    def first_difference(self, other):
        """(r1, r2, ours, theirs) for the first differing cell, or None."""
        for r1 in self.summand_ids():
            for r2 in self.summand_ids():
                a = self.cell(r1, r2)
                b = other.cell(r1, r2)
                if a != b:
                    return (r1, r2, a, b)
        return None


def extract(product, dec: Decomposition, registry: IntertwinerRegistry,
            target_dec: Decomposition | None = None, op_symbol="*",
            check_equivariance=True) -> GTable:
    """Coefficients of an equivariant bilinear map over the decompositions.

    ``product`` maps two module coordinate vectors to one (bilinear).  The
    solved coefficients reproduce the product exactly on every basis pair;
    failure modes: NotEquivariant (generator sample check), InconsistentSystem
    (no exact solution: wrong decomposition, wrong registry or non-equivariant
    product), AmbiguousSystem (dependent candidate intertwiner images).
    """
    target_dec = target_dec or dec
    module = dec.module
    if check_equivariance:
        _check_product_equivariance(product, module, target_dec.module)
    entries = {}
    for r1 in dec.summands:
        m1 = registry.models[r1.irrep]
        for r2 in dec.summands:
            m2 = registry.models[r2.irrep]
            pairs = [(a, b) for a in range(m1.dim) for b in range(m2.dim)]
            lhs = []
            for a, b in pairs:
                lhs.extend(product(r1.tau.col(a), r2.tau.col(b)))
            cands = []
            for s in target_dec.summands:
                for qi, m in enumerate(
                        registry.basis(r1.irrep, r2.irrep, s.irrep)):
                    col = []
                    for a, b in pairs:
                        # m on a unit tensor is a column of its matrix
                        w = m.matrix.col(a * m2.dim + b)
                        col.extend(s.tau.matvec(w))
                    cands.append((s.id, qi + 1, col))
            if not cands:
                if any(lhs):
                    raise InconsistentSystem(
                        "product on (%s, %s) is nonzero but the registry "
                        "reaches no target summand" % (r1.id, r2.id))
                continue
            # dedupe equation rows: the tensor structure repeats them heavily
            nc = len(cands)
            uniq = {}
            for t in range(len(lhs)):
                arow = tuple(c[2][t] for c in cands)
                b = lhs[t]
                if not any(arow):
                    if b:
                        raise InconsistentSystem(
                            "product on (%s, %s) has a component outside "
                            "the registry's reach" % (r1.id, r2.id))
                    continue
                if arow in uniq:
                    if uniq[arow] != b:
                        raise InconsistentSystem(
                            "product on (%s, %s) has a component outside "
                            "the registry's reach" % (r1.id, r2.id))
                else:
                    uniq[arow] = b
            if not uniq:
                continue
            pivots, red = rref([list(r) + [b] for r, b in uniq.items()], nc + 1)
            arank = sum(1 for p in pivots if p < nc)
            if arank < nc:
                raise AmbiguousSystem(
                    "dependent candidate maps at (%s, %s)" % (r1.id, r2.id))
            if nc in pivots:
                raise InconsistentSystem(
                    "product on (%s, %s) has a component outside the "
                    "registry's reach" % (r1.id, r2.id))
            sol = [red[i][nc] for i in range(nc)]
            cell = [(cands[i][0], cands[i][1], sol[i])
                    for i in range(nc) if sol[i]]
            if cell:
                entries[(r1.id, r2.id)] = cell
    return GTable(dec, target_dec, registry, entries, op_symbol=op_symbol)


def _check_product_equivariance(product, module, target_module, max_pairs=400):
    # a generator sample, strided over basis pairs on larger modules; the
    # exact full-basis verification happens anyway inside the extraction solve
    ops = _generator_sample(module)
    n = module.dim
    units = [_unit(n, i) for i in range(n)]
    stride = max(1, (n * n + max_pairs - 1) // max_pairs)
    for op in ops:
        X = module.action[op]
        Y = target_module.action[op]
        for t in range(0, n * n, stride):
            i, j = divmod(t, n)
            Xu = X.col(i)
            Xv = X.col(j)
            if module.group == "S3":
                lhs = product(Xu, Xv)
                rhs = Y.matvec(product(units[i], units[j]))
            else:
                a = product(Xu, units[j])
                b = product(units[i], Xv)
                lhs = tuple(x + y for x, y in zip(a, b))
                rhs = Y.matvec(product(units[i], units[j]))
            if tuple(lhs) != tuple(rhs):
                raise NotEquivariant(
                    "product fails equivariance at operator %s, basis "
                    "pair (%d, %d)" % (op, i, j))


def _generator_sample(module):
    from .repkit import generator_sample
    return generator_sample(module.group, module.action)


def product_from_structure(n, triples):
    """Bilinear map from sparse structure constants [(i, j, k, c), ...]."""
    table = {}
    for i, j, k, c in triples:
        table.setdefault((i, j), []).append((k, F(c)))

    def product(u, v):
        out = [F(0)] * n
        for i, a in enumerate(u):
            if a:
                for j, b in enumerate(v):
                    if b:
                        for k, c in table.get((i, j), ()):
                            out[k] += a * b * c
        return tuple(out)

    return product


# ---------------------------------------------------------------------------
# expansion back to ordinary structure constants

class ExpandedAlgebra:
    """Ordinary structure constants of a table on the concatenated model bases."""

    def __init__(self, basis, struct):
        self.basis = basis  # [(summand_id, model_index)]
        self.index = {u: i for i, u in enumerate(basis)}
        self.struct = struct  # {(i, j): {k: Fraction}}

    def product_coords(self, u, v):
        """Product of two coefficient vectors over the expanded basis."""
        out = {}
        for i, a in enumerate(u):
            if a:
                for j, b in enumerate(v):
                    if b:
                        for k, c in self.struct.get((i, j), {}).items():
                            out[k] = out.get(k, F(0)) + a * b * c
        return tuple(out.get(k, F(0)) for k in range(len(self.basis)))


def expand(table: GTable) -> ExpandedAlgebra:
    src = table.source
    tgt = table.target
    reg = table.registry
    basis = src.basis_index()
    Binv = tgt.basis_matrix().inverse()
    struct = {}
    offsets = {}
    pos = 0
    for s in src.summands:
        offsets[s.id] = pos
        pos += s.tau.ncols
    for r1 in src.summands:
        m1 = reg.models[r1.irrep]
        for r2 in src.summands:
            m2 = reg.models[r2.irrep]
            cell = table.cell(r1.id, r2.id)
            if not cell:
                continue
            for a in range(m1.dim):
                for b in range(m2.dim):
                    val = [F(0)] * tgt.module.dim
                    for (sid, q, c) in cell:
                        m = reg.basis(r1.irrep, r2.irrep,
                                      tgt.by_id[sid].irrep)[q - 1]
                        w = m.matrix.col(a * m2.dim + b)
                        img = tgt.by_id[sid].tau.matvec(w)
                        val = [x + c * y for x, y in zip(val, img)]
                    if any(val):
                        coords = Binv.matvec(val)
                        row = {k: c for k, c in enumerate(coords) if c}
                        struct[(offsets[r1.id] + a, offsets[r2.id] + b)] = row
    return ExpandedAlgebra(basis, struct)


# ---------------------------------------------------------------------------
# equivariant linear maps and the morphism criterion

class GMatrix:
    """Scalar family f_{x,r} of an equivariant map between decomposed modules."""

    def __init__(self, source: Decomposition, target: Decomposition, entries):
        self.source = source
        self.target = target
        self.entries = {}
        for (x, r), c in entries.items():
            c = F(c)
            if not c:
                continue
            if target.by_id[x].irrep != source.by_id[r].irrep:
                raise ShapeMismatch(
                    "f_{%s,%s} connects different isotypic types" % (x, r))
            self.entries[(x, r)] = c

    @staticmethod
    def identity(dec: Decomposition):
        return GMatrix(dec, dec, {(s.id, s.id): F(1) for s in dec.summands})

    def __getitem__(self, xr):
        return self.entries.get(xr, F(0))

    def scale_summand(self, rid, a):
        """New map with the column of source summand rid scaled by a."""
        out = dict(self.entries)
        for (x, r) in list(out):
            if r == rid:
                out[(x, r)] = out[(x, r)] * a
        return GMatrix(self.source, self.target, out)

    def as_matrix(self):
        """The assembled linear map on the expanded bases."""
        src_basis = self.source.basis_index()
        tgt_basis = self.target.basis_index()
        tgt_pos = {u: i for i, u in enumerate(tgt_basis)}
        cols = []
        for (rid, i) in src_basis:
            col = [F(0)] * len(tgt_basis)
            for x in self.target.summands:
                c = self[(x.id, rid)]
                if c:
                    col[tgt_pos[(x.id, i)]] = c
            cols.append(col)
        return Matrix.from_cols(cols, nrows=len(tgt_basis))

    def invertible(self):
        M = self.as_matrix()
        return M.nrows == M.ncols and M.rank() == M.nrows

    def to_json(self):
        return [{"x": x, "r": r, "c": scalar_to_str(c)}
                for (x, r), c in sorted(self.entries.items())]


def check_morphism(tA: GTable, tB: GTable, f: GMatrix) -> bool:
    """Coefficient criterion: f assembles to an algebra morphism iff

    sum_{s in R_y} c_{r1,r2}^{s,q} f_{y,s}
        = sum_{x1 in X_{r1}} sum_{x2 in X_{r2}} d_{x1,x2}^{y,q} f_{x1,r1} f_{x2,r2}

    for all r1, r2, y and q up to d^{eps(r1),eps(r2),eps(y)}.
    """
    if f.source is not tA.source and f.source.to_json() != tA.source.to_json():
        raise ShapeMismatch("f source does not match tA")
    reg = tA.registry
    A = tA.source
    B = tB.source
    for r1 in A.summands:
        X1 = [x.id for x in B.summands if x.irrep == r1.irrep]
        for r2 in A.summands:
            X2 = [x.id for x in B.summands if x.irrep == r2.irrep]
            cA = tA.cell_dict(r1.id, r2.id)
            for y in B.summands:
                dq = reg.d(r1.irrep, r2.irrep, y.irrep)
                for q in range(1, dq + 1):
                    lhs = F(0)
                    for s in A.summands:
                        if s.irrep == y.irrep:
                            c = cA.get((s.id, q))
                            if c:
                                lhs += c * f[(y.id, s.id)]
                    rhs = F(0)
                    for x1 in X1:
                        f1 = f[(x1, r1.id)]
                        if not f1:
                            continue
                        for x2 in X2:
                            f2 = f[(x2, r2.id)]
                            if not f2:
                                continue
                            d = tB.cell_dict(x1, x2).get((y.id, q))
                            if d:
                                rhs += d * f1 * f2
                    if lhs != rhs:
                        return False
    return True


def morphism_oracle(tA: GTable, tB: GTable, f: GMatrix) -> bool:
    """Direct check that the assembled map satisfies phi(ab) = phi(a)phi(b)."""
    EA = expand(tA)
    EB = expand(tB)
    phi = f.as_matrix()
    nA = len(EA.basis)
    for i in range(nA):
        u = _unit(nA, i)
        for j in range(nA):
            v = _unit(nA, j)
            ab = EA.product_coords(u, v)
            lhs = phi.matvec(ab)
            rhs = EB.product_coords(phi.matvec(u), phi.matvec(v))
            if lhs != tuple(rhs):
                return False
    return True


# ---------------------------------------------------------------------------
# plain algebras

class PlainAlgebra:
    """One abstract generator per summand; constants read off under a choice Q."""

    def __init__(self, ids, struct):
        self.ids = list(ids)
        self.struct = struct  # {(r1, r2): {s: Fraction}}

    def constants(self, r1, r2):
        return self.struct.get((r1, r2), {})


def occurring_triples(table: GTable):
    out = set()
    for r1 in table.source.summands:
        for r2 in table.source.summands:
            for s in table.target.summands:
                t = (r1.irrep, r2.irrep, s.irrep)
                if table.registry.d(*t):
                    out.add(t)
    return out


def plain_algebra(table: GTable, Q) -> PlainAlgebra:
    """Q maps (i1, i2, j) irrep triples to a q index in [1, d]."""
    for t in occurring_triples(table):
        if t not in Q:
            raise MissingChoice("choice undefined on %s" % (t,))
        if not 1 <= Q[t] <= table.registry.d(*t):
            raise MissingChoice("choice out of range on %s" % (t,))
    struct = {}
    for (r1, r2), cell in table.entries.items():
        e1 = table.source.by_id[r1].irrep
        e2 = table.source.by_id[r2].irrep
        row = {}
        for (s, q, c) in cell:
            if q == Q[(e1, e2, table.target.by_id[s].irrep)]:
                row[s] = c
        if row:
            struct[(r1, r2)] = row
    return PlainAlgebra([s.id for s in table.source.summands], struct)


def plain_map(f: GMatrix):
    """P(phi): linear map on plain bases, e_r -> sum_x f_{x,r} e_x."""
    return dict(f.entries)


def _plain_morphism(pA: PlainAlgebra, pB: PlainAlgebra, fmap, tgt_ids):
    for r1 in pA.ids:
        for r2 in pA.ids:
            cons = pA.constants(r1, r2)
            for y in tgt_ids:
                lhs = sum((c * fmap.get((y, s), F(0))
                           for s, c in cons.items()), F(0))
                rhs = F(0)
                for (x1, r1b), f1 in fmap.items():
                    if r1b != r1:
                        continue
                    for (x2, r2b), f2 in fmap.items():
                        if r2b != r2:
                            continue
                        rhs += f1 * f2 * pB.constants(x1, x2).get(y, F(0))
                if lhs != rhs:
                    return False
    return True


def corollary_check(tA: GTable, tB: GTable, f: GMatrix) -> bool:
    """P(phi) is a plain-algebra morphism for every choice Q."""
    triples = occurring_triples(tA) | occurring_triples(tB)
    reg = tA.registry
    choices = [{}]
    for t in sorted(triples, key=str):
        d = reg.d(*t)
        choices = [{**ch, t: q} for ch in choices for q in range(1, d + 1)]
    fmap = plain_map(f)
    tgt_ids = [s.id for s in tB.source.summands]
    for Q in choices:
        pA = plain_algebra(tA, Q)
        pB = plain_algebra(tB, Q)
        if not _plain_morphism(pA, pB, fmap, tgt_ids):
            return False
    return True


# ---------------------------------------------------------------------------
# cotables

def cotable(delta, dec: Decomposition, registry: IntertwinerRegistry,
            check_equivariance=True) -> GTable:
    """Table of the dual product of a comultiplication.

    ``delta`` maps basis index i to a list of (j, k, c) with
    Delta(e_i) = sum c e_j (x) e_k; the dual identification (so that ``dec``
    decomposes the dual module) is the caller's responsibility.
    """
    n = dec.module.dim

    def product(u, v):
        out = [F(0)] * n
        for i in range(n):
            for (j, k, c) in delta.get(i, ()):
                if u[j] and v[k]:
                    out[i] += c * u[j] * v[k]
        return tuple(out)

    return extract(product, dec, registry, op_symbol="*",
                   check_equivariance=check_equivariance)


# ---------------------------------------------------------------------------
# rendering

def _coeff_name(c, name):
    if c == 1:
        return name
    if c == -1:
        return "-" + name
    return "%s %s" % (scalar_to_str(c), name)


def _cell_text(table, r1, r2):
    cell = table.cell(r1, r2)
    if not cell:
        return ""
    e1 = table.source.by_id[r1].irrep
    e2 = table.source.by_id[r2].irrep
    bits = []
    for (s, q, c) in cell:
        d = table.registry.d(e1, e2, table.target.by_id[s].irrep)
        name = s if d == 1 else "%s[%d]" % (s, q)
        bits.append(_coeff_name(c, name))
    out = bits[0]
    for b in bits[1:]:
        out += " - " + b[1:] if b.startswith("-") else " + " + b
    return out


def to_text(table: GTable) -> str:
    ids = table.summand_ids()
    grid = [[table.op_symbol] + ids]
    for r1 in ids:
        grid.append([r1] + [_cell_text(table, r1, r2) for r2 in ids])
    widths = [max(len(row[j]) for row in grid) for j in range(len(grid[0]))]
    lines = []
    for i, row in enumerate(grid):
        cells = [row[j].ljust(widths[j]) for j in range(len(row))]
        lines.append(" " + " | ".join(cells).rstrip())
        if i == 0:
            lines.append("-" * len(lines[0]))
    return "\n".join(lines) + "\n"


def _latexify_name(name):
    if "{" in name or "^" in name:
        return name
    if "_" in name:
        head, sub = name.split("_", 1)
        return "%s_{%s}" % (head, sub)
    return name


def _latex_scalar(c):
    if c.denominator == 1:
        return str(c.numerator)
    sign = "-" if c < 0 else ""
    return "%s\\tfrac{%d}{%d}" % (sign, abs(c.numerator), c.denominator)


def _cell_latex(table, r1, r2):
    cell = table.cell(r1, r2)
    if not cell:
        return ""
    e1 = table.source.by_id[r1].irrep
    e2 = table.source.by_id[r2].irrep
    bits = []
    for (s, q, c) in cell:
        d = table.registry.d(e1, e2, table.target.by_id[s].irrep)
        name = _latexify_name(s)
        if d > 1:
            name = (name[:-1] + ",%d}" % q) if name.endswith("}") \
                else "%s_{%d}" % (name, q)
        if c == 1:
            bits.append(name)
        elif c == -1:
            bits.append("-" + name)
        else:
            bits.append("%s\\,%s" % (_latex_scalar(c), name))
    out = bits[0]
    for b in bits[1:]:
        out += " - " + b[1:] if b.startswith("-") else " + " + b
    return "$%s$" % out


def to_latex(table: GTable) -> str:
    ids = table.summand_ids()
    cols = "|c||" + "c|" * len(ids)
    lines = ["\\begin{tabular}{%s}" % cols, "\\hline"]
    header = ["$%s$" % table.op_symbol] + ["$%s$" % _latexify_name(i) for i in ids]
    lines.append(" & ".join(header) + " \\\\")
    lines.append("\\hline")
    lines.append("\\hline")
    for r1 in ids:
        row = ["$%s$" % _latexify_name(r1)] + \
              [_cell_latex(table, r1, r2) for r2 in ids]
        lines.append(" & ".join(row) + " \\\\")
        lines.append("\\hline")
    lines.append("\\end{tabular}")
    return "\n".join(lines) + "\n"


def to_json_obj(table: GTable):
    summands = []
    for s in table.source.summands:
        entry = {"id": s.id, "irrep": s.irrep.to_json()}
        if s.hwv_weight is not None:
            entry["hwv_weight"] = s.hwv_weight
        summands.append(entry)
    entries = []
    src_order = {s.id: i for i, s in enumerate(table.source.summands)}
    for (r1, r2) in sorted(table.entries,
                           key=lambda k: (src_order[k[0]], src_order[k[1]])):
        for (s, q, c) in table.entries[(r1, r2)]:
            entries.append({"r1": r1, "r2": r2, "s": s, "q": q,
                            "c": scalar_to_str(c)})
    return {
        "group": table.registry.group,
        "labeling": table.registry.labeling,
        "summands": summands,
        "entries": entries,
    }


def to_json(table: GTable) -> str:
    return json.dumps(to_json_obj(table), indent=2) + "\n"


class SerializedGTable:
    """Parsed JSON form of a table; enough to re-render and compare."""

    def __init__(self, obj):
        self.group = obj["group"]
        self.labeling = obj["labeling"]
        self.summands = obj["summands"]
        self.entries = obj["entries"]

    def to_json_obj(self):
        return {"group": self.group, "labeling": self.labeling,
                "summands": self.summands, "entries": self.entries}

    def to_json(self):
        return json.dumps(self.to_json_obj(), indent=2) + "\n"


def parse_gtable(text: str) -> SerializedGTable:
    obj = json.loads(text)
    st = SerializedGTable(obj)
    for e in st.entries:
        scalar_from_str(e["c"])  # validates scalar syntax
    return st


def render(table: GTable, fmt: str) -> str:
    if fmt == "text":
        return to_text(table)
    if fmt == "json":
        return to_json(table)
    if fmt == "latex":
        return to_latex(table)
    raise ValueError("unknown format %r" % fmt)
