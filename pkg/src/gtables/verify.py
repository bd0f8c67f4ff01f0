"""Property suites: randomized algebra corpus and identity checks.

Everything is seeded, so `verify` output and the test suite are deterministic.
The corpus builds small G-algebras directly from registry pieces: a module is
a block sum of model irreducibles, tau maps are scaled block inclusions, and
the product is assembled from randomly drawn table coefficients, which makes
it equivariant by construction and gives extraction an exact target to
recover.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .exactla import Matrix
from .gtable import (
    GMatrix,
    GTable,
    check_morphism,
    corollary_check,
    expand,
    extract,
    morphism_oracle,
)
from .repkit import (
    Decomposition,
    GModule,
    IrrepId,
    Summand,
    builtin_labeling,
)

F = Fraction

COEFF_POOL = [F(0), F(0), F(0), F(1), F(-1), F(2), F(-2), F(1, 2)]


def _block_module(registry, irreps):
    models = [registry.models[i] for i in irreps]
    dim = sum(m.dim for m in models)
    ops = list(models[0].action)
    action = {}
    for op in ops:
        rows = [[F(0)] * dim for _ in range(dim)]
        off = 0
        for m in models:
            A = m.action[op]
            for i in range(m.dim):
                for j in range(m.dim):
                    rows[off + i][off + j] = A[i, j]
            off += m.dim
        action[op] = Matrix.from_rows(rows)
    return GModule(registry.group, dim, action, validate=False)


def random_galgebra(rng, registry, irrep_pool, n_summands, prefix="A"):
    """(decomposition, table entries, product callable) for a random algebra."""
    irreps = [irrep_pool[rng.randrange(len(irrep_pool))] for _ in range(n_summands)]
    module = _block_module(registry, irreps)
    summands = []
    off = 0
    for t, irr in enumerate(irreps):
        model = registry.models[irr]
        scale = F(rng.choice([1, 1, 2, -1]), rng.choice([1, 1, 2]))
        cols = []
        for j in range(model.dim):
            col = [F(0)] * module.dim
            col[off + j] = scale
            cols.append(col)
        summands.append(Summand("%s%d" % (prefix, t), irr,
                                Matrix.from_cols(cols, nrows=module.dim)))
        off += model.dim
    dec = Decomposition(module, registry, summands)
    entries = {}
    for r1 in summands:
        for r2 in summands:
            cell = []
            for s in summands:
                for q in range(1, registry.d(r1.irrep, r2.irrep, s.irrep) + 1):
                    c = rng.choice(COEFF_POOL)
                    if c:
                        cell.append((s.id, q, c))
            if cell:
                entries[(r1.id, r2.id)] = cell
    table = GTable(dec, dec, registry, entries)
    product = _product_from_table(table)
    return dec, table, product


def _product_from_table(table):
    # expand() works over the concatenated tau-image basis; translate module
    # coordinates through the basis matrix on both ends
    E = expand(table)
    B = table.source.basis_matrix()
    Binv = B.inverse()
    Bt = table.target.basis_matrix()

    def product(u, v):
        w = E.product_coords(Binv.matvec(u), Binv.matvec(v))
        return Bt.matvec(w)

    return product


def random_gmatrix(rng, source, target):
    entries = {}
    for x in target.summands:
        for r in source.summands:
            if x.irrep == r.irrep:
                c = rng.choice(COEFF_POOL)
                if c:
                    entries[(x.id, r.id)] = c
    return GMatrix(source, target, entries)


def _registry_pools():
    sl2 = builtin_labeling("SL2")
    s3 = builtin_labeling("S3")
    gl3 = builtin_labeling("GLk", k=3)
    return [
        (sl2, [IrrepId("SL2", 0), IrrepId("SL2", 1), IrrepId("SL2", 2)], 3),
        (s3, [IrrepId("S3", "tr"), IrrepId("S3", "sg"), IrrepId("S3", "std")], 3),
        (gl3, [IrrepId("GL3", "trivial"), IrrepId("GL3", "adjoint")], 2),
    ]


def morphism_corpus(cases=100, seed=2024):
    """Yield (tA, tB, f) over randomized small G-algebras.

    Every third case uses the identity map on a shared table (a guaranteed
    morphism) so that both outcomes of the equivalence are exercised.
    """
    rng = random.Random(seed)
    pools = _registry_pools()
    for c in range(cases):
        registry, pool, maxs = pools[c % len(pools)]
        nA = rng.randint(2, maxs)
        decA, tA, prodA = random_galgebra(rng, registry, pool, nA, prefix="a")
        got = extract(prodA, decA, registry, check_equivariance=False)
        assert got == tA, "extraction failed to recover a constructed table"
        if c % 3 == 0:
            yield tA, tA, GMatrix.identity(decA)
            continue
        nB = rng.randint(2, maxs)
        decB, tB, _ = random_galgebra(rng, registry, pool, nB, prefix="b")
        yield tA, tB, random_gmatrix(rng, decA, decB)


def run_morphism_equivalence(cases=100, seed=2024):
    """check_morphism vs direct phi(ab) = phi(a)phi(b), plus the plain corollary.

    Returns (cases run, number where all three agreed, number of morphisms seen).
    """
    agree = 0
    hits = 0
    total = 0
    for tA, tB, f in morphism_corpus(cases, seed):
        total += 1
        fast = check_morphism(tA, tB, f)
        slow = morphism_oracle(tA, tB, f)
        plain = corollary_check(tA, tB, f)
        if fast == slow == plain:
            agree += 1
        if fast:
            hits += 1
    return total, agree, hits


# ---------------------------------------------------------------------------
# named suites for the CLI

def _suite_exactla():
    import random as _r
    from .exactla import rref, solve, kernel
    rng = _r.Random(5)
    ok = True
    for _ in range(60):
        nrows, ncols = rng.randint(1, 7), rng.randint(1, 7)
        rows = [[F(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(ncols)]
                for _ in range(nrows)]
        if rref(rows, ncols, force="dense") != rref(rows, ncols, force="sparse"):
            ok = False
        M = Matrix.from_rows(rows, ncols)
        x = [F(rng.randint(-3, 3)) for _ in range(ncols)]
        got = solve(M, M.matvec(x))
        if got is None or M.matvec(got[0]) != M.matvec(x):
            ok = False
        if kernel(M).dim + M.rank() != ncols:
            ok = False
    return [("exactla: dense/sparse agreement and solve round trips", ok, "60 cases")]


def _suite_supercochain():
    from . import supercochain as sc
    rng = random.Random(77)
    results = []

    def rand(n, p, q):
        basis = sc.monomial_basis(n, p, q)
        terms = {}
        for m in basis:
            if rng.random() < 0.5:
                c = F(rng.randint(-3, 3), rng.randint(1, 2))
                if c:
                    terms[m] = c
        return sc.BigradedElement(terms)

    checks = {
        "super-commutativity of vee": True,
        "associativity of vee": True,
        "bracket antisymmetry": True,
        "Poisson identity": True,
        "super-Jacobi": True,
        "peeling-order independence": True,
    }
    for n in (2, 3, 4):
        for _ in range(70):
            p1, q1 = rng.randint(0, n), rng.randint(0, n)
            p2, q2 = rng.randint(0, n), rng.randint(0, n)
            p3, q3 = rng.randint(0, n), rng.randint(0, n)
            a, b, c = rand(n, p1, q1), rand(n, p2, q2), rand(n, p3, q3)
            s12 = -1 if ((p1 + q1) * (p2 + q2)) % 2 else 1
            if sc.vee(a, b) != sc.vee(b, a).scale(s12):
                checks["super-commutativity of vee"] = False
            if sc.vee(sc.vee(a, b), c) != sc.vee(a, sc.vee(b, c)):
                checks["associativity of vee"] = False
            if sc.bracket(a, b) != sc.bracket(b, a).scale(-s12):
                checks["bracket antisymmetry"] = False
            lhs = sc.bracket(sc.vee(a, b), c)
            rhs = sc.vee(a, sc.bracket(b, c)) + sc.vee(b, sc.bracket(a, c)).scale(s12)
            if lhs != rhs:
                checks["Poisson identity"] = False
            lhs = sc.bracket(a, sc.bracket(b, c))
            rhs = sc.bracket(sc.bracket(a, b), c) + \
                sc.bracket(b, sc.bracket(a, c)).scale(s12)
            if lhs != rhs:
                checks["super-Jacobi"] = False
            if sc.bracket(a, b, _pick=lambda k: rng.randrange(k)) != sc.bracket(a, b):
                checks["peeling-order independence"] = False
    ctx = sc.heisenberg_context()
    dsq = all(sc.differential(sc.differential(
        sc.BigradedElement({m: F(1)}), ctx), ctx).is_zero()
        for p in range(4) for q in range(4)
        for m in sc.monomial_basis(3, p, q))
    checks["d^2 = 0 on all monomials"] = dsq
    return [("supercochain: %s" % name, ok, "dims 2-4, 210 cases")
            for name, ok in checks.items()]


def _suite_gtable():
    total, agree, hits = run_morphism_equivalence(cases=60, seed=31)
    ok = agree == total
    return [("gtable: morphism criterion matches direct verification",
             ok, "%d cases, %d true morphisms" % (total, hits))]


def _suite_gallery():
    from .gallery import run_all_fixtures
    return run_all_fixtures()


SUITES = {
    "exactla": _suite_exactla,
    "supercochain": _suite_supercochain,
    "gtable": _suite_gtable,
    "gallery": _suite_gallery,
}


def run_suites(module=None, max_workers=None):
    """Run property suites, optionally restricted to one module.

    Suites are independent; GTABLE_THREADS (handled by the CLI) caps the
    worker count.  Aggregation order is fixed regardless of scheduling.
    """
    names = [module] if module else list(SUITES)
    for name in names:
        if name not in SUITES:
            raise KeyError(name)
    if max_workers and max_workers > 1 and len(names) > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            futures = {name: pool.submit(SUITES[name]) for name in names}
            results = {name: futures[name].result() for name in names}
    else:
        results = {name: SUITES[name]() for name in names}
    lines = []
    ok = True
    for name in names:
        for label, passed, detail in results[name]:
            ok = ok and passed
            lines.append("%s %s (%s)" % ("PASS" if passed else "FAIL", label, detail))
    return ok, lines
