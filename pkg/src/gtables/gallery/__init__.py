"""Worked algebras end to end: fixed tables, the Heisenberg cohomology
pipeline, the gl(n) semidirect Poisson family, and the isomorphism between
them at n = 3."""

from .fixtures import (
    FixtureMismatch,
    mk_fixture,
    poly_fixture,
    s3_fixture,
    sl3_fixture,
)
from .heisenberg import HeisenbergReport, heisenberg_pipeline
from .glnfamily import (
    SizeMismatch,
    gln_axioms,
    gln_bracket,
    gln_element,
    gln_product,
    gln_sl2_tables,
    gln_tables,
)
from .isomorphism import NotFound, find_isomorphism


def run_all_fixtures():
    """Status lines for the verify suite."""
    out = []

    def attempt(name, detail, fn):
        try:
            fn()
            out.append((name, True, detail))
        except Exception as e:  # noqa: BLE001 - report, do not crash the suite
            out.append((name, False, "%s: %s" % (detail, e)))

    attempt("gallery: K[S3] table and cotable", "5x5 fixtures", s3_fixture)
    attempt("gallery: M_k tables", "k = 2..5",
            lambda: [mk_fixture(k) for k in (2, 3, 4, 5)])
    attempt("gallery: sl(3) under the corner SL(2)", "4x4 fixture", sl3_fixture)
    attempt("gallery: truncated polynomial algebra", "degree 4",
            lambda: poly_fixture(4))
    attempt("gallery: Heisenberg cohomology pipeline", "cup + bracket tables",
            heisenberg_pipeline)
    attempt("gallery: gl(n) semidirect family", "tables at n = 3",
            lambda: gln_tables(3))
    return out
