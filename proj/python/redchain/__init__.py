"""Reduction chain 3-SAT -> quadratic congruences -> multiple-residue -> 2-stage ILP."""

from ._redchain import (  # noqa: F401
    ReductionError,
    encode_ilp,
    generate_corpus,
    mrd_to_ilp,
    qc_to_mrd,
    run_pipeline,
    sat_to_qc,
    simplify_dimacs,
    solve_mrd,
    solve_qc,
    solve_sat,
    verify_mrd,
    verify_qc,
)
