"""Suite-level regression: statuses of every catalog entry are frozen."""

import pytest

from pk4lie.catalog import load_catalog
from pk4lie.verify import (
    link_curvature_metrics, run_curvature_rows, run_equivalence_witnesses,
    run_iso_rows, run_phase_rows, run_scope, run_structures, run_symplectic,
)

CAT = load_catalog()

# Rows whose printed verdict columns are internally inconsistent or clash
# with the worked computations; they carry notes and report both values.
CURVATURE_WARNS = {
    "curvature/r2r2_mu0/8",        # soliton printed with both signs flipped
    "curvature/r2p/7",             # duplicated eps14/eps41 term
    "curvature/r2p/8",             # duplicated eps14/eps41 term
    "curvature/r4_m1_0/3",         # flat column repeats the nonzero-beta row
    "curvature/r4_m1_m1/6:a",      # Ric=0 "No" yet a steady soliton at X=0
    "curvature/r4_m1_m1/6:b",
    "curvature/d4_1/2",            # Ric=0 "Yes" yet an Einstein constant
    "curvature/d4_2/7",            # missing x constraint; forced ric = 0
    "curvature/d4_2/10:a",         # Ric=0 "No" yet a steady soliton at X=0
    "curvature/d4_2/10:b",
    "curvature/d4_2/11:a",
    "curvature/d4_2/11:b",
    "curvature/d4_2/12",
}

WITNESS_WARNS = {
    "witness/transport/C2_3_00",   # printed pullback lists e24 for e14
    "witness/normalize/T3",        # printed T3 repeats T1's shape
    "witness/normalize/T4",        # printed K04 is not a conjugate of K4
}

# curvature rows whose literal metric matches no listed structure's metric
# under the documented renormalizations
UNLINKED_METRICS = {
    "curvature/d4_2/7", "curvature/d4_half/1", "curvature/d4_lam/4:b",
    "curvature/h4/1:a", "curvature/h4/1:b", "curvature/r2p/7",
    "curvature/r2p/8",
}


def test_symplectic_suite_all_pass():
    reports = run_symplectic(CAT)
    assert len(reports) == 24
    assert all(r.status == "PASS" for r in reports), [
        r.entry_id for r in reports if r.status != "PASS"]


def test_structures_suite_all_pass():
    reports = run_structures(CAT, samples=8)
    assert len(reports) == 98
    assert all(r.status == "PASS" for r in reports), [
        r.entry_id for r in reports if r.status != "PASS"]


def test_phase_suite_all_pass():
    reports = run_phase_rows(CAT, samples=4)
    assert len(reports) == 45
    assert all(r.status == "PASS" for r in reports), [
        r.entry_id for r in reports if r.status != "PASS"]


def test_iso_suite_all_pass():
    reports = run_iso_rows(CAT, samples=4)
    assert len(reports) == 88
    assert all(r.status == "PASS" for r in reports), [
        (r.entry_id, r.status) for r in reports if r.status != "PASS"]


def test_curvature_suite_statuses_frozen():
    reports = run_curvature_rows(CAT)
    assert len(reports) == 115
    assert not any(r.status == "FAIL" for r in reports), [
        r.entry_id for r in reports if r.status == "FAIL"]
    warns = {r.entry_id for r in reports if r.status == "WARN"}
    assert warns == CURVATURE_WARNS
    for r in reports:
        if r.status == "WARN":
            assert r.notes  # both values are reported, never overwritten


def test_witness_suite_statuses_frozen():
    reports = run_equivalence_witnesses(CAT)
    assert not any(r.status == "FAIL" for r in reports)
    warns = {r.entry_id for r in reports if r.status == "WARN"}
    assert warns == WITNESS_WARNS


def test_metric_linkage_frozen():
    links = link_curvature_metrics(CAT)
    unmatched = {k for k, v in links.items() if v is None}
    assert unmatched == UNLINKED_METRICS
    # the worked example's two metrics resolve to their structures
    assert links["curvature/d4_half/2:a"] == "structures/d4_half/K2"


def test_reports_deterministic_for_fixed_seed():
    a = [r.to_dict() for r in run_symplectic(CAT, seed=7)]
    b = [r.to_dict() for r in run_symplectic(CAT, seed=7)]
    assert a == b
    c = [r.to_dict() for r in run_curvature_rows(CAT, seed=3)]
    d = [r.to_dict() for r in run_curvature_rows(CAT, seed=3)]
    assert c == d


def test_unreferenced_phase_rows_reported():
    # two bracket families never appear as a source in the isomorphism
    # tables; the catalog reports them rather than inventing rows
    from pk4lie.verify import unreferenced_phase_rows
    assert unreferenced_phase_rows(CAT) == ["phase_b/B1_m1_2",
                                            "phase_b/B3_half_3"]


def test_run_scope_all():
    reports = run_scope(CAT, "symplectic", seed=1, trials=4)
    assert reports
    with pytest.raises(ValueError):
        run_scope(CAT, "nonsense")
