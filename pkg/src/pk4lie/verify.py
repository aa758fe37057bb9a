"""Verification suites over the catalog, with WARN-aware reporting.

Each suite returns a list of EntryReport records.  A row whose computed
values disagree with its printed columns FAILs unless the row carries a
transcription note, in which case it WARNs and both values are reported;
a WARN still requires the computed values to be internally consistent.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .catalog import Catalog, CurvatureRowEntry, IsoRowEntry, iso_row_payload
from .curvature import classify_row, ricci, soliton_family_equal
from .liealg import LieAlgebra4, ce_d, pfaffian_nondegenerate
from .linalg import Mat4, RankAmbiguous, mat_from_cols, vis_zero
from .morphisms import LinMap, check_equivalence, check_lie_isomorphism, transport
from .notation import emit_endo, emit_two_form, parse_endo, parse_two_form
from .scalars import ParamDomain, Scalar
from .structures import levi_civita, metric_from, validate_para_kahler

NF_OMEGA_TEXT = "e13+e24"
NF_K_TEXT = "E11+E22-E33-E44"


@dataclass
class EntryReport:
    entry_id: str
    status: str  # "PASS" | "WARN" | "FAIL"
    checks: List[dict] = field(default_factory=list)
    notes: str = ""

    def add(self, name: str, ok: bool, detail: str = ""):
        self.checks.append({"name": name, "ok": ok,
                            **({"detail": detail} if detail else {})})

    def to_dict(self) -> dict:
        return {"entry": self.entry_id, "status": self.status,
                "checks": self.checks, **({"notes": self.notes} if self.notes else {})}


def _status(reports: List[EntryReport]) -> str:
    if any(r.status == "FAIL" for r in reports):
        return "FAIL"
    if any(r.status == "WARN" for r in reports):
        return "WARN"
    return "PASS"


# ---------------------------------------------------------------------------
# Suite: symplectic rows (Jacobi, closedness, nondegeneracy)


def run_symplectic(cat: Catalog, seed: int = 0, trials: int = 32) -> List[EntryReport]:
    out = []
    for key, sym in cat.symplectic.items():
        rep = EntryReport(key, "PASS")
        alg_entry = cat.algebra_entry(sym.alg_ref)
        L = alg_entry.algebra()
        omega = parse_two_form(sym.omega_text())
        dom = L.domain.merged(ParamDomain.parse(sym.raw.get("domain", "")))
        rep.add("jacobi", L.is_lie_algebra(dom))
        rep.add("omega_antisymmetric", omega.is_antisymmetric(dom))
        rep.add("omega_closed", ce_d(L, omega).is_zero(dom))
        nd = pfaffian_nondegenerate(omega, dom, trials=trials, seed=seed)
        rep.add("omega_nondegenerate", nd.kind == "NonZero", nd.kind)
        if not all(c["ok"] for c in rep.checks):
            rep.status = "FAIL"
        out.append(rep)
    return out


# ---------------------------------------------------------------------------
# Suite: para-Kahler structures (nine-point validation per entry)


def run_structures(cat: Catalog, seed: int = 0, samples: int = 32) -> List[EntryReport]:
    out = []
    for st in cat.structure_list():
        vrep = validate_para_kahler(st.algebra, st.omega, st.K, st.domain,
                                    st.entry_id, signature_samples=samples,
                                    seed=seed)
        rep = EntryReport(st.entry_id, "PASS" if vrep.valid else "FAIL")
        for c in vrep.checks:
            rep.add(c.name, c.passed, c.detail)
        out.append(rep)
    return out


# ---------------------------------------------------------------------------
# Suite: phase-space rows (Jacobi + normal form + Lagrangian eigenplanes)


def run_phase_rows(cat: Catalog, seed: int = 0, samples: int = 16) -> List[EntryReport]:
    nf_omega = parse_two_form(NF_OMEGA_TEXT)
    nf_k = parse_endo(NF_K_TEXT)
    out = []
    for entry_id, row in cat.phase_rows.items():
        rep = EntryReport(entry_id, "PASS")
        L = row.algebra()
        dom = L.domain
        rep.add("jacobi", L.is_lie_algebra(dom))
        vrep = validate_para_kahler(L, nf_omega, nf_k, dom, entry_id,
                                    signature_samples=samples, seed=seed)
        rep.add("normal_form_structure", vrep.valid,
                "" if vrep.valid else ",".join(vrep.failing()))
        # span(e1,e2) and span(e3,e4) are the K eigenplanes; they must be
        # bracket-closed and omega-Lagrangian.
        plus_closed = all(L.bracket_basis(0, 1)[r].is_zero for r in (2, 3))
        minus_closed = all(L.bracket_basis(2, 3)[r].is_zero for r in (0, 1))
        rep.add("eigenplanes_bracket_closed", plus_closed and minus_closed)
        lagr = nf_omega.rows[0][1].is_zero and nf_omega.rows[2][3].is_zero
        rep.add("eigenplanes_lagrangian", lagr)
        if not all(c["ok"] for c in rep.checks):
            rep.status = "FAIL"
        out.append(rep)
    return out


# ---------------------------------------------------------------------------
# Suite: isomorphism rows


def run_iso_rows(cat: Catalog, seed: int = 0, samples: int = 16) -> List[EntryReport]:
    out = []
    for entry_id, row in cat.iso_rows.items():
        out.append(_verify_iso_row(cat, entry_id, row, seed, samples))
    return out


def _verify_iso_row(cat: Catalog, entry_id: str, row: IsoRowEntry,
                    seed: int, samples: int) -> EntryReport:
    rep = EntryReport(entry_id, "PASS", notes=row.raw.get("notes", ""))
    source, p, target, dom = iso_row_payload(cat, row)
    m = LinMap(p, target, source, dom)
    inv = m.invertible(seed=seed)
    rep.add("invertible", inv.kind == "NonZero", inv.kind)
    ok, res = check_lie_isomorphism(m)
    if ok:
        rep.add("lie_isomorphism", True)
    else:
        bad = {f"[f{i+1},f{j+1}]": [str(c) for c in v]
               for (i, j), v in res.items() if not vis_zero(v, dom)}
        rep.add("lie_isomorphism", False, f"residuals {bad}")
    nf_omega = parse_two_form(NF_OMEGA_TEXT)
    nf_k = parse_endo(NF_K_TEXT)
    try:
        w, k = transport(m, nf_omega, nf_k)
        vrep = validate_para_kahler(target, w, k, dom, entry_id,
                                    signature_samples=samples, seed=seed)
        rep.add("transported_structure_valid", vrep.valid,
                "" if vrep.valid else ",".join(vrep.failing()))
    except Exception as e:  # degenerate map: already reported above
        rep.add("transported_structure_valid", False, repr(e))
    if not all(c["ok"] for c in rep.checks):
        rep.status = "WARN" if rep.notes else "FAIL"
    return rep


# ---------------------------------------------------------------------------
# Suite: curvature rows


def run_curvature_rows(cat: Catalog, seed: int = 0) -> List[EntryReport]:
    out = []
    for row in cat.curvature_list():
        out.append(_verify_curvature_row(row, seed))
    return out


def _verify_curvature_row(row: CurvatureRowEntry, seed: int = 0) -> EntryReport:
    rep = EntryReport(row.entry_id, "PASS", notes=row.notes)
    L, h, dom = row.algebra, row.metric, row.domain
    det = h.det()
    if dom.is_zero(det):
        rep.add("metric_nondegenerate", False, "identically degenerate")
        rep.status = "FAIL"
        return rep
    branch_note = ""
    try:
        computed = classify_row(L, h, dom)
    except RankAmbiguous as e:
        from .linalg import _linear_root
        from .scalars import Constraint
        num = dom.reduce(e.poly.num) if hasattr(e.poly, "num") else e.poly
        root = _linear_root(num)
        if root is None:
            rep.add("classified", False, f"rank ambiguous: {e.poly!r}")
            rep.status = "FAIL"
            return rep
        var, value = root
        generic = type(dom)(dom.constraints + [Constraint(num, "!=")],
                            dom.radicals)
        computed = classify_row(L, h, generic)
        try:
            special = classify_row(L.substitute({var: value}),
                                   h.substitute({var: value}), dom)
            sp = ("none" if special.soliton is None else
                  f"lam={special.soliton.lam}")
            branch_note = (f"rank jumps at {var.name}={value}; on that slice "
                           f"flat={special.flat}, ricci_flat={special.ricci_flat}, "
                           f"soliton {sp}; columns below are the generic branch")
        except Exception:
            branch_note = (f"rank jumps at {var.name}={value}; columns below "
                           f"are the generic branch")
        dom = generic
        rep.add("classified_on_generic_branch", True, branch_note)
    rep.add("flat", computed.flat == row.expect_flat,
            f"computed {computed.flat}, printed {row.expect_flat}")
    rep.add("ricci_flat", computed.ricci_flat == row.expect_ricci_flat,
            f"computed {computed.ricci_flat}, printed {row.expect_ricci_flat}")
    conn = levi_civita(L, h, dom)
    ric = ricci(L, conn, dom)
    same, why = soliton_family_equal(L, h, ric, computed.soliton,
                                     row.expect_x, row.expect_lam, dom)
    printed = ("none" if row.expect_x is None else
               f"lam={row.expect_lam}, X=({','.join(str(c) for c in row.expect_x)})")
    got = ("none" if computed.soliton is None else
           f"lam={computed.soliton.lam}, X=({','.join(str(c) for c in computed.soliton.x)})")
    rep.add("soliton_family", same, f"computed {got}; printed {printed}" +
            (f"; {why}" if why else ""))
    if computed.soliton is not None:
        from .curvature import soliton_residual
        resid = soliton_residual(L, h, computed.soliton.x, computed.soliton.lam, ric)
        rep.add("soliton_residual_zero", resid.is_zero(dom))
    if computed.flat and not computed.ricci_flat:
        rep.add("flat_implies_ricci_flat", False)
    if not all(c["ok"] for c in rep.checks):
        rep.status = "WARN" if row.notes else "FAIL"
    return rep


# ---------------------------------------------------------------------------
# Suite: worked equivalence witnesses on the algebra with bracket [e1,e2]=e2


def run_equivalence_witnesses(cat: Catalog, seed: int = 0) -> List[EntryReport]:
    """Replays the four-fold pullback to (omega0, K0i), the normalizing
    automorphism families, the equivalence witness and the two
    non-equivalence residuals, exactly as parameter identities."""
    reports: List[EntryReport] = []
    rr30 = LieAlgebra4.parse("[e1,e2]=e2", "rr3_0")
    omega0 = parse_two_form("e12+e34")
    nf_omega = parse_two_form(NF_OMEGA_TEXT)
    nf_k = parse_endo(NF_K_TEXT)
    a21, a33, a34, a43, a44, y = (Scalar.var(n) for n in
                                  ("a21", "a33", "a34", "a43", "a44", "y"))
    one, zero = Scalar.const(1), Scalar.const(0)
    dom = ParamDomain.parse("a44 != 0, a34 != 0")

    # the four sources and printed pullbacks
    sources = [
        ("iso_c/C1_6", {}, "e12-e34", "-E11+E22-E33+E44"),
        ("iso_c/C2_1_0", {}, "-e12+e34", "E11-2*y*E12-E22+E33-E44"),
        ("iso_c/C2_2_00", {}, "-e12+e34", "E11-E22+E33-E44"),
        ("iso_c/C2_3_00", {}, "-e12+e24+e34", "E11-E22+E33-E44"),
    ]
    transported: List[Tuple[Mat4, Mat4]] = []
    for ref, _, w_text, k_text in sources:
        rep = EntryReport(f"witness/transport/{ref.split('/')[-1]}", "PASS")
        row = cat.iso_rows[ref]
        source, p, target, rdom = iso_row_payload(cat, row)
        m = LinMap(p, target, source, rdom)
        ok, _ = check_lie_isomorphism(m)
        rep.add("lie_isomorphism", ok)
        w, k = transport(m, nf_omega, nf_k)
        w_print = parse_two_form(w_text)
        k_print = parse_endo(k_text)
        w_ok = w.equals(w_print, rdom)
        k_ok = k.equals(k_print, rdom)
        if not k_ok and Scalar.var("y").params() <= k.params():
            # the branch parameter is free, so y -> -y is a relabelling
            flipped = k.substitute({next(iter(Scalar.var("y").params())):
                                    -Scalar.var("y")})
            if flipped.equals(k_print, rdom):
                k_ok = True
                rep.notes = ("printed K corresponds to the branch parameter "
                             "-y; the free parameter makes both families equal")
        rep.add("omega_matches_printed", w_ok,
                "" if w_ok else f"computed {emit_two_form(w)}, printed {w_text}")
        rep.add("K_matches_printed", k_ok,
                "" if k_ok else f"computed {emit_endo(k)}, printed {k_text}")
        if ref == "iso_c/C2_3_00" and not w_ok:
            rep.notes = ("printed pullback lists e24 where the computed "
                         "transport gives e14; the normalizing map below "
                         "matches the computed form")
            rep.status = "WARN"
        elif not all(c["ok"] for c in rep.checks):
            rep.status = "FAIL"
        transported.append((w, k))
        reports.append(rep)

    # the normalizing families T1..T4 as printed
    q_minus = (a34 * a43 - one) / a44
    q_plus = (a34 * a43 + one) / a44
    t_cols = {
        "T1": [[one, a21, zero, zero], [zero, one, zero, zero],
               [zero, zero, q_minus, a43], [zero, zero, a34, a44]],
        "T2": [[one, a21, zero, zero], [zero, -one, zero, zero],
               [zero, zero, q_plus, a43], [zero, zero, a34, a44]],
        "T3": [[one, a21, zero, zero], [zero, one, zero, zero],
               [zero, zero, q_minus, a43], [zero, zero, a34, a44]],
        "T4": [[one, a21, -one, zero], [zero, -one, zero, zero],
               [zero, zero, q_plus, a43], [zero, zero, a34, a44]],
    }
    printed_k0 = ["-E11+E22-E33+E44", "E11+2*y*E12-E22+E33-E44",
                  "E11-E22+E33-E44", "-E11+E22+E33-E44"]
    norm_subst = {a21.params().pop(): zero, a34.params().pop(): zero,
                  a43.params().pop(): zero}
    for i, name in enumerate(("T1", "T2", "T3", "T4")):
        rep = EntryReport(f"witness/normalize/{name}", "PASS")
        t = mat_from_cols(t_cols[name])
        tm = LinMap(t, rr30, rr30, dom)
        auto_ok, _ = check_lie_isomorphism(tm)
        rep.add("automorphism", auto_ok)
        w_i, k_i = transported[i]
        pull = t.transpose() @ w_i @ t
        pull_ok = pull.equals(omega0, dom)
        rep.add("pullback_is_omega0", pull_ok,
                "" if pull_ok else f"T*omega_i = {emit_two_form(pull)}")
        if name == "T3" and not pull_ok:
            # printed T3 repeats T1's shape; the sign of the (2,2) entry
            # must flip to pull -e12+e34 back to e12+e34
            rep.notes = ("printed T3 has +1 at (2,2) and (a34*a43-1)/a44 at "
                         "(3,3); the corrected form (T2's shape) verifies")
            t_fixed = mat_from_cols([[one, a21, zero, zero],
                                     [zero, -one, zero, zero],
                                     [zero, zero, q_plus, a43],
                                     [zero, zero, a34, a44]])
            fixed_ok = (t_fixed.transpose() @ w_i @ t_fixed).equals(omega0, dom)
            rep.add("corrected_pullback_is_omega0", fixed_ok)
            t = t_fixed
            rep.status = "WARN" if fixed_ok else "FAIL"
        elif not all(c["ok"] for c in rep.checks):
            rep.status = "FAIL"
        # normalized conjugation at a21 = a34 = a43 = 0, a44 symbolic
        t0 = t.substitute(norm_subst)
        k0 = t0.inverse() @ k_i.substitute(norm_subst) @ t0
        k0_print = parse_endo(printed_k0[i])
        k0_ok = k0.equals(k0_print, dom)
        if not k0_ok and Scalar.var("y").params() <= k0.params():
            flipped = k0.substitute({next(iter(Scalar.var("y").params())):
                                     -Scalar.var("y")})
            if flipped.equals(k0_print, dom):
                k0_ok = True
                rep.notes = ("matches after the y -> -y relabelling of the "
                             "free branch parameter")
        rep.add("normalized_K_matches_printed", k0_ok,
                "" if k0_ok else f"computed {emit_endo(k0)}, printed {printed_k0[i]}")
        if not k0_ok:
            if name == "T4":
                if rep.notes:
                    rep.notes += "; "
                rep.notes += ("printed K04 = -E11+E22+E33-E44 is not a "
                              "conjugate of the computed K4: every "
                              "automorphism fixes the e1 coefficient, so "
                              "the (1,1) entry stays +1")
                rep.status = "WARN"
            else:
                rep.status = "FAIL"
        reports.append(rep)

    # equivalence witness L (printed): carries (omega0, K04) to (omega0, K01)
    rep = EntryReport("witness/equivalence/L", "PASS")
    L_mat = mat_from_cols([[one, zero, zero, zero], [zero, one, zero, zero],
                           [zero, zero, zero, -one], [zero, zero, one, zero]])
    lm = LinMap(L_mat, rr30, rr30)
    ok, _ = check_equivalence(lm, (omega0, parse_endo("-E11+E22+E33-E44")),
                              (omega0, parse_endo("-E11+E22-E33+E44")))
    rep.add("L_carries_K04_to_K01", ok)
    if not ok:
        rep.status = "FAIL"
    reports.append(rep)

    # non-equivalence residuals, exactly as parameter identities
    rep = EntryReport("witness/nonequivalence/residuals", "PASS")
    k01 = parse_endo("-E11+E22-E33+E44")
    k02 = parse_endo("E11+2*y*E12-E22+E33-E44")
    l1 = mat_from_cols([[one, a21, zero, zero], [zero, one, zero, zero],
                        [zero, zero, q_plus, a43], [zero, zero, a34, a44]])
    l2 = mat_from_cols([[one, a21, zero, zero], [zero, one, zero, zero],
                        [zero, zero, a33, -one / a34], [zero, zero, a34, zero]])
    for name, l in (("L1", l1), ("L2", l2)):
        lm = LinMap(l, rr30, rr30, dom)
        auto_ok, _ = check_lie_isomorphism(lm)
        rep.add(f"{name}_automorphism", auto_ok)
        symp = (l.transpose() @ omega0 @ l).equals(omega0, dom)
        rep.add(f"{name}_symplectomorphism", symp)
        diff = l.inverse() @ k01 @ l - k02
        if name == "L1":
            val = diff.rows[1][1]
            rep.add("L1_residual_is_2", val == Scalar.const(2), str(val))
        else:
            val = diff.rows[0][0]
            rep.add("L2_residual_is_minus_2", val == Scalar.const(-2), str(val))
    if not all(c["ok"] for c in rep.checks):
        rep.status = "FAIL"
    reports.append(rep)
    return reports


# ---------------------------------------------------------------------------
# Cross-reference: curvature metrics against structure metrics


def link_curvature_metrics(cat: Catalog) -> Dict[str, Optional[str]]:
    """For each curvature row, a structure whose induced metric matches the
    literal one (up to overall sign and simple parameter renormalizations);
    None when no listed structure matches."""
    by_alg: Dict[str, list] = {}
    for st in cat.structure_list():
        by_alg.setdefault(st.algebra.name, []).append(st)
    out: Dict[str, Optional[str]] = {}
    for row in cat.curvature_list():
        match = None
        for st in by_alg.get(row.algebra.name, []):
            try:
                hst = metric_from(st.omega, st.K, st.domain)
            except Exception:
                continue
            for cand_id, cand in _metric_candidates(hst):
                if cand.equals(row.metric):
                    match = st.entry_id + cand_id
                    break
            if match:
                break
        out[row.entry_id] = match
    return out


def _metric_candidates(h: Mat4):
    """The metric with its parameters renormalized in simple ways: sign
    flips, rescalings, shifts and zero specializations, plus an overall
    sign.  Used only to document which structure a curvature row's metric
    comes from."""
    params = {p.name: p for p in h.params() if p.name in ("x", "y")}
    x = Scalar.var("x")
    y = Scalar.var("y")
    x_subs = [("", None)]
    if "x" in params:
        for tag, v in (("-x", -x), ("0", Scalar.const(0)), ("2x", 2 * x),
                       ("-2x", -2 * x), ("x/2", x / 2), ("x+1", x + 1),
                       ("x-1", x - 1), ("1", Scalar.const(1)),
                       ("-1", Scalar.const(-1))):
            x_subs.append((f"[x->{tag}]", {params["x"]: v}))
    y_subs = [("", None)]
    if "y" in params:
        for tag, v in (("-y", -y), ("0", Scalar.const(0)), ("2y", 2 * y),
                       ("-2y", -2 * y), ("y/2", y / 2), ("-y/2", -y / 2),
                       ("x", x), ("-x", -x)):
            y_subs.append((f"[y->{tag}]", {params["y"]: v}))
    for xt, xs in x_subs:
        for yt, ys in y_subs:
            sub = {**(xs or {}), **(ys or {})}
            try:
                cand = h.substitute(sub) if sub else h
            except ZeroDivisionError:
                continue
            yield xt + yt, cand
            yield xt + yt + "[-]", -cand


def verify_isomorphism_tables(cat: Catalog, seed: int = 0,
                              samples: int = 16) -> List[EntryReport]:
    """Every isomorphism row: invertible on its condition, a Lie
    isomorphism onto its instantiated target, with the transported
    structure valid there."""
    return run_iso_rows(cat, seed=seed, samples=samples)


def unreferenced_phase_rows(cat: Catalog) -> List[str]:
    """Phase-space rows that no isomorphism row uses as its source; the
    printed tables reference some family labels they never define and omit
    others, so the mismatch is reported instead of repaired."""
    used = {row.source_ref for row in cat.iso_rows.values()}
    return [rid for rid in cat.phase_rows if rid not in used]


# ---------------------------------------------------------------------------
# Scope runner


SCOPES = ("symplectic", "structures", "phase", "iso", "curvature",
          "witnesses", "all")


def run_scope(cat: Catalog, scope: str, seed: int = 0,
              trials: int = 32) -> List[EntryReport]:
    if scope == "symplectic":
        return run_symplectic(cat, seed, trials)
    if scope == "structures":
        return run_structures(cat, seed, trials)
    if scope == "phase":
        return run_phase_rows(cat, seed)
    if scope == "iso":
        return run_iso_rows(cat, seed)
    if scope == "curvature":
        return run_curvature_rows(cat, seed)
    if scope == "witnesses":
        return run_equivalence_witnesses(cat, seed)
    if scope == "all":
        out = []
        for s in ("symplectic", "structures", "phase", "iso", "curvature",
                  "witnesses"):
            out.extend(run_scope(cat, s, seed, trials))
        return out
    raise ValueError(f"unknown scope {scope!r}")
