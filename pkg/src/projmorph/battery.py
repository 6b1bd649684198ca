"""Property battery over a representation-finite algebra.

Each check returns a CheckResult; `finding` marks outcomes that are reported
rather than treated as failures.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import BoundQuiverAlgebra
from .arquiver import extend_to_P_quiver, knit_module_quiver, knit_P_quiver_direct, translation_isomorphism
from .ars import (ass_H_ending_at_P_object, ass_H_nakayama, ass_P_ending_at, ass_P_ending_at_P_to_zero,
                  ass_P_from_projinjective, ass_P_starting_at_zero_P,
                  ass_P_starting_at_zero_P_noninjective, certify_H, certify_mod,
                  middle_presentation_is_minimal, middle_term_presentation, six_term_sequence)
from .gvec import CyclicQuiver, g_additivity_check, injective_generation_check
from .modcat import (is_injective, is_isomorphic, is_projective,
                     knit_indecomposables, projective_cover, same_up_to_projectives, tau, transpose)
from .modules import hom_basis, projective_module
from .morphcat import (MorphObject, classify_indecomposable, cok_ses, from_t2_module, generating_family,
                       h_indecomposables, is_left_approximation, is_left_minimal, is_right_approximation,
                       is_right_minimal, is_right_minimal_module_map, is_selfinjective, left_P_approx,
                       left_P_approx_min, left_P_approx_selfinjective, left_P_approx_special,
                       p_indecomposables, presentation_object, right_P_approx, right_P_approx_min_cod,
                       right_P_approx_min_dom, right_P_approx_special, right_minimal_version,
                       theta_stable_tau, tr_via_morphcat)
from .naming import module_name


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str = ""
    finding: bool = False
    lines: list = field(default_factory=list)


def _indecomposable_projectives(A: BoundQuiverAlgebra):
    return [projective_module(A, (v,)) for v in range(A.n)]


def check_six_term(A: BoundQuiverAlgebra) -> CheckResult:
    lines, ok = [], True
    for P in _indecomposable_projectives(A):
        s = six_term_sequence(P)
        good = s.exact and s.Q_projective and all(s.identifications.values())
        ok &= good
        terms = " -> ".join(module_name(M) for M in s.terms)
        lines.append(f"{module_name(P)}: 0 -> {terms} -> 0, Q = {module_name(s.Q)}"
                     + ("" if good else "  [FAILED]"))
    return CheckResult("six-term sequences", ok, f"{A.n} projectives", lines=lines)


def explicit_ass(A: BoundQuiverAlgebra) -> list[tuple[str, object]]:
    """(label, sequence) for every explicit construction that applies to A, certified."""
    out = []
    for P in _indecomposable_projectives(A):
        nm = module_name(P)
        out.append((f"nakayama sequence at {nm}", certify_H(ass_H_nakayama(P))))
        out.append((f"ending at ({nm} -> 0)", ass_P_ending_at_P_to_zero(P)))
        out.append((f"starting at (0 -> {nm}), duality route", ass_P_starting_at_zero_P(P)))
        if is_injective(P):
            out.append((f"starting at (0 -> {nm}), projective-injective", ass_P_from_projinjective(P)))
        else:
            out.append((f"starting at (0 -> {nm}), pullback route", ass_P_starting_at_zero_P_noninjective(P)))
    for M in knit_indecomposables(A).modules:
        if not is_projective(M):
            X, _ = presentation_object(M)
            out.append((f"H-sequence ending at pres {module_name(M)}", certify_H(ass_H_ending_at_P_object(X))))
    return out


def check_ass_certificates(A: BoundQuiverAlgebra) -> CheckResult:
    seqs = explicit_ass(A)
    bad = [f"{label}: {s.witness}" for label, s in seqs if not s.certified]
    return CheckResult("explicit almost split sequences certified", not bad,
                       f"{len(seqs) - len(bad)}/{len(seqs)} certified", lines=bad)


def relative_P_sequences(A: BoundQuiverAlgebra) -> list:
    """Almost split sequences in P(A) ending at every non-projective indecomposable."""
    return [ass_P_ending_at(Z) for Z in p_indecomposables(A)
            if classify_indecomposable(Z) not in ("projective", "both")]


def check_cok_transport(A: BoundQuiverAlgebra) -> CheckResult:
    bad, n = [], 0
    for s in relative_P_sequences(A):
        if s.right.cod.dim == 0:
            continue
        n += 1
        if not s.certified:
            bad.append(f"uncertified sequence in P(A): {s.witness}")
            continue
        t = certify_mod(cok_ses(s))
        if not t.certified:
            bad.append(f"Cok of sequence ending at {module_name(t.right)}: {t.witness}")
    K = knit_indecomposables(A)
    for seq in K.ending.values():
        n += 1
        E, _ = middle_term_presentation(seq)
        if not E.certified:
            bad.append(f"presentation of sequence ending at {module_name(seq.right)}: {E.witness}")
    return CheckResult("Cok transport both ways", not bad, f"{n - len(bad)}/{n}", lines=bad)


def check_theta_tr(A: BoundQuiverAlgebra) -> CheckResult:
    bad, n = [], 0
    for M in knit_indecomposables(A).modules:
        if is_projective(M):
            continue
        n += 1
        if not is_isomorphic(theta_stable_tau(M), tau(M)):
            bad.append(f"theta != tau at {module_name(M)}")
        if not same_up_to_projectives(tr_via_morphcat(M), transpose(M)):
            bad.append(f"Tr composite differs at {module_name(M)}")
    return CheckResult("theta = tau and Tr composite", not bad, f"{n} modules", lines=bad)


def check_g_additivity(A: BoundQuiverAlgebra) -> CheckResult:
    lines, ok = [], True
    for seq in knit_indecomposables(A).ending.values():
        r = g_additivity_check(seq)
        ok &= r.consistent
        lines.append(f"ending at {module_name(seq.right)}: g(L)={r.gL} g(N)={r.gN} g(M)={r.gM} "
                     f"excluded={r.excluded} additive={r.holds}")
    return CheckResult("g-vector additivity", ok, lines=lines)


def check_minimality(A: BoundQuiverAlgebra) -> CheckResult:
    lines, ok = [], True
    for seq in knit_indecomposables(A).ending.values():
        v = middle_presentation_is_minimal(seq)
        ok &= v.agrees
        lines.append(f"ending at {module_name(seq.right)}: minimal={v.minimal} ({v.reason}), direct={v.direct}")
    return CheckResult("minimality criterion agrees with direct check", ok, lines=lines)


def check_quiver_extension(A: BoundQuiverAlgebra) -> CheckResult:
    E = extend_to_P_quiver(knit_module_quiver(A))
    D = knit_P_quiver_direct(A)
    phi = translation_isomorphism(E, D)
    return CheckResult("extended quiver matches direct quiver", phi is not None,
                       f"{len(E)} vs {len(D)} vertices, {sum(E.arrows.values())} vs {sum(D.arrows.values())} arrows")


def approximation_outputs(A: BoundQuiverAlgebra):
    """(label, map, side, minimal) for every approximation op applied over the fixture."""
    out = []
    for M in h_indecomposables(A):
        X = from_t2_module(M, A)
        r = right_P_approx(X)
        out.append(("right", r, "right", False))
        out.append(("right minimal version", right_minimal_version(r), "right", True))
        out.append(("left", left_P_approx(X), "left", False))
        if is_selfinjective(A):
            out.append(("left selfinjective", left_P_approx_selfinjective(X), "left", False))
    for M in knit_indecomposables(A).modules:
        for shape in ("0->M", "M->M", "M->0"):
            out.append((f"right special {shape}", right_P_approx_special(M, shape), "right", True))
            out.append((f"left special {shape}", left_P_approx_special(M, shape), "left", True))
        _, g = projective_cover(M)
        out.append(("right minimal, projective cover", right_P_approx_min_dom(g), "right", True))
        for Q in _indecomposable_projectives(A):
            for h in hom_basis(M, Q):
                if is_right_minimal_module_map(h):
                    out.append(("right minimal, map into projective", right_P_approx_min_cod(h), "right", True))
            for h in hom_basis(Q, M):
                out.append(("left minimal", left_P_approx_min(MorphObject(h)), "left", True))
    return out


def check_approximations(A: BoundQuiverAlgebra) -> CheckResult:
    probes = p_indecomposables(A) + generating_family(A)
    bad, outs = [], approximation_outputs(A)
    for label, phi, side, minimal in outs:
        v = is_right_approximation(phi, probes) if side == "right" else is_left_approximation(phi, probes)
        if not v.ok:
            bad.append(f"{label}: {v.witness}")
        elif minimal and not (is_right_minimal(phi) if side == "right" else is_left_minimal(phi)):
            bad.append(f"{label}: not minimal")
    return CheckResult("approximations universal and minimal", not bad,
                       f"{len(outs) - len(bad)}/{len(outs)}", lines=bad)


def check_injective_generation(A: BoundQuiverAlgebra) -> CheckResult:
    try:
        r = injective_generation_check(A)
    except CyclicQuiver as e:
        return CheckResult("injective g-vectors generate K0", True, f"not applicable: {e}")
    vecs = ", ".join(str(g) for g in r.vectors)
    detail = (f"g(I) = {vecs}; invariant factors {r.invariant_factors}; "
              f"{'generates' if r.generates else 'does not generate'}")
    return CheckResult("injective g-vectors generate K0", True, detail, finding=not r.generates)


CHECKS = [check_six_term, check_ass_certificates, check_cok_transport, check_theta_tr,
          check_g_additivity, check_minimality, check_quiver_extension, check_approximations,
          check_injective_generation]


def run_battery(A: BoundQuiverAlgebra) -> list[CheckResult]:
    out = []
    for check in CHECKS:
        try:
            out.append(check(A))
        except Exception as e:          # reported as a failed check, not a crash
            out.append(CheckResult(check.__name__, False, f"{type(e).__name__}: {e}"))
    return out
