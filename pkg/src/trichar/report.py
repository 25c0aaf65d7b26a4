"""Verification runs: measure a parameter pair, compare, and report.

A report is a plain dict (JSON-ready, keys sorted on serialization)
with the measured quantities, the closed-form expectations, erratum
notes, and one verdict per claim.  Identical inputs produce identical
reports except for the wall-clock ``elapsed_s`` entry.  Expectations
corrected over a printed closed form count as a pass, with the
correction recorded under ``errata``.
"""

from __future__ import annotations

import itertools
import json
import time

import numpy as np

from . import _kernels, codes, geometry, quadric, varieties
from .errors import BudgetExceeded
from .field import FieldTower

DEFAULT_BUDGET = 10 ** 9

ALL_CHECKS = ("spectrum", "minimality", "code", "oracle")


def _measured_pinf_sections(S: geometry.PointMultiset) -> list[int]:
    """Intersection sizes with the affine hyperplanes through the infinity point."""
    t = S.tower
    pts, mult = S.affine_arrays()
    forms = geometry._pinf_forms(t, S.r)
    ppts = np.hstack([np.ones((len(pts), 1), dtype=np.int16), pts])
    counts = _kernels.form_counts(ppts, mult, forms, t.mul_table, t.add_table)
    return [int(c) for c in counts.tolist()]


def _verdict(ok: bool) -> str:
    return "pass" if ok else "fail"


def verify_instance(
    tower: FieldTower,
    r: int,
    a: int,
    b: int,
    checks: tuple[str, ...] = ALL_CHECKS,
    multiset_js: tuple[int, ...] = (),
    budget: int = DEFAULT_BUDGET,
) -> dict:
    """Run the requested checks for one parameter pair and build the report."""
    t0 = time.perf_counter()
    params = varieties.Params(tower, r, a, b)
    pclass = varieties.classify(params)
    q = tower.q
    profiled = pclass.tag in varieties.PROFILE_TAGS

    report: dict = {
        "params": {
            "q": q,
            "r": r,
            "a": a,
            "b": b,
            "field": tower.descriptor.spec_string(),
            "eps": tower.eps,
            "nu": tower.nu,
        },
        "class": pclass.as_json_dict(),
        "measured": {},
        "expected": {},
        "errata": [],
        "notes": [],
        "verdicts": {},
        "status": "pass",
    }
    verdicts = report["verdicts"]
    if profiled and q == 2 and pclass.tag == varieties.TAG_MB1_EVEN:
        report["notes"].append(
            "theorem-applicability-open: q = 2 admits no (1, eps) basis, so the "
            "section-reduction derivation does not cover it; measured values "
            "are compared against the closed forms and reported."
        )

    profile = None
    if profiled:
        profile = varieties.expected_profile(pclass, params)
        report["expected"]["profile"] = profile.as_json_dict()
        report["errata"].extend(profile.errata)

    try:
        S = varieties.twisted_hermitian_set(params)
        report["measured"]["set_size"] = S.size
        verdicts["set_size"] = _verdict(S.size == q ** (2 * r - 1))

        if "spectrum" in checks:
            spec = geometry.spectrum(S, "affine", budget=budget)
            report["measured"]["affine_spectrum"] = spec.as_json_dict()
            pinf = _measured_pinf_sections(S)
            mid = q ** (2 * r - 3)
            report["measured"]["pinf_sections_constant"] = (
                pinf[0] if pinf and all(c == pinf[0] for c in pinf) else None
            )
            verdicts["pinf_sections"] = _verdict(all(c == mid for c in pinf))
            if profiled:
                verdicts["spectrum"] = _verdict(
                    spec.histogram == profile.affine_counts
                )
            else:
                verdicts["spectrum"] = "measured-only"

        if "minimality" in checks:
            mrep = geometry.minimality_report(S, budget=budget)
            report["measured"]["minimality"] = {
                "t": mrep.t,
                "is_intersection_set": mrep.is_intersection_set,
                "is_minimal": mrep.is_minimal,
            }
            if profiled:
                # minimality is asserted for the r-even families at every r
                # and for the zero-discriminant families only when r > 2
                minimal_claimed = r > 2 or pclass.tag in (
                    varieties.TAG_MB1_ODD,
                    varieties.TAG_MB1_EVEN,
                )
                ok = mrep.t == profile.minimal_t
                if minimal_claimed:
                    ok = ok and mrep.is_minimal
                else:
                    report["notes"].append(
                        "minimality is not asserted for r = 2 in this family; "
                        "the measured flag is reported but not enforced."
                    )
                verdicts["minimality"] = _verdict(ok)
            else:
                verdicts["minimality"] = "measured-only"

        if "code" in checks:
            G = codes.generator_matrix(S)
            brute = codes.weight_enumerator_bruteforce(G, budget=budget)
            from_spec = codes.weight_enumerator_from_spectrum(S, budget=budget)
            report["measured"]["enumerator"] = brute.as_json_dict()
            report["measured"]["generator_rank"] = G.rank
            agree = brute.counts == from_spec.counts
            exp = None
            if profiled:
                exp = codes.expected_enumerator(pclass, params, "bare")
                report["expected"]["enumerator"] = exp.as_json_dict()
                report["errata"].extend(exp.errata)
                agree = agree and brute.counts == exp.enumerator.counts
                verdicts["enumerator"] = _verdict(agree)
                verdicts["distinct_weights"] = _verdict(
                    len(brute.nonzero_weights) == len(exp.enumerator.nonzero_weights)
                )
            else:
                verdicts["enumerator"] = _verdict(agree)
            delta = codes.divisibility(brute)
            report["measured"]["weight_divisor"] = delta
            if delta % q == 0:
                verdicts["divisibility"] = "pass"
            elif exp is not None and codes.divisibility(exp.enumerator) % q != 0:
                # the closed form itself is not q-divisible here (r = 2
                # boundary); report the measured gcd without a verdict
                verdicts["divisibility"] = "not-claimed"
                report["notes"].append(
                    f"q-divisibility does not extend to this boundary case: "
                    f"gcd of the nonzero weights is {delta}."
                )
            else:
                verdicts["divisibility"] = "fail"

        if "oracle" in checks and tower.eps_basis:
            oracle: dict = {}
            Q = tower.order
            n_pairs = Q ** r
            per_quadric = 2 * (r - 1) * q ** (2 * (r - 1))
            # exhaustive when affordable, otherwise the first 50 (m, d) pairs
            cap = n_pairs if n_pairs * per_quadric <= budget else 50
            pairs = itertools.product(
                itertools.product(range(Q), repeat=r - 1), range(Q)
            )
            set_pts = S.affine_arrays()[0]
            checked = 0
            contract_ok = True
            last_m = None
            dvals = None
            for m, d in itertools.islice(pairs, cap):
                Qd = quadric.reduce_section(params, m, d)
                n_quad = quadric.count_points(Qd, "affine", budget=budget)
                if m != last_m:
                    dvals = _kernels.affine_dvals(
                        set_pts,
                        np.array(m, dtype=np.int16),
                        tower.mul_table,
                        tower.add_table,
                        tower.neg_table,
                    )
                    last_m = m
                n_set = int(np.count_nonzero(dvals == d))
                if n_quad != n_set:
                    contract_ok = False
                    break
                checked += 1
            oracle["reduction_contract_pairs"] = checked
            verdicts["reduction_contract"] = _verdict(contract_ok)

            if pclass.tag == varieties.TAG_THM_C:
                census = quadric.sigma_census(params, budget=budget)
                oracle["census"] = census.as_json_dict()
                half = (q ** (r + 1) - q ** r) // 2
                verdicts["census"] = _verdict(
                    census.sigma_plus == half
                    and census.sigma_minus == half
                    and census.sigma0 == q ** (2 * r) - q ** (r + 1) + q ** r
                )
            if pclass.tag in (varieties.TAG_MB1_ODD, varieties.TAG_MB1_EVEN):
                cls0 = quadric.classify_quadric(
                    quadric.reduce_section(params, (0,) * (r - 1), 0), budget=budget
                )
                oracle["infinity_quadric"] = cls0.as_json_dict()
                verdicts["infinity_quadric_hyperbolic"] = _verdict(
                    cls0.character == "hyperbolic"
                )
            if pclass.tag == varieties.TAG_MB1_EVEN and tower.p == 2:
                alpha = quadric.arf_invariant(params)
                oracle["arf_invariant"] = alpha
                verdicts["arf_trace_zero"] = _verdict(
                    tower.absolute_trace(alpha) == 0
                )
            report["measured"]["oracle"] = oracle
        elif "oracle" in checks:
            report["notes"].append(
                "oracle checks skipped: the tower is flagged eps-basis-unavailable."
            )
            verdicts["reduction_contract"] = "skipped"

        for j in multiset_js:
            extended = codes.extend_multiset(S, j)
            ms_enum = codes.weight_enumerator_from_spectrum(extended, budget=budget)
            brute_ops = tower.order ** (r + 1) * extended.size
            entry: dict = {"n": extended.size, "enumerator": ms_enum.as_json_dict()}
            if brute_ops <= budget:
                G_ext = codes.generator_matrix(extended)
                ms_brute = codes.weight_enumerator_bruteforce(G_ext, budget=budget)
                entry["brute_matches_spectrum"] = ms_brute.counts == ms_enum.counts
            special = {
                q ** (r - 1) - q ** (r - 2): "multiset_j1",
                q ** (2 * r - 3) - q ** (r - 2): "multiset_j2",
            }
            key = f"multiset_j{j}"
            if profiled and pclass.tag in (
                varieties.TAG_MB1_ODD,
                varieties.TAG_MB1_EVEN,
            ) and j in special:
                exp_ms = codes.expected_enumerator(pclass, params, special[j])
                entry["expected"] = exp_ms.as_json_dict()
                report["errata"].extend(exp_ms.errata)
                verdicts[key] = _verdict(
                    ms_enum.counts == exp_ms.enumerator.counts
                    and len(ms_enum.nonzero_weights)
                    == len(exp_ms.enumerator.nonzero_weights)
                )
            else:
                verdicts[key] = "measured-only"
            entry["weight_divisor"] = codes.divisibility(ms_enum)
            if verdicts[key] == "measured-only":
                # q-divisibility is claimed only for the two special
                # completions of the classified r-even families
                verdicts[f"{key}_divisibility"] = "measured-only"
            else:
                verdicts[f"{key}_divisibility"] = _verdict(
                    entry["weight_divisor"] % q == 0
                )
            report["measured"].setdefault("multisets", {})[str(j)] = entry

    except BudgetExceeded as exc:
        report["status"] = "incomplete"
        report["budget_error"] = str(exc)
        report["elapsed_s"] = round(time.perf_counter() - t0, 3)
        return report

    if any(v == "fail" for v in verdicts.values()):
        report["status"] = "fail"
    report["errata"] = sorted(set(report["errata"]))
    report["elapsed_s"] = round(time.perf_counter() - t0, 3)
    return report


def report_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"
