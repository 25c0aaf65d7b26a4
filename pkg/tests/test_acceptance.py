"""Acceptance matrix: one test (or test group) per criterion.

Every expectation is exact-integer equality.  Three printed value sets
are provably unattainable because they contradict exact counting
identities (and the measured/brute-forced values):

* the criterion-1 spectrum as printed fails
  sum_s s*N_s = |S| (q^(2r)-1)/(q^2-1) -- its two extreme counts are
  interchanged (the corrected spectrum is asserted and also feeds the
  criterion-5 enumerator, which is printed correctly);
* the criterion-5 instance-3 enumerator as printed fails the mean-weight
  identity -- its two extreme coefficients are interchanged;
* both criterion-6 enumerators as printed fail the mean-weight identity
  (an infinity-hyperplane off-by-one upstream).

Those three appear as strict xfails asserting the printed values,
paired with passing tests of the corrected values; erratum-corrected
expectations count as a pass with note, and the reports carry the
paper-erratum markers.

Run with ``pytest tests/test_acceptance.py -v -s`` for per-criterion
pass lines.
"""

import pytest

from trichar import codes, quadric, varieties
from trichar.geometry import hyperplanes_through_point, spectrum
from trichar.report import verify_instance
from trichar.varieties import Params, classify, twisted_hermitian_set


def _ok(label: str) -> None:
    print(f"PASS  {label}")


@pytest.fixture(scope="session")
def inst1(gf9):
    return verify_instance(gf9, 3, 1, 3)


@pytest.fixture(scope="session")
def inst2(gf9):
    return verify_instance(gf9, 4, 1, 3, checks=("spectrum", "oracle"))


@pytest.fixture(scope="session")
def inst3(gf25):
    a = next(a for a in range(1, 25) if gf25.norm_enc(a) == 2)
    return verify_instance(gf25, 3, a, 5, checks=("spectrum", "minimality"))


@pytest.fixture(scope="session")
def inst3_code(gf25):
    a = next(a for a in range(1, 25) if gf25.norm_enc(a) == 2)
    return verify_instance(gf25, 3, a, 5, checks=("code",), budget=4 * 10 ** 9)


@pytest.fixture(scope="session")
def inst4(gf9):
    return verify_instance(gf9, 4, 4, 3, budget=2 * 10 ** 9)


@pytest.fixture(scope="session")
def inst6(gf4):
    return verify_instance(gf4, 4, 1, 2, checks=("spectrum",), multiset_js=(4, 28))


# -- criterion 1 -----------------------------------------------------------


def test_c1_size_pinf_minimality_runtime(inst1):
    assert inst1["measured"]["set_size"] == 243
    assert inst1["verdicts"]["pinf_sections"] == "pass"
    assert inst1["measured"]["pinf_sections_constant"] == 27
    assert inst1["measured"]["minimality"] == {
        "t": 9,
        "is_intersection_set": True,
        "is_minimal": True,
    }
    assert inst1["elapsed_s"] < 5.0
    _ok("criterion 1: |S| = 243, every infinity-plane section 27, minimal t = 9, < 5 s")


def test_c1_spectrum_corrected(inst1):
    assert inst1["measured"]["affine_spectrum"]["histogram"] == {
        "9": 27,
        "27": 738,
        "36": 54,
    }
    assert inst1["verdicts"]["spectrum"] == "pass"
    assert any("paper-erratum" in e for e in inst1["errata"])
    _ok("criterion 1: affine spectrum {9:27, 27:738, 36:54} (printed counts swapped)")


@pytest.mark.xfail(
    strict=True,
    reason="printed spectrum {9:54, 27:738, 36:27} fails the double-counting "
    "identity sum s*N_s = 243*91 and contradicts the criterion-5 enumerator; "
    "the measured spectrum swaps the extreme counts",
)
def test_c1_spectrum_as_printed(inst1):
    assert inst1["measured"]["affine_spectrum"]["histogram"] == {
        "9": 54,
        "27": 738,
        "36": 27,
    }


def test_c1_printed_spectrum_is_impossible(gf9):
    """No 243-point set in AG(3,9) can have the printed spectrum."""
    printed = {9: 54, 27: 738, 36: 27}
    measured = {9: 27, 27: 738, 36: 54}
    rhs = 243 * hyperplanes_through_point(9, 3)
    assert sum(s * c for s, c in measured.items()) == rhs
    assert sum(s * c for s, c in printed.items()) != rhs
    _ok("criterion 1: identity check pins the corrected spectrum")


# -- criterion 2 -----------------------------------------------------------


def test_c2_spectrum_and_census(inst2):
    assert inst2["measured"]["affine_spectrum"]["histogram"] == {
        "162": 81,
        "243": 7218,
        "324": 81,
    }
    assert inst2["measured"]["oracle"]["census"] == {
        "sigma0": 6399,
        "sigma_plus": 81,
        "sigma_minus": 81,
    }
    assert inst2["status"] == "pass"
    assert inst2["elapsed_s"] < 60.0
    _ok("criterion 2: spectrum {162:81, 243:7218, 324:81}, census 81/6399/81, < 60 s")


# -- criterion 3 -----------------------------------------------------------


def test_c3_spectrum(inst3):
    assert inst3["params"]["b"] == 5
    assert inst3["class"]["tag"] == "ThmA"
    assert inst3["measured"]["affine_spectrum"]["histogram"] == {
        "100": 500,
        "125": 15650,
        "225": 125,
    }
    assert inst3["status"] == "pass"
    assert inst3["elapsed_s"] < 60.0
    _ok("criterion 3: spectrum {100:500, 125:15650, 225:125}, < 60 s")


# -- criterion 4 -----------------------------------------------------------


def test_c4_spectrum_and_minimality(inst4):
    assert inst4["measured"]["affine_spectrum"]["histogram"] == {
        "234": 4374,
        "243": 819,
        "261": 2187,
    }
    assert inst4["measured"]["minimality"] == {
        "t": 234,
        "is_intersection_set": True,
        "is_minimal": True,
    }
    assert inst4["status"] == "pass"
    _ok("criterion 4: spectrum {234:4374, 243:819, 261:2187}, minimal t = 234")


# -- criterion 5 -----------------------------------------------------------


def test_c5_three_routes_agree_everywhere(inst1, inst4, inst3_code, gf9):
    assert inst1["verdicts"]["enumerator"] == "pass"
    assert inst4["verdicts"]["enumerator"] == "pass"
    assert inst3_code["verdicts"]["enumerator"] == "pass"
    rep2c = verify_instance(gf9, 4, 1, 3, checks=("code",), budget=2 * 10 ** 9)
    assert rep2c["verdicts"]["enumerator"] == "pass"
    _ok("criterion 5: brute-force == spectrum-derived == closed-form on instances 1-4")


def test_c5_instance1_enumerator(inst1):
    weights = inst1["measured"]["enumerator"]["weights"]
    assert weights == {"0": 1, "207": 432, "216": 5904, "234": 216, "243": 8}
    assert sum(weights.values()) == 6561
    assert len([w for w in weights if w != "0"]) == 4
    assert inst1["measured"]["weight_divisor"] % 3 == 0
    _ok("criterion 5: instance-1 enumerator as stated, 4 weights, q-divisible")


def test_c5_instance3_enumerator_corrected(inst3_code):
    weights = inst3_code["measured"]["enumerator"]["weights"]
    assert weights == {"0": 1, "2900": 3000, "3000": 375600, "3025": 12000, "3125": 24}
    assert sum(weights.values()) == 390625
    assert len([w for w in weights if w != "0"]) == 4
    assert inst3_code["measured"]["weight_divisor"] % 5 == 0
    _ok("criterion 5: instance-3 enumerator (printed extremes swapped), 4 weights")


@pytest.mark.xfail(
    strict=True,
    reason="the printed instance-3 coefficients {2900:12000, 3025:3000} fail "
    "the mean-weight identity and contradict the criterion-3 spectrum; "
    "measurement swaps the two extreme coefficients",
)
def test_c5_instance3_enumerator_as_printed(inst3_code):
    weights = inst3_code["measured"]["enumerator"]["weights"]
    assert weights == {"0": 1, "2900": 12000, "3000": 375600, "3025": 3000, "3125": 24}


def test_c5_instance3_printed_fails_mean_weight():
    printed = {0: 1, 2900: 12000, 3000: 375600, 3025: 3000, 3125: 24}
    corrected = {0: 1, 2900: 3000, 3000: 375600, 3025: 12000, 3125: 24}
    target = 3125 * 24 * 25 ** 3
    assert sum(w * c for w, c in corrected.items()) == target
    assert sum(w * c for w, c in printed.items()) != target
    _ok("criterion 5: identity check pins the corrected instance-3 coefficients")


# -- criterion 6 -----------------------------------------------------------


def test_c6_multisets_structure(inst6):
    ms4 = inst6["measured"]["multisets"]["4"]
    ms28 = inst6["measured"]["multisets"]["28"]
    assert ms4["n"] == 132 and ms28["n"] == 156
    for entry in (ms4, ms28):
        weights = entry["enumerator"]["weights"]
        assert sum(weights.values()) == 1024
        assert len([w for w in weights if w != "0"]) == 3
        assert entry["brute_matches_spectrum"]
    assert inst6["verdicts"]["multiset_j4"] == "pass"
    assert inst6["verdicts"]["multiset_j28"] == "pass"
    _ok("criterion 6: j=4 and j=28 completions: 3 weights each, sums 1024")


def test_c6_q2_open_question_resolves_positively(inst6, gf4):
    """Measured q=2 spectrum agrees with the r-even closed forms, so the
    criterion stays at q=2; the report documents the applicability gap."""
    assert inst6["measured"]["affine_spectrum"]["histogram"] == {
        "28": 128,
        "32": 84,
        "36": 128,
    }
    assert inst6["verdicts"]["spectrum"] == "pass"
    assert any("theorem-applicability-open" in n for n in inst6["notes"])
    _ok("criterion 6: q=2 spectrum matches the closed forms; note attached")


def test_c6_corrected_enumerators(inst6):
    ms4 = inst6["measured"]["multisets"]["4"]["enumerator"]["weights"]
    ms28 = inst6["measured"]["multisets"]["28"]["enumerator"]["weights"]
    assert ms4 == {"0": 1, "96": 636, "104": 384, "128": 3}
    assert ms28 == {"0": 1, "96": 252, "120": 384, "128": 387}
    _ok("criterion 6: corrected coefficients confirmed by brute force")


@pytest.mark.xfail(
    strict=True,
    reason="the printed j=4 coefficients {96:639, 104:381} fail the "
    "mean-weight identity (off by q^2-1 on two weights); brute force gives "
    "{96:636, 104:384}",
)
def test_c6_j4_as_printed(inst6):
    ms4 = inst6["measured"]["multisets"]["4"]["enumerator"]["weights"]
    assert ms4 == {"0": 1, "96": 639, "104": 381, "128": 3}


@pytest.mark.xfail(
    strict=True,
    reason="the printed j=28 coefficients {96:384, 128:255} fail the "
    "mean-weight identity; brute force gives {96:252, 128:387}",
)
def test_c6_j28_as_printed(inst6):
    ms28 = inst6["measured"]["multisets"]["28"]["enumerator"]["weights"]
    assert ms28 == {"0": 1, "96": 384, "120": 384, "128": 255}


def test_c6_printed_fail_mean_weight():
    for n, printed in (
        (132, {0: 1, 96: 639, 104: 381, 128: 3}),
        (156, {0: 1, 96: 384, 120: 384, 128: 255}),
    ):
        target = n * 3 * 4 ** 4
        assert sum(printed.values()) == 1024  # the printed forms do sum to Q^k
        assert sum(w * c for w, c in printed.items()) != target
    _ok("criterion 6: identity check pins the corrected multiset coefficients")


# -- criterion 7 -----------------------------------------------------------


def test_c7_erratum_detection(gf9):
    p = Params(gf9, 3, 1, 3)
    exp = codes.expected_enumerator(classify(p), p, "bare")
    assert exp.printed is not None
    assert exp.printed[216] == 72
    assert exp.enumerator.counts[216] == 5904
    assert sum(exp.printed.values()) != 9 ** 4
    assert sum(exp.enumerator.counts.values()) == 9 ** 4
    assert any("paper-erratum" in e for e in exp.errata)
    _ok("criterion 7: middle coefficient flagged, printed 72 vs corrected 5904")


# -- criterion 8 (the cheap re-assertions; the full property suites live in
# the per-module test files) ------------------------------------------------


def test_c8_double_counting_on_every_report_spectrum(inst1, inst2, inst3, inst4, inst6):
    for rep in (inst1, inst2, inst3, inst4, inst6):
        hist = {int(k): v for k, v in rep["measured"]["affine_spectrum"]["histogram"].items()}
        q2 = rep["params"]["q"] ** 2
        r = rep["params"]["r"]
        per_point = hyperplanes_through_point(q2, r)
        assert sum(s * c for s, c in hist.items()) == rep["measured"]["set_size"] * per_point
    _ok("criterion 8: double-counting identity on every acceptance spectrum")


def test_c8_reduction_contract_exhaustive(inst1):
    # 729 planes at q=3, r=3: the report runs the contract exhaustively
    assert inst1["measured"]["oracle"]["reduction_contract_pairs"] == 729
    assert inst1["verdicts"]["reduction_contract"] == "pass"
    _ok("criterion 8: reduction contract exhaustive over 729 hyperplanes")


def test_c8_arf_trace_zero_every_mb1even_q4(gf16):
    pairs = [
        (a, b)
        for a, b in varieties.parameter_pairs(gf16)
        if classify(Params(gf16, 2, a, b)).tag == "Mb1Even"
    ]
    assert pairs
    for a, b in pairs:
        alpha = quadric.arf_invariant(Params(gf16, 2, a, b))
        assert gf16.absolute_trace(alpha) == 0
    _ok(f"criterion 8: arf-invariant trace 0 on all {len(pairs)} q=4 instances")


def test_c8_enumerator_identities_enforced(inst1):
    # producers call check_identities; verify once more explicitly here
    weights = {int(k): v for k, v in inst1["measured"]["enumerator"]["weights"].items()}
    assert sum(weights.values()) == 9 ** 4
    assert sum(w * c for w, c in weights.items()) == 243 * 8 * 9 ** 3
    _ok("criterion 8: sum and mean-weight identities on the produced enumerators")
