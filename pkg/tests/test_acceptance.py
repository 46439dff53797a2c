"""One test per acceptance criterion, on the full grids.

Each test records a single PASS/FAIL line; the lines are echoed at the end of
the pytest run by the terminal-summary hook in conftest.py.
"""

import subprocess
import sys
import textwrap
from fractions import Fraction

import mpmath
import pytest

from binotail import BinomialLaw, BinomialParams, PoissonParams, Verdict, pmf_table, poisson_mad, tce, tce_factorized
from binotail.harness import GridSpec, lambda_grid, poisson_binomial_pmf, reduced_fractions, run_claim_sweep
from binotail.bounds import QUARTER

from conftest import convolve_oracle

pytestmark = pytest.mark.slow

RESULTS: list[str] = []
mpmath.mp.dps = 50

# criterion 1 grid: n in [2, 200], reduced p = a/b with b <= 24; each claim skips points outside its hypothesis
GRID_1 = GridSpec(n_min=2, n_max=200, p_den_cap=24)
POISSON_GRID = GridSpec(n_min=2, n_max=2, p_den_cap=2, lambda_grid=lambda_grid(6, 12), stirling_max=200)


def record(criterion: str, ok: bool, detail: str) -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {criterion}: {detail}"
    RESULTS.append(line)
    print(line)


def clean(result) -> bool:
    return result.summary.violated == 0 and result.summary.inconclusive == 0


def counts(result) -> str:
    c = result.summary.counts
    return " ".join(f"{v.value}={c.get(v, 0)}" for v in Verdict)


def violations(result, limit=5):
    bad = [r for r in result.records if r.verdict in (Verdict.VIOLATED, Verdict.INCONCLUSIVE)]
    return ", ".join(f"{r.claim_id}@{r.columns[1]}:{r.columns[2]}" for r in bad[:limit])


def test_criterion_01_main_bound_both_variants():
    relaxed = run_claim_sweep(GRID_1, "THM1_RELAXED")
    sharp = run_claim_sweep(GRID_1, "THM1_SHARP")
    ok = clean(relaxed) and clean(sharp) and relaxed.summary.counts.get(Verdict.PROVEN, 0) > 30000
    record("1", ok, f"relaxed {counts(relaxed)}; sharp {counts(sharp)}")
    assert ok, violations(relaxed) + violations(sharp)


def test_criterion_02_greenberg_mohri_strict():
    result = run_claim_sweep(GRID_1, "GM_EQ2")
    ok = clean(result)
    record("2", ok, f"tail > 1/4 for p >= 1/n: {counts(result)}")
    assert ok, violations(result)


def test_criterion_03_rigollet_tong():
    result = run_claim_sweep(GRID_1, "RT_EQ3")
    ok = clean(result)
    record("3", ok, f"tail >= min(p, 1/4) for p <= 1/2: {counts(result)}")
    assert ok, violations(result)


def test_criterion_04_moment_bound_and_quarter_cap():
    bound = run_claim_sweep(GRID_1, "VERAAR_EQ1")
    cap = run_claim_sweep(GridSpec(n_min=1, n_max=200, p_den_cap=24), "VERAAR_QUARTER")
    equality = sorted((r.params.n, r.params.p) for r in cap.records if r.note == "equality")
    ok = clean(bound) and clean(cap) and equality == [(1, Fraction(1, 2))]
    record("4", ok, f"tail >= mad^2/(4v): {counts(bound)}; value <= 1/4: {counts(cap)}; equality logged at {equality}")
    assert ok, violations(bound) + violations(cap)


@pytest.mark.parametrize(
    "part,claim_id",
    [("5a", "LEMMA_MEDIAN_INT"), ("5b", "LEMMA_TCE_INT"), ("5c", "LEMMA_MAD_LB"), ("5d", "LEMMA_MAD_CS")],
)
def test_criterion_05_lemma_suite(part, claim_id):
    result = run_claim_sweep(GRID_1, claim_id)
    ok = clean(result) and result.summary.counts.get(Verdict.PROVEN, 0) > 0
    record(part, ok, f"{claim_id}: {counts(result)}")
    assert ok, violations(result)


def test_criterion_06_identity_margin_exactly_zero():
    result = run_claim_sweep(GRID_1, "IDENTITY_4")
    nonzero = [r for r in result.records if r.verdict is not Verdict.PROVEN or r.margin != 0]
    ok = not nonzero and len(result.records) == sum(1 for _ in GRID_1.binomial_points())
    record("6", ok, f"mad/2 = tail * (tce - np) with margin 0 at {len(result.records)} points; nonzero: {len(nonzero)}")
    assert ok


def test_criterion_07_proof_chain():
    result = run_claim_sweep(GridSpec(n_min=2, n_max=60, p_den_cap=12), "PROOF_CHAIN")
    links = {r.claim_id for r in result.records} - {"PROOF_CHAIN"}
    audited = sum(1 for r in result.records if r.claim_id == "PROOF_CHAIN_A")
    ok = clean(result) and links == {f"PROOF_CHAIN_{c}" for c in "ABCDEF"} and audited > 0
    record("7", ok, f"six links at {audited} non-integer-mean core points: {counts(result)}")
    assert ok, violations(result)


def test_criterion_08_orders_and_tce_monotone():
    pairs = GridSpec(n_min=1, n_max=40, p_den_cap=8)
    results = {cid: run_claim_sweep(pairs, cid) for cid in ("ORDER_LR", "ORDER_HR", "ORDER_LR_IMPLIES_HR", "COND_TAIL")}
    results["TCE_MONOTONE"] = run_claim_sweep(GridSpec(n_min=1, n_max=20, p_den_cap=8), "TCE_MONOTONE")
    ok = all(clean(r) for r in results.values())
    record("8", ok, "; ".join(f"{cid} {counts(r)}" for cid, r in results.items()))
    assert ok, "".join(violations(r) for r in results.values())



def test_criterion_09a_poisson_bound():
    result = run_claim_sweep(POISSON_GRID, "POI_THM_S3")
    ok = clean(result)
    record("9a", ok, f"displayed Poisson bound hi <= tail lo over {len(result.records)} lambdas: {counts(result)}"
           + ("" if ok else f"; violated at {violations(result, limit=20)}"))
    assert ok, violations(result, limit=20)


def test_criterion_09b_poisson_mad():
    iv = poisson_mad(PoissonParams(1, Fraction(1, 2**64)))
    ref = 2 / mpmath.e
    contains = mpmath.mpf(iv.lo.numerator) / iv.lo.denominator <= ref <= mpmath.mpf(iv.hi.numerator) / iv.hi.denominator
    routes = run_claim_sweep(POISSON_GRID, "POI_MAD_CLOSED")
    ok = contains and iv.width <= Fraction(1, 2**64) and clean(routes)
    record("9b", ok, f"MAD(1) encloses 2/e, width 2^{iv.width.numerator.bit_length() - iv.width.denominator.bit_length()}; closed form vs direct sum: {counts(routes)}")
    assert ok


@pytest.mark.parametrize("part,claim_id", [("9c", "POI_TCE_INT"), ("9d", "POI_MEDIAN_INT"), ("9e", "POI_STIRLING")])
def test_criterion_09_poisson_checks(part, claim_id):
    result = run_claim_sweep(POISSON_GRID, claim_id)
    ok = clean(result) and result.summary.counts.get(Verdict.PROVEN, 0) > 0
    record(part, ok, f"{claim_id}: {counts(result)}")
    assert ok, violations(result)


def test_criterion_10_quarter_threshold():
    result = run_claim_sweep(GRID_1, "QUARTER_THRESHOLD")
    notes = {}
    for r in result.records:
        if r.verdict is not Verdict.DOMAIN_SKIPPED:
            notes[r.note] = notes.get(r.note, 0) + 1
    equal = [r for r in result.records if r.note == "EQUAL"]
    ok = clean(result) and equal and all(r.value.contains(QUARTER) for r in equal)
    record("10", ok, f"mismatches {result.summary.violated + result.summary.inconclusive}; orderings {notes}")
    assert ok, violations(result)


def test_criterion_11_cross_oracles():
    ps = reduced_fractions(24)
    points = tce_points = 0
    for n in range(1, 31):
        for p in ps:
            params = BinomialParams(n, p)
            table = pmf_table(params)
            assert table == convolve_oracle(n, p), (n, p)
            assert list(poisson_binomial_pmf([p] * n).pmf_table) == table, (n, p)
            law = BinomialLaw(params)
            for k in range(n + 1):
                assert law.tce(k) == tce_factorized(params, k) == tce(params, k), (n, p, k)
                tce_points += 1
            points += 1
    record("11", True, f"pmf = convolution, PB homogeneous = binomial at {points} points; tce direct = factorized at {tce_points} (n, p, k)")


# ALL includes the displayed Poisson bound; it holds at each of these four lambdas
SWEEP_ARGS = ["sweep", "--n-min", "2", "--n-max", "30", "--p-den-cap", "12", "--claim", "ALL", "--lambda-grid", "1/2,1,3/2,4", "--stirling-max", "30"]


def run_cli(args, prelude=""):
    code = prelude + "\nimport sys\nfrom binotail.cli import main\nsys.exit(main(sys.argv[1:]))\n"
    return subprocess.run([sys.executable, "-c", code, *args], capture_output=True, check=False)


CORRUPT_GM = "import fractions, binotail.harness.claims as c\nc.QUARTER = fractions.Fraction(3, 4)"
CORRUPT_MAIN = textwrap.dedent(
    """
    import binotail.harness.claims as c
    _orig = c.theorem1_bound
    c.theorem1_bound = lambda params, sharp=False, bits=128: _orig(params, sharp, bits) * 8
    """
)


def test_criterion_12_determinism_and_exit_contract():
    first, second = run_cli(SWEEP_ARGS), run_cli(SWEEP_ARGS)
    identical = first.stdout == second.stdout and len(first.stdout) > 0
    honest = run_cli(["sweep", "--n-min", "2", "--n-max", "30", "--p-den-cap", "12", "--claim", "GM_EQ2"])
    gm = run_cli(["sweep", "--n-min", "2", "--n-max", "30", "--p-den-cap", "12", "--claim", "GM_EQ2"], CORRUPT_GM)
    main_bound = run_cli(["sweep", "--n-min", "2", "--n-max", "30", "--p-den-cap", "12", "--claim", "THM1_RELAXED"], CORRUPT_MAIN)
    codes = (first.returncode, honest.returncode, gm.returncode, main_bound.returncode)
    ok = identical and codes == (0, 0, 2, 2)
    record("12", ok, f"byte-identical CSV ({len(first.stdout)} bytes): {identical}; exit codes honest/honest/corrupt/corrupt = {codes}")
    assert ok, (codes, first.stderr[-500:], gm.stderr[-500:], main_bound.stderr[-500:])
