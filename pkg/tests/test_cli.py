import csv
import io

import pytest

from binotail.cli import CliConfig, build_parser, main
from binotail.errors import DomainError
from binotail.harness import CSV_HEADER


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize(
    "quantity,expected",
    [("mad", "1/2 (0.500000000000)"), ("exceed", "3/4 (0.750000000000)"), ("tce:1", "4/3 (1.33333333333)"), ("pmf:1", "1/2 (0.500000000000)")],
)
def test_exact(capsys, quantity, expected):
    code, out, _ = run(capsys, "exact", "--n", "2", "--p", "1/2", "--quantity", quantity)
    assert code == 0 and out.strip() == expected


def test_exact_decimal_p_is_exact(capsys):
    code, out, _ = run(capsys, "exact", "--n", "10", "--p", "0.1", "--quantity", "tail:1")
    assert code == 0 and out.startswith("6513215599/10000000000 ")


def test_exact_median_check(capsys):
    assert run(capsys, "exact", "--n", "10", "--p", "1/10", "--quantity", "median-check")[1].strip() == "true"


@pytest.mark.parametrize("p", ["x", "1/0", "0.1.2"])
def test_malformed_p_is_usage_error(capsys, p):
    with pytest.raises(SystemExit) as exc:
        main(["exact", "--n", "2", "--p", p, "--quantity", "mad"])
    assert exc.value.code == 1
    assert "--p" in capsys.readouterr().err


def test_unknown_quantity(capsys):
    code, _, err = run(capsys, "exact", "--n", "2", "--p", "1/2", "--quantity", "foo")
    assert code == 1 and "unknown quantity" in err


def test_bound_theorem1(capsys):
    code, out, _ = run(capsys, "bound", "--n", "2", "--p", "1/2", "--kind", "theorem1")
    lines = out.splitlines()
    assert code == 0
    assert lines[0].startswith("interval: 0.1123") and ".." in lines[0]
    assert lines[1] == "tail: 3/4 (0.750000000000)" and lines[2] == "verdict: PROVEN"


def test_bound_sharp_and_tce(capsys):
    assert run(capsys, "bound", "--n", "9", "--p", "1/3", "--kind", "theorem1", "--sharp")[0] == 0
    code, out, _ = run(capsys, "bound", "--n", "2", "--p", "1/2", "--kind", "tce-int")
    assert code == 0 and "tce: 4/3" in out


def test_bound_domain_error(capsys):
    code, _, err = run(capsys, "bound", "--n", "10", "--p", "1/20", "--kind", "gm")
    assert code == 1 and "p >= 1/n" in err


def test_poisson_mad(capsys):
    code, out, _ = run(capsys, "poisson", "--lambda", "1", "--quantity", "mad")
    assert code == 0 and out.startswith("interval: 0.735758882342")


@pytest.mark.parametrize("quantity", ["pmf:0", "tail:2", "tce:1", "tce-check", "median-check", "stirling"])
def test_poisson_quantities(capsys, quantity):
    assert run(capsys, "poisson", "--lambda", "4", "--quantity", quantity)[0] == 0


def test_poisson_bound_reports_violation_with_exit_2(capsys):
    code, out, _ = run(capsys, "poisson", "--lambda", "12", "--quantity", "bound")
    assert code == 2 and "verdict: VIOLATED" in out


def test_sweep(capsys, tmp_path):
    path = tmp_path / "out.csv"
    code, _, err = run(capsys, "sweep", "--n-min", "2", "--n-max", "30", "--p-den-cap", "12", "--claim", "THM1_RELAXED", "--output", str(path))
    assert code == 0 and "VIOLATED=0" in err
    rows = list(csv.reader(io.StringIO(path.read_text())))
    assert tuple(rows[0]) == CSV_HEADER
    assert {r[6] for r in rows[1:]} <= {"PROVEN", "DOMAIN_SKIPPED"}


def test_sweep_lambda_grid_and_plain(capsys):
    code, out, _ = run(capsys, "sweep", "--claim", "POI_MEDIAN_INT", "--lambda-grid", "1,3/2,2", "--format", "plain")
    assert code == 0 and len(out.splitlines()) == 3


def test_sweep_poisson_violation_exit_2(capsys):
    assert run(capsys, "sweep", "--claim", "POI_THM_S3", "--lambda-grid", "12")[0] == 2


def test_sweep_inconclusive_exit_3(capsys):
    # 1 bit cannot separate the enclosure of sqrt(v/8)/(1+sqrt(v+1)) from 1/4 near v = 8
    code, _, err = run(capsys, "sweep", "--claim", "QUARTER_THRESHOLD", "--n-min", "33", "--n-max", "33", "--p-den-cap", "2", "--precision-bits", "1", "--precision-cap-bits", "2")
    assert code == 3 and "INCONCLUSIVE=1" in err


def test_sweep_unknown_claim(capsys):
    code, _, err = run(capsys, "sweep", "--claim", "BOGUS")
    assert code == 1 and "THM1_RELAXED" in err


def test_precision_config():
    with pytest.raises(DomainError):
        CliConfig(precision_bits=4096, precision_cap_bits=2048)


def test_bad_precision_flags(capsys):
    code, _, err = run(capsys, "bound", "--n", "2", "--p", "1/2", "--kind", "rt", "--precision-bits", "4096")
    assert code == 1 and "precision" in err


def test_orders(capsys):
    code, out, _ = run(capsys, "orders", "--n", "2", "--p", "1/4", "--q", "1/2")
    assert code == 0 and out.splitlines() == ["likelihood-ratio: holds", "hazard-rate: holds"]


def test_explore_pb(capsys):
    code, out, err = run(capsys, "explore-pb", "--max-len", "3", "--den-cap", "4")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0 and "exploratory" in err
    assert ["data", "1/2 1/2", "1/2", "1/2", "1", "1..1", "true"] in rows
    assert rows[-1][0] == "minimum"
    assert float(rows[-1][4].split("/")[0]) / float(rows[-1][4].split("/")[1]) <= 1


def test_claims_listing(capsys):
    code, out, _ = run(capsys, "claims")
    assert code == 0 and "THM1_RELAXED" in out and "POI_STIRLING" in out


def test_missing_subcommand():
    with pytest.raises(SystemExit) as exc:
        build_parser().parse_args([])
    assert exc.value.code == 1
