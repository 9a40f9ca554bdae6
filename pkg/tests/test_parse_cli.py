import json

import numpy as np
import pytest

from hblab import cli, config
from hblab.boundary import UnitCircleFunction as UCF
from hblab.parse import ParseError, parse_function


class TestParse:
    def test_simple_forms(self):
        zs = 0.8 * config.unit_circle_points(16)
        cases = {
            "(1+z)/2": lambda z: (1 + z) / 2,
            "z(1+z)/2": lambda z: z * (1 + z) / 2,
            "1-z": lambda z: 1 - z,
            "z^2": lambda z: z ** 2,
            "(3z+z^2)/4": lambda z: (3 * z + z ** 2) / 4,
            "0.5+0.5z": lambda z: 0.5 + 0.5 * z,
            "2i*z": lambda z: 2j * z,
            "-z/2": lambda z: -z / 2,
            "(z-0.5)/(1-0.5z)": lambda z: (z - 0.5) / (1 - 0.5 * z),
            "3/(2+z)": lambda z: 3 / (2 + z),
        }
        for text, fn in cases.items():
            got = parse_function(text)
            assert np.max(np.abs(got(zs) - fn(zs))) < 1e-12, text

    def test_structured_object(self):
        fn = parse_function({"type": "poly", "coeffs": [[0.5, 0], [0.5, 0]]})
        assert np.allclose(fn.to_polynomial(), [0.5, 0.5])
        fn2 = parse_function(
            '{"type":"rational","num":[[1,0]],"den":[[2,0],[1,0]]}')
        assert fn2(0) == pytest.approx(0.5)
        fn3 = parse_function(
            '{"type":"blaschke","zeros":[[0.5,0]],"phase":[1,0]}')
        assert abs(abs(complex(fn3(np.exp(1j)))) - 1) < 1e-12

    def test_errors(self):
        for bad in ("", "z +", "(1+z", "z^-1", "q", "1..2"):
            with pytest.raises(ParseError):
                parse_function(bad)


def run_cli(capsys, *argv):
    code = 0
    try:
        cli.main(list(argv))
    except SystemExit as exc:
        code = exc.code or 0
    out = capsys.readouterr().out
    lines = [ln for ln in out.strip().splitlines() if ln.startswith("{")]
    return code, json.loads(lines[-1]) if lines else None, out


class TestCli:
    def test_classify(self, capsys):
        code, doc, _ = run_cli(capsys, "classify", "--b", "(1+z)/2",
                               "--f", "1+z")
        assert code == 0 and doc["verdict"] == "cyclic"

    def test_decay_constant_column(self, capsys):
        code, doc, _ = run_cli(capsys, "decay", "--b", "(1+z)/2",
                               "--f", "1-z", "--n", "12")
        assert code == 0
        assert all(abs(d - 2.0) < 1e-9 for _n, d in doc["entries"])

    def test_clark_atom(self, capsys):
        code, doc, _ = run_cli(capsys, "clark", "--b", "z(1+z)/2",
                               "--alpha", "0")
        assert code == 0
        assert len(doc["atoms"]) == 1
        theta, mass = doc["atoms"][0]
        assert abs(theta) < 1e-9 and abs(mass - 2 / 3) < 1e-4

    def test_mate_and_validate(self, capsys):
        code, doc, _ = run_cli(capsys, "mate", "--b", "z/2")
        assert code == 0
        assert doc["a"]["coeffs"][0][0] == pytest.approx(np.sqrt(3) / 2)
        code, doc, _ = run_cli(capsys, "validate", "--b", "(1+z)/2")
        assert code == 0 and doc["valid"]

    def test_validate_extreme_exits_one(self, capsys):
        code, doc, _ = run_cli(capsys, "validate", "--b", "z")
        assert code == 1 and "error" in doc

    def test_norm_exact(self, capsys):
        code, doc, _ = run_cli(capsys, "norm", "--b", "(1+z)/2",
                               "--f", "z^2")
        assert code == 0
        assert doc["norm_sq"] == pytest.approx(10.0)
        assert doc["norm_sq_exact"] == "10"

    def test_sigma(self, capsys):
        code, doc, _ = run_cli(capsys, "sigma", "--b", "z/2")
        assert code == 0 and doc["nested"]
        assert doc["lower_angles"] == [] and doc["upper_angles"] == []

    def test_certify_rules(self, capsys):
        code, doc, _ = run_cli(capsys, "certify", "--rule", "A",
                               "--b", "(1+z)/2", "--f", "1+z",
                               "--e-arcs", "0.1:6.183",
                               "--f-arcs=-0.5:0.5")
        assert code == 0 and doc["certified"]
        code, doc, _ = run_cli(capsys, "certify", "--rule", "B",
                               "--b", "z/2", "--f", "1+z")
        assert code == 0 and doc["certified"]
        code, doc, _ = run_cli(capsys, "certify", "--rule", "C",
                               "--b", "z/2", "--g", "1")
        assert code == 0 and doc["certified"]
        code, doc, _ = run_cli(capsys, "certify", "--rule", "B",
                               "--b", "z/2", "--f", "z")
        assert code == 1 and not doc["certified"]

    def test_dirichlet_and_theta(self, capsys):
        code, doc, _ = run_cli(capsys, "dirichlet", "--atoms", "0:1",
                               "--f", "1-z")
        assert code == 0
        assert doc["norm_sq"] == pytest.approx(3.0)
        assert doc["verdict"] == "not_cyclic"
        code, doc, _ = run_cli(capsys, "theta", "--theta", "z^2",
                               "--f", "2+z")
        assert code == 0 and doc["verdict"] == "cyclic"
        assert len(doc["atoms"]) == 2

    def test_usage_error_exit_two(self, capsys):
        with pytest.raises(SystemExit) as exc:
            cli.main(["certify", "--rule", "D", "--b", "z/2"])
        assert exc.value.code == 2

    def test_deterministic_output(self, capsys):
        _, _, out1 = run_cli(capsys, "classify", "--b", "(1+z)/2",
                             "--f", "1+z")
        _, _, out2 = run_cli(capsys, "classify", "--b", "(1+z)/2",
                             "--f", "1+z")
        assert out1 == out2

    def test_csv_emission(self, capsys, tmp_path):
        target = tmp_path / "decay.csv"
        code, _doc, _ = run_cli(capsys, "decay", "--b", "(1+z)/2",
                                "--f", "1+z", "--n", "8",
                                "--csv", str(target))
        assert code == 0
        lines = target.read_text().strip().splitlines()
        assert lines[0] == "N,d2" and len(lines) == 9
