"""CLI tests: subcommand behavior, document round-trips, golden files."""

import json
import os
from fractions import Fraction

import pytest
from click.testing import CliRunner

from qga.cli import doc_to_multivector, main
from qga.model import QgaContext

GOLDEN = os.path.join(os.path.dirname(__file__), "golden")

F = Fraction


@pytest.fixture()
def runner():
    return CliRunner()


def run_ok(runner, args, **kwargs):
    res = runner.invoke(main, args, **kwargs)
    assert res.exit_code == 0, res.output
    return res.output


def circle_doc(runner, tmp_path):
    out = run_ok(runner, ["quadric-from-points", "--n", "2", "--mode", "rational",
                          "-p", "-1,0", "-p", "1,0", "-p", "0,-1", "-p", "0,1"])
    path = tmp_path / "circle.json"
    path.write_text(out, encoding="utf-8")
    return path, out


class TestCommands:
    def test_embed(self, runner):
        out = json.loads(run_ok(runner, ["embed", "--mode", "rational", "-p", "1,2"]))
        assert out["kind"] == "point"
        assert {"coeff": "1/2", "generators": [3]} in out["data"]["terms"]

    def test_quadric_from_points_ex1(self, runner, tmp_path):
        _, out = circle_doc(runner, tmp_path)
        doc = json.loads(out)
        assert doc["data"]["terms"] == [
            {"coeff": 4, "generators": [1]}, {"coeff": -1, "generators": [3]},
            {"coeff": 4, "generators": [4]}, {"coeff": -1, "generators": [6]}]
        assert doc["data"]["matrix"] == [[-2, 0, 0], [0, 2, 0], [0, 0, 2]]

    def test_classify(self, runner, tmp_path):
        path, _ = circle_doc(runner, tmp_path)
        out = json.loads(run_ok(runner, ["classify", "--mode", "rational", str(path)]))
        assert out == {"class": "quadric_vector", "conic": "general_conic"}

    def test_classify_point(self, runner):
        emb = run_ok(runner, ["embed", "--mode", "rational", "-p", "1,2"])
        out = json.loads(run_ok(runner, ["classify", "--mode", "rational", "-"],
                                input=emb))
        assert out["class"] == "normalized_point"
        assert out["coords"] == [1, 2]

    def test_invert(self, runner, tmp_path):
        path, _ = circle_doc(runner, tmp_path)
        out = json.loads(run_ok(runner, ["invert", "--quadric", str(path),
                                         "--point", "1,2"]))
        assert out == {"point": [0.2, 0.4]}
        out = json.loads(run_ok(runner, ["invert", "--quadric", str(path),
                                         "--point", "0,0"]))
        assert out == {"point": "infinity"}

    def test_chi_roundtrip(self, runner, tmp_path):
        path, out = circle_doc(runner, tmp_path)
        mat = run_ok(runner, ["chi", "--to", "matrix", "--mode", "rational", str(path)])
        vec = json.loads(run_ok(runner, ["chi", "--to", "vector", "--mode", "rational",
                                         "-"], input=mat))
        assert vec["data"]["terms"] == json.loads(out)["data"]["terms"]

    def test_hyperplane(self, runner):
        out = json.loads(run_ok(runner, ["hyperplane", "--mode", "rational",
                                         "-p", "0,0", "-p", "3,5"]))
        assert out["kind"] == "line"
        assert out["data"]["terms"] == [{"coeff": 10, "generators": [2]},
                                        {"coeff": -6, "generators": [5]}]

    def test_dualize_roundtrip_proportional(self, runner, tmp_path):
        path, out = circle_doc(runner, tmp_path)
        dual = run_ok(runner, ["dualize", "--direction", "to_opns", "--mode",
                               "rational", str(path)])
        back = run_ok(runner, ["dualize", "--direction", "to_ipns", "--mode",
                               "rational", "-"], input=dual)
        ctx = QgaContext(2)
        a = doc_to_multivector(json.loads(out), ctx, "rational")
        b = doc_to_multivector(json.loads(back), ctx, "rational")
        assert b.proportional_to(a)

    def test_motor(self, runner):
        out = json.loads(run_ok(runner, ["motor", "--rotor", "0.7,0",
                                         "--point", "1,0"]))
        import math
        assert out["point"][0] == pytest.approx(math.cos(1.4))
        assert out["point"][1] == pytest.approx(-math.sin(1.4))

    def test_gipns(self, runner, tmp_path):
        path, _ = circle_doc(runner, tmp_path)
        out = json.loads(run_ok(runner, ["gipns", "--mode", "rational", str(path)]))
        assert out["components"][0]["terms"] == [
            {"coeff": 2, "exponents": [0, 0]},
            {"coeff": -2, "exponents": [0, 2]},
            {"coeff": -2, "exponents": [2, 0]}]

    def test_sample_within_tolerance(self, runner, tmp_path):
        path, _ = circle_doc(runner, tmp_path)
        out = run_ok(runner, ["sample", "--quadric", str(path), "--box", "-2,2",
                              "--step", "0.25"])
        lines = out.strip().splitlines()
        assert lines[0] == "x,y"
        assert len(lines) > 10
        for line in lines[1:]:
            x, y = map(float, line.split(","))
            assert abs(x * x + y * y - 1) <= 2 * 0.25

    def test_cayley(self, runner):
        out = json.loads(run_ok(runner, ["cayley", "--n", "1", "--mode", "rational"]))
        assert out["table"]["e1*e1"] == []
        assert out["table"]["e3*e1"] == [
            {"coeff": -1, "generators": []}, {"coeff": -1, "generators": [1, 3]}]

    def test_qga_mode_env(self, runner):
        out = run_ok(runner, ["embed", "-p", "1,2"],
                     env={"QGA_MODE": "rational"})
        assert {"coeff": "1/2", "generators": [3]} in json.loads(out)["data"]["terms"]


class TestErrors:
    def test_usage_error_exit_2(self, runner):
        res = runner.invoke(main, ["embed", "-p", "1,2,3"])
        assert res.exit_code == 2

    def test_domain_error_exit_1(self, runner, tmp_path):
        path = tmp_path / "deg.json"
        res = runner.invoke(main, ["hyperplane", "--mode", "rational",
                                   "-p", "1,1", "-p", "1,1"])
        assert res.exit_code == 1
        err = json.loads(res.output.strip().splitlines()[-1])
        assert err["error"] == "DegeneratePoints"

    def test_missing_file_exit_1(self, runner):
        res = runner.invoke(main, ["invert", "--quadric", "nope.json",
                                   "--point", "1,2"])
        assert res.exit_code == 1


class TestGolden:
    def read(self, name):
        with open(os.path.join(GOLDEN, name), encoding="utf-8") as fh:
            return fh.read()

    def test_ex1_quadric(self, runner):
        out = run_ok(runner, ["quadric-from-points", "--n", "2", "--mode", "rational",
                              "-p", "-1,0", "-p", "1,0", "-p", "0,-1", "-p", "0,1"])
        assert out == self.read("ex1_quadric.json")

    def test_ex2_invert(self, runner):
        out = run_ok(runner, ["invert", "--quadric",
                              os.path.join(GOLDEN, "ex1_quadric.json"),
                              "--point", "1,2"])
        assert out == self.read("ex2_invert.json")

    def test_ellipsoid_quadric(self, runner):
        out = run_ok(runner, ["quadric-from-points", "--n", "3", "--mode", "rational",
                              "-p", "9/10,0,0", "-p", "-9/10,0,0", "-p", "0,3/4,0",
                              "-p", "0,-3/4,0", "-p", "0,0,5/4", "-p", "0,0,-5/4"])
        assert out == self.read("ellipsoid_quadric.json")

    def test_ellipsoid_invert(self, runner):
        out = run_ok(runner, ["invert", "--n", "3", "--quadric",
                              os.path.join(GOLDEN, "ellipsoid_quadric.json"),
                              "--point", "1,1,1"])
        assert out == self.read("ellipsoid_invert.json")

    def test_plane_x1(self, runner):
        out = run_ok(runner, ["hyperplane", "--n", "3", "--mode", "rational",
                              "-p", "1,1,1", "-p", "1,1,-1", "-p", "1,-1,1"])
        assert out == self.read("plane_x1.json")
