import json

import numpy as np
import pytest

from quadsphere.cli import main
from quadsphere.matrixdoc import MatrixDocument, dumps, loads
from quadsphere.linalg import SymMatrix


def write_doc(tmp_path, rows, name=None):
    path = tmp_path / "m.json"
    path.write_text(dumps(SymMatrix(np.array(rows, dtype=float)), name=name))
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestMatrixDocument:
    def test_round_trip_bit_exact(self):
        a = np.array([[1.0 / 3.0, -0.1], [-0.1, np.pi]])
        A = SymMatrix((a + a.T) / 2.0)
        doc = loads(dumps(A, name="x"))
        assert doc.name == "x"
        assert doc.matrix.a.tobytes() == A.a.tobytes()

    def test_digest_stable(self):
        A = SymMatrix(np.eye(2))
        assert MatrixDocument(A).digest() == MatrixDocument(A).digest()
        B = SymMatrix(2.0 * np.eye(2))
        assert MatrixDocument(A).digest() != MatrixDocument(B).digest()

    def test_rejects_malformed(self):
        with pytest.raises(ValueError):
            loads("not json")
        with pytest.raises(ValueError):
            loads("{}")
        with pytest.raises(ValueError):
            loads('{"n": 2, "rows": [[1.0]]}')


class TestAnalyze:
    def test_yes_structured(self, tmp_path, capsys):
        path = write_doc(tmp_path, np.diag([-1.0, 1.0, 1.0]), name="gold")
        code, out, _ = run(
            capsys, "analyze", path, "--format", "structured", "--samples", "2000"
        )
        assert code == 0
        report = json.loads(out)
        assert report["command"] == "analyze"
        assert report["name"] == "gold"
        assert report["verdict"]["status"] == "CertifiedQuasiconvex"
        assert report["verdict"]["certificate"]["rule"] == "DiagonalCharacterization"

    def test_no_with_witness(self, tmp_path, capsys):
        path = write_doc(tmp_path, [[0.0, 1.0], [1.0, 0.0]])
        code, out, _ = run(
            capsys, "analyze", path, "--format", "structured", "--samples", "2000"
        )
        assert code == 0  # a No verdict is payload, not a failure
        report = json.loads(out)
        assert report["verdict"]["status"] == "CertifiedNotQuasiconvex"
        assert report["verdict"]["witness"]["kind"] == "PairViolation"
        assert report["verdict"]["witness"]["margin"] == pytest.approx(1.0)

    def test_text_format(self, tmp_path, capsys):
        path = write_doc(tmp_path, np.diag([-1.0, 1.0, 1.0]))
        code, out, _ = run(capsys, "analyze", path, "--samples", "2000")
        assert code == 0
        assert "CertifiedQuasiconvex" in out

    def test_deterministic_output(self, tmp_path, capsys):
        path = write_doc(tmp_path, [[0.5, -0.25], [-0.25, 1.0]])
        args = ("analyze", path, "--format", "structured", "--samples", "2000")
        _, out1, _ = run(capsys, *args)
        _, out2, _ = run(capsys, *args)
        assert out1 == out2

    def test_out_file(self, tmp_path, capsys):
        path = write_doc(tmp_path, np.diag([-1.0, 1.0, 1.0]))
        dest = tmp_path / "report.json"
        code, out, _ = run(
            capsys, "analyze", path, "--format", "structured",
            "--samples", "2000", "--out", str(dest),
        )
        assert code == 0
        assert out == ""
        assert json.loads(dest.read_text())["command"] == "analyze"


class TestOtherCommands:
    def test_pareto(self, tmp_path, capsys):
        path = write_doc(tmp_path, [[0.0, -1.0], [-1.0, 0.0]])
        code, out, _ = run(capsys, "pareto", path, "--format", "structured")
        assert code == 0
        report = json.loads(out)
        assert report["pareto"]["min_value"] == pytest.approx(-1.0)
        assert report["pareto"]["exact"] is True
        assert report["pareto"]["pairs"]

    def test_copositive(self, tmp_path, capsys):
        path = write_doc(tmp_path, np.eye(3))
        code, out, _ = run(capsys, "copositive", path, "--format", "structured")
        assert code == 0
        assert json.loads(out)["copositive"] is True

    def test_minimize(self, tmp_path, capsys):
        path = write_doc(tmp_path, np.diag([-1.0, 1.0, 1.0]))
        code, out, _ = run(capsys, "minimize", path, "--format", "structured")
        assert code == 0
        report = json.loads(out)
        assert report["minimum"]["value"] == pytest.approx(-1.0)
        assert report["minimum"]["method"] == "ExactPareto"

    def test_probe(self, tmp_path, capsys):
        path = write_doc(tmp_path, [[0.0, 1.0], [1.0, 0.0]])
        code, out, _ = run(
            capsys, "probe", path, "--format", "structured", "--samples", "2000"
        )
        assert code == 0
        report = json.loads(out)
        assert report["probe"]["best_margin"] > 1e-8
        assert report["probe"]["witness"] is not None


class TestGenerate:
    def test_round_trip(self, tmp_path, capsys):
        dest = tmp_path / "gen.json"
        code, _, _ = run(
            capsys, "generate", "three-eig", "--n", "3",
            "--eigs", "0,3,4", "--out", str(dest),
        )
        assert code == 0
        code, out, _ = run(
            capsys, "analyze", str(dest), "--format", "structured",
            "--samples", "2000",
        )
        assert code == 0
        assert json.loads(out)["verdict"]["status"] == "CertifiedQuasiconvex"

    def test_stdout(self, capsys):
        code, out, _ = run(capsys, "generate", "householder", "--v", "1,1,1")
        assert code == 0
        doc = json.loads(out)
        np.testing.assert_allclose(doc["rows"], (np.eye(3) - 2.0 / 3.0))

    def test_negative_positive_seeded(self, capsys):
        code, out1, _ = run(
            capsys, "generate", "negative-positive", "--n", "4", "--seed", "7"
        )
        assert code == 0
        code, out2, _ = run(
            capsys, "generate", "negative-positive", "--n", "4", "--seed", "7"
        )
        assert out1 == out2

    def test_missing_params(self, capsys):
        code, _, err = run(capsys, "generate", "three-eig")
        assert code == 2
        assert "eigs" in err


class TestExitCodes:
    def test_missing_file(self, capsys):
        code, _, err = run(capsys, "analyze", "/nonexistent/m.json")
        assert code == 2
        assert err

    def test_malformed_document(self, tmp_path, capsys):
        path = tmp_path / "bad.json"
        path.write_text("{ nope")
        code, _, _ = run(capsys, "analyze", str(path))
        assert code == 2

    def test_too_small_matrix(self, tmp_path, capsys):
        path = write_doc(tmp_path, [[1.0]])
        code, _, _ = run(capsys, "analyze", path)
        assert code == 2

    def test_unknown_flag(self, capsys):
        code, _, _ = run(capsys, "analyze", "--bogus")
        assert code == 2

    def test_help(self, capsys):
        code, _, _ = run(capsys, "--help")
        assert code == 0
