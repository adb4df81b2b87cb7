import os

import pytest

from hcp3.cli import EXIT_NO, EXIT_OK, EXIT_UNKNOWN, EXIT_USAGE, run
from hcp3.gadgets import petersen
from hcp3.graph_core import degrees, parse_graph, read_trace, serialize_graph


def write(path, text):
    path.write_text(text, encoding="utf-8")
    return str(path)


@pytest.fixture
def k10(tmp_path):
    path = str(tmp_path / "k10.hcp")
    assert run(["gen", "k10", "-o", path]) == EXIT_OK
    return path


@pytest.fixture
def triangle(tmp_path):
    return write(tmp_path / "tri.hcp", "hcp undirected 3\n0 1\n1 2\n0 2\n")


class TestGen:
    def test_k10(self, k10):
        g = parse_graph(open(k10).read())
        assert g.n == 10 and g.num_edges == 45

    def test_family_and_named(self, tmp_path):
        assert run(["gen", "knight:8x8", "-o", str(tmp_path / "kn.hcp")]) == EXIT_OK
        assert run(["gen", "sousselier", "-o", str(tmp_path / "s.hcp")]) == EXIT_OK
        assert parse_graph((tmp_path / "kn.hcp").read_text()).num_edges == 168

    def test_unknown(self, tmp_path, capsys):
        assert run(["gen", "nonsense", "-o", str(tmp_path / "x.hcp")]) == EXIT_USAGE
        assert "error" in capsys.readouterr().err


class TestConvert:
    def test_sgate_report(self, k10, tmp_path):
        rep = tmp_path / "r.txt"
        out = tmp_path / "out.hcp"
        assert run(["convert", "-p", "sgate", "-i", k10, "-o", str(out), "--report", str(rep)]) == EXIT_OK
        assert "output_vertices: 1090" in rep.read_text()

    def test_quick_is_cubic(self, k10, tmp_path):
        out = tmp_path / "out.hcp"
        assert run(["convert", "-p", "quick", "-i", k10, "-o", str(out)]) == EXIT_OK
        g = parse_graph(out.read_text())
        assert (degrees(g).degree == 3).all() and g.n <= 4500

    def test_byte_identical(self, k10, tmp_path):
        outputs = []
        for tag in "ab":
            out, trc, rep = (tmp_path / f"{tag}.{ext}" for ext in ("hcp", "trc", "txt"))
            argv = ["convert", "-p", "3hcp:4", "-i", k10, "-o", str(out), "--trace", str(trc), "--report", str(rep)]
            assert run(argv) == EXIT_OK
            outputs.append([p.read_bytes() for p in (out, trc, rep)])
        assert outputs[0] == outputs[1]

    def test_stage_traces(self, k10, tmp_path):
        trc = tmp_path / "t.trc"
        run(["convert", "-p", "sgate", "-i", k10, "-o", str(tmp_path / "o.hcp"), "--trace", str(trc)])
        assert os.path.exists(f"{trc}.1") and os.path.exists(f"{trc}.2")
        assert read_trace(f"{trc}.1").input_n == 10

    def test_no_stage_traces(self, k10, tmp_path):
        trc = tmp_path / "t.trc"
        argv = ["convert", "-p", "sgate", "-i", k10, "-o", str(tmp_path / "o.hcp"), "--trace", str(trc)]
        run(argv + ["--no-stage-traces"])
        assert trc.exists() and not os.path.exists(f"{trc}.1")

    def test_summary_line(self, triangle, tmp_path, capsys):
        assert run(["convert", "-p", "cubify", "-i", triangle, "-o", str(tmp_path / "o.hcp")]) == EXIT_OK
        assert "3 -> 12 vertices" in capsys.readouterr().out

    def test_tsplib_input(self, tmp_path):
        src = write(
            tmp_path / "t.tsp",
            "NAME : t\nTYPE : HCP\nDIMENSION : 4\nEDGE_DATA_FORMAT : EDGE_LIST\n"
            "EDGE_DATA_SECTION\n1 2\n2 3\n3 4\n4 1\n-1\nEOF\n",
        )
        out = tmp_path / "o.hcp"
        assert run(["convert", "-p", "cubify", "--format", "tsplib", "-i", src, "-o", str(out)]) == EXIT_OK
        assert parse_graph(out.read_text()).n == 16

    def test_pipeline_mismatch(self, triangle, tmp_path, capsys):
        assert run(["convert", "-p", "karp", "-i", triangle, "-o", str(tmp_path / "o.hcp")]) == EXIT_USAGE
        assert "directed" in capsys.readouterr().err


class TestVerify:
    def convert(self, src, tmp_path, pipeline, *extra):
        out, trc = str(tmp_path / "o.hcp"), str(tmp_path / "o.trc")
        assert run(["convert", "-p", pipeline, "-i", src, "-o", out, "--trace", trc, *extra]) == EXIT_OK
        return out, trc

    @pytest.mark.parametrize("pipeline", ["sgate", "quick", "3hcp:4", "cubify"])
    def test_triangle(self, triangle, tmp_path, capsys, pipeline):
        out, trc = self.convert(triangle, tmp_path, pipeline)
        assert run(["verify", "-i", triangle, "-c", out, "--trace", trc]) == EXIT_OK
        text = capsys.readouterr().out
        assert "status: equivalent" in text and "lift_valid: true" in text

    def test_count(self, tmp_path, capsys):
        c5 = write(tmp_path / "c5.hcp", "hcp undirected 5\n0 1\n1 2\n2 3\n3 4\n0 4\n")
        out, trc = self.convert(c5, tmp_path, "cubify")
        assert run(["verify", "-i", c5, "-c", out, "--trace", trc, "--count"]) == EXIT_OK
        text = capsys.readouterr().out
        assert "input_count: 1" in text and "converted_count: 32" in text

    def test_without_stage_traces(self, triangle, tmp_path):
        out, trc = self.convert(triangle, tmp_path, "quick", "--no-stage-traces")
        assert run(["verify", "-i", triangle, "-c", out, "--trace", trc]) == EXIT_OK

    def test_mismatched_stage_traces_warn(self, triangle, tmp_path, capsys):
        out, trc = self.convert(triangle, tmp_path, "sgate")
        with open(f"{trc}.1", "w") as fh:
            fh.write("trace bogus 3 3\n0 2\n1 1\n2 0\n")
        assert run(["verify", "-i", triangle, "-c", out, "--trace", trc]) == EXIT_OK
        assert "warning" in capsys.readouterr().err

    def test_inequivalent(self, tmp_path, capsys):
        c4 = write(tmp_path / "c4.hcp", "hcp undirected 4\n0 1\n1 2\n2 3\n0 3\n")
        pet = write(tmp_path / "p.hcp", serialize_graph(petersen()))
        trc = write(tmp_path / "p.trc", "trace x 4 10\n" + "".join(f"{v} {v % 4}\n" for v in range(10)))
        assert run(["verify", "-i", c4, "-c", pet, "--trace", trc]) == EXIT_NO
        assert "status: inequivalent" in capsys.readouterr().out

    def test_inconclusive(self, tmp_path):
        pet = write(tmp_path / "p.hcp", serialize_graph(petersen()))
        trc = write(tmp_path / "p.trc", "trace x 10 10\n" + "".join(f"{v} {v}\n" for v in range(10)))
        assert run(["verify", "-i", pet, "-c", pet, "--trace", trc, "--budget", "1"]) == EXIT_UNKNOWN

    def test_trace_size_mismatch(self, triangle, tmp_path, capsys):
        trc = write(tmp_path / "t.trc", "trace x 4 3\n0 0\n1 1\n2 2\n")
        assert run(["verify", "-i", triangle, "-c", triangle, "--trace", trc]) == EXIT_USAGE
        assert "trace maps" in capsys.readouterr().err


class TestStatsAndDot:
    def test_stats(self, k10, capsys):
        assert run(["stats", "-i", k10]) == EXIT_OK
        out = capsys.readouterr().out
        assert "vertices: 10" in out and "k: 180" in out and "degree_histogram: 9:10" in out

    def test_dot(self, triangle, tmp_path):
        out = tmp_path / "t.dot"
        assert run(["dot", "-i", triangle, "-o", str(out)]) == EXIT_OK
        assert out.read_text().count("--") == 3


class TestErrors:
    def test_no_command(self, capsys):
        assert run([]) == EXIT_USAGE

    def test_bad_flag(self, capsys):
        assert run(["stats", "--bogus"]) == EXIT_USAGE

    def test_help(self, capsys):
        assert run(["--help"]) == EXIT_OK

    def test_missing_file(self, tmp_path, capsys):
        assert run(["stats", "-i", str(tmp_path / "none.hcp")]) == EXIT_USAGE
        assert "cannot read" in capsys.readouterr().err

    def test_parse_error(self, tmp_path, capsys):
        bad = write(tmp_path / "bad.hcp", "hcp undirected 2\n0 5\n")
        assert run(["stats", "-i", bad]) == EXIT_USAGE
        assert "line 2" in capsys.readouterr().err

    def test_bad_budget(self, triangle, capsys):
        assert run(["verify", "-i", triangle, "-c", triangle, "--trace", triangle, "--budget", "0"]) == EXIT_USAGE

    def test_unwritable_output(self, triangle, tmp_path, capsys):
        target = str(tmp_path / "missing" / "o.hcp")
        assert run(["convert", "-p", "sgate", "-i", triangle, "-o", target]) == EXIT_USAGE


def test_table1_exit_status_tracks_mismatches(capsys):
    code = run(["table1"])
    out = capsys.readouterr().out
    rows = [line for line in out.splitlines()[1:-1]]
    assert len(rows) == 12
    mismatched = sum("MISMATCH" in line for line in rows)
    assert code == (EXIT_NO if mismatched else EXIT_OK)
    assert f"{12 - mismatched}/12 match" in out
