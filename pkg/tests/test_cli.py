import io
import json
import subprocess
import sys

import pytest

from assemblies.cli import run
from assemblies.textformat import read_table

from .conftest import FIXTURES

GOLDEN = FIXTURES.parent / "golden"


def cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run([str(a) for a in argv], out, err)
    return code, out.getvalue(), err.getvalue()


class TestValidate:
    def test_ok(self):
        code, out, _ = cli("validate", FIXTURES / "chain2.sgt")
        assert code == 0 and "order 2" in out

    def test_garbled(self):
        code, _, err = cli("validate", FIXTURES / "corrupt" / "garbled.sgt")
        assert code == 2 and "(a,a,a)" in err

    @pytest.mark.parametrize(
        "name,category",
        [
            ("unknown-name.sgt", "unknown name"),
            ("wrong-arity.sgt", "wrong arity"),
            ("duplicate-name.sgt", "duplicate name"),
            ("missing-table.sgt", "missing section"),
            ("missing-kind.sgt", "missing section"),
            ("not-a-group.sgt", "not a group"),
        ],
    )
    def test_corrupt(self, name, category):
        code, _, err = cli("validate", FIXTURES / "corrupt" / name)
        assert code == 2 and category in err

    def test_missing_file(self):
        code, _, err = cli("validate", FIXTURES / "nope.sgt")
        assert code == 1 and "error" in err


class TestAnalyze:
    def test_rees_text_golden(self):
        code, out, _ = cli("analyze", FIXTURES / "rees-paper.sgt")
        assert code == 0
        assert out == (GOLDEN / "rees-paper.txt").read_text()
        assert "  (B,C): B·C = A, e(B·C) = A, e(B)·e(C) = -A\n" in out

    @pytest.mark.parametrize("name", ["rees-paper", "chain2"])
    def test_json_golden(self, name):
        code, out, _ = cli("analyze", "--format", "json", FIXTURES / f"{name}.sgt")
        assert code == 0 and out == (GOLDEN / f"{name}.json").read_text()

    def test_json_schema(self):
        _, out, _ = cli("analyze", "--format", "json", FIXTURES / "rees-paper.sgt")
        doc = json.loads(out)
        for key in ("schema", "kind", "order", "axioms", "e_map", "s_map", "idempotents",
                    "clifford_blocks", "strong", "idempotent_order_total", "semilattice_of_groups"):
            assert key in doc
        assert doc["schema"] == 1
        assert doc["axioms"]["A3"]["holds"] is False
        assert ["B", "C"] in doc["axioms"]["A3"]["failures"]

    def test_json_byte_stable(self):
        for path in sorted(FIXTURES.glob("*.sgt")):
            first = cli("analyze", "--format", "json", path)
            assert first == cli("analyze", "--format", "json", path)

    def test_non_closed_idempotents(self):
        code, out, _ = cli("analyze", FIXTURES / "matrix-nonclosed.sgt")
        assert code == 0
        assert "A1 ✗ A2 - A3 - witness AM" in out


class TestConstruct:
    def test_coset_assembly_of_c4(self, tmp_path):
        target = tmp_path / "a.sgt"
        code, _, _ = cli("construct", "coset-assembly", FIXTURES / "c4.sgt", "-o", target)
        assert code == 0
        code, out, _ = cli("analyze", "--format", "json", target)
        doc = json.loads(out)
        assert doc["order"] == 7 and doc["assembly"] and doc["idempotents_commute"]["holds"]

    @pytest.mark.parametrize(
        "args,order",
        [
            (["cyclic", "5"], 5),
            (["with-zero", FIXTURES / "c2.sgt"], 3),
            (["left-zero", "3"], 3),
            (["right-zero", "2"], 2),
            (["chain", "4"], 4),
            (["product", FIXTURES / "chain2.sgt", FIXTURES / "c2.sgt"], 4),
            (["power", FIXTURES / "c2.sgt"], 3),
            (["rees", FIXTURES / "c2.sgt", "0,1;0,0"], 8),
            (["rees-paper"], 8),
            (["semilattice-group", FIXTURES / "chain2.sgt", FIXTURES / "c2.sgt"], 4),
        ],
    )
    def test_kinds(self, tmp_path, args, order):
        target = tmp_path / "out.sgt"
        code, _, _ = cli("construct", *args, "-o", target)
        assert code == 0 and read_table(target).order == order

    def test_rees_paper_matches_fixture(self):
        _, out, _ = cli("construct", "rees-paper")
        assert out == (FIXTURES / "rees-paper.sgt").read_text()

    def test_unknown_kind(self):
        assert cli("construct", "free", "2")[0] == 1

    def test_arity(self):
        assert cli("construct", "cyclic")[0] == 1

    def test_cap(self):
        code, _, err = cli("--cap-order", "2", "construct", "power", FIXTURES / "c4.sgt")
        assert code == 3 and "cap" in err


class TestHom:
    def test_count(self):
        code, out, _ = cli("hom", FIXTURES / "chain2.sgt", FIXTURES / "chain2.sgt", "--count")
        assert code == 0 and out == "3\n"

    def test_map(self):
        code, out, _ = cli("hom", FIXTURES / "c4.sgt", FIXTURES / "c2.sgt", "--map", "0->0,1->1,2->0,3->1")
        assert code == 0 and out.startswith("homomorphism\n")
        assert "kernel: {0, 2}" in out

    def test_not_a_hom(self):
        code, out, _ = cli("hom", FIXTURES / "c2.sgt", FIXTURES / "c2.sgt", "--map", "0->1,1->1")
        assert code == 0 and "witness (0,0)" in out

    def test_all(self):
        code, out, _ = cli("hom", FIXTURES / "c2.sgt", FIXTURES / "c2.sgt", "--all")
        assert code == 0 and out.startswith("2 homomorphism(s)")

    def test_injectivity_inconsistency(self, tmp_path):
        src = tmp_path / "p.sgt"
        cli("construct", "product", FIXTURES / "chain2.sgt", FIXTURES / "c2.sgt", "-o", src)
        code, _, err = cli("hom", src, FIXTURES / "c2.sgt", "--map", "(0,0)->0,(0,1)->1,(1,0)->0,(1,1)->1")
        assert code == 4 and "share an image" in err

    def test_map_cap(self):
        code, _, _ = cli("--cap-maps", "1", "hom", FIXTURES / "c4.sgt", FIXTURES / "c4.sgt", "--count")
        assert code == 3

    def test_mode_required(self):
        assert cli("hom", FIXTURES / "c2.sgt", FIXTURES / "c2.sgt")[0] == 1


class TestSubCentreIso:
    def test_subassembly(self):
        code, out, _ = cli("sub", FIXTURES / "c4.sgt", "--subset", "0,2")
        assert code == 0 and out.startswith("subassembly: ✓")

    def test_not_subassembly(self):
        code, out, _ = cli("sub", FIXTURES / "c4.sgt", "--subset", "0,1")
        assert code == 0 and "witness (0,1)" in out

    def test_sub_on_non_assembly(self):
        assert cli("sub", FIXTURES / "rees-paper.sgt", "--subset", "A")[0] == 2

    def test_sub_unknown_name(self):
        assert cli("sub", FIXTURES / "c4.sgt", "--subset", "9")[0] == 1

    def test_centre_empty(self):
        code, out, _ = cli("centre", FIXTURES / "left-zero2.sgt")
        assert code == 0 and out == "centre: {} (empty)\n"

    def test_centre_s3(self):
        assert cli("centre", FIXTURES / "s3.sgt")[1] == "centre: {e}\n"

    def test_iso(self, tmp_path):
        target = tmp_path / "c2z.sgt"
        cli("construct", "power", FIXTURES / "c2.sgt", "-o", target)
        other = tmp_path / "wz.sgt"
        cli("construct", "with-zero", FIXTURES / "c2.sgt", "-o", other)
        code, out, _ = cli("iso", target, other)
        assert code == 0 and out.startswith("isomorphic: ")
        assert cli("iso", FIXTURES / "chain2.sgt", FIXTURES / "left-zero2.sgt")[1] == "not isomorphic\n"


class TestCensus:
    def test_classify_and_emit(self, tmp_path):
        code, out, _ = cli("census", "--max-order", "3", "--classify", "--emit", tmp_path)
        assert code == 0
        assert "order 3: 24 semigroups up to isomorphism" in out
        assert "equivalences: all hold" in out
        assert len(list(tmp_path.glob("order3_*.sgt"))) == 24
        summary = json.loads((tmp_path / "summary.json").read_text())
        assert summary["2"]["counts"]["is_assembly"] == 4
        for path in tmp_path.glob("*.sgt"):
            read_table(path)

    def test_order_five_needs_long(self):
        assert cli("census", "--max-order", "5")[0] == 3


def test_usage_error():
    assert cli("frobnicate")[0] == 1


def test_console_script():
    proc = subprocess.run(
        [sys.executable, "-m", "assemblies.cli", "validate", str(FIXTURES / "c4.sgt")],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0 and "order 4" in proc.stdout
