import json
import random
import re
import subprocess
import sys
from collections import Counter

import jsonschema
import pydot
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from reqtax import Severity, parse, render
from reqtax.cli import main
from reqtax.diagnostics import Diagnostic, Location
from reqtax.report import REPORT_SCHEMA, ExitClass, Report, classify_exit

import docgen

SEVEN = {
    ("uc-pre", "CONSTRAINS", "uc-post"),
    ("uc-alt-password", "EXCEPTS", "uc-step4"),
    ("s4.3-customer-def", "BELONGS", "s4.3"),
    ("s3.1-uptime", "DETAILS", "s3.1-downtime"),
    ("s2.1", "CHARACTERIZES", "s2.1-ordering"),
    ("s4.3-agent-role", "DISJOINS", "uc-alt-password"),
    ("s4.2-diagram", "EXPLAINS", "s4.1-goal"),
}


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def write(tmp_path):
    def _write(text, name="doc.srs"):
        p = tmp_path / name
        p.write_text(text, encoding="utf-8")
        return p
    return _write


class TestCheck:
    def test_corpus(self, capsys, corpus_path):
        code, out, _ = run(capsys, "check", corpus_path, "--json")
        assert code == 0
        report = json.loads(out)
        jsonschema.validate(report, REPORT_SCHEMA)
        assert report["summary"]["errors"] == 0
        # independent count of category keywords straight from the file
        text = corpus_path.read_text(encoding="utf-8")
        expected = Counter(re.findall(r"^\s*\[[^\]]+\]\s+([a-z]+)", text, re.M))
        got = {k: v for k, v in report["summary"]["categories"].items() if v}
        assert got == dict(expected)

    def test_unknown_category_is_parse_failure(self, capsys, write):
        code, out, _ = run(capsys, "check", write('[x] widget :: "..."'), "--json")
        assert code == 2
        report = json.loads(out)
        jsonschema.validate(report, REPORT_SCHEMA)
        assert report["summary"]["exit_class"] == "ParseFailed"
        assert report["diagnostics"][0]["rule"] == "P1"

    def test_duplicate_pair_exits_1(self, capsys, write):
        p = write('[a] behavior :: "x"\n[b] behavior :: "y"\n@relations\na DUPLICATES b\n@end\n')
        code, out, _ = run(capsys, "check", p)
        assert code == 1
        assert "R4" in out

    def test_strict_promotes_warnings(self, capsys, write):
        p = write('[log] behavior :: "x"\n  [c] component :: "log"\n  [r] behavior :: "y"\n')
        assert run(capsys, "check", p)[0] == 0
        assert run(capsys, "check", p, "--strict")[0] == 1

    def test_clean_strict(self, capsys, write):
        assert run(capsys, "check", write('[g] goal :: "grow"'), "--strict")[0] == 0

    def test_unreadable_file(self, capsys, tmp_path):
        code, out, err = run(capsys, "check", tmp_path / "missing.srs", "--json")
        assert code == 2
        assert "cannot read" in err
        jsonschema.validate(json.loads(out), REPORT_SCHEMA)

    def test_config_file(self, capsys, write, tmp_path):
        p = write('[log] behavior :: "x"\n  [c] component :: "log"\n  [r] behavior :: "y"\n')
        cfg = tmp_path / "lint.cfg"
        cfg.write_text("severity.R3 = error\n")
        assert run(capsys, "check", p, "--config", cfg)[0] == 1
        cfg.write_text("severity.R3 = loud\n")
        code, _, err = run(capsys, "check", p, "--config", cfg)
        assert code == 2 and "bad config" in err

    def test_several_files_sorted(self, capsys, write):
        b = write('[g] goal :: "x"', "b.srs")
        a = write('[x] widget :: "x"', "a.srs")
        code, out, _ = run(capsys, "check", b, a, "--json")
        reports = json.loads(out)
        assert [r["summary"]["file"] for r in reports] == [str(a), str(b)]
        assert code == 2
        for r in reports:
            jsonschema.validate(r, REPORT_SCHEMA)

    def test_text_report(self, capsys, corpus_path):
        _, out, _ = run(capsys, "check", corpus_path)
        assert "Clean" in out or "WarningsOnly" in out
        assert "MetaRequirement=" in out

    @settings(max_examples=100, deadline=None)
    @given(seed=st.integers(0, 2**32 - 1))
    def test_schema_and_exit_for_generated_input(self, seed, tmp_path_factory):
        rng = random.Random(seed)
        text = render(docgen.random_document(rng, n_elements=rng.randint(0, 15)))
        if rng.random() < 0.3 and text:
            lines = text.split("\n")
            lines.insert(rng.randrange(len(lines)), "[broken")
            text = "\n".join(lines)
        p = tmp_path_factory.mktemp("gen") / "g.srs"
        p.write_text(text, encoding="utf-8")
        code = main(["check", str(p), "--json"])
        from reqtax.cli import check_file
        from reqtax.lint import LintConfig

        report = check_file(str(p), LintConfig())
        jsonschema.validate(report.to_json(), REPORT_SCHEMA)
        assert code == report.exit_class.exit_code(False)


def _diag(sev):
    return Diagnostic("R1", sev, ("x",), "m", Location("f", 1))


@pytest.mark.parametrize(
    "severities, parse_failed, cls, normal, strict",
    [
        ([], False, ExitClass.CLEAN, 0, 0),
        ([Severity.INFO], False, ExitClass.CLEAN, 0, 0),
        ([Severity.INFO, Severity.WARNING], False, ExitClass.WARNINGS_ONLY, 0, 1),
        ([Severity.WARNING, Severity.ERROR], False, ExitClass.ERRORS, 1, 1),
        ([], True, ExitClass.PARSE_FAILED, 2, 2),
    ],
)
def test_exit_classes(severities, parse_failed, cls, normal, strict):
    diags = [_diag(s) for s in severities]
    assert classify_exit(diags, parse_failed) is cls
    assert (cls.exit_code(), cls.exit_code(strict=True)) == (normal, strict)
    assert Report("f", diags, parse_failed=parse_failed).exit_class is cls


class TestGraph:
    def test_corpus_has_seven_examples(self, capsys, corpus_path):
        code, out, _ = run(capsys, "graph", corpus_path, "--format", "json")
        assert code == 0
        edges = {(e["x"], e["kind"], e["y"]) for e in json.loads(out)["edges"]}
        assert SEVEN <= edges

    def test_single_element(self, capsys, write):
        _, out, _ = run(capsys, "graph", write('[a] goal :: "x"'), "--format", "json")
        g = json.loads(out)
        assert len(g["nodes"]) == 1 and g["edges"] == []
        assert g["nodes"][0]["label"] == "a\nGoal"

    def test_nested_pair_derived_belongs(self, capsys, write):
        p = write('[p] goal :: "x"\n  [c] goal :: "y"\n')
        _, out, _ = run(capsys, "graph", p, "--format", "json")
        (edge,) = json.loads(out)["edges"]
        assert (edge["x"], edge["kind"], edge["y"], edge["provenance"]) == ("c", "BELONGS", "p", "derived")
        _, out, _ = run(capsys, "graph", p, "--format", "json", "--declared-only")
        assert json.loads(out)["edges"] == []

    def test_dot_output(self, capsys, corpus_path):
        _, out, _ = run(capsys, "graph", corpus_path)
        (g,) = pydot.graph_from_dot_data(out)
        assert len(g.get_nodes()) >= 69
        assert "style=dashed" in out

    def test_parse_failure(self, capsys, write):
        code, _, err = run(capsys, "graph", write("[a] widget :: x"))
        assert code == 2 and "UnknownCategory" in err

    @settings(max_examples=100, deadline=None)
    @given(seed=st.integers(0, 2**32 - 1))
    def test_dot_parses_for_generated_documents(self, seed):
        from reqtax.report import graph_dot
        from reqtax.relations import all_edges

        d = docgen.random_document(random.Random(seed), n_elements=random.Random(seed).randint(0, 20))
        graphs = pydot.graph_from_dot_data(graph_dot(d))
        assert graphs and len(graphs) == 1
        g = graphs[0]
        names = {n.get_name().strip('"') for n in g.get_nodes()} - {"node"}
        assert len(names) == len(d)
        assert len(g.get_edges()) == len(all_edges(d))


class TestStats:
    def rows(self, out):
        lines = out.strip().split("\n")
        assert lines[0] == "section\tkey\tcount"
        return {(s, k): int(n) for s, k, n in (line.split("\t") for line in lines[1:])}

    def test_empty(self, capsys, write):
        code, out, _ = run(capsys, "stats", write(""))
        assert code == 0
        assert set(self.rows(out).values()) == {0}

    def test_three_goals(self, capsys, write):
        _, out, _ = run(capsys, "stats", write('[a] goal :: "x"\n[b] goal :: "y"\n[c] goal :: "z"\n'))
        rows = self.rows(out)
        cats = {k: v for (s, k), v in rows.items() if s == "category"}
        assert cats.pop("Goal") == 3 and set(cats.values()) == {0}
        assert rows[("elements", "total")] == 3

    def test_corpus_meta_most_frequent(self, capsys, corpus_path):
        _, out, _ = run(capsys, "stats", corpus_path, "--json")
        cats = {r["key"]: r["count"] for r in json.loads(out) if r["section"] == "category"}
        top = max(cats, key=cats.get)
        assert top == "MetaRequirement"
        text = corpus_path.read_text(encoding="utf-8")
        assert cats[top] == len(re.findall(r"^\s*\[[^\]]+\]\s+meta\b", text, re.M))

    def test_plot_dir(self, capsys, corpus_path, tmp_path):
        code, _, err = run(capsys, "stats", corpus_path, "--plot-dir", tmp_path / "figs")
        assert code == 0
        pngs = sorted(p.name for p in (tmp_path / "figs").iterdir())
        assert pngs == ["sbe_categories.png", "sbe_relations.png"]
        assert all((tmp_path / "figs" / n).read_bytes().startswith(b"\x89PNG") for n in pngs)
        assert "wrote" in err

    def test_parse_failure(self, capsys, write):
        assert run(capsys, "stats", write("nonsense"))[0] == 2


class TestSuggestAndCrosswalk:
    def test_suggest_statement(self, capsys):
        code, out, _ = run(capsys, "suggest", "Section 2. Functional Objectives")
        assert code == 0 and out.startswith("1. MetaRequirement")

    def test_suggest_json(self, capsys):
        _, out, _ = run(capsys, "suggest", "--json", "Down time shall not exceed x hours")
        assert json.loads(out)[0] == {"category": "Constraint", "pattern": "bound-or-condition"}

    def test_suggest_no_match(self, capsys):
        assert run(capsys, "suggest", "Extension Points: none")[1].strip() == "no suggestion"

    def test_suggest_file(self, capsys, corpus_path):
        _, out, _ = run(capsys, "suggest", "--file", corpus_path)
        assert len(out.strip().split("\n")) == 69

    def test_crosswalk(self, capsys):
        assert run(capsys, "crosswalk", "wb", "Feature")[1].strip() == "Behavior — From viewpoint of actor (e.g. user)"
        assert run(capsys, "crosswalk", "avl", "Expectations")[1].strip() == "Goal"

    def test_crosswalk_unknown(self, capsys):
        code, _, err = run(capsys, "crosswalk", "wb", "Nonexistent")
        assert code == 1 and "Feature" in err


def test_console_entry_point(corpus_path):
    proc = subprocess.run(
        [sys.executable, "-m", "reqtax", "check", str(corpus_path)],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0, proc.stderr
    assert "sbe.srs" in proc.stdout


def test_graph_round_trip_unchanged(corpus_doc):
    assert parse(render(corpus_doc)) == corpus_doc
