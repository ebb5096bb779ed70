import subprocess
import sys

import pytest

from gptlab import catalog, theoryfile
from gptlab.cli import run


@pytest.fixture
def capture(capsys):
    def invoke(*argv):
        code = run(list(argv))
        out = capsys.readouterr().out
        return code, out

    return invoke


def test_examples_list(capture):
    code, out = capture("examples", "list")
    assert code == 0
    assert out.splitlines() == list(catalog.bundled_names())


def test_examples_export_round_trip(capture, tmp_path):
    target = tmp_path / "rebit.gpt"
    code, _ = capture("examples", "export", "rebit", "--output", str(target))
    assert code == 0
    assert theoryfile.parse_path(str(target)) == catalog.get("rebit")


def test_analyze_rebit_narrative(capture):
    code, out = capture("analyze", "rebit", "--format", "structured")
    assert code == 0
    assert "no_restriction.holds = no" in out
    assert "completion.completion_simplicial = no" in out
    assert "completion_classification.verdict = ontologically contextual" in out
    assert "embedding_same_dimension.model_found = no" in out
    assert "embedding_lp.model_ontic_size = 4" in out
    assert "indistinguishability.distribution_1 = [1/2, 0, 0, 1/2]" in out
    assert "indistinguishability.distribution_2 = [1/4, 1/4, 1/4, 1/4]" in out


def test_analyze_verdicts(capture):
    for name, expected in (
        ("classical_bit", "ontologically noncontextual"),
        ("spekkens_container", "ontologically noncontextual"),
        ("spekkens_toy", "ontologically noncontextual"),
        ("rebit", "ontologically contextual"),
        ("rebit_completion", "ontologically contextual"),
    ):
        code, out = capture("analyze", name)
        assert code == 0
        conclusion = out[out.index("[conclusion]") :]
        assert expected in conclusion, name


def test_table_command(capture):
    code, out = capture("table", "spekkens_toy", "--format", "structured")
    assert code == 0
    assert "statistics.table_rank = 4" in out
    code, out = capture("table", "rebit", "--format", "structured")
    assert "statistics.table_rank = 3" in out


def test_table_alias(capture):
    code, out = capture("table", "trit")
    assert code == 0 and "classical_trit" in out


def test_complete_command(capture):
    code, out = capture("complete", "rebit", "--mode", "states")
    assert code == 0
    assert "[1/2, 1/2, 1/2]" in out
    assert "no-restriction holds on result : yes" in out


def test_complete_mode_effects(capture):
    code, out = capture("complete", "rebit", "--mode", "effects")
    assert code == 0
    # the effect side is recomputed; the original states stay
    assert "[-1/2, 0, 1/2]" in out
    assert "[1, 1, 1]" in out  # a grown effect generator
    assert "no-restriction holds on result : yes" in out


def test_witness_lemma2_on_restricted_theory(capture):
    code, out = capture("witness", "rebit", "--lemma2")
    assert code == 0
    assert "witness point       : [0, 0, 1/2]" in out
    assert "not settle contextuality" in out


def test_embed_commands(capture):
    code, out = capture("embed", "rebit", "--exact-dim")
    assert code == 0 and "model found                      : no" in out
    code, out = capture("embed", "rebit")
    assert code == 0 and "model ontic size   : 4" in out
    code, out = capture("embed", "rebit_completion")
    assert code == 0 and "infeasibility certificate" in out


def test_witness_commands(capture):
    code, out = capture("witness", "rebit_completion", "--lemma2")
    assert code == 0
    assert "witness point       : [0, 0, 1/2]" in out
    code, out = capture("witness", "rebit", "--indistinguishable")
    assert code == 0
    assert "[1/2, 0, 0, 1/2]" in out


def test_classify_resource_commands(capture):
    code, out = capture("classify-resource", "trit", "--effect", "1/2,1/2,1/2")
    assert code == 0 and "classification             : classical" in out
    code, out = capture("classify-resource", "trit", "--effect", "3/2,0,-1/2")
    assert code == 0 and "classification             : nonclassical" in out
    code, out = capture("classify-resource", "classical_bit", "--effect", "1,0,0")
    assert code == 0 and "dimension-raising" in out


def test_classify_resource_from_file_bonus(capture, tmp_path):
    g = catalog.get("classical_trit")
    text = theoryfile.serialize(g) + "\nbonus:\n  b = effect [3/2, 0, -1/2]\n"
    path = tmp_path / "trit_plus.gpt"
    path.write_text(text, encoding="utf-8")
    code, out = capture("classify-resource", str(path))
    assert code == 0 and "nonclassical" in out


def test_verify_flag(capture):
    for argv in (
        ("analyze", "rebit", "--verify"),
        ("analyze", "spekkens_container", "--verify"),
        ("classify-resource", "trit", "--effect", "3/2,0,-1/2", "--verify"),
    ):
        code, out = capture(*argv)
        assert code == 0
        assert "verified certificates:" in out


def test_structured_format_stability(capture):
    _, first = capture("analyze", "spekkens_toy", "--format", "structured")
    _, second = capture("analyze", "spekkens_toy", "--format", "structured")
    assert first == second
    assert "report = analysis of spekkens_toy" in first
    assert "conclusion.theory_verdict = ontologically noncontextual" in first


def test_human_format_stability(capture):
    _, first = capture("analyze", "rebit")
    _, second = capture("analyze", "rebit")
    assert first == second


def test_exit_codes_via_subprocess(tmp_path):
    env_ok = subprocess.run(
        [sys.executable, "-m", "gptlab.cli", "table", "classical_bit"],
        capture_output=True,
        text=True,
    )
    assert env_ok.returncode == 0

    unknown = subprocess.run(
        [sys.executable, "-m", "gptlab.cli", "table", "nonexistent"],
        capture_output=True,
        text=True,
    )
    assert unknown.returncode == 1
    assert "unknown bundled theory" in unknown.stderr

    bad = tmp_path / "broken.gpt"
    bad.write_text("dimension: 2\nunit: [1, 1]\nno_restriction: false\neffects:\n  a = [1/0, 0]\n")
    broken = subprocess.run(
        [sys.executable, "-m", "gptlab.cli", "analyze", str(bad)],
        capture_output=True,
        text=True,
    )
    assert broken.returncode == 1
    assert "broken.gpt:5" in broken.stderr


def test_invalid_theory_reports_and_exits_zero(capture, tmp_path):
    # an inconsistent but parseable theory: analysis completes, verdict is data
    text = (
        "dimension: 2\nunit: [1, 1]\nno_restriction: false\n"
        "effects:\n  a = [1, 0]\n  b = [1/2, 1/2]\n"
        "states:\n  p = [1, 0]\n  q = [0, 1]\n"
    )
    path = tmp_path / "inconsistent.gpt"
    path.write_text(text, encoding="utf-8")
    code, out = capture("analyze", str(path), "--format", "structured")
    assert code == 0
    assert "validation.consistent = no" in out
    assert "missing-complement" in out
