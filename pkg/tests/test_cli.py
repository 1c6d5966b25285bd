"""Command-line behavior: flows, output stability, exit codes."""

import pytest

from salientrank import session as sess
from salientrank.cli import main
from salientrank.salience import Tier

from conftest import (
    LATENT_JUDGMENTS,
    SAMPLE_ATTRIBUTES,
    SAMPLE_ORDER,
    URGENCY_SCORES,
    VALUE_SCORES,
)


@pytest.fixture
def run(capsys):
    def invoke(*argv):
        code = main(list(argv))
        captured = capsys.readouterr()
        return code, captured.out, captured.err

    return invoke


@pytest.fixture
def session_file(tmp_path):
    return str(tmp_path / "demo.salie.json")


def enter_sample_dataset(run, file):
    assert run("init", file, "--name", "Demo")[0] == 0
    for sid in SAMPLE_ORDER:
        power, legitimacy, urgency = SAMPLE_ATTRIBUTES[sid]
        argv = ["stakeholder", "add", file, "--id", sid, "--name", sid.upper()]
        argv += ["--power"] if power else []
        argv += ["--legitimacy"] if legitimacy else []
        argv += ["--urgency"] if urgency else []
        assert run(*argv)[0] == 0
    for a, b, judgment in LATENT_JUDGMENTS:
        code, _, _ = run(
            "compare", file, "--group", "latent", "--pair", a, b, "--judgment", str(judgment)
        )
        assert code == 0
    code, _, _ = run(
        "priorities", file,
        "--override", "latent=0.33", "--override", "expectant=0.57",
        "--override", "definitive=0.75",
    )
    assert code == 0
    for i in range(1, 9):
        assert run("requirement", "add", file, "--id", f"Req{i}", "--title", f"Requirement {i}")[0] == 0
    for factor, table in (("value", VALUE_SCORES), ("urgency", URGENCY_SCORES)):
        for rid, row in table.items():
            for group, score in zip(("latent", "expectant", "definitive"), row):
                code, _, _ = run(
                    "score", file, "--factor", factor, "--group", group,
                    "--requirement", rid, "--score", str(score),
                )
                assert code == 0


class TestInit:
    def test_creates_loadable_file(self, run, session_file):
        code, out, _ = run("init", session_file, "--name", "Demo")
        assert code == 0
        assert "created" in out
        assert sess.load_path(session_file).name == "Demo"

    def test_refuses_to_overwrite(self, run, session_file):
        run("init", session_file, "--name", "Demo")
        code, _, err = run("init", session_file, "--name", "Demo")
        assert code == 3
        assert err.startswith("error[IO_ERROR]:")
        assert run("init", session_file, "--name", "Demo", "--force")[0] == 0

    def test_env_var_supplies_the_path(self, run, session_file, monkeypatch):
        monkeypatch.setenv("SALIENTRANK_SESSION", session_file)
        assert run("init", "--name", "Demo")[0] == 0
        assert sess.load_path(session_file).name == "Demo"

    def test_no_path_anywhere_is_a_usage_error(self, run, monkeypatch):
        monkeypatch.delenv("SALIENTRANK_SESSION", raising=False)
        code, _, err = run("init", "--name", "Demo")
        assert code == 1
        assert err.startswith("error[USAGE]:")


class TestStakeholders:
    def test_add_prints_assigned_tier(self, run, session_file):
        run("init", session_file, "--name", "Demo")
        code, out, _ = run(
            "stakeholder", "add", session_file, "--id", "s6", "--name", "Sponsor",
            "--power", "--legitimacy", "--urgency",
        )
        assert code == 0
        assert "s6: definitive" in out

    def test_add_flags_zero_attribute_records(self, run, session_file):
        run("init", session_file, "--name", "Demo")
        code, out, _ = run("stakeholder", "add", session_file, "--id", "sx", "--name", "X")
        assert code == 0
        assert "non-stakeholder (0 attributes)" in out

    def test_duplicate_id_exits_2(self, run, session_file):
        run("init", session_file, "--name", "Demo")
        run("stakeholder", "add", session_file, "--id", "s1", "--name", "A", "--power")
        code, _, err = run(
            "stakeholder", "add", session_file, "--id", "s1", "--name", "B", "--power", "--urgency"
        )
        assert code == 2
        assert err.startswith("error[DUPLICATE_ID]:")


class TestCompare:
    @pytest.fixture
    def latent_trio(self, run, session_file):
        run("init", session_file, "--name", "Demo")
        for sid in ("s1", "s4", "s5"):
            run("stakeholder", "add", session_file, "--id", sid, "--name", sid, "--power")
        return session_file

    def test_progress_and_consistency_feedback(self, run, latent_trio):
        run("compare", latent_trio, "--group", "latent", "--pair", "s1", "s4", "--judgment", "2")
        run("compare", latent_trio, "--group", "latent", "--pair", "s1", "s5", "--judgment", "3")
        code, out, _ = run(
            "compare", latent_trio, "--group", "latent", "--pair", "s4", "s5", "--judgment", "4"
        )
        assert code == 0
        assert "3/3 pairs filled" in out
        assert "CR 0.0930 (consistent)" in out

    def test_fraction_judgments_accepted(self, run, latent_trio):
        code, out, _ = run(
            "compare", latent_trio, "--group", "latent", "--pair", "s4", "s1", "--judgment", "1/2"
        )
        assert code == 0
        assert "s4 vs s1 = 1/2" in out

    def test_decimal_judgments_snap_with_warning(self, run, latent_trio):
        code, out, err = run(
            "compare", latent_trio, "--group", "latent", "--pair", "s1", "s4", "--judgment", "0.4"
        )
        assert code == 0
        assert "warning:" in err and "1/3" in err
        assert "s1 vs s4 = 1/3" in out

    def test_off_scale_judgment_exits_2(self, run, latent_trio):
        code, _, err = run(
            "compare", latent_trio, "--group", "latent", "--pair", "s1", "s4", "--judgment", "11"
        )
        assert code == 2
        assert err.startswith("error[OFF_SCALE_JUDGMENT]:")

    def test_unknown_member_exits_2(self, run, latent_trio):
        code, _, err = run(
            "compare", latent_trio, "--group", "latent", "--pair", "s1", "zz", "--judgment", "2"
        )
        assert code == 2
        assert err.startswith("error[UNKNOWN_ENTITY]:")

    def test_bad_group_name_is_usage(self, run, latent_trio):
        code, _, err = run(
            "compare", latent_trio, "--group", "core", "--pair", "s1", "s4", "--judgment", "2"
        )
        assert code == 1
        assert err.startswith("error[USAGE]:")


class TestPriorities:
    def test_prints_member_weights_and_consistency(self, run, session_file):
        enter_sample_dataset(run, session_file)
        code, out, _ = run("priorities", session_file)
        assert code == 0
        assert "s1  0.5171" in out
        assert "s4  0.3586" in out
        assert "s5  0.1243" in out
        assert "mean 0.3333  priority 0.3300  (override)" in out
        assert "CR 0.0930  consistent" in out

    def test_overrides_persist(self, run, session_file):
        enter_sample_dataset(run, session_file)
        s = sess.load_path(session_file)
        assert s.priority_overrides == {
            Tier.LATENT: 0.33, Tier.EXPECTANT: 0.57, Tier.DEFINITIVE: 0.75,
        }

    def test_unknown_tier_in_override_is_usage(self, run, session_file):
        enter_sample_dataset(run, session_file)
        code, _, err = run("priorities", session_file, "--override", "critical=0.4")
        assert code == 1
        assert err.startswith("error[USAGE]:")

    def test_negative_override_exits_2(self, run, session_file):
        enter_sample_dataset(run, session_file)
        code, _, err = run("priorities", session_file, "--override", "latent=-0.4")
        assert code == 2
        assert err.startswith("error[NEGATIVE_PRIORITY]:")


class TestRank:
    def test_table_order_and_stability(self, run, session_file):
        enter_sample_dataset(run, session_file)
        code, out1, _ = run("rank", session_file)
        assert code == 0
        rows = [line.split() for line in out1.splitlines()[1:]]
        assert [r[1] for r in rows] == [
            "Req1", "Req3", "Req2", "Req4", "Req6", "Req5", "Req8", "Req7",
        ]
        assert rows[0][2:] == ["7.1700", "6.8400", "14.0100"]
        _, out2, _ = run("rank", session_file)
        assert out2 == out1  # byte-identical on identical state

    def test_top_k(self, run, session_file):
        enter_sample_dataset(run, session_file)
        code, out, _ = run("rank", session_file, "--top", "3")
        assert code == 0
        assert len(out.splitlines()) == 4
        code, _, err = run("rank", session_file, "--top", "0")
        assert code == 1

    def test_ranking_before_scores_exits_2(self, run, session_file):
        run("init", session_file, "--name", "Demo")
        code, _, err = run("rank", session_file)
        assert code == 2
        assert err.startswith("error[VALIDATION_FAILED]:")

    def test_export_writes_csv(self, run, session_file, tmp_path):
        enter_sample_dataset(run, session_file)
        out_csv = tmp_path / "ranking.csv"
        code, out, _ = run("rank", session_file, "--export", str(out_csv))
        assert code == 0
        lines = out_csv.read_text().splitlines()
        assert lines[0] == "requirement_id,title,value_weight,urgency_weight,total,rank"
        assert lines[1] == "Req1,Requirement 1,7.1700,6.8400,14.0100,1"


class TestWhatIf:
    def test_deltas_against_baseline(self, run, session_file):
        enter_sample_dataset(run, session_file)
        code, out, _ = run("whatif", session_file, "--priority", "definitive=0")
        assert code == 0
        rows = {line.split()[1]: line.split() for line in out.splitlines()[1:]}
        assert rows["Req6"][-1] == "+1"
        assert rows["Req4"][-1] == "-1"
        assert rows["Req1"][-1] == "0"

    def test_never_persists(self, run, session_file):
        enter_sample_dataset(run, session_file)
        _, baseline, _ = run("rank", session_file)
        run("whatif", session_file, "--priority", "definitive=0")
        _, after, _ = run("rank", session_file)
        assert after == baseline

    def test_requires_at_least_one_priority(self, run, session_file):
        enter_sample_dataset(run, session_file)
        code, _, err = run("whatif", session_file)
        assert code == 1
        assert err.startswith("error[USAGE]:")


class TestValidate:
    def test_fresh_file_reports_empty_lists(self, run, session_file):
        run("init", session_file, "--name", "Demo")
        code, out, _ = run("validate", session_file)
        assert code == 2
        assert "no stakeholders defined" in out
        assert "no requirements defined" in out

    def test_complete_dataset_is_valid(self, run, session_file):
        enter_sample_dataset(run, session_file)
        code, out, _ = run("validate", session_file)
        assert code == 0
        assert "valid" in out

    def test_missing_file_exits_3(self, run, tmp_path):
        code, _, err = run("validate", str(tmp_path / "missing.salie.json"))
        assert code == 3
        assert err.startswith("error[IO_ERROR]:")


class TestUsage:
    def test_unknown_command(self, run):
        code, _, err = run("frobnicate")
        assert code == 1
        assert err.startswith("error[USAGE]:")

    def test_missing_required_flag(self, run, session_file):
        code, _, err = run("init", session_file)
        assert code == 1
        assert err.startswith("error[USAGE]:")

    def test_help_exits_0(self, run):
        code, out, _ = run("--help")
        assert code == 0
