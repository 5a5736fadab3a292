"""End-to-end command line behavior and exit codes."""

import json
import subprocess
import sys

import pytest

import golden
from tropsched import TropScalar
from tropsched.cli import main

NO_RELEASE = """\
activity a start-by=10 finish-by=20
activity b start-by=10 finish-by=20
start-finish a -> a lag=3
start-finish b -> b lag=4
start-start a -> b lag=1
"""

CYCLIC = """\
activity a start-by=9 finish-by=11
activity b start-by=9 finish-by=11
start-finish a -> a lag=2
start-finish b -> b lag=2
start-start a -> b lag=1
start-start b -> a lag=0
"""

GOOD_SCHED = """\
session-1 0 4
session-2 1 5
session-3 4 9
session-4 0 5
session-5 5 8
"""

BAD_SCHED = GOOD_SCHED.replace("session-2 1 5", "session-2 0 4")

INSTANCE = golden.fixture("vaccination.inst")
SCHEDULE = golden.fixture("vaccination-optimal.sched")


class TestSolve:
    def test_text_output(self, capsys):
        assert main(["solve", INSTANCE, "--objective", "makespan"]) == 0
        out = capsys.readouterr().out
        assert "title: Vaccination sessions" in out
        assert "objective: makespan" in out
        assert "optimum: 9" in out
        assert "status: unique optimal schedule" in out
        assert "parameter box: u_low=(0, 0, 0, 0, 0) u_high=(0, 1, 4, 0, 5)" in out
        assert "  session-3  start=4  finish=9" in out

    def test_json_output(self, capsys):
        assert main(["solve", INSTANCE, "--objective", "makespan", "--format", "json"]) == 0
        obj = json.loads(capsys.readouterr().out)
        assert obj["format"] == "tropsched-result/1"
        assert obj["theta"] == "9"
        assert obj["unique"] is True
        assert obj["schedules"]["low"] == obj["schedules"]["high"]
        assert obj["verification"]["high"]["feasible"] is True

    def test_deviation_family(self, capsys):
        assert main(["solve", INSTANCE, "--objective", "deviation"]) == 0
        out = capsys.readouterr().out
        assert "optimum: 5" in out
        assert "status: family of optimal schedules" in out
        assert "earliest optimal schedule (u = u_low):" in out
        assert "latest optimal schedule (u = u_high):" in out
        assert "  session-3  start=5  finish=10" in out

    def test_out_file(self, tmp_path, capsys):
        target = tmp_path / "result.json"
        code = main(
            [
                "solve", INSTANCE,
                "--objective", "makespan",
                "--format", "json",
                "--out", str(target),
            ]
        )
        assert code == 0
        assert capsys.readouterr().out == ""
        assert json.loads(target.read_text())["theta"] == "9"

    def test_no_release_times(self, tmp_path, capsys):
        path = tmp_path / "free.inst"
        path.write_text(NO_RELEASE)
        assert main(["solve", str(path), "--objective", "makespan"]) == 0
        out = capsys.readouterr().out
        assert "earliest optimal schedule: none" in out
        assert "shift arbitrarily early" in out

    def test_float_mode(self, tmp_path, capsys):
        path = tmp_path / "f.inst"
        path.write_text(
            "activity a release=0.5 start-by=4.5 finish-by=9\n"
            "start-finish a -> a lag=3.5\n"
        )
        code = main(["solve", str(path), "--objective", "makespan", "--mode", "float"])
        assert code == 0
        assert "optimum: 3.5" in capsys.readouterr().out

    def test_missing_file(self, capsys):
        assert main(["solve", "/nonexistent.inst", "--objective", "makespan"]) == 2
        assert "error: cannot read /nonexistent.inst" in capsys.readouterr().err

    def test_parse_error(self, tmp_path, capsys):
        path = tmp_path / "broken.inst"
        path.write_text("activity a start-by=1e9 finish-by=2\n")
        assert main(["solve", str(path), "--objective", "makespan"]) == 2
        err = capsys.readouterr().err
        assert err.startswith("error:")
        assert "line 1" in err
        assert "scientific notation" in err

    def test_infeasible(self, tmp_path, capsys):
        path = tmp_path / "cyclic.inst"
        path.write_text(CYCLIC)
        assert main(["solve", str(path), "--objective", "makespan"]) == 3
        err = capsys.readouterr().err
        assert err.startswith("infeasible: cyclic precedence")

    def test_unexpected_exception_is_exit_4(self, capsys, monkeypatch):
        import tropsched.cli as cli

        def boom(inst):
            raise RuntimeError("kernel panic")

        monkeypatch.setattr(cli, "solve_makespan", boom)
        assert main(["solve", INSTANCE, "--objective", "makespan"]) == 4
        assert "internal error: RuntimeError: kernel panic" in capsys.readouterr().err

    def test_self_check_failure_is_exit_4(self, capsys, monkeypatch):
        import tropsched.cli as cli

        monkeypatch.setattr(cli, "makespan_value", lambda s: TropScalar(0))
        assert main(["solve", INSTANCE, "--objective", "makespan"]) == 4
        err = capsys.readouterr().err
        assert "internal error: extreme schedule has objective 0, expected 9" in err


class TestChart:
    def _result_file(self, tmp_path, objective="makespan", source=INSTANCE):
        path = tmp_path / "result.json"
        code = main(
            ["solve", source, "--objective", objective, "--format", "json", "--out", str(path)]
        )
        assert code == 0
        return str(path)

    def test_ascii_high(self, tmp_path, capsys):
        result = self._result_file(tmp_path)
        assert main(["chart", result, "--member", "high"]) == 0
        out = capsys.readouterr().out
        assert "session-3 ....#####" in out
        assert out.startswith("Vaccination sessions\n")
        assert "(time unit: hour)" in out

    def test_ascii_low_member(self, tmp_path, capsys):
        result = self._result_file(tmp_path, objective="deviation")
        assert main(["chart", result, "--member", "low"]) == 0
        assert "session-3 ....#####" in capsys.readouterr().out

    def test_svg(self, tmp_path, capsys):
        result = self._result_file(tmp_path)
        assert main(["chart", result, "--member", "high", "--format", "svg"]) == 0
        out = capsys.readouterr().out
        assert out.startswith("<svg ")
        assert out.count('class="bar"') == 5

    def test_missing_low_member(self, tmp_path, capsys):
        src = tmp_path / "free.inst"
        src.write_text(NO_RELEASE)
        result = self._result_file(tmp_path, source=str(src))
        assert main(["chart", result, "--member", "low"]) == 2
        assert "no low member" in capsys.readouterr().err

    def test_bad_result_file(self, tmp_path, capsys):
        path = tmp_path / "junk.json"
        path.write_text("{}")
        assert main(["chart", str(path), "--member", "high"]) == 2
        assert "bad result document" in capsys.readouterr().err


class TestVerify:
    def test_feasible(self, capsys):
        assert main(["verify", INSTANCE, SCHEDULE]) == 0
        out = capsys.readouterr().out
        assert "makespan: 9" in out
        assert "deviation: 5" in out
        assert "feasible" in out

    def test_violations_exit_3(self, tmp_path, capsys):
        path = tmp_path / "bad.sched"
        path.write_text(BAD_SCHED)
        assert main(["verify", INSTANCE, str(path)]) == 3
        out = capsys.readouterr().out
        assert (
            "violated start-start at session-2, session-1:"
            " x[1] >= 1 + x[0] (excess 1)" in out
        )

    def test_name_mismatches(self, tmp_path, capsys):
        path = tmp_path / "short.sched"
        path.write_text("session-1 0 4\n")
        assert main(["verify", INSTANCE, str(path)]) == 2
        assert "schedule is missing activities" in capsys.readouterr().err
        path.write_text(GOOD_SCHED + "session-9 0 1\n")
        assert main(["verify", INSTANCE, str(path)]) == 2
        assert "schedule has unknown activities: session-9" in capsys.readouterr().err


class TestArgparse:
    def test_no_arguments(self, capsys):
        with pytest.raises(SystemExit) as ei:
            main([])
        assert ei.value.code == 2

    def test_bad_objective(self, capsys):
        with pytest.raises(SystemExit) as ei:
            main(["solve", INSTANCE, "--objective", "speed"])
        assert ei.value.code == 2


class TestConsoleScript:
    def test_installed_entry_point(self):
        proc = subprocess.run(
            [sys.executable, "-m", "tropsched.cli", "solve", INSTANCE,
             "--objective", "makespan"],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        assert "optimum: 9" in proc.stdout

    def test_script_on_path(self):
        proc = subprocess.run(
            ["tropsched", "verify", INSTANCE, SCHEDULE],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        assert "feasible" in proc.stdout
