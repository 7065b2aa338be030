"""Driver behavior: flag parsing, exit codes, determinism, and the three
serialization formats."""

import json

import pytest

from trcalc.cli import (
    EXIT_MISMATCH,
    EXIT_OK,
    EXIT_REFUSED,
    EXIT_VALIDATION,
    JobSpec,
    ValidationError,
    main,
    run_command,
)
from trcalc.report import emit_report, roundtrip_json
from trcalc.syntomic import AlphaBounds


def _run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr().out
    return code, out


def test_syntomic_example(capsys):
    code, out = _run(["syntomic", "--p", "3", "--i", "1", "--e", "2"], capsys)
    assert code == EXIT_OK
    assert "total exponent: 1" in out
    assert "W(k)/p^1" in out


def test_validation_error_nonprime(capsys):
    code = main(["syntomic", "--p", "4", "--i", "1", "--e", "2"])
    assert code == EXIT_VALIDATION


def test_unknown_flag_exits_1(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["syntomic", "--p", "3", "--i", "1", "--e", "2", "--bogus"])
    assert exc.value.code == EXIT_VALIDATION


def test_slots_require_bounds(capsys):
    code = main(["syntomic", "--p", "2", "--i", "1", "--e", "3", "--slots", "t"])
    assert code == EXIT_VALIDATION


def test_inconsistent_range(capsys):
    code = main(["syntomic", "--p", "2", "--i", "2", "--i-max", "1", "--e", "3"])
    assert code == EXIT_VALIDATION


def test_verify_command(capsys):
    code, out = _run(
        ["verify", "--p", "2", "--i", "2", "--e", "3", "--A", "6", "--N", "24", "--format", "csv"],
        capsys,
    )
    assert code == EXIT_OK
    lines = out.strip().splitlines()
    assert lines[0] == "m,alpha,s,h,oracle_h,pass"
    assert len(lines) == 3  # orbits m=1 and m=5
    assert all(line.endswith("yes") for line in lines[1:])


def test_kgroups_values(capsys):
    code, out = _run(["kgroups", "--p", "2", "--i", "2", "--e", "3", "--format", "json"], capsys)
    assert code == EXIT_OK
    payload = json.loads(out)
    cert = payload["certificates"][0]
    assert cert["degree"] == 3
    assert cert["divisors"] == [8, 2]
    assert cert["order_fp"] == 16


def test_tr_certificate_footer(capsys):
    code, out = _run(["tr", "--p", "3", "--i", "0", "--e", "2", "--e-max", "12"], capsys)
    assert out.rstrip().endswith("TR_odd = 0: CERTIFIED (probe e <= 12)")
    assert code in (EXIT_OK, EXIT_REFUSED)


def test_json_roundtrip_and_determinism(capsys):
    argv = ["syntomic", "--p", "2", "--i", "1", "--i-max", "3", "--e", "3", "--format", "json"]
    code1, out1 = _run(argv, capsys)
    code2, out2 = _run(argv, capsys)
    assert (code1, code2) == (EXIT_OK, EXIT_OK)
    assert out1 == out2
    assert roundtrip_json(out1.encode()) == out1.encode()


def test_out_file(tmp_path, capsys):
    path = tmp_path / "report.json"
    code = main(["syntomic", "--p", "3", "--i", "1", "--e", "2", "--format", "json", "--out", str(path)])
    assert code == EXIT_OK
    payload = json.loads(path.read_text())
    assert payload["total_exponent"] == 1
    assert payload["orbits"][0]["m"] == 1


def test_run_command_api():
    spec = JobSpec(command="syntomic", p=3, i=1, e=2)
    report, code = run_command(spec)
    assert code == EXIT_OK
    assert report.total_exponent == 1
    data = emit_report(report, "csv")
    assert data.decode().splitlines()[0] == "m,alpha,s,h,oracle_h,pass"


def test_run_command_rejects_bad_spec():
    with pytest.raises(ValidationError):
        run_command(JobSpec(command="syntomic", p=9, i=1, e=2))
    with pytest.raises(ValidationError):
        run_command(JobSpec(command="transition", p=3, i=1, e=3, e_max=8))


def test_alpha_serialization(capsys):
    code, out = _run(
        [
            "syntomic", "--p", "2", "--i", "2", "--e", "3",
            "--slots", "t", "--alpha-num-max", "1", "--alpha-pexp-max", "1",
            "--format", "json",
        ],
        capsys,
    )
    assert code == EXIT_OK
    payload = json.loads(out)
    alphas = {json.dumps(rec["alpha"], sort_keys=True) for rec in payload["orbits"]}
    assert '{"t": "1/2^1"}' in alphas


def test_empty_report_json():
    # i = 0 has no orbits; the payload still carries the stable keys
    spec = JobSpec(command="syntomic", p=3, i=0, e=2, format="json")
    report, code = run_command(spec)
    payload = json.loads(emit_report(report, "json"))
    assert payload["orbits"] == []
    assert payload["total_exponent"] == 0


def test_ml_check_exit_ok(capsys):
    code, out = _run(["ml-check", "--p", "3", "--i", "1", "--e", "2", "--e-max", "11"], capsys)
    assert code == EXIT_OK
    assert "ml_condition=PASS" in out
