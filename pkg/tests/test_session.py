import json

import pytest

from dualhs.field import QQ, field_from_name
from dualhs.session import SessionError, render_reports, run_session

FIXTURE = """\
field Q
ring R = poly(x, y) / (x^2 + x*y + y^2)
ideal m = (x, y) in R
module M = sub(R^2; [x, -y], [x+y, x])
compute coefficients M m
compute reduction m
compute phi M m
verify THM57 M m
report --format json
"""


def test_worked_fixture_values():
    session = run_session(FIXTURE)
    assert not session.failed
    reps = session.reports
    co = reps[0]["coefficients"]
    assert co["c"] == [2, 0]
    assert co["e0"] == 2
    assert co["mu"] == 2
    assert reps[1]["reduction"] == {"r": 1}
    assert reps[2]["phi"] == 2
    assert reps[3]["verdict"] == "pass"


def test_fixture_output_is_byte_identical():
    out1 = run_session(FIXTURE).outputs[0][1]
    out2 = run_session(FIXTURE).outputs[0][1]
    assert out1 == out2
    parsed = json.loads(out1)
    assert parsed[0]["coefficients"]["c"] == [2, 0]


def test_dual_hs_value_table():
    script = """\
field Q
ring P = poly(x, y) / ()
ideal J = (x, y) in P
module F = free(P, 1)
compute dual_hs F J --upto 5
"""
    session = run_session(script)
    assert session.reports[0]["values"] == [1, 3, 6, 10, 15, 21]
    assert session.reports[0]["provenance"]["values"] == "computed:dual_hs_value"


def test_empty_script():
    session = run_session("")
    assert not session.failed
    assert session.reports == [] and session.outputs == []


def test_comments_and_blank_lines():
    session = run_session("# just a comment\n\n   \n")
    assert session.reports == []


def test_parse_error_carries_line_number():
    with pytest.raises(SessionError) as err:
        run_session("field Q\nring R = poly(x) / (x^^2)\n")
    assert "line 2" in str(err.value)


def test_unknown_statement():
    with pytest.raises(SessionError, match="unknown statement"):
        run_session("compute_all\n")


def test_undefined_name():
    with pytest.raises(SessionError, match="undefined module"):
        run_session("field Q\nring R = poly(x, y) / ()\nideal m = (x, y) in R\n"
                    "compute dual_hs M m\n")


def test_single_field_per_session():
    with pytest.raises(SessionError, match="single field"):
        run_session("field Q\nfield Fp 7\n")


def test_hypothesis_violation_does_not_abort():
    script = """\
field Q
ring S = poly(x, y) / (x^2, x*y, y^2)
module k = sub(S^1; [x])
compute zero_dim S k
ring P = poly(u) / ()
ideal n = (u) in P
module F = free(P, 1)
compute dual_hs F n --upto 3
"""
    session = run_session(script)
    assert session.failed  # the zero_dim command failed on a non-Gorenstein ring
    assert session.reports[0]["verdict"] == "inconclusive"
    assert "error" in session.reports[0]
    # but the later command still ran
    assert session.reports[1]["values"] == [1, 2, 3, 4]


def test_field_override_wins():
    script = "field Q\nring R = poly(x) / ()\nideal m = (x) in R\n" \
             "module F = free(R, 1)\ncompute hs F m --upto 2\n"
    session = run_session(script, field=field_from_name("Fp:13"))
    assert session.reports[0]["values"] == [1, 2, 3]
    assert list(session.rings.values())[0].field.name == "Fp:13"


def test_default_field_is_large_prime():
    session = run_session("ring R = poly(x) / ()\n")
    assert list(session.rings.values())[0].field.name == "Fp:32003"


def test_verify_arity_checked():
    with pytest.raises(SessionError, match="expects"):
        run_session("field Q\nring R = poly(x, y) / ()\nmodule F = free(R, 1)\n"
                    "verify C0E0 F\n")


def test_csv_and_text_renderers():
    script = """\
field Q
ring P = poly(x) / ()
ideal m = (x) in P
module F = free(P, 1)
compute dual_hs F m --upto 2
report --format csv
report --format text
"""
    session = run_session(script)
    csv_out = session.outputs[0][1]
    assert csv_out.splitlines()[0] == "index,command,n,value"
    assert "0,compute dual_hs,0,1" in csv_out
    text_out = session.outputs[1][1]
    assert "values: [1, 2, 3]" in text_out


def test_report_to_path(tmp_path):
    out = tmp_path / "report.json"
    script = FIXTURE.replace("report --format json",
                             f"report --format json {out}")
    session = run_session(script)
    path, text = session.outputs[0]
    assert path == str(out)
    json.loads(text)


def test_zero_dim_command():
    script = """\
field Q
ring S = poly(x, y) / (x^2, y^2)
module k = sub(S^1; [x*y])
compute zero_dim S k
"""
    session = run_session(script)
    rep = session.reports[0]
    assert rep["verdict"] == "pass"
    assert rep["reduction"] == {"r": 2}
    assert rep["coefficients"]["e0"] == 1  # the socle has length one


def test_seeded_determinism_of_reduction():
    script = "field Q\nring R = poly(x, y) / (x^2 + x*y + y^2)\n" \
             "ideal m = (x, y) in R\ncompute reduction m\n"
    a = run_session(script, seed=5).reports[0]
    b = run_session(script, seed=5).reports[0]
    assert a == b
