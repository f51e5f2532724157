import io
import json

import pytest
from hypothesis import given

from critred.cli import run
from critred.forms import BinaryForm
from critred.lattes import lattes_map, make_model
from critred.parse import ParseError, parse_form, parse_int_list, parse_map
from critred.rammap import DegenerateMapError, make_map, ram_profile
from critred.reduction import reduction_report
from strategies import maps

B = BinaryForm
BIG = (2**61 - 1) * (2**89 - 1)


def cli(*argv):
    buf = io.StringIO()
    code = run(list(argv), buf)
    return code, buf.getvalue()


def cli_json(*argv):
    code, text = cli(*argv, "--json")
    return code, json.loads(text)


# -- parser ------------------------------------------------------------------------


@pytest.mark.parametrize(
    "text, P, Q",
    [
        ("(x^2+1)^2 / (4*x^3-4*x)", (1, 0, 2, 0, 1), (0, 4, 0, -4, 0)),
        ("x^2", (1, 0, 0), (0, 0, 1)),
        ("-x^2 + 3", (-1, 0, 3), (0, 0, 1)),
        ("x^3 - 3*x", (1, 0, -3, 0), (0, 0, 0, 1)),
        ("1 / x^2", (0, 0, 1), (1, 0, 0)),
        ("(x-1)*(x+1) / 2", (1, 0, -1), (0, 0, 2)),
        ("2^2*x^2", (4, 0, 0), (0, 0, 1)),
    ],
)
def test_parse_map_examples(text, P, Q):
    assert parse_map(text) == make_map(B(P), B(Q))


def test_power_binds_tighter_than_unary_minus():
    assert parse_map("-x^2") == make_map(B((-1, 0, 0)), B((0, 0, 1)))


def test_parse_map_common_factor():
    with pytest.raises(DegenerateMapError, match="common factor"):
        parse_map("(x^2)/(x)")


@pytest.mark.parametrize("text, pos", [("x^+", 2), ("(x+1", 4), ("x $ 2", 2), ("y^2", 0), ("", 0)])
def test_syntax_errors_carry_a_position(text, pos):
    with pytest.raises(ParseError) as err:
        parse_map(text)
    assert err.value.pos == pos


@given(maps(max_degree=4, max_coeff=20))
def test_fraction_text_round_trips(phi):
    assert parse_map(phi.as_fraction_text()) == phi


@pytest.mark.parametrize(
    "text, coeffs", [("x^2-25*y^2", (1, 0, -25)), ("x*y", (0, 1, 0)), ("(x-y)^3", (1, -3, 3, -1)), ("y^2", (0, 0, 1))]
)
def test_parse_form_examples(text, coeffs):
    assert parse_form(text) == B(coeffs)


@pytest.mark.parametrize("text", ["x^2-y", "x/y", "0*x", "x^2 + z"])
def test_parse_form_rejects(text):
    with pytest.raises(ParseError):
        parse_form(text)


def test_parse_int_list():
    assert parse_int_list("1, 0,-1 ,0") == [1, 0, -1, 0]
    with pytest.raises(ParseError):
        parse_int_list("1,a")


# -- command line ------------------------------------------------------------------


def test_analyze_text_report():
    code, out = cli("analyze", "--map", "5*x^2")
    assert code == 0
    assert "degree: 2" in out
    assert "SGR bad primes: {5}" in out
    assert "CGR bad primes: {}" in out


def test_analyze_json_schema():
    code, d = cli_json("analyze", "--map", "5*x^2")
    assert code == 0
    assert d["degree"] == 2 and d["sgr_bad_primes"] == [5]
    assert d["cgr_bad_primes"] == {"points": [], "values": []}
    assert d["ram"]["support_count"] == 2 and d["ram"]["multiplicities"] == [1, 1]
    assert d["complete"] is True


def test_analyze_json_is_deterministic():
    args = ("analyze", "--map", "(x^2+1)^2/(4*x^3-4*x)", "--json")
    assert cli(*args) == cli(*args)


@given(maps(min_degree=2, max_degree=3))
def test_analyze_matches_library(phi):
    code, d = cli_json("analyze", "--pq", ",".join(map(str, phi.P.coeffs)), ",".join(map(str, phi.Q.coeffs)))
    rep, prof = reduction_report(phi), ram_profile(phi)
    assert code == 0
    assert d["sgr_bad_primes"] == sorted(rep.sgr_bad)
    assert d["cgr_bad_primes"] == {"points": sorted(rep.cgr_bad_points), "values": sorted(rep.cgr_bad_values)}
    assert d["ram"]["support_count"] == prof.support_count


def test_lattes_command():
    code, out = cli("lattes", "--cubic", "1,0,-1,0", "--verify-prop1")
    assert code == 0 and "prop1: holds" in out and "S {2}" in out
    code, d = cli_json("lattes", "--cubic", "1,0,-1,0", "--verify-prop1")
    assert d["prop1"]["verdict"] == "holds" and d["prop1"]["sgr_bad_primes"] == [2]
    assert d["map"]["P"] == list(lattes_map(make_model([1, 0, -1, 0])).P.coeffs)


def test_lattes_times_four():
    code, d = cli_json("lattes", "--cubic", "1,0,0,1", "--times-four")
    assert code == 0 and len(d["map"]["P"]) == 17


def test_distinct_command():
    assert cli("distinct", "--form", "x^2-25*y^2") == (0, "{2, 5}\n")
    code, d = cli_json("distinct", "--form", "x^2-25*y^2", "--S", "2,5")
    assert d["s_good"] is True and d["discriminant"] == 100


def test_prop2_command():
    assert cli("prop2", "--map", "(x^2+1)^2/(4*x^3-4*x)", "--prime", "5") == (0, "implication_holds\n")
    assert cli("prop2", "--map", "x^3", "--prime", "9")[0] == 1


def test_equiv_command():
    code, d = cli_json("equiv", "--map1", "x^3", "--map2", "x^3+3*x^2+3*x")
    assert code == 0 and d["equivalent"]
    assert d["sigma"] == [[1, -1], [0, 1]] and d["gamma"] == [[1, 1], [0, 1]]
    code, out = cli("equiv", "--map1", "x^3", "--map2", "2*x^3")
    assert code == 0 and out.startswith("not found")


def test_enumerate_command():
    code, d = cli_json("enumerate", "--degree", "2", "--height", "1")
    assert code == 0 and d["survivor_count"] == 0 and d["complete"]


@pytest.mark.parametrize(
    "argv, code",
    [
        (["analyze", "--map", "x^+"], 1),
        (["analyze"], 1),
        (["analyze", "--map", "(x^2)/(x)"], 2),
        (["analyze", "--map", "x"], 2),
        (["analyze", "--map", "x/0"], 2),
        (["lattes", "--cubic", "1,0,0,0"], 2),
        (["distinct", "--form", "x^2+2*x*y+y^2"], 2),
        (["enumerate", "--degree", "2", "--height", "1", "--max-candidates", "10"], 3),
        (["enumerate", "--degree", "2", "--height", "1", "--exclude", "4"], 1),
    ],
)
def test_exit_codes(argv, code):
    assert cli(*argv)[0] == code


def test_unknown_subcommand_is_a_usage_error():
    with pytest.raises(SystemExit) as exc:
        cli("bogus")
    assert exc.value.code == 1


def test_incomplete_factorization_exits_3():
    code, out = cli("analyze", "--map", f"{BIG}*x^2")
    assert code == 3
    assert "complete: no" in out and "unfactored cofactor" in out


def test_factor_bound_env(monkeypatch):
    monkeypatch.setenv("CRITRED_FACTOR_BOUND", "50")
    assert cli("analyze", "--map", "5*x^2")[0] == 0



def test_negative_coefficient_vectors_are_values():
    code, d = cli_json("analyze", "--pq", "0,0,1", "-1,0,0")
    assert code == 0 and d["map"]["P"] == [0, 0, 1] and d["map"]["Q"] == [-1, 0, 0]
    assert cli("lattes", "--cubic", "-1,0,1,0")[0] == 0
