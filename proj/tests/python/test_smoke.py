"""Smoke tests for the compiled python module."""

from fractions import Fraction

import pytest

motivic_forge = pytest.importorskip("motivic_forge")


def test_canonical_and_evaluate():
    assert motivic_forge.canonical("(L-1)*L^-2") == "L^-1 - L^-2"
    assert motivic_forge.evaluate_at("(L-1)*L^-2", 2) == Fraction(1, 4)
    assert motivic_forge.evaluate_at("e(SL 2)", 3) == 24


def test_exact_div_and_shift():
    assert motivic_forge.exact_div("L^2-1", "L-1") == "L + 1"
    assert motivic_forge.solve_L_shift("(L-1)*L^-3", "(L-1)*L^-5") == "2"


def test_jet_count():
    rep = motivic_forge.jet_count(2, 1, 2, method="both")
    assert rep["numerator"] == 24
    assert rep["denominator"] == 48
    assert rep["match"] is True


def test_group_and_stabilizer_orders():
    assert motivic_forge.group_order(2, 1, 2) == "48"
    assert motivic_forge.stabilizer_order(2, 1, 3) == 3


def test_verify_cov():
    rep = motivic_forge.verify_cov("lemma83", r=2)
    assert rep["coefficient"] == "-1"
    assert rep["pass"] is True


def test_height_profile():
    arc = {
        "family": "slr",
        "r": 2,
        "matrix": [["t", "1"], ["0", "t"]],
        "precision": 16,
        "prime": 5,
    }
    rep = motivic_forge.height_profile(arc)
    assert rep["profile"] == {"ht_minus1": 0, "ht0": 0, "ht1": 2}
    assert rep["identity"]["pass"] is True


def test_resolve():
    rep = motivic_forge.resolve(
        {
            "name": "halfpoint",
            "gorenstein_index": 2,
            "divisors": [{"label": "E1", "discrepancy": "-1/2"}],
        }
    )
    assert rep["crepant"] is True
    assert rep["factors"][0]["rank"] == 1


def test_parse_error_raises():
    with pytest.raises(motivic_forge.ForgeError):
        motivic_forge.canonical("L^(1/")
