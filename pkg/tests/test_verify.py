import dataclasses
import json
from fractions import Fraction

import pytest

from oddlib import verify
from oddlib.formats import FPFormat
from oddlib.hfloat import DEFAULT_H as H, ulp
from oddlib.polygen import PiecewisePolynomial
from oddlib.rounding import RoundingMode
from oddlib.verify import (check_all, check_lemmas, check_odd_composition,
                           component_representatives, find_naive_double_rounding_bug,
                           lemma_formats)

from conftest import generated


def _mutated(g, delta):
    piece = g.poly.pieces[0]
    ch = (piece.coeffs_h[0] + delta,) + piece.coeffs_h[1:]
    ce = (piece.coeffs_exact[0] + delta,) + piece.coeffs_exact[1:]
    bad = dataclasses.replace(piece, coeffs_h=ch, coeffs_exact=ce)
    poly = PiecewisePolynomial(g.poly.index_rule, (bad,) + g.poly.pieces[1:])
    return dataclasses.replace(g, poly=poly)


def test_small_ln_passes_every_cell(ln_small):
    rep = check_all(ln_small.function)
    assert rep.passed and len(rep.cells) == 10
    assert all(c.checked == 2 ** c.k for c in rep.cells.values())
    text = rep.to_text()
    assert "✗" not in text and text.count("✓") == 10
    data = json.loads(rep.to_json())
    assert data["passed"] and len(data["cells"]) == 10


def test_one_ulp_perturbation_is_caught(ln_small):
    g = ln_small.function
    c0 = g.poly.pieces[0].coeffs_h[0]
    rep = check_all(_mutated(g, ulp(H, c0)))
    assert not rep.passed
    bad = rep.failures()
    # a single input goes wrong, seen by every cell it affects
    assert len({c.first_counterexample["x_value"] for c in bad}) == 1
    assert all(c.fail_count == 1 for c in bad)
    cell = bad[0]
    assert cell.first_counterexample["got"] != cell.first_counterexample["expected"]
    assert "✗" in rep.to_text()


def test_wide_targets_are_sampled(ln_small, monkeypatch):
    monkeypatch.setattr(verify, "SAMPLE_SIZE", 8)
    rep = check_all(ln_small.function, exhaustive_bits=4)
    assert rep.passed
    wide = rep.cells[(5, "rn")]
    assert not wide.exhaustive and 8 <= wide.checked < 32
    assert rep.cells[(4, "rn")].exhaustive and rep.cells[(4, "rn")].checked == 16
    assert "sampled, not exhaustive: k=5" in rep.to_text()


def test_subset_of_cells(ln_small):
    rep = check_all(ln_small.function, targets=[5], modes=[RoundingMode.RN, RoundingMode.RZ])
    assert sorted(rep.cells) == [(5, "rn"), (5, "rz")]
    with pytest.raises(ValueError):
        check_all(ln_small.function, targets=[6])


def test_representatives_cover_every_class():
    fmt = FPFormat(6, 2)
    reps = component_representatives(fmt)
    assert len(reps) == 2 * len(component_representatives(fmt, signed=False)) - 1


@pytest.mark.parametrize("tn2,ks", [(FPFormat(7, 2), [4, 5]), (FPFormat(8, 3), [5, 6])])
def test_odd_composition_small(tn2, ks):
    res = check_odd_composition(tn2, ks)
    assert res.passed, res.violations[:3]


def test_odd_composition_rejects_bad_targets():
    with pytest.raises(ValueError):
        check_odd_composition(FPFormat(8, 3), [7])


def test_same_mode_double_rounding():
    mid, target = FPFormat(9, 3), FPFormat(7, 3)
    w = find_naive_double_rounding_bug(mid, target, "rn")
    assert w is not None
    from oddlib.rounding import round_value
    from oddlib.formats import value_marker
    assert round_value(target, "rn", w) != round_value(target, "rn", value_marker(round_value(mid, "rn", w)))
    # directed modes compose safely
    for m in ("rz", "ru", "rd"):
        assert find_naive_double_rounding_bug(mid, target, m) is None
    with pytest.raises(ValueError):
        find_naive_double_rounding_bug(target, mid, "rn")


def test_lemma_formats():
    fs = lemma_formats()
    assert len(fs) == 21
    assert all(f.total_bits <= 10 and f.total_bits >= f.exponent_bits + 3 for f in fs)


def test_lemmas_small_run():
    rep = check_lemmas([FPFormat(6, 2), FPFormat(8, 3)], samples=2000, pairs=2000, seed=3)
    assert rep.passed
    assert rep.checked["classes"] == 2000 and rep.checked["prefix"] > 4000


def test_operation_alias():
    assert verify.check_theorem2 is check_odd_composition
