"""Racks, quandles, 2-cocycles, colouring counts, and the cocycle state sum."""

from __future__ import annotations

import numpy as np
import pytest

from tanglesum.diagrams import load_catalog
from tanglesum.errors import NotClosedError, SizeLimitError
from tanglesum.groups import cyclic_group, symmetric_group
from tanglesum.racks import (
    cjkls_state_sum,
    cocycle_from_function,
    cocycle_from_json,
    conjugation_quandle,
    dihedral_quandle,
    eisermann_quandle,
    nelson_check,
    Rack,
    rack_colouring_count,
    rack_from_csv,
    RackCocycle,
    validate_cocycle,
    validate_rack,
)

# one valid non-zero 2-cocycle on the three-element dihedral quandle over Z3
R3_COCYCLE = [[0, 0, 1], [2, 0, 2], [1, 0, 0]]

# the Alexander quandle on the field with four elements, x <| y = tx + (1+t)y
GF4_RIGHT = [[0, 3, 1, 2], [2, 1, 3, 0], [3, 0, 2, 1], [1, 2, 0, 3]]

# a 2-cocycle on it over Z2 whose state sum separates the trefoil from the unknot
GF4_COCYCLE = [[0, 0, 0, 0], [0, 0, 1, 1], [0, 1, 0, 1], [0, 1, 1, 0]]


# ---------------------------------------------------------------------------
# rack structure
# ---------------------------------------------------------------------------


def test_dihedral_quandles_validate():
    for n in range(2, 8):
        r = dihedral_quandle(n)
        report = validate_rack(r, thorough=True)
        assert report.ok, report.summary()
        assert r.is_quandle


def test_left_and_right_actions_are_mutually_inverse():
    r = dihedral_quandle(5)
    for a in range(5):
        for y in range(5):
            assert r.lop(a, r.rop(y, a)) == y
            assert r.rop(r.lop(a, y), a) == y


def test_conjugation_quandle():
    s3 = symmetric_group(3)
    r = conjugation_quandle(s3)
    assert r.size == 6
    assert validate_rack(r).ok and r.is_quandle
    # restricting to a conjugacy class works, arbitrary subsets may not
    transpositions = [s3.element_by_label(l) for l in ("(1 2)", "(1 3)", "(2 3)")]
    assert conjugation_quandle(s3, transpositions).size == 3
    with pytest.raises(NotClosedError):
        conjugation_quandle(s3, transpositions[:2])


def test_eisermann_quandle_s5():
    s5 = symmetric_group(5)
    x = s5.element_by_label("(1 2 3 4 5)")
    r = eisermann_quandle(s5, x)
    assert r.size == 60  # carrier defaults to the commutator subgroup A5
    assert validate_rack(r).ok and r.is_quandle
    whole = eisermann_quandle(s5, x, carrier="group")
    assert whole.size == 120
    assert validate_rack(whole).ok


def test_eisermann_quandle_trivial_twist():
    # with x = id the operation degenerates to the trivial quandle
    s3 = symmetric_group(3)
    r = eisermann_quandle(s3, s3.identity, carrier="group")
    assert all(r.rop(a, b) == a for a in range(6) for b in range(6))


def test_permutation_rack_is_not_a_quandle():
    # x <| y = x + 1 on Z3: a rack whose translations ignore y
    shift = Rack(right=np.array([[(x + 1) % 3] * 3 for x in range(3)]), name="shift3")
    assert validate_rack(shift).ok
    assert not shift.is_quandle


def test_validate_rack_catches_broken_distributivity():
    bad = Rack(right=np.array([[0, 1, 0], [1, 0, 2], [2, 2, 1]]))
    assert not validate_rack(bad).ok


def test_nelson_check():
    assert nelson_check(dihedral_quandle(3))
    assert nelson_check(conjugation_quandle(symmetric_group(3)))


def test_rack_csv_round_trip(tmp_path):
    r = dihedral_quandle(4)
    path = tmp_path / "r4.csv"
    with open(path, "w") as fh:
        fh.write("\n".join(",".join(str(v) for v in row) for row in r.left))
    back = rack_from_csv(path, side="left")
    assert np.array_equal(back.left, r.left)
    assert np.array_equal(back.right, r.right)


# ---------------------------------------------------------------------------
# cocycles
# ---------------------------------------------------------------------------


def test_r3_cocycle_fixture_is_valid():
    r3 = dihedral_quandle(3)
    c = cocycle_from_json(r3, {"v_moduli": [3], "table": R3_COCYCLE})
    assert validate_cocycle(c, thorough=True).ok


def test_perturbed_cocycle_is_rejected_with_witness():
    r3 = dihedral_quandle(3)
    bad = cocycle_from_json(
        r3, {"v_moduli": [3], "table": [[0, 0, 1], [2, 0, 2], [1, 1, 0]]}
    )
    report = validate_cocycle(bad)
    assert not report.ok
    assert any("w(x,y)" in v.axiom for v in report.violations)
    assert "fails at" in str(report.violations[0])


def test_quandle_cocycle_diagonal_vanishes():
    # for quandles the R1 compatibility forces w(x, x) = 0
    r3 = dihedral_quandle(3)
    z3 = cyclic_group(3)
    c = cocycle_from_function(r3, z3, lambda x, y: (x * y) % 3)
    report = validate_cocycle(c)
    assert not report.ok


def test_gf4_fixture_and_state_sums():
    gf4 = Rack(right=np.array(GF4_RIGHT), name="GF4")
    assert validate_rack(gf4, thorough=True).ok and gf4.is_quandle
    c = cocycle_from_json(gf4, {"v_moduli": [2], "table": GF4_COCYCLE})
    assert validate_cocycle(c).ok
    for name in ("trefoil_plus_closed", "figure_eight_closed"):
        v = cjkls_state_sum(load_catalog(name), c)
        assert v.terms == {0: 4, 1: 12}
    unknot = cjkls_state_sum(load_catalog("unknot_closed"), c)
    assert unknot.terms == {0: 4}


def test_coboundary_state_sum_is_concentrated_at_zero():
    r3 = dihedral_quandle(3)
    c = cocycle_from_json(r3, {"v_moduli": [3], "table": R3_COCYCLE})
    v = cjkls_state_sum(load_catalog("trefoil_plus_closed"), c)
    assert v.terms == {0: 9}


# ---------------------------------------------------------------------------
# colouring counts
# ---------------------------------------------------------------------------


def test_colouring_counts_match_known_values():
    r3 = dihedral_quandle(3)
    cases = [
        ("trefoil_plus_closed", r3, 9),
        ("trefoil_minus_closed", r3, 9),
        ("unknot_closed", r3, 3),
        ("figure_eight_closed", r3, 3),
        ("figure_eight_closed", dihedral_quandle(5), 25),
        ("trefoil_plus_closed", dihedral_quandle(2), 2),
    ]
    for name, rack, count in cases:
        assert rack_colouring_count(load_catalog(name), rack) == count


def test_colouring_count_with_boundary():
    r3 = dihedral_quandle(3)
    d = load_catalog("trefoil_plus_string")
    # a string knot propagates each boundary colour straight through
    for c in range(3):
        assert rack_colouring_count(d, r3, top=(c,), bottom=(c,)) == 3
        assert rack_colouring_count(d, r3, top=(c,), bottom=((c + 1) % 3,)) == 0


def test_colouring_count_size_limit():
    from tanglesum.diagrams import braid_word_to_tangle, trace_closure

    wide = trace_closure(braid_word_to_tangle([1] * 16, 2))
    with pytest.raises(SizeLimitError):
        rack_colouring_count(wide, dihedral_quandle(3))
