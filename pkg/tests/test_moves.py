"""Invariance of the state sum under the diagrammatic relations.

The enhanced invariant is compared as the full matrix of boundary buckets,
so these tests exercise the open-diagram behaviour as well as the closed
values.  The framed/unframed split is confirmed in both directions: quandle
pairs survive R1, a genuinely framed pair does not.
"""

from __future__ import annotations

import numpy as np

from tanglesum.crossed_modules import abelianisation_tensor_2xmod
from tanglesum.diagrams import catalog_names, load_catalog, move_neighbours
from tanglesum.engine import invariant_matrix
from tanglesum.groups import cyclic_group, symmetric_group
from tanglesum.pairs import (
    pair_eisermann,
    pair_from_2xmod,
    pair_from_rack,
    pair_from_rack_cocycle,
)
from tanglesum.racks import cocycle_from_json, dihedral_quandle, Rack

R3_COCYCLE = {"v_moduli": [3], "table": [[0, 0, 1], [2, 0, 2], [1, 0, 0]]}


def shift_rack(n: int) -> Rack:
    return Rack(
        right=np.array([[(x + 1) % n] * n for x in range(n)]), name=f"shift{n}"
    )


def assert_invariant_under_moves(pair, names, moves):
    for name in names:
        d = load_catalog(name)
        base = invariant_matrix(d, pair)
        for mp in move_neighbours(d, moves):
            after = invariant_matrix(mp.after, pair)
            assert after == base, f"{pair.name} changed under {mp.tag} on {name}"


def test_rack_pair_invariant_on_whole_catalog():
    p = pair_from_rack(dihedral_quandle(3), cyclic_group(3))
    assert_invariant_under_moves(p, catalog_names(), "unframed")


def test_cocycle_pair_invariant_on_knots():
    c = cocycle_from_json(dihedral_quandle(3), R3_COCYCLE)
    p = pair_from_rack_cocycle(c, cyclic_group(3))
    names = ["trefoil_plus_closed", "figure_eight_closed",
             "sigma1_sigma1inv_closed", "trefoil_plus_string"]
    assert_invariant_under_moves(p, names, "unframed")


def test_eisermann_pair_invariant_on_selected_diagrams():
    s3 = symmetric_group(3)
    p = pair_eisermann(s3, s3.element_by_label("(1 2 3)"), carrier="group")
    names = ["trefoil_plus_closed", "sigma1_sigma1inv_closed",
             "crossing_rotated_plus", "unknot_string"]
    assert_invariant_under_moves(p, names, "unframed")


def test_framed_pairs_invariant_under_framed_moves():
    shift = pair_from_rack(shift_rack(3), cyclic_group(3))
    peiffer = pair_from_2xmod(abelianisation_tensor_2xmod(symmetric_group(3)))
    names = ["trefoil_plus_closed", "figure_eight_closed", "unknot_closed",
             "crossing_rotated_minus"]
    assert_invariant_under_moves(shift, names, "framed")
    assert_invariant_under_moves(peiffer, ["trefoil_plus_closed",
                                           "unknot_closed"], "framed")


def test_framed_pair_detects_kinks():
    # the negative control: a proper rack is sensitive to R1
    p = pair_from_rack(shift_rack(3), cyclic_group(3))
    d = load_catalog("unknot_closed")
    base = invariant_matrix(d, p)
    kinked = [mp for mp in move_neighbours(d, "unframed") if mp.tag == "R1"]
    assert kinked
    changed = [mp for mp in kinked if invariant_matrix(mp.after, p) != base]
    assert changed, "a proper rack pair should notice a kink"


def test_peiffer_pair_tracks_writhe():
    # the abelianisation pair separates diagrams of different framing
    p = pair_from_2xmod(abelianisation_tensor_2xmod(symmetric_group(3)))
    plus = invariant_matrix(load_catalog("trefoil_plus_closed"), p)
    minus = invariant_matrix(load_catalog("trefoil_minus_closed"), p)
    assert plus == minus  # writhe +3 and -3 agree over tensor square of Z2
    unknot = invariant_matrix(load_catalog("unknot_closed"), p)
    assert plus != unknot
