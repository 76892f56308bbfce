"""The state-sum engine: colourings, evaluation, invariants, and the
classical reductions (rack counting, cocycle state sums, abelianisation)."""

from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest

from tanglesum.algebra import GroupAlgebraElement
from tanglesum.crossed_modules import (
    abelianisation_tensor_2xmod,
    xm_identity,
    xm_trivial_boundary,
)
from tanglesum.diagrams import (
    braid_word_to_tangle,
    load_catalog,
    SlicedTangleDiagram,
    trace_closure,
)
from tanglesum.engine import (
    abelianisation_framed_invariant,
    enumerate_colourings,
    evaluate,
    invariant,
    invariant_matrix,
    longitude_value,
    longitude_word,
    tqft_compose_check,
    wirtinger_count,
)
from tanglesum.errors import (
    EnhancementMismatchError,
    MultiComponentError,
    NonComposableError,
    NotClosedError,
    SizeLimitError,
)
from tanglesum.groups import cyclic_group, symmetric_group, trivial_group
from tanglesum.pairs import (
    pair_eisermann,
    pair_from_2xmod,
    pair_from_rack,
    pair_from_rack_cocycle,
)
from tanglesum.racks import (
    cjkls_state_sum,
    cocycle_from_json,
    conjugation_quandle,
    dihedral_quandle,
    rack_colouring_count,
)

R3_COCYCLE = {"v_moduli": [3], "table": [[0, 0, 1], [2, 0, 2], [1, 0, 0]]}
GF4_RIGHT = [[0, 3, 1, 2], [2, 1, 3, 0], [3, 0, 2, 1], [1, 2, 0, 3]]
GF4_COCYCLE = [[0, 0, 0, 0], [0, 0, 1, 1], [0, 1, 0, 1], [0, 1, 1, 0]]


def rack_pair(n: int = 3):
    return pair_from_rack(dihedral_quandle(n), cyclic_group(n))


def eisermann_s3():
    s3 = symmetric_group(3)
    return pair_eisermann(s3, s3.element_by_label("(1 2)"), carrier="group")


# ---------------------------------------------------------------------------
# colourings and evaluation
# ---------------------------------------------------------------------------


def test_unknot_string_propagates_each_colour():
    p = rack_pair()
    d = load_catalog("unknot_string")
    for c in range(3):
        cols = list(enumerate_colourings(d, p.transfer(), top=(c,)))
        assert len(cols) == 1
        assert cols[0].bottom_colours() == (c,)
        m = evaluate(cols[0])
        assert m.elt == p.e.identity  # no crossings, trivial morphism
        assert m.src == c


def test_single_positive_crossing_morphism():
    p = eisermann_s3()
    g = p.g
    d = SlicedTangleDiagram(("v", "v"), [("X+", 0)])
    t = p.transfer()
    for under_in in range(6):
        for over in range(6):
            # the over strand enters top right and leaves bottom left
            cols = list(enumerate_colourings(d, t, top=(under_in, over)))
            assert len(cols) == 1
            col = cols[0]
            under_out = t.under_out_plus(over, under_in)
            assert col.bottom_colours() == (over, under_out)
            m = evaluate(col)
            assert m.elt == p.psi_at(over, under_out)
            assert m.src == g.mul(under_in, over)
            # boundary identity: d(elt) e(top) = e(bottom)
            assert m.tgt == g.mul(over, under_out)


def test_closed_colourings_land_in_the_boundary_kernel():
    d = load_catalog("trefoil_plus_closed")
    for p in (rack_pair(), eisermann_s3()):
        ker = set(p.xmod.kernel())
        cols = list(enumerate_colourings(d, p.transfer()))
        assert cols
        for col in cols:
            assert evaluate(col).elt in ker or p.xmod.boundary(
                evaluate(col).elt
            ) == p.g.identity


def test_invariant_buckets_satisfy_boundary_identity():
    p = eisermann_s3()
    d = load_catalog("trefoil_plus_string")
    for top in range(6):
        buckets = invariant(d, p, top=(top,))
        assert buckets
        for iv in buckets.values():
            assert iv.check_boundary()


# ---------------------------------------------------------------------------
# rack-pair reduction: the invariant is the colouring count
# ---------------------------------------------------------------------------


def test_rack_pair_invariant_counts_colourings_closed():
    cases = [
        ("trefoil_plus_closed", 3, 9),
        ("figure_eight_closed", 3, 3),
        ("figure_eight_closed", 5, 25),
        ("unknot_closed", 3, 3),
    ]
    for name, n, count in cases:
        p = rack_pair(n)
        v = invariant(load_catalog(name), p)
        assert v.terms == {p.e.identity: count}
        assert v.total == rack_colouring_count(load_catalog(name), p.meta["rack"])


def test_rack_pair_invariant_matrix_matches_counts_open():
    p = rack_pair(3)
    r3 = p.meta["rack"]
    d = load_catalog("trefoil_plus_string")
    mat = invariant_matrix(d, p)
    for (top, bot), terms in mat.items():
        expected = rack_colouring_count(d, r3, top=top, bottom=bot)
        assert sum(terms.values()) == expected


# ---------------------------------------------------------------------------
# cocycle reduction: the kernel part carries the cocycle state sum
# ---------------------------------------------------------------------------


def cocycle_invariant_as_v_sum(d, cocycle, group):
    """Engine invariant of the cocycle pair, pushed into N[V]."""
    p = pair_from_rack_cocycle(cocycle, group)
    v = invariant(d, p)
    m = cocycle.v.order
    # E = G x V; closed diagrams land in {id} x V
    return v.algebra().map_elements(lambda e: e % m, cocycle.v)


def test_cocycle_pair_reduces_to_cjkls_state_sum():
    r3 = dihedral_quandle(3)
    c3 = cocycle_from_json(r3, R3_COCYCLE)
    from tanglesum.racks import Rack

    gf4 = Rack(right=np.array(GF4_RIGHT), name="GF4")
    c4 = cocycle_from_json(gf4, {"v_moduli": [2], "table": GF4_COCYCLE})
    for name in ("trefoil_plus_closed", "figure_eight_closed", "unknot_closed"):
        d = load_catalog(name)
        got3 = cocycle_invariant_as_v_sum(d, c3, cyclic_group(3))
        assert got3 == cjkls_state_sum(d, c3)
        got4 = cocycle_invariant_as_v_sum(d, c4, cyclic_group(4))
        assert got4 == cjkls_state_sum(d, c4)


# ---------------------------------------------------------------------------
# commutator-pair values on the trefoils
# ---------------------------------------------------------------------------


def test_eisermann_s5_trefoil_string_values():
    s5 = symmetric_group(5)
    x = s5.element_by_label("(1 2 3 4 5)")
    p = pair_eisermann(s5, x, carrier="group")
    expect = {
        "trefoil_plus_string": "id + 5*(1 5 4 3 2)",
        "trefoil_minus_string": "id + 5*(1 2 3 4 5)",
    }
    for name, display in expect.items():
        buckets = invariant(load_catalog(name), p, top=(s5.identity,))
        total = GroupAlgebraElement.zero(p.e)
        for iv in buckets.values():
            total = total + iv.algebra()
        assert total.display() == display


def test_eisermann_s5_trefoil_closed_value():
    s5 = symmetric_group(5)
    x = s5.element_by_label("(1 2 3 4 5)")
    p = pair_eisermann(s5, x, carrier="group")
    v = invariant(load_catalog("trefoil_plus_closed"), p)
    assert v.terms == {s5.identity: 120}


# ---------------------------------------------------------------------------
# counting homomorphisms
# ---------------------------------------------------------------------------


def test_wirtinger_count_identity_module_is_one():
    s3 = symmetric_group(3)
    xm = xm_identity(s3)
    for name in ("trefoil_plus_closed", "figure_eight_closed", "unknot_closed",
                 "hopf_link_closed", "sigma1_sigma1inv_closed"):
        assert wirtinger_count(load_catalog(name), xm) == 1


def test_wirtinger_count_unknot_normalisation():
    s3 = symmetric_group(3)
    xm = xm_trivial_boundary(s3, trivial_group())
    assert wirtinger_count(load_catalog("unknot_closed"), xm) == 1


def test_wirtinger_count_trefoil_counts_conjugation_colourings():
    # with the one-point module the count is #Hom / |G|^(number of arcs),
    # and the homs of the knot group correspond to conjugation colourings
    s3 = symmetric_group(3)
    xm = xm_trivial_boundary(s3, trivial_group())
    d = load_catalog("trefoil_plus_closed")
    homs = rack_colouring_count(d, conjugation_quandle(s3))
    assert homs == 12
    assert wirtinger_count(d, xm) == Fraction(int(homs), 6 ** len(d.arcs))


def test_wirtinger_count_requires_closed_diagram():
    s3 = symmetric_group(3)
    with pytest.raises(NotClosedError):
        wirtinger_count(load_catalog("unknot_string"), xm_identity(s3))


# ---------------------------------------------------------------------------
# longitudes
# ---------------------------------------------------------------------------


def test_longitude_word_of_string_trefoil():
    d = load_catalog("trefoil_plus_string")
    word = longitude_word(d)
    assert len(word) == 6  # one over and one under letter per crossing
    assert sum(sign for _, sign in word) == 0  # writhe-corrected exponent


def test_longitude_word_of_crossingless_strand():
    d = load_catalog("unknot_string")
    assert longitude_word(d) == ()


def test_longitude_value_in_abelian_quotient_is_trivial():
    z5 = cyclic_group(5)
    d = load_catalog("trefoil_plus_string")
    # any colouring by a single abelian element kills the longitude
    for c in range(5):
        colours = {arc: c for arc in range(len(d.arcs))}
        assert longitude_value(d, colours, z5) == z5.identity


def test_longitude_matches_bottom_colour_under_eisermann_propagation():
    # an identity-top colouring writes the longitude of the projected
    # meridians h^-1 x h into the bottom arc
    s5 = symmetric_group(5)
    x = s5.element_by_label("(1 2 3 4 5)")
    p = pair_eisermann(s5, x, carrier="group")
    d = load_catalog("trefoil_plus_string")
    _, bots = d.boundary_arcs()
    seen = 0
    for col in enumerate_colourings(d, p.transfer(), top=(s5.identity,)):
        mer = {a: s5.word([s5.inv(h), x, h])
               for a, h in enumerate(col.arc_colours)}
        lam = longitude_value(d, mer, s5)
        assert lam == col.arc_colours[bots[0]]
        seen += 1
    assert seen == 6


def test_longitude_requires_one_component_string():
    from tanglesum.errors import DiagramError

    with pytest.raises(DiagramError):
        longitude_word(load_catalog("trefoil_plus_closed"))
    # one open strand plus a split circle: right shape, two components
    two = SlicedTangleDiagram(("v",), [("cupR", 1), ("capR", 1)])
    with pytest.raises(MultiComponentError):
        longitude_word(two)


# ---------------------------------------------------------------------------
# composition along boundaries
# ---------------------------------------------------------------------------


def test_tqft_composition_on_stacked_braids():
    p = eisermann_s3()
    a = braid_word_to_tangle([1, 1], 2)
    b = braid_word_to_tangle([-1, 1], 2)
    assert tqft_compose_check(a, b, p)
    assert tqft_compose_check(b, a, p)


def test_tqft_composition_on_split_trefoil():
    p = rack_pair(3)
    d = load_catalog("trefoil_plus_string")
    for row in range(1, len(d.slices)):
        upper, lower = d.split(row)
        assert tqft_compose_check(upper, lower, p)


def test_tqft_composition_rejects_mismatched_boundaries():
    p = rack_pair(3)
    a = braid_word_to_tangle([1], 2)
    with pytest.raises(NonComposableError):
        tqft_compose_check(a, load_catalog("unknot_string"), p)


# ---------------------------------------------------------------------------
# abelianisation invariant of framed knots
# ---------------------------------------------------------------------------


def test_abelianisation_invariant_values_s3():
    s3 = symmetric_group(3)
    cmp_t = abelianisation_framed_invariant(load_catalog("trefoil_plus_closed"), s3)
    assert cmp_t.engine == cmp_t.direct
    assert cmp_t.engine.terms == {0: 3, 1: 9}
    cmp_u = abelianisation_framed_invariant(load_catalog("unknot_closed"), s3)
    assert cmp_u.engine == cmp_u.direct
    assert cmp_u.engine.terms == {0: 6}


def test_abelianisation_invariant_even_writhe_concentrates():
    # figure eight has writhe 0, so every colouring contributes t^0
    s3 = symmetric_group(3)
    cmp_f = abelianisation_framed_invariant(load_catalog("figure_eight_closed"), s3)
    assert cmp_f.engine == cmp_f.direct
    assert set(cmp_f.engine.terms) == {0}


def test_abelianisation_invariant_rejects_links():
    s3 = symmetric_group(3)
    with pytest.raises(MultiComponentError):
        abelianisation_framed_invariant(load_catalog("hopf_link_closed"), s3)


# ---------------------------------------------------------------------------
# guards
# ---------------------------------------------------------------------------


def test_enhancement_mismatch_raises():
    p = rack_pair(3)
    d = load_catalog("trefoil_plus_string")
    with pytest.raises(EnhancementMismatchError):
        invariant(d, p, top=(0, 1))
    with pytest.raises(EnhancementMismatchError):
        invariant(d, p, top=(17,))
    with pytest.raises(EnhancementMismatchError):
        invariant(d, p)  # open boundary needs an explicit top


def test_branch_cap_raises_size_limit():
    # branching happens at cups, so a split union of many circles hits the cap
    p = rack_pair(3)
    circles = SlicedTangleDiagram((), [("cupR", 0), ("capR", 0)] * 15)
    with pytest.raises(SizeLimitError):
        invariant(circles, p)
