"""State sums of sliced tangle diagrams over a Reidemeister pair.

A Reidemeister pair (psi, phi) over a crossed module (bd: E -> G, |>)
colours diagrams: arcs carry elements of G, crossings carry elements of E.
At a positive crossing with overstrand X, under-colours Z (in) and Y (out)
are linked by Z = bd(psi(X, Y))^-1 X Y X^-1, and the crossing carries
psi(X, Y); at a negative crossing Z = X^-1 bd(phi(X, Y))^-1 Y X and the
crossing carries phi(X, Y).  Cups and caps force equal colours on their two
legs.  Going downwards both constraints solve uniquely for Y, so colourings
are enumerated by branching only where a new piece of strand is born.

A coloured diagram evaluates to a morphism of the categorical group of the
crossed module: a slice whose crossing sits at position p with colour e
contributes u |> e, where u is the product of the colours left of p on the
level above (upward strands inverted), and slices compose downwards, the
composite of (U, e) with a following (V, f) being (U, f e).  The source is
the evaluation of the top enhancement; the boundary identity

    bd(elt) * e(top colours) = e(bottom colours)

holds for every colouring and makes the bottom evaluation redundant.

The invariant of a diagram with a fixed top enhancement is the bag of
morphism elements, bucketed by the bottom enhancement.  No normalisation is
applied and values are compared as exact multisets.

The module also provides three independent cross-checks: a Wirtinger-style
counting invariant of closed diagrams that needs no pair at all, longitude
words of string knots, and the framed abelianisation invariant, which the
tensor-square pair must reproduce as a sum of (f(m) (x) f(m))^writhe over
homomorphisms f out of the knot group.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, NamedTuple

from .algebra import GroupAlgebraElement
from .crossed_modules import (
    CGMorphism,
    CrossedModule,
    abelianisation_tensor_2xmod,
)
from .diagrams import DOWN, Enhancement, SlicedTangleDiagram
from .errors import (
    DiagramError,
    EnhancementMismatchError,
    MultiComponentError,
    NonComposableError,
    NotClosedError,
    SizeLimitError,
    TangleSumError,
)
from .pairs import CrossingTransfer, ReidemeisterPair, pair_from_2xmod
from .racks import conjugation_quandle, _enumerate_colourings as _rack_colourings
from .validation import SAMPLE_SEED

STATE_SUM_BRANCH_CAP = 5_000_000


# ----------------------------------------------------------------------
# colourings
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class Colouring:
    """One solution of the crossing constraints on a sliced diagram.

    arc_colours[i] is the G-colour of arc i; crossing_colours[k] is the
    E-colour of d.crossings[k].
    """

    diagram: SlicedTangleDiagram = field(compare=False)
    pair: ReidemeisterPair = field(compare=False)
    arc_colours: tuple[int, ...] = ()
    crossing_colours: tuple[int, ...] = ()

    def top_colours(self) -> tuple[int, ...]:
        tops, _ = self.diagram.boundary_arcs()
        return tuple(self.arc_colours[a] for a in tops)

    def bottom_colours(self) -> tuple[int, ...]:
        _, bots = self.diagram.boundary_arcs()
        return tuple(self.arc_colours[a] for a in bots)

    def __repr__(self) -> str:
        g = self.pair.g
        cols = ", ".join(g.label(c) for c in self.arc_colours)
        return f"<colouring [{cols}]>"


def _normalise_enhancement(group, orientations, value, which: str):
    """Accept an Enhancement, a tuple of indices or labels, or None."""
    if value is None:
        if orientations:
            raise EnhancementMismatchError(
                f"{which} enhancement required for a boundary of width "
                f"{len(orientations)}")
        return ()
    if isinstance(value, Enhancement):
        if value.orientations != tuple(orientations):
            raise EnhancementMismatchError(
                f"{which} orientations {value.orientations} do not match the "
                f"diagram's {tuple(orientations)}")
        value = value.elements
    out = tuple(group.element_by_label(v) if isinstance(v, str) else int(v)
                for v in value)
    if len(out) != len(orientations):
        raise EnhancementMismatchError(
            f"{which} enhancement has {len(out)} colours for "
            f"{len(orientations)} strands")
    for v in out:
        if not 0 <= v < group.order:
            raise EnhancementMismatchError(f"{which} colour {v} out of range")
    return out


def enumerate_colourings(d: SlicedTangleDiagram, transfer: CrossingTransfer,
                         top=None) -> Iterator[Colouring]:
    """Stream every colouring of d whose top arcs match the given colours.

    Depth-first over the slices: a cup whose arc is still blank branches
    over all of G, a crossing propagates deterministically downwards and
    prunes when it meets an arc that was already coloured through a closure.
    An arc read before its birth event (possible when a strand winds back
    upwards) is branched over as well, so the stream is always complete.
    """
    pair = transfer.pair
    group = pair.g
    n = group.order
    top_cols = _normalise_enhancement(group, d.top, top, "top")

    n_cups = sum(1 for s in d.slices if s.gen in ("cupR", "cupL"))
    if n ** n_cups > STATE_SUM_BRANCH_CAP:
        raise SizeLimitError(
            f"{n}^{n_cups} cup branches exceed the state-sum cap")

    arc_col = [-1] * len(d.arcs)
    for i, c in enumerate(top_cols):
        a = d.arc_of[(0, i)]
        if arc_col[a] >= 0 and arc_col[a] != c:
            return  # the top word itself violates an arc identification
        arc_col[a] = c

    # one event per slice that can touch colours, in top-down order
    events: list[tuple[str, object]] = []
    xrows = {c.row: k for k, c in enumerate(d.crossings)}
    for r, s in enumerate(d.slices):
        if s.gen in ("X+", "X-"):
            events.append(("x", d.crossings[xrows[r]]))
        elif s.gen in ("cupR", "cupL"):
            events.append(("cup", d.arc_of[(r + 1, s.pos)]))

    xcols = [0] * len(d.crossings)

    def descend(k: int) -> Iterator[Colouring]:
        if k == len(events):
            yield Colouring(d, pair, tuple(arc_col), tuple(xcols))
            return
        kind, data = events[k]
        if kind == "cup":
            a = data
            if arc_col[a] >= 0:
                yield from descend(k + 1)
            else:
                for c in range(n):
                    arc_col[a] = c
                    yield from descend(k + 1)
                arc_col[a] = -1
            return
        c = data
        over_free = arc_col[c.over_arc] < 0
        for x in (range(n) if over_free else (arc_col[c.over_arc],)):
            if over_free:
                arc_col[c.over_arc] = x
            in_free = arc_col[c.under_in_arc] < 0
            for z in (range(n) if in_free else (arc_col[c.under_in_arc],)):
                if in_free:
                    arc_col[c.under_in_arc] = z
                if c.sign > 0:
                    y = transfer.under_out_plus(x, z)
                    e = pair.psi_at(x, y)
                else:
                    y = transfer.under_out_minus(x, z)
                    e = pair.phi_at(x, y)
                out_free = arc_col[c.under_out_arc] < 0
                if out_free:
                    arc_col[c.under_out_arc] = y
                if arc_col[c.under_out_arc] == y:
                    xcols[xrows[c.row]] = e
                    yield from descend(k + 1)
                if out_free:
                    arc_col[c.under_out_arc] = -1
                if in_free:
                    arc_col[c.under_in_arc] = -1
            if over_free:
                arc_col[c.over_arc] = -1

    yield from descend(0)


# ----------------------------------------------------------------------
# evaluation
# ----------------------------------------------------------------------


def evaluate(col: Colouring) -> CGMorphism:
    """Composite categorical-group morphism of a coloured diagram."""
    d, pair = col.diagram, col.pair
    xmod = pair.xmod
    group, egrp = xmod.g, xmod.e
    arc = col.arc_colours

    src = group.identity
    for i, o in enumerate(d.top):
        c = arc[d.arc_of[(0, i)]]
        src = group.mul(src, c if o == DOWN else group.inv(c))

    xrows = {c.row: k for k, c in enumerate(d.crossings)}
    elt = egrp.identity
    for r, s in enumerate(d.slices):
        if s.gen not in ("X+", "X-"):
            continue
        w = d.words[r]
        prefix = group.identity
        for q in range(s.pos):
            cq = arc[d.arc_of[(r, q)]]
            prefix = group.mul(prefix, cq if w[q] == DOWN else group.inv(cq))
        e = xmod.act(prefix, col.crossing_colours[xrows[r]])
        elt = egrp.mul(e, elt)
    return CGMorphism(xmod, src, elt)


@dataclass
class InvariantValue:
    """Unnormalised state sum for one (top, bottom) enhancement pair.

    terms maps E-element indices to multiplicities; every term satisfies
    bd(element) * e(source) = e(target).
    """

    pair: ReidemeisterPair = field(compare=False)
    source: Enhancement = Enhancement((), ())
    target: Enhancement = Enhancement((), ())
    terms: dict = field(default_factory=dict)

    def algebra(self) -> GroupAlgebraElement:
        return GroupAlgebraElement(self.pair.e, self.terms)

    @property
    def total(self) -> int:
        return sum(self.terms.values())

    def check_boundary(self) -> bool:
        xmod = self.pair.xmod
        group = xmod.g
        lhs_base = self.source.evaluation(group)
        rhs = self.target.evaluation(group)
        bnd = xmod.boundary.mapping
        return all(group.mul(int(bnd[e]), lhs_base) == rhs for e in self.terms)

    def display(self) -> str:
        return self.algebra().display()

    __str__ = display

    def to_json(self) -> dict:
        egrp = self.pair.e
        group = self.pair.g
        return {
            "source": {
                "orientations": list(self.source.orientations),
                "elements": [group.label(c) for c in self.source.elements],
            },
            "target": {
                "orientations": list(self.target.orientations),
                "elements": [group.label(c) for c in self.target.elements],
            },
            "terms": [{"element_label": egrp.label(e), "count": self.terms[e]}
                      for e in sorted(self.terms)],
        }

    def __repr__(self) -> str:
        return f"InvariantValue({self.display()})"


def _bucketed(d: SlicedTangleDiagram, pair: ReidemeisterPair,
              top_cols) -> dict:
    """Bottom colour tuple -> {E element: count} over all colourings."""
    _, bot_arcs = d.boundary_arcs()
    buckets: dict[tuple[int, ...], dict[int, int]] = {}
    for col in enumerate_colourings(d, pair.transfer(), top_cols):
        m = evaluate(col)
        bot = tuple(col.arc_colours[a] for a in bot_arcs)
        terms = buckets.setdefault(bot, {})
        terms[m.elt] = terms.get(m.elt, 0) + 1
    return buckets


def invariant(d: SlicedTangleDiagram, pair: ReidemeisterPair, top=None,
              bottom="all"):
    """State sum of d with the given top enhancement.

    Closed diagram: a single InvariantValue with empty boundary words.
    Open diagram: a map {bottom colour tuple: InvariantValue} when bottom
    is "all" (or None), else the single InvariantValue at that bottom,
    possibly with no terms.
    """
    group = pair.g
    top_cols = _normalise_enhancement(group, d.top, top, "top")
    src = Enhancement(d.top, top_cols)
    buckets = _bucketed(d, pair, top_cols)

    if d.is_closed:
        terms = buckets.get((), {})
        return InvariantValue(pair, src, Enhancement((), ()), terms)

    if bottom is None or (isinstance(bottom, str) and bottom == "all"):
        return {
            bot: InvariantValue(pair, src, Enhancement(d.bottom, bot), terms)
            for bot, terms in sorted(buckets.items())
        }
    bot_cols = _normalise_enhancement(group, d.bottom, bottom, "bottom")
    return InvariantValue(pair, src, Enhancement(d.bottom, bot_cols),
                          buckets.get(bot_cols, {}))


def invariant_matrix(d: SlicedTangleDiagram, pair: ReidemeisterPair,
                     top_cap: int = 4096) -> dict:
    """Full matrix {(top, bottom): terms} over every top enhancement.

    Intended for small boundaries, e.g. to compare diagrams related by a
    move; keys with no colourings are omitted.
    """
    k = len(d.top)
    n = pair.g.order
    if n ** k > top_cap:
        raise SizeLimitError(f"{n}^{k} top enhancements exceed {top_cap}")
    out: dict[tuple, dict[int, int]] = {}
    for top in itertools.product(range(n), repeat=k):
        for bot, terms in _bucketed(d, pair, top).items():
            if terms:
                out[(top, bot)] = terms
    return out


# ----------------------------------------------------------------------
# Wirtinger counting invariant
# ----------------------------------------------------------------------


def wirtinger_count(d: SlicedTangleDiagram, xmod: CrossedModule) -> Fraction:
    """Normalised count of crossed-module colourings of a closed diagram.

    Arc colours range over all of G unconstrained; each crossing asks for an
    E-element whose boundary equals the Wirtinger relator (over * out *
    over^-1 * in^-1 at positive crossings, out * over * in^-1 * over^-1 at
    negative ones), contributing the number of such elements.  The total is
    divided by #G^#arcs.  Boundary-identity crossed modules always give 1.
    """
    if not d.is_closed:
        raise NotClosedError("the counting invariant needs a closed diagram")
    group = xmod.g
    n = group.order
    n_arcs = len(d.arcs)
    if n ** n_arcs > STATE_SUM_BRANCH_CAP:
        raise SizeLimitError(
            f"{n}^{n_arcs} arc colourings exceed the state-sum cap")
    image = frozenset(xmod.boundary.image())
    ker = len(xmod.boundary.kernel())
    cons = [(c.sign, c.over_arc, c.under_in_arc, c.under_out_arc)
            for c in d.crossings]
    total = 0
    for colour in itertools.product(range(n), repeat=n_arcs):
        weight = 1
        for sign, ov, ui, uo in cons:
            o, i, u = colour[ov], colour[ui], colour[uo]
            if sign > 0:
                rel = group.word((o, u, group.inv(o), group.inv(i)))
            else:
                rel = group.word((u, o, group.inv(i), group.inv(o)))
            if rel in image:
                weight *= ker
            else:
                weight = 0
                break
        total += weight
    return Fraction(total, n ** n_arcs)


# ----------------------------------------------------------------------
# longitudes
# ----------------------------------------------------------------------


def _check_string(d: SlicedTangleDiagram) -> None:
    if d.is_closed or d.top != (DOWN,) or d.bottom != (DOWN,):
        raise DiagramError(
            "longitudes are defined for string diagrams with one downward "
            "strand at top and bottom")
    if d.component_count() != 1:
        raise MultiComponentError(
            f"string diagram has {d.component_count()} components")


def longitude_word(d: SlicedTangleDiagram) -> tuple[tuple[int, int], ...]:
    """Longitude of a string knot as (arc, exponent) letters.

    Walking the strand from the top, the i-th undercrossing with sign s,
    incoming under-arc a and over-arc b appends a^-s b^s.  The word lives in
    the free group on the arcs and has zero total exponent at each crossing.
    """
    _check_string(d)
    word: list[tuple[int, int]] = []
    for c, _, _ in d.traverse_strand((0, 0, DOWN)):
        word.append((c.under_in_arc, -c.sign))
        word.append((c.over_arc, c.sign))
    return tuple(word)


def longitude_value(d: SlicedTangleDiagram, colours, group) -> int:
    """Evaluate the longitude word under an arc colouring in a group."""
    out = group.identity
    for arc, exp in longitude_word(d):
        out = group.mul(out, group.power(colours[arc], exp))
    return out


# ----------------------------------------------------------------------
# functoriality check
# ----------------------------------------------------------------------


def tqft_compose_check(d1: SlicedTangleDiagram, d2: SlicedTangleDiagram,
                       pair: ReidemeisterPair, tops=None,
                       sample: int = 12) -> bool:
    """Does the invariant of d1 stacked on d2 factor through the middle?

    Compares, for each top enhancement of d1, the bucketed state sum of the
    composite with the convolution of the two factors over all middle
    enhancements.  Checks every top when the boundary is small, otherwise a
    fixed-seed sample.
    """
    if d1.bottom != d2.top:
        raise NonComposableError(
            f"cannot compose: bottom {d1.bottom} != top {d2.top}")
    d = d1.then(d2)
    group = pair.g
    egrp = pair.e
    k = len(d1.top)
    if tops is None:
        if group.order ** k <= 2048:
            tops = list(itertools.product(range(group.order), repeat=k))
        else:
            rng = random.Random(SAMPLE_SEED)
            tops = [tuple(rng.randrange(group.order) for _ in range(k))
                    for _ in range(sample)]
    for top in tops:
        lhs = {b: t for b, t in _bucketed(d, pair, top).items() if t}
        rhs: dict[tuple[int, ...], dict[int, int]] = {}
        for mid, upper in _bucketed(d1, pair, top).items():
            for bot, lower in _bucketed(d2, pair, mid).items():
                acc = rhs.setdefault(bot, {})
                for e1, c1 in upper.items():
                    for e2, c2 in lower.items():
                        key = egrp.mul(e2, e1)
                        acc[key] = acc.get(key, 0) + c1 * c2
        rhs = {b: t for b, t in rhs.items() if t}
        if lhs != rhs:
            return False
    return True


# ----------------------------------------------------------------------
# framed abelianisation invariant
# ----------------------------------------------------------------------


class AbelianisationComparison(NamedTuple):
    engine: GroupAlgebraElement
    direct: GroupAlgebraElement


def abelianisation_framed_invariant(d: SlicedTangleDiagram,
                                    group) -> AbelianisationComparison:
    """Tensor-square state sum of a closed knot diagram, both ways.

    engine: the state sum over the pair of the abelianisation 2-crossed
    module.  direct: the sum over conjugation colourings (equivalently,
    homomorphisms f from the knot group to G) of (f(m) (x) f(m))^writhe in
    the tensor square of G^ab, with m any meridian.  The two must agree.
    """
    if not d.is_closed:
        raise NotClosedError("the framed comparison needs a closed diagram")
    if d.component_count() != 1:
        raise MultiComponentError(
            "the meridian-based sum needs a single component")
    t2 = abelianisation_tensor_2xmod(group)
    p = pair_from_2xmod(t2)
    engine = invariant(d, p).algebra()

    ts = t2.tensor_square
    proj = t2.abelianisation
    tgrp = ts.group
    tw = d.writhe
    counts: dict[int, int] = {}
    for colour in _rack_colourings(d, conjugation_quandle(group)):
        ab = int(proj.mapping[colour[0]])
        elt = tgrp.power(ts.pure(ab, ab), tw)
        counts[elt] = counts.get(elt, 0) + 1
    direct = GroupAlgebraElement(tgrp, counts)
    if engine.group is not direct.group:
        raise TangleSumError("tensor-square groups diverged")  # pragma: no cover
    return AbelianisationComparison(engine, direct)
