"""Crossing-assignment pairs over a crossed module.

A pair Phi = (psi, phi) of functions G x G -> E over a crossed module
(d: E -> G, |>) assigns an E-element to every crossing of a coloured tangle
diagram: psi feeds positive crossings and phi negative ones, with arguments
(overstrand colour, outgoing understrand colour).  The boundary relations

    Z = d(psi(X,Y))^{-1} X Y X^{-1}      (positive crossing)
    Z = X^{-1} d(phi(X,Y))^{-1} Y X      (negative crossing)

determine the incoming understrand colour Z from the outgoing one, so each
overstrand colour X induces transfer permutations Fplus_X and Fminus_X of G;
the second Reidemeister move forces them to be mutually inverse.

The move axioms on the pair are, for all X, Y, T in G:

    R1:  psi(X,X) = 1
    R2:  phi(X,Y) psi(X,Z) = 1              with Z = X^{-1} d(phi(X,Y))^{-1} Y X
    R3:  phi(Y,X) . Y|>phi(T,Z) . phi(T,Y)
           = X|>phi(T,Y) . phi(T,X) . T|>phi(V,W)
         with Z = Y^{-1} d(phi(Y,X))^{-1} X Y,
              V = T^{-1} d(phi(T,Y))^{-1} Y T,
              W = T^{-1} d(phi(T,X))^{-1} X T.

Given R2, R3 is equivalent to a psi-only form (checked here as a
cross-validation): for all X, Y, Z,

    psi(X,Y) . A|>psi(X,Z) . psi(A,B) = X|>psi(Y,Z) . psi(X,C) . D|>psi(X,Y)
    A = d(psi(X,Y))^{-1} XYX^{-1},  B = d(psi(X,Z))^{-1} XZX^{-1},
    C = d(psi(Y,Z))^{-1} YZY^{-1},  D = d(psi(X,C))^{-1} XCX^{-1}.

An unframed pair satisfies R1, R2, R3; a framed pair satisfies R2, R3 and
instead of R1 the kink conditions: (i) for each Z the equation
d(phi(A,Z)) A = Z has a unique solution A = f(Z), and (ii) with
g(A) = d(psi(A,A))^{-1} A the maps f and g are mutually inverse.

Constructors cover the example families: racks and quandles over any group
structure on the same carrier, rack 2-cocycles, twisted-conjugation
commutator pairs, Peiffer liftings of 2-crossed modules, and the braided
liftings of the commutator pairs (framed and unframed).
"""

from __future__ import annotations

import numpy as np

from .crossed_modules import (
    CrossedModule,
    TwoCrossedModule,
    xm_identity,
    xm_pair_with_module,
)
from .errors import (
    NotBijectiveError,
    NotSurjectiveError,
    TangleSumError,
    XmodMismatchError,
)
from .groups import FiniteGroup
from .racks import Rack, RackCocycle
from .validation import (
    CheckResult,
    ValidationReport,
    Violation,
    WITNESS_CAP,
    grid_check,
)

# ---------------------------------------------------------------------------
# the pair object
# ---------------------------------------------------------------------------


class ReidemeisterPair:
    """Dense psi/phi tables over a crossed module, with a mode tag."""

    def __init__(self, xmod: CrossedModule, psi, phi, mode: str,
                 name: str = "pair", **meta):
        if mode not in ("framed", "unframed"):
            raise TangleSumError(f"mode must be 'framed' or 'unframed', got {mode!r}")
        self.xmod = xmod
        self.g = xmod.g
        self.e = xmod.e
        n = self.g.order
        self.psi = np.ascontiguousarray(np.asarray(psi, dtype=np.int64))
        self.phi = np.ascontiguousarray(np.asarray(phi, dtype=np.int64))
        for tbl, which in ((self.psi, "psi"), (self.phi, "phi")):
            if tbl.shape != (n, n):
                raise XmodMismatchError(
                    f"{which} table shape {tbl.shape} != ({n}, {n})")
            if tbl.min() < 0 or tbl.max() >= self.e.order:
                raise XmodMismatchError(f"{which} table entries out of E's range")
            tbl.setflags(write=False)
        self.mode = mode
        self.name = name
        self.meta = meta
        self._transfer: CrossingTransfer | None = None

    def psi_at(self, x: int, y: int) -> int:
        return int(self.psi[x, y])

    def phi_at(self, x: int, y: int) -> int:
        return int(self.phi[x, y])

    def transfer(self) -> "CrossingTransfer":
        if self._transfer is None:
            self._transfer = build_transfer(self)
        return self._transfer

    def __repr__(self) -> str:
        return f"<{self.mode} pair {self.name} over {self.xmod.name}>"

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "mode": self.mode,
            "xmod": self.xmod.to_json(),
            "psi": self.psi.tolist(),
            "phi": self.phi.tolist(),
        }


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------


def _boundary_table(p: ReidemeisterPair) -> np.ndarray:
    return p.xmod.boundary.mapping


def framed_maps(p: ReidemeisterPair):
    """The kink maps (f, g) with d(phi(f(Z),Z)) f(Z) = Z and g = f^{-1}.

    Returns (f, g, violations): f may contain -1 where no unique solution
    exists; violations lists NoSolution/NonUnique witnesses.
    """
    g = p.g
    n = g.order
    bnd = _boundary_table(p)
    idx = np.arange(n, dtype=np.int64)
    # vals[a, z] = d(phi(a, z)) a
    vals = g.mul_arr(bnd[p.phi[idx[:, None], idx[None, :]]], idx[:, None])
    f = np.full(n, -1, dtype=np.int64)
    violations = []
    for z in range(n):
        sols = np.nonzero(vals[:, z] == z)[0]
        if len(sols) == 1:
            f[z] = sols[0]
        elif len(sols) == 0:
            violations.append(Violation(
                "framed kink map", (z,),
                f"no solution A of d(phi(A,{g.label(z)})) A = {g.label(z)}"))
        else:
            violations.append(Violation(
                "framed kink map", (z,),
                f"solutions {[g.label(int(s)) for s in sols[:3]]} are not unique"))
    gmap = g.mul_arr(g.inv_arr(bnd[p.psi[idx, idx]]), idx)
    return f, gmap, violations


def validate_pair(p: ReidemeisterPair, mode: str | None = None,
                  thorough: bool = False) -> ValidationReport:
    """Check the pair axioms in the pair's mode (or an explicit one)."""
    mode = mode or p.mode
    report = ValidationReport(f"{mode} pair {p.name}")
    g, e = p.g, p.e
    n = g.order
    bnd = _boundary_table(p)
    psi, phi = p.psi, p.phi
    act = p.xmod.action
    one = e.identity

    if mode == "unframed":
        report.add(grid_check(
            "R1: psi(X,X) = 1", (n,),
            lambda X: (psi[X, X], np.full(len(X), one, dtype=np.int64)),
            thorough))

    def r2(X, Y):
        z = g.mul_arr(g.mul_arr(g.inv_arr(X), g.inv_arr(bnd[phi[X, Y]])),
                      g.mul_arr(Y, X))
        return (e.mul_arr(phi[X, Y], psi[X, z]),
                np.full(len(X), one, dtype=np.int64))

    report.add(grid_check("R2: phi(X,Y) psi(X,Z) = 1", (n, n), r2, thorough))

    def under_in_neg(X, Y):
        # Z with d(phi(X,Y)) = Y X Z^{-1} X^{-1}
        return g.mul_arr(g.mul_arr(g.inv_arr(X), g.inv_arr(bnd[phi[X, Y]])),
                         g.mul_arr(Y, X))

    def r3(X, Y, T):
        z = under_in_neg(Y, X)
        v = under_in_neg(T, Y)
        w = under_in_neg(T, X)
        lhs = e.mul_arr(e.mul_arr(phi[Y, X], act[Y, phi[T, z]]), phi[T, Y])
        rhs = e.mul_arr(e.mul_arr(act[X, phi[T, Y]], phi[T, X]),
                        act[T, phi[v, w]])
        return lhs, rhs

    report.add(grid_check("R3 (phi form)", (n, n, n), r3, thorough))

    def under_in_pos(X, Y):
        # A with d(psi(X,Y)) = X Y X^{-1} A^{-1}
        return g.mul_arr(g.inv_arr(bnd[psi[X, Y]]),
                         g.mul_arr(g.mul_arr(X, Y), g.inv_arr(X)))

    def r3p(X, Y, Z):
        a = under_in_pos(X, Y)
        b = under_in_pos(X, Z)
        c = under_in_pos(Y, Z)
        d_ = under_in_pos(X, c)
        lhs = e.mul_arr(e.mul_arr(psi[X, Y], act[a, psi[X, Z]]), psi[a, b])
        rhs = e.mul_arr(e.mul_arr(act[X, psi[Y, Z]], psi[X, c]),
                        act[d_, psi[X, Y]])
        return lhs, rhs

    report.add(grid_check("R3 (psi form)", (n, n, n), r3p, thorough))

    if mode == "framed":
        f, gmap, violations = framed_maps(p)
        report.add(CheckResult("framed kink map f is well defined",
                               n, n, "exhaustive",
                               tuple(violations[:WITNESS_CAP])))
        if not violations:
            idx = np.arange(n, dtype=np.int64)
            bad = np.nonzero((f[gmap] != idx) | (gmap[f] != idx))[0]
            report.add(CheckResult(
                "f and g are mutually inverse", n, n, "exhaustive",
                tuple(Violation("f and g are mutually inverse", (int(i),),
                                f"f(g({g.label(int(i))})) = "
                                f"{g.label(int(f[gmap[i]]))}")
                      for i in bad[:WITNESS_CAP])))
    return report


# ---------------------------------------------------------------------------
# crossing transfers
# ---------------------------------------------------------------------------


class CrossingTransfer:
    """Per-overstrand permutations linking under-arc colours at crossings.

    fplus[X, Y] and fminus[X, Y] map the outgoing under-colour Y to the
    incoming one at positive resp. negative crossings with overstrand X.
    """

    def __init__(self, pair: ReidemeisterPair, fplus: np.ndarray,
                 fminus: np.ndarray):
        self.pair = pair
        self.fplus = fplus
        self.fminus = fminus

    def under_in_plus(self, over: int, under_out: int) -> int:
        return int(self.fplus[over, under_out])

    def under_in_minus(self, over: int, under_out: int) -> int:
        return int(self.fminus[over, under_out])

    def under_out_plus(self, over: int, under_in: int) -> int:
        """Downward propagation at a positive crossing (inverse of fplus)."""
        return int(self.fminus[over, under_in])

    def under_out_minus(self, over: int, under_in: int) -> int:
        """Downward propagation at a negative crossing (inverse of fminus)."""
        return int(self.fplus[over, under_in])

    def __repr__(self) -> str:
        return f"<crossing transfer for {self.pair.name}>"


def build_transfer(p: ReidemeisterPair) -> CrossingTransfer:
    """Tabulate Fplus/Fminus and verify they are mutually inverse bijections."""
    g = p.g
    n = g.order
    bnd = _boundary_table(p)
    X = np.arange(n, dtype=np.int64)[:, None]
    Y = np.arange(n, dtype=np.int64)[None, :]
    Xb = np.broadcast_to(X, (n, n))
    Yb = np.broadcast_to(Y, (n, n))
    fplus = g.mul_arr(g.inv_arr(bnd[p.psi[Xb, Yb]]),
                      g.mul_arr(g.mul_arr(Xb, Yb), g.inv_arr(Xb)))
    fminus = g.mul_arr(g.mul_arr(g.inv_arr(Xb), g.inv_arr(bnd[p.phi[Xb, Yb]])),
                       g.mul_arr(Yb, Xb))
    for x in range(n):
        for tbl, tag in ((fplus, "Fplus"), (fminus, "Fminus")):
            if len(np.unique(tbl[x])) != n:
                raise NotBijectiveError(
                    f"{tag}_{g.label(x)} is not a bijection of G; "
                    "the pair cannot satisfy R2")
        if not np.array_equal(fminus[x, fplus[x]], np.arange(n)):
            raise NotBijectiveError(
                f"Fminus_{g.label(x)} is not the inverse of Fplus_{g.label(x)}; "
                "the pair cannot satisfy R2")
    return CrossingTransfer(p, fplus, fminus)


# ---------------------------------------------------------------------------
# constructors: racks and cocycles
# ---------------------------------------------------------------------------


def pair_from_rack(r: Rack, group: FiniteGroup, name: str | None = None) \
        -> ReidemeisterPair:
    """psi(B,A) = B A B^{-1} (B|>A)^{-1}, phi(B,A) = A B (A<|B)^{-1} B^{-1}.

    The group structure on the rack carrier is arbitrary; the crossed module
    is the identity map with the adjoint action.  Framed for racks, unframed
    for quandles.
    """
    if group.order != r.size:
        raise XmodMismatchError(
            f"group order {group.order} != rack size {r.size}")
    n = r.size
    B = np.broadcast_to(np.arange(n, dtype=np.int64)[:, None], (n, n))
    A = np.broadcast_to(np.arange(n, dtype=np.int64)[None, :], (n, n))
    g = group
    psi = g.mul_arr(g.mul_arr(B, A),
                    g.mul_arr(g.inv_arr(B), g.inv_arr(r.left[B, A])))
    phi = g.mul_arr(g.mul_arr(A, B),
                    g.mul_arr(g.inv_arr(r.right[A, B]), g.inv_arr(B)))
    mode = "unframed" if r.is_quandle else "framed"
    return ReidemeisterPair(xm_identity(group), psi, phi, mode,
                            name=name or f"rack({r.name}; {group.name})",
                            rack=r)


def pair_from_rack_cocycle(c: RackCocycle, group: FiniteGroup,
                           name: str | None = None) -> ReidemeisterPair:
    """The rack pair decorated with cocycle weights in the module component.

    Over the crossed module G x V -> G: psi(B,A) carries +w(B|>A, B) and
    phi(B,A) carries -w(A,B) in the V slot.
    """
    r = c.rack
    if group.order != r.size:
        raise XmodMismatchError(
            f"group order {group.order} != rack size {r.size}")
    xmod = xm_pair_with_module(group, c.v)
    m = c.v.order
    n = r.size
    B = np.broadcast_to(np.arange(n, dtype=np.int64)[:, None], (n, n))
    A = np.broadcast_to(np.arange(n, dtype=np.int64)[None, :], (n, n))
    g = group
    psi_g = g.mul_arr(g.mul_arr(B, A),
                      g.mul_arr(g.inv_arr(B), g.inv_arr(r.left[B, A])))
    phi_g = g.mul_arr(g.mul_arr(A, B),
                      g.mul_arr(g.inv_arr(r.right[A, B]), g.inv_arr(B)))
    psi = psi_g * m + c.w[r.left[B, A], B]
    phi = phi_g * m + c.v.inv_arr(c.w[A, B])
    diag = np.arange(n)
    quandle_cocycle = bool(r.is_quandle
                           and (c.w[diag, diag] == c.v.identity).all())
    mode = "unframed" if quandle_cocycle else "framed"
    return ReidemeisterPair(xmod, psi, phi, mode,
                            name=name or f"cocycle({c.name}; {group.name})",
                            cocycle=c)


# ---------------------------------------------------------------------------
# constructors: twisted conjugation (commutator) pairs
# ---------------------------------------------------------------------------


def pair_eisermann(g: FiniteGroup, x, carrier: str = "commutator",
                   name: str | None = None) -> ReidemeisterPair:
    """The commutator pair phi(L,M) = [Mx^{-1}, Lx^{-1}] over conjugation.

    psi(L,M) = [L,M][ML^{-1},x].  The carrier is the commutator subgroup
    (where both tables land even when x does not) or the whole group; the
    crossed module is the identity with the adjoint action.  Unframed.
    """
    from .groups import commutator_subgroup
    xi = g.element_by_label(x) if isinstance(x, str) else int(x)
    if carrier == "commutator":
        base, _ = commutator_subgroup(g)
        elems = base.parent_indices
    elif carrier == "group":
        base = g
        elems = tuple(range(g.order))
    else:
        raise TangleSumError(
            f"carrier must be 'commutator' or 'group', got {carrier!r}")
    pos = {gi: k for k, gi in enumerate(elems)}
    n = len(elems)
    xinv = g.inv(xi)
    psi = np.empty((n, n), dtype=np.int64)
    phi = np.empty((n, n), dtype=np.int64)
    for i, l in enumerate(elems):
        for j, m in enumerate(elems):
            phi_val = g.comm(g.mul(m, xinv), g.mul(l, xinv))
            psi_val = g.mul(g.comm(l, m), g.comm(g.mul(m, g.inv(l)), xi))
            phi[i, j] = pos[phi_val]
            psi[i, j] = pos[psi_val]
    return ReidemeisterPair(xm_identity(base), psi, phi, "unframed",
                            name=name or
                            f"eisermann({g.name}, {g.label(xi)}, {carrier})",
                            group=g, x=xi, carrier=carrier)


# ---------------------------------------------------------------------------
# constructors: Peiffer liftings and their twisted versions
# ---------------------------------------------------------------------------


def pair_from_2xmod(t: TwoCrossedModule, name: str | None = None) \
        -> ReidemeisterPair:
    """psi(A,B) = {A,B} and phi(A,B) = A |>' {A^{-1},B}, a framed pair.

    The pair lives over the derived crossed module (delta: L -> E, |>') of
    the 2-crossed module; A and B run over the middle group E.
    """
    n = t.e.order
    A = np.broadcast_to(np.arange(n, dtype=np.int64)[:, None], (n, n))
    B = np.broadcast_to(np.arange(n, dtype=np.int64)[None, :], (n, n))
    psi = t.lifting[A, B].astype(np.int64)
    phi = t.derived_action_table[A, t.lifting[t.e.inv_arr(A), B]].astype(np.int64)
    return ReidemeisterPair(t.derived_xmod(), psi, phi, "framed",
                            name=name or f"peiffer({t.name})", source=t)


def _braided_tables(b: TwoCrossedModule):
    if not b.is_braided:
        raise XmodMismatchError(
            "lifting pairs need a braided object (trivial bottom group)")
    return b.e, b.l, b.lifting


def pair_eisermann_lift_unframed(b: TwoCrossedModule, x,
                                 name: str | None = None) -> ReidemeisterPair:
    """phi(L,M) = {Mx^{-1}, Lx^{-1}}, psi(L,M) = {L,M}{ML^{-1},x}; unframed.

    Needs the braiding's boundary to be surjective (this is what makes
    psi(L,L) = 1).  Its boundary shadow is the commutator pair for the same x.
    """
    mid, top, lifting = _braided_tables(b)
    if not b.delta.is_surjective:
        raise NotSurjectiveError(
            f"{b.delta.name or 'delta'} is not surjective; "
            "the unframed lifting needs every colour to lift")
    xi = mid.element_by_label(x) if isinstance(x, str) else int(x)
    n = mid.order
    L = np.broadcast_to(np.arange(n, dtype=np.int64)[:, None], (n, n))
    M = np.broadcast_to(np.arange(n, dtype=np.int64)[None, :], (n, n))
    xinv = mid.inv(xi)
    phi = lifting[mid.mul_arr(M, np.full((n, n), xinv, dtype=np.int64)),
                  mid.mul_arr(L, np.full((n, n), xinv, dtype=np.int64))]
    psi = top.mul_arr(
        lifting[L, M],
        lifting[mid.mul_arr(M, mid.inv_arr(L)),
                np.full((n, n), xi, dtype=np.int64)])
    return ReidemeisterPair(b.derived_xmod(), psi.astype(np.int64),
                            phi.astype(np.int64), "unframed",
                            name=name or f"lift_unframed({b.name}, "
                            f"{mid.label(xi)})",
                            source=b, x=xi)


def pair_eisermann_lift_framed(b: TwoCrossedModule, x,
                               name: str | None = None) -> ReidemeisterPair:
    """phi(L,M) = {Mx^{-1}, Lx^{-1}}, psi(L,M) = {xML^{-1}x^{-1}Lx^{-1}, Lx^{-1}}^{-1}.

    A framed pair whose kink maps are both the identity of G.
    """
    mid, top, lifting = _braided_tables(b)
    xi = mid.element_by_label(x) if isinstance(x, str) else int(x)
    n = mid.order
    L = np.broadcast_to(np.arange(n, dtype=np.int64)[:, None], (n, n))
    M = np.broadcast_to(np.arange(n, dtype=np.int64)[None, :], (n, n))
    xarr = np.full((n, n), xi, dtype=np.int64)
    xinv_arr = np.full((n, n), mid.inv(xi), dtype=np.int64)
    lx = mid.mul_arr(L, xinv_arr)
    phi = lifting[mid.mul_arr(M, xinv_arr), lx]
    first = mid.mul_arr(
        mid.mul_arr(xarr, mid.mul_arr(M, mid.inv_arr(L))),
        mid.mul_arr(xinv_arr, lx))
    psi = top.inv_arr(lifting[first, lx])
    return ReidemeisterPair(b.derived_xmod(), psi.astype(np.int64),
                            phi.astype(np.int64), "framed",
                            name=name or f"lift_framed({b.name}, "
                            f"{mid.label(xi)})",
                            source=b, x=xi)


# ---------------------------------------------------------------------------
# boundary shadows
# ---------------------------------------------------------------------------


def boundary_shadow(p: ReidemeisterPair) -> tuple[np.ndarray, np.ndarray]:
    """The G-valued tables (d o psi, d o phi)."""
    bnd = _boundary_table(p)
    return bnd[p.psi], bnd[p.phi]


def lifting_shadow_check(p: ReidemeisterPair, x=None,
                         thorough: bool = False) -> ValidationReport:
    """Check d(phi(L,M)) = [Mx^{-1},Lx^{-1}] and d(psi(L,M)) = [L,M][ML^{-1},x].

    This is the defining property of a lifting of the commutator pair; x
    defaults to the one stored at construction.
    """
    g = p.g
    if x is None:
        x = p.meta.get("x")
        if x is None:
            raise TangleSumError("no x stored on the pair; pass one explicitly")
    xi = g.element_by_label(x) if isinstance(x, str) else int(x)
    n = g.order
    shadow_psi, shadow_phi = boundary_shadow(p)
    report = ValidationReport(f"lifting shadow of {p.name}")
    xinv = g.inv(xi)

    def phi_check(L, M):
        expect = g.comm_arr(g.mul_arr(M, np.full(len(M), xinv, dtype=np.int64)),
                            g.mul_arr(L, np.full(len(L), xinv, dtype=np.int64)))
        return shadow_phi[L, M], expect

    def psi_check(L, M):
        expect = g.mul_arr(
            g.comm_arr(L, M),
            g.comm_arr(g.mul_arr(M, g.inv_arr(L)),
                       np.full(len(L), xi, dtype=np.int64)))
        return shadow_psi[L, M], expect

    report.add(grid_check("d(phi(L,M)) = [Mx^-1, Lx^-1]", (n, n),
                          phi_check, thorough))
    report.add(grid_check("d(psi(L,M)) = [L,M][ML^-1,x]", (n, n),
                          psi_check, thorough))
    return report
