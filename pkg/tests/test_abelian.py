"""Abelian structure theory: decompositions, coordinates, tensor squares."""

from __future__ import annotations

import pytest

from tanglesum.abelian import (
    coords_of,
    cyclic_decomposition,
    product_of_cyclics,
    TensorSquare,
)
from tanglesum.errors import NotAGroupError
from tanglesum.groups import (
    abelianization,
    cyclic_group,
    direct_product,
    symmetric_group,
)


def test_product_of_cyclics():
    g = product_of_cyclics((2, 3))
    assert g.order == 6
    assert g.is_abelian
    assert g.name == "Z2xZ3"
    assert g.label(0) == "(0,0)"
    # mixed radix encoding: (1, 2) has index 1*3 + 2
    a = g.element_by_label("(1,2)")
    assert a == 5
    assert g.mul(a, a) == g.element_by_label("(0,1)")
    assert product_of_cyclics(()).order == 1


def test_cyclic_decomposition_orders():
    z6 = cyclic_group(6)
    orders = sorted(o for _, o in cyclic_decomposition(z6))
    assert orders in ([2, 3], [6])
    klein = direct_product(cyclic_group(2), cyclic_group(2))
    assert sorted(o for _, o in cyclic_decomposition(klein)) == [2, 2]


def test_cyclic_decomposition_rejects_nonabelian():
    with pytest.raises(NotAGroupError):
        cyclic_decomposition(symmetric_group(3))


def test_coords_are_a_bijection():
    g = product_of_cyclics((2, 2, 3))
    basis = cyclic_decomposition(g)
    coords = coords_of(g, basis)
    assert len(coords) == g.order
    assert len(set(coords.values())) == g.order
    # coordinates are additive
    for a in range(g.order):
        for b in range(g.order):
            ca, cb, cab = coords[a], coords[b], coords[g.mul(a, b)]
            assert all(
                (x + y) % o == z
                for x, y, z, (_, o) in zip(ca, cb, cab, basis)
            )


def test_tensor_square_of_cyclic():
    z6 = cyclic_group(6)
    ts = TensorSquare(z6)
    assert ts.group.order == 6  # Z6 (x) Z6 = Z6
    # bilinearity in the first slot
    g = ts.base
    for x in range(6):
        for y in range(6):
            for z in range(6):
                lhs = ts.pure(g.mul(x, y), z)
                rhs = ts.group.mul(ts.pure(x, z), ts.pure(y, z))
                assert lhs == rhs


def test_tensor_square_of_klein_four():
    klein = direct_product(cyclic_group(2), cyclic_group(2))
    ts = TensorSquare(klein)
    assert ts.group.order == 16  # (Z2)^2 (x) (Z2)^2 = (Z2)^4
    # pure tensors on a basis are independent
    basis = [g for g, _ in ts.basis]
    vals = {ts.pure(x, y) for x in basis for y in basis}
    assert len(vals) == 4


def test_tensor_square_of_s3_abelianisation():
    ab, _ = abelianization(symmetric_group(3))
    ts = TensorSquare(ab)
    assert ts.group.order == 2
    t = ts.pure(1, 1)
    assert t != ts.group.identity
    assert ts.group.mul(t, t) == ts.group.identity


def test_tensor_square_of_trivial_quotient():
    one = cyclic_group(1)
    ts = TensorSquare(one)
    assert ts.group.order == 1
    assert ts.pure(0, 0) == 0
