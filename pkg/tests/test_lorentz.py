import math
import random
from fractions import Fraction

import pytest

from kma.errors import InputError
from kma.lorentz import (
    Basis,
    BasisMismatchError,
    CartanVector,
    CausalClass,
    DifferentSheetsError,
    NonTerminationError,
    NotOnSheetError,
    OutsideClosedConeError,
    canonical_ray_direction,
)

PHI = (3 + math.sqrt(5)) / 2


def test_form_fixtures(fib):
    z1 = CartanVector((1, 0))
    assert fib.geom.form(z1, z1) == Fraction(1, 2)
    x = CartanVector((-1, -1))
    assert fib.geom.form(x, x) == Fraction(-1, 2)
    zero = CartanVector((0, 0))
    assert fib.geom.form(x, zero) == 0


def test_form_split_basis_scales_by_four(fib):
    h = CartanVector((1, 0), Basis.SPLIT_H)
    assert fib.geom.form(h, h) == 2


def test_basis_mismatch(fib):
    with pytest.raises(BasisMismatchError):
        fib.geom.form(CartanVector((1, 0)), CartanVector((1, 0), Basis.SPLIT_H))


def test_classify_fixtures(fib):
    assert fib.geom.classify_vector(CartanVector((-1, -1))) is CausalClass.TIMELIKE_FORWARD
    assert fib.geom.classify_vector(CartanVector((1, 1))) is CausalClass.TIMELIKE_BACKWARD
    assert fib.geom.classify_vector(CartanVector((2.0, 2 * PHI))) is CausalClass.NULL
    assert fib.geom.classify_vector(CartanVector((0, 0))) is CausalClass.ZERO
    assert fib.geom.classify_vector(CartanVector((1, 0))) is CausalClass.SPACELIKE


def test_classify_commutes_with_weyl(fib):
    rng = random.Random(2)
    for _ in range(200):
        word = tuple(rng.randint(1, 2) for _ in range(rng.randint(0, 8)))
        c = tuple(Fraction(rng.randint(-6, 6), rng.randint(1, 3)) for _ in range(2))
        x = CartanVector(c)
        assert fib.geom.classify_vector(fib.geom.act(word, x)) is fib.geom.classify_vector(x)


def test_reduce_identity_on_chamber_point(fib):
    x = CartanVector((Fraction(-1), Fraction(-1)))
    word, x0 = fib.geom.tits_cone_reduce(x)
    assert word == ()
    assert x0.coords == x.coords


def test_reduce_round_trip_exact(fib):
    rng = random.Random(9)
    base = CartanVector((Fraction(-1), Fraction(-1)))
    for _ in range(50):
        word = tuple(rng.randint(1, 2) for _ in range(rng.randint(0, 8)))
        x = fib.geom.act(word, base)
        back_word, x0 = fib.geom.tits_cone_reduce(x)
        assert x0.coords == base.coords
        assert fib.geom.act(back_word, x0).coords == x.coords


def test_reduce_backward_component(fib):
    x = CartanVector((Fraction(1), Fraction(1)))
    word, x0 = fib.geom.tits_cone_reduce(x)
    assert word == ()
    assert x0.coords == x.coords
    moved = fib.geom.act((1, 2), x)
    back_word, back = fib.geom.tits_cone_reduce(moved)
    assert fib.geom.act(back_word, back).coords == moved.coords


def test_reduce_rejects_spacelike(fib):
    with pytest.raises(OutsideClosedConeError):
        fib.geom.tits_cone_reduce(CartanVector((1, 0)))


def test_reduce_null_chamber_ray_terminates(tri23):
    # The ideal chamber direction of the 2-3-infinity group is rational.
    word, x0 = tri23.geom.tits_cone_reduce(CartanVector((Fraction(-1), Fraction(-1), Fraction(0))))
    assert word == ()
    moved = tri23.geom.act((3, 2), CartanVector((Fraction(-1), Fraction(-1), Fraction(0))))
    back_word, back = tri23.geom.tits_cone_reduce(moved)
    assert tri23.geom.act(back_word, back).coords == moved.coords


def test_reduce_iteration_cap(fib):
    # A forward timelike point deep in the cone needs more reflections than
    # a tiny cap allows.
    deep = fib.geom.act((1, 2, 1, 2, 1), CartanVector((Fraction(-1), Fraction(-1))))
    original = fib.geom.DESCENT_CAP
    fib.geom.DESCENT_CAP = 2
    try:
        with pytest.raises(NonTerminationError):
            fib.geom.tits_cone_reduce(deep)
    finally:
        fib.geom.DESCENT_CAP = original


def test_wall_fixtures(fib):
    (w1,) = fib.geom.wall(1)
    (w2,) = fib.geom.wall(2)
    assert w1.coords == (3, 2)
    assert w2.coords == (2, 3)
    assert fib.geom.a_bar(1, w1) == 0
    assert fib.geom.a_bar(2, w2) == 0


def test_wall_unequal_lengths(mixed):
    # a = 2 gives the primitive direction (1, 1) on the first wall.
    (w1,) = mixed.geom.wall(1)
    (w2,) = mixed.geom.wall(2)
    assert w1.coords == (1, 1)
    assert w2.coords == (2, 3)


def test_wall_rank3_is_plane(tri23):
    basis = tri23.geom.wall(1)
    assert len(basis) == 2
    for v in basis:
        assert tri23.geom.a_bar(1, v) == 0


def test_sheet_point_and_distance(fib):
    x = fib.geom.sheet_point(CartanVector((-1.0, -1.0)), -1.0)
    assert abs(float(fib.geom.norm(x)) + 1.0) < 1e-12
    assert fib.geom.hyperbolic_distance(x, x, -1.0) == 0.0
    y = fib.geom.sheet_point(CartanVector((-2.0, -1.0)), -1.0)
    d = fib.geom.hyperbolic_distance(x, y, -1.0)
    assert d > 0
    # r = -1 specializes to arccosh(-form(x, y)).
    assert abs(d - math.acosh(-float(fib.geom.form(x, y)))) < 1e-12


def test_distance_scales_with_radius(fib):
    x1 = fib.geom.sheet_point(CartanVector((-1.0, -1.0)), -1.0)
    y1 = fib.geom.sheet_point(CartanVector((-2.0, -1.0)), -1.0)
    x4 = fib.geom.sheet_point(CartanVector((-1.0, -1.0)), -4.0)
    y4 = fib.geom.sheet_point(CartanVector((-2.0, -1.0)), -4.0)
    d1 = fib.geom.hyperbolic_distance(x1, y1, -1.0)
    d4 = fib.geom.hyperbolic_distance(x4, y4, -4.0)
    assert abs(d4 - 2 * d1) < 1e-12


def test_distance_requires_same_sheet(fib):
    x = fib.geom.sheet_point(CartanVector((-1.0, -1.0)), -1.0)
    y = fib.geom.sheet_point(CartanVector((1.0, 1.0)), -1.0)
    with pytest.raises(DifferentSheetsError):
        fib.geom.hyperbolic_distance(x, y, -1.0)
    with pytest.raises(NotOnSheetError):
        fib.geom.hyperbolic_distance(x, CartanVector((-5.0, -5.0)), -1.0)


def test_chamber_arc_length_equals_translate(fib):
    # W acts by isometries, so all chamber arcs on one sheet have one length.
    r = -0.5
    v1 = fib.geom.sheet_point(CartanVector((-3.0, -2.0)), r)
    v2 = fib.geom.sheet_point(CartanVector((-2.0, -3.0)), r)
    base = fib.geom.hyperbolic_distance(v1, v2, r)
    w1 = fib.geom.act((1, 2), v1)
    w2 = fib.geom.act((1, 2), v2)
    assert abs(fib.geom.hyperbolic_distance(w1, w2, r) - base) < 1e-9


def test_null_rays_fixtures(fib):
    rays = fib.geom.null_rays_rank2()
    assert set(rays) == {"x1+", "x1-", "x2+", "x2-"}
    for key, ray in rays.items():
        vec = CartanVector(ray.direction.coords)
        assert abs(float(fib.geom.norm(vec))) < 1e-14
        assert abs(ray.direction.coords[0]) == 1.0
        assert ray.forward == key.endswith("+")
    # Sign conditions pin the branch index.
    for key in ("x1+", "x1-"):
        v = CartanVector(rays[key].direction.coords)
        assert fib.geom.a_bar(1, v) < 0 < fib.geom.a_bar(2, v)
    for key in ("x2+", "x2-"):
        v = CartanVector(rays[key].direction.coords)
        assert fib.geom.a_bar(2, v) < 0 < fib.geom.a_bar(1, v)
    # Backward rays are the negated forward ones, crosswise.
    for a, b in (("x2-", "x1+"), ("x1-", "x2+")):
        assert max(
            abs(p + q)
            for p, q in zip(rays[a].direction.coords, rays[b].direction.coords)
        ) < 1e-14
    # The x1- ray spans the same line as (2, 3 + sqrt 5).
    x1m = rays["x1-"].direction.coords
    assert abs(x1m[0] - 1.0) < 1e-14 and abs(x1m[1] - PHI) < 1e-12


def test_canonical_ray_direction():
    v = canonical_ray_direction((-4.0, -2.0))
    assert v.coords == (-1.0, -0.5)
    with pytest.raises(InputError):
        canonical_ray_direction((0, 0))


def test_triangle_inequality(fib):
    rng = random.Random(1)
    e_t, e_s = fib.geom.frame()

    def pt():
        tau = rng.uniform(-3, 3)
        return CartanVector(
            tuple(math.cosh(tau) * a + math.sinh(tau) * b for a, b in zip(e_t, e_s))
        )

    for _ in range(300):
        x, y, z = pt(), pt(), pt()
        dxy = fib.geom.hyperbolic_distance(x, y, -1.0)
        dyz = fib.geom.hyperbolic_distance(y, z, -1.0)
        dxz = fib.geom.hyperbolic_distance(x, z, -1.0)
        assert dxz <= dxy + dyz + 1e-9
