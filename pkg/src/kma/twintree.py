"""Rank-2 twin-tree model: the integer-labelled fundamental apartment, ray
actions, the abelian hinge calculus of the one-sided deformation group,
deformed apartments, tree ends, gallery distance on the horoball subtree,
and the embedding of ends onto lightcone asymptote rays.

Hinge directions are stored as exact rational pairs (re, im); decimal
strings and integers stay exact, floats carry their binary value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InputError, KmaError
from .lorentz import CartanVector, LorentzGeometry, NullRay, canonical_ray_direction
from .su2flow import SliceVector, Su2Flow


class SignMismatchError(KmaError):
    pass


class UnrepresentableEndError(KmaError):
    """End images outside the modelled slice rotations are not silently
    approximated."""


def _exact_complex(value) -> tuple[Fraction, Fraction]:
    if isinstance(value, tuple):
        return Fraction(value[0]), Fraction(value[1])
    if isinstance(value, complex):
        return Fraction(value.real), Fraction(value.imag)
    if isinstance(value, str):
        return Fraction(value), Fraction(0)
    return Fraction(value), Fraction(0)


@dataclass(frozen=True)
class U2Element:
    """Finitely supported map from hinge indices to nonzero complex
    directions; the group law is pointwise addition."""

    hinges: tuple[tuple[int, tuple[Fraction, Fraction]], ...] = ()

    @classmethod
    def from_dict(cls, mapping) -> "U2Element":
        items = []
        for k, v in mapping.items():
            re, im = _exact_complex(v)
            if re != 0 or im != 0:
                items.append((int(k), (re, im)))
        return cls(tuple(sorted(items)))

    def value(self, k: int) -> tuple[Fraction, Fraction]:
        for idx, v in self.hinges:
            if idx == k:
                return v
        return (Fraction(0), Fraction(0))

    @property
    def is_zero(self) -> bool:
        return not self.hinges

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(idx for idx, _ in self.hinges)

    def min_hinge(self) -> int:
        if self.is_zero:
            raise InputError("the zero element has no hinges")
        return self.hinges[0][0]

    def max_hinge(self) -> int:
        if self.is_zero:
            raise InputError("the zero element has no hinges")
        return self.hinges[-1][0]

    def __add__(self, other: "U2Element") -> "U2Element":
        total = {k: v for k, v in self.hinges}
        for k, (re, im) in other.hinges:
            r0, i0 = total.get(k, (Fraction(0), Fraction(0)))
            total[k] = (r0 + re, i0 + im)
        items = [(k, v) for k, v in total.items() if v != (0, 0)]
        return U2Element(tuple(sorted(items)))

    def __neg__(self) -> "U2Element":
        return U2Element(tuple((k, (-re, -im)) for k, (re, im) in self.hinges))

    def __sub__(self, other: "U2Element") -> "U2Element":
        return self + (-other)

    def restrict_below(self, n: int) -> "U2Element":
        return U2Element(tuple((k, v) for k, v in self.hinges if k < n))

    def to_json(self) -> list[dict]:
        return [
            {"k": k, "re": float(re), "im": float(im)} for k, (re, im) in self.hinges
        ]


def u2_compose(u: U2Element, v: U2Element) -> U2Element:
    """Group law: pointwise addition of hinge directions."""
    return u + v


def translate_u2(m: int, u: U2Element) -> U2Element:
    """Conjugation by the m-th even translation shifts every hinge by 2m."""
    return U2Element(tuple((k + 2 * m, v) for k, v in u.hinges))


def mirror_to_u1(u: U2Element) -> U2Element:
    """Conjugating by the first reflection carries the one-sided deformation
    group to the opposite side; on hinge indices this is n -> 1 - n."""
    return U2Element(tuple(sorted((1 - k, v) for k, v in u.hinges)))


@dataclass(frozen=True)
class TreeChamber:
    """Chamber of the horoball subtree in normal form: apartment label n and
    a deformation with all hinges strictly below n."""

    sign: int
    n: int
    f: U2Element = field(default=U2Element())

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise InputError("chamber sign must be +1 or -1")
        object.__setattr__(self, "f", self.f.restrict_below(self.n))

    def to_json(self) -> dict:
        return {"sign": self.sign, "n": self.n, "hinges": self.f.to_json()}

    @classmethod
    def from_json(cls, data) -> "TreeChamber":
        u = U2Element.from_dict({h["k"]: (h.get("re", 0), h.get("im", 0)) for h in data.get("hinges", [])})
        return cls(int(data["sign"]), int(data["n"]), u)


def act_on_chamber(u: U2Element, c: TreeChamber) -> TreeChamber:
    """Deformation action; fixes the chamber exactly when every hinge of u
    sits at or above the chamber label."""
    return TreeChamber(c.sign, c.n, c.f + u)


def translate_chamber(m: int, c: TreeChamber) -> TreeChamber:
    return TreeChamber(c.sign, c.n + 2 * m, translate_u2(m, c.f))


def gallery_distance(c1: TreeChamber, c2: TreeChamber) -> int:
    """Tree distance: descend to the branch label and re-ascend.

    The branch label is min(n1, n2, lowest differing hinge); clamping by the
    chamber labels keeps the metric axioms when one chamber already lies on
    the other's apartment.
    """
    if c1.sign != c2.sign:
        raise SignMismatchError("chambers live in opposite halves")
    diff = c1.f - c2.f
    branch = min(c1.n, c2.n)
    if not diff.is_zero:
        branch = min(branch, diff.min_hinge())
    return (c1.n - branch) + (c2.n - branch)


@dataclass(frozen=True)
class RayRef:
    """L(n) = chambers with labels <= n; R(n) = labels >= n."""

    sign: int
    side: str
    n: int

    def __post_init__(self):
        if self.side not in ("L", "R"):
            raise InputError("ray side must be 'L' or 'R'")
        if self.sign not in (1, -1):
            raise InputError("ray sign must be +1 or -1")


def apply_weyl_to_ray(j: int, ray: RayRef) -> RayRef:
    """Generator action: w1 sends L(n) to R(-1-n), w2 sends L(n) to R(1-n),
    and symmetrically on R-rays."""
    if j == 1:
        image = -1 - ray.n
    elif j == 2:
        image = 1 - ray.n
    else:
        raise InputError("ray generator must be 1 or 2")
    side = "R" if ray.side == "L" else "L"
    return RayRef(ray.sign, side, image)


def translate_ray(m: int, ray: RayRef) -> RayRef:
    return RayRef(ray.sign, ray.side, ray.n + 2 * m)


@dataclass(frozen=True)
class End:
    """End of the tree: the two rigid fundamental ends (branch 1 up, branch
    2 down) and the deformed images of the branch-1 end."""

    sign: int
    branch: int | None = None
    deformation: U2Element | None = None

    @classmethod
    def fundamental(cls, branch: int, sign: int) -> "End":
        if branch not in (1, 2):
            raise InputError("fundamental ends are labelled 1 or 2")
        return cls(sign=sign, branch=branch, deformation=None)

    @classmethod
    def deformed(cls, u: U2Element, sign: int) -> "End":
        if u.is_zero:
            return cls.fundamental(1, sign)
        return cls(sign=sign, branch=None, deformation=u)

    @property
    def is_fundamental(self) -> bool:
        return self.deformation is None


@dataclass(frozen=True)
class ApartmentModel:
    """A line of the model: either the u-deformed fundamental apartment or
    the two-branch line through a branch vertex."""

    ends: tuple[End, End]
    fundamental: bool
    fixed_ray: RayRef | None
    hinges: tuple[tuple[int, tuple[Fraction, Fraction]], ...]  # descending


def deformed_apartment(u: U2Element, sign: int = 1) -> ApartmentModel:
    """Deformed apartment u . A: the fixed left ray up to the top hinge, the
    ordered hinge list, and its two ends."""
    ends = (End.fundamental(2, sign), End.deformed(u, sign))
    if u.is_zero:
        return ApartmentModel(ends=ends, fundamental=True, fixed_ray=None, hinges=())
    top = u.max_hinge()
    hinges = tuple(sorted(u.hinges, reverse=True))
    return ApartmentModel(
        ends=ends,
        fundamental=False,
        fixed_ray=RayRef(sign, "L", top),
        hinges=hinges,
    )


def line_through_chambers(c1: TreeChamber, c2: TreeChamber) -> list[TreeChamber]:
    """The geodesic chamber path from c1 to c2 (through the branch label);
    both endpoints lie on the constructed line."""
    if c1.sign != c2.sign:
        raise SignMismatchError("chambers live in opposite halves")
    diff = c1.f - c2.f
    branch = min(c1.n, c2.n)
    if not diff.is_zero:
        branch = min(branch, diff.min_hinge())
    down = [TreeChamber(c1.sign, m, c1.f) for m in range(c1.n, branch - 1, -1)]
    up = [TreeChamber(c2.sign, m, c2.f) for m in range(branch + 1, c2.n + 1)]
    return down + up


def line_through_ends(e1: End, e2: End) -> ApartmentModel:
    """The unique model line with the two given distinct ends."""
    if e1.sign != e2.sign:
        raise SignMismatchError("ends live in opposite halves")
    if e1 == e2:
        raise InputError("two distinct ends are required")
    down = End.fundamental(2, e1.sign)
    if e1 == down or e2 == down:
        other = e2 if e1 == down else e1
        u = other.deformation if other.deformation is not None else U2Element()
        return deformed_apartment(u, e1.sign)
    u = e1.deformation if e1.deformation is not None else U2Element()
    v = e2.deformation if e2.deformation is not None else U2Element()
    diff = u - v
    branch = diff.min_hinge()
    hinges = tuple(sorted(diff.hinges, reverse=True))
    return ApartmentModel(
        ends=(e1, e2), fundamental=False, fixed_ray=RayRef(e1.sign, "L", branch), hinges=hinges
    )


class Halo:
    """Embedding of tree ends onto the asymptote rays of the lightcone, with
    the slice rotations acting on ray directions."""

    def __init__(self, geom: LorentzGeometry, flow: Su2Flow | None = None):
        if geom.rank != 2:
            raise InputError("the halo model is a rank-2 construction")
        self.geom = geom
        self.flow = flow if flow is not None else Su2Flow(geom.rs)
        self._rays = geom.null_rays_rank2()

    def fundamental_ray(self, branch: int, sign: int) -> NullRay:
        return self._rays[f"x{branch}{'+' if sign > 0 else '-'}"]

    def embed_end(self, end: End, word=()) -> NullRay:
        """Lightcone ray of a fundamental end, optionally moved by a Weyl
        word; deformed ends would need group elements outside the modelled
        slice rotations and are reported, not approximated."""
        if not end.is_fundamental:
            raise UnrepresentableEndError(
                "images of deformed ends are outside the modelled rotations"
            )
        ray = self.fundamental_ray(end.branch, end.sign)
        if word:
            moved = self.geom.weyl.act_on_cartan(tuple(word), ray.direction.coords)
            return NullRay(canonical_ray_direction(moved), ray.forward)
        return ray

    def rotate_ray(self, i: int, s: float, t: float, ray: NullRay) -> SliceVector:
        """Slice rotation applied to the ray direction; the image stays null
        for the slice form because the rotation is an isometry."""
        v = SliceVector.from_cartan(ray.direction.as_floats(), i)
        return self.flow.exp_rotation(i, s, t, v)

    def stabilizes_halo(self, generators) -> bool:
        """Whether a word in torus phases ("t", j, b) and Weyl letters
        ("w", j) fixes all four asymptote rays; torus phases act trivially
        on the Cartan, even Weyl words fix the rays, odd ones swap them."""
        letters = []
        for gen in generators:
            if gen[0] == "w":
                letters.append(int(gen[1]))
            elif gen[0] != "t":
                raise InputError(f"unknown halo generator {gen!r}")
        for ray in self._rays.values():
            coords = ray.direction.as_floats()
            moved = self.geom.weyl.act_on_cartan(tuple(letters), coords)
            image = canonical_ray_direction(moved)
            if any(abs(a - b) > 1e-9 for a, b in zip(image.coords, ray.direction.coords)):
                return False
        return True
