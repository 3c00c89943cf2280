"""Lorentzian geometry of the Cartan subalgebra: the split and compact
bilinear forms, causal classification, Tits-cone chamber reduction, wall
lines, hyperboloid sheets with their distance, and the four rank-2
asymptote rays.

"Forward" is anchored once and for all as the timelike component containing
the fundamental chamber (the region where every pairing functional is
nonnegative).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .errors import InputError, KmaError
from .linalg import kernel_basis
from .roots import NotRank2Error
from .weyl import WeylGroup, WeylWord


class BasisMismatchError(KmaError):
    pass


class OutsideClosedConeError(KmaError):
    pass


class NonTerminationError(KmaError):
    pass


class DifferentSheetsError(KmaError):
    pass


class NotOnSheetError(KmaError):
    pass


class Basis(Enum):
    SPLIT_H = "split_h"
    COMPACT_Z = "compact_z"


class CausalClass(Enum):
    TIMELIKE_FORWARD = "TimelikeForward"
    TIMELIKE_BACKWARD = "TimelikeBackward"
    NULL = "Null"
    SPACELIKE = "Spacelike"
    ZERO = "Zero"


@dataclass(frozen=True)
class CartanVector:
    """Coordinate vector over {h_j} (split) or {z_j} (compact); the basis
    tag decides which Gram matrix applies."""

    coords: tuple
    basis: Basis = Basis.COMPACT_Z

    def __neg__(self):
        return CartanVector(tuple(-c for c in self.coords), self.basis)

    @property
    def is_exact(self) -> bool:
        return all(isinstance(c, (int, Fraction)) for c in self.coords)

    def as_floats(self) -> tuple[float, ...]:
        return tuple(float(c) for c in self.coords)


@dataclass(frozen=True)
class NullRay:
    """Forward- or backward-tagged null direction, scaled so the first
    nonzero coordinate is +-1."""

    direction: CartanVector
    forward: bool


def _is_exact(coords) -> bool:
    return all(isinstance(c, (int, Fraction)) for c in coords)


def canonical_ray_direction(coords, basis=Basis.COMPACT_Z) -> CartanVector:
    """Positively rescale so the first nonzero coordinate becomes +-1."""
    lead = next((c for c in coords if c != 0), None)
    if lead is None:
        raise InputError("zero vector spans no ray")
    scale = abs(lead) if _is_exact(coords) else abs(float(lead))
    return CartanVector(tuple(c / scale for c in coords), basis)


class LorentzGeometry:
    """Forms and causal structure for one Weyl group's Cartan subalgebra."""

    DESCENT_CAP = 10_000

    def __init__(self, weyl: WeylGroup):
        self.weyl = weyl
        self.rs = weyl.rs
        self._ref: CartanVector | None = None

    @property
    def rank(self) -> int:
        return self.rs.rank

    def _gram(self, basis: Basis):
        g = self.rs.grams
        return g.coroot_gram if basis is Basis.SPLIT_H else g.compact_gram

    def form(self, x: CartanVector, y: CartanVector):
        if x.basis is not y.basis:
            raise BasisMismatchError(f"{x.basis} vs {y.basis}")
        if len(x.coords) != self.rank or len(y.coords) != self.rank:
            raise InputError("coordinate length does not match the rank")
        g = self._gram(x.basis)
        return sum(
            x.coords[i] * y.coords[j] * g[i][j]
            for i in range(self.rank)
            for j in range(self.rank)
        )

    def norm(self, x: CartanVector):
        return self.form(x, x)

    def a_bar(self, i: int, x: CartanVector):
        return self.rs.cartan_pairing(i, x.coords)

    def reference_point(self, basis: Basis = Basis.COMPACT_Z) -> CartanVector:
        """Exact interior point of the forward fundamental chamber."""
        if self._ref is None or self._ref.basis is not basis:
            self._ref = CartanVector(self.weyl.interior_point(), basis)
        return self._ref

    def is_forward(self, x: CartanVector) -> bool:
        """Same timelike component as the fundamental chamber (valid for
        timelike and nonzero null vectors)."""
        ref = self.reference_point(x.basis)
        return self.form(x, ref) < 0

    def _scale_tolerance(self, x: CartanVector) -> float:
        s = max((abs(float(c)) for c in x.coords), default=0.0)
        return 1e-12 * max(1.0, s * s)

    def classify_vector(self, x: CartanVector) -> CausalClass:
        if all(c == 0 for c in x.coords):
            return CausalClass.ZERO
        n = self.norm(x)
        if x.is_exact:
            zero = n == 0
        else:
            zero = abs(float(n)) <= self._scale_tolerance(x)
        if zero:
            return CausalClass.NULL
        if n > 0:
            return CausalClass.SPACELIKE
        return (
            CausalClass.TIMELIKE_FORWARD if self.is_forward(x) else CausalClass.TIMELIKE_BACKWARD
        )

    def act(self, word: WeylWord, x: CartanVector) -> CartanVector:
        return CartanVector(self.weyl.act_on_cartan(word, x.coords), x.basis)

    def tits_cone_reduce(self, x: CartanVector) -> tuple[WeylWord, CartanVector]:
        """Word w and chamber point x0 with w . x0 = x.

        Descends by reflecting at any negative pairing functional; exact on
        rational input.  For the backward cone the fundamental domain is the
        negated forward chamber.
        """
        cls = self.classify_vector(x)
        if cls is CausalClass.SPACELIKE:
            raise OutsideClosedConeError("spacelike vector is outside the closed cone")
        if cls is CausalClass.ZERO:
            return (), x
        if not self.is_forward(x):
            word, x0 = self.tits_cone_reduce(-x)
            return word, -x0
        exact = x.is_exact
        tol = 0 if exact else self._scale_tolerance(x)
        coords = x.coords
        letters: list[int] = []
        for _ in range(self.DESCENT_CAP):
            i = next(
                (
                    i
                    for i in range(1, self.rank + 1)
                    if self.rs.cartan_pairing(i, coords) < -tol
                ),
                None,
            )
            if i is None:
                return tuple(letters), CartanVector(coords, x.basis)
            coords = self.weyl.reflect_cartan(i, coords)
            letters.append(i)
        raise NonTerminationError(
            f"no chamber reached after {self.DESCENT_CAP} reflections"
        )

    def wall(self, i: int) -> tuple[CartanVector, ...]:
        """Exact spanning vectors of the fixed line/hyperplane of w_i,
        canonicalized to primitive integer direction in rank 2."""
        if not 1 <= i <= self.rank:
            raise InputError(f"wall index {i} out of range")
        row = [Fraction(self.rs.gcm.entries[i - 1][j]) for j in range(self.rank)]
        basis = kernel_basis([row])
        out = []
        for v in basis:
            denom = math.lcm(*(c.denominator for c in v))
            ints = [int(c * denom) for c in v]
            g = math.gcd(*(abs(k) for k in ints))
            ints = [k // g for k in ints]
            lead = next(k for k in ints if k != 0)
            if lead < 0:
                ints = [-k for k in ints]
            out.append(CartanVector(tuple(Fraction(k) for k in ints), Basis.COMPACT_Z))
        return tuple(out)

    def sheet_point(self, x: CartanVector, r: float) -> CartanVector:
        """Positively rescale a timelike vector onto the sheet of norm r < 0."""
        if r >= 0:
            raise InputError("sheet radius must be negative")
        n = float(self.norm(x))
        if n >= 0:
            raise NotOnSheetError("only timelike vectors scale onto a sheet")
        scale = math.sqrt(r / n)
        return CartanVector(tuple(float(c) * scale for c in x.coords), x.basis)

    def hyperbolic_distance(self, x: CartanVector, y: CartanVector, r: float) -> float:
        """Geodesic distance sqrt(|r|) * arccosh(form(x, y)/r) on the sheet."""
        if r >= 0:
            raise InputError("sheet radius must be negative")
        if x.coords == y.coords:
            return 0.0
        for v in (x, y):
            # Relative to the summed form terms: a float quadratic form of
            # coordinates of size s carries cancellation noise ~ s^2 * eps.
            s = max((abs(float(c)) for c in v.coords), default=0.0)
            tol = 1e-12 * max(1.0, abs(r), s * s)
            if abs(float(self.norm(v)) - r) > tol:
                raise NotOnSheetError("vector is not on the requested sheet")
        cross = float(self.form(x, y))
        if cross > 0:
            raise DifferentSheetsError("vectors lie on opposite sheets")
        ratio = max(cross / r, 1.0)
        return math.sqrt(-r) * math.acosh(ratio)

    def frame(self) -> tuple[tuple[float, ...], ...]:
        """Orthonormal float frame (e_T, e_S1, ...): e_T timelike of norm -1
        in the forward cone, the rest spacelike of norm +1."""
        ref = self.reference_point()
        e_t = [float(c) for c in ref.coords]
        nt = float(self.norm(ref))
        e_t = [c / math.sqrt(-nt) for c in e_t]
        frame = [tuple(e_t)]

        def f(u, v):
            g = self.rs.grams.compact_gram
            return sum(
                u[i] * v[j] * float(g[i][j]) for i in range(self.rank) for j in range(self.rank)
            )

        for k in range(self.rank):
            cand = [1.0 if j == k else 0.0 for j in range(self.rank)]
            for prev in frame:
                sign = -1.0 if prev is frame[0] else 1.0
                c = sign * f(cand, prev)
                cand = [a - c * b for a, b in zip(cand, prev)]
            nn = f(cand, cand)
            if nn > 1e-9:
                frame.append(tuple(a / math.sqrt(nn) for a in cand))
            if len(frame) == self.rank:
                break
        return tuple(frame)

    def null_rays_rank2(self) -> dict[str, NullRay]:
        """The four asymptote rays of the rank-2 lightcone, keyed "x1+",
        "x2+", "x1-", "x2-".

        The index reflects the pairing signs (x1: Abar_1 < 0 < Abar_2,
        x2: the reverse), the sign tag the causal component, and the
        backward rays are the negated forward ones.
        """
        if self.rank != 2:
            raise NotRank2Error("asymptote rays are a rank-2 notion")
        d1, d2 = self.rs.sym.d
        a12 = self.rs.gcm.entries[0][1]
        # Null slope t = c2/c1 solves d2 t^2 + d1 a12 t + d1 = 0.
        disc = float(d1 * d1 * a12 * a12 - 4 * d1 * d2)
        mid = float(-d1 * a12)
        slopes = [(mid + s * math.sqrt(disc)) / float(2 * d2) for s in (1.0, -1.0)]
        rays = {}
        for t in slopes:
            for sgn in (1.0, -1.0):
                v = (sgn, sgn * t)
                vec = CartanVector(v, Basis.COMPACT_Z)
                s1 = self.a_bar(1, vec)
                forward = self.is_forward(vec)
                branch = 1 if s1 < 0 else 2
                key = f"x{branch}{'+' if forward else '-'}"
                rays[key] = NullRay(canonical_ray_direction(v), forward)
        return rays
