"""Simplicial tessellation of the hyperboloid sheets, hyperbolic barycentric
coordinates, and the equivariant chamber-complex embedding for ranks 2 and 3.

The simplicial bookkeeping (SimplexRef, coset canonicalization, the sign
involution) works at any rank; the metric geometry is restricted to ranks 2
(geodesic arcs, length ratios) and 3 (geodesic triangles, angle-defect area
ratios) where hyperbolic volumes have closed forms.

Chamber vertices carry exact rational directions; floats enter only through
the scaling onto a sheet.  The negative-sign half of the complex is the
pointwise negation of the positive half, never re-tessellated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError, KmaError
from .linalg import kernel_basis
from .lorentz import Basis, CartanVector, LorentzGeometry

_LAMBDA_SUM_TOL = 1e-12
_NEWTON_TOL = 1e-12        # aimed for, leaving headroom under the contract
_NEWTON_ACCEPT = 1e-10     # contractual residual bound
_NEWTON_MAX_ITER = 100
_DIFF_STEP = 1e-6


class UnsupportedRankError(KmaError):
    pass


class NotOnSimplexError(KmaError):
    pass


class SolverDivergedError(KmaError):
    def __init__(self, residual: float):
        self.residual = residual
        super().__init__(f"barycentric inversion stalled at residual {residual:.3e}")


@dataclass(frozen=True)
class ChamberVertex:
    """Chamber corner: exact rational direction plus the float scale that
    puts it on the sheet; ideal corners are null directions with no scale."""

    direction: tuple[Fraction, ...]
    ideal: bool
    scale: float

    @property
    def coords(self) -> tuple[float, ...]:
        if self.ideal:
            return tuple(float(c) for c in self.direction)
        return tuple(self.scale * float(c) for c in self.direction)

    def as_cartan(self) -> CartanVector:
        return CartanVector(self.coords, Basis.COMPACT_Z)


@dataclass(frozen=True)
class SimplexRef:
    """Face `face` (a proper subset of wall indices; empty = top cell) of the
    `word`-translated chamber on the `sign` half of the complex."""

    sign: int
    word: tuple[int, ...]
    face: frozenset[int]


@dataclass(frozen=True)
class ChamberRegion:
    sign: int
    word: tuple[int, ...]
    r: float
    vertices: tuple[ChamberVertex, ...]

    def vertex_for_missing_index(self, i: int) -> ChamberVertex:
        """Vertex lying on every wall except wall i (1-based)."""
        return self.vertices[i - 1]


@dataclass(frozen=True)
class BarycentricPoint:
    simplex: SimplexRef
    lam: tuple[float, ...]


def _point(coords=None, null_dir=None):
    """Uniform finite-or-ideal point for the metric helpers."""
    return (coords, null_dir)


class BuildingEmbedding:
    """Tessellation and barycentric embedding machinery over one geometry."""

    def __init__(self, geom: LorentzGeometry):
        self.geom = geom
        self.weyl = geom.weyl
        self.rs = geom.rs
        self._vertex_cache: dict[int, tuple[tuple[Fraction, ...], bool, Fraction]] = {}

    @property
    def rank(self) -> int:
        return self.rs.rank

    # ---------------- simplicial bookkeeping (any rank) ----------------

    def _check_face(self, face) -> frozenset[int]:
        face = frozenset(face)
        if not all(1 <= j <= self.rank for j in face):
            raise InputError("face indices out of range")
        if len(face) == self.rank:
            raise InputError("face must be a proper subset of the wall indices")
        return face

    def coset_representative(self, word, face) -> tuple[int, ...]:
        """Minimal-length representative of (reduce(word)) W_face."""
        face = self._check_face(face)
        rep = self.weyl.reduce(word)
        changed = True
        while changed:
            changed = False
            for j in sorted(face):
                cand = self.weyl.reduce(rep + (j,))
                if len(cand) < len(rep):
                    rep = cand
                    changed = True
        return rep

    def simplex_ref(self, sign: int, word, face=()) -> SimplexRef:
        if sign not in (1, -1):
            raise InputError("sign must be +1 or -1")
        face = self._check_face(face)
        return SimplexRef(sign, self.coset_representative(word, face), face)

    def same_simplex(self, a: SimplexRef, b: SimplexRef) -> bool:
        return self.simplex_ref(a.sign, a.word, a.face) == self.simplex_ref(
            b.sign, b.word, b.face
        )

    def involution_image(self, sr: SimplexRef) -> SimplexRef:
        """The chamber-complex involution: swap the two halves."""
        return SimplexRef(-sr.sign, sr.word, sr.face)

    # ---------------- chamber geometry (ranks 2 and 3) ----------------

    def _require_geometry_rank(self):
        if self.rank not in (2, 3):
            raise UnsupportedRankError(
                "metric embedding is implemented for ranks 2 and 3 only"
            )

    def _fundamental_vertex(self, i: int) -> tuple[tuple[Fraction, ...], bool, Fraction]:
        """Exact direction of the fundamental vertex on all walls but wall i,
        its ideal flag, and its exact norm."""
        if i in self._vertex_cache:
            return self._vertex_cache[i]
        rows = [
            [Fraction(self.rs.gcm.entries[j - 1][k]) for k in range(self.rank)]
            for j in range(1, self.rank + 1)
            if j != i
        ]
        kern = kernel_basis(rows)
        if len(kern) != 1:
            raise KmaError(f"walls {set(range(1, self.rank + 1)) - {i}} do not meet in a line")
        v = kern[0]
        denom = math.lcm(*(c.denominator for c in v))
        ints = [int(c * denom) for c in v]
        g = math.gcd(*(abs(k) for k in ints))
        direction = tuple(Fraction(k // g) for k in ints)
        vec = CartanVector(direction, Basis.COMPACT_Z)
        nrm = self.geom.norm(vec)
        if nrm > 0:
            raise UnsupportedRankError("chamber vertex direction is spacelike")
        if self.geom.form(vec, self.geom.reference_point()) > 0:
            direction = tuple(-c for c in direction)
        out = (direction, nrm == 0, nrm)
        self._vertex_cache[i] = out
        return out

    def chamber_region(self, sign: int, r: float, word=()) -> ChamberRegion:
        """Region word * C on the sheet of norm r, negated when sign = -1."""
        self._require_geometry_rank()
        if sign not in (1, -1):
            raise InputError("sign must be +1 or -1")
        if r >= 0:
            raise InputError("sheet radius must be negative")
        word = self.weyl.reduce(word)
        vertices = []
        for i in range(1, self.rank + 1):
            direction, ideal, nrm = self._fundamental_vertex(i)
            moved = self.weyl.act_on_cartan(word, direction)
            if sign < 0:
                moved = tuple(-c for c in moved)
            scale = 0.0 if ideal else math.sqrt(r / float(nrm))
            vertices.append(ChamberVertex(tuple(moved), ideal, scale))
        return ChamberRegion(sign, word, r, tuple(vertices))

    def fundamental_chamber_region(self, sign: int, r: float) -> ChamberRegion:
        return self.chamber_region(sign, r, ())

    def reduced_words_up_to(self, max_len: int) -> list[tuple[int, ...]]:
        """All canonical reduced words of length <= max_len."""
        if max_len < 0:
            raise InputError("word length cap must be nonnegative")
        seen = {()}
        frontier = [()]
        for _ in range(max_len):
            nxt = []
            for w in frontier:
                for j in range(1, self.rank + 1):
                    cand = self.weyl.reduce(w + (j,))
                    if len(cand) == len(w) + 1 and cand not in seen:
                        seen.add(cand)
                        nxt.append(cand)
            frontier = nxt
        return sorted(seen, key=lambda w: (len(w), w))

    def tessellate(self, sign: int, r: float, max_word_len: int) -> list[ChamberRegion]:
        """Chamber regions for every reduced word of length <= max_word_len
        (2*n+1 arcs in rank 2, the Coxeter-complex ball in rank 3)."""
        return [
            self.chamber_region(sign, r, w) for w in self.reduced_words_up_to(max_word_len)
        ]

    # ---------------- metric helpers ----------------

    def _f(self, u, v) -> float:
        g = self.rs.grams.compact_gram
        n = self.rank
        return sum(u[i] * v[j] * float(g[i][j]) for i in range(n) for j in range(n))

    def _tangent(self, at, other, r: float):
        """Tangent direction at the sheet point `at` toward a finite sheet
        point or an ideal null direction."""
        coords, null_dir = other
        if null_dir is not None:
            c = r / self._f(null_dir, at)
            return tuple(c * n - a for n, a in zip(null_dir, at))
        c = self._f(at, coords) / r
        return tuple(b - c * a for a, b in zip(at, coords))

    def _angle_at(self, at, p1, p2, r: float) -> float:
        u = self._tangent(at, p1, r)
        v = self._tangent(at, p2, r)
        nu, nv = self._f(u, u), self._f(v, v)
        if nu <= 0 or nv <= 0:
            raise KmaError("degenerate tangent in angle computation")
        c = self._f(u, v) / math.sqrt(nu * nv)
        return math.acos(max(-1.0, min(1.0, c)))

    def triangle_angles(self, points, r: float) -> tuple[float, ...]:
        """Interior angles of a geodesic triangle; 0 at ideal corners."""
        out = []
        for k, p in enumerate(points):
            coords, _ = p
            if coords is None:
                out.append(0.0)
            else:
                others = [points[(k + 1) % 3], points[(k + 2) % 3]]
                out.append(self._angle_at(coords, others[0], others[1], r))
        return tuple(out)

    def triangle_area(self, points, r: float) -> float:
        """Angle-defect area (curvature normalized out of the ratios)."""
        return math.pi - sum(self.triangle_angles(points, r))

    @staticmethod
    def _vertex_point(vertex: ChamberVertex):
        if vertex.ideal:
            return _point(null_dir=vertex.coords)
        return _point(coords=vertex.coords)

    # ---------------- barycentric coordinates ----------------

    def _face_vertex_indices(self, face) -> list[int]:
        return [i for i in range(1, self.rank + 1) if i not in face]

    def _top_lambda(self, region: ChamberRegion, coords) -> tuple[float, ...]:
        """Volume-ratio coordinates of a sheet point in the top cell."""
        pts = [self._vertex_point(v) for v in region.vertices]
        p = _point(coords=coords)
        if self.rank == 2:
            if any(v.ideal for v in region.vertices):
                raise KmaError("rank-2 arcs of the implemented matrices have no ideal ends")
            r = region.r
            a, b = region.vertices[0].coords, region.vertices[1].coords
            total = self.geom.hyperbolic_distance(
                CartanVector(a), CartanVector(b), r
            )
            d0 = self.geom.hyperbolic_distance(CartanVector(coords), CartanVector(b), r)
            d1 = self.geom.hyperbolic_distance(CartanVector(a), CartanVector(coords), r)
            return (d0 / total, d1 / total)
        total = self.triangle_area(pts, region.r)
        lams = []
        for k in range(3):
            sub = list(pts)
            sub[k] = p
            lams.append(self.triangle_area(sub, region.r) / total)
        return tuple(lams)

    def evaluate_barycentric(self, sr: SimplexRef, point: CartanVector) -> BarycentricPoint:
        """Normalized hyperbolic barycentric coordinates of a point lying on
        the given simplex (volume ratios: lengths in rank 2, angle-defect
        areas in rank 3)."""
        self._require_geometry_rank()
        sr = self.simplex_ref(sr.sign, sr.word, sr.face)
        r = float(self.geom.norm(point))
        if r >= 0:
            raise NotOnSimplexError("point is not timelike")
        region = self.chamber_region(sr.sign, r, sr.word)
        coords = point.as_floats()
        scale = max(1.0, max(abs(c) for c in coords))
        try:
            lam_top = self._top_lambda(region, coords)
        except KmaError as exc:
            raise NotOnSimplexError(f"point is not on the simplex sheet: {exc}") from exc
        # Sub-simplices degenerate on faces, where the angle-defect area it
        # computed for them is only sqrt(eps)-accurate; the membership
        # tolerance must sit above that noise floor.
        tol = 1e-6 * scale
        if any(l < -tol for l in lam_top) or abs(sum(lam_top) - 1.0) > tol:
            raise NotOnSimplexError(
                f"volume coordinates {lam_top} do not describe an interior point"
            )
        keep = self._face_vertex_indices(sr.face)
        for i in range(1, self.rank + 1):
            if i not in keep and lam_top[i - 1] > tol:
                raise NotOnSimplexError(f"point is not on face {set(sr.face)}")
        lam = [max(0.0, lam_top[i - 1]) for i in keep]
        s = sum(lam)
        return BarycentricPoint(sr, tuple(l / s for l in lam))

    # ---------------- the embedding ----------------

    def embed_point(self, bp: BarycentricPoint, r: float):
        """Sheet point (or ideal vertex) with the prescribed barycentric
        coordinates on the sheet of norm r; inverse of evaluate_barycentric
        on its simplex.

        Returns a CartanVector, or the ChamberVertex itself when the
        coordinates put the point exactly on an ideal vertex.
        """
        self._require_geometry_rank()
        if r >= 0:
            raise InputError("sheet radius must be negative")
        sr = self.simplex_ref(bp.simplex.sign, bp.simplex.word, bp.simplex.face)
        lam = bp.lam
        keep = self._face_vertex_indices(sr.face)
        if len(lam) != len(keep):
            raise InputError(
                f"face has {len(keep)} vertices but {len(lam)} coordinates given"
            )
        if any(l < -_LAMBDA_SUM_TOL for l in lam) or abs(sum(lam) - 1.0) > _LAMBDA_SUM_TOL:
            raise InputError("barycentric coordinates must be nonnegative and sum to 1")
        total = sum(lam)
        lam = tuple(max(0.0, l) / total for l in lam)
        return self._embed_in_region(sr, lam, keep, r)

    def _embed_in_region(self, sr: SimplexRef, lam, keep, r: float):
        region = self.chamber_region(sr.sign, r, sr.word)
        verts = [region.vertex_for_missing_index(i) for i in keep]
        unit = next((k for k, l in enumerate(lam) if abs(l - 1.0) <= _LAMBDA_SUM_TOL), None)
        if unit is not None:
            v = verts[unit]
            return v if v.ideal else v.as_cartan()
        # Solve in the fundamental chamber, where the solver is well
        # conditioned, and extend equivariantly: translate by the exact Weyl
        # matrix and negate for the opposite half.
        fund = self.chamber_region(1, r, ())
        fund_verts = [fund.vertex_for_missing_index(i) for i in keep]
        if self.rank == 2:
            p = self._embed_rank2(fund, fund_verts, lam)
        else:
            p = self._embed_rank3(fund, fund_verts, lam, keep)
        coords = self.weyl.act_on_cartan(sr.word, p.coords)
        if sr.sign < 0:
            coords = tuple(-c for c in coords)
        return CartanVector(coords)

    def _embed_rank2(self, region: ChamberRegion, verts, lam) -> CartanVector:
        if any(v.ideal for v in verts):
            raise KmaError("rank-2 arcs of the implemented matrices have no ideal ends")
        a, b = verts[0].coords, verts[1].coords
        r = region.r
        d_hat = math.acosh(max(1.0, self._f(a, b) / r))
        tau = lam[1] * d_hat
        s = math.sinh(d_hat)
        ca = math.sinh(d_hat - tau) / s
        cb = math.sinh(tau) / s
        return CartanVector(tuple(ca * x + cb * y for x, y in zip(a, b)))

    def _project_to_sheet(self, x, r: float):
        n = self._f(x, x)
        if n >= 0:
            raise SolverDivergedError(float("inf"))
        c = math.sqrt(r / n)
        return tuple(c * xi for xi in x)

    def _calibrated_directions(self, verts):
        """Vertex directions with ideal rays rescaled to the magnitude of the
        finite vertices, so that weights near the barycentric values are a
        usable Newton start."""
        finite = [v.coords for v in verts if not v.ideal]
        if finite:
            center = [sum(c[j] for c in finite) / len(finite) for j in range(self.rank)]
        else:
            ref = self.geom.reference_point().coords
            center = [float(c) for c in ref]
        center = list(self._project_to_sheet(center, -1.0))
        if finite:
            target = sum(self._f(c, center) for c in finite) / len(finite)
        else:
            target = -1.0
        dirs = []
        for v in verts:
            if v.ideal:
                c = target / self._f(v.coords, center)
                dirs.append(tuple(c * x for x in v.coords))
            else:
                dirs.append(v.coords)
        return dirs

    def _embed_rank3(self, region: ChamberRegion, verts, lam, keep) -> CartanVector:
        # Zero weights pin the point to a sub-face; solve there.
        if any(l <= 1e-13 for l in lam):
            live = [k for k, l in enumerate(lam) if l > 1e-13]
            sub_lam = [lam[k] for k in live]
            s = sum(sub_lam)
            return self._embed_rank3(
                region,
                [verts[k] for k in live],
                tuple(l / s for l in sub_lam),
                [keep[k] for k in live],
            )
        if len(verts) == 1:
            v = verts[0]
            return v if v.ideal else v.as_cartan()
        dirs = self._calibrated_directions(verts)
        k = len(verts)
        m = k - 1

        def lam_of(theta_free):
            # Softmax weights keep every iterate inside the timelike cone.
            theta = list(theta_free) + [0.0]
            top = max(theta)
            ws = [math.exp(th - top) for th in theta]
            total = sum(ws)
            mu = [w / total for w in ws]
            x = [sum(mu[j] * dirs[j][c] for j in range(k)) for c in range(self.rank)]
            p = self._project_to_sheet(x, region.r)
            lam_top = self._top_lambda(region, p)
            # Normalize over the face's own entries: on an edge the excluded
            # sub-triangle is degenerate and its area is pure noise.
            vals = tuple(lam_top[i - 1] for i in keep)
            s = sum(vals)
            return tuple(v / s for v in vals), p

        theta = [math.log(lam[j] / lam[m]) for j in range(m)]
        current, point = lam_of(theta)
        residual = max(abs(c - t) for c, t in zip(current, lam))
        for _ in range(_NEWTON_MAX_ITER):
            if residual <= _NEWTON_TOL:
                return CartanVector(point)
            jac = []
            for j in range(m):
                bumped = list(theta)
                bumped[j] += _DIFF_STEP
                up, _ = lam_of(bumped)
                bumped[j] -= 2 * _DIFF_STEP
                down, _ = lam_of(bumped)
                jac.append([(u - d) / (2 * _DIFF_STEP) for u, d in zip(up, down)])
            rhs = [lam[i] - current[i] for i in range(m)]
            step = _solve_small([[jac[j][i] for j in range(m)] for i in range(m)], rhs)
            if step is None:
                raise SolverDivergedError(residual)
            scale = 1.0
            for _ in range(40):
                trial = [a + scale * s for a, s in zip(theta, step)]
                cand, cand_point = lam_of(trial)
                cand_res = max(abs(c - t) for c, t in zip(cand, lam))
                if cand_res < residual:
                    theta, current, point, residual = trial, cand, cand_point, cand_res
                    break
                scale *= 0.5
            else:
                break
        if residual <= _NEWTON_ACCEPT:
            return CartanVector(point)
        raise SolverDivergedError(residual)

    # ---------------- test-facing helpers ----------------

    def rank2_interval(self, region: ChamberRegion) -> tuple[float, float]:
        """Rapidity interval of a rank-2 arc on its sheet (sign-normalized)."""
        if self.rank != 2:
            raise UnsupportedRankError("rapidity intervals are a rank-2 notion")
        e_t, e_s = self.geom.frame()
        out = []
        root = math.sqrt(-region.r)
        for v in region.vertices:
            c = v.coords if region.sign > 0 else tuple(-x for x in v.coords)
            out.append(math.asinh(self._f(c, e_s) / root))
        lo, hi = sorted(out)
        return lo, hi

    def _exact_form(self, u, v) -> Fraction:
        g = self.rs.grams.compact_gram
        n = self.rank
        return sum(u[i] * v[j] * g[i][j] for i in range(n) for j in range(n))

    def region_lengths(self, regions) -> list[float]:
        """Hyperbolic arc lengths of rank-2 regions, from the exact rational
        directions (far translates cancel catastrophically in floats)."""
        if self.rank != 2:
            raise UnsupportedRankError("arc lengths are a rank-2 notion")
        out = []
        for reg in regions:
            d1, d2 = (v.direction for v in reg.vertices)
            cross = self._exact_form(d1, d2)
            n1 = self._exact_form(d1, d1)
            n2 = self._exact_form(d2, d2)
            ratio = float(abs(cross)) / math.sqrt(float(abs(n1) * abs(n2)))
            out.append(math.sqrt(-reg.r) * math.acosh(max(1.0, ratio)))
        return out


def _solve_small(a, b):
    """Solve a 1x1 or 2x2 float system; None when singular."""
    n = len(b)
    if n == 1:
        if abs(a[0][0]) < 1e-300:
            return None
        return [b[0] / a[0][0]]
    det = a[0][0] * a[1][1] - a[0][1] * a[1][0]
    if abs(det) < 1e-300:
        return None
    return [
        (b[0] * a[1][1] - b[1] * a[0][1]) / det,
        (b[1] * a[0][0] - b[0] * a[1][0]) / det,
    ]
