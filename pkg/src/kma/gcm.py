"""Generalized Cartan matrices: axioms, type classification, symmetrizer
and the bilinear (Gram) forms on the root and coroot sides.

Everything in this module is exact rational arithmetic; floats never enter.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from .errors import InputError
from .linalg import Mat, determinant, inertia, is_symmetric, to_fraction_matrix


class NotGCMError(InputError):
    """The matrix violates a generalized-Cartan-matrix axiom."""


class NotSymmetrizableError(InputError):
    """No positive diagonal D makes DA symmetric."""


class DecomposableError(InputError):
    """Operation requires an indecomposable matrix."""

    def __init__(self, blocks):
        self.blocks = blocks
        super().__init__(f"matrix is decomposable into blocks {blocks}")


class NotSymmetricError(InputError):
    """Signature computation requires a symmetric matrix."""


class Kind(Enum):
    FINITE = "Finite"
    AFFINE = "Affine"
    HYPERBOLIC_STRICT = "HyperbolicStrict"
    HYPERBOLIC_NONSTRICT = "HyperbolicNonStrict"
    INDEFINITE_OTHER = "IndefiniteOther"
    NOT_SYMMETRIZABLE = "NotSymmetrizable"
    DECOMPOSABLE = "Decomposable"


@dataclass(frozen=True)
class GeneralizedCartanMatrix:
    """Integer matrix with 2s on the diagonal, nonpositive off-diagonal
    entries and a symmetric zero pattern."""

    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.entries)
        if n == 0:
            raise NotGCMError("empty matrix")
        if any(len(row) != n for row in self.entries):
            raise NotGCMError("matrix is not square")
        for i in range(n):
            for j in range(n):
                a = self.entries[i][j]
                if not isinstance(a, int):
                    raise NotGCMError(f"entry ({i + 1},{j + 1}) is not an integer")
                if i == j and a != 2:
                    raise NotGCMError(f"diagonal entry ({i + 1},{i + 1}) must be 2")
                if i != j and a > 0:
                    raise NotGCMError(f"off-diagonal entry ({i + 1},{j + 1}) must be <= 0")
                if i != j and (a == 0) != (self.entries[j][i] == 0):
                    raise NotGCMError(f"zero pattern is not symmetric at ({i + 1},{j + 1})")

    @classmethod
    def parse(cls, text: str) -> "GeneralizedCartanMatrix":
        """Parse the row format `2,-3;-3,2` (rows by `;`, entries by `,`)."""
        try:
            rows = tuple(
                tuple(int(x.strip()) for x in row.split(",")) for row in text.strip().split(";")
            )
        except ValueError as exc:
            raise NotGCMError(f"cannot parse matrix text {text!r}") from exc
        return cls(rows)

    @property
    def rank(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        """Entry a_ij with 1-based indices."""
        i, j = ij
        return self.entries[i - 1][j - 1]

    def to_text(self) -> str:
        return ";".join(",".join(str(x) for x in row) for row in self.entries)

    def blocks(self) -> list[tuple[int, ...]]:
        """Connected components of the index set (1-based), via the
        nonzero off-diagonal pattern."""
        n = self.rank
        seen = [False] * n
        out = []
        for start in range(n):
            if seen[start]:
                continue
            comp, stack = [], [start]
            seen[start] = True
            while stack:
                i = stack.pop()
                comp.append(i)
                for j in range(n):
                    if not seen[j] and i != j and self.entries[i][j] != 0:
                        seen[j] = True
                        stack.append(j)
            out.append(tuple(sorted(k + 1 for k in comp)))
        return out

    @property
    def is_indecomposable(self) -> bool:
        return len(self.blocks()) == 1

    def submatrix(self, indices) -> "GeneralizedCartanMatrix":
        """Principal submatrix on the given 1-based indices."""
        idx = [i - 1 for i in indices]
        return GeneralizedCartanMatrix(
            tuple(tuple(self.entries[i][j] for j in idx) for i in idx)
        )


@dataclass(frozen=True)
class Symmetrizer:
    """Positive diagonal d with (d_i a_ij) symmetric, normalized so the
    longest simple root has squared length 2 (i.e. min d_i = 1)."""

    d: tuple[Fraction, ...]
    root_norms: tuple[Fraction, ...]


@dataclass(frozen=True)
class GramMatrices:
    root_gram: Mat     # (alpha_i, alpha_j) = a_ij / d_j
    coroot_gram: Mat   # (h_i, h_j) fixed as d_i a_ij
    compact_gram: Mat  # (z_i, z_j)_k = coroot_gram / 4


@dataclass(frozen=True)
class TypeClassification:
    kind: Kind
    det_sign: int
    blocks: tuple[tuple[int, ...], ...] = field(default=())

    @property
    def strict(self) -> bool:
        return self.kind is Kind.HYPERBOLIC_STRICT

    @property
    def is_hyperbolic(self) -> bool:
        return self.kind in (Kind.HYPERBOLIC_STRICT, Kind.HYPERBOLIC_NONSTRICT)


def symmetrize(gcm: GeneralizedCartanMatrix) -> Symmetrizer:
    """Solve d_i a_ij = d_j a_ji over the nonzero-pattern graph.

    Unique for indecomposable input once normalized; raises on decomposable
    or non-symmetrizable matrices.
    """
    if not gcm.is_indecomposable:
        raise DecomposableError(gcm.blocks())
    n = gcm.rank
    a = gcm.entries
    d: list[Fraction | None] = [None] * n
    d[0] = Fraction(1)
    stack = [0]
    while stack:
        i = stack.pop()
        for j in range(n):
            if i != j and a[i][j] != 0:
                # d_j = d_i * a_ij / a_ji keeps (i, j) symmetric.
                val = d[i] * Fraction(a[i][j], a[j][i])
                if d[j] is None:
                    d[j] = val
                    stack.append(j)
                elif d[j] != val:
                    raise NotSymmetrizableError("inconsistent cycle in zero pattern")
    scale = min(x for x in d)
    d_norm = tuple(x / scale for x in d)
    norms = tuple(Fraction(2) / x for x in d_norm)
    return Symmetrizer(d=d_norm, root_norms=norms)


def gram_matrices(gcm: GeneralizedCartanMatrix, sym: Symmetrizer | None = None) -> GramMatrices:
    if sym is None:
        sym = symmetrize(gcm)
    n = gcm.rank
    a = gcm.entries
    root = tuple(tuple(Fraction(a[i][j]) / sym.d[j] for j in range(n)) for i in range(n))
    coroot = tuple(tuple(sym.d[i] * a[i][j] for j in range(n)) for i in range(n))
    compact = tuple(tuple(x / 4 for x in row) for row in coroot)
    return GramMatrices(root_gram=root, coroot_gram=coroot, compact_gram=compact)


def signature(matrix) -> tuple[int, int, int]:
    """Exact inertia (n_plus, n_minus, n_zero) of a symmetric rational matrix."""
    m = to_fraction_matrix(matrix)
    if not is_symmetric(m):
        raise NotSymmetricError("signature requires a symmetric matrix")
    return inertia(m)


def _definiteness(gcm: GeneralizedCartanMatrix) -> Kind:
    """Finite/Affine/IndefiniteOther for an indecomposable symmetrizable block."""
    sym = symmetrize(gcm)
    coroot = gram_matrices(gcm, sym).coroot_gram
    n_plus, n_minus, n_zero = inertia(coroot)
    if n_minus == 0 and n_zero == 0:
        return Kind.FINITE
    if n_minus == 0:
        return Kind.AFFINE
    return Kind.INDEFINITE_OTHER


def classify(gcm: GeneralizedCartanMatrix) -> TypeClassification:
    """Type of an indecomposable GCM, tested on the symmetrization DA.

    Decomposable or non-symmetrizable input is reported through the `kind`
    field rather than guessed blockwise.
    """
    det = determinant(to_fraction_matrix(gcm.entries))
    det_sign = (det > 0) - (det < 0)
    blocks = gcm.blocks()
    if len(blocks) > 1:
        return TypeClassification(Kind.DECOMPOSABLE, det_sign, tuple(blocks))
    try:
        own = _definiteness(gcm)
    except NotSymmetrizableError:
        return TypeClassification(Kind.NOT_SYMMETRIZABLE, det_sign)
    if own in (Kind.FINITE, Kind.AFFINE):
        return TypeClassification(own, det_sign)

    # Indefinite: hyperbolic iff every proper indecomposable principal
    # submatrix is finite or affine.  It suffices to inspect the blocks of
    # the corank-1 submatrices: any affine or indefinite proper principal
    # submatrix shows up as a full block of one of them.
    saw_affine = False
    for drop in range(1, gcm.rank + 1):
        keep = [i for i in range(1, gcm.rank + 1) if i != drop]
        if not keep:
            continue
        sub = gcm.submatrix(keep)
        for block in sub.blocks():
            kind = _definiteness(sub.submatrix(block))
            if kind is Kind.INDEFINITE_OTHER:
                return TypeClassification(Kind.INDEFINITE_OTHER, det_sign)
            if kind is Kind.AFFINE:
                saw_affine = True
    kind = Kind.HYPERBOLIC_NONSTRICT if saw_affine else Kind.HYPERBOLIC_STRICT
    return TypeClassification(kind, det_sign)
