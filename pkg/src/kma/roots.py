"""Roots as integer lattice vectors: reflection action, enumeration of real
roots by reflection closure, real/imaginary classification by height descent,
and the rank-2 branch labels of the non-standard partition.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .errors import InputError, KmaError
from .gcm import GeneralizedCartanMatrix, GramMatrices, Symmetrizer, gram_matrices, symmetrize


class MixedSignError(KmaError):
    """Coefficient vector is neither all-nonnegative nor all-nonpositive."""


class NotRealRootError(KmaError):
    pass


class NotRank2Error(KmaError):
    pass


@dataclass(frozen=True, order=True)
class Root:
    """Integer vector (k_1, ..., k_l) standing for sum k_i alpha_i."""

    coeffs: tuple[int, ...]

    @property
    def height(self) -> int:
        return sum(self.coeffs)

    @property
    def is_positive(self) -> bool:
        return all(k >= 0 for k in self.coeffs) and any(k > 0 for k in self.coeffs)

    @property
    def is_negative(self) -> bool:
        return all(k <= 0 for k in self.coeffs) and any(k < 0 for k in self.coeffs)

    def __neg__(self) -> "Root":
        return Root(tuple(-k for k in self.coeffs))


class RootKind(Enum):
    REAL = "real"
    IMAGINARY = "imaginary"
    NOT_A_ROOT = "not_a_root"


@dataclass(frozen=True)
class RootClass:
    kind: RootKind
    norm: Fraction
    # Word w (letters act right to left) and simple index j with
    # root == act(w, alpha_j); for imaginary roots j is absent and w carries
    # the root into the all-pairings-nonpositive core.
    witness_word: tuple[int, ...] | None = None
    simple_index: int | None = None


@dataclass(frozen=True)
class PhiLabel:
    """Branch i in {1, 2} and integer index n of a real root in rank 2."""

    branch: int
    index: int


def _alternating_word(n: int) -> tuple[int, ...]:
    """Reduced word of the rank-2 element labelled n (empty for n = 0,
    starts with generator 2 for n > 0, with 1 for n < 0)."""
    if n == 0:
        return ()
    first, second = (2, 1) if n > 0 else (1, 2)
    return tuple(first if k % 2 == 0 else second for k in range(abs(n)))


def _cancel_adjacent(word) -> tuple[int, ...]:
    """Delete adjacent equal letters to a fixed point (dihedral reduce)."""
    out: list[int] = []
    for letter in word:
        if out and out[-1] == letter:
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


class RootSystem:
    """Reflection machinery for one generalized Cartan matrix."""

    def __init__(self, gcm: GeneralizedCartanMatrix, sym: Symmetrizer | None = None):
        self.gcm = gcm
        self.sym = sym if sym is not None else symmetrize(gcm)
        self.grams: GramMatrices = gram_matrices(gcm, self.sym)

    @property
    def rank(self) -> int:
        return self.gcm.rank

    def simple_root(self, i: int) -> Root:
        self._check_index(i)
        return Root(tuple(1 if j == i - 1 else 0 for j in range(self.rank)))

    def _check_index(self, i: int):
        if not 1 <= i <= self.rank:
            raise InputError(f"generator index {i} out of range 1..{self.rank}")

    def coroot_pairing(self, root: Root, i: int) -> int:
        """Pairing of the root with the i-th coroot: sum_j k_j a_ji."""
        a = self.gcm.entries
        return sum(k * a[j][i - 1] for j, k in enumerate(root.coeffs))

    def cartan_pairing(self, i: int, coords):
        """Real pairing functional of alpha_i on Cartan coordinates:
        sum_j c_j a_ij (row contraction)."""
        self._check_index(i)
        a = self.gcm.entries
        return sum(c * a[i - 1][j] for j, c in enumerate(coords))

    def reflect_root(self, i: int, root: Root) -> Root:
        self._check_index(i)
        c = self.coroot_pairing(root, i)
        coeffs = list(root.coeffs)
        coeffs[i - 1] -= c
        return Root(tuple(coeffs))

    def norm(self, root: Root) -> Fraction:
        b = self.grams.root_gram
        k = root.coeffs
        return sum(k[i] * k[j] * b[i][j] for i in range(self.rank) for j in range(self.rank))

    def act_word_on_root(self, word, root: Root) -> Root:
        """Apply the group element w_{i1} ... w_{ik}: rightmost letter first."""
        for i in reversed(word):
            root = self.reflect_root(i, root)
        return root

    def real_roots_up_to_height(self, height_cap: int) -> list[Root]:
        """All real roots with |height| <= cap, by breadth-first reflection
        closure from the simple roots.

        Height pruning at the cap is complete: from any positive real root,
        reflecting at an index with positive coroot pairing strictly lowers
        height through positive roots, so every real root of height <= cap
        is reached from a simple root without ever exceeding the cap.
        """
        if height_cap < 1:
            return []
        positives = {self.simple_root(i) for i in range(1, self.rank + 1)}
        frontier = list(positives)
        while frontier:
            nxt = []
            for root in frontier:
                for i in range(1, self.rank + 1):
                    image = self.reflect_root(i, root)
                    if image.is_positive and image.height <= height_cap and image not in positives:
                        positives.add(image)
                        nxt.append(image)
            frontier = nxt
        out = sorted(positives) + sorted(-r for r in positives)
        return sorted(out, key=lambda r: (abs(r.height), r.coeffs))

    def _support_connected(self, coeffs) -> bool:
        support = [i for i, k in enumerate(coeffs) if k != 0]
        if not support:
            return False
        a = self.gcm.entries
        seen = {support[0]}
        stack = [support[0]]
        while stack:
            i = stack.pop()
            for j in support:
                if j not in seen and a[i][j] != 0:
                    seen.add(j)
                    stack.append(j)
        return len(seen) == len(support)

    def classify_root(self, root: Root) -> RootClass:
        """Height descent: real if a simple root is reached, imaginary if the
        descent stalls in the nonpositive-pairing cone with connected support
        and nonpositive norm, otherwise not a root."""
        if not (root.is_positive or root.is_negative):
            raise MixedSignError(f"{root.coeffs} has mixed or zero coefficients")
        norm = self.norm(root)
        if root.is_negative:
            inner = self.classify_root(-root)
            if inner.kind is RootKind.REAL:
                word = _cancel_adjacent(inner.witness_word + (inner.simple_index,))
                return RootClass(RootKind.REAL, norm, word, inner.simple_index)
            return RootClass(inner.kind, norm, inner.witness_word, None)

        current = root
        witness: list[int] = []
        while True:
            coeffs = current.coeffs
            if sum(coeffs) == 1 and all(k in (0, 1) for k in coeffs):
                j = coeffs.index(1) + 1
                return RootClass(RootKind.REAL, norm, tuple(witness), j)
            descender = None
            for i in range(1, self.rank + 1):
                if self.coroot_pairing(current, i) > 0:
                    descender = i
                    break
            if descender is None:
                if self._support_connected(coeffs) and norm <= 0:
                    return RootClass(RootKind.IMAGINARY, norm, tuple(witness), None)
                return RootClass(RootKind.NOT_A_ROOT, norm)
            image = self.reflect_root(descender, current)
            if any(k < 0 for k in image.coeffs):
                return RootClass(RootKind.NOT_A_ROOT, norm)
            witness.append(descender)
            current = image

    # Rank-2 non-standard partition ------------------------------------

    def _require_rank2(self):
        if self.rank != 2:
            raise NotRank2Error("branch labels exist only in rank 2")

    def phi_root(self, branch: int, index: int) -> Root:
        """Real root at integer position `index` on branch 1 or 2."""
        self._require_rank2()
        if branch not in (1, 2):
            raise InputError("branch must be 1 or 2")
        base = branch if index % 2 == 0 else 3 - branch
        return self.act_word_on_root(_alternating_word(index), self.simple_root(base))

    def phi_label(self, root: Root) -> PhiLabel:
        """Invert phi_root; raises unless the input is a real root."""
        self._require_rank2()
        rc = self.classify_root(root)
        if rc.kind is not RootKind.REAL:
            raise NotRealRootError(f"{root.coeffs} is not a real root")
        word = _cancel_adjacent(rc.witness_word)
        if not word:
            label = 0
        else:
            label = len(word) if word[0] == 2 else -len(word)
        branch = rc.simple_index if label % 2 == 0 else 3 - rc.simple_index
        return PhiLabel(branch=branch, index=label)
