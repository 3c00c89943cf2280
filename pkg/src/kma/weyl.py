"""Weyl words, reduced forms, actions on roots and Cartan vectors, and the
infinite-dihedral integer labelling of rank-2 elements.

A word (i1, ..., ik) stands for the product w_{i1} w_{i2} ... w_{ik}; acting
on a vector applies the rightmost letter first.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import InputError, KmaError
from .linalg import solve, to_fraction_matrix
from .roots import Root, RootSystem, _alternating_word, _cancel_adjacent

WeylWord = tuple[int, ...]


class NotRank2Error(KmaError):
    pass


def chamber_action(j: int, n: int) -> int:
    """Action of generator j on the rank-2 chamber label n."""
    if j == 1:
        return -1 - n
    if j == 2:
        return 1 - n
    raise InputError("chamber generator must be 1 or 2")


def rank2_compose(n: int, k: int) -> int:
    """Label of w(n) w(k)."""
    return n + k if n % 2 == 0 else n - k


def rank2_inverse(n: int) -> int:
    """Label of w(n)^{-1}."""
    return -n if n % 2 == 0 else n


def rank2_word(n: int) -> WeylWord:
    """The reduced word of the element labelled n."""
    return _alternating_word(n)


class WeylGroup:
    """Word calculus for the Weyl group of one root system."""

    def __init__(self, rs: RootSystem):
        self.rs = rs
        self._interior: tuple[Fraction, ...] | None = None

    @property
    def rank(self) -> int:
        return self.rs.rank

    def _check_word(self, word):
        for i in word:
            if not 1 <= i <= self.rank:
                raise InputError(f"generator index {i} out of range 1..{self.rank}")

    def act_on_root(self, word, root: Root) -> Root:
        self._check_word(word)
        return self.rs.act_word_on_root(word, root)

    def reflect_cartan(self, i: int, coords):
        """Generator i on Cartan coordinates: c_i <- c_i - sum_j c_j a_ij."""
        c = self.rs.cartan_pairing(i, coords)
        out = list(coords)
        out[i - 1] = out[i - 1] - c
        return tuple(out)

    def act_on_cartan(self, word, coords):
        self._check_word(word)
        for i in reversed(word):
            coords = self.reflect_cartan(i, coords)
        return coords

    def interior_point(self) -> tuple[Fraction, ...]:
        """Exact rational point of the open fundamental chamber with all
        pairing functionals equal to 1 (needs invertible Cartan matrix)."""
        if self._interior is None:
            a = to_fraction_matrix(self.rs.gcm.entries)
            try:
                self._interior = solve(a, [Fraction(1)] * self.rank)
            except ValueError as exc:
                raise InputError("interior point needs an invertible Cartan matrix") from exc
        return self._interior

    def reduce(self, word) -> WeylWord:
        """Canonical reduced form of a word.

        Rank 2 cancels adjacent equal letters; in general the element is
        pinned down exactly by its action on a rational interior chamber
        point and rebuilt by the minimal gallery walk (always descending at
        the smallest wall index), which yields a reduced word.
        """
        self._check_word(word)
        if self.rank == 2:
            return _cancel_adjacent(word)
        p0 = self.interior_point()
        x = self.act_on_cartan(word, p0)
        letters: list[int] = []
        while x != p0:
            i = next(
                (i for i in range(1, self.rank + 1) if self.rs.cartan_pairing(i, x) < 0),
                None,
            )
            if i is None:
                raise KmaError("descent stalled off the chamber: non-GCM input?")
            x = self.reflect_cartan(i, x)
            letters.append(i)
        return tuple(letters)

    def length(self, word) -> int:
        return len(self.reduce(word))

    def equal(self, word_a, word_b) -> bool:
        return self.reduce(word_a) == self.reduce(word_b)

    def rank2_label(self, word) -> int:
        """Integer label of a rank-2 word (0 for the identity)."""
        if self.rank != 2:
            raise NotRank2Error("integer labels exist only in rank 2")
        reduced = self.reduce(word)
        if not reduced:
            return 0
        return len(reduced) if reduced[0] == 2 else -len(reduced)
