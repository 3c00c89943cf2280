from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kma.gcm import (
    DecomposableError,
    GeneralizedCartanMatrix,
    Kind,
    NotGCMError,
    NotSymmetricError,
    classify,
    gram_matrices,
    signature,
    symmetrize,
)

FIB = ((2, -3), (-3, 2))
TRI_23INF = ((2, -2, 0), (-2, 2, -1), (0, -1, 2))
TRI_INF3 = ((2, -2, -2), (-2, 2, -2), (-2, -2, 2))

E10_ROWS = [[2 if i == j else 0 for j in range(10)] for i in range(10)]
for i in range(8):
    E10_ROWS[i][i + 1] = E10_ROWS[i + 1][i] = -1
E10_ROWS[6][9] = E10_ROWS[9][6] = -1
E10 = tuple(tuple(r) for r in E10_ROWS)


def test_axiom_validation():
    with pytest.raises(NotGCMError):
        GeneralizedCartanMatrix(((1, 0), (0, 2)))
    with pytest.raises(NotGCMError):
        GeneralizedCartanMatrix(((2, 1), (1, 2)))
    with pytest.raises(NotGCMError):
        GeneralizedCartanMatrix(((2, -1), (0, 2)))
    with pytest.raises(NotGCMError):
        GeneralizedCartanMatrix(((2, -1, 0), (-1, 2, -1)))
    with pytest.raises(NotGCMError):
        GeneralizedCartanMatrix.parse("2,x;-1,2")


def test_parse_round_trip():
    gcm = GeneralizedCartanMatrix.parse("2,-3;-3,2")
    assert gcm.entries == FIB
    assert gcm.to_text() == "2,-3;-3,2"
    assert gcm[1, 2] == -3


def test_classification_fixtures():
    assert classify(GeneralizedCartanMatrix(((2,),))).kind is Kind.FINITE
    assert classify(GeneralizedCartanMatrix(((2, -1), (-1, 2)))).kind is Kind.FINITE
    assert classify(GeneralizedCartanMatrix(((2, -2), (-2, 2)))).kind is Kind.AFFINE
    assert classify(GeneralizedCartanMatrix(FIB)).kind is Kind.HYPERBOLIC_STRICT
    assert classify(GeneralizedCartanMatrix(((2, -2), (-3, 2)))).kind is Kind.HYPERBOLIC_STRICT
    assert classify(GeneralizedCartanMatrix(TRI_23INF)).kind is Kind.HYPERBOLIC_NONSTRICT
    assert classify(GeneralizedCartanMatrix(TRI_INF3)).kind is Kind.HYPERBOLIC_NONSTRICT


def test_e10_reports_per_definition():
    # Contains an affine corank-1 subdiagram, so the submatrix definition
    # puts it in the non-strict class.
    cls = classify(GeneralizedCartanMatrix(E10))
    assert cls.kind is Kind.HYPERBOLIC_NONSTRICT
    assert cls.det_sign == -1


def test_affine_e8_extended_is_affine():
    rows = [[2 if i == j else 0 for j in range(9)] for i in range(9)]
    for i in range(7):
        rows[i][i + 1] = rows[i + 1][i] = -1
    rows[5][8] = rows[8][5] = -1
    assert classify(GeneralizedCartanMatrix(tuple(map(tuple, rows)))).kind is Kind.AFFINE


def test_indefinite_not_hyperbolic():
    # Contains a rank-2 hyperbolic proper principal submatrix.
    m = ((2, -3, -1), (-3, 2, -1), (-1, -1, 2))
    assert classify(GeneralizedCartanMatrix(m)).kind is Kind.INDEFINITE_OTHER


def test_decomposable_reported_with_blocks():
    cls = classify(GeneralizedCartanMatrix(((2, 0), (0, 2))))
    assert cls.kind is Kind.DECOMPOSABLE
    assert cls.blocks == ((1,), (2,))
    with pytest.raises(DecomposableError):
        symmetrize(GeneralizedCartanMatrix(((2, 0), (0, 2))))


def test_not_symmetrizable_reported():
    # A 3-cycle with an inconsistent product of entry ratios.
    m = ((2, -1, -1), (-2, 2, -1), (-1, -2, 2))
    assert classify(GeneralizedCartanMatrix(m)).kind is Kind.NOT_SYMMETRIZABLE


def test_symmetrizer_symmetric_case():
    sym = symmetrize(GeneralizedCartanMatrix(FIB))
    assert sym.d == (1, 1)
    assert sym.root_norms == (2, 2)


def test_symmetrizer_unequal_lengths():
    # a12 = -2, a21 = -3 forces d1 a12 = d2 a21, i.e. d = (3/2, 1) after
    # normalizing the longest root to squared length 2.
    sym = symmetrize(GeneralizedCartanMatrix(((2, -2), (-3, 2))))
    assert sym.d == (Fraction(3, 2), 1)
    assert sym.root_norms == (Fraction(4, 3), 2)
    a = ((2, -2), (-3, 2))
    assert sym.d[0] * a[0][1] == sym.d[1] * a[1][0]


def test_gram_matrices_fixtures():
    gcm = GeneralizedCartanMatrix(FIB)
    grams = gram_matrices(gcm)
    assert grams.coroot_gram == ((2, -3), (-3, 2))
    assert grams.compact_gram == (
        (Fraction(1, 2), Fraction(-3, 4)),
        (Fraction(-3, 4), Fraction(1, 2)),
    )
    assert gram_matrices(GeneralizedCartanMatrix(((2,),))).root_gram == ((2,),)


def test_gram_relations_unequal_lengths():
    gcm = GeneralizedCartanMatrix(((2, -2), (-3, 2)))
    grams = gram_matrices(gcm)
    for m in (grams.root_gram, grams.coroot_gram):
        assert m[0][1] == m[1][0]
    assert all(
        grams.coroot_gram[i][j] == 4 * grams.compact_gram[i][j]
        for i in range(2)
        for j in range(2)
    )


def test_signature_fixtures():
    assert signature(((2, -3), (-3, 2))) == (1, 1, 0)
    assert signature(((2, -2), (-2, 2))) == (1, 0, 1)
    assert signature(((1, 0), (0, 1))) == (2, 0, 0)
    assert signature(((0, 0), (0, 0))) == (0, 0, 2)
    with pytest.raises(NotSymmetricError):
        signature(((2, -1), (-2, 2)))


@settings(max_examples=60, deadline=None)
@given(
    st.integers(0, 3),
    st.integers(0, 3),
    st.lists(st.integers(-3, 3), min_size=9, max_size=9),
)
def test_signature_is_congruence_invariant(n_plus, n_minus, flat):
    # Sylvester's law: P^T D P has the inertia of D for invertible P.
    n = 3
    n_plus = min(n_plus, n)
    n_minus = min(n_minus, n - n_plus)
    diag = [1] * n_plus + [-1] * n_minus + [0] * (n - n_plus - n_minus)
    p = [flat[0:3], flat[3:6], flat[6:9]]
    det = (
        p[0][0] * (p[1][1] * p[2][2] - p[1][2] * p[2][1])
        - p[0][1] * (p[1][0] * p[2][2] - p[1][2] * p[2][0])
        + p[0][2] * (p[1][0] * p[2][1] - p[1][1] * p[2][0])
    )
    if det == 0:
        p = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    m = tuple(
        tuple(
            sum(p[k][i] * diag[k] * p[k][j] for k in range(n)) for j in range(n)
        )
        for i in range(n)
    )
    expected_zero = n - n_plus - n_minus if det != 0 else n - n_plus - n_minus
    assert signature(m) == (n_plus, n_minus, expected_zero)


def test_classification_permutation_invariant():
    base = classify(GeneralizedCartanMatrix(TRI_23INF)).kind
    for perm in ((1, 2, 0), (2, 0, 1), (2, 1, 0)):
        m = tuple(tuple(TRI_23INF[perm[i]][perm[j]] for j in range(3)) for i in range(3))
        assert classify(GeneralizedCartanMatrix(m)).kind is base


def test_hyperbolic_det_negative():
    for m in (FIB, TRI_23INF, TRI_INF3, E10):
        assert classify(GeneralizedCartanMatrix(m)).det_sign == -1
