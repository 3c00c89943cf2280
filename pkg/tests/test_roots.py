from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kma.gcm import GeneralizedCartanMatrix
from kma.oracles import lattice_scan_real_roots
from kma.roots import (
    MixedSignError,
    NotRank2Error,
    NotRealRootError,
    PhiLabel,
    Root,
    RootKind,
    RootSystem,
)

FIB = ((2, -3), (-3, 2))
TRI_23INF = ((2, -2, 0), (-2, 2, -1), (0, -1, 2))


def test_reflect_simple_negates(fib):
    a1 = fib.rs.simple_root(1)
    assert fib.rs.reflect_root(1, a1) == -a1


def test_reflect_fixture(fib):
    # w_1(alpha_2) = alpha_2 + 3 alpha_1 for the symmetric a = b = 3 matrix.
    assert fib.rs.reflect_root(1, fib.rs.simple_root(2)) == Root((3, 1))


@settings(max_examples=100, deadline=None)
@given(st.integers(-20, 20), st.integers(-20, 20), st.integers(1, 2))
def test_reflect_is_involution(k1, k2, i):
    rs = RootSystem(GeneralizedCartanMatrix(FIB))
    root = Root((k1, k2))
    assert rs.reflect_root(i, rs.reflect_root(i, root)) == root


def test_height_one_roots_are_simple(fib):
    roots = fib.rs.real_roots_up_to_height(1)
    assert {r.coeffs for r in roots} == {(1, 0), (0, 1), (-1, 0), (0, -1)}


def test_enumeration_fixture_fib(fib):
    roots = {r.coeffs for r in fib.rs.real_roots_up_to_height(5)}
    assert roots == {
        (1, 0), (0, 1), (3, 1), (1, 3),
        (-1, 0), (0, -1), (-3, -1), (-1, -3),
    }
    # The set equals the norm-2 lattice points of height <= 5.
    assert roots == lattice_scan_real_roots(FIB, 5)


def test_enumeration_fixture_tri23(tri23):
    # Frozen from the independent lattice scan: 8 roots through height 2,
    # 12 through height 3.
    assert len(tri23.rs.real_roots_up_to_height(2)) == 8
    assert len(tri23.rs.real_roots_up_to_height(3)) == 12


@pytest.mark.parametrize("entries", [FIB, TRI_23INF])
def test_enumeration_matches_scan(entries):
    rs = RootSystem(GeneralizedCartanMatrix(entries))
    for cap in (4, 8):
        assert {r.coeffs for r in rs.real_roots_up_to_height(cap)} == lattice_scan_real_roots(
            entries, cap
        )


def test_enumeration_closed_under_negation(fib):
    roots = {r.coeffs for r in fib.rs.real_roots_up_to_height(8)}
    assert roots == {tuple(-k for k in c) for c in roots}


def test_real_root_norms_are_simple_norms(tri23):
    norms = set(tri23.rs.sym.root_norms)
    for root in tri23.rs.real_roots_up_to_height(8):
        assert tri23.rs.norm(root) in norms


def test_classify_simple(fib):
    rc = fib.rs.classify_root(Root((1, 0)))
    assert rc.kind is RootKind.REAL
    assert rc.norm == 2
    assert rc.witness_word == ()
    assert rc.simple_index == 1


def test_classify_real_with_witness(fib):
    rc = fib.rs.classify_root(Root((3, 1)))
    assert rc.kind is RootKind.REAL
    assert rc.norm == 2
    assert fib.rs.act_word_on_root(rc.witness_word, fib.rs.simple_root(rc.simple_index)) == Root((3, 1))


def test_classify_negative_real(fib):
    rc = fib.rs.classify_root(Root((-3, -1)))
    assert rc.kind is RootKind.REAL
    assert fib.rs.act_word_on_root(rc.witness_word, fib.rs.simple_root(rc.simple_index)) == Root((-3, -1))


def test_classify_imaginary(fib):
    rc = fib.rs.classify_root(Root((1, 1)))
    assert rc.kind is RootKind.IMAGINARY
    assert rc.norm == -2


def test_classify_not_a_root(fib):
    assert fib.rs.classify_root(Root((4, 1))).kind is RootKind.NOT_A_ROOT
    assert fib.rs.classify_root(Root((2, 0))).kind is RootKind.NOT_A_ROOT


def test_classify_mixed_sign_rejected(fib):
    with pytest.raises(MixedSignError):
        fib.rs.classify_root(Root((1, -1)))
    with pytest.raises(MixedSignError):
        fib.rs.classify_root(Root((0, 0)))


def test_classify_null_root_imaginary(tri23):
    # (1,1,0) is the null direction of the affine subdiagram.
    rc = tri23.rs.classify_root(Root((1, 1, 0)))
    assert rc.kind is RootKind.IMAGINARY
    assert rc.norm == 0


def test_phi_fixtures(fib):
    assert fib.rs.phi_root(1, 0) == Root((1, 0))
    assert fib.rs.phi_root(2, 0) == Root((0, 1))
    assert fib.rs.phi_root(1, 1) == Root((0, -1))
    assert fib.rs.phi_root(2, 1) == Root((1, 3))


def test_phi_unequal_lengths(mixed):
    # w(1) = w_2 applied to alpha_1 adds a = -a_12 copies of alpha_2.
    assert mixed.rs.phi_root(2, 1) == Root((1, 2))


def test_phi_positivity_thresholds(fib):
    for n in range(-20, 21):
        assert fib.rs.phi_root(1, n).is_positive == (n <= 0)
        assert fib.rs.phi_root(2, n).is_positive == (n >= 0)


def test_phi_partition_identities(fib, mixed):
    # w_1 Phi_1(n) = Phi_2(-1-n) and w_2 Phi_1(n) = Phi_2(1-n); the same
    # with the branches swapped.
    for tk in (fib, mixed):
        for n in range(-20, 21):
            assert tk.weyl.act_on_root((1,), tk.rs.phi_root(1, n)) == tk.rs.phi_root(2, -1 - n)
            assert tk.weyl.act_on_root((2,), tk.rs.phi_root(1, n)) == tk.rs.phi_root(2, 1 - n)
            assert tk.weyl.act_on_root((1,), tk.rs.phi_root(2, n)) == tk.rs.phi_root(1, -1 - n)
            assert tk.weyl.act_on_root((2,), tk.rs.phi_root(2, n)) == tk.rs.phi_root(1, 1 - n)


def test_phi_label_round_trip(fib, mixed):
    for tk in (fib, mixed):
        for branch in (1, 2):
            for n in range(-15, 16):
                label = tk.rs.phi_label(tk.rs.phi_root(branch, n))
                assert label == PhiLabel(branch, n)


def test_phi_partitions_enumerated_roots(fib):
    labels = {}
    for root in fib.rs.real_roots_up_to_height(8):
        label = fib.rs.phi_label(root)
        key = (label.branch, label.index)
        assert key not in labels
        labels[key] = root


def test_phi_label_rejects_non_real(fib):
    with pytest.raises(NotRealRootError):
        fib.rs.phi_label(Root((1, 1)))


def test_phi_requires_rank2(tri23):
    with pytest.raises(NotRank2Error):
        tri23.rs.phi_root(1, 0)


def test_cartan_pairing_row_convention(mixed):
    # Abar_i contracts row i: Abar_1(z_2) = a_12.
    assert mixed.rs.cartan_pairing(1, (0, 1)) == -2
    assert mixed.rs.cartan_pairing(2, (1, 0)) == -3
