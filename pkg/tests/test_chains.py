from fractions import Fraction

import pytest

from boundedcoh.chains import (BarComplex, ChainError, alt_operator,
                               bar_complex, hom_inhom_isos,
                               homogeneous_complex, homotopy_leading_twist,
                               homotopy_operator, induced_chain_map,
                               transported_contraction)
from boundedcoh.groupoids import (Homotopy, blow_up, from_group_table,
                                  full_subgroupoid, identity_map,
                                  skeleton_retraction, trivial_groupoid)
from boundedcoh.linalg import QMatrix
from boundedcoh.norms import L1Norm, operator_norm
from tables import S3_TABLE, Z2_TABLE, Z3_TABLE

F = Fraction


def _op_norm(mat):
    return operator_norm(mat, L1Norm(mat.ncols), L1Norm(mat.nrows))


def test_z2_degree_one_basis_and_boundary():
    G = from_group_table(Z2_TABLE)
    B = bar_complex(G, 1)
    assert B.bases[1].total == 4
    b1 = B.bases[1]
    d = B.boundary_global(1)
    # the boundary of (g0, g1) is (g0 g1) minus (g0)
    a = 1 - G.identity[0]
    col = d.col_dict(b1.index[(a, a)])
    assert col == {B.bases[0].index[(G.identity[0],)]: F(1),
                   B.bases[0].index[(a,)]: F(-1)}


def test_contraction_shape_examples():
    G = from_group_table(Z2_TABLE)
    B = bar_complex(G, 1)
    # s_{-1} picks the identity loop; s_0 prepends it
    sm1 = B.contraction_global(-1)
    assert sm1.col_dict(0) == {B.bases[0].index[(G.identity[0],)]: F(1)}
    s0 = B.contraction_global(0)
    a = 1 - G.identity[0]
    assert s0.col_dict(B.bases[0].index[(a,)]) == {
        B.bases[1].index[(G.identity[0], a)]: F(1)}


def test_blow_up_path_counts_and_dd_zero():
    G, _ = blow_up(from_group_table(Z2_TABLE), 2)
    B = bar_complex(G, 3)
    assert B.bases[2].counts == [64, 64]
    for n in range(1, 3):
        assert (B.boundary_global(n) * B.boundary_global(n + 1)).is_zero()
    assert (B.augmentation_global() * B.boundary_global(1)).is_zero()


def test_s3_dd_zero_and_boundary_norms():
    G = from_group_table(S3_TABLE)
    B = bar_complex(G, 3)
    assert [b.total for b in B.bases] == [6, 36, 216, 1296]
    for n in range(1, 3):
        assert (B.boundary_global(n) * B.boundary_global(n + 1)).is_zero()
    for n in range(1, 4):
        assert _op_norm(B.boundary_global(n)) <= n + 1


def test_contraction_identities():
    G, _ = blow_up(from_group_table(Z2_TABLE), 2)
    B = bar_complex(G, 3)
    total0 = B.bases[0].total
    # degree 0 closes with the augmentation
    lhs = (B.boundary_global(1) * B.contraction_global(0)
           + B.contraction_global(-1) * B.augmentation_global())
    assert lhs == QMatrix.identity(total0)
    assert (B.augmentation_global() * B.contraction_global(-1)
            == QMatrix.identity(G.num_objects))
    for n in range(1, 3):
        lhs = (B.boundary_global(n + 1) * B.contraction_global(n)
               + B.contraction_global(n - 1) * B.boundary_global(n))
        assert lhs == QMatrix.identity(B.bases[n].total)
    for n in range(-1, 3):
        assert _op_norm(B.contraction_global(n)) == F(1)


def test_path_cap_refused():
    G = from_group_table(S3_TABLE)
    with pytest.raises(ChainError):
        bar_complex(G, 3, path_cap=1000)


def test_homogeneous_z2_boundary():
    G = from_group_table(Z2_TABLE)
    L = homogeneous_complex(G, 1)
    d = L.boundary_global(1)
    a = 1 - G.identity[0]
    col = d.col_dict(L.bases[1].index[(G.identity[0], a)])
    # deletion boundary: (g1) - (g0)
    assert col == {L.bases[0].index[(a,)]: F(1),
                   L.bases[0].index[(G.identity[0],)]: F(-1)}


def test_homogeneous_trivial_group_parity():
    G = trivial_groupoid(1)
    L = homogeneous_complex(G, 3)
    assert all(b.total == 1 for b in L.bases)
    assert L.boundary_global(1).is_zero()
    assert L.boundary_global(2) == QMatrix.identity(1)
    assert L.boundary_global(3).is_zero()


def test_homogeneous_z3_counts_and_dd_zero():
    G = from_group_table(Z3_TABLE)
    L = homogeneous_complex(G, 3)
    assert L.bases[2].total == 27
    for n in range(1, 3):
        assert (L.boundary_global(n) * L.boundary_global(n + 1)).is_zero()


def test_isos_degree_zero_identity():
    G = from_group_table(Z3_TABLE)
    B, L = bar_complex(G, 0), homogeneous_complex(G, 0)
    to_hom, to_inhom = hom_inhom_isos(B, L)
    assert to_hom[0].components[0] == QMatrix.identity(3)
    assert to_inhom[0].components[0] == QMatrix.identity(3)


def test_isos_z2_prefix_products():
    G = from_group_table(Z2_TABLE)
    B, L = bar_complex(G, 1), homogeneous_complex(G, 1)
    to_hom, _ = hom_inhom_isos(B, L)
    a = 1 - G.identity[0]
    mat = to_hom[1].components[0]
    src = B.bases[1].index[(a, a)]
    dst = L.bases[1].index[(a, G.identity[0])]
    assert mat.col_dict(src) == {dst: F(1)}


def test_isos_round_trip_and_chain_map():
    G = from_group_table(Z3_TABLE)
    B, L = bar_complex(G, 2), homogeneous_complex(G, 2)
    to_hom, to_inhom = hom_inhom_isos(B, L)
    for n in range(3):
        u, v = to_hom[n].components[0], to_inhom[n].components[0]
        assert u * v == QMatrix.identity(L.bases[n].counts[0])
        assert v * u == QMatrix.identity(B.bases[n].counts[0])
        assert to_hom[n].norm_bound == F(1)
        assert to_inhom[n].norm_bound == F(1)
    for n in range(1, 3):
        lhs = L.boundaries[n].components[0] * to_hom[n].components[0]
        rhs = to_hom[n - 1].components[0] * B.boundaries[n].components[0]
        assert lhs == rhs


def test_transported_contraction_identities():
    G = from_group_table(Z2_TABLE)
    B, L = bar_complex(G, 2), homogeneous_complex(G, 2)
    s_m1, s = transported_contraction(B, L)
    lhs = (L.boundary_global(1) * s[0]
           + s_m1 * L.augmentation_global())
    assert lhs == QMatrix.identity(L.bases[0].total)
    lhs = L.boundary_global(2) * s[1] + s[0] * L.boundary_global(1)
    assert lhs == QMatrix.identity(L.bases[1].total)
    assert _op_norm(s_m1) == F(1)
    assert all(_op_norm(m) == F(1) for m in s)


def test_induced_map_of_identity():
    G = from_group_table(Z3_TABLE)
    B = bar_complex(G, 2)
    for n in range(3):
        m = induced_chain_map(identity_map(G), B, B, n)
        assert m == QMatrix.identity(B.bases[n].total)


def test_induced_map_of_inclusion_is_injection():
    G, _ = blow_up(from_group_table(Z2_TABLE), 2)
    sub, incl = full_subgroupoid(G, [0])
    BA, BG = bar_complex(sub, 2), bar_complex(G, 2)
    for n in range(3):
        m = induced_chain_map(incl, BA, BG, n)
        # distinct unit columns: injection of basis paths
        cols = [tuple(sorted(m.col_dict(j).items()))
                for j in range(BA.bases[n].total)]
        assert len(set(cols)) == len(cols)
        assert all(len(c) == 1 for c in cols)
        assert _op_norm(m) == F(1)


def test_induced_map_of_retraction_is_surjection():
    G, _ = blow_up(from_group_table(Z2_TABLE), 2)
    skel, incl, retr, _ = skeleton_retraction(G)
    BG, BS = bar_complex(G, 2), bar_complex(skel, 2)
    for n in range(3):
        m = induced_chain_map(retr, BG, BS, n)
        hit = set()
        for j in range(BG.bases[n].total):
            hit.update(m.col_dict(j))
        assert hit == set(range(BS.bases[n].total))


def test_induced_map_is_chain_map():
    G, _ = blow_up(from_group_table(Z2_TABLE), 2)
    skel, incl, retr, _ = skeleton_retraction(G)
    BG, BS = bar_complex(G, 2), bar_complex(skel, 2)
    for n in range(1, 3):
        lhs = induced_chain_map(retr, BG, BS, n - 1) * BG.boundary_global(n)
        rhs = BS.boundary_global(n) * induced_chain_map(retr, BG, BS, n)
        assert lhs == rhs


def test_homotopy_operator_identity_homotopy():
    G = from_group_table(Z3_TABLE)
    B = bar_complex(G, 2)
    h = Homotopy(identity_map(G), identity_map(G), [G.identity[0]])
    s0 = homotopy_operator(h, B, B, 0)
    s1 = homotopy_operator(h, B, B, 1)
    # both induced maps coincide, so the homotopy identity collapses to 0
    assert (B.boundary_global(1) * s0).is_zero()
    assert (B.boundary_global(2) * s1 + s0 * B.boundary_global(1)).is_zero()


def test_homotopy_operator_for_skeleton_homotopy():
    G, _ = blow_up(from_group_table(Z2_TABLE), 2)
    B = bar_complex(G, 3)
    _, incl, retr, h = skeleton_retraction(G)
    # h runs from the composite to the identity
    rhs = {n: induced_chain_map(h.to_map, B, B, n)
           - homotopy_leading_twist(h, B, B, n) for n in range(3)}
    s = {n: homotopy_operator(h, B, B, n) for n in range(3)}
    assert B.boundary_global(1) * s[0] == rhs[0]
    for n in range(1, 3):
        lhs = B.boundary_global(n + 1) * s[n] + s[n - 1] * B.boundary_global(n)
        assert lhs == rhs[n]
    for n in range(3):
        assert _op_norm(s[n]) <= n + 1


def test_alt_operator_degree_zero_is_identity():
    G = from_group_table(Z3_TABLE)
    L = homogeneous_complex(G, 0)
    A = alt_operator(L, 0)
    assert A.components[0] == QMatrix.identity(3)


def test_alt_operator_degree_one_formula():
    G = from_group_table(Z2_TABLE)
    L = homogeneous_complex(G, 1)
    A = alt_operator(L, 1).components[0]
    b = L.bases[1]
    a = 1 - G.identity[0]
    i, j = b.index[(G.identity[0], a)], b.index[(a, G.identity[0])]
    assert A.col_dict(i) == {i: F(1, 2), j: F(-1, 2)}
    # repeated entries cancel
    assert A.col_dict(b.index[(a, a)]) == {}


def test_alt_operator_kills_two_element_triples():
    # over Z/2 every 3-tuple repeats an entry, so antisymmetrization vanishes
    G = from_group_table(Z2_TABLE)
    L = homogeneous_complex(G, 2)
    assert alt_operator(L, 2).components[0].is_zero()


def test_alt_operator_idempotent_and_chain_map():
    G = from_group_table(Z3_TABLE)
    L = homogeneous_complex(G, 2)
    alts = [alt_operator(L, n).components[0] for n in range(3)]
    a2 = alts[2]
    assert a2 * a2 == a2
    for n in range(1, 3):
        lhs = L.boundaries[n].components[0] * alts[n]
        rhs = alts[n - 1] * L.boundaries[n].components[0]
        assert lhs == rhs
    assert L.augmentation.components[0] * alts[0] == L.augmentation.components[0]
    for n in range(3):
        assert _op_norm(alts[n]) == F(1)
