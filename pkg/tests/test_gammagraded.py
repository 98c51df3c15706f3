import random

import pytest

from swgamma.gammagraded import (GrClass, atoms, chern, dec_part, filtration, first_chern_is_isomorphism,
                                 gamma_lattice, gr_mod2, gr_piece, gr_product, standard_presentation,
                                 torsion_and_adams_checks)
from swgamma.lattice import IntegerLattice
from swgamma.repcore import adams, line_elements

SMALL = [("C2", "complex"), ("C3", "complex"), ("C4", "complex"), ("C6", "complex"), ("C8", "complex"),
         ("C2", "real"), ("C4", "real"), ("C6", "real"), ("C8", "real"), ("C12", "real"),
         ("elem_abelian2(2)", "real"), ("elem_abelian2(3)", "real"), ("dihedral8", "real"),
         ("dihedral8", "complex"), ("z4pow(2)", "real"), ("C16", "complex")]


# --- atoms ---------------------------------------------------------------------------------

def test_atom_examples():
    assert [a.level for a in atoms("C5", "complex")] == [1] * 4
    assert [a.label for a in atoms("dihedral8")] == ["c1(r1)", "c1(r2)", "c1(r3)", "c1(Delta)", "c2(Delta)"]
    levels = [a.level for a in atoms("z4pow(3)", "real")]
    assert levels.count(1) == 7 + 28 and levels.count(2) == 28 and len(levels) == 63


# --- lattices ------------------------------------------------------------------------------------

@pytest.mark.parametrize("group,field", SMALL)
def test_gamma_one_is_augmentation_ideal(group, field):
    filt = filtration(group, field)
    ring = filt.ring
    gens = [list((ring.basis(i) - ring.dims[i]).coeffs) for i in range(ring.rank) if i != filt.trivial]
    assert filt.lattice(1) == IntegerLattice(ring.rank, gens)
    assert filt.lattice(0) == IntegerLattice.full(ring.rank)


@pytest.mark.parametrize("group,field", SMALL)
def test_filtration_nested_with_full_rank(group, field):
    filt = filtration(group, field)
    for n in range(1, 6):
        assert filt.lattice(n + 1) <= filt.lattice(n)
        assert filt.lattice(n).rank == filt.c


@pytest.mark.parametrize("N", [2, 3, 4, 6, 8])
def test_cyclic_complex_is_augmentation_power(N):
    filt = filtration(f"C{N}", "complex")
    for n in range(1, 7):
        assert filt.lattice(n) == filt.augmentation_power(n)
        assert filt.piece(n).invariants == [N]
    assert filt.piece(0).invariants == [0]


@pytest.mark.parametrize("group,field", SMALL)
def test_window_saturation_agrees(group, field):
    filt = filtration(group, field)
    for n in range(1, 7):
        lat = filt.lattice(n)
        assert filt.lattice_window(n) == lat
        assert filt.lattice_window(n, extra=1) == lat


@pytest.mark.parametrize("group,field", [("dihedral8", "real"), ("C8", "real"), ("elem_abelian2(3)", "real")])
def test_ideal_property(group, field):
    filt = filtration(group, field)
    rnd = random.Random(11)
    for a in range(1, 4):
        for b in range(1, 4):
            A, B = filt.lattice(a).hnf(), filt.lattice(b).hnf()
            for _ in range(4):
                x, y = rnd.choice(A), rnd.choice(B)
                assert filt.ring.mul_coeffs(x, y) in filt.lattice(a + b)


# --- graded pieces ------------------------------------------------------------------------------

def test_graded_piece_examples():
    assert gr_piece(0, "dihedral8").invariants == [0]
    assert [gr_piece(n, "dihedral8").invariants for n in range(1, 6)] == [
        [2, 2], [2, 2, 4], [2, 2, 2], [2, 2, 4], [2, 2, 2]]
    assert gamma_lattice(3, "dihedral8").rank == 4


def test_projection_inverts_lift():
    piece = gr_piece(2, "dihedral8")
    for k, d in enumerate(piece.invariants):
        img = piece.project(piece.lift(k))
        assert img == tuple(int(j == k) for j in range(len(piece.invariants)))


@pytest.mark.parametrize("m", [1, 3, 5])
def test_mod2_cyclic_real_m_odd(m):
    filt = filtration(f"C{2 * m}", "real")
    for n in range(1, 7):
        span = filt.gr_mod2(n)
        assert span.rank == 1
        eps = filt.chern(1, "eps")
        power = eps
        for _ in range(n - 1):
            power = power * eps
        assert power.project2() == 1


@pytest.mark.parametrize("N", [4, 8, 12])
def test_mod2_cyclic_real_m_even(N):
    filt = filtration(f"C{N}", "real")
    eps, c2 = filt.chern(1, "eps"), filt.chern(2, "r_1")
    for n in range(1, 7):
        assert filt.gr_mod2(n).rank == 1
        mono = eps if n % 2 else filt.unit()
        for _ in range(n // 2):
            mono = mono * c2
        assert mono.project2() == 1


def test_mod2_klein():
    assert [gr_mod2(n, "elem_abelian2(2)").rank for n in range(1, 5)] == [2, 3, 3, 3]


# --- Chern classes -------------------------------------------------------------------------------

@pytest.mark.parametrize("group,field", SMALL)
def test_first_chern_class_is_isomorphism(group, field):
    assert first_chern_is_isomorphism(filtration(group, field))


@pytest.mark.parametrize("N", [4, 6, 8, 12])
def test_chern_of_real_two_dimensionals(N):
    filt = filtration(f"C{N}", "real")
    for name in filt.ring.names:
        if name.startswith("r_"):
            assert filt.chern(1, name).is_zero()


@pytest.mark.parametrize("N", [3, 4, 5, 8])
def test_chern_of_powers(N):
    piece = gr_piece(1, f"C{N}", "complex")
    base = piece.project(chern(1, "rho^1", f"C{N}", "complex").rep)[0]
    for k in range(1, N):
        assert piece.project(chern(1, f"rho^{k}", f"C{N}", "complex").rep)[0] == (k * base) % N


def test_chern_rejects_degree_zero():
    with pytest.raises(ValueError):
        chern(0, "r1", "dihedral8")


# --- products --------------------------------------------------------------------------------------

def test_d4_product_relations():
    filt = filtration("dihedral8")
    c1r1, c1r2, c2D = filt.chern(1, "r1"), filt.chern(1, "r2"), filt.chern(2, "Delta")
    assert (c1r1 * c1r2).is_zero()
    assert (c1r1 * c2D).project2() == (c1r2 * c2D).project2()
    assert (c1r1 * c2D).project2() != 0


@pytest.mark.parametrize("N", [4, 8, 12])
def test_eps_squared_vanishes(N):
    filt = filtration(f"C{N}", "real")
    eps = filt.chern(1, "eps")
    assert (eps * eps).is_zero()


@pytest.mark.parametrize("group", ["dihedral8", "C8", "elem_abelian2(2)"])
def test_product_is_well_defined(group):
    filt = filtration(group)
    rnd = random.Random(5)
    for a in range(1, 4):
        for b in range(1, 4):
            A, B = filt.lattice(a).hnf(), filt.lattice(b).hnf()
            hA, hB = filt.lattice(a + 1).hnf(), filt.lattice(b + 1).hnf()
            for _ in range(3):
                x, y = rnd.choice(A), rnd.choice(B)
                s, t = rnd.randint(-3, 3), rnd.randint(-3, 3)
                dx = [s * z for z in rnd.choice(hA)]
                dy = [t * z for z in rnd.choice(hB)]
                p = gr_product(GrClass(filt, a, tuple(x)), GrClass(filt, b, tuple(y)))
                q = gr_product(GrClass(filt, a, tuple(u + v for u, v in zip(x, dx))),
                               GrClass(filt, b, tuple(u + v for u, v in zip(y, dy))))
                assert p.project() == q.project()


# --- decomposables ----------------------------------------------------------------------------------

def test_dec_examples():
    assert [dec_part(n, "C4").rank for n in range(1, 4)] == [1, 0, 0]
    assert [dec_part(n, "z4pow(2)").rank for n in range(1, 4)] == [2, 1, 0]
    for n in range(1, 5):
        assert dec_part(n, "elem_abelian2(3)").rank == gr_mod2(n, "elem_abelian2(3)").rank


# --- torsion, Adams, presentations -----------------------------------------------------------------

@pytest.mark.parametrize("group,field", [("C4", "complex"), ("dihedral8", "real"), ("C2", "complex"),
                                         ("C6", "real")])
def test_torsion_and_adams(group, field):
    report = torsion_and_adams_checks(group, field, 6)
    assert all(r["torsion"] and r["adams"] for r in report)
    if group == "C4":
        assert all(r["invariants"] == [4] for r in report)


def test_adams_congruence_c2_degree_one():
    filt = filtration("C2", "complex")
    for v in filt.lattice(1).hnf():
        x = filt.ring.element(v)
        assert list((adams(2, x) - 2 * x).coeffs) in filt.lattice(2)


@pytest.mark.parametrize("group,field", [("C4", "complex"), ("C6", "complex"), ("C2", "real"), ("C6", "real"),
                                         ("C4", "real"), ("C8", "real"), ("elem_abelian2(2)", "real"),
                                         ("elem_abelian2(3)", "real"), ("dihedral8", "real")])
def test_presentations(group, field):
    gens, rels = standard_presentation(group, field)
    report = filtration(group, field).check_presentation(gens, rels, 8)
    assert report.ok


def test_presentation_detects_missing_relation():
    gens, _ = standard_presentation("dihedral8")
    assert not filtration("dihedral8").check_presentation(gens, [], 4).ok


def test_line_group_of_klein():
    names, group = line_elements(filtration("elem_abelian2(2)").ring)
    assert len(names) == 4 and group.exponent == 2
