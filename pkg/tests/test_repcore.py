import cmath
import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import close, elementary_symmetric
from swgamma.errors import IntegralityError, InvalidGroupError, UnsupportedCaseError
from swgamma.repcore import (CharTable, CycloField, FiniteGroup, RepRing, adams, augmentation, catalog,
                             cyclotomic_polynomial, fs_indicator, gamma_k, gamma_neg, group_from_data,
                             lambda_k, line_elements, load_group_file, real_irreducibles,
                             restriction_matrix, restrict)

CATALOG = ["C2", "C3", "C4", "C5", "C6", "C8", "C12", "C16", "elem_abelian2(1)", "elem_abelian2(2)",
           "elem_abelian2(3)", "elem_abelian2(4)", "z4pow(2)", "dihedral8"]


def numeric(field, coords):
    return sum(int(c) * cmath.exp(2j * math.pi * k / field.e) for k, c in enumerate(coords))


def numeric_character(ring, x):
    F = ring.table.field
    return [numeric(F, v) for v in ring.character(x)]


# --- groups and tables -------------------------------------------------------------------

def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)


def test_catalog_examples():
    c4 = catalog("cyclic(4)")
    assert c4.nirr == 4 and c4.group.exponent == 4
    d4 = catalog("dihedral8")
    assert d4.degrees == [1, 1, 1, 1, 2]
    assert d4.names == ["1", "r1", "r2", "r3", "Delta"]
    v = catalog("elem_abelian2(2)")
    assert v.nirr == 4
    values = {numeric(v.field, c).real for row in v.values for c in row}
    assert all(abs(abs(x) - 1) < 1e-12 for x in values)
    assert catalog("C4") is catalog("cyclic(4)")
    with pytest.raises(InvalidGroupError):
        catalog("icosahedral")


@pytest.mark.parametrize("name", CATALOG)
def test_orthogonality(name):
    table = catalog(name)
    table.validate()
    assert sum(d * d for d in table.degrees) == table.group.order


@pytest.mark.parametrize("name", CATALOG)
def test_group_axioms_and_power_maps(name):
    G = catalog(name).group
    assert all(G.mul(g, G.inverse[g]) == 0 for g in range(G.order))
    assert all(G.power(g, G.exponent) == 0 for g in range(G.order))
    assert G.class_power_map(1) == list(range(len(G.classes)))


def test_invalid_tables():
    with pytest.raises(InvalidGroupError):
        FiniteGroup([[0, 1], [1, 1]])
    with pytest.raises(InvalidGroupError):
        FiniteGroup([[0, 1, 2], [1, 2, 0]])
    # a Latin square that is not associative
    bad = [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]]
    with pytest.raises(InvalidGroupError):
        FiniteGroup(bad)


def test_table_validation_rejects_bad_characters():
    c2 = catalog("C2")
    with pytest.raises(InvalidGroupError):
        CharTable(c2.group, np.array([c2.values[0], c2.values[0]]))


# --- group files ----------------------------------------------------------------------------

def test_group_file_abelian(tmp_path):
    path = tmp_path / "c3.json"
    path.write_text(json.dumps({"order": 3, "table": [[(a + b) % 3 for b in range(3)] for a in range(3)]}))
    table = load_group_file(path)
    assert table.nirr == 3 and table.degrees == [1, 1, 1]


def test_group_file_nonabelian_needs_characters():
    d4 = catalog("D4").group
    with pytest.raises(InvalidGroupError):
        group_from_data({"order": 8, "table": d4.table})


def test_group_file_with_characters():
    d4 = catalog("D4")
    e = d4.group.exponent
    chars = []
    for i in range(d4.nirr):
        row = []
        for g in range(8):
            # rational values: coefficient on x^0 only
            val = int(d4.values[i, d4.group.class_of[g], 0])
            row.append([val] + [0] * (e - 1))
        chars.append(row)
    table = group_from_data({"order": 8, "table": d4.group.table, "characters": chars})
    assert table.degrees == [1, 1, 1, 1, 2]
    chars[1][1] = [1] + [0] * (e - 1)  # r1 differs on rho and rho^3
    with pytest.raises(InvalidGroupError):
        group_from_data({"order": 8, "table": d4.group.table, "characters": chars})


def test_group_file_malformed():
    with pytest.raises(InvalidGroupError):
        group_from_data({"order": 2})
    with pytest.raises(InvalidGroupError):
        group_from_data({"order": 3, "table": [[0, 1], [1, 0]]})


# --- indicators and real irreducibles ----------------------------------------------------------

def test_fs_indicator_examples():
    c4 = catalog("C4")
    assert fs_indicator(c4, 0) == 1
    assert fs_indicator(c4, c4.names.index("rho^1")) == 0
    d4 = catalog("D4")
    assert fs_indicator(d4, d4.names.index("Delta")) == 1


def test_real_irreducibles_examples():
    assert set(real_irreducibles(catalog("C4")).names) == {"1", "eps", "r_1"}
    assert len(real_irreducibles(catalog("elem_abelian2(3)")).names) == 8
    for m in (1, 3, 5, 7):
        assert len(real_irreducibles(catalog(f"C{2 * m}")).names) == m + 1


def test_quaternionic_is_rejected():
    # quaternion group Q8: i^2 = j^2 = k^2 = -1; ids: 0=1, 1=-1, 2=i, 3=-i, 4=j, 5=-j, 6=k, 7=-k
    q = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    rules = {("i", "j"): "k", ("j", "k"): "i", ("k", "i"): "j",
             ("j", "i"): "-k", ("k", "j"): "-i", ("i", "k"): "-j"}

    def mul(a, b):
        sa, ua = (a[0] == "-"), a.lstrip("-")
        sb, ub = (b[0] == "-"), b.lstrip("-")
        sign = sa ^ sb
        if ua == "1":
            r = ub
        elif ub == "1":
            r = ua
        elif ua == ub:
            r, sign = "1", not sign
        else:
            r = rules[(ua, ub)]
            if r[0] == "-":
                r, sign = r[1:], not sign
        return ("-" if sign else "") + r

    table = [[q.index(mul(a, b)) for b in q] for a in q]
    G = FiniteGroup(table, "Q8")
    # class order: {1}, {-1}, {i,-i}, {j,-j}, {k,-k}
    F = CycloField(G.exponent)
    one = F.root(0)
    lines = [[1, 1, 1, 1, 1], [1, 1, 1, -1, -1], [1, 1, -1, 1, -1], [1, 1, -1, -1, 1]]
    vals = [[one * v for v in row] for row in lines] + [[one * v for v in (2, -2, 0, 0, 0)]]
    T = CharTable(G, np.array(vals))
    assert fs_indicator(T, 4) == -1
    with pytest.raises(UnsupportedCaseError):
        real_irreducibles(T)


# --- Adams and lambda operations -------------------------------------------------------------------

@pytest.mark.parametrize("name", CATALOG)
def test_adams_group_order(name):
    table = catalog(name)
    ring = RepRing(table)
    n = table.group.order
    for i in range(ring.rank):
        x = ring.basis(i)
        assert adams(n, x) == ring.one() * ring.dims[i]
        assert adams(1, x) == x


def test_adams_square_on_c4():
    ring = RepRing(catalog("C4"))
    rho = ring["rho^1"]
    assert adams(2, rho) == rho * rho == ring["rho^2"]
    with pytest.raises(ValueError):
        adams(0, rho)


def test_d4_lambda_and_gamma_examples():
    ring = RepRing(catalog("D4"))
    r1, r2, r3, D = ring["r1"], ring["r2"], ring["r3"], ring["Delta"]
    assert lambda_k(1, D) == D
    assert lambda_k(2, D) == r1 * r2 == r3
    assert gamma_k(1, D) == D
    assert gamma_k(2, D - 2) == 1 - D + r1 * r2
    assert augmentation(D) == 2
    for L in (r1, r2, r3):
        assert lambda_k(2, L) == ring.zero()
        assert gamma_k(2, L - 1) == ring.zero()


def test_gamma_neg():
    ring = RepRing(catalog("D4"))
    x = ring["Delta"] - 2
    assert gamma_neg(1, x) == -x
    assert gamma_neg(2, x) == gamma_k(1, x) * gamma_k(1, x) - gamma_k(2, x)
    for k in range(5):
        assert gamma_neg(k, x) == gamma_k(k, -x)


def test_line_elements():
    names, group = line_elements(RepRing(catalog("D4"), "real"))
    assert names == ["1", "r1", "r2", "r3"]
    assert group.order == 4 and group.exponent == 2
    names, group = line_elements(RepRing(catalog("C3"), "real"))
    assert names == ["1"]


def test_real_ring_basis():
    ring = RepRing(catalog("C4"), "R")
    assert set(ring.names) == {"1", "eps", "r_1"}
    assert sorted(ring.dims) == [1, 1, 2]
    with pytest.raises(ValueError):
        RepRing(catalog("C4"), "H")


ACTUAL_C4 = st.lists(st.integers(0, 2), min_size=4, max_size=4).filter(lambda c: sum(c) <= 4)


@settings(max_examples=40, deadline=None)
@given(ACTUAL_C4, ACTUAL_C4, st.integers(0, 4))
def test_lambda_multiplicative(a, b, k):
    ring = RepRing(catalog("C4"))
    x, y = ring.element(a), ring.element(b)
    rhs = ring.zero()
    for i in range(k + 1):
        rhs = rhs + lambda_k(i, x) * lambda_k(k - i, y)
    assert lambda_k(k, x + y) == rhs


@pytest.mark.parametrize("name", ["C3", "C4", "C6", "elem_abelian2(2)", "z4pow(2)"])
def test_lambda_matches_eigenvalues(name):
    # abelian groups: a representation is a multiset of characters, diagonal at each element
    table = catalog(name)
    ring = RepRing(table)
    rng = np.random.default_rng(7)
    for _ in range(5):
        mult = rng.integers(0, 2, ring.rank)
        x = ring.element(mult)
        chars = [numeric_character(ring, ring.basis(i)) for i in range(ring.rank)]
        eigen = [[chars[i][c] for i in range(ring.rank) for _ in range(mult[i])]
                 for c in range(len(table.group.classes))]
        for k in range(5):
            expected = [elementary_symmetric(ev, k) for ev in eigen]
            assert close(numeric_character(ring, lambda_k(k, x)), expected)


@pytest.mark.parametrize("name", CATALOG)
def test_gamma_vanishing_bound(name):
    for field in ("complex", "real"):
        ring = RepRing(catalog(name), field)
        for i in range(ring.rank):
            x = ring.basis(i) - ring.dims[i]
            for k in range(ring.dims[i] + 1, ring.dims[i] + 3):
                assert gamma_k(k, x) == ring.zero()


@pytest.mark.parametrize("name", ["C4", "C8", "C12", "D4", "z4pow(2)"])
def test_real_subring_closed(name):
    ring = RepRing(catalog(name), "real")
    for i in range(ring.rank):
        x = ring.basis(i)
        for k in range(1, 4):
            assert lambda_k(k, x).is_conjugation_fixed()
            assert adams(k, x).is_conjugation_fixed()


def test_restriction_d4_to_klein():
    d4 = RepRing(catalog("D4"))
    v = RepRing(catalog("elem_abelian2(2)"))
    M = restriction_matrix(d4, v, [0, 7, 5, 2])
    assert augmentation(restrict(d4["Delta"], v, M)) == 2
    with pytest.raises(InvalidGroupError):
        restriction_matrix(d4, v, [0, 1, 2, 3])


def test_integrality_guard():
    ring = RepRing(catalog("C4"))
    f = ring.table.values[1].copy()
    f[0, 0] += 1  # not a virtual character
    with pytest.raises(IntegralityError):
        ring.decompose(f)
