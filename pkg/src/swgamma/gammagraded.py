"""The gamma filtration of R(G, k), its graded pieces, Chern classes, and mod-2 structure."""

import itertools
import logging
from dataclasses import dataclass, field

import numpy as np

from . import f2
from .errors import IntegralityError, ResourceCapError
from .lattice import IntegerLattice, smith_normal_form, vecmat
from .polycohom import GradedAlgebra, PolyF2, monomials_of_degree
from .repcore import RepRing, adams, catalog, gamma_k, line_elements
from .swquotient import ideal_span_degree

log = logging.getLogger(__name__)

DEFAULT_WINDOW_CAP = 200000


@dataclass(frozen=True)
class Atom:
    index: int          # basis element rho_i of the ring
    level: int          # k in gamma^k(rho_i - dim rho_i)
    name: str
    coeffs: tuple

    @property
    def label(self):
        return f"c{self.level}({self.name})"


class GradedPiece:
    """gr^n = Gamma^n / Gamma^(n+1) via the Smith form of the inclusion."""

    def __init__(self, n, upper, lower):
        self.n = n
        self.upper = upper
        self.lower = lower
        self.basis = upper.hnf()
        rows = []
        for v in lower.hnf():
            y = upper.coordinates(v)
            if y is None:
                raise IntegralityError(f"Gamma^{n + 1} is not contained in Gamma^{n}")
            rows.append(y)
        r = len(self.basis)
        if rows:
            D, self.V, self.Vinv = smith_normal_form(rows)
        else:
            D = []
            self.V = [[int(i == j) for j in range(r)] for i in range(r)]
            self.Vinv = [row[:] for row in self.V]
        self.diag = list(D) + [0] * (r - len(D))
        # cyclic summands that survive, with their position in the SNF coordinates
        self.summands = [(i, d) for i, d in enumerate(self.diag) if d != 1]
        self.mod2_positions = [i for i, d in self.summands if d % 2 == 0]

    @property
    def invariants(self):
        return [d for _, d in self.summands]

    @property
    def dim_mod2(self):
        return len(self.mod2_positions)

    def _snf_coords(self, x):
        y = self.upper.coordinates(list(x))
        if y is None:
            raise ValueError(f"element is not in Gamma^{self.n}")
        return vecmat(y, self.V)

    def project(self, x):
        z = self._snf_coords(x)
        return tuple(z[i] % d if d else z[i] for i, d in self.summands)

    def project2(self, x):
        z = self._snf_coords(x)
        v = 0
        for pos, i in enumerate(self.mod2_positions):
            if z[i] % 2:
                v |= 1 << pos
        return v

    def is_zero(self, x):
        return list(x) in self.lower

    def lift(self, k):
        """Ring element representing the k-th cyclic summand."""
        i = self.summands[k][0]
        return vecmat(self.Vinv[i], self.basis)

    def __repr__(self):
        return f"GradedPiece(n={self.n}, invariants={self.invariants})"


@dataclass
class GrClass:
    """A class in gr^n, carried by a representative in Gamma^n."""

    filtration: "GammaFiltration"
    degree: int
    rep: tuple
    label: str = ""
    factors: tuple = ()     # formal Chern monomial: ((k, name), ...)

    def __mul__(self, other):
        return gr_product(self, other)

    def project(self):
        return self.filtration.piece(self.degree).project(self.rep)

    def project2(self):
        return self.filtration.piece(self.degree).project2(self.rep)

    def is_zero(self):
        return self.filtration.piece(self.degree).is_zero(self.rep)

    def __repr__(self):
        return f"GrClass({self.label or '?'}, degree={self.degree})"


def gr_product(a, b):
    filt = a.filtration
    rep = tuple(filt.ring.mul_coeffs(a.rep, b.rep))
    label = "*".join(x for x in (a.label, b.label) if x)
    return GrClass(filt, a.degree + b.degree, rep, label, a.factors + b.factors)


class GammaFiltration:
    """Gamma^n of R(G, k) as lattices in Z^(number of irreducibles)."""

    def __init__(self, ring, window_cap=DEFAULT_WINDOW_CAP):
        self.ring = ring
        self.rank = ring.rank
        self.window_cap = window_cap
        self._lattices = {}
        self._pieces = {}
        self.trivial = self._trivial_index()

    def _trivial_index(self):
        for i in range(self.rank):
            vals = self.ring.basis_values[i]
            if vals[:, 0].tolist() == [1] * len(vals) and not vals[:, 1:].any():
                return i
        raise IntegralityError("no trivial character in the basis")

    @property
    def c(self):
        """Rank of Gamma^n for n >= 1."""
        return self.rank - 1

    # atoms ---------------------------------------------------------------------
    @property
    def atoms(self):
        if not hasattr(self, "_atoms"):
            out = []
            for i in range(self.rank):
                if i == self.trivial:
                    continue
                x = self.ring.basis(i) - self.ring.dims[i]
                d = self.ring.dims[i]
                for k in range(1, d + 1):
                    out.append(Atom(i, k, self.ring.names[i], gamma_k(k, x).coeffs))
                for k in (d + 1, d + 2):
                    if gamma_k(k, x) != self.ring.zero():
                        raise IntegralityError(f"gamma^{k} of {self.ring.names[i]} - {d} is nonzero")
            self._atoms = out
        return self._atoms

    @property
    def w_max(self):
        return max((a.level for a in self.atoms), default=1)

    def _times(self, atom, rows):
        M = self.ring.multiplication_matrix(atom.coeffs)
        out = []
        for v in rows:
            out.append([int(x) for x in np.dot(np.array(v, dtype=object), M)])
        return out

    # lattices ------------------------------------------------------------------
    def lattice(self, n):
        """Gamma^n = sum over atoms a of a * Gamma^(n - level(a)), with Gamma^m = R for m <= 0."""
        if n <= 0:
            return IntegerLattice.full(self.rank)
        hit = self._lattices.get(n)
        if hit is not None:
            return hit
        lat = IntegerLattice(self.rank)
        for atom in self.atoms:
            for v in self._times(atom, self.lattice(n - atom.level).hnf()):
                lat.add(v)
        lat.normalize()
        self._lattices[n] = lat
        return lat

    def lattice_window(self, n, extra=0):
        """Gamma^n from atom monomials with weight in [n, n + w_max - 1 + extra], then saturation."""
        if n <= 0:
            return IntegerLattice.full(self.rank)
        top = n + self.w_max - 1 + extra
        atoms = self.atoms
        lat = IntegerLattice(self.rank)
        one = [int(i == self.trivial) for i in range(self.rank)]
        count = 0
        # depth-first over multisets of atoms (non-decreasing index)
        stack = [(0, 0, one)]
        while stack:
            start, weight, vec = stack.pop()
            if weight >= n:
                lat.add(vec)
                count += 1
                if count > self.window_cap:
                    raise ResourceCapError(f"window enumeration exceeds {self.window_cap} monomials")
            for j in range(start, len(atoms)):
                w = weight + atoms[j].level
                if w <= top:
                    stack.append((j, w, self._times(atoms[j], [vec])[0]))
        rounds = 0
        while True:
            rounds += 1
            grew = False
            for atom in atoms:
                for v in self._times(atom, lat.hnf()):
                    grew |= lat.add(v)
            if not grew:
                break
        log.debug("saturation for n=%d took %d rounds", n, rounds)
        lat.normalize()
        return lat

    def augmentation_power(self, n):
        """I^n, the n-th power of the augmentation ideal."""
        gens = []
        for i in range(self.rank):
            if i != self.trivial:
                gens.append(list((self.ring.basis(i) - self.ring.dims[i]).coeffs))
        lat = IntegerLattice(self.rank, gens)
        for _ in range(n - 1):
            new = IntegerLattice(self.rank)
            for g in gens:
                M = self.ring.multiplication_matrix(tuple(g))
                for v in lat.hnf():
                    new.add([int(x) for x in np.dot(np.array(v, dtype=object), M)])
            lat = new
        return lat

    def piece(self, n):
        hit = self._pieces.get(n)
        if hit is None:
            hit = GradedPiece(n, self.lattice(n), self.lattice(n + 1))
            self._pieces[n] = hit
        return hit

    # classes -------------------------------------------------------------------
    def chern(self, i, rho):
        """c_i(rho): the class of gamma^i(rho - dim rho) in gr^i."""
        if i < 1:
            raise ValueError("Chern classes start at i = 1")
        name = rho if isinstance(rho, str) else repr(rho)
        if isinstance(rho, str):
            rho = self.ring[rho]
        x = rho - rho.dim
        return GrClass(self, i, gamma_k(i, x).coeffs, f"c{i}({name})", ((i, name),))

    def chern_generators(self):
        """c_k(rho) for every non-trivial basis element and 1 <= k <= dim rho."""
        return [GrClass(self, a.level, a.coeffs, a.label, ((a.level, a.name),)) for a in self.atoms]

    # mod 2 -----------------------------------------------------------------------
    def gr_mod2(self, n, generators=None):
        """Basis of gr^n (x) F2 by Chern monomials, built greedily degree by degree."""
        return self._mod2_spans(n, generators or self.chern_generators())[n]

    def dec_part(self, n):
        """The part of gr^n (x) F2 generated by degree-one classes."""
        gens = [g for g in self.chern_generators() if g.degree == 1]
        return self._mod2_spans(n, gens, products_only=True)[n]

    def _mod2_spans(self, n, generators, products_only=False):
        key = (n, tuple(g.label for g in generators), products_only)
        cache = self.__dict__.setdefault("_span_cache", {})
        if key in cache:
            return cache[key]
        spans = {0: ModTwoSpan(0, 1, [self.unit()])}
        for d in range(1, n + 1):
            piece = self.piece(d)
            space = f2.RowSpace()
            chosen = []

            def offer(cls):
                if space.add(piece.project2(cls.rep)):
                    chosen.append(cls)

            for g in generators:
                k = g.degree
                if k > d:
                    continue
                if k == d and (not products_only or d == 1):
                    offer(g)
                elif k < d:
                    for b in spans[d - k].basis:
                        if b.degree == 0:
                            continue
                        offer(gr_product(g, b))
                if space.rank == piece.dim_mod2:
                    break
            spans[d] = ModTwoSpan(d, piece.dim_mod2, chosen)
        cache[key] = spans
        return spans

    # presentations ------------------------------------------------------------------
    def unit(self):
        return GrClass(self, 0, tuple(int(i == self.trivial) for i in range(self.rank)), "1")

    def ideal_span(self, classes, n):
        """Row space (in project2 coordinates) of the ideal of gr (x) F2 generated by classes, degree n."""
        space = f2.RowSpace()
        piece = self.piece(n)
        for g in classes:
            if g.degree == n:
                space.add(piece.project2(g.rep))
            elif g.degree < n:
                for b in self.gr_mod2(n - g.degree).basis:
                    space.add(piece.project2(gr_product(g, b).rep))
        return space

    def chern_monomials(self, n, generators=None):
        """Every monomial of degree n in the generators, as GrClass objects (shared products)."""
        generators = generators or self.chern_generators()
        weights = tuple(g.degree for g in generators)
        memo = {tuple([0] * len(generators)): self.unit()}

        def build(exps):
            hit = memo.get(exps)
            if hit is None:
                j = next(i for i, e in enumerate(exps) if e)
                prev = list(exps)
                prev[j] -= 1
                hit = gr_product(build(tuple(prev)), generators[j])
                memo[exps] = hit
            return hit

        return [build(m) for m in monomials_of_degree(n, weights)]

    def check_presentation(self, generators, relations, D, target="full"):
        """Verify that F2[generators]/(relations) -> gr (x) F2 is an isomorphism in degrees <= D.

        ``generators`` are GrClass objects; ``relations`` are PolyF2 polynomials
        in them (weighted by generator degree).  Returns a PresentationReport.
        """
        weights = tuple(g.degree for g in generators)
        names = [g.label for g in generators]
        algebra = GradedAlgebra(names, weights, [None] * len(generators))
        reps = {tuple([0] * len(generators)): tuple(int(i == self.trivial) for i in range(self.rank))}

        def rep(exps):
            hit = reps.get(exps)
            if hit is None:
                j = next(i for i, e in enumerate(exps) if e)
                prev = list(exps)
                prev[j] -= 1
                hit = tuple(self.ring.mul_coeffs(rep(tuple(prev)), generators[j].rep))
                reps[exps] = hit
            return hit

        report = PresentationReport(names)
        for d in range(1, D + 1):
            piece = self.piece(d)
            dim = piece.dim_mod2 if target == "full" else self.dec_part(d).rank
            monos = monomials_of_degree(d, weights)
            images = [piece.project2(rep(m)) for m in monos]
            surjective = f2.rank(images) == dim
            kernel = f2.RowSpace(f2.left_kernel(images))
            rel_span = ideal_span_degree(relations, d, algebra=algebra)
            report.degrees.append(DegreeCheck(d, dim, len(monos) - rel_span.rank,
                                              surjective, kernel == rel_span))
        return report

    # torsion and Adams ---------------------------------------------------------------
    def torsion_and_adams_checks(self, n_max, ks=(2, 3)):
        order = self.ring.group.order
        results = []
        for n in range(1, n_max + 1):
            piece = self.piece(n)
            torsion_ok = all(d != 0 and (order ** n) % d == 0 for d in piece.invariants)
            adams_ok = True
            for k in ks:
                for v in self.lattice(n).hnf():
                    x = self.ring.element(v)
                    diff = adams(k, x) - x * (k ** n)
                    if list(diff.coeffs) not in self.lattice(n + 1):
                        adams_ok = False
            results.append({"n": n, "invariants": piece.invariants, "torsion": torsion_ok, "adams": adams_ok})
        return results


@dataclass
class ModTwoSpan:
    degree: int
    dim: int
    basis: list

    @property
    def labels(self):
        return [b.label for b in self.basis]

    @property
    def rank(self):
        return len(self.basis)


@dataclass
class DegreeCheck:
    degree: int
    dim_gr: int
    dim_presented: int
    surjective: bool
    kernel_matches: bool

    @property
    def ok(self):
        return self.surjective and self.kernel_matches and self.dim_gr == self.dim_presented


@dataclass
class PresentationReport:
    generators: list
    degrees: list = field(default_factory=list)

    @property
    def ok(self):
        return all(d.ok for d in self.degrees)


# --- module-level helpers -----------------------------------------------------

_filtrations = {}


def filtration(group, field="real"):
    """Cached GammaFiltration for a catalog name or a CharTable."""
    field = {"R": "real", "C": "complex"}.get(field, field)
    key = (group if isinstance(group, str) else id(group), field)
    hit = _filtrations.get(key)
    if hit is None:
        table = catalog(group) if isinstance(group, str) else group
        hit = GammaFiltration(RepRing(table, field))
        _filtrations[key] = hit
    return hit


def atoms(group, field="real"):
    return filtration(group, field).atoms


def gamma_lattice(n, group, field="real"):
    return filtration(group, field).lattice(n)


def gr_piece(n, group, field="real"):
    return filtration(group, field).piece(n)


def gr_mod2(n, group, field="real"):
    return filtration(group, field).gr_mod2(n)


def dec_part(n, group, field="real"):
    return filtration(group, field).dec_part(n)


def chern(i, rho, group, field="real"):
    return filtration(group, field).chern(i, rho)


def torsion_and_adams_checks(group, field, n_max):
    return filtration(group, field).torsion_and_adams_checks(n_max)


def first_chern_is_isomorphism(filt):
    """c_1 from the group of lines to gr^1 is a bijective homomorphism."""
    names, lines = line_elements(filt.ring)
    piece = filt.piece(1)
    images = [piece.project(filt.chern(1, name).rep) for name in names]
    if len(set(images)) != len(images):
        return False
    size = 1
    for d in piece.invariants:
        size *= d
    if size != len(images):
        return False
    # homomorphism: c1(L M) = c1(L) + c1(M)
    for a, b in itertools.product(range(len(names)), repeat=2):
        prod = lines.mul(a, b)
        lhs = images[prod]
        rhs = tuple((x + y) % d for x, y, d in zip(images[a], images[b], piece.invariants))
        if lhs != rhs:
            return False
    return True


# --- catalog presentations --------------------------------------------------------

def _poly(n, weights, terms):
    return PolyF2(n, [tuple(t) for t in terms], weights)


def standard_presentation(group, field="real"):
    """(generators, relations) of the known presentation of gr (x) F2 for catalog groups."""
    filt = filtration(group, field)
    ring = filt.ring
    gname = ring.group.name
    if gname == "D4":
        gens = [filt.chern(1, "r1"), filt.chern(1, "r2"), filt.chern(2, "Delta")]
        w = (1, 1, 2)
        rels = [_poly(3, w, [(1, 1, 0)]), _poly(3, w, [(1, 0, 1), (0, 1, 1)])]
        return gens, rels
    if gname.startswith("(Z/2)^"):
        r = int(gname.split("^")[1])
        gens = [filt.chern(1, f"eps_{i + 1}") for i in range(r)]
        w = (1,) * r
        rels = []
        for i, j in itertools.combinations(range(r), 2):
            a = [0] * r
            b = [0] * r
            a[i], a[j] = 2, 1
            b[i], b[j] = 1, 2
            rels.append(_poly(r, w, [a, b]))
        return gens, rels
    if gname.startswith("C"):
        N = ring.group.order
        if field == "complex":
            return [filt.chern(1, "rho^1")], []
        if N % 2:
            return [], []
        if N % 4 == 2:
            return [filt.chern(1, "eps")], []
        gens = [filt.chern(1, "eps"), filt.chern(2, "r_1")]
        return gens, [_poly(2, (1, 2), [(2, 0)])]
    raise ValueError(f"no stored presentation for {gname}")
