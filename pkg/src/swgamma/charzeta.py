"""The character omega: gr R(G, R) (x) F2 -> W*(G)/J_G, and the comparison map zeta from k_*(F)."""

import itertools
import math
from dataclasses import dataclass, field

from . import f2
from .errors import ModelInconsistencyError, UnsupportedCaseError
from .gammagraded import filtration, gr_product
from .polycohom import PolyF2, polynomial_ring, theta_direct
from .repcore import RepRing, catalog, lambda_k, restrict, restriction_matrix
from .steenrod import theta
from .swquotient import QuotientModel, cyclic_model, d4_model, elem_abelian_model


# --- Stiefel-Whitney assignments ------------------------------------------------

@dataclass
class SWAssignment:
    """Total Stiefel-Whitney class of each real irreducible, inside a quotient model's algebra."""

    group: str
    model: QuotientModel
    classes: dict       # name -> [w_0, w_1, ...] as PolyF2

    def w(self, i, name):
        ws = self.classes[name]
        return ws[i] if i < len(ws) else self.model.algebra.zero()


def _series(algebra, parts):
    """[1, parts...] padded into PolyF2 values of the algebra."""
    return [algebra.one()] + [p if p is not None else algebra.zero() for p in parts]


def _group_kind(name):
    table = catalog(name)
    gname = table.group.name
    if gname == "D4":
        return "d4", 0
    if gname.startswith("(Z/2)^"):
        return "elem", int(gname.split("^")[1])
    if gname.startswith("C"):
        return "cyclic", table.group.order
    raise UnsupportedCaseError(f"no cohomology model for {gname}")


def sw_assignment(group, max_degree=16):
    kind, n = _group_kind(group)
    ring = RepRing(catalog(group), "real")
    classes = {}
    if kind == "elem":
        model = elem_abelian_model(n, max_degree)
        alg = model.algebra
        t = alg.gens()
        for name in ring.names:
            if name == "1":
                classes[name] = [alg.one()]
                continue
            w1 = alg.zero()
            for ch in name[len("eps_"):]:
                w1 = w1 + t[int(ch) - 1]
            classes[name] = _series(alg, [w1])
    elif kind == "cyclic":
        model = cyclic_model(n, max_degree)
        alg = model.algebra
        if n % 2:
            x = y = None
        elif n % 4 == 2:
            (x,) = alg.gens()
            y = x * x
        else:
            x, y = alg.gens()
        for name in ring.names:
            if name == "1":
                classes[name] = [alg.one()]
            elif name == "eps":
                classes[name] = _series(alg, [x])
            else:
                k = int(name[len("r_"):])
                # w(r_k) = 1 + (k mod 2) y: r_k has trivial determinant and Euler class k u
                classes[name] = _series(alg, [None, y if (k % 2 and y is not None) else None])
    else:
        model = d4_model(max_degree)
        alg = model.algebra
        W1, W2, W = alg.gens()
        classes = {
            "1": [alg.one()],
            "r1": _series(alg, [W1]),
            "r2": _series(alg, [W2]),
            "r3": _series(alg, [W1 + W2]),
            "Delta": _series(alg, [W1 + W2, W]),
        }
    return SWAssignment(group, model, classes)


def monomial_sw(assign, factors):
    """prod w_k(rho) over a formal Chern monomial."""
    alg = assign.model.algebra
    out = alg.one()
    for k, name in factors:
        out = alg.mul(out, assign.w(k, name))
    return out


def sw_determinant_check(group):
    """w_1(r) = w_1(det r) for every real irreducible r."""
    assign = sw_assignment(group)
    ring = RepRing(catalog(group), "real")
    for name, dim in zip(ring.names, ring.dims):
        det = lambda_k(dim, ring[name])
        lines = [(c, h) for c, h in zip(det.coeffs, ring.names) if c]
        if len(lines) != 1 or lines[0][0] != 1 or ring.dims[ring.names.index(lines[0][1])] != 1:
            return False
        if assign.w(1, name) != assign.w(1, lines[0][1]):
            return False
    return True


# --- omega ----------------------------------------------------------------------

@dataclass
class OmegaDegree:
    degree: int
    basis: list               # GrClass basis of gr^n (x) F2
    images: list              # quotient coordinates of omega(basis element)
    well_defined: bool
    kernel: list              # kernel vectors, as project2 coordinates in gr^n (x) F2
    source_dim: int
    target_dim: int

    @property
    def rank(self):
        return f2.rank(self.images)

    @property
    def is_isomorphism(self):
        return not self.kernel and self.rank == self.target_dim

    @property
    def kernel_space(self):
        return f2.RowSpace(self.kernel)


@dataclass
class OmegaMap:
    group: str
    assignment: SWAssignment
    degrees: dict = field(default_factory=dict)

    def apply(self, n, coords):
        """omega on a class given by project2 coordinates in gr^n (x) F2."""
        deg = self.degrees[n]
        # express coords in the chosen basis
        piece_rows = [b.project2() for b in deg.basis]
        combo = f2.solve_left(piece_rows, coords)
        if combo is None:
            raise ModelInconsistencyError("class outside the span of the chosen basis")
        out = 0
        for i in f2.bits(combo):
            out ^= deg.images[i]
        return out

    def apply_class(self, cls):
        return self.apply(cls.degree, cls.project2())

    def sw_image(self, cls):
        """Quotient coordinates of the formal image prod w_k(rho) of a Chern monomial."""
        model = self.assignment.model
        return model.quotient_coords(monomial_sw(self.assignment, cls.factors), cls.degree)

    @property
    def filtration(self):
        return filtration(self.group, "real")


def omega(group, D, max_degree=16):
    """The character in degrees 1..D, with a well-definedness check on every Chern monomial."""
    assign = sw_assignment(group, max(max_degree, D))
    filt = filtration(group, "real")
    model = assign.model
    om = OmegaMap(group, assign)
    for n in range(1, D + 1):
        span = filt.gr_mod2(n)
        basis = span.basis
        images = [model.quotient_coords(monomial_sw(assign, b.factors), n) for b in basis]
        # every Chern monomial must map consistently with its gr coordinates
        rows_g, rows_h = [], []
        for m in filt.chern_monomials(n):
            rows_g.append(m.project2())
            rows_h.append(model.quotient_coords(monomial_sw(assign, m.factors), n))
        width = max(span.dim, 1)
        joint = [g | (h << width) for g, h in zip(rows_g, rows_h)]
        well_defined = f2.rank(joint) == f2.rank(rows_g)
        if not well_defined:
            raise ModelInconsistencyError(f"omega is not well defined in degree {n} for {group}")
        kernel = []
        piece_rows = [b.project2() for b in basis]
        for combo in f2.left_kernel(images):
            v = 0
            for i in f2.bits(combo):
                v ^= piece_rows[i]
            kernel.append(v)
        om.degrees[n] = OmegaDegree(n, basis, images, well_defined, kernel,
                                    span.dim, model.quotient_dim(n))
    return om


def omega_kernel_generated_by(om, classes):
    """Compare ker omega with the ideal of gr (x) F2 generated by the given classes, degreewise."""
    filt = om.filtration
    return {n: deg.kernel_space == filt.ideal_span(classes, n) for n, deg in om.degrees.items()}


def omega_multiplicative(om, max_total=6):
    """omega(a b) = omega(a) omega(b) on pairs of basis classes."""
    model = om.assignment.model
    for n, m in itertools.combinations_with_replacement(sorted(om.degrees), 2):
        if n + m > max_total or n + m not in om.degrees:
            continue
        for a in om.degrees[n].basis:
            for b in om.degrees[m].basis:
                lhs = om.apply(n + m, gr_product(a, b).project2())
                pa = monomial_sw(om.assignment, a.factors)
                pb = monomial_sw(om.assignment, b.factors)
                rhs = model.quotient_coords(model.algebra.mul(pa, pb), n + m)
                if lhs != rhs:
                    return False
    return True


def omega_on_chern_classes(om):
    """omega(c_i(rho)) = w_i(rho) for every irreducible and every degree computed."""
    filt = om.filtration
    model = om.assignment.model
    for name in filt.ring.names:
        if name == "1":
            continue
        for i in range(1, filt.ring.dims[filt.ring.names.index(name)] + 1):
            if i not in om.degrees:
                continue
            c = filt.chern(i, name)
            lhs = om.apply(i, c.project2())
            rhs = model.quotient_coords(om.assignment.w(i, name), i)
            if lhs != rhs:
                return False
    return True


# --- D4 restrictions --------------------------------------------------------------

# subgroup name, catalog entry, embedding of subgroup elements into D4 (rho^a s^b = a + 4b)
D4_SUBGROUPS = [
    ("V1", "elem_abelian2(2)", [0, 7, 5, 2]),   # <rho s, rho^3 s>
    ("V2", "elem_abelian2(2)", [0, 6, 4, 2]),   # <s, rho^2 s>
    ("C4", "C4", [0, 1, 2, 3]),                  # <rho>
]


def d4_restriction_compatibility(D):
    """omega commutes with restriction to the two Klein subgroups and to C4, degrees <= D."""
    om_g = omega("D4", D)
    ring_g = om_g.filtration.ring
    res_w = d4_model().restriction
    out = {}
    for k, (label, sub, emb) in enumerate(D4_SUBGROUPS):
        om_h = omega(sub, D)
        filt_h = om_h.filtration
        mat = restriction_matrix(ring_g, filt_h.ring, emb)
        model_h = om_h.assignment.model
        ok = True
        for n in range(1, D + 1):
            for b in om_g.degrees[n].basis:
                x = restrict(ring_g.element(b.rep), filt_h.ring, mat)
                lhs = om_h.apply(n, filt_h.piece(n).project2(x.coeffs))
                poly = res_w.apply(monomial_sw(om_g.assignment, b.factors))[k]
                rhs = model_h.quotient_coords(_into(model_h.algebra, poly), n)
                ok &= lhs == rhs
        out[label] = ok
    return out


def _into(algebra, p):
    # same variables, but carry the target algebra's weights
    return algebra.reduce(PolyF2._raw(algebra.nvars, algebra.weights, p.terms))


def sw_restriction_consistent():
    """Total SW classes of D4 irreducibles restrict to those of the restricted representations."""
    assign_g = sw_assignment("D4")
    ring_g = RepRing(catalog("D4"), "real")
    res_w = assign_g.model.restriction
    for k, (label, sub, emb) in enumerate(D4_SUBGROUPS):
        assign_h = sw_assignment(sub)
        ring_h = RepRing(catalog(sub), "real")
        mat = restriction_matrix(ring_g, ring_h, emb)
        alg_h = assign_h.model.algebra
        for name in ring_g.names:
            x = restrict(ring_g[name], ring_h, mat)
            # total class of the restriction, by multiplicativity
            total = alg_h.one()
            for c, hname in zip(x.coeffs, ring_h.names):
                series = alg_h.zero()
                for w in assign_h.classes[hname]:
                    series = series + w
                for _ in range(c):
                    total = alg_h.mul(total, series)
            mine = assign_g.model.algebra.zero()
            for w in assign_g.classes[name]:
                mine = mine + w
            if _into(alg_h, res_w.apply(mine)[k]) != total:
                return False
    return True


# --- W-group cases and zeta -------------------------------------------------------

@dataclass
class WGroupCase:
    case_id: str
    group: str
    description: str
    generators: list          # k_* generator names
    line_names: list          # irreducible line each generator maps to
    relations: list           # exponent-vector lists, one per relation
    reference: object         # callable degree -> dim of k_n
    provenance: str

    def reference_dims(self, D):
        return [self.reference(n) for n in range(1, D + 1)]

    def relation_polys(self):
        k = len(self.generators)
        return [PolyF2(k, [tuple(t) for t in rel]) for rel in self.relations]


def _c_field_case(n):
    gens = [f"l(a{i + 1})" for i in range(n)]
    lines = []
    for i in range(n):
        a = ["0"] * n
        a[i] = "2"
        lines.append("eps_" + "".join(a))
    rels = []
    for i in range(n):
        e = [0] * n
        e[i] = 2
        rels.append([e])
    return WGroupCase(
        f"c-field-{n}", f"z4pow({n})",
        f"field with W-group (Z/4)^{n}: k_* is an exterior algebra on {n} generators",
        gens, lines, rels, lambda d, n=n: math.comb(n, d),
        "derived: exterior algebra dimensions")


CASES = {
    "finite-field": WGroupCase(
        "finite-field", "C4", "finite field F_q, q = 1 mod 4: k_* = F2[l(u)]/(l(u)^2)",
        ["l(u)"], ["eps"], [[[2]]], lambda d: 1 if d <= 1 else 0,
        "stated: k_* of a finite field is concentrated in low degrees; degree 2 vanishes"),
    "real-closed": WGroupCase(
        "real-closed", "C2", "real closed field: k_* = F2[l(-1)]",
        ["l(-1)"], ["eps"], [], lambda d: 1,
        "stated: k_* of a real closed field is polynomial on l(-1)"),
    "dihedral": WGroupCase(
        "dihedral", "D4", "field R((u)): k_* = F2[l(-1), l(u)]/(l(u)^2 + l(-1) l(u))",
        ["l(-1)", "l(u)"], ["r3", "r1"], [[[0, 2], [1, 1]]], lambda d: 2,
        "derived: Matsumoto relation l(u) l(-u) = 0 with l(-u) = l(-1) + l(u)"),
}
for _n in (1, 2, 3):
    CASES[f"c-field-{_n}"] = _c_field_case(_n)


def get_case(case_id):
    try:
        return CASES[case_id]
    except KeyError:
        raise UnsupportedCaseError(f"unknown case {case_id!r}; known: {sorted(CASES)}") from None


@dataclass
class ZetaReport:
    case_id: str
    dec_dims: list
    reference_dims: list
    degrees: list            # DegreeCheck per degree (target = dec part)

    @property
    def dims_match(self):
        return self.dec_dims == self.reference_dims

    @property
    def surjective(self):
        return all(d.surjective for d in self.degrees)

    @property
    def injective_low(self):
        return all(d.kernel_matches for d in self.degrees if d.degree <= 2)

    @property
    def isomorphism(self):
        return all(d.surjective and d.kernel_matches for d in self.degrees)

    @property
    def ok(self):
        return self.dims_match and self.surjective and self.injective_low


def zeta_generators(case):
    filt = filtration(case.group, "real")
    return [filt.chern(1, name) for name in case.line_names]


def zeta_case(case, D):
    """Compare (gr R(G, R) (x) F2)_dec with k_*(F) of the case through degree D."""
    if isinstance(case, str):
        case = get_case(case)
    filt = filtration(case.group, "real")
    dec = [filt.dec_part(n).rank for n in range(1, D + 1)]
    report = filt.check_presentation(zeta_generators(case), case.relation_polys(), D, target="dec")
    return ZetaReport(case.case_id, dec, case.reference_dims(D), report.degrees)


def matsumoto_checks():
    d4 = filtration("D4", "real")
    c4r = filtration("C4", "real")
    c4c = filtration("C4", "complex")
    rho = c4c.chern(1, "rho^1")
    rho2 = c4c.chern(1, "rho^2")
    double = tuple((2 * x) % d if d else 2 * x for x, d in zip(rho.project(), c4c.piece(1).invariants))
    return {
        "c1(r1)c1(r2)=0 in gr R(D4)": (d4.chern(1, "r1") * d4.chern(1, "r2")).is_zero(),
        "c1(eps)^2=0 in gr R(Z/4,R)": (c4r.chern(1, "eps") * c4r.chern(1, "eps")).is_zero(),
        "c1(rho^2)=2c1(rho)=0 in gr R(Z/4,C)/2": rho2.project() == double and rho2.project2() == 0,
    }


def square_diagram_check(case, D):
    """omega(zeta(m)) equals the image of h(m) in W/J for every monomial m in the generators."""
    if isinstance(case, str):
        case = get_case(case)
    _group_kind(case.group)
    om = omega(case.group, D)
    assign = om.assignment
    model = assign.model
    gens = zeta_generators(case)
    ok = True
    for n in range(1, D + 1):
        for exps in itertools.product(range(n + 1), repeat=len(gens)):
            if sum(exps) != n:
                continue
            cls = None
            h = model.algebra.one()
            for g, e, name in zip(gens, exps, case.line_names):
                for _ in range(e):
                    cls = g if cls is None else gr_product(cls, g)
                    h = model.algebra.mul(h, assign.w(1, name))
            lhs = om.apply(n, cls.project2())
            rhs = model.quotient_coords(h, n)
            ok &= lhs == rhs
    ideal_zero = all(model.ideal(n).rank == 0 for n in range(D + 1))
    return {"commutes": ok, "ideal_is_zero": ideal_zero}


def theta_on_galois_model(n):
    """theta_n(t^n) = t^(2^(n-1)) in F2[t], by the Milnor action and by the direct sum."""
    ring = polynomial_ring(1)
    t_n = PolyF2.monomial((n,))
    target = PolyF2.monomial((1 << (n - 1),))
    by_action = ring.steenrod_action(theta(n), t_n) == target
    by_direct = theta_direct(n, [0] * n, 1) == target
    return by_action and by_direct


__all__ = [
    "SWAssignment", "sw_assignment", "sw_determinant_check", "omega", "OmegaMap", "omega_kernel_generated_by",
    "omega_multiplicative", "omega_on_chern_classes", "d4_restriction_compatibility",
    "sw_restriction_consistent", "WGroupCase", "CASES", "get_case", "zeta_case", "ZetaReport",
    "matsumoto_checks", "square_diagram_check", "theta_on_galois_model",
]
