"""Registry of checkable claims and the verification report."""

import json
import math
import random
import time
from dataclasses import dataclass, field

from . import charzeta as cz
from . import f2
from .errors import ResourceCapError
from .gammagraded import filtration, first_chern_is_isomorphism, standard_presentation
from .polycohom import (PolyF2, mk_product, steenrod_action, sw_of_product_of_lines, sw_virtual,
                        theta_action, theta_direct)
from .steenrod import SteenrodElement, antipode, theta, to_serre_cartan
from .swquotient import (alpha, bo_equal, c4_ideal_generators, c4_model, cyclic_model, d4_ideal_generators,
                         d4_model, elem_abelian_generators, elem_abelian_model, ideal_member_theta,
                         ideal_span_degree, kummer_parity, or_law_by_expansion, or_op,
                         reduce_elem_abelian, union_count)

SCHEMA = 1

THETA_GOLDEN = {
    3: "Sq^1",
    4: "Sq^3 Sq^1 + Sq^4",
    5: "Sq^7 Sq^3 Sq^1 + Sq^8 Sq^2 Sq^1",
    6: "Sq^15 Sq^7 Sq^3 Sq^1 + Sq^16 Sq^6 Sq^3 Sq^1 + Sq^16 Sq^7 Sq^3 + Sq^16 Sq^8 Sq^2",
    7: ("Sq^31 Sq^15 Sq^7 Sq^3 Sq^1 + Sq^32 Sq^14 Sq^7 Sq^3 Sq^1 + Sq^32 Sq^15 Sq^7 Sq^2 Sq^1"
        " + Sq^32 Sq^16 Sq^6 Sq^2 Sq^1 + Sq^32 Sq^16 Sq^8 Sq^1"),
}

# catalog groups of order <= 16 used for torsion and Adams checks
SMALL_GROUPS = ["C2", "C3", "C4", "C5", "C6", "C8", "C12", "C16", "elem_abelian2(1)", "elem_abelian2(2)",
                "elem_abelian2(3)", "elem_abelian2(4)", "z4pow(2)", "D4"]

CYCLIC_REAL_CASES = {1: [3, 5], 2: [2, 6, 10], 3: [4, 8, 12]}


# --- individual checks ---------------------------------------------------------------

def theta_golden(ns=range(3, 8)):
    return {n: str(to_serre_cartan(theta(n))) == THETA_GOLDEN[n] for n in ns}


def antipode_identity(ns=range(3, 8)):
    return {n: theta(n) == antipode(SteenrodElement.sq((1 << (n - 1)) - n)) for n in ns}


def _t_product(n):
    out = PolyF2.one(n)
    for i in range(n):
        out = out * PolyF2.var(i, n)
    return out


def three_way_identity(n):
    p = _t_product(n)
    a = theta_action(n, p)
    return a == theta_direct(n) and a == mk_product(n)


def theta_vanishing(n):
    """w_i of prod(L_i - 1) vanishes below 2^(n-1); the top class is theta_n(t_1...t_n)."""
    top = 1 << (n - 1)
    lines = [PolyF2.var(i, n) for i in range(n)]
    w = sw_of_product_of_lines(lines, top)
    low = all(not w.w(i) for i in range(1, top))
    return low and w.w(top) == theta_action(n, _t_product(n))


def first_nonzero_power_of_two(samples=200, seed=0, nvars=3, D=16):
    rng = random.Random(seed)
    for _ in range(samples):
        k = rng.randint(1, 5)
        plus = [PolyF2(nvars, [1 << (16 * i) for i in range(nvars) if rng.random() < 0.5]) for _ in range(k)]
        minus = [PolyF2(nvars, [1 << (16 * i) for i in range(nvars) if rng.random() < 0.5]) for _ in range(k)]
        i = sw_virtual(plus, minus, D).first_nonzero()
        if i is not None and i & (i - 1):
            return False
    return True


def elem_abelian_ideal(r, D):
    """theta-kernel = ideal on t_i^2 t_j + t_i t_j^2 = kernel of the subset-algebra reduction."""
    model = elem_abelian_model(r)
    alg = model.algebra
    gens = elem_abelian_generators(r)
    for d in range(1, D + 1):
        basis = alg.basis(d)
        by_theta = model.ideal(d)
        by_gens = ideal_span_degree(gens, d, r)
        if by_theta != by_gens:
            return False
        # kernel of the reduction: group monomials by their symbol
        symbols = {}
        for k, e in enumerate(basis):
            key = next(iter(reduce_elem_abelian(PolyF2.monomial(e)).terms))
            symbols.setdefault(key, []).append(k)
        red = f2.RowSpace()
        for ks in symbols.values():
            for k in ks[1:]:
                red.add((1 << ks[0]) | (1 << k))
        if red != by_theta:
            return False
        # generic Milnor action on every basis monomial, as a third route
        index, rows = {}, []
        op = theta(d)
        for e in basis:
            v = 0
            for m in steenrod_action(op, PolyF2.monomial(e)).terms:
                v ^= 1 << index.setdefault(m, len(index))
            rows.append(v)
        if f2.RowSpace(f2.left_kernel(rows)) != by_theta:
            return False
        if not all(ideal_member_theta(alg.from_coords(b, d)) for b in by_theta.basis()):
            return False
    return True


def or_lemma(limit=64):
    """alpha_{i,j,k} is odd for exactly one k, namely i OR j."""
    for i in range(limit + 1):
        for j in range(limit + 1):
            odd = [k for k in range(max(i, j), i + j + 1) if alpha(i, j, k) % 2]
            if odd != [or_op(i, j)]:
                return False
    return True


def alpha_matches_brute_force(limit=6):
    return all(alpha(i, j, k) == union_count(i, j, k)
               for i in range(limit + 1) for j in range(limit + 1) for k in range(limit * 2 + 1)
               if k <= 12)


def kummer(limit=64):
    return all(kummer_parity(n, m) == (math.comb(n, m) % 2 == 1)
               for n in range(limit + 1) for m in range(n + 1))


def bo_relations():
    return {
        "w5(p1)=w1(p1)w4(p1)": bo_equal([(1, 5)], [(1, 1), (1, 4)]),
        "w1(E)w2(F)^2=w1(E)^3w2(F)": bo_equal([(1, 1), (2, 2), (2, 2)], [(1, 1), (1, 1), (1, 1), (2, 2)]),
        "or-law M=16": all(or_law_by_expansion(i, j, 16) for i in range(1, 5) for j in range(1, 5)),
    }


def bounded_quotients(D=16):
    models = [elem_abelian_model(r) for r in (1, 2, 3)] + [cyclic_model(N) for N in (2, 3, 4, 6, 8)]
    models.append(d4_model())
    out = {}
    for m in models:
        dims = m.quotient_dims(D)
        tail = dims[D // 2:]
        # eventually periodic with period <= 2 and bounded
        out[m.name] = all(tail[k] == tail[k + 2] for k in range(len(tail) - 2))
    return out


def d4_injectivity(D):
    """Restriction to V1, V2, C4 is injective on W(D4), and on the quotients by J."""
    model = d4_model(max(D, 1))
    res = model.restriction
    models_h = [elem_abelian_model(2), elem_abelian_model(2), c4_model()]
    for d in range(1, D + 1):
        if not res.injective_in_degree(d):
            return False
        # J(D4) in degree d = preimage of the product of the J(H)
        alg = model.algebra
        basis = alg.basis(d)
        rows = []
        for e in basis:
            images = res.apply(PolyF2.monomial(e, alg.weights))
            v, shift = 0, 0
            for mh, q in zip(models_h, images):
                q = cz._into(mh.algebra, q)
                v |= mh.quotient_coords(q, d) << shift
                shift += mh.quotient_dim(d)
            rows.append(v)
        if f2.RowSpace(f2.left_kernel(rows)) != model.ideal(d):
            return False
    return True


def cyclic_complex(N, D):
    filt = filtration(f"C{N}", "complex")
    return all(filt.piece(n).invariants == [N] for n in range(1, D + 1))


def cyclic_real(N, D):
    gens, rels = standard_presentation(f"C{N}", "real")
    rep = filtration(f"C{N}", "real").check_presentation(gens, rels, D)
    ok = rep.ok
    if N % 4 == 0:
        eps = filtration(f"C{N}", "real").chern(1, "eps")
        ok &= (eps * eps).is_zero()
    return ok


def presentation_ok(group, D):
    gens, rels = standard_presentation(group)
    return filtration(group).check_presentation(gens, rels, D).ok


def gamma_rank(group, field, D):
    filt = filtration(group, field)
    c = filt.ring.rank - 1
    return all(filt.lattice(n).rank == c for n in range(1, D + 1))


def torsion_adams(group, D):
    out = True
    fields = ["complex", "real"]
    for fld in fields:
        rows = filtration(group, fld).torsion_and_adams_checks(D)
        out &= all(r["torsion"] and r["adams"] for r in rows)
    return out


def omega_suite(group, D):
    om = cz.omega(group, D)
    return {
        "chern classes": cz.omega_on_chern_classes(om),
        "multiplicative": cz.omega_multiplicative(om, min(D, 6)),
        "determinant": cz.sw_determinant_check(group),
    }


def elem_abelian_omega_iso(r, D):
    om = cz.omega(f"elem_abelian2({r})", D)
    return all(d.is_isomorphism for d in om.degrees.values())


def d4_gr_relations():
    f = filtration("D4")
    r1, r2, delta = f.chern(1, "r1"), f.chern(1, "r2"), f.chern(2, "Delta")
    return (r1 * r2).is_zero() and (r1 * delta).project2() == (r2 * delta).project2()


def d4_kernel(D):
    om = cz.omega("D4", D)
    f = om.filtration
    gens = [f.chern(1, "r1") * f.chern(2, "Delta"), f.chern(1, "r2") * f.chern(2, "Delta")]
    return all(cz.omega_kernel_generated_by(om, gens).values())


def c4_kernel(D):
    om = cz.omega("C4", D)
    f = om.filtration
    return all(cz.omega_kernel_generated_by(om, [f.chern(1, "eps") * f.chern(2, "r_1")]).values())


# --- registry --------------------------------------------------------------------------

@dataclass
class Claim:
    claim_id: str
    anchor: str
    run: object      # callable max_degree -> dict of sub-claim name -> bool


def _thm_theta_n(D):
    n_max = min(max(D, 3), 6)
    out = {f"golden theta_{n}": ok for n, ok in theta_golden().items()}
    out.update({f"antipode n={n}": ok for n, ok in antipode_identity().items()})
    out.update({f"vanishing n={n}": theta_vanishing(n) for n in range(1, n_max + 1)})
    return out


def _lem_key(D):
    return {f"n={n}": three_way_identity(n) for n in range(1, min(max(D, 3), 6) + 1)}


def _lem_first_sw(D):
    return {"first nonzero index is a power of two": first_nonzero_power_of_two()}


def _prop_ideal_elem(D):
    return {f"r={r}": elem_abelian_ideal(r, D) for r in (1, 2, 3)}


def _lem_or(D):
    out = {"unique odd alpha at i OR j": or_lemma(), "alpha closed form": alpha_matches_brute_force(),
           "kummer parity": kummer()}
    out.update(bo_relations())
    return out


def _coro_bounded(D):
    return bounded_quotients()


def _lem_preserves(D):
    out = {"D4 quotient detection": d4_injectivity(D)}
    out.update({f"omega commutes with restriction to {k}": v
                for k, v in cz.d4_restriction_compatibility(D).items()})
    out["SW classes restrict"] = cz.sw_restriction_consistent()
    return out


def _ex_cyclic_over_reals(D):
    return {"J(C4) = (x y)": c4_model().ideal_equals_generated(c4_ideal_generators(), 16),
            "ker omega = (c1(eps) c2(r_1))": c4_kernel(D)}


def _prop_cyclic_alg_closed(D):
    return {f"N={N}": cyclic_complex(N, D) for N in (2, 3, 4, 6, 8)}


def _prop_cyclic_real(D):
    return {f"case {c} N={N}": cyclic_real(N, D) for c, Ns in CYCLIC_REAL_CASES.items() for N in Ns}


def _lem_degree_1(D):
    return {f"{g} {fld}": first_chern_is_isomorphism(filtration(g, fld))
            for g in ("C2", "C4", "C6", "elem_abelian2(2)", "D4") for fld in ("complex", "real")}


def _coro_gr_bounded(D):
    return {f"{g} {fld}": gamma_rank(g, fld, D)
            for g in ("C4", "elem_abelian2(2)", "D4") for fld in ("complex", "real")}


def _lem_torsion(D):
    return {g: torsion_adams(g, D) for g in SMALL_GROUPS}


def _thm_chern_character(D):
    out = {}
    for g in ("C2", "C4", "C6", "elem_abelian2(2)", "D4"):
        out.update({f"{g} {k}": v for k, v in omega_suite(g, D).items()})
    out.update({f"(Z/2)^{r} presentation": presentation_ok(f"elem_abelian2({r})", D) for r in (1, 2, 3)})
    out.update({f"(Z/2)^{r} omega iso": elem_abelian_omega_iso(r, D) for r in (1, 2, 3)})
    return out


def _prop_graded_d4(D):
    return {
        "gr relations": d4_gr_relations(),
        "presentation": presentation_ok("D4", D),
        "J(D4) = (W1 W, W2 W)": d4_model().ideal_equals_generated(d4_ideal_generators(), max(D, 8)),
        "ker omega": d4_kernel(D),
    }


def _thm_map_k_to_gr(D):
    return cz.matsumoto_checks()


def _zeta_cases(D):
    cases = ["finite-field", "real-closed", "dihedral", "c-field-1", "c-field-2"]
    return {c: cz.zeta_case(c, D) for c in cases}


def _thm_map_k_to_grw(D):
    out = {f"{c} dims": r.dims_match for c, r in _zeta_cases(D).items()}
    for c in ("finite-field", "real-closed", "dihedral"):
        sq = cz.square_diagram_check(c, D)
        out[f"{c} square commutes"] = sq["commutes"]
    out["real-closed J = 0"] = cz.square_diagram_check("real-closed", D)["ideal_is_zero"]
    return out


def _lem_low_degrees(D):
    out = {}
    for c, r in _zeta_cases(D).items():
        out[f"{c} surjective"] = r.surjective
        out[f"{c} injective in degrees 1, 2"] = r.injective_low
    return out


def _lem_theta_fields(D):
    return {f"n={n}": cz.theta_on_galois_model(n) for n in range(1, 8)}


CLAIMS = [
    Claim("thm-theta-n", "theta_n sends t_1...t_n to w of degree 2^(n-1) of prod(L_i - 1)", _thm_theta_n),
    Claim("lem-key", "theta_n(t_1...t_n) equals the binary power sum and the product of m_k over odd k", _lem_key),
    Claim("lem-first-sw", "the first nonzero SW class of a virtual bundle of rank 0 sits in a power of two",
          _lem_first_sw),
    Claim("prop-ideal-elementary-abelian", "J of (Z/2)^r is generated by t_i^2 t_j + t_i t_j^2",
          _prop_ideal_elem),
    Claim("lem-or", "the unique odd alpha_{i,j,k} is at k = i OR j; BO relations follow", _lem_or),
    Claim("coro-bounded", "dim W^n / J^n is bounded in n", _coro_bounded),
    Claim("lem-preserves-injectivity", "injective restriction stays injective on quotients by J",
          _lem_preserves),
    Claim("ex-cyclic-over-reals", "J(Z/4) = (x y) and ker omega = (c1(eps) c2(r_1))", _ex_cyclic_over_reals),
    Claim("prop-cyclic-alg-closed", "gr^n R(C_N, C) = Z/N for n >= 1", _prop_cyclic_alg_closed),
    Claim("prop-cyclic-real", "gr R(C_N, R) (x) F2 in the three parity cases", _prop_cyclic_real),
    Claim("lem-degree-1", "c_1 identifies the group of lines with gr^1", _lem_degree_1),
    Claim("coro-gr-R-bounded", "Gamma^n is free of rank #irr - 1 for n >= 1", _coro_gr_bounded),
    Claim("lem-torsion", "|G|^n kills gr^n and Psi^k acts by k^n", _lem_torsion),
    Claim("thm-chern-character", "omega(c_i(rho)) = w_i(rho) defines a ring map", _thm_chern_character),
    Claim("prop-graded-D4", "gr R(D4) (x) F2 presentation, J(D4) and ker omega", _prop_graded_d4),
    Claim("thm-map-K-to-gr", "Matsumoto relations hold among first Chern classes", _thm_map_k_to_gr),
    Claim("thm-map-K-to-grW", "zeta matches k_* on the W-group catalog and the square commutes",
          _thm_map_k_to_grw),
    Claim("lem-ourmap-iso-lowdegrees", "zeta is onto the decomposable part and injective in degrees 1, 2",
          _lem_low_degrees),
    Claim("lem-theta-n-for-fields", "theta_n(t^n) = t^(2^(n-1)) in F2[t]", _lem_theta_fields),
]

CLAIM_IDS = [c.claim_id for c in CLAIMS]
_BY_ID = {c.claim_id: c for c in CLAIMS}


@dataclass
class ClaimResult:
    claim_id: str
    anchor: str
    status: str          # verified | failed | skipped-cap
    elapsed: float
    details: dict = field(default_factory=dict)

    def to_json(self, timing=True):
        out = {"id": self.claim_id, "anchor": self.anchor, "status": self.status, "details": self.details}
        if timing:
            out["elapsed_s"] = round(self.elapsed, 3)
        return out


@dataclass
class VerificationReport:
    max_degree: int
    results: list = field(default_factory=list)

    @property
    def ok(self):
        return all(r.status == "verified" for r in self.results)

    @property
    def capped(self):
        return any(r.status == "skipped-cap" for r in self.results)

    def to_json(self, timing=True):
        return {"schema": SCHEMA, "max_degree": self.max_degree,
                "claims": [r.to_json(timing) for r in self.results]}

    def dumps(self, timing=True):
        return json.dumps(self.to_json(timing), sort_keys=True, indent=2)

    def text(self):
        lines = []
        for r in self.results:
            lines.append(f"{r.claim_id}: {r.status}")
            for k, v in r.details.items():
                lines.append(f"  {k}: {v}")
        return "\n".join(lines)


def get_claim(claim_id):
    try:
        return _BY_ID[claim_id]
    except KeyError:
        raise KeyError(f"unknown claim {claim_id!r}") from None


def run_claim(claim, max_degree=6):
    start = time.perf_counter()
    try:
        subs = claim.run(max_degree)
        details = {str(k): bool(v) for k, v in subs.items()}
        status = "verified" if all(details.values()) else "failed"
    except ResourceCapError as exc:
        details, status = {"cap": str(exc)}, "skipped-cap"
    return ClaimResult(claim.claim_id, claim.anchor, status, time.perf_counter() - start, details)


def verify(ids="all", max_degree=6):
    if ids == "all":
        ids = CLAIM_IDS
    elif isinstance(ids, str):
        ids = [ids]
    claims = [get_claim(i) for i in ids]
    report = VerificationReport(max_degree)
    report.results = [run_claim(c, max_degree) for c in claims]
    return report
