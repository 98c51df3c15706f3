"""The theta-kernel ideal and quotient models.

Every ideal here is computed degreewise inside a finite-dimensional model:
the degree-n piece is the kernel of theta_n, assembled as an F2 matrix.
"""

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import f2
from .errors import ModelInconsistencyError, ResourceCapError
from .polycohom import GradedAlgebra, PolyF2, polynomial_ring, steenrod_action
from .steenrod import theta

DEFAULT_MAX_DEGREE = 16


# --- elementary abelian 2-groups: the subset algebra ------------------------

class SubsetAlgElt:
    """F2-sum of symbols t_{I,n} (I a non-empty bitmask with |I| <= n); (0, 0) is the unit."""

    __slots__ = ("terms",)

    def __init__(self, terms=()):
        acc = set()
        for I, n in terms:
            if I == 0 and n != 0:
                raise ValueError("only the unit has an empty support")
            if bin(I).count("1") > n:
                raise ValueError(f"|I| > n for symbol ({I:b}, {n})")
            acc ^= {(I, n)}
        self.terms = frozenset(acc)

    @classmethod
    def _raw(cls, terms):
        obj = cls.__new__(cls)
        obj.terms = frozenset(terms)
        return obj

    @classmethod
    def unit(cls):
        return cls._raw([(0, 0)])

    @classmethod
    def symbol(cls, subset, n):
        return cls([(f2.pack(i - 1 for i in subset), n)])

    def __add__(self, other):
        return SubsetAlgElt._raw(self.terms ^ other.terms)

    def __mul__(self, other):
        acc = set()
        for I, n in self.terms:
            for J, m in other.terms:
                acc ^= {(I | J, n + m)}
        return SubsetAlgElt._raw(acc)

    def __eq__(self, other):
        if isinstance(other, SubsetAlgElt):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        words = []
        for I, n in sorted(self.terms, key=lambda s: (s[1], s[0])):
            if I == 0:
                words.append("1")
            else:
                words.append("t_{{" + ",".join(str(i + 1) for i in f2.bits(I)) + "}," + str(n) + "}")
        return " + ".join(words)


def reduce_elem_abelian(p):
    """Send each monomial to t_{supp, degree}; realizes H*((Z/2)^r) modulo the theta-kernel ideal."""
    acc = set()
    for exps in p.monomials():
        I = 0
        for i, e in enumerate(exps):
            if e:
                I |= 1 << i
        acc ^= {(I, sum(exps))}
    return SubsetAlgElt._raw(acc)


def subset_algebra_dim(r, n):
    if n == 0:
        return 1
    return sum(math.comb(r, s) for s in range(1, min(r, n) + 1))


def ideal_member_theta(p):
    """True iff theta_{|p|}(p) = 0 (p homogeneous, in degree-1 variables)."""
    if not p:
        return True
    n = p.degree
    return not steenrod_action(theta(n), p)


def elem_abelian_generators(r):
    t = [PolyF2.var(i, r) for i in range(r)]
    return [t[i] * t[i] * t[j] + t[i] * t[j] * t[j] for i, j in itertools.combinations(range(r), 2)]


def ideal_span_degree(gens, d, r=None, algebra=None):
    """Row space (over ``algebra.basis(d)``) of the degree-d piece of the ideal generated by gens."""
    algebra = algebra or polynomial_ring(r)
    space = f2.RowSpace()
    for g in gens:
        if not g:
            continue
        dg = g.degree
        if dg > d:
            continue
        for exps in algebra.basis(d - dg):
            m = PolyF2.monomial(exps, algebra.weights)
            space.add(algebra.coords(algebra.mul(g, m), d))
    return space


# --- OR combinatorics ----------------------------------------------------

def or_op(i, j):
    return i | j


def alpha(i, j, k):
    """Number of ways to write a k-set as I u J with |I| = i, |J| = j (closed form)."""
    if not (max(i, j) <= k <= i + j):
        return 0
    return math.factorial(k) // (math.factorial(k - i) * math.factorial(k - j) * math.factorial(i + j - k))


@lru_cache(maxsize=None)
def union_count(i, j, k):
    """Brute-force count of pairs (I, J) of subsets of a fixed k-set with |I|=i, |J|=j, I u J = K."""
    full = (1 << k) - 1
    Is = [sum(1 << x for x in c) for c in itertools.combinations(range(k), i)]
    Js = [sum(1 << x for x in c) for c in itertools.combinations(range(k), j)]
    return sum(1 for I in Is for J in Js if I | J == full)


def kummer_parity(n, m):
    """binomial(n, m) mod 2 == 1, via supp(m) within supp(n)."""
    if not 0 <= m <= n:
        raise ValueError("need 0 <= m <= n")
    return m & ~n == 0


# --- BO_infinity^N ---------------------------------------------------------

@dataclass(frozen=True)
class ORMonomial:
    """Per factor p_i: (OR of the indices j in w_j(p_i), sum of those j)."""

    factors: tuple

    @property
    def total_degree(self):
        return sum(d for _, d in self.factors)

    @property
    def variables(self):
        """The set {w_{2^k}(p_i)} after expanding each w_j by its binary digits."""
        return frozenset((i, 1 << k) for i, (o, _) in enumerate(self.factors) for k in f2.bits(o))

    def class_key(self):
        return (tuple(o for o, _ in self.factors), self.total_degree)


def bo_normal_form(monomial, N=None):
    """Normal form of a monomial in the classes w_j(p_i), given as pairs (i, j), 1-based i."""
    N = N or max((i for i, _ in monomial), default=1)
    ors = [0] * N
    degs = [0] * N
    for i, j in monomial:
        if j < 1 or not 1 <= i <= N:
            raise ValueError(f"bad factor w_{j}(p_{i})")
        ors[i - 1] |= j
        degs[i - 1] += j
    return ORMonomial(tuple(zip(ors, degs)))


def bo_equal(m1, m2, N=None):
    """Equality modulo the ideal: same total degree and same variables after binary expansion."""
    N = N or max([i for i, _ in list(m1) + list(m2)], default=1)
    a, b = bo_normal_form(m1, N), bo_normal_form(m2, N)
    return a.total_degree == b.total_degree and a.variables == b.variables


def _masks_of_size(i, M):
    return np.array([sum(1 << x for x in c) for c in itertools.combinations(range(M), i)], dtype=np.int64)


def embed_bo_subset(i, M):
    """t_{i,i}: the image of w_i in the subset algebra on M variables, as (masks, degree)."""
    if i > M:
        raise ResourceCapError(f"M={M} too small for w_{i}")
    return _masks_of_size(i, M), i


def subset_product(a, b):
    """Product of two elements given as (mask array, degree); F2 accumulation by counting."""
    masks_a, n = a
    masks_b, m = b
    unions = np.bitwise_or.outer(masks_a, masks_b).ravel()
    vals, counts = np.unique(unions, return_counts=True)
    return vals[counts % 2 == 1], n + m


def or_law_by_expansion(i, j, M=16):
    """Expand t_{i,i} t_{j,j} over M variables and compare with t_{i OR j, i+j}."""
    prod, deg = subset_product(embed_bo_subset(i, M), embed_bo_subset(j, M))
    expected, _ = embed_bo_subset(or_op(i, j), M)
    return deg == i + j and np.array_equal(np.sort(prod), np.sort(expected))


def bo_symmetric_image(monomial, M, N=None):
    """Image of a BO monomial in the subset algebra of N blocks of M variables.

    Elements stay symmetric within each block, so they are kept as F2-sums of
    symbols (k_1..k_N, n) = sum over subsets with block sizes k_i.  Products use
    brute-force union counts, not the closed-form parity rule.
    """
    N = N or max((i for i, _ in monomial), default=1)
    state = {(tuple([0] * N), 0)}
    for i, j in monomial:
        if j > M:
            return frozenset()
        new = set()
        for ks, n in state:
            k0 = ks[i - 1]
            for k in range(max(k0, j), min(M, k0 + j) + 1):
                if k0 == 0:
                    c = 1 if k == j else 0
                else:
                    c = union_count(k0, j, k)
                if c % 2:
                    key = (ks[:i - 1] + (k,) + ks[i:], n + j)
                    new ^= {key}
        state = new
    return frozenset(state)


# --- quotient models -------------------------------------------------------

class QuotientModel:
    """A graded algebra W* with theta_n computed by ``theta_rows``; J = degreewise theta-kernel."""

    def __init__(self, name, algebra, theta_images, max_degree=DEFAULT_MAX_DEGREE):
        self.name = name
        self.algebra = algebra
        self._theta_images = theta_images
        self.max_degree = max_degree
        self._ideal = {}

    def _check(self, d):
        if d > self.max_degree:
            raise ResourceCapError(f"degree {d} exceeds model cap {self.max_degree}")

    def theta_row(self, p, n):
        return self._theta_images(p, n)

    def ideal(self, n):
        """Row space of J in degree n over algebra.basis(n)."""
        self._check(n)
        if n not in self._ideal:
            basis = self.algebra.basis(n)
            # theta images are sets of target monomials; index them as they appear
            index = {}
            rows = []
            for e in basis:
                v = 0
                for key in self._theta_images(PolyF2.monomial(e, self.algebra.weights), n):
                    v ^= 1 << index.setdefault(key, len(index))
                rows.append(v)
            self._ideal[n] = f2.RowSpace(f2.left_kernel(rows))
        return self._ideal[n]

    def contains(self, p):
        if not p:
            return True
        n = p.degree
        return self.algebra.coords(p, n) in self.ideal(n)

    def quotient_dim(self, n):
        return self.algebra.dim(n) - self.ideal(n).rank

    def quotient_dims(self, D):
        return [self.quotient_dim(n) for n in range(D + 1)]

    def quotient_coords(self, p, n):
        """Coordinates of p modulo J in degree n, over the non-pivot basis positions."""
        J = self.ideal(n)
        v = J.reduce(self.algebra.coords(p, n))
        pivots = {b.bit_length() - 1 for b in J.basis()}
        free = [k for k in range(self.algebra.dim(n)) if k not in pivots]
        out = 0
        for pos, k in enumerate(free):
            if (v >> k) & 1:
                out |= 1 << pos
        return out

    def ideal_generated_by(self, gens, n):
        return ideal_span_degree(gens, n, algebra=self.algebra)

    def ideal_equals_generated(self, gens, D):
        return all(self.ideal(n) == self.ideal_generated_by(gens, n) for n in range(D + 1))


def _direct_theta(algebra):
    def images(p, n):
        if n == 0:
            return p.terms
        return algebra.theta(n, p, enforce_cap=False).terms
    return images


def elem_abelian_model(r, max_degree=DEFAULT_MAX_DEGREE):
    alg = polynomial_ring(r)
    return QuotientModel(f"(Z/2)^{r}", alg, _direct_theta(alg), max_degree)


def cyclic_algebra(N):
    """H*(C_N; F2) with its coaction: trivial, F2[x], or F2[x,y]/(x^2) with y = w_2(r_1)."""
    if N % 2:
        return GradedAlgebra([], (), [])
    if N % 4 == 2:
        return GradedAlgebra(["x"], (1,), [("line", 0)])
    # y is pulled back from BS^1, so its coaction is y -> sum_i y^(2^i) (x) xi_i^2
    return GradedAlgebra(["x", "y"], (1, 2), [("line", 0), ("square_line", 1)], zero_monomials=[(2, 0)])


def c4_model(max_degree=DEFAULT_MAX_DEGREE):
    alg = cyclic_algebra(4)
    return QuotientModel("C4", alg, _direct_theta(alg), max_degree)


def cyclic_model(N, max_degree=DEFAULT_MAX_DEGREE):
    alg = cyclic_algebra(N)
    return QuotientModel(f"C{N}", alg, _direct_theta(alg), max_degree)


class RestrictionMap:
    """Ring map from a presented algebra into a product of target algebras."""

    def __init__(self, source, targets, images):
        self.source = source
        self.targets = targets
        self.images = images  # images[k][i] = image of generator i in target k

    def apply(self, p):
        out = []
        for alg, ims in zip(self.targets, self.images):
            acc = alg.zero()
            for exps in p.monomials():
                term = alg.one()
                for i, e in enumerate(exps):
                    if e:
                        term = alg.mul(term, ims[i] ** e)
                acc = acc + term
            out.append(alg.reduce(acc))
        return out

    def coords(self, p, d):
        v, shift = 0, 0
        for alg, q in zip(self.targets, self.apply(p)):
            v |= alg.coords(q, d) << shift
            shift += alg.dim(d)
        return v

    def injective_in_degree(self, d):
        rows = [self.coords(PolyF2.monomial(e, self.source.weights), d) for e in self.source.basis(d)]
        return f2.rank(rows) == len(rows)


def d4_algebra():
    """F2[W1, W2, W] / (W1 W2): W1 = w1(r1), W2 = w1(r2), W = w2(Delta)."""
    return GradedAlgebra(["W1", "W2", "W"], (1, 1, 2), [None, None, None], zero_monomials=[(1, 1, 0)])


def d4_restriction():
    src = d4_algebra()
    klein = polynomial_ring(2)
    c4 = cyclic_algebra(4)
    a, b = klein.gens()
    x, y = c4.gens()
    zero2 = klein.zero()
    images = [
        [a + b, zero2, a * b],
        [zero2, a + b, a * b],
        [x, x, y],
    ]
    return RestrictionMap(src, [klein, klein, c4], images)


def d4_model(max_degree=DEFAULT_MAX_DEGREE, check_injective=True):
    res = d4_restriction()
    if check_injective:
        for d in range(max_degree + 1):
            if not res.injective_in_degree(d):
                raise ModelInconsistencyError(f"D4 restriction is not injective in degree {d}")

    def images(p, n):
        out = set()
        for k, (alg, q) in enumerate(zip(res.targets, res.apply(p))):
            image = q if n == 0 else alg.theta(n, q, enforce_cap=False)
            out.update((k, m) for m in image.terms)
        return out

    model = QuotientModel("D4", res.source, images, max_degree)
    model.restriction = res
    return model


def d4_ideal_generators():
    W1, W2, W = d4_algebra().gens()
    return [W1 * W, W2 * W]


def c4_ideal_generators():
    x, y = cyclic_algebra(4).gens()
    return [x * y]
