"""F2 polynomial algebras with the Steenrod action computed through the Milnor coaction.

Monomials are packed into Python ints, ``FIELD`` bits per variable, so that
multiplying monomials is integer addition.  Exponents must stay below
2**FIELD; every degree this package handles is far below that.
"""

import itertools
from functools import lru_cache

from . import f2
from .errors import ResourceCapError
from .steenrod import SteenrodElement, get_cap_degree, milnor_degree

FIELD = 16
MASK = (1 << FIELD) - 1


def pack_exponents(exps):
    m = 0
    for i, e in enumerate(exps):
        if e < 0 or e > MASK:
            raise ValueError(f"exponent {e} out of range")
        m |= e << (FIELD * i)
    return m


def unpack_exponents(m, nvars):
    return tuple((m >> (FIELD * i)) & MASK for i in range(nvars))


class PolyF2:
    """Polynomial over F2 in ``nvars`` variables with integer weights (default 1)."""

    __slots__ = ("nvars", "weights", "terms")

    def __init__(self, nvars, terms=(), weights=None):
        self.nvars = nvars
        self.weights = tuple(weights) if weights is not None else (1,) * nvars
        acc = set()
        for t in terms:
            m = pack_exponents(t) if isinstance(t, tuple) else t
            if m in acc:
                acc.remove(m)
            else:
                acc.add(m)
        self.terms = frozenset(acc)

    @classmethod
    def _raw(cls, nvars, weights, terms):
        obj = cls.__new__(cls)
        obj.nvars = nvars
        obj.weights = weights
        obj.terms = terms
        return obj

    def _like(self, terms):
        return PolyF2._raw(self.nvars, self.weights, frozenset(terms))

    @classmethod
    def zero(cls, nvars, weights=None):
        return cls(nvars, (), weights)

    @classmethod
    def one(cls, nvars, weights=None):
        return cls(nvars, [0], weights)

    @classmethod
    def var(cls, i, nvars, weights=None):
        """The i-th variable, 0-based."""
        return cls(nvars, [1 << (FIELD * i)], weights)

    @classmethod
    def monomial(cls, exps, weights=None):
        return cls(len(exps), [tuple(exps)], weights)

    def monomials(self):
        return sorted((unpack_exponents(m, self.nvars) for m in self.terms), reverse=True)

    def mono_degree(self, m):
        d = 0
        for i in range(self.nvars):
            d += ((m >> (FIELD * i)) & MASK) * self.weights[i]
        return d

    def degrees(self):
        return {self.mono_degree(m) for m in self.terms}

    def is_homogeneous(self):
        return len(self.degrees()) <= 1

    @property
    def degree(self):
        ds = self.degrees()
        if len(ds) > 1:
            raise ValueError("polynomial is not homogeneous")
        return ds.pop() if ds else None

    def component(self, d):
        return self._like(m for m in self.terms if self.mono_degree(m) == d)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, PolyF2):
            return self.nvars == other.nvars and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.nvars, self.terms))

    def __add__(self, other):
        if isinstance(other, int):
            other = PolyF2.one(self.nvars, self.weights) if other % 2 else PolyF2.zero(self.nvars, self.weights)
        return self._like(self.terms ^ other.terms)

    __radd__ = __add__
    __sub__ = __add__

    def __mul__(self, other):
        if isinstance(other, int):
            return self if other % 2 else self._like(())
        acc = set()
        for a in self.terms:
            for b in other.terms:
                acc ^= {a + b}
        return self._like(acc)

    __rmul__ = __mul__

    def __pow__(self, e):
        result = PolyF2.one(self.nvars, self.weights)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                # Frobenius: squaring is additive in characteristic 2
                base = base._like(2 * m for m in base.terms)
        return result

    def substitute(self, images):
        """Ring map sending variable i to images[i] (all in one target ring)."""
        target = images[0]
        out = PolyF2.zero(target.nvars, target.weights)
        cache = {}
        for m in self.terms:
            term = PolyF2.one(target.nvars, target.weights)
            for i, e in enumerate(unpack_exponents(m, self.nvars)):
                if e:
                    key = (i, e)
                    if key not in cache:
                        cache[key] = images[i] ** e
                    term = term * cache[key]
            out = out + term
        return out

    def __repr__(self):
        return self.to_string()

    def to_string(self, names=None):
        if not self.terms:
            return "0"
        names = names or [f"t{i + 1}" for i in range(self.nvars)]
        words = []
        for exps in self.monomials():
            parts = []
            for name, e in zip(names, exps):
                if e == 1:
                    parts.append(name)
                elif e > 1:
                    parts.append(f"{name}^{e}")
            words.append("*".join(parts) if parts else "1")
        return " + ".join(words)


def poly_ring_vars(r):
    return [PolyF2.var(i, r) for i in range(r)]


def elementary_symmetric(j, m):
    terms = []
    for S in itertools.combinations(range(m), j):
        exps = [0] * m
        for i in S:
            exps[i] = 1
        terms.append(tuple(exps))
    return PolyF2(m, terms)


def monomials_of_degree(d, weights):
    """Exponent tuples of weighted degree d, in lexicographic order."""
    n = len(weights)
    out = []

    def rec(i, rem, acc):
        if i == n - 1:
            if rem % weights[i] == 0:
                out.append(tuple(acc + [rem // weights[i]]))
            return
        for e in range(rem // weights[i] + 1):
            rec(i + 1, rem - e * weights[i], acc + [e])

    if n == 0:
        return [()] if d == 0 else []
    rec(0, d, [])
    return sorted(out)


# --- graded algebras with a Milnor coaction -------------------------------

def _dual_degree(R):
    return milnor_degree(R)


def _scale_dual(R, k):
    return tuple(k * r for r in R)


def _add_dual(a, b):
    if len(a) < len(b):
        a, b = b, a
    return tuple(x + (b[i] if i < len(b) else 0) for i, x in enumerate(a))


def _xi(j):
    # exponent tuple of xi_j (xi_0 = 1)
    return () if j == 0 else (0,) * (j - 1) + (1,)


class GradedAlgebra:
    """F2[generators] / (monomial relations), with generator degrees and coaction.

    ``coaction[i]`` lists the terms (monomial exponents, xi exponents) of the
    Milnor coaction of generator i.  For a degree-1 class t this is
    t^(2^j) (x) xi_j for all j >= 0, which ``polynomial`` builds.
    """

    def __init__(self, names, weights, coaction, zero_monomials=()):
        self.names = list(names)
        self.weights = tuple(weights)
        self.nvars = len(self.weights)
        self.zero_monomials = [pack_exponents(z) for z in zero_monomials]
        self._zero_exps = [tuple(z) for z in zero_monomials]
        self._coaction_spec = coaction
        self._power_cache = {}

    @classmethod
    def polynomial(cls, r, names=None):
        names = names or [f"t{i + 1}" for i in range(r)]
        return cls(names, (1,) * r, [("line", i) for i in range(r)])

    # elements ---------------------------------------------------------------
    def gen(self, i):
        return PolyF2.var(i, self.nvars, self.weights)

    def gens(self):
        return [self.gen(i) for i in range(self.nvars)]

    def one(self):
        return PolyF2.one(self.nvars, self.weights)

    def zero(self):
        return PolyF2.zero(self.nvars, self.weights)

    def _is_zero_mono(self, m):
        if not self.zero_monomials:
            return False
        exps = unpack_exponents(m, self.nvars)
        for z in self._zero_exps:
            if all(e >= ze for e, ze in zip(exps, z)):
                return True
        return False

    def reduce(self, p):
        if not self.zero_monomials:
            return p
        return PolyF2._raw(self.nvars, self.weights,
                           frozenset(m for m in p.terms if not self._is_zero_mono(m)))

    def mul(self, a, b):
        return self.reduce(a * b)

    def element(self, terms):
        return self.reduce(PolyF2(self.nvars, terms, self.weights))

    def basis(self, d):
        return [e for e in monomials_of_degree(d, self.weights)
                if not self._is_zero_mono(pack_exponents(e))]

    def dim(self, d):
        return len(self.basis(d))

    def coords(self, p, d):
        """Pack the degree-d part of p as a bit vector over ``basis(d)``."""
        index = {pack_exponents(e): i for i, e in enumerate(self.basis(d))}
        v = 0
        for m in self.reduce(p).terms:
            if self.mono_degree(m) == d:
                v ^= 1 << index[m]
        return v

    def from_coords(self, v, d):
        B = self.basis(d)
        return self.element([B[i] for i in f2.bits(v)])

    def mono_degree(self, m):
        return sum(((m >> (FIELD * i)) & MASK) * w for i, w in enumerate(self.weights))

    # coaction -----------------------------------------------------------------
    def _frobenius_kind(self, i):
        spec = self._coaction_spec[i]
        if isinstance(spec, tuple) and spec and spec[0] in ("line", "square_line"):
            return spec[0]
        return None

    def _gen_coaction(self, i, max_dual):
        kind = self._frobenius_kind(i)
        if kind is not None:
            # g -> sum_j g^(2^j) (x) xi_j  (line)  or  xi_j^2  (square_line)
            k = 1 if kind == "line" else 2
            out = []
            j = 0
            while k * ((1 << j) - 1) <= max_dual:
                out.append(((1 << j) << (FIELD * i), _scale_dual(_xi(j), k)))
                j += 1
            return out
        return [(pack_exponents(m), tuple(R)) for m, R in spec if _dual_degree(R) <= max_dual]

    def _power_coaction(self, i, e, max_dual, keep_dual):
        """Coaction of gen_i^e as dict key -> 1 (F2), key = (mono, R) or (mono, deg(R))."""
        key = (i, e, max_dual, keep_dual)
        hit = self._power_cache.get(key)
        if hit is not None:
            return hit
        base = self._gen_coaction(i, max_dual)
        acc = {(0, () if keep_dual else 0)}
        s = 0
        while e >> s:
            if (e >> s) & 1:
                k = 1 << s
                # Frobenius: (sum a)^(2^s) = sum a^(2^s)
                factor = [(m * k, _scale_dual(R, k)) for m, R in base
                          if _dual_degree(R) * k <= max_dual]
                acc = self._mul_coaction(acc, factor, max_dual, keep_dual)
            s += 1
        acc = frozenset(acc)
        self._power_cache[key] = acc
        return acc

    def _mul_coaction(self, acc, factor, max_dual, keep_dual):
        out = set()
        for m1, R1 in acc:
            d1 = R1 if not keep_dual else _dual_degree(R1)
            for m2, R2 in factor:
                d2 = _dual_degree(R2)
                if d1 + d2 > max_dual:
                    continue
                m = m1 + m2
                if self._is_zero_mono(m):
                    continue
                k = (m, _add_dual(R1, R2)) if keep_dual else (m, d1 + d2)
                if k in out:
                    out.remove(k)
                else:
                    out.add(k)
        return out

    def coaction(self, p, max_dual, keep_dual=True):
        """Terms of the coaction of p with dual degree <= max_dual."""
        total = set()
        for m in p.terms:
            exps = unpack_exponents(m, self.nvars)
            acc = {(0, () if keep_dual else 0)}
            for i, e in enumerate(exps):
                if e:
                    factor = self._power_coaction(i, e, max_dual, keep_dual)
                    if keep_dual:
                        acc = self._mul_coaction(acc, factor, max_dual, keep_dual)
                    else:
                        acc = self._mul_degrees(acc, factor, max_dual)
            total ^= acc
        return total

    def _mul_degrees(self, acc, factor, max_dual):
        out = set()
        for m1, d1 in acc:
            for m2, d2 in factor:
                if d1 + d2 > max_dual:
                    continue
                m = m1 + m2
                if self._is_zero_mono(m):
                    continue
                k = (m, d1 + d2)
                if k in out:
                    out.remove(k)
                else:
                    out.add(k)
        return out

    def steenrod_action(self, op, p):
        """Kronecker pairing of op against the coaction of p."""
        if not op.terms or not p.terms:
            return self.zero()
        max_dual = max(milnor_degree(t) for t in op.terms)
        if max_dual > get_cap_degree():
            raise ResourceCapError(f"operation degree {max_dual} exceeds cap")
        support = op.terms
        out = set()
        for m, R in self.coaction(p, max_dual):
            if R in support:
                out ^= {m}
        return PolyF2._raw(self.nvars, self.weights, frozenset(out))

    def total_operation(self, d, p, enforce_cap=True):
        """Apply the sum of all Milnor basis elements of degree d (xi's evaluated at 1).

        No basis is enumerated, so callers with their own degree cap may skip
        the Steenrod cap with ``enforce_cap=False``.
        """
        if enforce_cap and d > get_cap_degree():
            raise ResourceCapError(f"operation degree {d} exceeds cap")
        if all(self._frobenius_kind(i) for i in range(self.nvars)):
            return self._total_operation_frobenius(d, p)
        out = set()
        for m, deg in self.coaction(p, d, keep_dual=False):
            if deg == d:
                out ^= {m}
        return PolyF2._raw(self.nvars, self.weights, frozenset(out))

    def _exponent_image(self, e, bound):
        # odd-multiplicity exponents of (sum_j g^(2^j))^e that are <= bound
        acc = {0}
        for s in f2.bits(e):
            nxt = set()
            for a in acc:
                step = 1 << s
                while a + step <= bound:
                    nxt ^= {a + step}
                    step <<= 1
            acc = nxt
        return acc

    def _total_operation_frobenius(self, d, p):
        # with every xi set to 1 each generator maps to sum_j g^(2^j); keep degree |m| + d
        out = set()
        for m in p.terms:
            exps = unpack_exponents(m, self.nvars)
            target = self.mono_degree(m) + d
            images = [sorted(self._exponent_image(e, target // w)) if e else [0]
                      for e, w in zip(exps, self.weights)]
            last = self.nvars - 1
            last_set = set(images[last]) if self.nvars else set()

            def rec(i, deg, mono):
                if i == last:
                    rem = target - deg
                    if rem % self.weights[i] == 0 and rem // self.weights[i] in last_set:
                        full = mono | ((rem // self.weights[i]) << (FIELD * i))
                        if not self._is_zero_mono(full):
                            out.symmetric_difference_update((full,))
                    return
                for a in images[i]:
                    nd = deg + a * self.weights[i]
                    if nd > target:
                        break
                    rec(i + 1, nd, mono | (a << (FIELD * i)))

            if self.nvars == 0:
                if d == 0:
                    out ^= {m}
                continue
            rec(0, 0, 0)
        return PolyF2._raw(self.nvars, self.weights, frozenset(out))

    def theta(self, n, p, enforce_cap=True):
        return self.total_operation((1 << (n - 1)) - n, p, enforce_cap)


@lru_cache(maxsize=None)
def _polyring(r):
    return GradedAlgebra.polynomial(r)


def polynomial_ring(r):
    return _polyring(r)


def steenrod_action(op, p):
    """Steenrod action on a polynomial in degree-1 variables."""
    return _polyring(p.nvars).steenrod_action(op, p)


def theta_action(n, p):
    """theta_n applied to p, via the summed coaction (no basis enumeration)."""
    return _polyring(p.nvars).theta(n, p)


# --- the key identity -------------------------------------------------------

def _binary_power_tuples(n, target):
    # ordered n-tuples (r_1..r_n) of non-negative ints with sum 2^{r_i} == target
    out = []

    def rec(k, rem, acc):
        if k == n:
            if rem == 0:
                out.append(tuple(acc))
            return
        left = n - k - 1
        r = 0
        while (1 << r) <= rem - left:
            acc.append(r)
            rec(k + 1, rem - (1 << r), acc)
            acc.pop()
            r += 1

    rec(0, target, [])
    return out


def theta_direct(n, variables=None, nvars=None):
    """Sum over (r_i) with sum 2^{r_i} = 2^{n-1} of prod t_{v_i}^{2^{r_i}}, accumulated mod 2.

    ``variables`` lists 0-based indices (repeats allowed); default is 0..n-1.
    """
    if n < 1:
        raise ValueError("n >= 1 required")
    variables = list(range(n)) if variables is None else list(variables)
    if len(variables) != n:
        raise ValueError("need exactly n variable indices")
    nvars = nvars or (max(variables) + 1)
    acc = set()
    for rs in _binary_power_tuples(n, 1 << (n - 1)):
        exps = [0] * nvars
        for v, r in zip(variables, rs):
            exps[v] += 1 << r
        m = pack_exponents(exps)
        if m in acc:
            acc.remove(m)
        else:
            acc.add(m)
    return PolyF2(nvars, acc)


def mk_factor(k, n):
    """m_k: product of (t_{i1} + ... + t_{ik}) over k-subsets of {1..n}."""
    out = PolyF2.one(n)
    for S in itertools.combinations(range(n), k):
        out = out * PolyF2(n, [1 << (FIELD * i) for i in S])
    return out


def mk_product(n, cap=7):
    """Product of m_k over odd k <= n."""
    if n > cap:
        raise ResourceCapError(f"mk_product({n}) exceeds cap {cap}")
    out = PolyF2.one(n)
    for k in range(1, n + 1, 2):
        out = out * mk_factor(k, n)
    return out


# --- Stiefel-Whitney series of virtual sums of lines -------------------------

class TotalSWSeries:
    """w_0 + w_1 + ... + w_D with w_d homogeneous of degree d."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        self.coeffs = list(coeffs)
        if not self.coeffs or self.coeffs[0] != PolyF2.one(self.coeffs[0].nvars, self.coeffs[0].weights):
            raise ValueError("w_0 must be 1")

    @property
    def D(self):
        return len(self.coeffs) - 1

    def w(self, i):
        if i > self.D:
            raise ResourceCapError(f"w_{i} beyond truncation degree {self.D}")
        return self.coeffs[i]

    def first_nonzero(self):
        for i in range(1, self.D + 1):
            if self.coeffs[i]:
                return i
        return None

    def __mul__(self, other):
        D = min(self.D, other.D)
        out = []
        for k in range(D + 1):
            acc = self.coeffs[0] * 0
            for i in range(k + 1):
                acc = acc + self.coeffs[i] * other.coeffs[k - i]
            out.append(acc)
        return TotalSWSeries(out)

    def times_line(self, ell):
        """Product with 1 + ell; w_k picks up w_(k-1) ell."""
        if not ell:
            return TotalSWSeries(self.coeffs)
        c = self.coeffs
        return TotalSWSeries([c[0]] + [c[k] + c[k - 1] * ell for k in range(1, len(c))])

    def divide_line(self, ell):
        """Quotient by 1 + ell: out_k = w_k + ell out_(k-1)."""
        if not ell:
            return TotalSWSeries(self.coeffs)
        out = [self.coeffs[0]]
        for k in range(1, len(self.coeffs)):
            out.append(self.coeffs[k] + out[-1] * ell)
        return TotalSWSeries(out)

    def inverse(self):
        b = [self.coeffs[0]]
        for k in range(1, self.D + 1):
            acc = self.coeffs[0] * 0
            for i in range(1, k + 1):
                acc = acc + self.coeffs[i] * b[k - i]
            b.append(acc)
        return TotalSWSeries(b)

    def __eq__(self, other):
        return isinstance(other, TotalSWSeries) and self.coeffs == other.coeffs

    def __repr__(self):
        return "TotalSWSeries(" + ", ".join(f"w{i}={c}" for i, c in enumerate(self.coeffs)) + ")"


def _line_series(ell, D, nvars, weights=None):
    one = PolyF2.one(nvars, weights)
    zero = PolyF2.zero(nvars, weights)
    if ell and ell.degree != 1:
        raise ValueError("line classes must be homogeneous of degree 1 (or zero)")
    return TotalSWSeries([one, ell if ell else zero] + [zero] * (D - 1))


def sw_virtual(plus, minus, D):
    """Total Stiefel-Whitney series of sum(L+) - sum(L-), truncated at degree D."""
    if D < 1:
        raise ValueError("truncation degree must be >= 1")
    sample = next(iter(plus + minus), None)
    if sample is None:
        raise ValueError("need at least one line class to fix the ring")
    nvars, weights = sample.nvars, sample.weights
    one = PolyF2.one(nvars, weights)
    zero = PolyF2.zero(nvars, weights)
    total = TotalSWSeries([one] + [zero] * D)
    for ell in plus:
        total = total.times_line(_line_series(ell, D, nvars, weights).coeffs[1])
    for ell in minus:
        total = total.divide_line(_line_series(ell, D, nvars, weights).coeffs[1])
    return total


def product_line_expansion(n):
    """Line classes of E^even and E^odd, oriented by (-1)^n as (plus, minus)."""
    even, odd = [], []
    for k in range(n + 1):
        for S in itertools.combinations(range(n), k):
            ell = PolyF2(n, [1 << (FIELD * i) for i in S])
            (even if k % 2 == 0 else odd).append(ell)
    return (even, odd) if n % 2 == 0 else (odd, even)


def sw_of_product_of_lines(lines, D):
    """Total SW series of prod (L_i - 1) for the given degree-1 classes."""
    n = len(lines)
    nvars = lines[0].nvars
    even, odd = [], []
    for k in range(n + 1):
        for S in itertools.combinations(range(n), k):
            ell = PolyF2.zero(nvars)
            for i in S:
                ell = ell + lines[i]
            (even if k % 2 == 0 else odd).append(ell)
    plus, minus = (even, odd) if n % 2 == 0 else (odd, even)
    return sw_virtual(plus, minus, D)


# --- Wu-formula helper ------------------------------------------------------

def sq_on_elementary_symmetric(i, j, m):
    """Sq^i applied to e_j(t_1..t_m)."""
    if j > m:
        raise ValueError("need m >= j")
    return steenrod_action(SteenrodElement.sq(i), elementary_symmetric(j, m))


def to_elementary_basis(p):
    """Express a symmetric polynomial as a polynomial in e_1..e_m (returned over m weighted variables)."""
    m = p.nvars
    weights = tuple(range(1, m + 1))
    out = set()
    rest = p
    while rest:
        lead = max(rest.monomials())
        if any(lead[k] < lead[k + 1] for k in range(m - 1)):
            raise ValueError("polynomial is not symmetric")
        # e_1^{a1-a2} e_2^{a2-a3} ... e_m^{am}
        powers = tuple(lead[k] - (lead[k + 1] if k + 1 < m else 0) for k in range(m))
        out ^= {powers}
        term = PolyF2.one(m)
        for k, a in enumerate(powers):
            if a:
                term = term * elementary_symmetric(k + 1, m) ** a
        rest = rest + term
    return PolyF2(m, out, weights)
