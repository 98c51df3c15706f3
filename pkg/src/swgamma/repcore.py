"""Finite groups, character tables with exact cyclotomic values, and the lambda-ring R(G, k).

Character values are elements of Z[zeta_e] (e = group exponent), stored as
integer coordinate vectors in the power basis 1, zeta, ..., zeta^(phi(e)-1)
modulo the cyclotomic polynomial.
"""

import itertools
import json
from fractions import Fraction
from functools import cached_property, lru_cache
from math import gcd

import numpy as np

from .errors import IntegralityError, InvalidGroupError, UnsupportedCaseError


# --- finite groups -----------------------------------------------------------

class FiniteGroup:
    """Group on 0..n-1 given by its multiplication table; 0 is the identity."""

    def __init__(self, table, name="G", validate=True):
        self.table = [list(map(int, row)) for row in table]
        self.name = name
        self.order = len(self.table)
        if validate:
            self._validate()
        n = self.order
        self.inverse = [next(h for h in range(n) if self.table[g][h] == 0) for g in range(n)]

    def _validate(self):
        n = self.order
        T = self.table
        if n == 0 or any(len(row) != n for row in T):
            raise InvalidGroupError("table must be a non-empty square")
        if any(not 0 <= x < n for row in T for x in row):
            raise InvalidGroupError("table entries out of range")
        if any(T[0][g] != g or T[g][0] != g for g in range(n)):
            raise InvalidGroupError("element 0 is not the identity")
        for g in range(n):
            if sorted(T[g]) != list(range(n)):
                raise InvalidGroupError(f"row {g} is not a permutation (no inverses)")
        arr = np.array(T)
        # (gh)k == g(hk) for all triples
        left = arr[arr, :]              # left[g, h, k] = (gh)k
        right = arr[:, arr]             # right[g, h, k] = g(hk)
        if not np.array_equal(left, right):
            raise InvalidGroupError("multiplication is not associative")

    def mul(self, g, h):
        return self.table[g][h]

    def power(self, g, k):
        k %= self.element_order(g)
        out = 0
        for _ in range(k):
            out = self.table[out][g]
        return out

    @lru_cache(maxsize=None)
    def element_order(self, g):
        k, x = 1, g
        while x != 0:
            x = self.table[x][g]
            k += 1
        return k

    @cached_property
    def exponent(self):
        e = 1
        for g in range(self.order):
            k = self.element_order(g)
            e = e * k // gcd(e, k)
        return e

    @cached_property
    def classes(self):
        seen = [None] * self.order
        out = []
        for g in range(self.order):
            if seen[g] is not None:
                continue
            cls = sorted({self.table[self.table[h][g]][self.inverse[h]] for h in range(self.order)})
            for x in cls:
                seen[x] = len(out)
            out.append(cls)
        return out

    @cached_property
    def class_of(self):
        idx = [0] * self.order
        for i, cls in enumerate(self.classes):
            for g in cls:
                idx[g] = i
        return idx

    def class_power_map(self, k):
        return [self.class_of[self.power(cls[0], k)] for cls in self.classes]

    @cached_property
    def is_abelian(self):
        T = self.table
        return all(T[g][h] == T[h][g] for g in range(self.order) for h in range(g))

    def __repr__(self):
        return f"FiniteGroup({self.name}, order={self.order})"


# --- cyclotomic arithmetic -----------------------------------------------------

@lru_cache(maxsize=None)
def cyclotomic_polynomial(e):
    """Integer coefficients of Phi_e, lowest degree first."""
    num = [-1] + [0] * (e - 1) + [1]
    for d in range(1, e):
        if e % d == 0:
            num = _exact_div(num, cyclotomic_polynomial(d))
    return tuple(num)


def _exact_div(num, den):
    num = list(num)
    q = [0] * (len(num) - len(den) + 1)
    for i in range(len(q) - 1, -1, -1):
        c = num[i + len(den) - 1] // den[-1]
        q[i] = c
        for j, d in enumerate(den):
            num[i + j] -= c * d
    if any(num):
        raise ArithmeticError("inexact polynomial division")
    return q


class CycloField:
    """Q(zeta_e) in the power basis; vectors are numpy arrays of length phi(e)."""

    _cache = {}

    def __new__(cls, e):
        hit = cls._cache.get(e)
        if hit is None:
            hit = super().__new__(cls)
            hit._init(e)
            cls._cache[e] = hit
        return hit

    def _init(self, e):
        self.e = e
        phi = cyclotomic_polynomial(e)
        self.dim = len(phi) - 1
        # R[a] = coordinates of zeta^a
        R = np.zeros((e, self.dim), dtype=np.int64)
        cur = [0] * self.dim
        cur[0] = 1
        for a in range(e):
            R[a] = cur
            # multiply by zeta and reduce with the monic Phi_e
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                cur = [c - top * p for c, p in zip(cur, phi[:-1])]
        self.R = R
        self.T = np.array([[R[(a + b) % e] for b in range(self.dim)] for a in range(self.dim)])
        self.C = np.array([R[(-a) % e] for a in range(self.dim)])

    def root(self, a):
        return self.R[a % self.e].copy()

    def from_exponents(self, exps):
        """Sum of zeta^a over the given exponents."""
        out = np.zeros(self.dim, dtype=np.int64)
        for a in exps:
            out += self.R[a % self.e]
        return out

    def from_group_ring(self, coeffs):
        """Reduce an element of Z[x]/(x^e - 1), given by e coefficients."""
        coeffs = np.asarray(coeffs, dtype=np.int64)
        if coeffs.shape[-1] != self.e:
            raise InvalidGroupError(f"expected {self.e} coefficients")
        return coeffs @ self.R

    def mul(self, a, b):
        # works on stacked arrays too: last axis is the coordinate axis
        return np.einsum("...i,...j,ijk->...k", a, b, self.T)

    def conj(self, a):
        return a @ self.C

    def pair_sum(self, f, g, weights):
        """out[m, r] = sum_c weights[c] f[m, c] conj(g[r, c]) for stacks f (M, C, d), g (R, C, d)."""
        gc = self.conj(g)
        out = np.zeros((f.shape[0], g.shape[0], self.dim), dtype=np.int64)
        fw = f * weights[None, :, None]
        for i in range(self.dim):
            for j in range(self.dim):
                t = self.T[i, j]
                if t.any():
                    out += (fw[:, :, i] @ gc[:, :, j].T)[:, :, None] * t[None, None, :]
        return out


class Cyclo:
    """An element of Q(zeta_e) with rational coordinates."""

    __slots__ = ("field", "coords")

    def __init__(self, e, coords):
        self.field = CycloField(e)
        coords = [Fraction(c) for c in coords]
        if len(coords) == e and e != self.field.dim:
            # given in Q[x]/(x^e - 1): reduce
            coords = [sum((c * int(self.field.R[a][k]) for a, c in enumerate(coords)), Fraction(0))
                      for k in range(self.field.dim)]
        if len(coords) != self.field.dim:
            raise ValueError("wrong number of coordinates")
        self.coords = tuple(coords)

    @classmethod
    def root(cls, e, a):
        return cls(e, CycloField(e).root(a).tolist())

    @property
    def e(self):
        return self.field.e

    def __add__(self, other):
        return Cyclo(self.e, [a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other):
        return Cyclo(self.e, [a - b for a, b in zip(self.coords, other.coords)])

    def __neg__(self):
        return Cyclo(self.e, [-a for a in self.coords])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Cyclo(self.e, [a * other for a in self.coords])
        T = self.field.T
        d = self.field.dim
        out = [Fraction(0)] * d
        for i, a in enumerate(self.coords):
            if a:
                for j, b in enumerate(other.coords):
                    if b:
                        for k in range(d):
                            out[k] += a * b * int(T[i, j, k])
        return Cyclo(self.e, out)

    __rmul__ = __mul__

    def conj(self):
        C = self.field.C
        d = self.field.dim
        return Cyclo(self.e, [sum((a * int(C[i, k]) for i, a in enumerate(self.coords)), Fraction(0))
                              for k in range(d)])

    def is_rational(self):
        return all(c == 0 for c in self.coords[1:])

    def __eq__(self, other):
        if isinstance(other, Cyclo):
            return self.e == other.e and self.coords == other.coords
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coords[0] == other
        return NotImplemented

    def __hash__(self):
        return hash((self.e, self.coords))

    def __repr__(self):
        return f"Cyclo({self.e}, {[str(c) for c in self.coords]})"


# --- character tables ----------------------------------------------------------

class CharTable:
    """Complex irreducible characters of a finite group.

    ``values[i, c]`` is the coordinate vector of chi_i on class c.
    """

    def __init__(self, group, values, names=None, validate=True):
        self.group = group
        self.field = CycloField(group.exponent)
        self.values = np.asarray(values, dtype=np.int64)
        n = self.values.shape[0]
        self.names = list(names) if names else [f"chi{i}" for i in range(n)]
        self.class_sizes = np.array([len(c) for c in group.classes], dtype=np.int64)
        if validate:
            self.validate()

    @property
    def nirr(self):
        return self.values.shape[0]

    @property
    def degrees(self):
        return [int(v) for v in self.values[:, 0, 0]]

    def inner(self, f, g):
        """<f, g> = (1/|G|) sum |C| f(C) conj(g(C)), as an exact rational; f, g of shape (nclass, dim)."""
        prod = self.field.mul(f, self.field.conj(g))
        total = (self.class_sizes[:, None] * prod).sum(axis=0)
        if any(total[1:]):
            raise IntegralityError("inner product is not rational")
        return Fraction(int(total[0]), self.group.order)

    def gram(self, rows):
        """Matrix of inner products between stacks of class functions, exact ints scaled by |G|."""
        total = self.field.pair_sum(rows, rows, self.class_sizes)
        if total[..., 1:].any():
            raise IntegralityError("inner products are not rational")
        return total[..., 0]

    def validate(self):
        G = self.group
        if self.nirr != len(G.classes):
            raise InvalidGroupError("number of characters differs from number of classes")
        g = self.gram(self.values)
        if not np.array_equal(g, G.order * np.eye(self.nirr, dtype=np.int64)):
            raise InvalidGroupError("first orthogonality fails")
        # column orthogonality: sum_i chi_i(a) conj chi_i(b) = delta |C_G(a)|
        conj = self.field.conj(self.values)
        col = self.field.mul(self.values[:, :, None, :], conj[:, None, :, :]).sum(axis=0)
        expected = np.zeros_like(col)
        for c in range(len(G.classes)):
            expected[c, c, 0] = G.order // len(G.classes[c])
        if not np.array_equal(col, expected):
            raise InvalidGroupError("second orthogonality fails")

    def power_map_values(self, rows, k):
        """Class functions g -> f(g^k)."""
        pm = self.group.class_power_map(k)
        return rows[:, pm, :]

    def decompose(self, f):
        """Integer multiplicities of the irreducibles in a class function of shape (nclass, dim)."""
        out = []
        for i in range(self.nirr):
            c = self.inner(f, self.values[i])
            if c.denominator != 1:
                raise IntegralityError(f"non-integral multiplicity {c}")
            out.append(int(c))
        return out

    def index(self, name):
        return self.names.index(name)


# --- catalog -------------------------------------------------------------------

def _abelian_characters(group):
    """Dual group of an abelian group, each character as exponents mod e."""
    e = group.exponent
    n = group.order
    H = [0]
    chars = [{0: 0}]
    in_H = {0}
    while len(H) < n:
        g = next(x for x in range(n) if x not in in_H)
        m, x = 1, g
        while x not in in_H:
            x = group.mul(x, g)
            m += 1
        # g^m = x lies in H; chi(g) = v must satisfy m v = chi(x) mod e
        powers = [0]
        for _ in range(m - 1):
            powers.append(group.mul(powers[-1], g))
        new_chars = []
        for chi in chars:
            target = chi[x]
            for v in range(e):
                if (m * v - target) % e == 0:
                    ext = {}
                    for h in H:
                        for j, p in enumerate(powers):
                            ext[group.mul(h, p)] = (chi[h] + j * v) % e
                    new_chars.append(ext)
        H = sorted({group.mul(h, p) for h in H for p in powers})
        in_H = set(H)
        chars = new_chars
    return chars


def abelian_table(group, names=None):
    if not group.is_abelian:
        raise InvalidGroupError("non-abelian group needs a supplied character table")
    field = CycloField(group.exponent)
    chars = _abelian_characters(group)
    # trivial character first, then by exponent vector
    chars.sort(key=lambda c: [c[g] for g in range(group.order)])
    values = np.array([[field.root(chi[cls[0]]) for cls in group.classes] for chi in chars])
    return CharTable(group, values, names)


def cyclic_group(N):
    table = [[(a + b) % N for b in range(N)] for a in range(N)]
    return FiniteGroup(table, f"C{N}")


def cyclic(N):
    G = cyclic_group(N)
    field = CycloField(G.exponent)
    # chi_k(g) = zeta^(k g); classes are singletons in order
    values = np.array([[field.root(k * cls[0]) for cls in G.classes] for k in range(N)])
    names = ["1"] + [f"rho^{k}" for k in range(1, N)]
    return CharTable(G, values, names)


def _product_group(moduli, name):
    elts = list(itertools.product(*[range(m) for m in moduli]))
    index = {x: i for i, x in enumerate(elts)}
    table = [[index[tuple((a + b) % m for a, b, m in zip(x, y, moduli))] for y in elts] for x in elts]
    return FiniteGroup(table, name), elts


def elem_abelian2(r):
    G, elts = _product_group([2] * r, f"(Z/2)^{r}")
    field = CycloField(G.exponent)
    chars = list(itertools.product(range(2), repeat=r))
    values = np.array([[field.root(sum(a * x for a, x in zip(chi, elts[cls[0]]))) for cls in G.classes]
                       for chi in chars])
    names = []
    for chi in chars:
        S = [str(i + 1) for i, a in enumerate(chi) if a]
        names.append("eps_" + "".join(S) if S else "1")
    return CharTable(G, values, names)


def z4pow(n):
    G, elts = _product_group([4] * n, f"(Z/4)^{n}")
    field = CycloField(G.exponent)
    chars = list(itertools.product(range(4), repeat=n))
    values = np.array([[field.root(sum(a * x for a, x in zip(chi, elts[cls[0]]))) for cls in G.classes]
                       for chi in chars])
    names = ["1" if not any(chi) else "chi_" + "".join(map(str, chi)) for chi in chars]
    return CharTable(G, values, names)


def dihedral8():
    # element rho^a s^b has id a + 4b; (rho^a s^b)(rho^c s^d) = rho^(a + (-1)^b c) s^(b+d)
    def mul(x, y):
        a, b = x % 4, x // 4
        c, d = y % 4, y // 4
        return (a + (c if b == 0 else -c)) % 4 + 4 * ((b + d) % 2)

    G = FiniteGroup([[mul(x, y) for y in range(8)] for x in range(8)], "D4")
    field = CycloField(G.exponent)

    def line(rho_sign, s_sign):
        vals = []
        for cls in G.classes:
            a, b = cls[0] % 4, cls[0] // 4
            v = (rho_sign ** a) * (s_sign ** b)
            vals.append(field.from_exponents([0]) * v)
        return vals

    delta = []
    for cls in G.classes:
        x = cls[0]
        v = 2 if x == 0 else (-2 if x == 2 else 0)
        delta.append(field.from_exponents([0]) * v)
    values = np.array([line(1, 1), line(-1, 1), line(-1, -1), line(1, -1), delta])
    return CharTable(G, values, ["1", "r1", "r2", "r3", "Delta"])


def load_group_file(path):
    """JSON {"order": n, "table": [[...]], "characters": optional per-element coefficient arrays}."""
    with open(path) as fh:
        data = json.load(fh)
    return group_from_data(data)


def group_from_data(data):
    try:
        table = data["table"]
        order = int(data.get("order", len(table)))
    except (KeyError, TypeError) as exc:
        raise InvalidGroupError(f"malformed group data: {exc}") from None
    if order != len(table):
        raise InvalidGroupError("order does not match the table size")
    G = FiniteGroup(table, data.get("name", f"G{order}"))
    chars = data.get("characters")
    if chars is None:
        return abelian_table(G, data.get("names"))
    field = CycloField(G.exponent)
    values = []
    for chi in chars:
        if len(chi) != G.order:
            raise InvalidGroupError("each character lists one value per element")
        per_elt = [field.from_group_ring(v) for v in chi]
        for cls in G.classes:
            if any(not np.array_equal(per_elt[g], per_elt[cls[0]]) for g in cls):
                raise InvalidGroupError("supplied character is not a class function")
        values.append([per_elt[cls[0]] for cls in G.classes])
    return CharTable(G, np.array(values), data.get("names"))


def catalog(name):
    """cyclic(N) / C<N>, elem_abelian2(r), z4pow(n), dihedral8 / D4."""
    key = name.strip().replace(" ", "")
    if key in ("dihedral8", "D4", "d4"):
        return _cached_catalog("d4", 0)
    for prefix, kind in (("cyclic", "c"), ("elem_abelian2", "e"), ("z4pow", "z")):
        if key.startswith(prefix + "(") and key.endswith(")"):
            return _cached_catalog(kind, int(key[len(prefix) + 1:-1]))
    if key[:1] in "Cc" and key[1:].isdigit():
        return _cached_catalog("c", int(key[1:]))
    raise InvalidGroupError(f"unknown catalog group {name!r}")


@lru_cache(maxsize=None)
def _cached_catalog(kind, n):
    if n < 0 or (kind in "cz" and n < 1):
        raise InvalidGroupError("group parameter out of range")
    return {"c": cyclic, "e": elem_abelian2, "z": z4pow, "d4": lambda _: dihedral8()}[kind](n)


# --- Frobenius-Schur and real irreducibles ---------------------------------------

def fs_indicator(table, i):
    chi_sq = table.power_map_values(table.values[i:i + 1], 2)[0]
    total = (table.class_sizes[:, None] * chi_sq).sum(axis=0)
    if any(total[1:]) or total[0] % table.group.order:
        raise IntegralityError("Frobenius-Schur indicator is not integral")
    v = int(total[0]) // table.group.order
    if v not in (-1, 0, 1):
        raise IntegralityError(f"indicator {v} out of range")
    return v


def _conjugate_index(table, i):
    conj = table.field.conj(table.values[i])
    for j in range(table.nirr):
        if np.array_equal(table.values[j], conj):
            return j
    raise IntegralityError("conjugate character missing from the table")


def _real_name(table, i, j):
    a, b = table.names[i], table.names[j]
    if a.startswith("rho^"):
        k = min(int(a[4:]), int(b[4:]))
        return f"r_{k}"
    if a.startswith("chi_"):
        return "r_" + min(a[4:], b[4:])
    return f"{a}+{b}"


def _line_name(table, i):
    name = table.names[i]
    if name.startswith("rho^") and 2 * int(name[4:]) == table.group.order:
        return "eps"
    if name.startswith("chi_"):
        return "eps_" + name[4:]
    return name


class RealIrrTable:
    """Real irreducible characters: chi (indicator 1) or chi + conj(chi) (indicator 0)."""

    def __init__(self, table):
        self.table = table
        rows, names, members = [], [], []
        done = set()
        for i in range(table.nirr):
            if i in done:
                continue
            ind = fs_indicator(table, i)
            if ind == -1:
                raise UnsupportedCaseError(f"{table.names[i]} is quaternionic")
            if ind == 1:
                rows.append(table.values[i])
                names.append(_line_name(table, i) if table.degrees[i] == 1 else table.names[i])
                members.append((i,))
                done.add(i)
            else:
                j = _conjugate_index(table, i)
                rows.append(table.values[i] + table.values[j])
                names.append(_real_name(table, i, j))
                members.append((i, j))
                done.update((i, j))
        self.values = np.array(rows)
        self.names = names
        self.members = members


def real_irreducibles(table):
    return RealIrrTable(table)


# --- representation rings --------------------------------------------------------

class RepRing:
    """R(G, C) or R(G, R) with the basis of (real) irreducible characters."""

    def __init__(self, table, field="complex"):
        field = {"C": "complex", "R": "real"}.get(field, field)
        if field not in ("complex", "real"):
            raise ValueError("field must be 'complex' or 'real'")
        self.table = table
        self.field = field
        self.group = table.group
        if field == "complex":
            self.basis_values = table.values
            self.names = list(table.names)
            self.members = [(i,) for i in range(table.nirr)]
        else:
            real = RealIrrTable(table)
            self.basis_values = real.values
            self.names = real.names
            self.members = real.members
        self.rank = len(self.names)
        self.dims = [int(v) for v in self.basis_values[:, 0, 0]]
        self._ip = table.gram(self.basis_values)  # |G| <b_i, b_j>
        self.norms = [int(self._ip[i, i]) for i in range(self.rank)]

    def __repr__(self):
        return f"RepRing({self.group.name}, {self.field})"

    # conversion ------------------------------------------------------------------
    def decompose(self, f):
        """Coordinates of a class function in the basis; certifies membership in the span."""
        if f.ndim == 2:
            f = f[None]
        total = self.table.field.pair_sum(f, self.basis_values, self.table.class_sizes)
        if total[..., 1:].any():
            raise IntegralityError("inner product is not rational")
        coeffs = total[..., 0]
        norms = np.array(self.norms)
        if (coeffs % norms).any():
            raise IntegralityError("class function is not an integral combination of the basis")
        out = coeffs // norms
        back = np.tensordot(out, self.basis_values, axes=(1, 0))
        if not np.array_equal(back, f):
            raise IntegralityError("class function lies outside the span of the basis")
        return out

    @cached_property
    def structure_constants(self):
        """N[i, j, k] = multiplicity of b_k in b_i b_j."""
        F = self.table.field
        prods = F.mul(self.basis_values[:, None], self.basis_values[None, :])
        r = self.rank
        flat = prods.reshape(r * r, *prods.shape[2:])
        return self.decompose(flat).reshape(r, r, r)

    @lru_cache(maxsize=None)
    def adams_matrix(self, k):
        """Row i = coordinates of Psi^k(b_i)."""
        vals = self.table.power_map_values(self.basis_values, k)
        return self.decompose(vals)

    # elements ----------------------------------------------------------------------
    def element(self, coeffs):
        return VirtualRep(self, coeffs)

    def basis(self, i):
        if isinstance(i, str):
            i = self.names.index(i)
        c = [0] * self.rank
        c[i] = 1
        return VirtualRep(self, c)

    def one(self):
        return self.basis(0)

    def zero(self):
        return VirtualRep(self, [0] * self.rank)

    def __getitem__(self, name):
        return self.basis(name)

    def mul_coeffs(self, a, b):
        N = self.structure_constants
        out = [0] * self.rank
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                if not y:
                    continue
                xy = x * y
                for k in np.nonzero(N[i, j])[0]:
                    out[k] += xy * int(N[i, j, k])
        return out

    @lru_cache(maxsize=None)
    def multiplication_matrix(self, coeffs):
        """Matrix M (object dtype) with (v M) = v * x for x given by coeffs."""
        N = self.structure_constants
        M = np.zeros((self.rank, self.rank), dtype=object)
        for i, x in enumerate(coeffs):
            if x:
                M = M + int(x) * N[i].astype(object)
        return M

    def character(self, x):
        return np.einsum("i,ick->ck", np.array(x.coeffs, dtype=np.int64), self.basis_values)


class VirtualRep:
    __slots__ = ("ring", "coeffs")

    def __init__(self, ring, coeffs):
        self.ring = ring
        self.coeffs = tuple(int(c) for c in coeffs)
        if len(self.coeffs) != ring.rank:
            raise ValueError("coefficient vector has the wrong length")

    def _wrap(self, c):
        return VirtualRep(self.ring, c)

    def _coerce(self, other):
        if isinstance(other, int):
            return self.ring.one() * other if other else self.ring.zero()
        return other

    def __add__(self, other):
        other = self._coerce(other)
        return self._wrap([a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return self._wrap([-a for a in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            return self._wrap([a * other for a in self.coeffs])
        return self._wrap(self.ring.mul_coeffs(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __pow__(self, k):
        out = self.ring.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = self._coerce(other)
        if isinstance(other, VirtualRep):
            return self.ring is other.ring and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    @property
    def dim(self):
        return augmentation(self)

    def character(self):
        return self.ring.character(self)

    def is_conjugation_fixed(self):
        ch = self.character()
        return np.array_equal(self.ring.table.field.conj(ch), ch)

    def __repr__(self):
        parts = []
        for c, name in zip(self.coeffs, self.ring.names):
            if c:
                parts.append(name if c == 1 else f"{c}*{name}")
        return " + ".join(parts) if parts else "0"


def augmentation(x):
    return sum(c * d for c, d in zip(x.coeffs, x.ring.dims))


def adams(k, x):
    if k < 1:
        raise ValueError("Adams operations need k >= 1")
    M = x.ring.adams_matrix(k)
    out = [0] * x.ring.rank
    for i, c in enumerate(x.coeffs):
        if c:
            for j in np.nonzero(M[i])[0]:
                out[j] += c * int(M[i, j])
    return VirtualRep(x.ring, out)


def lambda_all(k, x):
    """[lambda^0(x), ..., lambda^k(x)] via k lambda^k = sum_i (-1)^(i-1) Psi^i lambda^(k-i)."""
    lam = [x.ring.one()]
    psi = [None] + [adams(i, x) for i in range(1, k + 1)]
    for m in range(1, k + 1):
        acc = x.ring.zero()
        for i in range(1, m + 1):
            term = psi[i] * lam[m - i]
            acc = acc + term if i % 2 else acc - term
        if any(c % m for c in acc.coeffs):
            raise IntegralityError(f"lambda^{m} is not integral")
        lam.append(VirtualRep(x.ring, [c // m for c in acc.coeffs]))
    return lam


def lambda_k(k, x):
    if k < 0:
        raise ValueError("k >= 0 required")
    return lambda_all(k, x)[k]


def gamma_k(k, x):
    if k < 0:
        raise ValueError("k >= 0 required")
    if k == 0:
        return x.ring.one()
    return lambda_k(k, x + (k - 1))


def gamma_all(k, x):
    return [gamma_k(i, x) for i in range(k + 1)]


def gamma_neg(k, x):
    """gamma^k(-x) from sum_{i+j=k} gamma^i(x) gamma^j(-x) = [k = 0]."""
    g = gamma_all(k, x)
    neg = [x.ring.one()]
    for m in range(1, k + 1):
        acc = x.ring.zero()
        for i in range(1, m + 1):
            acc = acc + g[i] * neg[m - i]
        neg.append(-acc)
    return neg[k]


def line_elements(ring):
    """Indices of the 1-dimensional basis elements and the group they form under tensor."""
    idx = [i for i, d in enumerate(ring.dims) if d == 1]
    pos = {i: n for n, i in enumerate(idx)}
    table = []
    for i in idx:
        row = []
        for j in idx:
            prod = ring.basis(i) * ring.basis(j)
            k = prod.coeffs.index(1)
            row.append(pos[k])
        table.append(row)
    return [ring.names[i] for i in idx], FiniteGroup(table, f"lines({ring.group.name})")


def restriction_matrix(ring, sub_ring, embedding):
    """Row i = coordinates in sub_ring of the restriction of ring's b_i along embedding: H -> G."""
    G = ring.group
    H = sub_ring.group
    if len(embedding) != H.order:
        raise ValueError("embedding must list an image for every element of H")
    for a in range(H.order):
        for b in range(H.order):
            if embedding[H.mul(a, b)] != G.mul(embedding[a], embedding[b]):
                raise InvalidGroupError("embedding is not a homomorphism")
    # compare inside Q(zeta_eG): zeta_eH -> zeta_eG^(eG/eH)
    FG = CycloField(G.exponent)
    step = G.exponent // H.exponent
    FH = CycloField(H.exponent)
    E = np.array([FG.R[(k * step) % FG.e] for k in range(FH.dim)], dtype=np.int64)
    sub_vals = sub_ring.basis_values @ E
    res = ring.basis_values[:, [G.class_of[embedding[cls[0]]] for cls in H.classes], :]
    sizes = np.array([len(c) for c in H.classes], dtype=np.int64)
    total = FG.pair_sum(res, sub_vals, sizes)
    if total[..., 1:].any():
        raise IntegralityError("restriction inner products are not rational")
    norms = np.array(sub_ring.norms)
    if (total[..., 0] % norms).any():
        raise IntegralityError("restriction is not integral")
    out = total[..., 0] // norms
    if not np.array_equal(np.einsum("ij,jck->ick", out, sub_vals), res):
        raise IntegralityError("restriction leaves the span of the subgroup basis")
    return out


def restrict(x, sub_ring, matrix):
    out = [0] * sub_ring.rank
    for i, c in enumerate(x.coeffs):
        if c:
            for j in range(sub_ring.rank):
                out[j] += c * int(matrix[i, j])
    return VirtualRep(sub_ring, out)
