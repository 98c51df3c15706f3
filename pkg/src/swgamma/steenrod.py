"""Mod 2 Steenrod algebra in the Milnor basis.

A Milnor basis element Sq(r1, ..., rk) is a tuple of non-negative ints with
no trailing zeros; ``()`` is the unit.  Elements are F2-sums of such tuples,
stored as frozensets.  Admissible monomials Sq^{i1} ... Sq^{im}
(i_j >= 2 i_{j+1}) give the Serre-Cartan basis.
"""

from functools import lru_cache

from . import f2
from .errors import ResourceCapError

DEFAULT_CAP_DEGREE = 120

_cap = DEFAULT_CAP_DEGREE


def set_cap_degree(d):
    global _cap
    if d < 0:
        raise ValueError("cap must be non-negative")
    _cap = int(d)


def get_cap_degree():
    return _cap


def _check_cap(d):
    if d > _cap:
        raise ResourceCapError(f"degree {d} exceeds the Steenrod degree cap {_cap}")


def canonical(seq):
    seq = list(seq)
    while seq and seq[-1] == 0:
        seq.pop()
    if any(r < 0 for r in seq):
        raise ValueError(f"negative exponent in {seq}")
    return tuple(seq)


def milnor_degree(elt):
    return sum(r * ((1 << (i + 1)) - 1) for i, r in enumerate(elt))


def milnor_order_key(elt, width=24):
    """Sort key: lexicographic on the exponent sequence read from the highest xi index down."""
    padded = tuple(elt) + (0,) * (width - len(elt))
    return padded[::-1]


@lru_cache(maxsize=None)
def _partitions(d, top):
    # sequences (r1, ..., r_top) with sum r_i (2^i - 1) == d, as tuples of length top
    if top == 0:
        return [()] if d == 0 else []
    w = (1 << top) - 1
    out = []
    for r in range(d // w + 1):
        for head in _partitions(d - r * w, top - 1):
            out.append(head + (r,))
    return out


def enumerate_milnor_basis(d):
    """All Milnor basis elements of degree d, in ``milnor_order_key`` order."""
    if d < 0:
        raise ValueError("degree must be non-negative")
    _check_cap(d)
    top = max(1, d.bit_length())
    elts = {canonical(p) for p in _partitions(d, top)}
    return sorted(elts, key=milnor_order_key)


def _milnor_product_basis(r, s):
    """Product Sq(r) Sq(s) as a set of Milnor tuples (allowable-matrix rule, p = 2)."""
    if not r:
        return {s}
    if not s:
        return {r}
    rows, cols = len(r), len(s)
    result = set()
    # x[i][j] for i in 1..rows, j in 1..cols chosen row by row; x[i][0] and x[0][j] forced.
    x = [[0] * (cols + 1) for _ in range(rows + 1)]
    colrem = list(s)

    def finish():
        # x[0][j] = remaining column sums
        for j in range(1, cols + 1):
            x[0][j] = colrem[j - 1]
        t = []
        for n in range(1, rows + cols + 1):
            used = 0
            total = 0
            for i in range(max(0, n - cols), min(rows, n) + 1):
                v = x[i][n - i]
                if v & used:
                    return
                used |= v
                total += v
            t.append(total)
        key = canonical(t)
        if key in result:
            result.remove(key)
        else:
            result.add(key)

    def row(i):
        if i > rows:
            finish()
            return
        fill(i, cols, r[i - 1])

    def fill(i, j, remaining):
        if j == 0:
            x[i][0] = remaining
            row(i + 1)
            return
        w = 1 << j
        for v in range(min(colrem[j - 1], remaining // w) + 1):
            x[i][j] = v
            colrem[j - 1] -= v
            fill(i, j - 1, remaining - v * w)
            colrem[j - 1] += v
        x[i][j] = 0

    row(1)
    return result


@lru_cache(maxsize=200000)
def milnor_product(a, b):
    """Product of two Milnor basis elements, as a SteenrodElement."""
    _check_cap(milnor_degree(a) + milnor_degree(b))
    return SteenrodElement(_milnor_product_basis(tuple(a), tuple(b)))


class SteenrodElement:
    __slots__ = ("terms", "_hash")

    def __init__(self, terms=()):
        acc = set()
        for t in terms:
            t = canonical(t)
            if t in acc:
                acc.remove(t)
            else:
                acc.add(t)
        self.terms = frozenset(acc)
        self._hash = None

    @classmethod
    def unit(cls):
        return cls([()])

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def sq(cls, k):
        """The total square Sq^k = Sq(k)."""
        return cls([(k,)] if k else [()])

    @classmethod
    def milnor(cls, *exponents):
        return cls([tuple(exponents)])

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, SteenrodElement):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.terms)
        return self._hash

    def __add__(self, other):
        return SteenrodElement._raw(self.terms ^ other.terms)

    __sub__ = __add__

    @classmethod
    def _raw(cls, fs):
        obj = cls.__new__(cls)
        obj.terms = fs
        obj._hash = None
        return obj

    def __mul__(self, other):
        acc = set()
        for a in self.terms:
            for b in other.terms:
                acc ^= milnor_product(a, b).terms
        return SteenrodElement._raw(frozenset(acc))

    def degrees(self):
        return {milnor_degree(t) for t in self.terms}

    def is_homogeneous(self):
        return len(self.degrees()) <= 1

    @property
    def degree(self):
        ds = self.degrees()
        if len(ds) > 1:
            raise ValueError("element is not homogeneous")
        return ds.pop() if ds else None

    def homogeneous_parts(self):
        parts = {}
        for t in self.terms:
            parts.setdefault(milnor_degree(t), set()).add(t)
        return {d: SteenrodElement._raw(frozenset(ts)) for d, ts in sorted(parts.items())}

    def sorted_terms(self):
        return sorted(self.terms, key=lambda t: (milnor_degree(t), milnor_order_key(t)))

    def __iter__(self):
        return iter(self.sorted_terms())

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join("Sq(" + ",".join(map(str, t)) + ")" for t in self.sorted_terms())


def theta(n):
    """Sum of every Milnor basis element in degree 2^(n-1) - n."""
    if n < 1:
        raise ValueError("theta_n is defined for n >= 1")
    d = (1 << (n - 1)) - n
    return SteenrodElement._raw(frozenset(enumerate_milnor_basis(d)))


# --- Serre-Cartan (admissible) basis -------------------------------------

def is_admissible(seq):
    return all(i > 0 for i in seq) and all(seq[j] >= 2 * seq[j + 1] for j in range(len(seq) - 1))


@lru_cache(maxsize=None)
def _admissible_ending(d, bound):
    # admissible sequences of degree d whose first entry is <= bound
    if d == 0:
        return [()]
    out = []
    for first in range(1, min(d, bound) + 1):
        for rest in _admissible_ending(d - first, first // 2):
            out.append((first,) + rest)
    return out


def enumerate_admissible(d):
    """Admissible monomials of degree d in lexicographic order."""
    _check_cap(d)
    return sorted(_admissible_ending(d, d))


def admissible_to_milnor(seq):
    x = SteenrodElement.unit()
    for i in seq:
        x = x * SteenrodElement.sq(i)
    return x


class SerreCartanElement:
    __slots__ = ("terms",)

    def __init__(self, terms=()):
        acc = set()
        for t in terms:
            t = tuple(t)
            if not is_admissible(t):
                raise ValueError(f"{t} is not admissible")
            acc ^= {t}
        self.terms = frozenset(acc)

    def __eq__(self, other):
        if isinstance(other, SerreCartanElement):
            return self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash(self.terms)

    def sorted_terms(self):
        return sorted(self.terms, key=lambda t: (sum(t), t))

    def to_milnor(self):
        out = SteenrodElement()
        for t in self.terms:
            out = out + admissible_to_milnor(t)
        return out

    def __str__(self):
        if not self.terms:
            return "0"
        words = []
        for t in self.sorted_terms():
            words.append(" ".join(f"Sq^{i}" for i in t) if t else "1")
        return " + ".join(words)

    __repr__ = __str__


@lru_cache(maxsize=None)
def _change_of_basis(d):
    adm = enumerate_admissible(d)
    milnor = enumerate_milnor_basis(d)
    index = {m: i for i, m in enumerate(milnor)}
    rows = []
    for a in adm:
        rows.append(f2.pack(index[t] for t in admissible_to_milnor(a).terms))
    if len(adm) != len(milnor) or f2.rank(rows) != len(rows):
        raise ArithmeticError(f"admissible monomials do not form a basis in degree {d}")
    return adm, index, rows


def to_serre_cartan(elt):
    """Rewrite a Milnor-basis element in the admissible basis (degreewise linear solve)."""
    out = set()
    for d, part in elt.homogeneous_parts().items():
        adm, index, rows = _change_of_basis(d)
        target = f2.pack(index[t] for t in part.terms)
        combo = f2.solve_left(rows, target)
        out ^= {adm[i] for i in f2.bits(combo)}
    return SerreCartanElement(out)


# --- antipode --------------------------------------------------------------

@lru_cache(maxsize=None)
def _antipode_sq(n):
    # c(Sq^n) = sum_{i=1}^{n} Sq^i c(Sq^{n-i})
    if n == 0:
        return SteenrodElement.unit()
    acc = SteenrodElement()
    for i in range(1, n + 1):
        acc = acc + SteenrodElement.sq(i) * _antipode_sq(n - i)
    return acc


@lru_cache(maxsize=None)
def _antipode_basis(elt):
    sc = to_serre_cartan(SteenrodElement([elt]))
    acc = SteenrodElement()
    for word in sc.terms:
        prod = SteenrodElement.unit()
        for i in reversed(word):
            prod = prod * _antipode_sq(i)
        acc = acc + prod
    return acc


def antipode(elt):
    """Hopf conjugation, extended to sums and reversing products."""
    acc = SteenrodElement()
    for t in elt.terms:
        acc = acc + _antipode_basis(t)
    return acc
