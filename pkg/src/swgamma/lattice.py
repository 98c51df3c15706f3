"""Integer lattices in Z^c: Hermite and Smith normal forms over Python ints."""


def _xgcd(a, b):
    # returns (g, x, y) with g = x a + y b >= 0
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


class IntegerLattice:
    """Subgroup of Z^c kept in row-style Hermite normal form.

    Rows are stored by pivot column; pivots are positive and every entry
    above a pivot lies in [0, pivot).
    """

    def __init__(self, c, generators=()):
        self.c = c
        self._rows = {}
        for v in generators:
            self.add(v)

    @classmethod
    def full(cls, c):
        lat = cls(c)
        for i in range(c):
            lat._rows[i] = [0] * i + [1] + [0] * (c - i - 1)
        return lat

    def copy(self):
        lat = IntegerLattice(self.c)
        lat._rows = {k: list(v) for k, v in self._rows.items()}
        return lat

    def add(self, v):
        """Insert a vector; returns True if the lattice grew."""
        v = [int(x) for x in v]
        if len(v) != self.c:
            raise ValueError("vector has the wrong length")
        changed = False
        col = 0
        while True:
            while col < self.c and v[col] == 0:
                col += 1
            if col == self.c:
                break
            row = self._rows.get(col)
            if row is None:
                if v[col] < 0:
                    v = [-x for x in v]
                self._rows[col] = v
                self._reduce_above(col)
                self._reduce_row(col)
                return True
            p, a = row[col], v[col]
            if a % p == 0:
                q = a // p
                v = [x - q * y for x, y in zip(v, row)]
                continue
            g, x, y = _xgcd(p, a)
            new_row = [x * r + y * w for r, w in zip(row, v)]
            v = [(p // g) * w - (a // g) * r for r, w in zip(row, v)]
            self._rows[col] = new_row
            self._reduce_above(col)
            self._reduce_row(col)
            changed = True
        return changed

    def _reduce_row(self, col):
        # bring entries of row `col` right of its pivot into range using lower rows
        row = self._rows[col]
        for k in sorted(self._rows):
            if k <= col:
                continue
            piv = self._rows[k]
            q = row[k] // piv[k]
            if q:
                row = [x - q * y for x, y in zip(row, piv)]
        self._rows[col] = row

    def _reduce_above(self, col):
        for k in sorted(self._rows):
            if k < col:
                self._reduce_row_at(k, col)

    def _reduce_row_at(self, k, col):
        piv = self._rows[col]
        row = self._rows[k]
        q = row[col] // piv[col]
        if q:
            self._rows[k] = [x - q * y for x, y in zip(row, piv)]

    def normalize(self):
        """Fully reduce; idempotent.  The HNF is canonical afterwards."""
        cols = sorted(self._rows)
        for k in cols:
            # subtracting row j only touches columns >= j, so go left to right
            for col in cols:
                if col > k:
                    self._reduce_row_at(k, col)
        return self

    def hnf(self):
        self.normalize()
        return [list(self._rows[k]) for k in sorted(self._rows)]

    basis = hnf

    @property
    def rank(self):
        return len(self._rows)

    def pivots(self):
        return sorted(self._rows)

    def coordinates(self, v):
        """Integer y with y . basis == v, or None if v is not in the lattice."""
        self.normalize()
        v = [int(x) for x in v]
        cols = sorted(self._rows)
        y = []
        for col in cols:
            row = self._rows[col]
            for j in range(col):
                if v[j]:
                    return None
            q, r = divmod(v[col], row[col])
            if r:
                return None
            y.append(q)
            if q:
                v = [a - q * b for a, b in zip(v, row)]
        if any(v):
            return None
        return y

    def __contains__(self, v):
        return self.coordinates(v) is not None

    def __le__(self, other):
        return all(r in other for r in self.hnf())

    def __eq__(self, other):
        if not isinstance(other, IntegerLattice):
            return NotImplemented
        return self.c == other.c and self.hnf() == other.hnf()

    def index_in(self, other):
        """[other : self] for lattices of equal rank with self inside other (0 if infinite)."""
        if self.rank != other.rank:
            return 0
        num = 1
        for r in self.hnf():
            num *= r[self._pivot_of(r)]
        den = 1
        for r in other.hnf():
            den *= r[other._pivot_of(r)]
        return num // den

    @staticmethod
    def _pivot_of(row):
        return next(i for i, x in enumerate(row) if x)

    def __repr__(self):
        return f"IntegerLattice(c={self.c}, rank={self.rank})"


def smith_normal_form(A):
    """Return (D, V, Vinv) with U A V = diag(D) for some unimodular U.

    A is a list of integer rows (m x k).  D lists the diagonal entries
    (length min(m, k)), non-negative with d_i | d_(i+1).
    """
    m = len(A)
    k = len(A[0]) if m else 0
    M = [[int(x) for x in row] for row in A]
    V = [[int(i == j) for j in range(k)] for i in range(k)]
    Vinv = [[int(i == j) for j in range(k)] for i in range(k)]

    def col_swap(a, b):
        for row in M:
            row[a], row[b] = row[b], row[a]
        for row in V:
            row[a], row[b] = row[b], row[a]
        Vinv[a], Vinv[b] = Vinv[b], Vinv[a]

    def col_addmul(dst, src, q):
        # column dst += q * column src
        if not q:
            return
        for row in M:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]
        # inverse: row src of Vinv -= q * row dst
        Vinv[src] = [a - q * b for a, b in zip(Vinv[src], Vinv[dst])]

    def col_combine(a, b, x, y, u, w):
        # (col a, col b) <- (x col a + y col b, u col a + w col b), det = 1
        for row in M:
            row[a], row[b] = x * row[a] + y * row[b], u * row[a] + w * row[b]
        for row in V:
            row[a], row[b] = x * row[a] + y * row[b], u * row[a] + w * row[b]
        # E = [[x, u], [y, w]] on (a, b); Vinv <- E^-1 Vinv with E^-1 = [[w, -u], [-y, x]]
        ra, rb = Vinv[a], Vinv[b]
        Vinv[a] = [w * p - u * q for p, q in zip(ra, rb)]
        Vinv[b] = [-y * p + x * q for p, q in zip(ra, rb)]

    diag = []
    t = 0
    while t < min(m, k):
        # pick the smallest nonzero entry in the remaining block
        best = None
        for i in range(t, m):
            for j in range(t, k):
                if M[i][j] and (best is None or abs(M[i][j]) < abs(M[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        M[t], M[i] = M[i], M[t]
        if j != t:
            col_swap(t, j)
        while True:
            done = True
            # clear column t below the pivot with row operations (U is not tracked)
            for i in range(t + 1, m):
                if M[i][t]:
                    p, a = M[t][t], M[i][t]
                    if a % p == 0:
                        q = a // p
                        M[i] = [x - q * y for x, y in zip(M[i], M[t])]
                    else:
                        g, x, y = _xgcd(p, a)
                        rt = [x * r + y * s for r, s in zip(M[t], M[i])]
                        ri = [(p // g) * s - (a // g) * r for r, s in zip(M[t], M[i])]
                        M[t], M[i] = rt, ri
                        done = False
            # clear row t right of the pivot with tracked column operations
            for j in range(t + 1, k):
                if M[t][j]:
                    p, a = M[t][t], M[t][j]
                    if a % p == 0:
                        col_addmul(j, t, -(a // p))
                    else:
                        g, x, y = _xgcd(p, a)
                        col_combine(t, j, x, y, -(a // g), p // g)
                        done = False
            if not done:
                continue
            # divisibility: every remaining entry must be a multiple of the pivot
            p = M[t][t]
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, k) if M[i][j] % p), None)
            if bad is None:
                break
            M[t] = [x + y for x, y in zip(M[t], M[bad[0]])]
        if M[t][t] < 0:
            M[t] = [-x for x in M[t]]
        diag.append(M[t][t])
        t += 1
    diag += [0] * (min(m, k) - len(diag))
    return diag, V, Vinv


def matmul(A, B):
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


def vecmat(v, B):
    return [sum(a * b for a, b in zip(v, col)) for col in zip(*B)]
