"""Linear algebra over F2 with vectors packed into Python ints (bit i = coordinate i)."""


class RowSpace:
    """An F2 subspace kept in reduced echelon form, keyed by leading bit."""

    __slots__ = ("_rows",)

    def __init__(self, vectors=()):
        self._rows = {}
        for v in vectors:
            self.add(v)

    def reduce(self, v):
        rows = self._rows
        while v:
            top = v.bit_length() - 1
            r = rows.get(top)
            if r is None:
                # reduce the lower bits too, so the result is canonical
                rest = v ^ (1 << top)
                out = 1 << top
                while rest:
                    b = rest.bit_length() - 1
                    r = rows.get(b)
                    if r is None:
                        out |= 1 << b
                        rest ^= 1 << b
                    else:
                        rest ^= r
                return out
            v ^= r
        return 0

    def add(self, v):
        v = self.reduce(v)
        if not v:
            return False
        top = v.bit_length() - 1
        for k, r in list(self._rows.items()):
            if (r >> top) & 1:
                self._rows[k] = r ^ v
        self._rows[top] = v
        return True

    def __contains__(self, v):
        return self.reduce(v) == 0

    @property
    def rank(self):
        return len(self._rows)

    def basis(self):
        return [self._rows[k] for k in sorted(self._rows)]

    def __eq__(self, other):
        if not isinstance(other, RowSpace):
            return NotImplemented
        return self._rows == other._rows

    def __le__(self, other):
        return all(r in other for r in self._rows.values())

    def __repr__(self):
        return f"RowSpace(rank={self.rank})"


def rank(vectors):
    return RowSpace(vectors).rank


def left_kernel(rows):
    """Basis of {c : sum_i c_i rows[i] = 0}, each c packed as an int over row indices."""
    pivots = {}
    kernel = []
    for i, v in enumerate(rows):
        tag = 1 << i
        while v:
            top = v.bit_length() - 1
            if top not in pivots:
                break
            pv, ptag = pivots[top]
            v ^= pv
            tag ^= ptag
        if v:
            pivots[v.bit_length() - 1] = (v, tag)
        else:
            kernel.append(tag)
    return kernel


def solve_left(rows, target):
    """Return c with sum_i c_i rows[i] == target, or None if target is not in the span."""
    pivots = {}
    for i, v in enumerate(rows):
        tag = 1 << i
        while v:
            top = v.bit_length() - 1
            if top not in pivots:
                break
            pv, ptag = pivots[top]
            v ^= pv
            tag ^= ptag
        if v:
            pivots[v.bit_length() - 1] = (v, tag)
    v, tag = target, 0
    while v:
        top = v.bit_length() - 1
        if top not in pivots:
            return None
        pv, ptag = pivots[top]
        v ^= pv
        tag ^= ptag
    return tag


def bits(v):
    out = []
    i = 0
    while v:
        if v & 1:
            out.append(i)
        v >>= 1
        i += 1
    return out


def pack(indices):
    v = 0
    for i in indices:
        v ^= 1 << i
    return v
