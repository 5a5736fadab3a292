"""Max-plus (tropical) scalars, vectors, and matrices.

Tropical addition is the maximum, tropical multiplication is ordinary +,
the additive identity is the bottom element -oo, and the multiplicative
identity is 0.  The semiring is idempotent and linearly ordered, every
finite element has a multiplicative inverse (its negation), and rational
powers are rational multiples.

Entries stay exact as long as they are created from ints, Fractions, or
numeric strings; entries created from floats keep float arithmetic.
Internally the bottom element is the payload None, finite entries are
int / Fraction / float, and all-integer objects transparently use int64
kernels for large operations.
"""

from __future__ import annotations

import math
from fractions import Fraction

from . import _kernels

__all__ = [
    "TropScalar",
    "TropVector",
    "TropMatrix",
    "BOTTOM",
    "ONE",
    "PositiveCycleError",
    "outer",
    "solve_leq",
]

_MISSING = object()

# minimum number of elementary operations before the int64 kernels engage
_FAST_MATMUL_WORK = 8000
_FAST_MATVEC_WORK = 1024
_FAST_CLOSURE_DIM = 20


def _payload(value):
    """Normalize a number-like value (or None / -inf) to an entry payload."""
    if value is None:
        return None
    if isinstance(value, TropScalar):
        return value._v
    if isinstance(value, int):
        return int(value)
    if isinstance(value, Fraction):
        return int(value) if value.denominator == 1 else value
    if isinstance(value, float):
        if value == float("-inf"):
            return None
        if math.isnan(value) or math.isinf(value):
            raise ValueError("entries must be finite numbers or -inf")
        return value
    if isinstance(value, str):
        return _payload(Fraction(value))
    raise TypeError(f"cannot interpret {value!r} as a max-plus scalar")


def _other_payload(other):
    if isinstance(other, TropScalar):
        return other._v
    if isinstance(other, (int, Fraction, float)):
        return _payload(other)
    return _MISSING


def _p_add(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return a if a >= b else b


def _p_mul(a, b):
    if a is None or b is None:
        return None
    return a + b


def _p_pow(v, q):
    if isinstance(q, TropScalar):
        raise TypeError("exponents are plain numbers, not max-plus scalars")
    if not isinstance(q, (int, Fraction, float)):
        raise TypeError(f"bad exponent {q!r}")
    if v is None:
        if q > 0:
            return None
        raise ValueError("the bottom element admits only positive exponents")
    if isinstance(v, float) or isinstance(q, float):
        return v * q
    r = Fraction(v) * Fraction(q)
    return int(r) if r.denominator == 1 else r


def _p_lt(a, b):
    if a is None:
        return b is not None
    if b is None:
        return False
    return a < b


def _p_str(v):
    return "-oo" if v is None else str(v)


def _dot(u, v):
    """Max-plus dot product of two payload sequences."""
    best = None
    for a, b in zip(u, v):
        if a is None or b is None:
            continue
        s = a + b
        if best is None or s > best:
            best = s
    return best


def _mul_rows(a_rows, b_rows):
    b_cols = tuple(zip(*b_rows)) if b_rows else ()
    return tuple(
        tuple(_dot(row, col) for col in b_cols) for row in a_rows
    )


class TropScalar:
    """A max-plus scalar: a finite number or the bottom element -oo."""

    __slots__ = ("_v",)

    def __init__(self, value=None):
        self._v = _payload(value)

    @property
    def is_bottom(self):
        return self._v is None

    @property
    def value(self):
        """Underlying int / Fraction / float, or None for bottom."""
        return self._v

    def inv(self):
        """Multiplicative inverse, i.e. the negation of the value."""
        if self._v is None:
            raise ValueError("the bottom element has no inverse")
        return _scalar(-self._v)

    def root(self, k):
        """k-th tropical root, i.e. the value divided by k."""
        return self.__pow__(Fraction(1, int(k)))

    def __add__(self, other):
        o = _other_payload(other)
        if o is _MISSING:
            return NotImplemented
        return _scalar(_p_add(self._v, o))

    __radd__ = __add__

    def __mul__(self, other):
        o = _other_payload(other)
        if o is _MISSING:
            return NotImplemented
        return _scalar(_p_mul(self._v, o))

    __rmul__ = __mul__

    def __pow__(self, q):
        return _scalar(_p_pow(self._v, q))

    def __eq__(self, other):
        o = _other_payload(other)
        if o is _MISSING:
            return NotImplemented
        return self._v == o

    def __lt__(self, other):
        o = _other_payload(other)
        if o is _MISSING:
            return NotImplemented
        return _p_lt(self._v, o)

    def __le__(self, other):
        o = _other_payload(other)
        if o is _MISSING:
            return NotImplemented
        return not _p_lt(o, self._v)

    def __gt__(self, other):
        o = _other_payload(other)
        if o is _MISSING:
            return NotImplemented
        return _p_lt(o, self._v)

    def __ge__(self, other):
        o = _other_payload(other)
        if o is _MISSING:
            return NotImplemented
        return not _p_lt(self._v, o)

    def __bool__(self):
        return self._v is not None

    def __hash__(self):
        return hash(self._v)

    def __str__(self):
        return _p_str(self._v)

    def __repr__(self):
        return f"TropScalar({self._v!r})"


def _scalar(payload):
    s = TropScalar.__new__(TropScalar)
    s._v = payload
    return s


BOTTOM = TropScalar(None)
ONE = TropScalar(0)


class TropVector:
    """Max-plus vector; orientation is decided by how @ is applied."""

    __slots__ = ("_e",)

    def __init__(self, entries):
        self._e = tuple(_payload(v) for v in entries)

    @classmethod
    def _from_payloads(cls, payloads):
        v = cls.__new__(cls)
        v._e = tuple(payloads)
        return v

    @classmethod
    def zeros(cls, n):
        """Tropical zero vector: every entry bottom."""
        return cls._from_payloads([None] * n)

    @classmethod
    def ones(cls, n):
        """Tropical identity vector: every entry 0."""
        return cls._from_payloads([0] * n)

    @classmethod
    def full(cls, n, value):
        return cls([value] * n)

    @property
    def is_regular(self):
        """True when every entry is finite."""
        return all(v is not None for v in self._e)

    @property
    def is_nonzero(self):
        """True when at least one entry is finite."""
        return any(v is not None for v in self._e)

    def conj(self):
        """Conjugate transpose: entrywise inverse, bottom stays bottom."""
        if not self.is_nonzero:
            raise ValueError("zero vector has no conjugate")
        return TropVector._from_payloads(
            None if v is None else -v for v in self._e
        )

    def norm(self):
        """Largest entry (bottom for the zero or empty vector)."""
        best = None
        for v in self._e:
            best = _p_add(best, v)
        return _scalar(best)

    def __len__(self):
        return len(self._e)

    def __iter__(self):
        return (_scalar(v) for v in self._e)

    def __getitem__(self, idx):
        if isinstance(idx, slice):
            return TropVector._from_payloads(self._e[idx])
        return _scalar(self._e[idx])

    def __add__(self, other):
        if not isinstance(other, TropVector):
            return NotImplemented
        if len(self._e) != len(other._e):
            raise ValueError("vector lengths differ")
        return TropVector._from_payloads(
            _p_add(a, b) for a, b in zip(self._e, other._e)
        )

    def __mul__(self, other):
        o = _other_payload(other)
        if o is _MISSING:
            return NotImplemented
        return TropVector._from_payloads(_p_mul(v, o) for v in self._e)

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, TropVector):
            if len(self._e) != len(other._e):
                raise ValueError("vector lengths differ")
            return _scalar(_dot(self._e, other._e))
        if isinstance(other, TropMatrix):
            if len(self._e) != other._nrows:
                raise ValueError(
                    f"cannot multiply 1x{len(self._e)} by {other._nrows}x{other._ncols}"
                )
            fast = None
            if (
                _kernels.available()
                and len(self._e) * other._ncols >= _FAST_MATVEC_WORK
            ):
                fm = other._int_array()
                if fm is not None:
                    fv = _kernels.from_payload_vec(self._e)
                    if fv is not None:
                        fast = _kernels.vecmat(fv, fm)
            if fast is not None:
                return TropVector._from_payloads(_kernels.to_payload_vec(fast))
            cols = zip(*other._rows) if other._rows else ()
            return TropVector._from_payloads(
                _dot(self._e, col) for col in cols
            )
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, TropVector):
            return NotImplemented
        return self._e == other._e

    def __le__(self, other):
        if not isinstance(other, TropVector):
            return NotImplemented
        if len(self._e) != len(other._e):
            raise ValueError("vector lengths differ")
        return all(not _p_lt(b, a) for a, b in zip(self._e, other._e))

    def __ge__(self, other):
        if not isinstance(other, TropVector):
            return NotImplemented
        return other.__le__(self)

    def __hash__(self):
        return hash(self._e)

    def __str__(self):
        return "(" + ", ".join(_p_str(v) for v in self._e) + ")"

    def __repr__(self):
        return f"TropVector([{', '.join(_p_str(v) for v in self._e)}])"


class TropMatrix:
    """Dense max-plus matrix stored row-major as immutable payload tuples."""

    __slots__ = ("_rows", "_nrows", "_ncols", "_intcache")

    def __init__(self, rows):
        self._rows = tuple(
            tuple(_payload(v) for v in row) for row in rows
        )
        self._nrows = len(self._rows)
        self._ncols = len(self._rows[0]) if self._rows else 0
        for row in self._rows:
            if len(row) != self._ncols:
                raise ValueError("rows have unequal lengths")
        self._intcache = _MISSING

    @classmethod
    def _from_rows(cls, rows):
        m = cls.__new__(cls)
        m._rows = tuple(tuple(r) for r in rows)
        m._nrows = len(m._rows)
        m._ncols = len(m._rows[0]) if m._rows else 0
        m._intcache = _MISSING
        return m

    @classmethod
    def _from_int_array(cls, arr):
        m = cls._from_rows(_kernels.to_payload_rows(arr))
        m._intcache = arr
        return m

    @classmethod
    def identity(cls, n):
        return cls._from_rows(
            tuple(0 if i == j else None for j in range(n)) for i in range(n)
        )

    @classmethod
    def zeros(cls, nrows, ncols=None):
        if ncols is None:
            ncols = nrows
        return cls._from_rows(((None,) * ncols,) * nrows)

    @classmethod
    def diag(cls, values):
        entries = [_payload(v) for v in values]
        n = len(entries)
        return cls._from_rows(
            tuple(entries[i] if i == j else None for j in range(n))
            for i in range(n)
        )

    def _int_array(self):
        if self._intcache is _MISSING:
            if _kernels.available():
                self._intcache = _kernels.from_payload_rows(self._rows)
            else:
                self._intcache = None
        return self._intcache

    @property
    def shape(self):
        return (self._nrows, self._ncols)

    @property
    def is_square(self):
        return self._nrows == self._ncols

    @property
    def is_column_regular(self):
        """True when every column holds at least one finite entry."""
        return all(
            any(row[j] is not None for row in self._rows)
            for j in range(self._ncols)
        )

    def row(self, i):
        return TropVector._from_payloads(self._rows[i])

    def col(self, j):
        return TropVector._from_payloads(row[j] for row in self._rows)

    def transpose(self):
        return TropMatrix._from_rows(zip(*self._rows)) if self._rows else self

    def __getitem__(self, idx):
        if isinstance(idx, tuple):
            i, j = idx
            return _scalar(self._rows[i][j])
        return self.row(idx)

    def __add__(self, other):
        if not isinstance(other, TropMatrix):
            return NotImplemented
        if self.shape != other.shape:
            raise ValueError(f"shapes {self.shape} and {other.shape} differ")
        return TropMatrix._from_rows(
            tuple(_p_add(a, b) for a, b in zip(ra, rb))
            for ra, rb in zip(self._rows, other._rows)
        )

    def __mul__(self, other):
        o = _other_payload(other)
        if o is _MISSING:
            return NotImplemented
        return TropMatrix._from_rows(
            tuple(_p_mul(v, o) for v in row) for row in self._rows
        )

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, TropMatrix):
            if self._ncols != other._nrows:
                raise ValueError(
                    f"cannot multiply {self._nrows}x{self._ncols}"
                    f" by {other._nrows}x{other._ncols}"
                )
            if (
                _kernels.available()
                and self._nrows * self._ncols * other._ncols >= _FAST_MATMUL_WORK
            ):
                fa = self._int_array()
                fb = other._int_array()
                if fa is not None and fb is not None:
                    return TropMatrix._from_int_array(_kernels.matmul(fa, fb))
            return TropMatrix._from_rows(_mul_rows(self._rows, other._rows))
        if isinstance(other, TropVector):
            if self._ncols != len(other._e):
                raise ValueError(
                    f"cannot multiply {self._nrows}x{self._ncols}"
                    f" by {len(other._e)}x1"
                )
            if (
                _kernels.available()
                and self._nrows * self._ncols >= _FAST_MATVEC_WORK
            ):
                fa = self._int_array()
                if fa is not None:
                    fv = _kernels.from_payload_vec(other._e)
                    if fv is not None:
                        return TropVector._from_payloads(
                            _kernels.to_payload_vec(_kernels.matvec(fa, fv))
                        )
            return TropVector._from_payloads(
                _dot(row, other._e) for row in self._rows
            )
        return NotImplemented

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("matrix powers take a non-negative integer")
        if not self.is_square:
            raise ValueError("matrix powers need a square matrix")
        out = TropMatrix.identity(self._nrows)
        for _ in range(k):
            out = out @ self
        return out

    def trace(self):
        best = None
        for i in range(min(self._nrows, self._ncols)):
            best = _p_add(best, self._rows[i][i])
        return _scalar(best)

    def trace_series(self):
        """Tr(A) = tr A + tr A^2 + ... + tr A^n (tropical sums)."""
        if not self.is_square:
            raise ValueError("trace series needs a square matrix")
        acc = None
        power = self
        for k in range(self._nrows):
            if k:
                power = power @ self
            acc = _p_add(acc, power.trace()._v)
        return _scalar(acc)

    def spectral_radius(self):
        """Largest mean cycle weight: max over k of tr(A^k) / k."""
        if not self.is_square:
            raise ValueError("spectral radius needs a square matrix")
        acc = None
        power = self
        for k in range(1, self._nrows + 1):
            if k > 1:
                power = power @ self
            acc = _p_add(acc, _p_pow(power.trace()._v, Fraction(1, k)))
        return _scalar(acc)

    def norm(self):
        """Largest entry (bottom for an empty or all-bottom matrix)."""
        best = None
        for row in self._rows:
            for v in row:
                best = _p_add(best, v)
        return _scalar(best)

    def star(self):
        """Kleene star I + A + A^2 + ...; defined iff no cycle is positive.

        Raises PositiveCycleError naming a witness cycle otherwise.
        """
        if not self.is_square:
            raise ValueError("star needs a square matrix")
        n = self._nrows
        if n == 0:
            return self
        arr = self._int_array() if n >= _FAST_CLOSURE_DIM else None
        if arr is not None:
            closed = _kernels.closure(arr)
            diag = closed.diagonal()
            if (diag > 0).any():
                cycle, weight = _positive_cycle_witness(self._rows, n)
                raise PositiveCycleError(cycle, _scalar(weight))
            for i in range(n):
                if closed[i, i] < 0:
                    closed[i, i] = 0
            return TropMatrix._from_int_array(closed)
        d = _closure_rows(self._rows, n)
        for i in range(n):
            dii = d[i][i]
            if dii is not None and dii > 0:
                cycle, weight = _positive_cycle_witness(self._rows, n)
                raise PositiveCycleError(cycle, _scalar(weight))
        for i in range(n):
            d[i][i] = 0
        return TropMatrix._from_rows(d)

    def __eq__(self, other):
        if not isinstance(other, TropMatrix):
            return NotImplemented
        return self._rows == other._rows and self.shape == other.shape

    def __le__(self, other):
        if not isinstance(other, TropMatrix):
            return NotImplemented
        if self.shape != other.shape:
            raise ValueError(f"shapes {self.shape} and {other.shape} differ")
        return all(
            not _p_lt(b, a)
            for ra, rb in zip(self._rows, other._rows)
            for a, b in zip(ra, rb)
        )

    def __ge__(self, other):
        if not isinstance(other, TropMatrix):
            return NotImplemented
        return other.__le__(self)

    def __hash__(self):
        return hash((self._rows, self._ncols))

    def __str__(self):
        if not self._rows:
            return "[]"
        cells = [[_p_str(v) for v in row] for row in self._rows]
        widths = [
            max(len(cells[i][j]) for i in range(self._nrows))
            for j in range(self._ncols)
        ]
        return "\n".join(
            "[ " + "  ".join(c.rjust(w) for c, w in zip(row, widths)) + " ]"
            for row in cells
        )

    def __repr__(self):
        body = ", ".join(
            "[" + ", ".join(_p_str(v) for v in row) + "]"
            for row in self._rows
        )
        return f"TropMatrix([{body}])"


class PositiveCycleError(ValueError):
    """A cycle of positive weight makes the Kleene star diverge."""

    def __init__(self, cycle, weight):
        self.cycle = tuple(cycle)
        self.weight = weight
        path = " -> ".join(str(i) for i in (*self.cycle, self.cycle[0]))
        super().__init__(
            f"positive cycle: star diverges (nodes {path}, weight {weight})"
        )


def _closure_rows(rows, n):
    """Pure Floyd-Warshall max-plus closure; returns mutable row lists."""
    d = [list(r) for r in rows]
    for k in range(n):
        dk = d[k]
        for i in range(n):
            dik = d[i][k]
            if dik is None:
                continue
            di = d[i]
            for j in range(n):
                dkj = dk[j]
                if dkj is None:
                    continue
                v = dik + dkj
                if di[j] is None or v > di[j]:
                    di[j] = v
    return d


def _positive_cycle_witness(rows, n):
    """Find an elementary cycle of positive weight; returns (nodes, weight).

    Scans the diagonals of A^k for k = 1..n; any positive cycle of length L
    puts a positive entry on the diagonal of A^L, so the scan must hit.
    """
    for i in range(n):
        v = rows[i][i]
        if v is not None and v > 0:
            return (i,), v
    use_fast = _kernels.available()
    arr = _kernels.from_payload_rows(rows) if use_fast else None
    if arr is not None:
        power = arr
        for k in range(2, n + 1):
            power = _kernels.matmul(power, arr)
            diag = power.diagonal()
            hits = (diag > 0).nonzero()[0]
            if hits.size:
                return _walk_witness(rows, n, int(hits[0]), k)
    else:
        power = rows
        for k in range(2, n + 1):
            power = _mul_rows(power, rows)
            for j in range(n):
                pj = power[j][j]
                if pj is not None and pj > 0:
                    return _walk_witness(rows, n, j, k)
    raise AssertionError("no positive cycle found despite positive diagonal")


def _walk_witness(rows, n, j, k):
    """Recover a positive closed walk j -> j of length k, then trim it to an
    elementary cycle by splicing out non-positive sub-cycles."""
    best = [None] * n
    best[j] = 0
    parents = []
    for _ in range(k):
        nb = [None] * n
        pt = [None] * n
        for v in range(n):
            bv = best[v]
            if bv is None:
                continue
            row = rows[v]
            for w in range(n):
                e = row[w]
                if e is None:
                    continue
                cand = bv + e
                if nb[w] is None or cand > nb[w]:
                    nb[w] = cand
                    pt[w] = v
        best = nb
        parents.append(pt)
    walk = [j]
    cur = j
    for t in range(k - 1, -1, -1):
        cur = parents[t][cur]
        walk.append(cur)
    walk.reverse()

    stack = [walk[0]]
    cums = [0]
    pos = {walk[0]: 0}
    cum = 0
    for node in walk[1:]:
        cum = cum + rows[stack[-1]][node]
        if node in pos:
            t0 = pos[node]
            cw = cum - cums[t0]
            if cw > 0:
                return tuple(stack[t0:]), cw
            for v in stack[t0 + 1:]:
                del pos[v]
            del stack[t0 + 1:]
            del cums[t0 + 1:]
            cum = cums[t0]
        else:
            pos[node] = len(stack)
            stack.append(node)
            cums.append(cum)
    raise AssertionError("positive walk contained no positive cycle")


def outer(x, y):
    """Outer product: matrix with entries x_i * y_j."""
    if not isinstance(x, TropVector) or not isinstance(y, TropVector):
        raise TypeError("outer takes two vectors")
    return TropMatrix._from_rows(
        tuple(_p_mul(a, b) for b in y._e) for a in x._e
    )


def solve_leq(a, b):
    """Greatest x with a @ x <= b; a column-regular, b regular."""
    if not isinstance(a, TropMatrix) or not isinstance(b, TropVector):
        raise TypeError("solve_leq takes a matrix and a vector")
    if not b.is_regular:
        raise ValueError("right-hand side must be regular")
    if not a.is_column_regular:
        raise ValueError("matrix must be column-regular")
    return (b.conj() @ a).conj()


def _scaled_outer_sum(base, scale, pairs):
    """base + scale * (sum of outer(v, w) over pairs), all tropical.

    Fused so the solvers assemble their generator in O(n^2) per pair.
    """
    m, n = base.shape
    sp = scale._v if isinstance(scale, TropScalar) else _payload(scale)
    if not pairs:
        return base
    if _kernels.available() and type(sp) is int and m * n >= _FAST_MATVEC_WORK:
        ab = base._int_array()
        if ab is not None:
            vecs = []
            ok = True
            for v, w in pairs:
                fv = _kernels.from_payload_vec(v._e)
                fw = _kernels.from_payload_vec(w._e)
                if fv is None or fw is None:
                    ok = False
                    break
                vecs.append((fv, fw))
            if ok:
                acc = _kernels.new_bottom(m, n)
                for fv, fw in vecs:
                    _kernels.outer_acc(acc, fv, fw)
                return TropMatrix._from_int_array(
                    _kernels.scale_max(acc, sp, ab)
                )
    acc = [[None] * n for _ in range(m)]
    for v, w in pairs:
        ve = v._e
        we = w._e
        for i in range(m):
            a = ve[i]
            if a is None:
                continue
            row = acc[i]
            for j in range(n):
                b = we[j]
                if b is None:
                    continue
                s = a + b
                if row[j] is None or s > row[j]:
                    row[j] = s
    out = []
    for i in range(m):
        brow = base._rows[i]
        arow = acc[i]
        out.append(
            tuple(
                _p_add(brow[j], _p_mul(arow[j], sp)) for j in range(n)
            )
        )
    return TropMatrix._from_rows(out)
