"""Exact complex arithmetic over the Gaussian rationals Q(i).

Matrices are stored sparsely (only nonzero entries) but behave as dense
``rows x cols`` grids: JSON, equality and indexing all see every entry.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable

import numpy as np

_ZERO = Fraction(0)
_ONE = Fraction(1)


class GaussianRational:
    """``re + i*im`` with ``re, im`` in Q (stored as reduced Fractions)."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, GaussianRational):
            if im:
                raise TypeError("cannot combine a GaussianRational with an imaginary part")
            self.re, self.im = re.re, re.im
            return
        if isinstance(re, float) or isinstance(im, float):
            raise TypeError("floats are not exact; pass Fraction or int")
        self.re = Fraction(re)
        self.im = Fraction(im)

    @classmethod
    def _raw(cls, re: Fraction, im: Fraction) -> "GaussianRational":
        z = object.__new__(cls)
        z.re = re
        z.im = im
        return z

    @classmethod
    def coerce(cls, x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, complex):
            raise TypeError("complex floats are not exact")
        return cls(x)

    def conjugate(self) -> "GaussianRational":
        return GaussianRational._raw(self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def is_real(self) -> bool:
        return not self.im

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __neg__(self):
        return GaussianRational._raw(-self.re, -self.im)

    def __add__(self, other):
        if not isinstance(other, GaussianRational):
            if isinstance(other, (int, Rational)):
                return GaussianRational._raw(self.re + other, self.im)
            return NotImplemented
        return GaussianRational._raw(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, GaussianRational):
            if isinstance(other, (int, Rational)):
                return GaussianRational._raw(self.re - other, self.im)
            return NotImplemented
        return GaussianRational._raw(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, GaussianRational):
            if isinstance(other, (int, Rational)):
                return GaussianRational._raw(self.re * other, self.im * other)
            return NotImplemented
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b:
            if not d:
                return GaussianRational._raw(a * c, _ZERO)
            return GaussianRational._raw(a * c, a * d)
        if not d:
            return GaussianRational._raw(a * c, b * c)
        return GaussianRational._raw(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def inverse(self) -> "GaussianRational":
        n = self.abs2()
        if not n:
            raise ZeroDivisionError("GaussianRational division by zero")
        return GaussianRational._raw(self.re / n, -self.im / n)

    def __truediv__(self, other):
        if not isinstance(other, GaussianRational):
            if isinstance(other, (int, Rational)):
                return GaussianRational._raw(self.re / other, self.im / other)
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) * self.inverse()

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Rational)):
            return self.re == other and not self.im
        return NotImplemented

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        if not self.im:
            return f"GR({self.re})"
        return f"GR({self.re}, {self.im})"

    def to_json(self) -> list[int]:
        return [self.re.numerator, self.re.denominator, self.im.numerator, self.im.denominator]

    @classmethod
    def from_json(cls, q) -> "GaussianRational":
        if not (isinstance(q, (list, tuple)) and len(q) == 4 and all(isinstance(x, int) for x in q)):
            raise ValueError(f"entry {q!r} must be [re_num, re_den, im_num, im_den]")
        if q[1] <= 0 or q[3] <= 0:
            raise ValueError(f"entry {q!r} has a non-positive denominator")
        return cls(Fraction(q[0], q[1]), Fraction(q[2], q[3]))


GR = GaussianRational
ZERO = GR(0)
ONE = GR(1)
I_UNIT = GR(0, 1)


def parse_rational(text) -> Fraction:
    """Parse ``"num/den"`` (or an int) into a Fraction."""
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise ValueError(f"expected a 'num/den' string, got {text!r}")
    return Fraction(text)


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


class Matrix:
    """Exact ``rows x cols`` matrix over Q(i), stored as {(i, j): nonzero entry}."""

    __slots__ = ("rows", "cols", "data", "_hash")

    def __init__(self, rows: int, cols: int, data: dict | None = None):
        self.rows = rows
        self.cols = cols
        self.data = {}
        self._hash = None
        if data:
            for (i, j), v in data.items():
                if not (0 <= i < rows and 0 <= j < cols):
                    raise IndexError(f"entry ({i}, {j}) outside {rows}x{cols}")
                v = GR.coerce(v)
                if v:
                    self.data[(i, j)] = v

    @classmethod
    def _wrap(cls, rows, cols, data):
        m = object.__new__(cls)
        m.rows, m.cols, m.data, m._hash = rows, cols, data, None
        return m

    # constructors
    @classmethod
    def zeros(cls, rows, cols) -> "Matrix":
        return cls._wrap(rows, cols, {})

    @classmethod
    def identity(cls, n) -> "Matrix":
        return cls._wrap(n, n, {(i, i): ONE for i in range(n)})

    @classmethod
    def unit(cls, rows, cols, i, j, value=ONE) -> "Matrix":
        """Matrix unit ``|i><j|`` (optionally scaled)."""
        return cls(rows, cols, {(i, j): value})

    @classmethod
    def from_rows(cls, rows: list) -> "Matrix":
        r = len(rows)
        c = len(rows[0]) if r else 0
        data = {}
        for i, row in enumerate(rows):
            if len(row) != c:
                raise ValueError("ragged rows")
            for j, v in enumerate(row):
                v = GR.coerce(v)
                if v:
                    data[(i, j)] = v
        return cls._wrap(r, c, data)

    @classmethod
    def column(cls, entries) -> "Matrix":
        return cls.from_rows([[x] for x in entries])

    @classmethod
    def diag(cls, entries) -> "Matrix":
        entries = [GR.coerce(x) for x in entries]
        n = len(entries)
        return cls._wrap(n, n, {(i, i): v for i, v in enumerate(entries) if v})

    # access
    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij) -> GaussianRational:
        return self.data.get(ij, ZERO)

    def to_rows(self) -> list[list[GaussianRational]]:
        out = [[ZERO] * self.cols for _ in range(self.rows)]
        for (i, j), v in self.data.items():
            out[i][j] = v
        return out

    def is_zero(self) -> bool:
        return not self.data

    def nnz(self) -> int:
        return len(self.data)

    # algebra
    def adjoint(self) -> "Matrix":
        return Matrix._wrap(
            self.cols, self.rows, {(j, i): v.conjugate() for (i, j), v in self.data.items()}
        )

    def transpose(self) -> "Matrix":
        return Matrix._wrap(self.cols, self.rows, {(j, i): v for (i, j), v in self.data.items()})

    def conj(self) -> "Matrix":
        return Matrix._wrap(self.rows, self.cols, {k: v.conjugate() for k, v in self.data.items()})

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} + {other.shape}")
        out = dict(self.data)
        for k, v in other.data.items():
            s = out.get(k)
            if s is None:
                out[k] = v
            else:
                s = s + v
                if s:
                    out[k] = s
                else:
                    del out[k]
        return Matrix._wrap(self.rows, self.cols, out)

    def __neg__(self):
        return Matrix._wrap(self.rows, self.cols, {k: -v for k, v in self.data.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "Matrix":
        c = GR.coerce(c)
        if not c:
            return Matrix.zeros(self.rows, self.cols)
        return Matrix._wrap(self.rows, self.cols, {k: v * c for k, v in self.data.items()})

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        by_row: dict[int, list] = {}
        for (k, j), b in other.data.items():
            by_row.setdefault(k, []).append((j, b))
        out: dict = {}
        for (i, k), a in self.data.items():
            row = by_row.get(k)
            if not row:
                continue
            for j, b in row:
                key = (i, j)
                p = a * b
                s = out.get(key)
                out[key] = p if s is None else s + p
        return Matrix._wrap(self.rows, other.cols, {k: v for k, v in out.items() if v})

    def kron(self, other: "Matrix") -> "Matrix":
        r2, c2 = other.rows, other.cols
        out = {}
        for (i, j), a in self.data.items():
            for (k, l), b in other.data.items():
                out[(i * r2 + k, j * c2 + l)] = a * b
        return Matrix._wrap(self.rows * r2, self.cols * c2, out)

    def direct_sum(self, other: "Matrix") -> "Matrix":
        out = dict(self.data)
        r, c = self.rows, self.cols
        for (i, j), v in other.data.items():
            out[(i + r, j + c)] = v
        return Matrix._wrap(r + other.rows, c + other.cols, out)

    def embed(self, rows: int, cols: int, row_off: int, col_off: int) -> "Matrix":
        """Place this matrix as a block inside a larger zero matrix."""
        return Matrix._wrap(
            rows, cols, {(i + row_off, j + col_off): v for (i, j), v in self.data.items()}
        )

    def submatrix(self, row_idx: list[int], col_idx: list[int]) -> "Matrix":
        rpos = {r: k for k, r in enumerate(row_idx)}
        cpos = {c: k for k, c in enumerate(col_idx)}
        return Matrix._wrap(
            len(row_idx),
            len(col_idx),
            {
                (rpos[i], cpos[j]): v
                for (i, j), v in self.data.items()
                if i in rpos and j in cpos
            },
        )

    def trace(self) -> GaussianRational:
        t = ZERO
        for (i, j), v in self.data.items():
            if i == j:
                t = t + v
        return t

    def frobenius2(self) -> Fraction:
        return sum((v.abs2() for v in self.data.values()), _ZERO)

    def is_scalar_identity(self) -> GaussianRational | None:
        """Return ``c`` if this square matrix equals ``c*I``, else None."""
        if self.rows != self.cols:
            return None
        if not self.data:
            return ZERO
        c = self.data.get((0, 0))
        if c is None or len(self.data) != self.rows:
            return None
        for i in range(self.rows):
            if self.data.get((i, i)) != c:
                return None
        return c

    def vec(self) -> dict[int, GaussianRational]:
        """Row-major vectorization as a sparse {flat_index: value} dict."""
        c = self.cols
        return {i * c + j: v for (i, j), v in self.data.items()}

    @classmethod
    def from_vec(cls, vec: dict, rows: int, cols: int) -> "Matrix":
        return cls._wrap(rows, cols, {divmod(k, cols): v for k, v in vec.items() if v})

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.data == other.data

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, frozenset(self.data.items())))
        return self._hash

    def to_numpy(self) -> np.ndarray:
        a = np.zeros((self.rows, self.cols), dtype=complex)
        for (i, j), v in self.data.items():
            a[i, j] = complex(v)
        return a

    def to_json(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [z.to_json() for row in self.to_rows() for z in row],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Matrix":
        for key in ("rows", "cols", "entries"):
            if key not in data:
                raise ValueError(f"matrix JSON missing '{key}'")
        r, c = data["rows"], data["cols"]
        entries = data["entries"]
        if not (isinstance(r, int) and isinstance(c, int) and r >= 0 and c >= 0):
            raise ValueError("matrix 'rows'/'cols' must be nonnegative integers")
        if len(entries) != r * c:
            raise ValueError(f"matrix 'entries' has {len(entries)} items, expected {r * c}")
        out = {}
        for k, q in enumerate(entries):
            z = GR.from_json(q)
            if z:
                out[divmod(k, c)] = z
        return cls._wrap(r, c, out)

    def __repr__(self):
        return f"Matrix({self.rows}x{self.cols}, nnz={len(self.data)})"


def kron_all(mats: Iterable[Matrix]) -> Matrix:
    it = iter(mats)
    out = next(it)
    for m in it:
        out = out.kron(m)
    return out


def inner(u: list, v: list) -> GaussianRational:
    """Inner product <u, v>, antilinear in ``u``."""
    if len(u) != len(v):
        raise ValueError("vector length mismatch")
    s = ZERO
    for a, b in zip(u, v):
        if a and b:
            s = s + a.conjugate() * b
    return s


def norm2(u: list) -> Fraction:
    return sum((GR.coerce(a).abs2() for a in u), _ZERO)


def as_vector(entries) -> list[GaussianRational]:
    return [GR.coerce(x) for x in entries]


def kron_vec(u: list, v: list) -> list:
    return [a * b for a in u for b in v]


class EchelonSpace:
    """Span of sparse vectors kept in reduced row-echelon form.

    Pivot of a row is its smallest nonzero index (row-major for vectorized
    matrices); the pivot entry is normalized to 1 and cleared from every
    other row, so membership is a single reduction pass.
    """

    def __init__(self, dim: int):
        self.dim = dim
        self.rows: dict[int, dict[int, GaussianRational]] = {}

    def __len__(self):
        return len(self.rows)

    def reduce(self, vec: dict) -> dict:
        v = dict(vec)
        rows = self.rows
        # Rows are zero at all other pivots, so eliminating never creates pivot entries.
        for p in [k for k in v if k in rows]:
            c = v.get(p)
            if c is None:
                continue
            for k, x in rows[p].items():
                s = v.get(k)
                t = c * x
                if s is None:
                    v[k] = -t
                else:
                    s = s - t
                    if s:
                        v[k] = s
                    else:
                        del v[k]
        return v

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)

    def add(self, vec: dict) -> bool:
        """Insert a vector; return False if it was already in the span."""
        r = self.reduce(vec)
        if not r:
            return False
        p = min(r)
        inv = r[p].inverse()
        r = {k: x * inv for k, x in r.items()}
        for q, row in self.rows.items():
            c = row.get(p)
            if c is None:
                continue
            for k, x in r.items():
                s = row.get(k)
                t = c * x
                if s is None:
                    row[k] = -t
                else:
                    s = s - t
                    if s:
                        row[k] = s
                    else:
                        del row[k]
        self.rows[p] = r
        return True

    def basis(self) -> list[dict]:
        return [self.rows[p] for p in sorted(self.rows)]


def rank(mat: Matrix) -> int:
    """Exact rank over Q(i)."""
    space = EchelonSpace(mat.cols)
    rows: dict[int, dict] = {}
    for (i, j), v in mat.data.items():
        rows.setdefault(i, {})[j] = v
    for row in rows.values():
        space.add(row)
    return len(space)


def stack_rows(mats: list[Matrix]) -> Matrix:
    cols = mats[0].cols
    data = {}
    off = 0
    for m in mats:
        if m.cols != cols:
            raise ValueError("column mismatch when stacking")
        for (i, j), v in m.data.items():
            data[(i + off, j)] = v
        off += m.rows
    return Matrix._wrap(off, cols, data)


def rank_mod_p(rows: list[list[int]], p: int) -> int:
    """Rank of an integer matrix over the prime field F_p."""
    m = [[x % p for x in r] for r in rows]
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], p - 2, p)
        m[r] = [(x * inv) % p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return r


