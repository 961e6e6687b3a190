"""Exact scalars, polynomials in u, matrices over k and k[u], and 2-periodic complexes.

Scalars live either in the rationals (``fractions.Fraction``) or in a prime
field GF(p).  Polynomials are dense coefficient tuples in ascending degree.
Matrices are plain tuples of tuples.  Nothing here ever touches a float.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

__all__ = [
    "Field",
    "QQ",
    "GF",
    "Poly",
    "NotStabilized",
    "rref",
    "rank_sparse",
    "smith_normal_form",
    "Complex2P",
    "HomologyGroup",
    "Cohomology",
    "cohomology",
    "truncated_cohomology",
    "stabilized_truncated_cohomology",
    "lift_representative",
    "poly_matmul",
    "poly_identity",
    "poly_zeros",
    "matrix_to_json",
    "matrix_from_json",
]


# ---------------------------------------------------------------------------
# fields


class _GFElement:
    """Residue class modulo a prime; concrete subclasses carry ``p``."""

    __slots__ = ("v",)
    p: int = 2

    def __init__(self, v: int):
        self.v = v % self.p

    def _co(self, other):
        if isinstance(other, _GFElement):
            if other.p != self.p:
                raise ValueError("mixing different prime fields")
            return other.v
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return o
        return type(self)(self.v + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return o
        return type(self)(self.v - o)

    def __rsub__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return o
        return type(self)(o - self.v)

    def __mul__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return o
        return type(self)(self.v * o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return o
        if o % self.p == 0:
            raise ZeroDivisionError("division by zero in GF(%d)" % self.p)
        return type(self)(self.v * pow(o, -1, self.p))

    def __rtruediv__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return o
        return type(self)(o) / self

    def __neg__(self):
        return type(self)(-self.v)

    def __pos__(self):
        return self

    def __bool__(self):
        return self.v != 0

    def __eq__(self, other):
        if isinstance(other, _GFElement):
            return self.p == other.p and self.v == other.v
        if isinstance(other, int):
            return (self.v - other) % self.p == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.p, self.v))

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"{self.v} mod {self.p}"


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


class Field:
    """A ground field: the rationals (``p=None``) or GF(p)."""

    def __init__(self, p: int | None = None):
        if p is not None and not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        if p is None:
            self._elem = Fraction
        else:
            self._elem = type(f"GF{p}", (_GFElement,), {"__slots__": (), "p": p})
        self.zero = self(0)
        self.one = self(1)

    @property
    def name(self) -> str:
        return "Q" if self.p is None else f"F{self.p}"

    def __call__(self, x) -> object:
        if self.p is None:
            if isinstance(x, str):
                return Fraction(x)
            if isinstance(x, (list, tuple)):
                return Fraction(int(x[0]), int(x[1]))
            if isinstance(x, _GFElement):
                raise ValueError("cannot coerce a prime-field element into Q")
            return Fraction(x)
        if isinstance(x, self._elem):
            return x
        if isinstance(x, _GFElement):
            raise ValueError("mixing different prime fields")
        if isinstance(x, (list, tuple)):
            x = Fraction(int(x[0]), int(x[1]))
        if isinstance(x, str):
            x = Fraction(x)
        if isinstance(x, Fraction):
            return self._elem(x.numerator) / self._elem(x.denominator)
        return self._elem(int(x))

    def contains(self, x) -> bool:
        return isinstance(x, self._elem)

    def to_json(self, x):
        if self.p is None:
            x = Fraction(x)
            return x.numerator if x.denominator == 1 else [x.numerator, x.denominator]
        return int(x)

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return f"Field({self.name})"


QQ = Field()


@functools.lru_cache(maxsize=None)
def GF(p: int = 32003) -> Field:
    return Field(p)


# ---------------------------------------------------------------------------
# polynomials in u


class Poly:
    """Polynomial in the central variable u with coefficients in ``field``.

    ``coeffs`` is ascending and trimmed, so the zero polynomial is ``()``.
    """

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs: Iterable = ()):
        cs = [field(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)

    @classmethod
    def _raw(cls, field: Field, coeffs: tuple) -> "Poly":
        p = object.__new__(cls)
        p.field = field
        p.coeffs = coeffs
        return p

    @classmethod
    def zero(cls, field: Field) -> "Poly":
        return cls._raw(field, ())

    @classmethod
    def const(cls, field: Field, c) -> "Poly":
        c = field(c)
        return cls._raw(field, (c,) if c else ())

    @classmethod
    def monomial(cls, field: Field, c, k: int) -> "Poly":
        """c * u**k"""
        c = field(c)
        if not c:
            return cls._raw(field, ())
        return cls._raw(field, (field.zero,) * k + (c,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    @property
    def lead(self):
        return self.coeffs[-1]

    def is_unit(self) -> bool:
        return len(self.coeffs) == 1

    def _check(self, other: "Poly"):
        if other.field != self.field:
            raise ValueError("polynomials over different fields")

    def __add__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        if not b:
            return self
        if not a:
            return other
        self._check(other)
        if len(a) < len(b):
            a, b = b, a
        cs = list(a)
        for i, c in enumerate(b):
            cs[i] = cs[i] + c
        while cs and not cs[-1]:
            cs.pop()
        return Poly._raw(self.field, tuple(cs))

    def __neg__(self) -> "Poly":
        return Poly._raw(self.field, tuple(-c for c in self.coeffs))

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            c = self.field(other)
            if not c:
                return Poly._raw(self.field, ())
            return Poly._raw(self.field, tuple(x * c for x in self.coeffs))
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly._raw(self.field, ())
        self._check(other)
        if len(b) == 1:
            c = b[0]
            return Poly._raw(self.field, tuple(x * c for x in a))
        if len(a) == 1:
            c = a[0]
            return Poly._raw(self.field, tuple(c * x for x in b))
        out = [self.field.zero] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
        while out and not out[-1]:
            out.pop()
        return Poly._raw(self.field, tuple(out))

    __rmul__ = __mul__

    def shift(self, k: int) -> "Poly":
        """Multiply by u**k."""
        if not self.coeffs or k == 0:
            return self
        return Poly._raw(self.field, (self.field.zero,) * k + self.coeffs)

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if not other.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        self._check(other)
        r = list(self.coeffs)
        db = len(other.coeffs) - 1
        if len(r) - 1 < db:
            return Poly._raw(self.field, ()), self
        inv = self.field.one / other.coeffs[-1]
        q = [self.field.zero] * (len(r) - db)
        for k in range(len(r) - 1 - db, -1, -1):
            c = r[k + db] * inv
            q[k] = c
            if c:
                for i, y in enumerate(other.coeffs):
                    r[k + i] = r[k + i] - c * y
        r = r[:db]
        while r and not r[-1]:
            r.pop()
        while q and not q[-1]:
            q.pop()
        return Poly._raw(self.field, tuple(q)), Poly._raw(self.field, tuple(r))

    def __mod__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[1]

    def __floordiv__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[0]

    def monic(self) -> "Poly":
        if not self.coeffs:
            return self
        return self * (self.field.one / self.coeffs[-1])

    def coeff(self, k: int):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else self.field.zero

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, int) and other == 0:
            return not self.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def to_json(self) -> list:
        return [self.field.to_json(c) for c in self.coeffs]

    def __repr__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            cs = str(c.v if isinstance(c, _GFElement) else c)
            terms.append(cs if k == 0 else f"{cs}*u^{k}" if k > 1 else f"{cs}*u")
        return " + ".join(terms)


def poly_zeros(field: Field, rows: int, cols: int) -> tuple:
    z = Poly.zero(field)
    return tuple((z,) * cols for _ in range(rows))


def poly_identity(field: Field, n: int) -> tuple:
    z, o = Poly.zero(field), Poly.const(field, 1)
    return tuple(tuple(o if i == j else z for j in range(n)) for i in range(n))


def poly_matmul(field: Field, a: Sequence[Sequence[Poly]], b: Sequence[Sequence[Poly]]) -> tuple:
    rows = len(a)
    inner = len(b)
    cols = len(b[0]) if inner else 0
    if rows and len(a[0]) != inner:
        raise ValueError("matrix dimension mismatch")
    zero = Poly.zero(field)
    out = []
    for i in range(rows):
        acc = [zero] * cols
        for k, x in enumerate(a[i]):
            if not x:
                continue
            for j, y in enumerate(b[k]):
                if y:
                    acc[j] = acc[j] + x * y
        out.append(tuple(acc))
    return tuple(out)


def matrix_to_json(m: Sequence[Sequence[Poly]]) -> list:
    return [[p.to_json() for p in row] for row in m]


def matrix_from_json(field: Field, data: list) -> tuple:
    return tuple(tuple(Poly(field, c) for c in row) for row in data)


# ---------------------------------------------------------------------------
# linear algebra over the field


def rref(m: Sequence[Sequence], field: Field = QQ):
    """Reduced row echelon form over ``field``.

    Returns ``(reduced, rank, kernel_basis, pivots)``; kernel vectors are
    tuples of length ``cols``.
    """
    rows = [[field(x) for x in r] for r in m]
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = field.one / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    free = [c for c in range(ncols) if c not in pivots]
    kernel = []
    for fc in free:
        v = [field.zero] * ncols
        v[fc] = field.one
        for i, pc in enumerate(pivots):
            v[pc] = -rows[i][fc]
        kernel.append(tuple(v))
    reduced = tuple(tuple(r_) for r_ in rows)
    return reduced, len(pivots), kernel, tuple(pivots)


def solve_linear(a: Sequence[Sequence], b: Sequence, field: Field = QQ):
    """One solution x of a x = b over ``field`` or ``None``."""
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    aug = [list(a[i]) + [b[i]] for i in range(nrows)]
    red, _, _, piv = rref(aug, field) if nrows else ((), 0, [], ())
    if ncols in piv:
        return None
    x = [field.zero] * ncols
    for i, pc in enumerate(piv):
        x[pc] = red[i][ncols]
    return x


def _rank_sparse_integral(rows: Iterable[dict]) -> int:
    """Fraction-free elimination over Z; exact rank over Q."""
    basis: dict[int, dict] = {}
    rank = 0
    for row in rows:
        den = 1
        for v in row.values():
            den = den * v.denominator // math.gcd(den, v.denominator)
        row = {c: int(v * den) for c, v in row.items() if v}
        while row:
            c = min(row)
            b = basis.get(c)
            if b is None:
                g = 0
                for v in row.values():
                    g = math.gcd(g, v)
                basis[c] = {k: v // g for k, v in row.items()}
                rank += 1
                break
            pb, pr = b[c], row[c]
            g = math.gcd(pb, pr)
            mb, mr = pr // g, pb // g
            new = {k: v * mr for k, v in row.items()}
            for k, v in b.items():
                nv = new.get(k, 0) - mb * v
                if nv:
                    new[k] = nv
                else:
                    new.pop(k, None)
            g = 0
            for v in new.values():
                g = math.gcd(g, v)
                if g == 1:
                    break
            row = {k: v // g for k, v in new.items()} if g > 1 else new
    return rank


def rank_sparse(rows: Iterable[dict], field: Field = QQ) -> int:
    """Rank of a matrix given as sparse rows ``{col: value}``."""
    if field.p is None:
        return _rank_sparse_integral(rows)
    basis: dict[int, dict] = {}
    rank = 0
    for row in rows:
        row = {c: v for c, v in row.items() if v}
        while row:
            c = min(row)
            b = basis.get(c)
            if b is None:
                inv = field.one / row[c]
                basis[c] = {k: v * inv for k, v in row.items()}
                rank += 1
                break
            f = row[c]
            for k, v in b.items():
                nv = row.get(k, field.zero) - f * v
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
    return rank


# ---------------------------------------------------------------------------
# Smith normal form over k[u]


class _SparseMat:
    """Row-dict matrix used internally by the Smith normal form."""

    def __init__(self, nrows: int, ncols: int, rows: list[dict]):
        self.nrows, self.ncols, self.rows = nrows, ncols, rows

    @classmethod
    def from_dense(cls, m, nrows, ncols):
        return cls(nrows, ncols, [{j: p for j, p in enumerate(r) if p} for r in m])

    @classmethod
    def identity(cls, field, n):
        one = Poly.const(field, 1)
        return cls(n, n, [{i: one} for i in range(n)])

    def dense(self, field) -> tuple:
        z = Poly.zero(field)
        return tuple(tuple(r.get(j, z) for j in range(self.ncols)) for r in self.rows)

    def get(self, i, j):
        return self.rows[i].get(j)

    def swap_rows(self, i, j):
        self.rows[i], self.rows[j] = self.rows[j], self.rows[i]

    def swap_cols(self, i, j):
        for r in self.rows:
            a, b = r.pop(i, None), r.pop(j, None)
            if a is not None:
                r[j] = a
            if b is not None:
                r[i] = b

    def add_row(self, dst, src, q):
        """row[dst] += q * row[src]"""
        rd = self.rows[dst]
        for k, v in self.rows[src].items():
            nv = rd[k] + q * v if k in rd else q * v
            if nv:
                rd[k] = nv
            else:
                rd.pop(k, None)

    def add_col(self, dst, src, q):
        """col[dst] += col[src] * q"""
        for r in self.rows:
            v = r.get(src)
            if v is None:
                continue
            nv = r[dst] + v * q if dst in r else v * q
            if nv:
                r[dst] = nv
            else:
                r.pop(dst, None)

    def scale_row(self, i, c):
        self.rows[i] = {k: v * c for k, v in self.rows[i].items()}

    def scale_col(self, j, c):
        for r in self.rows:
            if j in r:
                r[j] = r[j] * c


@dataclass(frozen=True)
class SNF:
    U: tuple
    D: tuple
    V: tuple
    invariant_factors: tuple
    Uinv: tuple
    Vinv: tuple
    rank: int


def smith_normal_form(m: Sequence[Sequence[Poly]], field: Field, nrows: int | None = None,
                      ncols: int | None = None) -> SNF:
    """U*M*V = D with D diagonal, monic, each diagonal entry dividing the next.

    Pivot: lowest-degree nonzero entry of the active block, ties row-major.
    ``nrows``/``ncols`` are needed only for empty matrices.
    """
    nr = len(m) if nrows is None else nrows
    nc = (len(m[0]) if m else 0) if ncols is None else ncols
    A = _SparseMat.from_dense(m, nr, nc)
    U, Ui = _SparseMat.identity(field, nr), _SparseMat.identity(field, nr)
    V, Vi = _SparseMat.identity(field, nc), _SparseMat.identity(field, nc)

    def row_add(dst, src, q):  # R_dst += q R_src
        A.add_row(dst, src, q)
        U.add_row(dst, src, q)
        Ui.add_col(src, dst, -q)

    def col_add(dst, src, q):  # C_dst += C_src q
        A.add_col(dst, src, q)
        V.add_col(dst, src, q)
        Vi.add_row(src, dst, -q)

    def row_swap(i, j):
        A.swap_rows(i, j)
        U.swap_rows(i, j)
        Ui.swap_cols(i, j)

    def col_swap(i, j):
        A.swap_cols(i, j)
        V.swap_cols(i, j)
        Vi.swap_rows(i, j)

    rank = 0
    for t in range(min(nr, nc)):
        while True:
            best = None
            for i in range(t, nr):
                for j, p in A.rows[i].items():
                    if j < t:
                        continue
                    key = (p.degree, i, j)
                    if best is None or key < best:
                        best = key
            if best is None:
                break
            _, bi, bj = best
            if bi != t:
                row_swap(t, bi)
            if bj != t:
                col_swap(t, bj)
            piv = A.get(t, t)
            dirty = False
            for i in range(t + 1, nr):
                v = A.rows[i].get(t)
                if v is None:
                    continue
                q, r = v.divmod(piv)
                row_add(i, t, -q)
                if r:
                    dirty = True
            for j in sorted(k for k in A.rows[t] if k > t):
                v = A.rows[t].get(j)
                if v is None:
                    continue
                q, r = v.divmod(piv)
                col_add(j, t, -q)
                if r:
                    dirty = True
            if dirty:
                continue
            bad = None
            for i in range(t + 1, nr):
                for j in sorted(A.rows[i]):
                    if A.rows[i][j] % piv:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is not None:
                row_add(t, bad, Poly.const(field, 1))
                continue
            break
        piv = A.get(t, t)
        if piv is None:
            break
        rank += 1
        c = field.one / piv.lead
        if c != field.one:
            A.scale_row(t, c)
            U.scale_row(t, c)
            Ui.scale_col(t, 1 / c)
    D = A.dense(field)
    invs = tuple(D[i][i] for i in range(rank))
    return SNF(U.dense(field), D, V.dense(field), invs, Ui.dense(field), Vi.dense(field), rank)


# ---------------------------------------------------------------------------
# 2-periodic complexes


@dataclass(frozen=True)
class Complex2P:
    """Free k[u]-modules C0, C1 with d0: C0 -> C1 and d1: C1 -> C0.

    ``d0`` has shape rank1 x rank0 and ``d1`` has shape rank0 x rank1.
    """

    field: Field
    rank0: int
    rank1: int
    d0: tuple
    d1: tuple

    def __post_init__(self):
        if len(self.d0) != self.rank1 or any(len(r) != self.rank0 for r in self.d0):
            raise ValueError("d0 has the wrong shape")
        if len(self.d1) != self.rank0 or any(len(r) != self.rank1 for r in self.d1):
            raise ValueError("d1 has the wrong shape")

    def is_complex(self) -> bool:
        a = _SparseMat.from_dense(self.d0, self.rank1, self.rank0)
        b = _SparseMat.from_dense(self.d1, self.rank0, self.rank1)
        return _sparse_product_is_zero(a, b) and _sparse_product_is_zero(b, a)

    def shifted(self) -> "Complex2P":
        return Complex2P(self.field, self.rank1, self.rank0, self.d1, self.d0)

    def differential(self, degree: int) -> tuple:
        return self.d0 if degree % 2 == 0 else self.d1

    def rank(self, degree: int) -> int:
        return self.rank0 if degree % 2 == 0 else self.rank1

    def apply(self, degree: int, vec: Sequence[Poly]) -> tuple:
        d = self.differential(degree)
        zero = Poly.zero(self.field)
        out = []
        for row in d:
            acc = zero
            for x, y in zip(row, vec):
                if x and y:
                    acc = acc + x * y
            out.append(acc)
        return tuple(out)

    def to_json(self) -> dict:
        return {"rank0": self.rank0, "rank1": self.rank1,
                "d0": matrix_to_json(self.d0), "d1": matrix_to_json(self.d1)}


def _sparse_product_is_zero(a: _SparseMat, b: _SparseMat) -> bool:
    # a is (m x k), b is (k x n); test a*b == 0
    for row in a.rows:
        acc: dict = {}
        for k, x in row.items():
            for j, y in b.rows[k].items():
                acc[j] = acc[j] + x * y if j in acc else x * y
        if any(acc.values()):
            return False
    return True


@dataclass(frozen=True)
class HomologyGroup:
    """ker(d_out)/im(d_in) for one degree of a 2-periodic complex."""

    field: Field
    free_rank: int
    torsion: tuple  # monic invariant factors of positive degree
    # internal data used for representatives and classes
    _kernel: tuple  # columns of the kernel basis, each a tuple of Poly
    _factors: tuple  # all nonzero invariant factors of the image in the kernel basis
    _P: tuple
    _Pinv: tuple
    _Vinv_rows: tuple  # rows of Vinv selecting kernel coordinates
    _offset: int

    @property
    def dim(self) -> int | None:
        """k-dimension, or None when the group has a free part."""
        if self.free_rank:
            return None
        return sum(f.degree for f in self.torsion)

    def basis(self) -> list[tuple[int, int]]:
        """k-basis of the torsion part as (summand index, u-power)."""
        out = []
        for i, f in enumerate(self._factors):
            for e in range(f.degree):
                out.append((i, e))
        return out

    def generator(self, i: int) -> tuple:
        """Cycle representing the generator of summand ``i``."""
        zero = Poly.zero(self.field)
        col = [row[i] for row in self._Pinv]
        out = []
        for krow in self._kernel_rows():
            acc = zero
            for a, b in zip(krow, col):
                if a and b:
                    acc = acc + a * b
            out.append(acc)
        return tuple(out)

    def _kernel_rows(self):
        # kernel basis stored as columns; iterate rows of the matrix K
        if not self._kernel:
            return []
        n = len(self._kernel[0])
        return [tuple(col[r] for col in self._kernel) for r in range(n)]

    def representative(self, index: int) -> tuple:
        b = self.basis()
        if not 0 <= index < len(b):
            raise IndexError("cohomology class index out of range")
        i, e = b[index]
        return tuple(p.shift(e) for p in self.generator(i))

    def coordinates(self, cycle: Sequence[Poly]) -> list:
        """k-coordinates of the class of ``cycle`` in the basis of ``basis()``.

        Raises ValueError when the class has a nonzero free component.
        """
        zero = Poly.zero(self.field)
        c = []
        for row in self._Vinv_rows:
            acc = zero
            for a, b in zip(row, cycle):
                if a and b:
                    acc = acc + a * b
            c.append(acc)
        y = []
        for row in self._P:
            acc = zero
            for a, b in zip(row, c):
                if a and b:
                    acc = acc + a * b
            y.append(acc)
        out = []
        for i, f in enumerate(self._factors):
            r = y[i] % f
            for e in range(f.degree):
                out.append(r.coeff(e))
        if any(y[len(self._factors):]):
            raise ValueError("class has a free component")
        return out


@dataclass(frozen=True)
class Cohomology:
    H0: HomologyGroup
    H1: HomologyGroup

    def __getitem__(self, degree: int) -> HomologyGroup:
        return self.H0 if degree % 2 == 0 else self.H1

    @property
    def dims(self) -> tuple:
        return (self.H0.dim, self.H1.dim)

    def summary(self) -> dict:
        return {
            f"H{d}": {
                "free_rank": h.free_rank,
                "torsion": [f.to_json() for f in h.torsion],
                "dim": h.dim,
            }
            for d, h in ((0, self.H0), (1, self.H1))
        }


def _homology(field: Field, d_out: tuple, n: int, m_out: int, d_in: tuple, m_in: int) -> HomologyGroup:
    """ker(d_out: k[u]^n -> k[u]^m_out) / im(d_in: k[u]^m_in -> k[u]^n)."""
    s1 = smith_normal_form(d_out, field, m_out, n)
    r = s1.rank
    vinv = s1.Vinv
    ker_rows = vinv[r:]
    kernel_cols = tuple(tuple(s1.V[i][j] for i in range(n)) for j in range(r, n))
    # coordinates of im(d_in) in the kernel basis
    prod = poly_matmul(field, vinv, d_in) if n else ()
    if any(p for row in prod[:r] for p in row):
        raise ValueError("d_out * d_in != 0")
    A = prod[r:]
    s2 = smith_normal_form(A, field, n - r, m_in)
    factors = s2.invariant_factors
    free = (n - r) - s2.rank
    torsion = tuple(f for f in factors if f.degree > 0)
    return HomologyGroup(field, free, torsion, kernel_cols, factors, s2.U, s2.Uinv, ker_rows, r)


def cohomology(C: Complex2P) -> Cohomology:
    """H0 = ker d0 / im d1 and H1 = ker d1 / im d0 via Smith normal form."""
    h0 = _homology(C.field, C.d0, C.rank0, C.rank1, C.d1, C.rank1)
    h1 = _homology(C.field, C.d1, C.rank1, C.rank0, C.d0, C.rank0)
    return Cohomology(h0, h1)


def lift_representative(C: Complex2P, degree: int, index: int, H: Cohomology | None = None) -> tuple:
    """Explicit cycle representing the ``index``-th k-basis class of H^degree."""
    H = H or cohomology(C)
    return H[degree].representative(index)


# ---------------------------------------------------------------------------
# truncation oracle


class NotStabilized(RuntimeError):
    pass


def _truncated_rows(d: tuple, src_rank: int, lo: int, hi: int):
    """Sparse columns of d restricted to sources u^e*b_j with lo <= e < hi.

    Returned as rows of the transposed matrix (one dict per source element),
    keyed by target index (row, exponent).
    """
    out = []
    for e in range(lo, hi):
        for j in range(src_rank):
            col: dict = {}
            for i, row in enumerate(d):
                p = row[j]
                for k, c in enumerate(p.coeffs):
                    if c:
                        col[(k + e, i)] = c
            out.append(col)
    return out


def _truncated_degree(field: Field, d_out, n, d_in, m_in, W: int, margin: int) -> int:
    # cycles of u-degree < W
    cols = _truncated_rows(d_out, n, 0, W)
    keyed = [{_key(k): v for k, v in c.items()} for c in cols]
    z = W * n - rank_sparse(keyed, field)
    # boundaries of u-degree < W, from sources of degree < W + margin
    imgs = _truncated_rows(d_in, m_in, 0, W + margin)
    full = rank_sparse(({_key(k): v for k, v in c.items()} for c in imgs), field)
    high = rank_sparse(({_key(k): v for k, v in c.items() if k[0] >= W} for c in imgs), field)
    return z - (full - high)


def _key(k):
    e, i = k
    return e * 1_000_003 + i


def truncated_cohomology(C: Complex2P, W: int) -> tuple[int, int]:
    """k-dimensions of the classes represented in u-degrees < W.

    h(W) = dim(cycles of degree < W) - dim(boundaries of degree < W); this is
    monotone in W and equals dim H once representatives fit, and grows without
    bound when H has a free part.
    """
    if W < 0:
        raise ValueError("W must be non-negative")
    maxdeg = max([p.degree for row in C.d0 + C.d1 for p in row if p] + [0])
    margin = W + maxdeg + 1
    h0 = _truncated_degree(C.field, C.d0, C.rank0, C.d1, C.rank1, W, margin)
    h1 = _truncated_degree(C.field, C.d1, C.rank1, C.d0, C.rank0, W, margin)
    return h0, h1


def stabilized_truncated_cohomology(C: Complex2P, W: int = 4) -> tuple[int, int]:
    """truncated_cohomology at W, W+1, W+2; raises NotStabilized unless equal."""
    vals = [truncated_cohomology(C, w) for w in (W, W + 1, W + 2)]
    if not (vals[0] == vals[1] == vals[2]):
        raise NotStabilized(f"truncated cohomology not stable: {vals}")
    return vals[0]
