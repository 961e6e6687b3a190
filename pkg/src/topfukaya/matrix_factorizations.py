"""Graded matrix factorizations of z^(n+1) and their Hom complexes over k[u].

A homogeneous map R(s) -> R(t) of internal degree 0 is z^d * p(u) with
d = (t - s) mod (n+1) and u = z^(n+1).  The exponent d is therefore fixed by the
shifts, and a matrix only stores the k[u]-coefficients.  Products carry into u
when exponents add up past n.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .cyclic_combinatorics import CyclicMap
from .exact_linalg import (
    QQ,
    Cohomology,
    Complex2P,
    Field,
    Poly,
    cohomology,
    solve_linear,
)


# ---------------------------------------------------------------------------
# graded matrices


@dataclass(frozen=True)
class GMat:
    """Matrix of homogeneous maps between sums of shifted R(s)."""

    field: Field
    N: int
    rows: tuple  # shifts of the target summands
    cols: tuple  # shifts of the source summands
    entries: tuple  # len(rows) x len(cols) Poly

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(s % self.N for s in self.rows))
        object.__setattr__(self, "cols", tuple(s % self.N for s in self.cols))
        if len(self.entries) != len(self.rows) or any(len(r) != len(self.cols) for r in self.entries):
            raise ValueError("entry grid does not match the shifts")

    @classmethod
    def zero(cls, field: Field, N: int, rows: Sequence[int], cols: Sequence[int]) -> "GMat":
        z = Poly.zero(field)
        return cls(field, N, tuple(rows), tuple(cols), tuple(tuple(z for _ in cols) for _ in rows))

    @classmethod
    def identity(cls, field: Field, N: int, shifts: Sequence[int]) -> "GMat":
        z, o = Poly.zero(field), Poly.const(field, 1)
        k = len(shifts)
        return cls(field, N, tuple(shifts), tuple(shifts),
                   tuple(tuple(o if i == j else z for j in range(k)) for i in range(k)))

    @classmethod
    def from_dict(cls, field: Field, N: int, rows, cols, d: dict) -> "GMat":
        z = Poly.zero(field)
        return cls(field, N, tuple(rows), tuple(cols),
                   tuple(tuple(d.get((i, j), z) for j in range(len(cols))) for i in range(len(rows))))

    @property
    def shape(self) -> tuple:
        return len(self.rows), len(self.cols)

    def exponent(self, r: int, c: int) -> int:
        return (self.rows[r] - self.cols[c]) % self.N

    def __matmul__(self, other: "GMat") -> "GMat":
        if self.cols != other.rows or self.N != other.N:
            raise ValueError("graded matrices are not composable")
        N = self.N
        z = Poly.zero(self.field)
        out = []
        for r in range(len(self.rows)):
            row = []
            for c in range(len(other.cols)):
                acc = z
                for k in range(len(self.cols)):
                    a, b = self.entries[r][k], other.entries[k][c]
                    if a and b:
                        p = a * b
                        if self.exponent(r, k) + other.exponent(k, c) >= N:
                            p = p.shift(1)
                        acc = acc + p
                row.append(acc)
            out.append(tuple(row))
        return GMat(self.field, N, self.rows, other.cols, tuple(out))

    def _check_same(self, other: "GMat"):
        if self.rows != other.rows or self.cols != other.cols or self.N != other.N:
            raise ValueError("graded matrices have different shapes")

    def __add__(self, other: "GMat") -> "GMat":
        self._check_same(other)
        return GMat(self.field, self.N, self.rows, self.cols,
                    tuple(tuple(a + b for a, b in zip(r1, r2)) for r1, r2 in zip(self.entries, other.entries)))

    def __neg__(self) -> "GMat":
        return GMat(self.field, self.N, self.rows, self.cols,
                    tuple(tuple(-a for a in r) for r in self.entries))

    def __sub__(self, other: "GMat") -> "GMat":
        return self + (-other)

    def scale(self, c) -> "GMat":
        return GMat(self.field, self.N, self.rows, self.cols,
                    tuple(tuple(a * c for a in r) for r in self.entries))

    def is_zero(self) -> bool:
        return not any(a for r in self.entries for a in r)

    def block(self, r0: int, r1: int, c0: int, c1: int) -> "GMat":
        return GMat(self.field, self.N, self.rows[r0:r1], self.cols[c0:c1],
                    tuple(tuple(r[c0:c1]) for r in self.entries[r0:r1]))

    def transpose(self) -> "GMat":
        """Transpose with negated shifts; exponents are unchanged."""
        return GMat(self.field, self.N, tuple(-s for s in self.cols), tuple(-s for s in self.rows),
                    tuple(tuple(self.entries[i][j] for i in range(len(self.rows))) for j in range(len(self.cols))))

    def to_json(self) -> list:
        return [[{"d": self.exponent(i, j), "poly": p.to_json()} for j, p in enumerate(r)]
                for i, r in enumerate(self.entries)]


def block_matrix(blocks: Sequence[Sequence[GMat]]) -> GMat:
    """Assemble from a grid of blocks with matching shifts."""
    first = blocks[0][0]
    rows = tuple(s for br in blocks for s in br[0].rows)
    cols = tuple(s for b in blocks[0] for s in b.cols)
    for br in blocks:
        for j, b in enumerate(br):
            if b.cols != blocks[0][j].cols or b.rows != br[0].rows:
                raise ValueError("block shifts do not line up")
    entries = []
    for br in blocks:
        for i in range(len(br[0].rows)):
            entries.append(tuple(p for b in br for p in b.entries[i]))
    return GMat(first.field, first.N, rows, cols, tuple(entries))


def _u_identity(field: Field, N: int, shifts: Sequence[int]) -> GMat:
    return GMat.identity(field, N, shifts).scale(Poly.monomial(field, 1, 1))


# ---------------------------------------------------------------------------
# objects


@dataclass(frozen=True)
class GradedMF:
    """M1 --phi--> M0 --psi--> M1 with phi psi = psi phi = u."""

    n: int
    shifts0: tuple
    shifts1: tuple
    phi: GMat  # M1 -> M0
    psi: GMat  # M0 -> M1

    def __post_init__(self):
        N = self.n + 1
        object.__setattr__(self, "shifts0", tuple(s % N for s in self.shifts0))
        object.__setattr__(self, "shifts1", tuple(s % N for s in self.shifts1))
        if len(self.shifts0) != len(self.shifts1):
            raise ValueError("even and odd modules must have equal rank")
        if self.phi.N != N or self.psi.N != N:
            raise ValueError("matrix modulus does not match n")
        if self.phi.rows != self.shifts0 or self.phi.cols != self.shifts1:
            raise ValueError("phi must map M1 to M0")
        if self.psi.rows != self.shifts1 or self.psi.cols != self.shifts0:
            raise ValueError("psi must map M0 to M1")

    @property
    def field(self) -> Field:
        return self.phi.field

    @property
    def N(self) -> int:
        return self.n + 1

    @property
    def rank(self) -> int:
        return len(self.shifts0)

    @property
    def shifts(self) -> tuple:
        return self.shifts0 + self.shifts1

    def is_factorization(self) -> bool:
        u0 = _u_identity(self.field, self.N, self.shifts0)
        u1 = _u_identity(self.field, self.N, self.shifts1)
        return (self.phi @ self.psi) == u0 and (self.psi @ self.phi) == u1

    def validated(self) -> "GradedMF":
        if not self.is_factorization():
            raise ValueError("phi psi != u")
        return self

    def D(self) -> GMat:
        """The odd operator [[0, phi], [psi, 0]] on M0 + M1."""
        z00 = GMat.zero(self.field, self.N, self.shifts0, self.shifts0)
        z11 = GMat.zero(self.field, self.N, self.shifts1, self.shifts1)
        return block_matrix([[z00, self.phi], [self.psi, z11]])

    def to_json(self) -> dict:
        return {"n": self.n, "shifts0": list(self.shifts0), "shifts1": list(self.shifts1),
                "phi": self.phi.to_json(), "psi": self.psi.to_json()}

    @classmethod
    def from_json(cls, data: dict, field: Field = QQ) -> "GradedMF":
        n = int(data["n"])
        N = n + 1
        s0 = tuple(int(s) % N for s in data["shifts0"])
        s1 = tuple(int(s) % N for s in data["shifts1"])

        def mat(grid, rows, cols):
            ent = []
            for i, r in enumerate(grid):
                row = []
                for j, cell in enumerate(r):
                    p = Poly(field, [field(c) for c in cell["poly"]])
                    if p and int(cell["d"]) != (rows[i] - cols[j]) % N:
                        raise ValueError(f"entry ({i},{j}) has exponent incompatible with the shifts")
                    row.append(p)
                ent.append(tuple(row))
            return GMat(field, N, rows, cols, tuple(ent))

        return cls(n, s0, s1, mat(data["phi"], s0, s1), mat(data["psi"], s1, s0)).validated()


def rank_one(n: int, i: int, j: int, primed: bool = False, field: Field = QQ) -> GradedMF:
    """[i,j] = R(i) -> R(j) -> R(i); for i = j, [i,i] = (1, u) and [i,i]' = (u, 1)."""
    N = n + 1
    i, j = i % N, j % N
    one, u = Poly.const(field, 1), Poly.monomial(field, 1, 1)
    if i != j:
        if primed:
            raise ValueError("the primed flavor only exists for i = j")
        a, b = one, one
    else:
        a, b = (u, one) if primed else (one, u)
    phi = GMat(field, N, (j,), (i,), ((a,),))
    psi = GMat(field, N, (i,), (j,), ((b,),))
    return GradedMF(n, (j,), (i,), phi, psi)


def zero_object(n: int, field: Field = QQ) -> GradedMF:
    N = n + 1
    return GradedMF(n, (), (), GMat.zero(field, N, (), ()), GMat.zero(field, N, (), ()))


def direct_sum(*objs: GradedMF) -> GradedMF:
    if not objs:
        raise ValueError("empty direct sum")
    n, field = objs[0].n, objs[0].field
    N = n + 1
    s0 = tuple(s for M in objs for s in M.shifts0)
    s1 = tuple(s for M in objs for s in M.shifts1)

    def diag(get, rows_of, cols_of):
        grid = []
        for a, A in enumerate(objs):
            grid.append([get(A) if a == b else GMat.zero(field, N, rows_of(A), cols_of(B))
                         for b, B in enumerate(objs)])
        return block_matrix(grid)

    phi = diag(lambda M: M.phi, lambda M: M.shifts0, lambda M: M.shifts1)
    psi = diag(lambda M: M.psi, lambda M: M.shifts1, lambda M: M.shifts0)
    return GradedMF(n, s0, s1, phi, psi)


def suspension(M: GradedMF) -> GradedMF:
    """Swap the two modules and negate both maps."""
    return GradedMF(M.n, M.shifts1, M.shifts0, -M.psi, -M.phi)


def grading_shift(M: GradedMF, k: int = 1) -> GradedMF:
    """Rotation: every R(s) becomes R(s + k)."""

    def sh(g: GMat) -> GMat:
        return GMat(g.field, g.N, tuple(s + k for s in g.rows), tuple(s + k for s in g.cols), g.entries)

    return GradedMF(M.n, tuple(s + k for s in M.shifts0), tuple(s + k for s in M.shifts1),
                    sh(M.phi), sh(M.psi))


def dual_object(M: GradedMF) -> GradedMF:
    """Dual with the sign twist undone: M0* = M1^v, M1* = M0^v, (phi, psi) -> (-phi^T, -psi^T)."""
    return GradedMF(M.n, tuple(-s for s in M.shifts1), tuple(-s for s in M.shifts0),
                    -M.phi.transpose(), -M.psi.transpose())


def pushforward_matrix(f: CyclicMap, g: GMat) -> GMat:
    """Push a graded matrix along f: <m> -> <n>, entrywise through the induced path map."""
    if f.source.size != g.N:
        raise ValueError("map source does not match the category index")
    N = f.target.size
    ent = []
    for r in range(len(g.rows)):
        row = []
        for c in range(len(g.cols)):
            p = g.entries[r][c]
            if p:
                s, d = g.cols[c], g.exponent(r, c)
                p = p.shift((f.lift(s + d) - f.lift(s)) // N)
            row.append(p)
        ent.append(tuple(row))
    return GMat(g.field, N, tuple(f(s) for s in g.rows), tuple(f(s) for s in g.cols), tuple(ent))


def cocyclic_pushforward(f: CyclicMap, M: GradedMF) -> GradedMF:
    """Push M along f: <m> -> <n>."""
    if f.source.size != M.N:
        raise ValueError("map source does not match the category index")
    return GradedMF(f.target.size - 1, tuple(f(s) for s in M.shifts0), tuple(f(s) for s in M.shifts1),
                    pushforward_matrix(f, M.phi), pushforward_matrix(f, M.psi))


# ---------------------------------------------------------------------------
# morphisms and Hom complexes


@dataclass(frozen=True)
class MFMorphism:
    """A map M0 + M1 -> M0' + M1' of parity ``degree``.

    Even: blocks alpha (M0 -> M0') and beta (M1 -> M1').
    Odd: blocks gamma (M1 -> M0') and delta (M0 -> M1').
    """

    source: GradedMF
    target: GradedMF
    degree: int
    mat: GMat

    def __post_init__(self):
        object.__setattr__(self, "degree", self.degree % 2)
        if self.mat.rows != self.target.shifts or self.mat.cols != self.source.shifts:
            raise ValueError("morphism matrix does not match its endpoints")
        r0, s0 = self.target.rank, self.source.rank
        for i, row in enumerate(self.mat.entries):
            for j, p in enumerate(row):
                if p and ((i >= r0) != (j >= s0)) != bool(self.degree):
                    raise ValueError("entry in a block of the wrong parity")

    @classmethod
    def from_blocks(cls, source: GradedMF, target: GradedMF, degree: int, a: GMat, b: GMat) -> "MFMorphism":
        """Even: (alpha, beta).  Odd: (gamma, delta)."""
        F, N = source.field, source.N
        if degree % 2 == 0:
            m = block_matrix([[a, GMat.zero(F, N, target.shifts0, source.shifts1)],
                              [GMat.zero(F, N, target.shifts1, source.shifts0), b]])
        else:
            m = block_matrix([[GMat.zero(F, N, target.shifts0, source.shifts0), a],
                              [b, GMat.zero(F, N, target.shifts1, source.shifts1)]])
        return cls(source, target, degree, m)

    @classmethod
    def zero(cls, source: GradedMF, target: GradedMF, degree: int) -> "MFMorphism":
        return cls(source, target, degree, GMat.zero(source.field, source.N, target.shifts, source.shifts))

    @classmethod
    def identity(cls, M: GradedMF) -> "MFMorphism":
        return cls(M, M, 0, GMat.identity(M.field, M.N, M.shifts))

    def blocks(self) -> tuple:
        r0, s0 = self.target.rank, self.source.rank
        R, S = len(self.mat.rows), len(self.mat.cols)
        if self.degree == 0:
            return self.mat.block(0, r0, 0, s0), self.mat.block(r0, R, s0, S)
        return self.mat.block(0, r0, s0, S), self.mat.block(r0, R, 0, s0)

    def __add__(self, other: "MFMorphism") -> "MFMorphism":
        if (other.source, other.target, other.degree) != (self.source, self.target, self.degree):
            raise ValueError("morphisms live in different Hom spaces")
        return MFMorphism(self.source, self.target, self.degree, self.mat + other.mat)

    def __neg__(self) -> "MFMorphism":
        return MFMorphism(self.source, self.target, self.degree, -self.mat)

    def __sub__(self, other: "MFMorphism") -> "MFMorphism":
        return self + (-other)

    def scale(self, c) -> "MFMorphism":
        return MFMorphism(self.source, self.target, self.degree, self.mat.scale(c))

    def is_zero(self) -> bool:
        return self.mat.is_zero()

    def is_closed(self) -> bool:
        return differential(self).is_zero()


def pushforward_morphism(f: CyclicMap, m: "MFMorphism") -> "MFMorphism":
    return MFMorphism(cocyclic_pushforward(f, m.source), cocyclic_pushforward(f, m.target), m.degree,
                      pushforward_matrix(f, m.mat))


def differential(f: MFMorphism) -> MFMorphism:
    """d f = D' f - (-1)^|f| f D."""
    left, right = f.target.D() @ f.mat, f.mat @ f.source.D()
    m = left + right if f.degree else left - right
    return MFMorphism(f.source, f.target, f.degree + 1, m)


def compose_chain(g: MFMorphism, f: MFMorphism) -> MFMorphism:
    """g after f."""
    if f.target != g.source:
        raise ValueError("cannot compose: target(f) != source(g)")
    return MFMorphism(f.source, g.target, f.degree + g.degree, g.mat @ f.mat)


def hom_basis(M: GradedMF, N: GradedMF, degree: int) -> list[tuple[int, int]]:
    """Matrix positions of the k[u]-basis of Hom^degree(M, N).

    Degree 0: the alpha block then the beta block; degree 1: gamma then delta.
    Each block is listed row-major.
    """
    r0, s0 = N.rank, M.rank
    if degree % 2 == 0:
        A = [(i, j) for i in range(r0) for j in range(s0)]
        B = [(r0 + i, s0 + j) for i in range(r0) for j in range(s0)]
    else:
        A = [(i, s0 + j) for i in range(r0) for j in range(s0)]
        B = [(r0 + i, j) for i in range(r0) for j in range(s0)]
    return A + B


def morphism_to_vector(f: MFMorphism) -> tuple:
    return tuple(f.mat.entries[i][j] for i, j in hom_basis(f.source, f.target, f.degree))


def vector_to_morphism(M: GradedMF, N: GradedMF, degree: int, vec: Sequence[Poly]) -> MFMorphism:
    d = {pos: p for pos, p in zip(hom_basis(M, N, degree), vec) if p}
    return MFMorphism(M, N, degree, GMat.from_dict(M.field, M.N, N.shifts, M.shifts, d))


def hom_complex(M: GradedMF, N: GradedMF) -> Complex2P:
    """Hom(M, N) as a 2-periodic complex of free k[u]-modules."""
    if M.n != N.n:
        raise ValueError("objects live in different categories")
    field = M.field
    Nmod = M.N
    DN, DM = N.D(), M.D()
    rows_t, cols_s = N.shifts, M.shifts
    zero = Poly.zero(field)

    def e(r, c):
        return (rows_t[r] - cols_s[c]) % Nmod

    def d_matrix(deg):
        src = hom_basis(M, N, deg)
        tgt = hom_basis(M, N, deg + 1)
        index = {pos: k for k, pos in enumerate(tgt)}
        sign = -1 if deg % 2 else 1
        cols = []
        for a, b in src:
            col: dict = {}
            eab = e(a, b)
            # D' E_ab: column b receives D'[:, a]
            for r in range(len(rows_t)):
                p = DN.entries[r][a]
                if p:
                    if DN.exponent(r, a) + eab >= Nmod:
                        p = p.shift(1)
                    k = index[(r, b)]
                    col[k] = col.get(k, zero) + p
            # -(-1)^deg E_ab D: row a receives D[b, :]
            for c in range(len(cols_s)):
                p = DM.entries[b][c]
                if p:
                    if eab + DM.exponent(b, c) >= Nmod:
                        p = p.shift(1)
                    k = index[(a, c)]
                    col[k] = col.get(k, zero) - p if sign == 1 else col.get(k, zero) + p
            cols.append(col)
        return tuple(tuple(cols[j].get(i, zero) for j in range(len(src))) for i in range(len(tgt)))

    n0 = len(hom_basis(M, N, 0))
    return Complex2P(field, n0, n0, d_matrix(0), d_matrix(1))


def hom_cohomology_dims(M: GradedMF, N: GradedMF) -> tuple:
    return cohomology(hom_complex(M, N)).dims


# ---------------------------------------------------------------------------
# cones and equivalences


def cone(f: MFMorphism) -> GradedMF:
    """Cone of a closed even f: A -> B.

    C0 = B0 + A1, C1 = B1 + A0, phi_C = [[phi_B, alpha], [0, -psi_A]],
    psi_C = [[psi_B, beta], [0, -phi_A]].
    """
    if f.degree != 0:
        raise ValueError("cone needs an even morphism")
    if not f.is_closed():
        raise ValueError("cone needs a closed morphism")
    A, B = f.source, f.target
    F, N = A.field, A.N
    alpha, beta = f.blocks()
    phi = block_matrix([[B.phi, alpha], [GMat.zero(F, N, A.shifts1, B.shifts1), -A.psi]])
    psi = block_matrix([[B.psi, beta], [GMat.zero(F, N, A.shifts0, B.shifts0), -A.phi]])
    C = GradedMF(A.n, B.shifts0 + A.shifts1, B.shifts1 + A.shifts0, phi, psi)
    return C.validated()


def cone_inclusion(f: MFMorphism) -> MFMorphism:
    """The canonical even map B -> cone(f)."""
    C = cone(f)
    A, B = f.source, f.target
    F, N = B.field, B.N
    a = block_matrix([[GMat.identity(F, N, B.shifts0)], [GMat.zero(F, N, A.shifts1, B.shifts0)]])
    b = block_matrix([[GMat.identity(F, N, B.shifts1)], [GMat.zero(F, N, A.shifts0, B.shifts1)]])
    return MFMorphism.from_blocks(B, C, 0, a, b)


@dataclass
class _HomData:
    C: Complex2P
    H: Cohomology
    reps: list  # chain vectors of the k-basis of H^0


def _hom_data(M: GradedMF, N: GradedMF) -> _HomData:
    C = hom_complex(M, N)
    H = cohomology(C)
    if H.H0.free_rank or H.H1.free_rank:
        raise ValueError("Hom cohomology has a free part")
    reps = [H.H0.representative(i) for i in range(H.H0.dim)]
    return _HomData(C, H, reps)


def _identity_coords(M: GradedMF, data: _HomData) -> list:
    return data.H.H0.coordinates(morphism_to_vector(MFMorphism.identity(M)))


def _class_of_composite(g_vec, f_vec, X, Y, Z, data_XZ: _HomData) -> list:
    f = vector_to_morphism(X, Y, 0, f_vec)
    g = vector_to_morphism(Y, Z, 0, g_vec)
    return data_XZ.H.H0.coordinates(morphism_to_vector(compose_chain(g, f)))


def find_homotopy_equivalence(M: GradedMF, N: GradedMF, trials: int = 6, seed: int = 0):
    """Search for closed even f: M -> N, g: N -> M inverse on cohomology.

    Candidates f are the basis classes of H^0 Hom(M, N) and then seeded random
    combinations; for each, [g] is solved linearly from [g][f] = [id_M] and the
    other composite is checked.  Returns (f, g) chain maps or None.
    """
    if M.n != N.n:
        raise ValueError("objects live in different categories")
    field = M.field
    dMN, dNM = _hom_data(M, N), _hom_data(N, M)
    dMM, dNN = _hom_data(M, M), _hom_data(N, N)
    idM, idN = _identity_coords(M, dMM), _identity_coords(N, dNN)
    a, b = len(dMN.reps), len(dNM.reps)
    if len(idM) == 0 and len(idN) == 0:
        zM = MFMorphism.zero(M, N, 0)
        return zM, MFMorphism.zero(N, M, 0)
    if a == 0 or b == 0:
        return None
    zero = Poly.zero(field)

    def combo(reps, coeffs):
        out = [zero] * len(reps[0])
        for c, v in zip(coeffs, reps):
            if c:
                out = [x + y * field(c) for x, y in zip(out, v)]
        return tuple(out)

    # composite classes g_j f, as columns, for a fixed f
    rng = random.Random(seed)
    candidates = [[1 if i == k else 0 for i in range(a)] for k in range(a)]
    candidates += [[rng.randint(-50, 50) for _ in range(a)] for _ in range(trials)]
    for coeffs in candidates:
        f_vec = combo(dMN.reps, coeffs)
        cols = [_class_of_composite(g, f_vec, M, N, M, dMM) for g in dNM.reps]
        A = [[cols[j][i] for j in range(b)] for i in range(len(idM))]
        x = solve_linear(A, idM, field)
        if x is None:
            continue
        g_vec = combo(dNM.reps, x)
        if _class_of_composite(f_vec, g_vec, N, M, N, dNN) == list(idN):
            return vector_to_morphism(M, N, 0, f_vec), vector_to_morphism(N, M, 0, g_vec)
    return None


def is_homotopy_equivalent(M: GradedMF, N: GradedMF) -> bool:
    return find_homotopy_equivalence(M, N) is not None


def is_zero_object(M: GradedMF) -> bool:
    return hom_cohomology_dims(M, M) == (0, 0)


def is_coboundary(f: MFMorphism) -> bool:
    """Is f = d(h) for some h in the Hom complex?"""
    if not f.is_closed():
        return False
    H = cohomology(hom_complex(f.source, f.target))
    return not any(H[f.degree].coordinates(morphism_to_vector(f)))


def bounding_homotopy(f: MFMorphism) -> MFMorphism | None:
    """Some h with d(h) = f, by a k[u]-linear solve through the Smith form."""
    C = hom_complex(f.source, f.target)
    from .exact_linalg import smith_normal_form

    deg_h = (f.degree + 1) % 2
    d = C.differential(deg_h)
    m, k = C.rank(f.degree), C.rank(deg_h)
    s = smith_normal_form(d, C.field, m, k)
    y = morphism_to_vector(f)
    uy = [sum((s.U[i][j] * y[j] for j in range(m) if s.U[i][j] and y[j]), Poly.zero(C.field)) for i in range(m)]
    x = []
    for i in range(k):
        if i < s.rank:
            q, r = uy[i].divmod(s.D[i][i])
            if r:
                return None
            x.append(q)
        else:
            x.append(Poly.zero(C.field))
    if any(uy[s.rank:]):
        return None
    h = [sum((s.V[i][j] * x[j] for j in range(k) if s.V[i][j] and x[j]), Poly.zero(C.field)) for i in range(k)]
    return vector_to_morphism(f.source, f.target, deg_h, h)


# ---------------------------------------------------------------------------
# triangles


def is_ccw(n: int, i: int, j: int, k: int) -> bool:
    N = n + 1
    i, j, k = i % N, j % N, k % N
    if len({i, j, k}) < 3:
        return False
    return (j - i) % N + (k - j) % N + (i - k) % N == N


def _even_rank_one_map(A: GradedMF, B: GradedMF, x0, x1) -> MFMorphism:
    F, N = A.field, A.N
    a = GMat(F, N, B.shifts0, A.shifts0, ((Poly.const(F, x0),),))
    b = GMat(F, N, B.shifts1, A.shifts1, ((Poly.const(F, x1),),))
    return MFMorphism.from_blocks(A, B, 0, a, b)


def distinguished_triangle(n: int, i: int, j: int, k: int, field: Field = QQ):
    """alpha: [i,j] -> [i,k], beta: [i,k] -> [j,k], gamma: [j,k] -> [j,i].

    [j,i] is the suspension of [i,j] up to a sign on one module.
    """
    if not is_ccw(n, i, j, k):
        raise ValueError(f"({i},{j},{k}) is not in counterclockwise cyclic order")
    Eij, Eik, Ejk, Eji = (rank_one(n, a, b, field=field) for a, b in ((i, j), (i, k), (j, k), (j, i)))
    alpha = _even_rank_one_map(Eij, Eik, 1, 1)
    beta = _even_rank_one_map(Eik, Ejk, 1, 1)
    gamma = _even_rank_one_map(Ejk, Eji, 1, 1)
    return alpha, beta, gamma


# universal triangle in E^2 on E01 = [0,1], E20 = [2,0], E12 = [1,2]


def universal_triangle(field: Field = QQ) -> dict:
    E = {"E01": rank_one(2, 0, 1, field=field), "E20": rank_one(2, 2, 0, field=field),
         "E12": rank_one(2, 1, 2, field=field)}

    def odd(src, tgt, g, d):
        A, B = E[src], E[tgt]
        F, N = A.field, A.N
        gm = GMat(F, N, B.shifts0, A.shifts1, ((Poly.const(F, g) if g else Poly.zero(F),),))
        dm = GMat(F, N, B.shifts1, A.shifts0, ((Poly.const(F, d) if d else Poly.zero(F),),))
        return MFMorphism.from_blocks(A, B, 1, gm, dm)

    mors = {
        "f1": odd("E01", "E20", -1, 1),
        "f2": odd("E20", "E12", -1, 1),
        "f3": odd("E12", "E01", -1, 1),
        "h21": odd("E01", "E12", 0, -1),
        "h32": odd("E20", "E01", 0, -1),
        "h13": odd("E12", "E20", 0, -1),
    }
    return {"objects": E, "morphisms": mors}


def verify_universal_triangle_relations(field: Field = QQ) -> list[tuple[str, bool]]:
    U = universal_triangle(field)
    E, m = U["objects"], U["morphisms"]
    c = compose_chain
    report = []
    for name in ("f1", "f2", "f3"):
        report.append((f"{name} closed of degree 1", m[name].degree == 1 and m[name].is_closed()))
    for h, (fi, fj) in (("h21", ("f2", "f1")), ("h32", ("f3", "f2")), ("h13", ("f1", "f3"))):
        report.append((f"d({h}) = {fi} {fj}", differential(m[h]) == c(m[fi], m[fj])))
    for obj, (a, b, cc, d) in (("E01", ("h32", "f1", "f3", "h21")),
                               ("E20", ("h13", "f2", "f1", "h32")),
                               ("E12", ("h21", "f3", "f2", "h13"))):
        lhs = c(m[a], m[b]) + c(m[cc], m[d])
        report.append((f"{a} {b} + {cc} {d} = id_{obj}", lhs == MFMorphism.identity(E[obj])))
    return report


# ---------------------------------------------------------------------------
# the universal Waldhausen diagram


def waldhausen_object(n: int, i: int, j: int, field: Field = QQ) -> GradedMF:
    """E_ij for 0 <= i <= j <= n; E_ii = [i,i] is a zero object."""
    if not 0 <= i <= j <= n:
        raise ValueError("need 0 <= i <= j <= n")
    return rank_one(n, i, j, field=field)


def waldhausen_edge(n: int, ij: tuple, kl: tuple, field: Field = QQ) -> MFMorphism:
    """diag(z^(l-j), z^(k-i)): E_ij -> E_kl, on (M0, M1)."""
    (i, j), (k, l) = ij, kl
    if not (i <= k and j <= l):
        raise ValueError("edges go from (i,j) to (k,l) with i <= k, j <= l")
    A, B = waldhausen_object(n, i, j, field), waldhausen_object(n, k, l, field)
    N = n + 1
    one = Poly.const(field, 1)
    # exponents below N are stored implicitly; the u-carry appears only for zero objects
    x0 = one.shift((l - j) // N)
    x1 = one.shift((k - i) // N)
    a = GMat(field, N, B.shifts0, A.shifts0, ((x0,),))
    b = GMat(field, N, B.shifts1, A.shifts1, ((x1,),))
    return MFMorphism.from_blocks(A, B, 0, a, b)


def waldhausen_diagram(n: int, field: Field = QQ) -> dict:
    objs = {(i, j): waldhausen_object(n, i, j, field) for i in range(n + 1) for j in range(i, n + 1)}
    edges = {}
    for (i, j) in objs:
        for (k, l) in objs:
            if i <= k and j <= l and (i, j) != (k, l):
                edges[((i, j), (k, l))] = waldhausen_edge(n, (i, j), (k, l), field)
    return {"objects": objs, "edges": edges}


# ---------------------------------------------------------------------------
# A_n representation oracle


def _interval_rep(n: int, a: int, b: int):
    if not 1 <= a <= b <= n:
        raise ValueError(f"[{a},{b}] is not an interval in [1,{n}]")
    dims = [1 if a <= v <= b else 0 for v in range(1, n + 1)]
    return dims


def an_ext_oracle(n: int, interval1: Sequence[int], interval2: Sequence[int], field: Field = QQ) -> tuple:
    """(dim Hom, dim Ext^1) between interval modules of 1 -> 2 -> ... -> n.

    Uses the exact sequence 0 -> Hom -> (+)_v Hom(V_v, W_v) -> (+)_arrows Hom(V_s, W_t) -> Ext^1 -> 0,
    with every arrow acting as the identity inside an interval.
    """
    V = _interval_rep(n, *interval1)
    W = _interval_rep(n, *interval2)
    # unknowns: f_v for vertices with V_v = W_v = 1 (all spaces are 0 or 1 dimensional)
    var = {v: idx for idx, v in enumerate(v for v in range(n) if V[v] and W[v])}
    rows = []
    arrows = 0
    for v in range(n - 1):  # arrow v -> v+1
        if V[v] and W[v + 1]:
            arrows += 1
            row = [field(0)] * len(var)
            # W_arrow f_v - f_{v+1} V_arrow, with maps identity where both ends are nonzero
            if W[v] and v in var:
                row[var[v]] = row[var[v]] + field(1)
            if V[v + 1] and (v + 1) in var:
                row[var[v + 1]] = row[var[v + 1]] - field(1)
            rows.append(row)
    from .exact_linalg import rref

    if var and rows:
        _, rank, _, _ = rref(rows, field)
    else:
        rank = 0
    hom = len(var) - rank
    ext = arrows - rank
    return hom, ext


def rank_one_to_interval(n: int, i: int, j: int) -> tuple:
    """e_ij as (interval, suspended)."""
    N = n + 1
    i, j = i % N, j % N
    if i == j:
        raise ValueError("[i,i] is a zero object")
    if i < j:
        return (n - j + 1, n - i), False
    return (n - i + 1, n - j), True


def oracle_hom_dims(n: int, a: tuple, b: tuple, field: Field = QQ) -> tuple:
    """Predicted (dim H^0, dim H^1) of Hom([a], [b]) in T^n from the A_n oracle."""
    (I, sa), (J, sb) = rank_one_to_interval(n, *a), rank_one_to_interval(n, *b)
    hom, ext = an_ext_oracle(n, I, J, field)
    return (ext, hom) if sa != sb else (hom, ext)


def rank_one_pairs(n: int) -> list[tuple]:
    N = n + 1
    return [(i, j) for i in range(N) for j in range(N) if i != j]


def random_graded_mf(n: int, rng: random.Random, field: Field = QQ, max_terms: int = 3) -> GradedMF:
    """A random object: sum of rank-one objects, possibly coned and suspended."""
    N = n + 1
    parts = []
    for _ in range(rng.randint(1, max_terms)):
        i, j = rng.randrange(N), rng.randrange(N)
        M = rank_one(n, i, j, primed=(i == j and rng.random() < 0.5), field=field)
        if rng.random() < 0.3:
            M = suspension(M)
        parts.append(M)
    M = direct_sum(*parts)
    if n >= 2 and rng.random() < 0.5:
        i = rng.randrange(N)
        j, k = (i + 1) % N, (i + 2) % N
        alpha, _, _ = distinguished_triangle(n, i, j, k, field)
        M = direct_sum(M, cone(alpha))
    return M
