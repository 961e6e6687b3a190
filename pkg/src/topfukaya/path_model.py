"""Loop factorizations in the free category on the circular quiver Q^n.

An independent Hom computation for rank-one objects: morphisms are k-linear
combinations of paths, the differential is built from path concatenation, and
cohomology is read off a winding truncation.  Used as a cross-check of the
k[u] model.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cyclic_combinatorics import QPath
from .exact_linalg import QQ, Field, NotStabilized, rank_sparse


@dataclass(frozen=True)
class LoopFactorization:
    """x1 --phi--> x0 --psi--> x1 with phi then psi and psi then phi both the full loop."""

    n: int
    x0: int
    x1: int
    phi: QPath  # x1 -> x0
    psi: QPath  # x0 -> x1

    def __post_init__(self):
        N = self.n + 1
        if self.phi.start != self.x1 % N or self.phi.end != self.x0 % N:
            raise ValueError("phi must run from x1 to x0")
        if self.psi.start != self.x0 % N or self.psi.end != self.x1 % N:
            raise ValueError("psi must run from x0 to x1")
        if self.phi.length + self.psi.length != N:
            raise ValueError("phi and psi must compose to the loop of degree 1")

    def vertex(self, slot: int) -> int:
        return self.x0 if slot == 0 else self.x1

    def D(self) -> dict:
        """Nonzero entries of [[0, phi], [psi, 0]] keyed by (row slot, column slot)."""
        return {(0, 1): self.phi, (1, 0): self.psi}


def rank_one_lf(n: int, i: int, j: int, primed: bool = False) -> LoopFactorization:
    N = n + 1
    i, j = i % N, j % N
    if i != j:
        lp = (j - i) % N
    else:
        lp = N if primed else 0
    return LoopFactorization(n, j, i, QPath(n, i, lp), QPath(n, j, N - lp))


# an element of Hom is a dict {(row slot, col slot, length): coeff}; the path is
# determined by its source vertex (the column object's vertex) and its length


def _compose(A: dict, B: dict, field: Field) -> dict:
    """A after B, both as {(r, c, length): coeff}."""
    out: dict = {}
    for (r, k, la), ca in A.items():
        for (k2, c, lb), cb in B.items():
            if k2 != k:
                continue
            key = (r, c, la + lb)
            out[key] = out.get(key, field(0)) + ca * cb
    return {k: v for k, v in out.items() if v}


def _paths_as_elements(F: LoopFactorization, field: Field) -> dict:
    return {(r, c, p.length): field(1) for (r, c), p in F.D().items()}


def path_differential(F: LoopFactorization, G: LoopFactorization, elem: dict, degree: int, field: Field = QQ) -> dict:
    """d f = D_G f - (-1)^degree f D_F on path combinations."""
    DG, DF = _paths_as_elements(G, field), _paths_as_elements(F, field)
    left = _compose(DG, elem, field)
    right = _compose(elem, DF, field)
    sign = field(1) if degree % 2 else field(-1)
    out = dict(left)
    for k, v in right.items():
        out[k] = out.get(k, field(0)) + sign * v
    return {k: v for k, v in out.items() if v}


def _slots(degree: int) -> list[tuple[int, int]]:
    return [(0, 0), (1, 1)] if degree % 2 == 0 else [(0, 1), (1, 0)]


def _basis(F: LoopFactorization, G: LoopFactorization, degree: int, lo: int, hi: int) -> list:
    """Paths G.vertex(r) <- F.vertex(c) in the given slots with winding in [lo, hi)."""
    N = F.n + 1
    out = []
    for w in range(lo, hi):
        for r, c in _slots(degree):
            base = (G.vertex(r) - F.vertex(c)) % N
            out.append((r, c, base + w * N))
    return out


def _key(N: int, b: tuple) -> int:
    r, c, length = b
    return (length * 2 + r) * 2 + c


def _truncated(F, G, degree: int, W: int, field: Field) -> int:
    N = F.n + 1
    margin = W + 2
    cyc = [path_differential(F, G, {b: field(1)}, degree, field) for b in _basis(F, G, degree, 0, W)]
    z = len(cyc) - rank_sparse(({_key(N, k): v for k, v in c.items()} for c in cyc), field)
    imgs = [path_differential(F, G, {b: field(1)}, degree + 1, field)
            for b in _basis(F, G, degree + 1, 0, W + margin)]
    full = rank_sparse(({_key(N, k): v for k, v in c.items()} for c in imgs), field)
    high = rank_sparse(({_key(N, k): v for k, v in c.items() if k[2] >= W * N} for c in imgs), field)
    return z - (full - high)


def path_model_hom_dims(F: LoopFactorization, G: LoopFactorization, W: int = 3, field: Field = QQ) -> tuple:
    """Stabilized (dim H^0, dim H^1) of Hom(F, G) from paths of winding < W, W+1, W+2."""
    vals = [(_truncated(F, G, 0, w, field), _truncated(F, G, 1, w, field)) for w in (W, W + 1, W + 2)]
    if not vals[0] == vals[1] == vals[2]:
        raise NotStabilized(f"path model not stable: {vals}")
    return vals[0]
