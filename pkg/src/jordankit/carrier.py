"""Finite carriers of algebras over prime fields.

Enumerates all p^dim elements in lexicographic coordinate order and
builds integer index tables (sums, products, negation) so exhaustive
predicates can run as vectorized gathers instead of per-element loops.
Index order equals lexicographic coordinate order, which fixes the
deterministic scan order used for witnesses everywhere.
"""

from __future__ import annotations

import numpy as np

from .algebra import Algebra, Element
from .errors import CarrierInfinite, EnumerationTooLarge

DEFAULT_CARRIER_CAP = 10**6
PAIR_TABLE_CAP = 25_000_000  # entries per N x N table


class FiniteCarrier:
    """All elements of an algebra over F_p, indexed lexicographically."""

    def __init__(self, algebra: Algebra, cap: int = DEFAULT_CARRIER_CAP):
        p = algebra.field.characteristic
        if p == 0:
            raise CarrierInfinite("algebras over the rationals have no finite carrier")
        d = algebra.dim
        if p**d > cap:
            raise EnumerationTooLarge(f"carrier size {p}^{d} exceeds cap {cap}")
        self.algebra = algebra
        self.p = p
        self.dim = d
        self.size = p**d
        self.powers = p ** np.arange(d - 1, -1, -1, dtype=np.int64)
        grid = np.indices((p,) * d).reshape(d, -1).T
        self.coords = np.ascontiguousarray(grid, dtype=np.int64)
        self._mul = None
        self._add = None
        self._neg = None

    # -- element <-> index ------------------------------------------------

    def encode(self, coords_array: np.ndarray) -> np.ndarray:
        return (np.asarray(coords_array, dtype=np.int64) % self.p) @ self.powers

    def index_of(self, x: Element) -> int:
        return int(sum(int(c) * int(w) for c, w in zip(x.coords, self.powers)))

    def element_at(self, idx: int) -> Element:
        return Element(self.algebra, tuple(int(c) for c in self.coords[idx]))

    def basis_index(self, i: int) -> int:
        return int(self.powers[i])

    @property
    def zero_index(self) -> int:
        return 0

    # -- index tables ------------------------------------------------------

    def _require_pair_tables(self):
        if self.size * self.size > PAIR_TABLE_CAP:
            raise EnumerationTooLarge(
                f"pairwise tables need {self.size}^2 entries, beyond {PAIR_TABLE_CAP}"
            )

    @property
    def mul(self) -> np.ndarray:
        """N x N table of product indices."""
        if self._mul is None:
            self._require_pair_tables()
            p, d = self.p, self.dim
            t = np.empty((d, d, d), dtype=np.int64)
            for i in range(d):
                for j in range(d):
                    for k in range(d):
                        t[i, j, k] = int(self.algebra.table[i][j][k])
            part = np.tensordot(self.coords, t, axes=([1], [1])) % p  # [y, i, k]
            prod = np.einsum("xi,yik->xyk", self.coords, part) % p
            self._mul = (prod @ self.powers).astype(np.int64)
        return self._mul

    @property
    def add(self) -> np.ndarray:
        """N x N table of sum indices."""
        if self._add is None:
            self._require_pair_tables()
            sums = (self.coords[:, None, :] + self.coords[None, :, :]) % self.p
            self._add = (sums @ self.powers).astype(np.int64)
        return self._add

    @property
    def neg(self) -> np.ndarray:
        if self._neg is None:
            self._neg = self.encode(-self.coords)
        return self._neg

    # -- derived views -----------------------------------------------------

    def mul_rows(self) -> list[list[int]]:
        """Product table as plain int lists (fast inner loops in searches)."""
        return self.mul.tolist()

    def add_rows(self) -> list[list[int]]:
        return self.add.tolist()

    def apply_matrix(self, matrix) -> np.ndarray:
        """Index image of a linear map given by an exact d x d matrix."""
        m = np.array([[int(c) for c in row] for row in matrix], dtype=np.int64)
        out = (self.coords @ m.T) % self.p
        return (out @ self.powers).astype(np.int64)

    def scalar_map(self, c) -> np.ndarray:
        """Index image of scalar multiplication by c."""
        out = (self.coords * (int(c) % self.p)) % self.p
        return (out @ self.powers).astype(np.int64)

    def span_indices(self, vectors) -> np.ndarray:
        """Sorted indices of all F_p-linear combinations of the given elements."""
        if not vectors:
            return np.array([0], dtype=np.int64)
        k = len(vectors)
        basis = np.array([[int(c) for c in v.coords] for v in vectors], dtype=np.int64)
        combos = np.indices((self.p,) * k).reshape(k, -1).T
        pts = (combos @ basis) % self.p
        idx = np.unique((pts @ self.powers).astype(np.int64))
        return idx

    def membership_mask(self, vectors) -> np.ndarray:
        """Boolean mask over the carrier for membership in the given span."""
        mask = np.zeros(self.size, dtype=bool)
        mask[self.span_indices(vectors)] = True
        return mask


def carrier_of(a: Algebra, cap: int = DEFAULT_CARRIER_CAP) -> FiniteCarrier:
    """The (cached) finite carrier of an algebra over a prime field."""
    cached = a._carrier
    if cached is None:
        cached = FiniteCarrier(a, cap=cap)
        a._carrier = cached
    elif cached.size > cap:
        raise EnumerationTooLarge(f"carrier size {cached.size} exceeds cap {cap}")
    return cached
