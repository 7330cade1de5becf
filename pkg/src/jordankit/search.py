"""Exhaustive enumeration of multiplicative bijections and derivations.

Both searches assign images to carrier elements in lexicographic order
with eager constraint propagation: whenever every leaf of a canonical
monomial instance is assigned, the image of its value is forced, and a
clash (or a collision with injectivity, for bijections) prunes the
branch. Emitted tables are re-verified by the maps-module predicates
before they are yielded, so the stream is sound independently of the
pruning logic.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .algebra import Algebra, Element
from .carrier import DEFAULT_CARRIER_CAP, carrier_of
from .errors import ArityMismatch, CarrierSizeMismatch, PreconditionViolated
from .maps import DerivationTable, MapTable, is_additive, is_n_derivation, is_n_multiplicative
from .peirce import PeirceDecomposition, check_theorem_conditions


@dataclass
class SearchBudget:
    """Limits for one enumeration run; exceeding any is a reported state."""

    max_nodes: int | None = None
    max_seconds: float | None = None
    max_witnesses: int | None = None

    def __post_init__(self):
        for name in ("max_nodes", "max_seconds"):
            v = getattr(self, name)
            if v is not None and v <= 0:
                raise ValueError(f"{name} must be positive, got {v}")
        if self.max_witnesses is not None and self.max_witnesses < 0:
            raise ValueError(f"max_witnesses must be >= 0, got {self.max_witnesses}")


class _TableSearch:
    """Shared DFS engine; subclasses fix the pair extension and forcing."""

    bijective = False

    def __init__(self, domain: Algebra, codomain: Algebra, n: int,
                 budget: SearchBudget | None, cap: int, tree_mode: str):
        if n < 2:
            raise ArityMismatch(f"search needs monomial degree >= 2, got {n}")
        self.domain = domain
        self.codomain = codomain
        self.n = n
        self.tree_mode = tree_mode
        self.budget = budget or SearchBudget()
        dom = carrier_of(domain, cap)
        cod = carrier_of(codomain, cap)
        if self.bijective and dom.size != cod.size:
            raise CarrierSizeMismatch(
                f"no bijection between carriers of sizes {dom.size} and {cod.size}"
            )
        self.dom = dom
        self.cod = cod
        self.size = dom.size
        self.mul = dom.mul_rows()
        self.cod_mul = cod.mul_rows()
        self.cod_add = cod.add_rows()
        self.np_mul = dom.mul
        self.np_cod_mul = cod.mul
        self.np_cod_add = cod.add
        self._arange = np.arange(cod.size, dtype=np.int64)
        # search state
        self.img = [-1] * self.size
        self.np_img = np.full(self.size, -1, dtype=np.int64)
        self.used = np.zeros(self.cod.size, dtype=bool)
        self.assigned: list[int] = []
        self.levels = {k: [] for k in range(2, n)}
        self.level_seen = {k: set() for k in range(2, n)}
        self.trail: list[tuple] = []
        self.domains: dict[int, list[int]] = {}
        # run record
        self.nodes = 0
        self.exhausted = False
        self.budget_exceeded = False
        self.witnesses_emitted = 0
        self._started = None

    # -- subclass hooks ----------------------------------------------------

    def _extend(self, x: int, pair: tuple[int, int]) -> tuple[int, int]:
        raise NotImplementedError

    def _base_pair(self, x: int) -> tuple[int, int]:
        raise NotImplementedError

    def _self_targets(self, x: int) -> np.ndarray:
        """Forced image of x*x as a vector over candidate images v of x."""
        raise NotImplementedError

    def _targets_xy(self, x: int, ys: np.ndarray, ws: np.ndarray) -> np.ndarray:
        """Forced images of x*y, shape (cod_size, len(ys)), over candidates v."""
        raise NotImplementedError

    def _targets_yx(self, x: int, ys: np.ndarray, ws: np.ndarray) -> np.ndarray:
        """Forced images of y*x, shape (len(ys), cod_size), over candidates v."""
        raise NotImplementedError

    def _forced_xy(self, x: int, v: int, ys: np.ndarray, ws: np.ndarray) -> np.ndarray:
        """Forced images of x*y for a committed v, shape (len(ys),)."""
        raise NotImplementedError

    def _forced_yx(self, x: int, v: int, ys: np.ndarray, ws: np.ndarray) -> np.ndarray:
        """Forced images of y*x for a committed v, shape (len(ys),)."""
        raise NotImplementedError

    def _emit(self):
        raise NotImplementedError

    def _verify(self, table) -> bool:
        raise NotImplementedError

    # -- propagation ------------------------------------------------------

    def _force(self, t: int, s: int, queue) -> bool:
        cur = self.img[t]
        if cur != -1:
            return cur == s
        queue.append((t, s))
        return True

    def _add_pair(self, k: int, pair: tuple[int, int], queue) -> bool:
        if k == self.n:
            return self._force(pair[0], pair[1], queue)
        if pair in self.level_seen[k]:
            return True
        self.level_seen[k].add(pair)
        self.levels[k].append(pair)
        self.trail.append(("p", k, pair))
        for x in self.assigned:
            if not self._add_pair(k + 1, self._extend(x, pair), queue):
                return False
        return True

    def _assign(self, x0: int, v0: int) -> bool:
        if self.n == 2:
            return self._assign_pairwise(x0, v0)
        return self._assign_levels(x0, v0)

    def _assign_pairwise(self, x0: int, v0: int) -> bool:
        # n = 2: the only constraints are pair products; process them as
        # whole-vector operations over the assigned prefix.
        queue = [(x0, v0)]
        while queue:
            x, v = queue.pop()
            cur = self.img[x]
            if cur != -1:
                if cur != v:
                    return False
                continue
            if self.bijective and self.used[v]:
                return False
            self.img[x] = v
            self.np_img[x] = v
            self.used[v] = True
            self.assigned.append(x)
            self.trail.append(("a", x, v))
            ys = np.array(self.assigned, dtype=np.int64)
            ws = self.np_img[ys]
            for zs, ts in (
                (self.np_mul[x, ys], self._forced_xy(x, v, ys, ws)),
                (self.np_mul[ys, x], self._forced_yx(x, v, ys, ws)),
            ):
                have = self.np_img[zs]
                conflict = (have != -1) & (have != ts)
                if conflict.any():
                    return False
                fresh = have == -1
                if fresh.any():
                    queue.extend(zip(zs[fresh].tolist(), ts[fresh].tolist()))
        return True

    def _assign_levels(self, x0: int, v0: int) -> bool:
        queue = [(x0, v0)]
        while queue:
            x, v = queue.pop()
            cur = self.img[x]
            if cur != -1:
                if cur != v:
                    return False
                continue
            if self.bijective and self.used[v]:
                return False
            self.img[x] = v
            self.np_img[x] = v
            self.used[v] = True
            self.assigned.append(x)
            self.trail.append(("a", x, v))
            # x extends every existing pair one level up
            for k in sorted(self.levels, reverse=True):
                for pair in list(self.levels[k]):
                    if not self._add_pair(k + 1, self._extend(x, pair), queue):
                        return False
            for y in list(self.assigned):
                base = self._base_pair(y)
                if y == x:
                    # new base pair enters at level 1: extend by all assigned
                    for z in list(self.assigned):
                        if not self._add_pair(2, self._extend(z, base), queue):
                            return False
                else:
                    # x extends old level-1 pairs
                    if not self._add_pair(2, self._extend(x, base), queue):
                        return False
        return True

    def _undo(self, mark: int):
        while len(self.trail) > mark:
            op = self.trail.pop()
            if op[0] == "a":
                _, x, v = op
                self.img[x] = -1
                self.np_img[x] = -1
                self.used[v] = False
                self.assigned.pop()
            else:
                _, k, pair = op
                self.levels[k].pop()
                self.level_seen[k].discard(pair)

    # -- candidate filtering -------------------------------------------------

    def _candidates(self, x: int) -> list[int]:
        """Images of x not already refuted by a pairwise constraint.

        This is a pure prefilter: any value it drops would fail the full
        propagation in _assign for the same pair, so the emitted stream
        and its order are unchanged (survivors stay in ascending order).
        """
        mask = ~self.used if self.bijective else np.ones(self.cod.size, dtype=bool)
        restricted = self.domains.get(x)
        if restricted is not None:
            allowed = np.zeros(self.cod.size, dtype=bool)
            allowed[restricted] = True
            mask &= allowed
        z = self.mul[x][x]
        t = self._self_targets(x)
        if z == x:
            mask &= t == self._arange
        elif self.img[z] != -1:
            mask &= t == self.img[z]
        if self.assigned:
            ys = np.array(self.assigned, dtype=np.int64)
            ws = self.np_img[ys]
            zs_xy = self.np_mul[x, ys]
            have_xy = np.where(zs_xy == x, -2, self.np_img[zs_xy])
            rel = have_xy != -1
            if rel.any():
                t_xy = self._targets_xy(x, ys[rel], ws[rel])  # (N, R)
                want = have_xy[rel][None, :]
                want = np.where(want == -2, self._arange[:, None], want)
                mask &= (t_xy == want).all(axis=1)
            zs_yx = self.np_mul[ys, x]
            have_yx = np.where(zs_yx == x, -2, self.np_img[zs_yx])
            rel = have_yx != -1
            if rel.any():
                t_yx = self._targets_yx(x, ys[rel], ws[rel])  # (R, N)
                want = have_yx[rel][:, None]
                want = np.where(want == -2, self._arange[None, :], want)
                mask &= (t_yx == want).all(axis=0)
        return np.flatnonzero(mask).tolist()

    # -- DFS ----------------------------------------------------------------

    def _over_budget(self) -> bool:
        b = self.budget
        if b.max_nodes is not None and self.nodes >= b.max_nodes:
            return True
        if b.max_seconds is not None and time.monotonic() - self._started >= b.max_seconds:
            return True
        if b.max_witnesses is not None and self.witnesses_emitted >= b.max_witnesses:
            return True
        return False

    def _dfs(self):
        if self._over_budget():
            self.budget_exceeded = True
            return
        x = -1
        for i in range(self.size):
            if self.img[i] == -1:
                x = i
                break
        if x == -1:
            table = self._emit()
            if self._verify(table):
                self.witnesses_emitted += 1
                yield table
            return
        for v in self._candidates(x):
            self.nodes += 1
            mark = len(self.trail)
            if self._assign(x, v):
                yield from self._dfs()
            self._undo(mark)
            if self.budget_exceeded:
                return
            if self._over_budget():
                self.budget_exceeded = True
                return

    def __iter__(self):
        self._started = time.monotonic()
        yield from self._dfs()
        if not self.budget_exceeded:
            self.exhausted = True


class MultiplicativeBijectionSearch(_TableSearch):
    """All bijective tables with phi(m(x...)) = m(phi(x)...) canonically."""

    bijective = True

    def _extend(self, x, pair):
        return self.mul[x][pair[0]], self.cod_mul[self.img[x]][pair[1]]

    def _base_pair(self, x):
        return x, self.img[x]

    def _self_targets(self, x):
        return self.np_cod_mul[self._arange, self._arange]

    def _targets_xy(self, x, ys, ws):
        return self.np_cod_mul[:, ws]

    def _targets_yx(self, x, ys, ws):
        return self.np_cod_mul[ws, :]

    def _forced_xy(self, x, v, ys, ws):
        return self.np_cod_mul[v, ws]

    def _forced_yx(self, x, v, ys, ws):
        return self.np_cod_mul[ws, v]

    def _emit(self):
        return MapTable(self.domain, self.codomain, table=np.array(self.img, dtype=np.int64))

    def _verify(self, table) -> bool:
        return bool(is_n_multiplicative(table, self.n, tree_mode=self.tree_mode))


class DerivationSearch(_TableSearch):
    """All total tables satisfying the canonical n-derivation identity."""

    bijective = False

    def _extend(self, x, pair):
        t, s = pair
        leib = self.cod_add[self.mul[self.img[x]][t]][self.mul[x][s]]
        return self.mul[x][t], leib

    def _base_pair(self, x):
        return x, self.img[x]

    def _self_targets(self, x):
        # d(x*x) = d(x)*x + x*d(x) over candidates d(x) = v
        return self.np_cod_add[self.np_mul[:, x], self.np_mul[x, :]]

    def _targets_xy(self, x, ys, ws):
        # d(x*y) = d(x)*y + x*d(y), candidates v in rows
        return self.np_cod_add[self.np_mul[:, ys], self.np_mul[x, ws][None, :]]

    def _targets_yx(self, x, ys, ws):
        # d(y*x) = d(y)*x + y*d(x), candidates v in columns
        return self.np_cod_add[self.np_mul[ws, x][:, None], self.np_mul[ys, :]]

    def _forced_xy(self, x, v, ys, ws):
        return self.np_cod_add[self.np_mul[v, ys], self.np_mul[x, ws]]

    def _forced_yx(self, x, v, ys, ws):
        return self.np_cod_add[self.np_mul[ws, x], self.np_mul[ys, v]]

    def _emit(self):
        return DerivationTable(self.domain, table=np.array(self.img, dtype=np.int64))

    def _verify(self, table) -> bool:
        return bool(is_n_derivation(table, self.n, tree_mode=self.tree_mode))


def enumerate_multiplicative_bijections(
    domain: Algebra,
    codomain: Algebra,
    n: int,
    budget: SearchBudget | None = None,
    tree_mode: str = "canonical",
    cap: int = DEFAULT_CARRIER_CAP,
) -> MultiplicativeBijectionSearch:
    """Depth-first enumeration of n-multiplicative bijections; iterate to run."""
    return MultiplicativeBijectionSearch(domain, codomain, n, budget, cap, tree_mode)


def enumerate_n_derivations(
    a: Algebra,
    n: int,
    budget: SearchBudget | None = None,
    idempotent: Element | None = None,
    decomposition: PeirceDecomposition | None = None,
    tree_mode: str = "canonical",
    cap: int = DEFAULT_CARRIER_CAP,
) -> DerivationSearch:
    """Depth-first enumeration of tables satisfying the n-derivation identity.

    d(0) = 0 is pre-seeded (it is forced by the identity on the all-zero
    tuple). When an idempotent is registered, the image of e is restricted
    to the half eigenspace; that is where d(e) provably lands whenever the
    field is (n-1)-torsion free, so register it only under that hypothesis.
    """
    search = DerivationSearch(a, a, n, budget, cap, tree_mode)
    if not search._assign(0, 0):
        raise PreconditionViolated("seeding d(0) = 0 failed; inconsistent tables")
    if idempotent is not None:
        from .peirce import peirce_decompose

        dec = decomposition if decomposition is not None else peirce_decompose(a, idempotent)
        if dec.idempotent != idempotent:
            raise PreconditionViolated("decomposition does not match the idempotent")
        e_idx = search.dom.index_of(idempotent)
        half = search.dom.span_indices(dec.basis_half)
        search.domains[e_idx] = [int(v) for v in half]
    return search


@dataclass
class AuditReport:
    """Outcome of auditing an enumeration stream for additivity."""

    witnesses_found: int
    all_additive: bool
    nonadditive_witnesses: list
    exhausted: bool
    hypothesis_record: object = None
    budget_exceeded: bool = False

    def __post_init__(self):
        if self.all_additive != (not self.nonadditive_witnesses):
            raise ValueError("all_additive must mirror the nonadditive witness list")


def additivity_audit(stream, hypotheses: PeirceDecomposition | None = None) -> AuditReport:
    """Run is_additive on every emitted table and summarize the outcome."""
    hypothesis_record = (
        check_theorem_conditions(hypotheses) if hypotheses is not None else None
    )
    count = 0
    nonadditive = []
    for table in stream:
        count += 1
        if not is_additive(table):
            nonadditive.append(table)
    exhausted = bool(getattr(stream, "exhausted", True))
    budget_exceeded = bool(getattr(stream, "budget_exceeded", False))
    return AuditReport(
        witnesses_found=count,
        all_additive=not nonadditive,
        nonadditive_witnesses=nonadditive,
        exhausted=exhausted,
        hypothesis_record=hypothesis_record,
        budget_exceeded=budget_exceeded,
    )
