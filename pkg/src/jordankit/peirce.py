"""Idempotents, Peirce decompositions, and the nondegeneracy conditions.

The decomposition splits an algebra into exact eigenspaces of the
operator (L_e + R_e)/2 for eigenvalues 1, 1/2, 0. On commutative
algebras this operator is plain multiplication by e; on noncommutative
ones the caller must opt in explicitly, and all component products here
use the symmetrized product so the matrix-unit example decomposes the
way its Peirce components are classically stated.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dataclass_field

from .algebra import (
    Algebra,
    Element,
    commutator,
    identity_element,
    mult_operators,
    multiply,
)
from .errors import (
    AlgebraMismatch,
    CharacteristicUnsupported,
    DecompositionIncomplete,
    EnumerationTooLarge,
    ModeUnsupported,
    NoncommutativeDomain,
    NotIdempotent,
)
from .linalg import identity_matrix, invert, kernel_basis, mat_sub, mat_vec

HEURISTIC_DIM_CAP = 20


def symmetrized_product(a: Algebra, x: Element, y: Element) -> Element:
    """(xy + yx)/2; equals xy on commutative algebras."""
    f = a.field
    if f.characteristic == 2:
        raise CharacteristicUnsupported("symmetrized product needs characteristic != 2")
    half = f.inv(f.from_int(2))
    return (multiply(a, x, y) + multiply(a, y, x)).scaled(half)


def idempotent_class(a: Algebra, e: Element) -> str:
    """One of not_idempotent | zero | trivial_identity | nontrivial."""
    if e.algebra is not a:
        raise AlgebraMismatch("element belongs to a different algebra")
    if multiply(a, e, e) != e:
        return "not_idempotent"
    if e.is_zero():
        return "zero"
    unit = identity_element(a)
    if unit is not None and e == unit:
        return "trivial_identity"
    return "nontrivial"


@dataclass
class IdempotentHit:
    element: Element
    classification: str


def find_idempotents(a: Algebra, mode: str = "heuristic", extra=(), cap: int = 10**6):
    """Nonzero solutions of e*e = e, lexicographically sorted by coordinates.

    Exhaustive mode scans the whole finite carrier; heuristic mode tests
    every 0/1 coordinate vector plus caller-supplied candidates.
    """
    f = a.field
    found = {}
    if mode == "exhaustive":
        p = f.characteristic
        if p == 0:
            raise ModeUnsupported("exhaustive idempotent search needs a finite field")
        if p**a.dim > cap:
            raise EnumerationTooLarge(f"carrier size {p}^{a.dim} exceeds cap {cap}")
        for coords in itertools.product(range(p), repeat=a.dim):
            e = Element(a, coords)
            if not e.is_zero() and multiply(a, e, e) == e:
                found[coords] = e
    elif mode == "heuristic":
        if a.dim > HEURISTIC_DIM_CAP:
            raise EnumerationTooLarge(f"0/1 sweep over dim {a.dim} exceeds 2^{HEURISTIC_DIM_CAP}")
        zero, one = f.zero(), f.one()
        for bits in itertools.product((zero, one), repeat=a.dim):
            e = Element(a, bits)
            if not e.is_zero() and multiply(a, e, e) == e:
                found[e.coords] = e
        for cand in extra:
            if cand.algebra is not a:
                raise AlgebraMismatch("candidate belongs to a different algebra")
            if not cand.is_zero() and multiply(a, cand, cand) == cand:
                found[cand.coords] = cand
    else:
        raise ModeUnsupported(f"unknown idempotent search mode {mode!r}")
    hits = [IdempotentHit(e, idempotent_class(a, e)) for _, e in sorted(found.items())]
    return hits


class PeirceDecomposition:
    """Eigenspace split J = J_1 + J_1/2 + J_0 for a nontrivial idempotent."""

    def __init__(self, algebra: Algebra, idempotent: Element, basis1, basis_half, basis0):
        self.algebra = algebra
        self.idempotent = idempotent
        self.basis1 = list(basis1)
        self.basis_half = list(basis_half)
        self.basis0 = list(basis0)
        f = algebra.field
        d = algebra.dim
        cols = [v.coords for v in self.basis1 + self.basis_half + self.basis0]
        if len(cols) != d:
            raise DecompositionIncomplete(
                f"component dimensions {self.dims} do not sum to {d}"
            )
        self.change_of_basis = [[cols[j][k] for j in range(d)] for k in range(d)]
        inv = invert(f, self.change_of_basis)
        if inv is None:
            raise DecompositionIncomplete("component bases are not linearly independent")
        self.inverse_basis = inv
        self.projectors = self._build_projectors()

    @property
    def dims(self) -> tuple[int, int, int]:
        return (len(self.basis1), len(self.basis_half), len(self.basis0))

    def _build_projectors(self):
        f = self.algebra.field
        d = self.algebra.dim
        d1, dh, _ = self.dims
        ranges = {
            "1": range(0, d1),
            "half": range(d1, d1 + dh),
            "0": range(d1 + dh, d),
        }
        projs = {}
        for key, rng in ranges.items():
            # B . (select component columns) . B^-1
            bsel = [[self.change_of_basis[i][j] if j in rng else f.zero() for j in range(d)] for i in range(d)]
            proj = [[f.zero()] * d for _ in range(d)]
            for i in range(d):
                for j in range(d):
                    s = f.zero()
                    for t in range(d):
                        s = f.add(s, f.mul(bsel[i][t], self.inverse_basis[t][j]))
                    proj[i][j] = s
            projs[key] = proj
        return projs

    def component_basis(self, key: str):
        return {"1": self.basis1, "half": self.basis_half, "0": self.basis0}[key]

    def project(self, x: Element) -> tuple[Element, Element, Element]:
        return peirce_project(self, x)


def peirce_decompose(
    a: Algebra, e: Element, allow_noncommutative: bool = False
) -> PeirceDecomposition:
    """Split the algebra into exact eigenspaces of (L_e + R_e)/2."""
    f = a.field
    if f.characteristic == 2:
        raise CharacteristicUnsupported("Peirce decomposition needs characteristic != 2")
    cls = idempotent_class(a, e)
    if cls != "nontrivial":
        raise NotIdempotent(f"need a nontrivial idempotent, got {cls}")
    if not allow_noncommutative:
        basis = a.basis_elements()
        for i in range(a.dim):
            for j in range(i + 1, a.dim):
                if not commutator(a, basis[i], basis[j]).is_zero():
                    raise NoncommutativeDomain(
                        "algebra is noncommutative; pass allow_noncommutative=True "
                        "to decompose with the symmetrized operator"
                    )
    left, right = mult_operators(a, e)
    half = f.inv(f.from_int(2))
    d = a.dim
    op = [
        [f.mul(half, f.add(left.matrix[i][j], right.matrix[i][j])) for j in range(d)]
        for i in range(d)
    ]
    ident = identity_matrix(f, d)
    components = []
    for lam in (f.one(), half, f.zero()):
        shifted = mat_sub(f, op, [[f.mul(lam, c) for c in row] for row in ident])
        rows = kernel_basis(f, shifted)
        components.append([Element(a, tuple(v)) for v in rows])
    basis1, basis_half, basis0 = components
    if len(basis1) + len(basis_half) + len(basis0) != d:
        raise DecompositionIncomplete(
            f"eigenspace dimensions {(len(basis1), len(basis_half), len(basis0))} "
            f"do not exhaust dim {d}"
        )
    return PeirceDecomposition(a, e, basis1, basis_half, basis0)


def peirce_project(dec: PeirceDecomposition, x: Element) -> tuple[Element, Element, Element]:
    """Unique components (x_1, x_half, x_0) with x = x_1 + x_half + x_0."""
    a = dec.algebra
    if x.algebra is not a:
        raise AlgebraMismatch("element belongs to a different algebra")
    f = a.field
    parts = []
    for key in ("1", "half", "0"):
        parts.append(Element(a, tuple(mat_vec(f, dec.projectors[key], list(x.coords)))))
    return tuple(parts)


# ---------------------------------------------------------------------------
# multiplication relations and theorem conditions


@dataclass
class RelationCheck:
    name: str
    ok: bool
    witness: tuple | None = None


@dataclass
class PeirceRelationReport:
    checks: list

    @property
    def all_ok(self) -> bool:
        return all(c.ok for c in self.checks)


def _component_parts_zero(dec, x, keys) -> bool:
    x1, xh, x0 = peirce_project(dec, x)
    by_key = {"1": x1, "half": xh, "0": x0}
    return all(by_key[k].is_zero() for k in keys)


def verify_peirce_relations(dec: PeirceDecomposition) -> PeirceRelationReport:
    """Check the five component multiplication relations on basis pairs."""
    a = dec.algebra
    checks = []

    def closed_in(name, lefts, rights, vanishing_keys):
        for u in lefts:
            for v in rights:
                prod = symmetrized_product(a, u, v)
                if not _component_parts_zero(dec, prod, vanishing_keys):
                    checks.append(RelationCheck(name, False, (u, v, prod)))
                    return
        checks.append(RelationCheck(name, True))

    def annihilates(name, lefts, rights):
        for u in lefts:
            for v in rights:
                prod = symmetrized_product(a, u, v)
                if not prod.is_zero():
                    checks.append(RelationCheck(name, False, (u, v, prod)))
                    return
        checks.append(RelationCheck(name, True))

    closed_in("J0*J0 <= J0", dec.basis0, dec.basis0, ("1", "half"))
    closed_in("J1*J1 <= J1", dec.basis1, dec.basis1, ("half", "0"))
    annihilates("J1*J0 = 0", dec.basis1, dec.basis0)
    closed_in(
        "(J1+J0)*Jhalf <= Jhalf", dec.basis1 + dec.basis0, dec.basis_half, ("1", "0")
    )
    closed_in("Jhalf*Jhalf <= J1+J0", dec.basis_half, dec.basis_half, ("half",))
    return PeirceRelationReport(checks)


@dataclass
class ConditionReport:
    cond_i: bool
    cond_ii: bool
    cond_iii: bool
    witnesses: dict = dataclass_field(default_factory=dict)

    @property
    def all_ok(self) -> bool:
        return self.cond_i and self.cond_ii and self.cond_iii


def _annihilator_kernel(dec: PeirceDecomposition, t_basis, comp_basis):
    """Nonzero a in span(comp_basis) with t o a = 0 for all t, if any."""
    a = dec.algebra
    f = a.field
    if not comp_basis:
        return None
    if not t_basis:
        return comp_basis[0]  # empty quantifier: every element annihilates
    rows = []
    for t in t_basis:
        images = [symmetrized_product(a, t, v).coords for v in comp_basis]
        for k in range(a.dim):
            rows.append([img[k] for img in images])
    kern = kernel_basis(f, rows)
    if not kern:
        return None
    coeffs = kern[0]
    wit = a.zero()
    for c, v in zip(coeffs, comp_basis):
        wit = wit + v.scaled(c)
    return wit


def check_theorem_conditions(dec: PeirceDecomposition) -> ConditionReport:
    """Kernel test of the three annihilator conditions of the additivity theorems.

    (i)  no nonzero a in J_1 or J_0 is killed by all of J_1/2;
    (ii) no nonzero a in J_0 is killed by all of J_0;
    (iii) no nonzero a in J_1/2 is killed by all of J_0.
    """
    witnesses = {}
    w = _annihilator_kernel(dec, dec.basis_half, dec.basis1)
    if w is not None:
        witnesses["i@J1"] = w
    w = _annihilator_kernel(dec, dec.basis_half, dec.basis0)
    if w is not None:
        witnesses["i@J0"] = w
    w = _annihilator_kernel(dec, dec.basis0, dec.basis0)
    if w is not None:
        witnesses["ii"] = w
    w = _annihilator_kernel(dec, dec.basis0, dec.basis_half)
    if w is not None:
        witnesses["iii"] = w
    return ConditionReport(
        cond_i="i@J1" not in witnesses and "i@J0" not in witnesses,
        cond_ii="ii" not in witnesses,
        cond_iii="iii" not in witnesses,
        witnesses=witnesses,
    )
