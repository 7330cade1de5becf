import json

import numpy as np
import pytest

from jordankit import (
    AlgebraMismatch,
    ArityMismatch,
    BudgetExceeded,
    CarrierInfinite,
    DerivationTable,
    FormatError,
    MapTable,
    NoncommutativeDomain,
    NotDerivation,
    PreconditionViolated,
    TorsionViolation,
    carrier_of,
    canonical_tree,
    derivation_peirce_check,
    inner_derivation,
    is_additive,
    is_bijective,
    is_jordan_semitriple,
    is_jordan_triple_derivation,
    is_n_derivation,
    is_n_multiplicative,
    jordanify,
    load_map_table,
    map_table_from_dict,
    map_table_to_dict,
    matrix_units_algebra,
    monomial_eval,
    multiply,
    peirce_decompose,
    peirce_project,
    prime_field,
    reduce_derivation,
    save_map_table,
)

from conftest import planted_peirce_violation


def transpose_map(alg):
    f = alg.field
    perm = [0, 2, 1, 3]  # e10 <-> e01
    matrix = [[f.one() if perm[j] == i else f.zero() for j in range(4)] for i in range(4)]
    return MapTable.from_matrix(alg, alg, matrix)


def scaling_map(alg, c):
    f = alg.field
    cv = f.from_int(c)
    matrix = [[cv if i == j else f.zero() for j in range(4)] for i in range(4)]
    return MapTable.from_matrix(alg, alg, matrix)


# ---------------------------------------------------------------------------
# is_additive / is_bijective


def test_identity_additive(kf3):
    assert is_additive(MapTable.identity(kf3)).ok


def test_zero_map_additive(kf3):
    assert is_additive(MapTable.zero(kf3)).ok


def test_swapped_entries_not_additive(kf3):
    car = carrier_of(kf3)
    table = np.arange(car.size, dtype=np.int64)
    i = car.index_of(kf3.basis_element(0))
    j = car.index_of(kf3.basis_element(0).scaled(2))
    table[i], table[j] = table[j], table[i]
    m = MapTable(kf3, kf3, table=table)
    verdict = is_additive(m)
    assert not verdict.ok
    x, y = verdict.witness
    assert m.apply(x + y) != m.apply(x) + m.apply(y)


def test_is_bijective(kf3):
    assert is_bijective(MapTable.identity(kf3))
    assert not is_bijective(MapTable.zero(kf3))
    assert is_bijective(transpose_map(kf3))


def test_is_bijective_linear_over_q(kq):
    assert is_bijective(MapTable.identity(kq))
    assert not is_bijective(MapTable.zero(kq))


# ---------------------------------------------------------------------------
# is_n_multiplicative


def test_identity_n_multiplicative(kf3):
    ident = MapTable.identity(kf3)
    for n in (2, 3):
        assert is_n_multiplicative(ident, n).ok
    assert is_n_multiplicative(ident, 2, tree_mode="all_trees").ok


def test_transpose_is_2_multiplicative(kf3):
    assert is_n_multiplicative(transpose_map(kf3), 2).ok


def test_doubling_not_2_multiplicative(kf5):
    m = scaling_map(kf5, 2)
    verdict = is_n_multiplicative(m, 2)
    assert not verdict.ok
    tree, args = verdict.witness
    assert tree == canonical_tree(2)
    lhs = m.apply(monomial_eval(kf5, tree, args))
    rhs = monomial_eval(kf5, tree, [m.apply(x) for x in args])
    assert lhs != rhs
    # phi(xy) = 2xy while phi(x)phi(y) = 4xy, so any xy != 0 falsifies
    assert not multiply(kf5, *args).is_zero()


def test_doubling_not_2_multiplicative_linear_route(kq):
    m = scaling_map(kq, 2)
    verdict = is_n_multiplicative(m, 2)
    assert not verdict.ok


def test_n_multiplicative_rejects_n1(kf3):
    with pytest.raises(ArityMismatch):
        is_n_multiplicative(MapTable.identity(kf3), 1)


def test_n_multiplicative_budget(kf3):
    with pytest.raises(BudgetExceeded):
        is_n_multiplicative(MapTable.identity(kf3), 3, budget=100)


def test_multiplicative_composition_closure(kf3):
    # phi 2-multiplicative implies phi o phi is 2-multiplicative
    t = transpose_map(kf3).index_table()
    composed = MapTable(kf3, kf3, table=t[t])
    assert is_n_multiplicative(composed, 2).ok


def test_map_between_different_carrier_sizes(kf3, f3xf3):
    import numpy as np

    zero_idx = carrier_of(kf3).index_of(kf3.zero())
    t = MapTable(f3xf3, kf3, table=np.full(9, zero_idx, dtype=np.int64))
    assert is_n_multiplicative(t, 2).ok  # the zero map is multiplicative
    assert is_additive(t).ok
    assert not is_bijective(t)


def test_all_trees_multiplicativity_degree_4(f3):
    from conftest import diagonal_product_algebra

    a = diagonal_product_algebra(f3, 1)
    ident = MapTable.identity(a)
    assert is_n_multiplicative(ident, 4, tree_mode="all_trees").ok
    doubling = MapTable.from_matrix(a, a, [[f3.from_int(2)]])
    verdict = is_n_multiplicative(doubling, 4, tree_mode="all_trees")
    assert not verdict.ok


# ---------------------------------------------------------------------------
# jordan semi-triple


def test_semitriple_identity(kf3):
    assert is_jordan_semitriple(MapTable.identity(kf3)).ok


def test_semitriple_follows_from_2_multiplicative(kf3):
    assert is_jordan_semitriple(transpose_map(kf3)).ok


def test_semitriple_negation(kf5):
    assert is_jordan_semitriple(scaling_map(kf5, -1)).ok


def test_semitriple_negation_linear_route(kq):
    assert is_jordan_semitriple(scaling_map(kq, -1)).ok


def test_semitriple_noncommutative_rejected(m2f3):
    with pytest.raises(NoncommutativeDomain):
        is_jordan_semitriple(MapTable.identity(m2f3))


def test_semitriple_failure_witness(kf5):
    verdict = is_jordan_semitriple(scaling_map(kf5, 2))
    assert not verdict.ok
    x, y = verdict.witness
    m = scaling_map(kf5, 2)
    lhs = m.apply(multiply(kf5, multiply(kf5, x, y), x))
    rhs = multiply(kf5, multiply(kf5, m.apply(x), m.apply(y)), m.apply(x))
    assert lhs != rhs


# ---------------------------------------------------------------------------
# derivations


def test_zero_map_is_derivation(kf3):
    zero = DerivationTable.zero(kf3)
    for n in (2, 3):
        assert is_n_derivation(zero, n).ok
    assert is_n_derivation(zero, 2, tree_mode="all_trees").ok


def test_inner_derivations_pass_n2_over_f5(kf5):
    for i in range(4):
        for j in range(4):
            d = inner_derivation(kf5, kf5.basis_element(i), kf5.basis_element(j))
            assert is_n_derivation(d, 2).ok


def test_identity_map_fails_derivation(kf3):
    verdict = is_n_derivation(DerivationTable.identity(kf3), 2)
    assert not verdict.ok
    tree, (x, y) = verdict.witness
    # d(xy) = xy but the Leibniz sum gives 2xy
    assert not multiply(kf3, x, y).is_zero()


def test_triple_derivation_zero_and_inner(kf5):
    assert is_jordan_triple_derivation(DerivationTable.zero(kf5)).ok
    d = inner_derivation(kf5, kf5.basis_element(1), kf5.basis_element(2))
    assert is_jordan_triple_derivation(d).ok


def test_triple_derivation_identity_fails(kf5):
    assert not is_jordan_triple_derivation(DerivationTable.identity(kf5)).ok


def test_triple_derivation_linear_route(kq):
    d = inner_derivation(kq, kq.basis_element(1), kq.basis_element(2))
    assert is_jordan_triple_derivation(d).ok
    assert not is_jordan_triple_derivation(DerivationTable.identity(kq)).ok


# ---------------------------------------------------------------------------
# inner_derivation


def test_inner_derivation_paper_value(kq):
    e11 = kq.basis_element(0)
    a_half = kq.basis_element(1)
    d = inner_derivation(kq, a_half, e11.scaled(4))
    assert d.apply(e11) == a_half.scaled(3)


def test_inner_derivation_self_is_zero(kq):
    f = kq.field
    y = kq.element([1, 2, 3, 4])
    d = inner_derivation(kq, y, y)
    assert d.matrix == [[f.zero()] * 4 for _ in range(4)]


def test_inner_derivation_zero_argument(kq):
    f = kq.field
    d = inner_derivation(kq, kq.zero(), kq.element([1, 2, 3, 4]))
    assert d.matrix == [[f.zero()] * 4 for _ in range(4)]


def test_inner_derivation_mismatch(kq, m2q):
    with pytest.raises(AlgebraMismatch):
        inner_derivation(kq, m2q.basis_element(0), kq.basis_element(0))


def test_inner_derivation_is_derivation_over_q(kq):
    d = inner_derivation(kq, kq.basis_element(1), kq.basis_element(3))
    assert is_n_derivation(d, 2).ok
    assert is_n_derivation(d, 3).ok


# ---------------------------------------------------------------------------
# reduce_derivation


def test_reduce_zero_map(kq):
    e = kq.basis_element(0)
    delta = reduce_derivation(kq, e, DerivationTable.zero(kq), 2)
    assert delta.apply(e).is_zero()
    for j in range(4):
        assert delta.apply(kq.basis_element(j)).is_zero()


def test_reduce_inner_derivation_q(kq):
    e = kq.basis_element(0)
    d = inner_derivation(kq, kq.basis_element(1), kq.basis_element(2))
    delta = reduce_derivation(kq, e, d, 2)
    assert delta.apply(e).is_zero()
    dec = peirce_decompose(kq, e)
    parts = peirce_project(dec, delta.apply(e))
    assert all(p.is_zero() for p in parts)
    assert derivation_peirce_check(delta, dec).ok


def test_reduce_inner_derivation_nonzero_de(kq):
    # D_{e10, e00} moves e11 into the half space, so d(e) != 0
    e = kq.basis_element(0)
    d = inner_derivation(kq, kq.basis_element(1), kq.basis_element(3))
    de = d.apply(e)
    assert not de.is_zero()
    dec = peirce_decompose(kq, e)
    p1, ph, p0 = peirce_project(dec, de)
    assert p1.is_zero() and p0.is_zero() and ph == de
    delta = reduce_derivation(kq, e, d, 2)
    assert delta.apply(e).is_zero()
    assert derivation_peirce_check(delta, dec).ok


def test_reduce_table_route_f5(kf5):
    e = kf5.basis_element(0)
    inner = inner_derivation(kf5, kf5.basis_element(1), kf5.basis_element(3))
    d = DerivationTable(kf5, table=inner.index_table())
    delta = reduce_derivation(kf5, e, d, 2)
    assert delta.apply(e).is_zero()
    dec = peirce_decompose(kf5, e)
    assert derivation_peirce_check(delta, dec).ok
    # table route and matrix route agree
    delta_matrix = reduce_derivation(kf5, e, inner, 2)
    assert np.array_equal(delta.index_table(), delta_matrix.index_table())


def test_reduce_rejects_non_derivation(kf3):
    e = kf3.basis_element(0)
    with pytest.raises(NotDerivation):
        reduce_derivation(kf3, e, DerivationTable.identity(kf3), 2)


def test_reduce_torsion_violation(kf3):
    # n = 4 needs 3-torsion-freeness, which F3 lacks
    e = kf3.basis_element(0)
    with pytest.raises(TorsionViolation):
        reduce_derivation(kf3, e, DerivationTable.zero(kf3), 4)


def test_reduce_rejects_small_n(kq):
    with pytest.raises(ArityMismatch):
        reduce_derivation(kq, kq.basis_element(0), DerivationTable.zero(kq), 1)


def test_reduce_mismatched_decomposition(kq):
    e = kq.basis_element(0)
    other = peirce_decompose(kq, kq.basis_element(3))
    with pytest.raises(PreconditionViolated):
        reduce_derivation(kq, e, DerivationTable.zero(kq), 2, decomposition=other)


def test_reduced_derivation_scaling_lemma(kf5):
    # Delta(2e) = 0 and Delta(2^{n-1} a) = 2^{n-1} Delta(a) for a in Jhalf
    e = kf5.basis_element(0)
    d = inner_derivation(kf5, kf5.basis_element(1), kf5.basis_element(3))
    delta = reduce_derivation(kf5, e, d, 2)
    assert delta.apply(e.scaled(2)).is_zero()
    for a in (kf5.basis_element(1), kf5.basis_element(2)):
        assert delta.apply(a.scaled(2)) == delta.apply(a).scaled(2)


def test_reduce_collapses_over_char3(kf3):
    # over F3 both D_{d(e),4e} (= 3[L,L]) and 3d vanish, so the reduction
    # of even a nonzero derivation is the zero map and carries no
    # additivity information; the contract (vanishing at e) still holds
    from jordankit import mult_operators
    from jordankit.linalg import mat_mul, mat_sub

    f = kf3.field
    ly = mult_operators(kf3, kf3.basis_element(1))[0].matrix
    lz = mult_operators(kf3, kf3.basis_element(2))[0].matrix
    d = DerivationTable(kf3, matrix=mat_sub(f, mat_mul(f, ly, lz), mat_mul(f, lz, ly)))
    assert is_n_derivation(d, 2).ok
    assert any(not d.apply(x).is_zero() for x in kf3.basis_elements())
    e = kf3.basis_element(0)
    delta = reduce_derivation(kf3, e, d, 2)
    assert all(delta.apply(x).is_zero() for x in kf3.basis_elements())


def test_delta_additive_iff_d_additive_on_f5(kf5):
    # empirical check of the reduction's additivity transfer where 3 is a unit
    e = kf5.basis_element(0)
    dec = peirce_decompose(kf5, e)
    for pair in ((1, 3), (2, 3), (1, 2)):
        d = inner_derivation(kf5, kf5.basis_element(pair[0]), kf5.basis_element(pair[1]))
        d_table = DerivationTable(kf5, table=d.index_table())
        delta = reduce_derivation(kf5, e, d_table, 2, decomposition=dec)
        assert is_additive(d_table).ok == is_additive(delta).ok


def test_n_derivation_budget(kf3):
    with pytest.raises(BudgetExceeded):
        is_n_derivation(DerivationTable.zero(kf3), 3, budget=100)


# ---------------------------------------------------------------------------
# derivation_peirce_check


def test_peirce_check_zero(kf5):
    dec = peirce_decompose(kf5, kf5.basis_element(0))
    assert derivation_peirce_check(DerivationTable.zero(kf5), dec).ok


def test_peirce_check_planted_violation(kf3):
    dec = peirce_decompose(kf3, kf3.basis_element(0))
    car = carrier_of(kf3)
    table = np.zeros(car.size, dtype=np.int64)
    bad_in = car.index_of(kf3.basis_element(0).scaled(2))  # 2*e11 in J_1
    table[bad_in] = car.index_of(kf3.basis_element(1))  # image e10 outside J_1
    delta = DerivationTable(kf3, table=table)
    assert delta.apply(dec.idempotent).is_zero()
    verdict = derivation_peirce_check(delta, dec)
    assert not verdict.ok
    key, witness = verdict.witness
    assert key == "1" and witness == kf3.basis_element(0).scaled(2)


def test_peirce_check_precondition(kf3):
    dec = peirce_decompose(kf3, kf3.basis_element(0))
    with pytest.raises(PreconditionViolated):
        derivation_peirce_check(DerivationTable.identity(kf3), dec)


# ---------------------------------------------------------------------------
# table/matrix plumbing and the file format


def test_table_matrix_consistency_enforced(kf3):
    f = kf3.field
    ident_matrix = [[f.one() if i == j else f.zero() for j in range(4)] for i in range(4)]
    car = carrier_of(kf3)
    good = np.arange(car.size, dtype=np.int64)
    MapTable(kf3, kf3, table=good, matrix=ident_matrix)  # consistent
    bad = good.copy()
    bad[1], bad[2] = bad[2], bad[1]
    with pytest.raises(FormatError):
        MapTable(kf3, kf3, table=bad, matrix=ident_matrix)


def test_from_entries_requires_totality(kf3):
    pairs = [(x, x) for x, _ in list(MapTable.identity(kf3).entries())[:-1]]
    with pytest.raises(FormatError):
        MapTable.from_entries(kf3, kf3, pairs)


def test_from_entries_rejects_duplicates(kf3):
    x = kf3.basis_element(0)
    with pytest.raises(FormatError):
        MapTable.from_entries(kf3, kf3, [(x, x), (x, kf3.zero())])


def test_map_file_roundtrip_entries(tmp_path, kf3):
    t = transpose_map(kf3)
    t_table = MapTable(kf3, kf3, table=t.index_table())
    path = tmp_path / "transpose.map"
    save_map_table(t_table, path)
    back = load_map_table(path, domain=kf3, codomain=kf3)
    assert np.array_equal(back.index_table(), t_table.index_table())
    assert back.bijective_at_load is True


def test_map_file_roundtrip_matrix(tmp_path, kq):
    t = transpose_map(kq)
    path = tmp_path / "transpose_q.map"
    save_map_table(t, path)
    back = load_map_table(path, domain=kq, codomain=kq)
    assert back.matrix == t.matrix


def test_map_file_embedded_algebras(tmp_path, kf3):
    t = transpose_map(kf3)
    path = tmp_path / "standalone.map"
    save_map_table(t, path)
    back = load_map_table(path)  # algebras resolved from the file itself
    assert back.domain.table == kf3.table
    assert np.array_equal(back.index_table(), t.index_table())


def test_map_file_rejects_partial_entries(tmp_path, kf3):
    data = {"entries": [{"in": "0,0,0,0", "out": "0,0,0,0"}]}
    path = tmp_path / "partial.map"
    path.write_text(json.dumps(data))
    with pytest.raises(FormatError):
        load_map_table(path, domain=kf3, codomain=kf3)


def test_map_file_rejects_duplicate_entries(kf3):
    entries = [{"in": x.text(), "out": y.text()} for x, y in MapTable.identity(kf3).entries()]
    entries.append(entries[0])
    with pytest.raises(FormatError):
        map_table_from_dict({"entries": entries}, domain=kf3, codomain=kf3)


def test_map_entries_over_rationals_rejected(kq):
    with pytest.raises(CarrierInfinite):
        map_table_from_dict(
            {"entries": [{"in": "0,0,0,0", "out": "0,0,0,0"}]}, domain=kq, codomain=kq
        )


def test_map_dict_includes_matrix_and_consistency(kf3):
    t = transpose_map(kf3)
    data = map_table_to_dict(t)
    assert "matrix" in data
    back = map_table_from_dict(data, domain=kf3, codomain=kf3)
    assert back.matrix == t.matrix


def test_nonbijective_table_loads_with_flag(kf3):
    zero_entries = [
        {"in": x.text(), "out": kf3.zero().text()} for x, _ in MapTable.identity(kf3).entries()
    ]
    t = map_table_from_dict({"entries": zero_entries}, domain=kf3, codomain=kf3)
    assert t.bijective_at_load is False
    assert is_additive(t).ok
