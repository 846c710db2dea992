import random
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from miniversal.canonical import (
    ComplexEig,
    ComplexPair,
    ContragredientStructure,
    JordanStructure,
    PencilStructure,
    RealEig,
    build,
)
from miniversal.exact import Field, Matrix, gaussian
from miniversal.quiver import (
    ENTRY_ORDERS,
    PatternError,
    Quiver,
    Representation,
    StarPattern,
    ambient_dim,
    bracket,
    codimension,
    decompose,
    entry_order,
    greedy_simplest_miniversal,
    inner_product,
    orthogonal_miniversal,
    pattern_direction,
    tangent_columns,
    tangent_map_matrix,
    tangent_rank,
    tuple_from_vector,
    vectorize,
    from_vector,
    verify_transversal,
)
from miniversal.sampling import (
    contragredient_structures,
    eigen_pool,
    jordan_structures,
    pencil_structures,
    random_structure,
)
import oracles

R, C = Field.R, Field.C


def loop(rows, field=R):
    return Representation(Quiver.loop(), (len(rows),), {"A": Matrix(rows, field)}, field)


def rand_vector(rng, n, field):
    def x():
        v = F(rng.randint(-4, 4), rng.randint(1, 3))
        if field is C:
            return gaussian(v, F(rng.randint(-2, 2)))
        return v
    return [x() for _ in range(n)]


class TestBracket:
    def test_nilpotent_example(self):
        a = loop([[0, 1], [0, 0]])
        c = (Matrix([[0, 0], [1, 0]]),)
        assert bracket(c, a)["A"].tolist() == [[-1, 0], [0, 1]]

    def test_identity_commutes(self):
        a = build(PencilStructure(R, left_minimal=(2,), right_minimal=(3,)))
        c = tuple(Matrix.identity(n) for n in a.dims)
        assert all(m.is_zero() for m in bracket(c, a).mats.values())

    def test_counter_arrow_sign(self):
        # [C, A]_B = C_0 B - B C_1 for B: 1 -> 0
        a = Representation(Quiver.counter_arrow(), (1, 1),
                           {"A": Matrix([[1]]), "B": Matrix([[2]])})
        d = bracket((Matrix([[1]]), Matrix([[0]])), a)
        assert d["A"].tolist() == [[-1]]
        assert d["B"].tolist() == [[2]]

    @given(st.integers(0, 10 ** 6))
    def test_linear_in_c(self, seed):
        rng = random.Random(seed)
        s = random_structure(rng, rng.choice(["similarity", "pencil", "contragredient"]),
                             rng.choice([R, C]), 2)
        a = build(s)
        n = sum(d * d for d in a.dims)
        u, v = rand_vector(rng, n, s.field), rand_vector(rng, n, s.field)
        cu = tuple_from_vector(a.dims, u, s.field)
        cv = tuple_from_vector(a.dims, v, s.field)
        cw = tuple_from_vector(a.dims, [x + y for x, y in zip(u, v)], s.field)
        lhs = vectorize(bracket(cw, a))
        rhs = [x + y for x, y in zip(vectorize(bracket(cu, a)), vectorize(bracket(cv, a)))]
        assert lhs == rhs


class TestTangent:
    def test_nilpotent_rank(self):
        assert tangent_rank(loop([[0, 1], [0, 0]])) == 2

    def test_fk_rank(self):
        a = build(PencilStructure(R, left_minimal=(2,)))
        assert tangent_map_matrix(a).shape == (4, 5)
        assert tangent_rank(a) == 4

    def test_scalar_matrix(self):
        a = loop([[3, 0], [0, 3]])
        assert tangent_rank(a) == 0
        assert codimension(a) == 4

    @pytest.mark.parametrize("s, expected", [
        (JordanStructure(C, ((ComplexEig(0), (2, 1)),)), 5),
        (JordanStructure(R, ((ComplexPair(1, 2), (1,)),)), 2),
        (JordanStructure(R, ((ComplexPair(1, 2), (2,)),)), 4),
        (JordanStructure(C, ((ComplexEig(1), (1,)), (ComplexEig(2), (1,)))), 2),
        (PencilStructure(C, left_minimal=(3,)), 0),
        (PencilStructure(C, right_minimal=(3,)), 0),
        (PencilStructure(C, left_minimal=(1,), right_minimal=(1,)), 2),
    ])
    def test_codimension_examples(self, s, expected):
        assert codimension(build(s)) == expected


def _kron_rank(a):
    rows = lambda m: m.tolist()
    if len(a.dims) == 1:
        return oracles.tangent_rank_loop(rows(a["A"]))
    m, n = a["A"].shape
    if a.quiver == Quiver.double_arrow():
        return oracles.tangent_rank_pencil(rows(a["A"]), rows(a["B"]), m, n)
    return oracles.tangent_rank_contragredient(rows(a["A"]), rows(a["B"]), m, n)


@pytest.mark.parametrize("field", [R, C])
def test_tangent_rank_matches_kronecker_oracle(field):
    pool = eigen_pool(field)[:3]
    structures = (list(jordan_structures(field, pool, 4))
                  + list(pencil_structures(field, pool, 5))
                  + list(contragredient_structures(field, eigen_pool(field, True)[:2], 5)))
    assert len(structures) > 100
    for s in structures:
        a = build(s)
        assert tangent_rank(a) == _kron_rank(a), s


@pytest.mark.parametrize("field", [R, C])
def test_similarity_codimension_formula(field):
    for s in jordan_structures(field, eigen_pool(field), 5):
        expected = sum((2 if isinstance(e, ComplexPair) else 1)
                       * oracles.equal_eigenvalue_count([p]) for e, p in s.eigenblocks)
        assert codimension(build(s)) == expected, s


def test_pencil_codimension_formula():
    pool = [ComplexEig(0), ComplexEig(1), ComplexEig(gaussian(2, 3))]
    count = 0
    for s in pencil_structures(C, pool, 8):
        expected = oracles.pencil_codimension_formula(
            s.left_minimal, [p for _, p in s.finite_part.eigenblocks],
            list(s.infinite_part), s.right_minimal)
        assert codimension(build(s)) == expected, s
        count += 1
    assert count > 500


class TestVerify:
    def test_accepts_first_column(self):
        a = loop([[0, 1], [0, 0]])
        report = verify_transversal(a, StarPattern.of([("A", 0, 0), ("A", 1, 0)]))
        assert report.is_miniversal and report.codimension == 2

    def test_rejects_tangent_direction(self):
        # E_01 lies in the image of C -> [C, J_2(0)]
        a = loop([[0, 1], [0, 0]])
        report = verify_transversal(a, StarPattern.of([("A", 0, 1), ("A", 1, 0)]))
        assert not report.is_direct_sum and not report.is_miniversal

    def test_rejects_too_few(self):
        a = loop([[0, 1], [0, 0]])
        report = verify_transversal(a, StarPattern.of([("A", 1, 0)]))
        assert report.is_direct_sum and not report.is_miniversal

    def test_out_of_bounds(self):
        with pytest.raises(PatternError):
            verify_transversal(loop([[1]]), StarPattern.of([("A", 1, 0)]))
        with pytest.raises(PatternError):
            verify_transversal(loop([[1]]), StarPattern.of([("B", 0, 0)]))

    def test_duplicate_stars(self):
        with pytest.raises(PatternError):
            StarPattern.of([("A", 0, 0), ("A", 0, 0)])

    def test_empty_pattern_for_rigid(self):
        a = build(PencilStructure(R, left_minimal=(4,)))
        assert verify_transversal(a, StarPattern()).is_miniversal


class TestGreedy:
    def test_scalar_matrix_takes_everything(self):
        a = loop([[2, 0, 0], [0, 2, 0], [0, 0, 2]])
        assert len(greedy_simplest_miniversal(a)) == 9

    def test_nilpotent(self):
        p = greedy_simplest_miniversal(loop([[0, 1], [0, 0]]))
        # row-major: (0,0) is kept, (0,1) is tangent, (1,0) completes
        assert p.positions() == {("A", 0, 0), ("A", 1, 0)}

    def test_orders_are_permutations(self):
        a = build(PencilStructure(C, left_minimal=(2,), right_minimal=(2,)))
        for name in ENTRY_ORDERS:
            assert sorted(entry_order(a, name)) == sorted(entry_order(a))

    def test_bad_order(self):
        a = loop([[1]])
        with pytest.raises(ValueError):
            greedy_simplest_miniversal(a, [])
        with pytest.raises(ValueError):
            entry_order(a, "diagonal")

    @given(st.integers(0, 10 ** 6), st.sampled_from(sorted(ENTRY_ORDERS)))
    def test_greedy_is_miniversal(self, seed, order):
        rng = random.Random(seed)
        s = random_structure(rng, rng.choice(["similarity", "pencil", "contragredient"]),
                             rng.choice([R, C]), 2)
        a = build(s)
        p = greedy_simplest_miniversal(a, entry_order(a, order))
        assert verify_transversal(a, p).is_miniversal
        assert len(p) == codimension(a)


class TestOrthogonal:
    def test_nilpotent(self):
        a = loop([[0, 1], [0, 0]])
        basis = orthogonal_miniversal(a)
        assert len(basis) == 2
        # the complement of T_A for J_2(0) is spanned by I and E_10
        span = {tuple(vectorize(t)) for t in basis}
        assert oracles.plain_rank([list(v) for v in span] + [[1, 0, 0, 1], [0, 0, 1, 0]]) == 2

    def test_complex_uses_conjugate(self):
        a = loop([[gaussian(0, 1)]], C)
        (t,) = orthogonal_miniversal(a)
        assert t["A"][0, 0] != 0

    @given(st.integers(0, 10 ** 6))
    def test_orthogonal_to_tangent(self, seed):
        rng = random.Random(seed)
        s = random_structure(rng, rng.choice(["similarity", "pencil", "contragredient"]),
                             rng.choice([R, C]), 2)
        a = build(s)
        basis = orthogonal_miniversal(a)
        assert len(basis) == codimension(a)
        for col in tangent_columns(a):
            t_dir = from_vector(a, col)
            for t in basis:
                assert inner_product(t, t_dir) == 0


class TestDecompose:
    def test_example(self):
        a = loop([[0, 1], [0, 0]])
        p = StarPattern.of([("A", 0, 0), ("A", 1, 0)])
        d = loop([[1, 2], [3, 4]])
        coeffs, witness = decompose(a, p, d)
        # trace and the (1,0) entry are invariant under adding [C, J_2(0)]
        assert coeffs == [5, 3]
        lhs = vectorize(d)
        rhs = [x + y for x, y in zip(vectorize(pattern_direction(a, p, coeffs)),
                                     vectorize(bracket(witness, a)))]
        assert lhs == rhs

    def test_rejects_bad_pattern(self):
        a = loop([[0, 1], [0, 0]])
        with pytest.raises(PatternError):
            decompose(a, StarPattern.of([("A", 0, 1)]), loop([[1, 0], [0, 0]]))

    def test_rejects_bad_permutation(self):
        a = loop([[1]])
        with pytest.raises(ValueError):
            decompose(a, StarPattern.of([("A", 0, 0)]), loop([[1]]), [0, 0])

    @given(st.integers(0, 10 ** 6))
    def test_residual_and_uniqueness(self, seed):
        rng = random.Random(seed)
        s = random_structure(rng, rng.choice(["similarity", "pencil", "contragredient"]),
                             rng.choice([R, C]), 2)
        a = build(s)
        p = greedy_simplest_miniversal(a)
        d = from_vector(a, rand_vector(rng, ambient_dim(a), s.field))
        coeffs, witness = decompose(a, p, d)
        rebuilt = [x + y for x, y in zip(vectorize(pattern_direction(a, p, coeffs)),
                                         vectorize(bracket(witness, a)))]
        assert rebuilt == vectorize(d)
        n_vars = sum(x * x for x in a.dims) + len(p)
        perm = list(range(n_vars))
        rng.shuffle(perm)
        assert decompose(a, p, d, perm)[0] == coeffs
