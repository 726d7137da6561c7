"""Unit and property tests for the GF(p) linear algebra substrate."""

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from persilat.gf import (
    Field,
    FieldMismatchError,
    Matrix,
    ShapeError,
    SubspaceBasis,
    hstack,
    image_basis,
    invert,
    kernel_basis,
    mat_mul,
    quotient_map,
    rank,
    solve_membership,
    subspace_sum,
)

GF2 = Field(2)
GF3 = Field(3)
GF5 = Field(5)


def all_vectors(p, n):
    return list(itertools.product(range(p), repeat=n))


def apply(m, v):
    p = m.field.p
    return tuple(sum(m.array[r, c] * v[c] for c in range(m.cols)) % p for r in range(m.rows))


def span_set(basis):
    """Every vector in the span, by enumerating coefficient tuples."""
    p = basis.field.p
    out = set()
    for coeffs in itertools.product(range(p), repeat=basis.dim):
        vec = tuple(
            sum(basis.basis.array[r, j] * coeffs[j] for j in range(basis.dim)) % p
            for r in range(basis.ambient_dim)
        )
        out.add(vec)
    return out


@st.composite
def matrices(draw, p, max_dim=4):
    rows = draw(st.integers(0, max_dim))
    cols = draw(st.integers(0, max_dim))
    entries = draw(
        st.lists(
            st.lists(st.integers(0, p - 1), min_size=cols, max_size=cols),
            min_size=rows,
            max_size=rows,
        )
    )
    return Matrix.from_rows(Field(p), entries, cols=cols)


class TestField:
    def test_accepts_primes(self):
        for p in (2, 3, 5, 7, 11, 97):
            assert Field(p).p == p

    @pytest.mark.parametrize("bad", [0, 1, 4, 6, 9, 100, -3])
    def test_rejects_composites(self, bad):
        with pytest.raises(ValueError):
            Field(bad)

    def test_inverse(self):
        for p in (2, 3, 5, 7):
            f = Field(p)
            for a in range(1, p):
                assert (a * f.inv(a)) % p == 1


class TestMatMul:
    def test_identity(self):
        i2 = Matrix.identity(GF2, 2)
        assert mat_mul(i2, i2) == i2

    def test_gf2_wraparound(self):
        a = Matrix.from_rows(GF2, [[1, 1]])
        b = Matrix.from_rows(GF2, [[1], [1]])
        assert mat_mul(a, b) == Matrix.from_rows(GF2, [[0]])

    def test_gf5_product(self):
        # 2 * 3 = 6 = 1 mod 5
        assert mat_mul(Matrix.from_rows(GF5, [[2]]), Matrix.from_rows(GF5, [[3]])) == Matrix.from_rows(GF5, [[1]])

    def test_shape_error(self):
        with pytest.raises(ShapeError):
            Matrix.identity(GF2, 2) @ Matrix.identity(GF2, 3)

    def test_field_mismatch(self):
        with pytest.raises(FieldMismatchError):
            Matrix.identity(GF2, 2) @ Matrix.identity(GF3, 2)

    def test_zero_dims(self):
        a = Matrix.zeros(GF2, 2, 0)
        b = Matrix.zeros(GF2, 0, 3)
        assert (a @ b) == Matrix.zeros(GF2, 2, 3)


class TestRank:
    def test_identity(self):
        assert rank(Matrix.identity(GF2, 3)) == 3

    def test_zero(self):
        assert rank(Matrix.zeros(GF2, 2, 2)) == 0

    def test_repeated_rows(self):
        # Oracle: the four GF(2)^2 inputs map to {(0,0),(1,1)}, a 1-dim span.
        m = Matrix.from_rows(GF2, [[1, 0], [1, 0]])
        images = {apply(m, v) for v in all_vectors(2, 2)}
        assert images == {(0, 0), (1, 1)}
        assert rank(m) == 1

    def test_empty(self):
        assert rank(Matrix.zeros(GF2, 0, 4)) == 0
        assert rank(Matrix.zeros(GF2, 4, 0)) == 0


class TestKernel:
    def test_injective(self):
        k = kernel_basis(Matrix.identity(GF2, 2))
        assert k.dim == 0

    def test_parity_map(self):
        # Oracle: enumerate all 4 vectors of GF(2)^2 against x + y = 0.
        m = Matrix.from_rows(GF2, [[1, 1]])
        expected = {v for v in all_vectors(2, 2) if apply(m, v) == (0,)}
        k = kernel_basis(m)
        assert span_set(k) == expected == {(0, 0), (1, 1)}

    def test_no_constraints(self):
        k = kernel_basis(Matrix.zeros(GF5, 0, 3))
        assert k == SubspaceBasis.full(GF5, 3)


class TestImage:
    def test_surjective(self):
        assert image_basis(Matrix.identity(GF3, 2)) == SubspaceBasis.full(GF3, 2)

    def test_zero_map(self):
        assert image_basis(Matrix.zeros(GF3, 2, 2)).dim == 0

    def test_diagonal_line(self):
        # Oracle: the two inputs of GF(2) map to (0,0) and (1,1).
        m = Matrix.from_rows(GF2, [[1], [1]])
        assert {apply(m, v) for v in all_vectors(2, 1)} == {(0, 0), (1, 1)}
        assert span_set(image_basis(m)) == {(0, 0), (1, 1)}


class TestQuotient:
    def test_by_diagonal(self):
        w = SubspaceBasis.from_span(GF2, 2, Matrix.from_rows(GF2, [[1], [1]]))
        q = quotient_map(2, w)
        assert q == Matrix.from_rows(GF2, [[1, 1]])
        # Oracle: kernel of q over all four vectors is exactly the diagonal.
        killed = {v for v in all_vectors(2, 2) if apply(q, v) == (0,)}
        assert killed == {(0, 0), (1, 1)}

    def test_by_zero_subspace(self):
        q = quotient_map(3, SubspaceBasis.zero(GF5, 3))
        assert q == Matrix.identity(GF5, 3)

    def test_by_full_space(self):
        q = quotient_map(2, SubspaceBasis.full(GF2, 2))
        assert q.rows == 0 and q.cols == 2

    def test_kernel_is_subspace(self):
        w = SubspaceBasis.from_span(GF5, 3, Matrix.from_rows(GF5, [[1, 0], [2, 1], [0, 3]]))
        q = quotient_map(3, w)
        assert kernel_basis(q) == w
        assert rank(q) == 3 - w.dim
        assert (q @ w.basis).is_zero()


class TestSubspaceSum:
    def test_complementary_lines(self):
        a = SubspaceBasis.from_span(GF2, 2, Matrix.from_rows(GF2, [[1], [0]]))
        b = SubspaceBasis.from_span(GF2, 2, Matrix.from_rows(GF2, [[0], [1]]))
        assert subspace_sum(a, b) == SubspaceBasis.full(GF2, 2)

    def test_idempotent(self):
        w = SubspaceBasis.from_span(GF3, 3, Matrix.from_rows(GF3, [[1, 1], [2, 0], [0, 1]]))
        assert subspace_sum(w, w) == w

    def test_skew_lines(self):
        # Oracle: spans of (1,1) and (1,0) together hit all four vectors.
        a = SubspaceBasis.from_span(GF2, 2, Matrix.from_rows(GF2, [[1], [1]]))
        b = SubspaceBasis.from_span(GF2, 2, Matrix.from_rows(GF2, [[1], [0]]))
        s = subspace_sum(a, b)
        assert span_set(s) == set(all_vectors(2, 2))

    def test_ambient_mismatch(self):
        with pytest.raises(ShapeError):
            subspace_sum(SubspaceBasis.zero(GF2, 2), SubspaceBasis.zero(GF2, 3))


class TestMembership:
    def test_on_the_line(self):
        w = SubspaceBasis.from_span(GF2, 2, Matrix.from_rows(GF2, [[1], [1]]))
        assert solve_membership(w, (1, 1))

    def test_off_the_line(self):
        w = SubspaceBasis.from_span(GF2, 2, Matrix.from_rows(GF2, [[1], [1]]))
        assert span_set(w) == {(0, 0), (1, 1)}
        assert not solve_membership(w, (1, 0))

    def test_zero_vector(self):
        assert solve_membership(SubspaceBasis.zero(GF5, 3), (0, 0, 0))
        assert solve_membership(SubspaceBasis.zero(GF2, 0), ())


@settings(max_examples=150, deadline=None)
@given(st.sampled_from([2, 3, 5]).flatmap(lambda p: matrices(p)))
def test_rank_nullity(m):
    assert rank(m) + kernel_basis(m).dim == m.cols


@settings(max_examples=150, deadline=None)
@given(st.sampled_from([2, 3, 5]).flatmap(lambda p: matrices(p)))
def test_kernel_vectors_die(m):
    k = kernel_basis(m)
    prod = m @ k.basis
    assert prod.is_zero()


@settings(max_examples=100, deadline=None)
@given(st.sampled_from([2, 5]).flatmap(lambda p: matrices(p)), st.randoms(use_true_random=False))
def test_canonical_form_is_basis_independent(m, rng):
    """Two bases spanning the same subspace give bit-identical values."""
    w = image_basis(m)
    if w.dim == 0:
        return
    f = w.field
    while True:
        t = Matrix.from_rows(
            f, [[rng.randrange(f.p) for _ in range(w.dim)] for _ in range(w.dim)], cols=w.dim
        )
        if rank(t) == w.dim:
            break
    scrambled = SubspaceBasis.from_span(f, w.ambient_dim, w.basis @ t)
    assert scrambled == w


@settings(max_examples=60, deadline=None)
@given(matrices(2, max_dim=4))
def test_kernel_image_match_enumeration(m):
    """Exhaustive oracle over GF(2)^n, ambient dims at most 4."""
    kern = kernel_basis(m)
    zero = tuple([0] * m.rows)
    expected_kernel = {v for v in all_vectors(2, m.cols) if apply(m, v) == zero}
    assert span_set(kern) == expected_kernel
    expected_image = {apply(m, v) for v in all_vectors(2, m.cols)}
    assert span_set(image_basis(m)) == expected_image


@settings(max_examples=80, deadline=None)
@given(st.sampled_from([2, 3]).flatmap(lambda p: matrices(p, max_dim=4)))
def test_quotient_inverts_inclusion(m):
    w = image_basis(m)
    q = quotient_map(m.rows, w)
    assert (q @ w.basis).is_zero()
    assert rank(q) == m.rows - w.dim
    assert kernel_basis(q) == w


def test_invert_round_trip():
    m = Matrix.from_rows(GF5, [[1, 2, 0], [0, 1, 4], [3, 0, 2]])
    assert m @ invert(m) == Matrix.identity(GF5, 3)
    assert invert(m) @ m == Matrix.identity(GF5, 3)
