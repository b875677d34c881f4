import math
import random
from itertools import product

import pytest
from hypothesis import given, strategies as st

from kscolor.vectors import (
    Q_BLOCK_NORMS,
    VectorSet,
    apply_matrix,
    apply_symmetry,
    build_Q,
    build_Qn,
    canonicalize,
    enumerate_S,
    format_vector_set,
    is_orthogonal,
    is_primitive,
    is_well_signed,
    norm_sq,
    parse_vector_set,
    radical,
    signed_permutations,
)

nonzero_vec = st.tuples(
    st.integers(-100, 100), st.integers(-100, 100), st.integers(-100, 100)
).filter(lambda v: v != (0, 0, 0))


def test_norm_sq():
    assert norm_sq((1, 0, 0)) == 1
    assert norm_sq((-3, 8, 2)) == 77
    assert norm_sq((2, 2, -5)) == 33


def test_well_signed_cases():
    assert is_well_signed((1, 0, 0))
    assert is_well_signed((0, 1, -1))
    assert is_well_signed((1, -1, 1))
    assert is_well_signed((1, 1, 1))  # three positive also qualifies
    assert not is_well_signed((-1, 0, 0))
    assert not is_well_signed((0, -1, 1))
    assert not is_well_signed((-1, 1, -1))


def test_well_signed_rejects_zero():
    with pytest.raises(ValueError):
        is_well_signed((0, 0, 0))


def test_canonicalize_examples():
    assert canonicalize((-2, 0, 0)) == (1, 0, 0)
    assert canonicalize((0, -1, 1)) == (0, 1, -1)
    assert canonicalize((-1, 1, -1)) == (1, -1, 1)
    with pytest.raises(ValueError):
        canonicalize((0, 0, 0))


@given(nonzero_vec)
def test_canonicalize_idempotent(v):
    w = canonicalize(v)
    assert canonicalize(w) == w
    assert is_primitive(w) and is_well_signed(w)


@given(nonzero_vec, st.integers(-7, 7).filter(lambda k: k != 0))
def test_canonicalize_constant_on_lines(v, k):
    kv = (k * v[0], k * v[1], k * v[2])
    assert canonicalize(kv) == canonicalize(v)
    neg = (-v[0], -v[1], -v[2])
    assert canonicalize(neg) == canonicalize(v)


@given(nonzero_vec)
def test_exactly_one_sign_is_well_signed(v):
    neg = (-v[0], -v[1], -v[2])
    assert is_well_signed(v) != is_well_signed(neg)


def test_orthogonality():
    assert is_orthogonal((2, 1, -1), (-3, 8, 2))
    assert is_orthogonal((1, 0, 0), (0, 1, 0))
    assert not is_orthogonal((1, 1, 0), (1, 0, 1))
    with pytest.raises(ValueError):
        is_orthogonal((0, 0, 0), (1, 0, 0))


def test_radical():
    assert radical(462) == 462
    assert radical(12) == 6
    assert radical(1) == 1
    assert radical(77**2) == 77
    with pytest.raises(ValueError):
        radical(0)


def _radical_oracle(n):
    return math.prod(p for p in range(2, n + 1) if n % p == 0 and is_prime_naive(p))


def is_prime_naive(n):
    return n >= 2 and all(n % d for d in range(2, n))


@pytest.mark.parametrize("n", [1, 2, 6, 12, 30, 49, 77, 128, 462, 500])
def test_radical_against_oracle(n):
    assert radical(n) == _radical_oracle(n)


# ---------------------------------------------------------------------------
# Named constructions

EXPECTED_SIZES = {1: 3, 2: 6, 3: 4, 6: 12, 21: 24, 33: 12, 77: 24}


@pytest.mark.parametrize("n", Q_BLOCK_NORMS)
def test_block_sizes_and_invariants(n):
    block = build_Qn(n)
    assert len(block) == EXPECTED_SIZES[n]
    for v in block:
        assert norm_sq(v) == n
        assert is_primitive(v) and is_well_signed(v)


def test_block_explicit_small_sets():
    assert build_Qn(1).vectors == ((0, 0, 1), (0, 1, 0), (1, 0, 0))
    assert set(build_Qn(2)) == {
        (1, 1, 0), (1, 0, 1), (0, 1, 1), (1, -1, 0), (1, 0, -1), (0, 1, -1),
    }
    assert set(build_Qn(3)) == {(1, 1, 1), (1, 1, -1), (1, -1, 1), (-1, 1, 1)}


def test_block_multiset_exclusions():
    assert canonicalize((4, 5, 6)) not in build_Qn(77)
    assert (1, 4, 4) not in build_Qn(33)
    assert all(sorted(map(abs, v)) == [2, 2, 5] for v in build_Qn(33))
    assert all(sorted(map(abs, v)) == [2, 3, 8] for v in build_Qn(77))


def test_unsupported_block():
    with pytest.raises(ValueError):
        build_Qn(5)


def test_build_Q():
    q = build_Q()
    assert len(q) == 85
    for v in [(-3, 8, 2), (2, 2, -5), (4, 1, 2), (2, 1, -1), (-1, 2, 1)]:
        assert v in q
    # the seven parts are pairwise disjoint (distinct norms) and partition Q
    assert sum(EXPECTED_SIZES.values()) == 85
    by_norm = {}
    for v in q:
        by_norm.setdefault(norm_sq(v), []).append(v)
    assert {n: len(vs) for n, vs in by_norm.items()} == EXPECTED_SIZES


def test_Q_invariant_under_signed_permutations():
    q = set(build_Q())
    for g in signed_permutations():
        assert {apply_symmetry(g, v) for v in q} == q


def test_apply_symmetry():
    rz = ((1, 0, 0), (0, 1, 0), (0, 0, -1))
    assert apply_symmetry(rz, (1, 0, 1)) == (1, 0, -1)
    ident = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    assert apply_symmetry(ident, (2, 1, -1)) == (2, 1, -1)
    swap_xy = ((0, 1, 0), (1, 0, 0), (0, 0, 1))
    assert apply_symmetry(swap_xy, (2, 1, -1)) == (1, 2, -1)
    with pytest.raises(ValueError):
        apply_symmetry(((2, 0, 0), (0, 1, 0), (0, 0, 1)), (1, 0, 0))


def test_symmetries_preserve_norm_and_orthogonality():
    rng = random.Random(7)
    mats = signed_permutations()
    assert len(mats) == 48 and len(set(mats)) == 48
    for _ in range(200):
        v = (rng.randint(-9, 9), rng.randint(-9, 9), rng.randint(-9, 9))
        w = (rng.randint(-9, 9), rng.randint(-9, 9), rng.randint(-9, 9))
        if v == (0, 0, 0) or w == (0, 0, 0):
            continue
        g = mats[rng.randrange(48)]
        assert norm_sq(apply_matrix(g, v)) == norm_sq(v)
        assert is_orthogonal(v, w) == is_orthogonal(apply_matrix(g, v), apply_matrix(g, w))


# ---------------------------------------------------------------------------
# Height-bounded slices


def _enumerate_S_oracle(n_divisor, height):
    """Naive triple loop, entirely independent of enumerate_S internals."""
    out = set()
    for v in product(range(-height, height + 1), repeat=3):
        if v == (0, 0, 0):
            continue
        q = norm_sq(v)
        m = q
        for p in range(2, q + 1):
            if n_divisor % p == 0:
                while m % p == 0:
                    m //= p
        if m != 1:
            continue
        out.add(canonicalize(v))
    # keep only lines whose canonical representative fits the height bound
    return {v for v in out if max(abs(e) for e in v) <= height}


def test_enumerate_S_trivial():
    assert set(enumerate_S(1, 10)) == {(1, 0, 0), (0, 1, 0), (0, 0, 1)}


def test_enumerate_S_height_one():
    expected = {
        (1, 0, 0), (0, 1, 0), (0, 0, 1),
        (1, 1, 0), (1, 0, 1), (0, 1, 1),
        (1, -1, 0), (1, 0, -1), (0, 1, -1),
    }
    s = enumerate_S(2, 1)
    assert set(s) == expected
    assert set(s) == _enumerate_S_oracle(2, 1)


@pytest.mark.parametrize("n_divisor,height", [(2, 3), (6, 4), (30, 3), (462, 4)])
def test_enumerate_S_against_oracle(n_divisor, height):
    assert set(enumerate_S(n_divisor, height)) == _enumerate_S_oracle(n_divisor, height)


def test_enumerate_S_contains_Q():
    s = set(enumerate_S(462, 8))
    for v in build_Q():
        assert max(abs(e) for e in v) <= 8
        assert norm_sq(v) in {1, 2, 3, 6, 21, 33, 77}
        assert v in s


def test_enumerate_S_monotone_in_divisor():
    assert set(enumerate_S(6, 5)) <= set(enumerate_S(30, 5))
    assert set(enumerate_S(2, 5)) <= set(enumerate_S(462, 5))


def test_enumerate_S_rejects_bad_input():
    with pytest.raises(ValueError):
        enumerate_S(4, 5)
    with pytest.raises(ValueError):
        enumerate_S(6, 0)


# ---------------------------------------------------------------------------
# Set construction and files


def test_vector_set_merges_collinear():
    s = VectorSet.from_iterable([(2, 0, 0), (-1, 0, 0), (1, 0, 0), (0, 1, 0)])
    assert s.vectors == ((0, 1, 0), (1, 0, 0))


def test_vector_set_order_is_sorted():
    s = build_Q()
    assert list(s.vectors) == sorted(s.vectors)


def test_file_round_trip_bit_exact():
    s = enumerate_S(30, 4)
    text = format_vector_set(s)
    again = parse_vector_set(text)
    assert again == s
    assert format_vector_set(again) == text


def test_parse_reports_line_number():
    with pytest.raises(ValueError, match="line 3"):
        parse_vector_set("# name: x\n1 0 0\n1 0\n")
