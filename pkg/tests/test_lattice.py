import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from k3lat.lattice import (EnumerationTooLarge, IntegerLattice, LatticeError, build_named, count_vectors_of_norm,
                           determinant, direct_sum, enumerate_vectors_of_norm, norm, orthogonal_blocks,
                           pairing, parse_construct, rank_zero, signature, twist)
from oracles import brute_force_vectors, float_signature, sympy_det


def test_build_named_u():
    u = build_named("U")
    assert u.rank == 2
    assert u.gram == ((0, 1), (1, 0))


def test_build_named_minus_two():
    assert build_named("MINUS_TWO").gram == ((-2,),)


def test_e8_minus_even_unimodular_negative_definite():
    e = build_named("E8_MINUS")
    assert e.is_even
    assert determinant(e) == sympy_det(e.gram) == 1
    assert signature(e).as_tuple() == (0, 8, 0)
    assert float_signature(e.gram) == (0, 8, 0)


def test_e8_determinant_matches_oracle():
    e8 = build_named("E8")
    assert determinant(e8) == sympy_det(e8.gram) == 1


def test_unknown_name_names_token():
    with pytest.raises(LatticeError, match="D4"):
        build_named("D4")


def test_k3_lattice(k3_lattice):
    assert k3_lattice.rank == 22
    assert signature(k3_lattice).as_tuple() == (3, 19, 0)
    assert abs(determinant(k3_lattice)) == 1
    assert k3_lattice.is_even


def test_rank_zero_is_identity_of_sum(U2E8):
    assert direct_sum(U2E8, rank_zero()) == U2E8
    assert direct_sum(rank_zero(), U2E8) == U2E8


def test_u_plus_minus_two_det():
    lat = direct_sum(build_named("U"), build_named("MINUS_TWO"))
    assert lat.rank == 3
    assert determinant(lat) == sympy_det(lat.gram) == 2


def test_twist():
    e8 = build_named("E8")
    assert twist(e8, -1) == build_named("E8_MINUS")
    assert twist(e8, 1) == e8
    e8m2 = twist(build_named("E8_MINUS"), 2)
    assert all(x % 2 == 0 for row in e8m2.gram for x in row)
    u2 = twist(build_named("U"), 2)
    assert u2.gram == ((0, 2), (2, 0))
    assert determinant(u2) == -4
    with pytest.raises(LatticeError):
        twist(e8, 0)


def test_pairing_examples(U):
    assert pairing(U, (1, 0), (0, 1)) == 1
    assert norm(U, (1, -1)) == -2
    assert norm(build_named("MINUS_TWO"), (1,)) == -2
    with pytest.raises(LatticeError):
        pairing(U, (1, 0, 0), (0, 1))


def test_signature_examples(U):
    assert signature(U).as_tuple() == (1, 1, 0)
    assert signature(parse_construct("U+U+U+U+E8(-1)+E8(-1)")).as_tuple() == (4, 20, 0)


def test_signature_degenerate():
    lat = IntegerLattice(((0, 0), (0, 2)))
    assert signature(lat).as_tuple() == (1, 0, 1)


def test_parse_construct_grammar():
    assert parse_construct("U") == build_named("U")
    assert parse_construct("E8(-1)") == build_named("E8_MINUS")
    assert parse_construct("<-2>") == build_named("MINUS_TWO")
    assert parse_construct("U(2)").gram == ((0, 2), (2, 0))
    assert parse_construct(" <4> + E8(-2) ").rank == 9
    with pytest.raises(LatticeError, match="X7"):
        parse_construct("U+X7")


def test_enumerate_u():
    u = build_named("U")
    assert enumerate_vectors_of_norm(u, -2, 3) == [(-1, 1), (1, -1)]
    assert enumerate_vectors_of_norm(u, -2, 3) == brute_force_vectors(u.gram, -2, 3)
    assert enumerate_vectors_of_norm(u, -2, 1) == [(-1, 1), (1, -1)]


def test_enumerate_definite_empty():
    assert enumerate_vectors_of_norm(build_named("MINUS_TWO"), 2, 5) == []


@pytest.mark.parametrize("text,target,bound", [
    ("U+<-2>", -2, 3),
    ("U+<-2>", 0, 2),
    ("U(2)+<4>", 4, 2),
    ("<2>+<-2>+U", -2, 2),
])
def test_enumerate_matches_brute_force(text, target, bound):
    lat = parse_construct(text)
    got = enumerate_vectors_of_norm(lat, target, bound)
    assert got == brute_force_vectors(lat.gram, target, bound)
    assert count_vectors_of_norm(lat, target, bound) == len(got)


def test_enumerate_interleaved_blocks():
    # blocks {0, 2} and {1, 3}: a permuted U + U
    lat = IntegerLattice(((0, 0, 1, 0), (0, 0, 0, 1), (1, 0, 0, 0), (0, 1, 0, 0)))
    assert orthogonal_blocks(lat) == [[0, 2], [1, 3]]
    assert enumerate_vectors_of_norm(lat, -2, 2) == brute_force_vectors(lat.gram, -2, 2)


def test_enumerate_e8_roots_in_box():
    e8 = build_named("E8")
    roots = enumerate_vectors_of_norm(e8, 2, 3)
    # all 240 roots have Cartan-basis coordinates bounded by the highest root's, which is 6
    assert len(roots) <= 240
    assert roots == sorted(roots)


def test_enumerate_limit():
    lat = parse_construct("U+U+E8(-1)")
    with pytest.raises(EnumerationTooLarge) as info:
        enumerate_vectors_of_norm(lat, -2, 2, limit=1000)
    assert info.value.count == count_vectors_of_norm(lat, -2, 2)


def test_enumerate_box_cap():
    with pytest.raises(EnumerationTooLarge):
        enumerate_vectors_of_norm(build_named("E8"), 2, 10)


def test_enumerate_properties(U2E8, U2E8_roots):
    assert U2E8_roots == sorted(U2E8_roots)
    assert set(U2E8_roots) == {tuple(-x for x in v) for v in U2E8_roots}
    assert all(norm(U2E8, v) == -2 for v in U2E8_roots)
    assert all(max(abs(x) for x in v) <= 1 for v in U2E8_roots)


def test_non_symmetric_gram_rejected():
    with pytest.raises(LatticeError):
        IntegerLattice(((0, 1), (2, 0)))


small_grams = st.integers(1, 4).flatmap(
    lambda n: st.lists(st.integers(-4, 4), min_size=n * (n + 1) // 2, max_size=n * (n + 1) // 2).map(
        lambda xs: _sym(n, xs)))


def _sym(n, xs):
    g = [[0] * n for _ in range(n)]
    it = iter(xs)
    for i in range(n):
        for j in range(i, n):
            g[i][j] = g[j][i] = next(it)
    return IntegerLattice(g)


@given(small_grams, st.lists(st.integers(-5, 5), min_size=4, max_size=4),
       st.lists(st.integers(-5, 5), min_size=4, max_size=4))
def test_pairing_symmetric(lat, v, w):
    v, w = v[:lat.rank], w[:lat.rank]
    assert pairing(lat, v, w) == pairing(lat, w, v)


@given(small_grams)
def test_signature_properties(lat):
    sig = signature(lat)
    assert sum(sig.as_tuple()) == lat.rank
    assert sig.as_tuple() == float_signature(lat.gram)
    neg = signature(twist(lat, -1))
    assert (neg.positive, neg.negative, neg.null) == (sig.negative, sig.positive, sig.null)


@given(small_grams, small_grams)
def test_determinant_multiplicative(a, b):
    assert determinant(direct_sum(a, b)) == determinant(a) * determinant(b)
    assert determinant(a) == sympy_det(a.gram)


@settings(max_examples=30)
@given(small_grams.filter(lambda lat: lat.is_even), st.sampled_from([-4, -2, 0, 2]))
def test_even_lattice_enumeration(lat, target):
    vecs = enumerate_vectors_of_norm(lat, target, 2)
    assert vecs == brute_force_vectors(lat.gram, target, 2)
    assert all(norm(lat, v) % 2 == 0 for v in vecs)
