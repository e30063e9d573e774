import warnings
from itertools import permutations
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from wconstruct.families import (
    NonReducedWordWarning,
    associahedron_coordinates,
    associahedron_faces,
    bracketings,
    collapsed_faces,
    cube_faces,
    dword_of_partition,
    dword_of_permutation,
    family_quotient_check,
    flag_label,
    fubini,
    make_lattice,
    parse_builtin,
    parse_flag,
    partition_of_dword,
    perm_vertex_label,
    permutation_of_dword,
    permutohedron_coordinates,
    permutohedron_faces,
    simplex_faces,
    swap_dword,
    tonks_collapse,
)
from wconstruct.lattice import LatticeError


@pytest.mark.parametrize("n", range(5))
def test_permutohedron_fvector_against_stirling(n):
    assert permutohedron_faces(n).f_vector() == oracles.permutohedron_fvector(n)


@pytest.mark.parametrize("n", range(5))
def test_associahedron_fvector_against_dissections(n):
    assert associahedron_faces(n).f_vector() == oracles.associahedron_fvector(n)
    assert len(associahedron_faces(n).of_dim(0)) == comb(2 * n + 2, n + 1) // (n + 2)


def test_simplex_and_cube_fvectors():
    assert simplex_faces(3).f_vector() == (4, 6, 4, 1)
    assert cube_faces(3).f_vector() == (8, 12, 6, 1)


def test_fubini():
    assert [fubini(n) for n in range(7)] == [oracles.fubini(n) for n in range(7)]
    assert [fubini(n) for n in range(5)] == [1, 1, 3, 13, 75]


@pytest.mark.parametrize("n", range(5))
def test_dword_bijection(n):
    perms = list(permutations(range(n + 1)))
    words = {dword_of_permutation(p) for p in perms}
    assert len(words) == len(perms)
    assert all(0 <= i <= k for w in words for k, i in enumerate(w))
    for p in perms:
        assert dword_of_permutation(p) == oracles.lehmer_word(p)
        assert permutation_of_dword(dword_of_permutation(p)) == p
        op = tuple((x,) for x in p)
        assert partition_of_dword(dword_of_partition(op)) == op


@pytest.mark.parametrize("n", [2, 3])
def test_edges_are_swap_rewrites(n):
    poset = permutohedron_faces(n)
    for edge in poset.of_dim(1):
        a, b = sorted(poset.vertices(edge))
        wa, wb = dword_of_partition(a), dword_of_partition(b)
        p = next(i for i, block in enumerate(edge) if len(block) == 2)
        assert swap_dword(wa, p) == wb and swap_dword(wb, p) == wa


@given(st.integers(1, 4).flatmap(
    lambda n: st.tuples(st.just(n), st.lists(st.integers(0, n - 1), max_size=6))))
def test_perm_vertex_label_tracks_permutation(data):
    n, swaps = data
    perm = list(range(n + 1))
    for p in swaps:
        perm[p], perm[p + 1] = perm[p + 1], perm[p]
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", NonReducedWordWarning)
        word = perm_vertex_label(swaps, n)
    assert permutation_of_dword(word) == tuple(perm)


def test_perm_vertex_label_examples():
    assert perm_vertex_label([], 2) == (0, 1, 2)
    assert perm_vertex_label([1], 2) == (0, 1, 1)
    with pytest.warns(NonReducedWordWarning):
        assert perm_vertex_label([1, 1], 2) == (0, 1, 2)
    with pytest.raises(ValueError):
        perm_vertex_label([2], 2)


def test_coordinates():
    for n in range(4):
        coords = permutohedron_coordinates(n)
        assert len(coords) == oracles.fubini(n + 1) - sum(
            oracles.ordered_partition_counts(n + 1)[k] for k in range(1, n + 1))
        poset = permutohedron_faces(n)
        for edge in poset.of_dim(1):
            a, b = poset.vertices(edge)
            diff = sorted(abs(x - y) for x, y in zip(coords[a], coords[b]))
            assert diff[-2:] == [1, 1] and sum(diff) == 2
    for n in range(4):
        pts = associahedron_coordinates(n)
        assert len(set(pts.values())) == len(pts) == len(associahedron_faces(n).of_dim(0))
        assert len({sum(p) for p in pts.values()}) == 1


def test_flag_syntax():
    assert parse_flag("(0123,013,1)") == ((1,), (0, 3), (2,))
    assert flag_label(((1,), (0, 3), (2,))) == "(0123,013,1)"
    assert parse_flag("(012,02)") == ((0, 2), (1,))
    for op in permutohedron_faces(3).elements:
        assert parse_flag(flag_label(op)) == op
    for bad in ["(013,0)", "(0123,45)", "(a,b)", "(0123,011)"]:
        with pytest.raises(ValueError):
            parse_flag(bad)


@pytest.mark.parametrize("n", range(1, 5))
def test_tonks_is_surjective_and_order_preserving(n):
    pe, k = permutohedron_faces(n), associahedron_faces(n)
    image = tonks_collapse(n)
    assert set(image.values()) == set(k.elements)
    for x in pe.elements:
        for y in pe.below(x):
            assert k.leq(image[y], image[x])
        assert k.dim[image[x]] <= pe.dim[x]
    collapsed = {x for x in pe.elements if k.dim[image[x]] < pe.dim[x]}
    assert collapsed == set(collapsed_faces(n))


def test_bracketings_are_compatible_sets():
    assert bracketings(0) == [()]
    assert len(bracketings(2)) == 11


def test_builtin_parsing_and_limits():
    assert parse_builtin("chain:4").validate().ok
    assert parse_builtin("toda").name
    for bad in ["chain:0", "chain:99", "nope:2", "cosimplicial", "toda:3"]:
        with pytest.raises(LatticeError):
            parse_builtin(bad)
    with pytest.raises(LatticeError):
        make_lattice("cosimplicial", 2, "mapping-simplex")


@pytest.mark.parametrize("kind", ["chain:3", "cosimplicial:2", "powerset:2", "mapping:2",
                                  "toda", "whitehead"])
def test_builtins_validate(kind):
    assert parse_builtin(kind).validate().ok


def test_quotient_checks_beyond_acceptance():
    for kind, n, expected in [("simplex", 1, 2), ("cube", 1, 2), ("simplex", 3, 4),
                              ("mapping-simplex", 2, 4)]:
        check = family_quotient_check(kind, n)
        assert check.expected == expected
        assert len(check.classes) == expected, str(check)
    with pytest.raises(ValueError):
        family_quotient_check("torus", 2)
