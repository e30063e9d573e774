"""The fifteen acceptance criteria, one test each.

Every test's first docstring line is echoed with PASS/FAIL in the terminal
summary.  Run ``python3 tests/test_acceptance.py`` for the same lines without
pytest's other output.
"""
from __future__ import annotations

import random
import sys
from fractions import Fraction
from functools import lru_cache
from pathlib import Path

from hypothesis import given, settings
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).resolve().parent))

import oracles  # noqa: E402
from conftest import FIXTURES, load_fixture  # noqa: E402
from wconstruct.dsl import parse_lattice, print_lattice, read_lattice  # noqa: E402
from wconstruct.families import (  # noqa: E402
    associahedron_faces,
    collapsed_faces,
    dword_of_partition,
    family_quotient_check,
    parse_builtin,
    parse_flag,
    perm_vertex_label,
    permutohedron_coordinates,
    permutohedron_faces,
    tonks_collapse,
)
from wconstruct.homology import (  # noqa: E402
    homology,
    order_complex,
    simplicial_chain_complex,
    smith_normal_form,
)
from wconstruct.triangulation import build_simplicial_hom, compare_models  # noqa: E402
from wconstruct.wcomplex import (  # noqa: E402
    APEX,
    PointRep,
    basis_subcomplex,
    build_hom_complex,
    canonicalize_point,
    cone_alpha,
    cone_beta,
    obstruction_pairs,
    simplified_basis,
)

BUILTINS = (
    [f"chain:{n}" for n in range(2, 6)]
    + [f"cosimplicial:{n}" for n in range(1, 4)]
    + [f"powerset:{n}" for n in range(1, 4)]
    + [f"mapping:{n}" for n in range(1, 3)]
    + ["toda", "whitehead"]
)


@lru_cache(maxsize=None)
def total(name: str):
    return build_hom_complex(parse_builtin(name))


def labels(cells, order="composition"):
    return sorted(c.label(order) for c in cells)


def test_ac01_square():
    """AC-01 L3 square: f-vector (4,4,1), the four vertex chains, basis = top and right edges"""
    h = build_hom_complex(load_fixture("l3.lat"))
    assert h.f_vector() == (4, 4, 1)
    assert labels(h.of_dim(0)) == sorted(["(fg)(h)", "(f)(g)(h)", "(f)(gh)", "(fgh)"])
    b = basis_subcomplex(h)
    assert labels(b.of_dim(1)) == sorted(["(f∘g)(h)", "(f)(g∘h)"])
    assert b.f_vector() == (3, 2)


def test_ac02_cube():
    """AC-02 L4 cube (8,12,6,1); basis (7,9,3) with its three 2-cells"""
    h = build_hom_complex(load_fixture("l4.lat"))
    assert h.f_vector() == (8, 12, 6, 1)
    b = basis_subcomplex(h)
    assert b.f_vector() == (7, 9, 3)
    assert labels(b.of_dim(2)) == sorted(["(f∘g∘h)(k)", "(f)(g∘h∘k)", "(f∘g)(h∘k)"])


def test_ac03_cone_property():
    """AC-03 every built-in total complex is acyclic with Euler characteristic 1"""
    for name in BUILTINS:
        h = total(name)
        hom = homology(h)
        assert hom.reduced() == (0,) * len(hom.betti), name
        assert not any(hom.torsion), name
        assert h.euler() == 1, name


def _random_point(rng: random.Random, lat, chains) -> PointRep:
    chain = rng.choice(chains)
    pool = [Fraction(0), Fraction(1)] + [
        Fraction(rng.randint(1, 29), 30) for _ in range(3)
    ]
    return PointRep(chain, tuple(rng.choice(pool) for _ in chain[1:]))


def test_ac04_cone_round_trip():
    """AC-04 alpha(beta(p)) = p on 100+ random rational points per lattice; beta(0) is the apex"""
    rng = random.Random(20261016)
    for name in BUILTINS:
        lat = parse_builtin(name)
        chains = lat.enumerate_chains(lat.init, lat.fin)
        for _ in range(120):
            p = canonicalize_point(lat, _random_point(rng, lat, chains))
            image = cone_beta(lat, p)
            if image is APEX:
                assert not p.coords
                continue
            s, b = image
            assert max(b.coords) == 1
            assert cone_alpha(lat, s, b) == p, (name, p)
        longest = max(chains, key=len)
        zero = PointRep(longest, (0,) * (len(longest) - 1))
        assert cone_beta(lat, zero) is APEX, name


def test_ac05_two_sphere():
    """AC-05 simplified basis of L4 with nulls fg, gh, hk has reduced Betti (0,0,1)"""
    q = simplified_basis(build_hom_complex(load_fixture("l4_null.lat")))
    assert q.reduced_betti() == (0, 0, 1)


def test_ac06_toda():
    """AC-06 Toda: one class X->W, f-vector (4,4,1), simplified basis Betti (1,1)"""
    lat = load_fixture("toda.lat")
    assert len(lat.morphism_classes("X", "W")) == 1
    h = build_hom_complex(lat)
    assert h.f_vector() == (4, 4, 1)
    assert simplified_basis(h).homology().betti == (1, 1)


def test_ac07_obstruction_pair():
    """AC-07 L4 at cube dimension 2: one obstruction pair meeting in (f)(g∘h)(k)"""
    pairs = obstruction_pairs(build_hom_complex(load_fixture("l4.lat")), 2)
    assert len(pairs) == 1
    assert pairs[0].meet.label("composition") == "(f)(g∘h)(k)"


def test_ac08_cosimplicial_census():
    """AC-08 cosimplicial vertex counts are Fubini 3, 13, 75; n=2 has six 2-cells"""
    counts = [len(total(f"cosimplicial:{n}").of_dim(0)) for n in (1, 2, 3)]
    assert counts == [3, 13, 75]
    assert counts == [oracles.fubini(n + 1) for n in (1, 2, 3)]
    assert len(total("cosimplicial:2").of_dim(2)) == 6


def test_ac09_powerset_matches_cosimplicial():
    """AC-09 powerset and cosimplicial complexes share f-vectors for n <= 3"""
    for n in (1, 2, 3):
        assert total(f"powerset:{n}").f_vector() == total(f"cosimplicial:{n}").f_vector()


FIG6 = {
    "(012,01,1)": (0, 0, 2),
    "(012,12,1)": (0, 1, 0),
    "(012,12,2)": (0, 0, 0),
    "(012,02,2)": (0, 0, 1),
    "(012,02,0)": (0, 1, 1),
    "(012,01,0)": (0, 1, 2),
}


def test_ac10_permutohedron():
    """AC-10 permutohedra f-vectors for n=0..3, permutation coordinates, hexagon vertex words"""
    expected = [(1,), (2, 1), (6, 6, 1), (24, 36, 14, 1)]
    assert [permutohedron_faces(n).f_vector() for n in range(4)] == expected
    for n in range(4):
        for point in permutohedron_coordinates(n).values():
            assert sorted(point) == list(range(n + 1))
    words = {flag: dword_of_partition(parse_flag(flag)) for flag in FIG6}
    assert words == FIG6
    # the swap-rewrite labels hit the same six words, each exactly once
    reduced = [(), (0,), (1,), (0, 1), (1, 0), (0, 1, 0)]
    assert sorted(perm_vertex_label(w, 2) for w in reduced) == sorted(FIG6.values())


def test_ac11_strict_quotients():
    """AC-11 strict quotients: simplex 3 classes, cube 4, mapping-simplex 3 of sizes {3,2,1}"""
    simplex = family_quotient_check("simplex", 2)
    assert simplex.classes == [["000", "001"], ["002", "010"], ["011", "012"]]
    assert len(family_quotient_check("cube", 2).classes) == 4
    mapping = family_quotient_check("mapping-simplex", 1)
    assert sorted(len(c) for c in mapping.classes) == [1, 2, 3]
    assert mapping.classes == [
        ["d0d0f1", "d0d1f1", "d0f0d0"], ["d0f0d1"], ["f-1d0d0", "f-1d0d1"],
    ]


TONKS_EDGES = [
    "(0123,012,02)", "(0123,023,02)", "(0123,023,03)", "(0123,013,03)", "(0123,023,2)",
    "(0123,023,3)", "(0123,123,13)", "(0123,013,13)", "(0123,013,1)", "(0123,013,0)",
]
TONKS_SQUARES = ["(0123,13)", "(0123,013)", "(0123,02)", "(0123,03)", "(0123,023)"]


def _image_fvector(n: int) -> tuple:
    image = set(tonks_collapse(n).values())
    return tuple(sum(1 for b in image if n - len(b) == d) for d in range(n + 1))


def test_ac12_tonks():
    """AC-12 Tonks collapse: pentagon for n=2; ten edges and five 2-faces for n=3"""
    assert collapsed_faces(2) == [parse_flag("(012,02)")]
    assert _image_fvector(2) == (5, 5, 1)
    collapsed = set(collapsed_faces(3))
    edges = {f for f in collapsed if len(f) == 3}
    squares = {f for f in collapsed if len(f) == 2}
    assert edges == {parse_flag(x) for x in TONKS_EDGES}
    assert squares == {parse_flag(x) for x in TONKS_SQUARES}
    image = tonks_collapse(3)
    assert all(3 - len(image[f]) == 1 for f in squares)
    assert _image_fvector(3) == (14, 21, 9, 1) == oracles.associahedron_fvector(3)


def test_ac13_simplicial_model():
    """AC-13 simplicial model: L3 gives (4,5,2); homology agrees with the cubes everywhere"""
    assert build_simplicial_hom(load_fixture("l3.lat")).f_vector() == (4, 5, 2)
    for name in BUILTINS:
        lat = parse_builtin(name)
        cmp = compare_models(total(name), build_simplicial_hom(lat))
        assert cmp.ok, (name, cmp.differences)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.lists(st.integers(-9, 9), min_size=4, max_size=4), min_size=4, max_size=4))
def _snf_agrees(matrix):
    diag, rank = smith_normal_form(matrix)
    expected = oracles.invariant_factors(matrix)
    assert tuple(d for d in diag if d) == expected
    assert rank == len(expected)


def test_ac14_smith_normal_form():
    """AC-14 Smith normal form matches determinantal divisors; boundary squares to zero"""
    _snf_agrees()
    for name in BUILTINS:
        h = total(name)
        assert simplicial_chain_complex(order_complex(h.face_poset())).check_d_squared(), name
        assert build_simplicial_hom(h.lattice).chain_complex().check_d_squared(), name
    for poset in (permutohedron_faces(3), associahedron_faces(3)):
        assert simplicial_chain_complex(order_complex(poset)).check_d_squared()


BAD = {
    "bad_unknown_node.lat": [6],
    "bad_dangling_rel.lat": [9],
    "bad_duplicate.lat": [7, 9],
}


def test_ac15_parser():
    """AC-15 parser round trip is stable on every fixture; bad fixtures report the right lines"""
    good = sorted(p for p in FIXTURES.glob("*.lat") if not p.name.startswith("bad_"))
    assert len(good) >= 12
    for path in good:
        first = read_lattice(path)
        assert first.lattice is not None, path.name
        text = print_lattice(first.lattice)
        second = parse_lattice(text)
        assert second.lattice == first.lattice, path.name
        assert print_lattice(second.lattice) == text, path.name
    for name, lines in BAD.items():
        result = read_lattice(FIXTURES / name)
        assert not result.ok
        assert sorted(d.span.line for d in result.errors) == lines, name


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_ac") and callable(fn):
            title = fn.__doc__.strip().splitlines()[0]
            try:
                fn()
            except Exception as exc:  # report and keep going
                failed += 1
                print(f"FAIL  {title}  ({type(exc).__name__}: {exc})")
            else:
                print(f"PASS  {title}")
    sys.exit(1 if failed else 0)
