"""The simplicial model of a hom-space.

An r-simplex is a chain together with an ordered partition (U1, ..., Ur)
of a subset of the chain's internal positions into nonempty blocks.  Faces:

* d0 composes the chain at every position of U1 and drops U1;
* dj for 0 < j < r merges Uj and Uj+1;
* dr drops Ur.

Only nondegenerate simplices are stored, so the chain complex is the
normalized one.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .homology import ChainComplex, HomologyResult, homology
from .lattice import Lattice
from .wcomplex import HomComplex


@dataclass(frozen=True, order=True)
class Simplex:
    chain: tuple
    blocks: tuple = ()  # tuple of sorted position tuples

    @property
    def dim(self) -> int:
        return len(self.blocks)


def ordered_set_partitions(items: Iterable[int]) -> list:
    items = tuple(items)
    if not items:
        return [()]
    out = []
    for r in range(1, len(items) + 1):
        for first in combinations(items, r):
            rest = tuple(x for x in items if x not in first)
            out.extend((first,) + tail for tail in ordered_set_partitions(rest))
    return out


class SimplicialModel:
    def __init__(self, lattice: Lattice, source: str, target: str):
        self.lattice = lattice
        self.source = source
        self.target = target
        simplices = []
        for chain in lattice.enumerate_chains(source, target):
            internal = range(1, len(chain))
            for r in range(len(chain)):
                for subset in combinations(internal, r):
                    simplices.extend(Simplex(chain, p) for p in ordered_set_partitions(subset))
        self.simplices = sorted(simplices, key=lambda s: (s.dim, s))
        self._index = {s: i for i, s in enumerate(self.simplices)}

    def __len__(self) -> int:
        return len(self.simplices)

    def __contains__(self, s) -> bool:
        return s in self._index

    def of_dim(self, k: int) -> list:
        return [s for s in self.simplices if s.dim == k]

    @property
    def dim(self) -> int:
        return max((s.dim for s in self.simplices), default=-1)

    def vertices(self) -> list:
        return self.of_dim(0)

    def face(self, s: Simplex, i: int) -> Simplex:
        r = s.dim
        if not 0 <= i <= r or r == 0:
            raise ValueError(f"no face d{i} of a {r}-simplex")
        if i == 0:
            cut = set(s.blocks[0])
            parts, current = [], [s.chain[0]]
            for k, m in enumerate(s.chain[1:], 1):
                if k in cut:
                    current.append(m)
                else:
                    parts.append(current)
                    current = [m]
            parts.append(current)
            chain = tuple(self.lattice.concat(*p) for p in parts)
            shift = lambda p: p - sum(q < p for q in cut)  # noqa: E731
            blocks = tuple(tuple(shift(p) for p in b) for b in s.blocks[1:])
            return Simplex(chain, blocks)
        if i == r:
            return Simplex(s.chain, s.blocks[:-1])
        merged = tuple(sorted(s.blocks[i - 1] + s.blocks[i]))
        return Simplex(s.chain, s.blocks[:i - 1] + (merged,) + s.blocks[i + 1:])

    def faces(self, s: Simplex) -> list:
        return [self.face(s, i) for i in range(s.dim + 1)] if s.dim else []

    def f_vector(self) -> tuple:
        counts = [0] * (self.dim + 1)
        for s in self.simplices:
            counts[s.dim] += 1
        return tuple(counts)

    def euler(self) -> int:
        return sum((-1) ** k * n for k, n in enumerate(self.f_vector()))

    def chain_complex(self) -> ChainComplex:
        layers = [self.of_dim(k) for k in range(self.dim + 1)]
        index = [{s: i for i, s in enumerate(layer)} for layer in layers]
        boundary = [[{} for _ in layers[0]]] if layers else []
        for k in range(1, len(layers)):
            cols = []
            for s in layers[k]:
                col: dict = {}
                for i, f in enumerate(self.faces(s)):
                    r = index[k - 1][f]
                    col[r] = col.get(r, 0) + (-1) ** i
                cols.append({r: v for r, v in col.items() if v})
            boundary.append(cols)
        return ChainComplex(tuple(layers), tuple(boundary))


def build_simplicial_hom(lattice: Lattice, u: str | None = None, v: str | None = None) -> SimplicialModel:
    return SimplicialModel(
        lattice, lattice.init if u is None else u, lattice.fin if v is None else v
    )


@dataclass(frozen=True)
class ModelComparison:
    cubical_euler: int
    simplicial_euler: int
    cubical_vertices: int
    simplicial_vertices: int
    cubical_homology: HomologyResult
    simplicial_homology: HomologyResult

    @property
    def differences(self) -> list:
        out = []
        if self.cubical_euler != self.simplicial_euler:
            out.append(f"euler {self.cubical_euler} != {self.simplicial_euler}")
        if self.cubical_vertices != self.simplicial_vertices:
            out.append(f"vertices {self.cubical_vertices} != {self.simplicial_vertices}")
        if (self.cubical_homology.betti, self.cubical_homology.torsion) != (
            self.simplicial_homology.betti, self.simplicial_homology.torsion
        ):
            out.append(
                f"homology {self.cubical_homology.betti} {self.cubical_homology.torsion} != "
                f"{self.simplicial_homology.betti} {self.simplicial_homology.torsion}"
            )
        return out

    @property
    def ok(self) -> bool:
        return not self.differences

    def __str__(self) -> str:
        if self.ok:
            return (f"models agree: euler {self.cubical_euler}, "
                    f"{self.cubical_vertices} vertices, betti {self.cubical_homology.betti}")
        return "models differ: " + "; ".join(self.differences)


def compare_models(h: HomComplex, s: SimplicialModel) -> ModelComparison:
    if (h.lattice, h.source, h.target) != (s.lattice, s.source, s.target):
        raise ValueError("models were built from different lattices or node pairs")
    return ModelComparison(
        h.euler(), s.euler(), len(h.of_dim(0)), len(s.vertices()), homology(h), homology(s)
    )
