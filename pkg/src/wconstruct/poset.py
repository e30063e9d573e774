"""Graded face posets shared by cell complexes and polytope families."""
from __future__ import annotations

from typing import Callable, Hashable, Iterable, Mapping


class FacePoset:
    """A finite graded poset given by dimensions and covering faces.

    ``facets[x]`` lists the faces of ``x`` one dimension down.  The strict
    down-set of an element is the transitive closure of that relation.
    """

    def __init__(
        self,
        dims: Mapping[Hashable, int],
        facets: Mapping[Hashable, Iterable[Hashable]],
        key: Callable | None = None,
        below: Mapping[Hashable, frozenset] | None = None,
    ):
        self.dim = dict(dims)
        self.facets = {x: tuple(facets.get(x, ())) for x in self.dim}
        self._key = key
        self._below = dict(below) if below is not None else {}
        self.elements = sorted(self.dim, key=self.sort_key)

    def sort_key(self, x):
        return (self.dim[x], self._key(x) if self._key else x)

    def __len__(self) -> int:
        return len(self.dim)

    def __contains__(self, x) -> bool:
        return x in self.dim

    def __iter__(self):
        return iter(self.elements)

    def below(self, x) -> frozenset:
        """Strict down-set of ``x``."""
        if x not in self._below:
            acc = set()
            for f in self.facets[x]:
                acc.add(f)
                acc |= self.below(f)
            self._below[x] = frozenset(acc)
        return self._below[x]

    def leq(self, x, y) -> bool:
        return x == y or x in self.below(y)

    def vertices(self, x) -> frozenset:
        if self.dim[x] == 0:
            return frozenset([x])
        return frozenset(v for v in self.below(x) if self.dim[v] == 0)

    def of_dim(self, k: int) -> list:
        return [x for x in self.elements if self.dim[x] == k]

    @property
    def top_dim(self) -> int:
        return max(self.dim.values(), default=-1)

    def f_vector(self) -> tuple:
        counts = [0] * (self.top_dim + 1)
        for d in self.dim.values():
            counts[d] += 1
        return tuple(counts)

    def euler(self) -> int:
        return sum((-1) ** k * c for k, c in enumerate(self.f_vector()))

    def is_closed(self, subset: Iterable) -> bool:
        subset = set(subset)
        return all(self.below(x) <= subset for x in subset)

    def restrict(self, subset: Iterable) -> FacePoset:
        keep = set(subset)
        return FacePoset(
            {x: self.dim[x] for x in keep},
            {x: [f for f in self.facets[x] if f in keep] for x in keep},
            key=self._key,
        )

    @classmethod
    def from_order(cls, dims: Mapping, below: Mapping, key: Callable | None = None) -> FacePoset:
        """Build from full strict down-sets; covering faces are derived."""
        facets = {
            x: [y for y in below[x] if dims[y] == dims[x] - 1] for x in dims
        }
        return cls(dims, facets, key=key, below={x: frozenset(below[x]) for x in dims})
