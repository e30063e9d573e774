"""Cubical cell complexes of the hom-spaces of the W-construction.

A cell is a chain of composable morphism classes together with a set of
break positions.  Position ``k`` sits between ``chain[k-1]`` and
``chain[k]`` (diagrammatic order).  A break holds that coordinate at 1; the
remaining free coordinates span a cube, so

    dim = len(chain) - 1 - len(breaks).

The zero-face at a free position composes the two neighbouring entries, the
one-face adds the position to the breaks.  Vertices are cells whose every
internal position is a break, which is the same thing as a chain.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from .lattice import Lattice, MorphismClass
from .poset import FacePoset


@dataclass(frozen=True, order=True)
class Cell:
    chain: tuple
    breaks: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "breaks", tuple(sorted(set(self.breaks))))
        m = len(self.chain)
        if m == 0 or any(not 0 < b < m for b in self.breaks):
            raise ValueError(f"bad cell {self.chain} {self.breaks}")

    @property
    def length(self) -> int:
        return len(self.chain)

    @property
    def dim(self) -> int:
        return len(self.chain) - 1 - len(self.breaks)

    @property
    def free(self) -> tuple:
        return tuple(k for k in range(1, len(self.chain)) if k not in self.breaks)

    @property
    def is_vertex(self) -> bool:
        return self.dim == 0

    @property
    def composition_breaks(self) -> tuple:
        """Break positions counted in right-to-left composition order."""
        m = len(self.chain)
        return tuple(sorted(m - b for b in self.breaks))

    def parts(self) -> tuple:
        cuts = (0,) + self.breaks + (len(self.chain),)
        return tuple(self.chain[a:b] for a, b in zip(cuts, cuts[1:]))

    def is_indecomposable(self) -> bool:
        return sum(len(p) > 1 for p in self.parts()) <= 1

    def label(self, order: str = "diagrammatic") -> str:
        return cell_label(self, order)

    def __str__(self) -> str:
        return self.label()


def class_label(m: MorphismClass, order: str = "diagrammatic") -> str:
    rep = m.rep if order == "diagrammatic" else tuple(reversed(m.rep))
    return "".join(rep)


def cell_label(cell: Cell, order: str = "diagrammatic") -> str:
    """``(f1)(f2.f3)(f4)`` style label; ``order="composition"`` gives ``(f4)(f3∘f2)(f1)``.

    >>> lat = Lattice.free_chain(3)
    >>> cell = Cell(tuple(lat.generator(a) for a in ("f1", "f2", "f3")), (1,))
    >>> cell_label(cell), cell_label(cell, "composition")
    ('(f1)(f2.f3)', '(f3∘f2)(f1)')
    """
    if order == "diagrammatic":
        return "".join(
            "(" + ".".join(class_label(m) for m in part) + ")" for part in cell.parts()
        )
    if order != "composition":
        raise ValueError(f"unknown label order {order!r}")
    return "".join(
        "(" + "∘".join(class_label(m, order) for m in reversed(part)) + ")"
        for part in reversed(cell.parts())
    )


class HomComplex:
    """The cells of one hom-space, or a face-closed subcomplex of it."""

    def __init__(self, lattice: Lattice, source: str, target: str, cells: Iterable[Cell],
                 kind: str = "full"):
        self.lattice = lattice
        self.source = source
        self.target = target
        self.kind = kind
        self.cells = sorted(set(cells), key=lambda c: (c.dim, c))
        self._cellset = frozenset(self.cells)
        self._vertex_memo: dict = {}

    @property
    def is_total(self) -> bool:
        return self.source == self.lattice.init and self.target == self.lattice.fin

    def __len__(self) -> int:
        return len(self.cells)

    def __contains__(self, cell) -> bool:
        return cell in self._cellset

    def __iter__(self):
        return iter(self.cells)

    def of_dim(self, k: int) -> list:
        return [c for c in self.cells if c.dim == k]

    @property
    def dim(self) -> int:
        return max((c.dim for c in self.cells), default=-1)

    # -- faces -----------------------------------------------------------

    def zero_face(self, cell: Cell, k: int) -> Cell:
        if k not in cell.free:
            raise ValueError(f"position {k} is not free in {cell}")
        ch = cell.chain
        merged = self.lattice.concat(ch[k - 1], ch[k])
        return Cell(
            ch[:k - 1] + (merged,) + ch[k + 1:],
            tuple(b if b < k else b - 1 for b in cell.breaks),
        )

    def one_face(self, cell: Cell, k: int) -> Cell:
        if k not in cell.free:
            raise ValueError(f"position {k} is not free in {cell}")
        return Cell(cell.chain, cell.breaks + (k,))

    def faces(self, cell: Cell) -> list:
        """(kind, position, face) for every facet of ``cell``."""
        out = []
        for k in cell.free:
            out.append(("zero", k, self.zero_face(cell, k)))
            out.append(("one", k, self.one_face(cell, k)))
        return out

    def vertices_of(self, cell: Cell) -> frozenset:
        if cell not in self._vertex_memo:
            free = cell.free
            verts = set()
            for r in range(len(free) + 1):
                for ones in combinations(free, r):
                    cuts = (0,) + tuple(sorted(cell.breaks + ones)) + (cell.length,)
                    ch = tuple(
                        self.lattice.concat(*cell.chain[a:b]) for a, b in zip(cuts, cuts[1:])
                    )
                    verts.add(Cell(ch, tuple(range(1, len(ch)))))
            self._vertex_memo[cell] = frozenset(verts)
        return self._vertex_memo[cell]

    def augment(self, cell: Cell) -> MorphismClass:
        return self.lattice.concat(*cell.chain)

    @cached_property
    def _by_vertices(self) -> dict:
        return {self.vertices_of(c): c for c in self.cells}

    def cell_with_vertices(self, verts: Iterable[Cell]) -> Cell | None:
        return self._by_vertices.get(frozenset(verts))

    def face_poset(self) -> FacePoset:
        if "_poset" not in self.__dict__:
            facets = {c: [f for _, _, f in self.faces(c)] for c in self.cells}
            missing = [f for fs in facets.values() for f in fs if f not in self._cellset]
            if missing:
                raise ValueError(f"subcomplex is not face-closed, e.g. {missing[0]}")
            self.__dict__["_poset"] = FacePoset({c: c.dim for c in self.cells}, facets)
        return self.__dict__["_poset"]

    def restrict(self, cells: Iterable[Cell], kind: str) -> HomComplex:
        return HomComplex(self.lattice, self.source, self.target, cells, kind)

    def f_vector(self) -> tuple:
        counts = [0] * (self.dim + 1)
        for c in self.cells:
            counts[c.dim] += 1
        return tuple(counts)

    def euler(self) -> int:
        return sum((-1) ** k * n for k, n in enumerate(self.f_vector()))

    def label(self, cell: Cell, order: str = "diagrammatic") -> str:
        return cell_label(cell, order)

    def __repr__(self) -> str:
        return f"HomComplex({self.source}->{self.target}, {self.kind}, f={self.f_vector()})"


def build_hom_complex(lattice: Lattice, u: str | None = None, v: str | None = None) -> HomComplex:
    u = lattice.init if u is None else u
    v = lattice.fin if v is None else v
    cells = []
    for chain in lattice.enumerate_chains(u, v):
        internal = range(1, len(chain))
        for r in range(len(chain)):
            cells.extend(Cell(chain, s) for s in combinations(internal, r))
    return HomComplex(lattice, u, v, cells)


def basis_subcomplex(h: HomComplex) -> HomComplex:
    """Cells with at least one break; the whole complex off the (init, fin) pair."""
    if not h.is_total:
        return h.restrict(h.cells, "basis")
    return h.restrict((c for c in h.cells if c.breaks), "basis")


def skeleton(h: HomComplex, k: int) -> HomComplex:
    if k < 0:
        raise ValueError("skeleton dimension must be non-negative")
    return h.restrict((c for c in h.cells if c.dim <= k), f"skeleton{k}")


def f_vector(x) -> tuple:
    return tuple(x.f_vector())


def euler(x) -> int:
    return sum((-1) ** k * n for k, n in enumerate(f_vector(x)))


# -- points and the cone structure ------------------------------------------


@dataclass(frozen=True)
class PointRep:
    """A formal composite chain[0] o_t1 chain[1] o_t2 ... with exact t."""

    chain: tuple
    coords: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(Fraction(t) for t in self.coords))
        if len(self.coords) != len(self.chain) - 1:
            raise ValueError("need one coordinate per internal position")


@dataclass(frozen=True)
class Apex:
    def __repr__(self) -> str:
        return "APEX"


APEX = Apex()


def canonicalize_point(lattice: Lattice, p: PointRep) -> PointRep:
    """Compose away every zero coordinate."""
    if any(not 0 <= t <= 1 for t in p.coords):
        raise ValueError(f"coordinates must lie in [0, 1]: {p.coords}")
    chain, coords = [p.chain[0]], []
    for m, t in zip(p.chain[1:], p.coords):
        if t == 0:
            chain[-1] = lattice.concat(chain[-1], m)
        else:
            chain.append(m)
            coords.append(t)
    return PointRep(tuple(chain), tuple(coords))


def cone_beta(lattice: Lattice, p: PointRep):
    """Apex, or (s, basis point) with s the largest coordinate."""
    p = canonicalize_point(lattice, p)
    if not p.coords:
        return APEX
    s = max(p.coords)
    return s, PointRep(p.chain, tuple(t / s for t in p.coords))


def cone_alpha(lattice: Lattice, s, b: PointRep) -> PointRep:
    s = Fraction(s)
    if not 0 <= s <= 1:
        raise ValueError(f"cone parameter must lie in [0, 1]: {s}")
    if not b.coords or max(b.coords) != 1:
        raise ValueError("basis point must have largest coordinate 1")
    if s == 0:
        return PointRep((lattice.concat(*b.chain),))
    return canonicalize_point(lattice, PointRep(b.chain, tuple(s * t for t in b.coords)))


# -- quotients ---------------------------------------------------------------

BASEPOINT = "*"


@dataclass(frozen=True)
class Collapse:
    cell: Cell
    image: object  # representative cell or BASEPOINT
    from_dim: int
    to_dim: int


@dataclass
class QuotientComplex:
    base: HomComplex
    identification: dict
    surviving: tuple  # survivors per dimension
    collapse_log: tuple = ()
    collapsed: HomComplex | None = None
    vertex_classes: tuple = ()
    corner_classes: tuple = ()
    irregularities: tuple = ()
    _below: dict = field(default_factory=dict, repr=False)

    def f_vector(self) -> tuple:
        counts = [len(s) for s in self.surviving]
        while counts and counts[-1] == 0:
            counts.pop()
        return tuple(counts)

    def euler(self) -> int:
        return euler(self)

    @property
    def regular(self) -> bool:
        return not self.irregularities

    def face_poset(self) -> FacePoset:
        if self.collapsed is not None and self.collapsed.cells:
            raise ValueError("collapsing a subcomplex to a point is not a regular quotient")
        if self.irregularities:
            raise ValueError("quotient is not regular: " + "; ".join(self.irregularities))
        dims = {c: c.dim for layer in self.surviving for c in layer}
        return FacePoset.from_order(dims, self._below)

    def homology(self):
        from .homology import homology

        if self.collapsed is None:
            return homology(self.face_poset())
        if not self.collapsed.cells:
            return homology(self.base)
        rel = homology(self.base, self.collapsed)
        betti = (rel.betti[0] + 1,) + rel.betti[1:]
        return type(rel)(betti, rel.torsion)

    def reduced_betti(self) -> tuple:
        return self.homology().reduced()


def simplified_basis(h: HomComplex, lattice: Lattice | None = None) -> QuotientComplex:
    """The basis with every cell touching a null class collapsed to a point."""
    lattice = lattice or h.lattice
    basis = basis_subcomplex(h)
    null = [c for c in basis.cells if any(lattice.is_null(m) for m in c.chain)]
    nset = set(null)
    sub = basis.restrict(null, "null")
    ident = {c: (BASEPOINT if c in nset else c) for c in basis.cells}
    surviving = [[] for _ in range(basis.dim + 1)]
    for c in basis.cells:
        if c not in nset:
            surviving[c.dim].append(c)
    if null:
        surviving[0].append(BASEPOINT)
    log = tuple(Collapse(c, BASEPOINT, c.dim, 0) for c in null if c.dim > 0)
    return QuotientComplex(basis, ident, tuple(map(tuple, surviving)), log, collapsed=sub)


def _is_corner(lattice: Lattice, chain: tuple) -> bool:
    return all(any(len(p) == 1 for p in lattice.members(m)) for m in chain)


def strict_quotient(h: HomComplex, lattice: Lattice | None = None) -> QuotientComplex:
    """Identify vertices related by one strict relation and follow through to cells.

    A strict relation p = q with composite c identifies every vertex holding
    a coarsening of p or q as a contiguous run with the vertex where that
    run is replaced by c.  A cell maps to the set of its vertex classes;
    cells with equal images are identified, and a cell whose image is that
    of a lower-dimensional cell collapses onto it.  Anything that does not
    fit this pattern is listed in ``irregularities``.
    """
    lattice = lattice or h.lattice
    verts = h.of_dim(0)
    vset = set(verts)
    parent = {v: v for v in verts}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    patterns = []
    for rel in lattice.strict_relations:
        composite = lattice.class_of(rel.left)
        for side in rel.sides():
            n = len(side)
            for r in range(1, n):
                for cut in combinations(range(1, n), r):
                    bounds = (0,) + cut + (n,)
                    pat = tuple(lattice.class_of(side[a:b]) for a, b in zip(bounds, bounds[1:]))
                    patterns.append((pat, composite))
    for v in verts:
        ch = v.chain
        for pat, composite in patterns:
            n = len(pat)
            for i in range(len(ch) - n + 1):
                if ch[i:i + n] == pat:
                    new = ch[:i] + (composite,) + ch[i + n:]
                    w = Cell(new, tuple(range(1, len(new))))
                    if w in vset:
                        union(v, w)

    classes = defaultdict(set)
    for v in verts:
        classes[find(v)].add(v)
    vertex_classes = tuple(sorted((frozenset(c) for c in classes.values()), key=min))
    corner = tuple(
        cc for cc in (
            frozenset(v for v in c if _is_corner(lattice, v.chain)) for c in vertex_classes
        ) if cc
    )

    image = {c: frozenset(find(v) for v in h.vertices_of(c)) for c in h.cells}
    groups = defaultdict(list)
    for c in h.cells:
        groups[image[c]].append(c)
    ident, log, issues = {}, [], []
    surviving = [[] for _ in range(h.dim + 1)]
    for img, members in sorted(groups.items(), key=lambda kv: min(kv[1], key=lambda c: (c.dim, c))):
        low = min(c.dim for c in members)
        rep = min(c for c in members if c.dim == low)
        surviving[low].append(rep)
        for c in members:
            ident[c] = rep
            if c.dim > low:
                log.append(Collapse(c, rep, c.dim, low))
        if len(img) < low + 1:
            issues.append(f"{cell_label(rep)} of dimension {low} has only {len(img)} vertex classes")
    for img, members in groups.items():
        top = [c for c in members if c.dim == min(m.dim for m in members)]
        if len(top) > 1:
            shapes = {frozenset(image[f] for _, _, f in h.faces(c)) for c in top}
            if len(shapes) > 1:
                issues.append(
                    "identified cells with different boundaries: "
                    + ", ".join(cell_label(c) for c in top)
                )
    below = {}
    for rep in (c for layer in surviving for c in layer):
        below[rep] = set()
    poset = h.face_poset()
    for c in h.cells:
        rep = ident[c]
        below[rep].update(ident[f] for f in poset.below(c))
    changed = True
    while changed:
        changed = False
        for rep, bs in below.items():
            bs.discard(rep)
            extra = set().union(*(below[b] for b in bs)) - bs - {rep} if bs else set()
            if extra:
                bs |= extra
                changed = True
    for rep, bs in below.items():
        if any(b.dim >= rep.dim for b in bs):
            issues.append(f"{cell_label(rep)} lies below a cell of no larger dimension")
            break
    q = QuotientComplex(
        h, ident, tuple(map(tuple, surviving)), tuple(log),
        vertex_classes=vertex_classes, corner_classes=corner, irregularities=tuple(issues),
    )
    q._below = {k: frozenset(v) for k, v in below.items()}
    return q


# -- indecomposable cubes and obstruction pairs ------------------------------


def indecomposable_cubes(h: HomComplex, k: int, basis: bool = True) -> list:
    """k-cells with at most one part of length > 1.

    On the total complex the search runs over the basis unless ``basis`` is
    False.
    """
    if basis and h.is_total and h.kind == "full":
        h = basis_subcomplex(h)
    return [c for c in h.of_dim(k) if c.is_indecomposable()]


@dataclass(frozen=True, order=True)
class ObstructionPair:
    first: Cell
    second: Cell
    meet: Cell


def obstruction_pairs(h: HomComplex, cube_dim: int) -> list:
    """Pairs of indecomposable ``cube_dim``-cells of the basis meeting in a
    single cell of dimension ``cube_dim - 1``."""
    b = basis_subcomplex(h) if h.is_total and h.kind == "full" else h
    cubes = indecomposable_cubes(b, cube_dim, basis=False)
    out = []
    for x, y in combinations(cubes, 2):
        meet = b.cell_with_vertices(b.vertices_of(x) & b.vertices_of(y))
        if meet is not None and meet.dim == cube_dim - 1:
            out.append(ObstructionPair(min(x, y), max(x, y), meet))
    return sorted(out)
