"""Finite presented lattices and their morphism classes.

A lattice is a finite acyclic category given by generating arrows and
path relations.  Paths are tuples of arrow ids in diagrammatic order: the
first arrow applied comes first.  Morphisms are paths modulo the congruence
generated by the relations; each class is represented by its
lexicographically least path.

>>> lat = Lattice.free_chain(3)
>>> [str(m) for m in lat.morphism_classes("vinit", "vfin")]
['f1.f2.f3']
>>> len(lat.enumerate_chains("vinit", "vfin"))
4
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

Path = tuple  # tuple[str, ...] of arrow ids, diagrammatic order


class LatticeError(ValueError):
    """Structural error in a lattice presentation."""

    def __init__(self, message: str, location: str | None = None):
        self.location = location
        super().__init__(f"{location}: {message}" if location else message)


@dataclass(frozen=True)
class Arrow:
    id: str
    source: str
    target: str


@dataclass(frozen=True)
class Relation:
    """Two parallel paths declared equal, optionally marked strict."""

    left: tuple
    right: tuple
    strict: bool = False
    label: str | None = None

    def sides(self) -> tuple[tuple, tuple]:
        return self.left, self.right


@dataclass(frozen=True, order=True)
class MorphismClass:
    """A congruence class of paths, identified by its least path."""

    rep: tuple
    source: str = field(compare=False)
    target: str = field(compare=False)

    @property
    def id(self) -> str:
        return ".".join(self.rep)

    def __str__(self) -> str:
        return self.id

    def __len__(self) -> int:
        return len(self.rep)


Chain = tuple  # tuple[MorphismClass, ...] in diagrammatic order


@dataclass(frozen=True)
class Violation:
    kind: str  # "cycle" | "unreachable" | "coreachable" | "max-class" | "trivial"
    message: str
    witness: tuple = ()


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        if self.ok:
            return "ok"
        return "\n".join(f"{v.kind}: {v.message}" for v in self.violations)


@dataclass(frozen=True)
class Lattice:
    """A finite presented lattice.

    Construction checks structure (ids, endpoints, composability) and raises
    :class:`LatticeError`.  The semantic invariants are checked by
    :meth:`validate`, which never raises.
    """

    nodes: tuple
    init: str
    fin: str
    arrows: tuple  # tuple[Arrow, ...]
    relations: tuple = ()  # tuple[Relation, ...]
    nulls: tuple = ()  # tuple[Path, ...]
    name: str | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(self.nodes))
        object.__setattr__(self, "arrows", tuple(self.arrows))
        object.__setattr__(
            self,
            "relations",
            tuple(
                Relation(tuple(r.left), tuple(r.right), r.strict, r.label)
                for r in self.relations
            ),
        )
        object.__setattr__(self, "nulls", tuple(tuple(p) for p in self.nulls))
        self._check_structure()

    def _check_structure(self):
        seen = set()
        for v in self.nodes:
            if v in seen:
                raise LatticeError(f"duplicate node {v!r}", "nodes")
            seen.add(v)
        for end, v in (("init", self.init), ("fin", self.fin)):
            if v not in seen:
                raise LatticeError(f"unknown node {v!r}", end)
        ids = set()
        for a in self.arrows:
            where = f"arrow {a.id!r}"
            if a.id in ids:
                raise LatticeError("duplicate arrow id", where)
            ids.add(a.id)
            for v in (a.source, a.target):
                if v not in seen:
                    raise LatticeError(f"unknown node {v!r}", where)
        for i, rel in enumerate(self.relations, 1):
            where = f"relation {i}"
            ends = [self.path_ends(p, where) for p in rel.sides()]
            if ends[0] != ends[1]:
                raise LatticeError(
                    f"sides have different endpoints {ends[0]} and {ends[1]}", where
                )
        for i, p in enumerate(self.nulls, 1):
            self.path_ends(p, f"null mark {i}")

    def path_ends(self, path: Sequence[str], where: str | None = None) -> tuple:
        """Return (source, target) of a path, checking composability."""
        if not path:
            raise LatticeError("empty path", where)
        arrow = self.arrow_map
        prev = None
        for a in path:
            if a not in arrow:
                raise LatticeError(f"unknown arrow {a!r}", where)
            if prev is not None and arrow[prev].target != arrow[a].source:
                raise LatticeError(f"arrows {prev!r} and {a!r} are not composable", where)
            prev = a
        return arrow[path[0]].source, arrow[path[-1]].target

    @cached_property
    def arrow_map(self) -> dict:
        return {a.id: a for a in self.arrows}

    @cached_property
    def _out(self) -> dict:
        out = defaultdict(list)
        for a in self.arrows:
            out[a.source].append(a)
        return out

    @property
    def strict_relations(self) -> tuple:
        return tuple(r for r in self.relations if r.strict)

    def with_strict(self, flags: Iterable[bool]) -> Lattice:
        rels = [
            Relation(r.left, r.right, bool(s), r.label)
            for r, s in zip(self.relations, flags, strict=True)
        ]
        return Lattice(self.nodes, self.init, self.fin, self.arrows, rels, self.nulls, self.name)

    def with_nulls(self, nulls: Iterable[Sequence[str]]) -> Lattice:
        return Lattice(
            self.nodes, self.init, self.fin, self.arrows, self.relations,
            tuple(tuple(p) for p in nulls), self.name,
        )

    # -- graph structure -------------------------------------------------

    def find_cycle(self) -> tuple | None:
        """Return a cycle of nodes (first node repeated at the end) or None."""
        color = dict.fromkeys(self.nodes, 0)
        stack_path: list = []

        def visit(v):
            color[v] = 1
            stack_path.append(v)
            for a in self._out.get(v, ()):
                w = a.target
                if color[w] == 1:
                    i = stack_path.index(w)
                    return tuple(stack_path[i:]) + (w,)
                if color[w] == 0:
                    found = visit(w)
                    if found:
                        return found
            stack_path.pop()
            color[v] = 2
            return None

        for v in self.nodes:
            if color[v] == 0:
                found = visit(v)
                if found:
                    return found
        return None

    @cached_property
    def is_acyclic(self) -> bool:
        return self.find_cycle() is None

    def _require_acyclic(self):
        if not self.is_acyclic:
            raise LatticeError(f"arrow graph has a cycle {self.find_cycle()}")

    def _reach(self, start: str, forward: bool = True) -> set:
        adj = defaultdict(list)
        for a in self.arrows:
            if forward:
                adj[a.source].append(a.target)
            else:
                adj[a.target].append(a.source)
        seen, todo = set(), [start]
        while todo:
            v = todo.pop()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    todo.append(w)
        return seen

    # -- paths and congruence --------------------------------------------

    @cached_property
    def _paths(self) -> dict:
        """All paths, keyed by (source, target)."""
        self._require_acyclic()
        from_node: dict = {}

        def paths_from(v):
            if v not in from_node:
                acc = []
                for a in self._out.get(v, ()):
                    acc.append((a.target, (a.id,)))
                    acc.extend((w, (a.id,) + p) for w, p in paths_from(a.target))
                from_node[v] = acc
            return from_node[v]

        table = defaultdict(list)
        for v in self.nodes:
            for w, p in paths_from(v):
                table[v, w].append(p)
        return table

    @cached_property
    def _class_of_path(self) -> dict:
        parent: dict = {}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for paths in self._paths.values():
            for p in paths:
                parent[p] = p
        pairs = [(r.left, r.right) for r in self.relations]
        pairs += [(r.right, r.left) for r in self.relations]
        for paths in self._paths.values():
            for p in paths:
                for lhs, rhs in pairs:
                    n = len(lhs)
                    for i in range(len(p) - n + 1):
                        if p[i:i + n] == lhs:
                            q = p[:i] + rhs + p[i + n:]
                            ra, rb = find(p), find(q)
                            if ra != rb:
                                parent[max(ra, rb)] = min(ra, rb)
        groups = defaultdict(list)
        for p in parent:
            groups[find(p)].append(p)
        table = {}
        for members in groups.values():
            rep = min(members)
            src, tgt = self.path_ends(rep)
            m = MorphismClass(rep, src, tgt)
            for p in members:
                table[p] = m
        return table

    def paths(self, u: str, v: str) -> list:
        return sorted(self._paths.get((u, v), ()))

    def class_of(self, path: Sequence[str]) -> MorphismClass:
        path = tuple(path)
        try:
            return self._class_of_path[path]
        except KeyError:
            self.path_ends(path)
            raise LatticeError(f"not a path: {path}") from None

    def members(self, m: MorphismClass) -> list:
        """All paths in the class of ``m``."""
        return [p for p in self.paths(m.source, m.target) if self._class_of_path[p] == m]

    @cached_property
    def _classes(self) -> dict:
        table = defaultdict(set)
        for m in self._class_of_path.values():
            table[m.source, m.target].add(m)
        return {k: sorted(v) for k, v in table.items()}

    def morphism_classes(self, u: str, v: str) -> list:
        """Classes of paths u -> v, sorted by representative."""
        return list(self._classes.get((u, v), ()))

    def concat(self, *classes: MorphismClass) -> MorphismClass:
        """Compose classes given in diagrammatic order."""
        path: tuple = ()
        for m in classes:
            if path and self.arrow_map[path[-1]].target != m.source:
                raise LatticeError(f"classes {path} and {m} are not composable")
            path += m.rep
        if not path:
            raise LatticeError("nothing to compose")
        return self.class_of(path)

    def compose(self, outer: MorphismClass, inner: MorphismClass) -> MorphismClass:
        """``outer`` after ``inner``: the path of ``inner`` runs first."""
        return self.concat(inner, outer)

    def generator(self, arrow_id: str) -> MorphismClass:
        return self.class_of((arrow_id,))

    # -- chains ----------------------------------------------------------

    @cached_property
    def _out_classes(self) -> dict:
        out = defaultdict(list)
        for (u, _), ms in self._classes.items():
            out[u].extend(ms)
        return out

    def _chains(self, u: str, v: str) -> list:
        memo = self.__dict__.setdefault("_chain_memo", {})
        if (u, v) not in memo:
            acc = []
            for m in self._out_classes.get(u, ()):
                if m.target == v:
                    acc.append((m,))
                else:
                    acc.extend((m,) + rest for rest in self._chains(m.target, v))
            memo[u, v] = acc
        return memo[u, v]

    def enumerate_chains(self, u: str, v: str, length: int | None = None) -> list:
        """All chains of composable classes from u to v, sorted."""
        chains = self._chains(u, v)
        if length is not None:
            chains = [c for c in chains if len(c) == length]
        return sorted(chains)

    # -- null marks ------------------------------------------------------

    @cached_property
    def null_classes(self) -> frozenset:
        return frozenset(self.class_of(p) for p in self.nulls)

    def is_null(self, m: MorphismClass) -> bool:
        """True iff some path of ``m`` contains a subpath in a null class."""
        if not self.null_classes:
            return False
        memo = self.__dict__.setdefault("_null_memo", {})
        if m not in memo:
            memo[m] = any(
                self._class_of_path[p[i:j]] in self.null_classes
                for p in self.members(m)
                for i in range(len(p))
                for j in range(i + 1, len(p) + 1)
            )
        return memo[m]

    # -- validation ------------------------------------------------------

    def validate(self) -> ValidationReport:
        out = []
        cycle = self.find_cycle()
        if cycle:
            out.append(Violation("cycle", "arrow graph has cycle " + " -> ".join(cycle), cycle))
        fwd, back = self._reach(self.init), self._reach(self.fin, forward=False)
        for v in self.nodes:
            if v != self.init and v not in fwd:
                out.append(Violation("unreachable", f"node {v!r} is not reachable from init", (v,)))
            if v != self.fin and v not in back:
                out.append(Violation("coreachable", f"node {v!r} does not reach fin", (v,)))
        if not cycle:
            classes = self.morphism_classes(self.init, self.fin)
            if len(classes) != 1:
                out.append(Violation(
                    "max-class",
                    f"{len(classes)} morphism classes from init to fin, expected 1: "
                    + ", ".join(map(str, classes)),
                    tuple(classes),
                ))
        if not set(self.nodes) - {self.init, self.fin}:
            out.append(Violation("trivial", "no node besides init and fin"))
        return ValidationReport(tuple(out))

    # -- constructors ----------------------------------------------------

    @classmethod
    def free_chain(cls, n: int) -> Lattice:
        """The lattice of n composable arrows f1, ..., fn (f1 applied first)."""
        if n < 1:
            raise LatticeError("chain length must be at least 1")
        nodes = ["vinit"] + [f"v{i}" for i in range(1, n)] + ["vfin"]
        arrows = [Arrow(f"f{i + 1}", nodes[i], nodes[i + 1]) for i in range(n)]
        return cls(tuple(nodes), "vinit", "vfin", tuple(arrows), name=f"chain:{n}")

