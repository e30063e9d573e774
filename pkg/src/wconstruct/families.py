"""Built-in lattices and the polytope families they are compared against.

Permutohedron faces are ordered partitions of ``{0..n}``, blocks listed in
the order their elements get added back when a flag of subsets
``[n] = F0 > F1 > ...`` is read from the smallest set up.  The flag label
``(012,02)`` is therefore the face ``({0,2},{1})``.

Associahedron faces are sets of brackets on a word of ``n+2`` letters;
a bracket is a closed interval ``(i, j)`` of letter positions.
"""
from __future__ import annotations

import re
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations, product
from math import factorial

from .lattice import Arrow, Lattice, LatticeError, Relation
from .poset import FacePoset

MAX_N = {"chain": 8, "cosimplicial": 4, "powerset": 4, "mapping": 3}
KINDS = ("chain", "cosimplicial", "powerset", "mapping", "toda", "whitehead")
PRESETS = ("simplex", "cube", "mapping-simplex")


# -- lattices ----------------------------------------------------------------


def make_lattice(kind: str, n: int | None = None, preset: str | None = None) -> Lattice:
    """Build a named lattice.

    ``preset`` marks relations strict for the family quotient checks:
    ``simplex`` and ``cube`` apply to ``cosimplicial``, ``mapping-simplex``
    to ``mapping``.
    """
    if kind not in KINDS:
        raise LatticeError(f"unknown lattice kind {kind!r}; expected one of {', '.join(KINDS)}")
    if kind in ("toda", "whitehead"):
        if preset:
            raise LatticeError(f"{kind} has no strict presets")
        if n is not None:
            raise LatticeError(f"{kind} takes no size")
        return toda_lattice() if kind == "toda" else whitehead_lattice()
    if n is None:
        raise LatticeError(f"{kind} needs a size")
    low = 0 if kind == "mapping" else (2 if kind == "chain" else 1)
    if not low <= n <= MAX_N[kind]:
        raise LatticeError(f"{kind} size must be between {low} and {MAX_N[kind]}, got {n}")
    if kind == "chain":
        if preset:
            raise LatticeError("chain lattices have no relations to mark strict")
        return Lattice.free_chain(n)
    if kind == "powerset":
        if preset:
            raise LatticeError("powerset lattices have no strict presets")
        return powerset_lattice(n)
    if kind == "cosimplicial":
        if preset not in (None, "simplex", "cube"):
            raise LatticeError(f"preset {preset!r} does not apply to cosimplicial")
        return cosimplicial_lattice(n, preset)
    if preset not in (None, "mapping-simplex"):
        raise LatticeError(f"preset {preset!r} does not apply to mapping")
    return mapping_lattice(n, preset)


def parse_builtin(spec: str, preset: str | None = None) -> Lattice:
    """``"chain:4"``, ``"toda"`` and so on."""
    kind, _, size = spec.partition(":")
    if size and not re.fullmatch(r"\d+", size):
        raise LatticeError(f"bad size in builtin {spec!r}")
    return make_lattice(kind, int(size) if size else None, preset)


def _d(k: int, i: int, prime: str = "") -> str:
    return f"d{k}_{i}{prime}"


def _simplicial_relations(n: int, prime: str, strict) -> list:
    rels = []
    for k in range(1, n + 1):
        for i, j in combinations(range(k + 1), 2):
            rels.append(Relation(
                (_d(k, j, prime), _d(k - 1, i, prime)),
                (_d(k, i, prime), _d(k - 1, j - 1, prime)),
                strict=strict(k, i, j),
                label=f"s{k}_{i}{j}{prime}",
            ))
    return rels


def _cosimplicial_parts(n: int, prime: str = ""):
    nodes = [f"{k}{prime}" for k in range(n, -2, -1)]
    arrows = [
        Arrow(_d(k, i, prime), f"{k}{prime}", f"{k - 1}{prime}")
        for k in range(n, -1, -1)
        for i in range(k + 1)
    ]
    return nodes, arrows


def cosimplicial_lattice(n: int, preset: str | None = None) -> Lattice:
    """Nodes n, ..., 0, -1 with coface generators d{k}_{i}: k -> k-1."""
    rule = {
        None: lambda k, i, j: False,
        "simplex": lambda k, i, j: (k, i, j) != (1, 0, 1),
        "cube": lambda k, i, j: (i, j) != (0, 1),
    }[preset]
    nodes, arrows = _cosimplicial_parts(n)
    name = f"cosimplicial:{n}" + (f"+{preset}" if preset else "")
    return Lattice(tuple(nodes), nodes[0], nodes[-1], tuple(arrows),
                   tuple(_simplicial_relations(n, "", rule)), name=name)


def mapping_lattice(n: int, preset: str | None = None) -> Lattice:
    """Two cosimplicial strings n' -> -1' and n'' -> -1'' joined by f{k}: k' -> k''."""
    n1, a1 = _cosimplicial_parts(n, "'")
    n2, a2 = _cosimplicial_parts(n, "''")
    links = [Arrow(f"f{k}", f"{k}'", f"{k}''") for k in range(n, -2, -1)]
    strict_all = preset == "mapping-simplex"
    rels = _simplicial_relations(n, "'", lambda *_: strict_all)
    rels += _simplicial_relations(n, "''", lambda *_: strict_all)
    for k in range(n + 1):
        for j in range(k + 1):
            rels.append(Relation(
                (_d(k, j, "'"), f"f{k - 1}"),
                (f"f{k}", _d(k, j, "''")),
                strict=strict_all and j != k,
                label=f"m{k}_{j}",
            ))
    name = f"mapping:{n}" + (f"+{preset}" if preset else "")
    return Lattice(tuple(n1 + n2), n1[0], n2[-1], tuple(a1 + a2 + links), tuple(rels), name=name)


def _subset_name(s) -> str:
    return "S" + "".join(map(str, sorted(s)))


def powerset_lattice(n: int) -> Lattice:
    """Subsets of {0..n} under covering inclusions, all squares commuting."""
    ground = range(n + 1)
    subsets = [frozenset(c) for r in range(n + 2) for c in combinations(ground, r)]
    arrows = [
        Arrow(f"i{_subset_name(s)[1:]}_{x}", _subset_name(s), _subset_name(s | {x}))
        for s in subsets for x in ground if x not in s
    ]
    aid = {(a.source, a.target): a.id for a in arrows}
    rels = []
    for s in subsets:
        for x, y in combinations([g for g in ground if g not in s], 2):
            sx, sy, sxy = s | {x}, s | {y}, s | {x, y}
            name = [_subset_name(t) for t in (s, sx, sy, sxy)]
            rels.append(Relation(
                (aid[name[0], name[1]], aid[name[1], name[3]]),
                (aid[name[0], name[2]], aid[name[2], name[3]]),
            ))
    nodes = tuple(_subset_name(s) for s in subsets)
    return Lattice(nodes, nodes[0], nodes[-1], tuple(arrows), tuple(rels), name=f"powerset:{n}")


def toda_lattice() -> Lattice:
    arrows = [
        Arrow("gamma", "X", "Y"), Arrow("beta", "Y", "Z"), Arrow("alpha", "Z", "W"),
        Arrow("d", "X", "Z"), Arrow("e", "Y", "W"), Arrow("f", "X", "W"),
    ]
    rels = [
        Relation(("gamma", "beta"), ("d",), label="G"),
        Relation(("beta", "alpha"), ("e",), label="F"),
        Relation(("gamma", "e"), ("f",), label="H"),
        Relation(("d", "alpha"), ("f",), label="K"),
    ]
    return Lattice(("X", "Y", "Z", "W"), "X", "W", tuple(arrows), tuple(rels),
                   nulls=(("d",), ("e",), ("f",)), name="toda")


def whitehead_lattice() -> Lattice:
    """The triple Whitehead product diagram.

    The two null maps ``n1``, ``n2`` run from the single spheres straight to
    the target; everything else follows the drawn squares.
    """
    nodes = ("A", "B1", "B2", "C", "C1", "D1", "C2", "D2", "X")
    arrows = [
        Arrow("w1", "A", "B1"), Arrow("w2", "A", "B2"),
        Arrow("a1", "B1", "C"), Arrow("a2", "B2", "C"),
        Arrow("p1", "B1", "C1"), Arrow("ws", "C1", "D1"), Arrow("i1", "D1", "C"),
        Arrow("n1", "C1", "X"),
        Arrow("p2", "B2", "C2"), Arrow("wr", "C2", "D2"), Arrow("i2", "D2", "C"),
        Arrow("n2", "C2", "X"),
        Arrow("F", "C", "X"),
    ]
    rels = [
        Relation(("ws", "i1", "F"), ("n1",)),
        Relation(("wr", "i2", "F"), ("n2",)),
        Relation(("w1", "a1", "F"), ("w1", "p1", "n1")),
        Relation(("w2", "a2", "F"), ("w2", "p2", "n2")),
        Relation(("w1", "p1", "n1"), ("w2", "p2", "n2")),
    ]
    return Lattice(nodes, "A", "X", tuple(arrows), tuple(rels),
                   nulls=(("n1",), ("n2",)), name="whitehead")


# -- words for the cosimplicial vertices --------------------------------------


class NonReducedWordWarning(UserWarning):
    pass


def dword_of_permutation(perm) -> tuple:
    """Normal form letters i_k = #{j < k : perm[j] < perm[k]}.

    >>> dword_of_permutation((1, 0, 2))
    (0, 0, 2)
    """
    return tuple(sum(perm[j] < perm[k] for j in range(k)) for k in range(len(perm)))


def permutation_of_dword(word) -> tuple:
    """Inverse of :func:`dword_of_permutation`."""
    n = len(word) - 1
    if any(not 0 <= i <= k for k, i in enumerate(word)):
        raise ValueError(f"not a normal form word: {word}")
    pool = list(range(n + 1))
    perm = [0] * (n + 1)
    for k in range(n, -1, -1):
        perm[k] = pool.pop(word[k])
    return tuple(perm)


def swap_dword(word, p: int) -> tuple:
    """Rewrite letters at positions (p, p+1) for an adjacent transposition."""
    a, b = word[p], word[p + 1]
    pair = (b - 1, a) if a < b else (b, a + 1)
    return tuple(word[:p]) + pair + tuple(word[p + 2:])


def perm_vertex_label(swaps, n: int) -> tuple:
    """Normal form word reached from (0, 1, ..., n) by the given adjacent swaps.

    Each swap is the left position ``p`` of the pair (p, p+1).  Words that are
    not reduced are accepted with a :class:`NonReducedWordWarning`.
    """
    word = tuple(range(n + 1))
    perm = list(range(n + 1))
    swaps = list(swaps)
    for p in swaps:
        if not 0 <= p < n:
            raise ValueError(f"swap position {p} out of range for n={n}")
        word = swap_dword(word, p)
        perm[p], perm[p + 1] = perm[p + 1], perm[p]
    inversions = sum(perm[i] > perm[j] for i, j in combinations(range(n + 1), 2))
    if inversions != len(swaps):
        warnings.warn(f"swap word {swaps} is not reduced", NonReducedWordWarning, stacklevel=2)
    return word


def dword_path(word) -> tuple:
    """The generator path (diagrammatic order) spelled by a normal form word."""
    return tuple(_d(k, i) for k, i in reversed(list(enumerate(word))))


def dword_of_partition(op) -> tuple:
    """Normal form word of a Pe_n vertex (ordered partition into singletons)."""
    return dword_of_permutation(tuple(b[0] for b in op))


def partition_of_dword(word) -> tuple:
    return tuple((x,) for x in permutation_of_dword(word))


# -- permutohedra ------------------------------------------------------------


def ordered_partitions(elements) -> list:
    elements = tuple(sorted(elements))
    if not elements:
        return [()]
    out = []
    first = elements[0]
    rest = elements[1:]
    # choose the block holding `first`, then interleave it into partitions of the rest
    for r in range(len(rest) + 1):
        for comb in combinations(rest, r):
            block = (first,) + comb
            remaining = [x for x in rest if x not in comb]
            for tail in ordered_partitions(remaining):
                for pos in range(len(tail) + 1):
                    out.append(tail[:pos] + (block,) + tail[pos:])
    return sorted(out)


def _refinements(op) -> list:
    out = []
    for idx, block in enumerate(op):
        for r in range(1, len(block)):
            for left in combinations(block, r):
                right = tuple(x for x in block if x not in left)
                out.append(op[:idx] + (left, right) + op[idx + 1:])
    return out


def permutohedron_faces(n: int) -> FacePoset:
    faces = ordered_partitions(range(n + 1))
    dims = {op: n + 1 - len(op) for op in faces}
    return FacePoset(dims, {op: _refinements(op) for op in faces})


def permutohedron_coordinates(n: int) -> dict:
    """Vertex -> point whose e-th coordinate is the position of e in the order."""
    out = {}
    for perm in permutations(range(n + 1)):
        op = tuple((x,) for x in perm)
        coords = [0] * (n + 1)
        for pos, x in enumerate(perm):
            coords[x] = pos
        out[op] = tuple(coords)
    return out


def parse_flag(label: str, n: int | None = None) -> tuple:
    """Read a subset-flag label as an ordered partition.

    >>> parse_flag("(0123,013,1)")
    ((1,), (0, 3), (2,))
    """
    body = label.strip()
    if body.startswith("(") and body.endswith(")"):
        body = body[1:-1]
    parts = [p.strip() for p in body.split(",")]
    if not parts or any(not re.fullmatch(r"\d+", p) for p in parts):
        raise ValueError(f"not a flag label: {label!r}")
    sets = [frozenset(int(c) for c in p) for p in parts]
    if any(len(s) != len(p) for s, p in zip(sets, parts)):
        raise ValueError(f"repeated element in flag label {label!r}")
    full = frozenset(range((max(sets[0]) + 1) if n is None else n + 1))
    if sets[0] != full:
        raise ValueError(f"flag {label!r} must start with the full set {sorted(full)}")
    for big, small in zip(sets, sets[1:]):
        if not small < big:
            raise ValueError(f"flag {label!r} is not strictly decreasing")
    blocks = [sets[-1]] + [a - b for a, b in zip(reversed(sets[:-1]), reversed(sets[1:]))]
    return tuple(tuple(sorted(b)) for b in blocks)


def flag_label(op) -> str:
    sets, acc = [], set()
    for block in op:
        acc |= set(block)
        sets.append("".join(map(str, sorted(acc))))
    return "(" + ",".join(reversed(sets)) + ")"


# -- associahedra ------------------------------------------------------------


def _compatible(a, b) -> bool:
    (i, j), (k, l) = a, b
    return j < k or l < i or (i <= k and l <= j) or (k <= i and j <= l)


def bracketings(n: int) -> list:
    """All partial bracketings of n+2 letters (the whole word excluded)."""
    letters = n + 2
    intervals = [(i, j) for i in range(letters) for j in range(i + 1, letters)
                 if (i, j) != (0, letters - 1)]
    out = []

    def extend(start, chosen):
        out.append(tuple(chosen))
        for idx in range(start, len(intervals)):
            iv = intervals[idx]
            if all(_compatible(iv, c) for c in chosen):
                extend(idx + 1, chosen + [iv])

    extend(0, [])
    return sorted(out, key=lambda b: (-len(b), b))


def associahedron_faces(n: int) -> FacePoset:
    faces = bracketings(n)
    intervals = sorted({iv for b in faces for iv in b})
    facets = {
        b: [tuple(sorted(b + (iv,))) for iv in intervals
            if iv not in b and all(_compatible(iv, c) for c in b)]
        for b in faces
    }
    return FacePoset({b: n - len(b) for b in faces}, facets)


def bracketing_label(b, n: int) -> str:
    """Render brackets on the letters a, b, c, ... e.g. ``((ab)c)(de)``."""
    letters = [chr(ord("a") + i) for i in range(n + 2)]
    opens = {i: 0 for i in range(n + 2)}
    closes = {i: 0 for i in range(n + 2)}
    for i, j in b:
        opens[i] += 1
        closes[j] += 1
    return "".join("(" * opens[i] + letters[i] + ")" * closes[i] for i in range(n + 2))


def tonks_image(op, n: int) -> tuple:
    """Collapse an ordered partition of the gaps 0..n to a bracketing."""
    cluster = {i: (i, i) for i in range(n + 2)}  # letter -> interval of its cluster
    merged = set()
    brackets = set()
    for block in op:
        gaps = sorted(block)
        runs, run = [], [gaps[0]]
        for g in gaps[1:]:
            if all(x in merged for x in range(run[-1] + 1, g)):
                run.append(g)
            else:
                runs.append(run)
                run = [g]
        runs.append(run)
        for run in runs:
            lo = cluster[run[0]][0]
            hi = cluster[run[-1] + 1][1]
            for i in range(lo, hi + 1):
                cluster[i] = (lo, hi)
            merged.update(run)
            brackets.add((lo, hi))
    brackets.discard((0, n + 1))
    return tuple(sorted(brackets))


def tonks_collapse(n: int) -> dict:
    """Map every face of Pe_n to its face of K_n."""
    return {op: tonks_image(op, n) for op in ordered_partitions(range(n + 1))}


def collapsed_faces(n: int) -> list:
    """Faces of Pe_n whose image has smaller dimension, as flag labels."""
    pe = permutohedron_faces(n)
    out = []
    for op, b in tonks_collapse(n).items():
        if n - len(b) < pe.dim[op]:
            out.append(op)
    return sorted(out, key=lambda op: (pe.dim[op], flag_label(op)))


def associahedron_coordinates(n: int) -> dict:
    """K_n vertex -> average of the Pe_n vertices collapsing onto it."""
    pe = permutohedron_coordinates(n)
    groups: dict = {}
    for op, x in pe.items():
        groups.setdefault(tonks_image(op, n), []).append(x)
    return {
        b: tuple(sum(Fraction(p[i]) for p in pts) / len(pts) for i in range(n + 1))
        for b, pts in groups.items()
    }


# -- simplices and cubes -----------------------------------------------------


def simplex_faces(n: int) -> FacePoset:
    faces = [c for r in range(1, n + 2) for c in combinations(range(n + 1), r)]
    return FacePoset(
        {f: len(f) - 1 for f in faces},
        {f: [f[:i] + f[i + 1:] for i in range(len(f))] if len(f) > 1 else [] for f in faces},
    )


def cube_faces(n: int) -> FacePoset:
    faces = ["".join(p) for p in product("01*", repeat=n)]
    facets = {
        f: [f[:i] + c + f[i + 1:] for i, ch in enumerate(f) if ch == "*" for c in "01"]
        for f in faces
    }
    return FacePoset({f: f.count("*") for f in faces}, facets)


def fubini(n: int) -> int:
    """Number of ordered set partitions of an n-set."""
    table = [1]
    for m in range(1, n + 1):
        table.append(sum(_binom(m, k) * table[m - k] for k in range(1, m + 1)))
    return table[n]


def _binom(n: int, k: int) -> int:
    return factorial(n) // (factorial(k) * factorial(n - k))


# -- family quotient checks --------------------------------------------------


def vertex_word(lattice: Lattice, chain) -> str:
    """Right-to-left word of a generator chain, e.g. ``d0f0d0``; normal form
    words of the cosimplicial lattice are shortened to their digits."""
    tokens = []
    for m in reversed(chain):
        for a in reversed(m.rep):
            hit = re.fullmatch(r"d(\d+)_(\d+)'*", a)
            tokens.append(("d", hit.group(2)) if hit else ("", a))
    if lattice.name and lattice.name.startswith("cosimplicial"):
        return "".join(t for _, t in tokens)
    return "".join(p + t for p, t in tokens)


@dataclass
class QuotientCheck:
    kind: str
    n: int
    expected: int
    classes: list = field(default_factory=list)  # sorted lists of vertex words
    class_counts: tuple = ()
    irregularities: tuple = ()

    @property
    def ok(self) -> bool:
        return len(self.classes) == self.expected

    def __str__(self) -> str:
        status = "ok" if self.ok else "MISMATCH"
        lines = [f"{self.kind} n={self.n}: {len(self.classes)} vertex classes, "
                 f"expected {self.expected} [{status}]"]
        lines += ["  {" + ", ".join(c) + "}" for c in self.classes]
        lines.append("  classes per dimension: " + " ".join(map(str, self.class_counts)))
        lines += [f"  irregular: {msg}" for msg in self.irregularities]
        return "\n".join(lines)


def family_quotient_check(kind: str, n: int) -> QuotientCheck:
    from .wcomplex import build_hom_complex, strict_quotient

    if kind not in PRESETS:
        raise ValueError(f"unknown family {kind!r}; expected one of {', '.join(PRESETS)}")
    if kind == "mapping-simplex":
        lat, expected = make_lattice("mapping", n, kind), n + 2
    else:
        lat = make_lattice("cosimplicial", n, kind)
        expected = n + 1 if kind == "simplex" else 2 ** n
    q = strict_quotient(build_hom_complex(lat))
    classes = sorted(sorted(vertex_word(lat, v.chain) for v in c) for c in q.corner_classes)
    return QuotientCheck(kind, n, expected, classes, q.f_vector(), q.irregularities)
