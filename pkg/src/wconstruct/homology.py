"""Integer homology via Smith normal form.

Cell complexes are handled through the order complex of their face poset,
which sidesteps incidence signs for product cells.  Everything is exact
integer arithmetic.

>>> smith_normal_form([[2, 4], [6, 8]])
((2, 4), 2)
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .poset import FacePoset


def smith_normal_form(matrix: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], int]:
    """Nonzero diagonal entries d1 | d2 | ... of the Smith form, and the rank."""
    a = [[int(x) for x in row] for row in matrix]
    m = len(a)
    n = len(a[0]) if m else 0
    diag = []
    for t in range(min(m, n)):
        nonzero = [(abs(a[i][j]), i, j) for i in range(t, m) for j in range(t, n) if a[i][j]]
        if not nonzero:
            break
        _, i, j = min(nonzero)
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        while True:
            # bring the smallest entry of row t / column t to the pivot
            cands = [(abs(a[i][t]), i, None) for i in range(t, m) if a[i][t]]
            cands += [(abs(a[t][j]), None, j) for j in range(t + 1, n) if a[t][j]]
            _, i, j = min(cands, key=lambda c: c[0])
            if i is not None and i != t:
                a[t], a[i] = a[i], a[t]
            elif j is not None:
                for row in a:
                    row[t], row[j] = row[j], row[t]
            p = a[t][t]
            clean = True
            for i in range(t + 1, m):
                if a[i][t]:
                    q = a[i][t] // p
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                    clean = clean and not a[i][t]
            for j in range(t + 1, n):
                if a[t][j]:
                    q = a[t][j] // p
                    for row in a:
                        row[j] -= q * row[t]
                    clean = clean and not a[t][j]
            if not clean:
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            a[t] = [x + y for x, y in zip(a[t], a[bad])]
        diag.append(abs(a[t][t]))
    return tuple(diag), len(diag)


def elementary_divisors(columns: Sequence[dict]) -> list[int]:
    """Nonzero Smith invariants of a sparse matrix given as row->value columns.

    Unit pivots are eliminated sparsely; whatever is left goes through the
    dense Smith normal form.
    """
    cols = {j: dict(c) for j, c in enumerate(columns) if c}
    row_cols: dict = {}
    for j, c in cols.items():
        for r in c:
            row_cols.setdefault(r, set()).add(j)
    units = 0
    progress = True
    while progress:
        progress = False
        for jp in list(cols):
            piv = cols.get(jp)
            if piv is None:
                continue
            unit_rows = [r for r, v in piv.items() if v in (1, -1)]
            if not unit_rows:
                continue
            rp = min(unit_rows, key=lambda r: len(row_cols[r]))
            del cols[jp]
            pv = piv[rp]
            for r in piv:
                row_cols[r].discard(jp)
            for j in list(row_cols[rp]):
                c = cols[j]
                factor = c[rp] * pv
                for r, v in piv.items():
                    nv = c.get(r, 0) - factor * v
                    if nv:
                        if r not in c:
                            row_cols.setdefault(r, set()).add(j)
                        c[r] = nv
                    elif r in c:
                        del c[r]
                        row_cols[r].discard(j)
                if not c:
                    del cols[j]
            del row_cols[rp]
            units += 1
            progress = True
    rows = sorted({r for c in cols.values() for r in c})
    if not rows:
        return [1] * units
    ridx = {r: i for i, r in enumerate(rows)}
    dense = [[0] * len(cols) for _ in rows]
    for j, c in enumerate(cols.values()):
        for r, v in c.items():
            dense[ridx[r]][j] = v
    diag, _ = smith_normal_form(dense)
    return [1] * units + list(diag)


@dataclass(frozen=True)
class ChainComplex:
    """Free chain complex: bases per degree and sparse boundary columns.

    ``boundary[k][j]`` is the boundary of ``bases[k][j]`` as a dict from
    row index in ``bases[k-1]`` to coefficient.
    """

    bases: tuple
    boundary: tuple

    def check_d_squared(self) -> bool:
        for k in range(2, len(self.bases)):
            for col in self.boundary[k]:
                acc: dict = {}
                for r, v in col.items():
                    for r2, w in self.boundary[k - 1][r].items():
                        acc[r2] = acc.get(r2, 0) + v * w
                if any(acc.values()):
                    return False
        return True


@dataclass(frozen=True)
class HomologyResult:
    betti: tuple
    torsion: tuple
    relative: bool = False

    def reduced(self) -> tuple:
        """Reduced Betti numbers (relative results are returned unchanged)."""
        if self.relative or not self.betti or self.betti[0] == 0:
            return self.betti
        return (self.betti[0] - 1,) + self.betti[1:]

    @property
    def euler(self) -> int:
        return sum((-1) ** k * b for k, b in enumerate(self.betti))

    @property
    def is_acyclic(self) -> bool:
        return not any(self.reduced()) and not any(self.torsion)


def chain_homology(cc: ChainComplex, relative: bool = False) -> HomologyResult:
    top = len(cc.bases)
    ranks, divisors = [0] * (top + 1), [[] for _ in range(top + 1)]
    for k in range(1, top):
        d = elementary_divisors(cc.boundary[k])
        ranks[k], divisors[k] = len(d), d
    betti = tuple(len(cc.bases[k]) - ranks[k] - ranks[k + 1] for k in range(top))
    torsion = tuple(tuple(x for x in divisors[k + 1] if x > 1) for k in range(top))
    return HomologyResult(betti, torsion, relative)


def order_complex(poset: FacePoset, skip: Iterable = ()) -> list[list[tuple]]:
    """Chains x0 < ... < xk of the poset, by dimension k.

    Chains whose top element lies in ``skip`` are left out; when ``skip`` is
    a down-closed set this is exactly the relative complex.
    """
    skip = set(skip)
    ending: dict = {}
    by_dim: list[list[tuple]] = []
    for y in poset.elements:
        acc = [(y,)]
        for x in poset.below(y):
            acc.extend(c + (y,) for c in ending[x])
        ending[y] = acc
        if y in skip:
            continue
        for c in acc:
            while len(by_dim) < len(c):
                by_dim.append([])
            by_dim[len(c) - 1].append(c)
    return [sorted(s, key=lambda c: [poset.sort_key(x) for x in c]) for s in by_dim]


def simplicial_chain_complex(simplices: list[list[tuple]]) -> ChainComplex:
    index = [{s: i for i, s in enumerate(layer)} for layer in simplices]
    boundary = [[{} for _ in simplices[0]]] if simplices else []
    for k in range(1, len(simplices)):
        cols = []
        for s in simplices[k]:
            col = {}
            for i in range(len(s)):
                r = index[k - 1].get(s[:i] + s[i + 1:])
                if r is not None:
                    col[r] = col.get(r, 0) + (-1) ** i
            cols.append({r: v for r, v in col.items() if v})
        boundary.append(cols)
    return ChainComplex(tuple(simplices), tuple(boundary))


def _as_poset(x) -> FacePoset:
    if isinstance(x, FacePoset):
        return x
    if hasattr(x, "face_poset"):
        return x.face_poset()
    raise TypeError(f"cannot take homology of {type(x).__name__}")


def _elements(a) -> set:
    if isinstance(a, FacePoset):
        return set(a.elements)
    if hasattr(a, "face_poset"):
        return set(a.face_poset().elements)
    return set(a)


def homology(x, a=None) -> HomologyResult:
    """Homology of a complex, or of the pair (x, a) when ``a`` is given."""
    if hasattr(x, "chain_complex") and a is None:
        return chain_homology(x.chain_complex())
    poset = _as_poset(x)
    if a is None:
        return chain_homology(simplicial_chain_complex(order_complex(poset)))
    sub = _elements(a)
    if not sub <= set(poset.elements):
        raise ValueError("subcomplex is not contained in the complex")
    if not poset.is_closed(sub):
        raise ValueError("subcomplex is not closed under faces")
    layers = order_complex(poset, skip=sub)
    full = order_complex(poset)
    # keep degree slots for every dimension of x, even if empty relatively
    layers += [[] for _ in range(len(full) - len(layers))]
    return chain_homology(simplicial_chain_complex(layers), relative=True)

