"""JSON, DOT and OFF writers."""
from __future__ import annotations

from fractions import Fraction

from .families import (
    associahedron_coordinates,
    associahedron_faces,
    permutohedron_coordinates,
    permutohedron_faces,
)
from .lattice import Lattice
from .poset import FacePoset
from .triangulation import SimplicialModel
from .wcomplex import Cell, HomComplex

JSON_FORMAT_VERSION = 1


def complex_to_json(h: HomComplex) -> dict:
    ids = {c: i for i, c in enumerate(h.cells)}
    cells = [
        {"id": ids[c], "dim": c.dim, "chain": [list(m.rep) for m in c.chain],
         "breaks": list(c.breaks)}
        for c in h.cells
    ]
    faces = [
        {"from": ids[c], "to": ids[f], "kind": kind, "pos": k}
        for c in h.cells for kind, k, f in h.faces(c)
    ]
    return {
        "format_version": JSON_FORMAT_VERSION,
        "source": h.source,
        "target": h.target,
        "cells": cells,
        "faces": faces,
        "fvector": list(h.f_vector()),
    }


def complex_from_json(data: dict, lattice: Lattice) -> HomComplex:
    """Rebuild a complex from :func:`complex_to_json` output.

    Raises ``ValueError`` when the stored faces disagree with the faces
    recomputed from the lattice.
    """
    if data.get("format_version") != JSON_FORMAT_VERSION:
        raise ValueError(f"unsupported format_version {data.get('format_version')!r}")
    by_id = {
        c["id"]: Cell(tuple(lattice.class_of(p) for p in c["chain"]), tuple(c["breaks"]))
        for c in data["cells"]
    }
    h = HomComplex(lattice, data["source"], data["target"], by_id.values(), kind="json")
    stored = {(f["from"], f["to"], f["kind"], f["pos"]) for f in data["faces"]}
    ids = {c: i for i, c in by_id.items()}
    recomputed = {
        (ids[c], ids.get(f), kind, k) for c in h.cells for kind, k, f in h.faces(c)
    }
    if stored != recomputed:
        raise ValueError("stored faces do not match the lattice")
    if list(h.f_vector()) != list(data["fvector"]):
        raise ValueError("stored f-vector does not match the cells")
    return h


def simplicial_to_json(s: SimplicialModel) -> dict:
    ids = {x: i for i, x in enumerate(s.simplices)}
    return {
        "format_version": JSON_FORMAT_VERSION,
        "source": s.source,
        "target": s.target,
        "simplices": [
            {"id": ids[x], "dim": x.dim, "chain": [list(m.rep) for m in x.chain],
             "partition": [list(b) for b in x.blocks]}
            for x in s.simplices
        ],
        "faces": [
            {"from": ids[x], "to": ids[f], "index": i}
            for x in s.simplices for i, f in enumerate(s.faces(x))
        ],
        "fvector": list(s.f_vector()),
    }


def _q(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def lattice_to_dot(lattice: Lattice) -> str:
    nulls = {p[0] for p in lattice.nulls if len(p) == 1}
    lines = [f"digraph {_q(lattice.name or 'lattice')} {{", "  rankdir=LR;"]
    for v in lattice.nodes:
        shape = "doublecircle" if v in (lattice.init, lattice.fin) else "circle"
        lines.append(f"  {_q(v)} [shape={shape}];")
    for a in lattice.arrows:
        style = ", style=dashed" if a.id in nulls else ""
        lines.append(f"  {_q(a.source)} -> {_q(a.target)} [label={_q(a.id)}{style}];")
    for i, r in enumerate(lattice.relations, 1):
        text = f"{r.label + ': ' if r.label else ''}{' '.join(r.left)} = {' '.join(r.right)}"
        if r.strict:
            text += " (strict)"
        lines.append(f"  rel{i} [shape=note, label={_q(text)}];")
    for i, p in enumerate(lattice.nulls, 1):
        if len(p) > 1:
            lines.append(f"  null{i} [shape=note, label={_q('null ' + ' '.join(p))}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- OFF ---------------------------------------------------------------------


def _cycle(face, poset: FacePoset) -> list:
    """Vertices of a 2-face in boundary order."""
    edges = [e for e in poset.below(face) if poset.dim[e] == 1]
    adj: dict = {}
    for e in edges:
        a, b = sorted(poset.vertices(e), key=poset.sort_key)
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    start = min(adj, key=poset.sort_key)
    order, prev = [start], None
    while True:
        cur = order[-1]
        step = min((w for w in adj[cur] if w != prev), key=poset.sort_key)
        if step == start:
            return order
        prev = cur
        order.append(step)


def _sub(a, b):
    return [x - y for x, y in zip(a, b)]


def _orient(poly: list, coords: dict, centre) -> list:
    # Newell normal, flipped to point away from the polytope's centre
    pts = [coords[v] for v in poly]
    normal = [Fraction(0)] * 3
    for p, q in zip(pts, pts[1:] + pts[:1]):
        normal[0] += (p[1] - q[1]) * (p[2] + q[2])
        normal[1] += (p[2] - q[2]) * (p[0] + q[0])
        normal[2] += (p[0] - q[0]) * (p[1] + q[1])
    mid = [sum(p[i] for p in pts) / len(pts) for i in range(3)]
    if sum(n * d for n, d in zip(normal, _sub(mid, centre))) < 0:
        return list(reversed(poly))
    return poly


def polytope_off(kind: str, n: int) -> str:
    """OFF text for the 3-dimensional permutohedron or associahedron.

    Points live in the hyperplane of coordinate sum n(n+1)/2, so dropping
    the last coordinate is an affine isomorphism onto R^3.
    """
    if n != 3:
        raise ValueError(f"OFF export needs a 3-dimensional polytope, got n={n}")
    if kind == "permutohedron":
        poset, full = permutohedron_faces(n), permutohedron_coordinates(n)
    elif kind == "associahedron":
        poset, full = associahedron_faces(n), associahedron_coordinates(n)
    else:
        raise ValueError(f"no geometric realization for {kind!r}")
    verts = poset.of_dim(0)
    coords = {v: tuple(Fraction(x) for x in full[v][:3]) for v in verts}
    index = {v: i for i, v in enumerate(verts)}
    centre = [sum(coords[v][i] for v in verts) / len(verts) for i in range(3)]
    faces = [_orient(_cycle(f, poset), coords, centre) for f in poset.of_dim(2)]
    lines = ["OFF", f"{len(verts)} {len(faces)} {len(poset.of_dim(1))}"]
    lines += [" ".join(f"{float(x):.9f}" for x in coords[v]) for v in verts]
    lines += [f"{len(f)} " + " ".join(str(index[v]) for v in f) for f in faces]
    return "\n".join(lines) + "\n"
