"""Rigid summand combinatorics: compatibility graph, maximal rigid modules
as maximal cliques, the one-summand-exchange graph, and exports."""

from __future__ import annotations

import json
from dataclasses import dataclass

from .atlas import Atlas
from .errors import FormatError, InputError, StructureError

GRAPH_FORMAT_VERSION = 1


@dataclass(frozen=True)
class RigidModule:
    summands: tuple[int, ...]  # sorted atlas ids
    contains_projectives: bool

    def __post_init__(self):
        if tuple(sorted(self.summands)) != self.summands:
            raise InputError("summands must be sorted")


@dataclass
class MutationGraph:
    vertices: list  # RigidModule, lexicographically ordered by summand tuple
    edges: list  # sorted (i, j) index pairs, i < j
    r: int
    n: int

    @property
    def size(self) -> int:
        return len(self.vertices)

    def degrees(self) -> list[int]:
        deg = [0] * len(self.vertices)
        for i, j in self.edges:
            deg[i] += 1
            deg[j] += 1
        return deg

    def is_regular(self, k: int) -> bool:
        return all(d == k for d in self.degrees())


def compatibility_graph(atlas: Atlas):
    """Vertices: rigid indecomposables; edge iff the pair has no extensions.

    Returns (vertex ids, adjacency sets keyed by atlas id).
    """
    ext = atlas.ext_table
    vertices = [i for i in range(atlas.size) if ext[i, i] == 0]
    adj = {i: set() for i in vertices}
    for i in vertices:
        for j in vertices:
            if i != j and ext[i, j] == 0 and ext[j, i] == 0:
                adj[i].add(j)
    return vertices, adj


def _bron_kerbosch(adj, r, p, x, out):
    if not p and not x:
        out.append(sorted(r))
        return
    pivot = max(p | x, key=lambda u: len(adj[u] & p))
    for v in sorted(p - adj[pivot]):
        _bron_kerbosch(adj, r | {v}, p & adj[v], x & adj[v], out)
        p.remove(v)
        x.add(v)


def enumerate_maximal_rigid(atlas: Atlas) -> list[RigidModule]:
    """All maximal cliques of the compatibility graph, with the runtime
    checks that each contains every projective and that all sizes agree."""
    vertices, adj = compatibility_graph(atlas)
    cliques: list[list[int]] = []
    _bron_kerbosch(adj, set(), set(vertices), set(), cliques)
    if not cliques:
        raise StructureError("no maximal cliques found")
    sizes = {len(c) for c in cliques}
    if len(sizes) != 1:
        raise StructureError(f"maximal cliques of unequal sizes {sorted(sizes)}")
    projs = set(atlas.projective_ids)
    out = []
    for c in sorted(cliques):
        cset = set(c)
        if not projs <= cset:
            raise StructureError("a maximal clique misses a projective summand")
        out.append(RigidModule(summands=tuple(c), contains_projectives=True))
    return out


def mutation_graph(rigids, n: int) -> MutationGraph:
    """Edges join vertices whose summand sets differ in exactly one element."""
    rigids = sorted(rigids, key=lambda t: t.summands)
    sizes = {len(t.summands) for t in rigids}
    if len(sizes) != 1:
        raise InputError("vertices must all have the same summand count")
    r = sizes.pop()
    edges = []
    sets = [set(t.summands) for t in rigids]
    for i in range(len(rigids)):
        for j in range(i + 1, len(rigids)):
            if len(sets[i] ^ sets[j]) == 2:
                edges.append((i, j))
    return MutationGraph(vertices=rigids, edges=sorted(edges), r=r, n=n)


def is_connected(g: MutationGraph) -> bool:
    if not g.vertices:
        return True
    adj = {i: set() for i in range(len(g.vertices))}
    for i, j in g.edges:
        adj[i].add(j)
        adj[j].add(i)
    seen = {0}
    stack = [0]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(g.vertices)


# -- export ----------------------------------------------------------------


def _vertex_labels(g: MutationGraph, atlas: Atlas | None):
    labels = []
    for t in g.vertices:
        if atlas is not None:
            parts = [atlas.alias_of(s) or str(s) for s in t.summands]
        else:
            parts = [str(s) for s in t.summands]
        labels.append(sorted(parts))
    return labels


def graph_payload(g: MutationGraph, qtype: str, atlas: Atlas | None = None) -> dict:
    labels = _vertex_labels(g, atlas)
    return {
        "format_version": GRAPH_FORMAT_VERSION,
        "quiver_type": qtype,
        "r": g.r,
        "n": g.n,
        "vertices": [
            {"id": i, "summands": list(t.summands), "aliases": labels[i]}
            for i, t in enumerate(g.vertices)
        ],
        "edges": [list(e) for e in g.edges],
    }


def export_graph(g: MutationGraph, fmt: str, path, qtype: str, atlas: Atlas | None = None):
    if fmt == "json":
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(graph_payload(g, qtype, atlas), fh, sort_keys=True, separators=(",", ":"))
            fh.write("\n")
    elif fmt == "dot":
        labels = _vertex_labels(g, atlas)
        lines = ["graph mutation {"]
        for i in range(len(g.vertices)):
            lines.append(f'  {i} [label="{",".join(labels[i])}"];')
        for i, j in g.edges:
            lines.append(f"  {i} -- {j};")
        lines.append("}")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write("\n".join(lines) + "\n")
    else:
        raise InputError(f"unknown export format {fmt!r}")


# Standard labels for the fourteen A3 vertices, by non-projective summand
# aliases; the CLI accepts these as --rigid ids.
A3_RIGID_LABELS = {
    "R1": frozenset({"S2", "1over2", "3over2"}),
    "R2": frozenset({"13over2", "1over2", "3over2"}),
    "R3": frozenset({"13over2", "1over2", "S1"}),
    "R4": frozenset({"S2", "2over3", "3over2"}),
    "R5": frozenset({"S3", "2over3", "3over2"}),
    "R6": frozenset({"S3", "2over3", "2over13"}),
    "R7": frozenset({"S3", "S1", "2over13"}),
    "R8": frozenset({"S3", "S1", "13over2"}),
    "R9": frozenset({"2over1", "2over3", "2over13"}),
    "R10": frozenset({"S1", "2over1", "2over13"}),
    "R11": frozenset({"S1", "2over1", "1over2"}),
    "R12": frozenset({"S3", "13over2", "3over2"}),
    "R13": frozenset({"S2", "2over3", "2over1"}),
    "R14": frozenset({"S2", "1over2", "2over1"}),
}


def resolve_rigid_label(atlas: Atlas, rigids, token: str) -> int:
    """Vertex index from an A3 label like R1, or a plain vertex index."""
    if token in A3_RIGID_LABELS:
        if atlas.qtype != "A3":
            raise InputError(f"label {token} only names A3 vertices")
        projs = set(atlas.projective_ids)
        want = {atlas.id_by_alias(a) for a in A3_RIGID_LABELS[token]} | projs
        for i, t in enumerate(rigids):
            if set(t.summands) == want:
                return i
        raise InputError(f"no vertex with summands of {token}")
    try:
        idx = int(token)
    except ValueError:
        raise InputError(f"unknown rigid id {token!r}") from None
    if not 0 <= idx < len(rigids):
        raise InputError(f"rigid index {idx} out of range 0..{len(rigids) - 1}")
    return idx


def load_graph_json(path) -> MutationGraph:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            payload = json.load(fh)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise FormatError(f"not a graph file: {exc}") from exc
    if payload.get("format_version") != GRAPH_FORMAT_VERSION:
        raise FormatError("unsupported graph format_version")
    vertices = [
        RigidModule(summands=tuple(v["summands"]), contains_projectives=True)
        for v in payload["vertices"]
    ]
    edges = [tuple(e) for e in payload["edges"]]
    return MutationGraph(vertices=vertices, edges=edges, r=payload["r"], n=payload["n"])
