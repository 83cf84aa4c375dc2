"""Labelled oriented graphs with an exceptional cell, and graph substitution.

A graph is a finite flag set partitioned into an ordered list of vertices plus
an exceptional cell.  The involution ``iota`` pairs flags into edges; flags it
fixes form the boundary.  Exceptional flags are the ends of free-floating
edges and are paired by the fixed-point-free involution ``pi``.  Free loops
carry no labels or signs, so they are stored as a bare count.  ``delta`` gives
each flag a direction (+1 incoming, -1 outgoing), ``lam`` labels vertex flags
and ``beta`` labels boundary flags.

Strict isomorphism renames flags only; loose isomorphism may additionally
permute the vertex order.  Substitution replaces a vertex by a graph with
matching boundary, resolving the glued strands by chain-following.
"""
from __future__ import annotations

import itertools
import json
import os
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple

from .errors import (
    BoundaryMismatch,
    InvalidGraph,
    TooManyVertices,
    UnknownVertex,
)

DEFAULT_BRUTE_FORCE_BOUND = 8


def brute_force_bound(override: Optional[int] = None) -> int:
    if override is not None:
        return override
    env = os.environ.get("WIRECAT_BRUTE_FORCE_BOUND")
    return int(env) if env else DEFAULT_BRUTE_FORCE_BOUND


class DirectedGraph:
    """An immutable labelled oriented graph.

    ``vertices`` is an ordered tuple of disjoint flag sets; ``exceptional``
    holds the free-edge flags (all fixed by ``iota``, paired by ``pi``).
    Free loops appear only in ``loop_count``.
    """

    __slots__ = ("vertices", "exceptional", "iota", "pi", "delta", "lam",
                 "beta", "loop_count", "_vertex_of")

    def __init__(self, vertices: Iterable[Iterable], exceptional: Iterable = (),
                 iota: Mapping = (), pi: Mapping = (), delta: Mapping = (),
                 lam: Mapping = (), beta: Mapping = (), loop_count: int = 0):
        self.vertices = tuple(frozenset(v) for v in vertices)
        self.exceptional = frozenset(exceptional)
        self.iota = dict(iota)
        self.pi = dict(pi)
        self.delta = dict(delta)
        self.lam = dict(lam)
        self.beta = dict(beta)
        self.loop_count = loop_count
        violations = self.validate()
        if violations:
            raise InvalidGraph(violations)
        self._vertex_of = {}
        for idx, v in enumerate(self.vertices):
            for f in v:
                self._vertex_of[f] = idx

    # -- validation ----------------------------------------------------------

    def validate(self):
        """Return a list of violated-invariant descriptions (empty if valid)."""
        bad = []
        cells = list(self.vertices) + [self.exceptional]
        seen = set()
        for cell in cells:
            inter = seen & cell
            if inter:
                bad.append("PartitionOverlap: flags %r in two cells" % sorted(inter, key=repr))
            seen |= cell
        vertex_flags = set().union(*self.vertices) if self.vertices else set()
        all_flags = vertex_flags | self.exceptional

        for f in all_flags:
            if self.iota.get(f, f) == f:
                continue
            g = self.iota[f]
            if g not in all_flags or self.iota.get(g, g) != f:
                bad.append("ExceptionalLeak: iota not an involution at %r" % (f,))
            elif f in self.exceptional or g in self.exceptional:
                # Paired exceptional flags would be a free loop; loops live in
                # loop_count, and the exceptional cell must be iota-fixed.
                bad.append("ExceptionalLeak: iota moves exceptional flag %r" % (f,))

        if set(self.pi) != self.exceptional:
            bad.append("PiDomain: pi domain is not the exceptional cell")
        for f, g in self.pi.items():
            if f == g:
                bad.append("PiFixedPoint: pi fixes %r" % (f,))
            elif self.pi.get(g) != f:
                bad.append("PiFixedPoint: pi not an involution at %r" % (f,))

        for f in all_flags:
            if self.delta.get(f) not in (-1, 1):
                bad.append("DeltaMismatch: no direction on flag %r" % (f,))
        for f in all_flags:
            g = self.iota.get(f, f)
            if g != f and self.delta.get(f) == self.delta.get(g):
                bad.append("DeltaMismatch: delta equal across edge (%r,%r)" % (f, g))
        for f, g in self.pi.items():
            if self.delta.get(f) == self.delta.get(g):
                bad.append("DeltaMismatch: delta equal across free edge (%r,%r)" % (f, g))

        if set(self.lam) != vertex_flags:
            bad.append("LabelCollision: lambda domain is not the vertex flags")
        for idx, v in enumerate(self.vertices):
            for sign in (-1, 1):
                labels = [self.lam.get(f) for f in v if self.delta.get(f) == sign]
                if len(labels) != len(set(labels)):
                    bad.append("LabelCollision: lambda not injective on vertex %d sign %+d"
                               % (idx + 1, sign))

        boundary_flags = {f for f in all_flags if self.iota.get(f, f) == f}
        if set(self.beta) != boundary_flags:
            bad.append("LabelCollision: beta domain is not the boundary")
        for sign in (-1, 1):
            labels = [self.beta.get(f) for f in boundary_flags if self.delta.get(f) == sign]
            if len(labels) != len(set(labels)):
                bad.append("LabelCollision: beta not injective on sign %+d" % sign)

        if self.loop_count < 0 or self.loop_count != int(self.loop_count):
            bad.append("OddLoopFlags: loop flag count is not an even nonnegative number")
        return bad

    # -- structure -----------------------------------------------------------

    @property
    def r(self) -> int:
        return len(self.vertices)

    def vertex(self, v: int) -> frozenset:
        if not 1 <= v <= self.r:
            raise UnknownVertex("vertex %d of %d" % (v, self.r))
        return self.vertices[v - 1]

    def neighbourhood(self, v: int) -> Tuple[frozenset, frozenset]:
        """(in_labels, out_labels) of vertex ``v`` (1-based)."""
        flags = self.vertex(v)
        ins = frozenset(self.lam[f] for f in flags if self.delta[f] == 1)
        outs = frozenset(self.lam[f] for f in flags if self.delta[f] == -1)
        return ins, outs

    def boundary_flags(self) -> frozenset:
        vertex_flags = set().union(*self.vertices) if self.vertices else set()
        return frozenset(f for f in vertex_flags | self.exceptional
                         if self.iota.get(f, f) == f)

    def boundary(self) -> Tuple[frozenset, frozenset]:
        """(in_labels, out_labels) of the whole graph."""
        flags = self.boundary_flags()
        ins = frozenset(self.beta[f] for f in flags if self.delta[f] == 1)
        outs = frozenset(self.beta[f] for f in flags if self.delta[f] == -1)
        return ins, outs

    def __eq__(self, other):
        return (isinstance(other, DirectedGraph)
                and canonical_form(self) == canonical_form(other))

    def __hash__(self):
        return hash(canonical_form(self))

    def __repr__(self):
        return "DirectedGraph(r=%d, loops=%d)" % (self.r, self.loop_count)


def neighbourhood(g: DirectedGraph, v: int):
    return g.neighbourhood(v)


def boundary(g: DirectedGraph):
    return g.boundary()


def validate(g: DirectedGraph):
    return g.validate()


# -- canonical forms ---------------------------------------------------------

def _flag_key(g: DirectedGraph, f):
    """Identify a flag without its name: by vertex position, sign and label."""
    if f in g._vertex_of:
        return ("v", g._vertex_of[f], g.delta[f], g.lam[f])
    return ("x", g.delta[f], g.beta[f])


def canonical_form(g: DirectedGraph):
    """A flag-name-free structure; equal iff the graphs are strictly isomorphic."""
    verts = []
    for v in g.vertices:
        records = []
        for f in v:
            mate = g.iota.get(f, f)
            if mate == f:
                conn = ("b", g.beta[f])
            else:
                conn = ("e",) + _flag_key(g, mate)
            records.append((g.delta[f], g.lam[f], conn))
        verts.append(tuple(sorted(records, key=repr)))
    free_edges = set()
    for f, m in g.pi.items():
        pair = tuple(sorted([(g.delta[f], g.beta[f]), (g.delta[m], g.beta[m])],
                            key=repr))
        free_edges.add(pair)
    return (tuple(verts), tuple(sorted(free_edges, key=repr)), g.loop_count)


def is_isomorphic_strict(g: DirectedGraph, h: DirectedGraph) -> bool:
    return canonical_form(g) == canonical_form(h)


def reorder(g: DirectedGraph, order: Sequence[int]) -> DirectedGraph:
    """Permute the vertex order; ``order[k]`` is the 1-based old index of the
    new vertex ``k+1``."""
    if sorted(order) != list(range(1, g.r + 1)):
        raise UnknownVertex("not a permutation of 1..%d: %r" % (g.r, order))
    vertices = tuple(g.vertices[i - 1] for i in order)
    return DirectedGraph(vertices, g.exceptional, g.iota, g.pi, g.delta,
                         g.lam, g.beta, g.loop_count)


def is_isomorphic_loose(g: DirectedGraph, h: DirectedGraph,
                        bound: Optional[int] = None) -> Optional[Tuple[int, ...]]:
    """A vertex-order permutation carrying ``g`` to ``h``, or ``None``."""
    if g.r != h.r or g.boundary() != h.boundary():
        return None
    limit = brute_force_bound(bound)
    if g.r > limit:
        raise TooManyVertices("%d vertices exceeds bound %d" % (g.r, limit))
    target = canonical_form(h)
    for order in itertools.permutations(range(1, g.r + 1)):
        if canonical_form(reorder(g, order)) == target:
            return order
    return None


def _local_invariant(g: DirectedGraph, vidx: int, decoration):
    """A vertex fingerprint independent of vertex numbering."""
    records = []
    for f in g.vertices[vidx]:
        mate = g.iota.get(f, f)
        if mate == f:
            conn = ("b", g.beta[f])
        else:
            conn = ("e", "", g.delta[mate], g.lam[mate])
        records.append((g.delta[f], g.lam[f], conn))
    return (decoration, tuple(sorted(records, key=repr)))


def loose_canonical_form(g: DirectedGraph, decorations: Optional[Sequence] = None,
                         bound: Optional[int] = None,
                         with_order: bool = False):
    """A canonical key invariant under vertex reordering.

    ``decorations`` optionally attaches one comparable value per vertex that
    must travel with it.  Vertices are first partitioned by an iterated
    neighbour-refinement fingerprint; only ties are resolved by brute force,
    and a tie block larger than the bound raises ``TooManyVertices``.
    """
    r = g.r
    if decorations is None:
        decorations = [None] * r
    decorations = list(decorations)
    inv = [_local_invariant(g, i, repr(decorations[i])) for i in range(r)]
    for _ in range(r):
        nxt = []
        for i in range(r):
            nbrs = []
            for f in g.vertices[i]:
                mate = g.iota.get(f, f)
                if mate != f and mate in g._vertex_of:
                    j = g._vertex_of[mate]
                    nbrs.append(((g.delta[f], g.lam[f], g.delta[mate], g.lam[mate]),
                                 inv[j]))
            nxt.append((inv[i], tuple(sorted(nbrs, key=repr))))
        if len(set(nxt)) == len(set(inv)) and all(
                (inv[i] == inv[j]) == (nxt[i] == nxt[j])
                for i in range(r) for j in range(i + 1, r)):
            break
        inv = nxt

    # Sort vertices by fingerprint; equal fingerprints form tie blocks.
    limit = brute_force_bound(bound)
    by_inv = sorted(range(r), key=lambda i: (repr(inv[i]), i))
    blocks = []
    for _, grp in itertools.groupby(by_inv, key=lambda i: repr(inv[i])):
        blocks.append(list(grp))
    for b in blocks:
        if len(b) > limit:
            raise TooManyVertices(
                "tie block of %d vertices exceeds bound %d" % (len(b), limit))

    best = None
    best_order = None
    for perms in itertools.product(*(itertools.permutations(b) for b in blocks)):
        order = [i + 1 for p in perms for i in p]
        cand = (canonical_form(reorder(g, order)),
                tuple(decorations[i - 1] for i in order))
        if best is None or repr(cand) < repr(best):
            best = cand
            best_order = tuple(order)
    if best is None:  # no vertices at all
        best = (canonical_form(g), ())
        best_order = ()
    return (best, best_order) if with_order else best


# -- corollas and substitution ----------------------------------------------

def corolla(in_labels: Iterable[str], out_labels: Iterable[str],
            boundary_relabel: Optional[Tuple[Mapping, Mapping]] = None) -> DirectedGraph:
    """A one-vertex graph with only boundary legs.

    With ``boundary_relabel = (f_in, g_out)`` the leg labels ``beta`` become
    the images of the vertex labels, which makes substitution around a graph
    rename its boundary.
    """
    f_in, g_out = boundary_relabel if boundary_relabel else ({}, {})
    delta, lam, beta = {}, {}, {}
    flags = []
    n = 0
    for a in sorted(in_labels):
        flags.append(n)
        delta[n] = 1
        lam[n] = a
        beta[n] = f_in.get(a, a)
        n += 1
    for a in sorted(out_labels):
        flags.append(n)
        delta[n] = -1
        lam[n] = a
        beta[n] = g_out.get(a, a)
        n += 1
    return DirectedGraph([flags], (), {}, {}, delta, lam, beta, 0)


def free_edge(in_label: str, out_label: str) -> DirectedGraph:
    """The free-floating edge with boundary ({in_label}, {out_label})."""
    return DirectedGraph([], [0, 1], {}, {0: 1, 1: 0},
                         {0: 1, 1: -1}, {}, {0: in_label, 1: out_label}, 0)


def free_loop(count: int = 1) -> DirectedGraph:
    return DirectedGraph([], (), {}, {}, {}, {}, {}, count)


def substitute(g: DirectedGraph, v: int, h: DirectedGraph) -> DirectedGraph:
    """Replace vertex ``v`` of ``g`` by the graph ``h``.

    Requires ``boundary(h) == neighbourhood(g, v)``.  Each boundary flag of
    ``h`` is glued to the flag of ``v`` with the same label and direction;
    strands are resolved end-to-end, and strands that close up become free
    loops.
    """
    g.vertex(v)  # raises UnknownVertex
    if h.boundary() != g.neighbourhood(v):
        raise BoundaryMismatch(
            "boundary %r of inner graph != neighbourhood %r of vertex %d"
            % (h.boundary(), g.neighbourhood(v), v))

    removed = g.vertices[v - 1]
    # Glue: flag f of the removed vertex meets the boundary flag of h carrying
    # the same label with the same direction.
    h_leg = {(h.delta[f], h.beta[f]): f for f in h.boundary_flags()}
    glue = {("G", f): ("H", h_leg[(g.delta[f], g.lam[f])]) for f in removed}
    glue.update({b: a for a, b in glue.items()})

    # Structural links: iota pairs and pi pairs on both sides.
    link = {}
    for side, gr in (("G", g), ("H", h)):
        for f, m in gr.iota.items():
            if m != f:
                link[(side, f)] = (side, m)
        for f, m in gr.pi.items():
            link[(side, f)] = (side, m)

    # Terminals anchor strand ends.  A terminal is either a vertex flag of a
    # kept vertex (of g or h) or a boundary end carrying a beta label of g.
    def terminal(node):
        side, f = node
        if side == "H":
            if f in h._vertex_of:
                return ("vertex", node)
            return None  # exceptional flags of h are pass-throughs
        if f in removed:
            if g.iota.get(f, f) == f:
                return ("bnd", g.delta[f], g.beta[f])
            return None
        if f in g._vertex_of:
            return ("vertex", node)
        return ("bnd", g.delta[f], g.beta[f])  # exceptional flag of g

    def step(node, prev):
        for nxt in (link.get(node), glue.get(node)):
            if nxt is not None and nxt != prev:
                return nxt
        return None

    # New flag ids for kept vertex flags.
    fresh = itertools.count()
    new_id = {}
    vertices = []
    order = ([("G", i) for i in range(v - 1)] + [("H", i) for i in range(h.r)]
             + [("G", i) for i in range(v, g.r)])
    delta, lam, beta, iota, pi = {}, {}, {}, {}, {}
    for side, i in order:
        gr = g if side == "G" else h
        cell = []
        for f in sorted(gr.vertices[i], key=repr):
            nf = next(fresh)
            new_id[(side, f)] = nf
            delta[nf] = gr.delta[f]
            lam[nf] = gr.lam[f]
            cell.append(nf)
        vertices.append(cell)

    # Walk every strand from each terminal.
    terminals = [("G", f) for i in range(g.r) if i != v - 1
                 for f in sorted(g.vertices[i], key=repr)]
    terminals += [("H", f) for i in range(h.r)
                  for f in sorted(h.vertices[i], key=repr)]
    terminals += [("G", f) for f in sorted(g.exceptional, key=repr)]
    terminals += [("G", f) for f in sorted(removed, key=repr)
                  if g.iota.get(f, f) == f]
    done = set()
    exceptional = []
    visited_through = set()
    for node in terminals:
        t = terminal(node)
        if node in done:
            continue
        done.add(node)
        prev, cur = node, step(node, None)
        if cur is None:
            # Length-zero strand: a kept boundary leg of g.
            side, f = node
            nf = new_id[(side, f)]
            beta[nf] = (g if side == "G" else h).beta[f]
            continue
        while terminal(cur) is None:
            visited_through.add(cur)
            prev, cur = cur, step(cur, prev)
        done.add(cur)
        t2 = terminal(cur)
        ends = []
        for tt, nd in ((t, node), (t2, cur)):
            ends.append((tt, nd))
        kinds = sorted(e[0][0] for e in ends)
        if kinds == ["vertex", "vertex"]:
            a = new_id[ends[0][1]]
            b = new_id[ends[1][1]]
            iota[a], iota[b] = b, a
        elif kinds == ["bnd", "vertex"]:
            for tt, nd in ends:
                if tt[0] == "vertex":
                    nf = new_id[nd]
                else:
                    _, _, lab = tt
            beta[nf] = lab
        else:  # two boundary ends: a free edge of the result
            a, b = next(fresh), next(fresh)
            for nf, (tt, _) in zip((a, b), ends):
                _, sign, lab = tt
                delta[nf] = sign
                beta[nf] = lab
            pi[a], pi[b] = b, a
            exceptional += [a, b]

    # Strands that touch no terminal are closed: they become free loops.
    closed = 0
    pass_nodes = {n for n in set(list(glue) + list(link)) - visited_through
                  if terminal(n) is None and n not in done}
    while pass_nodes:
        closed += 1
        start = pass_nodes.pop()
        prev, cur = start, step(start, None)
        while cur != start:
            pass_nodes.discard(cur)
            prev, cur = cur, step(cur, prev)

    # Kept vertex flags whose strand never got walked (iota-fixed legs of h
    # never appear because all of h's boundary is glued; iota-fixed legs of g
    # on kept vertices are length-zero strands handled above).
    return DirectedGraph(vertices, exceptional, iota, pi, delta, lam, beta,
                         g.loop_count + h.loop_count + closed)


def substitute_all(g: DirectedGraph, inner: Mapping[int, DirectedGraph]) -> DirectedGraph:
    """Substitute several vertices at once (equivalently: one by one)."""
    out = g
    for v in sorted(inner, reverse=True):
        out = substitute(out, v, inner[v])
    return out


# -- serialization -----------------------------------------------------------

def _flag_sort_key(f):
    # Integers numerically first, everything else after by repr, so that a
    # graph whose flags are already 0..n-1 keeps its indexing (idempotent
    # serialization).
    return (0, f, "") if isinstance(f, int) else (1, 0, repr(f))


def to_obj(g: DirectedGraph):
    flags = sorted(set().union(*g.vertices) | g.exceptional if g.vertices or g.exceptional
                   else set(), key=_flag_sort_key)
    idx = {f: i for i, f in enumerate(flags)}
    return {
        "vertices": [sorted(idx[f] for f in v) for v in g.vertices],
        "exceptional": sorted(idx[f] for f in g.exceptional),
        "iota": sorted([idx[a], idx[b]] for a, b in g.iota.items() if a != b and repr(a) < repr(b)),
        "pi": sorted([idx[a], idx[b]] for a, b in g.pi.items() if repr(a) < repr(b)),
        "delta": [[idx[f], g.delta[f]] for f in flags if f in g.delta],
        "lambda": sorted([idx[f], g.lam[f]] for f in g.lam),
        "beta": sorted([idx[f], g.beta[f]] for f in g.beta),
        "loops": g.loop_count,
    }


def from_obj(obj) -> DirectedGraph:
    iota = {}
    for a, b in obj.get("iota", []):
        iota[a], iota[b] = b, a
    pi = {}
    for a, b in obj.get("pi", []):
        pi[a], pi[b] = b, a
    loops = obj.get("loops", 0)
    loop_flags = obj.get("loop_flags")
    if loop_flags is not None:
        if loop_flags % 2:
            raise InvalidGraph(["OddLoopFlags: %d loop flags" % loop_flags])
        loops += loop_flags // 2
    return DirectedGraph(
        obj.get("vertices", []),
        obj.get("exceptional", []),
        iota, pi,
        {f: d for f, d in obj.get("delta", [])},
        {f: l for f, l in obj.get("lambda", [])},
        {f: l for f, l in obj.get("beta", [])},
        loops,
    )


def to_json(g: DirectedGraph) -> str:
    return json.dumps(to_obj(g), sort_keys=True, separators=(",", ":"))


def from_json(text: str) -> DirectedGraph:
    return from_obj(json.loads(text))


def to_dot(g: DirectedGraph) -> str:
    """GraphViz rendering: arrows run from outgoing (-1) to incoming (+1)."""
    lines = ["digraph G {"]
    for i in range(1, g.r + 1):
        lines.append('  v%d [label="v%d"];' % (i, i))
    n = 0
    for f in sorted(g.iota, key=repr):
        m = g.iota[f]
        if m == f or repr(f) > repr(m):
            continue
        src, dst = (f, m) if g.delta[f] == -1 else (m, f)
        lines.append('  v%d -> v%d [taillabel="%s", headlabel="%s"];'
                     % (g._vertex_of[src] + 1, g._vertex_of[dst] + 1,
                        g.lam[src], g.lam[dst]))
    for f in sorted(g.boundary_flags() & set(g._vertex_of), key=repr):
        n += 1
        lines.append('  b%d [shape=none, label="%s"];' % (n, g.beta[f]))
        v = g._vertex_of[f] + 1
        if g.delta[f] == 1:
            lines.append("  b%d -> v%d;" % (n, v))
        else:
            lines.append("  v%d -> b%d;" % (v, n))
    for f in sorted(g.pi, key=repr):
        if repr(f) > repr(g.pi[f]):
            continue
        m = g.pi[f]
        src, dst = (f, m) if g.delta[f] == -1 else (m, f)
        n += 1
        lines.append('  e%da [shape=none, label="%s"];' % (n, g.beta[src]))
        lines.append('  e%db [shape=none, label="%s"];' % (n, g.beta[dst]))
        lines.append("  e%da -> e%db;" % (n, n))
    for j in range(g.loop_count):
        lines.append('  loop%d [shape=point, label=""];' % (j + 1))
        lines.append("  loop%d -> loop%d;" % (j + 1, j + 1))
    lines.append("}")
    return "\n".join(lines)
