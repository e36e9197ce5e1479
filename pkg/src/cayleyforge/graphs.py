"""Graph construction: Cayley graphs, coset graphs, normal quotients.

Vertices are dense indices 0..n-1.  Cayley graphs put the group identity at
vertex 0; coset graphs put the subgroup itself at vertex 0, matching the base
vertex conventions used throughout the analysis code.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .grp import FiniteGroup
from .perm import BudgetError, Perm, PermGroup

COSET_BUDGET = 2 * 10 ** 5


class Graph:
    """Finite (di)graph with per-vertex sorted neighbor lists, no loops."""

    def __init__(self, n: int, arcs, directed: bool = False, labels=None):
        self.n = n
        self.directed = directed
        out: list[set[int]] = [set() for _ in range(n)]
        arcset = set()
        for u, v in arcs:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"arc ({u}, {v}) out of range")
            if u == v:
                raise ValueError("loops are not allowed")
            arcset.add((u, v))
            out[u].add(v)
            if not directed:
                arcset.add((v, u))
                out[v].add(u)
        if not directed:
            for u, v in list(arcset):
                if (v, u) not in arcset:
                    raise ValueError("undirected graph needs symmetric arcs")
        self._out = tuple(tuple(sorted(s)) for s in out)
        self._arcset = frozenset(arcset)
        self.labels = list(labels) if labels is not None else None

    @property
    def arcs(self) -> frozenset:
        return self._arcset

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._out[v]

    def has_arc(self, u: int, v: int) -> bool:
        return (u, v) in self._arcset

    def edges(self) -> list[tuple[int, int]]:
        """Unordered pairs for undirected graphs, arcs otherwise."""
        if self.directed:
            return sorted(self._arcset)
        return sorted({(min(u, v), max(u, v)) for u, v in self._arcset})

    def arc_count(self) -> int:
        return len(self._arcset)

    def valencies(self) -> set[int]:
        return {len(self._out[v]) for v in range(self.n)}

    @property
    def valency(self) -> int:
        vals = self.valencies()
        if len(vals) != 1:
            raise ValueError("graph is not regular")
        return vals.pop()

    def is_regular(self) -> bool:
        return len(self.valencies()) == 1

    def is_symmetric_adjacency(self) -> bool:
        return all((v, u) in self._arcset for u, v in self._arcset)

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        seen = {0}
        queue = [0]
        # treat arcs as undirected for reachability
        back: list[set[int]] = [set() for _ in range(self.n)]
        if self.directed:
            for u, v in self._arcset:
                back[v].add(u)
        while queue:
            u = queue.pop()
            steps = set(self._out[u]) | back[u]
            for v in steps:
                if v not in seen:
                    seen.add(v)
                    queue.append(v)
        return len(seen) == self.n

    def permutation_is_automorphism(self, g: Perm) -> bool:
        if g.degree != self.n:
            return False
        return all((g[u], g[v]) in self._arcset for u, v in self._arcset)

    def group_acts_as_automorphisms(self, group: PermGroup) -> bool:
        return group.degree == self.n and all(
            self.permutation_is_automorphism(g) for g in group.generators)

    # -- serialization -----------------------------------------------------

    def to_json(self) -> dict:
        payload = {
            "n": self.n,
            "directed": self.directed,
            "edges": [list(e) for e in self.edges()],
        }
        if self.labels is not None:
            payload["labels"] = self.labels
        return payload

    @staticmethod
    def from_json(payload) -> "Graph":
        if isinstance(payload, str):
            payload = json.loads(payload)
        return Graph(payload["n"], [tuple(e) for e in payload["edges"]],
                     directed=payload.get("directed", False),
                     labels=payload.get("labels"))

    def to_dot(self) -> str:
        kind, sep = ("digraph", "->") if self.directed else ("graph", "--")
        lines = [f"{kind} g {{"]
        if self.labels is not None:
            for v, lab in enumerate(self.labels):
                lines.append(f'  {v} [label="{lab}"];')
        for u, v in self.edges():
            lines.append(f"  {u} {sep} {v};")
        lines.append("}")
        return "\n".join(lines)

    def __repr__(self) -> str:
        kind = "digraph" if self.directed else "graph"
        return f"<{kind} n={self.n} arcs={len(self._arcset)}>"


# -- Cayley graphs --------------------------------------------------------------


@dataclass
class CayleyContext:
    """Vertex <-> group element correspondence for a Cayley graph.

    Vertex i is element i of the group, so vertex 0 is the identity.
    """

    group: FiniteGroup
    connection_set: frozenset[int]
    graph: Graph

    @property
    def undirected(self) -> bool:
        return not self.graph.directed

    def regular_group(self) -> PermGroup:
        from .grp import right_regular_rep
        return right_regular_rep(self.group)

    def left_regular_group(self) -> PermGroup:
        from .grp import left_regular_rep
        return left_regular_rep(self.group)


def cayley_graph(group: FiniteGroup, connection_set) -> tuple[Graph, CayleyContext]:
    """Cayley graph: arc (x, y) iff y * x^-1 is in the connection set."""
    s = frozenset(int(x) for x in connection_set)
    if 0 in s:
        raise ValueError("the connection set may not contain the identity")
    if not all(0 < x < group.n for x in s):
        raise ValueError("connection set is not a subset of the group")
    inverse_closed = all(group.inverse(x) in s for x in s)
    arcs = []
    for x in range(group.n):
        for g in s:
            arcs.append((x, group.mul(g, x)))  # y = g*x satisfies y x^-1 = g
    graph = Graph(group.n, arcs, directed=not inverse_closed,
                  labels=list(group.labels))
    return graph, CayleyContext(group=group, connection_set=s, graph=graph)


# -- coset graphs ----------------------------------------------------------------


def _canonical_rep(h_chain, x: Perm) -> Perm:
    """Canonical representative of the right coset Hx.

    Walk the stabilizer chain of H; at each level pick the transversal element
    steering the base point image to the smallest available value.  Point
    images are distinct, so the choice is unique and coset-invariant.
    """
    for level in h_chain:
        tr = level.transversal
        if len(tr) > 1:
            best = min(tr, key=lambda p: x[p])
            x = tr[best] * x
        # single-point levels leave x unchanged (transversal holds identity)
    return x


@dataclass
class CosetContext:
    """Coset enumeration data: representatives, index map, and the vertex action."""

    ambient: PermGroup
    subgroup: PermGroup
    gset: tuple[Perm, ...]
    reps: list[Perm]
    index: dict[tuple, int]
    action_gens: list[Perm]  # ambient generators acting on coset indices
    graph: Graph

    def coset_index(self, x: Perm) -> int:
        rep = _canonical_rep(self.subgroup.chain, x)
        return self.index[rep.images]

    def action_group(self) -> PermGroup:
        return PermGroup(len(self.reps), self.action_gens,
                         name=f"{self.ambient.name or 'X'}-on-cosets")


def coset_enumeration(x_grp: PermGroup, h_grp: PermGroup,
                      budget: int = COSET_BUDGET):
    """Right cosets of H in X by orbit of the subgroup pointer.

    Returns (reps, index, action generator images).
    """
    if not h_grp.is_subgroup_of(x_grp):
        raise ValueError("H is not a subgroup of X")
    chain = h_grp.chain
    start = _canonical_rep(chain, x_grp.identity())
    reps = [start]
    index = {start.images: 0}
    queue = [0]
    while queue:
        i = queue.pop(0)
        for g in x_grp.generators:
            rep = _canonical_rep(chain, reps[i] * g)
            if rep.images not in index:
                if len(reps) >= budget:
                    raise BudgetError(
                        f"coset count exceeds budget {budget}")
                index[rep.images] = len(reps)
                reps.append(rep)
                queue.append(len(reps) - 1)
    action = []
    for g in x_grp.generators:
        images = [index[_canonical_rep(chain, rep * g).images] for rep in reps]
        action.append(Perm(images))
    return reps, index, action


def coset_graph(x_grp: PermGroup, h_grp: PermGroup, gset,
                budget: int = COSET_BUDGET) -> tuple[Graph, CosetContext]:
    """Coset graph: Hx ~ Hy iff y x^-1 lies in H gset H.

    H must be core-free in X (the coset action must be faithful).  The arc
    set is the closure of the seed arcs (H, Hs) under the vertex action of X.
    """
    gset = tuple(gset)
    if not gset:
        raise ValueError("gset must be nonempty")
    for g in gset:
        if g not in x_grp:
            raise ValueError("gset element is not in X")
    reps, index, action = coset_enumeration(x_grp, h_grp, budget)
    m = len(reps)
    action_group = PermGroup(m, action)
    if action_group.order() != x_grp.order():
        raise ValueError("H is not core-free in X (coset action not faithful)")

    chain = h_grp.chain
    seeds = set()
    base = index[_canonical_rep(chain, x_grp.identity()).images]
    for g in gset:
        tgt = index[_canonical_rep(chain, g).images]
        if tgt == base:
            continue  # g in H contributes no arc
        seeds.add((base, tgt))
    arcs = set(seeds)
    queue = list(seeds)
    while queue:
        u, v = queue.pop()
        for a in action:
            arc = (a[u], a[v])
            if arc not in arcs:
                arcs.add(arc)
                queue.append(arc)
    directed = any((v, u) not in arcs for u, v in arcs)
    graph = Graph(m, arcs, directed=directed)
    ctx = CosetContext(ambient=x_grp, subgroup=h_grp, gset=gset, reps=reps,
                       index=index, action_gens=action, graph=graph)
    return graph, ctx


def coset_graph_connected(x_grp: PermGroup, h_grp: PermGroup, gset) -> bool:
    """Connectivity criterion: <H, gset> = X."""
    gset = tuple(gset)
    if not h_grp.is_subgroup_of(x_grp):
        raise ValueError("H is not a subgroup of X")
    for g in gset:
        if g not in x_grp:
            raise ValueError("gset element is not in X")
    joined = PermGroup(x_grp.degree, list(h_grp.generators) + list(gset))
    return joined.order() == x_grp.order()


# -- normal quotients -------------------------------------------------------------


@dataclass
class NormalQuotient:
    quotient: Graph
    block_of: list[int]
    blocks: list[list[int]]
    action: PermGroup  # induced action of Y on the blocks
    is_cover: bool


def normal_quotient(graph: Graph, y_grp: PermGroup,
                    n_grp: PermGroup) -> NormalQuotient:
    """Quotient of the graph by the orbits of a normal subgroup N of Y.

    Requires N normal in Y with at least three orbits and Y acting as
    automorphisms.  Blocks are adjacent when any representatives are; the
    quotient is a cover when the valency is preserved.
    """
    from .perm import is_normal_in

    if not graph.group_acts_as_automorphisms(y_grp):
        raise ValueError("Y does not act as automorphisms of the graph")
    if not is_normal_in(n_grp, y_grp):
        raise ValueError("N is not normal in Y")
    orbits = n_grp.orbits()
    if len(orbits) < 3:
        raise ValueError(
            f"N has {len(orbits)} orbits; at least three are required")
    blocks = [sorted(o) for o in orbits]
    blocks.sort()
    block_of = [0] * graph.n
    for bi, block in enumerate(blocks):
        for v in block:
            block_of[v] = bi
    arcs = set()
    for u, v in graph.arcs:
        bu, bv = block_of[u], block_of[v]
        if bu != bv:
            arcs.add((bu, bv))
    quotient = Graph(len(blocks), arcs, directed=graph.directed)
    action_gens = []
    for g in y_grp.generators:
        images = [block_of[g[block[0]]] for block in blocks]
        action_gens.append(Perm(images))
    action = PermGroup(len(blocks), action_gens)
    cover = (graph.is_regular() and quotient.is_regular()
             and graph.valency == quotient.valency)
    return NormalQuotient(quotient=quotient, block_of=block_of, blocks=blocks,
                          action=action, is_cover=cover)


def is_complete_bipartite(graph: Graph):
    """Part sizes (a, b) if the graph is complete bipartite, else None."""
    if graph.directed or graph.n < 2:
        return None
    part_a = {0} | {v for v in range(graph.n) if not graph.has_arc(0, v) and v != 0}
    part_b = set(range(graph.n)) - part_a
    if not part_b:
        return None
    for u in range(graph.n):
        inside = part_a if u in part_a else part_b
        other = part_b if u in part_a else part_a
        if set(graph.neighbors(u)) != other:
            return None
        if any(graph.has_arc(u, w) for w in inside if w != u):
            return None
    sizes = sorted((len(part_a), len(part_b)))
    return (sizes[0], sizes[1])
