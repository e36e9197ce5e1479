"""Transitivity analysis, local actions, and double-coset criteria.

All transitivity flags are orbit counts on explicitly enumerated vertex,
edge, arc, and 2-arc sets; exact at desk scale.  The property checks at the
bottom each verify one theorem-backed implication on a concrete instance and
report a counterexample witness instead of asserting.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .graphs import CosetContext, Graph, coset_graph
from .grp import FiniteGroup, GroupAutomorphism, inner_automorphism
from .perm import (
    BudgetError,
    NotSubnormal,
    Perm,
    PermGroup,
    is_normal_in,
    subnormal_chain,
)


def _orbit_count(items, gens, apply_fn) -> int:
    """Number of orbits of the group generated by gens on the item set."""
    remaining = set(items)
    count = 0
    while remaining:
        seed = remaining.pop()
        count += 1
        queue = [seed]
        while queue:
            x = queue.pop()
            for g in gens:
                y = apply_fn(x, g)
                if y in remaining:
                    remaining.remove(y)
                    queue.append(y)
    return count


def two_arcs(graph: Graph):
    """Ordered paths (u, v, w) with u != w; size n*k*(k-1) for k-regular graphs."""
    out = []
    for v in range(graph.n):
        nbrs = graph.neighbors(v)
        for u in nbrs:
            for w in nbrs:
                if u != w:
                    out.append((u, v, w))
    return out


@dataclass
class LocalAction:
    """Restriction of a vertex stabilizer to the neighborhood of the vertex."""

    vertex: int
    neighbors: tuple[int, ...]
    restriction: PermGroup
    stabilizer_order: int
    kernel_order: int

    @property
    def order(self) -> int:
        return self.restriction.order()

    def is_transitive(self) -> bool:
        return self.restriction.is_transitive() if self.neighbors else True

    def is_semiregular(self) -> bool:
        return self.restriction.is_semiregular() if self.neighbors else True

    def is_faithful(self) -> bool:
        return self.kernel_order == 1

    def is_primitive(self) -> bool:
        return _is_primitive(self.restriction)


def local_action(graph: Graph, y_grp: PermGroup, v: int) -> LocalAction:
    """Stabilizer Y_v acting on the neighbor list of v, plus the kernel order."""
    if not 0 <= v < graph.n:
        raise ValueError("vertex out of range")
    nbrs = graph.neighbors(v)
    pos = {w: i for i, w in enumerate(nbrs)}
    stab = y_grp.point_stabilizer(v)
    restricted = []
    for g in stab.generators:
        restricted.append(Perm([pos[g[w]] for w in nbrs]))
    restriction = PermGroup(max(len(nbrs), 1), restricted)
    stab_order = stab.order()
    kernel = stab_order // restriction.order()
    return LocalAction(vertex=v, neighbors=nbrs, restriction=restriction,
                       stabilizer_order=stab_order, kernel_order=kernel)


def _is_primitive(group: PermGroup) -> bool:
    """Transitive with no nontrivial block system (minimal-block closure)."""
    n = group.degree
    if n <= 2:
        return group.is_transitive()
    if not group.is_transitive():
        return False
    for beta in range(1, n):
        if _minimal_block_size(group, 0, beta) not in (1, n):
            return False
    return True


def _minimal_block_size(group: PermGroup, a: int, b: int) -> int:
    """Size of the minimal block containing {a, b} (union-find closure)."""
    n = group.degree
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[max(rx, ry)] = min(rx, ry)
            return True
        return False

    union(a, b)
    queue = [(a, b)]
    while queue:
        x, y = queue.pop()
        for g in group.generators:
            gx, gy = g[x], g[y]
            if union(gx, gy):
                queue.append((gx, gy))
    root = find(a)
    return sum(1 for x in range(n) if find(x) == root)


@dataclass
class SymmetryReport:
    """Transitivity flags of a graph relative to a named automorphism group."""

    n: int
    group_order: int
    group_name: str | None
    valency: int | None
    vertex_transitive: bool
    edge_transitive: bool
    arc_transitive: bool
    two_arc_transitive: bool | None
    classification: str
    orbit_counts: dict
    local: dict | None = None
    regular_subgroup_normal: bool | None = None
    subnormal_defect: int | None = None
    subnormal: bool | None = None

    def to_json(self) -> dict:
        payload = {
            "n": self.n,
            "group_order": self.group_order,
            "group_name": self.group_name,
            "valency": self.valency,
            "vertex_transitive": self.vertex_transitive,
            "edge_transitive": self.edge_transitive,
            "arc_transitive": self.arc_transitive,
            "two_arc_transitive": self.two_arc_transitive,
            "classification": self.classification,
            "orbit_counts": self.orbit_counts,
        }
        if self.local is not None:
            payload["local_action"] = self.local
        if self.regular_subgroup_normal is not None:
            payload["regular_subgroup_normal"] = self.regular_subgroup_normal
            payload["subnormal"] = self.subnormal
            payload["subnormal_defect"] = self.subnormal_defect
        return payload


def transitivity_suite(graph: Graph, y_grp: PermGroup,
                       regular_subgroup: PermGroup | None = None,
                       base_vertex: int = 0,
                       skip_two_arcs: bool = False) -> SymmetryReport:
    """Orbit counts of Y on vertices, edges, arcs, and 2-arcs.

    Y must act as automorphisms.  2-arc analysis needs symmetric adjacency
    and a connected graph; it is skipped (flag None) when unavailable.
    """
    if not graph.group_acts_as_automorphisms(y_grp):
        raise ValueError("Y does not act as automorphisms of the graph")
    gens = y_grp.generators

    vertex_orbits = len(y_grp.orbits())
    edge_items = {frozenset(e) for e in graph.edges()} if not graph.directed \
        else set(graph.arcs)
    if graph.directed and not graph.is_symmetric_adjacency():
        raise ValueError(
            "arc analysis needs symmetric adjacency; close the graph first")

    def apply_edge(e, g):
        a, b = tuple(e)
        return frozenset((g[a], g[b]))

    def apply_arc(arc, g):
        return (g[arc[0]], g[arc[1]])

    def apply_two_arc(t, g):
        return (g[t[0]], g[t[1]], g[t[2]])

    edge_orbits = _orbit_count(edge_items, gens, apply_edge) if edge_items else 0
    arc_orbits = _orbit_count(set(graph.arcs), gens, apply_arc) if graph.arcs else 0

    two_arc_orbits = None
    if not skip_two_arcs and graph.is_connected():
        tas = two_arcs(graph)
        two_arc_orbits = _orbit_count(set(tas), gens, apply_two_arc) if tas else 0

    vertex_transitive = vertex_orbits == 1
    edge_transitive = edge_orbits == 1
    arc_transitive = arc_orbits == 1
    two_arc_transitive = (two_arc_orbits == 1) if two_arc_orbits is not None else None

    if not edge_transitive:
        classification = "not-edge-transitive"
    elif arc_transitive:
        classification = "symmetric"
    elif vertex_transitive:
        classification = "half-symmetric"
    else:
        classification = "semi-symmetric"

    local = None
    if graph.n:
        la = local_action(graph, y_grp, base_vertex)
        local = {
            "vertex": base_vertex,
            "order": la.order,
            "kernel_order": la.kernel_order,
            "transitive": la.is_transitive(),
            "semiregular": la.is_semiregular(),
            "primitive": la.is_primitive(),
        }

    report = SymmetryReport(
        n=graph.n,
        group_order=y_grp.order(),
        group_name=y_grp.name,
        valency=graph.valency if graph.is_regular() else None,
        vertex_transitive=vertex_transitive,
        edge_transitive=edge_transitive,
        arc_transitive=arc_transitive,
        two_arc_transitive=two_arc_transitive,
        classification=classification,
        orbit_counts={
            "vertices": vertex_orbits,
            "edges": edge_orbits,
            "arcs": arc_orbits,
            "two_arcs": two_arc_orbits,
        },
        local=local,
    )

    if regular_subgroup is not None:
        report.regular_subgroup_normal = is_normal_in(regular_subgroup, y_grp)
        chain = subnormal_chain(regular_subgroup, y_grp)
        if isinstance(chain, NotSubnormal):
            report.subnormal = False
            report.subnormal_defect = None
        else:
            report.subnormal = True
            report.subnormal_defect = chain.defect
    return report


# -- double cosets -----------------------------------------------------------


def double_coset_arc_criterion(x_grp: PermGroup, h_grp: PermGroup, g: Perm,
                               cap: int = 10 ** 5) -> bool:
    """True iff HgH = Hg^-1H, i.e. g^-1 = h1*g*h2 for some h1, h2 in H.

    Tested by membership of the coset Hg^-1 in the coset orbit {Hgh: h in H}.
    """
    if g not in x_grp:
        raise ValueError("g is not in X")
    if not h_grp.is_subgroup_of(x_grp):
        raise ValueError("H is not a subgroup of X")
    chain = h_grp.chain
    from .graphs import _canonical_rep
    target = _canonical_rep(chain, g.inverse()).images
    for h in h_grp.elements(cap):
        if _canonical_rep(chain, g * h).images == target:
            return True
    return False


@dataclass
class InducedRefusal:
    """Why a candidate map fails to induce a coset-graph automorphism."""

    reason: str
    witness: object = None


def induced_coset_automorphism(ctx: CosetContext, sigma):
    """Vertex map Hx -> H sigma(x) for an automorphism sigma of X fixing H.

    sigma is a callable on group elements.  It must normalize H and fix the
    arc double coset setwise; otherwise an InducedRefusal with a witness is
    returned.  The returned permutation is verified to preserve adjacency.
    """
    h_grp = ctx.subgroup
    x_grp = ctx.ambient
    for hg in h_grp.generators:
        img = sigma(hg)
        if img not in h_grp:
            return InducedRefusal(reason="sigma does not normalize H",
                                  witness=hg)
    for a in x_grp.generators:
        ia = sigma(a)
        if ia not in x_grp:
            return InducedRefusal(reason="sigma does not preserve X", witness=a)
        for b in x_grp.generators:
            if sigma(a * b) != sigma(a) * sigma(b):
                return InducedRefusal(reason="sigma is not multiplicative",
                                      witness=(a, b))
    images = [ctx.coset_index(sigma(rep)) for rep in ctx.reps]
    try:
        vertex_map = Perm(images)
    except ValueError:
        return InducedRefusal(reason="induced map is not a bijection")
    graph = ctx.graph
    for u, v in graph.arcs:
        if (vertex_map[u], vertex_map[v]) not in graph.arcs:
            return InducedRefusal(
                reason="sigma does not fix the arc double coset",
                witness=(u, v))
    return vertex_map


def conjugation_automorphism(a: Perm):
    """The inner automorphism x -> a^-1 x a as a callable."""
    a_inv = a.inverse()

    def sigma(x: Perm) -> Perm:
        return a_inv * x * a

    return sigma


# -- theorem-backed property checks -------------------------------------------


@dataclass
class CheckResult:
    """Outcome of a single property check on one instance."""

    name: str
    instance: str
    ok: bool
    counterexample: bool = False
    skipped: bool = False
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "check": self.name,
            "instance": self.instance,
            "ok": self.ok,
            "counterexample": self.counterexample,
            "skipped": self.skipped,
            "details": self.details,
        }


def check_semiregular_local_faithful(graph: Graph, y_grp: PermGroup,
                                     n_grp: PermGroup, v: int = 0,
                                     instance: str = "") -> CheckResult:
    """Normal vertex-transitive context: semiregular local action of N at v
    forces N_v to act faithfully on the neighborhood.
    """
    name = "semiregular-local-faithful"
    if not graph.is_connected():
        raise ValueError("graph must be connected")
    if not y_grp.is_transitive():
        raise ValueError("Y must be vertex transitive")
    if not is_normal_in(n_grp, y_grp):
        raise ValueError("N must be normal in Y")
    la = local_action(graph, n_grp, v)
    premise = la.is_semiregular()
    if not premise:
        return CheckResult(name, instance, ok=True,
                           details={"premise": False})
    conclusion = la.kernel_order == 1
    return CheckResult(name, instance, ok=conclusion,
                       counterexample=not conclusion,
                       details={"premise": True,
                                "kernel_order": la.kernel_order,
                                "stabilizer_order": la.stabilizer_order})


def is_holomorph_cayley(graph: Graph, x_grp: PermGroup,
                        group: FiniteGroup) -> bool:
    """Does X contain every inner automorphism of G as a vertex map fixing 0?"""
    for c in group.generating_set():
        conj_map = Perm(inner_automorphism(group, c).images)
        if conj_map not in x_grp:
            return False
    return True


def check_holomorph_edge_stabilizer(group: FiniteGroup, connection_set,
                                    beta: int,
                                    instance: str = "") -> CheckResult:
    """In H = <G^R, G^L>, the stabilizer of (identity, beta) is the image of
    the centralizer of beta under conjugation; exact equality of orders holds
    when the center is trivial, and the center collapses otherwise.
    """
    from .grp import inner_closure

    name = "holomorph-edge-stabilizer"
    s = frozenset(connection_set)
    if beta not in s:
        raise ValueError("beta must lie in the connection set")
    h = inner_closure(group)
    stab = h.pointwise_stabilizer([0, beta])
    cz = group.centralizer_of(beta)
    center = group.center()
    collapsed = len(cz) // len(center)  # Z(G) <= C_G(beta)
    stab_order = stab.order()
    # element-wise identification: each stabilizer element is conjugation by
    # some centralizing element, and all such conjugations appear
    conj_maps = {Perm(inner_automorphism(group, c).images) for c in cz}
    elementwise = (set(stab.elements()) == conj_maps) \
        if stab_order <= 10 ** 4 else None
    holds_exact = stab_order == len(cz)
    holds_mod_center = stab_order == collapsed
    ok = holds_mod_center and (elementwise is not False)
    return CheckResult(
        name, instance, ok=ok, counterexample=not ok,
        details={
            "stabilizer_order": stab_order,
            "centralizer_order": len(cz),
            "center_order": len(center),
            "holds_exact": holds_exact,
            "holds_mod_center": holds_mod_center,
            "degenerate_center": len(center) > 1,
            "elementwise_identification": elementwise,
        })


def check_transitive_subnormal_dichotomy(graph: Graph, y_grp: PermGroup,
                                         h_grp: PermGroup, v: int = 0,
                                         instance: str = "") -> CheckResult:
    """2-arc transitive context, H subnormal and vertex transitive:
    either the local action of H is center-free and H is arc transitive,
    or H_v is abelian, faithful and semiregular on the neighborhood.
    """
    name = "transitive-subnormal-dichotomy"
    suite = transitivity_suite(graph, y_grp)
    if suite.two_arc_transitive is not True:
        return CheckResult(name, instance, ok=True, skipped=True,
                           details={"reason": "not 2-arc transitive"})
    chain = subnormal_chain(h_grp, y_grp)
    if isinstance(chain, NotSubnormal):
        return CheckResult(name, instance, ok=True, skipped=True,
                           details={"reason": "H not subnormal in Y"})
    if not h_grp.is_transitive():
        return CheckResult(name, instance, ok=True, skipped=True,
                           details={"reason": "H not vertex transitive"})
    la = local_action(graph, h_grp, v)
    h_arc_transitive = la.is_transitive()  # with vertex transitivity
    branch1 = False
    if h_arc_transitive:
        center_order = la.restriction.center().order()
        branch1 = center_order == 1
    h_v = h_grp.point_stabilizer(v)
    branch2 = (h_v.is_abelian() and la.is_faithful() and la.is_semiregular())
    ok = branch1 or branch2
    return CheckResult(
        name, instance, ok=ok, counterexample=not ok,
        details={
            "h_arc_transitive": h_arc_transitive,
            "branch_center_free_arc_transitive": branch1,
            "branch_abelian_faithful_semiregular": branch2,
            "stabilizer_order": h_v.order(),
            "vacuous": h_v.order() == 1,
        })


def check_mutually_normalizing_regular_pair(g1: PermGroup, g2: PermGroup,
                                            cap: int = 10 ** 5,
                                            instance: str = "") -> CheckResult:
    """Regular subgroups normalizing each other with G1/(G1 n G2) abelian
    must coincide.
    """
    name = "mutually-normalizing-regular-pair"
    if not (g1.is_regular() and g2.is_regular()):
        raise ValueError("both groups must be regular on the domain")
    if not all(a.conj(b) in g1 for a in g1.generators for b in g2.generators):
        raise ValueError("G2 does not normalize G1")
    if not all(b.conj(a) in g2 for b in g2.generators for a in g1.generators):
        raise ValueError("G1 does not normalize G2")
    intersection = [x for x in g1.elements(cap) if x in g2]
    c_grp = PermGroup(g1.degree, [x for x in intersection if not x.is_identity()])
    # G1/C abelian iff all generator commutators land in C
    abelian_quotient = all(
        (a.inverse() * b.inverse() * a * b) in c_grp
        for a in g1.generators for b in g1.generators)
    if not abelian_quotient:
        return CheckResult(name, instance, ok=True,
                           details={"premise": False,
                                    "intersection_order": c_grp.order()})
    conclusion = g1.equals(g2)
    return CheckResult(name, instance, ok=conclusion,
                       counterexample=not conclusion,
                       details={"premise": True,
                                "intersection_order": c_grp.order(),
                                "conclusion": conclusion})


def results_to_json(results) -> str:
    return json.dumps([r.to_json() for r in results], indent=2, sort_keys=True)
