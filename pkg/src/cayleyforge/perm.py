"""Permutation-group engine: membership, orbits, stabilizers, normal structure.

Permutations act on dense 0-indexed points.  Products compose left to right:
``(p * q)(i) == q(p(i))``, so point images are written ``i^(pq) = (i^p)^q``.
Groups carry a deterministic Schreier-Sims stabilizer chain, which makes
order, membership and stabilizer queries exact and reproducible.
"""

from __future__ import annotations

import itertools
import json
import re
import threading
from dataclasses import dataclass, field


class BudgetError(RuntimeError):
    """An enumeration or search exceeded its configured budget."""


# default budgets, overridable per call
ELEMENT_ENUM_CAP = 10 ** 5
CLASS_SIZE_CAP = 10 ** 6


class Perm:
    """A permutation of {0..n-1} in image-array form."""

    __slots__ = ("images", "_hash")

    def __init__(self, images):
        images = tuple(int(x) for x in images)
        if set(images) != set(range(len(images))):
            raise ValueError("image array is not a bijection on [0, n)")
        self.images = images
        self._hash = hash(images)

    @property
    def degree(self) -> int:
        return len(self.images)

    @staticmethod
    def identity(n: int) -> "Perm":
        return Perm(range(n))

    @staticmethod
    def from_cycles(n: int, cycles) -> "Perm":
        img = list(range(n))
        for cyc in cycles:
            for a, b in zip(cyc, cyc[1:]):
                img[a] = b
            if cyc:
                img[cyc[-1]] = cyc[0]
        return Perm(img)

    @staticmethod
    def parse(text: str, n: int = 0) -> "Perm":
        """Parse cycle notation like "(0 1 2)(3 4)"; points may be comma separated."""
        cycles = []
        maxpt = -1
        body = text.strip()
        if body in ("()", ""):
            return Perm.identity(max(n, 1))
        for part in re.findall(r"\(([^()]*)\)", body):
            pts = [int(tok) for tok in re.split(r"[,\s]+", part.strip()) if tok]
            if len(set(pts)) != len(pts):
                raise ValueError(f"repeated point in cycle: ({part})")
            if pts:
                cycles.append(pts)
                maxpt = max(maxpt, max(pts))
        if not cycles and body:
            raise ValueError(f"could not parse permutation {text!r}")
        return Perm.from_cycles(max(n, maxpt + 1), cycles)

    def __mul__(self, other: "Perm") -> "Perm":
        # apply self first, then other
        o = other.images
        return Perm(o[i] for i in self.images)

    def inverse(self) -> "Perm":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Perm(inv)

    def __pow__(self, k: int) -> "Perm":
        if k < 0:
            return self.inverse() ** (-k)
        result = Perm.identity(self.degree)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conj(self, g: "Perm") -> "Perm":
        """Conjugate self^g = g^-1 * self * g."""
        return g.inverse() * self * g

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __getitem__(self, point: int) -> int:
        return self.images[point]

    def __eq__(self, other) -> bool:
        return isinstance(other, Perm) and self.images == other.images

    def __hash__(self) -> int:
        return self._hash

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def order(self) -> int:
        k = 1
        p = self
        while not p.is_identity():
            p = p * self
            k += 1
        return k

    def moved_points(self):
        return [i for i, j in enumerate(self.images) if i != j]

    def cycles(self):
        """Nontrivial cycles, each rotated to start at its smallest point."""
        seen = set()
        out = []
        for i in range(len(self.images)):
            if i in seen or self.images[i] == i:
                continue
            cyc = [i]
            j = self.images[i]
            while j != i:
                seen.add(j)
                cyc.append(j)
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def cycle_string(self) -> str:
        cycs = self.cycles()
        if not cycs:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cycs)

    def __repr__(self) -> str:
        return f"Perm{self.cycle_string()}"

    def extend(self, n: int) -> "Perm":
        """Same permutation viewed on a larger point set."""
        if n < self.degree:
            raise ValueError("cannot shrink a permutation")
        return Perm(self.images + tuple(range(self.degree, n)))


class _Level:
    """One level of a stabilizer chain.

    ``gens`` holds every strong generator fixing the base prefix above this
    level, so it generates the level's stabilizer subgroup once the chain is
    complete.  ``checked`` caches verified Schreier-generator pairs; a pair
    never needs rechecking because transversal entries are immutable and the
    chain below only grows.
    """

    __slots__ = ("point", "gens", "transversal", "checked")

    def __init__(self, point: int, identity: Perm):
        self.point = point
        self.gens: list[Perm] = []
        self.transversal: dict[int, Perm] = {point: identity}
        self.checked: set[tuple[int, Perm]] = set()

    def extend_orbit(self):
        # existing transversal entries are never replaced, keeping earlier
        # sift paths valid
        queue = sorted(self.transversal)
        while queue:
            p = queue.pop(0)
            u = self.transversal[p]
            for g in self.gens:
                t = g[p]
                if t not in self.transversal:
                    self.transversal[t] = u * g
                    queue.append(t)


class PermGroup:
    """Permutation group with a deterministic Schreier-Sims stabilizer chain.

    Base points are chosen as the smallest non-fixed points unless a
    ``base_hint`` prefix is supplied (used for point stabilizers).  The chain
    is built on first use and guarded by a lock, so concurrent readers are
    safe after construction.
    """

    def __init__(self, degree: int, generators, name: str | None = None,
                 base_hint=()):
        if degree < 1:
            raise ValueError("degree must be positive")
        gens = []
        seen = set()
        for g in generators:
            if not isinstance(g, Perm):
                g = Perm(g)
            if g.degree != degree:
                raise ValueError(
                    f"generator degree {g.degree} != group degree {degree}")
            if not g.is_identity() and g not in seen:
                seen.add(g)
                gens.append(g)
        self.degree = degree
        self.generators = tuple(gens)
        self.name = name
        self._base_hint = tuple(dict.fromkeys(base_hint))
        if any(not 0 <= p < degree for p in self._base_hint):
            raise ValueError("base hint point out of range")
        self._chain: list[_Level] | None = None
        self._lock = threading.Lock()

    # -- chain construction ------------------------------------------------

    def _build_chain(self):
        ident = Perm.identity(self.degree)
        # hint points are seeded as a base prefix even when redundant, so
        # pointwise stabilizers can be read off the chain directly
        levels: list[_Level] = [_Level(h, ident) for h in self._base_hint]

        def strip(g: Perm, start: int):
            i = start
            while i < len(levels):
                t = g[levels[i].point]
                u = levels[i].transversal.get(t)
                if u is None:
                    return g, i
                g = g * u.inverse()
                i += 1
            return g, i

        def insert(g: Perm) -> int:
            # a strong generator belongs to every level whose base prefix it
            # fixes; orbits at all those levels may grow
            m = next((idx for idx, lvl in enumerate(levels)
                      if g[lvl.point] != lvl.point), None)
            if m is None:
                levels.append(_Level(min(g.moved_points()), ident))
                m = len(levels) - 1
            for lvl in range(m + 1):
                levels[lvl].gens.append(g)
            for lvl in range(m + 1):
                levels[lvl].extend_orbit()
            return m

        for g in self.generators:
            r, _ = strip(g, 0)
            if not r.is_identity():
                insert(r)

        i = len(levels) - 1
        while i >= 0:
            level = levels[i]
            clean = True
            for p in sorted(level.transversal):
                u_p = level.transversal[p]
                for g in list(level.gens):
                    if (p, g) in level.checked:
                        continue
                    schreier = u_p * g * level.transversal[g[p]].inverse()
                    if schreier.is_identity():
                        level.checked.add((p, g))
                        continue
                    r, _ = strip(schreier, i + 1)
                    if r.is_identity():
                        level.checked.add((p, g))
                        continue
                    # r is a new strong generator strictly below level i;
                    # resume verification at its level
                    i = insert(r)
                    clean = False
                    break
                if not clean:
                    break
            if clean:
                i -= 1
        self._chain = levels

    @property
    def chain(self) -> list[_Level]:
        if self._chain is None:
            with self._lock:
                if self._chain is None:
                    self._build_chain()
        return self._chain

    def base(self) -> list[int]:
        return [lvl.point for lvl in self.chain]

    def order(self) -> int:
        n = 1
        for lvl in self.chain:
            n *= len(lvl.transversal)
        return n

    def sift(self, g: Perm) -> Perm:
        """Residue of g after stripping through the chain; identity iff g in group."""
        for lvl in self.chain:
            t = g[lvl.point]
            u = lvl.transversal.get(t)
            if u is None:
                return g
            g = g * u.inverse()
        return g

    def __contains__(self, g: Perm) -> bool:
        if g.degree != self.degree:
            return False
        return self.sift(g).is_identity()

    def __len__(self) -> int:
        return self.order()

    def __repr__(self) -> str:
        label = self.name or f"degree-{self.degree} group"
        return f"<PermGroup {label}, {len(self.generators)} gens>"

    def identity(self) -> Perm:
        return Perm.identity(self.degree)

    # -- element access ----------------------------------------------------

    def elements(self, cap: int = ELEMENT_ENUM_CAP):
        """All elements via transversal products; raises BudgetError above cap."""
        if self.order() > cap:
            raise BudgetError(
                f"group order {self.order()} exceeds enumeration cap {cap}")
        chain = self.chain
        if not chain:
            return [self.identity()]
        out = []
        transversals = [sorted(lvl.transversal.items()) for lvl in chain]
        for combo in itertools.product(*reversed(transversals)):
            el = combo[0][1]
            for _, u in combo[1:]:
                el = el * u
            out.append(el)
        return out

    def random_element(self, rng) -> Perm:
        el = self.identity()
        for lvl in reversed(self.chain):
            pts = sorted(lvl.transversal)
            el = el * lvl.transversal[rng.choice(pts)]
        return el

    # -- orbits and transitivity --------------------------------------------

    def orbit(self, point: int) -> set[int]:
        if not 0 <= point < self.degree:
            raise ValueError(f"point {point} out of range [0, {self.degree})")
        orb = {point}
        queue = [point]
        while queue:
            p = queue.pop()
            for g in self.generators:
                t = g[p]
                if t not in orb:
                    orb.add(t)
                    queue.append(t)
        return orb

    def orbits(self, domain=None) -> list[set[int]]:
        pts = range(self.degree) if domain is None else sorted(domain)
        seen: set[int] = set()
        parts = []
        for p in pts:
            if p not in seen:
                orb = self.orbit(p)
                if domain is not None:
                    orb &= set(domain) | orb  # orbit may leave the domain
                seen |= orb
                parts.append(orb)
        return parts

    def orbit_transversal(self, point: int) -> dict[int, Perm]:
        """Orbit of point with witnessing elements u mapping point to each image."""
        tr = {point: self.identity()}
        queue = [point]
        while queue:
            p = queue.pop(0)
            for g in self.generators:
                t = g[p]
                if t not in tr:
                    tr[t] = tr[p] * g
                    queue.append(t)
        return tr

    def _check_domain(self, domain) -> list[int]:
        pts = sorted(range(self.degree) if domain is None else domain)
        ptset = set(pts)
        for g in self.generators:
            if any(g[p] not in ptset for p in pts):
                raise ValueError("domain is not invariant under the group")
        return pts

    def is_transitive(self, domain=None) -> bool:
        pts = self._check_domain(domain)
        return len(self.orbit(pts[0]) & set(pts)) == len(pts)

    def is_semiregular(self, domain=None) -> bool:
        """No non-identity element fixes a point of the domain."""
        pts = self._check_domain(domain)
        remaining = set(pts)
        while remaining:
            p = min(remaining)
            orb = self.orbit(p)
            remaining -= orb
            stab = self.point_stabilizer(p)
            if any(any(g[x] != x for x in pts) for g in stab.generators):
                return False
        return True

    def is_regular(self, domain=None) -> bool:
        return self.is_transitive(domain) and self.is_semiregular(domain)

    # -- stabilizers ---------------------------------------------------------

    def point_stabilizer(self, point: int) -> "PermGroup":
        """Full stabilizer of a point, via a chain based at that point."""
        if not 0 <= point < self.degree:
            raise ValueError(f"point {point} out of range [0, {self.degree})")
        return self.pointwise_stabilizer([point])

    def pointwise_stabilizer(self, points) -> "PermGroup":
        points = list(dict.fromkeys(points))
        rooted = PermGroup(self.degree, self.generators, base_hint=points)
        chain = rooted.chain
        # the hinted points form a base prefix, so the level below them holds
        # a full generating set of the pointwise stabilizer
        if len(chain) <= len(points):
            return PermGroup(self.degree, [])
        return PermGroup(self.degree, chain[len(points)].gens)

    # -- subgroup relations ---------------------------------------------------

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return self.degree == other.degree and all(
            g in other for g in self.generators)

    def equals(self, other: "PermGroup") -> bool:
        return (self.degree == other.degree
                and self.order() == other.order()
                and self.is_subgroup_of(other))

    def is_abelian(self) -> bool:
        gens = self.generators
        return all(a * b == b * a for i, a in enumerate(gens)
                   for b in gens[i + 1:])

    # -- conjugacy ----------------------------------------------------------

    def conjugacy_class(self, g: Perm, cap: int = CLASS_SIZE_CAP) -> set[Perm]:
        """Orbit of g under conjugation by the group; capped by class size."""
        if g not in self:
            raise ValueError("element is not in the group")
        cls = {g}
        queue = [g]
        while queue:
            x = queue.pop()
            for s in self.generators:
                y = x.conj(s)
                if y not in cls:
                    if len(cls) >= cap:
                        raise BudgetError(
                            f"conjugacy class exceeds budget {cap}")
                    cls.add(y)
                    queue.append(y)
        return cls

    def centralizer_of_element(self, g: Perm,
                               cap: int = CLASS_SIZE_CAP) -> "PermGroup":
        """Centralizer via orbit-stabilizer on the conjugation orbit of g."""
        if g not in self:
            raise ValueError("element is not in the group")
        # transversal of the class orbit with witnesses, then Schreier
        # generators of the stabilizer = centralizer
        tr: dict[Perm, Perm] = {g: self.identity()}
        queue = [g]
        gens_out = []
        while queue:
            x = queue.pop(0)
            u = tr[x]
            for s in self.generators:
                y = x.conj(s)
                if y not in tr:
                    if len(tr) >= cap:
                        raise BudgetError(
                            f"conjugacy class exceeds budget {cap}")
                    tr[y] = u * s
                    queue.append(y)
                else:
                    sch = u * s * tr[y].inverse()
                    if not sch.is_identity():
                        gens_out.append(sch)
        cz = PermGroup(self.degree, gens_out)
        assert len(tr) * cz.order() == self.order(), \
            "orbit-stabilizer identity failed in centralizer computation"
        return cz

    def conjugating_element(self, a: Perm, b: Perm,
                            cap: int = CLASS_SIZE_CAP) -> Perm | None:
        """Some x in the group with a^x = b, or None if a, b are not conjugate."""
        if a not in self or b not in self:
            raise ValueError("element is not in the group")
        tr: dict[Perm, Perm] = {a: self.identity()}
        queue = [a]
        while queue:
            x = queue.pop(0)
            for s in self.generators:
                y = x.conj(s)
                if y not in tr:
                    if len(tr) >= cap:
                        raise BudgetError(
                            f"conjugacy class exceeds budget {cap}")
                    tr[y] = tr[x] * s
                    if y == b:
                        return tr[y]
                    queue.append(y)
        return tr.get(b)

    def is_conjugate(self, a: Perm, b: Perm, cap: int = CLASS_SIZE_CAP) -> bool:
        return self.conjugating_element(a, b, cap) is not None

    # -- structure ----------------------------------------------------------

    def center(self, cap: int = ELEMENT_ENUM_CAP) -> "PermGroup":
        """Center of the group.

        For transitive groups this uses the fact that central elements lie in
        the centralizer of the group in the full symmetric group, which is
        small and directly constructible.  Intransitive groups fall back to
        element enumeration under the cap.
        """
        if self.is_transitive():
            cands = centralizer_in_symmetric(self)
            central = [c for c in cands if not c.is_identity() and c in self]
            return PermGroup(self.degree, central)
        els = self.elements(cap)
        central = [x for x in els
                   if all(x * g == g * x for g in self.generators)]
        return PermGroup(self.degree, central)


def group_from_generators(degree: int, gens, name: str | None = None) -> PermGroup:
    """Build a group with a valid stabilizer chain from image-array generators."""
    return PermGroup(degree, gens, name=name)


def thin_generators(degree: int, perms) -> list[Perm]:
    """Drop generators already produced by the earlier ones (same group)."""
    kept: list[Perm] = []
    current = PermGroup(degree, [])
    for p in perms:
        if p not in current:
            kept.append(p)
            current = PermGroup(degree, kept)
    return kept


def centralizer_in_symmetric(group: PermGroup) -> list[Perm]:
    """Elements of the centralizer of a transitive group inside Sym(n).

    Each candidate is determined by the image of one point: c(p^g) = c(p)^g.
    Only the consistent candidates are returned; for a transitive group these
    form a semiregular group of order equal to the number of fixed points of
    a point stabilizer.
    """
    n = group.degree
    if not group.is_transitive():
        raise ValueError("centralizer construction requires transitivity")
    tr = group.orbit_transversal(0)
    stab = group.point_stabilizer(0)
    out = []
    for beta in range(n):
        if any(g[beta] != beta for g in stab.generators):
            continue
        img = [None] * n
        for p, u in tr.items():
            img[p] = u[beta]
        try:
            c = Perm(img)
        except ValueError:
            continue
        if all(c * g == g * c for g in group.generators):
            out.append(c)
    return out


def is_normal_in(sub: PermGroup, ambient: PermGroup) -> bool:
    """True iff sub is normal in ambient (generator-on-generator test)."""
    if not sub.is_subgroup_of(ambient):
        raise ValueError("sub is not contained in ambient")
    return all(s.conj(a) in sub
               for a in ambient.generators for s in sub.generators)


def normal_closure(sub: PermGroup, ambient: PermGroup) -> PermGroup:
    """Smallest normal subgroup of ambient containing sub.

    Conjugate-and-close over a frontier; each missing conjugate is batched so
    the stabilizer chain is rebuilt once per round rather than per generator.
    """
    if not sub.is_subgroup_of(ambient):
        raise ValueError("sub is not contained in ambient")
    gens = list(sub.generators)
    closure = PermGroup(ambient.degree, gens)
    frontier = list(gens)
    while frontier:
        new = []
        for a in ambient.generators:
            for s in frontier:
                c = s.conj(a)
                if c not in closure and not c.is_identity():
                    new.append(c)
        if new:
            gens.extend(new)
            closure = PermGroup(ambient.degree, gens)
        frontier = new
    return closure


@dataclass
class SubnormalChain:
    """Witnessed chain links[0] = sub <| links[1] <| ... <| links[-1] = ambient."""

    links: list[PermGroup]

    @property
    def defect(self) -> int:
        return len(self.links) - 1

    def verify(self) -> bool:
        return all(is_normal_in(self.links[i], self.links[i + 1])
                   for i in range(len(self.links) - 1))


@dataclass
class NotSubnormal:
    """Failure witness: the closure stabilized at a proper overgroup of sub."""

    witness: PermGroup


def subnormal_chain(sub: PermGroup, ambient: PermGroup):
    """Descending normal-closure test for subnormality.

    K_0 = ambient, K_{i+1} = normal closure of sub in K_i.  The sequence
    strictly decreases, and sub is subnormal iff it is reached; the chain is
    returned in ascending order.  On failure the stabilized overgroup is the
    witness.
    """
    if not sub.is_subgroup_of(ambient):
        raise ValueError("sub is not contained in ambient")
    descending = [ambient]
    current = ambient
    sub_order = sub.order()
    while current.order() > sub_order:
        nxt = normal_closure(sub, current)
        if nxt.order() == current.order():
            return NotSubnormal(witness=current)
        descending.append(nxt)
        current = nxt
    return SubnormalChain(links=list(reversed(descending)))


def is_frobenius(group: PermGroup, domain=None,
                 cap: int = ELEMENT_ENUM_CAP) -> bool:
    """Transitive, nontrivial point stabilizers, no element fixing two points."""
    pts = group._check_domain(domain)
    if not group.is_transitive(domain):
        raise ValueError("group is not transitive on the domain")
    stab = group.point_stabilizer(pts[0])
    if all(all(g[p] == p for p in pts) for g in stab.generators):
        return False  # regular action: trivial stabilizers
    for x in group.elements(cap):
        if x.is_identity():
            continue
        if sum(1 for p in pts if x[p] == p) >= 2:
            return False
    return True


def minimal_normal_subgroups(group: PermGroup,
                             cap: int = ELEMENT_ENUM_CAP) -> list[PermGroup]:
    """Minimal normal subgroups, via normal closures of cyclic subgroups.

    Every minimal normal subgroup is the normal closure of any of its
    non-identity elements, so scanning class representatives is exhaustive.
    """
    els = group.elements(cap)
    ident = group.identity()
    seen_class: set[Perm] = set()
    closures: list[PermGroup] = []
    for x in els:
        if x == ident or x in seen_class:
            continue
        seen_class |= group.conjugacy_class(x, cap=cap)
        ncl = normal_closure(PermGroup(group.degree, [x]), group)
        if not any(c.order() == ncl.order() and c.is_subgroup_of(ncl)
                   for c in closures):
            closures.append(ncl)
    minimal = []
    for c in closures:
        if not any(d.order() < c.order() and d.is_subgroup_of(c)
                   for d in closures):
            minimal.append(c)
    return minimal


def socle(group: PermGroup, cap: int = ELEMENT_ENUM_CAP) -> PermGroup:
    """Product of the minimal normal subgroups."""
    gens = []
    for m in minimal_normal_subgroups(group, cap):
        gens.extend(m.generators)
    return PermGroup(group.degree, gens)


# -- JSON group files --------------------------------------------------------

def group_to_json(group: PermGroup) -> dict:
    payload = {
        "degree": group.degree,
        "generators": [list(g.images) for g in group.generators],
    }
    if group.name:
        payload["name"] = group.name
    return payload


def group_from_json(payload) -> PermGroup:
    if isinstance(payload, str):
        payload = json.loads(payload)
    return PermGroup(payload["degree"],
                     [Perm(imgs) for imgs in payload["generators"]],
                     name=payload.get("name"))
