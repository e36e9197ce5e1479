"""Concrete finite groups: builders, automorphisms, regular representations.

A FiniteGroup is a multiplication table over element indices 0..m-1 with
element 0 the identity.  The table carrier supports Cayley graphs and the
automorphism backtracking search; large groups that only need a permutation
action (the Suzuki groups) are built directly as PermGroup values.
"""

from __future__ import annotations

import itertools

import numpy as np

from .perm import BudgetError, Perm, PermGroup

TABLE_BUDGET = 10 ** 4
AUT_SEARCH_BUDGET = 200


class FiniteGroup:
    """Finite group backed by a full multiplication table."""

    def __init__(self, table, labels=None, name: str | None = None):
        table = np.asarray(table, dtype=np.int32)
        if table.ndim != 2 or table.shape[0] != table.shape[1]:
            raise ValueError("multiplication table must be square")
        self.table = table
        self.n = table.shape[0]
        self.name = name or f"group-of-order-{self.n}"
        self.labels = list(labels) if labels is not None else [
            str(i) for i in range(self.n)]
        if len(self.labels) != self.n:
            raise ValueError("label count does not match order")
        self._verify_axioms()
        rows, cols = np.nonzero(table == 0)
        self.inv = np.empty(self.n, dtype=np.int32)
        self.inv[rows] = cols

    def _verify_axioms(self):
        t = self.table
        n = self.n
        if t.size and (t.min() < 0 or t.max() >= n):
            raise ValueError("table entries out of range")
        if not (np.array_equal(t[0], np.arange(n))
                and np.array_equal(t[:, 0], np.arange(n))):
            raise ValueError("element 0 is not an identity")
        # every row and column must be a permutation (Latin square),
        # which together with associativity gives inverses
        expect = np.tile(np.arange(n, dtype=t.dtype), (n, 1))
        if not (np.array_equal(np.sort(t, axis=1), expect)
                and np.array_equal(np.sort(t, axis=0), expect.T)):
            raise ValueError("table is not a Latin square")
        # Light's test: associativity on a generating set implies associativity
        for g in self.generating_set(_skip_axiom_check=True):
            left = t[t[:, g], :]
            right = t[:, t[g, :]]
            if not np.array_equal(left, right):
                raise ValueError("table is not associative")

    # -- element arithmetic --------------------------------------------------

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inverse(self, a: int) -> int:
        return int(self.inv[a])

    def conj(self, a: int, g: int) -> int:
        """a^g = g^-1 * a * g."""
        return self.mul(self.mul(self.inverse(g), a), g)

    def power(self, a: int, k: int) -> int:
        if k < 0:
            return self.power(self.inverse(a), -k)
        result = 0
        while k:
            if k & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            k >>= 1
        return result

    def order_of(self, a: int) -> int:
        k = 1
        x = a
        while x != 0:
            x = self.mul(x, a)
            k += 1
        return k

    def element_orders(self) -> list[int]:
        return [self.order_of(i) for i in range(self.n)]

    def involutions(self) -> list[int]:
        return [i for i in range(1, self.n) if self.table[i, i] == 0]

    def is_abelian(self) -> bool:
        return np.array_equal(self.table, self.table.T)

    def center(self) -> list[int]:
        return [i for i in range(self.n)
                if np.array_equal(self.table[i], self.table[:, i])]

    def centralizer_of(self, b: int) -> list[int]:
        return np.nonzero(self.table[:, b] == self.table[b, :])[0].tolist()

    def conjugacy_class_of(self, a: int) -> set[int]:
        cls = {a}
        queue = [a]
        while queue:
            x = queue.pop()
            for g in range(self.n):
                y = self.conj(x, g)
                if y not in cls:
                    cls.add(y)
                    queue.append(y)
        return cls

    def subgroup_closure(self, seeds) -> set[int]:
        closed = {0} | set(seeds)
        queue = list(closed)
        while queue:
            x = queue.pop()
            for s in seeds:
                for y in (self.mul(x, s), self.mul(s, x)):
                    if y not in closed:
                        closed.add(y)
                        queue.append(y)
        return closed

    def generating_set(self, _skip_axiom_check: bool = False) -> list[int]:
        """Small generating set, chosen greedily and deterministically."""
        gens: list[int] = []
        closed = {0}
        ptr = 1
        while len(closed) < self.n:
            while ptr in closed:
                ptr += 1
            gens.append(ptr)
            if _skip_axiom_check:
                # left-to-right word closure; does not presume associativity
                closed = {0}
                queue = [0]
                while queue:
                    x = queue.pop()
                    for s in gens:
                        y = int(self.table[x, s])
                        if y not in closed:
                            closed.add(y)
                            queue.append(y)
            else:
                closed = self.subgroup_closure(gens)
        return gens

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        return f"<FiniteGroup {self.name}, order {self.n}>"

    # -- regular representations ---------------------------------------------

    def right_translation(self, g: int) -> Perm:
        """x -> x*g as a permutation of element indices."""
        return Perm(self.table[:, g])

    def left_translation(self, g: int) -> Perm:
        """x -> g^-1 * x as a permutation of element indices."""
        return Perm(self.table[self.inverse(g), :])


def _table_from_elements(elements, mul, name=None, labels=None) -> FiniteGroup:
    """Build a table group from hashable element objects; identity first."""
    n = len(elements)
    if n > TABLE_BUDGET:
        raise BudgetError(f"group order {n} exceeds table budget {TABLE_BUDGET}")
    index = {e: i for i, e in enumerate(elements)}
    if len(index) != n:
        raise ValueError("duplicate elements")
    table = np.empty((n, n), dtype=np.int32)
    for i, a in enumerate(elements):
        for j, b in enumerate(elements):
            table[i, j] = index[mul(a, b)]
    return FiniteGroup(table, labels=labels, name=name)


# -- builders -----------------------------------------------------------------


def trivial() -> FiniteGroup:
    return FiniteGroup([[0]], labels=["e"], name="1")


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError("order must be positive")
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    return FiniteGroup(table, name=f"Z{n}")


def elementary_abelian(p: int, d: int) -> FiniteGroup:
    if not _is_prime(p) or d < 1:
        raise ValueError("need a prime p and d >= 1")
    elements = list(itertools.product(range(p), repeat=d))
    elements.sort()
    assert elements[0] == (0,) * d

    def mul(a, b):
        return tuple((x + y) % p for x, y in zip(a, b))

    labels = ["+".join(map(str, e)) for e in elements]
    return _table_from_elements(elements, mul, name=f"Z{p}^{d}", labels=labels)


def generalized_inversion_product(p: int, d: int) -> FiniteGroup:
    """Z_p^d extended by an involution inverting every vector."""
    if not _is_prime(p) or p == 2 or d < 1:
        raise ValueError("need an odd prime p and d >= 1")
    vecs = sorted(itertools.product(range(p), repeat=d))
    elements = [(v, e) for e in (0, 1) for v in vecs]

    def mul(a, b):
        (v, e), (w, f) = a, b
        if e == 0:
            return (tuple((x + y) % p for x, y in zip(v, w)), f)
        return (tuple((x - y) % p for x, y in zip(v, w)), 1 - f)

    labels = ["{}|{}".format("+".join(map(str, v)), e) for v, e in elements]
    return _table_from_elements(elements, mul,
                                name=f"Z{p}^{d}:Z2", labels=labels)


def dihedral(n: int) -> FiniteGroup:
    """Dihedral group of order 2n."""
    if n < 1:
        raise ValueError("n must be positive")
    elements = [(k, e) for e in (0, 1) for k in range(n)]

    def mul(a, b):
        (k, e), (l, f) = a, b
        if e == 0:
            return ((k + l) % n, f)
        return ((k - l) % n, 1 - f)

    labels = [f"r{k}" if e == 0 else f"r{k}s" for k, e in elements]
    return _table_from_elements(elements, mul, name=f"D{n}", labels=labels)


def dicyclic(m: int) -> FiniteGroup:
    """Dicyclic group of order 4m: <a, b | a^{2m}=1, b^2=a^m, a^b=a^-1>."""
    if m < 2:
        raise ValueError("m must be at least 2")
    elements = [(k, e) for e in (0, 1) for k in range(2 * m)]

    def mul(a, b):
        (k, e), (l, f) = a, b
        if e == 0:
            return ((k + l) % (2 * m), f)
        if f == 0:
            return ((k - l) % (2 * m), 1)
        return ((k - l + m) % (2 * m), 0)

    labels = [f"a{k}" if e == 0 else f"a{k}b" for k, e in elements]
    return _table_from_elements(elements, mul, name=f"Dic{m}", labels=labels)


def quaternion() -> FiniteGroup:
    g = dicyclic(2)
    g.name = "Q8"
    return g


def symmetric(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError("n must be positive")
    elements = sorted(itertools.permutations(range(n)))
    ident = tuple(range(n))
    elements.remove(ident)
    elements.insert(0, ident)

    def mul(a, b):
        return tuple(b[x] for x in a)

    return _table_from_elements(elements, mul, name=f"Sym{n}",
                                labels=[str(e) for e in elements])


def alternating(n: int) -> FiniteGroup:
    if n < 3:
        raise ValueError("n must be at least 3")
    elements = [p for p in itertools.permutations(range(n)) if _sign(p) == 1]
    ident = tuple(range(n))
    elements.remove(ident)
    elements.sort()
    elements.insert(0, ident)

    def mul(a, b):
        return tuple(b[x] for x in a)

    return _table_from_elements(elements, mul, name=f"Alt{n}",
                                labels=[str(e) for e in elements])


def direct_product(a: FiniteGroup, b: FiniteGroup) -> FiniteGroup:
    n, m = a.n, b.n
    if n * m > TABLE_BUDGET:
        raise BudgetError(f"order {n * m} exceeds table budget {TABLE_BUDGET}")
    # index (i, j) -> i*m + j
    ia, ja = np.divmod(np.arange(n * m, dtype=np.int32), np.int32(m))
    table = a.table[np.ix_(ia, ia)] * np.int32(m) + b.table[np.ix_(ja, ja)]
    labels = [f"({a.labels[i]},{b.labels[j]})" for i in range(n) for j in range(m)]
    return FiniteGroup(table, labels=labels, name=f"{a.name}x{b.name}")


def direct_power(t: FiniteGroup, l: int) -> FiniteGroup:
    if l < 1:
        raise ValueError("l must be positive")
    if t.n ** l > TABLE_BUDGET:
        raise BudgetError(f"order {t.n ** l} exceeds table budget {TABLE_BUDGET}")
    out = t
    for _ in range(l - 1):
        out = direct_product(out, t)
    out.name = f"{t.name}^{l}"
    return out


def _sign(p) -> int:
    seen = [False] * len(p)
    sign = 1
    for i in range(len(p)):
        if seen[i]:
            continue
        j = p[i]
        length = 1
        seen[i] = True
        while j != i:
            seen[j] = True
            j = p[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    k = 2
    while k * k <= p:
        if p % k == 0:
            return False
        k += 1
    return True


# -- small-group catalog -------------------------------------------------------


def catalog(max_order: int = 15, include_selected_16: bool = False):
    """Builder-based catalog covering every group of order <= 15.

    The isomorphism classes up to order 15 are all realized by cyclic groups,
    direct products of cyclics, dihedral and dicyclic groups, and Alt(4).
    """
    groups: list[FiniteGroup] = []

    def add(g: FiniteGroup):
        if g.n <= max_order:
            groups.append(g)

    add(cyclic(1))
    add(cyclic(2))
    add(cyclic(3))
    add(cyclic(4))
    add(elementary_abelian(2, 2))
    add(cyclic(5))
    add(cyclic(6))
    add(dihedral(3))
    add(cyclic(7))
    add(cyclic(8))
    _named(add, direct_product(cyclic(4), cyclic(2)), "Z4xZ2")
    add(elementary_abelian(2, 3))
    add(dihedral(4))
    add(quaternion())
    add(cyclic(9))
    add(elementary_abelian(3, 2))
    add(cyclic(10))
    add(dihedral(5))
    add(cyclic(11))
    add(cyclic(12))
    _named(add, direct_product(cyclic(6), cyclic(2)), "Z6xZ2")
    add(dihedral(6))
    add(alternating(4))
    add(dicyclic(3))
    add(cyclic(13))
    add(cyclic(14))
    add(dihedral(7))
    add(cyclic(15))
    if include_selected_16 and max_order >= 16:
        add(cyclic(16))
        add(elementary_abelian(2, 4))
        _named(add, direct_product(cyclic(4), cyclic(4)), "Z4xZ4")
        add(dihedral(8))
        add(dicyclic(4))
    return groups


def _named(add, g: FiniteGroup, name: str):
    g.name = name
    add(g)


# -- regular representations ----------------------------------------------------


def right_regular_rep(g: FiniteGroup) -> PermGroup:
    """The group of right translations x -> x*a on element indices."""
    gens = [g.right_translation(a) for a in g.generating_set()]
    return PermGroup(g.n, gens, name=f"{g.name}^R")


def left_regular_rep(g: FiniteGroup) -> PermGroup:
    """The group of left translations x -> a^-1 * x on element indices."""
    gens = [g.left_translation(a) for a in g.generating_set()]
    return PermGroup(g.n, gens, name=f"{g.name}^L")


# -- automorphisms ---------------------------------------------------------------


class GroupAutomorphism:
    """Bijection on element indices preserving the multiplication table."""

    __slots__ = ("group", "images", "_hash")

    def __init__(self, group: FiniteGroup, images, _trusted: bool = False):
        self.group = group
        self.images = tuple(int(x) for x in images)
        if not _trusted:
            if sorted(self.images) != list(range(group.n)):
                raise ValueError("automorphism images are not a bijection")
            if self.images[0] != 0:
                raise ValueError("automorphism must fix the identity")
            t = group.table
            phi = np.asarray(self.images, dtype=np.int32)
            if not np.array_equal(phi[t], t[np.ix_(phi, phi)]):
                raise ValueError("map does not preserve the multiplication table")
        self._hash = hash(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def apply_set(self, s) -> frozenset:
        return frozenset(self.images[x] for x in s)

    def compose(self, other: "GroupAutomorphism") -> "GroupAutomorphism":
        return GroupAutomorphism(
            self.group, [other.images[x] for x in self.images], _trusted=True)

    def inverse(self) -> "GroupAutomorphism":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return GroupAutomorphism(self.group, inv, _trusted=True)

    def as_perm(self) -> Perm:
        return Perm(self.images)

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def __eq__(self, other) -> bool:
        return (isinstance(other, GroupAutomorphism)
                and self.images == other.images)

    def __hash__(self) -> int:
        return self._hash


def inner_automorphism(g: FiniteGroup, c: int) -> GroupAutomorphism:
    return GroupAutomorphism(g, [g.conj(x, c) for x in range(g.n)],
                             _trusted=True)


def automorphism_group(g: FiniteGroup,
                       budget: int = AUT_SEARCH_BUDGET) -> list[GroupAutomorphism]:
    """All automorphisms, by backtracking over generator images.

    Candidate images must match the generator's order and centralizer size;
    partial maps are extended over the subgroup generated so far and checked
    for the homomorphism property before descending.
    """
    if g.n > budget:
        raise BudgetError(f"order {g.n} exceeds automorphism budget {budget}")
    gens = g.generating_set()
    t = g.table

    # spanning words: each element of the subgroup generated by gens[:i+1]
    # gets a parent (element, generator) pair
    def bfs_layer(upto):
        parent = {0: None}
        order = [0]
        qi = 0
        while qi < len(order):
            x = order[qi]
            qi += 1
            for gi in range(upto):
                y = int(t[x, gens[gi]])
                if y not in parent:
                    parent[y] = (x, gi)
                    order.append(y)
        return parent, order

    layers = [bfs_layer(i + 1) for i in range(len(gens))]

    orders = g.element_orders()
    cz_sizes = [len(g.centralizer_of(x)) for x in range(g.n)]
    invariant = [(orders[x], cz_sizes[x]) for x in range(g.n)]
    candidates = [
        sorted(x for x in range(g.n) if invariant[x] == invariant[gen])
        for gen in gens
    ]

    out: list[GroupAutomorphism] = []
    images = [0] * len(gens)

    def extend(i: int) -> np.ndarray | None:
        """Map of the subgroup generated by gens[:i+1], or None if inconsistent."""
        parent, order = layers[i]
        phi = {0: 0}
        for x in order[1:]:
            px, gi = parent[x]
            phi[x] = int(t[phi[px], images[gi]])
        # homomorphism check on the subgroup: phi(x * gen) == phi(x) * phi(gen)
        for x in order:
            for gi in range(i + 1):
                if phi[int(t[x, gens[gi]])] != int(t[phi[x], images[gi]]):
                    return None
        if len(set(phi.values())) != len(phi):
            return None
        return phi

    def search(i: int):
        if i == len(gens):
            phi = extend(len(gens) - 1)
            assert phi is not None and len(phi) == g.n
            full = [phi[x] for x in range(g.n)]
            out.append(GroupAutomorphism(g, full))
            return
        for img in candidates[i]:
            images[i] = img
            if extend(i) is not None:
                search(i + 1)

    if not gens:
        return [GroupAutomorphism(g, [0])]
    search(0)
    return out


def aut_set_stabilizer(g: FiniteGroup, s, auts=None) -> list[GroupAutomorphism]:
    """Aut(G, S): the automorphisms fixing the subset S setwise."""
    s = frozenset(s)
    if not all(0 <= x < g.n for x in s):
        raise ValueError("S is not a subset of G")
    if auts is None:
        auts = automorphism_group(g)
    return [a for a in auts if a.apply_set(s) == s]


def holomorph(g: FiniteGroup, auts=None) -> PermGroup:
    """Right regular representation extended by Aut(G), acting on G."""
    from .perm import thin_generators

    if auts is None:
        auts = automorphism_group(g)
    gens = [g.right_translation(a) for a in g.generating_set()]
    gens += thin_generators(
        g.n, [a.as_perm() for a in auts if not a.is_identity()])
    return PermGroup(g.n, gens, name=f"Hol({g.name})")


def inner_closure(g: FiniteGroup) -> PermGroup:
    """Subgroup of Sym(G) generated by both regular representations."""
    gens = [g.right_translation(a) for a in g.generating_set()]
    gens += [g.left_translation(a) for a in g.generating_set()]
    return PermGroup(g.n, gens, name=f"{g.name}^R*{g.name}^L")


# -- GF(2^m) and the Suzuki groups ------------------------------------------------


class GF2m:
    """Arithmetic in GF(2^m) with exp/log tables over a fixed primitive polynomial."""

    POLYS = {3: 0b1011, 5: 0b100101}

    def __init__(self, m: int):
        if m not in self.POLYS:
            raise ValueError(f"no fixed polynomial for GF(2^{m})")
        self.m = m
        self.q = 1 << m
        self.poly = self.POLYS[m]
        exp = [1] * (2 * self.q)
        x = 1
        for i in range(1, 2 * self.q):
            x <<= 1
            if x & self.q:
                x ^= self.poly
            exp[i] = x
        self.exp = exp
        self.log = [0] * self.q
        for i in range(self.q - 1):
            self.log[exp[i]] = i

    def add(self, a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.exp[(self.log[a] + self.log[b]) % (self.q - 1)]

    def inverse(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self.exp[(self.q - 1 - self.log[a]) % (self.q - 1)]

    def pow(self, a: int, k: int) -> int:
        if a == 0:
            return 0 if k > 0 else 1
        return self.exp[(self.log[a] * k) % (self.q - 1)]

    def frobenius(self, a: int) -> int:
        return self.mul(a, a)


def suzuki_group(q: int) -> tuple[PermGroup, Perm]:
    """Suzuki group Sz(q) on the q^2+1 ovoid points, plus its field automorphism.

    Points are {infinity} + F_q^2 with infinity at index 0 and (x, y) at
    1 + x*q + y.  The group is generated by the translations
    (x, y) -> (x+a, y+b+x*a^s), the torus (x, y) -> (kx, k^{s+1}y) and the
    inverting involution through f(x, y) = xy + x^{s+2} + y^s, where
    s: x -> x^{2^{e+1}} twists the Frobenius.
    """
    m = q.bit_length() - 1
    if q < 8 or q != 1 << m or m % 2 == 0:
        raise ValueError("q must be 2^(2e+1) with e >= 1")
    if q > 32:
        raise BudgetError("q > 32 exceeds the desk budget")
    field = GF2m(m)
    e = (m - 1) // 2
    s_exp = 1 << (e + 1)

    def sig(x: int) -> int:
        return field.pow(x, s_exp)

    n = q * q + 1

    def pt(x: int, y: int) -> int:
        return 1 + x * q + y

    def translation(a: int, b: int) -> Perm:
        img = [0] * n
        for x in range(q):
            xa = x ^ a
            row = pt(xa, 0)
            xs = field.mul(x, sig(a)) ^ b
            for y in range(q):
                img[pt(x, y)] = row + (y ^ xs)
        return Perm(img)

    def torus(k: int) -> Perm:
        img = [0] * n
        kk = field.pow(k, s_exp + 1)
        for x in range(q):
            row = pt(field.mul(k, x), 0)
            for y in range(q):
                img[pt(x, y)] = row + field.mul(kk, y)
        return Perm(img)

    def f(x: int, y: int) -> int:
        return field.mul(x, y) ^ field.pow(x, s_exp + 2) ^ sig(y)

    def inverting_involution() -> Perm:
        img = list(range(n))
        img[0] = pt(0, 0)
        img[pt(0, 0)] = 0
        for x in range(q):
            for y in range(q):
                if x == 0 and y == 0:
                    continue
                d = field.inverse(f(x, y))
                img[pt(x, y)] = pt(field.mul(y, d), field.mul(x, d))
        return Perm(img)

    gens = [translation(1, 0), translation(0, 1),
            torus(2), inverting_involution()]
    group = PermGroup(n, gens, name=f"Sz({q})")

    frob = [0] * n
    for x in range(q):
        for y in range(q):
            frob[pt(x, y)] = pt(field.frobenius(x), field.frobenius(y))
    return group, Perm(frob)


def suzuki_order(q: int) -> int:
    """q^2 (q^2 + 1)(q - 1), the standard order formula."""
    return q * q * (q * q + 1) * (q - 1)
