"""Subgroups of Aut(G) as fully enumerated element-index maps.

An automorphism is stored as the tuple of images of element indices, so
acting on a subgroup bitset is a bit remap.  Groups of automorphisms are
deduplicated, closed lists; origin tags record how they were built.
"""

from __future__ import annotations

from .errors import (BoundExceeded, ImageNotInLattice, NotAHomomorphism,
                     NotBijective, NotInvariant)
from .groups import FiniteGroup, Subgroup, bits, closure_mask

FULL_AUT_DEFAULT_BOUND = 64


class Automorphism:
    """A multiplication-respecting bijection of element indices."""

    __slots__ = ("map",)

    def __init__(self, map_):
        self.map = tuple(map_)

    def __mul__(self, other: "Automorphism") -> "Automorphism":
        # apply self first, then other
        o = other.map
        return Automorphism(tuple(o[i] for i in self.map))

    def inverse(self) -> "Automorphism":
        inv = [0] * len(self.map)
        for i, j in enumerate(self.map):
            inv[j] = i
        return Automorphism(inv)

    def apply_mask(self, mask: int) -> int:
        out = 0
        m = self.map
        for x in bits(mask):
            out |= 1 << m[x]
        return out

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.map))

    def __eq__(self, other):
        return isinstance(other, Automorphism) and self.map == other.map

    def __hash__(self):
        return hash(self.map)


class AutomorphismGroup:
    """A deduplicated, composition-closed list of automorphisms of one group."""

    __slots__ = ("group", "maps", "origin", "_key")

    def __init__(self, group: FiniteGroup, maps, origin: str):
        self.group = group
        self.maps = sorted(set(maps), key=lambda a: a.map)
        self.origin = origin
        self._key = None

    def __len__(self):
        return len(self.maps)

    def __iter__(self):
        return iter(self.maps)

    @property
    def is_trivial(self) -> bool:
        return len(self.maps) == 1

    @property
    def key(self) -> tuple:
        """Canonical identity of the underlying set of maps (for memoizing
        poset construction across equal automorphism groups)."""
        if self._key is None:
            self._key = tuple(a.map for a in self.maps)
        return self._key

    def mask_orbit(self, mask: int) -> set[int]:
        seen = {mask}
        queue = [mask]
        while queue:
            m = queue.pop()
            for a in self.maps:
                c = a.apply_mask(m)
                if c not in seen:
                    seen.add(c)
                    queue.append(c)
        return seen

    def __repr__(self):
        return f"AutomorphismGroup({self.origin}, size={len(self.maps)})"


def trivial_automorphisms(G: FiniteGroup) -> AutomorphismGroup:
    return AutomorphismGroup(G, [Automorphism(range(G.order))], "trivial")


def inner_automorphisms(G: FiniteGroup, K: Subgroup | None = None) -> AutomorphismGroup:
    """Conjugation maps by the elements of K (all of G when K is None)."""
    mt = G.table
    n = G.order
    inv = G.inverse
    elems = K.elements() if K is not None else range(n)
    maps = set()
    for k in elems:
        ik = inv[k]
        maps.add(Automorphism(tuple(mt[mt[ik * n + x] * n + k] for x in range(n))))
    origin = "inner" if K is None or K.order == n else f"inner-by-{K.order}"
    return AutomorphismGroup(G, maps, origin)


def close_automorphisms(G: FiniteGroup, seeds, origin="explicit-generated") -> AutomorphismGroup:
    """Close a set of automorphisms under composition."""
    ident = Automorphism(range(G.order))
    maps = {ident.map: ident}
    queue = [ident]
    seeds = list(seeds)
    while queue:
        a = queue.pop()
        for s in seeds:
            c = a * s
            if c.map not in maps:
                maps[c.map] = c
                queue.append(c)
    return AutomorphismGroup(G, maps.values(), origin)


def automorphism_from_images(G: FiniteGroup, gens, images,
                             check_full: bool = False) -> Automorphism:
    """Extend generator images to the unique automorphism, if there is one.

    `gens` must generate G.  Raises NotAHomomorphism when the extension is
    inconsistent and NotBijective when the extension is not injective.
    With check_full=True the multiplicative law is re-verified on all
    pairs (test mode).
    """
    gens = list(gens)
    images = list(images)
    if len(gens) != len(images):
        raise ValueError("generator and image lists differ in length")
    mt = G.table
    n = G.order
    e = G.identity
    known = {e: e}
    queue = [e]
    while queue:
        x = queue.pop()
        fx = known[x]
        bx = x * n
        bfx = fx * n
        for g, h in zip(gens, images):
            y = mt[bx + g]
            z = mt[bfx + h]
            fy = known.get(y)
            if fy is None:
                known[y] = z
                queue.append(y)
            elif fy != z:
                raise NotAHomomorphism("generator images are inconsistent")
    if len(known) != n:
        raise ValueError("the given elements do not generate the group")
    amap = tuple(known[i] for i in range(n))
    if len(set(amap)) != n:
        raise NotBijective("extension is not injective")
    if check_full:
        for a in range(n):
            for b in range(n):
                if amap[mt[a * n + b]] != mt[amap[a] * n + amap[b]]:
                    raise NotAHomomorphism(f"map breaks at pair ({a}, {b})")
    return Automorphism(amap)


def _partial_extend(G: FiniteGroup, gens, images) -> Automorphism | None:
    """Extend images over <gens>; None when the prefix does not yet cover G.

    Raises NotAHomomorphism on inconsistency, NotBijective when the
    partial map already collapses two elements.
    """
    mt = G.table
    n = G.order
    e = G.identity
    known = {e: e}
    values = {e}
    queue = [e]
    while queue:
        x = queue.pop()
        fx = known[x]
        bx = x * n
        bfx = fx * n
        for g, h in zip(gens, images):
            y = mt[bx + g]
            z = mt[bfx + h]
            fy = known.get(y)
            if fy is None:
                if z in values:
                    raise NotBijective("partial map is not injective")
                known[y] = z
                values.add(z)
                queue.append(y)
            elif fy != z:
                raise NotAHomomorphism("generator images are inconsistent")
    if len(known) != n:
        return None
    return Automorphism(tuple(known[i] for i in range(n)))


def generating_sequence(G: FiniteGroup) -> list[int]:
    """A short generating list: greedily add highest-order elements."""
    e = G.identity
    if G.order == 1:
        return []
    orders = G.element_orders
    candidates = sorted((x for x in range(G.order) if x != e),
                        key=lambda x: (-orders[x], x))
    gens: list[int] = []
    cur = 1 << e
    for x in candidates:
        if (cur >> x) & 1:
            continue
        gens.append(x)
        cur = closure_mask(G, gens)
        if cur == G.full_mask():
            return gens
    raise AssertionError("exhausted elements without generating the group")


def full_automorphism_group(G: FiniteGroup,
                            bound: int = FULL_AUT_DEFAULT_BOUND) -> AutomorphismGroup:
    """All automorphisms, by backtracking over generator images.

    Candidate images are constrained to elements of matching order; each
    complete assignment is validated by multiplicative extension.
    """
    if G.order > bound:
        raise BoundExceeded(f"|G| = {G.order} exceeds the brute-force bound {bound}")
    if G.order == 1:
        return trivial_automorphisms(G)
    gens = generating_sequence(G)
    orders = G.element_orders
    candidates = [[x for x in range(G.order) if orders[x] == orders[g]] for g in gens]
    found = []
    images = [0] * len(gens)

    def descend(k: int):
        last = k == len(gens) - 1
        for c in candidates[k]:
            images[k] = c
            try:
                a = _partial_extend(G, gens[:k + 1], images[:k + 1])
            except (NotAHomomorphism, NotBijective):
                continue
            if a is not None and last:
                found.append(a)
            elif not last:
                descend(k + 1)
            # a complete map before the last slot is impossible: each gens[k]
            # lies outside <gens[:k]>, so an injective image cannot cover G
            # until every generator is placed

    descend(0)
    return AutomorphismGroup(G, found, "full-aut")


def subgroup_orbit(A: AutomorphismGroup, H: Subgroup, lattice) -> list[int]:
    """Lattice ids of the A-orbit of H (H included)."""
    orbit = A.mask_orbit(H.mask)
    try:
        return sorted(lattice.index[m] for m in orbit)
    except KeyError as exc:
        raise ImageNotInLattice(
            "an automorphism image is missing from the lattice") from exc


def induced_quotient_action(A: AutomorphismGroup, N: Subgroup,
                            quotient: FiniteGroup, projection: list[int]) -> AutomorphismGroup:
    """The automorphisms of G/N induced by A (N must be A-invariant)."""
    for a in A.maps:
        if a.apply_mask(N.mask) != N.mask:
            raise NotInvariant("the normal subgroup is moved by the action")
    # one preimage per quotient element
    pre = [-1] * quotient.order
    for g, q in enumerate(projection):
        if pre[q] < 0:
            pre[q] = g
    maps = {Automorphism(tuple(projection[a.map[pre[q]]]
                               for q in range(quotient.order)))
            for a in A.maps}
    return AutomorphismGroup(quotient, maps, "induced")
