"""Posets of A-conjugacy classes of subgroups and their Moebius functions.

Classes are A-orbits of lattice subgroups; [H] <= [K] iff some orbit
member of [H] is contained in the representative of [K].  The lattice
itself is the special case of a trivial action.  Moebius values are
exact ints, memoized; the column at the top class is what the counting
formulas consume.
"""

from __future__ import annotations

from .automorphisms import AutomorphismGroup
from .errors import NotAClosureMap
from .groups import FiniteGroup, Subgroup, bits, is_normal_mask
from .lattice import SubgroupLattice


class ClassPoset:
    """The poset of A-orbits of subgroups of one group."""

    def __init__(self, lattice: SubgroupLattice, aut: AutomorphismGroup,
                 classes: list[tuple[int, tuple[int, ...]]], class_of: list[int]):
        self.lattice = lattice
        self.aut = aut
        self.classes = classes          # (representative id, orbit ids) per class
        self.class_of = class_of        # subgroup id -> class id
        self.top = class_of[lattice.top_id]
        self.bottom = class_of[lattice.trivial_id]
        self._up = None
        self._up_sets = None
        self._mu_top = None
        self._mu_memo: dict[tuple[int, int], int] = {}
        self._orbit_masks = [tuple(lattice.subgroups[i].mask for i in orbit)
                             for _, orbit in classes]

    def __len__(self):
        return len(self.classes)

    def rep(self, c: int) -> Subgroup:
        return self.lattice.subgroups[self.classes[c][0]]

    def orbit(self, c: int) -> tuple[int, ...]:
        return self.classes[c][1]

    def rep_order(self, c: int) -> int:
        return self.rep(c).order

    # -- order relation ----------------------------------------------------

    @property
    def up(self) -> list[list[int]]:
        """up[c] = class ids strictly above c, ascending."""
        if self._up is None:
            lat = self.lattice
            if len(self.classes) == len(lat.subgroups):
                # every orbit is a singleton: the poset is the lattice
                self._up = lat.up
            else:
                ncls = len(self.classes)
                up = [[] for _ in range(ncls)]
                omasks = self._orbit_masks
                for d in range(ncls):
                    rep_mask = self.rep(d).mask
                    od = self.rep(d).order
                    for c in range(d):
                        if od % self.rep_order(c):
                            continue
                        if c == d:
                            continue
                        for m in omasks[c]:
                            if m & ~rep_mask == 0:
                                up[c].append(d)
                                break
                self._up = up
        return self._up

    @property
    def up_sets(self) -> list[set[int]]:
        if self._up_sets is None:
            self._up_sets = [set(u) for u in self.up]
        return self._up_sets

    def less(self, c: int, d: int) -> bool:
        """Strict class order c < d."""
        return d in self.up_sets[c]

    def leq(self, c: int, d: int) -> bool:
        return c == d or d in self.up_sets[c]

    def class_of_subgroup(self, sub: Subgroup) -> int:
        return self.class_of[self.lattice.index[sub.mask]]

    # -- Moebius -------------------------------------------------------------

    @property
    def mu_top(self) -> list[int]:
        """mu_A(H, G) for every class id, computed in one descending sweep."""
        if self._mu_top is None:
            n = len(self.classes)
            mu = [0] * n
            mu[self.top] = 1
            up = self.up
            order = sorted(range(n), key=self.rep_order, reverse=True)
            for c in order:
                if c != self.top:
                    mu[c] = -sum(mu[d] for d in up[c])
            self._mu_top = mu
        return self._mu_top

    def mu(self, x: int, y: int) -> int:
        """mu_A on an arbitrary pair of classes (defining recursion, memoized)."""
        if x == y:
            return 1
        if not self.less(x, y):
            return 0
        key = (x, y)
        cached = self._mu_memo.get(key)
        if cached is not None:
            return cached
        total = 1  # z = x
        for z in self.up[x]:
            if z != y and self.less(z, y):
                total += self.mu(x, z)
        val = -total
        self._mu_memo[key] = val
        return val

    def mu_at_top(self, sub: Subgroup) -> int:
        return self.mu_top[self.class_of_subgroup(sub)]


def build_class_poset(lattice: SubgroupLattice, aut: AutomorphismGroup) -> ClassPoset:
    """Partition the lattice into A-orbits and order the orbit classes."""
    nsub = len(lattice.subgroups)
    if aut.is_trivial:
        classes = [(i, (i,)) for i in range(nsub)]
        class_of = list(range(nsub))
        return ClassPoset(lattice, aut, classes, class_of)
    class_of = [-1] * nsub
    classes = []
    for i in range(nsub):
        if class_of[i] >= 0:
            continue
        orbit_masks = aut.mask_orbit(lattice.subgroups[i].mask)
        orbit = sorted(lattice.index[m] for m in orbit_masks)
        c = len(classes)
        classes.append((orbit[0], tuple(orbit)))
        for j in orbit:
            class_of[j] = c
    # classes already follow (order, mask) of their smallest member because
    # lattice ids do; re-sorting keeps ids canonical even so
    perm = sorted(range(len(classes)),
                  key=lambda c: (lattice.subgroups[classes[c][0]].order,
                                 lattice.subgroups[classes[c][0]].mask))
    classes = [classes[c] for c in perm]
    renumber = {old: new for new, old in enumerate(perm)}
    class_of = [renumber[c] for c in class_of]
    return ClassPoset(lattice, aut, classes, class_of)


class ConjugationAction:
    """Stand-in for Inn(G) that never materializes the element maps.

    Orbits come from conjugation by group generators, which is what the
    lattice's conjugacy machinery already does; this keeps conjugacy
    class posets cheap for large groups.
    """

    __slots__ = ("group", "origin")

    def __init__(self, group: FiniteGroup):
        self.group = group
        self.origin = "inner"

    @property
    def key(self):
        return ("conjugation", self.group.spec or id(self.group))

    def mask_orbit(self, mask: int) -> set[int]:
        from .groups import conjugate_mask
        G = self.group
        seen = {mask}
        queue = [mask]
        while queue:
            m = queue.pop()
            for g in G.gens:
                c = conjugate_mask(G, m, g)
                if c not in seen:
                    seen.add(c)
                    queue.append(c)
        return seen


def conjugation_poset(lattice: SubgroupLattice) -> ClassPoset:
    """The class poset under conjugation, built from lattice orbits."""
    nsub = len(lattice.subgroups)
    class_of = [-1] * nsub
    classes = []
    for i in range(nsub):
        if class_of[i] >= 0:
            continue
        orbit = lattice.conjugacy_orbit(i)
        c = len(classes)
        classes.append((orbit[0], orbit))
        for j in orbit:
            class_of[j] = c
    return ClassPoset(lattice, ConjugationAction(lattice.group),
                      classes, class_of)


def lambda_poset(G: FiniteGroup, lattice: SubgroupLattice) -> ClassPoset:
    """The poset of ordinary conjugacy classes: mu of this poset is lambda."""
    return conjugation_poset(lattice)


def kappa(lattice: SubgroupLattice, sub: Subgroup) -> int:
    """Number of conjugates of the subgroup: |G : N_G(H)|."""
    i = lattice.index[sub.mask]
    return lattice.group.order // lattice.normalizer_mask(i).bit_count()


# -- closure maps and the closure-theorem checker ---------------------------

def maximal_closure_map(poset: ClassPoset) -> list[int]:
    """Class-level map [H] -> [intersection of maximals over H]."""
    lat = poset.lattice
    out = []
    for c in range(len(poset.classes)):
        closed = lat.closure_in_maximals(poset.rep(c))
        out.append(poset.class_of[lat.index[closed.mask]])
    return out


def validate_closure_map(poset: ClassPoset, cl: list[int]) -> None:
    n = len(poset.classes)
    for x in range(n):
        if not poset.leq(x, cl[x]):
            raise NotAClosureMap("a", f"class {x} not below its closure")
    for x in range(n):
        for y in poset.up[x]:
            if not poset.leq(cl[x], cl[y]):
                raise NotAClosureMap("b", f"not monotone at {x} <= {y}")
    for x in range(n):
        if cl[cl[x]] != cl[x]:
            raise NotAClosureMap("c", f"not idempotent at {x}")


class _ClosedSubposet:
    """Moebius function of the subposet of closed classes."""

    def __init__(self, poset: ClassPoset, cl: list[int]):
        self.poset = poset
        self.closed = sorted(x for x in range(len(poset.classes)) if cl[x] == x)
        self._memo: dict[tuple[int, int], int] = {}

    def mu(self, x: int, y: int) -> int:
        if x == y:
            return 1
        if not self.poset.less(x, y):
            return 0
        key = (x, y)
        cached = self._memo.get(key)
        if cached is not None:
            return cached
        total = 1
        for z in self.closed:
            if z != x and z != y and self.poset.less(x, z) and self.poset.less(z, y):
                total += self.mu(x, z)
        val = -total
        self._memo[key] = val
        return val


def crapo_check(poset: ClassPoset, cl: list[int], x: int, y: int) -> bool:
    """Closure-theorem identity at one pair (y must be closed)."""
    validate_closure_map(poset, cl)
    if cl[y] != y:
        raise ValueError("y must be a closed class")
    return _crapo_pair(poset, cl, _ClosedSubposet(poset, cl), x, y)


def _crapo_pair(poset, cl, sub, x, y):
    lhs = sum(poset.mu(x, z) for z in range(len(poset.classes)) if cl[z] == y)
    if cl[x] == x:
        rhs = sub.mu(x, y) if poset.leq(x, y) else 0
    else:
        rhs = 0
    return lhs == rhs


def crapo_check_all(poset: ClassPoset, cl: list[int]) -> list[tuple[int, int]]:
    """All (x, y) pairs violating the closure-theorem identity (none expected)."""
    validate_closure_map(poset, cl)
    sub = _ClosedSubposet(poset, cl)
    bad = []
    n = len(poset.classes)
    for y in sub.closed:
        for x in range(n):
            if not _crapo_pair(poset, cl, sub, x, y):
                bad.append((x, y))
    return bad


def nonzero_implies_closed(poset: ClassPoset) -> list[int]:
    """Classes below the top with nonzero Moebius value that are not
    intersections of maximal subgroups (the returned list should be empty)."""
    cl = maximal_closure_map(poset)
    mu = poset.mu_top
    return [c for c in range(len(poset.classes))
            if c != poset.top and mu[c] != 0 and cl[c] != c]


# -- instance checkers for the structural lemmas ----------------------------

def product_mask(G: FiniteGroup, a_mask: int, b_mask: int) -> int:
    """Bitset of the product set AB (a subgroup when either factor is normal)."""
    mt = G.table
    n = G.order
    out = 0
    b_elems = list(bits(b_mask))
    for a in bits(a_mask):
        base = a * n
        for b in b_elems:
            out |= 1 << mt[base + b]
    return out


def conjunctive_identity_violations(poset: ClassPoset, n_sub: Subgroup) -> list[int]:
    """For an A-invariant normal N, check on every class [H] with
    H < HN < G that mu_A(H,G) = -sum of mu_A(H,Y) over classes [Y] with
    [H] <= [Y] < [G] and YN = G.  Returns offending class ids."""
    lat = poset.lattice
    G = lat.group
    gorder = G.order
    full = G.full_mask()
    bad = []
    over = [d for d in range(len(poset.classes))
            if d != poset.top
            and poset.rep(d).order * n_sub.order
            == gorder * (poset.rep(d).mask & n_sub.mask).bit_count()]
    for c in range(len(poset.classes)):
        h = poset.rep(c)
        hn = product_mask(G, h.mask, n_sub.mask)
        if hn == h.mask or hn == full:
            continue
        rhs = -sum(poset.mu(c, d) for d in over if poset.leq(c, d))
        if poset.mu_top[c] != rhs:
            bad.append(c)
    return bad


def complement_class_count(poset: ClassPoset, n_sub: Subgroup,
                           h: Subgroup) -> int:
    """Number of A-classes of complements of N in G containing H."""
    comps = poset.lattice.complements(n_sub, h)
    remaining = {k.mask for k in comps}
    count = 0
    while remaining:
        m = next(iter(remaining))
        orbit = poset.aut.mask_orbit(m)
        remaining -= orbit
        count += 1
    return count


def minimal_normal_subgroup_ids(lattice: SubgroupLattice) -> list[int]:
    G = lattice.group
    normal = [i for i in range(len(lattice.subgroups))
              if i != lattice.trivial_id
              and is_normal_mask(G, lattice.subgroups[i].mask)]
    normal_set = set(normal)
    out = []
    for i in normal:
        if not any(j in normal_set for j in lattice.down[i]
                   if j != lattice.trivial_id):
            out.append(i)
    return out


def divisibility_scan(poset: ClassPoset, n_sub: Subgroup) -> list[int]:
    """Experimental: classes [H] where mu_A(HN,G) does not divide mu_A(H,G).

    Pure reporting; the engine takes no stance on whether failures can
    occur (0 is taken to divide only 0)."""
    lat = poset.lattice
    G = lat.group
    failures = []
    for c in range(len(poset.classes)):
        h = poset.rep(c)
        hn = product_mask(G, h.mask, n_sub.mask)
        d = poset.class_of[lat.index[hn]]
        mu_hn = poset.mu_top[d]
        mu_h = poset.mu_top[c]
        if (mu_hn == 0 and mu_h != 0) or (mu_hn != 0 and mu_h % mu_hn != 0):
            failures.append(c)
    return failures
