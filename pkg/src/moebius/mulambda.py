"""The (mu, lambda)-property machinery.

For a group G with derived subgroup G', compares the lattice Moebius
value mu(H,G) against mu*(H,G) = |N_{G'}(H) : G' meet H| * lambda(H,G)
class by class, and evaluates everything built on top of the comparison:
the violation set T and its tau spectrum, the alpha / beta quantities,
beta vectors over the classes with nonzero lambda, their rank, and the
two equivalent zero-sum identities satisfied exactly when the property
holds.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import counting
from .classposet import lambda_poset
from .groups import (FiniteGroup, Subgroup, commutator_subgroup, is_nilpotent,
                     is_normal_mask)
from .lattice import SubgroupLattice, enumerate_subgroups


@dataclass(frozen=True)
class ClassRow:
    class_id: int
    rep_id: int
    order: int
    mu: int
    lam: int
    index_factor: int
    mu_star: int
    normalizer_order: int

    @property
    def ok(self) -> bool:
        return self.mu == self.mu_star


@dataclass(frozen=True)
class MuLambdaReport:
    group: str
    rows: tuple[ClassRow, ...]
    violations: tuple[int, ...]

    @property
    def passed(self) -> bool:
        return not self.violations


@dataclass(frozen=True)
class BetaVector:
    t: int
    class_ids: tuple[int, ...]
    entries: tuple[int, ...]


@dataclass(frozen=True)
class ZeroSumResult:
    """Exact evaluation of the two equivalent consequence identities."""
    t: int
    full_sum: Fraction          # sum of lambda * (alpha - omega) over all classes
    violation_sum: Fraction     # sum of (mu - mu*)|H|^t / |N(H)| over T
    consistent: bool            # full_sum == -|G| * violation_sum, always expected

    @property
    def is_zero(self) -> bool:
        return self.full_sum == 0


@dataclass(frozen=True)
class BetaSweepVerdict:
    constant: bool
    nilpotent: bool
    frobenius_primitive_cyclic: bool

    @property
    def consistent(self) -> bool:
        return self.constant == (self.nilpotent or self.frobenius_primitive_cyclic)


class MuLambdaAnalyzer:
    """Shared context: lattice, conjugacy-class poset, derived subgroup."""

    def __init__(self, G: FiniteGroup, lattice: SubgroupLattice | None = None):
        self.group = G
        self.lattice = lattice if lattice is not None else enumerate_subgroups(G)
        self.poset = lambda_poset(G, self.lattice)
        self.derived = commutator_subgroup(G)
        self._rows = None
        self._omega_cache: dict[tuple[int, int], int] = {}

    # -- per-class data ---------------------------------------------------

    def mu(self, c: int) -> int:
        """Lattice Moebius value at the class representative."""
        return self.lattice.mu_top[self.poset.classes[c][0]]

    def lam(self, c: int) -> int:
        return self.poset.mu_top[c]

    def index_factor(self, c: int) -> int:
        """|N_{G'}(H) : G' meet H| at the representative."""
        rep_id = self.poset.classes[c][0]
        nmask = self.lattice.normalizer_mask(rep_id)
        dmask = self.derived.mask
        hmask = self.lattice.subgroups[rep_id].mask
        return (nmask & dmask).bit_count() // (hmask & dmask).bit_count()

    def mu_star(self, c: int) -> int:
        return self.index_factor(c) * self.lam(c)

    def normalizer_order(self, c: int) -> int:
        return self.lattice.normalizer_mask(self.poset.classes[c][0]).bit_count()

    def omega(self, c: int, t: int) -> int:
        key = (c, t)
        out = self._omega_cache.get(key)
        if out is None:
            out = counting.omega(self.poset, c, t)
            self._omega_cache[key] = out
        return out

    # -- report -------------------------------------------------------------

    @property
    def rows(self) -> tuple[ClassRow, ...]:
        if self._rows is None:
            rows = []
            for c in range(len(self.poset.classes)):
                rep_id = self.poset.classes[c][0]
                lam = self.lam(c)
                factor = self.index_factor(c)
                rows.append(ClassRow(
                    class_id=c,
                    rep_id=rep_id,
                    order=self.lattice.subgroups[rep_id].order,
                    mu=self.mu(c),
                    lam=lam,
                    index_factor=factor,
                    mu_star=factor * lam,
                    normalizer_order=self.normalizer_order(c),
                ))
            self._rows = tuple(rows)
        return self._rows

    def report(self) -> MuLambdaReport:
        violations = tuple(r.class_id for r in self.rows if not r.ok)
        return MuLambdaReport(group=self.group.spec or repr(self.group),
                              rows=self.rows, violations=violations)

    def t_set(self) -> list[int]:
        """Classes where mu and mu* disagree."""
        return [r.class_id for r in self.rows if not r.ok]

    def tau(self, n: int) -> Fraction:
        """Order-n slice of the violation spectrum."""
        total = Fraction(0)
        for r in self.rows:
            if r.order == n and not r.ok:
                total += Fraction(r.mu - r.mu_star, r.normalizer_order)
        return total

    def tau_spectrum(self) -> dict[int, Fraction]:
        orders = sorted({r.order for r in self.rows if not r.ok})
        return {n: self.tau(n) for n in orders}

    # -- alpha / beta ---------------------------------------------------------

    def alpha(self, c: int, t: int) -> Fraction:
        """|H|^(t-1) |G| |G'H| / |G'N_G(H)| at the representative."""
        if t < 1:
            raise ValueError("t must be a positive integer")
        rep_id = self.poset.classes[c][0]
        h = self.lattice.subgroups[rep_id]
        G = self.group
        d = self.derived.mask
        dh = self.derived.order * h.order // (d & h.mask).bit_count()
        nmask = self.lattice.normalizer_mask(rep_id)
        dn = self.derived.order * nmask.bit_count() // (d & nmask).bit_count()
        return Fraction(h.order ** (t - 1) * G.order * dh, dn)

    def beta(self, c: int, t: int) -> Fraction:
        return self.alpha(c, t) - self.omega(c, t)

    def cstar_classes(self) -> list[int]:
        """Proper classes with nonzero lambda, largest representatives first."""
        ids = [c for c in range(len(self.poset.classes))
               if c != self.poset.top and self.lam(c) != 0]
        ids.sort(key=lambda c: (-self.poset.rep_order(c), self.poset.rep(c).mask))
        return ids

    def beta_vector(self, t: int) -> BetaVector:
        ids = self.cstar_classes()
        entries = []
        for c in ids:
            b = self.beta(c, t)
            assert b.denominator == 1, "beta must be integral on C*"
            entries.append(int(b))
        return BetaVector(t=t, class_ids=tuple(ids), entries=tuple(entries))

    def beta_span_rank(self, t_max: int) -> int:
        """Rank over the rationals of {beta_1 .. beta_t_max}."""
        if t_max < 1:
            raise ValueError("t_max must be a positive integer")
        rows = [[Fraction(x) for x in self.beta_vector(t).entries]
                for t in range(1, t_max + 1)]
        return _rank(rows)

    # -- the consequence identities -------------------------------------------

    def zero_sum_check(self, t: int) -> ZeroSumResult:
        full = Fraction(0)
        for c in range(len(self.poset.classes)):
            lam = self.lam(c)
            if lam:
                full += lam * (self.alpha(c, t) - self.omega(c, t))
        viol = Fraction(0)
        for r in self.rows:
            if not r.ok:
                viol += Fraction((r.mu - r.mu_star) * r.order ** t,
                                 r.normalizer_order)
        consistent = full == -self.group.order * viol
        return ZeroSumResult(t=t, full_sum=full, violation_sum=viol,
                             consistent=consistent)

    # -- structural classifier --------------------------------------------------

    def frobenius_beta_classifier(self, t_max: int = 6) -> BetaSweepVerdict:
        vectors = {self.beta_vector(t).entries for t in range(1, t_max + 1)}
        constant = len(vectors) == 1
        return BetaSweepVerdict(
            constant=constant,
            nilpotent=is_nilpotent(self.group),
            frobenius_primitive_cyclic=self._frobenius_primitive_cyclic(),
        )

    def _frobenius_primitive_cyclic(self) -> bool:
        """G = V x| H with H maximal cyclic meeting its conjugates trivially
        and V a minimal normal subgroup (tested on the lattice)."""
        lat = self.lattice
        G = self.group
        triv = 1 << G.identity
        full = G.full_mask()
        orders = G.element_orders
        for m in lat.maximals:
            msub = lat.subgroups[m]
            if is_normal_mask(G, msub.mask):
                continue
            if not any(orders[x] == msub.order for x in msub.elements()):
                continue
            orbit = lat.conjugacy_orbit(m)
            if any(lat.subgroups[j].mask & msub.mask != triv
                   for j in orbit if j != m):
                continue
            union = 0
            for j in orbit:
                union |= lat.subgroups[j].mask
            kernel = (full & ~union) | triv
            kid = lat.index.get(kernel)
            if kid is None:
                continue
            if kernel.bit_count() * msub.order != G.order:
                continue
            if not is_normal_mask(G, kernel):
                continue
            # minimality: no proper nontrivial subgroup of the kernel is normal
            if any(is_normal_mask(G, lat.subgroups[j].mask)
                   for j in lat.down[kid] if j != lat.trivial_id):
                continue
            return True
        return False


def _rank(rows: list[list[Fraction]]) -> int:
    rows = [list(r) for r in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        pivot = None
        for r in range(rank, len(rows)):
            if rows[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        pr = rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][col] != 0:
                f = rows[r][col] / pr[col]
                rows[r] = [a - f * b for a, b in zip(rows[r], pr)]
        rank += 1
    return rank


# -- spec-level convenience wrappers ----------------------------------------

def check_mu_lambda(G: FiniteGroup, lattice: SubgroupLattice | None = None) -> MuLambdaReport:
    return MuLambdaAnalyzer(G, lattice).report()


def mu_star(G: FiniteGroup, H: Subgroup, lattice: SubgroupLattice | None = None) -> int:
    an = MuLambdaAnalyzer(G, lattice)
    return an.mu_star(an.poset.class_of_subgroup(H))


def tau_question_scan(an: MuLambdaAnalyzer) -> dict:
    """Empirical evidence for the open tau question: reports whether the
    spectrum vanishes identically while T is nonempty.  No stance taken."""
    spectrum = an.tau_spectrum()
    return {
        "t_set_size": len(an.t_set()),
        "tau_all_zero": all(v == 0 for v in spectrum.values()),
        "spectrum": spectrum,
    }
