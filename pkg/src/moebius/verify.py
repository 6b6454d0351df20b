"""Per-group identity battery behind the `verify` subcommand.

Runs every structural identity the engine promises on one group, for a
family of acting automorphism groups, and reports machine-readable
pass/fail entries.  The acceptance test suite runs the same identities
over whole families of groups.
"""

from __future__ import annotations

from . import counting
from .automorphisms import (AutomorphismGroup, full_automorphism_group,
                            inner_automorphisms, trivial_automorphisms)
from .classposet import (ClassPoset, build_class_poset, conjugation_poset,
                         crapo_check_all, maximal_closure_map,
                         minimal_normal_subgroup_ids, nonzero_implies_closed)
from .errors import LiftNotGenerating
from .groups import FiniteGroup, commutator_subgroup, is_solvable
from .lattice import SubgroupLattice, enumerate_subgroups
from .mulambda import MuLambdaAnalyzer

FULL_AUT_VERIFY_BOUND = 64


def automorphism_choices(G: FiniteGroup, lattice: SubgroupLattice,
                         aut_bound: int = FULL_AUT_VERIFY_BOUND,
                         include_full_aut: bool = True):
    """The acting subgroups exercised by the battery: trivial, inner,
    inner-by-K for every K containing G', and (small groups) full Aut.
    Duplicate map sets are listed once."""
    choices: list[tuple[str, AutomorphismGroup]] = []
    seen: dict[tuple, str] = {}

    def add(label: str, aut: AutomorphismGroup):
        if aut.key in seen:
            return
        seen[aut.key] = label
        choices.append((label, aut))

    add("A=1", trivial_automorphisms(G))
    add("A=inn", inner_automorphisms(G))
    derived = commutator_subgroup(G)
    dmask = derived.mask
    for i, s in enumerate(lattice.subgroups):
        if dmask & ~s.mask == 0:
            add(f"A=inn:order={s.order}#{lattice.by_order[s.order].index(i)}",
                inner_automorphisms(G, s))
    if include_full_aut and G.order <= aut_bound:
        add("A=aut", full_automorphism_group(G, bound=aut_bound))
    return choices


def poset_axiom_violations(poset: ClassPoset) -> list[str]:
    """Antisymmetry and transitivity of the class order (reflexivity is
    implicit in the strict up-sets)."""
    out = []
    ups = poset.up_sets
    n = len(poset.classes)
    for c in range(n):
        if c in ups[c]:
            out.append(f"irreflexivity broken at {c}")
        for d in ups[c]:
            if c in ups[d]:
                out.append(f"antisymmetry broken at ({c},{d})")
            for e in ups[d]:
                if e not in ups[c]:
                    out.append(f"transitivity broken at ({c},{d},{e})")
    return out


def mobius_equation_violations(poset: ClassPoset) -> list[int]:
    """Defining-equation check for every (x, top) pair, plus agreement of
    the general pair recursion with the fast top column."""
    out = []
    top = poset.top
    for x in range(len(poset.classes)):
        if x == top:
            continue
        total = 1 + sum(poset.mu(x, z) for z in poset.up[x])
        if total != 0:
            out.append(x)
        if poset.mu(x, top) != poset.mu_top[x]:
            out.append(x)
    return out


def independent_small_lattice(G: FiniteGroup) -> set[int]:
    """Oracle lattice for |G| <= 24: close all <=2-generated subgroups,
    then close the set under pairwise joins by brute product closure."""
    masks = {1 << G.identity}
    n = G.order
    mt = G.table
    for x in range(n):
        for y in range(x, n):
            masks.add(_brute_closure(G, (x, y)))
    changed = True
    while changed:
        changed = False
        for a in list(masks):
            for b in list(masks):
                if a | b not in masks:
                    j = _brute_closure_mask(G, a | b)
                    if j not in masks:
                        masks.add(j)
                        changed = True
    return masks


def _brute_closure(G, seed):
    mask = 1 << G.identity
    for s in seed:
        mask |= 1 << s
    return _brute_closure_mask(G, mask)


def _brute_closure_mask(G, mask):
    mt = G.table
    n = G.order
    while True:
        new = mask
        elems = [i for i in range(n) if (mask >> i) & 1]
        for a in elems:
            base = a * n
            for b in elems:
                new |= 1 << mt[base + b]
        if new == mask:
            return mask
        mask = new


def run_battery(G: FiniteGroup, t_max: int = 2,
                lattice: SubgroupLattice | None = None,
                tuple_budget: int = 10 ** 6,
                include_full_aut: bool = True) -> list[dict]:
    """All identity checks on one group; returns [{name, ok, detail}, ...]."""
    checks: list[dict] = []

    def record(name: str, ok: bool, detail: str = ""):
        checks.append({"name": name, "ok": bool(ok), "detail": detail})

    lattice = lattice if lattice is not None else enumerate_subgroups(G)
    n = G.order

    inv = G.inverse
    ok = all(inv[inv[x]] == x and G.mul(x, inv[x]) == G.identity for x in range(n))
    record("inverse-involution", ok)

    record("lagrange", all(n % s.order == 0 for s in lattice.subgroups))

    if n <= 24:
        oracle = independent_small_lattice(G)
        record("lattice-completeness-oracle",
               oracle == {s.mask for s in lattice.subgroups},
               f"{len(oracle)} subgroups")

    phis = {t: counting.phi_hall(lattice, t) for t in range(1, t_max + 1)}
    for t in range(1, t_max + 1):
        if n ** t <= tuple_budget:
            brute = counting.phi_bruteforce(G, t, budget=tuple_budget)
            record(f"phi-brute-t{t}", brute == phis[t],
                   f"{brute} vs {phis[t]}")

    sum_mu_sigma = sum(m * lattice.sigma(i)
                       for i, m in enumerate(lattice.mu_top) if m)
    record("sum-mu-sigma-is-1", sum_mu_sigma == 1, str(sum_mu_sigma))

    noncyclic = not G.is_cyclic()
    for label, aut in automorphism_choices(G, lattice,
                                           include_full_aut=include_full_aut):
        poset = build_class_poset(lattice, aut)
        bad = poset_axiom_violations(poset)
        record(f"poset-axioms[{label}]", not bad, "; ".join(bad[:3]))
        bad = mobius_equation_violations(poset)
        record(f"mobius-equations[{label}]", not bad, str(bad[:5]))
        for t in range(1, t_max + 1):
            via = counting.phi_via_classes(poset, t)
            record(f"phi-classes-t{t}[{label}]", via == phis[t],
                   f"{via} vs {phis[t]}")
        if noncyclic:
            total = sum(poset.mu_top[c] * counting.omega(poset, c, 1)
                        for c in range(len(poset.classes)))
            record(f"zero-sum[{label}]", total == 0, str(total))
        cl = maximal_closure_map(poset)
        record(f"crapo[{label}]", not crapo_check_all(poset, cl))
        record(f"nonzero-implies-closed[{label}]",
               not nonzero_implies_closed(poset))

    inn_poset = None
    for n_id in minimal_normal_subgroup_ids(lattice)[:2]:
        n_sub = lattice.subgroups[n_id]
        t = min(t_max, 2)
        if n_sub.order ** t > tuple_budget:
            continue
        try:
            lifts = counting.generating_lift(lattice, n_sub, t)
        except LiftNotGenerating:
            continue
        direct = counting.phi_relative(lattice, n_sub, t)
        if inn_poset is None:
            inn_poset = conjugation_poset(lattice)
        via = counting.phi_relative_via_classes(inn_poset, n_sub, lifts, t,
                                                budget=tuple_budget)
        record(f"phi-relative-N{n_sub.order}-t{t}", via == direct,
               f"{via} vs {direct}")

    an = MuLambdaAnalyzer(G, lattice)
    report = an.report()
    solvable = is_solvable(G)
    if solvable:
        record("mu-lambda-property[solvable]", report.passed,
               f"violations: {list(report.violations)}")
    else:
        record("mu-lambda-property", True,
               f"passed={report.passed} violations={list(report.violations)}")
    for t in range(1, t_max + 1):
        z = an.zero_sum_check(t)
        record(f"zero-sum-identity-consistency-t{t}", z.consistent)
        if report.passed:
            record(f"zero-sum-identity-t{t}", z.is_zero, str(z.full_sum))
    if report.passed:
        for t in range(1, t_max + 1):
            vec = an.beta_vector(t)
            total = sum(an.lam(c) * b for c, b in zip(vec.class_ids, vec.entries))
            record(f"beta-solves-equation-t{t}", total == 0, str(total))
    dmask = an.derived.mask
    betas_ok = True
    for t in range(1, min(t_max, 3) + 1):
        for c, b in zip(an.beta_vector(t).class_ids, an.beta_vector(t).entries):
            contains_derived = dmask & ~an.poset.rep(c).mask == 0
            if b < 0 or (b == 0) != contains_derived:
                betas_ok = False
    record("beta-nonnegative-zero-iff-derived", betas_ok)

    if solvable:
        lam_col = an.poset
        for label, aut in automorphism_choices(G, lattice, include_full_aut=False):
            if not label.startswith("A=inn:"):
                continue
            poset = build_class_poset(lattice, aut)
            agrees = all(lam_col.mu_top[lam_col.class_of[i]]
                         == poset.mu_top[poset.class_of[i]]
                         for i in range(len(lattice.subgroups)))
            record(f"lambda-equals-mu[{label}]", agrees)

    return checks
