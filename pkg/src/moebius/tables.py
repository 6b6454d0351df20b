"""Table assembly and rendering (markdown / csv / json).

Classes are listed by representative order descending, ties by bitset.
Numeric cells are decimal strings so arbitrary-precision values survive
every format.
"""

from __future__ import annotations

import csv
import io
import json

from . import counting
from .classposet import ClassPoset, kappa
from .groups import closure_mask
from .lattice import SubgroupLattice


def name_subgroup(lattice: SubgroupLattice, i: int, pair_limit: int = 72) -> str:
    """Canonical generator word: shortest, then lexicographic by index."""
    if i == lattice.trivial_id:
        return "1"
    if i == lattice.top_id:
        return "G"
    G = lattice.group
    s = lattice.subgroups[i]
    elems = [x for x in s.elements() if x != G.identity]
    cyc = G.permutation
    for x in elems:
        if closure_mask(G, (x,)) == s.mask:
            return f"<{cyc(x).cycle_string()}>"
    if s.order <= pair_limit:
        for a in range(len(elems)):
            for b in range(a + 1, len(elems)):
                if closure_mask(G, (elems[a], elems[b])) == s.mask:
                    return f"<{cyc(elems[a]).cycle_string()},{cyc(elems[b]).cycle_string()}>"
        for a in range(len(elems)):
            for b in range(a + 1, len(elems)):
                for c in range(b + 1, len(elems)):
                    gens = (elems[a], elems[b], elems[c])
                    if closure_mask(G, gens) == s.mask:
                        return "<" + ",".join(cyc(x).cycle_string() for x in gens) + ">"
    k = lattice.by_order[s.order].index(i)
    return f"order={s.order}#{k}"


def display_order(poset: ClassPoset) -> list[int]:
    """Class ids sorted by representative order descending, then bitset."""
    return sorted(range(len(poset.classes)),
                  key=lambda c: (-poset.rep_order(c), poset.rep(c).mask))


def class_table(poset: ClassPoset, include_omega2: bool = False) -> tuple[list[str], list[list[str]]]:
    """The mu_A / omega / kappa / sigma table over all classes."""
    lat = poset.lattice
    cols = ["class", "mu_A", "omega1"]
    if include_omega2:
        cols.append("omega2")
    cols += ["kappa", "sigma"]
    rows = []
    for c in display_order(poset):
        rep_id = poset.classes[c][0]
        row = [name_subgroup(lat, rep_id),
               str(poset.mu_top[c]),
               str(counting.omega(poset, c, 1))]
        if include_omega2:
            row.append(str(counting.omega(poset, c, 2)))
        row.append(str(kappa(lat, lat.subgroups[rep_id])))
        row.append(str(lat.sigma(rep_id)))
        rows.append(row)
    return cols, rows


def lattice_mu_table(lattice: SubgroupLattice) -> tuple[list[str], list[list[str]]]:
    """Per-conjugacy-class mu / kappa / sigma table (plain lattice Moebius)."""
    seen = set()
    entries = []
    for i in range(len(lattice.subgroups)):
        if i in seen:
            continue
        orbit = lattice.conjugacy_orbit(i)
        seen.update(orbit)
        entries.append(orbit[0])
    entries.sort(key=lambda i: (-lattice.subgroups[i].order, lattice.subgroups[i].mask))
    cols = ["class", "mu", "kappa", "sigma"]
    rows = []
    for i in entries:
        rows.append([name_subgroup(lattice, i),
                     str(lattice.mu_top[i]),
                     str(kappa(lattice, lattice.subgroups[i])),
                     str(lattice.sigma(i))])
    return cols, rows


def render(cols: list[str], rows: list[list[str]], fmt: str) -> str:
    if fmt == "markdown":
        head = "| " + " | ".join(cols) + " |"
        sep = "|" + "|".join("---" for _ in cols) + "|"
        body = ["| " + " | ".join(r) + " |" for r in rows]
        return "\n".join([head, sep] + body)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(cols)
        w.writerows(rows)
        return buf.getvalue().rstrip("\n")
    if fmt == "json":
        return json.dumps({"columns": cols,
                           "rows": [dict(zip(cols, r)) for r in rows]},
                          indent=2, sort_keys=False)
    raise ValueError(f"unknown format {fmt!r}")
