"""Shared per-session caches so test modules reuse heavy lattices."""

from moebius import build_from_spec, enumerate_subgroups
from moebius.automorphisms import (full_automorphism_group, inner_automorphisms,
                                   trivial_automorphisms)
from moebius.classposet import build_class_poset
from moebius.mulambda import MuLambdaAnalyzer

_groups = {}
_lattices = {}
_posets = {}
_analyzers = {}


def group(spec):
    if spec not in _groups:
        _groups[spec] = build_from_spec(spec)
    return _groups[spec]


def lattice(spec):
    if spec not in _lattices:
        _lattices[spec] = enumerate_subgroups(group(spec))
    return _lattices[spec]


def poset(spec, aut="inn"):
    """aut: 'inn' | '1' | 'aut' | ('inn', K_subgroup_order, k)"""
    key = (spec, aut)
    if key not in _posets:
        G = group(spec)
        lat = lattice(spec)
        if aut == "1":
            A = trivial_automorphisms(G)
        elif aut == "inn":
            A = inner_automorphisms(G)
        elif aut == "aut":
            A = full_automorphism_group(G)
        else:
            _, order, k = aut
            K = lat.subgroups[lat.by_order[order][k]]
            A = inner_automorphisms(G, K)
        _posets[key] = build_class_poset(lat, A)
    return _posets[key]


def analyzer(spec):
    if spec not in _analyzers:
        _analyzers[spec] = MuLambdaAnalyzer(group(spec), lattice(spec))
    return _analyzers[spec]


def subgroups_of_order(spec, order):
    lat = lattice(spec)
    return [lat.subgroups[i] for i in lat.by_order.get(order, [])]


def class_by(poset_, order=None, lam=None, mu=None, normal=None):
    """The unique class matching the given structural signature."""
    from moebius.groups import is_normal_mask
    G = poset_.lattice.group
    hits = []
    for c in range(len(poset_.classes)):
        rep = poset_.rep(c)
        if order is not None and rep.order != order:
            continue
        if lam is not None and poset_.mu_top[c] != lam:
            continue
        if mu is not None and poset_.lattice.mu_top[poset_.classes[c][0]] != mu:
            continue
        if normal is not None and is_normal_mask(G, rep.mask) != normal:
            continue
        hits.append(c)
    assert len(hits) == 1, f"signature matched {len(hits)} classes"
    return hits[0]
