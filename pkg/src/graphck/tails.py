"""Maximal tails and the primitive-ideal catalog of a finite graph.

A maximal tail is a vertex set M that is (MT1) closed under taking ranges of
paths into M, (MT2) extendable inside M at every edge-receiving vertex, and
(MT3) downward directed.  A tail is circle-type when it contains a cycle with
no entrance inside M (necessarily unique up to rotation), gauge-type
otherwise; the catalog lists one symbolic primitive-ideal descriptor per
tail, with a free circle parameter z on the circle-type ones.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .cycles import CycleClass, cycle_class, has_entrance_in, simple_cycles
from .graph import Graph, GraphError, reach_map
from .transform import ToeplitzGraph

GAMMA = "gamma"
TAU = "tau"

TAIL_GUARD = 16


class TailGuardError(GraphError):
    """Vertex count exceeds the subset-enumeration guard."""


class TailConsistencyError(AssertionError):
    """A maximal tail carried two distinct entrance-free cycle classes;
    this would falsify the uniqueness argument on a concrete instance."""


@dataclass(frozen=True)
class MaximalTail:
    vertices: frozenset[str]
    kind: str
    cycle_class: CycleClass | None = None

    def sort_key(self):
        return (len(self.vertices), tuple(sorted(self.vertices)))


@dataclass(frozen=True)
class PrimIdealDescriptor:
    """Either a gauge-invariant ideal (projections off the tail) or a
    circle family with symbolic parameter z pinning the tail's cycle."""

    kind: str
    tail: MaximalTail
    generators: tuple[str, ...]


def is_maximal_tail(g: Graph, vertex_set) -> bool:
    """Direct MT1-MT3 validation, independent of the enumerator."""
    m = set(vertex_set)
    if not m or not m <= set(g.vertices):
        return False
    rm = reach_map(g)
    for w in m:
        for v in g.vertices:
            if w in rm[v] and v not in m:
                return False
    for v in m:
        incoming = g.in_edges(v)
        if incoming and not any(g.source_of(e) in m for e in incoming):
            return False
    for u, v in itertools.product(m, m):
        if not any(w in rm[u] and w in rm[v] for w in m):
            return False
    return True


def classify_tail(g: Graph, vertex_set) -> MaximalTail:
    """Attach the tail kind: circle-type iff some cycle inside the set has
    no entrance there.  Two distinct such classes raise, since maximal tails
    admit at most one."""
    m = frozenset(vertex_set)
    if not is_maximal_tail(g, m):
        raise GraphError(f"{sorted(m)} is not a maximal tail")
    witnesses: dict[tuple[str, ...], CycleClass] = {}
    for cyc in simple_cycles(g):
        if set(cyc.vertices[1:]) <= m and not has_entrance_in(g, cyc, m):
            cls = cycle_class(cyc)
            witnesses[cls.representative.edges] = cls
    if len(witnesses) > 1:
        raise TailConsistencyError(
            f"tail {sorted(m)} holds multiple entrance-free classes: "
            f"{sorted(witnesses)}"
        )
    if witnesses:
        (cls,) = witnesses.values()
        return MaximalTail(m, TAU, cls)
    return MaximalTail(m, GAMMA, None)


def maximal_tails(g: Graph, guard: int = TAIL_GUARD) -> list[MaximalTail]:
    """All maximal tails, classified, in deterministic order.

    Exhaustive over vertex subsets with an MT1 closure pre-filter; guarded
    because the enumeration is exponential in the vertex count.
    """
    n = len(g.vertices)
    if n > guard:
        raise TailGuardError(
            f"{n} vertices exceed the enumeration guard ({guard})"
        )
    rm = reach_map(g)
    tails = []
    for r in range(1, n + 1):
        for combo in itertools.combinations(g.vertices, r):
            m = set(combo)
            closure = {v for v in g.vertices if rm[v] & m}
            if closure != m:
                continue
            if is_maximal_tail(g, m):
                tails.append(classify_tail(g, m))
    return sorted(tails, key=MaximalTail.sort_key)


def tail_of_class(tg: ToeplitzGraph, cls: CycleClass) -> MaximalTail:
    """The circle-type tail of the doubled graph attached to an entrance-free
    class of the base: the alpha copies of the vertices reaching the cycle."""
    base = tg.base
    from .cycles import entrance_free_classes

    if cls.representative.edges not in {
        c.representative.edges for c in entrance_free_classes(base)
    }:
        raise GraphError(
            f"{cls.representative.render()} is not an entrance-free class"
        )
    rm = reach_map(base)
    members = {
        tg.alpha_v[v] for v in base.vertices if rm[v] & cls.vertex_set
    }
    alpha_cls = cycle_class(tg.alpha_path(cls.representative))
    tail = MaximalTail(frozenset(members), TAU, alpha_cls)
    if not is_maximal_tail(tg.graph, tail.vertices):
        raise TailConsistencyError(
            f"computed tail {sorted(tail.vertices)} fails MT1-MT3"
        )
    return tail


def prim_ideal_catalog(g: Graph, guard: int = TAIL_GUARD) -> list[PrimIdealDescriptor]:
    """One descriptor per tail: projections off the tail, plus the symbolic
    circle pin z * p_{r(mu)} - s_mu for circle-type tails."""
    out = []
    for tail in maximal_tails(g, guard):
        gens = tuple(f"p[{w}]" for w in g.vertices if w not in tail.vertices)
        if tail.kind == TAU:
            mu = tail.cycle_class.representative
            gens = gens + (f"z * p[{mu.range}] - s[{mu.render()}]",)
            out.append(PrimIdealDescriptor("circle", tail, gens))
        else:
            out.append(PrimIdealDescriptor("gauge", tail, gens))
    return out
