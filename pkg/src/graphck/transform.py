"""Graph transforms and symbolic ideal generators.

* The Toeplitz graph of E doubles every edge-receiving vertex with a source
  twin, so the universal algebra of the transform models the Toeplitz algebra
  of E; the dictionary family realizes that identification.
* The reduced graph deletes a cutting set, leaving no entrance-free cycles.
* Ideal generator sets pin each entrance-free cycle to a phase multiple of
  its range projection, on top of the Cuntz-Krieger defect projections; the
  gauge rescaling carries the untwisted generators onto the twisted ones.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from . import exact
from .algebra import (
    AlgebraElement,
    GeneratorFamily,
    canonical_family,
    ck_defect,
    path_isometry,
    vertex_projection,
)
from .cycles import (
    CycleClass,
    class_of_edge,
    cycle_class,
    entrance_free_classes,
    is_cutting_set,
)
from .exact import GAUSSIAN, POLAR, Phase
from .graph import Graph, GraphError, Path


ALPHA = "alpha:"
BETA = "beta:"
ZETA = "zeta:"


@dataclass(frozen=True, eq=False)
class ToeplitzGraph:
    """The doubled graph together with its vertex/edge injections."""

    graph: Graph
    base: Graph
    alpha_v: Mapping[str, str]
    beta_v: Mapping[str, str]
    alpha_e: Mapping[str, str]
    beta_e: Mapping[str, str]

    def alpha_path(self, p: Path) -> Path:
        edges = tuple(self.alpha_e[e] for e in p.edges)
        vertices = tuple(self.alpha_v[v] for v in p.vertices)
        return Path(edges, vertices)


def toeplitz_graph(g: Graph) -> ToeplitzGraph:
    """Double each edge-receiving vertex with a fresh source twin.

    Every beta vertex is a source of the result, and the cycles of the result
    are exactly the alpha copies of the cycles of the input.
    """
    alpha_v = {v: ALPHA + v for v in g.vertices}
    beta_v = {v: BETA + v for v in g.vertices if g.in_edges(v)}
    alpha_e = {e: ALPHA + e for e in g.edges}
    beta_e = {e: BETA + e for e in g.edges if g.in_edges(g.source_of(e))}
    vertices = list(alpha_v.values()) + list(beta_v.values())
    edges = []
    for e in g.edges:
        r, s = g.range_of(e), g.source_of(e)
        edges.append((alpha_e[e], alpha_v[s], alpha_v[r]))
        if e in beta_e:
            edges.append((beta_e[e], beta_v[s], alpha_v[r]))
    return ToeplitzGraph(
        graph=Graph(vertices, edges),
        base=g,
        alpha_v=alpha_v,
        beta_v=beta_v,
        alpha_e=alpha_e,
        beta_e=beta_e,
    )


@dataclass(frozen=True, eq=False)
class ReducedGraph:
    """The graph with a cutting set removed; no entrance-free cycles remain."""

    graph: Graph
    base: Graph
    cutting_set: tuple[str, ...]
    zeta_v: Mapping[str, str]
    zeta_e: Mapping[str, str]


def reduced_graph(g: Graph, cutting_set) -> ReducedGraph:
    chosen = tuple(sorted(cutting_set))
    if not is_cutting_set(g, chosen):
        raise GraphError(f"{chosen} is not a cutting set")
    zeta_v = {v: ZETA + v for v in g.vertices}
    zeta_e = {e: ZETA + e for e in g.edges if e not in set(chosen)}
    edges = [
        (zeta_e[e], zeta_v[g.source_of(e)], zeta_v[g.range_of(e)])
        for e in g.edges
        if e in zeta_e
    ]
    return ReducedGraph(
        graph=Graph(list(zeta_v.values()), edges),
        base=g,
        cutting_set=chosen,
        zeta_v=zeta_v,
        zeta_e=zeta_e,
    )


def as_phase(value) -> Phase:
    if isinstance(value, Phase):
        return value
    if isinstance(value, (int, Fraction, str)):
        return Phase(Fraction(value))
    raise TypeError(f"cannot interpret {value!r} as an exact phase")


def class_phases(g: Graph, kappa) -> dict[CycleClass, Phase]:
    """Normalize a phase assignment onto the entrance-free classes.

    Accepts a single phase (constant function), a mapping keyed by
    CycleClass, by canonical-rotation edge tuple, or by cutting-set edge.
    """
    classes = entrance_free_classes(g)
    if isinstance(kappa, (Phase, int, Fraction, str)):
        ph = as_phase(kappa)
        return {cls: ph for cls in classes}
    out: dict[CycleClass, Phase] = {}
    table = dict(kappa)
    for cls in classes:
        if cls in table:
            out[cls] = as_phase(table[cls])
            continue
        if cls.representative.edges in table:
            out[cls] = as_phase(table[cls.representative.edges])
            continue
        hits = [e for e in table if isinstance(e, str) and e in cls.edge_set]
        if len(hits) == 1:
            out[cls] = as_phase(table[hits[0]])
            continue
        raise GraphError(
            f"phase assignment misses class {cls.representative.render()}"
        )
    return out


def _pin_element(g: Graph, phase: Phase, mu: Path, mode: str) -> AlgebraElement:
    """kappa(C) p_{r(mu)} - s_mu as an algebra element."""
    pin = vertex_projection(g, mu.range, mode).scaled(phase)
    return pin - path_isometry(g, mu, mode)


def _pick_mode(phases) -> str:
    quarter = all(ph.turn.denominator in (1, 2, 4) for ph in phases)
    return GAUSSIAN if quarter else POLAR


@dataclass(frozen=True, eq=False)
class IdealGenerators:
    """Symbolic generator set for the relation ideal of a phase assignment.

    ``delta_style`` is "defect" when the delta generators are the
    Cuntz-Krieger defects p_v - sum s_e s_e^* over ``graph``, and
    "projection" when they are plain vertex projections (the doubled-graph
    picture, where the defect equals the twin-source projection).
    """

    graph: Graph
    delta_vertices: tuple[str, ...]
    pins: tuple[tuple[Phase, CycleClass], ...]
    delta_style: str

    def elements(self, mode: str | None = None) -> list[AlgebraElement]:
        if mode is None:
            mode = _pick_mode([ph for ph, _ in self.pins])
        fam = canonical_family(self.graph, mode)
        out: list[AlgebraElement] = []
        for v in self.delta_vertices:
            if self.delta_style == "defect":
                out.append(ck_defect(fam, v))
            else:
                out.append(vertex_projection(self.graph, v, mode))
        for phase, cls in self.pins:
            for mu in cls.members:
                out.append(_pin_element(self.graph, phase, mu, mode))
        return out

    def describe(self) -> list[str]:
        out = []
        for v in self.delta_vertices:
            out.append(f"delta[{v}]" if self.delta_style == "defect" else f"p[{v}]")
        for phase, cls in self.pins:
            coeff = exact.PolarCoeff.from_phase(phase)
            head = "" if coeff == exact.PolarCoeff(Fraction(1)) else f"{coeff} * "
            for mu in cls.members:
                out.append(f"{head}p[{mu.range}] - s[{mu.render()}]")
        return out


def ikappa_generators(g: Graph, kappa) -> IdealGenerators:
    """Defect projections plus one phase pin per rotation of each class.

    Any single rotation per class generates the same ideal; emitting all of
    them makes the downstream vanishing checks stronger.
    """
    phases = class_phases(g, kappa)
    return IdealGenerators(
        graph=g,
        delta_vertices=tuple(v for v in g.vertices if g.in_edges(v)),
        pins=tuple((phases[cls], cls) for cls in entrance_free_classes(g)),
        delta_style="defect",
    )


def jkappa_generators(tg: ToeplitzGraph, kappa) -> IdealGenerators:
    """The same ideal in the doubled-graph picture: twin-source projections
    plus pins on the alpha copies of the entrance-free cycles."""
    phases = class_phases(tg.base, kappa)
    pins = []
    for cls in entrance_free_classes(tg.base):
        alpha_cls = cycle_class(tg.alpha_path(cls.representative))
        pins.append((phases[cls], alpha_cls))
    return IdealGenerators(
        graph=tg.graph,
        delta_vertices=tuple(sorted(tg.beta_v.values())),
        pins=tuple(pins),
        delta_style="projection",
    )


def toeplitz_family(tg: ToeplitzGraph, mode: str = GAUSSIAN) -> GeneratorFamily:
    """The dictionary family over the doubled graph, indexed by the base:
    q_v sums the twin projections and t_e the twin isometries."""
    g = tg.base
    p: dict[str, AlgebraElement] = {}
    s: dict[str, AlgebraElement] = {}
    for v in g.vertices:
        q = vertex_projection(tg.graph, tg.alpha_v[v], mode)
        if v in tg.beta_v:
            q = q + vertex_projection(tg.graph, tg.beta_v[v], mode)
        p[v] = q
    for e in g.edges:
        t = path_isometry(tg.graph, tg.alpha_e[e], mode)
        if e in tg.beta_e:
            t = t + path_isometry(tg.graph, tg.beta_e[e], mode)
        s[e] = t
    return GeneratorFamily(index=g, p=p, s=s)


@dataclass(frozen=True, eq=False)
class GeneratorRescaling:
    """The gauge correspondence fixing p_v and s_e off the cutting set and
    rescaling each cutting edge by the conjugate phase.

    ``pin_map`` records, per class rotation, the unit scalar u with
    rescale(p_{r(mu)} - s_mu) == u * (kappa(C) p_{r(mu)} - s_mu).
    """

    graph: Graph
    cutting_set: tuple[str, ...]
    edge_phases: Mapping[str, Phase]
    pin_map: tuple[tuple[Path, Phase], ...]

    def rescale_element(self, a: AlgebraElement) -> AlgebraElement:
        out = {}
        for (alpha, beta), c in a.terms.items():
            for e in alpha.edges:
                ph = self.edge_phases.get(e)
                if ph is not None:
                    c = exact.times_phase(c, ph)
            for e in beta.edges:
                ph = self.edge_phases.get(e)
                if ph is not None:
                    c = exact.times_phase(c, ph.conjugate())
            key = (alpha, beta)
            out[key] = exact.add(out[key], c) if key in out else c
        return AlgebraElement(out, a.mode)

    def inverse(self) -> "GeneratorRescaling":
        inv = {e: ph.conjugate() for e, ph in self.edge_phases.items()}
        return GeneratorRescaling(
            graph=self.graph,
            cutting_set=self.cutting_set,
            edge_phases=inv,
            pin_map=tuple((mu, u.conjugate()) for mu, u in self.pin_map),
        )

    def then(self, other: "GeneratorRescaling") -> "GeneratorRescaling":
        if set(self.edge_phases) != set(other.edge_phases):
            raise GraphError("rescalings use different cutting sets")
        merged = {
            e: self.edge_phases[e] * other.edge_phases[e] for e in self.edge_phases
        }
        return GeneratorRescaling(
            graph=self.graph,
            cutting_set=self.cutting_set,
            edge_phases=merged,
            pin_map=tuple(
                (mu, u1 * u2)
                for (mu, u1), (_, u2) in zip(self.pin_map, other.pin_map)
            ),
        )

    @property
    def is_identity(self) -> bool:
        return all(ph.is_one for ph in self.edge_phases.values())


def rescale_generators(g: Graph, cutting_set, kappa) -> GeneratorRescaling:
    """Build the correspondence for a phase assignment on a cutting set and
    verify it carries each untwisted generator onto a unit multiple of the
    corresponding twisted generator."""
    chosen = tuple(sorted(cutting_set))
    if not is_cutting_set(g, chosen):
        raise GraphError(f"{chosen} is not a cutting set")
    if isinstance(kappa, Mapping):
        table = {x: as_phase(kappa[x]) for x in chosen}
    else:
        constant = as_phase(kappa)
        table = {x: constant for x in chosen}
    edge_phases = {x: table[x].conjugate() for x in chosen}
    mode = _pick_mode(list(table.values()))
    correspondence = GeneratorRescaling(
        graph=g, cutting_set=chosen, edge_phases=edge_phases, pin_map=()
    )
    pin_map: list[tuple[Path, Phase]] = []
    one = Phase()
    for x in chosen:
        cls = class_of_edge(g, x)
        kc = table[x]
        unit = kc.conjugate()
        for mu in cls.members:
            before = _pin_element(g, one, mu, mode)
            target = _pin_element(g, kc, mu, mode).scaled(unit)
            if correspondence.rescale_element(before) != target:
                raise GraphError(
                    f"rescaling failed to map the pin of {mu.render()}"
                )
            pin_map.append((mu, unit))
    fam = canonical_family(g, mode)
    for v in g.vertices:
        if g.in_edges(v):
            delta = ck_defect(fam, v)
            if correspondence.rescale_element(delta) != delta:
                raise GraphError(f"rescaling moved the defect at {v}")
    return GeneratorRescaling(
        graph=g,
        cutting_set=chosen,
        edge_phases=edge_phases,
        pin_map=tuple(pin_map),
    )
