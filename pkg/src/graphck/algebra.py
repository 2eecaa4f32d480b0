"""Exact *-algebra of finite sums sum c * s_alpha s_beta^*.

Elements are finite coefficient maps keyed by path pairs (alpha, beta) with
source(alpha) == source(beta).  The product follows the rule forced by the
Toeplitz relations:

    (s_a s_b^*)(s_c s_d^*) = s_{a c'} s_d^*   if c = b c',
                             s_a s_{d b'}^*   if b = c b',
                             0                 otherwise.

Coefficients live in one of the exact modes (or machine complex); mixing
modes raises instead of silently converting.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping

from . import exact
from .boundary import BoundaryPath
from .cycles import entrance_free_classes
from .exact import GAUSSIAN, Phase
from .graph import Graph, GraphError, Path, enumerate_paths, path_key


def term_key(key: tuple[Path, Path]):
    a, b = key
    return (path_key(a), path_key(b))


class AlgebraElement:
    """A finite formal sum of monomials c * s_alpha s_beta^*."""

    __slots__ = ("terms", "mode")

    def __init__(self, terms: Mapping[tuple[Path, Path], object], mode: str = GAUSSIAN):
        clean: dict[tuple[Path, Path], object] = {}
        for (a, b), c in terms.items():
            if a.source != b.source:
                raise GraphError(
                    f"monomial key ({a}, {b}) has mismatched sources"
                )
            if not exact.is_zero(c):
                clean[(a, b)] = c
        self.terms = clean
        self.mode = mode

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def terms_sorted(self):
        return sorted(self.terms.items(), key=lambda kv: term_key(kv[0]))

    def max_key_length(self) -> int:
        return max((max(len(a), len(b)) for a, b in self.terms), default=0)

    def _joined_mode(self, other: "AlgebraElement") -> str:
        if self.is_zero:
            return other.mode
        if other.is_zero:
            return self.mode
        return exact.join_modes(self.mode, other.mode)

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        mode = self._joined_mode(other)
        out = dict(self.terms)
        for key, c in other.terms.items():
            out[key] = exact.add(out[key], c) if key in out else c
        return AlgebraElement(out, mode)

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + (-other)

    def __neg__(self) -> "AlgebraElement":
        minus_one = exact.coerce(-1, self.mode)
        return self.map_coefficients(lambda c: exact.mul(minus_one, c))

    def __mul__(self, other) -> "AlgebraElement":
        if not isinstance(other, AlgebraElement):
            return self.scaled(other)
        mode = self._joined_mode(other)
        out: dict[tuple[Path, Path], object] = {}
        for (a, b), c1 in self.terms.items():
            for (cp, d), c2 in other.terms.items():
                if len(b) <= len(cp):
                    if not cp.starts_with(b):
                        continue
                    key = (a.concat(cp.strip_prefix(b)), d)
                else:
                    if not b.starts_with(cp):
                        continue
                    key = (a, d.concat(b.strip_prefix(cp)))
                c = exact.mul(c1, c2)
                key_c = exact.add(out[key], c) if key in out else c
                out[key] = key_c
        return AlgebraElement(out, mode)

    def __rmul__(self, other) -> "AlgebraElement":
        return self.scaled(other)

    def scaled(self, scalar) -> "AlgebraElement":
        if isinstance(scalar, Phase):
            return self.map_coefficients(lambda c: exact.times_phase(c, scalar))
        coeff = exact.coerce(scalar, self.mode)
        return self.map_coefficients(lambda c: exact.mul(coeff, c))

    def adjoint(self) -> "AlgebraElement":
        return AlgebraElement(
            {(b, a): exact.conjugate(c) for (a, b), c in self.terms.items()},
            self.mode,
        )

    def map_coefficients(self, fn) -> "AlgebraElement":
        return AlgebraElement({k: fn(c) for k, c in self.terms.items()}, self.mode)

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        if set(self.terms) != set(other.terms):
            return False
        return all(
            exact.scalars_equal(c, other.terms[k]) for k, c in self.terms.items()
        )

    def __hash__(self):
        raise TypeError("AlgebraElement is not hashable")

    def render(self) -> str:
        if self.is_zero:
            return "0"
        parts: list[str] = []
        for (a, b), c in self.terms_sorted():
            neg, cs = _coeff_str(c)
            body = _monomial_str(a, b)
            piece = body if cs is None else f"{cs} * {body}"
            if not parts:
                parts.append(("-" if neg else "") + piece)
            else:
                parts.append(("- " if neg else "+ ") + piece)
        return " ".join(parts)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"<AlgebraElement {self.render()}>"


def _monomial_str(a: Path, b: Path) -> str:
    if a.is_empty and b.is_empty:
        return f"p[{a.range}]"
    if b.is_empty:
        return f"s[{a.render()}]"
    if a.is_empty:
        return f"s*[{b.render()}]"
    return f"s[{a.render()}] * s*[{b.render()}]"


def _coeff_str(c):
    """(is_negative, printable magnitude or None when it is exactly one)."""
    if isinstance(c, exact.GaussianRational):
        neg = c.re < 0 or (c.re == 0 and c.im < 0)
        mag = -c if neg else c
        return neg, None if mag == exact.GaussianRational(Fraction(1)) else str(mag)
    if isinstance(c, exact.PolarCoeff):
        neg = c.mag < 0
        mag = -c if neg else c
        return neg, None if mag == exact.PolarCoeff(Fraction(1)) else str(mag)
    return False, f"({c!r})"


def zero(mode: str = GAUSSIAN) -> AlgebraElement:
    return AlgebraElement({}, mode)


def vertex_projection(g: Graph, v: str, mode: str = GAUSSIAN) -> AlgebraElement:
    """p_v = s_v s_v^* keyed by the empty path at v."""
    empty = g.empty_path(v)
    return AlgebraElement({(empty, empty): exact.one(mode)}, mode)


def path_isometry(g: Graph, path, mode: str = GAUSSIAN) -> AlgebraElement:
    """s_alpha for a path (an edge id, an id sequence, or a Path)."""
    if isinstance(path, str):
        path = g.edge_path(path)
    elif not isinstance(path, Path):
        path = g.path(list(path))
    if path.is_empty:
        return vertex_projection(g, path.range, mode)
    return AlgebraElement(
        {(path, Path((), (path.source,))): exact.one(mode)}, mode
    )


def monomial(g: Graph, alpha: Path, beta: Path, coeff=1, mode: str = GAUSSIAN) -> AlgebraElement:
    if alpha.source != beta.source:
        raise GraphError(f"sources differ: {alpha} vs {beta}")
    return AlgebraElement({(alpha, beta): exact.coerce(coeff, mode)}, mode)


@dataclass(frozen=True, eq=False)
class GeneratorFamily:
    """Vertex projections and edge isometries, possibly living over another
    graph than the one indexing them (e.g. the Toeplitz dictionary)."""

    index: Graph
    p: Mapping[str, AlgebraElement]
    s: Mapping[str, AlgebraElement]

    def s_path(self, path: Path) -> AlgebraElement:
        if path.is_empty:
            return self.p[path.range]
        acc = self.s[path.edges[0]]
        for e in path.edges[1:]:
            acc = acc * self.s[e]
        return acc


def canonical_family(g: Graph, mode: str = GAUSSIAN) -> GeneratorFamily:
    return GeneratorFamily(
        index=g,
        p={v: vertex_projection(g, v, mode) for v in g.vertices},
        s={e: path_isometry(g, e, mode) for e in g.edges},
    )


def ck_defect(fam: GeneratorFamily, v: str) -> AlgebraElement:
    """p_v minus the sum of range projections over vE1 of the index graph."""
    acc = fam.p[v]
    for e in fam.index.in_edges(v):
        acc = acc - fam.s[e] * fam.s[e].adjoint()
    return acc


@lru_cache(maxsize=None)
def _efree_rotation_by_source(g: Graph) -> Mapping[str, Path]:
    out: dict[str, Path] = {}
    for cls in entrance_free_classes(g):
        for rot in cls.members:
            out[rot.source] = rot
    return out


def w_normal_form(g: Graph, p: Path) -> Path:
    """Strip the maximal trailing power of an entrance-free cycle.

    Writes p = p' mu^n with p' not ending in any entrance-free cycle and
    returns p'; idempotent by construction.
    """
    rot_by_src = _efree_rotation_by_source(g)
    while True:
        rot = rot_by_src.get(p.source)
        if rot is None or not p.ends_with(rot):
            return p
        p = p.strip_suffix(rot)


def is_w_path(g: Graph, p: Path) -> bool:
    return w_normal_form(g, p) == p


def w_paths(g: Graph, max_len: int) -> list[Path]:
    """All W-paths (no trailing entrance-free cycle) of length <= max_len."""
    return [p for p in enumerate_paths(g, max_len) if is_w_path(g, p)]


def element_w_normal_form(g: Graph, a: AlgebraElement) -> AlgebraElement:
    """Rewrite every key to W-normal form, combining like terms.

    Models the normalised quotient, where s_mu = p_{r(mu)} for entrance-free
    mu; the action in the omega representation is unchanged.
    """
    out: dict[tuple[Path, Path], object] = {}
    for (alpha, beta), c in a.terms.items():
        key = (w_normal_form(g, alpha), w_normal_form(g, beta))
        out[key] = exact.add(out[key], c) if key in out else c
    return AlgebraElement(out, a.mode)


def diag_expectation(g: Graph, a: AlgebraElement) -> AlgebraElement:
    """The diagonal compression: W-normalise, then keep keys with alpha == beta."""
    normal = element_w_normal_form(g, a)
    return AlgebraElement(
        {k: c for k, c in normal.terms.items() if k[0] == k[1]}, normal.mode
    )


def ideal_span_pairs(g: Graph, x: BoundaryPath, depth: int) -> list[tuple[Path, Path]]:
    """Key pairs spanning the ideal attached to a boundary path: all
    (alpha, beta) of length <= depth with common source on x's vertex set."""
    limit = len(x.prefix.edges) + (len(x.period.edges) if x.period else 0)
    verts = sorted({x.vertex_at(n) for n in range(limit + 1)})
    by_source: dict[str, list[Path]] = {}
    for p in enumerate_paths(g, depth):
        by_source.setdefault(p.source, []).append(p)
    pairs: list[tuple[Path, Path]] = []
    for w in verts:
        for alpha in by_source.get(w, []):
            for beta in by_source.get(w, []):
                pairs.append((alpha, beta))
    return pairs
