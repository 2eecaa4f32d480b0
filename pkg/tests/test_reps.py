import random
from fractions import Fraction

import pytest

from graphck import (
    BOUNDARY,
    CK,
    LEFT_REGULAR,
    NORMALIZED,
    OMEGA,
    REDUCED,
    TCK,
    GaussianRational,
    GraphError,
    NotReducedError,
    Phase,
    apply,
    basis_elements,
    boundary,
    boundary_set,
    canonical_cutting_set,
    canonical_family,
    canonicalize,
    deep_walk_equal,
    diag_expectation,
    entrance_free_classes,
    enumerate_paths,
    extract_kappa,
    ideal_span_pairs,
    ikappa_generators,
    left_regular,
    monomial,
    noncofinal_witness,
    omega,
    omega_set,
    operator_equal,
    path_isometry,
    paths_up_to,
    prepend,
    rescale_family,
    twisted_boundary,
    verify_relations,
    vertex_projection,
    w_paths,
    zero,
)
from graphck import exact, is_cofinal
from corpus import CORPUS, EXTRAS, g1_loop, g2_cyc2, g3_ent, random_element


def _omega_graphs(limit=None):
    names = [name for name, _ in CORPUS]
    graphs = [g for _, g in CORPUS]
    pairs = list(zip(names, graphs))
    return pairs[:limit] if limit else pairs


def test_apply_examples():
    g1 = g1_loop()
    brep = boundary(g1)
    x = canonicalize(g1.empty_path("v"), g1.path(["e"]))
    out = apply(brep, path_isometry(g1, "e"), x)
    assert out == {x: GaussianRational(Fraction(1))}
    lrep = left_regular(g1)
    out = apply(lrep, path_isometry(g1, "e"), g1.path(["e"]))
    assert list(out) == [g1.path(["e", "e"])]
    trep = twisted_boundary(g1, {"e": Phase(Fraction(1, 2))})
    out = apply(trep, path_isometry(g1, "e"), x)
    assert out == {x: GaussianRational(Fraction(-1))}


def test_apply_basis_mismatch():
    g1 = g1_loop()
    x = canonicalize(g1.empty_path("v"), g1.path(["e"]))
    with pytest.raises(GraphError, match="basis mismatch"):
        apply(left_regular(g1), vertex_projection(g1, "v"), x)
    with pytest.raises(GraphError, match="basis mismatch"):
        apply(boundary(g1), vertex_projection(g1, "v"), g1.empty_path("v"))


def test_twisted_construction_validation():
    g2 = g2_cyc2()
    with pytest.raises(GraphError, match="cutting set"):
        twisted_boundary(g2, {"e1": Phase(0), "e2": Phase(0)})
    with pytest.raises(GraphError, match="cutting set"):
        twisted_boundary(g3_ent(), {"e1": Phase(0)})
    with pytest.raises(GraphError, match="unit"):
        twisted_boundary(g2, {"e1": 0.5 + 0j})


def test_omega_rejects_unsupported_graphs():
    for name, g in EXTRAS:
        with pytest.raises(GraphError, match="omega"):
            omega(g)
        boundary(g)  # boundary stays available


def test_verify_left_regular_tck_passes_ck_fails():
    g1 = g1_loop()
    lrep = left_regular(g1)
    assert verify_relations(lrep, TCK).passed
    report = verify_relations(lrep, CK, depth=3)
    assert not report.passed
    assert [(f.relation, f.witness) for f in report.failures] == [("CK[v]", "@v")]


def test_verify_matrix_over_corpus():
    for name, g in _omega_graphs():
        depth = 2 * len(g.vertices)
        lrep = left_regular(g)
        assert verify_relations(lrep, TCK, depth=max(depth, 1)).passed, name
        report = verify_relations(lrep, CK)
        receiving = {v for v in g.vertices if g.in_edges(v)}
        failed = {f.relation for f in report.failures}
        assert failed == {f"CK[{v}]" for v in receiving}, name
        for f in report.failures:
            assert f.witness == f"@{f.relation[3:-1]}"  # the empty path witness
        min_depth = 1 + max(
            (len(c.representative) for c in entrance_free_classes(g)), default=0
        )
        assert verify_relations(
            boundary(g), NORMALIZED, depth=max(depth, min_depth)
        ).passed, name
        assert verify_relations(
            omega(g), NORMALIZED, depth=max(depth, min_depth)
        ).passed, name


def test_verify_boundary_reduced_reports_unit_kappa():
    g2 = g2_cyc2()
    report = verify_relations(boundary(g2), REDUCED)
    assert report.passed
    assert report.kappa == (("e1 e2", "1"),)


def test_verify_depth_precondition():
    g1 = g1_loop()
    with pytest.raises(ValueError, match="minimum"):
        verify_relations(boundary(g1), REDUCED, depth=1)


def test_twisted_reduced_and_extract_kappa():
    g1 = g1_loop()
    trep = twisted_boundary(g1, {"e": Phase(Fraction(1, 2))})
    report = verify_relations(trep, REDUCED)
    assert report.passed
    assert report.kappa == (("e", "-1"),)
    (cls,) = entrance_free_classes(g1)
    assert extract_kappa(trep) == {cls: Phase(Fraction(1, 2))}
    quarter = twisted_boundary(g1, {"e": Phase(Fraction(1, 4))})
    assert extract_kappa(quarter) == {cls: Phase(Fraction(1, 4))}
    assert extract_kappa(boundary(g1)) == {cls: Phase(0)}
    assert extract_kappa(twisted_boundary(g3_ent(), {})) == {}


def test_extract_kappa_rejects_left_regular():
    with pytest.raises(NotReducedError):
        extract_kappa(left_regular(g1_loop()))


def test_twisted_normalized_fails_with_witness():
    g1 = g1_loop()
    trep = twisted_boundary(g1, {"e": Phase(Fraction(1, 2))})
    report = verify_relations(trep, NORMALIZED)
    assert not report.passed
    assert report.failures[0].relation == "R[e]"


def test_phase_accumulates_once_per_period():
    # the cutting edge is traversed once per winding of any rotation
    g2 = g2_cyc2()
    trep = twisted_boundary(g2, {"e1": Phase(Fraction(1, 3))})
    (cls,) = entrance_free_classes(g2)
    assert extract_kappa(trep)[cls] == Phase(Fraction(1, 3))
    double = path_isometry(g2, g2.path(["e1", "e2", "e1", "e2"]), "polar")
    x = canonicalize(g2.empty_path("v"), g2.path(["e1", "e2"]))
    out = apply(trep, double, x)
    assert out == {x: exact.PolarCoeff(Fraction(1), Fraction(2, 3))}


def test_rescale_family_roundtrip():
    g1 = g1_loop()
    for turn in (Fraction(1, 2), Fraction(1, 3), Fraction(2, 7), Fraction(0)):
        trep = twisted_boundary(g1, {"e": Phase(turn)})
        rescaled = rescale_family(trep)
        assert verify_relations(rescaled, NORMALIZED).passed
        for phase in extract_kappa(rescaled).values():
            assert phase == Phase(0)
    with pytest.raises(GraphError, match="twisted"):
        rescale_family(boundary(g1))


def test_twisted_zero_phase_acts_like_boundary():
    g1 = g1_loop()
    trep = twisted_boundary(g1, {"e": Phase(0)})
    brep = boundary(g1)
    elems = [
        path_isometry(g1, "e"),
        vertex_projection(g1, "v"),
        path_isometry(g1, g1.path(["e", "e"])).adjoint(),
    ]
    for el in elems:
        for x in basis_elements(brep, 3):
            assert apply(trep, el, x) == apply(brep, el, x)


def test_operator_equal_examples():
    g1, g2 = g1_loop(), g2_cyc2()
    s_e, p_v = path_isometry(g1, "e"), vertex_projection(g1, "v")
    assert operator_equal(boundary(g1), s_e, p_v)
    assert not operator_equal(left_regular(g1), s_e, p_v)
    assert operator_equal(
        omega(g2),
        path_isometry(g2, g2.path(["e1", "e2"])),
        vertex_projection(g2, "v"),
    )


def test_vertex_projections_nonzero_in_all_kinds():
    for name, g in _omega_graphs():
        reps = [left_regular(g), boundary(g), omega(g)]
        cut = canonical_cutting_set(g)
        if cut:
            reps.append(
                twisted_boundary(g, {x: Phase(Fraction(1, 5)) for x in cut})
            )
        for rep in reps:
            for v in g.vertices:
                p = vertex_projection(g, v, rep.mode)
                assert not operator_equal(rep, p, zero(rep.mode)), (name, rep.kind, v)


def test_representation_is_multiplicative_on_random_elements():
    rng = random.Random(47)
    for name, g in _omega_graphs(8):
        pools = {v: [] for v in g.vertices}
        for p in enumerate_paths(g, 2):
            pools[p.source].append(p)
        for rep in (left_regular(g), boundary(g), omega(g)):
            for _ in range(6):
                a = random_element(rng, g, pools)
                b = random_element(rng, g, pools)
                for x in basis_elements(rep, 4):
                    via_b = apply(rep, b, x)
                    composed = {}
                    for y, c in via_b.items():
                        for z, d in apply(rep, a, y).items():
                            w = exact.mul(c, d)
                            composed[z] = (
                                exact.add(composed[z], w) if z in composed else w
                            )
                    composed = {
                        z: w for z, w in composed.items() if not exact.is_zero(w)
                    }
                    assert composed == apply(rep, a * b, x)


def test_ideal_generators_vanish_in_kernel_representations():
    for name, g in _omega_graphs(12):
        brep = boundary(g)
        for el in ikappa_generators(g, Phase(0)).elements(mode="gaussian"):
            assert operator_equal(brep, el, zero()), name
        cut = canonical_cutting_set(g)
        if cut:
            kappa = {x: Phase(Fraction(2, 5)) for x in cut}
            trep = twisted_boundary(g, kappa)
            for el in ikappa_generators(g, Phase(Fraction(2, 5))).elements():
                assert operator_equal(trep, el, zero(el.mode)), name


def test_separation_of_w_paths_on_omega():
    # distinct W-paths with common source send every omega point to
    # distinct points
    for name, g in _omega_graphs(12):
        depth = 2 * len(g.vertices)
        ws = w_paths(g, min(depth, 4))
        omega_pts = omega_set(g, min(depth, 6))
        for i, a in enumerate(ws):
            for b in ws[i + 1:]:
                if a.source != b.source:
                    continue
                for y in omega_pts:
                    if y.range != a.source:
                        continue
                    assert prepend(a, y) != prepend(b, y), (name, a, b)


def test_expectation_matches_compression_spot_check():
    rng = random.Random(53)
    for name, g in _omega_graphs(8):
        orep = omega(g)
        pools = {v: [] for v in g.vertices}
        for p in enumerate_paths(g, 2):
            pools[p.source].append(p)
        pts = omega_set(g, 2 * len(g.vertices))
        for _ in range(8):
            a = random_element(rng, g, pools)
            psi = diag_expectation(g, a)
            for x in pts:
                diag = apply(orep, a, x).get(x)
                out = apply(orep, psi, x)
                if diag is None:
                    assert out == {}
                else:
                    assert out == {x: diag}


def test_expectation_faithfulness_spot_check():
    rng = random.Random(59)
    for name, g in _omega_graphs(8):
        orep = omega(g)
        pools = {v: [] for v in g.vertices}
        for p in enumerate_paths(g, 2):
            pools[p.source].append(p)
        for _ in range(6):
            a = random_element(rng, g, pools)
            if diag_expectation(g, a.adjoint() * a).is_zero:
                assert operator_equal(orep, a, zero()), name


def test_simplicity_witness_ideal():
    for name, g in _omega_graphs():
        if is_cofinal(g):
            assert noncofinal_witness(g) is None
            continue
        v, x = noncofinal_witness(g)
        orep = omega(g)
        p_v = vertex_projection(g, v)
        p_top = vertex_projection(g, x.range)
        assert not operator_equal(orep, p_top, zero()), name
        for alpha, beta in ideal_span_pairs(g, x, 2):
            gen = monomial(g, alpha, beta)
            assert operator_equal(orep, p_v * gen, zero()), name
        # the CK expansion behind the annihilation argument
        bound = min(2 * len(g.vertices), 6)
        fam = canonical_family(g)
        expansion = zero()
        for lam in paths_up_to(g, v, bound):
            expansion = expansion + fam.s_path(lam) * fam.s_path(lam).adjoint()
        assert operator_equal(orep, p_v, expansion), name


def test_operator_equal_agrees_with_deep_walks_smoke():
    rng = random.Random(61)
    for name, g in _omega_graphs(6):
        pools = {v: [] for v in g.vertices}
        for p in enumerate_paths(g, 2):
            pools[p.source].append(p)
        for rep in (boundary(g), omega(g), left_regular(g)):
            for _ in range(10):
                a = random_element(rng, g, pools)
                b = random_element(rng, g, pools)
                assert operator_equal(rep, a, b) == deep_walk_equal(
                    rep, a, b, walks=60
                ), name
                assert operator_equal(rep, a, a)
                assert deep_walk_equal(rep, a, a, walks=30)
