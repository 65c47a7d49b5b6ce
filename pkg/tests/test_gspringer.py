"""The double, its Borel restriction, the quotient charts, and the theorems."""

from fractions import Fraction

import pytest

from qpslab.dirac import DiracFiber, is_lagrangian, pushforward_linear, cartan_dirac
from qpslab.gspringer import (DoublePoint, GSPoint, NotRegularSemisimple,
                              QuotientChart, SteinbergFiber, chart_action_field,
                              chart_transport, double_space, dlam_chart,
                              dmu_chart, gspoint_stream, gxb_space, lam,
                              leaf_expected, leaf_two_form, moment_condition_check,
                              mu, mu_residual, omega_double, omega_matrix,
                              omega_value, phi, phi_differential, phi_map,
                              quotient_fiber, reconstruct_bivector, regact_check,
                              restrict_to_GxB, rho_double, sample_double,
                              sample_gspoint, steinberg_membership,
                              theorem1_check, theorem2_check, vertical_space,
                              weyl_fiber_enum)
from qpslab.liegroup import (AlgebraElement, GroupElement, context,
                             random_algebra, random_point)
from qpslab.linalg import EXACT, Mat, Subspace, intersect, kernel, mat_vec
from qpslab.prng import SplitMix64
from qpslab.scalars import QQi

SL2 = context("sl2")
SL3 = context("sl3")
GL2 = context("gl2")
RNG = SplitMix64(61)


def grp(ctx, rows):
    return GroupElement(ctx, Mat([[QQi(Fraction(x)) for x in r] for r in rows]))


def test_phi_examples():
    e = GroupElement(SL2, Mat.identity(2))
    b = random_point(SL2, "G", RNG)
    m1, m2 = phi(DoublePoint(e, b))
    assert m1.m == b.m and m2.m == b.inv
    m1, m2 = phi(DoublePoint(b, e))
    assert m1.m == Mat.identity(2) and m2.m == Mat.identity(2)


def test_phi_equivariance():
    rng = SplitMix64(62)
    for _ in range(5):
        dp = sample_double(SL2, rng)
        g1 = random_point(SL2, "G", rng)
        g2 = random_point(SL2, "G", rng)
        moved = DoublePoint(
            GroupElement(SL2, g1.m @ dp.a.m @ g2.inv, check=False),
            GroupElement(SL2, g2.m @ dp.b.m @ g2.inv, check=False),
        )
        f1, f2 = phi(dp)
        m1, m2 = phi(moved)
        assert m1.m == g1.m @ f1.m @ g1.inv
        assert m2.m == g2.m @ f2.m @ g2.inv


def test_omega_identity_fiber_anchor():
    # the frozen conventions force omega_(e,e)((x1,y1),(x2,y2)) =
    # (x2, y1) - (x1, y2); derived from the moment condition at the identity
    e = Mat.identity(2)
    x1, y1 = random_algebra(SL2, RNG).m, random_algebra(SL2, RNG).m
    x2, y2 = random_algebra(SL2, RNG).m, random_algebra(SL2, RNG).m
    got = omega_value(SL2, e, e, (x1, y1), (x2, y2))
    assert got == SL2.form(x2, y1) - SL2.form(x1, y2)


def test_omega_matrix_against_entrywise_oracle():
    rng = SplitMix64(63)
    dp = sample_double(SL2, rng)
    sp = double_space(SL2)
    w = omega_matrix(SL2, dp.a.m, dp.b.m, sp)
    assert (w + w.transpose()).is_zero()
    dirs = sp.basis_directions()
    mats = [sp.matrices(e) for e in dirs]
    for i in range(len(dirs)):
        for j in range(len(dirs)):
            assert w.entry(i, j) == omega_value(
                SL2, dp.a.m, dp.b.m, mats[i], mats[j])


def test_omega_double_wrapper_and_nondegeneracy():
    rng = SplitMix64(64)
    for _ in range(5):
        dp = sample_double(SL2, rng)
        fib = omega_double(dp)
        assert fib.is_skew()
        ko = kernel(fib.matrix.transpose())
        kphi = kernel(phi_differential(SL2, dp.a.m, dp.b.m))
        assert intersect(ko, kphi).dim == 0


def test_phi_differential_dual_route():
    rng = SplitMix64(65)
    dp = sample_double(SL2, rng)
    closed = phi_differential(SL2, dp.a.m, dp.b.m)
    dual = phi_map(SL2).differential_matrix((dp.a.m, dp.b.m))
    assert closed == dual


def test_moment_condition_samples():
    rng = SplitMix64(66)
    zero = AlgebraElement(SL2, Mat.zeros(2, 2), check=False)
    dp = sample_double(SL2, rng)
    assert moment_condition_check(dp, zero, zero)
    for _ in range(5):
        dp = sample_double(SL2, rng)
        xi1 = random_algebra(SL2, rng)
        xi2 = random_algebra(SL2, rng)
        assert moment_condition_check(dp, xi1, xi2)


def test_restriction_is_lagrangian_graph():
    rng = SplitMix64(67)
    g = random_point(SL2, "G", rng)
    b = random_point(SL2, "B", rng)
    fib = restrict_to_GxB(g, b)
    ok, _ = is_lagrangian(fib)
    assert ok
    assert fib.dim == SL2.dim_g + SL2.dim_b  # 5 for sl2
    assert fib.cotangent_intersection().dim == 0
    with pytest.raises(ValueError):
        restrict_to_GxB(g, grp(SL2, [[1, 0], [1, 1]]))


def test_regact_dimensions():
    rng = SplitMix64(68)
    for ctx, expected in ((SL2, 1), (SL3, 3), (GL2, 1)):
        g = random_point(ctx, "G", rng)
        b = random_point(ctx, "B", rng)
        res = regact_check(g, b)
        assert res["passed"] and res["dim"] == expected


def test_vertical_space_is_action_tangent():
    rng = SplitMix64(69)
    pt = sample_gspoint(SL2, rng)
    v = vertical_space(pt)
    assert v.dim == SL2.dim_b
    # rho(0, xi) for xi in the Borel basis lies in the vertical space
    for k in SL2.sub_indices("b"):
        vec = rho_double(SL2, pt.g.m, pt.b.m, Mat.zeros(2, 2), SL2.basis[k])
        up = vec[: SL2.dim_g] + [vec[SL2.dim_g + i] for i in SL2.sub_indices("b")]
        assert v.contains_vector(up)


def test_quotient_fiber_basics():
    rng = SplitMix64(70)
    pt = sample_gspoint(SL2, rng)
    chart = QuotientChart(pt)
    fib = quotient_fiber(chart)
    assert fib.dim == SL2.dim_g == 3
    ok, _ = is_lagrangian(fib)
    assert ok


def test_quotient_fiber_representative_independent():
    rng = SplitMix64(71)
    pt = sample_gspoint(SL2, rng)
    h = random_point(SL2, "B", rng)
    moved = pt.translate(h)
    assert pt.same_class(moved)
    c1, c2 = QuotientChart(pt), QuotientChart(moved)
    trans = chart_transport(c1, c2, h)
    f1, f2 = quotient_fiber(c1), quotient_fiber(c2)
    top = trans @ Mat(f1.basis.data[: c1.hdim], EXACT)
    bot = trans.inverse().transpose() @ Mat(f1.basis.data[c1.hdim:], EXACT)
    assert Subspace.from_spanning(top.vstack(bot)).equals(f2.subspace())


def test_gspoint_equivalence():
    rng = SplitMix64(72)
    pt = sample_gspoint(SL2, rng)
    assert pt.same_class(pt)
    other = sample_gspoint(SL2, rng)
    assert not pt.same_class(other)
    with pytest.raises(ValueError):
        GSPoint(pt.g, grp(SL2, [[1, 0], [1, 1]]))


def test_mu_lambda_well_defined():
    rng = SplitMix64(73)
    for _ in range(5):
        pt = sample_gspoint(SL2, rng)
        h = random_point(SL2, "B", rng)
        moved = pt.translate(h)
        assert mu(pt).m == mu(moved).m
        assert lam(pt).m == lam(moved).m
    b = grp(SL2, [[2, 3], [0, Fraction(1, 2)]])
    pt = GSPoint(random_point(SL2, "G", rng), b)
    assert lam(pt).m == grp(SL2, [[2, 0], [0, Fraction(1, 2)]]).m
    assert mu(GSPoint(GroupElement(SL2, Mat.identity(2)), b)).m == b.m


def test_kappa_commutes():
    from qpslab.liegroup import chevalley

    rng = SplitMix64(74)
    for ctx in (SL2, SL3, GL2):
        for _ in range(5):
            pt = sample_gspoint(ctx, rng)
            assert chevalley(mu(pt)) == chevalley(lam(pt))


def test_theorem1_all_strata():
    rng = SplitMix64(75)
    for ctx in (SL2, GL2):
        for stratum in ("random", "springer", "nonregular", "identity-b"):
            pt = sample_gspoint(ctx, rng, stratum)
            res = theorem1_check(pt)
            assert res["passed"], (ctx.name, stratum, res)


def test_theorem1_identity_mu_target():
    # over b = e the fiber must push to the cotangent space exactly
    rng = SplitMix64(76)
    pt = sample_gspoint(SL2, rng, "identity-b")
    assert mu(pt).m == Mat.identity(2)
    chart = QuotientChart(pt)
    fib = quotient_fiber(chart)
    pushed = pushforward_linear(fib, dmu_chart(chart))
    cotangent = DiracFiber(None, 3, Mat.zeros(3, 3).vstack(Mat.identity(3)))
    assert pushed.equals(cotangent)
    assert pushed.equals(cartan_dirac(mu(pt)))


def test_theorem2_leaf_dimensions():
    rng = SplitMix64(77)
    for ctx, dim in ((SL2, 2), (SL3, 6), (GL2, 2)):
        pt = sample_gspoint(ctx, rng)
        res = theorem2_check(pt)
        assert res["passed"] and res["leaf_dim"] == dim


def test_theorem2_on_strata():
    rng = SplitMix64(78)
    for stratum in ("springer", "nonregular", "identity-b"):
        pt = sample_gspoint(SL2, rng, stratum)
        assert theorem2_check(pt)["passed"]


def test_leaf_two_form_checks():
    rng = SplitMix64(79)
    for ctx in (SL2, GL2):
        for stratum in ("random", "springer"):
            pt = sample_gspoint(ctx, rng, stratum)
            form, leaf, checks = leaf_two_form(pt)
            assert checks["passed"], (ctx.name, stratum, checks)
            assert leaf.dim == ctx.dim_g - ctx.rank


def test_bivector_reconstruction():
    rng = SplitMix64(80)
    for ctx in (SL2, GL2):
        pt = sample_gspoint(ctx, rng)
        pi, checks = reconstruct_bivector(pt)
        assert checks["passed"], checks
        assert pi.is_skew()


def test_steinberg_examples():
    unip = grp(SL2, [[1, 1], [0, 1]])
    ident = GroupElement(SL2, Mat.identity(2))
    assert steinberg_membership(unip, ident)
    d2 = grp(SL2, [[2, 0], [0, Fraction(1, 2)]])
    d3 = grp(SL2, [[3, 0], [0, Fraction(1, 3)]])
    assert not steinberg_membership(d2, d3)
    with pytest.raises(ValueError):
        steinberg_membership(d2, unip)
    rng = SplitMix64(81)
    for _ in range(5):
        pt = sample_gspoint(SL2, rng)
        assert SteinbergFiber(lam(pt)).contains(mu(pt))


def test_weyl_fiber_enum_sl2():
    d2 = grp(SL2, [[2, 0], [0, Fraction(1, 2)]])
    pts = weyl_fiber_enum(d2)
    assert len(pts) == 2
    assert all(mu_residual(p, d2) < 1e-8 for p in pts)
    assert not pts[0].same_class(pts[1], tol=1e-6)


def test_weyl_fiber_enum_sl3():
    rng = SplitMix64(82)
    t = random_point(SL3, "T-regular", rng)
    g = random_point(SL3, "G", rng)
    rs = GroupElement(SL3, (g.m @ t.m @ g.inv).to_float(), check=False)
    pts = weyl_fiber_enum(rs)
    assert len(pts) == 6
    assert all(mu_residual(p, rs) < 1e-8 for p in pts)
    for i in range(6):
        for j in range(i + 1, 6):
            assert not pts[i].same_class(pts[j], tol=1e-6)


def test_weyl_fiber_enum_rejects_non_semisimple():
    unip = grp(SL2, [[1, 1], [0, 1]])
    with pytest.raises(NotRegularSemisimple):
        weyl_fiber_enum(unip)


def test_forced_strata_in_stream():
    rng = SplitMix64(83)
    pts = gspoint_stream(SL2, rng, 6)
    t0, u0 = pts[0].b, None
    from qpslab.liegroup import borel_decompose

    t, _ = borel_decompose(pts[0].b)
    assert t.m == Mat.identity(2)  # springer stratum first
    t, _ = borel_decompose(pts[1].b)
    d = [t.m.entry(i, i) for i in range(2)]
    assert d[0] == d[1]  # non-regular torus value
    assert pts[2].b.m == Mat.identity(2)  # then b = identity


def test_lambda_kills_leaf_directions():
    rng = SplitMix64(84)
    pt = sample_gspoint(SL3, rng)
    chart = QuotientChart(pt)
    leaf = leaf_expected(chart)
    dl = dlam_chart(chart)
    for j in range(leaf.dim):
        assert all(not c for c in mat_vec(dl, leaf.basis.col(j)))


def test_gl3_smoke():
    # the optional fourth group: one full pass through the heavy checks
    ctx = context("gl3")
    rng = SplitMix64(86)
    pt = sample_gspoint(ctx, rng)
    assert theorem1_check(pt)["passed"]
    res = theorem2_check(pt)
    assert res["passed"] and res["leaf_dim"] == ctx.dim_g - ctx.rank == 6
    assert regact_check(random_point(ctx, "G", rng),
                        random_point(ctx, "B", rng))["passed"]


def test_double_point_json_roundtrip():
    rng = SplitMix64(85)
    dp = sample_double(SL2, rng)
    again = DoublePoint.from_json(dp.to_json())
    assert again.a.m == dp.a.m and again.b.m == dp.b.m
    pt = sample_gspoint(SL2, rng)
    again = GSPoint.from_json(pt.to_json())
    assert again.same_class(pt)
