"""Group contexts, Borel data, the invariant form, and the sigma/rho maps."""

from fractions import Fraction

import pytest

from qpslab.liegroup import (Ad, AlgebraElement, Covector, GroupContext,
                             GroupElement, TangentVec, WeylGroup, ad,
                             borel_decompose, chevalley, context, random_algebra,
                             random_point, rho_adjoint, sigma, sigma_adjoint,
                             conj_field)
from qpslab.linalg import Mat, Subspace, annihilator, rank
from qpslab.prng import SplitMix64
from qpslab.scalars import QQi

SL2 = context("sl2")
SL3 = context("sl3")
GL2 = context("gl2")
GROUPS = (SL2, SL3, GL2)


def alg(ctx, rows):
    return AlgebraElement(ctx, Mat([[QQi(Fraction(x)) for x in r] for r in rows]))


def grp(ctx, rows):
    return GroupElement(ctx, Mat([[QQi(Fraction(x)) for x in r] for r in rows]))


E12 = alg(SL2, [[0, 1], [0, 0]])
E21 = alg(SL2, [[0, 0], [1, 0]])
H = alg(SL2, [[1, 0], [0, -1]])
DIAG2 = grp(SL2, [[2, 0], [0, Fraction(1, 2)]])
IDENT2 = grp(SL2, [[1, 0], [0, 1]])


def test_dimension_table():
    assert (SL2.dim_g, SL2.dim_b, SL2.dim_u, SL2.rank) == (3, 2, 1, 1)
    assert (SL3.dim_g, SL3.dim_b, SL3.dim_u, SL3.rank) == (8, 5, 3, 2)
    assert (GL2.dim_g, GL2.dim_b, GL2.dim_u, GL2.rank) == (4, 3, 1, 2)


def test_bracket_examples():
    assert ad(E12, E12).m.is_zero()
    assert ad(E12, E21).m == H.m           # [e, f] = h
    assert ad(H, E12).m == E12.m.scale(QQi(2))  # [h, e] = 2e


def test_ad_examples():
    x = alg(SL2, [[1, 2], [3, -1]])
    assert Ad(IDENT2, x).m == x.m
    g = grp(SL2, [[1, 1], [1, 2]])
    assert Ad(g, Ad(g.inverse(), x)).m == x.m
    assert Ad(DIAG2, E12).m == E12.m.scale(QQi(4))


def test_sigma_examples():
    assert sigma(IDENT2, E12).coord.m == E12.m
    zero = alg(SL2, [[0, 0], [0, 0]])
    assert sigma(DIAG2, zero).coord.m.is_zero()
    assert sigma(DIAG2, E12).coord.m == E12.m.scale(QQi(Fraction(5, 8)))


def test_sigma_adjoint_examples():
    a = Covector(IDENT2, E12)
    assert sigma_adjoint(a).m == E12.m
    zero = Covector(DIAG2, alg(SL2, [[0, 0], [0, 0]]))
    assert sigma_adjoint(zero).m.is_zero()


def test_sigma_adjointness_two_routes():
    # (sigma-adjoint(alpha), xi) against alpha paired with sigma(xi), both
    # evaluated independently through the form
    rng = SplitMix64(12)
    for ctx in GROUPS:
        for _ in range(20):
            g = random_point(ctx, "G", rng)
            a = random_algebra(ctx, rng)
            xi = random_algebra(ctx, rng)
            alpha = Covector(g, a)
            lhs = ctx.form(sigma_adjoint(alpha).m, xi.m)
            rhs = ctx.form(a.m, sigma(g, xi).coord.m)
            assert lhs == rhs


def test_conj_field_examples():
    assert conj_field(IDENT2, E12).coord.m.is_zero()
    center = AlgebraElement(GL2, Mat.identity(2))
    g = GroupElement(GL2, Mat([[QQi(2), QQi(1)], [QQi(0), QQi(3)]]))
    assert conj_field(g, center).coord.m.is_zero()
    assert conj_field(DIAG2, E12).coord.m == E12.m.scale(QQi(Fraction(3, 4)))


def test_rho_adjoint_against_closed_form():
    rng = SplitMix64(13)
    zero = alg(SL2, [[0, 0], [0, 0]])
    assert rho_adjoint(TangentVec(DIAG2, zero)).m.is_zero()
    assert rho_adjoint(TangentVec(IDENT2, E12)).m.is_zero()
    for ctx in GROUPS:
        for _ in range(20):
            g = random_point(ctx, "G", rng)
            v = random_algebra(ctx, rng)
            got = rho_adjoint(TangentVec(g, v))
            closed = v.m - g.m @ v.m @ g.inv
            assert got.m == closed


def test_borel_decompose():
    t, u = borel_decompose(IDENT2)
    assert t.m == IDENT2.m and u.m == IDENT2.m
    t, u = borel_decompose(DIAG2)
    assert t.m == DIAG2.m and u.m == IDENT2.m
    b = grp(SL2, [[2, 3], [0, Fraction(1, 2)]])
    t, u = borel_decompose(b)
    assert t.m == DIAG2.m
    assert u.m == Mat([[QQi(1), QQi(Fraction(3, 2))], [QQi(0), QQi(1)]])
    with pytest.raises(ValueError):
        borel_decompose(grp(SL2, [[1, 0], [1, 1]]))


def test_chevalley_examples():
    assert chevalley(IDENT2) == (QQi(2),)
    assert chevalley(DIAG2) == (QQi(Fraction(5, 2)),)
    unip = grp(SL2, [[1, 1], [0, 1]])
    assert chevalley(unip) == chevalley(IDENT2)
    g3 = GroupElement(GL2, Mat([[QQi(1), QQi(2)], [QQi(3), QQi(4)]]))
    assert chevalley(g3) == (QQi(5), QQi(-2))  # trace and determinant


def test_chevalley_conjugation_invariant():
    rng = SplitMix64(14)
    for ctx in GROUPS:
        for _ in range(10):
            g = random_point(ctx, "G", rng)
            h = random_point(ctx, "G", rng)
            conj = GroupElement(ctx, h.m @ g.m @ h.inv, check=False)
            assert chevalley(conj) == chevalley(g)


def test_random_point_membership():
    rng = SplitMix64(15)
    t = random_point(SL2, "T", rng)
    assert t.m.entry(0, 1) == QQi(0) and t.m.entry(1, 0) == QQi(0)
    assert t.m.det() == QQi(1)
    u = random_point(SL3, "U", rng)
    for i in range(3):
        assert u.m.entry(i, i) == QQi(1)
        for j in range(i):
            assert u.m.entry(i, j) == QQi(0)
    for _ in range(10):
        assert random_point(SL3, "G", rng).m.det() == QQi(1)
    treg = random_point(SL3, "T-regular", rng)
    d = [treg.m.entry(i, i) for i in range(3)]
    assert len({repr(x) for x in d}) == 3


def test_form_ad_invariance():
    rng = SplitMix64(16)
    for ctx in GROUPS:
        for _ in range(100):
            g = random_point(ctx, "G", rng)
            x = random_algebra(ctx, rng)
            y = random_algebra(ctx, rng)
            assert ctx.form(Ad(g, x).m, Ad(g, y).m) == ctx.form(x.m, y.m)


def test_borel_perp_is_unipotent_radical():
    # the annihilator of the Borel subalgebra under the form is the
    # unipotent radical; this is what kills the 3-form on B
    for ctx in GROUPS:
        b_cols = [[QQi(1) if i == k else QQi(0) for i in range(ctx.dim_g)]
                  for k in ctx.sub_indices("b")]
        bsub = Subspace.from_vectors(b_cols, ctx.dim_g)
        ann = annihilator(bsub, ctx.gram)
        u_cols = [[QQi(1) if i == k else QQi(0) for i in range(ctx.dim_g)]
                  for k in ctx.sub_indices("u")]
        usub = Subspace.from_vectors(u_cols, ctx.dim_g)
        assert ann.equals(usub)


def test_kernel_lemma_on_borel():
    # sigma(xi) annihilates all of T_B at tu exactly when the torus
    # component of xi vanishes
    rng = SplitMix64(17)
    for ctx in GROUPS:
        for _ in range(20):
            b = random_point(ctx, "B", rng)
            for k in ctx.sub_indices("b"):
                xi = AlgebraElement(ctx, ctx.basis[k], check=False)
                sig = sigma(b, xi)
                annihilates = all(
                    not ctx.form(sig.coord.m, b.inv @ ctx.basis[m] @ b.m)
                    for m in ctx.sub_indices("b")
                )
                expected = k in ctx.sub_indices("u")
                assert annihilates == expected


def test_eta_alternating_and_invariant():
    rng = SplitMix64(18)
    for ctx in (SL2, SL3):
        for _ in range(20):
            x = random_algebra(ctx, rng).m
            y = random_algebra(ctx, rng).m
            z = random_algebra(ctx, rng).m
            assert ctx.eta(x, y, z) == -ctx.eta(y, x, z)
            assert ctx.eta(x, y, z) == -ctx.eta(x, z, y)
            g = random_point(ctx, "G", rng)
            assert ctx.eta(g.m @ x @ g.inv, g.m @ y @ g.inv, g.m @ z @ g.inv) \
                == ctx.eta(x, y, z)


def test_chi_matches_eta_on_basis():
    for x in SL2.basis:
        for y in SL2.basis:
            for z in SL2.basis:
                assert SL2.chi(x, y, z) == SL2.eta(x, y, z)


def test_weyl_group():
    for ctx in (SL2, SL3):
        w = WeylGroup(ctx)
        assert len(w) == [2, 6][ctx.n - 2]
        for p in w.perms:
            rep = w.reps[p]
            assert rep.m.det() == QQi(1) if ctx.family == "SL" else rep.m.det()
            for q in w.perms:
                assert w.compose_ok(p, q)


def test_group_element_validation():
    with pytest.raises(ValueError):
        grp(SL2, [[1, 0], [0, 2]])  # det 2 in SL
    with pytest.raises(ValueError):
        grp(SL2, [[0, 0], [0, 0]])
    with pytest.raises(ValueError):
        alg(SL2, [[1, 0], [0, 1]])  # nonzero trace


def test_group_element_json_roundtrip():
    g = DIAG2
    again = GroupElement.from_json(g.to_json())
    assert again.m == g.m and again.ctx is SL2
    with pytest.raises(ValueError):
        GroupElement.from_json({"rows": 2, "cols": 2, "entries": []})


def test_gram_nondegenerate():
    for ctx in GROUPS:
        assert rank(ctx.gram) == ctx.dim_g


def test_coords_roundtrip():
    rng = SplitMix64(19)
    for ctx in GROUPS:
        for _ in range(10):
            x = random_algebra(ctx, rng)
            assert ctx.mat_from_coords(ctx.coords(x.m)) == x.m
        for part in ("b", "t", "u"):
            y = random_algebra(ctx, rng, part=part)
            sub = ctx.part_coords(part, y.m)
            full = ctx.embed_part_coords(part, sub)
            assert ctx.mat_from_coords(full) == y.m
