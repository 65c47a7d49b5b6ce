"""Reductive matrix groups with Borel data and the basic invariant calculus.

A :class:`GroupContext` fixes the group (SL_n or GL_n over the sampled
field), the invariant bilinear form ``(x, y) = c * tr(x y)``, an ordered
basis of the Lie algebra, and the upper-triangular Borel subgroup with its
torus/unipotent splitting.  Everything downstream works in left-trivialized
coordinates: a tangent vector at ``g`` is the algebra element ``g^{-1} X``,
a covector is the algebra element pairing against it through the form.

Basis order matters and is relied on throughout: first the strictly upper
entries (the nilpotent radical), then the torus directions, then the
strictly lower entries, so that the Borel subalgebra occupies a coordinate
prefix of the algebra coordinates.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from . import hooks
from .linalg import EXACT, Mat, mat_vec
from .matio import mat_from_json, mat_to_json
from .prng import SplitMix64
from .scalars import Dual, QQi

# Coefficient of the invariant 3-form eta(x,y,z) = COEFF * (x, [y, z]).
# Frozen by the convention-calibration suite (scripts/calibrate_conventions.py):
# it is the unique scaling for which, simultaneously, d(omega) =
# -Phi^*(eta (+) eta) holds on the fusion double, the conjugation-structure
# sections close under the twisted Dorfman bracket, and the moment maps are
# forward-Dirac onto the conjugation structure with tangent part
# xi^L - xi^R.  See qpslab.conventions for how this relates to the
# wedge-coefficient normalization 1/12 (a factor 6 from evaluating the
# coefficient tensor as a form, and one global sign tied to the action
# convention).
CARTAN_COEFF = Fraction(-1, 2)

GROUPS = {
    "sl2": ("SL", 2),
    "sl3": ("SL", 3),
    "sl4": ("SL", 4),
    "gl2": ("GL", 2),
    "gl3": ("GL", 3),
    "gl4": ("GL", 4),
}


class GroupContext:
    """SL_n or GL_n with its Borel subgroup and trace-form calculus."""

    def __init__(self, family: str, n: int, form_scale: Fraction = Fraction(1)):
        if family not in ("SL", "GL"):
            raise ValueError("family must be 'SL' or 'GL'")
        if n < 2:
            raise ValueError("need n >= 2")
        if form_scale <= 0:
            raise ValueError("form scale must be positive")
        self.family = family
        self.n = n
        self.form_scale = Fraction(form_scale)

        upper = [(i, j) for i in range(n) for j in range(n) if i < j]
        lower = [(i, j) for i in range(n) for j in range(n) if i > j]
        self._upper = upper
        self._lower = lower

        basis: list[Mat] = []
        labels: list[str] = []
        for i, j in upper:
            basis.append(_unit(n, i, j))
            labels.append(f"E{i + 1}{j + 1}")
        if family == "SL":
            for k in range(n - 1):
                m = [[QQi(0)] * n for _ in range(n)]
                m[k][k] = QQi(1)
                m[k + 1][k + 1] = QQi(-1)
                basis.append(Mat(m))
                labels.append(f"H{k + 1}")
        else:
            for k in range(n):
                basis.append(_unit(n, k, k))
                labels.append(f"E{k + 1}{k + 1}")
        for i, j in lower:
            basis.append(_unit(n, i, j))
            labels.append(f"E{i + 1}{j + 1}")
        self.basis = tuple(basis)
        self.basis_labels = tuple(labels)

        self.dim_u = len(upper)
        self.dim_t = n - 1 if family == "SL" else n
        self.dim_b = self.dim_u + self.dim_t
        self.dim_g = len(basis)
        self.rank = self.dim_t

        self.identity = Mat.identity(n)
        gram = [
            [self.form(x, y) for y in self.basis] for x in self.basis
        ]
        self.gram = Mat(gram)
        self.gram_inv = self.gram.inverse()

    # -- names ---------------------------------------------------------------

    @property
    def name(self) -> str:
        return f"{self.family.lower()}{self.n}"

    def __repr__(self):
        return f"GroupContext({self.name}, c={self.form_scale})"

    # -- coordinates ---------------------------------------------------------

    def coords(self, m) -> list:
        """Coordinates of an algebra matrix in the fixed basis.

        Works entrywise, so it also accepts matrices of dual scalars.  For
        SL the torus coordinates are the partial sums of the diagonal; the
        representation is faithful exactly on trace-free matrices.
        """
        out = [m.entry(i, j) for i, j in self._upper]
        if self.family == "SL":
            acc = None
            for k in range(self.n - 1):
                d = m.entry(k, k)
                acc = d if acc is None else acc + d
                out.append(acc)
        else:
            out.extend(m.entry(k, k) for k in range(self.n))
        out.extend(m.entry(i, j) for i, j in self._lower)
        return out

    def mat_from_coords(self, coords) -> Mat:
        if len(coords) != self.dim_g:
            raise ValueError("coordinate length mismatch")
        acc = Mat.zeros(self.n, self.n)
        for c, b in zip(coords, self.basis):
            if isinstance(c, (int, Fraction)):
                c = QQi(c)
            if c:
                acc = acc + b.scale(c)
        return acc

    def sub_indices(self, part: str) -> range:
        if part == "g":
            return range(self.dim_g)
        if part == "u":
            return range(self.dim_u)
        if part == "t":
            return range(self.dim_u, self.dim_b)
        if part == "b":
            return range(self.dim_b)
        raise ValueError(f"unknown subalgebra {part!r}")

    def part_dim(self, part: str) -> int:
        return len(self.sub_indices(part))

    def embed_part_coords(self, part: str, coords) -> list:
        """Scatter subalgebra coordinates into full algebra coordinates."""
        idx = self.sub_indices(part)
        if len(coords) != len(idx):
            raise ValueError("coordinate length mismatch")
        zero = QQi(0)
        out = [zero] * self.dim_g
        for k, i in enumerate(idx):
            out[i] = coords[k]
        return out

    def part_coords(self, part: str, m) -> list:
        full = self.coords(m)
        return [full[i] for i in self.sub_indices(part)]

    # -- invariant form and brackets ------------------------------------------

    def form(self, x: Mat, y: Mat):
        """The invariant bilinear form ``c * tr(x y)``."""
        t = (x @ y).trace()
        return _mul_frac(t, self.form_scale)

    def eta(self, x: Mat, y: Mat, z: Mat):
        """The invariant alternating 3-form; see CARTAN_COEFF note above."""
        return _mul_frac(self.form(x, bracket(y, z)), CARTAN_COEFF)

    def chi(self, a: Mat, b: Mat, c: Mat):
        """The 3-tensor matching eta under the form's identification.

        Arguments are the algebra coordinates of the three covectors (the
        metric duals), so the pairing against (x^v, y^v, z^v) is exactly
        eta(x, y, z).
        """
        return self.eta(a, b, c)

    def dual_coords(self, a: Mat) -> list:
        """Functional coordinates of the covector with algebra coordinate a."""
        return mat_vec(self.gram, self.coords(a))

    def covector_from_dual(self, dual) -> Mat:
        return self.mat_from_coords(mat_vec(self.gram_inv, list(dual)))

    # -- membership helpers ----------------------------------------------------

    def in_algebra(self, m: Mat, tol: float | None = None) -> bool:
        if self.family == "GL":
            return True
        t = m.trace()
        if m.backend == EXACT:
            return not t
        return abs(t) <= (tol or 1e-9) * max(1.0, m.max_abs())

    def in_borel(self, m: Mat, tol: float | None = None) -> bool:
        for i, j in self._lower:
            x = m.entry(i, j)
            if m.backend == EXACT:
                if x:
                    return False
            elif abs(x) > (tol or 1e-9) * max(1.0, m.max_abs()):
                return False
        return True


def _unit(n: int, i: int, j: int) -> Mat:
    m = [[QQi(0)] * n for _ in range(n)]
    m[i][j] = QQi(1)
    return Mat(m)


def _mul_frac(t, frac: Fraction):
    if frac == 1:
        return t
    if isinstance(t, QQi):
        return t * frac
    if isinstance(t, Dual):
        return Dual(_mul_frac(t.val, frac), _mul_frac(t.dot, frac))
    return t * float(frac)


def bracket(x: Mat, y: Mat) -> Mat:
    return x @ y - y @ x


_CONTEXTS: dict[tuple, GroupContext] = {}


def context(name: str, form_scale: Fraction = Fraction(1)) -> GroupContext:
    """Get the shared context for a group tag such as ``'sl2'``."""
    key = (name, form_scale)
    if key not in _CONTEXTS:
        if name not in GROUPS:
            raise ValueError(f"unknown group {name!r}")
        family, n = GROUPS[name]
        _CONTEXTS[key] = GroupContext(family, n, form_scale)
    return _CONTEXTS[key]


# ---------------------------------------------------------------------------
# typed elements


class GroupElement:
    """Invertible element of the context's group."""

    __slots__ = ("ctx", "m", "_inv")

    def __init__(self, ctx: GroupContext, m: Mat, check: bool = True):
        self.ctx = ctx
        self.m = m
        self._inv = None
        if check:
            d = m.det()
            if m.backend == EXACT:
                if not d:
                    raise ValueError("group element must be invertible")
                if ctx.family == "SL" and d != QQi(1):
                    raise ValueError("SL element must have determinant 1")
            else:
                if abs(d) < 1e-12:
                    raise ValueError("group element numerically singular")
                if ctx.family == "SL" and abs(d - 1) > 1e-6:
                    raise ValueError("SL element must have determinant ~1")

    @property
    def inv(self) -> Mat:
        if self._inv is None:
            self._inv = self.m.inverse()
        return self._inv

    def inverse(self) -> "GroupElement":
        g = GroupElement(self.ctx, self.inv, check=False)
        g._inv = self.m
        return g

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        if self.ctx is not other.ctx:
            raise ValueError("mixed contexts")
        return GroupElement(self.ctx, self.m @ other.m, check=False)

    def __eq__(self, other):
        return isinstance(other, GroupElement) and self.m == other.m

    def __hash__(self):
        return hash(self.m)

    def to_json(self) -> dict:
        d = mat_to_json(self.m)
        d["group"] = self.ctx.name
        return d

    @classmethod
    def from_json(cls, obj: dict, backend: str | None = None) -> "GroupElement":
        try:
            name = obj["group"]
        except (KeyError, TypeError):
            raise ValueError("group element JSON needs a 'group' tag") from None
        ctx = context(name)
        m = mat_from_json(obj, backend)
        if m.rows != ctx.n or m.cols != ctx.n:
            raise ValueError(f"matrix size does not match group {name}")
        return cls(ctx, m)

    def __repr__(self):
        return f"GroupElement({self.ctx.name}, {self.m!r})"


class AlgebraElement:
    """Element of the context's Lie algebra (trace-free for SL)."""

    __slots__ = ("ctx", "m")

    def __init__(self, ctx: GroupContext, m: Mat, check: bool = True):
        if check and not ctx.in_algebra(m):
            raise ValueError("matrix is not in the Lie algebra")
        self.ctx = ctx
        self.m = m

    def coords(self) -> list:
        return self.ctx.coords(self.m)

    def __eq__(self, other):
        return isinstance(other, AlgebraElement) and self.m == other.m

    def __repr__(self):
        return f"AlgebraElement({self.ctx.name}, {self.m!r})"


class TangentVec:
    """Tangent vector ``base * coord`` in left trivialization."""

    __slots__ = ("base", "coord")

    def __init__(self, base: GroupElement, coord: AlgebraElement):
        self.base = base
        self.coord = coord


class Covector:
    """Covector at ``base`` with ``alpha(X) = (coord, theta(X))``."""

    __slots__ = ("base", "coord")

    def __init__(self, base: GroupElement, coord: AlgebraElement):
        self.base = base
        self.coord = coord

    def __call__(self, v: TangentVec):
        return self.base.ctx.form(self.coord.m, v.coord.m)

    def dual_coords(self) -> list:
        return self.base.ctx.dual_coords(self.coord.m)


# ---------------------------------------------------------------------------
# the basic operations


def ad(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    if x.ctx is not y.ctx:
        raise ValueError("mixed contexts")
    return AlgebraElement(x.ctx, bracket(x.m, y.m), check=False)


def Ad(g: GroupElement, x: AlgebraElement) -> AlgebraElement:
    if g.ctx is not x.ctx:
        raise ValueError("mixed contexts")
    return AlgebraElement(g.ctx, g.m @ x.m @ g.inv, check=False)


def sigma(g: GroupElement, xi: AlgebraElement) -> Covector:
    """The averaged covector attached to xi at g.

    Left-trivialized coordinate: factor * (xi + Ad_{g^-1} xi) with the frozen
    factor 1/2.  The corruption hooks can rescale the factor or flip the sign
    of the Ad term for negative-control runs.
    """
    h = hooks.CURRENT
    adpart = g.inv @ xi.m @ g.m
    coord = (xi.m + _sgn(adpart, h.sigma_ad_sign)).scale(QQi(h.sigma_factor))
    return Covector(g, AlgebraElement(g.ctx, coord, check=False))


def sigma_mat(ctx: GroupContext, gmat, ximat):
    """Matrix-level sigma coordinate; generic over dual-valued points."""
    h = hooks.CURRENT
    adpart = gmat.inverse() @ ximat @ gmat
    return (ximat + _sgn(adpart, h.sigma_ad_sign)).scale(QQi(h.sigma_factor))


def _sgn(m, s: int):
    return m if s == 1 else -m


def sigma_adjoint(alpha: Covector) -> AlgebraElement:
    """The adjoint of sigma applied to a covector: factor * (a + Ad_g a)."""
    h = hooks.CURRENT
    g = alpha.base
    a = alpha.coord.m
    coord = (a + _sgn(g.m @ a @ g.inv, h.sigma_ad_sign)).scale(QQi(h.sigma_factor))
    return AlgebraElement(g.ctx, coord, check=False)


def conj_field(g: GroupElement, xi: AlgebraElement) -> TangentVec:
    """Generating vector field of conjugation at g, as xi^L - xi^R.

    Left-trivialized coordinate xi - Ad_{g^-1} xi; the sign convention is the
    one frozen in the conventions note (the opposite sign is the derivative
    of h |-> h g h^-1).
    """
    coord = xi.m - g.inv @ xi.m @ g.m
    return TangentVec(g, AlgebraElement(g.ctx, coord, check=False))


def conj_field_mat(gmat, ximat):
    return ximat - gmat.inverse() @ ximat @ gmat


def rho_adjoint(v: TangentVec) -> AlgebraElement:
    """Adjoint of the conjugation action: solve (zeta, xi) = (v, rho(xi)).

    Solved as a linear system over the algebra basis; the closed form
    ``v - Ad_g v`` is the independent oracle used in the tests.
    """
    ctx = v.base.ctx
    g = v.base
    rhs = []
    for b in ctx.basis:
        rho_b = b - g.inv @ b @ g.m
        rhs.append(ctx.form(v.coord.m, rho_b))
    zeta_coords = mat_vec(ctx.gram_inv, rhs)
    return AlgebraElement(ctx, ctx.mat_from_coords(zeta_coords), check=False)


def borel_decompose(b: GroupElement) -> tuple[GroupElement, GroupElement]:
    """Split an upper-triangular element as (torus part, unipotent part)."""
    ctx = b.ctx
    if not ctx.in_borel(b.m):
        raise ValueError("element is not upper triangular")
    n = ctx.n
    zero = QQi(0) if b.m.backend == EXACT else 0j
    tdata = [[b.m.entry(i, i) if i == j else zero for j in range(n)] for i in range(n)]
    t = Mat(tdata, b.m.backend)
    u = t.inverse() @ b.m
    te = GroupElement(ctx, t, check=False)
    ue = GroupElement(ctx, u, check=False)
    return te, ue


def chevalley(g: GroupElement) -> tuple:
    """Characteristic-polynomial invariants (the adjoint-quotient value).

    Returns the elementary symmetric functions of the eigenvalues: n-1 of
    them for SL_n (the determinant is pinned to 1), all n for GL_n.
    Computed from power sums via Newton's identities, exactly.
    """
    ctx = g.ctx
    n = ctx.n
    powers = []
    acc = g.m
    for _ in range(n):
        powers.append(acc.trace())
        acc = acc @ g.m
    one = QQi(1) if g.m.backend == EXACT else 1.0 + 0j
    es = [one]  # e_0 = 1; Newton: k e_k = sum_{i=1..k} (-1)^(i-1) e_{k-i} p_i
    for k in range(1, n + 1):
        s = es[k - 1] * powers[0] * 0
        for i in range(1, k + 1):
            term = es[k - i] * powers[i - 1]
            s = s + term if i % 2 == 1 else s - term
        es.append(_div_int(s, k))
    es = es[1:]
    if ctx.family == "SL":
        return tuple(es[: n - 1])
    return tuple(es)


def _div_int(x, k: int):
    if isinstance(x, QQi):
        return x / QQi(k)
    return x / k


def random_point(ctx: GroupContext, kind: str, rng: SplitMix64,
                 height: int = 10) -> GroupElement:
    """Exact-rational sample from the requested subgroup.

    ``G`` samples are built as (unit lower) * (diagonal) * (unit upper) with
    bounded-height rational entries and determinant fixed by the family;
    ``T-regular`` forces pairwise distinct diagonal entries.
    """
    n = ctx.n
    if kind == "G":
        low = _unitriangular(n, rng, height, lower=True)
        up = _unitriangular(n, rng, height, lower=False)
        diag = _torus_mat(ctx, rng, height, regular=False)
        return GroupElement(ctx, low @ diag @ up, check=False)
    if kind == "B":
        t = _torus_mat(ctx, rng, height, regular=False)
        u = _unitriangular(n, rng, height, lower=False)
        return GroupElement(ctx, t @ u, check=False)
    if kind == "T":
        return GroupElement(ctx, _torus_mat(ctx, rng, height, regular=False), check=False)
    if kind in ("T-regular", "regular-semisimple-T"):
        return GroupElement(ctx, _torus_mat(ctx, rng, height, regular=True), check=False)
    if kind == "U":
        return GroupElement(ctx, _unitriangular(n, rng, height, lower=False), check=False)
    raise ValueError(f"unknown sample kind {kind!r}")


def random_algebra(ctx: GroupContext, rng: SplitMix64, height: int = 10,
                   part: str = "g") -> AlgebraElement:
    coords = [QQi(rng.rational(height)) for _ in ctx.sub_indices(part)]
    full = ctx.embed_part_coords(part, coords)
    return AlgebraElement(ctx, ctx.mat_from_coords(full), check=False)


def _unitriangular(n: int, rng: SplitMix64, height: int, lower: bool) -> Mat:
    m = [[QQi(1) if i == j else QQi(0) for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(n):
            if (i > j) if lower else (i < j):
                m[i][j] = QQi(rng.rational(height))
    return Mat(m)


def _torus_mat(ctx: GroupContext, rng: SplitMix64, height: int, regular: bool) -> Mat:
    n = ctx.n
    while True:
        if ctx.family == "SL":
            entries = [rng.rational(height, nonzero=True) for _ in range(n - 1)]
            prod = Fraction(1)
            for e in entries:
                prod *= e
            entries.append(1 / prod)
        else:
            entries = [rng.rational(height, nonzero=True) for _ in range(n)]
        if not regular or len(set(entries)) == n:
            break
    m = [[QQi(entries[i]) if i == j else QQi(0) for j in range(n)] for i in range(n)]
    return Mat(m)


# ---------------------------------------------------------------------------
# the Weyl group


class WeylGroup:
    """Permutation-matrix representatives of N(T)/T.

    For SL the odd permutations carry a -1 in the first column so every
    representative has determinant one.  Representatives multiply correctly
    modulo the torus; ``compose_ok`` checks exactly that.
    """

    def __init__(self, ctx: GroupContext):
        self.ctx = ctx
        self.perms = list(itertools.permutations(range(ctx.n)))
        self.reps = {p: self._rep(p) for p in self.perms}

    def _rep(self, perm) -> GroupElement:
        n = self.ctx.n
        m = [[QQi(0)] * n for _ in range(n)]
        for j in range(n):
            m[perm[j]][j] = QQi(1)
        if self.ctx.family == "SL" and _parity(perm) == -1:
            m[perm[0]][0] = QQi(-1)
        return GroupElement(self.ctx, Mat(m), check=False)

    def __len__(self):
        return len(self.perms)

    def compose_ok(self, p1, p2) -> bool:
        composed = tuple(p1[p2[j]] for j in range(self.ctx.n))
        w = self.reps[composed].inv @ (self.reps[p1].m @ self.reps[p2].m)
        n = self.ctx.n
        return all(not w.entry(i, j) for i in range(n) for j in range(n) if i != j)


def _parity(perm) -> int:
    inv = sum(
        1
        for i in range(len(perm))
        for j in range(i + 1, len(perm))
        if perm[i] > perm[j]
    )
    return -1 if inv % 2 else 1
