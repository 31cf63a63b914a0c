"""Quantum Riemannian geometry over the central 1-form basis.

Metrics are constant real symmetric invertible 3x3 coefficient matrices
g = g_ij s^i (x) s^j.  For every such metric there is a unique quantum
Levi-Civita connection with constant coefficients,

    nabla s^i = -(1/2) Gamma^i_jk s^j (x) s^k,
    Gamma_ijk = 2 eps_ikm g_mj + Tr(g) eps_ijk,

equivalently Gamma_ijk = eps_ikm gamma_mj with gamma = 2g - Tr(g) id.  The
module computes the connection both from the closed form and by solving the
9x9 linear system expressing torsion and cotorsion freeness, the defect
tensors for torsion / cotorsion / metric compatibility, the braiding sigma,
and curvature data (rho coefficients, Ricci, scalar curvature) by two
independent routes.

All operations are generic over the scalar kind: exact ``Fraction`` entries
stay exact end to end, ``float`` entries compute in floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .scalars import ParamScalar, ONE, I, LP
from .algebra import AlgElem, commutator
from .forms import (
    DiffForm, TensorForm, d, wedge, tensor, s_basis, EPS)
from .linalg import solve_square, SingularSystemError

__all__ = [
    "Metric3", "Connection3", "CurvatureData",
    "qlc", "solve_qlc_linear", "torsion", "cotorsion",
    "metric_compat_defect", "nabla_g", "sigma",
    "curvature", "scalar_closed_form", "scalar_perturbation",
    "curvature_2form",
]

_IDX = (0, 1, 2)


def _normalize_entries(rows):
    rows = [list(r) for r in rows]
    if len(rows) != 3 or any(len(r) != 3 for r in rows):
        raise ValueError("metric must be a 3x3 matrix")
    has_float = any(isinstance(v, float) for r in rows for v in r)
    out = []
    for r in rows:
        if has_float:
            out.append(tuple(float(v) for v in r))
        else:
            out.append(tuple(v if isinstance(v, Fraction) else Fraction(v)
                             for v in r))
    return tuple(out), not has_float


def _det3(m):
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))


def _adjugate3(m):
    c = [[None] * 3 for _ in _IDX]
    for i in _IDX:
        for j in _IDX:
            r = [k for k in _IDX if k != i]
            s = [k for k in _IDX if k != j]
            minor = m[r[0]][s[0]] * m[r[1]][s[1]] \
                - m[r[0]][s[1]] * m[r[1]][s[0]]
            c[j][i] = minor if (i + j) % 2 == 0 else -minor
    return tuple(tuple(row) for row in c)


class Metric3:
    """Constant real symmetric invertible 3x3 metric coefficient matrix."""

    __slots__ = ("entries", "is_exact", "det", "inverse")

    def __init__(self, rows):
        entries, exact = _normalize_entries(rows)
        for i in _IDX:
            for j in _IDX:
                if entries[i][j] != entries[j][i]:
                    raise ValueError("metric not symmetric")
        det = _det3(entries)
        if not det:
            raise ValueError("metric not invertible")
        adj = _adjugate3(entries)
        self.entries = entries
        self.is_exact = exact
        self.det = det
        self.inverse = tuple(tuple(v / det for v in row) for row in adj)

    @classmethod
    def identity(cls):
        return cls.diagonal(1, 1, 1)

    @classmethod
    def diagonal(cls, a, b, c):
        z = 0
        return cls([[a, z, z], [z, b, z], [z, z, c]])

    def trace(self):
        e = self.entries
        return e[0][0] + e[1][1] + e[2][2]

    def __getitem__(self, i):
        return self.entries[i]

    def __eq__(self, other):
        if not isinstance(other, Metric3):
            return NotImplemented
        return self.entries == other.entries

    def __repr__(self):
        return f"Metric3({[list(r) for r in self.entries]!r})"


class Connection3:
    """Connection coefficients Gamma_ijk (first index lowered by ``metric``)."""

    __slots__ = ("gamma", "metric")

    def __init__(self, gamma, metric=None):
        gamma = tuple(tuple(tuple(row) for row in plane) for plane in gamma)
        if len(gamma) != 3 or any(
                len(p) != 3 or any(len(r) != 3 for r in p) for p in gamma):
            raise ValueError("connection coefficients must be 3x3x3")
        self.gamma = gamma
        self.metric = metric

    def _metric_or(self, g):
        g = g if g is not None else self.metric
        if g is None:
            raise ValueError("no metric attached to this connection")
        return g

    def raised(self, g=None):
        """Gamma^i_jk = g^{im} Gamma_mjk."""
        g = self._metric_or(g)
        ginv = g.inverse
        return tuple(
            tuple(
                tuple(
                    sum(ginv[i][m] * self.gamma[m][j][k] for m in _IDX)
                    for k in _IDX)
                for j in _IDX)
            for i in _IDX)

    def __eq__(self, other):
        if not isinstance(other, Connection3):
            return NotImplemented
        return self.gamma == other.gamma

    def __repr__(self):
        return f"Connection3({self.gamma!r})"


@dataclass(frozen=True)
class CurvatureData:
    """Curvature coefficients rho^i_jk, Ricci R_mn, and scalar curvature."""

    rho: tuple
    ricci: tuple
    scalar: object


def qlc(g):
    """The unique quantum Levi-Civita connection of ``g`` in closed form."""
    if not isinstance(g, Metric3):
        g = Metric3(g)
    tr = g.trace()
    e = g.entries
    gamma = tuple(
        tuple(
            tuple(
                2 * sum(EPS[i][k][m] * e[m][j] for m in _IDX)
                + tr * EPS[i][j][k]
                for k in _IDX)
            for j in _IDX)
        for i in _IDX)
    return Connection3(gamma, metric=g)


def solve_qlc_linear(g):
    """Solve the torsion/cotorsion constraints as an explicit 9x9 system.

    The constraints reduce to L_i gamma - (L_i gamma)^t + 2 g_im L_m = 0 with
    (L_i)_mn = eps_imn; the unique solution is returned as the 3x3 matrix
    gamma (so that Gamma_ijk = eps_ikm gamma_mj).  Raises
    SingularSystemError if the system were to acquire a kernel.
    """
    if not isinstance(g, Metric3):
        g = Metric3(g)
    e = g.entries
    zero = e[0][0] - e[0][0]
    rows, rhs = [], []
    # unknown vector: gamma_mn flattened as 3*m + n
    for i in _IDX:
        for (m, n) in ((0, 1), (0, 2), (1, 2)):
            row = [zero] * 9
            for k in _IDX:
                row[3 * k + n] = row[3 * k + n] + EPS[i][m][k]
                row[3 * k + m] = row[3 * k + m] - EPS[i][n][k]
            rows.append(row)
            rhs.append(-2 * sum(e[i][k] * EPS[k][m][n] for k in _IDX))
    x = solve_square(rows, rhs)
    return tuple(tuple(x[3 * m + n] for n in _IDX) for m in _IDX)


def connection_from_gamma_matrix(gamma_mat, g=None):
    """Connection with Gamma_ijk = eps_ikm gamma_mj."""
    gamma = tuple(
        tuple(
            tuple(
                sum(EPS[i][k][m] * gamma_mat[m][j] for m in _IDX)
                for k in _IDX)
            for j in _IDX)
        for i in _IDX)
    return Connection3(gamma, metric=g)


def torsion(conn, g=None):
    """Defect T_ijk = Gamma_ijk - Gamma_ikj - 2 g_im eps_mjk."""
    g = conn._metric_or(g)
    e = g.entries
    ga = conn.gamma
    return tuple(
        tuple(
            tuple(
                ga[i][j][k] - ga[i][k][j]
                - 2 * sum(e[i][m] * EPS[m][j][k] for m in _IDX)
                for k in _IDX)
            for j in _IDX)
        for i in _IDX)


def cotorsion(conn, g=None):
    """Defect C_ijk = Gamma_ijk - Gamma_jik - 2 g_km eps_mij."""
    g = conn._metric_or(g)
    e = g.entries
    ga = conn.gamma
    return tuple(
        tuple(
            tuple(
                ga[i][j][k] - ga[j][i][k]
                - 2 * sum(e[k][m] * EPS[m][i][j] for m in _IDX)
                for k in _IDX)
            for j in _IDX)
        for i in _IDX)


def metric_compat_defect(conn, g=None):
    """Defect D_lik = Gamma_lik + Gamma_kil; zero iff nabla g = 0."""
    ga = conn.gamma
    return tuple(
        tuple(
            tuple(ga[l][i][k] + ga[k][i][l] for k in _IDX)
            for i in _IDX)
        for l in _IDX)


def nabla_g(conn, g=None):
    """Coefficients of nabla g in s^m (x) s^i (x) s^n.

    Returns the 3x3x3 array T[m][i][n] = -(1/2)(Gamma_nmi + Gamma_imn).
    """
    ga = conn.gamma
    return tuple(
        tuple(
            tuple(-(ga[n][m][i] + ga[i][m][n]) / 2 for n in _IDX)
            for i in _IDX)
        for m in _IDX)


def curvature(conn, g=None):
    """Curvature data from the coefficient contraction route.

    rho^i_jk = (1/4) Gamma^i_jk - (1/8) eps_jmn Gamma^i_ml Gamma^l_nk for a
    constant connection, R_mn = rho^i_jn eps_jim, S = R_mn g^{mn}.
    """
    g = conn._metric_or(g)
    up = conn.raised(g)
    rho = tuple(
        tuple(
            tuple(
                up[i][j][k] / 4
                - sum(EPS[j][m][n] * up[i][m][l] * up[l][n][k]
                      for m in _IDX for n in _IDX for l in _IDX) / 8
                for k in _IDX)
            for j in _IDX)
        for i in _IDX)
    ricci = tuple(
        tuple(
            sum(rho[i][j][n] * EPS[j][i][m] for i in _IDX for j in _IDX)
            for n in _IDX)
        for m in _IDX)
    ginv = g.inverse
    scalar = sum(ricci[m][n] * ginv[m][n] for m in _IDX for n in _IDX)
    return CurvatureData(rho=rho, ricci=ricci, scalar=scalar)


def scalar_closed_form(g):
    """Scalar curvature S = (Tr(g^2) - Tr(g)^2/2) / (2 det g)."""
    if not isinstance(g, Metric3):
        g = Metric3(g)
    e = g.entries
    tr = g.trace()
    tr2 = sum(e[i][j] * e[j][i] for i in _IDX for j in _IDX)
    return (tr2 - tr * tr / 2) / (2 * g.det)


def scalar_perturbation(eps_matrix):
    """Quadratic model of S(id + E) for a small symmetric perturbation E:

    -3/4 + Tr(E)/4 - Tr(E)^2/12 + (E12^2 + E13^2 + E23^2)/4
    + ((E11-E22)^2 + (E11-E33)^2 + (E22-E33)^2)/24.
    """
    e = eps_matrix.entries if isinstance(eps_matrix, Metric3) else eps_matrix
    tr = e[0][0] + e[1][1] + e[2][2]
    off = e[0][1] ** 2 + e[0][2] ** 2 + e[1][2] ** 2
    diag = ((e[0][0] - e[1][1]) ** 2 + (e[0][0] - e[2][2]) ** 2
            + (e[1][1] - e[2][2]) ** 2)
    return (Fraction(-3, 4) + tr / 4 - tr * tr / 12
            + off / 4 + diag / 24)


# --------------------------------------------------------------------------
# braiding and the 2-form curvature route (exact algebra-valued pathway)

_HALF = ParamScalar.of(Fraction(1, 2))


def _as_alg(v):
    if isinstance(v, AlgElem):
        return v
    if isinstance(v, float):
        raise TypeError("algebra-valued operations require exact entries")
    return AlgElem.scalar(v)


def sigma(gamma_up, i, j):
    """Braiding sigma(s^i (x) s^j) for connection coefficients Gamma^i_jk.

    ``gamma_up`` is a 3x3x3 array (entries in the algebra, or exact scalars)
    of the coefficients in nabla s^i = -(1/2) Gamma^i_jk s^j (x) s^k; ``i``
    and ``j`` are 1-based.  For constant coefficients the commutator terms
    vanish and sigma is the flip map.
    """
    if i not in (1, 2, 3) or j not in (1, 2, 3):
        raise ValueError("tensor factor indices must be 1, 2 or 3")
    out = tensor(s_basis(j), s_basis(i))
    scale = ONE / (2 * (ONE - LP * LP))
    inner_scale = ONE / (2 * I * LP)
    xj = AlgElem.generator(j)
    for l in (1, 2, 3):
        for k in (1, 2, 3):
            gam = _as_alg(gamma_up[i - 1][l - 1][k - 1])
            if not gam:
                continue
            c1 = AlgElem.zero()
            c2 = AlgElem.zero()
            for n in (1, 2, 3):
                xn = AlgElem.generator(n)
                c1 = c1 + xj * xn * commutator(gam, xn)
                for m in (1, 2, 3):
                    e = EPS[j - 1][m - 1][n - 1]
                    if e:
                        t = commutator(gam, AlgElem.generator(m)) * xn
                        c2 = c2 + (t if e > 0 else -t)
            coeff = scale * (inner_scale * c1 + c2)
            if coeff:
                out = out + tensor(coeff * s_basis(l), s_basis(k))
    return out


def _rho_contraction_tensor(rho, i):
    """rho^i_jk eps_jmn s^m ^ s^n (x) s^k as a TensorForm."""
    out = TensorForm(2)
    for j in (1, 2, 3):
        for k in (1, 2, 3):
            r = rho[i - 1][j - 1][k - 1]
            if not r:
                continue
            for m in (1, 2, 3):
                for n in (1, 2, 3):
                    e = EPS[j - 1][m - 1][n - 1]
                    if not e:
                        continue
                    w = wedge(s_basis(m), s_basis(n))
                    out = out + tensor(
                        AlgElem.scalar(ParamScalar.of(r * e)) * w, s_basis(k))
    return out


def curvature_2form(conn, g=None):
    """Curvature 2-forms R(s^i) computed through the calculus operations.

    Evaluates (d (x) id - id ^ nabla) nabla on each basis 1-form and checks
    the result against the coefficient contraction of :func:`curvature`; a
    mismatch raises, since the two routes must agree identically.  Returns
    the tuple (R(s^1), R(s^2), R(s^3)) of left-degree-2 tensor forms.
    """
    g = conn._metric_or(g)
    if not g.is_exact:
        raise TypeError("curvature_2form requires an exact metric")
    up = conn.raised(g)
    rho = curvature(conn, g).rho

    def nabla_basis(k):
        out = TensorForm(1)
        for m in (1, 2, 3):
            for n in (1, 2, 3):
                c = up[k - 1][m - 1][n - 1]
                if c:
                    out = out + tensor(
                        AlgElem.scalar(ParamScalar.of(-c) / 2) * s_basis(m),
                        s_basis(n))
        return out

    results = []
    for i in (1, 2, 3):
        t = nabla_basis(i)
        acc = TensorForm(2)
        for ((jkey,), k), coeff in t.components.items():
            left = coeff * s_basis(jkey)
            # (d (x) id)
            acc = acc + tensor(d(left), s_basis(k))
            # -(id ^ nabla)
            for ((mkey,), n), c2 in nabla_basis(k).components.items():
                w = wedge(left, c2 * s_basis(mkey))
                if w:
                    acc = acc - tensor(w, s_basis(n))
        expected = _rho_contraction_tensor(rho, i)
        if acc != expected:
            raise RuntimeError(
                "curvature routes disagree: calculus route does not match "
                "the coefficient contraction")
        results.append(acc)
    return tuple(results)
