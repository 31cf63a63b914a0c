"""Exact identity suites behind the ``verify`` command.

Each check re-derives one defining identity of the package from first
principles and compares exactly (no floating point).  Reports carry the
equation being checked so a failure names the violated identity.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .algebra import AlgElem, X1, X2, X3, commutator
from .forms import d, eps3, s_basis, s_from_dx, theta
from .geometry import (Metric3, qlc, solve_qlc_linear,
                       connection_from_gamma_matrix, torsion, cotorsion,
                       metric_compat_defect, curvature, scalar_closed_form,
                       curvature_2form)
from .monopole import (AlgMatrix, FormMatrix, projector, projector_dP,
                       coords, basis_relation_check, grassmann_connection,
                       monopole_curvature, f23_factor)
from .scalars import I, LP, ONE

__all__ = ["SUITES", "run_suite", "iter_checks"]

_IDX = (0, 1, 2)


def _tensor_is_zero(t):
    return all(not x for p in t for r in p for x in r)


def _random_metrics(count, seed=12):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        e = [[Fraction(rng.randint(-6, 6), rng.randint(1, 4))
              for _ in _IDX] for _ in _IDX]
        for i in _IDX:
            for j in range(i + 1, 3):
                e[j][i] = e[i][j]
        try:
            out.append(Metric3(e))
        except ValueError:
            continue
    return out


# -- algebra ------------------------------------------------------------------


def _check_commutators():
    gens = (X1, X2, X3)
    two_i_lp = 2 * I * LP
    for (i, j, k) in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        if commutator(gens[i], gens[j]) != two_i_lp * gens[k]:
            return False
    return True


def _check_radius():
    return X1 * X1 + X2 * X2 + X3 * X3 == AlgElem.one() * (ONE - LP * LP)


def _check_star():
    for g in (X1, X2, X3):
        if g.star() != g:
            return False
    a, b = X1 + I * X2, X3 * X1
    return (a * b).star() == b.star() * a.star()


# -- calculus -----------------------------------------------------------------


def _check_dx():
    gens = (X1, X2, X3)
    for i in _IDX:
        acc = None
        for j in _IDX:
            for k in _IDX:
                e = eps3(i + 1, j + 1, k + 1)
                if e:
                    term = (e * gens[j]) * s_basis(k + 1)
                    acc = term if acc is None else acc + term
        if d(gens[i]) != acc:
            return False
    return True


def _check_d_squared():
    samples = [X1, X2, X3, X1 * X2, X3 * X3, X1 * X2 * X3]
    if any(not d(d(a)).is_zero() for a in samples):
        return False
    return all(d(d(s_basis(i))).is_zero() for i in (1, 2, 3))


def _check_leibniz():
    pairs = [(X1, X2), (X3, X1 * X2), (X2 * X2, X3)]
    return all(d(u * v) == d(u) * v + u * d(v) for u, v in pairs)


def _check_inner():
    th = theta()
    samples = [X1, X2, X3, X1 * X3, X2 * X2 * X1]
    return all(d(a) == th * a - a * th for a in samples)


def _check_s_recovery():
    return all(s_from_dx(l) == s_basis(l) for l in (1, 2, 3))


# -- metric connection ---------------------------------------------------------


def _check_qlc_defects():
    for g in _random_metrics(5):
        conn = qlc(g)
        if not _tensor_is_zero(torsion(conn)):
            return False
        if not _tensor_is_zero(cotorsion(conn)):
            return False
        if not _tensor_is_zero(metric_compat_defect(conn)):
            return False
    return True


def _check_qlc_solver():
    for g in _random_metrics(5):
        gm = solve_qlc_linear(g)
        tr = g.trace()
        want = tuple(
            tuple(2 * g.entries[m][n] - (tr if m == n else 0) for n in _IDX)
            for m in _IDX)
        if gm != want:
            return False
        if connection_from_gamma_matrix(gm, g) != qlc(g):
            return False
    return True


def _check_round_scalar():
    data = curvature(qlc(Metric3.identity()))
    if data.scalar != Fraction(-3, 4):
        return False
    want = tuple(tuple(Fraction(-1, 4) if i == j else 0 for j in _IDX)
                 for i in _IDX)
    return data.ricci == want


def _check_scalar_closed_form():
    return all(curvature(qlc(g)).scalar == scalar_closed_form(g)
               for g in _random_metrics(5, seed=13))


def _check_two_form_route():
    # curvature_2form compares the calculus route against the coefficient
    # contraction internally and raises on any mismatch
    for g in _random_metrics(2, seed=14):
        try:
            forms = curvature_2form(qlc(g), g)
        except RuntimeError:
            return False
        if len(forms) != 3:
            return False
    return True


# -- monopole -----------------------------------------------------------------


def _check_projector():
    p = projector()
    if not (p @ p - p).is_zero():
        return False
    if not (p.star() - p).is_zero():
        return False
    return p.trace() == AlgElem.one() * (ONE + LP)


def _check_coords():
    x, z = coords()
    if commutator(x, z) != AlgElem.one() * LP * z:
        return False
    return z.star() * z == x * (AlgElem.one() - x)


def _check_connection_closed_form():
    try:
        grassmann_connection()
    except RuntimeError:
        return False
    return True


def _check_curvature_factors():
    try:
        f12, f31, f23 = monopole_curvature()
    except RuntimeError:
        return False
    p = projector()
    lp_a = AlgElem.one() * LP
    want12 = AlgMatrix([[X3 - lp_a, 0], [0, X3 + lp_a]]) @ p
    want31 = AlgMatrix([[X2, I * lp_a], [-I * lp_a, X2]]) @ p
    return (f12 - 2 * want12).is_zero() and (f31 - 2 * want31).is_zero()


def _check_f23_factor():
    lp_a = AlgElem.one() * LP
    want = AlgMatrix([[X1, lp_a], [lp_a, X1]])
    return (f23_factor() - want).is_zero()


def _check_connection_star():
    p = projector()
    dp = projector_dP()
    conn = grassmann_connection()
    p_dp = FormMatrix([
        [p.m[a][0] * dp.m[0][c] + p.m[a][1] * dp.m[1][c] for c in (0, 1)]
        for a in (0, 1)])
    return conn.star() == p_dp


SUITES = {
    "algebra": (
        ("generator commutators",
         "[x_i, x_j] = 2 i lp eps_ijk x_k", _check_commutators),
        ("sphere radius relation",
         "x1^2 + x2^2 + x3^2 = 1 - lp^2", _check_radius),
        ("star anti-involution",
         "(a b)* = b* a*, x_i* = x_i", _check_star),
    ),
    "calculus": (
        ("derivative of generators",
         "d x_i = eps_ijk x_j s^k", _check_dx),
        ("nilpotent derivative",
         "d(d a) = 0", _check_d_squared),
        ("Leibniz rule",
         "d(a b) = (d a) b + a (d b)", _check_leibniz),
        ("inner calculus in degree 0",
         "d a = theta a - a theta", _check_inner),
        ("basis recovery from dx",
         "eps_lim (d x_i) x_m recovers s^l", _check_s_recovery),
    ),
    "qlc": (
        ("torsion vanishes",
         "wedge(nabla) - d = 0", _check_qlc_defects),
        ("closed form solves the linear system",
         "Gamma_ijk = 2 eps_ikm g_mj + Tr(g) eps_ijk", _check_qlc_solver),
        ("round metric curvature",
         "Ricci = -(1/4) id, S = -3/4", _check_round_scalar),
        ("scalar curvature closed form",
         "S = (Tr g^2 - (Tr g)^2 / 2) / (2 det g)", _check_scalar_closed_form),
        ("2-form route matches contraction",
         "rho from wedge route = coefficient route", _check_two_form_route),
    ),
    "monopole": (
        ("projector",
         "P^2 = P, P* = P, Tr P = 1 + lp", _check_projector),
        ("step coordinates",
         "[x, z] = lp z, z* z = x (1 - x)", _check_coords),
        ("projective basis relation",
         "(x - lp) e^1 = z e^2", basis_relation_check),
        ("Grassmann connection closed form",
         "(dP)P = ((1+lp)/2) dP + lp P theta + (i/4)(1-lp^2) Q"
         " - (lp(1-lp)/2) theta", _check_connection_closed_form),
        ("connection star symmetry",
         "((dP)P)* = P dP", _check_connection_star),
        ("curvature factorizations",
         "f12 = 2 diag(x3 - lp, x3 + lp) P, f31 = 2 [[x2, i lp],"
         " [-i lp, x2]] P", _check_curvature_factors),
        ("third curvature factor",
         "f23 = 2 [[x1, lp], [lp, x1]] P", _check_f23_factor),
    ),
}


def iter_checks(suite):
    """Yield (suite, description, anchor, fn) for one suite or ``all``."""
    names = list(SUITES) if suite == "all" else [suite]
    for name in names:
        if name not in SUITES:
            raise KeyError("unknown suite: %s" % name)
        for description, anchor, fn in SUITES[name]:
            yield name, description, anchor, fn


def run_suite(suite, write=print):
    """Run a suite, print one line per identity, return overall success."""
    ok = True
    for name, description, anchor, fn in iter_checks(suite):
        passed = bool(fn())
        ok = ok and passed
        write("%s: %s [%s]: %s"
              % (name, description, anchor, "PASS" if passed else "FAIL"))
    return ok
