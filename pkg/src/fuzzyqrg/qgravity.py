"""Euclidean functional integrals over 3x3 metrics.

The partition function integrates over the cone of positive symmetric
matrices with measure |det g|^{-2} dg and action weight
exp(-(1/G)(Tr g^2 - (1/2)(Tr g)^2)).  In eigenvalue coordinates the
weight becomes

    |Delta(lam)| / (lam1 lam2 lam3)^2 * exp(-Q / 2G),
    Q = sum lam_i^2 - 2 sum_{i<j} lam_i lam_j,

with Delta the Vandermonde factor, integrated over [eps, L]^3.  Moments
are computed two independent ways: deterministic quadrature in eigenvalue
coordinates, and rejection Monte Carlo directly over matrix entries.
The (u, v, w) change of variables diagonalizes Q to -3u^2 + 12v^2 + 4w^2
and yields the fluctuation integral Z_u at fixed mean eigenvalue u.
"""

from __future__ import annotations

import itertools
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

__all__ = [
    "QGConfig", "MomentEstimate", "MCEstimate", "PartialZu", "SweepResult",
    "action_matrix", "eigen_weight", "moments", "moment_set",
    "mc_matrix_oracle", "uvw_map", "uvw_inverse", "quad_form",
    "quad_form_uvw", "partial_zu_integrand", "partial_Zu", "sweep",
]

SWEEP_SCHEMA = "fuzzyqrg.sweep.v1"


def _thread_count():
    raw = os.environ.get("FUZZYQRG_THREADS", "")
    if not raw:
        return 1
    n = int(raw)
    if n < 1:
        raise ValueError("FUZZYQRG_THREADS must be a positive integer")
    return n


def _map_ordered(fn, items):
    """Map preserving order; parallel when FUZZYQRG_THREADS > 1.

    The reduction downstream always consumes results in input order, so
    the thread count never changes any output bit.
    """
    n = _thread_count()
    if n == 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))


@dataclass(frozen=True)
class QGConfig:
    """Cutoffs, coupling and sampling parameters for the metric integrals."""

    G: float = 1.0
    eps: float = 0.01
    L: float = 10.0
    resolution: int = 48
    samples: int = 100_000
    seed: int = 0

    def __post_init__(self):
        if not self.G > 0:
            raise ValueError("coupling G must be positive")
        if not 0 < self.eps < self.L:
            raise ValueError("cutoffs must satisfy 0 < eps < L")
        if self.resolution < 16:
            raise ValueError("resolution must be at least 16 per axis")
        if self.samples < 1:
            raise ValueError("sample count must be positive")


@dataclass(frozen=True)
class MomentEstimate:
    spec: tuple
    value: float
    error: float


@dataclass(frozen=True)
class MCEstimate:
    value: float
    stderr: float
    n_accepted: int
    n_total: int


@dataclass(frozen=True)
class PartialZu:
    value: float
    error: float
    margin: float


# -- pointwise quantities ---------------------------------------------------


def action_matrix(g):
    """Action of a symmetric 3x3 metric:
    (Tr g^2 - (1/2)(Tr g)^2) / (2 det g).

    Accepts a nested sequence or array; exact inputs (Fractions) stay
    exact.  Raises on singular input.
    """
    rows = [list(r) for r in g]
    if len(rows) != 3 or any(len(r) != 3 for r in rows):
        raise ValueError("expected a 3x3 matrix")
    a, b, c = rows[0][0], rows[1][1], rows[2][2]
    p, q, r = rows[0][1], rows[0][2], rows[1][2]
    if rows[1][0] != p or rows[2][0] != q or rows[2][1] != r:
        raise ValueError("metric not symmetric")
    det = a * (b * c - r * r) - p * (p * c - r * q) + q * (p * r - b * q)
    if det == 0:
        raise ValueError("metric not invertible")
    num = (a * a + b * b + c * c) - 2 * (a * b + a * c + b * c) \
        + 4 * (p * p + q * q + r * r)
    return num / (4 * det)


def quad_form(l1, l2, l3):
    """Q = sum of squares minus twice the sum of pairwise products."""
    return (l1 * l1 + l2 * l2 + l3 * l3
            - 2 * (l1 * l2 + l1 * l3 + l2 * l3))


def eigen_weight(l1, l2, l3, G):
    """Eigenvalue-coordinate weight
    |Delta| / (l1 l2 l3)^2 * exp(-Q / 2G)."""
    delta = abs((l1 - l2) * (l1 - l3) * (l2 - l3))
    return delta / (l1 * l2 * l3) ** 2 * math.exp(-quad_form(l1, l2, l3)
                                                  / (2 * G))


def uvw_map(l1, l2, l3):
    """(u, v, w) coordinates diagonalizing the quadratic form."""
    u = (l1 + l2 + l3) / 3
    v = (l2 + l3 - 2 * l1) / 6
    w = (l3 - l2) / 2
    return u, v, w


def uvw_inverse(u, v, w):
    return u - 2 * v, u + v - w, u + v + w


def quad_form_uvw(u, v, w):
    return -3 * u * u + 12 * v * v + 4 * w * w


# -- eigenvalue-coordinate quadrature ---------------------------------------

_MIN_RESOLUTION = 16


@lru_cache(maxsize=None)
def _ref_panel(order):
    x, w = np.polynomial.legendre.leggauss(order)
    return x, w


def _panel_order(n):
    """Gauss-Legendre order per graded panel for resolution n."""
    return max(4, n // 3)


def _graded_edges(a, b, w_bot, w_top):
    """Panel edges on [a, b], dyadically refined toward both endpoints.

    The first panel at each end has the requested width and successive
    widths double toward the midpoint, so endpoint features of scale
    w_bot / w_top cost only logarithmically many panels.
    """
    mid = 0.5 * (a + b)
    lo, x, w = [a], a, w_bot
    while x + w < mid:
        x += w
        lo.append(x)
        w *= 2.0
    hi, x, w = [b], b, w_top
    while x - w > mid:
        x -= w
        hi.append(x)
        w *= 2.0
    return np.array(sorted(set(lo) | set(hi)))


def _axis_nodes(a, b, w_bot, w_top, order):
    """Composite Gauss-Legendre rule on [a, b] with graded panels.

    The panel layout is fixed by the grading; the per-panel order is the
    refinement knob, so halving it coarsens every feature uniformly.
    """
    span = b - a
    edges = _graded_edges(a, b, min(w_bot, span / 4), min(w_top, span / 4))
    x, w = _ref_panel(order)
    half = 0.5 * (edges[1:] - edges[:-1])
    nodes = edges[:-1, None] + half[:, None] * (x + 1.0)
    weights = half[:, None] * np.broadcast_to(w, (len(half), order))
    return nodes.ravel(), weights.ravel()


def _sym_terms(exps):
    """Distinct permutations of an exponent triple, in a fixed order."""
    return sorted(set(itertools.permutations(exps)))


def _spec_exponents(spec):
    exps = [0, 0, 0]
    for i in spec:
        if i not in (1, 2, 3):
            raise ValueError("moment indices must be 1, 2 or 3")
        exps[i - 1] += 1
    return tuple(exps)


def _ordered_sector_sums(G, eps, L, n, exps_list):
    """Integrals of the weight times symmetrized monomials over the
    ordered sector eps <= lam1 <= lam2 <= lam3 <= L.

    Works in log coordinates, where the ordered-sector integrand is
    smooth (the Vandermonde carries no absolute-value kink there), and
    rescales by the peak log-integrand so arbitrarily large L^2/G costs
    no overflow.  Panels are graded toward both ends of every axis: the
    exponential favors near-equal eigenvalues near the upper cutoff with
    a peak of log-width about G/L^2, while the 1/lam^2 measure pins mass
    within about one log unit of the lower cutoff.  Returns
    (S0, [S_e...]) up to one common exp(shift) factor, which cancels in
    all moment ratios.
    """
    a, b = math.log(eps), math.log(L)
    w_top = max(G / (2.0 * L * L), 1e-7)
    order = _panel_order(n)
    mu3, w3 = _axis_nodes(a, b, 1.0, w_top, order)

    def row(j):
        m3, wt3 = mu3[j], w3[j]
        l3 = math.exp(m3)
        mu2, w2 = _axis_nodes(a, m3, 1.0, w_top, order)
        cells = []
        for k in range(len(mu2)):
            m2, wt2 = mu2[k], w2[k]
            l2 = math.exp(m2)
            mu1, w1 = _axis_nodes(a, m2, 1.0, w_top, order)
            l1 = np.exp(mu1)
            # log of weight * Jacobian (lam1 lam2 lam3 from d lam = lam d mu)
            logf = (np.log(l2 - l1) + np.log(l3 - l1) + math.log(l3 - l2)
                    - (mu1 + m2 + m3)
                    - (quad_form(l1, l2, l3)) / (2.0 * G))
            cells.append((wt3 * wt2 * w1, logf, l1, l2, l3))
        return cells

    rows = _map_ordered(row, range(len(mu3)))
    shift = max(float(np.max(c[1])) for cells in rows for c in cells)

    s0_parts, mono_parts = [], [[] for _ in exps_list]
    for cells in rows:
        for wts, logf, l1, l2, l3 in cells:
            base = wts * np.exp(logf - shift)
            s0_parts.append(float(np.sum(base)))
            for idx, exps in enumerate(exps_list):
                perms = _sym_terms(exps)
                acc = np.zeros_like(base)
                for (e1, e2, e3) in perms:
                    acc += base * (l1 ** e1) * (l2 ** e2) * (l3 ** e3)
                mono_parts[idx].append(float(np.sum(acc)) / len(perms))
    s0 = math.fsum(s0_parts)
    return s0, [math.fsum(p) for p in mono_parts]


def moment_set(cfg, specs):
    """Moments for several multi-indices, sharing quadrature passes.

    Each moment is the ratio of the monomial-weighted integral to the
    plain one; the error is the change under halving the resolution.
    """
    specs = [tuple(s) for s in specs]
    exps_list = [_spec_exponents(s) for s in specs]
    n_half = max(_MIN_RESOLUTION, cfg.resolution // 2)
    s0, nums = _ordered_sector_sums(cfg.G, cfg.eps, cfg.L,
                                    cfg.resolution, exps_list)
    s0h, numsh = _ordered_sector_sums(cfg.G, cfg.eps, cfg.L,
                                      n_half, exps_list)
    if not (math.isfinite(s0) and s0 > 0):
        raise ArithmeticError("quadrature normalization is not positive")
    out = {}
    for spec, num, numh in zip(specs, nums, numsh):
        v = num / s0
        vh = numh / s0h
        out[spec] = MomentEstimate(spec=spec, value=v, error=abs(v - vh))
    return out


def moments(cfg, spec):
    """Expectation of lam_{i1} ... lam_{in} under the eigenvalue weight."""
    return moment_set(cfg, [spec])[tuple(spec)]


# -- matrix-coordinate Monte Carlo oracle -----------------------------------

_MC_CHUNK = 8192


def mc_matrix_oracle(cfg, observable):
    """Monte Carlo mean of observable(g) over symmetric matrices.

    Samples diagonal entries uniformly in [eps, L] and off-diagonals in
    [-(L-eps)/2, (L-eps)/2] (a box containing every symmetric matrix
    with spectrum in [eps, L]), rejects samples whose eigenvalues leave
    [eps, L], and weights by |det g|^{-2} exp(-(1/G)(Tr g^2
    - (1/2)(Tr g)^2)).  Weights are carried relative to a running
    log-scale shift, so actions of order L^2/G never overflow.  Returns
    the weighted mean with a standard error from the ratio delta method.
    Deterministic for a fixed seed and independent of thread count.
    """
    half = (cfg.L - cfg.eps) / 2.0
    n_chunks = -(-cfg.samples // _MC_CHUNK)

    def chunk(c):
        count = min(_MC_CHUNK, cfg.samples - c * _MC_CHUNK)
        rng = np.random.default_rng(np.random.SeedSequence(
            cfg.seed, spawn_key=(c,)))
        diag = rng.uniform(cfg.eps, cfg.L, size=(count, 3))
        off = rng.uniform(-half, half, size=(count, 3))
        gs = np.zeros((count, 3, 3))
        gs[:, 0, 0], gs[:, 1, 1], gs[:, 2, 2] = diag.T
        gs[:, 0, 1] = gs[:, 1, 0] = off[:, 0]
        gs[:, 0, 2] = gs[:, 2, 0] = off[:, 1]
        gs[:, 1, 2] = gs[:, 2, 1] = off[:, 2]
        lam = np.linalg.eigvalsh(gs)
        keep = (lam[:, 0] >= cfg.eps) & (lam[:, -1] <= cfg.L)
        gs = gs[keep]
        if len(gs) == 0:
            return (-math.inf,) + (0.0,) * 5 + (0,)
        tr = np.trace(gs, axis1=1, axis2=2)
        tr2 = np.sum(gs * gs, axis=(1, 2))
        det = np.linalg.det(gs)  # positive: the spectrum lies in [eps, L]
        logw = -2.0 * np.log(det) - (tr2 - 0.5 * tr * tr) / cfg.G
        shift = float(np.max(logw))
        w = np.exp(logw - shift)
        obs = np.array([float(observable(g)) for g in gs])
        return (shift, float(np.sum(w)), float(np.sum(w * obs)),
                float(np.sum(w * w)), float(np.sum(w * w * obs)),
                float(np.sum(w * w * obs * obs)), len(gs))

    parts = _map_ordered(chunk, range(n_chunks))
    shift = max(p[0] for p in parts)
    scaled = []
    for p in parts:
        f = math.exp(p[0] - shift) if p[6] else 0.0
        scaled.append((f * p[1], f * p[2],
                       f * f * p[3], f * f * p[4], f * f * p[5]))
    s_w = math.fsum(p[0] for p in scaled)
    s_wo = math.fsum(p[1] for p in scaled)
    s_w2 = math.fsum(p[2] for p in scaled)
    s_w2o = math.fsum(p[3] for p in scaled)
    s_w2o2 = math.fsum(p[4] for p in scaled)
    accepted = sum(p[6] for p in parts)
    if accepted == 0:
        raise RuntimeError(
            "no Monte Carlo samples accepted; check eps, L and sample count")
    ratio = s_wo / s_w
    var = (s_w2o2 - 2 * ratio * s_w2o + ratio * ratio * s_w2) / (s_w * s_w)
    return MCEstimate(value=ratio, stderr=math.sqrt(max(var, 0.0)),
                      n_accepted=accepted, n_total=cfg.samples)


# -- partial theory at fixed mean eigenvalue --------------------------------


def partial_zu_integrand(u, v, w, G):
    """Integrand of the fluctuation integral at fixed u:
    |9v^2 - w^2| w / ((u - 2v)^2 ((u + v)^2 - w^2)^2)
    * exp(-(2/G)(3v^2 + w^2))."""
    num = abs(9 * v * v - w * w) * w
    den = (u - 2 * v) ** 2 * ((u + v) ** 2 - w * w) ** 2
    return num / den * math.exp(-(2.0 / G) * (3 * v * v + w * w))


def _zu_value(u, G, n, margin):
    order = _panel_order(n)
    dv = margin * 1.5 * u          # relative to the v-range size 3u/2
    # graded toward v = u/2 and w = u + v, where the excluded poles sit
    v_nodes, v_wts = _axis_nodes(-u + dv, u / 2 - dv, u / 2, dv, order)
    totals = []
    for v, wv in zip(v_nodes, v_wts):
        w_hi = (u + v) * (1.0 - margin)
        if w_hi <= 0:
            continue
        kink = 3 * abs(v)
        cuts = [0.0, kink, w_hi] if 0.0 < kink < w_hi else [0.0, w_hi]
        inner = 0.0
        for lo, hi in zip(cuts[:-1], cuts[1:]):
            w_top = margin * (u + v) if hi == w_hi else (hi - lo) / 4
            w_nodes, w_wts = _axis_nodes(lo, hi, (hi - lo) / 4, w_top, order)
            vals = np.abs(9 * v * v - w_nodes ** 2) * w_nodes \
                / ((u - 2 * v) ** 2 * ((u + v) ** 2 - w_nodes ** 2) ** 2) \
                * np.exp(-(2.0 / G) * (3 * v * v + w_nodes ** 2))
            inner += float(np.dot(w_wts, vals))
        totals.append(wv * inner)
    return 4.0 * math.fsum(totals)


def partial_Zu(u, G, resolution=64, margin=1e-4):
    """The fluctuation integral Z_u over the margin-shrunk (v, w) region.

    The exact integral diverges at the boundaries v = u/2 (lam1 = 0) and
    w = u + v (lam2 = 0); both are excluded by the given relative margin,
    which is reported alongside the value.  The error field is the change
    under halving the quadrature resolution.
    """
    if not u > 0:
        raise ValueError("u must be positive")
    if not G > 0:
        raise ValueError("coupling G must be positive")
    if not margin > 0:
        raise ValueError("margin must be positive")
    v = _zu_value(u, G, resolution, margin)
    vh = _zu_value(u, G, max(_MIN_RESOLUTION, resolution // 2), margin)
    return PartialZu(value=v, error=abs(v - vh), margin=margin)


# -- sweeps ------------------------------------------------------------------

_RATIO_SPECS = ((1,), (1, 2), (1, 1))


@dataclass(frozen=True)
class SweepResult:
    """Moment sweep over the upper cutoff L.

    rows: one mapping per (L, moment_spec) pair with keys matching the
    CSV columns; eps_report: halving-stability check at the largest L.
    """

    schema: str
    rows: tuple
    eps_report: dict

    def to_csv(self):
        import csv
        import io
        buf = io.StringIO()
        buf.write("# schema=%s\n" % self.schema)
        er = self.eps_report
        buf.write("# eps_stability: L=%r eps=%r eps_half=%r "
                  "mean_lambda=%r mean_lambda_half=%r rel_change=%r\n"
                  % (er["L"], er["eps"], er["eps_half"], er["mean_lambda"],
                     er["mean_lambda_half"], er["rel_change"]))
        wr = csv.writer(buf, lineterminator="\n")
        cols = ("L", "G", "eps", "moment_spec", "estimate", "error",
                "ratio_16over3", "uncertainty")
        wr.writerow(cols)
        for row in self.rows:
            wr.writerow([("" if row[c] is None else row[c]) for c in cols])
        return buf.getvalue()

    def to_json(self):
        import json
        return json.dumps({
            "schema": self.schema,
            "rows": list(self.rows),
            "eps_stability": self.eps_report,
        }, indent=2, sort_keys=False) + "\n"


def _spec_label(spec):
    return ",".join(str(i) for i in spec)


def sweep(cfg, L_values, specs=((1,),)):
    """Quadrature moments over a list of upper cutoffs L.

    Every row carries the requested moment plus two derived columns:
    ratio_16over3 = <lam1 lam2>/<lam1>^2 and uncertainty
    = sqrt(<lam1^2> - <lam1>^2)/<lam1>, the quantities whose large-L
    trends are the interesting ones.  Ratios are omitted (None) when the
    denominator does not exceed its own error estimate.  Output is byte
    deterministic for a fixed config.
    """
    specs = [tuple(s) for s in specs]
    rows = []
    for L in L_values:
        c = QGConfig(G=cfg.G, eps=cfg.eps, L=float(L),
                     resolution=cfg.resolution, samples=cfg.samples,
                     seed=cfg.seed)
        wanted = list(dict.fromkeys(list(_RATIO_SPECS) + specs))
        est = moment_set(c, wanted)
        m1, m12, m11 = est[(1,)], est[(1, 2)], est[(1, 1)]
        ratio = None
        unc = None
        if m1.value > m1.error:
            ratio = m12.value / (m1.value * m1.value)
            var = m11.value - m1.value * m1.value
            unc = math.sqrt(max(var, 0.0)) / m1.value
        for spec in specs:
            e = est[spec]
            rows.append({
                "L": float(L), "G": cfg.G, "eps": cfg.eps,
                "moment_spec": _spec_label(spec),
                "estimate": e.value, "error": e.error,
                "ratio_16over3": ratio, "uncertainty": unc,
            })
    l_max = float(max(L_values))
    base = QGConfig(G=cfg.G, eps=cfg.eps, L=l_max,
                    resolution=cfg.resolution, samples=cfg.samples,
                    seed=cfg.seed)
    halved = QGConfig(G=cfg.G, eps=cfg.eps / 2.0, L=l_max,
                      resolution=cfg.resolution, samples=cfg.samples,
                      seed=cfg.seed)
    v = moments(base, (1,)).value
    vh = moments(halved, (1,)).value
    report = {
        "L": l_max, "eps": cfg.eps, "eps_half": cfg.eps / 2.0,
        "mean_lambda": v, "mean_lambda_half": vh,
        "rel_change": abs(v - vh) / abs(v) if v else float("inf"),
    }
    return SweepResult(schema=SWEEP_SCHEMA, rows=tuple(rows),
                       eps_report=report)
