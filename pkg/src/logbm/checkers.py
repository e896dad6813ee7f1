"""One verifier per statement, each returning a CheckReport.

Checkers come in three kinds. ``proved`` checkers verify unconditional
statements: a false verdict is a bug and raises InternalInconsistency.
``probe`` checkers evaluate conditional or conjectural statements and only
report. ``demo`` checkers expect a specific known outcome.

Every checker takes ``mode="exact"`` (zero tolerance, rationals and
radicals) or ``mode="float"`` (Qhull geometry, relative tolerances).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import floatgeom
from .bodies import box, cube, cross_polytope, segment, square2d, to_spec, zonotope
from .errors import InternalInconsistency, ZeroVector
from .exact import (
    RadicalScalar,
    canonical_direction,
    dot,
    format_rational,
    format_scalar,
    norm_sq,
    radical_sum,
    rank,
)
from .functionals import (
    SemiNorm,
    cauchy_from_facets,
    mixed_volumes,
    rank_one_direction,
    surface_linear_from_facets,
    surface_quadratic_from_facets,
    weighted_quadratic_from_facets,
)
from .polytope import (
    Polytope,
    as_vector,
    central_section_volume,
    diameter_sq,
    inradius_sq,
    max_inscribed_scaling,
    minkowski_sum,
    projection_onto_complement,
    scale,
    support,
)
from .structure import (
    cylinder_cap,
    has_base_perpendicular_to,
    is_cylinder_axis_base,
)

PROVED = "proved"
PROBE = "probe"
DEMO = "demo"


@dataclass(frozen=True)
class Tolerances:
    """Relative tolerances for float mode."""

    identity: float = 1e-9
    inequality: float = 1e-7


DEFAULT_TOLERANCES = Tolerances()


def as_tolerances(tol) -> Tolerances:
    if tol is None:
        return DEFAULT_TOLERANCES
    if isinstance(tol, Tolerances):
        return tol
    return Tolerances(float(tol), float(tol))


@dataclass
class CheckReport:
    check_name: str
    lhs: object
    rhs: object
    holds: bool
    equality: bool
    relative_margin: object
    mode: str
    kind: str
    tolerance: float | None = None
    counterexample_candidate: bool = False
    details: dict = field(default_factory=dict)

    @property
    def gap(self):
        return self.rhs - self.lhs

    def to_dict(self) -> dict:
        return {
            "checkName": self.check_name,
            "kind": self.kind,
            "mode": self.mode,
            "lhs": format_scalar(self.lhs),
            "rhs": format_scalar(self.rhs),
            "holds": self.holds,
            "equality": self.equality,
            "relativeMargin": None if self.relative_margin is None else format_scalar(self.relative_margin),
            "tolerance": self.tolerance,
            "counterexampleCandidate": self.counterexample_candidate,
            "details": jsonable(self.details),
        }


def jsonable(x):
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, int):
        return x
    if isinstance(x, (Fraction, RadicalScalar)):
        return format_scalar(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        return x if math.isfinite(x) else str(x)
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, Polytope):
        return to_spec(x)
    return str(x)


def vector_spec(v) -> list:
    return [format_rational(x) for x in as_vector(v)]


def norm_spec(N: SemiNorm) -> dict:
    from .functionals import MaxForm

    if isinstance(N, MaxForm):
        return {"kind": "maxForm", "omega": [vector_spec(v) for v in N.omega]}
    return {"kind": "sumForm",
            "generators": [[format_rational(a), vector_spec(v)] for a, v in N.generators]}


# ---------------------------------------------------------------------------
# engines


@lru_cache(maxsize=1024)
def _float_body(P: Polytope) -> floatgeom.FloatBody:
    return floatgeom.FloatBody(P)


class ExactEngine:
    mode = "exact"

    def __init__(self, tol=None):
        self.tol = as_tolerances(tol)

    def facets(self, K):
        return K.facets

    def volume(self, K):
        return K.volume

    def support(self, M, u):
        return support(M, u)

    def support_fn(self, M):
        return lambda a: support(M, a)

    def mixed(self, K, M):
        return mixed_volumes(K, M).values

    def projection(self, K, vectors):
        return projection_onto_complement(K, vectors)

    def section(self, K, u):
        return central_section_volume(K, u)

    def sqrt(self, x):
        return RadicalScalar(1, x)

    def num(self, x):
        if isinstance(x, RadicalScalar) and x.is_rational:
            return x.to_fraction()
        return Fraction(x) if isinstance(x, int) else x

    def decide(self, lhs, rhs, identity=False, scale=None):
        equality = lhs == rhs
        holds = equality if identity else lhs <= rhs
        return holds, equality, _margin_exact(lhs, rhs)

    def tolerance(self, identity=False):
        return None


class FloatEngine:
    mode = "float"

    def __init__(self, tol=None):
        self.tol = as_tolerances(tol)

    def facets(self, K):
        return _float_body(K).facets

    def volume(self, K):
        return _float_body(K).volume

    def support(self, M, u):
        return _float_body(M).support(u)

    def support_fn(self, M):
        V = _float_body(M).vertices
        return lambda a: float((V @ np.asarray(a, dtype=float)).max())

    def mixed(self, K, M):
        return floatgeom.mixed_volumes(K, M)

    def projection(self, K, vectors):
        return floatgeom.projection_onto_complement(K, vectors)

    def section(self, K, u):
        return floatgeom.central_section(K, u)

    def sqrt(self, x):
        return math.sqrt(float(x))

    def num(self, x):
        return float(x)

    def tolerance(self, identity=False):
        return self.tol.identity if identity else self.tol.inequality

    def decide(self, lhs, rhs, identity=False, scale=None):
        lhs, rhs = float(lhs), float(rhs)
        thr = self.tolerance(identity) * max(abs(rhs), abs(scale or 0.0))
        equality = abs(rhs - lhs) <= thr
        holds = equality if identity else lhs <= rhs + thr
        margin = (rhs - lhs) / rhs if rhs > 0 else None
        return holds, equality, margin


def engine(mode="exact", tol=None):
    if mode == "exact":
        return ExactEngine(tol)
    if mode == "float":
        return FloatEngine(tol)
    raise ValueError(f"unknown mode {mode!r}")


def _margin_exact(lhs, rhs):
    if not rhs > 0:
        return None
    ratio = lhs / rhs
    if isinstance(ratio, RadicalScalar):
        if not ratio.is_rational:
            return 1.0 - float(ratio)
        ratio = ratio.to_fraction()
    return 1 - ratio


def _report(name, eng, lhs, rhs, kind, details, identity=False, scale=None):
    lhs, rhs = eng.num(lhs), eng.num(rhs)
    holds, equality, margin = eng.decide(lhs, rhs, identity=identity, scale=scale)
    return CheckReport(name, lhs, rhs, holds, equality, margin, eng.mode, kind,
                       tolerance=eng.tolerance(identity), details=details)


def _instance(**items):
    out = {}
    for k, v in items.items():
        if isinstance(v, Polytope):
            out[k] = to_spec(v)
        elif isinstance(v, (list, tuple)) and v and isinstance(v[0], (list, tuple)):
            out[k] = [vector_spec(x) for x in v]
        elif isinstance(v, (list, tuple)):
            out[k] = vector_spec(v)
        elif hasattr(v, "directions"):
            out[k] = norm_spec(v)
        else:
            out[k] = jsonable(v)
    return out


def _require(cond, message, report, instance):
    if not cond:
        raise InternalInconsistency(f"{report.check_name}: {message}", instance)


def _finish_proved(report, instance, structural=None):
    """Assert a proved statement and cross-check the equality flag against structure."""
    _require(report.holds, f"proved inequality failed: {report.lhs} > {report.rhs}", report, instance)
    if structural is not None:
        agree = structural == report.equality
        report.details["structuralEquality"] = structural
        report.details["structuralAgreement"] = agree
        if report.mode == "exact":
            _require(agree, f"equality flag {report.equality} disagrees with structure {structural}",
                     report, instance)
    return report


# ---------------------------------------------------------------------------
# shared pieces


def _logbm_sides(eng, K, M):
    n = K.dim
    V = eng.mixed(K, M)
    W = weighted_quadratic_from_facets(eng.facets(K), eng.support_fn(M))
    vol = eng.volume(K)
    lhs = n * (n - 1) * V[2] + W
    rhs = n * n * V[1] ** 2 / vol
    return lhs, rhs, V, W


def _check_full(K):
    if not K.full:
        raise ValueError("K must be full-dimensional")


# ---------------------------------------------------------------------------
# proved statements


def check_theorem_1_4(K: Polytope, N: SemiNorm, mode="exact", tol=None) -> CheckReport:
    """sum ||a||^2/s <= (sum ||a||)^2 / |K|, equality iff N has rank one along a cylinder axis."""
    _check_full(K)
    eng = engine(mode, tol)
    F = eng.facets(K)
    lhs = surface_quadratic_from_facets(F, N)
    L = surface_linear_from_facets(F, N)
    rhs = L * L / eng.volume(K)
    direction = rank_one_direction(N)
    if direction == ():
        structural, rank_label, axis = True, "zero", None
    elif direction is None:
        structural, rank_label, axis = False, "higher", None
    else:
        structural = cylinder_cap(K, direction) is not None
        rank_label, axis = "one", direction if structural else None
    details = {"facetPieces": len(F), "normRank": rank_label, "cylinderAxis": axis}
    report = _report("theorem_1_4", eng, lhs, rhs, PROVED, details)
    return _finish_proved(report, _instance(K=K, N=N), structural)


def check_theorem_1_7(K: Polytope, v, mode="exact", tol=None) -> CheckReport:
    """Log-BM for M = [-v, v]: V_2 vanishes and equality holds iff K is a cylinder along v."""
    _check_full(K)
    v = as_vector(v)
    if not any(v):
        raise ZeroVector("segment direction is zero")
    eng = engine(mode, tol)
    M = segment(v)
    lhs, rhs, V, W = _logbm_sides(eng, K, M)
    cap = cylinder_cap(K, v)
    details = {"V1": V[1], "V2": V[2], "weightedQuadratic": W,
               "cylinderAxis": canonical_direction(v) if cap else None, "capNormal": cap}
    report = _report("theorem_1_7", eng, lhs, rhs, PROVED, details)
    instance = _instance(K=K, v=v)
    if mode == "exact":
        _require(V[2] == 0, f"V_2(K,[-v,v]) = {V[2]} is not zero", report, instance)
    else:
        scale_ = V[1] ** 2 / eng.volume(K)
        _require(abs(V[2]) <= eng.tol.identity * scale_, f"V_2(K,[-v,v]) = {V[2]} is not zero",
                 report, instance)
    return _finish_proved(report, instance, cap is not None)


def check_minkowski_second(K: Polytope, M: Polytope, mode="exact", tol=None) -> CheckReport:
    """|K| V_2(K, M) <= V_1(K, M)^2."""
    _check_full(K)
    eng = engine(mode, tol)
    V = eng.mixed(K, M)
    report = _report("minkowski_second", eng, V[0] * V[2], V[1] ** 2, PROVED,
                     {"V": list(V)}, scale=V[1] ** 2)
    return _finish_proved(report, _instance(K=K, M=M))


def check_minkowski_first(K: Polytope, M: Polytope, mode="exact", tol=None) -> CheckReport:
    """|K|^(n-1) |M| <= V_1(K, M)^n."""
    _check_full(K)
    eng = engine(mode, tol)
    n = K.dim
    V = eng.mixed(K, M)
    lhs = eng.volume(K) ** (n - 1) * eng.volume(M)
    report = _report("minkowski_first", eng, lhs, V[1] ** n, PROVED, {"V1": V[1]})
    return _finish_proved(report, _instance(K=K, M=M))


def check_holder(K: Polytope, M: Polytope, mode="exact", tol=None) -> CheckReport:
    """n V_1(K, M)^2 / |K| <= sum h_M(a)^2 / s (Cauchy-Schwarz over the facets)."""
    _check_full(K)
    eng = engine(mode, tol)
    n = K.dim
    V = eng.mixed(K, M)
    W = weighted_quadratic_from_facets(eng.facets(K), eng.support_fn(M))
    report = _report("holder", eng, n * V[1] ** 2 / eng.volume(K), W, PROVED, {})
    return _finish_proved(report, _instance(K=K, M=M))


def check_invariance(K: Polytope, M: Polytope, t_list=(1, 2, 3), mode="exact", tol=None) -> CheckReport:
    """gap(K, M + tK) equals gap(K, M) for every t."""
    _check_full(K)
    eng = engine(mode, tol)
    lhs0, rhs0, _, _ = _logbm_sides(eng, K, M)
    base = eng.num(rhs0 - lhs0)
    gaps, worst, worst_dev, ok = [], base, 0, True
    for t in t_list:
        t = Fraction(t)
        if t < 0:
            raise ValueError("t must be non-negative")
        lhs, rhs, _, _ = _logbm_sides(eng, K, minkowski_sum(M, scale(K, t)))
        g = eng.num(rhs - lhs)
        gaps.append({"t": t, "gap": g})
        if mode == "exact":
            same = g == base
        else:
            same = abs(g - base) <= eng.tol.identity * max(abs(rhs), abs(rhs0))
        dev = abs(g - base)
        if dev > worst_dev or (not same and ok):
            worst, worst_dev = g, dev
        ok = ok and same
    report = CheckReport("invariance", base, worst, ok, ok, None, eng.mode, PROVED,
                         tolerance=eng.tolerance(True), details={"gaps": gaps})
    return _finish_proved(report, _instance(K=K, M=M, t=list(t_list)))


def check_lemma_3_1(K: Polytope, u, mode="exact", tol=None) -> CheckReport:
    """1/h_K(u) <= 2|K ∩ u^perp| / |K| for unit u; equality iff K is a cylinder with base in u^perp."""
    _check_full(K)
    u = as_vector(u)
    if not any(u):
        raise ZeroVector("direction is zero")
    eng = engine(mode, tol)
    lhs = eng.sqrt(norm_sq(u)) / eng.support(K, u)
    rhs = eng.section(K, u) * 2 / eng.volume(K)
    report = _report("lemma_3_1", eng, lhs, rhs, PROVED, {})
    return _finish_proved(report, _instance(K=K, u=u), has_base_perpendicular_to(K, u))


def check_corollary_3_3(K: Polytope, u, v, mode="exact", tol=None) -> CheckReport:
    """|<u,v>|/h_K(u) <= sum |<a,v>| / |K|; equality iff K = C + [-v,v] with C in u^perp."""
    _check_full(K)
    u, v = as_vector(u), as_vector(v)
    if not any(u) or not any(v):
        raise ZeroVector("u and v must be nonzero")
    eng = engine(mode, tol)
    lhs = abs(dot(u, v)) / eng.support(K, u)
    rhs = sum(abs(dot(a, v)) for a, _ in eng.facets(K)) / eng.volume(K)
    report = _report("corollary_3_3", eng, lhs, rhs, PROVED, {})
    return _finish_proved(report, _instance(K=K, u=u, v=v), is_cylinder_axis_base(K, u, v))


def check_cauchy(K: Polytope, v, mode="exact", tol=None) -> CheckReport:
    """(1/2) sum |<a, v>| equals |v| |K | v^perp|."""
    _check_full(K)
    v = as_vector(v)
    if not any(v):
        raise ZeroVector("direction is zero")
    eng = engine(mode, tol)
    lhs = cauchy_from_facets(eng.facets(K), v)
    rhs = eng.sqrt(norm_sq(v)) * eng.projection(K, [v])
    report = _report("cauchy", eng, lhs, rhs, PROVED, {}, identity=True)
    return _finish_proved(report, _instance(K=K, v=v))


def _poincare_factor(K):
    """2B/r with B = diam/pi, an upper bound for the Poincare constant (Payne-Weinberger)."""
    B = math.sqrt(float(diameter_sq(K))) / math.pi
    r = math.sqrt(float(inradius_sq(K)))
    return 2 * B / r


POINCARE_NOTE = ("Poincare constant replaced by the Payne-Weinberger upper bound diam/pi; "
                 "this checks an implied weaker inequality, not sharpness")


def check_theorem_1_5(K: Polytope, N: SemiNorm, tol=None) -> CheckReport:
    """sum ||a||^2/s <= (2B/r) (sum ||a||)^2 / |K| in float arithmetic."""
    _check_full(K)
    eng = FloatEngine(tol)
    F = eng.facets(K)
    factor = _poincare_factor(K)
    lhs = surface_quadratic_from_facets(F, N)
    base = surface_linear_from_facets(F, N) ** 2 / eng.volume(K)
    details = {"factor": factor, "unitFactorRhs": base, "bound": POINCARE_NOTE}
    report = _report("theorem_1_5", eng, lhs, factor * base, PROVED, details)
    return _finish_proved(report, _instance(K=K, N=N))


def check_corollary_1_6(K: Polytope, M: Polytope, mode="exact", tol=None) -> CheckReport:
    """log-BM left side <= ((2n-1)/n) times the right side, plus the Poincare-factor form."""
    _check_full(K)
    eng = engine(mode, tol)
    n = K.dim
    lhs, rhs, _, _ = _logbm_sides(eng, K, M)
    exact_factor = Fraction(2 * n - 1, n)
    float_factor = (n - 1) / n + min(1.0, _poincare_factor(K))
    flhs, frhs = float(lhs), float(rhs)
    ftol = as_tolerances(tol).inequality
    details = {
        "factor": exact_factor,
        "logbmRhs": rhs,
        "poincareFactor": float_factor,
        "poincareHolds": flhs <= float_factor * frhs * (1 + ftol),
        "bound": POINCARE_NOTE,
    }
    report = _report("corollary_1_6", eng, lhs, eng.num(exact_factor) * rhs, PROVED, details)
    instance = _instance(K=K, M=M)
    _require(details["poincareHolds"], "Poincare-factor form failed", report, instance)
    return _finish_proved(report, instance)


def check_prop_1_6_chain(K: Polytope, M: Polytope, mode="exact", tol=None) -> CheckReport:
    """Estimates with TM = lambda* M inscribed in K.

    est1: sum h_TM(a)^2/s <= sum h_TM(a);  est2: V_1^n >= |K|^(n-1) |TM|;
    est3 (n-th power form): (n W / R)^n <= |K| / |TM| with R = n^2 V_1^2 / |K|.
    """
    _check_full(K)
    eng = engine(mode, tol)
    n = K.dim
    lam = max_inscribed_scaling(M, K)
    TM = scale(M, lam)
    F = eng.facets(K)
    h = eng.support_fn(TM)
    W = weighted_quadratic_from_facets(F, h)
    S = sum(h(a) for a, _ in F)
    vol_k, vol_tm = eng.volume(K), eng.volume(TM)
    V1 = S / n
    R = n * n * V1 ** 2 / vol_k
    est2_lhs, est2_rhs = vol_k ** (n - 1) * vol_tm, V1 ** n
    est2 = eng.decide(est2_lhs, est2_rhs)[0]
    if vol_tm:
        est3_lhs, est3_rhs = (n * W / R) ** n, vol_k / vol_tm
        est3 = eng.decide(est3_lhs, est3_rhs)[0]
        ratio = (float(vol_k) / float(vol_tm)) ** (1 / n)
    else:
        est3_lhs = est3_rhs = None
        est3, ratio = True, math.inf
    details = {
        "lambda": lam,
        "est2": {"lhs": est2_lhs, "rhs": est2_rhs, "holds": est2},
        "est3": {"lhs": est3_lhs, "rhs": est3_rhs, "holds": est3},
        "volumeRatio": ratio,
        "sqrtNLogN": math.sqrt(n) * math.log(n),
    }
    report = _report("est_chain", eng, W, S, PROVED, details)
    instance = _instance(K=K, M=M)
    _require(est2, "est2 failed", report, instance)
    _require(est3, "est3 failed", report, instance)
    return _finish_proved(report, instance)


def check_zonotope_decomposition(K: Polytope, generators, mode="exact", tol=None) -> CheckReport:
    """n(n-1) V_2(K, Z) = sum over pairs of 2 n(n-1) V(K[n-2], S_i, S_j), plus pairwise identities."""
    _check_full(K)
    gens = [as_vector(g) for g in generators]
    if not gens:
        raise ValueError("need at least one generator")
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            if rank([gens[i], gens[j]]) < 2:
                raise ValueError(f"generators {i} and {j} are parallel")
    eng = engine(mode, tol)
    n = K.dim
    segs = [segment(g) for g in gens]
    VZ = eng.mixed(K, zonotope(gens))
    single = [eng.mixed(K, s)[2] for s in segs]
    total = 0
    pairwise = []
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            v2 = eng.mixed(K, minkowski_sum(segs[i], segs[j]))[2]
            pair = (v2 - single[i] - single[j]) / 2
            total += 2 * n * (n - 1) * pair
            lhs = eng.num(n * (n - 1) * pair)
            gd = norm_sq(gens[i]) * norm_sq(gens[j]) - dot(gens[i], gens[j]) ** 2
            rhs = eng.num(eng.sqrt(gd) * eng.projection(K, [gens[i], gens[j]]) * 4)
            ok = eng.decide(lhs, rhs, identity=True, scale=VZ[1] ** 2 / VZ[0])[0]
            pairwise.append({"i": i, "j": j, "lhs": lhs, "rhs": rhs, "matches": ok})
    details = {"pairwise": pairwise, "pairwiseAllMatch": all(p["matches"] for p in pairwise)}
    report = _report("zonotope_decomposition", eng, n * (n - 1) * VZ[2], total, PROVED, details,
                     identity=True, scale=n * (n - 1) * VZ[1] ** 2 / VZ[0])
    return _finish_proved(report, _instance(K=K, generators=gens))


def check_cube_remark(M: Polytope, mode="exact", tol=None) -> CheckReport:
    """Cube identities with phi_i = h_M(e_i).

    rem1: the log-BM sides for K = cube equal n(n-1)V_2 + 2^n sum phi_i^2 and 2^n (sum phi_i)^2,
    and the inequality holds; rem2: V_2(cube, M) <= V_2(cube, B_phi);
    rem3: n(n-1) V_2(cube, B_phi) = 2 * 2^n * sum_{i<j} phi_i phi_j.
    """
    n = M.dim
    eng = engine(mode, tol)
    K = cube(n)
    basis = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    phi = [support(M, e) for e in basis]
    lhs, rhs, V, _ = _logbm_sides(eng, K, M)
    rem1_lhs = n * (n - 1) * V[2] + 2 ** n * sum(p * p for p in phi)
    rem1_rhs = 2 ** n * sum(phi) ** 2
    id1 = eng.decide(lhs, rem1_lhs, identity=True)[0] and eng.decide(rhs, rem1_rhs, identity=True)[0]
    B = box(phi)
    VB = eng.mixed(K, B)
    rem2 = eng.decide(V[2], VB[2], scale=VB[2])[0]
    rem3_lhs = n * (n - 1) * VB[2]
    rem3_rhs = 2 * 2 ** n * sum(phi[i] * phi[j] for i in range(n) for j in range(i + 1, n))
    rem3 = eng.decide(rem3_lhs, rem3_rhs, identity=True, scale=rem1_rhs)[0]
    details = {
        "phi": phi,
        "rem1SidesMatch": id1,
        "rem2": {"lhs": V[2], "rhs": VB[2], "holds": rem2},
        "rem3": {"lhs": eng.num(rem3_lhs), "rhs": eng.num(rem3_rhs), "holds": rem3},
    }
    report = _report("cube_remark", eng, lhs, rhs, PROVED, details)
    instance = _instance(M=M)
    _require(id1, "log-BM sides differ from the cube formula", report, instance)
    _require(rem2, "V_2 monotonicity failed", report, instance)
    _require(rem3, "cube box identity failed", report, instance)
    return _finish_proved(report, instance)


# ---------------------------------------------------------------------------
# probes


def check_logbm_conjecture(K: Polytope, M: Polytope, mode="exact", tol=None) -> CheckReport:
    """n(n-1)V_2 + sum h_M(a)^2/s <= n^2 V_1^2/|K|, reported only; side checks are asserted."""
    _check_full(K)
    eng = engine(mode, tol)
    lhs, rhs, V, W = _logbm_sides(eng, K, M)
    second = check_minkowski_second(K, M, mode, tol)
    first = check_minkowski_first(K, M, mode, tol)
    details = {
        "V": list(V),
        "weightedQuadratic": W,
        "minkowskiSecond": {"lhs": second.lhs, "rhs": second.rhs, "holds": second.holds},
        "minkowskiFirst": {"lhs": first.lhs, "rhs": first.rhs, "holds": first.holds},
    }
    report = _report("logbm_conjecture", eng, lhs, rhs, PROBE, details, scale=rhs)
    _flag_candidate(report, _instance(K=K, M=M))
    return report


def _flag_candidate(report, instance):
    if not report.holds:
        report.counterexample_candidate = True
        report.details["instance"] = instance


def check_prop_6_1(K: Polytope, i: int, j: int, mode="exact", tol=None) -> CheckReport:
    """Coordinate-square case: the projection identity (asserted) and the resulting inequality (probe)."""
    _check_full(K)
    n = K.dim
    if i == j or not (0 <= i < n and 0 <= j < n):
        raise ValueError(f"bad coordinate pair ({i}, {j}) for n={n}")
    eng = engine(mode, tol)
    S = square2d(n, i, j)
    ei = tuple(int(k == i) for k in range(n))
    ej = tuple(int(k == j) for k in range(n))
    V = eng.mixed(K, S)
    proj = eng.num(eng.projection(K, [ei, ej]))
    air_lhs, air_rhs = eng.num(n * (n - 1) * V[2]), 8 * proj
    airplane = eng.decide(air_lhs, air_rhs, identity=True, scale=n * (n - 1) * V[1] ** 2 / V[0])[0]
    F = eng.facets(K)
    cross = sum((abs(a[i]) + abs(a[j])) ** 2 / s for a, s in F)
    Pi = cauchy_from_facets(F, ei)
    Pj = cauchy_from_facets(F, ej)
    lhs = 8 * proj + cross
    rhs = 4 * (Pi + Pj) ** 2 / eng.volume(K)
    details = {"airplane": {"lhs": air_lhs, "rhs": air_rhs, "holds": airplane},
               "projection": proj, "projections": [Pi, Pj]}
    report = _report("prop_6_1", eng, lhs, rhs, PROBE, details, scale=rhs)
    instance = _instance(K=K, i=i, j=j)
    _require(airplane, "projection identity for the coordinate square failed", report, instance)
    if mode == "exact":
        gl, gr, _, _ = _logbm_sides(eng, K, S)
        _require(gl == lhs and gr == rhs, "square inequality differs from log-BM sides", report, instance)
    _flag_candidate(report, instance)
    return report


def check_prop_6_2_pair(K: Polytope, v, w, mode="exact", tol=None) -> CheckReport:
    """Pairwise bound for unit v, w (absolute-value cross term):

        4 |v^w| |K|span(v,w)^perp| + sum |<a,v>||<a,w>|/s <= 4 |K|v^perp| |K|w^perp| / |K|

    The constant 4 and the |v^w| factor are the ones that sum to the zonotope
    log-BM inequality; the literal reading (constant 2, no wedge factor) and the
    signed cross term are reported in details.
    """
    _check_full(K)
    v, w = as_vector(v), as_vector(w)
    if rank([v, w]) < 2:
        raise ValueError("v and w must be linearly independent")
    eng = engine(mode, tol)
    nv, nw, vw = norm_sq(v), norm_sq(w), dot(v, w)
    F = eng.facets(K)
    vol = eng.volume(K)
    proj = eng.projection(K, [v, w])
    inv = eng.sqrt(Fraction(1) / (nv * nw)) if mode == "exact" else 1 / math.sqrt(float(nv * nw))
    wedge = eng.sqrt(Fraction(nv * nw - vw * vw, nv * nw))
    cross_abs = sum(abs(dot(a, v)) * abs(dot(a, w)) / s for a, s in F)
    cross_signed = sum(dot(a, v) * dot(a, w) / s for a, s in F)
    pv = cauchy_from_facets(F, v) * (eng.sqrt(Fraction(1, nv)) if mode == "exact" else 1 / math.sqrt(nv))
    pw = cauchy_from_facets(F, w) * (eng.sqrt(Fraction(1, nw)) if mode == "exact" else 1 / math.sqrt(nw))
    rhs = pv * pw * 4 / vol

    def total(*terms):
        if mode == "exact":
            return radical_sum(terms)
        return sum(float(t) for t in terms)

    lhs = total(wedge * proj * 4, inv * cross_abs)
    signed_lhs = total(wedge * proj * 4, inv * cross_signed)
    literal_lhs = total(proj * 4, inv * cross_abs)
    literal_rhs = rhs / 2
    if lhs is None or signed_lhs is None or literal_lhs is None:
        # incommensurable radicals: evaluate the same exact pieces in floats
        eng = FloatEngine(tol)
        lhs = float(wedge) * float(proj) * 4 + float(inv) * float(cross_abs)
        signed_lhs = float(wedge) * float(proj) * 4 + float(inv) * float(cross_signed)
        literal_lhs = float(proj) * 4 + float(inv) * float(cross_abs)
        rhs, literal_rhs = float(rhs), float(literal_rhs)
    details = {
        "projection": proj,
        "wedge": wedge,
        "crossTerm": inv * cross_abs,
        "signedCrossTerm": {"lhs": signed_lhs, "rhs": rhs,
                            "holds": eng.decide(signed_lhs, rhs)[0]},
        "literalConstants": {"lhs": literal_lhs, "rhs": literal_rhs,
                             "holds": eng.decide(literal_lhs, literal_rhs)[0]},
    }
    report = _report("prop_6_2_pair", eng, lhs, rhs, PROBE, details, scale=rhs)
    _flag_candidate(report, _instance(K=K, v=v, w=w))
    return report


# ---------------------------------------------------------------------------
# demo


def demo_false_inequality(n: int) -> CheckReport:
    """sum f^2 <= (s/|K|) (sum f)^2 on the facets of the cross-polytope with f the
    indicator of one antipodal facet pair: 2 vs 4n/2^n, violated for n > 2."""
    if n < 2:
        raise ValueError("n must be at least 2")
    K = cross_polytope(n)
    facets = list(K.merged_facets.items())
    weights = {f.support_value for _, f in facets}
    ratios = {norm_sq(f.area_vector) / f.support_value for _, f in facets}
    if len(weights) != 1 or len(ratios) != 1:
        raise InternalInconsistency("cross-polytope facets are not congruent")
    s = weights.pop()
    first = facets[0][0]
    f = [1 if key in (first, tuple(-x for x in first)) else 0 for key, _ in facets]
    lhs = Fraction(sum(x * x for x in f))
    rhs = Fraction(sum(f)) ** 2 * s / K.volume
    report = CheckReport("demo_false_inequality", lhs, rhs, lhs <= rhs, lhs == rhs,
                         _margin_exact(lhs, rhs), "exact", DEMO,
                         details={"n": n, "facets": len(facets), "violated": lhs > rhs})
    if n > 2 and report.holds:
        raise InternalInconsistency(f"expected a violation at n={n}, got {lhs} <= {rhs}")
    return report


# name -> (callable, kind); argument shapes differ, the harness adapts them
CHECKS = {
    "theorem_1_4": (check_theorem_1_4, PROVED),
    "theorem_1_7": (check_theorem_1_7, PROVED),
    "minkowski_second": (check_minkowski_second, PROVED),
    "minkowski_first": (check_minkowski_first, PROVED),
    "holder": (check_holder, PROVED),
    "invariance": (check_invariance, PROVED),
    "lemma_3_1": (check_lemma_3_1, PROVED),
    "corollary_3_3": (check_corollary_3_3, PROVED),
    "cauchy": (check_cauchy, PROVED),
    "theorem_1_5": (check_theorem_1_5, PROVED),
    "corollary_1_6": (check_corollary_1_6, PROVED),
    "est_chain": (check_prop_1_6_chain, PROVED),
    "zonotope_decomposition": (check_zonotope_decomposition, PROVED),
    "cube_remark": (check_cube_remark, PROVED),
    "logbm_conjecture": (check_logbm_conjecture, PROBE),
    "prop_6_1": (check_prop_6_1, PROBE),
    "prop_6_2_pair": (check_prop_6_2_pair, PROBE),
}

