"""Seeded randomized campaigns, the hexagon scenario and margin tables.

Each trial draws its bodies from ``SeedSequence([seed, n, trial])``, so a
trial's instance depends only on the config and its own index. Scheduling
and worker count therefore cannot change a summary.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import numpy as np

from .bodies import (
    cross_polytope,
    cylinder,
    random_symmetric_polytope,
    segment,
    to_spec,
    zonotope,
)
from .checkers import (
    CHECKS,
    PROBE,
    CheckReport,
    Tolerances,
    as_tolerances,
    check_prop_6_1,
    check_prop_6_2_pair,
    jsonable,
    norm_spec,
    vector_spec,
)
from .errors import InternalInconsistency, ScenarioInconclusive
from .exact import format_scalar, rank
from .functionals import MaxForm, SumForm
from .polytope import convex_hull, linear_image, minkowski_sum, scale
from .structure import cylinder_axes

M_SOURCES = ("randomPolytope", "zonotope", "crossPolytope", "scaledK", "segment")
DEFAULT_CHECKS = (
    "theorem_1_4", "theorem_1_7", "minkowski_second", "minkowski_first", "lemma_3_1",
    "corollary_3_3", "holder", "est_chain", "corollary_1_6", "theorem_1_5",
    "logbm_conjecture", "prop_6_1",
)
NEAR_EQUALITY = 1e-6


@dataclass
class CampaignConfig:
    dims: list = field(default_factory=lambda: [2, 3])
    trials_per_dim: object = 100  # int, or {n: trials}
    point_budget: int | None = None  # symmetric point pairs per random body; default n + 2
    coord_bound: int = 5
    seed: int = 0
    checks: list = field(default_factory=lambda: list(DEFAULT_CHECKS))
    mode: str = "exact"
    tolerance: Tolerances = field(default_factory=Tolerances)
    norm_family: str = "mixed"  # maxForm | sumForm | mixed
    m_source: list = field(default_factory=lambda: list(M_SOURCES))
    cylinder_rate: float = 0.25
    strict: bool = True

    def trials(self, n) -> int:
        if isinstance(self.trials_per_dim, dict):
            return int(self.trials_per_dim.get(n, self.trials_per_dim.get(str(n), 0)))
        return int(self.trials_per_dim)

    def validate(self):
        unknown = [c for c in self.checks if c not in CHECKS]
        if unknown:
            raise ValueError(f"unknown checks: {unknown}")
        bad = [m for m in self.m_source if m not in M_SOURCES]
        if bad or not self.m_source:
            raise ValueError(f"bad mSource entries: {bad}")
        if self.mode not in ("exact", "float"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.norm_family not in ("maxForm", "sumForm", "mixed"):
            raise ValueError(f"unknown normFamily {self.norm_family!r}")
        if any(not isinstance(n, int) or n < 2 for n in self.dims):
            raise ValueError("dims must be integers >= 2")
        return self

    def to_dict(self) -> dict:
        d = asdict(self)
        return {
            "dims": d["dims"], "trialsPerDim": d["trials_per_dim"], "pointBudget": d["point_budget"],
            "coordBound": d["coord_bound"], "seed": d["seed"], "checks": d["checks"],
            "mode": d["mode"],
            "tolerance": {"identity": self.tolerance.identity, "inequality": self.tolerance.inequality},
            "normFamily": d["norm_family"], "mSource": d["m_source"],
            "cylinderRate": d["cylinder_rate"], "strict": d["strict"],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "CampaignConfig":
        keys = {
            "dims": "dims", "trialsPerDim": "trials_per_dim", "pointBudget": "point_budget",
            "coordBound": "coord_bound", "seed": "seed", "checks": "checks", "mode": "mode",
            "normFamily": "norm_family", "mSource": "m_source", "cylinderRate": "cylinder_rate",
            "strict": "strict",
        }
        unknown = set(data) - set(keys) - {"tolerance"}
        if unknown:
            raise ValueError(f"unknown config fields: {sorted(unknown)}")
        kwargs = {keys[k]: v for k, v in data.items() if k in keys}
        if isinstance(kwargs.get("trials_per_dim"), dict):
            kwargs["trials_per_dim"] = {int(k): v for k, v in kwargs["trials_per_dim"].items()}
        if "tolerance" in data:
            tol = data["tolerance"]
            kwargs["tolerance"] = (Tolerances(**tol) if isinstance(tol, dict)
                                   else as_tolerances(tol))
        return cls(**kwargs).validate()


# ---------------------------------------------------------------------------
# instance generation


@dataclass
class Trial:
    dim: int
    index: int
    K: object
    M: object
    N: object
    u: tuple
    v: tuple
    w: tuple
    i: int
    j: int
    generators: list
    k_kind: str
    m_kind: str

    def to_dict(self) -> dict:
        return {
            "dim": self.dim, "trial": self.index, "kKind": self.k_kind, "mKind": self.m_kind,
            "K": to_spec(self.K), "M": to_spec(self.M), "N": norm_spec(self.N),
            "u": vector_spec(self.u), "v": vector_spec(self.v), "w": vector_spec(self.w),
            "i": self.i, "j": self.j, "generators": [vector_spec(g) for g in self.generators],
        }


def _vec(rng, n, bound):
    while True:
        v = tuple(int(x) for x in rng.integers(-bound, bound + 1, size=n))
        if any(v):
            return v


def _independent_pair(rng, n, bound):
    v = _vec(rng, n, bound)
    while True:
        w = _vec(rng, n, bound)
        if rank([v, w]) == 2:
            return v, w


def random_cylinder(n, rng, k=None, bound=5):
    """C + [-v, v] with C spanned by random points projected into a random hyperplane c^perp."""
    k = k or n + 1
    for _ in range(100):
        c = _vec(rng, n, bound)
        cc = sum(x * x for x in c)
        pts = []
        for _ in range(k):
            p = _vec(rng, n, bound)
            t = Fraction(sum(a * b for a, b in zip(p, c)), cc)
            pts.append(tuple(a - t * b for a, b in zip(p, c)))
        pts += [tuple(-x for x in p) for p in pts]
        base = convex_hull(pts, require_full=False)
        if base.affine_dim != n - 1:
            continue
        v = _vec(rng, n, bound)
        if sum(a * b for a, b in zip(v, c)) == 0:
            continue
        return cylinder(base, v), v
    raise RuntimeError("could not draw a cylinder")  # pragma: no cover


def _random_norm(rng, n, family, bound=3):
    if family == "mixed":
        family = "maxForm" if rng.integers(2) == 0 else "sumForm"
    count = int(rng.integers(1, n + 2))
    vecs = [_vec(rng, n, bound) for _ in range(count)]
    if family == "maxForm":
        return MaxForm(tuple(vecs))
    weights = [Fraction(int(rng.integers(1, 5)), int(rng.integers(1, 4))) for _ in vecs]
    return SumForm(tuple(zip(weights, vecs)))


def _random_generators(rng, n, count, bound=3):
    gens = []
    while len(gens) < count:
        g = _vec(rng, n, bound)
        if all(rank([g, h]) == 2 for h in gens):
            gens.append(g)
    return gens


def _random_m(rng, n, kind, K, config):
    if kind == "randomPolytope":
        k = config.point_budget or n + 2
        return random_symmetric_polytope(n, k, int(rng.integers(2**62)), config.coord_bound)
    if kind == "zonotope":
        return zonotope(_random_generators(rng, n, int(rng.integers(1, n + 2))))
    if kind == "crossPolytope":
        while True:
            T = [[int(x) for x in rng.integers(-2, 3, size=n)] for _ in range(n)]
            if rank(T) == n:
                return linear_image(cross_polytope(n), T)
    if kind == "scaledK":
        return scale(K, Fraction(int(rng.integers(1, 7)), int(rng.integers(1, 4))))
    return segment(_vec(rng, n, config.coord_bound))


def make_trial(config: CampaignConfig, n: int, index: int) -> Trial:
    rng = np.random.default_rng(np.random.SeedSequence([config.seed, n, index]))
    bound = config.coord_bound
    if rng.random() < config.cylinder_rate:
        K, axis = random_cylinder(n, rng, bound=bound)
        k_kind = "cylinder"
    else:
        k = config.point_budget or n + 2
        K = random_symmetric_polytope(n, k, int(rng.integers(2**62)), bound)
        axis, k_kind = None, "randomPolytope"
    m_kind = config.m_source[index % len(config.m_source)]
    M = _random_m(rng, n, m_kind, K, config)
    N = _random_norm(rng, n, config.norm_family)
    u, v = _vec(rng, n, bound), _vec(rng, n, bound)
    w = _independent_pair(rng, n, bound)[1]
    while rank([v, w]) < 2:
        w = _vec(rng, n, bound)
    if axis is not None:
        # aim some draws at the equality case
        cap = next(c for a, c in cylinder_axes(K) if rank([a, axis]) == 1)
        if rng.random() < 0.5:
            v = axis
            N = MaxForm((axis,)) if rng.random() < 0.5 else N
            u = cap if rng.random() < 0.5 else u
            while rank([v, w]) < 2:
                w = _vec(rng, n, bound)
    i, j = (int(x) for x in rng.choice(n, size=2, replace=False))
    gens = _random_generators(rng, n, int(rng.integers(1, 4)))
    return Trial(n, index, K, M, N, u, v, w, i, j, gens, k_kind, m_kind)


def run_check(name: str, trial: Trial, mode="exact", tol=None) -> CheckReport:
    fn = CHECKS[name][0]
    K, M = trial.K, trial.M
    if name == "theorem_1_4":
        return fn(K, trial.N, mode, tol)
    if name == "theorem_1_5":
        return fn(K, trial.N, tol)
    if name in ("theorem_1_7", "cauchy"):
        return fn(K, trial.v, mode, tol)
    if name == "lemma_3_1":
        return fn(K, trial.u, mode, tol)
    if name == "corollary_3_3":
        return fn(K, trial.u, trial.v, mode, tol)
    if name == "invariance":
        return fn(K, M, (1, 2), mode, tol)
    if name == "zonotope_decomposition":
        return fn(K, trial.generators, mode, tol)
    if name == "cube_remark":
        return fn(M, mode, tol)
    if name == "prop_6_1":
        return fn(K, trial.i, trial.j, mode, tol)
    if name == "prop_6_2_pair":
        return fn(K, trial.v, trial.w, mode, tol)
    return fn(K, M, mode, tol)


# ---------------------------------------------------------------------------
# campaigns


@dataclass
class CheckStats:
    trials: int = 0
    violations: int = 0
    internal_inconsistencies: int = 0
    min_relative_margin: object = None
    equality_count: int = 0
    structural_disagreements: int = 0

    def to_dict(self):
        return {
            "trials": self.trials, "violations": self.violations,
            "internalInconsistencies": self.internal_inconsistencies,
            "minRelativeMargin": None if self.min_relative_margin is None
            else format_scalar(self.min_relative_margin),
            "equalityCount": self.equality_count,
            "structuralDisagreements": self.structural_disagreements,
        }


@dataclass
class CampaignSummary:
    per_check: dict
    counterexample_candidates: list
    inconsistencies: list
    wall_time: float
    config: dict

    def to_dict(self, include_time=True) -> dict:
        out = {
            "config": self.config,
            "perCheck": {k: v.to_dict() for k, v in sorted(self.per_check.items())},
            "counterexampleCandidates": self.counterexample_candidates,
            "internalInconsistencies": self.inconsistencies,
        }
        if include_time:
            out["wallTime"] = self.wall_time
        return out

    @property
    def total_violations(self) -> int:
        return sum(s.violations for s in self.per_check.values())


def _trial_records(args):
    """Run all configured checks on one trial; returns plain, picklable records."""
    config, n, index = args
    trial = make_trial(config, n, index)
    out = []
    for name in config.checks:
        try:
            r = run_check(name, trial, config.mode, config.tolerance)
        except InternalInconsistency as exc:
            out.append({"check": name, "error": str(exc), "instance": trial.to_dict()})
            continue
        rec = {
            "check": name, "kind": r.kind, "holds": r.holds, "equality": r.equality,
            "margin": r.relative_margin, "dim": n, "trial": index,
            "agree": r.details.get("structuralAgreement", True),
        }
        if r.counterexample_candidate:
            rec["candidate"] = {"report": r.to_dict(), "instance": trial.to_dict()}
        out.append(rec)
    return out


def _workers() -> int:
    cap = os.environ.get("LOGBM_THREADS")
    n = os.cpu_count() or 1
    if cap:
        n = min(n, max(1, int(cap)))
    return n


def _iter_records(config: CampaignConfig):
    tasks = [(config, n, t) for n in config.dims for t in range(config.trials(n))]
    workers = _workers()
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            yield from pool.map(_trial_records, tasks, chunksize=8)
    else:
        for task in tasks:
            yield _trial_records(task)


def run_campaign(config: CampaignConfig) -> CampaignSummary:
    """Run the campaign; raises InternalInconsistency after aggregation if any occurred
    and ``config.strict`` is set (the summary is attached as ``exc.summary``)."""
    config.validate()
    start = time.perf_counter()
    stats = {name: CheckStats() for name in config.checks}
    candidates, errors = [], []
    for records in _iter_records(config):
        for rec in records:
            st = stats[rec["check"]]
            st.trials += 1
            if "error" in rec:
                st.internal_inconsistencies += 1
                errors.append({"check": rec["check"], "message": rec["error"],
                               "instance": rec["instance"]})
                continue
            if not rec["holds"]:
                st.violations += 1
            if rec["equality"]:
                st.equality_count += 1
            if not rec["agree"]:
                st.structural_disagreements += 1
            m = rec["margin"]
            if m is not None and (st.min_relative_margin is None or m < st.min_relative_margin):
                st.min_relative_margin = m
            if "candidate" in rec:
                candidates.append(rec["candidate"])
    summary = CampaignSummary(stats, candidates, errors, time.perf_counter() - start,
                              config.to_dict())
    if errors and config.strict:
        exc = InternalInconsistency(errors[0]["message"], errors[0]["instance"])
        exc.summary = summary
        raise exc
    return summary


def margin_study(config: CampaignConfig) -> list[dict]:
    """Per-instance relative margins sorted ascending; rows below 1e-6 are flagged."""
    config.validate()
    rows = []
    for records in _iter_records(config):
        for rec in records:
            if "error" in rec or rec["margin"] is None:
                continue
            m = float(rec["margin"])
            rows.append({"dim": rec["dim"], "trial": rec["trial"], "check": rec["check"],
                         "margin": m, "equality": rec["equality"],
                         "nearEquality": m < NEAR_EQUALITY})
    rows.sort(key=lambda r: (r["margin"], r["dim"], r["trial"], r["check"]))
    return rows


def replay_candidate(candidate: dict, mode="exact") -> CheckReport:
    """Re-run a serialized counterexample candidate from its stored instance."""
    from .bodies import construct

    inst = candidate["instance"] if "instance" in candidate else candidate
    name = candidate["report"]["checkName"]
    K = construct(inst["K"], require_full=True, field="K")
    M = construct(inst["M"], field="M")
    trial = Trial(inst["dim"], inst["trial"], K, M, None,
                  *(tuple(Fraction(x) for x in inst[k]) for k in ("u", "v", "w")),
                  inst["i"], inst["j"], [tuple(Fraction(x) for x in g) for g in inst["generators"]],
                  inst["kKind"], inst["mKind"])
    return run_check(name, trial, mode)


# ---------------------------------------------------------------------------
# hexagon scenario

HEXAGON_GRID = (Fraction(0), Fraction(1, 20), Fraction(1, 10), Fraction(1, 5), Fraction(1, 3),
                Fraction(1, 2))


def hexagon(eps) -> object:
    """conv(±(1, 1-eps), ±(1-eps, 1), ±(1, -1)); the square [-1,1]^2 at eps = 0."""
    eps = Fraction(eps)
    if not 0 <= eps <= 1:
        raise ValueError("eps must lie in [0, 1]")
    pts = [(1, 1 - eps), (1 - eps, 1), (1, -1)]
    pts += [tuple(-x for x in p) for p in pts]
    return convex_hull(pts)


def hexagon_prism(eps):
    H = hexagon(eps)
    lifted = convex_hull([tuple(v) + (0,) for v in H.vertices], require_full=False)
    return minkowski_sum(lifted, segment((0, 0, 1)), require_full=True)


def hexagon_scenario(grid=HEXAGON_GRID, mode="exact") -> list[CheckReport]:
    """For each eps: the coordinate-square inequality (aggregate) and the pairwise
    e1/e2 bound on the prism H_eps x [-1, 1]. Raises ScenarioInconclusive if no eps
    shows the pairwise bound failing while the aggregate holds."""
    reports, split_found = [], False
    for eps in grid:
        K = hexagon_prism(eps)
        agg = check_prop_6_1(K, 0, 1, mode)
        pair = check_prop_6_2_pair(K, (1, 0, 0), (0, 1, 0), mode)
        split = agg.holds and not pair.holds
        split_found = split_found or split
        for r in (agg, pair):
            r.details["epsilon"] = Fraction(eps)
            r.details["split"] = split
            reports.append(r)
    if not split_found:
        exc = ScenarioInconclusive("no eps in the grid separates pairwise and aggregate bounds")
        exc.reports = reports
        raise exc
    return reports


def hexagon_table(reports) -> list[dict]:
    rows = {}
    for r in reports:
        eps = r.details["epsilon"]
        row = rows.setdefault(eps, {"epsilon": eps, "split": r.details["split"]})
        tag = "aggregate" if r.check_name == "prop_6_1" else "pairwise"
        row[tag] = {"lhs": r.lhs, "rhs": r.rhs, "holds": r.holds}
    return [jsonable(rows[k]) for k in sorted(rows)]


__all__ = [
    "CampaignConfig", "CampaignSummary", "CheckStats", "Trial", "make_trial", "run_check",
    "run_campaign", "margin_study", "replay_candidate", "hexagon", "hexagon_prism",
    "hexagon_scenario", "hexagon_table", "random_cylinder", "M_SOURCES", "DEFAULT_CHECKS",
    "PROBE",
]
