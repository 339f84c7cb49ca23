"""Certified norm brackets for ray-configured Blaschke symbols.

The extremal family puts zeros on a common ray: x_k = (1 - q^k) xi for
k = 1..n, with a probe point x_m = (1 - q^m) xi further out on the same ray.
Interpolation targets are chosen so that the Toeplitz functional at the probe
telescopes to a closed real value

    V = 1 + sum_k (|x_k|^2 - 1) / (|x_k| - |x_m|),

which decreases monotonically in m toward the limit 1 + 2n - sum_k q^k. An
explicit interpolant h0 achieving the targets is built at a level slightly
above minimal; |V| divided by the computed boundary sup-norm of h0 is then a
certified lower bound on the operator norm, and 1 plus the oscillation
functional of the symbol is the matching upper bound. Everything is finite
and checkable: no asymptotic interpolation constant enters the certificate.

Target values are assembled from the radius deficits d_k = q^k, never from
differences of the node coordinates themselves: identities such as
1 - (1-d_j)(1-d_k) = d_j + d_k - d_j*d_k keep full relative accuracy where
the direct form has already rounded to zero.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from .circle_quad import DEFAULT_LAMBDA_SPEC, QuadratureSpec, lambda_functional
from .disk_core import BlaschkeProduct, CirclePoint, as_complex
from .errors import InvalidConfiguration, NotStrictlyFeasible, NumericalBreakdown
from .pick_interp import InterpolationProblem, construct_interpolant, minimal_level
from .toeplitz_op import apply_toeplitz_residue, lemma1_upper_bound

# Rows whose probe radius deficit q^m drops below this cannot be represented
# in double precision (1 - q^m rounds into the circle); they are marked, not run.
PROBE_DEFICIT_FLOOR = 1e-12
# Level slack ladder: construction retries with a larger margin above the
# minimal level when the recursion degenerates at the conditioning floor.
SLACK_LADDER = (1e-6, 1e-5, 1e-4, 1e-3)


@dataclass(frozen=True)
class RayConfiguration:
    """Zeros and probe on a common ray, with the generating parameters."""

    xi: CirclePoint
    q: float
    n: int
    m: int
    eps: float

    def __post_init__(self):
        if not isinstance(self.xi, CirclePoint):
            object.__setattr__(self, "xi", CirclePoint(as_complex(self.xi)))
        if not (0.0 < self.q < 1.0):
            raise InvalidConfiguration(f"q must be in (0, 1), got {self.q!r}")
        if self.n < 1:
            raise InvalidConfiguration(f"degree n must be positive, got {self.n!r}")
        if self.m <= self.n:
            raise InvalidConfiguration(f"probe index m must exceed n, got m={self.m!r}, n={self.n!r}")
        if not (0.0 < self.eps < 1.0 - self.q):
            raise InvalidConfiguration(
                f"inner radius floor eps={self.eps!r} must lie in (0, 1 - q) = (0, {1.0 - self.q!r})"
            )

    @property
    def deficits(self) -> np.ndarray:
        """Radius deficits q^1..q^n of the zeros."""
        return self.q ** np.arange(1, self.n + 1, dtype=float)

    @property
    def probe_deficit(self) -> float:
        return float(self.q ** self.m)

    def zeros(self) -> np.ndarray:
        return (1.0 - self.deficits) * self.xi.value

    def probe(self) -> complex:
        return (1.0 - self.probe_deficit) * self.xi.value

    def to_dict(self) -> dict:
        return {
            "xi": [self.xi.value.real, self.xi.value.imag],
            "q": self.q,
            "n": self.n,
            "m": self.m,
            "eps": self.eps,
        }


def default_eps(q: float) -> float:
    """Inner radius floor used when none is given; comfortably below 1 - q."""
    return 0.5 * (1.0 - q)


def build_configuration(xi, q: float, n: int, m: int, eps: float | None = None):
    """Assemble the ray configuration, its symbol, and the interpolation problem.

    Targets: y_k = B'(x_k) (|x_k|^2 - 1) xi at the zeros and y_m = B(x_m) at
    the probe, both reduced to products over radius deficits. The Schwarz-Pick
    inequality keeps every |y_k| at most 1.
    """
    if eps is None:
        eps = default_eps(q)
    config = RayConfiguration(xi=xi, q=float(q), n=int(n), m=int(m), eps=float(eps))
    if config.probe_deficit < PROBE_DEFICIT_FLOOR:
        raise InvalidConfiguration(
            f"probe deficit q^m = {config.probe_deficit!r} is below the representable floor"
        )
    xi_c = config.xi.value
    d = config.deficits.astype(np.longdouble)
    dm = np.longdouble(config.q) ** config.m

    targets = []
    for k in range(config.n):
        prod = np.clongdouble(1.0)
        for j in range(config.n):
            if j != k:
                prod *= (d[j] - d[k]) / (d[j] + d[k] - d[j] * d[k])
        targets.append(complex(-(xi_c**config.n) * complex(prod)))
    prod = np.clongdouble(1.0)
    for j in range(config.n):
        prod *= (d[j] - dm) / (d[j] + dm - d[j] * dm)
    targets.append(complex((xi_c**config.n) * complex(prod)))

    zeros = config.zeros()
    nodes = tuple(zeros) + (config.probe(),)
    problem = InterpolationProblem(nodes=nodes, targets=tuple(targets))
    symbol = BlaschkeProduct(zeros=tuple(zeros))
    return config, symbol, problem


def ideal_limit(n: int, q: float) -> float:
    """Closed form 1 + 2n - sum_{k=1..n} q^k, the m -> infinity value of V."""
    return 1.0 + 2.0 * n - sum(q**k for k in range(1, n + 1))


def closed_form_functional(config: RayConfiguration) -> float:
    """V computed from the deficits alone: 1 + sum_k d_k (2 - d_k) / (d_k - d_m)."""
    d = config.deficits.astype(np.longdouble)
    dm = np.longdouble(config.q) ** config.m
    return float(1.0 + np.sum(d * (2.0 - d) / (d - dm)))


@dataclass(frozen=True)
class LowerBoundCertificate:
    """A finite, checkable witness for a lower bound on the operator norm."""

    configuration: RayConfiguration
    functional_value: complex
    interpolant_norm: float
    certified: float
    ideal_limit: float
    level: float
    warnings: tuple = field(default=())

    def to_dict(self) -> dict:
        return {
            "configuration": self.configuration.to_dict(),
            "functional_value": [self.functional_value.real, self.functional_value.imag],
            "interpolant_norm": self.interpolant_norm,
            "certified": self.certified,
            "ideal_limit": self.ideal_limit,
            "level": self.level,
            "warnings": list(self.warnings),
        }


def certify_lower_bound(config: RayConfiguration) -> LowerBoundCertificate:
    """Solve the interpolation problem and evaluate the certified quotient.

    The divisor is the computed boundary sup-norm of the interpolant. The
    construction guarantees sup |h0| < level, so if sampling ever reports a
    value suspiciously far below the level, the level itself is used instead;
    both choices are sound, the sampled norm is merely sharper.
    """
    config, symbol, problem = build_configuration(
        config.xi, config.q, config.n, config.m, config.eps
    )
    mu_min = minimal_level(problem)
    warnings: list[str] = []
    cert = None
    last: Exception | None = None
    for slack in SLACK_LADDER:
        try:
            cert = construct_interpolant(problem, mu_min * (1.0 + slack))
            break
        except (NotStrictlyFeasible, NumericalBreakdown) as exc:
            warnings.append(f"construction at slack {slack:g} failed: {exc}")
            last = exc
    if cert is None:
        raise NumericalBreakdown(
            f"interpolant construction failed at every slack level: {last}"
        )
    warnings.extend(cert.warnings)

    V = apply_toeplitz_residue(symbol, cert.interpolant, config.probe())
    v_closed = closed_form_functional(config)
    if abs(V - v_closed) > 1e-7 * (1.0 + abs(V)):
        warnings.append(
            f"residue functional {V!r} deviates from the closed form {v_closed!r}"
        )

    divisor = cert.sup_norm
    if divisor < cert.level * (1.0 - 5e-6):
        warnings.append(
            "sampled interpolant norm is far below the level; dividing by the level"
        )
        divisor = cert.level

    return LowerBoundCertificate(
        configuration=config,
        functional_value=V,
        interpolant_norm=cert.sup_norm,
        certified=float(abs(V) / divisor),
        ideal_limit=ideal_limit(config.n, config.q),
        level=cert.level,
        warnings=tuple(warnings),
    )


@dataclass(frozen=True)
class NormBracket:
    """Certified [lower, upper] for the operator norm with provenance."""

    lower: float
    upper: float
    lower_provenance: object
    upper_provenance: str


def bracket_norm(
    B: BlaschkeProduct,
    config: RayConfiguration | None = None,
    m_offsets: tuple = (2, 4, 8, 16),
    lambda_spec: QuadratureSpec = DEFAULT_LAMBDA_SPEC,
    rotation_grid: int = 256,
) -> NormBracket:
    """Upper bound from the oscillation functional, lower from the best certificate.

    Without a ray configuration the lower side falls back to 1: multiplication
    by an inner symbol is an isometry of H-infinity that the operator inverts,
    so the norm is never below 1. Degree 0 gives the degenerate bracket [1, 1].
    """
    if B.degree == 0:
        return NormBracket(
            lower=1.0,
            upper=1.0,
            lower_provenance="identity: the operator with constant symbol reproduces its argument",
            upper_provenance="constant symbol: oscillation functional vanishes",
        )
    upper = lemma1_upper_bound(B, lambda_spec, rotation_grid)
    upper_prov = "1 + oscillation functional + quadrature error"
    if config is None:
        return NormBracket(
            lower=1.0,
            upper=upper,
            lower_provenance="inner-symbol identity lower bound",
            upper_provenance=upper_prov,
        )
    expected = config.zeros()
    if len(expected) != B.degree or not np.allclose(
        np.sort_complex(np.asarray(B.zeros)), np.sort_complex(expected), atol=1e-12
    ):
        raise InvalidConfiguration("ray configuration does not describe the given symbol")
    best: LowerBoundCertificate | None = None
    ms = sorted({config.m, *(config.n + off for off in m_offsets)})
    for m in ms:
        if float(config.q) ** m < PROBE_DEFICIT_FLOOR:
            continue
        cand = certify_lower_bound(
            RayConfiguration(xi=config.xi, q=config.q, n=config.n, m=m, eps=config.eps)
        )
        if best is None or cand.certified > best.certified:
            best = cand
    if best is None:
        raise InvalidConfiguration("every probe index in the schedule fell below the deficit floor")
    return NormBracket(
        lower=best.certified,
        upper=upper,
        lower_provenance=best,
        upper_provenance=upper_prov,
    )


@dataclass(frozen=True)
class StudyRow:
    """One (q, m) cell of a convergence study."""

    n: int
    xi: complex
    q: float
    m: int
    lower: float
    upper: float
    ideal_limit: float
    interp_norm: float
    warnings: tuple
    certificate: LowerBoundCertificate | None = None


@dataclass(frozen=True)
class StudyResult:
    rows: tuple
    best: NormBracket


def omega_convergence_study(
    n: int,
    xi,
    q_schedule: tuple = (0.3, 0.2, 0.1, 0.05),
    m_offsets: tuple = (2, 4, 8, 16),
    eps: float | None = None,
    lambda_spec: QuadratureSpec = DEFAULT_LAMBDA_SPEC,
    rotation_grid: int = 256,
    threads: int = 1,
) -> StudyResult:
    """Sweep the (q, m) schedule; emit one row per cell, best bracket overall.

    Rows whose probe deficit cannot be represented are emitted with NaN bounds
    and a warning marker instead of being dropped. The upper bound depends
    only on q, so it is computed once per schedule entry. Rows are independent
    and may run on a thread pool; output order follows the schedule, not
    completion.
    """
    if not q_schedule or not m_offsets:
        raise InvalidConfiguration("schedules must be nonempty")
    xi_p = xi if isinstance(xi, CirclePoint) else CirclePoint(as_complex(xi))

    uppers = {}
    for q in q_schedule:
        deficits = float(q) ** np.arange(1, n + 1, dtype=float)
        symbol = BlaschkeProduct(zeros=tuple((1.0 - deficits) * xi_p.value))
        uppers[q] = lemma1_upper_bound(symbol, lambda_spec, rotation_grid)

    cells = [(q, n + off) for q in q_schedule for off in m_offsets]

    def run_cell(cell):
        q, m = cell
        if float(q) ** m < PROBE_DEFICIT_FLOOR:
            return StudyRow(
                n=n,
                xi=xi_p.value,
                q=float(q),
                m=int(m),
                lower=math.nan,
                upper=uppers[q],
                ideal_limit=ideal_limit(n, q),
                interp_norm=math.nan,
                warnings=("probe deficit below representable floor; row skipped",),
            )
        cert = certify_lower_bound(
            RayConfiguration(
                xi=xi_p, q=float(q), n=int(n), m=int(m),
                eps=default_eps(q) if eps is None else eps,
            )
        )
        return StudyRow(
            n=n,
            xi=xi_p.value,
            q=float(q),
            m=int(m),
            lower=cert.certified,
            upper=uppers[q],
            ideal_limit=cert.ideal_limit,
            interp_norm=cert.interpolant_norm,
            warnings=cert.warnings,
            certificate=cert,
        )

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = tuple(pool.map(run_cell, cells))
    else:
        rows = tuple(run_cell(c) for c in cells)

    finite = [r for r in rows if not math.isnan(r.lower)]
    if not finite:
        raise InvalidConfiguration("no schedule cell survived the conditioning guards")
    best_row = max(finite, key=lambda r: r.lower)
    best = NormBracket(
        lower=best_row.lower,
        upper=max(r.upper for r in rows),
        lower_provenance=best_row.certificate,
        upper_provenance="largest per-symbol upper bound across the schedule",
    )
    return StudyResult(rows=rows, best=best)


def study_to_csv(result: StudyResult) -> str:
    """Deterministic CSV: 17 significant digits, newline rows, semicolon warnings."""
    lines = ["n,xi_re,xi_im,q,m,lower,upper,ideal_limit,interp_norm,warnings"]
    for r in result.rows:
        fields = [
            str(r.n),
            _fmt(r.xi.real),
            _fmt(r.xi.imag),
            _fmt(r.q),
            str(r.m),
            _fmt(r.lower),
            _fmt(r.upper),
            _fmt(r.ideal_limit),
            _fmt(r.interp_norm),
            '"' + ";".join(r.warnings).replace('"', "'") + '"' if r.warnings else "",
        ]
        lines.append(",".join(fields))
    return "\n".join(lines) + "\n"


def study_to_json(result: StudyResult) -> str:
    """JSON variant with full certificates attached to each computed row."""
    payload = {
        "rows": [
            {
                "n": r.n,
                "xi": [r.xi.real, r.xi.imag],
                "q": r.q,
                "m": r.m,
                "lower": None if math.isnan(r.lower) else r.lower,
                "upper": r.upper,
                "ideal_limit": r.ideal_limit,
                "interp_norm": None if math.isnan(r.interp_norm) else r.interp_norm,
                "warnings": list(r.warnings),
                "certificate": r.certificate.to_dict() if r.certificate else None,
            }
            for r in result.rows
        ],
        "best": {
            "lower": result.best.lower,
            "upper": result.best.upper,
        },
    }
    return json.dumps(payload, indent=2) + "\n"


def _fmt(x: float) -> str:
    return "nan" if math.isnan(x) else format(x, ".17g")


RHO_MAX = 0.9995


def _zeros_from_params(p: np.ndarray) -> np.ndarray:
    t = p[0::2] + 1j * p[1::2]
    return RHO_MAX * t / np.sqrt(1.0 + np.abs(t) ** 2)


def _params_from_zeros(w: np.ndarray) -> np.ndarray:
    w = np.asarray(w, dtype=complex)
    r = np.abs(w)
    cap = 0.95 * RHO_MAX
    w = np.where(r > cap, w * (cap / np.maximum(r, 1e-300)), w)
    t = w / np.sqrt(RHO_MAX**2 - np.abs(w) ** 2)
    out = np.empty(2 * w.size)
    out[0::2] = t.real
    out[1::2] = t.imag
    return out


def direct_norm_estimate(B: BlaschkeProduct, z, restarts: int = 32, seed: int = 0) -> float:
    """Best found value of |T_B b(z)| over unit-norm Blaschke arguments b.

    Candidates have degree at most deg(B) + 1 and boundary sup-norm exactly 1,
    so every evaluation is a genuine lower bound on the operator norm; the
    multistart search just tries to make it large. The constant argument 1 is
    always included. No global optimality is claimed.
    """
    zc = as_complex(z)
    best = abs(apply_toeplitz_residue(B, 1.0, zc))
    rng = np.random.default_rng(seed)
    anchors = list(B.zeros) + [zc, 0.0]
    k = B.degree + 1

    def objective(p):
        cand = BlaschkeProduct(zeros=tuple(_zeros_from_params(np.asarray(p))))
        return -abs(apply_toeplitz_residue(B, cand, zc))

    for r in range(restarts):
        w0 = np.array(
            [anchors[(r + i) % len(anchors)] for i in range(k)], dtype=complex
        ) + 0.3 * (rng.standard_normal(k) + 1j * rng.standard_normal(k))
        p0 = _params_from_zeros(w0)
        res = minimize(
            objective,
            p0,
            method="Nelder-Mead",
            options={"maxiter": 400, "fatol": 1e-10, "xatol": 1e-8},
        )
        best = max(best, -float(res.fun))
    return float(best)
