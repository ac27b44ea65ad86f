"""Rectangle sweeps of one method against the oracle, CSV output and a
cross-method comparison report."""

from __future__ import annotations

import csv
import io
import math
import statistics
from dataclasses import dataclass, field

from . import oracle, registry
from .errors import DomainError, NumericError, TargetUnreachable

DEFAULT_DOMAIN = (-15.0, 15.0, 0.0, 15.0)
DEFAULT_STEP = 0.25
HEADER = ("re", "im", "d", "terms", "flags")


@dataclass(frozen=True)
class SurveyConfig:
    method: str
    m: int = 0
    params: tuple = ()  # sorted (key, value) pairs
    re_min: float = DEFAULT_DOMAIN[0]
    re_max: float = DEFAULT_DOMAIN[1]
    im_min: float = DEFAULT_DOMAIN[2]
    im_max: float = DEFAULT_DOMAIN[3]
    step: float = DEFAULT_STEP
    target_d: float | None = None
    out: str | None = None

    def __post_init__(self):
        if not self.step > 0:
            raise DomainError("step must be positive")
        if self.im_min < 0:
            raise DomainError("im_min must be >= 0; the lower half-plane follows by symmetry")
        if self.re_min > self.re_max or self.im_min > self.im_max:
            raise DomainError("empty domain")
        corner = max(abs(complex(r, i)) for r in (self.re_min, self.re_max)
                     for i in (self.im_min, self.im_max))
        if corner > oracle.RADIUS:
            raise DomainError("domain reaches |z| = %g beyond the oracle radius %g"
                              % (corner, oracle.RADIUS))

    def param_dict(self) -> dict:
        return dict(self.params)

    def axes(self) -> tuple:
        return _axis(self.re_min, self.re_max, self.step), _axis(self.im_min, self.im_max, self.step)


def _axis(lo: float, hi: float, step: float) -> list:
    # nodes lo + k step, computed by multiplication so they do not drift
    n = int(math.floor((hi - lo) / step + 1e-9))
    return [lo + k * step for k in range(n + 1)]


@dataclass(frozen=True)
class Record:
    re: float
    im: float
    d: float
    terms: int
    flags: tuple = ()
    exp_evals: int = field(default=0, compare=False)  # not part of the CSV


@dataclass(frozen=True)
class AccuracyGrid:
    """Row-major records (im outer, re inner) over the full rectangle."""

    config: SurveyConfig
    n_re: int
    n_im: int
    records: tuple = field(default_factory=tuple)

    def column(self, name: str) -> list:
        return [getattr(r, name) for r in self.records]

    def row(self, i: int) -> tuple:
        return self.records[i * self.n_re:(i + 1) * self.n_re]


def _point(method, cfg: SurveyConfig, params: dict, z: complex) -> Record:
    try:
        res = method.evaluate(cfg.m, z, params, cfg.target_d)
    except TargetUnreachable:
        return Record(z.real, z.imag, 0.0, 0, ("target_unreachable",))
    except (DomainError, NumericError, ZeroDivisionError, OverflowError) as exc:
        return Record(z.real, z.imag, 0.0, 0, ("error:" + type(exc).__name__,))
    d = oracle.digits_of(res.best(), oracle.oracle_cached(cfg.m, z))
    return Record(z.real, z.imag, d, res.terms_used, tuple(res.flags), res.exp_evals)


def run_accuracy_survey(cfg: SurveyConfig) -> AccuracyGrid:
    """Digits of accuracy and terms used at every node of the rectangle."""
    method = registry.get(cfg.method)
    params = method.params(cfg.param_dict())
    if not method.m_support(cfg.m):
        raise DomainError("method %s does not support m = %r" % (cfg.method, cfg.m))
    res, ims = cfg.axes()
    recs = tuple(_point(method, cfg, params, complex(x, y)) for y in ims for x in res)
    return AccuracyGrid(cfg, len(res), len(ims), recs)


def run_terms_survey(cfg: SurveyConfig) -> AccuracyGrid:
    """As run_accuracy_survey; for methods that stop on a target (combined,
    gridtaylor, power_series with tol) the target defaults to 14 digits."""
    if cfg.target_d is None:
        cfg = SurveyConfig(**{**cfg.__dict__, "target_d": registry.DEFAULT_TARGET})
    return run_accuracy_survey(cfg)


def _fmt(x: float) -> str:
    return repr(float(x))


def grid_to_csv(grid: AccuracyGrid) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(HEADER)
    for r in grid.records:
        w.writerow((_fmt(r.re), _fmt(r.im), _fmt(r.d), r.terms, ";".join(r.flags)))
    return buf.getvalue()


def emit_csv(grid: AccuracyGrid, path) -> None:
    """Write the grid as CSV with LF endings; raises OSError on I/O failure."""
    with open(path, "w", encoding="ascii", newline="") as fh:
        fh.write(grid_to_csv(grid))


def parse_csv(text: str, config: SurveyConfig) -> AccuracyGrid:
    """Inverse of grid_to_csv for a known config."""
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or tuple(rows[0]) != HEADER:
        raise ValueError("missing CSV header")
    recs = tuple(Record(float(a), float(b), float(c), int(t), tuple(f.split(";")) if f else ())
                 for a, b, c, t, f in rows[1:])
    res, ims = config.axes()
    if len(recs) != len(res) * len(ims):
        raise ValueError("CSV has %d rows, the domain needs %d" % (len(recs), len(res) * len(ims)))
    return AccuracyGrid(config, len(res), len(ims), recs)


@dataclass(frozen=True)
class MethodSummary:
    method: str
    params: tuple
    min_d: float
    median_d: float
    max_terms: int
    exp_per_point: float
    failures: int


def summarize(grid: AccuracyGrid) -> MethodSummary:
    ok = [r for r in grid.records if not any(f.startswith(("error:", "target_")) for f in r.flags)]
    ds = [r.d for r in ok]
    cfg = grid.config
    exps = [r.exp_evals for r in ok]
    return MethodSummary(
        cfg.method, cfg.params,
        min(ds) if ds else math.nan,
        statistics.median(ds) if ds else math.nan,
        max((r.terms for r in ok), default=0),
        sum(exps) / len(exps) if exps else math.nan,
        len(grid.records) - len(ok))


def compare_report(methods: list, cfg: SurveyConfig) -> str:
    """Text table of min/median digits, max terms and exponentials per point.

    ``methods`` holds method ids or (id, params) pairs; the domain, m and
    target come from ``cfg``.
    """
    if len(methods) < 2:
        raise registry.UsageError("compare needs at least two methods")
    rows = []
    for entry in methods:
        mid, params = (entry, ()) if isinstance(entry, str) else (entry[0], tuple(sorted(dict(entry[1]).items())))
        sub = SurveyConfig(**{**cfg.__dict__, "method": mid, "params": params})
        rows.append(summarize(run_accuracy_survey(sub)))
    re_axis, im_axis = cfg.axes()
    lines = ["m=%d re=[%s,%s] im=[%s,%s] step=%s points=%d target=%s"
             % (cfg.m, _fmt(cfg.re_min), _fmt(cfg.re_max), _fmt(cfg.im_min), _fmt(cfg.im_max),
                _fmt(cfg.step), len(re_axis) * len(im_axis),
                "-" if cfg.target_d is None else _fmt(cfg.target_d)),
             "%-34s %8s %8s %9s %8s %6s" % ("method", "min_d", "med_d", "max_terms", "exp/pt", "fail")]
    for s in rows:
        label = s.method + ("(" + ",".join("%s=%s" % kv for kv in s.params) + ")" if s.params else "")
        lines.append("%-34s %8.2f %8.2f %9d %8.2f %6d"
                     % (label, s.min_d, s.median_d, s.max_terms, s.exp_per_point, s.failures))
    return "\n".join(lines) + "\n"
