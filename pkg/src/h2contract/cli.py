"""Command-line driver: ``h2contract {eval,verify,contract}``.

Every option can also come from a config file (``--config``), either a
JSON object or ``key = value`` lines; command-line flags win.  Keys are
the long flag names with dashes or underscores.

Exit codes: 0 all checks pass, 1 some check failed, 2 configuration or
domain error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time
from dataclasses import MISSING, dataclass, field
from typing import Any, Callable

import numpy as np

from . import __version__
from .basis import FAMILIES, LIMIT_TYPES, PARAM_TYPES, eval_basis, family_of
from .errors import ConditioningError, ConvergenceError, DomainError
from .geometry import (
    COORD_NAMES,
    SAMPLE_BOXES,
    ChartId,
    ChartPoint,
    EuclidPoint,
    manifold_residual,
    measure_errors,
    metric,
    metric_fd,
    random_chart_points,
)

SCHEMA_VERSION = 1
DEFAULT_SEED = 42
SUITES = ("manifold", "metric", "helmholtz", "specfun-oracles", "measure", "ep-ode")

EVAL_COLUMNS = ("xi1", "xi2", "re", "im", "log_abs", "phase")
VERIFY_COLUMNS = ("name", "inputs", "measured", "relation", "threshold", "passed")
CONTRACT_COLUMNS = ("family", "x", "y", "R", "err", "order", "metric", "slope", "verdict")


class ConfigError(ValueError):
    """Invalid or inconsistent run configuration."""


# ------------------------------------------------------------------ config schema

def _float(v) -> float:
    return float(v)


def _int(v) -> int:
    f = float(v)
    if f != int(f):
        raise ValueError(f"not an integer: {v!r}")
    return int(f)


def _float_list(v) -> list[float]:
    if isinstance(v, (list, tuple)):
        return [float(x) for x in v]
    return [float(x) for x in str(v).split(",") if x.strip()]


def _grid(v) -> tuple[float, float, int, bool]:
    # "lo:hi:n" inclusive, "lo:hi:n:open" excludes hi
    parts = str(v).split(":")
    if len(parts) not in (3, 4) or (len(parts) == 4 and parts[3] != "open"):
        raise ValueError(f"grid must read lo:hi:n or lo:hi:n:open, got {v!r}")
    n = _int(parts[2])
    if n < 1:
        raise ValueError("grid needs n >= 1")
    return float(parts[0]), float(parts[1]), n, len(parts) == 4


def _pairs(v) -> list[tuple[float, float]]:
    if isinstance(v, (list, tuple)):
        return [(float(a), float(b)) for a, b in v]
    out = []
    for chunk in str(v).split(";"):
        if chunk.strip():
            a, b = chunk.split(",")
            out.append((float(a), float(b)))
    return out


def _choice(*opts) -> Callable:
    def conv(v):
        if v not in opts:
            raise ValueError(f"expected one of {', '.join(opts)}, got {v!r}")
        return v
    return conv


def _family(v) -> str:
    return ChartId.parse(v).value


# key: (converter, default, help, commands)
SCHEMA: dict[str, tuple[Callable, Any, str, tuple[str, ...]]] = {
    "format": (_choice("json", "csv"), "json", "output format", ("eval", "verify", "contract")),
    "out": (str, None, "output path (stdout when omitted)", ("eval", "verify", "contract")),
    "seed": (_int, DEFAULT_SEED, "seed for randomized suites", ("eval", "verify", "contract")),
    "tol": (_float, None, "override every check threshold", ("verify", "contract")),
    "family": (_family, None, "family / chart id (verify: restricts the chart-based suites)",
               ("eval", "verify", "contract")),
    "r_grid": (_float_list, None, "comma-separated increasing R values", ("contract",)),
    # eval
    "chart": (_family, None, "chart of the grid (defaults to the family's chart)", ("eval",)),
    "R": (_float, 1.0, "hyperboloid radius", ("eval",)),
    "rho": (_float, None, "spectral parameter rho", ("eval",)),
    "nu": (_float, None, "equidistant separation constant", ("eval",)),
    "s": (_float, None, "separation constant s", ("eval",)),
    "m": (_int, None, "azimuthal integer m", ("eval", "contract")),
    "eps": (_int, None, "sign eps = +1 or -1 (default +1)", ("eval", "contract")),
    "xi1": (_grid, None, "grid lo:hi:n[:open] for the first chart coordinate", ("eval",)),
    "xi2": (_grid, None, "grid lo:hi:n[:open] for the second chart coordinate", ("eval",)),
    "points": (_pairs, None, "explicit points 'a,b;c,d' (chart coords for eval, x,y for contract)",
               ("eval", "contract")),
    # verify
    "suite": (_choice("all", *SUITES), "all", "verification suite", ("verify",)),
    "samples": (_int, None, "sample count for randomized suites", ("verify",)),
    # contract
    "k": (_float, None, "flat wave number k", ("contract",)),
    "k1": (_float, None, "flat wave number k1", ("contract",)),
    "k2": (_float, None, "flat wave number k2", ("contract",)),
    "lam": (_float, None, "elliptic-parabolic separation constant lambda", ("contract",)),
    "metric": (_choice("auto", "pointwise", "envelope"), "auto", "contraction error metric", ("contract",)),
}


def _norm_key(k: str) -> str:
    k = k.strip().lstrip("-").replace("-", "_")
    return "R" if k.lower() == "r" else k


def read_config_file(path: str) -> dict:
    """Parse a JSON object or ``key = value`` lines (``#`` comments)."""
    with open(path) as fh:
        text = fh.read()
    if text.lstrip().startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: invalid JSON: {exc}") from None
        if not isinstance(data, dict):
            raise ConfigError(f"{path}: top level must be an object")
        return {_norm_key(k): v for k, v in data.items()}
    out = {}
    for n, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{n}: expected key = value")
        k, v = line.split("=", 1)
        out[_norm_key(k)] = v.strip()
    return out


def build_config(command: str, file_values: dict, flag_values: dict) -> dict:
    """Merge config-file and flag values, validate against :data:`SCHEMA`, fill defaults."""
    merged = dict(file_values)
    merged.update({k: v for k, v in flag_values.items() if v is not None})
    problems = []
    cfg = {}
    for k, v in merged.items():
        if k not in SCHEMA:
            problems.append(f"unknown key {k!r}")
            continue
        conv, _, _, cmds = SCHEMA[k]
        if command not in cmds:
            problems.append(f"key {k!r} does not apply to {command!r}")
            continue
        try:
            cfg[k] = conv(v)
        except (ValueError, TypeError, DomainError) as exc:
            problems.append(f"{k}: {exc}")
    if problems:
        raise ConfigError("; ".join(problems))
    for k, (_, default, _, cmds) in SCHEMA.items():
        if command in cmds:
            cfg.setdefault(k, default)
    return cfg


# ------------------------------------------------------------------ report

@dataclass
class Report:
    command: str
    config: dict
    rows: list[dict] = field(default_factory=list)
    data: list[dict] = field(default_factory=list)
    data_columns: tuple = ()

    def check(self, name: str, inputs: dict, measured: float, threshold: float, relation: str = "<=",
              error: str | None = None) -> bool:
        if error is None and measured is not None and math.isfinite(measured):
            ok = measured <= threshold if relation == "<=" else measured >= threshold
        else:
            ok = False
        row = {"name": name, "inputs": inputs, "measured": measured, "relation": relation,
               "threshold": threshold, "passed": bool(ok)}
        if error is not None:
            row["error"] = error
        self.rows.append(row)
        return ok

    @property
    def summary(self) -> dict:
        n_err = sum(1 for r in self.rows if "error" in r)
        n_pass = sum(1 for r in self.rows if r["passed"])
        return {"total": len(self.rows), "passed": n_pass, "failed": len(self.rows) - n_pass - n_err,
                "errors": n_err}

    def exit_code(self) -> int:
        s = self.summary
        if s["errors"]:
            return 2
        return 1 if s["failed"] else 0

    def to_json(self) -> str:
        doc = {
            "schema": SCHEMA_VERSION,
            "tool": "h2contract",
            "version": __version__,
            "command": self.command,
            "timestamp": time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()),
            "config": self.config,
            "summary": self.summary,
            "rows": self.rows,
        }
        if self.data_columns:
            doc["columns"] = list(self.data_columns)
            doc["data"] = self.data
        return json.dumps(_finite(doc), indent=2, default=_json_default, allow_nan=False)

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write(f"# h2contract {__version__} {self.command} schema={SCHEMA_VERSION}\n")
        for k, v in self.config.items():
            if v is not None:
                buf.write(f"# {k}={_json_default(v) if not isinstance(v, (str, int, float)) else v}\n")
        s = self.summary
        buf.write(f"# summary total={s['total']} passed={s['passed']} failed={s['failed']} errors={s['errors']}\n")
        w = csv.writer(buf, lineterminator="\n")
        if self.data_columns:
            w.writerow(self.data_columns)
            for d in self.data:
                w.writerow([_cell(d.get(c)) for c in self.data_columns])
        else:
            w.writerow(VERIFY_COLUMNS)
            for r in self.rows:
                w.writerow([_cell(r.get(c)) for c in VERIFY_COLUMNS])
        return buf.getvalue()


def _finite(v):
    # JSON has no NaN/inf: non-finite numbers become null
    if isinstance(v, float) and not math.isfinite(v):
        return None
    if isinstance(v, dict):
        return {k: _finite(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_finite(x) for x in v]
    return v


def _json_default(v):
    if isinstance(v, (tuple, list)):
        return json.dumps(list(v))
    if isinstance(v, np.generic):
        return v.item()
    return str(v)


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, dict):
        return json.dumps(v, sort_keys=True)
    if isinstance(v, float):
        return repr(v)
    return str(v)


# ------------------------------------------------------------------ eval

def _grid_values(grid) -> np.ndarray:
    lo, hi, n, open_ = grid
    return np.linspace(lo, hi, n, endpoint=not open_)


def _basis_params(family: ChartId, cfg: dict):
    cls = PARAM_TYPES[family]
    fields = {f: d for f, d in cls.__dataclass_fields__.items() if f != "family"}
    kwargs = {f: cfg[f] for f in fields if cfg.get(f) is not None}
    missing = [f for f, d in fields.items() if f not in kwargs and d.default is MISSING]
    if missing:
        raise ConfigError(f"{family.value} parameters need: {', '.join(missing)}")
    return cls(**kwargs)


def cmd_eval(cfg: dict) -> Report:
    if cfg["family"] is None:
        raise ConfigError("eval needs --family")
    fam = family_of(cfg["family"])
    chart = ChartId.parse(cfg["chart"] or fam.value)
    params = _basis_params(fam, cfg)
    if cfg["points"] is not None:
        pts = cfg["points"]
    else:
        (a0, a1), (b0, b1) = SAMPLE_BOXES[chart]
        g1 = _grid_values(cfg["xi1"] or (a0, a1, 16, False))
        g2 = _grid_values(cfg["xi2"] or (b0, b1, 16, False))
        pts = [(u, v) for u in g1 for v in g2]
    rep = Report("eval", cfg, data_columns=EVAL_COLUMNS)
    for u, v in pts:
        val = eval_basis(params, ChartPoint(chart, u, v), cfg["R"])
        lin = val.linear
        rep.data.append({
            "xi1": float(u), "xi2": float(v),
            "re": None if lin is None else lin.real, "im": None if lin is None else lin.imag,
            "log_abs": val.value.log_mag, "phase": val.value.phase,
        })
    n1, n2 = COORD_NAMES[chart]
    rep.config = dict(cfg, coords=f"{n1},{n2}", params=repr(params))
    return rep


# ------------------------------------------------------------------ verify

def _suite_manifold(rep: Report, rng, n: int | None, tol: float | None, only: str | None = None):
    n = n or 1000
    thr = tol or 1e-12
    charts = [ChartId.parse(only)] if only else list(ChartId)
    for i in range(n):
        c = charts[i % len(charts)]
        p = random_chart_points(c, 1, rng)[0]
        R = float(10 ** rng.uniform(-1, 3))
        r = abs(manifold_residual(p, R))
        rep.check(f"manifold/{c.value}/{i}", dict(p.as_dict(), R=R), r, thr)


def _suite_metric(rep: Report, rng, n: int | None, tol: float | None, only: str | None = None):
    n = n or 100
    thr = tol or 1e-7
    for c in ([ChartId.parse(only)] if only else ChartId):
        worst, worst_in, neg_def = 0.0, None, True
        for p in random_chart_points(c, n, rng):
            R = float(10 ** rng.uniform(-1, 3))
            g, gf = metric(p, R), metric_fd(p, R)
            err = float(np.linalg.norm(g.as_array() - gf.as_array()) / np.linalg.norm(g.as_array()))
            neg_def &= g.g11 < 0 and g.det > 0
            if err >= worst:
                worst, worst_in = err, dict(p.as_dict(), R=R)
        rep.check(f"metric/{c.value}/fd-pullback", dict(worst_in, samples=n), worst, thr)
        rep.check(f"metric/{c.value}/negative-definite", {"samples": n}, 1.0 if neg_def else 0.0, 1.0, ">=")


def _suite_helmholtz(rep: Report, rng, n: int | None, tol: float | None, only: str | None = None):
    from .lbop import helmholtz_residual, random_helmholtz_cases

    n = n or 20
    thr = tol or 1e-5
    for fam in ([family_of(only)] if only else FAMILIES):
        for i, (params, p, R) in enumerate(random_helmholtz_cases(fam.value, n, rng)):
            inputs = dict(p.as_dict(), R=R, params=repr(params))
            try:
                rep.check(f"helmholtz/{fam.value}/{i}", inputs, helmholtz_residual(params, p, R), thr)
            except (DomainError, ConvergenceError, OverflowError) as exc:
                rep.check(f"helmholtz/{fam.value}/{i}", inputs, math.nan, thr, error=str(exc))


def _suite_oracles(rep: Report, rng, n: int | None, tol: float | None, only: str | None = None):
    from .oracles import load_macdonald_series, load_specfun_oracles, macdonald_cross_error

    for row in load_specfun_oracles():
        inputs = {"args": [str(a) for a in row.args], "source": row.source}
        try:
            rep.check(f"oracle/{row.case}", inputs, row.rel_error(), tol or row.rtol)
        except (DomainError, ConvergenceError, OverflowError) as exc:
            rep.check(f"oracle/{row.case}", inputs, math.nan, tol or row.rtol, error=str(exc))
    for rho, x, ref in load_macdonald_series():
        rep.check(f"oracle/macdonald-cross({rho:g},{x:g})", {"rho": rho, "x": x},
                  macdonald_cross_error(rho, x, ref), tol or 1e-7)


def _suite_measure(rep: Report, rng, n: int | None, tol: float | None, only: str | None = None):
    grid = [10.0, 20.0, 40.0, 80.0, 160.0]
    for r in (0.5, 1.0, 2.0):
        errs = measure_errors(r, grid)
        ratio = min(a / b for a, b in zip(errs, errs[1:]))
        rep.check(f"measure/r={r:g}/halving", {"r": r, "R_grid": grid, "errors": errs}, ratio, tol or 2.0, ">=")


def _suite_ep_ode(rep: Report, rng, n: int | None, tol: float | None, only: str | None = None):
    from .lbop import ep_limit_ode_residual, ep_separation_residual

    n = n or 20
    thr = tol or 1e-6
    for i in range(n):
        rho, s, a = rng.uniform(0.5, 5.0), rng.uniform(-3.0, 3.0), rng.uniform(0.0, 2.0)
        rep.check(f"ep-ode/separation/{i}", {"rho": rho, "s": s, "a": a}, ep_separation_residual(rho, s, a), thr)
    for i in range(n):
        k, lam, xi = rng.uniform(0.5, 2.0), rng.uniform(-2.0, 2.0), rng.uniform(0.2, 3.0)
        which = "xi" if i % 2 == 0 else "eta"
        rep.check(f"ep-ode/limit-{which}/{i}", {"k": k, "lam": lam, which: xi},
                  ep_limit_ode_residual(k, lam, xi, which=which), thr)


_SUITE_FUNCS = {
    "manifold": _suite_manifold,
    "metric": _suite_metric,
    "helmholtz": _suite_helmholtz,
    "specfun-oracles": _suite_oracles,
    "measure": _suite_measure,
    "ep-ode": _suite_ep_ode,
}


def cmd_verify(cfg: dict) -> Report:
    rep = Report("verify", cfg)
    suites = SUITES if cfg["suite"] == "all" else (cfg["suite"],)
    for name in suites:
        # one generator per suite keeps each suite reproducible on its own
        rng = np.random.default_rng([cfg["seed"], SUITES.index(name)])
        _SUITE_FUNCS[name](rep, rng, cfg["samples"], cfg["tol"], cfg["family"])
    return rep


# ------------------------------------------------------------------ contract

def _limit_params(fam: ChartId, cfg: dict, default):
    cls = LIMIT_TYPES[fam]
    names = [f for f in cls.__dataclass_fields__ if f != "family"]
    given = {f: cfg[f] for f in names if cfg.get(f) is not None}
    if not given:
        return default
    base = {f: getattr(default, f) for f in names}
    base.update(given)
    return cls(**base)


def cmd_contract(cfg: dict) -> Report:
    from .contraction import SLOPE_THRESHOLD, convergence_study, default_cases

    cases = default_cases()
    fams = [family_of(cfg["family"])] if cfg["family"] else list(FAMILIES)
    rep = Report("contract", cfg, data_columns=CONTRACT_COLUMNS)
    thr = cfg["tol"] if cfg["tol"] is not None else SLOPE_THRESHOLD
    for fam in fams:
        lp0, pts0, grid0 = cases[fam]
        grid = cfg["r_grid"] or list(grid0)
        pts = [EuclidPoint(x, y) for x, y in cfg["points"]] if cfg["points"] else pts0
        try:
            lp = _limit_params(fam, cfg, lp0)
            studies = convergence_study(fam, lp, pts, grid, metric=cfg["metric"])
        except (DomainError, ConditioningError) as exc:
            rep.check(f"contract/{fam.value}", {"config": "limit parameters"}, math.nan, thr, error=str(exc))
            continue
        for st in studies:
            name = f"contract/{fam.value}/({st.point.x:g},{st.point.y:g})"
            inputs = {"lp": repr(lp), "x": st.point.x, "y": st.point.y, "R_grid": grid, "metric": st.metric,
                      "monotone": st.monotone, "verdict": st.verdict,
                      "errors": [r.err for r in st.records], "flags": st.flags}
            if st.error is not None:
                rep.check(name, inputs, math.nan, thr, error=st.error)
            elif st.exact:
                rep.check(name, inputs, -math.inf, thr)
                rep.rows[-1]["passed"] = True
            else:
                ok = rep.check(name, inputs, st.slope if st.slope is not None else math.nan, thr)
                rep.rows[-1]["passed"] = ok and st.monotone
            for r in st.records:
                rep.data.append({"family": fam.value, "x": st.point.x, "y": st.point.y, "R": r.R, "err": r.err,
                                 "order": r.order, "metric": st.metric, "slope": st.slope, "verdict": st.verdict})
    return rep


# ------------------------------------------------------------------ entry point

COMMANDS = {"eval": cmd_eval, "verify": cmd_verify, "contract": cmd_contract}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="h2contract", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"h2contract {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)
    helps = {"eval": "evaluate a basis function on a chart grid",
             "verify": "run verification suites",
             "contract": "run R -> infinity contraction studies"}
    for cmd in COMMANDS:
        sp = sub.add_parser(cmd, help=helps[cmd])
        sp.add_argument("--config", help="JSON or key=value config file")
        for key, (_, default, hlp, cmds) in SCHEMA.items():
            if cmd in cmds:
                flag = "--" + key.replace("_", "-")
                sp.add_argument(flag, dest=key, default=None,
                                help=f"{hlp} (default: {default})" if default is not None else hlp)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    flags = {k: v for k, v in vars(args).items() if k not in ("command", "config")}
    try:
        file_values = read_config_file(args.config) if args.config else {}
        cfg = build_config(args.command, file_values, flags)
        print(f"h2contract {args.command}: seed {cfg['seed']}", file=sys.stderr)
        rep = COMMANDS[args.command](cfg)
    except ConfigError as exc:
        print(f"error: config: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: config: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"error: domain: {exc}", file=sys.stderr)
        return 2
    text = rep.to_json() if cfg["format"] == "json" else rep.to_csv()
    if cfg["out"]:
        with open(cfg["out"], "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    s = rep.summary
    print(f"summary: {s['passed']}/{s['total']} passed, {s['failed']} failed, {s['errors']} errors", file=sys.stderr)
    return rep.exit_code()


if __name__ == "__main__":
    sys.exit(main())
