"""Command-line interface: ``vonroos {coeffs,sweep,expand,solve}``.

Every run is described by one JSON document (see ``RunConfig``); flags
override the leaves of a ``--config`` file, and ``--dump-config`` prints the
fully resolved document instead of running it.  Exit status is 0 on success,
2 for configuration errors and 3 for numerical errors; errors are reported on
stderr as a single line starting with ``error:``.
"""

import argparse
import copy
import csv
import io
import json
import os
import re
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from numbers import Rational

from . import __version__
from ._rational import format_rational, parse_rational
from .coefficient_engine import (
    QuadratureConfig,
    coefficients_continuous,
    coefficients_discrete,
    lorentz_closed_form,
    lorentz_limit,
    mc_estimate,
    uniform_closed_form,
)
from .errors import (
    CoefficientError,
    ConsistencyError,
    ConvergenceError,
    DomainError,
    EigenSolverError,
    ParseError,
    VonRoosError,
    WeightEvaluationError,
)
from .expression import parse_expression
from .operator_algebra import normal_order, parse_operator, vonroos_pair
from .ordering_domain import Region
from .pdm_hamiltonian import Grid, MassProfile, assemble, eigen
from .weight_model import (
    DiscreteEntry,
    DiscreteWeight,
    ExpressionWeight,
    LorentzSum,
    Uniform,
    preset_orderings,
)

QUAD_ORDER_ENV = "VONROOS_QUAD_ORDER"
NEGATIVE_VALUE_RE = re.compile(r"-\.?\d")
DEFAULT_QUAD_ORDER = 64
DEFAULT_QUAD_TOL = 1e-12

COMMANDS = ("coeffs", "sweep", "expand", "solve")
DISTRIBUTIONS = ("uniform", "lorentz_sum", "expression", "discrete")
FORMATS = ("text", "csv", "json")
PRESETS = {"known5": preset_orderings}
PROFILES = {
    "constant": (MassProfile.constant, ("m0",)),
    "exponential": (MassProfile.exponential, ("m0", "kappa")),
    "rational": (MassProfile.rational, ("m0", "lam")),
}

NUMERICAL_ERRORS = (
    CoefficientError,
    ConvergenceError,
    EigenSolverError,
    WeightEvaluationError,
    ConsistencyError,
    ArithmeticError,
)


class ConfigError(VonRoosError, ValueError):
    pass


@dataclass
class RunConfig:
    """Resolved run description; ``to_dict`` is the JSON config schema."""

    command: str
    distribution: dict = field(default_factory=dict)
    b: object = None
    method: str = "quadrature"
    quadrature: dict = field(default_factory=dict)
    mc: dict = field(default_factory=dict)
    sweep: dict = field(default_factory=dict)
    expand: dict = field(default_factory=dict)
    solve: dict = field(default_factory=dict)
    output: dict = field(default_factory=dict)

    @classmethod
    def from_dict(cls, data):
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object")
        unknown = set(data) - set(cls.__dataclass_fields__)
        if unknown:
            raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
        if data.get("command") not in COMMANDS:
            raise ConfigError(f"command must be one of {', '.join(COMMANDS)}")
        cfg = cls(**copy.deepcopy(data))
        cfg._resolve()
        return cfg

    def to_dict(self):
        return {k: v for k, v in asdict(self).items() if v not in ({}, None)}

    def _resolve(self):
        quad = self.quadrature
        if "order" not in quad:
            env = os.environ.get(QUAD_ORDER_ENV)
            try:
                quad["order"] = int(env) if env else DEFAULT_QUAD_ORDER
            except ValueError:
                raise ConfigError(f"{QUAD_ORDER_ENV} must be an integer, got {env!r}") from None
        quad.setdefault("tol", DEFAULT_QUAD_TOL)
        self.output.setdefault("format", "csv" if self.command == "sweep" else "text")
        if self.output["format"] not in FORMATS:
            raise ConfigError(f"output format must be one of {', '.join(FORMATS)}")
        if self.method not in ("quadrature", "closed", "mc"):
            raise ConfigError("method must be quadrature, closed or mc")
        if self.command in ("coeffs", "sweep", "solve"):
            dist = self.distribution.get("type")
            if dist not in DISTRIBUTIONS:
                raise ConfigError(
                    f"distribution type must be one of {', '.join(DISTRIBUTIONS)}"
                )
            if dist != "discrete" and self.command != "sweep" and self.b is None:
                raise ConfigError("continuous distributions need b")
        if self.method == "mc" and "seed" not in self.mc:
            raise ConfigError("Monte Carlo runs require an explicit seed")


# --------------------------------------------------------------------------
# Building library objects from the config
# --------------------------------------------------------------------------


def parse_number(value, what="value"):
    """Rational strings stay exact; everything else becomes float."""
    if isinstance(value, bool):
        raise ConfigError(f"{what} must be a number")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, float):
        return value
    if isinstance(value, str):
        try:
            return parse_rational(value)
        except ValueError:
            pass
        try:
            return float(value)
        except ValueError:
            raise ConfigError(f"{what} is not a number: {value!r}") from None
    raise ConfigError(f"{what} must be a number, got {value!r}")


def build_weight(dist):
    kind = dist["type"]
    if kind == "uniform":
        return Uniform()
    if kind == "lorentz_sum":
        return LorentzSum()
    if kind == "expression":
        if not dist.get("rho"):
            raise ConfigError("expression distribution needs rho")
        return ExpressionWeight.from_text(dist["rho"])
    preset = dist.get("preset")
    entries = dist.get("entries")
    if preset and entries:
        raise ConfigError("give either a discrete preset or entries, not both")
    if preset:
        if preset not in PRESETS:
            raise ConfigError(f"unknown preset {preset!r}; known: {', '.join(PRESETS)}")
        return PRESETS[preset]()
    if not entries:
        raise ConfigError("discrete distribution needs entries or a preset")
    out = []
    for e in entries:
        try:
            out.append(
                DiscreteEntry(
                    parse_number(e["alpha"], "alpha"),
                    parse_number(e["beta"], "beta"),
                    parse_number(e.get("c", 1), "c"),
                )
            )
        except (KeyError, TypeError):
            raise ConfigError(f"discrete entry needs alpha and beta: {e!r}") from None
    try:
        return DiscreteWeight(tuple(out))
    except CoefficientError as exc:
        raise ConfigError(str(exc)) from None


def quadrature_config(cfg):
    try:
        return QuadratureConfig(order=int(cfg.quadrature["order"]), tol=float(cfg.quadrature["tol"]))
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from None


def compute_coefficients(cfg, weight, b):
    if isinstance(weight, DiscreteWeight):
        return coefficients_discrete(weight), None
    if cfg.method == "quadrature":
        return coefficients_continuous(b, weight, quadrature_config(cfg)), None
    if cfg.method == "closed":
        if isinstance(weight, Uniform):
            return uniform_closed_form(b), None
        if isinstance(weight, LorentzSum):
            if Region(b).is_degenerate:
                return lorentz_limit(), None
            return lorentz_closed_form(b), None
        raise ConfigError("closed forms exist only for uniform and lorentz_sum")
    est = mc_estimate(b, weight, int(cfg.mc.get("n", 1_000_000)), int(cfg.mc["seed"]))
    return est, est


# --------------------------------------------------------------------------
# Formatting
# --------------------------------------------------------------------------


def fmt(value):
    return format(float(value), ".10g")


def _exact(value):
    return format_rational(value) if isinstance(value, Rational) else None


def render_coefficients(coeffs, fmt_name, mc=None):
    total = getattr(coeffs, "total_weight", None)
    fields = {"eta1": coeffs.eta1, "eta2": coeffs.eta2}
    if total is not None:
        fields["A"] = total
    if mc is not None:
        fields.update(stderr1=mc.stderr1, stderr2=mc.stderr2, n=mc.n, seed=mc.seed)
    exact = {k: _exact(v) for k, v in fields.items() if k in ("eta1", "eta2", "A")}
    exact = {k: v for k, v in exact.items() if v is not None}
    if fmt_name == "json":
        doc = {k: (v if isinstance(v, int) and k in ("n", "seed") else float(fmt(v)))
               for k, v in fields.items()}
        if exact:
            doc["exact"] = exact
        return json.dumps(doc, sort_keys=False) + "\n"
    if fmt_name == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(list(fields))
        writer.writerow([fmt(v) for v in fields.values()])
        return buf.getvalue()
    lines = [f"{k}={fmt(v)}" for k, v in fields.items()]
    lines += [f"{k}_exact={v}" for k, v in exact.items()]
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# Commands
# --------------------------------------------------------------------------


def run_coeffs(cfg):
    weight = build_weight(cfg.distribution)
    b = None if cfg.b is None else parse_number(cfg.b, "b")
    coeffs, mc = compute_coefficients(cfg, weight, b)
    return render_coefficients(coeffs, cfg.output["format"], mc)


def sweep_values(cfg):
    sw = cfg.sweep
    if "b_values" in sw:
        values = [parse_number(v, "b") for v in sw["b_values"]]
    elif {"b_min", "b_max", "steps"} <= set(sw):
        lo, hi = parse_number(sw["b_min"], "b_min"), parse_number(sw["b_max"], "b_max")
        steps = int(sw["steps"])
        if steps < 1:
            raise ConfigError("sweep steps must be >= 1")
        if steps == 1:
            values = [lo]
        else:
            values = [lo + (hi - lo) * Fraction(i, steps - 1) if isinstance(lo, Fraction)
                      and isinstance(hi, Fraction) else lo + (hi - lo) * i / (steps - 1)
                      for i in range(steps)]
    else:
        raise ConfigError("sweep needs b_values or b_min, b_max and steps")
    return sorted(values)


def run_sweep(cfg):
    weight = build_weight(cfg.distribution)
    if isinstance(weight, DiscreteWeight):
        raise ConfigError("sweeps over b need a continuous distribution")
    values = sweep_values(cfg)
    jobs = int(cfg.sweep.get("jobs", 1))
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(lambda b: compute_coefficients(cfg, weight, b)[0], values))
    else:
        results = [compute_coefficients(cfg, weight, b)[0] for b in values]
    if cfg.output["format"] == "json":
        rows = [{"b": float(fmt(b)), "eta1": float(fmt(r.eta1)), "eta2": float(fmt(r.eta2))}
                for b, r in zip(values, results)]
        return json.dumps(rows) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["b", "eta1", "eta2"])
    for b, r in zip(values, results):
        writer.writerow([fmt(b), fmt(r.eta1), fmt(r.eta2)])
    return buf.getvalue()


def run_expand(cfg):
    ex = cfg.expand
    fmt_name = cfg.output["format"]
    if "word" in ex:
        form = normal_order(parse_operator(ex["word"]))
        if fmt_name == "json":
            return json.dumps({"word": ex["word"], "form": str(form)}) + "\n"
        return f"{form}\n"
    if "alpha" not in ex or "beta" not in ex:
        raise ConfigError("expand needs alpha and beta (or word)")
    try:
        alpha, beta = parse_rational(str(ex["alpha"])), parse_rational(str(ex["beta"]))
    except ValueError as exc:
        raise ConfigError(f"alpha and beta must be exact rationals: {exc}") from None
    pair = vonroos_pair(alpha, beta)
    if fmt_name == "json":
        doc = {
            "alpha": format_rational(alpha),
            "beta": format_rational(beta),
            "gamma": format_rational(pair.gamma),
            "f": format_rational(pair.f),
            "g": format_rational(pair.g),
            "form": str(pair),
        }
        return json.dumps(doc) + "\n"
    return (
        f"{pair}\n"
        f"alpha={format_rational(alpha)}\nbeta={format_rational(beta)}\n"
        f"gamma={format_rational(pair.gamma)}\n"
        f"f={format_rational(pair.f)}\ng={format_rational(pair.g)}\n"
    )


def build_profile(spec):
    kind = spec.get("type", "constant")
    if kind not in PROFILES:
        raise ConfigError(f"unknown mass profile {kind!r}; known: {', '.join(PROFILES)}")
    factory, names = PROFILES[kind]
    params = spec.get("params", {})
    unknown = set(params) - set(names)
    if unknown:
        raise ConfigError(f"unknown {kind} profile parameters: {', '.join(sorted(unknown))}")
    return factory(**{k: float(parse_number(v, k)) for k, v in params.items()})


def run_solve(cfg):
    sv = cfg.solve
    weight = build_weight(cfg.distribution)
    b = None if cfg.b is None else parse_number(cfg.b, "b")
    coeffs, _ = compute_coefficients(cfg, weight, b)
    try:
        x_min, x_max = (float(parse_number(v, "domain")) for v in sv["domain"])
        n, k = int(sv["n"]), int(sv.get("k", 1))
    except (KeyError, TypeError, ValueError):
        raise ConfigError("solve needs domain [x_min, x_max], n and k") from None
    grid = Grid(x_min, x_max, n)
    profile = build_profile(sv.get("profile", {}))
    potential = None
    if sv.get("potential"):
        expr = parse_expression(sv["potential"], ("x",))
        potential = lambda x: expr(x=x)  # noqa: E731
    if not 1 <= k <= n:
        raise ConfigError(f"k must be between 1 and n={n}")
    spectrum = eigen(assemble(grid, profile, potential, coeffs), k)
    values = spectrum.eigenvalues
    fmt_name = cfg.output["format"]
    if fmt_name == "json":
        return json.dumps([float(fmt(v)) for v in values]) + "\n"
    if fmt_name == "csv":
        rows = ["index,eigenvalue"] + [f"{i},{fmt(v)}" for i, v in enumerate(values, 1)]
        return "\n".join(rows) + "\n"
    return "".join(f"{fmt(v)}\n" for v in values)


RUNNERS = {"coeffs": run_coeffs, "sweep": run_sweep, "expand": run_expand, "solve": run_solve}


def run(cfg):
    """Execute a resolved :class:`RunConfig`; returns the emitted document."""
    return RUNNERS[cfg.command](cfg)


# --------------------------------------------------------------------------
# Argument parsing
# --------------------------------------------------------------------------


def _entry(text):
    parts = [p.strip() for p in text.split(",")]
    if len(parts) not in (2, 3):
        raise argparse.ArgumentTypeError("entry must be alpha,beta[,c]")
    keys = ("alpha", "beta", "c")
    return dict(zip(keys, parts))


def _common(p):
    p.add_argument("--config", help="JSON config file; flags override its values")
    p.add_argument("--dump-config", action="store_true", help="print the resolved config and exit")
    p.add_argument("--format", dest="output.format", choices=FORMATS)
    p.add_argument("--output", dest="output.path", help="write to this file instead of stdout")


def _distribution(p, with_b=True):
    p.add_argument("--dist", dest="distribution.type", choices=DISTRIBUTIONS)
    p.add_argument("--rho", dest="distribution.rho", help="weight expression in alpha, beta")
    p.add_argument("--preset", dest="distribution.preset", choices=sorted(PRESETS))
    p.add_argument("--entry", dest="distribution.entries", action="append", type=_entry,
                   metavar="ALPHA,BETA[,C]", help="discrete ordering (repeatable)")
    if with_b:
        p.add_argument("--b", dest="b", help="region size, b >= -2/3 (rationals allowed)")
    p.add_argument("--order", dest="quadrature.order", type=int)
    p.add_argument("--tol", dest="quadrature.tol", type=float)
    p.add_argument("--method", dest="method", choices=("quadrature", "closed", "mc"))
    p.add_argument("--samples", dest="mc.n", type=int)
    p.add_argument("--seed", dest="mc.seed", type=int)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="vonroos", description="Superposed-ordering kinetic operators for PDM particles."
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("coeffs", help="effective coefficients (eta1, eta2, A)")
    _common(p)
    _distribution(p)

    p = sub.add_parser("sweep", help="coefficients over a range of b (CSV b,eta1,eta2)")
    _common(p)
    _distribution(p, with_b=False)
    p.add_argument("--b-min", dest="sweep.b_min")
    p.add_argument("--b-max", dest="sweep.b_max")
    p.add_argument("--steps", dest="sweep.steps", type=int)
    p.add_argument("--b-values", dest="sweep.b_values", type=lambda s: s.split(","),
                   help="comma-separated b values")
    p.add_argument("--jobs", dest="sweep.jobs", type=int)

    p = sub.add_parser("expand", help="normal-ordered von Roos pair or operator word")
    _common(p)
    p.add_argument("--alpha", dest="expand.alpha")
    p.add_argument("--beta", dest="expand.beta")
    p.add_argument("--word", dest="expand.word", help='operator word, e.g. "m^-1 p m^0 p m^0"')

    p = sub.add_parser("solve", help="lowest eigenvalues of T + V")
    _common(p)
    _distribution(p)
    p.add_argument("--profile", dest="solve.profile.type", choices=sorted(PROFILES))
    p.add_argument("--m0", dest="solve.profile.params.m0")
    p.add_argument("--kappa", dest="solve.profile.params.kappa")
    p.add_argument("--lam", dest="solve.profile.params.lam")
    p.add_argument("--potential", dest="solve.potential", help="V(x) expression in x")
    p.add_argument("--x-min", dest="solve.domain.0")
    p.add_argument("--x-max", dest="solve.domain.1")
    p.add_argument("--n", dest="solve.n", type=int)
    p.add_argument("--k", dest="solve.k", type=int)
    return parser


def _set_path(doc, path, value):
    keys = path.split(".")
    for key in keys[:-1]:
        doc = doc.setdefault(key, {})
    doc[keys[-1]] = value


def merge_flags(base, namespace):
    """Overlay explicitly given flags onto a config dict."""
    doc = copy.deepcopy(base)
    flags = {k: v for k, v in vars(namespace).items()
             if "." in k or k in ("b", "method")}
    for path, value in flags.items():
        if value is None:
            continue
        _set_path(doc, path, value)
    domain = doc.get("solve", {}).get("domain")
    if isinstance(domain, dict):
        existing = base.get("solve", {}).get("domain") or [None, None]
        doc["solve"]["domain"] = [domain.get("0", existing[0]), domain.get("1", existing[1])]
    return doc


def load_config(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from None


def _emit(text, path):
    if path:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _bind_negative_values(argv):
    """Turn ``--b -2/3`` into ``--b=-2/3``; argparse would read ``-2/3`` as a flag.

    Also covers comma lists such as ``--entry -1/3,-1/3``.
    """
    out = []
    for token in argv:
        if (
            out
            and out[-1].startswith("--")
            and "=" not in out[-1]
            and NEGATIVE_VALUE_RE.match(token)
        ):
            out[-1] = f"{out[-1]}={token}"
        else:
            out.append(token)
    return out


def main(argv=None):
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_bind_negative_values(argv))
    try:
        base = load_config(args.config) if args.config else {}
        if base.get("command", args.command) != args.command:
            raise ConfigError(f"config is for {base['command']!r}, not {args.command!r}")
        base["command"] = args.command
        cfg = RunConfig.from_dict(merge_flags(base, args))
        if args.dump_config:
            sys.stdout.write(json.dumps(cfg.to_dict(), indent=2) + "\n")
            return 0
        text = run(cfg)
        _emit(text, cfg.output.get("path"))
        return 0
    except (ConfigError, ParseError, DomainError) as exc:
        print(f"error: {_one_line(exc)}", file=sys.stderr)
        return 2
    except NUMERICAL_ERRORS as exc:
        print(f"error: {_one_line(exc)}", file=sys.stderr)
        return 3
    except (ValueError, TypeError, KeyError) as exc:
        print(f"error: {_one_line(exc)}", file=sys.stderr)
        return 2


def _one_line(exc):
    return " ".join(str(exc).split()) or type(exc).__name__


if __name__ == "__main__":
    sys.exit(main())
