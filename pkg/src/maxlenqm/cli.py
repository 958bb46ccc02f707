"""``maxlenqm`` command-line interface.

Subcommands write CSV or JSON to ``--out`` (stdout when omitted).  Settings
come from flags, then a JSON ``--config`` file, then built-in defaults.

Exit codes: 0 ok, 1 check failure, 2 configuration error, 3 domain or
divergence error, 4 I/O error.
"""

import argparse
from dataclasses import asdict, dataclass, field, fields
import json
import math
import sys

import numpy as np

from . import checks, families, states, transforms, uncertainty
from .algebra import SQRT3, DeformationParams, ThetaChart
from .errors import ConfigError, DivergentMomentError, DomainError, MaxLenQMError, UnknownStateError
from .quadrature import build_grid, normalize

EXIT_OK, EXIT_CHECK, EXIT_CONFIG, EXIT_DOMAIN, EXIT_IO = 0, 1, 2, 3, 4


@dataclass(frozen=True)
class RunConfig:
    tau: float = 0.1
    hbar: float = 1.0
    mass: float = 1.0
    panels: int = 256
    order: int = 16
    eta_max_mult: float = 80.0
    eta_step_div: float = 4.0
    tol: dict = field(default_factory=dict)
    output_path: str = ""
    format: str = "csv"

    def __post_init__(self):
        for name in ("tau", "hbar", "mass", "eta_max_mult", "eta_step_div"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and math.isfinite(v) and v > 0):
                raise ConfigError(f"{name} must be a positive finite number, got {v!r}")
        for name in ("panels", "order"):
            v = getattr(self, name)
            if isinstance(v, bool) or not isinstance(v, int) or v < 1:
                raise ConfigError(f"{name} must be a positive integer, got {v!r}")
        if self.format not in ("csv", "json"):
            raise ConfigError(f"format must be 'csv' or 'json', got {self.format!r}")
        for name, v in self.tol.items():
            if name not in checks.DEFAULT_TOLERANCES:
                raise ConfigError(f"unknown tolerance {name!r}")
            if not (isinstance(v, (int, float)) and v > 0):
                raise ConfigError(f"tolerance {name} must be positive, got {v!r}")

    @property
    def params(self):
        return DeformationParams(self.tau, self.hbar, self.mass)

    @property
    def eta_grid(self):
        return transforms.EtaGrid.default(self.params, self.eta_max_mult, self.eta_step_div)

    def grid(self):
        return build_grid(ThetaChart(self.params), self.panels, self.order)

    def to_json(self):
        return json.dumps(asdict(self), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_mapping(cls, data):
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown config field(s): {', '.join(sorted(unknown))}")
        data = dict(data)
        for name in ("tau", "hbar", "mass", "eta_max_mult", "eta_step_div"):
            if isinstance(data.get(name), int) and not isinstance(data.get(name), bool):
                data[name] = float(data[name])
        return cls(**data)


FLAG_FIELDS = ("tau", "hbar", "mass", "panels", "order", "eta_max_mult", "eta_step_div", "format")


def _parse_tol(items):
    out = {}
    for item in items or ():
        name, sep, value = item.partition("=")
        if not sep:
            raise ConfigError(f"--tol expects name=value, got {item!r}")
        try:
            out[name.strip()] = float(value)
        except ValueError:
            raise ConfigError(f"--tol value for {name!r} is not a number: {value!r}") from None
    return out


def resolve_config(args):
    data = {}
    if args.config:
        try:
            with open(args.config, encoding="utf-8") as fh:
                data = json.load(fh)
        except ValueError as exc:
            raise ConfigError(f"config file {args.config} is not valid JSON: {exc}") from None
        if not isinstance(data, dict):
            raise ConfigError("config file must contain a JSON object")
    for name in FLAG_FIELDS:
        v = getattr(args, name)
        if v is not None:
            data[name] = v
    if args.out is not None:
        data["output_path"] = args.out
    tol = dict(data.get("tol", {}))
    tol.update(_parse_tol(args.tol))
    data["tol"] = tol
    return RunConfig.from_mapping(data)


def _fmt(v):
    return "%.17g" % v


def csv_text(header, rows):
    lines = [",".join(header)]
    lines += [",".join(_fmt(v) if isinstance(v, (float, np.floating)) else str(v) for v in row) for row in rows]
    return "\n".join(lines) + "\n"


def table_text(header, rows, fmt):
    if fmt == "csv":
        return csv_text(header, rows)
    records = [{h: (float(v) if isinstance(v, (float, np.floating)) else v) for h, v in zip(header, row)}
               for row in rows]
    return json.dumps(records, indent=2) + "\n"


def emit(text, config):
    if config.output_path:
        with open(config.output_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_overlap(config, delta_max=None, samples=281):
    """Rows of (delta, literal closed form, quadrature real part, quadrature imaginary part)."""
    if samples < 2:
        raise ConfigError("samples must be at least 2")
    params = config.params
    unit = params.tau * params.hbar * SQRT3 / 2.0
    delta_max = 7.0 * unit if delta_max is None else delta_max
    if not delta_max > 0:
        raise ConfigError("delta_max must be positive")
    grid = config.grid()
    deltas = np.linspace(-delta_max, delta_max, samples)
    amp2 = states.eigenstate_amplitude(params) ** 2
    quad = amp2 * grid.hbar * (np.exp(1j * np.outer(deltas, grid.nodes)) @ grid.weights)
    closed = states.overlap_closed_form(deltas, 0.0, params)
    rows = [(float(d), float(c), float(q.real), float(q.imag)) for d, c, q in zip(deltas, closed, quad)]
    return table_text(("delta", "overlap_closed", "overlap_quadrature", "overlap_quadrature_imag"), rows,
                      config.format)


def cmd_spectrum(config, n_max=10):
    if n_max < 1:
        raise ConfigError("n_max must be at least 1")
    params = config.params
    rows = []
    for n in range(n_max + 1):
        eta = float(states.lattice_eta(n, params))
        rows.append((n, eta, eta**2 / (2.0 * params.mass)))
    return table_text(("n", "eta_n", "energy"), rows, config.format)


def uncertainty_payload(config, state_spec):
    params = config.params
    grid = config.grid()
    psi = normalize(families.parse_state_spec(state_spec, params), grid)
    report = uncertainty.moments(psi, params, grid).to_dict()
    dx_max, dp_min = uncertainty.extremal_uncertainties(params)
    return {"state": state_spec, "report": report,
            "extremal": {"delta_x_max": float(dx_max), "delta_p_min": float(dp_min)}}


def cmd_uncertainty(config, state_spec):
    """Always JSON: the report is a nested record, not a table."""
    return json.dumps(uncertainty_payload(config, state_spec), indent=2, sort_keys=True) + "\n"


def cmd_roundtrip(config, state_spec):
    """Round-trip error and Parseval factor on the ladder eta_max_mult/8, /4, /2, /1."""
    params = config.params
    grid = config.grid()
    psi = normalize(families.parse_state_spec(state_spec, params), grid)
    rows = []
    for div in (8, 4, 2, 1):
        eg = transforms.EtaGrid.default(params, config.eta_max_mult / div, config.eta_step_div)
        rows.append((eg.eta_max, transforms.roundtrip_error(psi, eg, params, grid),
                     transforms.parseval_factor(psi, eg, params, grid)))
    return table_text(("eta_max", "roundtrip_error", "parseval_factor"), rows, config.format)


def cmd_checks(config):
    results = checks.run_checks(config.params, config.panels, config.order, config.eta_grid, config.tol)
    ok = all(r.passed or r.informational for r in results)
    return results, ok


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("run configuration")
    g.add_argument("--tau", type=float)
    g.add_argument("--hbar", type=float)
    g.add_argument("--mass", type=float)
    g.add_argument("--panels", type=int)
    g.add_argument("--order", type=int)
    g.add_argument("--eta-max-mult", dest="eta_max_mult", type=float)
    g.add_argument("--eta-step-div", dest="eta_step_div", type=float)
    g.add_argument("--out", help="output file (default: stdout)")
    g.add_argument("--format", choices=("csv", "json"))
    g.add_argument("--config", help="JSON file with RunConfig fields")
    g.add_argument("--tol", action="append", metavar="NAME=VALUE", help="override a check tolerance")
    g.add_argument("--save-config", metavar="PATH", help="write the resolved config as JSON")

    parser = argparse.ArgumentParser(prog="maxlenqm", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("overlap", parents=[common], help="overlap of momentum eigenstates versus eta - eta'")
    p.add_argument("--delta-max", type=float, help="default: 7 lattice spacings")
    p.add_argument("--samples", type=int, default=281)
    p = sub.add_parser("spectrum", parents=[common], help="lattice eigenvalues and kinetic energies")
    p.add_argument("--n-max", type=int, default=10)
    for name, text in (("uncertainty", "moments and uncertainty relation for a test state"),
                       ("roundtrip", "quasi-momentum transform convergence for a test state")):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("state", nargs="?", default="hermite:k=0,sigma=0.5",
                       help=f"family:key=value,... with family in {sorted(families.FAMILIES)}")
    sub.add_parser("checks", parents=[common], help="run the invariant suite")
    return parser


def _error_json(exc, config):
    body = {"error": {"type": type(exc).__name__, "message": str(exc)}}
    if isinstance(exc, DivergentMomentError):
        body["error"]["moment"] = exc.moment
        if exc.values is not None:
            body["error"]["values"] = [[float(np.real(v)), float(np.imag(v))] for v in exc.values]
    return json.dumps(body, indent=2, sort_keys=True) + "\n"


def run(argv=None):
    args = build_parser().parse_args(argv)
    config = None
    try:
        config = resolve_config(args)
        if args.save_config:
            with open(args.save_config, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(config.to_json())
        if args.command == "overlap":
            emit(cmd_overlap(config, args.delta_max, args.samples), config)
        elif args.command == "spectrum":
            emit(cmd_spectrum(config, args.n_max), config)
        elif args.command == "uncertainty":
            emit(cmd_uncertainty(config, args.state), config)
        elif args.command == "roundtrip":
            emit(cmd_roundtrip(config, args.state), config)
        else:
            results, ok = cmd_checks(config)
            print(checks.format_table(results))
            if config.output_path:
                rows = [(r.name, float(r.error), float(r.tol), r.status) for r in results]
                emit(table_text(("check", "error", "tol", "status"), rows, config.format), config)
            return EXIT_OK if ok else EXIT_CHECK
    except (ConfigError, UnknownStateError) as exc:
        print(f"maxlenqm: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (DomainError, MaxLenQMError) as exc:
        text = _error_json(exc, config)
        if config is not None and config.output_path and args.command == "uncertainty":
            try:
                emit(text, config)
            except OSError:
                pass
        else:
            sys.stdout.write(text)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"maxlenqm: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
