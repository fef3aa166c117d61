"""Command-line front end.

Three subcommands: spectrum (bound energies as CSV), wavefunction (sample
one state along a coordinate grid by any route), validate (run the three
continuum routes against each other on a xi grid).  Output is deterministic
CSV, so identical invocations produce byte-identical files.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from .contour_eval import ContourConfig, Method, MethodRegimeMismatch, sample_wavefunction
from .potential_catalog import (
    BOUND_KINDS,
    RADIAL_KINDS,
    DomainError,
    InvalidQuantumNumbers,
    Kind,
    NotBoundProblem,
    ProblemSpec,
    RegimeMismatch,
    n_start,
)
from .validation import cross_method_report, spectrum_table

Cell = Union[int, float, str]


class ConfigError(ValueError):
    """Rejected before any evaluation starts; maps to exit code 2."""


class EvaluationFailure(RuntimeError):
    """A grid point could not be evaluated; maps to exit code 3."""


_METHOD_FLAGS = {
    "residue": Method.RESIDUE,
    "real": Method.REAL_INTEGRAL,
    "circle": Method.CIRCLE,
    "series": Method.SERIES,
    "morse": Method.MORSE_RAY,
}

_INT_PARAMS = {"n", "m", "l", "n_max"}
_FLOAT_PARAMS = {"E", "V0", "a", "a0", "omega", "mu", "tol"}
_PARAM_KEYS = _INT_PARAMS | _FLOAT_PARAMS


@dataclass(frozen=True)
class RunConfig:
    command: str
    kind: Kind
    params: Dict[str, float]
    method: Optional[Method] = None
    grid: Optional[Tuple[float, float, int]] = None
    radius: float = 1.1
    steps: int = 100_000
    out: Optional[str] = None

    def validate(self) -> None:
        if self.command in ("wavefunction", "validate"):
            if self.grid is None:
                raise ConfigError(f"{self.command} needs --grid min,max,count")
            lo, hi, count = self.grid
            if count < 2:
                raise ConfigError("grid count must be at least 2")
            if not lo < hi:
                raise ConfigError("grid min must be below grid max")
        if self.method is Method.CIRCLE and not self.radius > 1.0:
            raise ConfigError("circle method needs radius > 1")

    def problem(self) -> ProblemSpec:
        p = self.params
        try:
            return ProblemSpec(
                kind=self.kind,
                mu=float(p.get("mu", 1.0)),
                omega=float(p.get("omega", 1.0)),
                a0=float(p.get("a0", 1.0)),
                morse_a=float(p.get("a", 1.0)),
                morse_v0=float(p.get("V0", 1.0)),
                m_quantum=int(p.get("m", 0)),
                l_quantum=int(p.get("l", 0)),
            )
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc

    def contour(self) -> ContourConfig:
        try:
            return ContourConfig(radius_R=self.radius, steps=self.steps)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc


# ---------------------------------------------------------------------------
# CSV rendering and reading


def _format_cell(v: Cell) -> str:
    if isinstance(v, str):
        return v
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return "%.12e" % float(v)


def render_csv(
    header: Sequence[str],
    rows: Sequence[Sequence[Cell]],
    footers: Sequence[str] = (),
) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_format_cell(v) for v in row))
    for note in footers:
        lines.append("# " + note)
    return "\n".join(lines) + "\n"


def _parse_cell(text: str) -> Cell:
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        return text


def read_csv(text: str) -> Tuple[List[str], List[List[Cell]], List[str]]:
    """Parse a CSV document produced by this module.

    Returns (header fields, data rows with numeric cells parsed, footer
    comment lines without their '# ' prefix).  render_csv(read_csv(s)) is
    byte-identical to s for any s this module wrote.
    """
    lines = text.splitlines()
    if not lines:
        raise ConfigError("empty CSV document")
    header = lines[0].split(",")
    rows: List[List[Cell]] = []
    footers: List[str] = []
    for line in lines[1:]:
        if not line:
            continue
        if line.startswith("#"):
            footers.append(line[1:].lstrip())
        else:
            rows.append([_parse_cell(c) for c in line.split(",")])
    return header, rows, footers


def _emit(text: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", newline="") as fh:
            fh.write(text)


# ---------------------------------------------------------------------------
# Subcommands


def cmd_spectrum(cfg: RunConfig) -> str:
    spec = cfg.problem()
    n_max = int(cfg.params.get("n_max", 5))
    rows = [
        (qn.n, qn.N, energy)
        for qn, energy in spectrum_table(spec, n_max)
    ]
    return render_csv(["n", "N", "E"], rows)


def _default_method(kind: Kind) -> Method:
    if kind in BOUND_KINDS:
        return Method.RESIDUE
    if kind is Kind.MORSE_CONT:
        return Method.MORSE_RAY
    return Method.REAL_INTEGRAL


def cmd_wavefunction(cfg: RunConfig) -> str:
    spec = cfg.problem()
    method = cfg.method or _default_method(cfg.kind)
    lo, hi, count = cfg.grid
    if cfg.kind in RADIAL_KINDS and lo < 0.0:
        raise ConfigError("radial kinds need a nonnegative coordinate grid")
    if cfg.kind in BOUND_KINDS:
        state: Union[int, float] = int(cfg.params.get("n", n_start(spec)))
    else:
        if "E" not in cfg.params:
            raise ConfigError("continuum kinds need --param E=<energy>")
        state = float(cfg.params["E"])

    coords = np.linspace(lo, hi, count)
    contour = cfg.contour()
    rows: List[Tuple[Cell, ...]] = []
    for i, x in enumerate(coords):
        try:
            grid = sample_wavefunction(spec, state, np.array([x]), method, contour)
            coord, xi, phi, psi = grid.entries[0]
        except ConfigError:
            raise
        except (RegimeMismatch, NotBoundProblem, InvalidQuantumNumbers, DomainError) as exc:
            raise ConfigError(str(exc)) from exc
        except Exception as exc:
            raise EvaluationFailure(
                f"evaluation failed at point {i} (coordinate={x:.6g}): {exc}"
            ) from exc
        rows.append(
            (coord, xi, phi.real, phi.imag, psi.real, psi.imag, method.value)
        )
    return render_csv(
        ["coordinate", "xi", "re_phi", "im_phi", "re_psi", "im_psi", "method"], rows
    )


def cmd_validate(cfg: RunConfig) -> str:
    spec = cfg.problem()
    if "E" not in cfg.params:
        raise ConfigError("validate needs --param E=<energy>")
    energy = float(cfg.params["E"])
    lo, hi, count = cfg.grid
    grid = np.linspace(lo, hi, count)
    report = cross_method_report(spec, energy, grid, cfg.contour())

    methods = (Method.REAL_INTEGRAL, Method.CIRCLE, Method.SERIES)
    ref = report.values[Method.REAL_INTEGRAL]
    for m in methods:
        if not np.any(np.isfinite(report.values[m])):
            raise EvaluationFailure(f"method {m.value} failed at every grid point")

    header = ["xi"]
    for m in methods:
        header += [f"re_{m.value}", f"im_{m.value}"]
    pairs = [(a, b) for i, a in enumerate(methods) for b in methods[i + 1 :]]
    header += [f"dev_{a.value}_{b.value}" for a, b in pairs]

    rows = []
    for i, xi in enumerate(report.grid):
        row: List[Cell] = [xi]
        for m in methods:
            v = report.values[m][i]
            row += [v.real, v.imag]
        for a, b in pairs:
            va, vb, r = report.values[a][i], report.values[b][i], ref[i]
            if (
                np.isfinite(va)
                and np.isfinite(vb)
                and np.isfinite(r)
                and abs(r) > 1e-12
            ):
                row.append(abs(va - vb) / abs(r))
            else:
                row.append(float("nan"))
        rows.append(row)

    footers = [f"pairwise_max_rel_dev = {report.pairwise_max_rel_dev:.6e}"]
    for m in methods:
        onset = report.failure_onset_xi.get(m)
        footers.append(
            f"failure_onset_{m.value} = "
            + ("none" if onset is None else "%.6g" % onset)
        )
    return render_csv(header, rows, footers)


# ---------------------------------------------------------------------------
# Argument and config-file handling


def _parse_grid(text: str) -> Tuple[float, float, int]:
    parts = text.split(",")
    if len(parts) != 3:
        raise ConfigError("grid must be min,max,count")
    try:
        return float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise ConfigError(f"bad grid {text!r}: {exc}") from exc


def _parse_param(key: str, value: str) -> Tuple[str, float]:
    if key not in _PARAM_KEYS:
        raise ConfigError(
            f"unknown parameter {key!r}; known: {', '.join(sorted(_PARAM_KEYS))}"
        )
    try:
        return key, (int(value) if key in _INT_PARAMS else float(value))
    except ValueError as exc:
        raise ConfigError(f"bad value for {key}: {value!r}") from exc


def _read_config_file(path: str) -> Dict[str, str]:
    out: Dict[str, str] = {}
    try:
        with open(path) as fh:
            for lineno, raw in enumerate(fh, 1):
                line = raw.strip()
                if not line or line.startswith("#"):
                    continue
                if "=" not in line:
                    raise ConfigError(f"{path}:{lineno}: expected key=value")
                key, _, value = line.partition("=")
                out[key.strip()] = value.strip()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    return out


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="laplaceqm",
        description="Schrodinger solver built on contour integrals in the Laplace plane",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, doc in (
        ("spectrum", "bound-state energies as CSV"),
        ("wavefunction", "sample one state along a coordinate grid"),
        ("validate", "compare the continuum routes on a xi grid"),
    ):
        p = sub.add_parser(name, help=doc)
        p.add_argument("--kind", help="problem kind, e.g. coulomb3d or morse_cont")
        p.add_argument(
            "--param",
            action="append",
            default=[],
            metavar="k=v",
            help="problem or run parameter; repeatable "
            "(E, n, m, l, n_max, V0, a, a0, omega, mu, tol)",
        )
        p.add_argument("--grid", help="min,max,count (coordinate space for "
                       "wavefunction, xi space for validate)")
        p.add_argument("--method", choices=sorted(_METHOD_FLAGS))
        p.add_argument("--radius", type=float, help="circle contour radius (> 1)")
        p.add_argument("--steps", type=int, help="circle quadrature steps")
        p.add_argument("--out", help="output path (default: stdout)")
        p.add_argument("--config", help="key=value file; flags override it")
    return parser


def _build_config(ns: argparse.Namespace) -> RunConfig:
    file_values = _read_config_file(ns.config) if ns.config else {}

    def pick(flag: str, key: str) -> Optional[str]:
        v = getattr(ns, flag)
        if v is not None:
            return str(v)
        return file_values.get(key)

    kind_name = pick("kind", "kind")
    if kind_name is None:
        raise ConfigError("--kind is required (or kind= in the config file)")
    try:
        kind = Kind(kind_name)
    except ValueError:
        raise ConfigError(
            f"unknown kind {kind_name!r}; known: "
            + ", ".join(k.value for k in Kind)
        ) from None

    params: Dict[str, float] = {}
    for key, value in file_values.items():
        if key in _PARAM_KEYS:
            k, v = _parse_param(key, value)
            params[k] = v
    for item in ns.param:
        if "=" not in item:
            raise ConfigError(f"--param needs k=v, got {item!r}")
        key, _, value = item.partition("=")
        k, v = _parse_param(key.strip(), value.strip())
        params[k] = v

    method_name = pick("method", "method")
    if method_name is not None and method_name not in _METHOD_FLAGS:
        raise ConfigError(
            f"unknown method {method_name!r}; known: "
            + ", ".join(sorted(_METHOD_FLAGS))
        )

    grid_text = pick("grid", "grid")
    radius_text = pick("radius", "radius")
    steps_text = pick("steps", "steps")
    try:
        radius = float(radius_text) if radius_text is not None else 1.1
        steps = int(steps_text) if steps_text is not None else 100_000
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc

    cfg = RunConfig(
        command=ns.command,
        kind=kind,
        params=params,
        method=_METHOD_FLAGS[method_name] if method_name else None,
        grid=_parse_grid(grid_text) if grid_text is not None else None,
        radius=radius,
        steps=steps,
        out=pick("out", "out"),
    )
    cfg.validate()
    return cfg


_COMMANDS = {
    "spectrum": cmd_spectrum,
    "wavefunction": cmd_wavefunction,
    "validate": cmd_validate,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = _build_config(ns)
        text = _COMMANDS[cfg.command](cfg)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (RegimeMismatch, NotBoundProblem, InvalidQuantumNumbers, DomainError,
            MethodRegimeMismatch) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except EvaluationFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    _emit(text, cfg.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
