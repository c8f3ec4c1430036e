"""Command-line front end: tables and plot-ready data files.

Subcommands: spectrum, wavefunction, solve, compare, lorentz, convergence.
Settings merge in fixed precedence order

    built-in defaults < [common] config section < [<command>] section < flags,

with strict parsing: an unknown config key or section is an error, never
silently ignored.  Output goes to stdout or --out as CSV (12 significant
digits) or JSON (17 significant digits, {"meta": ..., "rows": ...}); the
files carry no timestamps, so identical configurations produce
byte-identical bytes.  Independent per-state solves run in a thread pool
sized by KGBOUND_THREADS (0 or unset picks the CPU count); row order is
fixed by sorting, not completion order.

Exit codes: 0 success, 2 configuration error, 3 physics-domain error
(supercritical coupling, invalid state, unbound, unsupported mode/channel
combination, superluminal boost), 4 numerical failure (no convergence,
quadrature or tail trouble).  The `solve` command instead reports per-state
failures in a `status` column and exits 0 once the table is written.
"""

from __future__ import annotations

import argparse
import configparser
import io
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, fields

import numpy as np

from . import __version__
from .core import ALPHA_FS, PhysicalParams, PotentialSpec, RadialGrid
from .coulomb import energy_expansion, energy_level, sigma_closed
from .errors import (
    ConfigError,
    DegenerateRecurrence,
    InvalidQuantumNumbers,
    NoConvergence,
    NotBound,
    PoleError,
    QuadratureFailure,
    StateNotFound,
    SupercriticalCoupling,
    SuperluminalBoost,
    TailNotConverged,
    UnsupportedCombination,
)
from .lorentz import BoostSpec, CharacterState, boost_backward, boost_forward, invariant_mass_sq
from .solver import (
    SolveMode,
    SolveRequest,
    convergence_study,
    default_solver_grid,
    richardson_extrapolate,
    solve_self_consistent,
)
from .wavefunction import build_radial, count_radial_nodes

__all__ = ["RunConfig", "build_config", "main"]

_PHYSICS_ERRORS = (
    SupercriticalCoupling,
    NotBound,
    InvalidQuantumNumbers,
    StateNotFound,
    UnsupportedCombination,
    SuperluminalBoost,
)
_NUMERICAL_ERRORS = (
    NoConvergence,
    QuadratureFailure,
    TailNotConverged,
    PoleError,
    DegenerateRecurrence,
)

_COMMANDS = ("spectrum", "wavefunction", "solve", "compare", "lorentz", "convergence")


@dataclass
class RunConfig:
    """Fully merged settings for one CLI run."""

    command: str
    # physical parameters
    z: float = 1.0
    alpha: float = ALPHA_FS
    rest_mass: float = 1.0
    c: float = 1.0
    hbar: float = 1.0
    # state selection
    n: int = 1
    l: int = 0
    n_max: int = 4
    states: tuple[tuple[int, int], ...] | None = None
    # solver
    mode: str = "kg-vector"
    potential: str = "coulomb"
    lam: float = 0.2
    grid_n: int = 8000
    rmax: float | None = None
    tol: float = 1e-12
    sizes: tuple[int, ...] = (2000, 4000, 8000)
    # wavefunction tabulation
    samples: int = 2000
    # lorentz inputs
    e: float = 1.0
    px: float = 0.0
    py: float = 0.0
    pz: float = 0.0
    u: float = 0.0
    u_prime: float = 0.0
    beta: float = 0.5
    # output
    out: str | None = None
    format: str = "csv"

    def physical_params(self) -> PhysicalParams:
        return PhysicalParams(
            z_number=self.z,
            alpha=self.alpha,
            rest_mass=self.rest_mass,
            c=self.c,
            hbar=self.hbar,
        )


def _parse_states(text: str) -> tuple[tuple[int, int], ...]:
    out = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        parts = chunk.split(",")
        if len(parts) != 2:
            raise ConfigError(f"state {chunk!r} is not of the form n,l")
        try:
            out.append((int(parts[0]), int(parts[1])))
        except ValueError as exc:
            raise ConfigError(f"state {chunk!r} is not an integer pair") from exc
    if not out:
        raise ConfigError("states list is empty")
    return tuple(out)


def _parse_sizes(text: str) -> tuple[int, ...]:
    try:
        sizes = tuple(int(s) for s in text.split(",") if s.strip())
    except ValueError as exc:
        raise ConfigError(f"sizes {text!r} must be comma-separated integers") from exc
    if len(sizes) < 3:
        raise ConfigError("need at least 3 grid sizes")
    return sizes


# key name -> (attribute, parser); shared by config files and flag merging
_KEY_PARSERS = {
    "z": ("z", float),
    "alpha": ("alpha", float),
    "rest_mass": ("rest_mass", float),
    "c": ("c", float),
    "hbar": ("hbar", float),
    "n": ("n", int),
    "l": ("l", int),
    "n_max": ("n_max", int),
    "states": ("states", _parse_states),
    "mode": ("mode", str),
    "potential": ("potential", str),
    "lambda": ("lam", float),
    "grid_n": ("grid_n", int),
    "rmax": ("rmax", float),
    "tol": ("tol", float),
    "sizes": ("sizes", _parse_sizes),
    "samples": ("samples", int),
    "e": ("e", float),
    "px": ("px", float),
    "py": ("py", float),
    "pz": ("pz", float),
    "u": ("u", float),
    "u_prime": ("u_prime", float),
    "beta": ("beta", float),
    "out": ("out", str),
    "format": ("format", str),
}

_COMMON_KEYS = frozenset({"z", "alpha", "rest_mass", "c", "hbar", "out", "format"})
_SECTION_KEYS = {
    "common": _COMMON_KEYS,
    "spectrum": _COMMON_KEYS | {"n_max", "states"},
    "wavefunction": _COMMON_KEYS | {"n", "l", "samples", "rmax", "grid_n"},
    "solve": _COMMON_KEYS
    | {"n", "l", "states", "mode", "potential", "lambda", "grid_n", "rmax", "tol"},
    "compare": _COMMON_KEYS | {"n_max", "states", "grid_n", "tol"},
    "lorentz": _COMMON_KEYS | {"e", "px", "py", "pz", "u", "u_prime", "beta"},
    "convergence": _COMMON_KEYS
    | {"n", "l", "mode", "potential", "lambda", "sizes", "rmax", "tol"},
}


def _apply_key(cfg: RunConfig, key: str, raw: str, where: str) -> None:
    attr, parse = _KEY_PARSERS[key]
    try:
        value = parse(raw)
    except ConfigError:
        raise
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{where}: bad value {raw!r} for key {key!r}") from exc
    setattr(cfg, attr, value)


def _load_config_file(cfg: RunConfig, path: str) -> None:
    parser = configparser.ConfigParser(interpolation=None)
    try:
        with open(path, "r", encoding="utf-8") as fh:
            parser.read_file(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    except configparser.Error as exc:
        raise ConfigError(f"config file {path} is malformed: {exc}") from exc

    for section in parser.sections():
        if section not in _SECTION_KEYS:
            raise ConfigError(
                f"{path}: unknown section [{section}]; known: {', '.join(sorted(_SECTION_KEYS))}"
            )
    # [common] first, then the section for the active command; sections for
    # other commands are validated but not applied.
    for section in ("common", cfg.command):
        if not parser.has_section(section):
            continue
        allowed = _SECTION_KEYS[section]
        for key, raw in parser.items(section):
            if key not in allowed:
                raise ConfigError(f"{path}: unknown key {key!r} in section [{section}]")
            _apply_key(cfg, key, raw, f"{path} [{section}]")
    for section in parser.sections():
        if section in ("common", cfg.command):
            continue
        allowed = _SECTION_KEYS[section]
        for key, _raw in parser.items(section):
            if key not in allowed:
                raise ConfigError(f"{path}: unknown key {key!r} in section [{section}]")


def _build_arg_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="kgbound",
        description="Relativistic bound-state spectra, wavefunctions, and kinematics.",
    )
    top.add_argument("--version", action="version", version=f"kgbound {__version__}")
    sub = top.add_subparsers(dest="command", required=True, metavar="command")

    def common(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("--config", help="config file (sections [common] and [<command>])")
        sp.add_argument("--z", type=float, help="charge number Z")
        sp.add_argument("--alpha", type=float, help="coupling constant alpha")
        sp.add_argument("--rest-mass", dest="rest_mass", type=float, help="rest mass m0")
        sp.add_argument("--out", help="output file path (default: stdout)")
        sp.add_argument("--format", choices=("csv", "json"), help="output format")

    sp = sub.add_parser("spectrum", help="closed-form level table")
    common(sp)
    sp.add_argument("--n-max", dest="n_max", type=int, help="largest principal quantum number")
    sp.add_argument("--states", type=str, help='explicit states "n,l; n,l; ..."')

    sp = sub.add_parser("wavefunction", help="tabulate one radial wavefunction")
    common(sp)
    sp.add_argument("--n", type=int, help="principal quantum number")
    sp.add_argument("--l", type=int, help="orbital quantum number")
    sp.add_argument("--samples", type=int, help="number of radial samples")
    sp.add_argument("--rmax", type=float, help="tabulation extent")

    sp = sub.add_parser("solve", help="numerical eigensolve, one row per state")
    common(sp)
    sp.add_argument("--n", type=int, help="principal quantum number")
    sp.add_argument("--l", type=int, help="orbital quantum number")
    sp.add_argument("--states", type=str, help='explicit states "n,l; n,l; ..."')
    sp.add_argument("--mode", type=str, help="schrodinger | kg-vector | kg-scalar-vector | kg-equal")
    sp.add_argument(
        "--potential", type=str, help="coulomb | hulthen | equal-coulomb | equal-hulthen | free"
    )
    sp.add_argument("--lambda", dest="lam", type=float, help="screening parameter (units 1/a0)")
    sp.add_argument("--grid-n", dest="grid_n", type=int, help="grid points")
    sp.add_argument("--rmax", type=float, help="grid extent override")
    sp.add_argument("--tol", type=float, help="self-consistency tolerance")

    sp = sub.add_parser("compare", help="closed form vs numeric vs Schrodinger")
    common(sp)
    sp.add_argument("--n-max", dest="n_max", type=int, help="largest principal quantum number")
    sp.add_argument("--states", type=str, help='explicit states "n,l; n,l; ..."')
    sp.add_argument("--grid-n", dest="grid_n", type=int, help="fine grid points")
    sp.add_argument("--tol", type=float, help="self-consistency tolerance")

    sp = sub.add_parser("lorentz", help="boost a character state")
    common(sp)
    sp.add_argument("--e", type=float, help="total energy E")
    sp.add_argument("--px", type=float, help="momentum x component")
    sp.add_argument("--py", type=float, help="momentum y component")
    sp.add_argument("--pz", type=float, help="momentum z component")
    sp.add_argument("--u", type=float, help="potential value U in the source frame")
    sp.add_argument("--u-prime", dest="u_prime", type=float, help="potential value in the target frame")
    sp.add_argument("--beta", type=float, help="boost speed v/c")

    sp = sub.add_parser("convergence", help="grid-refinement study for one state")
    common(sp)
    sp.add_argument("--n", type=int, help="principal quantum number")
    sp.add_argument("--l", type=int, help="orbital quantum number")
    sp.add_argument("--mode", type=str, help="solver mode")
    sp.add_argument("--potential", type=str, help="potential name")
    sp.add_argument("--lambda", dest="lam", type=float, help="screening parameter (units 1/a0)")
    sp.add_argument("--sizes", type=str, help='grid sizes "2000,4000,8000"')
    sp.add_argument("--rmax", type=float, help="grid extent override")
    sp.add_argument("--tol", type=float, help="self-consistency tolerance")

    return top


def build_config(argv: list[str] | None = None) -> RunConfig:
    """Parse flags and config file into a merged RunConfig."""
    args = _build_arg_parser().parse_args(argv)
    cfg = RunConfig(command=args.command)
    if getattr(args, "config", None):
        _load_config_file(cfg, args.config)
    flag_names = {f.name for f in fields(RunConfig)} - {"command"}
    for name in flag_names:
        value = getattr(args, name, None)
        if value is None:
            continue
        if name == "states" and isinstance(value, str):
            value = _parse_states(value)
        if name == "sizes" and isinstance(value, str):
            value = _parse_sizes(value)
        setattr(cfg, name, value)
    _validate_config(cfg)
    return cfg


def _validate_config(cfg: RunConfig) -> None:
    if cfg.format not in ("csv", "json"):
        raise ConfigError(f"format must be csv or json, not {cfg.format!r}")
    if cfg.command in ("solve", "convergence"):
        try:
            SolveMode(cfg.mode)
        except ValueError as exc:
            raise ConfigError(
                f"unknown mode {cfg.mode!r}; choose from "
                + ", ".join(m.value for m in SolveMode)
            ) from exc
        if cfg.potential not in ("coulomb", "hulthen", "equal-coulomb", "equal-hulthen", "free"):
            raise ConfigError(f"unknown potential {cfg.potential!r}")
    if cfg.grid_n < 16:
        raise ConfigError("grid_n must be at least 16")
    if cfg.samples < 2:
        raise ConfigError("samples must be at least 2")


def _build_potential(cfg: RunConfig) -> PotentialSpec:
    name = cfg.potential
    if name == "coulomb":
        return PotentialSpec.coulomb()
    if name == "hulthen":
        return PotentialSpec.hulthen(cfg.lam)
    if name == "equal-coulomb":
        return PotentialSpec.equal_coulomb()
    if name == "equal-hulthen":
        return PotentialSpec.equal_hulthen(cfg.lam)
    if name == "free":
        return PotentialSpec()
    raise ConfigError(f"unknown potential {name!r}")


def _thread_count() -> int:
    raw = os.environ.get("KGBOUND_THREADS", "0")
    try:
        value = int(raw)
    except ValueError as exc:
        raise ConfigError(f"KGBOUND_THREADS must be an integer, not {raw!r}") from exc
    if value < 0:
        raise ConfigError("KGBOUND_THREADS must be >= 0")
    return value if value > 0 else (os.cpu_count() or 1)


def _map_states(func, states):
    """func over states, threaded when it helps; order follows the input."""
    if len(states) <= 1 or _thread_count() == 1:
        return [func(s) for s in states]
    with ThreadPoolExecutor(max_workers=min(_thread_count(), len(states))) as pool:
        return list(pool.map(func, states))


def _all_states(n_max: int) -> tuple[tuple[int, int], ...]:
    return tuple((n, l) for n in range(1, n_max + 1) for l in range(n))


def _requested_states(cfg: RunConfig) -> tuple[tuple[int, int], ...]:
    if cfg.states is not None:
        return tuple(sorted(cfg.states))
    return _all_states(cfg.n_max)


def _common_meta(cfg: RunConfig) -> dict:
    return {
        "command": cfg.command,
        "version": __version__,
        "z": cfg.z,
        "alpha": cfg.alpha,
        "rest_mass": cfg.rest_mass,
        "c": cfg.c,
        "hbar": cfg.hbar,
    }


def cmd_spectrum(cfg: RunConfig) -> tuple[dict, list[dict]]:
    p = cfg.physical_params()
    rest = p.rest_energy

    def one(state: tuple[int, int]) -> dict:
        n, l = state
        b = energy_level(p, n, l)
        expansion = energy_expansion(p, n, l)
        return {
            "n": n,
            "l": l,
            "sigma_l": sigma_closed(p, l).sigma_l,
            "e_total_ratio": b.e_total / rest,
            "e_prime_ratio": b.e_prime / rest,
            "system_mass_ratio": b.system_mass / p.rest_mass,
            "expansion_ratio": expansion / rest,
            "closed_minus_expansion": abs(b.e_total - expansion),
        }

    rows = _map_states(one, _requested_states(cfg))
    rows.sort(key=lambda r: (r["n"], r["l"]))
    return _common_meta(cfg), rows


def cmd_wavefunction(cfg: RunConfig) -> tuple[dict, list[dict]]:
    p = cfg.physical_params()
    R = build_radial(p, cfg.n, cfg.l)
    r_max = cfg.rmax if cfg.rmax is not None else R.tail_radius(1e-10)
    grid = RadialGrid.uniform(r_max, cfg.samples)
    r = grid.points
    vals = np.asarray(R.evaluate(r))
    meta = _common_meta(cfg)
    meta.update(
        {
            "n": cfg.n,
            "l": cfg.l,
            "sigma_l": sigma_closed(p, cfg.l).sigma_l,
            "normalization": R.normalization,
            "rho_scale": R.rho_scale,
            "node_count": count_radial_nodes(R),
            "r_max": r_max,
        }
    )
    rows = [
        {
            "r": float(ri),
            "R": float(Ri),
            "u": float(ri * Ri),
            "rho": float(R.rho_scale * ri),
            "density": float(ri * ri * Ri * Ri),
        }
        for ri, Ri in zip(r, vals)
    ]
    return meta, rows


def cmd_solve(cfg: RunConfig) -> tuple[dict, list[dict]]:
    p = cfg.physical_params()
    mode = SolveMode(cfg.mode)
    potential = _build_potential(cfg)
    states = cfg.states if cfg.states is not None else ((cfg.n, cfg.l),)
    states = tuple(sorted(states))

    def one(state: tuple[int, int]) -> dict:
        n, l = state
        row = {
            "mode": mode.value,
            "potential": cfg.potential,
            "n": n,
            "l": l,
            "e_prime": None,
            "system_mass": None,
            "iterations": None,
            "residual": None,
            "node_count": None,
            "status": "ok",
        }
        try:
            grid = default_solver_grid(
                mode, potential, p, n, l, n_points=cfg.grid_n, r_max=cfg.rmax
            )
            b = solve_self_consistent(
                SolveRequest(
                    mode=mode,
                    potential=potential,
                    n=n,
                    l=l,
                    grid=grid,
                    sc_tolerance=cfg.tol,
                ),
                p,
            )
        except (_PHYSICS_ERRORS + _NUMERICAL_ERRORS) as exc:
            row["status"] = type(exc).__name__
            return row
        row.update(
            {
                "e_prime": b.e_prime,
                "system_mass": b.system_mass,
                "iterations": b.iterations,
                "residual": b.residual,
                "node_count": b.node_count,
            }
        )
        return row

    rows = _map_states(one, states)
    rows.sort(key=lambda r: (r["n"], r["l"]))
    meta = _common_meta(cfg)
    meta.update({"mode": mode.value, "potential": cfg.potential, "grid_n": cfg.grid_n})
    if cfg.potential in ("hulthen", "equal-hulthen"):
        meta["lambda"] = cfg.lam
    return meta, rows


def cmd_compare(cfg: RunConfig) -> tuple[dict, list[dict]]:
    """Binding-sector energies E' side by side: closed KG, numeric KG, Schrodinger."""
    p = cfg.physical_params()
    potential = PotentialSpec.coulomb()
    rest = p.rest_energy

    def one(state: tuple[int, int]) -> dict:
        n, l = state
        closed = energy_level(p, n, l).e_prime
        coarse_grid = default_solver_grid(
            SolveMode.KG_VECTOR, potential, p, n, l, n_points=cfg.grid_n // 2
        )
        fine_grid = default_solver_grid(SolveMode.KG_VECTOR, potential, p, n, l, n_points=cfg.grid_n)
        def solve(grid: RadialGrid) -> float:
            return solve_self_consistent(
                SolveRequest(
                    mode=SolveMode.KG_VECTOR,
                    potential=potential,
                    n=n,
                    l=l,
                    grid=grid,
                    sc_tolerance=cfg.tol,
                ),
                p,
            ).e_prime

        ratio = coarse_grid.step / fine_grid.step
        numeric = richardson_extrapolate(solve(coarse_grid), solve(fine_grid), ratio)
        schrodinger = -p.z_alpha ** 2 * rest / (2.0 * n ** 2)
        return {
            "n": n,
            "l": l,
            "e_kg_closed": closed,
            "e_kg_numeric": numeric,
            "e_schrodinger": schrodinger,
            "delta_closed_numeric": abs(closed - numeric) / abs(closed),
            "delta_kg_schrodinger": abs(closed - schrodinger) / abs(schrodinger),
        }

    rows = _map_states(one, _requested_states(cfg))
    rows.sort(key=lambda r: (r["n"], r["l"]))
    meta = _common_meta(cfg)
    meta.update({"grid_n": cfg.grid_n, "energies": "binding sector E' (rest energy excluded)"})
    return meta, rows


def cmd_lorentz(cfg: RunConfig) -> tuple[dict, list[dict]]:
    s = CharacterState(e_total=cfg.e, p=(cfg.px, cfg.py, cfg.pz), u_potential=cfg.u)
    b = BoostSpec(v=cfg.beta * cfg.c, c=cfg.c)
    s_prime = boost_forward(s, b, u_prime=cfg.u_prime)
    back = boost_backward(s_prime, b, u=cfg.u)

    def row(label: str, st: CharacterState) -> dict:
        return {
            "frame": label,
            "e_total": st.e_total,
            "px": st.p[0],
            "py": st.p[1],
            "pz": st.p[2],
            "u_potential": st.u_potential,
            "invariant": invariant_mass_sq(st, cfg.c),
        }

    rows = [row("K", s), row("K_prime", s_prime)]
    meta = _common_meta(cfg)
    meta.update(
        {
            "beta": b.beta,
            "gamma": b.gamma,
            "invariant_drift": abs(invariant_mass_sq(s_prime, cfg.c) - invariant_mass_sq(s, cfg.c)),
            "roundtrip_error": max(
                abs(back.e_total - s.e_total),
                max(abs(a - b_) for a, b_ in zip(back.p, s.p)),
            ),
        }
    )
    return meta, rows


def cmd_convergence(cfg: RunConfig) -> tuple[dict, list[dict]]:
    p = cfg.physical_params()
    mode = SolveMode(cfg.mode)
    potential = _build_potential(cfg)
    grid = (
        RadialGrid.uniform(cfg.rmax, max(cfg.sizes)) if cfg.rmax is not None else None
    )
    req = SolveRequest(
        mode=mode, potential=potential, n=cfg.n, l=cfg.l, grid=grid, sc_tolerance=cfg.tol
    )
    study = convergence_study(req, p, cfg.sizes)
    rows = []
    for i, (n_pts, e_prime, rich) in enumerate(study.rows):
        order = study.observed_orders[i - 2] if i >= 2 else None
        rows.append(
            {"n_points": n_pts, "e_prime": e_prime, "richardson": rich, "observed_order": order}
        )
    meta = _common_meta(cfg)
    meta.update(
        {
            "mode": mode.value,
            "potential": cfg.potential,
            "n": cfg.n,
            "l": cfg.l,
            "r_max": study.r_max,
        }
    )
    if cfg.potential in ("hulthen", "equal-hulthen"):
        meta["lambda"] = cfg.lam
    return meta, rows


def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return f"{float(value):.11e}"
    return str(value)


def _render_csv(meta: dict, rows: list[dict]) -> str:
    buf = io.StringIO()
    for key in meta:
        buf.write(f"# {key} = {_csv_cell(meta[key])}\n")
    if rows:
        columns = list(rows[0].keys())
        buf.write(",".join(columns) + "\n")
        for row in rows:
            buf.write(",".join(_csv_cell(row[c]) for c in columns) + "\n")
    return buf.getvalue()


def _json_value(value) -> str:
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return f"{float(value):.16e}"
    if isinstance(value, str):
        return json.dumps(value)
    if isinstance(value, dict):
        inner = ", ".join(f"{json.dumps(k)}: {_json_value(v)}" for k, v in value.items())
        return "{" + inner + "}"
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(_json_value(v) for v in value) + "]"
    raise TypeError(f"cannot serialize {type(value).__name__}")


def _render_json(meta: dict, rows: list[dict]) -> str:
    return _json_value({"meta": meta, "rows": rows}) + "\n"


def _write_output(cfg: RunConfig, meta: dict, rows: list[dict]) -> None:
    text = _render_json(meta, rows) if cfg.format == "json" else _render_csv(meta, rows)
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


_DISPATCH = {
    "spectrum": cmd_spectrum,
    "wavefunction": cmd_wavefunction,
    "solve": cmd_solve,
    "compare": cmd_compare,
    "lorentz": cmd_lorentz,
    "convergence": cmd_convergence,
}


def main(argv: list[str] | None = None) -> int:
    try:
        cfg = build_config(argv)
        meta, rows = _DISPATCH[cfg.command](cfg)
        _write_output(cfg, meta, rows)
    except ConfigError as exc:
        print(f"kgbound: config error: {exc}", file=sys.stderr)
        return 2
    except _PHYSICS_ERRORS as exc:
        print(f"kgbound: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    except _NUMERICAL_ERRORS as exc:
        print(f"kgbound: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 4
    return 0


if __name__ == "__main__":
    sys.exit(main())
