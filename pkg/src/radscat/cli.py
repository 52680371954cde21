"""Command-line front end.

One JSON config file describes the potential and the command parameters;
see docs/SCHEMA.md for the frozen key names.  Tables are CSV with a single
comment header line recording the config hash, tool version and tolerances.
Exit codes: 0 success, 2 config error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import hashlib
import io
import json
import math
import sys

import numpy as np
from scipy.integrate import simpson

from . import __version__
from .criterion import SYMMETRY_RTOL, GridSpec, classify_eigensolution
from .potential import PhysicalScale, Potential, sqrt_branch
from .resonance import (
    IllConditionedResidueError,
    MissedRootsError,
    Region,
    find_resonances,
    gamow_eigenfunction,
)
from .spectral import Family, PoleError, eigenfunction, energy_transform, jost, s_matrix
from .verification import smeared_delta_check

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3


class ConfigError(ValueError):
    pass


def _load_config(path: str) -> tuple[dict, str]:
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    try:
        cfg = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
    if not isinstance(cfg, dict):
        raise ConfigError("config must be a JSON object")
    return cfg, hashlib.sha256(raw).hexdigest()[:16]


def _potential(cfg: dict) -> tuple[Potential, PhysicalScale]:
    try:
        scale = PhysicalScale(kappa=float(cfg.get("kappa", 1.0)))
        pot = Potential(
            breakpoints=tuple(cfg["breakpoints"]),
            heights=tuple(cfg["heights"]),
        )
    except KeyError as exc:
        raise ConfigError(f"missing config key {exc}") from exc
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"invalid potential spec: {exc}") from exc
    return pot, scale


def _section(cfg: dict, name: str) -> dict:
    sec = cfg.get(name, {})
    if not isinstance(sec, dict):
        raise ConfigError(f"config section '{name}' must be an object")
    return sec


def _need(sec: dict, key: str, section: str):
    if key not in sec:
        raise ConfigError(f"missing key '{key}' in config section '{section}'")
    return sec[key]


def _tolerances(pairs: list[str]) -> dict[str, float]:
    tols = {}
    for item in pairs or []:
        if "=" not in item:
            raise ConfigError(f"--tolerance expects NAME=VALUE, got '{item}'")
        name, value = item.split("=", 1)
        try:
            tols[name.strip()] = float(value)
        except ValueError as exc:
            raise ConfigError(f"bad tolerance value in '{item}'") from exc
    return tols


def _header(cfg_hash: str, tols: dict) -> str:
    tol_str = ",".join(f"{k}={v:g}" for k, v in sorted(tols.items())) or "default"
    return f"# radscat v{__version__} config_sha256={cfg_hash} tolerances={tol_str}"


def _emit_table(out, header: str, columns: list[str], rows: list[tuple]):
    out.write(header + "\n")
    out.write(",".join(columns) + "\n")
    for row in rows:
        out.write(",".join(f"{v:.12g}" if isinstance(v, float) else str(v) for v in row) + "\n")


def _emit_record(out, header: str, record: dict):
    out.write(header + "\n")
    for key, value in record.items():
        out.write(f"{key}={value}\n")


def cmd_smatrix(cfg, scale, pot, tols):
    sec = _section(cfg, "smatrix")
    k = np.linspace(float(_need(sec, "k_min", "smatrix")),
                    float(_need(sec, "k_max", "smatrix")),
                    int(sec.get("n_k", 200)))
    if k[0] <= 0:
        raise ConfigError("smatrix k grid must be positive")
    rows = []
    for kv in k:
        s = s_matrix(pot, scale, kv).s
        rows.append((float(kv), float(kv ** 2 / scale.kappa),
                     float(s.real), float(s.imag), float(abs(s)),
                     float(np.angle(s))))
    return ["k", "E", "re_s", "im_s", "abs_s", "arg_s"], rows, None


def cmd_resonances(cfg, scale, pot, tols):
    sec = _section(cfg, "resonances")
    reg = _need(sec, "region", "resonances")
    try:
        region = Region(float(reg["re_min"]), float(reg["re_max"]),
                        float(reg["im_min"]), float(reg["im_max"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"invalid resonance region: {exc}") from exc
    states = find_resonances(pot, scale, region, max_states=int(sec.get("max_states", 50)))
    rows = []
    for n, st in enumerate(states, start=1):
        rows.append((n, float(st.k_pole.real), float(st.k_pole.imag),
                     float(st.e_res), float(st.gamma),
                     float(st.norm_sq.real), float(st.norm_sq.imag)))
    return ["n", "re_k", "im_k", "e_n", "gamma_n", "re_n2", "im_n2"], rows, None


def cmd_eigenfunction(cfg, scale, pot, tols):
    sec = _section(cfg, "eigenfunction")
    fam = _need(sec, "family", "eigenfunction")
    r = np.linspace(float(sec.get("r_min", 0.0)),
                    float(_need(sec, "r_max", "eigenfunction")),
                    int(sec.get("n_r", 200)))
    if fam == "gamow":
        reg = _need(sec, "region", "eigenfunction")
        region = Region(float(reg["re_min"]), float(reg["re_max"]),
                        float(reg["im_min"]), float(reg["im_max"]))
        states = find_resonances(pot, scale, region)
        idx = int(_need(sec, "pole_index", "eigenfunction"))
        if not 1 <= idx <= len(states):
            raise ConfigError(f"pole_index {idx} out of range 1..{len(states)}")
        psi = gamow_eigenfunction(states[idx - 1], r)
    else:
        try:
            kind = Family(fam)
        except ValueError as exc:
            raise ConfigError(f"unknown family '{fam}'") from exc
        energy = float(_need(sec, "energy", "eigenfunction"))
        if energy <= 0:
            raise ConfigError("eigenfunction energy must be positive")
        psi = eigenfunction(kind, pot, scale, energy, r)
    rows = [(float(rv), float(p.real), float(p.imag)) for rv, p in zip(r, psi)]
    return ["r", "re_psi", "im_psi"], rows, None


def cmd_criterion(cfg, scale, pot, tols):
    sec = _section(cfg, "criterion")
    fam = _need(sec, "label", "criterion")
    try:
        kind = Family(fam)
    except ValueError as exc:
        raise ConfigError(f"unknown criterion label '{fam}'") from exc
    gs = sec.get("grid", {})
    grid = GridSpec(
        re_min=float(gs.get("re_min", 0.1)), re_max=float(gs.get("re_max", 20.0)),
        im_min=float(gs.get("im_min", -5.0)), im_max=float(gs.get("im_max", 5.0)),
        n_re=int(gs.get("n_re", 80)), n_im=int(gs.get("n_im", 80)),
    )
    rtol = tols.get("symmetry", SYMMETRY_RTOL)
    rep = classify_eigensolution(kind, pot, scale, grid, rtol=rtol)
    record = {
        "label": rep.function_label,
        "max_deviation": f"{rep.max_deviation:.12g}",
        "classification": rep.classification,
        "grid": (f"re=[{grid.re_min},{grid.re_max}] im=[{grid.im_min},{grid.im_max}] "
                 f"n={grid.n_re}x{grid.n_im}"),
        "n_nonfinite": rep.n_nonfinite,
    }
    return None, None, record


def cmd_verify(cfg, scale, pot, tols):
    sec = _section(cfg, "verify")
    checks = []

    # |S| = 1 on the physical line
    unit_tol = tols.get("unitarity", 1e-10)
    ks = np.linspace(0.05, 10.0, 1000)
    dev = max(abs(abs(s_matrix(pot, scale, k).s) - 1.0) for k in ks)
    checks.append(("unitarity", dev, unit_tol))

    # in = S * out pointwise
    prop_tol = tols.get("proportionality", 1e-12)
    es = np.linspace(1.0, 20.0, 20)
    rs = np.linspace(0.0, 3 * pot.outer_radius, 20)
    worst = 0.0
    for e in es:
        s = s_matrix(pot, scale, sqrt_branch(scale.kappa * e).real).s
        d = np.abs(eigenfunction(Family.IN, pot, scale, e, rs)
                   - s * eigenfunction(Family.OUT, pot, scale, e, rs))
        worst = max(worst, float(d.max()))
    checks.append(("proportionality", worst, prop_tol))

    # 4 rho |J4|^2 == rho+
    meas_tol = tols.get("measure_identity", 1e-12)
    worst = 0.0
    for k in np.linspace(0.1, 10.0, 200):
        from .solution import solve_regular
        _, j4 = solve_regular(pot, scale, k).exterior_amplitudes
        rho = scale.kappa / (4 * math.pi * k * abs(j4) ** 2)
        rho_p = scale.kappa / (math.pi * k)
        worst = max(worst, abs(4 * rho * abs(j4) ** 2 - rho_p) / rho_p)
    checks.append(("measure_identity", worst, meas_tol))

    # smeared delta-normalization per family
    delta_tol = tols.get("smeared_delta", 1e-3)
    center = float(sec.get("g_center", 16.0))
    width = float(sec.get("g_width", 2.0))
    r_max = sec.get("r_max")
    failed_convergence = False
    for fam in Family:
        rep = smeared_delta_check(fam, pot, scale, center, width,
                                  r_max=float(r_max) if r_max else None)
        checks.append((f"smeared_delta_{fam.value}", rep.relative_error, delta_tol))
        failed_convergence |= not rep.converged

    rows = [(name, float(err), float(tol), "pass" if err <= tol else "FAIL")
            for name, err, tol in checks]
    ok = all(r[3] == "pass" for r in rows) and not failed_convergence
    return ["check", "error", "tolerance", "status"], rows, None if ok else "verify failed"


def cmd_transform(cfg, scale, pot, tols):
    sec = _section(cfg, "transform")
    fam = _need(sec, "family", "transform")
    try:
        kind = Family(fam)
    except ValueError as exc:
        raise ConfigError(f"unknown family '{fam}'") from exc
    psi_spec = _need(sec, "psi", "transform")
    r_max = float(sec.get("r_max", 10 * pot.outer_radius))
    n_r = int(sec.get("n_r", 2001))
    r = np.linspace(0.0, r_max, n_r)
    try:
        center = float(psi_spec["center"])
        width = float(psi_spec["width"])
    except (KeyError, TypeError) as exc:
        raise ConfigError(f"psi spec needs 'center' and 'width': {exc}") from exc
    psi = np.exp(-((r - center) ** 2) / (2 * width ** 2))
    if "k0" in psi_spec:
        psi = psi * np.exp(1j * float(psi_spec["k0"]) * r)
    e_grid = np.linspace(float(_need(sec, "e_min", "transform")),
                         float(_need(sec, "e_max", "transform")),
                         int(sec.get("n_e", 400)))
    coeffs = energy_transform(kind, pot, scale, psi, r_max, e_grid)
    rows = [(float(e), float(c.real), float(c.imag)) for e, c in zip(e_grid, coeffs)]
    return ["E", "re_coeff", "im_coeff"], rows, None


_COMMANDS = {
    "smatrix": cmd_smatrix,
    "resonances": cmd_resonances,
    "eigenfunction": cmd_eigenfunction,
    "criterion": cmd_criterion,
    "verify": cmd_verify,
    "transform": cmd_transform,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="radscat",
        description="Scattering observables for piecewise-constant radial potentials",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", required=True, help="JSON config file (docs/SCHEMA.md)")
        p.add_argument("--out", default=None, help="output path (default stdout)")
        p.add_argument("--format", choices=["csv", "record"], default=None)
        p.add_argument("--tolerance", action="append", default=[],
                       metavar="NAME=VALUE", help="override a named tolerance")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg, cfg_hash = _load_config(args.config)
        tols = _tolerances(args.tolerance)
        pot, scale = _potential(cfg)
        columns, rows, extra = _COMMANDS[args.command](cfg, scale, pot, tols)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (MissedRootsError, IllConditionedResidueError, PoleError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL

    buf = io.StringIO()
    header = _header(cfg_hash, tols)
    if columns is None:
        _emit_record(buf, header, extra)
        extra = None
    else:
        _emit_table(buf, header, columns, rows)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(buf.getvalue())
    else:
        sys.stdout.write(buf.getvalue())
    if isinstance(extra, str):
        print(extra, file=sys.stderr)
        return EXIT_NUMERICAL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
