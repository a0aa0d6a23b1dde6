"""Command-line interface.

Subcommands: synth (seeded random field -> coefficient JSON + sampled CSV),
analyze (coefficient JSON -> wavelet CSV), reconstruct (wavelet CSV ->
coefficient JSON + error report), report (admissibility / kernel-bound /
isometry check tables).

Configuration is a plain key = value file plus command-line overrides;
unknown keys are errors. Exit codes: 0 success, 2 validation failure,
3 verdict failure (a numerical check missed its tolerance).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .fields import SpinField
from .kernels import kernel_bound_scan
from .so3 import SO3Grid
from .sphere import SphereGrid
from .transforms import synthesize
from .validation import LMAX_CAP
from .wavelets import (
    ScaleGrid,
    WaveletCoefficients,
    admissibility_check,
    cwt_forward,
    cwt_inverse,
    example_family,
    phase_space_inner,
)

WAVELET_ALPHA_TAG = "one_over_rho"


def _fmt(x) -> str:
    """Shortest round-trippable decimal form of a float-like value."""
    return repr(float(x))


class CLIError(Exception):
    """Invalid input or configuration; exits with code 2."""


class VerdictFailure(Exception):
    """A numerical check failed its tolerance; exits with code 3."""


_DEFAULTS = {
    "spin": 0,
    "lmax": 8,
    "family": (1.0, 1.0, 1.0),
    "q": (1.0, 1.0),
    "scale_cutoff": 1e-3,
    "n_scales": 64,
    "so3_grid": None,
    "seed": 0,
    "out": ".",
    "family_scale": 1.0,
}


def _parse_int(text, key):
    try:
        return int(text)
    except ValueError:
        raise CLIError(f"config key '{key}': expected integer, got {text!r}")


def _parse_float(text, key):
    try:
        return float(text)
    except ValueError:
        raise CLIError(f"config key '{key}': expected number, got {text!r}")


def _parse_floats(text, key, count=None):
    try:
        vals = tuple(float(v) for v in str(text).split(","))
    except ValueError:
        raise CLIError(f"config key '{key}': expected comma-separated numbers")
    if count is not None and len(vals) != count:
        raise CLIError(f"config key '{key}': expected {count} values")
    return vals


def _parse_ints(text, key, count=None):
    vals = _parse_floats(text, key, count)
    if any(v != int(v) for v in vals):
        raise CLIError(f"config key '{key}': expected integers")
    return tuple(int(v) for v in vals)


_PARSERS = {
    "spin": lambda v: _parse_int(v, "spin"),
    "lmax": lambda v: _parse_int(v, "lmax"),
    "family": lambda v: _parse_floats(v, "family", 3),
    "q": lambda v: _parse_floats(v, "q"),
    "scale_cutoff": lambda v: _parse_float(v, "scale_cutoff"),
    "n_scales": lambda v: _parse_int(v, "n_scales"),
    "so3_grid": lambda v: _parse_ints(v, "so3_grid", 3),
    "seed": lambda v: _parse_int(v, "seed"),
    "out": str,
    "family_scale": lambda v: _parse_float(v, "family_scale"),
}


def load_config_file(path: str) -> dict:
    p = Path(path)
    if not p.is_file():
        raise CLIError(f"config file not found: {path}")
    out = {}
    for lineno, raw in enumerate(p.read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise CLIError(f"{path}:{lineno}: expected 'key = value'")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in _PARSERS:
            raise CLIError(f"{path}:{lineno}: unknown config key '{key}'")
        out[key] = _PARSERS[key](value)
    return out


def effective_config(args) -> dict:
    cfg = dict(_DEFAULTS)
    if args.config:
        cfg.update(load_config_file(args.config))
    overrides = {
        "spin": args.spin,
        "lmax": args.lmax,
        "seed": args.seed,
        "out": args.out,
        "scale_cutoff": args.scale_cutoff,
        "n_scales": args.n_scales,
        "family_scale": args.family_scale,
    }
    for key, val in overrides.items():
        if val is not None:
            cfg[key] = val
    if args.family is not None:
        cfg["family"] = _parse_floats(args.family, "family", 3)
    if args.q is not None:
        cfg["q"] = _parse_floats(args.q, "q")
    if args.so3_grid is not None:
        cfg["so3_grid"] = _parse_ints(args.so3_grid, "so3_grid", 3)
    _validate_config(cfg)
    return cfg


def _validate_config(cfg):
    if cfg["lmax"] < abs(cfg["spin"]) or cfg["lmax"] > LMAX_CAP:
        raise CLIError(f"lmax={cfg['lmax']} invalid for spin={cfg['spin']}")
    if not 0.0 < cfg["scale_cutoff"] < 1.0:
        raise CLIError("scale_cutoff must lie in (0, 1)")
    if cfg["n_scales"] < 2:
        raise CLIError("n_scales must be at least 2")
    if cfg["family_scale"] <= 0:
        raise CLIError("family_scale must be positive")


def _build_family(cfg, spin, lmax):
    a, b, c = cfg["family"]
    try:
        fam = example_family(a, b, c, cfg["q"], spin, lmax)
    except ValueError as exc:
        raise CLIError(str(exc))
    if cfg["family_scale"] != 1.0:
        fam = fam.scaled(cfg["family_scale"])
    return fam


def _so3_grid(cfg, lmax) -> SO3Grid:
    if cfg["so3_grid"] is None:
        return SO3Grid.for_bandlimit(lmax)
    grid = SO3Grid.build(*cfg["so3_grid"])
    if grid.max_exact_degree < lmax:
        raise CLIError(
            f"so3_grid {cfg['so3_grid']} too coarse for lmax={lmax}"
        )
    return grid


def _out_dir(cfg) -> Path:
    out = Path(cfg["out"])
    out.mkdir(parents=True, exist_ok=True)
    return out


# ---------------------------------------------------------------- file formats

def write_coefficient_file(path: Path, field: SpinField) -> None:
    entries = []
    for l in range(abs(field.spin), field.lmax + 1):
        for m in range(-l, l + 1):
            v = field.get(l, m)
            entries.append({"l": l, "m": m, "re": v.real, "im": v.imag})
    doc = {"version": 1, "spin": field.spin, "lmax": field.lmax, "coeffs": entries}
    path.write_text(json.dumps(doc, indent=1) + "\n")


def read_coefficient_file(path: str) -> SpinField:
    p = Path(path)
    if not p.is_file():
        raise CLIError(f"coefficient file not found: {path}")
    try:
        doc = json.loads(p.read_text())
    except json.JSONDecodeError as exc:
        raise CLIError(f"{path}: invalid JSON ({exc})")
    if not isinstance(doc, dict) or doc.get("version") != 1:
        raise CLIError(f"{path}: unsupported coefficient file version")
    try:
        spin = int(doc["spin"])
        lmax = int(doc["lmax"])
        entries = doc["coeffs"]
    except (KeyError, TypeError, ValueError):
        raise CLIError(f"{path}: missing or malformed fields")
    if lmax < abs(spin) or lmax > LMAX_CAP:
        raise CLIError(f"{path}: invalid spin/lmax combination")
    field = SpinField.zeros(spin, lmax)
    seen = 0
    try:
        for e in entries:
            field.coeffs[field.index(int(e["l"]), int(e["m"]))] = complex(
                float(e["re"]), float(e["im"])
            )
            seen += 1
    except (KeyError, TypeError, ValueError) as exc:
        raise CLIError(f"{path}: malformed coefficient entry ({exc})")
    if seen != field.coeffs.size:
        raise CLIError(
            f"{path}: expected {field.coeffs.size} coefficients, found {seen}"
        )
    return field


def write_wavelet_csv(path: Path, w: WaveletCoefficients) -> None:
    rots, scales = w.rotations, w.scales
    header = (
        f"# scales={_fmt(scales.cutoff)}:{scales.n_scales}"
        f";so3={rots.n_alpha},{rots.n_beta},{rots.n_gamma}"
        f";alpha={WAVELET_ALPHA_TAG};spin={w.spin};lmax={w.lmax}"
    )
    alphas, betas, gammas = rots.nodes()
    with path.open("w") as fh:
        fh.write(header + "\n")
        fh.write("rho,alpha,beta,gamma,re,im\n")
        for i, rho in enumerate(scales.nodes):
            row = w.values[i]
            for j in range(rots.n_nodes):
                v = row[j]
                fh.write(
                    f"{_fmt(rho)},{_fmt(alphas[j])},{_fmt(betas[j])},"
                    f"{_fmt(gammas[j])},{_fmt(v.real)},{_fmt(v.imag)}\n"
                )


def read_wavelet_csv(path: str):
    """Parse header metadata and the value table of a wavelet CSV."""
    p = Path(path)
    if not p.is_file():
        raise CLIError(f"wavelet file not found: {path}")
    with p.open() as fh:
        header = fh.readline().strip()
        columns = fh.readline().strip()
    if not header.startswith("# scales="):
        raise CLIError(f"{path}: missing wavelet header line")
    if columns != "rho,alpha,beta,gamma,re,im":
        raise CLIError(f"{path}: unexpected column header {columns!r}")
    meta = {}
    for part in header[2:].split(";"):
        if "=" not in part:
            raise CLIError(f"{path}: malformed header field {part!r}")
        key, val = part.split("=", 1)
        meta[key] = val
    try:
        cutoff_text, n_text = meta["scales"].split(":")
        cutoff, n_scales = float(cutoff_text), int(n_text)
        so3 = tuple(int(v) for v in meta["so3"].split(","))
        spin, lmax = int(meta["spin"]), int(meta["lmax"])
        alpha_tag = meta["alpha"]
    except (KeyError, ValueError):
        raise CLIError(f"{path}: malformed header metadata")
    if len(so3) != 3:
        raise CLIError(f"{path}: so3 header must have three sizes")
    if alpha_tag != WAVELET_ALPHA_TAG:
        raise CLIError(f"{path}: unsupported scale weight {alpha_tag!r}")
    try:
        table = np.loadtxt(path, delimiter=",", skiprows=2, ndmin=2)
    except ValueError as exc:
        raise CLIError(f"{path}: unreadable value rows ({exc})")
    n_nodes = so3[0] * so3[1] * so3[2]
    if table.shape[0] != n_scales * n_nodes or table.shape[1] != 6:
        raise CLIError(
            f"{path}: expected {n_scales * n_nodes} rows of 6 columns, "
            f"got shape {table.shape}"
        )
    values = (table[:, 4] + 1j * table[:, 5]).reshape(n_scales, n_nodes)
    return {
        "cutoff": cutoff,
        "n_scales": n_scales,
        "so3": so3,
        "spin": spin,
        "lmax": lmax,
        "values": values,
    }


# ------------------------------------------------------------------- commands

def cmd_synth(cfg) -> int:
    spin, lmax = cfg["spin"], cfg["lmax"]
    rng = np.random.default_rng(cfg["seed"])
    field = SpinField.random(spin, lmax, rng)
    out = _out_dir(cfg)
    coeff_path = out / "synth_coeffs.json"
    write_coefficient_file(coeff_path, field)
    grid = SphereGrid.for_bandlimit(lmax)
    sampled = synthesize(field, grid)
    grid_path = out / "synth_grid.csv"
    th, ph = grid.points()
    with grid_path.open("w") as fh:
        fh.write("theta,phi,re,im\n")
        for t, p, v in zip(th.ravel(), ph.ravel(), sampled.values.ravel()):
            fh.write(f"{_fmt(t)},{_fmt(p)},{_fmt(v.real)},{_fmt(v.imag)}\n")
    print(f"wrote {coeff_path} and {grid_path}")
    return 0


def cmd_analyze(cfg, input_path: str) -> int:
    field = read_coefficient_file(input_path)
    if field.spin != cfg["spin"]:
        raise CLIError(
            f"spin mismatch: file has {field.spin}, config has {cfg['spin']}"
        )
    fam = _build_family(cfg, field.spin, field.lmax)
    scales = ScaleGrid.logarithmic(cfg["scale_cutoff"], cfg["n_scales"], fam.weight)
    rots = _so3_grid(cfg, field.lmax)
    w = cwt_forward(field, fam, scales, rots)
    out = _out_dir(cfg)
    path = out / "wavelet_coeffs.csv"
    write_wavelet_csv(path, w)
    print(f"wrote {path} ({w.values.shape[0]} scales x {w.values.shape[1]} rotations)")
    return 0


def cmd_reconstruct(cfg, input_path: str, reference: str | None) -> int:
    data = read_wavelet_csv(input_path)
    if data["spin"] != cfg["spin"]:
        raise CLIError(
            f"spin mismatch: file has {data['spin']}, config has {cfg['spin']}"
        )
    if abs(data["cutoff"] - cfg["scale_cutoff"]) > 1e-12 * cfg["scale_cutoff"]:
        raise CLIError(
            f"scale cutoff mismatch: header {data['cutoff']}, config "
            f"{cfg['scale_cutoff']}"
        )
    if data["n_scales"] != cfg["n_scales"]:
        raise CLIError(
            f"n_scales mismatch: header {data['n_scales']}, config {cfg['n_scales']}"
        )
    rots = _so3_grid(cfg, data["lmax"])
    if (rots.n_alpha, rots.n_beta, rots.n_gamma) != data["so3"]:
        raise CLIError(
            f"so3 grid mismatch: header {data['so3']}, config "
            f"{(rots.n_alpha, rots.n_beta, rots.n_gamma)}"
        )
    fam = _build_family(cfg, data["spin"], data["lmax"])
    scales = ScaleGrid.logarithmic(cfg["scale_cutoff"], cfg["n_scales"], fam.weight)
    w = WaveletCoefficients(scales, rots, data["spin"], data["lmax"], data["values"])
    recon = cwt_inverse(w, fam)
    out = _out_dir(cfg)
    coeff_path = out / "recon_coeffs.json"
    write_coefficient_file(coeff_path, recon)
    adm = admissibility_check(fam, cutoff=1e-5, n_scales=4000, tol=1e-4)
    report = {
        "family_admissible": bool(adm.passed),
        "admissibility_max_deviation": adm.max_deviation,
        "spin": recon.spin,
        "lmax": recon.lmax,
    }
    if reference is not None:
        ref = read_coefficient_file(reference)
        if ref.spin != recon.spin or ref.lmax != recon.lmax:
            raise CLIError("reference file layout does not match reconstruction")
        num = float(np.linalg.norm(recon.coeffs - ref.coeffs))
        den = float(np.linalg.norm(ref.coeffs))
        report["relative_l2_error"] = num / den if den > 0 else num
    report_path = out / "recon_report.json"
    report_path.write_text(json.dumps(report, indent=1) + "\n")
    print(f"wrote {coeff_path} and {report_path}")
    if "relative_l2_error" in report:
        print(f"relative l2 error vs reference: {report['relative_l2_error']:.3e}")
    if not adm.passed:
        print(
            f"warning: family fails admissibility "
            f"(max deviation {adm.max_deviation:.3e})"
        )
        raise VerdictFailure("inadmissible wavelet family")
    return 0


def cmd_report(cfg) -> int:
    spin, lmax = cfg["spin"], cfg["lmax"]
    fam = _build_family(cfg, spin, lmax)
    out = _out_dir(cfg)
    failures = []

    adm = admissibility_check(fam, cutoff=1e-5, n_scales=4000, tol=1e-4)
    adm_path = out / "admissibility.csv"
    with adm_path.open("w") as fh:
        fh.write("l,integral,target,relative_deviation\n")
        for i, l in enumerate(adm.degrees):
            fh.write(
                f"{l},{_fmt(adm.integrals[i])},{_fmt(adm.targets[i])},"
                f"{_fmt(adm.relative_deviation[i])}\n"
            )
    status = "pass" if adm.passed else "FAIL"
    print(f"admissibility: {status} (max deviation {adm.max_deviation:.3e})")
    if not adm.passed:
        failures.append("admissibility")

    scan = kernel_bound_scan(spin, max(lmax, abs(spin) + 16), seed=cfg["seed"])
    bound_path = out / "kernel_bound.csv"
    with bound_path.open("w") as fh:
        fh.write("l,max_abs,ratio\n")
        for i, l in enumerate(scan.degrees):
            fh.write(f"{l},{_fmt(scan.max_abs[i])},{_fmt(scan.ratio[i])}\n")
    bound_ok = scan.tail_ok()
    print(f"kernel bound: {'pass' if bound_ok else 'FAIL'} "
          f"(tail ratio {scan.ratio[-1]:.3e})")
    if not bound_ok:
        failures.append("kernel-bound")

    rng = np.random.default_rng(cfg["seed"])
    scales = ScaleGrid.logarithmic(cfg["scale_cutoff"], cfg["n_scales"], fam.weight)
    rots = _so3_grid(cfg, lmax)
    iso_path = out / "isometry.csv"
    worst = 0.0
    with iso_path.open("w") as fh:
        fh.write("pair,phase_space_re,phase_space_im,field_re,field_im,rel_error\n")
        for i in range(6):
            f = SpinField.random(spin, lmax, rng)
            g = SpinField.random(spin, lmax, rng)
            wf = cwt_forward(f, fam, scales, rots)
            wg = cwt_forward(g, fam, scales, rots)
            lhs = phase_space_inner(wf, wg)
            rhs = complex(np.vdot(f.coeffs, g.coeffs))
            rel = abs(lhs - rhs) / abs(rhs)
            worst = max(worst, rel)
            fh.write(
                f"{i},{_fmt(lhs.real)},{_fmt(lhs.imag)},{_fmt(rhs.real)},"
                f"{_fmt(rhs.imag)},{_fmt(rel)}\n"
            )
    iso_ok = worst <= 2e-3
    print(f"isometry: {'pass' if iso_ok else 'FAIL'} (max rel error {worst:.3e})")
    if not iso_ok:
        failures.append("isometry")

    print(f"wrote {adm_path}, {bound_path}, {iso_path}")
    if failures:
        raise VerdictFailure("failed checks: " + ", ".join(failures))
    return 0


# ------------------------------------------------------------------ arg parse

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spinwavelets",
        description="Spin-weighted spherical wavelet analysis.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="key = value config file")
    common.add_argument("--seed", type=int, metavar="N")
    common.add_argument("--spin", type=int, metavar="S")
    common.add_argument("--lmax", type=int, metavar="L")
    common.add_argument("--out", metavar="DIR")
    common.add_argument("--family", metavar="A,B,C", help="family shape parameters")
    common.add_argument("--q", metavar="C0,C1,...", help="degree profile polynomial")
    common.add_argument("--scale-cutoff", dest="scale_cutoff", type=float, metavar="R")
    common.add_argument("--n-scales", dest="n_scales", type=int, metavar="N")
    common.add_argument("--so3-grid", dest="so3_grid", metavar="NA,NB,NG")
    common.add_argument(
        "--family-scale", dest="family_scale", type=float, metavar="F",
        help="multiply family coefficients (breaks admissibility unless 1)",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("synth", parents=[common],
                   help="random band-limited field to JSON + sampled CSV")
    p_an = sub.add_parser("analyze", parents=[common],
                          help="coefficient JSON to wavelet CSV")
    p_an.add_argument("input", help="coefficient JSON file")
    p_re = sub.add_parser("reconstruct", parents=[common],
                          help="wavelet CSV back to coefficient JSON")
    p_re.add_argument("input", help="wavelet CSV file")
    p_re.add_argument("--reference", metavar="PATH",
                      help="coefficient JSON to compare against")
    sub.add_parser("report", parents=[common],
                   help="admissibility, kernel bound, and isometry tables")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = effective_config(args)
        if args.command == "synth":
            return cmd_synth(cfg)
        if args.command == "analyze":
            return cmd_analyze(cfg, args.input)
        if args.command == "reconstruct":
            return cmd_reconstruct(cfg, args.input, args.reference)
        if args.command == "report":
            return cmd_report(cfg)
        raise CLIError(f"unknown command {args.command!r}")
    except CLIError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except VerdictFailure as exc:
        print(f"verdict failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
