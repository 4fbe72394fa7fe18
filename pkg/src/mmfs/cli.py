"""Command-line front end: solve, sweep, verify.

Configs are INI files with [curve], [run], [sweep], [output] sections.
Exit codes: 0 success, 1 verification or solve failure, 2 config error.
"""

from __future__ import annotations

import argparse
import configparser
import io
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import analysis, assembly, geometry, reference, solvers, verify
from .errors import ConfigError, MmfsError
from .geometry import BoundaryCurve
from .solvers import MethodKind

CURVE_KINDS = ("circle", "ellipse", "epitrochoid", "custom")
DATA_KINDS = ("exterior-reference", "constant", "fourier")
SWEEP_KINDS = ("s-r0", "k-compare", "a-vs-sk")


@dataclass
class RunConfig:
    curve_kind: str = "circle"
    curve_params: dict = field(default_factory=lambda: {"radius": 1.0})
    method: str = "all"
    n: int = 21
    m: int | None = None
    r: float | None = None
    r0: float | None = None
    data: str = "exterior-reference"
    constant: float = 0.0
    fourier_a0: float = 0.0
    fourier_cos: tuple = ()
    fourier_sin: tuple = ()
    far_field: float = 0.0
    radii: tuple = tuple(10.0**k for k in range(1, 11))
    theta_samples: int = 1024
    sweep_kind: str | None = None
    sweep_start: float = 0.005
    sweep_stop: float = 15.0
    sweep_step: float = 0.005
    n_list: tuple = ()
    output: str = "out.csv"

    @property
    def m_effective(self) -> int:
        return self.m if self.m is not None else (self.n - 1) // 2

    def curve(self) -> BoundaryCurve:
        p = self.curve_params
        try:
            if self.curve_kind == "circle":
                return geometry.Circle(p["radius"])
            if self.curve_kind == "ellipse":
                return geometry.Ellipse(p["a"], p["b"])
            if self.curve_kind == "epitrochoid":
                return geometry.Epitrochoid(p["a"], p["b"])
            if self.curve_kind == "custom":
                return geometry.CustomRadial(p["samples"])
        except KeyError as exc:
            raise ConfigError(f"[curve] missing key {exc}") from None
        raise ConfigError(f"[curve] unknown kind '{self.curve_kind}'")

    def methods(self) -> list[MethodKind]:
        if self.method == "all":
            return list(MethodKind)
        try:
            return [MethodKind(self.method)]
        except ValueError:
            raise ConfigError(f"[run] unknown method '{self.method}'") from None

    def validate(self) -> None:
        if self.curve_kind not in CURVE_KINDS:
            raise ConfigError(f"[curve] kind must be one of {CURVE_KINDS}")
        if self.data not in DATA_KINDS:
            raise ConfigError(f"[run] data must be one of {DATA_KINDS}")
        if self.sweep_kind is not None and self.sweep_kind not in SWEEP_KINDS:
            raise ConfigError(f"[sweep] kind must be one of {SWEEP_KINDS}")
        methods = self.methods()
        uses_trefftz = any(
            k in (MethodKind.MTM, MethodKind.MMFS_CBF, MethodKind.MMFS_MBF)
            for k in methods
        )
        if uses_trefftz and self.n != 2 * self.m_effective + 1:
            raise ConfigError(
                f"[run] N must be odd with N = 2M+1 for Trefftz-based methods, "
                f"got N={self.n}, M={self.m_effective}"
            )
        needs_source = [k for k in methods if k is not MethodKind.MTM]
        if needs_source:
            if self.r is None:
                raise ConfigError("[run] R is required for MFS/MMFS methods")
            rho_min, _ = geometry.rho_extrema(self.curve())
            if self.r >= rho_min:
                raise ConfigError(
                    f"[run] R={self.r} must be below rho_min={rho_min:g}"
                )
        if uses_trefftz or MethodKind.MTM in methods:
            if self.r0 is None and MethodKind.MTM in methods:
                raise ConfigError("[run] R0 is required for the MTM")


def _get(section, key, cast, default=None):
    if key not in section:
        if default is not None:
            return default
        raise ConfigError(f"[{section.name}] missing key '{key}'")
    try:
        return cast(section[key])
    except ValueError as exc:
        raise ConfigError(f"[{section.name}] bad value for '{key}': {exc}") from None


def _floats(text: str) -> tuple:
    return tuple(float(tok) for tok in text.split(",") if tok.strip())


def _ints(text: str) -> tuple:
    return tuple(int(tok) for tok in text.split(",") if tok.strip())


def parse_config(text: str) -> RunConfig:
    parser = configparser.ConfigParser()
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(f"config parse error: {exc}") from None
    cfg = RunConfig()
    if parser.has_section("curve"):
        sec = parser["curve"]
        cfg.curve_kind = _get(sec, "kind", str, cfg.curve_kind)
        params = {}
        for key in sec:
            if key == "kind":
                continue
            params[key] = _floats(sec[key]) if key == "samples" else float(sec[key])
        if params:
            cfg.curve_params = params
    if parser.has_section("run"):
        sec = parser["run"]
        cfg.method = _get(sec, "method", str, cfg.method)
        cfg.n = _get(sec, "n", int, cfg.n)
        if "m" in sec:
            cfg.m = int(sec["m"])
        if "r" in sec:
            cfg.r = float(sec["r"])
        if "r0" in sec:
            cfg.r0 = float(sec["r0"])
        cfg.data = _get(sec, "data", str, cfg.data)
        cfg.constant = _get(sec, "constant", float, cfg.constant)
        cfg.fourier_a0 = _get(sec, "fourier_a0", float, cfg.fourier_a0)
        if "fourier_cos" in sec:
            cfg.fourier_cos = _floats(sec["fourier_cos"])
        if "fourier_sin" in sec:
            cfg.fourier_sin = _floats(sec["fourier_sin"])
        cfg.far_field = _get(sec, "far_field", float, cfg.far_field)
        if "radii" in sec:
            cfg.radii = _floats(sec["radii"])
        cfg.theta_samples = _get(sec, "theta_samples", int, cfg.theta_samples)
    if parser.has_section("sweep"):
        sec = parser["sweep"]
        cfg.sweep_kind = _get(sec, "kind", str)
        cfg.sweep_start = _get(sec, "start", float, cfg.sweep_start)
        cfg.sweep_stop = _get(sec, "stop", float, cfg.sweep_stop)
        cfg.sweep_step = _get(sec, "step", float, cfg.sweep_step)
        if "n_list" in sec:
            cfg.n_list = _ints(sec["n_list"])
    if parser.has_section("output"):
        cfg.output = _get(parser["output"], "path", str, cfg.output)
    cfg.validate()
    return cfg


def serialize_config(cfg: RunConfig) -> str:
    parser = configparser.ConfigParser()
    parser["curve"] = {"kind": cfg.curve_kind}
    for key, value in cfg.curve_params.items():
        if key == "samples":
            parser["curve"][key] = ",".join(f"{v:.17g}" for v in value)
        else:
            parser["curve"][key] = f"{value:.17g}"
    run = {
        "method": cfg.method,
        "n": str(cfg.n),
        "data": cfg.data,
        "constant": f"{cfg.constant:.17g}",
        "fourier_a0": f"{cfg.fourier_a0:.17g}",
        "far_field": f"{cfg.far_field:.17g}",
        "radii": ",".join(f"{v:.17g}" for v in cfg.radii),
        "theta_samples": str(cfg.theta_samples),
    }
    if cfg.m is not None:
        run["m"] = str(cfg.m)
    if cfg.r is not None:
        run["r"] = f"{cfg.r:.17g}"
    if cfg.r0 is not None:
        run["r0"] = f"{cfg.r0:.17g}"
    if cfg.fourier_cos:
        run["fourier_cos"] = ",".join(f"{v:.17g}" for v in cfg.fourier_cos)
    if cfg.fourier_sin:
        run["fourier_sin"] = ",".join(f"{v:.17g}" for v in cfg.fourier_sin)
    parser["run"] = run
    if cfg.sweep_kind is not None:
        parser["sweep"] = {
            "kind": cfg.sweep_kind,
            "start": f"{cfg.sweep_start:.17g}",
            "stop": f"{cfg.sweep_stop:.17g}",
            "step": f"{cfg.sweep_step:.17g}",
        }
        if cfg.n_list:
            parser["sweep"]["n_list"] = ",".join(str(v) for v in cfg.n_list)
    parser["output"] = {"path": cfg.output}
    buf = io.StringIO()
    parser.write(buf)
    return buf.getvalue()


def _boundary_data(cfg: RunConfig, curve: BoundaryCurve):
    """Returns (f_shifted, exact_or_none, far_field)."""
    if cfg.data == "exterior-reference":
        far = cfg.far_field if cfg.far_field else reference.FAR_FIELD

        def f(theta):
            radius = geometry.rho(curve, theta)
            x, y = radius * np.cos(theta), radius * np.sin(theta)
            return reference.exterior_u(x, y) - far

        return f, reference.exterior_u, far
    if cfg.data == "constant":
        value = cfg.constant

        def const_exact(x, y):
            return np.full_like(np.asarray(x, dtype=float), value + cfg.far_field)

        return (lambda theta: np.full_like(np.asarray(theta, float), value)), (
            const_exact
        ), cfg.far_field

    def fourier(theta):
        theta = np.asarray(theta, dtype=float)
        out = np.full_like(theta, cfg.fourier_a0)
        for k, c in enumerate(cfg.fourier_cos, start=1):
            out += c * np.cos(k * theta)
        for k, s in enumerate(cfg.fourier_sin, start=1):
            out += s * np.sin(k * theta)
        return out

    return fourier, None, cfg.far_field


def _grid(cfg: RunConfig) -> np.ndarray:
    count = int(round((cfg.sweep_stop - cfg.sweep_start) / cfg.sweep_step))
    return cfg.sweep_start + cfg.sweep_step * np.arange(count + 1)


def cmd_solve(cfg: RunConfig, out_path: Path, dump_matrices: bool = False) -> int:
    curve = cfg.curve()
    f, exact, far = _boundary_data(cfg, curve)
    theta = 2.0 * np.pi * np.arange(cfg.theta_samples) / cfg.theta_samples
    rho_max = geometry.rho_extrema(curve)[1]
    rows = []
    ladder = {}
    for kind in cfg.methods():
        report = solvers.run_method(
            kind, curve, f, n=cfg.n, m=cfg.m_effective, r=cfg.r, r0=cfg.r0
        )
        if dump_matrices:
            matrix = _system_matrix(kind, cfg, curve)
            assembly.dump_matrix_csv(
                matrix, out_path.with_suffix(f".{kind.value}.matrix.csv")
            )
        for radius in cfg.radii:
            if radius < rho_max:
                continue
            values = solvers.evaluate_report(report, np.full_like(theta, radius), theta)
            if exact is not None:
                target = analysis._exact_shifted(exact, far)(
                    radius * np.cos(theta), radius * np.sin(theta)
                )
                errors = np.abs(values - target)
            else:
                errors = np.full_like(theta, np.nan)
            for t, v, e in zip(theta, values, errors):
                rows.append((kind.value, radius, t, v + far, e))
            ladder.setdefault(kind.value, []).append(float(np.max(errors)))
    with open(out_path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("method,r,theta,value,error\n")
        for name, radius, t, v, e in rows:
            fh.write(f"{name},{radius:.17g},{t:.17g},{v:.17g},{e:.17g}\n")
    if exact is not None and len(ladder) > 1:
        radii = [radius for radius in cfg.radii if radius >= rho_max]
        analysis.write_error_curves_csv(
            radii,
            {name: np.asarray(errs) for name, errs in ladder.items()},
            out_path.with_suffix(".errors.csv"),
        )
    return 0


def _system_matrix(kind: MethodKind, cfg: RunConfig, curve: BoundaryCurve):
    coll = geometry.collocation_points(curve, cfg.n)
    if kind is MethodKind.MTM:
        return assembly.build_S(coll, cfg.m_effective, cfg.r0)
    src = geometry.source_points(cfg.r, cfg.n)
    if kind is MethodKind.CMFS_CBF:
        return assembly.build_A(coll, src)
    if kind is MethodKind.CMFS_MBF:
        return assembly.build_A_hat(coll, src)
    params = assembly.MethodParams(
        r_source=cfg.r,
        r0=cfg.r0 if cfg.r0 is not None else cfg.r,
        dims=assembly.TrefftzDims(cfg.n, cfg.m_effective),
    )
    return assembly.build_SK(coll, params)


def cmd_sweep(cfg: RunConfig, out_path: Path, threads: int = 1) -> int:
    if cfg.sweep_kind is None:
        raise ConfigError("[sweep] section is required for the sweep command")
    grid = _grid(cfg)
    if cfg.sweep_kind == "s-r0":
        profile = analysis.cond_sweep_S(
            cfg.curve(), cfg.n, cfg.m_effective, grid, threads=threads
        )
        analysis.write_cond_profile_csv(profile, out_path)
        r0_min, cond_min = profile.argmin
        print(f"min {cond_min:.3f} at R0={r0_min:.3f}")
        return 0
    if cfg.sweep_kind == "k-compare":
        k1, k2 = analysis.cond_K_comparison(cfg.n, grid, threads=threads)
        with open(out_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("R,cond_K1,cond_K2,reliable\n")
            for r, c1, c2, ok in zip(grid, k1.conds, k2.conds, k1.reliable & k2.reliable):
                fh.write(f"{r:.17g},{c1:.17g},{c2:.17g},{int(ok)}\n")
        r_min, c_min = k1.argmin
        print(
            f"cond2(K2) constant {float(np.median(k2.conds)):.4f}; "
            f"min cond2(K1) {c_min:.3f} at R={r_min:.3f}"
        )
        return 0
    # a-vs-sk
    if not cfg.n_list:
        raise ConfigError("[sweep] n_list is required for kind=a-vs-sk")
    curve = cfg.curve()
    if cfg.r is None:
        raise ConfigError("[run] R is required for kind=a-vs-sk")
    cond_a, cond_sk = [], []
    for n in cfg.n_list:
        m = (n - 1) // 2
        coll = geometry.collocation_points(curve, n)
        src = geometry.source_points(cfg.r, n)
        cond_a.append(analysis.linalg.cond2(assembly.build_A(coll, src)))
        params = assembly.MethodParams(
            r_source=cfg.r, r0=cfg.r, dims=assembly.TrefftzDims(n, m)
        )
        cond_sk.append(analysis.linalg.cond2(assembly.build_SK(coll, params)))
    with open(out_path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("N,cond_A,cond_SK\n")
        for n, ca, cs in zip(cfg.n_list, cond_a, cond_sk):
            fh.write(f"{n},{ca:.17g},{cs:.17g}\n")
    for label, conds in (("A", cond_a), ("SK", cond_sk)):
        amp, base = analysis.growth_fit(cfg.n_list, conds)
        print(f"{label}: amplitude={amp:.3f} base={base:.3f}")
    return 0


def cmd_verify() -> int:
    return 0 if verify.run_all() else 1


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="mmfs",
        description="Exterior Laplace solvers and conditioning experiments",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("solve", "sweep"):
        p = sub.add_parser(name)
        p.add_argument("--config", required=True, type=Path)
        p.add_argument("--out", type=Path, default=None)
        p.add_argument("--threads", type=int, default=1)
        p.add_argument("--dump-matrices", action="store_true")
    sub.add_parser("verify")
    args = parser.parse_args(argv)

    if args.command == "verify":
        return cmd_verify()
    try:
        cfg = parse_config(args.config.read_text(encoding="utf-8"))
    except OSError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    out_path = args.out if args.out is not None else Path(cfg.output)
    try:
        if args.command == "solve":
            return cmd_solve(cfg, out_path, dump_matrices=args.dump_matrices)
        return cmd_sweep(cfg, out_path, threads=args.threads)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except MmfsError as exc:
        print(f"solve failed: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
