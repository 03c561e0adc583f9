"""Command line front end: ``verify``, ``distances`` and ``variant``.

Runs are driven by a single JSON config; command-line flags override its
keys.  Exit status: 0 all checks pass, 1 a check failed, 2 usage or
config error, 3 numerical conditioning failure.
"""

from __future__ import annotations

import argparse
import copy
import json
import logging
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import counterexample as cx
from .mbasis import WeightError, WeightSpec, check_biorthogonality, check_reconstruction
from .projection import ConditioningError
from .report import Check, DistanceRow, ReportBundle, dumps
from .scalars import APPROX, EXACT, is_zero
from .space import Space
from .variants import (
    SupportError,
    SupportSpec,
    build_sigma,
    check_sigma,
    fourier_counterexample,
    fourier_space,
    supported_span_distance,
)

log = logging.getLogger("oddapprox")

EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_CONDITIONING = 0, 1, 2, 3
BIORTHOGONALITY_TOL = 1e-10


class ConfigError(ValueError):
    pass


DEFAULTS = {
    "weights": {"kind": "omega_power", "alpha": "2"},
    "mode": EXACT,
    "levels": {
        "M": None,
        "N": None,
        "biorthogonality_n": None,
        "reconstruction_n": 128,
        "norm_bound_n": 512,
        "odd_span_ks": [4, 8, 16, 32, 64],
        "control_degrees": None,
        "growth_k": 256,
        "growth_k_min": 32,
        "radii": ["1/2", "9/10", "99/100"],
        "random_rows": 20,
        "summability_levels": None,
    },
    "variant": {"kind": "identity"},
    "outputs": {"dir": None, "formats": ["json", "csv"], "plot_data": True},
    "tolerances": {"zero": 1e-12, "pivot": 1e-12, "abel_tail": 1e-3},
    "seed": 0,
}


def _merge(base: dict, over: dict, path="") -> dict:
    out = copy.deepcopy(base)
    for k, v in over.items():
        if k not in base:
            raise ConfigError(f"unknown config key {path + k!r}")
        if isinstance(base[k], dict) and k != "weights" and k != "variant":
            if not isinstance(v, dict):
                raise ConfigError(f"config key {path + k!r} must be an object")
            out[k] = _merge(base[k], v, path + k + ".")
        else:
            out[k] = v
    return out


@dataclass
class RunConfig:
    weights: WeightSpec
    mode: str
    M: int
    N: int
    biorthogonality_n: int
    reconstruction_n: int
    norm_bound_n: int
    odd_span_ks: list[int]
    control_degrees: list[int]
    growth_k: int
    growth_k_min: int
    radii: list[Fraction]
    random_rows: int
    summability_levels: list[int] | None
    variant: dict
    out_dir: str | None
    formats: list[str]
    plot_data: bool
    zero_tol: float
    pivot_tol: float
    abel_tail_tol: float
    seed: int
    raw: dict = field(default_factory=dict, repr=False)

    @classmethod
    def from_dict(cls, d: dict | None = None) -> "RunConfig":
        raw = _merge(DEFAULTS, d or {})
        try:
            weights = WeightSpec.from_dict(raw["weights"])
        except (WeightError, KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise ConfigError(f"bad weights: {exc}") from exc
        mode = raw["mode"]
        if mode not in (EXACT, APPROX):
            raise ConfigError(f"mode must be 'exact' or 'approx', not {mode!r}")
        lv = raw["levels"]
        default_level = 64 if mode == EXACT else 256
        M = lv["M"] if lv["M"] is not None else default_level
        N = lv["N"] if lv["N"] is not None else default_level
        bio = lv["biorthogonality_n"] if lv["biorthogonality_n"] is not None else (128 if mode == EXACT else 512)
        try:
            radii = [Fraction(str(r)) for r in lv["radii"]]
        except (ValueError, ZeroDivisionError) as exc:
            raise ConfigError(f"bad radius: {exc}") from exc
        for name, v in (("M", M), ("N", N), ("biorthogonality_n", bio), ("reconstruction_n", lv["reconstruction_n"]),
                        ("norm_bound_n", lv["norm_bound_n"]), ("growth_k", lv["growth_k"]),
                        ("growth_k_min", lv["growth_k_min"]), ("random_rows", lv["random_rows"])):
            if not isinstance(v, int) or isinstance(v, bool) or v < 0:
                raise ConfigError(f"levels.{name} must be a non-negative integer")
        if M < 1 or N < 1:
            raise ConfigError("levels M and N must be positive")
        if any(not 0 < r < 1 for r in radii):
            raise ConfigError("radii must lie in (0, 1)")
        ks = [k for k in lv["odd_span_ks"] if k <= N]
        if any(not isinstance(k, int) or k < 0 for k in lv["odd_span_ks"]):
            raise ConfigError("levels.odd_span_ks must be non-negative integers")
        control = lv["control_degrees"]
        if control is None:
            top = 2 * M + 1
            control = sorted({d for d in (1, 3, 5, 9, 17, 33, 65, 129, 257, 513) if d < top} | {top})
        tol = raw["tolerances"]
        for name in ("zero", "pivot", "abel_tail"):
            if not isinstance(tol[name], (int, float)) or not tol[name] > 0:
                raise ConfigError(f"tolerances.{name} must be positive")
        out = raw["outputs"]
        formats = out["formats"]
        if isinstance(formats, str):
            formats = [f for f in formats.split(",") if f]
        if any(f not in ("json", "csv") for f in formats):
            raise ConfigError("outputs.formats may contain only 'json' and 'csv'")
        variant = raw["variant"]
        if not isinstance(variant, dict) or variant.get("kind") not in ("identity", "support", "fourier"):
            raise ConfigError("variant.kind must be identity, support or fourier")
        if variant["kind"] == "support":
            try:
                SupportSpec.from_dict(variant.get("support"))
            except SupportError as exc:
                raise ConfigError(str(exc)) from exc
        seed = raw["seed"]
        if not isinstance(seed, int):
            raise ConfigError("seed must be an integer")
        return cls(weights, mode, M, N, bio, lv["reconstruction_n"], lv["norm_bound_n"], sorted(set(ks)),
                   list(control), lv["growth_k"], lv["growth_k_min"], radii, lv["random_rows"],
                   lv["summability_levels"], variant, out["dir"], list(formats), bool(out["plot_data"]),
                   float(tol["zero"]), float(tol["pivot"]), float(tol["abel_tail"]), seed, raw)

    @classmethod
    def load(cls, path: str | Path | None, overrides: dict | None = None) -> "RunConfig":
        data = {}
        if path is not None:
            try:
                data = json.loads(Path(path).read_text())
            except (OSError, json.JSONDecodeError) as exc:
                raise ConfigError(f"cannot read config {path}: {exc}") from exc
            if not isinstance(data, dict):
                raise ConfigError("config must be a JSON object")
        for dotted, value in (overrides or {}).items():
            node = data
            keys = dotted.split(".")
            for k in keys[:-1]:
                node = node.setdefault(k, {})
            node[keys[-1]] = value
        return cls.from_dict(data)

    def echo(self) -> dict:
        return {
            "weights": self.weights.to_dict(),
            "mode": self.mode,
            "levels": {
                "M": self.M, "N": self.N, "biorthogonality_n": self.biorthogonality_n,
                "reconstruction_n": self.reconstruction_n, "norm_bound_n": self.norm_bound_n,
                "odd_span_ks": self.odd_span_ks, "control_degrees": self.control_degrees,
                "growth_k": self.growth_k, "growth_k_min": self.growth_k_min,
                "radii": [str(r) for r in self.radii], "random_rows": self.random_rows,
                "summability_levels": self.summability_levels,
            },
            "variant": self.variant,
            "tolerances": {"zero": self.zero_tol, "pivot": self.pivot_tol, "abel_tail": self.abel_tail_tol},
            "seed": self.seed,
        }

    def space(self, sigma=None) -> Space:
        return Space(self.weights, self.mode, sigma, zero_tol=self.zero_tol, pivot_tol=self.pivot_tol)


# sections -----------------------------------------------------------------


def _timed(bundle: ReportBundle, name: str, fn):
    t = time.perf_counter()
    out = fn()
    log.info("%s: %.2fs", name, time.perf_counter() - t)
    return out


def basis_sections(cfg: RunConfig, space: Space) -> list[Check]:
    """Biorthogonality, reconstruction of e_n, and the monomial norm bound."""
    worst = check_biorthogonality(space.cache, cfg.biorthogonality_n)
    ok = is_zero(worst) if cfg.mode == EXACT else float(worst) < BIORTHOGONALITY_TOL
    checks = [Check("biorthogonality", ok, worst, None if cfg.mode == EXACT else BIORTHOGONALITY_TOL,
                    f"0 <= n, m <= {cfg.biorthogonality_n}")]
    bad = check_reconstruction(space.cache, cfg.reconstruction_n)
    checks.append(Check("reconstruction_of_unit_vectors", not bad, None, None,
                        f"0 <= n <= {cfg.reconstruction_n}, both bases", bad))
    rows = space.monomial_norm_check(cfg.norm_bound_n)
    if rows and rows[0].passed is None:
        checks.append(Check("monomial_norm_bound", None, max(r.norm for r in rows), None,
                            f"n <= {cfg.norm_bound_n}", details={"note": "bound not claimed for these weights"}))
    else:
        failed = [(r.degree, r.norm) for r in rows if not r.passed]
        tight = max(rows, key=lambda r: r.norm / r.bound)
        checks.append(Check("monomial_norm_bound", not failed, tight.norm, tight.bound, f"n <= {cfg.norm_bound_n}",
                            failed, details={"worst_ratio": tight.norm / tight.bound, "at_degree": tight.degree}))
    return checks


def core_sections(cfg: RunConfig, space: Space, bundle: ReportBundle) -> cx.WitnessPair:
    """Everything the ``verify`` command reports; shared with the variant runs."""
    bundle.add(_timed(bundle, "basis", lambda: basis_sections(cfg, space)))
    pair = cx.make_witnesses(space, cfg.M, cfg.N)
    bundle.add(cx.check_f_odd(space, pair))
    bundle.add(cx.check_g_perp_odd(space, pair))
    bundle.add(cx.check_pairing(space, pair))
    checks, odd_rows, all_rows = _timed(bundle, "headline", lambda: cx.headline_contrast(
        space, pair, cfg.odd_span_ks, bundle.notices))
    bundle.add(checks)
    bundle.tables["odd_span_distances"] = odd_rows
    bundle.tables["all_span_distances"] = all_rows
    return pair


def cmd_verify(cfg: RunConfig) -> ReportBundle:
    bundle = ReportBundle("verify", cfg.echo())
    core_sections(cfg, cfg.space(), bundle)
    return bundle


def cmd_distances(cfg: RunConfig) -> ReportBundle:
    bundle = ReportBundle("distances", cfg.echo())
    space = cfg.space()
    pair = cx.make_witnesses(space, cfg.M, cfg.N)
    control = _timed(bundle, "control", lambda: cx.control_projection(space, pair, cfg.control_degrees, bundle.notices))
    bundle.tables["all_polynomials"] = control
    dists = [r.dist_sq for r in control]
    strict = all(b < a for a, b in zip(dists, dists[1:]))
    last = control[-1]
    final_zero = last.level >= 2 * cfg.M + 1 and (
        is_zero(last.dist_sq) if cfg.mode == EXACT else last.distance <= 1e-6)
    bundle.add(Check("all_polynomials_strictly_decreasing", strict, dists[-1], None,
                     f"degrees {cfg.control_degrees[0]}..{cfg.control_degrees[-1]}"))
    bundle.add(Check("all_polynomials_final_zero", final_zero, last.dist_sq, None, f"degree {last.level}"))
    bundle.add(Check("all_polynomials_below_0.01", last.distance < 0.01, last.distance, 0.01, f"degree {last.level}"))

    checks, odd_rows, _ = cx.headline_contrast(space, pair, cfg.odd_span_ks, bundle.notices)
    bundle.tables["odd_polynomials"] = odd_rows
    bundle.add([c for c in checks if c.name.startswith("odd_span")])

    methods = cx.default_methods(space, pair, cfg.radii, cfg.random_rows, cfg.seed)
    levels = cfg.summability_levels
    if levels is None:
        top = 2 * cfg.M - 1
        levels = sorted({n for n in (0, 1, 2, 3, 5, 9, 17, 33, 65, 129, 257) if n <= top} | {top})
    rows = _timed(bundle, "summability", lambda: cx.summability_failure_report(
        space, pair, methods, levels, cfg.abel_tail_tol))
    bundle.tables["summability"] = [r for r in rows if not r.method.startswith("abel")]
    bundle.tables["radial_dilates"] = [r for r in rows if r.method.startswith("abel")]

    if space.weights.nth_root_limit_one:
        f = cx.witness_f(space, pair)
        growth = _timed(bundle, "growth", lambda: cx.partial_sum_norm_growth(space, f, cfg.growth_k))
        bundle.add(cx.growth_checks(growth, k_min=cfg.growth_k_min))
        bundle.plots["partial_sum_growth"] = (["k", "norm", "kth_root"], [[r.k, r.norm, r.root] for r in growth])
    else:
        bundle.notices.append("partial-sum growth skipped: weights lack the n-th root limit flag")

    bundle.plots["all_polynomials"] = (["degree", "distance"], [[r.level, r.distance] for r in control])
    bundle.plots["odd_polynomials"] = (["degree", "distance", "bound"],
                                       [[r.level, r.distance, r.bound] for r in odd_rows])
    for m in ("taylor", "cesaro"):
        bundle.plots[f"summability_{m}"] = (["level", "distance", "bound"],
                                            [[r.level, r.distance, r.bound] for r in rows if r.method == m])
    return bundle


def cmd_variant(cfg: RunConfig) -> ReportBundle:
    kind = cfg.variant["kind"]
    bundle = ReportBundle("variant", cfg.echo())
    if kind == "identity":
        core_sections(cfg, cfg.space(), bundle)
        return bundle
    if kind == "support":
        spec = SupportSpec.from_dict(cfg.variant.get("support"))
        bound = 2 * max(cfg.M, cfg.N, cfg.norm_bound_n // 2, max(cfg.odd_span_ks, default=0)) + 3
        try:
            sigma = build_sigma(spec, bound)
        except SupportError as exc:
            raise ConfigError(str(exc)) from exc
        bundle.add(check_sigma(sigma, bound, spec))
        bundle.add(Check("support_both_infinite", spec.both_infinite_certificate, None, None,
                         details={"support": spec.to_dict()}))
        space = cfg.space(sigma)
        pair = core_sections(cfg, space, bundle)
        checks, rows = supported_span_distance(space, pair, spec, cfg.odd_span_ks, bundle.notices)
        bundle.add(checks)
        bundle.tables["support_span_distances"] = rows
        return bundle
    space = fourier_space(cfg.weights, cfg.mode, zero_tol=cfg.zero_tol, pivot_tol=cfg.pivot_tol)
    bundle.add(basis_sections(cfg, space))
    pair = cx.make_witnesses(space, cfg.M, cfg.N)
    bundle.add(cx.check_f_odd(space, pair))
    checks, tables = fourier_counterexample(space, pair, cfg.odd_span_ks, notices=bundle.notices)
    bundle.add(checks)
    bundle.tables.update(tables)
    return bundle


COMMANDS = {"verify": cmd_verify, "distances": cmd_distances, "variant": cmd_variant}


def _parse_variant(text: str) -> dict:
    if text in ("identity", "fourier"):
        return {"kind": text}
    if text.startswith("support:"):
        return {"kind": "support", "support": text.split(":", 1)[1]}
    raise ConfigError(f"--variant must be identity, fourier or support:<name>, not {text!r}")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="oddapprox", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        s = sub.add_parser(name)
        s.add_argument("--config", help="JSON run configuration")
        s.add_argument("--mode", choices=[EXACT, APPROX])
        s.add_argument("--level-m", type=int, dest="level_m")
        s.add_argument("--level-n", type=int, dest="level_n")
        s.add_argument("--out", help="directory for JSON/CSV reports")
        s.add_argument("--format", help="comma-separated subset of json,csv")
        s.add_argument("--seed", type=int, help="seed for random triangular rows")
        s.add_argument("--variant", help="identity | fourier | support:<evens|odds|squares>")
        s.add_argument("--no-plot-data", action="store_true", help="skip plot_*.csv files")
        s.add_argument("-v", "--verbose", action="store_true")
    return p


def _overrides(args) -> dict:
    o = {}
    if args.mode:
        o["mode"] = args.mode
    if args.level_m is not None:
        o["levels.M"] = args.level_m
    if args.level_n is not None:
        o["levels.N"] = args.level_n
    if args.out:
        o["outputs.dir"] = args.out
    if args.format:
        o["outputs.formats"] = args.format
    if args.seed is not None:
        o["seed"] = args.seed
    if args.variant:
        o["variant"] = _parse_variant(args.variant)
    if args.no_plot_data:
        o["outputs.plot_data"] = False
    return o


def run(argv: Sequence[str] | None = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        cfg = RunConfig.load(args.config, _overrides(args))
        if args.command == "variant" and args.variant is None and args.config is None:
            raise ConfigError("variant command needs --variant or a config with a variant section")
        bundle = COMMANDS[args.command](cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ConditioningError as exc:
        print(f"conditioning failure: {exc} {exc.diagnostics}", file=sys.stderr)
        return EXIT_CONDITIONING
    if cfg.out_dir:
        bundle.write(cfg.out_dir, cfg.formats, cfg.plot_data)
    if "json" in cfg.formats or not cfg.out_dir:
        stdout.write(dumps(bundle.to_json()) + "\n")
    for c in bundle.failed:
        print(f"FAILED {c.name} {c.window or ''}", file=sys.stderr)
    return EXIT_OK if bundle.ok else EXIT_FAIL


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
