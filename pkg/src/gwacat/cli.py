"""Batch front-end: run instance checks, idempotent constructions, functor
computations, and corollary suites from the command line or a JSON config.

Exit status: 0 when every check passes, 1 on a check failure, 2 on a
config or I/O error.  JSON reports are deterministic for a fixed config
and seed (no timestamps inside the report payload).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import backend
from .algebra import GwaInstance, validate_instance, yx_power_identity
from .applications import (
    corollary_classical_check,
    corollary_quantized_check,
    corollary_simple_dim_check,
    corollary_weyl_check,
    make_classical,
    make_quantized,
    make_weyl,
    module_corpus,
    shipped_instances,
)
from .errors import GwacatError
from .functors import (
    frobenius_restriction_check,
    functor_F,
    functor_G,
    roundtrip_FG,
    roundtrip_GF,
    torsion_equals_eM,
)
from .idempotents import (
    compute_idempotent,
    iso_f_roundtrip,
    one_minus_e_divisibility,
    orbit_orthogonality_check,
)
from .modules import module_from_json, validate_module, z_torsion
from .polys import PolyRing
from .report import Report
from .scalars import ScalarRing


class ConfigError(Exception):
    pass


_INSTANCE_KEYS = {
    "weyl": {"kind", "p", "n"},
    "classical": {"kind", "v", "p", "n"},
    "quantized": {"kind", "m", "u", "l", "t", "v"},
}


def instance_from_config(cfg) -> GwaInstance:
    if isinstance(cfg, str):
        cfg = _parse_instance_string(cfg)
    if not isinstance(cfg, dict) or "kind" not in cfg:
        raise ConfigError(f"instance config must have a 'kind': {cfg!r}")
    kind = cfg["kind"]
    allowed = _INSTANCE_KEYS.get(kind)
    if allowed is None:
        raise ConfigError(f"unknown instance kind {kind!r}")
    unknown = set(cfg) - allowed
    if unknown:
        raise ConfigError(f"unknown instance keys {sorted(unknown)} for kind {kind!r}")
    try:
        if kind == "weyl":
            return make_weyl(int(cfg["p"]), int(cfg["n"]))
        if kind == "classical":
            ring = PolyRing(ScalarRing(int(cfg["p"]) ** int(cfg["n"])))
            v = cfg["v"]
            if isinstance(v, str):
                v = {"h": ring.h, "h^2": ring.h ** 2}.get(v)
                if v is None:
                    raise ConfigError(f"unsupported classical v string {cfg['v']!r}")
            else:
                v = ring(v)
            return make_classical(v, int(cfg["p"]), int(cfg["n"]))
        return make_quantized(
            int(cfg["u"]), int(cfg.get("v", 1)), int(cfg.get("t", 1)), int(cfg["l"]),
            m=int(cfg.get("m", 5)),
        )
    except GwacatError as exc:
        raise ConfigError(f"cannot build instance: {exc}") from exc


def _parse_instance_string(text: str) -> dict:
    kind, _, rest = text.partition(":")
    parts = [p for p in rest.split(",") if p]
    try:
        if kind == "weyl":
            return {"kind": "weyl", "p": int(parts[0]), "n": int(parts[1])}
        if kind == "classical":
            return {"kind": "classical", "v": parts[0], "p": int(parts[1]), "n": int(parts[2])}
        if kind == "quantized":
            keys = ("m", "u", "l", "t")
            out = {"kind": "quantized"}
            out.update({k: int(v) for k, v in zip(keys, parts)})
            return out
    except (IndexError, ValueError) as exc:
        raise ConfigError(f"malformed instance string {text!r}") from exc
    raise ConfigError(f"unknown instance kind in {text!r}")


def _load_module(instance: GwaInstance, path: str):
    try:
        data = json.loads(Path(path).read_text())
        return module_from_json(instance, data)
    except (OSError, json.JSONDecodeError, KeyError, GwacatError) as exc:
        raise ConfigError(f"cannot load module {path}: {exc}") from exc


def cmd_check_instance(instance: GwaInstance, **_) -> Report:
    report = validate_instance(instance)
    for n in range(1, 5):
        report.add(f"yx-power-{n}", f"y^{n} x^{n} = z phi(z)...phi^{n-1}(z)",
                   yx_power_identity(instance, n))
    return report


def cmd_idempotent(instance: GwaInstance, precision: int = 2, **_) -> Report:
    report = Report(f"idempotent engine at precision {precision}")
    data = compute_idempotent(instance, precision)
    report.add("crt-idempotent", "(e')^2 = e' and 1 - e' in zR/(tau)",
               data.e_prime * data.e_prime == data.e_prime, f"e' = {data.e_prime}")
    report.add("hensel-lift", "e^2 = e in R/(tau^N), e = e' mod tau",
               data.e * data.e == data.e, f"e = {data.e}")
    report.add("corner-unit", "e*tau = e*z*u and u*uInv = e",
               data.e * data.completion.ring(instance.tau())
               == data.e * data.completion.ring(instance.z) * data.u
               and data.u * data.u_inv == data.e,
               f"u = {data.u}")
    report.extend(orbit_orthogonality_check(instance, precision))
    report.extend(one_minus_e_divisibility(data))
    report.extend(iso_f_roundtrip(instance, precision))
    return report


def cmd_functor(instance: GwaInstance, which: str = "F", module: str = "", out: str = "", **_) -> Report:
    report = Report(f"functor {which}")
    M = _load_module(instance, module)
    if which == "F":
        result = functor_F(M)
    elif which == "G":
        from .functors import twisted_instance

        result = functor_G(module_from_json(twisted_instance(instance), json.loads(Path(module).read_text())), instance)
    else:
        raise ConfigError(f"unknown functor {which!r}")
    val = validate_module(result)
    report.add(f"functor-{which}", f"{which}(M) satisfies the GWA relations",
               val.passed, f"dim = {result.dim}")
    if out:
        Path(out).write_text(json.dumps(result.to_json(), indent=2, sort_keys=True) + "\n")
    return report


def cmd_roundtrip(instance: GwaInstance, module: str = "", **_) -> Report:
    report = Report("roundtrip G(F(M)) = M and F(G(N)) = N")
    M = _load_module(instance, module)
    try:
        roundtrip_GF(M)
        report.add("roundtrip-GF", "Theta: G(F(M)) -> M is an isomorphism", True)
    except GwacatError as exc:
        report.add("roundtrip-GF", "Theta: G(F(M)) -> M is an isomorphism", False, str(exc))
    try:
        roundtrip_FG(functor_F(M), instance)
        report.add("roundtrip-FG", "n -> t^0 n: N -> F(G(N)) is an isomorphism", True)
    except GwacatError as exc:
        report.add("roundtrip-FG", "n -> t^0 n: N -> F(G(N)) is an isomorphism", False, str(exc))
    return report


def cmd_torsion(instance: GwaInstance, module: str = "", **_) -> Report:
    M = _load_module(instance, module)
    report = torsion_equals_eM(M)
    basis = z_torsion(M)
    report.add("torsion-rank", "canonical torsion basis computed", True,
               f"rank {basis.rows.shape[0]} of {M.dim * M.t}")
    return report


def cmd_corollary(which: str = "weyl", seed: int = 0, **_) -> Report:
    drivers = {
        "weyl": corollary_weyl_check,
        "quantized": corollary_quantized_check,
        "classical": corollary_classical_check,
        "simple-dim": corollary_simple_dim_check,
    }
    driver = drivers.get(which)
    if driver is None:
        raise ConfigError(f"unknown corollary {which!r}")
    return driver(seed=seed)


def cmd_selftest(seed: int = 0, **_) -> Report:
    report = Report("selftest")
    for label, inst in shipped_instances().items():
        report.add(f"instance-{label}", "standing hypotheses", validate_instance(inst).passed)
        report.add(
            f"yx-powers-{label}",
            "y^n x^n = z phi(z)...phi^{n-1}(z), n = 1..8",
            all(yx_power_identity(inst, n) for n in range(1, 9)),
        )
        for M in module_corpus(inst, seed=seed):
            ok = validate_module(M).passed
            try:
                roundtrip_GF(M)
                roundtrip_FG(functor_F(M), inst)
                ok = ok and frobenius_restriction_check(functor_F(M), inst).passed
                ok = ok and torsion_equals_eM(M).passed
            except GwacatError as exc:
                report.add(f"module-{label}-{M.label}", "functor suite", False, str(exc))
                continue
            report.add(f"module-{label}-{M.label}", "functor suite", ok, f"dim = {M.dim}")
    return report


_COMMANDS = {
    "check-instance": cmd_check_instance,
    "idempotent": cmd_idempotent,
    "functor": cmd_functor,
    "roundtrip": cmd_roundtrip,
    "torsion": cmd_torsion,
}

_CONFIG_KEYS = {"instance", "seed", "precision", "commands", "out"}
_COMMAND_KEYS = {"command", "which", "module", "precision", "seed", "out"}


def run_config(cfg: dict) -> tuple:
    """Execute a JobConfig dict; returns (reports, all_passed)."""
    unknown = set(cfg) - _CONFIG_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys {sorted(unknown)}")
    commands = cfg.get("commands", [])
    if not isinstance(commands, list):
        raise ConfigError("'commands' must be a list")
    instance = instance_from_config(cfg["instance"]) if "instance" in cfg else None
    seed = int(cfg.get("seed", 0))
    precision = int(cfg.get("precision", 2))
    reports = []
    for entry in commands:
        if not isinstance(entry, dict) or "command" not in entry:
            raise ConfigError(f"malformed command entry {entry!r}")
        unknown = set(entry) - _COMMAND_KEYS
        if unknown:
            raise ConfigError(f"unknown command keys {sorted(unknown)}")
        name = entry["command"]
        kwargs = {k: v for k, v in entry.items() if k != "command"}
        kwargs.setdefault("seed", seed)
        kwargs.setdefault("precision", precision)
        if name in ("corollary",):
            reports.append(cmd_corollary(**kwargs))
        elif name == "selftest":
            reports.append(cmd_selftest(**kwargs))
        elif name in _COMMANDS:
            if instance is None:
                raise ConfigError(f"command {name!r} needs an instance")
            reports.append(_COMMANDS[name](instance, **kwargs))
        else:
            raise ConfigError(f"unknown command {name!r}")
    return reports, all(r.passed for r in reports)


def _emit(reports, passed, args) -> None:
    payload = {
        "backend": backend.BACKEND,
        "passed": passed,
        "reports": [r.to_json() for r in reports],
    }
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if args.out:
        outdir = Path(args.out)
        outdir.mkdir(parents=True, exist_ok=True)
        (outdir / "report.json").write_text(text)
        summary = "\n".join(line for r in reports for line in r.summary_lines()) + "\n"
        (outdir / "report.txt").write_text(summary)
    if args.json:
        sys.stdout.write(text)
    else:
        for r in reports:
            print("\n".join(r.summary_lines()))


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="gwa", description="exact workbench for generalized Weyl algebras"
    )
    parser.add_argument("command", choices=[
        "check-instance", "idempotent", "functor", "roundtrip", "torsion",
        "corollary", "selftest", "run",
    ])
    parser.add_argument("argument", nargs="?", default="",
                        help="functor name (F|G) or corollary name")
    parser.add_argument("--config", default="", help="JSON job config (for 'run')")
    parser.add_argument("--instance", default="", help="e.g. weyl:2,2 or quantized:5,2,4,2")
    parser.add_argument("--module", default="", help="module JSON file")
    parser.add_argument("--precision", type=int, default=2)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--out", default="", help="directory for report files")
    parser.add_argument("--json", action="store_true", help="print the JSON report")
    args = parser.parse_args(argv)

    try:
        if args.command == "run":
            if not args.config:
                raise ConfigError("'run' requires --config FILE")
            try:
                cfg = json.loads(Path(args.config).read_text())
            except (OSError, json.JSONDecodeError) as exc:
                raise ConfigError(f"cannot read config: {exc}") from exc
            reports, passed = run_config(cfg)
        elif args.command == "corollary":
            reports = [cmd_corollary(which=args.argument or "weyl", seed=args.seed)]
            passed = reports[0].passed
        elif args.command == "selftest":
            reports = [cmd_selftest(seed=args.seed)]
            passed = reports[0].passed
        else:
            if not args.instance:
                raise ConfigError(f"{args.command!r} requires --instance")
            instance = instance_from_config(args.instance)
            kwargs = {
                "precision": args.precision,
                "seed": args.seed,
                "module": args.module,
                "which": args.argument or "F",
            }
            reports = [_COMMANDS[args.command](instance, **kwargs)]
            passed = reports[0].passed
    except (ConfigError, GwacatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    _emit(reports, passed, args)
    return 0 if passed else 1


if __name__ == "__main__":
    sys.exit(main())
