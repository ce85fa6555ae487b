"""Command-line front door: benchmark curves, rate sweeps, Gaussian scenes, oracle campaigns.

Four subcommands (``fig2``, ``scan``, ``scene``, ``oracle``) write
machine-readable CSV/JSON files. Every output embeds the fully resolved
configuration and its SHA-256 hash, floats are printed with 17 significant
digits, and identical invocations produce byte-identical files.

Exit codes: 0 success, 1 usage error, 2 degenerate-state error,
3 oracle-tolerance failure.
"""

from __future__ import annotations

import argparse
import dataclasses
import hashlib
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from . import __version__
from .emission import RadiativeCoupling, curve_set
from .errors import PairEmitError, ZeroNormState
from .gaussian import GaussianPacket, Scene, build_overlap_table
from .oracle import run_campaign
from .scenario import Fig2Params, fig2_table, scan
from .states import LABELS, ExchangeSymmetry, normalizations, validate

__all__ = ["main", "entry"]


class UsageError(PairEmitError):
    """Bad flags, bad config keys, or malformed argument values."""


class _Parser(argparse.ArgumentParser):
    # argparse exits with code 2 on bad usage; route through our own codes instead.
    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(message)


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _parse_bool(text: str) -> bool:
    value = text.strip().lower()
    if value == "on":
        return True
    if value == "off":
        return False
    raise UsageError(f"expected 'on' or 'off', got {text!r}")


def _parse_vector(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(part) for part in text.split(","))
    except ValueError as exc:
        raise UsageError(f"expected comma-separated numbers, got {text!r}") from exc


@dataclass(frozen=True)
class Opt:
    """One CLI option; also the unit of config-file merging."""

    flag: str
    convert: Callable[[str], object]
    default: object
    help: str

    @property
    def dest(self) -> str:
        return self.flag.lstrip("-").replace("-", "_")


_COMMON = [
    Opt("--gamma0", float, 1.0, "base emission rate for the fixed direction"),
    Opt("--t-max", float, 5.0, "last sampled time, in units of 1/gamma0"),
    Opt("--steps", int, 200, "number of uniform time samples on [0, t_max]"),
    Opt("--mixture-exchange", _parse_bool, True,
        "on: keep the exchange cross term in the mixture kernels (statistics-dependent); "
        "off: drop it (single statistics-independent mixture)"),
]

_OPTIONS: dict[str, list[Opt]] = {
    "fig2": [
        Opt("--s", float, 0.7, "overlap <psi|phi> of the two atoms, in [0, 1)"),
        *_COMMON,
        Opt("--out", str, "curves.csv", "output CSV path (JSON sidecar written next to it)"),
    ],
    "scan": [
        Opt("--s-from", float, 0.0, "first overlap value"),
        Opt("--s-to", float, 0.9, "last overlap value (< 1)"),
        Opt("--points", int, 10, "number of grid points"),
        Opt("--gamma0", float, 1.0, "base emission rate"),
        Opt("--mixture-exchange", _parse_bool, True, "mixture kernel mode, on|off"),
        Opt("--out", str, "rates.csv", "output CSV path"),
    ],
    "scene": [
        Opt("--separation", float, 2.0, "distance between packet centers along the first axis"),
        Opt("--sigma", float, 1.0, "common position spread of both packets"),
        Opt("--k", float, 1.0, "photon wavenumber (absorption and emission recoil magnitude)"),
        Opt("--dim", int, 1, "spatial dimension, 1..3"),
        Opt("--beam", _parse_vector, None, "beam axis, comma-separated; default first axis"),
        Opt("--omega", _parse_vector, None, "emission direction; default beam axis"),
        Opt("--mass", float, 1.0, "atomic mass (hbar = 1)"),
        Opt("--delay", float, 0.0, "time between absorption and emission onset"),
        *_COMMON,
        Opt("--out", str, "scene.csv", "output CSV path (JSON sidecar written next to it)"),
    ],
    "oracle": [
        Opt("--seeds", int, 100, "number of random tables"),
        Opt("--seed0", int, 0, "first seed"),
        Opt("--tol", float, 1e-12, "relative tolerance for closed-form vs brute-force"),
        Opt("--out", str, "oracle_report.json", "output JSON report path"),
    ],
}


def _build_parser() -> _Parser:
    parser = _Parser(prog="pairemit", description=__doc__)
    parser.add_argument("--version", action="version", version=f"pairemit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for command, opts in _OPTIONS.items():
        p = sub.add_parser(command, description=f"pairemit {command}")
        p.add_argument("--config", default=None, help="key-value file overriding defaults")
        for opt in opts:
            # Explicit CLI values must win over config-file values, so the
            # parser default is a sentinel and real defaults merge later.
            p.add_argument(opt.flag, dest=opt.dest, type=str, default=None, help=opt.help)
    return parser


def _read_config_file(path: str, opts: list[Opt]) -> dict[str, object]:
    known = {opt.dest: opt for opt in opts}
    resolved: dict[str, object] = {}
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read config file {path}: {exc}") from exc
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in known:
            raise UsageError(f"{path}:{lineno}: unknown config key {key!r}")
        resolved[key] = known[key].convert(value)
    return resolved


def _resolve(args: argparse.Namespace, opts: list[Opt]) -> dict[str, object]:
    from_file = _read_config_file(args.config, opts) if args.config else {}
    resolved: dict[str, object] = {}
    for opt in opts:
        cli_value = getattr(args, opt.dest)
        if cli_value is not None:
            resolved[opt.dest] = opt.convert(cli_value)
        elif opt.dest in from_file:
            resolved[opt.dest] = from_file[opt.dest]
        else:
            resolved[opt.dest] = opt.default
    return resolved


def _config_blob(command: str, cfg: dict[str, object]) -> tuple[str, str]:
    payload = {"command": command, **cfg}
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return blob, hashlib.sha256(blob.encode("utf-8")).hexdigest()


def _write_csv(path: Path, command: str, cfg: dict[str, object],
               header: list[str], rows: list[list[float]]) -> str:
    blob, digest = _config_blob(command, cfg)
    lines = [
        f"# pairemit {__version__} {command}",
        f"# config: {blob}",
        f"# config_sha256: {digest}",
        ",".join(header),
    ]
    lines.extend(",".join(_fmt(x) for x in row) for row in rows)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")
    return digest


def _write_json(path: Path, payload: dict) -> None:
    path.write_text(
        json.dumps(payload, sort_keys=True, indent=2) + "\n", encoding="utf-8", newline="\n"
    )


def _sidecar_path(csv_path: Path) -> Path:
    return csv_path.with_suffix(".json")


def _curves_csv_and_sidecar(command: str, cfg: dict[str, object], table, out_path: Path) -> None:
    coupling = RadiativeCoupling(float(cfg["gamma0"]))
    times = np.linspace(0.0, float(cfg["t_max"]), int(cfg["steps"]))
    exchange_on = bool(cfg["mixture_exchange"])

    curves = curve_set(table, coupling, times, mixture_exchange=exchange_on)
    baseline = curve_set(table, coupling, times, mixture_exchange=False)
    curves["mix_noexchange"] = baseline["mix_noexchange"]
    if exchange_on:
        columns = ["boson_sup", "fermion_sup", "mix_boson", "mix_fermion", "mix_noexchange"]
    else:
        columns = ["boson_sup", "fermion_sup", "mix_noexchange"]

    header = ["t", *columns]
    rows = [
        [float(times[i]), *(float(curves[c].values[i]) for c in columns)]
        for i in range(times.size)
    ]
    digest = _write_csv(out_path, command, cfg, header, rows)

    from .emission import kernel_mix_phi, kernel_mix_psi, kernel_superposition, rate

    rates: dict[str, float] = {"mix_noexchange": coupling.gamma0}
    norms: dict[str, dict[str, float]] = {}
    for name, sym in (("boson", ExchangeSymmetry.BOSON), ("fermion", ExchangeSymmetry.FERMION)):
        rates[f"{name}_sup"] = rate(kernel_superposition(table, sym), coupling)
        rates[f"mix_{name}_psi"] = rate(kernel_mix_psi(table, sym, True), coupling)
        rates[f"mix_{name}_phi"] = rate(kernel_mix_phi(table, sym, True), coupling)
        norms[name] = dataclasses.asdict(normalizations(table, sym))
    blob, _ = _config_blob(command, cfg)
    payload = {
        "config": json.loads(blob),
        "config_sha256": digest,
        "rates": rates,
        "normalizations": norms,
    }
    if command == "scene":
        report = validate(table, strict=True)
        payload["table"] = {
            "labels": [label.value for label in LABELS],
            "re": table.matrix.real.tolist(),
            "im": table.matrix.imag.tolist(),
        }
        payload["validation"] = {
            "hermitian": report.hermitian,
            "unit_diagonal": report.unit_diagonal,
            "bound_violations": len(report.bound_violations),
            "min_eigenvalue": report.min_eigenvalue,
            "psd": report.psd,
        }
    _write_json(_sidecar_path(out_path), payload)


def cmd_fig2(cfg: dict[str, object]) -> int:
    s = float(cfg["s"])
    if s == 1.0:
        raise ZeroNormState(
            "s = 1 gives identical atoms: the fermionic pair state has zero norm "
            "and no fermion curves exist"
        )
    params = Fig2Params(
        s=s, gamma0=float(cfg["gamma0"]), t_max=float(cfg["t_max"]), steps=int(cfg["steps"])
    )
    _curves_csv_and_sidecar("fig2", cfg, fig2_table(params.s), Path(str(cfg["out"])))
    return 0


def cmd_scan(cfg: dict[str, object]) -> int:
    rows = scan(
        float(cfg["s_from"]),
        float(cfg["s_to"]),
        int(cfg["points"]),
        mixture_exchange=bool(cfg["mixture_exchange"]),
        gamma0=float(cfg["gamma0"]),
    )
    header = list(rows[0].keys())
    _write_csv(
        Path(str(cfg["out"])),
        "scan",
        cfg,
        header,
        [[float(row[k]) for k in header] for row in rows],
    )
    return 0


def _unit(vec: tuple[float, ...]) -> tuple[float, ...]:
    arr = np.asarray(vec, dtype=float)
    norm = float(np.linalg.norm(arr))
    if norm == 0.0:
        raise UsageError("axis vectors must be nonzero")
    return tuple(float(x) for x in arr / norm)


def cmd_scene(cfg: dict[str, object]) -> int:
    dim = int(cfg["dim"])
    if dim not in (1, 2, 3):
        raise UsageError(f"--dim must be 1, 2 or 3, got {dim}")
    beam = cfg["beam"] if cfg["beam"] is not None else tuple(np.eye(dim)[0])
    omega = cfg["omega"] if cfg["omega"] is not None else beam
    beam = _unit(tuple(beam))
    omega = _unit(tuple(omega))
    if len(beam) != dim or len(omega) != dim:
        raise UsageError("--beam and --omega must have --dim components")
    cfg = {**cfg, "beam": list(beam), "omega": list(omega)}
    sigma = float(cfg["sigma"])
    center_psi = np.zeros(dim)
    center_phi = np.zeros(dim)
    center_phi[0] = float(cfg["separation"])
    scene = Scene(
        packet_psi=GaussianPacket(center_psi, np.zeros(dim), sigma),
        packet_phi=GaussianPacket(center_phi, np.zeros(dim), sigma),
        k_abs=float(cfg["k"]),
        beam_axis=np.asarray(beam),
        omega_dir=np.asarray(omega),
        mass=float(cfg["mass"]),
        delay=float(cfg["delay"]),
    )
    _curves_csv_and_sidecar("scene", cfg, build_overlap_table(scene), Path(str(cfg["out"])))
    return 0


def cmd_oracle(cfg: dict[str, object]) -> int:
    report = run_campaign(
        n_seeds=int(cfg["seeds"]),
        tolerance=float(cfg["tol"]),
        seed0=int(cfg["seed0"]),
    )
    blob, digest = _config_blob("oracle", cfg)
    payload = {
        "config": json.loads(blob),
        "config_sha256": digest,
        "n_seeds": report.n_seeds,
        "tolerance": report.tolerance,
        "max_residuals": {k: report.max_residuals[k] for k in sorted(report.max_residuals)},
        "passed": report.passed,
        "failures": [
            {
                "seed": f.seed,
                "statistics": f.statistics,
                "check": f.name,
                "closed_form": [f.closed_form.real, f.closed_form.imag],
                "bruteforce": [f.bruteforce.real, f.bruteforce.imag],
                "residual": f.residual,
                "detail": f.detail,
            }
            for f in report.failures
        ],
    }
    _write_json(Path(str(cfg["out"])), payload)
    if not report.passed:
        print(
            f"oracle campaign FAILED: {len(report.failures)} residual(s) above {report.tolerance}",
            file=sys.stderr,
        )
        return 3
    return 0


_DISPATCH = {
    "fig2": cmd_fig2,
    "scan": cmd_scan,
    "scene": cmd_scene,
    "oracle": cmd_oracle,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        cfg = _resolve(args, _OPTIONS[args.command])
        return _DISPATCH[args.command](cfg)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except ZeroNormState as exc:
        print(f"degenerate state (zero norm): {exc}", file=sys.stderr)
        return 2
    except PairEmitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entry() -> None:
    raise SystemExit(main())
