"""
Command-line front end.

Exit codes: 0 success, 1 domain error (including unreadable config or
unwritable output), 2 verification failure, 3 oracle non-convergence.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import dataclasses
import json
import math
import sys

from .core import (
    DomainError,
    OscillatorPair,
    coupling_from_frequencies,
    critical_coupling,
    normal_modes,
    squeezing_from_frequencies,
)
from .gaussian import Temperature, log_negativity, thermal_covariance
from .metrology import ProbeSpec, snr_bound_interacting, snr_bound_squeezed_probe
from .oracle import ConvergenceError, FockConfig, ground_state, oracle_duan, oracle_log_negativity, thermal_state
from .sweep import PRESETS, Axis, SweepSpec, _number, run_point, run_sweep, witness_report, write_csv
from .verify import run_verify
from .witness import duan_ground

EXIT_OK, EXIT_DOMAIN, EXIT_VERIFY, EXIT_CONVERGENCE = 0, 1, 2, 3

# Keys accepted in a config file; values are parsed like the matching flags.
CONFIG_TYPES = {
    "omega": float, "Omega": float, "g": float, "g_ratio": float,
    "beta": float, "beta_omega_minus": float, "nmax": int,
    "mean_excitation": float, "time": float, "noise_squeezing": float,
    "format": str, "out": str, "preset": str, "quantity": str,
    "axis1": str, "axis2": str, "form": str, "omega_minus": float, "omega_plus": float,
    "workers": int,
}
DEFAULTS = {"omega": 1.0, "Omega": 1.0, "mean_excitation": 1.0, "time": 1.0,
            "noise_squeezing": 0.0, "workers": 1}


def read_config(path):
    """Flat ``key = value`` file; ``#`` starts a comment."""
    values = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise DomainError(f"{path}:{lineno}: expected key = value", "config syntax")
            key, value = (part.strip() for part in line.split("=", 1))
            key = key.replace("-", "_")
            if key not in CONFIG_TYPES:
                raise DomainError(f"{path}:{lineno}: unknown key {key!r}", "config key")
            values[key] = CONFIG_TYPES[key](value)
    return values


def _settings(args):
    # flags > config file > defaults
    merged = dict(DEFAULTS)
    if args.config:
        merged.update(read_config(args.config))
    merged.update({k: v for k, v in vars(args).items() if v is not None and k in CONFIG_TYPES})
    return merged


def _pair(s):
    if s.get("g") is not None and s.get("g_ratio") is not None:
        raise DomainError("give either --g or --g-ratio, not both", "--g xor --g-ratio")
    g = s.get("g")
    if g is None:
        g = s.get("g_ratio", 0.0) * critical_coupling(s["omega"], s["Omega"])
    return OscillatorPair(s["omega"], s["Omega"], g)


def _temperature(s, pair):
    if s.get("beta") is not None and s.get("beta_omega_minus") is not None:
        raise DomainError("give either --beta or --beta-omega-minus, not both", "--beta xor --beta-omega-minus")
    if s.get("beta_omega_minus") is not None:
        return Temperature(s["beta_omega_minus"] / normal_modes(pair).omega_minus)
    return Temperature(s.get("beta", math.inf))


def _oracle_config(s):
    return FockConfig(s["nmax"]) if s.get("nmax") else None


def _flatten(record, prefix=""):
    flat = {}
    for key, value in record.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            flat.update(_flatten(value, name + "."))
        else:
            flat[name] = value
    return flat


def _emit(record, s, fh):
    if s.get("format") == "csv":
        flat = _flatten(record)
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(flat.keys())
        writer.writerow([f"{v:.17g}" if isinstance(v, float) else v for v in flat.values()])
    else:
        fh.write(json.dumps(record, indent=2) + "\n")


def _output(s):
    if s.get("out"):
        return open(s["out"], "w", newline="")
    return contextlib.nullcontext(sys.stdout)


def cmd_modes(s):
    pair = _pair(s)
    return run_point(pair)["normal_modes"] | {"labels_swapped": pair.swapped}


def cmd_witness(s):
    pair = _pair(s)
    temp = _temperature(s, pair)
    if s.get("form"):
        if not temp.is_ground:
            raise DomainError("--form selects a ground-state closed form; drop --beta", "form needs ground state")
        record = duan_ground(pair, s["form"]).as_dict()
    else:
        record = witness_report(pair, temp).as_dict()
    cfg = _oracle_config(s)
    if cfg:
        state = ground_state(pair, cfg) if temp.is_ground else thermal_state(pair, temp, cfg)
        record["oracle_value"] = oracle_duan(state)
    return record


def cmd_negativity(s):
    pair = _pair(s)
    temp = _temperature(s, pair)
    result = log_negativity(thermal_covariance(pair, temp))
    record = {"nu_tilde_minus": result.nu_tilde_minus, "log_negativity": result.log_negativity,
              "entangled": result.entangled}
    cfg = _oracle_config(s)
    if cfg:
        state = ground_state(pair, cfg) if temp.is_ground else thermal_state(pair, temp, cfg)
        record["oracle_log_negativity"] = oracle_log_negativity(state)
    return record


def cmd_snr(s):
    probe = ProbeSpec(s["mean_excitation"], s["time"], s["noise_squeezing"])
    record = {"squeezed_probe": snr_bound_squeezed_probe(probe).as_dict()}
    if probe.noise_squeezing == 0.0:
        record["interacting"] = snr_bound_interacting(_pair(s), probe).as_dict()
    return record


def cmd_point(s):
    pair = _pair(s)
    return run_point(pair, _temperature(s, pair),
                     ProbeSpec(s["mean_excitation"], s["time"], s["noise_squeezing"]))


def cmd_invert(s):
    for key in ("omega_minus", "omega_plus"):
        if s.get(key) is None:
            raise DomainError(f"invert needs --{key.replace('_', '-')}", f"{key} given")
    w, W, wm, wp = s["omega"], s["Omega"], s["omega_minus"], s["omega_plus"]
    xi_minus, xi_plus = squeezing_from_frequencies(w, W, wm, wp)
    g = coupling_from_frequencies(w, W, wm, wp)
    pair = OscillatorPair(w, W, g)
    # witness from the measured dressed frequencies, not the recomputed ones
    modes = dataclasses.replace(normal_modes(pair), omega_minus=wm, omega_plus=wp,
                                xi_minus=xi_minus, xi_plus=xi_plus)
    report = duan_ground(pair, "frequencies_form", modes)
    return {"g": g, "g_ratio": pair.coupling_ratio, "xi_minus": xi_minus, "xi_plus": xi_plus,
            "witness": report.as_dict()}


def cmd_sweep(s):
    if s.get("preset"):
        spec = PRESETS[s["preset"]]
    else:
        if not (s.get("axis1") and s.get("axis2")):
            raise DomainError("sweep needs --preset or both --axis1 and --axis2", "sweep axes")
        fixed = {"Omega": s["Omega"]}
        for key in ("g_ratio", "beta", "beta_omega_minus"):
            if s.get(key) is not None:
                fixed[key] = s[key]
        if s.get("omega") is not None:
            fixed["omega_ratio"] = min(s["omega"], s["Omega"]) / max(s["omega"], s["Omega"])
        spec = SweepSpec(Axis.parse(s["axis1"]), Axis.parse(s["axis2"]),
                         s.get("quantity") or "duan", not s.get("no_clamp"), fixed)
    return spec


def build_parser():
    parser = argparse.ArgumentParser(
        prog="coupledosc",
        description="Entanglement witnesses, log-negativity and SNR bounds for two coupled oscillators.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", help="flat key = value file (flags override it)")
        p.add_argument("--omega", type=float, help="bare frequency of mode a (default 1)")
        p.add_argument("--Omega", type=float, help="bare frequency of mode b (default 1)")
        g = p.add_mutually_exclusive_group()
        g.add_argument("--g", type=float, help="coupling strength")
        g.add_argument("--g-ratio", dest="g_ratio", type=float, help="coupling as g/g_c")
        t = p.add_mutually_exclusive_group()
        t.add_argument("--beta", type=float, help="inverse temperature (default: ground state)")
        t.add_argument("--beta-omega-minus", dest="beta_omega_minus", type=float,
                       help="inverse temperature in units of 1/omega_minus")
        p.add_argument("--nmax", type=int, help="cross-check with the Fock oracle at this truncation")
        p.add_argument("--out", help="output file (default stdout)")
        p.add_argument("--format", choices=("csv", "json"))
        return p

    common(sub.add_parser("modes", help="normal-mode frequencies, angle and squeezing"))
    p = common(sub.add_parser("witness", help="Duan-Simon witness"))
    p.add_argument("--form", choices=("theta_form", "g_form", "frequencies_form"))
    common(sub.add_parser("negativity", help="logarithmic negativity"))
    for name, text in (("snr", "signal-to-noise bounds"), ("point", "full report for one point")):
        p = common(sub.add_parser(name, help=text))
        p.add_argument("--mean-excitation", dest="mean_excitation", type=float)
        p.add_argument("--time", type=float)
        p.add_argument("--noise-squeezing", dest="noise_squeezing", type=float)
    p = common(sub.add_parser("invert", help="coupling and squeezing from measured frequencies"))
    p.add_argument("--omega-minus", dest="omega_minus", type=float)
    p.add_argument("--omega-plus", dest="omega_plus", type=float)
    p = common(sub.add_parser("sweep", help="grid sweep written as CSV"))
    p.add_argument("--preset", choices=sorted(PRESETS))
    p.add_argument("--axis1", help="name:start:stop:count")
    p.add_argument("--axis2", help="name:start:stop:count")
    p.add_argument("--quantity", choices=("duan", "log_negativity", "enhancement"))
    p.add_argument("--no-clamp", dest="no_clamp", action="store_true",
                   help="do not clamp display_value at 1")
    p.add_argument("--workers", type=int)
    p = sub.add_parser("verify", help="closed forms against the Fock oracle")
    p.add_argument("--preset", choices=("default", "quick"), default="default")
    p.add_argument("--out")
    p.add_argument("--config")
    return parser


COMMANDS = {"modes": cmd_modes, "witness": cmd_witness, "negativity": cmd_negativity,
            "snr": cmd_snr, "point": cmd_point, "invert": cmd_invert}


def _error(kind, message, invariant=None):
    payload = {"type": kind, "message": message}
    if invariant:
        payload["invariant"] = invariant
    sys.stderr.write(json.dumps({"error": payload}) + "\n")


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        s = _settings(args)
        if args.command == "verify":
            report = run_verify(args.preset)
            with _output(s) as fh:
                fh.write(json.dumps(report.as_dict(), indent=2) + "\n")
            return EXIT_OK if report.passed else EXIT_VERIFY
        if args.command == "sweep":
            s["no_clamp"] = args.no_clamp
            spec = cmd_sweep(s)
            rows = run_sweep(spec, workers=s["workers"])
            with _output(s) as fh:
                if s.get("format") == "json":
                    records = [{"axis1": r.axis1, "axis2": r.axis2, "value": _number(r.value),
                                "entangled": r.entangled, "display_value": _number(r.display_value),
                                "error": r.error} for r in rows]
                    fh.write(json.dumps({"axis1": spec.axis1.name, "axis2": spec.axis2.name,
                                         "quantity": spec.quantity, "rows": records}) + "\n")
                else:
                    write_csv(rows, fh)
            return EXIT_OK
        record = COMMANDS[args.command](s)
        with _output(s) as fh:
            _emit(record, s, fh)
        return EXIT_OK
    except DomainError as exc:
        _error(type(exc).__name__, str(exc), exc.invariant)
        return EXIT_DOMAIN
    except ConvergenceError as exc:
        _error(type(exc).__name__, str(exc))
        return EXIT_CONVERGENCE
    except OSError as exc:
        # unreadable config or unwritable output: an input problem like a domain error
        _error(type(exc).__name__, str(exc))
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
