"""Command-line interface: ``planar-qed <command> [options]``.

Commands
--------
potential, decay
    Sweep z_A and write one CSV row (or JSON record) per point.
green
    Dimensionless scattering Green tensor over a sweep (JSON).
barrier
    Barrier search, with a levitation check when atom data are given (JSON).
spp
    Surface-plasmon-polariton poles (JSON).
trap
    Barrier search plus the thermal trapping comparison (JSON).

Exit status is 0 on success, 1 for invalid input and 2 when the numerics
fail to converge.
"""
from __future__ import annotations

import argparse
import io
import json
import math
import sys

from . import __version__, ideal
from .analysis import (BarrierReport, SweepSpec, default_jobs, find_barrier,
                       levitation_check, sweep, trap_check)
from .errors import (ConvergenceError, InternalConsistencyError, NearPoleError,
                     PlanarQEDError, ValidationError)
from .green import QuadratureConfig, green_solution
from .observables import BACKENDS, resolve_backend
from .spp import DEFAULT_BOX, find_poles
from .units import G_EARTH, AtomSI, DipoleOrientation, validate_medium

CSV_COLUMNS = ("z_A", "U_reduced", "F_reduced", "rate", "backend",
               "s_part_re", "p_part_re", "s_part_im", "p_part_im")
JSON_ONLY = ("green", "barrier", "spp", "trap")
DEFAULT_SWEEPS = {
    "potential": "0.05:12:400",
    "decay": "0.05:12:400",
    "green": "1",
    "spp": "1",
    "barrier": "0.05:5:100",
    "trap": "0.05:5:100",
}
# keys a config file may set; "g" is deliberately absent from the flags
CONFIG_KEYS = ("eps", "mu", "d", "orientation", "z", "backend", "rel_tol",
               "abs_tol", "max_subdivisions", "gamma0", "lambda", "mass",
               "temperature", "polarization", "box", "out", "format", "jobs",
               "g", "lattice_scale")


class _Parser(argparse.ArgumentParser):
    # no prefix matching: "--g" must not silently become "--gamma0"
    def __init__(self, *args, **kwargs):
        kwargs.setdefault("allow_abbrev", False)
        super().__init__(*args, **kwargs)

    def error(self, message):
        raise ValidationError(message)


def parse_complex(text: str) -> complex:
    """Parse ``a+bi`` / ``a-bi`` / ``a`` / ``bi`` into a complex number."""
    s = str(text).strip()
    if not s or " " in s or "j" in s:
        raise ValidationError(f"cannot parse complex value {text!r}; use a+bi")
    try:
        return complex(s.replace("i", "j"))
    except ValueError:
        raise ValidationError(f"cannot parse complex value {text!r}; use a+bi") from None


def format_complex(z: complex) -> str:
    return f"{z.real!r}{'+' if z.imag >= 0 else '-'}{abs(z.imag)!r}i"


def _build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--config", help="JSON file with default values for any option")
    common.add_argument("--eps", help="relative permittivity, e.g. -1+1e-3i")
    common.add_argument("--mu", help="relative permeability, e.g. -1+1e-3i")
    common.add_argument("--d", type=float, help="slab thickness in c/omega_10")
    common.add_argument("--orientation",
                        help="parallel, perpendicular, random or a p_par value")
    common.add_argument("--z", help="atom heights min:max:count[:log] or a single value")
    common.add_argument("--backend", choices=BACKENDS)
    common.add_argument("--rel-tol", dest="rel_tol", type=float)
    common.add_argument("--abs-tol", dest="abs_tol", type=float)
    common.add_argument("--max-subdivisions", dest="max_subdivisions", type=int)
    common.add_argument("--jobs", type=int, help="worker processes (default $PLANAR_QED_JOBS or 1)")
    common.add_argument("--gamma0", type=float, help="free-space decay rate in 1/s")
    common.add_argument("--lambda", dest="lambda", type=float, help="transition wavelength in m")
    common.add_argument("--mass", type=float, help="atomic mass in kg")
    common.add_argument("--temperature", type=float, help="temperature in K")
    common.add_argument("--lattice-scale", dest="lattice_scale", type=float)
    common.add_argument("--polarization", choices=("s", "p", "both"))
    common.add_argument("--box", help="pole search box re_min:re_max:im_min:im_max")
    common.add_argument("--out", help="output file (default stdout)")
    common.add_argument("--format", choices=("csv", "json"))

    parser = _Parser(prog="planar-qed", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in ("potential", "decay", "green", "barrier", "spp", "trap"):
        sub.add_parser(name, parents=[common])
    return parser


def _merge(args: argparse.Namespace) -> dict:
    conf: dict = {}
    if args.config:
        try:
            with open(args.config, encoding="utf-8") as fh:
                conf = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ValidationError(f"cannot read config {args.config!r}: {exc}") from None
        if not isinstance(conf, dict):
            raise ValidationError("config file must hold a JSON object")
        unknown = set(conf) - set(CONFIG_KEYS)
        if unknown:
            raise ValidationError(f"unknown config keys: {sorted(unknown)}")
    for key in CONFIG_KEYS:
        value = getattr(args, key, None)
        if value is not None:
            conf[key] = value
    return conf


def _resolve(command: str, conf: dict) -> dict:
    """Validate merged options into typed objects."""
    out = {"command": command}
    for key in ("eps", "mu"):
        if key not in conf:
            raise ValidationError(f"--{key} is required")
    out["medium"] = validate_medium(parse_complex(conf["eps"]), parse_complex(conf["mu"]))
    d = float(conf.get("d", 0.0))
    if not (d >= 0 and math.isfinite(d)):
        raise ValidationError(f"--d must be >= 0, got {d!r}")
    out["d"] = d
    out["orientation"] = DipoleOrientation.from_name(str(conf.get("orientation", "parallel")))
    z = str(conf.get("z", DEFAULT_SWEEPS[command]))
    if ":" in z:
        out["sweep"] = SweepSpec.parse(z)
        out["zs"] = [float(v) for v in out["sweep"].points()]
    else:
        try:
            value = float(z)
        except ValueError:
            raise ValidationError(f"malformed --z {z!r}") from None
        if not value > 0:
            raise ValidationError(f"--z must be > 0, got {value!r}")
        out["sweep"] = None
        out["zs"] = [value]
    qkw = {k: conf[k] for k in ("rel_tol", "abs_tol", "max_subdivisions") if k in conf}
    out["quadrature"] = QuadratureConfig(**qkw)
    out["backend"] = conf.get("backend", "auto")
    if out["backend"] not in BACKENDS:
        raise ValidationError(f"unknown backend {out['backend']!r}")
    jobs = conf.get("jobs")
    out["jobs"] = default_jobs() if jobs is None else int(jobs)
    if out["jobs"] < 1:
        raise ValidationError("--jobs must be >= 1")
    atom_keys = ("gamma0", "lambda", "mass")
    present = [k for k in atom_keys if k in conf]
    if present and len(present) < 3:
        raise ValidationError("--gamma0, --lambda and --mass must be given together")
    out["atom"] = (AtomSI(float(conf["gamma0"]), float(conf["lambda"]), float(conf["mass"]))
                   if present else None)
    out["temperature"] = conf.get("temperature")
    out["g"] = float(conf.get("g", G_EARTH))
    out["lattice_scale"] = conf.get("lattice_scale")
    out["polarization"] = conf.get("polarization", "both")
    box = conf.get("box")
    if box is None:
        out["box"] = DEFAULT_BOX
    else:
        try:
            out["box"] = tuple(float(v) for v in str(box).split(":"))
        except ValueError:
            raise ValidationError(f"malformed --box {box!r}") from None
        if len(out["box"]) != 4:
            raise ValidationError("--box needs re_min:re_max:im_min:im_max")
    fmt = conf.get("format")
    if command in JSON_ONLY:
        if fmt == "csv":
            raise ValidationError(f"'{command}' writes JSON only")
        fmt = "json"
    out["format"] = fmt or "csv"
    out["out"] = conf.get("out")
    if command == "trap":
        if out["atom"] is None or out["temperature"] is None:
            raise ValidationError("trap requires --gamma0, --lambda, --mass and --temperature")
    if out["temperature"] is not None and not float(out["temperature"]) > 0:
        raise ValidationError("--temperature must be positive")
    return out


def _echo(r: dict) -> dict:
    """Deterministic JSON view of the resolved configuration (jobs excluded)."""
    q = r["quadrature"]
    echo = {
        "command": r["command"],
        "eps": format_complex(r["medium"].eps),
        "mu": format_complex(r["medium"].mu),
        "d": r["d"],
        "orientation": {"p_par": r["orientation"].p_par, "p_perp": r["orientation"].p_perp},
        "z": [r["zs"][0], r["zs"][-1], len(r["zs"]),
              r["sweep"].grid if r["sweep"] else "linear"],
        "backend": r["backend"],
        "quadrature": {"rel_tol": q.rel_tol, "abs_tol": q.abs_tol,
                       "max_subdivisions": q.max_subdivisions},
    }
    if r["atom"] is not None:
        echo["atom"] = {"gamma0": r["atom"].gamma0, "lambda10": r["atom"].lambda10,
                        "mass": r["atom"].mass}
    if r["temperature"] is not None:
        echo["temperature"] = float(r["temperature"])
    return echo


def _fmt(v) -> str:
    return "%.17g" % (v + 0.0)  # + 0.0 turns -0.0 into 0.0


def _observables(r: dict) -> list:
    backend = r["backend"]
    name = resolve_backend(r["medium"], r["d"], backend)
    if backend == "auto" and name == "ideal":
        print("planar-qed: lossless medium, using the ideal closed-form backend",
              file=sys.stderr)
    pts = sweep(r["zs"], r["medium"], r["d"], r["orientation"], r["quadrature"],
                name, r["jobs"], rate_only=r["command"] == "decay")
    if r["lattice_scale"] is not None:
        for p in pts:
            if p.z_A < r["lattice_scale"]:
                print(f"planar-qed: z_A={p.z_A!r} is below the lattice scale; "
                      "the macroscopic description may not apply", file=sys.stderr)
                break
    return pts


def _green(r: dict) -> list:
    m, d = r["medium"], r["d"]
    name = resolve_backend(m, d, r["backend"])
    rows = []
    for z in r["zs"]:
        if name == "ideal":
            g = ideal.ideal_green(z, d, imag_only=z <= d)
            gxx, gzz = g.gxx, g.gzz
        elif name == "numeric":
            sol = green_solution(z, m, d, r["quadrature"])
            gxx, gzz = sol.gxx, sol.gzz
        else:
            raise ValidationError("green supports the numeric and ideal backends only")
        rows.append({"z_A": z, "backend": name,
                     "gxx": [gxx.real, gxx.imag], "gzz": [gzz.real, gzz.imag]})
    return rows


def _barrier(r: dict) -> BarrierReport:
    spec = r["sweep"]
    if spec is None:
        raise ValidationError("barrier search needs a sweep --z min:max:count")
    return find_barrier(r["medium"], r["d"], r["orientation"], spec, r["quadrature"],
                        r["backend"], r["jobs"])


def _run(r: dict) -> str:
    cmd = r["command"]
    if cmd in ("potential", "decay"):
        pts = _observables(r)
        if r["format"] == "csv":
            buf = io.StringIO(newline="")
            buf.write(",".join(CSV_COLUMNS) + "\n")
            for p in pts:
                vals = [_fmt(p.z_A), _fmt(p.potential), _fmt(p.force), _fmt(p.rate),
                        p.backend, _fmt(p.s_part_re), _fmt(p.p_part_re),
                        _fmt(p.s_part_im), _fmt(p.p_part_im)]
                buf.write(",".join(vals) + "\n")
            return buf.getvalue()
        result = {"points": [
            {k: v for k, v in p.to_dict().items() if k != "advisory"} for p in pts
        ]}
    elif cmd == "green":
        result = {"points": _green(r)}
    elif cmd == "spp":
        pols = ("s", "p") if r["polarization"] == "both" else (r["polarization"],)
        result = {"poles": [rec.to_dict() for pol in pols
                            for rec in find_poles(r["medium"], r["d"], pol, r["box"])]}
    else:
        report = _barrier(r)
        result = {"barrier": report.to_dict()}
        if r["atom"] is not None:
            result["levitation"] = levitation_check(report, r["atom"], r["g"]).to_dict()
        if cmd == "trap":
            trap = trap_check(report, r["atom"], float(r["temperature"]))
            result["trap"] = trap.to_dict()
            result["traps"] = trap.traps
    doc = {"config": _echo(r), "result": result, "version": __version__}
    return json.dumps(doc, sort_keys=True, indent=2, allow_nan=True) + "\n"


def _glue_values(argv: list) -> list:
    """Attach values such as ``-1+1e-3i`` to their flag so argparse does not
    mistake the leading minus for an option."""
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in ("--eps", "--mu", "--z", "--box") and i + 1 < len(argv):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = _build_parser().parse_args(_glue_values(argv))
        resolved = _resolve(args.command, _merge(args))
        text = _run(resolved)
    except (ConvergenceError, NearPoleError, InternalConsistencyError) as exc:
        print(f"planar-qed: numerical failure: {exc}", file=sys.stderr)
        return 2
    except (PlanarQEDError, ValueError, TypeError) as exc:
        print(f"planar-qed: error: {exc}", file=sys.stderr)
        return 1
    if resolved["out"]:
        with open(resolved["out"], "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
