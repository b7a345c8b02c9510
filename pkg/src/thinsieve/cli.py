"""Command-line drivers: deterministic experiment runs with CSV/JSON artifacts.

Every subcommand writes one artifact file (byte-identical across runs for
equal configs) plus a ``<artifact>.manifest.json`` recording the config,
package/Python versions, and wall time (the manifest is metadata, not part of
the deterministic artifact).  Exit codes: 0 ok, 2 config error, 3 resource
cap exceeded, 4 internal invariant violation.
"""

from __future__ import annotations

import argparse
import csv
import json
import platform
import random
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import __version__
from .cf import parse_word, serialize_word
from .dimension import asymptote, estimate
from .errors import CapExceededError, ConfigError, InternalInvariantError
from .forms import class_cycles, count_mirror_merged, count_sign_merged, cycle_to_word
from .geodesics import emit_arcs, geodesic_profile
from .modular import beta, kloosterman, sl2_charsum, sqrt4_count
from .semigroup import (
    aleph_construct,
    aleph_error,
    build_fixed_length_ball,
    build_pi,
    enumerate_ball,
    hensley_exponent,
    trace_fiber,
)
from .sieve import (
    BallSource,
    almost_prime_census,
    class_census,
    discriminant_census,
    remainder_profile,
    sift_values,
    squarefree_trace_census,
)


def _frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _write_csv(path: Path, header: list[str], rows: list[list]) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow(row)


def _write_json(path: Path, payload) -> None:
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _write_jsonl(path: Path, records) -> None:
    with open(path, "w") as fh:
        for rec in records:
            fh.write(json.dumps(rec, sort_keys=True) + "\n")


def _element_record(e) -> dict:
    return {
        "word": serialize_word(e.word),
        "matrix": list(e.matrix.entries()),
        "trace": e.trace,
        "normSq": e.norm_sq,
    }


# ---------------------------------------------------------------------------
# subcommand handlers; each returns the artifact path it wrote


def _cmd_enumerate(args) -> Path:
    path = Path(args.output or "enumerate.jsonl")
    records = [
        _element_record(e)
        for e in enumerate_ball(args.alphabet, args.norm, args.parity)
    ]
    _write_jsonl(path, records)
    return path


def _cmd_trace_fiber(args) -> Path:
    path = Path(args.output or "trace_fiber.jsonl")
    _write_jsonl(path, [_element_record(e) for e in trace_fiber(args.alphabet, args.trace)])
    return path


def _cmd_hensley_fit(args) -> Path:
    path = Path(args.output or "hensley_fit.csv")
    norms = [float(x) for x in args.norms.split(",")]
    fit = hensley_exponent(args.alphabet, norms)
    rows = [[args.alphabet, n, c, "", ""] for n, c in fit.counts]
    rows.append([args.alphabet, "fit", "", repr(fit.slope), repr(fit.residual)])
    _write_csv(path, ["alphabet", "norm", "count", "slope", "residual"], rows)
    return path


def _cmd_dimension(args) -> Path:
    path = Path(args.output or "dimension.csv")
    rows = []
    for a in [int(x) for x in args.alphabets.split(",")]:
        est = estimate(a, args.depth, args.tol)
        rows.append([a, args.depth, repr(est.lower), repr(est.upper), repr(asymptote(a))])
    _write_csv(path, ["alphabet", "depth", "lower", "upper", "asymptote"], rows)
    return path


def _cmd_densities(args) -> Path:
    if args.modulus < 1:
        raise ConfigError("modulus must be positive")
    path = Path(args.output or "densities.csv")
    rows = []
    for q in range(1, args.modulus + 1):
        try:
            b = beta(q)
        except ValueError:
            continue  # skip non-square-free moduli
        rows.append([q, _frac(b), sqrt4_count(q)])
    _write_csv(path, ["q", "beta", "sqrt4_count"], rows)
    return path


def _cmd_expsum(args) -> Path:
    path = Path(args.output or "expsum.csv")
    p = args.prime
    rows = []
    for m in range(1, p):
        value = kloosterman(1, m, p)
        rows.append(["kloosterman", p, f"1,{m}", repr(value), repr(2 * p**0.5)])
    rng = random.Random(args.seed)
    for _ in range(args.samples):
        s = tuple(rng.randrange(p) for _ in range(4))
        while all(x % p == 0 for x in s):
            s = tuple(rng.randrange(p) for _ in range(4))
        value = abs(sl2_charsum(p, s))
        rows.append(["charsum", p, ",".join(map(str, s)), repr(value), repr(2 * p**1.5)])
    _write_csv(path, ["kind", "p", "argument", "value", "bound"], rows)
    return path


def _cmd_aleph(args) -> Path:
    path = Path(args.output or "aleph.jsonl")
    aleph = aleph_construct(args.bound, args.modulus)
    records = [_element_record(e) for e in aleph]
    _write_jsonl(path, records)
    summary = {
        "size": len(aleph),
        "modulus": aleph.modulus,
        "group_order": aleph.group_order,
        "base_size": aleph.base_size,
        "pivot_bound": aleph.pivot_bound,
        "error_at_q": {str(q): aleph_error(aleph, q) for q in (1, 2, 3)},
    }
    _write_json(path.with_suffix(".summary.json"), summary)
    return path


def _cmd_build_pi(args) -> Path:
    path = Path(args.output or "pi.json")
    xi = build_fixed_length_ball(args.alphabet, args.xi_bound, "Xi")
    omega = build_fixed_length_ball(args.alphabet, args.omega_bound, "Omega")
    aleph = aleph_construct(args.aleph_bound, args.modulus)
    pi = build_pi(xi, aleph, omega)
    payload = {
        "xi": {"wordlength": xi.wordlength, "size": len(xi)},
        "aleph": {"size": len(aleph), "modulus": aleph.modulus},
        "omega": {"wordlength": omega.wordlength, "size": len(omega)},
        "size": pi.size,
        "norm_bound": pi.norm_bound(),
    }
    _write_json(path, payload)
    return path


def _sift_source(args):
    if args.use_pi:
        xi = build_fixed_length_ball(args.alphabet, args.xi_bound, "Xi")
        omega = build_fixed_length_ball(args.alphabet, args.omega_bound, "Omega")
        aleph = aleph_construct(args.aleph_bound, args.modulus)
        return build_pi(xi, aleph, omega)
    return BallSource(args.alphabet, args.norm)


def _cmd_sieve_remainders(args) -> Path:
    path = Path(args.output or "remainders.csv")
    profile = remainder_profile(sift_values(_sift_source(args)), args.cutoff)
    rows = [
        [row.q, row.count, _frac(row.expected), _frac(row.remainder)]
        for row in profile.rows
    ]
    rows.append(["summary", profile.source_size, "", _frac(profile.summary)])
    _write_csv(path, ["q", "A_q", "beta_times_size", "remainder"], rows)
    return path


def _cmd_almost_prime(args) -> Path:
    path = Path(args.output or "almost_prime.csv")
    seq = sift_values(_sift_source(args))
    count = almost_prime_census(seq, args.threshold)
    _write_csv(
        path,
        ["alphabet", "norm", "threshold", "count", "source_size"],
        [[args.alphabet, args.norm, args.threshold, count, seq.source_size]],
    )
    return path


def _cmd_squarefree_count(args) -> Path:
    path = Path(args.output or "squarefree_count.csv")
    count = squarefree_trace_census(args.alphabet, args.norm)
    total = sum(1 for _ in enumerate_ball(args.alphabet, args.norm))
    _write_csv(
        path,
        ["alphabet", "norm", "squarefree_count", "ball_count", "fraction"],
        [[args.alphabet, args.norm, count, total, _frac(Fraction(count, total))]],
    )
    return path


def _cmd_discriminants(args) -> Path:
    path = Path(args.output or "discriminants.csv")
    rows = [
        [rec.t, rec.discriminant, rec.multiplicity]
        for rec in discriminant_census(args.alphabet, args.max_T, args.min_multiplicity)
    ]
    _write_csv(path, ["t", "discriminant", "multiplicity"], rows)
    return path


def _cmd_class_census(args) -> Path:
    path = Path(args.output or "class_census.json")
    cycles = class_census(args.disc, args.alphabet)
    payload = [
        {
            "forms": [str(f) for f in cy.forms],
            "period_word": serialize_word(cycle_to_word(cy)),
        }
        for cy in cycles
    ]
    _write_json(path, {"discriminant": args.disc, "alphabet": args.alphabet, "classes": payload})
    return path


def _cmd_class_cycles(args) -> Path:
    path = Path(args.output or "class_cycles.json")
    cycles = class_cycles(args.disc)
    payload = {
        "discriminant": args.disc,
        "cycle_count": len(cycles),
        "mirror_merged_count": count_mirror_merged(cycles),
        "sign_merged_count": count_sign_merged(cycles),
        "cycles": [
            {
                "forms": [str(f) for f in cy.forms],
                "period_word": serialize_word(cycle_to_word(cy)),
            }
            for cy in cycles
        ],
    }
    _write_json(path, payload)
    return path


def _cmd_geodesic(args) -> Path:
    word = parse_word(args.word)
    path = Path(args.emit or "arcs.csv")
    if path.suffix == ".json":
        profile = geodesic_profile(word)
        _write_json(
            path,
            {
                "period": serialize_word(profile.period),
                "rotation_heights": list(profile.rotation_heights),
                "max_height": profile.max_height,
                "discriminant": profile.discriminant,
            },
        )
    else:
        _write_csv(path, ["center", "radius"], [[repr(c), repr(r)] for c, r in emit_arcs(word)])
    return path


# ---------------------------------------------------------------------------
# config handling and dispatch

_HANDLERS = {
    "enumerate": _cmd_enumerate,
    "trace-fiber": _cmd_trace_fiber,
    "hensley-fit": _cmd_hensley_fit,
    "dimension": _cmd_dimension,
    "densities": _cmd_densities,
    "expsum": _cmd_expsum,
    "aleph": _cmd_aleph,
    "build-pi": _cmd_build_pi,
    "sieve-remainders": _cmd_sieve_remainders,
    "almost-prime": _cmd_almost_prime,
    "squarefree-count": _cmd_squarefree_count,
    "discriminants": _cmd_discriminants,
    "class-census": _cmd_class_census,
    "class-cycles": _cmd_class_cycles,
    "geodesic": _cmd_geodesic,
}


def _load_config(path: str) -> dict[str, str]:
    out = {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    for line_no, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{line_no}: expected key=value")
        key, value = line.split("=", 1)
        out[key.strip().replace("-", "_")] = value.strip()
    return out


def _build_parser() -> tuple[argparse.ArgumentParser, dict[str, argparse.ArgumentParser]]:
    parser = argparse.ArgumentParser(
        prog="thinsieve",
        description="Continued fractions, quadratic forms, and sieve experiments.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    subparsers: dict[str, argparse.ArgumentParser] = {}

    def add(name, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.add_argument("--config", help="key=value config file; explicit flags win")
        p.add_argument("--output", help="artifact path")
        subparsers[name] = p
        return p

    p = add("enumerate", help="list a semigroup norm ball as JSON lines")
    p.add_argument("--alphabet", type=int, default=2)
    p.add_argument("--norm", type=float, required=True)
    p.add_argument("--parity", choices=["even", "any"], default="even")

    p = add("trace-fiber", help="list all even words of a given trace")
    p.add_argument("--alphabet", type=int, default=2)
    p.add_argument("--trace", type=int, required=True)

    p = add("hensley-fit", help="fit the ball-growth exponent on a norm grid")
    p.add_argument("--alphabet", type=int, default=2)
    p.add_argument(
        "--norms",
        default="1000,3162.2776601683795,10000,31622.776601683792,100000",
        help="comma-separated norm grid (default: 10^3 .. 10^5, half-decade steps)",
    )

    p = add("dimension", help="bracket the bounded-quotient Cantor dimension")
    p.add_argument("--alphabets", default="2")
    p.add_argument("--depth", type=int, default=12)
    p.add_argument("--tol", type=float, default=1e-6)

    p = add("densities", help="beta(q) and sqrt-of-4 counts as CSV")
    p.add_argument("--modulus", type=int, required=True)

    p = add("expsum", help="Kloosterman sums and SL2 character sums at a prime")
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)

    p = add("aleph", help="build the residue-balanced alphabet-2 set")
    p.add_argument("--bound", type=float, required=True)
    p.add_argument("--modulus", type=int, default=2)

    p = add("build-pi", help="assemble the bilinear product set and report sizes")
    p.add_argument("--alphabet", type=int, default=2)
    p.add_argument("--xi-bound", type=float, required=True)
    p.add_argument("--aleph-bound", type=float, required=True)
    p.add_argument("--omega-bound", type=float, required=True)
    p.add_argument("--modulus", type=int, default=2)

    for name, extra in (
        ("sieve-remainders", ("cutoff",)),
        ("almost-prime", ("threshold",)),
        ("squarefree-count", ()),
    ):
        p = add(name, help=f"{name.replace('-', ' ')} over a ball (or bilinear) source")
        p.add_argument("--alphabet", type=int, default=2)
        p.add_argument("--norm", type=float, default=1e4)
        if "cutoff" in extra:
            p.add_argument("--cutoff", type=int, default=100)
        if "threshold" in extra:
            p.add_argument("--threshold", type=int, default=7)
        if name != "squarefree-count":
            p.add_argument("--use-pi", action="store_true", help="sift the bilinear set")
            p.add_argument("--xi-bound", type=float, default=100.0)
            p.add_argument("--aleph-bound", type=float, default=1e6)
            p.add_argument("--omega-bound", type=float, default=20.0)
            p.add_argument("--modulus", type=int, default=2)

    p = add("discriminants", help="square-free t^2-4 census with fiber multiplicities")
    p.add_argument("--alphabet", type=int, default=2)
    p.add_argument("--max-T", type=float, default=1e4)
    p.add_argument("--min-multiplicity", type=int, default=1)

    p = add("class-census", help="form classes realised by a trace fiber")
    p.add_argument("--disc", type=int, required=True)
    p.add_argument("--alphabet", type=int, default=2)

    p = add("class-cycles", help="all reduction cycles of a discriminant")
    p.add_argument("--disc", type=int, required=True)

    p = add("geodesic", help="emit excursion arcs or the height profile of a word")
    p.add_argument("--word", required=True)
    p.add_argument("--emit", help="arcs .csv or profile .json path")

    return parser, subparsers


def _apply_config(argv: list[str], subparsers: dict[str, argparse.ArgumentParser]) -> None:
    """Install config-file values as subcommand defaults, so explicit flags win."""
    if not argv or argv[0] not in subparsers or "--config" not in argv:
        return
    at = argv.index("--config")
    if at + 1 >= len(argv):
        raise ConfigError("--config requires a file path")
    path = argv[at + 1]
    sub = subparsers[argv[0]]
    known = {a.dest: a for a in sub._actions}
    defaults = {}
    for key, value in _load_config(path).items():
        if key not in known:
            raise ConfigError(f"unknown config key {key!r} for {argv[0]!r}")
        action = known[key]
        if action.type is not None:
            try:
                value = action.type(value)
            except (TypeError, ValueError) as exc:
                raise ConfigError(f"bad value for {key!r}: {exc}") from exc
        elif isinstance(action.const, bool):
            value = value.lower() in ("1", "true", "yes")
        defaults[key] = value
    sub.set_defaults(**defaults)


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser, subparsers = _build_parser()
    try:
        _apply_config(argv, subparsers)
        try:
            args = parser.parse_args(argv)
        except SystemExit as exc:  # argparse uses 2 for usage errors
            return int(exc.code or 0)
        start = time.monotonic()
        artifact = _HANDLERS[args.command](args)
        manifest = {
            "command": args.command,
            "config": {k: v for k, v in sorted(vars(args).items()) if k != "config"},
            "package_version": __version__,
            "python_version": platform.python_version(),
            "wall_time_s": time.monotonic() - start,
        }
        _write_json(artifact.with_name(artifact.name + ".manifest.json"), manifest)
    except (ConfigError, ValueError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except CapExceededError as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return 3
    except InternalInvariantError as exc:
        print(f"internal invariant violation: {exc}", file=sys.stderr)
        return 4
    return 0


if __name__ == "__main__":
    sys.exit(main())
