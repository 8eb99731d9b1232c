"""Command-line front end: portrait, orbit, classify, radial, mesh, verify, thresholds."""

import argparse
import json
import logging
import sys
from typing import Callable, Dict, Optional, Sequence

from classifier.classify import classify, classify_sweep, orbit_for_seed
from classifier.seed import Seed
from classifier.thresholds import thresholds
from cli.config import Config, RunInputs, load_config
from phase.symmetry import normalize
from radial.solver import DOWN, UP, solve_radial, solve_radial_shrinking
from utils.constants import EXIT_NUMERICAL, EXIT_OK, EXIT_VALIDATION, MESH_SEGMENTS, RADIAL_N, VERIFY_TOL
from utils.errors import ConfigError, NumericalError, PhiSurfaceError, ValidationError
from utils.io import write_atomic
from visualization.export import orbit_csv, radial_csv, verify_orbit_csv
from visualization.mesh import revolve
from visualization.portrait import render_phase_portrait
from visualization.report import ReportCollector

logger = logging.getLogger(__name__)

EPILOG = """
Examples:
  python main.py classify --a 1 --b 1 --phi "3" --seed-x 0.1666667 --section pi/2
  python main.py orbit --a 1 --b 1 --phi "3" --seed "x=1@pi/2" --out orbit.csv
  python main.py verify orbit.csv --a 1 --b 1 --phi "3"
  python main.py portrait --config run.toml --out portrait.svg
"""


def _add_common(sub: argparse.ArgumentParser, allow_vanishing: bool = False) -> None:
    data = sub.add_argument_group("data")
    data.add_argument("--config", help="flat TOML file with a, b, phi, seeds and tolerances")
    data.add_argument("--a", type=float, help="coefficient of the mean curvature")
    data.add_argument("--b", type=float, help="coefficient of the Gauss curvature")
    data.add_argument("--phi", help="prescribed function of y = cos(theta), e.g. '2 + y^2'")
    tol = sub.add_argument_group("integrator")
    tol.add_argument("--rtol", type=float)
    tol.add_argument("--atol", type=float)
    tol.add_argument("--h-max", dest="h_max", type=float)
    tol.add_argument("--s-max", dest="s_max", type=float)
    if allow_vanishing:
        data.add_argument("--allow-vanishing", action="store_true",
                          help="accept a phi that vanishes somewhere on [-1, 1]")
    sub.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="phi-surfaces",
        description="Rotational surfaces satisfying 2aH + bK = phi(N): phase plane, orbits and classification.",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=EPILOG,
    )
    commands = parser.add_subparsers(dest="command", required=True)

    portrait = commands.add_parser("portrait", help="render the phase portrait as SVG")
    _add_common(portrait)
    portrait.add_argument("--seed", action="append", dest="seeds", help="seed string (repeatable)")
    portrait.add_argument("--out", required=True, help="SVG output file")

    orbit = commands.add_parser("orbit", help="integrate one orbit and write its CSV")
    _add_common(orbit, allow_vanishing=True)
    orbit.add_argument("--seed", action="append", dest="seeds", help="seed string; the first one is used")
    orbit.add_argument("--out", required=True, help="CSV output file")

    cls = commands.add_parser("classify", help="name the family of each seed")
    _add_common(cls)
    cls.add_argument("--seed", action="append", dest="seeds", help="seed string (repeatable)")
    cls.add_argument("--seed-x", action="append", dest="seed_x", help="radius of a section seed (repeatable)")
    cls.add_argument("--section", help="angle of the --seed-x seeds; defaults to the line through e0")
    cls.add_argument("--workers", type=int, help="threads for several seeds")
    cls.add_argument("--report", help="JSON report output file")
    cls.add_argument("--with-thresholds", action="store_true", help="add the threshold radii to the report")

    radial = commands.add_parser("radial", help="solve the radial graph near the axis and write its CSV")
    _add_common(radial)
    radial.add_argument("--delta", type=float, help="graph radius; halved automatically when omitted")
    radial.add_argument("--n", type=int, default=RADIAL_N, help="grid intervals")
    radial.add_argument("--orientation", choices=(UP, DOWN), default=UP)
    radial.add_argument("--out", required=True, help="CSV output file")

    mesh = commands.add_parser("mesh", help="revolve an orbit into a Wavefront OBJ mesh")
    _add_common(mesh)
    mesh.add_argument("--seed", action="append", dest="seeds", help="seed string; the first one is used")
    mesh.add_argument("--segments", type=int, default=MESH_SEGMENTS)
    mesh.add_argument("--out", required=True, help="OBJ output file")

    verify = commands.add_parser("verify", help="re-check the residual of an orbit CSV")
    verify.add_argument("csv", help="orbit CSV file")
    _add_common(verify, allow_vanishing=True)
    verify.add_argument("--tolerance", type=float, default=VERIFY_TOL)

    limits = commands.add_parser("thresholds", help="print the threshold radii as JSON")
    _add_common(limits)
    return parser


def _inputs(args: argparse.Namespace) -> RunInputs:
    config = load_config(args.config) if args.config else Config()
    seeds = list(getattr(args, "seeds", None) or [])
    section = getattr(args, "section", None)
    for x in getattr(args, "seed_x", None) or []:
        seeds.append(f"x={x}" if section is None else f"x={x}@{section}")
    if section is not None and not getattr(args, "seed_x", None):
        raise ConfigError("--section needs at least one --seed-x")
    config = config.merged(
        a=args.a, b=args.b, phi=args.phi, seeds=seeds,
        rtol=args.rtol, atol=args.atol, h_max=args.h_max, s_max=args.s_max,
    )
    return config.resolve(allow_vanishing=getattr(args, "allow_vanishing", False))


def _first_seed(inputs: RunInputs) -> Seed:
    if not inputs.seeds:
        raise ConfigError("this command needs a seed (--seed or 'seeds' in the config)")
    if len(inputs.seeds) > 1:
        logger.warning("using the first of %d seeds", len(inputs.seeds))
    return inputs.seeds[0]


def cmd_portrait(args: argparse.Namespace, inputs: RunInputs) -> int:
    svg = render_phase_portrait(inputs.params, inputs.phi, inputs.seeds, inputs.settings)
    write_atomic(args.out, svg)
    return EXIT_OK


def cmd_orbit(args: argparse.Namespace, inputs: RunInputs) -> int:
    seed = _first_seed(inputs)
    orbit = orbit_for_seed(inputs.params, inputs.phi, seed, inputs.settings)
    write_atomic(args.out, orbit_csv(orbit, inputs.phi))
    print(json.dumps(orbit.describe()))
    return EXIT_OK


def cmd_classify(args: argparse.Namespace, inputs: RunInputs) -> int:
    if not inputs.seeds:
        raise ConfigError("classify needs at least one seed")
    p, phi = inputs.params, inputs.phi
    collector = ReportCollector(p.a, p.b, phi.text)
    if len(inputs.seeds) == 1:
        verdict, _ = classify(p, phi, inputs.seeds[0], inputs.settings)
        collector.record(inputs.seeds[0].label, verdict)
        print(verdict.verdict())
        status = EXIT_OK
    else:
        status = EXIT_OK
        for result in classify_sweep(p, phi, inputs.seeds, args.workers, inputs.settings):
            if result.ok:
                collector.record(result.seed.label, result.verdict)
                print(f"{result.seed.label}: {result.verdict.verdict()}")
                continue
            collector.record_failure(result.seed.label, result.message)
            print(f"{result.seed.label}: {result.message}", file=sys.stderr)
            failed = EXIT_VALIDATION if isinstance(result.error, ValidationError) else EXIT_NUMERICAL
            status = max(status, failed)
    if args.report:
        if args.with_thresholds:
            collector.set_thresholds(thresholds(p, phi, inputs.settings).as_dict())
        write_atomic(args.report, collector.to_json())
    return status


def cmd_radial(args: argparse.Namespace, inputs: RunInputs) -> int:
    # u and the residual are the same in the normalized and the caller's frame
    p, phi, _ = normalize(inputs.params, inputs.phi)
    if args.delta is None:
        sol = solve_radial_shrinking(p, phi, args.orientation, args.n)
    else:
        sol = solve_radial(p, phi, args.delta, args.orientation, args.n)
    write_atomic(args.out, radial_csv(sol, p, phi))
    ratio = max(sol.ratios) if sol.ratios else 0.0
    print(json.dumps({
        "delta": sol.delta, "iterations": sol.iterations, "max_ratio": ratio, "contracting": sol.contracting,
    }))
    return EXIT_OK


def cmd_mesh(args: argparse.Namespace, inputs: RunInputs) -> int:
    seed = _first_seed(inputs)
    orbit = orbit_for_seed(inputs.params, inputs.phi, seed, inputs.settings)
    mesh = revolve(orbit, args.segments)
    write_atomic(args.out, mesh.to_obj())
    return EXIT_OK


def cmd_verify(args: argparse.Namespace, inputs: RunInputs) -> int:
    report = verify_orbit_csv(args.csv, inputs.params, inputs.phi, args.tolerance)
    print(json.dumps(report.as_dict()))
    if not report.passed:
        print(f"error: max residual {report.max_residual:.3e} exceeds {report.tolerance:g}", file=sys.stderr)
        return EXIT_NUMERICAL
    return EXIT_OK


def cmd_thresholds(args: argparse.Namespace, inputs: RunInputs) -> int:
    print(json.dumps(thresholds(inputs.params, inputs.phi, inputs.settings).as_dict(), indent=2))
    return EXIT_OK


COMMANDS: Dict[str, Callable[[argparse.Namespace, RunInputs], int]] = {
    "portrait": cmd_portrait,
    "orbit": cmd_orbit,
    "classify": cmd_classify,
    "radial": cmd_radial,
    "mesh": cmd_mesh,
    "verify": cmd_verify,
    "thresholds": cmd_thresholds,
}


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING if verbosity <= 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Runs one subcommand.

    Returns:
        0 on success, 1 on a validation error, 2 on a numerical failure.
    """
    args = build_parser().parse_args(argv)
    _configure_logging(args.verbose)
    try:
        inputs = _inputs(args)
        return COMMANDS[args.command](args, inputs)
    except ValidationError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_VALIDATION
    except NumericalError as err:
        print(f"error: {type(err).__name__}: {err}", file=sys.stderr)
        return EXIT_NUMERICAL
    except PhiSurfaceError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_NUMERICAL
