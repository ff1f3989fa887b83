import json
import sys
from typing import List, Optional

from pentagram.errors import BadArguments, DivisionByZero, PentagramError
from pentagram.lax import create_lax, dented, lax_for_map
from pentagram.maps import MapSpec, iterate_map, random_corrugated_polygon
from pentagram.plot import plot_orbit
from pentagram.polygon import (
    CORRUGATED,
    CoefficientArray,
    CorrugationSpec,
    TwistedPolygon,
    current_monodromy,
    is_closed,
    polygon_from_doc,
    random_closed_polygon,
    random_generic_polygon,
    tilde_coordinates,
)
from pentagram.projective import ProjectiveTransform, format_rational, parse_rational
from pentagram.spectral import spectral_report
from pentagram.verify import SuiteParams, run_suite
from pentagram_argparser import PentagramArgparser, get_args


def _matrix_doc(matrix) -> List[List[str]]:
    return [[format_rational(x) for x in row] for row in matrix]


def write_output(doc: dict, output: Optional[str]):
    text = json.dumps(doc, indent=4)
    if output:
        with open(output, "w") as f:
            f.write(text + "\n")
    else:
        print(text)


def corrugation(args: PentagramArgparser) -> Optional[CorrugationSpec]:
    if args.corrugated:
        return CORRUGATED
    if args.partially_corrugated:
        return CorrugationSpec.parse(args.partially_corrugated)
    return None


def random_coefficients(args: PentagramArgparser) -> CoefficientArray:
    spec = corrugation(args)
    if spec is None:
        return random_generic_polygon(args.d, args.n, args.seed, args.bound, args.max_retries)
    return random_corrugated_polygon(
        args.d, args.n, args.seed, args.bound, args.max_retries, spec
    )


def map_spec(args: PentagramArgparser) -> Optional[MapSpec]:
    if args.map is not None:
        return MapSpec.from_json(args.map)
    if args.variant is not None:
        return MapSpec.from_flags(args.variant, args.m, args.p, args.I, args.J, args.q, args.r, args.l)
    return None


def load_polygon(args: PentagramArgparser) -> TwistedPolygon:
    """The --input document, or a random polygon from --seed."""
    if args.input is None:
        return TwistedPolygon.from_coefficients(random_coefficients(args))
    try:
        if args.input == "-":
            doc = json.load(sys.stdin)
        else:
            with open(args.input, "r") as f:
                doc = json.load(f)
    except json.JSONDecodeError as exc:
        raise BadArguments(f"input is not valid JSON: {exc}")
    if not isinstance(doc, dict):
        raise BadArguments("input must be a JSON object")
    return polygon_from_doc(doc)


def cmd_generate(args: PentagramArgparser) -> int:
    doc = TwistedPolygon.from_coefficients(random_coefficients(args)).todict()
    doc["seed"] = args.seed
    write_output(doc, args.output)
    return 0


def cmd_apply(args: PentagramArgparser) -> int:
    poly = load_polygon(args)
    spec = map_spec(args)
    final, steps = iterate_map(poly, spec, args.iterations, trace=args.trace, progress=True)
    doc = final.todict()
    doc["map"] = spec.to_json()
    doc["iterations"] = args.iterations
    if args.trace:
        doc["steps"] = [step.todict() for step in steps]
    write_output(doc, args.output)
    return 0


def cmd_coeffs(args: PentagramArgparser) -> int:
    poly = load_polygon(args)
    doc = poly.todict()
    if poly.coeffs is not None:
        try:
            doc["tilde"] = _matrix_doc(tilde_coordinates(poly.coeffs))
        except DivisionByZero as exc:
            doc["tilde"] = None
            doc["tilde_note"] = exc.message
        doc["monodromy"] = _matrix_doc(current_monodromy(poly.coeffs))
        doc["is_closed"] = is_closed(poly.coeffs)
    else:
        doc["is_closed"] = ProjectiveTransform.from_rows(poly.monodromy_matrix).is_scalar()
    write_output(doc, args.output)
    return 0


def cmd_verify(args: PentagramArgparser) -> int:
    params = SuiteParams(
        d=args.d,
        n=args.n,
        seed=args.seed or 0,
        trials=args.trials,
        bound=args.bound,
        max_retries=args.max_retries,
        m=args.m,
        s=None if args.s is None else parse_rational(args.s),
        spec=map_spec(args),
        polygon=None if args.input is None else load_polygon(args),
        ns=tuple(args.ns or ()),
    )
    report = run_suite(args.suite, params)
    write_output(report, args.output)
    return 0 if report["passed"] else 1


def cmd_spectrum(args: PentagramArgparser) -> int:
    poly = load_polygon(args)
    if args.lax is not None:
        variant = create_lax(args.lax, poly.d, m=args.m, l=args.l)
    elif map_spec(args) is not None:
        spec = map_spec(args)
        variant = lax_for_map(spec, poly.d)
        if variant is None:
            raise BadArguments(f"no Lax variant registered for {spec}")
    else:
        variant = dented(poly.d, 1)
    write_output(spectral_report(poly, variant, with_genus=args.genus), args.output)
    return 0


def cmd_plot(args: PentagramArgparser) -> int:
    if args.input is None:
        # seeded coefficient polygons start at the basis vectors, which sit at infinity in the chart
        poly = random_closed_polygon(
            args.d, args.n, args.seed, args.bound, args.max_retries, affine=True
        )
    else:
        poly = load_polygon(args)
    svg, counts = plot_orbit(
        poly, map_spec(args), args.iterations if map_spec(args) else 0, args.chart, progress=True
    )
    if args.output:
        with open(args.output, "wb") as f:
            f.write(svg)
        print(json.dumps({"output": args.output, "points": counts}, indent=4))
    else:
        sys.stdout.buffer.write(svg)
    return 0


COMMANDS = {
    "generate": cmd_generate,
    "apply": cmd_apply,
    "coeffs": cmd_coeffs,
    "verify": cmd_verify,
    "spectrum": cmd_spectrum,
    "plot": cmd_plot,
}


def main(argv: Optional[List[str]] = None) -> int:
    try:
        args = get_args(argv)
        return COMMANDS[args.command](args)
    except PentagramError as exc:
        print(json.dumps(exc.todict(), indent=4))
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
