# Copyright (2025) Bytedance Ltd. and/or its affiliates

# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at

#     https://www.apache.org/licenses/LICENSE-2.0

# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Command-line frontend.

Exit codes: 0 when every check passes, 1 on a mismatch or failed check,
2 on usage and parse errors.
"""

import argparse
import logging
import os
import sys

sys.path.append(os.path.join(os.path.dirname(__file__), '..'))

from cohomology_engine.algebra.abgroup import parse_group, ring_modulus
from cohomology_engine.bench.builtin_suite import builtin_suite
from cohomology_engine.bench.runner import load_suite, ring_for, run_suite
from cohomology_engine.config import log_level
from cohomology_engine.topology import sequences, spaces
from cohomology_engine.topology.complex import cohomology, homology, load_complex
from cohomology_engine.topology.cup import match_presentation
from cohomology_engine.utils.parser.parse_presentation import parse_presentation
from cohomology_engine.utils.show_msg import show_msg, write_json

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


def _complex_from_args(args):
    if getattr(args, "complex", None):
        if not os.path.exists(args.complex):
            raise FileNotFoundError(f"Complex file not found: {args.complex}")
        return args.complex, load_complex(args.complex)
    if not args.space:
        raise ValueError("Give --space or --complex")
    space = spaces.parse_space(args.space)
    return str(space), spaces.cellular(space)


def cmd_group(args) -> int:
    name, x = _complex_from_args(args)
    coefficients = parse_group(args.coeff)
    group = cohomology(x, args.deg, coefficients, reduced=args.reduced).group
    tilde = "~" if args.reduced else ""
    show_msg(str(group), {
        "space": name, "coeff": str(coefficients), "degree": args.deg,
        "reduced": args.reduced, "group": str(group),
        "free_rank": group.free_rank, "torsion": list(group.invariant_factors),
    }, args.json)
    logger.info("H%s^%d(%s; %s) = %s", tilde, args.deg, name, coefficients, group)
    return EXIT_OK


def cmd_homology(args) -> int:
    name, x = _complex_from_args(args)
    group = homology(x, args.deg)
    show_msg(str(group), {"space": name, "degree": args.deg, "group": str(group)}, args.json)
    return EXIT_OK


def cmd_ring(args) -> int:
    space = spaces.parse_space(args.space)
    modulus = ring_modulus(parse_group(args.coeff))
    ring = ring_for(space, modulus)
    payload = {
        "space": str(space),
        "coeff": args.coeff,
        "source": ring.source,
        "groups": [str(g) for g in ring.groups],
        "constants": [
            {"left": list(left), "right": list(right), "product": list(coords)}
            for (left, right), coords in sorted(ring.constants.items())
        ],
    }
    text = ring.render()
    status = EXIT_OK
    if args.claim:
        claim = parse_presentation(args.claim)
        result = match_presentation(ring, claim, args.max_deg)
        payload["claim"] = {"text": args.claim, "matched": result.matched, "witness": result.witness, "reason": result.reason}
        text += f"\nclaim {args.claim}: match: {'true' if result.matched else 'false'}"
        if result.matched:
            text += "  " + ", ".join(f"{k} -> H^{d} {list(c)}" for k, (d, c) in result.witness.items())
        else:
            text += f"  ({result.reason})"
            status = EXIT_FAILED
    show_msg(text, payload, args.json)
    return status


def cmd_bench(args) -> int:
    cases = builtin_suite() if args.suite in (None, "builtin") else load_suite(args.suite)
    report = run_suite(cases, threads=args.threads, progress=not args.json)
    if args.output:
        write_json(args.output, report.to_dict())
        logger.info("Report written to %s", args.output)
    show_msg(report.render(), report.to_dict(), args.json)
    return EXIT_OK if report.ok else EXIT_FAILED


def cmd_axioms(args) -> int:
    space = spaces.parse_space(args.space)
    report = sequences.axiom_suite(space, parse_group(args.coeff), args.max_deg)
    show_msg(report.render(), report.to_json(), args.json)
    return EXIT_OK if report.all_passed else EXIT_FAILED


def _exactness_lines(report: sequences.ExactnessReport):
    lines = []
    for node in report.nodes:
        mark = {True: "exact", False: "NOT exact", None: "unchecked"}[node.exact]
        lines.append(f"  {node.label}: {mark}" + (f" ({node.detail})" if node.detail else ""))
    return lines


def cmd_sequence(args) -> int:
    coefficients = parse_group(args.coeff)
    if args.kind == "mv":
        seq = sequences.mayer_vietoris_for(spaces.parse_space(args.space), coefficients, args.max_deg)
    elif args.product:
        base = spaces.cellular(spaces.parse_space(args.product))
        seq = sequences.product_bundle_sequence(base, args.n, coefficients, args.max_deg)
    elif args.preset == "cp2":
        seq = sequences.cp2_gysin(args.max_deg)
    else:
        seq = sequences.rp_infinity_gysin(args.max_deg)
    if args.forget:
        seq = sequences.forget(seq, args.forget)
    solved = sequences.solve(seq)
    exactness = sequences.check_exact(solved)
    unknown = [s.label for s in solved.slots if not s.known]

    payload = solved.to_json()
    payload["exactness"] = [{"label": n.label, "exact": n.exact, "detail": n.detail} for n in exactness.nodes]
    payload["indeterminate"] = unknown
    lines = [solved.render(), "exactness:"] + _exactness_lines(exactness)
    if args.kind == "gysin" and not args.product:
        n = 2 if args.preset == "cp2" else 1
        report = sequences.gysin_report(solved, n, args.max_deg)
        payload["powers"] = {str(k): list(v) for k, v in report.powers.items()}
        payload["generates"] = {str(k): v for k, v in report.generates.items()}
        payload["cup_isomorphisms"] = {str(k): v for k, v in report.isomorphisms.items()}
        for k, coords in sorted(report.powers.items()):
            if k:
                lines.append(f"e^{k} = {list(coords)} in H^{k * n}(B): {'generator' if report.generates[k] else 'not a generator'}")
    show_msg("\n".join(lines), payload, args.json)
    failed = unknown or any(node.exact is False for node in exactness.nodes)
    return EXIT_FAILED if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description="Exact cohomology of small spaces: groups, rings, exact sequences and axiom checks",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # Cohomology groups
  python cohomology_engine/main.py group --space torus --coeff Z --deg 1
  python cohomology_engine/main.py group --space rp2 --coeff Z/4 --deg 2

  # Rings and presentation claims
  python cohomology_engine/main.py ring --space rp2 --coeff Z/2 --claim "Z/2[x]/(x^3)"
  python cohomology_engine/main.py ring --space cp2 --coeff Z --claim "Z[x]/(x^3)"

  # Benchmark table
  python cohomology_engine/main.py bench --output report.json

  # Axioms and exact sequences
  python cohomology_engine/main.py axioms --space s2 --coeff Z/6
  python cohomology_engine/main.py sequence mv --space s1 --coeff Z --forget "H^1(X)"
  python cohomology_engine/main.py sequence gysin --preset cp2
        """,
    )
    parser.add_argument("--verbose", action="store_true", help="Log at DEBUG level")
    subparsers = parser.add_subparsers(dest="command", help="Command to execute")

    group_parser = subparsers.add_parser("group", help="Cohomology group H^n(X; G)")
    group_parser.add_argument("--space", type=str, help="Catalog space id, e.g. s2, torus, rpN:5, wedge:s2,s1,s1")
    group_parser.add_argument("--complex", type=str, help="Path to a cell complex JSON file")
    group_parser.add_argument("--coeff", type=str, default="Z", help="Coefficient group, e.g. Z, Z/2, Z + Z/4")
    group_parser.add_argument("--deg", type=int, required=True, help="Degree n")
    group_parser.add_argument("--reduced", action="store_true", help="Reduced cohomology")

    homology_parser = subparsers.add_parser("homology", help="Integral homology H_n(X)")
    homology_parser.add_argument("--space", type=str, help="Catalog space id")
    homology_parser.add_argument("--complex", type=str, help="Path to a cell complex JSON file")
    homology_parser.add_argument("--deg", type=int, required=True, help="Degree n")

    ring_parser = subparsers.add_parser("ring", help="Cohomology ring and presentation matching")
    ring_parser.add_argument("--space", type=str, required=True, help="Space with a triangulation, or cp2 / rpN:k")
    ring_parser.add_argument("--coeff", type=str, default="Z", help="Z or Z/m")
    ring_parser.add_argument("--claim", type=str, default=None, help='Presentation such as "Z[x,y]/(2y,x^2,y^2,xy)"')
    ring_parser.add_argument("--max-deg", dest="max_deg", type=int, default=None, help="Highest degree compared")

    bench_parser = subparsers.add_parser("bench", help="Run a benchmark suite")
    bench_parser.add_argument("--suite", type=str, default=None, help="Suite JSON file (default: builtin)")
    bench_parser.add_argument("--output", type=str, default=None, help="Write the JSON report here")
    bench_parser.add_argument("--threads", type=int, default=None, help="Worker threads (default: COHOMOLOGY_BENCH_THREADS)")

    axioms_parser = subparsers.add_parser("axioms", help="Eilenberg-Steenrod axiom checks")
    axioms_parser.add_argument("--space", type=str, required=True, help="Catalog space id")
    axioms_parser.add_argument("--coeff", type=str, default="Z", help="Coefficient group")
    axioms_parser.add_argument("--max-deg", dest="max_deg", type=int, default=3, help="Highest degree checked (default: 3)")

    seq_parser = subparsers.add_parser("sequence", help="Long exact sequences")
    seq_parser.add_argument("kind", choices=["mv", "gysin"], help="Mayer-Vietoris or Gysin")
    seq_parser.add_argument("--space", type=str, default=None, help="Space with a covering pair (mv): s1, s2, torus")
    seq_parser.add_argument("--coeff", type=str, default="Z", help="Coefficient group")
    seq_parser.add_argument("--preset", choices=["cp2", "rpinf"], default="cp2", help="Gysin preset (default: cp2)")
    seq_parser.add_argument("--product", type=str, default=None, help="Gysin sequence of SPACE x S^(n-1) instead of a preset")
    seq_parser.add_argument("--n", type=int, default=2, help="Euler class degree for --product (default: 2)")
    seq_parser.add_argument("--max-deg", dest="max_deg", type=int, default=None, help="Highest degree in the window")
    seq_parser.add_argument("--forget", action="append", default=[], help="Hide a slot by label, then solve for it")

    for sub in (group_parser, homology_parser, ring_parser, bench_parser, axioms_parser, seq_parser):
        sub.add_argument("--json", action="store_true", help="Machine-readable output")
    return parser


COMMANDS = {
    "group": cmd_group,
    "homology": cmd_homology,
    "ring": cmd_ring,
    "bench": cmd_bench,
    "axioms": cmd_axioms,
    "sequence": cmd_sequence,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not args.command:
        parser.print_help()
        return EXIT_USAGE

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else log_level(),
        format="%(asctime)s - %(levelname)s - %(message)s",
    )
    if args.command == "sequence":
        if args.max_deg is None:
            args.max_deg = 2 if args.kind == "mv" else (4 if args.preset == "cp2" else 5)
        if args.kind == "mv" and not args.space:
            parser.error("sequence mv needs --space")

    try:
        return COMMANDS[args.command](args)
    except (ValueError, FileNotFoundError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
