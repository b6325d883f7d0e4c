"""``bksfsim`` command line.

Exit codes: 0 success, 1 integral-file parse error, 2 validation error,
3 numeric failure.
"""

import argparse
import csv
import io
import sys

import numpy as np

from .circuits import OrderingSearch, gate_count
from .exceptions import BKSFError, ValidationError
from .fermion import build_molecular_hamiltonian, bundled_h2_path, load_integrals
from .simulator import ground_state
from .transforms import MAPPERS, get_mapper


def parse_steps(text):
    """``"1..11"`` or ``"1,2,4"`` (or a mix) to a sorted list of positive ints."""
    out = set()
    for part in text.split(","):
        part = part.strip()
        try:
            if ".." in part:
                lo, hi = part.split("..")
                out.update(range(int(lo), int(hi) + 1))
            else:
                out.add(int(part))
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad steps spec {text!r}") from None
    if not out or min(out) < 1:
        raise argparse.ArgumentTypeError("steps must be positive integers")
    return sorted(out)


def _positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def build_parser():
    parser = argparse.ArgumentParser(
        prog="bksfsim",
        description="Map molecular Hamiltonians to qubits and study their Trotterization.")
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("input", nargs="?", default=None,
                       help="MOLINT integral file (default: bundled H2/STO-3G)")
        p.add_argument("--transform", choices=sorted(MAPPERS), default="jw")
        p.add_argument("--tol", type=float, default=1e-12,
                       help="coefficient drop tolerance")
        return p

    p = command("transform", "print the qubit Hamiltonian")
    p.add_argument("--digits", type=int, default=6)
    command("gatecount", "gates for one first-order step over all terms")
    p = command("stabilizers", "interaction graph, loops, stabilizers and vacuum")
    p.set_defaults(transform="bksf")
    command("groundstate", "lowest energy (code space for bksf)")
    p = command("trotter-scan", "Trotter error per ordering and step count, as CSV")
    p.add_argument("--time", type=float, default=1.0)
    p.add_argument("--order", type=int, choices=(1, 2, 3, 4), default=1)
    p.add_argument("--steps", type=parse_steps, default=list(range(1, 12)))
    p.add_argument("--orderings", choices=("magnitude", "random", "both"), default="both")
    p.add_argument("--count", type=_positive_int, default=1000)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--energy", choices=("eigenphase", "expectation"), default="eigenphase",
                   help="read the Trotter energy from the closest eigenphase "
                        "or from <ground|U|ground>")
    p.add_argument("--output", "-o", default=None, help="CSV path (default: stdout)")
    return parser


def _load(args):
    path = args.input if args.input is not None else bundled_h2_path()
    fermion = build_molecular_hamiltonian(load_integrals(path))
    mapper = get_mapper(args.transform, tol=args.tol).fit(fermion)
    return fermion, mapper, mapper.transform(fermion)


def cmd_transform(args, out):
    _, _, qubit = _load(args)
    print(qubit.to_text(digits=args.digits), file=out)


def cmd_gatecount(args, out):
    _, _, qubit = _load(args)
    total, kinds = gate_count(qubit)
    for kind in sorted(kinds):
        print(f"{kind} {kinds[kind]}", file=out)
    print(f"total {total}", file=out)


def _amplitude_lines(vec, n_qubits, tol=1e-12):
    for index, amp in enumerate(vec):
        if abs(amp) > tol:
            yield f"|{index:0{n_qubits}b}> {amp.real:+.6f} {amp.imag:+.6f}j"


def cmd_stabilizers(args, out):
    if args.transform != "bksf":
        raise ValidationError("stabilizers are only defined for --transform bksf")
    _, mapper, _ = _load(args)
    g = mapper.graph_
    print(f"modes {g.n_vertices} edges {g.n_edges} loops {len(mapper.stabilizers_)}",
          file=out)
    print(g.to_text(), file=out)
    for loop, stab in zip(mapper.stabilizers_.loops, mapper.stabilizers_.operators):
        print("loop " + " ".join(map(str, loop.vertices))
              + " stabilizer " + stab.to_text(digits=1), file=out)
    if mapper.vacuum_ is not None:
        print("vacuum", file=out)
        for line in _amplitude_lines(mapper.vacuum_, g.n_edges):
            print(line, file=out)


def cmd_groundstate(args, out):
    _, mapper, qubit = _load(args)
    energy, _ = ground_state(qubit, mapper.projector_)
    print(f"ground_energy_hartree {energy!r}", file=out)


CSV_HEADER = ("ordering_id", "seed", "order", "steps", "energy_hartree", "abs_error_hartree")


def write_scan_csv(records, order, stream):
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for rec in sorted(records, key=lambda r: r.ordering_id):
        seed = "" if rec.seed is None else rec.seed
        for n in sorted(rec.errors):
            writer.writerow([rec.ordering_id, seed, order, n,
                             repr(rec.energies[n]), repr(rec.errors[n])])


def cmd_trotter_scan(args, out):
    _, mapper, qubit = _load(args)
    search = OrderingSearch(time=args.time, order=args.order, steps=args.steps,
                            orderings=args.orderings, n_random=args.count, seed=args.seed,
                            energy=args.energy)
    search.fit(qubit, projector=mapper.projector_)
    buf = io.StringIO()
    write_scan_csv(search.records_, args.order, buf)
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(buf.getvalue())
    else:
        out.write(buf.getvalue())
    best = search.best_
    info = sys.stderr if not args.output else out
    print(f"exact_energy_hartree {search.exact_energy_!r}", file=info)
    print(f"best_ordering {best.ordering_id} single_step_error {best.single_step_error:.6e}",
          file=info)
    labels = " ".join(t.string.label for t in search.best_terms())
    print(f"best_terms {labels}", file=info)


COMMANDS = {
    "transform": cmd_transform,
    "gatecount": cmd_gatecount,
    "stabilizers": cmd_stabilizers,
    "groundstate": cmd_groundstate,
    "trotter-scan": cmd_trotter_scan,
}


def main(argv=None, out=None):
    args = build_parser().parse_args(argv)
    out = out or sys.stdout
    try:
        with np.errstate(all="raise"):
            COMMANDS[args.command](args, out)
    except BKSFError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FloatingPointError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    return 0
