"""Command-line interface.

Every subcommand is deterministic: identical inputs and flags produce
byte-identical outputs.  Construction subcommands verify their outputs
before writing (--no-verify skips that for timing experiments only).
Exit codes: 0 success, 1 validation failure, 2 usage error, 3 internal
invariant violation (with a repro dump on stderr).
"""

from __future__ import annotations

import argparse
import sys
import traceback
from pathlib import Path

from . import completion
from . import io as mio
from .constructions import (
    PairEmbedInputs,
    SquareEmbedResult,
    amplify,
    build_576,
    embed_pls_with_mates,
    make_idempotent,
    pair_embed,
    square_embed,
)
from .core import (
    InvariantViolation,
    LatinSquare,
    MolskitError,
    MolsSet,
    PartialLatinSquare,
    check_embedding,
    verify_mols,
)
from .fields import (
    FiniteField,
    gen_mols_prime_power,
    macneish_product,
    modulus_terms,
    prime_power_decompose,
)


def _write(path: str | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="\n") as fh:
            fh.write(text)


def _read(path: str) -> str:
    return Path(path).read_text()


def _load_certified_mols(path: str, stage: str) -> MolsSet:
    """Parse and certify a MOLS file; on failure print the report and raise."""
    grids = mio.parse_mols_raw(_read(path))
    report = verify_mols(grids)
    if not report.ok:
        sys.stderr.write(mio.emit_report(report))
        raise MolskitError(f"{stage}: {path} failed certification")
    return MolsSet([LatinSquare(g) for g in grids], certified=True)


def cmd_gen_mols(args) -> int:
    mols = gen_mols_prime_power(args.q, verify=not args.no_verify)
    _write(args.out, mio.emit_mols(mols))
    return 0


def cmd_complete(args) -> int:
    square = mio.parse_grid(_read(args.infile))
    if isinstance(square, LatinSquare):
        square = PartialLatinSquare(square.grid)
    if args.idempotent:
        completed = completion.idempotent_complete(square, args.order)
    else:
        completed = completion.evans_complete(square, args.order)
    _write(args.out, mio.emit_grid(completed))
    return 0


def _write_embed_outputs(
    outdir: str, result: SquareEmbedResult, source: PartialLatinSquare
) -> None:
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    members = [("host", "host.ls", mio.emit_grid(result.host))]
    for i, mate in enumerate(result.mates, start=1):
        members.append((f"mate {i:03d}", f"mate-{i:03d}.ls", mio.emit_grid(mate)))
    members.append(
        ("witness", "witness.txt", mio.emit_witness(result.witness, result.host.order))
    )
    report = verify_mols(result.mols()) if result.certified else None
    extra = [f"witness valid {'true' if check_embedding(source, result.host, result.witness) else 'false'}"]
    extra += [f"note {n}" for n in result.notes]
    if report is not None:
        members.append(("report", "report.txt", mio.emit_report(report, extra=extra)))
    manifest = "".join(f"{role} {name}\n" for role, name, _ in members)
    for _, name, text in members:
        with open(out / name, "w", newline="\n") as fh:
            fh.write(text)
    with open(out / "manifest.txt", "w", newline="\n") as fh:
        fh.write(manifest)


def cmd_embed_square(args) -> int:
    square = mio.parse_grid(_read(args.infile))
    verify = not args.no_verify
    if isinstance(square, LatinSquare) and _prime_power_in_table(square.order):
        # Full square of prime-power order: embed directly at order n^2.
        mols = gen_mols_prime_power(square.order)
        result = square_embed(square, mols, verify=verify)
        if args.idempotent:
            result = make_idempotent(result, verify=verify)
        source = PartialLatinSquare(square.grid)
    else:
        if isinstance(square, LatinSquare):
            square = PartialLatinSquare(square.grid)
        result = embed_pls_with_mates(square, idempotent=args.idempotent, verify=verify)
        source = square
    _write_embed_outputs(args.out_dir, result, source)
    return 0


def _prime_power_in_table(n: int) -> bool:
    try:
        p, k = prime_power_decompose(n)
        FiniteField(p, k)
    except ValueError:
        return False
    return True


def _parse_perm(spec: str, t: int) -> tuple[int, ...]:
    try:
        perm = tuple(int(x) for x in spec.split(","))
    except ValueError:
        raise MolskitError(f"bad permutation spec {spec!r}") from None
    if sorted(perm) != list(range(t)):
        raise MolskitError(f"permutation spec must cover 0..{t - 1} exactly once")
    return perm


def cmd_embed_pair(args) -> int:
    def load_latin(path: str) -> LatinSquare:
        square = mio.parse_grid(_read(path))
        if not isinstance(square, LatinSquare):
            raise MolskitError(f"{path}: expected a full latin grid")
        return square

    a1, a2 = load_latin(args.a1), load_latin(args.a2)
    d1, d2 = load_latin(args.d1), load_latin(args.d2)
    cset = _load_certified_mols(args.c, "embed-pair")
    f = _parse_perm(args.f, len(cset)) if args.f else ()
    inputs = PairEmbedInputs(a1, a2, d1, d2, cset, f)
    result = pair_embed(inputs, verify=not args.no_verify)

    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    squares = list(result.mols)
    members = [
        ("host-1", "host-1.ls", mio.emit_grid(squares[0])),
        ("host-2", "host-2.ls", mio.emit_grid(squares[1])),
    ]
    for i, mate in enumerate(squares[2:], start=1):
        members.append((f"mate {i:03d}", f"mate-{i:03d}.ls", mio.emit_grid(mate)))
    order = result.mols.order
    members.append(("witness-d1", "witness-d1.txt", mio.emit_witness(result.witness_d1, order)))
    members.append(("witness-d2", "witness-d2.txt", mio.emit_witness(result.witness_d2, order)))
    if result.mols.certified:
        report = verify_mols(result.mols)
        extra = [
            f"witness d1 valid {'true' if check_embedding(PartialLatinSquare(d1.grid), squares[0], result.witness_d1) else 'false'}",
            f"witness d2 valid {'true' if check_embedding(PartialLatinSquare(d2.grid), squares[1], result.witness_d2) else 'false'}",
        ]
        members.append(("report", "report.txt", mio.emit_report(report, extra=extra)))
    for _, name, text in members:
        with open(out / name, "w", newline="\n") as fh:
            fh.write(text)
    with open(out / "manifest.txt", "w", newline="\n") as fh:
        fh.write("".join(f"{role} {name}\n" for role, name, _ in members))
    return 0


def cmd_amplify(args) -> int:
    mols = _load_certified_mols(args.infile, "amplify")
    result = amplify(mols, verify=not args.no_verify)
    _write(args.out, mio.emit_mols(result))
    return 0


def cmd_build_576(args) -> int:
    mols24 = _load_certified_mols(args.mols24, "build-576") if args.mols24 else None
    result = build_576(mols24, verify=not args.no_verify)
    _write(args.out, mio.emit_mols(result))
    sys.stderr.write(f"built {len(result)} MOLS(576)\n")
    return 0


def cmd_product(args) -> int:
    a = _load_certified_mols(args.a, "product")
    b = _load_certified_mols(args.b, "product")
    result = macneish_product(a, b, verify=not args.no_verify)
    _write(args.out, mio.emit_mols(result))
    return 0


def cmd_verify(args) -> int:
    sections = [f"report verify\ninputs {len(args.infile)}\n"]
    ok = True
    for i, path in enumerate(args.infile):
        text = _read(path)
        head = text.split(None, 1)[0] if text.split() else ""
        if head == "mols":
            grids = mio.parse_mols_raw(text)
            report = verify_mols(grids)
            ok = ok and report.ok
            sections.append(f"input {i} mols\n")
            sections.append(mio.emit_report(report, include_timing=args.timings))
        elif head == "latin":
            _, grid = mio.parse_grid_raw(text)
            report = verify_mols([grid])
            ok = ok and report.ok
            sections.append(f"input {i} latin\n")
            sections.append(mio.emit_report(report, include_timing=args.timings))
        elif head == "partial":
            square = mio.parse_grid(text)
            sections.append(
                f"input {i} partial\norder {square.order}\nvolume {square.volume}\nvalid true\n"
            )
        else:
            raise MolskitError(f"verify: {path}: unknown file kind {head!r}")
    body = "".join(sections)
    _write(args.report, body)
    return 0 if ok else 1


def cmd_info(args) -> int:
    if args.field:
        p, k = args.field
        ff = FiniteField(p, k)
        sys.stdout.write(
            f"field GF({p}^{k}) order {ff.order}\n"
            f"modulus {ff.modulus}\n"
            f"polynomial {modulus_terms(ff.modulus, p)}\n"
        )
        return 0
    if args.formats:
        sys.stdout.write(mio.__doc__.strip() + "\n")
        return 0
    raise MolskitError("info: pass --field P K or --formats")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="molskit",
        description="Constructions and certification for mutually orthogonal "
        "Latin squares and partial Latin square embeddings.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        return p

    p = add("gen-mols", cmd_gen_mols, "generate the q-1 field MOLS of prime-power order q")
    p.add_argument("--q", type=int, required=True, help="prime power order")
    p.add_argument("--out", help="output MOLS file (default stdout)")
    p.add_argument("--no-verify", action="store_true", help="skip output certification")

    p = add("complete", cmd_complete, "complete a partial grid to a Latin square of a given order")
    p.add_argument("--in", dest="infile", required=True, help="partial grid file")
    p.add_argument("--order", type=int, required=True, help="target order t (>= 2n, or 2n+1 idempotent)")
    p.add_argument("--idempotent", action="store_true", help="produce an idempotent square")
    p.add_argument("--out", help="output grid file (default stdout)")

    p = add(
        "embed-square",
        cmd_embed_square,
        "embed a grid in a square-order host with many orthogonal mates",
    )
    p.add_argument("--in", dest="infile", required=True, help="partial or latin grid file")
    p.add_argument("--idempotent", action="store_true", help="make the host idempotent")
    p.add_argument("--out-dir", required=True, help="directory for host, mates, witness, report")
    p.add_argument("--no-verify", action="store_true", help="skip output certification")

    p = add("embed-pair", cmd_embed_pair, "embed an orthogonal pair with t+2 mutually orthogonal outputs")
    p.add_argument("--a1", required=True, help="first square of the block-structure pair")
    p.add_argument("--a2", required=True, help="second square of the block-structure pair")
    p.add_argument("--d1", required=True, help="first square of the hosted pair")
    p.add_argument("--d2", required=True, help="second square of the hosted pair")
    p.add_argument("--c", required=True, help="MOLS file supplying the mate factors")
    p.add_argument("--f", help="mate pairing bijection, e.g. 2,0,1 (default identity)")
    p.add_argument("--out-dir", required=True, help="directory for hosts, mates, witnesses, report")
    p.add_argument("--no-verify", action="store_true", help="skip output certification")

    p = add("amplify", cmd_amplify, "turn t MOLS(n) into t+2 MOLS(n^2)")
    p.add_argument("--in", dest="infile", required=True, help="input MOLS file (t >= 2)")
    p.add_argument("--out", help="output MOLS file (default stdout)")
    p.add_argument("--no-verify", action="store_true", help="skip output certification")

    p = add("build-576", cmd_build_576, "build MOLS(576): 9 from an ingested 7-MOLS(24) file, else 4")
    p.add_argument("--mols24", help="optional MOLS(24) file (published data)")
    p.add_argument("--out", help="output MOLS file (default stdout)")
    p.add_argument("--no-verify", action="store_true", help="skip output certification")

    p = add("verify", cmd_verify, "certify grids and MOLS files, writing a report")
    p.add_argument("--in", dest="infile", nargs="+", required=True, help="input files")
    p.add_argument("--report", help="report file (default stdout)")
    p.add_argument("--timings", action="store_true", help="append timing lines (non-reproducible bytes)")

    p = add("product", cmd_product, "MacNeish product of two MOLS files")
    p.add_argument("--a", required=True, help="first MOLS file")
    p.add_argument("--b", required=True, help="second MOLS file")
    p.add_argument("--out", help="output MOLS file (default stdout)")
    p.add_argument("--no-verify", action="store_true", help="skip output certification")

    p = add("info", cmd_info, "show the field modulus table or the file formats")
    p.add_argument("--field", nargs=2, type=int, metavar=("P", "K"), help="show GF(p^k) modulus")
    p.add_argument("--formats", action="store_true", help="describe the file formats")

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InvariantViolation as exc:
        sys.stderr.write(f"internal invariant violation in {args.command}: {exc}\n")
        sys.stderr.write("repro dump:\n")
        sys.stderr.write("".join(f"  {k} = {v!r}\n" for k, v in sorted(vars(args).items()) if k != "func"))
        traceback.print_exc(file=sys.stderr)
        return 3
    except (MolskitError, ValueError, OSError) as exc:
        sys.stderr.write(f"error in {args.command}: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
