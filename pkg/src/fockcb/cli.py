"""Command-line entry point: ``fockcb <command> [options]``.

Exit status is 0 on success, 2 for invalid input and 3 when an internal
consistency check fails; in the last case a JSON diagnostic naming the
offending block is written to standard error.
"""

from __future__ import annotations

import argparse
import json
import logging
import re
import sys
import traceback
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import __version__, cache, conventions
from .canonical import canonical_basis, deficits_of_size
from .combinatorics import format_multipartition, make_multipartition, multipartitions_with_profile
from .crystal import enumerate_crystal, jacon_sets, jacon_word
from .errors import INTERNAL_ERRORS, InvalidInput, NonIntegral, NotDominant
from .heisenberg import vacuum_B_product
from .indexation import ChargedPartition, charged_to_l, charged_to_n, l_to_charged, n_to_charged
from .report import BlockResult, render_csv, render_json, render_latex, render_pretty, write_report

log = logging.getLogger("fockcb")

_LIST_OPTIONS = ("--charge", "--deficit", "--profile", "--mu")
_NEGATIVE = re.compile(r"^-\d")


# -- parsing helpers ---------------------------------------------------------------

def parse_ints(text: str, what: str) -> tuple:
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(",") if x != "")
    except ValueError:
        raise InvalidInput(f"{what} must be comma-separated integers, got {text!r}") from None


def parse_key(text: str):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"key must be JSON, e.g. [[2,1],[1]]: {exc}") from None
    if not isinstance(data, list):
        raise InvalidInput("key must be a JSON list")
    return data


def _multipartition(data, length: int, what: str):
    if len(data) != length or not all(isinstance(p, list) for p in data):
        raise InvalidInput(f"{what} needs {length} components")
    try:
        return make_multipartition(data)
    except ValueError as exc:
        raise InvalidInput(str(exc)) from None


def _normalise_argv(argv):
    """Let ``--charge -2,2`` through argparse by gluing it into ``--charge=-2,2``."""
    out = []
    it = iter(argv)
    for tok in it:
        if tok in _LIST_OPTIONS:
            nxt = next(it, None)
            if nxt is not None and _NEGATIVE.match(nxt):
                out.append(f"{tok}={nxt}")
                continue
            out.append(tok)
            if nxt is not None:
                out.append(nxt)
            continue
        out.append(tok)
    return out


def _charge(args, length_name="l"):
    charge = parse_ints(args.charge, "charge")
    if not charge:
        raise InvalidInput("charge must not be empty")
    given = getattr(args, length_name, None)
    if given is not None and given != len(charge):
        raise InvalidInput(f"--{length_name} {given} does not match a charge of length {len(charge)}")
    return charge


def _positive(value, name):
    if value is None or value < 1:
        raise InvalidInput(f"--{name} must be a positive integer")
    return value


# -- output ----------------------------------------------------------------------------

def _emit(text: str, output) -> None:
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


# -- block computation -----------------------------------------------------------

class BlockFailure(Exception):
    """Carries the parameters of the block whose computation failed."""

    def __init__(self, block: dict, cause: BaseException):
        super().__init__(str(cause))
        self.block = block
        self.cause = cause

    def __reduce__(self):
        return (BlockFailure, (self.block, self.cause))


def compute_block(n: int, charge, deficit, names, strategy: str, conv) -> dict:
    """Worker entry point; returns the block as a plain dict so it crosses processes."""
    try:
        sign = "both" if {"plus", "minus"} <= set(names) else ("minus" if "minus" in names else "plus")
        res = canonical_basis(charge, n, deficit, basis_sign=sign, dotted_strategy=strategy, conv=conv)
        block = BlockResult.from_transition(res, names)
        return block.to_dict(include_timings=True)
    except INTERNAL_ERRORS as exc:
        raise BlockFailure({"n": n, "charge": list(charge), "deficit": list(deficit), "strategy": strategy}, exc) from exc


def compute_blocks(n, charge, deficits, names, strategy, cache_flag=None, threads=1) -> list:
    directory = cache.cache_dir(cache_flag)
    conv = conventions.current()
    results: dict = {}
    todo = []
    for N in deficits:
        if directory is not None:
            hit = cache.load(directory, cache.block_key(n, charge, N, strategy))
            if hit is not None and set(names) <= set(hit.matrices):
                log.info("cache hit for deficit %s", N)
                hit.matrices = {k: hit.matrices[k] for k in names}
                results[N] = hit
                continue
        todo.append(N)
    stored = list(dict.fromkeys(list(names) + ["A"]))
    if threads > 1 and len(todo) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            futures = {N: pool.submit(compute_block, n, charge, N, stored, strategy, conv) for N in todo}
            computed = {N: f.result() for N, f in futures.items()}
    else:
        computed = {N: compute_block(n, charge, N, stored, strategy, conv) for N in todo}
    for N, data in computed.items():
        block = BlockResult.from_dict(data)
        block.timings = data.get("timings", {})
        if directory is not None:
            cache.store(directory, cache.block_key(n, charge, N, strategy), block)
        block.matrices = {k: block.matrices[k] for k in names}
        results[N] = block
    return [results[N] for N in deficits]


def _deficits(args, charge) -> list:
    n = args.n
    if args.deficit is not None:
        N = parse_ints(args.deficit, "deficit")
        if len(N) != n:
            raise InvalidInput(f"deficit needs {n} entries")
        if any(x < 0 for x in N):
            raise InvalidInput("deficit entries must be nonnegative")
        return [N]
    if args.size < 0:
        raise InvalidInput("--size must be nonnegative")
    found = deficits_of_size(charge, n, args.size)
    if not found:
        raise InvalidInput(f"no multipartition of size {args.size} for this charge")
    return found


def _render(blocks, args, params, names) -> str:
    fmt = args.format
    if fmt == "json":
        return render_json(blocks, params)
    if fmt == "csv":
        return render_csv(blocks)
    if fmt == "latex":
        return "\n".join(render_latex(b, name) for b in blocks for name in names)
    return "\n".join(render_pretty(b) for b in blocks)


def _run_matrices(args, names) -> int:
    _positive(args.n, "n")
    charge = _charge(args)
    deficits = _deficits(args, charge)
    if args.threads < 1:
        raise InvalidInput("--threads must be at least 1")
    blocks = compute_blocks(args.n, charge, deficits, names, args.strategy, args.cache, args.threads)
    params = {"n": args.n, "l": len(charge), "charge": list(charge)}
    if args.size is not None:
        params["size"] = args.size
    _emit(_render(blocks, args, params, names), args.output)
    if args.report:
        for path in write_report(blocks, args.report):
            log.info("wrote %s", path)
    if getattr(args, "verify", False):
        return _verify_blocks(blocks, charge, args.n)
    return 0


def _verify_blocks(blocks, charge, n) -> int:
    from .checks import matrix_problems

    failed = []
    for b in blocks:
        A = b.matrices.get("A")
        if A is None:
            A = compute_blocks(n, charge, [b.deficit], ["A"], "auto")[0].matrices["A"]
        problems = matrix_problems(A, b.labels, charge, n, b.matrices.get("plus"), b.matrices.get("minus"))
        for name, problem in problems.items():
            status = "PASS" if problem is None else "FAIL"
            print(f"{status}  {name} {tuple(b.deficit)}" + (f"  {problem}" if problem else ""), file=sys.stderr)
            if problem:
                failed.append({"check": name, "deficit": list(b.deficit), "problem": problem})
    if failed:
        _dump({"error": "InvariantFailure", "failures": failed, "n": n, "charge": list(charge)})
        return 3
    return 0


# -- subcommands -------------------------------------------------------------------

def cmd_canonical(args) -> int:
    names = {"plus": ["plus"], "minus": ["minus"], "both": ["plus", "minus"]}[args.basis]
    return _run_matrices(args, names)


def cmd_involution(args) -> int:
    return _run_matrices(args, ["A"])


def cmd_convert(args) -> int:
    key = parse_key(args.key)
    charge = parse_ints(args.charge, "charge")
    src, dst = args.source, args.target
    n, l = args.n, args.l
    if src == "l":
        _positive(n, "n")
        l = len(charge) if l is None else l
        if len(charge) != l:
            raise InvalidInput("an l-side key needs an l-multicharge")
        cp = l_to_charged(_multipartition(key, l, "key"), charge, n, l)
    elif src == "n":
        _positive(l, "l")
        n = len(charge) if n is None else n
        if len(charge) != n:
            raise InvalidInput("an n-side key needs an n-multicharge")
        cp = n_to_charged(_multipartition(key, n, "key"), charge, n, l)
    else:
        _positive(n, "n")
        _positive(l, "l")
        if len(charge) != 1:
            raise InvalidInput("a charged partition takes a single integer charge")
        try:
            part = make_multipartition([key])[0]
        except ValueError as exc:
            raise InvalidInput(str(exc)) from None
        cp = ChargedPartition(part, charge[0])
    if dst == "l":
        mp, ch = charged_to_l(cp, n, l)
        out = {"side": "l", "key": [list(p) for p in mp], "charge": list(ch)}
    elif dst == "n":
        mp, ch = charged_to_n(cp, n, l)
        out = {"side": "n", "key": [list(p) for p in mp], "charge": list(ch)}
    else:
        out = {"side": "charged", "key": list(cp.partition), "charge": cp.charge}
    if args.format == "json":
        text = json.dumps(out) + "\n"
    else:
        key_text = format_multipartition(out["key"]) if dst != "charged" else str(out["key"])
        text = f"{key_text} charge {out['charge']}\n"
    _emit(text, args.output)
    return 0


def cmd_crystal(args) -> int:
    v = parse_ints(args.charge, "charge")
    modulus = _positive(args.n if args.side == "l" else args.l, "n" if args.side == "l" else "l")
    profile = parse_ints(args.profile, "profile")
    if len(profile) != modulus or any(x < 0 for x in profile):
        raise InvalidInput(f"profile needs {modulus} nonnegative entries")
    verts = enumerate_crystal(v, modulus, profile, side=args.side)
    rows = [{"key": [list(p) for p in mp], "word": str(jacon_word(mp, v, modulus, args.side))} for mp in verts]
    if args.all:
        inside = set(verts)
        rows = []
        for mp in multipartitions_with_profile(profile, v, modulus):
            row = {"key": [list(p) for p in mp], "in_crystal": mp in inside}
            if mp in inside:
                row["word"] = str(jacon_word(mp, v, modulus, args.side))
            rows.append(row)
    if args.format == "json":
        text = json.dumps({"charge": list(v), "modulus": modulus, "side": args.side, "profile": list(profile), "vertices": rows}, ensure_ascii=False, indent=2) + "\n"
    else:
        lines = [f"{len(verts)} vertices"]
        for r in rows:
            mark = "*" if r.get("in_crystal", True) else " "
            lines.append(f"{mark} {format_multipartition(r['key'])}  {r.get('word', '')}".rstrip())
        text = "\n".join(lines) + "\n"
    _emit(text, args.output)
    return 0


def cmd_jacon(args) -> int:
    v = parse_ints(args.charge, "charge")
    modulus = _positive(args.n if args.side == "l" else args.l, "n" if args.side == "l" else "l")
    mp = _multipartition(parse_key(args.key), len(v), "key")
    word = jacon_word(mp, v, modulus, args.side)
    first = jacon_sets(mp, v, modulus)
    out = {
        "key": [list(p) for p in mp],
        "charge": list(v),
        "word": str(word),
        "factors": [list(f) for f in word.factors],
        "first_step_sets": {str(k): [list(g) for g in first[k]] for k in sorted(first)},
    }
    if args.format == "json":
        text = json.dumps(out, ensure_ascii=False, indent=2) + "\n"
    else:
        lines = [f"F({format_multipartition(mp)}) = {word}"]
        for k in sorted(first):
            lines.append(f"  X_{k} = {[tuple(g) for g in first[k]]}")
        text = "\n".join(lines) + "\n"
    _emit(text, args.output)
    return 0


def cmd_boson(args) -> int:
    _positive(args.n, "n")
    charge = _charge(args)
    mu = parse_ints(args.mu, "mu")
    if any(m <= 0 for m in mu):
        raise InvalidInput("mu must have positive parts")
    vec = vacuum_B_product(tuple(sorted(mu, reverse=True)), charge, args.n)
    if args.format == "json":
        text = json.dumps(vec.to_json_dict(), indent=2) + "\n"
    else:
        text = vec.pretty() + "\n"
    _emit(text, args.output)
    return 0


def cmd_verify(args) -> int:
    from .checks import run_suite

    _positive(args.n, "n")
    charge = _charge(args)
    deficits = None
    if args.deficit is not None:
        deficits = [parse_ints(args.deficit, "deficit")]
        if len(deficits[0]) != args.n:
            raise InvalidInput(f"deficit needs {args.n} entries")
    results = run_suite(charge, args.n, size=args.size, deficits=deficits, max_boxes=args.max_boxes)
    if args.format == "json":
        text = json.dumps([{"check": r.name, "passed": r.passed, "detail": r.detail} for r in results], indent=2) + "\n"
    else:
        text = "\n".join(r.line() for r in results) + "\n"
    _emit(text, args.output)
    failed = [r for r in results if not r.passed]
    if failed:
        _dump({"error": "InvariantFailure", "n": args.n, "charge": list(charge), "failures": [{"check": r.name, "problem": r.detail} for r in failed]})
        return 3
    return 0


def cmd_pin(args) -> int:
    from .pinning import run_harness, unique_winner

    results = run_harness()
    lines = []
    for r in results:
        status = "match" if r.matches else ("error" if r.error else f"{r.mismatches} mismatches")
        lines.append(f"{r.convention.label():28s} {status}" + (f"  ({r.error})" if r.error else ""))
    winner = unique_winner(results)
    if winner is None:
        count = sum(r.matches for r in results)
        lines.append(f"harness is {'ambiguous' if count else 'empty'}: {count} matching variants")
        _emit("\n".join(lines) + "\n", None)
        _dump({"error": "ConventionPinFailure", "matching": count})
        return 3
    lines.append(f"unique winner: {winner.label()}")
    if not args.dry_run:
        path = conventions.write_pinned(winner, args.output)
        lines.append(f"wrote {path}")
    _emit("\n".join(lines) + "\n", None)
    return 0


# -- parser ----------------------------------------------------------------------

def _common(p, need_l=False, formats=("json", "pretty")):
    p.add_argument("--n", type=int, required=not need_l, help="rank of the undotted algebra (number of residues)")
    p.add_argument("--l", type=int, required=need_l, help="level; defaults to the length of --charge")
    p.add_argument("--charge", required=True, help="comma-separated multicharge, e.g. 0,0 or -2,2")
    p.add_argument("--format", choices=formats, default=formats[0])
    p.add_argument("--output", help="write the result here instead of standard output")


def _matrix_options(p):
    _common(p, formats=("json", "csv", "latex", "pretty"))
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--deficit", help="residue deficit N_0,...,N_{n-1} of the weight subspace")
    g.add_argument("--size", type=int, help="every weight subspace with this many boxes")
    p.add_argument("--strategy", choices=("auto", "jacon", "reflect"), default="auto", help="how dotted words are built")
    p.add_argument("--report", metavar="DIR", help="also write CSV files and heatmap PNGs here")
    p.add_argument("--cache", metavar="DIR", help=f"block cache directory (default ${cache.ENV_VAR})")
    p.add_argument("--threads", type=int, default=1, help="worker processes across weight subspaces")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fockcb", description="Canonical bases of higher-level Fock spaces.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("canonical", help="canonical bases of one or more weight subspaces")
    _matrix_options(p)
    p.add_argument("--basis", choices=("plus", "minus", "both"), default="plus")
    p.add_argument("--verify", action="store_true", help="check the block invariants after computing")
    p.set_defaults(func=cmd_canonical)

    p = sub.add_parser("involution", help="matrix of the bar involution")
    _matrix_options(p)
    p.set_defaults(func=cmd_involution)

    p = sub.add_parser("convert", help="translate a basis key between indexations")
    p.add_argument("--n", type=int)
    p.add_argument("--l", type=int)
    p.add_argument("--from", dest="source", choices=("l", "n", "charged"), required=True)
    p.add_argument("--to", dest="target", choices=("l", "n", "charged"), required=True)
    p.add_argument("--key", required=True, help="JSON multipartition, e.g. [[1,1],[1]], or a partition for 'charged'")
    p.add_argument("--charge", required=True)
    p.add_argument("--format", choices=("json", "pretty"), default="json")
    p.add_argument("--output")
    p.set_defaults(func=cmd_convert)

    for name, fn, helptext in (("crystal", cmd_crystal, "crystal vertices with a residue profile"), ("jacon", cmd_jacon, "Jacon's word for a crystal vertex")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--n", type=int)
        p.add_argument("--l", type=int)
        p.add_argument("--charge", required=True, help="multicharge of the side being used")
        p.add_argument("--side", choices=("l", "n"), default="l")
        p.add_argument("--format", choices=("json", "pretty"), default="pretty")
        p.add_argument("--output")
        if name == "crystal":
            p.add_argument("--profile", required=True, help="residue counts, one per residue")
            p.add_argument("--all", action="store_true", help="list every multipartition, marking crystal vertices")
        else:
            p.add_argument("--key", required=True)
        p.set_defaults(func=fn)

    p = sub.add_parser("boson", help="B_{-mu} applied to the vacuum")
    _common(p)
    p.add_argument("--mu", required=True, help="partition, e.g. 2 or 2,1")
    p.set_defaults(func=cmd_boson)

    p = sub.add_parser("verify", help="run the invariant suite")
    _common(p, formats=("pretty", "json"))
    g = p.add_mutually_exclusive_group()
    g.add_argument("--deficit")
    g.add_argument("--size", type=int, default=2)
    p.add_argument("--max-boxes", type=int, default=3, help="size bound for the action checks")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("pin-conventions", help="run the convention harness and write the pinned file")
    p.add_argument("--output", help="where to write (default: the packaged conventions file)")
    p.add_argument("--dry-run", action="store_true")
    p.set_defaults(func=cmd_pin)
    return parser


# -- entry -------------------------------------------------------------------------

def _dump(payload: dict) -> None:
    sys.stderr.write("fockcb diagnostic: " + json.dumps(payload, sort_keys=True, default=str) + "\n")


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_normalise_argv(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2), format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (InvalidInput, NonIntegral, NotDominant) as exc:
        sys.stderr.write(f"fockcb: error: {exc}\n")
        return 2
    except BlockFailure as exc:
        _dump({"error": type(exc.cause).__name__, "message": str(exc.cause), "block": exc.block, "command": args.command, "argv": argv})
        return 3
    except INTERNAL_ERRORS as exc:
        _dump({"error": type(exc).__name__, "message": str(exc), "command": args.command, "argv": argv, "trace": traceback.format_exc(limit=5)})
        return 3


if __name__ == "__main__":
    sys.exit(main())
