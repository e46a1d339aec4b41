"""Command-line front end: ``superdual <subcommand> ...``.

Exit status is 0 on success, 1 when ``selftest`` finds a failing item,
2 for usage errors and 3 for domain errors, which print a single line
``error: <reason>: <detail>`` on stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from collections.abc import Sequence
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import __version__
from . import characters as chars
from . import coxeter_kl as kl
from . import extremal as ex
from . import oddreflect as odd
from .errors import DomainError
from .partitions import Partition
from .rootdata import (DominantTuple, RootSystemSpec, Weight, make_weight, make_weight_gtilde, parse_idx,
                       parse_tuple)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse exits with 2 as well; keep one path
        raise UsageError(message)


def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError as exc:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from exc


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("json", "table"), default="json")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for table dumps")
    p.add_argument("--cache-dir", help="directory for the KL polynomial cache")


def _spec_args(p: argparse.ArgumentParser, tail_default: str | None = "even") -> None:
    p.add_argument("--head", required=True, help="b, b_bullet (or b*), c or d")
    p.add_argument("--m", type=int, required=True, help="head rank")
    if tail_default is not None:
        p.add_argument("--tail", default=tail_default, help="even, super or full")
    p.add_argument("--n", type=int, required=True, help="tail rank")
    p.add_argument("--Y0", default="", help="comma-separated head simple-root labels in the Levi")


def _lambda_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--lambda", dest="lam", required=True, help="'h_-m,...,h_-1|p_1,p_2,...'")
    p.add_argument("--level", default="0", help="central charge d (integer or rational)")


def _spec(args: argparse.Namespace, tail: str | None = None) -> RootSystemSpec:
    labels = frozenset(x.strip() for x in args.Y0.split(",") if x.strip())
    return RootSystemSpec(args.head, args.m, tail or args.tail, args.n, labels)


def _tuple(args: argparse.Namespace) -> DominantTuple:
    try:
        level = Fraction(args.level)
    except ValueError as exc:
        raise UsageError(f"bad --level {args.level!r}") from exc
    try:
        return parse_tuple(args.lam, level)
    except ValueError as exc:
        raise UsageError(f"bad --lambda {args.lam!r}: {exc}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="superdual", description="Characters of ortho-symplectic superalgebras via super duality.")
    parser.add_argument("--version", action="version", version=f"superdual {__version__}")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("kl", help="Kazhdan-Lusztig polynomials of type B, C, D")
    p.add_argument("--type", required=True, choices=kl.TYPES)
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--x", help="window of x, e.g. '-1,2,3'")
    p.add_argument("--w", help="window of w")
    p.add_argument("--x-word", help="reduced word of x in generators 0..rank-1")
    p.add_argument("--w-word", help="reduced word of w")
    p.add_argument("--J", default="", help="generators of the parabolic subgroup")
    p.add_argument("--kind", choices=("sign", "trivial"), default="sign")
    p.add_argument("--all", action="store_true", help="dump every pair")
    _common(p)

    p = sub.add_parser("character", help="truncated characters of highest weight modules")
    _spec_args(p)
    _lambda_args(p)
    p.add_argument("--depth", type=int, default=6)
    p.add_argument("--module", choices=("irreducible", "verma", "weyl", "transition"), default="irreducible")
    p.add_argument("--convention", choices=kl.CONVENTIONS, default="kl")
    p.add_argument("--ambient-rank", type=int, help="classical rank N for --module transition")
    p.add_argument("--project", choices=("T", "Tbar"), help="project a full-tail character")
    _common(p)

    p = sub.add_parser("extremal", help="extremal weights for a Borel of osp(2m+1|2n) or osp(2m|2n)")
    p.add_argument("--algebra", required=True, help="'osp(2m+1|2n)', 'osp(2m|2n)' or 'gl(n|m)'")
    p.add_argument("--borel", help="signed sequence such as 'd2+,d1-,e1-'; omit for the super duality Borel")
    p.add_argument("--lambda", dest="lam", required=True, help="hook partition, e.g. '14,11,8'")
    p.add_argument("--variant", choices=ex.VARIANTS, default=None)
    _common(p)

    p = sub.add_parser("oddreflect", help="fold highest weights along odd reflections")
    _spec_args(p, tail_default=None)
    p.add_argument("--lambda", dest="lam", help="dominant tuple; the start weight is lambda^theta")
    p.add_argument("--level", default="0")
    p.add_argument("--weight", help="start weight as JSON")
    p.add_argument("--sequence", choices=("btilde-c", "btilde-s"))
    p.add_argument("--length", type=int, help="sequence parameter (defaults to n or n-1)")
    p.add_argument("--roots", help="explicit roots 'idx:coeff,idx:coeff;...', e.g. '1/2:1,1:-1'")
    _common(p)

    p = sub.add_parser("truncate", help="truncation functor tr_k on a character")
    _spec_args(p)
    _lambda_args(p)
    p.add_argument("--depth", type=int, default=6)
    p.add_argument("--to", type=int, required=True, dest="target")
    p.add_argument("--module", choices=("irreducible", "verma"), default="verma")
    _common(p)

    p = sub.add_parser("selftest", help="run the acceptance suite")
    p.add_argument("--only", default="", help="comma-separated item numbers")
    _common(p)
    return parser


# ----- output -----

def _emit(payload, table: str | None, args: argparse.Namespace, out) -> None:
    if args.format == "table" and table is not None:
        out.write(table.rstrip("\n") + "\n")
    else:
        out.write(json.dumps(payload, ensure_ascii=False, sort_keys=False) + "\n")


def _character_table(ch: chars.FormalCharacter) -> str:
    lines = [f"apex {ch.apex}  depth {ch.depth}"]
    for d, layer in ch.layers().items():
        for w, c in sorted(layer.items(), key=lambda item: item[0].coeffs):
            lines.append(f"{d:4d} {c:6d}  {w}")
    return "\n".join(lines)


def _character_payload(ch: chars.FormalCharacter, t: DominantTuple | None, module: str) -> dict:
    data = ch.to_json()
    rows = data["terms"]
    data["module"] = module
    if t is not None:
        data["lambda"] = str(t)
    data["terms"] = [[w, c] for w, c, _ in rows]
    data["layers"] = [d for _, _, d in rows]
    return data


# ----- subcommands -----

def _element(args: argparse.Namespace, window: str | None, word: str | None) -> kl.SignedPerm:
    if window is not None:
        return kl.SignedPerm(tuple(_ints(window)), args.type)
    if word is not None:
        return kl.SignedPerm.from_word(_ints(word), args.rank, args.type)
    raise UsageError("give --x/--w windows, --x-word/--w-word, or --all")


def _kl_rows(payload: tuple) -> list[tuple[list[int], list[int], list[int]]]:
    tag, rank, J, kind, ws, xs = payload
    eng = kl.engine(tag, rank, J, kind)
    rows = []
    for w in ws:
        for x in xs:
            rows.append((list(x), list(w), _poly_coeffs(eng, x, w)))
    eng.flush()
    return rows


def _poly_coeffs(eng: kl.KLEngine, x, w) -> list[int]:
    return eng.polynomial(x, w).coefficients()


def _poly_text(coeffs: Sequence[int]) -> str:
    return str(kl.LaurentPoly.from_list(list(coeffs)))


def cmd_kl(args: argparse.Namespace, out) -> int:
    J = tuple(sorted(set(_ints(args.J))))
    if any(s < 0 or s >= args.rank for s in J):
        raise UsageError(f"--J generators must lie in 0..{args.rank - 1}")
    kind = args.kind if J else "trivial"
    eng = kl.engine(args.type, args.rank, J, kind)
    if args.all:
        els = [e.window for e in kl.elements(args.type, args.rank) if eng.is_minimal(e.window)]
        chunks = [els[i::max(args.jobs, 1)] for i in range(max(args.jobs, 1))]
        jobs = [(args.type, args.rank, J, kind, chunk, els) for chunk in chunks if chunk]
        if args.jobs > 1:
            with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                parts = list(pool.map(_kl_rows, jobs))
        else:
            parts = [_kl_rows(job) for job in jobs]
        order = {w: i for i, w in enumerate(els)}
        rows = sorted((r for part in parts for r in part), key=lambda r: (order[tuple(r[1])], order[tuple(r[0])]))
        payload = {"type": args.type, "rank": args.rank, "J": list(J), "kind": kind, "pairs": len(rows),
                   "table": [{"x": x, "w": w, "coeffs": c} for x, w, c in rows]}
        table = "\n".join(f"{str(x):>20} {str(w):>20}  {_poly_text(c)}" for x, w, c in rows)
        _emit(payload, f"{len(rows)} pairs\n" + table, args, out)
        return 0
    x = _element(args, args.x, args.x_word)
    w = _element(args, args.w, args.w_word)
    if J:
        poly = kl.parabolic_kl(args.type, args.rank, J, x, w, kind)
    else:
        poly = kl.kl_polynomial(args.type, args.rank, x, w)
    payload = {"type": args.type, "rank": args.rank, "J": list(J), "kind": kind, "x": list(x.window),
               "w": list(w.window), "coeffs": poly.coefficients(), "text": str(poly)}
    _emit(payload, str(poly), args, out)
    return 0


def cmd_character(args: argparse.Namespace, out) -> int:
    spec = _spec(args)
    t = _tuple(args)
    if args.depth < 0:
        raise UsageError("--depth must be >= 0")
    if args.module == "transition":
        if spec.tail != "even":
            raise DomainError("bad-spec", "transition matrices live on the even tail")
        N = args.ambient_rank if args.ambient_rank is not None else max(kl.stable_rank(t, args.depth), spec.n)
        if N < spec.n:
            raise UsageError("--ambient-rank must be at least the tail rank")
        tm = kl.transition_matrix(t, spec, N, args.depth, args.convention)
        table = "\n".join(f"{tm.heights[mu]:4d} {a:6d}  {mu}" for mu, a in tm.items())
        _emit(tm.to_json(), table, args, out)
        return 0
    if args.module == "irreducible":
        ch = chars.irreducible_character(spec, t, args.depth, args.convention)
    elif args.module == "verma":
        ch = chars.verma_character(spec, t, args.depth)
    else:
        ch = chars.weyl_character_formula(spec, t, args.depth)
    if args.project:
        ch = chars.project_T(ch) if args.project == "T" else chars.project_Tbar(ch)
    _emit(_character_payload(ch, t, args.module), _character_table(ch), args, out)
    return 0


def cmd_extremal(args: argparse.Namespace, out) -> int:
    family, n, m = ex.parse_algebra(args.algebra)
    try:
        lam = Partition(_ints(args.lam))
    except ValueError as exc:
        raise DomainError("bad-partition", str(exc)) from exc
    if args.borel is None:
        if family == "gl":
            raise UsageError("gl(n|m) needs an explicit --borel")
        variant = args.variant or "plus"
        weight = ex.superdual_highest_weight(lam, n, m, family, variant)
        seq = ex.BorelSequence.opposite(n, m, family)
        payload = {"algebra": args.algebra, "borel": "superdual", "sequence": seq.to_json(),
                   "lambda": list(lam.parts), "variant": variant if family == "even" else None,
                   "weight": ex.SignedWeight.from_epsilon(weight, n, m).to_json()}
        _emit(payload, str(weight), args, out)
        return 0
    seq = ex.parse_borel(args.borel, family, n, m)
    variant = args.variant
    if family == "even" and variant is None:
        variant = ex.pipe_variant(seq) if seq.shape == "pipe" else "plus"
    frob = ex.block_frobenius(lam, seq)
    weight = ex.extremal_weight(lam, seq, variant or "plus")
    payload = {"algebra": args.algebra, "sequence": seq.to_json(), "lambda": list(lam.parts),
               "variant": variant if family == "even" else None, "frobenius": frob.to_json(),
               "weight": weight.to_json()}
    table = (f"p = {list(frob.p)}\nq = {list(frob.q)}\n{weight}\n{weight.to_epsilon()}")
    _emit(payload, table, args, out)
    return 0


def _parse_roots(text: str) -> list[Weight]:
    roots = []
    for chunk in filter(None, (c.strip() for c in text.split(";"))):
        coeffs = {}
        for term in filter(None, (x.strip() for x in chunk.split(","))):
            idx, _, coeff = term.partition(":")
            try:
                coeffs[parse_idx(idx)] = int(coeff)
            except ValueError as exc:
                raise UsageError(f"bad root term {term!r}") from exc
        roots.append(Weight.make(coeffs))
    return roots


def cmd_oddreflect(args: argparse.Namespace, out) -> int:
    spec = _spec(args, tail="full")
    if args.weight is not None:
        try:
            start = Weight.from_json(args.weight)
        except (ValueError, KeyError) as exc:
            raise UsageError(f"bad --weight: {exc}") from exc
    elif args.lam is not None:
        start = make_weight_gtilde(_tuple(args), spec)
    else:
        raise UsageError("give --lambda or --weight")
    if args.roots is not None:
        seq = _parse_roots(args.roots)
    elif args.sequence is not None:
        length = args.length
        if length is None:
            length = spec.n if args.sequence == "btilde-c" else spec.n - 1
        seq = odd.named_sequence(args.sequence, length)
    else:
        raise UsageError("give --sequence or --roots")
    trace = odd.trace_sequence(spec, start, seq)
    lines = [{"step": 0, "root": None, "weight": trace.weights[0].to_json()}]
    for k, (alpha, w) in enumerate(zip(seq, trace.weights[1:]), start=1):
        lines.append({"step": k, "root": alpha.to_json(), "weight": w.to_json()})
    if args.format == "table":
        out.write(f"{0:4d}  {'':24}  {trace.weights[0]}\n")
        for k, (alpha, w) in enumerate(zip(seq, trace.weights[1:]), start=1):
            out.write(f"{k:4d}  {str(alpha):24}  {w}\n")
    else:
        for line in lines:
            out.write(json.dumps(line) + "\n")
    return 0


def cmd_truncate(args: argparse.Namespace, out) -> int:
    spec = _spec(args)
    t = _tuple(args)
    if args.module == "irreducible":
        ch = chars.irreducible_character(spec, t, args.depth)
    else:
        ch = chars.verma_character(spec, t, args.depth)
    result = chars.truncate_character(ch, args.target)
    data = _character_payload(result, t, args.module)
    data["from_rank"] = spec.n
    data["to_rank"] = args.target
    _emit(data, _character_table(result), args, out)
    return 0


def cmd_selftest(args: argparse.Namespace, out) -> int:
    from .acceptance import run_all

    numbers = _ints(args.only) or None
    results = run_all(numbers)
    if args.format == "json":
        for r in results:
            out.write(json.dumps({"item": r.number, "title": r.title, "ok": r.ok, "detail": r.detail}) + "\n")
    else:
        for r in results:
            out.write(r.line() + "\n")
    failed = [r.number for r in results if not r.ok]
    out.write(f"{len(results) - len(failed)}/{len(results)} acceptance items passed\n")
    return 1 if failed else 0


COMMANDS = {"kl": cmd_kl, "character": cmd_character, "extremal": cmd_extremal,
            "oddreflect": cmd_oddreflect, "truncate": cmd_truncate, "selftest": cmd_selftest}


VALUE_FLAGS = ("--lambda", "--level", "--x", "--w", "--weight")


def _glue_values(argv: Sequence[str]) -> list[str]:
    """Let values such as ``--lambda -1|2`` start with a minus sign."""
    out: list[str] = []
    it = iter(argv)
    for token in it:
        if token in VALUE_FLAGS:
            value = next(it, None)
            out.append(token if value is None else f"{token}={value}")
        else:
            out.append(token)
    return out


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(_glue_values(sys.argv[1:] if argv is None else argv))
        if args.command is None:
            raise UsageError("a subcommand is required")
        if getattr(args, "cache_dir", None):
            kl.set_cache_dir(args.cache_dir)
        if getattr(args, "jobs", 1) < 1:
            raise UsageError("--jobs must be >= 1")
        code = COMMANDS[args.command](args, out)
        kl.flush_caches()
        return code
    except UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return 2
    except DomainError as exc:
        err.write(f"error: {exc.reason}: {exc.detail}\n")
        return 3


def main(argv: Sequence[str] | None = None) -> None:
    logging.basicConfig(level=logging.WARNING, format="warning: %(message)s")
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
