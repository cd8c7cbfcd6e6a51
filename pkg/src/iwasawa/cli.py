"""Command line interface: ``iwasawa <verb> [options] INPUT``.

INPUT is a path, ``-`` for stdin, or inline JSON. A matrix is either the
``{"rows", "cols", "entries"}`` object or a bare list of rows; entries are
integers or strings such as ``"3/4"``. Decimal entries (``0.25``,
``"1e-3"``) are converted exactly, with a warning. A JSON array of matrices
runs in batch mode and yields an array of results in input order.

Exit status: 0 on success, 1 on domain errors (and failed verification),
2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from decimal import Decimal
from fractions import Fraction
from pathlib import Path

from .errors import IwasawaError
from .exact_arith import Place, format_rational
from .identities import run_identity_suite
from .matrix import RatMatrix
from .padic import FamilyParams, PadicIwasawa, apply_family, decompose_padic, verify_membership
from .pluecker import norm_table, pluecker
from .real import real_decompose

log = logging.getLogger("iwasawa")

DEFAULT_MAX_N = 12


class UsageError(Exception):
    pass


def _max_n() -> int:
    raw = os.environ.get("IWASAWA_MAX_N", str(DEFAULT_MAX_N))
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"IWASAWA_MAX_N={raw!r} is not an integer") from None


def _entry(x) -> Fraction:
    if isinstance(x, bool):
        raise UsageError(f"boolean matrix entry {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, Decimal):
        log.warning("decimal entry %s converted exactly to %s", x, format_rational(Fraction(x)))
        return Fraction(x)
    if isinstance(x, str):
        try:
            value = Fraction(x.strip())
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"matrix entry {x!r} is not a rational") from None
        if any(ch in x for ch in ".eE"):
            log.warning("decimal entry %s converted exactly to %s", x, format_rational(value))
        return value
    raise UsageError(f"matrix entry {x!r} is not a number")


def _is_matrix(obj) -> bool:
    if isinstance(obj, dict):
        return "entries" in obj
    return isinstance(obj, list) and bool(obj) and all(isinstance(r, list) for r in obj) and not any(
        isinstance(x, (list, dict)) for r in obj for x in r
    )


def _to_matrix(obj) -> RatMatrix:
    rows = obj["entries"] if isinstance(obj, dict) else obj
    if not _is_matrix(obj):
        raise UsageError("input is not a matrix")
    try:
        M = RatMatrix([[_entry(x) for x in r] for r in rows])
    except IwasawaError as exc:
        raise UsageError(str(exc)) from None
    if isinstance(obj, dict) and (obj.get("rows", M.nrows), obj.get("cols", M.ncols)) != M.shape:
        raise UsageError(f"declared shape {obj.get('rows')}x{obj.get('cols')} does not match entries {M.shape}")
    if not M.is_square:
        raise UsageError(f"matrix must be square, got {M.nrows}x{M.ncols}")
    if M.nrows > _max_n():
        raise UsageError(f"matrix size {M.nrows} exceeds IWASAWA_MAX_N={_max_n()}")
    return M


def _load_json(source: str):
    text = source
    if source == "-":
        text = sys.stdin.read()
    elif not source.lstrip().startswith(("[", "{")):
        path = Path(source)
        if not path.is_file():
            raise UsageError(f"input {source!r} is neither a file nor inline JSON")
        text = path.read_text(encoding="utf-8")
    try:
        return json.loads(text, parse_float=Decimal)
    except json.JSONDecodeError as exc:
        raise UsageError(f"input is not valid JSON: {exc}") from None


def _load_matrices(source: str) -> tuple[list[RatMatrix], bool]:
    obj = _load_json(source)
    if _is_matrix(obj):
        return [_to_matrix(obj)], False
    if isinstance(obj, list) and obj and all(_is_matrix(m) for m in obj):
        return [_to_matrix(m) for m in obj], True
    raise UsageError("input must be a matrix or a JSON array of matrices")


def _parse_places(text: str) -> list[Place]:
    try:
        return [Place.parse(t) for t in text.split(",") if t.strip()]
    except IwasawaError as exc:
        raise UsageError(f"--places: {exc}") from None


def _parse_prime(p: int) -> int:
    try:
        return Place(p).p
    except IwasawaError as exc:
        raise UsageError(f"--prime: {exc}") from None


def _decompose_one(args: tuple) -> dict:
    M, prime = args
    if prime is None:
        return real_decompose(M).to_json()
    return decompose_padic(M, prime).to_json()


def _map(fn, items: list, jobs: int) -> list:
    if jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(fn, items))
    return [fn(x) for x in items]


def cmd_decompose(ns) -> object:
    if (ns.prime is None) == (not ns.real):
        raise UsageError("decompose needs exactly one of --prime P or --real")
    prime = None if ns.real else _parse_prime(ns.prime)
    matrices, batch = _load_matrices(ns.input)
    results = _map(_decompose_one, [(M, prime) for M in matrices], ns.jobs)
    return results if batch else results[0]


def cmd_dilaton_norms(ns) -> object:
    places = _parse_places(ns.places)
    if not places:
        raise UsageError("--places is empty")
    matrices, batch = _load_matrices(ns.input)
    tables = [norm_table(M, places) for M in matrices]
    if ns.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        header = ["k"] + [f"norm_{pl}" for pl in places]
        if batch:
            header.insert(0, "matrix")
        writer.writerow(header)
        for idx, table in enumerate(tables):
            for row in table:
                line = [row["k"]] + [row[str(pl)]["norm"] for pl in places]
                writer.writerow(([idx] if batch else []) + line)
        return buf.getvalue()
    payload = [{"places": [str(pl) for pl in places], "rows": t} for t in tables]
    return payload if batch else payload[0]


def _load_param_matrix(text: str, flag: str) -> RatMatrix:
    try:
        return _to_matrix(_load_json(text))
    except UsageError as exc:
        raise UsageError(f"{flag}: {exc}") from None


def cmd_family(ns) -> object:
    X = _load_param_matrix(ns.X, "--X")
    Y = _load_param_matrix(ns.Y, "--Y")
    obj = _load_json(ns.input)
    if isinstance(obj, dict) and "N" in obj:
        dec = _decomposition_from_json(obj)
        prime = dec.prime if ns.prime is None else _parse_prime(ns.prime)
    else:
        if ns.prime is None:
            raise UsageError("family on a raw matrix needs --prime")
        prime = _parse_prime(ns.prime)
        dec = decompose_padic(_to_matrix(obj), prime)
    return apply_family(dec, FamilyParams(X, Y), prime).to_json()


def _decomposition_from_json(obj: dict) -> PadicIwasawa:
    try:
        return PadicIwasawa.from_json(obj)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, IwasawaError):
            raise
        raise UsageError(f"malformed decomposition JSON: {exc}") from None


def cmd_verify(ns) -> object:
    obj = _load_json(ns.input)
    if not (isinstance(obj, dict) and "N" in obj):
        raise UsageError("verify expects decomposition JSON as produced by 'decompose --prime'")
    dec = _decomposition_from_json(obj)
    M = _to_matrix(_load_json(ns.matrix)) if ns.matrix else None
    prime = None if ns.prime is None else _parse_prime(ns.prime)
    report = verify_membership(dec, prime, M)
    ns.exit_code = 0 if report.ok else 1
    return report.to_json()


def _int_list(text: str, flag: str) -> list[int]:
    try:
        vals = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"{flag} expects comma-separated integers, got {text!r}") from None
    if not vals:
        raise UsageError(f"{flag} is empty")
    return vals


def cmd_verify_identities(ns) -> object:
    sizes = _int_list(ns.sizes, "--sizes")
    if any(n < 1 or n > _max_n() for n in sizes):
        raise UsageError(f"--sizes must lie in 1..{_max_n()}")
    if ns.trials < 0 or ns.cap < 1:
        raise UsageError("--trials must be >= 0 and --cap >= 1")
    summary = run_identity_suite(sizes, ns.trials, ns.seed, ns.cap)
    failed = any(s["failures"] for s in summary.values())
    ns.exit_code = 1 if failed else 0
    return {"sizes": sizes, "trials": ns.trials, "seed": ns.seed, "cap": ns.cap, "pass": not failed, "identities": summary}


def cmd_pluecker(ns) -> object:
    matrices, batch = _load_matrices(ns.input)
    out = []
    for M in matrices:
        n = M.nrows
        orders = [ns.order] if ns.order is not None else list(range(1, n))
        if any(not 1 <= k <= n - 1 for k in orders):
            raise UsageError(f"--order must lie in 1..{n - 1}")
        out.append([pluecker(M, k) for k in orders])
    if ns.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow((["matrix"] if batch else []) + ["order", "columns", "value"])
        for idx, vecs in enumerate(out):
            for vec in vecs:
                for cols, val in vec.components:
                    writer.writerow(([idx] if batch else []) + [vec.order, " ".join(map(str, cols)), format_rational(val)])
        return buf.getvalue()
    payload = [[v.to_json() for v in vecs] for vecs in out]
    return payload if batch else payload[0]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="iwasawa", description="Exact Iwasawa decompositions over Q_p and R.")
    sub = parser.add_subparsers(dest="verb", required=True)

    def common(p, formats=("json",)):
        p.add_argument("--format", choices=formats, default="json")
        p.add_argument("--pretty", action="store_true", help="indent JSON output")
        p.add_argument("--output", "-o", help="write to this file instead of stdout")

    p = sub.add_parser("decompose", help="Iwasawa decomposition at a prime or over the reals")
    p.add_argument("input")
    p.add_argument("--prime", type=int)
    p.add_argument("--real", action="store_true")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for batch input")
    common(p)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("dilaton-norms", help="per-place dilaton norm table")
    p.add_argument("input")
    p.add_argument("--places", default="inf", help="comma-separated primes and/or 'inf'")
    common(p, ("json", "csv"))
    p.set_defaults(func=cmd_dilaton_norms)

    p = sub.add_parser("family", help="move to another decomposition via X, Y")
    p.add_argument("input", help="matrix or decomposition JSON")
    p.add_argument("--prime", type=int)
    p.add_argument("--X", required=True, help="unit upper triangular matrix over Z_p (JSON or path)")
    p.add_argument("--Y", required=True, help="diagonal matrix of p-adic units with det 1 (JSON or path)")
    common(p)
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("verify", help="membership report for a decomposition")
    p.add_argument("input", help="decomposition JSON")
    p.add_argument("--matrix", help="matrix to compare against instead of the recorded one")
    p.add_argument("--prime", type=int)
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("verify-identities", help="randomized exact check of the minor identities")
    p.add_argument("--sizes", default="2,3,4,5,6")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cap", type=int, default=200, help="index tuples per matrix and identity")
    common(p)
    p.set_defaults(func=cmd_verify_identities)

    p = sub.add_parser("pluecker", help="generalized Pluecker coordinates")
    p.add_argument("input")
    p.add_argument("--order", type=int)
    common(p, ("json", "csv"))
    p.set_defaults(func=cmd_pluecker)
    return parser


def run(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    handler = logging.StreamHandler(stderr)
    handler.setFormatter(logging.Formatter("iwasawa: %(levelname)s: %(message)s"))
    log.addHandler(handler)
    log.propagate = False
    try:
        parser = build_parser()
        try:
            ns = parser.parse_args(argv)
        except SystemExit as exc:
            return int(exc.code or 0)
        ns.exit_code = 0
        try:
            result = ns.func(ns)
        except UsageError as exc:
            print(f"iwasawa {ns.verb}: usage error: {exc}", file=stderr)
            return 2
        except IwasawaError as exc:
            print(f"iwasawa {ns.verb}: {type(exc).__name__}: {exc}", file=stderr)
            return 1
        if isinstance(result, str):
            text = result
        else:
            text = json.dumps(result, indent=2 if ns.pretty else None) + "\n"
        if ns.output:
            Path(ns.output).write_text(text, encoding="utf-8")
        else:
            stdout.write(text)
        return ns.exit_code
    finally:
        log.removeHandler(handler)


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
