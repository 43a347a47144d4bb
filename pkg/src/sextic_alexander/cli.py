"""Command-line front end.

    sextic-alexander analyze curve.json [--k-range 1-5] [--format text|json] [--report-out FILE]
    sextic-alexander germ "v^3+u^2*v^2+u^9" [--k 5] [--d 6]
    sextic-alexander tables [--which simple|nonsimple] [--out FILE]
    sextic-alexander construct six-lines [--out FILE]

Exit codes: 0 ok, 2 parse error, 3 verification failure, 4 unsupported
germ, 5 computation cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .errors import ParseError, SexticError

EXIT_PARSE = 2


def _k_range(text: str) -> list:
    try:
        if "-" in text:
            lo, hi = (int(x) for x in text.split("-", 1))
            ks = list(range(lo, hi + 1))
        else:
            ks = [int(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad k-range {text!r}; use e.g. 1-5 or 4,5") from None
    if not ks:
        raise argparse.ArgumentTypeError(f"empty k-range {text!r}")
    return ks


def _emit(text: str, path: Optional[str]) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def cmd_analyze(args) -> int:
    from .document import CurveDocument
    from .report import analyze_document

    doc = CurveDocument.load(args.path)
    if args.k_range is not None and any(not (1 <= k < doc.degree) for k in args.k_range):
        raise ParseError(f"--k-range must lie within 1..{doc.degree - 1}")
    report = analyze_document(doc, args.k_range)
    body = report.to_json() if args.format == "json" else report.render_text()
    sys.stdout.write(body)
    if args.report_out:
        _emit(report.to_json(), args.report_out)
    return 0


def cmd_germ(args) -> int:
    from .report import analyze_germ

    if not (1 <= args.k < args.d):
        raise ParseError(f"need 1 <= k < d, got k={args.k}, d={args.d}")
    rep = analyze_germ(args.polynomial, (args.k,), args.d)
    if args.format == "json":
        sys.stdout.write(json.dumps(rep.to_dict(), indent=2) + "\n")
    else:
        sys.stdout.write(rep.render_text())
    return 0


def cmd_tables(args) -> int:
    import io

    from .ideals import regenerate_table, write_table

    buf = io.StringIO()
    write_table(regenerate_table(args.which), buf)
    _emit(buf.getvalue(), args.out)
    return 0


def cmd_construct(args) -> int:
    from .constructions import construct
    from .document import CurveDocument

    doc = CurveDocument.from_curve(construct(args.name))
    _emit(doc.dumps(), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    from .constructions import CONSTRUCTIONS

    p = argparse.ArgumentParser(prog="sextic-alexander", description="Alexander polynomials of plane sextics.")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="analyze a curve-description file")
    a.add_argument("path")
    a.add_argument("--k-range", type=_k_range, default=None, help="k values, e.g. 1-5 (default 1..d-1)")
    a.add_argument("--format", choices=("text", "json"), default="text")
    a.add_argument("--report-out", default=None, help="also write the JSON report here")
    a.set_defaults(func=cmd_analyze)

    g = sub.add_parser("germ", help="local data of a germ given as a polynomial in u, v")
    g.add_argument("polynomial")
    g.add_argument("--k", type=int, default=5)
    g.add_argument("--d", type=int, default=6)
    g.add_argument("--format", choices=("text", "json"), default="text")
    g.set_defaults(func=cmd_germ)

    t = sub.add_parser("tables", help="regenerate the local ideal tables as CSV")
    t.add_argument("--which", choices=("simple", "nonsimple"), default="simple")
    t.add_argument("--out", default=None)
    t.set_defaults(func=cmd_tables)

    c = sub.add_parser("construct", help="write a fixture curve as a curve-description file")
    c.add_argument("name", choices=sorted(CONSTRUCTIONS))
    c.add_argument("--out", default=None)
    c.set_defaults(func=cmd_construct)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SexticError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
