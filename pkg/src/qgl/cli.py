"""``qgl`` command line: symbolic normal forms, geometric products, counted constants, verification suites.

Output is JSON on stdout (CSV for ``tables``). Exit codes: 0 success, 1 a
verification reported failures, 2 usage or input error (error JSON on stderr).
"""

from __future__ import annotations

import argparse
import contextlib
import io
import json
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import convolution as cv
from . import flaggeo as fg
from . import qalgebra as qa
from .cache import CacheCorruptError, ConstantCache, default_cache, set_default_cache
from .expr import ExpressionError, evaluate_expression, expression_kind, parse_expression, to_text
from .scalars import is_prime

SUITES = (
    "relations-circ",
    "relations-dot",
    "relations-bullet",
    "pbw",
    "newpbw",
    "green",
    "mult-h",
    "determinant",
    "hopf",
    "antipode-compat",
    "antipode-inverse",
    "transported-antipode",
    "coassoc",
    "tilde-hom",
    "twist-iso",
    "tau",
)


class UsageError(Exception):
    pass


class _ArgParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass
class Config:
    n: int = 2
    q: list = field(default_factory=lambda: [2])
    model: str = "FRT"
    kind: str | None = None
    max_d: int = fg.SizeGuard.max_d
    max_q: int = fg.SizeGuard.max_q
    cache_dir: str | None = None

    @classmethod
    def load(cls, path) -> "Config":
        try:
            raw = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {path}: {exc}") from None
        if not isinstance(raw, dict):
            raise UsageError("config must be a JSON object")
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(raw) - known
        if unknown:
            raise UsageError(f"unknown config fields: {sorted(unknown)}")
        if "q" in raw and isinstance(raw["q"], int):
            raw["q"] = [raw["q"]]
        cfg = cls(**raw)
        cfg.validate()
        return cfg

    def validate(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise UsageError("n must be a positive integer")
        for q in self.q:
            if not isinstance(q, int) or not is_prime(q):
                raise UsageError(f"q={q} is not prime")
        if self.model not in ("FRT", "DD"):
            raise UsageError("model must be FRT or DD")
        if self.max_d < 1 or self.max_q < 2:
            raise UsageError("guards must be positive")


def _build_parser() -> argparse.ArgumentParser:
    common = _ArgParser(add_help=False)
    common.add_argument("--n", type=int)
    common.add_argument("--q", type=int)
    common.add_argument("--dd", action="store_true", help="use the Dipper-Donkin presentation")
    common.add_argument("--config", help="JSON file with fields n, q, model, kind, max_d, max_q, cache_dir")
    common.add_argument("--cache-dir", help="persist counted constants here (overrides QGL_CACHE_DIR)")
    common.add_argument("--max-d", type=int)
    common.add_argument("--max-q", type=int)
    common.add_argument("--stats", action="store_true", help="print cache statistics to stderr")

    p = _ArgParser(prog="qgl", description="Quantum GL(n) algebras and their flag-counting models.")
    sub = p.add_subparsers(dest="command", parser_class=_ArgParser)
    sub.required = True

    s = sub.add_parser("nf", parents=[common], help="normal form of an expression")
    s.add_argument("expr")

    s = sub.add_parser("mul", parents=[common], help="product of two expressions")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("--kind", choices=("symbolic", "circ", "circ_prime", "dot", "bullet"), default="symbolic")

    s = sub.add_parser("delta", parents=[common], help="coproduct of an expression")
    s.add_argument("expr")
    s.add_argument("--kind", choices=("symbolic", "plain", "tilde", "prime"), default="symbolic")

    sub.add_parser("det", parents=[common], help="quantum determinant")

    s = sub.add_parser("antipode", parents=[common], help="antipode of a generator")
    s.add_argument("--i", type=int, required=True)
    s.add_argument("--j", type=int, required=True)

    s = sub.add_parser("orbits", parents=[common], help="orbit matrices with stabilizer and orbit sizes")
    s.add_argument("--d", type=int, required=True)

    s = sub.add_parser("sc", parents=[common], help="one counted constant")
    s.add_argument("--kind", choices=("c", "h", "g", "a"), required=True)
    s.add_argument("matrices", help="JSON list of matrices, e.g. '[[[1,0],[0,0]]]'")

    s = sub.add_parser("verify", parents=[common], help="run a verification suite")
    s.add_argument("suite", choices=SUITES)
    s.add_argument("--d", type=int, default=2)
    s.add_argument("--sample", type=int, help="check a seeded random sample of instances")

    s = sub.add_parser("tables", parents=[common], help="CSV table of counted constants")
    s.add_argument("--suite", choices=("c", "h", "g", "a"), required=True)
    s.add_argument("--d", type=int, default=2)
    return p


def _config(args) -> Config:
    cfg = Config.load(args.config) if args.config else Config()
    if args.n is not None:
        cfg.n = args.n
    if args.q is not None:
        cfg.q = [args.q]
    if args.dd:
        cfg.model = "DD"
    if args.max_d is not None:
        cfg.max_d = args.max_d
    if args.max_q is not None:
        cfg.max_q = args.max_q
    env = os.environ.get("QGL_CACHE_DIR")
    if env:
        cfg.cache_dir = env
    if args.cache_dir:
        cfg.cache_dir = args.cache_dir
    cfg.validate()
    return cfg


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _poly_json(x):
    if isinstance(x, qa.LocalizedElement):
        return {"type": "localized", "n": x.n, "parts": x.to_json(), "text": repr(x)}
    return {"type": "poly", "kind": x.kind, "n": x.n, "terms": x.to_json(), "text": str(x)}


def _expr(text, cfg):
    """Parse and evaluate; the presentation follows the generators used, else ``cfg.model``."""
    node = parse_expression(text, cfg.n)
    kind = expression_kind(node) or (qa.DD if cfg.model == "DD" else qa.FRT)
    return node, evaluate_expression(node, cfg.n, kind)


def _require_poly(value, what):
    if not isinstance(value, qa.NCPoly):
        raise UsageError(f"{what} needs a polynomial (no detinv)")
    return value


def cmd_nf(args, cfg):
    node, value = _expr(args.expr, cfg)
    out = {"input": to_text(node)}
    out.update(_poly_json(value))
    return 0, out


def cmd_mul(args, cfg):
    na, a = _expr(args.a, cfg)
    nb, b = _expr(args.b, cfg)
    if args.kind == "symbolic":
        if isinstance(a, qa.NCPoly) and isinstance(b, qa.NCPoly):
            if a.kind != b.kind:
                raise UsageError("factors use different presentations")
            prod = qa.multiply(a, b)
        else:
            la = a if isinstance(a, qa.LocalizedElement) else qa.LocalizedElement.from_poly(a)
            lb = b if isinstance(b, qa.LocalizedElement) else qa.LocalizedElement.from_poly(b)
            prod = la * lb
        out = {"a": to_text(na), "b": to_text(nb), "kind": "symbolic"}
        out.update(_poly_json(prod))
        return 0, out
    a, b = _require_poly(a, "geometric product"), _require_poly(b, "geometric product")
    results = []
    for q in cfg.q:
        x = cv.embed_with_product(a, q, args.kind)
        y = cv.embed_with_product(b, q, args.kind)
        results.append({"q": q, "terms": cv.k_multiply(x, y, args.kind).to_json()})
    return 0, {"a": to_text(na), "b": to_text(nb), "kind": args.kind, "results": results}


_COPRODUCT_EMBED = {"plain": "dot", "tilde": "circ", "prime": "circ_prime"}


def cmd_delta(args, cfg):
    node, value = _expr(args.expr, cfg)
    value = _require_poly(value, "delta")
    if args.kind == "symbolic":
        t = qa.coproduct(value)
        return 0, {"input": to_text(node), "kind": "symbolic", "terms": t.to_json(), "text": repr(t)}
    results = []
    for q in cfg.q:
        prod = "bullet" if value.kind == qa.DD and args.kind == "plain" else _COPRODUCT_EMBED[args.kind]
        x = cv.embed_with_product(value, q, prod)
        results.append({"q": q, "terms": cv.k_comultiply(x, args.kind).to_json()})
    return 0, {"input": to_text(node), "kind": args.kind, "results": results}


def cmd_det(args, cfg):
    kind = qa.DD if cfg.model == "DD" else qa.FRT
    d = qa.det(cfg.n, kind)
    out = {"n": cfg.n, "model": kind}
    out.update(_poly_json(d))
    return 0, out


def cmd_antipode(args, cfg):
    n, i, j = cfg.n, args.i, args.j
    if not (1 <= i <= n and 1 <= j <= n):
        raise UsageError(f"index ({i},{j}) out of range for n={n}")
    if cfg.model == "DD":
        s = qa.antipode_dd_via_xi(i, j, n)
        return 0, {"i": i, "j": j, "n": n, "model": "DD", "image": "Xi(S(c_ij)) in the twisted FRT algebra", **_poly_json(s)}
    s = qa.antipode_generator(i, j, n)
    return 0, {"i": i, "j": j, "n": n, "model": "FRT", **_poly_json(s)}


def cmd_orbits(args, cfg):
    rows = []
    for q in cfg.q:
        for m in fg.theta(cfg.n, args.d):
            rows.append(
                {
                    "q": q,
                    "matrix": m.to_json(),
                    "ro": list(m.ro),
                    "co": list(m.co),
                    "stabilizer": fg.stabilizer_order(m, q),
                    "orbit_size": fg.orbit_size(m, q),
                    "orbit_dim": fg.orbit_dim(m),
                }
            )
    return 0, {"n": cfg.n, "d": args.d, "orbits": rows}


_SC_ARITY = {"c": 3, "h": 3, "g": 3, "a": 1}


def cmd_sc(args, cfg):
    try:
        raw = json.loads(args.matrices)
        mats = [fg.MatrixType(m) for m in raw]
    except (json.JSONDecodeError, TypeError, ValueError) as exc:
        raise UsageError(f"matrices must be a JSON list of square non-negative matrices: {exc}") from None
    if len(mats) != _SC_ARITY[args.kind]:
        raise UsageError(f"kind {args.kind} takes {_SC_ARITY[args.kind]} matrices, got {len(mats)}")
    if len({m.n for m in mats}) != 1:
        raise UsageError("matrices must have the same size")
    func = {"c": fg.structure_c, "h": fg.structure_h, "g": fg.structure_g, "a": fg.stabilizer_order}[args.kind]
    results = [{"q": q, "value": func(*mats, q)} for q in cfg.q]
    out = {"kind": args.kind, "matrices": [m.to_json() for m in mats], "results": results}
    if len(results) == 1:
        out["value"] = results[0]["value"]
    return 0, out


def cmd_verify(args, cfg):
    from .suites import run_suite

    reports = [run_suite(args.suite, cfg.n, args.d, q, sample=args.sample) for q in cfg.q]
    failed = any(r["failures"] for r in reports)
    out = reports[0] if len(reports) == 1 else {"suite": args.suite, "reports": reports, "failures": [f for r in reports for f in r["failures"]]}
    return (1 if failed else 0), out


def cmd_tables(args, cfg):
    parts = []
    for q in cfg.q:
        parts.append(cv.table_csv(cv.structure_table(args.suite, cfg.n, args.d, q)))
    return 0, "".join(parts)


COMMANDS = {
    "nf": cmd_nf,
    "mul": cmd_mul,
    "delta": cmd_delta,
    "det": cmd_det,
    "antipode": cmd_antipode,
    "orbits": cmd_orbits,
    "sc": cmd_sc,
    "verify": cmd_verify,
    "tables": cmd_tables,
}


def _error(kind, message, **extra):
    return _dump({"error": kind, "message": message, **extra})


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    saved_guard = (fg.GUARD.max_d, fg.GUARD.max_q)
    try:
        try:
            args = _build_parser().parse_args(argv)
            cfg = _config(args)
        except UsageError as exc:
            print(_error("usage", str(exc)), file=sys.stderr)
            return 2
        fg.set_guard(cfg.max_d, cfg.max_q)
        cache = default_cache()
        if cfg.cache_dir and (cache.path is None or Path(cfg.cache_dir).resolve() not in (cache.path.parent.resolve(), cache.path.resolve())):
            cache = set_default_cache(ConstantCache(cfg.cache_dir))
        before = cache.enumerations
        code, out = COMMANDS[args.command](args, cfg)
        sys.stdout.write(out if isinstance(out, str) else _dump(out) + "\n")
        if args.stats:
            print(_dump({"enumerations": cache.enumerations - before, "cached_constants": len(cache)}), file=sys.stderr)
        return code
    except CacheCorruptError as exc:
        print(_error("cache", str(exc), line=exc.lineno, path=exc.path), file=sys.stderr)
        return 2
    except ExpressionError as exc:
        print(_error("expression", exc.message, offset=exc.offset), file=sys.stderr)
        return 2
    except (UsageError, fg.GuardError, qa.UnsupportedOperation, ValueError, IndexError) as exc:
        print(_error("usage", str(exc)), file=sys.stderr)
        return 2
    except OSError as exc:
        print(_error("io", str(exc)), file=sys.stderr)
        return 2
    finally:
        fg.set_guard(*saved_guard)


def run_command(argv):
    """Run the CLI in-process; returns ``(exit_code, stdout, stderr)``."""
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = main(argv)
    return code, out.getvalue(), err.getvalue()


def cache_roundtrip(directory, suites=("green", "mult-h"), n: int = 2, d: int = 2, qs=(2,)):
    """Run suites on an empty cache in ``directory``, then again from the reloaded file.

    Returns a report with both outputs' equality and the enumeration counts.
    """
    directory = Path(directory)
    runs = []
    previous = default_cache()
    try:
        for phase in ("cold", "warm"):
            cache = set_default_cache(ConstantCache(directory))
            outputs = []
            for suite in suites:
                for q in qs:
                    outputs.append(run_command(["verify", suite, "--n", str(n), "--d", str(d), "--q", str(q)]))
            runs.append({"phase": phase, "outputs": outputs, "enumerations": cache.enumerations, "loaded": cache.loaded})
            cache.close()
    finally:
        set_default_cache(previous)
    cold, warm = runs
    return {
        "directory": str(directory),
        "identical": [o[1] for o in cold["outputs"]] == [o[1] for o in warm["outputs"]],
        "exit_codes": [o[0] for o in cold["outputs"]],
        "cold_enumerations": cold["enumerations"],
        "warm_enumerations": warm["enumerations"],
        "records_loaded": warm["loaded"],
    }


if __name__ == "__main__":
    sys.exit(main())
