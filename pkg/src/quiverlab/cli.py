"""Command-line front end.

Exit codes: 0 success, 1 domain error (e.g. lambda . alpha != 0),
2 parse or usage error. ``--json`` output is schema-stable; text output
is for humans.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import moment, necklace, roots, sigma
from .quiver import QuiverDocument, QuiverError, double, format_rational, parse_document


class UsageError(Exception):
    pass


def _vector(q, text: str, conv, what: str):
    text = text.strip()
    try:
        if "=" in text:
            values = {}
            for part in text.split(","):
                v, _, x = part.partition("=")
                v = v.strip()
                if v in values:
                    raise UsageError(f"{what}: vertex {v} given twice")
                q.vertex_index(v)
                values[v] = conv(x.strip())
            return tuple(values.get(v, conv("0")) for v in q.vertices)
        parts = [conv(x.strip()) for x in text.split(",")]
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad {what} {text!r}: {exc}") from None
    if len(parts) != q.k:
        raise UsageError(f"{what} needs {q.k} entries, got {len(parts)}")
    return tuple(parts)


def _int(x: str) -> int:
    return int(x)


def _load(args) -> QuiverDocument:
    try:
        with open(args.input, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {args.input}: {exc.strerror}") from None
    return parse_document(text)


def _query(args, doc: QuiverDocument, need_alpha: bool = True) -> sigma.SigmaQuery:
    q = doc.quiver
    alpha = doc.alpha
    if getattr(args, "alpha", None):
        alpha = _vector(q, args.alpha, _int, "--alpha")
    lam = doc.lam
    if getattr(args, "lam", None):
        lam = _vector(q, args.lam, Fraction, "--lambda")
    if lam is None:
        lam = (Fraction(0),) * q.k
    box = None
    if getattr(args, "box", None):
        box = _vector(q, args.box, _int, "--box")
    if alpha is None:
        if need_alpha:
            raise UsageError("no dimension vector: add an alpha block or pass --alpha")
        alpha = box if box is not None else (0,) * q.k
    if any(a < 0 for a in alpha) or (box and any(b < 0 for b in box)):
        raise UsageError("dimension vectors must be nonnegative")
    return sigma.SigmaQuery(q, lam, alpha, box)


def _query_json(q: sigma.SigmaQuery) -> dict:
    vs = q.quiver.vertices
    return {
        "alpha": {v: a for v, a in zip(vs, q.alpha)},
        "lambda": {v: format_rational(x) for v, x in zip(vs, q.lam)},
        "box": {v: b for v, b in zip(vs, q.box)},
    }


def _vec(v) -> str:
    return "(" + ",".join(map(str, v)) + ")"


# --- subcommands -------------------------------------------------------------


def cmd_forms(args):
    doc = _load(args)
    q = _query(args, doc, need_alpha=False)
    ctx = q.forms
    out = {
        "vertices": list(q.quiver.vertices),
        "euler": [list(r) for r in ctx.euler],
        "tits": [list(r) for r in ctx.tits],
    }
    if any(q.alpha):
        out["alpha"] = list(q.alpha)
        out["chi"] = roots.chi(ctx, q.alpha, q.alpha)
        out["p"] = roots.p(ctx, q.alpha)
    text = [f"vertices: {' '.join(q.quiver.vertices)}",
            "euler: " + str(out["euler"]), "tits: " + str(out["tits"])]
    if "p" in out:
        text.append(f"chi(alpha,alpha) = {out['chi']}, p(alpha) = {out['p']}")
    return out, "\n".join(text)


def cmd_roots(args):
    doc = _load(args)
    q = _query(args, doc, need_alpha=False)
    rs = roots.enumerate_roots(q.forms, q.box)
    out = {"box": list(rs.box), "roots": [r.as_dict() for r in rs]}
    text = [f"{_vec(r.vector)} {'real' if r.real else 'imaginary'} p={r.p}"
            + ("" if r.indivisible else " divisible") for r in rs]
    return out, "\n".join(text) or "no roots"


def cmd_bracket(args):
    doc = _load(args)
    dq = double(doc.quiver)
    w1 = necklace.parse_necklace(dq, args.w1)
    w2 = necklace.parse_necklace(dq, args.w2)
    res = necklace.bracket(dq, w1, w2)
    out = {"w1": w1.format(dq), "w2": w2.format(dq), "terms": res.as_terms(dq)}
    return out, res.format(dq)


def cmd_sigma(args):
    doc = _load(args)
    q = _query(args, doc, need_alpha=False)
    members = sigma.enumerate_sigma(q)
    out = {"query": _query_json(q), "sigma": [list(b) for b in members]}
    text = ["Sigma_lambda within box: " + (" ".join(_vec(b) for b in members) or "empty")]
    if any(q.alpha):
        inside = sigma.in_sigma(q, q.alpha)
        out["alphaInSigma"] = inside
        out["alphaMinimal"] = sigma.is_minimal(q) if inside else False
        text.append(f"alpha {_vec(q.alpha)} in Sigma: {inside}, minimal: {out['alphaMinimal']}")
    return out, "\n".join(text)


def cmd_types(args):
    q = _query(args, _load(args))
    types = sigma.enumerate_types(q)
    out = {"query": _query_json(q),
           "types": [{"type": t.as_list(), "dimension": t.dimension,
                      "azumaya": t.is_azumaya(q.alpha)} for t in types]}
    text = [f"{t.format()}  dim={t.dimension}" for t in types]
    return out, "\n".join(text) or "no representation types"


def _parse_type(q, text: str):
    pairs = []
    for part in text.split(";"):
        e, sep, b = part.partition(":")
        if not sep:
            raise UsageError(f"bad type component {part!r}; expected e:b1,b2,...")
        try:
            pairs.append((int(e), tuple(int(x) for x in b.strip().strip("()").split(","))))
        except ValueError:
            raise UsageError(f"bad type component {part!r}") from None
    return sigma.make_type(q, pairs)


def cmd_local(args):
    q = _query(args, _load(args))
    types = [_parse_type(q, args.type)] if args.type else sigma.enumerate_types(q)
    settings = []
    text = []
    for t in types:
        s = sigma.local_quiver(q, t)
        base = s.base
        pq = roots.p(roots.FormsContext(base), s.alpha)
        settings.append({
            "type": t.as_list(),
            "quiver": {"vertices": list(base.vertices),
                       "arrows": [{"id": a.id, "tail": a.tail, "head": a.head} for a in base.arrows]},
            "alpha": list(s.alpha),
            "p": pq,
        })
        text.append(f"{t.format()}: {len(base.vertices)} vertices, "
                    f"{len(base.arrows)} base arrows, alpha_tau={_vec(s.alpha)}, p={pq}")
    return {"query": _query_json(q), "settings": settings}, "\n".join(text)


def cmd_decide(args):
    q = _query(args, _load(args))
    rep = sigma.decide(q)
    out = rep.as_dict()
    out["query"] = _query_json(q)
    text = [f"alpha {_vec(q.alpha)} in Sigma_lambda: {rep.inSigma}"]
    text += [f"{k}: {v}" for k, v in rep.conditions.items()]
    if rep.dimension is not None:
        text.append(f"dimension: {rep.dimension}")
    for s in rep.strata:
        text.append(f"stratum {s.type.format()} dim={s.dimension}"
                    + (" smooth" if s.smooth else ""))
    text += [f"warning: {w}" for w in rep.warnings]
    return out, "\n".join(text)


def cmd_verify(args):
    q = _query(args, _load(args))
    if args.trials < 1:
        raise UsageError("--trials must be positive")
    rep = moment.verify(q, seed=args.seed, trials=args.trials, tol=args.tol)
    out = rep.as_dict()
    out["query"] = _query_json(q)
    text = [f"trials {rep.trials}, failures {rep.failures} (numerical witness)"]
    if rep.summary:
        s = rep.summary
        text += [f"residual {s.residual:.3g}",
                 f"jacobian rank {s.jacobianRank} / {s.expectedRank}",
                 f"fiber dimension {s.fiberDimension}",
                 f"quotient estimate {s.quotientDimensionEstimate}",
                 f"endomorphisms {s.endomorphismDimension} (simple: {s.simple})"]
    text += [f"check {k}: {'ok' if v else 'FAILED'}" for k, v in rep.checks.items()]
    return out, "\n".join(text)


COMMANDS = {
    "forms": (cmd_forms, "Euler form, Tits form and p(alpha)"),
    "roots": (cmd_roots, "positive roots within a box"),
    "bracket": (cmd_bracket, "necklace Lie bracket of two words"),
    "sigma": (cmd_sigma, "Sigma_lambda within a box, membership and minimality of alpha"),
    "types": (cmd_types, "semisimple representation types of alpha"),
    "local": (cmd_local, "local quivers of representation types"),
    "decide": (cmd_decide, "decide the five equivalent smoothness conditions"),
    "verify": (cmd_verify, "numerical moment-map witness for a query"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="quiverlab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        sp = sub.add_parser(name, help=help_text, description=help_text)
        sp.add_argument("input", help="quiver file (DSL or JSON)")
        fmt = sp.add_mutually_exclusive_group()
        fmt.add_argument("--json", dest="json", action="store_true", help="JSON output")
        fmt.add_argument("--text", dest="json", action="store_false", help="text output (default)")
        if name == "bracket":
            sp.add_argument("--w1", required=True, help='first word, e.g. "a a"')
            sp.add_argument("--w2", required=True, help='second word, e.g. "a* a*"')
            continue
        sp.add_argument("--alpha", help="dimension vector, e.g. v0=2,vinf=1 or 2,1")
        sp.add_argument("--lambda", dest="lam", help="weights, e.g. v0=1,vinf=-2")
        sp.add_argument("--box", help="search box (defaults to alpha)")
        if name == "local":
            sp.add_argument("--type", help='representation type, e.g. "2:1,0;1:0,1"')
        if name == "verify":
            sp.add_argument("--seed", type=int, default=0)
            sp.add_argument("--trials", type=int, default=1)
            sp.add_argument("--tol", type=float, default=moment.RANK_TOL,
                            help="relative singular-value threshold for ranks")
    return parser


def _emit(payload, as_json: bool, text: str | None = None, stream=None):
    stream = stream or sys.stdout
    if as_json:
        stream.write(json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False) + "\n")
    else:
        stream.write(text + "\n")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    func = COMMANDS[args.command][0]
    try:
        payload, text = func(args)
    except (UsageError, QuiverError) as exc:
        kind = "usage" if isinstance(exc, UsageError) else type(exc).__name__
        _emit({"error": {"kind": kind, "message": str(exc)}}, args.json,
              f"error: {exc}", sys.stdout if args.json else sys.stderr)
        return 2
    except (sigma.DomainError, moment.SamplingError, roots.LoopVertexError) as exc:
        _emit({"error": {"kind": type(exc).__name__, "message": str(exc)}}, args.json,
              f"error: {exc}", sys.stdout if args.json else sys.stderr)
        return 1
    _emit(payload, args.json, text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
