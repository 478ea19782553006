"""Command-line front end.

Every subcommand prints one JSON object (keys sorted) on stdout, or a short
text rendering with ``--pretty``.  Exit codes: 0 success, 2 input error,
3 computation error or an undecided verdict.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from decimal import Decimal
from fractions import Fraction
from typing import Callable

from . import __version__
from .affine_weyl import AlcovePoint, ParabolicIndex, affine_fold, alcove_face, root_datum, root_datum_from_json
from .errors import ComputationError, InputError, LoopKError
from .render import GRAMMAR_VERSION, identifiers, parse_poly, render_compact, render_series

EXIT_OK, EXIT_INPUT, EXIT_COMPUTE = 0, 2, 3

BUILTIN_MANIFOLDS = {
    "point": {"dim": 0, "chern": {"1": 1}},
    "cp1": {"dim": 1, "chern": {"c1": 2}},
    "cp2": {"dim": 2, "chern": {"c1^2": 9, "c2": 3}},
    "k3": {"dim": 2, "chern": {"c1^2": 0, "c2": 24}},
    "t4": {"dim": 2, "chern": {"c1^2": 0, "c2": 0}},
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def _datum(args):
    if getattr(args, "cartan", None):
        text = args.cartan
        if os.path.exists(text):
            with open(text, encoding="utf-8") as fh:
                text = fh.read()
        try:
            payload = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"malformed Cartan JSON: {exc}") from None
        if isinstance(payload, list):
            return root_datum(payload)
        return root_datum_from_json(json.dumps(payload))
    return root_datum(args.group)


def _number(x: Fraction):
    """Exact rational for JSON: a decimal literal when it terminates, else ``"p/q"``."""
    if x.denominator == 1:
        return x.numerator
    d = x.denominator
    for p in (2, 5):
        while d % p == 0:
            d //= p
    if d == 1:
        text = str(Decimal(x.numerator) / Decimal(x.denominator))
        if repr(float(text)) == text:
            return float(text)
    return f"{x.numerator}/{x.denominator}"


def _read_point(text: str) -> list[Fraction]:
    try:
        return [Fraction(t.strip()) for t in text.split(",")]
    except (ValueError, ZeroDivisionError):
        raise InputError(f"cannot read point {text!r}") from None


def _load_json_arg(value: str | None):
    if value is None or value == "-":
        text = sys.stdin.read()
    elif os.path.exists(value):
        with open(value, encoding="utf-8") as fh:
            text = fh.read()
    else:
        text = value
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON input: {exc}") from None


def _manifold(value: str | None):
    from .genus import ChernData

    if value and value.lower() in BUILTIN_MANIFOLDS and not os.path.exists(value):
        return ChernData.from_json(BUILTIN_MANIFOLDS[value.lower()])
    return ChernData.from_json(_load_json_arg(value))


def _nonneg(name: str, value: int) -> int:
    if value < 0:
        raise InputError(f"--{name} must be non-negative")
    return value


# subcommands ---------------------------------------------------------------


def cmd_pushforward(args):
    from .rep_rings import induction, parse_character, render_factored

    rd = _datum(args)
    I = ParabolicIndex.parse(args.parabolic, rd.rank)
    c = parse_character(args.element, rd)
    out = induction(I, c, rd)
    result = render_factored(I, out, rd)
    return {
        "parabolic": list(I.indices),
        "element": render_compact(c),
        "result": result,
        "expanded": render_compact(out),
        "grammar": GRAMMAR_VERSION,
    }, result


def cmd_colimit(args):
    from .verlinde import colimit_cokernel, stabilize

    rd = _datum(args)
    if rd.rank > 1:
        from .verlinde import poset_colimit

        sl = poset_colimit(rd, args.degree)
        rep = sl.report()
        return rep, f"degree {rep['degree']}: Z^{rep['rank']}" + ("" if rep["certified"] else " (uncertified)")
    if args.stabilize is not None:
        pres = stabilize(rd, args.degree, args.stabilize)
    else:
        J = args.u_bound if args.u_bound is not None else abs(args.degree) + 2
        pres = colimit_cokernel(rd, args.degree, J)
        nxt = colimit_cokernel(rd, args.degree, J + 1)
        if pres.isomorphic(nxt):
            pres = type(pres)(
                pres.degree, pres.u_bound, pres.domain_labels, pres.codomain_labels,
                pres.relations, pres.smith, stabilized=True,
            )
    rep = pres.report()
    text = f"degree {rep['degree']}: Z^{rep['rank']}" + (
        "".join(f" + Z/{t}" for t in rep["torsion"])
    ) + (" (stabilized)" if rep["stabilized"] else "")
    return rep, text


def cmd_verlinde(args):
    from .verlinde import fusion_ring_su2, stabilize

    k = args.level
    ring = fusion_ring_su2(k)
    pres = stabilize(None, k + 2, k + 10)
    rep = {
        "level": k,
        "rank": ring.rank,
        "fusion": ring.table(),
        "colimit_degree": k + 2,
        "colimit_rank": pres.rank,
    }
    lines = [f"level {k}: rank {ring.rank}"]
    for key, val in rep["fusion"].items():
        lines.append(f"  {key} = " + (" + ".join(f"{c}*{v}" if c != 1 else v for v, c in val.items()) or "0"))
    return rep, "\n".join(lines)


def cmd_conjecture(args):
    from .verlinde import conjecture_check

    rep = conjecture_check(_nonneg("k-max", args.k_max))
    lines = [
        f"z^{r['degree']}: rank {r['rank']} expected {r['expected']} {'ok' if r['pass'] else 'FAIL'}"
        for r in rep["degrees"]
    ]
    return rep, "\n".join(lines)


def cmd_fold(args):
    rd = _datum(args)
    p = AlcovePoint(_read_point(args.point))
    folded, word = affine_fold(p, rd)
    coords = [_number(x) for x in folded.coords]
    face = alcove_face(folded, rd)
    rep = {
        "point": coords[0] if rd.rank == 1 else coords,
        "word": [f"s{i}" for i in word],
        "face": list(face.indices),
    }
    return rep, f"{rep['point']} via {' '.join(rep['word']) or '(empty word)'}"


def cmd_face(args):
    rd = _datum(args)
    p = AlcovePoint(_read_point(args.point))
    face = alcove_face(p, rd)
    rep = {"inside": face is not None, "face": None if face is None else list(face.indices)}
    return rep, "outside" if face is None else str(face)


def cmd_sigma(args):
    from .fgl import LineVariable, sigma_class

    s = sigma_class(LineVariable(), _nonneg("q-order", args.q_order))
    text = render_series(s)
    return {"q_order": s.order, "series": text, "variable": "s", "relation": "L = s^2"}, text


def cmd_epsilon(args):
    from .fgl import LineVariable, epsilon_unit

    line = LineVariable()
    s = line.series_to_L(epsilon_unit(line, args.q_order))
    text = render_series(s)
    return {"q_order": s.order, "series": text, "variable": "L"}, text


def cmd_euler_class(args):
    from .fgl import LoopNormalModel, euler_normal_product, fgl_from_name

    roots = [r.strip() for r in args.roots.split(",") if r.strip()] if args.roots else []
    model = LoopNormalModel(roots, args.fourier, args.q_window)
    s = euler_normal_product(model, fgl_from_name(args.fgl), normalized=args.normalized)
    text = render_series(s)
    return {
        "fgl": args.fgl,
        "fourier": args.fourier,
        "roots": roots,
        "normalized": args.normalized,
        "q_window": s.order,
        "series": text,
    }, text


def cmd_fgl(args):
    from .fgl import fgl_from_json, fgl_from_name, fgl_k_series, fgl_sum
    from .render import parse_series

    law = fgl_from_json(_load_json_arg(args.law_file)) if args.law_file else fgl_from_name(args.fgl)
    texts = [args.a] + ([args.b] if args.b is not None else [])
    names = []
    for t in texts:
        for v in identifiers(t.replace("O(", "(")):
            if v not in names and v not in ("q", "O"):
                names.append(v)
    a = parse_series(args.a, names, args.q_order)
    if args.b is not None:
        if args.k is not None:
            raise InputError("give either --b or --k")
        out = fgl_sum(law, a, parse_series(args.b, names, args.q_order))
    elif args.k is not None:
        out = fgl_k_series(law, a, args.k)
    else:
        raise InputError("give --b for a formal sum or --k for a k-series")
    text = render_series(out)
    return {"fgl": law.kind, "q_order": out.order, "series": text}, text


def cmd_witten(args):
    from .genus import a_hat_genus, witten_genus

    M = _manifold(args.manifold)
    s = witten_genus(M, _nonneg("q-order", args.q_order))
    text = render_series(s)
    return {"dim": M.dim, "q_order": s.order, "series": text, "a_hat": _number(a_hat_genus(M))}, text


def cmd_tft(args):
    from .genus import euler_characteristic, tft_invariant

    M = _manifold(args.manifold)
    s = tft_invariant(M, _nonneg("genus", args.genus), _nonneg("q-order", args.q_order))
    text = render_series(s)
    return {
        "dim": M.dim,
        "genus": args.genus,
        "q_order": s.order,
        "series": text,
        "euler_characteristic": euler_characteristic(M),
    }, text


def cmd_localize(args):
    from .tate import khat_orbit

    mod = khat_orbit(_nonneg("orbit", args.orbit), _nonneg("q-order", args.q_order))
    rep = mod.report()
    return rep, f"verdict {rep['verdict']}; (" + rep["certificate"]["relation"] + ") * (" + rep["certificate"]["inverse"] + ") = -1"


def cmd_tate(args):
    from .tate import presentation_from_json, tate_base_change

    gens, rels = presentation_from_json(_load_json_arg(args.presentation))
    mod = tate_base_change(gens, rels, _nonneg("q-order", args.q_order))
    rep = mod.report()
    text = f"verdict {rep['verdict']}" + (f", rank {rep['rank']}" if rep["rank"] is not None else "")
    if mod.verdict == "undecided":
        text += f" ({mod.diagnostic})"
    return rep, text, (EXIT_COMPUTE if mod.verdict == "undecided" else EXIT_OK)


# parser --------------------------------------------------------------------


def _add_group(p):
    g = p.add_mutually_exclusive_group()
    g.add_argument("--group", default="su2", help="type label such as su2, su3, A2, B2, G2")
    g.add_argument("--cartan", help='Cartan matrix as JSON ({"cartan": [[...]]} or [[...]]) or a file')


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="loopk", description="Exact loop-group K-theory computations.")
    parser.add_argument("--version", action="version", version=f"loopk {__version__}")
    parser.add_argument("--pretty", action="store_true", help="print text instead of JSON")
    sub = parser.add_subparsers(dest="command", metavar="command", parser_class=_Parser)

    def add(name, fn, help_text):
        p = sub.add_parser(name, help=help_text, description=help_text)
        p.add_argument("--pretty", action="store_true", default=argparse.SUPPRESS, help="print text instead of JSON")
        p.set_defaults(func=fn)
        return p

    p = add("pushforward", cmd_pushforward, "holomorphic induction from the torus to H_I")
    _add_group(p)
    p.add_argument("--parabolic", required=True, help="comma-separated index set, e.g. 0 or 0,1")
    p.add_argument("--element", required=True, help="torus character, e.g. 'z^3' or 'u^-1*z^2'")

    p = add("colimit", cmd_colimit, "one z-degree slice of the colimit over the parabolic poset")
    _add_group(p)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--u-bound", type=int, dest="u_bound")
    p.add_argument("--stabilize", type=int, metavar="J_MAX", help="grow the window up to J_MAX")

    p = add("verlinde", cmd_verlinde, "SU(2) fusion ring at a level")
    p.add_argument("--level", type=int, required=True)

    p = add("conjecture-check", cmd_conjecture, "slice ranks against Verlinde dimensions")
    p.add_argument("--k-max", type=int, dest="k_max", required=True)

    p = add("fold", cmd_fold, "fold a point into the closed alcove")
    _add_group(p)
    p.add_argument("--point", required=True, help="root coordinates alpha_i(h), comma-separated")

    p = add("face", cmd_face, "face index set of a point of the alcove")
    _add_group(p)
    p.add_argument("--point", required=True)

    p = add("sigma", cmd_sigma, "sigma class as a q-series in s = L^(1/2)")
    p.add_argument("--q-order", type=int, dest="q_order", required=True)

    p = add("epsilon", cmd_epsilon, "renormalized unit eps(L) as a q-series")
    p.add_argument("--q-order", type=int, dest="q_order", required=True)

    p = add("euler-class", cmd_euler_class, "Euler class of the truncated loop normal bundle")
    p.add_argument("--fgl", choices=["add", "mult"], default="mult")
    p.add_argument("--fourier", type=int, required=True)
    p.add_argument("--roots", default="L", help="comma-separated Chern-root names")
    p.add_argument("--q-window", type=int, dest="q_window")
    p.add_argument("--normalized", action="store_true")

    p = add("fgl", cmd_fgl, "formal sum or k-series of classes")
    p.add_argument("--fgl", choices=["add", "mult"], default="mult")
    p.add_argument("--law-file", dest="law_file", help="custom law JSON")
    p.add_argument("--a", required=True)
    p.add_argument("--b")
    p.add_argument("--k", type=int)
    p.add_argument("--q-order", type=int, dest="q_order", default=10)

    p = add("witten-genus", cmd_witten, "Witten genus q-expansion from Chern numbers")
    p.add_argument("--manifold", help="JSON file, JSON text, builtin name, or - for stdin")
    p.add_argument("--q-order", type=int, dest="q_order", default=6)

    p = add("tft", cmd_tft, "surface invariant of genus g")
    p.add_argument("--manifold")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--q-order", type=int, dest="q_order", default=6)

    p = add("localize", cmd_localize, "vanishing certificate for an orbit T/C")
    p.add_argument("--orbit", type=int, required=True, help="order of C; 0 for the free orbit")
    p.add_argument("--q-order", type=int, dest="q_order", default=20)

    p = add("tate", cmd_tate, "base change of a presentation to Z((q))")
    p.add_argument("--presentation", help="JSON file, JSON text, or - for stdin")
    p.add_argument("--q-order", type=int, dest="q_order", default=20)

    return parser


def _emit(payload, pretty_text, pretty: bool, out) -> None:
    if pretty:
        out.write(pretty_text + "\n")
    else:
        out.write(json.dumps(payload, sort_keys=True, ensure_ascii=False) + "\n")


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if not getattr(args, "command", None):
            raise InputError("a subcommand is required; see --help")
        result = args.func(args)
        code = EXIT_OK
        if len(result) == 3:
            payload, text, code = result
        else:
            payload, text = result
        _emit(payload, text, args.pretty, stdout)
        return code
    except InputError as exc:
        stderr.write(json.dumps({"error": str(exc), "kind": "input"}, sort_keys=True) + "\n")
        return EXIT_INPUT
    except (ComputationError, LoopKError) as exc:
        stderr.write(json.dumps({"error": str(exc), "kind": "computation"}, sort_keys=True) + "\n")
        return EXIT_COMPUTE


def entry() -> None:
    sys.exit(main())
