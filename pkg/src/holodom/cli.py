"""Command-line front end.

Subcommands: gap, map, preimage, flow, trajectory, classify, double-section,
tangent, covering, verify.  Reports are printed to stdout as JSON with sorted
keys (identical argv and seed give byte-identical output); trajectories can
be emitted as CSV instead.  Exit codes: 0 success or pass, 1 validation or
precondition failure, 2 numerical failure.

Complex scalars on the command line are single re,im tokens (a bare re is
accepted); flags taking several complex values take one token per value.
JSON-valued flags accept inline JSON or a path to a file holding either the
value itself or a problem document with the matching section ("s", "u",
"double_section", "family", "covering").  The HOLODOM_SEED environment
variable overrides --seed wherever one is consumed.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys

from .catalog import (CuspidalCurve, GraphCurve, closed_flow_family,
                      eigenratio, family_from_json, instantiate_family,
                      pole_graph_curve, tangency_check)
from .covering import CuspCurve
from .entire import PolyNode, expr_from_json
from .errors import DomainError, EscapeError, NumericalError
from .gap import construct_gap, verify_gap
from .oracle import IntegrationSpec, integrate
from .poly import Poly, RationalFn
from .riccati import (DoubleSection, RiccatiField, Section, default_section,
                      dominating_map_g, verify_section_avoids)
from .vertical import DominatingMapF, FiberType, VerticalFieldZu
from .verification import SUITES, run_all

CSV_HEADER = "t_re,t_im,z_re,z_im,w_re,w_im"


# ---------------------------------------------------------------------------
# argument decoding

def _complex_token(text):
    try:
        parts = text.split(",")
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise argparse.ArgumentTypeError(
        "expected a complex scalar as re,im (got %r)" % (text,))


def _load_doc(text, section):
    """Inline JSON, or a path to a JSON file; unwraps a problem-document
    section of the given name when present."""
    text = text.strip()
    if text and text[0] in "{[\"":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DomainError("malformed JSON argument: %s" % (exc,))
    else:
        try:
            with open(text, "r", encoding="utf-8") as fh:
                doc = json.load(fh)
        except OSError as exc:
            raise DomainError("cannot read %r: %s" % (text, exc))
        except json.JSONDecodeError as exc:
            raise DomainError("malformed JSON in %r: %s" % (text, exc))
    # a bare value for a flag never carries its section name as a key
    if isinstance(doc, dict) and section in doc and not _looks_like_value(
            doc, section):
        return doc[section]
    return doc


def _looks_like_value(doc, section):
    markers = {"s": "num", "u": "op", "family": "kind",
               "double_section": "op", "sigma": "num"}
    return markers.get(section) in doc


def _rational_arg(text):
    doc = _load_doc(text, "s")
    try:
        return RationalFn.from_json(doc)
    except DomainError:
        raise
    except (TypeError, ValueError, KeyError, IndexError):
        raise DomainError("expected a rational function as "
                          '{"num": [[re,im],...], "den": [[re,im],...]}')


def _entire_arg(text):
    if text is None:
        return None
    doc = _load_doc(text, "u")
    return _entire_from_doc(doc)


def _entire_from_doc(doc):
    if doc is None:
        return None
    if isinstance(doc, list):
        try:
            return PolyNode(Poly.from_json(doc))
        except (TypeError, ValueError, IndexError):
            raise DomainError("polynomial coefficients must be [re,im] pairs")
    if isinstance(doc, dict) and "op" in doc:
        return expr_from_json(doc)
    raise DomainError("expected polynomial coefficients or an expression "
                      "document with an 'op' tag")


def _cx_json(value):
    return [value.real, value.imag]


# ---------------------------------------------------------------------------
# subcommand handlers; each returns (payload or None, exit code)

def _cmd_gap(args):
    s = _rational_arg(args.s)
    cert = construct_gap(s)
    report = verify_gap(cert, n_samples=args.samples, seed=args.seed)
    payload = {"certificate": cert.to_json(), "report": report.to_json()}
    return payload, 0 if report.passed else 2


def _vertical_from_args(args):
    s = _rational_arg(args.s)
    u = _entire_arg(args.u)
    return s, DominatingMapF(construct_gap(s), u)


def _cmd_map(args):
    _, f = _vertical_from_args(args)
    z, t = args.eval
    zz, ww = f(z, t)
    return {"z": _cx_json(zz), "w": _cx_json(ww)}, 0


def _cmd_preimage(args):
    _, f = _vertical_from_args(args)
    z0, w0 = args.target
    pre = f.preimage(z0, w0)
    return {"t": _cx_json(pre.t), "branch": pre.branch}, 0


def _cmd_classify(args):
    s = _rational_arg(args.s)
    field = VerticalFieldZu(s, _entire_arg(args.u))
    kind = field.classify_fiber(args.z)
    payload = {"z": _cx_json(args.z), "fiber": kind.value}
    if kind is FiberType.TYPE_C_STAR:
        payload["period"] = _cx_json(field.period(args.z))
    return payload, 0


def _cmd_trajectory(args):
    if args.steps < 1:
        raise DomainError("--steps must be at least 1")
    s = _rational_arg(args.s)
    field = VerticalFieldZu(s, _entire_arg(args.u))
    rows = []
    for k in range(args.steps + 1):
        t = args.tmax * (k / args.steps)
        _, w = field.flow(t, args.z, args.w)
        rows.append((t.real, t.imag, args.z.real, args.z.imag,
                     w.real, w.imag))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            _write_csv(fh, rows)
        return {"rows": len(rows), "written": args.out}, 0
    if args.csv:
        _write_csv(sys.stdout, rows)
        return None, 0
    return {"header": CSV_HEADER.split(","),
            "points": [list(r) for r in rows]}, 0


def _write_csv(fh, rows):
    fh.write(CSV_HEADER + "\n")
    for row in rows:
        fh.write(",".join(repr(v) for v in row) + "\n")


def _field_callback(doc):
    """Flow-capable field from a document: {"vertical": {"s",...,"u":...}},
    {"family": {...}}, or a bare family document."""
    if not isinstance(doc, dict):
        raise DomainError("field document must be a JSON object")
    if "vertical" in doc or ("s" in doc and "kind" not in doc):
        inner = doc.get("vertical", doc)
        s = RationalFn.from_json(inner["s"])
        u = _entire_from_doc(inner.get("u"))
        return VerticalFieldZu(s, u).as_callback()
    if "family" in doc or "kind" in doc:
        spec = family_from_json(doc.get("family", doc))
        return instantiate_family(spec)
    raise DomainError("field document needs a 'vertical' or 'family' entry")


def _cmd_flow(args):
    field = _field_callback(_load_doc(args.field, "field"))
    z0, w0 = args.start
    spec = IntegrationSpec(path=tuple(args.path), rtol=args.rtol,
                           atol=args.atol)
    res = integrate(field, (z0, w0), spec)
    return {"endpoint": {"z": _cx_json(res.endpoint[0]),
                         "w": _cx_json(res.endpoint[1])},
            "error_estimate": res.error_estimate,
            "steps": res.steps,
            "rejected": res.rejected}, 0


def _ds_part(text, key):
    doc = _load_doc(text, "double_section")
    if isinstance(doc, dict) and "op" not in doc and key in doc:
        doc = doc[key]
    return _entire_from_doc(doc)


def _double_section_from_args(args):
    return DoubleSection(_ds_part(args.a, "a"), _ds_part(args.b, "b"),
                         _ds_part(args.c, "c"))


def _sigma_from_args(args, section):
    if args.sigma is None:
        sigma = default_section(section)
        if sigma is None:
            raise DomainError("no structural default section here; "
                              "pass --sigma")
        return sigma
    text = args.sigma.strip()
    if text == "inf":
        return Section.infinity()
    return Section.of(RationalFn.from_json(_load_doc(text, "sigma")))


def _cmd_double_section(args):
    ds = _double_section_from_args(args)
    sigma = _sigma_from_args(args, ds)
    if args.verify:
        report = verify_section_avoids(sigma, ds, n_samples=args.samples,
                                       seed=args.seed)
        return report.to_json(), 0 if report.passed else 2
    field = RiccatiField(ds, _entire_arg(args.u))
    z, t = args.eval
    out = dominating_map_g(field, sigma, z, t)
    return {"w": out.to_json()}, 0


_CURVES = ("graph", "pole_graph", "cusp")


def _curve_from_doc(doc):
    if isinstance(doc, dict) and "graph" in doc:
        return GraphCurve(RationalFn.from_json(doc["graph"]))
    if isinstance(doc, dict) and "pole_graph" in doc:
        return pole_graph_curve(int(doc["pole_graph"]))
    if isinstance(doc, dict) and "cusp" in doc:
        c = doc["cusp"]
        return CuspidalCurve(int(c["r"]), int(c["s"]),
                             complex(c["a"][0], c["a"][1]))
    raise DomainError("curve document needs one of %s" % (", ".join(_CURVES),))


def _cmd_tangent(args):
    spec = family_from_json(_load_doc(args.family, "family"))
    if args.check == "tangency":
        if args.curve is None:
            raise DomainError("--check tangency needs --curve")
        curve = _curve_from_doc(_load_doc(args.curve, "curve"))
        report = tangency_check(instantiate_family(spec), curve,
                                n_samples=args.samples, seed=args.seed)
        return report.to_json(), 0 if report.passed else 2
    if args.check == "eigenratio":
        if args.at is None:
            raise DomainError("--check eigenratio needs --at z w")
        result = eigenratio(instantiate_family(spec), tuple(args.at))
        return result.to_json(), 0
    if args.point is None or args.time is None:
        raise DomainError("--check flow needs --point z w and --time t")
    z, w = closed_flow_family(spec, args.time, tuple(args.point))
    return {"z": _cx_json(z), "w": _cx_json(w)}, 0


def _cmd_covering(args):
    curve = CuspCurve(args.r, args.s, args.a)
    if args.identity:
        ok = curve.identity_check()
        return ("pass" if ok else "fail"), 0 if ok else 2
    if args.eval is not None:
        x, y = curve.big_gamma(*args.eval)
        return {"x": _cx_json(x), "y": _cx_json(y)}, 0
    if args.member is not None:
        return {"member": curve.membership(*args.member)}, 0
    u, v = curve.gamma_preimage(*args.preimage)
    return {"u": _cx_json(u), "v": _cx_json(v)}, 0


def _cmd_verify(args):
    if args.criterion is not None:
        k = args.criterion - 1
        if not 0 <= k < len(SUITES):
            raise DomainError("criterion must be in 1..%d" % (len(SUITES),))
        reports = [SUITES[k](args.seed + 100 * k)]
    else:
        reports = run_all(seed=args.seed)
    ok = all(r.passed for r in reports)
    payload = {"criteria": [r.to_json() for r in reports], "passed": ok}
    return payload, 0 if ok else 2


# ---------------------------------------------------------------------------
# parser

# tokens like -0.5,-1.2 are values, not flags; argparse's built-in
# negative-number detection stops at plain integers and decimals
_NEGATIVE_VALUE = re.compile(r"^-[\d.]")


def _parse_args(argv):
    parser = argparse.ArgumentParser(
        prog="holodom",
        description="Dominating maps onto graph complements: gap "
                    "certificates, closed-form flows, tangent-field catalog, "
                    "cusp coverings, and the verification suites.")
    parser._negative_number_matcher = _NEGATIVE_VALUE
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gap", help="build and verify a gap certificate")
    p.add_argument("--s", required=True, metavar="JSON")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=1000)
    p.set_defaults(handler=_cmd_gap)

    p = sub.add_parser("map", help="evaluate the dominating map f(z, t)")
    p.add_argument("--s", required=True, metavar="JSON")
    p.add_argument("--u", metavar="JSON")
    p.add_argument("--eval", required=True, nargs=2, type=_complex_token,
                   metavar=("Z", "T"))
    p.set_defaults(handler=_cmd_map)

    p = sub.add_parser("preimage", help="solve f(z, t) = (z, w) for t")
    p.add_argument("--s", required=True, metavar="JSON")
    p.add_argument("--u", metavar="JSON")
    p.add_argument("--target", required=True, nargs=2, type=_complex_token,
                   metavar=("Z", "W"))
    p.set_defaults(handler=_cmd_preimage)

    p = sub.add_parser("flow", help="integrate a field with the oracle")
    p.add_argument("--field", required=True, metavar="JSON")
    p.add_argument("--start", required=True, nargs=2, type=_complex_token,
                   metavar=("Z", "W"))
    p.add_argument("--path", required=True, nargs="+", type=_complex_token,
                   metavar="T")
    p.add_argument("--rtol", type=float, default=1e-10)
    p.add_argument("--atol", type=float, default=1e-12)
    p.set_defaults(handler=_cmd_flow)

    p = sub.add_parser("trajectory",
                       help="sample a vertical-field trajectory")
    p.add_argument("--s", required=True, metavar="JSON")
    p.add_argument("--u", metavar="JSON")
    p.add_argument("--z", required=True, type=_complex_token)
    p.add_argument("--w", required=True, type=_complex_token)
    p.add_argument("--tmax", required=True, type=_complex_token)
    p.add_argument("--steps", required=True, type=int)
    p.add_argument("--out", metavar="FILE")
    p.add_argument("--csv", action="store_true")
    p.set_defaults(handler=_cmd_trajectory)

    p = sub.add_parser("classify", help="fiber type at a base point")
    p.add_argument("--s", required=True, metavar="JSON")
    p.add_argument("--u", metavar="JSON")
    p.add_argument("--z", required=True, type=_complex_token)
    p.set_defaults(handler=_cmd_classify)

    p = sub.add_parser("double-section",
                       help="Riccati dominating map g(z, t) or section check")
    p.add_argument("--a", required=True, metavar="JSON")
    p.add_argument("--b", required=True, metavar="JSON")
    p.add_argument("--c", required=True, metavar="JSON")
    p.add_argument("--u", metavar="JSON")
    p.add_argument("--sigma", metavar="JSON|inf")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--eval", nargs=2, type=_complex_token,
                      metavar=("Z", "T"))
    mode.add_argument("--verify", action="store_true")
    p.add_argument("--samples", type=int, default=400)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(handler=_cmd_double_section)

    p = sub.add_parser("tangent", help="catalog field checks")
    p.add_argument("--family", required=True, metavar="JSON")
    p.add_argument("--check", required=True,
                   choices=("tangency", "eigenratio", "flow"))
    p.add_argument("--curve", metavar="JSON")
    p.add_argument("--at", nargs=2, type=_complex_token, metavar=("Z", "W"))
    p.add_argument("--time", type=_complex_token, metavar="T")
    p.add_argument("--point", nargs=2, type=_complex_token,
                   metavar=("Z", "W"))
    p.add_argument("--samples", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(handler=_cmd_tangent)

    p = sub.add_parser("covering", help="cusp-curve covering maps")
    p.add_argument("--r", required=True, type=int)
    p.add_argument("--s", required=True, type=int)
    p.add_argument("--a", required=True, type=_complex_token)
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--eval", nargs=2, type=_complex_token,
                      metavar=("Z", "T"))
    mode.add_argument("--member", nargs=2, type=_complex_token,
                      metavar=("X", "Y"))
    mode.add_argument("--preimage", nargs=2, type=_complex_token,
                      metavar=("X", "Y"))
    mode.add_argument("--identity", action="store_true")
    p.set_defaults(handler=_cmd_covering)

    p = sub.add_parser("verify", help="run the acceptance suites")
    p.add_argument("--all", action="store_true")
    p.add_argument("--criterion", type=int, metavar="N")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(handler=_cmd_verify)

    for child in sub.choices.values():
        child._negative_number_matcher = _NEGATIVE_VALUE

    return parser.parse_args(argv)


def main(argv=None) -> int:
    try:
        args = _parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors; the contract wants 1
        return 0 if not exc.code else 1
    seed_env = os.environ.get("HOLODOM_SEED")
    if seed_env is not None and hasattr(args, "seed"):
        try:
            args.seed = int(seed_env)
        except ValueError:
            print(json.dumps({"error": "HOLODOM_SEED must be an integer"}),
                  file=sys.stderr)
            return 1
    try:
        payload, code = args.handler(args)
    except EscapeError as exc:
        print(json.dumps({"error": str(exc),
                          "tau_reached": exc.tau_reached,
                          "segment": exc.segment_index}, sort_keys=True),
              file=sys.stderr)
        return 2
    except DomainError as exc:
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return 1
    except NumericalError as exc:
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return 2
    if payload is not None:
        print(json.dumps(payload, sort_keys=True))
    return code


if __name__ == "__main__":
    raise SystemExit(main())
