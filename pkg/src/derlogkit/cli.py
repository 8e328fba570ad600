"""Command-line front end.

Exit codes: 0 pass, 1 check failed (or inconclusive), 2 usage/parse error,
3 timeout.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import re
import signal
import sys
import time
from dataclasses import dataclass, field

from . import __version__
from .corpus import UnknownExample, list_examples, run_example
from .criteria import (CheckReport, ComponentSpec, check_bound_and_sharpness, component_condition,
                       generalized_saito_check, ideal_repr, linear_free_divisor_check,
                       saito_criterion, saito_second_criterion, smooth_criterion)
from .derlog import (VField, VFModule, derlog_hypersurface, derlog_ideal, fitting_ideal,
                     minimal_generator_count)
from .ideals import Ideal
from .parse import ParseError
from .poly import Poly, Ring

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_TIMEOUT = 0, 1, 2, 3


class UsageError(Exception):
    pass


class Timeout(Exception):
    pass


# -- input documents -----------------------------------------------------------

_NAME = r"[A-Za-z][A-Za-z0-9_]*"
_LINE = re.compile(rf"^(poly|field|ideal|component|stratum)\s+({_NAME})\s*=\s*(.+)$")


@dataclass
class InputDoc:
    ring: Ring | None = None
    polys: dict = field(default_factory=dict)
    fields: dict = field(default_factory=dict)
    ideals: dict = field(default_factory=dict)
    components: dict = field(default_factory=dict)

    def names(self) -> set:
        return set(self.polys) | set(self.fields) | set(self.ideals) | set(self.components)


def parse_input(text: str, ring: Ring | None = None) -> InputDoc:
    """Parse the line-based input format (see README)."""
    doc = InputDoc(ring=ring)
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            _parse_line(doc, line)
        except ParseError as e:
            raise UsageError(f"line {lineno}: {e}") from None
        except (UsageError, ValueError) as e:
            raise UsageError(f"line {lineno}: {e}") from None
    return doc


def _parse_line(doc: InputDoc, line: str):
    if line.startswith("ring"):
        rest = line[4:].strip()
        if doc.ring is not None:
            raise UsageError("ring declared twice")
        doc.ring = parse_ring(rest)
        return
    m = _LINE.match(line)
    if not m:
        raise UsageError(f"cannot parse {line!r}")
    kind, name, body = m.groups()
    if doc.ring is None:
        raise UsageError("ring must be declared first")
    if name in doc.names():
        raise UsageError(f"name {name!r} declared twice")
    R = doc.ring
    if kind == "poly":
        doc.polys[name] = R.parse(body)
    elif kind == "field":
        doc.fields[name] = VField.parse(body, R)
    elif kind == "ideal":
        doc.ideals[name] = Ideal([_poly_ref(doc, g) for g in _split(body)], R)
    else:
        mm = re.match(r"^(.*),\s*dim\s+(\d+)\s*$", body)
        if not mm:
            raise UsageError("component needs a trailing ', dim <d>'")
        spec, d = mm.group(1).strip(), int(mm.group(2))
        I = doc.ideals[spec] if spec in doc.ideals else Ideal([_poly_ref(doc, g) for g in _split(spec)], R)
        doc.components[name] = ComponentSpec(I, d, name, top=(kind == "component"))


def _split(body: str) -> list:
    """Split on commas outside parentheses."""
    out, depth, cur = [], 0, ""
    for ch in body:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            out.append(cur.strip())
            cur = ""
        else:
            cur += ch
    if cur.strip():
        out.append(cur.strip())
    return out


def _poly_ref(doc: InputDoc, text: str) -> Poly:
    text = text.strip()
    if text in doc.polys:
        return doc.polys[text]
    return doc.ring.parse(text)


def parse_ring(text: str) -> Ring:
    names = [v.strip() for v in re.split(r"[,\s]+", text.strip()) if v.strip()]
    if not names:
        raise UsageError("empty ring")
    try:
        return Ring(tuple(names))
    except ValueError as e:
        raise UsageError(str(e)) from None


# -- argument handling ---------------------------------------------------------


def _common(p: argparse.ArgumentParser):
    p.add_argument("input", nargs="?", help="input file (ring/poly/field/ideal/component lines)")
    p.add_argument("--ring", help="comma-separated variables, e.g. x,y,z")
    p.add_argument("--json", action="store_true", help="emit one JSON document")
    p.add_argument("--long", action="store_true", help="enable long-running cases")
    p.add_argument("--timeout", type=float, help="abort after this many seconds (exit 3)")
    p.add_argument("--timings", action="store_true", help="include wall-clock timings in JSON")


def _target(p):
    p.add_argument("--f", help="hypersurface equation (expression or poly name)")
    p.add_argument("--ideal", nargs="+", help="ideal generators (or one ideal name)")


def _fields_opt(p, required=False):
    p.add_argument("--fields", nargs="+", required=False,
                   help="vector fields like 'x*d/dx' (or field names); default: all declared fields")


def _components_opt(p):
    p.add_argument("--component", action="append", default=[],
                   help="component of X as 'gen1,gen2@dim'")
    p.add_argument("--stratum", action="append", default=[],
                   help="lower stratum as 'gen1,gen2@dim' (bound only, no sharpness)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="derlogkit", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"derlogkit {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("derlog", help="generators of the logarithmic vector fields")
    _common(p); _target(p)

    p = sub.add_parser("fitting", help="Fitting ideals of a module of fields")
    _common(p); _target(p); _fields_opt(p)
    p.add_argument("--k", type=int, action="append", help="minor size (default: all)")

    p = sub.add_parser("bound", help="bound and sharpness flags per Fitting ideal")
    _common(p); _target(p); _fields_opt(p); _components_opt(p)

    p = sub.add_parser("check-saito", help="n fields and a reduced f")
    _common(p); _fields_opt(p); p.add_argument("--f")

    p = sub.add_parser("check-saito2", help="n fields, bracket closure and reduced determinant")
    _common(p); _fields_opt(p)

    p = sub.add_parser("check-smooth", help="generation test for V(x_1..x_{n-d})")
    _common(p); _fields_opt(p)
    p.add_argument("--d", type=int, required=True, help="dimension of the subspace")

    p = sub.add_parser("check-component", help="top minors not in the symbolic square")
    _common(p); _target(p); _fields_opt(p); _components_opt(p)

    p = sub.add_parser("check-generalized", help="hypotheses of the generalized Saito test")
    _common(p); _fields_opt(p); p.add_argument("--f")
    p.add_argument("--factor", action="append", help="irreducible factor of f")

    p = sub.add_parser("check-linear-fd", help="linear free divisor test")
    _common(p); _fields_opt(p)

    p = sub.add_parser("example", help="run a registered example")
    _common(p)

    p = sub.add_parser("list-examples", help="list registered examples")
    p.add_argument("--json", action="store_true")
    return ap


def _load(args) -> InputDoc:
    ring = parse_ring(args.ring) if getattr(args, "ring", None) else None
    if args.command == "example":
        return InputDoc()
    path = getattr(args, "input", None)
    if path:
        try:
            with open(path) as fh:
                text = fh.read()
        except OSError as e:
            raise UsageError(str(e)) from None
        doc = parse_input(text, ring)
    else:
        doc = InputDoc(ring=ring)
    if doc.ring is None:
        raise UsageError("no ring given (use --ring or a 'ring' line)")
    return doc


def _get_f(doc: InputDoc, text: str | None, required=True) -> Poly | None:
    if text is None:
        if len(doc.polys) == 1:
            return next(iter(doc.polys.values()))
        if required:
            raise UsageError("no polynomial given (--f)")
        return None
    return _poly_ref(doc, text)


def _get_ideal(doc: InputDoc, args) -> Ideal | None:
    gens = getattr(args, "ideal", None)
    if gens:
        if len(gens) == 1 and gens[0] in doc.ideals:
            return doc.ideals[gens[0]]
        return Ideal([_poly_ref(doc, g) for g in gens], doc.ring)
    f = _get_f(doc, getattr(args, "f", None), required=False)
    if f is not None:
        return None
    if len(doc.ideals) == 1:
        return next(iter(doc.ideals.values()))
    return None


def _get_fields(doc: InputDoc, args, fallback=True) -> VFModule | None:
    texts = getattr(args, "fields", None)
    if texts:
        out = [doc.fields[t] if t in doc.fields else VField.parse(t, doc.ring) for t in texts]
        return VFModule(doc.ring, out)
    if doc.fields:
        return VFModule(doc.ring, list(doc.fields.values()))
    if not fallback:
        raise UsageError("no vector fields given (--fields)")
    return None


def _module_for(doc: InputDoc, args) -> VFModule:
    L = _get_fields(doc, args)
    if L is not None:
        return L
    I = _get_ideal(doc, args)
    if I is not None:
        return derlog_ideal(I)
    return derlog_hypersurface(_get_f(doc, getattr(args, "f", None)))


def _parse_comp(doc: InputDoc, text: str, top: bool) -> ComponentSpec:
    if "@" not in text:
        raise UsageError(f"component {text!r} must look like 'gens@dim'")
    gens, d = text.rsplit("@", 1)
    try:
        dim = int(d)
    except ValueError:
        raise UsageError(f"bad dimension in {text!r}") from None
    gens = gens.strip()
    I = doc.ideals[gens] if gens in doc.ideals else Ideal([_poly_ref(doc, g) for g in _split(gens)], doc.ring)
    return ComponentSpec(I, dim, gens, top)


def _components(doc: InputDoc, args) -> list:
    comps = list(doc.components.values())
    comps += [_parse_comp(doc, c, True) for c in args.component]
    comps += [_parse_comp(doc, c, False) for c in args.stratum]
    if not comps:
        raise UsageError("no components given")
    return comps


# -- commands ------------------------------------------------------------------


def _cmd_derlog(doc, args) -> CheckReport:
    I = _get_ideal(doc, args)
    L = derlog_ideal(I) if I is not None else derlog_hypersurface(_get_f(doc, args.f))
    wit = [{"kind": "generators", "count": len(L), "minimal_count": minimal_generator_count(L),
            "fields": [str(g) for g in L]}]
    return CheckReport("derlog", "pass", wit)


def _cmd_fitting(doc, args) -> CheckReport:
    L = _module_for(doc, args)
    ks = args.k or list(range(1, doc.ring.n + 1))
    wit = [{"kind": "fitting", "k": k, "ideal": ideal_repr(fitting_ideal(L, k))} for k in ks]
    return CheckReport("fitting", "pass", wit)


def _cmd_bound(doc, args) -> CheckReport:
    return check_bound_and_sharpness(_module_for(doc, args), _components(doc, args))


def _cmd_component(doc, args) -> CheckReport:
    comps = _components(doc, args)
    L = _module_for(doc, args)
    reports = [component_condition(L, c) for c in comps if c.top]
    if not reports:
        raise UsageError("no top-level component given")
    if len(reports) == 1:
        return reports[0]
    wit = [dict(w, component=c.name) for c, r in zip([c for c in comps if c.top], reports)
           for w in r.witnesses]
    verdict = "pass" if all(r.passed for r in reports) else "fail"
    return CheckReport("component", verdict, wit, [c for r in reports for c in r.caveats])


def _cmd_saito(doc, args) -> CheckReport:
    L = _get_fields(doc, args, fallback=False)
    return saito_criterion(list(L.gens), _get_f(doc, args.f))


def _cmd_saito2(doc, args) -> CheckReport:
    return saito_second_criterion(list(_get_fields(doc, args, fallback=False).gens))


def _cmd_smooth(doc, args) -> CheckReport:
    return smooth_criterion(_get_fields(doc, args, fallback=False), args.d)


def _cmd_generalized(doc, args) -> CheckReport:
    L = _get_fields(doc, args, fallback=False)
    f = _get_f(doc, args.f)
    factors = [_poly_ref(doc, q) for q in args.factor] if args.factor else None
    return generalized_saito_check(L, f, factors)


def _cmd_linear(doc, args) -> CheckReport:
    return linear_free_divisor_check(list(_get_fields(doc, args, fallback=False).gens))


def _cmd_example(doc, args) -> CheckReport:
    if not args.input:
        raise UsageError("example needs a name (see list-examples)")
    try:
        return run_example(args.input, long=args.long)
    except UnknownExample:
        raise UsageError(f"unknown example {args.input!r}") from None


COMMANDS = {
    "derlog": _cmd_derlog, "fitting": _cmd_fitting, "bound": _cmd_bound,
    "check-saito": _cmd_saito, "check-saito2": _cmd_saito2, "check-smooth": _cmd_smooth,
    "check-component": _cmd_component, "check-generalized": _cmd_generalized,
    "check-linear-fd": _cmd_linear, "example": _cmd_example,
}


# -- output --------------------------------------------------------------------


def input_hash(argv: list, args) -> str:
    """sha256 over the semantic arguments and the input file contents."""
    skip = {"--json", "--timings", "--long"}
    parts = []
    it = iter(argv)
    for a in it:
        if a in skip:
            continue
        if a == "--timeout":
            next(it, None)
            continue
        if a.startswith("--timeout="):
            continue
        parts.append(a)
    h = hashlib.sha256(json.dumps(parts).encode())
    path = getattr(args, "input", None)
    if path and args.command != "example":
        try:
            with open(path, "rb") as fh:
                h.update(fh.read())
        except OSError:
            pass
    return h.hexdigest()


def render_json(report: CheckReport, command: str, ihash: str, elapsed_ms: float | None) -> str:
    doc = {
        "command": command,
        "input_hash": ihash,
        "engine_version": __version__,
        "check": report.check,
        "verdict": report.verdict,
        "witnesses": report.witnesses,
        "caveats": sorted(set(report.caveats)),
        "timings_ms": None if elapsed_ms is None else round(elapsed_ms, 3),
    }
    return json.dumps(_jsonable(doc), sort_keys=True, indent=2, ensure_ascii=False)


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (bool, int, float, str)) or x is None:
        return x
    return str(x)


def render_text(report: CheckReport) -> str:
    lines = []
    if report.check == "derlog":
        w = report.witnesses[0]
        lines += w["fields"]
        lines.append(f"{w['count']} generators ({w['minimal_count']} minimal)")
        return "\n".join(lines)
    if report.check == "fitting":
        for w in report.witnesses:
            lines.append(f"I_{w['k']} = (" + ", ".join(w["ideal"]) + ")")
        return "\n".join(lines)
    lines.append(f"{report.check}: {report.verdict}")
    for w in report.witnesses:
        lines.append("  " + _short(w))
    for c in report.caveats:
        lines.append(f"  caveat: {c}")
    return "\n".join(lines)


def _short(w: dict) -> str:
    items = []
    for k, v in w.items():
        if k == "kind":
            continue
        if isinstance(v, list) and len(v) > 6:
            v = f"[{len(v)} items]"
        items.append(f"{k}={v}")
    return f"{w['kind']}: " + ", ".join(items)


def _on_alarm(signum, frame):
    raise Timeout()


def main(argv: list | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_PASS

    if args.command == "list-examples":
        rows = list_examples()
        if args.json:
            print(json.dumps([{"name": n, "summary": s, "long": lg} for n, s, lg in rows],
                             sort_keys=True, indent=2))
        else:
            for n, s, lg in rows:
                print(f"{n:24s} {'(long) ' if lg else ''}{s}")
        return EXIT_PASS

    if args.timeout:
        signal.signal(signal.SIGALRM, _on_alarm)
        signal.setitimer(signal.ITIMER_REAL, args.timeout)
    t0 = time.perf_counter()
    try:
        doc = _load(args)
        report = COMMANDS[args.command](doc, args)
    except Timeout:
        print(f"error: timed out after {args.timeout} s", file=sys.stderr)
        return EXIT_TIMEOUT
    except (UsageError, ParseError, ValueError, KeyError, IndexError) as e:
        msg = e.args[0] if isinstance(e, KeyError) and e.args else e
        print(f"error: {msg}", file=sys.stderr)
        return EXIT_USAGE
    finally:
        if args.timeout:
            signal.setitimer(signal.ITIMER_REAL, 0)
    elapsed = (time.perf_counter() - t0) * 1000

    if args.json:
        print(render_json(report, args.command, input_hash(argv, args),
                          elapsed if args.timings else None))
    else:
        print(render_text(report))
    return EXIT_PASS if report.passed else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
