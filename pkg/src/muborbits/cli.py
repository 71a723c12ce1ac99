"""Command-line front end.

Every command prints one JSON document on stdout. Boolean verdicts use exit
codes 0 (true) and 1 (false); parse and validation errors exit with 2 and a
one-line message on stderr.
"""

from __future__ import annotations

import argparse
import json
import math
import re
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .basis import BasisPoint, is_hadamard_matrix, is_unbiased, mubness, overlaps
from .dim4 import TripleParams, f4, h4, orbit_map, verify_dim4
from .equivalence import MubList, dephase, hadamard_equivalent, lists_equivalent, sets_equivalent
from .errors import MubError
from .linalg import DEFAULT_TOL, as_matrix, check_tol, is_unitary
from .monomial import MonomialElement
from .stabilizer import list_stabilizer, orbit

_BUILTIN = re.compile(r"^(identity|fourier|f4|h4):")
_PI_LITERAL = re.compile(r"^([+-]?)(\d+(?:\.\d*)?|\.\d+)?\*?pi(?:/(\d+(?:\.\d*)?))?$")


class UsageError(Exception):
    pass


# ---------------------------------------------------------------- parsing

def parse_angle(text: str) -> float:
    """Radians; accepts plain numbers and pi literals such as ``pi/2`` or ``-3pi/4``."""
    s = text.strip().replace(" ", "").lower()
    m = _PI_LITERAL.match(s)
    if m:
        sign, coef, den = m.groups()
        val = (float(coef) if coef else 1.0) * math.pi / (float(den) if den else 1.0)
        return -val if sign == "-" else val
    try:
        val = float(s)
    except ValueError:
        raise UsageError(f"cannot parse angle {text!r}") from None
    if not math.isfinite(val):
        raise UsageError(f"angle must be finite, got {text!r}")
    return val


def fourier(n: int) -> np.ndarray:
    jk = np.outer(np.arange(n), np.arange(n))
    return np.exp(2j * np.pi * jk / n) / np.sqrt(n)


def builtin_matrix(source: str) -> np.ndarray:
    name, *args = source.split(":")
    try:
        if name in ("identity", "fourier"):
            if len(args) != 1:
                raise UsageError(f"{name} takes one argument: {source!r}")
            n = int(args[0])
            if n < 1:
                raise UsageError(f"dimension must be positive in {source!r}")
            return np.eye(n, dtype=np.complex128) if name == "identity" else fourier(n)
        if name == "f4":
            if len(args) != 1:
                raise UsageError(f"f4 takes one angle: {source!r}")
            return f4(parse_angle(args[0]))
        if name == "h4":
            if len(args) != 2:
                raise UsageError(f"h4 takes two angles: {source!r}")
            return h4(TripleParams(parse_angle(args[0]), parse_angle(args[1])))
    except ValueError:
        raise UsageError(f"bad builtin {source!r}") from None
    raise UsageError(f"unknown builtin {source!r}")


def matrix_from_document(doc) -> np.ndarray:
    if not isinstance(doc, dict) or "matrix" not in doc:
        raise UsageError("matrix document needs a 'matrix' field")
    try:
        arr = np.array(doc["matrix"], dtype=float)
    except (TypeError, ValueError):
        raise UsageError("matrix entries must be [re, im] number pairs") from None
    if arr.ndim != 3 or arr.shape[2] != 2 or arr.shape[0] != arr.shape[1]:
        raise UsageError(f"matrix must be n x n of [re, im] pairs, got shape {arr.shape}")
    if "n" in doc and doc["n"] != arr.shape[0]:
        raise UsageError(f"declared n={doc['n']} does not match matrix size {arr.shape[0]}")
    try:
        return as_matrix(arr[..., 0] + 1j * arr[..., 1])
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _read_json(path: str):
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise UsageError(f"no such file or builtin: {path!r}") from None
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path!r}: {exc}") from None


def load_matrix(src) -> np.ndarray:
    """A builtin name, a path to a matrix document, or an inline document."""
    if isinstance(src, dict):
        return matrix_from_document(src)
    if not isinstance(src, str):
        raise UsageError(f"bad matrix source {src!r}")
    if _BUILTIN.match(src):
        return builtin_matrix(src)
    return matrix_from_document(_read_json(src))


def load_basis(src) -> BasisPoint:
    M = load_matrix(src)
    if not is_unitary(M, 1e-9):
        raise UsageError(f"matrix from {src if isinstance(src, str) else 'document'} is not unitary")
    return BasisPoint(M)


def load_list_sources(src: str) -> list:
    """Ordered matrix sources from a list document or an inline ``[a, b, ...]``."""
    s = src.strip()
    if Path(s).is_file():
        doc = _read_json(s)
        if not isinstance(doc, dict) or not isinstance(doc.get("bases"), list):
            raise UsageError("list document needs a 'bases' array")
        return doc["bases"]
    if s.startswith("[") and s.endswith("]"):
        s = s[1:-1]
    items = [t.strip() for t in s.split(",") if t.strip()]
    if not items:
        raise UsageError(f"empty basis list {src!r}")
    return items


def load_list(src: str, tol: float) -> MubList:
    try:
        return MubList([load_basis(item) for item in load_list_sources(src)], tol)
    except MubError as exc:
        raise UsageError(str(exc)) from None


# ---------------------------------------------------------------- output

def _num(x: float) -> float:
    return float(f"{float(x):.12g}") + 0.0


def matrix_document(M, label: str | None = None) -> dict:
    M = np.asarray(M, dtype=np.complex128)
    doc = {
        "n": int(M.shape[0]),
        "matrix": [[[_num(z.real), _num(z.imag)] for z in row] for row in M],
    }
    if label is not None:
        doc["label"] = label
    return doc


def monomial_document(m: MonomialElement, label: str | None = None) -> dict:
    doc = matrix_document(m.to_matrix(), label)
    doc["perm"] = list(m.perm)
    doc["phases"] = [[_num(z.real), _num(z.imag)] for z in m.phases]
    return doc


def _dumps(doc) -> str:
    return json.dumps(doc, indent=2)


def _emit(doc):
    print(_dumps(doc))


def _write(path: str, doc):
    try:
        Path(path).write_text(_dumps(doc) + "\n", encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot write {path!r}: {exc}") from None


# ---------------------------------------------------------------- commands

def cmd_metric(args) -> int:
    p, q = load_basis(args.a), load_basis(args.b)
    d = mubness(p, q)
    _emit({"command": "metric", "n": p.n, "D": _num(d), "D2": _num(d * d),
           "max_D": _num(math.sqrt(p.n - 1))})
    return 0


def cmd_unbiased(args) -> int:
    p, q = load_basis(args.a), load_basis(args.b)
    ok = is_unbiased(p, q, args.tol)
    dev = float(np.max(np.abs(overlaps(p, q) - 1.0 / p.n)))
    _emit({"command": "unbiased", "unbiased": ok, "max_deviation": _num(dev)})
    return 0 if ok else 1


def cmd_hadamard_check(args) -> int:
    H = load_matrix(args.input)
    ok = is_hadamard_matrix(H, args.tol)
    _emit({"command": "hadamard-check", "n": int(H.shape[0]), "hadamard": ok})
    return 0 if ok else 1


def cmd_dephase(args) -> int:
    H = load_matrix(args.input)
    Hd, L, R = dephase(H, args.tol)
    doc = matrix_document(Hd, "dephased")
    doc["left"] = monomial_document(L, "L")
    doc["right"] = monomial_document(R, "R")
    doc["relation"] = "dephased = L @ input @ R"
    _write(args.out, doc)
    _emit({"command": "dephase", "out": args.out, "dephased": matrix_document(Hd)})
    return 0


def cmd_hadamard_equiv(args) -> int:
    A, B = load_matrix(args.a), load_matrix(args.b)
    found = hadamard_equivalent(A, B, args.tol)
    doc = {"command": "hadamard-equiv", "equivalent": found is not None}
    if found is not None:
        doc["witness"] = {"relation": "a = M1 @ b @ M2",
                          "M1": monomial_document(found[0], "M1"),
                          "M2": monomial_document(found[1], "M2")}
        if args.witness:
            _write(args.witness, doc["witness"])
    _emit(doc)
    return 0 if found is not None else 1


def _stabilizer_elements(G) -> list[dict]:
    return [matrix_document(g.matrix) for g in G.elements]


def cmd_stabilizer(args) -> int:
    mubs = load_list(args.list, args.tol)
    G = list_stabilizer(mubs, args.tol)
    doc = {"command": "stabilizer", "n": mubs.n, "list_length": len(mubs),
           "count": len(G), "elements": _stabilizer_elements(G)}
    if args.out:
        _write(args.out, doc)
    _emit(doc)
    return 0


def cmd_orbit(args) -> int:
    mubs = load_list(args.list, args.tol)
    p = load_basis(args.point)
    G = list_stabilizer(mubs, args.tol)
    orb = orbit(G, p, args.tol)
    reps = sorted((pt.canonical for pt in orb.points),
                  key=lambda M: tuple(np.round(np.concatenate([M.real.ravel(), M.imag.ravel()]), 9)))
    _emit({"command": "orbit", "n": p.n, "group_order": len(G), "size": len(orb),
           "points": [matrix_document(M) for M in reps]})
    return 0


def cmd_equiv_lists(args) -> int:
    a, b = load_list(args.a, args.tol), load_list(args.b, args.tol)
    order = None
    if args.unordered:
        res = sets_equivalent(a, b, args.tol)
        w = None if res is None else res[0]
        order = None if res is None else list(res[1])
    else:
        w = lists_equivalent(a, b, args.tol)
    doc = {"command": "equiv-lists", "equivalent": w is not None}
    if w is not None:
        doc["witness"] = matrix_document(w.U, "U")
        doc["witness"]["relation"] = w.maps
        if order is not None:
            doc["witness"]["order"] = order
        if args.witness:
            _write(args.witness, doc["witness"])
    _emit(doc)
    return 0 if w is not None else 1


def _params_pair(p: TripleParams) -> list[float]:
    return [round(p.y, 6) + 0.0, round(p.z, 6) + 0.0]


def cmd_dim4_orbit(args) -> int:
    p = TripleParams(parse_angle(args.y), parse_angle(args.z))
    images = orbit_map(p, args.tol)
    _emit({"command": "dim4 orbit", "y": _params_pair(p)[0], "z": _params_pair(p)[1],
           "size": len(images), "orbit": [_params_pair(q) for q in images]})
    return 0


def cmd_dim4_verify(args) -> int:
    if (args.y is None) != (args.z is None):
        raise UsageError("--y and --z must be given together")
    if args.y is not None:
        points = [TripleParams(parse_angle(args.y), parse_angle(args.z))]
    else:
        rng = np.random.default_rng(args.seed)
        points = [TripleParams(*(rng.random(2) * math.pi)) for _ in range(args.samples)]
    reports = [verify_dim4(p) for p in points]
    _emit({
        "command": "dim4 verify",
        "passed": all(r.passed for r in reports),
        "reports": [{
            "y": _num(r.params.y), "z": _num(r.params.z), "passed": r.passed,
            "degenerate": r.degenerate,
            "checks": [{"name": c.name, "passed": c.passed, "degenerate": c.degenerate,
                        "detail": c.detail} for c in r.checks],
        } for r in reports],
    })
    return 0 if all(r.passed for r in reports) else 1


# ---------------------------------------------------------------- parser

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _tol(text: str) -> float:
    try:
        return check_tol(float(text))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--tol", type=_tol, default=DEFAULT_TOL,
                        help="absolute comparison tolerance (default 1e-9)")

    parser = _Parser(prog="muborbits", description="Equivalence of mutually unbiased bases.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("metric", parents=[common], help="MUBness distance of two bases")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.set_defaults(func=cmd_metric)

    p = sub.add_parser("unbiased", parents=[common], help="exit 0 iff the bases are unbiased")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.set_defaults(func=cmd_unbiased)

    p = sub.add_parser("hadamard-check", parents=[common], help="exit 0 iff complex Hadamard")
    p.add_argument("--in", dest="input", required=True)
    p.set_defaults(func=cmd_hadamard_check)

    p = sub.add_parser("dephase", parents=[common], help="dephase a Hadamard matrix")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_dephase)

    p = sub.add_parser("hadamard-equiv", parents=[common], help="Hadamard equivalence with witness")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--witness")
    p.set_defaults(func=cmd_hadamard_equiv)

    p = sub.add_parser("stabilizer", parents=[common], help="simultaneous stabilizer of a MUB list")
    p.add_argument("--list", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_stabilizer)

    p = sub.add_parser("orbit", parents=[common], help="stabilizer orbit of a candidate basis")
    p.add_argument("--list", required=True)
    p.add_argument("--point", required=True)
    p.set_defaults(func=cmd_orbit)

    p = sub.add_parser("equiv-lists", parents=[common], help="equivalence of two MUB lists")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--witness")
    p.add_argument("--unordered", action="store_true",
                   help="also try every reordering of --b (set equivalence)")
    p.set_defaults(func=cmd_equiv_lists)

    d4 = sub.add_parser("dim4", help="dimension-4 triple catalog")
    d4sub = d4.add_subparsers(dest="dim4_command", required=True, parser_class=_Parser)
    p = d4sub.add_parser("orbit", parents=[common], help="closed-form orbit of h4(y, z)")
    p.add_argument("--y", required=True)
    p.add_argument("--z", required=True)
    p.set_defaults(func=cmd_dim4_orbit)
    p = d4sub.add_parser("verify", parents=[common], help="cross-check closed forms numerically")
    p.add_argument("--y")
    p.add_argument("--z")
    p.add_argument("--samples", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_dim4_verify)
    return parser


def run(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"muborbits: error: {exc}", file=sys.stderr)
        return 2
    except (MubError, ValueError) as exc:
        print(f"muborbits: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
