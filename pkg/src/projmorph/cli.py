"""Command-line interface: read an algebra, run a computation, print text, DOT or JSON.

Exit status is 0 on success, 1 for user errors (bad input, unmet preconditions)
and 2 when an internal certificate or invariant fails.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .algebra import AlgebraError, BoundQuiverAlgebra, DuplicateName, build_algebra
from .arquiver import dump_json, export_dot, extend_to_P_quiver, knit_module_quiver
from .ars import ass_P_ending_at, ass_P_ending_at_P_to_zero, ass_P_starting_at_zero_P
from .battery import run_battery
from .fixtures import FIXTURES
from .gvec import g_additivity_check, gvector_table, injective_generation_check, CyclicQuiver, NotRepFinite
from .modcat import (almost_split_sequence_ending_at, decompose, is_projective,
                     knit_indecomposables, set_seed, tau, transpose, verify_almost_split)
from .linalg import DimensionMismatch
from .modules import Module, PreconditionFailed, RelationViolation, hom_basis, identity, make_module, zero_map, zero_module
from .morphcat import (MorphObject, MorphSES, decompose_H_classes, generating_family, is_left_approximation,
                       is_right_approximation, left_P_approx, left_P_approx_special, p_indecomposables,
                       presentation_object, right_P_approx, right_P_approx_special, right_minimal_version)
from .naming import dims_str, module_name, object_name, resolve_shorthand


class ParseError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"line {line}, column {col}: {message}")
        self.line, self.col = line, col


class UserError(ValueError):
    pass


# -- algebra spec files -------------------------------------------------------------

@dataclass
class AlgebraSpecFile:
    vertices: list = field(default_factory=list)
    arrows: list = field(default_factory=list)       # (name, source, target)
    relations: list = field(default_factory=list)    # [(Fraction, [arrow names])]

    def to_algebra(self, name: str = "") -> BoundQuiverAlgebra:
        return build_algebra(self.vertices, self.arrows, self.relations, name)


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z0-9_']*)|(?P<op>[*+-]))")
_ARROW = re.compile(r"\s*(?P<name>\S+)\s+(?P<src>\S+)\s*->\s*(?P<tgt>\S+)\s*$")


def _parse_relation(body: str, line: int, offset: int, arrows: set) -> list:
    pos, tokens = 0, []
    while pos < len(body):
        if not body[pos:].strip():
            break
        m = _TOKEN.match(body, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {body[pos:].strip()[0]!r}", line,
                             offset + len(body) - len(body[pos:].lstrip()) + 1)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), offset + m.start(kind) + 1))
        pos = m.end()
    if not tokens:
        raise ParseError("empty relation", line, offset + 1)
    terms, k = [], 0
    while k < len(tokens):
        sign = Fraction(1)
        if terms:
            if tokens[k][0] != "op" or tokens[k][1] not in "+-":
                raise ParseError(f"expected '+' or '-' before {tokens[k][1]!r}", line, tokens[k][2])
            sign = Fraction(-1 if tokens[k][1] == "-" else 1)
            k += 1
        elif tokens[k][0] == "op" and tokens[k][1] == "-":
            sign, k = Fraction(-1), k + 1
        coeff = Fraction(1)
        if k < len(tokens) and tokens[k][0] == "num":
            coeff = Fraction(tokens[k][1])
            k += 1
            if k >= len(tokens) or tokens[k][1] != "*":
                raise ParseError("expected '*' after coefficient", line, tokens[k - 1][2])
            k += 1
        word = []
        while True:
            if k >= len(tokens) or tokens[k][0] != "name":
                col = tokens[k][2] if k < len(tokens) else offset + len(body) + 1
                raise ParseError("expected an arrow name", line, col)
            if tokens[k][1] not in arrows:
                raise ParseError(f"unknown arrow {tokens[k][1]!r}", line, tokens[k][2])
            word.append(tokens[k][1])
            k += 1
            if k < len(tokens) and tokens[k][1] == "*":
                k += 1
                continue
            break
        terms.append((sign * coeff, word))
    return terms


def parse_spec(text: str) -> AlgebraSpecFile:
    """Parse the line-oriented algebra format:

        vertices: 1 2 3
        arrow: alpha 3 -> 2
        relation: alpha*beta - 2*gamma*delta
    """
    spec = AlgebraSpecFile()
    pending = []
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        key, sep, body = line.partition(":")
        if not sep:
            raise ParseError("expected 'key: value'", ln, len(line) - len(line.lstrip()) + 1)
        key = key.strip()
        offset = len(key) + len(line) - len(line.lstrip()) + 1
        if key == "vertices":
            for m in re.finditer(r"\S+", body):
                if m.group() in spec.vertices:
                    raise DuplicateName(f"line {ln}: duplicate vertex {m.group()!r}")
                spec.vertices.append(m.group())
        elif key == "arrow":
            m = _ARROW.match(body)
            if not m:
                raise ParseError("expected 'arrow: name source -> target'", ln, offset + 1)
            name, src, tgt = m.group("name"), m.group("src"), m.group("tgt")
            if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_']*", name):
                raise ParseError(f"invalid arrow name {name!r}", ln, offset + m.start("name") + 1)
            if any(a[0] == name for a in spec.arrows):
                raise DuplicateName(f"line {ln}: duplicate arrow {name!r}")
            for g in ("src", "tgt"):
                if m.group(g) not in spec.vertices:
                    raise ParseError(f"unknown vertex {m.group(g)!r}", ln, offset + m.start(g) + 1)
            spec.arrows.append((name, src, tgt))
        elif key == "relation":
            pending.append((ln, offset, body))
        else:
            raise ParseError(f"unknown key {key!r}", ln, len(line) - len(line.lstrip()) + 1)
    if not spec.vertices:
        raise ParseError("no vertices", 1, 1)
    names = {a[0] for a in spec.arrows}
    for ln, offset, body in pending:
        spec.relations.append(_parse_relation(body, ln, offset, names))
    return spec


# -- resolving module and object arguments -------------------------------------------

def _indecomposables(A):
    return knit_indecomposables(A).modules


def resolve_module(A: BoundQuiverAlgebra, token: str) -> Module:
    """A module from 0, S<v>/P<v>/I<v>, a Loewy name like [3;2], a dim vector, or a JSON file."""
    token = token.strip()
    if token == "0":
        return zero_module(A)
    M = resolve_shorthand(A, token)
    if M is not None:
        return M
    if token.endswith(".json"):
        data = json.loads(Path(token).read_text())
        maps = {a: [[Fraction(x) for x in row] for row in rows] for a, rows in data["maps"].items()}
        return make_module(A, data["dims"], maps)
    if re.fullmatch(r"\(?\s*\d+(\s*,\s*\d+)*\s*\)?", token):
        dims = tuple(int(x) for x in re.findall(r"\d+", token))
        if len(dims) != A.n:
            raise UserError(f"dimension vector {token} has {len(dims)} entries, expected {A.n}")
        hits = [M for M in _indecomposables(A) if M.dims == dims]
    else:
        hits = [M for M in _indecomposables(A) if module_name(M) == token]
    if not hits:
        raise UserError(f"no indecomposable module matches {token!r}")
    if len(hits) > 1:
        raise UserError(f"{token!r} is ambiguous; pass the module as a JSON file")
    return hits[0]


def resolve_object(A: BoundQuiverAlgebra, token: str) -> MorphObject:
    """X->Y with module tokens on both sides, or a module name for its minimal presentation."""
    if "->" not in token:
        return presentation_object(resolve_module(A, token))[0]
    left, right = token.split("->", 1)
    X, Y = resolve_module(A, left), resolve_module(A, right)
    if X.dim == 0 or Y.dim == 0:
        return MorphObject(zero_map(X, Y))
    if left.strip() == right.strip():
        return MorphObject(identity(X))
    H = hom_basis(X, Y)
    if len(H) != 1:
        raise UserError(f"Hom({left.strip()}, {right.strip()}) has dimension {len(H)}; the map is not determined")
    return MorphObject(H[0])


# -- output helpers ------------------------------------------------------------------

def _sum_name(M: Module) -> str:
    parts = []
    for X, k in decompose(M):
        parts += [module_name(X)] * k
    return " + ".join(parts) if parts else "0"


def _obj_sum_name(X: MorphObject) -> str:
    parts = []
    for Y, k in decompose_H_classes(X):
        parts += [object_name(Y)] * k
    return " + ".join(parts) if parts else "(0->0)"


def describe_seq(s) -> str:
    if isinstance(s, MorphSES):
        return f"0 -> {_obj_sum_name(s.left)} -> {_obj_sum_name(s.middle)} -> {_obj_sum_name(s.right)} -> 0"
    return f"0 -> {_sum_name(s.left)} -> {_sum_name(s.middle)} -> {_sum_name(s.right)} -> 0"


def _canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False, default=str)


class Output:
    def __init__(self, as_json: bool):
        self.as_json = as_json
        self.data: dict = {}
        self.lines: list[str] = []

    def add(self, key: str, value, text: str | None = None) -> None:
        self.data[key] = value
        if text is not None:
            self.lines.append(text)

    def emit(self, stream) -> None:
        if self.as_json:
            stream.write(_canonical(self.data) + "\n")
        else:
            stream.write("".join(line + "\n" for line in self.lines))


# -- subcommands ----------------------------------------------------------------------

def cmd_indec(A, args, out: Output) -> int:
    K = knit_indecomposables(A)
    rows = [{"name": module_name(M), "dims": list(M.dims), "projective": p, "injective": i}
            for M, p, i in zip(K.modules, K.projective, K.injective)]
    out.add("indecomposables", rows)
    for r in rows:
        flags = ("P" if r["projective"] else "-") + ("I" if r["injective"] else "-")
        out.lines.append(f"{r['name']:<12} {dims_str(r['dims']):<14} {flags}")
    return 0


def cmd_tau(A, args, out: Output) -> int:
    M = resolve_module(A, args.module)
    T = tau(M)
    out.add("tau", {"module": module_name(M), "result": _sum_name(T), "dims": list(T.dims)},
            f"tau {module_name(M)} = {_sum_name(T)} {dims_str(T.dims)}")
    return 0


def cmd_tr(A, args, out: Output) -> int:
    M = resolve_module(A, args.module)
    T = transpose(M)
    out.add("tr", {"module": module_name(M), "result": _sum_name(T), "dims": list(T.dims)},
            f"Tr {module_name(M)} = {_sum_name(T)} {dims_str(T.dims)} over the opposite algebra")
    return 0


def _report_seq(out: Output, s, certified: bool, witness: str) -> int:
    out.add("sequence", {"text": describe_seq(s), "certified": certified, "witness": witness},
            describe_seq(s))
    out.lines.append(f"certified: {'yes' if certified else 'no'} ({witness})")
    return 0 if certified else 2


def cmd_ass(A, args, out: Output) -> int:
    if args.ending is not None:
        M = resolve_module(A, args.ending)
        if is_projective(M):
            raise UserError("no almost split sequence ends at a projective module")
        s = almost_split_sequence_ending_at(M)
        v = verify_almost_split(s, _indecomposables(A))
        return _report_seq(out, s, v.ok, v.witness)
    if args.ending_P is not None:
        X = resolve_object(A, args.ending_P)
        if X.cod.dim == 0 and X.dom.proj_labels is not None and len(X.dom.proj_labels) == 1:
            s = ass_P_ending_at_P_to_zero(X.dom)
        else:
            if not (is_projective(X.dom) and is_projective(X.cod)):
                raise UserError("the object does not lie in P(A)")
            s = ass_P_ending_at(X)
        return _report_seq(out, s, bool(s.certified), s.witness)
    P = resolve_module(A, args.starting_0P)
    if P.proj_labels is None or len(P.proj_labels) != 1:
        raise UserError("--starting-0P expects an indecomposable projective such as P1")
    s = ass_P_starting_at_zero_P(P)
    return _report_seq(out, s, bool(s.certified), s.witness)


def cmd_approx(A, args, out: Output) -> int:
    token = args.right if args.right is not None else args.left
    side = "right" if args.right is not None else "left"
    m = re.fullmatch(r"\s*(0|[^-]+?)\s*->\s*(0|[^-]+?)\s*", token)
    special = None
    if m:
        a, b = m.group(1), m.group(2)
        if a == "0" and b != "0":
            special, name = "0->M", b
        elif b == "0" and a != "0":
            special, name = "M->0", a
        elif a == b:
            special, name = "M->M", a
    if special:
        M = resolve_module(A, name)
        phi = (right_P_approx_special if side == "right" else left_P_approx_special)(M, special)
    else:
        X = resolve_object(A, token)
        phi = right_minimal_version(right_P_approx(X)) if side == "right" else left_P_approx(X)
    probes = p_indecomposables(A) + generating_family(A)
    v = (is_right_approximation if side == "right" else is_left_approximation)(phi, probes)
    src, tgt = _obj_sum_name(phi.source), _obj_sum_name(phi.target)
    out.add("approximation", {"side": side, "source": src, "target": tgt, "verified": v.ok,
                              "witness": v.witness},
            f"{side} P-approximation: {src} => {tgt}")
    out.lines.append(f"verified: {'yes' if v.ok else 'no'} ({v.witness})")
    return 0 if v.ok else 2


def cmd_arquiver(A, args, out: Output) -> int:
    G = knit_module_quiver(A)
    if args.extend_P:
        G = extend_to_P_quiver(G)
    if args.dot:
        text = export_dot(G)
        if args.dot == "-":
            out.lines.append(text.rstrip("\n"))
        else:
            Path(args.dot).write_text(text)
    data = json.loads(dump_json(G))
    out.add("quiver", data)
    names = G.names()
    out.lines.append(f"{len(G)} vertices")
    for k, X in enumerate(G.vertices):
        out.lines.append(f"  {k}: {names[k]} {dims_str(X.dims)}")
    for (i, j), m in sorted(G.arrows.items()):
        out.lines.append(f"  {names[i]} -> {names[j]}" + (f" x{m}" if m > 1 else ""))
    for z, t in sorted(G.tau.items()):
        out.lines.append(f"  tau {names[z]} = {names[t]}")
    return 0


def cmd_gvectors(A, args, out: Output) -> int:
    table = gvector_table(A)
    out.add("gvectors", table)
    for r in table:
        out.lines.append(f"g({r['name']}) = ({','.join(str(x) for x in r['g'])})")
    status = 0
    if args.check_additivity:
        rows = []
        for seq in knit_indecomposables(A).ending.values():
            r = g_additivity_check(seq)
            rows.append({"ending": module_name(seq.right), "gL": list(r.gL.coords), "gN": list(r.gN.coords),
                         "gM": list(r.gM.coords), "excluded": r.excluded, "additive": r.holds})
            out.lines.append(f"ending at {module_name(seq.right)}: g(L)={r.gL} g(N)={r.gN} g(M)={r.gM} "
                             f"excluded={r.excluded} additive={r.holds}")
            if not r.consistent:
                status = 2
        out.add("additivity", rows)
    if args.check_injective_generation:
        r = injective_generation_check(A)
        out.add("injective_generation", {"vectors": [list(g.coords) for g in r.vectors],
                                         "invariant_factors": r.invariant_factors, "rank": r.rank,
                                         "determinant": r.determinant, "generates": r.generates})
        out.lines.append(f"injective g-vectors: {', '.join(str(g) for g in r.vectors)}")
        out.lines.append(f"Smith normal form diagonal {r.invariant_factors}: "
                         f"{'generates' if r.generates else 'does not generate'} K0")
    return status


def cmd_check(A, args, out: Output) -> int:
    results = run_battery(A)
    out.add("checks", [{"name": r.name, "ok": r.ok, "finding": r.finding, "detail": r.detail,
                        "lines": r.lines} for r in results])
    for r in results:
        tag = "PASS" if r.ok else "FAIL"
        out.lines.append(f"[{tag}] {r.name}: {r.detail}" + ("  (finding)" if r.finding else ""))
        out.lines += [f"    {line}" for line in r.lines]
    return 0 if all(r.ok for r in results) else 2


# -- entry point -------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_mutually_exclusive_group()
    src.add_argument("--spec", help="algebra spec file")
    src.add_argument("--fixture", choices=sorted(FIXTURES), help="built-in algebra")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized searches")
    common.add_argument("--json", action="store_true", help="machine-readable output")

    p = argparse.ArgumentParser(prog="projmorph", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("indec", parents=[common], help="list indecomposable modules")
    for name in ("tau", "tr"):
        sp = sub.add_parser(name, parents=[common], help=f"{name} of a module")
        sp.add_argument("module")
    sp = sub.add_parser("ass", parents=[common], help="almost split sequences")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--ending", metavar="M")
    g.add_argument("--ending-P", dest="ending_P", metavar="OBJ")
    g.add_argument("--starting-0P", dest="starting_0P", metavar="P")
    sp = sub.add_parser("approx", parents=[common], help="P-approximations")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--right", metavar="OBJ")
    g.add_argument("--left", metavar="OBJ")
    sp = sub.add_parser("arquiver", parents=[common], help="Auslander-Reiten quiver")
    sp.add_argument("--extend-P", dest="extend_P", action="store_true")
    sp.add_argument("--dot", metavar="PATH", help="write DOT output ('-' for standard output)")
    sp = sub.add_parser("gvectors", parents=[common], help="g-vectors")
    sp.add_argument("--check-additivity", action="store_true")
    sp.add_argument("--check-injective-generation", action="store_true")
    sp = sub.add_parser("check", parents=[common], help="run the property battery")
    sp.add_argument("--paper", action="store_true", help="run every check (default)")
    return p


COMMANDS = {"indec": cmd_indec, "tau": cmd_tau, "tr": cmd_tr, "ass": cmd_ass, "approx": cmd_approx,
            "arquiver": cmd_arquiver, "gvectors": cmd_gvectors, "check": cmd_check}


def load_algebra(args) -> BoundQuiverAlgebra:
    if args.fixture:
        return FIXTURES[args.fixture]()
    if not args.spec:
        raise UserError("pass --spec PATH or --fixture NAME")
    text = Path(args.spec).read_text(encoding="utf-8")
    return parse_spec(text).to_algebra(Path(args.spec).stem)


def run(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 1
    set_seed(args.seed)
    out = Output(args.json)
    try:
        A = load_algebra(args)
        status = COMMANDS[args.command](A, args, out)
    except (ParseError, DuplicateName, AlgebraError, PreconditionFailed, UserError, OSError,
            CyclicQuiver, NotRepFinite, KeyError, json.JSONDecodeError, DimensionMismatch,
            RelationViolation) as e:
        stderr.write(f"error: {e}\n")
        return 1
    except Exception as e:
        stderr.write(f"internal error: {type(e).__name__}: {e}\n")
        return 2
    out.emit(stdout)
    return status


def main() -> None:
    sys.exit(run())
