"""``quadmod run <file>``: execute a session of ring/module/map definitions and
computations, printing a deterministic line-oriented report.

Statements, one per line (``#`` starts a comment)::

    seed 7
    ring R = Zmod 4                      # Z | Zmod n | monogenic [c0,..] | product A B
    module M over R gens 2 rels [[(2),(0)],[(1),(3)]]
    map f over R arity 1 1 = [1/2*x^2 - 1/2*x]   # variables x1..xm (x when m = 1)
    presentation P over S vars X=(0,1) rels [X^2 - 2]
    compute p2 M                         # p2 sym2 lambda2 gamma2 k kprime tor, or i2 <ring>
    verify gmsequ M
    analyze f
    decompose f r=(2) bound=3
    factor f
    print report
"""
from __future__ import annotations

import argparse
import random
import re
import sys
from dataclasses import dataclass, field
from typing import Callable

from . import modules as mod
from .functors import QuadraticStructure
from .i2 import i2_ideal
from .modules import FPModule, ModuleError
from .poly import parse_int_poly
from .quadmaps import (PolyMap, QuadMapError, cross_effect, decompose_lin_hom, factor_through_p2,
                       factorization_check, is_quadratic, parse_polymap)
from .ring import FiniteZAlgebra, RingError, RingPresentation, make_ring
from .verify import SEQUENCES, SequenceReport, verify_presred, verify_relrho, verify_uqd


class SessionError(Exception):
    """A parse or semantic error, located by line and column."""

    def __init__(self, line: int, column: int, message: str):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line, self.column, self.message = line, column, message


@dataclass
class Report:
    lines: list[str] = field(default_factory=list)
    failed: int = 0
    checks: int = 0

    def emit(self, line: str) -> None:
        self.lines.append(line)

    def sequence(self, rep: SequenceReport, target: str, verbose: bool) -> None:
        self.lines.extend(rep.lines(target, verbose))
        self.checks += len(rep.checks)
        self.failed += len(rep.failures())

    def check(self, name: str, position: str, ok: bool, detail: str = "") -> None:
        self.checks += 1
        self.failed += 0 if ok else 1
        line = f"CHECK {name}@{position} {'PASS' if ok else 'FAIL'}"
        self.lines.append(line + (f" {detail}" if detail and not ok else ""))

    @property
    def text(self) -> str:
        return "".join(line + "\n" for line in self.lines)


COMPUTE = ("p2", "sym2", "lambda2", "gamma2", "k", "kprime", "i2", "tor")
EXTRA_VERIFY = ("presred", "relrho", "uqd")
VERIFY_TOKENS = tuple(SEQUENCES) + EXTRA_VERIFY
STATEMENTS = ("seed", "ring", "module", "map", "presentation", "compute", "verify", "analyze",
              "decompose", "factor", "print")


# -- literal parsing ---------------------------------------------------------------------------------


def _split_top(text: str) -> list[str]:
    """Split on commas that are not nested in brackets or parentheses."""
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch in "[(":
            depth += 1
        elif ch in "])":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur).strip())
            cur = []
        else:
            cur.append(ch)
    if "".join(cur).strip():
        parts.append("".join(cur).strip())
    return parts


def _unbracket(text: str, open_: str = "[", close: str = "]") -> str:
    text = text.strip()
    if not (text.startswith(open_) and text.endswith(close)):
        raise ValueError(f"expected {open_}...{close}, got {text!r}")
    return text[1:-1]


def parse_element(text: str, R: FiniteZAlgebra) -> list[int]:
    """``(a,b,..)`` over the Z-basis, or a plain integer meaning that multiple of 1."""
    text = text.strip()
    if text.startswith("("):
        coords = [int(p) for p in _split_top(_unbracket(text, "(", ")"))]
        if len(coords) != R.rank:
            raise ValueError(f"element {text} needs {R.rank} coordinates over {R.name}")
        return R.reduce(coords)
    return R.from_int(int(text))


def _element(c) -> str:
    return str(c[0]) if len(c) == 1 else "(" + ",".join(str(x) for x in c) + ")"


# -- the session -----------------------------------------------------------------------------------------


class Session:
    def __init__(self, seed: int = 0, verbose: bool = False):
        self.seed = seed
        self.verbose = verbose
        self.rings: dict[str, FiniteZAlgebra] = {}
        self.modules: dict[str, FPModule] = {}
        self.maps: dict[str, PolyMap] = {}
        self.presentations: dict[str, RingPresentation] = {}
        self.structures: dict[str, QuadraticStructure] = {}
        self.report = Report()
        self.index = 0

    def rng(self) -> random.Random:
        return random.Random(self.seed * 1_000_003 + self.index)

    def run(self, text: str) -> Report:
        self.check_syntax(text)
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].rstrip()
            if not line.strip():
                continue
            self.index += 1
            col = len(line) - len(line.lstrip()) + 1
            try:
                self.statement(line.strip())
            except SessionError:
                raise
            except (ValueError, SyntaxError, KeyError, ModuleError, RingError, QuadMapError) as exc:
                msg = exc.args[0] if exc.args else type(exc).__name__
                raise SessionError(lineno, col, f"statement {self.index}: {msg}") from exc
        return self.report

    def check_syntax(self, text: str) -> None:
        """Reject unknown statements and tokens before anything runs."""
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].rstrip()
            if not line.strip():
                continue
            col = len(line) - len(line.lstrip()) + 1
            words = line.split()
            if words[0] not in STATEMENTS:
                raise SessionError(lineno, col, f"unknown statement {words[0]!r}")
            if words[0] in ("verify", "compute"):
                allowed = VERIFY_TOKENS if words[0] == "verify" else COMPUTE
                if len(words) != 3:
                    raise SessionError(lineno, col, f"expected '{words[0]} <token> <name>'")
                if words[1] not in allowed:
                    raise SessionError(lineno, line.index(words[1], col - 1 + len(words[0])) + 1,
                                       f"unknown {words[0]} token {words[1]!r}")

    # dispatch

    def statement(self, line: str) -> None:
        head = line.split(None, 1)[0]
        handler: Callable[[str], None] | None = {
            "seed": self.do_seed, "ring": self.do_ring, "module": self.do_module, "map": self.do_map,
            "presentation": self.do_presentation, "compute": self.do_compute, "verify": self.do_verify,
            "analyze": self.do_analyze, "decompose": self.do_decompose, "factor": self.do_factor,
            "print": self.do_print,
        }.get(head)
        if handler is None:
            raise ValueError(f"unknown statement {head!r}")
        handler(line[len(head):].strip())

    def _define(self, name: str) -> None:
        if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", name):
            raise ValueError(f"invalid name {name!r}")
        if any(name in table for table in (self.rings, self.modules, self.maps, self.presentations)):
            raise ValueError(f"name {name!r} already defined")

    def _ring(self, name: str) -> FiniteZAlgebra:
        if name not in self.rings:
            raise KeyError(f"unknown ring {name!r}")
        return self.rings[name]

    def _module(self, name: str) -> FPModule:
        if name not in self.modules:
            raise KeyError(f"unknown module {name!r}")
        return self.modules[name]

    def _structure(self, name: str) -> QuadraticStructure:
        if name not in self.structures:
            self.structures[name] = QuadraticStructure(self._module(name))
        return self.structures[name]

    def _map(self, name: str) -> PolyMap:
        if name not in self.maps:
            raise KeyError(f"unknown map {name!r}")
        return self.maps[name]

    # statements

    def do_seed(self, rest: str) -> None:
        self.seed = int(rest)

    def do_print(self, rest: str) -> None:
        if rest != "report":
            raise ValueError("expected 'print report'")
        r = self.report
        self.report.emit(f"SUMMARY checks={r.checks} failed={r.failed}")

    def _ring_literal(self, text: str) -> FiniteZAlgebra:
        toks = text.split(None, 1)
        kind = toks[0]
        arg = toks[1].strip() if len(toks) > 1 else ""
        if kind == "Z" and not arg:
            return make_ring("Z")
        if kind == "Zmod":
            return make_ring("Zmod", int(arg))
        if kind == "monogenic":
            return make_ring("monogenic", [int(c) for c in _split_top(_unbracket(arg))])
        if kind == "product":
            names = arg.split()
            if len(names) != 2:
                raise ValueError("product needs two ring names")
            return make_ring("product", self._ring(names[0]), self._ring(names[1]))
        if kind in self.rings and not arg:
            return self.rings[kind]
        raise ValueError(f"unknown ring literal {text!r}")

    def do_ring(self, rest: str) -> None:
        m = re.fullmatch(r"(\S+)\s*=\s*(.+)", rest)
        if not m:
            raise ValueError("expected 'ring <name> = <literal>'")
        name = m.group(1)
        self._define(name)
        R = self._ring_literal(m.group(2))
        self.rings[name] = R
        self.report.emit(f"DEF {name} ring {R.name} rank {R.rank}")

    def do_module(self, rest: str) -> None:
        m = re.fullmatch(r"(\S+)\s+over\s+(\S+)\s+gens\s+(\d+)\s+rels\s+(\[.*\])", rest)
        if not m:
            raise ValueError("expected 'module <name> over <ring> gens <g> rels [[...], ...]'")
        name, rname, g = m.group(1), m.group(2), int(m.group(3))
        self._define(name)
        R = self._ring(rname)
        cols = []
        for col in _split_top(_unbracket(m.group(4))):
            entries = [parse_element(e, R) for e in _split_top(_unbracket(col))]
            cols.append(entries)
        M = FPModule.from_matrix(R, g, cols)
        self.modules[name] = M
        self.report.emit(f"DEF {name} module over {rname} gens {g} rels {len(cols)} invariants: {M.invariants()}")

    def do_map(self, rest: str) -> None:
        m = re.fullmatch(r"(\S+)\s+over\s+(\S+)\s+arity\s+(\d+)\s+(\d+)\s*=\s*(\[.*\])", rest)
        if not m:
            raise ValueError("expected 'map <name> over <ring> arity <m> <n> = [poly, ...]'")
        name, rname, a, b = m.group(1), m.group(2), int(m.group(3)), int(m.group(4))
        self._define(name)
        R = self._ring(rname)
        f = parse_polymap(R, a, b, _split_top(_unbracket(m.group(5))))
        self.maps[name] = f
        self.report.emit(f"DEF {name} map R^{a} -> R^{b} over {rname} = {f.format()}")

    def do_presentation(self, rest: str) -> None:
        m = re.fullmatch(r"(\S+)\s+over\s+(\S+)\s+vars\s+(.*?)\s*rels\s+(\[.*\])", rest)
        if not m:
            raise ValueError("expected 'presentation <name> over <ring> vars X=(..) ... rels [...]'")
        name, rname = m.group(1), m.group(2)
        self._define(name)
        R = self._ring(rname)
        names, images = [], []
        for part in re.findall(r"([A-Za-z_][A-Za-z_0-9]*)\s*=\s*(\([^)]*\)|-?\d+)", m.group(3)):
            names.append(part[0])
            images.append(parse_element(part[1], R))
        rels = [parse_int_poly(t, names) for t in _split_top(_unbracket(m.group(4)))]
        P = RingPresentation(names, rels, R, images)
        errors = P.validate()
        if errors:
            raise ValueError("; ".join(errors))
        self.presentations[name] = P
        self.report.emit(f"DEF {name} presentation of {rname} vars {len(names)} rels {len(rels)}")

    def do_compute(self, rest: str) -> None:
        parts = rest.split()
        if len(parts) != 2 or parts[0] not in COMPUTE:
            raise ValueError(f"expected 'compute <{'|'.join(COMPUTE)}> <name>'")
        fn, name = parts
        if fn == "i2":
            R = self._ring(name)
            ideal = i2_ideal(R)
            self.report.emit(f"RESULT i2({name}) labels: [{', '.join(ideal.labels)}]")
            self.report.emit(f"RESULT i2({name}) lattice: {[list(b) for b in ideal.lattice().basis]}")
            self.report.emit(f"RESULT i2({name}) invariants: {ideal.module.invariants()}")
            return
        Q = self._structure(name)
        module = {
            "p2": lambda: Q.P.module, "sym2": lambda: Q.sym.module, "lambda2": lambda: Q.lam.module,
            "gamma2": lambda: Q.gam.module, "k": lambda: Q.k[0], "kprime": lambda: Q.kprime[0],
            "tor": lambda: Q.tor_R2.module,
        }[fn]()
        self.report.emit(f"RESULT {fn}({name}) invariants: {module.invariants()}")
        if self.verbose:
            self.report.emit(f"INFO {fn}({name}) generators: [{', '.join(module.labels)}]")

    def do_verify(self, rest: str) -> None:
        parts = rest.split()
        if len(parts) != 2:
            raise ValueError("expected 'verify <token> <name>'")
        token, name = parts
        if token not in VERIFY_TOKENS:
            raise ValueError(f"unknown verify token {token!r}")
        if token == "presred":
            if name not in self.presentations:
                raise KeyError(f"unknown presentation {name!r}")
            rep = verify_presred(self.presentations[name])
        elif token == "relrho":
            rep = verify_relrho(self._ring(name), self.rng())
        elif token == "uqd":
            rep = verify_uqd(self._ring(name), self.rng())
        else:
            rep = SEQUENCES[token](self._structure(name), self.rng())
        self.report.sequence(rep, name, self.verbose)

    def do_analyze(self, rest: str) -> None:
        f = self._map(rest.strip())
        name = rest.strip()
        ce = cross_effect(f)
        if ce.bilinear:
            self.report.emit(f"RESULT cross_effect({name}) bilinear = {ce.format(f.m)}")
        else:
            k, mono = ce.offending
            self.report.emit(f"RESULT cross_effect({name}) not bilinear: component {k + 1} monomial {mono}")
        v = is_quadratic(f, self.rng())
        self.report.emit(f"RESULT quadratic({name}) {v.format()}")

    def do_decompose(self, rest: str) -> None:
        parts = rest.split()
        if not parts:
            raise ValueError("expected 'decompose <map> [r=<elem>] [bound=<n>]'")
        f = self._map(parts[0])
        r, bound = None, 3
        for opt in parts[1:]:
            key, _, val = opt.partition("=")
            if key == "r":
                r = parse_element(val, f.ring)
            elif key == "bound":
                bound = int(val)
            else:
                raise ValueError(f"unknown option {key!r}")
        split = decompose_lin_hom(f, r, bound)
        if not split.available:
            self.report.emit(f"RESULT decompose({parts[0]}) unavailable: {split.reason}")
            return
        self.report.emit(f"RESULT decompose({parts[0]}) r={split.r} linear={split.linear.format()} "
                         f"homogeneous={split.homogeneous.format()}")

    def do_factor(self, rest: str) -> None:
        name = rest.strip()
        f = self._map(name)
        fac = factor_through_p2(f)
        labels = fac.map.domain.labels
        R = f.ring
        images = ", ".join(f"{l} -> [{', '.join(_element(b) for b in mod.blocks(R, c))}]"
                           for l, c in zip(labels, fac.map.columns))
        self.report.emit(f"RESULT factor({name}) {images}")
        rng = self.rng()
        points = [[R.random_element(rng, 3) for _ in range(f.m)] for _ in range(100)]
        self.report.check("factor", "roundtrip", factorization_check(f, fac, points))


def run_session(text: str, seed: int = 0, verbose: bool = False) -> Report:
    return Session(seed, verbose).run(text)


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="quadmod", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", help="run a session file")
    run.add_argument("file", help="session file, or - for standard input")
    run.add_argument("--seed", type=int, default=0, help="seed for randomized checks (default 0)")
    run.add_argument("--verbose", action="store_true", help="print term invariants and notes")
    args = parser.parse_args(argv)
    try:
        text = sys.stdin.read() if args.file == "-" else open(args.file, encoding="utf-8").read()
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        report = run_session(text, args.seed, args.verbose)
    except SessionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(report.text)
    return 0 if report.failed == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
