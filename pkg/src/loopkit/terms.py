"""Loop words: AST, parser, printer and evaluation.

Concrete syntax::

    identity := term "=" term
    term     := factor { "*" factor }
    factor   := atom { ("\\" | "/") atom }
    atom     := primary { "^l" | "^r" }
    primary  := varname | "e" | "(" term ")"

``^l`` is the left inverse (x^λ), ``^r`` the right inverse (x^ρ).  Binary
operators are left-associative; divisions bind tighter than ``*``, so
``x * y \\ z`` is ``x * (y \\ z)``.  Juxtaposition is not accepted.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterator, Mapping, Sequence, Union

import numpy as np


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Const:
    """The identity element e."""


@dataclass(frozen=True)
class Mul:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class LDiv:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class RDiv:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Lin:
    arg: "Term"


@dataclass(frozen=True)
class Rin:
    arg: "Term"


Term = Union[Var, Const, Mul, LDiv, RDiv, Lin, Rin]
E = Const()

_BINARY = {Mul: "*", LDiv: "\\", RDiv: "/"}
_UNARY = {Lin: "^l", Rin: "^r"}


class TermSyntaxError(SyntaxError):
    def __init__(self, position: int, expected: str, src: str = ""):
        self.position = position
        self.expected = expected
        super().__init__(f"at position {position}: expected {expected}")
        self.text = src


class UnknownSymbol(TermSyntaxError):
    def __init__(self, position: int, symbol: str, src: str = ""):
        self.symbol = symbol
        super().__init__(position, "a known symbol", src)
        self.msg = f"unknown symbol {symbol!r} at position {position}"
        self.args = (self.msg,)


class UnboundVariable(KeyError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(name)


# -- construction helpers (keep the registry readable) ----------------------


def V(name: str) -> Var:
    return Var(name)


def free_vars(t: Term) -> list[str]:
    """Variable names in order of first occurrence (left to right)."""
    out: list[str] = []

    def walk(s):
        if isinstance(s, Var):
            if s.name not in out:
                out.append(s.name)
        elif isinstance(s, (Mul, LDiv, RDiv)):
            walk(s.left)
            walk(s.right)
        elif isinstance(s, (Lin, Rin)):
            walk(s.arg)

    walk(t)
    return out


def substitute(t: Term, mapping: Mapping[str, Term]) -> Term:
    if isinstance(t, Var):
        return mapping.get(t.name, t)
    if isinstance(t, Const):
        return t
    if isinstance(t, (Mul, LDiv, RDiv)):
        return type(t)(substitute(t.left, mapping), substitute(t.right, mapping))
    return type(t)(substitute(t.arg, mapping))


def size(t: Term) -> int:
    if isinstance(t, (Var, Const)):
        return 1
    if isinstance(t, (Mul, LDiv, RDiv)):
        return 1 + size(t.left) + size(t.right)
    return 1 + size(t.arg)


# -- parsing ----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<name>[a-z]+)|(?P<inv>\^[lr])|(?P<op>[*\\/()=]))")


def _tokenize(src: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(src):
        if src[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(src, pos)
        if not m:
            raise UnknownSymbol(pos, src[pos], src)
        start = m.start(m.lastgroup)
        tokens.append((m.lastgroup, m.group(m.lastgroup), start))
        pos = m.end()
    tokens.append(("end", "", len(src)))
    return tokens


class _Parser:
    def __init__(self, src: str):
        self.src = src
        self.tokens = _tokenize(src)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value: str, what: str):
        kind, text, pos = self.peek()
        if text != value or kind == "end":
            raise TermSyntaxError(pos, what, self.src)
        self.i += 1

    def term(self) -> Term:
        t = self.factor()
        while self.peek()[1] == "*":
            self.take()
            t = Mul(t, self.factor())
        return t

    def factor(self) -> Term:
        t = self.atom()
        while self.peek()[1] in ("\\", "/"):
            op = self.take()[1]
            rhs = self.atom()
            t = LDiv(t, rhs) if op == "\\" else RDiv(t, rhs)
        return t

    def atom(self) -> Term:
        t = self.primary()
        while self.peek()[0] == "inv":
            t = Lin(t) if self.take()[1] == "^l" else Rin(t)
        return t

    def primary(self) -> Term:
        kind, text, pos = self.peek()
        if kind == "name":
            self.take()
            return E if text == "e" else Var(text)
        if text == "(":
            self.take()
            t = self.term()
            self.expect(")", "')'")
            return t
        raise TermSyntaxError(pos, "a variable, 'e' or '('", self.src)

    def done(self, what="end of input"):
        kind, _, pos = self.peek()
        if kind != "end":
            raise TermSyntaxError(pos, what, self.src)


def parse(src: str) -> Term:
    """Parse a single loop word."""
    p = _Parser(src)
    t = p.term()
    p.done("an operator or end of input")
    return t


def parse_identity(src: str, name: str = "", variables: Sequence[str] | None = None) -> "Identity":
    """Parse ``lhs = rhs`` into an :class:`Identity`."""
    p = _Parser(src)
    lhs = p.term()
    p.expect("=", "'='")
    rhs = p.term()
    p.done()
    return Identity(name or src.strip(), lhs, rhs, tuple(variables) if variables else None)


# -- printing ---------------------------------------------------------------


def to_str(t: Term) -> str:
    """Print with the minimal parentheses needed to parse back to ``t``."""
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Const):
        return "e"
    if isinstance(t, (Lin, Rin)):
        inner = to_str(t.arg)
        if isinstance(t.arg, (Mul, LDiv, RDiv)):
            inner = f"({inner})"
        return inner + _UNARY[type(t)]
    left, right = to_str(t.left), to_str(t.right)
    if isinstance(t, Mul):
        if isinstance(t.right, Mul):
            right = f"({right})"
        return f"{left} * {right}"
    if isinstance(t.left, Mul):
        left = f"({left})"
    if isinstance(t.right, (Mul, LDiv, RDiv)):
        right = f"({right})"
    return f"{left} {_BINARY[type(t)]} {right}"


# -- identities -------------------------------------------------------------


@dataclass(frozen=True)
class Identity:
    """``lhs = rhs`` quantified over ``vars`` (declared order)."""

    name: str
    lhs: Term
    rhs: Term
    vars: tuple[str, ...] | None = None
    label: str = ""
    tags: frozenset[str] = field(default_factory=frozenset)
    note: str = ""

    def __post_init__(self):
        found = free_vars(self.lhs)
        found += [v for v in free_vars(self.rhs) if v not in found]
        if self.vars is None:
            object.__setattr__(self, "vars", tuple(found))
        elif set(self.vars) != set(found) or len(set(self.vars)) != len(self.vars):
            raise ValueError(f"{self.name}: declared vars {self.vars} != free vars {found}")
        if len(self.vars) > 8:
            raise ValueError(f"{self.name}: more than 8 variables")

    @property
    def arity(self) -> int:
        return len(self.vars)

    @property
    def low_confidence(self) -> bool:
        return "low-confidence" in self.tags

    def __str__(self):
        return f"{to_str(self.lhs)} = {to_str(self.rhs)}"


@dataclass(frozen=True)
class CheckResult:
    holds: bool
    counterexample: dict[str, int] | None = None

    def __post_init__(self):
        if self.holds != (self.counterexample is None):
            raise ValueError("holds must be True exactly when there is no counterexample")

    def __bool__(self):
        return self.holds


# -- evaluation -------------------------------------------------------------


def eval_term(t: Term, L, env: Mapping[str, object], _memo: dict | None = None):
    """Evaluate ``t`` in ``L`` under ``env``.

    ``L`` is anything with ``mul``, ``ldiv``, ``rdiv``, ``lin``, ``rin`` and
    ``e`` (a :class:`~loopkit.core.FiniteLoop` or a stack of loops).  Env
    values may be ints or broadcastable integer arrays; identical subterms are
    evaluated once.
    """
    memo = {} if _memo is None else _memo
    try:
        return memo[t]
    except KeyError:
        pass
    if isinstance(t, Var):
        try:
            val = env[t.name]
        except KeyError:
            raise UnboundVariable(t.name) from None
    elif isinstance(t, Const):
        val = L.e
    elif isinstance(t, Mul):
        val = L.mul(eval_term(t.left, L, env, memo), eval_term(t.right, L, env, memo))
    elif isinstance(t, LDiv):
        val = L.ldiv(eval_term(t.left, L, env, memo), eval_term(t.right, L, env, memo))
    elif isinstance(t, RDiv):
        val = L.rdiv(eval_term(t.left, L, env, memo), eval_term(t.right, L, env, memo))
    elif isinstance(t, Lin):
        val = L.lin(eval_term(t.arg, L, env, memo))
    elif isinstance(t, Rin):
        val = L.rin(eval_term(t.arg, L, env, memo))
    else:
        raise TypeError(f"not a term: {t!r}")
    memo[t] = val
    return val


# -- compiled sweeps --------------------------------------------------------

_OPCODES = {Mul: "mul", LDiv: "ldiv", RDiv: "rdiv", Lin: "lin", Rin: "rin"}


@dataclass(frozen=True)
class Program:
    """Straight-line code for both sides of an identity.

    Slots ``0..k-1`` hold the variables in declared order; each instruction
    ``(op, a, b)`` appends one slot.  Shared subterms are computed once.
    """

    nvars: int
    code: tuple[tuple[str, int, int], ...]
    lhs: int
    rhs: int

    def run(self, L, cols):
        slots = list(cols)
        for op, a, b in self.code:
            if op == "e":
                slots.append(L.e)
            elif op in ("lin", "rin"):
                slots.append(getattr(L, op)(slots[a]))
            else:
                slots.append(getattr(L, op)(slots[a], slots[b]))
        return slots[self.lhs], slots[self.rhs]


_programs: dict[tuple, Program] = {}


def compile_identity(identity: Identity) -> Program:
    key = (identity.lhs, identity.rhs, identity.vars)
    prog = _programs.get(key)
    if prog is not None:
        return prog
    index = {Var(v): i for i, v in enumerate(identity.vars)}
    code: list[tuple[str, int, int]] = []

    def emit(t):
        if t in index:
            return index[t]
        if isinstance(t, Const):
            instr = ("e", -1, -1)
        elif isinstance(t, (Lin, Rin)):
            instr = (_OPCODES[type(t)], emit(t.arg), -1)
        else:
            instr = (_OPCODES[type(t)], emit(t.left), emit(t.right))
        code.append(instr)
        index[t] = len(identity.vars) + len(code) - 1
        return index[t]

    lhs, rhs = emit(identity.lhs), emit(identity.rhs)
    prog = Program(len(identity.vars), tuple(code), lhs, rhs)
    _programs[key] = prog
    return prog


# assignments per evaluation block; bounds peak memory of a sweep
BLOCK = 1 << 20

_grids: dict[tuple[int, int], np.ndarray] = {}


def _grid(n: int, k: int) -> np.ndarray:
    g = _grids.get((n, k))
    if g is None:
        g = np.indices((n,) * k, dtype=np.int64).reshape(k, -1)
        g.setflags(write=False)
        _grids[(n, k)] = g
    return g


# size of the first block; most failing identities fail inside it
FIRST_BLOCK = 512


def _assignment_blocks(n: int, k: int) -> Iterator[np.ndarray]:
    """Yield column blocks covering range(n)^k in lexicographic order."""
    if k == 0:
        yield np.zeros((0, 1), dtype=np.int64)
        return
    if n**k <= BLOCK:
        grid = _grid(n, k)
        if grid.shape[1] > 2 * FIRST_BLOCK:
            yield grid[:, :FIRST_BLOCK]
            yield grid[:, FIRST_BLOCK:]
        else:
            yield grid
        return
    inner = 1
    while n ** (inner + 1) <= BLOCK:
        inner += 1
    outer = k - inner
    tail = _grid(n, inner)
    step = tail.shape[1]
    for prefix in np.ndindex(*((n,) * outer)):
        head = np.repeat(np.asarray(prefix, dtype=np.int64)[:, None], step, axis=1)
        yield np.vstack([head, tail])


def holds(L, identity: Identity) -> CheckResult:
    """Check ``identity`` under every assignment; report the first failure.

    Assignments run in lexicographic order of ``identity.vars`` so the
    counterexample is deterministic.
    """
    prog = compile_identity(identity)
    names = identity.vars
    for cols in _assignment_blocks(L.order, len(names)):
        lhs, rhs = prog.run(L, cols)
        bad = np.broadcast_to(lhs != rhs, cols.shape[1:])
        if bad.any():
            j = int(np.argmax(bad))
            return CheckResult(False, {v: int(cols[i, j]) for i, v in enumerate(names)})
    return CheckResult(True)


def holds_many(stack, identity: Identity) -> list[CheckResult]:
    """Like :func:`holds` for every loop of a :class:`~loopkit.isotopy.LoopStack`."""
    prog = compile_identity(identity)
    names = identity.vars
    results: list[CheckResult | None] = [None] * stack.count
    pending = np.ones(stack.count, dtype=bool)
    for cols in _assignment_blocks(stack.order, len(names)):
        lhs, rhs = prog.run(stack, [c[None, :] for c in cols])
        bad = np.broadcast_to(lhs != rhs, (stack.count, cols.shape[1])) & pending[:, None]
        for b in np.flatnonzero(bad.any(axis=1)):
            j = int(np.argmax(bad[b]))
            results[b] = CheckResult(False, {v: int(cols[i, j]) for i, v in enumerate(names)})
            pending[b] = False
        if not pending.any():
            break
    return [r if r is not None else CheckResult(True) for r in results]
