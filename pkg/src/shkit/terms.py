"""Terms over ``∨ ∧ → ' 0 1``: AST, ASCII grammar, printer and evaluators.

Grammar (loosest to tightest)::

    identity := term ('=' | '<=') term
    term     := join ['->' join]          # '->' does not associate
    join     := meet ('\\/' meet)*
    meet     := postfix ('/\\' postfix)*
    postfix  := atom ("'" | '*' | '+')*
    atom     := VAR | '0' | '1' | '(' term ')'

``t*`` is sugar for ``t -> 0`` and ``t+`` for ``t'*'``; both expand while
parsing, so an AST only ever holds the primitive node types.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import product
from pathlib import Path
from typing import TYPE_CHECKING, Iterator, Mapping

import numpy as np

if TYPE_CHECKING:
    from .algebra import FiniteAlgebra


class Term:
    __slots__ = ()

    def __str__(self) -> str:
        return format_term(self)


@dataclass(frozen=True, repr=False)
class Var(Term):
    name: str

    def __post_init__(self) -> None:
        if not self.name:
            raise ValueError("variable name must be nonempty")

    def __repr__(self) -> str:
        return f"Var({self.name!r})"


@dataclass(frozen=True)
class Zero(Term):
    pass


@dataclass(frozen=True)
class One(Term):
    pass


@dataclass(frozen=True)
class Meet(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Join(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Arrow(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Neg(Term):
    arg: Term


ZERO = Zero()
ONE = One()


def Star(t: Term) -> Term:
    """Pseudocomplement ``t* = t → 0``."""
    return Arrow(t, ZERO)


def Plus(t: Term) -> Term:
    """``t⁺ = t'*'``."""
    return Neg(Star(Neg(t)))


def variables(t: Term) -> set[str]:
    out: set[str] = set()
    stack = [t]
    while stack:
        s = stack.pop()
        if isinstance(s, Var):
            out.add(s.name)
        elif isinstance(s, Neg):
            stack.append(s.arg)
        elif isinstance(s, (Meet, Join, Arrow)):
            stack.extend((s.left, s.right))
    return out


def uses_only_star(t: Term) -> bool:
    """True when every arrow in ``t`` has the form ``s → 0``.

    Such terms only see the pseudocomplement, which is fixed by the lattice,
    so their value does not depend on which semi-Heyting arrow is chosen.
    """
    stack = [t]
    while stack:
        s = stack.pop()
        if isinstance(s, Arrow):
            if not isinstance(s.right, Zero):
                return False
            stack.append(s.left)
        elif isinstance(s, Neg):
            stack.append(s.arg)
        elif isinstance(s, (Meet, Join)):
            stack.extend((s.left, s.right))
    return True


# -- identities -------------------------------------------------------------


@dataclass(frozen=True)
class Identity:
    """``lhs ≈ rhs``, or ``lhs ≤ rhs`` when ``kind == "inequality"``."""

    name: str
    lhs: Term
    rhs: Term
    kind: str = "equation"

    def __post_init__(self) -> None:
        if self.kind not in ("equation", "inequality"):
            raise ValueError(f"unknown identity kind {self.kind!r}")

    @property
    def variables(self) -> list[str]:
        return sorted(variables(self.lhs) | variables(self.rhs))

    def as_equation(self) -> tuple[Term, Term]:
        """The purely equational form: ``l ≤ r`` becomes ``l ∧ r ≈ l``."""
        if self.kind == "inequality":
            return Meet(self.lhs, self.rhs), self.lhs
        return self.lhs, self.rhs

    @property
    def star_only(self) -> bool:
        return uses_only_star(self.lhs) and uses_only_star(self.rhs)

    def __str__(self) -> str:
        op = "<=" if self.kind == "inequality" else "="
        return f"{format_term(self.lhs)} {op} {format_term(self.rhs)}"


# -- parser -----------------------------------------------------------------


class TermSyntaxError(SyntaxError):
    def __init__(self, message: str, text: str, position: int):
        self.position = position
        super().__init__(f"{message} at position {position}: {text!r}")


_ALIASES = {"∧": "/\\", "∨": "\\/", "→": "->", "≈": "=", "≤": "<=", "′": "'", "⁺": "+", "∗": "*"}
_TOKEN = re.compile(r"\s*(?:(/\\|\\/|->|<=|=|'|\*|\+|\(|\))|([a-z][a-z0-9_]*)|([01])(?![0-9]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    for k, v in _ALIASES.items():
        text = text.replace(k, v)
    toks = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise TermSyntaxError(f"unexpected character {text[start]!r}", text, start)
        if m.group(1):
            toks.append(("op", m.group(1), m.start(1)))
        elif m.group(2):
            toks.append(("var", m.group(2), m.start(2)))
        else:
            toks.append(("const", m.group(3), m.start(3)))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self) -> tuple[str, str, int]:
        return self.toks[self.i]

    def take(self) -> tuple[str, str, int]:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def error(self, msg: str) -> TermSyntaxError:
        return TermSyntaxError(msg, self.text, self.peek()[2])

    def expect_end(self) -> None:
        kind, val, _ = self.peek()
        if kind != "end":
            raise self.error(f"unexpected {val!r}")

    def term(self) -> Term:
        left = self.join()
        if self.peek()[1] == "->":
            self.take()
            right = self.join()
            if self.peek()[1] == "->":
                raise self.error("'->' is non-associative; add parentheses")
            return Arrow(left, right)
        return left

    def join(self) -> Term:
        t = self.meet()
        while self.peek()[1] == "\\/":
            self.take()
            t = Join(t, self.meet())
        return t

    def meet(self) -> Term:
        t = self.postfix()
        while self.peek()[1] == "/\\":
            self.take()
            t = Meet(t, self.postfix())
        return t

    def postfix(self) -> Term:
        t = self.atom()
        while self.peek()[0] == "op" and self.peek()[1] in ("'", "*", "+"):
            op = self.take()[1]
            t = Neg(t) if op == "'" else Star(t) if op == "*" else Plus(t)
        return t

    def atom(self) -> Term:
        kind, val, _ = self.peek()
        if kind == "var":
            self.take()
            return Var(val)
        if kind == "const":
            self.take()
            return ZERO if val == "0" else ONE
        if val == "(":
            self.take()
            t = self.term()
            if self.peek()[1] != ")":
                raise self.error("expected ')'")
            self.take()
            return t
        raise self.error("expected a term" if kind != "end" else "unexpected end of input")


def parse(text: str) -> Term:
    p = _Parser(text)
    t = p.term()
    p.expect_end()
    return t


def parse_identity(text: str, name: str = "") -> Identity:
    p = _Parser(text)
    lhs = p.term()
    kind, op, _ = p.peek()
    if op not in ("=", "<="):
        raise p.error("expected '=' or '<='")
    p.take()
    rhs = p.term()
    p.expect_end()
    return Identity(name or text.strip(), lhs, rhs, "inequality" if op == "<=" else "equation")


def load_identities(path: str | Path) -> list[Identity]:
    """Read ``name : lhs = rhs`` lines; ``#`` starts a comment."""
    out = []
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise TermSyntaxError("expected 'name : identity'", raw, 0)
        name, body = (s.strip() for s in line.split(":", 1))
        if not name:
            raise TermSyntaxError(f"line {lineno}: empty identity name", raw, 0)
        out.append(parse_identity(body, name))
    return out


# -- printer ----------------------------------------------------------------

_PREC = {Arrow: 1, Join: 2, Meet: 3}


def format_term(t: Term) -> str:
    """Render with the fewest parentheses that still parse back to ``t``."""
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Zero):
        return "0"
    if isinstance(t, One):
        return "1"
    if isinstance(t, Neg):
        return _postfix_operand(t.arg) + "'"
    if isinstance(t, Arrow) and isinstance(t.right, Zero):
        return _postfix_operand(t.left) + "*"
    if isinstance(t, Arrow):
        return f"{_wrap(t.left, 2)} -> {_wrap(t.right, 2)}"
    op = " /\\ " if isinstance(t, Meet) else " \\/ "
    p = _PREC[type(t)]
    return f"{_wrap(t.left, p)}{op}{_wrap(t.right, p + 1)}"


def _postfix_operand(t: Term) -> str:
    s = format_term(t)
    if isinstance(t, (Meet, Join)) or (isinstance(t, Arrow) and not isinstance(t.right, Zero)):
        return f"({s})"
    return s


def _wrap(t: Term, min_prec: int) -> str:
    s = format_term(t)
    p = _PREC.get(type(t))
    if p is not None and not (isinstance(t, Arrow) and isinstance(t.right, Zero)) and p < min_prec:
        return f"({s})"
    return s


# -- generated level terms -------------------------------------------------


def iter_prime_star(x: Term, n: int) -> Term:
    """Apply ``'`` then ``*`` to ``x``, ``n`` times."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    for _ in range(n):
        x = Star(Neg(x))
    return x


def t_term(n: int, x: Term | None = None) -> Term:
    """``t_0 = x``, ``t_{k+1} = t_k ∧ x^{(k+1)('*)}``.

    The iterated images are built incrementally, so successive meets share
    subterm objects and a memoizing evaluator does linear work in ``n``.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    x = Var("x") if x is None else x
    t, power = x, x
    for _ in range(n):
        power = Star(Neg(power))
        t = Meet(t, power)
    return t


def level_identity(n: int) -> Identity:
    return Identity(f"L{n}", t_term(n), t_term(n + 1))


def level_identity_alt(n: int) -> Identity:
    """``(x ∧ x'*)`` iterated ``n`` vs ``n+1`` times; characterizes level ``n+1``."""
    base = t_term(1)
    return Identity(f"Lalt{n}", iter_prime_star(base, n), iter_prime_star(base, n + 1))


# -- evaluation -------------------------------------------------------------


class UnboundVariable(KeyError):
    pass


class _Evaluator:
    """Structural fold over the tables; memoized on node identity."""

    def __init__(self, algebra: "FiniteAlgebra", env: Mapping[str, object], vector: bool = False):
        self.alg = algebra
        self.env = env
        self.cache: dict[int, object] = {}
        self.lookups = 0
        if vector:
            a = algebra.arrays
            self.meet, self.join, self.arrow, self.neg = a["meet"], a["join"], a["arrow"], a["neg"]
        else:
            self.meet, self.join = algebra.meet_table, algebra.join_table
            self.arrow, self.neg = algebra.arrow_table, algebra.neg_table
        self.vector = vector

    def __call__(self, t: Term):
        key = id(t)
        if key in self.cache:
            return self.cache[key]
        if isinstance(t, Var):
            if t.name not in self.env:
                raise UnboundVariable(t.name)
            v = self.env[t.name]
        elif isinstance(t, Zero):
            v = self.alg.bottom
        elif isinstance(t, One):
            v = self.alg.top
        elif isinstance(t, Neg):
            a = self(t.arg)
            self.lookups += 1
            v = self.neg[a]
        else:
            l, r = self(t.left), self(t.right)
            tab = self.meet if isinstance(t, Meet) else self.join if isinstance(t, Join) else self.arrow
            self.lookups += 1
            v = tab[l, r] if self.vector else tab[l][r]
        self.cache[key] = v
        return v


def evaluate(t: Term | str, algebra: "FiniteAlgebra", assignment: Mapping[str, int | str] | None = None) -> int:
    """Value of ``t`` under ``assignment`` (labels or indices)."""
    if isinstance(t, str):
        t = parse(t)
    env = {k: algebra.element(v) for k, v in (assignment or {}).items()}
    return int(_Evaluator(algebra, env)(t))


def lookup_count(t: Term, algebra: "FiniteAlgebra", assignment: Mapping[str, int | str]) -> int:
    """Number of table lookups a single evaluation of ``t`` performs."""
    ev = _Evaluator(algebra, {k: algebra.element(v) for k, v in assignment.items()})
    ev(t)
    return ev.lookups


def evaluate_all(
    t: Term, algebra: "FiniteAlgebra", names: list[str], fixed: Mapping[str, int] | None = None
) -> np.ndarray:
    """Values of ``t`` over every assignment to ``names``.

    The result is flat, in lexicographic order of assignment tuples.
    Variables in ``fixed`` are held at the given element.
    """
    n = algebra.size
    k = len(names)
    grids = np.indices((n,) * k).reshape(k, -1) if k else np.zeros((0, 1), dtype=np.intp)
    env: dict[str, object] = {name: grids[i] for i, name in enumerate(names)}
    env.update(fixed or {})
    ev = _Evaluator(algebra, env, vector=True)
    out = ev(t)
    return np.broadcast_to(np.asarray(out), (n**k,))


def assignments(n: int, names: list[str]) -> Iterator[dict[str, int]]:
    for vals in product(range(n), repeat=len(names)):
        yield dict(zip(names, vals))
