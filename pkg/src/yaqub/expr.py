"""Ring-expression syntax trees, the textual grammar, and its renderer.

Grammar (whitespace-insensitive)::

    expr      := quot ( 'x' quot )*
    quot      := primary ( '/' '(' elem ( ',' elem )* ')' )*
    primary   := 'Z' '/' INT [ '[' 'x' ']' '/' '(' poly ')' ]
               | 'M' INT '(' expr ')'            -- full k x k matrices
               | 'T' INT '(' expr ')'            -- upper triangular k x k
               | 'sub' '(' expr ';' elem ( ',' elem )* ')'
               | 'corner' '(' expr ';' elem ')'
               | '(' expr ')'
    elem      := INT                             -- canonical element index
               | '(' elem ',' elem ( ',' elem )* ')'   -- product components
               | '[' elem ( ',' elem )* ']'     -- matrix rows / poly coefficients
    poly      := ['-'] term ( ('+' | '-') term )*
    term      := INT | [INT] ['*'] 'x' [ '^' INT ]

Inside ``[x]`` and the polynomial after it, ``x`` is the indeterminate;
everywhere else it is the product operator.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from .errors import MalformedExpr, RingSyntaxError


@dataclass(frozen=True)
class TupleLit:
    """Element literal ``(a, b, ...)``: one component per product factor."""

    items: tuple

    def __str__(self) -> str:
        return "(" + ", ".join(render_elem(i) for i in self.items) + ")"


@dataclass(frozen=True)
class ListLit:
    """Element literal ``[...]``: matrix rows or polynomial coefficients."""

    items: tuple

    def __str__(self) -> str:
        return "[" + ", ".join(render_elem(i) for i in self.items) + "]"


ElemLit = Union[int, TupleLit, ListLit]


def render_elem(lit: ElemLit) -> str:
    return str(lit)


def _check_elem(lit) -> None:
    if isinstance(lit, bool) or not isinstance(lit, (int, TupleLit, ListLit)):
        raise MalformedExpr(f"invalid element literal {lit!r}")
    if isinstance(lit, int):
        if lit < 0:
            raise MalformedExpr(f"element index must be non-negative, got {lit}")
        return
    for item in lit.items:
        _check_elem(item)


class RingExpr:
    """Base class of the construction tree."""

    def __str__(self) -> str:
        return render(self)


@dataclass(frozen=True, eq=True)
class ZMod(RingExpr):
    n: int

    def __post_init__(self):
        if isinstance(self.n, bool) or not isinstance(self.n, int) or self.n < 1:
            raise MalformedExpr(f"Z/n needs n >= 1, got {self.n!r}")

    __str__ = RingExpr.__str__


@dataclass(frozen=True, eq=True)
class Product(RingExpr):
    factors: tuple

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        if not self.factors:
            raise MalformedExpr("a product needs at least one factor")
        for f in self.factors:
            if not isinstance(f, RingExpr):
                raise MalformedExpr(f"product factor {f!r} is not a ring expression")

    __str__ = RingExpr.__str__


def _check_size(k) -> None:
    if isinstance(k, bool) or not isinstance(k, int) or k < 1:
        raise MalformedExpr(f"matrix size must be >= 1, got {k!r}")


@dataclass(frozen=True, eq=True)
class Matrix(RingExpr):
    k: int
    base: RingExpr

    def __post_init__(self):
        _check_size(self.k)

    __str__ = RingExpr.__str__


@dataclass(frozen=True, eq=True)
class UpperTriangular(RingExpr):
    k: int
    base: RingExpr

    def __post_init__(self):
        _check_size(self.k)

    __str__ = RingExpr.__str__


@dataclass(frozen=True, eq=True)
class PolyQuotient(RingExpr):
    """Z/n[x] modulo a monic polynomial; coefficients stored low degree first."""

    n: int
    modulus: tuple

    def __post_init__(self):
        if isinstance(self.n, bool) or not isinstance(self.n, int) or self.n < 1:
            raise MalformedExpr(f"Z/n needs n >= 1, got {self.n!r}")
        coeffs = [int(c) % self.n for c in self.modulus]
        while coeffs and coeffs[-1] == 0 and self.n > 1:
            coeffs.pop()
        if len(coeffs) < 2:
            raise MalformedExpr("modulus polynomial must have degree >= 1")
        if self.n > 1 and coeffs[-1] != 1:
            raise MalformedExpr("modulus polynomial must be monic")
        coeffs[-1] = 1
        object.__setattr__(self, "modulus", tuple(coeffs))

    @property
    def degree(self) -> int:
        return len(self.modulus) - 1

    __str__ = RingExpr.__str__


@dataclass(frozen=True, eq=True)
class Quotient(RingExpr):
    base: RingExpr
    gens: tuple

    def __post_init__(self):
        object.__setattr__(self, "gens", tuple(self.gens))
        for g in self.gens:
            _check_elem(g)

    __str__ = RingExpr.__str__


@dataclass(frozen=True, eq=True)
class Subring(RingExpr):
    """Unital subring generated by ``gens`` (always contains the base ring's 1)."""

    base: RingExpr
    gens: tuple

    def __post_init__(self):
        object.__setattr__(self, "gens", tuple(self.gens))
        for g in self.gens:
            _check_elem(g)

    __str__ = RingExpr.__str__


@dataclass(frozen=True, eq=True)
class Corner(RingExpr):
    base: RingExpr
    idem: ElemLit

    def __post_init__(self):
        _check_elem(self.idem)

    __str__ = RingExpr.__str__


# --------------------------------------------------------------------------
# rendering


def render_poly(coeffs) -> str:
    terms = []
    for deg in range(len(coeffs) - 1, -1, -1):
        c = coeffs[deg]
        if c == 0:
            continue
        if deg == 0:
            terms.append(str(c))
            continue
        mono = "x" if deg == 1 else f"x^{deg}"
        terms.append(mono if c == 1 else f"{c}{mono}")
    return "+".join(terms) if terms else "0"


def _wrap(expr: RingExpr) -> str:
    text = render(expr)
    return f"({text})" if isinstance(expr, Product) else text


def render(expr: RingExpr) -> str:
    """Canonical text for ``expr``; ``parse_ring_expr`` inverts it."""
    if isinstance(expr, ZMod):
        return f"Z/{expr.n}"
    if isinstance(expr, Product):
        return " x ".join(_wrap(f) for f in expr.factors)
    if isinstance(expr, Matrix):
        return f"M{expr.k}({render(expr.base)})"
    if isinstance(expr, UpperTriangular):
        return f"T{expr.k}({render(expr.base)})"
    if isinstance(expr, PolyQuotient):
        return f"Z/{expr.n}[x]/({render_poly(expr.modulus)})"
    if isinstance(expr, Quotient):
        gens = ", ".join(render_elem(g) for g in expr.gens)
        return f"{_wrap(expr.base)} / ({gens})"
    if isinstance(expr, Subring):
        gens = "".join("; " + render_elem(g) if i == 0 else ", " + render_elem(g)
                       for i, g in enumerate(expr.gens))
        return f"sub({render(expr.base)}{gens})"
    if isinstance(expr, Corner):
        return f"corner({render(expr.base)}; {render_elem(expr.idem)})"
    raise TypeError(f"not a ring expression: {expr!r}")


# --------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(
    r"\s*(?:(?P<int>\d+)|(?P<kw>corner|sub|Z|M|T|x)|(?P<op>[()\[\];,/+\-*^]))"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            skip = len(text[pos:]) - len(text[pos:].lstrip())
            raise RingSyntaxError("unexpected character", text, pos + skip)
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append((kind, m.group(kind), start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    # token helpers
    def peek(self, offset: int = 0) -> tuple[str, str, int]:
        return self.tokens[min(self.i + offset, len(self.tokens) - 1)]

    def at(self, value: str, offset: int = 0) -> bool:
        kind, val, _ = self.peek(offset)
        return kind != "int" and kind != "end" and val == value

    def error(self, message: str):
        raise RingSyntaxError(message, self.text, self.peek()[2])

    def expect(self, value: str) -> None:
        if not self.at(value):
            got = self.peek()[1] or "end of input"
            self.error(f"expected {value!r}, got {got!r}")
        self.i += 1

    def integer(self) -> int:
        kind, val, _ = self.peek()
        if kind != "int":
            self.error(f"expected an integer, got {val or 'end of input'!r}")
        self.i += 1
        return int(val)

    # grammar
    def parse(self) -> RingExpr:
        expr = self.expr()
        if self.peek()[0] != "end":
            self.error(f"unexpected {self.peek()[1]!r}")
        return expr

    def expr(self) -> RingExpr:
        factors = [self.quot()]
        while self.at("x"):
            self.i += 1
            factors.append(self.quot())
        return factors[0] if len(factors) == 1 else Product(tuple(factors))

    def quot(self) -> RingExpr:
        base = self.primary()
        while self.at("/"):
            self.i += 1
            self.expect("(")
            gens = self.elem_list(")")
            self.expect(")")
            base = self.build(lambda b=base, g=gens: Quotient(b, g))
        return base

    def build(self, make):
        start = self.peek()[2]
        try:
            return make()
        except MalformedExpr as exc:
            raise RingSyntaxError(str(exc), self.text, start) from None

    def primary(self) -> RingExpr:
        kind, val, pos = self.peek()
        if self.at("Z"):
            self.i += 1
            self.expect("/")
            n_pos = self.peek()[2]
            n = self.integer()
            if n < 1:
                raise RingSyntaxError("modulus must be >= 1", self.text, n_pos)
            if self.at("["):
                self.i += 1
                self.expect("x")
                self.expect("]")
                self.expect("/")
                self.expect("(")
                poly_pos = self.peek()[2]
                coeffs = self.poly()
                self.expect(")")
                try:
                    return PolyQuotient(n, tuple(coeffs))
                except MalformedExpr as exc:
                    raise RingSyntaxError(str(exc), self.text, poly_pos) from None
            return ZMod(n)
        if self.at("M") or self.at("T"):
            self.i += 1
            k_pos = self.peek()[2]
            k = self.integer()
            if k < 1:
                raise RingSyntaxError("matrix size must be >= 1", self.text, k_pos)
            self.expect("(")
            base = self.expr()
            self.expect(")")
            return Matrix(k, base) if val == "M" else UpperTriangular(k, base)
        if self.at("sub"):
            self.i += 1
            self.expect("(")
            base = self.expr()
            gens: tuple = ()
            if self.at(";"):
                self.i += 1
                gens = self.elem_list(")")
            self.expect(")")
            return Subring(base, gens)
        if self.at("corner"):
            self.i += 1
            self.expect("(")
            base = self.expr()
            self.expect(";")
            idem = self.elem()
            self.expect(")")
            return Corner(base, idem)
        if self.at("("):
            self.i += 1
            inner = self.expr()
            self.expect(")")
            return inner
        self.error(f"expected a ring, got {val or 'end of input'!r}")

    def elem_list(self, closer: str) -> tuple:
        items = [self.elem()]
        while self.at(","):
            self.i += 1
            items.append(self.elem())
        return tuple(items)

    def elem(self) -> ElemLit:
        kind, val, pos = self.peek()
        if kind == "int":
            self.i += 1
            return int(val)
        if self.at("("):
            self.i += 1
            items = self.elem_list(")")
            self.expect(")")
            if len(items) == 1:
                return items[0]
            return TupleLit(items)
        if self.at("["):
            self.i += 1
            items = self.elem_list("]")
            self.expect("]")
            return ListLit(items)
        self.error(f"expected an element literal, got {val or 'end of input'!r}")

    def poly(self) -> list[int]:
        coeffs: dict[int, int] = {}
        sign = 1
        if self.at("-"):
            self.i += 1
            sign = -1
        while True:
            coef, deg = self.term()
            coeffs[deg] = coeffs.get(deg, 0) + sign * coef
            if self.at("+"):
                sign = 1
            elif self.at("-"):
                sign = -1
            else:
                break
            self.i += 1
        top = max(coeffs)
        return [coeffs.get(d, 0) for d in range(top + 1)]

    def term(self) -> tuple[int, int]:
        coef = None
        if self.peek()[0] == "int":
            coef = self.integer()
            if self.at("*"):
                self.i += 1
                if not self.at("x"):
                    self.error("expected 'x' after '*'")
        if self.at("x"):
            self.i += 1
            deg = 1
            if self.at("^"):
                self.i += 1
                deg = self.integer()
            return (1 if coef is None else coef), deg
        if coef is None:
            self.error("expected a polynomial term")
        return coef, 0


def parse_ring_expr(text: str) -> RingExpr:
    """Parse ``text`` into a :class:`RingExpr` (see module docstring)."""
    return _Parser(text).parse()
