"""Finite rings with elements encoded as indices into a canonical enumeration.

Every ring exposes vectorised ``add``/``mul``/``neg`` that accept Python ints
or numpy integer arrays of element indices.  Concrete constructors only
implement the ``_*_raw`` kernels on int64 arrays; rings of order at most
``TABLE_MAX`` memoise dense Cayley tables on first use.
"""

from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass
from math import prod

import numpy as np

from .errors import ForeignElementError, MalformedExpr, OrderOverflow
from .expr import (
    Corner,
    ElemLit,
    ListLit,
    Matrix,
    PolyQuotient,
    Product,
    Quotient,
    RingExpr,
    Subring,
    TupleLit,
    UpperTriangular,
    ZMod,
    render,
)

TABLE_MAX = 4096
DEFAULT_MAX_ORDER = 65536
_NEG_TABLE_MAX = 1 << 22
_CHUNK = 1 << 20

_uids = itertools.count(1)


@dataclass(frozen=True)
class Element:
    """Handle to an element; only valid for the ring whose ``uid`` it carries."""

    ring_id: int
    index: int


def _is_scalar(x) -> bool:
    return isinstance(x, (int, np.integer))


class FiniteRing:
    """A finite unital ring on the carrier ``range(order)``."""

    def __init__(self, order: int, label: str, expr: RingExpr | None = None):
        self.order = int(order)
        self.label = label
        self.expr = expr
        self.uid = next(_uids)
        self.zero = 0
        self.one = 0
        self._lock = threading.Lock()
        self._tables: tuple[np.ndarray, np.ndarray] | None = None
        self._neg_table: np.ndarray | None = None
        self._cache: dict = {}

    # -- kernels supplied by subclasses -------------------------------------
    def _add_raw(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def _mul_raw(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def _neg_raw(self, a: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def value(self, i: int):
        """JSON-friendly structured value of element ``i``."""
        raise NotImplementedError

    def encode(self, lit: ElemLit) -> int:
        """Index of the element written as ``lit`` in the expression grammar."""
        if isinstance(lit, int):
            return self._check_index(lit)
        raise MalformedExpr(f"literal {lit} does not denote an element of {self.label}")

    # -- element handles ----------------------------------------------------
    def _check_index(self, i: int) -> int:
        if not 0 <= i < self.order:
            raise MalformedExpr(f"element index {i} out of range for {self.label} (order {self.order})")
        return int(i)

    def element(self, i) -> Element:
        return Element(self.uid, self.idx(i))

    def idx(self, a) -> int:
        """Normalise an :class:`Element` or int to an index of this ring."""
        if isinstance(a, Element):
            if a.ring_id != self.uid:
                raise ForeignElementError(f"element belongs to ring #{a.ring_id}, not {self.label}")
            return a.index
        if isinstance(a, (int, np.integer)) and not isinstance(a, bool):
            return self._check_index(int(a))
        raise TypeError(f"expected an element of {self.label}, got {a!r}")

    def format(self, i) -> str:
        return _format_value(self.value(int(i)))

    def elements(self) -> np.ndarray:
        return np.arange(self.order, dtype=np.int64)

    # -- dense tables -------------------------------------------------------
    def tables(self) -> tuple[np.ndarray, np.ndarray] | None:
        """(add, mul) Cayley tables when ``order <= TABLE_MAX``, else None."""
        if self.order > TABLE_MAX:
            return None
        if self._tables is None:
            with self._lock:
                if self._tables is None:
                    self._tables = self._build_tables()
        return self._tables

    def _build_tables(self) -> tuple[np.ndarray, np.ndarray]:
        n = self.order
        dtype = np.uint16 if n <= 1 << 16 else np.int64
        add_t = np.empty((n, n), dtype=dtype)
        mul_t = np.empty((n, n), dtype=dtype)
        cols = np.arange(n, dtype=np.int64)
        rows_per = max(1, _CHUNK // max(n, 1))
        for start in range(0, n, rows_per):
            stop = min(n, start + rows_per)
            a = np.repeat(np.arange(start, stop, dtype=np.int64), n)
            b = np.tile(cols, stop - start)
            add_t[start:stop] = self._add_raw(a, b).reshape(stop - start, n)
            mul_t[start:stop] = self._mul_raw(a, b).reshape(stop - start, n)
        return add_t, mul_t

    def _binary(self, which: int, a, b):
        if isinstance(a, Element):
            a = self.idx(a)
        if isinstance(b, Element):
            b = self.idx(b)
        tables = self.tables()
        scalar = _is_scalar(a) and _is_scalar(b)
        if tables is not None:
            res = tables[which][a, b]
            return int(res) if scalar else np.asarray(res, dtype=np.int64)
        raw = self._add_raw if which == 0 else self._mul_raw
        if scalar:
            return int(raw(np.asarray([a], dtype=np.int64), np.asarray([b], dtype=np.int64))[0])
        A, B = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        flat_a, flat_b = A.ravel(), B.ravel()
        if flat_a.size > _CHUNK:
            out = np.empty(flat_a.size, dtype=np.int64)
            for s in range(0, flat_a.size, _CHUNK):
                out[s:s + _CHUNK] = raw(flat_a[s:s + _CHUNK], flat_b[s:s + _CHUNK])
        else:
            out = raw(flat_a, flat_b)
        return np.asarray(out, dtype=np.int64).reshape(A.shape)

    # -- public arithmetic --------------------------------------------------
    def add(self, a, b):
        return self._binary(0, a, b)

    def mul(self, a, b):
        return self._binary(1, a, b)

    def neg(self, a):
        if isinstance(a, Element):
            a = self.idx(a)
        if self.order <= _NEG_TABLE_MAX:
            if self._neg_table is None:
                with self._lock:
                    if self._neg_table is None:
                        self._neg_table = np.asarray(self._neg_raw(self.elements()), dtype=np.int64)
            res = self._neg_table[a]
        else:
            res = self._neg_raw(np.asarray(a, dtype=np.int64))
        return int(res) if _is_scalar(a) else np.asarray(res, dtype=np.int64)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def pow(self, a, k: int):
        """``a**k`` for ``k >= 1`` (``k == 0`` gives 1)."""
        if k < 0:
            raise ValueError("negative exponent")
        if isinstance(a, Element):
            a = self.idx(a)
        result = None
        base = a
        while k:
            if k & 1:
                result = base if result is None else self.mul(result, base)
            k >>= 1
            if k:
                base = self.mul(base, base)
        if result is None:
            return self.one if _is_scalar(a) else np.full(np.shape(a), self.one, dtype=np.int64)
        return result

    def times(self, k: int, a):
        """Integer multiple ``k * a`` by double-and-add; ``k`` may be negative."""
        if isinstance(a, Element):
            a = self.idx(a)
        if k < 0:
            return self.times(-k, self.neg(a))
        result = self.zero if _is_scalar(a) else np.full(np.shape(a), self.zero, dtype=np.int64)
        base = a
        while k:
            if k & 1:
                result = self.add(result, base)
            k >>= 1
            if k:
                base = self.add(base, base)
        return result

    def from_int(self, k: int) -> int:
        """The element ``k * 1``."""
        return self.times(k, self.one)

    # -- cached structure ---------------------------------------------------
    def additive_generators(self) -> np.ndarray:
        """Greedy generating set of (R, +), smallest indices first."""
        if "addgens" not in self._cache:
            from .ideals import additive_basis

            self._cache["addgens"] = additive_basis(self, self.elements())
        return self._cache["addgens"]

    def is_commutative(self) -> bool:
        g = self.additive_generators()
        return bool(np.array_equal(self.mul(g[:, None], g[None, :]), self.mul(g[None, :], g[:, None])))

    def __repr__(self) -> str:
        return f"<FiniteRing {self.label} order={self.order}>"

    def __len__(self) -> int:
        return self.order


def _format_value(v) -> str:
    if isinstance(v, tuple):
        return "(" + ", ".join(_format_value(x) for x in v) + ")"
    if isinstance(v, list):
        return "[" + ", ".join(_format_value(x) for x in v) + "]"
    return str(v)


# --------------------------------------------------------------------------
# concrete constructors


class ZModRing(FiniteRing):
    def __init__(self, n: int, expr: RingExpr | None = None):
        super().__init__(n, f"Z/{n}", expr or ZMod(n))
        self.n = n
        self.one = 1 % n

    def _add_raw(self, a, b):
        return (a + b) % self.n

    def _mul_raw(self, a, b):
        return (a * b) % self.n

    def _neg_raw(self, a):
        return (-a) % self.n

    def value(self, i):
        return int(i)


class ProductRing(FiniteRing):
    """Direct product; index is row-major with the first factor most significant."""

    def __init__(self, factors: list[FiniteRing], expr: RingExpr | None = None):
        order = prod(f.order for f in factors)
        label = " x ".join(f"({f.label})" if isinstance(f, ProductRing) else f.label for f in factors)
        super().__init__(order, label, expr)
        self.factors = list(factors)
        strides = []
        s = 1
        for f in reversed(self.factors):
            strides.append(s)
            s *= f.order
        self.strides = list(reversed(strides))
        self.zero = self.compose([f.zero for f in self.factors])
        self.one = self.compose([f.one for f in self.factors])

    def components(self, a):
        a = np.asarray(a, dtype=np.int64)
        return [(a // s) % f.order for s, f in zip(self.strides, self.factors)]

    def compose(self, comps):
        total = 0
        for c, s in zip(comps, self.strides):
            total = total + np.asarray(c, dtype=np.int64) * s
        return int(total) if np.ndim(total) == 0 else total

    def _add_raw(self, a, b):
        return self.compose([f.add(x, y) for f, x, y in zip(self.factors, self.components(a), self.components(b))])

    def _mul_raw(self, a, b):
        return self.compose([f.mul(x, y) for f, x, y in zip(self.factors, self.components(a), self.components(b))])

    def _neg_raw(self, a):
        return self.compose([f.neg(x) for f, x in zip(self.factors, self.components(a))])

    def value(self, i):
        return tuple(f.value(int(c)) for f, c in zip(self.factors, self.components(i)))

    def encode(self, lit):
        if isinstance(lit, TupleLit):
            if len(lit.items) != len(self.factors):
                raise MalformedExpr(f"{lit} has {len(lit.items)} components, {self.label} has {len(self.factors)}")
            return self.compose([f.encode(x) for f, x in zip(self.factors, lit.items)])
        return super().encode(lit)


class MatrixRing(FiniteRing):
    """k x k matrices over ``base`` (upper triangular when ``upper``).

    Index is row-major over the stored entries, first entry most significant.
    """

    def __init__(self, k: int, base: FiniteRing, upper: bool = False, expr: RingExpr | None = None):
        self.k = k
        self.base = base
        self.upper = upper
        self.positions = [(i, j) for i in range(k) for j in range(k) if not upper or i <= j]
        self.slot = {p: n for n, p in enumerate(self.positions)}
        order = base.order ** len(self.positions)
        label = f"{'T' if upper else 'M'}{k}({base.label})"
        super().__init__(order, label, expr)
        q = base.order
        self.strides = [q ** (len(self.positions) - 1 - n) for n in range(len(self.positions))]
        self.zero = self.compose([base.zero] * len(self.positions))
        self.one = self.compose([base.one if i == j else base.zero for i, j in self.positions])

    def entries(self, a):
        a = np.asarray(a, dtype=np.int64)
        q = self.base.order
        return [(a // s) % q for s in self.strides]

    def compose(self, entries):
        total = 0
        for e, s in zip(entries, self.strides):
            total = total + np.asarray(e, dtype=np.int64) * s
        return int(total) if np.ndim(total) == 0 else total

    def _add_raw(self, a, b):
        return self.compose([self.base.add(x, y) for x, y in zip(self.entries(a), self.entries(b))])

    def _neg_raw(self, a):
        return self.compose([self.base.neg(x) for x in self.entries(a)])

    def _mul_raw(self, a, b):
        ea, eb = self.entries(a), self.entries(b)
        base = self.base
        out = []
        for i, l in self.positions:
            acc = None
            for j in range(self.k):
                if (i, j) in self.slot and (j, l) in self.slot:
                    term = base.mul(ea[self.slot[(i, j)]], eb[self.slot[(j, l)]])
                    acc = term if acc is None else base.add(acc, term)
            out.append(acc)
        return self.compose(out)

    def value(self, i):
        ents = [int(e) for e in self.entries(i)]
        rows = []
        for r in range(self.k):
            row = []
            for c in range(self.k):
                n = self.slot.get((r, c))
                row.append(self.base.value(self.base.zero) if n is None else self.base.value(ents[n]))
            rows.append(row)
        return rows

    def encode(self, lit):
        if isinstance(lit, ListLit):
            rows = lit.items
            if len(rows) != self.k or any(not isinstance(r, ListLit) or len(r.items) != self.k for r in rows):
                raise MalformedExpr(f"{lit} is not a {self.k}x{self.k} matrix literal")
            entries = [None] * len(self.positions)
            for r in range(self.k):
                for c in range(self.k):
                    v = self.base.encode(rows[r].items[c])
                    n = self.slot.get((r, c))
                    if n is None:
                        if v != self.base.zero:
                            raise MalformedExpr(f"{lit} is not upper triangular")
                    else:
                        entries[n] = v
            return self.compose(entries)
        return super().encode(lit)


class PolyQuotientRing(FiniteRing):
    """Z/n[x]/(f) for monic f; index lists coefficients c0, c1, ... with c0 most significant."""

    def __init__(self, n: int, modulus: tuple, expr: RingExpr | None = None):
        self.n = n
        self.modulus = tuple(int(c) for c in modulus)
        self.d = len(self.modulus) - 1
        expr = expr or PolyQuotient(n, self.modulus)
        super().__init__(n ** self.d, render(expr), expr)
        self.strides = np.asarray([n ** (self.d - 1 - t) for t in range(self.d)], dtype=np.int64)
        self.one = self.compose([1 % n] + [0] * (self.d - 1))

    def coeffs(self, a) -> np.ndarray:
        return (np.asarray(a, dtype=np.int64)[..., None] // self.strides) % self.n

    def compose(self, c) -> np.ndarray | int:
        total = (np.asarray(c, dtype=np.int64) * self.strides).sum(axis=-1)
        return int(total) if np.ndim(total) == 0 else total

    def _add_raw(self, a, b):
        return self.compose((self.coeffs(a) + self.coeffs(b)) % self.n)

    def _neg_raw(self, a):
        return self.compose((-self.coeffs(a)) % self.n)

    def _mul_raw(self, a, b):
        ca, cb = self.coeffs(a), self.coeffs(b)
        d, n = self.d, self.n
        full = np.zeros(ca.shape[:-1] + (2 * d - 1,), dtype=np.int64)
        for i in range(d):
            full[..., i:i + d] += ca[..., i:i + 1] * cb
            full %= n
        for t in range(2 * d - 2, d - 1, -1):
            top = full[..., t:t + 1]
            full[..., t - d:t] -= top * np.asarray(self.modulus[:d], dtype=np.int64)
            full[..., t] = 0
            full %= n
        return self.compose(full[..., :d])

    def value(self, i):
        return [int(c) for c in self.coeffs(i)]

    def encode(self, lit):
        if isinstance(lit, ListLit):
            if len(lit.items) > self.d or not all(isinstance(c, int) for c in lit.items):
                raise MalformedExpr(f"{lit} is not a coefficient list of length <= {self.d}")
            c = [x % self.n for x in lit.items] + [0] * (self.d - len(lit.items))
            return self.compose(c)
        return super().encode(lit)


class SubsetRing(FiniteRing):
    """A subring of ``parent`` (possibly with its own identity, as for corners).

    Elements are the carrier's parent indices in ascending order; ``embed``
    maps local indices to parent indices.
    """

    def __init__(self, parent: FiniteRing, carrier: np.ndarray, one_in_parent: int | None,
                 label: str, expr: RingExpr | None = None):
        carrier = np.unique(np.asarray(carrier, dtype=np.int64))
        super().__init__(carrier.size, label, expr)
        self.parent = parent
        self.embed = carrier
        self.lookup = np.full(parent.order, -1, dtype=np.int64)
        self.lookup[carrier] = np.arange(carrier.size, dtype=np.int64)
        self.zero = int(self.lookup[parent.zero])
        self.one = None if one_in_parent is None else int(self.lookup[one_in_parent])
        if self.zero < 0 or (self.one is not None and self.one < 0):
            raise MalformedExpr("subring carrier must contain its zero and identity")

    def _add_raw(self, a, b):
        return self.lookup[self.parent.add(self.embed[a], self.embed[b])]

    def _mul_raw(self, a, b):
        return self.lookup[self.parent.mul(self.embed[a], self.embed[b])]

    def _neg_raw(self, a):
        return self.lookup[self.parent.neg(self.embed[a])]

    def value(self, i):
        return self.parent.value(int(self.embed[i]))

    def encode(self, lit):
        if isinstance(lit, int):
            return super().encode(lit)
        j = int(self.lookup[self.parent.encode(lit)])
        if j < 0:
            raise MalformedExpr(f"{lit} is not an element of {self.label}")
        return j


class QuotientRing(FiniteRing):
    """Coset ring R/I; each coset is represented by its smallest parent index."""

    def __init__(self, parent: FiniteRing, ideal_elements: np.ndarray, label: str,
                 expr: RingExpr | None = None):
        ideal_elements = np.unique(np.asarray(ideal_elements, dtype=np.int64))
        proj_rep = np.full(parent.order, -1, dtype=np.int64)
        reps = []
        for x in range(parent.order):
            if proj_rep[x] >= 0:
                continue
            proj_rep[parent.add(x, ideal_elements)] = len(reps)
            reps.append(x)
        super().__init__(len(reps), label, expr)
        self.parent = parent
        self.ideal = ideal_elements
        self.reps = np.asarray(reps, dtype=np.int64)
        self.proj = proj_rep
        self.zero = int(self.proj[parent.zero])
        self.one = int(self.proj[parent.one])

    def _add_raw(self, a, b):
        return self.proj[self.parent.add(self.reps[a], self.reps[b])]

    def _mul_raw(self, a, b):
        return self.proj[self.parent.mul(self.reps[a], self.reps[b])]

    def _neg_raw(self, a):
        return self.proj[self.parent.neg(self.reps[a])]

    def value(self, i):
        return self.parent.value(int(self.reps[i]))

    def encode(self, lit):
        if isinstance(lit, int):
            return super().encode(lit)
        return int(self.proj[self.parent.encode(lit)])


# --------------------------------------------------------------------------
# building from expressions


def expected_order(expr: RingExpr) -> int:
    """Order of the ring ``expr`` denotes, or an upper bound for derived rings."""
    if isinstance(expr, ZMod):
        return expr.n
    if isinstance(expr, Product):
        return prod(expected_order(f) for f in expr.factors)
    if isinstance(expr, Matrix):
        return expected_order(expr.base) ** (expr.k * expr.k)
    if isinstance(expr, UpperTriangular):
        return expected_order(expr.base) ** (expr.k * (expr.k + 1) // 2)
    if isinstance(expr, PolyQuotient):
        return expr.n ** expr.degree
    if isinstance(expr, (Quotient, Subring, Corner)):
        return expected_order(expr.base)
    raise MalformedExpr(f"not a ring expression: {expr!r}")


def build(expr: RingExpr | str, max_order: int = DEFAULT_MAX_ORDER) -> FiniteRing:
    """Construct the finite ring described by ``expr`` (text or tree)."""
    if isinstance(expr, str):
        from .expr import parse_ring_expr

        expr = parse_ring_expr(expr)
    size = expected_order(expr)
    if size > max_order:
        raise OrderOverflow(f"{render(expr)} has order {size} > max {max_order}")
    return _build(expr, max_order)


def _build(expr: RingExpr, max_order: int) -> FiniteRing:
    from . import ideals

    if isinstance(expr, ZMod):
        return ZModRing(expr.n, expr)
    if isinstance(expr, Product):
        return ProductRing([_build(f, max_order) for f in expr.factors], expr)
    if isinstance(expr, Matrix):
        return MatrixRing(expr.k, _build(expr.base, max_order), upper=False, expr=expr)
    if isinstance(expr, UpperTriangular):
        return MatrixRing(expr.k, _build(expr.base, max_order), upper=True, expr=expr)
    if isinstance(expr, PolyQuotient):
        return PolyQuotientRing(expr.n, expr.modulus, expr)
    base = _build(expr.base, max_order)
    if isinstance(expr, Quotient):
        gens = [base.encode(g) for g in expr.gens]
        return ideals.quotient(base, ideals.ideal_generated(base, gens), expr=expr)
    if isinstance(expr, Subring):
        gens = [base.encode(g) for g in expr.gens]
        return ideals.generated_subring(base, gens, include_one=True, expr=expr)
    if isinstance(expr, Corner):
        return ideals.corner(base, base.encode(expr.idem), expr=expr)
    raise MalformedExpr(f"not a ring expression: {expr!r}")


def characteristic(R: FiniteRing) -> int:
    """Additive order of 1."""
    c, x = 1, R.one
    while x != R.zero:
        x = R.add(x, R.one)
        c += 1
    return c


def is_iso_zmod(R: FiniteRing, n: int) -> bool:
    """R is isomorphic to Z/n: a unital ring whose characteristic equals its order
    is additively generated by 1."""
    return R.order == n and characteristic(R) == n


def ring_axiom_failures(R: FiniteRing) -> list[str]:
    """Names of ring axioms violated by R, by exhaustive check over all triples."""
    x = R.elements()
    a, b, c = x[:, None, None], x[None, :, None], x[None, None, :]
    fails = []
    add, mul = R.add, R.mul
    if np.any(R.add(x[:, None], x[None, :]) >= R.order) or np.any(R.mul(x[:, None], x[None, :]) < 0):
        fails.append("closure")
    checks = {
        "add_assoc": lambda: add(add(a, b), c) == add(a, add(b, c)),
        "mul_assoc": lambda: mul(mul(a, b), c) == mul(a, mul(b, c)),
        "left_distrib": lambda: mul(a, add(b, c)) == add(mul(a, b), mul(a, c)),
        "right_distrib": lambda: mul(add(a, b), c) == add(mul(a, c), mul(b, c)),
    }
    for name, check in checks.items():
        if not np.all(check()):
            fails.append(name)
    if not np.array_equal(R.add(x[:, None], x[None, :]), R.add(x[None, :], x[:, None])):
        fails.append("add_comm")
    if not (np.all(R.add(x, R.zero) == x) and np.all(R.add(x, R.neg(x)) == R.zero)):
        fails.append("additive_identity_inverse")
    if R.one is None or not (np.all(R.mul(x, R.one) == x) and np.all(R.mul(R.one, x) == x)):
        fails.append("multiplicative_identity")
    if R.order > 1 and R.one == R.zero:
        fails.append("zero_ne_one")
    return fails
