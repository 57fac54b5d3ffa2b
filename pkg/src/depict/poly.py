"""Exact multivariate polynomials over Q (or a small prime field).

Polynomials live in a :class:`VarContext` (ordered variable names plus a
coefficient field) and are stored as a tuple of ``(monomial, coefficient)``
pairs sorted strictly descending under a :class:`MonomialOrder`.  Monomials
are plain tuples of nonnegative exponents.

    >>> ctx = VarContext(("x", "y"))
    >>> f = parse_poly("x^2 - x", ctx)
    >>> str(f * parse_poly("y", ctx))
    'x^2*y - x*y'
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence, Union

from gmpy2 import mpq

Monomial = tuple[int, ...]

# exponents are machine-width; anything larger is rejected rather than wrapped
MAX_EXPONENT = 2**63 - 1

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class ParseError(ValueError):
    """Malformed polynomial text; ``pos`` is the 0-based offending offset."""

    def __init__(self, message: str, pos: int, text: str = ""):
        self.pos = pos
        self.text = text
        super().__init__(f"{message} at position {pos}" + (f" in {text!r}" if text else ""))


class UnknownVariableError(ParseError):
    def __init__(self, name: str, pos: int, text: str = ""):
        self.name = name
        super().__init__(f"unknown variable {name!r}", pos, text)


class ContextMismatchError(ValueError):
    pass


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class CoefficientField:
    """Q when ``modulus`` is None, otherwise GF(modulus)."""

    modulus: int | None = None

    def __post_init__(self):
        if self.modulus is not None and not _is_prime(self.modulus):
            raise ValueError(f"field modulus {self.modulus} is not prime")

    @classmethod
    def parse(cls, tag: str) -> "CoefficientField":
        if tag in ("rational", "QQ", "Q"):
            return cls()
        if tag.startswith("fp:"):
            return cls(int(tag[3:]))
        raise ValueError(f"unknown field tag {tag!r}; expected 'rational' or 'fp:<p>'")

    @property
    def tag(self) -> str:
        return "rational" if self.modulus is None else f"fp:{self.modulus}"

    def coerce(self, c):
        p = self.modulus
        if p is None:
            return mpq(c)
        c = mpq(c)
        num = int(c.numerator) % p
        den = int(c.denominator) % p
        if den == 0:
            raise ZeroDivisionError(f"denominator {c.denominator} vanishes mod {p}")
        return num * pow(den, -1, p) % p

    def div(self, a, b):
        p = self.modulus
        if p is None:
            return a / b
        return a * pow(b, -1, p) % p


QQ = CoefficientField()


@dataclass(frozen=True)
class VarContext:
    names: tuple[str, ...]
    field: CoefficientField = QQ

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if not names:
            raise ValueError("variable context needs at least one variable")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        for n in names:
            if not _NAME_RE.match(n):
                raise ValueError(f"invalid variable name {n!r}")

    @property
    def nvars(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(name) from None

    def fresh(self, base: str, taken: Iterable[str] = ()) -> str:
        """A variable name not present in this context (nor in ``taken``)."""
        used = set(self.names) | set(taken)
        if base not in used:
            return base
        i = 0
        while f"{base}{i}" in used:
            i += 1
        return f"{base}{i}"

    def extend(self, extra: Sequence[str], front: bool = False) -> "VarContext":
        names = tuple(extra) + self.names if front else self.names + tuple(extra)
        return VarContext(names, self.field)

    def one(self) -> "Polynomial":
        return Polynomial.constant(self, 1)

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def var(self, name: str) -> "Polynomial":
        e = [0] * self.nvars
        e[self.index(name)] = 1
        return Polynomial(self, {tuple(e): 1})

    def gens(self) -> list["Polynomial"]:
        return [self.var(n) for n in self.names]


# ---------------------------------------------------------------------------
# monomial orders


@dataclass(frozen=True)
class MonomialOrder:
    """``lex``, ``grevlex``, or ``block`` (grevlex on the first ``split``
    variables, ties broken by grevlex on the rest)."""

    kind: str = "grevlex"
    split: int = 0

    def __post_init__(self):
        if self.kind not in ("lex", "grevlex", "block"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.kind == "block" and self.split < 0:
            raise ValueError("block split index must be nonnegative")

    def key(self, m: Monomial) -> tuple[int, ...]:
        """Flat integer key; larger key means larger monomial."""
        kind = self.kind
        if kind == "lex":
            return m
        if kind == "grevlex":
            return (sum(m),) + tuple(-e for e in reversed(m))
        k = self.split
        if k > len(m):
            raise ValueError(f"block split {k} exceeds arity {len(m)}")
        a, b = m[:k], m[k:]
        return (sum(a),) + tuple(-e for e in reversed(a)) + (sum(b),) + tuple(-e for e in reversed(b))

    def __str__(self) -> str:
        return f"block({self.split})" if self.kind == "block" else self.kind


LEX = MonomialOrder("lex")
GREVLEX = MonomialOrder("grevlex")


def block_order(split: int) -> MonomialOrder:
    return MonomialOrder("block", split)


def compare_monomials(a: Monomial, b: Monomial, order: MonomialOrder) -> int:
    """-1, 0 or 1 as ``a`` is smaller than, equal to, or larger than ``b``."""
    if len(a) != len(b):
        raise ValueError(f"arity mismatch: {len(a)} vs {len(b)}")
    ka, kb = order.key(a), order.key(b)
    return (ka > kb) - (ka < kb)


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x if x > y else y for x, y in zip(a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def _check_exponents(m: Monomial) -> Monomial:
    for e in m:
        if e < 0:
            raise ValueError(f"negative exponent in {m}")
        if e > MAX_EXPONENT:
            raise OverflowError(f"exponent {e} exceeds machine width")
    return m


# ---------------------------------------------------------------------------
# polynomials

Coeff = Union[int, "mpq"]


class Polynomial:
    """Immutable polynomial; ``terms`` is sorted descending under ``order``."""

    __slots__ = ("ctx", "order", "terms", "_dict", "_hash")

    def __init__(self, ctx: VarContext, terms: Mapping[Monomial, Coeff] | Iterable[tuple[Monomial, Coeff]],
                 order: MonomialOrder = GREVLEX, _trusted: bool = False):
        self.ctx = ctx
        self.order = order
        if _trusted:
            d = terms
        else:
            items = terms.items() if isinstance(terms, Mapping) else terms
            d = {}
            field = ctx.field
            n = ctx.nvars
            for m, c in items:
                m = tuple(m)
                if len(m) != n:
                    raise ValueError(f"monomial {m} has arity {len(m)}, context has {n}")
                _check_exponents(m)
                c = field.coerce(c) + d.get(m, 0)
                if field.modulus is not None:
                    c %= field.modulus
                if c:
                    d[m] = c
                else:
                    d.pop(m, None)
        self._dict = d
        key = order.key
        self.terms = tuple(sorted(d.items(), key=lambda t: key(t[0]), reverse=True))
        self._hash = None

    @classmethod
    def constant(cls, ctx: VarContext, c) -> "Polynomial":
        return cls(ctx, {(0,) * ctx.nvars: c})

    @classmethod
    def monomial(cls, ctx: VarContext, exps: Sequence[int], c=1) -> "Polynomial":
        return cls(ctx, {tuple(exps): c})

    @classmethod
    def _raw(cls, ctx, d, order=GREVLEX) -> "Polynomial":
        return cls(ctx, d, order, _trusted=True)

    # -- basic accessors

    def as_dict(self) -> dict[Monomial, Coeff]:
        return dict(self._dict)

    def is_zero(self) -> bool:
        return not self._dict

    def __bool__(self) -> bool:
        return bool(self._dict)

    def __len__(self) -> int:
        return len(self._dict)

    def is_constant(self) -> bool:
        return not self._dict or (len(self._dict) == 1 and not any(next(iter(self._dict))))

    def leading_monomial(self) -> Monomial:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return self.terms[0][0]

    def leading_coefficient(self):
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return self.terms[0][1]

    def total_degree(self) -> int:
        return max((sum(m) for m in self._dict), default=-1)

    def support(self) -> set[str]:
        """Names of the variables actually occurring."""
        used = set()
        for m in self._dict:
            used.update(i for i, e in enumerate(m) if e)
        return {self.ctx.names[i] for i in sorted(used)}

    def with_order(self, order: MonomialOrder) -> "Polynomial":
        if order == self.order:
            return self
        return Polynomial._raw(self.ctx, self._dict, order)

    def monic(self) -> "Polynomial":
        if not self._dict:
            return self
        lc = self.leading_coefficient()
        return self.scale(self.ctx.field.div(1, lc))

    # -- arithmetic

    def _check(self, other: "Polynomial"):
        if self.ctx != other.ctx:
            raise ContextMismatchError(f"context mismatch: {self.ctx.names} vs {other.ctx.names}")

    def _coerce_operand(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, type(mpq(0)))):
            return Polynomial.constant(self.ctx, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce_operand(other)
        if other is NotImplemented:
            return other
        return self._combine(other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce_operand(other)
        if other is NotImplemented:
            return other
        return self._combine(other, -1)

    def __rsub__(self, other):
        other = self._coerce_operand(other)
        if other is NotImplemented:
            return other
        return other._combine(self, -1)

    def __neg__(self):
        return self.scale(-1)

    def _combine(self, other: "Polynomial", sign: int) -> "Polynomial":
        d = dict(self._dict)
        p = self.ctx.field.modulus
        for m, c in other._dict.items():
            v = d.get(m, 0) + sign * c
            if p is not None:
                v %= p
            if v:
                d[m] = v
            else:
                d.pop(m, None)
        return Polynomial._raw(self.ctx, d, self.order)

    def scale(self, c) -> "Polynomial":
        c = self.ctx.field.coerce(c)
        if not c:
            return Polynomial._raw(self.ctx, {}, self.order)
        p = self.ctx.field.modulus
        if p is None:
            d = {m: v * c for m, v in self._dict.items()}
        else:
            d = {m: v * c % p for m, v in self._dict.items()}
        return Polynomial._raw(self.ctx, d, self.order)

    def __mul__(self, other):
        other = self._coerce_operand(other)
        if other is NotImplemented:
            return other
        if not self._dict or not other._dict:
            return Polynomial._raw(self.ctx, {}, self.order)
        a = max(max(m) for m in self._dict)
        b = max(max(m) for m in other._dict)
        if a + b > MAX_EXPONENT:
            raise OverflowError("exponent overflow in polynomial product")
        p = self.ctx.field.modulus
        d: dict = {}
        for m1, c1 in self._dict.items():
            for m2, c2 in other._dict.items():
                m = tuple(x + y for x, y in zip(m1, m2))
                d[m] = d.get(m, 0) + c1 * c2
        if p is not None:
            d = {m: v % p for m, v in d.items()}
        d = {m: v for m, v in d.items() if v}
        return Polynomial._raw(self.ctx, d, self.order)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Polynomial":
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = self.ctx.one().with_order(self.order)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def mul_term(self, m: Monomial, c) -> "Polynomial":
        p = self.ctx.field.modulus
        d = {}
        for m1, c1 in self._dict.items():
            v = c1 * c
            if p is not None:
                v %= p
            d[tuple(x + y for x, y in zip(m1, m))] = v
        return Polynomial._raw(self.ctx, d, self.order)

    # -- comparison / hashing

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.ctx == other.ctx and self._dict == other._dict
        if isinstance(other, int):
            return self == Polynomial.constant(self.ctx, other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ctx, frozenset(self._dict.items())))
        return self._hash

    # -- context changes

    def to_context(self, ctx: VarContext, order: MonomialOrder | None = None) -> "Polynomial":
        """Re-express in ``ctx`` by variable name; every variable that occurs
        must exist in ``ctx``."""
        if ctx == self.ctx:
            return self if order is None else self.with_order(order)
        src = self.ctx.names
        pos = []
        for i, name in enumerate(src):
            if name in ctx.names:
                pos.append(ctx.names.index(name))
            else:
                pos.append(-1)
        n = ctx.nvars
        d = {}
        for m, c in self._dict.items():
            e = [0] * n
            for i, k in enumerate(m):
                if k:
                    j = pos[i]
                    if j < 0:
                        raise ContextMismatchError(f"variable {src[i]!r} not in target context {ctx.names}")
                    e[j] = k
            d[tuple(e)] = c
        if ctx.field != self.ctx.field:
            return Polynomial(ctx, d, order or self.order)
        return Polynomial._raw(ctx, d, order or self.order)

    def rename(self, mapping: Mapping[str, str], ctx: VarContext) -> "Polynomial":
        """Rename variables via ``mapping`` (missing names keep their name)."""
        src = self.ctx.names
        pos = [ctx.index(mapping.get(name, name)) for name in src]
        d = {}
        for m, c in self._dict.items():
            e = [0] * ctx.nvars
            for i, k in enumerate(m):
                if k:
                    e[pos[i]] += k
            d[tuple(e)] = c
        return Polynomial._raw(ctx, d, self.order)

    def substitute(self, images: Sequence["Polynomial"]) -> "Polynomial":
        """Evaluate at ``images`` (one polynomial per variable, all in one context)."""
        if len(images) != self.ctx.nvars:
            raise ValueError("need one image per variable")
        if not images:
            raise ValueError("no images")
        tctx = images[0].ctx
        powers: list[dict[int, Polynomial]] = [{0: tctx.one()} for _ in images]

        def power(i: int, k: int) -> Polynomial:
            cache = powers[i]
            if k not in cache:
                cache[k] = power(i, k - 1) * images[i]
            return cache[k]

        acc: dict = {}
        p = tctx.field.modulus
        for m, c in self._dict.items():
            term = Polynomial.constant(tctx, c)
            for i, k in enumerate(m):
                if k:
                    term = term * power(i, k)
            for mm, cc in term._dict.items():
                acc[mm] = acc.get(mm, 0) + cc
        if p is not None:
            acc = {m: v % p for m, v in acc.items()}
        return Polynomial._raw(tctx, {m: v for m, v in acc.items() if v})

    def evaluate(self, point: Mapping[str, Coeff]):
        total = 0
        for m, c in self._dict.items():
            v = c
            for i, k in enumerate(m):
                if k:
                    v *= mpq(point[self.ctx.names[i]]) ** k
            total += v
        return self.ctx.field.coerce(total)

    # -- printing

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"Polynomial({format_poly(self)!r}, vars={list(self.ctx.names)})"


def _format_monomial(m: Monomial, names: Sequence[str]) -> str:
    parts = []
    for name, e in zip(names, m):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_poly(f: Polynomial) -> str:
    if not f.terms:
        return "0"
    out = []
    for i, (m, c) in enumerate(f.terms):
        neg = f.ctx.field.modulus is None and c < 0
        a = -c if neg else c
        mono = _format_monomial(m, f.ctx.names)
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        if i == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


# ---------------------------------------------------------------------------
# parsing

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\*\*|[-+*/^()]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    toks = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos, text)
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            toks.append(("num", m.group(1), start))
        elif m.group(2) is not None:
            toks.append(("name", m.group(2), start))
        else:
            op = m.group(3)
            toks.append(("op", "^" if op == "**" else op, start))
        pos = m.end()
    toks.append(("end", "", n))
    return toks


class _Parser:
    def __init__(self, text: str, ctx: VarContext):
        self.text = text
        self.ctx = ctx
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, value: str):
        t = self.take()
        if t[0] != "op" or t[1] != value:
            raise ParseError(f"expected {value!r}", t[2], self.text)

    def parse(self) -> Polynomial:
        if self.peek()[0] == "end":
            raise ParseError("empty expression", 0, self.text)
        f = self.expr()
        t = self.peek()
        if t[0] != "end":
            raise ParseError(f"unexpected token {t[1]!r}", t[2], self.text)
        return f

    def expr(self) -> Polynomial:
        f = self.term()
        while True:
            t = self.peek()
            if t[0] == "op" and t[1] in "+-":
                self.take()
                g = self.term()
                f = f + g if t[1] == "+" else f - g
            else:
                return f

    def term(self) -> Polynomial:
        f = self.unary()
        while True:
            t = self.peek()
            if t[0] == "op" and t[1] == "*":
                self.take()
                f = f * self.unary()
            else:
                return f

    def unary(self) -> Polynomial:
        t = self.peek()
        if t[0] == "op" and t[1] in "+-":
            self.take()
            f = self.unary()
            return -f if t[1] == "-" else f
        return self.power()

    def power(self) -> Polynomial:
        base = self.atom()
        t = self.peek()
        if t[0] == "op" and t[1] == "^":
            self.take()
            e = self.take()
            if e[0] != "num":
                raise ParseError("exponent must be a nonnegative integer literal", e[2], self.text)
            k = int(e[1])
            if k > MAX_EXPONENT:
                raise OverflowError(f"exponent {k} exceeds machine width")
            return base ** k
        return base

    def atom(self) -> Polynomial:
        t = self.take()
        kind, val, pos = t
        if kind == "num":
            c = mpq(int(val))
            nt = self.peek()
            if nt[0] == "op" and nt[1] == "/":
                self.take()
                d = self.take()
                if d[0] != "num":
                    raise ParseError("expected integer denominator", d[2], self.text)
                if int(d[1]) == 0:
                    raise ParseError("zero denominator", d[2], self.text)
                c = mpq(int(val), int(d[1]))
            return Polynomial.constant(self.ctx, c)
        if kind == "name":
            if val not in self.ctx.names:
                raise UnknownVariableError(val, pos, self.text)
            return self.ctx.var(val)
        if kind == "op" and val == "(":
            f = self.expr()
            self.expect(")")
            return f
        if kind == "end":
            raise ParseError("unexpected end of expression", pos, self.text)
        raise ParseError(f"unexpected token {val!r}", pos, self.text)


def parse_poly(text: str, ctx: VarContext) -> Polynomial:
    """Parse ``text`` (``+ - * ^``, parentheses, integer and ``a/b``
    coefficients) into a canonical polynomial over ``ctx``."""
    return _Parser(text, ctx).parse()


def arith(f: Polynomial, g: Polynomial, op: str) -> Polynomial:
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    raise ValueError(f"unknown operation {op!r}")
