"""Sparse multivariate polynomials over an exact coefficient field."""

from __future__ import annotations

import re
from operator import add

from ..errors import InputError
from .field import CoeffField
from .groebner import poly_add, poly_mul

VAR_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*")


class PolyRing:
    """k[v_1, ..., v_n] with a fixed variable order."""

    def __init__(self, field: CoeffField, variables):
        self.field = field
        self.variables = tuple(variables)
        if len(set(self.variables)) != len(self.variables):
            raise InputError(f"duplicate variable names in {self.variables}")
        self.index = {v: i for i, v in enumerate(self.variables)}
        self.nvars = len(self.variables)
        self._zero_exp = (0,) * self.nvars

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self.field == other.field and self.variables == other.variables

    def __hash__(self):
        return hash((self.field, self.variables))

    def __repr__(self):
        return f"PolyRing({self.field}, {list(self.variables)})"

    def poly(self, terms: dict) -> "Poly":
        """Polynomial from ``{exponent tuple: coefficient}``; coefficients are coerced, zeros dropped."""
        out = {}
        for e, c in terms.items():
            e = tuple(int(k) for k in e)
            if len(e) != self.nvars or any(k < 0 for k in e):
                raise InputError(f"bad exponent {e} for {self.nvars} variables")
            c = self.field(c)
            if c:
                out[e] = c
        return Poly(self, out)

    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return self.const(1)

    def const(self, c) -> "Poly":
        c = self.field(c)
        return Poly(self, {self._zero_exp: c} if c else {})

    def gen(self, name: str) -> "Poly":
        e = [0] * self.nvars
        e[self.index[name]] = 1
        return Poly(self, {tuple(e): self.field.one})

    def gens(self):
        return [self.gen(v) for v in self.variables]

    def monomial(self, exp) -> "Poly":
        return Poly(self, {tuple(exp): self.field.one})

    def __call__(self, value) -> "Poly":
        if isinstance(value, Poly):
            return value.to_ring(self)
        if isinstance(value, str):
            return parse_poly(value, self)
        return self.const(value)

    def embed(self, f: "Poly") -> "Poly":
        return f.to_ring(self)


class Poly:
    """An element of a :class:`PolyRing`; immutable by convention."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # --- basic queries -------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self):
        return self.terms.get(self.ring._zero_exp, self.ring.field.zero)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def variables_used(self):
        used = set()
        for e in self.terms:
            for i, x in enumerate(e):
                if x:
                    used.add(self.ring.variables[i])
        return used

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int,)):
            return self == self.ring.const(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    # --- arithmetic -----------------------------------------------------
    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise InputError(f"ring mismatch: {self.ring} vs {other.ring}")
            return other
        return self.ring.const(other)

    def __add__(self, other):
        other = self._coerce(other)
        return Poly(self.ring, poly_add(self.terms, other.terms, self.ring.field.p))

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.field.p
        return Poly(self.ring, {e: (-c % p if p else -c) for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        return Poly(self.ring, poly_add(self.terms, other.terms, self.ring.field.p, -1))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = self.ring.field(other)
            p = self.ring.field.p
            if not c:
                return self.ring.zero()
            return Poly(self.ring, {e: (v * c % p if p else v * c) for e, v in self.terms.items()})
        other = self._coerce(other)
        return Poly(self.ring, poly_mul(self.terms, other.terms, self.ring.field.p))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, c) -> "Poly":
        return self * c

    # --- structure ------------------------------------------------------
    def to_ring(self, ring: PolyRing, rename: dict | None = None) -> "Poly":
        """Re-express in another ring by matching variable names (optionally renamed)."""
        if ring == self.ring and not rename:
            return self
        rename = rename or {}
        idx = []
        for v in self.ring.variables:
            target = rename.get(v, v)
            idx.append(ring.index.get(target))
        out: dict = {}
        p = ring.field.p
        for e, c in self.terms.items():
            ne = [0] * ring.nvars
            for i, x in enumerate(e):
                if x:
                    j = idx[i]
                    if j is None:
                        raise InputError(f"variable {self.ring.variables[i]!r} not in {ring.variables}")
                    ne[j] += x
            ne = tuple(ne)
            c = ring.field(c) if ring.field != self.ring.field else c
            v = out.get(ne, 0) + c
            if p:
                v %= p
            if v:
                out[ne] = v
            else:
                out.pop(ne, None)
        return Poly(ring, out)

    def substitute(self, images, ring: PolyRing | None = None) -> "Poly":
        """Evaluate with ``images[i]`` (Polys in a common ring) substituted for variable i."""
        ring = ring or (images[0].ring if images else self.ring)
        if not self.terms:
            return ring.zero()
        p = ring.field.p
        powers: list[dict] = [dict() for _ in images]

        def power(i, k):
            cache = powers[i]
            if k not in cache:
                if k == 0:
                    cache[k] = ring.one()
                elif k == 1:
                    cache[k] = images[i]
                else:
                    h = k // 2
                    cache[k] = power(i, h) * power(i, k - h)
            return cache[k]

        acc: dict = {}
        for e, c in self.terms.items():
            term = {ring._zero_exp: ring.field(c)}
            for i, k in enumerate(e):
                if k:
                    term = poly_mul(term, power(i, k).terms, p)
                    if not term:
                        break
            acc = poly_add(acc, term, p)
        return Poly(ring, acc)

    def evaluate(self, point, add_op, mul_op, pow_op, coerce):
        """Evaluate at a point of an arbitrary commutative ring given by operation callbacks."""
        total = None
        for e, c in self.terms.items():
            val = coerce(c)
            for i, k in enumerate(e):
                if k:
                    val = mul_op(val, pow_op(point[i], k))
            total = val if total is None else add_op(total, val)
        return coerce(0) if total is None else total

    def derivative(self, var: str) -> "Poly":
        i = self.ring.index[var]
        p = self.ring.field.p
        out: dict = {}
        for e, c in self.terms.items():
            k = e[i]
            if not k:
                continue
            v = c * k
            if p:
                v %= p
            if v:
                ne = list(e)
                ne[i] -= 1
                out[tuple(ne)] = v
        return Poly(self.ring, out)

    def monomials(self):
        return list(self.terms)

    # --- printing -------------------------------------------------------
    def sorted_terms(self, order=None):
        from .orders import degrevlex

        order = order or degrevlex(self.ring.nvars)
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Poly({format_poly(self)!r})"


def format_monomial(e, variables) -> str:
    parts = []
    for v, k in zip(variables, e):
        if k == 1:
            parts.append(v)
        elif k:
            parts.append(f"{v}^{k}")
    return "*".join(parts)


def format_poly(f: Poly) -> str:
    if not f.terms:
        return "0"
    out = []
    for e, c in f.sorted_terms():
        mono = format_monomial(e, f.ring.variables)
        neg = False
        if not f.ring.field.p and c < 0:
            neg, c = True, -c
        cs = str(c)
        if mono:
            body = mono if c == 1 else f"{cs}*{mono}"
        else:
            body = cs
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append(("- " if neg else "+ ") + body)
    return " ".join(out)


# --- parser -------------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9_]*)|(\*\*|[-+*/^()]))")


def _tokenize(text: str):
    pos = 0
    toks = []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            raise InputError(f"cannot parse {text!r} at position {pos}")
        num, name, op = m.groups()
        if num is not None:
            toks.append(("num", int(num)))
        elif name is not None:
            toks.append(("name", name))
        else:
            toks.append(("op", "^" if op == "**" else op))
        pos = m.end()
    return toks


def parse_poly(text: str, ring: PolyRing, inverses: dict | None = None) -> Poly:
    """Parse the plain-text grammar: ``3/2*x^2*y - 1``, parentheses allowed.

    ``inverses`` maps a variable name to the name of its inverse variable,
    enabling negative exponents such as ``x^-2``.
    """
    toks = _tokenize(str(text))
    inverses = inverses or {}
    pos = 0
    field = ring.field

    def peek():
        return toks[pos] if pos < len(toks) else (None, None)

    def take():
        nonlocal pos
        t = toks[pos]
        pos += 1
        return t

    def expr():
        sign = 1
        kind, val = peek()
        if (kind, val) == ("op", "-"):
            take()
            sign = -1
        elif (kind, val) == ("op", "+"):
            take()
        acc = term() * sign
        while True:
            kind, val = peek()
            if kind == "op" and val in "+-":
                take()
                t = term()
                acc = acc + t if val == "+" else acc - t
            else:
                return acc

    def term():
        acc = factor()
        while True:
            kind, val = peek()
            if kind == "op" and val == "*":
                take()
                acc = acc * factor()
            elif kind == "op" and val == "/":
                take()
                d = factor()
                if not d.is_constant() or d.is_zero():
                    raise InputError(f"division by non-constant or zero in {text!r}")
                acc = acc * field.inv(d.constant_value())
            elif kind in ("name", "num") or (kind, val) == ("op", "("):
                acc = acc * factor()
            else:
                return acc

    def exponent():
        kind, val = peek()
        neg = False
        if (kind, val) == ("op", "-"):
            take()
            neg = True
            kind, val = peek()
        if kind != "num":
            raise InputError(f"expected integer exponent in {text!r}")
        take()
        return -val if neg else val

    def factor():
        kind, val = peek()
        if kind is None:
            raise InputError(f"unexpected end of {text!r}")
        if kind == "num":
            take()
            base = ring.const(val)
            base_name = None
        elif kind == "name":
            take()
            if val not in ring.index:
                raise InputError(f"unknown variable {val!r} in {text!r}; ring has {list(ring.variables)}")
            base = ring.gen(val)
            base_name = val
        elif (kind, val) == ("op", "("):
            take()
            base = expr()
            if take() != ("op", ")"):
                raise InputError(f"unbalanced parentheses in {text!r}")
            base_name = None
        elif (kind, val) == ("op", "-"):
            take()
            return -factor()
        else:
            raise InputError(f"unexpected {val!r} in {text!r}")
        if peek() == ("op", "^"):
            take()
            k = exponent()
            if k < 0:
                if base_name is None or base_name not in inverses:
                    raise InputError(f"negative exponent on non-inverted factor in {text!r}")
                return ring.gen(inverses[base_name]) ** (-k)
            return base ** k
        return base

    if not toks:
        raise InputError("empty polynomial")
    result = expr()
    if pos != len(toks):
        raise InputError(f"trailing input in {text!r}")
    return result
