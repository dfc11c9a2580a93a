"""Exact scalars: rationals, sparse multivariate polynomials, rational functions.

Rationals are ``gmpy2.mpq``.  A :class:`Poly` lives in a fixed number of
variables ``x0 .. x{nvars-1}`` and stores its terms in a dict keyed by a
packed monomial (16 bits per exponent), so monomial multiplication is a
single integer addition.  :class:`RatFunc` keeps its denominator as a
product of primitive polynomial factors with multiplicities; this keeps
the Christoffel/Riemann pipeline from multiplying denominators out.
"""

from __future__ import annotations

import re
from collections.abc import Iterable, Mapping, Sequence
from functools import reduce
from math import comb, gcd

import gmpy2
from gmpy2 import mpq

Rational = type(mpq(0))

_BITS = 16
_MASK = (1 << _BITS) - 1


class EvaluationError(ArithmeticError):
    """A rational function has a pole at the requested point."""


class ParseError(ValueError):
    pass


def Q(value, den=None) -> Rational:
    """Coerce ``value`` (int, str ``"p/q"``, Fraction, mpq) to an exact rational."""
    if den is not None:
        return mpq(value, den)
    if isinstance(value, Rational):
        return value
    if isinstance(value, float):
        raise TypeError("floating point values are not accepted")
    if isinstance(value, str):
        return mpq(value.strip())
    return mpq(value)


def fmt_q(q) -> str:
    q = Q(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _pack(exps: Sequence[int]) -> int:
    m = 0
    for i, e in enumerate(exps):
        if e < 0:
            raise ValueError("negative exponent")
        if e > _MASK:
            raise OverflowError("exponent too large")
        m |= e << (_BITS * i)
    return m


def _unpack(m: int, nvars: int) -> tuple[int, ...]:
    return tuple((m >> (_BITS * i)) & _MASK for i in range(nvars))


def _exp(m: int, i: int) -> int:
    return (m >> (_BITS * i)) & _MASK


def _mdeg(m: int) -> int:
    d = 0
    while m:
        d += m & _MASK
        m >>= _BITS
    return d


class Poly:
    """Sparse polynomial over Q in ``nvars`` variables.  Immutable."""

    __slots__ = ("nvars", "_t", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Sequence[int], object] | None = None):
        self.nvars = nvars
        t: dict[int, Rational] = {}
        if terms:
            for exps, c in terms.items():
                if len(exps) != nvars:
                    raise ValueError(f"exponent tuple {exps} does not have {nvars} entries")
                c = Q(c)
                if c:
                    m = _pack(exps)
                    s = t.get(m, 0) + c
                    if s:
                        t[m] = s
                    else:
                        t.pop(m, None)
        self._t = t
        self._hash = None

    @classmethod
    def _raw(cls, nvars: int, t: dict[int, Rational]) -> Poly:
        p = cls.__new__(cls)
        p.nvars = nvars
        p._t = t
        p._hash = None
        return p

    @classmethod
    def zero(cls, nvars: int) -> Poly:
        return cls._raw(nvars, {})

    @classmethod
    def const(cls, nvars: int, c) -> Poly:
        c = Q(c)
        return cls._raw(nvars, {0: c} if c else {})

    @classmethod
    def var(cls, nvars: int, i: int, power: int = 1) -> Poly:
        if not 0 <= i < nvars:
            raise IndexError(f"variable x{i} out of range for {nvars} variables")
        return cls._raw(nvars, {power << (_BITS * i): mpq(1)})

    @classmethod
    def monomial(cls, nvars: int, exps: Sequence[int], c=1) -> Poly:
        return cls(nvars, {tuple(exps): c})

    # ---- inspection -------------------------------------------------
    @property
    def terms(self) -> dict[tuple[int, ...], Rational]:
        return {_unpack(m, self.nvars): c for m, c in self._t.items()}

    def __len__(self) -> int:
        return len(self._t)

    def is_zero(self) -> bool:
        return not self._t

    def __bool__(self) -> bool:
        return bool(self._t)

    def is_constant(self) -> bool:
        return not self._t or (len(self._t) == 1 and 0 in self._t)

    def constant_term(self) -> Rational:
        return self._t.get(0, mpq(0))

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((_mdeg(m) for m in self._t), default=-1)

    def degree_in(self, i: int) -> int:
        return max((_exp(m, i) for m in self._t), default=-1)

    def degree_in_vars(self, idx: Iterable[int]) -> int:
        idx = list(idx)
        return max((sum(_exp(m, i) for i in idx) for m in self._t), default=-1)

    def variables(self) -> set[int]:
        out = set()
        for m in self._t:
            for i in range(self.nvars):
                if _exp(m, i):
                    out.add(i)
        return out

    def coefficients(self):
        return self._t.values()

    # ---- ring operations -------------------------------------------
    def _check(self, other: Poly) -> None:
        if other.nvars != self.nvars:
            raise ValueError(f"mismatched nvars: {self.nvars} vs {other.nvars}")

    def _coerce(self, other) -> Poly | None:
        if isinstance(other, Poly):
            self._check(other)
            return other
        if isinstance(other, (int, Rational)):
            return Poly.const(self.nvars, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o._t:
            return self
        if not self._t:
            return o
        t = dict(self._t)
        for m, c in o._t.items():
            s = t.get(m)
            if s is None:
                t[m] = c
            else:
                s = s + c
                if s:
                    t[m] = s
                else:
                    del t[m]
        return Poly._raw(self.nvars, t)

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly._raw(self.nvars, {m: -c for m, c in self._t.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def scale(self, c) -> Poly:
        c = Q(c)
        if not c:
            return Poly.zero(self.nvars)
        return Poly._raw(self.nvars, {m: v * c for m, v in self._t.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Rational)):
            return self.scale(other)
        if not isinstance(other, Poly):
            return NotImplemented
        self._check(other)
        a, b = self._t, other._t
        if not a or not b:
            return Poly.zero(self.nvars)
        if len(a) < len(b):
            a, b = b, a
        t: dict[int, Rational] = {}
        get = t.get
        for mb, cb in b.items():
            for ma, ca in a.items():
                m = ma + mb
                s = get(m)
                t[m] = ca * cb if s is None else s + ca * cb
        return Poly._raw(self.nvars, {m: c for m, c in t.items() if c})

    def __rmul__(self, other):
        if isinstance(other, (int, Rational)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int) -> Poly:
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out = Poly.const(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)):
            if not other:
                raise ZeroDivisionError("division by zero")
            return self.scale(1 / Q(other))
        if isinstance(other, Poly):
            return RatFunc(self, other)
        if isinstance(other, RatFunc):
            return RatFunc.from_poly(self) / other
        return NotImplemented

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self._t == other._t
        if isinstance(other, (int, Rational)):
            return self.is_constant() and self.constant_term() == other
        if isinstance(other, RatFunc):
            return other == self
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._t.items())))
        return self._hash

    # ---- calculus ---------------------------------------------------
    def diff(self, i: int) -> Poly:
        if not 0 <= i < self.nvars:
            raise IndexError(f"coordinate index {i} out of range for {self.nvars} variables")
        shift = _BITS * i
        one = 1 << shift
        t = {}
        for m, c in self._t.items():
            e = (m >> shift) & _MASK
            if e:
                t[m - one] = c * e
        return Poly._raw(self.nvars, t)

    def laplacian(self, indices: Iterable[int]) -> Poly:
        out = Poly.zero(self.nvars)
        for i in indices:
            out = out + self.diff(i).diff(i)
        return out

    def evaluate(self, point: Sequence) -> Rational:
        if len(point) != self.nvars:
            raise ValueError(f"point has {len(point)} coordinates, expected {self.nvars}")
        pt = [Q(v) for v in point]
        total = mpq(0)
        for m, c in self._t.items():
            v = c
            i = 0
            while m:
                e = m & _MASK
                if e:
                    v *= pt[i] ** e
                m >>= _BITS
                i += 1
            total += v
        return total

    def truncate(self, deg: int) -> Poly:
        return Poly._raw(self.nvars, {m: c for m, c in self._t.items() if _mdeg(m) <= deg})

    def taylor(self, point: Sequence, deg: int) -> Poly:
        """Expansion about ``point`` in shifted variables, truncated at total degree ``deg``."""
        pt = [Q(v) for v in point]
        n = self.nvars
        t: dict[int, Rational] = {}
        for m, c in self._t.items():
            # per variable: list of (packed shifted monomial, coefficient)
            parts = [(0, c)]
            for i in range(n):
                e = _exp(m, i)
                if not e:
                    continue
                a = pt[i]
                choices = []
                for k in range(0, min(e, deg) + 1):
                    coef = comb(e, k) * (a ** (e - k) if e - k else 1)
                    if coef:
                        choices.append((k << (_BITS * i), k, coef))
                new = []
                for pm, pc in parts:
                    pd = _mdeg(pm)
                    for km, k, kc in choices:
                        if pd + k <= deg:
                            new.append((pm + km, pc * kc))
                parts = new
                if not parts:
                    break
            for pm, pc in parts:
                s = t.get(pm, 0) + pc
                if s:
                    t[pm] = s
                else:
                    t.pop(pm, None)
        return Poly._raw(n, t)

    def mul_trunc(self, other: Poly, deg: int) -> Poly:
        """Product truncated at total degree ``deg``."""
        t: dict[int, Rational] = {}
        b = [(m, c, _mdeg(m)) for m, c in other._t.items()]
        for ma, ca in self._t.items():
            da = _mdeg(ma)
            if da > deg:
                continue
            for mb, cb, db in b:
                if da + db <= deg:
                    m = ma + mb
                    t[m] = t.get(m, 0) + ca * cb
        return Poly._raw(self.nvars, {m: c for m, c in t.items() if c})

    def substitute(self, values: Mapping[int, object]) -> Poly:
        """Replace some variables by rational constants."""
        vals = {i: Q(v) for i, v in values.items()}
        t: dict[int, Rational] = {}
        for m, c in self._t.items():
            for i, a in vals.items():
                e = _exp(m, i)
                if e:
                    c = c * a**e
                    m -= e << (_BITS * i)
            if c:
                s = t.get(m, 0) + c
                if s:
                    t[m] = s
                else:
                    t.pop(m, None)
        return Poly._raw(self.nvars, t)

    def coefficient_in(self, i: int, power: int) -> Poly:
        """Coefficient of ``x_i**power`` viewed as a polynomial in the remaining variables."""
        shift = _BITS * i
        t = {}
        for m, c in self._t.items():
            if ((m >> shift) & _MASK) == power:
                t[m - (power << shift)] = c
        return Poly._raw(self.nvars, t)

    # ---- content / ordering -----------------------------------------
    def _key(self, m: int):
        e = _unpack(m, self.nvars)
        return (sum(e), e[::-1])

    def sorted_monomials(self) -> list[int]:
        """Packed monomials in descending graded-lex order (x_{n-1} > ... > x_0)."""
        return sorted(self._t, key=self._key, reverse=True)

    def leading_coefficient(self) -> Rational:
        if not self._t:
            return mpq(0)
        return self._t[max(self._t, key=self._key)]

    def content(self) -> Rational:
        """Positive rational c with self/c having coprime integer coefficients."""
        if not self._t:
            return mpq(1)
        nums = [c.numerator for c in self._t.values()]
        dens = [c.denominator for c in self._t.values()]
        g = reduce(gcd, (abs(int(x)) for x in nums))
        l = reduce(lambda a, b: a * b // gcd(a, b), (int(d) for d in dens))
        return mpq(g, l)

    def primitive(self) -> tuple[Rational, Poly]:
        """(c, p) with self = c*p, p integral, coprime, positive leading coefficient."""
        if not self._t:
            return mpq(0), self
        c = self.content()
        if self.leading_coefficient() < 0:
            c = -c
        return c, self.scale(1 / c)

    def divexact(self, other: Poly) -> Poly | None:
        """Exact quotient self/other, or None if other does not divide self."""
        self._check(other)
        if not other._t:
            raise ZeroDivisionError("division by the zero polynomial")
        if not self._t:
            return self
        lm = max(other._t, key=other._key)
        lc = other._t[lm]
        lexp = _unpack(lm, self.nvars)
        rem = dict(self._t)
        q: dict[int, Rational] = {}
        key = self._key
        while rem:
            m = max(rem, key=key)
            e = _unpack(m, self.nvars)
            if any(a < b for a, b in zip(e, lexp)):
                return None
            qm = m - lm
            qc = rem[m] / lc
            q[qm] = qc
            for om, oc in other._t.items():
                k = om + qm
                s = rem.get(k, 0) - qc * oc
                if s:
                    rem[k] = s
                else:
                    rem.pop(k, None)
        return Poly._raw(self.nvars, q)

    # ---- text -------------------------------------------------------
    def __str__(self) -> str:
        if not self._t:
            return "0"
        out = []
        for m in self.sorted_monomials():
            c = self._t[m]
            e = _unpack(m, self.nvars)
            factors = [f"x{i}" if k == 1 else f"x{i}^{k}" for i, k in enumerate(e) if k]
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not factors:
                body = fmt_q(a)
            elif a == 1:
                body = "*".join(factors)
            else:
                body = fmt_q(a) + "*" + "*".join(factors)
            out.append((sign, body))
        s = ("-" if out[0][0] == "-" else "") + out[0][1]
        for sign, body in out[1:]:
            s += f" {sign} {body}"
        return s

    def __repr__(self) -> str:
        return f"Poly({self.nvars}, '{self}')"

    @classmethod
    def parse(cls, text: str, nvars: int) -> Poly:
        return parse_poly(text, nvars)


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<var>x\d+)|(?P<op>[-+*/^()]))")


def _tokenize(text: str) -> list[tuple[str, str]]:
    pos = 0
    toks = []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character at {pos} in {text!r}")
        kind = m.lastgroup
        toks.append((kind, m.group(kind)))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return toks


def parse_poly(text: str, nvars: int) -> Poly:
    """Parse ``[sign] term {(+|-) term}`` with ``term := coef {* factor} | factor {* factor}``."""
    toks = _tokenize(text)
    if not toks:
        raise ParseError("empty polynomial")
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else (None, None)

    def take_factor(exps):
        nonlocal pos
        kind, val = peek()
        if kind != "var":
            raise ParseError(f"expected a variable in {text!r}")
        idx = int(val[1:])
        if idx >= nvars:
            raise ParseError(f"variable {val} out of range for {nvars} variables")
        pos += 1
        e = 1
        if peek() == ("op", "^"):
            pos += 1
            kind, val = peek()
            if kind != "num":
                raise ParseError(f"bad exponent in {text!r}")
            e = int(val)
            pos += 1
        exps[idx] += e

    result = Poly.zero(nvars)
    sign = 1
    if peek() in (("op", "-"), ("op", "+")):
        sign = -1 if peek()[1] == "-" else 1
        pos += 1
    while True:
        coef = mpq(1)
        exps = [0] * nvars
        kind, val = peek()
        if kind == "num":
            pos += 1
            num = int(val)
            den = 1
            if peek() == ("op", "/"):
                pos += 1
                kind, val = peek()
                if kind != "num" or int(val) == 0:
                    raise ParseError(f"bad denominator in {text!r}")
                den = int(val)
                pos += 1
            coef = mpq(num, den)
        elif kind == "var":
            take_factor(exps)
        else:
            raise ParseError(f"expected a term in {text!r}")
        while peek() == ("op", "*"):
            pos += 1
            take_factor(exps)
        result = result + Poly(nvars, {tuple(exps): sign * coef})
        kind, val = peek()
        if kind is None:
            return result
        if (kind, val) not in (("op", "+"), ("op", "-")):
            raise ParseError(f"unexpected token {val!r} in {text!r}")
        sign = 1 if val == "+" else -1
        pos += 1


# ---------------------------------------------------------------------------
# rational functions
# ---------------------------------------------------------------------------


def _as_factor(p: Poly) -> tuple[Rational, Poly]:
    """Split p into a rational unit and a primitive base with positive leading coefficient."""
    return p.primitive()


class RatFunc:
    """Quotient ``num / prod(base**exp)`` of polynomials.  Immutable.

    Bases are primitive integer polynomials with positive leading
    coefficient; constants are folded into ``num``.  Nothing is cancelled
    automatically beyond that (see :meth:`simplify`), so use ``==`` (which
    cross-multiplies) rather than comparing ``num``/``den`` fields.
    """

    __slots__ = ("num", "_factors")

    def __init__(self, num: Poly, den: Poly | None = None):
        if den is None:
            self.num = num
            self._factors = ()
            return
        num._check(den)
        if den.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        c, base = _as_factor(den)
        num = num.scale(1 / c)
        self.num = num
        self._factors = () if base.is_constant() or num.is_zero() else ((base, 1),)

    @classmethod
    def _raw(cls, num: Poly, factors) -> RatFunc:
        r = cls.__new__(cls)
        r.num = num
        r._factors = () if num.is_zero() else tuple(factors)
        return r

    @classmethod
    def from_poly(cls, p: Poly) -> RatFunc:
        return cls._raw(p, ())

    @property
    def nvars(self) -> int:
        return self.num.nvars

    @property
    def factors(self) -> tuple[tuple[Poly, int], ...]:
        return self._factors

    @property
    def den(self) -> Poly:
        out = Poly.const(self.nvars, 1)
        for b, e in self._factors:
            out = out * b**e
        return out

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def is_poly(self) -> bool:
        return not self._factors

    def to_poly(self) -> Poly:
        """Polynomial value, cancelling denominators when they divide exactly."""
        r = self.simplify()
        if r._factors:
            raise ValueError(f"{self} is not a polynomial")
        return r.num

    def _coerce(self, other) -> RatFunc | None:
        if isinstance(other, RatFunc):
            self.num._check(other.num)
            return other
        if isinstance(other, Poly):
            self.num._check(other)
            return RatFunc._raw(other, ())
        if isinstance(other, (int, Rational)):
            return RatFunc._raw(Poly.const(self.nvars, other), ())
        return None

    @staticmethod
    def _merge(fa, fb):
        d = {}
        for b, e in fa:
            d[b] = d.get(b, 0) + e
        for b, e in fb:
            d[b] = d.get(b, 0) + e
        return d

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.num.is_zero():
            return self
        if self.num.is_zero():
            return o
        da = dict(self._factors)
        db = dict(o._factors)
        if da == db:
            return RatFunc._raw(self.num + o.num, self._factors)
        lcm = dict(da)
        for b, e in db.items():
            lcm[b] = max(lcm.get(b, 0), e)
        na = self.num
        for b, e in lcm.items():
            k = e - da.get(b, 0)
            if k:
                na = na * b**k
        nb = o.num
        for b, e in lcm.items():
            k = e - db.get(b, 0)
            if k:
                nb = nb * b**k
        return RatFunc._raw(na + nb, tuple(lcm.items()))

    __radd__ = __add__

    def __neg__(self) -> RatFunc:
        return RatFunc._raw(-self.num, self._factors)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        num = self.num * o.num
        if num.is_zero():
            return RatFunc._raw(num, ())
        return RatFunc._raw(num, tuple(self._merge(self._factors, o._factors).items()))

    __rmul__ = __mul__

    def inverse(self) -> RatFunc:
        if self.num.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        c, base = _as_factor(self.num)
        num = Poly.const(self.nvars, 1 / c)
        for b, e in self._factors:
            num = num * b**e
        factors = () if base.is_constant() else ((base, 1),)
        return RatFunc._raw(num, factors)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int) -> RatFunc:
        if k < 0:
            return self.inverse() ** (-k)
        return RatFunc._raw(self.num**k, tuple((b, e * k) for b, e in self._factors))

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).num.is_zero()

    def __hash__(self):
        raise TypeError("RatFunc is unhashable; equality is semantic")

    def diff(self, i: int) -> RatFunc:
        if not self._factors:
            return RatFunc._raw(self.num.diff(i), ())
        bases = [b for b, _ in self._factors]
        prod_all = Poly.const(self.nvars, 1)
        for b in bases:
            prod_all = prod_all * b
        num = self.num.diff(i) * prod_all
        for k, (b, e) in enumerate(self._factors):
            db = b.diff(i)
            if db.is_zero():
                continue
            others = Poly.const(self.nvars, e)
            for j, b2 in enumerate(bases):
                if j != k:
                    others = others * b2
            num = num - self.num * db * others
        return RatFunc._raw(num, tuple((b, e + 1) for b, e in self._factors)).simplify()

    def simplify(self) -> RatFunc:
        """Cancel denominator factors that divide the numerator exactly."""
        if not self._factors or self.num.is_zero():
            return RatFunc._raw(self.num, () if self.num.is_zero() else self._factors)
        num = self.num
        out = []
        for b, e in self._factors:
            while e:
                q = num.divexact(b)
                if q is None:
                    break
                num, e = q, e - 1
            if e:
                out.append((b, e))
        return RatFunc._raw(num, tuple(out))

    def evaluate(self, point: Sequence) -> Rational:
        d = mpq(1)
        for b, e in self._factors:
            v = b.evaluate(point)
            if not v:
                raise EvaluationError(f"denominator {b} vanishes at {tuple(fmt_q(x) for x in point)}")
            d *= v**e
        return self.num.evaluate(point) / d

    def taylor(self, point: Sequence, deg: int) -> Poly:
        out = self.num.taylor(point, deg)
        for b, e in self._factors:
            inv = series_inverse(b.taylor(point, deg), deg)
            for _ in range(e):
                out = out.mul_trunc(inv, deg)
        return out

    def __str__(self) -> str:
        if not self._factors:
            return str(self.num)
        return f"({self.num}) / ({self.den})"

    def __repr__(self) -> str:
        return f"RatFunc('{self}')"


def series_inverse(p: Poly, deg: int) -> Poly:
    """1/p as a power series truncated at total degree ``deg`` (p(0) must be nonzero)."""
    c = p.constant_term()
    if not c:
        raise EvaluationError("series inverse of a polynomial vanishing at the expansion point")
    rest = (p - c).scale(-1 / c)
    out = Poly.const(p.nvars, 1)
    power = Poly.const(p.nvars, 1)
    for _ in range(deg):
        power = power.mul_trunc(rest, deg)
        if power.is_zero():
            break
        out = out + power
    return out.scale(1 / c)


def parse_ratfunc(text: str, nvars: int) -> Poly | RatFunc:
    """``(poly) / (poly)`` or a bare polynomial."""
    s = text.strip()
    depth = 0
    split = None
    for k, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "/" and depth == 0 and k > 0 and s[:k].rstrip().endswith(")"):
            split = k
            break
    if split is None:
        if s.startswith("(") and s.endswith(")"):
            s = s[1:-1]
        return parse_poly(s, nvars)
    a, b = s[:split].strip(), s[split + 1 :].strip()
    for part in (a, b):
        if not (part.startswith("(") and part.endswith(")")):
            raise ParseError(f"rational function must be written '(poly) / (poly)': {text!r}")
    num = parse_poly(a[1:-1], nvars)
    den = parse_poly(b[1:-1], nvars)
    if den.is_zero():
        raise ParseError("zero denominator")
    return RatFunc(num, den)


def as_ratfunc(x) -> RatFunc:
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, Poly):
        return RatFunc.from_poly(x)
    raise TypeError(f"cannot convert {type(x).__name__} to RatFunc")


def laplacian_flat(p: Poly, indices: Iterable[int]) -> Poly:
    return p.laplacian(indices)


def differentiate(p, i: int):
    return p.diff(i)


def evaluate(p, point: Sequence) -> Rational:
    return p.evaluate(point)


def is_mpz(x) -> bool:
    return isinstance(x, (int, type(gmpy2.mpz(0))))
