"""Sparse polynomials over Q in the three symbols g, d, r.

Every intersection number the engine produces is a polynomial in the genus
``g`` of the curve and the degree ``d`` and rank ``r`` of the bundle, so this
is the coefficient ring for everything else in the package.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterator, Mapping, Union

SYMBOLS = ("g", "d", "r")

Exponent = tuple[int, int, int]
Scalar = Union[int, Fraction]


class MissingSymbolError(KeyError):
    """Raised when an evaluation assignment does not cover a symbol in use."""


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


def _term_key(exp: Exponent):
    # graded lex, highest first
    return (-sum(exp), tuple(-e for e in exp))


class RatPoly:
    """Immutable polynomial in g, d, r with exact rational coefficients.

    Terms are stored as ``{(eg, ed, er): Fraction}`` with no zero entries, so
    structural equality of the term maps is polynomial equality.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Exponent, Scalar] | None = None):
        clean: dict[Exponent, Fraction] = {}
        if terms:
            for exp, c in terms.items():
                exp = tuple(int(e) for e in exp)
                if len(exp) != 3 or min(exp) < 0:
                    raise ValueError(f"bad exponent vector {exp!r}")
                c = _as_fraction(c)
                if c:
                    clean[exp] = clean.get(exp, 0) + c
                    if not clean[exp]:
                        del clean[exp]
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict[Exponent, Fraction]) -> "RatPoly":
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, c: Scalar) -> "RatPoly":
        return cls({(0, 0, 0): c})

    @classmethod
    def symbol(cls, name: str) -> "RatPoly":
        try:
            i = SYMBOLS.index(name)
        except ValueError:
            raise ValueError(f"unknown symbol {name!r}; expected one of {SYMBOLS}") from None
        exp = [0, 0, 0]
        exp[i] = 1
        return cls({tuple(exp): 1})

    @classmethod
    def coerce(cls, x) -> "RatPoly":
        if isinstance(x, RatPoly):
            return x
        return cls.const(_as_fraction(x))

    # -- inspection -------------------------------------------------------

    @property
    def terms(self) -> dict[Exponent, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Exponent, Fraction]]:
        """Terms in canonical (graded lexicographic, descending) order."""
        for exp in sorted(self._terms, key=_term_key):
            yield exp, self._terms[exp]

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(exp == (0, 0, 0) for exp in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self._terms.get((0, 0, 0), Fraction(0))

    def symbols(self) -> set[str]:
        return {SYMBOLS[i] for exp in self._terms for i, e in enumerate(exp) if e}

    def degree(self) -> int:
        return max((sum(e) for e in self._terms), default=0)

    def __bool__(self) -> bool:
        return bool(self._terms)

    # -- ring operations --------------------------------------------------

    def __add__(self, other) -> "RatPoly":
        try:
            other = RatPoly.coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for exp, c in other._terms.items():
            v = out.get(exp, 0) + c
            if v:
                out[exp] = v
            else:
                out.pop(exp, None)
        return RatPoly._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "RatPoly":
        return RatPoly._raw({e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> "RatPoly":
        try:
            other = RatPoly.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "RatPoly":
        return RatPoly.coerce(other) - self

    def __mul__(self, other) -> "RatPoly":
        if isinstance(other, (int, Fraction)):
            if not other:
                return RatPoly()
            return RatPoly._raw({e: c * other for e, c in self._terms.items()})
        if not isinstance(other, RatPoly):
            return NotImplemented
        out: dict[Exponent, Fraction] = {}
        for (a0, a1, a2), ca in self._terms.items():
            for (b0, b1, b2), cb in other._terms.items():
                exp = (a0 + b0, a1 + b1, a2 + b2)
                out[exp] = out.get(exp, 0) + ca * cb
        return RatPoly._raw({e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RatPoly":
        if isinstance(other, RatPoly):
            other = other.constant_value()
        other = _as_fraction(other)
        if not other:
            raise ZeroDivisionError("division of a polynomial by zero")
        return self * (1 / other)

    def __pow__(self, k: int) -> "RatPoly":
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = RatPoly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- evaluation -------------------------------------------------------

    def substitute(self, assignment: Mapping[str, Scalar]) -> "RatPoly":
        """Partial evaluation: replace the assigned symbols, keep the rest."""
        values = {}
        for name, v in assignment.items():
            if name not in SYMBOLS:
                raise ValueError(f"unknown symbol {name!r}")
            values[SYMBOLS.index(name)] = _as_fraction(v)
        out: dict[Exponent, Fraction] = {}
        for exp, c in self._terms.items():
            new = list(exp)
            for i, v in values.items():
                if exp[i]:
                    c = c * v ** exp[i]
                    new[i] = 0
            key = tuple(new)
            out[key] = out.get(key, 0) + c
        return RatPoly._raw({e: c for e, c in out.items() if c})

    def evaluate(self, assignment: Mapping[str, Scalar]) -> Fraction:
        missing = self.symbols() - set(assignment)
        if missing:
            raise MissingSymbolError(f"no value given for {', '.join(sorted(missing))}")
        return self.substitute({k: v for k, v in assignment.items() if k in SYMBOLS}).constant_value()

    # -- comparison and hashing -------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, RatPoly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == RatPoly.const(other)._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- rendering --------------------------------------------------------

    def __repr__(self) -> str:
        return f"RatPoly({str(self)!r})"

    def __str__(self) -> str:
        return render(self)

    def to_json_terms(self) -> list[dict]:
        return [
            {"g": e[0], "d": e[1], "r": e[2], "coeff": str(c)}
            for e, c in self.items()
        ]


def g() -> RatPoly:
    return RatPoly.symbol("g")


def d() -> RatPoly:
    return RatPoly.symbol("d")


def r() -> RatPoly:
    return RatPoly.symbol("r")


def _monomial(names_exps) -> str:
    parts = []
    for name, e in names_exps:
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def _render_signed(terms: list[tuple[str, Fraction]], leading: bool = True) -> str:
    """Join (monomial, coeff) pairs into 'a - b + c' form."""
    out = []
    for i, (mono, c) in enumerate(terms):
        neg = c < 0
        a = -c if neg else c
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        if i == 0 and leading:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


def render(p: RatPoly) -> str:
    """Canonical text form, e.g. ``d^2 - 2*d*r - (g - 1)*r^2``.

    Terms are grouped by their (d, r) monomial; the coefficient of each group
    is a polynomial in g, parenthesised when it has more than one term. The
    output parses back through the expression language.
    """
    if p.is_zero():
        return "0"
    groups: dict[tuple[int, int], list[tuple[int, Fraction]]] = {}
    for (eg, ed, er), c in p._terms.items():
        groups.setdefault((ed, er), []).append((eg, c))
    order = sorted(groups, key=lambda k: (-(k[0] + k[1]), -k[0], -k[1]))
    pieces: list[str] = []
    for key in order:
        gterms = sorted(groups[key], key=lambda t: -t[0])
        dr = _monomial(zip(("d", "r"), key))
        if not dr:
            pieces.append(_render_signed(
                [(_monomial([("g", eg)]), c) for eg, c in gterms], leading=not pieces))
            continue
        if len(gterms) == 1:
            eg, c = gterms[0]
            mono = _monomial([("g", eg), ("d", key[0]), ("r", key[1])])
            text = _render_signed([(mono, c)])
            neg = c < 0
            body = text[1:] if neg else text
        else:
            neg = gterms[0][1] < 0
            sign = -1 if neg else 1
            inner = _render_signed([(_monomial([("g", eg)]), sign * c) for eg, c in gterms])
            body = f"({inner})*{dr}"
        if pieces:
            pieces.append((" - " if neg else " + ") + body)
        else:
            pieces.append(("-" if neg else "") + body)
    return "".join(pieces)
