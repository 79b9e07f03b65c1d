"""Exact multivariate polynomials over Q, and the expression grammar used by
variety config files.

Grammar (whitespace insignificant, no implicit multiplication)::

    expr     := ['+'|'-'] term (('+'|'-') term)*
    term     := factor ('*' factor)*
    factor   := base ('^' nonneg-int)?
    base     := rational | variable | '(' expr ')'
    rational := int ('/' positive-int)?
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import lcm
from typing import Iterable, Mapping, Sequence

from .multiindex import MultiIndex


class PolynomialError(ValueError):
    pass


class ParseError(PolynomialError):
    """Syntax or name error in an expression; ``pos`` is a 0-based offset."""

    def __init__(self, message: str, text: str, pos: int):
        self.message = message
        self.text = text
        self.pos = pos
        super().__init__(f"{message} at column {pos + 1}: {text!r}")


class Polynomial:
    """Immutable polynomial in the ordered variables ``variables``.

    ``terms`` maps exponent tuples to nonzero Fractions; two polynomials over
    the same variables are equal iff their term maps are equal.
    """

    __slots__ = ("variables", "terms", "_hash", "_int_cache")

    def __init__(self, variables: Sequence[str], terms: Mapping[tuple, object] | None = None):
        self.variables = tuple(variables)
        n = len(self.variables)
        clean: dict[tuple, Fraction] = {}
        for exps, c in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != n:
                raise PolynomialError(f"exponent vector {exps} has length != {n}")
            if any(e < 0 for e in exps):
                raise PolynomialError(f"negative exponent in {exps}")
            c = Fraction(c)
            if c:
                clean[exps] = clean.get(exps, Fraction(0)) + c
                if not clean[exps]:
                    del clean[exps]
        self.terms = clean
        self._hash = None
        self._int_cache = None

    # construction helpers

    @classmethod
    def constant(cls, variables: Sequence[str], value) -> "Polynomial":
        return cls(variables, {(0,) * len(variables): value})

    @classmethod
    def variable(cls, variables: Sequence[str], j: int) -> "Polynomial":
        n = len(variables)
        return cls(variables, {tuple(1 if i == j else 0 for i in range(n)): 1})

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.variables != self.variables:
                raise PolynomialError(
                    f"variable mismatch: {self.variables} vs {other.variables}")
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(self.variables, other)
        return NotImplemented

    # ring operations

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0) + c
        return Polynomial(self.variables, terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms: dict[tuple, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return Polynomial(self.variables, terms)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise PolynomialError(f"exponent must be a nonnegative integer, got {k!r}")
        result = Polynomial.constant(self.variables, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.variables == other.variables and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == Polynomial.constant(self.variables, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.variables, frozenset(self.terms.items())))
        return self._hash

    # calculus and evaluation

    def diff(self, j: int) -> "Polynomial":
        """Partial derivative in the ``j``-th variable (0-based)."""
        if not 0 <= j < self.nvars:
            raise PolynomialError(f"variable index {j} out of range for {self.variables}")
        terms = {}
        for e, c in self.terms.items():
            if e[j]:
                d = list(e)
                d[j] -= 1
                terms[tuple(d)] = c * e[j]
        return Polynomial(self.variables, terms)

    def diff_multi(self, index: MultiIndex) -> "Polynomial":
        if len(index) != self.nvars:
            raise PolynomialError(f"multi-index {index} has length != {self.nvars}")
        terms = {}
        for e, c in self.terms.items():
            if all(a >= b for a, b in zip(e, index)):
                coef = c
                for a, b in zip(e, index):
                    for i in range(b):
                        coef *= a - i
                terms[tuple(a - b for a, b in zip(e, index))] = coef
        return Polynomial(self.variables, terms)

    def _integer_form(self):
        # (common denominator, integer coefficients, max exponent per variable)
        got = self._int_cache
        if got is None:
            den = 1
            for c in self.terms.values():
                den = lcm(den, c.denominator)
            ints = [(e, c.numerator * (den // c.denominator)) for e, c in self.terms.items()]
            top = [max((e[i] for e in self.terms), default=0) for i in range(self.nvars)]
            got = (den, ints, top)
            self._int_cache = got
        return got

    def eval(self, point: Sequence) -> Fraction:
        if len(point) != self.nvars:
            raise PolynomialError(f"point has {len(point)} coordinates, expected {self.nvars}")
        point = [Fraction(x) for x in point]
        den, ints, top = self._integer_form()
        # clear every denominator: x_i^k = p_i^k q_i^(D_i - k) / q_i^D_i
        nums = [x.numerator for x in point]
        dens = [x.denominator for x in point]
        total = 0
        for e, c in ints:
            term = c
            for p, q, k, d in zip(nums, dens, e, top):
                if k:
                    term *= p ** k
                if q != 1 and d > k:
                    term *= q ** (d - k)
            total += term
        scale = den
        for q, d in zip(dens, top):
            if q != 1:
                scale *= q ** d
        return Fraction(total, scale)

    def substitute(self, values: Sequence["Polynomial"]) -> "Polynomial":
        """Compose: replace the i-th variable by ``values[i]``.

        All ``values`` must share one variable list, which becomes the
        variable list of the result.
        """
        if len(values) != self.nvars:
            raise PolynomialError(f"need {self.nvars} substitutions, got {len(values)}")
        if not values:
            raise PolynomialError("cannot substitute into a polynomial with no variables")
        target = values[0].variables
        powers: list[dict[int, Polynomial]] = [{0: Polynomial.constant(target, 1)} for _ in values]

        def power(i, k):
            cache = powers[i]
            if k not in cache:
                cache[k] = power(i, k - 1) * values[i]
            return cache[k]

        result = Polynomial(target)
        for e, c in self.terms.items():
            term = Polynomial.constant(target, c)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            result = result + term
        return result

    # printing

    def _sorted_terms(self):
        return sorted(self.terms.items(), key=lambda ec: (-sum(ec[0]), [-x for x in ec[0]]))

    def _monomial(self, e) -> str:
        parts = []
        for name, k in zip(self.variables, e):
            if k == 1:
                parts.append(name)
            elif k > 1:
                parts.append(f"{name}^{k}")
        return "*".join(parts)

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for i, (e, c) in enumerate(self._sorted_terms()):
            sign = "-" if c < 0 else "+"
            a = abs(c)
            mono = self._monomial(e)
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            if i == 0:
                out.append(body if sign == "+" else f"-{body}")
            else:
                out.append(f" {sign} {body}")
        return "".join(out)

    def __repr__(self):
        return f"Polynomial({str(self)!r}, variables={self.variables})"


def diff(f: Polynomial, j: int) -> Polynomial:
    return f.diff(j)


def diff_multi(f: Polynomial, index: MultiIndex) -> Polynomial:
    return f.diff_multi(index)


def evaluate(f: Polynomial, point: Sequence) -> Fraction:
    return f.eval(point)


# parser

_TOKEN = re.compile(r"(\d+)|([A-Za-z_][A-Za-z0-9_]*)|([-+*/^()])")


def _tokenize(text: str):
    tokens = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos == len(text):
            break
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", text, pos)
        kind = ("int", "name", "op")[m.lastindex - 1]
        tokens.append((kind, m.group(0), pos))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, variables: Sequence[str]):
        self.text = text
        self.variables = tuple(variables)
        self.index = {name: i for i, name in enumerate(self.variables)}
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, message, tok=None):
        tok = tok or self.peek()
        raise ParseError(message, self.text, tok[2])

    def expect_op(self, op):
        tok = self.take()
        if tok[0] != "op" or tok[1] != op:
            self.fail(f"expected {op!r}", tok)

    def parse(self) -> Polynomial:
        result = self.expr()
        if self.peek()[0] != "end":
            self.fail(f"unexpected {self.peek()[1]!r}")
        return result

    def expr(self) -> Polynomial:
        negate = False
        tok = self.peek()
        if tok[0] == "op" and tok[1] in "+-":
            self.take()
            negate = tok[1] == "-"
        result = self.term()
        if negate:
            result = -result
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] in "+-":
                self.take()
                rhs = self.term()
                result = result + rhs if tok[1] == "+" else result - rhs
            else:
                return result

    def term(self) -> Polynomial:
        result = self.factor()
        while self.peek()[0] == "op" and self.peek()[1] == "*":
            self.take()
            result = result * self.factor()
        return result

    def factor(self) -> Polynomial:
        base = self.base()
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "^":
            self.take()
            exp = self.peek()
            if exp[0] == "op" and exp[1] == "-":
                self.fail("negative exponent", exp)
            if exp[0] != "int":
                self.fail("expected nonnegative integer exponent", exp)
            self.take()
            return base ** int(exp[1])
        return base

    def base(self) -> Polynomial:
        tok = self.take()
        kind, value, _ = tok
        if kind == "int":
            num = int(value)
            nxt = self.peek()
            if nxt[0] == "op" and nxt[1] == "/":
                self.take()
                den = self.take()
                if den[0] != "int" or int(den[1]) == 0:
                    self.fail("expected positive integer denominator", den)
                return Polynomial.constant(self.variables, Fraction(num, int(den[1])))
            return Polynomial.constant(self.variables, num)
        if kind == "name":
            if value not in self.index:
                self.fail(f"unknown variable {value!r}", tok)
            return Polynomial.variable(self.variables, self.index[value])
        if kind == "op" and value == "(":
            inner = self.expr()
            self.expect_op(")")
            return inner
        if kind == "end":
            self.fail("unexpected end of expression", tok)
        self.fail(f"unexpected {value!r}", tok)


def parse(text: str, variables: Iterable[str]) -> Polynomial:
    """Parse ``text`` into a canonical polynomial over ``variables``."""
    return _Parser(text, tuple(variables)).parse()
