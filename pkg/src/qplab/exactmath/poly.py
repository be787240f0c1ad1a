"""Multivariate polynomials over Q with named variables.

Terms are stored densely: each exponent vector has one slot per variable of
the polynomial's universe. Universes are unioned automatically, so mixing
polynomials over different variables is always allowed.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce
from typing import Mapping, Union

from ..errors import UnboundVariable, ZeroDenominatorBinding
from .rational import as_rational

# Family work lives in this universe; any other names sort after it.
CANONICAL_ORDER = ("a", "b", "c", "d", "x", "y", "u", "v", "w")


def _var_key(name: str):
    try:
        return (0, CANONICAL_ORDER.index(name), name)
    except ValueError:
        return (1, 0, name)


def _sorted_vars(names) -> tuple[str, ...]:
    return tuple(sorted(set(names), key=_var_key))


class MultiPoly:
    """Immutable polynomial in ``variables`` with rational coefficients.

    >>> x, y = MultiPoly.var("x"), MultiPoly.var("y")
    >>> (x + y) * (x - y) == x**2 - y**2
    True
    """

    __slots__ = ("variables", "terms", "_hash")

    def __init__(self, variables=(), terms: Mapping[tuple, Fraction] | None = None):
        variables = tuple(variables)
        if list(variables) != list(_sorted_vars(variables)):
            raise ValueError("variables must be distinct and in canonical order")
        clean = {}
        for exps, coeff in (terms or {}).items():
            if len(exps) != len(variables):
                raise ValueError("exponent vector width mismatch")
            coeff = as_rational(coeff)
            if coeff:
                clean[tuple(exps)] = coeff
        self.variables = variables
        self.terms = clean
        self._hash = None

    # -- constructors -------------------------------------------------
    @classmethod
    def const(cls, value) -> MultiPoly:
        return cls((), {(): as_rational(value)})

    @classmethod
    def var(cls, name: str) -> MultiPoly:
        return cls((name,), {(1,): Fraction(1)})

    @classmethod
    def vars(cls, names: str) -> tuple[MultiPoly, ...]:
        return tuple(cls.var(n) for n in names.replace(",", " ").split())

    @classmethod
    def coerce(cls, value) -> MultiPoly:
        if isinstance(value, MultiPoly):
            return value
        return cls.const(value)

    @classmethod
    def from_univariate(cls, name: str, coeffs) -> MultiPoly:
        """Build sum coeffs[k] * name**k."""
        return cls((name,), {(k,): c for k, c in enumerate(coeffs)})

    # -- universe handling --------------------------------------------
    def extend(self, variables) -> MultiPoly:
        """Re-express over a larger universe (must contain ours)."""
        variables = _sorted_vars(variables)
        if variables == self.variables:
            return self
        missing = set(self.variables) - set(variables)
        if missing:
            raise ValueError(f"universe lacks {sorted(missing)}")
        index = [variables.index(v) for v in self.variables]
        terms = {}
        for exps, coeff in self.terms.items():
            new = [0] * len(variables)
            for i, e in zip(index, exps):
                new[i] = e
            terms[tuple(new)] = coeff
        return MultiPoly(variables, terms)

    def _unify(self, other: MultiPoly):
        if self.variables == other.variables:
            return self, other
        universe = _sorted_vars(self.variables + other.variables)
        return self.extend(universe), other.extend(universe)

    def support(self) -> tuple[str, ...]:
        """Variables that actually occur with a positive exponent."""
        used = [False] * len(self.variables)
        for exps in self.terms:
            for i, e in enumerate(exps):
                if e:
                    used[i] = True
        return tuple(v for v, u in zip(self.variables, used) if u)

    def _canonical(self):
        out = {}
        for exps, coeff in self.terms.items():
            key = tuple((v, e) for v, e in zip(self.variables, exps) if e)
            out[key] = coeff
        return out

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other):
        other = MultiPoly.coerce(other)
        p, q = self._unify(other)
        terms = dict(p.terms)
        for exps, coeff in q.terms.items():
            terms[exps] = terms.get(exps, 0) + coeff
        return MultiPoly(p.variables, terms)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-MultiPoly.coerce(other))

    def __rsub__(self, other):
        return MultiPoly.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = as_rational(other)
            return MultiPoly(self.variables, {e: c * other for e, c in self.terms.items()})
        other = MultiPoly.coerce(other)
        p, q = self._unify(other)
        terms: dict[tuple, Fraction] = {}
        for e1, c1 in p.terms.items():
            for e2, c2 in q.terms.items():
                e = tuple(i + j for i, j in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return MultiPoly(p.variables, terms)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        scalar = as_rational(scalar)
        return self * (1 / scalar)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers")
        result = MultiPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- comparison ---------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.const(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self._canonical() == other._canonical()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._canonical().items()))
        return self._hash

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    # -- inspection ---------------------------------------------------
    def degree(self, name: str | None = None) -> int:
        """Total degree, or degree in ``name``; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        if name is None:
            return max(sum(e) for e in self.terms)
        if name not in self.variables:
            return 0
        i = self.variables.index(name)
        return max(e[i] for e in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * len(self.variables), Fraction(0))

    def is_constant(self) -> bool:
        return not self.support()

    def coefficient(self, monomial: Mapping[str, int]) -> Fraction:
        """Coefficient of an exact monomial, e.g. ``{"x": 2, "y": 1}``."""
        key = tuple(monomial.get(v, 0) for v in self.variables)
        if any(n not in self.variables for n, e in monomial.items() if e):
            return Fraction(0)
        return self.terms.get(key, Fraction(0))

    def coefficients_in(self, names) -> dict[tuple, MultiPoly]:
        """Split as sum over monomials in ``names`` with polynomial coefficients.

        Keys are exponent tuples aligned with ``names``; values are polynomials
        in the remaining variables.
        """
        names = tuple(names)
        idx = [self.variables.index(n) if n in self.variables else None for n in names]
        rest = tuple(v for v in self.variables if v not in names)
        rest_idx = [self.variables.index(v) for v in rest]
        grouped: dict[tuple, dict[tuple, Fraction]] = {}
        for exps, coeff in self.terms.items():
            key = tuple(exps[i] if i is not None else 0 for i in idx)
            sub = tuple(exps[i] for i in rest_idx)
            grouped.setdefault(key, {})[sub] = coeff
        return {k: MultiPoly(rest, t) for k, t in grouped.items()}

    def univariate_coeffs(self, name: str) -> list[MultiPoly]:
        """Coefficients c_k (polynomials in the other variables) of name**k."""
        parts = self.coefficients_in((name,))
        deg = max((k[0] for k in parts), default=-1)
        return [parts.get((k,), MultiPoly()) for k in range(deg + 1)]

    def content(self) -> Fraction:
        """Positive rational gcd of the coefficients (0 for the zero poly)."""
        if not self.terms:
            return Fraction(0)
        nums = [c.numerator for c in self.terms.values()]
        dens = [c.denominator for c in self.terms.values()]
        num = reduce(math.gcd, nums)
        den = reduce(lambda x, y: x * y // math.gcd(x, y), dens)
        return Fraction(abs(num), den)

    def leading_coefficient(self) -> Fraction:
        """Coefficient of the largest exponent vector (lexicographic)."""
        if not self.terms:
            return Fraction(0)
        return self.terms[max(self.terms)]

    def map_monomials(self, fn) -> MultiPoly:
        """Rebuild by sending each (exponent-dict, coeff) through ``fn``.

        ``fn`` returns a new (exponent-dict, coeff) pair; used for the
        coordinate symmetries of bidegree-(3,3) curves.
        """
        out = MultiPoly()
        for exps, coeff in self.terms.items():
            mono, c = fn(dict(zip(self.variables, exps)), coeff)
            names = _sorted_vars(mono)
            out = out + MultiPoly(names, {tuple(mono[n] for n in names): c})
        return out

    # -- evaluation and substitution ----------------------------------
    def eval(self, point: Mapping[str, object]) -> Fraction:
        return poly_eval(self, point)

    def partial_eval(self, point: Mapping[str, object]) -> MultiPoly:
        """Substitute rational values for some variables."""
        return poly_substitute(
            self, {k: (MultiPoly.const(v), MultiPoly.const(1)) for k, v in point.items()}
        )[0]

    def subs(self, bindings: Mapping[str, object]) -> MultiPoly:
        """Polynomial substitution (no denominators)."""
        num, den = poly_substitute(self, bindings)
        if not den.is_constant():
            raise ValueError("subs produced a non-polynomial result; use poly_substitute")
        return num * (1 / den.constant_term())

    # -- display ------------------------------------------------------
    def __repr__(self):
        return f"MultiPoly({str(self)!r})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for exps in sorted(self.terms, reverse=True):
            coeff = self.terms[exps]
            mono = "*".join(
                v if e == 1 else f"{v}^{e}" for v, e in zip(self.variables, exps) if e
            )
            if not mono:
                parts.append(str(coeff))
            elif coeff == 1:
                parts.append(mono)
            elif coeff == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{coeff}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def poly_arith(p: MultiPoly, q: MultiPoly, op: str) -> MultiPoly:
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise ValueError(f"unknown op {op!r}")


Binding = Union[MultiPoly, tuple]


def _as_fraction_pair(binding) -> tuple[MultiPoly, MultiPoly]:
    if isinstance(binding, tuple):
        num, den = binding
        return MultiPoly.coerce(num), MultiPoly.coerce(den)
    return MultiPoly.coerce(binding), MultiPoly.const(1)


def poly_substitute(p: MultiPoly, bindings: Mapping[str, Binding]) -> tuple[MultiPoly, MultiPoly]:
    """Simultaneously substitute rational functions for variables of ``p``.

    Each binding is a polynomial or a ``(num, den)`` pair. Returns
    ``(num, den)`` with ``den`` = prod den_v**deg_v(p), then both divided by
    the content of ``den`` (and sign-normalized). No polynomial gcd is taken.
    """
    pairs = {name: _as_fraction_pair(b) for name, b in bindings.items()}
    for name, (_, den) in pairs.items():
        if den.is_zero():
            raise ZeroDenominatorBinding(f"binding for {name!r} has zero denominator")
    degs = {name: p.degree(name) for name in pairs if name in p.variables}
    keep = tuple(v for v in p.variables if v not in pairs)
    keep_idx = [p.variables.index(v) for v in keep]

    # power caches: num**k and den**(D-k)
    num_pows, den_pows = {}, {}

    def npow(name, k):
        key = (name, k)
        if key not in num_pows:
            num_pows[key] = pairs[name][0] ** k
        return num_pows[key]

    def dpow(name, k):
        key = (name, k)
        if key not in den_pows:
            den_pows[key] = pairs[name][1] ** k
        return den_pows[key]

    num = MultiPoly()
    for exps, coeff in p.terms.items():
        term = MultiPoly(keep, {tuple(exps[i] for i in keep_idx): coeff})
        for name, d in degs.items():
            e = exps[p.variables.index(name)]
            term = term * npow(name, e) * dpow(name, d - e)
        num = num + term
    den = MultiPoly.const(1)
    for name, d in degs.items():
        den = den * dpow(name, d)

    scale = den.content()
    if den.leading_coefficient() < 0:
        scale = -scale
    return num * (1 / scale), den * (1 / scale)


def poly_eval(p: MultiPoly, point: Mapping[str, object]) -> Fraction:
    """Exact value of ``p`` at a rational point."""
    values = []
    for v in p.variables:
        if v in point:
            values.append(as_rational(point[v]))
        else:
            values.append(None)
    total = Fraction(0)
    for exps, coeff in p.terms.items():
        term = coeff
        for name, val, e in zip(p.variables, values, exps):
            if e:
                if val is None:
                    raise UnboundVariable(name)
                term *= val**e
        total += term
    return total


def fraction_identity(lhs: tuple[MultiPoly, MultiPoly], rhs: tuple[MultiPoly, MultiPoly]) -> MultiPoly:
    """Cross-multiplied difference n1*d2 - n2*d1; zero iff the fractions agree."""
    (n1, d1), (n2, d2) = lhs, rhs
    return n1 * d2 - n2 * d1


def _det(rows: list[list[Fraction]]) -> Fraction:
    """Determinant by exact Gaussian elimination."""
    m = [list(map(Fraction, r)) for r in rows]
    n = len(m)
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col]), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        inv = 1 / m[col][col]
        for r in range(col + 1, n):
            f = m[r][col] * inv
            if f:
                for k in range(col, n):
                    m[r][k] -= f * m[col][k]
    return det


def resultant(f, g) -> Fraction:
    """Sylvester resultant of two univariate coefficient lists (low degree first)."""
    f = _trim(f)
    g = _trim(g)
    m, n = len(f) - 1, len(g) - 1
    if m < 0 or n < 0:
        return Fraction(0)
    if m == 0 and n == 0:
        return Fraction(1)
    size = m + n
    rows = []
    for i in range(n):
        row = [Fraction(0)] * size
        for k, c in enumerate(reversed(f)):
            row[i + k] = c
        rows.append(row)
    for i in range(m):
        row = [Fraction(0)] * size
        for k, c in enumerate(reversed(g)):
            row[i + k] = c
        rows.append(row)
    return _det(rows)


def discriminant(coeffs) -> Fraction:
    """Discriminant of sum coeffs[k] t**k, using its true degree."""
    f = _trim(coeffs)
    n = len(f) - 1
    if n < 1:
        raise ValueError("discriminant needs degree >= 1")
    df = [k * f[k] for k in range(1, n + 1)]
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * resultant(f, df) / f[-1]


def _trim(coeffs) -> list[Fraction]:
    out = [as_rational(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return out
