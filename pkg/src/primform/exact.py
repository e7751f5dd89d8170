"""Exact coefficient arithmetic: Laurent polynomials, rational functions, series.

Every value is a :class:`LaurentPoly` over ``fractions.Fraction`` in named
variables. Variables play different roles depending on context (a chart
coordinate ``z``, deformation coordinates ``t0, t1``, formal parameters ``q``
or ``E1 = exp(t1)``), but the arithmetic does not care: a scalar is simply a
polynomial that happens to mention parameters only.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Mapping, Union

Monomial = tuple  # tuple[tuple[str, int], ...], sorted by variable name
Number = Union[int, Fraction]


class AlgebraError(ArithmeticError):
    """Raised when an exact operation has no answer in the coefficient ring."""


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    out = dict(a)
    for v, e in b:
        e2 = out.get(v, 0) + e
        if e2:
            out[v] = e2
        else:
            del out[v]
    return tuple(sorted(out.items()))


def _mono_pow(a: Monomial, k: int) -> Monomial:
    if k == 0:
        return ()
    return tuple((v, e * k) for v, e in a)


class LaurentPoly:
    """Immutable multivariate Laurent polynomial with rational coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Number] | None = None):
        clean = {}
        if terms:
            for m, c in terms.items():
                if c:
                    clean[m] = Fraction(c)
        self._terms = clean
        self._hash = None

    # construction -------------------------------------------------------
    @classmethod
    def const(cls, c: Number) -> "LaurentPoly":
        return cls({(): c})

    @classmethod
    def var(cls, name: str, exp: int = 1) -> "LaurentPoly":
        return cls({((name, exp),) if exp else (): 1})

    @classmethod
    def monomial(cls, exps: Mapping[str, int], coeff: Number = 1) -> "LaurentPoly":
        return cls({tuple(sorted((v, e) for v, e in exps.items() if e)): coeff})

    @staticmethod
    def coerce(x) -> "LaurentPoly":
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, (int, Fraction)):
            return LaurentPoly.const(x)
        if isinstance(x, str):
            return LaurentPoly.const(Fraction(x))
        raise TypeError(f"cannot coerce {type(x).__name__} to LaurentPoly")

    # inspection ----------------------------------------------------------
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    @property
    def variables(self) -> tuple[str, ...]:
        return tuple(sorted({v for m in self._terms for v, _ in m}))

    def is_constant(self) -> bool:
        return all(m == () for m in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise AlgebraError(f"{self} is not a rational constant")
        return self._terms.get((), Fraction(0))

    def is_polynomial(self) -> bool:
        return all(e >= 0 for m in self._terms for _, e in m)

    def is_unit(self) -> bool:
        """Units of Q[x^±] are exactly the nonzero single terms."""
        return len(self._terms) == 1

    def involves(self, names: Iterable[str]) -> bool:
        names = set(names)
        return any(v in names for m in self._terms for v, _ in m)

    def degree(self, var: str) -> int:
        if not self._terms:
            raise AlgebraError("degree of the zero polynomial")
        return max(dict(m).get(var, 0) for m in self._terms)

    def low_degree(self, var: str) -> int:
        if not self._terms:
            raise AlgebraError("low degree of the zero polynomial")
        return min(dict(m).get(var, 0) for m in self._terms)

    def total_degree(self, names: Iterable[str]) -> int:
        names = set(names)
        return max(
            (sum(e for v, e in m if v in names) for m in self._terms), default=0
        )

    def coefficients(self, var: str) -> dict[int, "LaurentPoly"]:
        """Collect by powers of ``var``: {k: coefficient of var^k}."""
        out: dict[int, dict] = {}
        for m, c in self._terms.items():
            k = 0
            rest = []
            for v, e in m:
                if v == var:
                    k = e
                else:
                    rest.append((v, e))
            out.setdefault(k, {})[tuple(rest)] = c
        return {k: LaurentPoly(t) for k, t in out.items()}

    def coeff(self, var: str, k: int) -> "LaurentPoly":
        return self.coefficients(var).get(k, ZERO)

    def coeff_of(self, exps: Mapping[str, int]) -> Fraction:
        key = tuple(sorted((v, e) for v, e in exps.items() if e))
        return self._terms.get(key, Fraction(0))

    # arithmetic ----------------------------------------------------------
    def __add__(self, other):
        try:
            other = LaurentPoly.coerce(other)
        except TypeError:
            return NotImplemented
        if not other._terms:
            return self
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return _raw(out)

    __radd__ = __add__

    def __neg__(self):
        return _raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        try:
            other = LaurentPoly.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return LaurentPoly.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return ZERO
            return _raw({m: c * other for m, c in self._terms.items()})
        try:
            other = LaurentPoly.coerce(other)
        except TypeError:
            return NotImplemented
        out: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = _mono_mul(m1, m2)
                s = out.get(m, 0) + c1 * c2
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return _raw(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        if len(self._terms) == 1:
            ((m, c),) = self._terms.items()
            return _raw({_mono_pow(m, k): c**k})
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def inverse(self) -> "LaurentPoly":
        if not self.is_unit():
            raise AlgebraError(f"{self} is not invertible in the Laurent ring")
        ((m, c),) = self._terms.items()
        return _raw({_mono_pow(m, -1): 1 / c})

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division by zero")
            return self * (1 / Fraction(other))
        return self * LaurentPoly.coerce(other).inverse()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # calculus ------------------------------------------------------------
    def diff(self, var: str) -> "LaurentPoly":
        out = {}
        for m, c in self._terms.items():
            d = dict(m)
            e = d.get(var, 0)
            if not e:
                continue
            if e == 1:
                del d[var]
            else:
                d[var] = e - 1
            out[tuple(sorted(d.items()))] = c * e
        return _raw(out)

    def theta(self, var: str) -> "LaurentPoly":
        """Euler operator var * d/dvar: var^k -> k var^k."""
        out = {}
        for m, c in self._terms.items():
            e = dict(m).get(var, 0)
            if e:
                out[m] = c * e
        return _raw(out)

    def derive(self, rule: Mapping[str, "LaurentPoly"]) -> "LaurentPoly":
        """Apply the derivation sending each variable v to rule[v] (others to 0)."""
        total = ZERO
        for v, image in rule.items():
            if image:
                total = total + self.diff(v) * image
        return total

    def subs(self, mapping: Mapping[str, "LaurentPoly"]) -> "LaurentPoly":
        mapping = {v: LaurentPoly.coerce(p) for v, p in mapping.items()}
        if not any(v in mapping for v in self.variables):
            return self
        cache: dict = {}

        def power(v, e):
            key = (v, e)
            if key not in cache:
                cache[key] = mapping[v] ** e
            return cache[key]

        total: dict = {}
        acc = ZERO
        for m, c in self._terms.items():
            keep = []
            factor = None
            for v, e in m:
                if v in mapping:
                    p = power(v, e)
                    factor = p if factor is None else factor * p
                else:
                    keep.append((v, e))
            if factor is None:
                total[m] = total.get(m, 0) + c
            else:
                acc = acc + factor * _raw({tuple(keep): c})
        return LaurentPoly(total) + acc

    def evaluate(self, values: Mapping[str, Number]) -> "LaurentPoly":
        return self.subs({v: LaurentPoly.const(x) for v, x in values.items()})

    def map_terms(self, keep: Callable[[Monomial, Fraction], bool]) -> "LaurentPoly":
        return _raw({m: c for m, c in self._terms.items() if keep(m, c)})

    # printing ------------------------------------------------------------
    def sort_key(self):
        return tuple(sorted((m, c) for m, c in self._terms.items()))

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for m in sorted(self._terms, key=_print_order):
            c = self._terms[m]
            mono = "*".join(v if e == 1 else f"{v}^{e}" for v, e in m)
            if not mono:
                s = str(c)
            elif c == 1:
                s = mono
            elif c == -1:
                s = "-" + mono
            else:
                s = f"{c}*{mono}"
            parts.append(s)
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    def __repr__(self):
        return f"LaurentPoly({self})"


def _print_order(m: Monomial):
    return (-sum(abs(e) for _, e in m), tuple((v, -e) for v, e in m))


def _raw(terms: dict) -> LaurentPoly:
    p = LaurentPoly.__new__(LaurentPoly)
    p._terms = terms
    p._hash = None
    return p


ZERO = LaurentPoly()
ONE = LaurentPoly.const(1)


def var(name: str, exp: int = 1) -> LaurentPoly:
    return LaurentPoly.var(name, exp)


def const(c: Number) -> LaurentPoly:
    return LaurentPoly.const(c)


def poly_arith(a: LaurentPoly, b: LaurentPoly, op: str) -> LaurentPoly:
    """Ring operation by name; ``op`` is ``"add"`` or ``"mul"``."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def log_derivative(p: LaurentPoly, var: str) -> LaurentPoly:
    return p.theta(var)


def truncate_degree(p: LaurentPoly, names: Iterable[str], max_degree: int) -> LaurentPoly:
    """Keep terms whose total degree in ``names`` is at most ``max_degree``."""
    names = set(names)
    return p.map_terms(lambda m, c: sum(e for v, e in m if v in names) <= max_degree)


def homogeneous_part(p: LaurentPoly, names: Iterable[str], degree: int) -> LaurentPoly:
    names = set(names)
    return p.map_terms(lambda m, c: sum(e for v, e in m if v in names) == degree)


# --------------------------------------------------------------------------
# one-variable division and gcd


def exact_quotient(num: LaurentPoly, den: LaurentPoly, var: str) -> LaurentPoly | None:
    """``num / den`` if ``den`` divides ``num`` in the Laurent ring, else None."""
    if den.is_unit():
        return num * den.inverse()
    dcoef = den.coefficients(var)
    top, low = max(dcoef), min(dcoef)
    lc = dcoef[top]
    if not lc.is_unit():
        return None
    inv = lc.inverse()
    quot = ZERO
    rem = num
    floor = (num.low_degree(var) - low) if num else 0
    while rem:
        rtop = rem.degree(var)
        k = rtop - top
        if k < floor:
            return None
        step = rem.coeff(var, rtop) * inv * LaurentPoly.var(var, k)
        quot = quot + step
        rem = rem - step * den
    return quot


def _rational_univariate(p: LaurentPoly, var: str) -> bool:
    return all(all(v == var for v, _ in m) for m, _ in p.items())


def poly_gcd(a: LaurentPoly, b: LaurentPoly, var: str) -> LaurentPoly:
    """Monic gcd over Q of two polynomials in the single variable ``var``."""
    if not (_rational_univariate(a, var) and _rational_univariate(b, var)):
        raise AlgebraError("gcd is only available for rational one-variable polynomials")
    while b:
        _, r = _poly_divmod(a, b, var)
        a, b = b, r
    if not a:
        return ONE
    return a / a.coeff(var, a.degree(var))


def _poly_divmod(a: LaurentPoly, b: LaurentPoly, var: str):
    db = b.degree(var)
    lc = b.coeff(var, db).constant_value()
    q = ZERO
    while a and a.degree(var) >= db:
        k = a.degree(var) - db
        step = a.coeff(var, a.degree(var)) * (1 / lc) * LaurentPoly.var(var, k)
        q = q + step
        a = a - step * b
    return q, a


# --------------------------------------------------------------------------
# rational functions


class RatFunc:
    """Quotient of Laurent polynomials, kept in a normalized form.

    The denominator is scaled by a unit so that its smallest exponent in each
    variable is 0 and its leading coefficient is 1. When both parts are
    rational polynomials in a single variable the common gcd is cancelled.
    Equality is decided by cross multiplication, so it is exact even where no
    multivariate gcd is taken.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = LaurentPoly.coerce(num)
        den = ONE if den is None else LaurentPoly.coerce(den)
        if den.is_zero():
            raise ZeroDivisionError("RatFunc with zero denominator")
        if den.is_unit():
            num, den = num * den.inverse(), ONE
        else:
            num, den = _normalize_pair(num, den)
        self.num = num
        self.den = den

    def reduced(self) -> "RatFunc":
        return RatFunc(self.num, self.den)

    def __add__(self, other):
        other = _as_rat(other)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        return self + (-_as_rat(other))

    def __rsub__(self, other):
        return _as_rat(other) - self

    def __mul__(self, other):
        other = _as_rat(other)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_rat(other)
        if other.num.is_zero():
            raise ZeroDivisionError("division by a zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __eq__(self, other):
        try:
            other = _as_rat(other)
        except TypeError:
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        raise TypeError("RatFunc is not hashable")

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def theta(self, var: str) -> "RatFunc":
        return RatFunc(
            self.num.theta(var) * self.den - self.num * self.den.theta(var),
            self.den * self.den,
        )

    def diff(self, var: str) -> "RatFunc":
        return RatFunc(
            self.num.diff(var) * self.den - self.num * self.den.diff(var),
            self.den * self.den,
        )

    def subs(self, mapping) -> "RatFunc":
        return RatFunc(self.num.subs(mapping), self.den.subs(mapping))

    def __str__(self):
        if self.den == ONE:
            return str(self.num)
        return f"({self.num})/({self.den})"

    __repr__ = __str__


def _as_rat(x) -> RatFunc:
    if isinstance(x, RatFunc):
        return x
    return RatFunc(LaurentPoly.coerce(x))


def _normalize_pair(num: LaurentPoly, den: LaurentPoly):
    names = den.variables
    lows = {v: den.low_degree(v) for v in names}
    shift = LaurentPoly.monomial({v: -e for v, e in lows.items()})
    num, den = num * shift, den * shift
    lead = max(den.items(), key=lambda mc: mc[0])[1]
    num, den = num * (1 / lead), den * (1 / lead)
    if len(names) == 1 and num and set(num.variables) <= set(names):
        (v,) = names
        if num.is_polynomial() and _rational_univariate(num, v):
            g = poly_gcd(num, den, v)
            if g != ONE:
                num = _poly_divmod(num, g, v)[0]
                den = _poly_divmod(den, g, v)[0]
                lead = den.coeff(v, den.degree(v)).constant_value()
                num, den = num * (1 / lead), den * (1 / lead)
    return num, den


# --------------------------------------------------------------------------
# Laurent series at 0 and at infinity


class ExpansionError(AlgebraError):
    """The denominator's extreme coefficient is not invertible."""

    def __init__(self, point: str, coefficient: LaurentPoly):
        super().__init__(
            f"cannot expand at {point}: coefficient {coefficient} is not a unit"
        )
        self.point = point
        self.coefficient = coefficient


def _series_quotient(num: LaurentPoly, den: LaurentPoly, var: str, sign: int, order: int):
    # sign=+1 expands in var at 0, sign=-1 in 1/var at infinity
    ncoef = num.coefficients(var)
    dcoef = den.coefficients(var)
    if sign < 0:
        ncoef = {-k: c for k, c in ncoef.items()}
        dcoef = {-k: c for k, c in dcoef.items()}
    dlow = min(dcoef)
    d0 = dcoef[dlow]
    if not d0.is_unit():
        raise ExpansionError("zero" if sign > 0 else "infinity", d0)
    inv = d0.inverse()
    nlow = min(ncoef)
    start = nlow - dlow
    count = order - start + 1
    out: dict[int, LaurentPoly] = {}
    s: list[LaurentPoly] = []
    for k in range(max(count, 0)):
        acc = ncoef.get(nlow + k, ZERO)
        for j in range(1, k + 1):
            dj = dcoef.get(dlow + j)
            if dj is not None and s[k - j]:
                acc = acc - dj * s[k - j]
        sk = acc * inv
        s.append(sk)
        if sk:
            out[sign * (start + k)] = sk
    return out


def laurent_expand(r: RatFunc, var: str, point: str, order: int) -> dict[int, LaurentPoly]:
    """Truncated Laurent expansion of ``r`` in ``var``.

    At ``"zero"`` the terms with exponent <= ``order`` are returned; at
    ``"infinity"`` the terms with exponent >= ``-order``. The result maps
    exponents to coefficients and omits zeros.
    """
    r = _as_rat(r)
    if r.num.is_zero():
        return {}
    if point == "zero":
        return _series_quotient(r.num, r.den, var, 1, order)
    if point == "infinity":
        return _series_quotient(r.num, r.den, var, -1, order)
    raise ValueError(f"unknown expansion point {point!r}")


def total_residue(r, var: str = "z") -> LaurentPoly:
    """Sum of the residues of ``r d(var)`` away from 0 and infinity.

    Equals ``-(Res_0 + Res_inf)``, i.e. the z^-1 coefficient at infinity minus
    the z^-1 coefficient at zero.
    """
    r = _as_rat(r)
    if r.num.is_zero():
        return ZERO
    at_inf = laurent_expand(r, var, "infinity", 1).get(-1, ZERO)
    if r.num.low_degree(var) - r.den.low_degree(var) >= 0:
        at_zero = ZERO
    else:
        at_zero = laurent_expand(r, var, "zero", -1).get(-1, ZERO)
    return at_inf - at_zero


def finite_residue(r, var: str = "z") -> LaurentPoly:
    """Sum of all residues of ``r d(var)`` in the finite plane, i.e. -Res_inf."""
    r = _as_rat(r)
    if r.num.is_zero():
        return ZERO
    return laurent_expand(r, var, "infinity", 1).get(-1, ZERO)


# --------------------------------------------------------------------------
# quadratic extension s^2 = P


class QuadraticExtension:
    """Element a + b*s of K[s]/(s^2 - P), with a, b, P Laurent polynomials."""

    __slots__ = ("a", "b", "P")

    def __init__(self, a, b, P):
        self.a = LaurentPoly.coerce(a)
        self.b = LaurentPoly.coerce(b)
        self.P = LaurentPoly.coerce(P)

    @classmethod
    def root(cls, P) -> "QuadraticExtension":
        return cls(ZERO, ONE, P)

    def _lift(self, x) -> "QuadraticExtension":
        if isinstance(x, QuadraticExtension):
            if x.P != self.P:
                raise AlgebraError("elements of different quadratic extensions")
            return x
        return QuadraticExtension(LaurentPoly.coerce(x), ZERO, self.P)

    def __add__(self, other):
        o = self._lift(other)
        return QuadraticExtension(self.a + o.a, self.b + o.b, self.P)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticExtension(-self.a, -self.b, self.P)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __mul__(self, other):
        o = self._lift(other)
        return QuadraticExtension(
            self.a * o.a + self.b * o.b * self.P, self.a * o.b + self.b * o.a, self.P
        )

    __rmul__ = __mul__

    def norm(self) -> LaurentPoly:
        return self.a * self.a - self.b * self.b * self.P

    def inverse(self) -> "QuadraticExtension":
        n = self.norm()
        if not n.is_unit():
            raise AlgebraError(f"norm {n} is not a unit")
        ni = n.inverse()
        return QuadraticExtension(self.a * ni, -self.b * ni, self.P)

    def __truediv__(self, other):
        return self * self._lift(other).inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = self._lift(ONE)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        try:
            o = self._lift(other)
        except (TypeError, AlgebraError):
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        return hash((self.a, self.b, self.P))

    def __str__(self):
        return f"({self.a}) + ({self.b})*s"


def evaluate_at_root(p: LaurentPoly, var: str, root: QuadraticExtension) -> QuadraticExtension:
    """Substitute ``var`` := ``root`` (an element of a quadratic extension)."""
    total = root._lift(ZERO)
    inv = None
    for k, c in p.coefficients(var).items():
        if k >= 0:
            total = total + root**k * c
        else:
            inv = inv or root.inverse()
            total = total + inv ** (-k) * c
    return total


# --------------------------------------------------------------------------
# linear algebra


class SingularSystemError(AlgebraError):
    """A linear system has no solution, or no unit pivot could be found."""


def solve_rational(rows: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    """Solve A x = b over Q by Gaussian elimination; free unknowns are set to 0."""
    n = len(rows[0]) if rows else 0
    aug = [list(map(Fraction, r)) + [Fraction(b)] for r, b in zip(rows, rhs)]
    pivots = []
    row = 0
    for col in range(n):
        piv = next((i for i in range(row, len(aug)) if aug[i][col]), None)
        if piv is None:
            continue
        aug[row], aug[piv] = aug[piv], aug[row]
        pv = aug[row][col]
        aug[row] = [x / pv for x in aug[row]]
        for i in range(len(aug)):
            if i != row and aug[i][col]:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[row])]
        pivots.append(col)
        row += 1
    for r in aug[row:]:
        if r[-1]:
            raise SingularSystemError("inconsistent linear system")
    x = [Fraction(0)] * n
    for i, col in enumerate(pivots):
        x[col] = aug[i][-1]
    return x


def solve_over_units(matrix: list[list[LaurentPoly]], rhs: list[LaurentPoly]) -> list[LaurentPoly]:
    """Solve ``sum_j x_j * matrix[j] = rhs`` (rows are the vectors being combined).

    Elimination only ever divides by unit pivots, so the answer stays in the
    Laurent polynomial ring; a missing unit pivot raises SingularSystemError.
    """
    n = len(matrix)
    m = len(rhs)
    # columns of the transpose system: unknown j contributes matrix[j][i] to equation i
    eqs = [[matrix[j][i] for j in range(n)] + [rhs[i]] for i in range(m)]
    pivots = []
    row = 0
    for col in range(n):
        piv = next((i for i in range(row, m) if eqs[i][col].is_unit()), None)
        if piv is None:
            raise SingularSystemError(f"no unit pivot for unknown {col}")
        eqs[row], eqs[piv] = eqs[piv], eqs[row]
        inv = eqs[row][col].inverse()
        eqs[row] = [x * inv for x in eqs[row]]
        for i in range(m):
            if i != row and eqs[i][col]:
                f = eqs[i][col]
                eqs[i] = [x - f * y for x, y in zip(eqs[i], eqs[row])]
        pivots.append(col)
        row += 1
    for r in eqs[row:]:
        if r[-1]:
            raise SingularSystemError("vector is not in the span")
    return [eqs[i][-1] for i in range(n)]


def det(matrix: list[list[LaurentPoly]]) -> LaurentPoly:
    """Determinant by cofactor expansion with memoized minors."""
    n = len(matrix)
    if n == 0:
        return ONE
    cache: dict = {}

    def minor(row: int, cols: tuple) -> LaurentPoly:
        if row == n:
            return ONE
        key = cols
        if key in cache:
            return cache[key]
        total = ZERO
        for pos, c in enumerate(cols):
            entry = LaurentPoly.coerce(matrix[row][c])
            if entry:
                sub = minor(row + 1, cols[:pos] + cols[pos + 1:])
                term = entry * sub
                total = total - term if pos % 2 else total + term
        cache[key] = total
        return total

    return minor(0, tuple(range(n)))
