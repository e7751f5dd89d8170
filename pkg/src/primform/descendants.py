"""Genus-0 descendants from a Frobenius potential, and the CP1 mirror comparison.

Insertions are pairs (d, a) meaning sigma_d(O_a); a correlator is the
q^beta coefficient at t = 0 of the matching derivative of the genus-0 free
energy. Higher descendants are reached through deformed flat functions
h_{l,d} with d_a d_b h_{l,d} = sum_e C_ab^e d_e h_{l,d-1}, and the
topological recursion relation.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement

from .exact import ZERO, LaurentPoly, var
from .frobenius import FrobeniusData, FrobeniusError


class CapsError(ValueError):
    """A request exceeds the configured truncation caps."""


@dataclass(frozen=True)
class Caps:
    insertions: int = 5
    level: int = 3
    degree: int = 3

    def check(self, ins, beta: int):
        if len(ins) > self.insertions:
            raise CapsError(f"{len(ins)} insertions exceed the cap {self.insertions}")
        if any(d > self.level for d, _ in ins):
            raise CapsError(f"descendant level above the cap {self.level}")
        if beta > self.degree:
            raise CapsError(f"degree {beta} exceeds the cap {self.degree}")


Insertion = tuple  # (level d, index a)


def _key(ins) -> tuple:
    return tuple(sorted(ins))


def _splits(rest):
    for mask in range(1 << len(rest)):
        yield (
            tuple(r for k, r in enumerate(rest) if mask >> k & 1),
            tuple(r for k, r in enumerate(rest) if not mask >> k & 1),
            mask,
        )


class Gravity:
    """B-side genus-0 descendant theory reconstructed from a FrobeniusData.

    ``shift`` is added to the potential before anything is derived from it;
    it exists so that tests can corrupt one side of a comparison on purpose.
    """

    def __init__(self, fd: FrobeniusData, shift: LaurentPoly = ZERO):
        self.fd = fd
        self.coords = fd.coords
        self.mu = fd.mu
        self.phi = fd.potential + shift
        self.q = fd.lg.parameters[0] if fd.lg.parameters else None
        self.eta = [[x.constant_value() for x in row] for row in fd.eta]
        self.eta_inv = [[x.constant_value() for x in row] for row in fd.eta_inv]
        self._pairs = [
            (e, f, self.eta_inv[e][f]) for e in range(self.mu) for f in range(self.mu) if self.eta_inv[e][f]
        ]
        d = self.coords.d
        n = self.mu
        third = {}
        for a, b, c in combinations_with_replacement(range(n), 3):
            third[a, b, c] = d(d(d(self.phi, a), b), c)
        self._up = {}
        for a in range(n):
            for b in range(n):
                for e in range(n):
                    tot = ZERO
                    for f in range(n):
                        if self.eta_inv[f][e]:
                            tot = tot + third[tuple(sorted((a, b, f)))] * self.eta_inv[f][e]
                    self._up[a, b, e] = tot
        self._h = {}
        self._cache_b = {}
        self._cache_g = {}
        self._cache_p = {}

    # evaluation -----------------------------------------------------------
    def evaluate(self, p: LaurentPoly, beta: int) -> Fraction:
        v = p.subs(self.coords.origin())
        if self.q is None:
            return v.constant_value() if beta == 0 else Fraction(0)
        c = v.coeff(self.q, beta)
        return c.constant_value()

    # deformed flat functions ---------------------------------------------
    def h(self, l: int, d: int) -> LaurentPoly:
        """h_{l,d}; level -1 is eta_{la} t^a and each level solves the TRR."""
        key = (l, d)
        if key in self._h:
            return self._h[key]
        names = self.coords.names
        if d == -1:
            out = sum((var(names[a]) * self.eta[l][a] for a in range(self.mu) if self.eta[l][a]), ZERO)
            self._h[key] = out
            return out
        prev = self.h(l, d - 1)
        dprev = [self.coords.d(prev, e) for e in range(self.mu)]
        R = {}
        for a in range(self.mu):
            for b in range(a, self.mu):
                R[a, b] = R[b, a] = sum((self._up[a, b, e] * dprev[e] for e in range(self.mu)), ZERO)
        # string equation fixes d_0 h_{l,d} = h_{l,d-1}
        first = [prev]
        for a in range(1, self.mu):
            first.append(self.coords.potential([R[a, b] for b in range(self.mu)]))
        out = self.coords.potential(first)
        for a in range(self.mu):
            for b in range(a, self.mu):
                if self.coords.d(self.coords.d(out, a), b) != R[a, b]:
                    raise FrobeniusError("descendants", f"h_{l},{d} fails the recursion at ({a},{b})")
        self._h[key] = out
        return out

    # correlators ------------------------------------------------------------
    def primary(self, ins, beta: int) -> Fraction:
        key = (_key(ins), beta)
        if key not in self._cache_p:
            e = self.phi
            for _, a in ins:
                e = self.coords.d(e, a)
            self._cache_p[key] = self.evaluate(e, beta)
        return self._cache_p[key]

    def _trr(self, ins, beta, fn, nonempty: bool) -> Fraction:
        i = next(k for k, (dd, _) in enumerate(ins) if dd > 0)
        dd, a = ins[i]
        others = ins[:i] + ins[i + 1:]
        X, Y, rest = others[0], others[1], others[2:]
        tot = Fraction(0)
        for S1, S2, mask in _splits(rest):
            if nonempty and not mask:
                continue
            for b1 in range(beta + 1):
                for e, f, w in self._pairs:
                    left = fn(((dd - 1, a),) + S1 + ((0, e),), b1)
                    if left:
                        tot += w * left * fn(((0, f), X, Y) + S2, beta - b1)
        return tot

    def correlator(self, ins, beta: int) -> Fraction:
        """<sigma_d1(O_a1) ... >_{0,beta} of the descendant potential."""
        ins = _key(ins)
        key = (ins, beta)
        if key in self._cache_b:
            return self._cache_b[key]
        n = len(ins)
        if beta < 0 or any(d < 0 for d, _ in ins) or (beta == 0 and n < 3) or n == 0:
            val = Fraction(0)
        else:
            desc = [k for k, (d, _) in enumerate(ins) if d > 0]
            if not desc:
                val = self.primary(ins, beta)
            elif len(desc) == 1:
                k = desc[0]
                d, l = ins[k]
                e = self.h(l, d)
                for j, (_, a) in enumerate(ins):
                    if j != k:
                        e = self.coords.d(e, a)
                val = self.evaluate(e, beta)
            elif n >= 3:
                val = self._trr(ins, beta, self.correlator, nonempty=False)
            else:
                (j, b), (i1, a) = ins  # lower the smaller level
                val = -self.correlator(((i1 + 1, a), (j - 1, b)), beta)
                for b1 in range(beta + 1):
                    for e, f, w in self._pairs:
                        left = self.correlator(((i1, a), (0, e)), b1)
                        if left:
                            val += w * left * self.correlator(((0, f), (j - 1, b)), beta - b1)
        self._cache_b[key] = val
        return val

    def ancestor(self, ins, beta: int) -> Fraction:
        """Correlators of the cohomological field theory built from the potential.

        Only stable points (n >= 3) with total level at most n - 3 are nonzero;
        levels are removed by the TRR with both sides stable.
        """
        ins = _key(ins)
        key = (ins, beta)
        if key in self._cache_g:
            return self._cache_g[key]
        n = len(ins)
        if beta < 0 or n < 3 or sum(d for d, _ in ins) > n - 3:
            val = Fraction(0)
        elif all(d == 0 for d, _ in ins):
            val = self.primary(ins, beta)
        else:
            val = self._trr(ins, beta, self.ancestor, nonempty=True)
        self._cache_g[key] = val
        return val


def deformed_flat(fd: FrobeniusData, l: int, d: int) -> LaurentPoly:
    return Gravity(fd).h(l, d)


def descendant_correlator(ins, beta: int, fd: FrobeniusData, caps: Caps = Caps(), gravity: Gravity | None = None) -> Fraction:
    caps.check(ins, beta)
    return (gravity or Gravity(fd)).correlator(ins, beta)


# --------------------------------------------------------------------------
# tables and axioms


def slots(mu: int, level: int) -> list:
    return [(d, a) for d in range(level + 1) for a in range(mu)]


@dataclass
class CorrelatorTable:
    """Correlator values keyed by (sorted insertions, beta)."""

    caps: Caps
    entries: dict = field(default_factory=dict)

    def nonzero(self) -> dict:
        return {k: v for k, v in self.entries.items() if v}

    def as_list(self) -> list:
        return [
            {"insertions": [list(x) for x in ins], "beta": beta, "value": str(v)}
            for (ins, beta), v in sorted(self.entries.items())
            if v
        ]


def build_table(fn, mu: int, caps: Caps, min_insertions: int = 1, dimension=None) -> CorrelatorTable:
    table = CorrelatorTable(caps)
    for n in range(min_insertions, caps.insertions + 1):
        for ins in combinations_with_replacement(slots(mu, caps.level), n):
            for beta in range(caps.degree + 1):
                if dimension is not None and not dimension(ins, beta):
                    continue
                table.entries[ins, beta] = fn(ins, beta)
    return table


def cp1_dimension(ins, beta: int) -> bool:
    """Virtual dimension constraint for CP1: sum (d + deg O_a) = 2 beta + n - 2."""
    return sum(d + a for d, a in ins) == 2 * beta + len(ins) - 2


def _remove_one(ins, item):
    ins = list(ins)
    ins.remove(item)
    return tuple(ins)


@dataclass
class AxiomCheck:
    name: str
    checked: int = 0
    failures: list = field(default_factory=list)

    def as_dict(self) -> dict:
        return {"checked": self.checked, "failed": len(self.failures), "examples": self.failures[:5]}


def axiom_ledger(table: CorrelatorTable, fn, divisor: int | None = None, cup=None) -> dict:
    """String, dilaton and divisor equations on every table entry they apply to.

    ``fn`` recomputes correlators outside the table when a reduced entry is
    needed. For the divisor equation ``divisor`` is the index of the divisor
    class and ``cup(a)`` the index of O_divisor * O_a (None if it vanishes).
    """
    string, dilaton, div = AxiomCheck("string"), AxiomCheck("dilaton"), AxiomCheck("divisor")
    for (ins, beta), val in table.entries.items():
        n = len(ins)
        # the reduced point must be stable: n - 1 >= 3 or beta > 0
        stable = n >= 4 or (beta > 0 and n >= 2)
        if (0, 0) in ins and stable:
            X = _remove_one(ins, (0, 0))
            expected = Fraction(0)
            for k, (d, a) in enumerate(X):
                if d > 0:
                    expected += fn(X[:k] + ((d - 1, a),) + X[k + 1:], beta)
            string.checked += 1
            if expected != val:
                string.failures.append(_fmt(ins, beta, val, expected))
        if (1, 0) in ins and stable:
            X = _remove_one(ins, (1, 0))
            expected = (len(X) - 2) * fn(X, beta)
            dilaton.checked += 1
            if expected != val:
                dilaton.failures.append(_fmt(ins, beta, val, expected))
        if divisor is not None and beta >= 1 and (0, divisor) in ins and n >= 2:
            X = _remove_one(ins, (0, divisor))
            expected = beta * fn(X, beta)
            for k, (d, a) in enumerate(X):
                target = cup(a)
                if d > 0 and target is not None:
                    expected += fn(X[:k] + ((d - 1, target),) + X[k + 1:], beta)
            div.checked += 1
            if expected != val:
                div.failures.append(_fmt(ins, beta, val, expected))
    out = {"string": string, "dilaton": dilaton}
    if divisor is not None:
        out["divisor"] = div
    return out


def _fmt(ins, beta, got, expected) -> str:
    return f"{list(ins)} beta={beta}: {got} != {expected}"


# --------------------------------------------------------------------------
# generating functions and the mirror map


def slot_var(slot) -> str:
    d, a = slot
    return f"T{a}_{d}"


def generating_function(fn, mu: int, caps: Caps, q: str = "q", min_insertions: int = 3) -> LaurentPoly:
    """sum over multisets of fn(ins, beta) q^beta prod T / automorphisms."""
    total = {}
    qv = q
    for n in range(min_insertions, caps.insertions + 1):
        for ins in combinations_with_replacement(slots(mu, caps.level), n):
            w = Fraction(1)
            for m in Counter(ins).values():
                for k in range(2, m + 1):
                    w /= k
            mono = Counter(slot_var(s) for s in ins)
            for beta in range(caps.degree + 1):
                val = fn(ins, beta)
                if val:
                    exps = dict(mono)
                    if beta:
                        exps[qv] = beta
                    key = tuple(sorted(exps.items()))
                    total[key] = total.get(key, 0) + w * val
    return LaurentPoly(total)


def mirror_map(gravity: Gravity, caps: Caps, q: str = "q") -> dict:
    """t~^i_d = t^i_d + sum_{e > d, beta >= 1} t^j_e q^beta sum_f eta^{if} <sigma_{e-d-1}(O_j) O_f>_beta.

    Returned as a substitution {slot variable: affine form}.
    """
    mu = gravity.mu
    out = {}
    for d, i in slots(mu, caps.level):
        form = var(slot_var((d, i)))
        for e, j in slots(mu, caps.level):
            k = e - d - 1
            if k < 0:
                continue
            for beta in range(1, caps.degree + 1):
                coef = Fraction(0)
                for f in range(mu):
                    w = gravity.eta_inv[i][f]
                    if w:
                        coef += w * gravity.correlator(((k, j), (0, f)), beta)
                if coef:
                    form = form + var(slot_var((e, j))) * var(q, beta) * coef
        out[slot_var((d, i))] = form
    return out


def apply_mirror_map(p: LaurentPoly, mapping: dict, caps: Caps, q: str = "q") -> LaurentPoly:
    out = p.subs(mapping)
    return out.map_terms(lambda m, c: dict(m).get(q, 0) <= caps.degree)


@dataclass
class Comparison:
    max_discrepancy: Fraction
    nonzero_terms: int
    compared_terms: int
    examples: list

    def as_dict(self) -> dict:
        return {
            "max_discrepancy": str(self.max_discrepancy),
            "nonzero_terms": self.nonzero_terms,
            "compared_terms": self.compared_terms,
            "examples": self.examples,
        }


def compare_free_energies(a_side, gravity: Gravity, caps: Caps, use_mirror_map: bool = True, q: str = "q") -> Comparison:
    """Largest |coefficient| of Phi_A(t) - Phi_grav(t~(t)) within the caps.

    Terms of total t-degree below 3 are ignored (the quadratic ambiguity), as
    are terms beyond the insertion and q-degree caps.
    """
    mu = gravity.mu
    st = generating_function(a_side, mu, caps, q)
    grav = generating_function(gravity.ancestor, mu, caps, q)
    if use_mirror_map:
        grav = apply_mirror_map(grav, mirror_map(gravity, caps, q), caps, q)
    diff = st - grav
    names = {slot_var(s) for s in slots(mu, caps.level)}

    def in_range(m):
        tdeg = sum(e for v, e in m if v in names)
        return 3 <= tdeg <= caps.insertions and dict(m).get(q, 0) <= caps.degree

    compared = sum(1 for m, _ in (st + grav).items() if in_range(m))
    bad = [(m, c) for m, c in diff.items() if in_range(m)]
    worst = max((abs(c) for _, c in bad), default=Fraction(0))
    examples = [f"{c} * {LaurentPoly({m: 1})}" for m, c in sorted(bad)[:5]]
    return Comparison(worst, len(bad), compared, examples)


def one_point_tower(gravity: Gravity, top: int) -> list:
    """<sigma_{2d-2}(O_1)>_{0,d} for d = 1..top."""
    return [gravity.correlator(((2 * d - 2, 1),), d) for d in range(1, top + 1)]


AXIOM_NOTE = (
    "string, dilaton and divisor equations are standard genus-0 axioms imported "
    "as checks; they are not inputs to the reconstruction"
)

