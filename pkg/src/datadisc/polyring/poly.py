"""Sparse multivariate polynomials with exact rational coefficients.

The coefficient field is Q, realised by :class:`fractions.Fraction`
(arbitrary precision, always in lowest terms with a positive denominator).
A polynomial is a map from exponent tuples to nonzero coefficients, tied to
a :class:`RingContext`. Polynomials are immutable after construction and
safe to share across tasks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from ..errors import MissingAssignment, ZeroPolynomial
from .orders import GREVLEX, Monomial, MonomialOrder

RationalScalar = Fraction

NEG_INFINITY = float("-inf")

# Exponent guard: degrees in scope are tiny, so anything approaching 2^31
# indicates a runaway computation rather than a legitimate polynomial.
EXPONENT_LIMIT = 2**31


@dataclass(frozen=True)
class RingContext:
    """Ordered variable names plus the active monomial order."""

    variables: tuple[str, ...]
    order: MonomialOrder = GREVLEX
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if isinstance(self.variables, list):
            object.__setattr__(self, "variables", tuple(self.variables))
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("ring variables must be distinct")
        object.__setattr__(
            self, "_index", {v: i for i, v in enumerate(self.variables)}
        )

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"{name!r} is not a variable of {self}") from None

    def with_order(self, order: MonomialOrder) -> "RingContext":
        return RingContext(self.variables, order)

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c) -> "Polynomial":
        c = Fraction(c)
        if c == 0:
            return self.zero()
        return Polynomial(self, {(0,) * self.nvars: c})

    def variable(self, name: str) -> "Polynomial":
        exps = [0] * self.nvars
        exps[self.index(name)] = 1
        return Polynomial(self, {tuple(exps): Fraction(1)})

    def monomial(self, exps: Iterable[int], coeff=1) -> "Polynomial":
        coeff = Fraction(coeff)
        exps = tuple(exps)
        if coeff == 0:
            return self.zero()
        return Polynomial(self, {exps: coeff})

    def __str__(self):
        return f"Q[{', '.join(self.variables)}]"


def ring(*variables: str, order: MonomialOrder = GREVLEX) -> RingContext:
    """Convenience constructor: ``ring("x", "y")``."""
    return RingContext(tuple(variables), order)


class Polynomial:
    """Sparse polynomial over Q. Do not mutate ``terms`` after creation."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: RingContext, terms: Mapping[Monomial, Fraction]):
        n = ring.nvars
        clean: dict[Monomial, Fraction] = {}
        for mono, coeff in terms.items():
            if not isinstance(coeff, Fraction):
                coeff = Fraction(coeff)
            if coeff == 0:
                continue
            if len(mono) != n:
                raise ValueError(
                    f"exponent tuple {mono} does not match {n} ring variables"
                )
            if any(e < 0 for e in mono):
                raise ValueError(f"negative exponent in {mono}")
            if sum(mono) >= EXPONENT_LIMIT:
                raise OverflowError("total degree exceeds the 2^31 guard")
            clean[mono] = coeff
        self.ring = ring
        self.terms = clean

    # -- basic queries ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(sum(m) == 0 for m in self.terms)

    def constant_value(self) -> Fraction:
        if self.is_zero():
            return Fraction(0)
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return next(iter(self.terms.values()))

    def total_degree(self):
        if not self.terms:
            return NEG_INFINITY
        return max(sum(m) for m in self.terms)

    def degree_in(self, name: str) -> int:
        """Degree in one variable; -inf marker for the zero polynomial."""
        if not self.terms:
            return NEG_INFINITY
        i = self.ring.index(name)
        return max(m[i] for m in self.terms)

    def variables_used(self) -> set[str]:
        names = self.ring.variables
        used = set()
        for m in self.terms:
            for i, e in enumerate(m):
                if e:
                    used.add(names[i])
        return used

    def sorted_terms(self, order: MonomialOrder | None = None):
        """Terms as (monomial, coeff), descending in the given order."""
        key = (order or self.ring.order).key()
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def leading_term(self, order: MonomialOrder | None = None):
        if not self.terms:
            raise ZeroPolynomial("zero polynomial has no leading term")
        key = (order or self.ring.order).key()
        mono = max(self.terms, key=key)
        return mono, self.terms[mono]

    def is_homogeneous(self) -> bool:
        degs = {sum(m) for m in self.terms}
        return len(degs) <= 1

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise ValueError("mixed-ring arithmetic")
            return other
        return self.ring.constant(other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = Fraction(other)
            if c == 0:
                return self.ring.zero()
            return Polynomial(
                self.ring, {m: c * v for m, v in self.terms.items()}
            )
        other = self._coerce(other)
        if not self.terms or not other.terms:
            return self.ring.zero()
        if self.total_degree() + other.total_degree() >= EXPONENT_LIMIT:
            raise OverflowError("product degree exceeds the 2^31 guard")
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                s = out.get(m, 0) + c1 * c2
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return Polynomial(self.ring, out)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        c = Fraction(scalar)
        if c == 0:
            raise ZeroDivisionError("division of polynomial by zero scalar")
        return self * (1 / c)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base_needed = n > 1
            n >>= 1
            if base_needed and n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == self.ring.constant(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        from .parser import format_polynomial

        return format_polynomial(self)

    __str__ = __repr__


# -- module-level operations ------------------------------------------------


def total_degree(f: Polynomial):
    """Max term degree; NEG_INFINITY for the zero polynomial."""
    return f.total_degree()


def derivative(f: Polynomial, name: str) -> Polynomial:
    """Exact formal partial derivative."""
    i = f.ring.index(name)
    out: dict[Monomial, Fraction] = {}
    for m, c in f.terms.items():
        e = m[i]
        if e == 0:
            continue
        dm = m[:i] + (e - 1,) + m[i + 1:]
        s = out.get(dm, 0) + c * e
        if s:
            out[dm] = s
        else:
            out.pop(dm, None)
    return Polynomial(f.ring, out)


def substitute(
    f: Polynomial,
    assignments: Mapping[str, Polynomial],
    target: RingContext | None = None,
) -> Polynomial:
    """Image of ``f`` under the ring homomorphism sending each variable to
    its assigned polynomial.

    Every variable actually occurring in ``f`` must have an assignment;
    otherwise MissingAssignment is raised. All images must live in one
    target ring (inferred from the assignments when not given).
    """
    if target is None:
        for img in assignments.values():
            target = img.ring
            break
        if target is None:
            raise MissingAssignment("no assignments and no target ring")
    images: dict[int, Polynomial] = {}
    for name, img in assignments.items():
        if img.ring != target:
            raise ValueError("assignment images live in different rings")
        images[f.ring.index(name)] = img

    missing = f.variables_used() - set(assignments)
    if missing:
        raise MissingAssignment(
            f"no assignment for variable(s) {sorted(missing)}"
        )

    power_cache: dict[tuple[int, int], Polynomial] = {}

    def power(i: int, e: int) -> Polynomial:
        got = power_cache.get((i, e))
        if got is None:
            got = images[i] ** e
            power_cache[(i, e)] = got
        return got

    acc = target.zero()
    for m, c in f.terms.items():
        term = target.constant(c)
        for i, e in enumerate(m):
            if e:
                term = term * power(i, e)
        acc = acc + term
    return acc


def partial_substitute(
    f: Polynomial, assignments: Mapping[str, Polynomial], target: RingContext
) -> Polynomial:
    """Like substitute() but variables without an assignment map to their
    namesakes in the target ring (which must contain them)."""
    full = dict(assignments)
    for name in f.variables_used():
        if name not in full:
            full[name] = target.variable(name)
    return substitute(f, full, target)


def evaluate(f: Polynomial, point: Mapping[str, Fraction]) -> Fraction:
    """Exact value of ``f`` at a rational point (all used variables set)."""
    missing = f.variables_used() - set(point)
    if missing:
        raise MissingAssignment(f"no value for variable(s) {sorted(missing)}")
    idx_vals = {f.ring.index(name): Fraction(v) for name, v in point.items()}
    acc = Fraction(0)
    for m, c in f.terms.items():
        v = c
        for i, e in enumerate(m):
            if e:
                v *= idx_vals[i] ** e
        acc += v
    return acc


def normalize_integer_primitive(
    f: Polynomial, order: MonomialOrder | None = None
) -> Polynomial:
    """Scale ``f`` to coprime integer coefficients with a positive leading
    coefficient under ``order`` (the ring's active order by default).

    Idempotent and invariant under nonzero rational scaling; this is the
    canonical representative used for all printed discriminants.
    """
    if f.is_zero():
        raise ZeroPolynomial("cannot normalize the zero polynomial")
    denom_lcm = 1
    for c in f.terms.values():
        denom_lcm = denom_lcm * c.denominator // math.gcd(denom_lcm, c.denominator)
    nums = [c.numerator * denom_lcm // c.denominator for c in f.terms.values()]
    content = 0
    for v in nums:
        content = math.gcd(content, v)
    scale = Fraction(denom_lcm, content)
    _, lead = f.leading_term(order)
    if lead < 0:
        scale = -scale
    return f * scale
