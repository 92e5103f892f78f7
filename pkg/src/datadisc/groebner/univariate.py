"""Dense univariate helpers over Q.

Coefficient lists are indexed by degree (c[0] + c[1]*x + ...). Used for
squarefree parts, monic generators and the Sturm machinery; degrees in
scope stay tiny so plain Fraction arithmetic is fine.
"""

from __future__ import annotations

import math
from fractions import Fraction

from ..polyring.poly import Polynomial, RingContext


def to_dense(f: Polynomial) -> list[Fraction]:
    if f.ring.nvars != 1:
        raise ValueError("polynomial is not univariate")
    if not f.terms:
        return []
    deg = max(m[0] for m in f.terms)
    out = [Fraction(0)] * (deg + 1)
    for (e,), c in f.terms.items():
        out[e] = c
    return out


def from_dense(coeffs: list[Fraction], ring: RingContext) -> Polynomial:
    return Polynomial(ring, {(i,): c for i, c in enumerate(coeffs) if c})


def trim(c: list[Fraction]) -> list[Fraction]:
    while c and c[-1] == 0:
        c.pop()
    return c


def degree(c: list[Fraction]) -> int:
    """Degree, with -1 for the zero polynomial."""
    return len(c) - 1


def deriv(c: list[Fraction]) -> list[Fraction]:
    return [i * c[i] for i in range(1, len(c))]


def monic(c: list[Fraction]) -> list[Fraction]:
    lc = c[-1]
    return [x / lc for x in c]


def divmod_dense(a: list[Fraction], b: list[Fraction]):
    """Exact quotient/remainder over Q."""
    if not b:
        raise ZeroDivisionError("univariate division by zero")
    r = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    db = len(b) - 1
    lb = b[-1]
    while len(r) - 1 >= db and trim(r):
        shift = len(r) - 1 - db
        factor = r[-1] / lb
        q[shift] = factor
        for i in range(db + 1):
            r[shift + i] -= factor * b[i]
        r.pop()  # leading term cancelled exactly
        trim(r)
    return trim(q), trim(r)


def int_primitive(c: list[Fraction]) -> list[int]:
    """Scale by a positive rational to coprime integers (sign preserved)."""
    if not c:
        return []
    denom_lcm = 1
    for x in c:
        denom_lcm = denom_lcm * x.denominator // math.gcd(
            denom_lcm, x.denominator
        )
    nums = [x.numerator * denom_lcm // x.denominator for x in c]
    g = 0
    for v in nums:
        g = math.gcd(g, v)
    return [v // g for v in nums]


def gcd_dense(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    """Monic gcd over Q (monic remainders keep coefficient growth tame)."""
    a, b = trim(list(a)), trim(list(b))
    while b:
        _, r = divmod_dense(a, b)
        a, b = b, r
        if a:
            a = monic(a)
    return monic(a) if a else []


def squarefree_dense(c: list[Fraction]) -> list[Fraction]:
    """Monic squarefree part c / gcd(c, c'); constants collapse to 1."""
    c = trim(list(c))
    if not c:
        raise ZeroDivisionError("squarefree part of the zero polynomial")
    if len(c) == 1:
        return [Fraction(1)]
    g = gcd_dense(c, deriv(c))
    q, r = divmod_dense(c, g)
    assert not r, "gcd must divide"
    return monic(q)


def eval_dense(c: list[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for coeff in reversed(c):
        acc = acc * x + coeff
    return acc
