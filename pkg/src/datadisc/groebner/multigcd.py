"""Multivariate gcd (primitive PRS) and exact division.

Only needed to strip repeated factors off principal eliminants: the
squarefree proxy is G / gcd(G, dG/dv1, ..., dG/dvn), which removes every
repeated irreducible factor in characteristic zero without factoring.
Inputs stay desk-scale (the eliminants this package produces), so the
textbook primitive polynomial remainder sequence is adequate.
"""

from __future__ import annotations

from fractions import Fraction

from ..polyring.orders import GREVLEX
from ..polyring.poly import (
    Polynomial,
    derivative,
    normalize_integer_primitive,
)


def exact_divide(f: Polynomial, g: Polynomial) -> Polynomial:
    """Quotient f/g when g divides f exactly; ValueError otherwise."""
    if g.is_zero():
        raise ZeroDivisionError("exact division by the zero polynomial")
    ring = f.ring
    lmg, lcg = g.leading_term(GREVLEX)
    out: dict = {}
    rem = f
    while not rem.is_zero():
        lm, lc = rem.leading_term(GREVLEX)
        q = tuple(a - b for a, b in zip(lm, lmg))
        if any(e < 0 for e in q):
            raise ValueError("not exactly divisible")
        qc = lc / lcg
        out[q] = qc
        rem = rem - ring.monomial(q, qc) * g
    return Polynomial(ring, out)


def _main_variable(f: Polynomial, g: Polynomial) -> str | None:
    used = sorted(f.variables_used() | g.variables_used())
    if not used:
        return None
    # picking the variable of smallest joint degree keeps the PRS short
    def joint_degree(v):
        df = f.degree_in(v)
        dg = g.degree_in(v)
        return max(df if df != float("-inf") else 0,
                   dg if dg != float("-inf") else 0)
    return min(used, key=lambda v: (joint_degree(v), v))


def _coeffs_in(f: Polynomial, var: str) -> dict[int, Polynomial]:
    """View f as a univariate polynomial in ``var`` with polynomial
    coefficients (same ring, exponent of var zeroed)."""
    i = f.ring.index(var)
    out: dict[int, dict] = {}
    for m, c in f.terms.items():
        e = m[i]
        rest = m[:i] + (0,) + m[i + 1:]
        out.setdefault(e, {})[rest] = c
    return {e: Polynomial(f.ring, d) for e, d in out.items()}


def _from_coeffs(coeffs: dict[int, Polynomial], var: str, ring) -> Polynomial:
    i = ring.index(var)
    out: dict = {}
    for e, poly in coeffs.items():
        for m, c in poly.terms.items():
            out[m[:i] + (e,) + m[i + 1:]] = c
    return Polynomial(ring, out)


def _pseudo_rem(f: Polynomial, g: Polynomial, var: str) -> Polynomial:
    """prem(f, g) w.r.t. var: lc(g)^(df-dg+1) * f mod g, all exact."""
    ring = f.ring
    xi = ring.variable(var)
    dg = g.degree_in(var)
    lcg = _coeffs_in(g, var)[dg]
    r = f
    while not r.is_zero():
        dr = r.degree_in(var)
        if dr < dg:
            break
        lead = _coeffs_in(r, var)[dr]
        r = r * lcg - lead * (xi ** (dr - dg)) * g
    return r


def _content_wrt(f: Polynomial, var: str) -> Polynomial:
    coeffs = list(_coeffs_in(f, var).values())
    acc = coeffs[0]
    for c in coeffs[1:]:
        acc = multivariate_gcd(acc, c)
        if acc.is_constant():
            break
    return acc


def multivariate_gcd(f: Polynomial, g: Polynomial) -> Polynomial:
    """gcd over Q up to scalars; integer-primitive, positive leading
    coefficient. gcd(f, 0) = normalized f.

    Uses the subresultant polynomial remainder sequence, which divides
    each pseudo-remainder by a predictable factor instead of recomputing
    multivariate contents at every step (the classic primitive-PRS trap).
    """
    if f.is_zero() and g.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    if f.is_zero():
        return normalize_integer_primitive(g, GREVLEX)
    if g.is_zero():
        return normalize_integer_primitive(f, GREVLEX)
    if f.is_constant() or g.is_constant():
        return f.ring.one()
    var = _main_variable(f, g)
    if f.degree_in(var) < g.degree_in(var):
        f, g = g, f

    cont_f = _content_wrt(f, var)
    cont_g = _content_wrt(g, var)
    cont = multivariate_gcd(cont_f, cont_g)
    a = exact_divide(f, cont_f)
    b = exact_divide(g, cont_g)

    one = f.ring.one()
    gg, h = one, one
    while True:
        delta = a.degree_in(var) - b.degree_in(var)
        r = _pseudo_rem(a, b, var)
        if r.is_zero():
            break
        if r.degree_in(var) <= 0:
            # nonzero remainder free of the main variable: coprime in it
            return normalize_integer_primitive(cont, GREVLEX)
        a, b = b, exact_divide(r, gg * h**delta)
        gg = _coeffs_in(a, var)[a.degree_in(var)]
        if delta >= 1:
            h = exact_divide(gg**delta, h ** (delta - 1))
    pp = exact_divide(b, _content_wrt(b, var))
    return normalize_integer_primitive(cont * pp, GREVLEX)


def squarefree_part_multivariate(f: Polynomial) -> Polynomial:
    """Product of the distinct irreducible factors of f (up to scalar),
    as integer-primitive with positive grevlex leading coefficient."""
    f = normalize_integer_primitive(f, GREVLEX)
    if f.is_constant():
        return f.ring.one()
    g = f
    for v in sorted(f.variables_used()):
        g = multivariate_gcd(g, derivative(f, v))
        if g.is_constant():
            return f
    return normalize_integer_primitive(exact_divide(f, g), GREVLEX)
