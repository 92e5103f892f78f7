"""Groebner bases, elimination ideals, quotient counting and univariate
radical parts, on top of the integer kernel."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from ..errors import (
    NotPrincipal,
    NotZeroDimensional,
    ZeroIdeal,
    ZeroPolynomial,
)
from ..polyring.orders import GREVLEX, MonomialOrder, block_elimination
from ..polyring.poly import Polynomial, RingContext
from . import univariate as uv
from .kernel import (
    IPoly,
    KernelLimits,
    _Row,
    buchberger_core,
    limits_for,
    normal_form,
    order_keys,
    s_polynomial,
)

__all__ = [
    "GroebnerBasis",
    "EliminationResult",
    "KernelLimits",
    "limits_for",
    "buchberger",
    "eliminate",
    "quotient_dimension",
    "univariate_generator",
    "squarefree_part",
    "reduce_modulo",
    "spoly",
    "is_groebner_basis",
]


def _to_int_poly(f: Polynomial) -> IPoly:
    denom_lcm = 1
    for c in f.terms.values():
        denom_lcm = denom_lcm * c.denominator // math.gcd(
            denom_lcm, c.denominator
        )
    return {
        m: c.numerator * (denom_lcm // c.denominator)
        for m, c in f.terms.items()
    }


def _from_int_poly(p: IPoly, ring: RingContext) -> Polynomial:
    return Polynomial(ring, {m: Fraction(c) for m, c in p.items()})


def _monic(f: Polynomial, order: MonomialOrder) -> Polynomial:
    _, lc = f.leading_term(order)
    return f * (1 / lc)


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced Groebner basis; elements are monic."""

    ring: RingContext
    order: MonomialOrder
    elements: tuple[Polynomial, ...]

    def leading_monomials(self):
        return tuple(g.leading_term(self.order)[0] for g in self.elements)

    def contains_one(self) -> bool:
        return any(g.is_constant() and not g.is_zero() for g in self.elements)


@dataclass(frozen=True)
class EliminationResult:
    """Generators of an elimination ideal, in the retained-variable ring."""

    ring: RingContext  # ring of the retained variables
    generators: tuple[Polynomial, ...]
    is_principal: bool
    is_zero_ideal: bool


def buchberger(
    generators: list[Polynomial],
    order: MonomialOrder,
    limits: KernelLimits | None = None,
) -> GroebnerBasis:
    """Reduced Groebner basis of <generators> under ``order``.

    Raises ResourceLimit when the pair or wall-clock budget is exceeded,
    which signals that the instance is beyond desk scale.
    """
    if not generators:
        raise ValueError("need at least one generator")
    ring = generators[0].ring
    if any(g.ring != ring for g in generators):
        raise ValueError("generators live in different rings")
    gens = [_to_int_poly(g) for g in generators if not g.is_zero()]
    basis_int = buchberger_core(gens, order, limits)
    elements = tuple(
        _monic(_from_int_poly(p, ring), order) for p in basis_int
    )
    return GroebnerBasis(ring, order, elements)


def eliminate(
    generators: list[Polynomial],
    drop_vars: set[str] | frozenset[str],
    limits: KernelLimits | None = None,
    retained_order: MonomialOrder = GREVLEX,
) -> EliminationResult:
    """Generators of <generators> intersected with the subring of the
    retained variables, via a block-elimination Groebner basis."""
    if not generators:
        raise ValueError("need at least one generator")
    ring = generators[0].ring
    drop_vars = set(drop_vars)
    unknown = drop_vars - set(ring.variables)
    if unknown:
        raise ValueError(f"not ring variables: {sorted(unknown)}")

    dropped = [v for v in ring.variables if v in drop_vars]
    retained = [v for v in ring.variables if v not in drop_vars]
    perm_ring = RingContext(
        tuple(dropped + retained), block_elimination(len(dropped))
    )
    perm = [ring.index(v) for v in perm_ring.variables]

    def to_perm(f: Polynomial) -> Polynomial:
        return Polynomial(
            perm_ring,
            {tuple(m[i] for i in perm): c for m, c in f.terms.items()},
        )

    gb = buchberger(
        [to_perm(g) for g in generators], perm_ring.order, limits
    )

    k = len(dropped)
    out_ring = RingContext(tuple(retained), retained_order)
    kept: list[Polynomial] = []
    for g in gb.elements:
        if all(not any(m[:k]) for m in g.terms):
            kept.append(
                Polynomial(
                    out_ring, {m[k:]: c for m, c in g.terms.items()}
                )
            )
    kept.sort(
        key=lambda f: retained_order.key()(f.leading_term(retained_order)[0]),
        reverse=True,
    )
    return EliminationResult(
        ring=out_ring,
        generators=tuple(kept),
        is_principal=len(kept) == 1,
        is_zero_ideal=not kept,
    )


def quotient_dimension(basis: GroebnerBasis, unknowns) -> int:
    """Number of standard monomials of a zero-dimensional basis =
    dim_Q of the quotient = number of solutions with multiplicity."""
    ring = basis.ring
    unknowns = set(unknowns)
    if unknowns != set(ring.variables):
        raise ValueError(
            "quotient counting expects the basis ring to be exactly the "
            "unknowns; specialize parameters first"
        )
    if not basis.elements:
        raise NotZeroDimensional("zero ideal has no finite quotient")
    if basis.contains_one():
        return 0
    lms = basis.leading_monomials()
    n = ring.nvars
    for i in range(n):
        if not any(
            m[i] and all(e == 0 for j, e in enumerate(m) if j != i)
            for m in lms
        ):
            raise NotZeroDimensional(
                f"no pure power of {ring.variables[i]!r} among the leading "
                "monomials"
            )

    def reducible(m):
        return any(all(a <= b for a, b in zip(lm, m)) for lm in lms)

    origin = (0,) * n
    seen = {origin}
    queue = [origin]
    count = 0
    while queue:
        m = queue.pop()
        count += 1
        for i in range(n):
            m2 = m[:i] + (m[i] + 1,) + m[i + 1:]
            if m2 not in seen and not reducible(m2):
                seen.add(m2)
                queue.append(m2)
    return count


def univariate_generator(result: EliminationResult) -> Polynomial:
    """Monic generator of a principal elimination ideal in one variable."""
    if result.ring.nvars != 1:
        raise ValueError("elimination retained more than one variable")
    if result.is_zero_ideal:
        raise ZeroIdeal(
            "elimination ideal is zero: the projection is dominant in this "
            "direction"
        )
    if not result.is_principal:
        raise NotPrincipal(
            f"{len(result.generators)} generators in one variable"
        )
    return _monic(result.generators[0], result.ring.order)


def squarefree_part(f: Polynomial) -> Polynomial:
    """Monic f / gcd(f, f') for univariate f: same roots, all simple."""
    if f.is_zero():
        raise ZeroPolynomial("squarefree part of the zero polynomial")
    return uv.from_dense(uv.squarefree_dense(uv.to_dense(f)), f.ring)


# -- verification helpers (used heavily by the test suite) -------------------


def reduce_modulo(f: Polynomial, basis: GroebnerBasis) -> Polynomial:
    """Normal form of f modulo the basis (zero iff f is in the ideal)."""
    keyf, negkeyf = order_keys(basis.order)
    rows = [_Row(_to_int_poly(g), keyf) for g in basis.elements]
    nf = normal_form(_to_int_poly(f), rows, keyf, negkeyf)
    return _from_int_poly(nf, f.ring)


def spoly(f: Polynomial, g: Polynomial, order: MonomialOrder) -> Polynomial:
    keyf, _ = order_keys(order)
    s = s_polynomial(_Row(_to_int_poly(f), keyf), _Row(_to_int_poly(g), keyf))
    return _from_int_poly(s, f.ring)


def is_groebner_basis(basis: GroebnerBasis) -> bool:
    """Buchberger criterion: every S-polynomial reduces to zero."""
    els = basis.elements
    for i in range(len(els)):
        for j in range(i + 1, len(els)):
            s = spoly(els[i], els[j], basis.order)
            if not reduce_modulo(s, basis).is_zero():
                return False
    return True
