"""Real and positive critical points at concrete data.

The count of real solutions (and of solutions with a strictly positive
probability block) is obtained exactly: specialize the data, move the
zero-dimensional ideal into shape position with a random separating
linear form w, count real roots of the w-minimal polynomial by Sturm
sequences, and decide the sign of every probability coordinate at every
real root by bisection with rational interval arithmetic. No floating
point is used anywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from ._seeds import rng
from .errors import (
    EndpointRoot,
    NotShapePosition,
    NotZeroDimensional,
    ResourceLimit,
)
from .groebner import KernelLimits, buchberger, quotient_dimension
from .groebner import univariate as uv
from .likelihood import LagrangeSystem
from .polyring import (
    LEX,
    Polynomial,
    RingContext,
    evaluate,
    format_polynomial,
)

MAX_FORM_ATTEMPTS = 5


@dataclass(frozen=True)
class SturmSequence:
    """p, p', then the negated Euclidean remainders (scaled by positive
    rationals, which preserves every sign evaluation)."""

    chain: tuple[Polynomial, ...]

    @property
    def polynomial(self) -> Polynomial:
        return self.chain[0]


@dataclass(frozen=True)
class ClassificationResult:
    data: tuple[Fraction, ...]
    real_count: int
    positive_count: int
    dxj_sign: int | None  # -1 / 0 / +1, None when no DX_J was supplied
    dxp_zero: bool
    shape_variable: str  # the separating linear form, as text


@dataclass(frozen=True)
class CensusResult:
    classes: tuple[tuple[int, int, int, int], ...]  # (sign, real, pos, count)
    skipped: int


# -- Sturm machinery ------------------------------------------------------------


def _sturm_chain_dense(c: list[Fraction]) -> list[list[int]]:
    chain = [uv.int_primitive(c)]
    d = uv.deriv([Fraction(x) for x in chain[0]])
    if d:
        chain.append(uv.int_primitive(d))
    while len(chain) >= 2 and uv.degree([Fraction(x) for x in chain[-1]]) > 0:
        a = [Fraction(x) for x in chain[-2]]
        b = [Fraction(x) for x in chain[-1]]
        _, r = uv.divmod_dense(a, b)
        if not r:
            break
        chain.append(uv.int_primitive([-x for x in r]))
    return chain


def build_sturm_sequence(f: Polynomial) -> SturmSequence:
    dense = _sturm_chain_dense(uv.to_dense(f))
    return SturmSequence(
        tuple(
            uv.from_dense([Fraction(x) for x in c], f.ring) for c in dense
        )
    )


def _sign_at(c: list[int], x: Fraction | None, positive_infinity: bool) -> int:
    """Sign of the chain element at x, or at +/-infinity when x is None."""
    if x is None:
        lead = c[-1]
        if positive_infinity:
            return (lead > 0) - (lead < 0)
        deg = len(c) - 1
        s = (lead > 0) - (lead < 0)
        return s if deg % 2 == 0 else -s
    v = uv.eval_dense([Fraction(y) for y in c], x)
    return (v > 0) - (v < 0)


def _variations(chain: list[list[int]], x, positive_infinity: bool) -> int:
    signs = [
        s
        for c in chain
        if (s := _sign_at(c, x, positive_infinity)) != 0
    ]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def sturm_count(
    f: Polynomial,
    lower: Fraction | None = None,
    upper: Fraction | None = None,
) -> int:
    """Exact number of distinct real roots of squarefree ``f`` in
    (lower, upper]; None endpoints mean -inf / +inf.

    Raises EndpointRoot when a finite endpoint is itself a root: the
    caller should shift it by 1/(1 + l1-norm of f), which is smaller
    than any root separation from the endpoint.
    """
    dense = uv.to_dense(f)
    if not dense:
        raise ValueError("zero polynomial")
    if len(dense) == 1:
        return 0
    for x in (lower, upper):
        if x is not None and uv.eval_dense(dense, Fraction(x)) == 0:
            raise EndpointRoot(f"{x} is a root of the polynomial")
    chain = _sturm_chain_dense(dense)
    va = _variations(chain, lower, positive_infinity=False)
    vb = _variations(chain, upper, positive_infinity=True)
    return va - vb


def endpoint_shift(f: Polynomial) -> Fraction:
    """A shift below the distance from any rational non-root to the
    nearest root: 1/(1 + sum of |coefficients|)."""
    total = sum(abs(c) for c in uv.to_dense(f))
    return Fraction(1, 1 + math.ceil(total))


def _cauchy_bound(dense: list[Fraction]) -> Fraction:
    lead = abs(dense[-1])
    m = max(abs(c) for c in dense[:-1]) if len(dense) > 1 else Fraction(0)
    return Fraction(2) + m / lead


def _nonroot_midpoint(dense, lo: Fraction, hi: Fraction) -> Fraction:
    mid = (lo + hi) / 2
    while uv.eval_dense(dense, mid) == 0:
        mid = (lo + 2 * mid) / 3  # still interior, finitely many roots
    return mid


def isolate_real_roots(f: Polynomial) -> list[tuple[Fraction, Fraction]]:
    """Disjoint rational intervals (lo, hi), each holding exactly one real
    root of squarefree ``f``, with non-root endpoints."""
    dense = uv.to_dense(f)
    if len(dense) <= 1:
        return []
    chain = _sturm_chain_dense(dense)
    bound = _cauchy_bound(dense)
    while uv.eval_dense(dense, -bound) == 0 or uv.eval_dense(dense, bound) == 0:
        bound += 1

    def count_on(lo: Fraction, hi: Fraction) -> int:
        return _variations(chain, lo, False) - _variations(chain, hi, True)

    out: list[tuple[Fraction, Fraction]] = []
    stack = [(-bound, bound, count_on(-bound, bound))]
    while stack:
        lo, hi, cnt = stack.pop()
        if cnt == 0:
            continue
        if cnt == 1:
            out.append((lo, hi))
            continue
        mid = _nonroot_midpoint(dense, lo, hi)
        left = count_on(lo, mid)
        stack.append((lo, mid, left))
        stack.append((mid, hi, cnt - left))
    out.sort()
    return out


def _halve(dense, lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    """Shrink an isolating interval of ``dense`` (one sign change)."""
    mid = _nonroot_midpoint(dense, lo, hi)
    slo = uv.eval_dense(dense, lo)
    smid = uv.eval_dense(dense, mid)
    if (slo > 0) != (smid > 0):
        return lo, mid
    return mid, hi


def _interval_eval(dense, lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    """Interval-arithmetic Horner bound for the polynomial over [lo, hi]."""
    L = H = Fraction(0)
    for c in reversed(dense):
        candidates = (L * lo, L * hi, H * lo, H * hi)
        L, H = min(candidates) + c, max(candidates) + c
    return L, H


def _sign_at_root(
    q_dense: list[Fraction],
    interval: tuple[Fraction, Fraction],
    r_dense: list[Fraction],
) -> int:
    """Exact sign of r at the unique root of q inside the interval."""
    if not r_dense:
        return 0
    g = uv.gcd_dense(q_dense, r_dense)
    lo, hi = interval
    if uv.degree(g) >= 1:
        gchain = _sturm_chain_dense(g)
        if _variations(gchain, lo, False) - _variations(gchain, hi, True) > 0:
            return 0  # the root is shared: r vanishes there exactly
    while True:
        L, H = _interval_eval(r_dense, lo, hi)
        if L > 0:
            return 1
        if H < 0:
            return -1
        lo, hi = _halve(q_dense, lo, hi)


# -- shape position --------------------------------------------------------------


def _shape_position(
    basis_elements: tuple[Polynomial, ...],
    unknowns: tuple[str, ...],
    form_var: str,
):
    """Split a lex basis into (q(w), {x_i: r_i(w)}) or raise."""
    w_ring = RingContext((form_var,), LEX)
    q: Polynomial | None = None
    coords: dict[str, Polynomial] = {}
    for g in basis_elements:
        used = g.variables_used()
        if used <= {form_var}:
            if q is not None:
                raise NotShapePosition("two univariate elements in w")
            q = Polynomial(w_ring, {(m[-1],): c for m, c in g.terms.items()})
            continue
        head = [v for v in unknowns if v in used]
        if len(head) != 1:
            raise NotShapePosition(f"element couples unknowns {head}")
        x = head[0]
        xi = g.ring.index(x)
        if g.degree_in(x) != 1:
            raise NotShapePosition(f"element is nonlinear in {x}")
        lin = {m: c for m, c in g.terms.items() if m[xi] == 1}
        rest = {m: c for m, c in g.terms.items() if m[xi] == 0}
        if len(lin) != 1 or any(sum(m) != 1 for m in lin):
            raise NotShapePosition(f"coefficient of {x} is not constant")
        if len(lin) + len(rest) != len(g.terms):
            raise NotShapePosition(f"degree of {x} exceeds 1")
        lead_coeff = next(iter(lin.values()))
        if x in coords:
            raise NotShapePosition(f"two parameterizations of {x}")
        coords[x] = Polynomial(
            w_ring,
            {(m[-1],): -c / lead_coeff for m, c in rest.items()},
        )
    if q is None or set(coords) != set(unknowns):
        raise NotShapePosition("basis is missing shape elements")
    return q, coords


def classify_at(
    system: LagrangeSystem,
    data,
    dxj: Polynomial | None = None,
    seed: int = 0,
    limits: KernelLimits | None = None,
) -> ClassificationResult:
    """Count real and strictly-positive solutions at one data vector.

    Positivity is required of the probability block only; the Lagrange
    multipliers are unconstrained. ``dxj`` (when supplied) is evaluated to
    report its sign at the data.
    """
    params = system.parameters
    if len(data) != len(params):
        raise ValueError(f"expected {len(params)} data entries")
    if not system.positive_block:
        raise ValueError(
            "system does not declare a probability block; classification "
            "is defined for likelihood systems built from models"
        )
    data = tuple(Fraction(v) for v in data)
    point = dict(zip(params, data))
    dxp_zero = any(v == 0 for v in data)
    dxj_sign: int | None = None
    if dxj is not None:
        val = evaluate(dxj, point)
        dxj_sign = (val > 0) - (val < 0)

    _, eqs, _ = system.specialize(point)
    p_block = system.positive_block

    form_var = "w"
    while form_var in system.unknowns:
        form_var += "_"
    shape_ring = RingContext(system.unknowns + (form_var,), LEX)

    last_error: Exception | None = None
    for attempt in range(MAX_FORM_ATTEMPTS):
        r = rng(seed, "separating-form", attempt)
        coeffs = {x: r.randint(1, 99) for x in system.unknowns}
        form = shape_ring.variable(form_var)
        for x, c in coeffs.items():
            form = form - shape_ring.variable(x) * c
        lifted = [
            Polynomial(shape_ring, {m + (0,): c for m, c in f.terms.items()})
            for f in eqs
        ]
        basis = buchberger(lifted + [form], LEX, limits)
        if basis.contains_one():
            # empty variety: no solutions at all
            form_text = format_polynomial(form)
            return ClassificationResult(
                data, 0, 0, dxj_sign, dxp_zero, form_text
            )
        quotient_dimension(basis, set(shape_ring.variables))
        try:
            q, coords = _shape_position(
                basis.elements, system.unknowns, form_var
            )
        except NotShapePosition as exc:
            last_error = exc
            continue
        q_sf = uv.squarefree_dense(uv.to_dense(q))
        roots = isolate_real_roots(
            uv.from_dense(q_sf, q.ring)
        )
        real_count = len(roots)
        positive = 0
        p_dense = [uv.to_dense(coords[x]) for x in p_block]
        for interval in roots:
            if all(
                _sign_at_root(q_sf, interval, rd) > 0 for rd in p_dense
            ):
                positive += 1
        form_text = format_polynomial(form)
        return ClassificationResult(
            data, real_count, positive, dxj_sign, dxp_zero, form_text
        )
    raise NotShapePosition(
        f"no separating linear form after {MAX_FORM_ATTEMPTS} attempts: "
        f"{last_error}"
    )


def component_census(
    system: LagrangeSystem,
    dxj: Polynomial,
    trials: int,
    seed: int,
    limits: KernelLimits | None = None,
) -> CensusResult:
    """Classify ``trials`` random positive integer data vectors and
    aggregate the distinct (sign, real, positive) outcomes."""
    tally: dict[tuple[int, int, int], int] = {}
    skipped = 0
    for t in range(trials):
        r = rng(seed, "census", t)
        data = [r.randint(1, 999) for _ in system.parameters]
        try:
            res = classify_at(system, data, dxj, seed=seed, limits=limits)
        except (NotShapePosition, NotZeroDimensional, ResourceLimit):
            skipped += 1
            continue
        key = (res.dxj_sign, res.real_count, res.positive_count)
        tally[key] = tally.get(key, 0) + 1
    classes = tuple(
        (sign, real, pos, count)
        for (sign, real, pos), count in sorted(tally.items())
    )
    return CensusResult(classes=classes, skipped=skipped)
