"""The Jacobian component DX_J of the data-discriminant.

Two routes compute the same normalized homogeneous polynomial:

* ``dxj_elimination``: eliminate all unknowns from {F_0..F_m, J} and take
  the squarefree part of the principal generator.

* ``dxj_interpolate``: probe total and per-variable degrees on random
  lines, shear the parameter coordinates until the degree in the pivot
  variable equals the total degree, sample monic univariate eliminants at
  random integer data, and solve exact linear systems for the coefficients
  of each degree stratum. Strategy S1 interpolates all parameters at once;
  S2 unfreezes one parameter per stage and recovers the last one from
  homogeneity.

All probabilistic failure modes (zero elimination ideals, degree drops,
singular sample matrices) are retried with fresh randomness a bounded
number of times and then reported as UnluckyRandomness with the seed.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from ._seeds import rng
from .errors import (
    DegreeDrop,
    RequiresDecomposition,
    SingularSampleMatrix,
    UnluckyRandomness,
    ZeroIdeal,
)
from .groebner import (
    KernelLimits,
    eliminate,
    squarefree_part,
    univariate_generator,
)
from .groebner.multigcd import squarefree_part_multivariate
from .groebner.univariate import to_dense
from .likelihood import LagrangeSystem
from .polyring import (
    GREVLEX,
    Polynomial,
    RingContext,
    normalize_integer_primitive,
    partial_substitute,
)

SAMPLE_RANGE = (1, 999)  # data-space sample vectors b_k
COEFF_RANGE = (1, 99)  # shear and line coefficients a_i, b_i

MAX_SAMPLE_ROUNDS = 5
MAX_PROBE_ROUNDS = 5
MAX_SHEAR_ROUNDS = 8

CONSTANT_ONE_WARNING = (
    "total degree probe returned 0: applying the DX_J = 1 convention; the "
    "projection may have codimension > 1, so the standard elimination "
    "method should be consulted"
)
NOT_HYPERSURFACE_WARNING = (
    "elimination ideal is zero: the projection is dominant, not a "
    "hypersurface; returning the constant 1"
)


@dataclass(frozen=True)
class DegreeProfile:
    """Total degree of DX_J and its degree in each parameter."""

    total: int
    per_variable: tuple[int, ...]  # aligned with the system's parameters

    def __post_init__(self):
        if self.total < 0 or any(d < 0 for d in self.per_variable):
            raise ValueError("degrees must be non-negative")
        if self.per_variable and self.total < max(self.per_variable):
            raise ValueError("total degree below a per-variable degree")


@dataclass(frozen=True)
class ShearTransform:
    """u_i <- a_i*u_pivot + u_i for every non-pivot parameter."""

    pivot: str
    coefficients: tuple[int, ...]  # aligned with parameters, 0 at the pivot

    def is_identity(self) -> bool:
        return not any(self.coefficients)


@dataclass(frozen=True)
class DiscriminantOutput:
    """Normalized DX_J (or the constant 1) plus computation metadata."""

    polynomial: Polynomial
    method: str  # elimination | interpolation-s1 | interpolation-s2
    degree_profile: DegreeProfile
    seed: int
    retries_used: int
    samples: int
    shear: ShearTransform | None = None
    warnings: tuple[str, ...] = ()


def parameter_ring(system: LagrangeSystem) -> RingContext:
    return RingContext(system.parameters, GREVLEX)


def _profile_of(poly: Polynomial, parameters: tuple[str, ...]) -> DegreeProfile:
    if poly.is_constant():
        return DegreeProfile(0, (0,) * len(parameters))
    d = int(poly.total_degree())
    per = []
    for name in parameters:
        dv = poly.degree_in(name)
        per.append(0 if dv == float("-inf") else int(dv))
    return DegreeProfile(d, tuple(per))


# -- standard elimination algorithm -------------------------------------------


def dxj_elimination(
    system: LagrangeSystem,
    limits: KernelLimits | None = None,
    seed: int = 0,
) -> DiscriminantOutput:
    """DX_J by eliminating every unknown from {F_0..F_m, J}.

    A principal eliminant is stripped to its squarefree part (the radical
    of a principal ideal); a zero elimination ideal yields the constant 1
    with a warning. Non-principal elimination ideals would need an
    equidimensional radical decomposition and are reported as such.
    """
    u_ring = parameter_ring(system)
    gens = list(system.equations) + [system.jacobian_det]
    result = eliminate(gens, set(system.unknowns), limits)
    warnings: tuple[str, ...] = ()
    if result.is_zero_ideal:
        poly = u_ring.one()
        warnings = (NOT_HYPERSURFACE_WARNING,)
    elif not result.is_principal:
        raise RequiresDecomposition(
            f"elimination ideal has {len(result.generators)} generators; "
            "equidimensional radical decomposition is out of scope"
        )
    else:
        gen = result.generators[0]
        if gen.is_constant():
            poly = u_ring.one()
        else:
            poly = squarefree_part_multivariate(gen)
    return DiscriminantOutput(
        polynomial=poly,
        method="elimination",
        degree_profile=_profile_of(poly, system.parameters),
        seed=seed,
        retries_used=0,
        samples=0,
        shear=None,
        warnings=warnings,
    )


# -- probes --------------------------------------------------------------------


def _univariate_eliminant(
    system: LagrangeSystem,
    values: dict[str, int],
    keep: str,
    limits: KernelLimits | None,
) -> Polynomial:
    """Monic squarefree generator of the eliminant in one kept parameter.

    Raises ZeroIdeal when the elimination ideal is zero (degenerate
    specialization). A constant generator is returned as 1.
    """
    _, eqs, jac = system.specialize(values, keep=(keep,))
    result = eliminate(eqs + [jac], set(system.unknowns), limits)
    gen = univariate_generator(result)  # ZeroIdeal propagates
    if gen.is_constant():
        return gen.ring.one()
    return squarefree_part(gen)


def _line_eliminant(
    system: LagrangeSystem,
    line: dict[str, tuple[int, int]],  # name -> (a, b): u = a*t + b
    limits: KernelLimits | None,
) -> Polynomial:
    t_ring = RingContext(system.unknowns + ("t",), GREVLEX)
    t = t_ring.variable("t")
    images = {
        name: t * a + t_ring.constant(b) for name, (a, b) in line.items()
    }
    eqs = [
        partial_substitute(f, images, t_ring) for f in system.equations
    ]
    jac = partial_substitute(system.jacobian_det, images, t_ring)
    result = eliminate(eqs + [jac], set(system.unknowns), limits)
    gen = univariate_generator(result)
    if gen.is_constant():
        return gen.ring.one()
    return squarefree_part(gen)


def _degree_of(univ: Polynomial) -> int:
    d = univ.total_degree()
    return 0 if d == float("-inf") or univ.is_constant() else int(d)


def _probe_profile(
    system: LagrangeSystem,
    seed: int,
    limits: KernelLimits | None,
) -> tuple[DegreeProfile, int]:
    """Alg. Degree: per-variable degrees by specializing the other
    parameters, total degree by restricting to a random line."""
    params = system.parameters
    retries = 0
    per = []
    for i, name in enumerate(params):
        for attempt in range(MAX_PROBE_ROUNDS):
            r = rng(seed, "probe-var", i, attempt)
            values = {
                other: r.randint(*SAMPLE_RANGE)
                for other in params
                if other != name
            }
            try:
                a = _univariate_eliminant(system, values, name, limits)
            except ZeroIdeal:
                retries += 1
                continue
            per.append(_degree_of(a))
            break
        else:
            raise UnluckyRandomness(
                f"degree probe for {name} kept hitting zero elimination "
                "ideals",
                seed,
            )
    for attempt in range(MAX_PROBE_ROUNDS):
        r = rng(seed, "probe-line", attempt)
        line = {
            name: (r.randint(*COEFF_RANGE), r.randint(*COEFF_RANGE))
            for name in params
        }
        try:
            a = _line_eliminant(system, line, limits)
        except ZeroIdeal:
            retries += 1
            continue
        d = _degree_of(a)
        if per and d < max(per):
            retries += 1  # line missed the full degree: unlucky
            continue
        return DegreeProfile(d, tuple(per)), retries
    raise UnluckyRandomness(
        "line probe for the total degree kept failing", seed
    )


def degree_probe(
    system: LagrangeSystem,
    seed: int,
    limits: KernelLimits | None = None,
) -> DegreeProfile:
    """Total degree d of DX_J and its degree d_i in each parameter."""
    profile, _ = _probe_profile(system, seed, limits)
    return profile


# -- shear ---------------------------------------------------------------------


def apply_shear(
    system: LagrangeSystem, shear: ShearTransform
) -> LagrangeSystem:
    """Substitute u_i <- a_i*u_pivot + u_i throughout the system."""
    if shear.is_identity():
        return system
    ring_ = system.ring
    upivot = ring_.variable(shear.pivot)
    images = {}
    for name, a in zip(system.parameters, shear.coefficients):
        if a:
            images[name] = upivot * a + ring_.variable(name)
    equations = tuple(
        partial_substitute(f, images, ring_) for f in system.equations
    )
    jac = partial_substitute(system.jacobian_det, images, ring_)
    return LagrangeSystem(
        name=system.name,
        ring=ring_,
        equations=equations,
        unknowns=system.unknowns,
        parameters=system.parameters,
        jacobian_det=jac,
        homogeneous_discriminant=system.homogeneous_discriminant,
    )


def _unshear(poly: Polynomial, shear: ShearTransform) -> Polynomial:
    if shear.is_identity():
        return poly
    ring_ = poly.ring
    upivot = ring_.variable(shear.pivot)
    images = {}
    for name, a in zip(ring_.variables, shear.coefficients):
        if a:
            images[name] = ring_.variable(name) - upivot * a
    return partial_substitute(poly, images, ring_)


def linear_operator(
    system: LagrangeSystem,
    seed: int,
    pivot: str | None = None,
    limits: KernelLimits | None = None,
) -> tuple[ShearTransform, LagrangeSystem, DegreeProfile]:
    """Shear the parameters until the pivot degree equals the total degree.

    Returns the shear, the sheared system, and the degree profile of the
    sheared system (the profile that drives stratum enumeration).
    """
    shear, sheared, profile, _ = _linear_operator(system, seed, pivot, limits)
    return shear, sheared, profile


def _linear_operator(
    system: LagrangeSystem,
    seed: int,
    pivot: str | None,
    limits: KernelLimits | None,
) -> tuple[ShearTransform, LagrangeSystem, DegreeProfile, int]:
    params = system.parameters
    pivot = pivot or params[0]
    if pivot not in params:
        raise ValueError(f"{pivot!r} is not a parameter of the system")
    pividx = params.index(pivot)
    profile, retries = _probe_profile(system, seed, limits)
    identity = ShearTransform(pivot, (0,) * len(params))
    if profile.total == 0 or profile.per_variable[pividx] == profile.total:
        return identity, system, profile, retries
    for round_ in range(MAX_SHEAR_ROUNDS):
        r = rng(seed, "shear", round_)
        coeffs = tuple(
            0 if i == pividx else r.randint(*COEFF_RANGE)
            for i in range(len(params))
        )
        shear = ShearTransform(pivot, coeffs)
        sheared = apply_shear(system, shear)
        new_profile, extra = _probe_profile(
            sheared, rng(seed, "shear-probe", round_).randrange(2**32), limits
        )
        retries += extra
        if (
            new_profile.total == profile.total
            and new_profile.per_variable[pividx] == new_profile.total
        ):
            return shear, sheared, new_profile, retries
        retries += 1
    raise UnluckyRandomness(
        "no shear reached full pivot degree after "
        f"{MAX_SHEAR_ROUNDS} rounds",
        seed,
    )


# -- sampling ------------------------------------------------------------------


def intersect_sample(
    system: LagrangeSystem,
    b: tuple[int, ...],
    keep: str,
    expected_degree: int | None = None,
    limits: KernelLimits | None = None,
) -> Polynomial:
    """Monic squarefree univariate eliminant at u_others = b.

    ``b`` is aligned with the parameters in ring order, skipping ``keep``.
    Raises ZeroIdeal on a degenerate fiber and DegreeDrop when the result
    falls short of ``expected_degree`` (both mean: resample).
    """
    others = [p for p in system.parameters if p != keep]
    if len(b) != len(others):
        raise ValueError(f"expected {len(others)} sample coordinates")
    values = dict(zip(others, b))
    a = _univariate_eliminant(system, values, keep, limits)
    if expected_degree is not None and _degree_of(a) < expected_degree:
        raise DegreeDrop(
            f"sample eliminant has degree {_degree_of(a)}, "
            f"expected {expected_degree}"
        )
    return a


def _sample_worker(args):
    """Module-level so ProcessPoolExecutor can pickle it."""
    system, b, keep, expected_degree, seconds, max_pairs = args
    from .groebner import limits_for

    limits = limits_for(max_pairs=max_pairs, seconds=seconds)
    try:
        a = intersect_sample(system, b, keep, expected_degree, limits)
        return ("ok", a)
    except ZeroIdeal:
        return ("zero-ideal", None)
    except DegreeDrop as exc:
        return ("degree-drop", str(exc))


def _evaluate_samples(
    system: LagrangeSystem,
    points: list[tuple[int, ...]],
    keep: str,
    expected_degree: int,
    limits: KernelLimits | None,
    jobs: int,
    precomputed: dict[tuple[int, ...], Polynomial],
):
    """Map intersect_sample over the points; per-point outcome tuples.

    Points found in ``precomputed`` are served from there (S2 reuses the
    previous stage's interpolant as an evaluation). Parallel execution
    maps over the points in order, so results are schedule-independent.
    """
    outcomes: list[tuple[str, object] | None] = [None] * len(points)
    todo = []
    for idx, b in enumerate(points):
        if b in precomputed:
            outcomes[idx] = ("ok", precomputed[b])
        else:
            todo.append(idx)
    if todo:
        seconds = None if limits is None else limits.remaining_seconds()
        max_pairs = 200_000 if limits is None else limits.max_pairs
        tasks = [
            (system, points[i], keep, expected_degree, seconds, max_pairs)
            for i in todo
        ]
        if jobs > 1 and len(tasks) > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                results = list(pool.map(_sample_worker, tasks))
        else:
            results = [_sample_worker(t) for t in tasks]
        for i, res in zip(todo, results):
            outcomes[i] = res
    return outcomes


# -- exact linear algebra -------------------------------------------------------


def _int_matrix_nonsingular(matrix: list[list[int]]) -> bool:
    """Exact nonsingularity via fraction-free (Bareiss) elimination."""
    m = [row[:] for row in matrix]
    size = len(m)
    prev = 1
    for k in range(size):
        if m[k][k] == 0:
            swap = next(
                (i for i in range(k + 1, size) if m[i][k] != 0), None
            )
            if swap is None:
                return False
            m[k], m[swap] = m[swap], m[k]
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return True


def _solve_exact(
    matrix: list[list[int]], rhs: list[Fraction]
) -> list[Fraction] | None:
    """Solve M x = rhs exactly; None when M is singular.

    Gaussian elimination with partial pivoting on the magnitude of the
    numerators, everything in Fraction arithmetic.
    """
    size = len(matrix)
    aug = [
        [Fraction(v) for v in row] + [Fraction(rhs[i])]
        for i, row in enumerate(matrix)
    ]
    for k in range(size):
        pivot_row = max(
            range(k, size), key=lambda i: abs(aug[i][k].numerator)
        )
        if aug[pivot_row][k] == 0:
            return None
        if pivot_row != k:
            aug[k], aug[pivot_row] = aug[pivot_row], aug[k]
        pk = aug[k][k]
        for i in range(k + 1, size):
            if aug[i][k] == 0:
                continue
            factor = aug[i][k] / pk
            for j in range(k, size + 1):
                aug[i][j] -= factor * aug[k][j]
    xs = [Fraction(0)] * size
    for k in range(size - 1, -1, -1):
        acc = aug[k][size]
        for j in range(k + 1, size):
            acc -= aug[k][j] * xs[j]
        xs[k] = acc / aug[k][k]
    return xs


# -- stratum enumeration ---------------------------------------------------------


def _stratum_monomials(
    degree: int,
    caps: tuple[int, ...],
    exact: bool,
    frozen_capacity: int | None = None,
) -> list[tuple[int, ...]]:
    """Exponent tuples with sum == degree (exact) or <= degree, entries
    bounded by caps. When interpolating a homogeneous target with frozen
    trailing variables, the frozen block must be able to absorb the
    missing degree, capping the deficit by ``frozen_capacity``."""
    out = []
    for combo in itertools.product(*(range(min(c, degree) + 1) for c in caps)):
        s = sum(combo)
        if exact:
            if s != degree:
                continue
        else:
            if s > degree:
                continue
            if frozen_capacity is not None and degree - s > frozen_capacity:
                continue
        out.append(combo)
    # descending grevlex for a stable, canonical enumeration
    out.sort(key=lambda m: (sum(m), tuple(-e for e in reversed(m))), reverse=True)
    return out


def _eval_monomial(mono: tuple[int, ...], point: tuple[int, ...]) -> int:
    acc = 1
    for e, v in zip(mono, point):
        if e:
            acc *= v**e
    return acc


# -- interpolation core ----------------------------------------------------------


def _interpolate_block(
    system: LagrangeSystem,
    seed_tags: tuple,
    pivot: str,
    active: list[str],
    frozen: dict[str, int],
    total_degree: int,
    caps: dict[str, int],
    exact_strata: bool,
    frozen_capacity: int | None,
    limits: KernelLimits | None,
    jobs: int,
    reuse: Polynomial | None,
    reuse_value: int | None,
    u_ring: RingContext,
) -> tuple[dict[tuple[int, ...], Fraction], int, int]:
    """Interpolate the monic eliminant in (pivot, active) with the
    remaining parameters frozen.

    Returns (terms over u_ring, samples evaluated, retries). ``reuse``,
    when given, is the previous stage's interpolant and ``reuse_value``
    the frozen value of the newly unfrozen variable it was computed at;
    the first sample point is then pinned there and evaluated from
    ``reuse`` directly instead of by elimination.
    """
    d = total_degree
    others = [p for p in system.parameters if p != pivot]
    active_caps = tuple(caps[v] for v in active)
    strata = {
        j: _stratum_monomials(j, active_caps, exact_strata, frozen_capacity)
        for j in range(1, d + 1)
    }
    n_samples = max((len(ms) for ms in strata.values()), default=0)
    pividx = u_ring.index(pivot)
    active_idx = [u_ring.index(v) for v in active]

    if n_samples == 0:
        # every stratum is empty: the eliminant is the pure pivot power
        terms = {_pivot_mono(u_ring, pividx, d): Fraction(1)}
        return terms, 0, 0

    retries = 0
    samples_run = 0
    failure = "unlucky randomness"
    for round_ in range(MAX_SAMPLE_ROUNDS):
        points: list[tuple[int, ...]] = []
        for k in range(n_samples):
            r = rng(*seed_tags, round_, k)
            coords = [r.randint(*SAMPLE_RANGE) for _ in active]
            if k == 0 and reuse is not None and reuse_value is not None:
                coords[-1] = reuse_value
            points.append(tuple(coords))
        if len(set(points)) != n_samples:
            retries += 1
            failure = "repeated sample points"
            continue

        matrices = {}
        singular = False
        for j, monos in strata.items():
            if not monos:
                continue
            rows = [
                [_eval_monomial(m, pt) for m in monos]
                for pt in points[: len(monos)]
            ]
            if not _int_matrix_nonsingular(rows):
                singular = True
                break
            matrices[j] = rows
        if singular:
            retries += 1
            failure = "singular sample matrix"
            continue

        precomputed: dict[tuple[int, ...], Polynomial] = {}
        if reuse is not None and reuse_value is not None:
            pt = points[0]
            point_map = {v: Fraction(c) for v, c in zip(active, pt)}
            precomputed[pt] = _evaluate_interpolant(reuse, pivot, point_map)

        full_points = [
            tuple(
                frozen[o] if o not in active else pt[active.index(o)]
                for o in others
            )
            for pt in points
        ]
        cache = {
            fp: precomputed[pt]
            for fp, pt in zip(full_points, points)
            if pt in precomputed
        }
        outcomes = _evaluate_samples(
            system, full_points, pivot, d, limits, jobs, cache
        )
        samples_run += sum(
            1 for fp, o in zip(full_points, outcomes) if fp not in cache
        )
        bad = [o for o in outcomes if o[0] != "ok"]
        if bad:
            retries += 1
            failure = bad[0][0].replace("-", " ")
            continue

        coeff_rows: list[list[Fraction]] = []
        for _, a in outcomes:
            dense = to_dense(a)
            dense += [Fraction(0)] * (d + 1 - len(dense))
            coeff_rows.append(dense)

        terms: dict[tuple[int, ...], Fraction] = {
            _pivot_mono(u_ring, pividx, d): Fraction(1)
        }
        solved_all = True
        for j, monos in strata.items():
            if not monos:
                continue
            rhs = [coeff_rows[k][d - j] for k in range(len(monos))]
            solution = _solve_exact(matrices[j], rhs)
            if solution is None:
                solved_all = False
                break
            for mono, c in zip(monos, solution):
                if not c:
                    continue
                exps = [0] * u_ring.nvars
                exps[pividx] = d - j
                for pos, e in zip(active_idx, mono):
                    exps[pos] = e
                terms[tuple(exps)] = c
        if not solved_all:
            retries += 1
            failure = "singular sample matrix"
            continue
        return terms, samples_run, retries

    if failure == "singular sample matrix":
        raise SingularSampleMatrix(
            "sample matrices stayed singular after "
            f"{MAX_SAMPLE_ROUNDS} rounds",
            seed_tags[0] if seed_tags else None,
        )
    raise UnluckyRandomness(
        f"interpolation kept failing ({failure}) after "
        f"{MAX_SAMPLE_ROUNDS} rounds",
        seed_tags[0] if seed_tags else None,
    )


def _pivot_mono(u_ring: RingContext, pividx: int, e: int) -> tuple[int, ...]:
    exps = [0] * u_ring.nvars
    exps[pividx] = e
    return tuple(exps)


def _evaluate_interpolant(
    poly: Polynomial, pivot: str, point: dict[str, Fraction]
) -> Polynomial:
    """Evaluate a multivariate interpolant at all non-pivot coordinates,
    producing the univariate (in pivot) sample it represents."""
    out_ring = RingContext((pivot,), GREVLEX)
    consts = {v: out_ring.constant(c) for v, c in point.items()}
    return partial_substitute(poly, consts, out_ring)


def _homogenize_last(
    terms: dict[tuple[int, ...], Fraction],
    u_ring: RingContext,
    last_var: str,
    last_value: int,
    total_degree: int,
) -> dict[tuple[int, ...], Fraction]:
    """Recover the exponents of the one still-frozen variable from the
    degree deficit of each term (the target is homogeneous of known
    degree)."""
    li = u_ring.index(last_var)
    out: dict[tuple[int, ...], Fraction] = {}
    for mono, c in terms.items():
        deficit = total_degree - sum(mono)
        full = list(mono)
        full[li] = deficit
        out[tuple(full)] = c / Fraction(last_value) ** deficit
    return out


# -- driver ----------------------------------------------------------------------


def dxj_interpolate(
    system: LagrangeSystem,
    seed: int,
    strategy: str = "S1",
    pivot: str | None = None,
    jobs: int = 1,
    limits: KernelLimits | None = None,
) -> DiscriminantOutput:
    """DX_J by probabilistic interpolation (strategies S1 and S2)."""
    strategy = strategy.upper()
    if strategy not in ("S1", "S2"):
        raise ValueError("strategy must be S1 or S2")
    params = system.parameters
    pivot = pivot or params[0]
    shear, sheared, profile, retries = _linear_operator(
        system, seed, pivot, limits
    )
    u_ring = parameter_ring(system)
    method = f"interpolation-{strategy.lower()}"
    if profile.total == 0:
        return DiscriminantOutput(
            polynomial=u_ring.one(),
            method=method,
            degree_profile=profile,
            seed=seed,
            retries_used=retries,
            samples=0,
            shear=shear,
            warnings=(CONSTANT_ONE_WARNING,),
        )

    others = [p for p in params if p != pivot]
    caps = dict(zip(params, profile.per_variable))
    d = profile.total
    homog = system.homogeneous_discriminant

    if strategy == "S1" or not others:
        terms, samples, extra = _interpolate_block(
            sheared,
            (seed, "s1"),
            pivot,
            others,
            {},
            d,
            caps,
            exact_strata=homog,
            frozen_capacity=None,
            limits=limits,
            jobs=jobs,
            reuse=None,
            reuse_value=None,
            u_ring=u_ring,
        )
        retries += extra
    else:
        terms, samples, extra = _interpolate_stages(
            sheared, seed, pivot, others, d, caps, homog, limits, jobs, u_ring
        )
        retries += extra

    sheared_poly = Polynomial(u_ring, terms)
    poly = normalize_integer_primitive(_unshear(sheared_poly, shear), GREVLEX)
    if homog and not poly.is_homogeneous():
        raise UnluckyRandomness(
            "interpolated polynomial is not homogeneous: a probe or sample "
            "must have been degenerate",
            seed,
        )
    return DiscriminantOutput(
        polynomial=poly,
        method=method,
        degree_profile=profile,
        seed=seed,
        retries_used=retries,
        samples=samples,
        shear=shear,
        warnings=(),
    )


def _interpolate_stages(
    sheared: LagrangeSystem,
    seed: int,
    pivot: str,
    others: list[str],
    d: int,
    caps: dict[str, int],
    homog: bool,
    limits: KernelLimits | None,
    jobs: int,
    u_ring: RingContext,
) -> tuple[dict[tuple[int, ...], Fraction], int, int]:
    """Strategy S2: unfreeze one parameter per stage.

    Stage m interpolates in the first m parameters with the rest frozen
    at fixed random integers; each stage reuses the previous interpolant
    for one of its evaluations. For homogeneous targets the last
    parameter is never unfrozen: its exponents are recovered from the
    degree deficit."""
    n = len(others)
    freeze_rng = rng(seed, "s2-freeze")
    frozen_values = {name: freeze_rng.randint(*SAMPLE_RANGE) for name in others}
    last_stage = n - 1 if homog else n
    samples = 0
    retries = 0

    if homog and n == 1:
        # single frozen coordinate: one evaluation then homogenize
        pividx = u_ring.index(pivot)
        for attempt in range(MAX_SAMPLE_ROUNDS):
            b = (rng(seed, "s2-single", attempt).randint(*SAMPLE_RANGE),)
            try:
                a = intersect_sample(
                    sheared, b, pivot, expected_degree=d, limits=limits
                )
            except (ZeroIdeal, DegreeDrop):
                retries += 1
                continue
            samples += 1
            terms = {
                _pivot_mono(u_ring, pividx, e): c
                for e, c in enumerate(to_dense(a))
                if c
            }
            return (
                _homogenize_last(terms, u_ring, others[0], b[0], d),
                samples,
                retries,
            )
        raise UnluckyRandomness(
            "every specialization of the single frozen coordinate was "
            "degenerate",
            seed,
        )

    prev: Polynomial | None = None
    terms: dict[tuple[int, ...], Fraction] = {}
    for m in range(1, last_stage + 1):
        active = others[:m]
        tail = others[m:]
        frozen_capacity = sum(caps[v] for v in tail) if homog else None
        frozen = {name: frozen_values[name] for name in tail}
        stage_terms, stage_samples, stage_retries = _interpolate_block(
            sheared,
            (seed, "s2-stage", m),
            pivot,
            active,
            frozen,
            d,
            caps,
            exact_strata=False,
            frozen_capacity=frozen_capacity,
            limits=limits,
            jobs=jobs,
            reuse=prev,
            reuse_value=None if prev is None else frozen_values[active[-1]],
            u_ring=u_ring,
        )
        samples += stage_samples
        retries += stage_retries
        terms = stage_terms
        prev = Polynomial(u_ring, terms)

    if homog:
        last = others[-1]
        return (
            _homogenize_last(terms, u_ring, last, frozen_values[last], d),
            samples,
            retries,
        )
    return terms, samples, retries
