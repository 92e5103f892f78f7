"""Statistical models, Lagrange likelihood systems, and the ML-degree.

A model is the intersection of the projective variety cut out by its
homogeneous invariants g_1..g_s (in the probability variables p_0..p_n)
with the probability simplex. The associated square system has unknowns
p_0..p_n, lam_1..lam_{s+1} and parameters u_0..u_n:

    F_k       = p_k*(lam_1 + sum_j dg_j/dp_k * lam_{j+1}) - u_k   (k <= n)
    F_{n+j}   = g_j                                               (1 <= j <= s)
    F_{n+s+1} = p_0 + ... + p_n - 1

J is the determinant of the Jacobian of (F_i) with respect to the
unknowns. Raw ".sys" inputs bypass the model layer and supply equations
and J directly, so toy non-likelihood systems can run the same pipeline.
"""

from __future__ import annotations

import math
import os
import random
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .errors import (
    NonHomogeneousInvariant,
    NotZeroDimensional,
    ParseError,
    UnknownVariable,
    VariableOutOfRange,
)
from .groebner import KernelLimits, buchberger, quotient_dimension
from .groebner.kernel import order_keys
from .polyring import (
    GREVLEX,
    Polynomial,
    RingContext,
    derivative,
    parse_polynomial,
    partial_substitute,
    substitute,
)


@dataclass(frozen=True)
class StatisticalModel:
    """n+1 probability variables plus homogeneous invariants g_1..g_s."""

    n: int
    invariants: tuple[Polynomial, ...]  # over the p-ring
    name: str
    p_ring: RingContext = field(repr=False)

    @property
    def s(self) -> int:
        return len(self.invariants)

    @property
    def p_names(self) -> tuple[str, ...]:
        return self.p_ring.variables


@dataclass(frozen=True)
class LagrangeSystem:
    """Square system F_0..F_{n+s+1} with its Jacobian determinant."""

    name: str
    ring: RingContext  # unknowns first, then parameters
    equations: tuple[Polynomial, ...]
    unknowns: tuple[str, ...]
    parameters: tuple[str, ...]
    jacobian_det: Polynomial
    homogeneous_discriminant: bool = True
    # unknowns whose positivity is statistically meaningful (the p-block
    # for likelihood systems; empty for raw .sys systems)
    positive_block: tuple[str, ...] = ()

    @property
    def n(self) -> int:
        return len(self.parameters) - 1

    def specialize(
        self, values: dict[str, Fraction | int], keep: tuple[str, ...] = ()
    ) -> tuple[RingContext, list[Polynomial], Polynomial]:
        """Substitute parameter values, retaining ``keep`` parameters.

        Returns the smaller ring (unknowns + kept parameters, grevlex),
        the specialized equations and the specialized Jacobian.
        """
        target = RingContext(self.unknowns + tuple(keep), GREVLEX)
        consts = {
            name: target.constant(Fraction(v)) for name, v in values.items()
        }
        eqs = [partial_substitute(f, consts, target) for f in self.equations]
        jac = partial_substitute(self.jacobian_det, consts, target)
        return target, eqs, jac


@dataclass(frozen=True)
class MLDegreeResult:
    value: int | None  # None when the trials disagreed
    trials: tuple[tuple[tuple[int, ...], int], ...]  # (data, count)
    agreed: bool


# -- model and system files ---------------------------------------------------


def _u_name(p_name: str) -> str:
    if p_name.startswith("p") and len(p_name) > 1:
        return "u" + p_name[1:]
    return "u_" + p_name


def _read_lines(source: str | os.PathLike) -> tuple[list[str], str]:
    if isinstance(source, os.PathLike) or (
        isinstance(source, str) and "\n" not in source
    ):
        path = Path(source)
        return path.read_text(encoding="utf-8").splitlines(), path.stem
    return str(source).splitlines(), "unnamed"


def _parse_entries(lines: list[str]):
    """Yield (lineno, kind, key, value) for `key = value` / `key: value`."""
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" in line and ("=" not in line or line.index(":") < line.index("=")):
            key, _, value = line.partition(":")
            yield lineno, "poly", key.strip(), value.strip()
        elif "=" in line:
            key, _, value = line.partition("=")
            yield lineno, "setting", key.strip(), value.strip()
        else:
            raise ParseError(f"line {lineno}: expected `key = value` or `key: poly`")


def load_model(source: str | os.PathLike) -> StatisticalModel:
    """Load a .model file (or its text): `n = <int>`, optional `name`,
    optional `pvars = ...`, and one `invariant:` line per g_k."""
    lines, default_name = _read_lines(source)
    name = default_name
    n: int | None = None
    pvars: tuple[str, ...] | None = None
    invariant_texts: list[tuple[int, str]] = []
    for lineno, kind, key, value in _parse_entries(lines):
        if kind == "setting" and key == "name":
            name = value
        elif kind == "setting" and key == "n":
            n = int(value)
        elif kind == "setting" and key == "pvars":
            pvars = tuple(v.strip() for v in value.split(","))
        elif kind == "poly" and key == "invariant":
            invariant_texts.append((lineno, value))
        else:
            raise ParseError(f"line {lineno}: unknown entry {key!r}")
    if n is None:
        raise ParseError("missing `n = <int>`")
    if n < 0:
        raise ParseError("n must be non-negative")
    if not invariant_texts:
        raise ParseError("a model needs at least one `invariant:` line")
    if pvars is None:
        pvars = tuple(f"p{i}" for i in range(n + 1))
    if len(pvars) != n + 1:
        raise ParseError(f"expected {n + 1} p-variables, got {len(pvars)}")
    p_ring = RingContext(pvars, GREVLEX)
    invariants = []
    for lineno, text in invariant_texts:
        try:
            g = parse_polynomial(text, p_ring)
        except UnknownVariable as exc:
            raise VariableOutOfRange(
                f"line {lineno}: variable {exc.name!r} is outside the "
                f"declared p-block {pvars}"
            ) from exc
        if g.is_zero():
            raise ParseError(f"line {lineno}: invariant is zero")
        if not g.is_homogeneous():
            raise NonHomogeneousInvariant(
                f"line {lineno}: invariant {text!r} is not homogeneous"
            )
        invariants.append(g)
    return StatisticalModel(
        n=n, invariants=tuple(invariants), name=name, p_ring=p_ring
    )


def load_system(source: str | os.PathLike) -> LagrangeSystem:
    """Load a raw .sys file: explicit unknowns, parameters, `equation:`
    lines and a `jacobian:` line. `homogeneous = true` asserts that the
    eliminant is homogeneous (the likelihood structure guarantees this for
    models, but raw systems must opt in)."""
    lines, default_name = _read_lines(source)
    name = default_name
    unknowns: tuple[str, ...] | None = None
    parameters: tuple[str, ...] | None = None
    homogeneous = False
    equation_texts: list[str] = []
    jacobian_text: str | None = None
    for lineno, kind, key, value in _parse_entries(lines):
        if kind == "setting" and key == "name":
            name = value
        elif kind == "setting" and key == "unknowns":
            unknowns = tuple(v.strip() for v in value.split(","))
        elif kind == "setting" and key == "parameters":
            parameters = tuple(v.strip() for v in value.split(","))
        elif kind == "setting" and key == "homogeneous":
            homogeneous = value.lower() in ("true", "yes", "1")
        elif kind == "poly" and key == "equation":
            equation_texts.append(value)
        elif kind == "poly" and key == "jacobian":
            jacobian_text = value
        else:
            raise ParseError(f"line {lineno}: unknown entry {key!r}")
    if unknowns is None or parameters is None:
        raise ParseError("a .sys file needs `unknowns =` and `parameters =`")
    if not equation_texts or jacobian_text is None:
        raise ParseError("a .sys file needs `equation:` lines and a `jacobian:`")
    ring = RingContext(unknowns + parameters, GREVLEX)
    equations = tuple(parse_polynomial(t, ring) for t in equation_texts)
    jac = parse_polynomial(jacobian_text, ring)
    return LagrangeSystem(
        name=name,
        ring=ring,
        equations=equations,
        unknowns=unknowns,
        parameters=parameters,
        jacobian_det=jac,
        homogeneous_discriminant=homogeneous,
    )


def load_input(source: str | os.PathLike) -> LagrangeSystem:
    """Dispatch on extension: .model builds the Lagrange system, .sys is
    taken verbatim."""
    text = str(source)
    if "\n" not in text and text.endswith(".sys"):
        return load_system(source)
    return build_lagrange_system(load_model(source))


def bundled_model_path(name: str) -> Path:
    """Path of one of the shipped corpus files (by stem or filename)."""
    base = resources.files("datadisc") / "models"
    for candidate in (name, f"{name}.model", f"{name}.sys"):
        p = base / candidate
        if p.is_file():
            return Path(str(p))
    raise FileNotFoundError(f"no bundled model named {name!r}")


# -- system construction -------------------------------------------------------


def build_lagrange_system(model: StatisticalModel) -> LagrangeSystem:
    """Equations of the Lagrange likelihood system, plus J."""
    n, s = model.n, model.s
    p_names = model.p_names
    lam_names = tuple(f"lam{j}" for j in range(1, s + 2))
    u_names = tuple(_u_name(p) for p in p_names)
    all_names = p_names + lam_names + u_names
    if len(set(all_names)) != len(all_names):
        raise ParseError("p/lam/u variable names collide")
    ring = RingContext(all_names, GREVLEX)

    def lift(f: Polynomial) -> Polynomial:
        return substitute(
            f, {v: ring.variable(v) for v in model.p_names}, ring
        )

    p = [ring.variable(v) for v in p_names]
    lam = [ring.variable(v) for v in lam_names]
    u = [ring.variable(v) for v in u_names]
    gs = [lift(g) for g in model.invariants]

    equations: list[Polynomial] = []
    for k in range(n + 1):
        multiplier = lam[0]
        for j, g in enumerate(model.invariants):
            dg = derivative(g, p_names[k])
            multiplier = multiplier + lift(dg) * lam[j + 1]
        equations.append(p[k] * multiplier - u[k])
    equations.extend(gs)
    simplex = -ring.one()
    for pk in p:
        simplex = simplex + pk
    equations.append(simplex)

    unknowns = p_names + lam_names
    jac = jacobian_determinant_of(equations, unknowns, ring)
    return LagrangeSystem(
        name=model.name,
        ring=ring,
        equations=tuple(equations),
        unknowns=unknowns,
        parameters=u_names,
        jacobian_det=jac,
        homogeneous_discriminant=True,
        positive_block=p_names,
    )


def jacobian_determinant_of(
    equations: list[Polynomial], unknowns: tuple[str, ...], ring: RingContext
) -> Polynomial:
    """det [dF_i/dx_j] over the polynomial ring, by fraction-free
    (Bareiss) elimination; each pivot division is exact by construction."""
    matrix = [[derivative(f, x) for x in unknowns] for f in equations]
    return bareiss_determinant(matrix, ring)


def jacobian_determinant(system: LagrangeSystem) -> Polynomial:
    return jacobian_determinant_of(
        list(system.equations), system.unknowns, system.ring
    )


def _ip_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            m = tuple(x + y for x, y in zip(m1, m2))
            v = out.get(m, 0) + c1 * c2
            if v:
                out[m] = v
            else:
                del out[m]
    return out


def _ip_exact_div(f: dict, g: dict, negkey) -> dict:
    """Quotient f/g over Z[vars]; divisibility is guaranteed by the
    Bareiss identity (every entry is a minor of the integer input)."""
    from heapq import heapify, heappop, heappush

    if not f:
        return {}
    lmg = min(g, key=negkey)  # min of the negated key = leading monomial
    lcg = g[lmg]
    rem = dict(f)
    quo: dict = {}
    heap = [(negkey(m), m) for m in rem]
    heapify(heap)
    while heap:
        _, m = heappop(heap)
        c = rem.pop(m, 0)
        if not c:
            continue
        q = tuple(a - b for a, b in zip(m, lmg))
        assert all(e >= 0 for e in q) and c % lcg == 0, "inexact division"
        qc = c // lcg
        quo[q] = qc
        for mg, cg in g.items():
            if mg == lmg:
                continue
            mono = tuple(a + b for a, b in zip(q, mg))
            v = rem.get(mono)
            if v is None:
                nv = -qc * cg
                if nv:
                    rem[mono] = nv
                    heappush(heap, (negkey(mono), mono))
            else:
                nv = v - qc * cg
                if nv:
                    rem[mono] = nv
                else:
                    del rem[mono]
    assert not rem, "inexact division"
    return quo


def bareiss_determinant(
    matrix: list[list[Polynomial]], ring: RingContext
) -> Polynomial:
    """Fraction-free determinant of a square polynomial matrix.

    Runs on integer-coefficient term dicts (rows are pre-scaled by their
    common denominator, undone at the end). Pivots are chosen sparsest
    first with row and column swaps; an all-zero remaining block means the
    determinant is zero.
    """
    m = len(matrix)
    if any(len(row) != m for row in matrix):
        raise ValueError("matrix is not square")
    if m == 0:
        return ring.one()

    scale = Fraction(1)  # det(original) = det(int matrix) / scale
    M: list[list[dict]] = []
    for row in matrix:
        denom = 1
        for f in row:
            for c in f.terms.values():
                denom = denom * c.denominator // math.gcd(
                    denom, c.denominator
                )
        scale *= denom
        M.append(
            [
                {
                    mo: c.numerator * (denom // c.denominator)
                    for mo, c in f.terms.items()
                }
                for f in row
            ]
        )

    _, negkey = order_keys(GREVLEX)
    sign = 1
    prev: dict | None = None
    for k in range(m - 1):
        pivot = None
        best = None
        for i in range(k, m):
            for j in range(k, m):
                if M[i][j]:
                    size = len(M[i][j])
                    if best is None or size < best:
                        best, pivot = size, (i, j)
        if pivot is None:
            return ring.zero()
        pi, pj = pivot
        if pi != k:
            M[k], M[pi] = M[pi], M[k]
            sign = -sign
        if pj != k:
            for row_ in M:
                row_[k], row_[pj] = row_[pj], row_[k]
            sign = -sign
        pivot_poly = M[k][k]
        for i in range(k + 1, m):
            row_i = M[i]
            head = row_i[k]
            for j in range(k + 1, m):
                num = _ip_mul(pivot_poly, row_i[j])
                if head and M[k][j]:
                    sub = _ip_mul(head, M[k][j])
                    for mo, c in sub.items():
                        v = num.get(mo, 0) - c
                        if v:
                            num[mo] = v
                        else:
                            num.pop(mo, None)
                row_i[j] = (
                    num if prev is None else _ip_exact_div(num, prev, negkey)
                )
            row_i[k] = {}
        prev = pivot_poly
    det = M[m - 1][m - 1]
    poly = Polynomial(ring, {mo: Fraction(c) for mo, c in det.items()})
    return poly * (Fraction(sign) / scale)


def slice_parameters(
    system: LagrangeSystem,
    keep: tuple[str, ...],
    values: dict[str, int],
) -> LagrangeSystem:
    """Freeze all parameters except ``keep`` at integer values.

    The sliced eliminant is generally inhomogeneous, so the result drops
    the homogeneity promise; everything else runs through the same
    pipeline.
    """
    missing = set(system.parameters) - set(keep) - set(values)
    if missing:
        raise ValueError(f"no value for frozen parameter(s) {sorted(missing)}")
    target = RingContext(system.unknowns + tuple(keep), GREVLEX)
    consts = {
        name: target.constant(Fraction(v))
        for name, v in values.items()
        if name not in keep
    }
    equations = tuple(
        partial_substitute(f, consts, target) for f in system.equations
    )
    jac = partial_substitute(system.jacobian_det, consts, target)
    return LagrangeSystem(
        name=f"{system.name}[slice]",
        ring=target,
        equations=equations,
        unknowns=system.unknowns,
        parameters=tuple(keep),
        jacobian_det=jac,
        homogeneous_discriminant=False,
        positive_block=system.positive_block,
    )


def dx_p(model_or_system: StatisticalModel | LagrangeSystem) -> Polynomial:
    """The coordinate-hyperplane bound u_0*u_1*...*u_n (in the u-ring)."""
    if isinstance(model_or_system, StatisticalModel):
        u_names = tuple(_u_name(p) for p in model_or_system.p_names)
    else:
        u_names = model_or_system.parameters
    u_ring = RingContext(u_names, GREVLEX)
    acc = u_ring.one()
    for name in u_names:
        acc = acc * u_ring.variable(name)
    return acc


# -- ML-degree ------------------------------------------------------------------


def solution_count_at(
    system: LagrangeSystem,
    data: dict[str, int],
    limits: KernelLimits | None = None,
) -> int:
    """Number of complex solutions (with multiplicity) of the likelihood
    equations at one data vector."""
    ring, eqs, _ = system.specialize(data)
    basis = buchberger(eqs, GREVLEX, limits)
    return quotient_dimension(basis, set(ring.variables))


def ml_degree(
    system: LagrangeSystem,
    seed: int,
    trials: int = 2,
    limits: KernelLimits | None = None,
) -> MLDegreeResult:
    """Solution count at random integer data, repeated for agreement.

    Trial i draws from seed+i; degenerate (non-zero-dimensional) data is
    redrawn up to 5 times per trial.
    """
    if trials < 1:
        raise ValueError("need at least one trial")
    outcomes: list[tuple[tuple[int, ...], int]] = []
    for t in range(trials):
        r = random.Random(seed + t)
        for _attempt in range(5):
            data = {name: r.randint(1, 999) for name in system.parameters}
            try:
                count = solution_count_at(system, data, limits)
            except NotZeroDimensional:
                continue
            outcomes.append((tuple(data.values()), count))
            break
        else:
            raise NotZeroDimensional(
                f"five random data vectors in a row were degenerate "
                f"(trial {t}, seed {seed})"
            )
    counts = {c for _, c in outcomes}
    agreed = len(counts) == 1
    return MLDegreeResult(
        value=outcomes[0][1] if agreed else None,
        trials=tuple(outcomes),
        agreed=agreed,
    )
