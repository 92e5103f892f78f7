"""Buchberger kernel.

Works on integer-primitive polynomials represented as plain dicts
{exponent tuple: int}; rational inputs are scaled on the way in and the
public layer re-scales on the way out. Keeping the hot loop on machine
dicts of Python ints (no Fraction normalisation per operation) is what
makes desk-scale eliminations feasible.

Pair handling follows the classical recipe: normal selection (smallest
lcm in the active order) with Gebauer-Moeller pair elimination, and
reducers kept integer-primitive. Everything here is deterministic: no
randomness, no set-iteration order dependence.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from heapq import heapify, heappop, heappush

from ..errors import ResourceLimit
from ..polyring.orders import (
    BLOCK_KIND,
    GREVLEX_KIND,
    LEX_KIND,
    MonomialOrder,
)

IPoly = dict  # {tuple[int, ...]: int}


@dataclass
class KernelLimits:
    """Budget for one Groebner computation."""

    max_pairs: int = 200_000
    deadline: float | None = None  # absolute time.monotonic() target

    def remaining_seconds(self) -> float | None:
        if self.deadline is None:
            return None
        return self.deadline - time.monotonic()


def limits_for(max_pairs: int = 200_000, seconds: float | None = 600.0) -> KernelLimits:
    deadline = None if seconds is None else time.monotonic() + seconds
    return KernelLimits(max_pairs=max_pairs, deadline=deadline)


# -- order keys --------------------------------------------------------------


def _neg_grevlex(m):
    return (-sum(m), tuple(reversed(m)))


def order_keys(order: MonomialOrder):
    """(key, negated key) callables; the negated key drives max-heaps."""
    if order.kind == LEX_KIND:
        return (lambda m: m), (lambda m: tuple(-e for e in m))
    if order.kind == GREVLEX_KIND:
        return (
            lambda m: (sum(m), tuple(-e for e in reversed(m))),
            _neg_grevlex,
        )
    if order.kind == BLOCK_KIND:
        k = order.block_split

        def key(m):
            return (
                (sum(m[:k]), tuple(-e for e in reversed(m[:k]))),
                (sum(m[k:]), tuple(-e for e in reversed(m[k:]))),
            )

        def negkey(m):
            return (_neg_grevlex(m[:k]), _neg_grevlex(m[k:]))

        return key, negkey
    raise ValueError(f"unknown order kind {order.kind!r}")


# -- integer-primitive helpers ------------------------------------------------


def content(p: IPoly) -> int:
    g = 0
    for c in p.values():
        g = math.gcd(g, c)
        if g == 1:
            return 1
    return g


def make_primitive(p: IPoly) -> IPoly:
    g = content(p)
    if g > 1:
        return {m: c // g for m, c in p.items()}
    return p


def _mask(m) -> int:
    b = 0
    for i, e in enumerate(m):
        if e:
            b |= 1 << i
    return b


def _divides(a, b) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _lcm(a, b):
    return tuple(x if x >= y else y for x, y in zip(a, b))


def _mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


class _Row:
    """One basis element: leading data plus the tail, all integers."""

    __slots__ = ("lm", "lc", "mask", "tail", "poly")

    def __init__(self, poly: IPoly, keyf):
        self.poly = poly
        self.lm = max(poly, key=keyf)
        self.lc = poly[self.lm]
        self.mask = _mask(self.lm)
        self.tail = {m: c for m, c in poly.items() if m != self.lm}


def normal_form(f: IPoly, rows: list[_Row], keyf, negkeyf) -> IPoly:
    """Full normal form of f modulo rows, integer-primitive output.

    Pseudo-reduction: when a reducer's leading coefficient does not divide
    the term being cancelled, the whole work polynomial is scaled by the
    minimal integer factor, so the result is a unit multiple of the true
    normal form (which is all Buchberger needs).
    """
    work = dict(f)
    if not work:
        return {}
    out: IPoly = {}
    heap = [(negkeyf(m), m) for m in work]
    heapify(heap)
    while heap:
        _, m = heappop(heap)
        c = work.pop(m, 0)
        if not c:
            continue
        mmask = _mask(m)
        row = None
        for r in rows:
            if not (r.mask & ~mmask) and _divides(r.lm, m):
                row = r
                break
        if row is None:
            out[m] = c
            continue
        g = math.gcd(c, row.lc)
        mult = row.lc // g
        cf = c // g
        if mult != 1:
            if mult < 0:
                mult, cf = -mult, -cf
            for k in work:
                work[k] *= mult
            for k in out:
                out[k] *= mult
        q = tuple(a - b for a, b in zip(m, row.lm))
        for mg, cg in row.tail.items():
            mono = _mono_mul(q, mg)
            v = work.get(mono)
            if v is None:
                nv = -cf * cg
                if nv:
                    work[mono] = nv
                    heappush(heap, (negkeyf(mono), mono))
            else:
                nv = v - cf * cg
                if nv:
                    work[mono] = nv
                else:
                    del work[mono]
    return make_primitive(out)


def s_polynomial(fi: _Row, fj: _Row) -> IPoly:
    L = _lcm(fi.lm, fj.lm)
    g = math.gcd(fi.lc, fj.lc)
    ci = fj.lc // g
    cj = fi.lc // g
    qi = tuple(a - b for a, b in zip(L, fi.lm))
    qj = tuple(a - b for a, b in zip(L, fj.lm))
    s: IPoly = {}
    for m, c in fi.poly.items():
        s[_mono_mul(qi, m)] = ci * c
    for m, c in fj.poly.items():
        mono = _mono_mul(qj, m)
        v = s.get(mono, 0) - cj * c
        if v:
            s[mono] = v
        else:
            s.pop(mono, None)
    return s


def _update(rows, pairs, row, keyf):
    """Gebauer-Moeller update of the pair set for one new basis row."""
    t = len(rows)
    lmf = row.lm

    survivors = {}
    for (i, j), L in pairs.items():
        if (
            not _divides(lmf, L)
            or _lcm(rows[i].lm, lmf) == L
            or _lcm(rows[j].lm, lmf) == L
        ):
            survivors[(i, j)] = L

    groups: dict[tuple, list[int]] = {}
    for i in range(t):
        groups.setdefault(_lcm(rows[i].lm, lmf), []).append(i)
    minimal: list[tuple] = []
    for L in sorted(groups, key=keyf):
        if all(not _divides(Lkept, L) for Lkept in minimal):
            minimal.append(L)
    for L in minimal:
        # product criterion: skip when some pair in the group is coprime
        if any(
            _lcm(rows[i].lm, lmf) == _mono_mul(rows[i].lm, lmf)
            for i in groups[L]
        ):
            continue
        survivors[(min(groups[L]), t)] = L

    rows.append(row)
    return survivors


def buchberger_core(
    gens: list[IPoly], order: MonomialOrder, limits: KernelLimits | None = None
) -> list[IPoly]:
    """Reduced Groebner basis of the ideal generated by ``gens``.

    Output rows are integer-primitive with positive leading coefficient,
    sorted by descending leading monomial.
    """
    limits = limits or KernelLimits()
    keyf, negkeyf = order_keys(order)

    rows: list[_Row] = []
    pairs: dict[tuple[int, int], tuple] = {}
    for g in gens:
        if not g:
            continue
        g = normal_form(make_primitive(dict(g)), rows, keyf, negkeyf)
        if g:
            pairs = _update(rows, pairs, _Row(g, keyf), keyf)

    processed = 0
    while pairs:
        processed += 1
        if processed > limits.max_pairs:
            raise ResourceLimit(
                f"S-pair budget exceeded ({limits.max_pairs} pairs)"
            )
        if limits.deadline is not None and time.monotonic() > limits.deadline:
            raise ResourceLimit("wall-clock budget exceeded during Buchberger")
        (i, j) = min(pairs, key=lambda p: (keyf(pairs[p]), p))
        del pairs[(i, j)]
        s = s_polynomial(rows[i], rows[j])
        r = normal_form(s, rows, keyf, negkeyf)
        if r:
            pairs = _update(rows, pairs, _Row(r, keyf), keyf)
            # unit ideal: nothing else can matter
            if rows[-1].lm == (0,) * len(rows[-1].lm):
                break

    return _interreduce(rows, keyf, negkeyf)


def _interreduce(rows: list[_Row], keyf, negkeyf) -> list[IPoly]:
    # minimal basis: drop rows whose lead is divisible by another lead
    rows = sorted(rows, key=lambda r: keyf(r.lm))
    kept: list[_Row] = []
    for r in rows:
        if not any(
            not (k.mask & ~r.mask) and _divides(k.lm, r.lm) for k in kept
        ):
            kept.append(r)
    # tail-reduce each element against the others
    reduced: list[IPoly] = []
    for i, r in enumerate(kept):
        others = kept[:i] + kept[i + 1:]
        nf = normal_form(r.poly, others, keyf, negkeyf)
        if nf:
            if nf[max(nf, key=keyf)] < 0:
                nf = {m: -c for m, c in nf.items()}
            reduced.append(nf)
    reduced.sort(key=lambda p: keyf(max(p, key=keyf)), reverse=True)
    return reduced
