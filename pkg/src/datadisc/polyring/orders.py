"""Monomial orders: lex, graded reverse lex, and block elimination.

A monomial is an exponent tuple. Each order exposes a ``key`` callable;
``key(m1) < key(m2)`` iff m1 is smaller in the order. All three orders are
total and multiplicative (m1 < m2 implies m1*m < m2*m).
"""

from dataclasses import dataclass

Monomial = tuple[int, ...]

LEX_KIND = "lex"
GREVLEX_KIND = "grevlex"
BLOCK_KIND = "block"


def grevlex_key(m: Monomial):
    # degree first; ties broken by the reversed, negated tail: a monomial
    # with a smaller exponent in the last differing position is larger.
    return (sum(m), tuple(-e for e in reversed(m)))


@dataclass(frozen=True)
class MonomialOrder:
    """One of lex / grevlex / block elimination.

    For ``block``, the first ``block_split`` variables form the eliminated
    block; blocks are compared by grevlex, eliminated block first, so any
    monomial free of eliminated variables is smaller than any monomial
    containing one.
    """

    kind: str
    block_split: int = 0

    def __post_init__(self):
        if self.kind not in (LEX_KIND, GREVLEX_KIND, BLOCK_KIND):
            raise ValueError(f"unknown order kind {self.kind!r}")
        if self.kind != BLOCK_KIND and self.block_split:
            raise ValueError("block_split only applies to block orders")
        if self.kind == BLOCK_KIND and self.block_split < 0:
            raise ValueError("block_split must be non-negative")

    def key(self):
        if self.kind == LEX_KIND:
            return lambda m: m
        if self.kind == GREVLEX_KIND:
            return grevlex_key
        k = self.block_split
        return lambda m: (grevlex_key(m[:k]), grevlex_key(m[k:]))


LEX = MonomialOrder(LEX_KIND)
GREVLEX = MonomialOrder(GREVLEX_KIND)


def block_elimination(split: int) -> MonomialOrder:
    """Order eliminating the first ``split`` ring variables."""
    return MonomialOrder(BLOCK_KIND, split)
