"""Monomial orders.

Two families are supported, each with an optional variable permutation:

* ``global-degrevlex``: degree first, ties broken reverse-lexicographically.
  A well-order; Buchberger's algorithm applies.
* ``local-negdegrevlex``: lower degree wins, same revlex tie-break. A local
  order (1 is the largest monomial); Mora's tangent-cone algorithm applies.

The permutation lists variable indices by rank, ``perm[0]`` being the most
favored variable. Exponent vectors are plain tuples of ints.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import RingError

GLOBAL_DEGREVLEX = "global-degrevlex"
LOCAL_NEGDEGREVLEX = "local-negdegrevlex"


@dataclass(frozen=True, slots=True)
class MonomialOrder:
    kind: str
    nvars: int
    permutation: tuple[int, ...] = field(default=())

    def __post_init__(self):
        if self.kind not in (GLOBAL_DEGREVLEX, LOCAL_NEGDEGREVLEX):
            raise RingError(f"unknown order kind: {self.kind!r}")
        perm = self.permutation or tuple(range(self.nvars))
        object.__setattr__(self, "permutation", perm)
        if sorted(perm) != list(range(self.nvars)):
            raise RingError(f"not a permutation of 0..{self.nvars - 1}: {perm!r}")

    @staticmethod
    def degrevlex(nvars: int, permutation: tuple[int, ...] | None = None) -> "MonomialOrder":
        return MonomialOrder(GLOBAL_DEGREVLEX, nvars, tuple(permutation or ()))

    @staticmethod
    def negdegrevlex(nvars: int, permutation: tuple[int, ...] | None = None) -> "MonomialOrder":
        return MonomialOrder(LOCAL_NEGDEGREVLEX, nvars, tuple(permutation or ()))

    @property
    def is_global(self) -> bool:
        return self.kind == GLOBAL_DEGREVLEX

    @property
    def is_local(self) -> bool:
        return self.kind == LOCAL_NEGDEGREVLEX

    def key(self, exps: tuple[int, ...]):
        """Sort key: the larger key is the leading monomial under this order."""
        deg = sum(exps)
        perm = self.permutation
        # revlex tail: compare the last-ranked variable first, negated
        tail = tuple(-exps[perm[i]] for i in range(self.nvars - 1, -1, -1))
        if self.kind == GLOBAL_DEGREVLEX:
            return (deg, tail)
        return (-deg, tail)

    def compare(self, a: tuple[int, ...], b: tuple[int, ...]) -> int:
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)

    def token(self) -> tuple:
        """Hashable identity used in memoization keys."""
        return (self.kind, self.nvars, self.permutation)
