"""Monomial-ideal combinatorics.

These run on plain exponent tuples (the unpacked leading exponents of a
standard basis) and provide the counting side of every dimension computation:
the monomials outside the leading staircase form a vector-space basis of the
quotient, and the Krull dimension of a monomial quotient is the size of the
largest coordinate subspace contained in its zero set.
"""

from __future__ import annotations

from itertools import product

from .poly import Monomial, monomial_divides


def minimalize(gens: list[Monomial]) -> list[Monomial]:
    """Minimal generating set, sorted; drops duplicates and multiples."""
    uniq = sorted(set(gens))
    out = []
    for m in uniq:
        if not any(g != m and monomial_divides(g, m) for g in uniq):
            out.append(m)
    return out


def contains_unit(gens: list[Monomial]) -> bool:
    return any(all(e == 0 for e in m) for m in gens)


def pure_power_bounds(gens: list[Monomial], nvars: int) -> list[int | None]:
    """For each variable, the least pure-power exponent among the generators."""
    bounds: list[int | None] = [None] * nvars
    for m in gens:
        support = [i for i, e in enumerate(m) if e]
        if len(support) == 1:
            i = support[0]
            if bounds[i] is None or m[i] < bounds[i]:
                bounds[i] = m[i]
    return bounds


def is_zero_dimensional(gens: list[Monomial], nvars: int) -> bool:
    if contains_unit(gens):
        return True
    return all(b is not None for b in pure_power_bounds(gens, nvars))


def staircase_count(gens: list[Monomial], nvars: int) -> int | None:
    """Number of monomials outside the ideal; None when infinite."""
    if contains_unit(gens):
        return 0
    if not gens:
        return None
    bounds = pure_power_bounds(gens, nvars)
    if any(b is None for b in bounds):
        return None
    mins = minimalize(gens)
    count = 0
    for exps in product(*(range(b) for b in bounds)):
        if not any(monomial_divides(m, exps) for m in mins):
            count += 1
    return count


def staircase_basis(gens: list[Monomial], nvars: int) -> list[Monomial]:
    """The monomials outside the ideal, in lexicographic tuple order."""
    if contains_unit(gens):
        return []
    bounds = pure_power_bounds(gens, nvars)
    if not gens or any(b is None for b in bounds):
        raise ValueError("staircase is infinite")
    mins = minimalize(gens)
    return [
        exps
        for exps in product(*(range(b) for b in bounds))
        if not any(monomial_divides(m, exps) for m in mins)
    ]


def krull_dimension(gens: list[Monomial], nvars: int) -> int | None:
    """Dimension of the quotient by the monomial ideal; None for the unit ideal.

    Equals the largest size of a variable subset S such that no generator has
    its support inside S (the coordinate subspace spanned by S then avoids all
    generators).
    """
    if contains_unit(gens):
        return None
    if not gens:
        return nvars
    masks = []
    for m in gens:
        mask = 0
        for i, e in enumerate(m):
            if e:
                mask |= 1 << i
        masks.append(mask)
    best = 0
    for s in range(1 << nvars):
        size = bin(s).count("1")
        if size <= best:
            continue
        if all(mask & ~s for mask in masks):
            best = size
    return best
