"""Standard-basis kernel.

Monomials are packed into single Python ints, 16 bits per exponent, so that
divisibility is one mask test and monomial multiplication is integer addition.
Each kernel polynomial is a list of ``(key, raw, coeff)`` triples sorted by
descending ``key``, where ``key`` is an integer whose natural ordering realizes
the monomial order and ``raw`` is the packed exponent vector.

Key layouts (``B = 2^16``, ``M = 0xFFFF``, ``v`` variables, permutation sigma
listing variables by rank):

* grevlex:     ``key = deg * B^v + sum_p (M - e[sigma[p]]) * B^p``
* negrevlex:   ``key = (M - deg) * B^v + same tail`` (lower degree wins)
* elimination: last variable dominant, grevlex on the rest:
  ``key = e_last * B^(v+1) + grevlex-key of the others``

All layouts are additive: ``key(a*b) = key(a) + key(b) - KOFF`` for a fixed
per-order offset, and exponents are capped at 32767 so the top bit of every
field is a guard bit for the SWAR divisibility test
``((b | H) - a) & H == H``.

Coefficients are integers; reductions are fraction-free (cross-multiplied by
cofactors of a gcd) with periodic content removal, or arithmetic mod a prime
when ``prime`` is given. Head reduction follows Mora's normal form: the
reducer of minimal ecart is chosen and the intermediate remainder joins the
reducer list whenever its ecart is exceeded, which is what makes the loop
terminate for local orders. Under a global order every ecart is zero and the
procedure degenerates to ordinary head reduction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ResourceLimitError, RingError

FIELD = 16
MASK = 0xFFFF
EXP_CAP = 0x7FFF

KIND_GREVLEX = "grevlex"
KIND_NEGREVLEX = "negrevlex"

DEFAULT_MAX_STEPS = 10**6


class Budget:
    """Shared reduction-step counter for one basis computation."""

    __slots__ = ("limit", "steps")

    def __init__(self, limit: int | None = None):
        self.limit = DEFAULT_MAX_STEPS if limit is None else limit
        self.steps = 0

    def spend(self, n: int = 1):
        self.steps += n
        if self.steps > self.limit:
            raise ResourceLimitError(
                f"reduction budget of {self.limit} steps exhausted", steps=self.steps
            )


@dataclass(frozen=True)
class KernelOrder:
    kind: str
    nvars: int
    permutation: tuple[int, ...]
    elim_last: bool = False

    def __post_init__(self):
        if self.kind not in (KIND_GREVLEX, KIND_NEGREVLEX):
            raise RingError(f"unknown kernel order {self.kind!r}")
        if self.elim_last:
            if self.kind != KIND_GREVLEX:
                raise RingError("elimination blocks are only used with the global order")
            if self.permutation != tuple(range(self.nvars)):
                raise RingError("elimination blocks require the identity permutation")


class Packer:
    def __init__(self, order: KernelOrder):
        v = order.nvars
        self.order = order
        self.nvars = v
        self.local = order.kind == KIND_NEGREVLEX
        self.H = sum(0x8000 << (FIELD * i) for i in range(v))
        perm = order.permutation
        if order.elim_last:
            sub = v - 1
            self.top_shift = FIELD * sub  # degree digit of the non-aux block
            self.aux_shift = FIELD * (sub + 1)
            self.koff = sum(MASK << (FIELD * p) for p in range(sub))
        else:
            self.top_shift = FIELD * v
            self.aux_shift = None
            self.koff = sum(MASK << (FIELD * p) for p in range(v))
            if self.local:
                self.koff += MASK << self.top_shift
        self._perm = perm

    def pack(self, exps: tuple[int, ...]) -> tuple[int, int]:
        v = self.nvars
        if len(exps) != v:
            raise RingError("exponent arity mismatch")
        deg = 0
        raw = 0
        for i, e in enumerate(exps):
            if e < 0 or e > EXP_CAP:
                raise RingError(f"exponent {e} outside supported range 0..{EXP_CAP}")
            raw += e << (FIELD * i)
            deg += e
        if deg > MASK:
            raise RingError(f"total degree {deg} exceeds supported range")
        return self.key_from_exps(exps, deg), raw

    def key_from_exps(self, exps, deg: int) -> int:
        order = self.order
        if order.elim_last:
            sub = self.nvars - 1
            key = exps[sub] << self.aux_shift
            key += (deg - exps[sub]) << self.top_shift
            for p in range(sub):
                key += (MASK - exps[p]) << (FIELD * p)
            return key
        perm = self._perm
        top = (MASK - deg) if self.local else deg
        key = top << self.top_shift
        for p, var in enumerate(perm):
            key += (MASK - exps[var]) << (FIELD * p)
        return key

    def unpack(self, raw: int) -> tuple[int, ...]:
        return tuple((raw >> (FIELD * i)) & MASK for i in range(self.nvars))

    def key_from_raw(self, raw: int) -> int:
        exps = self.unpack(raw)
        return self.key_from_exps(exps, sum(exps))

    def raw_divides(self, a: int, b: int) -> bool:
        """True when the monomial with packed exponents a divides b."""
        H = self.H
        return ((b | H) - a) & H == H

    def raw_lcm(self, a: int, b: int) -> int:
        out = 0
        for i in range(self.nvars):
            sh = FIELD * i
            out |= max((a >> sh) & MASK, (b >> sh) & MASK) << sh
        return out

    def raw_degree(self, raw: int) -> int:
        return sum((raw >> (FIELD * i)) & MASK for i in range(self.nvars))


# -- kernel polynomial helpers -------------------------------------------------


def content_strip(p: list) -> list:
    g = 0
    for _, _, c in p:
        g = math.gcd(g, c)
        if g == 1:
            return p
    if g <= 1:
        return p
    return [(k, r, c // g) for k, r, c in p]


def normalize_sign(p: list) -> list:
    if p and p[0][2] < 0:
        return [(k, r, -c) for k, r, c in p]
    return p


def make_monic(p: list, prime: int) -> list:
    if not p:
        return p
    inv = pow(p[0][2], -1, prime)
    return [(k, r, (c * inv) % prime) for k, r, c in p]


def scale_merge(h: list, A: int, g: list, B: int, mkey: int, mraw: int, koff: int, prime):
    """Return A*h - B*(x^m * g), merged in descending key order."""
    out = []
    i, j = 0, 0
    nh, ng = len(h), len(g)
    off = mkey - koff
    while i < nh and j < ng:
        kh = h[i][0]
        kg = g[j][0] + off
        if kh > kg:
            c = A * h[i][2]
            if prime:
                c %= prime
            if c:
                out.append((kh, h[i][1], c))
            i += 1
        elif kg > kh:
            c = -B * g[j][2]
            if prime:
                c %= prime
            if c:
                out.append((kg, g[j][1] + mraw, c))
            j += 1
        else:
            c = A * h[i][2] - B * g[j][2]
            if prime:
                c %= prime
            if c:
                out.append((kh, h[i][1], c))
            i += 1
            j += 1
    while i < nh:
        c = A * h[i][2]
        if prime:
            c %= prime
        if c:
            out.append((h[i][0], h[i][1], c))
        i += 1
    while j < ng:
        c = -B * g[j][2]
        if prime:
            c %= prime
        if c:
            out.append((g[j][0] + off, g[j][1] + mraw, c))
        j += 1
    return out


def _ecart(h: list, top_shift: int) -> int:
    # keys descend, so under a local order the head has minimal degree and the
    # last term maximal degree; the difference of top digits is exactly the ecart
    return (h[0][0] >> top_shift) - (h[-1][0] >> top_shift)


def head_reduce(p: list, reducers: list, packer: Packer, budget: Budget, prime=None) -> list:
    """Mora weak normal form: reduce until the head is irreducible or zero.

    ``reducers`` is a list of records ``[lkey, lraw, lcoeff, poly, ecart, seq]``
    and is mutated (intermediate remainders are appended) exactly as Mora's
    algorithm requires; callers pass a throwaway copy.
    """
    h = p
    H = packer.H
    koff = packer.koff
    local = packer.local
    ts = packer.top_shift
    while h:
        k, r, c = h[0]
        rH = r | H
        best = None
        if local:
            for rec in reducers:
                if (rH - rec[1]) & H == H:
                    if best is None or rec[4] < best[4] or (rec[4] == best[4] and rec[5] < best[5]):
                        best = rec
        else:
            for rec in reducers:
                if (rH - rec[1]) & H == H:
                    best = rec
                    break
        if best is None:
            return h
        if local:
            hec = _ecart(h, ts)
            if best[4] > hec:
                reducers.append([k, r, c, h, hec, len(reducers)])
        budget.spend()
        mkey = k - best[0] + koff
        mraw = r - best[1]
        if prime:
            A = 1
            B = (c * pow(best[2], -1, prime)) % prime
        else:
            d = math.gcd(c, best[2])
            A = best[2] // d
            B = c // d
            if A < 0:
                A, B = -A, -B
        h = scale_merge(h, A, best[3], B, mkey, mraw, koff, prime)
        if not prime and budget.steps % 32 == 0:
            h = content_strip(h)
    return h


def s_polynomial(f: list, g: list, packer: Packer, prime=None) -> list:
    kf, rf, cf = f[0]
    kg, rg, cg = g[0]
    lraw = packer.raw_lcm(rf, rg)
    lkey = packer.key_from_raw(lraw)
    koff = packer.koff
    if prime:
        A, B = cg % prime, cf % prime
    else:
        d = math.gcd(cf, cg)
        A, B = cg // d, cf // d
    shifted = [(k + lkey - kf, r + lraw - rf, c) for k, r, c in f]
    return scale_merge(shifted, A, g, B, lkey - kg + koff, lraw - rg, koff, prime)


# -- Buchberger / Mora driver ---------------------------------------------------


def standard_basis_kernel(gens: list[list], packer: Packer, budget: Budget, prime=None) -> list[list]:
    """Minimal standard basis of the ideal generated by ``gens``.

    Global order: a Groebner basis (not tail-reduced). Local order: a Mora
    standard basis. Pair management uses the Gebauer-Moeller criteria plus the
    product criterion; pairs are processed by minimal lcm total degree with
    ties broken by generator indices.
    """
    G: list[list] = []  # records [lkey, lraw, lc, poly, ecart, seq]
    pairs: list[tuple[int, int, int, int]] = []  # (lcm_degree, i, j, lcm_raw)
    ts = packer.top_shift

    prepared = []
    for p in gens:
        if not p:
            continue
        p = content_strip(list(p))
        p = make_monic(p, prime) if prime else normalize_sign(p)
        prepared.append(p)
    prepared.sort(key=lambda q: (q[0][0], [(t[0], t[2]) for t in q]))
    dedup = []
    for p in prepared:
        if not dedup or p != dedup[-1]:
            dedup.append(p)

    def record(p: list) -> list:
        ec = _ecart(p, ts) if packer.local else 0
        return [p[0][0], p[0][1], p[0][2], p, ec, len(G)]

    def update(new_rec: list):
        # Gebauer-Moeller update of the pair set against the new element
        t = new_rec[5]
        traw = new_rec[1]
        cand = []
        for rec in G:
            if rec is new_rec:
                continue
            i = rec[5]
            lraw = packer.raw_lcm(rec[1], traw)
            cand.append([i, lraw, rec[1]])
        # criterion M: drop (i,t) when some lcm(j,t) strictly divides lcm(i,t)
        kept = []
        for ci in cand:
            dominated = False
            for cj in cand:
                if cj is ci:
                    continue
                if cj[1] != ci[1] and packer.raw_divides(cj[1], ci[1]):
                    dominated = True
                    break
            if not dominated:
                kept.append(ci)
        # criterion F: one representative per lcm value
        by_lcm: dict[int, list] = {}
        for ci in kept:
            by_lcm.setdefault(ci[1], ci)
        kept = sorted(by_lcm.values(), key=lambda ci: ci[0])
        # product criterion: coprime leading monomials reduce to zero
        kept = [ci for ci in kept if ci[1] != ci[2] + traw]
        # criterion B on surviving old pairs
        survivors = []
        for deg, i, j, lraw in pairs:
            if (
                packer.raw_divides(traw, lraw)
                and packer.raw_lcm(G[i][1], traw) != lraw
                and packer.raw_lcm(G[j][1], traw) != lraw
            ):
                continue
            survivors.append((deg, i, j, lraw))
        pairs.clear()
        pairs.extend(survivors)
        for ci in kept:
            pairs.append((packer.raw_degree(ci[1]), ci[0], t, ci[1]))

    for p in dedup:
        rec = record(p)
        G.append(rec)
        if p[0][1] == 0:  # unit generator: the whole ring
            return [p]
        update(rec)

    while pairs:
        best = min(pairs, key=lambda q: (q[0], q[1], q[2]))
        pairs.remove(best)
        _, i, j, _ = best
        sp = s_polynomial(G[i][3], G[j][3], packer, prime)
        if not sp:
            continue
        h = head_reduce(sp, list(G), packer, budget, prime)
        if not h:
            continue
        h = content_strip(h)
        h = make_monic(h, prime) if prime else normalize_sign(h)
        rec = record(h)
        G.append(rec)
        if h[0][1] == 0:
            return [h]
        update(rec)

    # minimal basis: drop elements whose head is divisible by another head
    out = []
    for idx, rec in enumerate(G):
        dominated = False
        for jdx, other in enumerate(G):
            if jdx == idx:
                continue
            if other[1] == rec[1]:
                if jdx < idx:
                    dominated = True
                    break
            elif packer.raw_divides(other[1], rec[1]):
                dominated = True
                break
        if not dominated:
            out.append(rec[3])
    out.sort(key=lambda q: q[0][0])
    return out


# -- deterministic prime supply for cross-checks ---------------------------------


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7):  # deterministic below 3.2e18 with these bases
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def verification_primes(count: int, start: int = (1 << 31) - 1):
    found = 0
    n = start
    while found < count:
        if _is_prime(n):
            yield n
            found += 1
        n -= 2 if n % 2 else 1
