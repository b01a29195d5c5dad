"""Groebner-basis engine: reduced bases, normal forms, membership, equality,
colon, intersection, saturation, Krull dimension and radical membership.

Everything is deterministic: generators are sorted canonically, the pair
queue uses the normal strategy (smallest lcm in the ring order), and ties
break by input position.  Budgets come from :class:`~fclosure.config.EngineConfig`.
"""

from __future__ import annotations

import heapq
import warnings

from .config import DEFAULT_CONFIG
from .errors import BudgetExceededError, ColonByZeroWarning, RingMismatchError
from .polyring import Polynomial


class Ideal:
    """An ideal of a polynomial ring, as a generator list plus a lazily
    cached reduced Groebner basis.

    Ideals of quotient rings are represented by their full preimages; see
    :class:`fclosure.frobenius.QuotientRing`.
    """

    __slots__ = ("ring", "gens", "_basis")

    def __init__(self, ring, gens):
        gens = tuple(g for g in gens if not g.is_zero())
        for g in gens:
            if g.ring != ring:
                raise RingMismatchError("generator lies in a different ring")
        self.ring = ring
        self.gens = tuple(sorted(gens, key=lambda g: g.sort_key(), reverse=True))
        self._basis = None

    def basis(self, config=None):
        return groebner_basis(self, config)

    def is_unit(self, config=None):
        b = self.basis(config)
        return len(b) == 1 and b[0].is_constant()

    def is_zero(self, config=None):
        return not self.basis(config)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.ring == other.ring and self.basis() == other.basis()

    def __hash__(self):
        return hash((self.ring, self.basis()))

    def __str__(self):
        b = self.basis()
        return "; ".join(str(g) for g in b) if b else "0"

    def __repr__(self):
        return f"Ideal({self})"


def ideal_from_text(text, ring):
    """Parse an ideal given as ';'-separated polynomial expressions."""
    parts = [part for part in text.split(";") if part.strip()]
    return Ideal(ring, [ring.parse(part) for part in parts])


# ---------------------------------------------------------------------------
# reduction


def _reduce_full(f, basis, config):
    """Fully reduce ``f`` against ``basis`` (a sequence of nonzero polynomials).

    Divisor choice is the first basis element (in the given order) whose
    leading monomial divides the current monomial, which makes the result
    deterministic; against a reduced Groebner basis it is the unique normal
    form.
    """
    if f.is_zero() or not basis:
        return f
    ring = f.ring
    p = ring.p
    key = ring.order.key
    heads = [(g.leading_monomial(), pow(g.leading_coeff(), p - 2, p), g) for g in basis]
    work = dict(f._terms)
    out = {}
    heap = [(tuple(-v for v in key(e)), e) for e in work]
    heapq.heapify(heap)
    max_deg = config.max_poly_degree
    while heap:
        _, e = heapq.heappop(heap)
        c = work.get(e)
        if not c:
            continue
        hit = None
        for lm, lc_inv, g in heads:
            if all(a >= b for a, b in zip(e, lm)):
                hit = (lm, lc_inv, g)
                break
        if hit is None:
            del work[e]
            out[e] = c
            continue
        lm, lc_inv, g = hit
        shift = tuple(a - b for a, b in zip(e, lm))
        factor = (c * lc_inv) % p
        for ge, gc in g._terms.items():
            ee = tuple(a + b for a, b in zip(shift, ge))
            s = (work.get(ee, 0) - factor * gc) % p
            if s:
                if ee not in work:
                    if sum(ee) > max_deg:
                        raise BudgetExceededError(
                            f"reduction exceeded the degree budget {max_deg}", kind="degree"
                        )
                    heapq.heappush(heap, (tuple(-v for v in key(ee)), ee))
                work[ee] = s
            else:
                work.pop(ee, None)
    return Polynomial(ring, out)


def _monic(f):
    c = f.leading_coeff()
    if c == 1:
        return f
    return f * pow(c, f.ring.p - 2, f.ring.p)


def _spoly(f, g):
    lf, lg = f.leading_monomial(), g.leading_monomial()
    lcm = tuple(max(a, b) for a, b in zip(lf, lg))
    mf = tuple(a - b for a, b in zip(lcm, lf))
    mg = tuple(a - b for a, b in zip(lcm, lg))
    ring = f.ring
    p = ring.p
    uf = ring.monomial(mf, pow(f.leading_coeff(), p - 2, p))
    ug = ring.monomial(mg, pow(g.leading_coeff(), p - 2, p))
    return uf * f - ug * g


# ---------------------------------------------------------------------------
# Buchberger


def groebner_basis(ideal, config=None):
    """The unique reduced Groebner basis, cached on the ideal.

    Buchberger with the coprime-leading-term and chain criteria, normal
    pair-selection strategy (smallest lcm in the ring order, then input
    position).
    """
    if ideal._basis is not None:
        return ideal._basis
    config = config or DEFAULT_CONFIG
    ring = ideal.ring
    key = ring.order.key

    G = []
    lms = []
    pending = set()
    heap = []

    def push_pairs(j):
        lj = lms[j]
        for i in range(j):
            li = lms[i]
            lcm = tuple(max(a, b) for a, b in zip(li, lj))
            if lcm == tuple(a + b for a, b in zip(li, lj)):
                continue  # coprime leading terms: s-poly reduces to zero
            pending.add((i, j))
            heapq.heappush(heap, (key(lcm), i, j, lcm))

    for f in ideal.gens:
        G.append(_monic(f))
        lms.append(f.leading_monomial())
        push_pairs(len(G) - 1)

    processed = 0
    while heap:
        _, i, j, lcm = heapq.heappop(heap)
        if (i, j) not in pending:
            continue
        pending.discard((i, j))
        processed += 1
        if processed > config.max_pairs:
            raise BudgetExceededError(
                f"Groebner pair budget {config.max_pairs} exceeded", kind="pairs"
            )
        # chain criterion
        skip = False
        for k in range(len(G)):
            if k == i or k == j:
                continue
            if all(a >= b for a, b in zip(lcm, lms[k])):
                pik = (min(i, k), max(i, k))
                pjk = (min(j, k), max(j, k))
                if pik not in pending and pjk not in pending:
                    skip = True
                    break
        if skip:
            continue
        h = _reduce_full(_spoly(G[i], G[j]), G, config)
        if h.is_zero():
            continue
        if len(G) >= config.max_basis_size:
            raise BudgetExceededError(
                f"Groebner basis size budget {config.max_basis_size} exceeded", kind="basis"
            )
        G.append(_monic(h))
        lms.append(h.leading_monomial())
        push_pairs(len(G) - 1)

    basis = _interreduce(G, config)
    ideal._basis = basis
    return basis


def _interreduce(G, config):
    """Minimalize then tail-reduce a Groebner basis into the reduced basis."""
    if not G:
        return ()
    ring = G[0].ring
    key = ring.order.key
    # minimal: drop any element whose leading monomial is divisible by another's
    order = sorted(range(len(G)), key=lambda i: key(G[i].leading_monomial()))
    kept = []
    for i in order:
        lm = G[i].leading_monomial()
        if any(all(a >= b for a, b in zip(lm, g.leading_monomial())) for g in kept):
            continue
        kept.append(G[i])
    # reduce each element against the others until stable
    changed = True
    while changed:
        changed = False
        for i, g in enumerate(kept):
            others = kept[:i] + kept[i + 1 :]
            r = _monic(_reduce_full(g, others, config)) if others else g
            if r != g:
                if r.is_zero():
                    raise AssertionError("minimal basis element reduced to zero")
                kept[i] = r
                changed = True
    kept.sort(key=lambda g: key(g.leading_monomial()), reverse=True)
    return tuple(kept)


# ---------------------------------------------------------------------------
# derived operations


def normal_form(f, ideal, config=None):
    """The unique remainder of ``f`` modulo the reduced basis of ``ideal``."""
    if f.ring != ideal.ring:
        raise RingMismatchError("polynomial and ideal live in different rings")
    return _reduce_full(f, groebner_basis(ideal, config), config or DEFAULT_CONFIG)


def ideal_member(f, ideal, config=None):
    return normal_form(f, ideal, config).is_zero()


def ideal_equal(I, K, config=None):
    if I.ring != K.ring:
        raise RingMismatchError("ideals live in different rings")
    return groebner_basis(I, config) == groebner_basis(K, config)


def ideal_contains(I, K, config=None):
    """True iff K is a subset of I (every generator of K reduces to zero)."""
    if I.ring != K.ring:
        raise RingMismatchError("ideals live in different rings")
    return all(ideal_member(g, I, config) for g in K.gens)


def ideal_sum(*ideals):
    ring = ideals[0].ring
    gens = []
    for I in ideals:
        if I.ring != ring:
            raise RingMismatchError("ideals live in different rings")
        gens.extend(I.gens)
    return Ideal(ring, gens)


def scale_ideal(f, I):
    """The ideal f*I."""
    if f.ring != I.ring:
        raise RingMismatchError("polynomial and ideal live in different rings")
    return Ideal(I.ring, [f * g for g in I.gens])


def unit_ideal(ring):
    return Ideal(ring, [ring.one])


def intersect(I, K, config=None):
    """I intersect K via the auxiliary-variable construction
    (t*I + (1-t)*K, then eliminate t with a block order)."""
    if I.ring != K.ring:
        raise RingMismatchError("ideals live in different rings")
    ring = I.ring
    if not I.gens or not K.gens:
        return Ideal(ring, [])
    big = ring.extended(1)
    t = big.var(big.variables[-1])
    one_minus_t = big.one - t
    gens = [t * ring.lift(g, big) for g in I.gens]
    gens += [one_minus_t * ring.lift(g, big) for g in K.gens]
    basis = groebner_basis(Ideal(big, gens), config)
    n = len(ring.variables)
    kept = [g for g in basis if all(not any(e[n:]) for e in g._terms)]
    return Ideal(ring, [ring.project(g) for g in kept])


def _exact_quotient(h, g, config):
    """The quotient h / g for h in (g); remainder must vanish."""
    ring = h.ring
    p = ring.p
    lm = g.leading_monomial()
    lc_inv = pow(g.leading_coeff(), p - 2, p)
    quo = {}
    rem = h
    while not rem.is_zero():
        e = rem.leading_monomial()
        if not all(a >= b for a, b in zip(e, lm)):
            raise AssertionError("exact division left a nonzero remainder")
        shift = tuple(a - b for a, b in zip(e, lm))
        factor = (rem.leading_coeff() * lc_inv) % p
        quo[shift] = factor
        rem = rem - ring.monomial(shift, factor) * g
    return ring.poly(quo)


def colon(I, K, config=None):
    """(I : K) = {r : rK in I}.  Colon by the zero ideal returns the unit
    ideal with a warning, by convention."""
    if I.ring != K.ring:
        raise RingMismatchError("ideals live in different rings")
    ring = I.ring
    if not K.gens:
        warnings.warn("colon by the zero ideal: returning the unit ideal", ColonByZeroWarning)
        return unit_ideal(ring)
    result = None
    for g in K.gens:
        meet = intersect(I, Ideal(ring, [g]), config)
        part = Ideal(ring, [_exact_quotient(h, g, config) for h in meet.gens])
        result = part if result is None else intersect(result, part, config)
    return result


def saturate(I, K, config=None):
    """(I : K^infinity) plus the first index s with (I : K^s) = (I : K^(s+1)).

    Chain stabilization of iterated colons is genuine: one repeated value
    forces stability for all larger exponents.
    """
    config = config or DEFAULT_CONFIG
    if not K.gens:
        warnings.warn("saturation by the zero ideal: returning the unit ideal", ColonByZeroWarning)
        return unit_ideal(I.ring), 0
    current = I
    for s in range(config.saturation_cap):
        nxt = colon(current, K, config)
        if ideal_equal(nxt, current, config):
            return current, s
        current = nxt
    raise BudgetExceededError(
        f"saturation did not stabilize within {config.saturation_cap} steps", kind="saturation"
    )


def krull_dimension(I, config=None):
    """Dimension of the quotient by I, computed combinatorially from the
    leading-term ideal (maximal independent variable subsets); -1 for the
    unit ideal."""
    basis = groebner_basis(I, config)
    n = len(I.ring.variables)
    if not basis:
        return n
    supports = []
    for g in basis:
        sup = frozenset(i for i, e in enumerate(g.leading_monomial()) if e)
        if not sup:
            return -1  # unit ideal
        supports.append(sup)
    best = 0
    # scan subsets largest-first so the first independent one wins
    from itertools import combinations

    for size in range(n, 0, -1):
        for combo in combinations(range(n), size):
            u = set(combo)
            if all(not sup <= u for sup in supports):
                return size
    return best


def radical_member(f, I, config=None):
    """True iff f lies in the radical of I (auxiliary-variable trick)."""
    if f.ring != I.ring:
        raise RingMismatchError("polynomial and ideal live in different rings")
    ring = I.ring
    if f.is_zero():
        return True
    big = ring.extended(1)
    t = big.var(big.variables[-1])
    gens = [ring.lift(g, big) for g in I.gens]
    gens.append(big.one - t * ring.lift(f, big))
    return Ideal(big, gens).is_unit(config)
