"""Frobenius powers, Frobenius roots, Frobenius closure in quotient rings,
and the minimal test exponent Q(a) with (a^F)^[Q] = a^[Q].

Two different "e-th root" operations appear here and must not be confused:

* :func:`frobenius_root` is the smallest ideal K with I contained in K^[q]
  (computed from base-p digit splits of the generators).  It inverts
  ``frobenius_power`` on the polynomial ring.
* :func:`frobenius_preimage` is {r : r**q in I}, the largest ideal whose
  q-th Frobenius power lies inside I.  This is the operation the closure
  chain needs: each generator it returns carries the membership certificate
  g**q in I by construction.

The preimage always sits inside the root, and they agree exactly when every
root generator certifies; that fact gives a fast path that avoids the
module computation entirely on regular rings.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass, field

from .config import DEFAULT_CONFIG
from .errors import (
    BudgetExceededError,
    ExponentOverflowError,
    QExponentNotFoundError,
    RingMismatchError,
)
from .ideals import (
    Ideal,
    groebner_basis,
    ideal_contains,
    ideal_equal,
    ideal_member,
    ideal_sum,
    krull_dimension,
    normal_form,
)
from .polyring import Polynomial, frobenius_decompose


@dataclass(frozen=True)
class FrobeniusExponent:
    """A power q = p**e of the characteristic."""

    e: int
    q: int

    @staticmethod
    def of(p, e):
        return FrobeniusExponent(e, p**e)


class QuotientRing:
    """R = S/J presented by an ambient polynomial ring and a defining ideal.

    Ideals of R are always handled through their full preimages in S
    (generator lists containing J).  The model is the local ring at the
    irrelevant maximal ideal m = (all variables) of the quotient, so the
    relations are required to have zero constant term.
    """

    def __init__(self, ring, relations, config=None):
        self.ring = ring
        self.config = config or DEFAULT_CONFIG
        rels = tuple(r for r in relations if not r.is_zero())
        for r in rels:
            if r.ring != ring:
                raise RingMismatchError("relation lies in a different ring")
            if r.coefficient((0,) * len(ring.variables)):
                raise ValueError(f"relation has a nonzero constant term: {r}")
        self.J = Ideal(ring, rels)
        if self.J.is_unit(self.config):
            raise ValueError("the defining ideal is the unit ideal")
        self.dimension = krull_dimension(self.J, self.config)

    @property
    def p(self):
        return self.ring.p

    def preimage(self, gens):
        """The ideal of S representing the R-ideal generated by ``gens``."""
        return Ideal(self.ring, tuple(gens) + self.J.gens)

    def zero_ideal(self):
        return self.preimage(())

    def maximal_ideal(self):
        return self.preimage(self.ring.gens())

    def reduce(self, f):
        """Canonical representative of f modulo J."""
        return normal_form(f, self.J, self.config)

    def is_regular(self):
        return self.J.is_zero(self.config)

    def __repr__(self):
        return f"QuotientRing(F_{self.p}[{', '.join(self.ring.variables)}] / ({self.J}))"


def _check_e(e, config):
    if e < 0:
        raise ValueError("Frobenius exponent must be non-negative")
    if e > config.frobenius_e_cap:
        raise ExponentOverflowError(
            f"Frobenius exponent {e} exceeds the configured cap {config.frobenius_e_cap}"
        )


def frobenius_power(I, e, config=None):
    """The ideal generated by g**(p**e) for the generators g of I.

    Generator powers suffice: the Frobenius power of an ideal is generated
    by the q-th powers of any generating set.
    """
    config = config or DEFAULT_CONFIG
    e = e.e if isinstance(e, FrobeniusExponent) else e
    _check_e(e, config)
    if e == 0:
        return I
    return Ideal(I.ring, [g.frobenius(e) for g in I.gens])


def frobenius_root(I, e, config=None):
    """The smallest ideal K with I contained in frobenius_power(K, e).

    The root of a principal ideal is generated by the base-p**e digit
    components of its generator, and the root of a sum is the sum of roots.
    Requires a prime coefficient field.
    """
    config = config or DEFAULT_CONFIG
    e = e.e if isinstance(e, FrobeniusExponent) else e
    _check_e(e, config)
    if e == 0:
        return I
    comps = []
    for g in I.gens:
        comps.extend(frobenius_decompose(g, e).values())
    return Ideal(I.ring, comps)


# ---------------------------------------------------------------------------
# Frobenius preimage {r : r**(p**e) in I}
#
# One Frobenius step at a time: {r : r**(p**e) in I} = step applied e times,
# since r**(p**e) = (r**p)**(p**(e-1)).  A single step is a submodule
# elimination over S: decompose S as a free module over its subring of p-th
# powers with basis x**alpha, alpha in [0,p)^n; then I becomes the submodule
# spanned by the digit splits of x**alpha * g, and {r : r**p in I} is its
# intersection with the coordinate corresponding to alpha = 0.


def _vec_key(order, comp, exps):
    # component 0 is eliminated last: all other components dominate it
    return (1 if comp else 0, comp) + tuple(order.key(exps))


def _vec_lt(v, order):
    return max(v, key=lambda t: _vec_key(order, t[0], t[1]))


def _vec_monic(v, p, order):
    comp, exps = _vec_lt(v, order)
    c = v[(comp, exps)]
    if c == 1:
        return v
    inv = pow(c, p - 2, p)
    return {t: (inv * c2) % p for t, c2 in v.items()}


def _vec_reduce(v, basis, p, order, config):
    """Fully reduce a module element against basis vectors (all monic)."""
    if not v:
        return v
    work = dict(v)
    out = {}
    heap = [(tuple(-x for x in _vec_key(order, c, e)), c, e) for (c, e) in work]
    heapq.heapify(heap)
    max_deg = config.max_poly_degree
    while heap:
        _, comp, e = heapq.heappop(heap)
        c = work.get((comp, e))
        if not c:
            continue
        hit = None
        for lt, w in basis:
            if lt[0] == comp and all(a >= b for a, b in zip(e, lt[1])):
                hit = (lt, w)
                break
        if hit is None:
            del work[(comp, e)]
            out[(comp, e)] = c
            continue
        (lcomp, lexps), w = hit
        shift = tuple(a - b for a, b in zip(e, lexps))
        for (wc, we), coef in w.items():
            ee = tuple(a + b for a, b in zip(shift, we))
            t = (wc, ee)
            s = (work.get(t, 0) - c * coef) % p
            if s:
                if t not in work:
                    if sum(ee) > max_deg:
                        raise BudgetExceededError(
                            f"module reduction exceeded the degree budget {max_deg}",
                            kind="degree",
                        )
                    heapq.heappush(heap, (tuple(-x for x in _vec_key(order, wc, ee)), wc, ee))
                work[t] = s
            else:
                work.pop(t, None)
    return out


def _module_intersection_component(vectors, ring, config):
    """Groebner computation of N ∩ (S * e_0) for the submodule N spanned by
    ``vectors`` of a free module, under a position-over-term order that
    eliminates every component except 0.

    Returns the polynomials r with r*e_0 in N.  The coprime-leading-term
    shortcut is unsound for modules, so only the chain criterion is used.
    """
    p = ring.p
    order = ring.order
    G = []
    lts = []
    pending = set()
    heap = []

    def push_pairs(j):
        cj, ej = lts[j]
        for i in range(j):
            ci, ei = lts[i]
            if ci != cj:
                continue
            lcm = tuple(max(a, b) for a, b in zip(ei, ej))
            pending.add((i, j))
            heapq.heappush(heap, (_vec_key(order, ci, lcm), i, j, ci, lcm))

    for v in sorted(
        (v for v in vectors if v),
        key=lambda v: _vec_key(order, *_vec_lt(v, order)),
        reverse=True,
    ):
        w = _vec_reduce(v, G, p, order, config) if G else dict(v)
        if not w:
            continue
        w = _vec_monic(w, p, order)
        G.append((_vec_lt(w, order), w))
        lts.append(G[-1][0])
        push_pairs(len(G) - 1)

    processed = 0
    while heap:
        _, i, j, comp, lcm = heapq.heappop(heap)
        if (i, j) not in pending:
            continue
        pending.discard((i, j))
        processed += 1
        if processed > config.max_pairs:
            raise BudgetExceededError(
                f"module pair budget {config.max_pairs} exceeded", kind="pairs"
            )
        skip = False
        for k in range(len(G)):
            if k in (i, j):
                continue
            ck, ek = lts[k]
            if ck == comp and all(a >= b for a, b in zip(lcm, ek)):
                pik = (min(i, k), max(i, k))
                pjk = (min(j, k), max(j, k))
                if pik not in pending and pjk not in pending:
                    skip = True
                    break
        if skip:
            continue
        (ci, ei), u = G[i]
        (cj, ej), w = G[j]
        si = tuple(a - b for a, b in zip(lcm, ei))
        sj = tuple(a - b for a, b in zip(lcm, ej))
        spair = {}
        for (wc, we), coef in u.items():
            t = (wc, tuple(a + b for a, b in zip(si, we)))
            spair[t] = (spair.get(t, 0) + coef) % p
        for (wc, we), coef in w.items():
            t = (wc, tuple(a + b for a, b in zip(sj, we)))
            spair[t] = (spair.get(t, 0) - coef) % p
        spair = {t: c for t, c in spair.items() if c}
        h = _vec_reduce(spair, G, p, order, config)
        if not h:
            continue
        if len(G) >= config.max_basis_size:
            raise BudgetExceededError(
                f"module basis budget {config.max_basis_size} exceeded", kind="basis"
            )
        G.append((_vec_lt(h, order), _vec_monic(h, p, order)))
        lts.append(G[-1][0])
        push_pairs(len(G) - 1)

    out = []
    for (comp, _), w in G:
        if comp == 0 and all(c == 0 for (c, _e) in w):
            out.append(Polynomial(ring, {e: coef for (_c, e), coef in w.items()}))
    return out


def _preimage_step(I, config):
    """{r : r**p in I} for an ideal of the polynomial ring."""
    ring = I.ring
    p = ring.p
    basis = groebner_basis(I, config)
    if not basis:
        return I
    # fast path: if every digit component of the basis certifies, the root
    # and the preimage coincide
    root = frobenius_root(Ideal(ring, basis), 1, config)
    if all(ideal_member(g.frobenius(1), I, config) for g in groebner_basis(root, config)):
        return root
    n = len(ring.variables)
    offsets = list(itertools.product(range(p), repeat=n))
    comp_index = {off: i for i, off in enumerate(offsets)}  # (0,...,0) -> 0
    vectors = []
    for g in basis:
        for off in offsets:
            w = g * ring.monomial(off)
            vec = {}
            for exps, c in w._terms.items():
                alpha = tuple(x % p for x in exps)
                base = tuple(x // p for x in exps)
                vec[(comp_index[alpha], base)] = c
            vectors.append(vec)
    gens = _module_intersection_component(vectors, ring, config)
    return Ideal(ring, gens)


def frobenius_preimage(I, e, config=None):
    """The largest ideal K with frobenius_power(K, e) contained in I,
    i.e. {r : r**(p**e) in I}.  Every generator of the result satisfies
    that membership by construction."""
    config = config or DEFAULT_CONFIG
    e = e.e if isinstance(e, FrobeniusExponent) else e
    _check_e(e, config)
    if e == 0:
        return I
    # full-level fast path via the (always larger) Frobenius root
    root = frobenius_root(Ideal(I.ring, groebner_basis(I, config)), e, config)
    if all(ideal_member(g.frobenius(e), I, config) for g in groebner_basis(root, config)):
        return root
    current = I
    for _ in range(e):
        current = _preimage_step(current, config)
    return current


# ---------------------------------------------------------------------------
# closure chain


@dataclass
class ClosureResult:
    """Outcome of a Frobenius-closure chain computation.

    ``closure`` is the last chain value (a preimage ideal containing J).
    ``e_star`` is the first index where the chain repeated; ``None`` when
    the window closed without the required run of equalities, in which case
    ``stabilized`` is False and the value is only a lower bound stage.
    ``certified_lower`` records that every returned generator g satisfies
    g**(p**e) in a^[p**e] + J for the examined exponents, which holds by
    construction of the chain.  The reverse containment (that nothing joins
    the closure beyond the examined window) is heuristic.
    """

    closure: Ideal
    e_star: int | None
    certified_lower: bool
    stabilized: bool
    examined_e: int
    chain: list = field(default_factory=list)


def frobenius_closure(a, R, e_max=None, lookahead=None, config=None):
    """Ascending chain F_e = {r : r**(p**e) in a^[p**e] + J}, stopped after
    ``lookahead`` consecutive equal values or at ``e_max``."""
    config = config or R.config
    e_max = config.closure_e_max if e_max is None else e_max
    lookahead = config.closure_lookahead if lookahead is None else lookahead
    base = ideal_sum(a, R.J)
    chain = []
    run = 0
    e_star = None
    for e in range(e_max + 1):
        stage = ideal_sum(frobenius_power(base, e, config), R.J)
        F_e = frobenius_preimage(stage, e, config)
        if chain:
            if not ideal_contains(F_e, chain[-1], config):
                raise AssertionError("closure chain failed to ascend")
            if ideal_equal(F_e, chain[-1], config):
                run += 1
                if e_star is None:
                    e_star = e - 1
            else:
                run = 0
                e_star = None
        chain.append(F_e)
        if run >= lookahead:
            return ClosureResult(F_e, e_star, True, True, e, chain)
    return ClosureResult(chain[-1], e_star, True, False, e_max, chain)


def q_exponent(a, R, e_max=None, closure=None, config=None):
    """The least Q = p**e with (a^F)^[Q] + J = a^[Q] + J.

    Scanning upward from e = 0 gives minimality directly; once the powers
    agree at some e they agree at every larger one, because taking p-th
    powers preserves the equality modulo J.
    """
    config = config or R.config
    e_max = config.closure_e_max if e_max is None else e_max
    if closure is None:
        result = frobenius_closure(a, R, e_max=e_max, config=config)
        if not result.stabilized:
            raise QExponentNotFoundError(
                f"closure chain did not stabilize within e <= {e_max}", e_max=e_max
            )
        closure = result.closure
    base = ideal_sum(a, R.J)
    for e in range(e_max + 1):
        lhs = ideal_sum(frobenius_power(closure, e, config), R.J)
        rhs = ideal_sum(frobenius_power(base, e, config), R.J)
        if ideal_equal(lhs, rhs, config):
            return FrobeniusExponent.of(R.p, e)
    raise QExponentNotFoundError(
        f"no exponent e <= {e_max} equalizes the Frobenius powers", e_max=e_max
    )
