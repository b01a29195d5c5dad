"""Sequence calculus on quotient rings: systems of parameters, d-sequences,
bounded unconditioned-strong-d-sequence verification, filter-regular
sequences, unmixed parts, limit ideals, and a machine-checkable identity
suite for unconditioned strong d-sequences.

Index conventions: sequence positions are 1-based in subsets ("Lambda")
passed to :func:`unmixed_part` and :func:`limit_ideal`; d-sequence
violations are reported as (j, k) with 0 <= j < k <= l, where j counts the
prefix length.  The sum over the empty subset is the zero ideal of R, i.e.
the defining ideal J as a preimage.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import BudgetExceededError, RingMismatchError, UnstabilizedError
from .ideals import (
    Ideal,
    colon,
    ideal_contains,
    ideal_equal,
    ideal_member,
    ideal_sum,
    intersect,
    krull_dimension,
    radical_member,
    saturate,
    scale_ideal,
)


class SequenceSpec:
    """An ordered sequence x_1, ..., x_l of ring elements (representatives
    in the ambient polynomial ring) with a positive exponent vector.

    The effective sequence is x_i ** n_i; most operations act on it, while
    product denominators and colon divisors use the raw elements, matching
    the usual conventions for unmixed parts and limit ideals.
    """

    def __init__(self, R, elements, exponents=None):
        elements = tuple(elements)
        if not elements:
            raise ValueError("a sequence needs at least one element")
        for f in elements:
            if f.ring != R.ring:
                raise RingMismatchError("sequence element lies in a different ring")
            if R.reduce(f).is_zero():
                raise ValueError(f"sequence element is zero in the quotient ring: {f}")
        exponents = tuple(exponents) if exponents is not None else (1,) * len(elements)
        if len(exponents) != len(elements):
            raise ValueError("exponent vector length must match the sequence length")
        if any(n < 1 for n in exponents):
            raise ValueError("exponents must be positive")
        self.R = R
        self.elements = elements
        self.exponents = exponents
        self._effective = None

    @property
    def length(self):
        return len(self.elements)

    def effective(self):
        """The powered elements x_i ** n_i."""
        if self._effective is None:
            self._effective = tuple(f**n for f, n in zip(self.elements, self.exponents))
        return self._effective

    def with_exponents(self, exponents):
        return SequenceSpec(self.R, self.elements, exponents)

    def permuted(self, perm):
        return SequenceSpec(
            self.R,
            tuple(self.elements[i] for i in perm),
            tuple(self.exponents[i] for i in perm),
        )

    def _check_subset(self, subset):
        for i in subset:
            if not 1 <= i <= len(self.elements):
                raise ValueError(f"sequence index {i} out of range 1..{len(self.elements)}")

    def subset_product(self, subset):
        """x_Lambda = product of the raw elements over a 1-based subset; 1 for the empty set."""
        self._check_subset(subset)
        f = self.R.ring.one
        for i in subset:
            f = f * self.elements[i - 1]
        return f

    def partial_ideal(self, subset):
        """Preimage of the R-ideal generated by the powered elements over a 1-based subset."""
        subset = list(subset)
        self._check_subset(subset)
        eff = self.effective()
        return self.R.preimage([eff[i - 1] for i in subset])

    def prefix_ideal(self, j):
        """Preimage of (x_1**n_1, ..., x_j**n_j); the defining ideal for j = 0."""
        eff = self.effective()
        return self.R.preimage(eff[:j])

    def __repr__(self):
        inner = ", ".join(
            str(f) if n == 1 else f"({f})^{n}" for f, n in zip(self.elements, self.exponents)
        )
        return f"SequenceSpec[{inner}]"


# ---------------------------------------------------------------------------
# parameter tests


def is_system_of_parameters(x, config=None):
    """True iff the sequence has length dim R and generates an ideal primary
    to the irrelevant maximal ideal (every variable lies in its radical)."""
    config = config or x.R.config
    R = x.R
    if x.length != R.dimension:
        return False
    I = x.partial_ideal(range(1, x.length + 1))
    return all(radical_member(v, I, config) for v in R.ring.gens())


def is_subsystem_of_parameters(x, config=None):
    """True iff the sequence extends to a system of parameters, i.e. the
    dimension drops by exactly its length."""
    config = config or x.R.config
    R = x.R
    if x.length > R.dimension:
        return False
    I = x.partial_ideal(range(1, x.length + 1))
    return krull_dimension(I, config) == R.dimension - x.length


# ---------------------------------------------------------------------------
# d-sequences


def _colon_cached(cache, I, g, config):
    key = (I, g)
    got = cache.get(key) if cache is not None else None
    if got is None:
        got = colon(I, Ideal(I.ring, [g]), config)
        if cache is not None:
            cache[key] = got
    return got


def is_d_sequence(x, config=None, _cache=None):
    """Check ((x_1,...,x_j) : x_{j+1} x_k) = ((x_1,...,x_j) : x_k) for all
    0 <= j < k <= l, on the powered elements.  Returns (verdict, violation),
    the violation being the first failing pair (j, k) or None."""
    config = config or x.R.config
    eff = x.effective()
    l = x.length
    for j in range(l):
        prefix = x.prefix_ideal(j)
        for k in range(j + 1, l + 1):
            lhs = _colon_cached(_cache, prefix, eff[j] * eff[k - 1], config)
            rhs = _colon_cached(_cache, prefix, eff[k - 1], config)
            if not ideal_equal(lhs, rhs, config):
                return False, (j, k)
    return True, None


@dataclass
class UsdVerdict:
    """Outcome of the bounded unconditioned-strong-d-sequence check.

    A pass certifies the box [1, n_max]^l and all permutations only; it is
    never a proof of the unbounded property.
    """

    passed: bool
    n_max: int
    witness: dict | None = None


def is_usd_bounded(x, n_max, config=None):
    """Test every permutation of (x_1**m_1, ..., x_l**m_l) for every
    exponent vector in [1, n_max]^l against the d-sequence condition."""
    config = config or x.R.config
    l = x.length
    if l > config.usd_length_cap:
        raise BudgetExceededError(
            f"sequence length {l} exceeds the permutation cap {config.usd_length_cap}",
            kind="usd",
        )
    cache = {}
    for box in itertools.product(range(1, n_max + 1), repeat=l):
        powered = x.with_exponents(box)
        for perm in itertools.permutations(range(l)):
            ok, violation = is_d_sequence(powered.permuted(perm), config, _cache=cache)
            if not ok:
                return UsdVerdict(
                    False,
                    n_max,
                    {"exponents": box, "permutation": perm, "pair": violation},
                )
    return UsdVerdict(True, n_max)


def is_filter_regular(x, a=None, config=None):
    """True iff each colon quotient ((x_1,...,x_{j-1}) : x_j) is contained
    in the saturation of the prefix by ``a`` (default: the maximal ideal)."""
    config = config or x.R.config
    if a is None:
        a = x.R.maximal_ideal()
    eff = x.effective()
    for j in range(1, x.length + 1):
        prefix = x.prefix_ideal(j - 1)
        quotient = colon(prefix, Ideal(x.R.ring, [eff[j - 1]]), config)
        sat, _ = saturate(prefix, a, config)
        if not ideal_contains(sat, quotient, config):
            return False
    return True


# ---------------------------------------------------------------------------
# unmixed parts and limit ideals


def unmixed_part(x, subset, config=None):
    """((sum over Lambda of x_i**n_i) + J : sum over the complement of x_i R).

    For Lambda = [1, l] the divisor is the zero ideal; the colon-by-zero
    convention applies (unit ideal, with a warning).
    """
    config = config or x.R.config
    subset = sorted(set(subset))
    base = x.partial_ideal(subset)
    rest = [x.elements[i - 1] for i in range(1, x.length + 1) if i not in subset]
    return colon(base, Ideal(x.R.ring, rest), config)


def limit_ideal(x, subset=None, config=None):
    """Stable value of the ascending chain ((sum x_i**(n_i+j)) + J : x_Lambda**j).

    Returns (ideal, j_star) where j_star is the first index at which two
    consecutive chain values agree.  The empty subset gives the zero ideal
    of R.  Raises UnstabilizedError (with the partial chain) at the
    iteration cap.
    """
    config = config or x.R.config
    subset = sorted(set(subset)) if subset is not None else list(range(1, x.length + 1))
    if not subset:
        return x.R.zero_ideal(), 0
    prod = x.subset_product(subset)
    chain = []
    for j in range(config.limit_chain_cap + 1):
        bumped = [x.elements[i - 1] ** (x.exponents[i - 1] + j) for i in subset]
        base = x.R.preimage(bumped)
        term = base if j == 0 else colon(base, Ideal(x.R.ring, [prod**j]), config)
        if chain:
            if not ideal_contains(term, chain[-1], config):
                raise AssertionError("limit-ideal chain failed to ascend")
            if ideal_equal(term, chain[-1], config):
                return chain[-1], j - 1
        chain.append(term)
    raise UnstabilizedError(
        f"limit-ideal chain did not stabilize within {config.limit_chain_cap} steps",
        partial=chain,
    )


def limit_ideal_closed_form(x, config=None):
    """Closed form of the limit ideal, valid when the sequence is an
    unconditioned strong d-sequence (the caller certifies that, e.g. via
    ``is_usd_bounded``): (x_1**n_1) + (0 : x_1) for l = 1, and otherwise
    the sum over i of ((sum_{j != i} x_j**n_j) : x_i)."""
    config = config or x.R.config
    l = x.length
    if l == 1:
        torsion = colon(x.R.zero_ideal(), Ideal(x.R.ring, [x.elements[0]]), config)
        return ideal_sum(x.partial_ideal([1]), torsion)
    parts = []
    for i in range(1, l + 1):
        others = x.partial_ideal([k for k in range(1, l + 1) if k != i])
        parts.append(colon(others, Ideal(x.R.ring, [x.elements[i - 1]]), config))
    return ideal_sum(*parts)


def limit_ideal_subset_decomposition(x, config=None):
    """Subset decomposition of the limit ideal for l >= 2 under the
    unconditioned-strong-d-sequence hypothesis: the sum over proper subsets
    Lambda of (prod_{i in Lambda} x_i**(n_i - 1)) times the unmixed part of
    (sum_{i in Lambda} x_i R)."""
    config = config or x.R.config
    l = x.length
    if l < 2:
        raise ValueError("the subset decomposition needs a sequence of length at least 2")
    ones = x.with_exponents((1,) * l)
    parts = [x.R.J]
    for size in range(l):
        for subset in itertools.combinations(range(1, l + 1), size):
            mult = x.R.ring.one
            for i in subset:
                mult = mult * x.elements[i - 1] ** (x.exponents[i - 1] - 1)
            parts.append(scale_ideal(mult, unmixed_part(ones, subset, config)))
    return ideal_sum(*parts)


# ---------------------------------------------------------------------------
# identity suite


@dataclass
class CheckRecord:
    identity: str
    params: dict
    passed: bool
    detail: str = ""


@dataclass
class SuiteReport:
    sequence: str
    n_max: int
    hypothesis_verified: bool
    identities: tuple
    checks: list = field(default_factory=list)

    @property
    def all_passed(self):
        return all(c.passed for c in self.checks)

    def first_failure(self):
        for c in self.checks:
            if not c.passed:
                return c
        return None

    def to_dict(self):
        return {
            "sequence": self.sequence,
            "n_max": self.n_max,
            "hypothesis_verified": self.hypothesis_verified,
            "identities": list(self.identities),
            "all_passed": self.all_passed,
            "checks": [
                {
                    "identity": c.identity,
                    "params": {k: list(v) if isinstance(v, tuple) else v for k, v in sorted(c.params.items())},
                    "passed": c.passed,
                    "detail": c.detail,
                }
                for c in self.checks
            ],
        }


ALL_IDENTITIES = (
    "colon_unmixed",
    "colon_power",
    "limit_forms",
    "limit_product",
    "limit_decomposition",
    "intersection_prefix",
    "intersection_unmixed",
)


def verify_identity_suite(x, n_max, identities=None, config=None):
    """Machine verification of the colon/limit/intersection identities that
    hold for unconditioned strong d-sequences, over every exponent vector
    in [1, n_max]^l and every proper subset.

    The hypothesis itself is only box-checked; when it fails, the suite
    still runs and the report carries ``hypothesis_verified = False``.
    """
    config = config or x.R.config
    identities = tuple(identities) if identities else ALL_IDENTITIES
    l = x.length
    R = x.R
    verdict = is_usd_bounded(x, n_max, config)
    report = SuiteReport(repr(x), n_max, verdict.passed, identities)
    checks = report.checks

    unit_unmixed = {}

    def u1(subset):
        key = tuple(subset)
        if key not in unit_unmixed:
            unit_unmixed[key] = unmixed_part(x.with_exponents((1,) * l), subset, config)
        return unit_unmixed[key]

    def fail_detail(lhs, rhs):
        return f"lhs = ({lhs}); rhs = ({rhs})"

    indices = list(range(1, l + 1))
    proper_subsets = [c for size in range(l) for c in itertools.combinations(indices, size)]

    for n in itertools.product(range(1, n_max + 1), repeat=l):
        xn = x.with_exponents(n)
        eff = xn.effective()
        total = xn.partial_ideal(indices)
        un_cache = {}

        def un(subset, xn=xn, un_cache=un_cache):
            key = tuple(subset)
            if key not in un_cache:
                un_cache[key] = unmixed_part(xn, subset, config)
            return un_cache[key]

        for delta in proper_subsets:
            outside = [j for j in indices if j not in delta]
            base = xn.partial_ideal(delta)
            for j in outside:
                xj = x.elements[j - 1]
                if "colon_unmixed" in identities:
                    lhs = un(delta)
                    mid = colon(base, Ideal(R.ring, [xj]), config)
                    parts = [R.J]
                    for lam_size in range(len(delta) + 1):
                        for lam in itertools.combinations(delta, lam_size):
                            mult = R.ring.one
                            for i in lam:
                                mult = mult * x.elements[i - 1] ** (n[i - 1] - 1)
                            parts.append(scale_ideal(mult, u1(lam)))
                    sum_form = ideal_sum(*parts)
                    ok1 = ideal_equal(lhs, mid, config)
                    ok2 = ideal_equal(mid, sum_form, config)
                    checks.append(
                        CheckRecord(
                            "colon_unmixed",
                            {"n": n, "delta": delta, "j": j},
                            ok1 and ok2,
                            "" if ok1 and ok2 else fail_detail(lhs, mid if not ok1 else sum_form),
                        )
                    )
                if "colon_power" in identities:
                    lhs = colon(base, Ideal(R.ring, [xj ** n[j - 1]]), config)
                    rhs = colon(base, Ideal(R.ring, [xj]), config)
                    ok = ideal_equal(lhs, rhs, config)
                    checks.append(
                        CheckRecord(
                            "colon_power",
                            {"n": n, "delta": delta, "j": j},
                            ok,
                            "" if ok else fail_detail(lhs, rhs),
                        )
                    )

        if "limit_forms" in identities:
            try:
                lim, _ = limit_ideal(xn, None, config)
                closed = limit_ideal_closed_form(xn, config)
                ok1 = ideal_equal(lim, closed, config)
                if l >= 2:
                    un_sum = ideal_sum(R.J, *[un([k for k in indices if k != i]) for i in indices])
                    ok2 = ideal_equal(lim, un_sum, config)
                else:
                    ok2 = True
                checks.append(
                    CheckRecord(
                        "limit_forms",
                        {"n": n},
                        ok1 and ok2,
                        "" if ok1 and ok2 else fail_detail(lim, closed),
                    )
                )
            except UnstabilizedError as exc:
                checks.append(CheckRecord("limit_forms", {"n": n}, False, str(exc)))

        if "limit_product" in identities:
            try:
                lim, _ = limit_ideal(xn, None, config)
                prod = xn.subset_product(indices)
                bumped = R.preimage([x.elements[i - 1] ** (n[i - 1] + 1) for i in indices])
                ok = all(ideal_member(prod * g, bumped, config) for g in lim.basis(config))
                checks.append(
                    CheckRecord(
                        "limit_product",
                        {"n": n},
                        ok,
                        "" if ok else fail_detail(scale_ideal(prod, lim), bumped),
                    )
                )
            except UnstabilizedError as exc:
                checks.append(CheckRecord("limit_product", {"n": n}, False, str(exc)))

        if "limit_decomposition" in identities and l >= 2:
            try:
                lim, _ = limit_ideal(xn, None, config)
                decomp = limit_ideal_subset_decomposition(xn, config)
                ok = ideal_equal(lim, decomp, config)
                checks.append(
                    CheckRecord(
                        "limit_decomposition",
                        {"n": n},
                        ok,
                        "" if ok else fail_detail(lim, decomp),
                    )
                )
            except UnstabilizedError as exc:
                checks.append(CheckRecord("limit_decomposition", {"n": n}, False, str(exc)))

        if "intersection_prefix" in identities:
            for r in range(l):
                prefix = xn.prefix_ideal(r)
                quotient = colon(prefix, Ideal(R.ring, [eff[r]]), config)
                lhs = intersect(quotient, total, config)
                ok = ideal_equal(lhs, prefix, config)
                checks.append(
                    CheckRecord(
                        "intersection_prefix",
                        {"n": n, "r": r},
                        ok,
                        "" if ok else fail_detail(lhs, prefix),
                    )
                )

        if "intersection_unmixed" in identities:
            for lam in proper_subsets:
                lhs = intersect(un(lam), total, config)
                rhs = xn.partial_ideal(lam)
                ok = ideal_equal(lhs, rhs, config)
                checks.append(
                    CheckRecord(
                        "intersection_unmixed",
                        {"n": n, "lambda": lam},
                        ok,
                        "" if ok else fail_detail(lhs, rhs),
                    )
                )

    return report
