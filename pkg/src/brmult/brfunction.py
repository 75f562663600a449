"""The Buchsbaum-Rim functions of ``C = R/I_1 + ... + R/I_r``.

``lambda_br(F, p)`` is the one-variable function and ``big_lambda(F, p, q)``
the two-variable one,

    Lambda(p, q) = sum over |n| = p + q of colength(J_p(n)),
    J_p(n)       = sum over |i| = p, 0 <= i <= n of I_1^{i_1} ... I_r^{i_r}.

Two evaluators are provided. ``big_lambda_brute`` walks every ``n``;
``big_lambda_fast`` groups the ``n`` by which coordinates stay ``<= p`` and
counts the remaining coordinates with a binomial, which needs
``q >= (p + 1) r``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, product
from math import comb

from .monomial import (
    IdealFamily,
    MonomialIdeal,
    colength,
    ideal_power,
    ideal_product,
    ideal_sum,
    monomial_power_product,
    unit_ideal,
)


class RegionError(ValueError):
    """Raised when ``(p, q)`` lies outside ``q >= (p + 1) r``."""


class EvaluatorMismatch(AssertionError):
    """Two evaluators produced different values for the same ``Lambda(p, q)``."""


def binom(n: int, t: int) -> int:
    """Binomial coefficient, zero whenever ``n < t`` or ``t < 0``."""
    if t < 0 or n < t:
        return 0
    return comb(n, t)


def in_region(p: int, q: int, r: int) -> bool:
    return q >= (p + 1) * r


def check_region(p: int, q: int, r: int) -> None:
    if p < 0 or q < 0:
        raise ValueError(f"p and q must be non-negative, got ({p}, {q})")
    if not in_region(p, q, r):
        raise RegionError(f"(p, q) = ({p}, {q}) violates q >= (p+1)r with r = {r}")


def compositions(total: int, parts: int, upper=None):
    """Yield tuples of ``parts`` non-negative ints summing to ``total``.

    Lexicographic order. ``upper`` optionally bounds each entry.
    """
    if parts == 0:
        if total == 0:
            yield ()
        return
    hi = total if upper is None else min(total, upper[0])
    rest_upper = None if upper is None else upper[1:]
    room = None if upper is None else sum(rest_upper)
    for a in range(hi + 1):
        rem = total - a
        if room is not None and room < rem:
            continue
        for tail in compositions(rem, parts - 1, rest_upper):
            yield (a,) + tail


def _sum_ideals(ideals, d) -> MonomialIdeal:
    acc = None
    for I in ideals:
        acc = I if acc is None else ideal_sum(acc, I)
    return unit_ideal(d) if acc is None else acc


def family_sum(F: IdealFamily, indices=None) -> MonomialIdeal:
    """``I_{j_1} + ... + I_{j_s}`` over ``indices`` (default: all)."""
    idx = range(F.count) if indices is None else indices
    return _sum_ideals((F.ideals[j] for j in idx), F.dim)


# ---------------------------------------------------------------- J ideals


def j_ideal_bruteforce(F: IdealFamily, p: int, n) -> MonomialIdeal:
    n = tuple(n)
    if len(n) != F.count:
        raise ValueError(f"multi-index {n} has length {len(n)}, family has {F.count} ideals")
    if sum(n) < p:
        raise ValueError(f"|n| = {sum(n)} < p = {p}: no exponent vector i with |i| = p fits under n")
    acc = None
    for i in compositions(p, F.count, n):
        term = monomial_power_product(F, i)
        acc = term if acc is None else ideal_sum(acc, term)
    return acc


@dataclass(frozen=True)
class Stratum:
    """Cell of ``H_{p,q}`` containing ``n``.

    ``k`` coordinates exceed ``p``; ``small`` (0-based) lists the others and
    ``plus_cell`` says whether those small coordinates add up beyond ``p``.
    """

    k: int
    small: tuple[int, ...]
    plus_cell: bool

    def big(self, r: int) -> tuple[int, ...]:
        return tuple(i for i in range(r) if i not in self.small)


def classify(n, p: int) -> Stratum:
    n = tuple(n)
    small = tuple(i for i, v in enumerate(n) if v <= p)
    k = len(n) - len(small)
    if k == 0:
        raise RegionError(f"no coordinate of {n} exceeds p = {p}; (p, q) is outside the region")
    return Stratum(k, small, sum(n[i] for i in small) > p)


def j_ideal_closed_form(F: IdealFamily, p: int, n, stratum: Stratum | None = None) -> MonomialIdeal:
    """``J_p(n)`` as ``(S)^{p - m} * prod_{j small} (S + I_j)^{n_j}``.

    ``S`` is the sum of the ideals at the large coordinates and ``m`` the sum
    of the small coordinates; valid only when ``m <= p``.
    """
    n = tuple(n)
    st = classify(n, p) if stratum is None else stratum
    if st.plus_cell:
        raise ValueError(f"closed form needs the small coordinates of {n} to sum to at most p = {p}")
    m = sum(n[j] for j in st.small)
    return _closed_form(F, p, st.small, tuple(n[j] for j in st.small), m)


@lru_cache(maxsize=1 << 16)
def _closed_form(F, p, small, n_small, m):
    big_sum = family_sum(F, [i for i in range(F.count) if i not in small])
    acc = ideal_power(big_sum, p - m)
    for j, e in zip(small, n_small):
        if e:
            acc = ideal_product(acc, ideal_power(ideal_sum(big_sum, F.ideals[j]), e))
    return acc


def j_ideal_reduced(F: IdealFamily, p: int, n, stratum: Stratum | None = None) -> MonomialIdeal:
    """``J_p(n)`` enumerating only exponents on the small coordinates.

    Sum over ``0 <= i_j <= n_j`` (j small) with ``sum i_j <= p`` of
    ``S^{p - sum i_j} * prod I_j^{i_j}``, ``S`` the sum over large coordinates.
    """
    n = tuple(n)
    st = classify(n, p) if stratum is None else stratum
    return _reduced(F, p, st.small, tuple(n[j] for j in st.small))


@lru_cache(maxsize=1 << 16)
def _reduced(F, p, small, n_small):
    d = F.dim
    big_sum = family_sum(F, [i for i in range(F.count) if i not in small])
    acc = None
    caps = tuple(min(e, p) for e in n_small)
    for i_small in product(*(range(c + 1) for c in caps)):
        s = sum(i_small)
        if s > p:
            continue
        term = ideal_power(big_sum, p - s)
        for j, e in zip(small, i_small):
            if e:
                term = ideal_product(term, ideal_power(F.ideals[j], e))
        acc = term if acc is None else ideal_sum(acc, term)
    return unit_ideal(d) if acc is None else acc


@lru_cache(maxsize=1 << 16)
def _fiber_colength(F, p, small, n_small):
    m = sum(n_small)
    J = _closed_form(F, p, small, n_small, m) if m <= p else _reduced(F, p, small, n_small)
    return colength(J)


# ---------------------------------------------------------------- counting


def count_fiber(p: int, q: int, k: int, m: int, r: int | None = None) -> int:
    """Number of ``(n_1, ..., n_k)`` with every ``n_i > p`` summing to ``p + q - m``.

    Equals ``binom(q - (k-1)p - 1 - m, k - 1)``. When ``r`` is given the
    region ``q >= (p+1) r``, ``k <= r`` and ``m <= (r - k) p`` are enforced.
    """
    if k < 1 or p < 0 or q < 0 or m < 0:
        raise ValueError(f"count_fiber needs k >= 1 and p, q, m >= 0; got k={k}, p={p}, q={q}, m={m}")
    if r is not None:
        if k > r:
            raise ValueError(f"k = {k} exceeds r = {r}")
        check_region(p, q, r)
        if m > (r - k) * p:
            raise ValueError(f"m = {m} exceeds (r - k) p = {(r - k) * p}")
    return binom(q - (k - 1) * p - 1 - m, k - 1)


# ---------------------------------------------------------------- functions


def lambda_br(F: IdealFamily, p: int) -> int:
    """One-variable Buchsbaum-Rim function ``sum_{|n| = p} colength(I^n)``."""
    if p < 0:
        raise ValueError("p must be non-negative")
    return sum(colength(monomial_power_product(F, n)) for n in compositions(p, F.count))


def big_lambda_brute(F: IdealFamily, p: int, q: int) -> int:
    if p < 0 or q < 0:
        raise ValueError(f"p and q must be non-negative, got ({p}, {q})")
    return sum(colength(j_ideal_bruteforce(F, p, n)) for n in compositions(p + q, F.count))


def big_lambda_fast(F: IdealFamily, p: int, q: int) -> int:
    r = F.count
    check_region(p, q, r)
    total = 0
    for k in range(1, r + 1):
        for small in combinations(range(r), r - k):
            for n_small in product(range(p + 1), repeat=r - k):
                c = count_fiber(p, q, k, sum(n_small), r)
                if c:
                    total += c * _fiber_colength(F, p, small, n_small)
    return total


def big_lambda(F: IdealFamily, p: int, q: int, method: str = "auto") -> int:
    """Dispatch: ``fast`` inside the region, ``brute`` elsewhere or on request."""
    if method == "brute" or (method == "auto" and not in_region(p, q, F.count)):
        return big_lambda_brute(F, p, q)
    if method in ("fast", "auto"):
        return big_lambda_fast(F, p, q)
    raise ValueError(f"unknown method {method!r}")


@dataclass(frozen=True)
class StrataFilter:
    """Select cells of ``H_{p,q}``; ``None`` fields match anything.

    ``small`` is the 0-based set of coordinates that stay ``<= p``.
    """

    k: int | None = None
    small: tuple[int, ...] | None = None
    plus_cell: bool | None = None

    def matches(self, st: Stratum) -> bool:
        return (
            (self.k is None or st.k == self.k)
            and (self.small is None or tuple(sorted(self.small)) == st.small)
            and (self.plus_cell is None or st.plus_cell == self.plus_cell)
        )


def lambda_region(F: IdealFamily, p: int, q: int, strata_filter: StrataFilter | None = None) -> int:
    """``Lambda`` restricted to the ``n`` selected by ``strata_filter``.

    Walks ``H_{p,q}`` with brute-force ``J`` ideals, so it is independent of
    the stratified evaluator.
    """
    check_region(p, q, F.count)
    flt = strata_filter or StrataFilter()
    total = 0
    for n in compositions(p + q, F.count):
        if flt.matches(classify(n, p)):
            total += colength(j_ideal_bruteforce(F, p, n))
    return total


@dataclass
class LambdaTable:
    """Memo of ``Lambda(p, q)`` values with the evaluator that produced them."""

    family: IdealFamily
    values: dict = field(default_factory=dict)
    methods: dict = field(default_factory=dict)

    def get(self, p: int, q: int, method: str = "auto") -> int:
        if method == "both":
            a = self._eval(p, q, "brute")
            b = self._eval(p, q, "fast")
            if a != b:
                raise EvaluatorMismatch(f"evaluators disagree at ({p}, {q}): brute {a}, fast {b}")
            return a
        return self._eval(p, q, method)

    def _eval(self, p, q, method):
        if method == "auto":
            method = "fast" if in_region(p, q, self.family.count) else "brute"
        tags = self.methods.setdefault((p, q), set())
        if method in tags:
            return self.values[(p, q)]
        v = big_lambda(self.family, p, q, method)
        if (p, q) in self.values and self.values[(p, q)] != v:
            raise EvaluatorMismatch(
                f"Lambda({p}, {q}) mismatch: {sorted(tags)} gave {self.values[(p, q)]}, {method} gave {v}"
            )
        self.values[(p, q)] = v
        tags.add(method)
        return v

    def __call__(self, p: int, q: int) -> int:
        return self.get(p, q)
