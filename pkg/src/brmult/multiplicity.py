"""Multiplicities read off eventually-polynomial integer functions.

For a polynomial of total degree ``D`` the forward difference of order
``(o_1, ..., o_s)`` with ``sum o = D`` equals ``o_1! ... o_s!`` times the
coefficient of ``x^o``, at any base point. The extractors below evaluate that
difference at successive base points and accept the first value seen at two
consecutive bases.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import product
from math import comb, prod

from .brfunction import LambdaTable, compositions, in_region, lambda_br
from .monomial import IdealFamily, MonomialIdeal, colength, ideal_power, monomial_power_product

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 8


class StabilizationError(RuntimeError):
    """No two consecutive base points agreed within the budget."""

    def __init__(self, message, trace):
        super().__init__(message)
        self.trace = trace


@dataclass(frozen=True)
class Extraction:
    value: int
    bases: tuple  # the two agreeing base points
    trace: tuple  # (base, value) for every base tried


def mixed_difference(f, orders, base) -> int:
    """``Delta_1^{o_1} ... Delta_s^{o_s} f`` at ``base``."""
    orders, base = tuple(orders), tuple(base)
    if len(orders) != len(base):
        raise ValueError("orders and base must have the same length")
    total = 0
    top = sum(orders)
    for t in product(*(range(o + 1) for o in orders)):
        sign = -1 if (top - sum(t)) % 2 else 1
        weight = prod(comb(o, s) for o, s in zip(orders, t))
        total += sign * weight * f(*(b + s for b, s in zip(base, t)))
    return total


def stabilized_extract(f, orders, base_at, budget: int = DEFAULT_BUDGET, region=None) -> Extraction:
    """Stabilized mixed difference of ``f``.

    ``base_at(t)`` gives the base point after ``t`` advances. ``region``, if
    given, is a predicate every stencil point must satisfy.
    """
    orders = tuple(orders)
    trace = []
    prev = None
    for t in range(budget + 1):
        base = tuple(base_at(t))
        if region is not None:
            for s in product(*(range(o + 1) for o in orders)):
                pt = tuple(b + x for b, x in zip(base, s))
                if not region(pt):
                    raise ValueError(f"stencil point {pt} from base {base} leaves the admissible region")
        v = mixed_difference(f, orders, base)
        trace.append((base, v))
        if prev is not None and prev[1] == v:
            return Extraction(v, (prev[0], base), tuple(trace))
        prev = (base, v)
    raise StabilizationError(
        f"orders {orders}: no two consecutive bases agreed within {budget} advances", tuple(trace)
    )


# ---------------------------------------------------------------- ideals


def hs_extraction(I: MonomialIdeal, budget: int = DEFAULT_BUDGET) -> Extraction:
    d = I.dim
    return stabilized_extract(lambda p: colength(ideal_power(I, p)), (d,), lambda t: (1 + t,), budget)


def hs_multiplicity(I: MonomialIdeal, budget: int = DEFAULT_BUDGET) -> int:
    """Hilbert-Samuel multiplicity ``e(I)`` of an m-primary monomial ideal."""
    return hs_extraction(I, budget).value


@dataclass
class MixedMultiplicityTable:
    family: IdealFamily
    entries: dict = field(default_factory=dict)
    evidence: dict = field(default_factory=dict)

    def total(self) -> int:
        return sum(self.entries.values())

    def __getitem__(self, i):
        return self.entries[tuple(i)]


def mixed_multiplicities(F: IdealFamily, budget: int = DEFAULT_BUDGET) -> MixedMultiplicityTable:
    """``e_i(I_1, ..., I_r)`` for every ``|i| = d``.

    ``e_i`` is the order-``i`` mixed difference of ``n -> colength(I^n)``,
    taken at bases ``(1 + t, ..., 1 + t)``.
    """
    r = F.count

    def f(*n):
        return colength(monomial_power_product(F, n))

    table = MixedMultiplicityTable(F)
    for i in compositions(F.dim, r):
        ex = stabilized_extract(f, i, lambda t: (1 + t,) * r, budget)
        table.entries[i] = ex.value
        table.evidence[i] = ex
    return table


# ---------------------------------------------------------------- modules


def br_extraction(F: IdealFamily, budget: int = DEFAULT_BUDGET) -> Extraction:
    D = F.dim + F.count - 1
    return stabilized_extract(lambda p: lambda_br(F, p), (D,), lambda t: (1 + t,), budget)


def br_multiplicity(F: IdealFamily, budget: int = DEFAULT_BUDGET) -> int:
    """Buchsbaum-Rim multiplicity ``e(C)`` from the one-variable function."""
    return br_extraction(F, budget).value


def lambda_base(p0: int, a: int, r: int) -> tuple[int, int]:
    """Base ``(p0, q0)`` whose order-``(a, b)`` stencil stays in ``q >= (p+1) r``."""
    return p0, r * (p0 + a + 1) + r


@dataclass
class MultiplicityReport:
    family: IdealFamily
    sequence: list
    evidence: list
    method: str = "fast"
    note: str = "stabilization = two consecutive agreeing bases; not a certificate of polynomiality"

    @property
    def bases(self):
        return [ex.bases for ex in self.evidence]

    def violations(self) -> list[str]:
        """Broken structural properties of the sequence (empty when sound)."""
        r = self.family.count
        out = []
        for j in range(len(self.sequence) - 1):
            if self.sequence[j] < self.sequence[j + 1]:
                out.append(f"e^{j} = {self.sequence[j]} < e^{j + 1} = {self.sequence[j + 1]}")
        for j, v in enumerate(self.sequence):
            if j >= r and v != 0:
                out.append(f"e^{j} = {v} but j >= r = {r}")
            if v < 0:
                out.append(f"e^{j} = {v} is negative")
        if self.sequence[r - 1] <= 0:
            out.append(f"e^{r - 1} = {self.sequence[r - 1]} is not positive")
        return out


def br_multiplicity_sequence(
    F: IdealFamily,
    budget: int = DEFAULT_BUDGET,
    method: str = "fast",
    table: LambdaTable | None = None,
) -> MultiplicityReport:
    """``e^0, ..., e^{d+r-1}`` from mixed differences of ``Lambda``.

    ``method`` is passed to :class:`LambdaTable` (``fast``, ``brute`` or
    ``both``); every stencil point lies in ``q >= (p+1) r``.
    """
    r = F.count
    D = F.dim + r - 1
    lam = table if table is not None else LambdaTable(F)

    def f(p, q):
        return lam.get(p, q, method)

    seq, evidence = [], []
    for j in range(D + 1):
        a = D - j
        try:
            ex = stabilized_extract(
                f,
                (a, j),
                lambda t, a=a: lambda_base(1 + t, a, r),
                budget,
                region=lambda pt: in_region(pt[0], pt[1], r),
            )
        except StabilizationError as exc:
            raise StabilizationError(f"e^{j}: {exc}", exc.trace) from None
        log.debug("e^%d = %d at bases %s", j, ex.value, ex.bases)
        seq.append(ex.value)
        evidence.append(ex)
    return MultiplicityReport(F, seq, evidence, method)
