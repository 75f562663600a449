"""Monomial ideals in ``k[x_1, ..., x_d]`` and their colengths.

A monomial is a tuple of non-negative ints (its exponent vector). An ideal is
stored as its minimal generating set in lexicographic order, so two ideals
are equal exactly when their ``gens`` tuples are equal.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import prod

from . import kernels

Monomial = tuple[int, ...]

VAR_NAMES = "xyzw"


class DimensionError(ValueError):
    pass


class NotPrimaryError(ValueError):
    """Raised when a finite colength is requested of a non m-primary ideal."""


def _var(j: int, d: int) -> str:
    return VAR_NAMES[j] if d <= len(VAR_NAMES) else f"x{j + 1}"


def format_monomial(m: Monomial) -> str:
    d = len(m)
    parts = []
    for j, e in enumerate(m):
        if e == 1:
            parts.append(_var(j, d))
        elif e > 1:
            parts.append(f"{_var(j, d)}^{e}")
    return "*".join(parts) or "1"


@dataclass(frozen=True)
class MonomialIdeal:
    """A monomial ideal given by its minimal generators.

    Build instances with :func:`minimalize` (or the helpers below); the
    constructor trusts that ``gens`` is already a sorted antichain.
    """

    dim: int
    gens: tuple[Monomial, ...]

    def __str__(self) -> str:
        return "(" + ", ".join(format_monomial(g) for g in reversed(self.gens)) + ")"

    def __contains__(self, m) -> bool:
        return contains(self, m)

    def __add__(self, other: MonomialIdeal) -> MonomialIdeal:
        return ideal_sum(self, other)

    def __mul__(self, other: MonomialIdeal) -> MonomialIdeal:
        return ideal_product(self, other)

    def __pow__(self, a: int) -> MonomialIdeal:
        return ideal_power(self, a)

    def pure_powers(self) -> list[int | None]:
        """Degree of the pure power of each variable among the generators."""
        out: list[int | None] = [None] * self.dim
        for g in self.gens:
            support = [j for j, e in enumerate(g) if e]
            if len(support) == 1:
                j = support[0]
                if out[j] is None or g[j] < out[j]:
                    out[j] = g[j]
            elif not support:
                return [0] * self.dim
        return out

    def is_unit(self) -> bool:
        return self.gens == ((0,) * self.dim,)


@dataclass(frozen=True)
class IdealFamily:
    """The ideals ``I_1, ..., I_r`` defining ``C = R/I_1 + ... + R/I_r``."""

    ideals: tuple[MonomialIdeal, ...]
    names: tuple[str, ...] | None = None
    require_primary: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        if not self.ideals:
            raise ValueError("an ideal family needs at least one ideal")
        d = self.ideals[0].dim
        if d < 1:
            raise DimensionError("dimension must be positive")
        if any(I.dim != d for I in self.ideals):
            raise DimensionError("all ideals of a family must share the same dimension")
        for j, I in enumerate(self.ideals):
            if self.require_primary and not is_m_primary(I):
                raise NotPrimaryError(f"ideal {j + 1} {I} is not m-primary")
        if self.names is not None and len(self.names) != len(self.ideals):
            raise ValueError("names must match ideals")

    @property
    def dim(self) -> int:
        return self.ideals[0].dim

    @property
    def count(self) -> int:
        return len(self.ideals)

    def __str__(self) -> str:
        return "(" + ", ".join(str(I) for I in self.ideals) + ")"

    def permuted(self, order) -> IdealFamily:
        return self.sub(order)

    def sub(self, indices) -> IdealFamily:
        indices = list(indices)
        names = None if self.names is None else tuple(self.names[i] for i in indices)
        return IdealFamily(tuple(self.ideals[i] for i in indices), names, self.require_primary)


def _check_dims(*ideals: MonomialIdeal) -> int:
    d = ideals[0].dim
    for I in ideals[1:]:
        if I.dim != d:
            raise DimensionError(f"dimension mismatch: {d} vs {I.dim}")
    return d


def minimalize(gens, d: int) -> MonomialIdeal:
    gens = [tuple(int(e) for e in g) for g in gens]
    if not gens:
        raise ValueError("cannot build an ideal from an empty generator set")
    for g in gens:
        if len(g) != d:
            raise DimensionError(f"monomial {g} has {len(g)} exponents, expected {d}")
        if any(e < 0 for e in g):
            raise ValueError(f"negative exponent in {g}")
    return MonomialIdeal(d, tuple(kernels.minimal_generators(gens)))


def unit_ideal(d: int) -> MonomialIdeal:
    return MonomialIdeal(d, ((0,) * d,))


def maximal_ideal(d: int) -> MonomialIdeal:
    return minimalize([tuple(int(i == j) for i in range(d)) for j in range(d)], d)


def contains(I: MonomialIdeal, m) -> bool:
    m = tuple(m)
    if len(m) != I.dim:
        raise DimensionError(f"monomial {m} does not live in dimension {I.dim}")
    return any(all(a <= b for a, b in zip(g, m)) for g in I.gens)


def is_subideal(I: MonomialIdeal, J: MonomialIdeal) -> bool:
    """True when ``I`` is contained in ``J`` (checked on generators)."""
    _check_dims(I, J)
    return all(contains(J, g) for g in I.gens)


def is_m_primary(I: MonomialIdeal) -> bool:
    return all(e is not None for e in I.pure_powers())


def ideal_sum(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    d = _check_dims(I, J)
    return MonomialIdeal(d, tuple(kernels.minimal_generators(I.gens + J.gens)))


@lru_cache(maxsize=1 << 16)
def ideal_product(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    d = _check_dims(I, J)
    return MonomialIdeal(d, tuple(kernels.minimal_generators(kernels.pairwise_sums(I.gens, J.gens))))


@lru_cache(maxsize=1 << 16)
def ideal_power(I: MonomialIdeal, a: int) -> MonomialIdeal:
    if a < 0:
        raise ValueError("ideal powers need a non-negative exponent")
    if a == 0:
        return unit_ideal(I.dim)
    if a == 1:
        return I
    half = ideal_power(I, a // 2)
    sq = ideal_product(half, half)
    return ideal_product(sq, I) if a % 2 else sq


def ideal_equals(I: MonomialIdeal, J: MonomialIdeal) -> bool:
    _check_dims(I, J)
    return I.gens == J.gens


def monomial_power_product(F: IdealFamily, i) -> MonomialIdeal:
    """The product ``I_1^{i_1} ... I_r^{i_r}``."""
    i = tuple(i)
    if len(i) != F.count:
        raise ValueError(f"multi-index {i} has length {len(i)}, family has {F.count} ideals")
    return _power_product(F.ideals, i)


@lru_cache(maxsize=1 << 16)
def _power_product(ideals, i):
    if not any(i):
        return unit_ideal(ideals[0].dim)
    # peel the last non-zero factor so prefixes are shared in the cache
    last = max(j for j, e in enumerate(i) if e)
    rest = i[:last] + (0,) * (len(i) - last)
    head = _power_product(ideals, rest) if any(rest) else None
    tail = ideal_power(ideals[last], i[last])
    return tail if head is None else ideal_product(head, tail)


def _bounds(I: MonomialIdeal) -> list[int]:
    pp = I.pure_powers()
    if any(e is None for e in pp):
        raise NotPrimaryError(f"{I} is not m-primary; its colength is infinite")
    return pp


@lru_cache(maxsize=1 << 16)
def colength_box(I: MonomialIdeal) -> int:
    """Number of standard monomials, scanned over the pure-power bounding box."""
    return kernels.count_standard(I.gens, _bounds(I))


colength = colength_box


def colength_incl_excl(I: MonomialIdeal, max_gens: int = 20) -> int:
    """Colength by inclusion-exclusion over lcm-cones inside the bounding box.

    Independent of :func:`colength_box`; exponential in the number of
    generators, so refused above ``max_gens``. Subsets whose lcm already
    leaves the box contribute nothing and prune the search.
    """
    bounds = _bounds(I)
    gens = I.gens
    if len(gens) > max_gens:
        raise ValueError(f"{len(gens)} generators exceed the inclusion-exclusion limit {max_gens}")
    d = I.dim
    inside = 0

    def walk(start, lcm, sign):
        nonlocal inside
        for t in range(start, len(gens)):
            g = gens[t]
            new = tuple(max(a, b) for a, b in zip(lcm, g))
            if any(new[j] >= bounds[j] for j in range(d)):
                continue
            inside += sign * prod(bounds[j] - new[j] for j in range(d))
            walk(t + 1, new, -sign)

    walk(0, (0,) * d, 1)
    return prod(bounds) - inside
