"""Pure-Python reference kernels.

Same contracts as the compiled ``_kernels`` extension; ``brmult.kernels``
picks one of the two at import time.
"""

from __future__ import annotations

from itertools import product


def minimal_generators(gens):
    """Return the divisibility-minimal elements of ``gens``, lex sorted.

    ``gens`` is an iterable of equal-length int tuples. Duplicates collapse.
    """
    # A divisor always has total degree <= its multiples, so scanning by
    # degree lets each candidate be tested only against kept generators.
    cands = sorted(set(gens), key=lambda g: (sum(g), g))
    kept = []
    for g in cands:
        for h in kept:
            if all(a <= b for a, b in zip(h, g)):
                break
        else:
            kept.append(g)
    kept.sort()
    return kept


def count_standard(gens, bounds):
    """Count lattice points of the box ``prod(range(N))`` outside the ideal.

    ``bounds[j]`` is the pure-power degree of variable ``j`` among ``gens``.
    The last coordinate is scanned as a column: for each point ``a`` of the
    box in the first ``d - 1`` coordinates, the standard monomials above it
    are ``x^a * x_d^t`` for ``t`` below the smallest last exponent of a
    generator dividing ``x^a * x_d^infinity``.
    """
    d = len(bounds)
    top = bounds[-1]
    if d == 1:
        return top
    total = 0
    for a in product(*(range(n) for n in bounds[:-1])):
        h = top
        for g in gens:
            if g[-1] < h:
                for j in range(d - 1):
                    if g[j] > a[j]:
                        break
                else:
                    h = g[-1]
        total += h
    return total


def pairwise_sums(left, right):
    """All exponent sums ``g + h`` for ``g`` in ``left`` and ``h`` in ``right``."""
    return [tuple(a + b for a, b in zip(g, h)) for g in left for h in right]
