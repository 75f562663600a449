"""Built-in corpus of ideal families used by ``brmult verify --builtin-corpus``."""

from __future__ import annotations

from .monomial import IdealFamily, maximal_ideal, minimalize


def _I(d, *gens):
    return minimalize(gens, d)


def builtin_corpus() -> dict[str, IdealFamily]:
    m1, m2, m3 = maximal_ideal(1), maximal_ideal(2), maximal_ideal(3)
    staircase = _I(2, (2, 0), (1, 1), (0, 3))
    a = _I(2, (2, 0), (0, 1))
    b = _I(2, (1, 0), (0, 2))
    fams = {
        "d1-x-x": (m1, m1),
        "d1-x2-x": (_I(1, (2,)), m1),
        "d1-x3-x2-x": (_I(1, (3,)), _I(1, (2,)), m1),
        "d2-m": (m2,),
        "d2-staircase": (staircase,),
        "d2-m-m": (m2, m2),
        "d2-m-m2": (m2, m2 ** 2),
        "d2-nonnested": (a, b),
        "d2-m2-m": (m2 ** 2, m2),
        "d2-staircase-m": (staircase, m2),
        "d2-three-nonnested": (_I(2, (3, 0), (0, 1)), b, _I(2, (2, 0), (1, 1), (0, 2))),
        "d2-chain3": (m2 ** 3, _I(2, (3, 0), (1, 1), (0, 2)), m2),
        "d3-m2-pure": (m3 ** 2, _I(3, (2, 0, 0), (0, 1, 0), (0, 0, 1))),
    }
    return {name: IdealFamily(ideals) for name, ideals in fams.items()}
