"""Exact checks of the multiplicity formulas and the identities behind them.

Every check returns a :class:`VerificationReport`. Equalities are compared
as Python ints; inequalities are checked at each sampled ``(p, q)`` with
``q >= (p + 1) r``.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, product

from .brfunction import (
    LambdaTable,
    StrataFilter,
    big_lambda_brute,
    big_lambda_fast,
    binom,
    classify,
    compositions,
    count_fiber,
    family_sum,
    j_ideal_bruteforce,
    j_ideal_closed_form,
    j_ideal_reduced,
    lambda_br,
)
from .monomial import (
    IdealFamily,
    colength,
    colength_incl_excl,
    contains,
    ideal_equals,
    ideal_power,
    ideal_product,
    ideal_sum,
    is_subideal,
)
from .multiplicity import (
    DEFAULT_BUDGET,
    MultiplicityReport,
    br_multiplicity,
    br_multiplicity_sequence,
    hs_multiplicity,
    mixed_multiplicities,
)

PASS, FAIL, INAPPLICABLE = "pass", "fail", "inapplicable"

FINITE_SAMPLE_NOTE = "finite-sample inequality only; the asymptotic bound is not tested"


@dataclass
class VerificationReport:
    theorem: str
    family: str
    lhs: object
    rhs: object
    verdict: str
    witness: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.verdict != FAIL

    def to_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "family": self.family,
            "lhs": _stringify(self.lhs),
            "rhs": _stringify(self.rhs),
            "verdict": self.verdict,
            "witness": _stringify(self.witness),
            "notes": list(self.notes),
        }


def _stringify(obj):
    """Integers become decimal strings so JSON consumers never overflow."""
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): _stringify(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_stringify(v) for v in obj]
    return obj


def _verdict(ok: bool) -> str:
    return PASS if ok else FAIL


def _region_points(r, p_max, q_max, p_min=1):
    for p in range(p_min, p_max + 1):
        for q in range((p + 1) * r, q_max + 1):
            yield p, q


# ---------------------------------------------------------------- theorems


def check_last_multiplicity(F: IdealFamily, budget=DEFAULT_BUDGET, report: MultiplicityReport | None = None):
    """Last positive associated multiplicity equals ``e(I_1 + ... + I_r)``."""
    rep = report or br_multiplicity_sequence(F, budget)
    r = F.count
    S = family_sum(F)
    lhs = rep.sequence[r - 1]
    rhs = hs_multiplicity(S, budget)
    return VerificationReport(
        "last-multiplicity",
        str(F),
        lhs,
        rhs,
        _verdict(lhs == rhs),
        {"j": r - 1, "ideal_sum": str(S), "bases": [list(b) for b in rep.evidence[r - 1].bases]},
        [rep.note],
    )


def check_kirby_rees(F: IdealFamily, budget=DEFAULT_BUDGET):
    """``e(C)`` equals the sum of the mixed multiplicities of type ``|i| = d``."""
    lhs = br_multiplicity(F, budget)
    table = mixed_multiplicities(F, budget)
    return VerificationReport(
        "kirby-rees",
        str(F),
        lhs,
        table.total(),
        _verdict(lhs == table.total()),
        {"mixed": {",".join(map(str, i)): v for i, v in sorted(table.entries.items())}},
    )


def is_nested(F: IdealFamily) -> bool:
    return all(is_subideal(F.ideals[j], F.ideals[j + 1]) for j in range(F.count - 1))


def check_nested(F: IdealFamily, budget=DEFAULT_BUDGET, report: MultiplicityReport | None = None):
    """For a chain ``I_1 <= ... <= I_r``: ``e^j(C) = e(R/I_{j+1} + ... + R/I_r)``."""
    notes = ["containments tested as non-strict; equal neighbours are allowed"]
    if not is_nested(F):
        return VerificationReport("nested", str(F), None, None, INAPPLICABLE, {}, notes + ["family is not a chain"])
    rep = report or br_multiplicity_sequence(F, budget)
    r = F.count
    lhs = [rep.sequence[j] for j in range(1, r)]
    rhs = [br_multiplicity(F.sub(range(j, r)), budget) for j in range(1, r)]
    return VerificationReport(
        "nested", str(F), lhs, rhs, _verdict(lhs == rhs), {"j": list(range(1, r))}, notes + [rep.note]
    )


# ---------------------------------------------------------------- cells


def _random_composition(rng, total, parts):
    cuts = sorted(rng.randint(0, total) for _ in range(parts - 1))
    edges = [0] + cuts + [total]
    return tuple(edges[i + 1] - edges[i] for i in range(parts))


def _sample_cell(rng, r, p, q):
    """Random ``n`` in ``H_{p,q}`` whose small coordinates sum to ``<= p``."""
    k = rng.randint(1, r)
    big = sorted(rng.sample(range(r), k))
    small = [i for i in range(r) if i not in big]
    m = rng.randint(0, p) if small else 0
    n_small = _random_composition(rng, m, len(small)) if small else ()
    extra = _random_composition(rng, p + q - m - k * (p + 1), k)
    n = [0] * r
    for i, v in zip(small, n_small):
        n[i] = v
    for i, v in zip(big, extra):
        n[i] = v + p + 1
    return tuple(n)


def check_j_ideal_forms(F: IdealFamily, p=None, q=None, samples=200, seed=0, p_max=4, q_span=12):
    """Closed-form and reduced ``J`` ideals against brute force.

    Draws ``samples`` points from cells with small-coordinate sum ``<= p``
    (closed form and reduced form both compared) and ``samples`` uniform
    points of ``H_{p,q}`` (reduced form compared). With ``p``/``q`` unset,
    each draw picks ``1 <= p <= p_max`` and ``q`` within ``q_span`` of the
    region boundary.
    """
    rng = random.Random(seed)
    r = F.count

    def pick():
        pp = p if p is not None else rng.randint(1, p_max)
        qq = q if q is not None else rng.randint((pp + 1) * r, (pp + 1) * r + q_span)
        return pp, qq

    mismatches = []
    closed = reduced = 0
    for _ in range(samples):
        pp, qq = pick()
        n = _sample_cell(rng, r, pp, qq)
        brute = j_ideal_bruteforce(F, pp, n)
        closed += 1
        if not ideal_equals(j_ideal_closed_form(F, pp, n), brute):
            mismatches.append({"p": pp, "q": qq, "n": list(n), "form": "closed"})
        reduced += 1
        if not ideal_equals(j_ideal_reduced(F, pp, n), brute):
            mismatches.append({"p": pp, "q": qq, "n": list(n), "form": "reduced"})
    for _ in range(samples):
        pp, qq = pick()
        n = _random_composition(rng, pp + qq, r)
        reduced += 1
        if not ideal_equals(j_ideal_reduced(F, pp, n), j_ideal_bruteforce(F, pp, n)):
            mismatches.append({"p": pp, "q": qq, "n": list(n), "form": "reduced"})
    return VerificationReport(
        "j-forms",
        str(F),
        {"closed_form_samples": closed, "reduced_samples": reduced},
        {"mismatches": len(mismatches)},
        _verdict(not mismatches),
        {"seed": seed, "mismatches": mismatches[:10]},
    )


@lru_cache(maxsize=256)
def region_breakdown(F: IdealFamily, p: int, q: int) -> dict:
    """Brute-force ``Lambda`` split by stratum: ``{Stratum: partial sum}``."""
    out = {}
    for n in compositions(p + q, F.count):
        st = classify(n, p)
        out[st] = out.get(st, 0) + colength(j_ideal_bruteforce(F, p, n))
    return out


def _region_sum(F, p, q, flt: StrataFilter) -> int:
    return sum(v for st, v in region_breakdown(F, p, q).items() if flt.matches(st))


def cell_sum_formula(F: IdealFamily, p: int, q: int, big, small) -> int:
    """The explicit double sum for ``Lambda`` over the cell (big | small, sum <= p)."""
    k = len(big)
    S = family_sum(F, big)
    total = 0
    for m in range(p + 1):
        for n_small in compositions(m, len(small)):
            a = ideal_power(S, p - m)
            for j, e in zip(small, n_small):
                a = ideal_product(a, ideal_power(ideal_sum(S, F.ideals[j]), e))
            total += binom(q - (k - 1) * p - 1 - m, k - 1) * colength(a)
    return total


def _lambda_L(F, p, big, small):
    S = family_sum(F, big)
    L = IdealFamily((S,) + tuple(ideal_sum(S, F.ideals[j]) for j in small))
    return lambda_br(L, p)


def check_cell_sums(F: IdealFamily, p: int, q: int):
    """Exact cell sum and its bound ``binom(q-(k-1)p-1, k-1) * lambda_L(p)``.

    Checked for every ``k`` and every choice of small coordinates, not only
    the leading block.
    """
    r = F.count
    rows = []
    ok = True
    for k in range(1, r + 1):
        for big in combinations(range(r), k):
            small = tuple(i for i in range(r) if i not in big)
            cell = _region_sum(F, p, q, StrataFilter(k, small, False))
            explicit = cell_sum_formula(F, p, q, big, small)
            bound = binom(q - (k - 1) * p - 1, k - 1) * _lambda_L(F, p, big, small)
            good = cell == explicit and cell <= bound
            ok &= good
            rows.append({"k": k, "small": list(small), "cell": cell, "explicit": explicit, "bound": bound, "ok": good})
    return VerificationReport(
        "cell-sums", str(F), [x["cell"] for x in rows], [x["explicit"] for x in rows], _verdict(ok),
        {"p": p, "q": q, "cells": rows}, [FINITE_SAMPLE_NOTE],
    )


def check_all_large_cell(F: IdealFamily, p: int, q: int):
    """Cells with every coordinate above ``p`` sum to ``binom(q-(r-1)p-1, r-1) * colength((sum I)^p)``."""
    r = F.count
    lhs = _region_sum(F, p, q, StrataFilter(k=r))
    rhs = binom(q - (r - 1) * p - 1, r - 1) * colength(ideal_power(family_sum(F), p))
    return VerificationReport("all-large", str(F), lhs, rhs, _verdict(lhs == rhs), {"p": p, "q": q})


def check_fiber_counts(k_max=3, p_max=3, q_max=20):
    """``count_fiber`` against direct enumeration for ``m <= p``."""
    mismatches = []
    checked = 0
    for k in range(1, k_max + 1):
        for p in range(p_max + 1):
            for q in range(q_max + 1):
                for m in range(p + 1):
                    target = p + q - m
                    direct = sum(
                        1 for n in compositions(target, k) if all(v > p for v in n)
                    )
                    checked += 1
                    if direct != count_fiber(p, q, k, m):
                        mismatches.append({"k": k, "p": p, "q": q, "m": m, "direct": direct})
    return VerificationReport(
        "fiber-counts", "-", {"checked": checked}, {"mismatches": len(mismatches)},
        _verdict(not mismatches), {"k_max": k_max, "p_max": p_max, "q_max": q_max, "mismatches": mismatches[:10]},
    )


# ---------------------------------------------------------------- plus cells


def check_plus_cell_containment(F: IdealFamily, p: int, q: int):
    """For every ``n`` in a plus cell, ``b^p`` lies in ``J(n)`` with ``b`` the product of the small ideals."""
    r = F.count
    failures = []
    checked = 0
    for n in compositions(p + q, r):
        st = classify(n, p)
        if not st.plus_cell:
            continue
        b = None
        for j in st.small:
            b = F.ideals[j] if b is None else ideal_product(b, F.ideals[j])
        bp = ideal_power(b, p)
        J = j_ideal_bruteforce(F, p, n)
        checked += 1
        inside = all(contains(J, g) for g in bp.gens)
        shorter = colength(J) <= colength(bp)
        if not (inside and shorter):
            failures.append({"n": list(n), "contained": inside, "colength_J": colength(J), "colength_bp": colength(bp)})
    return VerificationReport(
        "plus-containment", str(F), {"plus_cell_points": checked}, {"failures": len(failures)}, _verdict(not failures),
        {"p": p, "q": q, "failures": failures[:10]}, [FINITE_SAMPLE_NOTE],
    )


def check_plus_cell_size(p: int, q: int, k: int, r: int):
    """Size of the plus cell for small block ``{k+1..r}`` against its stated bound.

    Records the exact size, the sum of fibre counts, and the bound
    ``binom(q-(k-1)p-1, k-1) * [binom(r-k+(r-k)p-1, r-k) - binom(r-k+p-1, r-k)]``.
    """
    if not 1 <= k <= r - 2:
        return VerificationReport(
            "plus-size", f"r={r}", None, None, INAPPLICABLE, {"p": p, "q": q, "k": k},
            ["the bound is stated for 1 <= k <= r - 2 only"],
        )
    small = tuple(range(k, r))
    direct = 0
    for n in compositions(p + q, r):
        st = classify(n, p)
        if st.k == k and st.small == small and st.plus_cell:
            direct += 1
    s = r - k
    fibres = sum(
        count_fiber(p, q, k, sum(ns), r)
        for ns in product(range(p + 1), repeat=s)
        if sum(ns) > p
    )
    lead = binom(q - (k - 1) * p - 1, k - 1)
    bound = lead * (binom(s + s * p - 1, s) - binom(s + p - 1, s))
    ok = direct == fibres and direct <= bound
    return VerificationReport(
        "plus-size", f"r={r}", direct, bound, _verdict(ok),
        {"p": p, "q": q, "k": k, "fibre_sum": fibres}, [FINITE_SAMPLE_NOTE],
    )


# ---------------------------------------------------------------- evaluators


def check_evaluators(F: IdealFamily, p_max=3, q_max=18):
    """Stratified and brute-force ``Lambda`` agree on the whole grid."""
    mismatches = []
    checked = 0
    for p, q in _region_points(F.count, p_max, q_max, p_min=0):
        a, b = big_lambda_brute(F, p, q), big_lambda_fast(F, p, q)
        checked += 1
        if a != b:
            mismatches.append({"p": p, "q": q, "brute": a, "fast": b})
    return VerificationReport(
        "evaluators", str(F), {"points": checked}, {"mismatches": len(mismatches)}, _verdict(not mismatches),
        {"p_max": p_max, "q_max": q_max, "mismatches": mismatches[:10]},
    )


def check_structural(F: IdealFamily, budget=DEFAULT_BUDGET, report: MultiplicityReport | None = None, p_max=4):
    """Colength oracles agree, the sequence is well-shaped, ``Lambda(p, 0) = lambda(p)``."""
    problems = []
    ideals = list(F.ideals) + [family_sum(F)]
    for I in ideals:
        for a in range(1, 3):
            Ia = ideal_power(I, a)
            if len(Ia.gens) <= 20 and colength(Ia) != colength_incl_excl(Ia):
                problems.append(f"colength oracles differ on {Ia}")
    rep = report or br_multiplicity_sequence(F, budget)
    problems += rep.violations()
    if rep.sequence[0] != br_multiplicity(F, budget):
        problems.append(f"e^0 = {rep.sequence[0]} differs from e(C) = {br_multiplicity(F, budget)}")
    for p in range(p_max + 1):
        if big_lambda_brute(F, p, 0) != lambda_br(F, p):
            problems.append(f"Lambda({p}, 0) != lambda({p})")
    return VerificationReport(
        "structural", str(F), rep.sequence, None, _verdict(not problems), {"problems": problems}, [rep.note]
    )


# ---------------------------------------------------------------- corpus


CHECKS = (
    "last-multiplicity", "kirby-rees", "nested", "j-forms", "cell-sums", "all-large",
    "plus-containment", "plus-size", "fiber-counts", "evaluators", "structural",
)


@dataclass(frozen=True)
class RunConfig:
    which: tuple = CHECKS
    budget: int = DEFAULT_BUDGET
    p_max: int = 3
    q_max: int = 18
    samples: int = 200
    seed: int = 0
    threads: int = 1


class VerificationFailure(RuntimeError):
    def __init__(self, reports):
        failed = [r for r in reports if not r.passed]
        super().__init__(f"{len(failed)} of {len(reports)} checks failed")
        self.reports = reports


def run_family(F: IdealFamily, config: RunConfig) -> list:
    which = set(config.which)
    out = []
    needs_seq = which & {"last-multiplicity", "nested", "structural"}
    rep = br_multiplicity_sequence(F, config.budget, table=LambdaTable(F)) if needs_seq else None
    if "last-multiplicity" in which:
        out.append(check_last_multiplicity(F, config.budget, rep))
    if "kirby-rees" in which:
        out.append(check_kirby_rees(F, config.budget))
    if "nested" in which:
        out.append(check_nested(F, config.budget, rep))
    if "j-forms" in which:
        out.append(check_j_ideal_forms(F, samples=config.samples, seed=config.seed))
    grid = list(_region_points(F.count, config.p_max, config.q_max))
    for name, fn in (("all-large", check_all_large_cell), ("cell-sums", check_cell_sums), ("plus-containment", check_plus_cell_containment)):
        if name in which:
            out.extend(fn(F, p, q) for p, q in grid)
    if "evaluators" in which:
        out.append(check_evaluators(F, config.p_max, config.q_max))
    if "structural" in which:
        out.append(check_structural(F, config.budget, rep))
    region_breakdown.cache_clear()
    return out


def run_global(config: RunConfig, r_max: int = 5) -> list:
    """Family-independent checks (pure counting), for ``r`` up to ``r_max``."""
    which = set(config.which)
    out = []
    if "fiber-counts" in which:
        out.append(check_fiber_counts(3, config.p_max, 20))
    if "plus-size" in which:
        for r in range(1, r_max + 1):
            for k in range(1, r - 1):
                out.extend(check_plus_cell_size(p, q, k, r) for p, q in _region_points(r, config.p_max, config.q_max))
    return out


def run_corpus(corpus, config: RunConfig = RunConfig(), strict: bool = True) -> list:
    """Run every selected check on every family.

    Families run in a process pool when ``config.threads != 1`` (0 means one
    worker per CPU); report order is fixed either way. With ``strict`` any
    failing report raises :class:`VerificationFailure`.
    """
    corpus = list(corpus)
    if config.threads == 1 or len(corpus) < 2:
        per_family = [run_family(F, config) for F in corpus]
    else:
        workers = None if config.threads == 0 else config.threads
        with ProcessPoolExecutor(max_workers=workers) as pool:
            per_family = list(pool.map(run_family, corpus, [config] * len(corpus)))
    reports = [rep for reps in per_family for rep in reps]
    reports += run_global(config, max([5] + [F.count for F in corpus]))
    if strict and any(not r.passed for r in reports):
        raise VerificationFailure(reports)
    return reports
