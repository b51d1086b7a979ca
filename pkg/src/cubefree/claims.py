"""Catalogue of verifiable claims, keyed by stable claim ids.

Each claim is pure data: which parameters it takes, which parameter points
apply, and a runner producing a :class:`Verdict`.  The CLI ``verify``
subcommand only reads this table, so adding a claim needs no CLI changes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

from .ambient import Ambient
from .constructions import _is_prime, residue_construction
from .cubes import is_cube_free
from .lemmas import (
    cauchy_davenport_check,
    family_diagonal,
    family_prime_power,
    incidence_report,
    verify_s_t_lemma,
)
from .search import (
    BRUTE_FORCE_CAP,
    CUBE,
    Problem,
    bound_value,
    branch_and_bound_max,
    brute_force_max,
    chain_dp_max_pairfree_interval,
    graph_dp_max_pairfree_cyclic,
)


@dataclass(frozen=True)
class Verdict:
    """One checked parameter point: observed value against the claimed bound."""

    claim: str
    params: dict
    observed: int
    bound: str
    passed: bool
    method: str
    detail: Optional[dict] = None

    def as_json_dict(self) -> dict:
        return {
            "claim": self.claim,
            "params": self.params,
            "observed": self.observed,
            "bound": self.bound,
            "passed": self.passed,
            "method": self.method,
            "detail": self.detail,
        }


@dataclass(frozen=True)
class ClaimSpec:
    claim_id: str
    description: str
    point_flags: tuple[str, ...]  # CLI flags consumed: subsets of N/d, pairs, triples
    defaults: dict
    applies: Callable[..., bool]
    run: Callable[..., Verdict]


def _solve_cube_max(n: int, d: int):
    problem = Problem(CUBE, d, Ambient.cyclic(n))
    if n <= BRUTE_FORCE_CAP:
        return brute_force_max(problem)
    return branch_and_bound_max(problem)


def _run_construction(N: int, d: int) -> Verdict:
    a = residue_construction(N, d)
    target = int(bound_value("conj3", N=N, d=d))  # exact: d divides N here
    free = is_cube_free(a, d)
    return Verdict(
        "construction-sec2", {"N": N, "d": d}, len(a), f"(d-1)N/d = {target}",
        free and len(a) == target, "find_cube",
        None if free else {"cube_found": True},
    )


def _run_thm5i(N: int) -> Verdict:
    res = _solve_cube_max(N, 3)
    cap = math.floor(bound_value("conj3", N=N, d=3))
    tight = N % 3 != 0 or res.max_size == cap
    return Verdict(
        "thm5i", {"N": N}, res.max_size, f"floor(2N/3) = {cap}",
        res.max_size <= cap and tight, res.method,
        {"witness": res.witness.elements()},
    )


def _run_thm8(N: int, d: int) -> Verdict:
    res = chain_dp_max_pairfree_interval(N, d)
    main = bound_value("thm8-main", N=N, d=d)
    tol = 2 * math.log2(N) + 2
    dev = abs(res.max_size - main)
    return Verdict(
        "thm8", {"N": N, "d": d}, res.max_size,
        f"dN/(d+1) = {float(main):.2f} within {tol:.2f}",
        float(dev) <= tol, res.method, {"deviation": float(dev)},
    )


def _run_thm9(N: int, d: int) -> Verdict:
    res = graph_dp_max_pairfree_cyclic(N, d)
    cap = math.floor(bound_value("thm9", N=N, d=d))
    return Verdict(
        "thm9", {"N": N, "d": d}, res.max_size,
        f"floor(kN/(k+1)) = {cap} (k={math.gcd(d, N)})",
        res.max_size <= cap, res.method, None,
    )


def _run_sec41(N: int, d: int) -> Verdict:
    report = incidence_report(family_diagonal(N, d), d - 1, d - 1)
    return Verdict(
        "sec4.1", {"N": N, "d": d}, report.family_size,
        f"(d-1)|F| = (d-1)(N-1): {report.identity_lhs} = {report.identity_rhs}",
        report.ok and report.family_size == N - 1, "incidence_scan", report.failure,
    )


def _run_sec42(p: int, l: int, d: int) -> Verdict:
    mult = (p - 1) * p ** (d - 1)
    size = p**d - 1
    failures = {}
    checked = 0
    for a in range(1, l - d + 2):
        report = incidence_report(family_prime_power(p, l, d, a), mult, size)
        checked += 1
        if not report.ok:
            failures[str(a)] = report.failure
    return Verdict(
        "sec4.2", {"p": p, "l": l, "d": d}, checked,
        f"all layer indices a = 1..{l - d + 1} satisfy "
        f"(p^d-1)|F_a| = (p-1)p^(d-1)|L_[a,a+d-1]|",
        not failures, "incidence_scan", failures or None,
    )


def _run_lemma_st(d: int) -> Verdict:
    v = verify_s_t_lemma(d, d)
    return Verdict(
        "lemma-s_t", {"d": d}, v.checked, "0 achieved or at least t sums, all tuples",
        v.ok, "exhaustive_tuples", v.counterexample,
    )


def _run_cd(p: int) -> Verdict:
    v = cauchy_davenport_check(p)
    return Verdict(
        "cauchy-davenport", {"p": p}, v.checked, "|A+B| >= min(|A|+|B|-1, p)",
        v.ok, "exhaustive_pairs", v.counterexample,
    )


def _smallest_prime_factor(n: int) -> int:
    for q in range(2, n + 1):
        if n % q == 0:
            return q
    return n


CLAIMS: dict[str, ClaimSpec] = {
    "construction-sec2": ClaimSpec(
        "construction-sec2",
        "the residue-class construction has size (d-1)N/d and is d-cube-free",
        ("N", "d"),
        {"N": range(1, 61), "d": range(2, 6)},
        lambda N, d: N % d == 0,
        _run_construction,
    ),
    "thm5i": ClaimSpec(
        "thm5i",
        "3-cube-free maximum in Z_N is at most floor(2N/3), exactly 2N/3 when 3 | N",
        ("N",),
        {"N": range(1, 16)},
        lambda N: True,
        _run_thm5i,
    ),
    "thm8": ClaimSpec(
        "thm8",
        "{x,dx}-free maximum over [N] stays within 2 log2(N) + 2 of dN/(d+1)",
        ("N", "d"),
        {"N": (10, 100, 1000, 10**6), "d": range(2, 5)},
        lambda N, d: True,
        _run_thm8,
    ),
    "thm9": ClaimSpec(
        "thm9",
        "{x,dx}-free maximum over Z_N is at most kN/(k+1) with k = gcd(d, N)",
        ("N", "d"),
        {"N": range(1, 21), "d": range(2, 7)},
        lambda N, d: True,
        _run_thm9,
    ),
    "sec4.1": ClaimSpec(
        "sec4.1",
        "diagonal family: members of size d-1, uniform cover d-1, exact identity "
        "(needs d = smallest prime factor of N)",
        ("pairs",),
        {"pairs": ((25, 5), (49, 7), (35, 5))},
        lambda N, d: d >= 2 and _smallest_prime_factor(N) == d,
        _run_sec41,
    ),
    "sec4.2": ClaimSpec(
        "sec4.2",
        "prime-power family: members of size p^d - 1, uniform cover (p-1)p^(d-1) "
        "on d consecutive layers, exact identity",
        ("triples",),
        {"triples": ((2, 3, 2), (3, 3, 2), (2, 4, 2))},
        lambda p, l, d: _is_prime(p) and 1 <= d and l - d + 1 >= 1,
        _run_sec42,
    ),
    "lemma-s_t": ClaimSpec(
        "lemma-s_t",
        "nonzero coefficient tuples mod d: zero achieved or at least t subset sums",
        ("d",),
        {"d": range(2, 8)},
        lambda d: d >= 2,
        _run_lemma_st,
    ),
    "cauchy-davenport": ClaimSpec(
        "cauchy-davenport",
        "sumset growth over Z_p, all nonempty pairs exhaustively",
        ("p",),
        {"p": (2, 3, 5, 7)},
        lambda p: _is_prime(p),
        _run_cd,
    ),
}


def claim_points(claim: ClaimSpec, overrides: dict) -> list[dict]:
    """Expand CLI ranges (or defaults) into the applicable parameter points."""
    if claim.point_flags == ("pairs",):
        pairs = overrides.get("pairs") or claim.defaults["pairs"]
        return [{"N": a, "d": b} for a, b in pairs if claim.applies(a, b)]
    if claim.point_flags == ("triples",):
        triples = overrides.get("triples") or claim.defaults["triples"]
        return [{"p": a, "l": b, "d": c} for a, b, c in triples if claim.applies(a, b, c)]
    axes = []
    for name in claim.point_flags:
        axes.append([(name, v) for v in (overrides.get(name) or claim.defaults[name])])
    points = [{}]
    for axis in axes:
        points = [dict(pt, **{k: v}) for pt in points for k, v in axis]
    return [pt for pt in points if claim.applies(**pt)]


def run_claim_point(claim_id: str, point: dict) -> Verdict:
    """Top-level entry so worker pools can pickle it."""
    return CLAIMS[claim_id].run(**point)
