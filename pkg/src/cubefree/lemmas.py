"""Sumset arithmetic, exhaustive small-group verifiers, and the
double-counting families behind the density bounds.

The subset-sum profile S_t of nonzero coefficients a_1..a_t mod d collects
every nonempty {0,1}-combination; the key fact checked here exhaustively is
that 0 not in S_t forces |S_t| >= t, and its t = d corollary: any d nonzero
residues mod d admit a nonempty zero-sum subset (which is exactly why the
residue construction is cube-free).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .ambient import Ambient, DenseSet
from .constructions import _is_prime, layers_prime_power


@dataclass(frozen=True)
class CheckVerdict:
    """Outcome of an exhaustive verifier: pass/fail plus the work done."""

    ok: bool
    checked: int
    counterexample: Optional[dict] = None


def sumset(a: DenseSet, b: DenseSet) -> DenseSet:
    """A + B inside a shared cyclic universe."""
    if a.ambient != b.ambient:
        raise ValueError("sumset requires matching moduli")
    if not a.ambient.is_cyclic:
        raise ValueError("sumset is defined over the cyclic universe")
    n = a.ambient.order
    full = a.ambient.full_mask()
    out = 0
    for x in a:
        out |= ((b.mask << x) | (b.mask >> (n - x))) & full if x else b.mask
    return DenseSet(a.ambient, out)


def cauchy_davenport_check(p: int, exhaustive_bound: int = 7) -> CheckVerdict:
    """Check |A+B| >= min(|A|+|B|-1, p) over every nonempty pair in Z_p.

    Exhaustive, so p is capped (the pair count is (2^p - 1)^2); composite p is
    rejected because the inequality needs a prime modulus.
    """
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p > exhaustive_bound:
        raise ValueError(f"p={p} exceeds the exhaustive bound {exhaustive_bound}")
    amb = Ambient.cyclic(p)
    full = amb.full_mask()
    checked = 0
    for am in range(1, full + 1):
        a = DenseSet(amb, am)
        ka = len(a)
        for bm in range(1, full + 1):
            b = DenseSet(amb, bm)
            checked += 1
            got = len(sumset(a, b))
            want = min(ka + len(b) - 1, p)
            if got < want:
                return CheckVerdict(
                    False, checked,
                    {"p": p, "A": a.elements(), "B": b.elements(),
                     "sumset_size": got, "required": want},
                )
    return CheckVerdict(True, checked)


@dataclass(frozen=True)
class SubsetSumProfile:
    """Achieved nonempty {0,1}-combinations of the coefficients, mod d."""

    modulus: int
    coefficients: tuple[int, ...]
    achieved: DenseSet


def s_t_set(coefficients: Sequence[int], d: int) -> SubsetSumProfile:
    """Achieved set by incremental doubling: P -> P | (P + a) | {a}."""
    if d < 2:
        raise ValueError("modulus must be at least 2")
    if len(coefficients) > d:
        raise ValueError("at most d coefficients are allowed")
    full = (1 << d) - 1
    sums = 0
    for a in coefficients:
        if a % d == 0:
            raise ValueError("coefficients must be nonzero mod d")
        a %= d
        sums = sums | (((sums << a) | (sums >> (d - a))) & full) | (1 << a)
    return SubsetSumProfile(
        d, tuple(x % d for x in coefficients), DenseSet(Ambient.cyclic(d), sums)
    )


def verify_s_t_lemma(d: int, t_max: int) -> CheckVerdict:
    """For every coefficient tuple with t <= t_max entries from 1..d-1:
    either 0 is achieved or at least t values are."""
    if d < 2:
        raise ValueError("modulus must be at least 2")
    if t_max > d:
        raise ValueError("t_max may not exceed d")
    full = (1 << d) - 1
    checked = 0

    def extend(sums: int, t: int) -> Optional[dict]:
        nonlocal checked
        if t == t_max:
            return None
        for a in range(1, d):
            nsums = sums | (((sums << a) | (sums >> (d - a))) & full) | (1 << a)
            checked += 1
            if not nsums & 1 and nsums.bit_count() < t + 1:
                return {"d": d, "t": t + 1, "achieved": _bits(nsums)}
            bad = extend(nsums, t + 1)
            if bad is not None:
                bad.setdefault("prefix", []).insert(0, a)
                return bad
        return None

    bad = extend(0, 0)
    return CheckVerdict(bad is None, checked, bad)


def _bits(mask: int) -> list[int]:
    return [i for i in range(mask.bit_length()) if mask >> i & 1]


def zero_subset_sum(residues: Sequence[int], d: int) -> tuple[int, ...]:
    """A nonempty 1-based index subset of d nonzero residues summing to 0 mod d.

    Existence is guaranteed (the t = d case of the subset-sum lemma; prefix
    sums already force a zero-sum run).  The lexicographically smallest index
    tuple is returned.
    """
    if len(residues) != d:
        raise ValueError(f"exactly {d} residues are required")
    if any(r % d == 0 for r in residues):
        raise ValueError("residues must be nonzero mod d")

    def extend(start: int, chosen: list[int], total: int) -> Optional[tuple[int, ...]]:
        for i in range(start, d):
            chosen.append(i)
            t = (total + residues[i]) % d
            if chosen and t == 0:
                return tuple(j + 1 for j in chosen)
            hit = extend(i + 1, chosen, t)
            if hit is not None:
                return hit
            chosen.pop()
        return None

    hit = extend(0, [], 0)
    if hit is None:  # unreachable for valid input
        raise RuntimeError("no zero-sum subset found; input violated the contract")
    return hit


@dataclass(frozen=True)
class IndexedFamily:
    """A family of member sets counted with index multiplicity.

    Distinct indices may repeat the same member set; all counting here is per
    index, which is what makes the cover identities exact equalities.
    ``support`` is the region the members are claimed to cover.
    """

    family_id: str
    ambient: Ambient
    members: tuple[tuple[int, DenseSet], ...]
    support: DenseSet

    @property
    def size(self) -> int:
        return len(self.members)


def family_diagonal(n: int, d: int) -> IndexedFamily:
    """Members {x, 2x, ..., (d-1)x} indexed by the nonzero x of Z_n."""
    if d < 2:
        raise ValueError("d must be at least 2")
    amb = Ambient.cyclic(n)
    members = []
    for x in range(1, n):
        members.append(
            (x, DenseSet.from_iterable(amb, {(t * x) % n for t in range(1, d)}))
        )
    support = DenseSet(amb, amb.full_mask() & ~1)
    return IndexedFamily(f"diagonal(N={n},d={d})", amb, tuple(members), support)


def family_prime_power(p: int, l: int, d: int, a: int) -> IndexedFamily:
    """Members {x, 2x, ..., (p^d - 1)x} indexed by layer a of Z_{p^l}.

    Claimed to cover exactly layers a..a+d-1, each element of that range
    appearing (p-1)p^(d-1) times.
    """
    if a < 1 or a > l - d + 1:
        raise ValueError(f"layer index a={a} must satisfy 1 <= a <= l - d + 1")
    layers = layers_prime_power(p, l)
    n = p**l
    amb = layers.layers[0].ambient
    top = p**d - 1
    members = []
    for x in layers.layer(a):
        members.append(
            (x, DenseSet.from_iterable(amb, {(t * x) % n for t in range(1, top + 1)}))
        )
    support = layers.layer_range(a, a + d - 1)
    return IndexedFamily(
        f"prime-power(p={p},l={l},d={d},a={a})", amb, tuple(members), support
    )


@dataclass(frozen=True)
class IncidenceReport:
    """Cover multiplicities of an indexed family plus the counting identity.

    The identity cross-checked is
    expected_set_size * |family| == expected_multiplicity * |support|,
    with both sides also recomputed from the actual incidences.
    """

    family_id: str
    family_size: int
    multiplicity: dict[int, int]
    identity_lhs: int
    identity_rhs: int
    ok: bool
    failure: Optional[dict] = None

    def as_json_dict(self) -> dict:
        return {
            "family": self.family_id,
            "size": self.family_size,
            "multiplicity_histogram": _histogram(self.multiplicity),
            "identity": {"lhs": self.identity_lhs, "rhs": self.identity_rhs},
            "ok": self.ok,
            "failure": self.failure,
        }


def _histogram(mult: dict[int, int]) -> dict[str, int]:
    hist: dict[str, int] = {}
    for v in mult.values():
        hist[str(v)] = hist.get(str(v), 0) + 1
    return hist


def incidence_report(
    family: IndexedFamily, expected_multiplicity: int, expected_set_size: int
) -> IncidenceReport:
    """Count per-element cover multiplicities and check the identity.

    Fails (with the offending element or index) when a member has the wrong
    size, an element outside the support is covered, a support element has the
    wrong multiplicity, or the two sides of the identity disagree.
    """
    mult: dict[int, int] = {}
    total = 0
    failure = None
    for idx, member in family.members:
        size = len(member)
        total += size
        if failure is None and size != expected_set_size:
            failure = {"index": idx, "member_size": size, "expected": expected_set_size}
        for e in member:
            mult[e] = mult.get(e, 0) + 1
    lhs = expected_set_size * family.size
    rhs = expected_multiplicity * len(family.support)
    if failure is None:
        for e, m in sorted(mult.items()):
            if e not in family.support:
                failure = {"element": e, "covered_outside_support": m}
                break
            if m != expected_multiplicity:
                failure = {"element": e, "multiplicity": m,
                           "expected": expected_multiplicity}
                break
    if failure is None:
        for e in family.support:
            if e not in mult:
                failure = {"element": e, "multiplicity": 0,
                           "expected": expected_multiplicity}
                break
    if failure is None and total != sum(mult.values()):
        failure = {"incidence_total": total, "multiplicity_total": sum(mult.values())}
    if failure is None and lhs != rhs:
        failure = {"identity_lhs": lhs, "identity_rhs": rhs}
    return IncidenceReport(
        family.family_id, family.size, mult, lhs, rhs, failure is None, failure
    )
