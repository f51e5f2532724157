"""Equivalence of maps under automorphisms of the integral projective line.

Two maps are equivalent when ``psi = sigma o phi o gamma`` for sigma, gamma in
PGL2(Z[1/S]).  Projectively such a matrix is a primitive integer matrix whose
determinant is, up to sign, a product of primes in S; for ``S = {}`` this is
PGL2(Z).

The search enumerates gamma up to an entry bound and solves for sigma
exactly: after substituting gamma, the pair ``(P, Q)`` spans a plane in the
space of degree-n forms, and sigma exists iff that plane equals the one
spanned by the target pair.
"""

from __future__ import annotations

import itertools
import os
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .forms import BinaryForm, Matrix2, apply_gl2, discriminant
from .rammap import DegenerateMapError, RationalMap, make_map, ram_profile
from .reduction import is_s_good


class NotAnAutomorphismError(ValueError):
    pass


class EnumerationLimitError(RuntimeError):
    """Raised when the candidate cap is hit; ``partial`` holds the report so far."""

    def __init__(self, message: str, partial: "EnumReport"):
        super().__init__(message)
        self.partial = partial


def strip_primes(n: int, S) -> int:
    n = abs(n)
    for p in S:
        while n and n % p == 0:
            n //= p
    return n


def is_automorphism(m: Matrix2, S=frozenset()) -> bool:
    """True if ``m`` is (projectively) in PGL2(Z[1/S])."""
    return m.det != 0 and strip_primes(m.det, S) == 1


def _check_automorphism(m: Matrix2, S) -> None:
    if not is_automorphism(m, S):
        kind = "unimodular" if not S else f"an S-unit determinant for S={sorted(S)}"
        raise NotAnAutomorphismError(f"{m.rows()} does not have {kind}")


def automorphisms(bound: int, S=frozenset()) -> list[Matrix2]:
    """Primitive integer automorphism matrices with entries in [-bound, bound], one per +-pair."""
    S = frozenset(S)
    r = range(-bound, bound + 1)
    out = []
    for a, b, c, d in itertools.product(r, repeat=4):
        m = Matrix2(a, b, c, d)
        if not is_automorphism(m, S) or m.primitive() != m:
            continue
        out.append(m)
    # identity first, then by size, for short witnesses
    out.sort(key=lambda m: (m != Matrix2.identity(), sum(map(abs, (m.a, m.b, m.c, m.d))), -m.a, -m.d, m.b, m.c))
    return out


def precompose(phi: RationalMap, gamma: Matrix2) -> tuple[BinaryForm, BinaryForm]:
    return apply_gl2(phi.P, gamma), apply_gl2(phi.Q, gamma)


def postcompose(P: BinaryForm, Q: BinaryForm, sigma: Matrix2) -> tuple[BinaryForm, BinaryForm]:
    return sigma.a * P + sigma.b * Q, sigma.c * P + sigma.d * Q


def apply_pair(phi: RationalMap, sigma: Matrix2, gamma: Matrix2, S=frozenset()) -> RationalMap:
    """``sigma o phi o gamma``, normalized."""
    _check_automorphism(sigma, S)
    _check_automorphism(gamma, S)
    return make_map(*postcompose(*precompose(phi, gamma), sigma))


@dataclass(frozen=True)
class EquivWitness:
    sigma: Matrix2
    gamma: Matrix2

    def verify(self, phi: RationalMap, psi: RationalMap, S=frozenset()) -> bool:
        return apply_pair(phi, self.sigma, self.gamma, S) == psi

    def then(self, other: "EquivWitness") -> "EquivWitness":
        """Witness for ``other`` applied after ``self``."""
        return EquivWitness(
            (other.sigma @ self.sigma).primitive(),
            (self.gamma @ other.gamma).primitive(),
        )

    def inverse(self) -> "EquivWitness":
        return EquivWitness(self.sigma.adjugate().primitive(), self.gamma.adjugate().primitive())


def span_key(P: BinaryForm, Q: BinaryForm) -> tuple:
    """Reduced row echelon form over Q of the 2 x (n+1) coefficient matrix."""
    rows = [[Fraction(c) for c in P.coeffs], [Fraction(c) for c in Q.coeffs]]
    width = len(rows[0])
    pivots = []
    r = 0
    for col in range(width):
        pivot = next((i for i in range(r, 2) if rows[i][col]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        lead = rows[r][col]
        rows[r] = [v / lead for v in rows[r]]
        other = 1 - r
        if rows[other][col]:
            k = rows[other][col]
            rows[other] = [a - k * b for a, b in zip(rows[other], rows[r])]
        pivots.append(col)
        r += 1
        if r == 2:
            break
    if r < 2:
        raise DegenerateMapError("P and Q are proportional")
    return tuple(tuple(row) for row in rows)


def solve_sigma(source: tuple[BinaryForm, BinaryForm], target: tuple[BinaryForm, BinaryForm]) -> Matrix2 | None:
    """Primitive integer sigma with ``sigma . source`` proportional to ``target``, if any."""
    (P1, Q1), (P2, Q2) = source, target
    cols = None
    for i, j in itertools.combinations(range(len(P1.coeffs)), 2):
        det = P1.coeffs[i] * Q1.coeffs[j] - P1.coeffs[j] * Q1.coeffs[i]
        if det:
            cols = (i, j, det)
            break
    if cols is None:
        return None
    i, j, det = cols
    # Solve [s t] [[P1_i, P1_j], [Q1_i, Q1_j]] = [T_i, T_j] for each target row T.
    entries = []
    for T in (P2, Q2):
        s = Fraction(T.coeffs[i] * Q1.coeffs[j] - T.coeffs[j] * Q1.coeffs[i], det)
        t = Fraction(P1.coeffs[i] * T.coeffs[j] - P1.coeffs[j] * T.coeffs[i], det)
        entries += [s, t]
    den = 1
    for e in entries:
        den = den * e.denominator // gcd(den, e.denominator)
    sigma = Matrix2(*(int(e * den) for e in entries))
    if sigma.det == 0:
        return None
    sigma = sigma.primitive()
    P3, Q3 = postcompose(P1, Q1, sigma)
    got, want = P3.coeffs + Q3.coeffs, P2.coeffs + Q2.coeffs
    a, b = next((x, y) for x, y in zip(got, want) if y)
    if any(x * b != y * a for x, y in zip(got, want)):
        return None
    return sigma


def invariants(phi: RationalMap, S=frozenset()) -> tuple:
    """Quantities preserved by the equivalence; unequal invariants rule it out."""
    prof = ram_profile(phi)

    def disc(F):
        return strip_primes(discriminant(F), S) if F.degree >= 2 else 1

    return (
        phi.degree,
        prof.support_count,
        prof.value_count,
        prof.multiplicity_partition,
        disc(prof.critical_point_form),
        disc(prof.critical_value_form),
    )


def are_equivalent_bounded(
    phi: RationalMap, psi: RationalMap, bound: int, S=frozenset(), prune: bool = True
) -> EquivWitness | None:
    """Search for ``psi = sigma o phi o gamma`` with gamma's entries bounded by ``bound``.

    Returns a verified witness, or None when nothing is found; None does not
    prove inequivalence.
    """
    S = frozenset(S)
    if phi.degree != psi.degree:
        return None
    if phi.degree >= 2 and prune and invariants(phi, S) != invariants(psi, S):
        return None
    target = (psi.P, psi.Q)
    target_key = span_key(*target)
    for gamma in automorphisms(bound, S):
        source = precompose(phi, gamma)
        if span_key(*source) != target_key:
            continue
        sigma = solve_sigma(source, target)
        if sigma is None or not is_automorphism(sigma, S):
            continue
        w = EquivWitness(sigma, gamma)
        assert w.verify(phi, psi, S)
        return w
    return None


def brute_force_equivalent(phi: RationalMap, psi: RationalMap, bound: int, S=frozenset()) -> EquivWitness | None:
    """Exhaustive search over both sigma and gamma in the bounded box; no pruning."""
    autos = automorphisms(bound, S)
    for gamma in autos:
        P, Q = precompose(phi, gamma)
        for sigma in autos:
            try:
                if make_map(*postcompose(P, Q, sigma)) == psi:
                    return EquivWitness(sigma, gamma)
            except DegenerateMapError:
                continue
    return None


# ---------------------------------------------------------------------------
# enumeration


def _is_normalized(vec: tuple[int, ...], n: int) -> bool:
    first = next((a for a in vec[: n + 1] if a), 0)
    if first <= 0 or not any(vec[n + 1 :]):
        return False
    g = 0
    for a in vec:
        g = gcd(g, a)
    return g == 1


def _classify(vec: tuple[int, ...], n: int, S: frozenset) -> str:
    """'ok' or the reason the candidate is skipped."""
    try:
        phi = make_map(BinaryForm(vec[: n + 1]), BinaryForm(vec[n + 1 :]))
    except DegenerateMapError:
        return "degenerate"
    prof = ram_profile(phi)
    if prof.support_count < 3:
        return "two_point_ramification"
    if not (is_s_good(prof.critical_point_form, S) and is_s_good(prof.critical_value_form, S)):
        return "cgr_bad_outside_S"
    return "ok"


def _scan_block(args) -> tuple[list[tuple[int, ...]], dict[str, int]]:
    n, H, S, head = args
    r = range(-H, H + 1)
    kept, skipped = [], defaultdict(int)
    for tail in itertools.product(r, repeat=n + 1):
        vec = head + tail
        if not _is_normalized(vec, n):
            continue
        verdict = _classify(vec, n, S)
        if verdict == "ok":
            kept.append(vec)
        else:
            skipped[verdict] += 1
    return kept, dict(skipped)


@dataclass
class EquivClass:
    representative: RationalMap
    members: list[RationalMap]
    witnesses: list[EquivWitness]  # members[i] = apply_pair(representative, *witnesses[i])


@dataclass
class EnumReport:
    degree: int
    height: int
    S: frozenset[int]
    bound: int
    survivors: list[RationalMap]
    classes: list[EquivClass]
    skipped: dict[str, int] = field(default_factory=dict)
    candidates: int = 0
    complete: bool = True
    note: str = "bounded search: class_count is an upper bound on the true number of classes"

    @property
    def class_count(self) -> int:
        return len(self.classes)

    def witness_between(self, i: int, j: int) -> EquivWitness | None:
        """Witness taking survivor i to survivor j, if they share a class."""
        index = {}
        for c in self.classes:
            for m, w in zip(c.members, c.witnesses):
                index[m] = (id(c), w)
        ci, wi = index[self.survivors[i]]
        cj, wj = index[self.survivors[j]]
        if ci != cj:
            return None
        return wi.inverse().then(wj)

    def to_dict(self) -> dict:
        def m2(m: Matrix2):
            return m.rows()

        return {
            "degree": self.degree,
            "height": self.height,
            "S": sorted(self.S),
            "bound": self.bound,
            "candidates": self.candidates,
            "skipped": dict(sorted(self.skipped.items())),
            "survivor_count": len(self.survivors),
            "class_count": self.class_count,
            "complete": self.complete,
            "note": self.note,
            "classes": [
                {
                    "representative": {"P": list(c.representative.P.coeffs), "Q": list(c.representative.Q.coeffs)},
                    "members": [
                        {"P": list(m.P.coeffs), "Q": list(m.Q.coeffs), "sigma": m2(w.sigma), "gamma": m2(w.gamma)}
                        for m, w in zip(c.members, c.witnesses)
                    ],
                }
                for c in self.classes
            ],
        }


def _find(parent: list[int], i: int) -> int:
    while parent[i] != i:
        parent[i] = parent[parent[i]]
        i = parent[i]
    return i


def cluster(maps: list[RationalMap], bound: int, S=frozenset()) -> list[EquivClass]:
    """Union-find clustering of ``maps`` (sorted) by bounded equivalence search."""
    S = frozenset(S)
    by_span = defaultdict(list)
    for i, phi in enumerate(maps):
        by_span[span_key(phi.P, phi.Q)].append(i)
    parent = list(range(len(maps)))
    edges = defaultdict(list)
    autos = automorphisms(bound, S)
    for i, phi in enumerate(maps):
        for gamma in autos:
            source = precompose(phi, gamma)
            for j in by_span.get(span_key(*source), ()):
                if j == i or _find(parent, i) == _find(parent, j):
                    continue
                sigma = solve_sigma(source, (maps[j].P, maps[j].Q))
                if sigma is None or not is_automorphism(sigma, S):
                    continue
                w = EquivWitness(sigma, gamma)
                edges[i].append((j, w))
                edges[j].append((i, w.inverse()))
                ri, rj = _find(parent, i), _find(parent, j)
                parent[max(ri, rj)] = min(ri, rj)

    groups = defaultdict(list)
    for i in range(len(maps)):
        groups[_find(parent, i)].append(i)
    classes = []
    for root in sorted(groups):
        # root is the smallest index, i.e. the lexicographically least vector
        found = {root: EquivWitness(Matrix2.identity(), Matrix2.identity())}
        queue = [root]
        while queue:
            i = queue.pop(0)
            for j, w in edges[i]:
                if j not in found:
                    found[j] = found[i].then(w)
                    queue.append(j)
        members = sorted(groups[root])
        for k in members:
            assert found[k].verify(maps[root], maps[k], S)
        classes.append(EquivClass(maps[root], [maps[k] for k in members], [found[k] for k in members]))
    return classes


def enumerate_cgr_maps(
    n: int,
    H: int,
    S=frozenset(),
    bound: int = 1,
    threads: int = 1,
    max_candidates: int | None = None,
) -> EnumReport:
    """All degree-n maps with coefficients in [-H, H] that ramify at >= 3 points
    and have critically good reduction outside S, grouped into classes."""
    if n < 1:
        raise ValueError("degree must be positive")
    S = frozenset(S)
    r = range(-H, H + 1)
    heads = list(itertools.product(r, repeat=n + 1))
    total = (2 * H + 1) ** (2 * n + 2)
    truncated = False
    if max_candidates is not None and total > max_candidates:
        keep = max(max_candidates // (2 * H + 1) ** (n + 1), 0)
        heads = heads[:keep]
        truncated = True
    jobs = [(n, H, S, head) for head in heads]
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(_scan_block, jobs, chunksize=max(1, len(jobs) // (8 * threads))))
    else:
        results = [_scan_block(job) for job in jobs]

    vecs, skipped = [], defaultdict(int)
    for kept, sk in results:
        vecs += kept
        for k, v in sk.items():
            skipped[k] += v
    vecs.sort()
    survivors = [RationalMap(BinaryForm(v[: n + 1]), BinaryForm(v[n + 1 :])) for v in vecs]
    report = EnumReport(
        degree=n,
        height=H,
        S=S,
        bound=bound,
        survivors=survivors,
        classes=cluster(survivors, bound, S),
        skipped=dict(skipped),
        candidates=len(heads) * (2 * H + 1) ** (n + 1),
        complete=not truncated,
    )
    if truncated:
        raise EnumerationLimitError(f"candidate cap {max_candidates} reached of {total}", report)
    return report


def default_threads() -> int:
    return min(4, os.cpu_count() or 1)
