"""Projections of 3x3 matrices over prime fields.

A projection is a symmetric idempotent matrix; over F_p the full family is
found by brute force over all p^6 symmetric matrices (numpy-vectorized).
The family forms a partial Boolean algebra under commutativity, with
complement I - e, meet ef and join e + f - ef on commuting pairs.  A
Kochen-Specker coloring of the algebra is a two-valued homomorphism; its
existence is decided by encoding the pairwise meet/join/complement laws as
clauses and running the DPLL engine.

Integer vectors with p not dividing their norm reduce to rank-1
projections q(v)^-1 v v^T mod p, and colorability of such a rank-1 family
is decided with the same pair/triple engine used for orthogonality graphs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .solver import SolveResult, SolveStats, _Search, solve_cnf
from .vectors import Vec3, VectorSet, norm_sq

ENUMERATION_GUARD = 101

Mat = tuple[int, int, int, int, int, int, int, int, int]  # row-major

ZERO: Mat = (0, 0, 0, 0, 0, 0, 0, 0, 0)
IDENTITY: Mat = (1, 0, 0, 0, 1, 0, 0, 0, 1)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def mat_mul(a: Mat, b: Mat, p: int) -> Mat:
    return tuple(
        sum(a[3 * i + k] * b[3 * k + j] for k in range(3)) % p
        for i in range(3)
        for j in range(3)
    )


def mat_add(a: Mat, b: Mat, p: int) -> Mat:
    return tuple((x + y) % p for x, y in zip(a, b))


def mat_sub(a: Mat, b: Mat, p: int) -> Mat:
    return tuple((x - y) % p for x, y in zip(a, b))


def mat_rank(a: Mat, p: int) -> int:
    rows = [list(a[0:3]), list(a[3:6]), list(a[6:9])]
    rank = 0
    col = 0
    while col < 3 and rank < 3:
        pivot = next((r for r in range(rank, 3) if rows[r][col] % p != 0), None)
        if pivot is None:
            col += 1
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = pow(rows[rank][col], -1, p)
        rows[rank] = [(x * inv) % p for x in rows[rank]]
        for r in range(3):
            if r != rank and rows[r][col] % p != 0:
                factor = rows[r][col]
                rows[r] = [(x - factor * y) % p for x, y in zip(rows[r], rows[rank])]
        rank += 1
        col += 1
    return rank


def is_projection(a: Mat, p: int) -> bool:
    symmetric = a[1] == a[3] and a[2] == a[6] and a[5] == a[7]
    return symmetric and mat_mul(a, a, p) == a


@dataclass(frozen=True)
class ProjAlgebra:
    p: int
    projections: tuple[Mat, ...]  # sorted row-major
    zero_index: int
    identity_index: int

    def __len__(self) -> int:
        return len(self.projections)

    def index_of(self, m: Mat) -> int:
        return self.projections.index(m)

    def complement(self, i: int) -> int:
        return self.index_of(mat_sub(IDENTITY, self.projections[i], self.p))

    def commute(self, i: int, j: int) -> bool:
        a, b = self.projections[i], self.projections[j]
        return mat_mul(a, b, self.p) == mat_mul(b, a, self.p)

    def rank_counts(self) -> dict[int, int]:
        counts: dict[int, int] = {}
        for m in self.projections:
            r = mat_rank(m, self.p)
            counts[r] = counts.get(r, 0) + 1
        return counts


def enumerate_projections(p: int) -> ProjAlgebra:
    """All symmetric idempotent 3x3 matrices over F_p, by exhaustive scan."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p > ENUMERATION_GUARD:
        raise ValueError(f"enumeration refused beyond p = {ENUMERATION_GUARD}")
    # Free entries of a symmetric matrix: diagonal (a, b, c), off-diagonal
    # (d, e, f) = (m01, m02, m12).  The inner three are vectorized.
    grid = np.indices((p, p, p), dtype=np.int64).reshape(3, -1)
    d, e, f = grid[0], grid[1], grid[2]
    found: list[Mat] = []
    for a in range(p):
        for b in range(p):
            for c in range(p):
                mask = (
                    ((a * a + d * d + e * e - a) % p == 0)
                    & ((a * d + d * b + e * f - d) % p == 0)
                    & ((a * e + d * f + e * c - e) % p == 0)
                    & ((d * d + b * b + f * f - b) % p == 0)
                    & ((d * e + b * f + f * c - f) % p == 0)
                    & ((e * e + f * f + c * c - c) % p == 0)
                )
                for di, ei, fi in zip(d[mask], e[mask], f[mask]):
                    found.append(
                        (a, int(di), int(ei), int(di), b, int(fi), int(ei), int(fi), c)
                    )
    projections = tuple(sorted(found))
    return ProjAlgebra(
        p=p,
        projections=projections,
        zero_index=projections.index(ZERO),
        identity_index=projections.index(IDENTITY),
    )


def search_ba_coloring(algebra: ProjAlgebra) -> SolveResult:
    """Two-valued homomorphism search on the partial Boolean algebra.

    Constraints: 0 -> 0, I -> 1, and for every commuting pair the meet maps
    to the product and the join to the Boolean sum of the images (which
    subsumes the complement law via the pair (e, I - e)).
    """
    p = algebra.p
    projs = algebra.projections
    index = {m: i for i, m in enumerate(projs)}
    n = len(projs)
    clauses: set[tuple[int, ...]] = set()
    clauses.add((-(algebra.zero_index + 1),))
    clauses.add((algebra.identity_index + 1,))
    for i in range(n):
        for j in range(i + 1, n):
            a, b = projs[i], projs[j]
            ab = mat_mul(a, b, p)
            if ab != mat_mul(b, a, p):
                continue
            vi, vj = i + 1, j + 1
            vg = index[ab] + 1
            vh = index[mat_sub(mat_add(a, b, p), ab, p)] + 1
            clauses.add(tuple(sorted((-vg, vi))))
            clauses.add(tuple(sorted((-vg, vj))))
            clauses.add(tuple(sorted((vg, -vi, -vj))))
            clauses.add(tuple(sorted((vh, -vi))))
            clauses.add(tuple(sorted((vh, -vj))))
            clauses.add(tuple(sorted((-vh, vi, vj))))
    model = solve_cnf(n, sorted(clauses))
    stats = SolveStats()
    if model is None:
        return SolveResult(False, None, stats)
    return SolveResult(True, model, stats)


def project_mod_p(v: Vec3, p: int) -> Mat:
    """Rank-1 projection q(v)^-1 v v^T reduced mod p."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    q = norm_sq(v) % p
    if q == 0:
        raise ValueError(f"{p} divides the norm of {v}; projection has no mod-{p} image")
    scale = pow(q, -1, p)
    return tuple((scale * v[i] * v[j]) % p for i in range(3) for j in range(3))


@dataclass(frozen=True)
class ReducedSet:
    p: int
    projections: tuple[Mat, ...]  # distinct, sorted
    collided: bool  # two distinct vectors shared an image


def reduce_set_mod_p(s: VectorSet, p: int) -> ReducedSet:
    images = []
    for v in s:
        if norm_sq(v) % p == 0:
            raise ValueError(f"{p} divides the norm of {v}")
        images.append(project_mod_p(v, p))
    distinct = tuple(sorted(set(images)))
    return ReducedSet(p=p, projections=distinct, collided=len(distinct) < len(images))


def restricted_ks_search(projs: Sequence[Mat], p: Optional[int] = None) -> SolveResult:
    """Colorability of a rank-1 projection family over one prime.

    Orthogonal pairs (ef = 0) allow at most one 1; triples with pairwise
    zero products summing to I demand exactly one 1.
    """
    projs = list(projs)
    if projs and p is None:
        raise ValueError("prime p required")
    if not projs:
        return SolveResult(True, (), SolveStats())
    for m in projs:
        if not is_projection(m, p) or mat_rank(m, p) != 1:
            raise ValueError(f"not a rank-1 projection mod {p}: {m}")
    n = len(projs)
    edges = []
    orth = [set() for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if mat_mul(projs[i], projs[j], p) == ZERO:
                edges.append((i, j))
                orth[i].add(j)
                orth[j].add(i)
    triples = []
    for i, j in edges:
        for k in sorted(orth[i] & orth[j]):
            if k > j:
                total = mat_add(mat_add(projs[i], projs[j], p), projs[k], p)
                if total == IDENTITY:
                    triples.append((i, j, k))
    search = _Search(n, edges, triples)
    return search.run()


def bezout_check(sample_primes: Sequence[int] = (5, 13, 17, 19, 23)) -> bool:
    """31 * 5 - 2 * 77 = 1, also as scalar matrices over sample F_p."""
    if 31 * 5 - 2 * 77 != 1:
        return False
    for p in sample_primes:
        if p in (2, 3, 7, 11) or not is_prime(p):
            raise ValueError(f"sample primes must be primes outside {{2,3,7,11}}: {p}")
        five_i = tuple((5 * e) % p for e in IDENTITY)
        seventyseven_i = tuple((77 * e) % p for e in IDENTITY)
        combo = mat_sub(
            tuple((31 * e) % p for e in five_i),
            tuple((2 * e) % p for e in seventyseven_i),
            p,
        )
        if combo != tuple(e % p for e in IDENTITY):
            return False
    return True


# ---------------------------------------------------------------------------
# Projection list file: header "p <prime>", one matrix per line row-major.


def format_projections(p: int, projs: Sequence[Mat]) -> str:
    lines = [f"p {p}"]
    for m in projs:
        lines.append(" ".join(str(e) for e in m))
    return "\n".join(lines) + "\n"


def parse_projections(text: str) -> tuple[int, tuple[Mat, ...]]:
    p = None
    mats = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if p is None:
            if len(parts) != 2 or parts[0] != "p":
                raise ValueError(f"line {lineno}: expected header 'p <prime>'")
            p = int(parts[1])
            continue
        if len(parts) != 9:
            raise ValueError(f"line {lineno}: expected nine integers")
        mats.append(tuple(int(x) for x in parts))
    if p is None:
        raise ValueError("missing 'p <prime>' header")
    return p, tuple(mats)
