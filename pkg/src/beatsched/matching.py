"""Support sets of a binary matrix.

A support set is a set of 1-entries such that (1) every listed entry really
is a 1 (the all-zero matrix supports only the empty set), (2) every 1-entry
of the matrix shares its row or its column with some listed entry, and
(3) no two listed entries share a row and no two share a column. The size of
a maximum support set tells a pair scheduler how many beats can serve both
chains at once.

Why support sets are exactly the maximal matchings of the bipartite
row/column graph: condition (3) says the chosen entries form a matching.
Condition (2) says no 1-entry is free of them in both its row and column,
i.e. no edge could be added while keeping (3), which is precisely maximality.
Conversely a maximal matching satisfies (1) and (3) by construction and (2)
because an uncovered 1-entry would extend it. Hence a maximum support set is
a maximum matching, computed here by augmenting paths, and the brute-force
oracle (exhaustive search over entry subsets) must agree with it.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .errors import ConsistencyError, DomainError

__all__ = [
    "validate_support_set",
    "max_support_set",
    "brute_force_max_support",
]

Element = tuple[int, int]  # (row, col), 1-based

_BRUTE_FORCE_CELL_LIMIT = 30


def _normalize(matrix: Sequence[Sequence[int]]) -> list[list[int]]:
    rows = [list(r) for r in matrix]
    width = len(rows[0]) if rows else 0
    for r in rows:
        if len(r) != width:
            raise DomainError("matrix rows have unequal lengths")
        for v in r:
            if v not in (0, 1):
                raise DomainError(f"matrix entries must be 0 or 1, got {v!r}")
    return rows


def validate_support_set(
    matrix: Sequence[Sequence[int]], elements: Iterable[Element]
) -> tuple[bool, list[str]]:
    """Check the three support-set conditions; returns (ok, violations).

    Element positions are 1-based; out-of-range positions are a domain error,
    not a violation.
    """
    rows = _normalize(matrix)
    n, o = len(rows), len(rows[0]) if rows else 0
    chosen = sorted(set((int(r), int(c)) for r, c in elements))
    for r, c in chosen:
        if not (1 <= r <= n and 1 <= c <= o):
            raise DomainError(f"element ({r}, {c}) outside a {n}x{o} matrix")
    violations = []
    for r, c in chosen:
        if rows[r - 1][c - 1] != 1:
            violations.append(f"condition 1: element ({r}, {c}) is not a 1-entry")
    used_rows = set()
    used_cols = set()
    for r, c in chosen:
        if r in used_rows:
            violations.append(f"condition 3: row {r} used by more than one element")
        if c in used_cols:
            violations.append(f"condition 3: column {c} used by more than one element")
        used_rows.add(r)
        used_cols.add(c)
    for i in range(n):
        for j in range(o):
            if rows[i][j] == 1 and (i + 1) not in used_rows and (j + 1) not in used_cols:
                violations.append(
                    f"condition 2: 1-entry ({i + 1}, {j + 1}) shares no row or column "
                    "with any element"
                )
    return (not violations, violations)


def max_support_set(matrix: Sequence[Sequence[int]]) -> tuple[tuple[Element, ...], int]:
    """Maximum support set via augmenting paths, plus its size.

    Deterministic: rows are processed ascending and each search explores
    columns ascending, so equal inputs give identical witnesses.
    """
    rows = _normalize(matrix)
    n, o = len(rows), len(rows[0]) if rows else 0
    match_col: list[int | None] = [None] * o  # column -> matched row

    def augment(r: int, seen: set[int]) -> bool:
        for c in range(o):
            if rows[r][c] == 1 and c not in seen:
                seen.add(c)
                if match_col[c] is None or augment(match_col[c], seen):
                    match_col[c] = r
                    return True
        return False

    for r in range(n):
        augment(r, set())
    elems = sorted((match_col[c] + 1, c + 1) for c in range(o) if match_col[c] is not None)
    # Exchange pass: among matchings over the same rows and columns, pair
    # earlier rows with earlier columns whenever the four entries involved
    # allow it. Augmenting leaves displacement artifacts otherwise (the
    # all-ones matrix would come out anti-diagonal), and downstream joint
    # beats read better when both phase sequences ascend together.
    changed = True
    while changed:
        changed = False
        for a in range(len(elems)):
            r1, c1 = elems[a]
            for b in range(a + 1, len(elems)):
                r2, c2 = elems[b]
                if c1 > c2 and rows[r1 - 1][c2 - 1] == 1 and rows[r2 - 1][c1 - 1] == 1:
                    elems[a], elems[b] = (r1, c2), (r2, c1)
                    c1 = c2
                    changed = True
    elements = tuple(elems)
    ok, violations = validate_support_set(rows, elements)
    if not ok:
        raise ConsistencyError(f"matching produced an invalid support set: {violations}")
    return elements, len(elements)


def brute_force_max_support(matrix: Sequence[Sequence[int]]) -> int:
    """Maximum support size by exhaustive search, for cross-checking.

    Enumerates every row/column-disjoint subset of 1-entries (each row picks
    one column or none) and keeps the largest that validates. Guarded to
    matrices of at most 30 cells.
    """
    rows = _normalize(matrix)
    n, o = len(rows), len(rows[0]) if rows else 0
    if n * o > _BRUTE_FORCE_CELL_LIMIT:
        raise DomainError(f"brute force limited to {_BRUTE_FORCE_CELL_LIMIT} cells, got {n}x{o}")

    best = -1

    def recurse(r: int, used_cols: frozenset[int], chosen: list[Element]):
        nonlocal best
        # even taking one entry in every remaining row cannot beat the best
        if len(chosen) + (n - r) <= best:
            return
        if r == n:
            if len(chosen) > best and validate_support_set(rows, chosen)[0]:
                best = len(chosen)
            return
        for c in range(o):
            if rows[r][c] == 1 and c not in used_cols:
                chosen.append((r + 1, c + 1))
                recurse(r + 1, used_cols | {c}, chosen)
                chosen.pop()
        recurse(r + 1, used_cols, chosen)

    recurse(0, frozenset(), [])
    return max(best, 0)
