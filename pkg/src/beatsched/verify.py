"""Property suite: randomized and exhaustive checks of the core claims.

Everything here is driven by one explicit seed so the whole suite is
reproducible beat for beat. The checks mirror the acceptance criteria:
each one builds its own corpus, exercises the public modules, and
returns a small result record with a pass flag, a human-readable
summary, and the elapsed time.

The corpus generators double as general-purpose scenario factories:
random chains on a line for the single-path claims, random parallel or
crossing chain pairs in the plane for the joint claims, and raw binary
matrices for the matching claims.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass
from fractions import Fraction
from random import Random
from typing import Callable, Iterable, Sequence

from .analysis import interference_intensity
from .errors import DomainError
from .matching import brute_force_max_support, max_support_set, validate_support_set
from .model import (
    GeometricTopology,
    InterferenceRelation,
    NodeRef,
    PathPair,
    PrimaryPath,
    derive_relation,
)
from .periods import build_matrix, continuation, intrinsic_period, is_reachable_period
from .scheduler import (
    audit_schedule,
    predicted_throughput,
    schedule_pair_equal,
    schedule_pair_unequal,
    schedule_primary,
)
from .simulator import measure_delay, run

DEFAULT_SEED = 42

__all__ = [
    "DEFAULT_SEED",
    "CriterionResult",
    "random_line_scenario",
    "random_pair_scenario",
    "random_binary_matrix",
    "pair_from_joint_matrix",
    "line_corpus",
    "pair_corpus",
    "run_criteria",
    "CRITERIA",
]


# ---------------------------------------------------------------- corpora


def random_line_scenario(rng: Random, max_senders: int = 12) -> PathPair:
    """One chain on a line: random sender count, gaps, and disk radius."""
    n = rng.randint(1, max_senders)
    x = 0.0
    positions: dict[tuple[int, int], tuple[float, float]] = {}
    for seq in range(1, n + 2):
        positions[(1, seq)] = (x, 0.0)
        x += rng.uniform(0.6, 1.6)
    topology = GeometricTopology(positions, interference_radius=rng.uniform(0.2, 3.2))
    path = PrimaryPath(id=1, n_senders=n)
    skeleton = PathPair(path1=path, path2=None, relation=InterferenceRelation())
    return PathPair(path1=path, path2=None, relation=derive_relation(topology, skeleton))


def random_pair_scenario(rng: Random, max_total: int = 16) -> PathPair:
    """Two chains in the plane, parallel or crossing, under one disk radius."""
    n1 = rng.randint(1, min(8, max_total - 1))
    n2 = rng.randint(1, min(8, max_total - n1))
    positions: dict[tuple[int, int], tuple[float, float]] = {}
    x = 0.0
    for seq in range(1, n1 + 2):
        positions[(1, seq)] = (x, 0.0)
        x += rng.uniform(0.6, 1.6)
    span1 = x
    if rng.random() < 0.5:
        # parallel chain at a random vertical offset
        dx, dy = 1.0, 0.0
        start = (rng.uniform(-2.0, 2.0), rng.uniform(0.3, 3.0))
    else:
        # chain crossing path 1 somewhere near its middle
        angle = rng.uniform(0.35, 1.55)
        dx, dy = math.cos(angle), math.sin(angle)
        reach = (n2 + 1) / 2
        cx = rng.uniform(0.2, max(span1 - 0.2, 0.4))
        start = (cx - reach * dx, -reach * dy)
    px, py = start
    for seq in range(1, n2 + 2):
        positions[(2, seq)] = (px, py)
        step = rng.uniform(0.6, 1.6)
        px += step * dx
        py += step * dy
    topology = GeometricTopology(positions, interference_radius=rng.uniform(0.2, 2.2))
    path1 = PrimaryPath(id=1, n_senders=n1)
    path2 = PrimaryPath(id=2, n_senders=n2)
    skeleton = PathPair(path1=path1, path2=path2, relation=InterferenceRelation())
    return PathPair(
        path1=path1, path2=path2, relation=derive_relation(topology, skeleton)
    )


def random_binary_matrix(
    rng: Random, max_rows: int = 5, max_cols: int = 6
) -> list[list[int]]:
    rows = rng.randint(1, max_rows)
    cols = rng.randint(1, max_cols)
    density = rng.uniform(0.1, 0.95)
    return [
        [1 if rng.random() < density else 0 for _ in range(cols)]
        for _ in range(rows)
    ]


def pair_from_joint_matrix(c_rows: Sequence[Sequence[int]]) -> PathPair:
    """Realize an arbitrary joint concurrency matrix with concrete chains.

    Each path gets one sender per phase and full internal interference,
    so the phase subsets are singletons and the joint matrix of the
    returned pair (at spacings = chain lengths) is exactly `c_rows`:
    cross pairs interfere wherever the requested entry is 0.
    """
    n1, n2 = len(c_rows), len(c_rows[0])
    pairs: list[tuple[NodeRef, NodeRef]] = []
    for a, b in itertools.combinations(range(1, n1 + 1), 2):
        pairs.append((NodeRef(1, a), NodeRef(1, b)))
    for a, b in itertools.combinations(range(1, n2 + 1), 2):
        pairs.append((NodeRef(2, a), NodeRef(2, b)))
    for i in range(n1):
        if len(c_rows[i]) != n2:
            raise DomainError("joint matrix rows must have equal length")
        for j in range(n2):
            if not c_rows[i][j]:
                pairs.append((NodeRef(1, i + 1), NodeRef(2, j + 1)))
    return PathPair(
        path1=PrimaryPath(id=1, n_senders=n1),
        path2=PrimaryPath(id=2, n_senders=n2),
        relation=InterferenceRelation(pairs),
    )


def line_corpus(seed: int, instances: int) -> list[PathPair]:
    rng = Random(seed)
    return [random_line_scenario(rng) for _ in range(instances)]


@dataclass(frozen=True)
class PairCase:
    """One randomized joint scenario with its chosen spacings and counts."""

    pair: PathPair
    period1: int
    period2: int
    traversals_equal: int
    traversals1: int
    traversals2: int


def pair_corpus(seed: int, instances: int) -> list[PairCase]:
    rng = Random(seed + 1)
    cases = []
    for _ in range(instances):
        pair = random_pair_scenario(rng)
        t1_base = intrinsic_period(pair, 1)
        t2_base = intrinsic_period(pair, 2)
        period1 = rng.randint(t1_base, pair.path(1).n_senders)
        period2 = rng.randint(t2_base, pair.path(2).n_senders)
        cases.append(
            PairCase(
                pair=pair,
                period1=period1,
                period2=period2,
                traversals_equal=rng.randint(1, 3),
                traversals1=rng.randint(1, 3),
                traversals2=rng.randint(1, 3),
            )
        )
    return cases


# ---------------------------------------------------------------- results


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    details: str
    seconds: float

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status}  criterion {self.number:2d}  {self.title} ({self.details}, {self.seconds:.2f}s)"


def _timed(
    number: int, title: str, body: Callable[[], tuple[bool, str]]
) -> CriterionResult:
    started = time.perf_counter()
    passed, details = body()
    return CriterionResult(
        number=number,
        title=title,
        passed=passed,
        details=details,
        seconds=time.perf_counter() - started,
    )


# ---------------------------------------------------------------- checks


def check_intrinsic_equals_intensity(
    seed: int = DEFAULT_SEED, instances: int = 200
) -> CriterionResult:
    """Smallest reachable spacing always equals the max clique size."""

    def body() -> tuple[bool, str]:
        bad = 0
        for pair in line_corpus(seed, instances):
            istar, _ = interference_intensity(pair, pair.path_nodes(1))
            if intrinsic_period(pair, 1) != istar:
                bad += 1
        return bad == 0, f"{instances} random chains, {bad} mismatches"

    return _timed(1, "intrinsic period equals interference intensity", body)


def check_reachability_window(
    seed: int = DEFAULT_SEED, instances: int = 200
) -> CriterionResult:
    """Spacings below the intensity are unreachable, the rest up to N reachable."""

    def body() -> tuple[bool, str]:
        bad = 0
        for pair in line_corpus(seed, instances):
            n = pair.path(1).n_senders
            istar, _ = interference_intensity(pair, pair.path_nodes(1))
            for spacing in range(1, n + 1):
                if is_reachable_period(pair, 1, spacing) != (spacing >= istar):
                    bad += 1
        return bad == 0, f"{instances} chains, every spacing tried, {bad} misses"

    return _timed(2, "reachable spacings are exactly intensity..N", body)


def check_single_path_throughput(
    seed: int = DEFAULT_SEED, instances: int = 200
) -> CriterionResult:
    """Simulated single-chain rate is exactly one block per intrinsic period."""

    def body() -> tuple[bool, str]:
        bad = 0
        violations = 0
        for pair in line_corpus(seed, instances):
            schedule = schedule_primary(pair, 1)
            report = run(pair, schedule, n_periods=5)
            violations += report.violations
            if report.measured_throughput != Fraction(1, schedule.period):
                bad += 1
        ok = bad == 0 and violations == 0
        return ok, f"{instances} chains, {bad} rate misses, {violations} violations"

    return _timed(3, "single-chain rate is exactly 1 over the period", body)


def check_first_block_delay(
    seed: int = DEFAULT_SEED, instances: int = 200
) -> CriterionResult:
    """Cold-start first delivery takes exactly one beat per sender."""

    def body() -> tuple[bool, str]:
        bad = 0
        for pair in line_corpus(seed, instances):
            schedule = schedule_primary(pair, 1)
            delays = measure_delay(pair, schedule, 1)
            if delays[1][0] != pair.path(1).n_senders:
                bad += 1
        return bad == 0, f"{instances} chains, {bad} delay misses"

    return _timed(4, "first block delay equals the chain length", body)


def check_support_oracle(
    seed: int = DEFAULT_SEED, instances: int = 500
) -> CriterionResult:
    """Augmenting-path support size matches exhaustive search, witnesses valid."""

    def body() -> tuple[bool, str]:
        rng = Random(seed + 2)
        bad = 0
        for _ in range(instances):
            matrix = random_binary_matrix(rng)
            witness, size = max_support_set(matrix)
            ok_witness, problems = validate_support_set(matrix, witness)
            if size != brute_force_max_support(matrix) or not ok_witness or problems:
                bad += 1
        return bad == 0, f"{instances} random matrices, {bad} disagreements"

    return _timed(5, "support sets match the exhaustive oracle", body)


def check_pair_throughput(
    seed: int = DEFAULT_SEED, instances: int = 100
) -> CriterionResult:
    """Both joint schedules hit their predicted rational rate exactly."""

    def body() -> tuple[bool, str]:
        bad = 0
        violations = 0
        for case in pair_corpus(seed, instances):
            equal = schedule_pair_equal(
                case.pair, case.period1, case.period2, case.traversals_equal
            )
            unequal = schedule_pair_unequal(
                case.pair,
                case.period1,
                case.period2,
                case.traversals1,
                case.traversals2,
            )
            for schedule in (equal, unequal):
                if not audit_schedule(case.pair, schedule).ok:
                    bad += 1
                    continue
                report = run(case.pair, schedule, n_periods=3)
                violations += report.violations
                counts = schedule.activation_counts
                expected = Fraction(counts[1] + counts[2], schedule.period)
                if (
                    report.measured_throughput != expected
                    or predicted_throughput(schedule) != expected
                ):
                    bad += 1
        ok = bad == 0 and violations == 0
        return ok, f"{instances} pairs x 2 schedules, {bad} misses, {violations} violations"

    return _timed(6, "joint schedules deliver their exact predicted rate", body)


def check_equal_schedule_is_shortest(
    seed: int = DEFAULT_SEED, max_phase_sum: int = 7
) -> CriterionResult:
    """No valid single-traversal beat arrangement beats the emitted period.

    With one traversal per path, an arrangement is a multiset of beats in
    which every phase of each path appears exactly once, joint beats only
    where the joint matrix allows. The period is the beat count, which
    depends only on how many joint beats the arrangement packs, never on
    their order. Enumerating every feasible joint-pairing set therefore
    covers the whole arrangement space, and the shortest length is the
    phase total minus the largest pairing found by exhaustive search.
    """

    def body() -> tuple[bool, str]:
        checked = 0
        bad = 0
        for t1 in range(1, max_phase_sum):
            for t2 in range(1, max_phase_sum - t1 + 1):
                for bits in itertools.product((0, 1), repeat=t1 * t2):
                    rows = [
                        list(bits[i * t2:(i + 1) * t2]) for i in range(t1)
                    ]
                    pair = pair_from_joint_matrix(rows)
                    emitted = schedule_pair_equal(pair, t1, t2, 1).period
                    shortest = t1 + t2 - brute_force_max_support(rows)
                    checked += 1
                    if emitted != shortest:
                        bad += 1
        return bad == 0, f"{checked} exhaustive instances, {bad} longer than optimal"

    return _timed(7, "single-traversal joint schedule has optimal period", body)


def check_joint_bounds(
    seed: int = DEFAULT_SEED, instances: int = 100
) -> CriterionResult:
    """Intensity and rate bounds hold on every randomized pair scenario."""

    def body() -> tuple[bool, str]:
        bad = 0
        for case in pair_corpus(seed, instances):
            pair = case.pair
            istar1, _ = interference_intensity(pair, pair.path_nodes(1))
            istar2, _ = interference_intensity(pair, pair.path_nodes(2))
            istar12, _ = interference_intensity(pair)
            if not max(istar1, istar2) <= istar12 <= istar1 + istar2:
                bad += 1
                continue
            t1, t2 = case.period1, case.period2
            matrix = build_matrix(pair, t1, t2)
            _, usize = max_support_set(matrix.rows)
            if usize > t1 + t2 - istar12:
                bad += 1
                continue
            rate_equal = Fraction(2, t1 + t2 - usize)
            if rate_equal > Fraction(2, istar12):
                bad += 1
                continue
            if usize == t1 + t2 - istar12 and rate_equal != Fraction(2, istar12):
                bad += 1
                continue
            tiled = continuation(matrix, case.traversals1, case.traversals2)
            _, tiled_size = max_support_set(tiled)
            period = case.traversals1 * t1 + case.traversals2 * t2 - tiled_size
            rate_unequal = Fraction(case.traversals1 + case.traversals2, period)
            if rate_unequal > Fraction(1, t1) + Fraction(1, t2):
                bad += 1
        return bad == 0, f"{instances} pairs, {bad} bound violations"

    return _timed(8, "intensity and rate bounds hold on random pairs", body)


def check_tiled_support_scaling(
    seed: int = DEFAULT_SEED, instances: int = 100
) -> CriterionResult:
    """Tiling a matrix k times in both directions scales its support k-fold."""

    def body() -> tuple[bool, str]:
        rng = Random(seed + 3)
        bad = 0
        for _ in range(instances):
            matrix = random_binary_matrix(rng, max_rows=4, max_cols=4)
            _, base = max_support_set(matrix)
            for scale in (1, 2, 3):
                _, tiled = max_support_set(continuation(matrix, scale, scale))
                if tiled != scale * base:
                    bad += 1
        return bad == 0, f"{instances} matrices x 3 scales, {bad} misses"

    return _timed(9, "square tiling scales the support size linearly", body)


def _window_pair(n: int, width: int) -> PathPair:
    """Single chain where senders interfere iff their distance is < width."""
    pairs = [
        (NodeRef(1, a), NodeRef(1, b))
        for a, b in itertools.combinations(range(1, n + 1), 2)
        if b - a < width
    ]
    return PathPair(
        path1=PrimaryPath(id=1, n_senders=n),
        path2=None,
        relation=InterferenceRelation(pairs),
    )


def _partitions_into(n: int, groups: int):
    """All partitions of {1..n} into exactly `groups` nonempty blocks."""

    def go(element: int, blocks: list[list[int]]):
        if element > n:
            if len(blocks) == groups:
                yield [tuple(b) for b in blocks]
            return
        # pruning: remaining elements must be able to fill missing blocks
        if len(blocks) + (n - element + 1) < groups:
            return
        for block in blocks:
            block.append(element)
            yield from go(element + 1, blocks)
            block.pop()
        if len(blocks) < groups:
            blocks.append([element])
            yield from go(element + 1, blocks)
            blocks.pop()

    yield from go(1, [])


def check_unique_equal_split(
    seed: int = DEFAULT_SEED, max_senders: int = 9
) -> CriterionResult:
    """Worst-case windows split into intensity groups in exactly one way.

    For the chain where all senders closer than the intensity interfere,
    exhaustive partition enumeration must find exactly one split into
    that many concurrency groups: the equally spaced residue classes.
    """

    def body() -> tuple[bool, str]:
        checked = 0
        bad = 0
        for n in range(1, max_senders + 1):
            for width in range(1, n + 1):
                pair = _window_pair(n, width)
                expected = [
                    tuple(range(r, n + 1, width)) for r in range(1, width + 1)
                ]
                found = []
                for partition in _partitions_into(n, width):
                    if all(
                        b - a >= width
                        for block in partition
                        for a, b in itertools.combinations(block, 2)
                    ):
                        found.append(sorted(partition))
                checked += 1
                if found != [sorted(tuple(b) for b in expected)]:
                    bad += 1
        return bad == 0, f"{checked} window chains, {bad} non-unique splits"

    return _timed(10, "worst-case chains split into equal groups uniquely", body)


CRITERIA: tuple[Callable[..., CriterionResult], ...] = (
    check_intrinsic_equals_intensity,
    check_reachability_window,
    check_single_path_throughput,
    check_first_block_delay,
    check_support_oracle,
    check_pair_throughput,
    check_equal_schedule_is_shortest,
    check_joint_bounds,
    check_tiled_support_scaling,
    check_unique_equal_split,
)


def run_criteria(
    seed: int = DEFAULT_SEED,
    numbers: Iterable[int] | None = None,
    instances: int | None = None,
) -> list[CriterionResult]:
    """Run the selected checks (all by default) and return their results.

    `instances` scales the randomized corpora; exhaustive checks ignore
    it. Each check draws its own rng stream from the seed, so subsets
    produce the same results as the full run.
    """
    minimum_instances = {1: 200, 2: 200, 3: 200, 4: 200, 5: 500, 6: 100, 8: 100, 9: 100}
    wanted = set(numbers) if numbers is not None else None
    results = []
    for index, check in enumerate(CRITERIA, start=1):
        if wanted is not None and index not in wanted:
            continue
        floor = minimum_instances.get(index)
        if instances is not None and floor is not None:
            results.append(check(seed, max(instances, floor)))
        else:
            results.append(check(seed))
    return results
