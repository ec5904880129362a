"""Shared builders for the test suite.

Everything here constructs scenarios from first principles (explicit
coordinates or explicit relation matrices) so tests do not lean on the
code they are checking any more than necessary.
"""

from __future__ import annotations

from beatsched.model import (
    GeometricTopology,
    InterferenceRelation,
    NodeRef,
    PathPair,
    PrimaryPath,
    derive_relation,
)

# A joint concurrency matrix with no stall-free single-buffer schedule at
# three and two traversals; the queueing relay keeps it at full rate with
# buffer depth two. Frozen from an exhaustive search over period-6
# arrangements of its tiled matching.
OBSTRUCTION_C = [[1, 0, 1], [1, 1, 0]]


def line_pair(
    n: int, gap: float = 1.0, radius: float = 1.0, half_duplex: bool = True
) -> PathPair:
    """Single chain of n senders on a straight line with uniform gaps."""
    path = PrimaryPath(id=1, n_senders=n)
    positions = {(1, seq): (gap * (seq - 1), 0.0) for seq in range(1, n + 2)}
    topology = GeometricTopology(
        positions, interference_radius=radius, half_duplex=half_duplex
    )
    skeleton = PathPair(path1=path, path2=None, relation=InterferenceRelation())
    return PathPair(path1=path, path2=None, relation=derive_relation(topology, skeleton))


def two_line_pair(
    n1: int,
    n2: int,
    dy: float,
    gap: float = 1.0,
    radius: float = 1.0,
) -> PathPair:
    """Two parallel chains, the second offset vertically by dy."""
    path1 = PrimaryPath(id=1, n_senders=n1)
    path2 = PrimaryPath(id=2, n_senders=n2)
    positions: dict[tuple[int, int], tuple[float, float]] = {}
    for seq in range(1, n1 + 2):
        positions[(1, seq)] = (gap * (seq - 1), 0.0)
    for seq in range(1, n2 + 2):
        positions[(2, seq)] = (gap * (seq - 1), dy)
    topology = GeometricTopology(positions, interference_radius=radius)
    skeleton = PathPair(path1=path1, path2=path2, relation=InterferenceRelation())
    return PathPair(
        path1=path1, path2=path2, relation=derive_relation(topology, skeleton)
    )


def relation_pair(n1: int, n2: int, interfering: list[tuple[str, str]]) -> PathPair:
    """Pair over an explicit relation; nodes named like "1.3" (path.seq)."""

    def ref(name: str) -> NodeRef:
        pid, seq = name.split(".")
        return NodeRef(int(pid), int(seq))

    relation = InterferenceRelation([(ref(a), ref(b)) for a, b in interfering])
    return PathPair(
        path1=PrimaryPath(id=1, n_senders=n1),
        path2=PrimaryPath(id=2, n_senders=n2) if n2 else None,
        relation=relation,
    )


def n(path_id: int, seq: int) -> NodeRef:
    return NodeRef(path_id, seq)
