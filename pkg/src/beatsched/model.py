"""Core data model: transmission chains, node identities, and the pairwise
interference relation between sending nodes.

A primary path is a chain of N sending nodes feeding one destination; node
(i, j) is the j-th sender of path i and transmits to node (i, j+1), so the
receiver of the last sender is the destination node (i, N+1). Time is slotted
into beats; within one beat a set of senders may transmit simultaneously only
if no two of them interfere. Such a set is called a concurrency subset here.

Interference is modeled either by an explicit symmetric relation over sender
pairs or derived from disk geometry: sender a disturbs sender b whenever a
sits within the interference radius of b's receiver (and vice versa), and
under half-duplex operation a node cannot send and receive in the same beat,
which makes adjacent senders of one chain interfere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import ConfigurationError, DomainError

__all__ = [
    "NodeRef",
    "PrimaryPath",
    "InterferenceRelation",
    "PathPair",
    "GeometricTopology",
    "RulesReport",
    "derive_relation",
    "is_concurrency_subset",
    "validate_path_rules",
]


@dataclass(frozen=True, order=True)
class NodeRef:
    """Identity of one sending node: (path id, 1-based position on the chain)."""

    path_id: int
    seq: int

    def __post_init__(self):
        if self.path_id not in (1, 2):
            raise DomainError(f"path_id must be 1 or 2, got {self.path_id}")
        if self.seq < 1:
            raise DomainError(f"seq must be >= 1, got {self.seq}")

    def __str__(self) -> str:
        return f"n{self.path_id}.{self.seq}"


@dataclass(frozen=True)
class PrimaryPath:
    """A saturated transmission chain with `n_senders` sending nodes.

    The source is sender 1 and always has fresh data to inject; the
    destination is the (n_senders+1)-th node and only receives.
    """

    id: int
    n_senders: int

    def __post_init__(self):
        if self.id not in (1, 2):
            raise DomainError(f"path id must be 1 or 2, got {self.id}")
        if self.n_senders < 1:
            raise DomainError(f"path needs at least one sender, got {self.n_senders}")

    @property
    def senders(self) -> tuple[NodeRef, ...]:
        return tuple(NodeRef(self.id, j) for j in range(1, self.n_senders + 1))

    def node(self, seq: int) -> NodeRef:
        if not 1 <= seq <= self.n_senders:
            raise DomainError(f"path {self.id} has senders 1..{self.n_senders}, got {seq}")
        return NodeRef(self.id, seq)


class InterferenceRelation:
    """Symmetric, irreflexive relation over sending nodes.

    Stores only the interfering pairs; any pair not stored is concurrent
    (two distinct senders either interfere or may share a beat, never both).
    """

    def __init__(self, interfering_pairs: Iterable[tuple[NodeRef, NodeRef]] = ()):
        pairs = set()
        for a, b in interfering_pairs:
            if a == b:
                raise DomainError(f"a node cannot interfere with itself: {a}")
            pairs.add(frozenset((a, b)))
        self._pairs: frozenset[frozenset[NodeRef]] = frozenset(pairs)

    def interferes(self, a: NodeRef, b: NodeRef) -> bool:
        """True when a and b may not transmit in the same beat."""
        if a == b:
            return False
        return frozenset((a, b)) in self._pairs

    def concurrent(self, a: NodeRef, b: NodeRef) -> bool:
        """True when a and b may transmit in the same beat (or are the same node)."""
        return not self.interferes(a, b)

    @property
    def pairs(self) -> frozenset[frozenset[NodeRef]]:
        return self._pairs

    def __eq__(self, other) -> bool:
        return isinstance(other, InterferenceRelation) and self._pairs == other._pairs

    def __hash__(self) -> int:
        return hash(self._pairs)

    def __repr__(self) -> str:
        return f"InterferenceRelation({len(self._pairs)} interfering pairs)"

    @classmethod
    def from_matrix(cls, order: Sequence[NodeRef], rows: Sequence[Sequence[int]]) -> "InterferenceRelation":
        """Build from a symmetric 0/1 matrix over `order`; diagonal must be zero."""
        n = len(order)
        if len(rows) != n or any(len(r) != n for r in rows):
            raise DomainError(f"relation matrix must be {n}x{n} to match the node order")
        pairs = []
        for i in range(n):
            if rows[i][i]:
                raise DomainError(f"relation matrix diagonal must be zero (node {order[i]})")
            for j in range(i + 1, n):
                if rows[i][j] != rows[j][i]:
                    raise DomainError(
                        f"relation matrix must be symmetric, differs at {order[i]}/{order[j]}"
                    )
                if rows[i][j]:
                    pairs.append((order[i], order[j]))
        return cls(pairs)


@dataclass(frozen=True)
class PathPair:
    """One or two primary paths plus the interference relation over their senders.

    Single-chain scenarios use path2=None; operations that genuinely need a
    second path raise DomainError on such a pair.
    """

    path1: PrimaryPath
    path2: PrimaryPath | None
    relation: InterferenceRelation

    def __post_init__(self):
        if self.path1.id != 1:
            raise DomainError("path1 must have id 1")
        if self.path2 is not None and self.path2.id != 2:
            raise DomainError("path2 must have id 2")
        known = set(self.nodes)
        for pair in self.relation.pairs:
            for node in pair:
                if node not in known:
                    raise DomainError(f"relation mentions {node}, which is not a sender of this pair")

    @property
    def paths(self) -> tuple[PrimaryPath, ...]:
        return (self.path1,) if self.path2 is None else (self.path1, self.path2)

    def path(self, path_id: int) -> PrimaryPath:
        for p in self.paths:
            if p.id == path_id:
                return p
        raise DomainError(f"pair has no path {path_id}")

    @property
    def nodes(self) -> tuple[NodeRef, ...]:
        out: list[NodeRef] = []
        for p in self.paths:
            out.extend(p.senders)
        return tuple(out)

    def path_nodes(self, path_id: int) -> tuple[NodeRef, ...]:
        return self.path(path_id).senders

    @property
    def total_senders(self) -> int:
        return sum(p.n_senders for p in self.paths)

    def has_pair(self) -> bool:
        return self.path2 is not None

    def require_pair(self) -> None:
        if self.path2 is None:
            raise DomainError("operation needs two paths, scenario declares only one")

    def validate_nodes(self, nodes: Iterable[NodeRef]) -> tuple[NodeRef, ...]:
        """Sorted tuple of `nodes` after checking membership; rejects empty input."""
        out = sorted(set(nodes))
        if not out:
            raise DomainError("node set is empty")
        known = set(self.nodes)
        for n in out:
            if n not in known:
                raise DomainError(f"{n} is not a sender of this pair")
        return tuple(out)


@dataclass(frozen=True)
class GeometricTopology:
    """Node coordinates for the disk interference model.

    `positions` maps (path_id, seq) to a point, where seq runs over
    1..n_senders+1 so that every sender's receiver has a position too.
    Points may be given as a single number (a line) or an (x, y) pair.
    """

    positions: Mapping[tuple[int, int], object]
    interference_radius: float
    half_duplex: bool = True
    _norm: dict = field(init=False, repr=False, compare=False, default_factory=dict)

    def __post_init__(self):
        if self.interference_radius < 0:
            raise DomainError(f"interference_radius must be >= 0, got {self.interference_radius}")
        norm = {}
        for key, value in self.positions.items():
            norm[tuple(key)] = _as_point(value, key)
        object.__setattr__(self, "_norm", norm)

    def position(self, path_id: int, seq: int) -> tuple[float, float]:
        try:
            return self._norm[(path_id, seq)]
        except KeyError:
            raise ConfigurationError(f"no position for node {path_id}.{seq}") from None


def _as_point(value, key) -> tuple[float, float]:
    if isinstance(value, (int, float)):
        return (float(value), 0.0)
    try:
        coords = tuple(float(c) for c in value)
    except (TypeError, ValueError):
        raise ConfigurationError(f"position of node {key} must be a number or an (x, y) pair")
    if len(coords) == 1:
        return (coords[0], 0.0)
    if len(coords) == 2:
        return coords
    raise ConfigurationError(f"position of node {key} must have 1 or 2 coordinates, got {len(coords)}")


def derive_relation(topology: GeometricTopology, pair: PathPair) -> InterferenceRelation:
    """Disk model: distinct senders a and b interfere iff

    - a lies within the interference radius of b's receiver, or
    - b lies within the interference radius of a's receiver, or
    - half-duplex and one of them IS the other's receiver (adjacent senders
      of the same chain: a node cannot send and receive in one beat).

    Every sender and every receiver must have a position.
    """
    senders = pair.nodes
    r = topology.interference_radius
    pairs = []
    for i, a in enumerate(senders):
        pos_a = topology.position(a.path_id, a.seq)
        recv_a = topology.position(a.path_id, a.seq + 1)
        for b in senders[i + 1:]:
            pos_b = topology.position(b.path_id, b.seq)
            recv_b = topology.position(b.path_id, b.seq + 1)
            hit = (
                math.dist(pos_a, recv_b) <= r
                or math.dist(pos_b, recv_a) <= r
                or (
                    topology.half_duplex
                    and a.path_id == b.path_id
                    and abs(a.seq - b.seq) == 1
                )
            )
            if hit:
                pairs.append((a, b))
    return InterferenceRelation(pairs)


def is_concurrency_subset(pair: PathPair, nodes: Iterable[NodeRef]) -> bool:
    """True when no two distinct members interfere, so the whole set may share
    one beat. Singletons qualify trivially. Empty input is a domain error."""
    members = pair.validate_nodes(nodes)
    for i, a in enumerate(members):
        for b in members[i + 1:]:
            if pair.relation.interferes(a, b):
                return False
    return True


@dataclass(frozen=True)
class RulesReport:
    """Outcome of the chain monotonicity check for one path.

    rule_down violations: a ~ concurrent with k-th sender but not with the
    (k+1)-th. rule_up violations: concurrent with k-th but the (j-1)-th
    upstream neighbor is not. Both lists hold (j, k) sender positions.
    """

    path_id: int
    rule_down_violations: tuple[tuple[int, int], ...]
    rule_up_violations: tuple[tuple[int, int], ...]

    @property
    def ok(self) -> bool:
        return not self.rule_down_violations and not self.rule_up_violations


def validate_path_rules(pair: PathPair, path_id: int) -> RulesReport:
    """Check the two monotonicity rules on one chain: if senders j < k are
    concurrent then j stays concurrent with k+1 (moving the far node
    downstream) and j-1 is concurrent with k (moving the near node upstream).

    Relations derived from colinear ascending geometry satisfy both; explicit
    relations may not, which disables period/intensity shortcuts elsewhere.
    """
    path = pair.path(path_id)
    rel = pair.relation
    n = path.n_senders
    down = []
    up = []
    for j in range(1, n + 1):
        for k in range(j + 1, n + 1):
            if not rel.concurrent(NodeRef(path_id, j), NodeRef(path_id, k)):
                continue
            if k + 1 <= n and not rel.concurrent(NodeRef(path_id, j), NodeRef(path_id, k + 1)):
                down.append((j, k))
            if j - 1 >= 1 and not rel.concurrent(NodeRef(path_id, j - 1), NodeRef(path_id, k)):
                up.append((j, k))
    return RulesReport(path_id, tuple(down), tuple(up))
