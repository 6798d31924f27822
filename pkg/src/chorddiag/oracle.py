"""Brute-force ground truth for rooted chord diagrams.

A rooted chord diagram on n chords is a fixed-point-free involution of the
positions 1..2n, drawn in linear order with position 1 as the root. Two
chords {a<b} and {c<d} cross when a<c<b<d or c<a<d<b; the intersection graph
has one vertex per chord and an edge per crossing, and all connectivity
notions for diagrams are read off that graph.

The census helpers at the bottom dispatch to a compiled kernel when the
extension module is available and to a pure-Python twin otherwise; both
enumerate diagrams in the same deterministic order (smallest free position
is matched first, partners tried left to right).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Optional

try:  # compiled census kernel, with a pure-Python fallback
    from . import _census as _census_impl

    CENSUS_BACKEND = "compiled"
except ImportError:  # pragma: no cover - depends on the build environment
    from . import _census_py as _census_impl

    CENSUS_BACKEND = "python"

from . import _census_py

DEFAULT_CAP = 8
HARD_CAP = 10


class CapExceededError(ValueError):
    """Raised when an enumeration request exceeds the configured cap."""


class ChordDiagram:
    """A rooted chord diagram, stored as its 1-based partner array."""

    __slots__ = ("_pairing",)

    def __init__(self, pairing):
        p = tuple(int(v) for v in pairing)
        size = len(p)
        if size % 2 != 0:
            raise ValueError("a diagram has an even number of endpoints")
        for i, v in enumerate(p, start=1):
            if not 1 <= v <= size:
                raise ValueError(f"partner {v} of position {i} out of range")
            if v == i:
                raise ValueError(f"position {i} is matched with itself")
            if p[v - 1] != i:
                raise ValueError(f"pairing is not an involution at position {i}")
        self._pairing = p

    @property
    def n(self) -> int:
        return len(self._pairing) // 2

    @property
    def size(self) -> int:
        """Number of endpoints, 2n."""
        return len(self._pairing)

    @property
    def pairing(self) -> tuple[int, ...]:
        return self._pairing

    def partner(self, position: int) -> int:
        if not 1 <= position <= self.size:
            raise IndexError(f"position {position} out of range 1..{self.size}")
        return self._pairing[position - 1]

    def chords(self) -> tuple[tuple[int, int], ...]:
        """Chords as sorted (left, right) pairs, ordered by left endpoint."""
        return tuple(
            (i, self._pairing[i - 1])
            for i in range(1, self.size + 1)
            if i < self._pairing[i - 1]
        )

    def root_chord(self) -> tuple[int, int]:
        if self.n == 0:
            raise ValueError("the empty diagram has no root chord")
        return (1, self._pairing[0])

    def to_text(self) -> str:
        """Text form "n: p1 p2 ... p2n"; the crossing pair is "2: 3 4 1 2"."""
        return f"{self.n}: " + " ".join(str(v) for v in self._pairing)

    @classmethod
    def from_text(cls, text: str) -> "ChordDiagram":
        head, _, body = text.partition(":")
        n = int(head.strip())
        values = [int(tok) for tok in body.split()]
        if len(values) != 2 * n:
            raise ValueError(f"expected {2 * n} partners, got {len(values)}")
        return cls(values)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ChordDiagram):
            return NotImplemented
        return self._pairing == other._pairing

    def __hash__(self) -> int:
        return hash(self._pairing)

    def __repr__(self) -> str:
        return f"ChordDiagram({list(self._pairing)})"


EMPTY_DIAGRAM = ChordDiagram(())


def crossing(chord_a: tuple[int, int], chord_b: tuple[int, int]) -> bool:
    a, b = chord_a
    c, d = chord_b
    return a < c < b < d or c < a < d < b


class IntersectionGraph:
    """Graph on the chords of a diagram with an edge for every crossing."""

    __slots__ = ("chords", "adjacency")

    def __init__(self, diagram: ChordDiagram):
        self.chords = diagram.chords()
        n = len(self.chords)
        adj = [set() for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                if crossing(self.chords[i], self.chords[j]):
                    adj[i].add(j)
                    adj[j].add(i)
        self.adjacency = tuple(frozenset(s) for s in adj)

    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple(
            (i, j)
            for i in range(len(self.chords))
            for j in self.adjacency[i]
            if i < j
        )

    def is_connected(self) -> bool:
        n = len(self.chords)
        if n == 0:
            return False
        seen = {0}
        stack = [0]
        while stack:
            u = stack.pop()
            for v in self.adjacency[u]:
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        return len(seen) == n


def enumerate_diagrams(
    n: int, cap: Optional[int] = DEFAULT_CAP, root_partner: Optional[int] = None
) -> Iterator[ChordDiagram]:
    """All (2n-1)!! rooted diagrams on n chords, in deterministic order.

    The smallest free position is always matched first, and its partners are
    tried left to right. ``root_partner`` restricts position 1 to a fixed
    partner, which partitions the search space for concurrent censuses.
    ``cap`` bounds n (pass None to lift it; the double factorial growth is
    on the caller by then).
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if cap is not None and n > cap:
        raise CapExceededError(
            f"enumeration of n={n} exceeds the cap of {cap} chords "
            f"((2n-1)!! diagrams); raise the cap explicitly to proceed"
        )
    if n == 0:
        yield EMPTY_DIAGRAM
        return
    size = 2 * n
    partner = [0] * (size + 1)

    def fill(first_free: int) -> Iterator[ChordDiagram]:
        i = first_free
        while i <= size and partner[i]:
            i += 1
        if i > size:
            yield ChordDiagram(partner[1:])
            return
        for j in range(i + 1, size + 1):
            if not partner[j]:
                partner[i] = j
                partner[j] = i
                yield from fill(i + 1)
                partner[i] = 0
                partner[j] = 0

    if root_partner is not None:
        if not 2 <= root_partner <= size:
            raise ValueError(f"root partner must lie in 2..{size}")
        partner[1] = root_partner
        partner[root_partner] = 1
        yield from fill(2)
    else:
        yield from fill(1)


def is_connected(diagram: ChordDiagram) -> bool:
    """True when the intersection graph is connected; undefined for n = 0."""
    if diagram.n == 0:
        raise ValueError("connectivity is undefined for the empty diagram")
    return IntersectionGraph(diagram).is_connected()


def _connected_chord_subset(chords, keep) -> bool:
    if not keep:
        return False
    seen = {keep[0]}
    stack = [keep[0]]
    while stack:
        u = stack.pop()
        for v in keep:
            if v not in seen and crossing(chords[u], chords[v]):
                seen.add(v)
                stack.append(v)
    return len(seen) == len(keep)


def is_k_connected(diagram: ChordDiagram, k: int) -> bool:
    """True when no removal of fewer than k chords disconnects the diagram.

    A diagram must have at least k chords to count as k-connected; this makes
    the single chord connected but not 2-connected, matching the connectivity
    censuses.
    """
    if diagram.n < 1:
        raise ValueError("k-connectivity is undefined for the empty diagram")
    if k < 1:
        raise ValueError("k must be at least 1")
    n = diagram.n
    if n < k:
        return False
    chords = diagram.chords()
    if not _connected_chord_subset(chords, tuple(range(n))):
        return False
    for r in range(1, min(k - 1, n - 1) + 1):
        for removed in combinations(range(n), r):
            keep = tuple(i for i in range(n) if i not in removed)
            if not _connected_chord_subset(chords, keep):
                return False
    return True


@dataclass(frozen=True)
class Reason:
    """A consecutive endpoint interval witnessing a single-chord cut.

    Every endpoint in positions start..end is matched inside the interval
    except ``cut_position``, whose chord ``cut_chord`` is the cut: removing
    it separates the chords inside the interval from the rest.
    """

    start: int
    end: int
    cut_position: int
    cut_chord: tuple[int, int]

    def __contains__(self, position: int) -> bool:
        return self.start <= position <= self.end


def find_reasons_connectivity1(diagram: ChordDiagram) -> list[Reason]:
    """All interval witnesses for connectivity 1, in (start, end) order.

    Intervals are consecutive in the linear order (not cyclically), have odd
    length with at least one complete chord inside (length >= 3, so that the
    cut genuinely disconnects something), and stay below 2n-1 endpoints. For
    a connected diagram on n >= 2 chords the list is empty exactly when the
    diagram is 2-connected.
    """
    pairing = diagram.pairing
    size = diagram.size
    reasons: list[Reason] = []
    for start in range(1, size + 1):
        external = 0
        for end in range(start, size + 1):
            p = pairing[end - 1]
            if start <= p < end:
                external -= 1
            else:
                external += 1
            length = end - start + 1
            if length < 3 or length % 2 == 0 or length >= size - 1:
                continue
            if external == 1:
                cut_pos = next(
                    i
                    for i in range(start, end + 1)
                    if not start <= pairing[i - 1] <= end
                )
                partner = pairing[cut_pos - 1]
                chord = (min(cut_pos, partner), max(cut_pos, partner))
                reasons.append(Reason(start, end, cut_pos, chord))
    return reasons


class DecompositionCase(enum.Enum):
    SINGLE_CHORD = "single-chord"
    ROOT_FREE = "root-free"
    ROOT_COVERED = "root-covered"


@dataclass(frozen=True)
class ReasonRemoval:
    """One step of the decomposition: the attachment hanging off a cut endpoint.

    ``start``/``end`` are the removed interval's bounds in the coordinates of
    the diagram the step was applied to, ``cut_position`` the surviving
    endpoint of the cut chord, and ``removed_pairs`` the matching among the
    removed positions. Together these suffice to re-insert the attachment.
    """

    start: int
    end: int
    cut_position: int
    removed_pairs: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class Decomposition:
    """Reversible split of a connected diagram into a 2-connected core.

    ``removals`` lists the extracted attachments in extraction order; for a
    root-covered diagram the first removal is the interval containing the
    root endpoint. ``recompose`` replays them in reverse.
    """

    case: DecompositionCase
    core: ChordDiagram
    removals: tuple[ReasonRemoval, ...]


def _remove_interval(diagram: ChordDiagram, removal: ReasonRemoval) -> ChordDiagram:
    removed = {
        pos
        for pos in range(removal.start, removal.end + 1)
        if pos != removal.cut_position
    }
    pairing = diagram.pairing
    keep = [pos for pos in range(1, diagram.size + 1) if pos not in removed]
    index = {pos: i + 1 for i, pos in enumerate(keep)}
    return ChordDiagram(index[pairing[pos - 1]] for pos in keep)


def _insert_interval(diagram: ChordDiagram, removal: ReasonRemoval) -> ChordDiagram:
    removed = sorted(
        pos
        for pos in range(removal.start, removal.end + 1)
        if pos != removal.cut_position
    )
    total = diagram.size + len(removed)
    removed_set = set(removed)
    keep = [pos for pos in range(1, total + 1) if pos not in removed_set]
    if len(keep) != diagram.size:
        raise ValueError("attachment does not fit the diagram it is re-inserted into")
    original = {i + 1: pos for i, pos in enumerate(keep)}
    pairing = [0] * total
    for i in range(1, diagram.size + 1):
        pairing[original[i] - 1] = original[diagram.partner(i)]
    for u, v in removal.removed_pairs:
        if not (u in removed_set and v in removed_set):
            raise ValueError("removed pairs must match positions inside the interval")
        pairing[u - 1] = v
        pairing[v - 1] = u
    return ChordDiagram(pairing)


def _maximal_reason_from(reasons: list[Reason], start: int) -> Reason:
    candidates = [r for r in reasons if r.start == start]
    return max(candidates, key=lambda r: r.end)


def decompose_connected(diagram: ChordDiagram) -> Decomposition:
    """Split a connected diagram into a 2-connected core plus attachments.

    The single chord is its own (degenerate) decomposition. Otherwise the
    maximal cut-witness intervals are peeled off left to right, each removed
    without its cut chord; when the root endpoint itself lies in such an
    interval, that interval is peeled first and the rest proceeds as in the
    root-free situation. The core that remains is 2-connected.
    """
    if not is_connected(diagram):
        raise ValueError("decomposition is defined for connected diagrams only")
    if diagram.n == 1:
        return Decomposition(DecompositionCase.SINGLE_CHORD, diagram, ())
    reasons = find_reasons_connectivity1(diagram)
    root_covered = any(1 in r for r in reasons)
    case = DecompositionCase.ROOT_COVERED if root_covered else DecompositionCase.ROOT_FREE

    removals: list[ReasonRemoval] = []
    current = diagram
    while True:
        reasons = find_reasons_connectivity1(current)
        if not reasons:
            break
        leftmost = min(r.start for r in reasons)
        reason = _maximal_reason_from(reasons, leftmost)
        pairing = current.pairing
        pairs = set()
        for pos in range(reason.start, reason.end + 1):
            if pos == reason.cut_position:
                continue
            q = pairing[pos - 1]
            pairs.add((min(pos, q), max(pos, q)))
        removal = ReasonRemoval(
            reason.start, reason.end, reason.cut_position, tuple(sorted(pairs))
        )
        removals.append(removal)
        current = _remove_interval(current, removal)
    return Decomposition(case, current, tuple(removals))


def recompose(decomposition: Decomposition) -> ChordDiagram:
    """Inverse of decompose_connected: re-insert attachments in reverse order."""
    current = decomposition.core
    for removal in reversed(decomposition.removals):
        current = _insert_interval(current, removal)
    return current


# -- censuses ---------------------------------------------------------------------


def census_backend() -> str:
    """Which census kernel is active: "compiled" or "python"."""
    return CENSUS_BACKEND


def class_census(
    n: int,
    cap: Optional[int] = DEFAULT_CAP,
    root_partner: int = 0,
    workers: int = 1,
) -> dict[str, int]:
    """Counts of all / connected / 2-connected diagrams on n chords.

    Enumerates every diagram through the active kernel; this is the
    brute-force cross-check for the generating series, not a formula.
    ``workers`` > 1 splits the search space by the root's partner and runs
    the partitions on a thread pool (the compiled kernel releases the GIL,
    so the partitions genuinely overlap) before summing the counts.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if cap is not None and n > cap:
        raise CapExceededError(
            f"census of n={n} exceeds the cap of {cap} chords; "
            f"raise the cap explicitly to proceed"
        )
    if workers > 1 and root_partner == 0 and n >= 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(
                pool.map(
                    lambda rp: _census_impl.class_census(n, rp), range(2, 2 * n + 1)
                )
            )
        total = sum(p[0] for p in parts)
        connected = sum(p[1] for p in parts)
        two_connected = sum(p[2] for p in parts)
    else:
        total, connected, two_connected = _census_impl.class_census(n, root_partner)
    return {"all": total, "connected": connected, "2connected": two_connected}


def k_connected_census(n: int, k: int, cap: Optional[int] = DEFAULT_CAP) -> int:
    """Count of k-connected diagrams on n chords by exhaustive enumeration."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if k < 1:
        raise ValueError("k must be at least 1")
    if cap is not None and n > cap:
        raise CapExceededError(
            f"census of n={n} exceeds the cap of {cap} chords; "
            f"raise the cap explicitly to proceed"
        )
    return _census_impl.k_connected_count(n, k)


def case_census(n: int, cap: Optional[int] = DEFAULT_CAP) -> dict[DecompositionCase, int]:
    """Decomposition-case counts over all connected diagrams on n chords."""
    counts = {case: 0 for case in DecompositionCase}
    for diagram in enumerate_diagrams(n, cap=cap):
        if diagram.n and is_connected(diagram):
            counts[decompose_connected(diagram).case] += 1
    return counts


def pure_python_census_module():
    """The pure-Python kernel, importable regardless of the active backend."""
    return _census_py
