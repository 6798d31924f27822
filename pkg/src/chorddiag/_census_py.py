"""Pure-Python census kernel.

Same contract as the compiled twin in ``_census.pyx``: enumerate every
rooted diagram on n chords (smallest free position matched first) and count
connectivity classes with bitmask graph searches. Kept dependency-free and
allocation-light so it stays usable up to n = 7 when the extension is not
built.
"""

from __future__ import annotations


def _closure(adj: list[int], mask: int, start: int) -> int:
    comp = start
    frontier = start
    while frontier:
        nxt = 0
        f = frontier
        while f:
            low = f & -f
            nxt |= adj[low.bit_length() - 1]
            f ^= low
        nxt &= mask
        frontier = nxt & ~comp
        comp |= nxt
    return comp


def _connected_masked(adj: list[int], mask: int) -> bool:
    if mask == 0:
        return False
    low = mask & -mask
    return _closure(adj, mask, low) == mask


def _crossing_masks(partner: list[int], size: int) -> list[int]:
    left = []
    right = []
    for i in range(size):
        j = partner[i]
        if i < j:
            left.append(i)
            right.append(j)
    n = len(left)
    adj = [0] * n
    for u in range(n):
        au, bu = left[u], right[u]
        for v in range(u + 1, n):
            av, bv = left[v], right[v]
            if au < av < bu < bv or av < au < bv < bu:
                adj[u] |= 1 << v
                adj[v] |= 1 << u
    return adj


def _popcount_masks(n: int, size: int):
    """All n-bit masks with the given popcount, ascending (Gosper's hack)."""
    if size == 0:
        yield 0
        return
    mask = (1 << size) - 1
    limit = 1 << n
    while mask < limit:
        yield mask
        low = mask & -mask
        ripple = mask + low
        mask = ripple | (((mask ^ ripple) >> 2) // low)


def class_census(n: int, root_partner: int = 0) -> tuple[int, int, int]:
    """(total, connected, 2-connected) over all diagrams on n chords.

    ``root_partner`` (1-based position, 0 for unrestricted) pins the partner
    of position 1, partitioning the enumeration.
    """
    if n == 0:
        return (1, 0, 0)
    size = 2 * n
    partner = [-1] * size
    counts = [0, 0, 0]
    full = (1 << n) - 1

    def classify() -> None:
        counts[0] += 1
        adj = _crossing_masks(partner, size)
        if not _connected_masked(adj, full):
            return
        counts[1] += 1
        if n < 2:
            return
        for r in range(n):
            if not _connected_masked(adj, full & ~(1 << r)):
                return
        counts[2] += 1

    def fill(first_free: int) -> None:
        i = first_free
        while i < size and partner[i] >= 0:
            i += 1
        if i == size:
            classify()
            return
        for j in range(i + 1, size):
            if partner[j] < 0:
                partner[i] = j
                partner[j] = i
                fill(i + 1)
                partner[i] = -1
                partner[j] = -1

    if root_partner:
        if not 2 <= root_partner <= size:
            raise ValueError(f"root partner must lie in 2..{size}")
        partner[0] = root_partner - 1
        partner[root_partner - 1] = 0
        fill(1)
    else:
        fill(0)
    return tuple(counts)


def k_connected_count(n: int, k: int) -> int:
    """Count of k-connected diagrams on n chords (removal characterization)."""
    if n == 0:
        return 0
    if n < k:
        return 0
    size = 2 * n
    partner = [-1] * size
    count = 0
    full = (1 << n) - 1
    removal_sizes = list(range(1, min(k - 1, n - 1) + 1))

    def classify() -> None:
        nonlocal count
        adj = _crossing_masks(partner, size)
        if not _connected_masked(adj, full):
            return
        for r in removal_sizes:
            for removed in _popcount_masks(n, r):
                if not _connected_masked(adj, full & ~removed):
                    return
        count += 1

    def fill(first_free: int) -> None:
        i = first_free
        while i < size and partner[i] >= 0:
            i += 1
        if i == size:
            classify()
            return
        for j in range(i + 1, size):
            if partner[j] < 0:
                partner[i] = j
                partner[j] = i
                fill(i + 1)
                partner[i] = -1
                partner[j] = -1

    fill(0)
    return count
