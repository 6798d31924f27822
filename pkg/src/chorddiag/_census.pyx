# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled census kernel.

Same contract as the pure-Python twin in ``_census_py``: enumerate every
rooted diagram on n chords (smallest free position matched first) and count
connectivity classes. Chord adjacency lives in per-chord bitmasks, so the
graph searches are a few dozen word operations per diagram.
"""

cdef unsigned int _closure(unsigned int* adj, unsigned int mask,
                           unsigned int start) noexcept nogil:
    cdef unsigned int comp = start
    cdef unsigned int frontier = start
    cdef unsigned int nxt, f
    cdef int i
    while frontier:
        nxt = 0
        f = frontier
        i = 0
        while f:
            if f & 1u:
                nxt |= adj[i]
            f >>= 1
            i += 1
        nxt &= mask
        frontier = nxt & ~comp
        comp |= nxt
    return comp


cdef bint _connected_masked(unsigned int* adj, unsigned int mask) noexcept nogil:
    if mask == 0:
        return 0
    cdef unsigned int low = mask & (~mask + 1u)
    return _closure(adj, mask, low) == mask


cdef void _crossing_masks(int* partner, int size, unsigned int* adj,
                          int* nchords) noexcept nogil:
    cdef int left[16]
    cdef int right[16]
    cdef int i, j, u, v, n
    n = 0
    for i in range(size):
        j = partner[i]
        if i < j:
            left[n] = i
            right[n] = j
            n += 1
    nchords[0] = n
    for u in range(n):
        adj[u] = 0
    for u in range(n):
        for v in range(u + 1, n):
            if (left[u] < left[v] and left[v] < right[u] and right[u] < right[v]) or \
               (left[v] < left[u] and left[u] < right[v] and right[v] < right[u]):
                adj[u] |= 1u << v
                adj[v] |= 1u << u


cdef struct ClassCounts:
    unsigned long long total
    unsigned long long connected
    unsigned long long two_connected


cdef void _classify_classes(int* partner, int size, ClassCounts* out) noexcept nogil:
    cdef unsigned int adj[16]
    cdef int n
    cdef int r
    cdef unsigned int full
    out.total += 1
    _crossing_masks(partner, size, adj, &n)
    full = (1u << n) - 1u
    if not _connected_masked(adj, full):
        return
    out.connected += 1
    if n < 2:
        return
    for r in range(n):
        if not _connected_masked(adj, full & ~(1u << r)):
            return
    out.two_connected += 1


cdef void _enum_classes(int* partner, int size, int first_free,
                        ClassCounts* out) noexcept nogil:
    cdef int i = first_free
    cdef int j
    while i < size and partner[i] >= 0:
        i += 1
    if i == size:
        _classify_classes(partner, size, out)
        return
    for j in range(i + 1, size):
        if partner[j] < 0:
            partner[i] = j
            partner[j] = i
            _enum_classes(partner, size, i + 1, out)
            partner[i] = -1
            partner[j] = -1


def class_census(int n, int root_partner=0):
    """(total, connected, 2-connected) over all diagrams on n chords."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > 16:
        raise ValueError("compiled kernel supports at most 16 chords")
    if n == 0:
        return (1, 0, 0)
    cdef int size = 2 * n
    cdef int partner[32]
    cdef int i
    cdef ClassCounts counts
    counts.total = 0
    counts.connected = 0
    counts.two_connected = 0
    for i in range(size):
        partner[i] = -1
    if root_partner:
        if not 2 <= root_partner <= size:
            raise ValueError(f"root partner must lie in 2..{size}")
        partner[0] = root_partner - 1
        partner[root_partner - 1] = 0
        with nogil:
            _enum_classes(partner, size, 1, &counts)
    else:
        with nogil:
            _enum_classes(partner, size, 0, &counts)
    return (counts.total, counts.connected, counts.two_connected)


cdef unsigned int _next_popcount_mask(unsigned int mask) noexcept nogil:
    # Gosper's hack: next mask with the same popcount.
    cdef unsigned int low = mask & (~mask + 1u)
    cdef unsigned int ripple = mask + low
    return ripple | (((mask ^ ripple) >> 2) / low)


cdef bint _is_k_connected(unsigned int* adj, int n, int k) noexcept nogil:
    cdef unsigned int full = (1u << n) - 1u
    cdef int r, max_r
    cdef unsigned int removed, limit
    if n < k:
        return 0
    if not _connected_masked(adj, full):
        return 0
    max_r = k - 1
    if max_r > n - 1:
        max_r = n - 1
    limit = 1u << n
    for r in range(1, max_r + 1):
        removed = (1u << r) - 1u
        while removed < limit:
            if not _connected_masked(adj, full & ~removed):
                return 0
            removed = _next_popcount_mask(removed)
    return 1


cdef void _enum_k(int* partner, int size, int first_free, int k,
                  unsigned long long* count) noexcept nogil:
    cdef int i = first_free
    cdef int j, n
    cdef unsigned int adj[16]
    while i < size and partner[i] >= 0:
        i += 1
    if i == size:
        _crossing_masks(partner, size, adj, &n)
        if _is_k_connected(adj, n, k):
            count[0] += 1
        return
    for j in range(i + 1, size):
        if partner[j] < 0:
            partner[i] = j
            partner[j] = i
            _enum_k(partner, size, i + 1, k, count)
            partner[i] = -1
            partner[j] = -1


def k_connected_count(int n, int k):
    """Count of k-connected diagrams on n chords (removal characterization)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if k < 1:
        raise ValueError("k must be at least 1")
    if n > 16:
        raise ValueError("compiled kernel supports at most 16 chords")
    if n == 0 or n < k:
        return 0
    cdef int size = 2 * n
    cdef int partner[32]
    cdef int i
    cdef unsigned long long count = 0
    for i in range(size):
        partner[i] = -1
    with nogil:
        _enum_k(partner, size, 0, k, &count)
    return count
