"""Pure-Python kernels; the reference implementation of ``_kernels.pyx``.

Bitsets are Python ints over positive-root indices.
"""


def antichain_ideals(up, comparable, size):
    """Return every upper ideal of the poset, one per antichain of minimal elements.

    ``up[i]`` is the mask of elements ``>= i`` and ``comparable[i]`` the mask of
    elements comparable with ``i`` (including ``i``). Antichains are grown
    depth-first in increasing index order (preorder), so the output order is
    canonical and the empty ideal comes first.
    """
    out = [0]

    def grow(cand, ideal, start):
        c = cand >> start << start
        while c:
            low = c & -c
            i = low.bit_length() - 1
            c ^= low
            new_ideal = ideal | up[i]
            out.append(new_ideal)
            grow(cand & ~comparable[i], new_ideal, i + 1)

    grow((1 << size) - 1, 0, 0)
    return out


def condition_flags(inter, heights, comparable, dep, member):
    """Chain, height-uniqueness and dependence flags for a set of roots.

    ``dep[a][b]`` is the mask of roots lying in the plane spanned by roots
    ``a`` and ``b``; a pair passes when that mask meets ``member``.
    Returns ``(is_chain, unique_heights, failures)`` with ``failures`` the
    list of index pairs ``(a, b)``, ``a < b``, lacking a dependent witness.
    """
    idx = []
    m = inter
    while m:
        low = m & -m
        idx.append(low.bit_length() - 1)
        m ^= low
    is_chain = True
    for a in idx:
        if inter & ~comparable[a]:
            is_chain = False
            break
    seen = set()
    unique = True
    for a in idx:
        h = heights[a]
        if h in seen:
            unique = False
            break
        seen.add(h)
    failures = []
    for x in range(len(idx)):
        a = idx[x]
        row = dep[a]
        for y in range(x + 1, len(idx)):
            b = idx[y]
            if not row[b] & member:
                failures.append((a, b))
    return is_chain, unique, failures
