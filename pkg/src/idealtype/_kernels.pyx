# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernels mirroring ``_kernels_py``; bitsets become arrays of 64-bit words."""
from libc.stdint cimport uint64_t
from libc.stdlib cimport malloc, free
from libc.string cimport memset

cdef uint64_t WORD_MASK = 0xFFFFFFFFFFFFFFFF


cdef class _Words:
    """A flat row-major table of bitsets, ``rows`` x ``nwords`` words."""
    cdef uint64_t* data
    cdef int rows
    cdef int nwords
    cdef object owner

    def __cinit__(self, int rows, int nwords):
        self.rows = rows
        self.nwords = nwords
        self.data = <uint64_t*>malloc(max(rows * nwords, 1) * sizeof(uint64_t))
        if self.data == NULL:
            raise MemoryError()
        memset(self.data, 0, max(rows * nwords, 1) * sizeof(uint64_t))

    def __dealloc__(self):
        free(self.data)


cdef void _load(uint64_t* dst, object value, int nwords):
    cdef int w
    for w in range(nwords):
        dst[w] = <uint64_t>(value & WORD_MASK)
        value = value >> 64


cdef object _store(uint64_t* src, int nwords):
    cdef int w
    out = 0
    for w in range(nwords - 1, -1, -1):
        out = (out << 64) | src[w]
    return out


cdef _Words _table(object rows, int nwords):
    cdef int n = len(rows)
    cdef _Words t = _Words(n, nwords)
    cdef int i
    for i in range(n):
        _load(t.data + i * nwords, rows[i], nwords)
    return t


def antichain_ideals(up, comparable, int size):
    cdef int nwords = (size + 63) // 64 or 1
    cdef _Words up_w = _table(up, nwords)
    cdef _Words cmp_w = _table(comparable, nwords)
    # explicit DFS stack: per depth the candidate mask, ideal mask and next index
    cdef int maxdepth = size + 1
    cdef uint64_t* cand = <uint64_t*>malloc(maxdepth * nwords * sizeof(uint64_t))
    cdef uint64_t* ideal = <uint64_t*>malloc(maxdepth * nwords * sizeof(uint64_t))
    cdef int* nxt = <int*>malloc(maxdepth * sizeof(int))
    if cand == NULL or ideal == NULL or nxt == NULL:
        free(cand); free(ideal); free(nxt)
        raise MemoryError()
    cdef int d = 0, i, w
    cdef uint64_t* c
    cdef uint64_t* idl
    out = [0]
    try:
        for w in range(nwords):
            cand[w] = WORD_MASK
            ideal[w] = 0
        if size % 64:
            cand[nwords - 1] = (<uint64_t>1 << (size % 64)) - 1
        nxt[0] = 0
        while d >= 0:
            c = cand + d * nwords
            idl = ideal + d * nwords
            i = nxt[d]
            while i < size and not (c[i >> 6] >> (i & 63)) & 1:
                i += 1
            if i >= size:
                d -= 1
                continue
            nxt[d] = i + 1
            for w in range(nwords):
                ideal[(d + 1) * nwords + w] = idl[w] | up_w.data[i * nwords + w]
                cand[(d + 1) * nwords + w] = c[w] & ~cmp_w.data[i * nwords + w]
            out.append(_store(ideal + (d + 1) * nwords, nwords))
            d += 1
            nxt[d] = i + 1
    finally:
        free(cand)
        free(ideal)
        free(nxt)
    return out


# converted tables are cached by identity; the source object is kept alive
_cache = {}


cdef tuple _prepared(heights, comparable, dep):
    key = (id(heights), id(comparable), id(dep))
    hit = _cache.get(key)
    if hit is not None:
        return hit
    cdef int n = len(comparable)
    cdef int nwords = (n + 63) // 64 or 1
    cmp_w = _table(comparable, nwords)
    flat = []
    for row in dep:
        flat.extend(row)
    dep_w = _table(flat, nwords)
    hts = list(heights)
    hit = (heights, comparable, dep, nwords, cmp_w, dep_w, hts)
    _cache[key] = hit
    return hit


def condition_flags(inter, heights, comparable, dep, member):
    prep = _prepared(heights, comparable, dep)
    cdef int nwords = prep[3]
    cdef _Words cmp_w = prep[4]
    cdef _Words dep_w = prep[5]
    hts = prep[6]
    cdef int n = cmp_w.rows
    cdef uint64_t[8] iw
    cdef uint64_t[8] mw
    if nwords > 8:
        raise ValueError("too many roots for the compiled kernel")
    _load(iw, inter, nwords)
    _load(mw, member, nwords)
    cdef int idx[512]
    cdef int k = 0, a, b, x, y, w
    for a in range(n):
        if (iw[a >> 6] >> (a & 63)) & 1:
            idx[k] = a
            k += 1
    cdef bint is_chain = True
    cdef uint64_t* row
    for x in range(k):
        row = cmp_w.data + idx[x] * nwords
        for w in range(nwords):
            if iw[w] & ~row[w]:
                is_chain = False
                break
        if not is_chain:
            break
    cdef bint unique = True
    seen = set()
    for x in range(k):
        h = hts[idx[x]]
        if h in seen:
            unique = False
            break
        seen.add(h)
    failures = []
    cdef bint hit
    for x in range(k):
        a = idx[x]
        for y in range(x + 1, k):
            b = idx[y]
            row = dep_w.data + (a * n + b) * nwords
            hit = False
            for w in range(nwords):
                if row[w] & mw[w]:
                    hit = True
                    break
            if not hit:
                failures.append((a, b))
    return is_chain, unique, failures
