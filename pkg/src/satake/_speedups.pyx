# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled sparse-convolution kernel over packed 16-bit-field keys.

When the output coordinate box is small (the usual case: weights of a
fixed rank-g box times a bounded grading) the product is accumulated in
a dense C array indexed by a tight mixed-radix remap of the fields,
which avoids hashing entirely.  Oversized boxes fall back to a hash map.
"""

from libc.stdint cimport int64_t
from libc.string cimport memset
from libc.stdlib cimport free, malloc
from libcpp.unordered_map cimport unordered_map
from libcpp.vector cimport vector

from cython.operator cimport dereference, preincrement

DEF FIELD_BITS = 16
DEF FIELD_MASK = 0xFFFF
DEF MAX_FIELDS = 4
DEF DENSE_CAP = 4194304  # 4M slots (32 MB transient)


cdef void _extract(dict d, vector[int64_t]* keys, vector[int64_t]* vals):
    keys.reserve(len(d))
    vals.reserve(len(d))
    for k, v in d.items():
        keys.push_back(<int64_t> k)
        vals.push_back(<int64_t> v)


def convolve_shifted_i64(dict a, dict b, long long bias, int n_fields):
    """{k1 + k2 - bias: sum of v1*v2} over all pairs, zeros dropped."""
    cdef vector[int64_t] ak, av, bk, bv
    _extract(a, &ak, &av)
    _extract(b, &bk, &bv)
    cdef Py_ssize_t na = ak.size(), nb = bk.size()
    cdef Py_ssize_t i, j, f

    # per-field ranges of both operands
    cdef int64_t amin[MAX_FIELDS], amax[MAX_FIELDS]
    cdef int64_t bmin[MAX_FIELDS], bmax[MAX_FIELDS]
    cdef int64_t field
    for f in range(n_fields):
        amin[f] = amax[f] = (ak[0] >> (FIELD_BITS * f)) & FIELD_MASK
        bmin[f] = bmax[f] = (bk[0] >> (FIELD_BITS * f)) & FIELD_MASK
    for i in range(na):
        for f in range(n_fields):
            field = (ak[i] >> (FIELD_BITS * f)) & FIELD_MASK
            if field < amin[f]: amin[f] = field
            if field > amax[f]: amax[f] = field
    for j in range(nb):
        for f in range(n_fields):
            field = (bk[j] >> (FIELD_BITS * f)) & FIELD_MASK
            if field < bmin[f]: bmin[f] = field
            if field > bmax[f]: bmax[f] = field

    cdef int64_t stride[MAX_FIELDS]
    cdef int64_t size = 1
    for f in range(n_fields):
        stride[f] = size
        size *= amax[f] + bmax[f] - amin[f] - bmin[f] + 1
        if size > DENSE_CAP:
            break

    if size <= DENSE_CAP:
        return _convolve_dense(&ak, &av, &bk, &bv, bias, n_fields,
                               amin, bmin, stride, size)
    return _convolve_map(&ak, &av, &bk, &bv, bias)


cdef _convolve_dense(vector[int64_t]* ak, vector[int64_t]* av,
                     vector[int64_t]* bk, vector[int64_t]* bv,
                     int64_t bias, int n_fields,
                     int64_t* amin, int64_t* bmin,
                     int64_t* stride, int64_t size):
    cdef Py_ssize_t na = ak.size(), nb = bk.size()
    cdef Py_ssize_t i, j, f
    cdef int64_t* acc = <int64_t*> malloc(size * sizeof(int64_t))
    if acc == NULL:
        raise MemoryError()
    memset(acc, 0, size * sizeof(int64_t))

    # compact mixed-radix indices; index(x) + index(y) is exact
    cdef vector[int64_t] ai, bi
    ai.reserve(na); bi.reserve(nb)
    cdef int64_t idx
    for i in range(na):
        idx = 0
        for f in range(n_fields):
            idx += (((ak[0][i] >> (FIELD_BITS * f)) & FIELD_MASK) - amin[f]) * stride[f]
        ai.push_back(idx)
    for j in range(nb):
        idx = 0
        for f in range(n_fields):
            idx += (((bk[0][j] >> (FIELD_BITS * f)) & FIELD_MASK) - bmin[f]) * stride[f]
        bi.push_back(idx)

    cdef int64_t base, v1
    for i in range(na):
        base = ai[i]
        v1 = av[0][i]
        for j in range(nb):
            acc[base + bi[j]] += v1 * bv[0][j]

    # repack nonzero slots: field value = compact field + amin + bmin,
    # and the packed output carries field biases once (hence - bias).
    cdef int64_t origin = -bias
    for f in range(n_fields):
        origin += (amin[f] + bmin[f]) << (FIELD_BITS * f)
    out = {}
    cdef int64_t rem, packed
    for idx in range(size):
        if acc[idx] != 0:
            rem = idx
            packed = origin
            for f in range(n_fields - 1, -1, -1):
                packed += (rem / stride[f]) << (FIELD_BITS * f)
                rem %= stride[f]
            out[packed] = acc[idx]
    free(acc)
    return out


cdef _convolve_map(vector[int64_t]* ak, vector[int64_t]* av,
                   vector[int64_t]* bk, vector[int64_t]* bv,
                   int64_t bias):
    cdef Py_ssize_t na = ak.size(), nb = bk.size()
    cdef Py_ssize_t i, j
    cdef unordered_map[int64_t, int64_t] acc
    acc.reserve(2 * (na + nb))
    cdef int64_t base, v1
    for i in range(na):
        base = ak[0][i] - bias
        v1 = av[0][i]
        for j in range(nb):
            acc[base + bk[0][j]] += v1 * bv[0][j]
    out = {}
    cdef unordered_map[int64_t, int64_t].iterator it = acc.begin()
    while it != acc.end():
        if dereference(it).second != 0:
            out[dereference(it).first] = dereference(it).second
        preincrement(it)
    return out
