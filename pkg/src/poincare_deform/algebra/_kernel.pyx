# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled sparse polynomial multiplication.

Same contract as ``_kernel_py.mul_terms``.  Monomials are unpacked into at
most four 64-bit words, coefficients into int64 numerator/denominator pairs
reduced with 128-bit intermediates.  A coefficient that does not fit raises
CoefficientOverflow and the caller reruns the product in Python.
"""
from libc.stdint cimport uint64_t, int64_t
from libc.stdlib cimport malloc, calloc, free
from libc.string cimport memcpy

from ._errors import CoefficientOverflow, ExponentOverflow

try:
    from gmpy2 import mpq as Q
except ImportError:
    from fractions import Fraction as Q

cdef extern from *:
    """
    #include <stdint.h>
    typedef __int128 pd_i128;
    static inline pd_i128 pd_gcd(pd_i128 a, pd_i128 b) {
        if (a < 0) a = -a;
        if (b < 0) b = -b;
        while (b) { pd_i128 t = a % b; a = b; b = t; }
        return a;
    }
    static inline int pd_fits64(pd_i128 x) {
        return x >= (pd_i128)INT64_MIN && x <= (pd_i128)INT64_MAX;
    }
    static inline uint64_t pd_mix(uint64_t x) {
        x ^= x >> 30; x *= 0xbf58476d1ce4e5b9ULL;
        x ^= x >> 27; x *= 0x94d049bb133111ebULL;
        x ^= x >> 31;
        return x;
    }
    """
    ctypedef long long pd_i128
    pd_i128 pd_gcd(pd_i128 a, pd_i128 b) nogil
    int pd_fits64(pd_i128 x) nogil
    uint64_t pd_mix(uint64_t x) nogil

cdef enum:
    MAXW = 4

cdef uint64_t MASK64 = 0xFFFFFFFFFFFFFFFF


cdef struct Table:
    uint64_t* keys
    int64_t* num
    int64_t* den
    char* used
    Py_ssize_t cap
    Py_ssize_t size
    int W


cdef int table_init(Table* t, Py_ssize_t cap, int W):
    t.cap = cap
    t.size = 0
    t.W = W
    t.keys = <uint64_t*> malloc(cap * W * sizeof(uint64_t))
    t.num = <int64_t*> malloc(cap * sizeof(int64_t))
    t.den = <int64_t*> malloc(cap * sizeof(int64_t))
    t.used = <char*> calloc(cap, sizeof(char))
    if not t.keys or not t.num or not t.den or not t.used:
        return -1
    return 0


cdef void table_free(Table* t):
    free(t.keys)
    free(t.num)
    free(t.den)
    free(t.used)
    t.keys = NULL
    t.num = NULL
    t.den = NULL
    t.used = NULL


cdef inline uint64_t key_hash(const uint64_t* k, int W):
    cdef uint64_t h = 0x9e3779b97f4a7c15ULL
    cdef int w
    for w in range(W):
        h = pd_mix(h ^ k[w])
    return h


cdef inline bint key_eq(const uint64_t* a, const uint64_t* b, int W):
    cdef int w
    for w in range(W):
        if a[w] != b[w]:
            return False
    return True


cdef int rat_add(int64_t an, int64_t ad, int64_t bn, int64_t bd,
                 int64_t* on, int64_t* od):
    cdef pd_i128 n, d, g
    if ad == bd:
        n = <pd_i128> an + bn
        d = ad
    else:
        n = <pd_i128> an * bd + <pd_i128> bn * ad
        d = <pd_i128> ad * bd
    if n == 0:
        on[0] = 0
        od[0] = 1
        return 0
    g = pd_gcd(n, d)
    if g > 1:
        n = n // g
        d = d // g
    if not pd_fits64(n) or not pd_fits64(d):
        return -1
    on[0] = <int64_t> n
    od[0] = <int64_t> d
    return 0


cdef int rat_mul(int64_t an, int64_t ad, int64_t bn, int64_t bd,
                 int64_t* on, int64_t* od):
    cdef pd_i128 n = <pd_i128> an * bn
    cdef pd_i128 d = <pd_i128> ad * bd
    cdef pd_i128 g
    if d != 1:
        g = pd_gcd(n, d)
        if g > 1:
            n = n // g
            d = d // g
    if not pd_fits64(n) or not pd_fits64(d):
        return -1
    on[0] = <int64_t> n
    od[0] = <int64_t> d
    return 0


cdef int table_grow(Table* t):
    cdef Table nt
    cdef Py_ssize_t s, j
    cdef int W = t.W
    cdef uint64_t h
    if table_init(&nt, t.cap * 2, W) < 0:
        table_free(&nt)
        return -1
    for s in range(t.cap):
        if not t.used[s]:
            continue
        h = key_hash(&t.keys[s * W], W)
        j = <Py_ssize_t> (h & <uint64_t> (nt.cap - 1))
        while nt.used[j]:
            j = (j + 1) & (nt.cap - 1)
        nt.used[j] = 1
        memcpy(&nt.keys[j * W], &t.keys[s * W], W * sizeof(uint64_t))
        nt.num[j] = t.num[s]
        nt.den[j] = t.den[s]
    nt.size = t.size
    table_free(t)
    t[0] = nt
    return 0


cdef int table_add(Table* t, const uint64_t* key, int64_t n, int64_t d):
    """0 ok, -1 coefficient overflow, -2 out of memory."""
    cdef int W = t.W
    cdef uint64_t h
    cdef Py_ssize_t j
    if 2 * (t.size + 1) > t.cap:
        if table_grow(t) < 0:
            return -2
    h = key_hash(key, W)
    j = <Py_ssize_t> (h & <uint64_t> (t.cap - 1))
    while t.used[j]:
        if key_eq(&t.keys[j * W], key, W):
            return rat_add(t.num[j], t.den[j], n, d, &t.num[j], &t.den[j])
        j = (j + 1) & (t.cap - 1)
    t.used[j] = 1
    memcpy(&t.keys[j * W], key, W * sizeof(uint64_t))
    t.num[j] = n
    t.den[j] = d
    t.size += 1
    return 0


cdef int unpack(dict terms, list order_keys, int W, int lam_shift, int lam_bias,
                uint64_t* keys, int64_t* num, int64_t* den, int* lam) except -1:
    cdef Py_ssize_t i = 0
    cdef int w
    for k in order_keys:
        c = terms[k]
        n = int(c.numerator)
        d = int(c.denominator)
        if not (-(1 << 63) <= n < (1 << 63)) or not (0 < d < (1 << 63)):
            raise CoefficientOverflow("coefficient exceeds int64")
        num[i] = n
        den[i] = d
        for w in range(W):
            keys[i * W + w] = (k >> (64 * w)) & MASK64
        lam[i] = (k >> lam_shift) - lam_bias
        i += 1
    return 0


def mul_terms(ring, dict a, dict b, order):
    """Product of two term dicts in ``ring``; see ``_kernel_py.mul_terms``."""
    cdef int W = ring.n_words
    cdef int lam_shift = ring.lam_shift
    cdef int lam_bias = ring.lam_bias
    cdef int lam_word = lam_shift // 64
    cdef int lam_off = lam_shift % 64
    cdef int lam_limit = 1 << (ring.bits - 1)
    cdef bint truncate = order is not None
    cdef int cut = order if truncate else 0
    cdef uint64_t guard[MAXW]
    cdef uint64_t s[MAXW]
    cdef uint64_t bias_word
    cdef Py_ssize_t na, nb, i, j
    cdef int w, deg, rc
    cdef int64_t cn, cd
    cdef uint64_t* ak = NULL
    cdef uint64_t* bk = NULL
    cdef int64_t* an = NULL
    cdef int64_t* ad = NULL
    cdef int64_t* bn = NULL
    cdef int64_t* bd = NULL
    cdef int* al = NULL
    cdef int* bl = NULL
    cdef Table t
    cdef Py_ssize_t cap

    if W > MAXW:
        raise CoefficientOverflow("ring layout too wide for compiled kernel")
    if len(a) > len(b):
        a, b = b, a
    na = len(a)
    nb = len(b)
    if na == 0:
        return {}
    g = ring.guard
    for w in range(W):
        guard[w] = (g >> (64 * w)) & MASK64
    bias_word = (<uint64_t> lam_bias) << lam_off

    # sized from the operands, not na * nb: truncated products stay small
    cap = 1024
    while cap < 4 * min(na * nb, na + nb):
        cap *= 2
    t.keys = NULL
    t.num = NULL
    t.den = NULL
    t.used = NULL
    try:
        ak = <uint64_t*> malloc(na * W * sizeof(uint64_t))
        bk = <uint64_t*> malloc(nb * W * sizeof(uint64_t))
        an = <int64_t*> malloc(na * sizeof(int64_t))
        ad = <int64_t*> malloc(na * sizeof(int64_t))
        bn = <int64_t*> malloc(nb * sizeof(int64_t))
        bd = <int64_t*> malloc(nb * sizeof(int64_t))
        al = <int*> malloc(na * sizeof(int))
        bl = <int*> malloc(nb * sizeof(int))
        if not (ak and bk and an and ad and bn and bd and al and bl):
            raise MemoryError()
        unpack(a, list(a), W, lam_shift, lam_bias, ak, an, ad, al)
        unpack(b, sorted(b), W, lam_shift, lam_bias, bk, bn, bd, bl)
        if table_init(&t, cap, W) < 0:
            raise MemoryError()

        for i in range(na):
            for j in range(nb):
                deg = al[i] + bl[j]
                if truncate and deg >= cut:
                    break
                if deg + lam_bias < 0 or deg + lam_bias >= lam_limit:
                    raise ExponentOverflow("lambda exponent out of range in product")
                for w in range(W):
                    s[w] = ak[i * W + w] + bk[j * W + w]
                s[lam_word] -= bias_word
                if rat_mul(an[i], ad[i], bn[j], bd[j], &cn, &cd) < 0:
                    raise CoefficientOverflow("coefficient product exceeds int64")
                if s[0] & 2:
                    s[0] -= 2
                    cn = -cn
                for w in range(W):
                    if s[w] & guard[w]:
                        raise ExponentOverflow("exponent out of range in product")
                rc = table_add(&t, s, cn, cd)
                if rc == -1:
                    raise CoefficientOverflow("coefficient sum exceeds int64")
                if rc == -2:
                    raise MemoryError()

        out = {}
        from_bytes = int.from_bytes
        for i in range(t.cap):
            if not t.used[i] or t.num[i] == 0:
                continue
            key = from_bytes((<char*> &t.keys[i * W])[:W * 8], "little")
            out[key] = Q(t.num[i], t.den[i])
        return out
    finally:
        free(ak)
        free(bk)
        free(an)
        free(ad)
        free(bn)
        free(bd)
        free(al)
        free(bl)
        table_free(&t)
