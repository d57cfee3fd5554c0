# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the hot loops; semantics match _kernels_py."""

from libc.stdint cimport uint64_t, int64_t

cdef extern from *:
    """
    static inline unsigned long long padichyp_mulmod(unsigned long long a,
                                                     unsigned long long b,
                                                     unsigned long long m) {
        return (unsigned long long)(((unsigned __int128)a * b) % m);
    }
    """
    unsigned long long padichyp_mulmod(unsigned long long a, unsigned long long b,
                                       unsigned long long m) nogil


cdef inline uint64_t _red(int64_t x, uint64_t m):
    cdef int64_t r = x % <int64_t>m
    if r < 0:
        r += <int64_t>m
    return <uint64_t>r


cdef inline int _split(int64_t x, int64_t p, int64_t* u):
    cdef int v = 0
    if x < 0:
        x = -x
        while x % p == 0:
            x //= p
            v += 1
        u[0] = -x
        return v
    while x % p == 0:
        x //= p
        v += 1
    u[0] = x
    return v


def max_modulus_exponent(int p):
    """Largest e with p^e < 2^63 (the compiled loops need that)."""
    cdef int e = 0
    cdef object q = 1
    while q * p < (1 << 63):
        q *= p
        e += 1
    return e


def hyper_partial_sums(int64_t an, int64_t ad, int64_t bn, int64_t bd, int64_t cn,
                       int64_t cd, int lam_v, object lam_u, int p, int K, int E,
                       checkpoints):
    if K + E > max_modulus_exponent(p):
        raise OverflowError("modulus too large for the compiled kernel")
    cdef uint64_t P = 1
    cdef int i
    for i in range(K + E):
        P *= p
    cdef uint64_t lu = _red(<int64_t>(lam_u % P), P)
    cdef uint64_t s = 0, d = 1, tu = 1, den, pw
    cdef int64_t tv = 0, xa, xb, xc, ua, ub, uc, uk
    cdef int va, vb, vc, vk
    cdef bint alive = True
    cdef int64_t k = 0, n
    cdef uint64_t cdu = _red(cd, P), adbd = padichyp_mulmod(_red(ad, P), _red(bd, P), P)
    cdef uint64_t[64] powp
    powp[0] = 1
    for i in range(1, K + E + 1):
        powp[i] = powp[i - 1] * p
    out = []
    for n_obj in checkpoints:
        n = n_obj
        while k < n:
            if alive:
                if tv + E < 0:
                    raise OverflowError("term valuation below guard")
                if tv < K:
                    s = (s + padichyp_mulmod(tu, powp[tv + E], P)) % P
            xa = an + k * ad
            xb = bn + k * bd
            xc = cn + k * cd
            if xc == 0:
                raise ZeroDivisionError("Pochhammer zero in lower parameter")
            if alive and (xa == 0 or xb == 0 or lu == 0):
                alive = False
            if alive:
                va = _split(xa, p, &ua)
                vb = _split(xb, p, &ub)
                vc = _split(xc, p, &uc)
                vk = _split(k + 1, p, &uk)
                tv += va + vb + lam_v - vc - vk
                den = padichyp_mulmod(padichyp_mulmod(adbd, _red(uc, P), P), _red(uk, P), P)
                tu = padichyp_mulmod(tu, padichyp_mulmod(_red(ua, P), _red(ub, P), P), P)
                tu = padichyp_mulmod(tu, padichyp_mulmod(cdu, lu, P), P)
                s = padichyp_mulmod(s, den, P)
                d = padichyp_mulmod(d, den, P)
            k += 1
        out.append((int(s), int(d)))
    return out


def gamma_p_direct(object m_obj, int p, int K):
    if K > max_modulus_exponent(p):
        raise OverflowError("modulus too large for the compiled kernel")
    cdef uint64_t P = 1
    cdef int i
    for i in range(K):
        P *= p
    cdef int64_t m = m_obj
    cdef uint64_t acc = 1
    cdef int64_t j
    with nogil:
        for j in range(1, m):
            if j % p:
                acc = padichyp_mulmod(acc, <uint64_t>j, P)
    if m % 2:
        acc = (P - acc) % P
    return int(acc)
