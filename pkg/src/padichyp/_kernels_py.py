"""Pure-Python versions of the hot loops (used when the extension is absent)."""


def _split(x, p):
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v, x


def hyper_partial_sums(an, ad, bn, bd, cn, cd, lam_v, lam_u, p, K, E, checkpoints):
    """Partial sums of sum_k (a)_k (b)_k / ((c)_k k!) lam^k modulo p^K.

    a = an/ad, b = bn/bd, c = cn/cd with denominators prime to p; lam = p^lam_v
    * lam_u with lam_u a unit (lam_v < 0 is rejected; lam_u = 0 means lam = 0).
    For each n in `checkpoints` (increasing) returns (s, d) with the sum of the
    first n terms equal to s / (d * p^E) modulo p^K, d a unit.

    Raises ZeroDivisionError on a Pochhammer zero (c + k = 0) and
    OverflowError when a term has valuation below -E.
    """
    P = p ** (K + E)
    out = []
    s = 0
    d = 1
    tv = 0      # valuation of the current term
    tu = 1      # unit of the current term times d (common denominator)
    alive = True
    k = 0
    for n in checkpoints:
        while k < n:
            if alive:
                if tv + E < 0:
                    raise OverflowError("term valuation below guard")
                if tv < K:
                    s = (s + tu * pow(p, tv + E, P)) % P
            # advance to term k + 1
            xa = an + k * ad
            xb = bn + k * bd
            xc = cn + k * cd
            if xc == 0:
                raise ZeroDivisionError("Pochhammer zero in lower parameter")
            if alive and (xa == 0 or xb == 0 or lam_u == 0):
                alive = False
            if alive:
                va, ua = _split(xa, p)
                vb, ub = _split(xb, p)
                vc, uc = _split(xc, p)
                vk, uk = _split(k + 1, p)
                tv += va + vb + lam_v - vc - vk
                den = ad * bd * uc * uk % P
                tu = tu * (ua * ub % P) % P * (cd * lam_u % P) % P
                # bring s and the previous denominator onto the new one
                s = s * den % P
                d = d * den % P
            k += 1
        out.append((s, d))
    return out


def gamma_p_direct(m, p, K):
    """(-1)^m prod_{0<j<m, p∤j} j modulo p^K."""
    P = p ** K
    acc = 1
    for j in range(1, m):
        if j % p:
            acc = acc * j % P
    if m % 2:
        acc = (-acc) % P
    return acc
