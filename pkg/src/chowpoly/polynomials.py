"""Exact integer polynomial helpers: γ-expansion, Sturm real-rootedness,
Kruskal-Katona cascade, and h/g-vector diagnostics.

Polynomials are lists of ints, ascending degree, trailing zeros trimmed.
"""

from fractions import Fraction
from math import comb

from .errors import NotPalindromic


def normalize(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def padd(a, b):
    out = [0] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] += c
    return normalize(out)


def pmul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, c in enumerate(a):
        if c:
            for j, d in enumerate(b):
                out[i + j] += c * d
    return normalize(out)


def binom_poly(k):
    """(1+t)^k."""
    return [comb(k, i) for i in range(k + 1)]


def trange(lo, hi):
    """t^lo + t^(lo+1) + ... + t^hi; empty range gives the zero polynomial."""
    if hi < lo:
        return []
    return [0] * lo + [1] * (hi - lo + 1)


def is_palindromic(p):
    p = normalize(p)
    return p == p[::-1]


def gamma_expansion(p):
    """Coefficients of p in the basis t^i (1+t)^(d-2i), i = 0..floor(d/2)."""
    p = normalize(p)
    if not p:
        return []
    if p != p[::-1]:
        raise NotPalindromic(p)
    d = len(p) - 1
    rem = list(p)
    gammas = []
    for i in range(d // 2 + 1):
        g = rem[i] if i < len(rem) else 0
        gammas.append(g)
        if g:
            term = pmul([0] * i + [g], binom_poly(d - 2 * i))
            rem = [a - b for a, b in zip(rem + [0] * len(term), term + [0] * len(rem))]
    assert not normalize(rem), "base change must terminate exactly"
    return gammas


def gamma_to_poly(gammas, d):
    out = []
    for i, g in enumerate(gammas):
        out = padd(out, pmul([0] * i + [g], binom_poly(d - 2 * i)))
    return out


def is_gamma_positive(p):
    try:
        return all(g >= 0 for g in gamma_expansion(p))
    except NotPalindromic:
        return False


def is_unimodal(p):
    p = normalize(p)
    if not p:
        return True
    i = 0
    while i + 1 < len(p) and p[i] <= p[i + 1]:
        i += 1
    while i + 1 < len(p) and p[i] >= p[i + 1]:
        i += 1
    return i == len(p) - 1


def no_internal_zeros(p):
    p = normalize(p)
    inside = False
    seen_zero = False
    for c in p:
        if c:
            if seen_zero and inside:
                return False
            inside = True
        elif inside:
            seen_zero = True
    return True


def is_log_concave(p):
    p = normalize(p)
    return all(
        p[i] * p[i] >= p[i - 1] * p[i + 1] for i in range(1, len(p) - 1)
    )


# ---------------------------------------------------------------------------
# exact real-rootedness via Sturm chains over Fraction


def _fdiv(a, b):
    """Polynomial division over Fraction: returns (quotient, remainder)."""
    a = [Fraction(c) for c in a]
    b = [Fraction(c) for c in b]
    q = [Fraction(0)] * max(1, len(a) - len(b) + 1)
    while len(a) >= len(b) and any(a):
        while a and a[-1] == 0:
            a.pop()
        if len(a) < len(b):
            break
        k = len(a) - len(b)
        c = a[-1] / b[-1]
        q[k] = c
        for i, bc in enumerate(b):
            a[i + k] -= c * bc
        a.pop()
    while a and a[-1] == 0:
        a.pop()
    return q, a


def _deriv(p):
    return [i * c for i, c in enumerate(p)][1:]


def _sign_variations_at_inf(chain, sign):
    """Sign variation count as t -> sign * infinity."""
    signs = []
    for p in chain:
        if not p:
            continue
        s = 1 if p[-1] > 0 else -1
        if sign < 0 and (len(p) - 1) % 2 == 1:
            s = -s
        signs.append(s)
    var = sum(1 for a, b in zip(signs, signs[1:]) if a != b)
    return var


def is_real_rooted(p):
    """All complex roots real, checked exactly: the squarefree part must have
    as many distinct real roots (Sturm count over the whole line) as its
    degree."""
    p = normalize(p)
    if len(p) <= 1:
        return True
    # factor out roots at zero
    while p and p[0] == 0:
        p = p[1:]
    if len(p) <= 1:
        return True
    # squarefree part p / gcd(p, p')
    a = [Fraction(c) for c in p]
    b = [Fraction(c) for c in _deriv(p)]
    x, y = a, b
    while y:
        _, r = _fdiv(x, y)
        x, y = y, r
    gcd = x
    sf, rem = _fdiv(a, gcd)
    assert not rem
    sf = [c for c in sf]
    while sf and sf[-1] == 0:
        sf.pop()
    deg = len(sf) - 1
    if deg <= 1:
        return True
    chain = [sf, _deriv(sf)]
    while True:
        _, r = _fdiv(chain[-2], chain[-1])
        if not r:
            break
        chain.append([-c for c in r])
    roots = _sign_variations_at_inf(chain, -1) - _sign_variations_at_inf(chain, +1)
    return roots == deg


def poly_diagnostics(p):
    p = normalize(p)
    palin = is_palindromic(p)
    return {
        "palindromic": palin,
        "unimodal": is_unimodal(p),
        "log_concave": is_log_concave(p),
        "no_internal_zeros": no_internal_zeros(p),
        "gamma_positive": is_gamma_positive(p) if palin else None,
        "real_rooted": is_real_rooted(p),
    }


# ---------------------------------------------------------------------------
# f-vector numerology


def _macaulay_bound(value, k):
    """Upper bound on f_{k+1} given f_k = value, via the cascade
    representation value = C(a_k,k) + C(a_{k-1},k-1) + ...  with
    a_k > a_{k-1} > ... >= j >= 1."""
    bound = 0
    j = k
    while value > 0 and j >= 1:
        a = j
        while comb(a + 1, j) <= value:
            a += 1
        value -= comb(a, j)
        bound += comb(a, j + 1)
        j -= 1
    assert value == 0
    return bound


def kruskal_katona_check(f):
    """Whether f (cardinality-indexed, f_0 = 1) is the f-vector of some
    simplicial complex."""
    f = list(f)
    if not f or f[0] != 1 or any(c < 0 for c in f):
        return False
    for k in range(1, len(f) - 1):
        if f[k + 1] > _macaulay_bound(f[k], k):
            return False
    return True


def g_vector_report(p):
    """g-vector of a (palindromic) h-polynomial with the small necessary
    checks: g_2 <= C(g_1, 2) and, when the γ-vector exists, 4γ_2 <= γ_1²."""
    h = normalize(p)
    d = len(h) - 1 if h else 0
    g = [h[0] if h else 0]
    for i in range(1, d // 2 + 1):
        g.append(h[i] - h[i - 1])
    g2_ok = None
    if len(g) >= 2:
        g2 = g[2] if len(g) >= 3 else 0
        g2_ok = g[1] >= 0 and g2 <= comb(max(g[1], 0), 2)
    balanced_ok = None
    gammas = None
    if is_palindromic(h):
        gammas = gamma_expansion(h)
        if len(gammas) >= 2:
            gamma2 = gammas[2] if len(gammas) >= 3 else 0
            balanced_ok = 4 * gamma2 <= gammas[1] ** 2
    return {
        "g": tuple(g),
        "g2_bound_ok": g2_ok,
        "balanced_bound_ok": balanced_ok,
        "gamma": tuple(gammas) if gammas is not None else None,
    }
