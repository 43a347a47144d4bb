"""Dense univariate polynomials over an exact field.

A polynomial is a list of coefficients in ascending order of degree.  The
coefficients may be ``Fraction`` or number field elements; only ring
operations, division and comparison with 0 are used.
"""

from __future__ import annotations

from fractions import Fraction


def _div(a, b):
    if isinstance(a, int) and isinstance(b, int):
        return Fraction(a, b)
    return a / b


def trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def degree(p) -> int:
    return len(trim(p)) - 1


def add(p, q):
    n = max(len(p), len(q))
    out = [(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)]
    return trim(out)


def sub(p, q):
    return add(p, [-c for c in q])


def mul(p, q):
    if not p or not q:
        return []
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] = out[i + j] + a * b
    return trim(out)


def scale(p, c):
    return trim([c * a for a in p])


def divmod_(p, q):
    """Euclidean division p = s*q + r with deg r < deg q."""
    q = trim(q)
    if not q:
        raise ZeroDivisionError("division by the zero polynomial")
    r = trim(p)
    if len(r) < len(q):
        return [], r
    lead = q[-1]
    s = [0] * (len(r) - len(q) + 1)
    while len(r) >= len(q) and r:
        shift = len(r) - len(q)
        c = _div(r[-1], lead)
        s[shift] = c
        for i, b in enumerate(q):
            r[i + shift] = r[i + shift] - c * b
        r = trim(r)
    return trim(s), r


def monic(p):
    p = trim(p)
    if not p:
        return p
    lead = p[-1]
    return [_div(c, lead) for c in p]


def gcd(p, q):
    """Monic greatest common divisor (the zero polynomial if both vanish)."""
    a, b = trim(p), trim(q)
    while b:
        _, r = divmod_(a, b)
        a, b = b, r
    return monic(a)


def xgcd(p, q):
    """Return (g, s, t) with s*p + t*q = g monic."""
    r0, r1 = trim(p), trim(q)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        quo, rem = divmod_(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, sub(s0, mul(quo, s1))
        t0, t1 = t1, sub(t0, mul(quo, t1))
    if not r0:
        return [], s0, t0
    lead = r0[-1]
    inv = _div(1, lead)
    return scale(r0, inv), scale(s0, inv), scale(t0, inv)


def derivative(p):
    return trim([i * p[i] for i in range(1, len(p))])


def evaluate(p, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def squarefree_part(p):
    p = trim(p)
    if len(p) <= 1:
        return monic(p)
    g = gcd(p, derivative(p))
    s, _ = divmod_(p, g)
    return monic(s)


def repeated_part(p):
    """Monic radical of the repeated factors of p (characteristic zero)."""
    g = gcd(p, derivative(p))
    return squarefree_part(g) if len(g) > 1 else [1]
