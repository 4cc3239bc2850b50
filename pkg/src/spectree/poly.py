"""Dense integer polynomials (coefficient lists, lowest degree first).

Only what the spectral code needs: arithmetic, exact evaluation at dyadic
points, sign-preserving Sturm chains and a content-reduced gcd.
"""

from __future__ import annotations

from math import gcd
from typing import Sequence

Poly = list[int]


def trim(p: Sequence[int]) -> Poly:
    out = list(p)
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def degree(p: Sequence[int]) -> int:
    p = trim(p)
    return -1 if p == [0] else len(p) - 1


def add(p: Sequence[int], q: Sequence[int]) -> Poly:
    if len(p) < len(q):
        p, q = q, p
    out = list(p)
    for i, c in enumerate(q):
        out[i] += c
    return trim(out)


def sub(p: Sequence[int], q: Sequence[int]) -> Poly:
    return add(p, [-c for c in q])


def mul(p: Sequence[int], q: Sequence[int]) -> Poly:
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return trim(out)


def derivative(p: Sequence[int]) -> Poly:
    return trim([i * p[i] for i in range(1, len(p))]) if len(p) > 1 else [0]


def content(p: Sequence[int]) -> int:
    g = 0
    for c in p:
        g = gcd(g, c)
    return g


def primitive(p: Sequence[int]) -> Poly:
    """Divide by the positive content; the sign of every value is preserved."""
    g = content(p)
    return [c // g for c in p] if g > 1 else list(p)


def shift(p: Sequence[int], k: int) -> Poly:
    """Coefficients of ``p(x - k)`` (Horner-style Taylor shift)."""
    out = [0]
    for c in reversed(p):
        # out <- out * (x - k) + c
        nxt = [0] * (len(out) + 1)
        for i, a in enumerate(out):
            nxt[i + 1] += a
            nxt[i] -= k * a
        nxt[0] += c
        out = nxt
    return trim(out)


def dyadic_value(p: Sequence[int], num: int, exp: int) -> int:
    """``p(num / 2**exp) * 2**(exp * deg p)``: same sign as ``p`` at that point."""
    acc = 0
    scale = 1
    # Horner on the homogenised form sum c_i num^i 2^{exp (d-i)}
    d = len(p) - 1
    for i in range(d, -1, -1):
        acc = acc * num + p[i] * scale
        scale <<= exp
    return acc


def sign(v: int) -> int:
    return (v > 0) - (v < 0)


def prem_signed(f: Sequence[int], g: Sequence[int]) -> Poly:
    """Remainder of ``c * f`` by ``g`` for some positive constant ``c``."""
    r = list(f)
    dg = len(g) - 1
    lc = g[-1]
    alc = abs(lc)
    while len(r) - 1 >= dg and r != [0]:
        k = len(r) - 1 - dg
        lead = r[-1]
        # r <- |lc| r - sgn(lc) lead x^k g  kills the leading term, scales by |lc| > 0
        r = [alc * c for c in r]
        s = lead if lc > 0 else -lead
        for i, c in enumerate(g):
            r[i + k] -= s * c
        r = trim(r[:-1]) if len(r) > 1 else [0]
        if r != [0]:
            r = primitive(r)
    return r


def sturm_chain(p: Sequence[int]) -> list[Poly]:
    """Sturm sequence up to positive scalar factors (valid for sign counts)."""
    chain = [primitive(trim(p))]
    d = derivative(chain[0])
    if d == [0]:
        return chain
    chain.append(primitive(d))
    while True:
        r = prem_signed(chain[-2], chain[-1])
        if r == [0]:
            break
        chain.append([-c for c in r])
        if len(r) == 1:
            break
    return chain


def _variations(signs: Sequence[int]) -> int:
    v = 0
    last = 0
    for s in signs:
        if s:
            if last and s != last:
                v += 1
            last = s
    return v


def variations_at(chain: Sequence[Sequence[int]], num: int, exp: int) -> int:
    return _variations([sign(dyadic_value(q, num, exp)) for q in chain])


def variations_at_inf(chain: Sequence[Sequence[int]]) -> int:
    return _variations([sign(q[-1]) for q in chain])


def roots_above(chain: Sequence[Sequence[int]], num: int, exp: int) -> int:
    """Distinct real roots of ``chain[0]`` in ``(num / 2**exp, +inf)``."""
    return variations_at(chain, num, exp) - variations_at_inf(chain)


def cauchy_bound(p: Sequence[int]) -> int:
    """Integer ``B`` with every root strictly inside ``(-B, B)``."""
    p = trim(p)
    lc = abs(p[-1])
    return 2 + max(abs(c) for c in p[:-1]) // lc if len(p) > 1 else 1


def poly_gcd(p: Sequence[int], q: Sequence[int]) -> Poly:
    """Primitive gcd over Z[x] with positive leading coefficient."""
    a, b = primitive(trim(p)), primitive(trim(q))
    if degree(a) < degree(b):
        a, b = b, a
    while b != [0]:
        r = prem_signed(a, b)
        a, b = b, r
    if a == [0]:
        return a
    a = primitive(a)
    return a if a[-1] > 0 else [-c for c in a]


def to_string(p: Sequence[int], var: str = "x") -> str:
    terms = []
    for i in range(len(p) - 1, -1, -1):
        c = p[i]
        if not c:
            continue
        mag = abs(c)
        body = var if i == 1 else f"{var}^{i}" if i > 1 else ""
        coef = "" if (mag == 1 and body) else str(mag)
        sgn = "-" if c < 0 else "+"
        terms.append((sgn, coef + body))
    if not terms:
        return "0"
    head = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    return " ".join([head] + [f"{s} {t}" for s, t in terms[1:]])
