"""Positive definite binary quadratic forms under Gamma_0(N).

A form ``(a, b, c)`` stands for a x^2 + b xy + c y^2 with a > 0 and
D = b^2 - 4ac < 0.  Matrices act on the right,

    (Q . g)(x, y) = Q(alpha x + beta y, gamma x + delta y),

so the root tau_Q of Q(x, 1) moves to g^{-1} tau_Q.  Everything here is exact
integer or rational arithmetic.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt
from typing import Optional

from .levels import check_level


@dataclass(frozen=True, order=True)
class QuadForm:
    a: int
    b: int
    c: int

    def __post_init__(self):
        if self.a <= 0 or self.b * self.b - 4 * self.a * self.c >= 0:
            raise ValueError(f"{tuple(self)} is not positive definite")

    def __iter__(self):
        return iter((self.a, self.b, self.c))

    def __str__(self):
        return f"({self.a},{self.b},{self.c})"

    @property
    def disc(self):
        return self.b * self.b - 4 * self.a * self.c

    @property
    def content(self):
        return gcd(gcd(self.a, self.b), self.c)

    def primitive(self):
        m = self.content
        return QuadForm(self.a // m, self.b // m, self.c // m)

    def __call__(self, x, y):
        return self.a * x * x + self.b * x * y + self.c * y * y

    @property
    def tau(self):
        return CMPoint(Fraction(-self.b, 2 * self.a), Fraction(-self.disc, 4 * self.a * self.a))


@dataclass(frozen=True)
class CMPoint:
    """A point re + i*sqrt(im2) of the upper half plane with re, im2 rational."""

    re: Fraction
    im2: Fraction

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im2", Fraction(self.im2))
        if self.im2 <= 0:
            raise ValueError("point must lie in the upper half plane")

    def dist2(self, center):
        """|tau - center|^2 for a rational center."""
        return (self.re - center) ** 2 + self.im2

    def to_complex(self, ctx=None):
        if ctx is None:
            return complex(float(self.re), float(self.im2) ** 0.5)
        return ctx.mpc(ctx.mpf(self.re.numerator) / self.re.denominator,
                       ctx.sqrt(ctx.mpf(self.im2.numerator) / self.im2.denominator))

    def __str__(self):
        return f"{self.re} + i*sqrt({self.im2})"


@dataclass(frozen=True)
class Mat2:
    """Integer 2x2 matrix (alpha, beta; gamma, delta).

    ``level`` records the N for which gamma = 0 (mod N) has been checked; it
    does not take part in equality.
    """

    alpha: int
    beta: int
    gamma: int
    delta: int
    level: Optional[int] = field(default=None, compare=False)

    @classmethod
    def identity(cls):
        return cls(1, 0, 0, 1)

    @classmethod
    def T(cls, m=1):
        return cls(1, m, 0, 1)

    @property
    def det(self):
        return self.alpha * self.delta - self.beta * self.gamma

    def entries(self):
        return (self.alpha, self.beta, self.gamma, self.delta)

    def __matmul__(self, o):
        a, b, c, d = self.entries()
        e, f, g, h = o.entries()
        lvl = self.level if self.level == o.level else None
        return Mat2(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h, lvl)

    def inverse(self):
        if self.det != 1:
            raise ValueError("only determinant-one matrices are inverted")
        return Mat2(self.delta, -self.beta, -self.gamma, self.alpha, self.level)

    def in_gamma0(self, N):
        return self.det == 1 and self.gamma % N == 0

    def tagged(self, N):
        if not self.in_gamma0(N):
            raise ValueError(f"{self.entries()} is not in Gamma_0({N})")
        return Mat2(*self.entries(), level=N)

    def apply(self, tau):
        """Moebius image of a CMPoint: exact real part and squared imaginary part."""
        a, b, c, d = self.entries()
        x, Y = tau.re, tau.im2
        den = (c * x + d) ** 2 + c * c * Y
        re = ((a * x + b) * (c * x + d) + a * c * Y) / den
        return CMPoint(re, Y * self.det ** 2 / den ** 2)

    def apply_rational(self, x):
        """Image of a rational point or None (standing for infinity)."""
        a, b, c, d = self.entries()
        if x is None:
            return None if c == 0 else Fraction(a, c)
        den = c * x + d
        if den == 0:
            return None
        return (a * x + b) / den


def form_invariants(Q):
    m = Q.content
    return {"D": Q.disc, "content": m, "primitive": Q.primitive(), "tau": Q.tau}


def act(Q, g):
    if g.det != 1:
        raise ValueError("act requires a determinant-one matrix")
    al, be, ga, de = g.entries()
    a, b, c = Q
    a2 = Q(al, ga)
    b2 = 2 * a * al * be + b * (al * de + be * ga) + 2 * c * ga * de
    c2 = Q(be, de)
    return QuadForm(a2, b2, c2)


def omega(Q, N):
    """Order of the stabiliser of Q in Gamma_0(N) modulo +-1."""
    check_level(N)
    P = Q.primitive()
    if P.a % N:
        return 1
    if P.disc == -4:
        return 2
    if P.disc == -3:
        return 3
    return 1


# ---------------------------------------------------------------------------
# region data


def _signed_inverse(x, N):
    from .numtheory import signed_residue
    return signed_residue(pow(x, -1, N), N)


@lru_cache(maxsize=None)
def arc_indices(N):
    """The k with an arc |tau - k/N| = 1/N bounding the region."""
    check_level(N)
    if N <= 4:
        return (-1, 1)
    from .numtheory import symmetric_residues
    return tuple(symmetric_residues(N))


@lru_cache(maxsize=None)
def arc_matrix(N, k):
    """The element (k, (k k' - 1)/N; N, k') with k' the inverse of k mod N.

    Acting by it on a form whose root lies inside the disc |tau - k/N| < 1/N
    strictly increases the imaginary part of the root.
    """
    kinv = k if N <= 4 else _signed_inverse(k, N)
    return Mat2(k, (k * kinv - 1) // N, N, kinv, N)


def _arc_value(Q, N, k):
    """N^2 c + b k N + (k^2 - 1) a: the sign of |tau_Q - k/N|^2 - 1/N^2."""
    return N * N * Q.c + Q.b * k * N + (k * k - 1) * Q.a


def _prime_tables(p):
    from .funddomain import build_domain
    return build_domain(p)


def is_reduced(Q, N):
    check_level(N)
    a, b, c = Q
    if abs(b) > a:
        return False
    if N <= 4:
        if abs(b) > N * c:
            return False
        if (abs(b) == a or abs(b) == N * c) and b < 0:
            return False
        return True
    p = N
    dom = _prime_tables(p)
    vals = {k: _arc_value(Q, p, k) for k in dom.S_p}
    if any(v < 0 for v in vals.values()):
        return False
    if (abs(b) == a or abs(b) == p * c) and b < 0:
        return False
    for k, v in vals.items():
        if v != 0:
            continue
        if k in dom.E2:
            if p * b < -2 * k * a:
                return False
        elif k not in (1, -1):
            if p * b < -(2 * dom.k2[k] + 1) * a:
                return False
    if p * p * Q.disc == -3 * a * a:
        for k in dom.S_p:
            if k == 1 or k in dom.E3 or k == dom.k3[k]:
                continue
            if p * b == (1 - 2 * k) * a:
                return False
    return True


def _translate(Q):
    a, b = Q.a, Q.b
    m = (a - b) // (2 * a)
    return m


def _in_closure(Q, N):
    if abs(Q.b) > Q.a:
        return False
    return all(_arc_value(Q, N, k) >= 0 for k in arc_indices(N))


def reduce(Q, N):
    """Return (Qred, g) with Qred reduced and Qred = act(Q, g), g in Gamma_0(N)."""
    check_level(N)
    G = Mat2.identity()
    cur = Q
    while True:
        m = _translate(cur)
        if m:
            cur = act(cur, Mat2.T(m))
            G = G @ Mat2.T(m)
        worst, kk = 0, None
        for k in arc_indices(N):
            v = _arc_value(cur, N, k)
            if v < worst:
                worst, kk = v, k
        if kk is None:
            break
        g = arc_matrix(N, kk)
        cur = act(cur, g)
        G = G @ g
    if is_reduced(cur, N):
        return cur, G.tagged(N)
    # the root sits on the boundary: search the boundary images of equal height
    moves = [Mat2.T(1), Mat2.T(-1)] + [arc_matrix(N, k) for k in arc_indices(N)]
    seen = {cur: G}
    queue = deque([cur])
    while queue:
        f = queue.popleft()
        for g in moves:
            h = act(f, g)
            if h.a != f.a or h in seen or not _in_closure(h, N):
                continue
            seen[h] = seen[f] @ g
            queue.append(h)
    hits = [f for f in seen if is_reduced(f, N)]
    if len(hits) != 1:
        raise RuntimeError(f"boundary resolution of {Q} at level {N} found {len(hits)} reduced forms")
    f = hits[0]
    return f, seen[f].tagged(N)


def equivalent(Q1, Q2, N):
    return reduce(Q1, N)[0] == reduce(Q2, N)[0]


# ---------------------------------------------------------------------------
# enumeration


def _check_disc(D):
    if D >= 0 or D % 4 not in (0, 1):
        raise ValueError(f"{D} is not a negative discriminant")


def _forms_with(D, a_max, b_bound):
    """Forms (a, b, c) of discriminant D with a <= a_max and |b| <= b_bound(a)."""
    for a in range(1, a_max + 1):
        lim = b_bound(a)
        for b in range(-lim, lim + 1):
            num = b * b - D
            if num % (4 * a) == 0:
                yield QuadForm(a, b, num // (4 * a))


@lru_cache(maxsize=4096)
def _enumerate_reduced(D, N):
    A = -D
    found = set()
    if N in (2, 3):
        cands = _forms_with(D, A // (4 - N), lambda a: a)
    elif N == 4:
        cands = list(_forms_with(D, A, lambda a: a))
        # large a only occurs near the cusps 0 and 1/2, where c <= |D|/4
        for c in range(1, A // 4 + 1):
            for b in range(-4 * c, 4 * c + 1):
                num = b * b - D
                if num % (4 * c) == 0:
                    cands.append(QuadForm(num // (4 * c), b, c))
    else:
        p = N
        a_max = max(isqrt(p * p * A // 3) + 1, A // 3)
        cands = _forms_with(D, a_max, lambda a: a)
    for Q in cands:
        if is_reduced(Q, N):
            found.add(Q)
    return frozenset(found)


def enumerate_reduced(D, N):
    """All reduced forms of discriminant D, imprimitive ones included."""
    _check_disc(D)
    check_level(N)
    return set(_enumerate_reduced(D, N))


def sl2_reduced_forms(D):
    """Classical reduced forms |b| <= a <= c (b >= 0 on ties), imprimitive included."""
    _check_disc(D)
    out = []
    a = 1
    while 3 * a * a <= -D:
        for b in range(-a + 1, a + 1):
            num = b * b - D
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            out.append(QuadForm(a, b, c))
        a += 1
    return out


def _complete(x, y):
    """A determinant-one matrix with first column (x, y), gcd(x, y) = 1."""
    g, s, t = _egcd(x, y)
    assert g == 1
    # x*s + y*t = 1, so (x, -t; y, s) has determinant 1
    return Mat2(x, -t, y, s)


def _egcd(a, b):
    if b == 0:
        return (a, 1, 0) if a >= 0 else (-a, -1, 0)
    g, s, t = _egcd(b, a % b)
    return g, t, s - (a // b) * t


@lru_cache(maxsize=None)
def coset_reps(N):
    """Representatives g_i with SL_2(Z) = union of g_i Gamma_0(N).

    The coset g Gamma_0(N) is determined by the first column of g up to units
    mod N, i.e. by a point of P^1(Z/NZ).
    """
    check_level(N)
    units = [t for t in range(1, N) if gcd(t, N) == 1]
    seen = set()
    reps = []
    for x in range(N):
        for y in range(N):
            if gcd(gcd(x, y), N) != 1:
                continue
            key = min(((t * x) % N, (t * y) % N) for t in units)
            if key in seen:
                continue
            seen.add(key)
            lx, ly = x, y
            while gcd(lx, ly) != 1:
                ly += N
            reps.append(_complete(lx, ly))
    return tuple(reps)


def enumerate_reduced_via_cosets(D, N):
    """Reduced forms obtained from the SL_2(Z)-reduced ones and coset representatives."""
    _check_disc(D)
    check_level(N)
    out = set()
    for Q in sl2_reduced_forms(D):
        for g in coset_reps(N):
            out.add(reduce(act(Q, g), N)[0])
    return out


def enumerate_classes(D, N):
    """Representatives of the Gamma_0(N)-classes of forms of discriminant D with N | a."""
    return {Q for Q in enumerate_reduced(D, N) if Q.a % N == 0}


def class_number_H(D, N):
    return sum((Fraction(1, omega(Q, N)) for Q in enumerate_classes(D, N)), Fraction(0))
