"""Pseudo-polynomials: finite sums  sum_i c_i (1+T)**a_i  with p-adic exponents.

Exponents are carried modulo p**M (exponent precision M), coefficients
modulo p**n.  Term-level operator actions are exact, and equality testing
is three-valued: a comparison whose outcome depends on digits beyond the
exponent precision raises IndecisiveError instead of guessing.
"""

from __future__ import annotations

from .padic import (
    PadicInt,
    PrecisionError,
    is_odd_prime,
    kappa_exponent,
    require_generator,
    teichmuller_table,
)
from .ring import RingElem, k_index


class IndecisiveError(ValueError):
    """Exponent precision too small to decide the comparison (never guesses)."""


class PseudoPoly:
    """sum of c * (1+T)**a with exponents pairwise distinct mod p**M.

    Terms with equal exponent residues are merged on construction and zero
    coefficients dropped, so the representation is canonical for the given
    precisions (n for coefficients, M for exponents).  When two terms with
    nonzero coefficients collide at the exponent precision, the merge may
    misrepresent a pseudo-polynomial whose true exponents differ beyond
    precision M: the object is then marked `collided`, and equality tests
    involving it escalate rather than answer "equal".
    """

    __slots__ = ("p", "n", "M", "terms", "collided")

    def __init__(self, p: int, n: int, M: int, terms, collided: bool = False):
        if not is_odd_prime(p):
            raise ValueError(f"p must be an odd prime, got {p}")
        if n < 1 or M < 1:
            raise ValueError("precisions must be >= 1")
        self.p = p
        self.n = n
        self.M = M
        pn = p**n
        qm = p**M
        merged: dict[int, int] = {}
        nonzero_hits: dict[int, int] = {}
        for c, a in terms:
            if isinstance(a, PadicInt):
                if a.p != p:
                    raise ValueError("mixed primes")
                if a.precision < M:
                    raise PrecisionError(f"exponent needs precision >= {M}")
                a = a.value
            key = a % qm
            merged[key] = (merged.get(key, 0) + c) % pn
            if c % pn:
                nonzero_hits[key] = nonzero_hits.get(key, 0) + 1
        self.collided = collided or any(v > 1 for v in nonzero_hits.values())
        self.terms: tuple[tuple[int, int], ...] = tuple(
            (c, a) for a, c in sorted(merged.items()) if c != 0)

    def is_zero(self) -> bool:
        return not self.terms

    def exponents(self) -> tuple[PadicInt, ...]:
        return tuple(PadicInt(self.p, self.M, a) for _, a in self.terms)

    def _same(self, other: "PseudoPoly") -> None:
        if (self.p, self.n, self.M) != (other.p, other.n, other.M):
            raise ValueError("pseudo-polynomials live in different contexts")

    def __add__(self, other: "PseudoPoly") -> "PseudoPoly":
        self._same(other)
        return PseudoPoly(self.p, self.n, self.M, self.terms + other.terms,
                          collided=self.collided or other.collided)

    def __neg__(self) -> "PseudoPoly":
        return PseudoPoly(self.p, self.n, self.M, [(-c, a) for c, a in self.terms],
                          collided=self.collided)

    def __sub__(self, other: "PseudoPoly") -> "PseudoPoly":
        return self + (-other)

    def __mul__(self, other: "PseudoPoly") -> "PseudoPoly":
        self._same(other)
        prods = [(c1 * c2, a1 + a2) for c1, a1 in self.terms for c2, a2 in other.terms]
        return PseudoPoly(self.p, self.n, self.M, prods,
                          collided=self.collided or other.collided)

    def scale(self, c: int) -> "PseudoPoly":
        return PseudoPoly(self.p, self.n, self.M, [(c * x, a) for x, a in self.terms],
                          collided=self.collided)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PseudoPoly):
            return NotImplemented
        return (self.p, self.n, self.M, self.terms) == (other.p, other.n, other.M, other.terms)

    def __hash__(self) -> int:
        return hash((self.p, self.n, self.M, self.terms))

    def __repr__(self) -> str:
        body = " + ".join(f"{c}*(1+T)^{a}" for c, a in self.terms) or "0"
        return f"PseudoPoly(p={self.p}, n={self.n}, M={self.M}: {body})"


def equal_test(lhs: PseudoPoly, rhs: PseudoPoly, n: int) -> bool:
    """Decide lhs = rhs mod (p**n, omega_{N+1}) by coefficient comparison.

    With all exponents distinct at the carried precision, the difference
    vanishes iff every coefficient does (N is the pairwise valuation bound
    of the exponent differences, below the precision by hypothesis).  When
    a "true" answer would lean on a collision, either one recorded at
    construction time or a cross-side cancellation at a shared residue,
    the outcome depends on exponent digits beyond precision M:
    IndecisiveError, never a wrong boolean.  "False" is always safe:
    splitting a merged residue class cannot make a nonzero total vanish.
    """
    lhs._same(rhs)
    if n > lhs.n:
        raise PrecisionError(f"coefficients only known mod p^{lhs.n}")
    pn = lhs.p**n
    tainted = lhs.collided or rhs.collided
    if lhs.terms == rhs.terms and not tainted:
        return True
    groups: dict[int, list[int]] = {}
    for c, a in lhs.terms:
        groups.setdefault(a, []).append(c)
    for c, a in rhs.terms:
        groups.setdefault(a, []).append(-c)
    cancelling = False
    for cs in groups.values():
        if sum(cs) % pn != 0:
            return False
        if len(cs) > 1 and any(c % pn != 0 for c in cs):
            cancelling = True
    if tainted or cancelling:
        raise IndecisiveError(
            "terms collide at exponent precision M; raise M to decide")
    return True


def to_ring(f: PseudoPoly, n: int, m: int) -> RingElem:
    """Image in R(n, m): binomial coordinate [a]_m picks up each coefficient."""
    if m > f.M:
        raise PrecisionError(f"exponents only known mod p^{f.M}")
    if n > f.n:
        raise PrecisionError(f"coefficients only known mod p^{f.n}")
    q = f.p**m
    b = [0] * q
    for c, a in f.terms:
        b[a % q] += c
    return RingElem.from_binomial(f.p, n, m, b)


def apply_derivative(f: PseudoPoly) -> PseudoPoly:
    """D = (1+T) d/dT: multiply each coefficient by its exponent.

    The exponent is only known mod p**M, so the coefficient precision of
    the result is min(n, M).
    """
    n2 = min(f.n, f.M)
    return PseudoPoly(f.p, n2, f.M, [(c * a, a) for c, a in f.terms],
                      collided=f.collided)


def apply_unit_part(f: PseudoPoly) -> PseudoPoly:
    """U: delete terms whose exponent is divisible by p."""
    return PseudoPoly(f.p, f.n, f.M,
                      [(c, a) for c, a in f.terms if a % f.p != 0],
                      collided=f.collided)


def apply_isotypic(f: PseudoPoly, delta: int) -> PseudoPoly:
    """gamma_delta: terms (eta**delta c / (p-1), eta a) over eta in mu_{p-1}."""
    p = f.p
    delta %= p - 1
    tei_n = teichmuller_table(p, f.n)
    tei_m = teichmuller_table(p, f.M)
    pn = p**f.n
    inv = pow(p - 1, -1, pn)
    out = []
    for c, a in f.terms:
        for r in range(1, p):
            coef = (pow(tei_n[r], delta, pn) * c * inv) % pn
            out.append((coef, tei_m[r] * a))
    return PseudoPoly(p, f.n, f.M, out, collided=f.collided)


def apply_leopoldt(f: PseudoPoly, delta: int, kappa: int,
                   out_precision: int | None = None) -> PseudoPoly:
    """Gamma_delta on terms: unit exponents a map to Log_p(a)/Log_p(kappa).

    Output exponents live at precision out_precision <= M - 1.
    """
    p = f.p
    require_generator(kappa, p)
    if f.M < 2:
        raise PrecisionError("need exponent precision M >= 2 for Gamma")
    m_out = f.M - 1 if out_precision is None else out_precision
    if m_out > f.M - 1:
        raise PrecisionError("Gamma determines exponents only mod p^(M-1)")
    delta %= p - 1
    tei_n = teichmuller_table(p, f.n)
    pn = p**f.n
    kp = PadicInt(p, f.M, kappa)
    out = []
    for c, a in f.terms:
        if a % p == 0:
            continue
        e = kappa_exponent(PadicInt(p, f.M, a), kp, f.M - 1)
        coef = (c * pow(tei_n[a % p], delta, pn)) % pn
        out.append((coef, e.value % p**m_out))
    return PseudoPoly(p, f.n, m_out, out, collided=f.collided)


def interp_check(f: PseudoPoly, delta: int, s: PadicInt, j: int, kappa: int) -> bool:
    """Interpolation congruence at precision p**(j+1).

    Left side: Gamma_delta(f)(kappa**s - 1) = sum over unit exponents of
    c * omega(a)**delta * <a>**s.  Right side: the exponent moment
    sum c * a**k for k = [s]_{j+1} + d_j p**(j+1).  Both are evaluated
    exactly and compared mod p**(j+1).
    """
    p = f.p
    require_generator(kappa, p)
    w = j + 1
    if f.M < w or f.n < w:
        raise PrecisionError(f"need precisions >= {w}")
    pw = p**w
    tei = teichmuller_table(p, w)
    s_red = s.value % p**w if s.precision >= w else None
    if s_red is None:
        raise PrecisionError(f"need s mod p^{w}")
    delta %= p - 1
    lhs = 0
    for c, a in f.terms:
        if a % p == 0:
            continue
        om = tei[a % p]
        ahat = (a * pow(om, -1, pw)) % pw
        lhs = (lhs + c * pow(om, delta, pw) * pow(ahat, s_red, pw)) % pw
    k = k_index(PadicInt(p, w, s_red), delta, j)
    rhs = 0
    for c, a in f.terms:
        rhs = (rhs + c * pow(a, k, pw)) % pw
    return lhs == rhs
