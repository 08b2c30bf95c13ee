"""Dirichlet characters with values in mu_{p-1}, Bernoulli numbers, L-values.

A character of conductor d (p not dividing d) taking values in the
(p-1)-th roots of unity is stored by residues: chi(a) is the Teichmuller
lift of a recorded unit r_a mod p, so the table of r_a determines the
character at every precision.  Generalized Bernoulli numbers are computed
as p-adic limits of the sums (1/(d p^N)) sum_{a<=d p^N} chi(a) a^k, which
avoids exact rational Bernoulli arithmetic; two guard digits make the
limit error analysis elementary.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd

import numpy as np

from .padic import PadicInt, is_odd_prime, teichmuller, teichmuller_table

RESOURCE_GUARD = 10**8


class CharacterTableError(ValueError):
    """The given value table is not a valid primitive character."""


class ResourceGuardError(RuntimeError):
    """A limit sum would exceed the configured resource guard."""


class NonIntegralError(ArithmeticError):
    """A limit sum was unexpectedly not divisible by the required p-power."""

    def __init__(self, msg: str, achieved_precision: int):
        super().__init__(msg)
        self.achieved_precision = achieved_precision


@dataclass(frozen=True)
class DirichletCharacter:
    """Character mod d with chi(a) = teichmuller(residues[a % d]).

    residues has length d; entry 0 marks arguments sharing a factor with d.
    Multiplicativity, primitivity and p-adic unit values are validated on
    construction through build_validate.
    """

    p: int
    d: int
    residues: tuple[int, ...]

    @property
    def order(self) -> int:
        o = 1
        for r in self.residues:
            if r:
                k, x = 1, r
                while x != 1:
                    x = x * r % self.p
                    k += 1
                o = o * k // gcd(o, k)
        return o

    def is_odd(self) -> bool:
        return self.residues[-1 % self.d] == self.p - 1

    def is_even(self) -> bool:
        return not self.is_odd()

    def residue(self, a: int) -> int:
        """chi(a) mod p (0 when gcd(a, d) > 1)."""
        return self.residues[a % self.d]

    def value(self, a: int, precision: int) -> PadicInt:
        """chi(a) in mu_{p-1}, mod p**precision."""
        r = self.residue(a)
        if r == 0:
            return PadicInt(self.p, precision, 0)
        return teichmuller(r, self.p, precision)

    def label(self) -> str:
        return f"chi[{self.d};" + ",".join(str(r) for r in self.residues) + "]"

    def __repr__(self) -> str:
        return f"DirichletCharacter(p={self.p}, d={self.d}, residues={self.residues})"


def trivial_character(p: int) -> DirichletCharacter:
    return DirichletCharacter(p, 1, (1,))


def build_validate(d: int, table: dict[int, int], p: int) -> DirichletCharacter:
    """Validated character of conductor exactly d from a residue table.

    table maps every a in (Z/d)* to the residue mod p of chi(a); the table
    must be multiplicative, unit-valued, and not induced from any proper
    divisor of d (the rejected divisor is reported).
    """
    if not is_odd_prime(p):
        raise ValueError(f"p must be an odd prime, got {p}")
    if d < 1 or d % p == 0:
        raise ValueError(f"conductor must be >= 1 and prime to p, got {d}")
    if d == 1:
        return trivial_character(p)
    normalized = {int(a) % d: int(r) for a, r in table.items()}
    residues = [0] * d
    for a in range(d):
        if gcd(a, d) == 1:
            if a not in normalized:
                raise CharacterTableError(f"missing value at a={a}")
            r = normalized[a] % p
            if r == 0:
                raise CharacterTableError(f"value at a={a} is not a unit mod {p}")
            residues[a] = r
    if residues[1 % d] != 1:
        raise CharacterTableError("chi(1) must be 1")
    for a in range(d):
        for b in range(a, d):
            if residues[a] and residues[b]:
                if residues[a * b % d] != residues[a] * residues[b] % p:
                    raise CharacterTableError(
                        f"table is not multiplicative at ({a}, {b})")
    for ell in _prime_factors(d):
        d2 = d // ell
        if all(residues[a] == 1 for a in range(d) if gcd(a, d) == 1 and a % d2 == 1 % d2):
            raise CharacterTableError(
                f"table is induced from modulus {d2}: not primitive")
    return DirichletCharacter(p, d, tuple(residues))


def character_from_omega_exponents(d: int, exponents: dict[int, int], p: int) -> DirichletCharacter:
    """Ingestion format: chi(a) = omega(g)**e_a with g the least primitive
    root mod p and e_a given mod p-1."""
    g = _least_primitive_root(p)
    table = {int(a): pow(g, int(e) % (p - 1), p) for a, e in exponents.items()}
    return build_validate(d, table, p)


def _prime_factors(m: int) -> list[int]:
    out = []
    f = 2
    while f * f <= m:
        if m % f == 0:
            out.append(f)
            while m % f == 0:
                m //= f
        f += 1
    if m > 1:
        out.append(m)
    return out


@lru_cache(maxsize=64)
def _least_primitive_root(q: int) -> int:
    """Least primitive root modulo q (q an odd prime power or 2, 4)."""
    if q in (1, 2):
        return 1
    if q == 4:
        return 3
    ell = _prime_factors(q)[0]
    phi = q // ell * (ell - 1)
    factors = _prime_factors(phi)
    for g in range(2, q):
        if gcd(g, q) != 1:
            continue
        if all(pow(g, phi // f, q) != 1 for f in factors):
            return g
    raise ArithmeticError(f"no primitive root mod {q}")  # pragma: no cover


def _unit_group_generators(m: int) -> list[tuple[int, int]]:
    """Generators (g, order) of (Z/m)*, lifted by CRT, direct-product exact."""
    gens: list[tuple[int, int]] = []
    for ell in _prime_factors(m):
        e = 0
        mm = m
        while mm % ell == 0:
            mm //= ell
            e += 1
        q = ell**e
        rest = m // q

        def lift(x: int) -> int:
            if rest == 1:
                return x % m
            # CRT: x mod q, 1 mod rest
            inv = pow(rest % q, -1, q) if q > 1 else 0
            return (1 + rest * ((x - 1) * inv % q)) % m

        if ell == 2:
            if e == 2:
                gens.append((lift(3), 2))
            elif e >= 3:
                gens.append((lift(q - 1), 2))
                gens.append((lift(5), 2 ** (e - 2)))
        else:
            g = _least_primitive_root(q)
            gens.append((lift(g), q // ell * (ell - 1)))
    return gens


def characters_mod(m: int, p: int) -> list[DirichletCharacter]:
    """All primitive characters of conductor exactly m with values in mu_{p-1}."""
    import itertools

    if m == 1:
        return [trivial_character(p)]
    if m % p == 0:
        raise ValueError("conductor must be prime to p")
    gens = _unit_group_generators(m)
    h = _least_primitive_root(p)
    choice_sets = []
    for _, order in gens:
        g2 = gcd(order, p - 1)
        choice_sets.append([pow(h, (p - 1) // g2 * t, p) for t in range(g2)])
    out = []
    exponent_tuples = list(itertools.product(*(range(o) for _, o in gens)))
    for values in itertools.product(*choice_sets):
        residues = [0] * m
        for exps in exponent_tuples:
            a = 1
            v = 1
            for (g, _), x, val in zip(gens, exps, values):
                a = a * pow(g, x, m) % m
                v = v * pow(val, x, p) % p
            residues[a] = v
        try:
            out.append(build_validate(m, {a: r for a, r in enumerate(residues) if r},
                                      p))
        except CharacterTableError:
            continue
    out.sort(key=lambda c: c.residues)
    return out


@dataclass(frozen=True)
class ThetaCharacter:
    """theta = chi * omega**(delta+1), required even and nontrivial."""

    chi: DirichletCharacter
    delta: int

    def __post_init__(self) -> None:
        p = self.chi.p
        d = self.delta % (p - 1)
        object.__setattr__(self, "delta", d)
        eps = -1 if self.chi.is_odd() else 1
        if eps * (-1) ** ((d + 1) % 2) != 1:
            raise ValueError("theta = chi * omega^(delta+1) must be even")
        if self.chi.d == 1 and (d + 1) % (p - 1) == 0:
            raise ValueError("theta must be nontrivial")

    @property
    def p(self) -> int:
        return self.chi.p

    def label(self) -> str:
        if self.chi.d == 1:
            return f"omega^{(self.delta + 1) % (self.p - 1)}"
        return f"{self.chi.label()}*omega^{self.delta + 1}"


def divisors(m: int) -> list[int]:
    out = [k for k in range(1, m + 1) if m % k == 0]
    return out


def enumerate_even_theta(p: int, d: int) -> list[ThetaCharacter]:
    """All even nontrivial theta = chi * omega**(delta+1) with the conductor
    of chi dividing d (and values in Z_p)."""
    if d % p == 0:
        raise ValueError("d must be prime to p")
    out = []
    for d2 in divisors(d):
        for chi in characters_mod(d2, p):
            for delta in range(p - 1):
                try:
                    out.append(ThetaCharacter(chi, delta))
                except ValueError:
                    continue
    out.sort(key=lambda t: (t.chi.d, t.chi.residues, t.delta))
    return out


# -- Bernoulli numbers and L-values ----------------------------------------


def _vec_powmod_sum(lo: int, hi: int, k: int, mod: int,
                    d: int, chi_mod: list[int] | None) -> int:
    """sum_{a=lo}^{hi-1} chi(a) a**k mod `mod`, vectorized when safe."""
    if mod <= 2**31 and hi - lo >= 1024:
        total = 0
        chunk = 1 << 20
        cvals = np.array(chi_mod, dtype=np.int64) if chi_mod is not None else None
        for start in range(lo, hi, chunk):
            stop = min(start + chunk, hi)
            a = np.arange(start, stop, dtype=np.int64)
            acc = np.ones_like(a)
            base = a % mod
            e = k
            while e:
                if e & 1:
                    acc = acc * base % mod
                base = base * base % mod
                e >>= 1
            if cvals is not None:
                acc = acc * cvals[a % d] % mod
            total += int(acc.sum())
        return total % mod
    if mod <= 2**40 and hi - lo >= 1024:
        total = 0
        chunk = 1 << 20
        cvals = np.array(chi_mod, dtype=np.int64) if chi_mod is not None else None

        def mulmod(x, y):
            hi_part, lo_part = x >> 20, x & ((1 << 20) - 1)
            return (hi_part * ((y << 20) % mod) + lo_part * y) % mod

        for start in range(lo, hi, chunk):
            stop = min(start + chunk, hi)
            a = np.arange(start, stop, dtype=np.int64)
            acc = np.ones_like(a)
            base = a % mod
            e = k
            while e:
                if e & 1:
                    acc = mulmod(acc, base)
                base = mulmod(base, base)
                e >>= 1
            if cvals is not None:
                acc = mulmod(acc, cvals[a % d])
            s = 0
            for blk in range(0, stop - start, 1 << 21):
                s += int(acc[blk:blk + (1 << 21)].sum())
            total += s
        return total % mod
    total = 0
    for a in range(lo, hi):
        c = 1 if chi_mod is None else chi_mod[a % d]
        if c:
            total += c * pow(a, k, mod)
    return total % mod


def bernoulli_chi(chi: DirichletCharacter, k: int, precision: int,
                  guard: int = 2) -> PadicInt:
    """Generalized Bernoulli number B_{k,chi} mod p**precision.

    Computed as the p-adic limit (1/(d p^N)) sum_{a=1}^{d p^N} chi(a) a**k
    with N = precision + guard, everything mod p**(precision + N); the
    divisibility of the sum by p**N is checked at run time.  Returns exact
    0 on parity mismatch (except the classical d=1, k=1 case).
    """
    p, d = chi.p, chi.d
    if k < 0 or precision < 1 or guard < 2:
        raise ValueError("need k >= 0, precision >= 1, guard >= 2")
    parity = -1 if chi.is_odd() else 1
    if parity != (-1) ** (k % 2) and not (d == 1 and k == 1):
        return PadicInt(p, precision, 0)
    n_lim = precision + guard
    if d * p**n_lim > RESOURCE_GUARD:
        raise ResourceGuardError(
            f"limit sum length {d * p**n_lim} exceeds guard {RESOURCE_GUARD}")
    big = precision + n_lim
    mod = p**big
    if d == 1:
        chi_mod = None
    else:
        tei = teichmuller_table(p, big)
        chi_mod = [tei[r] if r else 0 for r in chi.residues]
    s = _vec_powmod_sum(1, d * p**n_lim + 1, k, mod, d, chi_mod)
    v = 0
    x = s
    while x and x % p == 0 and v < n_lim:
        x //= p
        v += 1
    if s != 0 and v < n_lim:
        raise NonIntegralError(
            f"limit sum has valuation {v} < {n_lim}", achieved_precision=big - n_lim + v)
    b = (s // p**n_lim) * pow(d, -1, p**precision)
    return PadicInt(p, precision, b)


def lp_value(theta: ThetaCharacter, k: int, precision: int) -> PadicInt:
    """L_p(-k, theta) = -(1 - chi(p) p**k) B_{k+1,chi} / (k+1) mod p**precision,
    for k congruent to delta mod p-1."""
    p = theta.p
    chi = theta.chi
    if k % (p - 1) != theta.delta % (p - 1):
        raise ValueError(f"need k = delta mod p-1, got k={k}, delta={theta.delta}")
    v_k1 = 0
    k1 = k + 1
    while k1 % p == 0:
        k1 //= p
        v_k1 += 1
    work = precision + v_k1
    bern = bernoulli_chi(chi, k + 1, work)
    mod = p**work
    chi_p = 1 if chi.d == 1 else teichmuller(chi.residue(p), p, work).value
    euler = (1 - chi_p * pow(p, k, mod)) % mod if k < work else 1
    num = (-euler * bern.value) % mod
    if num % p**v_k1 != 0:
        raise NonIntegralError("L-value numerator not divisible by v_p(k+1)",
                               achieved_precision=work - v_k1)
    out = (num // p**v_k1) * pow(k1, -1, p**precision)
    return PadicInt(p, precision, out)
