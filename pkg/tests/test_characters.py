import pytest

from leopoldt.characters import (
    CharacterTableError,
    NonIntegralError,
    ResourceGuardError,
    ThetaCharacter,
    bernoulli_chi,
    build_validate,
    character_from_omega_exponents,
    characters_mod,
    enumerate_even_theta,
    lp_value,
    trivial_character,
)
from leopoldt.padic import teichmuller


def test_build_validate_quadratic_mod4():
    chi = build_validate(4, {1: 1, 3: 4}, 5)
    assert chi.is_odd() and chi.order == 2
    assert chi.residue(3) == 4 and chi.residue(2) == 0
    assert chi.value(3, 2).value == 24  # -1 mod 25


def test_trivial_character():
    chi = build_validate(1, {}, 5)
    assert chi.d == 1 and chi.residue(5) == 1 and chi.is_even()


def test_rejects_imprimitive_with_witness():
    # chi_4 induced to modulus 8: constant on 1 mod 4
    with pytest.raises(CharacterTableError, match="modulus 4"):
        build_validate(8, {1: 1, 3: 4, 5: 1, 7: 4}, 5)


def test_rejects_non_multiplicative():
    with pytest.raises(CharacterTableError, match="multiplicative"):
        build_validate(5, {1: 1, 2: 2, 3: 2, 4: 1}, 7)


def test_rejects_conductor_divisible_by_p():
    with pytest.raises(ValueError):
        build_validate(10, {1: 1, 3: 1, 7: 1, 9: 1}, 5)


def test_omega_exponent_ingestion():
    # least primitive root mod 5 is 2; omega(2)^2 = omega(4) = -1
    chi = character_from_omega_exponents(4, {1: 0, 3: 2}, 5)
    assert chi.residue(3) == 4


def test_characters_mod_counts():
    # mod 4: one nontrivial character, quadratic
    assert len(characters_mod(4, 5)) == 1
    # mod 2 carries no primitive character
    assert characters_mod(2, 5) == []
    # mod 3 at p = 7: the quadratic character survives (order 2 | 6)
    chis = characters_mod(3, 7)
    assert len(chis) == 1 and chis[0].residue(2) == 6
    # mod 5 at p = 11: characters have order dividing gcd(4, 10) = 2
    chis = characters_mod(5, 11)
    assert all(c.order == 2 for c in chis) and len(chis) == 1


def test_enumerate_even_theta():
    assert [t.label() for t in enumerate_even_theta(5, 1)] == ["omega^2"]
    assert len(enumerate_even_theta(37, 1)) == 17
    assert len(enumerate_even_theta(3, 1)) == 0
    labels = [t.label() for t in enumerate_even_theta(5, 4)]
    assert "omega^2" in labels and len(labels) == 3
    for theta in enumerate_even_theta(5, 4):
        eps = -1 if theta.chi.is_odd() else 1
        assert eps * (-1) ** ((theta.delta + 1) % 2) == 1


def test_theta_parity_validation():
    chi4 = build_validate(4, {1: 1, 3: 4}, 5)
    ThetaCharacter(chi4, 0)
    with pytest.raises(ValueError):
        ThetaCharacter(chi4, 1)  # chi odd needs delta even
    with pytest.raises(ValueError):
        ThetaCharacter(trivial_character(5), 3)  # omega^4 = trivial


def test_bernoulli_first_values():
    # B_{1,chi} = -1/3 for the odd quadratic character mod 3
    chi3 = build_validate(3, {1: 1, 2: 4}, 5)
    assert bernoulli_chi(chi3, 1, 3).value == (-pow(3, -1, 125)) % 125
    # parity mismatch: chi_4 odd, k = 2 even
    chi4 = build_validate(4, {1: 1, 3: 4}, 5)
    assert bernoulli_chi(chi4, 2, 2).value == 0
    assert bernoulli_chi(chi4, 1, 2).value != 0


def test_bernoulli_ordinary_von_staudt():
    # B_2 = 1/6 and B_4 = -1/30 wherever they are p-integral
    for p in (5, 7):
        triv = trivial_character(p)
        q = p**3
        assert bernoulli_chi(triv, 2, 3).value == pow(6, -1, q)
    triv7 = trivial_character(7)
    assert bernoulli_chi(triv7, 4, 3).value == (-pow(30, -1, 343)) % 343
    # (p-1) | k: von Staudt pole is detected, not silently wrong
    with pytest.raises(NonIntegralError):
        bernoulli_chi(trivial_character(5), 4, 3)


def test_bernoulli_exceptional_b1():
    # B_{1,1} = 1/2 despite the parity mismatch
    triv = trivial_character(5)
    assert bernoulli_chi(triv, 1, 3).value == pow(2, -1, 125)


def test_bernoulli_guard_stability():
    chi3 = build_validate(3, {1: 1, 2: 4}, 5)
    for k in (1, 3, 5):
        a = bernoulli_chi(chi3, k, 3, guard=2)
        b = bernoulli_chi(chi3, k, 3, guard=3)
        assert a.value == b.value


def test_bernoulli_resource_guard():
    with pytest.raises(ResourceGuardError):
        bernoulli_chi(trivial_character(101), 2, 8)


def test_lp_value_structure():
    # lp_value = -(1 - chi(p) p^k) B_{k+1,chi}/(k+1) by construction
    p = 5
    chi3 = build_validate(3, {1: 1, 2: 4}, p)
    theta = ThetaCharacter(chi3, 0)  # chi3 odd, delta even
    k = 8
    got = lp_value(theta, k, 3)
    bern = bernoulli_chi(chi3, k + 1, 3)
    chi_p = teichmuller(chi3.residue(p), p, 3).value
    expect = (-(1 - chi_p * pow(p, k, 125)) * bern.value *
              pow(k + 1, -1, 125)) % 125
    assert got.value == expect
    with pytest.raises(ValueError):
        lp_value(theta, 1, 3)


def test_lp_value_with_p_dividing_k_plus_one():
    # k = 4 has k+1 = 5: the guard digit makes the division exact
    p = 5
    chi3 = build_validate(3, {1: 1, 2: 4}, p)
    theta = ThetaCharacter(chi3, 0)
    got = lp_value(theta, 4, 3)
    bern = bernoulli_chi(chi3, 5, 4)
    chi_p = teichmuller(chi3.residue(p), p, 4).value
    num = (-(1 - chi_p * pow(p, 4, 5**4)) * bern.value) % 5**4
    assert num % 5 == 0
    assert got.value == (num // 5) % 125


def test_lp_value_trivial_chi_euler_factor():
    # d = 1: chi(p) = 1 and the Euler factor is 1 - p^k
    p = 5
    theta = ThetaCharacter(trivial_character(p), 1)
    k = 1
    got = lp_value(theta, k, 3)
    bern = bernoulli_chi(trivial_character(p), 2, 3)
    expect = (-(1 - 5) * bern.value * pow(2, -1, 125)) % 125
    assert got.value == expect


def test_kummer_congruence_neighbours():
    # consecutive k and k + (p-1): values agree mod p once Euler factors align
    p = 5
    theta = ThetaCharacter(trivial_character(p), 1)
    a = lp_value(theta, 1, 1)
    b = lp_value(theta, 5, 1)
    assert a.value % p == b.value % p
