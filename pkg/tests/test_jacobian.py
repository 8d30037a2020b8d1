import random

import pytest

from freeaut import (
    DomainError,
    FreeAlgebra,
    KzEndo,
    NCPoly,
    NotXLinearError,
    PolyRing,
    QQ,
    TensorElem,
    abelianize_endo,
    builtin,
    jacobian_full,
    jacobian_linear,
    linear_profile,
    partial_derivative,
    specialize_pair_matrix,
    tensor_to_pair_poly,
)
from support import rand_linear_endo, rand_nc, rand_word

ALG = FreeAlgebra(QQ, ("x", "y"))
X, Y = ALG.gens()
Z = ALG.z()
ONE = ALG.one


def tensor(left, right):
    return TensorElem.from_pair(left, right)


def test_single_occurrence_derivatives():
    f = X * Z * Y
    assert partial_derivative(f, 0) == tensor(ONE, Z * Y)
    assert partial_derivative(f, 1) == tensor(X * Z, ONE)


def test_two_positions():
    f = X * Y * X
    assert partial_derivative(f, 0) == tensor(ONE, Y * X) + tensor(X * Y, ONE)


def test_derivative_with_respect_to_z():
    f = Z * X * Z
    assert partial_derivative(f, 0) == tensor(Z, Z)
    assert partial_derivative(f, 2) == tensor(ONE, X * Z) + tensor(Z * X, ONE)


def test_absent_variable_gives_zero():
    rng = random.Random(53)
    for _ in range(200):
        w = tuple(l for l in rand_word(ALG, rng) if l != 1)
        f = NCPoly(ALG, {w: QQ(1)})
        assert partial_derivative(f, 1).is_zero()


def test_unknown_letter_rejected():
    with pytest.raises(DomainError):
        partial_derivative(X, 3)


def test_linearity_of_derivative():
    rng = random.Random(59)
    for _ in range(200):
        f = rand_nc(ALG, rng)
        g = rand_nc(ALG, rng)
        for i in range(3):
            assert partial_derivative(f + g, i) == partial_derivative(
                f, i
            ) + partial_derivative(g, i)


def test_prefix_suffix_leibniz_on_words():
    rng = random.Random(61)
    for _ in range(500):
        u = rand_word(ALG, rng)
        v = rand_word(ALG, rng)
        i = rng.randint(0, 2)
        fu = NCPoly(ALG, {u: QQ(1)})
        fv = NCPoly(ALG, {v: QQ(1)})
        got = {(l, r): c for l, r, c in partial_derivative(fu * fv, i).terms()}
        expected: dict = {}
        for l, r, c in partial_derivative(fu, i).terms():
            key = (l, r + v)
            expected[key] = expected.get(key, 0) + c
        for l, r, c in partial_derivative(fv, i).terms():
            key = (u + l, r)
            expected[key] = expected.get(key, 0) + c
        expected = {k: c for k, c in expected.items() if c}
        assert got == expected


def test_jacobian_full_identity():
    jac = jacobian_full(KzEndo.identity(ALG))
    for i in range(2):
        for j in range(2):
            expected = tensor(ONE, ONE) if i == j else TensorElem.zero(ALG)
            assert jac[i][j] == expected


def test_jacobian_full_examples():
    phi = KzEndo(ALG, (X + Z * Y * Z, Y))
    jac = jacobian_full(phi)
    assert jac[0][0] == tensor(ONE, ONE)
    assert jac[0][1] == TensorElem.zero(ALG)
    assert jac[1][0] == tensor(Z, Z)
    assert jac[1][1] == tensor(ONE, ONE)

    psi = KzEndo(ALG, (X + Y * Y, Y))
    jac = jacobian_full(psi)
    assert jac[1][0] == tensor(ONE, Y) + tensor(Y, ONE)


def test_jacobian_linear_anick():
    jac = jacobian_linear(builtin("anick_variant"))
    ring = jac.ring
    z1, z2 = ring.gens()
    assert jac.entries[0][0] == 1 + z1 * z2
    assert jac.entries[0][1] == z2**2
    assert jac.entries[1][0] == -(z1**2)
    assert jac.entries[1][1] == 1 - z1 * z2
    assert jac.det() == ring.one


def test_jacobian_linear_elementary_and_scaling():
    jac = jacobian_linear(builtin("elem(1,2,z,z)"))
    z1, z2 = jac.ring.gens()
    assert jac.entries[0][1] == z1 * z2
    assert jac.entries[0][0] == jac.ring.one
    assert jac.entries[1][1] == jac.ring.one
    assert jac.entries[1][0].is_zero()

    jac = jacobian_linear(builtin("scale(2,3)"))
    assert jac.entries[0][0] == 2 and jac.entries[1][1] == 3
    assert jac.entries[0][1].is_zero() and jac.entries[1][0].is_zero()


def test_jacobian_linear_matches_derivative_oracle():
    rng = random.Random(67)
    for _ in range(100):
        phi = rand_linear_endo(ALG, rng)
        via_profile = jacobian_linear(phi)
        full = jacobian_full(phi)
        for i in range(2):
            for j in range(2):
                assert tensor_to_pair_poly(full[i][j], via_profile.ring) == (
                    via_profile.entries[i][j]
                )


def test_jacobian_linear_rejects_nonlinear():
    with pytest.raises(NotXLinearError):
        jacobian_linear(builtin("triangular_sample"))


def test_tensor_to_pair_poly_rejects_x_letters():
    with pytest.raises(DomainError):
        tensor_to_pair_poly(tensor(X, ONE))


def test_chain_rule():
    rng = random.Random(71)
    phi = KzEndo(ALG, (X, Y + Z * X * Z))
    psi = KzEndo(ALG, (X + Y, Y))
    assert jacobian_linear(phi.compose(psi)) == jacobian_linear(phi) * jacobian_linear(psi)
    for _ in range(200):
        a = rand_linear_endo(ALG, rng)
        b = rand_linear_endo(ALG, rng)
        assert jacobian_linear(a.compose(b)) == jacobian_linear(a) * jacobian_linear(b)


def test_abelianize_anick():
    images, m = abelianize_endo(builtin("anick_variant"))
    z = m.ring.gen(0)
    assert m.entries[0][0] == 1 + z**2
    assert m.entries[0][1] == z**2
    assert m.entries[1][0] == -(z**2)
    assert m.entries[1][1] == 1 - z**2
    assert m.det() == m.ring.one
    comm = images[0].ring
    x, y, zc = comm.gens()
    assert images[0] == x + zc**2 * (x - y)
    assert images[1] == y + zc**2 * (x - y)


def test_abelianize_identity_and_non_unit():
    images, m = abelianize_endo(KzEndo.identity(ALG))
    assert m.is_identity()
    x, y, _ = images[0].ring.gens()
    assert images == (x, y)

    _, m = abelianize_endo(KzEndo(ALG, (Z * X * Z, Y)))
    z = m.ring.gen(0)
    assert m.entries[0][0] == z**2 and m.entries[1][1] == m.ring.one
    assert not m.det().is_constant()


def test_abelianization_commutes_with_specialization():
    rng = random.Random(73)
    for _ in range(100):
        phi = rand_linear_endo(ALG, rng)
        _, direct = abelianize_endo(phi)
        assert specialize_pair_matrix(jacobian_linear(phi)) == direct
        cells = linear_profile(phi)
        ring = direct.ring
        z = ring.gen(0)
        for i in range(2):
            for j in range(2):
                acc = ring.zero
                for b, c in cells[i][j]:
                    acc = acc + b.substitute([z]) * c.substitute([z])
                assert acc == direct.entries[i][j]
