import random

import pytest

from uebkit.combinat import (
    LatinSquare,
    cyclic_latin,
    fourier_hadamard,
    h_alpha,
)
from uebkit.cyclo import PhasedScalar
from uebkit.exactmat import ExactMatrix
from uebkit.ueb import (
    NormalizationError,
    UnitaryErrorBasis,
    apply_equivalence,
    basis_from_json,
    basis_to_json,
    normalize_d2,
    pauli_basis,
    shift_and_multiply,
    verify_ueb,
    wickedness_witness,
)

ONE = PhasedScalar.one(1)


def canonical_pauli():
    one = ONE
    return UnitaryErrorBasis(
        2,
        (ExactMatrix.identity(2),
         ExactMatrix.diagonal([one, -one]),
         ExactMatrix.from_rows([[0, 1], [1, 0]]),
         ExactMatrix.from_rows([[0, 1], [-1, 0]])),
        ("I", "Z", "X", "ZX"))


def test_pauli_basis_verifies():
    for d in (2, 3):
        b = pauli_basis(d)
        rep = verify_ueb(b)
        assert rep.ok
        assert rep.pairs_checked == d * d * (d * d - 1) // 2


def test_duplicate_member_fails():
    one = ONE
    x = ExactMatrix.from_rows([[0, 1], [1, 0]])
    z = ExactMatrix.diagonal([one, -one])
    bad = UnitaryErrorBasis(2, (ExactMatrix.identity(2), x, z, x),
                            ("I", "X", "Z", "X2"))
    rep = verify_ueb(bad)
    assert rep.cardinality_ok and rep.unitary_ok
    assert not rep.orthogonality_ok
    assert ("orthogonality", "X", "X2") in rep.failures


def test_nonunitary_member_fails():
    one = ONE
    half = ExactMatrix(2, 2, ExactMatrix.identity(2).entries, scale=2)
    z = ExactMatrix.diagonal([one, -one])
    x = ExactMatrix.from_rows([[0, 1], [1, 0]])
    zx = ExactMatrix.from_rows([[0, 1], [-1, 0]])
    rep = verify_ueb(UnitaryErrorBasis(2, (half, z, x, zx), ("a", "b", "c", "d")))
    assert not rep.unitary_ok
    assert ("unitary", "a") in rep.failures


def test_sam_pinned_d3_members():
    b = shift_and_multiply(cyclic_latin(3), fourier_hadamard(3))
    w = PhasedScalar.zeta(3)
    by_label = dict(zip(b.labels, b.members))
    e01 = ExactMatrix.from_rows([[0, 1, 0], [0, 0, 1], [1, 0, 0]])
    e12 = ExactMatrix.from_rows([
        [PhasedScalar.zero(3), PhasedScalar.zero(3), w * w],
        [ONE, PhasedScalar.zero(3), PhasedScalar.zero(3)],
        [PhasedScalar.zero(3), w, PhasedScalar.zero(3)]])
    assert by_label[(0, 1)] == e01
    assert by_label[(1, 2)] == e12


def test_sam_verifies_and_is_monomial():
    for d in (2, 3, 4, 5):
        b = shift_and_multiply(cyclic_latin(d), fourier_hadamard(d))
        assert verify_ueb(b).ok
        assert b.monomiality().is_monomial
    base = cyclic_latin(4)
    permuted = LatinSquare(4, tuple(base.cells[i] for i in (2, 0, 3, 1)))
    b = shift_and_multiply(permuted, fourier_hadamard(4))
    assert verify_ueb(b).ok


def test_sam_constant_equals_sequence():
    h = fourier_hadamard(3)
    a = shift_and_multiply(cyclic_latin(3), h)
    b = shift_and_multiply(cyclic_latin(3), [h, h, h])
    assert all(x == y for x, y in zip(a.members, b.members))


def test_sam_d1():
    b = shift_and_multiply(cyclic_latin(1), fourier_hadamard(1))
    assert len(b.members) == 1
    assert b.members[0] == ExactMatrix.identity(1)
    assert verify_ueb(b).ok


def test_sam_rejects_bad_inputs():
    with pytest.raises(ValueError, match="latin"):
        shift_and_multiply(LatinSquare(2, ((0, 1), (0, 1))), fourier_hadamard(2))
    with pytest.raises(ValueError, match="Hadamard"):
        shift_and_multiply(cyclic_latin(2), ExactMatrix.identity(2))
    with pytest.raises(ValueError, match="need 3"):
        shift_and_multiply(cyclic_latin(3), [fourier_hadamard(3)] * 2)


def test_sam_halpha_symbolic():
    b = shift_and_multiply(cyclic_latin(4), h_alpha())
    rep = verify_ueb(b)
    assert rep.ok
    assert rep.pairs_checked == 120
    assert b.monomiality().is_monomial


def test_wickedness_witness_on_halpha():
    b = shift_and_multiply(cyclic_latin(4), h_alpha())
    w = wickedness_witness(b)
    assert w is not None
    t = PhasedScalar.symbol("t")
    assert w.pair == ((2, 0), (0, 0))
    assert list(w.diagonal) == [ONE, -ONE, t, -t]
    assert w.ratio == t
    assert w.ratio.root_of_unity_order() is None
    assert w.ratio_position == 2


def test_wickedness_gone_after_substitution():
    b = shift_and_multiply(cyclic_latin(4), h_alpha())
    i4 = PhasedScalar.zeta(4)
    fixed = UnitaryErrorBasis(
        4, tuple(m.substitute({"t": i4}) for m in b.members), b.labels)
    assert verify_ueb(fixed).ok
    assert wickedness_witness(fixed) is None


def test_wickedness_none_on_generalized_pauli():
    assert wickedness_witness(pauli_basis(3)) is None


def test_wickedness_requires_verified_basis():
    one = ONE
    x = ExactMatrix.from_rows([[0, 1], [1, 0]])
    bad = UnitaryErrorBasis(2, (ExactMatrix.identity(2), x, x, x),
                            (0, 1, 2, 3))
    with pytest.raises(ValueError):
        wickedness_witness(bad)


def test_normalize_canonical_is_fixed():
    res = normalize_d2(canonical_pauli())
    assert res.a == ExactMatrix.identity(2)
    assert res.b == ExactMatrix.identity(2)
    assert all(c == ONE for c in res.scalars)
    assert res.permutation == (0, 1, 2, 3)


def test_normalize_pauli_rep_order():
    res = normalize_d2(pauli_basis(2))
    assert res.a == ExactMatrix.identity(2)
    assert res.b == ExactMatrix.identity(2)
    assert res.permutation == (0, 1, 2, 3)
    assert res.scalars == (ONE, ONE, ONE, -ONE)


def test_normalize_half_phase_example():
    one = ONE
    z8 = PhasedScalar.zeta(8)
    members = (
        ExactMatrix.identity(2),
        ExactMatrix.diagonal([one, -one]),
        ExactMatrix.from_rows([[PhasedScalar.zero(8), one], [z8 * z8, PhasedScalar.zero(8)]]),
        ExactMatrix.from_rows([[PhasedScalar.zero(8), one], [-(z8 * z8), PhasedScalar.zero(8)]]),
    )
    basis = UnitaryErrorBasis(2, members, (0, 1, 2, 3))
    assert verify_ueb(basis).ok
    res = normalize_d2(basis)
    assert res.a == ExactMatrix.diagonal([one, PhasedScalar.zeta(8, 7)])
    assert res.b == ExactMatrix.diagonal([one, z8])
    for k, (c, p) in enumerate(zip(res.scalars, res.permutation)):
        got = (res.a @ basis.members[p] @ res.b).scalar_mul(c)
        assert got == res.canonical.members[k]


def _random_monomial2(rng):
    sigma = [0, 1] if rng.random() < 0.5 else [1, 0]
    zero = PhasedScalar.zero(8)
    ents = [zero] * 4
    for k in range(2):
        ents[sigma[k] * 2 + k] = PhasedScalar.zeta(8, rng.randrange(8))
    return ExactMatrix(2, 2, ents)


def test_normalize_scrambled_roundtrip():
    rng = random.Random(20260819)
    pauli = canonical_pauli()
    for _ in range(25):
        a0 = _random_monomial2(rng)
        b0 = _random_monomial2(rng)
        order = list(range(4))
        rng.shuffle(order)
        members = []
        for k in order:
            c = PhasedScalar.zeta(8, rng.randrange(8))
            members.append((a0 @ pauli.members[k] @ b0).scalar_mul(c))
        basis = UnitaryErrorBasis(2, members, tuple(range(4)))
        res = normalize_d2(basis)
        recovered = apply_equivalence(
            res.canonical, res.a.dagger(), res.b.dagger(),
            [c.inverse() for c in res.scalars], (0, 1, 2, 3))
        for k in range(4):
            assert recovered.members[k] == basis.members[res.permutation[k]]


def test_normalize_refuses_dense():
    one = ONE
    f = ExactMatrix.from_rows([[one, one], [one, -one]])
    z = ExactMatrix.diagonal([one, -one])
    x = ExactMatrix.from_rows([[0, 1], [1, 0]])
    zx = ExactMatrix.from_rows([[0, 1], [-1, 0]])
    basis = UnitaryErrorBasis(2, (f, z, x, zx), (0, 1, 2, 3))
    with pytest.raises(NormalizationError):
        normalize_d2(basis)
    with pytest.raises(NormalizationError):
        normalize_d2(UnitaryErrorBasis(3, tuple(pauli_basis(3).members),
                                       tuple(range(9))))


def test_basis_json_roundtrip():
    for basis in (pauli_basis(2),
                  shift_and_multiply(cyclic_latin(4), h_alpha())):
        back = basis_from_json(basis_to_json(basis))
        assert back.d == basis.d
        assert back.labels == basis.labels
        assert all(x == y for x, y in zip(back.members, basis.members))
