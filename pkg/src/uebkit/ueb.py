"""Unitary error bases: the definition-level checks, the shift-and-
multiply construction, 2x2 normalization, and the wickedness test.

A unitary error basis on C^d is a set of d^2 unitaries, pairwise
orthogonal under the trace inner product.  Two routes produce them
here: group-indexed representations (nice module) and Latin square
plus Hadamard data (shift_and_multiply).  verify_ueb checks the bare
definition and is kept independent of either construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .combinat import LatinSquare, check_complex_hadamard, validate_latin
from .cyclo import PhasedScalar
from .exactmat import (
    ExactMatrix,
    hs_inner,
    matrix_from_json,
    matrix_to_json,
    monomiality_report,
)
from .nice import ProjectiveRep, pauli_rep


@dataclass
class UnitaryErrorBasis:
    d: int
    members: tuple
    labels: tuple

    def __post_init__(self):
        self.members = tuple(self.members)
        self.labels = tuple(self.labels)
        if len(self.labels) != len(self.members):
            raise ValueError("labels and members differ in length")

    def monomiality(self):
        return monomiality_report(self.members)


@dataclass
class UebReport:
    d: int
    cardinality_ok: bool
    unitary_ok: bool
    orthogonality_ok: bool
    pairs_checked: int
    failures: tuple = ()

    @property
    def ok(self) -> bool:
        return self.cardinality_ok and self.unitary_ok and self.orthogonality_ok

    def summary(self) -> dict:
        return {"d": self.d, "cardinality_ok": self.cardinality_ok,
                "unitary_ok": self.unitary_ok,
                "orthogonality_ok": self.orthogonality_ok,
                "pairs_checked": self.pairs_checked, "ok": self.ok,
                "failures": [str(f) for f in self.failures[:8]]}


def verify_ueb(basis: UnitaryErrorBasis) -> UebReport:
    """The definition, with zero tolerance: d^2 unitary members, pairwise
    trace-orthogonal."""
    d = basis.d
    members = basis.members
    failures = []
    cardinality_ok = len(members) == d * d and \
        all(m.rows == d and m.cols == d for m in members)
    if not cardinality_ok:
        failures.append(("cardinality", len(members)))

    unitary_ok = True
    for idx, m in enumerate(members):
        if m.is_scaled_unitary() != 1:
            unitary_ok = False
            failures.append(("unitary", basis.labels[idx]))

    orthogonality_ok = True
    pairs = 0
    n = len(members)
    for i in range(n):
        for j in range(i + 1, n):
            pairs += 1
            if not hs_inner(members[i], members[j]).is_zero():
                orthogonality_ok = False
                failures.append(("orthogonality", basis.labels[i], basis.labels[j]))
                if len(failures) > 32:
                    return UebReport(d, cardinality_ok, unitary_ok, False,
                                     pairs, tuple(failures))
    return UebReport(d, cardinality_ok, unitary_ok, orthogonality_ok,
                     pairs, tuple(failures))


def basis_from_rep(rep: ProjectiveRep) -> UnitaryErrorBasis:
    if rep.group.order != rep.dim ** 2:
        raise ValueError("index group order must be dim^2")
    return UnitaryErrorBasis(rep.dim, rep.members(), rep.labels())


def pauli_basis(d: int) -> UnitaryErrorBasis:
    return basis_from_rep(pauli_rep(d))


# ---------------------------------------------------------------------------
# shift-and-multiply


def shift_and_multiply(latin: LatinSquare, hadamards) -> UnitaryErrorBasis:
    """Members E_ij acting as E_ij|k> = H^(j)[i,k] |L(j,k)>.

    hadamards is one matrix (used for every j) or a sequence of d; each
    must pass the complex Hadamard check exactly.
    """
    chk = validate_latin(latin)
    if not chk.ok:
        raise ValueError(f"latin square violation: {chk.witness}")
    d = latin.d
    if isinstance(hadamards, ExactMatrix):
        hadamards = [hadamards] * d
    hadamards = list(hadamards)
    if len(hadamards) != d:
        raise ValueError(f"need {d} Hadamard matrices, got {len(hadamards)}")
    for j, h in enumerate(hadamards):
        if h.rows != d or h.cols != d:
            raise ValueError(f"Hadamard {j} has wrong shape")
        hc = check_complex_hadamard(h)
        if not hc.ok:
            raise ValueError(f"matrix {j} is not complex Hadamard: {hc.reason}")
    zero = PhasedScalar.zero(1)
    members = []
    labels = []
    for i in range(d):
        for j in range(d):
            h = hadamards[j]
            ents = [zero] * (d * d)
            for k in range(d):
                ents[latin(j, k) * d + k] = h.entry(i, k)
            members.append(ExactMatrix(d, d, ents, h.scale))
            labels.append((i, j))
    return UnitaryErrorBasis(d, members, labels)


# ---------------------------------------------------------------------------
# 2x2 normalization


class NormalizationError(ValueError):
    pass


@dataclass
class NormalizationResult:
    """canonical.members[k] == scalars[k] * a * input.members[permutation[k]] * b"""
    a: ExactMatrix
    b: ExactMatrix
    scalars: tuple
    permutation: tuple
    canonical: UnitaryErrorBasis


def _mono2(m: ExactMatrix):
    """Classify a 2x2 monomial matrix: ('diag'|'anti', value0, value1)
    with values including the scale."""
    e00, e01 = m.entries[0], m.entries[1]
    e10, e11 = m.entries[2], m.entries[3]
    if e00.terms and e11.terms and not e01.terms and not e10.terms:
        return "diag", e00 * m.scale, e11 * m.scale
    if e01.terms and e10.terms and not e00.terms and not e11.terms:
        return "anti", e01 * m.scale, e10 * m.scale
    return None


def normalize_d2(basis: UnitaryErrorBasis) -> NormalizationResult:
    """Bring a 2x2 basis to the canonical set {I, Z, X, ZX} exactly.

    Works whenever left-dividing by the first member leaves monomial
    matrices whose phases admit exact square roots (true for any basis
    built from the canonical one by monomial equivalence).  Dense
    members would need eigenvector normalization over a field
    extension, which this exact layer refuses.
    """
    if basis.d != 2 or len(basis.members) != 4:
        raise NormalizationError("normalize_d2 expects a 2x2 basis of 4 members")
    u0 = basis.members[0]
    lead = u0.dagger()
    v = [lead @ m for m in basis.members]

    kinds = []
    for m in v[1:]:
        k = _mono2(m)
        if k is None:
            raise NormalizationError(
                "members are not monomial after left normalization; exact "
                "eigen-normalization would require a field extension")
        kinds.append(k)
    diag_idx = [i for i, k in enumerate(kinds) if k[0] == "diag"]
    anti_idx = [i for i, k in enumerate(kinds) if k[0] == "anti"]
    if len(diag_idx) != 1 or len(anti_idx) != 2:
        raise NormalizationError("unexpected pattern split after normalization")

    i_d = diag_idx[0]
    a_val = kinds[i_d][1]                       # diag(a, -a) up to check below
    if not (kinds[i_d][2] == -a_val):
        raise NormalizationError("diagonal member is not traceless")
    i_a, i_b = anti_idx
    b_val, c_val = kinds[i_a][1], kinds[i_a][2]     # antidiag(b, c)
    try:
        c_d = a_val.inverse()
        s = c_val.divide(b_val).unit_sqrt()
        c_a = (b_val * s).inverse()
        c_b = (kinds[i_b][1] * s).inverse()         # after conjugation by w
    except (ValueError, ZeroDivisionError) as e:
        raise NormalizationError(f"exact phase arithmetic failed: {e}") from e
    one = PhasedScalar.one(1)
    w = ExactMatrix.diagonal([one, s])

    a_mat = w.dagger() @ lead
    b_mat = w
    scalars = (one, c_d, c_a, c_b)
    perm = (0, i_d + 1, i_a + 1, i_b + 1)

    target_z = ExactMatrix.diagonal([one, -one])
    target_x = ExactMatrix.from_rows([[0, 1], [1, 0]])
    target_zx = ExactMatrix.from_rows([[0, 1], [-1, 0]])
    targets = (ExactMatrix.identity(2), target_z, target_x, target_zx)
    for t, c, p in zip(targets, scalars, perm):
        got = (a_mat @ basis.members[p] @ b_mat).scalar_mul(c)
        if not (got == t):
            raise NormalizationError("normalization postcondition failed")
    canonical = UnitaryErrorBasis(2, targets, ("I", "Z", "X", "ZX"))
    return NormalizationResult(a_mat, b_mat, scalars, perm, canonical)


def apply_equivalence(basis: UnitaryErrorBasis, a: ExactMatrix, b: ExactMatrix,
                      scalars, permutation) -> UnitaryErrorBasis:
    """Members scalars[k] * a * members[permutation[k]] * b, same labels."""
    members = [(a @ basis.members[p] @ b).scalar_mul(c)
               for c, p in zip(scalars, permutation)]
    return UnitaryErrorBasis(basis.d, members, basis.labels)


# ---------------------------------------------------------------------------
# wickedness


@dataclass
class WickednessWitness:
    pair: tuple                 # labels (i, j) of the two members
    diagonal: tuple             # diagonal values of E F^dagger
    ratio: PhasedScalar         # a diagonal ratio with no finite order
    ratio_position: int

    def summary(self) -> dict:
        return {"pair": [str(x) for x in self.pair],
                "diagonal": [repr(x) for x in self.diagonal],
                "ratio": repr(self.ratio),
                "ratio_position": self.ratio_position}


def wickedness_witness(basis: UnitaryErrorBasis, assume_verified: bool = False):
    """Search member pairs for a diagonal E F^dagger whose diagonal-entry
    ratios include a value of infinite multiplicative order.

    One-sided: a witness certifies the basis is not equivalent to any
    group-indexed one; absence of a witness certifies nothing.
    """
    if not assume_verified:
        rep = verify_ueb(basis)
        if not rep.ok:
            raise ValueError("wickedness search expects a verified basis")
    n = len(basis.members)
    for j in range(n):
        anchor = basis.members[j].dagger()
        for i in range(n):
            if i == j:
                continue
            p = basis.members[i] @ anchor
            d = p.rows
            if any(p.entries[r * d + c].terms
                   for r in range(d) for c in range(d) if r != c):
                continue
            diag = [p.entries[k * d + k] * p.scale for k in range(d)]
            if not diag[0].terms:
                continue
            for k in range(1, d):
                try:
                    r = diag[k].divide(diag[0])
                except (ValueError, ZeroDivisionError):
                    continue
                if r.root_of_unity_order() is None:
                    return WickednessWitness(
                        pair=(basis.labels[i], basis.labels[j]),
                        diagonal=tuple(diag), ratio=r, ratio_position=k)
    return None


# ---------------------------------------------------------------------------
# JSON


def _label_to_json(lab):
    if isinstance(lab, tuple):
        return [_label_to_json(x) for x in lab]
    return lab


def _label_from_json(lab):
    if isinstance(lab, list):
        return tuple(_label_from_json(x) for x in lab)
    return lab


def basis_to_json(basis: UnitaryErrorBasis) -> dict:
    return {"d": basis.d,
            "members": [matrix_to_json(m) for m in basis.members],
            "labels": [_label_to_json(l) for l in basis.labels]}


def basis_from_json(obj: dict) -> UnitaryErrorBasis:
    return UnitaryErrorBasis(
        int(obj["d"]),
        tuple(matrix_from_json(m) for m in obj["members"]),
        tuple(_label_from_json(l) for l in obj["labels"]))
