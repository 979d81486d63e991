"""A dimension-165 nice error basis with nonmonomial members.

The index group is G = (H_5 x H_11) semidirect H_3, Heisenberg groups
twisted by an order-3 symplectic action.  The degree-165 projective
representation mu is carried in tensor-factor form (3 x 3, 5 x 5 and
11 x 11 slots), so every defining property is checked exactly at factor
cost; the full 165 x 165 matrices are materialized only on demand.

The twist enters through conjugator words R_p built from the clock,
shift, Fourier and quadratic-diagonal matrices.  Every structural claim
about them (the conjugation identities, R_p cubing to a scalar, the
induced exponent action being an irreducible order-3 element of
SL(2, F_p), the lifted maps being automorphisms of H_p) is verified as
a postcondition rather than assumed, so a wrong word or exponent choice
fails loudly instead of corrupting the basis.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from .cyclo import Cyclotomic, PhasedScalar
from .exactmat import (ExactMatrix, MonomialityReport, matrix_to_json,
                       monomiality_report)
from .fastcyc import CycMatrix, from_exact, to_exact
from .groups import (CentralQuotientGroup, DirectProduct, FiniteGroup,
                     HeisenbergElement, HeisenbergGroup, SL2Element, SL2Group,
                     SemidirectProduct, acts_irreducibly, element_order,
                     is_automorphism, sl2_alpha, sl2_beta)
from .nice import (NicenessReport, ProjectiveRep, clock_matrix, quadratic_diag,
                   shift_matrix, verify_nice)
from .combinat import fourier_hadamard

DEFAULT_SEED = 1650


class ConjugatorError(ValueError):
    """A conjugator postcondition failed; the word or exponent is wrong."""


# ---------------------------------------------------------------------------
# Weyl coordinates and automorphism lifts


def weyl_decompose(m: ExactMatrix, p: int):
    """(a, b, phase) with m == phase * Z^b X^a exactly, else None.

    The product Z^b X^a is rebuilt and compared entrywise, so a
    successful return is a verified identity, not a pattern guess."""
    if m.rows != p or m.cols != p:
        return None
    scale = PhasedScalar.of(m.scale)
    v0 = v1 = None
    r0 = 0
    for i in range(p):
        e0, e1 = m.entry(i, 0), m.entry(i, 1)
        if e0.terms:
            if v0 is not None:
                return None
            r0, v0 = i, e0 * scale
        if e1.terms:
            v1 = e1 * scale
    if v0 is None or v1 is None:
        return None
    a = (-r0) % p
    w = PhasedScalar.zeta(p)
    try:
        ratio = v1 * v0.inverse()
    except (ValueError, ZeroDivisionError):
        return None
    b = next((k for k in range(p) if ratio == w ** k), None)
    if b is None:
        return None
    phase = v0 * w ** ((a * b) % p)
    target = (clock_matrix(p) ** b) @ (shift_matrix(p) ** a)
    if m != target.scalar_mul(phase):
        return None
    return a, b, phase


def conjugation_automorphism(group: HeisenbergGroup, u: ExactMatrix,
                             forward: bool = True, rng=None) -> dict:
    """The map f on the Heisenberg group with
    rho(f(g)) == U rho(g) U^dagger / s exactly, s the unitarity scale
    of U; forward=False conjugates by U^dagger instead.

    Generator images come from exact Weyl decompositions; the extension
    uses the normal form (x, y, z) = b^y a^x c^z.  The result is
    confirmed by a full pair sweep of is_automorphism, and the defining
    property is re-checked on a seeded element sample."""
    p = group.d
    s = u.is_scaled_unitary()
    if s is None:
        raise ConjugatorError("conjugator is not scaled-unitary")
    left, right = (u, u.dagger()) if forward else (u.dagger(), u)
    zeta = PhasedScalar.zeta(p)

    def image(m: ExactMatrix) -> HeisenbergElement:
        w = (left @ m @ right).scalar_mul(Fraction(1, s))
        dec = weyl_decompose(w, p)
        if dec is None:
            raise ConjugatorError("conjugate of a Weyl element is not a "
                                  "phased Weyl element")
        a, b, phase = dec
        z = next((k for k in range(p) if phase == zeta ** k), None)
        if z is None:
            raise ConjugatorError("conjugation phase is not a p-th root of "
                                  "unity; no Heisenberg lift exists")
        return HeisenbergElement(p, a, b, z)

    img_a = image(shift_matrix(p))
    img_b = image(clock_matrix(p))
    comp, inv = group.compose, group.inverse
    # c = a^-1 b^-1 a b, so the image of c is forced
    img_c = comp(comp(inv(img_a), inv(img_b)), comp(img_a, img_b))
    pa, pb, pc = [group.identity], [group.identity], [group.identity]
    for _ in range(p - 1):
        pa.append(comp(pa[-1], img_a))
        pb.append(comp(pb[-1], img_b))
        pc.append(comp(pc[-1], img_c))
    images = {}
    for x in range(p):
        for y in range(p):
            base = comp(pb[y], pa[x])
            for z in range(p):
                images[HeisenbergElement(p, x, y, z)] = comp(base, pc[z])
    if not is_automorphism(group, images.__getitem__):
        raise ConjugatorError("lifted conjugation map is not an automorphism")
    rng = rng or random.Random(0)
    fu = from_exact(u, p)
    fud = fu.dagger()
    for _ in range(6):
        g = group.random_element(rng)
        rho = _rho_cyc(group, g)
        lhs = (fu @ rho @ fud) if forward else (fud @ rho @ fu)
        if not (CycMatrix(p, lhs.a, lhs.scale / s)
                == _rho_cyc(group, images[g])):
            raise ConjugatorError("lift disagrees with conjugation on a "
                                  "sampled element")
    return images


def _rho_cyc(group: HeisenbergGroup, g: HeisenbergElement) -> CycMatrix:
    """zeta^z Z^y X^x in packed form; small, built on the fly."""
    p = group.d
    m = from_exact((clock_matrix(p) ** g.y) @ (shift_matrix(p) ** g.x), p)
    return m.phase_shift(g.z)


def _exponent_action(images: dict, p: int) -> SL2Element:
    """Columns are the (x, y) exponents of the generator images."""
    ia = images[HeisenbergElement(p, 1, 0, 0)]
    ib = images[HeisenbergElement(p, 0, 1, 0)]
    return SL2Element(p, ia.x, ib.x, ia.y, ib.y)


# ---------------------------------------------------------------------------
# conjugator sets


@dataclass
class ConjugatorSet:
    """Verified conjugation data for one Heisenberg factor.

    F is the unnormalized Fourier matrix (unitarity scale p); R is the
    order-3 twist word rescaled to honest unitarity.  alpha, beta and
    gamma are automorphism lifts: alpha and beta of conjugation by F
    and B with the dagger on the left, gamma of forward conjugation by
    R, the direction the semidirect action composes with."""
    p: int
    e: int
    F: ExactMatrix
    D: ExactMatrix
    B: ExactMatrix
    R: ExactMatrix
    r_cubed: PhasedScalar
    action: SL2Element
    action_order: int
    alpha: dict
    beta: dict
    gamma: dict
    alpha_action: SL2Element
    beta_action: SL2Element
    group: HeisenbergGroup
    checks: dict


def build_conjugators(p: int, e: int = 3, seed: int = 0) -> ConjugatorSet:
    """Build and verify the twist conjugator for one odd prime factor.

    R is ((D Z^e F) ** 2) / p.  Raises ConjugatorError when any
    postcondition fails, which is how a wrong exponent e announces
    itself."""
    group = HeisenbergGroup(p)
    e %= p
    X, Z, D = shift_matrix(p), clock_matrix(p), quadratic_diag(p)
    F = fourier_hadamard(p)
    B = D @ (Z ** ((p + 1) // 2))
    ident = ExactMatrix.identity(p)
    w = PhasedScalar.zeta(p)

    def require(ok: bool, what: str):
        if not ok:
            raise ConjugatorError(f"{what} (p={p}, e={e})")

    require(F.dagger() @ X @ F == Z.scalar_mul(p), "F+ X F != p Z")
    require(F.dagger() @ Z @ F == (X ** (p - 1)).scalar_mul(p),
            "F+ Z F != p X^-1")
    require(D.dagger() @ X @ D == Z @ X, "D+ X D != Z X")
    require(D.dagger() @ Z @ D == Z, "D+ Z D != Z")
    require(B.dagger() @ X @ B == (Z @ X).scalar_mul(w ** ((p + 1) // 2)),
            "B+ X B != w^((p+1)/2) Z X")
    require(B.dagger() @ Z @ B == Z, "B+ Z B != Z")

    word = D @ (Z ** e) @ F
    R = (word @ word).scalar_mul(Fraction(1, p))
    require(R.is_scaled_unitary() == 1, "R is not unitary after the 1/p scale")
    r_cubed = (R @ R @ R).equal_up_to_phase(ident)
    require(r_cubed is not None, "R^3 is not a scalar matrix")
    require(r_cubed.root_of_unity_order() is not None,
            "R^3 scalar is not a root of unity")

    rng = random.Random(seed)
    gamma = conjugation_automorphism(group, R, forward=True, rng=rng)
    action = _exponent_action(gamma, p)
    sl2 = SL2Group(p)
    order = element_order(sl2, action)
    require(order == 3, f"induced action has order {order}, want 3")
    require(acts_irreducibly(action),
            "induced action has an eigenvector over F_p")

    alpha = conjugation_automorphism(group, F, forward=False, rng=rng)
    beta = conjugation_automorphism(group, B, forward=False, rng=rng)
    alpha_action = _exponent_action(alpha, p)
    beta_action = _exponent_action(beta, p)
    require(alpha_action == sl2_alpha(p), "alpha action is not ((0,-1),(1,0))")
    require(beta_action == sl2_beta(p), "beta action is not ((1,0),(1,1))")

    checks = {
        "conjugation_identities": True,
        "r_unitary": True,
        "r_cubed_scalar": str(r_cubed),
        "action_is_alpha_beta":
            action == sl2.compose(alpha_action, beta_action),
        "automorphisms_full_pair_checked": True,
    }
    return ConjugatorSet(p=p, e=e, F=F, D=D, B=B, R=R, r_cubed=r_cubed,
                         action=action, action_order=order, alpha=alpha,
                         beta=beta, gamma=gamma, alpha_action=alpha_action,
                         beta_action=beta_action, group=group, checks=checks)


# ---------------------------------------------------------------------------
# lazy tensor triples

_IDENT: dict = {}
_PHASE_MEMO: dict = {}

# identity-keyed memos for slot products and slot phase comparisons;
# only long-lived pool objects participate, and every stored entry
# keeps references to its operands, so a hit is validated with `is`
# before use and id reuse can never alias to a wrong result
_POOL_IDS: set = set()
_PROD_MEMO: dict = {}
_EQ_MEMO: dict = {}
_PROD_CAP = 8_192
_EQ_CAP = 65_536


def _reset_slot_memos():
    _POOL_IDS.clear()
    _PROD_MEMO.clear()
    _EQ_MEMO.clear()


def _register_slots(mats):
    for m in mats:
        _POOL_IDS.add(id(m))


def _ident_cyc(d: int, p: int) -> CycMatrix:
    m = _IDENT.get((d, p))
    if m is None:
        m = CycMatrix.identity(d, p)
        _IDENT[(d, p)] = m
    return m


def _phase_product(parts) -> PhasedScalar:
    ps = [PhasedScalar.of(c) for c in parts]
    key = tuple(c.key() for c in ps)
    v = _PHASE_MEMO.get(key)
    if v is None:
        v = PhasedScalar.one(1)
        for c in ps:
            v = v * c
        _PHASE_MEMO[key] = v
    return v


class TensorTriple:
    """A unitary on the 165-dimensional space held as three factors.

    Implements the slice of the matrix interface that the niceness
    verifier consumes (identity and unitarity tests, trace, product,
    comparison up to a unit phase), each delegated to the 3x3, 5x5 and
    11x11 slots, so the index-group sweeps run at factor cost.  Slots
    that are the shared identity objects pass through products
    untouched, which keeps the generator sweeps cheap."""

    __slots__ = ("slots", "_unitary", "_exact")

    def __init__(self, slots, unitary: Fraction | None = None):
        self.slots = tuple(slots)
        self._unitary = unitary
        self._exact = None

    @property
    def dim(self) -> int:
        n = 1
        for s in self.slots:
            n *= s.d
        return n

    def __matmul__(self, other: "TensorTriple") -> "TensorTriple":
        out = []
        for a, b in zip(self.slots, other.slots):
            ia = _IDENT.get((a.d, a.p))
            if a is ia:
                out.append(b)
                continue
            if b is ia:
                out.append(a)
                continue
            key = None
            if id(a) in _POOL_IDS and id(b) in _POOL_IDS:
                key = (id(a), id(b))
                hit = _PROD_MEMO.get(key)
                if hit is not None and hit[0] is a and hit[1] is b:
                    out.append(hit[2])
                    continue
            r = a @ b
            if key is not None and len(_PROD_MEMO) < _PROD_CAP:
                _PROD_MEMO[key] = (a, b, r)
                _POOL_IDS.add(id(r))
            out.append(r)
        u = None
        if self._unitary is not None and other._unitary is not None:
            u = self._unitary * other._unitary
        return TensorTriple(out, u)

    def is_identity(self) -> bool:
        # slotwise identity up to phase, with the phases cancelling;
        # plain slotwise identity would miss sign flips like
        # (-I) (x) (-I) (x) I, which is the identity of the product
        phases = []
        for a in self.slots:
            ia = _ident_cyc(a.d, a.p)
            if a is ia:
                continue
            c = a.equal_up_to_phase(ia)
            if c is None:
                return False
            phases.append(c)
        return not phases or _phase_product(phases).is_one()

    def is_scaled_unitary(self):
        if self._unitary is None:
            s = Fraction(1)
            for a in self.slots:
                si = to_exact(a).is_scaled_unitary()
                if si is None:
                    return None
                s *= si
            self._unitary = s
        return self._unitary

    def trace(self) -> PhasedScalar:
        t = PhasedScalar.one(1)
        for a in self.slots:
            ta = a.trace()
            if ta.is_zero():
                return PhasedScalar.zero(1)
            t = t * PhasedScalar.of(ta)
        return t

    def equal_up_to_phase(self, other: "TensorTriple"):
        phases = []
        for a, b in zip(self.slots, other.slots):
            if a is b:
                continue
            key = None
            if id(a) in _POOL_IDS and id(b) in _POOL_IDS:
                key = (id(a), id(b))
                hit = _EQ_MEMO.get(key)
                if hit is not None and hit[0] is a and hit[1] is b:
                    c = hit[2]
                    if c is None:
                        return None
                    if not c.is_one():
                        phases.append(c)
                    continue
            c = a.equal_up_to_phase(b)
            if c is None:
                # general route for phases outside +-zeta_p^k
                c = to_exact(a).equal_up_to_phase(to_exact(b))
            if key is not None and len(_EQ_MEMO) < _EQ_CAP:
                _EQ_MEMO[key] = (a, b, c)
            if c is None:
                return None
            if not c.is_one():
                phases.append(c)
        if not phases:
            return PhasedScalar.one(1)
        return _phase_product(phases)

    def materialize(self) -> ExactMatrix:
        if self._exact is None:
            e3, e5, e11 = (to_exact(a) for a in self.slots)
            self._exact = e3.tensor(e5).tensor(e11)
        return self._exact

    def __repr__(self):
        return ("TensorTriple(" +
                " x ".join(str(a.d) for a in self.slots) + ")")


def _mask_monomial(a: CycMatrix) -> bool:
    mask = a.canon_array().any(axis=2)
    return bool((mask.sum(axis=0) == 1).all() and (mask.sum(axis=1) == 1).all())


def _nonzero_cyc(m: ExactMatrix):
    """(i, j, coefficient) for each nonzero entry, or None when any
    entry is not a plain symbol-free cyclotomic."""
    out = []
    for i in range(m.rows):
        for j in range(m.cols):
            e = m.entry(i, j)
            if not e.terms:
                continue
            if len(e.terms) != 1:
                return None
            c = e.terms.get(())
            if c is None:
                return None
            out.append((i, j, c))
    return out


def _tensor165(e3: ExactMatrix, e5: ExactMatrix, e11: ExactMatrix,
               offset: int = 0) -> ExactMatrix:
    """e3 (x) e5 (x) e11 times zeta_165^offset.

    Entries are assembled directly at conductor 165, one coefficient
    convolution per position, which avoids the chain of conductor
    promotions the generic tensor route would pay per entry."""
    nz = (_nonzero_cyc(e3), _nonzero_cyc(e5), _nonzero_cyc(e11))
    if any(v is None for v in nz):
        m = e3.tensor(e5).tensor(e11)
        if offset:
            m = m.scalar_mul(PhasedScalar.of(Cyclotomic.zeta(165) ** offset))
        return m
    nz3, nz5, nz11 = nz
    zero = PhasedScalar.zero(1)
    ents = [zero] * (165 * 165)
    for i3, j3, c3 in nz3:
        s3 = 165 // c3.order
        t3 = [(exp * s3 + offset, q) for exp, q in c3.coeffs.items()]
        for i5, j5, c5 in nz5:
            s5 = 165 // c5.order
            t35 = [(a + exp * s5, qa * qb)
                   for a, qa in t3 for exp, qb in c5.coeffs.items()]
            row35 = (i3 * 5 + i5) * 11
            col35 = (j3 * 5 + j5) * 11
            for i11, j11, c11 in nz11:
                s11 = 165 // c11.order
                coeffs: dict = {}
                for ab, qab in t35:
                    for exp, qc in c11.coeffs.items():
                        e = (ab + exp * s11) % 165
                        q = coeffs.get(e)
                        coeffs[e] = qab * qc if q is None else q + qab * qc
                ents[(row35 + i11) * 165 + col35 + j11] = \
                    PhasedScalar.of(Cyclotomic(165, coeffs))
    return ExactMatrix(165, 165, ents, e3.scale * e5.scale * e11.scale)


# ---------------------------------------------------------------------------
# the factor-form representation


class FactorMap:
    """mu in factor form, backed by three lookup pools.

    Pool keys: the 3-slot by (x3, y3), the 5-slot by (x5, y5, x3), the
    11-slot by (x11, y11, y3); the stored values are Z^y X^x R^k
    products.  A group element ((n5, n11), h) maps to pooled slots
    phase-shifted by the three central exponents, so quotient
    representatives (central exponents zero) hit the pools directly.

    Every pool entry is verified unitary at build time (packed integer
    route for all entries, dense exact route on a seeded sample), which
    is what entitles the triples to carry a cached unitarity scale 1."""

    def __init__(self, conj5: ConjugatorSet, conj11: ConjugatorSet,
                 seed: int = 0):
        self.conj5, self.conj11 = conj5, conj11
        rng = random.Random(seed)
        self.exact3, self.fast3 = self._pool(3, None)
        self.exact5, self.fast5 = self._pool(5, conj5.R)
        self.exact11, self.fast11 = self._pool(11, conj11.R)
        self.rearm_memos()
        self.tr3 = {k: m.trace() for k, m in self.fast3.items()}
        self.tr5 = {k: m.trace() for k, m in self.fast5.items()}
        self.tr11 = {k: m.trace() for k, m in self.fast11.items()}
        self.mono3 = {k: _mask_monomial(m) for k, m in self.fast3.items()}
        self.mono5 = {k: _mask_monomial(m) for k, m in self.fast5.items()}
        self.mono11 = {k: _mask_monomial(m) for k, m in self.fast11.items()}
        self._verify_pools(rng)

    def rearm_memos(self):
        """Drop accumulated slot caches, keep the pools registered."""
        _reset_slot_memos()
        for fast in (self.fast3, self.fast5, self.fast11):
            _register_slots(fast.values())

    def _pool(self, p: int, r: ExactMatrix | None):
        x, z = shift_matrix(p), clock_matrix(p)
        xp, zp = [ExactMatrix.identity(p)], [ExactMatrix.identity(p)]
        for _ in range(p - 1):
            xp.append(xp[-1] @ x)
            zp.append(zp[-1] @ z)
        rp = [ExactMatrix.identity(p)]
        if r is not None:
            rp += [r, r @ r]
        exact = {}
        for xx in range(p):
            for yy in range(p):
                base = zp[yy] @ xp[xx]
                for k in range(len(rp)):
                    key = (xx, yy, k) if r is not None else (xx, yy)
                    exact[key] = base @ rp[k] if k else base
        fast = {}
        for key, m in exact.items():
            zero = all(v == 0 for v in key)
            fast[key] = _ident_cyc(p, p) if zero else from_exact(m, p)
        return exact, fast

    def _verify_pools(self, rng):
        for p, exact, fast in ((3, self.exact3, self.fast3),
                               (5, self.exact5, self.fast5),
                               (11, self.exact11, self.fast11)):
            ident = _ident_cyc(p, p)
            for key, cm in fast.items():
                if not (cm @ cm.dagger() == ident):
                    raise ArithmeticError(f"pool entry {key} (p={p}) is not "
                                          "unitary")
            for key in rng.sample(sorted(exact), min(8, len(exact))):
                if exact[key].is_scaled_unitary() != 1:
                    raise ArithmeticError(f"dense unitarity check failed at "
                                          f"{key} (p={p})")
                if not (PhasedScalar.of(fast[key].trace())
                        == exact[key].trace()):
                    raise ArithmeticError(f"trace routes disagree at {key} "
                                          f"(p={p})")

    def triple(self, g) -> TensorTriple:
        (n5, n11), h = g
        s3 = self.fast3[(h.x, h.y)]
        if h.z:
            s3 = s3.phase_shift(h.z)
        s5 = self.fast5[(n5.x, n5.y, h.x)]
        if n5.z:
            s5 = s5.phase_shift(n5.z)
        s11 = self.fast11[(n11.x, n11.y, h.y)]
        if n11.z:
            s11 = s11.phase_shift(n11.z)
        return TensorTriple((s3, s5, s11), unitary=Fraction(1))

    def exact_matrix(self, g) -> ExactMatrix:
        """The dense 165 x 165 member, for export and dense checks."""
        (n5, n11), h = g
        e3 = self.exact3[(h.x, h.y)]
        e5 = self.exact5[(n5.x, n5.y, h.x)]
        e11 = self.exact11[(n11.x, n11.y, h.y)]
        offset = (55 * h.z + 33 * n5.z + 15 * n11.z) % 165
        return _tensor165(e3, e5, e11, offset)

    def trace_parts(self, g):
        """Slot traces, zero short-circuit; None marks not-reached."""
        (n5, n11), h = g
        t3 = self.tr3[(h.x, h.y)]
        if t3.is_zero():
            return t3, None, None
        t5 = self.tr5[(n5.x, n5.y, h.x)]
        if t5.is_zero():
            return t3, t5, None
        return t3, t5, self.tr11[(n11.x, n11.y, h.y)]

    def slot_monomial(self, g) -> bool:
        (n5, n11), h = g
        return (self.mono3[(h.x, h.y)] and self.mono5[(n5.x, n5.y, h.x)]
                and self.mono11[(n11.x, n11.y, h.y)])


# ---------------------------------------------------------------------------
# the index group of order 3^3 5^3 11^3


@dataclass
class G165:
    """The built construction: abstract group, central quotient, factor
    representation, and the verified conjugator sets."""
    group: FiniteGroup
    quotient: CentralQuotientGroup
    center: list
    center_generator: tuple
    conj5: ConjugatorSet
    conj11: ConjugatorSet
    factors: FactorMap
    rep: ProjectiveRep
    checks: dict


def _aut_powers(group: HeisenbergGroup, images: dict) -> list:
    """[identity, f, f o f] as lookup dicts; f must cube to identity."""
    ident = {g: g for g in group.elements()}
    sq = {g: images[images[g]] for g in images}
    if {g: images[sq[g]] for g in images} != ident:
        raise ConjugatorError("automorphism does not have order dividing 3")
    return [ident, images, sq]


def build_g165(seed: int = DEFAULT_SEED) -> G165:
    """Construct the order-4492125 group, its degree-165 factor map, and
    the central quotient indexing the error basis.

    Structural checks run as the pieces are assembled; anything failing
    raises rather than returning a half-built object."""
    conj5 = build_conjugators(5, 3, seed=seed)
    conj11 = build_conjugators(11, 3, seed=seed)
    H5, H11, H3 = conj5.group, conj11.group, HeisenbergGroup(3)
    g5 = _aut_powers(H5, conj5.gamma)
    g11 = _aut_powers(H11, conj11.gamma)

    def act(h, n):
        return (g5[h.x][n[0]], g11[h.y][n[1]])

    G = SemidirectProduct(DirectProduct(H5, H11), H3, act)
    rng = random.Random(seed)
    G.spot_check(rng)
    if G.order != 4_492_125:
        raise ArithmeticError(f"group order {G.order}, want 4492125")

    center = G.center_structural()
    if center is None or len(center) != 165:
        raise ArithmeticError("structural center is not of order 165")
    zc = ((HeisenbergElement(5, 0, 0, 1), HeisenbergElement(11, 0, 0, 1)),
          HeisenbergElement(3, 0, 0, 1))
    if element_order(G, zc) != 165:
        raise ArithmeticError("center has no element of order 165")

    def section(g):
        (n5, n11), h = g
        return ((HeisenbergElement(5, n5.x, n5.y, 0),
                 HeisenbergElement(11, n11.x, n11.y, 0)),
                HeisenbergElement(3, h.x, h.y, 0))

    carrier = [((HeisenbergElement(5, x5, y5, 0),
                 HeisenbergElement(11, x11, y11, 0)),
                HeisenbergElement(3, x3, y3, 0))
               for x5, y5 in itertools.product(range(5), repeat=2)
               for x11, y11 in itertools.product(range(11), repeat=2)
               for x3, y3 in itertools.product(range(3), repeat=2)]
    quotient = CentralQuotientGroup(G, center, section,
                                    carrier=lambda: carrier)
    if quotient.order != 27_225 or len(carrier) != 27_225:
        raise ArithmeticError("quotient carrier size is off")

    # the structural center is all of Z(G): a coset commuting with the
    # six generating cosets must be the identity coset, and the 165
    # structural elements commute with the generators exactly
    central_cosets = [g for g in carrier
                      if all(quotient.compose(g, t) == quotient.compose(t, g)
                             for t in quotient.generators)]
    if central_cosets != [quotient.identity]:
        raise ArithmeticError("additional central cosets found; the center "
                              "is larger than the structural one")
    for z in center:
        for t in G.generators:
            if G.compose(z, t) != G.compose(t, z):
                raise ArithmeticError("structural center element fails to "
                                      "commute with a generator")

    factors = FactorMap(conj5, conj11, seed=seed)
    rep = ProjectiveRep(quotient, 165, factors.triple, label="g165")

    checks = {
        "group_order": G.order,
        "center_order": len(center),
        "center_cyclic_witness_order": 165,
        "quotient_order": quotient.order,
        "generator_matrices_pinned": _check_generators(G, factors),
        "word_check_pairs": _word_check(G, factors, rng, words=1000),
    }
    if not checks["generator_matrices_pinned"]:
        raise ArithmeticError("generator images differ from the pinned "
                              "tensor factors")
    return G165(group=G, quotient=quotient, center=center,
                center_generator=zc, conj5=conj5, conj11=conj11,
                factors=factors, rep=rep, checks=checks)


def _check_generators(G, factors: FactorMap) -> bool:
    """The six generator images must equal the pinned tensor factors
    entrywise: I(x)X5(x)I, I(x)Z5(x)I, I(x)I(x)X11, I(x)I(x)Z11,
    X3(x)R5(x)I, Z3(x)I(x)R11."""
    f5 = from_exact(factors.conj5.R, 5)
    f11 = from_exact(factors.conj11.R, 11)
    i3, i5, i11 = _ident_cyc(3, 3), _ident_cyc(5, 5), _ident_cyc(11, 11)
    want = [
        (i3, from_exact(shift_matrix(5), 5), i11),
        (i3, from_exact(clock_matrix(5), 5), i11),
        (i3, i5, from_exact(shift_matrix(11), 11)),
        (i3, i5, from_exact(clock_matrix(11), 11)),
        (from_exact(shift_matrix(3), 3), f5, i11),
        (from_exact(clock_matrix(3), 3), i5, f11),
    ]
    for gen, slots in zip(G.generators, want):
        got = factors.triple(gen)
        if not all(a == b for a, b in zip(got.slots, slots)):
            return False
    # one dense witness: the first twisted generator materializes to
    # X3 (x) R5 (x) I11 entrywise
    dense = factors.exact_matrix(G.generators[4])
    target = shift_matrix(3).tensor(factors.conj5.R).tensor(
        ExactMatrix.identity(11))
    return dense == target


def _word_check(G, factors: FactorMap, rng, words: int = 1000) -> int:
    """mu of a random generator word must equal the product of the
    generator images up to a unit phase; this pins the factor-map
    formula executably, central phases included."""
    gens = list(G.generators)
    for _ in range(words):
        k = rng.randrange(1, 7)
        g = G.identity
        m = factors.triple(G.identity)
        for _ in range(k):
            t = rng.choice(gens)
            g = G.compose(g, t)
            m = m @ factors.triple(t)
        if m.equal_up_to_phase(factors.triple(g)) is None:
            raise ArithmeticError(f"factor map breaks on the word ending "
                                  f"at {g}")
    return words


# ---------------------------------------------------------------------------
# verification report


CAVEAT = (
    "Nonmonomiality is verified entrywise for the constructed members "
    "in the computational basis.  The stronger claim that no equivalent "
    "basis is monomial (equivalence allowing two-sided unitary factors, "
    "scalars and permutations) is a group-theoretic statement about the "
    "index group lacking a suitable index-165 subgroup; it is recorded "
    "here but not re-verified by this module."
)


@dataclass
class CounterexampleReport:
    dim: int
    group_order: int
    quotient_order: int
    center_order: int
    center_cyclic: bool
    trace_zero_count: int
    trace_nonzero_labels: tuple
    identity_trace_ok: bool
    niceness: NicenessReport
    center_scalars_ok: bool
    monomial_members: int
    nonmonomial_members: int
    generator_monomiality: MonomialityReport
    sampled_monomiality: MonomialityReport
    nonmonomial_witness: object
    cross_checks: int
    cross_ok: bool
    caveat: str

    @property
    def ok(self) -> bool:
        return (self.group_order == 4_492_125 and self.center_order == 165
                and self.center_cyclic
                and self.trace_zero_count == self.quotient_order - 1
                and len(self.trace_nonzero_labels) == 1
                and self.identity_trace_ok and self.niceness.ok
                and self.center_scalars_ok and self.nonmonomial_members > 0
                and not self.generator_monomiality.is_monomial
                and self.cross_ok)

    def summary(self) -> dict:
        return {
            "dim": self.dim, "group_order": self.group_order,
            "quotient_order": self.quotient_order,
            "center_order": self.center_order,
            "center_cyclic": self.center_cyclic,
            "trace_zero_count": self.trace_zero_count,
            "identity_trace_ok": self.identity_trace_ok,
            "niceness": self.niceness.summary(),
            "center_scalars_ok": self.center_scalars_ok,
            "monomial_members": self.monomial_members,
            "nonmonomial_members": self.nonmonomial_members,
            "nonmonomial_witness": str(self.nonmonomial_witness),
            "cross_checks": self.cross_checks, "cross_ok": self.cross_ok,
            "ok": self.ok, "caveat": self.caveat,
        }


def verify_counterexample(g: G165, seed: int = DEFAULT_SEED,
                          monomial_samples: int = 12,
                          pair_samples: int = 10_000) -> CounterexampleReport:
    """Run every checkable claim about the built basis.

    Traces and monomiality counts sweep the whole 27225-element index in
    factor form; the niceness conditions run through the standard
    verifier with full identity, unitarity and trace sweeps and sampled
    cocycle pairs; monomiality is recomputed on materialized 165 x 165
    matrices for the generators and a seeded member sample and compared
    against the factor-level answer."""
    fm = g.factors
    fm.rearm_memos()
    rng = random.Random(seed)
    carrier = list(g.quotient.elements())

    zero = 0
    nonzero = []
    for el in carrier:
        t3, t5, t11 = fm.trace_parts(el)
        if t11 is None or t11.is_zero():
            zero += 1
            continue
        t = (PhasedScalar.of(t3) * PhasedScalar.of(t5)
             * PhasedScalar.of(t11))
        nonzero.append((el, t))
    identity_trace_ok = (len(nonzero) == 1
                         and nonzero[0][0] == g.quotient.identity
                         and nonzero[0][1] == 165)

    niceness = verify_nice(g.rep, pair_mode="sampled", seed=seed,
                           sample_size=pair_samples)

    center_scalars_ok = True
    ident_t = fm.triple(g.quotient.identity)
    for z in (((HeisenbergElement(5, 0, 0, 1), HeisenbergElement(11, 0, 0, 0)),
               HeisenbergElement(3, 0, 0, 0)),
              ((HeisenbergElement(5, 0, 0, 0), HeisenbergElement(11, 0, 0, 1)),
               HeisenbergElement(3, 0, 0, 0)),
              ((HeisenbergElement(5, 0, 0, 0), HeisenbergElement(11, 0, 0, 0)),
               HeisenbergElement(3, 0, 0, 1))):
        c = fm.triple(z).equal_up_to_phase(ident_t)
        if c is None or c.is_one() or not c.is_unit_modulus():
            center_scalars_ok = False

    monomial = sum(1 for el in carrier if fm.slot_monomial(el))
    nonmonomial = len(carrier) - monomial
    witness = next((t for t in g.group.generators if not fm.slot_monomial(t)),
                   None)

    gen_mats = [fm.exact_matrix(t) for t in g.group.generators]
    generator_monomiality = monomiality_report(gen_mats)
    sample = rng.sample(carrier, min(monomial_samples, len(carrier)))
    sample_mats = [fm.exact_matrix(el) for el in sample]
    sampled_monomiality = monomiality_report(sample_mats)
    cross_ok = all(m.is_monomial() == fm.slot_monomial(el)
                   for el, m in zip(sample, sample_mats))

    # dual-route agreement: packed slot algebra against the dense layer
    cross = 0
    for fast, exact in ((fm.fast5, fm.exact5), (fm.fast11, fm.exact11)):
        keys = sorted(exact)
        for _ in range(10):
            ka, kb = rng.choice(keys), rng.choice(keys)
            fprod = fast[ka] @ fast[kb]
            eprod = exact[ka] @ exact[kb]
            if to_exact(fprod) != eprod:
                cross_ok = False
            fphase = fprod.equal_up_to_phase(fast[kb])
            ephase = eprod.equal_up_to_phase(exact[kb])
            if (fphase is None) != (ephase is None):
                cross_ok = False
            elif fphase is not None and not (PhasedScalar.of(fphase)
                                             == ephase):
                cross_ok = False
            cross += 1

    # one full-value probe of the dense assembly, central phases and a
    # twisted slot included, against the generic tensor route
    probe = ((HeisenbergElement(5, 1, 2, 3), HeisenbergElement(11, 4, 5, 6)),
             HeisenbergElement(3, 1, 0, 2))
    slow = (fm.exact3[(1, 0)].scalar_mul(PhasedScalar.zeta(3) ** 2)
            .tensor(fm.exact5[(1, 2, 1)].scalar_mul(PhasedScalar.zeta(5) ** 3))
            .tensor(fm.exact11[(4, 5, 0)].scalar_mul(PhasedScalar.zeta(11) ** 6)))
    if fm.exact_matrix(probe) != slow:
        cross_ok = False
    cross += 1

    return CounterexampleReport(
        dim=165, group_order=g.group.order, quotient_order=g.quotient.order,
        center_order=len(g.center),
        center_cyclic=g.checks["center_cyclic_witness_order"] == 165,
        trace_zero_count=zero,
        trace_nonzero_labels=tuple(el for el, _ in nonzero),
        identity_trace_ok=identity_trace_ok, niceness=niceness,
        center_scalars_ok=center_scalars_ok, monomial_members=monomial,
        nonmonomial_members=nonmonomial,
        generator_monomiality=generator_monomiality,
        sampled_monomiality=sampled_monomiality,
        nonmonomial_witness=witness, cross_checks=cross, cross_ok=cross_ok,
        caveat=CAVEAT)


# ---------------------------------------------------------------------------
# export


def export_bundle(g: G165, factors_only: bool = True) -> dict:
    """JSON-ready description: conjugators, factor pools, generator
    labels, and optionally the dense 165 x 165 generator matrices."""
    def conj_json(c: ConjugatorSet) -> dict:
        return {
            "p": c.p, "e": c.e,
            "F": matrix_to_json(c.F), "D": matrix_to_json(c.D),
            "B": matrix_to_json(c.B), "R": matrix_to_json(c.R),
            "r_cubed": str(c.r_cubed),
            "action": [[c.action.a, c.action.b], [c.action.c, c.action.d]],
            "action_order": c.action_order,
        }

    def pool_json(pool: dict) -> dict:
        return {",".join(str(v) for v in k): matrix_to_json(m)
                for k, m in sorted(pool.items())}

    fm = g.factors
    bundle = {
        "dim": 165,
        "group_order": g.group.order,
        "quotient_order": g.quotient.order,
        "center_order": len(g.center),
        "conjugators": {"5": conj_json(g.conj5), "11": conj_json(g.conj11)},
        "factor_pools": {"3": pool_json(fm.exact3),
                         "5": pool_json(fm.exact5),
                         "11": pool_json(fm.exact11)},
        "generators": [str(t) for t in g.group.generators],
        "caveat": CAVEAT,
    }
    if not factors_only:
        bundle["generators_full"] = [matrix_to_json(fm.exact_matrix(t))
                                     for t in g.group.generators]
    return bundle
