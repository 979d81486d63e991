"""Group-indexed unitary bases: projective representations and the
niceness conditions.

A projective representation here is a map from an index group into
unitary matrices with rho(1) = I, tr rho(g) = 0 off the identity, and
rho(g) rho(h) = omega(g, h) rho(gh) for unit-modulus factors omega.
Verifying those three conditions certifies that the image, one matrix
per group element, is a unitary error basis, which the definition-level
check in the ueb module confirms independently at small dimension.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable

from .cyclo import Cyclotomic, PhasedScalar
from .exactmat import ExactMatrix
from .groups import CyclicGroup, DirectProduct, FiniteGroup, HeisenbergGroup


def shift_matrix(d: int) -> ExactMatrix:
    """X with X|x> = |x-1 mod d>."""
    return ExactMatrix.from_permutation([(x - 1) % d for x in range(d)])


def clock_matrix(d: int) -> ExactMatrix:
    """Z = diag(1, zeta_d, ..., zeta_d^(d-1))."""
    z = Cyclotomic.zeta(d) if d > 1 else Cyclotomic.one(1)
    return ExactMatrix.diagonal([z ** x for x in range(d)])


def quadratic_diag(d: int) -> ExactMatrix:
    """diag(zeta_d^(i(i-1)/2)); conjugation by it maps X to ZX."""
    z = Cyclotomic.zeta(d) if d > 1 else Cyclotomic.one(1)
    return ExactMatrix.diagonal([z ** ((i * (i - 1) // 2) % d) for i in range(d)])


class CocycleError(ValueError):
    pass


class ProjectiveRep:
    """A cached map from group elements to unitary matrices."""

    def __init__(self, group: FiniteGroup, dim: int, rho: Callable, label: str = ""):
        self.group = group
        self.dim = dim
        self.label = label
        self._rho = rho
        self._cache: dict = {}

    def matrix(self, g):
        m = self._cache.get(g)
        if m is None:
            m = self._rho(g)
            self._cache[g] = m
        return m

    def members(self) -> list:
        return [self.matrix(g) for g in self.group.elements()]

    def labels(self) -> list:
        return list(self.group.elements())


def pauli_rep(d: int) -> ProjectiveRep:
    """(i, j) -> X^i Z^j over the index group Z_d x Z_d."""
    if d < 1:
        raise ValueError("dimension must be positive")
    x, z = shift_matrix(d), clock_matrix(d)
    xp = [ExactMatrix.identity(d)]
    zp = [ExactMatrix.identity(d)]
    for _ in range(d - 1):
        xp.append(xp[-1] @ x)
        zp.append(zp[-1] @ z)
    table = {(i, j): xp[i] @ zp[j] for i in range(d) for j in range(d)}
    group = DirectProduct(CyclicGroup(d), CyclicGroup(d))
    return ProjectiveRep(group, d, table.__getitem__, label=f"pauli:{d}")


def heisenberg_rep(d: int) -> ProjectiveRep:
    """(x, y, z) -> zeta^z Z^y X^x, a genuine representation of the
    Heisenberg group mod d."""
    group = HeisenbergGroup(d)
    x, z = shift_matrix(d), clock_matrix(d)
    xp = [ExactMatrix.identity(d)]
    zp = [ExactMatrix.identity(d)]
    for _ in range(d - 1):
        xp.append(xp[-1] @ x)
        zp.append(zp[-1] @ z)
    zeta = PhasedScalar.zeta(d) if d > 1 else PhasedScalar.one(1)

    def rho(g):
        m = zp[g.y] @ xp[g.x]
        return m.scalar_mul(zeta ** g.z) if g.z else m

    return ProjectiveRep(group, d, rho, label=f"heisenberg:{d}")


def extract_cocycle(rep: ProjectiveRep, g, h) -> PhasedScalar:
    """omega(g, h) with rho(g) rho(h) = omega(g, h) rho(gh); raises
    CocycleError when the product is not a unit multiple of rho(gh)."""
    prod = rep.matrix(g) @ rep.matrix(h)
    target = rep.matrix(rep.group.compose(g, h))
    c = prod.equal_up_to_phase(target)
    if c is None:
        raise CocycleError(f"rho({g}) rho({h}) is not a unit multiple of the "
                           f"composed member")
    return c


@dataclass
class Cocycle:
    group: FiniteGroup
    values: dict

    def __call__(self, g, h) -> PhasedScalar:
        return self.values[(g, h)]

    def validate(self, rng=None, samples: int = 300) -> bool:
        """Cocycle identity w(g,h) w(gh,k) = w(h,k) w(g,hk) on sampled
        (or, for tiny groups, all) triples."""
        elems = list(self.group.elements())
        n = len(elems)
        if rng is None or n ** 3 <= samples:
            triples = ((g, h, k) for g in elems for h in elems for k in elems)
        else:
            triples = ((rng.choice(elems), rng.choice(elems), rng.choice(elems))
                       for _ in range(samples))
        comp = self.group.compose
        for g, h, k in triples:
            lhs = self.values[(g, h)] * self.values[(comp(g, h), k)]
            rhs = self.values[(h, k)] * self.values[(g, comp(h, k))]
            if not (lhs == rhs):
                return False
        return True


def cocycle_table(rep: ProjectiveRep, pair_limit: int = 250_000) -> Cocycle:
    elems = list(rep.group.elements())
    if len(elems) ** 2 > pair_limit:
        raise ValueError("index group too large for a full cocycle table")
    values = {(g, h): extract_cocycle(rep, g, h) for g in elems for h in elems}
    return Cocycle(rep.group, values)


@dataclass
class NicenessReport:
    label: str
    dim: int
    group_order: int
    identity_ok: bool
    unitary_ok: bool
    trace_ok: bool
    cocycle_ok: bool
    pair_mode: str
    pairs_checked: int
    elements_checked: int
    seed: int | None = None
    failures: tuple = ()

    @property
    def ok(self) -> bool:
        return (self.identity_ok and self.unitary_ok and self.trace_ok
                and self.cocycle_ok)

    def summary(self) -> dict:
        return {
            "label": self.label, "dim": self.dim, "group_order": self.group_order,
            "identity_ok": self.identity_ok, "unitary_ok": self.unitary_ok,
            "trace_ok": self.trace_ok, "cocycle_ok": self.cocycle_ok,
            "pair_mode": self.pair_mode, "pairs_checked": self.pairs_checked,
            "elements_checked": self.elements_checked, "seed": self.seed,
            "ok": self.ok, "failures": [str(f) for f in self.failures[:8]],
        }


def verify_nice(rep: ProjectiveRep, pair_mode: str = "all", seed: int | None = None,
                sample_size: int = 10_000, max_full_pairs: int = 250_000
                ) -> NicenessReport:
    """Check the three defining conditions with zero tolerance.

    pair_mode "all" sweeps every (g, h); "sampled" sweeps generator
    pairs in both orders plus sample_size seeded random pairs.  The
    identity, unitarity and trace conditions are always swept in full.
    """
    G = rep.group
    elems = list(G.elements())
    failures = []

    m1 = rep.matrix(G.identity)
    identity_ok = m1.is_identity()
    if not identity_ok:
        failures.append(("identity", G.identity))

    unitary_ok = True
    trace_ok = True
    for g in elems:
        m = rep.matrix(g)
        if m.is_scaled_unitary() != 1:
            unitary_ok = False
            failures.append(("unitary", g))
        if g != G.identity and not m.trace().is_zero():
            trace_ok = False
            failures.append(("trace", g))
    if not rep.matrix(G.identity).trace() == rep.dim:
        trace_ok = False
        failures.append(("trace", G.identity))

    if pair_mode == "all":
        if len(elems) ** 2 > max_full_pairs:
            raise ValueError("full pair sweep too large; use pair_mode='sampled'")
        pairs = ((g, h) for g in elems for h in elems)
    elif pair_mode == "sampled":
        rng = random.Random(seed)
        gens = list(G.generators)
        fixed = [(g, h) for g in gens for h in elems]
        fixed += [(h, g) for g in gens for h in elems]
        rand = ((rng.choice(elems), rng.choice(elems)) for _ in range(sample_size))
        pairs = iter(fixed + list(rand))
    else:
        raise ValueError(f"unknown pair_mode {pair_mode!r}")

    cocycle_ok = True
    pairs_checked = 0
    for g, h in pairs:
        pairs_checked += 1
        try:
            extract_cocycle(rep, g, h)
        except CocycleError:
            cocycle_ok = False
            failures.append(("cocycle", g, h))
            if len(failures) > 32:
                break

    return NicenessReport(
        label=rep.label, dim=rep.dim, group_order=G.order,
        identity_ok=identity_ok, unitary_ok=unitary_ok, trace_ok=trace_ok,
        cocycle_ok=cocycle_ok, pair_mode=pair_mode, pairs_checked=pairs_checked,
        elements_checked=len(elems), seed=seed, failures=tuple(failures))


def det_normalize(rep: ProjectiveRep) -> tuple[ProjectiveRep, dict]:
    """Rescale each member by a root of unity to determinant one.

    Returns the rescaled representation and the scalar table.  Member
    determinants must be roots of unity (true for any nice basis)."""
    d = rep.dim
    scalars = {}
    table = {}
    for g in rep.group.elements():
        m = rep.matrix(g)
        det = m.determinant()
        order = det.root_of_unity_order()
        if order is None:
            raise ValueError(f"member {g} has determinant that is not a root "
                             f"of unity")
        j = next(k for k in range(order)
                 if det == PhasedScalar.of(Cyclotomic.zeta(order) ** k))
        c = PhasedScalar.of(Cyclotomic.zeta(order * d) ** ((-j) % (order * d)))
        scalars[g] = c
        table[g] = m.scalar_mul(c)
    out = ProjectiveRep(rep.group, d, table.__getitem__,
                        label=rep.label + "+det1")
    return out, scalars


def generated_group_order(matrices, limit: int = 20_000) -> int:
    """Order of the matrix group generated by the given unitaries."""
    from .exactmat import common_order
    mats = list(matrices)
    order = common_order(mats)
    seen = {}
    frontier = []
    for m in mats:
        k = m.value_key(order)
        if k not in seen:
            seen[k] = m
            frontier.append(m)
    ident = ExactMatrix.identity(mats[0].rows)
    k = ident.value_key(order)
    if k not in seen:
        seen[k] = ident
        frontier.append(ident)
    while frontier:
        g = frontier.pop()
        for m in mats:
            p = g @ m
            k = p.value_key(order)
            if k not in seen:
                if len(seen) >= limit:
                    raise ValueError("generated group exceeds limit")
                seen[k] = p
                frontier.append(p)
    return len(seen)
