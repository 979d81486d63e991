"""Finite groups as explicit composition rules on tuple elements.

Groups here are small enough to enumerate (or, for the big semidirect
products, to enumerate through a declared carrier), and elements are
hashable tuples so they can key dicts.  Nothing is ever represented up
to isomorphism: a group is its composition table rule.
"""

from __future__ import annotations

import itertools
from typing import Iterator, NamedTuple


class FiniteGroup:
    """Base: subclasses set identity, order, generators and implement
    compose, inverse, elements and random_element."""

    identity = None
    order = 0
    generators: tuple = ()

    def compose(self, a, b):
        raise NotImplementedError

    def inverse(self, a):
        raise NotImplementedError

    def elements(self) -> Iterator:
        raise NotImplementedError

    def random_element(self, rng):
        raise NotImplementedError

    def power(self, g, k: int):
        if k < 0:
            return self.power(self.inverse(g), -k)
        out = self.identity
        base = g
        while k:
            if k & 1:
                out = self.compose(out, base)
            base = self.compose(base, base)
            k >>= 1
        return out


def element_order(G: FiniteGroup, g) -> int:
    x = g
    m = 1
    while x != G.identity:
        x = G.compose(x, g)
        m += 1
        if m > G.order:
            raise ArithmeticError("element order exceeds group order")
    return m


def center(G: FiniteGroup) -> list:
    """Elements commuting with the generators (hence with everything,
    provided the declared generators generate)."""
    gens = list(G.generators) or list(G.elements())
    return [g for g in G.elements()
            if all(G.compose(g, h) == G.compose(h, g) for h in gens)]


def transversal(G: FiniteGroup, subgroup: list) -> list:
    """One representative per coset of a central subgroup.

    Representatives are the lexicographically least coset members,
    except that the identity represents its own coset; the identity
    comes first and the rest are sorted.
    """
    keys = set()
    for g in G.elements():
        keys.add(min(G.compose(g, z) for z in subgroup))
    ekey = min(G.compose(G.identity, z) for z in subgroup)
    out = [G.identity]
    out.extend(k for k in sorted(keys) if k != ekey)
    return out


def is_automorphism(G: FiniteGroup, f, pair_limit: int = 4_500_000) -> bool:
    """Full |G|^2 homomorphism check plus bijectivity."""
    if G.order * G.order > pair_limit:
        raise ValueError("group too large for the full pair check")
    elems = list(G.elements())
    images = {g: f(g) for g in elems}
    if set(images.values()) != set(elems):
        return False
    if images[G.identity] != G.identity:
        return False
    comp = G.compose
    for g in elems:
        fg = images[g]
        for h in elems:
            if images[comp(g, h)] != comp(fg, images[h]):
                return False
    return True


# ---------------------------------------------------------------------------
# cyclic groups


class CyclicGroup(FiniteGroup):
    def __init__(self, d: int):
        if d < 1:
            raise ValueError("order must be positive")
        self.d = d
        self.identity = 0
        self.order = d
        self.generators = (1,) if d > 1 else ()

    def compose(self, a, b):
        return (a + b) % self.d

    def inverse(self, a):
        return (-a) % self.d

    def elements(self):
        return iter(range(self.d))

    def random_element(self, rng):
        return rng.randrange(self.d)


# ---------------------------------------------------------------------------
# Heisenberg groups mod d


class HeisenbergElement(NamedTuple):
    d: int
    x: int
    y: int
    z: int


class HeisenbergGroup(FiniteGroup):
    """Triples mod d with (x,y,z)(x',y',z') = (x+x', y+y', z+z'+x*y')."""

    def __init__(self, d: int):
        if d < 2:
            raise ValueError("modulus must be at least 2")
        self.d = d
        self.identity = HeisenbergElement(d, 0, 0, 0)
        self.order = d ** 3
        self.generators = (HeisenbergElement(d, 1, 0, 0),
                           HeisenbergElement(d, 0, 1, 0))

    def make(self, x: int, y: int, z: int) -> HeisenbergElement:
        d = self.d
        return HeisenbergElement(d, x % d, y % d, z % d)

    def compose(self, a: HeisenbergElement, b: HeisenbergElement):
        d = self.d
        if a.d != d or b.d != d:
            raise ValueError("modulus mismatch")
        return HeisenbergElement(d, (a.x + b.x) % d, (a.y + b.y) % d,
                                 (a.z + b.z + a.x * b.y) % d)

    def inverse(self, a: HeisenbergElement):
        d = self.d
        return HeisenbergElement(d, -a.x % d, -a.y % d, (-a.z + a.x * a.y) % d)

    def elements(self):
        d = self.d
        for x in range(d):
            for y in range(d):
                for z in range(d):
                    yield HeisenbergElement(d, x, y, z)

    def random_element(self, rng):
        d = self.d
        return HeisenbergElement(d, rng.randrange(d), rng.randrange(d),
                                 rng.randrange(d))


def _require_odd_prime(d: int):
    if d < 3 or d % 2 == 0:
        raise ValueError(f"modulus {d} is not an odd prime")
    for q in range(3, int(d ** 0.5) + 1, 2):
        if d % q == 0:
            raise ValueError(f"modulus {d} is not an odd prime")


def alpha_aut(g: HeisenbergElement) -> HeisenbergElement:
    """(x,y,z) -> (-y, x, z-xy), an automorphism for odd prime modulus."""
    _require_odd_prime(g.d)
    d = g.d
    return HeisenbergElement(d, -g.y % d, g.x, (g.z - g.x * g.y) % d)


def beta_aut(g: HeisenbergElement) -> HeisenbergElement:
    """(x,y,z) -> (x, x+y, z + ((d+1)/2) x^2) for odd prime modulus."""
    _require_odd_prime(g.d)
    d = g.d
    m = (d + 1) // 2
    return HeisenbergElement(d, g.x, (g.x + g.y) % d, (g.z + m * g.x * g.x) % d)


def gamma_aut(g: HeisenbergElement) -> HeisenbergElement:
    """beta . alpha . beta . alpha, applying alpha first."""
    return beta_aut(alpha_aut(beta_aut(alpha_aut(g))))


# ---------------------------------------------------------------------------
# SL(2, F_p)


class SL2Element(NamedTuple):
    p: int
    a: int
    b: int
    c: int
    d: int


class SL2Group(FiniteGroup):
    def __init__(self, p: int):
        _require_odd_prime(p)
        self.p = p
        self.identity = SL2Element(p, 1, 0, 0, 1)
        self.order = p * (p * p - 1)
        self.generators = (SL2Element(p, 0, p - 1, 1, 0),   # alpha
                           SL2Element(p, 1, 0, 1, 1))       # beta
        self._elements: list[SL2Element] | None = None

    def compose(self, m: SL2Element, n: SL2Element):
        p = self.p
        return SL2Element(p,
                          (m.a * n.a + m.b * n.c) % p,
                          (m.a * n.b + m.b * n.d) % p,
                          (m.c * n.a + m.d * n.c) % p,
                          (m.c * n.b + m.d * n.d) % p)

    def inverse(self, m: SL2Element):
        p = self.p
        return SL2Element(p, m.d, -m.b % p, -m.c % p, m.a)

    def elements(self):
        if self._elements is None:
            p = self.p
            out = []
            for a, b, c, d in itertools.product(range(p), repeat=4):
                if (a * d - b * c) % p == 1:
                    out.append(SL2Element(p, a, b, c, d))
            assert len(out) == self.order
            self._elements = out
        return iter(self._elements)

    def random_element(self, rng):
        if self._elements is None:
            list(self.elements())
        return rng.choice(self._elements)


def sl2_alpha(p: int) -> SL2Element:
    return SL2Element(p, 0, p - 1, 1, 0)


def sl2_beta(p: int) -> SL2Element:
    return SL2Element(p, 1, 0, 1, 1)


def sl2_elements_of_order(p: int, r: int) -> list[SL2Element]:
    G = SL2Group(p)
    return [m for m in G.elements() if element_order(G, m) == r]


def acts_irreducibly(m: SL2Element) -> bool:
    """No eigenvector over F_p: x^2 - tr(m) x + 1 has no root mod p."""
    p = m.p
    t = (m.a + m.d) % p
    return all((x * x - t * x + 1) % p for x in range(p))


# ---------------------------------------------------------------------------
# products


class DirectProduct(FiniteGroup):
    def __init__(self, *factors: FiniteGroup):
        self.factors = factors
        self.identity = tuple(f.identity for f in factors)
        self.order = 1
        for f in factors:
            self.order *= f.order
        gens = []
        for i, f in enumerate(factors):
            for g in f.generators:
                e = list(self.identity)
                e[i] = g
                gens.append(tuple(e))
        self.generators = tuple(gens)

    def compose(self, a, b):
        return tuple(f.compose(x, y) for f, x, y in zip(self.factors, a, b))

    def inverse(self, a):
        return tuple(f.inverse(x) for f, x in zip(self.factors, a))

    def elements(self):
        return itertools.product(*(f.elements() for f in self.factors))

    def random_element(self, rng):
        return tuple(f.random_element(rng) for f in self.factors)


class SemidirectProduct(FiniteGroup):
    """Pairs (n, h) with (n1,h1)(n2,h2) = (n1 * act(h1, n2), h1 h2).

    act(h, n) must be a homomorphism into Aut(N); callers are expected
    to have validated that on their own terms (spot_check samples it).
    """

    def __init__(self, N: FiniteGroup, H: FiniteGroup, act):
        self.N = N
        self.H = H
        self.act = act
        self.identity = (N.identity, H.identity)
        self.order = N.order * H.order
        self.generators = tuple((n, H.identity) for n in N.generators) + \
            tuple((N.identity, h) for h in H.generators)

    def compose(self, a, b):
        return (self.N.compose(a[0], self.act(a[1], b[0])),
                self.H.compose(a[1], b[1]))

    def inverse(self, a):
        hi = self.H.inverse(a[1])
        return (self.act(hi, self.N.inverse(a[0])), hi)

    def elements(self):
        for n in self.N.elements():
            for h in self.H.elements():
                yield (n, h)

    def random_element(self, rng):
        return (self.N.random_element(rng), self.H.random_element(rng))

    def spot_check(self, rng, samples: int = 200):
        """Sampled associativity and action-compatibility checks."""
        for _ in range(samples):
            a, b, c = (self.random_element(rng) for _ in range(3))
            if self.compose(self.compose(a, b), c) != self.compose(a, self.compose(b, c)):
                raise ArithmeticError("associativity failure; action is not valid")
            if self.compose(a, self.inverse(a)) != self.identity:
                raise ArithmeticError("inverse failure")
        return True

    def center_structural(self):
        """Z(N) x Z(H) when the action fixes Z(N) pointwise and Z(H) acts
        trivially; both premises checked exactly.  None if they fail."""
        zn = center(self.N)
        zh = center(self.H)
        for h in self.H.generators:
            for z in zn:
                if self.act(h, z) != z:
                    return None
        for z in zh:
            for n in self.N.generators:
                if self.act(z, n) != n:
                    return None
        return [(a, b) for a in zn for b in zh]


class SubgroupView(FiniteGroup):
    """A subset of a parent group, closure-checked, with inherited ops."""

    def __init__(self, parent: FiniteGroup, elements, check: bool = True):
        self.parent = parent
        self._elements = list(elements)
        self.identity = parent.identity
        self.order = len(self._elements)
        self.generators = ()
        if check:
            eset = set(self._elements)
            if parent.identity not in eset:
                raise ValueError("subgroup must contain the identity")
            for g in self._elements:
                if parent.inverse(g) not in eset:
                    raise ValueError(f"subgroup not closed under inverse at {g}")
                for h in self._elements:
                    if parent.compose(g, h) not in eset:
                        raise ValueError("subgroup not closed under composition")

    def compose(self, a, b):
        return self.parent.compose(a, b)

    def inverse(self, a):
        return self.parent.inverse(a)

    def elements(self):
        return iter(self._elements)

    def random_element(self, rng):
        return rng.choice(self._elements)


class CentralQuotientGroup(FiniteGroup):
    """G/Z for central Z, working on canonical section representatives."""

    def __init__(self, parent: FiniteGroup, subgroup: list, section,
                 carrier=None):
        self.parent = parent
        self.subgroup = list(subgroup)
        self.section = section
        if parent.order % len(self.subgroup):
            raise ValueError("subgroup size does not divide group order")
        self.order = parent.order // len(self.subgroup)
        self.identity = section(parent.identity)
        self.generators = tuple(dict.fromkeys(
            section(g) for g in parent.generators))
        self._carrier = carrier

    def compose(self, a, b):
        return self.section(self.parent.compose(a, b))

    def inverse(self, a):
        return self.section(self.parent.inverse(a))

    def elements(self):
        if self._carrier is not None:
            return iter(self._carrier())
        if self.parent.order > 1_000_000:
            raise ValueError("quotient enumeration needs an explicit carrier")
        seen = dict()
        for g in self.parent.elements():
            s = self.section(g)
            if s not in seen:
                seen[s] = None
        return iter(seen)

    def random_element(self, rng):
        return self.section(self.parent.random_element(rng))


def min_coset_section(G: FiniteGroup, subgroup: list):
    """Section sending g to the lexicographically least member of g*Z,
    with the identity's coset sent to the identity."""
    ecoset = min(G.compose(G.identity, z) for z in subgroup)

    def section(g):
        m = min(G.compose(g, z) for z in subgroup)
        return G.identity if m == ecoset else m

    return section
