"""Exact arithmetic in cyclotomic fields, plus formal unit-modulus phases.

An element of Q(zeta_n) is stored as its canonical residue mod the n-th
cyclotomic polynomial: a dict mapping exponents k (0 <= k < deg Phi_n) to
nonzero Fraction coefficients.  The zero element is the empty dict, so
zero tests and equality are dict comparisons with no tolerance anywhere.

PhasedScalar extends the field by formal phase symbols registered with
declare_phase_symbol.  A symbol stands for a unit-modulus complex number
about which nothing else is assumed: conj(t) = t^-1, and no power of t
with nonzero exponent has finite multiplicative order.  Scalars are
finite Laurent combinations of symbol monomials with cyclotomic
coefficients; the symbol-free case is the plain field element.

Ambient orders are fixed by the caller and promoted to the lcm when
mixed.  No automatic conductor minimization is attempted.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd

Rational = Fraction

_F0 = Fraction(0)
_F1 = Fraction(1)


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def divisors(n: int) -> list[int]:
    small, big = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                big.append(n // d)
        d += 1
    return small + big[::-1]


def _polydiv_exact(num: list[int], den: tuple[int, ...]) -> list[int]:
    # den must be monic; raises if the division leaves a remainder.
    num = list(num)
    dd = len(den) - 1
    out = [0] * (len(num) - dd)
    for k in range(len(out) - 1, -1, -1):
        c = num[k + dd]
        if c:
            out[k] = c
            for i, di in enumerate(den):
                num[k + i] -= c * di
    if any(num):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of the n-th cyclotomic polynomial, low degree first."""
    if n < 1:
        raise ValueError("order must be a positive integer")
    if n == 1:
        return (-1, 1)
    num = [0] * (n + 1)
    num[0], num[n] = -1, 1
    for d in range(1, n):
        if n % d == 0:
            num = _polydiv_exact(num, cyclotomic_polynomial(d))
    return tuple(num)


@lru_cache(maxsize=None)
def _phi_degree(n: int) -> int:
    return len(cyclotomic_polynomial(n)) - 1


@lru_cache(maxsize=None)
def _reduction_rows(n: int) -> tuple[tuple[int, ...], ...]:
    """Row k - deg holds the coefficients of x^k mod Phi_n, for deg <= k < n."""
    phi = cyclotomic_polynomial(n)
    deg = len(phi) - 1
    base = tuple(-c for c in phi[:deg])
    rows = [base]
    prev = base
    for _ in range(deg + 1, n):
        top = prev[-1]
        shifted = list((0,) + prev[:-1])
        if top:
            for i, b in enumerate(base):
                shifted[i] += top * b
        prev = tuple(shifted)
        rows.append(prev)
    return tuple(rows)


def _canonical_coeffs(n: int, raw: dict) -> dict[int, Fraction]:
    deg = _phi_degree(n)
    rows = None
    acc: dict[int, Fraction] = {}
    for k, c in raw.items():
        if not c:
            continue
        if not isinstance(c, Fraction):
            c = Fraction(c)
        k %= n
        if k < deg:
            acc[k] = acc.get(k, _F0) + c
        else:
            if rows is None:
                rows = _reduction_rows(n)
            for i, r in enumerate(rows[k - deg]):
                if r:
                    acc[i] = acc.get(i, _F0) + c * r
    return {k: c for k, c in acc.items() if c}


class Cyclotomic:
    """An element of Q(zeta_order), always in canonical residue form."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs: dict, *, _canonical: bool = False):
        if order < 1:
            raise ValueError("order must be a positive integer")
        self.order = order
        self.coeffs = coeffs if _canonical else _canonical_coeffs(order, coeffs)

    # -- constructors ---------------------------------------------------

    @staticmethod
    def zero(order: int = 1) -> "Cyclotomic":
        return Cyclotomic(order, {}, _canonical=True)

    @staticmethod
    def one(order: int = 1) -> "Cyclotomic":
        return Cyclotomic(order, {0: _F1}, _canonical=True)

    @staticmethod
    def from_rational(q, order: int = 1) -> "Cyclotomic":
        q = Fraction(q)
        return Cyclotomic(order, {0: q} if q else {}, _canonical=True)

    @staticmethod
    def zeta(order: int, k: int = 1) -> "Cyclotomic":
        return Cyclotomic(order, {k: _F1})

    # -- plumbing --------------------------------------------------------

    def promote(self, order: int) -> "Cyclotomic":
        if order == self.order:
            return self
        if order % self.order:
            raise ValueError(f"cannot promote order {self.order} into {order}")
        s = order // self.order
        return Cyclotomic(order, {k * s: c for k, c in self.coeffs.items()})

    def _common(self, other: "Cyclotomic"):
        if self.order == other.order:
            return self, other
        n = lcm(self.order, other.order)
        return self.promote(n), other.promote(n)

    def key(self):
        """Hashable canonical fingerprint.  Only comparable at equal order."""
        return (self.order, tuple(sorted(self.coeffs.items())))

    # -- predicates -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return self.coeffs == {0: _F1}

    def rational_value(self):
        """The element as a Fraction if it lies in Q, else None."""
        if not self.coeffs:
            return _F0
        if set(self.coeffs) == {0}:
            return self.coeffs[0]
        return None

    def root_of_unity_order(self):
        """Least m >= 1 with self^m == 1, or None if there is none."""
        if not self.coeffs:
            return None
        m = lcm(2, self.order)
        if not (self ** m).is_one():
            return None
        for d in divisors(m):
            if (self ** d).is_one():
                return d
        return m

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Cyclotomic):
            other = Cyclotomic.from_rational(other)
        a, b = self._common(other)
        out = dict(a.coeffs)
        for k, c in b.coeffs.items():
            s = out.get(k, _F0) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return Cyclotomic(a.order, out, _canonical=True)

    def __neg__(self):
        return Cyclotomic(self.order, {k: -c for k, c in self.coeffs.items()},
                          _canonical=True)

    def __sub__(self, other):
        if not isinstance(other, Cyclotomic):
            other = Cyclotomic.from_rational(other)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            if not q:
                return Cyclotomic.zero(self.order)
            return Cyclotomic(self.order,
                              {k: c * q for k, c in self.coeffs.items()},
                              _canonical=True)
        a, b = self._common(other)
        raw: dict[int, Fraction] = {}
        for ka, ca in a.coeffs.items():
            for kb, cb in b.coeffs.items():
                k = ka + kb
                p = ca * cb
                if k in raw:
                    raw[k] += p
                else:
                    raw[k] = p
        return Cyclotomic(a.order, raw)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = Cyclotomic.one(self.order)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def conj(self) -> "Cyclotomic":
        n = self.order
        return Cyclotomic(n, {(n - k) % n: c for k, c in self.coeffs.items()})

    def inverse(self) -> "Cyclotomic":
        if not self.coeffs:
            raise ZeroDivisionError("inverse of zero")
        q = self.rational_value()
        if q is not None:
            return Cyclotomic.from_rational(1 / q, self.order)
        c = self.conj()
        if (self * c).is_one():
            return c
        # general case: extended gcd against Phi_n over Q[x]
        n = self.order
        deg = _phi_degree(n)
        a = [self.coeffs.get(i, _F0) for i in range(deg)]
        phi = [Fraction(x) for x in cyclotomic_polynomial(n)]
        g, u = _poly_xgcd(a, phi)
        g0 = g[0]
        inv = Cyclotomic(n, {i: ui / g0 for i, ui in enumerate(u)})
        if not (self * inv).is_one():
            raise ArithmeticError("inverse computation failed")
        return inv

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Cyclotomic.from_rational(other)
        elif not isinstance(other, Cyclotomic):
            return NotImplemented
        a, b = self._common(other)
        return a.coeffs == b.coeffs

    __hash__ = None

    def __repr__(self):
        if not self.coeffs:
            return f"Cyc({self.order}; 0)"
        parts = " + ".join(f"{c}*z^{k}" if k else str(c)
                           for k, c in sorted(self.coeffs.items()))
        return f"Cyc({self.order}; {parts})"


def _poly_trim(p: list[Fraction]) -> list[Fraction]:
    while p and not p[-1]:
        p.pop()
    return p


def _poly_divmod(a: list[Fraction], b: list[Fraction]):
    a = a[:]
    q = [_F0] * max(1, len(a) - len(b) + 1)
    inv_lead = 1 / b[-1]
    for k in range(len(a) - len(b), -1, -1):
        c = a[k + len(b) - 1] * inv_lead
        if c:
            q[k] = c
            for i, bi in enumerate(b):
                a[k + i] -= c * bi
    return _poly_trim(q), _poly_trim(a)


def _poly_xgcd(a: list[Fraction], b: list[Fraction]):
    """Return (g, u) with u*a = g mod b, g = gcd(a, b) up to a unit."""
    r0, r1 = _poly_trim(a[:]), _poly_trim(b[:])
    s0, s1 = [_F1], [_F0]
    while r1:
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, r
        qs = [_F0] * (len(q) + len(s1) - 1) if s1 else []
        for i, qi in enumerate(q):
            if qi:
                for j, sj in enumerate(s1):
                    qs[i + j] += qi * sj
        s0, s1 = s1, _poly_trim([x - y for x, y in
                                 zip(s0 + [_F0] * max(0, len(qs) - len(s0)),
                                     qs + [_F0] * max(0, len(s0) - len(qs)))])
    return r0, s0


# ---------------------------------------------------------------------------
# formal phase symbols


_SYMBOLS: set[str] = set()


def declare_phase_symbol(name: str) -> None:
    """Register a formal unit-modulus phase symbol for use in PhasedScalar."""
    if not name or not name.isidentifier():
        raise ValueError(f"bad symbol name {name!r}")
    _SYMBOLS.add(name)


def _merge_keys(ka, kb):
    if not ka:
        return kb
    if not kb:
        return ka
    d = dict(ka)
    for s, e in kb:
        e2 = d.get(s, 0) + e
        if e2:
            d[s] = e2
        else:
            del d[s]
    return tuple(sorted(d.items()))


class PhasedScalar:
    """Finite sum of phase-symbol monomials with cyclotomic coefficients.

    terms maps a sorted tuple of (symbol, exponent) pairs, exponents
    nonzero, to a nonzero Cyclotomic coefficient.  The empty key is the
    symbol-free part.  All coefficients share the ambient order.
    """

    __slots__ = ("order", "terms")

    def __init__(self, order: int, terms: dict, *, _canonical: bool = False):
        self.order = order
        if _canonical:
            self.terms = terms
        else:
            clean: dict = {}
            for key, c in terms.items():
                if not isinstance(c, Cyclotomic):
                    c = Cyclotomic.from_rational(c, order)
                c = c.promote(order)
                key = tuple(sorted((s, e) for s, e in key if e))
                for s, _ in key:
                    if s not in _SYMBOLS:
                        raise ValueError(f"undeclared phase symbol {s!r}")
                if key in clean:
                    c = clean[key] + c
                if c.is_zero():
                    clean.pop(key, None)
                else:
                    clean[key] = c
            self.terms = clean

    # -- constructors ---------------------------------------------------

    @staticmethod
    def zero(order: int = 1) -> "PhasedScalar":
        return PhasedScalar(order, {}, _canonical=True)

    @staticmethod
    def one(order: int = 1) -> "PhasedScalar":
        return PhasedScalar(order, {(): Cyclotomic.one(order)}, _canonical=True)

    @staticmethod
    def of(value, order: int = 1) -> "PhasedScalar":
        """Coerce an int, Fraction, Cyclotomic or PhasedScalar."""
        if isinstance(value, PhasedScalar):
            return value if order == 1 else value.promote(lcm(order, value.order))
        if isinstance(value, Cyclotomic):
            n = lcm(order, value.order)
            v = value.promote(n)
            if v.is_zero():
                return PhasedScalar.zero(n)
            return PhasedScalar(n, {(): v}, _canonical=True)
        q = Fraction(value)
        if not q:
            return PhasedScalar.zero(order)
        return PhasedScalar(order, {(): Cyclotomic.from_rational(q, order)},
                            _canonical=True)

    @staticmethod
    def zeta(order: int, k: int = 1) -> "PhasedScalar":
        return PhasedScalar.of(Cyclotomic.zeta(order, k))

    @staticmethod
    def symbol(name: str, exponent: int = 1, order: int = 1) -> "PhasedScalar":
        if name not in _SYMBOLS:
            raise ValueError(f"undeclared phase symbol {name!r}")
        if exponent == 0:
            return PhasedScalar.one(order)
        return PhasedScalar(order, {((name, exponent),): Cyclotomic.one(order)},
                            _canonical=True)

    # -- plumbing ---------------------------------------------------------

    def promote(self, order: int) -> "PhasedScalar":
        if order == self.order:
            return self
        return PhasedScalar(order,
                            {k: c.promote(order) for k, c in self.terms.items()},
                            _canonical=True)

    def _common(self, other: "PhasedScalar"):
        if self.order == other.order:
            return self, other
        n = lcm(self.order, other.order)
        return self.promote(n), other.promote(n)

    def key(self):
        return (self.order,
                tuple(sorted((k, c.key()) for k, c in self.terms.items())))

    # -- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return len(self.terms) == 1 and () in self.terms and self.terms[()].is_one()

    def is_symbol_free(self) -> bool:
        return all(not k for k in self.terms)

    def is_single_term(self) -> bool:
        return len(self.terms) == 1

    def as_cyclotomic(self) -> Cyclotomic:
        if not self.terms:
            return Cyclotomic.zero(self.order)
        if not self.is_symbol_free():
            raise ValueError("scalar carries formal symbols")
        return self.terms[()]

    def rational_value(self):
        if not self.terms:
            return _F0
        if self.is_symbol_free():
            return self.terms[()].rational_value()
        return None

    def is_unit_modulus(self) -> bool:
        return (self * self.conj()).is_one()

    def root_of_unity_order(self):
        """Least m with self^m == 1, or None.

        A scalar with symbol support never has finite order: distinct
        monomial keys are independent, so powers keep a nontrivial key.
        """
        if not self.terms:
            return None
        if not self.is_symbol_free():
            return None
        return self.terms[()].root_of_unity_order()

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, PhasedScalar):
            other = PhasedScalar.of(other, self.order)
        a, b = self._common(other)
        out = dict(a.terms)
        for k, c in b.terms.items():
            if k in out:
                s = out[k] + c
                if s.is_zero():
                    del out[k]
                else:
                    out[k] = s
            else:
                out[k] = c
        return PhasedScalar(a.order, out, _canonical=True)

    def __neg__(self):
        return PhasedScalar(self.order, {k: -c for k, c in self.terms.items()},
                            _canonical=True)

    def __sub__(self, other):
        if not isinstance(other, PhasedScalar):
            other = PhasedScalar.of(other, self.order)
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, PhasedScalar):
            other = PhasedScalar.of(other, self.order)
        a, b = self._common(other)
        out: dict = {}
        for ka, ca in a.terms.items():
            for kb, cb in b.terms.items():
                k = _merge_keys(ka, kb)
                p = ca * cb
                if k in out:
                    s = out[k] + p
                    if s.is_zero():
                        del out[k]
                    else:
                        out[k] = s
                elif not p.is_zero():
                    out[k] = p
        return PhasedScalar(a.order, out, _canonical=True)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = PhasedScalar.one(self.order)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def conj(self) -> "PhasedScalar":
        return PhasedScalar(
            self.order,
            {tuple((s, -e) for s, e in k): c.conj() for k, c in self.terms.items()},
            _canonical=True)

    def inverse(self) -> "PhasedScalar":
        if not self.terms:
            raise ZeroDivisionError("inverse of zero")
        if len(self.terms) != 1:
            raise ValueError("inverse supported for single-term scalars only")
        ((key, c),) = self.terms.items()
        nkey = tuple((s, -e) for s, e in key)
        return PhasedScalar(self.order, {nkey: c.inverse()}, _canonical=True)

    def divide(self, other: "PhasedScalar") -> "PhasedScalar":
        if not isinstance(other, PhasedScalar):
            other = PhasedScalar.of(other, self.order)
        return self * other.inverse()

    def unit_sqrt(self) -> "PhasedScalar":
        """Some s with s*s == self.  Single-term scalars whose coefficient
        is a root of unity and whose symbol exponents are even."""
        if len(self.terms) != 1:
            raise ValueError("unit_sqrt needs a single-term scalar")
        ((key, c),) = self.terms.items()
        if any(e % 2 for _, e in key):
            raise ValueError("odd symbol exponent has no monomial square root")
        m = c.root_of_unity_order()
        if m is None:
            raise ValueError("coefficient is not a root of unity")
        j = next(j for j in range(m) if c == Cyclotomic.zeta(m) ** j)
        half = PhasedScalar.of(Cyclotomic.zeta(2 * m) ** j, self.order)
        mono = PhasedScalar(half.order,
                            {tuple((s, e // 2) for s, e in key):
                             Cyclotomic.one(half.order)}, _canonical=True)
        s = half * mono
        assert (s * s) == self
        return s

    def substitute(self, values: dict[str, "PhasedScalar"]) -> "PhasedScalar":
        """Replace symbols by unit-modulus scalars; unlisted symbols stay."""
        out = PhasedScalar.zero(self.order)
        for key, c in self.terms.items():
            term = PhasedScalar.of(c)
            rest = []
            for s, e in key:
                if s in values:
                    v = values[s]
                    if not v.is_unit_modulus():
                        raise ValueError(f"substitution for {s!r} is not unit modulus")
                    term = term * (v ** e if e >= 0 else v.conj() ** (-e))
                else:
                    rest.append((s, e))
            if rest:
                term = term * PhasedScalar(term.order,
                                           {tuple(rest): Cyclotomic.one(term.order)},
                                           _canonical=True)
            out = out + term
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Cyclotomic)):
            other = PhasedScalar.of(other, self.order)
        elif not isinstance(other, PhasedScalar):
            return NotImplemented
        a, b = self._common(other)
        return a.terms == b.terms

    __hash__ = None

    def __repr__(self):
        if not self.terms:
            return f"Scalar({self.order}; 0)"
        bits = []
        for key, c in sorted(self.terms.items()):
            mono = "*".join(f"{s}^{e}" for s, e in key)
            bits.append(f"({c!r})*{mono}" if mono else repr(c))
        return f"Scalar({self.order}; " + " + ".join(bits) + ")"


def as_scalar(value, order: int = 1) -> PhasedScalar:
    return PhasedScalar.of(value, order)


# ---------------------------------------------------------------------------
# JSON encoding.  Exponent keys and rationals travel as strings.


def scalar_to_json(s: PhasedScalar) -> dict:
    def one_term(key, c):
        return ({str(k): str(v) for k, v in sorted(c.coeffs.items())},
                {name: e for name, e in key})

    if len(s.terms) <= 1:
        if s.terms:
            ((key, c),) = s.terms.items()
        else:
            key, c = (), Cyclotomic.zero(s.order)
        coeffs, symbols = one_term(key, c)
        return {"order": s.order, "coeffs": coeffs, "symbols": symbols}
    terms = []
    for key, c in sorted(s.terms.items()):
        coeffs, symbols = one_term(key, c)
        terms.append({"coeffs": coeffs, "symbols": symbols})
    return {"order": s.order, "terms": terms}


def scalar_from_json(obj: dict) -> PhasedScalar:
    order = int(obj["order"])

    def parse_term(t) -> PhasedScalar:
        c = Cyclotomic(order, {int(k): Fraction(v) for k, v in t["coeffs"].items()})
        key = tuple(sorted((str(name), int(e))
                           for name, e in t.get("symbols", {}).items() if int(e)))
        for name, _ in key:
            declare_phase_symbol(name)
        if c.is_zero():
            return PhasedScalar.zero(order)
        return PhasedScalar(order, {key: c}, _canonical=True)

    if "terms" in obj:
        out = PhasedScalar.zero(order)
        for t in obj["terms"]:
            out = out + parse_term(t)
        return out
    return parse_term(obj)
