"""Dense matrices over exact phased-cyclotomic scalars.

A matrix is a row-major tuple of PhasedScalar entries together with a
single nonzero rational scale.  Keeping the scale outside the entries is
what removes square roots from the arithmetic: the Fourier matrix is
stored unnormalized with scale 1, conjugation products carry scale 1/d,
and is_scaled_unitary reports the rational constant s with
(scale*E)(scale*E)^dagger = s*I, so no tolerance is ever involved.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cyclo import Cyclotomic, PhasedScalar, lcm, scalar_from_json, scalar_to_json

_ZERO = PhasedScalar.zero(1)
_F1 = Fraction(1)


def _coerce(x, order: int = 1) -> PhasedScalar:
    if isinstance(x, PhasedScalar):
        return x
    return PhasedScalar.of(x, order)


class ExactMatrix:
    __slots__ = ("rows", "cols", "entries", "scale")

    def __init__(self, rows: int, cols: int, entries, scale=_F1):
        scale = Fraction(scale)
        if not scale:
            raise ValueError("matrix scale must be nonzero")
        entries = tuple(entries)
        if len(entries) != rows * cols:
            raise ValueError("entry count does not match shape")
        self.rows = rows
        self.cols = cols
        self.entries = entries
        self.scale = scale

    # -- constructors ---------------------------------------------------

    @staticmethod
    def from_rows(rows, scale=_F1, order: int = 1) -> "ExactMatrix":
        r = len(rows)
        c = len(rows[0]) if r else 0
        ents = []
        for row in rows:
            if len(row) != c:
                raise ValueError("ragged rows")
            ents.extend(_coerce(x, order) for x in row)
        return ExactMatrix(r, c, ents, scale)

    @staticmethod
    def identity(d: int) -> "ExactMatrix":
        one = PhasedScalar.one(1)
        ents = [_ZERO] * (d * d)
        for i in range(d):
            ents[i * d + i] = one
        return ExactMatrix(d, d, ents)

    @staticmethod
    def zeros(rows: int, cols: int) -> "ExactMatrix":
        return ExactMatrix(rows, cols, [_ZERO] * (rows * cols))

    @staticmethod
    def diagonal(values, scale=_F1, order: int = 1) -> "ExactMatrix":
        vals = [_coerce(v, order) for v in values]
        d = len(vals)
        ents = [_ZERO] * (d * d)
        for i, v in enumerate(vals):
            ents[i * d + i] = v
        return ExactMatrix(d, d, ents, scale)

    @staticmethod
    def from_permutation(sigma) -> "ExactMatrix":
        """P with P[sigma[k], k] = 1."""
        d = len(sigma)
        if sorted(sigma) != list(range(d)):
            raise ValueError("not a permutation")
        one = PhasedScalar.one(1)
        ents = [_ZERO] * (d * d)
        for k, s in enumerate(sigma):
            ents[s * d + k] = one
        return ExactMatrix(d, d, ents)

    # -- access -----------------------------------------------------------

    def entry(self, i: int, j: int) -> PhasedScalar:
        return self.entries[i * self.cols + j]

    def row_list(self, i: int):
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    # -- arithmetic --------------------------------------------------------

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch in product")
        n, m, p = self.rows, self.cols, other.cols
        ae, be = self.entries, other.entries
        out = [None] * (n * p)
        for i in range(n):
            arow = i * m
            acc = [None] * p
            for t in range(m):
                a = ae[arow + t]
                if not a.terms:
                    continue
                boff = t * p
                for j in range(p):
                    b = be[boff + j]
                    if not b.terms:
                        continue
                    prod = a * b
                    cur = acc[j]
                    acc[j] = prod if cur is None else cur + prod
            base = i * p
            for j in range(p):
                out[base + j] = acc[j] if acc[j] is not None else _ZERO
        return ExactMatrix(n, p, out, self.scale * other.scale)

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in sum")
        ratio = other.scale / self.scale
        ents = [a + b * ratio for a, b in zip(self.entries, other.entries)]
        return ExactMatrix(self.rows, self.cols, ents, self.scale)

    def __pow__(self, k: int) -> "ExactMatrix":
        if self.rows != self.cols:
            raise ValueError("power of a non-square matrix")
        if k < 0:
            raise ValueError("negative matrix powers unsupported")
        out = ExactMatrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                out = out @ base
            base = base @ base
            k >>= 1
        return out

    def scalar_mul(self, c) -> "ExactMatrix":
        if isinstance(c, (int, Fraction)) and c:
            return ExactMatrix(self.rows, self.cols, self.entries,
                               self.scale * Fraction(c))
        c = _coerce(c)
        ents = [e * c if e.terms else _ZERO for e in self.entries]
        return ExactMatrix(self.rows, self.cols, ents, self.scale)

    def dagger(self) -> "ExactMatrix":
        n, m = self.rows, self.cols
        ents = [None] * (n * m)
        for i in range(n):
            for j in range(m):
                e = self.entries[i * m + j]
                ents[j * n + i] = e.conj() if e.terms else _ZERO
        return ExactMatrix(m, n, ents, self.scale)

    def trace(self) -> PhasedScalar:
        if self.rows != self.cols:
            raise ValueError("trace of a non-square matrix")
        t = PhasedScalar.zero(1)
        for i in range(self.rows):
            t = t + self.entries[i * self.cols + i]
        return t * self.scale

    def tensor(self, other: "ExactMatrix") -> "ExactMatrix":
        ra, ca, rb, cb = self.rows, self.cols, other.rows, other.cols
        ents = [None] * (ra * rb * ca * cb)
        cols = ca * cb
        for i1 in range(ra):
            for j1 in range(ca):
                a = self.entries[i1 * ca + j1]
                for i2 in range(rb):
                    base = (i1 * rb + i2) * cols + j1 * cb
                    for j2 in range(cb):
                        b = other.entries[i2 * cb + j2]
                        ents[base + j2] = a * b if (a.terms and b.terms) else _ZERO
        return ExactMatrix(ra * rb, ca * cb, ents, self.scale * other.scale)

    def substitute(self, values) -> "ExactMatrix":
        ents = [e.substitute(values) if e.terms else e for e in self.entries]
        return ExactMatrix(self.rows, self.cols, ents, self.scale)

    # -- comparisons ---------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        if (self.rows, self.cols) != (other.rows, other.cols):
            return False
        if self.scale == other.scale:
            return all(a == b for a, b in zip(self.entries, other.entries))
        ratio = self.scale / other.scale
        return all(a * ratio == b for a, b in zip(self.entries, other.entries))

    __hash__ = None

    def equal_up_to_phase(self, other: "ExactMatrix"):
        """The unit-modulus c with self == c * other, else None."""
        if (self.rows, self.cols) != (other.rows, other.cols):
            return None
        idx = next((k for k, e in enumerate(other.entries) if e.terms), None)
        if idx is None:
            return PhasedScalar.one(1) if self.nonzero_count() == 0 else None
        a, b = self.entries[idx], other.entries[idx]
        if not a.terms:
            return None
        try:
            c = a * b.inverse()
        except ValueError:
            # multi-term entry: divide leading terms, then verify below
            (ka, ca) = sorted(a.terms.items())[0]
            (kb, cb) = sorted(b.terms.items())[0]
            key = dict(ka)
            for s, e in kb:
                key[s] = key.get(s, 0) - e
            kk = tuple(sorted((s, e) for s, e in key.items() if e))
            try:
                coeff = ca * cb.inverse()
            except (ValueError, ArithmeticError):
                return None
            c = PhasedScalar(coeff.order, {kk: coeff})
        ratio = self.scale / other.scale
        c = c * ratio
        if not c.is_unit_modulus():
            return None
        plain = ratio == 1
        for x, y in zip(self.entries, other.entries):
            if not x.terms and not y.terms:
                continue
            lhs = x if plain else x * ratio
            if not (lhs == c * y):
                return None
        return c

    def value_key(self, order: int):
        """Hashable fingerprint of the value (scale folded in), at a fixed
        ambient order that every entry must promote into."""
        return tuple((e * self.scale).promote(order).key() for e in self.entries)

    # -- structure ---------------------------------------------------------

    def is_scaled_unitary(self):
        """The rational s with (scale*M)(scale*M)^dagger = s*I, else None."""
        if self.rows != self.cols:
            return None
        p = self @ self.dagger()
        d = self.rows
        first = p.entries[0].rational_value()
        if first is None or first == 0:
            return None
        for i in range(d):
            for j in range(d):
                e = p.entries[i * d + j]
                if i == j:
                    if not (e == p.entries[0]):
                        return None
                elif e.terms:
                    return None
        return p.scale * first

    def is_identity(self) -> bool:
        if self.rows != self.cols:
            return False
        d = self.rows
        for i in range(d):
            for j in range(d):
                e = self.entries[i * d + j]
                if i == j:
                    if not (e * self.scale).is_one():
                        return False
                elif e.terms:
                    return False
        return True

    def nonzero_count(self) -> int:
        return sum(1 for e in self.entries if e.terms)

    def zero_fraction(self) -> Fraction:
        total = self.rows * self.cols
        return Fraction(total - self.nonzero_count(), total)

    def is_monomial(self) -> bool:
        """Exactly one nonzero entry in every row and every column."""
        if self.rows != self.cols:
            return False
        d = self.rows
        col_seen = [False] * d
        for i in range(d):
            hits = [j for j in range(d) if self.entries[i * d + j].terms]
            if len(hits) != 1:
                return False
            j = hits[0]
            if col_seen[j]:
                return False
            col_seen[j] = True
        return True

    def monomial_data(self):
        """(sigma, values) with self[sigma[k], k] = values[k], for monomial
        matrices; None otherwise."""
        if not self.is_monomial():
            return None
        d = self.rows
        sigma = [0] * d
        values = [None] * d
        for i in range(d):
            for j in range(d):
                e = self.entries[i * d + j]
                if e.terms:
                    sigma[j] = i
                    values[j] = e
        return sigma, values

    def determinant(self) -> PhasedScalar:
        """Exact determinant including the scale factor."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        d = self.rows
        mono = self.monomial_data()
        if mono is not None:
            sigma, values = mono
            sign = 1
            for i in range(d):
                for j in range(i + 1, d):
                    if sigma[i] > sigma[j]:
                        sign = -sign
            out = PhasedScalar.of(sign)
            for v in values:
                out = out * v
            return out * (self.scale ** d)
        if not all(e.is_symbol_free() for e in self.entries):
            raise ValueError("dense determinant with formal symbols unsupported")
        work = [list(self.entries[i * d:(i + 1) * d]) for i in range(d)]
        det = PhasedScalar.one(1)
        sign = 1
        for c in range(d):
            piv = next((r for r in range(c, d) if work[r][c].terms), None)
            if piv is None:
                return PhasedScalar.zero(1)
            if piv != c:
                work[c], work[piv] = work[piv], work[c]
                sign = -sign
            pivot = work[c][c]
            det = det * pivot
            inv = pivot.inverse()
            for r in range(c + 1, d):
                f = work[r][c] * inv
                if f.terms:
                    for k in range(c, d):
                        work[r][k] = work[r][k] - f * work[c][k]
        return det * (self.scale ** d) * sign

    def __repr__(self):
        return (f"ExactMatrix({self.rows}x{self.cols}, scale={self.scale}, "
                f"nonzero={self.nonzero_count()})")


def hs_inner(a: ExactMatrix, b: ExactMatrix) -> PhasedScalar:
    """tr(a^dagger b) without forming the product."""
    if (a.rows, a.cols) != (b.rows, b.cols):
        raise ValueError("shape mismatch in inner product")
    acc = PhasedScalar.zero(1)
    for x, y in zip(a.entries, b.entries):
        if x.terms and y.terms:
            acc = acc + x.conj() * y
    return acc * (a.scale * b.scale)


@dataclass(frozen=True)
class MonomialityReport:
    is_monomial: bool
    zero_fraction: Fraction
    per_matrix_nonzero: tuple[int, ...]


def monomiality_report(matrices) -> MonomialityReport:
    mats = list(matrices)
    counts = tuple(m.nonzero_count() for m in mats)
    total = sum(m.rows * m.cols for m in mats)
    zeros = total - sum(counts)
    return MonomialityReport(
        is_monomial=all(m.is_monomial() for m in mats),
        zero_fraction=Fraction(zeros, total) if total else Fraction(0),
        per_matrix_nonzero=counts,
    )


def common_order(matrices) -> int:
    n = 1
    for m in matrices:
        for e in m.entries:
            n = lcm(n, e.order)
    return n


# ---------------------------------------------------------------------------
# JSON


def matrix_to_json(m: ExactMatrix) -> dict:
    return {
        "rows": m.rows,
        "cols": m.cols,
        "scale": str(m.scale),
        "entries": [scalar_to_json(e) for e in m.entries],
    }


def matrix_from_json(obj: dict) -> ExactMatrix:
    return ExactMatrix(int(obj["rows"]), int(obj["cols"]),
                       [scalar_from_json(e) for e in obj["entries"]],
                       Fraction(obj["scale"]))
