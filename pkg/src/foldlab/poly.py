"""Sparse integer polynomials in finitely many variables.

Just enough ring arithmetic to state matrix identities exactly: terms are
stored as a map from exponent tuples to nonzero integer coefficients.
"""

from __future__ import annotations

from .errors import DomainError


class Poly:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms=None):
        self.nvars = nvars
        clean = {}
        for mono, coeff in (terms or {}).items():
            if len(mono) != nvars:
                raise DomainError("monomial length differs from variable count")
            if coeff:
                clean[tuple(mono)] = int(coeff)
        self.terms = clean

    @classmethod
    def const(cls, nvars: int, c: int) -> "Poly":
        zero = tuple([0] * nvars)
        return cls(nvars, {zero: c} if c else {})

    @classmethod
    def var(cls, nvars: int, i: int) -> "Poly":
        mono = tuple(1 if k == i else 0 for k in range(nvars))
        return cls(nvars, {mono: 1})

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.nvars != self.nvars:
                raise DomainError("mixed variable counts")
            return other
        if isinstance(other, int):
            return Poly.const(self.nvars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return Poly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.nvars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return Poly(self.nvars, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for mono, coeff in sorted(self.terms.items()):
            vs = "*".join(
                f"x{i}" + (f"^{e}" if e > 1 else "")
                for i, e in enumerate(mono)
                if e
            )
            bits.append(f"{coeff}{'*' + vs if vs else ''}")
        return " + ".join(bits)


def poly_matrix_mul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    return [
        [sum((a[i][t] * b[t][j] for t in range(k)), start=a[0][0] * 0) for j in range(m)]
        for i in range(n)
    ]


def poly_det(mat) -> Poly:
    """Determinant by expansion along the sparsest column."""
    n = len(mat)
    zero = mat[0][0] * 0
    if n == 1:
        return mat[0][0]

    def go(rows, cols):
        if len(cols) == 1:
            return mat[rows[0]][cols[0]]
        best = min(
            range(len(cols)),
            key=lambda cj: sum(1 for r in rows if not mat[r][cols[cj]].is_zero()),
        )
        col = cols[best]
        rest_cols = cols[:best] + cols[best + 1:]
        total = zero
        for pos, r in enumerate(rows):
            entry = mat[r][col]
            if entry.is_zero():
                continue
            sub = go(rows[:pos] + rows[pos + 1:], rest_cols)
            term = entry * sub
            if (pos + best) % 2:
                term = -term
            total = total + term
        return total

    return go(tuple(range(n)), tuple(range(n)))


def poly_adjugate(mat):
    """Adjugate: adj[j][i] = (-1)^(i+j) * minor(i, j)."""
    n = len(mat)
    if n == 1:
        return [[Poly.const(mat[0][0].nvars, 1)]]
    all_idx = tuple(range(n))
    out = [[None] * n for _ in range(n)]
    for i in range(n):
        rows = all_idx[:i] + all_idx[i + 1:]
        for j in range(n):
            cols = all_idx[:j] + all_idx[j + 1:]
            minor = [[mat[r][c] for c in cols] for r in rows]
            d = poly_det(minor)
            out[j][i] = d if (i + j) % 2 == 0 else -d
    return out
