"""Explicit matrix groups over small finite fields.

Everything here is brute force on purpose: the odd special linear group
SL_{2n+1} carries the pinned involution g |-> J (g^T)^{-1} J for an
anti-diagonal symmetric J, and this module counts its fixed matrices,
computes tangent spaces, and builds the rank-one embeddings -- all
independently of the root-datum machinery, so the two sides can be
compared.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import DomainError, InternalInconsistencyError, ResourceLimitError
from .intlat import coinvariants, hom_to_units_count, prime_power
from .poly import Poly, poly_adjugate, poly_det, poly_matrix_mul
from .folding import equivalence_classes, fixed_weyl
from .presets import type_a_flip

FULL_SCAN_LIMIT = 300_000
GROUP_ORDER_LIMIT = 10**8
FIELD_SIZE_LIMIT = 512


# -- finite fields -------------------------------------------------------


def _digits(a: int, p: int, e: int) -> list[int]:
    out = []
    for _ in range(e):
        out.append(a % p)
        a //= p
    return out


def _undigits(ds, p: int) -> int:
    v = 0
    for d in reversed(ds):
        v = v * p + d
    return v


def _poly_divides(div, poly, p) -> bool:
    """Whether monic div divides monic poly over F_p (coeffs low-to-high)."""
    rem = list(poly)
    d = len(div) - 1
    while len(rem) - 1 >= d:
        lead = rem[-1]
        if lead:
            shift = len(rem) - 1 - d
            for k, c in enumerate(div):
                rem[shift + k] = (rem[shift + k] - lead * c) % p
        rem.pop()
    return not any(rem)


def _irreducible_tail(p: int, e: int) -> tuple[int, ...]:
    """Tail (m_0..m_{e-1}) of a monic irreducible x^e + sum m_k x^k."""
    for tail in itertools.product(range(p), repeat=e):
        poly = list(tail) + [1]
        if not poly[0]:
            continue  # divisible by x
        reducible = False
        for d in range(1, e // 2 + 1):
            for div_tail in itertools.product(range(p), repeat=d):
                if _poly_divides(list(div_tail) + [1], poly, p):
                    reducible = True
                    break
            if reducible:
                break
        if not reducible:
            return tuple(tail)
    raise InternalInconsistencyError(f"no irreducible polynomial of degree {e} found")


class GF:
    """A finite field with q = p^e elements, as lookup tables.

    Elements are the integers 0..q-1; the base-p digits of an element are
    the coefficients of its polynomial representative, so 0 and 1 are the
    two identities and integers below p form the prime field.
    """

    zero = 0
    one = 1

    def __init__(self, q: int):
        p, e = prime_power(q)
        if q > FIELD_SIZE_LIMIT:
            raise ResourceLimitError(
                f"field size {q} exceeds the table limit {FIELD_SIZE_LIMIT}"
            )
        self.q, self.p, self.e = q, p, e
        self.modulus_tail = None if e == 1 else _irreducible_tail(p, e)
        self._add = [[self._add_slow(a, b) for b in range(q)] for a in range(q)]
        self._mul = [[self._mul_slow(a, b) for b in range(q)] for a in range(q)]
        self._neg = [next(b for b in range(q) if self._add[a][b] == 0) for a in range(q)]
        self._inv = [0] + [
            next(b for b in range(1, q) if self._mul[a][b] == 1) for a in range(1, q)
        ]

    def _add_slow(self, a, b):
        if self.e == 1:
            return (a + b) % self.p
        da, db = _digits(a, self.p, self.e), _digits(b, self.p, self.e)
        return _undigits([(x + y) % self.p for x, y in zip(da, db)], self.p)

    def _mul_slow(self, a, b):
        p, e = self.p, self.e
        if e == 1:
            return (a * b) % p
        da, db = _digits(a, p, e), _digits(b, p, e)
        prod = [0] * (2 * e - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
        for top in range(2 * e - 2, e - 1, -1):
            c = prod[top]
            if c:
                prod[top] = 0
                for k, mcoef in enumerate(self.modulus_tail):
                    prod[top - e + k] = (prod[top - e + k] - c * mcoef) % p
        return _undigits(prod[:e], p)

    def add(self, a, b):
        return self._add[a][b]

    def sub(self, a, b):
        return self._add[a][self._neg[b]]

    def neg(self, a):
        return self._neg[a]

    def mul(self, a, b):
        return self._mul[a][b]

    def inv(self, a):
        if a == 0:
            raise DomainError("zero has no inverse")
        return self._inv[a]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def from_int(self, n: int) -> int:
        return n % self.p

    def elements(self) -> range:
        return range(self.q)


# -- matrices over a field ----------------------------------------------


def mat_transpose(a):
    return tuple(zip(*a))


def mat_mul(F: GF, a, b):
    bt = mat_transpose(b)
    return tuple(
        tuple(
            _dot(F, row, col)
            for col in bt
        )
        for row in a
    )


def _dot(F: GF, u, v):
    acc = 0
    for x, y in zip(u, v):
        acc = F.add(acc, F.mul(x, y))
    return acc


def mat_identity(m: int):
    return tuple(tuple(1 if i == j else 0 for j in range(m)) for i in range(m))


def mat_det(F: GF, a) -> int:
    m = len(a)
    rows = [list(r) for r in a]
    det = 1
    for col in range(m):
        piv = next((r for r in range(col, m) if rows[r][col]), None)
        if piv is None:
            return 0
        if piv != col:
            rows[col], rows[piv] = rows[piv], rows[col]
            det = F.neg(det)
        det = F.mul(det, rows[col][col])
        inv = F.inv(rows[col][col])
        for r in range(col + 1, m):
            f = F.mul(rows[r][col], inv)
            if f:
                rows[r] = [F.sub(x, F.mul(f, y)) for x, y in zip(rows[r], rows[col])]
    return det


def mat_inv(F: GF, a):
    m = len(a)
    rows = [list(r) + [1 if i == j else 0 for j in range(m)] for i, r in enumerate(a)]
    for col in range(m):
        piv = next((r for r in range(col, m) if rows[r][col]), None)
        if piv is None:
            raise DomainError("matrix is singular")
        rows[col], rows[piv] = rows[piv], rows[col]
        inv = F.inv(rows[col][col])
        rows[col] = [F.mul(inv, x) for x in rows[col]]
        for r in range(m):
            if r != col and rows[r][col]:
                f = rows[r][col]
                rows[r] = [F.sub(x, F.mul(f, y)) for x, y in zip(rows[r], rows[col])]
    return tuple(tuple(r[m:]) for r in rows)


# -- the involuted special linear group ----------------------------------


def involution_form(n: int):
    """Anti-diagonal symmetric matrix J of size 2n+1 with alternating
    signs; J is its own inverse and the induced involution of SL_{2n+1}
    preserves the standard pinning."""
    if n < 1:
        raise DomainError("n must be at least 1")
    m = 2 * n + 1
    return tuple(
        tuple((1 if i % 2 else -1) if i + j == m - 1 else 0 for j in range(m))
        for i in range(m)
    )


def form_over(F: GF, j):
    return tuple(tuple(F.from_int(v) for v in row) for row in j)


def theta(F: GF, n: int, g):
    """The involution J (g^T)^{-1} J evaluated over a field."""
    jf = form_over(F, involution_form(n))
    return mat_mul(F, mat_mul(F, jf, mat_transpose(mat_inv(F, g))), jf)


def is_theta_fixed(F: GF, n: int, g) -> bool:
    """g in SL fixed by theta, i.e. g^T J g = J and det g = 1."""
    jf = form_over(F, involution_form(n))
    gt = mat_transpose(g)
    if mat_mul(F, mat_mul(F, gt, jf), g) != jf:
        return False
    return mat_det(F, g) == 1


def sl_order(m: int, q: int) -> int:
    order = q ** (m * (m - 1) // 2)
    for i in range(2, m + 1):
        order *= q**i - 1
    return order


def count_fixed(
    n: int,
    q: int,
    method: str = "auto",
    scan_limit: int = FULL_SCAN_LIMIT,
    order_limit: int = GROUP_ORDER_LIMIT,
) -> int:
    """Number of matrices in SL_{2n+1}(F_q) fixed by the involution.

    A full scan enumerates every matrix when q^(m^2) is small enough;
    otherwise columns are chosen one at a time under the bilinear-form
    constraints, with the ambient group order capped to keep the search
    finite in practice.
    """
    if n < 1:
        raise DomainError("n must be at least 1")
    m = 2 * n + 1
    total = q ** (m * m)
    if method == "auto":
        method = "scan" if total <= scan_limit else "backtrack"
    if method not in ("scan", "backtrack"):
        raise DomainError(f"unknown method {method!r}")
    if method == "scan" and total > scan_limit:
        raise ResourceLimitError(
            f"full scan over {total} matrices exceeds the limit {scan_limit}"
        )
    if method == "backtrack" and sl_order(m, q) > order_limit:
        raise ResourceLimitError(
            f"group order {sl_order(m, q)} exceeds the search limit {order_limit}"
        )
    F = GF(q)
    jf = form_over(F, involution_form(n))
    vectors = list(itertools.product(range(q), repeat=m))
    jv = {v: tuple(_dot(F, row, v) for row in jf) for v in vectors}
    pair = {}
    for u in vectors:
        ju = jv[u]
        for v in vectors:
            pair[u, v] = _dot(F, v, ju)  # v^T J u ... = u^T J v by symmetry
    count = 0
    if method == "scan":
        for flat in itertools.product(range(q), repeat=m * m):
            cols = tuple(flat[c::m] for c in range(m))
            ok = True
            for i in range(m):
                for k in range(i, m):
                    if pair[cols[i], cols[k]] != jf[i][k]:
                        ok = False
                        break
                if not ok:
                    break
            if ok and mat_det(F, tuple(zip(*cols))) == 1:
                count += 1
        return count

    cols: list = []

    def descend(depth: int):
        nonlocal count
        if depth == m:
            if mat_det(F, tuple(zip(*cols))) == 1:
                count += 1
            return
        for v in vectors:
            if pair[v, v] != jf[depth][depth]:
                continue
            if all(pair[cols[k], v] == jf[k][depth] for k in range(depth)):
                cols.append(v)
                descend(depth + 1)
                cols.pop()

    descend(0)
    return count


# -- Bruhat-style prediction from the folded combinatorics ----------------


def bruhat_predicted_count(datum, act, q: int) -> int:
    """Predicted number of fixed rational points: torus part times q^N
    times the length generating function of the fixed Weyl group, where
    lengths count root classes sent to negatives."""
    prime_power(q)
    group = coinvariants(datum.rank, list(act.generators))
    t_count = hom_to_units_count(group, q)
    classes = equivalence_classes(datum, act)
    fw = fixed_weyl(datum, act)
    positives = set(datum.positive_root_indices())
    total = 0
    for w in fw.elements:
        drop = sum(
            1
            for cls in classes
            if all(w[i] not in positives for i in cls.members)
        )
        total += q**drop
    return t_count * q ** len(classes) * total


@dataclass
class CountReport:
    n: int
    q: int
    brute: int
    predicted: int

    @property
    def agree(self) -> bool:
        return self.brute == self.predicted

    def as_dict(self):
        return {
            "n": self.n,
            "q": self.q,
            "brute": self.brute,
            "predicted": self.predicted,
            "agree": self.agree,
        }


def verify_fixed_count(
    n: int, q: int, method: str = "auto", order_limit: int = GROUP_ORDER_LIMIT
) -> CountReport:
    """Compare the brute-force fixed count in SL_{2n+1}(F_q) with the
    prediction computed purely from the folded root combinatorics."""
    datum, act = type_a_flip(2 * n, "sc")
    predicted = bruhat_predicted_count(datum, act, q)
    brute = count_fixed(n, q, method=method, order_limit=order_limit)
    return CountReport(n=n, q=q, brute=brute, predicted=predicted)


# -- tangent space at the identity ---------------------------------------


def _rank_mod_p(rows, p: int) -> int:
    rows = [list(r) for r in rows]
    ncols = len(rows[0]) if rows else 0
    rank = 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col] % p), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][col], -1, p)
        rows[rank] = [(x * inv) % p for x in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col] % p:
                f = rows[r][col]
                rows[r] = [(x - f * y) % p for x, y in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def tangent_dim(n: int, p: int) -> int:
    """Dimension over F_p of trace-zero matrices X with X = -J X^T J."""
    pp, e = prime_power(p)
    if e != 1:
        raise DomainError("characteristic must be a prime")
    m = 2 * n + 1
    j = involution_form(n)
    s = [j[i][m - 1 - i] for i in range(m)]
    nvars = m * m

    def var(i, k):
        return i * m + k

    rows = []
    for i in range(m):
        for k in range(m):
            row = [0] * nvars
            row[var(i, k)] += 1
            row[var(m - 1 - k, m - 1 - i)] += s[i] * s[m - 1 - k]
            rows.append([x % p for x in row])
    trace = [0] * nvars
    for i in range(m):
        trace[var(i, i)] = 1 % p
    rows.append(trace)
    return nvars - _rank_mod_p(rows, p)


class DualNumbers:
    """The ring F_p[t]/(t^2); elements are pairs (a, b) meaning a + b t."""

    zero = (0, 0)
    one = (1, 0)
    t = (0, 1)

    def __init__(self, p: int):
        pp, e = prime_power(p)
        if e != 1:
            raise DomainError("characteristic must be a prime")
        self.p = p

    def add(self, x, y):
        return ((x[0] + y[0]) % self.p, (x[1] + y[1]) % self.p)

    def mul(self, x, y):
        return (
            (x[0] * y[0]) % self.p,
            (x[0] * y[1] + x[1] * y[0]) % self.p,
        )

    def neg(self, x):
        return ((-x[0]) % self.p, (-x[1]) % self.p)

    def from_int(self, n: int):
        return (n % self.p, 0)


def _det_ring(R, rows) -> object:
    m = len(rows)
    if m > 5:
        raise ResourceLimitError("permutation-expansion determinant capped at size 5")
    total = R.zero
    for perm in itertools.permutations(range(m)):
        inversions = sum(
            1 for a in range(m) for b in range(a + 1, m) if perm[a] > perm[b]
        )
        term = R.one
        for i, jj in enumerate(perm):
            term = R.mul(term, rows[i][jj])
        total = R.add(total, term if inversions % 2 == 0 else R.neg(term))
    return total


def dual_fixed_count(n: int, p: int, scan_limit: int = FULL_SCAN_LIMIT) -> int:
    """Count fixed points congruent to the identity over F_p[t]/(t^2).

    This equals p to the tangent dimension, giving an independent check
    on the linear-algebra computation.
    """
    m = 2 * n + 1
    if p ** (m * m) > scan_limit:
        raise ResourceLimitError("dual-number enumeration too large")
    R = DualNumbers(p)
    j = involution_form(n)
    jr = tuple(tuple(R.from_int(v) for v in row) for row in j)
    count = 0
    for flat in itertools.product(range(p), repeat=m * m):
        g = tuple(
            tuple(
                ((1 if i == k else 0), flat[i * m + k])
                for k in range(m)
            )
            for i in range(m)
        )
        gt = tuple(zip(*g))
        jg = tuple(
            tuple(
                _ring_dot(R, row, col)
                for col in zip(*g)
            )
            for row in jr
        )
        gtjg = tuple(
            tuple(_ring_dot(R, row, col) for col in zip(*jg)) for row in gt
        )
        if gtjg != jr:
            continue
        if _det_ring(R, g) == R.one:
            count += 1
    return count


def _ring_dot(R, u, v):
    acc = R.zero
    for x, y in zip(u, v):
        acc = R.add(acc, R.mul(x, y))
    return acc


# -- rank-one embeddings --------------------------------------------------


def embed_positions(i: int, n: int) -> tuple[int, int, int]:
    """0-based row/column trio hosting the i-th rank-one block."""
    if not 1 <= i <= n:
        raise DomainError(f"index {i} outside 1..{n}")
    return (i - 1, n, 2 * n + 1 - i)


def embed_matrix(i: int, n: int, block, *, one, zero, neg):
    """Place a 3x3 block at the i-th trio of SL_{2n+1}, identity elsewhere.

    Entries crossing the third trio position pick up the sign (-1)^(i+n);
    the corner entry stays plain.  The result is conjugate to the naive
    block embedding by a diagonal sign matrix, hence multiplicative.
    """
    m = 2 * n + 1
    pos = embed_positions(i, n)
    flip = (i + n) % 2 == 1
    out = [[one if r == c else zero for c in range(m)] for r in range(m)]
    for r in range(3):
        for c in range(3):
            v = block[r][c]
            if flip and (r == 2) != (c == 2):
                v = neg(v)
            out[pos[r]][pos[c]] = v
    return tuple(tuple(row) for row in out)


def embed_matrix_over(F: GF, i: int, n: int, block):
    return embed_matrix(i, n, block, one=F.one, zero=F.zero, neg=F.neg)


def embedding_identity_holds(i: int, n: int) -> bool:
    """Polynomial identity: the involution commutes with the i-th embedding.

    Both sides are computed with adjugates, so the comparison is between
    integer polynomials in the nine block entries; the difference must be
    det - 1 at the diagonal positions outside the trio and zero elsewhere,
    which vanishes identically on the determinant-one locus.
    """
    nv = 9
    one = Poly.const(nv, 1)
    zero = Poly.const(nv, 0)
    g3 = [[Poly.var(nv, r * 3 + c) for c in range(3)] for r in range(3)]
    det3 = poly_det(g3)
    j3 = [[Poly.const(nv, v) for v in row] for row in involution_form(1)]
    theta3 = poly_matrix_mul(
        poly_matrix_mul(j3, [list(r) for r in zip(*poly_adjugate(g3))]), j3
    )
    m = 2 * n + 1
    fg = embed_matrix(i, n, g3, one=one, zero=zero, neg=lambda x: -x)
    jm = [[Poly.const(nv, v) for v in row] for row in involution_form(n)]
    lhs = poly_matrix_mul(
        poly_matrix_mul(jm, [list(r) for r in zip(*poly_adjugate(fg))]), jm
    )
    rhs = embed_matrix(i, n, theta3, one=one, zero=zero, neg=lambda x: -x)
    trio = set(embed_positions(i, n))
    extra = det3 - one
    for r in range(m):
        for c in range(m):
            diff = lhs[r][c] - rhs[r][c]
            if r == c and r not in trio:
                if diff != extra:
                    return False
            elif not diff.is_zero():
                return False
    return True


# -- rank-one sections ----------------------------------------------------


def xi_odd(F: GF, block):
    """Section SL_2 -> fixed subgroup of SL_3, defined when 2 is a unit.

    The image of [[a,b],[c,d]] is the symmetric-square matrix written in
    the coordinates where the involution fixes it entrywise; the kernel
    is +/-identity.
    """
    if F.p == 2:
        raise DomainError("the rank-one section needs 2 invertible")
    (a, b), (c, d) = block
    if F.sub(F.mul(a, d), F.mul(b, c)) != 1:
        raise DomainError("input must have determinant one")
    two = F.from_int(2)
    half = F.inv(two)
    return (
        (F.mul(a, a), F.mul(a, b), F.mul(F.mul(b, b), half)),
        (F.mul(two, F.mul(a, c)), F.add(F.mul(a, d), F.mul(b, c)), F.mul(b, d)),
        (F.mul(two, F.mul(c, c)), F.mul(two, F.mul(c, d)), F.mul(d, d)),
    )


def xi_even(F: GF, block):
    """Section SL_2 -> fixed subgroup of SL_3 in characteristic 2."""
    if F.p != 2:
        raise DomainError("this section is specific to characteristic 2")
    (a, b), (c, d) = block
    if F.sub(F.mul(a, d), F.mul(b, c)) != 1:
        raise DomainError("input must have determinant one")
    return ((a, 0, b), (0, 1, 0), (c, 0, d))


# -- fixed points on the unipotent part -----------------------------------


def _u3_theta_images():
    """Involution on upper unitriangular 3x3 coordinates (x, y, z)."""
    nv = 3
    x, y, z = (Poly.var(nv, k) for k in range(3))
    one = Poly.const(nv, 1)
    zero = Poly.const(nv, 0)
    u = [[one, x, y], [zero, one, z], [zero, zero, one]]
    uinv = [[one, -x, x * z - y], [zero, one, -z], [zero, zero, one]]
    prod = poly_matrix_mul(u, uinv)
    for r in range(3):
        for c in range(3):
            expect = one if r == c else zero
            if prod[r][c] != expect:
                raise InternalInconsistencyError("unitriangular inverse is wrong")
    j3 = [[Poly.const(nv, v) for v in row] for row in involution_form(1)]
    th = poly_matrix_mul(poly_matrix_mul(j3, [list(r) for r in zip(*uinv)]), j3)
    if th[0][0] != one or th[1][0] != zero or th[2][0] != zero or th[2][1] != zero:
        raise InternalInconsistencyError("involution left the unitriangular group")
    return th[0][1], th[0][2], th[1][2]


def _restrict_to_xy(poly: Poly) -> Poly:
    """Substitute z = x in a polynomial in (x, y, z), landing in (x, y)."""
    out: dict = {}
    for (ex, ey, ez), c in poly.terms.items():
        key = (ex + ez, ey)
        out[key] = out.get(key, 0) + c
    return Poly(2, out)


@dataclass(frozen=True)
class UnipotentFixedPresentation:
    """Coordinate presentation of the fixed locus in the 3x3 unitriangular
    group: two generators cut it out, and eliminating the dependent
    coordinate leaves one plane relation in (x, y)."""

    fixed_equations: tuple[Poly, ...]  # in (x, y, z)
    relation: Poly  # in (x, y) after eliminating z

    def point_count(self, q: int) -> int:
        F = GF(q)
        rel = self.relation
        count = 0
        for xv in F.elements():
            for yv in F.elements():
                acc = 0
                for (ex, ey), c in rel.terms.items():
                    term = F.from_int(c)
                    for _ in range(ex):
                        term = F.mul(term, xv)
                    for _ in range(ey):
                        term = F.mul(term, yv)
                    acc = F.add(acc, term)
                if acc == 0:
                    count += 1
        return count

    def _y_coefficient(self) -> int:
        return self.relation.terms.get((0, 1), 0)

    def is_smooth_mod(self, p: int) -> bool:
        """The relation eliminates y exactly when its y-coefficient is a
        unit; otherwise the fiber has a singular (in fact nonreduced) origin."""
        prime_power(p)
        return self._y_coefficient() % p != 0

    def is_reduced_mod(self, p: int) -> bool:
        return self.is_smooth_mod(p)

    def nilpotent_coordinate_mod(self, p: int) -> str | None:
        return None if self.is_reduced_mod(p) else "x"


def u3_fixed_presentation() -> UnipotentFixedPresentation:
    """Fixed locus of the involution on the unitriangular group of SL_3.

    Solving theta(u) = u coordinatewise gives z = x and x z = 2 y; the
    eliminated relation is x^2 - 2y, an affine line away from 2 and a
    thickened line at 2.
    """
    tx, ty, tz = _u3_theta_images()
    nv = 3
    x, y, z = (Poly.var(nv, k) for k in range(3))
    eq1 = x - tx
    eq2 = y - ty
    eq3 = z - tz
    if eq3 != -eq1:
        raise InternalInconsistencyError("fixed equations are not paired")
    relation = -_restrict_to_xy(eq2)
    expected = Poly(2, {(2, 0): 1, (0, 1): -2})
    if relation != expected:
        raise InternalInconsistencyError("eliminated relation has unexpected form")
    return UnipotentFixedPresentation(
        fixed_equations=(eq1, eq2),
        relation=relation,
    )


@dataclass(frozen=True)
class UnipotentFactor:
    """One coordinate factor of the fixed unipotent group: a plain affine
    line for a one-orbit class, the thickened line for a two-orbit class."""

    kind: str  # "line" or "twisted"
    members: tuple[int, ...]

    def point_count(self, q: int) -> int:
        if self.kind == "line":
            return q
        return u3_fixed_presentation().point_count(q)


def u_fixed_factors(datum, act) -> tuple[UnipotentFactor, ...]:
    classes = equivalence_classes(datum, act)
    return tuple(
        UnipotentFactor(
            kind="twisted" if cls.special else "line",
            members=cls.members,
        )
        for cls in classes
    )


def u_fixed_point_count(datum, act, q: int) -> int:
    total = 1
    for factor in u_fixed_factors(datum, act):
        total *= factor.point_count(q)
    return total


def special_linear_sample(F: GF, size: int, rng):
    """A uniform-ish determinant-one matrix: draw until invertible, then
    scale the first row."""
    while True:
        rows = [[rng.randrange(F.q) for _ in range(size)] for _ in range(size)]
        d = mat_det(F, rows)
        if d:
            inv = F.inv(d)
            rows[0] = [F.mul(inv, x) for x in rows[0]]
            return tuple(tuple(r) for r in rows)
