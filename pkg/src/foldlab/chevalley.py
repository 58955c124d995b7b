"""Integral structure constants and action-equivariant sign choices.

The Lie algebra attached to a root datum is handled purely through its
structure constants: basis X_delta for each root delta plus the coroot
span.  Signs are fixed the classical way -- order positive roots by
height, give each nonsimple positive root its extraspecial decomposition
(the special pair with least first member, necessarily simple) a positive
constant, and derive every other constant from the Jacobi identity and the
length-weighted three-root relation

    N(a,b)/|c|^2 = N(b,c)/|a|^2 = N(c,a)/|b|^2      (a + b + c = 0).

Magnitudes always equal the root-string bound; this is asserted, not
assumed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, InternalInconsistencyError
from .rootdata import RootDatum
from .action import PinnedAction


def chain_length(datum: RootDatum, i: int, j: int) -> int:
    """Least r >= 1 with roots[j] - r*roots[i] not a root."""
    r = 1
    while datum.is_root(
        tuple(b - r * a for a, b in zip(datum.roots[i], datum.roots[j]))
    ):
        r += 1
    return r


def _squared_lengths(datum: RootDatum) -> tuple[Fraction, ...]:
    """W-invariant squared lengths, normalized to 2 on the first simple
    root of each component; only within-component ratios are ever used."""
    k = len(datum.basis_indices)
    cartan = [
        [datum.pairing(datum.basis_indices[j], datum.basis_indices[i]) for j in range(k)]
        for i in range(k)
    ]
    d = [None] * k
    for start in range(k):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        stack = [start]
        while stack:
            a = stack.pop()
            for b in range(k):
                if a != b and cartan[a][b] and d[b] is None:
                    d[b] = d[a] * cartan[a][b] / cartan[b][a]
                    stack.append(b)
    out = []
    for idx in range(datum.nroots):
        c = datum.simple_coordinates(idx)
        total = Fraction(0)
        for i in range(k):
            if not c[i]:
                continue
            for j in range(k):
                if c[j]:
                    total += c[i] * c[j] * d[i] * cartan[i][j]
        out.append(total)
    return tuple(out)


@dataclass
class StructureConstants:
    """Full table N(i, j) over ordered root-index pairs with a root sum."""

    datum: RootDatum
    table: dict[tuple[int, int], int]
    eps: dict[int, int]  # positive root index -> sign relative to the base system
    xs_pair: dict[int, tuple[int, int]]  # positive nonsimple root -> extraspecial pair
    lengths2: tuple[Fraction, ...]
    order_key: dict[int, tuple]

    def constant(self, i: int, j: int) -> int:
        return self.table[(i, j)]

    def bracket(self, key_a, key_b) -> dict:
        """Bracket of basis elements; keys ('r', i) or ('h', k)."""
        d = self.datum
        kind_a, a = key_a
        kind_b, b = key_b
        if kind_a == "h" and kind_b == "h":
            return {}
        if kind_a == "h" and kind_b == "r":
            return {key_b: d.roots[b][a]}
        if kind_a == "r" and kind_b == "h":
            return {key_a: -d.roots[a][b]}
        total = tuple(x + y for x, y in zip(d.roots[a], d.roots[b]))
        if all(x == 0 for x in total):
            return {("h", k): c for k, c in enumerate(d.coroots[a]) if c}
        if d.is_root(total):
            return {("r", d.root_index(total)): self.table[(a, b)]}
        return {}

    def bracket_elements(self, ea: dict, eb: dict) -> dict:
        out: dict = {}
        for ka, ca in ea.items():
            for kb, cb in eb.items():
                for k, c in self.bracket(ka, kb).items():
                    out[k] = out.get(k, 0) + ca * cb * c
        return {k: c for k, c in out.items() if c}


def _positive_order(datum: RootDatum):
    pos = sorted(
        datum.positive_root_indices(),
        key=lambda i: (datum.height(i), datum.simple_coordinates(i)),
    )
    key = {i: (datum.height(i), datum.simple_coordinates(i)) for i in pos}
    return pos, key


def base_constants(datum: RootDatum) -> StructureConstants:
    """Deterministic base Chevalley system for a reduced datum."""
    if not datum.reduced:
        raise DomainError("structure constants require a reduced datum")
    pos, order_key = _positive_order(datum)
    pos_set = set(pos)
    len2 = _squared_lengths(datum)
    table: dict[tuple[int, int], Fraction | int] = {}

    def neg(i):
        return datum.negative_of(i)

    def resolve(i, j) -> Fraction:
        """Constant for an arbitrary valid pair, reducing to the positive table."""
        if (i, j) in table:
            return Fraction(table[(i, j)])
        ip, jp = i in pos_set, j in pos_set
        if ip and jp:
            raise InternalInconsistencyError(
                "positive pair requested before its height was processed"
            )
        if not ip and not jp:
            val = -resolve(neg(i), neg(j))
        elif not ip:
            val = -resolve(j, i)
        else:
            # i positive, j negative
            s = tuple(a + b for a, b in zip(datum.roots[i], datum.roots[j]))
            si = datum.root_index(s)
            if si in pos_set:
                val = -resolve(neg(j), si) * len2[si] / len2[i]
            else:
                val = resolve(neg(si), i) * len2[si] / len2[j]
        table[(i, j)] = val
        return val

    def special_pairs(c):
        out = []
        for a in pos:
            if order_key[a] >= order_key[c]:
                break
            rest = tuple(x - y for x, y in zip(datum.roots[c], datum.roots[a]))
            if datum.is_root(rest):
                b = datum.root_index(rest)
                if b in pos_set and order_key[a] < order_key[b]:
                    out.append((a, b))
        return out

    xs_pair: dict[int, tuple[int, int]] = {}
    for c in pos:
        if datum.height(c) == 1:
            continue
        pairs = special_pairs(c)
        if not pairs:
            raise InternalInconsistencyError(
                "nonsimple positive root with no special pair"
            )
        pairs.sort(key=lambda ab: order_key[ab[0]])
        eps_pair = pairs[0]
        if datum.height(eps_pair[0]) != 1:
            raise InternalInconsistencyError(
                "extraspecial pair does not start at a simple root"
            )
        xs_pair[c] = eps_pair
        e, h = eps_pair
        table[(e, h)] = chain_length(datum, e, h)
        table[(h, e)] = -table[(e, h)]
        for a, b in pairs[1:]:
            # Jacobi on (X_{-e}, X_a, X_b); only N(a, b) is unknown.
            t = Fraction(0)
            d_ae = tuple(x - y for x, y in zip(datum.roots[a], datum.roots[e]))
            if datum.is_root(d_ae):
                k = datum.root_index(d_ae)
                t += resolve(neg(e), a) * resolve(k, b)
            d_be = tuple(x - y for x, y in zip(datum.roots[b], datum.roots[e]))
            if datum.is_root(d_be):
                k = datum.root_index(d_be)
                t += resolve(b, neg(e)) * resolve(k, a)
            n_c_nege = resolve(c, neg(e))
            if n_c_nege == 0:
                raise InternalInconsistencyError("vanishing pivot constant")
            val = -t / n_c_nege
            if val.denominator != 1:
                raise InternalInconsistencyError(
                    f"derived constant is not an integer: {val}"
                )
            table[(a, b)] = val
            table[(b, a)] = -val

    # complete the table over every valid ordered pair and check magnitudes
    n = datum.nroots
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            s = tuple(x + y for x, y in zip(datum.roots[i], datum.roots[j]))
            if any(s) and datum.is_root(s):
                resolve(i, j)
    final: dict[tuple[int, int], int] = {}
    for (i, j), v in table.items():
        v = Fraction(v)
        if v.denominator != 1:
            raise InternalInconsistencyError("non-integral structure constant")
        iv = int(v)
        expected = chain_length(datum, i, j)
        if abs(iv) != expected:
            raise InternalInconsistencyError(
                f"constant magnitude {abs(iv)} differs from root-string bound {expected}"
            )
        if final.get((j, i), -iv) != -iv:
            raise InternalInconsistencyError("antisymmetry violated")
        final[(i, j)] = iv
    return StructureConstants(
        datum=datum,
        table=final,
        eps={i: 1 for i in pos},
        xs_pair=xs_pair,
        lengths2=len2,
        order_key=order_key,
    )


def verify_jacobi(sc: StructureConstants) -> bool:
    """Exhaustive Jacobi identity over all triples of basis elements."""
    d = sc.datum
    keys = [("r", i) for i in range(d.nroots)] + [("h", k) for k in range(d.rank)]
    m = len(keys)
    for a in range(m):
        for b in range(a + 1, m):
            ab = sc.bracket(keys[a], keys[b])
            for c in range(b + 1, m):
                total: dict = {}
                for term in (
                    sc.bracket_elements(ab, {keys[c]: 1}),
                    sc.bracket_elements(sc.bracket(keys[b], keys[c]), {keys[a]: 1}),
                    sc.bracket_elements(sc.bracket(keys[c], keys[a]), {keys[b]: 1}),
                ):
                    for k, v in term.items():
                        total[k] = total.get(k, 0) + v
                if any(total.values()):
                    raise InternalInconsistencyError(
                        f"Jacobi identity fails on {keys[a]}, {keys[b]}, {keys[c]}"
                    )
    return True


def rescale(sc: StructureConstants, eps: dict[int, int]) -> StructureConstants:
    """System obtained by X_beta -> eps(beta) X_beta (same sign on -beta)."""
    d = sc.datum
    full = {}
    for i in sc.eps:
        e = eps.get(i, 1)
        if e not in (1, -1):
            raise DomainError("signs must be +1 or -1")
        full[i] = e
        full[d.negative_of(i)] = e
    new_table = {}
    for (i, j), v in sc.table.items():
        s = tuple(x + y for x, y in zip(d.roots[i], d.roots[j]))
        k = d.root_index(s)
        new_table[(i, j)] = full[i] * full[j] * full[k] * v
    new_eps = {i: sc.eps[i] * eps.get(i, 1) for i in sc.eps}
    return StructureConstants(
        datum=d,
        table=new_table,
        eps=new_eps,
        xs_pair=sc.xs_pair,
        lengths2=sc.lengths2,
        order_key=sc.order_key,
    )


def automorphism_constants(sc: StructureConstants, act: PinnedAction) -> list[dict[int, int]]:
    """For each group element a, the signs c with a . X_beta = c(beta) X_{a.beta}
    over positive beta, extended from c = +1 on the base.

    Consistency across every special decomposition is asserted; failure
    would mean the element does not extend to a Lie algebra automorphism.
    """
    d = sc.datum
    pos, order_key = _positive_order(d)
    pos_set = set(pos)
    simple = {i for i in pos if d.height(i) == 1}
    out = []
    for perm in act.element_permutations():
        c: dict[int, int] = {i: 1 for i in simple}
        for gamma in pos:
            if gamma in simple:
                continue
            values = set()
            for a in pos:
                if order_key[a] >= order_key[gamma]:
                    break
                rest = tuple(
                    x - y for x, y in zip(d.roots[gamma], d.roots[a])
                )
                if not d.is_root(rest):
                    continue
                b = d.root_index(rest)
                if b not in pos_set or order_key[a] >= order_key[b]:
                    continue
                num = sc.table[(perm[a], perm[b])]
                den = sc.table[(a, b)]
                if abs(num) != abs(den):
                    raise InternalInconsistencyError(
                        "constant magnitude not preserved by the action"
                    )
                values.add(c[a] * c[b] * (num // den))
            if len(values) != 1:
                raise InternalInconsistencyError(
                    "automorphism sign differs across special decompositions"
                )
            c[gamma] = values.pop()
        out.append(c)
    return out


def _d4_components_with_s3(sc: StructureConstants, act: PinnedAction):
    """Components of type D4 whose stabilizer acts with full image S3."""
    from .rootdata import _component_type

    d = sc.datum
    comps = d.components()
    sigma = act.component_permutations()
    found = []
    for ci, comp in enumerate(comps):
        if _component_type(d, comp) != ("D", 4):
            continue
        restricted = set()
        comp_sorted = tuple(sorted(comp))
        for m in act.elements:
            if sigma[m][ci] == ci:
                perm = act.root_permutation(m)
                restricted.add(tuple(perm[i] for i in comp_sorted))
        if len(restricted) == 6:
            found.append(ci)
    return found


def _d4_seed(sc: StructureConstants, comp: tuple[int, ...]) -> dict[int, int]:
    """Signs matching the explicit bracket-word system on a D4 component.

    The words pin every nonsimple positive root vector to an iterated
    bracket of simple vectors, anchored at the branch node."""
    d = sc.datum
    comp_set = set(comp)
    base_pos = [p for p, r in enumerate(d.basis_indices) if r in comp_set]
    idx = {p: d.basis_indices[p] for p in base_pos}
    neighbors = {
        p: [
            q
            for q in base_pos
            if q != p and d.pairing(idx[q], idx[p]) != 0
        ]
        for p in base_pos
    }
    hubs = [p for p in base_pos if len(neighbors[p]) == 3]
    if len(hubs) != 1:
        raise InternalInconsistencyError("D4 component without a unique branch node")
    b = idx[hubs[0]]
    o1, o2, o3 = (idx[p] for p in sorted(q for q in base_pos if q != hubs[0]))

    def x(i):
        return {("r", i): 1}

    def br(ea, eb):
        return sc.bracket_elements(ea, eb)

    words = [
        br(x(o1), x(b)),
        br(x(o2), x(b)),
        br(x(o3), x(b)),
        br(br(x(o1), x(b)), x(o2)),
        br(br(x(o2), x(b)), x(o3)),
        br(br(x(o1), x(b)), x(o3)),
        br(br(br(x(o1), x(b)), x(o2)), x(o3)),
        br(br(br(br(x(o1), x(b)), x(o2)), x(o3)), x(b)),
    ]
    seed = {}
    for w in words:
        if len(w) != 1:
            raise InternalInconsistencyError("bracket word did not land on a root vector")
        (kind, i), coeff = next(iter(w.items()))
        if kind != "r" or abs(coeff) != 1:
            raise InternalInconsistencyError("bracket word has non-unit coefficient")
        seed[i] = coeff
    if len(seed) != 8:
        raise InternalInconsistencyError("bracket words hit fewer than 8 distinct roots")
    return seed


def equivariant_signs(sc: StructureConstants, act: PinnedAction):
    """Sign vector making the system equivariant on all nonspecial roots.

    Returns (adjusted system, classes).  Signs stay +1 on the base; on D4
    components carrying a full S3 action the explicit bracket-word seed is
    installed first.  A stabilizer obstruction on a nonspecial orbit is a
    genuine inconsistency and raises.
    """
    from .folding import equivalence_classes

    d = sc.datum
    classes = equivalence_classes(d, act)
    special = {i for cls in classes for i in cls.special}
    pos, _ = _positive_order(d)
    simple = {i for i in pos if d.height(i) == 1}

    eps: dict[int, int] = {}
    for ci in _d4_components_with_s3(sc, act):
        eps.update(_d4_seed(sc, d.components()[ci]))
    seeded = dict(eps)

    base_c = automorphism_constants(sc, act)
    perms = act.element_permutations()

    done = set()
    for rho in pos:
        if rho in done or rho in special:
            continue
        orb = set(act.orbit_of_root(rho))
        done |= orb
        for c, perm in zip(base_c, perms):
            for y in orb:
                if perm[y] == y and c[y] != 1:
                    raise InternalInconsistencyError(
                        "stabilizer obstruction on a nonspecial orbit"
                    )
        start = eps.get(rho, 1)
        if rho in simple and start != 1:
            raise InternalInconsistencyError("seed sign on a simple root")
        assigned = {rho: start}
        changed = True
        while changed:
            changed = False
            for c, perm in zip(base_c, perms):
                for y in list(assigned):
                    t = perm[y]
                    v = assigned[y] * c[y]
                    if t not in assigned:
                        assigned[t] = v
                        changed = True
                    elif assigned[t] != v:
                        raise InternalInconsistencyError(
                            "inconsistent sign propagation across an orbit"
                        )
        if set(assigned) != orb:
            raise InternalInconsistencyError("orbit not exhausted by generators")
        for y, v in assigned.items():
            if y in seeded and seeded[y] != v:
                raise InternalInconsistencyError(
                    "seed disagrees with propagated equivariant signs"
                )
            if y in simple and v != 1:
                raise InternalInconsistencyError(
                    "equivariant signs would break the pinning on the base"
                )
            eps[y] = v
    adjusted = rescale(sc, eps)
    return adjusted, classes


@dataclass
class OrbitReport:
    members: tuple[int, ...]
    special: bool
    satisfied: bool
    discrepancies: tuple[int, ...]


@dataclass
class EquivarianceReport:
    orbits: tuple[OrbitReport, ...]

    @property
    def nonspecial_all_satisfied(self) -> bool:
        return all(o.satisfied for o in self.orbits if not o.special)

    @property
    def special_values(self) -> tuple[int, ...]:
        vals = set()
        for o in self.orbits:
            if o.special:
                vals |= set(o.discrepancies)
        return tuple(sorted(vals))


def check_equivariance(sc: StructureConstants, act: PinnedAction) -> EquivarianceReport:
    """Per-orbit equivariance of a system: which positive-root orbits have
    a . X_beta = X_{a.beta} for every element, and the sign discrepancies
    where they do not (always +/-1)."""
    from .folding import equivalence_classes

    d = sc.datum
    classes = equivalence_classes(d, act)
    special = {i for cls in classes for i in cls.special}
    c_tables = automorphism_constants(sc, act)
    reports = []
    for cls in classes:
        groups = []
        sp = set(cls.special)
        groups.append(tuple(i for i in cls.members if i not in sp))
        if cls.special:
            groups.append(tuple(cls.special))
        for members in groups:
            if not members:
                continue
            rest = set(members)
            while rest:
                i = min(rest)
                orb = set(act.orbit_of_root(i))
                rest -= orb
                vals = sorted({c[y] for c in c_tables for y in orb})
                is_special = i in special
                reports.append(
                    OrbitReport(
                        members=tuple(sorted(orb)),
                        special=is_special,
                        satisfied=vals == [1],
                        discrepancies=tuple(vals),
                    )
                )
    for r in reports:
        for v in r.discrepancies:
            if v not in (1, -1):
                raise InternalInconsistencyError(
                    "equivariance discrepancy outside +/-1"
                )
    return EquivarianceReport(orbits=tuple(reports))
