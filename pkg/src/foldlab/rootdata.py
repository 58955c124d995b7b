"""Root data with exact lattice coordinates.

A root datum is stored as a character lattice Z^rank, a list of roots
(coordinate tuples in a fixed basis of the lattice), a parallel list of
coroots (coordinates in the dual basis), and the positions of a base of
simple roots.  The pairing of a root with a coroot is the literal dot
product of their coordinate tuples.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, InternalInconsistencyError, ResourceLimitError
from .intlat import IntMatrix

WEYL_LIMIT_DEFAULT = 10**6


@dataclass(frozen=True)
class CartanType:
    """Product of simple types, e.g. (('A', 2), ('A', 2)) for A2+A2."""

    components: tuple[tuple[str, int], ...]

    _RANK_RULES = {
        "A": lambda n: n >= 1,
        "B": lambda n: n >= 2,
        "C": lambda n: n >= 2,
        "D": lambda n: n >= 3,
        "E": lambda n: n in (6, 7, 8),
        "F": lambda n: n == 4,
        "G": lambda n: n == 2,
    }

    def __post_init__(self):
        for fam, n in self.components:
            rule = self._RANK_RULES.get(fam)
            if rule is None or not rule(n):
                raise DomainError(f"no simple type {fam}{n}")

    @classmethod
    def parse(cls, text: str) -> "CartanType":
        parts = []
        for chunk in text.split("+"):
            m = re.fullmatch(r"\s*([A-G])\s*(\d+)\s*", chunk)
            if not m:
                raise DomainError(f"cannot parse Cartan type {text!r}")
            parts.append((m.group(1), int(m.group(2))))
        return cls(tuple(parts))

    @property
    def rank(self) -> int:
        return sum(n for _, n in self.components)

    def __str__(self):
        return "+".join(f"{fam}{n}" for fam, n in self.components) or "torus"


def _simply_laced_edges(fam: str, n: int) -> list[tuple[int, int]]:
    if fam == "A":
        return [(i, i + 1) for i in range(n - 1)]
    if fam == "D":
        # branch node convention: for D4 the branch is alpha_2 (index 1)
        chain = [(i, i + 1) for i in range(n - 3)]
        return chain + [(n - 3, n - 2), (n - 3, n - 1)]
    if fam == "E":
        chain = [(0, 2), (2, 3), (3, 4), (4, 5)]
        chain += [(4 + k, 5 + k) for k in range(1, n - 5)]
        return chain + [(1, 3)]
    raise DomainError(f"not simply laced: {fam}")


def cartan_matrix(fam: str, n: int) -> IntMatrix:
    """Cartan matrix with entry [i][j] = <alpha_j, alpha_i^vee>."""
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def bond(i, j, down=1, up=1):
        # <alpha_j, alpha_i^vee> = -down, <alpha_i, alpha_j^vee> = -up
        a[i][j] = -down
        a[j][i] = -up

    if fam in ("A", "D", "E"):
        for i, j in _simply_laced_edges(fam, n):
            bond(i, j)
    elif fam == "B":
        # last simple root short: <alpha_{n-1}, alpha_n^vee> = -2
        for i in range(n - 2):
            bond(i, i + 1)
        bond(n - 2, n - 1, down=1, up=2)
    elif fam == "C":
        for i in range(n - 2):
            bond(i, i + 1)
        bond(n - 2, n - 1, down=2, up=1)
    elif fam == "F":
        bond(0, 1)
        bond(1, 2, down=1, up=2)  # alpha_3 short
        bond(2, 3)
    elif fam == "G":
        bond(0, 1, down=3, up=1)  # alpha_1 short
    else:
        raise DomainError(f"unknown family {fam}")
    return IntMatrix(a)


def cartan_matrix_product(ct: CartanType) -> IntMatrix:
    n = ct.rank
    a = [[0] * n for _ in range(n)]
    offset = 0
    for fam, r in ct.components:
        block = cartan_matrix(fam, r)
        for i in range(r):
            for j in range(r):
                a[offset + i][offset + j] = block[i, j]
        offset += r
    return IntMatrix(a, cols=n)


def _generate_root_coroot_pairs(cartan: IntMatrix) -> list[tuple[tuple, tuple]]:
    """Close the simple (root, coroot) pairs under simple reflections.

    Roots carry coordinates in the simple-root basis, coroots in the
    simple-coroot basis; the reflection s_i acts on both sides at once.
    """
    n = cartan.rows
    ct = cartan.transpose()
    pairs = {}
    frontier = []
    for i in range(n):
        e = tuple(1 if k == i else 0 for k in range(n))
        pairs[e] = e
        frontier.append(e)
    while frontier:
        new = []
        for v in frontier:
            w = pairs[v]
            cv = cartan.apply(v)
            cw = ct.apply(w)
            for i in range(n):
                rv = tuple(x - (cv[i] if k == i else 0) for k, x in enumerate(v))
                rw = tuple(x - (cw[i] if k == i else 0) for k, x in enumerate(w))
                if rv not in pairs:
                    pairs[rv] = rw
                    new.append(rv)
        frontier = new
    return sorted(pairs.items())


class RootDatum:
    """Root datum (lattice, roots, coroots, base).  Validates on build."""

    def __init__(self, rank, roots, coroots, basis_indices, reduced=True, validate=True):
        self.rank = int(rank)
        self.roots = tuple(tuple(int(x) for x in r) for r in roots)
        self.coroots = tuple(tuple(int(x) for x in c) for c in coroots)
        self.basis_indices = tuple(basis_indices)
        self.reduced = bool(reduced)
        self._index = {r: i for i, r in enumerate(self.roots)}
        if len(self._index) != len(self.roots):
            raise DomainError("duplicate roots")
        self._simple_coords = None
        self._components = None
        if validate:
            self._validate()

    # -- basic queries -------------------------------------------------

    @property
    def nroots(self) -> int:
        return len(self.roots)

    @property
    def basis(self) -> tuple[tuple, ...]:
        return tuple(self.roots[i] for i in self.basis_indices)

    def root_index(self, vector) -> int:
        try:
            return self._index[tuple(vector)]
        except KeyError:
            raise DomainError(f"{vector} is not a root") from None

    def is_root(self, vector) -> bool:
        return tuple(vector) in self._index

    def pairing(self, root_index: int, coroot_index: int) -> int:
        return sum(a * b for a, b in zip(self.roots[root_index], self.coroots[coroot_index]))

    def pair_vectors(self, root_vector, coroot_vector) -> int:
        return sum(a * b for a, b in zip(root_vector, coroot_vector))

    # -- validation ----------------------------------------------------

    def _validate(self):
        if len(self.roots) != len(self.coroots):
            raise DomainError("roots and coroots must correspond one to one")
        for r in self.roots:
            if len(r) != self.rank:
                raise DomainError("root coordinate length differs from rank")
            if all(x == 0 for x in r):
                raise DomainError("zero vector listed as a root")
        for c in self.coroots:
            if len(c) != self.rank:
                raise DomainError("coroot coordinate length differs from rank")
        for i in range(self.nroots):
            if self.pairing(i, i) != 2:
                raise DomainError(
                    f"<alpha, alpha^vee> = {self.pairing(i, i)} != 2 at root {self.roots[i]}"
                )
        coroot_set = set(self.coroots)
        if len(coroot_set) != len(self.coroots):
            raise DomainError("duplicate coroots")
        # reflection stability on both sides
        for i in range(self.nroots):
            for j in range(self.nroots):
                n = self.pairing(j, i)
                image = tuple(x - n * y for x, y in zip(self.roots[j], self.roots[i]))
                if image not in self._index:
                    raise DomainError(
                        f"reflection of {self.roots[j]} along {self.roots[i]} leaves the root set"
                    )
                m = self.pairing(i, j)
                coimage = tuple(
                    x - m * y for x, y in zip(self.coroots[j], self.coroots[i])
                )
                if coimage not in coroot_set:
                    raise DomainError(
                        f"coreflection of {self.coroots[j]} leaves the coroot set"
                    )
        if self.reduced:
            for r in self.roots:
                if tuple(2 * x for x in r) in self._index:
                    raise DomainError("datum marked reduced but contains a doubled root")
        for i in self.basis_indices:
            if not 0 <= i < self.nroots:
                raise DomainError("basis index out of range")
        self._compute_simple_coords()

    def _compute_simple_coords(self):
        """Solve each root as an integer combination of the base, and check
        the combination is uniformly signed."""
        base = [self.roots[i] for i in self.basis_indices]
        k = len(base)
        if k:
            mat = IntMatrix.from_columns(base, self.rank)
            if mat.rank() != k:
                raise DomainError("base of simple roots is linearly dependent")
        coords = []
        for r in self.roots:
            sol = _solve_integer(base, r, self.rank)
            if sol is None:
                raise DomainError(
                    f"root {r} is not an integer combination of the base"
                )
            nonneg = all(x >= 0 for x in sol)
            nonpos = all(x <= 0 for x in sol)
            if not (nonneg or nonpos) or all(x == 0 for x in sol):
                raise DomainError(f"root {r} is not uniformly signed over the base")
            coords.append(tuple(sol))
        self._simple_coords = tuple(coords)

    # -- structure -----------------------------------------------------

    def simple_coordinates(self, root_index: int) -> tuple:
        return self._simple_coords[root_index]

    def is_positive(self, root_index: int) -> bool:
        return any(x > 0 for x in self._simple_coords[root_index])

    def positive_root_indices(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.nroots) if self.is_positive(i))

    def positive_roots(self) -> tuple[tuple, ...]:
        return tuple(self.roots[i] for i in self.positive_root_indices())

    def height(self, root_index: int) -> int:
        return sum(self._simple_coords[root_index])

    def negative_of(self, root_index: int) -> int:
        return self.root_index(tuple(-x for x in self.roots[root_index]))

    def components(self) -> tuple[tuple[int, ...], ...]:
        """Partition of root indices by irreducible component.

        Components are the connected pieces of the base under the Cartan
        pairing; each root joins the component carrying its support.
        """
        if self._components is not None:
            return self._components
        k = len(self.basis_indices)
        parent = list(range(k))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a in range(k):
            for b in range(a + 1, k):
                if self.pairing(self.basis_indices[a], self.basis_indices[b]) != 0:
                    parent[find(a)] = find(b)
        groups: dict[int, list[int]] = {}
        for a in range(k):
            groups.setdefault(find(a), []).append(a)
        comps = []
        for members in sorted(groups.values()):
            support = set(members)
            idxs = [
                i
                for i in range(self.nroots)
                if {j for j, c in enumerate(self._simple_coords[i]) if c} <= support
                and any(self._simple_coords[i])
            ]
            comps.append(tuple(idxs))
        self._components = tuple(comps)
        return self._components

    def simple_reflection_permutation(self, basis_position: int) -> tuple[int, ...]:
        """Permutation of root indices induced by reflecting along the
        basis_position-th simple root."""
        i = self.basis_indices[basis_position]
        images = []
        for j in range(self.nroots):
            n = self.pairing(j, i)
            images.append(
                self.root_index(
                    tuple(x - n * y for x, y in zip(self.roots[j], self.roots[i]))
                )
            )
        return tuple(images)

    def weyl_group(self, limit: int = WEYL_LIMIT_DEFAULT) -> "WeylGroup":
        gens = [self.simple_reflection_permutation(p) for p in range(len(self.basis_indices))]
        return WeylGroup.generate(self.nroots, gens, limit=limit)


class WeylGroup:
    """Finite permutation group on the root list."""

    def __init__(self, degree: int, generators, elements):
        self.degree = degree
        self.generators = tuple(generators)
        self.elements = tuple(elements)
        self.order = len(self.elements)

    @classmethod
    def generate(cls, degree: int, generators, limit: int = WEYL_LIMIT_DEFAULT) -> "WeylGroup":
        ident = tuple(range(degree))
        seen = {ident}
        frontier = [ident]
        gens = [tuple(g) for g in generators]
        while frontier:
            new = []
            for w in frontier:
                for g in gens:
                    wg = tuple(w[g[i]] for i in range(degree))
                    if wg not in seen:
                        if len(seen) >= limit:
                            raise ResourceLimitError(
                                f"Weyl closure exceeded limit {limit}"
                            )
                        seen.add(wg)
                        new.append(wg)
            frontier = new
        return cls(degree, gens, sorted(seen))


def _solve_integer(columns, target, dim) -> tuple | None:
    """Solve sum c_k * columns[k] = target exactly; require integer c."""
    if not columns:
        return () if all(x == 0 for x in target) else None
    m = [[Fraction(columns[k][i]) for k in range(len(columns))] for i in range(dim)]
    rhs = [Fraction(x) for x in target]
    piv_cols = []
    r = 0
    for c in range(len(columns)):
        pivot = next((i for i in range(r, dim) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        rhs[r], rhs[pivot] = rhs[pivot], rhs[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        rhs[r] *= inv
        for i in range(dim):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
                rhs[i] -= f * rhs[r]
        piv_cols.append(c)
        r += 1
    sol = [Fraction(0)] * len(columns)
    for row, c in enumerate(piv_cols):
        sol[c] = rhs[row]
    # consistency and integrality
    for i in range(dim):
        lhs = sum(m_val * sol[k] for k, m_val in enumerate(
            [Fraction(columns[k][i]) for k in range(len(columns))]
        ))
        if lhs != Fraction(target[i]):
            return None
    if any(x.denominator != 1 for x in sol):
        return None
    return tuple(int(x) for x in sol)


def build_torus(rank: int) -> RootDatum:
    """Root datum of a torus: a lattice with no roots."""
    if rank < 0:
        raise DomainError("torus rank must be nonnegative")
    return RootDatum(rank, [], [], [], reduced=True)


def build_preset(cartan_type, isogeny: str = "sc") -> RootDatum:
    """Construct the simply connected or adjoint datum of a Cartan type.

    sc: character lattice = weight lattice (basis: fundamental weights);
    adjoint: character lattice = root lattice (basis: simple roots).
    """
    ct = cartan_type if isinstance(cartan_type, CartanType) else CartanType.parse(cartan_type)
    if isogeny not in ("sc", "adjoint"):
        raise DomainError(f"unknown isogeny {isogeny!r}; expected 'sc' or 'adjoint'")
    c = cartan_matrix_product(ct)
    ctr = c.transpose()
    pairs = _generate_root_coroot_pairs(c)
    n = ct.rank
    roots, coroots = [], []
    for v, w in pairs:
        if isogeny == "sc":
            roots.append(c.apply(v))
            coroots.append(w)
        else:
            roots.append(v)
            coroots.append(ctr.apply(w))
    datum = RootDatum(
        n,
        roots,
        coroots,
        basis_indices=[
            roots.index(
                c.apply(tuple(1 if k == i else 0 for k in range(n)))
                if isogeny == "sc"
                else tuple(1 if k == i else 0 for k in range(n))
            )
            for i in range(n)
        ],
    )
    return datum


# -- type recognition ---------------------------------------------------


def _component_type(datum: RootDatum, comp: tuple[int, ...]) -> tuple[str, int]:
    base_pos = [
        p
        for p, i in enumerate(datum.basis_indices)
        if i in set(comp)
    ]
    idx = [datum.basis_indices[p] for p in base_pos]
    n = len(idx)
    if n == 1:
        return ("A", 1)
    pair = {}
    for a in range(n):
        for b in range(n):
            if a != b:
                pair[a, b] = datum.pairing(idx[b], idx[a])  # <alpha_b, alpha_a^vee>
    adj = {a: [] for a in range(n)}
    bonds = {}
    for a in range(n):
        for b in range(a + 1, n):
            w = pair[a, b] * pair[b, a]
            if w:
                adj[a].append(b)
                adj[b].append(a)
                bonds[a, b] = bonds[b, a] = w
    # connected tree expected; classify by bond weights and shape
    weights = sorted(bonds[a, b] for a in range(n) for b in adj[a] if a < b)
    if any(w > 3 for w in weights):
        raise InternalInconsistencyError("bond weight exceeds 3 in a finite type")
    if 3 in weights:
        if n != 2:
            raise InternalInconsistencyError("triple bond outside rank 2")
        return ("G", 2)
    if 2 in weights:
        if weights.count(2) != 1:
            raise InternalInconsistencyError("multiple double bonds in one component")
        degrees = sorted(len(adj[a]) for a in range(n))
        if degrees[-1] > 2:
            raise InternalInconsistencyError("branch node in a doubly laced component")
        if n == 2:
            return ("C", 2)  # B2 and C2 coincide; normalized to C2
        # propagate relative squared lengths: L_b = L_a * pair[a,b] / pair[b,a]
        lengths = {0: Fraction(1)}
        stack = [0]
        while stack:
            a = stack.pop()
            for b in adj[a]:
                if b not in lengths:
                    lengths[b] = lengths[a] * pair[a, b] / pair[b, a]
                    stack.append(b)
        shortest = min(lengths.values())
        shorts = [a for a in range(n) if lengths[a] == shortest]
        double_edge = next((a, b) for (a, b), w in bonds.items() if w == 2 and a < b)
        ends = [a for a in range(n) if len(adj[a]) == 1]
        if set(double_edge) & set(ends):
            return ("B", n) if len(shorts) == 1 else ("C", n)
        if n == 4:
            return ("F", 4)
        raise InternalInconsistencyError("interior double bond outside F4")
    # simply laced
    degrees = [len(adj[a]) for a in range(n)]
    if max(degrees) <= 2:
        return ("A", n)
    if degrees.count(3) != 1 or max(degrees) > 3:
        raise InternalInconsistencyError("unrecognized simply laced shape")
    hub = degrees.index(3)
    arms = []
    for start in adj[hub]:
        length, prev, cur = 1, hub, start
        while True:
            nxt = [x for x in adj[cur] if x != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    arms.sort()
    if arms[0] == 1 and arms[1] == 1:
        return ("D", n)
    if arms[0] == 1 and arms[1] == 2 and n in (6, 7, 8):
        return ("E", n)
    raise InternalInconsistencyError("unrecognized branched shape")


def cartan_type_of(datum: RootDatum) -> CartanType:
    """Recognize the Cartan type of a datum from its roots.

    Rank-2 double-bond components normalize to C2 and rank-3 D to A3.
    """
    comps = [
        _component_type(datum, comp) for comp in datum.components()
    ]
    normalized = []
    for fam, n in comps:
        if fam == "D" and n == 3:
            fam = "A"
        normalized.append((fam, n))
    normalized.sort()
    return CartanType(tuple(normalized))
