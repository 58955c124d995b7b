"""Folding a root datum along a pinned automorphism group.

Positive roots are grouped into equivalence classes (two roots are
equivalent when their orbit sums are rationally proportional); each class
is a single orbit with no internal sums ("type I") or an orbit pair whose
special members are sums of two others ("type II").  Class images in the
coinvariant lattice, together with summed coroots in the invariant
cocharacter lattice, assemble into three folded data: the nondivisible
variant R1, the nonmultipliable variant R2, and their nonreduced union.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import DomainError, InternalInconsistencyError
from .intlat import CoinvariantLattice, FinAbGroup, IntMatrix, cokernel
from .rootdata import RootDatum, WeylGroup, WEYL_LIMIT_DEFAULT
from .action import PinnedAction

VARIANTS = ("R1", "R2", "nonreduced")


@dataclass(frozen=True)
class FoldClass:
    """One equivalence class of positive roots."""

    members: tuple[int, ...]
    orbits: tuple[tuple[int, ...], ...]
    kind: str  # "I" or "II"
    special: tuple[int, ...]
    representative: int  # least nonspecial member
    orbit_sum: tuple[int, ...]

    @property
    def nonspecial(self) -> tuple[int, ...]:
        sp = set(self.special)
        return tuple(i for i in self.members if i not in sp)


def _proportional(u, v) -> bool:
    """Exact test for rational proportionality of nonzero integer vectors."""
    n = len(u)
    for i in range(n):
        for j in range(i + 1, n):
            if u[i] * v[j] != u[j] * v[i]:
                return False
    # reject opposite orientations only if both zero patterns differ
    return any(u) and any(v)


def _vector_sum(vectors):
    out = [0] * len(vectors[0])
    for v in vectors:
        for i, x in enumerate(v):
            out[i] += x
    return tuple(out)


def equivalence_classes(datum: RootDatum, act: PinnedAction) -> tuple[FoldClass, ...]:
    """Partition the positive roots and type each class.

    Raises InternalInconsistencyError when a class fits neither the
    single-orbit sum-free pattern nor the two-orbit special pattern; the
    classification is re-verified on every input rather than assumed.
    """
    if act.datum is not datum:
        raise DomainError("action was built for a different datum")
    orbits = act.orbits("positive")
    if not orbits:
        return ()
    sums = {orbit: _vector_sum([datum.roots[i] for i in orbit]) for orbit in orbits}
    buckets: list[list[tuple[int, ...]]] = []
    for orbit in orbits:
        for bucket in buckets:
            if _proportional(sums[bucket[0]], sums[orbit]):
                bucket.append(orbit)
                break
        else:
            buckets.append([orbit])

    classes = []
    for bucket in buckets:
        members = tuple(sorted(i for orbit in bucket for i in orbit))
        member_set = set(members)
        sums_inside = {}
        for a in members:
            for b in members:
                if a < b:
                    total = tuple(
                        x + y for x, y in zip(datum.roots[a], datum.roots[b])
                    )
                    if datum.is_root(total):
                        idx = datum.root_index(total)
                        if idx not in member_set:
                            raise InternalInconsistencyError(
                                "sum of two class members is a root outside the class"
                            )
                        sums_inside.setdefault(idx, []).append((a, b))
        if len(bucket) == 1:
            if sums_inside:
                raise InternalInconsistencyError(
                    "single-orbit class has members summing to a root"
                )
            kind, special = "I", ()
        elif len(bucket) == 2:
            special = tuple(sorted(sums_inside))
            orbit_sets = [set(o) for o in bucket]
            if set(special) not in orbit_sets:
                raise InternalInconsistencyError(
                    "special members of a two-orbit class do not form one orbit"
                )
            nonspecial = member_set - set(special)
            if len(nonspecial) != 2 * len(special):
                raise InternalInconsistencyError(
                    "two-orbit class lacks the 2:1 nonspecial/special split"
                )
            for s, decomps in sums_inside.items():
                if not any(
                    a not in special and b not in special for a, b in decomps
                ):
                    raise InternalInconsistencyError(
                        "special root is not a sum of two nonspecial members"
                    )
            kind = "II"
        else:
            raise InternalInconsistencyError(
                f"class splits into {len(bucket)} orbits; expected 1 or 2"
            )
        rep = min(member_set - set(special))
        classes.append(
            FoldClass(
                members=members,
                orbits=tuple(tuple(sorted(o)) for o in bucket),
                kind=kind,
                special=special,
                representative=rep,
                orbit_sum=_vector_sum([datum.roots[i] for i in members]),
            )
        )
    classes.sort(key=lambda c: c.representative)
    _check_type_two_shape(datum, act, classes)
    return tuple(classes)


def _check_type_two_shape(datum, act, classes):
    """Cross-check: type II classes occur exactly on even-rank A components
    whose stabilizer acts nontrivially, in per-component triples x, y, x+y."""
    from .rootdata import cartan_type_of, CartanType  # local to avoid cycle at import

    comps = datum.components()
    comp_of = {}
    for ci, comp in enumerate(comps):
        for i in comp:
            comp_of[i] = ci
    for cls in classes:
        if cls.kind != "II":
            continue
        touched = sorted({comp_of[i] for i in cls.members})
        for ci in touched:
            inside = [i for i in cls.members if comp_of[i] == ci]
            spec = [i for i in inside if i in cls.special]
            nonspec = [i for i in inside if i not in cls.special]
            if len(spec) != 1 or len(nonspec) != 2:
                raise InternalInconsistencyError(
                    "type II class does not restrict to a triple on a component"
                )
            total = tuple(
                x + y
                for x, y in zip(datum.roots[nonspec[0]], datum.roots[nonspec[1]])
            )
            if total != datum.roots[spec[0]]:
                raise InternalInconsistencyError(
                    "component triple of a type II class is not x, y, x+y"
                )
            fam, rank = _component_family_rank(datum, comps[ci])
            if fam != "A" or rank % 2:
                raise InternalInconsistencyError(
                    "type II class on a component not of even-rank type A"
                )
            if not act.stabilizer_moves_component(ci):
                raise InternalInconsistencyError(
                    "type II class on a component with trivial stabilizer action"
                )


def _component_family_rank(datum, comp):
    from .rootdata import _component_type

    return _component_type(datum, comp)


@dataclass
class FoldedDatum:
    """A folded root datum plus the bookkeeping used to build it."""

    datum: RootDatum
    variant: str
    classes: tuple[FoldClass, ...]
    lattice: CoinvariantLattice
    class_of_root: dict[int, int]  # folded root index -> class position
    doubled: dict[int, bool] = field(default_factory=dict)  # folded index -> is 2*image

    @property
    def rank(self) -> int:
        return self.datum.rank


def _class_coroot(datum, cls: FoldClass, divisible: bool) -> tuple:
    members = cls.special if divisible else cls.members
    return _vector_sum([datum.coroots[i] for i in members])


def folded_root_datum(datum: RootDatum, act: PinnedAction, variant: str) -> FoldedDatum:
    """Build the folded datum for one of the variants R1, R2, nonreduced."""
    if variant not in VARIANTS:
        raise DomainError(f"unknown folded variant {variant!r}; expected {VARIANTS}")
    classes = equivalence_classes(datum, act)
    positive = datum.positive_root_indices()
    orient = _vector_sum([datum.roots[i] for i in positive]) if positive else None
    lattice = CoinvariantLattice(datum.rank, act.generators, orient=orient)
    r = lattice.free_rank

    images = []
    for cls in classes:
        img = lattice.free_image(datum.roots[cls.representative])
        if not any(img):
            raise InternalInconsistencyError(
                "class image vanishes in the coinvariant lattice"
            )
        for i in cls.nonspecial:
            if lattice.free_image(datum.roots[i]) != img:
                raise InternalInconsistencyError(
                    "nonspecial members of a class have unequal images"
                )
        for i in cls.special:
            if lattice.free_image(datum.roots[i]) != tuple(2 * x for x in img):
                raise InternalInconsistencyError(
                    "special member image is not twice the nonspecial image"
                )
            if not lattice.same_image(
                datum.roots[i], tuple(2 * x for x in datum.roots[cls.representative])
            ):
                raise InternalInconsistencyError(
                    "special member differs from twice a nonspecial member in M_A"
                )
        images.append(img)
    for i in range(len(classes)):
        for j in range(i + 1, len(classes)):
            if _proportional(images[i], images[j]):
                raise InternalInconsistencyError(
                    "images of distinct classes are proportional"
                )

    dual_mats = [act.dual_matrix(g) for g in act.generators]

    def folded_coroot(cls, divisible):
        ambient = _class_coroot(datum, cls, divisible)
        for dm in dual_mats:
            if dm.apply(ambient) != ambient:
                raise InternalInconsistencyError(
                    "summed coroot is not invariant under the dual action"
                )
        return lattice.dual_coords(ambient)

    pos_roots: list[tuple] = []
    pos_coroots: list[tuple] = []
    owner: list[int] = []
    doubled_flags: list[bool] = []
    basis_slots: dict[int, int] = {}
    base_set = set(datum.basis_indices)

    def add(cls_pos, root, coroot, is_doubled):
        pos_roots.append(root)
        pos_coroots.append(coroot)
        owner.append(cls_pos)
        doubled_flags.append(is_doubled)
        return len(pos_roots) - 1

    for pos, (cls, img) in enumerate(zip(classes, images)):
        double = tuple(2 * x for x in img)
        meets_base = bool(set(cls.members) & base_set)
        if variant == "R1":
            slot = add(pos, img, folded_coroot(cls, divisible=False), False)
            if meets_base:
                basis_slots[pos] = slot
        elif variant == "R2":
            if cls.kind == "I":
                slot = add(pos, img, folded_coroot(cls, divisible=False), False)
            else:
                slot = add(pos, double, folded_coroot(cls, divisible=True), True)
            if meets_base:
                basis_slots[pos] = slot
        else:  # nonreduced
            slot = add(pos, img, folded_coroot(cls, divisible=False), False)
            if meets_base:
                basis_slots[pos] = slot
            if cls.kind == "II":
                add(pos, double, folded_coroot(cls, divisible=True), True)

    for slot, (root, coroot) in enumerate(zip(pos_roots, pos_coroots)):
        if sum(a * b for a, b in zip(root, coroot)) != 2:
            raise InternalInconsistencyError(
                f"folded pairing <root, coroot> != 2 at class {owner[slot]}"
            )

    all_roots = list(pos_roots) + [tuple(-x for x in v) for v in pos_roots]
    all_coroots = list(pos_coroots) + [tuple(-x for x in v) for v in pos_coroots]
    folded = RootDatum(
        r,
        all_roots,
        all_coroots,
        basis_indices=[basis_slots[p] for p in sorted(basis_slots)],
        reduced=(variant != "nonreduced"),
    )
    class_map = {}
    npos = len(pos_roots)
    for slot in range(npos):
        class_map[slot] = owner[slot]
        class_map[slot + npos] = owner[slot]
    dbl = {slot: doubled_flags[slot] for slot in range(npos)}
    dbl.update({slot + npos: doubled_flags[slot] for slot in range(npos)})
    return FoldedDatum(
        datum=folded,
        variant=variant,
        classes=classes,
        lattice=lattice,
        class_of_root=class_map,
        doubled=dbl,
    )


@dataclass
class FixedWeyl:
    """Centralizer of the action inside the Weyl group."""

    order: int
    elements: tuple[tuple[int, ...], ...]
    coxeter_generators: tuple[tuple[int, ...], ...]


def fixed_weyl(datum: RootDatum, act: PinnedAction, limit: int = WEYL_LIMIT_DEFAULT) -> FixedWeyl:
    """Elements of the Weyl group commuting with every action generator.

    Also produces the standard Coxeter generators: the longest elements of
    the parabolic subgroups spanned by the orbits of the action on the base.
    Their closure is checked against the brute-force filter.
    """
    w = datum.weyl_group(limit)
    gen_perms = act.generator_perms
    n = datum.nroots
    fixed = []
    for elt in w.elements:
        ok = True
        for g in gen_perms:
            for i in range(n):
                if elt[g[i]] != g[elt[i]]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            fixed.append(elt)

    coxeter = []
    base_orbits = act.orbits("simple")
    for orbit in base_orbits:
        support = set(orbit)
        sub_pos = [
            i
            for i in datum.positive_root_indices()
            if {j for j, c in enumerate(datum.simple_coordinates(i)) if c} <= support
        ]
        sub_gens = [datum.simple_reflection_permutation(p) for p in orbit]
        w_sub = WeylGroup.generate(n, sub_gens, limit=limit)
        neg = {datum.negative_of(i) for i in sub_pos}
        longest = [
            elt for elt in w_sub.elements if all(elt[i] in neg for i in sub_pos)
        ]
        if len(longest) != 1:
            raise InternalInconsistencyError(
                "orbit subsystem does not have a unique longest element"
            )
        coxeter.append(longest[0])

    fixed_set = set(fixed)
    for gen in coxeter:
        if gen not in fixed_set:
            raise InternalInconsistencyError(
                "longest element of an orbit subsystem is not action-fixed"
            )
    closure = WeylGroup.generate(n, coxeter, limit=limit) if coxeter else None
    generated = set(closure.elements) if closure else {tuple(range(n))}
    if generated != fixed_set:
        raise InternalInconsistencyError(
            "orbit longest elements do not generate the fixed Weyl group"
        )
    return FixedWeyl(
        order=len(fixed),
        elements=tuple(fixed),
        coxeter_generators=tuple(coxeter),
    )


def center_structure(datum: RootDatum, act: PinnedAction) -> FinAbGroup:
    """Coinvariants of (character lattice)/(root lattice): the component
    structure of the fixed points of the center."""
    if act.datum is not datum:
        raise DomainError("action was built for a different datum")
    columns = [datum.roots[i] for i in datum.basis_indices]
    ident = IntMatrix.identity(datum.rank)
    for g in act.generators:
        delta = g - ident
        columns.extend(delta.column(j) for j in range(datum.rank))
    if columns:
        rel = IntMatrix.from_columns(columns, datum.rank)
    else:
        rel = IntMatrix.zero(datum.rank, 0)
    return cokernel(rel)


def isogeny_injectivity_check(datum: RootDatum, act: PinnedAction) -> bool:
    """Whether root-lattice coinvariants inject into weight-lattice
    coinvariants under the map induced by inclusion.

    Both coinvariant groups are free (the action permutes the respective
    bases); that freeness is asserted, and injectivity reduces to a rank
    computation for the induced map.
    """
    base = datum.basis_indices
    k = len(base)
    if k == 0:
        return True
    pos_of = {r: p for p, r in enumerate(base)}
    perm_mats = []
    for perm in act.generator_perms:
        images = {p: pos_of[perm[base[p]]] for p in range(k)}
        perm_mats.append(
            IntMatrix([[1 if images[j] == i else 0 for j in range(k)] for i in range(k)])
        )
    cartan = IntMatrix(
        [[datum.pairing(base[j], base[i]) for j in range(k)] for i in range(k)]
    )
    for p in perm_mats:
        if p @ cartan != cartan @ p:
            raise InternalInconsistencyError(
                "Cartan matrix does not commute with the base permutation"
            )
    src = CoinvariantLattice(k, perm_mats)
    tgt = CoinvariantLattice(k, perm_mats)
    if src.torsion_moduli or tgt.torsion_moduli:
        raise InternalInconsistencyError(
            "permutation coinvariants unexpectedly have torsion"
        )
    cols = [
        tgt.free_image(cartan.apply(src.section(j))) for j in range(src.free_rank)
    ]
    if not cols:
        return True
    phi = IntMatrix.from_columns(cols, tgt.free_rank)
    return phi.rank() == src.free_rank


@dataclass
class ParabolicReport:
    """Folded base data attached to an action-stable subset of the base."""

    base_classes: tuple[int, ...]  # class positions forming the folded base
    gamma_classes: tuple[int, ...]  # subset corresponding to gamma
    monoid_generators: tuple[tuple[str, tuple, tuple], ...]  # (label, torsion, free)


def parabolic_correspondence(datum: RootDatum, act: PinnedAction, gamma) -> ParabolicReport:
    """Map an action-stable subset of the base to its folded counterpart,
    with the generator list of the associated submonoid of M_A."""
    gamma = tuple(sorted(set(gamma)))
    k = len(datum.basis_indices)
    for p in gamma:
        if not 0 <= p < k:
            raise DomainError(f"base position {p} out of range")
    base = datum.basis_indices
    pos_of = {r: p for p, r in enumerate(base)}
    gset = set(gamma)
    for perm in act.generator_perms:
        if {pos_of[perm[base[p]]] for p in gamma} != gset:
            raise DomainError("subset of the base is not action-stable")

    classes = equivalence_classes(datum, act)
    positive = datum.positive_root_indices()
    orient = _vector_sum([datum.roots[i] for i in positive]) if positive else None
    lattice = CoinvariantLattice(datum.rank, act.generators, orient=orient)

    base_set = set(base)
    base_classes = tuple(
        ci for ci, cls in enumerate(classes) if set(cls.members) & base_set
    )
    gamma_roots = {base[p] for p in gamma}
    gamma_classes = tuple(
        ci for ci in base_classes if set(classes[ci].members) & gamma_roots
    )
    gens = []
    for p in range(k):
        tors, free = lattice.full_image(datum.roots[base[p]])
        gens.append((f"simple[{p}]", tors, free))
    for p in gamma:
        vec = tuple(-x for x in datum.roots[base[p]])
        tors, free = lattice.full_image(vec)
        gens.append((f"-simple[{p}]", tors, free))
    return ParabolicReport(
        base_classes=base_classes,
        gamma_classes=gamma_classes,
        monoid_generators=tuple(gens),
    )
