"""Folding positive roots into equivalence classes and folded root data."""

import itertools

import pytest

from foldlab.errors import DomainError, ResourceLimitError
from foldlab.folding import (
    VARIANTS,
    center_structure,
    equivalence_classes,
    fixed_weyl,
    folded_root_datum,
    isogeny_injectivity_check,
    parabolic_correspondence,
)
from foldlab.intlat import FinAbGroup
from foldlab.presets import load_preset, preset_names, type_a_flip
from foldlab.rootdata import build_preset, cartan_type_of

CATALOG = [load_preset(name) for name in preset_names()]


def coords_of_members(datum, cls):
    return {datum.simple_coordinates(i) for i in cls.members}


def proportional(u, v):
    return all(u[i] * v[j] == u[j] * v[i] for i in range(len(u)) for j in range(len(u)))


def test_a2_flip_single_type_two_class():
    datum, act = type_a_flip(2)
    classes = equivalence_classes(datum, act)
    assert len(classes) == 1
    (cls,) = classes
    assert cls.kind == "II"
    assert len(cls.members) == 3
    assert len(cls.special) == 1
    assert datum.simple_coordinates(cls.special[0]) == (1, 1)
    assert sorted(len(o) for o in cls.orbits) == [1, 2]
    assert cls.representative == min(cls.nonspecial)


def test_a3_flip_classes_exact():
    datum, act = type_a_flip(3)
    classes = equivalence_classes(datum, act)
    assert [c.kind for c in classes] == ["I", "I", "I", "I"]
    got = [coords_of_members(datum, c) for c in classes]
    expected = [
        {(1, 0, 0), (0, 0, 1)},
        {(0, 1, 0)},
        {(1, 1, 0), (0, 1, 1)},
        {(1, 1, 1)},
    ]
    assert sorted(map(sorted, got)) == sorted(map(sorted, expected))
    for c in classes:
        assert c.special == ()


def test_a4_flip_classes():
    datum, act = type_a_flip(4)
    classes = equivalence_classes(datum, act)
    assert len(classes) == 4
    assert sorted(c.kind for c in classes) == ["I", "I", "II", "II"]
    for c in classes:
        if c.kind == "II":
            assert len(c.members) == 3 and len(c.special) == 1
            # the special root is the sum of the two nonspecial members
            a, b = [datum.simple_coordinates(i) for i in c.nonspecial]
            s = datum.simple_coordinates(c.special[0])
            assert tuple(x + y for x, y in zip(a, b)) == s
        else:
            assert c.special == ()


def test_d4_triality_six_type_one_classes():
    pre = load_preset("D4-sc-triality")
    classes = equivalence_classes(pre.datum, pre.action)
    assert len(classes) == 6
    assert all(c.kind == "I" for c in classes)


def test_e6_flip_class_count():
    pre = load_preset("E6-sc-flip")
    classes = equivalence_classes(pre.datum, pre.action)
    assert len(classes) == 24
    assert all(c.kind == "I" for c in classes)


def test_classes_partition_positives():
    for pre in CATALOG:
        classes = equivalence_classes(pre.datum, pre.action)
        seen = [i for c in classes for i in c.members]
        assert sorted(seen) == sorted(pre.datum.positive_root_indices())


def test_classes_closed_under_positive_combinations():
    for pre in CATALOG:
        datum = pre.datum
        classes = equivalence_classes(datum, pre.action)
        cls_of = {i: k for k, c in enumerate(classes) for i in c.members}
        for k, c in enumerate(classes):
            for a, b in itertools.combinations(c.members, 2):
                for i in range(1, 4):
                    for j in range(1, 4):
                        v = tuple(
                            i * x + j * y for x, y in zip(datum.roots[a], datum.roots[b])
                        )
                        if datum.is_root(v):
                            assert cls_of[datum.root_index(v)] == k


def test_class_images_nonzero_and_nonproportional():
    for pre in CATALOG:
        folded = folded_root_datum(pre.datum, pre.action, "R1")
        images = [
            folded.lattice.free_image(pre.datum.roots[c.representative])
            for c in folded.classes
        ]
        for img in images:
            assert any(x != 0 for x in img)
        for u, v in itertools.combinations(images, 2):
            assert not proportional(u, v)


def test_a2_flip_folded_lattices_exact():
    datum, act = type_a_flip(2)
    r1 = folded_root_datum(datum, act, "R1")
    assert sorted(r1.datum.roots) == [(-1,), (1,)]
    assert sorted(r1.datum.coroots) == [(-2,), (2,)]
    r2 = folded_root_datum(datum, act, "R2")
    assert sorted(r2.datum.roots) == [(-2,), (2,)]
    assert sorted(r2.datum.coroots) == [(-1,), (1,)]
    for f in (r1, r2):
        assert cartan_type_of(f.datum).components == (("A", 1),)


def test_d4_triality_folds_to_g2():
    pre = load_preset("D4-sc-triality")
    folded = folded_root_datum(pre.datum, pre.action, "R1")
    assert cartan_type_of(folded.datum).components == (("G", 2),)
    base = folded.datum.basis_indices
    off = sorted(
        folded.datum.pairing(base[j], base[i])
        for i in range(2)
        for j in range(2)
        if i != j
    )
    assert off == [-3, -1]


@pytest.mark.parametrize(
    "name,expected",
    [
        ("A2-sc-flip", (("A", 1),)),
        ("A3-sc-flip", (("C", 2),)),
        ("A4-sc-flip", (("C", 2),)),
        ("A5-sc-flip", (("C", 3),)),
        ("D4-sc-triality", (("G", 2),)),
        ("D4-sc-cyclic3", (("G", 2),)),
        ("A2+A2-sc-swap", (("A", 2),)),
        ("E6-sc-flip", (("F", 4),)),
        ("A1-torus-inversion", ()),
    ],
)
def test_folded_types_catalog(name, expected):
    pre = load_preset(name)
    folded = folded_root_datum(pre.datum, pre.action, "R1")
    assert cartan_type_of(folded.datum).components == expected


@pytest.mark.parametrize(
    "name,order",
    [
        ("A2-sc-flip", 2),
        ("A3-sc-flip", 8),
        ("A4-sc-flip", 8),
        ("A5-sc-flip", 48),
        ("D4-sc-triality", 12),
        ("D4-sc-cyclic3", 12),
        ("A2+A2-sc-swap", 6),
        ("E6-sc-flip", 1152),
        ("A1-torus-inversion", 1),
    ],
)
def test_fixed_weyl_orders(name, order):
    pre = load_preset(name)
    fw = fixed_weyl(pre.datum, pre.action)
    assert fw.order == order
    assert len(set(fw.elements)) == fw.order
    for g in fw.coxeter_generators:
        assert g in fw.elements
        assert tuple(g[i] for i in g) == tuple(range(len(g)))  # involutions


def test_fixed_weyl_matches_folded_weyl_order():
    for pre in CATALOG:
        fw = fixed_weyl(pre.datum, pre.action)
        for variant in ("R1", "R2"):
            folded = folded_root_datum(pre.datum, pre.action, variant)
            if folded.datum.nroots == 0:
                assert fw.order == 1
            else:
                assert folded.datum.weyl_group().order == fw.order


def test_fixed_weyl_coxeter_generator_count():
    # one generator per class meeting the base
    datum, act = type_a_flip(4)
    fw = fixed_weyl(datum, act)
    assert len(fw.coxeter_generators) == 2
    pre = load_preset("E6-sc-flip")
    assert len(fixed_weyl(pre.datum, pre.action).coxeter_generators) == 4


def test_fixed_weyl_limit():
    pre = load_preset("E6-sc-flip")
    with pytest.raises(ResourceLimitError):
        fixed_weyl(pre.datum, pre.action, limit=10)


def test_type_two_pairing_tables():
    for rank in (2, 4):
        datum, act = type_a_flip(rank)
        classes = equivalence_classes(datum, act)
        for c in classes:
            if c.kind != "II":
                continue
            r1_coroot = [
                sum(datum.coroots[i][k] for i in c.members) for k in range(datum.rank)
            ]
            r2_coroot = [
                sum(datum.coroots[i][k] for i in c.special) for k in range(datum.rank)
            ]
            for i in c.nonspecial:
                root = datum.roots[i]
                assert sum(a * b for a, b in zip(root, r1_coroot)) == 2
                assert sum(a * b for a, b in zip(root, r2_coroot)) == 1
            for i in c.special:
                root = datum.roots[i]
                assert sum(a * b for a, b in zip(root, r1_coroot)) == 4
                assert sum(a * b for a, b in zip(root, r2_coroot)) == 2


def test_folded_pairing_diagonal_two_all_variants():
    for pre in CATALOG:
        for variant in VARIANTS:
            folded = folded_root_datum(pre.datum, pre.action, variant)
            d = folded.datum
            for i in range(d.nroots):
                assert d.pairing(i, i) == 2


def test_nonreduced_variant_doubling_bijection():
    for name in ("A2-sc-flip", "A4-sc-flip", "A5-sc-flip"):
        pre = load_preset(name)
        folded = folded_root_datum(pre.datum, pre.action, "nonreduced")
        d = folded.datum
        assert not d.reduced
        divisible = {i for i, flag in folded.doubled.items() if flag}
        n_type_two = sum(
            1 for c in folded.classes if c.kind == "II"
        )
        assert len(divisible) == 2 * n_type_two  # each class: +2gamma and -2gamma
        multipliable = {
            i
            for i in range(d.nroots)
            if d.is_root(tuple(2 * x for x in d.roots[i]))
        }
        assert multipliable.isdisjoint(divisible)
        doubled_images = {
            d.root_index(tuple(2 * x for x in d.roots[i])) for i in multipliable
        }
        assert doubled_images == divisible


def test_nonreduced_root_counts():
    datum, act = type_a_flip(4)
    r1 = folded_root_datum(datum, act, "R1")
    nr = folded_root_datum(datum, act, "nonreduced")
    assert r1.datum.nroots == 8
    assert nr.datum.nroots == 12
    assert folded_root_datum(datum, act, "R2").datum.nroots == 8


def test_reduced_variants_are_reduced():
    for pre in CATALOG:
        for variant in ("R1", "R2"):
            assert folded_root_datum(pre.datum, pre.action, variant).datum.reduced


def test_unknown_variant():
    datum, act = type_a_flip(2)
    with pytest.raises(DomainError):
        folded_root_datum(datum, act, "R3")


@pytest.mark.parametrize(
    "name,group",
    [
        ("A2-sc-flip", FinAbGroup(0, ())),
        ("A3-sc-flip", FinAbGroup(0, (2,))),
        ("A4-sc-flip", FinAbGroup(0, ())),
        ("A5-sc-flip", FinAbGroup(0, (2,))),
        ("D4-sc-triality", FinAbGroup(0, ())),
        ("D4-sc-cyclic3", FinAbGroup(0, ())),
        ("A2+A2-sc-swap", FinAbGroup(0, (3,))),
        ("E6-sc-flip", FinAbGroup(0, ())),
        ("A1-torus-inversion", FinAbGroup(0, (2,))),
    ],
)
def test_center_structure(name, group):
    pre = load_preset(name)
    assert center_structure(pre.datum, pre.action) == group


def test_center_structure_foreign_action():
    datum, act = type_a_flip(2)
    other = build_preset("A2", "sc")
    with pytest.raises(DomainError):
        center_structure(other, act)


def test_isogeny_injectivity_all_presets():
    for pre in CATALOG:
        assert isogeny_injectivity_check(pre.datum, pre.action)


def test_parabolic_full_base():
    datum, act = type_a_flip(4)
    rep = parabolic_correspondence(datum, act, (0, 1, 2, 3))
    assert rep.gamma_classes == rep.base_classes
    assert len(rep.base_classes) == 2
    labels = [g[0] for g in rep.monoid_generators]
    assert labels == [
        "simple[0]",
        "simple[1]",
        "simple[2]",
        "simple[3]",
        "-simple[0]",
        "-simple[1]",
        "-simple[2]",
        "-simple[3]",
    ]


def test_parabolic_borel_case():
    datum, act = type_a_flip(4)
    rep = parabolic_correspondence(datum, act, ())
    assert rep.gamma_classes == ()
    assert [g[0] for g in rep.monoid_generators] == [
        "simple[0]",
        "simple[1]",
        "simple[2]",
        "simple[3]",
    ]


def test_parabolic_orbit_pair():
    datum, act = type_a_flip(4)
    rep = parabolic_correspondence(datum, act, (0, 3))
    assert len(rep.gamma_classes) == 1
    # negated generators pair off with the positive ones in the quotient
    by_label = {g[0]: g for g in rep.monoid_generators}
    _, tors, free = by_label["-simple[0]"]
    _, tors0, free0 = by_label["simple[0]"]
    assert free == tuple(-x for x in free0)


def test_parabolic_unstable_subset():
    datum, act = type_a_flip(4)
    with pytest.raises(DomainError):
        parabolic_correspondence(datum, act, (0,))
    with pytest.raises(DomainError):
        parabolic_correspondence(datum, act, (7,))


def test_orbit_sums_fixed_by_action():
    for pre in CATALOG:
        datum, act = pre.datum, pre.action
        for cls in equivalence_classes(datum, act):
            for g in act.elements:
                assert g.apply(cls.orbit_sum) == cls.orbit_sum
