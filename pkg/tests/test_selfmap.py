import random

import pytest

from digifix import (SelfMap, are_isomorphic, box, box_fold_map, compose,
                     constant_map, cube, cycle, cycle_map,
                     enumerate_continuous_selfmaps, fixed_point_free_map,
                     identity_map, interval, point_transform_map,
                     rotation_180, vertical_reflection, wedge_cycles_8)
from digifix.errors import FixedPointPropertyError

from conftest import brute_continuous_maps, random_image


def test_is_continuous_examples():
    c5 = cycle(5)
    assert identity_map(c5).is_continuous()
    assert constant_map(c5, 0).is_continuous()
    broken = SelfMap(c5, (0, 2, 2, 3, 4))  # edge {0,1} lands on {0,2}
    assert not broken.is_continuous()


def test_continuous_map_counts():
    # transfer-matrix values: trace((A+I)^n) for the cycle C_n
    assert len(brute_continuous_maps(cycle(4))) == 84
    assert len(brute_continuous_maps(cycle(5))) == 265


def test_fix_examples():
    c7 = cycle(7)
    assert identity_map(c7).fix_set() == set(range(7))
    assert constant_map(c7, 0).fix_set() == {0}
    flip6 = cycle_map(6, "flip", 0)
    assert flip6.fix_set() == {0, 3}
    assert flip6.moved_set() == {1, 2, 4, 5}


def test_compose_examples():
    c5 = cycle(5)
    r1 = cycle_map(5, "rotation", 1, image=c5)
    r2 = cycle_map(5, "rotation", 2, image=c5)
    assert compose(r1, r1).targets == r2.targets
    f = cycle_map(5, "flip", 2, image=c5)
    assert compose(identity_map(c5), f).targets == f.targets
    l6 = cycle_map(6, "flip", 0)
    assert compose(l6, l6).targets == identity_map(l6.image).targets


def test_compose_requires_same_image():
    with pytest.raises(ValueError):
        compose(identity_map(cycle(5)), identity_map(cycle(6)))


def test_composition_preserves_continuity():
    rng = random.Random(31)
    for _ in range(25):
        img = random_image(rng, max_n=6)
        maps = brute_continuous_maps(img)
        f = SelfMap(img, rng.choice(maps))
        g = SelfMap(img, rng.choice(maps))
        assert compose(g, f).is_continuous()


def test_fixed_point_free_map():
    for img in (interval(0, 1), cycle(9), cube(), wedge_cycles_8()):
        f = fixed_point_free_map(img)
        assert f.is_continuous()
        assert f.fix_count() == 0
    with pytest.raises(FixedPointPropertyError):
        fixed_point_free_map(cycle(1))


def test_cycle_map_examples():
    assert cycle_map(5, "rotation", 0).is_identity()
    assert cycle_map(5, "flip", 0).fix_set() == {0}
    assert cycle_map(5, "rotation", 1).fix_count() == 0
    assert cycle_map(7, "constant", 3).fix_set() == {3}
    with pytest.raises(ValueError):
        cycle_map(5, "rotation", 5)
    with pytest.raises(ValueError):
        cycle_map(5, "twist", 1)


def test_conjugation_by_isomorphism_preserves_fix_count():
    rng = random.Random(47)
    for _ in range(15):
        img = random_image(rng, max_n=6)
        n = img.n
        perm = list(range(n))
        rng.shuffle(perm)
        from digifix import build_image, explicit
        edges = [(perm[i], perm[j]) for i, j in img.edge_list()]
        other = build_image(n, explicit(edges), "relabel")
        phi = are_isomorphic(img, other)
        assert phi is not None
        inv = [0] * n
        for i, w in enumerate(phi):
            inv[w] = i
        maps = brute_continuous_maps(img)
        f = SelfMap(img, rng.choice(maps))
        g = SelfMap(other, tuple(phi[f.targets[inv[y]]] for y in range(n)))
        assert g.is_continuous()
        assert g.fix_count() == f.fix_count()


def test_point_transform_maps():
    rot = rotation_180(box(3, 3, 2))
    assert rot.is_continuous() and rot.fix_count() == 1
    refl = vertical_reflection(box(2, 3, 1))
    assert refl.is_continuous() and refl.fix_count() == 2
    with pytest.raises(ValueError):
        point_transform_map(box(2, 2, 1), lambda p: (p[0] + 10, p[1]))
    with pytest.raises(ValueError):
        rotation_180(cycle(5))  # no coordinates


def test_box_fold_map_bounds():
    b = box(3, 3, 1)
    assert box_fold_map(b, 0).is_identity()
    with pytest.raises(ValueError):
        box_fold_map(b, 3)
    with pytest.raises(ValueError):
        box_fold_map(box(1, 3, 1), 1)


def test_selfmap_validation():
    c = cycle(3)
    with pytest.raises(ValueError):
        SelfMap(c, (0, 1))
    with pytest.raises(ValueError):
        SelfMap(c, (0, 1, 7))
