import pytest

from sylowcollapse import enumerate_group
from sylowcollapse.families import (FAMILIES, PARAMETRIC, family_generators,
                                    family_order)


def realize(name, param=None):
    gens, degree = family_generators(name, param)
    return enumerate_group(gens, degree=degree)


@pytest.mark.parametrize("name,param", [
    ("cyclic", 1), ("cyclic", 7), ("cyclic", 12),
    ("dihedral", 3), ("dihedral", 6),
    ("symmetric", 1), ("symmetric", 2), ("symmetric", 4),
    ("alternating", 2), ("alternating", 3), ("alternating", 5),
    ("quaternion8", None), ("sl23", None),
])
def test_realized_order_matches_closed_form(name, param):
    assert realize(name, param).order == family_order(name, param)


def test_cyclic_is_abelian():
    g = realize("cyclic", 12)
    assert all(g.mul(i, j) == g.mul(j, i)
               for i in range(g.order) for j in range(g.order))


def test_dihedral_is_not_abelian():
    g = realize("dihedral", 4)
    assert any(g.mul(i, j) != g.mul(j, i)
               for i in range(g.order) for j in range(g.order))


def test_alternating_contains_only_even_permutations():
    g = realize("alternating", 5)
    for perm in g.elements:
        transposition_count = sum(len(c) - 1 for c in perm.cycles())
        assert transposition_count % 2 == 0


def test_quaternion_has_unique_involution():
    g = realize("quaternion8")
    involutions = [i for i in range(g.order) if g.element_order(i) == 2]
    assert len(involutions) == 1
    # and six elements of order 4, unlike the dihedral group of order 8
    assert sum(1 for i in range(g.order) if g.element_order(i) == 4) == 6


def test_sl23_center_and_involution():
    g = realize("sl23")
    assert g.order == 24
    involutions = [i for i in range(g.order) if g.element_order(i) == 2]
    assert len(involutions) == 1
    z = involutions[0]
    assert all(g.mul(z, j) == g.mul(j, z) for j in range(g.order))


def test_parameter_guards():
    with pytest.raises(ValueError):
        family_generators("dihedral", 2)
    with pytest.raises(ValueError):
        family_generators("cyclic", 0)
    with pytest.raises(ValueError):
        family_generators("alternating", 1)


def test_family_tables_consistent():
    assert PARAMETRIC <= set(FAMILIES)
    with pytest.raises(KeyError):
        family_order("frobnicated")
