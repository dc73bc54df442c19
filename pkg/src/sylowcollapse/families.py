"""Generator sets for the standard group families the CLI knows about.

Each builder returns (generators, degree); feed the pair to
groups.enumerate_group.  Orders are known in closed form (see FAMILY_ORDER)
so size caps can be checked without enumerating anything.
"""

import math

from .groups import Permutation


def cyclic(n):
    if n < 1:
        raise ValueError("cyclic: parameter must be >= 1")
    if n == 1:
        return [], 1
    return [Permutation.from_cycles([tuple(range(n))], n)], n


def dihedral(n):
    """Symmetries of the regular n-gon acting on its n vertices (order 2n)."""
    if n < 3:
        raise ValueError("dihedral: parameter must be >= 3")
    rotation = Permutation.from_cycles([tuple(range(n))], n)
    reflection = Permutation([(n - i) % n for i in range(n)])
    return [rotation, reflection], n


def symmetric(n):
    if n < 1:
        raise ValueError("symmetric: parameter must be >= 1")
    if n == 1:
        return [], 1
    if n == 2:
        return [Permutation.from_cycles([(0, 1)], 2)], 2
    return [Permutation.from_cycles([tuple(range(n))], n),
            Permutation.from_cycles([(0, 1)], n)], n


def alternating(n):
    if n < 2:
        raise ValueError("alternating: parameter must be >= 2")
    if n == 2:
        return [], 2
    three = Permutation.from_cycles([(0, 1, 2)], n)
    if n % 2 == 1:
        big = Permutation.from_cycles([tuple(range(n))], n)
    else:
        big = Permutation.from_cycles([tuple(range(1, n))], n)
    return [three, big], n


_QUAT_AXIS = {  # (axis, axis) -> (sign, axis) for 1,i,j,k coded 0..3
    (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
    (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
    (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
    (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
}


def quaternion8():
    """The quaternion group in its regular representation on 8 points."""
    units = [(s, a) for s in (1, -1) for a in range(4)]  # +-1, +-i, +-j, +-k
    index = {u: x for x, u in enumerate(units)}

    def mult(u, v):
        sign, axis = _QUAT_AXIS[(u[1], v[1])]
        return (u[0] * v[0] * sign, axis)

    gens = []
    for g in ((1, 1), (1, 2)):  # i and j
        gens.append(Permutation(index[mult(g, u)] for u in units))
    return gens, 8


def sl23():
    """SL(2,3) acting on the 8 nonzero vectors of F_3^2 (order 24)."""
    vectors = [(x, y) for x in range(3) for y in range(3) if (x, y) != (0, 0)]
    index = {v: i for i, v in enumerate(vectors)}

    def action(matrix):
        a, b, c, d = matrix
        return Permutation(index[((a * x + b * y) % 3, (c * x + d * y) % 3)]
                           for x, y in vectors)

    return [action((1, 1, 0, 1)), action((0, 2, 1, 0))], 8


FAMILIES = {
    "cyclic": cyclic,
    "dihedral": dihedral,
    "symmetric": symmetric,
    "alternating": alternating,
    "quaternion8": quaternion8,
    "sl23": sl23,
}

PARAMETRIC = {"cyclic", "dihedral", "symmetric", "alternating"}


def family_order(name, param=None):
    """Group order without enumeration, for early size-cap checks."""
    if name == "cyclic":
        return param
    if name == "dihedral":
        return 2 * param
    if name == "symmetric":
        return math.factorial(param)
    if name == "alternating":
        return max(math.factorial(param) // 2, 1)
    if name == "quaternion8":
        return 8
    if name == "sl23":
        return 24
    raise KeyError(name)


def family_generators(name, param=None):
    """(generators, degree) for a named family."""
    builder = FAMILIES[name]
    if name in PARAMETRIC:
        return builder(param)
    return builder()
