"""Quotient cell complexes of p-subgroup chains under conjugation.

Cells are conjugation orbits of strictly increasing chains of nontrivial
p-subgroups.  The main builder keeps only chains whose members are all normal
in the chain's top subgroup; the cross-check builder keeps every chain.  Both
produce face-table data (delete one chain entry, re-canonicalize): cells are
glued along orbits, so they are NOT determined by their vertices and the
result must be treated as a cell complex with explicit face maps.

Normality in the top implies pairwise normality (everything between the two
subgroups normalizes the smaller one), so the restricted chain family is
closed under taking faces; the builders rely on that.
"""

from dataclasses import dataclass

from .groups import all_p_subgroups, iter_mask


class EmptyComplex(ValueError):
    """The prime does not divide the group order: no cells at all."""


def _normal_in(group, sub_mask, big_mask):
    for g in iter_mask(big_mask & ~sub_mask):
        for h in iter_mask(sub_mask):
            if not (sub_mask >> group.conj(g, h)) & 1:
                return False
    return True


def build_chains(table, normal_in_top=True):
    """All strict subgroup chains, grouped by dimension (= length - 1).

    Chains are tuples of ascending subgroup ids.  With `normal_in_top` only
    chains with every member normal in the top subgroup survive.  Generation
    walks downward from each top: the candidate set below a fixed top is
    precomputed once, then extended through every descending inclusion path,
    so each chain is produced exactly once.
    """
    group = table.group
    masks = [sub.mask for sub in table]
    n = len(masks)
    allowed = []
    for j in range(n):
        mj = masks[j]
        cand = [i for i in range(j) if masks[i] & ~mj == 0]
        if normal_in_top:
            cand = [i for i in cand if _normal_in(group, masks[i], mj)]
        allowed.append(cand)
    dims = [[]]
    for j in range(n):
        stack = [(j,)]
        while stack:
            chain = stack.pop()
            d = len(chain) - 1
            if d == len(dims):
                dims.append([])
            dims[d].append(chain)
            bottom = masks[chain[0]]
            for i in allowed[j]:
                if i < chain[0] and masks[i] & ~bottom == 0:
                    stack.append((i,) + chain)
    for bucket in dims:
        bucket.sort()
    return dims


def canonical_orbit_rep(chain, table):
    """Least conjugate of the chain over the whole group (id-tuple order).

    Conjugation preserves subgroup orders, so comparing id tuples agrees with
    comparing canonical keys inside one orbit.  Idempotent by construction.
    """
    best = tuple(chain)
    first = chain[0]
    for g in range(1, table.group.order):
        row = table.conj_row(g)
        if row[first] > best[0]:
            continue
        cand = tuple(row[s] for s in chain)
        if cand < best:
            best = cand
    return best


@dataclass
class OrbitCell:
    """One cell of the quotient: an orbit of chains, named by its least member."""
    cell_id: int
    dim: int
    rep: tuple
    morse_class: str | None = None


class QuotientComplex:
    """Cells plus face table for one quotient, with id lookup by chain."""

    def __init__(self, table, cells, by_dim, faces, normal_chains):
        self.table = table
        self.group = table.group
        self.p = table.p
        self.cells = cells
        self.by_dim = by_dim
        self.faces = faces
        self.normal_chains = normal_chains
        self._id_of_rep = {cell.rep: cell.cell_id for cell in cells}
        self._canon = {cell.rep: cell.rep for cell in cells}

    def canonical_rep(self, chain):
        chain = tuple(chain)
        rep = self._canon.get(chain)
        if rep is None:
            rep = self._canon[chain] = canonical_orbit_rep(chain, self.table)
        return rep

    def orbit_cell_id(self, chain):
        return self._id_of_rep[self.canonical_rep(chain)]

    def face(self, cell_id, i):
        """Cell id of the i-th face (delete entry i of the representative)."""
        cell = self.cells[cell_id]
        if cell.dim == 0 or not 0 <= i <= cell.dim:
            raise IndexError(f"face index {i} out of range for dimension {cell.dim}")
        return self.faces[cell_id][i]

    def counts(self):
        return [len(ids) for ids in self.by_dim]

    @property
    def max_dim(self):
        return len(self.by_dim) - 1

    def euler_characteristic(self):
        return sum((-1) ** d * len(ids) for d, ids in enumerate(self.by_dim))

    def dump_dict(self):
        """JSON-ready description: per-dim counts plus cells with reps and faces."""
        return {
            "dims": self.counts(),
            "cells": [
                {
                    "id": cell.cell_id,
                    "dim": cell.dim,
                    "rep": [list(self.table[sid].canonical_key) for sid in cell.rep],
                    "faces": list(self.faces[cell.cell_id]),
                }
                for cell in self.cells
            ],
        }


def _build(table, normal_chains):
    if len(table) == 0:
        raise EmptyComplex(
            f"{table.p} does not divide the group order {table.group.order}")
    chains = build_chains(table, normal_in_top=normal_chains)
    canon = {}

    def canonical(chain):
        rep = canon.get(chain)
        if rep is None:
            rep = canon[chain] = canonical_orbit_rep(chain, table)
        return rep

    cells = []
    by_dim = []
    id_of_rep = {}
    for d, bucket in enumerate(chains):
        reps = sorted({canonical(chain) for chain in bucket})
        ids = []
        for rep in reps:
            cid = len(cells)
            cells.append(OrbitCell(cid, d, rep))
            id_of_rep[rep] = cid
            ids.append(cid)
        by_dim.append(ids)
    faces = []
    for cell in cells:
        if cell.dim == 0:
            faces.append(())
            continue
        rep = cell.rep
        faces.append(tuple(
            id_of_rep[canonical(rep[:i] + rep[i + 1:])]
            for i in range(cell.dim + 1)))
    quotient = QuotientComplex(table, cells, by_dim, faces, normal_chains)
    quotient._canon.update(canon)
    return quotient


def build_quotient(group, p, table=None):
    """Quotient of the normal-in-top chain complex by conjugation."""
    if table is None:
        table = all_p_subgroups(group, p)
    return _build(table, normal_chains=True)


def build_poset_quotient(group, p, table=None):
    """Quotient of the full chain complex (no normality condition).

    Independent cross-check target: its homology must agree with the
    normal-chain quotient's.
    """
    if table is None:
        table = all_p_subgroups(group, p)
    return _build(table, normal_chains=False)


def verify_simplicial_identities(quotient):
    """Exhaustively check face(face(c, j), i) == face(face(c, i), j-1) for i < j."""
    for cell in quotient.cells:
        if cell.dim < 2:
            continue
        cid = cell.cell_id
        for j in range(cell.dim + 1):
            for i in range(j):
                left = quotient.face(quotient.face(cid, j), i)
                right = quotient.face(quotient.face(cid, i), j - 1)
                if left != right:
                    raise AssertionError(
                        f"simplicial identity fails at cell {cid}, i={i}, j={j}")


def orbit_soundness_check(quotient, trials, rng):
    """Random conjugates of random cells must canonicalize back to their rep."""
    cells = quotient.cells
    failures = 0
    for _ in range(trials):
        cell = cells[rng.randrange(len(cells))]
        g = rng.randrange(quotient.group.order)
        moved = quotient.table.conj_chain(g, cell.rep)
        if canonical_orbit_rep(moved, quotient.table) != cell.rep:
            failures += 1
    return failures
