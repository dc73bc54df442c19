"""Integer homology of face-table cell complexes via exact Smith normal form.

Works over arbitrary-precision Python ints throughout; no floating point, no
modular shortcuts.  The complex objects only need `cells` (with .cell_id and
.dim), `by_dim`, and a `faces` table, so handcrafted fixtures plug in next to
real quotients.
"""

from dataclasses import dataclass
from math import gcd


class BoundaryCheckFailed(RuntimeError):
    """The composite of consecutive boundary maps is not zero."""


@dataclass
class IntegerChainComplex:
    """Per-dimension cell counts and boundary matrices over the integers.

    `boundaries[n]` is the matrix of the map from n-chains to (n-1)-chains,
    rows indexed by (n-1)-cells, columns by n-cells; entry = signed count of
    face incidences.  Index 0 is unused padding so indices match dimensions.
    """
    dims: list
    boundaries: list

    @property
    def top_dim(self):
        return len(self.dims) - 1


def boundary_matrices(complex_like):
    """Assemble all boundary matrices and verify that squares vanish.

    The column of a cell is sum_i (-1)^i [face_i]; faces repeated with
    opposite signs cancel, which is exactly what quotient identifications
    produce.  Raises BoundaryCheckFailed if any composite is nonzero.
    """
    by_dim = complex_like.by_dim
    dims = [len(ids) for ids in by_dim]
    local = {}
    for ids in by_dim:
        for k, cid in enumerate(ids):
            local[cid] = k
    boundaries = [None]
    for n in range(1, len(dims)):
        rows, cols = dims[n - 1], dims[n]
        matrix = [[0] * cols for _ in range(rows)]
        for k, cid in enumerate(by_dim[n]):
            for i, f in enumerate(complex_like.faces[cid]):
                matrix[local[f]][k] += (-1) ** i
        boundaries.append(matrix)
    for n in range(2, len(dims)):
        upper, lower = boundaries[n], boundaries[n - 1]
        for col in range(dims[n]):
            acc = [0] * dims[n - 2]
            for mid in range(dims[n - 1]):
                c = upper[mid][col]
                if c:
                    for out in range(dims[n - 2]):
                        acc[out] += c * lower[out][mid]
            if any(acc):
                raise BoundaryCheckFailed(f"boundary square nonzero at dimension {n}")
    return IntegerChainComplex(dims=dims, boundaries=boundaries)


def smith_normal_form(matrix):
    """Invariant factors and rank of an integer matrix, exactly.

    Classic reduction pivoting on a least-absolute-value entry, followed by a
    gcd/lcm sweep that enforces the divisibility chain.  Returns
    (invariants, rank) with every invariant positive and d_i | d_{i+1}.
    """
    work = [list(row) for row in matrix]
    m = len(work)
    n = len(work[0]) if m else 0
    k = 0
    while k < min(m, n):
        pivot = None
        best = None
        for i in range(k, m):
            row = work[i]
            for j in range(k, n):
                v = row[j]
                if v and (best is None or abs(v) < best):
                    best = abs(v)
                    pivot = (i, j)
                    if best == 1:
                        break
            if best == 1:
                break
        if pivot is None:
            break
        pi, pj = pivot
        work[k], work[pi] = work[pi], work[k]
        if pj != k:
            for row in work:
                row[k], row[pj] = row[pj], row[k]
        if work[k][k] < 0:
            work[k] = [-v for v in work[k]]
        while True:
            clean = True
            for i in range(k + 1, m):
                q = work[i][k] // work[k][k]
                if q:
                    pivot_row = work[k]
                    work[i] = [a - q * b for a, b in zip(work[i], pivot_row)]
                if work[i][k]:
                    work[i], work[k] = work[k], work[i]
                    if work[k][k] < 0:
                        work[k] = [-v for v in work[k]]
                    clean = False
                    break
            if not clean:
                continue
            for j in range(k + 1, n):
                q = work[k][j] // work[k][k]
                if q:
                    for row in work:
                        row[j] -= q * row[k]
                if work[k][j]:
                    for row in work:
                        row[k], row[j] = row[j], row[k]
                    if work[k][k] < 0:
                        work[k] = [-v for v in work[k]]
                    clean = False
                    break
            if clean:
                break
        k += 1
    diag = [abs(work[i][i]) for i in range(k)]
    changed = True
    while changed:
        changed = False
        for i in range(len(diag) - 1):
            a, b = diag[i], diag[i + 1]
            if b % a:
                g = gcd(a, b)
                diag[i], diag[i + 1] = g, a * b // g
                changed = True
    return diag, len(diag)


@dataclass
class HomologyProfile:
    """Reduced integer homology, one (betti, torsion coefficients) per dimension."""
    entries: tuple

    def is_trivial(self):
        return all(betti == 0 and not torsion for betti, torsion in self.entries)

    def agrees_with(self, other):
        """Equality up to trailing trivial dimensions."""
        a, b = list(self.entries), list(other.entries)
        while len(a) < len(b):
            a.append((0, ()))
        while len(b) < len(a):
            b.append((0, ()))
        return a == b

    def to_json(self):
        return [{"betti": betti, "torsion": list(torsion)} for betti, torsion in self.entries]


def reduced_homology(chain_complex):
    """Reduced homology profile of an IntegerChainComplex.

    Free rank in dimension n is dim C_n - rank d_n - rank d_{n+1}; torsion
    comes from the invariant factors of d_{n+1} that exceed 1.  Dimension 0
    is reduced (one copy of Z removed), so a connected complex reports rank 0
    there.
    """
    top = chain_complex.top_dim
    ranks = [0] * (top + 2)
    invariants = [()] * (top + 2)
    for n in range(1, top + 1):
        inv, rank = smith_normal_form(chain_complex.boundaries[n])
        ranks[n] = rank
        invariants[n] = inv
    entries = []
    for n in range(top + 1):
        betti = chain_complex.dims[n] - ranks[n] - ranks[n + 1]
        if n == 0:
            betti -= 1
        torsion = tuple(d for d in invariants[n + 1] if d > 1)
        assert betti >= 0
        entries.append((betti, torsion))
    return HomologyProfile(entries=tuple(entries))


def quotient_homology(complex_like):
    return reduced_homology(boundary_matrices(complex_like))


@dataclass
class CrossCheckResult:
    main: HomologyProfile
    poset: HomologyProfile

    @property
    def agree(self):
        return self.main.agrees_with(self.poset)


def cross_check_quotients(group, p, table=None):
    """Homology of the normal-chain quotient against the full-chain quotient.

    The two complexes are built by different chain generators and are
    genuinely different cell complexes; agreement of their reduced homology
    is the independent confirmation the pipeline reports.
    """
    from .complexes import build_poset_quotient, build_quotient

    main = build_quotient(group, p, table=table)
    poset = build_poset_quotient(group, p, table=table or main.table)
    return CrossCheckResult(main=quotient_homology(main), poset=quotient_homology(poset))
