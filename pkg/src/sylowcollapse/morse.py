"""Discrete Morse data on quotient complexes.

Classification of cells, the matching between redundant and collapsible
cells, the matching digraph with its acyclicity certificate, height and
alternating-path diagnostics, and an executable schedule of elementary
collapses down to the single critical vertex.
"""

import heapq
import random
from dataclasses import dataclass

from .groups import (Subgroup, conjugate_subgroup, is_sylow_in, iter_mask,
                     sylow_extension, valuation)
from .complexes import canonical_orbit_rep

CRITICAL = "critical"
REDUNDANT = "redundant"
COLLAPSIBLE = "collapsible"

MATCH_UP = "match_up"
FACE_DOWN = "face_down"


class MatchingFailure(RuntimeError):
    """The matching is not a valid pairing (bug or deliberate corruption)."""


class BoundViolated(RuntimeError):
    """An alternating path exceeds the 2(t-1) length bound."""


class StuckCollapse(RuntimeError):
    """No remaining matched pair has a free face (signals a broken matching)."""


def classify_chain(table, chain):
    """Morse class of one chain, computed from its representative.

    The top subgroup is compared against the intersection of the normalizers
    of all chain members.  A vertex whose subgroup is p-Sylow in the whole
    group is the critical cell; any longer chain is collapsible exactly when
    its top is p-Sylow in the chain normalizer, and redundant otherwise.
    """
    group, p = table.group, table.p
    top_order = table[chain[-1]].order
    if len(chain) == 1 and (group.order // top_order) % p != 0:
        return CRITICAL
    nmask = table.chain_normalizer_mask(chain)
    sylow_in_norm = (nmask.bit_count() // top_order) % p != 0
    if len(chain) == 1:
        # a non-Sylow subgroup grows inside its own normalizer, so it can
        # never be Sylow there
        assert not sylow_in_norm
        return REDUNDANT
    return COLLAPSIBLE if sylow_in_norm else REDUNDANT


def classify_cells(quotient):
    """Stamp every cell's morse_class; returns per-dimension counts.

    Exactly one cell comes out critical: the vertex of the Sylow class.
    """
    counts = {label: [0] * (quotient.max_dim + 1)
              for label in (CRITICAL, REDUNDANT, COLLAPSIBLE)}
    critical = []
    for cell in quotient.cells:
        label = classify_chain(quotient.table, cell.rep)
        cell.morse_class = label
        counts[label][cell.dim] += 1
        if label == CRITICAL:
            critical.append(cell.cell_id)
    if len(critical) != 1:
        raise MatchingFailure(f"expected a unique critical cell, found {len(critical)}")
    top = quotient.cells[critical[0]]
    assert top.dim == 0
    assert valuation(quotient.table[top.rep[0]].order, quotient.p) == quotient.table.t
    return counts


@dataclass
class MorseMatching:
    """Redundant-to-collapsible pairing plus the critical cell list.

    `pairs` maps each redundant cell id to its collapsible partner and the
    face index at which the partner returns to it; `partner` is the inverse
    map.  The return index is stored per pair even though this construction
    always sets it to dim+1, so deliberately broken matchings can be
    represented too.
    """
    critical: tuple
    pairs: dict

    @property
    def partner(self):
        return {col: red for red, (col, _) in self.pairs.items()}


def build_matching(quotient):
    """Pair every redundant chain with its Sylow-extended collapsible cell.

    For a redundant cell with representative (P_0 < ... < P_n), the partner
    is the orbit of the chain extended by the deterministic p-Sylow subgroup
    of the chain normalizer containing P_n; the return index is n + 1.
    """
    table = quotient.table
    group, p = quotient.group, quotient.p
    if quotient.cells and quotient.cells[0].morse_class is None:
        classify_cells(quotient)
    pairs = {}
    critical = []
    for cell in quotient.cells:
        if cell.morse_class == CRITICAL:
            critical.append(cell.cell_id)
            continue
        if cell.morse_class != REDUNDANT:
            continue
        rep = cell.rep
        nmask = table.chain_normalizer_mask(rep)
        scope = Subgroup(group, nmask)
        top = table[rep[-1]]
        syl = sylow_extension(scope, top, p)
        extended = rep + (table.sid_of_mask(syl.mask),)
        partner = quotient.orbit_cell_id(extended)
        pairs[cell.cell_id] = (partner, len(rep))
    matching = MorseMatching(critical=tuple(critical), pairs=pairs)
    validate_matching(quotient, matching)
    return matching


def validate_matching(quotient, matching):
    """Structural checks; raises MatchingFailure with the first offense.

    Verifies the three-way partition, dimension discipline, that each
    collapsible cell returns to its redundant partner at the stored face
    index, and that the pairing is a bijection onto the collapsible cells.
    """
    cells = quotient.cells
    labels = {cell.cell_id: cell.morse_class for cell in cells}
    claimed = set(matching.critical) | set(matching.pairs)
    partner = {}
    for red, (col, _) in matching.pairs.items():
        if col in partner:
            raise MatchingFailure(f"cell {col} matched twice")
        partner[col] = red
        claimed.add(col)
    if claimed != {cell.cell_id for cell in cells}:
        raise MatchingFailure("matching does not cover the cell set exactly")
    if set(matching.critical) & set(matching.pairs) or set(matching.pairs) & set(partner):
        raise MatchingFailure("matching classes overlap")
    for cid in matching.critical:
        if labels[cid] != CRITICAL:
            raise MatchingFailure(f"cell {cid} listed critical but classified {labels[cid]}")
    for red, (col, back) in matching.pairs.items():
        if labels[red] != REDUNDANT:
            raise MatchingFailure(f"cell {red} paired as redundant but classified {labels[red]}")
        if labels[col] != COLLAPSIBLE:
            raise MatchingFailure(f"cell {col} is a partner but classified {labels[col]}")
        if cells[col].dim != cells[red].dim + 1:
            raise MatchingFailure(f"pair ({red}, {col}) breaks the dimension step")
        if not 0 <= back <= cells[col].dim:
            raise MatchingFailure(f"return index {back} out of range for pair ({red}, {col})")
        if quotient.face(col, back) != red:
            raise MatchingFailure(
                f"face {back} of cell {col} is not its partner {red}")
    collapsible = {cell.cell_id for cell in cells if cell.morse_class == COLLAPSIBLE}
    if set(partner) != collapsible:
        raise MatchingFailure("pairing is not onto the collapsible cells")
    # dimension-indexed count identity follows, but check it explicitly
    for d in range(quotient.max_dim + 1):
        red = sum(1 for cell in cells if cell.dim == d and cell.morse_class == REDUNDANT)
        col = sum(1 for cell in cells
                  if cell.dim == d + 1 and cell.morse_class == COLLAPSIBLE)
        if red != col:
            raise MatchingFailure(f"{red} redundant {d}-cells vs {col} collapsible {d + 1}-cells")


@dataclass
class Edge:
    src: int
    dst: int
    kind: str


@dataclass
class MorseDigraph:
    """Matching digraph: MatchUp edges climb each redundant cell to its
    partner, FaceDown edges descend from a collapsible cell to every face
    other than the one returning to its own redundant cell.

    Vertices are the non-critical cells; face edges into the critical vertex
    are dropped (it has no outgoing edges and cannot join a cycle).
    """
    vertices: tuple
    edges: list


def build_digraph(quotient, matching):
    labels = {cell.cell_id: cell.morse_class for cell in quotient.cells}
    vertices = tuple(cell.cell_id for cell in quotient.cells
                     if cell.morse_class != CRITICAL)
    edges = []
    for red, (col, _) in matching.pairs.items():
        edges.append(Edge(red, col, MATCH_UP))
    for red, (col, back) in matching.pairs.items():
        for j in range(quotient.cells[col].dim + 1):
            if j == back:
                continue
            target = quotient.face(col, j)
            if labels[target] == CRITICAL:
                continue
            edges.append(Edge(col, target, FACE_DOWN))
    return MorseDigraph(vertices=vertices, edges=edges)


@dataclass
class AcyclicityCertificate:
    acyclic: bool
    order: tuple | None  # every edge goes forward in this order
    cycle: tuple | None  # a directed cycle, when one exists


def check_acyclic(digraph):
    """Kahn scan with a deterministic heap; returns order or a witness cycle."""
    succ = {v: [] for v in digraph.vertices}
    indeg = {v: 0 for v in digraph.vertices}
    for edge in digraph.edges:
        succ[edge.src].append(edge.dst)
        indeg[edge.dst] += 1
    ready = [v for v, d in indeg.items() if d == 0]
    heapq.heapify(ready)
    order = []
    while ready:
        v = heapq.heappop(ready)
        order.append(v)
        for w in succ[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                heapq.heappush(ready, w)
    if len(order) == len(digraph.vertices):
        pos = {v: k for k, v in enumerate(order)}
        assert all(pos[e.src] < pos[e.dst] for e in digraph.edges)
        return AcyclicityCertificate(acyclic=True, order=tuple(order), cycle=None)
    # strip leftover vertices that cannot lie on a cycle, then walk until a
    # vertex repeats
    remaining = {v for v, d in indeg.items() if d > 0}
    changed = True
    while changed:
        changed = False
        for v in list(remaining):
            if not any(w in remaining for w in succ[v]):
                remaining.discard(v)
                changed = True
    v = min(remaining)
    path, where = [], {}
    while v not in where:
        where[v] = len(path)
        path.append(v)
        v = min(w for w in succ[v] if w in remaining)
    cycle = tuple(path[where[v]:])
    return AcyclicityCertificate(acyclic=False, order=None, cycle=cycle)


def height(quotient, cell_id):
    """log_p of the top subgroup's order; between 1 and t."""
    return quotient.table.height(quotient.cells[cell_id].rep[-1])


def check_height_discipline(quotient, digraph):
    """Height strictly rises on MatchUp edges and is flat on FaceDown edges."""
    for edge in digraph.edges:
        hs, hd = height(quotient, edge.src), height(quotient, edge.dst)
        if edge.kind == MATCH_UP and not hs < hd:
            return False, f"MatchUp {edge.src}->{edge.dst} has height {hs} !< {hd}"
        if edge.kind == FACE_DOWN and hs != hd:
            return False, f"FaceDown {edge.src}->{edge.dst} has height {hs} != {hd}"
    return True, None


def longest_alternating_path(quotient, matching, digraph):
    """Max edge count over paths from a redundant cell alternating up/down.

    Redundant heights strictly increase along such a path, which caps the
    length; anything above 2(t-1) means the Morse data is wrong and raises
    BoundViolated.
    """
    labels = {cell.cell_id: cell.morse_class for cell in quotient.cells}
    down = {}
    for edge in digraph.edges:
        if edge.kind == FACE_DOWN and labels[edge.dst] == REDUNDANT:
            down.setdefault(edge.src, []).append(edge.dst)
    best_from_red = {}

    def from_red(red):
        if red not in best_from_red:
            best_from_red[red] = 0  # cycle guard; digraph is checked acyclic first
            col = matching.pairs[red][0]
            best_from_red[red] = 1 + max(
                (1 + from_red(nxt) for nxt in down.get(col, ())), default=0)
        return best_from_red[red]

    longest = max((from_red(red) for red in matching.pairs), default=0)
    bound = 2 * (quotient.table.t - 1)
    if longest > bound:
        raise BoundViolated(f"alternating path of length {longest} exceeds {bound}")
    return longest


@dataclass
class CollapseSchedule:
    """Ordered elementary collapses (collapsible_id, redundant_id) pairs."""
    steps: list
    terminal_cell: int


def collapse_schedule(quotient, matching, certificate):
    """Execute the matching as elementary collapses down to the Sylow vertex.

    Pairs are prioritized by reverse topological position of the collapsible
    cell in the matching digraph, but each step re-verifies the free-face
    condition against a live incidence count and defers pairs that are not
    ready; for a valid matching some pair is always free, so the executor
    never wedges (StuckCollapse otherwise).
    """
    assert certificate.acyclic
    pos = {cid: k for k, cid in enumerate(certificate.order)}
    incidence = {cell.cell_id: 0 for cell in quotient.cells}
    for cell in quotient.cells:
        for f in quotient.faces[cell.cell_id]:
            incidence[f] += 1
    pending = dict(matching.pairs)  # redundant id -> (collapsible id, return index)
    ready = []

    def push_if_free(red):
        if red in pending and incidence[red] == 1:
            col = pending[red][0]
            heapq.heappush(ready, (-pos[col], col, red))

    for red in pending:
        push_if_free(red)
    steps = []
    alive = {cell.cell_id for cell in quotient.cells}
    while ready:
        _, col, red = heapq.heappop(ready)
        if red not in pending:
            continue
        assert incidence[red] == 1 and col in alive and red in alive
        assert red in quotient.faces[col]
        del pending[red]
        for gone in (col, red):
            alive.discard(gone)
            for f in quotient.faces[gone]:
                incidence[f] -= 1
                push_if_free(f)
        steps.append((col, red))
    if pending:
        raise StuckCollapse(f"{len(pending)} matched pairs never became free")
    assert alive == set(matching.critical)
    terminal = next(iter(alive))
    return CollapseSchedule(steps=steps, terminal_cell=terminal)


@dataclass
class IndependenceResult:
    trials: int
    failures: int

    @property
    def ok(self):
        return self.failures == 0


def representative_independence_test(quotient, matching, trials=100, seed=0):
    """Re-derive classification and the matching from random conjugates.

    Each trial conjugates a random redundant cell's representative by a
    random group element, re-classifies it, recomputes the Sylow extension
    with a randomized (rather than deterministic) Sylow choice, and checks
    the orbit of the extended chain is the matched partner.
    """
    table = quotient.table
    group, p = quotient.group, quotient.p
    rng = random.Random(seed)
    redundant = sorted(matching.pairs)
    if not redundant:
        return IndependenceResult(trials=trials, failures=0)
    failures = 0
    for _ in range(trials):
        red = redundant[rng.randrange(len(redundant))]
        cell = quotient.cells[red]
        g = rng.randrange(group.order)
        moved = table.conj_chain(g, cell.rep)
        if classify_chain(table, moved) != REDUNDANT:
            failures += 1
            continue
        nmask = table.chain_normalizer_mask(moved)
        scope = Subgroup(group, nmask)
        top = table[moved[-1]]
        syl = sylow_extension(scope, top, p)
        # any Sylow choice containing the top arises as a normalizer conjugate
        twist = rng.choice(list(iter_mask(nmask)))
        syl = conjugate_subgroup(twist, syl)
        if top.mask & ~syl.mask or not is_sylow_in(syl, scope, p):
            failures += 1
            continue
        extended = moved + (table.sid_of_mask(syl.mask),)
        if canonical_orbit_rep(extended, table) != quotient.cells[matching.pairs[red][0]].rep:
            failures += 1
    return IndependenceResult(trials=trials, failures=failures)
