"""Permutation groups, subgroups, and Sylow machinery on explicit element tables.

Everything here works with fully enumerated groups: a group is a sorted table
of permutations, a subgroup is a bit mask over element indices.  The
representation is deliberately dense - the target is groups of order a few
thousand at most, where closure scans and normalizer sweeps are cheap and
exact.  No stabilizer chains, no generating-set cleverness.
"""

import math
import warnings

MAX_ORDER = 10_000
WARN_ORDER = 1_000
_ROW_CACHE_LIMIT = 1024  # cache multiplication rows below this group order


class DegreeMismatch(ValueError):
    """Generators act on different numbers of points."""


class SizeLimit(RuntimeError):
    """Group closure exceeded the configured order cap."""


class EmptyChain(ValueError):
    """A subgroup chain was expected to be nonempty."""


class NotSubgroup(ValueError):
    """First argument is not contained in the second."""


class AlreadySylow(ValueError):
    """No extension exists: the subgroup is already p-Sylow in its scope."""


class ParseError(ValueError):
    """Malformed permutation or group-spec text; `position` is the offset."""

    def __init__(self, message, position):
        super().__init__(f"{message} (at offset {position})")
        self.message = message
        self.position = position


def iter_mask(mask):
    """Yield the set bit positions of a Python-int bit mask, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def valuation(n, p):
    """Largest k with p**k dividing n."""
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def is_p_power(n, p):
    while n % p == 0:
        n //= p
    return n == 1


class Permutation:
    """A permutation of {0, ..., degree-1}, stored as its image tuple.

    Composition is right to left: (a * b)(x) = a(b(x)).
    """

    __slots__ = ("images",)

    def __init__(self, images):
        images = tuple(images)
        assert sorted(images) == list(range(len(images))), "not a bijection"
        self.images = images

    @classmethod
    def identity(cls, degree):
        return cls(range(degree))

    @classmethod
    def from_cycles(cls, cycles, degree):
        """Build from disjoint cycles of 0-based points."""
        images = list(range(degree))
        for cycle in cycles:
            for a, b in zip(cycle, cycle[1:] + cycle[:1]):
                images[a] = b
        return cls(images)

    @property
    def degree(self):
        return len(self.images)

    def __call__(self, point):
        return self.images[point]

    def __mul__(self, other):
        a, b = self.images, other.images
        if len(a) != len(b):
            raise DegreeMismatch(f"degree {len(a)} vs {len(b)}")
        return Permutation(a[x] for x in b)

    def inverse(self):
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(inv)

    def cycles(self, include_fixed=False):
        """Disjoint cycles, each rotated to start at its least point."""
        seen = [False] * len(self.images)
        out = []
        for start in range(len(self.images)):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            nxt = self.images[start]
            while nxt != start:
                cyc.append(nxt)
                seen[nxt] = True
                nxt = self.images[nxt]
            if len(cyc) > 1 or include_fixed:
                out.append(tuple(cyc))
        return out

    def order(self):
        return math.lcm(*(len(c) for c in self.cycles()), 1)

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __lt__(self, other):
        return self.images < other.images

    def __repr__(self):
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + " ".join(str(p + 1) for p in c) + ")" for c in cycles)


def _scan_permutation(text, pos):
    """Scan one cycle-notation permutation starting at `pos`.

    Returns (list of cycles in 0-based points, end position).  Points are
    1-based in the text; cycles of one permutation must be disjoint.
    """
    n = len(text)
    cycles = []
    seen_points = set()
    saw_any = False
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n or text[pos] != "(":
            break
        pos += 1
        saw_any = True
        cycle = []
        while True:
            while pos < n and text[pos].isspace():
                pos += 1
            if pos >= n:
                raise ParseError("unclosed cycle", pos)
            ch = text[pos]
            if ch == ")":
                pos += 1
                break
            if not ch.isdigit():
                raise ParseError(f"unexpected character {ch!r} in cycle", pos)
            start = pos
            while pos < n and text[pos].isdigit():
                pos += 1
            point = int(text[start:pos])
            if point < 1:
                raise ParseError("points are numbered from 1", start)
            if point in seen_points:
                raise ParseError(f"point {point} repeated; cycles must be disjoint", start)
            seen_points.add(point)
            cycle.append(point - 1)
        if cycle:
            cycles.append(tuple(cycle))
    if not saw_any:
        raise ParseError("expected '(' to start a cycle", pos)
    return cycles, pos


def parse_permutation(text, degree=None):
    """Parse one permutation in cycle notation, e.g. "(1 2 3)(4 5)"."""
    cycles, pos = _scan_permutation(text, 0)
    while pos < len(text) and text[pos].isspace():
        pos += 1
    if pos < len(text):
        raise ParseError("trailing characters after permutation", pos)
    top = max((max(c) for c in cycles), default=-1)
    if degree is None:
        degree = top + 1
    elif top >= degree:
        raise ParseError(f"point {top + 1} exceeds degree {degree}", 0)
    return Permutation.from_cycles(cycles, degree)


def parse_generators(text, base_offset=0):
    """Parse ';'-separated permutations on a common point set.

    The degree is the largest point mentioned.  `base_offset` shifts error
    positions when `text` is a slice of a larger spec string.
    """
    pos = 0
    n = len(text)
    all_cycles = []
    try:
        while True:
            cycles, pos = _scan_permutation(text, pos)
            all_cycles.append(cycles)
            while pos < n and text[pos].isspace():
                pos += 1
            if pos >= n:
                break
            if text[pos] != ";":
                raise ParseError(f"unexpected character {text[pos]!r}", pos)
            pos += 1
    except ParseError as err:
        raise ParseError(err.message, err.position + base_offset) from None
    degree = max(max(max(c) for c in cycles) for cycles in all_cycles if cycles) + 1 \
        if any(all_cycles) else 1
    return [Permutation.from_cycles(cycles, degree) for cycles in all_cycles]


def enumerate_group(generators, degree=None, max_order=MAX_ORDER):
    """Close a generating set under multiplication into a PermGroup.

    Elements are indexed in lexicographic order of their image tuples, so the
    identity always lands at index 0.  Raises SizeLimit past `max_order` and
    warns above WARN_ORDER, where the dense algorithms start to crawl.
    """
    generators = list(generators)
    if generators:
        degrees = {g.degree for g in generators}
        if len(degrees) != 1:
            raise DegreeMismatch(f"mixed generator degrees {sorted(degrees)}")
        gen_degree = degrees.pop()
        if degree is not None and degree != gen_degree:
            raise DegreeMismatch(f"declared degree {degree}, generators act on {gen_degree}")
        degree = gen_degree
    elif degree is None:
        degree = 1
    elems = {Permutation.identity(degree)}
    frontier = [g for g in generators if g not in elems]
    elems.update(frontier)
    while frontier:
        fresh = []
        snapshot = list(elems)
        for a in snapshot:
            for b in frontier:
                for c in (a * b, b * a):
                    if c not in elems:
                        elems.add(c)
                        fresh.append(c)
                        if len(elems) > max_order:
                            raise SizeLimit(f"group order exceeds cap {max_order}")
        frontier = fresh
    if len(elems) > WARN_ORDER:
        warnings.warn(
            f"group order {len(elems)} exceeds {WARN_ORDER}; dense subgroup "
            "algorithms will be slow", RuntimeWarning, stacklevel=2)
    return PermGroup(degree, generators, sorted(elems))


class PermGroup:
    """A fully enumerated permutation group with indexed multiplication."""

    def __init__(self, degree, generators, elements):
        self.degree = degree
        self.generators = list(generators)
        self.elements = list(elements)
        self.order = len(elements)
        self._index = {p.images: i for i, p in enumerate(self.elements)}
        assert len(self._index) == self.order
        assert self.elements[0] == Permutation.identity(degree)
        self._inv = [self._index[p.inverse().images] for p in self.elements]
        self._orders = [p.order() for p in self.elements]
        self._rows = [None] * self.order if self.order <= _ROW_CACHE_LIMIT else None
        self.generator_indices = [self._index[g.images] for g in self.generators]

    def element(self, i):
        return self.elements[i]

    def index_of(self, perm):
        try:
            return self._index[perm.images]
        except KeyError:
            raise KeyError(f"{perm!r} is not an element of this group") from None

    def __contains__(self, perm):
        return isinstance(perm, Permutation) and perm.images in self._index

    def mul(self, i, j):
        """Index of elements[i] * elements[j]."""
        if self._rows is not None:
            row = self._rows[i]
            if row is None:
                a = self.elements[i].images
                index = self._index
                row = self._rows[i] = [index[tuple(a[x] for x in b.images)]
                                       for b in self.elements]
            return row[j]
        a = self.elements[i].images
        b = self.elements[j].images
        return self._index[tuple(a[x] for x in b)]

    def inv(self, i):
        return self._inv[i]

    def conj(self, g, h):
        """Index of g h g^-1 (arguments are element indices)."""
        return self.mul(self.mul(g, h), self._inv[g])

    def element_order(self, i):
        return self._orders[i]

    @property
    def full_mask(self):
        return (1 << self.order) - 1

    def full_subgroup(self):
        return Subgroup(self, self.full_mask)

    def trivial_subgroup(self):
        return Subgroup(self, 1)

    def closure_mask(self, seed):
        """Bit mask of the subgroup generated by the given element indices."""
        elems = {0}
        frontier = [i for i in seed if i not in elems]
        elems.update(frontier)
        while frontier:
            fresh = []
            snapshot = list(elems)
            for a in snapshot:
                for b in frontier:
                    for c in (self.mul(a, b), self.mul(b, a)):
                        if c not in elems:
                            elems.add(c)
                            fresh.append(c)
            frontier = fresh
        mask = 0
        for i in elems:
            mask |= 1 << i
        return mask

    def subgroup(self, indices):
        """The subgroup generated by the given element indices."""
        return Subgroup(self, self.closure_mask(list(indices)))

    def conjugate_mask(self, g, mask):
        out = 0
        for h in iter_mask(mask):
            out |= 1 << self.conj(g, h)
        return out

    def __repr__(self):
        return f"PermGroup(degree={self.degree}, order={self.order})"


class Subgroup:
    """A subgroup of an enumerated group, stored as an element-index bit mask.

    `canonical_key` - the ascending tuple of member indices - is the hashing
    and ordering handle; two Subgroup objects over the same group are equal
    exactly when their masks coincide.
    """

    __slots__ = ("group", "mask", "order", "_key")

    def __init__(self, group, mask):
        self.group = group
        self.mask = mask
        self.order = mask.bit_count()
        self._key = None

    @property
    def canonical_key(self):
        if self._key is None:
            self._key = tuple(iter_mask(self.mask))
        return self._key

    def indices(self):
        return list(iter_mask(self.mask))

    def elements(self):
        return [self.group.elements[i] for i in iter_mask(self.mask)]

    def contains_index(self, i):
        return (self.mask >> i) & 1 == 1

    def is_subgroup_of(self, other):
        return self.mask & ~other.mask == 0

    def assert_closed(self):
        for a in iter_mask(self.mask):
            for b in iter_mask(self.mask):
                assert self.contains_index(self.group.mul(a, b)), "subgroup mask not closed"

    def __eq__(self, other):
        return (isinstance(other, Subgroup)
                and self.group is other.group and self.mask == other.mask)

    def __hash__(self):
        return hash(self.mask)

    def __lt__(self, other):
        return (self.order, self.canonical_key) < (other.order, other.canonical_key)

    def __repr__(self):
        return f"Subgroup(order={self.order}, indices={self.canonical_key})"


def conjugate_subgroup(g, sub):
    """The conjugate g H g^-1; `g` is a Permutation or an element index."""
    group = sub.group
    gi = g if isinstance(g, int) else group.index_of(g)
    return Subgroup(group, group.conjugate_mask(gi, sub.mask))


def _normalizer_mask_within(group, scope_mask, sub_mask):
    out = 0
    for g in iter_mask(scope_mask):
        if (sub_mask >> g) & 1:
            out |= 1 << g  # members normalize their own subgroup
            continue
        for h in iter_mask(sub_mask):
            if not (sub_mask >> group.conj(g, h)) & 1:
                break
        else:
            out |= 1 << g
    return out


def normalizer(group, sub):
    """N_G(H) = {g : g H g^-1 = H} as a Subgroup of `group`."""
    return Subgroup(group, _normalizer_mask_within(group, group.full_mask, sub.mask))


def normalizer_within(scope, sub):
    """The normalizer of `sub` taken inside the subgroup `scope`."""
    return Subgroup(scope.group, _normalizer_mask_within(scope.group, scope.mask, sub.mask))


def chain_normalizer(group, chain):
    """Intersection of the normalizers of every subgroup in the chain."""
    if not chain:
        raise EmptyChain("chain normalizer of an empty chain")
    mask = group.full_mask
    for sub in chain:
        mask &= _normalizer_mask_within(group, group.full_mask, sub.mask)
    return Subgroup(group, mask)


def is_sylow_in(sub, scope, p):
    """True when `sub` is a p-Sylow subgroup of `scope` (index prime to p)."""
    if sub.mask & ~scope.mask:
        raise NotSubgroup(f"order-{sub.order} subgroup not contained in order-{scope.order} scope")
    assert scope.order % sub.order == 0
    return (scope.order // sub.order) % p != 0


def sylow_extension(scope, sub, p):
    """Grow `sub` to a p-Sylow subgroup of `scope` containing it.

    Deterministic: at each step adjoin the least-index p-element of the
    normalizer of the current subgroup taken inside `scope`.  Adjoining such
    an element always yields a strictly larger p-group, so the loop climbs to
    a Sylow subgroup in at most log_p [scope : sub] steps.  `sub` may be the
    trivial subgroup; raises AlreadySylow when there is nothing to extend.
    """
    group = scope.group
    if sub.mask & ~scope.mask:
        raise NotSubgroup("subgroup does not lie in the given scope")
    assert is_p_power(sub.order, p) or sub.order == 1
    if is_sylow_in(sub, scope, p):
        raise AlreadySylow(f"order-{sub.order} subgroup already p-Sylow in its scope")
    cur = sub.mask
    while True:
        scope_norm = _normalizer_mask_within(group, scope.mask, cur)
        g = None
        for cand in iter_mask(scope_norm & ~cur):
            if is_p_power(group.element_order(cand), p):
                g = cand
                break
        assert g is not None, "non-Sylow p-subgroup with no p-element in its normalizer"
        cur = group.closure_mask(list(iter_mask(cur)) + [g])
        assert is_p_power(cur.bit_count(), p)
        if (scope.order // cur.bit_count()) % p != 0:
            return Subgroup(group, cur)


def _p_group_subgroup_masks(group, sylow_mask):
    """All subgroup masks of the p-group given by `sylow_mask`, trivial included."""
    seen = {1}
    frontier = [1]
    while frontier:
        fresh = []
        for hmask in frontier:
            members = list(iter_mask(hmask))
            for g in iter_mask(sylow_mask & ~hmask):
                m = group.closure_mask(members + [g])
                if m not in seen:
                    seen.add(m)
                    fresh.append(m)
        frontier = fresh
    return seen


def all_p_subgroups(group, p):
    """Indexed table of every nontrivial p-subgroup of `group`.

    Staged: climb to one Sylow p-subgroup, enumerate all of its subgroups
    bottom-up, then close that family under conjugation.  Every p-subgroup is
    conjugate into a fixed Sylow subgroup, so the closure is exhaustive.
    """
    if group.order % p != 0:
        return SubgroupTable(group, p, [])
    syl = sylow_extension(group.full_subgroup(), group.trivial_subgroup(), p)
    masks = _p_group_subgroup_masks(group, syl.mask)
    masks.discard(1)
    seen = set(masks)
    work = list(masks)
    while work:
        m = work.pop()
        for gi in group.generator_indices:
            m2 = group.conjugate_mask(gi, m)
            if m2 not in seen:
                seen.add(m2)
                work.append(m2)
    subs = sorted(Subgroup(group, m) for m in seen)
    return SubgroupTable(group, p, subs)


class SubgroupTable:
    """Sorted, indexed table of the nontrivial p-subgroups of one group.

    Subgroup ids are positions in the (order, canonical_key) sort, so the ids
    along any inclusion chain are strictly ascending.  Caches normalizer masks
    and per-element conjugation rows, which the quotient construction hits
    heavily.
    """

    def __init__(self, group, p, subgroups):
        self.group = group
        self.p = p
        self.subgroups = list(subgroups)
        self.t = valuation(group.order, p)
        self._sid = {sub.mask: i for i, sub in enumerate(self.subgroups)}
        self._normalizers = [None] * len(self.subgroups)
        self._conj_rows = [None] * group.order
        self._chain_norms = {}

    def __len__(self):
        return len(self.subgroups)

    def __getitem__(self, sid):
        return self.subgroups[sid]

    def __iter__(self):
        return iter(self.subgroups)

    def sid_of_mask(self, mask):
        return self._sid[mask]

    def height(self, sid):
        return valuation(self.subgroups[sid].order, self.p)

    def normalizer_mask(self, sid):
        mask = self._normalizers[sid]
        if mask is None:
            mask = self._normalizers[sid] = _normalizer_mask_within(
                self.group, self.group.full_mask, self.subgroups[sid].mask)
        return mask

    def conj_row(self, g):
        row = self._conj_rows[g]
        if row is None:
            group = self.group
            sid = self._sid
            row = self._conj_rows[g] = [
                sid[group.conjugate_mask(g, sub.mask)] for sub in self.subgroups]
        return row

    def conj_chain(self, g, chain):
        row = self.conj_row(g)
        return tuple(row[s] for s in chain)

    def chain_normalizer_mask(self, chain):
        cached = self._chain_norms.get(chain)
        if cached is None:
            mask = self.group.full_mask
            for sid in chain:
                mask &= self.normalizer_mask(sid)
            cached = self._chain_norms[chain] = mask
        return cached
