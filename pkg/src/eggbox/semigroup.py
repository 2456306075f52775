"""Finite semigroups by multiplication table, and their Green structure.

Elements are dense indices 0..size-1 with arbitrary hashable labels.  When a
semigroup is built from transformations, each element is bound to its map and
the table matches functional composition (left factor acts after the right).
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass

from .transform import Partition, Transformation

DEFAULT_CAP = 100_000


class ClosureCapExceeded(RuntimeError):
    pass


class FiniteSemigroup:
    """An abstract finite semigroup: labels, a full table, optional carrier."""

    __slots__ = ("labels", "table", "zero", "identity", "carrier", "_green", "_index")

    def __init__(
        self,
        labels: Sequence,
        table: Sequence[Sequence[int]],
        zero: int | None = None,
        identity: int | None = None,
        carrier: Sequence[Transformation] | None = None,
    ):
        self.labels = tuple(labels)
        self.table = tuple(tuple(row) for row in table)
        n = len(self.labels)
        if len(self.table) != n or any(len(row) != n for row in self.table):
            raise ValueError("table shape does not match element count")
        for row in self.table:
            for v in row:
                if not (0 <= v < n):
                    raise ValueError("table entry out of range")
        self.zero = zero
        self.identity = identity
        self.carrier = tuple(carrier) if carrier is not None else None
        if self.carrier is not None and len(self.carrier) != n:
            raise ValueError("carrier length mismatch")
        self._green: GreenData | None = None
        self._index = {lab: i for i, lab in enumerate(self.labels)}

    @property
    def size(self) -> int:
        return len(self.labels)

    def product(self, i: int, j: int) -> int:
        return self.table[i][j]

    def index_of(self, label) -> int:
        return self._index[label]

    def is_idempotent(self, i: int) -> bool:
        return self.table[i][i] == i

    def idempotents(self) -> list[int]:
        return [i for i in range(self.size) if self.table[i][i] == i]

    def validate(self) -> None:
        """Check associativity plus the zero/identity/carrier claims."""
        n = self.size
        t = self.table
        for a in range(n):
            ta = t[a]
            for b in range(n):
                tab = t[ta[b]]
                tb = t[b]
                for c in range(n):
                    if tab[c] != ta[tb[c]]:
                        raise ValueError(f"not associative at ({a},{b},{c})")
        if self.zero is not None:
            z = self.zero
            if any(t[z][a] != z or t[a][z] != z for a in range(n)):
                raise ValueError("claimed zero is not absorbing")
        if self.identity is not None:
            e = self.identity
            if any(t[e][a] != a or t[a][e] != a for a in range(n)):
                raise ValueError("claimed identity is not neutral")
        if self.carrier is not None:
            for a in range(n):
                for b in range(n):
                    if self.carrier[a] * self.carrier[b] != self.carrier[t[a][b]]:
                        raise ValueError(f"table disagrees with carrier at ({a},{b})")

    def green(self) -> "GreenData":
        if self._green is None:
            self._green = _compute_green(self)
        return self._green

    def __repr__(self) -> str:
        return f"FiniteSemigroup(size={self.size})"


@dataclass(frozen=True)
class GreenData:
    """Green's relations as partitions of the element set, plus the J-order.

    ``j_leq`` holds pairs (a, b) of J-class ids with class a below-or-equal
    class b in the principal two-sided ideal order.
    """

    r: Partition
    l: Partition
    j: Partition
    h: Partition
    j_leq: frozenset[tuple[int, int]]

    def j_class_of(self, i: int) -> int:
        return self.j.block_of[i]

    def j_classes(self) -> list[list[int]]:
        return self.j.blocks()

    def j_below(self, ja: int, jb: int) -> bool:
        return (ja, jb) in self.j_leq

    def j_covers(self, ja: int, jb: int) -> bool:
        """True when class ja strictly covers class jb (nothing in between)."""
        if ja == jb or not self.j_below(jb, ja):
            return False
        for jc in range(self.j.num_blocks):
            if jc in (ja, jb):
                continue
            if self.j_below(jb, jc) and self.j_below(jc, ja):
                return False
        return True


def _compute_green(s: FiniteSemigroup) -> GreenData:
    n = s.size
    t = s.table
    everyone = range(n)

    def right_ideal(a: int) -> frozenset[int]:
        return frozenset([a]) | frozenset(t[a][x] for x in everyone)

    def left_ideal(a: int) -> frozenset[int]:
        return frozenset([a]) | frozenset(t[x][a] for x in everyone)

    rights = [right_ideal(a) for a in everyone]
    lefts = [left_ideal(a) for a in everyone]
    twosided = []
    for a in everyone:
        ideal = set(rights[a]) | set(lefts[a])
        for x in everyone:
            xa = t[x][a]
            ideal.update(t[xa][y] for y in everyone)
        twosided.append(frozenset(ideal))

    r = Partition.from_key(rights)
    l = Partition.from_key(lefts)
    j = Partition.from_key(twosided)
    h = r.meet(l)

    reps = [block[0] for block in j.blocks()]
    leq = set()
    for a_id, a in enumerate(reps):
        for b_id, b in enumerate(reps):
            if twosided[a] <= twosided[b]:
                leq.add((a_id, b_id))
    return GreenData(r=r, l=l, j=j, h=h, j_leq=frozenset(leq))


def close(
    generators: Iterable[Transformation], cap: int = DEFAULT_CAP
) -> FiniteSemigroup:
    """The transformation semigroup generated by the given maps.

    Breadth-first closure under composition; raises ClosureCapExceeded past
    ``cap`` elements.  Elements are labelled by their own Transformation.
    """
    gens = []
    seen = set()
    for g in generators:
        if g not in seen:
            seen.add(g)
            gens.append(g)
    if not gens:
        raise ValueError("no generators")
    degree = gens[0].degree
    if any(g.degree != degree for g in gens):
        raise ValueError("generator degrees differ")

    elems: list[Transformation] = list(gens)
    index = {g: i for i, g in enumerate(elems)}
    frontier = list(range(len(elems)))
    while frontier:
        fresh: list[int] = []
        for i in frontier:
            for g in gens:
                for prod in (elems[i] * g, g * elems[i]):
                    if prod not in index:
                        index[prod] = len(elems)
                        elems.append(prod)
                        fresh.append(index[prod])
                        if len(elems) > cap:
                            raise ClosureCapExceeded(
                                f"closure exceeded cap of {cap} elements"
                            )
        frontier = fresh
    return transformation_semigroup(elems)


def transformation_semigroup(maps: Sequence[Transformation]) -> FiniteSemigroup:
    """Wrap an already-closed set of maps as a table semigroup.

    Raises when the set is not closed under composition.
    """
    elems = list(dict.fromkeys(maps))
    index = {m: i for i, m in enumerate(elems)}
    n = len(elems)
    table = []
    for a in elems:
        row = []
        for b in elems:
            prod = a * b
            if prod not in index:
                raise ValueError(f"not closed: {a!r} * {b!r} is missing")
            row.append(index[prod])
        table.append(row)
    identity = None
    zero = None
    for i in range(n):
        if all(table[i][x] == x and table[x][i] == x for x in range(n)):
            identity = i
        if all(table[i][x] == i and table[x][i] == i for x in range(n)):
            zero = i
    return FiniteSemigroup(elems, table, zero=zero, identity=identity, carrier=elems)


def green(s: FiniteSemigroup) -> GreenData:
    """Green's relations of the semigroup (cached on the semigroup)."""
    return s.green()


def _is_regular_element(s: FiniteSemigroup, a: int) -> bool:
    t = s.table
    return any(t[t[a][b]][a] == a for b in range(s.size))


def regular_jclasses(s: FiniteSemigroup) -> dict[int, int | None]:
    """Map each J-class id to an idempotent witness, or None when irregular.

    A J-class is regular exactly when it holds an idempotent; this is
    cross-checked against element-wise regularity (some b with aba = a).
    """
    gd = s.green()
    witness: dict[int, int | None] = {jc: None for jc in range(gd.j.num_blocks)}
    for e in s.idempotents():
        jc = gd.j_class_of(e)
        if witness[jc] is None:
            witness[jc] = e
    for a in range(s.size):
        flagged = witness[gd.j_class_of(a)] is not None
        assert flagged == _is_regular_element(s, a), (
            "regularity mismatch between idempotent witness and element test"
        )
    return witness


def principal_factor(s: FiniteSemigroup, j_class: int) -> FiniteSemigroup:
    """The J-class with a fresh zero adjoined; products leaving the class go to 0."""
    gd = s.green()
    members = [i for i in range(s.size) if gd.j_class_of(i) == j_class]
    if not members:
        raise ValueError(f"no such J-class: {j_class}")
    pos = {m: k for k, m in enumerate(members)}
    zero = len(members)
    labels = [s.labels[m] for m in members] + ["0"]
    size = zero + 1
    table = [[zero] * size for _ in range(size)]
    for a in members:
        for b in members:
            ab = s.table[a][b]
            if ab in pos:
                table[pos[a]][pos[b]] = pos[ab]
    return FiniteSemigroup(labels, table, zero=zero)


def is_completely_0_simple(s: FiniteSemigroup) -> bool:
    """Zero present, at least one non-zero element, every non-zero element
    generates S as a two-sided ideal, and the semigroup is regular."""
    if s.zero is None or s.size < 2:
        return False
    z = s.zero
    n = s.size
    t = s.table
    full = frozenset(range(n))
    for a in range(n):
        if a == z:
            continue
        if not _is_regular_element(s, a):
            return False
        ideal = {a, z}
        ideal.update(t[a][x] for x in range(n))
        ideal.update(t[x][a] for x in range(n))
        for x in range(n):
            xa = t[x][a]
            ideal.update(t[xa][y] for y in range(n))
        if frozenset(ideal) != full:
            return False
    return True


def _element_profile(s: FiniteSemigroup, gd: GreenData, a: int):
    # isomorphism-invariant fingerprint: cyclic index/period plus class sizes
    seen = {a: 0}
    cur = a
    k = 0
    while True:
        cur = s.table[cur][a]
        k += 1
        if cur in seen:
            index, period = seen[cur], k - seen[cur]
            break
        seen[cur] = k
    r_sizes = [0] * gd.r.num_blocks
    l_sizes = [0] * gd.l.num_blocks
    h_sizes = [0] * gd.h.num_blocks
    j_sizes = [0] * gd.j.num_blocks
    for x in range(s.size):
        r_sizes[gd.r.block_of[x]] += 1
        l_sizes[gd.l.block_of[x]] += 1
        h_sizes[gd.h.block_of[x]] += 1
        j_sizes[gd.j.block_of[x]] += 1
    return (
        s.is_idempotent(a),
        index,
        period,
        r_sizes[gd.r.block_of[a]],
        l_sizes[gd.l.block_of[a]],
        h_sizes[gd.h.block_of[a]],
        j_sizes[gd.j.block_of[a]],
        a == s.zero,
        a == s.identity,
    )


def _generating_sequence(s: FiniteSemigroup) -> list[int]:
    """A greedy small generating list: skip anything already generated."""
    gens: list[int] = []
    generated: set[int] = set()
    for a in range(s.size):
        if a in generated:
            continue
        gens.append(a)
        # regrow the closure of the chosen generators
        generated = set(gens)
        frontier = list(generated)
        while frontier:
            fresh = []
            for x in frontier:
                for g in gens:
                    for p in (s.table[x][g], s.table[g][x]):
                        if p not in generated:
                            generated.add(p)
                            fresh.append(p)
            frontier = fresh
    return gens


def brute_isomorphic(s: FiniteSemigroup, t: FiniteSemigroup) -> dict[int, int] | None:
    """Search for a semigroup isomorphism; returns an element map or None.

    Backtracks over images of a greedy generating sequence, pruning by
    element profiles, and grows the rest of the map by closure.
    """
    if s.size != t.size:
        return None
    gs, gt = s.green(), t.green()
    prof_s = [_element_profile(s, gs, a) for a in range(s.size)]
    prof_t = [_element_profile(t, gt, a) for a in range(t.size)]
    if sorted(prof_s) != sorted(prof_t):
        return None
    gens = _generating_sequence(s)
    candidates = [
        [b for b in range(t.size) if prof_t[b] == prof_s[g]] for g in gens
    ]

    def extend(mapping: dict[int, int]) -> dict[int, int] | None:
        """Close the partial generator map under products; None on conflict."""
        mapping = dict(mapping)
        frontier = list(mapping)
        while frontier:
            fresh = []
            for a in frontier:
                for g in list(mapping):
                    for x, y in ((a, g), (g, a)):
                        p = s.table[x][y]
                        q = t.table[mapping[x]][mapping[y]]
                        if p in mapping:
                            if mapping[p] != q:
                                return None
                        else:
                            mapping[p] = q
                            fresh.append(p)
            frontier = fresh
        return mapping

    def search(k: int, mapping: dict[int, int]) -> dict[int, int] | None:
        if k == len(gens):
            if len(mapping) != s.size or len(set(mapping.values())) != s.size:
                return None
            return mapping
        g = gens[k]
        if g in mapping:
            return search(k + 1, mapping)
        used = set(mapping.values())
        for b in candidates[k]:
            if b in used:
                continue
            grown = extend({**mapping, g: b})
            if grown is None:
                continue
            if len(set(grown.values())) != len(grown):
                continue
            result = search(k + 1, grown)
            if result is not None:
                return result
        return None

    return search(0, {})
