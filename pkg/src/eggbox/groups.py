"""Abstract finite groups by multiplication table.

Used as the coefficient group of sandwich matrices.  Element 0..order-1,
identity and inverses precomputed and validated.
"""

from __future__ import annotations

from collections.abc import Iterator, Sequence


class FiniteGroup:
    __slots__ = ("table", "identity", "inverse")

    def __init__(self, table: Sequence[Sequence[int]]):
        self.table = tuple(tuple(row) for row in table)
        n = len(self.table)
        if any(len(row) != n for row in self.table):
            raise ValueError("table not square")
        ident = None
        for e in range(n):
            if all(self.table[e][x] == x and self.table[x][e] == x for x in range(n)):
                ident = e
                break
        if ident is None:
            raise ValueError("no identity element")
        self.identity = ident
        inv = [None] * n
        for a in range(n):
            for b in range(n):
                if self.table[a][b] == ident and self.table[b][a] == ident:
                    inv[a] = b
                    break
            if inv[a] is None:
                raise ValueError(f"element {a} has no inverse")
        self.inverse = tuple(inv)
        t = self.table
        for a in range(n):
            for b in range(n):
                ab = t[a][b]
                for c in range(n):
                    if t[ab][c] != t[a][t[b][c]]:
                        raise ValueError("not associative")

    @property
    def order(self) -> int:
        return len(self.table)

    def mult(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    @classmethod
    def trivial(cls) -> "FiniteGroup":
        return cls([[0]])

    @classmethod
    def cyclic(cls, n: int) -> "FiniteGroup":
        return cls([[(a + b) % n for b in range(n)] for a in range(n)])

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FiniteGroup) and self.table == other.table

    def __hash__(self) -> int:
        return hash(self.table)

    def __repr__(self) -> str:
        return f"FiniteGroup(order={self.order})"


def _group_generating_sequence(g: FiniteGroup) -> list[int]:
    gens: list[int] = []
    generated = {g.identity}
    for a in range(g.order):
        if a in generated:
            continue
        gens.append(a)
        frontier = list(generated | {a})
        generated.add(a)
        while frontier:
            fresh = []
            for x in frontier:
                for y in list(generated):
                    for p in (g.table[x][y], g.table[y][x]):
                        if p not in generated:
                            generated.add(p)
                            fresh.append(p)
            frontier = fresh
    return gens


def group_isomorphisms(g: FiniteGroup, h: FiniteGroup) -> Iterator[tuple[int, ...]]:
    """All isomorphisms g -> h, each as an image tuple indexed by g's elements."""
    if g.order != h.order:
        return
    n = g.order

    def elem_order(grp: FiniteGroup, a: int) -> int:
        k, cur = 1, a
        while cur != grp.identity:
            cur = grp.table[cur][a]
            k += 1
        return k

    go = [elem_order(g, a) for a in range(n)]
    ho = [elem_order(h, a) for a in range(n)]
    if sorted(go) != sorted(ho):
        return
    gens = _group_generating_sequence(g)
    if not gens:  # trivial group
        yield (h.identity,)
        return

    def extend(mapping: dict[int, int]) -> dict[int, int] | None:
        mapping = dict(mapping)
        mapping[g.identity] = h.identity
        frontier = list(mapping)
        while frontier:
            fresh = []
            for a in frontier:
                for b in list(mapping):
                    for x, y in ((a, b), (b, a)):
                        p = g.table[x][y]
                        q = h.table[mapping[x]][mapping[y]]
                        if p in mapping:
                            if mapping[p] != q:
                                return None
                        else:
                            mapping[p] = q
                            fresh.append(p)
            frontier = fresh
        return mapping

    def search(k: int, mapping: dict[int, int]) -> Iterator[dict[int, int]]:
        if k == len(gens):
            if len(mapping) == n and len(set(mapping.values())) == n:
                yield mapping
            return
        a = gens[k]
        if a in mapping:
            yield from search(k + 1, mapping)
            return
        used = set(mapping.values())
        for b in range(n):
            if b in used or ho[b] != go[a]:
                continue
            grown = extend({**mapping, a: b})
            if grown is None or len(set(grown.values())) != len(grown):
                continue
            yield from search(k + 1, grown)

    for mapping in search(0, {g.identity: h.identity}):
        yield tuple(mapping[a] for a in range(n))
