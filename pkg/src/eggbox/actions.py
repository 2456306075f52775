"""Faithful permutation group actions on a finite point set.

A GroupAction stores the full (closed) set of permutations; the group
structure is composition of maps.  Primitivity is decided by congruence
closure of point pairs, never by block-system shortcuts.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Iterator, Sequence

from .groups import FiniteGroup
from .semigroup import close
from .transform import Partition, Transformation

ACTION_EQUIV_CAP = 5040


class GroupAction:
    __slots__ = ("degree", "perms", "generators", "identity_index", "_index", "_abstract")

    def __init__(
        self,
        perms: Iterable[Transformation],
        generators: Sequence[Transformation] | None = None,
    ):
        elems = sorted(dict.fromkeys(perms))
        if not elems:
            raise ValueError("empty action")
        self.degree = elems[0].degree
        for p in elems:
            if p.degree != self.degree:
                raise ValueError("mixed degrees")
            if not p.is_permutation():
                raise ValueError(f"not a permutation: {p!r}")
        index = {p: i for i, p in enumerate(elems)}
        for a in elems:  # closure check; identity/inverses follow by finiteness
            for b in elems:
                if a * b not in index:
                    raise ValueError("permutation set is not closed")
        ident = Transformation.identity(self.degree)
        if ident not in index:
            raise ValueError("identity missing")
        self.perms = tuple(elems)
        self.identity_index = index[ident]
        self._index = index
        self.generators = tuple(generators) if generators is not None else self.perms
        self._abstract = None

    @classmethod
    def from_generators(cls, gens: Iterable[Transformation]) -> "GroupAction":
        gens = list(gens)
        closed = close(gens)
        return cls(closed.labels, generators=gens)

    @classmethod
    def symmetric(cls, n: int) -> "GroupAction":
        return cls(Transformation(p) for p in itertools.permutations(range(n)))

    @classmethod
    def trivial(cls, n: int) -> "GroupAction":
        return cls([Transformation.identity(n)])

    @property
    def order(self) -> int:
        return len(self.perms)

    def index_of(self, perm: Transformation) -> int:
        return self._index[perm]

    def contains(self, perm: Transformation) -> bool:
        return perm in self._index

    def mult(self, i: int, j: int) -> int:
        return self._index[self.perms[i] * self.perms[j]]

    def inv(self, i: int) -> int:
        return self._index[self.perms[i].inverse()]

    def orbit(self, x: int) -> frozenset[int]:
        return frozenset(p(x) for p in self.perms)

    def orbits(self) -> Partition:
        return Partition.from_pairs(
            [(x, p(x)) for x in range(self.degree) for p in self.generators],
            self.degree,
        )

    def abstract_group(self) -> FiniteGroup:
        """The multiplication table of the permutations, element i = perms[i]."""
        if self._abstract is None:
            self._abstract = FiniteGroup(
                [[self.mult(i, j) for j in range(self.order)] for i in range(self.order)]
            )
        return self._abstract

    def __eq__(self, other: object) -> bool:
        return isinstance(other, GroupAction) and self.perms == other.perms

    def __hash__(self) -> int:
        return hash(self.perms)

    def __repr__(self) -> str:
        return f"GroupAction(degree={self.degree}, order={self.order})"


def is_transitive(action: GroupAction) -> bool:
    return len(action.orbit(0)) == action.degree


def transitivity_class(action: GroupAction, seeds: Iterable[int]) -> frozenset[int]:
    """Union of the orbits of the seed points."""
    out: set[int] = set()
    for x in seeds:
        out |= action.orbit(x)
    return frozenset(out)


def _pair_congruence(
    maps: Sequence[Transformation], degree: int, a: int, b: int
) -> Partition:
    """Smallest equivalence containing (a,b) and compatible with every map."""
    parent = list(range(degree))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    queue = [(a, b)]
    while queue:
        x, y = queue.pop()
        rx, ry = find(x), find(y)
        if rx == ry:
            continue
        parent[ry] = rx
        for g in maps:
            queue.append((g(x), g(y)))
    return Partition(find(p) for p in range(degree))


def is_primitive_group(action: GroupAction) -> tuple[bool, Partition | None]:
    """Decide primitivity; on failure return a compatible non-trivial witness.

    Any carrier of size at most 2 counts as primitive.  Otherwise the
    congruence generated by each point pair must be universal.
    """
    n = action.degree
    if n <= 2:
        return True, None
    for a in range(n):
        for b in range(a + 1, n):
            cong = _pair_congruence(action.generators, n, a, b)
            if not cong.is_universal():
                return False, cong
    return True, None


def action_equivalences(
    a: GroupAction, b: GroupAction
) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    """All equivalences (point bijection, group bijection) from a to b.

    A point bijection beta induces the group map g -> beta g beta^-1; the
    pair qualifies when conjugation carries a's permutations onto b's.
    """
    if a.degree != b.degree or a.order != b.order:
        return
    if a.order > ACTION_EQUIV_CAP:
        raise ValueError(f"group order above cap {ACTION_EQUIV_CAP}")
    n = a.degree
    gens = a.generators

    def conj_candidates(beta: list[int], g: Transformation) -> bool:
        # partial conjugate of g must extend to some permutation of b
        for h in b.perms:
            ok = True
            for x, bx in enumerate(beta):
                if bx < 0:
                    continue
                bg = beta[g(x)]
                if bg >= 0 and h(bx) != bg:
                    ok = False
                    break
            if ok:
                return True
        return False

    beta = [-1] * n
    used = [False] * n

    def place(x: int) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
        if x == n:
            bt = Transformation(beta)
            bt_inv = bt.inverse()
            group_map = []
            for g in a.perms:
                cg = bt * g * bt_inv
                if not b.contains(cg):
                    return
                group_map.append(b.index_of(cg))
            if len(set(group_map)) == a.order:
                yield tuple(beta), tuple(group_map)
            return
        for y in range(n):
            if used[y]:
                continue
            beta[x] = y
            used[y] = True
            if all(conj_candidates(beta, g) for g in gens):
                yield from place(x + 1)
            beta[x] = -1
            used[y] = False

    yield from place(0)


def action_equivalence(
    a: GroupAction, b: GroupAction
) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """First equivalence between two actions, or None."""
    for pair in action_equivalences(a, b):
        return pair
    return None
