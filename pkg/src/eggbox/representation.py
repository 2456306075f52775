"""Representations: indexed families of transformations with partial products.

A Representation binds abstract elements (arbitrary hashable labels) to
transformations of a finite carrier.  The ``products`` dict is a partial
multiplication on the element family: when (i, j) is present, the bound map
of the result must equal the composite of the bound maps.  Absent pairs are
the "falls outside the family" case.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field

from .semigroup import FiniteSemigroup, transformation_semigroup
from .transform import Partition, Transformation


class Representation:
    __slots__ = ("carrier", "labels", "maps", "products", "_index")

    def __init__(
        self,
        labels: Sequence,
        maps: Sequence[Transformation],
        products: dict[tuple[int, int], int] | None = None,
        carrier: int | None = None,
    ):
        self.labels = tuple(labels)
        self.maps = tuple(maps)
        if len(self.labels) != len(self.maps):
            raise ValueError("labels and maps differ in length")
        if not self.maps:
            raise ValueError("empty representation")
        self.carrier = carrier if carrier is not None else self.maps[0].degree
        for m in self.maps:
            if m.degree != self.carrier:
                raise ValueError("map degree differs from carrier")
        self.products = dict(products) if products else {}
        for (i, j), k in self.products.items():
            if not (0 <= i < self.size and 0 <= j < self.size and 0 <= k < self.size):
                raise ValueError("product index out of range")
        self._index = {lab: i for i, lab in enumerate(self.labels)}

    @property
    def size(self) -> int:
        return len(self.labels)

    def bound(self, i: int) -> Transformation:
        return self.maps[i]

    def product(self, i: int, j: int) -> int | None:
        return self.products.get((i, j))

    def index_of(self, label) -> int:
        return self._index[label]

    def is_faithful(self) -> bool:
        return len(set(self.maps)) == self.size

    def __repr__(self) -> str:
        return f"Representation(carrier={self.carrier}, size={self.size})"


@dataclass(frozen=True)
class ValidationReport:
    valid: bool
    faithful: bool
    violations: tuple[tuple[int, int], ...] = field(default_factory=tuple)


def validate_representation(rep: Representation) -> ValidationReport:
    """Check every defined product against composition of the bound maps."""
    bad = []
    for (i, j), k in rep.products.items():
        if rep.maps[i] * rep.maps[j] != rep.maps[k]:
            bad.append((i, j))
    return ValidationReport(
        valid=not bad, faithful=rep.is_faithful(), violations=tuple(bad)
    )


def expand_constants(rep: Representation) -> Representation:
    """Adjoin every constant map of the carrier not already bound.

    Products are extended by absorption: c * s = c and s * c = c' where c'
    is the constant at s(point).  Expanding twice changes nothing.
    """
    bound_constants = {
        m.images[0]: i for i, m in enumerate(rep.maps) if m.is_constant()
    }
    labels = list(rep.labels)
    maps = list(rep.maps)
    const_at: dict[int, int] = dict(bound_constants)
    for p in range(rep.carrier):
        if p not in const_at:
            const_at[p] = len(labels)
            labels.append(("const", p))
            maps.append(Transformation.constant(rep.carrier, p))
    products = dict(rep.products)
    n = len(labels)
    for i in range(n):
        mi = maps[i]
        for j in range(n):
            if (i, j) in products:
                continue
            if mi.is_constant():
                products[(i, j)] = i
            elif maps[j].is_constant():
                products[(i, j)] = const_at[mi(maps[j].images[0])]
    return Representation(labels, maps, products, carrier=rep.carrier)


def max_deflation(rep: Representation) -> Partition:
    """The coarsest partition whose blocks every element maps to single points.

    Two points are together exactly when every element sends them to equal
    images; this contains every other such partition.
    """
    sigs = [tuple(m(p) for m in rep.maps) for p in range(rep.carrier)]
    return Partition.from_key(sigs)


def congruence_generated(
    rep: Representation, pairs: Iterable[tuple[int, int]]
) -> Partition:
    """Smallest compatible equivalence containing the pairs.

    Single pass: close the pair set under one application of every element
    (plus the identity), then take the generated equivalence.  Correct when
    the element family is composition-closed, which holds for semigroup
    representations; for arbitrary families use a fixpoint instead.
    """
    want = list(pairs)
    grown = list(want)
    for c, d in want:
        for m in rep.maps:
            grown.append((m(c), m(d)))
    return Partition.from_pairs(grown, rep.carrier)


def is_compatible(rep: Representation, part: Partition) -> bool:
    """Does every element map each block into a single block?"""
    for m in rep.maps:
        for block in part.blocks():
            first = part.block_of[m(block[0])]
            if any(part.block_of[m(p)] != first for p in block[1:]):
                return False
    return True


def is_primitive_bruteforce(rep: Representation) -> tuple[bool, Partition | None]:
    """Primitive when no point pair generates a proper compatible equivalence.

    Carriers of size at most 2 are always primitive.
    """
    n = rep.carrier
    if n <= 2:
        return True, None
    for a in range(n):
        for b in range(a + 1, n):
            cong = congruence_generated(rep, [(a, b)])
            if not cong.is_universal():
                return False, cong
    return True, None


@dataclass(frozen=True)
class MinimalStructure:
    """Minimal non-singleton images, the elements realizing them, and the
    equivalence generated by squares of the minimal sets."""

    minimal_sets: tuple[frozenset[int], ...]
    minimal_functions: tuple[int, ...]
    rho: Partition


def minimal_structure(rep: Representation) -> MinimalStructure:
    images = {}
    for i, m in enumerate(rep.maps):
        im = frozenset(m.images)
        if len(im) >= 2:
            images.setdefault(im, []).append(i)
    minimal = [
        im for im in images if not any(other < im for other in images)
    ]
    minimal.sort(key=sorted)
    funcs = sorted(i for im in minimal for i in images[im])
    pairs = []
    for im in minimal:
        pts = sorted(im)
        pairs.extend(zip(pts, pts[1:]))
    rho = Partition.from_pairs(pairs, rep.carrier)
    return MinimalStructure(
        minimal_sets=tuple(minimal), minimal_functions=tuple(funcs), rho=rho
    )


def restrict(rep: Representation, points: Sequence[int]) -> Representation:
    """The induced representation on a sub-carrier closed under every map."""
    pts = list(points)
    maps = [m.restrict_to(pts) for m in rep.maps]
    return Representation(rep.labels, maps, rep.products, carrier=len(pts))


def semigroup_rep(s: FiniteSemigroup) -> Representation:
    """View a transformation semigroup as a (total) representation."""
    if s.carrier is None:
        raise ValueError("semigroup has no carrier of transformations")
    products = {(i, j): s.table[i][j] for i in range(s.size) for j in range(s.size)}
    return Representation(s.labels, s.carrier, products)


def rep_semigroup(rep: Representation) -> FiniteSemigroup:
    """The transformation semigroup of the distinct bound maps (must be closed)."""
    return transformation_semigroup(list(dict.fromkeys(rep.maps)))


def abstract_semigroup(rep: Representation) -> FiniteSemigroup:
    """The labeled element family as an abstract semigroup.

    Requires every pairwise product to be defined; distinct labels stay
    distinct even when their bound maps coincide.
    """
    n = rep.size
    table = []
    for i in range(n):
        row = []
        for j in range(n):
            k = rep.product(i, j)
            if k is None:
                raise ValueError("product table is partial; cannot form a semigroup")
            row.append(k)
        table.append(row)
    labels = [_label_str(lab) for lab in rep.labels]
    s = FiniteSemigroup(labels, table, carrier=rep.maps)
    s.validate()
    return s


def _label_str(label) -> str:
    if isinstance(label, str):
        return label
    if isinstance(label, tuple):
        return "(" + ",".join(_label_str(p) for p in label) + ")"
    return str(label)


def check_equivalence(
    rep1: Representation,
    rep2: Representation,
    point_map: Sequence[int],
    elem_map: Sequence[int],
) -> bool:
    """Verify an equivalence of representations via the action condition.

    Requires both maps bijective and beta(s(y)) = beta(s)(beta(y)) for every
    element s and point y; with one side faithful this single condition
    already forces product preservation.
    """
    if sorted(point_map) != list(range(rep2.carrier)):
        return False
    if sorted(elem_map) != list(range(rep2.size)):
        return False
    if rep1.carrier != rep2.carrier or rep1.size != rep2.size:
        return False
    if not (rep1.is_faithful() or rep2.is_faithful()):
        raise ValueError("equivalence check needs a faithful side")
    for s in range(rep1.size):
        m1 = rep1.maps[s]
        m2 = rep2.maps[elem_map[s]]
        for y in range(rep1.carrier):
            if point_map[m1(y)] != m2(point_map[y]):
                return False
    return True


def find_equivalence(
    rep1: Representation, rep2: Representation
) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """Search for an equivalence (point bijection + element bijection).

    Requires rep2 faithful so each conjugated map determines its image
    element.  Backtracks over point images with partial-conjugation pruning.
    """
    if rep1.carrier != rep2.carrier or rep1.size != rep2.size:
        return None
    if not rep2.is_faithful():
        raise ValueError("target representation must be faithful")
    n = rep1.carrier
    lookup = {m: i for i, m in enumerate(rep2.maps)}
    beta = [-1] * n
    used = [False] * n

    def compatible(m1: Transformation) -> bool:
        for m2 in rep2.maps:
            ok = True
            for y, by in enumerate(beta):
                if by < 0:
                    continue
                bimg = beta[m1(y)]
                if bimg >= 0 and m2(by) != bimg:
                    ok = False
                    break
            if ok:
                return True
        return False

    def place(y: int):
        if y == n:
            bt = Transformation(beta)
            bt_inv = bt.inverse()
            elem_map = []
            for m1 in rep1.maps:
                conj = bt * m1 * bt_inv
                if conj not in lookup:
                    return None
                elem_map.append(lookup[conj])
            if len(set(elem_map)) != rep1.size:
                return None
            return tuple(beta), tuple(elem_map)
        for t in range(n):
            if used[t]:
                continue
            beta[y] = t
            used[t] = True
            if all(compatible(m) for m in rep1.maps):
                result = place(y + 1)
                if result is not None:
                    return result
            beta[y] = -1
            used[t] = False
        return None

    return place(0)
