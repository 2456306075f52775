"""Matrices over a group action with non-permutation entries, and the
monomial vector actions they induce.

A matrix P is m x n over an action (X; G); each entry is a permutation from
G, a constant of X, or a general non-permutation map ("c-ramified" when no
general maps occur).  Rows are indexed by lam, columns by r.  The monomial
vectors are pairs r_x = (column, point); a triple [r, g, lam] sends i_x to
r_{g(P(lam, i)(x))}.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from typing import NamedTuple

from .actions import GroupAction, action_equivalences, transitivity_class
from .groups import group_isomorphisms
from .rees import SandwichMatrix
from .representation import Representation
from .transform import Partition, Transformation

ENUM_CAP = 100_000

PERM = "perm"
CONST = "const"
MAP = "map"


class MatrixEntry:
    """One matrix cell: its kind, realized map on X, and kind-specific data."""

    __slots__ = ("kind", "fn", "point", "perm")

    def __init__(self, kind: str, fn: Transformation, point=None, perm=None):
        self.kind = kind
        self.fn = fn
        self.point = point
        self.perm = perm

    def __eq__(self, other):
        return (
            isinstance(other, MatrixEntry)
            and self.kind == other.kind
            and self.fn == other.fn
        )

    def __hash__(self):
        return hash((self.kind, self.fn))

    def __repr__(self):
        if self.kind == PERM:
            return f"perm{list(self.fn.images)}"
        if self.kind == CONST:
            return f"const({self.point})"
        return f"map{list(self.fn.images)}"


class RamifiedMatrix:
    __slots__ = ("action", "rows", "cols", "entries")

    def __init__(self, action: GroupAction, entries: Sequence[Sequence[MatrixEntry]]):
        self.action = action
        self.entries = tuple(tuple(row) for row in entries)
        self.rows = len(self.entries)
        if self.rows == 0:
            raise ValueError("no rows")
        self.cols = len(self.entries[0])
        if any(len(row) != self.cols for row in self.entries):
            raise ValueError("ragged rows")
        for row in self.entries:
            for ent in row:
                if ent.fn.degree != action.degree:
                    raise ValueError("entry degree differs from action degree")
                if ent.kind == PERM and not action.contains(ent.fn):
                    raise ValueError("perm entry not in the action group")
                if ent.kind != PERM and action.contains(ent.fn):
                    raise ValueError("non-perm entry is a group permutation")
                if ent.kind == CONST and not ent.fn.is_constant():
                    raise ValueError("const entry with non-constant map")
                if ent.kind == MAP and ent.fn.is_constant():
                    raise ValueError("constant map filed as a general map entry")

    @classmethod
    def from_grid(cls, action: GroupAction, grid) -> "RamifiedMatrix":
        """Build from a grid of ('perm', g_index) | ('const', x) | ('map', images)."""
        entries = []
        for row in grid:
            out = []
            for cell in row:
                tag, val = cell
                if tag == PERM:
                    out.append(perm_entry(action, val))
                elif tag == CONST:
                    out.append(const_entry(action, val))
                else:
                    out.append(map_entry(action, Transformation(val)))
            entries.append(out)
        return cls(action, entries)

    def entry(self, lam: int, r: int) -> MatrixEntry:
        return self.entries[lam][r]

    @property
    def degree(self) -> int:
        return self.action.degree

    def is_c_ramified(self) -> bool:
        return all(
            ent.kind != MAP for row in self.entries for ent in row
        )

    def is_regular(self) -> bool:
        """Every row and column carries at least one group entry."""
        if any(all(e.kind != PERM for e in row) for row in self.entries):
            return False
        return all(
            any(self.entries[lam][r].kind == PERM for lam in range(self.rows))
            for r in range(self.cols)
        )

    def __eq__(self, other):
        return (
            isinstance(other, RamifiedMatrix)
            and self.action == other.action
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.action, self.entries))

    def __repr__(self):
        return f"RamifiedMatrix({self.rows}x{self.cols}, degree={self.degree})"


def perm_entry(action: GroupAction, g) -> MatrixEntry:
    if isinstance(g, Transformation):
        g = action.index_of(g)
    return MatrixEntry(PERM, action.perms[g], perm=g)


def const_entry(action: GroupAction, x: int) -> MatrixEntry:
    if not (0 <= x < action.degree):
        raise ValueError("constant out of range")
    return MatrixEntry(CONST, Transformation.constant(action.degree, x), point=x)


def map_entry(action: GroupAction, t: Transformation) -> MatrixEntry:
    """General non-permutation entry; constants are normalized to const."""
    if action.contains(t):
        raise ValueError("map entry lies in the group; use a perm entry")
    if t.is_constant():
        return const_entry(action, t.images[0])
    return MatrixEntry(MAP, t)


class MonomialTriple(NamedTuple):
    col: int
    g: int
    row: int


class VectorElement(NamedTuple):
    col: int
    point: int


class ConstantOutcome(NamedTuple):
    col: int
    point: int


class MapOutcome(NamedTuple):
    col: int
    fn: Transformation
    row: int


def triples(p: RamifiedMatrix) -> list[MonomialTriple]:
    return [
        MonomialTriple(r, g, lam)
        for r in range(p.cols)
        for g in range(p.action.order)
        for lam in range(p.rows)
    ]


def vectors(p: RamifiedMatrix) -> list[VectorElement]:
    return [
        VectorElement(i, x) for i in range(p.cols) for x in range(p.degree)
    ]


def vec_index(p: RamifiedMatrix, col: int, x: int) -> int:
    return col * p.degree + x


def act_triple(p: RamifiedMatrix, t: MonomialTriple, v: VectorElement) -> VectorElement:
    r, g, lam = t
    i, x = v
    return VectorElement(r, p.action.perms[g](p.entry(lam, i).fn(x)))


def act_triple_on_state(
    p: RamifiedMatrix, t: MonomialTriple, state: Sequence[VectorElement]
) -> VectorElement:
    """Apply a triple to an m-component initial state (one vector per row):
    [r, g, lam] reads the lam-th component."""
    if len(state) != p.rows:
        raise ValueError("state must have one component per row")
    r, g, lam = t
    i, x = state[lam]
    return VectorElement(r, p.action.perms[g](p.entry(lam, i).fn(x)))


def theta(p: RamifiedMatrix) -> Partition:
    """Vectors fused when every row entry treats them identically.

    (r_x, s_y) fall together exactly when P(lam, r)(x) = P(lam, s)(y) for
    every row lam; this is the largest partition whose classes all triples
    collapse to single outputs.
    """
    sigs = [
        tuple(p.entry(lam, i).fn(x) for lam in range(p.rows))
        for i in range(p.cols)
        for x in range(p.degree)
    ]
    return Partition.from_key(sigs)


def compose_triples(p: RamifiedMatrix, t1: MonomialTriple, t2: MonomialTriple):
    """Product of two triples acting on the vectors (left acts second).

    Through a group entry the result is a triple; through a constant it
    collapses to a constant outcome; through a general map it is a
    map outcome carrying the composite middle function.
    """
    r, g, a = t1
    s, h, b = t2
    mid = p.entry(a, s)
    act = p.action
    if mid.kind == PERM:
        return MonomialTriple(r, act.mult(act.mult(g, mid.perm), h), b)
    if mid.kind == CONST:
        return ConstantOutcome(r, act.perms[g](mid.point))
    # perm o non-constant map o perm is again a non-constant non-permutation
    return MapOutcome(r, act.perms[g] * mid.fn * act.perms[h], b)


def skeleton(p: RamifiedMatrix) -> SandwichMatrix:
    """The sandwich matrix over the action's abstract group: group entries
    keep their index, everything else becomes the zero."""
    grp = p.action.abstract_group()
    entries = [
        [
            (p.entry(lam, r).perm if p.entry(lam, r).kind == PERM else None)
            for r in range(p.cols)
        ]
        for lam in range(p.rows)
    ]
    return SandwichMatrix(grp, entries)


@dataclass(frozen=True)
class ColumnGraph:
    """Columns joined when some vectors of theirs are fused."""

    cols: int
    edges: tuple[tuple[int, int], ...]
    connected: bool
    components: Partition


def graph(p: RamifiedMatrix) -> ColumnGraph:
    """Edge (r, s) exactly when some r-vector and s-vector share a
    theta-class, i.e. the row equations P(lam,r)(x) = P(lam,s)(y) have a
    simultaneous solution."""
    th = theta(p)
    cols_of_block: dict[int, set[int]] = {}
    for i in range(p.cols):
        for x in range(p.degree):
            cols_of_block.setdefault(
                th.block_of[vec_index(p, i, x)], set()
            ).add(i)
    edges = set()
    for cols in cols_of_block.values():
        group = sorted(cols)
        for a in range(len(group)):
            for b in range(a + 1, len(group)):
                edges.add((group[a], group[b]))
    comp = Partition.from_pairs(sorted(edges), p.cols)
    return ColumnGraph(
        cols=p.cols,
        edges=tuple(sorted(edges)),
        connected=comp.is_universal(),
        components=comp,
    )


@dataclass(frozen=True)
class Reductivity:
    """No two rows (right) or columns (left) are group-proportional."""

    right: bool
    left: bool
    right_witness: tuple[int, int, int] | None = None  # (row a, row b, g)
    left_witness: tuple[int, int, int] | None = None  # (col r, col s, h)


def reductivity(p: RamifiedMatrix) -> Reductivity:
    act = p.action
    right_w = None
    for a in range(p.rows):
        for b in range(p.rows):
            if a == b:
                continue
            for g in range(act.order):
                pg = act.perms[g]
                if all(
                    pg * p.entry(a, i).fn == p.entry(b, i).fn for i in range(p.cols)
                ):
                    right_w = (a, b, g)
                    break
            if right_w:
                break
        if right_w:
            break
    left_w = None
    for r in range(p.cols):
        for s in range(p.cols):
            if r == s:
                continue
            for h in range(act.order):
                ph = act.perms[h]
                if all(
                    p.entry(lam, r).fn * ph == p.entry(lam, s).fn
                    for lam in range(p.rows)
                ):
                    left_w = (r, s, h)
                    break
            if left_w:
                break
        if left_w:
            break
    return Reductivity(
        right=right_w is None,
        left=left_w is None,
        right_witness=right_w,
        left_witness=left_w,
    )


def _class_map(p: RamifiedMatrix, alpha: Partition):
    deg = p.degree

    def cls(col: int, x: int) -> int:
        return alpha.block_of[col * deg + x]

    return cls


def _check_alpha(p: RamifiedMatrix, alpha: Partition | None) -> Partition:
    nvec = p.cols * p.degree
    if alpha is None:
        return Partition.diagonal(nvec)
    if alpha.degree != nvec:
        raise ValueError("partition degree must match the vector count")
    if not alpha.refines(theta(p)):
        raise ValueError("partition must be a deflation (refine theta)")
    return alpha


def triple_rep(p: RamifiedMatrix, alpha: Partition | None = None) -> Representation:
    """The triples acting on vector classes; products defined only when the
    composite is again a triple."""
    alpha = _check_alpha(p, alpha)
    cls = _class_map(p, alpha)
    blocks = alpha.blocks()
    deg = p.degree
    labels = triples(p)
    maps = []
    for t in labels:
        images = []
        for block in blocks:
            outs = {
                cls(*act_triple(p, t, VectorElement(v // deg, v % deg)))
                for v in block
            }
            assert len(outs) == 1, "triple not constant on a vector class"
            images.append(outs.pop())
        maps.append(Transformation(images))
    pos = {t: k for k, t in enumerate(labels)}
    products = {}
    for a, t1 in enumerate(labels):
        for b, t2 in enumerate(labels):
            out = compose_triples(p, t1, t2)
            if isinstance(out, MonomialTriple):
                products[(a, b)] = pos[out]
    return Representation(labels, maps, products, carrier=len(blocks))


def build_action(p: RamifiedMatrix, quotient: bool = True) -> Representation:
    """The triples plus all carrier constants, closed under composition.

    quotient=True acts on the fused vector classes, otherwise on the raw
    vectors.  For a c-ramified matrix the family is already closed; general
    maps can force extra non-triple elements into the closure, which appear
    with ("xmap", ...) labels.
    """
    if not p.is_regular():
        raise ValueError("vector action needs a regular matrix")
    alpha = theta(p) if quotient else Partition.diagonal(p.cols * p.degree)
    cls = _class_map(p, alpha)
    blocks = alpha.blocks()
    deg = p.degree
    reps_vec = [(b[0] // deg, b[0] % deg) for b in blocks]
    carrier = len(blocks)

    # generalized triple: (col, middle map on X, row); bound action on classes
    def gen_bound(col: int, fn: Transformation, row: int) -> Transformation:
        images = []
        for block in blocks:
            outs = {cls(col, fn(p.entry(row, v // deg).fn(v % deg))) for v in block}
            assert len(outs) == 1, "element not constant on a vector class"
            images.append(outs.pop())
        return Transformation(images)

    def canon(col: int, fn: Transformation, row: int):
        if p.action.contains(fn):
            return MonomialTriple(col, p.action.index_of(fn), row)
        if fn.is_constant():
            return ("const", cls(col, fn.images[0]))
        return ("xmap", col, fn.images, row)

    labels: list = list(triples(p))
    middles: dict = {
        t: p.action.perms[t.g] for t in labels
    }  # label -> middle fn for generalized triples
    for c in range(carrier):
        labels.append(("const", c))
    index = {lab: i for i, lab in enumerate(labels)}

    def middle_of(label):
        return middles[label]

    def is_gen(label) -> bool:
        return isinstance(label, MonomialTriple) or (
            isinstance(label, tuple) and label and label[0] == "xmap"
        )

    def compose_labels(u, v):
        # u acts after v; returns the label of the composite
        if isinstance(u, tuple) and u[0] == "const":
            return u
        if isinstance(v, tuple) and v[0] == "const":
            col = u.col if isinstance(u, MonomialTriple) else u[1]
            row = u.row if isinstance(u, MonomialTriple) else u[3]
            fn = middle_of(u)
            # composite of generalized triple with a carrier constant
            i, x = reps_vec[v[1]]
            return ("const", cls(col, fn(p.entry(row, i).fn(x))))
        ucol = u.col if isinstance(u, MonomialTriple) else u[1]
        urow = u.row if isinstance(u, MonomialTriple) else u[3]
        vcol = v.col if isinstance(v, MonomialTriple) else v[1]
        vrow = v.row if isinstance(v, MonomialTriple) else v[3]
        mid = p.entry(urow, vcol)
        fn = middle_of(u) * mid.fn * middle_of(v)
        return canon(ucol, fn, vrow)

    # close over new xmap elements
    frontier = [lab for lab in labels if is_gen(lab)]
    while frontier:
        fresh = []
        gen_now = [lab for lab in labels if is_gen(lab)]
        for u in frontier:
            for v in gen_now:
                for a, b in ((u, v), (v, u)):
                    out = compose_labels(a, b)
                    if out not in index:
                        assert out[0] == "xmap"
                        assert not p.is_c_ramified(), (
                            "closure added elements to a c-ramified action"
                        )
                        index[out] = len(labels)
                        labels.append(out)
                        middles[out] = Transformation(out[2])
                        fresh.append(out)
        frontier = fresh

    for lab in labels:
        if isinstance(lab, tuple) and lab[0] == "xmap":
            middles[lab] = Transformation(lab[2])

    maps = []
    for lab in labels:
        if is_gen(lab):
            col = lab.col if isinstance(lab, MonomialTriple) else lab[1]
            row = lab.row if isinstance(lab, MonomialTriple) else lab[3]
            maps.append(gen_bound(col, middle_of(lab), row))
        else:
            maps.append(Transformation.constant(carrier, lab[1]))

    products = {}
    n = len(labels)
    for a in range(n):
        for b in range(n):
            products[(a, b)] = index[compose_labels(labels[a], labels[b])]
    return Representation(labels, maps, products, carrier=carrier)


def is_ramification(
    p: RamifiedMatrix, q: SandwichMatrix, embedding: Sequence[int]
) -> bool:
    """Does p refine q?  Group entries of q must appear as the embedded
    permutations, zeros as non-group entries."""
    if (p.rows, p.cols) != (q.rows, q.cols):
        return False
    emb = tuple(embedding)
    if len(emb) != q.group.order or len(set(emb)) != len(emb):
        raise ValueError("embedding must be injective on the group")
    act = p.action
    for a in range(q.group.order):
        for b in range(q.group.order):
            if act.mult(emb[a], emb[b]) != emb[q.group.mult(a, b)]:
                raise ValueError("embedding is not a homomorphism")
    for lam in range(p.rows):
        for r in range(p.cols):
            ent = p.entry(lam, r)
            qe = q.entry(lam, r)
            if qe is None:
                if ent.kind == PERM:
                    return False
            else:
                if ent.kind != PERM or ent.perm != emb[qe]:
                    return False
    return True


@dataclass(frozen=True)
class FaithfulReport:
    faithful: bool
    failures: tuple[str, ...]
    neighborhoods: tuple[frozenset[int], ...]


def faithful_ramified(p: RamifiedMatrix, alpha: Partition | None = None) -> FaithfulReport:
    """Faithfulness of the triples on the vector classes, decided
    structurally: the group must act faithfully (automatic here, since the
    group is stored as permutations of X), no two rows may be proportional,
    and the per-column class neighborhoods must be pairwise distinct."""
    alpha = _check_alpha(p, alpha)
    cls = _class_map(p, alpha)
    failures = []
    if not reductivity(p).right:
        failures.append("rows-proportional")
    hoods = []
    for r in range(p.cols):
        hoods.append(frozenset(cls(r, x) for x in range(p.degree)))
    if len(set(hoods)) != p.cols:
        failures.append("neighborhood-collision")
    return FaithfulReport(
        faithful=not failures, failures=tuple(failures), neighborhoods=tuple(hoods)
    )


def _column_constants(p: RamifiedMatrix, r: int) -> set[int]:
    return {
        p.entry(lam, r).point
        for lam in range(p.rows)
        if p.entry(lam, r).kind == CONST
    }


def _saturates(p: RamifiedMatrix, alpha: Partition, points: set[int]) -> bool:
    cls = _class_map(p, alpha)
    reached = {
        cls(r, y) for r in range(p.cols) for y in points
    }
    return len(reached) == alpha.num_blocks


def transitivity_check(p: RamifiedMatrix, alpha: Partition | None = None) -> bool:
    """One application of the triples reaches every class from every vector.

    From s_x the reachable classes are r_y with y in the orbit closure of
    the column-s constants together with x.
    """
    if not p.is_c_ramified():
        raise ValueError("transitivity check needs a c-ramified matrix")
    alpha = _check_alpha(p, alpha)
    for s in range(p.cols):
        base = _column_constants(p, s)
        for x in range(p.degree):
            pts = transitivity_class(p.action, base | {x})
            if not _saturates(p, alpha, pts):
                return False
    return True


@dataclass(frozen=True)
class CyclicityResult:
    cyclic: bool
    source: tuple | None = None  # VectorElement or the initial state tuple


def cyclicity_check(
    p: RamifiedMatrix,
    alpha: Partition | None = None,
    initial: Sequence[VectorElement] | None = None,
) -> CyclicityResult:
    """Single-application cyclicity.

    Without an initial state, search for a generating vector s_x: its column
    constants plus x must orbit-saturate every class.  With an m-component
    initial state, the reachable points are the orbits of the entry values
    the state actually feeds, one per row.
    """
    if not p.is_c_ramified():
        raise ValueError("cyclicity check needs a c-ramified matrix")
    alpha = _check_alpha(p, alpha)
    if initial is None:
        for s in range(p.cols):
            base = _column_constants(p, s)
            for x in range(p.degree):
                pts = transitivity_class(p.action, base | {x})
                if _saturates(p, alpha, pts):
                    return CyclicityResult(True, VectorElement(s, x))
        return CyclicityResult(False)
    state = [VectorElement(*v) for v in initial]
    if len(state) != p.rows:
        raise ValueError("initial state needs one vector per row")
    fed = {p.entry(lam, r).fn(x) for lam, (r, x) in enumerate(state)}
    pts = transitivity_class(p.action, fed)
    if _saturates(p, alpha, pts):
        return CyclicityResult(True, tuple(state))
    return CyclicityResult(False)


def enumerate_c_ramifications(
    q: SandwichMatrix,
    action: GroupAction,
    embedding: Sequence[int] | None = None,
    cap: int = ENUM_CAP,
) -> Iterator[RamifiedMatrix]:
    """All c-ramified matrices refining q over the action: group entries are
    fixed by the embedding, each zero runs over the constants of X."""
    if embedding is None:
        emb = next(group_isomorphisms(q.group, action.abstract_group()), None)
        if emb is None:
            raise ValueError("sandwich group does not match the action group")
    else:
        emb = tuple(embedding)
    zero_cells = [
        (lam, r)
        for lam in range(q.rows)
        for r in range(q.cols)
        if q.entry(lam, r) is None
    ]
    total = action.degree ** len(zero_cells)
    if total > cap:
        raise ValueError(f"{total} candidate matrices exceed cap {cap}")
    base = [
        [
            (None if q.entry(lam, r) is None else perm_entry(action, emb[q.entry(lam, r)]))
            for r in range(q.cols)
        ]
        for lam in range(q.rows)
    ]
    for combo in itertools.product(range(action.degree), repeat=len(zero_cells)):
        entries = [row[:] for row in base]
        for (lam, r), x in zip(zero_cells, combo):
            entries[lam][r] = const_entry(action, x)
        yield RamifiedMatrix(action, entries)


def matrices_equivalent(p: RamifiedMatrix, p2: RamifiedMatrix):
    """Search for (A, B, beta) with beta(A p B) = p2 entrywise.

    A (m x m) and B (n x n) are monomial over p's group; beta is an action
    equivalence carrying transported entries (conjugation by the point
    bijection) onto p2's entries.  Requires both matrices regular.  Returns
    (A, B, (point_map, group_map)) with A, B grids of group indices or None.
    """
    if (p.rows, p.cols) != (p2.rows, p2.cols):
        return None
    if not (p.is_regular() and p2.is_regular()):
        raise ValueError("equivalence search needs regular matrices")
    m, n = p.rows, p.cols
    act = p.action

    kinds = [[p.entry(lam, r).kind for r in range(n)] for lam in range(m)]
    kinds2 = [[p2.entry(lam, r).kind for r in range(n)] for lam in range(m)]

    for point_map, group_map in action_equivalences(act, p2.action):
        beta = Transformation(point_map)
        beta_inv = beta.inverse()
        # transported target entries, pulled back to p's side
        w = [
            [beta_inv * p2.entry(lam, r).fn * beta for r in range(n)]
            for lam in range(m)
        ]
        for sigma in itertools.permutations(range(m)):
            if any(
                sorted(kinds[sigma[lam]]) != sorted(kinds2[lam]) for lam in range(m)
            ):
                continue
            for tau in itertools.permutations(range(n)):
                if any(
                    kinds[sigma[lam]][tau[i]] != kinds2[lam][i]
                    for lam in range(m)
                    for i in range(n)
                ):
                    continue
                sol = _solve_ramified(p, w, sigma, tau)
                if sol is None:
                    continue
                a, b = sol
                amat = [[None] * m for _ in range(m)]
                for lam in range(m):
                    amat[lam][sigma[lam]] = a[lam]
                bmat = [[None] * n for _ in range(n)]
                for i in range(n):
                    bmat[tau[i]][i] = b[i]
                _verify_matrix_equivalence(p, p2, amat, bmat, point_map, group_map)
                return amat, bmat, (tuple(point_map), tuple(group_map))
    return None


def _solve_ramified(p: RamifiedMatrix, w, sigma, tau):
    """Find diagonals a, b with a_lam o P(sigma lam, tau i) o b_i = w[lam][i].

    Propagates along group cells (which pin values) component by component,
    then verifies every cell including constants and general maps.
    """
    m, n = p.rows, p.cols
    act = p.action
    perm_cells = [
        (lam, i)
        for lam in range(m)
        for i in range(n)
        if p.entry(sigma[lam], tau[i]).kind == PERM
    ]
    by_row = [[] for _ in range(m)]
    by_col = [[] for _ in range(n)]
    for lam, i in perm_cells:
        by_row[lam].append(i)
        by_col[i].append(lam)

    def q_fn(lam, i):
        return p.entry(sigma[lam], tau[i]).fn

    a: list[int | None] = [None] * m
    b: list[int | None] = [None] * n

    def check_all() -> bool:
        for lam in range(m):
            for i in range(n):
                fa = act.perms[a[lam]]
                fb = act.perms[b[i]]
                if fa * q_fn(lam, i) * fb != w[lam][i]:
                    return False
        return True

    for root in range(n):
        if b[root] is not None or not by_col[root]:
            continue
        comp_rows: set[int] = set()
        comp_cols: set[int] = set()
        ok = False
        for trial in range(act.order):
            for lam in comp_rows:
                a[lam] = None
            for i in comp_cols:
                b[i] = None
            comp_rows.clear()
            comp_cols.clear()
            b[root] = trial
            comp_cols.add(root)
            stack = [("col", root)]
            consistent = True
            while stack and consistent:
                kind, idx = stack.pop()
                if kind == "col":
                    for lam in by_col[idx]:
                        if not w[lam][idx].is_permutation():
                            consistent = False
                            break
                        val = (
                            w[lam][idx]
                            * act.perms[b[idx]].inverse()
                            * q_fn(lam, idx).inverse()
                        )
                        if not act.contains(val):
                            consistent = False
                            break
                        vi = act.index_of(val)
                        if a[lam] is None:
                            a[lam] = vi
                            comp_rows.add(lam)
                            stack.append(("row", lam))
                        elif a[lam] != vi:
                            consistent = False
                            break
                else:
                    for i in by_row[idx]:
                        if not w[idx][i].is_permutation():
                            consistent = False
                            break
                        val = (
                            q_fn(idx, i).inverse()
                            * act.perms[a[idx]].inverse()
                            * w[idx][i]
                        )
                        if not act.contains(val):
                            consistent = False
                            break
                        vi = act.index_of(val)
                        if b[i] is None:
                            b[i] = vi
                            comp_cols.add(i)
                            stack.append(("col", i))
                        elif b[i] != vi:
                            consistent = False
                            break
            if consistent:
                ok = True
                break
        if not ok:
            return None
    if any(x is None for x in a) or any(x is None for x in b):
        return None  # regular matrices always pin every diagonal
    if not check_all():
        return None
    return a, b


def _verify_matrix_equivalence(p, p2, amat, bmat, point_map, group_map):
    act = p.action
    m, n = p.rows, p.cols
    beta = Transformation(point_map)
    beta_inv = beta.inverse()
    for lam in range(m):
        srow = next(k for k in range(m) if amat[lam][k] is not None)
        for i in range(n):
            trow = next(k for k in range(n) if bmat[k][i] is not None)
            fn = (
                act.perms[amat[lam][srow]]
                * p.entry(srow, trow).fn
                * act.perms[bmat[trow][i]]
            )
            transported = beta * fn * beta_inv
            assert transported == p2.entry(lam, i).fn, (
                "matrix equivalence witness failed verification"
            )
