"""Rees matrix semigroups over a group with zero, and their extraction.

A sandwich matrix Q is m x n over a finite group G, entries either a group
element or None (the zero).  The matrix semigroup has elements
[r, g, lam] with r a column index, lam a row index, plus a zero, and
product [r, g, a][s, h, b] = [r, g*Q(a,s)*h, b] when Q(a,s) is non-zero.

Column indices therefore enumerate the R-classes of the non-zero elements
and row indices the L-classes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .groups import FiniteGroup, group_isomorphisms
from .semigroup import FiniteSemigroup, is_completely_0_simple

Triple = tuple[int, int, int]  # (column r, group element g, row lam)


class SandwichMatrix:
    __slots__ = ("group", "rows", "cols", "entries")

    def __init__(self, group: FiniteGroup, entries):
        self.group = group
        self.entries = tuple(tuple(row) for row in entries)
        self.rows = len(self.entries)
        if self.rows == 0:
            raise ValueError("no rows")
        self.cols = len(self.entries[0])
        if any(len(row) != self.cols for row in self.entries):
            raise ValueError("ragged rows")
        for row in self.entries:
            for v in row:
                if v is not None and not (0 <= v < group.order):
                    raise ValueError(f"entry {v} outside group")

    def entry(self, lam: int, r: int) -> int | None:
        return self.entries[lam][r]

    def is_regular(self) -> bool:
        """Every row and every column holds a non-zero entry."""
        if any(all(v is None for v in row) for row in self.entries):
            return False
        return all(
            any(self.entries[lam][r] is not None for lam in range(self.rows))
            for r in range(self.cols)
        )

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, SandwichMatrix)
            and self.group == other.group
            and self.entries == other.entries
        )

    def __hash__(self) -> int:
        return hash((self.group, self.entries))

    def __repr__(self) -> str:
        return f"SandwichMatrix({self.rows}x{self.cols}, |G|={self.group.order})"


def rees_product(q: SandwichMatrix, t1: Triple | None, t2: Triple | None) -> Triple | None:
    """Product of two matrix elements; None is the absorbing zero."""
    if t1 is None or t2 is None:
        return None
    r, g, a = t1
    s, h, b = t2
    mid = q.entry(a, s)
    if mid is None:
        return None
    gg = q.group
    return (r, gg.mult(gg.mult(g, mid), h), b)


def build_rees(q: SandwichMatrix) -> FiniteSemigroup:
    """The matrix semigroup of a regular sandwich matrix, zero adjoined.

    Element labels are the triples (r, g, lam) in column-major order plus
    the label "0"; the result is checked completely 0-simple.
    """
    if not q.is_regular():
        raise ValueError("sandwich matrix must be regular")
    triples = [
        (r, g, lam)
        for r in range(q.cols)
        for g in range(q.group.order)
        for lam in range(q.rows)
    ]
    zero = len(triples)
    pos = {t: i for i, t in enumerate(triples)}
    labels = triples + ["0"]
    table = [[zero] * (zero + 1) for _ in range(zero + 1)]
    for i, t1 in enumerate(triples):
        for j, t2 in enumerate(triples):
            p = rees_product(q, t1, t2)
            if p is not None:
                table[i][j] = pos[p]
    s = FiniteSemigroup(labels, table, zero=zero)
    assert is_completely_0_simple(s), "regular matrix must give a 0-simple semigroup"
    return s


@dataclass(frozen=True)
class ReesGeneratingSet:
    """Coordinates for a completely 0-simple semigroup based at idempotent e.

    ``i_reps[r]`` lies in the L-class of e, one per R-class (f_r e = f_r);
    ``k_reps[lam]`` lies in the R-class of e, one per L-class (e g = g);
    ``h_class`` is the group H-class of e.  Every non-zero j factors uniquely
    as i_reps[r] * h * k_reps[lam].
    """

    base: int
    i_reps: tuple[int, ...]
    k_reps: tuple[int, ...]
    h_class: tuple[int, ...]


def rees_generating_set(s: FiniteSemigroup, e: int) -> ReesGeneratingSet:
    if not is_completely_0_simple(s):
        raise ValueError("semigroup is not completely 0-simple")
    if e == s.zero or not s.is_idempotent(e):
        raise ValueError("base must be a non-zero idempotent")
    gd = s.green()
    z = s.zero
    r_of, l_of = gd.r.block_of, gd.l.block_of
    r_ids = sorted(
        {r_of[a] for a in range(s.size) if a != z},
        key=lambda c: min(a for a in range(s.size) if r_of[a] == c),
    )
    l_ids = sorted(
        {l_of[a] for a in range(s.size) if a != z},
        key=lambda c: min(a for a in range(s.size) if l_of[a] == c),
    )
    le = [a for a in range(s.size) if a != z and l_of[a] == l_of[e]]
    re_ = [a for a in range(s.size) if a != z and r_of[a] == r_of[e]]
    i_reps = []
    for rc in r_ids:
        cell = [a for a in le if r_of[a] == rc]
        if not cell:
            raise ValueError("H-class cell empty; semigroup not 0-simple")
        i_reps.append(min(cell))
    k_reps = []
    for lc in l_ids:
        cell = [a for a in re_ if l_of[a] == lc]
        if not cell:
            raise ValueError("H-class cell empty; semigroup not 0-simple")
        k_reps.append(min(cell))
    h_class = tuple(sorted(a for a in le if r_of[a] == r_of[e]))
    for f in i_reps:
        assert s.table[f][e] == f, "row representative not normalized"
    for g in k_reps:
        assert s.table[e][g] == g, "column representative not normalized"
    return ReesGeneratingSet(
        base=e, i_reps=tuple(i_reps), k_reps=tuple(k_reps), h_class=h_class
    )


@dataclass(frozen=True)
class ReesExtraction:
    """Extraction result: abstract group of the base H-class, the sandwich
    matrix it induces, the generating set used, and the element bijection.

    ``triples[i]`` is the coordinate triple of element i (None for the zero);
    ``h_elements[k]`` is the semigroup element realizing group element k.
    """

    group: FiniteGroup
    matrix: SandwichMatrix
    rgs: ReesGeneratingSet
    triples: tuple[Triple | None, ...]
    h_elements: tuple[int, ...]


def factorize(s: FiniteSemigroup, rgs: ReesGeneratingSet, j: int) -> Triple:
    """The unique (r, h, lam) with j = i_reps[r] * h_elements[h] * k_reps[lam]."""
    if j == s.zero:
        raise ValueError("zero does not factorize")
    gd = s.green()
    r = next(
        k for k, f in enumerate(rgs.i_reps) if gd.r.block_of[f] == gd.r.block_of[j]
    )
    lam = next(
        k for k, g in enumerate(rgs.k_reps) if gd.l.block_of[g] == gd.l.block_of[j]
    )
    f, g = rgs.i_reps[r], rgs.k_reps[lam]
    hits = [
        k
        for k, h in enumerate(rgs.h_class)
        if s.table[s.table[f][h]][g] == j
    ]
    assert len(hits) == 1, f"factorization not unique: {len(hits)} matches"
    return (r, hits[0], lam)


def extract_rees(s: FiniteSemigroup, rgs: ReesGeneratingSet | None = None) -> ReesExtraction:
    """Coordinates of a completely 0-simple semigroup as a matrix semigroup.

    Defaults to the first non-zero idempotent in element order as base.  The
    element bijection is verified to respect products.
    """
    if rgs is None:
        base = next(
            (i for i in s.idempotents() if i != s.zero),
            None,
        )
        if base is None:
            raise ValueError("no non-zero idempotent")
        rgs = rees_generating_set(s, base)
    h = list(rgs.h_class)
    hpos = {a: k for k, a in enumerate(h)}
    table = []
    for a in h:
        row = []
        for b in h:
            ab = s.table[a][b]
            if ab not in hpos:
                raise ValueError("base H-class is not a group")
            row.append(hpos[ab])
        table.append(row)
    group = FiniteGroup(table)
    entries = []
    for g in rgs.k_reps:
        row = []
        for f in rgs.i_reps:
            prod = s.table[g][f]
            if prod == s.zero:
                row.append(None)
            else:
                assert prod in hpos, "sandwich entry left the base H-class"
                row.append(hpos[prod])
        entries.append(row)
    matrix = SandwichMatrix(group, entries)

    triples: list[Triple | None] = [None] * s.size
    for j in range(s.size):
        if j != s.zero:
            triples[j] = factorize(s, rgs, j)
    count = len({t for t in triples if t is not None})
    assert count == s.size - 1, "coordinate map not injective"
    for i in range(s.size):
        for j in range(s.size):
            expect = rees_product(matrix, triples[i], triples[j])
            assert triples[s.table[i][j]] == expect, "coordinate map not a morphism"
    return ReesExtraction(
        group=group,
        matrix=matrix,
        rgs=rgs,
        triples=tuple(triples),
        h_elements=tuple(h),
    )


def matching_generating_set(
    s: FiniteSemigroup, q: SandwichMatrix
) -> tuple[ReesGeneratingSet, tuple[int, ...]]:
    """A generating set of build_rees(q) whose extracted matrix equals q.

    Anchors the first non-zero entry q0 = q(lam0, i0): the base idempotent is
    [i0, q0^-1, lam0], row representatives [s, 1, lam0], column
    representatives [i0, q0^-1, a].  Returns the generating set and the
    isomorphism from the extracted group onto q.group ([i0, h, lam0] -> q0*h),
    verified entry-for-entry.
    """
    lam0, i0 = next(
        (lam, r)
        for lam in range(q.rows)
        for r in range(q.cols)
        if q.entry(lam, r) is not None
    )
    g = q.group
    q0 = q.entry(lam0, i0)
    inv_q0 = g.inv(q0)
    base = s.index_of((i0, inv_q0, lam0))
    i_reps = tuple(s.index_of((r, g.identity, lam0)) for r in range(q.cols))
    k_reps = tuple(s.index_of((i0, inv_q0, lam)) for lam in range(q.rows))
    h_class = tuple(sorted(s.index_of((i0, h, lam0)) for h in range(g.order)))
    rgs = ReesGeneratingSet(base=base, i_reps=i_reps, k_reps=k_reps, h_class=h_class)

    ext = extract_rees(s, rgs)
    iso = []
    for k in range(ext.group.order):
        label = s.labels[ext.h_elements[k]]
        iso.append(g.mult(q0, label[1]))
    iso_t = tuple(iso)
    for lam in range(q.rows):
        for r in range(q.cols):
            got = ext.matrix.entry(lam, r)
            want = q.entry(lam, r)
            if got is None:
                assert want is None, "zero pattern mismatch in anchored extraction"
            else:
                assert want == iso_t[got], "anchored extraction does not match"
    return rgs, iso_t


def monomial_product(a, b, group: FiniteGroup):
    """Product of matrices over the group with zero; each sum must have at
    most one non-zero term (monomial discipline)."""
    rows, inner, cols = len(a), len(b), len(b[0])
    if any(len(row) != inner for row in a):
        raise ValueError("shape mismatch")
    out = []
    for i in range(rows):
        row = []
        for j in range(cols):
            val = None
            for k in range(inner):
                x, y = a[i][k], b[k][j]
                if x is not None and y is not None:
                    if val is not None:
                        raise ValueError("product not monomial")
                    val = group.mult(x, y)
            row.append(val)
        out.append(row)
    return out


def apply_group_map(entries, phi: tuple[int, ...]):
    """Push matrix entries through a group element map; None stays None."""
    return [[None if v is None else phi[v] for v in row] for row in entries]


def sandwich_equivalent(q: SandwichMatrix, q2: SandwichMatrix):
    """Search for (U, V, phi) with phi(U q V) = q2 entrywise.

    U is m x m and V is n x n, both monomial over q's group with exactly one
    non-zero entry per row and column; phi is an isomorphism from q's group
    onto q2's.  Returns (U, V, phi) grids/tuple or None.  The witness is
    re-verified by direct multiplication before returning.
    """
    if q.rows != q2.rows or q.cols != q2.cols:
        return None
    if q.group.order != q2.group.order:
        return None
    g = q.group
    m, n = q.rows, q.cols
    zero_rows_q = [tuple(v is None for v in row) for row in q.entries]
    zero_rows_q2 = [tuple(v is None for v in row) for row in q2.entries]

    for phi in group_isomorphisms(g, q2.group):
        phi_inv = [0] * len(phi)
        for a, b in enumerate(phi):
            phi_inv[b] = a
        # w[lam][i] is the required value of u_lam * q(sigma lam, tau i) * v_i
        for sigma in itertools.permutations(range(m)):
            if any(
                sorted(zero_rows_q[sigma[lam]]) != sorted(zero_rows_q2[lam])
                for lam in range(m)
            ):
                continue
            for tau in itertools.permutations(range(n)):
                ok_pattern = all(
                    (q.entry(sigma[lam], tau[i]) is None)
                    == (q2.entry(lam, i) is None)
                    for lam in range(m)
                    for i in range(n)
                )
                if not ok_pattern:
                    continue
                sol = _solve_diagonals(q, q2, g, phi_inv, sigma, tau)
                if sol is None:
                    continue
                u, v = sol
                umat = [[None] * m for _ in range(m)]
                for lam in range(m):
                    umat[lam][sigma[lam]] = u[lam]
                vmat = [[None] * n for _ in range(n)]
                for i in range(n):
                    vmat[tau[i]][i] = v[i]
                check = monomial_product(monomial_product(umat, q.entries, g), vmat, g)
                assert apply_group_map(check, tuple(phi)) == [
                    list(row) for row in q2.entries
                ], "equivalence witness failed verification"
                return umat, vmat, tuple(phi)
    return None


def _solve_diagonals(q, q2, g, phi_inv, sigma, tau):
    """Solve u_lam * q(sigma lam, tau i) * v_i = phi^-1(q2(lam, i)) on the
    non-zero cells, component by component of the bipartite cell graph."""
    m, n = q.rows, q.cols
    cells = [
        (lam, i)
        for lam in range(m)
        for i in range(n)
        if q2.entry(lam, i) is not None
    ]
    if not cells:
        return None  # regular matrices always have cells; treat empty as failure
    by_row: list[list[int]] = [[] for _ in range(m)]
    by_col: list[list[int]] = [[] for _ in range(n)]
    for lam, i in cells:
        by_row[lam].append(i)
        by_col[i].append(lam)

    def w(lam: int, i: int) -> int:
        return phi_inv[q2.entry(lam, i)]

    def qq(lam: int, i: int) -> int:
        return q.entry(sigma[lam], tau[i])

    u: list[int | None] = [None] * m
    v: list[int | None] = [None] * n
    for root in range(n):
        if v[root] is not None or not by_col[root]:
            continue
        comp_rows: set[int] = set()
        comp_cols: set[int] = set()
        found = False
        for trial in range(g.order):
            for lam in comp_rows:
                u[lam] = None
            for i in comp_cols:
                v[i] = None
            comp_rows.clear()
            comp_cols.clear()
            v[root] = trial
            comp_cols.add(root)
            stack = [("col", root)]
            consistent = True
            while stack and consistent:
                kind, idx = stack.pop()
                if kind == "col":
                    for lam in by_col[idx]:
                        # u_lam = w * v_i^-1 * q^-1
                        val = g.mult(
                            g.mult(w(lam, idx), g.inv(v[idx])), g.inv(qq(lam, idx))
                        )
                        if u[lam] is None:
                            u[lam] = val
                            comp_rows.add(lam)
                            stack.append(("row", lam))
                        elif u[lam] != val:
                            consistent = False
                            break
                else:
                    for i in by_row[idx]:
                        # v_i = q^-1 * u_lam^-1 * w
                        val = g.mult(
                            g.mult(g.inv(qq(idx, i)), g.inv(u[idx])), w(idx, i)
                        )
                        if v[i] is None:
                            v[i] = val
                            comp_cols.add(i)
                            stack.append(("col", i))
                        elif v[i] != val:
                            consistent = False
                            break
            if consistent:
                found = True
                break
        if not found:
            return None
    # isolated rows/columns cannot occur for regular matrices, but fill anyway
    ident = g.identity
    return (
        [ident if x is None else x for x in u],
        [ident if x is None else x for x in v],
    )
