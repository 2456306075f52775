"""Analysis of top-class representations and structural primitivity.

The elements of the representations analyzed here form the maximal nonzero
class of a completely 0-simple structure; products are left undefined
exactly where the abstract product falls to zero.  Such a family is
re-coordinatized as monomial triples over a matrix of restricted maps, and
primitivity of a faithful action is decided from conditions on that matrix,
with every structural verdict backed by explicit verification loops.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .actions import GroupAction, is_primitive_group
from .ramified import (
    MonomialTriple,
    RamifiedMatrix,
    graph,
    map_entry,
    perm_entry,
    reductivity,
    theta,
    triple_rep,
)
from .rees import extract_rees, rees_generating_set
from .representation import (
    Representation,
    is_compatible,
    is_primitive_bruteforce,
    max_deflation,
    minimal_structure,
    restrict,
    semigroup_rep,
    validate_representation,
)
from .semigroup import (
    FiniteSemigroup,
    close,
    is_completely_0_simple,
    transformation_semigroup,
)
from .transform import Partition, Transformation

KER_CAP = 100_000
HULL_MAX_CARRIER = 6


def j_zero_semigroup(rep: Representation) -> FiniteSemigroup:
    """The labeled family with a fresh absorbing zero standing in for every
    undefined product.  Raises when the resulting table is not associative."""
    n = rep.size
    zero = n
    table = []
    for i in range(n):
        row = []
        for j in range(n):
            k = rep.product(i, j)
            row.append(zero if k is None else k)
        row.append(zero)
        table.append(row)
    table.append([zero] * (n + 1))
    zlabel = "0"
    while zlabel in rep.labels:
        zlabel += "0"
    s = FiniteSemigroup(list(rep.labels) + [zlabel], table, zero=zero)
    s.validate()
    return s


def _ordered_classes(part: Partition, n: int) -> list[list[int]]:
    """Blocks restricted to the first n elements, ordered by least member."""
    blocks: dict[int, list[int]] = {}
    for i in range(n):
        blocks.setdefault(part.block_of[i], []).append(i)
    return [blocks[b] for b in sorted(blocks, key=lambda b: blocks[b][0])]


@dataclass(frozen=True)
class InducedAction:
    """The base H-class restricted to the image of its idempotent."""

    action: GroupAction
    points: tuple[int, ...]
    h_elements: tuple[int, ...]
    perm_index: tuple[int, ...]
    faithful: bool


def induced_group_action(rep: Representation, base: int | None = None) -> InducedAction:
    s0 = j_zero_semigroup(rep)
    if not is_completely_0_simple(s0):
        raise ValueError("elements do not form the top class of a completely 0-simple structure")
    return _induced(rep, s0, _pick_base(rep, base))


def _pick_base(rep: Representation, base: int | None) -> int:
    if base is None:
        for i in range(rep.size):
            if rep.product(i, i) == i:
                return i
        raise ValueError("no idempotent element")
    if not (0 <= base < rep.size) or rep.product(base, base) != base:
        raise ValueError("base element must be an idempotent of the family")
    return base


def _induced(rep: Representation, s0: FiniteSemigroup, e: int) -> InducedAction:
    points = tuple(sorted(rep.bound(e).image()))
    pos = {p: k for k, p in enumerate(points)}
    hpart = s0.green().h
    h_elements = tuple(
        i for i in range(rep.size) if hpart.block_of[i] == hpart.block_of[e]
    )
    perms = []
    for i in h_elements:
        b = rep.bound(i)
        t = Transformation(tuple(pos[b(p)] for p in points))
        if not t.is_permutation():
            raise ValueError("base class does not restrict to permutations")
        perms.append(t)
    action = GroupAction(dict.fromkeys(perms))
    return InducedAction(
        action=action,
        points=points,
        h_elements=h_elements,
        perm_index=tuple(action.index_of(t) for t in perms),
        faithful=len(set(perms)) == len(perms),
    )


@dataclass(frozen=True)
class RRepClassification:
    """Flags of a top-class representation.

    ``neighborhoods`` holds one image set per R-class (column order);
    ``kernels`` one partition per L-class (row order).
    """

    is_r_rep: bool
    is_c_rep: bool
    range_covered: bool
    reduced: bool
    m_faithful: bool
    faithful: bool
    neighborhoods: tuple[frozenset[int], ...]
    kernels: tuple[Partition, ...]


def _require_valid(rep: Representation):
    report = validate_representation(rep)
    if not report.valid:
        raise ValueError(f"product table disagrees with composition at {report.violations}")
    return report


def classify_r_rep(rep: Representation) -> RRepClassification:
    _require_valid(rep)
    s0 = j_zero_semigroup(rep)
    if not is_completely_0_simple(s0):
        raise ValueError("elements do not form the top class of a completely 0-simple structure")
    return _classify(rep, s0)


def _classify(rep: Representation, s0: FiniteSemigroup) -> RRepClassification:
    n = rep.size
    gd = s0.green()
    neighborhoods = []
    for block in _ordered_classes(gd.r, n):
        ims = {frozenset(rep.bound(i).image()) for i in block}
        assert len(ims) == 1, "images differ inside an R-class"
        neighborhoods.append(ims.pop())
    kernels = []
    for block in _ordered_classes(gd.l, n):
        kers = {rep.bound(i).kernel() for i in block}
        assert len(kers) == 1, "kernels differ inside an L-class"
        kernels.append(kers.pop())
    images_separate = len(set(neighborhoods)) == len(neighborhoods)
    kernels_separate = len(set(kernels)) == len(kernels)
    is_c = all(
        (rep.bound(i) * rep.bound(j)).is_constant()
        for i in range(n)
        for j in range(n)
        if rep.product(i, j) is None
    )
    covered: set[int] = set()
    for nb in neighborhoods:
        covered |= nb
    induced = _induced(rep, s0, _pick_base(rep, None))
    faithful = induced.faithful and images_separate and kernels_separate
    assert faithful == rep.is_faithful(), (
        "structural faithfulness disagrees with direct injectivity"
    )
    return RRepClassification(
        is_r_rep=True,
        is_c_rep=is_c,
        range_covered=covered == set(range(rep.carrier)),
        reduced=max_deflation(rep).is_diagonal(),
        m_faithful=induced.faithful,
        faithful=faithful,
        neighborhoods=tuple(neighborhoods),
        kernels=tuple(kernels),
    )


@dataclass(frozen=True)
class RamifyResult:
    """A representation re-coordinatized as triples over a matrix.

    ``kappa_points[y]`` is the vector class carrying carrier point y;
    ``kappa_elems[i]`` the triple of element i; ``points`` the carrier
    points forming the base image X; ``i_reps``/``k_reps`` the factorization
    representatives per column/row.
    """

    action: GroupAction
    matrix: RamifiedMatrix
    alpha: Partition
    kappa_points: tuple[int, ...]
    kappa_elems: tuple[MonomialTriple, ...]
    base: int
    points: tuple[int, ...]
    i_reps: tuple[int, ...]
    k_reps: tuple[int, ...]


def ramify(rep: Representation, base: int | None = None) -> RamifyResult:
    """Extract the matrix form of a top-class representation.

    Requires the induced group action to be faithful and the element images
    to cover the carrier; the returned coordinate maps are verified to
    transport the action exactly.
    """
    _require_valid(rep)
    s0 = j_zero_semigroup(rep)
    if not is_completely_0_simple(s0):
        raise ValueError("elements do not form the top class of a completely 0-simple structure")
    return _ramify(rep, s0, _pick_base(rep, base))


def _ramify(rep: Representation, s0: FiniteSemigroup, e: int) -> RamifyResult:
    n = rep.size
    rgs = rees_generating_set(s0, e)
    ext = extract_rees(s0, rgs)
    induced = _induced(rep, s0, e)
    if not induced.faithful:
        raise ValueError("induced group action is not faithful")
    points = induced.points
    pos = {p: k for k, p in enumerate(points)}
    deg = len(points)
    action = induced.action
    hperm = {}
    for idx, elem in enumerate(ext.h_elements):
        k = induced.h_elements.index(elem)
        hperm[idx] = induced.perm_index[k]

    q = ext.matrix
    entries = []
    for lam in range(q.rows):
        row = []
        for i in range(q.cols):
            composite = rep.bound(rgs.k_reps[lam]) * rep.bound(rgs.i_reps[i])
            t = Transformation(tuple(pos[composite(p)] for p in points))
            qe = q.entry(lam, i)
            if qe is not None:
                assert t == action.perms[hperm[qe]], (
                    "matrix entry disagrees with the base group element"
                )
                row.append(perm_entry(action, hperm[qe]))
            else:
                assert not action.contains(t), (
                    "zero product restricts to a group permutation"
                )
                row.append(map_entry(action, t))
        entries.append(row)
    matrix = RamifiedMatrix(action, entries)

    keys = []
    for i in range(q.cols):
        fb = rep.bound(rgs.i_reps[i])
        for x in range(deg):
            keys.append(fb(points[x]))
    if set(keys) != set(range(rep.carrier)):
        raise ValueError("element images do not cover the carrier")
    alpha = Partition.from_key(keys)
    assert alpha.num_blocks == rep.carrier
    assert alpha.refines(theta(matrix))

    kappa_points = [0] * rep.carrier
    for vec, y in enumerate(keys):
        kappa_points[y] = alpha.block_of[vec]
    kappa_elems = []
    for i in range(n):
        r, hk, lam = ext.triples[i]
        kappa_elems.append(MonomialTriple(r, hperm[hk], lam))
    assert len(set(kappa_elems)) == n == q.cols * action.order * q.rows

    if all(
        (rep.bound(i) * rep.bound(j)).is_constant()
        for i in range(n)
        for j in range(n)
        if rep.product(i, j) is None
    ):
        assert matrix.is_c_ramified(), "constant products left a general entry"

    trep = triple_rep(matrix, alpha)
    tindex = [trep.index_of(t) for t in kappa_elems]
    for i in range(n):
        bt = trep.bound(tindex[i])
        bi = rep.bound(i)
        for y in range(rep.carrier):
            assert kappa_points[bi(y)] == bt(kappa_points[y]), (
                "coordinate maps do not transport the action"
            )
    return RamifyResult(
        action=action,
        matrix=matrix,
        alpha=alpha,
        kappa_points=tuple(kappa_points),
        kappa_elems=tuple(kappa_elems),
        base=e,
        points=points,
        i_reps=tuple(rgs.i_reps),
        k_reps=tuple(rgs.k_reps),
    )


@dataclass(frozen=True)
class PrimitiveStructure:
    """The witness data behind a primitive verdict: the minimal functions
    and their matrix coordinatization."""

    minimal_maps: tuple[Transformation, ...]
    ramified: RamifyResult


@dataclass(frozen=True)
class PrimitivityCertificate:
    primitive: bool
    witness: Partition | None
    conditions: tuple[tuple[str, bool], ...]
    structure: PrimitiveStructure | None


def structural_primitivity(rep: Representation) -> PrimitivityCertificate:
    """Decide primitivity of a faithful action through its minimal functions.

    Small carriers are primitive outright.  Otherwise the minimal functions
    must close into a single regular top class over constants, be reduced
    and range-covering, and connect the carrier; the verdict then reduces to
    conditions on the extracted matrix and its group action.  Non-primitive
    verdicts always carry an independently verified witness partition.
    """
    report = _require_valid(rep)
    if not report.faithful:
        raise ValueError("primitivity analysis needs a faithful representation")
    if rep.carrier <= 2:
        return PrimitivityCertificate(
            True, None, (("small-carrier", True),), None
        )

    closed = close(list(dict.fromkeys(rep.maps)))
    crep = semigroup_rep(closed)
    conditions: list[tuple[str, bool]] = []
    ms = minimal_structure(crep)
    jmaps = tuple(crep.maps[i] for i in ms.minimal_functions)
    ok = bool(jmaps)
    conditions.append(("has-minimal-functions", ok))

    jrep = None
    if ok:
        jset = set(jmaps)
        only_consts = all(
            (a * b) in jset or (a * b).is_constant() for a in jmaps for b in jmaps
        )
        conditions.append(("closure-adds-only-constants", only_consts))
        ok = only_consts
    cls = None
    s0 = None
    if ok:
        index = {m: i for i, m in enumerate(jmaps)}
        products = {}
        for i, a in enumerate(jmaps):
            for j, b in enumerate(jmaps):
                k = index.get(a * b)
                if k is not None:
                    products[(i, j)] = k
        jrep = Representation(jmaps, jmaps, products, carrier=rep.carrier)
        try:
            s0 = j_zero_semigroup(jrep)
            if not is_completely_0_simple(s0):
                raise ValueError("not completely 0-simple")
            cls = _classify(jrep, s0)
            conditions.append(("single-regular-class", True))
        except ValueError:
            conditions.append(("single-regular-class", False))
            ok = False
    if ok:
        conditions.append(("range-covered", cls.range_covered))
        conditions.append(("reduced", cls.reduced))
        ok = cls.range_covered and cls.reduced
    rho_ok = ms.rho.is_universal()
    conditions.append(("minimal-sets-connect", rho_ok))
    ok = ok and rho_ok

    ram = None
    if ok:
        ram = _ramify(jrep, s0, _pick_base(jrep, None))
        assert ram.alpha == theta(ram.matrix), (
            "reduced input must identify exactly the fused vectors"
        )
        red = reductivity(ram.matrix)
        checks = [
            ("group-primitive", is_primitive_group(ram.action)[0]),
            ("matrix-regular", ram.matrix.is_regular()),
            ("matrix-reductive", red.left and red.right),
            ("matrix-constant-entries", ram.matrix.is_c_ramified()),
            ("graph-connected", graph(ram.matrix).connected),
        ]
        conditions.extend(checks)
        ok = all(v for _, v in checks)

    if ok:
        return PrimitivityCertificate(
            True, None, tuple(conditions), PrimitiveStructure(jmaps, ram)
        )
    witness = _imprimitivity_witness(crep, ms.rho)
    if witness is None:
        raise AssertionError(
            "structural conditions failed but exhaustive search finds no witness"
        )
    return PrimitivityCertificate(False, witness, tuple(conditions), None)


def _imprimitivity_witness(crep: Representation, rho: Partition) -> Partition | None:
    """A compatible partition other than the trivial two, or None.

    Tries the cheap candidates first, then falls back to closing every point
    pair; the fallback is exhaustive, so None means genuinely primitive.
    """
    delta = max_deflation(crep)
    if not delta.is_diagonal():
        if not delta.is_universal():
            return delta
        # every element is constant, so any proper merge is compatible
        return Partition.from_pairs([(0, 1)], crep.carrier)
    if not rho.is_diagonal() and not rho.is_universal() and is_compatible(crep, rho):
        return rho
    primitive, witness = is_primitive_bruteforce(crep)
    return None if primitive else witness


def translational_hull(rep: Representation) -> FiniteSemigroup:
    """All self-maps of the carrier that multiply the element set into
    itself on both sides, by exhaustive scan of the full map monoid."""
    n = rep.carrier
    if n > HULL_MAX_CARRIER:
        raise ValueError(
            f"carrier {n} exceeds the exhaustive bound {HULL_MAX_CARRIER}"
        )
    maps = list(dict.fromkeys(rep.maps))
    have = set(maps)
    for a in maps:
        for b in maps:
            if a * b not in have:
                raise ValueError("element maps are not closed under composition")
    # encode maps as base-n integers so membership is one vectorized isin
    pows = np.array([n**i for i in range(n)], dtype=np.int64)
    codes = np.sort(
        np.array([np.array(m.images, dtype=np.int64) @ pows for m in maps])
    )
    cand = np.array(
        list(itertools.product(range(n), repeat=n)), dtype=np.int64
    )
    keep = np.ones(len(cand), dtype=bool)
    for g in maps:
        garr = np.array(g.images, dtype=np.int64)
        fg = cand[:, garr] @ pows
        gf = garr[cand] @ pows
        keep &= np.isin(fg, codes) & np.isin(gf, codes)
    hull = [Transformation(tuple(int(v) for v in row)) for row in cand[keep]]
    assert have <= set(hull), "the element set must absorb itself"
    return transformation_semigroup(hull)


def l_class_index(rep: Representation) -> tuple[list[int], int]:
    """Per-element row index (L-classes ordered by least member) and the
    row count."""
    s0 = j_zero_semigroup(rep)
    if not is_completely_0_simple(s0):
        raise ValueError("elements do not form the top class of a completely 0-simple structure")
    part = s0.green().l
    order: dict[int, int] = {}
    for i in range(rep.size):
        b = part.block_of[i]
        if b not in order:
            order[b] = len(order)
    return [order[part.block_of[i]] for i in range(rep.size)], len(order)


def ker_construction(rep: Representation, cap: int = KER_CAP) -> Representation:
    """The action on carrier tuples, one slot per row: an element reads the
    slot of its own row and writes the result on the diagonal."""
    if not rep.is_faithful():
        raise ValueError("tuple construction needs a faithful representation")
    lam_of, m = l_class_index(rep)
    size = rep.carrier**m
    if size > cap:
        raise ValueError(f"tuple carrier {size} exceeds cap {cap}")
    tuples = list(itertools.product(range(rep.carrier), repeat=m))
    tindex = {t: k for k, t in enumerate(tuples)}
    diag = [tindex[(v,) * m] for v in range(rep.carrier)]
    maps = []
    for j in range(rep.size):
        lam = lam_of[j]
        bj = rep.bound(j)
        maps.append(Transformation(tuple(diag[bj(t[lam])] for t in tuples)))
    out = Representation(rep.labels, maps, rep.products, carrier=len(tuples))
    check = validate_representation(out)
    assert check.valid, "tuple action broke the product table"
    return out


def embed_diagonal(rep: Representation, cap: int = KER_CAP):
    """Embed a faithful reduced top-class representation into the tuple
    action of its own matrix coordinatization.

    Points inside the covered sub-carrier land on the diagonal through the
    coordinate bijection; points outside are placed row by row through the
    factorization representatives.  Returns (point embedding, target).
    """
    cls = classify_r_rep(rep)
    if not (cls.faithful and cls.reduced):
        raise ValueError("embedding needs a faithful reduced representation")
    yn = rep.carrier
    jy = sorted(set().union(*(frozenset(m.image()) for m in rep.maps)))
    to_local = {y: k for k, y in enumerate(jy)}
    inner = restrict(rep, jy)
    ram = ramify(inner)
    trep = triple_rep(ram.matrix, ram.alpha)
    target = ker_construction(trep, cap=cap)

    m = ram.matrix.rows
    deg = ram.matrix.degree
    tcar = trep.carrier
    tuples = list(itertools.product(range(tcar), repeat=m))
    tindex = {t: k for k, t in enumerate(tuples)}
    diag = [tindex[(v,) * m] for v in range(tcar)]

    lam_of, rows = l_class_index(trep)
    assert rows == m
    for i, lab in enumerate(trep.labels):
        assert lam_of[i] == lab.row, "row order drifted from the matrix"

    x_global = [jy[p] for p in ram.points]
    x_pos = {y: k for k, y in enumerate(x_global)}
    row_data = []
    for lam in range(m):
        icol = next(
            i for i in range(ram.matrix.cols)
            if ram.matrix.entry(lam, i).kind == "perm"
        )
        inv = ram.matrix.entry(lam, icol).fn.inverse()
        row_data.append((ram.k_reps[lam], icol, inv))

    kappa = []
    for y in range(yn):
        if y in to_local:
            kappa.append(diag[ram.kappa_points[to_local[y]]])
        else:
            comps = []
            for lam in range(m):
                g_elem, icol, inv = row_data[lam]
                w = rep.bound(g_elem)(y)
                comps.append(ram.alpha.block_of[icol * deg + inv(x_pos[w])])
            kappa.append(tindex[tuple(comps)])
    assert len(set(kappa)) == yn, "embedding is not injective"

    for j in range(rep.size):
        tj = target.index_of(ram.kappa_elems[j])
        bt = target.bound(tj)
        bj = rep.bound(j)
        for y in range(yn):
            assert kappa[bj(y)] == bt(kappa[y]), "embedding breaks the action"
    return tuple(kappa), target
