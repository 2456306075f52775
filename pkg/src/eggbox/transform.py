"""Total maps on a finite point set, and equivalence relations on it.

Points are the dense integers 0..degree-1.  Composition is written the
functional way throughout the library: ``(f * g)(y) == f(g(y))``, i.e. the
right factor acts first.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence


class Transformation:
    """An immutable total map on {0, ..., degree-1}, stored by its image tuple."""

    __slots__ = ("images", "_hash")

    def __init__(self, images: Iterable[int]):
        images = tuple(images)
        n = len(images)
        if n == 0:
            raise ValueError("empty carrier")
        for v in images:
            if not (0 <= v < n):
                raise ValueError(f"image {v} out of range for degree {n}")
        self.images = images
        self._hash = hash(images)

    @property
    def degree(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, n: int) -> "Transformation":
        return cls(range(n))

    @classmethod
    def constant(cls, n: int, value: int) -> "Transformation":
        return cls([value] * n)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: "Transformation") -> "Transformation":
        # self acts after other: (f*g)(y) = f(g(y))
        if self.degree != other.degree:
            raise ValueError("degree mismatch")
        f = self.images
        return Transformation(tuple(f[v] for v in other.images))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Transformation) and self.images == other.images

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "Transformation") -> bool:
        return self.images < other.images

    def __repr__(self) -> str:
        return f"Transformation({list(self.images)})"

    def is_permutation(self) -> bool:
        return len(set(self.images)) == self.degree

    def is_constant(self) -> bool:
        return len(set(self.images)) == 1

    def is_idempotent(self) -> bool:
        im = self.images
        return all(im[v] == v for v in set(im))

    def image(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.images)))

    def inverse(self) -> "Transformation":
        if not self.is_permutation():
            raise ValueError("only permutations invert")
        inv = [0] * self.degree
        for p, v in enumerate(self.images):
            inv[v] = p
        return Transformation(inv)

    def kernel(self) -> "Partition":
        return Partition.from_key(self.images)

    def restrict_to(self, points: Sequence[int]) -> "Transformation":
        """The induced map on a sub-carrier, renumbered 0..len(points)-1.

        ``points`` must be closed under this map.
        """
        pos = {p: k for k, p in enumerate(points)}
        try:
            return Transformation(tuple(pos[self.images[p]] for p in points))
        except KeyError as exc:
            raise ValueError(f"subset not closed under map: hit {exc}") from exc


def compose(f: Transformation, g: Transformation) -> Transformation:
    """f after g: y -> f(g(y))."""
    return f * g


class Partition:
    """An equivalence relation on {0, ..., degree-1}.

    Canonical form: ``block_of[p]`` is the block id of point p, with ids
    assigned in order of first occurrence, so equal relations compare equal.
    """

    __slots__ = ("block_of", "_hash")

    def __init__(self, block_of: Iterable[int]):
        raw = tuple(block_of)
        if not raw:
            raise ValueError("empty carrier")
        relabel: dict[int, int] = {}
        canon = []
        for b in raw:
            if b not in relabel:
                relabel[b] = len(relabel)
            canon.append(relabel[b])
        self.block_of = tuple(canon)
        self._hash = hash(self.block_of)

    @property
    def degree(self) -> int:
        return len(self.block_of)

    @property
    def num_blocks(self) -> int:
        return max(self.block_of) + 1

    @classmethod
    def diagonal(cls, n: int) -> "Partition":
        return cls(range(n))

    @classmethod
    def universal(cls, n: int) -> "Partition":
        return cls([0] * n)

    @classmethod
    def from_key(cls, keys: Sequence) -> "Partition":
        """Points with equal keys land in the same block."""
        seen: dict = {}
        out = []
        for k in keys:
            if k not in seen:
                seen[k] = len(seen)
            out.append(seen[k])
        return cls(out)

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, int]], degree: int) -> "Partition":
        """Smallest equivalence containing the given pairs (union-find)."""
        parent = list(range(degree))

        def find(a: int) -> int:
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for a, b in pairs:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[rb] = ra
        return cls(find(p) for p in range(degree))

    @classmethod
    def from_blocks(cls, blocks: Iterable[Iterable[int]], degree: int) -> "Partition":
        block_of = [-1] * degree
        for bid, block in enumerate(blocks):
            for p in block:
                if block_of[p] != -1:
                    raise ValueError(f"point {p} in two blocks")
                block_of[p] = bid
        if -1 in block_of:
            raise ValueError("blocks do not cover the carrier")
        return cls(block_of)

    def blocks(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.num_blocks)]
        for p, b in enumerate(self.block_of):
            out[b].append(p)
        return out

    def together(self, a: int, b: int) -> bool:
        return self.block_of[a] == self.block_of[b]

    def pairs(self) -> list[tuple[int, int]]:
        """A spanning set of pairs: consecutive members of every block."""
        out = []
        for block in self.blocks():
            out.extend(zip(block, block[1:]))
        return out

    def refines(self, other: "Partition") -> bool:
        """True when every block of self lies inside a block of other."""
        if self.degree != other.degree:
            raise ValueError("degree mismatch")
        rep: dict[int, int] = {}
        for p, b in enumerate(self.block_of):
            ob = other.block_of[p]
            if rep.setdefault(b, ob) != ob:
                return False
        return True

    def meet(self, other: "Partition") -> "Partition":
        if self.degree != other.degree:
            raise ValueError("degree mismatch")
        return Partition.from_key(list(zip(self.block_of, other.block_of)))

    def join(self, other: "Partition") -> "Partition":
        if self.degree != other.degree:
            raise ValueError("degree mismatch")
        return Partition.from_pairs(self.pairs() + other.pairs(), self.degree)

    def is_diagonal(self) -> bool:
        return self.num_blocks == self.degree

    def is_universal(self) -> bool:
        return self.num_blocks == 1

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Partition) and self.block_of == other.block_of

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Partition({[sorted(b) for b in self.blocks()]})"


def kernel_partition(f: Transformation) -> Partition:
    """Points identified by f: the kernel of the map."""
    return f.kernel()


def generate_equivalence(pairs: Iterable[tuple[int, int]], degree: int) -> Partition:
    """Smallest equivalence relation on 0..degree-1 containing the pairs."""
    return Partition.from_pairs(pairs, degree)
