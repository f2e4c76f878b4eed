"""Seeds, quiver mutation, (self-)amalgamation and the named quivers.

A seed is a triple (I, I0, eps) with I a finite vertex set, I0 the frozen
subset and eps a skew-symmetric matrix of arrow weights.  Weights are stored
doubled (``weight2 = 2*eps``) so the half-integer weights of dashed arrows
between frozen vertices stay exact integers.

The named quivers are built from the lattice of the n-triangulation of a
triangle ABC.  Lattice points are pairs (a, b) with a, b >= 0 and
a + b <= n + 1, the corners removed; a is the distance from the edge AC and
b counts steps away from the edge AB.  The boundary carries dashed arrows of
weight 1/2 in the directions A->B, B->C, C->A, and each small upward triangle
carries the weight-1 loop

    (a, b) -> (a+1, b) -> (a, b+1) -> (a, b).
"""

from __future__ import annotations

import json
from typing import Iterable, Mapping, Sequence

from .errors import (
    BadIndex,
    BadRank,
    FrozenVertex,
    NonFrozenGlue,
    OverlappingSubsets,
)

Coord = tuple


class Seed:
    """Immutable seed: labels, frozen subset and doubled weight matrix.

    ``coords`` is a lookup layer from symbolic vertex names (tuples such as
    ``("X", i, k)``) to vertex ids; it does not enter equality.  ``glue``
    records, for seeds produced by amalgamation, the pair of original
    vertices behind each vertex of the glued seed.
    """

    __slots__ = ("labels", "frozen", "weight2", "coords", "glue", "_hash")

    def __init__(
        self,
        labels: Sequence[str],
        frozen: Iterable[int],
        weight2: Sequence[Sequence[int]],
        coords: Mapping[Coord, int] | None = None,
        glue: Sequence[tuple[int | None, int | None]] | None = None,
    ):
        self.labels = tuple(labels)
        self.frozen = frozenset(frozen)
        self.weight2 = tuple(tuple(row) for row in weight2)
        m = len(self.labels)
        if len(self.weight2) != m or any(len(r) != m for r in self.weight2):
            raise ValueError("weight2 must be square and match the vertex count")
        for i in range(m):
            for j in range(m):
                if self.weight2[i][j] != -self.weight2[j][i]:
                    raise ValueError("weight2 must be skew-symmetric")
                if self.weight2[i][j] % 2 and not (
                    i in self.frozen and j in self.frozen
                ):
                    raise ValueError(
                        "half-integer weight between non-frozen vertices"
                    )
        self.coords = dict(coords) if coords else {}
        self.glue = tuple(glue) if glue is not None else None
        self._hash = None

    # -- basics ----------------------------------------------------------

    @property
    def size(self) -> int:
        return len(self.labels)

    def vertices(self) -> range:
        return range(len(self.labels))

    def unfrozen(self) -> list[int]:
        return [v for v in self.vertices() if v not in self.frozen]

    def eps2(self, i: int, j: int) -> int:
        return self.weight2[i][j]

    def vertex(self, key: Coord) -> int:
        try:
            return self.coords[key]
        except KeyError:
            raise BadIndex(f"no vertex named {key!r} in this seed") from None

    def by_label(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise BadIndex(f"no vertex labelled {label!r}") from None

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Seed)
            and self.labels == other.labels
            and self.frozen == other.frozen
            and self.weight2 == other.weight2
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.labels, self.frozen, self.weight2))
        return self._hash

    def __repr__(self):
        return f"Seed({len(self.labels)} vertices, {len(self.frozen)} frozen)"

    # -- derived seeds -----------------------------------------------------

    def with_weight2(self, weight2) -> "Seed":
        return Seed(self.labels, self.frozen, weight2, self.coords, self.glue)

    def unfreeze(self, ids: Iterable[int]) -> "Seed":
        return Seed(
            self.labels, self.frozen - set(ids), self.weight2, self.coords, self.glue
        )

    def arrows(self) -> dict[tuple[str, str], int]:
        """Positive-weight arrows as {(label_from, label_to): weight2}."""
        out = {}
        for i in self.vertices():
            for j in self.vertices():
                if self.weight2[i][j] > 0:
                    out[(self.labels[i], self.labels[j])] = self.weight2[i][j]
        return out

    # -- serialization -----------------------------------------------------

    def to_json(self) -> dict:
        return {
            "vertices": [
                {"id": i, "label": self.labels[i], "frozen": i in self.frozen}
                for i in self.vertices()
            ],
            "weight2": [list(row) for row in self.weight2],
        }

    @staticmethod
    def from_json(doc: dict) -> "Seed":
        verts = sorted(doc["vertices"], key=lambda v: v["id"])
        return Seed(
            [v["label"] for v in verts],
            [v["id"] for v in verts if v["frozen"]],
            doc["weight2"],
        )

    def dump(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_json(), fh, indent=1, sort_keys=True)
            fh.write("\n")

    @staticmethod
    def load(path) -> "Seed":
        with open(path, encoding="utf-8") as fh:
            return Seed.from_json(json.load(fh))


def mutate_seed(seed: Seed, k: int) -> Seed:
    """Seed mutation at the unfrozen vertex k (three-case weight formula)."""
    if k in seed.frozen:
        raise FrozenVertex(f"cannot mutate at frozen vertex {k}")
    w = seed.weight2
    m = seed.size
    out = [list(row) for row in w]
    for i in range(m):
        for j in range(m):
            if i == k or j == k:
                out[i][j] = -w[i][j]
            elif w[i][k] * w[k][j] > 0:
                # w[i][k] is even because k is unfrozen
                out[i][j] = w[i][j] + (abs(w[i][k]) // 2) * w[k][j]
    return seed.with_weight2(out)


def amalgamate(
    q1: Seed, q2: Seed, pairs: Sequence[tuple[int, int]]
) -> tuple[Seed, list[int], list[int]]:
    """Glue q2 onto q1 along frozen vertex pairs (i1, i2), summing weights.

    Returns (seed, map1, map2) with mapX taking old vertex ids to new ones.
    Identified vertices remain frozen; use ``Seed.unfreeze`` afterwards for
    constructions that unfreeze the glued vertices.
    """
    glued1 = {a for a, _ in pairs}
    glued2 = {b for _, b in pairs}
    if len(glued1) != len(pairs) or len(glued2) != len(pairs):
        raise NonFrozenGlue("gluing map must be a bijection")
    for a, b in pairs:
        if a not in q1.frozen or b not in q2.frozen:
            raise NonFrozenGlue(f"glued pair ({a}, {b}) must be frozen on both sides")
    partner = {b: a for a, b in pairs}
    map1 = list(range(q1.size))
    map2 = [0] * q2.size
    labels = list(q1.labels)
    glue: list[tuple[int | None, int | None]] = [(i, None) for i in range(q1.size)]
    for a, b in pairs:
        map2[b] = a
        glue[a] = (a, b)
    nxt = q1.size
    for b in range(q2.size):
        if b not in partner:
            map2[b] = nxt
            labels.append(q2.labels[b])
            glue.append((None, b))
            nxt += 1
    m = nxt
    w = [[0] * m for _ in range(m)]
    for i in range(q1.size):
        for j in range(q1.size):
            w[map1[i]][map1[j]] += q1.weight2[i][j]
    for i in range(q2.size):
        for j in range(q2.size):
            w[map2[i]][map2[j]] += q2.weight2[i][j]
    frozen = {map1[v] for v in q1.frozen} | {map2[v] for v in q2.frozen}

    def remap(vmap, v):
        return tuple(vmap[x] for x in v) if isinstance(v, tuple) else vmap[v]

    coords = {k: remap(map1, v) for k, v in q1.coords.items()}
    for k, v in q2.coords.items():
        coords.setdefault(k, remap(map2, v))
    seed = Seed(labels, frozen, w, coords, glue)
    return seed, map1, map2


def self_amalgamate(
    q: Seed, i1: Sequence[int], i2: Sequence[int], phi: Mapping[int, int]
) -> tuple[Seed, list[int]]:
    """Glue a quiver to itself, identifying each v in i1 with phi(v) in i2.

    The identified vertices are unfrozen in the result.  Returns
    (seed, vmap) with vmap taking old ids to new ids.
    """
    s1, s2 = set(i1), set(i2)
    if s1 & s2:
        raise OverlappingSubsets("self-amalgamation subsets must be disjoint")
    if not (s1 <= q.frozen and s2 <= q.frozen):
        raise NonFrozenGlue("self-amalgamation subsets must be frozen")
    if set(phi.keys()) != s1 or set(phi.values()) != s2:
        raise NonFrozenGlue("phi must be a bijection i1 -> i2")
    drop = s2
    vmap = [0] * q.size
    labels = []
    nxt = 0
    for v in range(q.size):
        if v in drop:
            continue
        vmap[v] = nxt
        labels.append(q.labels[v])
        nxt += 1
    for v in s1:
        vmap[phi[v]] = vmap[v]
    m = nxt
    w = [[0] * m for _ in range(m)]
    for i in range(q.size):
        for j in range(q.size):
            w[vmap[i]][vmap[j]] += q.weight2[i][j]
    for v in range(m):
        if w[v][v] != 0:
            raise NonFrozenGlue("self-amalgamation produced a loop of nonzero weight")
    merged = {vmap[v] for v in s1}
    frozen = {vmap[v] for v in q.frozen} - merged
    coords = {k: vmap[v] for k, v in q.coords.items()}
    seed = Seed(labels, frozen, w, coords)
    return seed, vmap


# -- the Fock-Goncharov triangle -----------------------------------------


def build_fg_triangle(n: int) -> Seed:
    """The quiver of the n-triangulation of a triangle (all edges frozen).

    Edge AB carries the labels 1'..n' in the direction B -> A, edge AC the
    labels 1''..n'' in the direction A -> C.  Vertices on the edge BC are
    labelled b1..bn counting from B.
    """
    if n < 1:
        raise BadRank(f"triangle rank must be >= 1, got {n}")
    pts = []
    for a in range(n + 2):
        for b in range(n + 2 - a):
            if (a, b) in ((0, 0), (n + 1, 0), (0, n + 1)):
                continue
            pts.append((a, b))
    idx = {p: i for i, p in enumerate(pts)}
    labels = []
    for a, b in pts:
        if b == 0:
            labels.append(f"{n + 1 - a}'")
        elif a == 0:
            labels.append(f"{b}''")
        elif a + b == n + 1:
            labels.append(f"b{n + 1 - a}")
        else:
            labels.append(f"t{a},{b}")
    frozen = [idx[p] for p in pts if p[0] == 0 or p[1] == 0 or p[0] + p[1] == n + 1]
    m = len(pts)
    w = [[0] * m for _ in range(m)]

    def arrow(p, q, w2):
        w[idx[p]][idx[q]] += w2
        w[idx[q]][idx[p]] -= w2

    for a in range(n + 2):
        for b in range(n + 2 - a):
            if a + b <= n and b >= 1:
                arrow((a, b), (a + 1, b), 2)  # towards B
            if a + b <= n - 1:
                arrow((a + 1, b), (a, b + 1), 2)  # anti-diagonal
            if a + b <= n and a >= 1:
                arrow((a, b + 1), (a, b), 2)  # towards AB
    for a in range(1, n):  # dashed A -> B
        arrow((a, 0), (a + 1, 0), 1)
    for a in range(n, 1, -1):  # dashed B -> C
        arrow((a, n + 1 - a), (a - 1, n + 2 - a), 1)
    for b in range(n, 1, -1):  # dashed C -> A
        arrow((0, b), (0, b - 1), 1)

    coords: dict[Coord, int] = {("pt", a, b): i for (a, b), i in idx.items()}
    for i in range(1, n + 1):
        coords[("ab", i)] = idx[(n + 1 - i, 0)]
        coords[("ca", i)] = idx[(0, i)]
        coords[("bc", i)] = idx[(n + 1 - i, i)]
    return Seed(labels, frozen, w, coords)


def sigma_names(n: int, i: int, t: int) -> Coord:
    """Triangle lattice point of the loop vertex X_{i,t} of Sigma_n."""
    if not (1 <= i <= n and 0 <= t <= n):
        raise BadIndex(f"X[{i},{t}] is out of range for rank {n}")
    if t <= i:
        return ("pt", n + 1 - i, i - t)
    return ("pt", t - i, i)


def build_sigma(n: int) -> Seed:
    """Self-amalgamation of the triangle quiver along i' <-> i''.

    The loop through the frozen vertex X_{i,0} is labelled X_{i,0..n}; the
    identity X_{j,j-i} = X_{i,n+i-j+1} (i < j) holds by construction.
    Canonical display labels are ``X[i,k]`` with the lexicographically
    smallest name of each vertex.
    """
    if n < 1:
        raise BadRank(f"rank must be >= 1, got {n}")
    tri = build_fg_triangle(n)
    i1 = [tri.vertex(("ab", i)) for i in range(1, n + 1)]
    i2 = [tri.vertex(("ca", i)) for i in range(1, n + 1)]
    phi = dict(zip(i1, i2))
    seed, vmap = self_amalgamate(tri, i1, i2, phi)
    coords: dict[Coord, int] = {}
    canonical: dict[int, tuple[int, int]] = {}
    for i in range(1, n + 1):
        for t in range(n + 1):
            v = vmap[tri.vertex(sigma_names(n, i, t))]
            coords[("X", i, t)] = v
            if v not in canonical or (i, t) < canonical[v]:
                canonical[v] = (i, t)
    labels = [f"X[{canonical[v][0]},{canonical[v][1]}]" for v in range(seed.size)]
    return Seed(labels, seed.frozen, seed.weight2, coords)


#: display names used in the smallest examples (matching the usual pictures)
FIGURE_NAMES = {
    1: {(1, 0): "X2", (1, 1): "X1"},
    2: {(1, 0): "X5", (1, 1): "X1", (1, 2): "X3", (2, 0): "X4", (2, 2): "X2"},
    3: {
        (1, 0): "X9",
        (1, 1): "X1",
        (1, 2): "X6",
        (1, 3): "X4",
        (2, 0): "X5",
        (2, 2): "X2",
        (2, 3): "X7",
        (3, 0): "X8",
        (3, 3): "X3",
    },
}


def sigma_figure_names(seed: Seed, n: int) -> dict[int, str] | None:
    """Map vertex ids of Sigma_n (n <= 3) to the X1..X9 display names."""
    table = FIGURE_NAMES.get(n)
    if table is None:
        return None
    return {seed.vertex(("X", i, k)): name for (i, k), name in table.items()}


def build_sigma_prime(n: int) -> Seed:
    """Sigma_n with one extra frozen vertex X0 closing the rotation cycle."""
    sigma = build_sigma(n)
    m = sigma.size
    labels = list(sigma.labels) + ["X0"]
    frozen = set(sigma.frozen) | {m}
    w = [list(row) + [0] for row in sigma.weight2]
    w.append([0] * (m + 1))

    def arrow(i, j, w2):
        w[i][j] += w2
        w[j][i] -= w2

    arrow(sigma.vertex(("X", n, 0)), m, 1)  # dashed
    arrow(m, sigma.vertex(("X", 1, 0)), 1)  # dashed
    arrow(sigma.vertex(("X", 1, 1)), m, 2)  # weight one
    arrow(m, sigma.vertex(("X", n, n)), 2)  # weight one
    coords = dict(sigma.coords)
    coords[("X0",)] = m
    return Seed(labels, frozen, w, coords)


def coxeter_permutation(n: int) -> dict[int, int]:
    """The rotation of Sigma'_n as a permutation of vertex ids.

    X_{i,j} -> X_{i+1,j} for 1 <= j <= i < n, X_{n,j} -> X_{n-j+1,n-j+1}
    for j != 0, X_{i,0} -> X_{i+1,0} for i < n, X_{n,0} -> X0 and
    X0 -> X_{1,0}.
    """
    sp = build_sigma_prime(n)
    perm: dict[int, int] = {}
    for i in range(1, n):
        perm[sp.vertex(("X", i, 0))] = sp.vertex(("X", i + 1, 0))
    perm[sp.vertex(("X", n, 0))] = sp.vertex(("X0",))
    perm[sp.vertex(("X0",))] = sp.vertex(("X", 1, 0))
    for i in range(1, n):
        for j in range(1, i + 1):
            perm[sp.vertex(("X", i, j))] = sp.vertex(("X", i + 1, j))
    for j in range(1, n + 1):
        perm[sp.vertex(("X", n, j))] = sp.vertex(("X", n - j + 1, n - j + 1))
    if sorted(perm) != list(sp.vertices()) or sorted(perm.values()) != list(
        sp.vertices()
    ):
        raise BadRank("rotation is not a permutation")  # pragma: no cover
    return perm


# -- the double quiver ----------------------------------------------------


def build_dn(n: int) -> Seed:
    """Two triangle quivers glued along both non-BC edges.

    Copy L keeps its BC edge as the left (V) column, copy R as the right
    (Lambda) column; the gluing identifies i' of one copy with (n+1-i)'' of
    the other, cancelling the dashed boundary arrows of the glued edges.
    The glued vertices are unfrozen, matching the usual picture.

    Rows: ("Vrow", i) lists the wire from V_i to L_{n+1-i}; ("Lrow", i)
    the wire from L_i to V_{n+1-i}.  Each has 2(n+1-i)+1 vertices.
    """
    if n < 1:
        raise BadRank(f"rank must be >= 1, got {n}")
    left = build_fg_triangle(n)
    right = build_fg_triangle(n)
    pairs = []
    for i in range(1, n + 1):
        pairs.append((left.vertex(("ab", i)), right.vertex(("ca", n + 1 - i))))
        pairs.append((left.vertex(("ca", i)), right.vertex(("ab", n + 1 - i))))
    seed, map1, map2 = amalgamate(left, right, pairs)
    seed = seed.unfreeze(map1[a] for a, _ in pairs)

    coords: dict[Coord, int] = {}
    labels = [""] * seed.size
    for i in range(1, n + 1):
        vrow = [map1[left.vertex(("pt", i, b))] for b in range(n + 1 - i, -1, -1)]
        vrow += [map2[right.vertex(("pt", a, i))] for a in range(1, n + 2 - i)]
        lrow = [map2[right.vertex(("pt", i, b))] for b in range(n + 1 - i, -1, -1)]
        lrow += [map1[left.vertex(("pt", a, i))] for a in range(1, n + 2 - i)]
        coords[("Vrow", i)] = tuple(vrow)
        coords[("Lrow", i)] = tuple(lrow)
        coords[("V", i)] = vrow[0]
        coords[("L", i)] = lrow[0]
        labels[vrow[0]] = f"V{i}"
        labels[lrow[0]] = f"L{i}"
        for pos, v in enumerate(vrow[1:-1], start=1):
            labels[v] = f"D{i},{pos - (n + 1 - i)}"
    return Seed(labels, seed.frozen, seed.weight2, coords)


def build_zn(n: int) -> Seed:
    """Amalgamation of Sigma_n and D_n identifying X_{i,0} with V_i.

    The glued vertices are unfrozen.  The glue record maps every vertex to
    its (Sigma_n, D_n) originals, which is what the tensor embedding of the
    torus algebra consumes.
    """
    sigma = build_sigma(n)
    dn = build_dn(n)
    pairs = [(sigma.vertex(("X", i, 0)), dn.vertex(("V", i))) for i in range(1, n + 1)]
    seed, map1, map2 = amalgamate(sigma, dn, pairs)
    seed = seed.unfreeze(map1[a] for a, _ in pairs)
    return seed


def coideal_paths(n: int) -> list[tuple[int, ...]]:
    """The loops L_i in Z_n, each of length 3n+4 (first entry repeated last).

    L_i starts at L_{n+1-i}, walks the Lambda-row into V_i = X_{i,0}, runs
    once around the Sigma_n loop of row i, and walks the V-row back.
    """
    zn = build_zn(n)
    paths = []
    for i in range(1, n + 1):
        lrow = zn.coords[("Lrow", n + 1 - i)]
        vrow = zn.coords[("Vrow", i)]
        loop = [zn.vertex(("X", i, t)) for t in range(1, n + 1)]
        path = list(lrow) + loop + [zn.vertex(("X", i, 0))] + list(vrow[1:])
        paths.append(tuple(path))
    return paths
