import itertools
import random

import pytest

from iqcluster.errors import (
    BadRank,
    FrozenVertex,
    NonFrozenGlue,
    OverlappingSubsets,
)
from iqcluster.quivers import (
    Seed,
    amalgamate,
    build_dn,
    build_fg_triangle,
    build_sigma,
    build_sigma_prime,
    build_zn,
    coideal_paths,
    coxeter_permutation,
    mutate_seed,
    self_amalgamate,
    sigma_figure_names,
)


def seed_invariants(seed):
    m = seed.size
    for i in range(m):
        assert seed.weight2[i][i] == 0
        for j in range(m):
            assert seed.weight2[i][j] == -seed.weight2[j][i]
            if seed.weight2[i][j] % 2:
                assert i in seed.frozen and j in seed.frozen


def arrows_by(seed, names):
    """Positive arrows as {(name_i, name_j): weight2} for a vertex naming."""
    inv = {}
    for name, v in names.items():
        inv.setdefault(v, name)
    out = {}
    for i in range(seed.size):
        for j in range(seed.size):
            if seed.weight2[i][j] > 0 and i in inv and j in inv:
                out[(inv[i], inv[j])] = seed.weight2[i][j]
    return out


# -- seed mutation ---------------------------------------------------------


def four_vertex_example():
    # two unfrozen vertices 1, 2 and two frozen 3, 4; a weight-2 arrow
    # 2 => 1, plain arrows 2 -> 3, 4 -> 2, 1 -> 4 and a dashed 3 -> 4
    w = [[0] * 4 for _ in range(4)]

    def arrow(i, j, w2):
        w[i][j] += w2
        w[j][i] -= w2

    arrow(1, 0, 4)
    arrow(1, 2, 2)
    arrow(3, 1, 2)
    arrow(2, 3, 1)
    arrow(0, 3, 2)
    return Seed(["1", "2", "3", "4"], [2, 3], w)


def test_mutation_four_vertex_example():
    s = mutate_seed(four_vertex_example(), 1)
    expected = {
        ("1", "2"): 4,
        ("3", "2"): 2,
        ("2", "4"): 2,
        ("4", "3"): 1,
        ("4", "1"): 2,
    }
    assert s.arrows() == expected
    seed_invariants(s)


def test_mutation_is_involutive():
    s = four_vertex_example()
    assert mutate_seed(mutate_seed(s, 0), 0) == s
    assert mutate_seed(mutate_seed(s, 1), 1) == s


def test_mutation_frozen_vertex_rejected():
    with pytest.raises(FrozenVertex):
        mutate_seed(four_vertex_example(), 3)


def pictorial_mutation_oracle(seed, k):
    """Second transcription of the mutation rule, via the 3-step quiver
    recipe: reverse at k, then compose reversed pairs k->i, j->k into i->j,
    then cancel opposite arrows.  Works on weight-2 integers directly."""
    m = seed.size
    w = [[seed.weight2[i][j] for j in range(m)] for i in range(m)]
    for i in range(m):
        w[i][k], w[k][i] = -w[i][k], -w[k][i]
    add = [[0] * m for _ in range(m)]
    for i in range(m):
        for j in range(m):
            if i == k or j == k or i == j:
                continue
            # reversed arrows k->i of weight u and j->k of weight v
            u, v = w[k][i], w[j][k]
            if u > 0 and v > 0:
                add[i][j] += u * v // 2
                add[j][i] -= u * v // 2
    for i in range(m):
        for j in range(m):
            w[i][j] += add[i][j]
    return seed.with_weight2(w)


def test_mutation_matches_pictorial_rule_on_random_seeds():
    rng = random.Random(7)
    for _ in range(40):
        m = 5
        w = [[0] * m for _ in range(m)]
        frozen = {3, 4}
        for i in range(m):
            for j in range(i + 1, m):
                w2 = rng.randint(-2, 2) * 2
                if i in frozen and j in frozen and rng.random() < 0.5:
                    w2 += rng.choice([-1, 1])
                w[i][j] = w2
                w[j][i] = -w2
        s = Seed([str(v) for v in range(m)], frozen, w)
        for k in range(3):
            assert mutate_seed(s, k) == pictorial_mutation_oracle(s, k)
            assert mutate_seed(mutate_seed(s, k), k) == s


# -- amalgamation ----------------------------------------------------------


def test_amalgamate_disjoint_union():
    s = four_vertex_example()
    glued, m1, m2 = amalgamate(s, s, [])
    assert glued.size == 8
    assert glued.weight2[m1[1]][m1[0]] == 4
    assert glued.weight2[m2[1]][m2[0]] == 4
    assert glued.weight2[m1[1]][m2[0]] == 0


def test_amalgamate_sums_dashed_weights():
    # two dashed half-arrows between glued frozen pairs add up to weight 1
    w = [[0, 1], [-1, 0]]
    s = Seed(["a", "b"], [0, 1], w)
    glued, m1, m2 = amalgamate(s, s, [(0, 0), (1, 1)])
    assert glued.size == 2
    assert glued.weight2[m1[0]][m1[1]] == 2


def test_amalgamate_rejects_unfrozen():
    s = four_vertex_example()
    with pytest.raises(NonFrozenGlue):
        amalgamate(s, s, [(0, 0)])


def test_self_amalgamate_bookkeeping():
    tri = build_fg_triangle(2)
    i1 = [tri.vertex(("ab", i)) for i in (1, 2)]
    i2 = [tri.vertex(("ca", i)) for i in (1, 2)]
    merged, vmap = self_amalgamate(tri, i1, i2, dict(zip(i1, i2)))
    assert merged.size == tri.size - 2
    # merged vertices are unfrozen, the rest of the old frozen set remains
    assert vmap[i1[0]] == vmap[i2[0]]
    assert vmap[i1[0]] not in merged.frozen
    assert len(merged.frozen) == len(tri.frozen) - 4
    with pytest.raises(OverlappingSubsets):
        self_amalgamate(tri, i1, i1, {v: v for v in i1})
    seed_invariants(merged)


# -- the triangle quiver ---------------------------------------------------


def test_triangle_vertex_counts():
    for n in range(1, 6):
        tri = build_fg_triangle(n)
        # enumeration oracle: lattice points of the (n+1)-step triangle
        pts = [
            (a, b)
            for a in range(n + 2)
            for b in range(n + 2 - a)
            if (a, b) not in ((0, 0), (n + 1, 0), (0, n + 1))
        ]
        assert tri.size == len(pts) == (n + 2) * (n + 3) // 2 - 3
        assert len(tri.frozen) == 3 * n
        seed_invariants(tri)


def test_triangle_rank_one_is_oriented_triangle():
    tri = build_fg_triangle(1)
    assert tri.size == 3
    assert len(tri.frozen) == 3
    assert tri.arrows() == {("b1", "1'"): 2, ("1'", "1''"): 2, ("1''", "b1"): 2}


def test_triangle_two_matches_figure():
    tri = build_fg_triangle(2)
    names = {
        "1''": tri.vertex(("pt", 0, 1)),
        "2''": tri.vertex(("pt", 0, 2)),
        "2'": tri.vertex(("pt", 1, 0)),
        "t": tri.vertex(("pt", 1, 1)),
        "b2": tri.vertex(("pt", 1, 2)),
        "1'": tri.vertex(("pt", 2, 0)),
        "b1": tri.vertex(("pt", 2, 1)),
    }
    expected = {
        ("b1", "1'"): 2,
        ("b1", "b2"): 1,
        ("t", "b1"): 2,
        ("1'", "t"): 2,
        ("t", "2'"): 2,
        ("2'", "1'"): 1,
        ("b2", "t"): 2,
        ("2'", "1''"): 2,
        ("1''", "t"): 2,
        ("t", "2''"): 2,
        ("2''", "b2"): 2,
        ("2''", "1''"): 1,
    }
    assert arrows_by(tri, names) == expected


def test_triangle_three_matches_figure():
    tri = build_fg_triangle(3)
    pos = {
        1: (0, 1),
        2: (0, 2),
        3: (0, 3),
        4: (1, 0),
        5: (1, 1),
        6: (1, 2),
        7: (1, 3),
        8: (2, 0),
        9: (2, 1),
        10: (2, 2),
        11: (3, 0),
        12: (3, 1),
    }
    names = {k: tri.vertex(("pt",) + v) for k, v in pos.items()}
    dashed = [(2, 1), (3, 2), (10, 7), (12, 10), (8, 11), (4, 8)]
    solid = [
        (3, 7), (12, 11), (4, 1),
        (9, 12), (5, 9), (1, 5), (6, 10), (2, 6),
        (6, 3), (9, 6), (11, 9), (5, 2), (8, 5),
        (7, 6), (6, 5), (5, 4), (10, 9), (9, 8),
    ]
    expected = {p: 1 for p in dashed}
    expected.update({p: 2 for p in solid})
    assert arrows_by(tri, names) == expected


# -- Sigma_n ----------------------------------------------------------------


def test_sigma_counts_and_invariants():
    for n in range(1, 6):
        s = build_sigma(n)
        assert s.size == (n + 2) * (n + 3) // 2 - 3 - n
        assert len(s.frozen) == n
        seed_invariants(s)
        # every loop label resolves, X_{i,0} frozen, the rest unfrozen
        for i in range(1, n + 1):
            assert s.vertex(("X", i, 0)) in s.frozen
            for t in range(1, n + 1):
                assert s.vertex(("X", i, t)) not in s.frozen


def test_sigma_relabel_identity():
    for n in range(1, 6):
        s = build_sigma(n)
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                assert s.vertex(("X", j, j - i)) == s.vertex(("X", i, n + i - j + 1))


def test_sigma1_is_disconnected_pair():
    s = build_sigma(1)
    assert s.size == 2
    assert len(s.frozen) == 1
    assert all(w == 0 for row in s.weight2 for w in row)


def test_sigma2_matches_figure():
    s = build_sigma(2)
    names = {name: v for v, name in sigma_figure_names(s, 2).items()}
    expected = {
        ("X5", "X4"): 1,
        ("X5", "X1"): 2,
        ("X3", "X5"): 2,
        ("X4", "X3"): 2,
        ("X2", "X4"): 2,
        ("X1", "X3"): 4,
        ("X3", "X2"): 4,
        ("X2", "X1"): 4,
    }
    assert arrows_by(s, names) == expected


def test_sigma3_matches_figure():
    s = build_sigma(3)
    names = {name: v for v, name in sigma_figure_names(s, 3).items()}
    dashed = [("X9", "X5"), ("X5", "X8")]
    solid = [
        ("X9", "X1"), ("X1", "X6"), ("X6", "X4"), ("X4", "X9"),
        ("X5", "X4"), ("X4", "X2"), ("X2", "X7"), ("X7", "X5"),
        ("X8", "X7"), ("X7", "X6"), ("X6", "X3"), ("X3", "X8"),
        ("X1", "X4"), ("X4", "X7"), ("X7", "X3"), ("X3", "X1"),
        ("X2", "X1"), ("X3", "X2"),
    ]
    expected = {p: 1 for p in dashed}
    expected.update({p: 2 for p in solid})
    assert arrows_by(s, names) == expected


def test_sigma_example_labels():
    s3 = build_sigma(3)
    fig = sigma_figure_names(s3, 3)
    assert fig[s3.vertex(("X", 1, 0))] == "X9"
    assert fig[s3.vertex(("X", 1, 1))] == "X1"
    assert fig[s3.vertex(("X", 1, 2))] == "X6"
    assert fig[s3.vertex(("X", 1, 3))] == "X4"
    s2 = build_sigma(2)
    assert s2.vertex(("X", 1, 2)) == s2.vertex(("X", 2, 1))


def test_bad_rank():
    for builder in (build_fg_triangle, build_sigma, build_dn, build_zn):
        with pytest.raises(BadRank):
            builder(0)


# -- Sigma'_n and the rotation ----------------------------------------------


def test_sigma_prime_2_matches_figure():
    sp = build_sigma_prime(2)
    names = {name: v for v, name in sigma_figure_names(sp, 2).items()}
    names["X0"] = sp.vertex(("X0",))
    expected = {
        ("X5", "X4"): 1,
        ("X4", "X0"): 1,
        ("X0", "X5"): 1,
        ("X5", "X1"): 2,
        ("X3", "X5"): 2,
        ("X4", "X3"): 2,
        ("X2", "X4"): 2,
        ("X1", "X0"): 2,
        ("X0", "X2"): 2,
        ("X1", "X3"): 4,
        ("X3", "X2"): 4,
        ("X2", "X1"): 4,
    }
    assert arrows_by(sp, names) == expected


def test_sigma_prime_3_matches_figure():
    sp = build_sigma_prime(3)
    names = {name: v for v, name in sigma_figure_names(sp, 3).items()}
    names["X0"] = sp.vertex(("X0",))
    dashed = [("X9", "X5"), ("X5", "X8"), ("X8", "X0"), ("X0", "X9")]
    solid = [
        ("X9", "X1"), ("X1", "X0"), ("X0", "X3"), ("X3", "X8"),
        ("X8", "X7"), ("X7", "X5"), ("X5", "X4"), ("X4", "X9"),
        ("X4", "X7"), ("X7", "X3"), ("X3", "X1"), ("X1", "X4"),
        ("X4", "X2"), ("X2", "X7"), ("X7", "X6"), ("X6", "X4"),
        ("X1", "X6"), ("X6", "X3"), ("X3", "X2"), ("X2", "X1"),
    ]
    expected = {p: 1 for p in dashed}
    expected.update({p: 2 for p in solid})
    assert arrows_by(sp, names) == expected


def test_rotation_examples_rank2():
    sp = build_sigma_prime(2)
    fig = sigma_figure_names(sp, 2)
    fig[sp.vertex(("X0",))] = "X0"
    rho = coxeter_permutation(2)
    moved = {fig[a]: fig[b] for a, b in rho.items()}
    assert moved == {
        "X5": "X4",
        "X4": "X0",
        "X0": "X5",
        "X1": "X3",
        "X3": "X2",
        "X2": "X1",
    }


def test_rotation_examples_rank3():
    sp = build_sigma_prime(3)
    fig = sigma_figure_names(sp, 3)
    fig[sp.vertex(("X0",))] = "X0"
    rho = coxeter_permutation(3)
    moved = {fig[a]: fig[b] for a, b in rho.items()}
    assert moved["X9"] == "X5"
    assert moved["X2"] == "X6"
    assert moved["X6"] == "X2"
    assert moved == {
        "X9": "X5", "X5": "X8", "X8": "X0", "X0": "X9",
        "X1": "X4", "X4": "X7", "X7": "X3", "X3": "X1",
        "X2": "X6", "X6": "X2",
    }


def test_rotation_order_and_weight_invariance():
    for n in range(1, 7):
        sp = build_sigma_prime(n)
        rho = coxeter_permutation(n)
        # quiver automorphism: weights are preserved exactly
        for i in range(sp.size):
            for j in range(sp.size):
                assert sp.weight2[rho[i]][rho[j]] == sp.weight2[i][j]
        # order n + 1
        perm = dict(rho)
        order = 1
        cur = perm
        while any(cur[v] != v for v in sp.vertices()):
            cur = {v: perm[cur[v]] for v in sp.vertices()}
            order += 1
        assert order == n + 1


def test_mutation_involutive_on_all_named_quivers():
    for n in (1, 2, 3):
        for seed in (build_sigma(n), build_sigma_prime(n), build_dn(n)):
            for k in seed.unfrozen():
                assert mutate_seed(mutate_seed(seed, k), k) == seed


# -- D_n ---------------------------------------------------------------------


def test_dn_counts():
    for n in range(1, 5):
        dn = build_dn(n)
        assert dn.size == 2 * ((n + 2) * (n + 3) // 2 - 3) - 2 * n
        assert len(dn.frozen) == 2 * n
        seed_invariants(dn)
        for i in range(1, n + 1):
            assert len(dn.coords[("Vrow", i)]) == 2 * (n + 1 - i) + 1
            assert dn.coords[("Vrow", i)][-1] == dn.coords[("Lrow", n + 1 - i)][0]
            assert dn.coords[("Lrow", i)][-1] == dn.coords[("Vrow", n + 1 - i)][0]


def test_d3_matches_figure():
    dn = build_dn(3)
    v1, v2, v3 = (dn.coords[("Vrow", i)] for i in (1, 2, 3))
    l1, l2, l3 = (dn.coords[("Lrow", i)] for i in (1, 2, 3))
    names = {}
    for fig, vid in zip(range(9, 16), v1):
        names[fig] = vid
    for fig, vid in zip(range(4, 9), v2):
        names[fig] = vid
    for fig, vid in zip(range(1, 4), v3):
        names[fig] = vid
    names[16] = l1[3]
    names[17] = l2[2]
    names[18] = l3[1]
    assert len(set(names.values())) == 18
    inv = {fig: vid for fig, vid in names.items()}
    solid = [
        (1, 2), (2, 3),
        (4, 5), (5, 6), (6, 7), (7, 8),
        (9, 10), (10, 11), (11, 12), (12, 13), (13, 14), (14, 15),
        (15, 18), (18, 9),
        (8, 14), (14, 17), (17, 10), (10, 4),
        (3, 7), (7, 13), (13, 16), (16, 11), (11, 5), (5, 1),
        (6, 11), (11, 17), (17, 13), (13, 6),
        (2, 5), (5, 10), (10, 18), (18, 14), (14, 7), (7, 2),
    ]
    dashed = [(1, 4), (4, 9), (8, 3), (15, 8)]
    expected = {p: 2 for p in solid}
    expected.update({p: 1 for p in dashed})
    got = {}
    for a in range(1, 19):
        for b in range(1, 19):
            w2 = dn.weight2[inv[a]][inv[b]]
            if w2 > 0:
                got[(a, b)] = w2
    assert got == expected
    # frozen columns are exactly V1..V3 and L1..L3
    assert dn.frozen == {inv[1], inv[4], inv[9], inv[3], inv[8], inv[15]}


# -- Z_n and the coideal paths -----------------------------------------------


def z2_figure_names():
    zn = build_zn(2)
    c = zn.coords
    return zn, {
        1: c[("Lrow", 2)][0],
        2: c[("Lrow", 2)][1],
        3: c[("X", 1, 0)],
        4: c[("Lrow", 1)][0],
        5: c[("Lrow", 1)][1],
        6: c[("Lrow", 1)][2],
        7: c[("Lrow", 1)][3],
        8: c[("X", 2, 0)],
        9: c[("Vrow", 2)][1],
        10: c[("Vrow", 1)][2],
        11: c[("X", 2, 1)],
        12: c[("X", 1, 1)],
        13: c[("X", 2, 2)],
    }


def test_z2_matches_figure():
    zn, names = z2_figure_names()
    assert zn.size == 13
    assert len(set(names.values())) == 13
    solid = [
        (5, 6), (6, 7), (7, 10), (10, 5),
        (1, 2), (2, 3), (3, 7), (7, 8), (8, 9), (9, 4), (4, 5), (5, 1),
        (5, 9), (9, 7), (7, 2), (2, 5),
        (11, 3), (8, 11), (3, 12), (13, 8),
    ]
    double = [(12, 11), (11, 13), (13, 12)]
    dashed = [(1, 4)]
    expected = {p: 2 for p in solid}
    expected.update({p: 4 for p in double})
    expected.update({p: 1 for p in dashed})
    got = {}
    for a in range(1, 14):
        for b in range(1, 14):
            w2 = zn.weight2[names[a]][names[b]]
            if w2 > 0:
                got[(a, b)] = w2
    assert got == expected
    assert zn.frozen == {names[1], names[4]}


def test_z2_paths_match_printed_lists():
    zn, names = z2_figure_names()
    back = {v: fig for fig, v in names.items()}
    p1, p2 = coideal_paths(2)
    assert tuple(back[v] for v in p1) == (1, 2, 3, 12, 11, 3, 7, 10, 5, 1)
    assert tuple(back[v] for v in p2) == (4, 5, 6, 7, 8, 11, 13, 8, 9, 4)


def test_path_lengths():
    for n in range(1, 6):
        for i, path in enumerate(coideal_paths(n), start=1):
            assert len(path) == 3 * n + 4
            assert path[0] == path[-1]
            zn = None  # length and closure only; content pinned at n = 2


def test_zn_counts():
    for n in (1, 2, 3):
        zn = build_zn(n)
        sigma_size = (n + 2) * (n + 3) // 2 - 3 - n
        dn_size = 2 * ((n + 2) * (n + 3) // 2 - 3) - 2 * n
        assert zn.size == sigma_size + dn_size - n
        assert len(zn.frozen) == n
        seed_invariants(zn)
        assert zn.glue is not None


# -- serialization -----------------------------------------------------------


def test_json_roundtrip(tmp_path):
    s = build_sigma(3)
    path = tmp_path / "s3.json"
    s.dump(path)
    loaded = Seed.load(path)
    assert loaded == Seed(s.labels, s.frozen, s.weight2)
