import random
from statistics import mean

import pytest

from permute_evo import crossover as cr
from permute_evo.core import RandomSource, ScriptedRandom, UnknownOperatorError, validate
from permute_evo.distances import cyclic_edge

from _draws import mask_draws, precedences, shuffle_draws, undirected_edges


def cross(op, p1, p2, draws, fallback=None, **kw):
    a, b = list(p1), list(p2)
    rng = ScriptedRandom(draws, fallback=fallback)
    c1, c2 = op(a, b, rng, **kw)
    assert c1 is a and c2 is b
    if fallback is None:
        assert rng.remaining == 0
    return c1, c2


def random_pair(rng, n):
    return rng.sample(range(n), n), rng.sample(range(n), n)


# -- worked examples ---------------------------------------------------------------

P8 = [0, 1, 2, 3, 4, 5, 6, 7]
Q8 = [1, 2, 0, 5, 6, 7, 4, 3]


@pytest.mark.parametrize("start", [0, 2, 4])
def test_cx_example(start):
    c1, c2 = cross(cr.cx, [0, 1, 2, 3, 4, 5], [2, 1, 4, 5, 0, 3], [start])
    assert c1 == [2, 1, 4, 3, 0, 5]
    assert c2 == [0, 1, 2, 5, 4, 3]


@pytest.mark.parametrize("start", [0, 1])
def test_cx_two_cycle(start):
    assert cross(cr.cx, [1, 0], [0, 1], [start]) == ([0, 1], [1, 0])


def test_er_example():
    # ties: {0, 2, 4} after 3 -> 4; {0, 1} after 4 -> 1; {0, 2} after 1 -> 0
    c1, _ = cross(cr.er, [3, 0, 2, 1, 4], [4, 3, 2, 1, 0], [1, 1, 0], fallback=RandomSource(0))
    assert c1 == [3, 4, 1, 0, 2]


def test_ox_example():
    assert cross(cr.ox, P8, Q8, [2, 4]) == ([6, 7, 2, 3, 4, 1, 0, 5], [4, 7, 0, 5, 6, 1, 2, 3])
    assert cross(cr.ox, P8, Q8, [4, 2]) == ([6, 7, 2, 3, 4, 1, 0, 5], [4, 7, 0, 5, 6, 1, 2, 3])


def test_nwox_example():
    assert cross(cr.nwox, P8, Q8, [2, 4]) == ([1, 0, 2, 3, 4, 5, 6, 7], [1, 2, 0, 5, 6, 3, 4, 7])


def test_uobx_example():
    c = cross(cr.uobx, [3, 0, 6, 2, 5, 1, 4, 7], [7, 6, 5, 4, 3, 2, 1, 0], mask_draws(8, {0, 3, 4, 6}))
    assert c == ([3, 7, 6, 2, 5, 1, 4, 0], [7, 0, 6, 4, 3, 2, 1, 5])


def test_ox2_example():
    c = cross(cr.ox2, [1, 0, 3, 2, 5, 4, 7, 6], [6, 7, 4, 5, 2, 3, 0, 1], mask_draws(8, {1, 2, 6, 7}))
    assert c == ([7, 4, 3, 2, 5, 0, 1, 6], [0, 3, 4, 5, 2, 7, 6, 1])


def test_ppx_example():
    c = cross(cr.ppx, [7, 6, 5, 4, 3, 2, 1, 0], P8, [3, 5])
    assert c == ([7, 6, 5, 0, 1, 2, 4, 3], [0, 1, 2, 7, 6, 5, 3, 4])


def test_pmx_example():
    c1, c2 = cross(cr.pmx, P8, Q8, [2, 4])
    assert (c1, c2) == ([2, 1, 0, 5, 6, 3, 4, 7], [1, 0, 2, 3, 4, 7, 6, 5])
    assert c1[2:5] == Q8[2:5] and c2[2:5] == P8[2:5]


def test_upmx_example():
    p1, p2 = [7, 6, 5, 4, 3, 2, 1, 0], [1, 2, 0, 5, 6, 4, 7, 3]
    c = cross(cr.upmx, p1, p2, mask_draws(8, {1, 3, 6}))
    assert c == ([1, 2, 4, 5, 3, 6, 7, 0], [7, 6, 0, 4, 2, 5, 1, 3])


def test_pbx_example():
    # entries start in element order; the example shuffles them to 3,5,0,2,1,4
    # and flips the index pairs of elements 5 and 1
    order = [3, 5, 0, 2, 1, 4]
    draws = shuffle_draws(range(6), order) + [0.1 if e in (5, 1) else 0.9 for e in order]
    c = cross(cr.pbx, [2, 5, 1, 4, 3, 0], [5, 4, 3, 2, 1, 0], draws)
    assert c == ([5, 2, 1, 4, 3, 0], [4, 5, 3, 2, 1, 0])


# -- degenerate inputs ---------------------------------------------------------------

ORDER_OPS = ["cx", "nwox", "uobx", "ox2", "ppx", "uppx", "pmx", "upmx", "pbx"]


@pytest.mark.parametrize("name", ORDER_OPS)
def test_identical_parents_fixed_point(name):
    op = cr.get_crossover(name)
    rng = RandomSource(1)
    for n in (1, 2, 5, 17):
        p = random.Random(n).sample(range(n), n)
        c1, c2 = op(p[:], p[:], rng)
        assert c1 == p and c2 == p


@pytest.mark.parametrize("name", ["er", "eer"])
def test_edge_ops_identical_parents(name):
    op = cr.get_crossover(name)
    rng = RandomSource(2)
    for n in (3, 5, 17, 40):
        p = random.Random(n).sample(range(n), n)
        c1, c2 = op(p[:], p[:], rng)
        assert cyclic_edge(c1, p) == 0 and cyclic_edge(c2, p) == 0


def test_ox_identical_parents_rotate_the_rest():
    # the rest is laid down from just after the region in parent order, so
    # identical parents keep the region but not the other positions
    p = [0, 1, 2, 3, 4]
    assert cross(cr.ox, p, p, [1, 2]) == ([4, 1, 2, 0, 3], [4, 1, 2, 0, 3])
    rng = RandomSource(5)
    for _ in range(500):
        q = list(range(9))
        rng.shuffle(q)
        c1, c2 = cr.ox(q[:], q[:], rng)
        assert c1 == c2 and validate(c1)


def test_full_region_keeps_parents():
    for op in (cr.ox, cr.nwox):
        assert cross(op, P8, Q8, [0, 7]) == (P8, Q8)


def test_masks_all_or_nothing():
    p1, p2 = [3, 0, 6, 2, 5, 1, 4, 7], [7, 6, 5, 4, 3, 2, 1, 0]
    everything, nothing = mask_draws(8, set(range(8))), mask_draws(8, set())
    assert cross(cr.uobx, p1, p2, everything) == (p1, p2)
    assert cross(cr.ox2, p1, p2, nothing) == (p1, p2)
    assert cross(cr.upmx, p1, p2, nothing) == (p1, p2)
    assert cross(cr.uppx, p1, p2, everything) == (p1, p2)
    assert cross(cr.uppx, p1, p2, nothing) == (p2, p1)


def test_u_extremes():
    rng = RandomSource(3)
    p1, p2 = random_pair(random.Random(3), 30)
    assert cr.uobx(p1[:], p2[:], rng, u=1.0) == (p1, p2)
    assert cr.ox2(p1[:], p2[:], rng, u=0.0) == (p1, p2)
    assert cr.uppx(p1[:], p2[:], rng, u=0.0) == (p2, p1)


# -- feature inheritance ---------------------------------------------------------------

@pytest.mark.parametrize("name", ["ppx", "uppx"])
def test_precedence_inheritance(name):
    op = cr.get_crossover(name)
    rng = random.Random(name)
    src = RandomSource(len(name))
    for _ in range(1000):
        n = rng.randint(2, 8)
        p1, p2 = random_pair(rng, n)
        allowed = precedences(p1) | precedences(p2)
        c1, c2 = op(p1[:], p2[:], src)
        assert precedences(c1) <= allowed
        assert precedences(c2) <= allowed


def _groups(name, p1, p2, seed):
    """Split c1's elements by the parent whose relative order they keep."""
    n = len(p1)
    rng = RandomSource(seed)
    if name == "nwox":
        i, j = cr.cross_region(n, rng)
        own = set(p1[i:j + 1])
    elif name == "uobx":
        fixed = cr._mask(n, 0.5, rng)
        own = {p1[k] for k in range(n) if fixed[k]}
    else:
        chosen = cr._mask(n, 0.5, rng)
        own = set(range(n)) - {p2[k] for k in range(n) if chosen[k]}
    return own, set(range(n)) - own


@pytest.mark.parametrize("name", ["nwox", "uobx", "ox2"])
def test_order_groups_keep_parent_precedences(name):
    op = cr.get_crossover(name)
    rng = random.Random(name)
    for seed in range(2000):
        n = rng.randint(2, 8)
        p1, p2 = random_pair(rng, n)
        c1, _ = op(p1[:], p2[:], RandomSource(seed))
        own, other = _groups(name, p1, p2, seed)
        assert precedences([x for x in c1 if x in own]) <= precedences(p1)
        assert precedences([x for x in c1 if x in other]) <= precedences(p2)


def test_worked_examples_flip_mixed_pairs():
    # the literal all-pairs property fails on the worked examples themselves
    p1, p2 = [3, 0, 6, 2, 5, 1, 4, 7], [7, 6, 5, 4, 3, 2, 1, 0]
    _, c2 = cross(cr.uobx, p1, p2, mask_draws(8, {0, 3, 4, 6}))
    assert (0, 3) in precedences(c2) - precedences(p1) - precedences(p2)
    c1, _ = cross(cr.cx, [0, 1, 2, 3, 4, 5], [2, 1, 4, 5, 0, 3], [0])
    assert (3, 0) in precedences(c1) - precedences([0, 1, 2, 3, 4, 5]) - precedences([2, 1, 4, 5, 0, 3])
    c1, _ = cross(cr.nwox, [0, 1, 2], [1, 2, 0], [1, 1])
    assert c1 == [2, 1, 0] and (2, 1) not in precedences([0, 1, 2]) | precedences([1, 2, 0])


def test_cx_same_origin_precedences():
    # pairs whose elements both came from the same parent keep that
    # parent's order; mixed pairs carry no such guarantee
    rng = random.Random(17)
    src = RandomSource(17)
    for _ in range(3000):
        n = rng.randint(2, 8)
        p1, p2 = random_pair(rng, n)
        c1, c2 = cr.cx(p1[:], p2[:], src)
        for child in (c1, c2):
            for origin in (p1, p2):
                mine = [x for k, x in enumerate(child) if origin[k] == x]
                assert precedences(mine) <= precedences(origin)


def test_cx_mixed_origin_pair_can_flip():
    p1, p2 = [0, 1, 2, 3], [2, 3, 0, 1]
    c1, _ = cross(cr.cx, p1, p2, [0])
    assert c1 == [2, 1, 0, 3]
    assert (1, 0) in precedences(c1) - (precedences(p1) | precedences(p2))


def test_cx_position_inheritance():
    rng = random.Random(4)
    src = RandomSource(4)
    for _ in range(5000):
        n = rng.randint(1, 12)
        p1, p2 = random_pair(rng, n)
        c1, c2 = cr.cx(p1[:], p2[:], src)
        for k in range(n):
            assert c1[k] in (p1[k], p2[k]) and c2[k] in (p1[k], p2[k])
            assert {c1[k], c2[k]} == {p1[k], p2[k]}


def test_pmx_region_taken_from_other_parent():
    rng = random.Random(5)
    for seed in range(2000):
        n = rng.randint(2, 15)
        p1, p2 = random_pair(rng, n)
        i, j = cr.cross_region(n, RandomSource(seed))
        c1, c2 = cr.pmx(p1[:], p2[:], RandomSource(seed))
        assert c1[i:j + 1] == p2[i:j + 1] and c2[i:j + 1] == p1[i:j + 1]


def test_ox_keeps_region_and_other_order():
    rng = random.Random(6)
    for seed in range(2000):
        n = rng.randint(2, 15)
        p1, p2 = random_pair(rng, n)
        i, j = cr.cross_region(n, RandomSource(seed))
        c1, _ = cr.ox(p1[:], p2[:], RandomSource(seed))
        assert c1[i:j + 1] == p1[i:j + 1]
        seg = set(p1[i:j + 1])
        tail = c1[j + 1:] + c1[:i]
        assert tail == [x for x in p2 if x not in seg]


def _er_oracle_ok(child, p1, p2, shared_first):
    """Every step of ``child`` follows the greedy edge rule or is a dead end."""
    n = len(child)
    union = undirected_edges(p1) | undirected_edges(p2)
    common = undirected_edges(p1) & undirected_edges(p2)
    nb = {x: {y for e in union if x in e for y in e if y != x} for x in range(n)}
    used = {child[0]}
    path_edges_ok = True
    for t in range(n - 1):
        cur, nxt = child[t], child[t + 1]
        cands = nb[cur] - used
        if shared_first:
            shared = {y for y in cands if frozenset((cur, y)) in common}
            cands = shared or cands
        if cands:
            deg = {y: len(nb[y] - used - {y}) for y in cands}
            best = min(deg.values())
            if nxt not in cands or deg[nxt] != best:
                return False, path_edges_ok
        else:
            path_edges_ok = False
        used.add(nxt)
    return True, path_edges_ok


@pytest.mark.parametrize("name", ["er", "eer"])
def test_edge_ops_follow_greedy_rule(name):
    op = cr.get_crossover(name)
    rng = random.Random(7)
    src = RandomSource(7)
    dead_free = 0
    for _ in range(3000):
        n = rng.randint(3, 10)
        p1, p2 = random_pair(rng, n)
        c1, c2 = op(p1[:], p2[:], src)
        union = undirected_edges(p1) | undirected_edges(p2)
        for child in (c1, c2):
            ok, no_dead_end = _er_oracle_ok(child, p1, p2, name == "eer")
            assert ok
            if no_dead_end:
                dead_free += 1
                # the walk only ever picks parental edges; the closing edge
                # from last back to first is not a choice and may be new
                assert all(frozenset((child[t], child[t + 1])) in union for t in range(n - 1))
    assert dead_free > 3000


def test_er_starts_from_parent_heads():
    rng = random.Random(8)
    for seed in range(200):
        p1, p2 = random_pair(rng, 12)
        c1, c2 = cr.er(p1[:], p2[:], RandomSource(seed))
        assert c1[0] == p1[0] and c2[0] == p2[0]


def test_eer_shared_only_parents():
    # parents with the same undirected edge set leave nothing but shared edges
    rng = random.Random(9)
    for seed in range(300):
        p = rng.sample(range(15), 15)
        q = (p[::-1])[3:] + (p[::-1])[:3]
        c1, c2 = cr.eer(p[:], q[:], RandomSource(seed))
        assert undirected_edges(c1) <= undirected_edges(p)
        assert undirected_edges(c2) <= undirected_edges(p)


def _shared_fraction(c, common):
    return len(undirected_edges(c) & common) / len(c)


def test_eer_inherits_more_shared_edges_than_er():
    rng = random.Random(10)
    er_f, eer_f = [], []
    for t in range(1000):
        p1 = rng.sample(range(20), 20)
        p2 = p1[:]
        # related parents share some structure, as in an evolving population
        for _ in range(4):
            i, j = sorted(rng.sample(range(20), 2))
            p2[i:j + 1] = p2[i:j + 1][::-1]
        common = undirected_edges(p1) & undirected_edges(p2)
        a = cr.er(p1[:], p2[:], RandomSource(t))[0]
        b = cr.eer(p1[:], p2[:], RandomSource(t))[0]
        er_f.append(_shared_fraction(a, common))
        eer_f.append(_shared_fraction(b, common))
    assert mean(eer_f) >= mean(er_f)


def test_eer_vs_er_random_parents():
    rng = random.Random(11)
    er_f, eer_f = [], []
    for t in range(1000):
        p1, p2 = random_pair(rng, 20)
        common = undirected_edges(p1) & undirected_edges(p2)
        er_f.append(_shared_fraction(cr.er(p1[:], p2[:], RandomSource(t))[0], common))
        eer_f.append(_shared_fraction(cr.eer(p1[:], p2[:], RandomSource(t))[0], common))
    assert mean(eer_f) >= mean(er_f)


def test_ox2_child_is_uobx_child():
    rng = random.Random(12)
    for _ in range(3000):
        n = rng.randint(1, 12)
        p1, p2 = random_pair(rng, n)
        chosen = {k for k in range(n) if rng.random() < 0.5}
        c1, _ = cross(cr.ox2, p1, p2, mask_draws(n, chosen))
        moved = {p2[k] for k in chosen}
        fixed = {k for k in range(n) if p1[k] not in moved}
        u1, _ = cross(cr.uobx, p1, p2, mask_draws(n, fixed))
        assert c1 == u1


def test_upmx_all_indexes_matches_pmx_full_region():
    rng = random.Random(13)
    for _ in range(500):
        n = rng.randint(1, 15)
        p1, p2 = random_pair(rng, n)
        assert cross(cr.upmx, p1, p2, mask_draws(n, set(range(n)))) == cross(cr.pmx, p1, p2, [0, n - 1])


def test_pbx_position_balance():
    rng = RandomSource(14)
    from_p1 = from_p2 = 0
    for _ in range(10_000):
        p1 = list(range(20))
        rng.shuffle(p1)
        p2 = list(range(20))
        rng.shuffle(p2)
        c1, c2 = cr.pbx(p1[:], p2[:], rng)
        for c in (c1, c2):
            from_p1 += sum(c[k] == p1[k] for k in range(20))
            from_p2 += sum(c[k] == p2[k] for k in range(20))
    assert abs(from_p1 / from_p2 - 1) < 0.1


def test_cross_region_average_length():
    rng = RandomSource(15)
    lengths = [j - i + 1 for i, j in (cr.cross_region(99, rng) for _ in range(50_000))]
    assert abs(mean(lengths) - 99 / 3) < 1.0


# -- validity and registry ------------------------------------------------------------

@pytest.mark.parametrize("name", cr.CROSSOVER_NAMES)
def test_validity_1e5(name):
    op = cr.get_crossover(name)
    rng = RandomSource(len(name) * 31 + 7)
    p1, p2 = list(range(10)), list(range(10))
    rng.shuffle(p1)
    rng.shuffle(p2)
    for t in range(100_000):
        c1, c2 = op(p1, p2, rng)
        if t % 101 == 0:
            assert validate(c1) and validate(c2)
            # fresh parents now and then so runs do not collapse
            rng.shuffle(p1)
            rng.shuffle(p2)
    assert validate(p1) and validate(p2)


@pytest.mark.parametrize("name", cr.CROSSOVER_NAMES)
def test_validity_random_sizes(name):
    op = cr.get_crossover(name)
    rng = random.Random(name)
    src = RandomSource(16)
    for _ in range(2000):
        n = rng.randint(1, 30)
        p1, p2 = random_pair(rng, n)
        c1, c2 = op(p1, p2, src)
        assert validate(c1) and validate(c2) and len(c1) == n


@pytest.mark.parametrize("name", cr.CROSSOVER_NAMES)
def test_length_mismatch(name):
    with pytest.raises(ValueError):
        cr.get_crossover(name)([0, 1, 2], [0, 1], RandomSource(0))


def test_registry():
    assert cr.get_crossover("none") is None
    assert len(cr.CROSSOVER_NAMES) == 12
    with pytest.raises(UnknownOperatorError):
        cr.get_crossover("eax")
    with pytest.raises(ValueError):
        cr.get_crossover("pmx:0.5")
    with pytest.raises(ValueError):
        cr.get_crossover("uobx:1.5")
    p1, p2 = [3, 0, 6, 2, 5, 1, 4, 7], [7, 6, 5, 4, 3, 2, 1, 0]
    draws = [0.6] * 8
    assert cross(cr.get_crossover("uobx:0.7"), p1, p2, draws) == (p1, p2)
    assert cross(cr.get_crossover("uobx", u=0.7), p1, p2, draws) == (p1, p2)
    assert cross(cr.get_crossover("uobx"), p1, p2, draws) != (p1, p2)
