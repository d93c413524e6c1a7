from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pact import (BoundExceeded, SpaceMap, ValidationError, compose,
                  discrete_space, enumerate_monotone_maps, enumerate_opens,
                  find_homeomorphism, is_closed, is_continuous, is_open,
                  is_open_map, is_T1, load_fixture, pair_label, product,
                  quotient, space_from_min_opens, split_pair_label, subspace,
                  t0_quotient)
from oracle import (brute_opens, preimage_continuous, random_partition,
                    random_preorder_space, space_violation)


def c8():
    return load_fixture("z4-circle").space


def test_space_from_min_opens_validates():
    space = space_from_min_opens(["a", "b"], {"a": ["a"], "b": ["b"]})
    assert space.leq("a", "a") and not space.leq("a", "b")
    with pytest.raises(ValidationError) as err:
        space_from_min_opens(["a", "b"], {"a": ["b"], "b": ["b"]})
    assert err.value.axiom == "min-open-membership"
    # U_b = {b} contained in U_a = {a, b}: nesting holds, so this is valid
    space_from_min_opens(["a", "b"], {"a": ["a", "b"], "b": ["b"]})


def test_nesting_violation_reported():
    with pytest.raises(ValidationError) as err:
        space_from_min_opens(
            ["a", "b", "c"],
            {"a": ["a", "b"], "b": ["b", "c"], "c": ["c"]})
    assert err.value.axiom == "min-open-nesting"


def test_c8_is_valid_by_independent_nesting_scan():
    space = c8()
    raw = {p: sorted(space.min_open_of(p)) for p in space.points}
    assert space_violation(list(space.points), raw) is None


def test_is_open_examples():
    space = c8()
    assert is_open(space, {"a0"})
    assert not is_open(space, {"c0"})
    assert is_closed(space, {"c0"})
    assert is_open(space, set()) and is_closed(space, set())
    with pytest.raises(ValidationError):
        is_open(space, {"zz"})


def test_open_iff_union_of_min_opens(rng):
    for _ in range(25):
        points, min_open = random_preorder_space(rng, 6)
        space = space_from_min_opens(points, min_open)
        family = brute_opens(points, min_open)
        for _ in range(100):
            subset = frozenset(p for p in points if rng.random() < 0.5)
            assert is_open(space, subset) == (subset in family)


def test_open_iff_union_of_min_opens_on_fixture_spaces(rng):
    for name in ("pt", "z2-pair", "z2-wedge", "z2-pair-sq", "z4-circle",
                 "z4-half"):
        space = load_fixture(name).space
        raw = {p: sorted(space.min_open_of(p)) for p in space.points}
        family = brute_opens(list(space.points), raw)
        for _ in range(100):
            subset = frozenset(p for p in space.points if rng.random() < 0.5)
            assert is_open(space, subset) == (subset in family)


def test_enumerate_opens_matches_brute():
    space = c8()
    raw = {p: sorted(space.min_open_of(p)) for p in space.points}
    assert set(enumerate_opens(space)) == brute_opens(list(space.points), raw)
    assert len(enumerate_opens(space)) == 47


def test_product_examples():
    space = c8()
    pt = discrete_space(["x"])
    prod, p1, p2 = product(pt, space)
    assert find_homeomorphism(prod, space) is not None
    assert is_continuous(p1) and is_continuous(p2)
    assert is_open_map(p2)

    d2 = discrete_space(["a", "b"])
    sq, _, _ = product(d2, d2)
    assert len(sq) == 4
    assert all(sq.min_open_of(p) == frozenset({p}) for p in sq.points)

    big, q1, q2 = product(space, d2)
    assert len(big) == 16
    assert big.min_open_of(pair_label("c0", "a")) == \
        frozenset({pair_label("a3", "a"), pair_label("c0", "a"), pair_label("a0", "a")})
    with pytest.raises(BoundExceeded):
        product(space, space, max_points=63)


def test_product_projections_and_min_opens_exhaustively():
    space = c8()
    d2 = discrete_space(["a", "b"])
    for left, right in ((space, d2), (d2, space), (d2, d2)):
        prod, p1, p2 = product(left, right)
        assert is_continuous(p1) and is_continuous(p2)
        assert is_open_map(p1) and is_open_map(p2)
        for x in left.points:
            for y in right.points:
                expected = {pair_label(u, v)
                            for u in left.min_open_of(x)
                            for v in right.min_open_of(y)}
                assert prod.min_open_of(pair_label(x, y)) == frozenset(expected)


def test_pair_label_roundtrip():
    assert split_pair_label(pair_label("a", "b")) == ("a", "b")
    nested = pair_label(pair_label("a", "b"), "c")
    assert split_pair_label(nested) == (pair_label("a", "b"), "c")
    assert split_pair_label("plain") is None


def test_quotient_examples():
    space = c8()
    identity_classes = [[p] for p in space.points]
    q, proj = quotient(space, identity_classes)
    assert find_homeomorphism(q, space) is not None
    assert proj.is_bijective()

    q1, _ = quotient(space, [list(space.points)])
    assert len(q1) == 1

    classes = [["a0", "a2"], ["a1", "a3"], ["c0", "c2"], ["c1", "c3"]]
    q4, proj4 = quotient(space, classes)
    assert len(q4) == 4
    opens = {frozenset(s) for s in enumerate_opens(q4)}
    arcs = {"a0", "a1"}
    corners = {"c0", "c1"}
    assert frozenset() in opens and frozenset(q4.points) in opens
    # 2 open points (the arc classes), 2 closed points (the corner classes)
    assert is_open(q4, {"a0"}) and is_open(q4, {"a1"})
    assert is_closed(q4, {"c0"}) and is_closed(q4, {"c1"})
    assert q4.min_open_of("c0") == frozenset({"a0", "a1", "c0"})

    with pytest.raises(ValidationError) as err:
        quotient(space, [["a0"], ["a0", "a1"]])
    assert err.value.axiom == "not-a-partition"


def test_quotient_opens_match_brute_preimage_family(rng):
    for _ in range(12):
        points, min_open = random_preorder_space(rng, 8)
        space = space_from_min_opens(points, min_open)
        classes = random_partition(rng, list(points))
        q, proj = quotient(space, classes)
        source_opens = brute_opens(points, min_open)
        raw_q = {p: sorted(q.min_open_of(p)) for p in q.points}
        quotient_opens = brute_opens(list(q.points), raw_q)
        expected = set()
        for subset_size in range(len(q.points) + 1):
            for combo in itertools.combinations(q.points, subset_size):
                a = frozenset(combo)
                pre = frozenset(x for x in points if proj(x) in a)
                if pre in source_opens:
                    expected.add(a)
        assert quotient_opens == expected


def test_subspace_examples():
    space = c8()
    assert subspace(space, space.points) == space
    single = subspace(space, {"a0"})
    assert single.points == ("a0",)
    fan = subspace(space, {"a3", "c0", "a0"})
    assert fan.min_open_of("c0") == frozenset({"a3", "c0", "a0"})
    assert fan.min_open_of("a0") == frozenset({"a0"})
    with pytest.raises(ValidationError):
        subspace(space, set())


def test_continuity_examples():
    space = c8()
    ident = SpaceMap.identity(space)
    assert is_continuous(ident) and is_open_map(ident)
    const = SpaceMap.constant(space, space, "c0")
    assert is_continuous(const)
    table = {p: p for p in space.points}
    table["a0"] = "c0"
    bad = SpaceMap.from_dict(space, space, table)
    assert not is_continuous(bad)


def test_continuity_monotone_iff_preimage(rng):
    samples = 0
    while samples < 120:
        px, mx = random_preorder_space(rng, 6, prefix="x")
        py, my = random_preorder_space(rng, 6, prefix="y")
        sx = space_from_min_opens(px, mx)
        sy = space_from_min_opens(py, my)
        assignment = {x: rng.choice(py) for x in px}
        m = SpaceMap.from_dict(sx, sy, assignment)
        assert is_continuous(m) == preimage_continuous(px, mx, py, my, assignment)
        samples += 1


def test_open_map_agrees_with_definition(rng):
    for _ in range(40):
        px, mx = random_preorder_space(rng, 5, prefix="x")
        py, my = random_preorder_space(rng, 5, prefix="y")
        sx = space_from_min_opens(px, mx)
        sy = space_from_min_opens(py, my)
        m = SpaceMap.from_dict(sx, sy, {x: rng.choice(py) for x in px})
        opens_y = brute_opens(py, my)
        direct = all(frozenset(m(p) for p in u) in opens_y
                     for u in brute_opens(px, mx))
        assert is_open_map(m) == direct


def test_find_homeomorphism_examples():
    space = c8()
    found = find_homeomorphism(space, space)
    assert found is not None
    assert found.assignment == space.points  # identity is the first witness
    q4, _ = quotient(space, [["a0", "a2"], ["a1", "a3"], ["c0", "c2"], ["c1", "c3"]])
    assert find_homeomorphism(space, q4) is None
    with pytest.raises(BoundExceeded):
        find_homeomorphism(space, space, max_points=4)


def _iso_exists_by_scan(a, b) -> bool:
    if len(a) != len(b):
        return False
    for image in itertools.permutations(b.points):
        table = dict(zip(a.points, image))
        if all(a.leq(x, y) == b.leq(table[x], table[y])
               for x in a.points for y in a.points):
            return True
    return False


def test_find_homeomorphism_completeness_vs_bijections(rng):
    # relabelled copies must always be found, and arbitrary pairs must agree
    # with the exhaustive bijection scan in both directions
    for _ in range(25):
        points, min_open = random_preorder_space(rng, 5)
        a = space_from_min_opens(points, min_open)
        perm = list(points)
        rng.shuffle(perm)
        rename = dict(zip(points, perm))
        b = space_from_min_opens(
            [rename[p] for p in points],
            {rename[p]: [rename[q] for q in min_open[p]] for p in points})
        found = find_homeomorphism(a, b)
        assert found is not None
        assert found.is_bijective()
        assert is_continuous(found) and is_continuous(found.inverse())

        # non-isomorphic pair: add one point on top of a
        taller = space_from_min_opens(
            list(points) + ["zz"],
            {**{p: list(min_open[p]) for p in points}, "zz": list(points) + ["zz"]})
        assert find_homeomorphism(a, taller) is None

    for _ in range(25):
        pa, ma = random_preorder_space(rng, 5, prefix="u")
        pb, mb = random_preorder_space(rng, 5, prefix="v")
        a = space_from_min_opens(pa, ma)
        b = space_from_min_opens(pb, mb)
        found = find_homeomorphism(a, b)
        assert (found is not None) == _iso_exists_by_scan(a, b)
        if found is not None:
            assert is_continuous(found) and is_continuous(found.inverse())


def test_t0_quotient_examples():
    space = c8()
    q, _ = t0_quotient(space)
    assert find_homeomorphism(q, space) is not None

    indiscrete = space_from_min_opens(["u", "v"], {"u": ["u", "v"], "v": ["u", "v"]})
    qq, proj = t0_quotient(indiscrete)
    assert len(qq) == 1 and is_continuous(proj)

    pts = list(space.points) + ["u", "v"]
    min_open = {p: sorted(space.min_open_of(p)) for p in space.points}
    min_open.update({"u": ["u", "v"], "v": ["u", "v"]})
    disjoint = space_from_min_opens(pts, min_open)
    q9, _ = t0_quotient(disjoint)
    assert len(q9) == 9


def test_is_t1_examples():
    assert is_T1(discrete_space(["a", "b", "c"]))
    assert not is_T1(c8())
    assert is_T1(discrete_space(["x"]))


def test_enumerate_monotone_maps_counts_and_order():
    pt = discrete_space(["x"])
    space = c8()
    assert len(enumerate_monotone_maps(pt, space)) == 8
    d2 = discrete_space(["a", "b"])
    maps = enumerate_monotone_maps(d2, d2)
    assert [m.assignment for m in maps] == \
        [("a", "a"), ("a", "b"), ("b", "a"), ("b", "b")]
    with pytest.raises(BoundExceeded):
        enumerate_monotone_maps(space, space, max_maps=100)


@st.composite
def small_spaces(draw, max_points=5):
    n = draw(st.integers(min_value=1, max_value=max_points))
    points = [f"p{i}" for i in range(n)]
    rel = [[i == j for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(n):
            if i != j and draw(st.booleans()):
                rel[i][j] = True
    for k in range(n):
        for i in range(n):
            if rel[i][k]:
                for j in range(n):
                    if rel[k][j]:
                        rel[i][j] = True
    return space_from_min_opens(
        points, {points[j]: [points[i] for i in range(n) if rel[i][j]]
                 for j in range(n)})


@settings(max_examples=60, deadline=None)
@given(small_spaces(), st.data())
def test_opens_closed_under_union_and_intersection(space, data):
    opens = enumerate_opens(space)
    u = data.draw(st.sampled_from(opens))
    v = data.draw(st.sampled_from(opens))
    assert is_open(space, u | v)
    assert is_open(space, u & v)
    assert is_closed(space, frozenset(space.points) - u)


@settings(max_examples=40, deadline=None)
@given(small_spaces())
def test_t0_quotient_is_t0_idempotent_and_continuous(space):
    q, proj = t0_quotient(space)
    assert is_continuous(proj)
    for x in q.points:
        for y in q.points:
            if x != y:
                assert not (q.leq(x, y) and q.leq(y, x))
    again, _ = t0_quotient(q)
    assert find_homeomorphism(again, q) is not None


@settings(max_examples=40, deadline=None)
@given(small_spaces(), small_spaces())
def test_projection_sections_compose_to_identity(a, b):
    prod, p1, p2 = product(a, b, max_points=30)
    for y in b.points:
        section = SpaceMap(a, prod,
                           tuple(pair_label(x, y) for x in a.points))
        assert is_continuous(section)
        assert compose(p1, section).assignment == a.points


def test_compose_and_inverse():
    d2 = discrete_space(["a", "b"])
    swap = SpaceMap.from_dict(d2, d2, {"a": "b", "b": "a"})
    assert compose(swap, swap).assignment == ("a", "b")
    assert swap.inverse().assignment == ("b", "a")
    const = SpaceMap.constant(d2, d2, "a")
    with pytest.raises(ValidationError):
        const.inverse()
