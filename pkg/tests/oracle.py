"""Independent brute-force oracles for the test suite.

Everything here is deliberately written from the raw definitions (unions of
minimal opens, preimages of opens, explicit relation closures) rather than
through the library's preorder shortcuts, so that agreement between the two
is evidence, not tautology.
"""
from __future__ import annotations

import itertools
from typing import Iterable, Mapping


# ---------------------------------------------------------------------------
# groups

def group_violation(elements: list[str], table: list[list[str]],
                    identity: str) -> tuple[str, tuple] | None:
    """First violated group axiom in (closure, identity, inverse,
    associativity) order, with witness; None when all hold."""
    index = {e: i for i, e in enumerate(elements)}
    if len(table) != len(elements) or any(len(r) != len(elements) for r in table):
        return ("table-shape", (len(elements),))

    def mul(a, b):
        return table[index[a]][index[b]]

    for a in elements:
        for b in elements:
            if mul(a, b) not in index:
                return ("closure", (a, b, mul(a, b)))
    if identity not in index:
        return ("unknown-element", (identity,))
    for a in elements:
        if mul(identity, a) != a or mul(a, identity) != a:
            return ("identity", (a,))
    for a in elements:
        if not any(mul(a, b) == identity and mul(b, a) == identity
                   for b in elements):
            return ("inverse", (a,))
    for a in elements:
        for b in elements:
            for c in elements:
                if mul(mul(a, b), c) != mul(a, mul(b, c)):
                    return ("associativity", (a, b, c))
    return None


def brute_subgroups(elements: list[str], table: list[list[str]],
                    identity: str) -> set[frozenset[str]]:
    """Every subgroup by exhaustive subset scan."""
    index = {e: i for i, e in enumerate(elements)}

    def mul(a, b):
        return table[index[a]][index[b]]

    def inv(a):
        return next(b for b in elements if mul(a, b) == identity == mul(b, a))

    out = set()
    for r in range(1, len(elements) + 1):
        for combo in itertools.combinations(elements, r):
            s = set(combo)
            if identity not in s:
                continue
            if all(mul(a, b) in s for a in s for b in s) and \
                    all(inv(a) in s for a in s):
                out.add(frozenset(s))
    return out


# ---------------------------------------------------------------------------
# spaces: opens as unions of minimal opens

def brute_opens(points: list[str],
                min_open: Mapping[str, Iterable[str]]) -> set[frozenset[str]]:
    """All unions of minimal opens (including the empty union)."""
    base = [frozenset(min_open[p]) for p in points]
    out = set()
    for r in range(len(points) + 1):
        for combo in itertools.combinations(range(len(points)), r):
            u: frozenset[str] = frozenset()
            for i in combo:
                u |= base[i]
            out.add(u)
    return out


def space_violation(points: list[str],
                    min_open: Mapping[str, Iterable[str]]) -> tuple | None:
    pointset = set(points)
    for p in points:
        if p not in min_open:
            return ("missing-min-open", (p,))
        u = set(min_open[p])
        if not u <= pointset:
            return ("unknown-point", (sorted(u - pointset)[0],))
        if p not in u:
            return ("min-open-membership", (p,))
    for p in points:
        for q in min_open[p]:
            if not set(min_open[q]) <= set(min_open[p]):
                return ("min-open-nesting", (q, p))
    return None


def preimage_continuous(points_x: list[str], min_open_x: Mapping,
                        points_y: list[str], min_open_y: Mapping,
                        assignment: Mapping[str, str]) -> bool:
    """Continuity by the raw definition: preimages of opens are open."""
    opens_x = brute_opens(points_x, min_open_x)
    for v in brute_opens(points_y, min_open_y):
        pre = frozenset(x for x in points_x if assignment[x] in v)
        if pre not in opens_x:
            return False
    return True


# ---------------------------------------------------------------------------
# partial actions

def partial_action_violation(elements, table, identity,
                             points, min_open,
                             domains: Mapping[str, Iterable[str]],
                             thetas: Mapping[str, Mapping[str, str]]) -> tuple | None:
    """Exhaustive scan of the partial-action axioms, continuity taken in the
    preimage sense on subspaces.  Assumes the group and space are valid."""
    index = {e: i for i, e in enumerate(elements)}

    def mul(a, b):
        return table[index[a]][index[b]]

    def inv(a):
        return next(b for b in elements if mul(a, b) == identity == mul(b, a))

    dom = {g: frozenset(domains.get(g, ())) for g in elements}
    the = {g: dict(thetas.get(g, {})) for g in elements}
    allpts = frozenset(points)

    if dom[identity] != allpts:
        return ("pa3-domain", tuple(sorted(allpts ^ dom[identity])))
    for x in points:
        if the[identity].get(x) != x:
            return ("pa3-identity", (x,))
    opens = brute_opens(points, min_open)
    for g in elements:
        if dom[g] not in opens:
            return ("domain-not-open", (g,))
    for g in elements:
        if frozenset(the[g]) != dom[inv(g)]:
            return ("theta-domain", (g,))
        values = list(the[g].values())
        if len(set(values)) != len(values) or set(values) != set(dom[g]):
            return ("theta-not-bijective", (g,))
    for g in elements:
        src, tgt = dom[inv(g)], dom[g]
        sub_src = {p: set(min_open[p]) & src for p in src}
        sub_tgt = {p: set(min_open[p]) & tgt for p in tgt}
        if src and not preimage_continuous(sorted(src), sub_src, sorted(tgt),
                                           sub_tgt, the[g]):
            return ("theta-not-continuous", (g,))
        back = {y: x for x, y in the[g].items()}
        if tgt and not preimage_continuous(sorted(tgt), sub_tgt, sorted(src),
                                           sub_src, back):
            return ("theta-not-continuous", (inv(g),))
    for g in elements:
        for x, y in the[g].items():
            if the[inv(g)].get(y) != x:
                return ("theta-inverse-mismatch", (g, x))
    for g in elements:
        for h in elements:
            gh = mul(g, h)
            for x in dom[inv(h)]:
                hx = the[h][x]
                if hx in dom[inv(g)]:
                    if x not in dom[inv(gh)] or the[g][hx] != the[gh][x]:
                        return ("pa2", (g, h, x))
    return None


def brute_orbits(elements, mul, inv, identity, points,
                 domains, thetas) -> list[frozenset[str]]:
    """Orbits by explicit union-find over the one-step reachability."""
    parent = {x: x for x in points}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[ry] = rx

    for g in elements:
        for x, y in thetas.get(g, {}).items():
            union(x, y)
    groups: dict[str, set[str]] = {}
    for x in points:
        groups.setdefault(find(x), set()).add(x)
    return [frozenset(v) for v in groups.values()]


# ---------------------------------------------------------------------------
# globalization by explicit relation closure

def brute_globalization_classes(elements, table, identity,
                                points, domains, thetas
                                ) -> list[frozenset[tuple[str, str]]]:
    """Classes of G x X under the enveloping relation, computed with an
    explicit reflexive/symmetric/transitive Warshall closure."""
    index = {e: i for i, e in enumerate(elements)}

    def mul(a, b):
        return table[index[a]][index[b]]

    def inv(a):
        return next(b for b in elements if mul(a, b) == identity == mul(b, a))

    pairs = [(g, x) for g in elements for x in points]
    pidx = {p: i for i, p in enumerate(pairs)}
    n = len(pairs)
    rel = [[False] * n for _ in range(n)]
    for (g, x) in pairs:
        for (h, y) in pairs:
            k = mul(inv(g), h)
            if x in domains.get(k, ()) and thetas[inv(k)].get(x) == y:
                rel[pidx[(g, x)]][pidx[(h, y)]] = True
    for i in range(n):
        rel[i][i] = True
    for i in range(n):
        for j in range(n):
            if rel[i][j]:
                rel[j][i] = True
    for k in range(n):
        for i in range(n):
            if rel[i][k]:
                for j in range(n):
                    if rel[k][j]:
                        rel[i][j] = True
    seen = set()
    classes = []
    for i in range(n):
        members = frozenset(pairs[j] for j in range(n) if rel[i][j])
        if members not in seen:
            seen.add(members)
            classes.append(members)
    return classes


# ---------------------------------------------------------------------------
# random generators

def random_preorder_space(rng, max_points: int = 6, prefix: str = "p"):
    """A random space as (points, min_open dict): random relation closed
    reflexively and transitively."""
    n = rng.randint(1, max_points)
    points = [f"{prefix}{i}" for i in range(n)]
    rel = [[i == j for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(n):
            if i != j and rng.random() < 0.3:
                rel[i][j] = True
    for k in range(n):
        for i in range(n):
            if rel[i][k]:
                for j in range(n):
                    if rel[k][j]:
                        rel[i][j] = True
    min_open = {points[j]: [points[i] for i in range(n) if rel[i][j]]
                for j in range(n)}
    return points, min_open


def random_partition(rng, items: list[str]) -> list[list[str]]:
    k = rng.randint(1, len(items))
    blocks: list[list[str]] = [[] for _ in range(k)]
    for it in items:
        blocks[rng.randrange(k)].append(it)
    return [b for b in blocks if b]


# ---------------------------------------------------------------------------
# twisted products by explicit one-step union-find

def brute_twisted_classes(big_elements, big_table, identity, k_elements,
                          points, domains, thetas
                          ) -> list[frozenset[tuple[str, str]]]:
    """Classes of G x X under (g,x) ~ (g k^-1, theta_k(x)) for k in K^x."""
    index = {e: i for i, e in enumerate(big_elements)}

    def mul(a, b):
        return big_table[index[a]][index[b]]

    def inv(a):
        return next(b for b in big_elements if mul(a, b) == identity == mul(b, a))

    pairs = [(g, x) for g in big_elements for x in points]
    parent = {p: p for p in pairs}

    def find(p):
        while parent[p] != p:
            parent[p] = parent[parent[p]]
            p = parent[p]
        return p

    def union(p, q):
        rp, rq = find(p), find(q)
        if rp != rq:
            parent[rq] = rp

    for (g, x) in pairs:
        for k in k_elements:
            if x in domains.get(inv(k), ()):
                union((g, x), (mul(g, inv(k)), thetas[k][x]))
    groups: dict[tuple[str, str], set] = {}
    for p in pairs:
        groups.setdefault(find(p), set()).add(p)
    return [frozenset(v) for v in groups.values()]


# ---------------------------------------------------------------------------
# the finite-interval (fence) model of homotopy

def fence_space_raw(m: int):
    """The zigzag poset f0 <= f1 >= f2 <= ... as raw (points, min_open)."""
    points = [f"f{i}" for i in range(m)]
    min_open = {}
    for i in range(m):
        if i % 2 == 0:
            min_open[points[i]] = [points[i]]
        else:
            inside = [points[i - 1], points[i]]
            if i + 1 < m:
                inside.append(points[i + 1])
            min_open[points[i]] = inside
    return points, min_open


def interval_homotopy_exists(space_x, space_y, f, g, max_m: int = 4) -> bool:
    """Brute-force search for a continuous H : X x F_m -> Y with
    H(.,f0) = f and H(.,last) = g, for some fence length m <= max_m."""
    xs = list(space_x.points)
    for m in range(1, max_m + 1):
        fpoints, fopen = fence_space_raw(m)
        cells = [(x, t) for x in xs for t in fpoints]

        def leq_cell(c1, c2):
            (x1, t1), (x2, t2) = c1, c2
            return space_x.leq(x1, x2) and t1 in fopen[t2]

        fixed = {}
        for x in xs:
            fixed[(x, fpoints[0])] = f(x)
            fixed[(x, fpoints[-1])] = g(x)
        if m == 1 and any(f(x) != g(x) for x in xs):
            continue
        free = [c for c in cells if c not in fixed]

        def consistent(assign) -> bool:
            return all(space_y.leq(assign[c1], assign[c2])
                       for c1 in cells for c2 in cells if leq_cell(c1, c2))

        if not free:
            if consistent(fixed):
                return True
            continue
        for values in itertools.product(space_y.points, repeat=len(free)):
            assign = dict(fixed)
            assign.update(dict(zip(free, values)))
            if consistent(assign):
                return True
    return False


def alternating_fence(poset_fence: list) -> list:
    """Pad a fence so comparabilities alternate up/down, matching F_m."""
    if not poset_fence:
        return poset_fence
    out = [poset_fence[0]]
    for nxt in poset_fence[1:]:
        last = out[-1]
        up_needed = (len(out) - 1) % 2 == 0
        target = last.target
        goes_up = all(target.leq(a, b)
                      for a, b in zip(last.assignment, nxt.assignment))
        goes_down = all(target.leq(b, a)
                        for a, b in zip(last.assignment, nxt.assignment))
        if (up_needed and goes_up) or (not up_needed and goes_down):
            out.append(nxt)
        else:
            out.append(last)
            out.append(nxt)
    if (len(out) - 1) % 2 == 1:
        out.append(out[-1])
    return out


def homotopy_from_fence(space_x, space_y, fence: list) -> bool:
    """Build H on X x F_m from an alternating fence and verify continuity."""
    fence = alternating_fence(fence)
    m = len(fence)
    fpoints, fopen = fence_space_raw(m)
    assign = {(x, fpoints[i]): fence[i](x)
              for i in range(m) for x in space_x.points}
    for (x1, t1) in assign:
        for (x2, t2) in assign:
            if space_x.leq(x1, x2) and t1 in fopen[t2]:
                if not space_y.leq(assign[(x1, t1)], assign[(x2, t2)]):
                    return False
    return True


# ---------------------------------------------------------------------------
# canonical globalization document, rebuilt from the relation closure

def globalization_document(pa) -> dict:
    """The globalization document from the brute-force relation closure,
    following the same canonical labelling rules as the library."""
    from pact import pair_label

    grp, space = pa.group, pa.space
    elements = list(grp.elements)
    table = [list(r) for r in grp.table]
    points = list(space.points)
    domains = {g: pa.domains[g] for g in elements}
    thetas = {g: dict(pa.thetas[g]) for g in elements}
    classes = brute_globalization_classes(elements, table, grp.identity,
                                          points, domains, thetas)

    def least(cls):
        return min(cls, key=lambda gx: (grp.index(gx[0]), space.index(gx[1])))

    ordered = sorted(classes, key=lambda c: (grp.index(least(c)[0]),
                                             space.index(least(c)[1])))
    label = {cls: pair_label(*least(cls)) for cls in ordered}
    of_pair = {gx: label[cls] for cls in ordered for gx in cls}

    def preimage_open(subset) -> bool:
        pre = {gx for gx in of_pair if of_pair[gx] in subset}
        return all((g, y) in pre for (g, x) in pre for y in space.min_open_of(x))

    order = {label[c]: i for i, c in enumerate(ordered)}
    labels = [label[c] for c in ordered]
    min_open = {}
    for cls in ordered:
        a = {label[cls]}
        changed = True
        while changed:
            changed = False
            pre = [gx for gx in of_pair if of_pair[gx] in a]
            for (g, x) in pre:
                for y in space.min_open_of(x):
                    if of_pair[(g, y)] not in a:
                        a.add(of_pair[(g, y)])
                        changed = True
        assert preimage_open(a)
        min_open[label[cls]] = sorted(a, key=order.__getitem__)

    action = {}
    for g in elements:
        action[g] = {}
        for cls in ordered:
            h, x = least(cls)
            action[g][label[cls]] = of_pair[(grp.mul(g, h), x)]
    return {
        "group": list(elements),
        "class_count": len(ordered),
        "classes": {label[c]: [[g, x] for g, x in
                               sorted(c, key=lambda gx: (grp.index(gx[0]),
                                                         space.index(gx[1])))]
                    for c in ordered},
        "total": {"points": labels, "min_open": min_open},
        "action": action,
        "embedding": {x: of_pair[(grp.identity, x)] for x in points},
    }
