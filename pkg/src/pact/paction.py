"""Partial actions of a finite group on a finite space.

A partial action assigns to each group element g an open domain X_g and a
homeomorphism theta_g : X_{g^-1} -> X_g, subject to
  (PA1) theta_{g^-1} inverts theta_g,
  (PA2) theta_g(theta_h(x)) = theta_{gh}(x) whenever the left side is defined,
  (PA3) theta_e is the identity on all of X.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .algebra import Group, Subgroup
from .errors import BoundExceeded, InternalCheckError, ValidationError
from .finspace import (FinSpace, SpaceMap, compose, discrete_space,
                       is_closed, is_continuous, is_open, is_open_map,
                       pair_label, product, quotient, subspace)


@dataclass(frozen=True)
class PartialAction:
    """Validated partial action; construct through validate_partial_action."""

    group: Group
    space: FinSpace
    domains: Mapping[str, frozenset[str]]
    thetas: Mapping[str, Mapping[str, str]]

    def domain(self, g: str) -> frozenset[str]:
        self.group.index(g)
        return self.domains[g]

    def defined(self, g: str, x: str) -> bool:
        """Whether g.x exists, i.e. (g, x) lies in G*X."""
        return x in self.domains[self.group.inv(g)]

    def apply(self, g: str, x: str) -> str:
        return self.thetas[g][x]

    def gstar(self) -> list[tuple[str, str]]:
        """G*X as (g, x) pairs, in (element, point) order."""
        return [(g, x) for g in self.group.elements for x in self.space.points
                if self.defined(g, x)]

    def g_hat(self, x: str) -> frozenset[str]:
        """G^x: the elements g with g.x defined."""
        self.space.index(x)
        return frozenset(g for g in self.group.elements if self.defined(g, x))

    def is_global(self) -> bool:
        allpts = frozenset(self.space.points)
        return all(self.domains[g] == allpts for g in self.group.elements)

    def is_trivial(self) -> bool:
        """theta(g, x) = x wherever defined."""
        return all(y == x for g in self.group.elements
                   for x, y in self.thetas[g].items())

    def gstar_is_open(self) -> bool:
        """Whether G*X is open in G x X.  With open domains and a finite
        discrete group this is automatic (every partial action here is
        nice); the direct computation is kept as a cross-check."""
        prod, _, _ = product(discrete_space(self.group.elements), self.space,
                             max_points=len(self.group) * len(self.space))
        gstar_labels = [pair_label(g, x) for g, x in self.gstar()]
        direct = is_open(prod, gstar_labels)
        if not direct:
            raise InternalCheckError("G*X is not open despite open domains")
        return direct

    def gstar_is_closed(self) -> bool:
        """Whether G*X is closed in G x X; for discrete finite G this is
        equivalent to every X_g being closed, and both routes are compared."""
        per_domain = all(is_closed(self.space, self.domains[g])
                         for g in self.group.elements)
        prod, _, _ = product(discrete_space(self.group.elements), self.space,
                             max_points=len(self.group) * len(self.space))
        gstar_labels = {pair_label(g, x) for g, x in self.gstar()}
        complement = [p for p in prod.points if p not in gstar_labels]
        direct = is_open(prod, complement)
        if per_domain != direct:
            raise InternalCheckError("G*X closedness disagrees with domain closedness")
        return direct

    def theta_map(self, g: str) -> SpaceMap:
        """theta_g as a map of subspaces X_{g^-1} -> X_g."""
        ginv = self.group.inv(g)
        if not self.domains[ginv]:
            raise ValidationError("empty-subset", (g,), f"X_{ginv!r} is empty")
        src = subspace(self.space, self.domains[ginv])
        tgt = subspace(self.space, self.domains[g])
        return SpaceMap.from_dict(src, tgt, dict(self.thetas[g]))


@dataclass(frozen=True)
class OrbitSpace:
    base: PartialAction
    space: FinSpace
    projection: SpaceMap
    classes: tuple[frozenset[str], ...]


def validate_partial_action(group: Group, space: FinSpace,
                            domains: Mapping[str, Iterable[str]],
                            thetas: Mapping[str, Mapping[str, str]]) -> PartialAction:
    """Check every partial-action axiom; first violation wins, with witness.

    PA2 is checked twice, by exhaustive triple scan and by the domain
    identity theta_g(X_{g^-1} & X_h) = X_g & X_{gh}; the two must agree.
    """
    dom: dict[str, frozenset[str]] = {}
    for g in group.elements:
        if g not in domains:
            raise ValidationError("domain-keys", (g,), f"no domain for element {g!r}")
        d = frozenset(domains[g])
        for x in d:
            space.index(x)
        dom[g] = d
    for g in domains:
        group.index(g)
    the: dict[str, dict[str, str]] = {}
    for g in group.elements:
        if g not in thetas:
            raise ValidationError("domain-keys", (g,), f"no map table for element {g!r}")
        table = dict(thetas[g])
        expected = dom[group.inv(g)]
        if frozenset(table) != expected:
            off = sorted(frozenset(table) ^ expected)[0]
            raise ValidationError("theta-domain", (g, off),
                                  f"theta_{g!r} must be defined exactly on X_({group.inv(g)!r})")
        for x, y in table.items():
            space.index(y)
        the[g] = table
    for g in thetas:
        group.index(g)

    e = group.identity
    allpts = frozenset(space.points)
    if dom[e] != allpts:
        missing = sorted(allpts - dom[e])[0]
        raise ValidationError("pa3-domain", (missing,), "X_e must be the whole space")
    for x in space.points:
        if the[e][x] != x:
            raise ValidationError("pa3-identity", (x,), "theta_e must be the identity")

    for g in group.elements:
        if not is_open(space, dom[g]):
            raise ValidationError("domain-not-open", (g,) + tuple(sorted(dom[g])),
                                  f"X_{g!r} is not open")

    for g in group.elements:
        src, tgt, table = dom[group.inv(g)], dom[g], the[g]
        values = list(table.values())
        if len(set(values)) != len(values) or set(values) != set(tgt):
            raise ValidationError("theta-not-bijective", (g,),
                                  f"theta_{g!r} is not a bijection onto X_{g!r}")
        for x in src:
            for y in src:
                if space.leq(x, y) and not space.leq(table[x], table[y]):
                    raise ValidationError("theta-not-continuous", (g, x, y),
                                          f"theta_{g!r} is not monotone")
        # inverse continuity is PA1 plus the forward check on g^-1, but check
        # it directly so a broken inverse is caught before PA1 runs; the
        # witness (g, x, y) lives in X_g so it replays from theta_g alone.
        back = {y: x for x, y in table.items()}
        for x in tgt:
            for y in tgt:
                if space.leq(x, y) and not space.leq(back[x], back[y]):
                    raise ValidationError("theta-inverse-not-continuous", (g, x, y),
                                          f"inverse of theta_{g!r} is not monotone")

    for g in group.elements:
        ginv = group.inv(g)
        for x, y in the[g].items():
            if the[ginv].get(y) != x:
                raise ValidationError("theta-inverse-mismatch", (g, x),
                                      f"theta_{ginv!r} does not invert theta_{g!r}")

    pa2_scan: tuple | None = None
    for g in group.elements:
        for h in group.elements:
            gh = group.mul(g, h)
            for x in dom[group.inv(h)]:
                hx = the[h][x]
                if hx not in dom[group.inv(g)]:
                    continue
                if x not in dom[group.inv(gh)] or the[g][hx] != the[gh][x]:
                    pa2_scan = (g, h, x)
                    break
            if pa2_scan:
                break
        if pa2_scan:
            break
    pa2_identity: tuple | None = None
    for g in group.elements:
        for h in group.elements:
            lhs = frozenset(the[g][x] for x in dom[group.inv(g)] & dom[h])
            rhs = dom[g] & dom[group.mul(g, h)]
            if lhs != rhs:
                pa2_identity = (g, h)
                break
        if pa2_identity:
            break
    # The domain identity is a consequence of PA2 (never the other way: a
    # global action by mismatched homeomorphisms satisfies it vacuously), so
    # a passing scan with a failing identity is an internal inconsistency.
    if pa2_scan is None and pa2_identity is not None:
        raise InternalCheckError(
            f"PA2 triple scan passed but the domain identity fails at {pa2_identity}")
    if pa2_scan:
        raise ValidationError("pa2", pa2_scan,
                              "PA2 fails: theta_g(theta_h(x)) != theta_gh(x)")

    return PartialAction(group, space, dom, the)


def global_action(group: Group, space: FinSpace,
                  thetas: Mapping[str, Mapping[str, str]]) -> PartialAction:
    """Convenience: validate a global action (all domains are the full space)."""
    allpts = list(space.points)
    return validate_partial_action(group, space,
                                   {g: allpts for g in group.elements}, thetas)


def trivial_action(group: Group, space: FinSpace) -> PartialAction:
    """The full-domain action where every element acts as the identity."""
    ident = {x: x for x in space.points}
    return global_action(group, space, {g: dict(ident) for g in group.elements})


def restrict_global(pa: PartialAction, open_subset: Iterable[str]) -> PartialAction:
    """Restrict a global action to a nonempty open subset:
    X_g = U & mu_g(U), theta_g = mu_g restricted."""
    if not pa.is_global():
        raise ValidationError("not-global", (), "restriction needs a global action")
    u = frozenset(open_subset)
    if not u:
        raise ValidationError("empty-subset", (), "restriction needs a nonempty subset")
    if not is_open(pa.space, u):
        raise ValidationError("not-open", tuple(sorted(u)), "restriction subset must be open")
    sub = subspace(pa.space, u)
    domains = {}
    thetas = {}
    for g in pa.group.elements:
        image = frozenset(pa.apply(g, x) for x in u)
        domains[g] = u & image
    for g in pa.group.elements:
        src = domains[pa.group.inv(g)]
        thetas[g] = {x: pa.apply(g, x) for x in src}
    return validate_partial_action(pa.group, sub, domains, thetas)


def restrict_to_subgroup(pa: PartialAction, sub: Subgroup) -> PartialAction:
    """res^G_K: forget the elements outside the subgroup."""
    if sub.parent != pa.group:
        raise ValidationError("group-mismatch", (), "subgroup belongs to a different group")
    k = sub.as_group()
    domains = {g: pa.domains[g] for g in k.elements}
    thetas = {g: dict(pa.thetas[g]) for g in k.elements}
    return validate_partial_action(k, pa.space, domains, thetas)


def restrict_invariant(pa: PartialAction, invariant_open: Iterable[str]) -> PartialAction:
    """Restrict to an invariant open subset: domains become V & X_g."""
    v = frozenset(invariant_open)
    if not v:
        raise ValidationError("empty-subset", (), "restriction needs a nonempty subset")
    if not is_open(pa.space, v):
        raise ValidationError("not-open", tuple(sorted(v)), "subset must be open")
    full = Subgroup(pa.group, frozenset(pa.group.elements))
    if not is_invariant(pa, v, full):
        raise ValidationError("not-invariant", tuple(sorted(v)), "subset must be invariant")
    sub = subspace(pa.space, v)
    domains = {g: pa.domains[g] & v for g in pa.group.elements}
    thetas = {g: {x: pa.thetas[g][x] for x in domains[pa.group.inv(g)]}
              for g in pa.group.elements}
    return validate_partial_action(pa.group, sub, domains, thetas)


def diagonal_product(pas: Sequence[PartialAction], max_points: int = 64
                     ) -> tuple[PartialAction, list[SpaceMap]]:
    """Diagonal partial action on the product, plus the projection G-maps."""
    if not pas:
        raise ValidationError("empty-product", (), "need at least one factor")
    group = pas[0].group
    for pa in pas[1:]:
        if pa.group != group:
            raise ValidationError("group-mismatch", (), "factors must share a group")
    result = pas[0]
    projections: list[SpaceMap] = [SpaceMap.identity(pas[0].space)]
    for nxt in pas[1:]:
        combined, p1, p2 = _diagonal2(result, nxt, max_points)
        projections = [compose(pr, p1) for pr in projections]
        projections.append(p2)
        result = combined
    for pa, pr in zip(pas, projections):
        if not is_G_map(pr, result, pa):
            raise InternalCheckError("a product projection is not equivariant")
    return result, projections


def _diagonal2(a: PartialAction, b: PartialAction, max_points: int
               ) -> tuple[PartialAction, SpaceMap, SpaceMap]:
    space, p1, p2 = product(a.space, b.space, max_points=max_points)
    back = {(p1(pt), p2(pt)): pt for pt in space.points}
    domains = {}
    for g in a.group.elements:
        domains[g] = frozenset(pt for pt in space.points
                               if p1(pt) in a.domains[g] and p2(pt) in b.domains[g])
    thetas = {}
    for g in a.group.elements:
        src = domains[a.group.inv(g)]
        thetas[g] = {pt: back[(a.apply(g, p1(pt)), b.apply(g, p2(pt)))] for pt in src}
    pa = validate_partial_action(a.group, space, domains, thetas)
    return pa, p1, p2


def isotropy(pa: PartialAction, x: str) -> tuple[frozenset[str], Subgroup]:
    """(G^x, G_x): the defined set and the isotropy subgroup of x.

    G^x need not be a subgroup; G_x always is (asserted).
    """
    ghat = pa.g_hat(x)
    fixers = frozenset(g for g in ghat if pa.apply(g, x) == x)
    try:
        gx = Subgroup(pa.group, fixers)
    except ValidationError as exc:
        raise InternalCheckError(f"isotropy of {x!r} is not a subgroup: {exc}")
    return ghat, gx


def fixed_points(pa: PartialAction, k: Subgroup) -> frozenset[str]:
    """X[K] = {x : K is contained in G_x}."""
    if k.parent != pa.group:
        raise ValidationError("group-mismatch", (), "subgroup belongs to a different group")
    out = []
    for x in pa.space.points:
        if all(pa.defined(g, x) and pa.apply(g, x) == x for g in k.members):
            out.append(x)
    return frozenset(out)


def orbit_classes(pa: PartialAction) -> list[frozenset[str]]:
    """Orbits G^x . x; the orbit relation is verified to be an equivalence."""
    pts = pa.space.points
    idx = {p: i for i, p in enumerate(pts)}
    rel = []
    for x in pts:
        m = 0
        for g in pa.group.elements:
            if pa.defined(g, x):
                m |= 1 << idx[pa.apply(g, x)]
        rel.append(m)
    n = len(pts)
    for i in range(n):
        if not rel[i] & (1 << i):
            raise InternalCheckError(f"orbit relation not reflexive at {pts[i]!r}")
        m = rel[i]
        while m:
            low = m & -m
            m ^= low
            j = low.bit_length() - 1
            if not rel[j] & (1 << i):
                raise InternalCheckError(
                    f"orbit relation not symmetric at ({pts[i]!r}, {pts[j]!r})")
            if rel[j] & ~rel[i]:
                raise InternalCheckError(
                    f"orbit relation not transitive through ({pts[i]!r}, {pts[j]!r})")
    seen = set()
    classes = []
    for i in range(n):
        if rel[i] not in seen:
            seen.add(rel[i])
            classes.append(pa.space.set_of(rel[i]))
    return classes


def orbit_space(pa: PartialAction) -> OrbitSpace:
    """The orbit space X/G with its (continuous, open, surjective) projection."""
    classes = orbit_classes(pa)
    qspace, proj = quotient(pa.space, classes)
    if not is_continuous(proj):
        raise InternalCheckError("orbit projection is not continuous")
    if not is_open_map(proj):
        raise InternalCheckError("orbit projection is not open")
    if set(proj.assignment) != set(qspace.points):
        raise InternalCheckError("orbit projection is not surjective")
    ordered = sorted((frozenset(c) for c in classes),
                     key=lambda c: min(pa.space.index(x) for x in c))
    return OrbitSpace(pa, qspace, proj, tuple(ordered))


def is_free(pa: PartialAction) -> bool:
    """No nonidentity element fixes a point where it is defined."""
    e = pa.group.identity
    return not any(pa.apply(g, x) == x
                   for g in pa.group.elements if g != e
                   for x in pa.domains[pa.group.inv(g)])


def is_invariant(pa: PartialAction, s: Iterable[str], k: Subgroup) -> bool:
    """theta_k(s) stays in S for k in K and s in S where defined."""
    if k.parent != pa.group:
        raise ValidationError("group-mismatch", (), "subgroup belongs to a different group")
    sset = frozenset(s)
    for x in sset:
        pa.space.index(x)
    return all(pa.apply(g, x) in sset
               for g in k.members
               for x in sset & pa.domains[pa.group.inv(g)])


def is_G_map(f: SpaceMap, pa_x: PartialAction, pa_y: PartialAction) -> bool:
    """Equivariance over G*X: (g, f(x)) defined and eta_g(f(x)) = f(theta_g(x)).

    A discontinuous f is an error, not False: the morphisms here are
    continuous by definition, and conflating the two hides bugs.
    """
    if pa_x.group != pa_y.group:
        raise ValidationError("group-mismatch", (), "maps need actions of the same group")
    if f.source != pa_x.space or f.target != pa_y.space:
        raise ValidationError("space-mismatch", (), "map endpoints do not match the actions")
    if not is_continuous(f):
        raise ValidationError("not-continuous", (), "is_G_map needs a continuous map")
    for g in pa_x.group.elements:
        for x in pa_x.domains[pa_x.group.inv(g)]:
            fx = f(x)
            if not pa_y.defined(g, fx):
                return False
            if pa_y.apply(g, fx) != f(pa_x.apply(g, x)):
                return False
    return True


def is_isovariant(f: SpaceMap, pa_x: PartialAction, pa_y: PartialAction) -> bool:
    """A G-map with G_x = G_{f(x)} at every point."""
    if not is_G_map(f, pa_x, pa_y):
        return False
    for x in pa_x.space.points:
        _, gx = isotropy(pa_x, x)
        _, gfx = isotropy(pa_y, f(x))
        if gx.members != gfx.members:
            return False
    return True


def is_G_homeomorphism(f: SpaceMap, pa_x: PartialAction, pa_y: PartialAction) -> bool:
    """Bijective G-map whose inverse is also a G-map."""
    if not f.is_bijective():
        return False
    if not is_G_map(f, pa_x, pa_y):
        return False
    return is_G_map(f.inverse(), pa_y, pa_x)


def enumerate_G_maps(pa_x: PartialAction, pa_y: PartialAction,
                     node_budget: int = 1_000_000,
                     max_maps: int = 4096) -> list[SpaceMap]:
    """All G-maps X -> Y.

    Monotone DFS with the equivariance conditions folded into the
    propagation: assigning f(x) = y forces f(theta_g(x)) = eta_g(y) for
    every g defined at x, and prunes y outright when (g, y) is undefined.
    The output is identical to filtering the monotone maps by is_G_map
    (the test suite cross-checks), just without materializing them.
    """
    if pa_x.group != pa_y.group:
        raise ValidationError("group-mismatch", (), "actions of different groups")
    grp = pa_x.group
    src, tgt = pa_x.space, pa_y.space
    n, m = len(src), len(tgt)
    full = (1 << m) - 1
    tgt_down = tgt._down_masks
    tgt_up = [0] * m
    for j in range(m):
        for i in range(m):
            if tgt_down[j] & (1 << i):
                tgt_up[i] |= 1 << j
    src_down = [[i for i in range(n) if src._down_masks[j] & (1 << i) and i != j]
                for j in range(n)]
    src_up = [[j for j in range(n) if src._down_masks[j] & (1 << i) and i != j]
              for i in range(n)]

    nontrivial = [g for g in grp.elements if g != grp.identity]
    allowed = [full] * n
    forced: list[list[list[tuple[int, int]]]] = [[[] for _ in range(m)] for _ in range(n)]
    for i, x in enumerate(src.points):
        for g in nontrivial:
            if not pa_x.defined(g, x):
                continue
            i2 = src.index(pa_x.apply(g, x))
            for j, y in enumerate(tgt.points):
                if not (allowed[i] & (1 << j)):
                    continue
                if not pa_y.defined(g, y):
                    allowed[i] &= ~(1 << j)
                else:
                    forced[i][j].append((i2, tgt.index(pa_y.apply(g, y))))

    out: list[tuple[int, ...]] = []
    nodes = 0

    def search(cands: list[int], chosen: dict[int, int]):
        nonlocal nodes
        if len(chosen) == n:
            out.append(tuple(chosen[i] for i in range(n)))
            if len(out) > max_maps:
                raise BoundExceeded("map enumeration (maps)", max_maps, len(out))
            return
        best, best_count = -1, m + 2
        for i in range(n):
            if i not in chosen:
                count = cands[i].bit_count()
                if count < best_count:
                    best, best_count = i, count
        mask = cands[best]
        while mask:
            low = mask & -mask
            mask ^= low
            j = low.bit_length() - 1
            nodes += 1
            if nodes > node_budget:
                raise BoundExceeded("map enumeration (nodes)", node_budget, nodes)
            nxt = list(cands)
            nxt[best] = low
            ok = True
            for i2 in src_up[best]:
                if i2 not in chosen:
                    nxt[i2] &= tgt_up[j]
                    if not nxt[i2]:
                        ok = False
                        break
            if ok:
                for i2 in src_down[best]:
                    if i2 not in chosen:
                        nxt[i2] &= tgt_down[j]
                        if not nxt[i2]:
                            ok = False
                            break
            if ok:
                for i2, j2 in forced[best][j]:
                    nxt[i2] &= 1 << j2
                    if not nxt[i2]:
                        ok = False
                        break
            if ok:
                chosen[best] = j
                search(nxt, chosen)
                del chosen[best]

    search(list(allowed), {})
    out.sort()
    return [SpaceMap(src, tgt, tuple(tgt.points[j] for j in tup)) for tup in out]
