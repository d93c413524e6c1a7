"""Homotopy of maps between finite spaces via fences in map posets.

Finite-scale semantics of the unit interval, fixed once: a (G-)homotopy
X x I -> Y is a fence in the poset of (G-)maps, i.e. a chain of maps in
which neighbours are pointwise comparable.  The straight-line two-step
homotopy between comparable G-maps is itself a G-map because the group acts
trivially on the interval, so this is adopted as the definition and
cross-checked against an explicit finite-interval model by the test suite.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .envelope import envelope_of_map, globalize
from .errors import BoundExceeded, InternalCheckError, ValidationError
from .finspace import (FinSpace, SpaceMap, enumerate_monotone_maps, is_continuous,
                       enumerate_opens, subspace, t0_quotient)
from .paction import (PartialAction, Subgroup, enumerate_G_maps, fixed_points,
                      is_G_map, is_invariant, isotropy, restrict_invariant,
                      restrict_to_subgroup)
from .report import FAILS, HOLDS, PRECONDITION_UNMET, ClaimReport


@dataclass(frozen=True)
class MapPoset:
    """A complete list of maps X -> Y under the pointwise order
    f <= g  iff  f(x) <= g(x) for every x."""

    source: FinSpace
    target: FinSpace
    maps: tuple[SpaceMap, ...]
    kind: str = "continuous"

    @cached_property
    def _lookup(self) -> dict[tuple[str, ...], int]:
        return {m.assignment: i for i, m in enumerate(self.maps)}

    def index_of(self, f: SpaceMap) -> int:
        idx = self._lookup.get(f.assignment)
        if idx is None:
            raise ValidationError("not-in-poset", f.assignment,
                                  f"map is not among the enumerated {self.kind} maps")
        return idx

    def leq(self, i: int, j: int) -> bool:
        fi, fj = self.maps[i], self.maps[j]
        return all(self.target.leq(a, b)
                   for a, b in zip(fi.assignment, fj.assignment))

    def comparable(self, i: int, j: int) -> bool:
        return self.leq(i, j) or self.leq(j, i)

    @cached_property
    def _value_masks(self) -> tuple[list[list[int]], list[list[int]]]:
        """Per (source position, target index): bitmask over maps whose value
        there lies below / above that target point."""
        npts = len(self.source)
        tgt = self.target
        m = len(tgt)
        exact = [[0] * m for _ in range(npts)]
        for k, f in enumerate(self.maps):
            for pos in range(npts):
                exact[pos][tgt.index(f.assignment[pos])] |= 1 << k
        below = [[0] * m for _ in range(npts)]
        above = [[0] * m for _ in range(npts)]
        for pos in range(npts):
            for j in range(m):
                down = tgt._down_masks[j]
                acc_b = 0
                acc_a = 0
                for u in range(m):
                    if down & (1 << u):
                        acc_b |= exact[pos][u]
                    if tgt._down_masks[u] & (1 << j):
                        acc_a |= exact[pos][u]
                below[pos][j] = acc_b
                above[pos][j] = acc_a
        return below, above

    def _neighbors(self, k: int) -> int:
        """Bitmask of maps comparable to maps[k] (including itself)."""
        below, above = self._value_masks
        tgt = self.target
        f = self.maps[k]
        acc_b = acc_a = (1 << len(self.maps)) - 1
        for pos in range(len(self.source)):
            j = tgt.index(f.assignment[pos])
            acc_b &= below[pos][j]
            acc_a &= above[pos][j]
        return acc_b | acc_a

    @cached_property
    def components(self) -> tuple[int, ...]:
        """Fence components: connected components of the comparability graph."""
        n = len(self.maps)
        comp = [-1] * n
        current = 0
        for start in range(n):
            if comp[start] >= 0:
                continue
            comp[start] = current
            frontier = 1 << start
            seen = frontier
            while frontier:
                reach = 0
                m = frontier
                while m:
                    low = m & -m
                    m ^= low
                    reach |= self._neighbors(low.bit_length() - 1)
                frontier = reach & ~seen
                seen |= frontier
                m = frontier
                while m:
                    low = m & -m
                    m ^= low
                    comp[low.bit_length() - 1] = current
            current += 1
        return tuple(comp)

    def fence(self, i: int, j: int) -> list[SpaceMap] | None:
        """A shortest fence from maps[i] to maps[j], or None."""
        if self.components[i] != self.components[j]:
            return None
        prev: dict[int, int | None] = {i: None}
        frontier = [i]
        while frontier and j not in prev:
            nxt = []
            for a in frontier:
                mask = self._neighbors(a)
                while mask:
                    low = mask & -mask
                    mask ^= low
                    b = low.bit_length() - 1
                    if b not in prev:
                        prev[b] = a
                        nxt.append(b)
            frontier = nxt
        path = []
        cur: int | None = j
        while cur is not None:
            path.append(self.maps[cur])
            cur = prev[cur]
        path.reverse()
        return path


def enumerate_maps(source: FinSpace, target: FinSpace,
                   equivariant: tuple[PartialAction, PartialAction] | None = None,
                   node_budget: int = 1_000_000,
                   max_maps: int = 4096) -> MapPoset:
    """All continuous maps source -> target, or all G-maps when
    ``equivariant=(pa_x, pa_y)`` is supplied; deterministic order."""
    if equivariant is None:
        maps = enumerate_monotone_maps(source, target,
                                       node_budget=node_budget, max_maps=max_maps)
        return MapPoset(source, target, tuple(maps))
    pa_x, pa_y = equivariant
    if pa_x.space != source or pa_y.space != target:
        raise ValidationError("space-mismatch", (), "actions do not live on the given spaces")
    maps = enumerate_G_maps(pa_x, pa_y, node_budget=node_budget, max_maps=max_maps)
    return MapPoset(source, target, tuple(maps), kind="equivariant")


def are_homotopic(f: SpaceMap, g: SpaceMap,
                  node_budget: int = 1_000_000, max_maps: int = 4096) -> bool:
    """Fence-connectivity of f and g in the full poset of continuous maps."""
    _check_parallel(f, g)
    for m in (f, g):
        if not is_continuous(m):
            raise ValidationError("not-continuous", (), "homotopy needs continuous maps")
    poset = enumerate_maps(f.source, f.target,
                           node_budget=node_budget, max_maps=max_maps)
    return poset.components[poset.index_of(f)] == poset.components[poset.index_of(g)]


def are_G_homotopic(f: SpaceMap, g: SpaceMap,
                    pa_x: PartialAction, pa_y: PartialAction,
                    node_budget: int = 1_000_000, max_maps: int = 4096) -> bool:
    """Fence-connectivity inside the poset of G-maps."""
    _check_parallel(f, g)
    for m in (f, g):
        if not is_G_map(m, pa_x, pa_y):
            raise ValidationError("not-a-G-map", (), "equivariant homotopy needs G-maps")
    poset = enumerate_maps(f.source, f.target, equivariant=(pa_x, pa_y),
                           node_budget=node_budget, max_maps=max_maps)
    return poset.components[poset.index_of(f)] == poset.components[poset.index_of(g)]


def _check_parallel(f: SpaceMap, g: SpaceMap) -> None:
    if f.source != g.source or f.target != g.target:
        raise ValidationError("space-mismatch", (), "maps must be parallel")


def _beat_point(space: FinSpace, x: str) -> bool:
    down = [y for y in space.min_open_of(x) if y != x]
    if down and any(all(space.leq(d, m) for d in down) for m in down):
        return True
    up = [y for y in space.up_set(x) if y != x]
    if up and any(all(space.leq(m, u) for u in up) for m in up):
        return True
    return False


def core(space: FinSpace) -> FinSpace:
    """Dismantle beat points (lowest index first) until none remain.

    Non-T0 inputs are reduced through the Kolmogorov quotient first; the
    result is unique up to homeomorphism.
    """
    current, _ = t0_quotient(space)
    while True:
        beat = next((x for x in current.points if _beat_point(current, x)), None)
        if beat is None:
            return current
        current = subspace(current, [p for p in current.points if p != beat])


def is_contractible(space: FinSpace) -> bool:
    """True iff the core of the Kolmogorov quotient is a single point."""
    return len(core(space)) == 1


@dataclass(frozen=True)
class GContract:
    """Outcome of the equivariant contractibility search."""

    value: bool
    fixed_point: str | None = None
    fence: tuple[SpaceMap, ...] | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.value

    def fence_tables(self) -> list[dict[str, str]]:
        return [m.as_dict() for m in self.fence] if self.fence else []


def is_G_contractible(pa: PartialAction,
                      node_budget: int = 1_000_000,
                      max_maps: int = 4096) -> GContract:
    """Search for a fence from the identity to a constant at a fixed point
    inside the poset of G-self-maps.

    An empty fixed-point set X[G] decides the question immediately; this
    fast necessary condition agrees with the full search by construction,
    since only fixed points feed the candidate list.
    """
    full = Subgroup(pa.group, frozenset(pa.group.elements))
    fixed = fixed_points(pa, full)
    candidates = [x for x in pa.space.points if x in fixed]
    if not candidates:
        return GContract(False, reason="no fixed points")
    poset = enumerate_maps(pa.space, pa.space, equivariant=(pa, pa),
                           node_budget=node_budget, max_maps=max_maps)
    ident = poset.index_of(SpaceMap.identity(pa.space))
    for w in candidates:
        const = SpaceMap.constant(pa.space, pa.space, w)
        if not is_G_map(const, pa, pa):
            raise InternalCheckError(f"constant at fixed point {w!r} is not a G-map")
        ci = poset.index_of(const)
        fence = poset.fence(ident, ci)
        if fence is not None:
            return GContract(True, fixed_point=w, fence=tuple(fence))
    return GContract(False, reason="no fence from the identity to a constant")


def is_locally_G_contractible(pa: PartialAction,
                              max_points: int = 12,
                              node_budget: int = 1_000_000,
                              max_maps: int = 4096) -> bool:
    """For every point x and every G_x-invariant open U containing x, some
    G_x-invariant open V with x in V, V inside U admits a fence (of
    G_x-maps V -> U) from the inclusion to a constant at a G_x-fixed point.

    All invariant open neighbourhoods are enumerated; invariance of the
    minimal open set is not automatic for partial actions, so there is no
    minimality shortcut.
    """
    if len(pa.space) > max_points:
        raise BoundExceeded("local contractibility", max_points, len(pa.space))
    opens = enumerate_opens(pa.space, max_points=max_points)
    for x in pa.space.points:
        _, gx = isotropy(pa, x)
        sub = restrict_to_subgroup(pa, gx)
        candidates_u = [u for u in opens
                        if x in u and is_invariant(sub, u, _full(sub))]
        for u in candidates_u:
            pa_u = restrict_invariant(sub, u)
            targets = fixed_points(pa_u, _full(pa_u))
            found = False
            for v in sorted((v for v in candidates_u if x in v and v <= u),
                            key=lambda s: (len(s), sorted(pa.space.index(p) for p in s))):
                pa_v = restrict_invariant(sub, v)
                inclusion = SpaceMap(pa_v.space, pa_u.space,
                                     tuple(pa_v.space.points))
                poset = enumerate_maps(pa_v.space, pa_u.space,
                                       equivariant=(pa_v, pa_u),
                                       node_budget=node_budget, max_maps=max_maps)
                inc = poset.index_of(inclusion)
                for w in sorted(targets, key=pa.space.index):
                    const = SpaceMap.constant(pa_v.space, pa_u.space, w)
                    if poset.components[inc] == poset.components[poset.index_of(const)]:
                        found = True
                        break
                if found:
                    break
            if not found:
                return False
    return True


def _full(pa: PartialAction) -> Subgroup:
    return Subgroup(pa.group, frozenset(pa.group.elements))


def check_homotopy_preservation(f: SpaceMap, g: SpaceMap,
                                pa_x: PartialAction, pa_y: PartialAction,
                                instance_id: str = "adhoc",
                                node_budget: int = 1_000_000,
                                max_maps: int = 4096,
                                max_pairs: int = 256) -> ClaimReport:
    """f ~ g implies the induced maps on the globalizations are homotopic.

    Checked directly by fence search on both sides; inputs that are not
    G-homotopic give a precondition-unmet report.
    """
    if not are_G_homotopic(f, g, pa_x, pa_y,
                           node_budget=node_budget, max_maps=max_maps):
        return ClaimReport("homotopy-preservation", instance_id, PRECONDITION_UNMET,
                           {"reason": "the given maps are not equivariantly homotopic"})
    env_x = globalize(pa_x, max_pairs)
    env_y = globalize(pa_y, max_pairs)
    ef = envelope_of_map(f, pa_x, pa_y, env_x=env_x, env_y=env_y)
    eg = envelope_of_map(g, pa_x, pa_y, env_x=env_x, env_y=env_y)
    gx = env_x.as_global_action()
    gy = env_y.as_global_action()
    preserved = are_G_homotopic(ef, eg, gx, gy,
                                node_budget=node_budget, max_maps=max_maps)
    witness = {"induced_f": ef.as_dict(), "induced_g": eg.as_dict()}
    return ClaimReport("homotopy-preservation", instance_id,
                       HOLDS if preserved else FAILS, witness)


def check_G_contractibility_theorem(pa: PartialAction,
                                    instance_id: str = "adhoc",
                                    node_budget: int = 1_000_000,
                                    max_maps: int = 4096,
                                    max_pairs: int = 256) -> ClaimReport:
    """If X is G-contractible then so is its globalization."""
    base = is_G_contractible(pa, node_budget=node_budget, max_maps=max_maps)
    if not base:
        return ClaimReport("g-contractible", instance_id, PRECONDITION_UNMET,
                           {"reason": f"the space is not equivariantly contractible "
                                      f"({base.reason})"})
    env = globalize(pa, max_pairs)
    lifted = is_G_contractible(env.as_global_action(),
                               node_budget=node_budget, max_maps=max_maps)
    witness = {
        "fixed_point": base.fixed_point,
        "fence": base.fence_tables(),
        "envelope_fixed_point": lifted.fixed_point,
        "envelope_fence": lifted.fence_tables(),
    }
    if not lifted:
        witness["reason"] = lifted.reason or "globalization is not equivariantly contractible"
    return ClaimReport("g-contractible", instance_id,
                       HOLDS if lifted else FAILS, witness)
