"""Finite Alexandrov spaces encoded by minimal open sets.

Convention, fixed once: x <= y  iff  x in U_y, and the open sets are exactly
the down-sets of <=.  That makes U_y = {x : x <= y} literally the minimal
open set of y.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterable, Mapping, Sequence

from .errors import BoundExceeded, InternalCheckError, ValidationError


@dataclass(frozen=True)
class FinSpace:
    """A finite topological space: ordered points plus minimal open sets.

    ``min_open[i]`` is the minimal open set of ``points[i]``.  Instances are
    assumed valid; construct them through :func:`space_from_min_opens`.
    """

    points: tuple[str, ...]
    min_open: tuple[frozenset[str], ...]

    @cached_property
    def _index(self) -> dict[str, int]:
        return {p: i for i, p in enumerate(self.points)}

    @cached_property
    def _down_masks(self) -> tuple[int, ...]:
        """Bitmask per point: bit i set iff points[i] <= that point."""
        masks = []
        for opens in self.min_open:
            m = 0
            for p in opens:
                m |= 1 << self._index[p]
            masks.append(m)
        return tuple(masks)

    def index(self, x: str) -> int:
        try:
            return self._index[x]
        except KeyError:
            raise ValidationError("unknown-point", (x,), f"unknown point {x!r}")

    def min_open_of(self, x: str) -> frozenset[str]:
        return self.min_open[self.index(x)]

    def leq(self, x: str, y: str) -> bool:
        """Specialization preorder: x <= y iff x lies in U_y."""
        return bool(self._down_masks[self.index(y)] & (1 << self.index(x)))

    def up_set(self, x: str) -> frozenset[str]:
        i = self.index(x)
        bit = 1 << i
        return frozenset(p for j, p in enumerate(self.points) if self._down_masks[j] & bit)

    def mask_of(self, subset: Iterable[str]) -> int:
        m = 0
        for x in subset:
            m |= 1 << self.index(x)
        return m

    def set_of(self, mask: int) -> frozenset[str]:
        return frozenset(p for i, p in enumerate(self.points) if mask & (1 << i))

    def __len__(self) -> int:
        return len(self.points)

    def __contains__(self, x: object) -> bool:
        return x in self._index


def space_from_min_opens(points: Sequence[str],
                         min_open: Mapping[str, Iterable[str]]) -> FinSpace:
    """Validate a minimal-open-set table and build the space.

    Checks: every point has a table entry, x in U_x, and nesting
    (y in U_x implies U_y subset of U_x), which together make the family a
    base of minimal opens for an Alexandrov topology.
    """
    points = tuple(points)
    if not points:
        raise ValidationError("empty-space", (), "a space needs at least one point")
    if len(set(points)) != len(points):
        raise ValidationError("duplicate-point", (), "point labels must be unique")
    pointset = set(points)
    table: list[frozenset[str]] = []
    for p in points:
        if p not in min_open:
            raise ValidationError("missing-min-open", (p,), f"no minimal open set for {p!r}")
        u = frozenset(min_open[p])
        for q in u:
            if q not in pointset:
                raise ValidationError("unknown-point", (q,), f"U_{p!r} mentions unknown point {q!r}")
        if p not in u:
            raise ValidationError("min-open-membership", (p,), f"{p!r} is not in its own minimal open set")
        table.append(u)
    lookup = dict(zip(points, table))
    for p in points:
        for q in lookup[p]:
            if not lookup[q] <= lookup[p]:
                bad = sorted(lookup[q] - lookup[p])[0]
                raise ValidationError("min-open-nesting", (q, p, bad),
                                      f"U_{q!r} is not contained in U_{p!r}")
    space = FinSpace(points, tuple(table))
    # reflexivity/transitivity of <= follow from the two checks above; assert.
    for p in points:
        if not space.leq(p, p):
            raise InternalCheckError("preorder not reflexive")
    return space


def discrete_space(points: Sequence[str]) -> FinSpace:
    return space_from_min_opens(points, {p: [p] for p in points})


def is_open(space: FinSpace, subset: Iterable[str]) -> bool:
    """True iff the subset is a union of minimal opens (a down-set of <=)."""
    mask = space.mask_of(subset)
    for i in range(len(space)):
        if mask & (1 << i) and (space._down_masks[i] & mask) != space._down_masks[i]:
            return False
    return True


def is_closed(space: FinSpace, subset: Iterable[str]) -> bool:
    mask = space.mask_of(subset)
    full = (1 << len(space)) - 1
    return is_open(space, space.set_of(full & ~mask))


def enumerate_opens(space: FinSpace, max_points: int = 20) -> list[frozenset[str]]:
    """All open sets, ordered by (size, point indices).  Exponential; bounded."""
    n = len(space)
    if n > max_points:
        raise BoundExceeded("open-set enumeration", max_points, n)
    opens = []
    for mask in range(1 << n):
        if all((space._down_masks[i] & mask) == space._down_masks[i]
               for i in range(n) if mask & (1 << i)):
            opens.append(space.set_of(mask))
    opens.sort(key=lambda s: (len(s), sorted(space.index(x) for x in s)))
    return opens


@dataclass(frozen=True)
class SpaceMap:
    """A total point function between spaces; continuity is checked, not assumed."""

    source: FinSpace
    target: FinSpace
    assignment: tuple[str, ...]

    @classmethod
    def from_dict(cls, source: FinSpace, target: FinSpace,
                  mapping: Mapping[str, str]) -> "SpaceMap":
        missing = [p for p in source.points if p not in mapping]
        if missing:
            raise ValidationError("partial-assignment", (missing[0],),
                                  f"no image for point {missing[0]!r}")
        values = []
        for p in source.points:
            y = mapping[p]
            target.index(y)
            values.append(y)
        return cls(source, target, tuple(values))

    @classmethod
    def identity(cls, space: FinSpace) -> "SpaceMap":
        return cls(space, space, space.points)

    @classmethod
    def constant(cls, source: FinSpace, target: FinSpace, value: str) -> "SpaceMap":
        target.index(value)
        return cls(source, target, tuple(value for _ in source.points))

    def __call__(self, x: str) -> str:
        return self.assignment[self.source.index(x)]

    def as_dict(self) -> dict[str, str]:
        return dict(zip(self.source.points, self.assignment))

    def image(self, subset: Iterable[str]) -> frozenset[str]:
        return frozenset(self(x) for x in subset)

    def is_bijective(self) -> bool:
        return (len(self.source) == len(self.target)
                and len(set(self.assignment)) == len(self.target))

    def inverse(self) -> "SpaceMap":
        if not self.is_bijective():
            raise ValidationError("not-bijective", (), "map has no inverse")
        back = {y: x for x, y in zip(self.source.points, self.assignment)}
        return SpaceMap(self.target, self.source,
                        tuple(back[y] for y in self.target.points))


def compose(outer: SpaceMap, inner: SpaceMap) -> SpaceMap:
    """outer after inner."""
    if inner.target != outer.source:
        raise ValidationError("composition-mismatch", (), "codomain/domain spaces differ")
    return SpaceMap(inner.source, outer.target,
                    tuple(outer(y) for y in inner.assignment))


def is_continuous(m: SpaceMap) -> bool:
    """Continuity == monotonicity for the specialization preorders."""
    src, tgt = m.source, m.target
    for j, y in enumerate(src.points):
        fy = m.assignment[j]
        for i, x in enumerate(src.points):
            if src._down_masks[j] & (1 << i) and not tgt.leq(m.assignment[i], fy):
                return False
    return True


def is_open_map(m: SpaceMap) -> bool:
    """Images of opens are open; it suffices to check the minimal opens."""
    return all(is_open(m.target, m.image(u)) for u in m.source.min_open)


def product(a: FinSpace, b: FinSpace, max_points: int = 64
            ) -> tuple[FinSpace, SpaceMap, SpaceMap]:
    """Product space with U_(x,y) = U_x x U_y, plus the two projections."""
    n = len(a) * len(b)
    if n > max_points:
        raise BoundExceeded("product space", max_points, n)
    points = []
    opens = []
    firsts = []
    seconds = []
    for x in a.points:
        for y in b.points:
            points.append(pair_label(x, y))
            opens.append(frozenset(pair_label(p, q)
                                   for p in a.min_open_of(x) for q in b.min_open_of(y)))
            firsts.append(x)
            seconds.append(y)
    space = FinSpace(tuple(points), tuple(opens))
    p1 = SpaceMap(space, a, tuple(firsts))
    p2 = SpaceMap(space, b, tuple(seconds))
    return space, p1, p2


def pair_label(x: str, y: str) -> str:
    return f"({x},{y})"


def split_pair_label(label: str) -> tuple[str, str] | None:
    """Invert pair_label, splitting at the top-level comma; None if malformed."""
    if not (label.startswith("(") and label.endswith(")")):
        return None
    body = label[1:-1]
    depth = 0
    for i, ch in enumerate(body):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            return body[:i], body[i + 1:]
    return None


def quotient(space: FinSpace, classes: Iterable[Iterable[str]],
             names: Callable[[frozenset[str]], str] | None = None
             ) -> tuple[FinSpace, SpaceMap]:
    """Quotient by a partition; preorder is the transitive closure of the
    induced relation, so the opens are exactly {A : preimage of A open}.

    Classes are ordered by their least member (in source point order) and
    named by their lexicographically least member unless ``names`` is given.
    """
    sets = [frozenset(c) for c in classes]
    seen: dict[str, int] = {}
    for k, cls in enumerate(sets):
        if not cls:
            raise ValidationError("not-a-partition", (), "empty class")
        for x in cls:
            space.index(x)
            if x in seen:
                raise ValidationError("not-a-partition", (x,), f"{x!r} appears in two classes")
            seen[x] = k
    if len(seen) != len(space):
        missing = next(p for p in space.points if p not in seen)
        raise ValidationError("not-a-partition", (missing,), f"{missing!r} not covered")

    sets.sort(key=lambda c: min(space.index(x) for x in c))
    labels = [names(c) if names else min(c) for c in sets]
    if len(set(labels)) != len(labels):
        raise ValidationError("duplicate-point", (), "class labels collide")
    cls_of = {x: k for k, cls in enumerate(sets) for x in cls}

    n = len(sets)
    below = [1 << k for k in range(n)]
    for j, y in enumerate(space.points):
        ky = cls_of[y]
        mask = space._down_masks[j]
        for i in range(len(space)):
            if mask & (1 << i):
                below[ky] |= 1 << cls_of[space.points[i]]
    changed = True
    while changed:
        changed = False
        for k in range(n):
            acc = below[k]
            m = acc
            while m:
                low = m & -m
                acc |= below[low.bit_length() - 1]
                m ^= low
            if acc != below[k]:
                below[k] = acc
                changed = True
    opens = []
    for k in range(n):
        opens.append(frozenset(labels[i] for i in range(n) if below[k] & (1 << i)))
    qspace = FinSpace(tuple(labels), tuple(opens))
    proj = SpaceMap(space, qspace, tuple(labels[cls_of[x]] for x in space.points))
    return qspace, proj


def subspace(space: FinSpace, subset: Iterable[str]) -> FinSpace:
    """Subspace topology: minimal opens are U_x intersected with the subset."""
    keep = set(subset)
    if not keep:
        raise ValidationError("empty-subset", (), "subspace needs a nonempty subset")
    for x in keep:
        space.index(x)
    points = tuple(p for p in space.points if p in keep)
    opens = tuple(space.min_open_of(p) & keep for p in points)
    return FinSpace(points, opens)


def t0_quotient(space: FinSpace) -> tuple[FinSpace, SpaceMap]:
    """Identify topologically indistinguishable points (x <= y and y <= x)."""
    classes: list[set[str]] = []
    placed: dict[str, int] = {}
    for x in space.points:
        for k, cls in enumerate(classes):
            rep = next(iter(cls))
            if space.leq(x, rep) and space.leq(rep, x):
                cls.add(x)
                placed[x] = k
                break
        else:
            placed[x] = len(classes)
            classes.append({x})
    return quotient(space, classes)


def is_T1(space: FinSpace) -> bool:
    """Every singleton closed; for finite spaces this is exactly discreteness."""
    t1 = all(is_closed(space, {x}) for x in space.points)
    discrete = all(space.min_open_of(x) == frozenset({x}) for x in space.points)
    if t1 != discrete:
        raise InternalCheckError("T1 and discreteness disagree on a finite space")
    return t1


def _color_refinement(space: FinSpace) -> tuple[int, ...]:
    """Isomorphism-invariant point colors used as pruning for the search."""
    n = len(space)
    down = [frozenset(i for i in range(n) if space._down_masks[j] & (1 << i))
            for j in range(n)]
    up = [frozenset(j for j in range(n) if space._down_masks[j] & (1 << i))
          for i in range(n)]
    colors = [(len(down[i]), len(up[i])) for i in range(n)]
    palette: dict[tuple, int] = {}
    current = [palette.setdefault(c, len(palette)) for c in colors]
    for _ in range(n):
        sigs = []
        for i in range(n):
            sig = (current[i],
                   tuple(sorted(current[j] for j in down[i])),
                   tuple(sorted(current[j] for j in up[i])))
            sigs.append(sig)
        palette = {}
        refined = [palette.setdefault(s, len(palette)) for s in sigs]
        if refined == current:
            break
        current = refined
    return tuple(current)


def find_homeomorphism(a: FinSpace, b: FinSpace,
                       max_points: int = 24) -> SpaceMap | None:
    """A preorder isomorphism a -> b, or None.

    Backtracking over color-compatible assignments; deterministic under the
    point orderings (the lexicographically first witness is returned).
    """
    if max(len(a), len(b)) > max_points:
        raise BoundExceeded("homeomorphism search", max_points, max(len(a), len(b)))
    if len(a) != len(b):
        return None
    ca = _color_refinement(a)
    cb = _color_refinement(b)
    if sorted(ca) != sorted(cb):
        return None
    n = len(a)
    assigned: list[int] = []
    used = [False] * n

    def consistent(i: int, j: int) -> bool:
        for i2, j2 in enumerate(assigned):
            if a.leq(a.points[i], a.points[i2]) != b.leq(b.points[j], b.points[j2]):
                return False
            if a.leq(a.points[i2], a.points[i]) != b.leq(b.points[j2], b.points[j]):
                return False
        return True

    def search() -> bool:
        i = len(assigned)
        if i == n:
            return True
        for j in range(n):
            if not used[j] and ca[i] == cb[j] and consistent(i, j):
                used[j] = True
                assigned.append(j)
                if search():
                    return True
                assigned.pop()
                used[j] = False
        return False

    if not search():
        return None
    return SpaceMap(a, b, tuple(b.points[j] for j in assigned))


def enumerate_monotone_maps(source: FinSpace, target: FinSpace,
                            node_budget: int = 1_000_000,
                            max_maps: int = 4096) -> list[SpaceMap]:
    """All continuous (monotone) maps source -> target.

    Constraint-propagating DFS with a most-constrained-point heuristic; the
    result is sorted by assignment, so it is deterministic regardless of the
    internal search order.  Raises BoundExceeded past either budget.
    """
    n, m = len(source), len(target)
    full = (1 << m) - 1
    tgt_down = target._down_masks
    tgt_up = [0] * m
    for j in range(m):
        for i in range(m):
            if tgt_down[j] & (1 << i):
                tgt_up[i] |= 1 << j
    src_down = [[i for i in range(n) if source._down_masks[j] & (1 << i) and i != j]
                for j in range(n)]
    src_up = [[j for j in range(n) if source._down_masks[j] & (1 << i) and i != j]
              for i in range(n)]

    out: list[tuple[int, ...]] = []
    nodes = 0

    def search(cands: list[int], chosen: dict[int, int]):
        nonlocal nodes
        if len(chosen) == n:
            out.append(tuple(chosen[i] for i in range(n)))
            if len(out) > max_maps:
                raise BoundExceeded("map enumeration (maps)", max_maps, len(out))
            return
        best, best_count = -1, m + 1
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
                chosen[best] = j
                search(nxt, chosen)
                del chosen[best]

    search([full] * n, {})
    out.sort()
    return [SpaceMap(source, target, tuple(target.points[j] for j in tup)) for tup in out]
