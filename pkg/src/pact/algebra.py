"""Finite groups given by multiplication tables, with subgroup machinery."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .errors import BoundExceeded, InternalCheckError, ValidationError


@dataclass(frozen=True)
class Group:
    """A finite group: ordered element labels, a Cayley table, an identity.

    ``table[i][j]`` is the product ``elements[i] * elements[j]``.  The order
    of ``elements`` fixes every deterministic iteration in the toolkit.
    Instances are assumed valid; construct them through :func:`validate_group`.
    """

    elements: tuple[str, ...]
    table: tuple[tuple[str, ...], ...]
    identity: str

    @cached_property
    def _index(self) -> dict[str, int]:
        return {e: i for i, e in enumerate(self.elements)}

    @cached_property
    def _inverse(self) -> dict[str, str]:
        inv = {}
        for a in self.elements:
            for b in self.elements:
                if self.mul(a, b) == self.identity and self.mul(b, a) == self.identity:
                    inv[a] = b
                    break
        return inv

    def index(self, a: str) -> int:
        try:
            return self._index[a]
        except KeyError:
            raise ValidationError("unknown-element", (a,), f"unknown group element {a!r}")

    def mul(self, a: str, b: str) -> str:
        return self.table[self.index(a)][self.index(b)]

    def inv(self, a: str) -> str:
        self.index(a)
        return self._inverse[a]

    def conjugate(self, h: str, g: str) -> str:
        """g^-1 h g."""
        return self.mul(self.mul(self.inv(g), h), g)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[str]:
        return iter(self.elements)

    def __contains__(self, a: object) -> bool:
        return a in self._index


@dataclass(frozen=True)
class Subgroup:
    """A subgroup of ``parent``, stored as a member set.

    Construction checks the subgroup invariants (identity, closure under
    product and inverse) and raises :class:`ValidationError` otherwise.
    """

    parent: Group
    members: frozenset[str]

    def __post_init__(self):
        object.__setattr__(self, "members", frozenset(self.members))
        for m in self.members:
            if m not in self.parent:
                raise ValidationError("unknown-element", (m,), f"unknown group element {m!r}")
        if self.parent.identity not in self.members:
            raise ValidationError("subgroup-identity", (self.parent.identity,),
                                  "subgroup does not contain the identity")
        for a in self.members:
            if self.parent.inv(a) not in self.members:
                raise ValidationError("subgroup-inverse", (a,), "subgroup not closed under inverse")
            for b in self.members:
                if self.parent.mul(a, b) not in self.members:
                    raise ValidationError("subgroup-closure", (a, b),
                                          "subgroup not closed under product")

    @cached_property
    def sorted_members(self) -> tuple[str, ...]:
        return tuple(e for e in self.parent.elements if e in self.members)

    def as_group(self) -> Group:
        """The subgroup as a standalone Group, in the parent's element order."""
        elems = self.sorted_members
        table = tuple(tuple(self.parent.mul(a, b) for b in elems) for a in elems)
        return Group(elems, table, self.parent.identity)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, a: object) -> bool:
        return a in self.members

    def __iter__(self) -> Iterator[str]:
        return iter(self.sorted_members)


def validate_group(elements: Sequence[str], table: Sequence[Sequence[str]],
                   identity: str) -> Group:
    """Check the group axioms and return a Group, or raise ValidationError.

    Checks run in a fixed order (shape, closure, identity, inverses,
    associativity) and report the first violation with its witnessing tuple.
    """
    elements = tuple(elements)
    if not elements:
        raise ValidationError("empty-group", (), "a group needs at least one element")
    if len(set(elements)) != len(elements):
        raise ValidationError("duplicate-element", (), "element labels must be unique")
    if len(table) != len(elements) or any(len(row) != len(elements) for row in table):
        raise ValidationError("table-shape", (len(elements),),
                              "table dimensions must match the element count")
    table = tuple(tuple(row) for row in table)
    index = {e: i for i, e in enumerate(elements)}

    for a in elements:
        for b in elements:
            entry = table[index[a]][index[b]]
            if entry not in index:
                raise ValidationError("closure", (a, b, entry),
                                      f"product {a!r}*{b!r} = {entry!r} is not an element")
    if identity not in index:
        raise ValidationError("unknown-element", (identity,), "identity is not an element")

    def mul(a: str, b: str) -> str:
        return table[index[a]][index[b]]

    for a in elements:
        if mul(identity, a) != a or mul(a, identity) != a:
            raise ValidationError("identity", (a,), f"identity is not two-sided at {a!r}")
    for a in elements:
        if not any(mul(a, b) == identity and mul(b, a) == identity for b in elements):
            raise ValidationError("inverse", (a,), f"{a!r} has no two-sided inverse")
    for a in elements:
        for b in elements:
            for c in elements:
                if mul(mul(a, b), c) != mul(a, mul(b, c)):
                    raise ValidationError("associativity", (a, b, c),
                                          f"({a!r}*{b!r})*{c!r} != {a!r}*({b!r}*{c!r})")
    return Group(elements, table, identity)


def subgroup_generated(group: Group, gens: Iterable[str]) -> Subgroup:
    """Smallest subgroup containing ``gens`` (closure to a fixpoint)."""
    members = {group.identity}
    frontier = []
    for g in gens:
        group.index(g)
        if g not in members:
            members.add(g)
            frontier.append(g)
    frontier.extend([group.identity])
    while frontier:
        a = frontier.pop()
        for b in tuple(members):
            for prod in (group.mul(a, b), group.mul(b, a)):
                if prod not in members:
                    members.add(prod)
                    frontier.append(prod)
        inv = group.inv(a)
        if inv not in members:
            members.add(inv)
            frontier.append(inv)
    return Subgroup(group, frozenset(members))


def conjugate_subgroup(subgroup: Subgroup, g: str) -> Subgroup:
    """The conjugate {g^-1 h g : h in subgroup}."""
    parent = subgroup.parent
    parent.index(g)
    return Subgroup(parent, frozenset(parent.conjugate(h, g) for h in subgroup.members))


def all_subgroups(group: Group, max_order: int = 16) -> list[Subgroup]:
    """Every subgroup, each exactly once, ordered by (size, member indices)."""
    if len(group) > max_order:
        raise BoundExceeded("subgroup enumeration", max_order, len(group))
    found: set[frozenset[str]] = {frozenset({group.identity})}
    frontier = [frozenset({group.identity})]
    while frontier:
        base = frontier.pop()
        for g in group.elements:
            if g in base:
                continue
            bigger = subgroup_generated(group, base | {g}).members
            if bigger not in found:
                found.add(bigger)
                frontier.append(bigger)
    def key(members: frozenset[str]) -> tuple:
        return (len(members), tuple(sorted(group.index(m) for m in members)))
    subs = [Subgroup(group, members) for members in sorted(found, key=key)]
    for sub in subs:
        if len(group) % len(sub) != 0:
            raise InternalCheckError(f"Lagrange violated by subgroup {sorted(sub.members)}")
    return subs


def is_subgroup_embedding(small: Group, big: Group) -> bool:
    """True when ``small`` is literally a subgroup of ``big``: its elements are
    elements of ``big``, identities agree, and the tables are consistent."""
    if small.identity != big.identity:
        return False
    if any(a not in big for a in small.elements):
        return False
    return all(small.mul(a, b) == big.mul(a, b)
               for a in small.elements for b in small.elements)


def cyclic_group(n: int) -> Group:
    """Z_n with elements "0".."n-1"; handy for tests and fixtures."""
    elems = tuple(str(i) for i in range(n))
    table = tuple(tuple(str((i + j) % n) for j in range(n)) for i in range(n))
    return Group(elems, table, "0")
