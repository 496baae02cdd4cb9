"""Finite groups given by a multiplication table, and the double Gauss-sum counting oracle."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Hashable, Sequence


class InvalidGroup(ValueError):
    pass


@dataclass(frozen=True)
class FiniteGroup:
    order: int
    mult_table: tuple[tuple[int, ...], ...]
    identity: int
    name: str = ""

    def __post_init__(self):
        n = self.order
        t = self.mult_table
        if len(t) != n or any(len(row) != n for row in t):
            raise InvalidGroup("table shape does not match the order")
        e = self.identity
        for x in range(n):
            if t[e][x] != x or t[x][e] != x:
                raise InvalidGroup(f"{e} is not a two-sided identity")
            if sorted(t[x]) != list(range(n)):
                raise InvalidGroup(f"row {x} is not a permutation")
            if e not in t[x]:
                raise InvalidGroup(f"{x} has no inverse")
        for x in range(n):
            for y in range(n):
                xy = t[x][y]
                for z in range(n):
                    if t[xy][z] != t[x][t[y][z]]:
                        raise InvalidGroup(f"associativity fails at {x},{y},{z}")

    def mul(self, x: int, y: int) -> int:
        return self.mult_table[x][y]

    def power(self, x: int, n: int) -> int:
        if n < 0:
            x = self.inverse(x)
            n = -n
        result, base = self.identity, x
        while n:
            if n & 1:
                result = self.mul(result, base)
            n >>= 1
            base = self.mul(base, base)
        return result

    def inverse(self, x: int) -> int:
        return self.mult_table[x].index(self.identity)

    def to_json(self) -> dict:
        return {"name": self.name, "identity": self.identity, "table": [list(r) for r in self.mult_table]}

    @classmethod
    def from_table(cls, table: Sequence[Sequence[int]], identity: int | None = None, name: str = "") -> "FiniteGroup":
        table = tuple(tuple(int(v) for v in row) for row in table)
        if identity is None:
            identity = next((e for e in range(len(table)) if table[e] == tuple(range(len(table)))), 0)
        return cls(len(table), table, identity, name)

    @classmethod
    def from_elements(cls, gens: Sequence[Hashable], mul: Callable, unit: Hashable, name: str = "") -> "FiniteGroup":
        """Closure of ``gens`` under ``mul``; elements numbered in discovery order."""
        elems = [unit]
        index = {unit: 0}
        frontier = [unit]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = mul(x, g)
                    if y not in index:
                        index[y] = len(elems)
                        elems.append(y)
                        nxt.append(y)
            frontier = nxt
        table = [[index[mul(x, y)] for y in elems] for x in elems]
        return cls.from_table(table, 0, name)

    @classmethod
    def from_permutations(cls, gens: Sequence[Sequence[Sequence[int]]], name: str = "") -> "FiniteGroup":
        """Generators written as lists of cycles on {1..n}."""
        n = max((v for g in gens for c in g for v in c), default=1)
        perms = []
        for g in gens:
            img = list(range(n))
            for cycle in g:
                for a, b in zip(cycle, list(cycle[1:]) + [cycle[0]]):
                    img[a - 1] = b - 1
            perms.append(tuple(img))
        # (p*q)(i) = p(q(i))
        return cls.from_elements(perms, lambda p, q: tuple(p[i] for i in q), tuple(range(n)), name)


def cyclic_group(n: int) -> FiniteGroup:
    return FiniteGroup.from_table([[(i + j) % n for j in range(n)] for i in range(n)], 0, f"Z{n}")


def symmetric_group_3() -> FiniteGroup:
    return FiniteGroup.from_permutations([[[1, 2, 3]], [[1, 2]]], "S3")


def dihedral_group_8() -> FiniteGroup:
    return FiniteGroup.from_permutations([[[1, 2, 3, 4]], [[1, 3]]], "D8")


def quaternion_group() -> FiniteGroup:
    # units as (sign, basis) with basis in 1, i, j, k
    table = {
        ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
        ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
        ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
        ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
    }

    def mul(x, y):
        s, b = table[(x[1], y[1])]
        return (x[0] * y[0] * s, b)

    return FiniteGroup.from_elements([(1, "i"), (1, "j")], mul, (1, "1"), "Q8")


BUILTIN_GROUPS: dict[str, Callable[[], FiniteGroup]] = {
    "S3": symmetric_group_3,
    "D8": dihedral_group_8,
    "Q8": quaternion_group,
}


def builtin_group(name: str) -> FiniteGroup:
    if name in BUILTIN_GROUPS:
        return BUILTIN_GROUPS[name]()
    if name.startswith("Z") and name[1:].isdigit():
        return cyclic_group(int(name[1:]))
    raise KeyError(f"unknown group {name!r}")


def double_gauss_sum(g: FiniteGroup, n: int) -> int:
    """|G| * #{x in G : x^n = e}, the higher Gauss sum of the double of G."""
    count = sum(1 for x in range(g.order) if g.power(x, n) == g.identity)
    return g.order * count
