"""Metric groups (finite abelian groups with a quadratic form) and pointed categories."""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from ..cyclo import RootOfUnity, lcm, one
from ..moddata import PremodularData

Element = tuple[int, ...]


class IllFormedQuadraticForm(ValueError):
    pass


class NotIsotropic(ValueError):
    def __init__(self, witness: Element, value: RootOfUnity):
        super().__init__(f"q{witness} = {value} != 1")
        self.witness = witness
        self.value = value


class IllDefinedInducedForm(AssertionError):
    pass


_ROOT_RE = re.compile(r"^\s*(?:zeta|z)(\d+)(?:\^\(?(-?\d+)\)?)?\s*$")


def parse_root(text: str) -> RootOfUnity:
    """Parse ``zeta5^2``, ``z8``, ``zeta4^-1``, ``i``, ``-i``, ``1`` or ``-1``."""
    t = text.strip()
    simple = {"1": RootOfUnity(1, 0), "-1": RootOfUnity(2, 1), "i": RootOfUnity(4, 1), "-i": RootOfUnity(4, 3)}
    if t in simple:
        return simple[t]
    m = _ROOT_RE.match(t)
    if not m:
        raise ValueError(f"cannot parse root of unity {text!r}")
    return RootOfUnity(int(m.group(1)), int(m.group(2) or 1))


@dataclass(frozen=True)
class MetricGroup:
    """G = Z_{n_1} x ... x Z_{n_r} with q(e_i) and b(e_i, e_j) on generators.

    q(x) = prod q(e_i)^{x_i^2} * prod_{i<j} b(e_i, e_j)^{x_i x_j}.
    """

    cyclic_orders: tuple[int, ...]
    q_gen: tuple[RootOfUnity, ...]
    b_gen: Mapping[tuple[int, int], RootOfUnity] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "cyclic_orders", tuple(int(n) for n in self.cyclic_orders))
        object.__setattr__(self, "q_gen", tuple(self.q_gen))
        b = {}
        for (i, j), v in dict(self.b_gen).items():
            if i == j:
                raise IllFormedQuadraticForm("b_gen must only list pairs i < j")
            key = (min(i, j), max(i, j))
            b[key] = v
        object.__setattr__(self, "b_gen", b)
        if len(self.q_gen) != len(self.cyclic_orders) or any(n < 1 for n in self.cyclic_orders):
            raise IllFormedQuadraticForm("orders and q_gen disagree")
        self._check()

    def __hash__(self):
        return hash((self.cyclic_orders, self.q_gen, tuple(sorted(self.b_gen.items()))))

    # --- evaluation -------------------------------------------------------

    @property
    def order(self) -> int:
        out = 1
        for n in self.cyclic_orders:
            out *= n
        return out

    def elements(self) -> list[Element]:
        return list(itertools.product(*(range(n) for n in self.cyclic_orders)))

    def reduce(self, x: Sequence[int]) -> Element:
        return tuple(v % n for v, n in zip(x, self.cyclic_orders))

    def add(self, x: Sequence[int], y: Sequence[int]) -> Element:
        return self.reduce([a + b for a, b in zip(x, y)])

    def q_turns(self, x: Sequence[int]) -> Fraction:
        t = Fraction(0)
        for i, xi in enumerate(x):
            t += self.q_gen[i].turns * xi * xi
        for (i, j), v in self.b_gen.items():
            t += v.turns * x[i] * x[j]
        return t % 1

    def q(self, x: Sequence[int]) -> RootOfUnity:
        return RootOfUnity.from_fraction(self.q_turns(x))

    def b_turns(self, x: Sequence[int], y: Sequence[int]) -> Fraction:
        s = [a + b for a, b in zip(x, y)]
        return (self.q_turns(s) - self.q_turns(x) - self.q_turns(y)) % 1

    def b(self, x: Sequence[int], y: Sequence[int]) -> RootOfUnity:
        return RootOfUnity.from_fraction(self.b_turns(x, y))

    def _check(self) -> None:
        # q is a quadratic polynomial in integer coordinates, so b is bilinear
        # as soon as q is well defined.  q(x + n_i e_i) - q(x) is affine in x,
        # hence it vanishes everywhere iff it vanishes at 0 and at each e_j.
        r = len(self.cyclic_orders)
        probes = [(0,) * r] + [tuple(int(k == j) for k in range(r)) for j in range(r)]
        for x in probes:
            base = self.q_turns(x)
            for i, n in enumerate(self.cyclic_orders):
                shifted = list(x)
                shifted[i] += n
                if self.q_turns(shifted) != base:
                    raise IllFormedQuadraticForm(f"q is not periodic in generator {i} at {x}")

    def is_nondegenerate(self) -> bool:
        elems = self.elements()
        zero = tuple(0 for _ in self.cyclic_orders)
        for x in elems:
            if x != zero and all(self.b_turns(x, y) == 0 for y in elems):
                return False
        return True

    # --- JSON ---------------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "orders": list(self.cyclic_orders),
            "q_gen": [v.to_json() for v in self.q_gen],
            "b_gen": [[i, j, v.to_json()] for (i, j), v in sorted(self.b_gen.items())],
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> "MetricGroup":
        return cls(
            tuple(obj["orders"]),
            tuple(RootOfUnity.from_json(v) for v in obj["q_gen"]),
            {(int(i), int(j)): RootOfUnity.from_json(v) for i, j, v in obj.get("b_gen", [])},
        )

    def describe(self) -> str:
        q = ",".join(str(v) for v in self.q_gen)
        b = ",".join(f"{i}{j}:{v}" for (i, j), v in sorted(self.b_gen.items()))
        return f"orders={list(self.cyclic_orders)};q=[{q}]" + (f";b=[{b}]" if b else "")


def cyclic_metric(p: int, a: int = 1) -> MetricGroup:
    """(Z_p, q_a) with q_a(j) = zeta_p^{a j^2}; needs p odd or a compatible choice."""
    return MetricGroup((p,), (RootOfUnity(p, a),))


def hyperbolic(n: int) -> MetricGroup:
    """Z_n x Z_n with q(a, b) = zeta_n^{ab}."""
    return MetricGroup((n, n), (RootOfUnity(1, 0), RootOfUnity(1, 0)), {(0, 1): RootOfUnity(n, 1)})


def _label(x: Element) -> str:
    if not x:
        return "0"
    return str(x[0]) if len(x) == 1 else "(" + ",".join(map(str, x)) + ")"


def pointed(mg: MetricGroup, name: str | None = None) -> PremodularData:
    elems = mg.elements()
    twists = [mg.q(x) for x in elems]
    bvals = [[mg.b(x, y) for y in elems] for x in elems]
    L = lcm(*(v.M for row in bvals for v in row))
    S = [[v.to_cyclo().lift(L) for v in row] for row in bvals]
    return PremodularData(
        labels=[_label(x) for x in elems],
        dims=[one() for _ in elems],
        twists=twists,
        s_matrix=S,
        name=name or f"C({mg.describe()})",
        provenance=f"pointed({mg.describe()})",
        pseudounitary=True,
    )


def abelian_double_metric(cyclic_orders: Sequence[int]) -> MetricGroup:
    r = len(cyclic_orders)
    orders = tuple(cyclic_orders) + tuple(cyclic_orders)
    q = tuple(RootOfUnity(1, 0) for _ in orders)
    b = {(i, i + r): RootOfUnity(n, 1) for i, n in enumerate(cyclic_orders)}
    return MetricGroup(orders, q, b)


def abelian_double(cyclic_orders: Sequence[int]) -> PremodularData:
    """Pointed model of the double of G: G x G^ with q(g, chi) = chi(g)."""
    data = pointed(abelian_double_metric(cyclic_orders))
    tag = "x".join(f"Z{n}" for n in cyclic_orders) or "1"
    data.name = f"D({tag})"
    data.provenance = f"abelian_double({list(cyclic_orders)})"
    return data


# ---------------------------------------------------------------------------
# condensation


def smith_normal_form(A: Sequence[Sequence[int]]) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """Return (U, D, V) with U A V = D diagonal, U and V unimodular."""
    m, n = len(A), len(A[0])
    D = [list(r) for r in A]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for M in (D, V):
            for row in M:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, f):  # row_dst += f * row_src
        D[dst] = [a + f * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a + f * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, f):
        for M in (D, V):
            for row in M:
                row[dst] += f * row[src]

    for t in range(min(m, n)):
        while True:
            nonzero = [(abs(D[i][j]), i, j) for i in range(t, m) for j in range(t, n) if D[i][j]]
            if not nonzero:
                return U, D, V
            _, i, j = min(nonzero)
            swap_rows(t, i)
            swap_cols(t, j)
            clean = True
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // D[t][t]))
                    clean = clean and not D[i][t]
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // D[t][t]))
                    clean = clean and not D[t][j]
            if not clean:
                continue
            bad = next((i for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % D[t][t]), None)
            if bad is None:
                break
            add_row(t, bad, 1)
        if D[t][t] < 0:
            D[t] = [-v for v in D[t]]
            U[t] = [-v for v in U[t]]
    return U, D, V


def _solve_rational(B: list[list[int]], v: list[int]) -> list[Fraction]:
    """x with x B = v for a nonsingular square integer matrix B."""
    n = len(B)
    # transpose system: B^T x^T = v^T
    M = [[Fraction(B[j][i]) for j in range(n)] + [Fraction(v[i])] for i in range(n)]
    for c in range(n):
        p = next(r for r in range(c, n) if M[r][c] != 0)
        M[c], M[p] = M[p], M[c]
        inv = 1 / M[c][c]
        M[c] = [x * inv for x in M[c]]
        for r in range(n):
            if r != c and M[r][c] != 0:
                f = M[r][c]
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    return [M[i][n] for i in range(n)]


def subgroup_closure(mg: MetricGroup, gens: Iterable[Sequence[int]]) -> list[Element]:
    zero = tuple(0 for _ in mg.cyclic_orders)
    gens = [mg.reduce(g) for g in gens]
    seen = {zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = mg.add(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return sorted(seen)


def _lattice_basis(rows: list[list[int]], r: int) -> list[list[int]]:
    U, D, _ = smith_normal_form(rows)
    rank = sum(1 for i in range(min(len(D), r)) if D[i][i])
    UA = [[sum(U[i][k] * rows[k][j] for k in range(len(rows))) for j in range(r)] for i in range(len(rows))]
    return UA[:rank]


def condense_pointed(mg: MetricGroup, H_gens: Iterable[Sequence[int]]) -> MetricGroup:
    """The metric group (H^perp / H, q-bar) for an isotropic subgroup H."""
    H = subgroup_closure(mg, H_gens)
    for h in H:
        v = mg.q(h)
        if v != RootOfUnity(1, 0):
            raise NotIsotropic(h, v)
    r = len(mg.cyclic_orders)
    perp = [x for x in mg.elements() if all(mg.b_turns(x, h) == 0 for h in H)]
    for x in perp:
        for h in H:
            if mg.q_turns(mg.add(x, h)) != mg.q_turns(x):
                raise IllDefinedInducedForm(f"q(x+h) != q(x) at {x}, {h}")
    if r == 0:
        return mg
    relations = [[n if i == j else 0 for j in range(r)] for i, n in enumerate(mg.cyclic_orders)]
    # a small generating set of H^perp
    gens: list[Element] = []
    span = {tuple(0 for _ in range(r))}
    for x in perp:
        if x not in span:
            gens.append(x)
            span = set(subgroup_closure(mg, gens))
    B = _lattice_basis([list(g) for g in gens] + relations, r)
    hgens: list[Element] = []
    hspan = {tuple(0 for _ in range(r))}
    for h in H:
        if h not in hspan:
            hgens.append(h)
            hspan = set(subgroup_closure(mg, hgens))
    K = [list(h) for h in hgens] + relations
    coords = []
    for k in K:
        x = _solve_rational(B, k)
        assert all(c.denominator == 1 for c in x)
        coords.append([int(c) for c in x])
    _, D, V = smith_normal_form(coords)
    Vinv = _integer_inverse(V)
    new_basis = [[sum(Vinv[i][k] * B[k][j] for k in range(r)) for j in range(r)] for i in range(r)]
    orders, basis = [], []
    for i in range(r):
        d = abs(D[i][i]) if i < len(D) else 0
        if d != 1:
            if d == 0:
                raise IllDefinedInducedForm("quotient is infinite")
            orders.append(d)
            basis.append(mg.reduce(new_basis[i]))
    size = 1
    for d in orders:
        size *= d
    if size * len(H) != len(perp):
        raise IllDefinedInducedForm("quotient order mismatch")
    q_gen = tuple(mg.q(g) for g in basis)
    b_gen = {(i, j): mg.b(basis[i], basis[j]) for i in range(len(basis)) for j in range(i + 1, len(basis))}
    return MetricGroup(tuple(orders), q_gen, b_gen)


def _integer_inverse(V: list[list[int]]) -> list[list[int]]:
    n = len(V)
    cols = [_solve_rational([[V[j][i] for j in range(n)] for i in range(n)], [int(i == k) for i in range(n)]) for k in range(n)]
    # cols[k] solves x V^T = e_k, i.e. V x^T = e_k^T: column k of V^{-1}
    inv = [[cols[k][i] for k in range(n)] for i in range(n)]
    assert all(v.denominator == 1 for row in inv for v in row)
    return [[int(v) for v in row] for row in inv]
