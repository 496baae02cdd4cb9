"""Premodular data: labels, dimensions, twists and an optional S-matrix.

The S-matrix is stored unnormalised, with S[0][0] = 1 and first row equal to
the dimensions.  Nothing here ever divides by sqrt(dim C); identities that
would need it are rewritten in the ratio form S[x][y] / S[0][y].
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np

from .cyclo import (
    CycloNum,
    GaloisAut,
    RootOfUnity,
    embed,
    from_json,
    lcm,
    one,
    phase_root,
    prime_factors,
    totient,
    to_json,
    zero,
)


class NotModular(ValueError):
    pass


class MissingSMatrix(NotModular):
    pass


class NonIntegralFusion(ValueError):
    def __init__(self, i: int, j: int, k: int, value=None):
        super().__init__(f"N_{{{i},{j}}}^{k} is not a nonnegative integer ({value})")
        self.i, self.j, self.k = i, j, k
        self.value = value


class NoGaloisPermutation(ValueError):
    pass


@dataclass(frozen=True)
class Diagnostic:
    kind: str
    where: tuple = ()

    def __str__(self) -> str:
        return f"{self.kind}{self.where}" if self.where else self.kind


@dataclass(eq=False)
class PremodularData:
    labels: list[str]
    dims: list[CycloNum]
    twists: list[RootOfUnity]
    s_matrix: list[list[CycloNum]] | None = None
    name: str = ""
    provenance: str = ""
    pseudounitary: bool = False
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    @property
    def rank(self) -> int:
        return len(self.labels)

    @cached_property
    def conductor(self) -> int:
        """A conductor containing every dimension, twist and S-entry."""
        values = list(self.dims)
        if self.s_matrix is not None:
            values += [x for row in self.s_matrix for x in row]
        return lcm(*(v.N for v in values), *(t.M for t in self.twists))

    @cached_property
    def lifted_dims(self) -> list[CycloNum]:
        return [d.lift(self.conductor) for d in self.dims]

    @cached_property
    def lifted_s(self) -> list[list[CycloNum]]:
        if self.s_matrix is None:
            raise MissingSMatrix(self.name)
        L = self.conductor
        return [[x.lift(L) for x in row] for row in self.s_matrix]

    @cached_property
    def ratio_table(self) -> list[list[CycloNum]]:
        """R[x][y] = S[x][y] / S[0][y], the fusion characters at y."""
        S = self.lifted_s
        inv_first = [S[0][y].inv() for y in range(self.rank)]
        return [[S[x][y] * inv_first[y] for y in range(self.rank)] for x in range(self.rank)]

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PremodularData):
            return NotImplemented
        return (
            self.labels == other.labels
            and self.dims == other.dims
            and self.twists == other.twists
            and self.s_matrix == other.s_matrix
        )

    __hash__ = None


def validate(data: PremodularData) -> list[Diagnostic]:
    out = []
    r = len(data.labels)
    if len(data.dims) != r or len(data.twists) != r:
        out.append(Diagnostic("LengthMismatch", (r, len(data.dims), len(data.twists))))
        return out
    if r == 0:
        return [Diagnostic("Empty")]
    if data.dims[0] != 1:
        out.append(Diagnostic("UnitDimension"))
    if data.twists[0] != RootOfUnity(1, 0):
        out.append(Diagnostic("UnitTwist"))
    for i, d in enumerate(data.dims):
        if d.is_zero():
            out.append(Diagnostic("ZeroDimension", (i,)))
        elif d != d.conj():
            out.append(Diagnostic("NonRealDimension", (i,)))
    S = data.s_matrix
    if S is None:
        return out
    if len(S) != r or any(len(row) != r for row in S):
        out.append(Diagnostic("SMatrixShape"))
        return out
    for i in range(r):
        for j in range(i + 1, r):
            if S[i][j] != S[j][i]:
                out.append(Diagnostic("SMatrixAsymmetric", (i, j)))
    for j in range(r):
        if S[0][j] != data.dims[j]:
            out.append(Diagnostic("SFirstRowMismatch", (j,)))
    return out


def global_dim(data: PremodularData) -> CycloNum:
    if "dim" not in data._cache:
        total = zero(data.conductor)
        for d in data.lifted_dims:
            total = total + d * d
        data._cache["dim"] = total
    return data._cache["dim"]


def t_order(data: PremodularData) -> int:
    return lcm(*(t.M for t in data.twists))


# ---------------------------------------------------------------------------
# determinants


def _is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for p in small:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # deterministic for n < 3.3e24 with these bases
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _split_primes(L: int, start: int = 1 << 40):
    """Primes p = 1 mod L with an element of exact order L in F_p."""
    t = start // L + 1
    while True:
        p = L * t + 1
        t += 1
        if not _is_probable_prime(p):
            continue
        for g in range(2, 200):
            r = pow(g, (p - 1) // L, p)
            if all(pow(r, L // q, p) != 1 for q in prime_factors(L)) or L == 1:
                yield p, r
                break


def _reduce_mod_p(a: CycloNum, L: int, p: int, r: int) -> int | None:
    if a.den % p == 0:
        return None
    step = L // a.N
    acc = 0
    for e, c in enumerate(a.num):
        if c:
            acc += c * pow(r, e * step, p)
    return acc * pow(a.den, -1, p) % p


def _det_mod_p(rows: list[list[int]], p: int) -> int:
    m = [list(r) for r in rows]
    n = len(m)
    det = 1
    for col in range(n):
        piv = next((i for i in range(col, n) if m[i][col]), None)
        if piv is None:
            return 0
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det = det * m[col][col] % p
        inv = pow(m[col][col], -1, p)
        for i in range(col + 1, n):
            f = m[i][col] * inv % p
            if f:
                m[i] = [(x - f * y) % p for x, y in zip(m[i], m[col])]
    return det % p


def exact_det(matrix: Sequence[Sequence[CycloNum]]) -> CycloNum:
    """Determinant by Gaussian elimination over Q(zeta_N)."""
    m = [list(r) for r in matrix]
    n = len(m)
    if n == 0:
        return one()
    L = lcm(*(x.N for r in m for x in r))
    m = [[x.lift(L) for x in r] for r in m]
    det = one(L)
    for col in range(n):
        piv = next((i for i in range(col, n) if not m[i][col].is_zero()), None)
        if piv is None:
            return zero(L)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        p = m[col][col]
        det = det * p
        inv = p.inv()
        for i in range(col + 1, n):
            if m[i][col].is_zero():
                continue
            f = m[i][col] * inv
            m[i] = [x - f * y for x, y in zip(m[i], m[col])]
    return det


def det_is_nonzero(matrix: Sequence[Sequence[CycloNum]], attempts: int = 3) -> bool:
    """Certify det != 0 by reduction at a split prime, else decide exactly.

    Reduction at a prime above p is a ring map, so a nonzero residue proves
    the determinant is nonzero.  Zero residues are inconclusive.
    """
    L = lcm(*(x.N for r in matrix for x in r))
    primes = _split_primes(L)
    for _ in range(attempts):
        p, r = next(primes)
        rows = [[_reduce_mod_p(x, L, p, r) for x in row] for row in matrix]
        if any(v is None for row in rows for v in row):
            continue
        if _det_mod_p(rows, p):
            return True
    return not exact_det(matrix).is_zero()


def is_modular(data: PremodularData) -> bool:
    if data.s_matrix is None:
        raise MissingSMatrix(f"{data.name or 'data'} has no S-matrix")
    if "modular" not in data._cache:
        data._cache["modular"] = det_is_nonzero(data.lifted_s)
    return data._cache["modular"]


def require_modular(data: PremodularData) -> None:
    if not is_modular(data):
        raise NotModular(data.name or "data")


# ---------------------------------------------------------------------------
# Verlinde


@dataclass(frozen=True)
class FusionTensor:
    coefficients: tuple

    @property
    def rank(self) -> int:
        return len(self.coefficients)

    def __getitem__(self, ijk: tuple[int, int, int]) -> int:
        i, j, k = ijk
        return self.coefficients[i][j][k]

    def product(self, i: int, j: int) -> dict[int, int]:
        return {k: c for k, c in enumerate(self.coefficients[i][j]) if c}

    def axiom_failures(self) -> list[tuple]:
        bad = []
        r = self.rank
        for i in range(r):
            for j in range(r):
                for k in range(r):
                    c = self[i, j, k]
                    if c < 0:
                        bad.append(("negative", i, j, k))
                    if c != self[j, i, k]:
                        bad.append(("asymmetric", i, j, k))
                if self[0, i, j] != (1 if i == j else 0):
                    bad.append(("unit", 0, i, j))
        return bad


def _numeric_s(data: PremodularData) -> np.ndarray:
    return np.array([[complex(embed(x, 64).mid) for x in row] for row in data.lifted_s])


def _exact_verlinde_entry(data: PremodularData, i: int, j: int, k: int) -> CycloNum:
    S = data.lifted_s
    total = zero(data.conductor)
    for a in range(data.rank):
        total = total + S[i][a] * S[j][a] * S[k][a].conj() / S[0][a]
    return total / global_dim(data)


def s_unitarity_holds(data: PremodularData) -> bool:
    """Exact check of S * conj(S)^T = dim(C) * I."""
    if "unitary" in data._cache:
        return data._cache["unitary"]
    S = data.lifted_s
    r = data.rank
    D = global_dim(data)
    Sbar = [[x.conj() for x in row] for row in S]
    ok = True
    for i in range(r):
        for j in range(i, r):
            acc = zero(data.conductor)
            for a in range(r):
                acc = acc + S[i][a] * Sbar[j][a]
            if acc != (D if i == j else 0):
                ok = False
                break
        if not ok:
            break
    data._cache["unitary"] = ok
    return ok


def verlinde_fusion(data: PremodularData) -> FusionTensor:
    """Fusion coefficients from the exact S-matrix.

    The rounded floating-point tensor is certified exactly: once
    S conj(S)^T = dim(C) I holds, the identities
    sum_k N_ij^k S[k][a] = S[i][a] S[j][a] / S[0][a] pin N down uniquely.
    """
    if "fusion" in data._cache:
        return data._cache["fusion"]
    require_modular(data)
    r = data.rank
    Sn = _numeric_s(data)
    Dn = complex(embed(global_dim(data), 64).mid)
    approx = np.einsum("ia,ja,ka,a->ijk", Sn, Sn, Sn.conj(), 1 / (Dn * Sn[0]))
    rounded = np.rint(approx.real).astype(np.int64)
    err = np.abs(approx - rounded)
    if err.max() > 1e-6 or rounded.min() < 0:
        i, j, k = np.unravel_index(int(np.argmax(err + (rounded < 0))), err.shape)
        exact = _exact_verlinde_entry(data, int(i), int(j), int(k))
        q = exact.as_rational()
        if q is None or q.denominator != 1 or q < 0:
            raise NonIntegralFusion(int(i), int(j), int(k), exact)
        # numerics misled us; fall through to the exact route
        return _exact_fusion(data)
    if not s_unitarity_holds(data):
        return _exact_fusion(data)
    if not _certify_fusion(data, rounded):
        return _exact_fusion(data)
    coeffs = tuple(tuple(tuple(int(rounded[i, j, k]) for k in range(r)) for j in range(r)) for i in range(r))
    tensor = FusionTensor(coeffs)
    data._cache["fusion"] = tensor
    return tensor


def _certify_fusion(data: PremodularData, N: np.ndarray) -> bool:
    """Exact check of sum_k N_ij^k S[k][a] = S[j][a] S[i][a] / S[0][a].

    The left side is an integer combination, evaluated on coefficient
    vectors scaled to a common denominator.
    """
    r = data.rank
    S = data.lifted_s
    R = data.ratio_table
    phi = totient(data.conductor)
    delta = lcm(*(x.den for row in S for x in row))
    V = np.zeros((r, r, phi), dtype=object)
    for k in range(r):
        for a in range(r):
            x = S[k][a]
            scale = delta // x.den
            for e, c in enumerate(x.num):
                V[k, a, e] = c * scale
    vmax = max((abs(int(v)) for v in V.flat), default=0)
    if vmax * max(int(N.max()), 1) * r < 2**62:
        V = V.astype(np.int64)
        N = N.astype(np.int64)
    else:
        N = N.astype(object)
    for i in range(r):
        lhs = np.einsum("jk,kae->jae", N[i], V)
        for j in range(i, r):
            for a in range(r):
                prod = S[j][a] * R[i][a]
                if delta % prod.den:
                    return False
                scale = delta // prod.den
                want = list(prod.num) + [0] * (phi - len(prod.num))
                got = lhs[j, a]
                if any(int(g) != w * scale for g, w in zip(got, want)):
                    return False
    return True


def _exact_fusion(data: PremodularData) -> FusionTensor:
    r = data.rank
    table = [[[0] * r for _ in range(r)] for _ in range(r)]
    for i in range(r):
        for j in range(i, r):
            for k in range(r):
                v = _exact_verlinde_entry(data, i, j, k)
                q = v.as_rational()
                if q is None or q.denominator != 1 or q < 0:
                    raise NonIntegralFusion(i, j, k, v)
                table[i][j][k] = table[j][i][k] = int(q)
    tensor = FusionTensor(tuple(tuple(tuple(c) for c in row) for row in table))
    data._cache["fusion"] = tensor
    return tensor


# ---------------------------------------------------------------------------
# Galois symmetry


@dataclass(frozen=True)
class GaloisSymmetry:
    sigma: GaloisAut
    perm: tuple[int, ...]
    signs: tuple[int, ...]

    def image_of_unit(self) -> int:
        return self.perm[0]


def sqrt_global_dim(data: PremodularData) -> CycloNum | None:
    """The positive-real square root of dim(C) as tau_1 / xi_1, when xi_1 is a root."""
    if "sqrtD" not in data._cache:
        tau1 = zero(data.conductor)
        for d, t in zip(data.lifted_dims, data.twists):
            tau1 = tau1 + d * d * t.to_cyclo()
        root = phase_root(tau1) if not tau1.is_zero() else None
        data._cache["sqrtD"] = None if root is None else tau1 * root.inverse().to_cyclo()
    return data._cache["sqrtD"]


def galois_symmetry(data: PremodularData, sigma: GaloisAut) -> GaloisSymmetry:
    """The permutation sigma-hat and signs epsilon_sigma.

    sigma-hat comes from matching sigma-images of the ratio columns
    S[x][y] / S[0][y].  Relative signs eps(x) eps(0) follow from
    sigma(S[x][y]) d_{sigma-hat(0)} = eps(x) eps(0) S[sigma-hat(x)][y].  The
    absolute sign eps(0) depends on how sigma acts on sqrt(dim C); it is
    fixed by the deterministic lift of sigma to a field containing it.
    """
    require_modular(data)
    r = data.rank
    R = data.ratio_table
    L = data.conductor
    sig = sigma.lift(lcm(sigma.N, L))
    k = sig.k % L
    columns = {}
    for y in range(r):
        columns.setdefault(tuple(R[x][y].key() for x in range(r)), y)
    perm = []
    for y in range(r):
        key = tuple(R[x][y].galois(k).key() for x in range(r))
        if key not in columns:
            raise NoGaloisPermutation(f"no column matches sigma_{sigma.k} of column {y}")
        perm.append(columns[key])
    if sorted(perm) != list(range(r)):
        raise NoGaloisPermutation("column matching is not a bijection")
    S = data.lifted_s
    d_img_unit = S[perm[0]][0]
    rel = []
    for x in range(r):
        eta = S[x][0].galois(k) * d_img_unit / S[perm[x]][0]
        if eta == 1:
            rel.append(1)
        elif eta == -1:
            rel.append(-1)
        else:
            raise NoGaloisPermutation(f"relative sign at {x} is {eta}")
    for x in range(r):
        for y in range(r):
            if S[x][y].galois(k) * d_img_unit != S[perm[x]][y] * rel[x]:
                raise NoGaloisPermutation(f"sign relation fails at ({x},{y})")
    eps0 = 1
    root = sqrt_global_dim(data)
    if root is not None:
        sig = sig.lift(lcm(sig.N, root.N))
        c = root.galois(sig.k % root.N) / root * d_img_unit
        if c == 1 or c == -1:
            eps0 = 1 if c == 1 else -1
        else:
            raise NoGaloisPermutation(f"sigma(sqrt D)/sqrt D * d = {c}")
    return GaloisSymmetry(sig, tuple(perm), tuple(e * eps0 for e in rel))


# ---------------------------------------------------------------------------
# products


def _pair_label(a: str, b: str) -> str:
    return f"({a},{b})"


def deligne_product(a: PremodularData, b: PremodularData) -> PremodularData:
    L = lcm(a.conductor, b.conductor)
    da = [d.lift(L) for d in a.dims]
    db = [d.lift(L) for d in b.dims]
    labels, dims, twists, index = [], [], [], []
    for i, x in enumerate(a.labels):
        for j, y in enumerate(b.labels):
            labels.append(_pair_label(x, y))
            dims.append(da[i] * db[j])
            twists.append(a.twists[i] * b.twists[j])
            index.append((i, j))
    S = None
    if a.s_matrix is not None and b.s_matrix is not None:
        Sa = [[v.lift(L) for v in row] for row in a.s_matrix]
        Sb = [[v.lift(L) for v in row] for row in b.s_matrix]
        S = [[Sa[i][k] * Sb[j][l] for (k, l) in index] for (i, j) in index]
    return PremodularData(
        labels, dims, twists, S,
        name=f"{a.name}*{b.name}",
        provenance=f"product({a.name},{b.name})",
        pseudounitary=a.pseudounitary and b.pseudounitary,
    )


def deligne_power(a: PremodularData, n: int) -> PremodularData:
    if n < 1:
        raise ValueError("power must be positive")
    out = a
    for _ in range(n - 1):
        out = deligne_product(out, a)
    out.name = f"{a.name}^{n}"
    out.provenance = f"power({a.name},{n})"
    return out


def reverse(a: PremodularData) -> PremodularData:
    S = None if a.s_matrix is None else [[x.conj() for x in row] for row in a.s_matrix]
    name = a.name[:-4] if a.name.endswith("^rev") else f"{a.name}^rev"
    return PremodularData(
        list(a.labels), list(a.dims), [t.inverse() for t in a.twists], S,
        name=name, provenance=f"rev({a.name})", pseudounitary=a.pseudounitary,
    )


def charge_conjugation(data: PremodularData) -> list[int]:
    """Duality permutation read off from S^2 / dim(C)."""
    require_modular(data)
    S = data.lifted_s
    D = global_dim(data)
    r = data.rank
    out = []
    for i in range(r):
        for j in range(r):
            acc = zero(data.conductor)
            for a in range(r):
                acc = acc + S[i][a] * S[a][j]
            if acc == D:
                out.append(j)
                break
        else:
            raise NotModular("S^2 is not a scaled permutation")
    return out


# ---------------------------------------------------------------------------
# JSON


def to_dict(data: PremodularData) -> dict:
    return {
        "name": data.name,
        "labels": list(data.labels),
        "dims": [to_json(d) for d in data.dims],
        "twists": [t.to_json() for t in data.twists],
        "smatrix": None if data.s_matrix is None else [[to_json(x) for x in row] for row in data.s_matrix],
        "provenance": data.provenance,
        "pseudounitary": data.pseudounitary,
    }


def from_dict(obj: dict) -> PremodularData:
    S = obj.get("smatrix")
    return PremodularData(
        labels=[str(x) for x in obj["labels"]],
        dims=[from_json(d) for d in obj["dims"]],
        twists=[RootOfUnity.from_json(t) for t in obj["twists"]],
        s_matrix=None if S is None else [[from_json(x) for x in row] for row in S],
        name=str(obj.get("name", "")),
        provenance=str(obj.get("provenance", "")),
        pseudounitary=bool(obj.get("pseudounitary", False)),
    )


def dumps(data: PremodularData) -> str:
    return json.dumps(to_dict(data), indent=1, ensure_ascii=False) + "\n"


def loads(text: str) -> PremodularData:
    return from_dict(json.loads(text))


def save(data: PremodularData, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(data))


def load(path) -> PremodularData:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())
