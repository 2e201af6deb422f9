"""Finite groups as dense multiplication tables.

Elements are integers 0..n-1 and the identity always sits at index 0;
tables read from files are relabelled on ingestion to keep that invariant.
"""

from __future__ import annotations

import math
import os
import re
from dataclasses import dataclass, field

import numpy as np

from .arith import factorize, invariant_factors, p_part, prime_divisors
from .errors import (
    NotAGroupError,
    PrimeNotDividingError,
    SizeLimitError,
    UnknownSpecError,
)

DEFAULT_SIZE_LIMIT = 10_000
ASSOC_EXHAUSTIVE_LIMIT = 64
ASSOC_SAMPLES = 100_000

NILPOTENT_CATALOG = (
    "C2", "C4", "C2xC2", "C6", "C12", "Q8", "D8", "Heis3", "C3xC3xC3", "C2xQ8",
)
NON_NILPOTENT_CATALOG = ("S3", "A4", "S4", "D12")
DEFAULT_CATALOG = NILPOTENT_CATALOG + NON_NILPOTENT_CATALOG

CATALOG_ENV_VAR = "WORDMAP_CATALOG"


@dataclass(frozen=True, eq=False)
class GroupTable:
    """A finite group given by its full multiplication table."""

    order: int
    mul: np.ndarray            # (order, order) int32, mul[a, b] = a*b
    identity: int              # always 0 by construction
    inv: np.ndarray            # (order,) int32
    element_orders: np.ndarray  # (order,) int64
    name: str = ""

    def __repr__(self) -> str:
        label = self.name or "group"
        return f"GroupTable({label}, order={self.order})"

    def power(self, a: int, e: int) -> int:
        """a**e by repeated squaring; negative exponents via the inverse."""
        if e < 0:
            a, e = int(self.inv[a]), -e
        acc, base = self.identity, int(a)
        while e:
            if e & 1:
                acc = int(self.mul[acc, base])
            base = int(self.mul[base, base])
            e >>= 1
        return acc

    def conjugate(self, a: int, b: int) -> int:
        """b^-1 * a * b."""
        m = self.mul
        return int(m[m[self.inv[b], a], b])

    def commutator(self, a: int, b: int) -> int:
        """a^-1 * b^-1 * a * b."""
        m = self.mul
        return int(m[m[self.inv[a], self.inv[b]], m[a, b]])

    def exponent(self) -> int:
        return math.lcm(*(int(o) for o in self.element_orders))


def _check_latin(table: np.ndarray) -> None:
    n = table.shape[0]
    expect = np.arange(n)
    rows_ok = (np.sort(table, axis=1) == expect).all()
    cols_ok = (np.sort(table, axis=0) == expect[:, None]).all()
    if not rows_ok:
        bad = int(np.argmin((np.sort(table, axis=1) == expect).all(axis=1)))
        raise NotAGroupError(f"row {bad} is not a permutation of the elements")
    if not cols_ok:
        bad = int(np.argmin((np.sort(table, axis=0) == expect[:, None]).all(axis=0)))
        raise NotAGroupError(f"column {bad} is not a permutation of the elements")


def _check_associative(table: np.ndarray, seed: int) -> None:
    n = table.shape[0]
    if n <= ASSOC_EXHAUSTIVE_LIMIT:
        for a in range(n):
            left = table[table[a]]          # (b, c) -> (a*b)*c
            right = table[a][table]         # (b, c) -> a*(b*c)
            if not np.array_equal(left, right):
                b, c = map(int, np.argwhere(left != right)[0])
                raise NotAGroupError(
                    f"associativity fails at ({a}, {b}, {c}): "
                    f"({a}*{b})*{c} = {int(left[b, c])} but {a}*({b}*{c}) = {int(right[b, c])}"
                )
        return
    rng = np.random.default_rng(seed)
    abc = rng.integers(0, n, size=(3, ASSOC_SAMPLES))
    a, b, c = abc
    left = table[table[a, b], c]
    right = table[a, table[b, c]]
    bad = np.nonzero(left != right)[0]
    if bad.size:
        i = int(bad[0])
        raise NotAGroupError(
            f"associativity fails at sampled triple ({int(a[i])}, {int(b[i])}, {int(c[i])})"
        )


def _element_orders(table: np.ndarray, identity: int) -> np.ndarray:
    n = table.shape[0]
    orders = np.zeros(n, dtype=np.int64)
    cur = np.arange(n)
    step = 0
    while (orders == 0).any():
        step += 1
        if step > n:
            raise NotAGroupError("some element has no finite order; table is not a group")
        hit = (orders == 0) & (cur == identity)
        orders[hit] = step
        cur = table[cur, np.arange(n)]
    return orders


def build_from_cayley(table, name: str = "", seed: int = 0) -> GroupTable:
    """Validate a multiplication table and wrap it as a GroupTable.

    Checks the Latin-square property, a two-sided identity, two-sided
    inverses and associativity (exhaustively up to order 64, on 10^5 random
    triples above).  If the identity is not element 0 the table is
    relabelled by swapping it into slot 0.
    """
    table = np.asarray(table, dtype=np.int64)
    if table.ndim != 2 or table.shape[0] != table.shape[1]:
        raise NotAGroupError(f"table must be square, got shape {table.shape}")
    n = table.shape[0]
    if n == 0:
        raise NotAGroupError("empty table")
    if table.min() < 0 or table.max() >= n:
        raise NotAGroupError(f"entries must lie in 0..{n - 1}")

    _check_latin(table)

    expect = np.arange(n)
    ident_rows = np.nonzero((table == expect).all(axis=1))[0]
    identity = -1
    for e in ident_rows:
        if (table[:, e] == expect).all():
            identity = int(e)
            break
    if identity < 0:
        raise NotAGroupError("no two-sided identity element")

    if identity != 0:
        perm = np.arange(n)
        perm[0], perm[identity] = identity, 0
        table = perm[table[np.ix_(perm, perm)]]

    _check_associative(table, seed)

    inv = np.argmax(table == 0, axis=1).astype(np.int32)
    if not (table[inv, np.arange(n)] == 0).all():
        bad = int(np.argmax(table[inv, np.arange(n)] != 0))
        raise NotAGroupError(f"element {bad} has no two-sided inverse")

    orders = _element_orders(table, 0)
    return GroupTable(
        order=n,
        mul=np.ascontiguousarray(table, dtype=np.int32),
        identity=0,
        inv=inv,
        element_orders=orders,
        name=name,
    )


# ---------------------------------------------------------------------------
# Built-in families

def _cyclic(n: int) -> np.ndarray:
    i = np.arange(n)
    return (i[:, None] + i[None, :]) % n


def _dihedral(order: int) -> np.ndarray:
    # Elements are (rotation i, flip j) at index j*n + i, with the flip
    # inverting rotations: (i1,j1)*(i2,j2) = (i1 + (-1)^j1 i2, j1 xor j2).
    n = order // 2
    idx = np.arange(order)
    i1, j1 = (idx % n)[:, None], (idx // n)[:, None]
    i2, j2 = (idx % n)[None, :], (idx // n)[None, :]
    rot = (i1 + np.where(j1 == 1, -i2, i2)) % n
    return (j1 ^ j2) * n + rot


_QUAT_UNIT = [[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]]
_QUAT_SIGN = [[0, 0, 0, 0], [0, 1, 0, 1], [0, 1, 1, 0], [0, 0, 1, 1]]


def _quaternion8() -> np.ndarray:
    # Elements 1, -1, i, -i, j, -j, k, -k at index 2*unit + sign.
    table = np.zeros((8, 8), dtype=np.int64)
    for a in range(8):
        for b in range(8):
            u1, s1 = a // 2, a % 2
            u2, s2 = b // 2, b % 2
            unit = _QUAT_UNIT[u1][u2]
            sign = s1 ^ s2 ^ _QUAT_SIGN[u1][u2]
            table[a, b] = 2 * unit + sign
    return table


def _heisenberg(p: int) -> np.ndarray:
    # Upper unitriangular 3x3 matrices over F_p: element (a, b, c) at index
    # a*p^2 + b*p + c, with (a,b,c)*(a',b',c') = (a+a', b+b', c+c'+a*b').
    n = p**3
    idx = np.arange(n)
    a, b, c = idx // (p * p), (idx // p) % p, idx % p
    a1, b1, c1 = a[:, None], b[:, None], c[:, None]
    a2, b2, c2 = a[None, :], b[None, :], c[None, :]
    return ((a1 + a2) % p) * p * p + ((b1 + b2) % p) * p + (c1 + c2 + a1 * b2) % p


def _permutations_lex(n: int):
    import itertools

    return itertools.permutations(range(n))


def _perm_parity(perm) -> int:
    inversions = sum(
        1 for i in range(len(perm)) for j in range(i + 1, len(perm)) if perm[i] > perm[j]
    )
    return inversions % 2


def _table_from_perms(perms: list[tuple[int, ...]]) -> np.ndarray:
    # Composition (p*q)(x) = p(q(x)); lex order puts the identity first.
    perms = sorted(perms)
    pos = {p: i for i, p in enumerate(perms)}
    n = len(perms)
    table = np.zeros((n, n), dtype=np.int64)
    for i, p in enumerate(perms):
        for j, q in enumerate(perms):
            table[i, j] = pos[tuple(p[x] for x in q)]
    return table


def _symmetric(n: int) -> np.ndarray:
    return _table_from_perms(list(_permutations_lex(n)))


def _alternating(n: int) -> np.ndarray:
    return _table_from_perms([p for p in _permutations_lex(n) if _perm_parity(p) == 0])


def _direct_product(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    na, nb = a.shape[0], b.shape[0]
    idx = np.arange(na * nb)
    ai, bi = idx // nb, idx % nb
    return a[ai][:, ai] * nb + b[bi][:, bi]


def _parse_perm_spec(body: str, size_limit: int) -> tuple[np.ndarray, str]:
    gens_text = [g for g in body.split(";") if g.strip()]
    if not gens_text:
        raise UnknownSpecError("perm spec has no generators")
    cycles_per_gen = []
    points: set[int] = set()
    for text in gens_text:
        cycles = re.findall(r"\(([^()]*)\)", text)
        leftover = re.sub(r"\([^()]*\)", "", text).strip()
        if leftover:
            raise UnknownSpecError(f"unparsed text in perm spec: {leftover!r}")
        parsed = []
        for cyc in cycles:
            pts = [int(t) for t in re.split(r"[,\s]+", cyc.strip()) if t]
            if len(pts) != len(set(pts)):
                raise UnknownSpecError(f"repeated point in cycle ({cyc})")
            if pts:
                parsed.append(pts)
                points.update(pts)
        cycles_per_gen.append(parsed)
    if not points:
        raise UnknownSpecError("perm spec moves no points")
    label = {p: i for i, p in enumerate(sorted(points))}
    degree = len(label)
    gens = []
    for parsed in cycles_per_gen:
        perm = list(range(degree))
        for cyc in parsed:
            for src, dst in zip(cyc, cyc[1:] + cyc[:1]):
                perm[label[src]] = label[dst]
        if sorted(perm) != list(range(degree)):
            raise UnknownSpecError("generator cycles overlap inconsistently")
        gens.append(tuple(perm))

    identity = tuple(range(degree))
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = tuple(p[g[x]] for x in range(degree))
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
        if len(seen) > size_limit:
            raise SizeLimitError(
                f"permutation group exceeds the size limit ({size_limit})"
            )
        frontier = nxt
    return _table_from_perms(sorted(seen)), f"perm group on {degree} points"


def _read_cayley_file(path: str) -> np.ndarray:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            tokens = fh.read().split()
    except OSError as exc:
        raise UnknownSpecError(f"cannot read Cayley file {path!r}: {exc}") from exc
    if not tokens:
        raise UnknownSpecError(f"Cayley file {path!r} is empty")
    try:
        values = [int(t) for t in tokens]
    except ValueError as exc:
        raise UnknownSpecError(f"Cayley file {path!r} has a non-integer token") from exc
    n = values[0]
    if n < 1 or len(values) != 1 + n * n:
        raise UnknownSpecError(
            f"Cayley file {path!r} announces order {n} but has {len(values) - 1} entries"
        )
    return np.array(values[1:], dtype=np.int64).reshape(n, n)


_FACTOR_RE = re.compile(r"^(C|D|Q|S|A|Heis)(\d+)$")


def _builtin_factor(token: str) -> np.ndarray:
    m = _FACTOR_RE.match(token)
    if not m:
        raise UnknownSpecError(f"unknown group spec {token!r}")
    kind, num = m.group(1), int(m.group(2))
    if kind == "C":
        if num < 1:
            raise UnknownSpecError(f"cyclic order must be >= 1, got {num}")
        return _cyclic(num)
    if kind == "D":
        # The number is the group order, so D8 is the dihedral group of
        # order 8 (symmetries of the square).
        if num < 2 or num % 2:
            raise UnknownSpecError(f"dihedral spec needs an even order >= 2, got D{num}")
        return _dihedral(num)
    if kind == "Q":
        if num != 8:
            raise UnknownSpecError("only Q8 is built in")
        return _quaternion8()
    if kind == "S":
        if not 1 <= num <= 6:
            raise UnknownSpecError(f"S{num} not available (degree must be 1..6)")
        return _symmetric(num)
    if kind == "A":
        if not 1 <= num <= 6:
            raise UnknownSpecError(f"A{num} not available (degree must be 1..6)")
        return _alternating(num)
    if kind == "Heis":
        fact = factorize(num) if num > 1 else {}
        if len(fact) != 1 or list(fact.values()) != [1] or num == 2:
            raise UnknownSpecError(f"Heis needs an odd prime, got {num}")
        return _heisenberg(num)
    raise UnknownSpecError(f"unknown group spec {token!r}")


def builtin_group(spec: str, size_limit: int = DEFAULT_SIZE_LIMIT) -> GroupTable:
    """Build a group from a spec string.

    Specs: C<n>, D<order>, Q8, S<n>, A<n> (n <= 6), Heis<p> for odd primes p,
    products joined with 'x' (e.g. C2xQ8), 'perm:<cycles;cycles>' for a
    permutation group given by generators, and 'cayley:<path>' for a
    multiplication table read from a file.
    """
    spec = spec.strip()
    if not spec:
        raise UnknownSpecError("empty group spec")
    if spec.startswith("cayley:"):
        table = _read_cayley_file(spec[len("cayley:"):])
        if table.shape[0] > size_limit:
            raise SizeLimitError(
                f"group of order {table.shape[0]} exceeds the size limit ({size_limit})"
            )
        return build_from_cayley(table, name=spec)
    if spec.startswith("perm:"):
        table, _ = _parse_perm_spec(spec[len("perm:"):], size_limit)
        return build_from_cayley(table, name=spec)

    tokens = spec.split("x")
    tables = [_builtin_factor(tok) for tok in tokens]
    order = math.prod(t.shape[0] for t in tables)
    if order > size_limit:
        raise SizeLimitError(
            f"group of order {order} exceeds the size limit ({size_limit})"
        )
    table = tables[0]
    for t in tables[1:]:
        table = _direct_product(table, t)
    return build_from_cayley(table, name=spec)


def catalog_specs() -> list[str]:
    """Default catalog specs plus any Cayley files named by WORDMAP_CATALOG."""
    specs = list(DEFAULT_CATALOG)
    extra_dir = os.environ.get(CATALOG_ENV_VAR)
    if extra_dir:
        if not os.path.isdir(extra_dir):
            raise UnknownSpecError(
                f"{CATALOG_ENV_VAR}={extra_dir!r} is not a directory"
            )
        for entry in sorted(os.listdir(extra_dir)):
            path = os.path.join(extra_dir, entry)
            if os.path.isfile(path):
                specs.append(f"cayley:{path}")
    return specs


# ---------------------------------------------------------------------------
# Structure computations

def subgroup_closure(G: GroupTable, seeds) -> tuple[int, ...]:
    """Elements of the subgroup generated by the seed elements."""
    m, inv = G.mul, G.inv
    known = np.zeros(G.order, dtype=bool)
    known[G.identity] = True
    elems = [G.identity]
    frontier = []
    for s in seeds:
        if not known[s]:
            known[s] = True
            elems.append(int(s))
            frontier.append(int(s))
    while frontier:
        base = np.array(elems)
        fresh = []
        for x in frontier:
            candidates = np.concatenate((m[x, base], m[base, x], [inv[x]]))
            for y in np.unique(candidates):
                if not known[y]:
                    known[y] = True
                    fresh.append(int(y))
        elems.extend(fresh)
        frontier = fresh
    return tuple(sorted(elems))


def commutator_values(G: GroupTable) -> np.ndarray:
    """Sorted distinct values of [a, b] over all pairs."""
    m, inv = G.mul, G.inv
    seen = np.zeros(G.order, dtype=bool)
    for a in range(G.order):
        u = m[inv[a], inv]        # over b: a^-1 * b^-1
        v = m[a]                  # over b: a * b
        seen[m[u, v]] = True
    return np.nonzero(seen)[0]


def derived_subgroup(G: GroupTable) -> tuple[int, ...]:
    return subgroup_closure(G, commutator_values(G))


def center(G: GroupTable) -> tuple[int, ...]:
    mask = (G.mul == G.mul.T).all(axis=1)
    return tuple(int(g) for g in np.nonzero(mask)[0])


def is_abelian_oracle(G: GroupTable) -> bool:
    return bool((G.mul == G.mul.T).all())


def is_nilpotent_oracle(G: GroupTable) -> bool:
    """Nilpotency via the ascending central series on the full table."""
    m, inv = G.mul, G.inv
    n = G.order
    central = (m == m.T).all(axis=1)  # the center
    while True:
        if central.all():
            return True
        grew = False
        for g in np.nonzero(~central)[0]:
            u = m[inv[g], inv]
            comm = m[u, m[g]]     # over h: [g, h]
            if central[comm].all():
                central[g] = True
                grew = True
        if not grew:
            return False


@dataclass(frozen=True)
class SylowDecomposition:
    prime: int
    sylow_elements: tuple[int, ...]
    complement_elements: tuple[int, ...] = field(default=())


def sylow_decomposition(G: GroupTable, p: int) -> SylowDecomposition:
    """Sylow p-subgroup and its complement for a nilpotent group.

    In a nilpotent group the elements of p-power order form the unique
    Sylow p-subgroup and the elements of order prime to p its complement.
    """
    from .errors import NotNilpotentError

    if G.order % p:
        raise PrimeNotDividingError(f"{p} does not divide |G| = {G.order}")
    if not is_nilpotent_oracle(G):
        raise NotNilpotentError("Sylow factorization needs a nilpotent group")
    orders = G.element_orders
    pk, _ = p_part(G.order, p)
    is_ppower = np.array([p_part(int(o), p)[1] == 1 for o in orders])
    coprime = orders % p != 0
    sylow = tuple(int(g) for g in np.nonzero(is_ppower)[0])
    comp = tuple(int(g) for g in np.nonzero(coprime)[0])
    if len(sylow) != pk or len(sylow) * len(comp) != G.order:
        raise NotAGroupError("element orders do not split as expected")
    return SylowDecomposition(prime=p, sylow_elements=sylow, complement_elements=comp)


def subgroup_table(G: GroupTable, elements, name: str = "") -> tuple[GroupTable, tuple[int, ...]]:
    """Extract a subgroup as its own GroupTable.

    Returns the new table plus the parent-group indices in the order used,
    identity first and the rest ascending.
    """
    elems = sorted(int(g) for g in elements)
    if G.identity not in elems:
        raise ValueError("subgroup must contain the identity")
    elems = [G.identity] + [g for g in elems if g != G.identity]
    pos = np.full(G.order, -1, dtype=np.int64)
    pos[elems] = np.arange(len(elems))
    sub = G.mul[np.ix_(elems, elems)]
    if (pos[sub] < 0).any():
        a, b = map(int, np.argwhere(pos[sub] < 0)[0])
        raise ValueError(
            f"not closed: {elems[a]} * {elems[b]} = {int(sub[a, b])} is outside the set"
        )
    return build_from_cayley(pos[sub], name=name), tuple(elems)


def abelianization_order(G: GroupTable) -> int:
    return G.order // len(derived_subgroup(G))


def abelian_invariants_oracle(G: GroupTable) -> tuple[int, ...]:
    """Invariant factors of an abelian group, read off its element orders."""
    if not is_abelian_oracle(G):
        raise ValueError("invariant factors are defined here for abelian groups only")
    orders = G.element_orders
    primary: list[int] = []
    for p in prime_divisors(G.order):
        counts = [1]
        while True:
            pj = p ** len(counts)
            counts.append(int(np.count_nonzero(pj % orders == 0)))
            if counts[-1] == counts[-2]:
                counts.pop()
                break
        # counts[j] = #{x : x^(p^j) = 1}; the jumps give the cyclic factors.
        ranks = []
        for j in range(1, len(counts)):
            step = counts[j] // counts[j - 1]
            k = 0
            while step > 1:
                step //= p
                k += 1
            ranks.append(k)
        for j, rank in enumerate(ranks):
            nxt = ranks[j + 1] if j + 1 < len(ranks) else 0
            primary.extend([p ** (j + 1)] * (rank - nxt))
    return invariant_factors(tuple(sorted(primary)))
