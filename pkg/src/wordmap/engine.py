"""Exact fiber distributions of word maps, and the group they generate.

Counting is always exact: numpy does the bulk evaluation and the final
counts are Python integers, so padding with unused variables never loses
precision however large |G|^n gets.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    ArityMismatchError,
    BudgetExceededError,
    CapExceededError,
    IncompleteSetError,
    MissingParameterError,
)
from .groups import GroupTable
from .words import Word, _reduce

DEFAULT_TUPLE_BUDGET = 10**8
DEFAULT_MAP_CAP = 10**6
_CHUNK = 1 << 20


@dataclass(frozen=True)
class FiberDistribution:
    """Fiber sizes of one word map, indexed by group element."""

    group_order: int
    arity: int
    counts: tuple[int, ...]

    def __post_init__(self):
        if len(self.counts) != self.group_order:
            raise ValueError("counts length must equal the group order")
        if sum(self.counts) != self.total:
            raise ValueError("counts must sum to |G|^arity")

    @property
    def total(self) -> int:
        return self.group_order**self.arity

    @property
    def support_size(self) -> int:
        return sum(1 for c in self.counts if c)

    @property
    def surjective(self) -> bool:
        return all(c > 0 for c in self.counts)

    @property
    def uniform(self) -> bool:
        fiber = self.group_order ** (self.arity - 1)
        return all(c == fiber for c in self.counts)

    @property
    def uniform_over_support(self) -> bool:
        nonzero = {c for c in self.counts if c}
        return len(nonzero) <= 1

    @property
    def identity_count(self) -> int:
        return self.counts[0]

    def probabilities(self):
        from fractions import Fraction

        return tuple(Fraction(c, self.total) for c in self.counts)

    def to_json_dict(self) -> dict:
        return {
            "group_order": self.group_order,
            "arity": self.arity,
            "counts": list(self.counts),
            "total": self.total,
            "surjective": self.surjective,
            "uniform": self.uniform,
        }


def _power_vector(G: GroupTable, e: int) -> np.ndarray:
    """Vector v with v[g] = g^e."""
    n = G.order
    base = G.inv.astype(np.int64) if e < 0 else np.arange(n, dtype=np.int64)
    acc = np.zeros(n, dtype=np.int64)
    k = abs(e)
    m = G.mul
    while k:
        if k & 1:
            acc = m[acc, base]
        base = m[base, base]
        k >>= 1
    return acc


def _letter_plan(word: Word, G: GroupTable, params):
    """Precompute, per letter, either (var position, power vector) or a scalar."""
    used = word.variables
    pos = {v: i for i, v in enumerate(used)}
    pow_vectors: dict[int, np.ndarray] = {}
    plan = []
    for sym, exp in word.letters:
        if sym > 0:
            if exp not in pow_vectors:
                pow_vectors[exp] = _power_vector(G, exp)
            plan.append((pos[sym], pow_vectors[exp]))
        else:
            slot = -sym - 1
            if slot >= len(params):
                raise MissingParameterError(
                    f"word uses parameter g{slot} but only {len(params)} were given"
                )
            plan.append((None, G.power(params[slot], exp)))
    return used, plan


def _count_block(G, plan, used, start, stop):
    n = G.order
    k = len(used)
    idx = np.arange(start, stop, dtype=np.int64)
    cols = [(idx // n ** (k - 1 - i)) % n for i in range(k)]
    acc = np.zeros(idx.size, dtype=np.int64)
    m = G.mul
    for pos, op in plan:
        acc = m[acc, op[cols[pos]] if pos is not None else op]
    return np.bincount(acc, minlength=n)


def fiber_distribution(
    word: Word,
    G: GroupTable,
    n: int | None = None,
    params=(),
    tuple_budget: int = DEFAULT_TUPLE_BUDGET,
    threads: int = 1,
) -> FiberDistribution:
    """Exact fiber sizes of the word map G^n -> G.

    Only the variables that occur are enumerated; absent ones multiply every
    count by |G| analytically, so the budget is charged |G|^(occurring).
    """
    if n is None:
        n = word.arity
    elif n < word.arity:
        raise ArityMismatchError(f"cannot restrict a word of arity {word.arity} to {n}")
    word = word.with_arity(n)
    used, plan = _letter_plan(word, G, params)
    k = len(used)
    needed = G.order**k
    if needed > tuple_budget:
        raise BudgetExceededError(
            f"evaluating over {G.order}^{k} = {needed} assignments exceeds the "
            f"budget of {tuple_budget}",
            required=needed,
        )

    counts = np.zeros(G.order, dtype=np.int64)
    starts = range(0, needed, _CHUNK)
    if threads > 1 and len(starts) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            futures = [
                pool.submit(_count_block, G, plan, used, s, min(s + _CHUNK, needed))
                for s in starts
            ]
            for f in futures:
                counts += f.result()
    else:
        for s in starts:
            counts += _count_block(G, plan, used, s, min(s + _CHUNK, needed))

    pad = G.order ** (n - k)  # exact, as a Python int
    return FiberDistribution(
        group_order=G.order,
        arity=n,
        counts=tuple(int(c) * pad for c in counts),
    )


def word_function_table(
    word: Word,
    G: GroupTable,
    n: int | None = None,
    params=(),
    tuple_budget: int = DEFAULT_TUPLE_BUDGET,
) -> np.ndarray:
    """The full value table of the word map over G^n, flat in row-major order."""
    if n is None:
        n = word.arity
    word = word.with_arity(n)
    total = G.order**n
    if total > tuple_budget:
        raise BudgetExceededError(
            f"a table over {G.order}^{n} = {total} assignments exceeds the "
            f"budget of {tuple_budget}",
            required=total,
        )
    _, plan = _letter_plan(word, G, params)
    pos_of = {v: i for i, v in enumerate(word.variables)}
    full_pos = {i: v - 1 for v, i in pos_of.items()}  # plan position -> variable slot
    out = np.empty(total, dtype=np.int64)
    m = G.mul
    for start in range(0, total, _CHUNK):
        idx = np.arange(start, min(start + _CHUNK, total), dtype=np.int64)
        acc = np.zeros(idx.size, dtype=np.int64)
        for pos, op in plan:
            if pos is None:
                acc = m[acc, op]
            else:
                col = (idx // G.order ** (n - 1 - full_pos[pos])) % G.order
                acc = m[acc, op[col]]
        out[start:start + idx.size] = acc
    return out


# ---------------------------------------------------------------------------
# The group of n-variable word maps under pointwise product

@dataclass
class WordMapGroup:
    """All n-variable word maps of G, closed under pointwise product.

    Function tables are stored as rows of ``tables``; ``index`` maps a
    table's bytes to its row.  Each non-identity element records the parent
    and generator multiplier that first produced it, so a representative
    word can be reconstructed.
    """

    group: GroupTable
    arity: int
    tables: np.ndarray
    index: dict[bytes, int]
    generator_indices: tuple[int, ...]
    complete: bool
    parents: np.ndarray = field(repr=False)      # (m, 2): parent row, signed generator
    inverse_table: np.ndarray = field(repr=False)  # value-wise inverse lookup

    @property
    def order(self) -> int:
        return len(self.tables)

    def table(self, i: int) -> np.ndarray:
        return self.tables[i]

    def index_of_table(self, table: np.ndarray) -> int | None:
        key = np.ascontiguousarray(table, dtype=self.tables.dtype).tobytes()
        return self.index.get(key)

    def contains_table(self, table: np.ndarray) -> bool:
        return self.index_of_table(table) is not None

    def mul_index(self, i: int, j: int) -> int:
        value = self.group.mul[self.tables[i], self.tables[j]]
        k = self.index_of_table(value)
        if k is None:
            raise IncompleteSetError("product leaves the enumerated part")
        return k

    def inv_index(self, i: int) -> int:
        value = self.inverse_table[self.tables[i]]
        k = self.index_of_table(value)
        if k is None:
            raise IncompleteSetError("inverse leaves the enumerated part")
        return k

    def power_index(self, i: int, e: int) -> int:
        if e < 0:
            i, e = self.inv_index(i), -e
        acc = 0
        base = i
        while e:
            if e & 1:
                acc = self.mul_index(acc, base)
            base = self.mul_index(base, base)
            e >>= 1
        return acc

    def index_of_word(self, word: Word) -> int:
        """Locate a word's function table by index-level multiplication."""
        if word.parameter_slots:
            raise ValueError("word maps are parameter-free")
        if word.arity > self.arity:
            raise ArityMismatchError(
                f"word arity {word.arity} exceeds the enumeration arity {self.arity}"
            )
        acc = 0
        for sym, exp in word.letters:
            acc = self.mul_index(acc, self.power_index(self.generator_indices[sym - 1], exp))
        return acc

    def word_of(self, i: int) -> Word:
        """A representative word for element i, read off the parent chain."""
        letters = []
        while i != 0:
            parent, sym = self.parents[i]
            letters.append((int(abs(sym)), 1 if sym > 0 else -1))
            i = int(parent)
        return Word(self.arity, _reduce(reversed(letters)))

    def fiber_counts(self, i: int) -> tuple[int, ...]:
        return tuple(int(c) for c in np.bincount(self.tables[i], minlength=self.group.order))


def enumerate_wordmap_group(
    G: GroupTable, n: int, map_cap: int = DEFAULT_MAP_CAP
) -> WordMapGroup:
    """Breadth-first closure of the projections under pointwise product.

    Elements are discovered level by level (word length), each level sorted
    lexicographically by function table, so the numbering is deterministic.
    Raises CapExceededError carrying the partial enumeration when the cap
    is hit.
    """
    if n < 1:
        raise ValueError("arity must be >= 1")
    if map_cap < 2 * n + 1:
        raise ValueError(f"map cap {map_cap} cannot even hold the projections")
    size = G.order**n
    if size > DEFAULT_MAP_CAP:
        raise BudgetExceededError(
            f"a single function table needs {size} entries, above the "
            f"{DEFAULT_MAP_CAP} limit",
            required=size,
        )
    dtype = np.uint8 if G.order <= 256 else np.dtype(">u2")
    idx = np.arange(size, dtype=np.int64)
    gens = []
    for v in range(n):
        gens.append(((idx // G.order ** (n - 1 - v)) % G.order).astype(dtype))

    multipliers = [(v + 1, gens[v]) for v in range(n)]
    multipliers += [(-(v + 1), G.inv[gens[v]].astype(dtype)) for v in range(n)]

    identity = np.zeros(size, dtype=dtype)
    tables = [identity]
    index = {identity.tobytes(): 0}
    parents = [(-1, 0)]
    frontier = [0]
    m = G.mul

    def build(complete: bool) -> WordMapGroup:
        return WordMapGroup(
            group=G,
            arity=n,
            tables=np.stack(tables),
            index=index,
            generator_indices=tuple(index[g.tobytes()] for g in gens),
            complete=complete,
            parents=np.array(parents, dtype=np.int64),
            inverse_table=G.inv.astype(dtype),
        )

    while frontier:
        seen_this_level: dict[bytes, tuple[np.ndarray, int, int]] = {}
        for i in frontier:
            f = tables[i]
            for sym, mult in multipliers:
                h = m[f, mult].astype(dtype)
                key = h.tobytes()
                if key not in index and key not in seen_this_level:
                    seen_this_level[key] = (h, i, sym)
        fresh = []
        for key in sorted(seen_this_level):
            h, parent, sym = seen_this_level[key]
            if len(tables) >= map_cap:
                raise CapExceededError(
                    f"word-map group of {G.name or 'G'} on {n} variables exceeds "
                    f"the cap of {map_cap} elements",
                    partial=build(False),
                )
            index[key] = len(tables)
            tables.append(h)
            parents.append((parent, sym))
            fresh.append(index[key])
        frontier = fresh
    return build(True)


def derived_subgroup_of(wmg: WordMapGroup) -> frozenset[int]:
    """Element indices of the derived subgroup of the word-map group."""
    gens = list(wmg.generator_indices)
    seeds = set()
    for a in gens:
        for b in gens:
            if a != b:
                ai, bi = wmg.inv_index(a), wmg.inv_index(b)
                seeds.add(wmg.mul_index(wmg.mul_index(ai, bi), wmg.mul_index(a, b)))
    seeds.discard(0)

    def closure(gen_set):
        members = {0} | set(gen_set)
        frontier = list(gen_set)
        while frontier:
            fresh = []
            snapshot = list(members)
            for x in frontier:
                for y in snapshot:
                    for z in (wmg.mul_index(x, y), wmg.mul_index(y, x)):
                        if z not in members:
                            members.add(z)
                            fresh.append(z)
                xi = wmg.inv_index(x)
                if xi not in members:
                    members.add(xi)
                    fresh.append(xi)
            frontier = fresh
        return members

    while True:
        sub = closure(seeds)
        new = set()
        for d in list(seeds):
            for g in gens:
                gi = wmg.inv_index(g)
                conj = wmg.mul_index(wmg.mul_index(gi, d), g)
                if conj not in sub:
                    new.add(conj)
        if not new:
            return frozenset(sub)
        seeds |= new


# ---------------------------------------------------------------------------
# Distribution sets

@dataclass(frozen=True)
class DistributionSet:
    """Deduplicated fiber-count vectors of every n-variable word map."""

    group_order: int
    arity: int
    distributions: tuple[tuple[int, ...], ...]
    map_count: int | None
    complete: bool = True

    def __post_init__(self):
        if list(self.distributions) != sorted(self.distributions):
            raise ValueError("distributions must be sorted lexicographically")

    def __len__(self) -> int:
        return len(self.distributions)

    def to_json_dict(self) -> dict:
        return {
            "group_order": self.group_order,
            "arity": self.arity,
            "map_count": self.map_count,
            "distributions": [list(v) for v in self.distributions],
        }


def distribution_set(
    G: GroupTable, n: int, map_cap: int = DEFAULT_MAP_CAP
) -> DistributionSet:
    """All distinct fiber-count vectors over the n-variable word maps."""
    wmg = enumerate_wordmap_group(G, n, map_cap)
    seen = {wmg.fiber_counts(i) for i in range(wmg.order)}
    return DistributionSet(
        group_order=G.order,
        arity=n,
        distributions=tuple(sorted(seen)),
        map_count=wmg.order,
    )


def distribution_of_table(G: GroupTable, table: np.ndarray, arity: int) -> FiberDistribution:
    counts = np.bincount(np.asarray(table, dtype=np.int64), minlength=G.order)
    return FiberDistribution(G.order, arity, tuple(int(c) for c in counts))


# ---------------------------------------------------------------------------
# Assorted exact counting helpers

def solutions_count_xd(G: GroupTable, d: int) -> tuple[int, tuple[int, ...]]:
    """Solutions of x^d = identity: their number and the elements."""
    if d < 1:
        raise ValueError("the exponent must be positive")
    sols = tuple(int(g) for g in np.nonzero(d % G.element_orders == 0)[0])
    return len(sols), sols


def convolve_distributions(
    u: FiberDistribution, v: FiberDistribution, G: GroupTable
) -> FiberDistribution:
    """Distribution of u(x)*v(y) on disjoint variables, by convolution over G."""
    if u.group_order != G.order or v.group_order != G.order:
        raise ValueError("distributions must live on the given group")
    out = [0] * G.order
    for a, ca in enumerate(u.counts):
        if not ca:
            continue
        row = G.mul[a]
        for b, cb in enumerate(v.counts):
            if cb:
                out[int(row[b])] += ca * cb
    return FiberDistribution(G.order, u.arity + v.arity, tuple(out))
