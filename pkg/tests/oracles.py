"""Brute-force reimplementations used only as test oracles.

Everything here favours obviousness over speed: scalar arithmetic,
itertools over assignment tuples, closures computed one product at a
time.  None of it shares code with the package beyond reading the raw
multiplication table, so agreement is meaningful evidence.
"""

import itertools


def mul(G, a, b):
    return int(G.mul[a, b])


def inv(G, a):
    return int(G.inv[a])


def power(G, a, e):
    # Linear-time powering on purpose.
    if e < 0:
        a, e = inv(G, a), -e
    acc = 0
    for _ in range(e):
        acc = mul(G, acc, a)
    return acc


def element_order(G, a):
    acc, k = a, 1
    while acc != 0:
        acc = mul(G, acc, a)
        k += 1
    return k


def commutator(G, a, b):
    return mul(G, mul(G, inv(G, a), inv(G, b)), mul(G, a, b))


def evaluate_word(G, word, assignment, params=()):
    acc = 0
    for sym, exp in word.letters:
        base = assignment[sym - 1] if sym > 0 else params[-sym - 1]
        acc = mul(G, acc, power(G, base, exp))
    return acc


def fiber_counts(G, word, n, params=()):
    counts = [0] * G.order
    for assignment in itertools.product(range(G.order), repeat=n):
        counts[evaluate_word(G, word, assignment, params)] += 1
    return tuple(counts)


def function_table(G, word, n, params=()):
    return [
        evaluate_word(G, word, assignment, params)
        for assignment in itertools.product(range(G.order), repeat=n)
    ]


def closure(G, seed):
    members = {0} | {int(s) for s in seed}
    while True:
        grown = {mul(G, a, b) for a in members for b in members}
        grown |= {inv(G, a) for a in members}
        if grown <= members:
            return members
        members |= grown


def is_abelian(G):
    return all(
        mul(G, a, b) == mul(G, b, a)
        for a in range(G.order)
        for b in range(G.order)
    )


def is_nilpotent_lcs(G):
    """Nilpotency via the lower central series, G_{k+1} = <[G, G_k]>.

    The package decides this through the ascending central series, so the
    two can only agree by both being right.
    """
    current = set(range(G.order))
    while True:
        comms = {
            commutator(G, g, h) for g in range(G.order) for h in current
        }
        nxt = closure(G, comms)
        if nxt == current:
            return current == {0}
        current = nxt


def wordmap_tables(G, n, cap=100_000):
    """Function tables of every n-variable word map, by scalar closure."""
    assignments = list(itertools.product(range(G.order), repeat=n))
    gens = [tuple(a[v] for a in assignments) for v in range(n)]
    multipliers = gens + [tuple(inv(G, x) for x in g) for g in gens]
    identity = (0,) * len(assignments)
    seen = {identity}
    frontier = [identity]
    while frontier:
        fresh = []
        for t in frontier:
            for m in multipliers:
                prod = tuple(mul(G, a, b) for a, b in zip(t, m))
                if prod not in seen:
                    seen.add(prod)
                    fresh.append(prod)
        if len(seen) > cap:
            raise RuntimeError(f"more than {cap} word maps")
        frontier = fresh
    return seen
