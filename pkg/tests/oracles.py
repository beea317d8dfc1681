"""Independent reference implementations used as test oracles.

Everything here works on explicit sets of pairs or lists of blocks and shares
no code with the package.
"""

from collections import deque
from math import comb, factorial


def set_partitions(elements):
    """All partitions of ``elements`` as lists of frozensets (recursive)."""
    elements = list(elements)
    if not elements:
        yield []
        return
    first, rest = elements[0], elements[1:]
    for part in set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [part[i] | {first}] + part[i + 1:]
        yield part + [frozenset([first])]


def blocks_to_pairs(blocks):
    return frozenset((x, y) for b in blocks for x in b for y in b)


def pairs_to_blocks(pairs, n):
    seen, out = set(), []
    for x in range(1, n + 1):
        if x in seen:
            continue
        block = frozenset(y for y in range(1, n + 1) if (x, y) in pairs)
        seen |= block
        out.append(block)
    return out


def canonical_text(blocks):
    ordered = sorted((sorted(b) for b in blocks), key=lambda b: b[0])
    return "|".join(",".join(map(str, b)) for b in ordered)


def brute_meet(p, q):
    return p & q


def brute_join(p, q, n):
    """Transitive closure of the union of two equivalence relations."""
    rel = set(p | q)
    changed = True
    while changed:
        changed = False
        for (a, b) in list(rel):
            for c in range(1, n + 1):
                if (b, c) in rel and (a, c) not in rel:
                    rel.add((a, c))
                    changed = True
    return frozenset(rel)


def all_partitions_pairs(n):
    return [blocks_to_pairs(b) for b in set_partitions(range(1, n + 1))]


def hasse_distances(n):
    """All-pairs distances in the Hasse diagram of Part(n) by BFS."""
    parts = [frozenset(frozenset(b) for b in p) for p in set_partitions(range(1, n + 1))]
    index = {p: i for i, p in enumerate(parts)}
    adj = [[] for _ in parts]
    for i, p in enumerate(parts):
        bl = list(p)
        for a in range(len(bl)):
            for b in range(a + 1, len(bl)):
                merged = frozenset([x for k, x in enumerate(bl) if k not in (a, b)] + [bl[a] | bl[b]])
                j = index[merged]
                adj[i].append(j)
                adj[j].append(i)
    dist = []
    for s in range(len(parts)):
        d = [-1] * len(parts)
        d[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for v in adj[u]:
                if d[v] < 0:
                    d[v] = d[u] + 1
                    queue.append(v)
        dist.append(d)
    return parts, dist


def stirling_explicit(n, r):
    """S(n, r) from the inclusion-exclusion formula."""
    return sum((-1) ** i * comb(r, i) * (r - i) ** n for i in range(r + 1)) // factorial(r)


def bell_triangle(n):
    row = [1]
    bells = [1]
    for _ in range(n):
        new = [row[-1]]
        for x in row:
            new.append(new[-1] + x)
        row = new
        bells.append(row[0])
    return bells


def brute_closure(gens, n):
    """Sublattice generated by pair-set partitions, naive double loop."""
    current = set(gens)
    while True:
        new = set(current)
        for x in current:
            for y in current:
                new.add(brute_meet(x, y))
                new.add(brute_join(x, y, n))
        if new == current:
            return current
        current = new


def xorshift64star_reference(state, count):
    """Plain-integer xorshift64* stream (shifts 12, 25, 27)."""
    mask = (1 << 64) - 1
    out = []
    for _ in range(count):
        state ^= state >> 12
        state ^= (state << 25) & mask
        state ^= state >> 27
        out.append((state * 0x2545F4914F6CDD1D) & mask)
    return out
