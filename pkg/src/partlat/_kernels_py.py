"""Pure-Python lattice kernels on canonical block-id tuples.

A partition of ``{1..n}`` is a tuple ``ids`` of length ``n`` where ``ids[i]``
is the block of element ``i + 1`` and block numbers appear in first-occurrence
order starting at 0.  A point of a direct power is a tuple of such tuples.

This module mirrors ``_kernels.pyx`` function for function; the package picks
the compiled version when it is importable.
"""

BACKEND = "python"


def canonical(labels):
    """Relabel arbitrary hashable block labels into first-occurrence form."""
    seen = {}
    out = []
    for x in labels:
        c = seen.get(x)
        if c is None:
            c = seen[x] = len(seen)
        out.append(c)
    return tuple(out)


def block_count(a):
    return max(a) + 1 if a else 0


def meet(a, b):
    seen = {}
    out = []
    for key in zip(a, b):
        c = seen.get(key)
        if c is None:
            c = seen[key] = len(seen)
        out.append(c)
    return tuple(out)


def join(a, b):
    na = max(a) + 1
    parent = list(range(na + max(b) + 1))

    def find(x):
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    for x, y in zip(a, b):
        rx = find(x)
        ry = find(na + y)
        if rx != ry:
            if rx < ry:
                parent[ry] = rx
            else:
                parent[rx] = ry
    seen = {}
    out = []
    for x in a:
        r = find(x)
        c = seen.get(r)
        if c is None:
            c = seen[r] = len(seen)
        out.append(c)
    return tuple(out)


def leq(a, b):
    rep = {}
    for x, y in zip(a, b):
        r = rep.setdefault(x, y)
        if r != y:
            return False
    return True


def tuple_meet(x, y):
    return tuple([meet(a, b) for a, b in zip(x, y)])


def tuple_join(x, y):
    return tuple([join(a, b) for a, b in zip(x, y)])


def tuple_leq(x, y):
    for a, b in zip(x, y):
        if not leq(a, b):
            return False
    return True


def tuple_block_count(x):
    return sum(block_count(a) for a in x)


def tuple_distance(x, y):
    total = 0
    for a, b in zip(x, y):
        total += block_count(a) + block_count(b) - 2 * block_count(join(a, b))
    return total


def closure(gens, limit, targets=None):
    """Sublattice closure of ``gens`` (points of a direct power).

    Returns ``(elements, processed, limit_hit, found)``.  When ``targets`` (a
    set of points) is given, the loop stops as soon as every target has been
    produced; ``found`` is the number of targets present at exit.
    """
    elements = []
    index = {}
    remaining = set(targets) if targets else set()
    use_targets = bool(targets)
    found = 0
    for g in gens:
        if g not in index:
            index[g] = len(elements)
            elements.append(g)
            if g in remaining:
                remaining.discard(g)
                found += 1
    if use_targets and not remaining:
        return elements, 0, False, found
    i = 0
    while i < len(elements):
        x = elements[i]
        for j in range(i + 1):
            y = elements[j]
            for z in (tuple_meet(x, y), tuple_join(x, y)):
                if z not in index:
                    index[z] = len(elements)
                    elements.append(z)
                    if z in remaining:
                        remaining.discard(z)
                        found += 1
                        if not remaining:
                            return elements, i + 1, False, found
                    if len(elements) > limit:
                        return elements, i + 1, True, found
        i += 1
    return elements, i, False, found
