# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled lattice kernels on canonical block-id tuples.

Same contract as ``_kernels_py``; scratch buffers are module level and grown
on demand, which is safe because every entry point holds the GIL.
"""

from cpython.tuple cimport PyTuple_New, PyTuple_SET_ITEM, PyTuple_GET_ITEM, PyTuple_GET_SIZE
from cpython.ref cimport Py_INCREF
from libc.stdlib cimport malloc, realloc, free

BACKEND = "cython"

cdef long *_ia = NULL
cdef long *_ib = NULL
cdef long *_parent = NULL
cdef long *_label = NULL
cdef long *_table = NULL
cdef Py_ssize_t _cap = 0
cdef Py_ssize_t _table_cap = 0


cdef int _reserve(Py_ssize_t n) except -1:
    global _ia, _ib, _parent, _label, _cap
    if n <= _cap:
        return 0
    cdef Py_ssize_t cap = max(n, 2 * _cap, 64)
    _ia = <long *> realloc(_ia, cap * sizeof(long))
    _ib = <long *> realloc(_ib, cap * sizeof(long))
    _parent = <long *> realloc(_parent, 2 * cap * sizeof(long))
    _label = <long *> realloc(_label, 2 * cap * sizeof(long))
    if _ia == NULL or _ib == NULL or _parent == NULL or _label == NULL:
        raise MemoryError()
    _cap = cap
    return 0


cdef int _reserve_table(Py_ssize_t size) except -1:
    global _table, _table_cap
    cdef Py_ssize_t i
    if size <= _table_cap:
        return 0
    _table = <long *> realloc(_table, size * sizeof(long))
    if _table == NULL:
        raise MemoryError()
    for i in range(_table_cap, size):
        _table[i] = -1
    _table_cap = size
    return 0


cdef inline long _load(tuple a, long *dst) except -1:
    cdef Py_ssize_t i, n = PyTuple_GET_SIZE(a)
    cdef long v, m = -1
    for i in range(n):
        v = <object> PyTuple_GET_ITEM(a, i)
        dst[i] = v
        if v > m:
            m = v
    return m + 1


cdef inline tuple _emit(long *src, Py_ssize_t n):
    cdef tuple out = PyTuple_New(n)
    cdef Py_ssize_t i
    cdef object v
    for i in range(n):
        v = src[i]
        Py_INCREF(v)
        PyTuple_SET_ITEM(out, i, v)
    return out


cdef inline long _find(long x):
    cdef long root = x, nxt
    while _parent[root] != root:
        root = _parent[root]
    while _parent[x] != root:
        nxt = _parent[x]
        _parent[x] = root
        x = nxt
    return root


cdef tuple _meet(tuple a, tuple b):
    cdef Py_ssize_t i, n = PyTuple_GET_SIZE(a)
    _reserve(n)
    cdef long na = _load(a, _ia)
    cdef long nb = _load(b, _ib)
    _reserve_table(na * nb)
    cdef long nxt = 0, key, c
    for i in range(n):
        key = _ia[i] * nb + _ib[i]
        c = _table[key]
        if c < 0:
            c = nxt
            _table[key] = c
            nxt += 1
        _label[i] = c
    for i in range(n):
        _table[_ia[i] * nb + _ib[i]] = -1
    return _emit(_label, n)


cdef tuple _join(tuple a, tuple b):
    cdef Py_ssize_t i, n = PyTuple_GET_SIZE(a)
    _reserve(n)
    cdef long na = _load(a, _ia)
    cdef long nb = _load(b, _ib)
    cdef long rx, ry, r, nxt = 0
    for i in range(na + nb):
        _parent[i] = i
    for i in range(n):
        rx = _find(_ia[i])
        ry = _find(na + _ib[i])
        if rx != ry:
            if rx < ry:
                _parent[ry] = rx
            else:
                _parent[rx] = ry
    for i in range(na + nb):
        _label[i] = -1
    for i in range(n):
        r = _find(_ia[i])
        if _label[r] < 0:
            _label[r] = nxt
            nxt += 1
        _ib[i] = _label[r]
    return _emit(_ib, n)


cdef bint _leq(tuple a, tuple b) except -1:
    cdef Py_ssize_t i, n = PyTuple_GET_SIZE(a)
    _reserve(n)
    cdef long na = _load(a, _ia)
    _load(b, _ib)
    for i in range(na):
        _label[i] = -1
    for i in range(n):
        if _label[_ia[i]] < 0:
            _label[_ia[i]] = _ib[i]
        elif _label[_ia[i]] != _ib[i]:
            return False
    return True


def canonical(labels):
    seen = {}
    out = []
    for x in labels:
        c = seen.get(x)
        if c is None:
            c = seen[x] = len(seen)
        out.append(c)
    return tuple(out)


def block_count(tuple a):
    return max(a) + 1 if a else 0


def meet(tuple a, tuple b):
    return _meet(a, b)


def join(tuple a, tuple b):
    return _join(a, b)


def leq(tuple a, tuple b):
    return _leq(a, b)


cdef tuple _tuple_meet(tuple x, tuple y):
    cdef Py_ssize_t i, t = PyTuple_GET_SIZE(x)
    cdef tuple out = PyTuple_New(t)
    cdef object z
    for i in range(t):
        z = _meet(<tuple> PyTuple_GET_ITEM(x, i), <tuple> PyTuple_GET_ITEM(y, i))
        Py_INCREF(z)
        PyTuple_SET_ITEM(out, i, z)
    return out


cdef tuple _tuple_join(tuple x, tuple y):
    cdef Py_ssize_t i, t = PyTuple_GET_SIZE(x)
    cdef tuple out = PyTuple_New(t)
    cdef object z
    for i in range(t):
        z = _join(<tuple> PyTuple_GET_ITEM(x, i), <tuple> PyTuple_GET_ITEM(y, i))
        Py_INCREF(z)
        PyTuple_SET_ITEM(out, i, z)
    return out


def tuple_meet(tuple x, tuple y):
    return _tuple_meet(x, y)


def tuple_join(tuple x, tuple y):
    return _tuple_join(x, y)


def tuple_leq(tuple x, tuple y):
    cdef Py_ssize_t i, t = PyTuple_GET_SIZE(x)
    for i in range(t):
        if not _leq(<tuple> PyTuple_GET_ITEM(x, i), <tuple> PyTuple_GET_ITEM(y, i)):
            return False
    return True


cdef Py_ssize_t _blocks(tuple a):
    cdef Py_ssize_t i, m = -1, v
    for i in range(PyTuple_GET_SIZE(a)):
        v = <Py_ssize_t> (<object> PyTuple_GET_ITEM(a, i))
        if v > m:
            m = v
    return m + 1


def tuple_block_count(tuple x):
    cdef Py_ssize_t i, total = 0
    for i in range(PyTuple_GET_SIZE(x)):
        total += _blocks(<tuple> PyTuple_GET_ITEM(x, i))
    return total


def tuple_distance(tuple x, tuple y):
    cdef Py_ssize_t i, total = 0
    cdef tuple a, b
    for i in range(PyTuple_GET_SIZE(x)):
        a = <tuple> PyTuple_GET_ITEM(x, i)
        b = <tuple> PyTuple_GET_ITEM(y, i)
        total += _blocks(a) + _blocks(b) - 2 * _blocks(_join(a, b))
    return total


def closure(gens, Py_ssize_t limit, targets=None):
    cdef list elements = []
    cdef dict index = {}
    cdef set remaining = set(targets) if targets else set()
    cdef bint use_targets = bool(targets)
    cdef Py_ssize_t found = 0, i, j
    cdef tuple x, y, z
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
        x = <tuple> elements[i]
        for j in range(i + 1):
            y = <tuple> elements[j]
            for k in range(2):
                z = _tuple_meet(x, y) if k == 0 else _tuple_join(x, y)
                if z not in index:
                    index[z] = len(elements)
                    elements.append(z)
                    if use_targets and z in remaining:
                        remaining.discard(z)
                        found += 1
                        if not remaining:
                            return elements, i + 1, False, found
                    if len(elements) > limit:
                        return elements, i + 1, True, found
        i += 1
    return elements, i, False, found
