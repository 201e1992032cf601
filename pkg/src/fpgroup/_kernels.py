"""Coset-enumeration inner loops (HLT with coincidence processing).

Tables are ``int32`` arrays of shape ``(capacity, ncols)``; column ``2*g`` is
generator ``g`` and ``2*g + 1`` its inverse, so ``col ^ 1`` is the inverse
column.  ``-1`` marks an undefined entry.  Cosets are numbered from 0 and
coset 0 is the subgroup coset.  ``parent`` is the union-find forest of
coincidences; a coset is live iff ``parent[c] == c``.

These functions are jitted with numba unless ``FPGROUP_DISABLE_NUMBA`` is set.
"""

import numpy as np

from ._jit import njit

OK = 0
NEED_ROOM = 1

COMPLETE = 0
OVERFLOW = 1

# stats slots
STAT_DEFINED = 0
STAT_MAX_LIVE = 1
STAT_COMPACTIONS = 2
STAT_LOOKAHEADS = 3
STAT_COINCIDENCES = 4


@njit(cache=True)
def _rep(parent, c):
    root = c
    while parent[root] != root:
        root = parent[root]
    while parent[c] != root:
        nxt = parent[c]
        parent[c] = root
        c = nxt
    return root


@njit(cache=True)
def _merge(parent, queue, qlen, a, b):
    a = _rep(parent, a)
    b = _rep(parent, b)
    if a == b:
        return qlen
    if a > b:
        a, b = b, a
    parent[b] = a
    queue[qlen] = b
    return qlen + 1


@njit(cache=True)
def _coincidence(table, parent, queue, a, b, stats):
    """Identify cosets ``a`` and ``b`` and every consequence; higher numbers die."""
    ncols = table.shape[1]
    qlen = _merge(parent, queue, 0, a, b)
    i = 0
    while i < qlen:
        dead = queue[i]
        i += 1
        stats[STAT_COINCIDENCES] += 1
        for x in range(ncols):
            delta = table[dead, x]
            if delta < 0:
                continue
            xi = x ^ 1
            if table[delta, xi] == dead:
                table[delta, xi] = -1
            mu = _rep(parent, dead)
            nu = _rep(parent, delta)
            if table[mu, x] >= 0:
                qlen = _merge(parent, queue, qlen, nu, table[mu, x])
            elif table[nu, xi] >= 0:
                qlen = _merge(parent, queue, qlen, mu, table[nu, xi])
            else:
                table[mu, x] = nu
                table[nu, xi] = mu
    return qlen


@njit(cache=True)
def _scan(table, parent, queue, alpha, word, fill, n, stats):
    """Trace ``word`` from ``alpha`` forwards and backwards.

    Closes one-letter gaps by deduction and records coincidences.  With
    ``fill`` set, new cosets are defined to bridge longer gaps; when the
    table has no spare row the scan stops and reports ``NEED_ROOM``.
    Returns ``(status, n)`` where ``n`` is the number of rows in use.
    """
    cap = table.shape[0]
    length = word.shape[0]
    f = alpha
    i = 0
    b = alpha
    j = length - 1
    while True:
        while i <= j and table[f, word[i]] >= 0:
            f = table[f, word[i]]
            i += 1
        if i > j:
            if f != alpha:
                _coincidence(table, parent, queue, f, alpha, stats)
            return OK, n
        while j >= i and table[b, word[j] ^ 1] >= 0:
            b = table[b, word[j] ^ 1]
            j -= 1
        if j < i:
            _coincidence(table, parent, queue, f, b, stats)
            return OK, n
        if i == j:
            table[f, word[i]] = b
            table[b, word[i] ^ 1] = f
            return OK, n
        if not fill:
            return OK, n
        if n >= cap:
            return NEED_ROOM, n
        table[f, word[i]] = n
        table[n, word[i] ^ 1] = f
        parent[n] = n
        n += 1
        stats[STAT_DEFINED] += 1
        _note_live(stats)


@njit(cache=True)
def _note_live(stats):
    live = stats[STAT_DEFINED] - stats[STAT_COINCIDENCES]
    if live > stats[STAT_MAX_LIVE]:
        stats[STAT_MAX_LIVE] = live


@njit(cache=True)
def _compact(table, parent, n):
    """Renumber live cosets ``0..live-1`` preserving order; returns ``(live, newnum)``."""
    ncols = table.shape[1]
    newnum = np.full(n, -1, np.int32)
    live = 0
    for c in range(n):
        if parent[c] == c:
            newnum[c] = live
            live += 1
    for c in range(n):
        d = newnum[c]
        if d < 0:
            continue
        for x in range(ncols):
            e = table[c, x]
            table[d, x] = newnum[e] if e >= 0 else -1
    for c in range(live, n):
        for x in range(ncols):
            table[c, x] = -1
    for c in range(n):
        parent[c] = c
    return live, newnum


@njit(cache=True)
def _count_live(parent, n):
    live = 0
    for c in range(n):
        if parent[c] == c:
            live += 1
    return live


@njit(cache=True)
def _lookahead(table, parent, queue, rel_flat, rel_off, n, stats):
    """Scan every live coset under every relator without defining anything."""
    stats[STAT_LOOKAHEADS] += 1
    for c in range(n):
        for r in range(rel_off.shape[0] - 1):
            if parent[c] != c:
                break
            _scan(table, parent, queue, c, rel_flat[rel_off[r]:rel_off[r + 1]], False, n, stats)


@njit(cache=True)
def _make_room(table, parent, queue, rel_flat, rel_off, n, stats, alpha):
    """Free rows by compaction, running a lookahead first if nothing is dead.

    Returns ``(ok, n, alpha, alive)``: ``alpha`` is renumbered, or if it died
    it becomes the new number of the next live coset after it.
    """
    if _count_live(parent, n) == n:
        _lookahead(table, parent, queue, rel_flat, rel_off, n, stats)
        if _count_live(parent, n) == n:
            return False, n, alpha, True
    alive = parent[alpha] == alpha
    pos = 0
    for c in range(alpha):
        if parent[c] == c:
            pos += 1
    n, _ = _compact(table, parent, n)
    stats[STAT_COMPACTIONS] += 1
    return True, n, pos, alive


@njit(cache=True)
def hlt_enumerate(ncols, rel_flat, rel_off, sub_flat, sub_off, max_cosets):
    """Enumerate cosets with the HLT strategy.

    Returns ``(status, table, n, stats)``; on ``COMPLETE`` the first ``n`` rows
    of ``table`` are a complete, compacted coset table.
    """
    table = np.full((max_cosets, ncols), -1, np.int32)
    parent = np.arange(max_cosets).astype(np.int32)
    queue = np.empty(max_cosets, np.int32)
    stats = np.zeros(5, np.int64)
    n = 1
    stats[STAT_DEFINED] = 1
    stats[STAT_MAX_LIVE] = 1

    for h in range(sub_off.shape[0] - 1):
        word = sub_flat[sub_off[h]:sub_off[h + 1]]
        while True:
            status, n = _scan(table, parent, queue, 0, word, True, n, stats)
            if status == OK:
                break
            ok, n, _, _ = _make_room(table, parent, queue, rel_flat, rel_off, n, stats, 0)
            if not ok:
                return OVERFLOW, table, n, stats

    nrel = rel_off.shape[0] - 1
    alpha = 0
    while alpha < n:
        if parent[alpha] != alpha:
            alpha += 1
            continue
        # set when alpha dies in a compaction: alpha then names its live successor
        resume = False
        r = 0
        while r < nrel:
            word = rel_flat[rel_off[r]:rel_off[r + 1]]
            status, n = _scan(table, parent, queue, alpha, word, True, n, stats)
            if status == OK:
                if parent[alpha] != alpha:
                    break
                r += 1
                continue
            ok, n, alpha, alive = _make_room(table, parent, queue, rel_flat, rel_off,
                                             n, stats, alpha)
            if not ok:
                return OVERFLOW, table, n, stats
            if not alive:
                resume = True
                break
        if resume:
            continue
        if parent[alpha] != alpha:
            alpha += 1
            continue
        x = 0
        while x < ncols:
            if table[alpha, x] >= 0:
                x += 1
                continue
            if n >= max_cosets:
                ok, n, alpha, alive = _make_room(table, parent, queue, rel_flat, rel_off,
                                                 n, stats, alpha)
                if not ok:
                    return OVERFLOW, table, n, stats
                if not alive:
                    resume = True
                    break
                continue
            table[alpha, x] = n
            table[n, x ^ 1] = alpha
            parent[n] = n
            n += 1
            stats[STAT_DEFINED] += 1
            _note_live(stats)
            x += 1
        if resume:
            continue
        alpha += 1

    n, _ = _compact(table, parent, n)
    return COMPLETE, table, n, stats


@njit(cache=True)
def trace(table, start, word):
    """Image of ``start`` under ``word`` (column codes); -1 if undefined on the way."""
    c = start
    for k in range(word.shape[0]):
        c = table[c, word[k]]
        if c < 0:
            return -1
    return c
