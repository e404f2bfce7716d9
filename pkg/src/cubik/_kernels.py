"""Compiled inner loops for lifting, filtering and enumeration.

Grids are passed as int64 arrays ``x`` and ``o`` (column of the X / O marking
in each row).  Bend ``b`` is the X-bend whose X sits in row ``b``.  Bends are
tracked in bitmasks, so grids are limited to 62 rows.
"""

import numpy as np
from numba import njit

CANDIDATE = 0
NO_PARTIAL_ORDER = 1
TYPE1 = 2
TYPE2 = 3

LIFT_OK = 0
LIFT_NO_ORDER = 1
LIFT_NO_EXTENSION = 2

# counter slots filled by process_x
C_VISITED = 0
C_KNOTS = 1
C_NO_ORDER = 2
C_TYPE1 = 3
C_TYPE2 = 4
C_CANDIDATE = 5
C_LIFTED = 6
C_AUDITED = 7
C_AUDIT_VIOLATIONS = 8
N_COUNTERS = 9


@njit(cache=True)
def geometry(x, o):
    n = x.shape[0]
    orow = np.empty(n, np.int64)
    for r in range(n):
        orow[o[r]] = r
    succ = np.empty(n, np.int64)
    vlo = np.empty(n, np.int64)
    vhi = np.empty(n, np.int64)
    hlo = np.empty(n, np.int64)
    hhi = np.empty(n, np.int64)
    for b in range(n):
        s = orow[x[b]]
        succ[b] = s
        vlo[b] = min(b, s)
        vhi[b] = max(b, s)
        hlo[b] = min(o[b], x[b])
        hhi[b] = max(o[b], x[b])
    return succ, vlo, vhi, hlo, hhi


@njit(cache=True)
def is_knot(succ):
    n = succ.shape[0]
    b = succ[0]
    length = 1
    while b != 0:
        b = succ[b]
        length += 1
        if length > n:
            return False
    return length == n


@njit(cache=True)
def over_matrix(x, vlo, vhi, hlo, hhi):
    """over[a, b]: the vertical of bend a crosses over the horizontal of bend b."""
    n = x.shape[0]
    over = np.zeros((n, n), np.bool_)
    for a in range(n):
        c = x[a]
        for b in range(vlo[a] + 1, vhi[a]):
            if hlo[b] < c < hhi[b]:
                over[a, b] = True
    return over


@njit(cache=True)
def closure(over):
    n = over.shape[0]
    reach = over.copy()
    for k in range(n):
        for i in range(n):
            if reach[i, k]:
                for j in range(n):
                    if reach[k, j]:
                        reach[i, j] = True
    return reach


@njit(cache=True)
def has_cycle(reach):
    for i in range(reach.shape[0]):
        if reach[i, i]:
            return True
    return False


@njit(cache=True)
def exclusion_table(x, succ, vlo, vhi, hlo, hhi):
    """Bend b may not take a level strictly between those of p and succ[p].

    The O marking between p and q = succ[p] sits at (row q, col x[p]) and
    carries a z-parallel edge spanning the levels of p and q.  A bend whose
    vertical passes that row to the right of the O, or whose horizontal passes
    that column below the O, would break the crossing rule in the (y,z) or
    (z,x) projection if its level fell inside that span.
    Returns (count[b], p_of[b, k], q_of[b, k]).
    """
    n = x.shape[0]
    count = np.zeros(n, np.int64)
    p_of = np.empty((n, n), np.int64)
    q_of = np.empty((n, n), np.int64)
    for p in range(n):
        q = succ[p]
        col = x[p]
        row = q
        for b in range(n):
            if b == p or b == q:
                continue
            if (vlo[b] < row < vhi[b] and x[b] > col) or (hlo[b] < col < hhi[b] and b < row):
                p_of[b, count[b]] = p
                q_of[b, count[b]] = q
                count[b] += 1
    return count, p_of, q_of


@njit(cache=True)
def search_levels(x, o, pins):
    """Backtracking search for a level assignment (bend -> z level).

    Levels are filled bottom-up.  ``pins[b] >= 0`` forces bend b to that
    level.  Returns (status, levels).
    """
    n = x.shape[0]
    levels = np.full(n, -1, np.int64)
    succ, vlo, vhi, hlo, hhi = geometry(x, o)
    over = over_matrix(x, vlo, vhi, hlo, hhi)
    reach = closure(over)
    if has_cycle(reach):
        return LIFT_NO_ORDER, levels
    below_mask = np.zeros(n, np.int64)
    deadline = np.empty(n, np.int64)
    for a in range(n):
        n_above = 0
        for b in range(n):
            if over[a, b]:
                below_mask[a] |= np.int64(1) << b
            if reach[b, a]:
                n_above += 1
        deadline[a] = n - 1 - n_above
        if pins[a] >= 0:
            deadline[a] = min(deadline[a], pins[a])
    cnt, p_of, q_of = exclusion_table(x, succ, vlo, vhi, hlo, hhi)

    # fail-first: bends that must be placed soonest are tried first
    order = np.argsort(deadline * n + np.arange(n))
    pinned_at = np.full(n, -1, np.int64)
    for b in range(n):
        if pins[b] >= 0:
            pinned_at[pins[b]] = b

    chosen = np.full(n, -1, np.int64)  # bend placed at each level
    cursor = np.zeros(n, np.int64)  # position in `order` to resume from
    mask = np.int64(0)
    level = 0
    while True:
        if level == n:
            for lv in range(n):
                levels[chosen[lv]] = lv
            return LIFT_OK, levels
        found = -1
        dead = False
        for b in range(n):
            if not (mask >> b) & 1 and deadline[b] < level:
                dead = True
                break
        if not dead:
            k = cursor[level]
            while k < n:
                b = order[k]
                k += 1
                if (mask >> b) & 1:
                    continue
                if pinned_at[level] >= 0 and pinned_at[level] != b:
                    continue
                if pins[b] >= 0 and pins[b] != level:
                    continue
                if below_mask[b] & ~mask:
                    continue
                ok = True
                for t in range(cnt[b]):
                    if ((mask >> p_of[b, t]) & 1) != ((mask >> q_of[b, t]) & 1):
                        ok = False
                        break
                if ok:
                    found = b
                    break
            cursor[level] = k
        if found >= 0:
            chosen[level] = found
            mask |= np.int64(1) << found
            level += 1
            if level < n:
                cursor[level] = 0
        else:
            cursor[level] = 0
            level -= 1
            if level < 0:
                return LIFT_NO_EXTENSION, levels
            mask &= ~(np.int64(1) << chosen[level])
            chosen[level] = -1


@njit(cache=True)
def lift_status(x, o):
    pins = np.full(x.shape[0], -1, np.int64)
    status, _ = search_levels(x, o, pins)
    return status


@njit(cache=True)
def lex_least_levels(x, o):
    """Lexicographically least valid assignment in bend-index order."""
    n = x.shape[0]
    pins = np.full(n, -1, np.int64)
    status, levels = search_levels(x, o, pins)
    if status != LIFT_OK:
        return status, levels
    used = np.zeros(n, np.bool_)
    for b in range(n):
        for v in range(n):
            if used[v]:
                continue
            pins[b] = v
            st, lv = search_levels(x, o, pins)
            if st == LIFT_OK:
                levels = lv
                used[v] = True
                break
    return LIFT_OK, levels


@njit(cache=True)
def in_region(anchor, col, row, x, vlo, vhi, hlo, hhi):
    """0 outside; 1 beside the vertical; 2 above the horizontal; 3 both."""
    code = 0
    if vlo[anchor] < row < vhi[anchor] and col < x[anchor]:
        code |= 1
    if hlo[anchor] < col < hhi[anchor] and row > anchor:
        code |= 2
    return code


@njit(cache=True)
def type1_fires_at(B, reach, x, succ, vlo, vhi, hlo, hhi):
    run_below = False
    run_above = False
    b = succ[B]
    while b != B:
        if reach[B, b]:
            run_below = True
        if reach[b, B]:
            run_above = True
        if run_below and run_above:
            return True
        nb = succ[b]
        if nb == B:
            break
        if in_region(B, x[b], nb, x, vlo, vhi, hlo, hhi) == 0:
            run_below = False
            run_above = False
        b = nb
    return False


@njit(cache=True)
def type1_any(reach, x, succ, vlo, vhi, hlo, hhi, skip):
    for B in range(x.shape[0]):
        if not skip[B] and type1_fires_at(B, reach, x, succ, vlo, vhi, hlo, hhi):
            return B
    return -1


@njit(cache=True)
def augmented(reach, hi, lo):
    """Closure after adding the relation hi > lo."""
    n = reach.shape[0]
    out = reach.copy()
    for i in range(n):
        if i == hi or reach[i, hi]:
            for j in range(n):
                if j == lo or reach[lo, j]:
                    out[i, j] = True
    return out


@njit(cache=True)
def type2_pair(reach, x, succ, vlo, vhi, hlo, hhi, skip):
    """First incomparable pair (a, b) for which both relative orders are refuted."""
    n = x.shape[0]
    for a in range(n):
        for b in range(a + 1, n):
            if reach[a, b] or reach[b, a]:
                continue
            r1 = augmented(reach, a, b)
            if has_cycle(r1) or type1_any(r1, x, succ, vlo, vhi, hlo, hhi, skip) >= 0:
                r2 = augmented(reach, b, a)
                if has_cycle(r2) or type1_any(r2, x, succ, vlo, vhi, hlo, hhi, skip) >= 0:
                    return a, b
    return -1, -1


@njit(cache=True)
def filter_code(x, o):
    n = x.shape[0]
    succ, vlo, vhi, hlo, hhi = geometry(x, o)
    reach = closure(over_matrix(x, vlo, vhi, hlo, hhi))
    if has_cycle(reach):
        return NO_PARTIAL_ORDER
    skip = np.zeros(n, np.bool_)
    if type1_any(reach, x, succ, vlo, vhi, hlo, hhi, skip) >= 0:
        return TYPE1
    a, _ = type2_pair(reach, x, succ, vlo, vhi, hlo, hhi, skip)
    if a >= 0:
        return TYPE2
    return CANDIDATE


# --- permutations -------------------------------------------------------------

@njit(cache=True)
def next_permutation(a):
    n = a.shape[0]
    i = n - 2
    while i >= 0 and a[i] >= a[i + 1]:
        i -= 1
    if i < 0:
        return False
    j = n - 1
    while a[j] <= a[i]:
        j -= 1
    a[i], a[j] = a[j], a[i]
    lo = i + 1
    hi = n - 1
    while lo < hi:
        a[lo], a[hi] = a[hi], a[lo]
        lo += 1
        hi -= 1
    return True


@njit(cache=True)
def perm_rank(a):
    n = a.shape[0]
    rank = np.int64(0)
    for i in range(n):
        smaller = 0
        for j in range(i + 1, n):
            if a[j] < a[i]:
                smaller += 1
        rank = rank * (n - i) + smaller
    return rank


@njit(cache=True)
def perm_unrank(rank, n):
    digits = np.empty(n, np.int64)
    for i in range(n - 1, -1, -1):
        base = n - i
        digits[i] = rank % base
        rank //= base
    pool = np.arange(n)
    out = np.empty(n, np.int64)
    size = n
    for i in range(n):
        d = digits[i]
        out[i] = pool[d]
        for k in range(d, size - 1):
            pool[k] = pool[k + 1]
        size -= 1
    return out


# --- enumeration --------------------------------------------------------------

@njit(cache=True)
def process_x(x, knots_only, use_filters, do_lift, audit_every, audit_phase):
    """Visit every O permutation for a fixed X permutation, in lex order.

    Returns (counters, lifted O permutations as rows of a 2D array).
    ``audit_every > 0`` re-lifts every k-th filtered grid to check that the
    filter never rejects a liftable grid.
    """
    n = x.shape[0]
    counts = np.zeros(N_COUNTERS, np.int64)
    lifted = np.empty((0, n), np.int64)
    buf = np.empty((64, n), np.int64)
    nbuf = 0
    o = np.arange(n)
    filtered_seen = audit_phase
    while True:
        legal = True
        for r in range(n):
            if x[r] == o[r]:
                legal = False
                break
        if legal:
            counts[C_VISITED] += 1
            succ, vlo, vhi, hlo, hhi = geometry(x, o)
            knot = is_knot(succ)
            if knot:
                counts[C_KNOTS] += 1
            if knot or not knots_only:
                code = CANDIDATE
                if use_filters and knot:
                    code = filter_code(x, o)
                if code == NO_PARTIAL_ORDER:
                    counts[C_NO_ORDER] += 1
                elif code == TYPE1:
                    counts[C_TYPE1] += 1
                elif code == TYPE2:
                    counts[C_TYPE2] += 1
                else:
                    counts[C_CANDIDATE] += 1
                if code != CANDIDATE and audit_every > 0:
                    filtered_seen += 1
                    if filtered_seen % audit_every == 0:
                        counts[C_AUDITED] += 1
                        if lift_status(x, o) == LIFT_OK:
                            counts[C_AUDIT_VIOLATIONS] += 1
                if code == CANDIDATE and do_lift and knot:
                    if lift_status(x, o) == LIFT_OK:
                        counts[C_LIFTED] += 1
                        if nbuf == buf.shape[0]:
                            lifted = np.concatenate((lifted, buf[:nbuf]))
                            nbuf = 0
                        buf[nbuf, :] = o
                        nbuf += 1
        if not next_permutation(o):
            break
    lifted = np.concatenate((lifted, buf[:nbuf]))
    return counts, lifted


# --- translations and Legendrian invariants -----------------------------------

@njit(cache=True)
def canonical_translate(x, o):
    """Lexicographically least (x, o) over all n^2 torus translations."""
    n = x.shape[0]
    best_x = np.empty(n, np.int64)
    best_o = np.empty(n, np.int64)
    cx = np.empty(n, np.int64)
    co = np.empty(n, np.int64)
    have = False
    for dr in range(n):
        dc = (n - x[dr]) % n
        for r in range(n):
            cx[r] = (x[(r + dr) % n] + dc) % n
            co[r] = (o[(r + dr) % n] + dc) % n
        better = not have
        if have:
            for r in range(2 * n):
                a = cx[r] if r < n else co[r - n]
                b = best_x[r] if r < n else best_o[r - n]
                if a != b:
                    better = a < b
                    break
        if better:
            best_x[:] = cx
            best_o[:] = co
            have = True
    return best_x, best_o


@njit(cache=True)
def writhe_k(x, o):
    n = x.shape[0]
    succ, vlo, vhi, hlo, hhi = geometry(x, o)
    w = 0
    for a in range(n):
        c = x[a]
        dv = 1 if succ[a] > a else -1
        for b in range(vlo[a] + 1, vhi[a]):
            if hlo[b] < c < hhi[b]:
                dh = 1 if x[b] > o[b] else -1
                w -= dv * dh
    return w


@njit(cache=True)
def tb_rot(x, o):
    """(tb, r) of the front; same corner rules as invariants.legendrian_data."""
    n = x.shape[0]
    xrow = np.empty(n, np.int64)
    orow = np.empty(n, np.int64)
    for r in range(n):
        xrow[x[r]] = r
        orow[o[r]] = r
    down = 0
    up = 0
    for r in range(n):
        # X corner: incoming horizontal from the O in this row
        c = x[r]
        east = o[r] > c
        north = orow[c] > r
        if east and not north:  # NW corner
            down += 1
        elif not east and north:  # SE corner
            up += 1
        # O corner: incoming vertical
        c = o[r]
        east = x[r] > c
        north = xrow[c] > r
        if east and not north:
            up += 1
        elif not east and north:
            down += 1
    w = writhe_k(x, o)
    return w - (down + up) // 2, (down - up) // 2


# --- census -------------------------------------------------------------------

@njit(cache=True)
def census_arrays(n, with_lift):
    """All knot grids of size n in (rank x, rank o) order.

    Returns ids (rank_x * n! + rank_o), canonical-translate ids, tb, r and a
    lift flag (all False unless ``with_lift``).
    """
    fact = 1
    for k in range(2, n + 1):
        fact *= k
    total = fact
    for k in range(2, n):
        total *= k
    ids = np.empty(total, np.int64)
    canon = np.empty(total, np.int64)
    tbs = np.empty(total, np.int64)
    rots = np.empty(total, np.int64)
    lifts = np.zeros(total, np.bool_)
    x = np.arange(n)
    k = 0
    rx = 0
    while True:
        o = np.arange(n)
        ro = 0
        while True:
            legal = True
            for r in range(n):
                if x[r] == o[r]:
                    legal = False
                    break
            if legal:
                succ, vlo, vhi, hlo, hhi = geometry(x, o)
                if is_knot(succ):
                    ids[k] = rx * fact + ro
                    bx, bo = canonical_translate(x, o)
                    canon[k] = perm_rank(bx) * fact + perm_rank(bo)
                    t, rot = tb_rot(x, o)
                    tbs[k] = t
                    rots[k] = rot
                    if with_lift:
                        lifts[k] = lift_status(x, o) == LIFT_OK
                    k += 1
            ro += 1
            if not next_permutation(o):
                break
        rx += 1
        if not next_permutation(x):
            break
    return ids, canon, tbs, rots, lifts


@njit(cache=True)
def _find(parent, i):
    root = i
    while parent[root] != root:
        root = parent[root]
    while parent[i] != root:
        nxt = parent[i]
        parent[i] = root
        i = nxt
    return root


@njit(cache=True)
def _union(parent, a, b):
    ra = _find(parent, a)
    rb = _find(parent, b)
    if ra != rb:
        if ra < rb:
            parent[rb] = ra
        else:
            parent[ra] = rb


@njit(cache=True)
def interleaved(a1, b1, a2, b2):
    """Two chords (a1,b1), (a2,b2) with distinct endpoints alternate."""
    lo1 = min(a1, b1)
    hi1 = max(a1, b1)
    in2a = lo1 < a2 < hi1
    in2b = lo1 < b2 < hi1
    return in2a != in2b


@njit(cache=True)
def move_classes(n, ids):
    """Union-find roots of the sorted knot-grid ids under cyclic and commutation moves."""
    fact = 1
    for k in range(2, n + 1):
        fact *= k
    m = ids.shape[0]
    parent = np.arange(m)
    nx = np.empty(n, np.int64)
    no = np.empty(n, np.int64)
    for idx in range(m):
        x = perm_unrank(ids[idx] // fact, n)
        o = perm_unrank(ids[idx] % fact, n)
        for mv in range(2 + 2 * n):
            if mv == 0:  # bottom row to top
                for r in range(n):
                    nx[r] = x[(r + 1) % n]
                    no[r] = o[(r + 1) % n]
            elif mv == 1:  # left column to right
                for r in range(n):
                    nx[r] = (x[r] - 1) % n
                    no[r] = (o[r] - 1) % n
            elif mv < 2 + n:  # commute rows i, i+1
                i = mv - 2
                j = (i + 1) % n
                if x[i] == x[j] or x[i] == o[j] or o[i] == x[j] or o[i] == o[j]:
                    continue
                if interleaved(x[i], o[i], x[j], o[j]):
                    continue
                nx[:] = x
                no[:] = o
                nx[i], nx[j] = x[j], x[i]
                no[i], no[j] = o[j], o[i]
            else:  # commute columns i, i+1
                i = mv - 2 - n
                j = (i + 1) % n
                xr_i = -1
                xr_j = -1
                or_i = -1
                or_j = -1
                for r in range(n):
                    if x[r] == i:
                        xr_i = r
                    if x[r] == j:
                        xr_j = r
                    if o[r] == i:
                        or_i = r
                    if o[r] == j:
                        or_j = r
                if xr_i == xr_j or xr_i == or_j or or_i == xr_j or or_i == or_j:
                    continue
                if interleaved(xr_i, or_i, xr_j, or_j):
                    continue
                for r in range(n):
                    nx[r] = j if x[r] == i else (i if x[r] == j else x[r])
                    no[r] = j if o[r] == i else (i if o[r] == j else o[r])
            key = perm_rank(nx) * fact + perm_rank(no)
            pos = np.searchsorted(ids, key)
            if pos < m and ids[pos] == key:
                _union(parent, idx, pos)
    roots = np.empty(m, np.int64)
    for idx in range(m):
        roots[idx] = _find(parent, idx)
    return roots
