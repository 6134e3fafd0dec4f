"""Pure-Python reference kernels for exhaustive subset scans.

Graphs are passed as neighbour bitmasks ``nbr[v]`` and degrees ``deg[v]``.
The compiled module ``_kernels`` implements the same functions with the same
visiting order and tie-breaking, so both return identical witnesses.
"""

INF = 1 << 62


def gray_min_boundary(nbr, deg, fix_last=True):
    """Minimum edge boundary for every subset size, scanning subsets in Gray-code order.

    With ``fix_last`` the last vertex is kept out of S and each visited set also
    stands for its complement (same boundary), halving the scan.
    Returns ``(minb, witness)``: lists indexed by size; ``INF`` where no set was seen.
    """
    nv = len(nbr)
    free = nv - 1 if (fix_last and nv > 0) else nv
    full = (1 << nv) - 1
    minb = [INF] * (nv + 1)
    wit = [0] * (nv + 1)
    minb[0] = 0
    if fix_last:
        minb[nv] = 0
        wit[nv] = full
    S = 0
    b = 0
    size = 0
    for i in range(1, 1 << free):
        v = (i & -i).bit_length() - 1
        m = 1 << v
        x = (nbr[v] & S).bit_count()
        if S & m:
            S ^= m
            size -= 1
            b -= deg[v] - 2 * x
        else:
            S |= m
            size += 1
            b += deg[v] - 2 * x
        if b < minb[size]:
            minb[size] = b
            wit[size] = S
        if fix_last:
            cs = nv - size
            if b < minb[cs]:
                minb[cs] = b
                wit[cs] = full ^ S
    return minb, wit


def combo_min_boundary(nbr, deg, size):
    """Minimum edge boundary over all subsets of one size, in lexicographic order."""
    nv = len(nbr)
    if size < 0 or size > nv:
        raise ValueError("size out of range")
    idx = list(range(size))
    best, best_set = INF, 0
    while True:
        S = 0
        for v in idx:
            S |= 1 << v
        b = 0
        for v in idx:
            b += deg[v] - (nbr[v] & S).bit_count()
        if b < best:
            best, best_set = b, S
        j = size - 1
        while j >= 0 and idx[j] == nv - size + j:
            j -= 1
        if j < 0:
            break
        idx[j] += 1
        for t in range(j + 1, size):
            idx[t] = idx[t - 1] + 1
    return best, best_set


def gray_min_conductance(nbr, deg):
    """Exact minimum of ``|dS| / (2 vol S)`` over S with ``vol S <= vol V / 2``.

    Scans subsets avoiding the last vertex; each stands for itself or its
    complement, whichever has the smaller volume.  Returns
    ``(boundary, 2 * volume, witness)`` of the minimising side.
    """
    nv = len(nbr)
    full = (1 << nv) - 1
    total = sum(deg)
    best_num, best_den, best_set = 1, 0, 0
    S = 0
    b = 0
    vol = 0
    for i in range(1, 1 << (nv - 1)):
        v = (i & -i).bit_length() - 1
        m = 1 << v
        x = (nbr[v] & S).bit_count()
        if S & m:
            S ^= m
            b -= deg[v] - 2 * x
            vol -= deg[v]
        else:
            S |= m
            b += deg[v] - 2 * x
            vol += deg[v]
        if vol <= total - vol:
            side, sv = S, vol
        else:
            side, sv = full ^ S, total - vol
        if sv == 0:
            continue
        if best_den == 0 or b * best_den < best_num * 2 * sv:
            best_num, best_den, best_set = b, 2 * sv, side
    return best_num, best_den, best_set
