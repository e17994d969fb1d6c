"""Pure-Python kernels (fallback when the compiled extension is absent)."""


def canonical_code(h, v, mark):
    """Least relabelled encoding ``h' + v' + mark'`` over all BFS starts.

    Returns ``(code, start)`` where ``start`` is the first square achieving
    the minimum.
    """
    n = len(h)
    best = None
    best_start = 0
    for s in range(n):
        lab = [-1] * n
        order = [s]
        lab[s] = 0
        i = 0
        while i < len(order):
            x = order[i]
            y = h[x]
            if lab[y] < 0:
                lab[y] = len(order)
                order.append(y)
            y = v[x]
            if lab[y] < 0:
                lab[y] = len(order)
                order.append(y)
            i += 1
        code = (
            tuple(lab[h[x]] for x in order)
            + tuple(lab[v[x]] for x in order)
            + tuple(1 if mark[x] else 0 for x in order)
        )
        if best is None or code < best:
            best = code
            best_start = s
    return best, best_start
