# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled canonical-labelling kernel."""

from libc.stdlib cimport malloc, free


def canonical_code(h, v, mark):
    cdef int n = len(h)
    cdef int *H = <int *> malloc(n * sizeof(int))
    cdef int *V = <int *> malloc(n * sizeof(int))
    cdef int *M = <int *> malloc(n * sizeof(int))
    cdef int *lab = <int *> malloc(n * sizeof(int))
    cdef int *order = <int *> malloc(n * sizeof(int))
    cdef int *cur = <int *> malloc(3 * n * sizeof(int))
    cdef int *best = <int *> malloc(3 * n * sizeof(int))
    cdef int s, i, k, x, y, cnt, best_start = -1, cmp
    try:
        for i in range(n):
            H[i] = h[i]
            V[i] = v[i]
            M[i] = 1 if mark[i] else 0
        for s in range(n):
            for i in range(n):
                lab[i] = -1
            lab[s] = 0
            order[0] = s
            cnt = 1
            i = 0
            while i < cnt:
                x = order[i]
                y = H[x]
                if lab[y] < 0:
                    lab[y] = cnt
                    order[cnt] = y
                    cnt += 1
                y = V[x]
                if lab[y] < 0:
                    lab[y] = cnt
                    order[cnt] = y
                    cnt += 1
                i += 1
            for i in range(n):
                x = order[i]
                cur[i] = lab[H[x]]
                cur[n + i] = lab[V[x]]
                cur[2 * n + i] = M[x]
            cmp = 0
            if best_start >= 0:
                for k in range(3 * n):
                    if cur[k] != best[k]:
                        cmp = -1 if cur[k] < best[k] else 1
                        break
            if best_start < 0 or cmp < 0:
                for k in range(3 * n):
                    best[k] = cur[k]
                best_start = s
        return tuple([best[k] for k in range(3 * n)]), best_start
    finally:
        free(H); free(V); free(M); free(lab); free(order); free(cur); free(best)
