# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled BFS kernels over CSR adjacency arrays."""
import numpy as np
cimport numpy as cnp

ctypedef cnp.int32_t i32
ctypedef cnp.uint8_t u8


def ball(const i32[:] indptr, const i32[:] indices, const u8[:] allowed, int src, int r):
    cdef int n = indptr.shape[0] - 1
    cdef i32[:] dist = np.full(n, -1, dtype=np.int32)
    cdef i32[:] queue = np.empty(n, dtype=np.int32)
    cdef int head = 0, tail = 0, a, b, e
    dist[src] = 0
    queue[tail] = src
    tail += 1
    while head < tail:
        a = queue[head]
        head += 1
        if dist[a] >= r:
            continue
        for e in range(indptr[a], indptr[a + 1]):
            b = indices[e]
            if allowed[b] and dist[b] < 0:
                dist[b] = dist[a] + 1
                queue[tail] = b
                tail += 1
    return np.asarray(queue[:tail]).copy()


def cluster(const i32[:] indptr, const i32[:] indices, const i32[:] pos,
            const u8[:] allowed, int root, int r):
    cdef int n = indptr.shape[0] - 1
    cdef i32[:] dist = np.full(n, -1, dtype=np.int32)
    cdef i32[:] queue = np.empty(n, dtype=np.int32)
    cdef int head = 0, tail = 0, a, b, e
    cdef int floor = pos[root]
    dist[root] = 0
    queue[tail] = root
    tail += 1
    while head < tail:
        a = queue[head]
        head += 1
        if dist[a] >= r:
            continue
        for e in range(indptr[a], indptr[a + 1]):
            b = indices[e]
            if allowed[b] and dist[b] < 0 and pos[b] >= floor:
                dist[b] = dist[a] + 1
                queue[tail] = b
                tail += 1
    return np.asarray(queue[:tail]).copy()


def wreach_sizes(const i32[:] indptr, const i32[:] indices, const i32[:] pos, int r):
    cdef int n = indptr.shape[0] - 1
    cdef i32[:] sizes = np.zeros(n, dtype=np.int32)
    cdef i32[:] dist = np.full(n, -1, dtype=np.int32)
    cdef i32[:] queue = np.empty(n, dtype=np.int32)
    cdef int root, head, tail, a, b, e, floor, i
    for root in range(n):
        floor = pos[root]
        head = 0
        tail = 0
        dist[root] = 0
        queue[tail] = root
        tail += 1
        while head < tail:
            a = queue[head]
            head += 1
            sizes[a] += 1
            if dist[a] >= r:
                continue
            for e in range(indptr[a], indptr[a + 1]):
                b = indices[e]
                if dist[b] < 0 and pos[b] >= floor:
                    dist[b] = dist[a] + 1
                    queue[tail] = b
                    tail += 1
        for i in range(tail):
            dist[queue[i]] = -1
    return np.asarray(sizes).copy()


def sreach_sizes(const i32[:] indptr, const i32[:] indices, const i32[:] pos, int r):
    cdef int n = indptr.shape[0] - 1
    cdef i32[:] sizes = np.zeros(n, dtype=np.int32)
    cdef i32[:] dist = np.full(n, -1, dtype=np.int32)
    cdef i32[:] queue = np.empty(n, dtype=np.int32)
    cdef int v, head, tail, a, b, e, top, i, count
    for v in range(n):
        top = pos[v]
        head = 0
        tail = 0
        count = 1
        dist[v] = 0
        queue[tail] = v
        tail += 1
        while head < tail:
            a = queue[head]
            head += 1
            if dist[a] >= r:
                continue
            if a != v and pos[a] < top:
                continue
            for e in range(indptr[a], indptr[a + 1]):
                b = indices[e]
                if dist[b] < 0:
                    dist[b] = dist[a] + 1
                    queue[tail] = b
                    tail += 1
                    if pos[b] < top:
                        count += 1
        sizes[v] = count
        for i in range(tail):
            dist[queue[i]] = -1
    return np.asarray(sizes).copy()


def all_pairs_distances(const i32[:] indptr, const i32[:] indices):
    cdef int n = indptr.shape[0] - 1
    out = np.full((n, n), -1, dtype=np.int32)
    cdef i32[:, :] d = out
    cdef i32[:] queue = np.empty(max(n, 1), dtype=np.int32)
    cdef int s, head, tail, a, b, e
    for s in range(n):
        head = 0
        tail = 0
        d[s, s] = 0
        queue[tail] = s
        tail += 1
        while head < tail:
            a = queue[head]
            head += 1
            for e in range(indptr[a], indptr[a + 1]):
                b = indices[e]
                if d[s, b] < 0:
                    d[s, b] = d[s, a] + 1
                    queue[tail] = b
                    tail += 1
    return out
