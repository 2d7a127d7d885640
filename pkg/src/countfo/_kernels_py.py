"""Pure-Python versions of the BFS kernels, used when the extension is absent."""
from collections import deque

import numpy as np


def ball(indptr, indices, allowed, src, r):
    dist = {src: 0}
    order = [src]
    queue = deque([src])
    while queue:
        a = queue.popleft()
        if dist[a] >= r:
            continue
        for e in range(indptr[a], indptr[a + 1]):
            b = int(indices[e])
            if allowed[b] and b not in dist:
                dist[b] = dist[a] + 1
                order.append(b)
                queue.append(b)
    return np.asarray(order, dtype=np.int32)


def cluster(indptr, indices, pos, allowed, root, r):
    floor = pos[root]
    dist = {root: 0}
    order = [root]
    queue = deque([root])
    while queue:
        a = queue.popleft()
        if dist[a] >= r:
            continue
        for e in range(indptr[a], indptr[a + 1]):
            b = int(indices[e])
            if allowed[b] and b not in dist and pos[b] >= floor:
                dist[b] = dist[a] + 1
                order.append(b)
                queue.append(b)
    return np.asarray(order, dtype=np.int32)


def wreach_sizes(indptr, indices, pos, r):
    n = len(indptr) - 1
    sizes = np.zeros(n, dtype=np.int32)
    allowed = np.ones(n, dtype=np.uint8)
    for root in range(n):
        for u in cluster(indptr, indices, pos, allowed, root, r):
            sizes[u] += 1
    return sizes


def sreach_sizes(indptr, indices, pos, r):
    n = len(indptr) - 1
    sizes = np.zeros(n, dtype=np.int32)
    for v in range(n):
        top = pos[v]
        dist = {v: 0}
        queue = deque([v])
        count = 1
        while queue:
            a = queue.popleft()
            if dist[a] >= r or (a != v and pos[a] < top):
                continue
            for e in range(indptr[a], indptr[a + 1]):
                b = int(indices[e])
                if b not in dist:
                    dist[b] = dist[a] + 1
                    queue.append(b)
                    if pos[b] < top:
                        count += 1
        sizes[v] = count
    return sizes


def all_pairs_distances(indptr, indices):
    n = len(indptr) - 1
    out = np.full((n, n), -1, dtype=np.int32)
    for s in range(n):
        out[s, s] = 0
        queue = deque([s])
        while queue:
            a = queue.popleft()
            for e in range(indptr[a], indptr[a + 1]):
                b = indices[e]
                if out[s, b] < 0:
                    out[s, b] = out[s, a] + 1
                    queue.append(b)
    return out
