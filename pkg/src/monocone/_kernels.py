"""Compiled adjacency scan for the double description step.

Zero sets are packed into ``uint64`` words; only bit patterns cross into
compiled code, ray coordinates stay exact Python integers.
"""

import numpy as np

try:
    from numba import njit
except ImportError:  # pragma: no cover - exercised only without numba
    njit = None

WORD = 64


def pack(zeros, nwords: int) -> np.ndarray:
    out = np.zeros((len(zeros), nwords), dtype=np.uint64)
    mask = (1 << WORD) - 1
    for r, z in enumerate(zeros):
        w = 0
        while z:
            out[r, w] = z & mask
            z >>= WORD
            w += 1
    return out


if njit is not None:

    @njit(cache=True)
    def _popcount64(x):
        x = x - ((x >> np.uint64(1)) & np.uint64(0x5555555555555555))
        x = (x & np.uint64(0x3333333333333333)) + ((x >> np.uint64(2)) & np.uint64(0x3333333333333333))
        x = (x + (x >> np.uint64(4))) & np.uint64(0x0F0F0F0F0F0F0F0F)
        return int((x * np.uint64(0x0101010101010101)) >> np.uint64(56))

    @njit(cache=True)
    def _scan(Z, pos, neg, need):
        R, W = Z.shape
        cap = 1024
        out = np.empty((cap, 2), dtype=np.int64)
        cnt = 0
        common = np.empty(W, dtype=np.uint64)
        for a in range(pos.shape[0]):
            p = pos[a]
            for b in range(neg.shape[0]):
                q = neg[b]
                bits = 0
                for w in range(W):
                    c = Z[p, w] & Z[q, w]
                    common[w] = c
                    bits += _popcount64(c)
                if bits < need:
                    continue
                adjacent = True
                for t in range(R):
                    if t == p or t == q:
                        continue
                    sup = True
                    for w in range(W):
                        if Z[t, w] & common[w] != common[w]:
                            sup = False
                            break
                    if sup:
                        adjacent = False
                        break
                if adjacent:
                    if cnt == cap:
                        bigger = np.empty((cap * 2, 2), dtype=np.int64)
                        bigger[:cap] = out
                        out = bigger
                        cap *= 2
                    out[cnt, 0] = p
                    out[cnt, 1] = q
                    cnt += 1
        return out[:cnt]

    def adjacent_pairs(zeros, pos, neg, need, nbits):
        """Combinatorial adjacency over all ``pos x neg`` pairs, in
        ``(pos, neg)`` lexicographic order."""
        nwords = max(1, -(-nbits // WORD))
        Z = pack(zeros, nwords)
        res = _scan(Z, np.asarray(pos, dtype=np.int64), np.asarray(neg, dtype=np.int64), need)
        return [(int(p), int(q)) for p, q in res]

else:  # pragma: no cover
    adjacent_pairs = None
