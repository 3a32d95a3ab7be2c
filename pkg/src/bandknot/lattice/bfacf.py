"""BFACF moves on lattice polygons, jitted for throughput.

State lives in flat arrays: a compact pool of vertex slots (0..n-1 always
occupied; deletion swaps the last slot in) doubly linked into the cyclic
vertex order, plus an open-addressing hash from packed coordinates to pool
slots for O(1) self-avoidance checks. Moves are the plaquette exchanges
with length change -2/0/+2; acceptance follows detailed balance for the
weight fugacity^length under this proposal scheme:

    accept(+2) = min(1, n z^2 / (n + 2))
    accept(-2) = min(1, n / ((n - 2) z^2))
    accept(0)  = 1

(+2 and -2 transitions are each proposed by exactly one (edge, direction)
pair and 0-moves by two on either side, so the proposal ratio contributes
n/(n+2) and the 0-move ratio cancels.)

Randomness is an explicit splitmix64 stream, so runs are reproducible
bit-for-bit from (polygon, fugacity, seed).
"""

from __future__ import annotations

import numpy as np
from numba import njit

from .polygon import LatticePolygon, validate_polygon

_OFF = 1 << 20          # coordinate offset for packing; |coord| < 2^20
_EMPTY = np.int64(-1)

# counter indices returned by the kernel
ACC_PLUS, ACC_ZERO, ACC_MINUS, CAP_HITS = 0, 1, 2, 3


@njit(cache=True, inline="always")
def _mix(z):
    z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    return z ^ (z >> np.uint64(31))


@njit(cache=True, inline="always")
def _next_u64(state):
    state[0] += np.uint64(0x9E3779B97F4A7C15)
    return _mix(state[0])


@njit(cache=True, inline="always")
def _rand_below(state, k):
    # multiply-shift; bias is O(k / 2^32), irrelevant here
    r = _next_u64(state) >> np.uint64(32)
    return np.int64((r * np.uint64(k)) >> np.uint64(32))


@njit(cache=True, inline="always")
def _pack(x, y, z):
    return (((x + _OFF) << np.int64(42))
            | ((y + _OFF) << np.int64(21))
            | (z + _OFF))


@njit(cache=True, inline="always")
def _hindex(key, mask):
    h = _mix(np.uint64(key))
    return np.int64(h & np.uint64(mask))


@njit(cache=True)
def _h_get(keys, vals, key, mask):
    i = _hindex(key, mask)
    while True:
        k = keys[i]
        if k == key:
            return vals[i]
        if k == _EMPTY:
            return np.int64(-1)
        i = (i + 1) & mask


@njit(cache=True)
def _h_put(keys, vals, key, val, mask):
    i = _hindex(key, mask)
    while True:
        k = keys[i]
        if k == _EMPTY or k == key:
            keys[i] = key
            vals[i] = val
            return
        i = (i + 1) & mask


@njit(cache=True)
def _h_del(keys, vals, key, mask):
    i = _hindex(key, mask)
    while keys[i] != key:
        i = (i + 1) & mask
    # backward-shift deletion keeps probe chains intact without tombstones
    j = i
    while True:
        keys[j] = _EMPTY
        k = j
        while True:
            k = (k + 1) & mask
            if keys[k] == _EMPTY:
                return
            h = _hindex(keys[k], mask)
            if ((k - h) & mask) >= ((k - j) & mask):
                break
        keys[j] = keys[k]
        vals[j] = vals[k]
        j = k


@njit(cache=True)
def bfacf_run(coords, nxt, prv, n, keys, vals, mask, z2, steps, state,
              max_len, counters):
    """Run `steps` attempted moves in place; returns the new length."""
    for _ in range(steps):
        i = _rand_below(state, n)          # pool slot = tail of a random edge
        j = nxt[i]
        x1 = coords[i, 0]
        y1 = coords[i, 1]
        z1 = coords[i, 2]
        x2 = coords[j, 0]
        y2 = coords[j, 1]
        z2c = coords[j, 2]
        dx = x2 - x1
        # perpendicular unit vector: 4 choices
        r = _rand_below(state, 4)
        ux = uy = uz = np.int64(0)
        if dx != 0:
            if r == 0:
                uy = 1
            elif r == 1:
                uy = -1
            elif r == 2:
                uz = 1
            else:
                uz = -1
        elif y2 - y1 != 0:
            if r == 0:
                ux = 1
            elif r == 1:
                ux = -1
            elif r == 2:
                uz = 1
            else:
                uz = -1
        else:
            if r == 0:
                ux = 1
            elif r == 1:
                ux = -1
            elif r == 2:
                uy = 1
            else:
                uy = -1
        ax = x1 + ux
        ay = y1 + uy
        az = z1 + uz
        bx = x2 + ux
        by = y2 + uy
        bz = z2c + uz
        ka = _pack(ax, ay, az)
        kb = _pack(bx, by, bz)
        sa = _h_get(keys, vals, ka, mask)
        sb = _h_get(keys, vals, kb, mask)
        p = prv[i]
        q = nxt[j]
        side_a = sa >= 0 and sa == p      # edge (a, v1) present
        side_b = sb >= 0 and sb == q      # edge (v2, b) present
        if sa < 0 and sb < 0:
            # +2 move: insert a, b between v1 and v2
            if n + 2 > max_len:
                counters[CAP_HITS] += 1
                continue
            acc = n * z2 / (n + 2)
            if acc < 1.0 and (_next_u64(state) >> np.uint64(11)) * 1.1102230246251565e-16 >= acc:
                continue
            s1 = n
            s2 = n + 1
            coords[s1, 0] = ax
            coords[s1, 1] = ay
            coords[s1, 2] = az
            coords[s2, 0] = bx
            coords[s2, 1] = by
            coords[s2, 2] = bz
            nxt[i] = s1
            prv[s1] = i
            nxt[s1] = s2
            prv[s2] = s1
            nxt[s2] = j
            prv[j] = s2
            _h_put(keys, vals, ka, s1, mask)
            _h_put(keys, vals, kb, s2, mask)
            n += 2
            counters[ACC_PLUS] += 1
        elif side_a and side_b:
            # -2 move: remove v1, v2; a and b become adjacent
            if n - 2 < 4 or n == 4:
                continue
            acc = n / ((n - 2) * z2)
            if acc < 1.0 and (_next_u64(state) >> np.uint64(11)) * 1.1102230246251565e-16 >= acc:
                continue
            _h_del(keys, vals, _pack(x1, y1, z1), mask)
            _h_del(keys, vals, _pack(x2, y2, z2c), mask)
            nxt[p] = q
            prv[q] = p
            # compact the pool: move the two highest slots into holes i, j
            for hole in (i if i > j else j, j if i > j else i):
                last = n - 1
                if hole != last:
                    coords[hole, 0] = coords[last, 0]
                    coords[hole, 1] = coords[last, 1]
                    coords[hole, 2] = coords[last, 2]
                    pl = prv[last]
                    nl = nxt[last]
                    nxt[pl] = hole
                    prv[nl] = hole
                    nxt[hole] = nl
                    prv[hole] = pl
                    _h_put(keys, vals,
                           _pack(coords[hole, 0], coords[hole, 1], coords[hole, 2]),
                           hole, mask)
                n -= 1
            counters[ACC_MINUS] += 1
        elif side_a and sb < 0:
            # flip v1 -> b
            _h_del(keys, vals, _pack(x1, y1, z1), mask)
            coords[i, 0] = bx
            coords[i, 1] = by
            coords[i, 2] = bz
            _h_put(keys, vals, kb, i, mask)
            counters[ACC_ZERO] += 1
        elif side_b and sa < 0:
            # flip v2 -> a
            _h_del(keys, vals, _pack(x2, y2, z2c), mask)
            coords[j, 0] = ax
            coords[j, 1] = ay
            coords[j, 2] = az
            _h_put(keys, vals, ka, j, mask)
            counters[ACC_ZERO] += 1
        # any other occupancy pattern: reject
    return n


class BfacfChain:
    """One BFACF chain at fixed fugacity; owns its arrays and RNG stream."""

    def __init__(self, poly: LatticePolygon, fugacity: float, seed: int,
                 max_length: int = 1000):
        if max_length < poly.length:
            raise ValueError("max_length below seed length")
        self.fugacity = float(fugacity)
        self.max_length = int(max_length)
        cap = self.max_length + 2
        self.coords = np.zeros((cap, 3), dtype=np.int64)
        self.nxt = np.zeros(cap, dtype=np.int64)
        self.prv = np.zeros(cap, dtype=np.int64)
        size = 1
        while size < 4 * cap:
            size <<= 1
        self.mask = size - 1
        self.keys = np.full(size, _EMPTY, dtype=np.int64)
        self.vals = np.zeros(size, dtype=np.int64)
        self.counters = np.zeros(4, dtype=np.int64)
        self.state = np.array([np.uint64(seed)], dtype=np.uint64)
        self.attempted = 0
        self._load(poly)

    def _load(self, poly: LatticePolygon) -> None:
        v = poly.v - poly.v.min(axis=0)  # stay near the origin
        n = v.shape[0]
        self.n = n
        self.keys[:] = _EMPTY
        self.coords[:n] = v
        for i in range(n):
            self.nxt[i] = (i + 1) % n
            self.prv[i] = (i - 1) % n
            key = _pack_key(int(v[i, 0]), int(v[i, 1]), int(v[i, 2]))
            _h_put(self.keys, self.vals, np.int64(key), np.int64(i), self.mask)

    def run(self, steps: int) -> None:
        self.n = int(bfacf_run(self.coords, self.nxt, self.prv, self.n,
                               self.keys, self.vals, self.mask,
                               self.fugacity ** 2, steps, self.state,
                               self.max_length, self.counters))
        self.attempted += steps
        if np.abs(self.coords[:self.n]).max() > (1 << 19):
            self._load(self.polygon())

    def polygon(self) -> LatticePolygon:
        out = np.empty((self.n, 3), dtype=np.int64)
        s = 0
        for k in range(self.n):
            out[k] = self.coords[s]
            s = int(self.nxt[s])
        return LatticePolygon(out)

    def swap_state_with(self, other: "BfacfChain") -> None:
        """Exchange polygon configurations (replica swap)."""
        for attr in ("coords", "nxt", "prv", "n", "keys", "vals", "mask"):
            a, b = getattr(self, attr), getattr(other, attr)
            setattr(self, attr, b)
            setattr(other, attr, a)


def _pack_key(x: int, y: int, z: int) -> int:
    return ((x + _OFF) << 42) | ((y + _OFF) << 21) | (z + _OFF)


def bfacf_step(poly: LatticePolygon, fugacity: float, seed: int = 0,
               steps: int = 1, max_length: int = 1000) -> LatticePolygon:
    """Attempt `steps` BFACF moves starting from `poly`; returns the result.

    Rejected proposals leave the polygon unchanged; the result is always a
    valid polygon of the same knot type.
    """
    chain = BfacfChain(poly, fugacity, seed, max_length=max_length)
    chain.run(steps)
    out = chain.polygon()
    return validate_polygon(out.v)


def shrink(poly: LatticePolygon, target_length: int, seed: int = 7,
           fugacity: float = 0.05, max_rounds: int = 400,
           patience: int = 30) -> LatticePolygon:
    """Reduce a polygon with low-fugacity BFACF, keeping the best seen.

    Returns a polygon no longer than max(target_length, shortest length
    reached during the run); the knot type is preserved.
    """
    chain = BfacfChain(poly, fugacity, seed, max_length=poly.length + 50)
    best = poly
    stale = 0
    batch = max(200, 4 * poly.length)
    for _ in range(max_rounds):
        if best.length <= target_length:
            break
        chain.run(batch)
        if chain.n < best.length:
            best = chain.polygon()
            stale = 0
        else:
            stale += 1
            if stale >= patience:
                break
    return best
