"""Planar diagrams as combinatorial maps.

A diagram is a 4-valent planar map: each crossing has four ports (slots)
numbered 0..3 counterclockwise, an `adj` table gluing ports in pairs
(edges), a flag saying which strand-line (0-2 or 1-3) passes over, and per
line a flow direction. Slots are pure rotation labels: switching a crossing
only toggles `over02`, it never relabels ports, which keeps skein
recursions and face bookkeeping simple.

Crossingless loop components (produced by smoothing and Reidemeister
reductions) are tracked by a counter rather than materialized.
"""

from __future__ import annotations

from typing import Iterable

Dart = tuple[int, int]  # (crossing id, slot)

# Compass vectors of slots 0..3 (CCW): used for sign computations.
_SLOT_VEC = {0: (0, -1), 1: (1, 0), 2: (0, 1), 3: (-1, 0)}


class DisconnectedDiagram(Exception):
    """Raised by operations requiring a connected diagram (e.g. Goeritz)."""


class Crossing:
    __slots__ = ("adj", "over02", "in02", "in13")

    def __init__(self, over02: bool, in02: int, in13: int):
        self.adj: list[Dart | None] = [None, None, None, None]
        self.over02 = over02  # True: line 0-2 is the over strand
        self.in02 = in02      # slot (0 or 2) where the 0-2 line enters
        self.in13 = in13      # slot (1 or 3) where the 1-3 line enters

    def copy(self) -> "Crossing":
        c = Crossing(self.over02, self.in02, self.in13)
        c.adj = list(self.adj)
        return c

    @property
    def sign(self) -> int:
        """+1 when over x under (as 2D vectors) points out of the page."""
        if self.over02:
            ov, un = self.in02, self.in13
        else:
            ov, un = self.in13, self.in02
        ox, oy = _SLOT_VEC[(ov + 2) % 4]  # direction of travel = toward exit
        ux, uy = _SLOT_VEC[(un + 2) % 4]
        return 1 if ox * uy - oy * ux > 0 else -1

    def is_in(self, slot: int) -> bool:
        return slot == (self.in02 if slot % 2 == 0 else self.in13)

    def line_is_over(self, slot: int) -> bool:
        return self.over02 if slot % 2 == 0 else not self.over02


class Diagram:
    """Oriented link diagram. All mutators operate in place; use copy()."""

    def __init__(self):
        self.x: dict[int, Crossing] = {}
        self.free_circles = 0
        self._next_id = 0

    # -- construction -------------------------------------------------------

    def new_crossing(self, over02: bool, in02: int, in13: int) -> int:
        cid = self._next_id
        self._next_id += 1
        self.x[cid] = Crossing(over02, in02, in13)
        return cid

    def connect(self, a: Dart, b: Dart) -> None:
        self.x[a[0]].adj[a[1]] = b
        self.x[b[0]].adj[b[1]] = a

    def copy(self) -> "Diagram":
        d = Diagram()
        d.x = {cid: c.copy() for cid, c in self.x.items()}
        d.free_circles = self.free_circles
        d._next_id = self._next_id
        return d

    # -- basic queries -------------------------------------------------------

    def n_crossings(self) -> int:
        return len(self.x)

    def check(self) -> None:
        """Structural invariants; raises AssertionError on corruption."""
        for cid, c in self.x.items():
            for s in range(4):
                d = c.adj[s]
                assert d is not None, f"dangling port {(cid, s)}"
                c2, s2 = d
                assert self.x[c2].adj[s2] == (cid, s), f"asymmetric edge at {(cid, s)}"
                # flow: out-ports must glue to in-ports
                if not c.is_in(s):
                    assert self.x[c2].is_in(s2), f"flow clash on edge {(cid, s)}-{d}"

    def _walk(self, start: Dart) -> list[Dart]:
        """Arrival darts along the strand from an in-dart, until closed."""
        seq = []
        d = start
        while True:
            seq.append(d)
            cid, s = d
            out = (s + 2) % 4
            d = self.x[cid].adj[out]
            if d == start:
                return seq

    def components(self) -> list[list[Dart]]:
        """Link components carrying crossings, as arrival-dart cycles."""
        seen: set[Dart] = set()
        out = []
        for cid in sorted(self.x):
            c = self.x[cid]
            for s in (c.in02, c.in13):
                if (cid, s) not in seen:
                    comp = self._walk((cid, s))
                    seen.update(comp)
                    out.append(comp)
        return out

    def n_components(self) -> int:
        return len(self.components()) + self.free_circles

    def writhe(self) -> int:
        return sum(c.sign for c in self.x.values())

    def linking_matrix(self) -> list[list[float]]:
        comps = self.components()
        which: dict[int, set[int]] = {}
        for i, comp in enumerate(comps):
            for cid, _s in comp:
                which.setdefault(cid, set()).add(i)
        n = len(comps)
        lk = [[0.0] * n for _ in range(n)]
        for cid, owners in which.items():
            if len(owners) == 2:
                i, j = sorted(owners)
                lk[i][j] += self.x[cid].sign / 2.0
                lk[j][i] = lk[i][j]
        return lk

    # -- switches, smoothings, excision --------------------------------------

    def switch(self, cid: int) -> None:
        self.x[cid].over02 = not self.x[cid].over02

    def mirror(self) -> "Diagram":
        d = self.copy()
        for c in d.x.values():
            c.over02 = not c.over02
        return d

    def reverse(self) -> "Diagram":
        """Reverse the orientation of every component."""
        d = self.copy()
        for c in d.x.values():
            c.in02 = (c.in02 + 2) % 4
            c.in13 = (c.in13 + 2) % 4
        return d

    def oriented_smoothing_pairs(self, cid: int) -> list[tuple[int, int]]:
        """Slot pairing of the flow-respecting (L0) smoothing.

        Each in-slot joins the other line's out-slot; the two pairs are
        rotationally adjacent, so the matching is automatically planar.
        """
        c = self.x[cid]
        i1, i2 = c.in02, c.in13
        return [(i1, (i2 + 2) % 4), (i2, (i1 + 2) % 4)]

    def disoriented_smoothing_pairs(self, cid: int) -> list[tuple[int, int]]:
        """The other planar smoothing (joins in with in); flows need repair."""
        c = self.x[cid]
        i1, i2 = c.in02, c.in13
        return [(i1, i2), ((i1 + 2) % 4, (i2 + 2) % 4)]

    def smooth_oriented(self, cid: int) -> None:
        self.excise({cid: self.oriented_smoothing_pairs(cid)})

    def smooth_disoriented(self, cid: int) -> None:
        """Orientation-discarding smoothing; repairs flows afterwards.

        Only meaningful for unoriented invariants (the Q polynomial):
        crossing signs along the re-oriented strands change.
        """
        self.excise({cid: self.disoriented_smoothing_pairs(cid)})
        self.repair_flows()

    def repair_flows(self) -> None:
        """Re-orient every component coherently along a traversal."""
        visited: set[Dart] = set()
        for cid0 in sorted(self.x):
            for s0 in range(4):
                if (cid0, s0) in visited:
                    continue
                d = (cid0, s0)
                while d not in visited:
                    visited.add(d)
                    cid, s = d
                    c = self.x[cid]
                    if not c.is_in(s):
                        if s % 2 == 0:
                            c.in02 = s
                        else:
                            c.in13 = s
                    d = c.adj[(s + 2) % 4]

    def excise(self, pairings: dict[int, list[tuple[int, int]]]) -> None:
        """Remove crossings, gluing their ports per the given slot pairings.

        Handles all degeneracies (edges between removed crossings, self
        edges); complete internal cycles become free circles.
        """
        link: dict[Dart, Dart] = {}
        for cid, pairs in pairings.items():
            for a, b in pairs:
                link[(cid, a)] = (cid, b)
                link[(cid, b)] = (cid, a)

        removed = set(pairings)

        def external(d: Dart) -> bool:
            return d[0] not in removed

        consumed: set[Dart] = set()
        for cid in pairings:
            for s in range(4):
                start = (cid, s)
                if start in consumed or start not in link:
                    continue
                partner = self.x[cid].adj[s]
                if not external(partner):
                    continue
                # chase through the removed region to the far external port
                cur = start
                chain = []
                while True:
                    chain.append(cur)
                    nxt = link[cur]
                    chain.append(nxt)
                    out = self.x[nxt[0]].adj[nxt[1]]
                    if external(out):
                        consumed.update(chain)
                        self.connect(partner, out)
                        break
                    cur = out
        # untouched pairing cycles are closed loops inside the removed region
        for cid in pairings:
            for s in range(4):
                d = (cid, s)
                if d in consumed or d not in link:
                    continue
                cur = d
                loop = []
                while cur not in loop:
                    loop.append(cur)
                    nxt = link[cur]
                    loop.append(nxt)
                    cur = self.x[nxt[0]].adj[nxt[1]]
                consumed.update(loop)
                self.free_circles += 1
        for cid in pairings:
            del self.x[cid]

    # -- faces ----------------------------------------------------------------

    def faces(self) -> list[list[Dart]]:
        """Faces of the map as dart orbits (next = CCW-next slot of adj)."""
        visited: set[Dart] = set()
        out = []
        for cid in sorted(self.x):
            for s in range(4):
                d = (cid, s)
                if d in visited:
                    continue
                face = []
                while d not in visited:
                    visited.add(d)
                    face.append(d)
                    c2, s2 = self.x[d[0]].adj[d[1]]
                    d = (c2, (s2 + 1) % 4)
                out.append(face)
        return out

    def is_connected_shadow(self) -> bool:
        if not self.x:
            return self.free_circles <= 1
        if self.free_circles:
            return False
        seen = set()
        stack = [next(iter(self.x))]
        while stack:
            cid = stack.pop()
            if cid in seen:
                continue
            seen.add(cid)
            for s in range(4):
                stack.append(self.x[cid].adj[s][0])
        return len(seen) == len(self.x)

    # -- canonical encoding ----------------------------------------------------

    def canonical_key(self) -> tuple:
        """Injective diagram key, invariant under crossing relabeling.

        Minimizes a traversal encoding over all start darts; shadow data is
        encoded relative to per-crossing arrival slots so the key is stable
        across port rotations, with over/flow data appended.
        """
        if not self.x:
            return ("O", self.free_circles)
        best = None
        for cid0 in sorted(self.x):
            enc = self._encode_from((cid0, self.x[cid0].in02))
            if best is None or enc < best:
                best = enc
        return ("O", self.free_circles) + best

    def _encode_from(self, start: Dart) -> tuple:
        index: dict[int, int] = {}
        arrival: dict[int, int] = {}
        order: list[int] = []
        pending = [start]
        seen_darts: set[Dart] = set()
        while pending:
            d0 = pending.pop(0)
            if d0 in seen_darts:
                continue
            for d in self._walk(d0):
                if d in seen_darts:
                    continue
                seen_darts.add(d)
                cid, s = d
                if cid not in index:
                    index[cid] = len(order)
                    arrival[cid] = s
                    order.append(cid)
                # queue the other line of this crossing (handles multi-
                # component shadows connected through shared crossings)
                other_in = self.x[cid].in13 if s % 2 == 0 else self.x[cid].in02
                if (cid, other_in) not in seen_darts:
                    pending.append((cid, other_in))
            # disjoint shadow pieces: start the next piece deterministically
            if len(index) < len(self.x) and not pending:
                rest = [c for c in sorted(self.x) if c not in index]
                cbest = rest[0]
                pending.append((cbest, self.x[cbest].in02))
        shadow = []
        flavor = []
        for cid in order:
            c = self.x[cid]
            a = arrival[cid]
            row = []
            for k in range(4):
                c2, s2 = c.adj[(a + k) % 4]
                row.append((index[c2], (s2 - arrival[c2]) % 4))
            shadow.append(tuple(row))
            over_on_arrival = c.line_is_over(a)
            enters_at_arrival = c.is_in(a)
            flavor.append((over_on_arrival, enters_at_arrival, c.sign))
        return (tuple(shadow), tuple(flavor))

    # -- conventional PD text --------------------------------------------------

    def pd_tuples(self) -> list[tuple[int, int, int, int]]:
        """Conventional X[a,b,c,d] tuples (a = under-in, CCW)."""
        comps = self.components()
        label: dict[Dart, int] = {}
        n = 1
        for comp in comps:
            for d in comp:
                # the arc ENTERING at dart d gets label n; label both ends
                cid, s = d
                label[(cid, s)] = n
                prev = None
                # find the out-dart this arc leaves from
                pc, ps = self.x[cid].adj[s]
                label[(pc, ps)] = n
                n += 1
        out = []
        for cid in sorted(self.x):
            c = self.x[cid]
            under_in = c.in13 if c.over02 else c.in02
            out.append(tuple(label[(cid, (under_in + k) % 4)] for k in range(4)))
        return out

    def pd_text(self) -> str:
        return " ".join("X[%d,%d,%d,%d]" % t for t in self.pd_tuples())


def parse_pd_tuples(tuples: Iterable[tuple[int, int, int, int]]) -> Diagram:
    """Build a Diagram from conventional oriented PD tuples of a knot.

    Arc labels must be 1..2n consecutive along the orientation (the usual
    table convention). Over-strand direction is inferred from label
    succession mod 2n.
    """
    tuples = [tuple(t) for t in tuples]
    n2 = 2 * len(tuples)

    def follows(x: int, y: int) -> bool:
        return x == y % n2 + 1

    d = Diagram()
    cids = []
    for (a, b, c, e) in tuples:
        # under enters at slot 0 (label a); over line on slots 1,3 (labels b, e)
        if follows(e, b):      # over runs b -> e, i.e. enters at slot 1
            in13 = 1
        elif follows(b, e):    # over runs e -> b, enters at slot 3
            in13 = 3
        else:
            raise ValueError(f"cannot orient over strand of X{(a, b, c, e)}")
        cids.append(d.new_crossing(over02=False, in02=0, in13=in13))
    # glue equal labels: each label appears once as in, once as out
    ins: dict[int, Dart] = {}
    outs: dict[int, Dart] = {}
    for k, (a, b, c, e) in enumerate(tuples):
        labels = {0: a, 1: b, 2: c, 3: e}
        for s, lab in labels.items():
            if d.x[cids[k]].is_in(s):
                ins[lab] = (cids[k], s)
            else:
                outs[lab] = (cids[k], s)
    if set(ins) != set(outs):
        raise ValueError("unbalanced arc labels in PD code")
    for lab, dart_in in ins.items():
        d.connect(outs[lab], dart_in)
    d.check()
    return d


def connected_sum(d1: Diagram, d2: Diagram) -> Diagram:
    """Connected sum of two knot diagrams (splice at one edge of each)."""
    out = d1.copy()
    shift = {}
    for cid, c in d2.x.items():
        nid = out.new_crossing(c.over02, c.in02, c.in13)
        shift[cid] = nid
    for cid, c in d2.x.items():
        for s in range(4):
            c2, s2 = c.adj[s]
            out.x[shift[cid]].adj[s] = (shift[c2], s2)
    out.free_circles += d2.free_circles
    if not d1.x or not d2.x:
        raise ValueError("connected_sum needs crossings on both sides")
    # cut edge A (in d1 part): out-dart a_out -> in-dart a_in
    a_c = min(c for c in d1.x)
    a_in = (a_c, out.x[a_c].in02)
    a_out = out.x[a_c].adj[a_in[1]]
    b_c = shift[min(c for c in d2.x)]
    b_in = (b_c, out.x[b_c].in02)
    b_out = out.x[b_c].adj[b_in[1]]
    out.connect(a_out, b_in)
    out.connect(b_out, a_in)
    out.check()
    return out
