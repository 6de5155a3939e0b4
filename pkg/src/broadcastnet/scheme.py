"""Schedule generation: hypercube phase (rounds 1..k), tree phase (k+1..t+1).

Every originator class follows the same shape: get the message onto the
cube in round 1, finish the cube by round k, then let every root broadcast
its own (possibly pruned) tree in the remaining t+1-k rounds.  The deepest
leaf w of the first tree is the one vertex that may wait until the final
round: when the cube phase does not reach it, its tree parent calls it at
round t+1 exactly.

For shrunk graphs the low half of the cube is a hypercube with its low
blocks removed.  That region is covered inside the budget by a recursive
split: the entry vertex crosses into the region's top block, sweeps it,
and the block then pulls the rest down its matching in the final round
(or recurses one level lower when the entry sits below the top block).
"""

from __future__ import annotations

from dataclasses import dataclass

from .construct import CaseOneLayout
from .errors import SchemePhaseOverrun, UnknownVertex
from .graph import Graph
from .hypercube import sweep_rounds
from .labels import VertexLabel
from .params import ConstructionParams
from .schedule import Call, Schedule

CoordCall = tuple[int, int]


@dataclass(frozen=True)
class SchemeCase:
    """Originator classification: which case rule drives phase 1."""

    tag: str  # C11, C12, C13, C21, C22, C23
    tree: int | None = None
    subcube: int | None = None  # block index of the tree's root, low half only

    @property
    def on_cube(self) -> bool:
        return self.tag in ("C11", "C21")


def classify(g: Graph, layout: CaseOneLayout, u: VertexLabel) -> SchemeCase:
    if u not in g:
        raise UnknownVertex(f"{u} not in graph")
    shrunk = layout.params.n < layout.params.N
    key = layout.key_of_label(u)
    if key[1] == 0 or key == layout.w_key:
        return SchemeCase(tag="C21" if shrunk else "C11")
    c = layout.coord_of_tree[key[0]]
    if c >= layout.half:
        return SchemeCase(tag="C22" if shrunk else "C12", tree=key[0])
    return SchemeCase(tag="C23" if shrunk else "C13", tree=key[0],
                      subcube=layout.subcube_of_coord(c))


# ---------------------------------------------------------------------------
# phase 1 pieces (coordinate space)


def _region_rounds(entry: int, lo: int, m: int) -> list[list[CoordCall]]:
    """Broadcast coords [lo, 2^(m+1)) from entry within m+1 rounds (lo <= 2^m)."""
    top = 1 << m
    block = set(range(top, 2 * top))
    if lo == top:
        return sweep_rounds(entry, list(range(m)), block)
    if entry >= top:
        rounds = sweep_rounds(entry, list(range(m)), block)
        rounds.append([(c + top, c) for c in range(lo, top)])
        return rounds
    low = _region_rounds(entry, lo, m - 1)
    high = sweep_rounds(entry + top, list(range(m)), block)
    merged: list[list[CoordCall]] = [[(entry, entry + top)]]
    for i in range(max(len(low), len(high))):
        cur: list[CoordCall] = []
        if i < len(low):
            cur.extend(low[i])
        if i < len(high):
            cur.extend(high[i])
        merged.append(cur)
    return merged


def _half_sweep(layout: CaseOneLayout, seed: int, first: bool) -> list[list[CoordCall]]:
    k = layout.k
    lo, hi = (layout.half, 1 << k) if first else (0, layout.half)
    return sweep_rounds(seed, list(range(k - 1)), set(range(lo, hi)))


def _low_region(layout: CaseOneLayout, entry: int) -> list[list[CoordCall]]:
    """Cover the surviving low half from entry within k-1 rounds."""
    if layout.params.x == 0:
        return _half_sweep(layout, entry, first=False)
    return _region_rounds(entry, 1 << layout.params.p, layout.k - 2)


def _block_sweep(layout: CaseOneLayout, j: int) -> list[list[CoordCall]]:
    """Sweep of block Q^j from its designated corner 2^j."""
    return sweep_rounds(1 << j, list(range(j)), set(range(1 << j, 1 << (j + 1))))


def _exact_phase1(layout: CaseOneLayout, seeds: set[int], budget: int) -> list[list[CoordCall]]:
    """Optimal search fallback over the live cube subgraph (tiny instances only)."""
    live = sorted(layout.live_coords)
    if len(live) > 16:
        raise SchemePhaseOverrun(f"cube phase incomplete and {len(live)} cube vertices "
                                 "exceed the exact-search cap")
    idx = {c: i for i, c in enumerate(live)}
    nbr = {c: [] for c in live}
    repl = {tuple(sorted(e)) for e in layout.replacement_coords}
    for c in live:
        for b in range(layout.k):
            c2 = c ^ (1 << b)
            if c2 in idx:
                nbr[c].append(c2)
        for a, bq in layout.replacement_coords:
            if a == c:
                nbr[c].append(bq)
            elif bq == c:
                nbr[c].append(a)
    full = (1 << len(live)) - 1
    start = 0
    for s in seeds:
        start |= 1 << idx[s]

    def matchings(state: int) -> set[int]:
        outs: set[int] = set()

        def rec(vs: list[int], used: int, newly: int):
            if not vs:
                outs.add(newly)
                return
            v, rest = vs[0], vs[1:]
            any_free = False
            for w in nbr[v]:
                bit = 1 << idx[w]
                if not state & bit and not used & bit and not newly & bit:
                    any_free = True
                    rec(rest, used, newly | bit)
            if not any_free:
                rec(rest, used, newly)

        rec([v for v in live if state & (1 << idx[v])], 0, 0)
        return outs

    # breadth-first over informed-set states
    frontier = {start: []}
    for r in range(budget):
        if full in frontier:
            break
        nxt: dict[int, list] = {}
        for state, hist in frontier.items():
            for newly in matchings(state):
                s2 = state | newly
                if s2 not in nxt:
                    calls = []  # reconstruct deterministically later; store newly sets
                    nxt[s2] = hist + [(state, newly)]
        frontier = nxt
    if full not in frontier:
        raise SchemePhaseOverrun("no cube schedule within budget")
    rounds: list[list[CoordCall]] = []
    for state, newly in frontier[full]:
        calls = []
        used = 0
        todo = newly
        for v in live:
            if not state & (1 << idx[v]):
                continue
            for w in nbr[v]:
                bit = 1 << idx[w]
                if todo & bit and not used & (1 << idx[v]):
                    calls.append((v, w))
                    used |= 1 << idx[v]
                    todo &= ~bit
                    break
        rounds.append(calls)
    return rounds


# ---------------------------------------------------------------------------
# schedule assembly


def make_schedule(g: Graph, layout: CaseOneLayout, params: ConstructionParams,
                  u: VertexLabel) -> Schedule:
    """Legal schedule from originator u completing by round t+1."""
    case = classify(g, layout, u)
    k, p = params.k, params.p
    total_rounds = params.t + 1
    rounds: list[list[Call]] = [[] for _ in range(total_rounds)]

    def coord_label(c: int) -> VertexLabel:
        return layout.label_of_key(layout.key_of_coord(c))

    def place(start: int, coord_rounds: list[list[CoordCall]]):
        for off, calls in enumerate(coord_rounds):
            for a, b in calls:
                rounds[start - 1 + off].append((coord_label(a), coord_label(b)))

    ukey = layout.key_of_label(u)
    strategy = "paper"

    if case.on_cube:
        uc = layout.coord_of_tree[ukey[0]] if ukey[1] == 0 else 0
        if params.n == params.N:
            place(1, sweep_rounds(uc, list(range(k))))
        else:
            dead = (1 << p) if params.x > 0 else 0
            if uc >= layout.half:
                partner = uc ^ layout.half
                if partner < dead:
                    partner = dict(layout.replacement_coords)[uc]
                q1_seed, q2_entry = uc, partner
            else:
                partner = uc | layout.half
                q1_seed, q2_entry = partner, uc
            rounds[0].append((coord_label(uc), coord_label(partner)))
            place(2, _half_sweep(layout, q1_seed, first=True))
            place(2, _low_region(layout, q2_entry))
    else:
        rc = layout.coord_of_tree[ukey[0]]
        root_label = coord_label(rc)
        if case.tag in ("C12", "C22"):
            rounds[0].append((u, root_label))
            place(2, _half_sweep(layout, rc, first=True))
            swap_round = None
        else:
            rounds[0].append((u, coord_label(layout.half)))
            place(2, _half_sweep(layout, layout.half, first=True))
            swap_round = k - case.subcube
        for i in range(2, k - p + 1):
            j = k - i + 1
            if swap_round == i:
                rounds[i - 1].append((u, root_label))
                place(i + 1, sweep_rounds(rc, list(range(case.subcube)),
                                          set(layout.cube().subcube(case.subcube))))
            else:
                rounds[i - 1].append((u, coord_label(1 << (j - 1))))
                place(i + 1, _block_sweep(layout, j - 1))

    # verify the cube phase made it; fall back to exact search if not
    cube_informed = _replay_coords(layout, rounds[:k], ukey)
    want = set(layout.live_coords)
    if case.on_cube or params.x > 0 or ukey == layout.w_key:
        missing = want - cube_informed
    else:
        missing = want - cube_informed - {0}  # w is reached through its tree
    if missing:
        seeds = {layout.coord_of_tree[ukey[0]]} if ukey[1] == 0 else set()
        if ukey == layout.w_key:
            seeds = {0}
        if not seeds:
            raise SchemePhaseOverrun(f"cube vertices missed by round {k}: {sorted(missing)}")
        for r in range(k):
            rounds[r] = []
        place(1, _exact_phase1(layout, seeds, k))
        strategy = "exact"
        cube_informed = _replay_coords(layout, rounds[:k], ukey)
        if want - cube_informed - (set() if case.on_cube else {0}):
            raise SchemePhaseOverrun("exact cube search failed")

    # tree phase
    w_informed = 0 in cube_informed and layout.w_alive
    for tree in range(1, params.num_trees + 1):
        if tree in layout.deleted_trees:
            continue
        pre: set[int] = set()
        if ukey[0] == tree and ukey[1] != 0:
            pre.add(ukey[1])
        if tree == 1 and w_informed:
            pre.add(layout.w_key[1])
        frag = layout.tree_rounds(tree, pre or None)
        assert len(frag) <= params.tree_order
        for off, calls in enumerate(frag):
            rounds[k + off].extend(calls)

    return Schedule(originator=u, rounds=rounds, phase1_strategy=strategy)


def _replay_coords(layout: CaseOneLayout, coord_phase: list[list[Call]],
                   ukey) -> set[int]:
    """Coordinates informed after the cube phase (label-level replay)."""
    informed: set[int] = set()
    if ukey[1] == 0:
        informed.add(layout.coord_of_tree[ukey[0]])
    elif ukey == layout.w_key:
        informed.add(0)
    coord_of_label = {}
    for c in layout.live_coords:
        coord_of_label[layout.label_of_key(layout.key_of_coord(c))] = c
    for calls in coord_phase:
        newly = []
        for a, b in calls:
            if b in coord_of_label:
                newly.append(coord_of_label[b])
        informed.update(newly)
    return informed
