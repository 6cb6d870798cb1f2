"""Explicit oriented pretzel diagrams and the Seifert-matrix Conway oracle.

A diagram is built directly from the cyclic sequence: u twist regions with
|k_i| crossings each (right-handed for k_i > 0), joined cyclically by top and
bottom bridges.  Orientations are propagated from a positive first top
bridge.  The oracle computes a Seifert matrix for the surface obtained by
orientation-respecting smoothing and evaluates det(x*V - x^-1*V^T) exactly,
rewritten in z = x - x^-1.

Crossing-sign and pushoff conventions are frozen by calibration fixtures
(P(1s,1s) -> -z, P(1r,1r) -> z, anti-parallel torus twists -> -p*z); the test
suite re-checks them.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import (
    InternalConsistencyError,
    InvalidSequenceError,
    SplitDiagramError,
    UnrealizableOrientationError,
)
from .sequences import INF, EnhancedSequence, Entry, R, S
from .zpoly import LaurentZ, ZPoly, exact_div

_CORNERS = ("NW", "NE", "SW", "SE")


# ---------------------------------------------------------------------------
# orientation propagation


def orientation_data(seq: EnhancedSequence) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Orientations (+1 forward / -1 backward) of top and bottom bridges.

    Bridge i joins region i to region i+1 (indices mod u); the first top
    bridge is pinned positive.  Raises UnrealizableOrientationError when the
    tags admit no consistent assignment.
    """
    u = len(seq)
    top = [0] * u
    top[0] = 1
    for i in range(1, u):
        top[i] = _top_transfer(seq[i], top[i - 1])
    if _top_transfer(seq[0], top[u - 1]) != top[0]:
        raise UnrealizableOrientationError(
            f"top-bridge orientations are inconsistent for {seq}")
    bot = [0] * u
    for i in range(u):
        left, right = (i - 1) % u, i
        for bridge, value in _bot_rules(seq[i], left, right, top):
            if bot[bridge] == 0:
                bot[bridge] = value
            elif bot[bridge] != value:
                raise UnrealizableOrientationError(
                    f"bottom-bridge orientations are inconsistent for {seq}")
    return tuple(top), tuple(bot)


def _top_transfer(entry: Entry, left_value: int) -> int:
    if entry.is_inf:
        return left_value
    return left_value if entry.eps is S else -left_value


def _bot_rules(entry: Entry, left: int, right: int, top):
    if entry.is_inf:
        s = 1 if entry.eps is R else -1
        return ((left, s * top[left]), (right, s * top[right]))
    if entry.k % 2 == 0:
        return ((left, -top[left]), (right, -top[right]))
    return ((left, top[right]), (right, top[left]))


# ---------------------------------------------------------------------------
# diagram construction


@dataclass(frozen=True)
class Crossing:
    """One crossing: PD-ordered arc ids, sign, and its place in the pretzel."""

    region: int
    slot: int
    arcs: tuple[int, int, int, int]  # ccw from the incoming under-strand
    sign: int


@dataclass(frozen=True)
class RegionInfo:
    entry: Entry
    crossings: int
    sign: Optional[int]          # common crossing sign, None when crossingless
    comp_left: int               # component of the strand entering at top-left
    comp_right: int


@dataclass(frozen=True)
class Diagram:
    """Oriented pretzel diagram with component labels and crossing data."""

    seq: EnhancedSequence
    or_top: tuple[int, ...]
    or_bot: tuple[int, ...]
    regions: tuple[RegionInfo, ...]
    crossings: tuple[Crossing, ...]
    arc_components: tuple[int, ...]
    ncomponents: int
    is_split: bool
    seifert_circles: int
    free_loops: int

    def __len__(self) -> int:
        return len(self.regions)


class _UnionFind:
    def __init__(self):
        self.parent = {}

    def find(self, x):
        p = self.parent
        if x not in p:
            p[x] = x
            return x
        root = x
        while p[root] != root:
            root = p[root]
        while p[x] != root:
            p[x], x = root, p[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb


def _strand_layout(entry: Entry, j: int, a_down: bool, b_down: bool):
    """Diagonals and direction vectors of the two strands at crossing j.

    Strand A enters the region at top-left, B at top-right; they alternate
    diagonals down the stack.  Returns (diag_a, vec_a, vec_b) where diag_a is
    True when A occupies the NW-SE diagonal.
    """
    a_on_nwse = (j % 2 == 0)
    if a_on_nwse:
        vec_a = (1, -1) if a_down else (-1, 1)
        vec_b = (-1, -1) if b_down else (1, 1)
    else:
        vec_a = (-1, -1) if a_down else (1, 1)
        vec_b = (1, -1) if b_down else (-1, 1)
    return a_on_nwse, vec_a, vec_b


def _cross2(a, b) -> int:
    return a[0] * b[1] - a[1] * b[0]


def build_diagram(seq: EnhancedSequence) -> Diagram:
    """Realize the sequence as an explicit oriented crossing-level diagram."""
    or_top, or_bot = orientation_data(seq)
    u = len(seq)

    wires = []
    crossing_ids = []
    for i, e in enumerate(seq):
        if e.is_inf:
            wires.append((("T", i, "L"), ("T", i, "R")))
            wires.append((("B", i, "L"), ("B", i, "R")))
            continue
        n = abs(e.k)
        if n == 0:
            wires.append((("T", i, "L"), ("B", i, "L")))
            wires.append((("T", i, "R"), ("B", i, "R")))
            continue
        wires.append((("T", i, "L"), ("C", i, 0, "NW")))
        wires.append((("T", i, "R"), ("C", i, 0, "NE")))
        for j in range(n - 1):
            wires.append((("C", i, j, "SW"), ("C", i, j + 1, "NW")))
            wires.append((("C", i, j, "SE"), ("C", i, j + 1, "NE")))
        wires.append((("C", i, n - 1, "SW"), ("B", i, "L")))
        wires.append((("C", i, n - 1, "SE"), ("B", i, "R")))
        crossing_ids.extend(("C", i, j) for j in range(n))
    for i in range(u):
        wires.append((("T", i, "R"), ("T", (i + 1) % u, "L")))
        wires.append((("B", i, "R"), ("B", (i + 1) % u, "L")))

    nodes = []
    for a, b in wires:
        nodes.append(a)
        nodes.append(b)
    nodes = list(dict.fromkeys(nodes))

    # Link components: wires plus the strand passing through each crossing.
    comp_uf = _UnionFind()
    for a, b in wires:
        comp_uf.union(a, b)
    for cid in crossing_ids:
        comp_uf.union(cid + ("NW",), cid + ("SE",))
        comp_uf.union(cid + ("NE",), cid + ("SW",))

    comp_index: dict = {}
    for node in nodes:
        root = comp_uf.find(node)
        if root not in comp_index:
            comp_index[root] = len(comp_index)
    ncomponents = len(comp_index)

    def comp_of(node) -> int:
        return comp_index[comp_uf.find(node)]

    # Split detection: connectivity of the underlying 4-valent graph.
    graph_uf = _UnionFind()
    for a, b in wires:
        graph_uf.union(a, b)
    for cid in crossing_ids:
        graph_uf.union(cid + ("NW",), cid + ("NE",))
        graph_uf.union(cid + ("NW",), cid + ("SW",))
        graph_uf.union(cid + ("NW",), cid + ("SE",))
    graph_roots = {graph_uf.find(n) for n in nodes}
    is_split = len(graph_roots) > 1

    # Seifert circles: orientation-respecting smoothing of every crossing.
    seifert_uf = _UnionFind()
    for a, b in wires:
        seifert_uf.union(a, b)

    # Arcs: maximal crossingless strands (wire classes).
    arc_uf = _UnionFind()
    for a, b in wires:
        arc_uf.union(a, b)

    regions = []
    crossings = []
    arc_index: dict = {}

    def arc_of(node) -> int:
        root = arc_uf.find(node)
        if root not in arc_index:
            arc_index[root] = len(arc_index)
        return arc_index[root]

    for i, e in enumerate(seq):
        c_left = comp_of(("T", i, "L"))
        c_right = comp_of(("T", i, "R"))
        if e.is_inf or e.k == 0:
            regions.append(RegionInfo(e, 0, None, c_left, c_right))
            continue
        n = abs(e.k)
        a_down = or_top[(i - 1) % u] == 1
        b_down = or_top[i] == -1
        sign = None
        for j in range(n):
            a_on_nwse, vec_a, vec_b = _strand_layout(e, j, a_down, b_down)
            over_on_nwse = e.k > 0
            over_vec, under_vec = ((vec_a, vec_b) if a_on_nwse == over_on_nwse
                                   else (vec_b, vec_a))
            s = exact_div(_cross2(under_vec, over_vec), 2)
            if sign is None:
                sign = s
            elif sign != s:
                raise InternalConsistencyError("mixed signs inside a twist region")

            parallel = (a_down == b_down)
            cid = ("C", i, j)
            if parallel:
                seifert_uf.union(cid + ("NW",), cid + ("SW",))
                seifert_uf.union(cid + ("NE",), cid + ("SE",))
            else:
                seifert_uf.union(cid + ("NW",), cid + ("NE",))
                seifert_uf.union(cid + ("SW",), cid + ("SE",))

            under_on_nwse = not over_on_nwse
            under_vec_strand = vec_a if a_on_nwse == under_on_nwse else vec_b
            incoming = _incoming_corner(under_on_nwse, under_vec_strand)
            order = _ccw_from(incoming)
            crossings.append(Crossing(
                region=i, slot=j,
                arcs=tuple(arc_of(cid + (corner,)) for corner in order),
                sign=s))
        regions.append(RegionInfo(e, n, sign, c_left, c_right))

    seifert_roots = {seifert_uf.find(n) for n in nodes}

    arc_components = {}
    for node in nodes:
        aid = arc_of(node)
        arc_components[aid] = comp_of(node)
    arc_comp_tuple = tuple(arc_components[i] for i in range(len(arc_components)))

    free_loops = len({arc_uf.find(n) for n in nodes}) - len(
        {arc_uf.find(c + (corner,)) for c in crossing_ids for corner in _CORNERS})
    if not crossing_ids:
        free_loops = len({arc_uf.find(n) for n in nodes})

    return Diagram(
        seq=seq, or_top=or_top, or_bot=or_bot,
        regions=tuple(regions), crossings=tuple(crossings),
        arc_components=arc_comp_tuple, ncomponents=ncomponents,
        is_split=is_split, seifert_circles=len(seifert_roots),
        free_loops=free_loops)


def _incoming_corner(on_nwse: bool, vec) -> str:
    if on_nwse:
        return "NW" if vec == (1, -1) else "SE"
    return "NE" if vec == (-1, -1) else "SW"


def _ccw_from(corner: str) -> tuple[str, str, str, str]:
    cycle = ("NW", "SW", "SE", "NE")
    i = cycle.index(corner)
    return cycle[i:] + cycle[:i]


# ---------------------------------------------------------------------------
# classical invariants read off the diagram


def linking_matrix(diagram: Diagram) -> tuple[tuple[int, ...], ...]:
    """Pairwise linking numbers (diagonal zero) in component order."""
    mu = diagram.ncomponents
    doubled = [[0] * mu for _ in range(mu)]
    for info in diagram.regions:
        if info.crossings == 0 or info.comp_left == info.comp_right:
            continue
        a, b = info.comp_left, info.comp_right
        doubled[a][b] += info.sign * info.crossings
        doubled[b][a] += info.sign * info.crossings
    return tuple(tuple(exact_div(v, 2) for v in row) for row in doubled)


def pd_code(diagram: Diagram) -> str:
    """PD-style text export: one 'X a b c d sign' line per crossing.

    Arc ids are 1-based; the four arcs are listed counterclockwise starting
    from the incoming under-strand.  Crossingless circles are reported in a
    trailing 'loops' line.
    """
    lines = []
    for c in diagram.crossings:
        a, b, cc, d = (x + 1 for x in c.arcs)
        lines.append(f"X {a} {b} {cc} {d} {'+' if c.sign > 0 else '-'}1")
    if diagram.free_loops:
        lines.append(f"loops {diagram.free_loops}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# Seifert matrix of the smoothed surface


@dataclass(frozen=True)
class SeifertMatrix:
    """Integer Seifert matrix; rows[i][j] = lk(cycle_i^+, cycle_j)."""

    rows: tuple[tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return len(self.rows)


def _is_open(e: Entry) -> bool:
    # Open regions smooth to two vertical strands: parallel-type twists and
    # crossingless vertical pairs.  Closed regions smooth to a cap and cup.
    return (not e.is_inf) and (e.eps is R or e.k == 0)


def seifert_matrix(diagram: Diagram) -> SeifertMatrix:
    """Seifert matrix for the surface from orientation-respecting smoothing."""
    if diagram.is_split:
        raise SplitDiagramError(f"{diagram.seq} is a split diagram")
    entries = [info.entry for info in diagram.regions]
    top = diagram.or_top
    u = len(entries)
    opens = [i for i, e in enumerate(entries) if _is_open(e)]
    if not opens:
        doubled, size = _chain_cycles(entries)
    else:
        doubled, size = _necklace_cycles(entries, top, opens, u)
    rows = tuple(tuple(exact_div(v, 2) for v in row) for row in doubled)
    expected = len(diagram.crossings) - diagram.seifert_circles + 1
    if size != expected:
        raise InternalConsistencyError(
            f"basis size {size} != crossings - circles + 1 = {expected}")
    return SeifertMatrix(rows)


def _twist_sum(e: Entry) -> int:
    # Total signed half-twists of the band a closed region contributes.
    return -e.k


def _chain_cycles(entries):
    """All regions closed (anti-parallel or infinity): chain between the two
    boundary circles, one cycle per adjacent banded pair."""
    banded = [i for i, e in enumerate(entries) if not e.is_inf]
    for i in banded:
        if entries[i].eps is not S:
            raise InternalConsistencyError("open region escaped classification")
    m = len(banded)
    size = m - 1 if m else 0
    if size <= 0:
        return [], 0
    parities = {entries[i].k % 2 for i in banded}
    if len(parities) != 1:
        raise InternalConsistencyError("mixed parities in an all-closed diagram")
    odd = parities.pop() != 0
    w = [_twist_sum(entries[i]) for i in banded]
    doubled = [[0] * size for _ in range(size)]
    for q in range(size):
        doubled[q][q] = w[q] + w[q + 1]
    for q in range(size - 1):
        shared = w[q + 1]
        if odd:
            doubled[q][q + 1] = -shared + 1
            doubled[q + 1][q] = -shared - 1
        else:
            doubled[q][q + 1] = -shared
            doubled[q + 1][q] = -shared
    return doubled, size


def _necklace_cycles(entries, top, opens, u):
    """Open regions present: ring of necklace disks, parallel bands between
    consecutive disks, one cable band per closed region."""
    c = len(opens)

    def gap_of(region: int) -> int:
        a = bisect_right(opens, region) - 1
        return a % c

    # Constant top-bridge orientation across each gap; the last gap is drawn
    # around the outside, which flips its disk normal.
    normals = []
    for a, ro in enumerate(opens):
        g = top[ro]
        last_bridge = (opens[(a + 1) % c] - 1) % u
        if top[last_bridge] != g:
            raise InternalConsistencyError("gap orientation not constant")
        normals.append(g if a == c - 1 else -g)

    closed = []
    for r, e in enumerate(entries):
        if r in opens or e.is_inf:
            continue
        if e.eps is not S or e.k % 2 != 0 or e.k == 0:
            raise InternalConsistencyError(
                f"unexpected closed region {e} in a necklace diagram")
        closed.append(r)

    bands = {ro: abs(entries[ro].k) for ro in opens}
    signs = {ro: (1 if entries[ro].k > 0 else -1) if bands[ro] else None
             for ro in opens}
    ring = all(n >= 1 for n in bands.values())
    if ring and c % 2 != 0:
        raise InternalConsistencyError("ring cycle with an odd disk count")

    index = {}
    for a, ro in enumerate(opens):
        for j in range(bands[ro] - 1):
            index[("pair", a, j)] = len(index)
    for r in closed:
        index[("cable", r)] = len(index)
    if ring:
        index[("ring",)] = len(index)
    size = len(index)
    doubled = [[0] * size for _ in range(size)]
    if size == 0:
        return doubled, 0

    for a, ro in enumerate(opens):
        sigma = signs[ro]
        n_left = normals[(a - 1) % c]
        for j in range(bands[ro] - 1):
            p = index[("pair", a, j)]
            doubled[p][p] = 2 * sigma
            if j + 1 < bands[ro] - 1:
                q = index[("pair", a, j + 1)]
                doubled[p][q] = -sigma + n_left
                doubled[q][p] = -sigma - n_left
        if ring and bands[ro] >= 2:
            g = index[("ring",)]
            p = index[("pair", a, 0)]
            doubled[g][p] = sigma + normals[a]
            doubled[p][g] = sigma - normals[a]

    for r in closed:
        lam = index[("cable", r)]
        doubled[lam][lam] = -entries[r].k
        if ring:
            g = index[("ring",)]
            n_d = normals[gap_of(r)]
            doubled[g][lam] = -n_d - 1
            doubled[lam][g] = n_d - 1

    if ring:
        g = index[("ring",)]
        doubled[g][g] = sum(signs[ro] for ro in opens)

    return doubled, size


# ---------------------------------------------------------------------------
# Conway polynomial from a Seifert matrix


def conway_from_seifert(matrix: SeifertMatrix | Sequence[Sequence[int]]) -> ZPoly:
    """det(x*V - x^-1*V^T) rewritten exactly in z = x - x^-1."""
    rows = matrix.rows if isinstance(matrix, SeifertMatrix) else tuple(
        tuple(int(v) for v in row) for row in matrix)
    n = len(rows)
    for row in rows:
        if len(row) != n:
            raise InvalidSequenceError("Seifert matrix must be square")
    if n == 0:
        return ZPoly.one()
    lm = [[LaurentZ(-1, (-rows[j][i], 0, rows[i][j])) for j in range(n)]
          for i in range(n)]
    return _laurent_det(lm).substitute_z()


def _laurent_det(m: list[list[LaurentZ]]) -> LaurentZ:
    """Fraction-free (Bareiss) determinant over the Laurent ring."""
    n = len(m)
    sign = 1
    prev = LaurentZ.const(1)
    for k in range(n - 1):
        if m[k][k].is_zero():
            pivot = next((r for r in range(k + 1, n) if not m[r][k].is_zero()), None)
            if pivot is None:
                return LaurentZ.zero()
            m[k], m[pivot] = m[pivot], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                m[i][j] = num.exact_div(prev)
        prev = m[k][k]
    return m[n - 1][n - 1] * sign


# ---------------------------------------------------------------------------
# the oracle proper


def oracle_conway(seq: EnhancedSequence) -> ZPoly:
    """Conway polynomial via build -> split check -> Seifert matrix -> det."""
    return _conway_of(build_diagram(seq))


def _conway_of(diagram: Diagram) -> ZPoly:
    if diagram.is_split:
        return ZPoly.zero()
    return conway_from_seifert(seifert_matrix(diagram))


def component_conway(seq: EnhancedSequence, j: int) -> ZPoly:
    """Conway polynomial of component j (1-based) after deleting the others.

    Deleting the other components leaves the run of regions fully owned by
    component j, side-closed; that is again a pretzel diagram with one
    crossingless region appended.
    """
    diagram = build_diagram(seq)
    mu = diagram.ncomponents
    if not 1 <= j <= mu:
        raise InvalidSequenceError(f"component index {j} out of range 1..{mu}")
    if mu == 1:
        return _conway_of(diagram)
    comp = j - 1
    u = len(seq)
    owned = [i for i, info in enumerate(diagram.regions)
             if info.comp_left == comp and info.comp_right == comp]
    if not owned:
        return ZPoly.one()
    owned_set = set(owned)
    start = next(i for i in range(u) if i not in owned_set)
    run = [i for off in range(1, u + 1)
           for i in [(start + off) % u] if i in owned_set]
    gaps = sum(1 for a, b in zip(run, run[1:]) if (a + 1) % u != b)
    if gaps:
        raise InternalConsistencyError(
            f"component {j} of {seq} owns a non-contiguous run")
    run_entries = [seq[i] for i in run]
    flips = sum(1 for e in run_entries if e.eps is R)
    closer = Entry(0, R if flips % 2 else S)
    reduced = EnhancedSequence(tuple(run_entries) + (closer,), base=True)
    return oracle_conway(reduced)


# ---------------------------------------------------------------------------
# skein-relation spot checks


def skein_checks(seq: EnhancedSequence) -> list[tuple[int, bool]]:
    """Verify the twist-recursion skein identities on every twist region.

    For each region the oracle value of the diagram is compared with the
    two-term combination of the diagrams with the twist count lowered by two
    and smoothed/lowered by one, all computed by the oracle itself.
    """
    z = ZPoly.term(1, 1)
    results = []
    nabla = oracle_conway(seq)
    for i, e in enumerate(seq):
        if e.is_inf or e.k == 0:
            continue
        k, eps = e.k, e.eps
        if eps is S:
            smooth = Entry(INF, S if k % 2 == 0 else R)
            if k > 0:
                rhs = (oracle_conway(seq.replace(i, Entry(k - 2, S)))
                       - z * oracle_conway(seq.replace(i, smooth)))
            else:
                rhs = (oracle_conway(seq.replace(i, Entry(k + 2, S)))
                       + z * oracle_conway(seq.replace(i, smooth)))
        else:
            if k > 0:
                rhs = (oracle_conway(seq.replace(i, Entry(k - 2, R)))
                       + z * oracle_conway(seq.replace(i, Entry(k - 1, R))))
            else:
                rhs = (oracle_conway(seq.replace(i, Entry(k + 2, R)))
                       - z * oracle_conway(seq.replace(i, Entry(k + 1, R))))
        results.append((i, rhs == nabla))
    return results
