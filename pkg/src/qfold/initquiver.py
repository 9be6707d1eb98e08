"""The staircase quiver of a reduced word, frozen vertices, initial cluster
variable labels, and the orbit-summed exchange matrix.

Vertices sit at (t, i_t) for the letters of the word; the rightmost vertex
of each row is frozen.  Horizontal arrows run right-to-left between row
neighbours.  Between distinct rows i and j there are -i.j arrows from (a,i)
to (b,j) when b is the last j-vertex that a "sees" before its own row
repeats, in the zigzag sense made precise in _interrow_arrow below.
"""

from __future__ import annotations

from dataclasses import dataclass

from .folding import QuiverWithAut, unfolded_blocks
from .rootdata import CartanDatum, is_reduced
from .uqn import MinorSpec


@dataclass(frozen=True)
class IceQuiver:
    """A staircase quiver: positions 1..m with rows, arrows, and frozen set."""

    datum: CartanDatum
    word: tuple
    arrows: tuple        # ((src, dst, multiplicity), ...) sorted
    frozen: frozenset

    @property
    def positions(self):
        return tuple(range(1, len(self.word) + 1))

    def row(self, t):
        return self.word[t - 1]

    def exchangeable(self):
        return tuple(t for t in self.positions if t not in self.frozen)

    def multiplicity(self, src, dst) -> int:
        for s, d, m in self.arrows:
            if (s, d) == (src, dst):
                return m
        return 0

    def arrow_multiset(self):
        return {(s, d): m for s, d, m in self.arrows}


def _interrow_arrow(rows, i, j, a, b):
    """The zigzag predicate: -i.j arrows from (a,i) to (b,j)?

    Requires a < b with no row-i vertex between a and b, and no row-j
    vertex c > b whose gap down to b is free of row-i vertices.  The first
    clause does not appear in the prose rule but is forced by the worked
    figure (without it every row would also shoot arrows at far-away
    vertices, e.g. 4 -> 10 in the figure).
    """
    if a >= b:
        return False
    if any(a < e < b for e in rows[i]):
        return False
    for c in rows[j]:
        if c > b and not any(b < d < c for d in rows[i]):
            return False
    return True


def build_initial_quiver(word, datum: CartanDatum) -> IceQuiver:
    """The staircase quiver Q(i_1, ..., i_m) of a reduced word."""
    word = tuple(word)
    if not is_reduced(datum, word):
        raise ValueError("word %r is not reduced" % (word,))
    m = len(word)
    rows = {i: [t for t in range(1, m + 1) if word[t - 1] == i]
            for i in datum.indices}
    arrows = []
    # Horizontal arrows point left between consecutive vertices of a row.
    for i, ts in rows.items():
        for prev, nxt in zip(ts, ts[1:]):
            arrows.append((nxt, prev, 1))
    # Inter-row arrows carry multiplicity -i.j = -d_i a_ij.
    for a in range(1, m + 1):
        i = word[a - 1]
        for b in range(1, m + 1):
            j = word[b - 1]
            if i == j:
                continue
            mult = -datum.d(i) * datum.a(i, j)
            if mult and _interrow_arrow(rows, i, j, a, b):
                arrows.append((a, b, mult))
    frozen = frozenset(ts[-1] for ts in rows.values() if ts)
    return IceQuiver(datum, word, tuple(sorted(arrows)), frozen)


def initial_cluster_variables(word, datum: CartanDatum):
    """The minor labels Y_t = D(s_{i1}...s_{it} w_{it}, w_{it}), one per vertex."""
    word = tuple(word)
    return [MinorSpec(datum.fundamental_weight(word[t - 1]), word[:t])
            for t in range(1, len(word) + 1)]


@dataclass(frozen=True)
class ExchangeData:
    """Orbit-labelled exchange matrix with rows S and exchangeable columns."""

    labels: tuple        # orbit labels (tuples of positions), full vertex set S
    exchangeable: tuple  # the subset of labels that index columns
    matrix: tuple        # rows aligned with labels, columns with exchangeable
    sizes: tuple         # orbit sizes (skew-symmetrizers of the principal part)

    def entry(self, row_label, col_label) -> int:
        return self.matrix[self.labels.index(row_label)][
            self.exchangeable.index(col_label)]

    def principal_part(self):
        rows = [self.labels.index(s) for s in self.exchangeable]
        return tuple(tuple(self.matrix[r][c]
                           for c in range(len(self.exchangeable)))
                     for r in rows)


class OrbitCompatibilityError(ValueError):
    pass


def fold_exchange_matrix(quiver: IceQuiver, orbits=None) -> ExchangeData:
    """Orbit-sum the staircase quiver into an exchange matrix.

    b_{ts} counts arrows from one element of orbit t to all elements of
    orbit s, arrows into s positive and arrows out of s negative.  Columns
    are the exchangeable orbits.  Every representative of t must give the
    same count, otherwise the partition is not automorphism-compatible.
    Frozen and mutable vertices may not share an orbit.
    """
    positions = quiver.positions
    if orbits is None:
        orbits = [(t,) for t in positions]
    orbits = [tuple(sorted(o)) for o in orbits]
    covered = sorted(p for o in orbits for p in o)
    if covered != sorted(positions):
        raise OrbitCompatibilityError("orbits do not partition the positions")
    mult = quiver.arrow_multiset()

    def signed_count(rep, orbit):
        total = 0
        for v in orbit:
            total += mult.get((rep, v), 0) - mult.get((v, rep), 0)
        return total

    labels = tuple(sorted(orbits))
    for orbit in labels:
        flags = {t in quiver.frozen for t in orbit}
        if len(flags) > 1:
            raise OrbitCompatibilityError(
                "orbit %r mixes frozen and exchangeable vertices" % (orbit,))
    exchangeable = tuple(o for o in labels if o[0] not in quiver.frozen)
    matrix = []
    for t in labels:
        row = []
        for s in exchangeable:
            counts = {signed_count(rep, s) for rep in t}
            if len(counts) > 1:
                raise OrbitCompatibilityError(
                    "representatives of %r disagree against %r" % (t, s))
            row.append(counts.pop())
        matrix.append(tuple(row))
    return ExchangeData(labels, exchangeable, tuple(matrix),
                        tuple(len(o) for o in labels))


def vertex_orbits_from_unfolding(j_word, quiver: QuiverWithAut):
    """Position orbits of the automorphism acting on an unfolded word's quiver.

    Each letter of the word over orbits expands to a block of positions;
    inside a block, the position holding vertex v maps to the position
    holding a(v).  Returns (unfolded word, position orbit list).
    """
    blocks = unfolded_blocks(j_word, quiver)
    unfolded = []
    perm = {}
    for orbit, positions in blocks:
        members = list(orbit)  # ascending, matching unfold_word's convention
        unfolded.extend(members)
        spot = dict(zip(members, positions))
        for v, pos in zip(members, positions):
            perm[pos] = spot[quiver.automorphism[v]]
    orbits = []
    seen = set()
    for pos in sorted(perm):
        if pos in seen:
            continue
        cycle = [pos]
        seen.add(pos)
        nxt = perm[pos]
        while nxt not in seen:
            cycle.append(nxt)
            seen.add(nxt)
            nxt = perm[nxt]
        orbits.append(tuple(sorted(cycle)))
    return tuple(unfolded), orbits, perm


def check_orbit_action_preserves_quiver(ice: IceQuiver, perm) -> bool:
    """The induced position permutation must map the arrow multiset to itself
    and fix the frozen set."""
    mult = ice.arrow_multiset()
    mapped = {(perm[s], perm[d]): m for (s, d), m in mult.items()}
    return mapped == mult and {perm[t] for t in ice.frozen} == set(ice.frozen)


def quiver_to_dot(ice: IceQuiver) -> str:
    """DOT text: vertices "t:i", frozen vertices double-boxed, multiplicities
    as edge labels."""
    lines = ["digraph staircase {", "  rankdir=LR;"]
    for t in ice.positions:
        label = "%d:%s" % (t, _label(ice.row(t)))
        shape = 'shape=box, peripheries=2' if t in ice.frozen else 'shape=box'
        lines.append('  v%d [label="%s", %s];' % (t, label, shape))
    for s, d, m in ice.arrows:
        suffix = ' [label="%d"]' % m if m > 1 else ""
        lines.append("  v%d -> v%d%s;" % (s, d, suffix))
    lines.append("}")
    return "\n".join(lines) + "\n"


def _label(i):
    if isinstance(i, tuple):
        return "{%s}" % ",".join(str(x) for x in i)
    return str(i)


def exchange_to_json(data: ExchangeData) -> dict:
    return {"labels": [list(o) for o in data.labels],
            "exchangeable": [list(o) for o in data.exchangeable],
            "matrix": [list(row) for row in data.matrix],
            "sizes": list(data.sizes)}
