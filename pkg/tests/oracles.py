"""Brute-force reference implementations used only by the tests.

Nothing here imports the algorithms under test: words are reduced by
repeated substring deletion, and tangles are evaluated by building the
whole string graph of a composite tangle and counting its components.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import comb


def catalan(n: int) -> int:
    return comb(2 * n, n) // (n + 1)


def reduce_by_deletion(word: list[tuple[int, int]]) -> list[tuple[int, int]]:
    """Free reduction by deleting adjacent inverse pairs until none are left."""
    w = list(word)
    changed = True
    while changed:
        changed = False
        for i in range(len(w) - 1):
            if w[i][0] == w[i + 1][0] and w[i][1] == -w[i + 1][1]:
                del w[i : i + 2]
                changed = True
                break
    return w


def alternating_trivial(seq, plus_start: bool = True) -> bool:
    e = -1 if plus_start else 1
    word = [(s, e if i % 2 == 0 else -e) for i, s in enumerate(seq)]
    return not reduce_by_deletion(word)


def diagonal_dim(k: int, rank: int = 2) -> int:
    return sum(alternating_trivial(seq) for seq in product(range(rank), repeat=2 * k))


def nc_pairing_brute(seq) -> bool:
    """Search over all perfect matchings; keep non-crossing ones pairing equal letters."""
    n = len(seq)
    if n % 2:
        return False

    def rec(points):
        if not points:
            return True
        p = points[0]
        for idx in range(1, len(points), 2):
            q = points[idx]
            if seq[p] != seq[q]:
                continue
            inside, outside = points[1:idx], points[idx + 1 :]
            if rec(inside) and rec(outside):
                return True
        return False

    return rec(list(range(n)))


# ---------------------------------------------------------------------------
# string graphs


class Graph:
    """Nodes are arbitrary hashables; edges are strings of a tangle."""

    def __init__(self):
        self.adj: dict = {}

    def edge(self, a, b):
        self.adj.setdefault(a, []).append(b)
        self.adj.setdefault(b, []).append(a)

    def components(self):
        seen, out = set(), []
        for start in self.adj:
            if start in seen:
                continue
            comp, stack = [], [start]
            seen.add(start)
            while stack:
                v = stack.pop()
                comp.append(v)
                for w in self.adj[v]:
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            out.append(comp)
        return out


# Each unary step maps an input box of size n to an output box; it is given
# as a list of (output position, input position) identifications plus
# output-output and input-input joins, all in clockwise word positions.


def step_pairs(op: str, n: int):
    """Return (m, through, out_joins, in_joins) for a unary tangle on size n."""
    if op == "RE":
        through = [(j, j) for j in range(n - 1)] + [(j - 2, j) for j in range(n + 1, 2 * n)]
        return n - 1, through, [], [(n - 1, n)]
    if op == "LE":
        through = [(j - 1, j) for j in range(1, 2 * n - 1)]
        return n - 1, through, [], [(0, 2 * n - 1)]
    if op == "RI":
        through = [(j, j) for j in range(n)] + [(j + 2, j) for j in range(n, 2 * n)]
        return n + 1, through, [(n, n + 1)], []
    if op == "LI":
        through = [(j + 1, j) for j in range(2 * n)]
        return n + 1, through, [(0, 2 * n + 1)], []
    if op == "rho":
        through = [(j, (j + 1) % (2 * n)) for j in range(2 * n)]
        return n, through, [], []
    if op == "star":
        through = [(j, 2 * n - 1 - j) for j in range(2 * n)]
        return n, through, [], []
    raise ValueError(op)


def chain_graph(ops: list[str], n: int):
    """Graph of the composite tangle: layer 0 is the input box, the last layer the output."""
    g = Graph()
    size = n
    for layer, op in enumerate(ops):
        m, through, out_joins, in_joins = step_pairs(op, size)
        for o, i in through:
            g.edge(("L", layer, i), ("L", layer + 1, o))
        for a, b in out_joins:
            g.edge(("L", layer + 1, a), ("L", layer + 1, b))
        for a, b in in_joins:
            g.edge(("L", layer, a), ("L", layer, b))
        # make sure isolated boundary points exist as nodes
        for j in range(2 * size):
            g.adj.setdefault(("L", layer, j), [])
        size = m
    for j in range(2 * size):
        g.adj.setdefault(("L", len(ops), j), [])
    return g, size


def evaluate_chain_diagonal(ops: list[str], n: int, x: dict, rank: int = 2) -> dict:
    """Apply a chain of unary tangles to x (word -> coefficient) by the counting rule.

    The output coefficient of a word u is the sum over input words w of
    x[w] * rank^(closed loops), restricted to colorings constant on each
    string of the composite.
    """
    g, m = chain_graph(ops, n)
    last = len(ops)
    comps = g.components()
    loops = 0
    constraints = []  # (input positions, output positions) per string
    for comp in comps:
        ins = [j for (_, layer, j) in comp if layer == 0]
        outs = [j for (_, layer, j) in comp if layer == last]
        if not ins and not outs:
            loops += 1
        else:
            constraints.append((ins, outs))
    factor = Fraction(rank) ** loops
    result: dict = {}
    for w, c in x.items():
        colors_out: dict = {}
        free = []
        ok = True
        for ins, outs in constraints:
            vals = {w[j] for j in ins}
            if len(vals) > 1:
                ok = False
                break
            if vals:
                (v,) = vals
                for j in outs:
                    colors_out[j] = v
            else:
                free.append(outs)
        if not ok:
            continue
        for choice in product(range(rank), repeat=len(free)):
            col = dict(colors_out)
            for outs, v in zip(free, choice):
                for j in outs:
                    col[j] = v
            u = tuple(col[j] for j in range(2 * m))
            result[u] = result.get(u, 0) + Fraction(c) * factor
    return {u: v for u, v in result.items() if v}


# ---------------------------------------------------------------------------
# Temperley-Lieb composition by explicit path following


def tl_compose_oracle(top_pairs, bottom_pairs, n: int):
    """Stack two n-strand diagrams with points 1..n on top and n+1..2n on the bottom
    (bottom numbered right to left); returns (pairs, number of closed loops)."""

    g = Graph()
    for p, q in top_pairs:
        g.edge(("T", p), ("T", q))
    for p, q in bottom_pairs:
        g.edge(("B", p), ("B", q))
    for t in range(1, n + 1):
        # middle point t (left to right) is bottom point of the upper diagram
        # and top point of the lower one
        g.edge(("T", 2 * n + 1 - t), ("B", t))
    pairs, loops = set(), 0
    for comp in g.components():
        ext = []
        for side, p in comp:
            if side == "T" and p <= n:
                ext.append(p)
            elif side == "B" and p > n:
                ext.append(p)
        if not ext:
            loops += 1
        else:
            a, b = sorted(ext)
            pairs.add((a, b))
    return frozenset(pairs), loops
