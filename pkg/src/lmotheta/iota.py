"""The chord-gluing maps iota_n on diagrams built from struts, wheels and one opaque blob.

iota_n glues n chords into the 2n legs in every possible way. Each closed loop
without vertices becomes a factor -2n, and closed diagrams with more than 2n
vertices are discarded. Surviving diagrams are classified up to isomorphism.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterator

from .scalars import rat

TRI = 0
BLOB = 1


@dataclass(frozen=True)
class OpenDiagram:
    """Disjoint union of struts, wheels (by leg count), at most one blob and closed thetas."""

    struts: int = 0
    wheels: tuple[int, ...] = ()
    blob_degree: int | None = None
    thetas: int = 0

    def __post_init__(self):
        object.__setattr__(self, "wheels", tuple(sorted(self.wheels)))
        if self.struts < 0 or self.thetas < 0 or any(m < 1 for m in self.wheels):
            raise ValueError("invalid diagram")

    @property
    def legs(self) -> int:
        return 2 * self.struts + sum(self.wheels) + (2 if self.blob_degree is not None else 0)


# ---------------------------------------------------------------------------
# multigraph canonical form


class Multigraph:
    """Vertex colours plus an edge multiset; self-loops allowed."""

    def __init__(self, colors: list[int], edges: list[tuple[int, int]]):
        self.colors = colors
        self.edges = [tuple(sorted(e)) for e in edges]

    @property
    def n(self) -> int:
        return len(self.colors)

    def adjacency(self) -> list[dict[int, int]]:
        adj: list[dict[int, int]] = [dict() for _ in range(self.n)]
        for a, b in self.edges:
            adj[a][b] = adj[a].get(b, 0) + 1
            if a != b:
                adj[b][a] = adj[b].get(a, 0) + 1
        return adj


def _refine(adj, cells: list[int]) -> list[int]:
    """Colour refinement to a stable partition; cell ids are ranks of signatures."""
    while True:
        sig = [
            (cells[v], tuple(sorted((cells[u], m) for u, m in adj[v].items())))
            for v in range(len(cells))
        ]
        ranks = {s: i for i, s in enumerate(sorted(set(sig)))}
        new = [ranks[s] for s in sig]
        if len(set(new)) == len(set(cells)):
            return new
        cells = new


def _encode(g: Multigraph, order: list[int]) -> tuple:
    pos = {v: i for i, v in enumerate(order)}
    return (
        tuple(g.colors[v] for v in order),
        tuple(sorted(tuple(sorted((pos[a], pos[b]))) for a, b in g.edges)),
    )


def canonical_form(g: Multigraph) -> tuple:
    """Minimal encoding over all individualization-refinement leaves (exact, no pruning)."""
    if g.n == 0:
        return ((), ())
    adj = g.adjacency()
    best = None

    def search(cells):
        nonlocal best
        cells = _refine(adj, cells)
        k = len(set(cells))
        if k == len(cells):
            order = sorted(range(len(cells)), key=lambda v: cells[v])
            code = _encode(g, order)
            if best is None or code < best:
                best = code
            return
        sizes: dict[int, int] = {}
        for c in cells:
            sizes[c] = sizes.get(c, 0) + 1
        target = min(c for c, s in sizes.items() if s > 1)
        for v in range(len(cells)):
            if cells[v] == target:
                split = [2 * c for c in cells]
                split[v] = 2 * target - 1
                search(split)

    search(list(g.colors))
    return best


THETA_CODE = canonical_form(Multigraph([TRI, TRI], [(0, 1)] * 3))
BLOB_CODE = canonical_form(Multigraph([BLOB], [(0, 0)]))
NAMES = {((), ()): "1", THETA_CODE: "theta", BLOB_CODE: "blob"}


def shape_name(code: tuple) -> str:
    return NAMES.get(code) or "graph" + repr(code)


# ---------------------------------------------------------------------------
# gluing


@dataclass
class ClosedSum:
    terms: dict[str, Fraction]
    discarded: int = 0

    def coeff(self, name: str) -> Fraction:
        return self.terms.get(name, Fraction(0))

    def __add__(self, other: "ClosedSum") -> "ClosedSum":
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return ClosedSum({k: c for k, c in out.items() if c}, self.discarded + other.discarded)

    def scale(self, s) -> "ClosedSum":
        s = rat(s)
        return ClosedSum({k: s * c for k, c in self.terms.items() if s * c}, self.discarded)


def perfect_matchings(items: list[int]) -> Iterator[list[tuple[int, int]]]:
    if not items:
        yield []
        return
    a = items[0]
    for i in range(1, len(items)):
        rest = items[1:i] + items[i + 1 :]
        for m in perfect_matchings(rest):
            yield [(a, items[i])] + m


def double_factorial(m: int) -> int:
    out = 1
    while m > 1:
        out *= m
        m -= 2
    return out


def _skeleton(d: OpenDiagram):
    """Vertices, internal edges, per-leg anchors and the vertex weight of the blob."""
    colors: list[int] = []
    edges: list[tuple[int, int]] = []
    anchors: list[tuple[str, int]] = []
    for _ in range(d.struts):
        a = len(anchors)
        anchors += [("leg", a + 1), ("leg", a)]
    for m in d.wheels:
        base = len(colors)
        colors += [TRI] * m
        for i in range(m):
            edges.append((base + i, base + (i + 1) % m))
            anchors.append(("node", base + i))
    blob_weight = 0
    if d.blob_degree is not None:
        v = len(colors)
        colors.append(BLOB)
        anchors += [("node", v), ("node", v)]
        blob_weight = 2 * d.blob_degree
    for _ in range(d.thetas):
        base = len(colors)
        colors += [TRI, TRI]
        edges += [(base, base + 1)] * 3
    return colors, edges, anchors, blob_weight


def iota(n: int, d: OpenDiagram) -> ClosedSum:
    """Sum over all ways of gluing n chords into the legs of d."""
    if n < 1:
        raise ValueError("n must be positive")
    if d.legs != 2 * n:
        return ClosedSum({})
    colors, base_edges, anchors, blob_weight = _skeleton(d)
    vertices = colors.count(TRI) + blob_weight
    out: dict[str, Fraction] = {}
    discarded = 0
    for matching in perfect_matchings(list(range(2 * n))):
        mate = {}
        for a, b in matching:
            mate[a], mate[b] = b, a
        edges = list(base_edges)
        seen = set()
        for leg, (kind, v) in enumerate(anchors):
            if kind != "node" or leg in seen:
                continue
            seen.add(leg)
            cur = mate[leg]
            while True:
                seen.add(cur)
                k2, w = anchors[cur]
                if k2 == "node":
                    edges.append((v, w))
                    break
                seen.add(w)
                cur = mate[w]
        loops = 0
        for leg in range(2 * n):
            if leg in seen:
                continue
            loops += 1
            cur = leg
            while cur not in seen:
                seen.add(cur)
                partner = anchors[cur][1]
                seen.add(partner)
                cur = mate[partner]
        if vertices > 2 * n:
            discarded += 1
            continue
        name = shape_name(canonical_form(Multigraph(list(colors), edges)))
        out[name] = out.get(name, 0) + Fraction(-2 * n) ** loops
    return ClosedSum({k: c for k, c in out.items() if c}, discarded)


def blob_factor(n: int) -> int:
    """(-1)^(n-1) 2^(n-1) (n-1)!."""
    return (-1) ** (n - 1) * 2 ** (n - 1) * factorial(n - 1)


def casson_pipeline(a2, lam, kappa, f: int, n: int) -> Fraction:
    """Surgery ratio in the {1, theta} sector; returns the new Casson invariant.

    Numerator: iota_n(exp(f/2 strut) u (1 + lam/2 theta + (2 kappa - a2/2) wheel_2)),
    denominator: the same with lam = a2 = 0. Only terms with 2n legs survive iota_n.
    """
    a2, lam, kappa = rat(a2), rat(lam), rat(kappa)
    if f not in (-1, 1):
        raise ValueError("framing must be -1 or +1")
    w_n = Fraction(f, 2) ** n / factorial(n)
    w_m = Fraction(f, 2) ** (n - 1) / factorial(n - 1)

    def image(lam_, wheel_coeff):
        total = iota(n, OpenDiagram(struts=n)).scale(w_n)
        total = total + iota(n, OpenDiagram(struts=n, thetas=1)).scale(w_n * lam_ / 2)
        total = total + iota(n, OpenDiagram(struts=n - 1, wheels=(2,))).scale(w_m * wheel_coeff)
        return total.coeff("1"), total.coeff("theta")

    a_num, b_num = image(lam, 2 * kappa - a2 / 2)
    a_den, b_den = image(Fraction(0), 2 * kappa)
    # (a + b theta) / (c + d theta) = a/c + (b c - a d)/c^2 theta + O(theta^2)
    ratio_theta = (b_num * a_den - a_num * b_den) / a_den**2
    if a_num != a_den:
        raise ArithmeticError("leading terms of numerator and denominator differ")
    return 2 * ratio_theta
