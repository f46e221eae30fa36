"""Oriented simplicial complexes of dimension <= 4, with a small library
of built-in spaces and an ordered-product triangulation.

Simplices are stored as sorted vertex tuples; the orientation of every
simplex is the one induced by increasing vertex order.  This single
convention is shared by the cohomology and Berry-class modules.
"""

from __future__ import annotations

from itertools import combinations

from .errors import ComputationError, ValidationError

MAX_DIM = 4


class SimplicialComplex:
    """Finite simplicial complex on vertices 0..n-1, closed under faces."""

    def __init__(self, n_vertices: int, simplices: dict[int, list[tuple[int, ...]]]):
        if n_vertices < 1:
            raise ValidationError("complex needs at least one vertex")
        self.n_vertices = n_vertices
        self._simplices: dict[int, list[tuple[int, ...]]] = {
            0: [(v,) for v in range(n_vertices)]
        }
        seen: dict[int, set[tuple[int, ...]]] = {0: set(self._simplices[0])}
        for k in sorted(simplices):
            if k <= 0:
                continue
            if k > MAX_DIM:
                raise ValidationError(f"simplex dimension {k} exceeds {MAX_DIM}")
            bucket = seen.setdefault(k, set())
            for s in simplices[k]:
                s = tuple(sorted(s))
                if len(set(s)) != k + 1:
                    raise ValidationError(f"degenerate {k}-simplex {s}")
                if any(v < 0 or v >= n_vertices for v in s):
                    raise ValidationError(f"vertex out of range in {s}")
                bucket.add(s)
        # close under faces, top dimension downward
        for k in range(MAX_DIM, 1, -1):
            if k not in seen:
                continue
            faces = seen.setdefault(k - 1, set())
            for s in seen[k]:
                for f in combinations(s, k):
                    faces.add(f)
        for k in sorted(seen):
            self._simplices[k] = sorted(seen[k])
        self._index: dict[int, dict[tuple[int, ...], int]] = {
            k: {s: i for i, s in enumerate(v)} for k, v in self._simplices.items()
        }

    @property
    def dim(self) -> int:
        return max(k for k, v in self._simplices.items() if v)

    def simplices(self, k: int) -> list[tuple[int, ...]]:
        return self._simplices.get(k, [])

    def index(self, k: int) -> dict[tuple[int, ...], int]:
        return self._index.get(k, {})

    def n_simplices(self, k: int) -> int:
        return len(self.simplices(k))

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * len(v) for k, v in self._simplices.items())

    def __repr__(self) -> str:
        counts = [str(len(self.simplices(k))) for k in range(self.dim + 1)]
        return f"SimplicialComplex(f-vector {'/'.join(counts)})"


def from_top_simplices(n_vertices: int, top: list[tuple[int, ...]]) -> SimplicialComplex:
    if not top:
        raise ValidationError("need at least one top simplex")
    k = len(top[0]) - 1
    return SimplicialComplex(n_vertices, {k: top})


def sphere(n: int) -> SimplicialComplex:
    """Boundary of the (n+1)-simplex, the minimal triangulation of S^n."""
    if not 1 <= n <= MAX_DIM - 1:
        raise ValidationError("sphere dimension out of supported range")
    verts = list(range(n + 2))
    return from_top_simplices(n + 2, list(combinations(verts, n + 1)))


def circle(m: int = 3) -> SimplicialComplex:
    if m < 3:
        raise ValidationError("a simplicial circle needs at least 3 vertices")
    edges = [(i, (i + 1) % m) for i in range(m)]
    return from_top_simplices(m, [tuple(sorted(e)) for e in edges])


# Hemi-icosahedron: the 6-vertex triangulation of RP^2 (chi = 6-15+10 = 1).
_RP2_FACES = [
    (0, 1, 3), (0, 1, 4), (0, 2, 4), (0, 2, 5), (0, 3, 5),
    (1, 2, 3), (1, 2, 5), (1, 4, 5), (2, 3, 4), (3, 4, 5),
]


def real_projective_plane() -> SimplicialComplex:
    return from_top_simplices(6, _RP2_FACES)


def product_complex(K: SimplicialComplex, L: SimplicialComplex) -> SimplicialComplex:
    """Staircase (ordered-product) triangulation of |K| x |L|.

    Vertex (u, v) gets index u * L.n_vertices + v; staircase simplices of
    sigma x tau are the monotone lattice paths through the vertex grid,
    which glue consistently because the path vertices are increasing in
    the lexicographic vertex order.
    """
    if K.dim + L.dim > MAX_DIM:
        raise ValidationError("product dimension exceeds supported maximum")
    nL = L.n_vertices

    def vid(u: int, v: int) -> int:
        return u * nL + v

    top: list[tuple[int, ...]] = []
    p, q = K.dim, L.dim
    for sigma in K.simplices(p):
        for tau in L.simplices(q):
            for rights in combinations(range(p + q), p):
                a = b = 0
                path = [vid(sigma[0], tau[0])]
                for step in range(p + q):
                    if step in rights:
                        a += 1
                    else:
                        b += 1
                    path.append(vid(sigma[a], tau[b]))
                top.append(tuple(path))
    return from_top_simplices(K.n_vertices * nL, top)


def fundamental_cycle(K: SimplicialComplex) -> list[int]:
    """Coherent orientation signs for the top simplices of a closed
    oriented pseudomanifold, aligned with K.simplices(dim).

    Signs are relative to the increasing-vertex-order orientation; the
    first top simplex of each connected component gets +1.
    """
    d = K.dim
    tops = K.simplices(d)
    facet_uses: dict[tuple[int, ...], list[tuple[int, int]]] = {}
    for ti, s in enumerate(tops):
        for j in range(d + 1):
            f = s[:j] + s[j + 1:]
            facet_uses.setdefault(f, []).append((ti, j))
    for f, uses in facet_uses.items():
        if len(uses) != 2:
            raise ComputationError(
                f"not a closed manifold: facet {f} lies in {len(uses)} top simplices"
            )
    signs = [0] * len(tops)
    for start in range(len(tops)):
        if signs[start] != 0:
            continue
        signs[start] = 1
        stack = [start]
        while stack:
            ti = stack.pop()
            s = tops[ti]
            for j in range(d + 1):
                f = s[:j] + s[j + 1:]
                (a, ja), (b, jb) = facet_uses[f]
                other, jo = (b, jb) if a == ti else (a, ja)
                want = -signs[ti] * (-1) ** (j + jo)
                if signs[other] == 0:
                    signs[other] = want
                    stack.append(other)
                elif signs[other] != want:
                    raise ComputationError("non-orientable")
    return signs
