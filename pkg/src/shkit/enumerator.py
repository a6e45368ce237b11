"""Desk-scale model enumeration.

Finite distributive lattices come from Birkhoff duality (downset lattices of
small posets); on each lattice we enumerate every semi-Heyting arrow and
every dually quasi-De Morgan negation, and combine them up to isomorphism.

Every semi-Heyting arrow on a lattice has the same ``x → 0`` (the lattice
pseudocomplement).  Identities whose arrows are all of that form therefore
depend only on the pair (lattice, negation), which is what makes
variety-level checks over all lattices of size 8 affordable: such checks
run over :func:`families` instead of over individual arrows.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations, product
from typing import Callable, Hashable, Iterable, Iterator, Sequence

import numpy as np

from .algebra import CoverRelation, FiniteAlgebra, Lattice
from .catalog import get_identity, holds
from .terms import Identity

DEFAULT_MAX_NODES = 10**7
MAX_LATTICE_SIZE = 16


class SearchSpaceExceeded(RuntimeError):
    def __init__(self, nodes: int, cap: int, where: str = ""):
        self.nodes = nodes
        self.cap = cap
        super().__init__(f"search exceeded {cap} candidate nodes{(' on ' + where) if where else ''}")


def max_nodes_default() -> int:
    raw = os.environ.get("SHKIT_MAX_NODES")
    return int(raw) if raw else DEFAULT_MAX_NODES


# -- canonical labelling ------------------------------------------------------


def _refine(n: int, colors: list[int], signature: Callable[[int, list[int]], Hashable]) -> list[int]:
    """Iterate colour refinement until the partition is stable.

    Colours are re-indexed by sorting (old colour, signature), so the
    relative order of existing classes is preserved and the result never
    depends on element labels, only on the structure ``signature`` sees.
    """
    while True:
        sigs = [(colors[x], signature(x, colors)) for x in range(n)]
        ranked = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [ranked[s] for s in sigs]
        if len(ranked) == len(set(colors)):
            return new
        colors = new


def _canonical_search(
    n: int,
    colors: list[int],
    signature: Callable[[int, list[int]], Hashable],
    encode: Callable[[list[int]], tuple],
) -> tuple[tuple, list[int]]:
    """Individualization-refinement; returns (min encoding, its labelling).

    A labelling maps element ``x`` to position ``perm[x]``.
    """
    best: list = [None, None]

    def visit(cols: list[int]) -> None:
        cols = _refine(n, cols, signature)
        if len(set(cols)) == n:
            enc = encode(cols)
            if best[0] is None or enc < best[0]:
                best[0], best[1] = enc, cols
            return
        counts: dict[int, int] = {}
        for c in cols:
            counts[c] = counts.get(c, 0) + 1
        target = min(c for c, k in counts.items() if k > 1)
        for v in range(n):
            if cols[v] == target:
                visit([2 * c + (0 if x == v else 1) if c == target else 2 * c for x, c in enumerate(cols)])

    visit(list(colors))
    return best[0], best[1]


def _algebra_signature(alg: FiniteAlgebra) -> Callable[[int, list[int]], Hashable]:
    M, J, A, N = alg.meet_table, alg.join_table, alg.arrow_table, alg.neg_table
    n = alg.size

    def sig(x: int, c: list[int]) -> Hashable:
        return (
            c[N[x]],
            tuple(sorted((c[y], c[M[x][y]], c[J[x][y]], c[A[x][y]], c[A[y][x]]) for y in range(n))),
        )

    return sig


def canonical_form(alg: FiniteAlgebra) -> tuple:
    """Isomorphism-invariant encoding of the four operation tables."""
    return _canonical(alg)[0]


def canonical_labelling(alg: FiniteAlgebra) -> list[int]:
    return _canonical(alg)[1]


def _canonical(alg: FiniteAlgebra) -> tuple[tuple, list[int]]:
    n = alg.size
    M, J, A, N = alg.meet_table, alg.join_table, alg.arrow_table, alg.neg_table
    leq = alg.leq_matrix
    start = [int(leq[:, x].sum()) for x in range(n)]  # number of elements below

    def encode(perm: list[int]) -> tuple:
        inv = [0] * n
        for x, p in enumerate(perm):
            inv[p] = x
        return (
            n,
            tuple(perm[N[inv[a]]] for a in range(n)),
            tuple(perm[M[inv[a]][inv[b]]] for a in range(n) for b in range(n)),
            tuple(perm[A[inv[a]][inv[b]]] for a in range(n) for b in range(n)),
            tuple(perm[J[inv[a]][inv[b]]] for a in range(n) for b in range(n)),
        )

    return _canonical_search(n, start, _algebra_signature(alg), encode)


def invariant(alg: FiniteAlgebra) -> tuple:
    """Cheap isomorphism invariant: histograms of element heights through each operation."""
    n = alg.size
    arr = alg.arrays
    h = alg.leq_matrix.sum(axis=0)  # elements below each x
    x, y = np.indices((n, n))
    out = [n]
    for key in ("arrow", "meet"):
        codes = (h[x] * (n + 1) + h[y]) * (n + 1) + h[arr[key]]
        out.append(tuple(np.bincount(codes.ravel(), minlength=(n + 1) ** 3).tolist()))
    out.append(tuple(np.bincount(h * (n + 1) + h[arr["neg"]], minlength=(n + 1) ** 2).tolist()))
    return tuple(out)


def is_isomorphic(a: FiniteAlgebra, b: FiniteAlgebra) -> bool:
    if a.size != b.size or invariant(a) != invariant(b):
        return False
    return canonical_form(a) == canonical_form(b)


def find_isomorphism(a: FiniteAlgebra, b: FiniteAlgebra) -> list[int] | None:
    """Explicit bijection ``a → b`` preserving all operations and bounds, by backtracking."""
    n = a.size
    if n != b.size:
        return None
    la, lb = a.leq_matrix, b.leq_matrix
    inv_a = [(int(la[:, x].sum()), int(la[x].sum())) for x in range(n)]
    inv_b = [(int(lb[:, x].sum()), int(lb[x].sum())) for x in range(n)]
    image = [-1] * n
    used = [False] * n

    def consistent() -> bool:
        for x in range(n):
            if image[x] < 0:
                continue
            fx = image[x]
            nx = a.neg_table[x]
            if image[nx] >= 0 and image[nx] != b.neg_table[fx]:
                return False
            for y in range(n):
                if image[y] < 0:
                    continue
                fy = image[y]
                for ta, tb in ((a.meet_table, b.meet_table), (a.join_table, b.join_table), (a.arrow_table, b.arrow_table)):
                    z = ta[x][y]
                    if image[z] >= 0 and image[z] != tb[fx][fy]:
                        return False
        return True

    def rec(x: int) -> bool:
        if x == n:
            return True
        for y in range(n):
            if not used[y] and inv_a[x] == inv_b[y]:
                image[x], used[y] = y, True
                if consistent() and rec(x + 1):
                    return True
                image[x], used[y] = -1, False
        return False

    return list(image) if rec(0) else None


def _table_key(alg: FiniteAlgebra) -> bytes:
    arr = alg.arrays
    return b"".join(arr[k].astype(np.int8).tobytes() for k in ("meet", "arrow", "neg"))


def isomorphic_members(algebras: Sequence[FiniteAlgebra], target: FiniteAlgebra) -> list[int]:
    """Indices of ``algebras`` isomorphic to ``target``.

    Small targets are expanded into all ``n!`` relabellings and matched by
    table bytes, which is much cheaper than a canonical form per candidate.
    Larger targets fall back to :func:`is_isomorphic`.
    """
    n = target.size
    if n > 8:
        return [i for i, a in enumerate(algebras) if is_isomorphic(a, target)]
    arr = {k: target.arrays[k].astype(np.int8) for k in ("meet", "arrow", "neg")}
    keys = set()
    for perm in permutations(range(n)):
        p = np.asarray(perm, dtype=np.int8)
        inv = np.argsort(p)
        keys.add(
            p[arr["meet"][inv][:, inv]].tobytes()
            + p[arr["arrow"][inv][:, inv]].tobytes()
            + p[arr["neg"][inv]].tobytes()
        )
    return [i for i, a in enumerate(algebras) if a.size == n and _table_key(a) in keys]


# -- posets and distributive lattices ------------------------------------------


@dataclass(frozen=True)
class Poset:
    """Elements ``0..size-1``; ``below[i]`` is the bitmask of elements strictly below ``i``."""

    below: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.below)

    def order_matrix(self) -> np.ndarray:
        n = self.size
        leq = np.eye(n, dtype=bool)
        for i, mask in enumerate(self.below):
            for j in range(n):
                if mask >> j & 1:
                    leq[j, i] = True
        return leq

    def downsets(self) -> list[int]:
        out = []
        n = self.size
        for mask in range(1 << n):
            if all(not (mask >> i & 1) or (self.below[i] & ~mask) == 0 for i in range(n)):
                out.append(mask)
        return out

    def canonical_form(self) -> tuple:
        n = self.size
        below = self.below

        def sig(x: int, c: list[int]) -> Hashable:
            return tuple(sorted((c[y], bool(below[x] >> y & 1), bool(below[y] >> x & 1)) for y in range(n)))

        def encode(perm: list[int]) -> tuple:
            return (n, tuple(sorted((perm[j], perm[i]) for i in range(n) for j in range(n) if below[i] >> j & 1)))

        if n == 0:
            return (0, ())
        return _canonical_search(n, [0] * n, sig, encode)[0]


def _count_downsets(below: tuple[int, ...], limit: int) -> int:
    # downsets of an order extended one element at a time (below[i] only uses j < i)
    masks = [0]
    for i, low in enumerate(below):
        masks += [m | (1 << i) for m in masks if (low & ~m) == 0]
        if len(masks) > limit:
            return limit + 1
    return len(masks)


def posets_with_few_downsets(max_downsets: int) -> list[Poset]:
    """All posets (up to isomorphism) whose downset lattice has at most ``max_downsets`` elements.

    Posets grow by adding a new maximal element over an existing downset;
    every poset arises this way along a linear extension.
    """
    seen = {Poset(()).canonical_form()}
    found = [Poset(())]
    frontier = [Poset(())]
    while frontier:
        nxt = []
        for p in frontier:
            for d in p.downsets():
                q = Poset(p.below + (d,))
                if _count_downsets(q.below, max_downsets) > max_downsets:
                    continue
                key = q.canonical_form()
                if key not in seen:
                    seen.add(key)
                    nxt.append(q)
                    found.append(q)
        frontier = nxt
    return found


def _element_labels(n: int) -> tuple[str, ...]:
    if n == 1:
        return ("0",)
    letters = "abcdefghijklmnopqrstuvwxyz"
    return ("0",) + tuple(letters[i] for i in range(n - 2)) + ("1",)


def lattice_of_downsets(p: Poset) -> Lattice:
    ds = sorted(p.downsets(), key=lambda m: (bin(m).count("1"), m))
    idx = {m: i for i, m in enumerate(ds)}
    meet = tuple(tuple(idx[a & b] for b in ds) for a in ds)
    join = tuple(tuple(idx[a | b] for b in ds) for a in ds)
    return Lattice(_element_labels(len(ds)), meet, join, 0, len(ds) - 1)


@lru_cache(maxsize=None)
def _lattices(max_size: int) -> tuple[Lattice, ...]:
    if not 1 <= max_size <= MAX_LATTICE_SIZE:
        raise ValueError(f"max_size must be in 1..{MAX_LATTICE_SIZE}")
    posets = posets_with_few_downsets(max_size)
    keyed = []
    for p in posets:
        lat = lattice_of_downsets(p)
        keyed.append(((lat.size, p.canonical_form()), lat))
    keyed.sort(key=lambda kv: kv[0])
    return tuple(lat for _, lat in keyed)


def lattices(max_size: int) -> list[Lattice]:
    """One distributive lattice per isomorphism class, ordered by size."""
    return list(_lattices(max_size))


def distributive_lattices(max_size: int) -> list[CoverRelation]:
    return [lat.covers() for lat in _lattices(max_size)]


def lattice_automorphisms(lat: Lattice) -> list[tuple[int, ...]]:
    n = lat.size
    leq = lat.leq_matrix
    inv = [(int(leq[:, x].sum()), int(leq[x].sum())) for x in range(n)]
    out = []
    image = [-1] * n
    used = [False] * n

    def rec(x: int) -> None:
        if x == n:
            out.append(tuple(image))
            return
        for y in range(n):
            if used[y] or inv[y] != inv[x]:
                continue
            if all(leq[x, z] == leq[y, image[z]] and leq[z, x] == leq[image[z], y] for z in range(x)):
                image[x], used[y] = y, True
                rec(x + 1)
                image[x], used[y] = -1, False

    rec(0)
    return out


# -- operations on a fixed lattice --------------------------------------------


def semiheyting_arrows(lat: Lattice, *, max_nodes: int | None = None) -> np.ndarray:
    """Every arrow table satisfying SH1–SH3 on ``lat``, as a ``(k, n, n)`` array.

    For a join-irreducible ``j``, SH2 with ``x = j`` says ``j ≤ y → z``
    depends only on ``(j ∧ y, j ∧ z)``.  An arrow is therefore the same
    thing as a choice of 0/1 tables ``f_j`` on ``(↓j)²``, one per
    join-irreducible, with ``y → z = ⋁{j : f_j(j ∧ y, j ∧ z)}``.  SH3 forces
    ``f_j(a, a) = 1``, SH1 forces ``f_j(j, b) = [b = j]``, and the join is
    well defined exactly when ``f_j(a, b) = 1`` implies
    ``f_i(i ∧ a, i ∧ b) = 1`` for the join-irreducibles ``i < j``.  The
    remaining entries of each ``f_j`` are independent once the tables below
    ``j`` are fixed, so the search only branches on legal bits.

    A node is one partial choice of tables; more than ``max_nodes`` raises
    :class:`SearchSpaceExceeded`.
    """
    cap = max_nodes_default() if max_nodes is None else max_nodes
    n = lat.size
    M = np.array(lat.meet)
    leq = lat.leq_matrix
    if n == 1:
        return np.zeros((1, 1, 1), dtype=np.int8)
    jis = sorted(lat.join_irreducibles, key=lambda j: (int(leq[:, j].sum()), j))
    k_of = {j: k for k, j in enumerate(jis)}
    # element -> bitmask of the join-irreducibles below it, and back
    elem_mask = [sum(1 << k for k, j in enumerate(jis) if leq[j, e]) for e in range(n)]
    elem_of = np.full(1 << len(jis), -1, dtype=np.int64)
    for e, m in enumerate(elem_mask):
        elem_of[m] = e

    down = [np.flatnonzero(leq[:, j]) for j in jis]
    pair_index = []  # per j: n x n array, (x, y) -> index of (j∧x, j∧y) in (↓j)²
    fixed = []
    free = []
    for k, j in enumerate(jis):
        pos = {int(a): i for i, a in enumerate(down[k])}
        d = len(down[k])
        pair_index.append(np.array([[pos[int(M[j, x])] * d + pos[int(M[j, y])] for y in range(n)] for x in range(n)]))
        vec = np.zeros(d * d, dtype=bool)
        opts = []
        for ia, a in enumerate(down[k]):
            for ib, b in enumerate(down[k]):
                if a == b or (a == j and b == j):
                    vec[ia * d + ib] = True
                elif a != j:
                    opts.append((int(a), int(b), ia * d + ib))
        fixed.append(vec)
        free.append(opts)
    lower = []
    for k, j in enumerate(jis):
        below = [i for i in jis if i != j and leq[i, j]]
        lower.append([k_of[i] for i in below if not any(i != h and leq[i, h] for h in below)])

    out: list[np.ndarray] = []
    nodes = 0
    last = len(jis) - 1

    def legal(k: int, tables: list[np.ndarray]) -> list[int]:
        idx = []
        for a, b, p in free[k]:
            if all(tables[i][pair_index[i][a, b]] for i in lower[k]):
                idx.append(p)
        return idx

    def rec(k: int, tables: list[np.ndarray], mask: np.ndarray) -> None:
        nonlocal nodes
        opts = legal(k, tables)
        count = 1 << len(opts)
        nodes += count
        if nodes > cap:
            raise SearchSpaceExceeded(nodes, cap, f"{n}-element lattice")
        if k == last:
            bits = (np.arange(count)[:, None] >> np.arange(len(opts))[None, :]) & 1
            f = np.broadcast_to(fixed[k], (count, len(fixed[k]))).copy()
            f[:, opts] |= bits.astype(bool)
            chunk = mask[None] | (f[:, pair_index[k]].astype(np.int32) << k)
            out.append(elem_of[chunk].astype(np.int8))
            return
        for sub in range(count):
            f = fixed[k].copy()
            for i, p in enumerate(opts):
                if sub >> i & 1:
                    f[p] = True
            rec(k + 1, tables + [f], mask | (f[pair_index[k]].astype(np.int32) << k))

    rec(0, [], np.zeros((n, n), dtype=np.int32))
    return np.concatenate(out)


def semiheyting_arrows_backtrack(lat: Lattice, *, max_nodes: int | None = None) -> np.ndarray:
    """Cell-by-cell backtracking route to the same set as :func:`semiheyting_arrows`.

    Cells are filled row by row.  SH3 fixes the diagonal and SH1 restricts
    ``x → y`` to ``{z : x ∧ z = x ∧ y}``; each SH2 instance is tested as
    soon as both cells it mentions are filled.  Slower, but it makes no use
    of distributivity, so it serves as an independent cross-check.
    """
    cap = max_nodes_default() if max_nodes is None else max_nodes
    n = lat.size
    M = lat.meet
    cells = [(x, y) for x in range(n) for y in range(n)]
    pos = {c: i for i, c in enumerate(cells)}
    cand = [[lat.top] if x == y else [z for z in range(n) if M[x][z] == M[x][y]] for x, y in cells]
    checks: list[list[tuple[int, int, int]]] = [[] for _ in cells]
    for x, y, z in product(range(n), repeat=3):
        a, b = pos[(y, z)], pos[(M[x][y], M[x][z])]
        if a != b:
            checks[max(a, b)].append((x, a, b))
    table = [0] * (n * n)
    out: list[tuple[int, ...]] = []
    nodes = 0
    last = len(cells)

    def rec(i: int) -> None:
        nonlocal nodes
        if i == last:
            out.append(tuple(table))
            return
        for v in cand[i]:
            nodes += 1
            if nodes > cap:
                raise SearchSpaceExceeded(nodes, cap, f"{n}-element lattice")
            table[i] = v
            for x, a, b in checks[i]:
                if M[x][table[a]] != M[x][table[b]]:
                    break
            else:
                rec(i + 1)

    rec(0)
    return np.array(out, dtype=np.int8).reshape(len(out), n, n)


def dqd_negations(lat: Lattice) -> list[tuple[int, ...]]:
    """Every unary table satisfying the dually quasi-De Morgan axioms on ``lat``."""
    n = lat.size
    M, J = lat.meet, lat.join
    neg = [-1] * n
    out = []

    def ok() -> bool:
        for x in range(n):
            nx = neg[x]
            if nx < 0:
                continue
            if neg[nx] >= 0 and M[neg[nx]][x] != neg[nx]:
                return False
            for y in range(n):
                ny, nm = neg[y], neg[M[x][y]]
                if ny >= 0 and nm >= 0 and nm != J[nx][ny]:
                    return False
                if ny >= 0 and neg[nx] >= 0 and neg[ny] >= 0:
                    nj = neg[J[x][y]]
                    if nj >= 0 and neg[nj] >= 0 and neg[nj] != J[neg[nx]][neg[ny]]:
                        return False
        return True

    def rec(x: int) -> None:
        if x == n:
            out.append(tuple(neg))
            return
        if x == lat.bottom:
            options: Iterable[int] = [lat.top]
        elif x == lat.top:
            options = [lat.bottom]
        else:
            options = range(n)
        for v in options:
            neg[x] = v
            if ok():
                rec(x + 1)
        neg[x] = -1

    if n == 1:
        return [(0,)]
    rec(0)
    return out


def _act_neg(sigma: Sequence[int], neg: Sequence[int]) -> tuple[int, ...]:
    out = [0] * len(neg)
    for x, v in enumerate(neg):
        out[sigma[x]] = sigma[v]
    return tuple(out)


@dataclass(frozen=True)
class Family:
    """A lattice with one negation (up to lattice automorphism).

    It stands for every algebra obtained by adding a semi-Heyting arrow; the
    ``representative`` uses the Heyting arrow.
    """

    lattice: Lattice
    neg: tuple[int, ...]
    stabilizer: tuple[tuple[int, ...], ...] = field(repr=False)

    @property
    def representative(self) -> FiniteAlgebra:
        return FiniteAlgebra.from_lattice(self.lattice, self.lattice.heyting_arrow, self.neg, check=False)

    def with_arrow(self, arrow: np.ndarray) -> FiniteAlgebra:
        lat = self.lattice
        table = tuple(map(tuple, arrow.tolist()))
        return FiniteAlgebra._trusted(lat.labels, lat.meet, lat.join, table, self.neg, lat.bottom, lat.top)


def lattice_families(lat: Lattice) -> list[Family]:
    """Negations on ``lat`` up to automorphism, each with its stabilizer."""
    autos = lattice_automorphisms(lat)
    fams = []
    for neg in dqd_negations(lat):
        images = [_act_neg(s, neg) for s in autos]
        if min(images) != neg:
            continue
        stab = tuple(s for s, img in zip(autos, images) if img == neg)
        fams.append(Family(lat, neg, stab))
    return fams


def families(max_size: int) -> Iterator[Family]:
    """All (lattice, negation) pairs up to isomorphism, lattices of size <= ``max_size``."""
    for lat in lattices(max_size):
        yield from lattice_families(lat)


def canonical_arrow_mask(arrows: np.ndarray, stabilizer: Sequence[Sequence[int]]) -> np.ndarray:
    """Mask of arrows that are lexicographically least in their orbit under ``stabilizer``."""
    k = len(arrows)
    flat = arrows.reshape(k, -1).astype(np.int16)
    keep = np.ones(k, dtype=bool)
    for sigma in stabilizer:
        s = np.asarray(sigma)
        if (s == np.arange(len(s))).all():
            continue
        inv = np.argsort(s)
        # (σ·A)[a][b] = σ(A[σ⁻¹a][σ⁻¹b])
        moved = s[arrows[:, inv][:, :, inv]].reshape(k, -1).astype(np.int16)
        diff = moved - flat
        nz = diff != 0
        first = np.argmax(nz, axis=1)
        has = nz.any(axis=1)
        smaller = has & (diff[np.arange(k), first] < 0)
        keep &= ~smaller
    return keep


# -- search ---------------------------------------------------------------------


@dataclass(frozen=True)
class SearchSpec:
    satisfy: tuple[Identity, ...] = ()
    falsify: tuple[Identity, ...] = ()
    max_lattice_size: int = 8
    max_results: int | None = None
    max_nodes: int | None = None

    def __post_init__(self) -> None:
        sat = {i.name for i in self.satisfy}
        fal = {i.name for i in self.falsify}
        if sat & fal:
            raise ValueError(f"identities both required and forbidden: {', '.join(sorted(sat & fal))}")

    @classmethod
    def build(
        cls,
        satisfy: Iterable[Identity | str] = (),
        falsify: Iterable[Identity | str] = (),
        **kw,
    ) -> "SearchSpec":
        return cls(tuple(get_identity(i) for i in satisfy), tuple(get_identity(i) for i in falsify), **kw)


def _family_passes(alg: FiniteAlgebra, satisfy: Iterable[Identity], falsify: Iterable[Identity]) -> bool:
    return all(holds(alg, i) for i in satisfy) and not any(holds(alg, i) for i in falsify)


def _search_lattice(lat: Lattice, spec: SearchSpec) -> list[FiniteAlgebra]:
    free_sat = [i for i in spec.satisfy if i.star_only]
    free_fal = [i for i in spec.falsify if i.star_only]
    dep_sat = [i for i in spec.satisfy if not i.star_only]
    dep_fal = [i for i in spec.falsify if not i.star_only]
    fams = [f for f in lattice_families(lat) if _family_passes(f.representative, free_sat, free_fal)]
    if not fams:
        return []
    arrows = semiheyting_arrows(lat, max_nodes=spec.max_nodes)
    out: list[FiniteAlgebra] = []
    for fam in fams:
        keep = canonical_arrow_mask(arrows, fam.stabilizer)
        for arrow in arrows[keep]:
            alg = fam.with_arrow(arrow)
            if dep_sat or dep_fal:
                if not _family_passes(alg, dep_sat, dep_fal):
                    continue
            out.append(alg)
            if spec.max_results is not None and len(out) >= spec.max_results:
                return out
    return out


def search(spec: SearchSpec, *, threads: int = 1) -> list[FiniteAlgebra]:
    """Algebras passing every ``satisfy`` identity and failing every ``falsify`` one.

    One representative per isomorphism class, ordered by lattice (size
    first) and then by negation and arrow enumeration order.  The node cap
    applies per lattice, so the outcome does not depend on ``threads``.
    """
    lats = lattices(spec.max_lattice_size)
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            chunks = list(pool.map(_search_lattice, lats, [spec] * len(lats)))
    else:
        chunks = []
        for lat in lats:
            chunks.append(_search_lattice(lat, spec))
            if spec.max_results is not None and sum(map(len, chunks)) >= spec.max_results:
                break
    out = [alg for chunk in chunks for alg in chunk]
    return out if spec.max_results is None else out[: spec.max_results]


def search_families(
    satisfy: Iterable[Identity | str] = (),
    falsify: Iterable[Identity | str] = (),
    max_size: int = 8,
) -> list[Family]:
    """Family-level search; only identities that use ``→`` through ``*`` are allowed."""
    sat = [get_identity(i) for i in satisfy]
    fal = [get_identity(i) for i in falsify]
    for ident in sat + fal:
        if not ident.star_only:
            raise ValueError(f"{ident.name} uses a general arrow; use search() instead")
    return [f for f in families(max_size) if _family_passes(f.representative, sat, fal)]
