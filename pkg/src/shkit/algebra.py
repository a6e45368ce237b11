"""Finite bounded lattices carrying a semi-Heyting arrow and a unary negation.

Elements are dense indices ``0..n-1``; labels are for display only.  Tables
are stored as nested tuples so algebras stay immutable and hashable, and a
numpy view of each table is built lazily for vectorized sweeps.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from pathlib import Path
from typing import Any, Iterable, Mapping, Sequence

import numpy as np

MAX_SIZE = 64

Table = tuple[tuple[int, ...], ...]


class AlgebraError(ValueError):
    """Base class for rejected algebra inputs."""


class AlgebraFormatError(AlgebraError):
    """Malformed algebra file or table shape."""


class NotALattice(AlgebraError):
    def __init__(self, pair: tuple[str, str], missing: str):
        self.pair = pair
        self.missing = missing
        super().__init__(f"elements {pair[0]!r} and {pair[1]!r} have no unique {missing}")


class NotDistributive(AlgebraError):
    def __init__(self, triple: tuple[str, str, str]):
        self.triple = triple
        x, y, z = triple
        super().__init__(f"distributivity fails at x={x}, y={y}, z={z}")


class AxiomViolation(AlgebraError):
    def __init__(self, axiom: str, law: str, witness: Mapping[str, str]):
        self.axiom = axiom
        self.law = law
        self.witness = dict(witness)
        where = ", ".join(f"{k}={v}" for k, v in self.witness.items())
        super().__init__(f"{axiom} ({law}) fails" + (f" at {where}" if where else ""))


def _freeze(rows: Iterable[Iterable[int]]) -> Table:
    return tuple(tuple(int(v) for v in row) for row in rows)


@dataclass(frozen=True)
class CoverRelation:
    """Hasse diagram: ``(lower, upper)`` pairs where ``upper`` covers ``lower``."""

    labels: tuple[str, ...]
    covers: tuple[tuple[str, str], ...]

    def __post_init__(self) -> None:
        if len(set(self.labels)) != len(self.labels) or not self.labels:
            raise AlgebraFormatError("labels must be nonempty and distinct")
        known = set(self.labels)
        for lo, hi in self.covers:
            if lo not in known or hi not in known:
                raise AlgebraFormatError(f"cover ({lo}, {hi}) names an unknown element")
            if lo == hi:
                raise AlgebraFormatError(f"cover ({lo}, {hi}) is reflexive")

    @property
    def universe_size(self) -> int:
        return len(self.labels)

    def order_matrix(self) -> np.ndarray:
        """Reflexive-transitive closure as a boolean matrix ``leq[x, y]``."""
        n = len(self.labels)
        idx = {lab: i for i, lab in enumerate(self.labels)}
        leq = np.eye(n, dtype=bool)
        for lo, hi in self.covers:
            leq[idx[lo], idx[hi]] = True
        # Warshall closure
        for k in range(n):
            leq |= leq[:, [k]] & leq[[k], :]
        strict = leq & ~np.eye(n, dtype=bool)
        if (strict & strict.T).any():
            i, j = map(int, np.argwhere(strict & strict.T)[0])
            raise AlgebraFormatError(f"covers contain a cycle through {self.labels[i]} and {self.labels[j]}")
        for lo, hi in self.covers:
            a, b = idx[lo], idx[hi]
            between = strict[a] & strict[:, b]
            if between.any():
                mid = self.labels[int(np.argmax(between))]
                raise AlgebraFormatError(f"({lo}, {hi}) is not a cover: {mid} lies strictly between")
        return leq

    @classmethod
    def from_order(cls, labels: Sequence[str], leq: np.ndarray) -> "CoverRelation":
        n = len(labels)
        strict = np.asarray(leq, dtype=bool) & ~np.eye(n, dtype=bool)
        covers = []
        for a in range(n):
            for b in range(n):
                if strict[a, b] and not (strict[a] & strict[:, b]).any():
                    covers.append((labels[a], labels[b]))
        return cls(tuple(labels), tuple(covers))


@dataclass(frozen=True)
class Lattice:
    """A finite bounded distributive lattice given by its meet/join tables."""

    labels: tuple[str, ...]
    meet: Table
    join: Table
    bottom: int
    top: int

    @property
    def size(self) -> int:
        return len(self.labels)

    @cached_property
    def leq_matrix(self) -> np.ndarray:
        m = np.array(self.meet)
        return m == np.arange(self.size)[:, None]

    def leq(self, x: int, y: int) -> bool:
        return self.meet[x][y] == x

    @cached_property
    def pseudocomplement(self) -> tuple[int, ...]:
        """``x*``: the greatest ``z`` with ``x ∧ z = 0``."""
        out = []
        for x in range(self.size):
            zs = [z for z in range(self.size) if self.meet[x][z] == self.bottom]
            best = self.bottom
            for z in zs:
                best = self.join[best][z]
            out.append(best)
        return tuple(out)

    @cached_property
    def heyting_arrow(self) -> Table:
        """Relative pseudocomplement: ``x → y`` is the greatest ``z`` with ``x ∧ z ≤ y``."""
        n = self.size
        rows = []
        for x in range(n):
            row = []
            for y in range(n):
                best = self.bottom
                for z in range(n):
                    if self.meet[self.meet[x][z]][y] == self.meet[x][z]:
                        best = self.join[best][z]
                row.append(best)
            rows.append(tuple(row))
        return tuple(rows)

    @cached_property
    def join_irreducibles(self) -> tuple[int, ...]:
        n = self.size
        leq = self.leq_matrix
        out = []
        for x in range(n):
            if x == self.bottom:
                continue
            lower = [y for y in range(n) if y != x and leq[y, x]]
            # x is join-irreducible iff it has exactly one lower cover
            covers = [y for y in lower if not any(leq[y, z] and z != y for z in lower)]
            if len(covers) == 1:
                out.append(x)
        return tuple(out)

    def covers(self) -> CoverRelation:
        return CoverRelation.from_order(self.labels, self.leq_matrix)

    @classmethod
    def from_covers(cls, covers: CoverRelation) -> "Lattice":
        leq = covers.order_matrix()
        labels = covers.labels
        n = len(labels)
        mins = [x for x in range(n) if leq[x].all()]
        maxs = [x for x in range(n) if leq[:, x].all()]
        if len(mins) != 1 or len(maxs) != 1:
            raise NotALattice((labels[0], labels[-1]), "bound")
        meet = [[0] * n for _ in range(n)]
        join = [[0] * n for _ in range(n)]
        for x, y in product(range(n), repeat=2):
            lower = np.flatnonzero(leq[:, x] & leq[:, y])
            glb = [z for z in lower if leq[lower, z].all()]
            if len(glb) != 1:
                raise NotALattice((labels[x], labels[y]), "greatest lower bound")
            upper = np.flatnonzero(leq[x] & leq[y])
            lub = [z for z in upper if leq[z, upper].all()]
            if len(lub) != 1:
                raise NotALattice((labels[x], labels[y]), "least upper bound")
            meet[x][y] = int(glb[0])
            join[x][y] = int(lub[0])
        lat = cls(tuple(labels), _freeze(meet), _freeze(join), mins[0], maxs[0])
        bad = _first_distributivity_failure(np.array(lat.meet), np.array(lat.join))
        if bad is not None:
            raise NotDistributive(tuple(labels[i] for i in bad))
        return lat


def _first_distributivity_failure(meet: np.ndarray, join: np.ndarray) -> tuple[int, int, int] | None:
    n = len(meet)
    x, y, z = np.indices((n, n, n))
    lhs = meet[x, join[y, z]]
    rhs = join[meet[x, y], meet[x, z]]
    bad = np.argwhere(lhs != rhs)
    return tuple(int(v) for v in bad[0]) if len(bad) else None


@dataclass(frozen=True)
class AxiomFailure:
    axiom: str
    law: str
    witness: dict[str, str] = field(hash=False, compare=True)

    def __str__(self) -> str:
        where = ", ".join(f"{k}={v}" for k, v in self.witness.items())
        return f"{self.axiom}: {self.law}" + (f" fails at {where}" if where else " fails")


@dataclass(frozen=True)
class ValidationReport:
    failures: tuple[AxiomFailure, ...]

    @property
    def ok(self) -> bool:
        return not self.failures

    def __bool__(self) -> bool:
        return self.ok

    def axioms(self) -> list[str]:
        return [f.axiom for f in self.failures]


@dataclass(frozen=True)
class FiniteAlgebra:
    """``⟨L, ∨, ∧, →, ', 0, 1⟩`` over a finite universe.

    The constructor only checks shapes and that every entry is an element;
    use :func:`validate` (or the ``from_*`` constructors, which call it) for
    the algebraic axioms.
    """

    labels: tuple[str, ...]
    meet_table: Table
    join_table: Table
    arrow_table: Table
    neg_table: tuple[int, ...]
    bottom: int
    top: int

    def __post_init__(self) -> None:
        n = len(self.labels)
        if not 1 <= n <= MAX_SIZE:
            raise AlgebraFormatError(f"universe size {n} outside 1..{MAX_SIZE}")
        if len(set(self.labels)) != n:
            raise AlgebraFormatError("labels must be distinct")
        for name in ("meet_table", "join_table", "arrow_table"):
            tab = getattr(self, name)
            if len(tab) != n or any(len(row) != n for row in tab):
                raise AlgebraFormatError(f"{name} must be {n}x{n}")
            if any(not 0 <= v < n for row in tab for v in row):
                raise AlgebraFormatError(f"{name} has an entry outside the universe")
        if len(self.neg_table) != n or any(not 0 <= v < n for v in self.neg_table):
            raise AlgebraFormatError(f"neg_table must list {n} elements")
        if not (0 <= self.bottom < n and 0 <= self.top < n):
            raise AlgebraFormatError("bottom/top outside the universe")

    # -- basic access -------------------------------------------------------

    @property
    def universe_size(self) -> int:
        return len(self.labels)

    size = universe_size

    def element(self, ref: int | str) -> int:
        """Resolve a label (or index) to an element index."""
        if isinstance(ref, str):
            try:
                return self._label_index[ref]
            except KeyError:
                raise KeyError(f"no element labelled {ref!r}") from None
        if not 0 <= ref < self.size:
            raise KeyError(f"element index {ref} out of range")
        return int(ref)

    def label(self, x: int) -> str:
        return self.labels[x]

    @cached_property
    def _label_index(self) -> dict[str, int]:
        return {lab: i for i, lab in enumerate(self.labels)}

    @cached_property
    def arrays(self) -> dict[str, np.ndarray]:
        return {
            "meet": np.array(self.meet_table, dtype=np.intp),
            "join": np.array(self.join_table, dtype=np.intp),
            "arrow": np.array(self.arrow_table, dtype=np.intp),
            "neg": np.array(self.neg_table, dtype=np.intp),
        }

    @cached_property
    def leq_matrix(self) -> np.ndarray:
        return self.arrays["meet"] == np.arange(self.size)[:, None]

    @property
    def lattice(self) -> Lattice:
        return Lattice(self.labels, self.meet_table, self.join_table, self.bottom, self.top)

    # -- element arithmetic -------------------------------------------------

    def meet(self, x: int, y: int) -> int:
        return self.meet_table[x][y]

    def join(self, x: int, y: int) -> int:
        return self.join_table[x][y]

    def arrow(self, x: int, y: int) -> int:
        return self.arrow_table[x][y]

    def neg(self, x: int) -> int:
        return self.neg_table[x]

    def leq(self, x: int, y: int) -> bool:
        return self.meet_table[x][y] == x

    def star(self, x: int) -> int:
        return self.arrow_table[x][self.bottom]

    def plus(self, x: int) -> int:
        return self.neg(self.star(self.neg(x)))

    # -- construction -------------------------------------------------------

    @classmethod
    def _trusted(cls, labels, meet, join, arrow, neg, bottom, top) -> "FiniteAlgebra":
        # skips the shape checks; only for tables produced by the enumerator
        obj = object.__new__(cls)
        for name, value in zip(
            ("labels", "meet_table", "join_table", "arrow_table", "neg_table", "bottom", "top"),
            (labels, meet, join, arrow, neg, bottom, top),
        ):
            object.__setattr__(obj, name, value)
        return obj

    @classmethod
    def from_lattice(
        cls,
        lattice: Lattice,
        arrow: Sequence[Sequence[int | str]],
        neg: Sequence[int | str],
        *,
        check: bool = True,
    ) -> "FiniteAlgebra":
        idx = {lab: i for i, lab in enumerate(lattice.labels)}

        def resolve(v: int | str) -> int:
            if isinstance(v, str):
                if v not in idx:
                    raise AlgebraFormatError(f"unknown element label {v!r}")
                return idx[v]
            return int(v)

        alg = cls(
            lattice.labels,
            lattice.meet,
            lattice.join,
            tuple(tuple(resolve(v) for v in row) for row in arrow),
            tuple(resolve(v) for v in neg),
            lattice.bottom,
            lattice.top,
        )
        if check:
            alg.require_valid()
        return alg

    @classmethod
    def from_covers(
        cls,
        covers: CoverRelation,
        arrow: Sequence[Sequence[int | str]],
        neg: Sequence[int | str],
    ) -> "FiniteAlgebra":
        return cls.from_lattice(Lattice.from_covers(covers), arrow, neg)

    def require_valid(self) -> "FiniteAlgebra":
        report = validate(self)
        if not report.ok:
            first = report.failures[0]
            if first.axiom == "distributive":
                w = first.witness
                raise NotDistributive((w["x"], w["y"], w["z"]))
            raise AxiomViolation(first.axiom, first.law, first.witness)
        return self

    def relabel(self, perm: Sequence[int], labels: Sequence[str] | None = None) -> "FiniteAlgebra":
        """Return the isomorphic copy where old element ``x`` becomes ``perm[x]``."""
        n = self.size
        inv = [0] * n
        for old, new in enumerate(perm):
            inv[new] = old

        def tab(t: Table) -> Table:
            return tuple(tuple(perm[t[inv[a]][inv[b]]] for b in range(n)) for a in range(n))

        new_labels = tuple(labels) if labels is not None else tuple(self.labels[inv[a]] for a in range(n))
        return FiniteAlgebra(
            new_labels,
            tab(self.meet_table),
            tab(self.join_table),
            tab(self.arrow_table),
            tuple(perm[self.neg_table[inv[a]]] for a in range(n)),
            perm[self.bottom],
            perm[self.top],
        )

    # -- serialization ------------------------------------------------------

    def to_dict(self, *, covers: bool = True) -> dict[str, Any]:
        lab = self.labels
        out: dict[str, Any] = {"labels": list(lab)}
        if covers:
            out["covers"] = [list(p) for p in self.lattice.covers().covers]
        else:
            out["meet"] = [[lab[v] for v in row] for row in self.meet_table]
            out["join"] = [[lab[v] for v in row] for row in self.join_table]
        out["arrow"] = [[lab[v] for v in row] for row in self.arrow_table]
        out["neg"] = [lab[v] for v in self.neg_table]
        out["bottom"] = lab[self.bottom]
        out["top"] = lab[self.top]
        return out

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "FiniteAlgebra":
        return algebra_from_dict(data)


_ALLOWED_KEYS = {"labels", "covers", "meet", "join", "arrow", "neg", "bottom", "top"}


def algebra_from_dict(data: Mapping[str, Any]) -> FiniteAlgebra:
    """Strict parse of the JSON algebra schema; the result is validated."""
    if not isinstance(data, Mapping):
        raise AlgebraFormatError("algebra must be a JSON object")
    unknown = set(data) - _ALLOWED_KEYS
    if unknown:
        raise AlgebraFormatError(f"unknown keys: {', '.join(sorted(unknown))}")
    for key in ("labels", "arrow", "neg"):
        if key not in data:
            raise AlgebraFormatError(f"missing key {key!r}")
    labels = [str(v) for v in data["labels"]]
    has_covers = "covers" in data
    has_tables = "meet" in data or "join" in data
    if has_covers == has_tables:
        raise AlgebraFormatError("give exactly one of 'covers' or 'meet'/'join'")
    if has_covers:
        pairs = data["covers"]
        if any(not isinstance(p, (list, tuple)) or len(p) != 2 for p in pairs):
            raise AlgebraFormatError("covers must be [lower, upper] pairs")
        lattice = Lattice.from_covers(CoverRelation(tuple(labels), tuple((str(a), str(b)) for a, b in pairs)))
    else:
        if "meet" not in data or "join" not in data:
            raise AlgebraFormatError("both 'meet' and 'join' tables are required")
        idx = {lab: i for i, lab in enumerate(labels)}
        try:
            meet = _freeze([[idx[str(v)] for v in row] for row in data["meet"]])
            join = _freeze([[idx[str(v)] for v in row] for row in data["join"]])
        except KeyError as exc:
            raise AlgebraFormatError(f"unknown element label {exc.args[0]!r}") from None
        n = len(labels)
        bottoms = [x for x in range(n) if len(meet) == n and all(len(r) == n for r in meet) and all(meet[x][y] == x for y in range(n))]
        tops = [x for x in range(n) if len(join) == n and all(len(r) == n for r in join) and all(join[x][y] == x for y in range(n))]
        if len(bottoms) != 1 or len(tops) != 1:
            raise AlgebraFormatError("meet/join tables do not determine unique bounds")
        lattice = Lattice(tuple(labels), meet, join, bottoms[0], tops[0])
    for key, expect in (("bottom", lattice.bottom), ("top", lattice.top)):
        if key in data and str(data[key]) != lattice.labels[expect]:
            raise AlgebraFormatError(f"{key} {data[key]!r} is not the lattice {key} {lattice.labels[expect]!r}")
    arrow = [[str(v) for v in row] for row in data["arrow"]]
    neg = [str(v) for v in data["neg"]]
    n = len(labels)
    if len(arrow) != n or any(len(r) != n for r in arrow) or len(neg) != n:
        raise AlgebraFormatError(f"arrow must be {n}x{n} and neg of length {n}")
    return FiniteAlgebra.from_lattice(lattice, arrow, neg)


def load_algebra(path: str | Path) -> FiniteAlgebra:
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise AlgebraFormatError(f"{path}: {exc}") from None
    return algebra_from_dict(data)


def dump_algebra(alg: FiniteAlgebra, path: str | Path) -> None:
    Path(path).write_text(json.dumps(alg.to_dict(), indent=2) + "\n", encoding="utf-8")


# -- validation -------------------------------------------------------------


def _witness(alg: FiniteAlgebra, names: str, mask: np.ndarray) -> dict[str, str] | None:
    hits = np.argwhere(mask)
    if not len(hits):
        return None
    return {v: alg.labels[int(i)] for v, i in zip(names, hits[0])}


def validate(alg: FiniteAlgebra) -> ValidationReport:
    """Sweep every structural axiom; each failure carries its first witness.

    Witnesses are the lexicographically first assignment in element-index
    order, so reports are reproducible.
    """
    n = alg.size
    t = alg.arrays
    M, J, A, N = t["meet"], t["join"], t["arrow"], t["neg"]
    b, o = alg.bottom, alg.top
    x1 = np.arange(n)
    x2, y2 = np.indices((n, n))
    x3, y3, z3 = np.indices((n, n, n))
    checks: list[tuple[str, str, str, np.ndarray]] = [
        ("meet-commutative", "x ∧ y = y ∧ x", "xy", M != M.T),
        ("join-commutative", "x ∨ y = y ∨ x", "xy", J != J.T),
        ("meet-idempotent", "x ∧ x = x", "x", M[x1, x1] != x1),
        ("join-idempotent", "x ∨ x = x", "x", J[x1, x1] != x1),
        ("meet-associative", "(x ∧ y) ∧ z = x ∧ (y ∧ z)", "xyz", M[M[x3, y3], z3] != M[x3, M[y3, z3]]),
        ("join-associative", "(x ∨ y) ∨ z = x ∨ (y ∨ z)", "xyz", J[J[x3, y3], z3] != J[x3, J[y3, z3]]),
        ("absorption", "x ∧ (x ∨ y) = x", "xy", M[x2, J[x2, y2]] != x2),
        ("absorption", "x ∨ (x ∧ y) = x", "xy", J[x2, M[x2, y2]] != x2),
        ("bottom", "0 ∧ x = 0", "x", M[b, x1] != b),
        ("top", "1 ∨ x = 1", "x", J[o, x1] != o),
        ("distributive", "x ∧ (y ∨ z) = (x ∧ y) ∨ (x ∧ z)", "xyz", M[x3, J[y3, z3]] != J[M[x3, y3], M[x3, z3]]),
        ("SH1", "x ∧ (x → y) = x ∧ y", "xy", M[x2, A[x2, y2]] != M[x2, y2]),
        ("SH2", "x ∧ (y → z) = x ∧ ((x ∧ y) → (x ∧ z))", "xyz", M[x3, A[y3, z3]] != M[x3, A[M[x3, y3], M[x3, z3]]]),
        ("SH3", "x → x = 1", "x", A[x1, x1] != o),
        ("DQDa", "0' = 1", "", np.array(N[b] != o)),
        ("DQDa", "1' = 0", "", np.array(N[o] != b)),
        ("DQDb", "(x ∧ y)' = x' ∨ y'", "xy", N[M[x2, y2]] != J[N[x2], N[y2]]),
        ("DQDc", "(x ∨ y)'' = x'' ∨ y''", "xy", N[N[J[x2, y2]]] != J[N[N[x2]], N[N[y2]]]),
        ("DQDd", "x'' ≤ x", "x", M[N[N[x1]], x1] != N[N[x1]]),
    ]
    failures = []
    for axiom, law, names, mask in checks:
        if mask.ndim == 0:
            if bool(mask):
                failures.append(AxiomFailure(axiom, law, {}))
            continue
        w = _witness(alg, names, mask)
        if w is not None:
            failures.append(AxiomFailure(axiom, law, w))
    return ValidationReport(tuple(failures))
