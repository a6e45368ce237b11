"""Named identities and exhaustive checking against a finite algebra."""

from __future__ import annotations

import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .algebra import FiniteAlgebra
from .terms import (
    Identity,
    evaluate,
    evaluate_all,
    level_identity,
    level_identity_alt,
    parse_identity,
)

# name, text, group
_ENTRIES: list[tuple[str, str, str]] = [
    ("SH1", "x /\\ (x -> y) = x /\\ y", "semi-Heyting"),
    ("SH2", "x /\\ (y -> z) = x /\\ ((x /\\ y) -> (x /\\ z))", "semi-Heyting"),
    ("SH3", "x -> x = 1", "semi-Heyting"),
    ("H", "(x /\\ y) -> y = 1", "semi-Heyting"),
    ("St", "x* \\/ x** = 1", "semi-Heyting"),
    ("DQDa0", "0' = 1", "dqd"),
    ("DQDa1", "1' = 0", "dqd"),
    ("DQDb", "(x /\\ y)' = x' \\/ y'", "dqd"),
    ("DQDc", "(x \\/ y)'' = x'' \\/ y''", "dqd"),
    ("DQDd", "x'' <= x", "dqd"),
    ("DM", "x'' = x", "negation"),
    ("JDM", "(x \\/ y)' = x' /\\ y'", "negation"),
    ("BDM", "(x \\/ x*)' = x' /\\ x*'", "negation"),
    # same law with the trailing ' dropped, as it is sometimes printed
    ("BDM-variant", "(x \\/ x*)' = x' /\\ x*", "negation"),
    ("R", "x /\\ x+ <= y \\/ y*", "negation"),
    ("Lee", "(x /\\ y)* \\/ (x* /\\ y)* \\/ (x /\\ y*)* = 1", "semi-Heyting"),
    # consequences of the DQD axioms
    ("top-prime-star", "1'* = 1", "dqd-consequences"),
    ("top-arrow", "1 -> x = x", "dqd-consequences"),
    ("neg-antitone", "(x \\/ y)' <= x'", "dqd-consequences"),
    ("prime-star-meet", "(x /\\ y)'* = x'* /\\ y'*", "dqd-consequences"),
    ("triple-neg", "x''' = x'", "dqd-consequences"),
    ("plus-cover", "x \\/ x+ = 1", "dqd-consequences"),
    # consequences of DM plus level 1
    ("dm1-disjoint", "x*' /\\ x' /\\ x* = 0", "dm1-consequences"),
    # consequences of JDM plus Stone
    ("ms-prime-cover", "x' \\/ x*'** = 1", "dmsst-consequences"),
    ("ms-star-prime-below", "x*'* <= x'", "dmsst-consequences"),
    ("ms-star-prime-bound", "x*' <= x**'*", "dmsst-consequences"),
    ("ms-double-star-prime", "x**' = x*'*", "dmsst-consequences"),
    ("ms-star-fixed", "x*'' = x*", "dmsst-consequences"),
    ("ms-star-below-plus", "x*'' <= x'*'", "dmsst-consequences"),
    ("ms-star-plus", "x*+ = x**", "dmsst-consequences"),
]

CATALOG: dict[str, Identity] = {name: parse_identity(text, name) for name, text, _ in _ENTRIES}
GROUPS: dict[str, list[str]] = {}
for _name, _text, _group in _ENTRIES:
    GROUPS.setdefault(_group, []).append(_name)

SEMI_HEYTING = ["SH1", "SH2", "SH3"]
DQD_AXIOMS = GROUPS["dqd"]

_LEVEL_NAME = re.compile(r"^L(alt)?(\d+)$")


def get_identity(ref: str | Identity) -> Identity:
    """Look up a catalog name (``L<n>``/``Lalt<n>`` included) or parse inline text."""
    if isinstance(ref, Identity):
        return ref
    ref = ref.strip()
    if ref in CATALOG:
        return CATALOG[ref]
    m = _LEVEL_NAME.match(ref)
    if m:
        n = int(m.group(2))
        return level_identity_alt(n) if m.group(1) else level_identity(n)
    if "=" in ref or "≈" in ref or "≤" in ref:
        return parse_identity(ref)
    raise KeyError(f"unknown identity {ref!r} (not a catalog name and not 'lhs = rhs' text)")


@dataclass(frozen=True)
class CheckOutcome:
    name: str
    passed: bool
    assignment: dict[str, str] = field(default_factory=dict)
    lhs_value: str | None = None
    rhs_value: str | None = None
    inspected: int = 0

    @property
    def verdict(self) -> str:
        return "Pass" if self.passed else "Fail"

    def to_dict(self) -> dict:
        out: dict = {"identity": self.name, "verdict": self.verdict}
        if not self.passed:
            out["assignment"] = dict(self.assignment)
            out["lhs"] = self.lhs_value
            out["rhs"] = self.rhs_value
        return out

    def __str__(self) -> str:
        if self.passed:
            return f"{self.name}: Pass"
        where = ", ".join(f"{k}={v}" for k, v in self.assignment.items())
        return f"{self.name}: Fail at {where or '(no variables)'} (lhs = {self.lhs_value}, rhs = {self.rhs_value})"


def _failure_mask(alg: FiniteAlgebra, ident: Identity, names: list[str]) -> np.ndarray:
    lhs, rhs = ident.as_equation()
    return evaluate_all(lhs, alg, names) != evaluate_all(rhs, alg, names)


def check(alg: FiniteAlgebra, ident: Identity | str, *, threads: int = 1) -> CheckOutcome:
    """Test ``ident`` under all ``|A|^k`` assignments.

    On failure the lexicographically first counterexample (variables in
    sorted order, elements in index order) is reported together with the
    values of the identity's original two sides.
    """
    ident = get_identity(ident)
    names = ident.variables
    n = alg.size
    total = n ** len(names)
    if threads > 1 and names and n > 1:
        first = _first_failure_parallel(alg, ident, names, threads)
    else:
        bad = np.flatnonzero(_failure_mask(alg, ident, names))
        first = int(bad[0]) if len(bad) else None
    if first is None:
        return CheckOutcome(ident.name, True, inspected=total)
    vals = np.unravel_index(first, (n,) * len(names)) if names else ()
    asg = {name: int(v) for name, v in zip(names, vals)}
    lhs = evaluate(ident.lhs, alg, asg)
    rhs = evaluate(ident.rhs, alg, asg)
    return CheckOutcome(
        ident.name,
        False,
        {k: alg.labels[v] for k, v in asg.items()},
        alg.labels[lhs],
        alg.labels[rhs],
        inspected=total,
    )


def _first_failure_parallel(alg: FiniteAlgebra, ident: Identity, names: list[str], threads: int) -> int | None:
    # partition on the first variable; the global minimum keeps the answer independent of `threads`
    n = alg.size
    block = n ** (len(names) - 1)
    lhs, rhs = ident.as_equation()
    rest = names[1:]

    def scan(v: int) -> int | None:
        fixed = {names[0]: v}
        left = evaluate_all(lhs, alg, rest, fixed)
        right = evaluate_all(rhs, alg, rest, fixed)
        bad = np.flatnonzero(left != right)
        return v * block + int(bad[0]) if len(bad) else None

    with ThreadPoolExecutor(max_workers=threads) as pool:
        hits = [h for h in pool.map(scan, range(n)) if h is not None]
    return min(hits) if hits else None


def holds(alg: FiniteAlgebra, ident: Identity | str) -> bool:
    """Fast membership test without building a counterexample report."""
    ident = get_identity(ident)
    return not _failure_mask(alg, ident, ident.variables).any()


def check_all(alg: FiniteAlgebra, idents: Iterable[Identity | str], *, threads: int = 1) -> dict[str, CheckOutcome]:
    out: dict[str, CheckOutcome] = {}
    for ident in idents:
        res = check(alg, ident, threads=threads)
        out[res.name] = res
    return out
