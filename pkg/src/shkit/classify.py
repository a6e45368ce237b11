"""Variety memberships and the level of a finite algebra."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .algebra import FiniteAlgebra
from .catalog import holds
from .terms import Identity, level_identity, level_identity_alt

DEFAULT_MAX_LEVEL = 6

# composite varieties as conjunctions of catalog identities
VARIETIES: dict[str, list[str]] = {
    "SH": ["SH1", "SH2", "SH3"],
    "H": ["H"],
    "St": ["St"],
    "DQD": ["DQDa0", "DQDa1", "DQDb", "DQDc", "DQDd"],
    "DM": ["DM"],
    "Dms": ["JDM"],
    "BDQD": ["BDM"],
    "BDQD-variant": ["BDM-variant"],
    "Regular": ["R"],
    "Lee": ["Lee"],
    "DmsSt": ["JDM", "St"],
    "DMSt": ["DM", "St"],
    "BDQDSt": ["BDM", "St"],
    "DmsL": ["JDM", "Lee"],
}


@dataclass(frozen=True)
class Level:
    """``value`` is the exact level, or ``None`` when no ``n <= bound`` works."""

    value: int | None
    bound: int

    @property
    def exact(self) -> bool:
        return self.value is not None

    def to_json(self) -> int | str:
        return self.value if self.value is not None else f"exceeds {self.bound}"

    def __str__(self) -> str:
        return str(self.to_json())


def Exactly(n: int, bound: int = DEFAULT_MAX_LEVEL) -> Level:
    return Level(n, bound)


def ExceedsBound(bound: int) -> Level:
    return Level(None, bound)


def _search(alg: FiniteAlgebra, max_n: int, test: Callable[[int], bool]) -> Level:
    for n in range(max_n + 1):
        if test(n):
            return Level(n, max_n)
    return Level(None, max_n)


def level(alg: FiniteAlgebra, max_n: int = DEFAULT_MAX_LEVEL, *, check: Callable[[FiniteAlgebra, Identity], bool] = holds) -> Level:
    """Smallest ``n <= max_n`` with ``t_n(x) ≈ t_{n+1}(x)``."""
    return _search(alg, max_n, lambda n: check(alg, level_identity(n)))


def level_alt(alg: FiniteAlgebra, max_n: int = DEFAULT_MAX_LEVEL, *, check: Callable[[FiniteAlgebra, Identity], bool] = holds) -> Level:
    """Level via the ``(x ∧ x'*)`` iterates: ``Lalt(n-1)`` certifies level ``n``.

    Level 0 has no such form and is still decided by ``L0``.  The answer is
    only meaningful where the alternate form is licensed (De Morgan
    algebras, or Stone ones); :func:`classify` reports it only there.
    """

    def test(n: int) -> bool:
        if n == 0:
            return check(alg, level_identity(0))
        return check(alg, level_identity_alt(n - 1))

    return _search(alg, max_n, test)


@dataclass(frozen=True)
class ClassificationReport:
    memberships: dict[str, bool]
    level: Level
    level_alt: Level | None

    def to_dict(self) -> dict:
        return {
            "memberships": {k: self.memberships[k] for k in VARIETIES},
            "level": self.level.to_json(),
            "level_alt": None if self.level_alt is None else self.level_alt.to_json(),
        }


def classify(alg: FiniteAlgebra, max_n: int = DEFAULT_MAX_LEVEL) -> ClassificationReport:
    verdicts: dict[str, bool] = {}
    memberships = {}
    for variety, names in VARIETIES.items():
        for name in names:
            if name not in verdicts:
                verdicts[name] = holds(alg, name)
        memberships[variety] = all(verdicts[name] for name in names)
    lev = level(alg, max_n)
    alt = level_alt(alg, max_n) if memberships["DM"] or memberships["St"] else None
    return ClassificationReport(memberships, lev, alt)
