"""The worked-example algebras and the claim-by-claim verification run."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from .algebra import CoverRelation, FiniteAlgebra, Lattice, validate
from .catalog import GROUPS, check, get_identity, holds
from .classify import DEFAULT_MAX_LEVEL, level, level_alt
from .enumerator import Family, SearchSpec, families, isomorphic_members, lattices, search, semiheyting_arrows
from .paper_data import ALGEBRAS

BUILTIN_NAMES = tuple(ALGEBRAS)
ARROW_CORPUS_SIZE = 5


@lru_cache(maxsize=None)
def builtin(name: str) -> FiniteAlgebra:
    """Load ``fig1``, ``fig2``, ``fig3`` or ``ex15`` (validated)."""
    try:
        data = ALGEBRAS[name]
    except KeyError:
        raise KeyError(f"unknown builtin {name!r}; choose from {', '.join(BUILTIN_NAMES)}") from None
    labels = data["labels"]
    lattice = Lattice.from_covers(CoverRelation(tuple(labels), tuple(data["covers"])))
    pos = {lab: i for i, lab in enumerate(data["table_order"])}
    rows = [r.split() for r in data["arrow"]]
    negs = data["neg"].split()
    arrow = [[rows[pos[x]][pos[y]] for y in labels] for x in labels]
    neg = [negs[pos[x]] for x in labels]
    return FiniteAlgebra.from_lattice(lattice, arrow, neg)


@dataclass(frozen=True)
class PaperClaim:
    """One checked statement: what was expected, what was observed, and the verdict."""

    id: str
    description: str
    expected: str
    actual: str
    status: str  # "pass", "fail" or "info"

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "description": self.description,
            "expected": self.expected,
            "actual": self.actual,
            "status": self.status,
        }


def _claim(id: str, description: str, expected: str, actual: str, informational: bool = False) -> PaperClaim:
    status = "info" if informational else ("pass" if expected == actual else "fail")
    return PaperClaim(id, description, expected, actual, status)


def _outcome(alg: FiniteAlgebra, name: str) -> str:
    res = check(alg, name)
    if res.passed:
        return "Pass"
    where = ",".join(f"{k}={v}" for k, v in res.assignment.items())
    return f"Fail at {where}"


def _example_claims() -> list[PaperClaim]:
    out = []
    bad = [name for name in BUILTIN_NAMES if not validate(builtin(name)).ok]
    out.append(_claim("builtins-valid", "all worked examples are DQD semi-Heyting algebras", "none invalid", ", ".join(bad) or "none invalid"))

    def fact(id, name, ident, expected, description):
        out.append(_claim(id, description, expected, _outcome(builtin(name), ident)))

    def lev(id, name, expected, max_n=DEFAULT_MAX_LEVEL):
        out.append(_claim(id, f"level of {name}", expected, str(level(builtin(name), max_n))))

    fact("fig1-not-stone", "fig1", "St", "Fail at x=b", "fig1 is not a Stone algebra")
    fact("fig1-de-morgan", "fig1", "DM", "Pass", "fig1 negation is an involution")
    fact("fig1-regular", "fig1", "R", "Pass", "fig1 is regular")
    lev("fig1-level", "fig1", "2")
    fact("fig2-join-de-morgan", "fig2", "JDM", "Pass", "fig2 satisfies the join De Morgan law")
    fact("fig2-regular", "fig2", "R", "Pass", "fig2 is regular")
    fact("fig2-not-stone", "fig2", "St", "Fail at x=2", "fig2 is not a Stone algebra")
    lev("fig2-level", "fig2", "1")
    fact("fig3-join-de-morgan", "fig3", "JDM", "Pass", "fig3 satisfies the join De Morgan law")
    fact("fig3-stone", "fig3", "St", "Pass", "fig3 is a Stone algebra")
    fact("fig3-not-level-1", "fig3", "Lalt0", "Fail at x=a", "fig3 fails the alternate level-1 identity")
    lev("fig3-level", "fig3", "2")
    fact("ex15-lee", "ex15", "Lee", "Pass", "ex15 satisfies the Lee identity")
    fact("ex15-not-stone", "ex15", "St", "Fail at x=3", "ex15 is not a Stone algebra")
    fact("ex15-not-level-2", "ex15", "Lalt1", "Fail at x=2", "ex15 fails the alternate level-2 identity")
    lev("ex15-level", "ex15", "exceeds 2", max_n=2)
    return out


def _count(fams: list[Family], pred: Callable[[FiniteAlgebra], bool]) -> int:
    return sum(1 for f in fams if pred(f.representative))


def _members(fams: list[Family], names: list[str]) -> list[Family]:
    return [f for f in fams if all(holds(f.representative, n) for n in names)]


def _corpus_claims(corpus_size: int) -> list[PaperClaim]:
    out = []
    fams = list(families(corpus_size))
    scope = f"(lattice, negation) pairs up to size {corpus_size}"
    out.append(_claim("corpus-size", scope, "", str(len(fams)), informational=True))

    dm1 = _members(fams, ["DM", "L1"])
    out.append(_claim("dm-level1-nonempty", f"some {scope} satisfy DM and L1", "at least 1", "at least 1" if dm1 else "0"))
    out.append(_claim("dm-level1-stone", f"DM and L1 imply Stone on {scope}", "0 counterexamples", f"{_count(dm1, lambda a: not holds(a, 'St'))} counterexamples"))
    for var, names in (("dms", ["JDM", "St"]), ("bdqd", ["BDM", "St"])):
        bad = _count(_members(fams, names), lambda a: not holds(a, "Lalt1"))
        desc = f"{' and '.join(names)} imply the alternate level-2 identity on {scope}"
        out.append(_claim(f"{var}-stone-level2", desc, "0 counterexamples", f"{bad} counterexamples"))

    # consequences that hold in every DQD algebra; the arrow enters them only through *
    suite = [n for n in GROUPS["dqd-consequences"] if get_identity(n).star_only]
    viol = sum(1 for f in fams for n in suite if not holds(f.representative, n))
    out.append(_claim("dqd-consequences", f"{', '.join(suite)} on {scope}", "0 violations", f"{viol} violations"))
    # 1 -> x = x needs every arrow, which is only affordable on small lattices
    bad = total = 0
    for lat in lattices(ARROW_CORPUS_SIZE):
        arrows = semiheyting_arrows(lat)
        total += len(arrows)
        bad += int((arrows[:, lat.top, :] != np.arange(lat.size)).any(axis=1).sum())
    desc = f"1 -> x = x for all {total} arrows on lattices up to size {ARROW_CORPUS_SIZE}"
    out.append(_claim("top-arrow", desc, "0 violations", f"{bad} violations"))
    viol = sum(1 for f in dm1 for n in GROUPS["dm1-consequences"] if not holds(f.representative, n))
    out.append(_claim("dm1-consequences", "dm1-disjoint on DM + L1 pairs", "0 violations", f"{viol} violations"))
    dmsst = _members(fams, ["JDM", "St"])
    viol = sum(1 for f in dmsst for n in GROUPS["dmsst-consequences"] if not holds(f.representative, n))
    out.append(_claim("dmsst-consequences", "ms-* laws on JDM + Stone pairs", "0 violations", f"{viol} violations"))

    mism = _count([f for f in fams if holds(f.representative, "DM")], lambda a: level(a) != level_alt(a))
    out.append(_claim("dm-level-forms-agree", f"both level computations agree on DM {scope}", "0 disagreements", f"{mism} disagreements"))
    bad = _count(dmsst, lambda a: not (level(a).exact and level(a).value <= 2 and level(a) == level_alt(a)))
    out.append(_claim("dmsst-level-at-most-2", "JDM + Stone pairs have level at most 2, by both computations", "0 counterexamples", f"{bad} counterexamples"))
    bad = sum(1 for f in fams for n in range(5) if holds(f.representative, f"L{n}") and not holds(f.representative, f"L{n + 1}"))
    out.append(_claim("level-monotone", f"L_n implies L_(n+1) for n <= 4 on {scope}", "0 counterexamples", f"{bad} counterexamples"))

    # informational: the trailing-prime-free form of the BDM law
    variant = _count(fams, lambda a: a.size > 1 and holds(a, "BDM-variant"))
    desc = "nontrivial pairs satisfying (x \\/ x*)' = x' /\\ x*"
    out.append(_claim("bdm-variant", desc, "", str(variant), informational=True))

    dmsl = _members(fams, ["JDM", "Lee"])
    levels = sorted({str(level(f.representative)) for f in dmsl})
    out.append(_claim("dms-lee-levels", "levels found among JDM + Lee pairs", "", ", ".join(levels), informational=True))
    return out


def _sharpness_claims() -> list[PaperClaim]:
    out = []
    for id, sat, fal, size, target in (
        ("dm-level2-not-stone-witness", ["DM", "Lalt1"], ["St"], 7, "fig1"),
        ("dms-level1-not-stone-witness", ["JDM", "L1"], ["St"], 5, "fig2"),
    ):
        res = search(SearchSpec.build(sat, fal, max_lattice_size=size))
        hits = isomorphic_members(res, builtin(target))
        desc = f"search for {' + '.join(sat)} failing {' + '.join(fal)} up to size {size} finds {target}"
        out.append(_claim(id, desc, "found", "found" if hits else f"not found among {len(res)}"))
    return out


def verify_paper(corpus_size: int = 8) -> list[PaperClaim]:
    """Run every check; results come out in a fixed order."""
    return _example_claims() + _corpus_claims(corpus_size) + _sharpness_claims()


def claims_table(claims: list[PaperClaim]) -> str:
    rows = [("status", "claim", "expected", "actual")]
    rows += [(c.status.upper(), c.id, c.expected or "-", c.actual) for c in claims]
    widths = [max(len(r[i]) for r in rows) for i in range(3)]
    lines = ["  ".join(r[i].ljust(widths[i]) for i in range(3)) + "  " + r[3] for r in rows]
    failed = sum(c.status == "fail" for c in claims)
    lines.append(f"{len(claims)} claims, {failed} failed")
    return "\n".join(lines)
