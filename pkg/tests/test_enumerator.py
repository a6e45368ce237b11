from __future__ import annotations

from collections import Counter
from itertools import permutations, product

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shkit.algebra import FiniteAlgebra, validate
from shkit.enumerator import (
    SearchSpaceExceeded,
    SearchSpec,
    canonical_form,
    distributive_lattices,
    dqd_negations,
    families,
    find_isomorphism,
    invariant,
    is_isomorphic,
    isomorphic_members,
    lattice_automorphisms,
    lattice_families,
    lattices,
    max_nodes_default,
    search,
    semiheyting_arrows,
    semiheyting_arrows_backtrack,
)
from shkit.paper import builtin

from conftest import brute_force_arrows_of, chain

# number of distributive lattices with n elements, n = 1..8
KNOWN_COUNTS = [1, 1, 1, 2, 3, 5, 8, 15]


def brute_force_negations(lat) -> set[tuple[int, ...]]:
    n = lat.size
    m, j = np.array(lat.meet), np.array(lat.join)
    out = set()
    for neg in product(range(n), repeat=n):
        g = np.array(neg)
        if g[lat.bottom] != lat.top or g[lat.top] != lat.bottom:
            continue
        if (g[m] != j[g[:, None], g[None, :]]).any():
            continue
        gg = g[g]
        if (gg[j] != j[gg[:, None], gg[None, :]]).any():
            continue
        if (m[gg, np.arange(n)] != gg).any():
            continue
        out.add(tuple(int(v) for v in neg))
    return out


def lattice_isomorphic(a, b) -> bool:
    if a.size != b.size:
        return False
    ma, mb = np.array(a.meet), np.array(b.meet)
    for perm in permutations(range(a.size)):
        p = np.array(perm)
        if (p[ma] == mb[p[:, None], p[None, :]]).all():
            return True
    return False


def test_lattice_counts_match_known_sequence():
    sizes = Counter(lat.size for lat in lattices(8))
    assert [sizes[n] for n in range(1, 9)] == KNOWN_COUNTS


def test_small_lattice_lists():
    assert len(distributive_lattices(2)) == 2
    square = [lat for lat in lattices(4) if lat.size == 4 and len(lat.join_irreducibles) == 2]
    assert len(square) == 1
    fig1_lattice = builtin("fig1").lattice
    assert any(lattice_isomorphic(lat, fig1_lattice) for lat in lattices(7) if lat.size == 7)


def test_lattices_are_pairwise_non_isomorphic():
    lats = [lat for lat in lattices(6) if lat.size == 6]
    for i, a in enumerate(lats):
        for b in lats[i + 1 :]:
            assert not lattice_isomorphic(a, b)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_arrows_match_brute_force_on_chains(n):
    lat = chain(n)
    got = {a.astype(np.int8).tobytes() for a in semiheyting_arrows(lat)}
    assert got == brute_force_arrows_of(lat)


def test_two_chain_arrows():
    arrows = semiheyting_arrows(chain(2))
    assert len(arrows) == 2
    assert {int(a[0, 1]) for a in arrows} == {0, 1}


@pytest.mark.parametrize("lat", lattices(6), ids=lambda lat: f"n{lat.size}-j{len(lat.join_irreducibles)}")
def test_join_irreducible_method_matches_backtracking(lat):
    try:
        fast = semiheyting_arrows(lat, max_nodes=10**6)
    except SearchSpaceExceeded:
        pytest.skip("lattice too large for the cross-check budget")
    slow = semiheyting_arrows_backtrack(lat, max_nodes=10**7)
    assert {a.tobytes() for a in fast.astype(np.int8)} == {a.tobytes() for a in slow.astype(np.int8)}
    assert len(fast) == len({a.tobytes() for a in fast.astype(np.int8)})


def test_arrow_counts():
    assert [len(semiheyting_arrows(chain(n))) for n in (1, 2, 3, 4, 5)] == [1, 2, 10, 160, 10400]


@pytest.mark.parametrize("lat", lattices(5), ids=lambda lat: f"n{lat.size}-j{len(lat.join_irreducibles)}")
def test_every_arrow_is_semi_heyting(lat):
    arrows = semiheyting_arrows(lat)
    star = np.array(lat.pseudocomplement)
    heyting = np.array(lat.heyting_arrow)
    n = lat.size
    assert any((a == heyting).all() for a in arrows)
    for a in arrows:
        assert (a[:, lat.bottom] == star).all()  # x -> 0 does not depend on the arrow
        assert (a[lat.top] == np.arange(n)).all()  # 1 -> x = x
        alg = FiniteAlgebra(lat.labels, lat.meet, lat.join, tuple(map(tuple, a.tolist())), tuple(range(n))[::-1], lat.bottom, lat.top)
        assert not {"SH1", "SH2", "SH3"} & set(validate(alg).axioms())


def test_fig2_arrow_is_enumerated(fig2):
    arrows = semiheyting_arrows(fig2.lattice)
    assert any((a == np.array(fig2.arrow_table)).all() for a in arrows)


@pytest.mark.parametrize("lat", lattices(6), ids=lambda lat: f"n{lat.size}-j{len(lat.join_irreducibles)}")
def test_negations_match_brute_force(lat):
    assert set(dqd_negations(lat)) == brute_force_negations(lat)


def test_negation_examples(fig1, fig2):
    assert dqd_negations(chain(2)) == [(1, 0)]
    assert fig1.neg_table in dqd_negations(fig1.lattice)
    assert fig2.neg_table in dqd_negations(fig2.lattice)


def test_automorphisms(fig1):
    assert len(lattice_automorphisms(chain(5))) == 1
    square = next(lat for lat in lattices(4) if lat.size == 4 and len(lat.join_irreducibles) == 2)
    assert len(lattice_automorphisms(square)) == 2
    assert len(lattice_automorphisms(fig1.lattice)) == 4


def test_families_are_negation_orbits():
    for lat in lattices(6):
        autos = lattice_automorphisms(lat)
        negs = dqd_negations(lat)
        orbits = {min(tuple(s[g[np.argsort(s)][i]] for i in range(lat.size)) for s in map(np.array, autos)) for g in map(np.array, negs)}
        assert len(lattice_families(lat)) == len(orbits)


def test_corpus_family_count():
    assert len(list(families(8))) == 324


def test_isomorphism_examples(fig1, fig2, fig3):
    assert is_isomorphic(fig1, fig1.relabel([3, 1, 6, 0, 2, 5, 4]))
    assert not is_isomorphic(fig2, fig3)
    lat = chain(2)
    heyting = FiniteAlgebra.from_lattice(lat, [[1, 1], [0, 1]], [1, 0])
    other = FiniteAlgebra.from_lattice(lat, [[1, 0], [0, 1]], [1, 0])
    assert not is_isomorphic(heyting, other)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(["fig1", "fig2", "fig3"]), st.randoms(use_true_random=False))
def test_canonical_form_ignores_labelling(name, rnd):
    alg = builtin(name)
    perm = list(range(alg.size))
    rnd.shuffle(perm)
    moved = alg.relabel(perm)
    assert canonical_form(moved) == canonical_form(alg)
    assert invariant(moved) == invariant(alg)
    iso = find_isomorphism(alg, moved)
    assert iso is not None


def test_canonical_form_agrees_with_explicit_isomorphism():
    # all algebras on the 4-element lattices, compared pairwise
    algs = search(SearchSpec(max_lattice_size=4))
    pool = []
    for lat in lattices(4):
        for neg in dqd_negations(lat):
            for a in semiheyting_arrows(lat):
                pool.append(FiniteAlgebra(lat.labels, lat.meet, lat.join, tuple(map(tuple, a.tolist())), neg, lat.bottom, lat.top))
    classes = {canonical_form(a) for a in pool}
    assert len(classes) == len(algs)
    assert {canonical_form(a) for a in algs} == classes
    sample = pool[:: max(1, len(pool) // 40)]
    for a in sample:
        for b in sample:
            assert (canonical_form(a) == canonical_form(b)) == (find_isomorphism(a, b) is not None)


def test_search_sharpness_fig2(fig2):
    res = search(SearchSpec.build(["JDM", "L1"], ["St"], max_lattice_size=5))
    assert isomorphic_members(res, fig2)
    assert all(not is_isomorphic(a, b) for i, a in enumerate(res[:40]) for b in res[i + 1 : 40])


def test_search_independent_of_threads():
    spec = SearchSpec.build(["JDM"], ["St"], max_lattice_size=5)
    one = [a.to_dict() for a in search(spec, threads=1)]
    three = [a.to_dict() for a in search(spec, threads=3)]
    assert one == three


def test_search_rejects_contradictory_spec():
    with pytest.raises(ValueError):
        SearchSpec.build(["St"], ["St"])


def test_search_respects_max_results():
    assert len(search(SearchSpec(max_lattice_size=4, max_results=3))) == 3


def test_node_cap_from_environment(monkeypatch):
    monkeypatch.setenv("SHKIT_MAX_NODES", "50")
    assert max_nodes_default() == 50
    with pytest.raises(SearchSpaceExceeded):
        semiheyting_arrows(chain(5))
    monkeypatch.delenv("SHKIT_MAX_NODES")
    assert max_nodes_default() == 10**7
