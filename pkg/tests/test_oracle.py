import pytest

from braidquot import fingroup as fg
from braidquot import jn2, oracle
from braidquot.errors import SearchBudgetExceeded
from braidquot.jn2 import Jn2Spec, materialize


# ---------------------------------------------------------------------------
# exhaustive enumeration


EXPECTED_CLASS_COUNTS = {1: 1, 2: 1, 3: 1, 4: 2, 5: 1, 6: 2, 7: 1, 8: 5}


def test_class_counts(exhaustive_tiers):
    for k, expected in EXPECTED_CLASS_COUNTS.items():
        assert len(exhaustive_tiers[k]) == expected, k


def test_order4_classes(exhaustive_tiers):
    tier = exhaustive_tiers[4]
    assert any(fg.is_isomorphic(G, fg.cyclic(4)) is not None for G in tier)
    assert any(fg.is_isomorphic(G, fg.elementary_abelian(2, 2)) is not None
               for G in tier)


def test_order6_nonabelian_is_s3(exhaustive_tiers):
    nonab = [G for G in exhaustive_tiers[6] if not G.is_abelian]
    assert len(nonab) == 1
    assert fg.is_isomorphic(nonab[0], fg.symmetric(3)) is not None


def test_order8_nonabelian_are_the_standard_pair(exhaustive_tiers):
    nonab = [G for G in exhaustive_tiers[8] if not G.is_abelian]
    assert len(nonab) == 2
    for variant in ("I", "II"):
        std = materialize(Jn2Spec(2, 1, 1, variant)).group
        assert sum(1 for G in nonab
                   if fg.is_isomorphic(G, std) is not None) == 1


def test_enumeration_pairwise_nonisomorphic(exhaustive_tiers):
    for k, tier in exhaustive_tiers.items():
        for i in range(len(tier)):
            for j in range(i + 1, len(tier)):
                assert fg.is_isomorphic(tier[i], tier[j]) is None


def test_enumeration_budget():
    with pytest.raises(SearchBudgetExceeded):
        oracle.enumerate_groups_exhaustive(12, budget=10)


# ---------------------------------------------------------------------------
# catalog


def test_catalog_order12_tier(catalog):
    tier = catalog.tier(12)
    assert len(tier) == 3
    groups = [e.group for e in tier]
    for i in range(3):
        for j in range(i + 1, 3):
            assert fg.is_isomorphic(groups[i], groups[j]) is None


def test_catalog_matches_exhaustive_at_8(catalog, exhaustive_tiers):
    tier = [e.group for e in catalog.tier(8)]
    nonab = [G for G in exhaustive_tiers[8] if not G.is_abelian]
    assert len(tier) == len(nonab) == 2
    for G in nonab:
        assert any(fg.is_isomorphic(G, H) is not None for H in tier)


def test_catalog_order15_empty(catalog):
    assert catalog.tier(15) == ()
    assert catalog.tier(9) == ()
    assert catalog.tier(11) == ()
    assert catalog.tier(13) == ()


def test_catalog_provenance_tags(catalog):
    for entry in catalog.entries:
        if entry.order <= 8:
            assert entry.provenance == "exhaustive"
        else:
            assert entry.provenance == "constructed"


# ---------------------------------------------------------------------------
# normal subgroups


def test_a5_is_simple():
    normals = oracle.normal_subgroups(fg.alternating(5))
    assert [N.order for N in normals] == [1, 60]


def test_q8_normal_subgroups():
    normals = oracle.normal_subgroups(fg.dicyclic(8))
    assert len(normals) == 6  # all subgroups of Q8 are normal
    assert sorted(N.order for N in normals) == [1, 2, 4, 4, 4, 8]


def test_cyclic_prime_normals():
    assert len(oracle.normal_subgroups(fg.cyclic(7))) == 2


def test_normal_subgroups_budget():
    with pytest.raises(SearchBudgetExceeded):
        oracle.normal_subgroups(fg.symmetric(6))


def test_derived_contained_in_abelianizing_normals(small_corpus):
    for G in small_corpus:
        if G.order > 64:
            continue
        D = fg.derived_subgroup(G)
        for N in oracle.normal_subgroups(G):
            Q, _ = fg.quotient(G, N)
            if Q.is_abelian:
                assert D.element_set <= N.element_set


# ---------------------------------------------------------------------------
# just-nonabelian test


def test_abelian_not_just_nonabelian():
    assert not oracle.is_just_nonabelian(fg.cyclic(12))


def test_d8_just_nonabelian():
    assert oracle.is_just_nonabelian(fg.dihedral(8))


def test_s4_not_just_nonabelian():
    assert not oracle.is_just_nonabelian(fg.symmetric(4))


def test_characterization_equivalence(exhaustive_tiers, catalog, specs_243):
    """is_jn2 agrees with (nilpotency class 2) and (every proper quotient
    abelian) in both directions, on everything of order <= 64."""
    corpus = [G for k in range(1, 9) for G in exhaustive_tiers[k]]
    corpus += [e.group for e in catalog.entries]
    corpus += [materialize(s).group for s in specs_243 if s.order <= 64]
    for G in corpus:
        direct = (fg.nilpotency_class(G) == 2) and oracle.is_just_nonabelian(G)
        assert (jn2.is_jn2(G) is not None) == direct, G.label


def test_catalog_jn2_members_classify(catalog):
    """Every JN2 group in the catalog classifies to a standard model with a
    verified isomorphism."""
    for entry in catalog.entries:
        if jn2.is_jn2(entry.group) is None:
            continue
        spec, iso = jn2.classify(entry.group)
        assert iso.is_bijective
        assert spec.order == entry.order
