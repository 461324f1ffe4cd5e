import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from braidquot import braid, fingroup as fg, oracle
from braidquot.braid import Witness
from braidquot.errors import HypothesisFailed, ParamRange, SizeLimit
from braidquot.jn2 import Jn2Spec, materialize


def family_count(pres, family):
    return sum(1 for rel in pres.relators if rel.family == family)


# ---------------------------------------------------------------------------
# full presentation


def test_presentation_2_1():
    p = braid.bellingeri_presentation(2, 1)
    assert p.generators == ("s1", "a1", "b1")
    assert family_count(p, "braid") == 0
    assert family_count(p, "braid-comm") == 0
    assert family_count(p, "R1") == 0
    assert family_count(p, "R2") == 2
    assert family_count(p, "R3") == 0
    assert family_count(p, "R4") == 1
    assert family_count(p, "TR") == 1


def test_presentation_3_1_braid_relation():
    p = braid.bellingeri_presentation(3, 1)
    assert family_count(p, "braid") == 1
    braid_rel = next(r for r in p.relators if r.family == "braid")
    # s1 s2 s1 (s2 s1 s2)^-1
    assert braid_rel.word == (("s1", 1), ("s2", 1), ("s1", 1),
                              ("s2", -1), ("s1", -1), ("s2", -1))
    tr = next(r for r in p.relators if r.family == "TR")
    # the right side contributes s1 s2^2 s1, inverted
    assert tr.word[-3:] == (("s1", -1), ("s2", -2), ("s1", -1))


def test_presentation_5_2_counts():
    p = braid.bellingeri_presentation(5, 2)
    # four commutation forms per pair s < r
    assert family_count(p, "R3") == 4
    assert family_count(p, "R1") == 2 * 2 * 3   # two surface rows, i in 2..4
    assert family_count(p, "R2") == 4
    assert family_count(p, "R4") == 2
    assert family_count(p, "braid") == 3
    assert family_count(p, "braid-comm") == 3   # (1,3), (1,4), (2,4)


def test_presentation_param_range():
    with pytest.raises(ParamRange):
        braid.bellingeri_presentation(1, 1)
    with pytest.raises(ParamRange):
        braid.bellingeri_presentation(3, 0)


@pytest.mark.parametrize("n,g", [(2, 1), (3, 1), (5, 2), (6, 3)])
def test_presentation_relators_use_declared_generators(n, g):
    for pres in (braid.bellingeri_presentation(n, g), braid.reduced_relations(max(n, 3), g)):
        declared = set(pres.generators)
        for rel in pres.relators:
            assert all(gen in declared for gen, _ in rel.word), rel.label


@pytest.mark.parametrize("n,g", [(3, 1), (5, 1), (5, 2), (6, 2)])
def test_presentation_relator_counts_match_schema(n, g):
    p = braid.bellingeri_presentation(n, g)
    expected = {
        "braid-comm": (n - 1) * (n - 2) // 2 - (n - 2),
        "braid": n - 2,
        "R1": 2 * g * (n - 2),
        "R2": 2 * g,
        "R3": 4 * g * (g - 1) // 2,
        "R4": g,
        "TR": 1,
    }
    for family, count in expected.items():
        assert family_count(p, family) == count, family
    r = braid.reduced_relations(n, g)
    assert family_count(r, "R1'") == 2 * g
    assert family_count(r, "R3'") == 4 * g * (g - 1) // 2
    assert family_count(r, "R4'") == g
    assert family_count(r, "TR'") == 1


# ---------------------------------------------------------------------------
# reduced relations


def test_reduced_5_1():
    p = braid.reduced_relations(5, 1)
    labels = [r.label for r in p.relators]
    assert labels == ["R1'[a1]", "R1'[b1]", "R4'[1]", "TR'"]
    tr = p.relators[-1]
    assert tr.word == (("s", 10),)  # sigma^(2(g+n-1)) with g+n-1 = 5


def test_reduced_6_1_exponent():
    p = braid.reduced_relations(6, 1)
    assert p.relators[-1].word == (("s", 12),)


def test_reduced_5_2_r3_block():
    p = braid.reduced_relations(5, 2)
    assert family_count(p, "R3'") == 4  # one pair s=1 < r=2, four forms


def test_reduced_refuses_n2():
    with pytest.raises(ParamRange):
        braid.reduced_relations(2, 1)


# ---------------------------------------------------------------------------
# full-quotient checking


def test_identity_images_pass_but_do_not_generate():
    S5 = fg.symmetric(5)
    images = {gen: 0 for gen in braid.bellingeri_presentation(5, 1).generators}
    rep = braid.check_full_quotient(S5, 5, 1, images)
    assert rep.relators_ok
    assert not rep.generates
    assert not rep.ok


@pytest.mark.parametrize("n,g", [(5, 1), (5, 2), (6, 1), (6, 2)])
def test_symmetric_group_is_full_quotient(n, g):
    S = fg.symmetric(n)
    images = {f"s{i}": S.names[f"s{i}"] for i in range(1, n)}
    for r in range(1, g + 1):
        images[f"a{r}"] = 0
        images[f"b{r}"] = 0
    rep = braid.check_full_quotient(S, n, g, images)
    assert rep.relators_ok and rep.generates


def test_check_full_requires_all_images():
    with pytest.raises(ValueError, match="missing"):
        braid.check_full_quotient(fg.symmetric(3), 3, 1, {"s1": 0})


# ---------------------------------------------------------------------------
# reduced-witness checking


def test_abelian_witness_fails_r4_when_sigma_squared_nontrivial():
    C4 = fg.cyclic(4)
    w = Witness(group=C4, n=5, g=1, sigma=1, a=(1,), b=(3,))
    rep = braid.check_reduced_witness(w)
    assert not rep.family_ok("R4'")  # commutators vanish but sigma^2 = 2


def test_standard_witness_passes():
    w = braid.standard_witness(Jn2Spec(2, 2, 1, "I"), 6, 1)
    rep = braid.check_reduced_witness(w)
    assert rep.ok
    assert rep.sigma_central
    assert rep.derived_identity_ok


def test_q8_admits_no_witness():
    Q8 = fg.dicyclic(8)
    for n in range(3, 9):
        for g in (1, 2):
            assert braid.find_witness(Q8, n, g) is None


# ---------------------------------------------------------------------------
# witness search


def test_find_witness_degenerate_cyclic2():
    w = braid.find_witness(fg.cyclic(2), 6, 1)
    assert w is not None
    rep = braid.check_reduced_witness(w)
    assert rep.relators_ok and rep.generates


def test_find_witness_variant_two():
    G = materialize(Jn2Spec(2, 2, 2, "II")).group
    w = braid.find_witness(G, 5, 2)
    assert w is not None
    assert braid.check_reduced_witness(w).ok


def test_find_witness_d8_none():
    assert braid.find_witness(fg.dihedral(8), 6, 1) is None


def test_find_witness_agrees_with_naive_enumeration(exhaustive_tiers, catalog):
    groups = [G for k in range(2, 9) for G in exhaustive_tiers[k]]
    groups += [e.group for e in catalog.entries if e.order <= 14]
    for G in groups:
        if G.order > 16:
            continue
        for n, g in ((5, 1), (6, 1)):
            naive = oracle.find_witness_naive(G, n, g)
            fast = braid.find_witness(G, n, g)
            if naive is None:
                assert fast is None, (G.label, n, g)
            else:
                assert fast is not None
                assert (fast.sigma, fast.a, fast.b) == naive


def test_find_witness_agrees_with_naive_genus_two():
    for G in oracle.enumerate_groups_exhaustive(8):
        naive = oracle.find_witness_naive(G, 5, 2)
        fast = braid.find_witness(G, 5, 2)
        if naive is None:
            assert fast is None
        else:
            assert (fast.sigma, fast.a, fast.b) == naive


def test_find_witness_param_range():
    with pytest.raises(ParamRange):
        braid.find_witness(fg.cyclic(2), 2, 1)


# ---------------------------------------------------------------------------
# standard witnesses (explicit sigma recipes)


def test_standard_witness_sigma_values():
    std = materialize(Jn2Spec(2, 2, 1, "I"))
    assert braid.standard_witness(Jn2Spec(2, 2, 1, "I"), 6, 1).sigma == std.z

    std5 = materialize(Jn2Spec(5, 1, 1, "I"))
    w5 = braid.standard_witness(Jn2Spec(5, 1, 1, "I"), 5, 1)
    assert w5.sigma == std5.group.power(std5.z, 3)  # (5+1)/2 = 3

    std9 = materialize(Jn2Spec(3, 2, 1, "II"))
    w9 = braid.standard_witness(Jn2Spec(3, 2, 1, "II"), 6, 1)
    assert w9.sigma == std9.group.power(std9.z, 6)  # (9+3)/2 = 6


def test_standard_witness_hypotheses():
    with pytest.raises(HypothesisFailed, match="divide"):
        braid.standard_witness(Jn2Spec(5, 1, 1, "I"), 6, 1)  # 5 does not divide 6
    with pytest.raises(HypothesisFailed, match="m="):
        braid.standard_witness(Jn2Spec(5, 1, 2, "I"), 5, 1)  # rank mismatch
    with pytest.raises(HypothesisFailed):
        braid.standard_witness(Jn2Spec(3, 2, 1, "I"), 6, 1)  # I needs j = 1 for odd p
    with pytest.raises(HypothesisFailed):
        braid.standard_witness(Jn2Spec(2, 1, 1, "II"), 6, 1)  # II with p = 2 needs j >= 2


def test_standard_witnesses_extend_to_full_presentation():
    for spec, n, g in [
        (Jn2Spec(2, 2, 1, "I"), 6, 1),
        (Jn2Spec(2, 2, 1, "II"), 6, 1),
        (Jn2Spec(2, 3, 1, "II"), 6, 1),
        (Jn2Spec(5, 1, 1, "I"), 5, 1),
        (Jn2Spec(5, 1, 1, "II"), 5, 1),
        (Jn2Spec(3, 1, 1, "I"), 6, 1),
        (Jn2Spec(2, 2, 2, "I"), 5, 2),
        (Jn2Spec(2, 2, 2, "II"), 5, 2),
    ]:
        w = braid.standard_witness(spec, n, g)
        full = braid.check_full_quotient(w.group, n, g, w.full_images())
        assert full.ok, (str(spec), full.failures())
        assert full.family_ok("R2")


# ---------------------------------------------------------------------------
# predicted minimum and the sweep


@pytest.mark.parametrize("n,g,expected", [
    (5, 1, (5, 1, 125)),
    (6, 1, (2, 2, 16)),
    (5, 2, (2, 2, 64)),
    (7, 1, (7, 1, 343)),
    (6, 2, (7, 1, 16807)),
])
def test_predicted_minimum(n, g, expected):
    pred = braid.predicted_minimum(n, g)
    assert (pred.p, pred.j, pred.order) == expected


def test_predicted_minimum_param_range():
    with pytest.raises(ParamRange):
        braid.predicted_minimum(4, 1)


def test_search_6_1():
    rep = braid.minimal_braid_reduced_search(6, 1, 64)
    assert rep.minimum == 16
    assert rep.attained == ("I(2^2,1)", "II(2^2,1)")
    below = [c for c in rep.candidates if c.order < 16]
    assert below and all(c.witness is None for c in below)


def test_search_5_1_rejections():
    rep = braid.minimal_braid_reduced_search(5, 1, 125)
    assert rep.minimum == 125
    assert rep.attained == ("I(5,1)", "II(5,1)")
    rejected = {c.label for c in rep.candidates if c.witness is None}
    for label in ("D8", "Q8", "I(3,1)", "II(3,1)", "I(2,2)", "II(2,2)",
                  "I(2^2,1)", "II(2^2,1)", "I(2^3,1)", "II(2^3,1)"):
        assert label in rejected, label


def test_search_divisibility_and_rank_necessity():
    # every successful JN2 candidate has p | g+n-1 and m = g
    for n, g, bound in ((6, 1, 64), (5, 1, 125), (5, 2, 64)):
        rep = braid.minimal_braid_reduced_search(n, g, bound)
        for cand in rep.found():
            if cand.spec is None:
                continue
            assert (g + n - 1) % cand.spec.p == 0
            assert cand.spec.m == g


def test_search_witnesses_reverify():
    rep = braid.minimal_braid_reduced_search(6, 1, 64)
    for cand in rep.found():
        assert braid.check_reduced_witness(cand.witness).ok


def test_search_param_and_size_errors():
    with pytest.raises(ParamRange):
        braid.minimal_braid_reduced_search(4, 1, 64)
    with pytest.raises(SizeLimit):
        braid.minimal_braid_reduced_search(6, 1, 20_000)


# ---------------------------------------------------------------------------
# non-nilpotency of symmetric groups


@pytest.mark.parametrize("m,expected", [(2, False), (3, True), (5, True)])
def test_non_nilpotency_check(m, expected):
    assert braid.non_nilpotency_check(m) is expected


def test_non_nilpotency_size_limit():
    with pytest.raises(SizeLimit):
        braid.non_nilpotency_check(8)


# ---------------------------------------------------------------------------
# witness files


def test_witness_text_roundtrip(tmp_path):
    w = braid.standard_witness(Jn2Spec(2, 2, 1, "I"), 6, 1)
    text = braid.witness_to_text(w, "I(2^2,1)")
    assert text == "n 6\ng 1\ngroup I(2^2,1)\nsigma 4\na 1\nb 2\n".replace(
        "sigma 4", f"sigma {w.sigma}").replace("a 1", f"a {w.a[0]}").replace(
        "b 2", f"b {w.b[0]}")
    back = braid.witness_from_text(text)
    assert (back.n, back.g, back.sigma, back.a, back.b) == (6, 1, w.sigma, w.a, w.b)


@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_witness_text_roundtrip_property(data):
    g = data.draw(st.integers(min_value=1, max_value=3))
    n = data.draw(st.integers(min_value=3, max_value=9))
    G = materialize(Jn2Spec(2, 2, 1, "I")).group
    sigma = data.draw(st.integers(min_value=0, max_value=15))
    a = tuple(data.draw(st.integers(min_value=0, max_value=15)) for _ in range(g))
    b = tuple(data.draw(st.integers(min_value=0, max_value=15)) for _ in range(g))
    w = Witness(group=G, n=n, g=g, sigma=sigma, a=a, b=b)
    back = braid.witness_from_text(braid.witness_to_text(w, "I(2^2,1)"))
    assert (back.n, back.g, back.sigma, back.a, back.b) == (n, g, sigma, a, b)


def test_witness_file_with_cayley_path(tmp_path):
    G = fg.dihedral(8)
    fg.write_cayley(G, tmp_path / "d8.grp")
    text = "n 6\ng 1\ngroup d8.grp\nsigma 0\na 0\nb 1\n"
    w = braid.witness_from_text(text, base_dir=str(tmp_path))
    assert w.group.order == 8
    assert not braid.check_reduced_witness(w).ok
