import pytest

from wcomm.catalog import Catalog
from wcomm.commutators import admissible
from wcomm.groups import all_subgroups, is_normal
from wcomm.sweep import (CampaignConfig, conjugation_action, diagram_census, diagrams,
                         run_campaign, split_epis, subgroup_triples, weight_profile, weights)

CAT = Catalog.builtin()


def test_triples_cover_every_orbit():
    D = CAT["S3"]
    subs = all_subgroups(D)
    reps = subgroup_triples(D, subs)
    assert sum(n for *_, n in reps) == len(subs) ** 3
    action = conjugation_action(D, subs)
    for i, j, k, _ in reps:
        orbit = {(p[i], p[j], p[k]) for p in action}
        assert (i, j, k) == min(orbit)
    assert len(subgroup_triples(D, subs, dedupe=False)) == 216


def test_split_epis():
    pairs = split_epis(CAT["S3"], CAT["C2"])
    # one sign map, three transpositions to split it
    assert len(pairs) == 3
    assert all(f.after(r).is_identity() for f, r in pairs)
    assert split_epis(CAT["C3"], CAT["C2"]) == []


def test_diagrams_are_valid_and_counted():
    groups = [CAT["C1"], CAT["C2"], CAT["S3"]]
    ds = list(diagrams(groups, [CAT["C2"]]))
    assert ds
    for d in ds:
        assert d.alpha.after(d.r) == d.beta == d.gamma.after(d.s)


def test_census_agrees_on_small_population():
    groups = [CAT[x] for x in ("C1", "C2", "C3", "S3", "V4")]
    tally = diagram_census(diagrams(groups, [CAT["C1"], CAT["C2"]]))
    assert tally.total > 1000
    assert tally.discrepancies((0, 1, 2, 3)) == 0 and tally.unstable == 0
    assert {k[0] for k in tally.counts} == {True, False}


def test_weights_include_inclusions_and_homs():
    D = CAT["S3"]
    ws = list(weights(D, [CAT["C2"]]))
    assert len(ws) == len(all_subgroups(D)) + 4


@pytest.mark.parametrize("label", ["S3", "D4", "Q8"])
def test_weight_profile_is_constant_for_normal_pairs(label):
    D = CAT[label]
    normal = [H for H in all_subgroups(D) if is_normal(H)]
    ws = list(weights(D, [CAT["C2"], CAT["C3"], CAT["V4"]]))
    for X in normal:
        for Y in normal:
            assert len(weight_profile(X, Y, ws)) == 1


def test_campaign_abelian_all_trivial():
    s = run_campaign(CAT, CampaignConfig(abelian=True, max_order=8))
    assert s.ok and s.instances == s.trivial > 0


def test_campaign_independent_of_jobs_and_seed():
    rows1, rows2 = [], []
    cfg = CampaignConfig(labels=["S3", "V4"])
    s1 = run_campaign(CAT, cfg, rows1.append)
    cfg2 = CampaignConfig(labels=["S3", "V4"], jobs=2, seed=99)
    s2 = run_campaign(CAT, cfg2, rows2.append)
    assert rows1 == rows2 and s1.to_dict() == s2.to_dict() and s1.ok


def test_sampled_campaign_is_seeded():
    cfg = CampaignConfig(labels=["D4"], sample=5, seed=3)
    a, b = [], []
    run_campaign(CAT, cfg, a.append)
    run_campaign(CAT, cfg, b.append)
    assert a == b and len(a) == 5


def test_short_depth_campaign_fails():
    s = run_campaign(CAT, CampaignConfig(labels=["S3"], depth=4))
    assert not s.ok and s.unstable > 0


def test_config_validation():
    with pytest.raises(ValueError):
        CampaignConfig(depth=3)
    with pytest.raises(ValueError):
        CampaignConfig(window=0)
