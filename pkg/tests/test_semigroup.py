import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from korbits import semigroup as sg
from korbits import spherical as sp

AX = sp.system_ax111()
S14 = sp.system_case_1_4(5)


def test_leq_examples():
    assert sg.leq_sigma(AX, AX.unit_color("D3"), AX.color_sum("D1", "D2"))
    assert sg.leq_sigma(AX, AX.unit_color("D2"), AX.unit_color("D2"))
    assert not sg.leq_sigma(AX, AX.unit_color("D1"), AX.unit_color("D2"))


@settings(max_examples=150, deadline=None)
@given(st.lists(st.integers(0, 3), min_size=3, max_size=3),
       st.lists(st.integers(0, 3), min_size=3, max_size=3),
       st.lists(st.integers(0, 3), min_size=3, max_size=3))
def test_leq_partial_order_ax111(d, e, f):
    d, e, f = tuple(d), tuple(e), tuple(f)
    assert sg.leq_sigma(AX, d, d)
    if sg.leq_sigma(AX, d, e) and sg.leq_sigma(AX, e, d):
        assert d == e
    if sg.leq_sigma(AX, d, e) and sg.leq_sigma(AX, e, f):
        assert sg.leq_sigma(AX, d, f)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(0, 2), min_size=5, max_size=5),
       st.lists(st.integers(0, 2), min_size=5, max_size=5))
def test_leq_antisymmetry_case14(d, e):
    d, e = tuple(d), tuple(e)
    if sg.leq_sigma(S14, d, e) and sg.leq_sigma(S14, e, d):
        assert d == e


def test_leq_partial_order_every_encoded_system():
    rng = random.Random(17)
    systems = [AX, S14, sp.system_case_1_5(5), sp.system_ay_a_ay(1, 1, 1),
               sp.system_case_1_6(4, 4, 1, 1), sp.system_case_1_6(4, 3, 1, 1),
               sp.system_case_1_7(3, 4, 0, 1)]
    for system in systems:
        ncol = len(system.colors)
        vecs = [tuple(rng.randint(0, 2) for _ in range(ncol)) for _ in range(30)]
        for d in vecs:
            assert sg.leq_sigma(system, d, d)
        for d in vecs[:12]:
            for e in vecs[:12]:
                if sg.leq_sigma(system, d, e) and sg.leq_sigma(system, e, d):
                    assert d == e
                for f in vecs[:6]:
                    if sg.leq_sigma(system, d, e) and sg.leq_sigma(system, e, f):
                        assert sg.leq_sigma(system, d, f)


def brute_force_dominated(system, e_vec, box):
    """Oracle: scan F in a coordinate box around E and test E - F in N-Sigma.

    F can exceed E where spherical roots have negative color coordinates,
    so the box pads by box times the column-wise sum of negative parts; the
    pad is certified sufficient against the exact LP bounds.
    """
    lat = sg.lattice(system)
    assert all(b <= box for b in lat.box_bounds(e_vec))
    ncol = len(system.colors)
    neg = [sum(max(-row[i], 0) for row in system.sigma_in_colors) for i in range(ncol)]
    tops = [e_vec[i] + box * neg[i] for i in range(ncol)]
    out = []
    for f_vec in itertools.product(*(range(t + 1) for t in tops)):
        if f_vec == tuple(e_vec):
            continue
        diff = tuple(a - b for a, b in zip(e_vec, f_vec))
        if lat.nsigma_coords(diff) is not None:
            out.append(f_vec)
    return out


def test_minuscule_examples_and_oracle():
    assert sg.is_minuscule(AX, AX.unit_color("D1"))
    assert not sg.is_minuscule(AX, (0, 0, 2))
    assert sg.is_minuscule(S14, S14.unit_color("D1"))
    assert sg.is_minuscule(S14, S14.unit_color("D2"))
    rng = random.Random(5)
    for system in (AX, S14):
        ncol = len(system.colors)
        for _ in range(60):
            e_vec = tuple(rng.randint(0, 3) for _ in range(ncol))
            assert sg.is_minuscule(system, e_vec) == (not brute_force_dominated(system, e_vec, 3))


def test_sections_examples():
    assert sg.sections_decomposition(AX, (0, 0, 2)) == [(0, 0, 2), (0, 0, 0)]
    assert sg.sections_decomposition(AX, AX.unit_color("D1")) == [(1, 0, 0)]
    got = sg.sections_decomposition(S14, S14.color_sum("D1", "D2"))
    assert got == [(1, 1, 0, 0, 0), (0, 0, 1, 0, 0)]


def test_sections_match_brute_force():
    rng = random.Random(6)
    for system in (AX, S14):
        ncol = len(system.colors)
        for _ in range(40):
            e_vec = tuple(rng.randint(0, 3) for _ in range(ncol))
            got = set(sg.sections_decomposition(system, e_vec))
            expected = set(brute_force_dominated(system, e_vec, 3)) | {e_vec}
            assert got == expected


def test_positive_part_height():
    assert sg.positive_part_height((1, -2, 3)) == ((1, 0, 3), 2)
    assert sg.positive_part_height((0, 0, 0)) == ((0, 0, 0), 0)
    plus, _ = sg.positive_part_height((-1, 1, 1))
    assert plus == (0, 1, 1) and sum(plus) == 2


def test_covering_differences_case14():
    covers = sg.covering_differences(S14, 2)
    assert (1, 0, 0) in covers          # sigma_1 covers D3 <= D1 + D2
    for c in covers:
        gamma = sg.lattice(S14).colors_of(c)
        plus, _ = sg.positive_part_height(gamma)
        assert sum(plus) == 2


def test_covering_differences_bound_one_nonzero():
    for system in (AX, S14):
        for c in sg.covering_differences(system, 1):
            assert any(c)


def test_gamma_semigroup_case14():
    gens = sg.gamma_semigroup(S14, 3)
    keys = {g.key() for g in gens}
    u = S14.unit_color
    assert keys == {(1, 0, u("D1")), (0, 1, u("D2")), (1, 1, u("D3")),
                    (2, 0, u("D4")), (0, 2, u("D5"))}


def test_gamma_semigroup_degree_zero():
    assert sg.gamma_semigroup(S14, 0) == []


def test_gamma_semigroup_closure():
    """Every member decomposes over the returned generators."""
    for system, deg in ((S14, 3), (sp.system_case_1_6(4, 4, 1, 1), 4)):
        gens = [g.as_tuple() for g in sg.gamma_semigroup(system, deg)]
        d1, d2 = system.designated
        lat = sg.lattice(system)
        members = []
        for n1 in range(deg + 1):
            for n2 in range(deg + 1 - n1):
                target = tuple(n1 * a + n2 * b for a, b in zip(d1, d2))
                for c in lat.enumerate_sub(target):
                    e_vec = tuple(x - y for x, y in zip(target, lat.colors_of(c)))
                    members.append((n1, n2) + e_vec)

        def decomposes(m, pool):
            if not any(m):
                return True
            for g in pool:
                if all(x <= y for x, y in zip(g, m)):
                    if decomposes(tuple(y - x for x, y in zip(g, m)), pool):
                        return True
            return False

        for m in members:
            assert decomposes(m, gens), (system.name, m)


def test_gamma_sigma_case14():
    gens = sg.gamma_sigma_semigroup(S14, 4)
    assert gens == [(1, 0, 0), (1, 0, 1), (1, 1, 0)]


def test_gamma_sigma_membership_condition_case14():
    # a1 s1 + a2 s2 + a3 s3 has supp(+) in {D1, D2} iff a1 >= a2 + a3.
    lat = sg.lattice(S14)
    for a1, a2, a3 in itertools.product(range(4), repeat=3):
        gamma = lat.colors_of((a1, a2, a3))
        cond = all(x <= 0 for i, x in enumerate(gamma) if S14.colors[i] not in ("D1", "D2"))
        assert cond == (a1 >= a2 + a3)


def test_closed_form_16_examples():
    params = dict(p=4, q=4, r=1, s=1)
    tw = sp.two_wing_structure("1.6", **params)
    gens = {g.key() for g in sg.closed_form_generators("1.6", params)}
    e11 = tuple(a + b for a, b in zip(tw.tilde(1, 1), tw.tilde(2, 1)))
    assert (1, 1, e11) in gens
    # gamma_{1,1} really is sigma^1_2 + sigma^2_2 + tau
    lat = sg.lattice(tw.system)
    target = tuple(a + b - e for a, b, e in zip(tw.d1, tw.d2, e11))
    coords = dict(zip(tw.system.sigma_names, lat.nsigma_coords(target)))
    assert coords == {"s1_1": 0, "s1_2": 1, "s2_1": 0, "s2_2": 1, "tau": 1}


def test_closed_form_boundary_exclusion():
    r, s = 1, 1
    params = dict(p=5, q=r + s + 1, r=r, s=s)
    gens = sg.closed_form_generators("1.6", params)
    degrees = {(g.n1, g.n2) for g in gens}
    assert (r + 1, s + 1) not in degrees
    generic = {(g.n1, g.n2) for g in
               sg.closed_form_generators("1.6", dict(p=5, q=5, r=r, s=s))}
    assert (r + 1, s + 1) in generic


def test_closed_form_unknown_case():
    with pytest.raises(ValueError):
        sg.closed_form_generators("9.9", {})


def test_hilbert_basis_stable_beyond_proposition_degree():
    # no new generators appear one degree past the closed-form maximum
    for params in (dict(p=4, q=4, r=1, s=1), dict(p=5, q=4, r=1, s=1)):
        system = sg.build_case_system("1.6", params)
        enum = sorted(g.key() for g in sg.gamma_semigroup(system, 5))
        closed = sorted(g.key() for g in sg.closed_form_generators("1.6", params))
        assert enum == closed


def test_witness_generator_decomposes_as_itself():
    params = dict(p=4, q=4, r=1, s=1)
    tw = sp.two_wing_structure("1.6", **params)
    gamma = sg._gamma_ij_vec(tw, 1, 1)
    coeffs, _ = sg.witness_decomposition("1.6", params, gamma)
    assert coeffs == {("gij", 1, 1): 1}


def test_witness_sum_and_membership_error():
    params = dict(p=5, q=5, r=1, s=1)
    tw = sp.two_wing_structure("1.6", **params)
    gamma = tuple(a + b for a, b in zip(sg._gamma_ij_vec(tw, 1, 1), sg._gamma_k_vec(tw, 1, 2)))
    coeffs, _ = sg.witness_decomposition("1.6", params, gamma)
    assert sum(coeffs.values()) >= 2
    bad = tuple(1 if nm == "s1_1" else 0 for nm in tw.system.sigma_names)
    with pytest.raises(ValueError):
        sg.witness_decomposition("1.6", params, bad)


def test_witness_boundary_internals():
    # boundary regime with both wings: the c1/c2/b values satisfy the
    # constraint relation c1 - c2 = a^2_{2r2} - a^1_{2r1}.
    params = dict(p=6, q=4, r=2, s=1)
    tw = sp.two_wing_structure("1.6", **params)
    names = tw.system.sigma_names
    rng = random.Random(9)
    lat = sg.lattice(tw.system)
    gens = sg.closed_form_generators("1.6", params)
    d1, d2 = tw.system.designated
    gvecs = [lat.nsigma_coords(tuple(g.n1 * a + g.n2 * b - e
                                     for a, b, e in zip(d1, d2, g.E))) for g in gens]
    seen_branch = False
    for _ in range(60):
        c = [0] * len(names)
        for gv in gvecs:
            m = rng.randint(0, 2)
            for t in range(len(c)):
                c[t] += m * gv[t]
        coeffs, internals = sg.witness_decomposition("1.6", params, tuple(c))
        if not internals:
            continue
        a1r = c[names.index(f"s1_{2 * tw.r1}")]
        a2r = c[names.index(f"s2_{2 * tw.r2}")]
        assert internals["c1"] - internals["c2"] == a2r - a1r
        assert internals["c1"] <= 0 and internals["c2"] <= 0 and internals["b"] >= 0
        if a1r != a2r:
            seen_branch = True
    assert seen_branch


def test_witness_case14():
    coeffs, _ = sg.witness_decomposition("1.4", {"p": 5}, (3, 1, 1))
    assert coeffs == {("g12",): 1, ("g13",): 1, ("g1",): 1}
    with pytest.raises(ValueError):
        sg.witness_decomposition("1.4", {"p": 5}, (1, 1, 1))


def test_normality_encoded_systems():
    assert sg.normality_check(AX)["normal"]
    assert sg.normality_check(S14)["normal"]
    assert sg.normality_check(sp.system_case_1_6(5, 4, 1, 1))["normal"]


def test_normality_synthetic_failure_and_vacuous():
    bad = AX.with_designated((0, 0, 2), None)
    res = sg.normality_check(bad)
    assert not res["normal"] and res["witnesses"]["Dp1"] == (0, 0, 0)
    vac = AX.with_designated(None, None)
    assert sg.normality_check(vac)["normal"]


def test_weight_semigroup_ax111():
    lam1 = sp.AX111_COLOR_WEIGHTS["D1"]
    lam2 = sp.AX111_COLOR_WEIGHTS["D2"]
    out = sg.weight_semigroup(AX, lam1, lam2, sp.AX111_COLOR_WEIGHTS, 2)
    by_key = {(g.n1, g.n2, g.E): w for g, w in out}
    assert by_key[(1, 0, AX.unit_color("D1"))] == lam1
    assert by_key[(0, 1, AX.unit_color("D2"))] == lam2
    # generator (1, 1, 2 D3): weight = lam1 + lam2 - omega(sigma_3)
    e = tuple(2 * x for x in AX.unit_color("D3"))
    if (1, 1, e) in by_key:
        expected = tuple(a + b - c for a, b, c in zip(lam1, lam2, (0, 0, 2)))
        assert by_key[(1, 1, e)] == expected
    with pytest.raises(ValueError):
        sg.weight_semigroup(AX, lam1, lam2, {"D1": (0, 1, 1)}, 2)


def test_weight_semigroup_needs_designated():
    with pytest.raises(ValueError):
        sg.gamma_semigroup(sp.system_ay_a_ay(1, 1, 1), 2)
