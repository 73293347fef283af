"""Acceptance suite: twelve exact criteria, one test (one report line) each.

Every assertion here is exact rational or integer arithmetic; nothing is
compared up to tolerance.  The randomized criteria use a fixed seed so the
suite is deterministic.
"""

import itertools
import math
import random
from fractions import Fraction

from nakamura import forms
from nakamura.automorphisms import (
    AutCandidate,
    GroupElement,
    deck_candidate,
    deck_conjugate,
    e_mode_space,
    h_coset_group,
    verify_candidate,
)
from nakamura.cohomology import (
    AlbaneseVerdict,
    PKahlerStatus,
    albanese_verdict,
    betti_numbers,
    ce_betti_oracle,
    character_of,
    ddbar_lemma,
    deformation_dimension,
    dolbeault_generators,
    frolicher_degenerates,
    generator_form,
    hodge_table,
    pkahler_status,
)
from nakamura.construct import build_spec
from nakamura.forms import (
    character_function,
    conjugate,
    d,
    dbar,
    del_,
    phi,
    phibar,
    wedge,
)
from nakamura.model import TauSpec
from nakamura.scalars import IntMatrix, RationalVector, U, qvector_poly
from nakamura.tau import canonical_triple, same_fiber, tau_from_triple

from support import (
    random_form,
    random_spec,
    spec_n2_generic,
    spec_n2_special,
    spec_n3_mixed,
    torus2,
    vec,
)

_SAMPLE = None


def randomized_sample():
    """Sixty seeded random valid specs, n <= 4, both tau variants present."""
    global _SAMPLE
    if _SAMPLE is None:
        rng = random.Random(20260822)
        _SAMPLE = [random_spec(rng, max_n=4) for _ in range(60)]
    return _SAMPLE


def test_01_hodge_table_generic():
    table = hodge_table(spec_n2_generic())
    assert table.degree_sums() == (1, 2, 5, 8, 5, 2, 1)
    assert table.entries[1][0] == 1
    assert table.entries[1][1] == 3
    assert table.entries[1][2] == 3


def test_02_hodge_table_special_every_character_admissible():
    s = spec_n2_special()
    table = hodge_table(s)
    for p in range(4):
        for q in range(4):
            assert table.entries[p][q] == math.comb(3, p) * math.comb(3, q)
    assert table.entries[0][1] == 3
    for report in (frolicher_degenerates(s), ddbar_lemma(s)):
        assert not report.holds
        assert report.witness is not None
        assert not report.witness_character.is_zero()


def test_03_degeneration_iff_degree_sums_equal_betti():
    sample = randomized_sample()
    assert len(sample) >= 50
    assert any(s.tau.is_generic() for s in sample)
    assert any(s.tau.is_special() for s in sample)
    for s in sample:
        sums = hodge_table(s).degree_sums()
        betti = betti_numbers(s)
        assert all(sums[k] >= betti[k] for k in range(len(betti)))
        assert frolicher_degenerates(s).holds == (sums == betti)


def test_04_betti_routes_agree():
    small = [s for s in randomized_sample() if s.n <= 3]
    assert len(small) >= 10
    for s in small:
        assert betti_numbers(s) == ce_betti_oracle(s)
    assert betti_numbers(spec_n2_generic()) == (1, 2, 5, 8, 5, 2, 1)
    assert betti_numbers(torus2()) == tuple(math.comb(6, k) for k in range(7))


def test_05_form_engine_identities():
    rng = random.Random(5)
    specs = [spec_n2_generic(), spec_n2_special(), spec_n3_mixed(), torus2()]
    checked = 0
    for round_no in range(25):
        s = specs[round_no % len(specs)]
        a = random_form(s, rng)
        assert d(d(a)).is_zero()
        assert del_(del_(a)).is_zero()
        assert dbar(dbar(a)).is_zero()
        assert (del_(dbar(a)) + dbar(del_(a))).is_zero()
        assert conjugate(conjugate(a)) == a
        deg_a = rng.randint(0, s.n + 1)
        deg_b = rng.randint(0, s.n + 1)
        hom_a = random_form(s, rng, degree=deg_a)
        hom_b = random_form(s, rng, degree=deg_b)
        sign = -1 if deg_a % 2 else 1
        assert d(hom_a.wedge(hom_b)) == (
            d(hom_a).wedge(hom_b) + sign * hom_a.wedge(d(hom_b))
        )
        checked += 3
    assert checked >= 100 - 25  # 75 random forms plus 25 derived wedges


def test_06_differential_formulas_replayed():
    for s in (spec_n2_generic(), spec_n2_special(), spec_n3_mixed()):
        for p in range(s.n + 2):
            for q in range(s.n + 2):
                for desc in dolbeault_generators(s, p, q):
                    assert dbar(generator_form(s, desc)).is_zero()
        indices = range(1, s.n + 1)
        for r_i in range(s.n + 1):
            for I in itertools.combinations(indices, r_i):
                for r_j in range(s.n + 1):
                    for J in itertools.combinations(indices, r_j):
                        c = character_of(s, I, J)
                        f = character_function(s, c)
                        tail = [phi(s, i) for i in I] + [
                            phibar(s, j) for j in J
                        ]
                        coeff = 2 * qvector_poly(c) * (U - 1)
                        assert del_(wedge(f, *tail)) == coeff * wedge(
                            f, phi(s, 0), *tail
                        )
                        assert del_(wedge(f, phi(s, 0), *tail)).is_zero()
                        assert del_(wedge(f, phibar(s, 0), *tail)) == (
                            coeff * wedge(f, phi(s, 0), phibar(s, 0), *tail)
                        )
                        assert del_(
                            wedge(f, phi(s, 0), phibar(s, 0), *tail)
                        ).is_zero()
        assert d(forms.canonical_psi(s)).is_zero()
        assert d(forms.form_power(forms.balanced_omega(s), s.n)).is_zero()


def test_07_symmetries_hold_everywhere():
    for s in randomized_sample():
        hodge_table(s).check_symmetries()
        betti = betti_numbers(s)
        assert sum((-1) ** k * b for k, b in enumerate(betti)) == 0
        assert betti == betti[::-1]


def test_08_deformation_dimensions():
    generic = deformation_dimension(spec_n2_generic())
    assert (generic.h1n, generic.unobstructed) == (3, True)
    special = deformation_dimension(spec_n2_special())
    assert (special.h1n, special.unobstructed) == (9, False)
    torus = deformation_dimension(torus2())
    assert (torus.h1n, torus.unobstructed) == (9, True)
    assert torus.h1n == (torus2().n + 1) ** 2


def test_09_albanese_verdicts():
    generic = albanese_verdict(spec_n2_generic())
    assert (generic.h10, generic.verdict) == (1, AlbaneseVerdict.ISOMORPHISM)
    special = albanese_verdict(spec_n2_special())
    assert (special.h10, special.verdict) == (3, AlbaneseVerdict.UNKNOWN)


def test_10_pkahler_verdicts():
    s = spec_n2_generic()
    rep1 = pkahler_status(s, 1)
    assert rep1.status is PKahlerStatus.NOT_P_KAHLER
    pair = rep1.witness.wedge(conjugate(rep1.witness))
    assert d(rep1.primitive) == rep1.scalar * pair
    assert not rep1.scalar.is_zero()
    rep2 = pkahler_status(s, 2)
    assert rep2.status is PKahlerStatus.P_KAHLER
    assert rep2.witness == forms.balanced_omega(s)
    assert pkahler_status(s, 3).status is PKahlerStatus.P_KAHLER


def test_11_automorphism_lifts():
    m = IntMatrix([[2, 1], [1, 1]])
    s = build_spec(m, TauSpec.generic())
    zero = RationalVector.zero(2)

    deck = AutCandidate(t=1, a_prime=m, x1=zero, x2=zero)
    assert verify_candidate(s, deck).ok

    rotation = AutCandidate(
        t=-1, a_prime=IntMatrix([[0, 1], [-1, 0]]), x1=zero, x2=zero
    )
    assert verify_candidate(s, rotation).ok

    assert h_coset_group(s).order == 1
    s4 = build_spec(IntMatrix([[3, 1], [2, 1]]), TauSpec.generic())
    assert h_coset_group(s4).order == 4

    rng = random.Random(11)
    pool = [deck, rotation]
    for g_pow in (-2, -1, 0, 1, 2):
        pool.append(
            deck_candidate(
                s,
                GroupElement(
                    beta1=(rng.randint(-3, 3), rng.randint(-3, 3)),
                    beta2=(rng.randint(-3, 3), rng.randint(-3, 3)),
                    a1=g_pow,
                    a2=rng.randint(-2, 2),
                ),
            )
        )
    for _ in range(1000):
        candidate = rng.choice(pool)
        g = GroupElement(
            beta1=(rng.randint(-5, 5), rng.randint(-5, 5)),
            beta2=(rng.randint(-5, 5), rng.randint(-5, 5)),
            a1=rng.randint(-3, 3),
            a2=rng.randint(-3, 3),
        )
        conjugated = deck_conjugate(s, candidate, g)
        assert isinstance(conjugated, GroupElement)

    special = build_spec(m, TauSpec.special(vec(1), 0, 1))
    assert e_mode_space(special, 1, 1) == (0, 1)
    assert e_mode_space(s, 1, 1) is None


def test_12_tau_triple_arithmetic():
    c, h, k = canonical_triple(vec(1), 2, 4)
    assert (c, h, k) == (vec(Fraction(1, 2)), 1, 2)

    rng = random.Random(12)
    bases = []
    while len(bases) < 12:
        coords = [Fraction(rng.randint(-2, 2)) for _ in range(2)]
        cv = vec(*coords)
        if cv.is_zero():
            continue
        hh = rng.randint(-3, 3)
        kk = rng.choice([x for x in range(-3, 4) if x != 0])
        if all(x >= 0 for x in coords):
            kk = abs(kk)
        elif all(x <= 0 for x in coords):
            kk = -abs(kk)
        bases.append((cv, hh, kk))

    triples = []
    while len(triples) < 100:
        cv, hh, kk = rng.choice(bases)
        mult = rng.randint(1, 3)
        triples.append(tau_from_triple(cv * mult, hh * mult, kk * mult))

    for t in triples:
        assert same_fiber(t, t)
        reduced = tau_from_triple(*canonical_triple(t.c_ref, t.h, t.k))
        assert same_fiber(t, reduced)
    for t1, t2 in itertools.combinations(triples, 2):
        assert same_fiber(t1, t2) == same_fiber(t2, t1)
    for _ in range(4000):
        t1, t2, t3 = rng.choice(triples), rng.choice(triples), rng.choice(triples)
        if same_fiber(t1, t2) and same_fiber(t2, t3):
            assert same_fiber(t1, t3)
