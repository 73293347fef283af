import math
import random
from fractions import Fraction

import pytest

from nakamura import forms
from nakamura.cohomology import (
    AlbaneseVerdict,
    Family,
    PKahlerStatus,
    admissible_character_set,
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
    is_admissible,
    pkahler_status,
)
from nakamura.model import ManifoldSpec, SpecError, TauSpec
from nakamura.scalars import RationalVector

from support import (
    make_spec,
    random_spec,
    spec_n2_generic,
    spec_n2_special,
    spec_n3_mixed,
    torus2,
    vec,
)


def test_character_of():
    s = spec_n3_mixed()
    assert character_of(s, {1}, set()) == vec(1)
    assert character_of(s, {1, 3}, {2}) == vec(0)
    assert character_of(s, {1}, {1}) == vec(2)
    with pytest.raises(SpecError):
        character_of(s, {0}, set())
    with pytest.raises(SpecError):
        character_of(s, [1, 1], set())


def test_is_admissible_generic():
    s = spec_n2_generic()
    assert is_admissible(s, vec(0))
    assert not is_admissible(s, vec(1))
    assert not is_admissible(s, vec(Fraction(-1, 3)))


def test_is_admissible_special():
    s = spec_n2_special()  # tau triple ((1), 0, 1), gcd = 1
    assert is_admissible(s, vec(0))
    assert is_admissible(s, vec(1))
    assert is_admissible(s, vec(-2))
    assert not is_admissible(s, vec(Fraction(1, 2)))

    halves = make_spec([(1,), (-1,)], tau=TauSpec.special(vec(1), 2, 4))
    # gcd(h, k) = 2, so r = 1/2 becomes admissible
    assert is_admissible(halves, vec(Fraction(1, 2)))
    assert not is_admissible(halves, vec(Fraction(1, 4)))


def test_is_admissible_off_line_character():
    s = make_spec(
        [(1, 0), (0, 1), (-1, -1)],
        tau=TauSpec.special(vec(1, 0), 0, 1),
    )
    assert is_admissible(s, vec(1, 0))
    assert not is_admissible(s, vec(0, 1))


def test_dolbeault_generators_listing():
    s = spec_n2_generic()
    gens_10 = dolbeault_generators(s, 1, 0)
    assert len(gens_10) == 1
    assert gens_10[0].family is Family.PHI0
    assert gens_10[0].I == () and gens_10[0].J == ()

    gens_11 = dolbeault_generators(s, 1, 1)
    assert [(g.family, g.I, g.J) for g in gens_11] == [
        (Family.PLAIN, (1,), (2,)),
        (Family.PLAIN, (2,), (1,)),
        (Family.BOTH, (), ()),
    ]

    t = torus2()
    gens_01 = dolbeault_generators(t, 0, 1)
    assert len(gens_01) == 3

    with pytest.raises(SpecError):
        dolbeault_generators(s, 4, 0)


def test_generator_forms_are_dbar_closed():
    rng = random.Random(41)
    for _ in range(10):
        s = random_spec(rng, max_n=3)
        for p in range(s.n + 2):
            for q in range(s.n + 2):
                for desc in dolbeault_generators(s, p, q):
                    form = generator_form(s, desc)
                    assert form.bidegree() == (p, q)
                    assert forms.dbar(form).is_zero()


def test_hodge_table_generic_frozen():
    table = hodge_table(spec_n2_generic())
    assert table.entries == (
        (1, 1, 1, 1),
        (1, 3, 3, 1),
        (1, 3, 3, 1),
        (1, 1, 1, 1),
    )
    assert table.degree_sums() == (1, 2, 5, 8, 5, 2, 1)
    assert table.entry(1, 2) == 3


def test_hodge_table_special_binomial():
    table = hodge_table(spec_n2_special())
    for p in range(4):
        for q in range(4):
            assert table.entry(p, q) == math.comb(3, p) * math.comb(3, q)


def test_hodge_table_torus_binomial():
    table = hodge_table(torus2())
    for p in range(4):
        for q in range(4):
            assert table.entry(p, q) == math.comb(3, p) * math.comb(3, q)


def test_hodge_symmetries_on_random_specs():
    rng = random.Random(43)
    for _ in range(25):
        s = random_spec(rng, max_n=4)
        hodge_table(s).check_symmetries()


def test_frolicher_generic_degenerates():
    rep = frolicher_degenerates(spec_n2_generic())
    assert rep.holds and rep.witness is None
    assert bool(ddbar_lemma(spec_n2_generic()))


def test_frolicher_special_fails_with_witness():
    rep = frolicher_degenerates(spec_n2_special())
    assert not rep.holds
    assert rep.witness == ((1,), ())
    assert rep.witness_character == vec(1)
    # the witness really is an admissible nonzero character
    s = spec_n2_special()
    assert is_admissible(s, rep.witness_character)
    assert not rep.witness_character.is_zero()
    assert not bool(ddbar_lemma(s))


def test_frolicher_iff_degree_sums_match_betti():
    rng = random.Random(47)
    for _ in range(30):
        s = random_spec(rng, max_n=4)
        sums = hodge_table(s).degree_sums()
        betti = betti_numbers(s)
        assert all(a >= b for a, b in zip(sums, betti))
        assert (sums == betti) == bool(frolicher_degenerates(s))


def test_betti_frozen_values():
    assert betti_numbers(spec_n2_generic()) == (1, 2, 5, 8, 5, 2, 1)
    # tau cannot change Betti numbers
    assert betti_numbers(spec_n2_special()) == (1, 2, 5, 8, 5, 2, 1)
    assert betti_numbers(torus2()) == tuple(math.comb(6, k) for k in range(7))
    torus1 = make_spec([(0,)])
    assert betti_numbers(torus1) == (1, 4, 6, 4, 1)


def test_betti_palindrome_and_euler():
    rng = random.Random(53)
    for _ in range(30):
        s = random_spec(rng, max_n=4)
        betti = betti_numbers(s)
        assert betti == betti[::-1]
        assert sum((-1) ** k * b for k, b in enumerate(betti)) == 0
        assert betti[0] == 1


def test_ce_oracle_matches_betti():
    cases = [
        spec_n2_generic(),
        spec_n2_special(),
        torus2(),
        make_spec([(0,)]),
        spec_n3_mixed(),
        make_spec([(1, 0), (0, 1), (-1, -1)]),
    ]
    rng = random.Random(59)
    cases += [random_spec(rng, max_n=3) for _ in range(6)]
    for s in cases:
        assert ce_betti_oracle(s) == betti_numbers(s)


def test_admissible_character_set_special():
    rep = admissible_character_set(spec_n2_special())
    assert rep.base == vec(1)
    assert [c.multiple for c in rep.classes] == [-2, -1, 0, 1, 2]
    by_multiple = {c.multiple: c for c in rep.classes}
    assert by_multiple[0].witness == ((), ())
    assert by_multiple[1].witness == ((1,), ())
    assert by_multiple[2].character == vec(2)


def test_admissible_character_set_generic_and_torus():
    rep = admissible_character_set(spec_n2_generic())
    assert rep.base is None
    assert len(rep.classes) == 1
    assert rep.classes[0].character.is_zero()

    rep_torus = admissible_character_set(
        torus2(tau=TauSpec.special(vec(1), 0, 1))
    )
    assert [c.multiple for c in rep_torus.classes] == [0]


def test_admissible_character_set_respects_gcd():
    s = make_spec([(1,), (-1,)], tau=TauSpec.special(vec(1), 2, 4))
    rep = admissible_character_set(s)
    assert rep.base == vec(Fraction(1, 2))
    # realizable characters are -2..2 times (1), i.e. multiples -4..4 of 1/2
    assert [c.multiple for c in rep.classes] == [-4, -2, 0, 2, 4]


def test_deformation_dimensions():
    rep = deformation_dimension(spec_n2_generic())
    assert (rep.h1n, rep.unobstructed) == (3, True)
    assert rep.closed_form_value == 3

    rep2 = deformation_dimension(spec_n2_special())
    assert (rep2.h1n, rep2.unobstructed) == (9, False)
    assert rep2.closed_form_value is None

    rep3 = deformation_dimension(torus2())
    assert (rep3.h1n, rep3.unobstructed) == (9, True)


def test_albanese_verdicts():
    rep = albanese_verdict(spec_n2_generic())
    assert (rep.h10, rep.verdict) == (1, AlbaneseVerdict.ISOMORPHISM)

    rep2 = albanese_verdict(spec_n2_special())
    assert (rep2.h10, rep2.verdict) == (3, AlbaneseVerdict.UNKNOWN)

    rep3 = albanese_verdict(spec_n3_mixed())
    assert (rep3.h10, rep3.verdict) == (2, AlbaneseVerdict.UNKNOWN)


def test_albanese_h10_matches_hodge():
    rng = random.Random(61)
    for _ in range(20):
        s = random_spec(rng, max_n=4)
        assert albanese_verdict(s).h10 == hodge_table(s).entry(1, 0)


def test_pkahler_torus():
    for p in (1, 2, 3):
        assert pkahler_status(torus2(), p).status is PKahlerStatus.TORUS_ALL_P


def test_pkahler_negative_with_verified_witness():
    s = spec_n2_generic()
    rep = pkahler_status(s, 1)
    assert rep.status is PKahlerStatus.NOT_P_KAHLER
    assert rep.witness == forms.wedge(forms.phi(s, 0), forms.phi(s, 1))
    # the verification data: d(primitive) == scalar * (theta ^ conj(theta))
    theta_pair = rep.witness.wedge(forms.conjugate(rep.witness))
    assert forms.d(rep.primitive) == rep.scalar * theta_pair
    assert not rep.scalar.is_zero()


def test_pkahler_positive_cases():
    s = spec_n2_generic()
    rep2 = pkahler_status(s, 2)
    assert rep2.status is PKahlerStatus.P_KAHLER
    assert rep2.witness == forms.balanced_omega(s)
    rep3 = pkahler_status(s, 3)
    assert rep3.status is PKahlerStatus.P_KAHLER
    with pytest.raises(SpecError):
        pkahler_status(s, 0)
    with pytest.raises(SpecError):
        pkahler_status(s, 4)


def test_pkahler_mixed_weights():
    s = spec_n3_mixed()
    for p in (1, 2):
        rep = pkahler_status(s, p)
        assert rep.status is PKahlerStatus.NOT_P_KAHLER
        theta_pair = rep.witness.wedge(forms.conjugate(rep.witness))
        assert forms.d(rep.primitive) == rep.scalar * theta_pair
    assert pkahler_status(s, 3).status is PKahlerStatus.P_KAHLER


def test_enumeration_cap(monkeypatch):
    lams = tuple(RationalVector.zero(0) for _ in range(17))
    big = ManifoldSpec(lambdas=lams, basis_dim=0, tau=TauSpec.generic())
    with pytest.raises(SpecError):
        dolbeault_generators(big, 0, 0)
    monkeypatch.setenv("NAKAMURA_MAX_N", "18")
    assert len(dolbeault_generators(big, 0, 0)) == 1
    monkeypatch.setenv("NAKAMURA_MAX_N", "not-a-number")
    with pytest.raises(SpecError):
        dolbeault_generators(big, 0, 0)
