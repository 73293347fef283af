"""Shared builders for the test suite: canned specs and random generators."""

from fractions import Fraction

from nakamura.forms import ANTI, HOLO, InvariantForm
from nakamura.model import ManifoldSpec, TauSpec
from nakamura.scalars import Poly, RationalVector


def vec(*coords):
    return RationalVector(coords)


def make_spec(lambdas, tau=None, basis_dim=None, lattice=None):
    lams = tuple(vec(*l) if isinstance(l, tuple) else l for l in lambdas)
    dim = basis_dim if basis_dim is not None else lams[0].dim
    return ManifoldSpec(
        lambdas=lams,
        basis_dim=dim,
        tau=tau if tau is not None else TauSpec.generic(),
        lattice=lattice,
    )


def spec_n2_generic():
    return make_spec([(1,), (-1,)])


def spec_n2_special():
    return make_spec([(1,), (-1,)], tau=TauSpec.special(vec(1), 0, 1))


def torus2(tau=None):
    return make_spec([(0,), (0,)], tau=tau)


def spec_n3_mixed():
    return make_spec([(1,), (0,), (-1,)])


def random_spec(rng, max_n=4, allow_torus=True):
    """A random valid spec: balanced weights plus a random tau variant."""
    n = rng.randint(1, max_n)
    d = rng.randint(1, 2)
    while True:
        lams = [
            vec(*[Fraction(rng.randint(-2, 2)) for _ in range(d)])
            for _ in range(n - 1)
        ]
        total = RationalVector.zero(d)
        for lam in lams:
            total = total + lam
        lams.append(-total)
        if allow_torus or not all(l.is_zero() for l in lams):
            break
    if rng.random() < 0.5:
        tau = TauSpec.generic()
    else:
        while True:
            c = vec(*[Fraction(rng.randint(-2, 2)) for _ in range(d)])
            if not c.is_zero():
                break
        h = rng.randint(-3, 3)
        k = rng.choice([x for x in range(-3, 4) if x != 0])
        # keep the asserted sign c*k > 0 consistent when it is determined
        if all(x >= 0 for x in c.coords):
            k = abs(k)
        elif all(x <= 0 for x in c.coords):
            k = -abs(k)
        tau = TauSpec.special(c, h, k)
    return make_spec(lams, tau=tau, basis_dim=d)


def random_character(spec, rng):
    return vec(*[Fraction(rng.randint(-2, 2)) for _ in range(spec.basis_dim)])


def random_poly(spec, rng):
    names = ["u"] + [f"b{j + 1}" for j in range(spec.basis_dim)]
    terms = {}
    for _ in range(rng.randint(1, 3)):
        mono = tuple(
            (name, rng.randint(1, 2)) for name in names if rng.random() < 0.4
        )
        terms[mono] = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
    return Poly(terms) + Poly.constant(rng.randint(-2, 2))


def random_form(spec, rng, max_terms=3, degree=None):
    """A random invariant form, optionally of one total degree."""
    all_gens = [(HOLO, i) for i in range(spec.n + 1)] + [
        (ANTI, i) for i in range(spec.n + 1)
    ]
    total = InvariantForm.zero(spec)
    for _ in range(rng.randint(1, max_terms)):
        if degree is None:
            size = rng.randint(0, len(all_gens))
        else:
            size = degree
        gens = tuple(sorted(rng.sample(all_gens, size)))
        term = InvariantForm.monomial(
            spec,
            gens,
            character=random_character(spec, rng),
            coeff=random_poly(spec, rng),
        )
        total = total + term
    return total
