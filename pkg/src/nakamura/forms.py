"""Exact calculus of invariant forms on a split Nakamura manifold.

The invariant coframe consists of one-forms ``phi0 .. phin`` of type (1,0)
and their conjugates ``phibar0 .. phibarn``.  Every form handled here is a
finite sum of terms

    P(u, b) * f[c] * (wedge of distinct coframe generators)

where ``P`` is a polynomial coefficient (:class:`~nakamura.scalars.Poly`),
``c`` is a character (a rational vector over the basis symbols) standing for
the invariant function ``f_c``, and the wedge monomial is kept sorted in the
fixed generator order ``phi0 < phi1 < .. < phin < phibar0 < .. < phibarn``.

The differentials are determined by four exact rules and the Leibniz rule:

* ``dbar(phi_i)  =  lambda_i * u * phi_i ^ phibar0``      (i >= 1)
* ``del(phi_i)   =  lambda_i * (u - 1) * phi0 ^ phi_i``   (i >= 1)
* the conjugate rules for ``phibar_i``, with ``conj(u) = 1 - u``
* ``dbar(f_c) = u * c * f_c * phibar0`` and
  ``del(f_c) = (u - 1) * c * f_c * phi0``

``phi0`` and ``phibar0`` are d-closed.  Here ``u`` abbreviates the constant
``tau / (tau - conj(tau))``; it is constant on the manifold, so polynomial
coefficients pass through the differentials untouched.  Everything below is
exact rational arithmetic and the operators ``del`` and ``dbar`` square to
zero on the nose, a fact the test suite checks on random forms.

``del`` is a Python keyword, so the holomorphic differential is exported as
:func:`del_`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Tuple, Union

from .model import ManifoldSpec, SpecError, require_valid
from .scalars import (
    Poly,
    Rational,
    RationalVector,
    U,
    poly_conjugate,
    qvector_poly,
)

HOLO = 0
ANTI = 1

Generator = Tuple[int, int]  # (HOLO or ANTI, index 0..n)
WedgeMonomial = Tuple[Generator, ...]
TermKey = Tuple[RationalVector, WedgeMonomial]

ScalarLike = Union[Poly, Rational, int]


def _wedge_monomials(
    m1: WedgeMonomial, m2: WedgeMonomial
) -> Optional[Tuple[int, WedgeMonomial]]:
    """Merge two sorted monomials; None on a repeated generator."""
    out = []
    sign = 1
    i = j = 0
    while i < len(m1) and j < len(m2):
        if m1[i] == m2[j]:
            return None
        if m1[i] < m2[j]:
            out.append(m1[i])
            i += 1
        else:
            if (len(m1) - i) % 2:
                sign = -sign
            out.append(m2[j])
            j += 1
    out.extend(m1[i:])
    out.extend(m2[j:])
    return sign, tuple(out)


def _generator_name(g: Generator) -> str:
    kind, idx = g
    return f"phi{idx}" if kind == HOLO else f"phibar{idx}"


class InvariantForm:
    """A finite sum of invariant form terms over one manifold spec.

    Immutable; all arithmetic returns fresh objects.  Binary operations insist
    that both operands belong to the same spec.
    """

    __slots__ = ("spec", "terms")

    def __init__(self, spec: ManifoldSpec, terms=None):
        clean: dict[TermKey, Poly] = {}
        if terms:
            for (char, mono), coeff in terms.items():
                coeff = Poly.coerce(coeff)
                if coeff.is_zero():
                    continue
                key = (char, tuple(mono))
                if key in clean:
                    merged = clean[key] + coeff
                    if merged.is_zero():
                        del clean[key]
                    else:
                        clean[key] = merged
                else:
                    clean[key] = coeff
        object.__setattr__(self, "spec", spec)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("InvariantForm is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, spec: ManifoldSpec) -> "InvariantForm":
        return cls(spec)

    @classmethod
    def one(cls, spec: ManifoldSpec) -> "InvariantForm":
        zero_char = RationalVector.zero(spec.basis_dim)
        return cls(spec, {(zero_char, ()): Poly.constant(1)})

    @classmethod
    def monomial(
        cls,
        spec: ManifoldSpec,
        generators: Iterable[Generator],
        character: Optional[RationalVector] = None,
        coeff: ScalarLike = 1,
    ) -> "InvariantForm":
        gens = tuple(generators)
        for kind, idx in gens:
            if kind not in (HOLO, ANTI) or not (0 <= idx <= spec.n):
                raise SpecError(f"no coframe generator ({kind}, {idx})")
        if sorted(gens) != list(gens) or len(set(gens)) != len(gens):
            raise SpecError("generators must be strictly increasing")
        if character is None:
            character = RationalVector.zero(spec.basis_dim)
        if character.dim != spec.basis_dim:
            raise SpecError("character dimension differs from basis_dim")
        return cls(spec, {(character, gens): Poly.coerce(coeff)})

    # -- inspection ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def term_items(self):
        """Terms in a deterministic order: by monomial, then character."""
        return sorted(
            self.terms.items(),
            key=lambda kv: (len(kv[0][1]), kv[0][1], kv[0][0].coords),
        )

    def bidegree(self) -> Optional[Tuple[int, int]]:
        """The (p, q) type, None for the zero form, error when mixed."""
        degrees = set()
        for (_, mono) in self.terms:
            p = sum(1 for kind, _ in mono if kind == HOLO)
            q = len(mono) - p
            degrees.add((p, q))
        if not degrees:
            return None
        if len(degrees) > 1:
            raise SpecError(f"form mixes bidegrees {sorted(degrees)}")
        return degrees.pop()

    def degree(self) -> Optional[int]:
        """Total degree, None for the zero form, error when mixed."""
        degrees = {len(mono) for (_, mono) in self.terms}
        if not degrees:
            return None
        if len(degrees) > 1:
            raise SpecError(f"form mixes degrees {sorted(degrees)}")
        return degrees.pop()

    # -- ring structure -----------------------------------------------------

    def _check_spec(self, other: "InvariantForm") -> None:
        if self.spec != other.spec:
            raise SpecError("forms belong to different manifold specs")

    def __add__(self, other: "InvariantForm") -> "InvariantForm":
        if not isinstance(other, InvariantForm):
            return NotImplemented
        self._check_spec(other)
        merged = dict(self.terms)
        for key, coeff in other.terms.items():
            merged[key] = merged.get(key, Poly()) + coeff
        return InvariantForm(self.spec, merged)

    def __sub__(self, other: "InvariantForm") -> "InvariantForm":
        if not isinstance(other, InvariantForm):
            return NotImplemented
        return self + (-other)

    def __neg__(self) -> "InvariantForm":
        return InvariantForm(
            self.spec, {key: -coeff for key, coeff in self.terms.items()}
        )

    def __mul__(self, scalar: ScalarLike) -> "InvariantForm":
        if not isinstance(scalar, (Poly, int, Fraction)):
            return NotImplemented
        scalar = Poly.coerce(scalar)
        return InvariantForm(
            self.spec, {key: coeff * scalar for key, coeff in self.terms.items()}
        )

    __rmul__ = __mul__

    def wedge(self, other: "InvariantForm") -> "InvariantForm":
        if not isinstance(other, InvariantForm):
            raise TypeError("wedge expects an InvariantForm")
        self._check_spec(other)
        out: dict[TermKey, Poly] = {}
        for (c1, m1), p1 in self.terms.items():
            for (c2, m2), p2 in other.terms.items():
                merged = _wedge_monomials(m1, m2)
                if merged is None:
                    continue
                sign, mono = merged
                key = (c1 + c2, mono)
                out[key] = out.get(key, Poly()) + sign * p1 * p2
        return InvariantForm(self.spec, out)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, InvariantForm)
            and self.spec == other.spec
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        return hash((self.spec, frozenset(self.terms.items())))

    # -- rendering ----------------------------------------------------------

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        pieces = []
        for (char, mono), coeff in self.term_items():
            factors = []
            if len(coeff.terms) > 1:
                factors.append(f"({coeff})")
            elif coeff != Poly.constant(1):
                factors.append(str(coeff))
            if not char.is_zero():
                factors.append(f"f[c={char}]")
            if mono:
                factors.append("^".join(_generator_name(g) for g in mono))
            if not factors:
                factors.append("1")
            pieces.append(" * ".join(factors))
        return "  +  ".join(pieces)

    def __repr__(self) -> str:
        return f"InvariantForm({self})"


# ---------------------------------------------------------------------------
# coframe constructors
# ---------------------------------------------------------------------------


def phi(spec: ManifoldSpec, i: int) -> InvariantForm:
    """The (1,0) coframe generator ``phi_i``, ``0 <= i <= n``."""
    return InvariantForm.monomial(spec, [(HOLO, i)])


def phibar(spec: ManifoldSpec, i: int) -> InvariantForm:
    """The (0,1) coframe generator ``phibar_i``, ``0 <= i <= n``."""
    return InvariantForm.monomial(spec, [(ANTI, i)])


def character_function(spec: ManifoldSpec, c: RationalVector) -> InvariantForm:
    """The invariant function ``f_c`` as a 0-form."""
    return InvariantForm.monomial(spec, [], character=c)


def wedge(*factors: InvariantForm) -> InvariantForm:
    if not factors:
        raise TypeError("wedge needs at least one factor")
    result = factors[0]
    for f in factors[1:]:
        result = result.wedge(f)
    return result


# ---------------------------------------------------------------------------
# differentials
# ---------------------------------------------------------------------------


def _lambda_poly(spec: ManifoldSpec, idx: int) -> Poly:
    return qvector_poly(spec.lambdas[idx - 1])


def _dbar_generator(spec: ManifoldSpec, g: Generator):
    """dbar of one coframe generator as [(coeff, 2-generator monomial)]."""
    kind, idx = g
    if idx == 0:
        return []
    lam = _lambda_poly(spec, idx)
    if lam.is_zero():
        return []
    if kind == HOLO:
        # lambda_i * u * phi_i ^ phibar0, already in sorted order
        return [(lam * U, ((HOLO, idx), (ANTI, 0)))]
    # -lambda_i * u * phibar0 ^ phibar_i
    return [(-lam * U, ((ANTI, 0), (ANTI, idx)))]


def _del_generator(spec: ManifoldSpec, g: Generator):
    """del of one coframe generator as [(coeff, 2-generator monomial)]."""
    kind, idx = g
    if idx == 0:
        return []
    lam = _lambda_poly(spec, idx)
    if lam.is_zero():
        return []
    # lambda_i * (u - 1) * phi0 ^ (the generator), for both kinds
    return [((U - 1) * lam, ((HOLO, 0), (kind, idx)))]


def _derivation(form: InvariantForm, gen_rule, func_gen, func_scale) -> InvariantForm:
    """Extend a degree-one derivation from generators and functions.

    ``gen_rule(spec, g)`` gives the differential of a single generator;
    ``func_gen`` is the one-form generator produced by differentiating
    ``f_c`` and ``func_scale(c_poly)`` its polynomial factor.
    """
    spec = form.spec
    out: dict[TermKey, Poly] = {}

    def add(char, mono, coeff):
        key = (char, mono)
        total = out.get(key, Poly()) + coeff
        if total.is_zero():
            out.pop(key, None)
        else:
            out[key] = total

    for (char, mono), coeff in form.terms.items():
        if not char.is_zero():
            merged = _wedge_monomials((func_gen,), mono)
            if merged is not None:
                sign, new_mono = merged
                add(char, new_mono, sign * func_scale(qvector_poly(char)) * coeff)
        for pos, g in enumerate(mono):
            prefix = mono[:pos]
            suffix = mono[pos + 1:]
            pos_sign = -1 if pos % 2 else 1
            for piece_coeff, piece_mono in gen_rule(spec, g):
                first = _wedge_monomials(piece_mono, suffix)
                if first is None:
                    continue
                s1, tail = first
                second = _wedge_monomials(prefix, tail)
                if second is None:
                    continue
                s2, new_mono = second
                add(char, new_mono, pos_sign * s1 * s2 * piece_coeff * coeff)
    return InvariantForm(spec, out)


def dbar(form: InvariantForm) -> InvariantForm:
    """The (0,1) part of the exterior differential."""
    return _derivation(
        form,
        _dbar_generator,
        (ANTI, 0),
        lambda c_poly: U * c_poly,
    )


def del_(form: InvariantForm) -> InvariantForm:
    """The (1,0) part of the exterior differential (``del``)."""
    return _derivation(
        form,
        _del_generator,
        (HOLO, 0),
        lambda c_poly: (U - 1) * c_poly,
    )


def d(form: InvariantForm) -> InvariantForm:
    """The full exterior differential ``del + dbar``."""
    return del_(form) + dbar(form)


def conjugate(form: InvariantForm) -> InvariantForm:
    """Complex conjugation: swaps the coframe families, negates characters,
    and applies ``u -> 1 - u`` to polynomial coefficients."""
    out: dict[TermKey, Poly] = {}
    for (char, mono), coeff in form.terms.items():
        flipped = tuple((ANTI if kind == HOLO else HOLO, idx) for kind, idx in mono)
        sign = _sort_sign(flipped)
        key = (-char, tuple(sorted(flipped)))
        out[key] = out.get(key, Poly()) + sign * poly_conjugate(coeff)
    return InvariantForm(form.spec, out)


def _sort_sign(seq: Sequence[Generator]) -> int:
    inversions = sum(
        1
        for a in range(len(seq))
        for b in range(a + 1, len(seq))
        if seq[a] > seq[b]
    )
    return -1 if inversions % 2 else 1


# ---------------------------------------------------------------------------
# distinguished forms
# ---------------------------------------------------------------------------


def canonical_psi(spec: ManifoldSpec) -> InvariantForm:
    """The holomorphic (n+1, 0) form ``phi0 ^ phi1 ^ .. ^ phin``.

    Exactly closed because the weights sum to zero; trivializes the canonical
    bundle, which is why the Kodaira dimension verdict is 0.
    """
    require_valid(spec)
    gens = [(HOLO, i) for i in range(spec.n + 1)]
    return InvariantForm.monomial(spec, gens)


def balanced_omega(spec: ManifoldSpec) -> InvariantForm:
    """The invariant (1,1) metric form ``sum phi_i ^ phibar_i``.

    Its top power ``omega ** n`` closes exactly (again by the zero-sum of the
    weights), which is the balanced condition in complex dimension n+1.
    """
    require_valid(spec)
    total = InvariantForm.zero(spec)
    for i in range(spec.n + 1):
        total = total + wedge(phi(spec, i), phibar(spec, i))
    return total


def form_power(form: InvariantForm, exponent: int) -> InvariantForm:
    """Wedge power with a nonnegative integer exponent."""
    if exponent < 0:
        raise ValueError("negative wedge powers are not defined")
    result = InvariantForm.one(form.spec)
    for _ in range(exponent):
        result = result.wedge(form)
    return result
