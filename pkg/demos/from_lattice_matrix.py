"""From an integer matrix to a manifold, its weights, and its symmetries.

Any M in SL(n, Z) with positive real eigenvalues acts on a lattice and
builds a compact quotient; the weights are the logarithms of the
eigenvalues, represented exactly as vectors over fresh log symbols.  This
demo analyzes the classic matrix [[2, 1], [1, 1]] (eigenvalues are the
squared golden ratio and its inverse), assembles the manifold, and then
works with its automorphisms: verifying a deck transformation, searching
for intertwiners, and listing the finite translation-class group of a
second matrix.

Run:  python3 demos/from_lattice_matrix.py
"""

from nakamura import (
    AutCandidate,
    IntMatrix,
    RationalVector,
    TauSpec,
    analyze_integer_matrix,
    betti_numbers,
    build_spec,
    commutant_search,
    deck_conjugate,
    e_mode_space,
    GroupElement,
    h_coset_group,
    verify_candidate,
)


def main() -> None:
    m = IntMatrix([[2, 1], [1, 1]])

    print("=== eigen analysis ===")
    report = analyze_integer_matrix(m)
    print(report)
    print()

    print("=== manifold from the matrix ===")
    spec = build_spec(m, TauSpec.generic())
    print(spec)
    print("betti:", " ".join(str(b) for b in betti_numbers(spec)))
    print()

    print("=== automorphism lifts ===")
    zero = RationalVector.zero(2)
    deck = AutCandidate(t=1, a_prime=m, x1=zero, x2=zero)
    print("deck candidate (t=1, A'=M, x=0):", verify_candidate(spec, deck))

    rotation = AutCandidate(
        t=-1, a_prime=IntMatrix([[0, 1], [-1, 0]]), x1=zero, x2=zero
    )
    print("rotation candidate (t=-1):      ", verify_candidate(spec, rotation))

    g = GroupElement(beta1=(1, 0), beta2=(0, 1), a1=1, a2=0)
    print("conjugating", g)
    print("       into", deck_conjugate(spec, rotation, g))
    print()

    print("=== intertwiner search, |entries| <= 1 ===")
    for a_prime in commutant_search(spec, t=1, bound=1):
        print("  ", [list(row) for row in a_prime.entries])
    print()

    print("=== translation classes for M = [[3, 1], [2, 1]] ===")
    spec4 = build_spec(IntMatrix([[3, 1], [2, 1]]), TauSpec.generic())
    print(h_coset_group(spec4))
    print()

    print("=== exponential modes need a Special tau ===")
    special = build_spec(m, TauSpec.special(RationalVector([1]), 0, 1))
    for s, label in ((spec, "generic"), (special, "special")):
        mode = e_mode_space(s, t=1, i=1)
        print(f"  {label}: mode for weight 1 =", mode)


if __name__ == "__main__":
    main()
