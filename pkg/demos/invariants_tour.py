"""Tour of the main invariants on one manifold with two tau choices.

The weights lambda = ((1), (-1)) describe a three-fold whose complex
geometry flips character as tau moves: for Generic tau only the zero
character is admissible and the Dolbeault numbers are small; pinning tau
to the Special fiber ((1), 0, 1) makes every integer character admissible
and the table jumps to torus-like values while the first-page degeneration
fails.

Run:  python3 demos/invariants_tour.py
"""

from nakamura import (
    ManifoldSpec,
    RationalVector,
    TauSpec,
    admissible_character_set,
    albanese_verdict,
    betti_numbers,
    ce_betti_oracle,
    deformation_dimension,
    frolicher_degenerates,
    hodge_table,
    kodaira_dimension,
    pkahler_status,
)


def make_spec(tau: TauSpec) -> ManifoldSpec:
    return ManifoldSpec(
        lambdas=(RationalVector([1]), RationalVector([-1])),
        basis_dim=1,
        tau=tau,
    )


def describe(title: str, spec: ManifoldSpec) -> None:
    print(f"=== {title} ===")
    table = hodge_table(spec)
    print(table.render())
    print("degree sums:", " ".join(str(x) for x in table.degree_sums()))

    betti = betti_numbers(spec)
    print("betti:      ", " ".join(str(b) for b in betti))
    assert betti == ce_betti_oracle(spec), "independent routes must agree"

    degeneration = frolicher_degenerates(spec)
    print("first-page degeneration:", degeneration)

    print(admissible_character_set(spec))

    print("deformations:", deformation_dimension(spec))
    print("albanese:    ", albanese_verdict(spec))
    for p in (1, 2, 3):
        print("p-Kahler:    ", pkahler_status(spec, p))
    print("kodaira dimension:", kodaira_dimension(spec))
    print()


def main() -> None:
    describe("Generic tau", make_spec(TauSpec.generic()))
    describe(
        "Special tau on the fiber c=(1), h=0, k=1",
        make_spec(TauSpec.special(RationalVector([1]), 0, 1)),
    )


if __name__ == "__main__":
    main()
