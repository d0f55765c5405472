"""Generate seeded bilinear additive systems and check the shrinking
inequality on each: the admissible density of the full pairing level is at
least delta^(2^d) * a^(-3^d) where delta is the empty-level density and a
is the largest value-space size.

Bilinear systems built from F_2^2 labels are additive by construction, so
validation must pass for every seed; the inequality is then evaluated with
exact rationals.
"""

from fractions import Fraction

import narrow2 as n2


def main() -> None:
    worst = Fraction(1)
    for seed in range(20):
        sys_ = n2.random_bilinear_system(seed=seed, d=2, sizes=(3, 4), value_dims=1)
        ok, violations = n2.validate(sys_)
        assert ok, violations
        lhs, rhs, holds = n2.verify_shrinking(sys_)
        assert holds
        margin = lhs / rhs if rhs else Fraction(0)
        worst = min(worst, margin) if seed else margin
        print(f"seed {seed:2}  lhs {str(lhs):8}  rhs {rhs}  margin {margin}")
    print(f"\nsmallest lhs/rhs ratio over 20 seeds: {worst}")

    # The equivalence structure refines a context into blocks whose squared
    # sizes recount the admissible pairs of the full level.
    sys_ = n2.random_bilinear_system(seed=0, d=2, sizes=(6, 6), value_dims=1)
    ctx = ((0, 0),)
    blocks = n2.equivalence_structure(sys_, ctx)
    print(f"\ncontext {ctx}: equivalence blocks {blocks}")
    print(f"admissible pairs recounted: {sum(len(b) ** 2 for b in blocks)}")


if __name__ == "__main__":
    main()
