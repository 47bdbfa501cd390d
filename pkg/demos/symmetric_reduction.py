"""Rewriting symmetric polynomials in the Chern classes.

Everything the fixed-point sum produces is invariant under permuting the
roots u1..ur, so it can be rewritten in the elementary symmetric
polynomials, which is exactly the Chern classes of the bundle.  This script
runs the reduction on power sums (recovering the Newton identities) and
demonstrates the round trip.
"""

from pushkit import (
    bundle_ring,
    expand_elementary,
    is_symmetric,
    reduce_to_elementary,
    root_generators,
)

RANK = 3
table = bundle_ring(RANK)
u1, u2, u3 = root_generators(table)

print("power sums in the elementary basis (Newton identities)")
print("=" * 60)
for k in range(1, 5):
    power_sum = u1.pow(k) + u2.pow(k) + u3.pow(k)
    reduced = reduce_to_elementary(power_sum)
    print(f"  p_{k} = {reduced.render()}")

print()
print("the total Chern product:")
product = (1 + u1) * (1 + u2) * (1 + u3)
print(f"  (1+u1)(1+u2)(1+u3) = {reduce_to_elementary(product).render()}")

print()
print("round trip on a richer example:")
sample = (u1 * u2 + u1 * u3 + u2 * u3).pow(2) + 5 * u1 * u2 * u3
print(f"  symmetric: {is_symmetric(sample)}")
reduced = reduce_to_elementary(sample)
print(f"  reduced:   {reduced.render()}")
print(f"  expands back exactly: {expand_elementary(reduced) == sample}")

print()
print("asymmetric input is rejected:")
try:
    reduce_to_elementary(u1 - u2)
except Exception as exc:
    print(f"  {type(exc).__name__}: {exc}")
