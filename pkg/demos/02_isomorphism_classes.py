# %% [markdown]
# Deciding isomorphism of Witt-type algebras
#
# Two algebras with the same triple (l1, l2, l3) are isomorphic exactly when
# their grading groups lie in one orbit of the block group.  We move a
# grading group by a random block element and ask the classifier to find it.

# %%
import random

from wittkit import (NumberField, StandardSpec, Subgroup, block_act, decide_isomorphic,
                     structure_key, verify_homomorphism)
from wittkit.sampling import random_block_element, random_witt
from wittkit.serialization import format_element

K = NumberField.of([-2, 0, 1])
rng = random.Random(11)
gamma = Subgroup([[1, 0], [0, 1], [0, K.theta]], K, 2)
left = StandardSpec(1, 1, 1, gamma)
g = random_block_element(1, 1, K, rng)
right = StandardSpec(1, 1, 1, block_act(g, gamma))
print("moved basis:", [[str(c) for c in b] for b in right.gamma.basis])

# %% [markdown]
# The structure key is an orbit invariant, so both sides agree.

# %%
print(structure_key(left))
assert structure_key(left) == structure_key(right)

# %%
res = decide_isomorphic(left, right)
print(res.name, res.method, "samples checked:", res.report.samples)
sigma = res.witness
u = random_witt(left, rng)
print("u        =", format_element(u), end="")
print("sigma(u) =", format_element(sigma(u)), end="")

# %% [markdown]
# A deliberately broken map is caught by the bracket check.

# %%
report = verify_homomorphism(sigma.corrupted(), 100, seed=1)
print("corrupted passes?", report.passed)

# %% [markdown]
# Separation: Z and Z + Z sqrt 2 inside K differ in Z-rank.

# %%
a = StandardSpec(0, 0, 1, Subgroup([[1]], K, 1))
b = StandardSpec(0, 0, 1, Subgroup([[1], [K.theta]], K, 1))
res = decide_isomorphic(a, b)
print(res.name, res.reason, res.left, res.right)
