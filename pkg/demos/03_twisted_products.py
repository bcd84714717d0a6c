# %% [markdown]
# Twisted group algebras and their trivialisation
#
# A bicharacter f(a, b) = prod lambda^(a^T S b) twists the product of F[Gamma].
# Over a field the twist is a coboundary: rescaling each x^a by g(a) turns the
# twisted algebra into the plain one.

# %%
from gmpy2 import mpq

from wittkit import Cocycle, NumberField, StandardSpec, Subgroup, trivialize_cocycle
from wittkit.classifier import untwisted
from wittkit.serialization import format_element

Q = NumberField.of([0, 1])
f = Cocycle([(Q(2), [[1, 0], [0, 0]]), (Q(mpq(1, 3)), [[0, 1], [1, 0]])])
twisted = StandardSpec(0, 1, 1, Subgroup([[1, 0], [0, 1]], Q, 2), f)
plain = untwisted(twisted)

# %%
a, b = twisted.x((1, 1)), twisted.x((2, -1))
print("twisted x^a x^b =", format_element(a * b), end="")
print("plain   x^a x^b =", format_element(plain.x((1, 1)) * plain.x((2, -1))), end="")

# %% [markdown]
# g solves f(a, b) g(a + b) = g(a) g(b); transport multiplies by g.

# %%
g = trivialize_cocycle(f, twisted.gamma)
for pt in [(1, 0), (0, 1), (2, -1), (-3, 2)]:
    print(pt, "g =", g(pt))
lhs = g.transport(a * b, plain)
rhs = g.transport(a, plain) * g.transport(b, plain)
print("transport is multiplicative:", lhs == rhs)
