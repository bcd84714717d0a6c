# %% [markdown]
# Arithmetic, brackets and simplicity certificates
#
# We work over Q(sqrt 2) with one pure variable t1, one mixed direction and
# one pure grading direction, so the algebra is A = F[t1, t2] tensor F[Gamma]
# with Gamma = Z^2 + Z(sqrt 2, 0) inside F^2.

# %%
from wittkit import Derivation, NumberField, StandardSpec, Subgroup, WittElement, bracket, simplicity_certificate
from wittkit.serialization import format_element, format_spec
from wittkit.simplicity import format_certificate

K = NumberField.of([-2, 0, 1])
gamma = Subgroup([[1, 0], [0, 1], [K.theta, 0]], K, 2)
spec = StandardSpec(1, 1, 1, gamma)
print(format_spec(spec))

# %% [markdown]
# Grades are given by integer coordinates in the canonical basis of Gamma.
# Multiplication adds grades and t-exponents.

# %%
t1, t2 = spec.variable(1), spec.variable(2)
x = spec.term(1, None, coords=(1, 0, 1))
y = spec.term(1, None, coords=(0, 2, 0))
u = t1 * x + y
print("u      =", format_element(u), end="")
print("u * u  =", format_element(u * u), end="")
print("d2(u)  =", format_element(spec.operator(Derivation.standard(2))(u)), end="")

# %% [markdown]
# Elements of the Lie algebra W are sums u_i d_i; the bracket is the
# commutator of their actions on A.

# %%
w1 = WittElement.basis(spec, 2, x)
w2 = WittElement.basis(spec, 3, t2 * y)
print("[w1, w2] =", format_element(bracket(w1, w2)), end="")

# %% [markdown]
# Every nonzero u generates A as a D-stable ideal.  The certificate lists the
# operations that carry u to 1; replaying it is an independent check.

# %%
cert = simplicity_certificate(u)
print(format_certificate(cert), end="")
trace = cert.trace()
for k, v in enumerate(trace):
    print(f"step {k}: {len(v)} terms, grades {v.grades()}")
assert trace[-1] == spec.one()
