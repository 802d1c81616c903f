"""Walk through the core information measures on tiny hand-built PMFs.

Everything downstream (limits, policies, overheads) reduces to the handful of
queries shown here.
"""

from oppknow import JointDistribution

# Three users over a binary alphabet. Atom weights are raw counts; the
# distribution normalizes by their sum, so {(0,0,0): 2, ...} over total 4
# means P(0,0,0) = 1/2.
dist = JointDistribution(3, 2, {(0, 0, 0): 2, (1, 0, 1): 1, (1, 1, 0): 1})

print("atoms:", dist.atoms)
print()

# Subset entropies: how much uncertainty a group of users carries jointly.
print("H(X0)        =", dist.subset_entropy([0]), "bits")
print("H(X0,X1)     =", dist.subset_entropy([0, 1]), "bits")
print("H(X0,X1,X2)  =", dist.subset_entropy([0, 1, 2]), "bits")
print()

# Conditional entropy: what user 1 still holds beyond what user 0 knows.
print("H(X1|X0)     =", dist.conditional_entropy([1], [0]), "bits")

# Mutual information: the part of user 0's knowledge that the group {1,2}
# already covers. Here X0 is a function of (X1,X2), so it is all covered.
print("I(X0;X1,X2)  =", dist.mutual_information([0], [1, 2]), "bits")
print()

# The knowledge-gain limit of a user: the joint entropy of everyone minus
# the user's own. It is the ceiling no sharing policy can beat.
for user in range(3):
    print(f"limit(user {user}) =", dist.knowledge_limit(user), "bits")
print()

# Knowledge gain for a specific holding: sources acquired so far, self
# included. Holding everyone means reaching the limit exactly.
print("gain(0, {0})     =", dist.knowledge_gain(0, [0]))
print("gain(0, {0,1})   =", dist.knowledge_gain(0, [0, 1]))
print("gain(0, {0,1,2}) =", dist.knowledge_gain(0, [0, 1, 2]))
print()

# Chain decomposition: the limit split into per-encounter conditional terms.
# Meeting users in order 0 -> 1 -> 2, each term is the fresh knowledge the
# next user contributes given everything gathered before.
terms = dist.chain_decomposition([0, 1, 2])
print("chain terms along (0,1,2):", terms)
print("sum of terms == limit(0):", sum(terms) == dist.knowledge_limit(0))
