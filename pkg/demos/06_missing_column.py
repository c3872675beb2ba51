"""Search for a ninth column that completes a printed 4 x 8 array.

The four target values are the zs and proportional mu and rho.
"""
from phfanon.fixtures import EXAMPLE4_TARGETS, example4_candidates

print("targets:", ", ".join(str(v) for v in EXAMPLE4_TARGETS))
for c in example4_candidates():
    mark = "match" if c.matches else ""
    print(c.column, c.balanced_counts, ", ".join(str(v) for v in c.values), mark)
matches = [c.column for c in example4_candidates() if c.matches]
print(f"{len(matches)} matching column(s):", matches)
