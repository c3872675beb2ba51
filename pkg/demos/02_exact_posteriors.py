"""What an adversary learns about who reconstructed a key, computed exactly."""
from phfanon import AccessStructure, KeyId, Scheme, group_posterior, participant_posterior
from phfanon.fixtures import example_array

array = example_array("example1")
st = AccessStructure(array)
key = KeyId(1, (1, 2))
print("key", key.label(), "can be recovered by", st.recovery_set(key).q, "groups")

for scheme in Scheme:
    print(f"\n{scheme.value} scheme")
    for group, p in sorted(group_posterior(st, scheme, key).items()):
        print(f"  P(group {group} | {key.label()}) = {p}   (group recovers {st.s[group]} keys)")
    probs = participant_posterior(st, scheme, key)
    print("  participant posteriors:", ", ".join(str(p) for p in probs))
