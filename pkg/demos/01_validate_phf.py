"""Build a small PHF by hand, validate it, then break it."""
from phfanon import PhfArray, component_set, is_balanced, separating_rows, validate_phf

# three rows over six columns, two symbols per row
array = PhfArray.from_rows([
    [1, 1, 1, 2, 2, 2],
    [1, 1, 2, 1, 2, 2],
    [1, 2, 2, 1, 1, 2],
], t=2)

print("dimensions l, n, m, t:", array.l, array.n, array.m, array.t)
print("perfect hash family:", validate_phf(array).is_phf)
print("balanced:", is_balanced(array))
print("rows separating participants 1 and 4:", separating_rows(array, (1, 4)))
print("holders of component (1, 2):", component_set(array, 1, 2).indices)

# make columns 1 and 2 identical; no row can separate them any more
broken = PhfArray.from_rows([
    [1, 1, 1, 2, 2, 2],
    [1, 1, 2, 1, 2, 2],
    [1, 1, 2, 1, 1, 2],
], t=2)
report = validate_phf(broken)
print("broken copy is a PHF:", report.is_phf, "first bad group:", report.witness)
