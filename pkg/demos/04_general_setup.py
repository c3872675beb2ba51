"""A (3, 7) threshold setup that is not built from a PHF."""
from phfanon import Scheme, general_measures, phf_to_general, recovers, validate_threshold
from phfanon.fixtures import example_array, load_example

setup = load_example("example6").payload
print("components, participants, keys:", setup.p, setup.n, setup.v)
print("valid threshold structure:", validate_threshold(setup))
print("group (1, 2, 6) recovers keys:", [i for i in range(1, 8) if recovers(setup, (1, 2, 6), i)])
print("group (1, 2, 3) recovers keys:", [i for i in range(1, 8) if recovers(setup, (1, 2, 3), i)])

for scheme in Scheme:
    r = general_measures(setup, scheme)
    print(f"{scheme.value}: mu={r.mu} rho={r.rho}")

# any PHF can be rewritten as a general setup and gives the same numbers
array = example_array("example1")
embedded, order = phf_to_general(array)
print("embedded example1, zs mu:", general_measures(embedded, Scheme.ZS).mu)
