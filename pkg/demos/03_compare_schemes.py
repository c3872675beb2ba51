"""Worst-case anonymity of both schemes on every bundled PHF, with closed forms."""
from phfanon import Scheme, bounds_zs, closed_form_measures_proportional, measures
from phfanon.fixtures import example_array


def fmt(pair):
    return "(" + ", ".join(str(x) for x in pair) + ")"


for name in ("example1", "example2", "example3", "example5"):
    array = example_array(name)
    zs = measures(array, Scheme.ZS)
    prop = measures(array, Scheme.PROPORTIONAL)
    print(f"{name}: PHF({array.l};{array.n},{array.m},{array.t})")
    print(f"  zs            mu={zs.mu}  rho={zs.rho}  bounds={fmt(bounds_zs(array))}")
    print(f"  proportional  mu={prop.mu}  rho={prop.rho}  closed form={fmt(closed_form_measures_proportional(array))}")
    print(f"  zs worst case at key {zs.mu_witness[0].label()} group {zs.mu_witness[1]}")
