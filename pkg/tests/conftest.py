import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from phfanon import PhfArray, validate_phf
from phfanon.fixtures import example_array, load_example


@pytest.fixture(scope="session")
def ex1():
    return example_array("example1")


@pytest.fixture(scope="session")
def ex2():
    return example_array("example2")


@pytest.fixture(scope="session")
def ex3():
    return example_array("example3")


@pytest.fixture(scope="session")
def ex5():
    return example_array("example5")


@pytest.fixture(scope="session")
def ex6():
    return load_example("example6").payload


# -- independent oracles: plain enumeration, no library derivations ----------


def brute_keys(array, group):
    """(row, sorted symbols) for every row where the group's symbols are distinct."""
    out = []
    for r, row in enumerate(array.cells, start=1):
        syms = [row[c - 1] for c in group]
        if len(set(syms)) == len(syms):
            out.append((r, tuple(sorted(syms))))
    return out


def brute_joint(array, scheme):
    """Joint Pr[A, K] by enumerating every group and every key it can use."""
    groups = list(itertools.combinations(range(1, array.n + 1), array.t))
    keys_of = {g: brute_keys(array, g) for g in groups}
    s0 = sum(len(k) for k in keys_of.values())
    joint = {}
    for g in groups:
        s = len(keys_of[g])
        prior = Fraction(1, len(groups)) if scheme == "zs" else Fraction(s, s0)
        for key in keys_of[g]:
            joint[(g, key)] = prior / s
    return joint


def brute_posteriors(array, scheme):
    """Pr[A | K] and Pr[P_c | K] from the joint by direct conditioning."""
    joint = brute_joint(array, scheme)
    marg = {}
    for (g, key), p in joint.items():
        marg[key] = marg.get(key, 0) + p
    group_post = {}
    part_post = {}
    for (g, key), p in joint.items():
        group_post.setdefault(key, {})[g] = p / marg[key]
        vec = part_post.setdefault(key, [Fraction(0)] * array.n)
        for c in g:
            vec[c - 1] += p / marg[key]
    return marg, group_post, part_post


def brute_measures(array, scheme):
    _, gp, pp = brute_posteriors(array, scheme)
    mu = 1 - max(p for d in gp.values() for p in d.values())
    rho = 1 - max(p for v in pp.values() for p in v)
    return mu, rho


# -- random PHF generation ------------------------------------------------------


def _row_with_all_symbols(rng, n, m):
    row = list(range(1, m + 1)) + [rng.randint(1, m) for _ in range(n - m)]
    rng.shuffle(row)
    return row


def _balanced_row(rng, n, m, force=None):
    pool = [j for j in range(1, m + 1) for _ in range(n // m)]
    row = [0] * n
    if force:
        # give the unseparated group distinct symbols first
        for c, j in zip(force, rng.sample(range(1, m + 1), len(force))):
            row[c - 1] = j
            pool.remove(j)
    rng.shuffle(pool)
    it = iter(pool)
    return [x or next(it) for x in row]


def random_phf(seed, n, m, t, start_rows, balanced=False):
    """Random rows, then extra rows separating each failing witness until a PHF results."""
    rng = random.Random(seed)
    make = (lambda force=None: _balanced_row(rng, n, m, force)) if balanced else None
    rows = []
    for _ in range(start_rows):
        rows.append(make() if balanced else _row_with_all_symbols(rng, n, m))
    while True:
        array = PhfArray(tuple(map(tuple, rows)), m, t)
        report = validate_phf(array)
        if report.is_phf:
            return array
        if balanced:
            rows.append(make(report.witness))
        else:
            row = _row_with_all_symbols(rng, n, m)
            for c, j in zip(report.witness, rng.sample(range(1, m + 1), t)):
                row[c - 1] = j
            # keep every symbol present after the forced assignment
            for j in range(1, m + 1):
                if j not in row:
                    free = [c for c in range(1, n + 1) if c not in report.witness and row.count(row[c - 1]) > 1]
                    row[rng.choice(free) - 1] = j
            rows.append(row)


@st.composite
def small_phfs(draw, balanced=False):
    t = draw(st.sampled_from([2, 3]))
    m = draw(st.integers(min_value=t, max_value=4))
    if balanced:
        share = draw(st.integers(min_value=1, max_value=10 // m))
        n = max(share, 1) * m
        if n < t:
            n = m
    else:
        n = draw(st.integers(min_value=m, max_value=10))
    start = draw(st.integers(min_value=1, max_value=3))
    seed = draw(st.integers(min_value=0, max_value=2**32))
    return random_phf(seed, n, m, t, start, balanced=balanced)
