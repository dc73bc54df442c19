import warnings
from types import SimpleNamespace

import pytest

import sylowcollapse as sc
from sylowcollapse.cli import build_group, parse_group_spec

# every group the certificates must cover, with every prime dividing its order
SUITE = [
    ("family:cyclic:4", (2,)),
    ("family:cyclic:8", (2,)),
    ("family:cyclic:9", (3,)),
    ("family:dihedral:4", (2,)),
    ("family:dihedral:5", (2, 5)),
    ("family:dihedral:6", (2, 3)),
    ("family:quaternion8", (2,)),
    ("family:symmetric:3", (2, 3)),
    ("family:symmetric:4", (2, 3)),
    ("family:symmetric:5", (2, 3, 5)),
    ("family:alternating:4", (2, 3)),
    ("family:alternating:5", (2, 3, 5)),
    ("family:sl23", (2, 3)),
]

SUITE_INSTANCES = [(text, p) for text, primes in SUITE for p in primes]


def load_group(text):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        return build_group(parse_group_spec(text), 10_000)


@pytest.fixture(scope="session")
def group_cache():
    cache = {}

    def get(text):
        if text not in cache:
            cache[text] = load_group(text)
        return cache[text]

    return get


@pytest.fixture(scope="session")
def stack_cache(group_cache):
    """Everything the pipeline derives for one (group, prime), built once."""
    cache = {}

    def get(text, p):
        key = (text, p)
        if key not in cache:
            group = group_cache(text)
            table = sc.all_p_subgroups(group, p)
            quotient = sc.build_quotient(group, p, table=table)
            class_counts = sc.classify_cells(quotient)
            matching = sc.build_matching(quotient)
            digraph = sc.build_digraph(quotient, matching)
            certificate = sc.check_acyclic(digraph)
            cache[key] = SimpleNamespace(
                group=group, table=table, quotient=quotient,
                class_counts=class_counts, matching=matching,
                digraph=digraph, certificate=certificate)
        return cache[key]

    return get


@pytest.fixture(scope="session")
def s4(group_cache):
    return group_cache("family:symmetric:4")


@pytest.fixture(scope="session")
def s4_stack(stack_cache):
    return stack_cache("family:symmetric:4", 2)


@pytest.fixture(scope="session")
def c8_stack(stack_cache):
    return stack_cache("family:cyclic:8", 2)
