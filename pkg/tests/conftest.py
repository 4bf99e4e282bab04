import pytest

from commtrees import make_family

# Named catalog groups reused across test modules.  Each entry is
# (label, family, params); builders are cached so repeated lookups are cheap.
CATALOG = [
    ("Z6", "cyclic", {"n": 6}),
    ("Z12", "cyclic", {"n": 12}),
    ("S3", "dihedral", {"k": 3}),
    ("D8", "dihedral", {"k": 4}),
    ("D10", "dihedral", {"k": 5}),
    ("D12", "dihedral", {"k": 6}),
    ("D14", "dihedral", {"k": 7}),
    ("D16", "dihedral", {"k": 8}),
    ("Q8", "quaternion", {"k": 2}),
    ("Q12", "quaternion", {"k": 3}),
    ("Q16", "quaternion", {"k": 4}),
    ("SD16", "semidihedral", {"k": 4}),
    ("SD32", "semidihedral", {"k": 5}),
    ("M27", "modular_p3", {"p": 3}),
    ("Heis3", "heisenberg", {"p": 3}),
    ("A4", "alternating", {"d": 4}),
    ("S4", "symmetric", {"d": 4}),
    ("A5", "alternating", {"d": 5}),
    ("F20", "metacyclic", {"a": 5, "b": 4, "u": 2}),
    ("F21", "metacyclic", {"a": 7, "b": 3, "u": 2}),
    ("GL2_3", "GL2", {"q": 3}),
    ("Z2xS3", "direct_product", {"factors": [["cyclic", {"n": 2}], ["dihedral", {"k": 3}]]}),
    ("Q8xZ3", "direct_product", {"factors": [["generalized_quaternion", {"k": 2}], ["cyclic", {"n": 3}]]}),
    ("Z2xS4", "direct_product", {"factors": [["cyclic", {"n": 2}], ["symmetric", {"d": 4}]]}),
]

# The nonabelian groups of order at most 16 the catalog can build.
SMALL_NONABELIAN = [
    ("S3", "dihedral", {"k": 3}),
    ("D8", "dihedral", {"k": 4}),
    ("Q8", "quaternion", {"k": 2}),
    ("D10", "dihedral", {"k": 5}),
    ("D12", "dihedral", {"k": 6}),
    ("Q12", "quaternion", {"k": 3}),
    ("A4", "alternating", {"d": 4}),
    ("D14", "dihedral", {"k": 7}),
    ("D16", "dihedral", {"k": 8}),
    ("SD16", "semidihedral", {"k": 4}),
    ("Q16", "quaternion", {"k": 4}),
]


def build(label):
    for name, family, params in CATALOG + SMALL_NONABELIAN:
        if name == label:
            return make_family(family, **params)
    raise KeyError(label)


@pytest.fixture(scope="session")
def catalog():
    return [(label, make_family(family, **params)) for label, family, params in CATALOG]
