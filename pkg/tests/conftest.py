import json

import pytest

from hurwitz.groups import (cyclic, dihedral, elementary_abelian,
                            generalized_quaternion)


@pytest.fixture(scope="session")
def z2():
    return cyclic(2)


@pytest.fixture(scope="session")
def z3():
    return cyclic(3)


@pytest.fixture(scope="session")
def z4():
    return cyclic(4)


@pytest.fixture(scope="session")
def z9():
    return cyclic(9)


@pytest.fixture(scope="session")
def q8():
    return generalized_quaternion(2)


@pytest.fixture(scope="session")
def q16():
    return generalized_quaternion(3)


@pytest.fixture(scope="session")
def d4():
    return dihedral(4)


@pytest.fixture(scope="session")
def klein():
    return elementary_abelian(2, 2)


@pytest.fixture
def write_json(tmp_path):
    def _write(name, obj):
        path = tmp_path / name
        path.write_text(json.dumps(obj))
        return str(path)
    return _write
