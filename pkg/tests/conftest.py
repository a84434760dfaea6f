import pytest

import bfnorm as bf

_TABLES = {}


@pytest.fixture(scope="session")
def table():
    """Factory returning (m, r) flat tables, built once per session."""

    def get(m, r):
        if (m, r) not in _TABLES:
            _TABLES[(m, r)] = bf.build_flat_table(m, r)
        return _TABLES[(m, r)]

    return get
