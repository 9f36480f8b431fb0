"""
Shared fixtures
Matrices that show up across the suite, and quiet console output.
"""

import os
import sys

import pytest

# Add src to Python path so modules import as top-level names
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import config as settings
from intlinalg import IntMatrix, block_diag
from intpoly import IntPoly
from modarith import find_split_primes


@pytest.fixture(autouse=True)
def quiet(monkeypatch):
    monkeypatch.setattr(settings, "VERBOSE", False)


@pytest.fixture
def cat():
    return IntMatrix.from_rows([[2, 1], [1, 1]])


@pytest.fixture
def rotation():
    return IntMatrix.from_rows([[0, -1], [1, 0]])


@pytest.fixture
def identity2():
    return IntMatrix.identity(2)


@pytest.fixture
def jordan2():
    return IntMatrix.from_rows([[2, 1], [0, 2]])


@pytest.fixture
def cat_plus_two(cat):
    return block_diag(cat, IntMatrix.from_rows([[2]]))


@pytest.fixture
def cat_poly():
    return IntPoly((1, -3, 1))


@pytest.fixture
def cat_cert(cat_poly):
    return find_split_primes(cat_poly, 1)[0]
