import galois
import numpy as np
import pytest

from codecrypt_lab.algebra import FieldSpec


@pytest.fixture(autouse=True)
def lab_home(tmp_path, monkeypatch):
    """Keep every test away from the user's real config directory."""
    home = tmp_path / "lab-home"
    monkeypatch.setenv("CODECRYPT_LAB_HOME", str(home))
    return home


@pytest.fixture
def gf2():
    return galois.GF(2)


@pytest.fixture
def gf32():
    """GF(2^5) modulo x^5 + x^2 + 1, the field of the GPT toy."""
    return FieldSpec(2, 5, (1, 0, 1, 0, 0, 1)).gf


@pytest.fixture
def rng():
    return np.random.default_rng(2021)
