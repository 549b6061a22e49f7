import os
import random

import pytest

from turaev import parse

SEED = int(os.environ.get("TURAEV_SEED", "20260801"))


@pytest.fixture
def rng():
    return random.Random(SEED)


@pytest.fixture
def trefoil():
    return parse("O1+ U2+ O3+ U1+ O2+ U3+")


@pytest.fixture
def figure_eight():
    return parse("O1+ U2+ O3- U4- O2+ U1+ O4- U3-")


@pytest.fixture
def hopf():
    return parse("O1+ U2+; U1+ O2+")


@pytest.fixture
def virtual_trefoil():
    return parse("O1+ O2+ U1+ U2+")


@pytest.fixture
def switched_trefoil():
    # standard trefoil with crossing 1 switched: an unknot diagram of
    # Turaev genus 1
    return parse("U1- U2+ O3+ O1- O2+ U3+")


@pytest.fixture
def kink():
    return parse("O1+ U1+")
