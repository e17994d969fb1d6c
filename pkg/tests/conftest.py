import pytest

from origami_tess import build_origami


def make(name):
    return {
        "T1": lambda: build_origami(1, "()", "()", "all"),
        "L3": lambda: build_origami(3, "(1 2)", "(1 3)", "singular"),
        "W4": lambda: build_origami(4, "(1 2 3 4)", "(1 2)", "singular"),
        "O2": lambda: build_origami(2, "(1 2)", "()", "all"),
        "W4all": lambda: build_origami(4, "(1 2 3 4)", "(1 2)", "all"),
    }[name]()


@pytest.fixture(scope="session")
def T1():
    return make("T1")


@pytest.fixture(scope="session")
def L3():
    return make("L3")


@pytest.fixture(scope="session")
def W4():
    return make("W4")


@pytest.fixture(scope="session")
def O2():
    return make("O2")
