import pytest

import latkit as lk


@pytest.fixture(scope='session')
def catalog4():
    return lk.all_lattices(4)


@pytest.fixture(scope='session')
def catalog5():
    return lk.all_lattices(5)


@pytest.fixture(scope='session')
def catalog6():
    return lk.all_lattices(6)


@pytest.fixture(scope='session')
def bowtie():
    'Two minimal and two maximal elements, comparable crosswise.'
    import numpy as np
    leq = np.eye(4, dtype=bool)
    for lo in (0, 1):
        for hi in (2, 3):
            leq[lo, hi] = True
    return lk.FinitePoset(leq, labels=('a', 'b', 'c', 'd'), name='bowtie')
