import itertools

import pytest
from hypothesis import settings

from pretzellinks.sequences import EnhancedSequence, Entry, R, S, TwistType

settings.register_profile("suite", deadline=None, max_examples=120)
settings.load_profile("suite")


def seq(*pairs, base=False):
    """Shorthand: seq((4, S), (5, R), ...) -> EnhancedSequence."""
    return EnhancedSequence.of(*pairs, base=base)


def parity_law_ok(nabla, mu):
    """Low coefficients vanish and only one parity survives."""
    for i in range(max(mu - 1, 0)):
        if nabla.coefficient(i) != 0:
            return False
    for i, c in enumerate(nabla.coeffs):
        if c != 0 and i % 2 == mu % 2:
            return False
    return True


def all_plain_sequences(max_u, max_twist):
    values = [k for k in range(-max_twist, max_twist + 1) if k != 0]
    for u in range(1, max_u + 1):
        yield from itertools.product(values, repeat=u)


@pytest.fixture(scope="session")
def small_realizable():
    """Every realizable enhanced sequence with u <= 3, |k| <= 2."""
    from pretzellinks.sequences import enumerate_enhancements
    out = []
    for ks in all_plain_sequences(3, 2):
        out.extend(enumerate_enhancements(ks))
    return out
