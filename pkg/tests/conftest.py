from fractions import Fraction as F

import pytest
from hypothesis import settings

from ifsnet import IFS, Scalar, normalize_hull
from ifsnet.specfile import corpus_names, load_corpus

settings.register_profile("default", deadline=None, max_examples=200)
settings.load_profile("default")

RHO = Scalar(F(-1, 2), F(1, 2), 5)  # (sqrt(5) - 1)/2


def system(name: str) -> IFS:
    return normalize_hull(load_corpus(name).ifs())


CLOSED = ["cantor", "four_maps", "golden", "halves", "lau_ngai", "negative"]


@pytest.fixture(scope="session")
def four() -> IFS:
    return system("four_maps")


@pytest.fixture(scope="session")
def cantor() -> IFS:
    return system("cantor")


@pytest.fixture(scope="session")
def golden() -> IFS:
    return system("golden")


@pytest.fixture(scope="session")
def graphs():
    from ifsnet import saturate

    return {name: saturate(system(name)) for name in CLOSED}


def pytest_report_header(config):
    return f"corpus: {', '.join(corpus_names())}"


_WORDS: dict = {}


def words_of(ifs, alpha):
    from ifsnet.ifs import lambda_alpha

    key = (ifs, alpha)
    if key not in _WORDS:
        _WORDS[key] = list(lambda_alpha(ifs, alpha))
    return _WORDS[key]


def qualifying_pairs(ifs, delta, count, seed=0, depth=3):
    """Random ``(sigma, tau, alpha)`` with overlap at least ``delta * alpha``.

    Half the draws pick ``tau`` among the words whose cylinder meets
    ``sigma``'s, so overlapping systems yield genuinely distinct pairs.
    """
    import random

    from ifsnet.constants import overlap_length
    from ifsnet.ifs import event_ladder

    rng = random.Random(seed)
    alphas = [a for a, _ in event_ladder(ifs, ifs.r_min ** depth)]
    out = []
    while len(out) < count:
        alpha = rng.choice(alphas)
        words = words_of(ifs, alpha)
        sigma = rng.choice(words)
        if rng.random() < 0.5:
            near = [w for w in words if overlap_length(w.map, sigma.map)]
            tau = rng.choice(near)
        else:
            tau = rng.choice(words)
        if overlap_length(sigma.map, tau.map) >= delta * alpha:
            out.append((sigma, tau, alpha))
    return out


def pytest_terminal_summary(terminalreporter):
    import sys

    # run directly, the file is also loaded as __main__ with an empty table
    mod = next((m for m in list(sys.modules.values()) if getattr(m, "ACCEPTANCE_RESULTS", None)), None)
    if mod is None:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.ACCEPTANCE_RESULTS):
        terminalreporter.write_line(mod.ACCEPTANCE_RESULTS[n])
