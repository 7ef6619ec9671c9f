import logging
import random
import zlib

import pytest

from mixedgb.field import PrimeField, RationalField
from mixedgb.poly import Poly, affine_ambient
from mixedgb.semigroup import build_context

log = logging.getLogger("tests")

# Points of the unit square, the running example of the semigroup tests.
SQUARE = [(0, 0), (1, 0), (0, 1), (1, 1)]

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def F():
    return PrimeField()


@pytest.fixture
def Q():
    return RationalField()


@pytest.fixture
def square_ctx():
    return build_context([SQUARE])


@pytest.fixture
def rng(request):
    seed = zlib.crc32(request.node.name.encode())
    log.info("rng seed for %s: %d", request.node.name, seed)
    return random.Random(seed)


def affine_poly(ctx, terms, field):
    return Poly(terms, field, affine_ambient(ctx))


def random_affine_poly(ctx, field, rng, degree, nterms=4):
    pts = sorted(ctx.level(degree))
    chosen = rng.sample(pts, min(nterms, len(pts)))
    return affine_poly(ctx, {p: field.random_nonzero(rng) for p in chosen}, field)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
