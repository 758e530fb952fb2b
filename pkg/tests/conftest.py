import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from rzlogic import fca, formats  # noqa: E402
from rzlogic.cli import bundled  # noqa: E402
from rzlogic.poset import build_domain  # noqa: E402

FIXTURES = Path(__file__).parent / "fixtures"

# The restaurant menu context: nine set meals over ten attributes
# (sd salad, st starter, rw/ww red/white wine, e expensive).
RESTAURANT_OBJECTS = [str(i) for i in range(1, 10)]
RESTAURANT_ATTRIBUTES = ["sd", "st", "f", "m", "rw", "ww", "w", "d", "c", "e"]
RESTAURANT_ROWS = {
    "1": {"f", "ww", "d"},
    "2": {"m", "rw", "c"},
    "3": {"sd", "f", "ww", "d", "c", "e"},
    "4": {"st", "m", "rw", "d", "c", "e"},
    "5": {"sd", "st", "f", "w"},
    "6": {"sd", "st", "m", "w", "c"},
    "7": {"sd", "st", "m", "rw", "w", "d", "c", "e"},
    "8": {"m", "w", "c"},
    "9": {"sd", "st", "d"},
}
RESTAURANT_INCIDENCE = {(g, m) for g, ms in RESTAURANT_ROWS.items() for m in ms}


def _read(name):
    return bundled(name).read_text()


@pytest.fixture(scope="session")
def restaurant_ctx():
    return formats.parse_cxt(_read("restaurant.cxt"))


@pytest.fixture(scope="session")
def restaurant(restaurant_ctx):
    """``(domain, embedding)`` built from the menu context."""
    return fca.to_domain(fca.aoc_poset(restaurant_ctx))


@pytest.fixture(scope="session")
def wishes(restaurant):
    d, _ = restaurant
    return formats.parse_program_file(_read("wishes.rzp"), d)


@pytest.fixture
def diamond():
    return build_domain(["a", "b", "t"], [("a", "t"), ("b", "t")], auto_bottom=True)


@pytest.fixture
def vee():
    return build_domain(["_bot_", "a", "b"], [("_bot_", "a"), ("_bot_", "b")])


@pytest.fixture
def rng():
    return random.Random(20240601)
