from typing import Iterable

import pytest


class ScriptedRandom:
    """Replays a fixed list of uniforms; fails loudly when exhausted."""

    def __init__(self, values: Iterable[float]):
        self.values = list(values)
        self.consumed = 0

    def random(self) -> float:
        if self.consumed >= len(self.values):
            raise AssertionError("scripted random stream exhausted")
        v = self.values[self.consumed]
        self.consumed += 1
        return v


@pytest.fixture
def scripted():
    return ScriptedRandom
