"""Three-valued reasoning outcome.

Proved is sound (a structural proof exists); Disproved carries a replayable
finite counter-interpretation; Unknown records why neither was reached.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Union


@dataclass(frozen=True)
class Proved:
    def __bool__(self) -> bool:  # convenience for `if verdict:` checks
        return True


@dataclass(frozen=True)
class Disproved:
    witness: "object"  # reasoner.interp.Witness

    def __bool__(self) -> bool:
        return False


@dataclass(frozen=True)
class Unknown:
    reason: str

    def __bool__(self) -> bool:
        return False


Verdict3 = Union[Proved, Disproved, Unknown]

PROVED = Proved()


def is_proved(v: Verdict3) -> bool:
    return isinstance(v, Proved)
