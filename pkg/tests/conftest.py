from __future__ import annotations

import pytest

from uniline.structures import FiniteStructure, Signature


@pytest.fixture
def chain2() -> FiniteStructure:
    return FiniteStructure.build(Signature.of(lt=2), ["a", "b"], {"lt": [("a", "b")]})


@pytest.fixture
def chain3() -> FiniteStructure:
    return FiniteStructure.build(
        Signature.of(lt=2), ["a", "b", "c"], {"lt": [("a", "b"), ("b", "c"), ("a", "c")]}
    )


@pytest.fixture
def cycle3() -> FiniteStructure:
    return FiniteStructure.build(
        Signature.of(e=2), ["a", "b", "c"], {"e": [("a", "b"), ("b", "c"), ("c", "a")]}
    )


@pytest.fixture
def empty3() -> FiniteStructure:
    return FiniteStructure.build(Signature.of(e=2), ["a", "b", "c"], {})


@pytest.fixture
def empty4() -> FiniteStructure:
    return FiniteStructure.build(Signature.of(e=2), ["a", "b", "c", "d"], {})


@pytest.fixture
def empty5() -> FiniteStructure:
    return FiniteStructure.build(Signature.of(e=2), ["a", "b", "c", "d", "e"], {})
