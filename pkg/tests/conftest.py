import pytest
from hypothesis import settings

from ratcurves.field import FieldCtx

settings.register_profile("suite", deadline=None, max_examples=40)
settings.load_profile("suite")


@pytest.fixture
def Q():
    return FieldCtx.rationals()


@pytest.fixture
def P():
    return FieldCtx.prime()
