import pytest
import majsim


@pytest.fixture(autouse=True)
def add_majsim(doctest_namespace):
    doctest_namespace['majsim'] = majsim
