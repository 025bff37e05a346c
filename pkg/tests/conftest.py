import pytest

from rclab.forms import delta, eisenstein_form


@pytest.fixture(scope="session")
def catalogue():
    """Generators at a shared working precision."""
    prec = 30
    return {
        "E4": eisenstein_form(4, prec),
        "E6": eisenstein_form(6, prec),
        "Delta": delta(prec),
    }
