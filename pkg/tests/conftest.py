import os
import sys

from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


import pytest  # noqa: E402


@pytest.fixture(scope="session")
def four_qubit():
    """Filtered four-qubit classes, their fingerprints, and row label -> class index
    under the amended reference table (which is a bijection)."""
    from hyperstate import classify as C
    from hyperstate import reference as R

    classes = C.filtered_classes(C.enumerate_classes(4))
    fps = [C.fingerprint(r.representative) for r in classes]
    match = C.match_rows(fps, R.amended_four_qubit_rows())
    by_row = {label: i for i, label in match.mapping.items()}
    return classes, fps, by_row
