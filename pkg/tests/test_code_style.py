import os

import numpy as np
import pycodestyle
import pytest

MAX_LINE_LENGTH = 120
MIN_SCORE = 95.0
ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


def pep8_score(files_dir: str) -> float:
    r"""
    Percentage of physical lines without a pycodestyle error, ignoring tabs and line lengths.
    """
    style = pycodestyle.StyleGuide(ignore="W191,E501", max_line_length=MAX_LINE_LENGTH, quiet=True)
    result = style.check_files([files_dir])
    if result.counters["physical lines"] == 0:
        return 0.0
    err_ratio = result.total_errors / result.counters["physical lines"]
    return np.clip(100.0 - err_ratio * 100.0, 0.0, 100.0).item()


@pytest.mark.parametrize("files_dir", ["src/abelat", "tests"])
def test_pep8(files_dir):
    assert pep8_score(os.path.join(ROOT, files_dir)) >= MIN_SCORE
