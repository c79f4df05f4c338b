import json
import os
from fractions import Fraction
from typing import Optional, Union


def format_fraction(q: Union[int, Fraction]) -> str:
    r"""
    Format a rational as ``"p/q"``; the denominator is always written, e.g. ``"3/1"``.
    """
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def parse_fraction(text: Union[str, int]) -> Fraction:
    if isinstance(text, int):
        return Fraction(text)
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError, AttributeError) as err:
        raise ValueError(f"Could not parse rational {text!r}: {err}") from err


def save_json(data: dict, filepath: str, indent: int = 4) -> str:
    dirname = os.path.dirname(filepath)
    if dirname:
        os.makedirs(dirname, exist_ok=True)
    with open(filepath, "w") as f:
        json.dump(data, f, indent=indent)
        f.write("\n")
    return filepath


def load_json(filepath: str) -> dict:
    if not os.path.exists(filepath):
        raise FileNotFoundError(f"File {filepath} does not exist")
    if not os.path.isfile(filepath):
        raise ValueError(f"File {filepath} must be a file.")
    with open(filepath, "r") as f:
        return json.load(f)


def dumps(data: dict, indent: Optional[int] = 4) -> str:
    return json.dumps(data, indent=indent)

