import json
from typing import Any, Dict, Optional

from .utils import load_json, save_json


class Report:
    """
    Keyed store of analysis results.

    Every entry holds a JSON compatible value and, optionally, the number of seconds it took to compute.

    :param data: The data to store in the report.
    :type data: dict
    :param report_filepath: The filepath to save or load the report.
    :type report_filepath: str
    :param args: Additional positional arguments.
    :type args: tuple
    :param kwargs: Additional keyword arguments.

    :ivar data: The data stored in the report.
    :vartype data: dict
    :ivar report_filepath: The filepath to save or load the report.
    :vartype report_filepath: str
    """
    VALUE_KEY = "value"
    SECONDS_KEY = "seconds"
    DEFAULT_INDENT = 4

    def __init__(self, data: dict = None, report_filepath: str = None, *args, **kwargs):
        self.data = data
        self.report_filepath = report_filepath
        self.indent = kwargs.pop("indent", self.DEFAULT_INDENT)
        self.args = args
        self.kwargs = kwargs

        self._initialize_data_()

    @classmethod
    def from_state(cls, state: dict) -> "Report":
        report = cls()
        report.set_state(state)
        return report

    def _initialize_data_(self):
        if self.data is None:
            self.data = {}

    @property
    def total_seconds(self) -> float:
        return sum(self.get_seconds(k) or 0.0 for k in self.keys())

    def get_state(self) -> dict:
        return {
            "data": self.data,
            "report_filepath": self.report_filepath,
            "args": list(self.args),
            "kwargs": self.kwargs,
        }

    def set_state(self, state: dict):
        self.data = state["data"]
        self.report_filepath = state.get("report_filepath")
        self.args = tuple(state.get("args", ()))
        self.kwargs = state.get("kwargs", {})

    def add(self, key: str, value: Any, seconds: Optional[float] = None):
        self.data[key] = {self.VALUE_KEY: value, self.SECONDS_KEY: seconds}

    def get(self, key, default=None):
        return self.data.get(key, default)

    def get_value(self, key, default=None):
        entry = self.get(key)
        if entry is None:
            return default
        return entry[self.VALUE_KEY]

    def get_seconds(self, key, default=None):
        entry = self.get(key)
        if entry is None:
            return default
        return entry[self.SECONDS_KEY]

    def keys(self):
        return self.data.keys()

    def values(self) -> Dict[str, Any]:
        return {k: self.get_value(k) for k in self.keys()}

    def to_dict(self, include_timings: bool = False) -> Dict[str, Any]:
        r"""
        Flat ``{key: value}`` view, with ``{key}_seconds`` entries when ``include_timings`` is set.
        """
        out = {}
        for k in self.keys():
            out[k] = self.get_value(k)
            if include_timings:
                out[f"{k}_{self.SECONDS_KEY}"] = self.get_seconds(k)
        return out

    def __getitem__(self, item):
        return self.data[item]

    def save(self, report_filepath: str = None):
        if report_filepath is not None:
            self.report_filepath = report_filepath
        assert self.report_filepath is not None, "report_filepath must be initialized before saving"
        return save_json(self.get_state(), self.report_filepath, indent=self.indent)

    def load(self, report_filepath: str = None):
        if report_filepath is not None:
            self.report_filepath = report_filepath
        assert self.report_filepath is not None, "report_filepath must be initialized before loading"
        self.set_state(load_json(self.report_filepath))
        return self

    def __eq__(self, other):
        return isinstance(other, Report) and self.data == other.data

    def __repr__(self):
        return (f"{self.__class__.__name__}("
                f"data={self.data}, "
                f"report_filepath={self.report_filepath}"
                f")")

    def __str__(self):
        json_str = json.dumps(self.get_state(), indent=self.indent)
        return f"{self.__class__.__name__}({json_str})"

    def __len__(self):
        return len(self.data)

    def __iter__(self):
        return iter(self.data)

    def __contains__(self, item):
        return item in self.data
