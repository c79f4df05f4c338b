import csv
import io
import os

import pytest

from abelat import Analyzer, DomainError, parse_group_spec, reports_to_csv, sweep


def _silent(*args, **kwargs):
    pass


def test_analyze_c7():
    analyzer = Analyzer(parse_group_spec("C7"), logging_func=_silent)
    report = analyzer.run(save_report=False)
    values = report.to_dict()
    assert values["group"] == "C7"
    assert values["kissing_count"] == 42
    assert values["min_norm"] == 4
    assert values["strongly_eutactic"] is True
    assert values["eutactic"] is True
    assert values["certificate_branch"] == "odd_strong"
    assert values["minimal_basis"] is True
    assert values["perfection_rank"] == values["perfection_target"] == 21
    assert values["extreme"] is True
    assert analyzer.certificate.verified
    assert analyzer.basis.is_minimal
    assert list(report.keys()) == list(Analyzer.COLUMNS)


def test_analyze_c4():
    analyzer = Analyzer(parse_group_spec("C4"), logging_func=_silent)
    values = analyzer.run(save_report=False).to_dict()
    assert values["kissing_count"] == 4
    assert values["strongly_eutactic"] is False
    assert values["eutactic"] is False
    assert values["certificate_branch"] is None
    assert values["minimal_basis"] is False
    assert values["extreme"] is False
    assert not analyzer.is_eutactic
    assert not analyzer.has_minimal_basis
    assert len(analyzer.errors) == 2


def test_analyze_small_group():
    values = Analyzer(parse_group_spec("C3"), logging_func=_silent).run(save_report=False).to_dict()
    assert values["kissing_count"] == 6
    assert values["min_norm"] == 6
    assert values["strongly_eutactic"] is None
    assert values["certificate_branch"] == "small_group"


def test_trivial_group_refused():
    with pytest.raises(DomainError):
        Analyzer(parse_group_spec("C1"))


def test_logging_func_receives_every_step():
    lines = []
    Analyzer(parse_group_spec("C5"), logging_func=lines.append).run(save_report=False)
    assert len(lines) == len(Analyzer.COLUMNS)
    assert lines[0].startswith("C5: group = C5")


def test_report_saved(tmp_path):
    analyzer = Analyzer(parse_group_spec("C2xC2"), logging_func=_silent, report_dir=str(tmp_path))
    report = analyzer.run()
    assert analyzer.report_filepath == os.path.join(str(tmp_path), "report_C2xC2.json")
    assert os.path.isfile(analyzer.report_filepath)
    assert report.load(analyzer.report_filepath).get_value("kissing_count") == 6


def test_sweep():
    reports = sweep(8, logging_func=_silent)
    assert len(reports) == 10
    orders = [r.get_value("order") for r in reports]
    assert orders == sorted(orders)
    by_group = {r.get_value("group"): r.to_dict() for r in reports}
    assert by_group["C4xC2"]["strongly_eutactic"] is False
    assert by_group["C4xC2"]["eutactic"] is True
    assert by_group["C4xC2"]["perfect"] is False
    assert by_group["C8"]["extreme"] is True


def test_sweep_caps():
    with pytest.raises(DomainError):
        sweep(0)
    with pytest.raises(DomainError):
        sweep(17)
    with pytest.raises(DomainError):
        sweep(33, allow_large=True)


def test_reports_to_csv():
    reports = sweep(5, logging_func=_silent)
    text = reports_to_csv(reports)
    assert text == reports_to_csv(sweep(5, logging_func=_silent))
    rows = list(csv.DictReader(io.StringIO(text)))
    assert list(rows[0].keys()) == list(Analyzer.COLUMNS)
    assert [row["group"] for row in rows] == ["C2", "C3", "C4", "C2xC2", "C5"]
    c4 = rows[2]
    assert c4["eutactic"] == "false"
    assert c4["certificate_branch"] == ""
    assert rows[4]["perfection_rank"] == "5"
    assert rows[4]["perfect"] == "false"
    assert rows[4]["extreme"] == "false"


def test_reports_to_csv_timings():
    text = reports_to_csv(sweep(3, logging_func=_silent), include_timings=True)
    header = text.splitlines()[0].split(",")
    assert "kissing_count_seconds" in header
    assert len(header) == 2 * len(Analyzer.COLUMNS)
