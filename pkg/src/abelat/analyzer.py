import csv
import io
import logging
import os
import time
from typing import Callable, List, Optional, Sequence

from .abelian_group import AbelianGroup, groups_up_to
from .errors import ConsistencyError, DomainError, NoMinimalBasisError, NotEutacticError
from .eutaxy import EutaxyCertificate, PerfectionReport, build_certificate, classify_strong, perfection_rank
from .lattice import (
    canonical_basis,
    kissing_count,
    min_distance,
    min_vectors_any,
    minimal_vectors,
    oracle_min_distance,
    quadruple_oracle,
)
from .min_basis import MinimalBasis, general_min_basis
from .report import Report


class Analyzer:
    r"""
    Runs every analysis of :math:`L(A)` for one group and collects the results in a :class:`Report`.

    :param group: The group.
    :keyword logging_func: Called with one line per analysis step. Defaults to :attr:`DEFAULT_LOGGING_FUNC`.
    :keyword cross_check: Compare closed forms with brute-force oracles. Defaults to True.
    :keyword report_dir: Directory where :meth:`run` saves the report. Nothing is saved when None.
    """
    GROUP_KEY = "group"
    ORDER_KEY = "order"
    KISSING_KEY = "kissing_count"
    MIN_NORM_KEY = "min_norm"
    STRONG_KEY = "strongly_eutactic"
    EUTACTIC_KEY = "eutactic"
    BRANCH_KEY = "certificate_branch"
    MIN_BASIS_KEY = "minimal_basis"
    PERFECTION_RANK_KEY = "perfection_rank"
    PERFECTION_TARGET_KEY = "perfection_target"
    PERFECT_KEY = "perfect"
    EXTREME_KEY = "extreme"
    COLUMNS = (
        GROUP_KEY,
        ORDER_KEY,
        KISSING_KEY,
        MIN_NORM_KEY,
        STRONG_KEY,
        EUTACTIC_KEY,
        BRANCH_KEY,
        MIN_BASIS_KEY,
        PERFECTION_RANK_KEY,
        PERFECTION_TARGET_KEY,
        PERFECT_KEY,
        EXTREME_KEY,
    )
    DEFAULT_REPORT_FILENAME = "report_{}.json"
    DEFAULT_LOGGING_FUNC = logging.info
    DEFAULT_MAX_ORDER = 16
    HARD_MAX_ORDER = 32

    def __init__(self, group: AbelianGroup, **kwargs):
        if group.is_trivial:
            raise DomainError(f"The lattice of the trivial group {group.spec} is empty.")
        self.group = group
        self.kwargs = kwargs
        self.logging_func: Callable = kwargs.get("logging_func", self.DEFAULT_LOGGING_FUNC)
        self.cross_check = kwargs.get("cross_check", True)
        self.report_dir = kwargs.get("report_dir")
        self.report = Report()
        self.certificate: Optional[EutaxyCertificate] = None
        self.basis: Optional[MinimalBasis] = None
        self.perfection: Optional[PerfectionReport] = None
        self.errors: List[Exception] = []

    @property
    def report_filepath(self) -> Optional[str]:
        if self.report_dir is None:
            return None
        return os.path.join(self.report_dir, self.DEFAULT_REPORT_FILENAME.format(self.group.spec))

    @property
    def is_eutactic(self) -> bool:
        return bool(self.report.get_value(self.EUTACTIC_KEY))

    @property
    def has_minimal_basis(self) -> bool:
        return bool(self.report.get_value(self.MIN_BASIS_KEY))

    def _step(self, key: str, func: Callable, *args):
        start = time.perf_counter()
        value = func(*args)
        seconds = time.perf_counter() - start
        self.report.add(key, value, seconds=seconds)
        self.logging_func(f"{self.group.spec}: {key} = {value} ({seconds:.3f} s)")
        return value

    def _kissing_count(self) -> int:
        if self.group.order < 4:
            return len(min_vectors_any(self.group))
        count = kissing_count(self.group)
        if self.cross_check:
            enumerated = len(minimal_vectors(self.group))
            oracle = len(quadruple_oracle(self.group))
            if not count == enumerated == oracle:
                raise ConsistencyError(
                    f"Kissing count of {self.group.spec}: closed form {count}, enumeration {enumerated}, "
                    f"oracle {oracle}."
                )
        return count

    def _min_norm(self) -> int:
        value = min_distance(self.group)
        if self.cross_check:
            oracle = oracle_min_distance(canonical_basis(self.group))
            if oracle != value:
                raise ConsistencyError(f"Minimum of {self.group.spec}: {value} but the oracle found {oracle}.")
        return value

    def _strong(self) -> Optional[bool]:
        if self.group.order < 4:
            return None
        return classify_strong(self.group)

    def _eutactic(self) -> bool:
        try:
            self.certificate = build_certificate(self.group)
        except NotEutacticError as err:
            self.errors.append(err)
            return False
        return True

    def _branch(self) -> Optional[str]:
        return None if self.certificate is None else self.certificate.branch

    def _minimal_basis(self) -> bool:
        try:
            self.basis = general_min_basis(self.group)
        except NoMinimalBasisError as err:
            self.errors.append(err)
            return False
        return True

    def _perfection_rank(self) -> int:
        self.perfection = perfection_rank(self.group)
        return self.perfection.rank

    def run(self, save_report: bool = True) -> Report:
        self._step(self.GROUP_KEY, lambda: self.group.spec)
        self._step(self.ORDER_KEY, lambda: self.group.order)
        self._step(self.KISSING_KEY, self._kissing_count)
        self._step(self.MIN_NORM_KEY, self._min_norm)
        self._step(self.STRONG_KEY, self._strong)
        self._step(self.EUTACTIC_KEY, self._eutactic)
        self._step(self.BRANCH_KEY, self._branch)
        self._step(self.MIN_BASIS_KEY, self._minimal_basis)
        self._step(self.PERFECTION_RANK_KEY, self._perfection_rank)
        self._step(self.PERFECTION_TARGET_KEY, lambda: self.perfection.target)
        self._step(self.PERFECT_KEY, lambda: self.perfection.is_perfect)
        self._step(self.EXTREME_KEY, lambda: self.is_eutactic and self.perfection.is_perfect)
        if save_report and self.report_filepath is not None:
            self.report.save(self.report_filepath)
        return self.report


def sweep(
        max_order: int = Analyzer.DEFAULT_MAX_ORDER,
        *,
        min_order: int = 2,
        all_presentations: bool = False,
        allow_large: bool = False,
        **kwargs
) -> List[Report]:
    r"""
    Analyze every isomorphism type of abelian group with ``min_order <= |A| <= max_order``, one report per
    presentation, in order of increasing order.

    :param max_order: Largest order. Above :attr:`Analyzer.DEFAULT_MAX_ORDER` requires ``allow_large``; above
        :attr:`Analyzer.HARD_MAX_ORDER` is refused.
        Below 2 there is no group to analyze and it is refused too.
    :param all_presentations: Also run every ordering of the invariant and primary decompositions.
    :param kwargs: Passed to :class:`Analyzer`.
    """
    if max_order < 2:
        raise DomainError(f"max_order must be at least 2, got {max_order}.")
    if max_order > Analyzer.HARD_MAX_ORDER:
        raise DomainError(f"max_order {max_order} exceeds the hard cap {Analyzer.HARD_MAX_ORDER}.")
    if max_order > Analyzer.DEFAULT_MAX_ORDER and not allow_large:
        raise DomainError(
            f"max_order {max_order} exceeds the default cap {Analyzer.DEFAULT_MAX_ORDER}; pass allow_large."
        )
    groups = groups_up_to(max_order, min_order=max(min_order, 2), all_presentations=all_presentations)
    return [Analyzer(group, **kwargs).run(save_report=False) for group in groups]


def reports_to_csv(reports: Sequence[Report], include_timings: bool = False) -> str:
    columns = list(Analyzer.COLUMNS)
    if include_timings:
        columns += [f"{k}_{Report.SECONDS_KEY}" for k in Analyzer.COLUMNS]
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=columns, lineterminator="\n")
    writer.writeheader()
    for report in reports:
        row = report.to_dict(include_timings=include_timings)
        writer.writerow({k: _csv_value(row.get(k)) for k in columns})
    return buffer.getvalue()


def _csv_value(value):
    if value is None:
        return ""
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        return f"{value:.6f}"
    return value
