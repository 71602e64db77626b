import csv
import logging
import os
from dataclasses import dataclass, field
from typing import List, Optional

from utils import mkdir
from utils.errors import InvalidInputError

logger = logging.getLogger(__name__)

HEADER = ('problem', 'param_rho', 'param_K', 'method', 'mean', 'stderr', 'erf')


@dataclass(frozen=True)
class ErfRow:
    problem: str
    param_rho: Optional[float]
    param_K: Optional[float]
    method: str
    mean: float
    stderr: Optional[float]
    erf: Optional[float]


@dataclass
class ErfReport:
    rows: List[ErfRow] = field(default_factory=list)

    def __len__(self):
        return len(self.rows)

    def __iter__(self):
        return iter(self.rows)

    def to_str(self):
        string = "%-16s %6s %8s %-9s %18s %12s %10s\n" % ('problem', 'rho', 'K', 'method', 'mean', 'stderr', 'ERF')
        for row in self.rows:
            string += "%-16s %6s %8s %-9s %18.10g %12s %10s\n" % (
                row.problem, _short(row.param_rho), _short(row.param_K), row.method, row.mean,
                '-' if row.stderr is None else '%.3e' % row.stderr,
                '-' if row.erf is None else '%.1f' % row.erf)
        return string


def _short(value):
    return '-' if value is None else '%g' % value


def _fmt(value):
    return '' if value is None else '%.17g' % value


def _parse(text):
    return None if text == '' else float(text)


def emit_csv(report, path):
    """ Write the report; floats keep 17 significant digits, None is an empty field. """
    try:
        mkdir(os.path.dirname(path))
        with open(path, 'w', newline='') as f:
            writer = csv.writer(f)
            writer.writerow(HEADER)
            for row in report:
                writer.writerow([row.problem, _fmt(row.param_rho), _fmt(row.param_K), row.method,
                                 _fmt(row.mean), _fmt(row.stderr), _fmt(row.erf)])
    except OSError as e:
        raise OSError("cannot write report to %s: %s" % (path, e)) from e
    logger.info("report written to %s (%d rows)", path, len(report))


def read_csv(path):
    with open(path, newline='') as f:
        reader = csv.reader(f)
        header = next(reader, None)
        if header is None or tuple(header) != HEADER:
            raise InvalidInputError("%s: unexpected header %s" % (path, header))
        rows = []
        for line in reader:
            problem, rho, K, method, mean, stderr, erf = line
            rows.append(ErfRow(problem=problem, param_rho=_parse(rho), param_K=_parse(K), method=method,
                               mean=_parse(mean), stderr=_parse(stderr), erf=_parse(erf)))
    return ErfReport(rows=rows)
