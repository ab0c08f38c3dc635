import json
import logging
import math
import os
from typing import Dict, List

import numpy as np
import pandas as pd

from tsalloc.experiment.runner import MetricsReport

logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.17g"
COMMENT = "# "


def _native(value):
    if isinstance(value, np.generic):
        return value.item()
    return value


def _records(trials: pd.DataFrame) -> List[Dict]:
    return [
        {key: _native(value) for key, value in record.items()}
        for record in trials.to_dict(orient="records")
    ]


def infer_format(path: str) -> str:
    return "json" if os.path.splitext(path)[1].lower() == ".json" else "csv"


def emit_report(report: MetricsReport, path: str, format: str = None):
    """Writes ``report`` as CSV or JSON.

    CSV files open with one ``# key=value`` comment line per aggregate, values
    JSON-encoded, followed by the header and one row per trial. JSON files hold
    ``{"aggregates": ..., "trials": [...]}``. Floats keep 17 significant digits.
    """
    format = format or infer_format(path)
    aggregates = {key: _native(value) for key, value in report.aggregates.items()}
    try:
        with open(path, "w", newline="") as f:
            if format == "csv":
                for key, value in aggregates.items():
                    f.write("{}{}={}\n".format(COMMENT, key, json.dumps(value)))
                report.trials.to_csv(f, index=False, float_format=FLOAT_FORMAT, na_rep="nan")
            elif format == "json":
                json.dump({"aggregates": aggregates, "trials": _records(report.trials)}, f, indent=1)
                f.write("\n")
            else:
                raise ValueError("Unknown report format {}".format(format))
    except OSError as error:
        raise OSError("Cannot write report to {}: {}".format(path, error))
    logger.info("Report with {} trials written to {}".format(report.n_trials, path))


def read_report(path: str, format: str = None) -> MetricsReport:
    """Reads a report written by :func:`emit_report`."""
    format = format or infer_format(path)
    if format == "json":
        with open(path) as f:
            document = json.load(f)
        trials = pd.DataFrame(document["trials"])
        return MetricsReport(aggregates=document["aggregates"], trials=trials)
    if format != "csv":
        raise ValueError("Unknown report format {}".format(format))

    aggregates = {}
    with open(path) as f:
        for line in f:
            if not line.startswith(COMMENT):
                break
            key, _, value = line[len(COMMENT) :].rstrip("\n").partition("=")
            aggregates[key] = json.loads(value)
    trials = pd.read_csv(
        path,
        comment="#",
        keep_default_na=False,
        na_values=["nan"],
        float_precision="round_trip",
    )
    if "failure" in trials:
        trials["failure"] = trials["failure"].astype(str)
    return MetricsReport(aggregates=aggregates, trials=trials)


def reports_equal(first: MetricsReport, second: MetricsReport) -> bool:
    """Aggregates and trial values equal, NaNs matching NaNs."""

    def same(a, b):
        if isinstance(a, float) and isinstance(b, float) and math.isnan(a) and math.isnan(b):
            return True
        return a == b

    if first.aggregates.keys() != second.aggregates.keys():
        return False
    if not all(same(_native(first.aggregates[k]), _native(second.aggregates[k])) for k in first.aggregates):
        return False
    left, right = _records(first.trials), _records(second.trials)
    if len(left) != len(right):
        return False
    return all(
        row_a.keys() == row_b.keys() and all(same(row_a[k], row_b[k]) for k in row_a)
        for row_a, row_b in zip(left, right)
    )
