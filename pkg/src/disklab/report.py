"""Experiment reports (schema ``disklab-report/1``)."""
import csv
import datetime
import io
import json
import math
from importlib import resources
from pathlib import Path

SCHEMA = "disklab-report/1"
PASS, FAIL, UNSTABLE = "pass", "fail", "unstable"


def _clean(x):
    if isinstance(x, complex):
        return [_clean(x.real), _clean(x.imag)]
    if isinstance(x, float) or hasattr(x, "dtype"):
        x = x.item() if hasattr(x, "item") else x
        if isinstance(x, float) and not math.isfinite(x):
            return "nan" if math.isnan(x) else ("inf" if x > 0 else "-inf")
        return x
    if isinstance(x, dict):
        return {str(k): _clean(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_clean(v) for v in x]
    return x


def load_pinned():
    text = resources.files("disklab").joinpath("data/pinned.json").read_text()
    return json.loads(text)


class Report:
    def __init__(self, experiment, config):
        self.experiment = experiment
        self.config = config
        self.tables = {}
        self.verdicts = {}
        self.constants = {}
        self.refinement = {}

    def table(self, name, columns, rows):
        self.tables[name] = {"columns": list(columns), "rows": [list(r) for r in rows]}

    def constant(self, name, value, provenance):
        self.constants[name] = {"value": value, "provenance": provenance}

    def refine(self, name, coarse, fine, tolerance, provenance):
        """Record a doubling delta; returns True when within ``tolerance`` (relative)."""
        delta = abs(fine - coarse) / max(abs(coarse), 1e-300)
        ok = bool(delta <= tolerance)
        self.refinement[name] = {"coarse": coarse, "fine": fine, "relative_delta": delta,
                                 "tolerance": tolerance, "stable": ok, "provenance": provenance}
        return ok

    def verdict(self, name, passed, table, rows, detail, stability=()):
        """A named boolean computed from ``table`` rows; demoted to unstable when any
        cited refinement drifted beyond its tolerance. ``rows`` is a list of row
        indices or ``"all"``."""
        if isinstance(rows, str):
            if rows != "all":
                raise ValueError(f"unknown row selector {rows!r}")
            rows = range(len(self.tables[table]["rows"]))
        rows = [int(i) for i in rows]
        status = PASS if passed else FAIL
        if status == PASS and any(not self.refinement[s]["stable"] for s in stability):
            status = UNSTABLE
        self.verdicts[name] = {"status": status, "table": table, "rows": rows, "detail": detail,
                               "stability": list(stability)}

    def pinned_check(self, name, value, pinned, table, rows):
        value = float(value)
        ref = pinned["value"]
        tol = pinned["rel_tol"]
        rel = abs(value - ref) / abs(ref)
        self.verdict(f"pinned_{name}", rel <= tol, table, rows,
                     f"{name}={value!r} vs pinned {ref!r} (relative {rel:.3g}, tolerance {tol})")
        return rel

    @property
    def passed(self):
        return all(v["status"] == PASS for v in self.verdicts.values())

    def as_dict(self, timestamp=None):
        return _clean({
            "schema": SCHEMA,
            "experiment": self.experiment,
            "timestamp": timestamp,
            "config": self.config,
            "verdicts": self.verdicts,
            "constants": self.constants,
            "refinement": self.refinement,
            "tables": self.tables,
            "passed": self.passed,
        })

    def to_json(self, timestamp=None):
        return json.dumps(self.as_dict(timestamp), indent=2, sort_keys=True) + "\n"

    def write(self, path, fmt="json"):
        stamp = datetime.datetime.now(datetime.timezone.utc).isoformat(timespec="seconds")
        path = Path(path)
        if fmt == "json":
            path.write_text(self.to_json(stamp))
            return [path]
        if fmt != "csv":
            raise ValueError(f"unknown format {fmt!r}")
        written = [path]
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["kind", "name", "status_or_value", "detail"])
        w.writerow(["meta", "schema", SCHEMA, ""])
        w.writerow(["meta", "experiment", self.experiment, ""])
        w.writerow(["meta", "timestamp", stamp, ""])
        for k, v in sorted(self.verdicts.items()):
            w.writerow(["verdict", k, v["status"], v["detail"]])
        for k, v in sorted(self.constants.items()):
            w.writerow(["constant", k, repr(_clean(v["value"])), v["provenance"]])
        path.write_text(buf.getvalue())
        for name, t in sorted(self.tables.items()):
            tp = path.with_name(f"{path.stem}.{name}.csv")
            buf = io.StringIO()
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(t["columns"])
            for row in t["rows"]:
                w.writerow([repr(x) if isinstance(x, float) else x for x in _clean(row)])
            tp.write_text(buf.getvalue())
            written.append(tp)
        return written
