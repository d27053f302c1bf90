"""Length sweeps and tabular emission (CSV or JSON).

One row per link length, ordered by length, deterministic.  A row where
the model breaks (no photon number yieldsed a positive rate, or the
point evaluation failed outright) keeps its length and any
length-dependent diagnostics and carries the sentinel "n/a" in the
remaining cells, so plotted curves show cutoffs honestly instead of
fake zeros.
"""

from __future__ import annotations

import csv
import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import replace
from typing import IO, Optional

from .config import SWEEP_COLUMNS, SweepRequest
from .optimize import evaluate_point, link_context
from .phys_core import LinkScenario

#: Numeric cells carry 13 significant digits so a parsed file recovers
#: every value to better than 1e-12 relative.
_CELL_FORMAT = "%.13g"
_SENTINEL = "n/a"

Row = dict[str, Optional[float]]


def _worker_count() -> int:
    raw = os.environ.get("QKD_LINKSIM_THREADS", "")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def sweep_row(scenario: LinkScenario, length_km: float) -> Row:
    """Evaluate one sweep length into a column dict (None marks n/a)."""
    row: Row = {name: None for name in SWEEP_COLUMNS}
    row["L_km"] = length_km
    try:
        point = replace(scenario, length_km=length_km)
        report = evaluate_point(point)
    except Exception:
        # a broken row must not abort the sweep
        return row
    row["f_rep_GHz"] = report.f_rep_ghz
    row["pulse_fwhm_out_ps"] = report.pulse_fwhm_out_ps
    row["mu_opt"] = report.mu_opt
    row["qber"] = report.qber
    row["r_raw_bps"] = report.r_raw_bps
    row["r_sift_bps"] = report.r_sift_bps
    row["r_sec_bps"] = None if report.sec_clamped else report.r_sec_bps
    budget = report.budget
    if budget is not None:
        row["t_isi"] = budget.t_isi_factor
        row["p_mu"] = budget.p_mu
        row["p_dc"] = budget.noise.p_dc
        row["p_ram"] = budget.noise.p_ram
        row["p_lcxt"] = budget.noise.p_lcxt
        row["p_isi"] = budget.p_isi
        row["eta_dead"] = report.eta_dead
    else:
        # past the cutoff the mu-independent diagnostics are still real
        ctx = link_context(point, report.f_rep_ghz)
        row["t_isi"] = ctx.t_isi_factor
        row["p_dc"] = ctx.p_dc
        row["p_ram"] = ctx.p_ram_f + ctx.p_ram_b
        row["p_lcxt"] = ctx.p_lcxt
    return row


def run_sweep(request: SweepRequest) -> list[Row]:
    """Evaluate every requested length, in ascending order.

    Rows may be computed in parallel (QKD_LINKSIM_THREADS workers); the
    result is independent of evaluation order and concurrency level.
    """
    lengths = sorted(request.lengths)
    workers = _worker_count()
    if workers > 1 and len(lengths) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(lambda L: sweep_row(request.scenario, L), lengths))
    return [sweep_row(request.scenario, length) for length in lengths]


def _cell(value: Optional[float]) -> str:
    return _SENTINEL if value is None else _CELL_FORMAT % value


def write_csv(rows: list[Row], columns: tuple[str, ...], stream: IO[str]) -> None:
    """Comma-separated, header row, '.' decimal, LF line endings."""
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_cell(row[name]) for name in columns])


def write_json(rows: list[Row], columns: tuple[str, ...], stream: IO[str]) -> None:
    """A JSON list of row objects; n/a cells become null."""
    payload = [{name: row[name] for name in columns} for row in rows]
    json.dump(payload, stream, indent=2)
    stream.write("\n")


def write_rows(rows: list[Row], request: SweepRequest, stream: IO[str]) -> None:
    if request.fmt == "json":
        write_json(rows, request.columns, stream)
    else:
        write_csv(rows, request.columns, stream)
