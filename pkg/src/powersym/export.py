"""CSV and JSON writers for diagrams, sweeps, reports and frame series."""
from __future__ import annotations

import csv
import math
from decimal import Decimal, localcontext
from fractions import Fraction

import numpy as np

from .axioms import AxiomReport, SweepTable
from .influence import ShiftDiagram, k_sqrt_m, log_position
from .temporal import FrameSeries

DIAGRAM_HEADER = ["k", "x", "i_ee", "i_ep", "i_pp", "i_ee_frac", "i_ep_frac", "i_pp_frac"]
SWEEP_HEADER = ["k", "x", "dom", "rob", "dns", "a1", "a2", "a4", "is_sqrt_m", "is_sp"]
TEMPORAL_HEADER = ["t", "cutoff_time", "n", "m", "k_sp", "r", "sqrt_m_over_n"]


def fmt_real(value) -> str:
    if value is None:
        return ""
    if isinstance(value, Fraction):
        return fraction_to_decimal(value)
    value = float(value)
    if math.isnan(value):
        return "nan"
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return format(value, ".12g")


def fraction_to_decimal(value: Fraction, digits: int = 17) -> str:
    with localcontext() as ctx:
        ctx.prec = digits
        dec = Decimal(value.numerator) / Decimal(value.denominator)
    text = format(dec.normalize(), "f")
    return text


def _writer(out):
    return csv.writer(out, lineterminator="\n")


def diagram_rows(diagram: ShiftDiagram, sample: int | None = None):
    """Rows for k = 0..n, or a log-spaced subset of about *sample* rows."""
    n = diagram.n
    if sample and sample < n + 1:
        ks = np.unique(np.concatenate([
            [0, n, diagram.k_sp, diagram.k_crossmax],
            np.round(np.geomspace(1, n, num=sample)).astype(np.int64),
        ]))
    else:
        ks = np.arange(n + 1)
    xs = log_position(ks, n)
    m = diagram.m_total
    for k, x in zip(ks.tolist(), xs.tolist()):
        ee, ep, pp = int(diagram.i_ee[k]), int(diagram.i_ep[k]), int(diagram.i_pp[k])
        fr = (ee / m, ep / m, pp / m) if m else (math.nan,) * 3
        yield [k, fmt_real(x), ee, ep, pp, *(fmt_real(f) for f in fr)]


def write_diagram_csv(diagram: ShiftDiagram, out, sample: int | None = None) -> None:
    w = _writer(out)
    w.writerow(DIAGRAM_HEADER)
    w.writerows(diagram_rows(diagram, sample))


def shift_sidecar(diagram: ShiftDiagram) -> dict:
    n = diagram.n
    k_sp = diagram.k_sp
    x_sp = math.log(k_sp) / math.log(n) if k_sp > 0 and n > 1 else None
    return {
        "n": n,
        "m_total": diagram.m_total,
        "self_loop_mode": diagram.self_loop_mode,
        "k_sp": k_sp,
        "x_sp": fmt_real(x_sp) if x_sp is not None else None,
        "k_crossmax": diagram.k_crossmax,
        "k_sqrt_m": k_sqrt_m(diagram.m_total),
        "block_at_sp": {
            "i_ee": int(diagram.i_ee[k_sp]),
            "i_ep": int(diagram.i_ep[k_sp]),
            "i_pp": int(diagram.i_pp[k_sp]),
        },
    }


def write_sweep_csv(table: SweepTable, out) -> None:
    w = _writer(out)
    w.writerow(SWEEP_HEADER)
    xs = table.x
    for j in range(len(table)):
        w.writerow([
            int(table.k[j]), fmt_real(xs[j]), fmt_real(table.dom[j]), fmt_real(table.rob[j]),
            fmt_real(table.dns[j]), int(table.a1[j]), int(table.a2[j]), int(table.a4[j]),
            int(table.is_sqrt_m[j]), int(table.is_sp[j]),
        ])


def report_to_dict(report: AxiomReport) -> dict:
    b = report.bounds
    return {
        "self_loop_mode": report.self_loop_mode,
        "n": report.n,
        "elite_size": report.elite_size,
        "c_d": fmt_real(report.config.c_d),
        "c_r": fmt_real(report.config.c_r),
        "block": {
            "i_ee": report.block.i_ee,
            "i_ep": report.block.i_ep,
            "i_pp": report.block.i_pp,
            "m_total": report.block.m_total,
        },
        "dom": fmt_real(report.dom),
        "rob": fmt_real(report.rob),
        "delta_elite": fmt_real(report.delta_elite),
        "delta_graph": fmt_real(report.delta_graph),
        "dns": fmt_real(report.dns),
        "a1_pass": report.a1_pass,
        "a2_pass": report.a2_pass,
        "a4_pass": report.a4_pass,
        "compact": report.compact,
        "compact_witness": report.compact_witness,
        "over_dominant": report.over_dominant,
        "bounds": {
            "sqrt_m_lb_ok": b.sqrt_lb,
            "size_vs_m_inv_delta": {"m_pow": fmt_real(b.m_pow), "ratio": fmt_real(b.size_ratio)},
            "sublinear": {
                "exponent": fmt_real(b.exponent),
                "bound": fmt_real(b.sublinear_bound),
                "holds": b.sublinear_holds,
            },
        },
        "notes": list(report.notes),
    }


def write_temporal_csv(series: FrameSeries, out) -> None:
    w = _writer(out)
    w.writerow(TEMPORAL_HEADER)
    for f in series.frames:
        w.writerow([
            f.t_index, f.cutoff_time, f.n,
            "" if f.m is None else f.m,
            "" if f.k_sp is None else f.k_sp,
            fmt_real(f.r), fmt_real(f.sqrt_m_over_n),
        ])
