"""Bounds-table report: CSV rows plus a log-scale figure.

For a sweep of constructed families at a small modulus, emits one row per
(set, bound kind) with the bound value and its log_p exponent, and renders
the bounds triangle with the certificate lower bounds as a figure next to
the CSV.
"""

import csv
import math
from fractions import Fraction
from pathlib import Path

from .complexity import ceil_sqrt, certificate_lower_bound
from .constructions import (
    check_bk_sums,
    check_weak_sidon,
    embed_bk_mod_p,
    greedy_weak_sidon,
    random_subset,
    small_squares_set,
)

CSV_COLUMNS = ("family", "p", "set_size", "alpha", "bound_kind", "value", "log_p_value")


def _log_p(value: float, p: int) -> float:
    return math.log(value) / math.log(p) if value > 0 else 0.0


def _triangle_rows(family, S, alpha, p):
    a = float(alpha)
    size = len(S)
    lower = math.sqrt(2 * a * size)
    pair_upper = a * size / 2 + 3
    grid_upper = 2 * ceil_sqrt(Fraction(alpha) * p)
    assert lower <= min(pair_upper, grid_upper), "bounds triangle violated"
    rows = []
    for kind, value in (
        ("lower_sqrt", lower),
        ("upper_pairing", pair_upper),
        ("upper_grid", grid_upper),
    ):
        rows.append(
            {
                "family": family,
                "p": p,
                "set_size": size,
                "alpha": str(Fraction(alpha)),
                "bound_kind": kind,
                "value": round(value, 6),
                "log_p_value": round(_log_p(value, p), 6),
            }
        )
    return rows


def _certificate_row(family, S, alpha, p, report):
    bound = certificate_lower_bound(S, alpha, report)
    return {
        "family": family,
        "p": p,
        "set_size": len(S),
        "alpha": str(Fraction(alpha)),
        "bound_kind": f"cert_{report.kind}" + (f"_k{report.k}" if report.k else ""),
        "value": round(bound.value, 6),
        "log_p_value": round(_log_p(bound.value, p), 6),
    }


def bounds_table(p: int = 101, alpha=1, seed: int = 0) -> list:
    """Desk-scale analogue of the log-scale bounds figure, as rows."""
    alpha = Fraction(alpha)
    rows = []

    for size in (4, 6, 8, 12, 16, 24, 32):
        S = random_subset(p, size, seed=(seed, "report", size))
        rows.extend(_triangle_rows("random", S, alpha, p))

    for target in (3, 4, 5, 6, 8):
        S = greedy_weak_sidon(p, target)
        if not S.provenance["params"]["target_reached"]:
            continue
        rows.extend(_triangle_rows("weak-sidon", S, alpha, p))
        rows.append(_certificate_row("weak-sidon", S, alpha, p, check_weak_sidon(S)))

    for k in (2, 3):
        S = embed_bk_mod_p(p, k)
        report = check_bk_sums(S, k)
        rows.extend(_triangle_rows(f"bk{k}", S, alpha, p))
        rows.append(_certificate_row(f"bk{k}", S, alpha, p, report))

    S = small_squares_set(p)
    rows.extend(_triangle_rows("squares", S, alpha, p))
    return rows


def write_csv(rows, path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=CSV_COLUMNS)
        writer.writeheader()
        writer.writerows(rows)


def render_figure(rows, path) -> None:
    """Log-log scatter of the bound values against set size, one series per kind."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(7, 5))
    kinds = sorted({row["bound_kind"] for row in rows})
    p = rows[0]["p"] if rows else 0
    for kind in kinds:
        pts = sorted(
            (row["set_size"], row["value"]) for row in rows if row["bound_kind"] == kind
        )
        xs = [_log_p(s, p) for s, _ in pts]
        ys = [_log_p(v, p) for _, v in pts]
        marker = "o" if kind.startswith("cert") else "."
        style = "--" if kind.startswith(("upper", "lower")) else "-"
        ax.plot(xs, ys, style, marker=marker, markersize=4, label=kind)
    ax.set_xlabel(r"$\log_p |S|$")
    ax.set_ylabel(r"$\log_p$ bound")
    ax.set_title(f"Covering-complexity bounds at p = {p}")
    ax.legend(fontsize=8)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def generate_report(out_csv, p: int = 101, alpha=1, seed: int = 0, plot_path=None):
    """Write the CSV and, unless disabled, a figure alongside it."""
    rows = bounds_table(p=p, alpha=alpha, seed=seed)
    write_csv(rows, out_csv)
    written = [str(out_csv)]
    if plot_path is not False:
        if plot_path is None:
            plot_path = Path(out_csv).with_suffix(".png")
        render_figure(rows, plot_path)
        written.append(str(plot_path))
    return rows, written
