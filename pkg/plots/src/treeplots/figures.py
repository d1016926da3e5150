"""Build comparison figures from simulation time-series CSV files.

Input is the engine's 16-column CSV schema (comment line, header, data
rows).  A figure holds one panel per input file, with the six per-agent
metric curves against normalized time, a dotted world-value overlay, and
a net-drift annotation when the world moved.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

#: Column order of the engine CSV; all of these must be present.
REQUIRED_COLUMNS = (
    "tick",
    "t_norm",
    "world",
    "delta_world",
    "x_naive",
    "x_abs",
    "x_perc",
    "x_boot",
    "x_auth",
    "x_demo",
    "x_naive_pa",
    "x_abs_pa",
    "x_perc_pa",
    "x_boot_pa",
    "x_auth_pa",
    "x_demo_pa",
)

#: Plotted per-agent metric columns and their curve labels.
METRIC_LABELS = {
    "x_abs_pa": "vs world",
    "x_perc_pa": "vs own judgement",
    "x_naive_pa": "vs own observation",
    "x_boot_pa": "vs parent judgement",
    "x_auth_pa": "vs top judgement",
    "x_demo_pa": "vs mean judgement",
}


class SchemaError(ValueError):
    """Input CSV does not match the engine's output schema."""


@dataclass(frozen=True)
class FigureSpec:
    """One figure: one or two CSV panels, an output path, and a label."""

    csv_paths: tuple[Path, ...]
    out_path: Path
    label: str
    log_scale: bool = True

    def __post_init__(self):
        if not 1 <= len(self.csv_paths) <= 2:
            raise ValueError(f"expected one or two CSV paths, got {len(self.csv_paths)}")


def read_series(path: Path) -> dict[str, list[float]]:
    """Parse one CSV into per-column float lists, validating the schema."""
    header: list[str] | None = None
    columns: dict[str, list[float]] = {}
    with open(path, encoding="utf-8") as source:
        for raw in source:
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            cells = line.split(",")
            if header is None:
                header = cells
                for name in REQUIRED_COLUMNS:
                    if name not in header:
                        raise SchemaError(f"{path}: missing column {name!r}")
                columns = {name: [] for name in header}
                continue
            if len(cells) != len(header):
                raise SchemaError(
                    f"{path}: row has {len(cells)} cells, header has {len(header)}"
                )
            for name, cell in zip(header, cells):
                try:
                    columns[name].append(float(cell))
                except ValueError:
                    raise SchemaError(f"{path}: non-numeric cell {cell!r}") from None
    if header is None:
        raise SchemaError(f"{path}: no header row")
    if not columns[header[0]]:
        raise SchemaError(f"{path}: no data rows")
    return columns


def _panel_data(path: Path) -> dict:
    series = read_series(path)
    return {
        "name": Path(path).stem,
        "t_norm": series["t_norm"],
        "world": series["world"],
        "metrics": {column: series[column] for column in METRIC_LABELS},
        "final_delta_world": series["delta_world"][-1],
    }


def render_figure(spec: FigureSpec) -> dict:
    """Write the figure image and return the plotted data mapping.

    All inputs are read and validated before anything is written, so a
    bad CSV never leaves a partial image behind.  The returned mapping
    carries exactly the data handed to the plotting calls, which lets
    callers verify curves without decoding the image.
    """
    panels = [_panel_data(path) for path in spec.csv_paths]

    fig, axes = plt.subplots(
        1, len(panels), figsize=(6.4 * len(panels), 4.8), squeeze=False
    )
    for ax, panel in zip(axes[0], panels):
        for column, label in METRIC_LABELS.items():
            ax.plot(panel["t_norm"], panel["metrics"][column], label=label, linewidth=1.0)
        if spec.log_scale:
            ax.set_yscale("log")
        ax.set_xlabel("time in top-level steps")
        ax.set_ylabel("per-agent squared action error")
        ax.set_title(panel["name"])
        overlay = ax.twinx()
        overlay.plot(
            panel["t_norm"], panel["world"], linestyle=":", color="black", linewidth=1.0
        )
        overlay.set_ylabel("world value")
        drift = panel["final_delta_world"]
        panel["annotated"] = drift != 0.0
        if panel["annotated"]:
            ax.annotate(
                f"net world drift {drift:+.3e}",
                xy=(0.02, 0.03),
                xycoords="axes fraction",
                fontsize=8,
            )
        ax.legend(fontsize=7, loc="upper right")
    fig.suptitle(spec.label)
    fig.tight_layout()
    fig.savefig(spec.out_path)
    plt.close(fig)

    return {
        "label": spec.label,
        "log_scale": spec.log_scale,
        "panels": panels,
    }
