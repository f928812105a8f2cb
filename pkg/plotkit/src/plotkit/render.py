"""Load sweep CSVs and render one survival figure per dataset.

The input is the CSV produced by the simulation harness:

    dataset,strategy,alpha,mean_survival,sd_survivors,reps,mean_rounds

Rendering is a pure function of the file contents; SVG output is
byte-reproducible (fixed hash salt, no timestamps).
"""

from __future__ import annotations

import csv
import logging
from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
matplotlib.rcParams["svg.hashsalt"] = "plotkit"

from matplotlib import pyplot as plt  # noqa: E402

log = logging.getLogger(__name__)

EXPECTED_COLUMNS = (
    "dataset",
    "strategy",
    "alpha",
    "mean_survival",
    "sd_survivors",
    "reps",
    "mean_rounds",
)

# canonical series order, matching the harness strategy names
STRATEGY_ORDER = (
    "random", "degree", "wdegree", "eigen", "weigen",
    "closeness", "wcloseness", "betweenness", "wbetweenness",
    "death", "ndeath", "wndeath", "ef1", "ef2", "ef3", "hybrid",
)

FORMATS = ("svg", "png")


class CsvFormatError(ValueError):
    """Input CSV does not match the harness result schema."""


@dataclass
class FigureSpec:
    input_csv: Path
    output_dir: Path
    image_format: str = "svg"

    def validate(self) -> None:
        if self.image_format not in FORMATS:
            raise ValueError(
                f"unsupported format {self.image_format!r}; choose from {FORMATS}"
            )


def load_rows(path) -> list[dict]:
    """Parse the CSV, validating the header and the numeric fields."""
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames
        if header is None:
            raise CsvFormatError("input CSV is empty (no header line)")
        missing = [c for c in EXPECTED_COLUMNS if c not in header]
        extra = [c for c in header if c not in EXPECTED_COLUMNS]
        if missing:
            raise CsvFormatError(f"missing column(s): {', '.join(missing)}")
        if extra:
            raise CsvFormatError(f"unexpected column(s): {', '.join(extra)}")
        rows = []
        for lineno, rec in enumerate(reader, start=2):
            try:
                rows.append(
                    {
                        "dataset": rec["dataset"],
                        "strategy": rec["strategy"],
                        "alpha": float(rec["alpha"]),
                        "mean_survival": float(rec["mean_survival"]),
                    }
                )
            except (TypeError, ValueError) as exc:
                raise CsvFormatError(f"line {lineno}: {exc}") from None
    return rows


def _series_order(strategies) -> list[str]:
    known = [s for s in STRATEGY_ORDER if s in strategies]
    unknown = sorted(s for s in strategies if s not in STRATEGY_ORDER)
    return known + unknown


def render(spec: FigureSpec) -> list[Path]:
    """Write one `<dataset>_survival.<ext>` image per dataset label.

    Returns the written paths.  A header-only CSV produces no files and a
    warning.
    """
    spec.validate()
    rows = load_rows(spec.input_csv)
    if not rows:
        log.warning("no data rows in %s; nothing to plot", spec.input_csv)
        return []

    spec.output_dir.mkdir(parents=True, exist_ok=True)
    datasets = sorted({r["dataset"] for r in rows})
    written = []
    for dataset in datasets:
        sub = [r for r in rows if r["dataset"] == dataset]
        strategies = _series_order({r["strategy"] for r in sub})

        fig, ax = plt.subplots(figsize=(8, 5))
        lowest = 1.0
        for strategy in strategies:
            pts = sorted(
                (r["alpha"], r["mean_survival"])
                for r in sub
                if r["strategy"] == strategy
            )
            xs = [100.0 * a for a, _ in pts]
            ys = [y for _, y in pts]
            lowest = min([lowest, *ys])
            ax.plot(xs, ys, marker="o", markersize=3, linewidth=1.2, label=strategy)

        ax.set_xlabel("vaccinated nodes (%)")
        ax.set_ylabel("survival ratio")
        ax.set_title(dataset)
        ax.set_ylim(lowest - 0.02, 1.0)
        ax.grid(True, alpha=0.3)
        ax.legend(loc="lower right", fontsize=7, ncol=2)
        fig.tight_layout()

        out = spec.output_dir / f"{dataset}_survival.{spec.image_format}"
        # dropping the date stamp keeps SVG output byte-identical across runs
        metadata = {"Date": None} if spec.image_format == "svg" else None
        fig.savefig(out, format=spec.image_format, metadata=metadata)
        plt.close(fig)
        written.append(out)
        log.info("wrote %s (%d series)", out, len(strategies))
    return written
