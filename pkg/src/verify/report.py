"""Tabular summaries of verification results.

Results from every suite are collected into a pandas DataFrame, summarized
per suite and rendered as a plain-text (Markdown) report.
"""

import logging
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Dict, Iterable, List

import pandas as pd

logger = logging.getLogger(__name__)


@dataclass
class CheckResult:
    """One assertion of a verification suite."""

    suite: str
    check: str
    passed: bool
    detail: str = ""


def results_to_dataframe(results: Iterable[CheckResult]) -> pd.DataFrame:
    """Collect results into a DataFrame with columns suite, check, passed, detail."""
    rows = [asdict(r) for r in results]
    if not rows:
        return pd.DataFrame(columns=["suite", "check", "passed", "detail"])
    return pd.DataFrame(rows)


def summarize(df: pd.DataFrame) -> pd.DataFrame:
    """Per-suite totals: checks, passed, failed."""
    if df.empty:
        return pd.DataFrame(columns=["suite", "checks", "passed", "failed"])
    grouped = df.groupby("suite", sort=True)["passed"]
    summary = pd.DataFrame({
        "checks": grouped.size(),
        "passed": grouped.sum().astype(int),
    })
    summary["failed"] = summary["checks"] - summary["passed"]
    return summary.reset_index()


def all_passed(df: pd.DataFrame) -> bool:
    return bool(df.empty or df["passed"].all())


def format_report(df: pd.DataFrame, title: str = "Verification report") -> str:
    """Markdown report: per-suite summary, then every failing check."""
    lines: List[str] = [f"# {title}", ""]
    summary = summarize(df)
    lines.append("| suite | checks | passed | failed |")
    lines.append("|---|---|---|---|")
    for _, row in summary.iterrows():
        lines.append(f"| {row['suite']} | {row['checks']} | {row['passed']} | {row['failed']} |")
    lines.append("")

    failures = df[~df["passed"].astype(bool)] if not df.empty else df
    if failures.empty:
        lines.append("All checks passed.")
    else:
        lines.append("## Failures")
        lines.append("")
        for _, row in failures.iterrows():
            lines.append(f"- [{row['suite']}] {row['check']}: {row['detail']}")
    lines.append("")
    return "\n".join(lines)


def save_report(df: pd.DataFrame, output_path: Path) -> bool:
    """Write the Markdown report; a CSV of all rows goes next to it.

    Returns:
        True if successful, False otherwise
    """
    try:
        output_path.parent.mkdir(parents=True, exist_ok=True)
        output_path.write_text(format_report(df), encoding="utf-8")
        df.to_csv(output_path.with_suffix(".csv"), index=False)
        logger.info(f"Report saved to {output_path}")
        return True
    except OSError as e:
        logger.error(f"Error saving report: {e}")
        return False


def suite_counts(df: pd.DataFrame) -> Dict[str, Dict[str, int]]:
    """Summary as a JSON-ready dict keyed by suite."""
    return {
        row["suite"]: {"checks": int(row["checks"]), "passed": int(row["passed"]), "failed": int(row["failed"])}
        for _, row in summarize(df).iterrows()
    }
