from typing import Any, Dict, Iterable, List, Optional

import pandas as pd


def convergence_frame(rows: Iterable, columns: Optional[List[str]] = None) -> pd.DataFrame:
    """
    Tabulate convergence rows (objects with to_record(), or plain dicts).

    Args:
        rows: Report rows
        columns: Column order; defaults to the record keys

    Returns:
        DataFrame with one row per (r, n) point
    """
    records: List[Dict[str, Any]] = [r.to_record() if hasattr(r, 'to_record') else dict(r) for r in rows]
    frame = pd.DataFrame.from_records(records, columns=columns)
    return frame


def render_table(frame: pd.DataFrame) -> str:
    if frame.empty:
        return "(no rows)"
    return frame.to_string(index=False)
