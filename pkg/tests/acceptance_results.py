"""Collected PASS/FAIL lines, printed at the end of the pytest run."""

LINES: list[str] = []
