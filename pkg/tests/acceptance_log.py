"""Collects one pass/fail line per acceptance criterion for the run summary."""

from __future__ import annotations

LINES: list[str] = []


def record(criterion: str, ok: bool, detail: str) -> str:
    line = f"[{'PASS' if ok else 'FAIL'}] {criterion}: {detail}"
    LINES.append(line)
    print(line)
    return line
