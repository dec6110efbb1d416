"""Collected acceptance lines, keyed by criterion number (no tests here)."""
REPORT: dict[int, str] = {}


def record(number: int, ok: bool, detail: str) -> bool:
    REPORT[number] = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    print(REPORT[number])
    return ok
