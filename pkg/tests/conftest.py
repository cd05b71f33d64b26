"""Collects acceptance results and prints one line per criterion after the run."""

ACCEPTANCE = {}


def record(key, ok, detail, elapsed, budget):
    prev = ACCEPTANCE.get(key)
    if prev is not None:
        ok = ok and prev["ok"]
        detail = f"{prev['detail']}; {detail}"
        elapsed += prev["elapsed"]
    ACCEPTANCE[key] = {"ok": ok, "detail": detail, "elapsed": elapsed, "budget": budget}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE, key=lambda k: int(k.split("-")[1])):
        r = ACCEPTANCE[key]
        status = "PASS" if r["ok"] else "FAIL"
        terminalreporter.write_line(f"{key:6} {status}  {r['elapsed']:7.2f}s / {r['budget']:g}s  {r['detail']}")
