"""JSON and Markdown rendering of check lists and results."""
from __future__ import annotations

import json
from dataclasses import asdict

from . import __version__
from .exact.rational import is_rational, parse, to_float


def decimal(text: str):
    """Display-only decimal for a "p/q" string, or None."""
    try:
        q = parse(text)
    except (ValueError, TypeError):
        return None
    return f"{to_float(q):.12g}" if is_rational(q) else None


def check_report(suite: str, seed: int, checks: list, seconds: float) -> dict:
    rows = []
    for c in checks:
        row = asdict(c)
        row["status"] = "pass" if c.passed else "fail"
        del row["passed"]
        row["expected_decimal"] = decimal(c.expected)
        row["computed_decimal"] = decimal(c.computed)
        rows.append(row)
    failed = sum(not c.passed for c in checks)
    return {
        "tool": "fano221",
        "version": __version__,
        "suite": suite,
        "seed": seed,
        "checks": rows,
        "summary": {"total": len(checks), "passed": len(checks) - failed, "failed": failed},
        "timing": {"seconds": round(seconds, 3)},
    }


def to_json(data: dict) -> str:
    return json.dumps(data, indent=2, ensure_ascii=False)


def _md_value(v):
    if isinstance(v, (dict, list)):
        return "`" + json.dumps(v, ensure_ascii=False) + "`"
    return f"`{v}`" if v is not None else ""


def to_markdown(data: dict) -> str:
    lines = []
    if "checks" in data:
        lines.append(f"# verify {data['suite']} (seed {data['seed']})")
        lines.append("")
        lines.append("| status | check | anchor | origin | expected | computed |")
        lines.append("|---|---|---|---|---|---|")
        for c in data["checks"]:
            cells = [c["status"], c["name"], c["anchor"], c["origin"],
                     f"`{c['expected']}`", f"`{c['computed']}`"]
            lines.append("| " + " | ".join(x.replace("|", "\\|") for x in cells) + " |")
        s = data["summary"]
        lines.append("")
        lines.append(f"{s['passed']}/{s['total']} passed, {s['failed']} failed "
                     f"in {data['timing']['seconds']} s")
        return "\n".join(lines) + "\n"
    title = data.get("target") or "classification"
    lines.append(f"# {title}")
    lines.append("")
    for key, value in data.items():
        if key == "target":
            continue
        if isinstance(value, list) and value and isinstance(value[0], dict):
            lines.append(f"## {key}")
            lines.append("")
            cols = list(value[0])
            lines.append("| " + " | ".join(cols) + " |")
            lines.append("|" + "---|" * len(cols))
            for row in value:
                lines.append("| " + " | ".join(str(_md_value(row.get(k))).replace("|", "\\|")
                                                for k in cols) + " |")
            lines.append("")
        else:
            lines.append(f"- **{key}**: {_md_value(value)}")
    return "\n".join(lines) + "\n"
