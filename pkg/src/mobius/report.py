from __future__ import annotations

import json
from dataclasses import dataclass, field


@dataclass(frozen=True)
class ReportItem:
    label: str
    lhs: object
    rhs: object
    equal: bool

    @classmethod
    def compare(cls, label: str, lhs, rhs) -> "ReportItem":
        return cls(label, lhs, rhs, lhs == rhs)


@dataclass
class Report:
    """Outcome of a batch of checks; passes iff every item compares equal."""

    title: str
    items: list = field(default_factory=list)
    timings: dict = field(default_factory=dict)

    @property
    def status(self) -> str:
        return "pass" if all(i.equal for i in self.items) else "fail"

    @property
    def ok(self) -> bool:
        return self.status == "pass"

    def add(self, label: str, lhs, rhs) -> ReportItem:
        item = ReportItem.compare(label, lhs, rhs)
        self.items.append(item)
        return item

    def extend(self, other: "Report", prefix: str = "") -> None:
        for i in other.items:
            self.items.append(ReportItem(prefix + i.label, i.lhs, i.rhs, i.equal))

    def failures(self) -> list:
        return [i for i in self.items if not i.equal]

    def to_dict(self, timings: bool = False) -> dict:
        out = {
            "title": self.title,
            "status": self.status,
            "items": [
                {"label": i.label, "lhs": _plain(i.lhs), "rhs": _plain(i.rhs), "equal": i.equal}
                for i in self.items
            ],
        }
        if timings:
            out["timings"] = {k: round(v, 6) for k, v in self.timings.items()}
        return out

    def to_json(self, timings: bool = False) -> str:
        return json.dumps(self.to_dict(timings), indent=2, sort_keys=True)

    def to_table(self) -> str:
        rows = [("label", "lhs", "rhs", "equal")]
        rows += [(i.label, _fmt(i.lhs), _fmt(i.rhs), "yes" if i.equal else "NO") for i in self.items]
        widths = [max(len(r[k]) for r in rows) for k in range(4)]
        lines = [f"{self.title}: {self.status.upper()}"]
        lines += ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows]
        for k, v in self.timings.items():
            lines.append(f"time[{k}] = {v:.3f}s")
        return "\n".join(lines)


def _plain(x):
    if isinstance(x, (list, tuple)):
        return [_plain(y) for y in x]
    return x


def _fmt(x) -> str:
    if isinstance(x, (list, tuple)):
        return "(" + ", ".join(_fmt(y) for y in x) + ")"
    return str(x)
