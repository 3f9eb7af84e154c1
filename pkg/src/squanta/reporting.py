"""Plain-text check reports: one line per verified item, deterministic order."""

from dataclasses import dataclass, field


@dataclass
class Report:
    title: str
    lines: list = field(default_factory=list)
    ok: bool = True
    data: dict = field(default_factory=dict)

    def passed(self, label, detail=""):
        self.lines.append(f"{label}: PASS" + (f" ({detail})" if detail else ""))

    def failed(self, label, witness=None):
        self.ok = False
        suffix = f" [witness: {witness!r}]" if witness is not None else ""
        self.lines.append(f"{label}: FAIL{suffix}")

    def note(self, text):
        self.lines.append(text)

    def merge(self, other):
        self.lines.extend(f"{other.title}: {ln}" for ln in other.lines)
        self.ok = self.ok and other.ok

    def render(self):
        status = "OK" if self.ok else "VIOLATION"
        out = [f"== {self.title} [{status}] =="]
        out.extend("  " + ln for ln in self.lines)
        return "\n".join(out)

    def to_dict(self):
        return {
            "title": self.title,
            "ok": self.ok,
            "lines": list(self.lines),
            "data": self.data,
        }
