from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources

from twistlab.surface import PlumbingGraph, build_plumbing


@lru_cache(maxsize=None)
def fixture_graph(name: str) -> PlumbingGraph:
    text = (resources.files("twistlab") / "fixtures" / f"{name}.json").read_text()
    return PlumbingGraph.from_json(json.loads(text))


@lru_cache(maxsize=None)
def plumbed(name: str):
    """(graph, surface, cores) for a shipped fixture."""
    g = fixture_graph(name)
    s, cs = build_plumbing(g)
    return g, s, cs


def pytest_terminal_summary(terminalreporter):
    lines = []
    for key in ("passed", "failed"):
        for rep in terminalreporter.stats.get(key, []):
            props = dict(getattr(rep, "user_properties", ()))
            if "criterion" in props and rep.when == "call":
                status = "PASS" if rep.passed else "FAIL"
                lines.append((props["criterion"], f"criterion {props['criterion']:>2}: {status}  {props.get('title', '')}"))
    if lines:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(lines):
            terminalreporter.write_line(line)
