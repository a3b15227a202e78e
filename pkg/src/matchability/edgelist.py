"""Edge-list text format: one "u v" pair per line, '#' comments ignored."""

from __future__ import annotations

from pathlib import Path

from .errors import InputError
from .graphs import Graph, from_edge_list


def read_edge_list(
    path,
    n: int | None = None,
    one_indexed: bool = False,
    drop_loops: bool = True,
) -> Graph:
    """Parse an edge-list file into a Graph.

    The vertex count defaults to max endpoint + 1 (after the one-indexed
    shift); pass ``n`` explicitly for graphs with trailing isolated
    vertices or for empty files. Real-world lists often carry self-loops
    and duplicates, so loops are dropped by default and duplicates always
    collapse.
    """
    pairs = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 2:
                raise InputError(f"{path}:{lineno}: expected 'u v', got {line!r}")
            try:
                pairs.append((int(parts[0]), int(parts[1])))
            except ValueError as exc:
                raise InputError(f"{path}:{lineno}: non-integer endpoint") from exc
    if n is None:
        if not pairs:
            raise InputError(f"{path}: empty edge list needs an explicit vertex count")
        n = max(max(u, v) for u, v in pairs) + (0 if one_indexed else 1)
    return from_edge_list(pairs, n=n, one_indexed=one_indexed, drop_loops=drop_loops)


def write_edge_list(graph: Graph, path, header: str | None = None) -> None:
    path = Path(path)
    with open(path, "w") as fh:
        if header:
            fh.write(f"# {header}\n")
        for u, v in graph.edges():
            fh.write(f"{u} {v}\n")
