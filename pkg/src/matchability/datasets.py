"""Bundled reference data."""

from __future__ import annotations

from importlib import resources

from .edgelist import read_edge_list
from .graphs import Graph


def karate_path():
    """Filesystem path of the shipped Zachary karate club edge list."""
    return resources.files("matchability.data") / "karate_club.edges"


def load_karate() -> Graph:
    """The karate club friendship network (34 vertices, 78 edges)."""
    with resources.as_file(karate_path()) as p:
        return read_edge_list(p, n=34)
