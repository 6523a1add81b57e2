"""Exploration of anonymous port-numbered graphs with binoculars."""
import json

from ._bino import (
    Graph,
    cluster_tree,
    explore,
    generate,
    is_chordal,
    is_simply_connected,
    is_weetman,
    load_graph,
    run_suite_json,
    verify_trace,
)


def run_suite(config):
    """Run an experiment config (dict or JSON text); returns the parsed report."""
    text = config if isinstance(config, str) else json.dumps(config)
    return json.loads(run_suite_json(text))


__all__ = [
    "Graph", "cluster_tree", "explore", "generate", "is_chordal", "is_simply_connected",
    "is_weetman", "load_graph", "run_suite", "verify_trace",
]
