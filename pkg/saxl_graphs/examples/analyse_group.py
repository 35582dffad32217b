#!/usr/bin/env python3
"""
Example script to print the base size and Saxl graph invariants of a group.
The group is given as a recipe, for example "pgl2:7:pl" or "fixture:l3-4-on-56".
"""

import argparse
import sys

try:
    import saxl_graphs.config as sx_config
    import saxl_graphs.exceptions as sx_e
    from saxl_graphs.bases import base_size, reg
    from saxl_graphs.recipes import build
    from saxl_graphs.saxl import (
        common_neighbour_check,
        is_arc_transitive,
        is_complete,
        saxl_graph,
        write_dot,
    )
except ImportError as e:
    print(f"Error importing saxl_graphs: {e}")
    sys.exit(1)


def describe_suborbits(graph):
    """
    Print the suborbits of the point stabilizer and whether they lie in Σ(G).

    Returns:
        int: Number of suborbits whose points are neighbours of the base point
    """
    decomposition = graph.decomposition
    if decomposition is None:
        print("  Group is intransitive, no suborbit decomposition")
        return 0

    print(f"\nSuborbits of G_{decomposition.alpha} ({len(decomposition.suborbits)} in total):")
    for index, suborbit in enumerate(decomposition.suborbits):
        marker = "edge" if index in graph.selected else "    "
        paired = "self-paired" if suborbit.self_paired else f"paired with {suborbit.paired}"
        print(f"  [{marker}] #{index}: size {suborbit.size}, representative {suborbit.representative}, {paired}")
    return len(graph.selected)


def main():
    """Main function to analyse one group given as a recipe."""
    parser = argparse.ArgumentParser(description="Print the base size and Saxl graph of a permutation group")
    parser.add_argument("recipe", type=str, help='Group recipe, e.g. "pgl2:7:pl"')
    parser.add_argument(
        "--dot",
        type=str,
        help="Write the Saxl graph to this DOT file (optional)",
    )
    parser.add_argument(
        "--threads",
        type=int,
        help="Worker threads (optional)",
    )
    parser.add_argument(
        "--debug",
        action="store_true",
        help="Enable debug output",
    )

    args = parser.parse_args()

    # Load configuration
    try:
        sx_config.load()

        if args.threads:
            print(f"Using {args.threads} threads")
            sx_config.override(threads=args.threads)
    except Exception as e:
        print(f"Error loading configuration: {e}")
        sys.exit(1)

    print(f"\nEnvironment information:")
    print(f"  - Degree cap: {sx_config.DEGREE_CAP}")
    print(f"  - Seed: {sx_config.SEED}")

    try:
        group = build(args.recipe)
        print(f"\nBuilt {args.recipe}: degree {group.degree}, order {group.order()}")

        result = base_size(group)
        print(f"Base size {result.b}, minimal base {list(result.witness)}")

        if result.b < 2:
            print("Base size below 2, the Saxl graph is not defined")
            sys.exit(0)

        graph = saxl_graph(group, result.b, allow_intransitive=True)
        selected = describe_suborbits(graph)

        connectivity = graph.connectivity()
        print(f"\nSaxl graph:")
        print(f"  - valency: {graph.valency}")
        print(f"  - almost regular suborbits: {selected}")
        print(f"  - diameter: {connectivity.describe()}")
        print(f"  - complete: {is_complete(graph)}")
        print(f"  - common neighbours: {common_neighbour_check(graph)}")
        print(f"  - arc-transitive: {is_arc_transitive(graph)}")
        print(f"  - regular orbits on minimal bases: {reg(group, result.b).reg}")

        if args.dot:
            write_dot(graph, args.dot)
            print(f"\nSaxl graph written to {args.dot}")

    except sx_e.DOMAIN_ERRORS as e:
        print(f"\nError: {str(e)}")
        if args.debug:
            import traceback

            traceback.print_exc()
        sys.exit(1)


if __name__ == "__main__":
    main()
