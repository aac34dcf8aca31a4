#!/usr/bin/env python3
"""
SignQuery - active learning of edge signs in signed graphs.

Selects query sets through spanning-tree, treelet and star decompositions,
predicts the remaining signs by circuit parity and checks the learners'
guarantees in seeded Monte Carlo experiments.
"""

import sys

from ui.app import SignQueryApp


def main() -> int:
    """Entry point for the command line."""
    return SignQueryApp().run()


if __name__ == "__main__":
    sys.exit(main())
