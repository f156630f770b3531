#!/usr/bin/env python3
"""
Main entry point
Запускает командную строку powergraphs (build, classes, roots, cover, cliques,
reconstruct, verify, twins, catalog)
"""
import os
import sys

# Add project root to path
project_root = os.path.dirname(__file__)
sys.path.insert(0, project_root)

from powergraphs.cli import main


if __name__ == "__main__":
    sys.exit(main())
