#!/usr/bin/env python3
"""
Executable entry point for the Dagger Workbench.

Equivalent to the ``dagger-workbench`` console script.
"""

import sys
from pathlib import Path

# Allow running from a source checkout without installing the package
sys.path.insert(0, str(Path(__file__).parent / "src"))

from dagger_workbench.cli import main  # noqa: E402

if __name__ == "__main__":
    main()
