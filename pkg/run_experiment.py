#!/usr/bin/env python3
"""
Run a catflow experiment from the repository root.

    python run_experiment.py error-table --config config/experiments/error_table_r1.ini
"""

import os
import sys

# Add current directory to Python path
sys.path.insert(0, os.path.abspath(os.path.dirname(__file__)))

from app.main import main

if __name__ == "__main__":
    sys.exit(main())
