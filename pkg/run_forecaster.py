#!/usr/bin/env python3
"""Run the forecasting CLI. From project root: python run_forecaster.py run --out runs/demo"""
import sys

from forecaster.cli import main

if __name__ == "__main__":
    sys.exit(main())
