"""Render figures from chanmix CSV outputs.

All science lives upstream: these scripts only group and plot columns that
are already present in the CSV, plus the standard guide lines (unit circle,
1/d, E*).
"""

__version__ = "0.1.0"
