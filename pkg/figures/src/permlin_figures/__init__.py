"""Figure scripts for permlin CLI outputs.

These scripts consume only the CLI's CSV artifacts; none of the
library's numerics are duplicated here.
"""

__version__ = "0.1.0"

from .common import FigureSpec, label_colors, read_ellipsoid_csv, read_regions_csv
