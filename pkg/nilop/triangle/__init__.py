from .geometry import PrPoint, pr_geometry
from .roots import diff_table, e8_root_table, radical_shift

__all__ = ["PrPoint", "pr_geometry", "e8_root_table", "diff_table", "radical_shift"]
