from .config import NilopConfig
from .modules.pair import PartitionTriple, SubspacePair

__all__ = ["NilopConfig", "SubspacePair", "PartitionTriple"]
