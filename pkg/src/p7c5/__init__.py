"""Structure, recognition and coloring tools for (P7, C5, H)-free graphs."""
from .graph import Graph, build, complement, cycle, path, complete, petersen

__version__ = "0.1.0"

__all__ = ["Graph", "build", "complement", "cycle", "path", "complete", "petersen"]
