"""Dataset preparation tools: benchmark converters, container I/O, and a
dense reference forward pass for cross-checking the sparse implementation."""

from .container import edge_homophily, read_container, write_container
from .convert import ConversionRecipe, convert, sample20_splits
from .oracle import OracleError, dense_view_finder, oracle_forward, read_checkpoint
from .sources import SourceError, load_planetoid, load_webkb

__version__ = "0.1.0"

__all__ = [
    "ConversionRecipe",
    "OracleError",
    "SourceError",
    "convert",
    "dense_view_finder",
    "edge_homophily",
    "load_planetoid",
    "load_webkb",
    "oracle_forward",
    "read_checkpoint",
    "read_container",
    "sample20_splits",
    "write_container",
    "__version__",
]
