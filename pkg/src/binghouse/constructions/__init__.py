"""Shipped models of the house with two rooms and the three-dimensional house."""

from .builders import (AssemblyPlan, DataChecksumError, House2D, PieceInventory, SubassemblyError, Y3,
                       boundary_census, build_house2d, build_y3, checksums, data_dir, load_data,
                       load_house2d, load_y3, subassembly, surface_genus)

__all__ = ["AssemblyPlan", "DataChecksumError", "House2D", "PieceInventory", "SubassemblyError", "Y3",
           "boundary_census", "build_house2d", "build_y3", "checksums", "data_dir", "load_data",
           "load_house2d", "load_y3", "subassembly", "surface_genus"]
