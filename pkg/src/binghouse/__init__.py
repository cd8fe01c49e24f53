"""Simplicial models of Bing houses and exact verification of their properties."""

__version__ = "0.1.0"

from .complex import SimplicialComplex, SimplicialMap  # noqa: E402

__all__ = ["SimplicialComplex", "SimplicialMap", "__version__"]
