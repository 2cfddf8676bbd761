"""Growth spectra of groups acting on trees.

The compiled core lives in ``growthlab._growth``; ``Model`` is the only
entry point. Words are plain strings in the model's display syntax
(``"abAB"``, ``"a^3"``), generating sets are lists of such strings.
"""

from ._growth import Model, __version__

__all__ = ["Model", "__version__"]
