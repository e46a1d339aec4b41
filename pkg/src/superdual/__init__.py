"""Characters of ortho-symplectic Lie superalgebras through super duality, in exact arithmetic."""

from __future__ import annotations

__version__ = "0.1.0"
