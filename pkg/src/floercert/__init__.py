"""Bordered knot Floer algebra over F2[U,V]/(UV) with an auditable involutive obstruction certificate."""

from __future__ import annotations

__version__ = "0.1.0"
