"""S3 group arithmetic and character data."""
from app.group.s3 import (
    CHARACTER_TABLE,
    ELEMENTS,
    INV_TABLE,
    MUL_TABLE,
    OMEGA,
    as_element,
    GroupElement,
    Irrep,
    character,
    conjugate,
    inverse,
    mul,
)

__all__ = [
    "CHARACTER_TABLE",
    "ELEMENTS",
    "INV_TABLE",
    "MUL_TABLE",
    "OMEGA",
    "as_element",
    "GroupElement",
    "Irrep",
    "character",
    "conjugate",
    "inverse",
    "mul",
]
