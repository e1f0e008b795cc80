"""Size caps governing what brute-force work the toolkit will attempt."""

from dataclasses import dataclass


@dataclass(frozen=True)
class SizeCaps:
    """Limits on field size for the three tiers of exhaustive work.

    enumeration_cap: largest q^n for which a field context (with its full
        discrete-log table) may be built and swept element by element.
    character_cap: largest q^n for which the quadruple character expansion
        (grouped sums, character-based counting) is evaluated.  625 keeps the
        default verification suite under a minute; 2401 is practical but
        takes minutes.
    factor_limit: integers above this are rejected by the factoring routine
        (the deterministic primality witness set is only valid below 2^64).
    """

    enumeration_cap: int = 10 ** 6
    character_cap: int = 625
    factor_limit: int = 2 ** 64


DEFAULT_CAPS = SizeCaps()

# character_cap value exercised by the heavy verification profile
RAISED_CHARACTER_CAP = 2401
